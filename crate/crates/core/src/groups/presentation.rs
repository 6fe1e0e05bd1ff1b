//! Finite presentations: words as exponent runs, a small relator grammar,
//! and the text and JSON formats.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A word as runs `(generator index, nonzero exponent)`; adjacent runs
/// always have distinct generators.
pub type Word = Vec<(usize, i64)>;

/// Appends `g^e`, merging with the last run.
pub fn push_letter(w: &mut Word, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push((g, e));
}

pub fn concat(a: &Word, b: &Word) -> Word {
    let mut out = a.clone();
    for &(g, e) in b {
        push_letter(&mut out, g, e);
    }
    out
}

pub fn inverse(w: &Word) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

pub fn power(w: &Word, k: i64) -> Word {
    let base = if k < 0 { inverse(w) } else { w.clone() };
    let mut out = Word::new();
    for _ in 0..k.unsigned_abs() {
        out = concat(&out, &base);
    }
    out
}

/// `[u, v] = u v u^-1 v^-1`
pub fn commutator(u: &Word, v: &Word) -> Word {
    concat(&concat(u, v), &concat(&inverse(u), &inverse(v)))
}

/// Generator names and relators. Relators are never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Presentation {
    /// Validates generator indices and exponents; empty relators are dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(GroupError::Parse(format!("bad generator name '{g}'")));
            }
            if generators[..i].contains(g) {
                return Err(GroupError::Parse(format!("duplicate generator '{g}'")));
            }
        }
        let n = generators.len();
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators {
            let mut w = Word::new();
            for (g, e) in r {
                if g >= n {
                    return Err(GroupError::Parse(format!("generator index {g} out of range")));
                }
                push_letter(&mut w, g, e);
            }
            if !w.is_empty() {
                kept.push(w);
            }
        }
        Ok(Presentation {
            generators,
            relators: kept,
        })
    }

    /// Builds from generator names and relation strings such as
    /// `"t x t^-1 = x y"` or `"[t, [t, u]]"`.
    pub fn parse_relations<S: AsRef<str>>(generators: &[&str], relations: &[S]) -> Result<Self, GroupError> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relations
            .iter()
            .map(|r| parse_relation(&gens, r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// `#generators - #relators`
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, GroupError> {
        parse_relation(&self.generators, s)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, e)| {
                let name = &self.generators[g];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Text format: a `generators:` line, then one relation per line.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| GroupError::Parse("empty presentation".into()))?;
        let list = header
            .strip_prefix("generators:")
            .ok_or_else(|| GroupError::Parse("first line must start with 'generators:'".into()))?;
        let gens: Vec<&str> = list
            .split([',', ' '])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let rels: Vec<&str> = lines.collect();
        Presentation::parse_relations(&gens, &rels)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("generators: {}\n", self.generators.join(", "));
        for r in &self.relators {
            s.push_str(&self.word_to_string(r));
            s.push('\n');
        }
        s
    }

    pub fn from_json(json: &str) -> Result<Self, GroupError> {
        let p: PresentationJson =
            serde_json::from_str(json).map_err(|e| GroupError::Parse(e.to_string()))?;
        Self::from_json_value(&p.generators, &p.relators)
    }

    pub(crate) fn from_json_value(generators: &[String], relators: &[String]) -> Result<Self, GroupError> {
        let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
        Presentation::parse_relations(&gens, relators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.word_to_string(r)).collect(),
        })
        .expect("plain strings serialize")
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.word_to_string(r)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | {}>", self.generators.join(", "), self.relator_strings().join(", "))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    gens: &'a [String],
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

/// `lhs = rhs` becomes the relator `lhs rhs^-1`.
fn parse_relation(gens: &[String], s: &str) -> Result<Word, GroupError> {
    let mut p = Parser {
        gens,
        chars: s.chars().collect(),
        pos: 0,
        src: s,
    };
    let lhs = p.expr()?;
    p.skip_ws();
    let word = if p.eat('=') {
        let rhs = p.expr()?;
        concat(&lhs, &inverse(&rhs))
    } else {
        lhs
    };
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(word)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> GroupError {
        GroupError::Parse(format!("{msg} at column {} in '{}'", self.pos + 1, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '.' || c == '*') {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Word, GroupError> {
        let mut w = Word::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '[' || c == '(' || c == '1' => {
                    let f = self.factor()?;
                    w = concat(&w, &f);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let (prefix, last) = self.atom()?;
        let e = self.exponent()?;
        Ok(concat(&prefix, &power(&last, e)))
    }

    /// Returns the atom split as (prefix, last); an exponent binds to the
    /// last generator of a run of juxtaposed single letters like `txt`.
    fn atom(&mut self) -> Result<(Word, Word), GroupError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let u = self.expr()?;
                self.skip_ws();
                if !self.eat(',') {
                    return Err(self.error("expected ','"));
                }
                let v = self.expr()?;
                self.skip_ws();
                if !self.eat(']') {
                    return Err(self.error("expected ']'"));
                }
                Ok((Word::new(), commutator(&u, &v)))
            }
            Some('(') => {
                self.pos += 1;
                let u = self.expr()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok((Word::new(), u))
            }
            Some('1') => {
                self.pos += 1;
                Ok((Word::new(), Word::new()))
            }
            _ => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                let letters = self.split_identifier(&ident).ok_or_else(|| {
                    self.pos = start;
                    self.error(&format!("unknown generator '{ident}'"))
                })?;
                let (last, prefix) = letters.split_last().expect("nonempty identifier");
                let prefix: Word = prefix.iter().map(|&g| (g, 1)).collect();
                Ok((prefix, vec![(*last, 1)]))
            }
        }
    }

    /// Exact generator name, or a greedy longest-match split into names.
    fn split_identifier(&self, ident: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.gens.iter().position(|g| g == ident) {
            return Some(vec![i]);
        }
        let mut out = Vec::new();
        let mut rest = ident;
        while !rest.is_empty() {
            let (i, g) = self
                .gens
                .iter()
                .enumerate()
                .filter(|(_, g)| rest.starts_with(g.as_str()))
                .max_by_key(|(_, g)| g.len())?;
            out.push(i);
            rest = &rest[g.len()..];
        }
        (!out.is_empty()).then_some(out)
    }

    fn exponent(&mut self) -> Result<i64, GroupError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let close = if self.eat('{') {
            Some('}')
        } else if self.eat('(') {
            Some(')')
        } else {
            None
        };
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let e = text.parse::<i64>().map_err(|_| self.error("bad exponent"))?;
        if let Some(c) = close {
            if !self.eat(c) {
                return Err(self.error("unclosed exponent"));
            }
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(g: &[&str], r: &[&str]) -> Presentation {
        Presentation::parse_relations(g, r).unwrap()
    }

    #[test]
    fn parse_forms() {
        let p = pres(&["t", "x", "y"], &["t x t^-1 = x y", "txt^-1y^-1", "[x,y]", "[t,[t,x]]^2"]);
        assert_eq!(p.relators()[0], vec![(0, 1), (1, 1), (0, -1), (2, -1), (1, -1)]);
        assert_eq!(p.relators()[1], vec![(0, 1), (1, 1), (0, -1), (2, -1)]);
        assert_eq!(p.relators()[2], vec![(1, 1), (2, 1), (1, -1), (2, -1)]);
        assert_eq!(p.num_relators(), 4);

        let q = pres(&["t", "u", "v"], &["t^2u=ut^2", "u.tut^-1=tut^-1.u", "u[u,v]=[u,v]u"]);
        assert_eq!(q.relators()[0], vec![(0, 2), (1, 1), (0, -2), (1, -1)]);
        assert_eq!(q.num_relators(), 3);

        let r = pres(&["x1", "x2", "x10"], &["x1x10 = x10 x1", "x2^{-3}"]);
        assert_eq!(r.relators()[0], vec![(0, 1), (2, 1), (0, -1), (2, -1)]);
        assert_eq!(r.relators()[1], vec![(1, -3)]);
    }

    #[test]
    fn trivial_relators_dropped() {
        let p = pres(&["x"], &["x x^-1", "x = x", "1"]);
        assert_eq!(p.num_relators(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(Presentation::parse_relations(&["x"], &["x y"]).is_err());
        assert!(Presentation::parse_relations(&["x"], &["[x"]).is_err());
        assert!(Presentation::parse_relations(&["x"], &["x^"]).is_err());
        assert!(Presentation::parse_relations(&["x", "x"], &["x"]).is_err());
        assert!(Presentation::parse_relations(&["x"], &["x = x = x"]).is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let p = pres(&["a", "b"], &["ba^2 = a^3b^2", "b^2a = a^2b^3"]);
        assert_eq!(Presentation::from_text(&p.to_text()).unwrap(), p);
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
        let t = "# comment\ngenerators: s, t\n\ns t^2 s^-1 = t^-2\n";
        assert_eq!(Presentation::from_text(t).unwrap().num_relators(), 1);
        assert!(Presentation::from_text("s t").is_err());
    }
}
