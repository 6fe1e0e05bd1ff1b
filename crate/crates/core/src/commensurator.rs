//! Abstract commensurators of `Z^n ⋊_A Z` when no eigenvalue of `A` is a
//! root of unity.
//!
//! An element is represented by a triple `(B, w, k)`: `B ∈ GL(n, Q)`
//! commuting with `A^k`, `w ∈ Z^n`, `k ≥ 1`, describing the isomorphism
//! `v ↦ Bv`, `t^k ↦ t^k w` between finite-index subgroups. Triples are
//! stored as given and compared through [`triple_equiv`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactalg::{char_poly, AlgError, Int, IntMatrix, IntPoly};

type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("matrices larger than 3x3 are not supported")]
    TooLarge,
    #[error("A has an eigenvalue that is a root of unity; only the case without such eigenvalues is handled")]
    RootOfUnity,
    #[error("A must have determinant ±1")]
    NotUnimodular,
    #[error("B is singular")]
    Singular,
    #[error("B does not commute with A^{0}")]
    NotCommuting(u64),
    #[error("bad triple: {0}")]
    BadTriple(String),
    #[error("denominators did not clear after lifting by up to {0}")]
    NonClearing(u64),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// Square matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rat>,
}

fn rat(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Rat::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_int(a: &IntMatrix) -> Self {
        assert!(a.is_square(), "RatMatrix is square");
        RatMatrix {
            n: a.rows(),
            data: a.entries().map(rat).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, CommError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CommError::Alg(AlgError::NotSquare {
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
            }));
        }
        Ok(RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Entries given as `num` or `num/den`.
    pub fn parse(rows: &[Vec<&str>]) -> Result<Self, CommError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.data.chunks(self.n.max(1)).map(<[Rat]>::to_vec).take(self.n).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.n, v.len(), "size mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_int_vec(&self, v: &[Int]) -> Vec<Rat> {
        self.mul_vec(&v.iter().map(rat).collect::<Vec<_>>())
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        RatMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn det(&self) -> Rat {
        let mut m = self.to_rows();
        let n = self.n;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                for j in c..n {
                    let d = &f * &m[c][j];
                    m[r][j] -= d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut m: Vec<Vec<Rat>> = self
            .to_rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero())?;
            m.swap(p, c);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for j in 0..2 * n {
                        let d = &f * &m[c][j];
                        m[r][j] -= d;
                    }
                }
            }
        }
        Some(RatMatrix {
            n,
            data: m.into_iter().flat_map(|r| r.into_iter().skip(n)).collect(),
        })
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator(&self) -> Int {
        lcm_denominators(&self.data)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rat::is_integer)
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        let rows: Vec<Vec<Int>> = self.to_rows().iter().map(|r| r.iter().map(Rat::to_integer).collect()).collect();
        Some(IntMatrix::from_rows(&rows).expect("square"))
    }

    pub fn commutes_with(&self, a: &IntMatrix) -> bool {
        let a = RatMatrix::from_int(a);
        self.mul(&a) == a.mul(self)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(|x| Value::String(rat_string(x))).collect()))
                .collect(),
        )
    }

    /// Accepts entries as strings (`"3/4"`) or JSON integers.
    pub fn from_json(v: &Value) -> Result<Self, CommError> {
        let rows = v.as_array().ok_or_else(|| CommError::Json("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| CommError::Json("matrix row must be an array".into()))?
                    .iter()
                    .map(json_rat)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(rat_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn rat_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, CommError> {
    let s = s.trim();
    let bad = || CommError::Json(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn json_rat(v: &Value) -> Result<Rat, CommError> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rat::from_integer(x.into()))
            .ok_or_else(|| CommError::Json(format!("non-integer number {n}; use a \"num/den\" string"))),
        _ => Err(CommError::Json(format!("expected a rational, found {v}"))),
    }
}

fn json_int(v: &Value) -> Result<Int, CommError> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| CommError::Json(format!("bad integer '{s}'"))),
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| CommError::Json(format!("expected an integer, found {n}"))),
        _ => Err(CommError::Json(format!("expected an integer, found {v}"))),
    }
}

fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `Φ_n` for the `n` with `φ(n) ≤ 3`.
fn cyclotomic(n: u32) -> IntPoly {
    match n {
        1 => IntPoly::from_i64(&[-1, 1]),
        2 => IntPoly::from_i64(&[1, 1]),
        3 => IntPoly::from_i64(&[1, 1, 1]),
        4 => IntPoly::from_i64(&[1, 0, 1]),
        6 => IntPoly::from_i64(&[1, -1, 1]),
        _ => unreachable!("only degrees up to 3 are needed"),
    }
}

/// Whether some eigenvalue of `A` (at most 3x3) is a root of unity.
/// Such an eigenvalue has degree `φ(n) ≤ 3`, so `n ∈ {1, 2, 3, 4, 6}`;
/// the cyclotomic polynomials are irreducible, so sharing a factor means
/// dividing.
pub fn has_root_of_unity_eigenvalue(a: &IntMatrix) -> Result<bool, CommError> {
    if !a.is_square() {
        return Err(AlgError::NotSquare { rows: a.rows(), cols: a.cols() }.into());
    }
    if a.rows() > 3 {
        return Err(CommError::TooLarge);
    }
    let p = char_poly(a)?;
    Ok([1, 2, 3, 4, 6].iter().any(|&n| p.div_exact(&cyclotomic(n)).is_some()))
}

/// The monodromy `A` of `Z^n ⋊_A Z`, screened to have no root-of-unity
/// eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientAction {
    a: IntMatrix,
}

impl AmbientAction {
    pub fn new(a: IntMatrix) -> Result<Self, CommError> {
        if has_root_of_unity_eigenvalue(&a)? {
            return Err(CommError::RootOfUnity);
        }
        if !a.det()?.abs().is_one() {
            return Err(CommError::NotUnimodular);
        }
        Ok(AmbientAction { a })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn power(&self, k: u64) -> IntMatrix {
        self.a.pow(k)
    }
}

/// Basis of the null space of a rational matrix given by rows.
fn nullspace(mut m: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..cols {
                    let d = &f * &m[row][j];
                    m[r][j] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{X ∈ M_n(Q) : X A^k = A^k X}`.
pub fn centralizer_basis(act: &AmbientAction, k: u64) -> Result<Vec<RatMatrix>, CommError> {
    if k == 0 {
        return Err(CommError::BadTriple("k must be positive".into()));
    }
    let b = RatMatrix::from_int(&act.power(k));
    let n = act.dim();
    // unknown X[i][j] sits at index i*n + j
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![Rat::zero(); n * n];
            for l in 0..n {
                r[i * n + l] += b.get(l, j);
                r[l * n + j] -= b.get(i, l);
            }
            rows.push(r);
        }
    }
    Ok(nullspace(rows, n * n)
        .into_iter()
        .map(|v| RatMatrix { n, data: v })
        .collect())
}

/// Rank of a family of matrices as vectors in `Q^{n²}`.
pub fn span_rank(ms: &[RatMatrix]) -> usize {
    let Some(first) = ms.first() else {
        return 0;
    };
    let cols = ms.len();
    let rows: Vec<Vec<Rat>> = (0..first.data.len())
        .map(|i| ms.iter().map(|m| m.data[i].clone()).collect())
        .collect();
    cols - nullspace(rows, cols).len()
}

/// `ν_l(A^k) = Σ_{i<l} A^{ki}`
pub fn nu(act: &AmbientAction, k: u64, l: u64) -> Result<IntMatrix, CommError> {
    if k == 0 || l == 0 {
        return Err(CommError::BadTriple("k and l must be positive".into()));
    }
    Ok(nu_of(&act.power(k), l))
}

fn nu_of(x: &IntMatrix, l: u64) -> IntMatrix {
    let n = x.rows();
    let mut sum = IntMatrix::zeros(n, n);
    let mut p = IntMatrix::identity(n);
    for _ in 0..l {
        sum = sum.add(&p);
        p = p.mul(x);
    }
    sum
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommTriple {
    pub b: RatMatrix,
    pub w: Vec<Int>,
    pub k: u64,
}

impl CommTriple {
    /// Checks the triple against `A`: `B` invertible and commuting with
    /// `A^k`, `w` of the right length, `k ≥ 1`.
    pub fn new(act: &AmbientAction, b: RatMatrix, w: Vec<Int>, k: u64) -> Result<Self, CommError> {
        let t = CommTriple { b, w, k };
        t.validate(act)?;
        Ok(t)
    }

    pub fn validate(&self, act: &AmbientAction) -> Result<(), CommError> {
        let n = act.dim();
        if self.k == 0 {
            return Err(CommError::BadTriple("k must be positive".into()));
        }
        if self.b.size() != n || self.w.len() != n {
            return Err(CommError::BadTriple(format!("B and w must have dimension {n}")));
        }
        if !self.b.is_invertible() {
            return Err(CommError::Singular);
        }
        if !self.b.commutes_with(&act.power(self.k)) {
            return Err(CommError::NotCommuting(self.k));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "B": self.b.to_json(),
            "w": self.w.iter().map(int_json).collect::<Vec<_>>(),
            "k": self.k,
        })
    }

    /// Parses `{B, w, k}` without validating against an action.
    pub fn from_json(v: &Value) -> Result<Self, CommError> {
        let obj = v.as_object().ok_or_else(|| CommError::Json("triple must be an object".into()))?;
        let field = |name: &str| obj.get(name).ok_or_else(|| CommError::Json(format!("missing field '{name}'")));
        let b = RatMatrix::from_json(field("B")?)?;
        let w = field("w")?
            .as_array()
            .ok_or_else(|| CommError::Json("w must be an array".into()))?
            .iter()
            .map(json_int)
            .collect::<Result<Vec<_>, _>>()?;
        let k = field("k")?
            .as_u64()
            .ok_or_else(|| CommError::Json("k must be a positive integer".into()))?;
        Ok(CommTriple { b, w, k })
    }
}

impl fmt::Display for CommTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.w.iter().map(ToString::to_string).collect();
        write!(f, "({}, ({}), {})", self.b, w.join(", "), self.k)
    }
}

/// `(B, w, k) ↦ (B, ν_l(A^k) w, kl)`: the same element restricted to the
/// subgroup generated by `t^{kl}`.
pub fn triple_normalize(act: &AmbientAction, t: &CommTriple, l: u64) -> Result<CommTriple, CommError> {
    let nu = nu(act, t.k, l)?;
    Ok(CommTriple {
        b: t.b.clone(),
        w: nu.mul_vec(&t.w),
        k: t.k * l,
    })
}

fn lift_to(act: &AmbientAction, t: &CommTriple, k: u64) -> Result<CommTriple, CommError> {
    debug_assert_eq!(k % t.k, 0);
    triple_normalize(act, t, k / t.k)
}

/// Equal after lifting both to `lcm(k1, k2)`. Lifting further cannot make
/// unequal triples agree: `ν_l(A^k)` is invertible since no eigenvalue of
/// `A` is a root of unity.
pub fn triple_equiv(act: &AmbientAction, t1: &CommTriple, t2: &CommTriple) -> Result<bool, CommError> {
    t1.validate(act)?;
    t2.validate(act)?;
    if t1.b != t2.b {
        return Ok(false);
    }
    let k = t1.k.lcm(&t2.k);
    Ok(lift_to(act, t1, k)?.w == lift_to(act, t2, k)?.w)
}

/// Multiplicative order of `x` modulo `d`, if at most `cap`.
fn order_mod(x: &IntMatrix, d: &Int, cap: u64) -> Option<u64> {
    let n = x.rows();
    let reduce = |m: &IntMatrix| {
        let rows: Vec<Vec<Int>> = m.to_rows().iter().map(|r| r.iter().map(|e| e.mod_floor(d)).collect()).collect();
        IntMatrix::from_rows(&rows).expect("square")
    };
    let id = reduce(&IntMatrix::identity(n));
    let x = reduce(x);
    let mut p = x.clone();
    for o in 1..=cap {
        if p == id {
            return Some(o);
        }
        p = reduce(&p.mul(&x));
    }
    None
}

const ORDER_CAP: u64 = 100_000;

/// Smallest `l` with `ν_l(A^k) u` integral for the rational vector `u`.
/// `l = d · ord(A^k mod d)` always works, `d` the common denominator,
/// since then `ν_l(A^k) ≡ 0 (mod d)`.
fn clearing_factor(act: &AmbientAction, k: u64, u: &[Rat]) -> Result<u64, CommError> {
    let d = lcm_denominators(u);
    if d.is_one() {
        return Ok(1);
    }
    let x = act.power(k);
    let ord = order_mod(&x, &d, ORDER_CAP).ok_or(CommError::NonClearing(ORDER_CAP))?;
    let limit = d.to_u64().ok_or(CommError::NonClearing(ORDER_CAP))? * ord;
    let ux: Vec<Rat> = u.to_vec();
    let xr = RatMatrix::from_int(&x);
    let mut term = ux.clone();
    let mut sum = ux;
    for l in 1..=limit {
        if sum.iter().all(Rat::is_integer) {
            return Ok(l);
        }
        term = xr.mul_vec(&term);
        sum = sum.iter().zip(&term).map(|(a, b)| a + b).collect();
    }
    Err(CommError::NonClearing(limit))
}

fn to_int_vec(v: &[Rat]) -> Vec<Int> {
    v.iter().map(Rat::to_integer).collect()
}

/// `(B, w, k)(B', w', k) = (BB', w + Bw', k)` after lifting both to a
/// common `k` at which `Bw'` is integral.
pub fn triple_compose(act: &AmbientAction, t1: &CommTriple, t2: &CommTriple) -> Result<CommTriple, CommError> {
    t1.validate(act)?;
    t2.validate(act)?;
    let k0 = t1.k.lcm(&t2.k);
    let w2 = lift_to(act, t2, k0)?.w;
    let l = clearing_factor(act, k0, &t1.b.mul_int_vec(&w2))?;
    let k = k0 * l;
    let a = lift_to(act, t1, k)?;
    let b = lift_to(act, t2, k)?;
    let bw = t1.b.mul_int_vec(&b.w);
    debug_assert!(bw.iter().all(Rat::is_integer));
    let w = a.w.iter().zip(to_int_vec(&bw)).map(|(x, y)| x + y).collect();
    CommTriple::new(act, t1.b.mul(&t2.b), w, k)
}

pub fn triple_identity(act: &AmbientAction) -> CommTriple {
    let n = act.dim();
    CommTriple {
        b: RatMatrix::identity(n),
        w: vec![Int::zero(); n],
        k: 1,
    }
}

/// `(B⁻¹, -B⁻¹w, k)`, lifted until `B⁻¹w` is integral.
pub fn triple_inverse(act: &AmbientAction, t: &CommTriple) -> Result<CommTriple, CommError> {
    t.validate(act)?;
    let inv = t.b.inverse().ok_or(CommError::Singular)?;
    let l = clearing_factor(act, t.k, &inv.mul_int_vec(&t.w))?;
    let lifted = triple_normalize(act, t, l)?;
    let w = to_int_vec(&inv.mul_int_vec(&lifted.w)).into_iter().map(|x| -x).collect();
    CommTriple::new(act, inv, w, lifted.k)
}

/// `Comm(Z^n) ≅ GL(n, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnCommensurator {
    pub n: usize,
    pub statement: String,
}

/// How `B ∈ GL(n, Q)` acts as a commensuration: it maps the sublattice
/// `m Z^n` into `Z^n` via the integral matrix `image = mB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDatum {
    pub m: Int,
    pub image: IntMatrix,
}

impl ZnCommensurator {
    pub fn validate(&self, b: &RatMatrix) -> Result<LatticeDatum, CommError> {
        if b.size() != self.n {
            return Err(CommError::BadTriple(format!("expected a {0}x{0} matrix", self.n)));
        }
        if !b.is_invertible() {
            return Err(CommError::Singular);
        }
        let m = b.denominator();
        let image = b.scale(&rat(&m)).to_int().expect("denominators cleared");
        Ok(LatticeDatum { m, image })
    }
}

pub fn comm_of_zn(n: usize) -> ZnCommensurator {
    ZnCommensurator {
        n,
        statement: format!("Comm(Z^{n}) = Aut(Q^{n}) = GL({n}, Q)"),
    }
}

#[cfg(test)]
mod tests;
