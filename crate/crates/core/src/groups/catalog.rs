//! Named groups with known deficiency intervals.
//!
//! Each entry carries a concrete spec (matrix data where the group is
//! `Z^3 ⋊ Z`, a presentation otherwise) plus any shorter presentations
//! known for it. Intervals are stored as `(lo, hi)`.

use num_bigint::BigInt;

use super::{GroupError, GroupSpec, Presentation};
use crate::exactalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub spec: GroupSpec,
    pub presentations: Vec<Presentation>,
    pub interval: (i64, i64),
    pub citation: String,
}

const LISTED: &[&str] = &[
    "Z4",
    "GammaQxZ(1)",
    "GammaQxZ(2)",
    "GammaQxZ(3)",
    "B1xZ",
    "B2xZ",
    "Upsilon",
    "G4xZ",
    "G2xZ",
    "Theta-example",
    "G5semidirect(1)",
    "KbKb",
    "knot2a",
    "knot2b",
    "G2B2",
    "G2B1",
    "G2G2",
    "G6B3",
    "S2222xZ",
    "NilS2222(1,1,1,1,0)",
];

/// Every listed entry, parameterized families at representative values.
pub fn catalog() -> Vec<CatalogEntry> {
    LISTED
        .iter()
        .map(|n| catalog_lookup(n).expect("listed entries build"))
        .collect()
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
    Presentation::parse_relations(gens, rels).expect("curated presentation parses")
}

fn parse_params(args: &str) -> Result<Vec<i64>, GroupError> {
    args.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| GroupError::Parse(format!("bad catalog parameter '{s}'")))
        })
        .collect()
}

struct Builder {
    name: String,
    description: &'static str,
    spec: GroupSpec,
    presentations: Vec<Presentation>,
    interval: (i64, i64),
    citation: &'static str,
}

impl Builder {
    fn done(self) -> CatalogEntry {
        CatalogEntry {
            name: self.name,
            description: self.description.into(),
            spec: self.spec,
            presentations: self.presentations,
            interval: self.interval,
            citation: self.citation.into(),
        }
    }
}

/// Seifert fibred Nil 3-manifold group over `S(2,2,2,2)`:
/// `<a,b,c,d,h | a^2 = h^α, ..., abcd = h^e, h central>`.
fn nil_s2222(p: &[i64]) -> Result<Presentation, GroupError> {
    let [al, be, ga, de, e] = p else {
        return Err(GroupError::Parse("NilS2222 takes five parameters".into()));
    };
    if [al, be, ga, de].iter().any(|x| *x % 2 == 0) {
        return Err(GroupError::Precondition(
            "the cone point exponents must all be odd".into(),
        ));
    }
    // H_1 has rank 0 exactly when 2e differs from the exponent sum; equality
    // gives the flat manifold instead.
    if 2 * e == al + be + ga + de {
        return Err(GroupError::Precondition(
            "2e equals the exponent sum, so the manifold is flat rather than Nil".into(),
        ));
    }
    Ok(pres(
        &["a", "b", "c", "d", "h"],
        &[
            &format!("a^2 = h^{al}"),
            &format!("b^2 = h^{be}"),
            &format!("c^2 = h^{ga}"),
            &format!("d^2 = h^{de}"),
            &format!("a b c d = h^{e}"),
            "[h, a]",
            "[h, b]",
            "[h, c]",
            "[h, d]",
        ],
    ))
}

/// Looks up a name such as `Z4`, `GammaQxZ(3)` or `NilS2222(1,1,1,1,0)`.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry, GroupError> {
    let name = name.trim();
    let (base, params) = match name.split_once('(') {
        Some((b, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| GroupError::Parse(format!("unbalanced parentheses in '{name}'")))?;
            (b.trim(), Some(parse_params(inner)?))
        }
        None => (name, None),
    };
    let unknown = || GroupError::UnknownCatalog(name.to_string());
    let one_param = |p: &Option<Vec<i64>>| match p.as_deref() {
        Some([q]) => Ok(*q),
        _ => Err(GroupError::Parse(format!("'{base}' takes one parameter"))),
    };
    if params.is_some() && !matches!(base, "GammaQxZ" | "G5semidirect" | "NilS2222") {
        return Err(unknown());
    }
    let b = match base {
        "Z4" => Builder {
            name: name.into(),
            description: "free abelian group of rank 4",
            spec: GroupSpec::semidirect(IntMatrix::identity(3))?,
            presentations: vec![],
            interval: (-2, -2),
            citation: "4 generators and 6 relators; b1(Q) = 4 caps deficiency at -2",
        },
        "GammaQxZ" => {
            let q = one_param(&params)?;
            if q < 1 {
                return Err(GroupError::Precondition("q must be positive".into()));
            }
            let mut presentations = vec![];
            if q == 1 {
                presentations.push(pres(
                    &["t", "u", "v"],
                    &["t u = u t", "t v = v t", "u [u,v] = [u,v] u", "v [u,v] = [u,v] v"],
                ));
            }
            Builder {
                name: name.into(),
                description: "central extension <x,y,z | [x,y] = z^q, z central> times Z",
                spec: GroupSpec::semidirect(m(&[&[1, 0, 0], &[q, 1, 0], &[0, 0, 1]]))?,
                presentations,
                interval: if q == 1 { (-1, -1) } else { (-2, -2) },
                citation: if q == 1 {
                    "3-generator 4-relator presentation; b1(Q) = 3 caps deficiency at -1"
                } else {
                    "b1(F_p) = 4 for p | q; fibre is 3-generated of deficiency 0"
                },
            }
        }
        "B1xZ" => Builder {
            name: name.into(),
            description: "flat 3-manifold group B1 times Z",
            spec: GroupSpec::theta3(m(&[&[1, 0], &[0, -1]]), 0.into())?,
            presentations: vec![],
            interval: (-2, -2),
            citation: "b1(F_2) = 4; fibre is 3-generated of deficiency 0",
        },
        "B2xZ" => Builder {
            name: name.into(),
            description: "flat 3-manifold group B2 times Z",
            spec: GroupSpec::theta3(m(&[&[0, 1], &[1, 0]]), 0.into())?,
            presentations: vec![pres(
                &["t", "u", "v"],
                &["t^2 u = u t^2", "t v = v t", "u.tut^-1 = tut^-1.u", "u v = v u"],
            )],
            interval: (-1, -1),
            citation: "3-generator 4-relator presentation; b1(F_2) = 3",
        },
        "Upsilon" => Builder {
            name: name.into(),
            description: "nilpotent of class 3 and Hirsch length 4",
            spec: GroupSpec::semidirect(m(&[&[1, 0, 0], &[0, 1, 1], &[1, 0, 1]]))?,
            presentations: vec![
                pres(
                    &["t", "u", "x", "y"],
                    &["[t,u] = y", "t x = x t", "t y t^-1 = x y", "u y = y u"],
                ),
                pres(&["t", "u"], &["[t,[t,[t,u]]]", "[u,[t,u]]"]),
            ],
            interval: (0, 0),
            citation: "balanced 2-generator presentation; aspherical bound def <= 0",
        },
        "G4xZ" => Builder {
            name: name.into(),
            description: "flat 3-manifold group G4 times Z",
            spec: GroupSpec::theta3(m(&[&[0, -1], &[1, 0]]), 0.into())?,
            presentations: vec![pres(
                &["t", "u", "x"],
                &["t u = u t", "t x = x t", "u^2 x u^-2 = x^-1", "x u x u^-1 = u x u^-1 x"],
            )],
            interval: (-1, -1),
            citation: "3-generator 4-relator presentation; b1(F_2) = 3",
        },
        "G2xZ" => Builder {
            name: name.into(),
            description: "flat 3-manifold group G2 times Z",
            spec: GroupSpec::theta3(m(&[&[-1, 0], &[0, -1]]), 0.into())?,
            presentations: vec![],
            interval: (-2, -2),
            citation: "b1(F_2) = 4; fibre is 3-generated of deficiency 0",
        },
        "Theta-example" => Builder {
            name: name.into(),
            description: "Z^3 by Z with monodromy [[1,0,0],[1,5,18],[0,3,11]]",
            spec: GroupSpec::semidirect(m(&[&[1, 0, 0], &[1, 5, 18], &[0, 3, 11]]))?,
            presentations: vec![pres(
                &["t", "x", "y", "z"],
                &[
                    "t x t^-1 = x y",
                    "t y t^-1 = y^5 z^3",
                    "t z t^-1 = y^18 z^11",
                    "x y = y x",
                    "x z = z x",
                ],
            )],
            interval: (-1, -1),
            citation: "E1(tI - theta) = (t + 1, 3) is proper, so the fibre is not cyclic; 4-generator 5-relator presentation",
        },
        "G5semidirect" => {
            let mm = one_param(&params)?;
            Builder {
                name: name.into(),
                description: "G5 by Z, fibre action of order 6 twisted by m",
                spec: GroupSpec::theta3(m(&[&[0, -1], &[1, 1]]), BigInt::from(mm))?,
                presentations: vec![],
                interval: (0, 0),
                citation: "order-6 action is cyclic and I - A is invertible, so the Z^3 fibre is a cyclic module",
            }
        }
        "KbKb" => Builder {
            name: name.into(),
            description: "product of two Klein bottle groups",
            spec: GroupSpec::tower(vec![
                m(&[&[-1]]),
                IntMatrix::identity(2),
                m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
            ])?,
            presentations: vec![],
            interval: (-2, -2),
            citation: "b1(F_2) = 4; fibre is 3-generated of deficiency 0",
        },
        "knot2a" => Builder {
            name: name.into(),
            description: "solvable 2-knot group with balanced presentation",
            spec: GroupSpec::raw(pres(&["a", "b"], &["b a^2 = a^3 b^2", "b^2 a = a^2 b^3"]))
                .with_metadata(Some(4), Some(true)),
            presentations: vec![],
            interval: (0, 0),
            citation: "balanced 2-generator presentation; aspherical bound def <= 0",
        },
        "knot2b" => Builder {
            name: name.into(),
            description: "solvable 2-knot group with commutator subgroup Z^3",
            spec: GroupSpec::semidirect(m(&[&[0, 0, 1], &[-5, 2, 0], &[-8, 3, -7]]))?,
            presentations: vec![pres(
                &["t", "x", "y", "z"],
                &[
                    "x z = z x",
                    "y z = z y",
                    "t x t^-1 = y^-5 z^-8",
                    "t y t^-1 = y^2 z^3",
                    "t z t^-1 = x z^-7",
                ],
            )],
            interval: (-1, 0),
            citation: "torsion-free solvable 2-knot groups have deficiency -1 or 0",
        },
        "G2B2" => Builder {
            name: name.into(),
            description: "flat 4-manifold group G2 *_Z3 B2 (b1 = 0)",
            spec: GroupSpec::raw(pres(
                &["s", "t"],
                &["s t^2 s^-1 = t^-2", "s t s^2 t^-1 s^-1 = t s^-2 t^-1"],
            ))
            .with_metadata(Some(4), Some(false)),
            presentations: vec![],
            interval: (0, 0),
            citation: "balanced 2-generator presentation; aspherical bound def <= 0",
        },
        "G2B1" => Builder {
            name: name.into(),
            description: "flat 4-manifold group G2 *_Z3 B1 (b1 = 0)",
            spec: GroupSpec::raw(pres(
                &["a", "b", "z"],
                &["a b^2 a^-1 = b^-2", "b a^2 b^-1 = a^-2", "a z a^-1 = z^-1", "b z = z b"],
            ))
            .with_metadata(Some(4), Some(false)),
            presentations: vec![],
            interval: (-1, -1),
            citation: "3-generator 4-relator presentation; b1(F_2) = 3",
        },
        "G2G2" => Builder {
            name: name.into(),
            description: "flat 4-manifold group G2 *_Z3 G2 (b1 = 0)",
            spec: GroupSpec::raw(pres(
                &["a", "b", "z"],
                &["a b^2 a^-1 = b^-2", "b a^2 b^-1 = a^-2", "a z a^-1 = z^-1", "b z b^-1 = z^-1"],
            ))
            .with_metadata(Some(4), Some(false)),
            presentations: vec![],
            interval: (-1, -1),
            citation: "3-generator 4-relator presentation; b1(F_2) = 3",
        },
        "G6B3" => Builder {
            name: name.into(),
            description: "flat 4-manifold group G6 *_G2 B3 (b1 = 0)",
            // p is the screw generating G2 over <y, z>, y = a^2, x = p^2
            spec: GroupSpec::raw(pres(
                &["p", "z", "a", "b"],
                &[
                    "p a^2 p^-1 = a^-2",
                    "p z p^-1 = z^-1",
                    "a p a^-1 = p^-2 a^2 z p",
                    "a z a^-1 = z^-1",
                    "b^2 = a^2",
                    "b p b^-1 = a^2 p",
                    "b z b^-1 = z^-1",
                ],
            ))
            .with_metadata(Some(4), Some(false)),
            presentations: vec![],
            interval: (-2, -1),
            citation: "b1 = 0 gives a 4-generator presentation of deficiency -2; b1(F_2) = 3",
        },
        "S2222xZ" => {
            let k = nil_s2222(&[1, 1, 1, 1, 0])?;
            let mut gens: Vec<&str> = k.generators().iter().map(String::as_str).collect();
            gens.push("t");
            let mut rels = k.relator_strings();
            rels.extend(["a", "b", "c", "d", "h"].iter().map(|g| format!("[t, {g}]")));
            Builder {
                name: name.into(),
                description: "Nil 3-manifold group over S(2,2,2,2) times Z",
                spec: GroupSpec::raw(pres(&gens, &rels.iter().map(String::as_str).collect::<Vec<_>>()))
                    .with_metadata(Some(4), Some(true)),
                presentations: vec![],
                interval: (-2, -2),
                citation: "orientable with b1(F_2) = 4; fibre is 3-generated of deficiency 0",
            }
        }
        "NilS2222" => {
            let p = params.clone().ok_or_else(|| GroupError::Parse("NilS2222 takes five parameters".into()))?;
            Builder {
                name: name.into(),
                description: "Nil 3-manifold group over S(2,2,2,2), Seifert parameters (α,β,γ,δ,e)",
                spec: GroupSpec::raw(nil_s2222(&p)?).with_metadata(Some(3), Some(true)),
                presentations: vec![],
                interval: (0, 0),
                citation: "closed aspherical 3-manifold group: 3-generated with deficiency 0",
            }
        }
        _ => return Err(unknown()),
    };
    Ok(b.done())
}
