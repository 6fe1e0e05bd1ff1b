//! Exact linear algebra over `Z`, `Q` and prime fields.

pub mod arith;
mod matrix;
mod poly;
mod smith;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::IntMatrix;
pub use poly::{char_poly, poly_matrix_det, IntPoly};
pub(crate) use poly::write_terms;
pub use smith::{cokernel_invariants, generates_cokernel, smith_normal_form, CokernelInvariants, SmithForm};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows of unequal length")]
    Ragged,
    #[error("{0} is not prime")]
    NotPrime(Int),
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(Int),
}

/// Coefficient field for ranks and Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, AlgError> {
        if arith::is_prime(&BigInt::from(p)) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgError::NotPrime(BigInt::from(p)))
        }
    }

    pub fn f2() -> Field {
        Field::Prime(2)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Short name used in reports: `q`, `f2`, `f3`, ...
    pub fn key(&self) -> String {
        match self {
            Field::Rationals => "q".into(),
            Field::Prime(p) => format!("f{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" || s == "rationals" {
            return Ok(Field::Rationals);
        }
        let digits = s.strip_prefix('f').or_else(|| s.strip_prefix("f_")).unwrap_or(&s);
        let digits = digits.trim_start_matches('_');
        let p: u64 = digits.parse().map_err(|_| format!("unknown field '{s}'"))?;
        Field::prime(p).map_err(|e| e.to_string())
    }
}

/// Rank of `m` over the given field. Over `F_p` this is plain Gaussian
/// elimination on residues; over `Q` it is read off the Smith form.
pub fn rank_over(m: &IntMatrix, field: &Field) -> Result<usize, AlgError> {
    match field {
        Field::Rationals => Ok(smith_normal_form(m).rank()),
        Field::Prime(p) => {
            let p = BigInt::from(*p);
            if !arith::is_prime(&p) {
                return Err(AlgError::NotPrime(p));
            }
            Ok(rank_mod_prime(m, &p))
        }
    }
}

fn rank_mod_prime(m: &IntMatrix, p: &Int) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Int>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| arith::modp(x, p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = arith::mod_inverse(&a[rank][col], p).expect("nonzero residue mod prime");
        for j in col..cols {
            a[rank][j] = (&a[rank][j] * &inv) % p;
        }
        for i in 0..rows {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let v = arith::modp(&(&a[i][j] - &f * &a[rank][j]), p);
                    a[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nullity over `Q` of a square or rectangular matrix (columns minus rank).
pub fn nullity_over_q(m: &IntMatrix) -> usize {
    m.cols() - smith_normal_form(m).rank()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k x k` minors, rows subsets outer and column subsets inner, both
/// lexicographic.
pub fn minors(m: &IntMatrix, k: usize) -> Result<Vec<Int>, AlgError> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return Err(AlgError::MinorSize {
            k,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let rs = subsets(m.rows(), k);
    let cs = subsets(m.cols(), k);
    let mut out = Vec::with_capacity(rs.len() * cs.len());
    for r in &rs {
        for c in &cs {
            out.push(m.submatrix(r, c).det()?);
        }
    }
    Ok(out)
}

/// Gcd of a list of integers (zero for an empty or all-zero list).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    use num_integer::Integer;
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && m.det().map(|d| d.magnitude().is_one()).unwrap_or(false)
}
