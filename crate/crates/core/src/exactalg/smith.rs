//! Smith normal form by elementary row and column operations.
//!
//! Pivot selection always takes the nonzero entry of smallest absolute value
//! in the active block, which keeps the intermediate entries small on the
//! desk-scale inputs this crate deals with.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, IntMatrix};

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal, nonnegative,
/// with each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    // Column operations are tracked on V^T as row operations.
    let mut vt = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&s, k) else {
            break;
        };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        vt.swap_rows(k, pj);

        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = s[(i, k)].div_floor(&s[(k, k)]);
                s.add_row_multiple(i, k, &-&q);
                u.add_row_multiple(i, k, &-&q);
                if !s[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = s[(k, j)].div_floor(&s[(k, k)]);
                s.add_col_multiple(j, k, &-&q);
                vt.add_row_multiple(j, k, &-&q);
                if !s[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder is now smaller than the pivot: re-pivot.
                let (pi, pj) = smallest_entry_cross(&s, k);
                s.swap_rows(k, pi);
                u.swap_rows(k, pi);
                s.swap_cols(k, pj);
                vt.swap_rows(k, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility on the block.
            let bad = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(k, k)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithForm {
        u,
        s,
        v: vt.transpose(),
    }
}

fn smallest_entry(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry on row `k` or column `k` of the active block.
fn smallest_entry_cross(s: &IntMatrix, k: usize) -> (usize, usize) {
    let candidates = (k..s.rows())
        .map(|i| (i, k))
        .chain((k + 1..s.cols()).map(|j| (k, j)));
    candidates
        .filter(|&p| !s[p].is_zero())
        .min_by(|&a, &b| s[a].abs().cmp(&s[b].abs()))
        .expect("pivot cross has a nonzero entry")
}

/// Structure of the cokernel `Z^rows / M Z^cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelInvariants {
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<Int>,
    /// Number of free `Z` summands.
    pub free_rank: usize,
}

impl CokernelInvariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion.len() + self.free_rank <= 1
    }
}

pub fn cokernel_invariants(m: &IntMatrix) -> CokernelInvariants {
    cokernel_from_smith(&smith_normal_form(m), m.rows())
}

fn cokernel_from_smith(snf: &SmithForm, rows: usize) -> CokernelInvariants {
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    CokernelInvariants {
        torsion: diag
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect(),
        free_rank: rows - rank,
    }
}

/// Whether the class of `mu` generates the cokernel `Z^rows / M Z^cols`.
///
/// Works for infinite cokernels as well: a cokernel isomorphic to `Z` is
/// generated exactly by the classes mapping to `±1`.
pub fn generates_cokernel(m: &IntMatrix, mu: &[Int]) -> Result<bool, super::AlgError> {
    if mu.len() != m.rows() {
        return Err(super::AlgError::DimensionMismatch {
            expected: m.rows(),
            found: mu.len(),
        });
    }
    let snf = smith_normal_form(m);
    let coker = cokernel_from_smith(&snf, m.rows());
    if !coker.is_cyclic() {
        return Ok(false);
    }
    if coker.is_trivial() {
        return Ok(true);
    }
    // Coordinates of mu in the Smith basis of Z^rows.
    let y = snf.u.mul_vec(mu);
    let diag = snf.diagonal();
    let n = m.rows();
    // The single nontrivial cyclic factor sits at the last index whose
    // diagonal entry is not a unit.
    let idx = (0..n)
        .rev()
        .find(|&i| i >= diag.len() || !diag[i].is_one())
        .expect("nontrivial cokernel has a non-unit factor");
    let coord = &y[idx];
    Ok(if idx >= diag.len() || diag[idx].is_zero() {
        coord.abs().is_one()
    } else {
        coord.gcd(&diag[idx]).is_one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).mul(&f.v), f.s, "U M V = S for {m}");
        assert!(f.u.det().unwrap().abs().is_one());
        assert!(f.v.det().unwrap().abs().is_one());
        f
    }

    #[test]
    fn zero_one_by_one() {
        let f = check(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(f.u, IntMatrix::identity(1));
        assert_eq!(f.v, IntMatrix::identity(1));
        assert_eq!(f.s, IntMatrix::from_i64(&[&[0]]));
    }

    #[test]
    fn two_by_two() {
        let f = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(f.s, IntMatrix::diag(&[2i64, 4]));
    }

    #[test]
    fn order_six_trivial_cokernel() {
        let a = IntMatrix::from_i64(&[&[0, -1], &[1, 1]]);
        let f = check(&a.identity_minus());
        assert_eq!(f.s, IntMatrix::identity(2));
        assert!(cokernel_invariants(&a.identity_minus()).is_trivial());
    }

    #[test]
    fn divisibility_fix_up() {
        let f = check(&IntMatrix::diag(&[2i64, 3]));
        assert_eq!(f.s, IntMatrix::diag(&[1i64, 6]));
        let f = check(&IntMatrix::from_i64(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]));
        assert_eq!(f.s, IntMatrix::diag(&[2i64, 2, 60]));
    }

    #[test]
    fn rectangular() {
        let f = check(&IntMatrix::from_i64(&[&[0, 2, 0, 0], &[0, 0, 0, 0]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
        check(&IntMatrix::from_i64(&[&[3], &[5], &[7]]));
        check(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_invariants(&IntMatrix::diag(&[2i64, 2]));
        assert_eq!(c.torsion, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(c.free_rank, 0);
        let c = cokernel_invariants(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!((c.torsion.len(), c.free_rank), (0, 1));
    }

    #[test]
    fn generator_examples() {
        let z = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(generates_cokernel(&IntMatrix::diag(&[1i64, 1]), &z(&[0, 0])).unwrap());
        assert!(!generates_cokernel(&IntMatrix::diag(&[1i64, 2]), &z(&[0, 0])).unwrap());
        assert!(generates_cokernel(&IntMatrix::diag(&[1i64, 2]), &z(&[0, 1])).unwrap());
        for mu in [[1, 0], [0, 1], [1, 1], [5, 7]] {
            assert!(!generates_cokernel(&IntMatrix::diag(&[2i64, 2]), &z(&mu)).unwrap());
        }
        // Cok [[1,-1],[-1,1]] = Z via (x, y) -> x + y.
        let b = IntMatrix::from_i64(&[&[1, -1], &[-1, 1]]);
        assert!(generates_cokernel(&b, &z(&[1, 0])).unwrap());
        assert!(generates_cokernel(&b, &z(&[-1, 0])).unwrap());
        assert!(!generates_cokernel(&b, &z(&[2, 0])).unwrap());
        assert!(generates_cokernel(&b, &z(&[3, -2])).unwrap());
        assert!(generates_cokernel(&b, &z(&[1])).is_err());
    }
}
