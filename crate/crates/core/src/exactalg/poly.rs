use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgError, Int, IntMatrix};

/// Dense univariate polynomial over `Z`, coefficients lowest degree first.
/// Trailing zeros are never stored; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Int, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `t - a`
    pub fn linear_root(a: Int) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Whether the polynomial is `c * t^k` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Number of trailing factors of `t`.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out the largest power of `t`.
    pub fn strip_t(&self) -> (IntPoly, usize) {
        let v = self.t_valuation();
        (IntPoly::new(self.coeffs[v.min(self.coeffs.len())..].to_vec()), v)
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    pub fn eval(&self, x: &Int) -> Int {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &Int) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Evaluates this polynomial at a square matrix.
    pub fn eval_matrix(&self, a: &IntMatrix) -> IntMatrix {
        let n = a.rows();
        self.coeffs
            .iter()
            .rev()
            .fold(IntMatrix::zeros(n, n), |acc, c| {
                acc.mul(a).add(&IntMatrix::identity(n).scale(c))
            })
    }

    /// Exact quotient by a divisor, or `None` when the division leaves a
    /// remainder or a non-integral quotient.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dl = d.leading()?;
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return self.is_zero().then(IntPoly::zero);
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(dl);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * c;
            }
            q[i] = qi;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, o: IntPoly) -> IntPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)))
    }
}

/// Renders `sum c_i t^i` as e.g. `t^-1 - 2 + 3*t^2`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Int)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let var = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        match (e, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => write!(f, "{var}")?,
            (_, false) => write!(f, "{mag}*{var}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Characteristic polynomial `det(tI - A)`.
///
/// Computed by evaluating the determinant at `n + 1` integer points and
/// interpolating; exact throughout.
pub fn char_poly(a: &IntMatrix) -> Result<IntPoly, AlgError> {
    if !a.is_square() {
        return Err(AlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let entries: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = IntPoly::constant(-a[(i, j)].clone());
                    if i == j {
                        p = &p + &IntPoly::monomial(BigInt::one(), 1);
                    }
                    p
                })
                .collect()
        })
        .collect();
    Ok(poly_matrix_det(&entries))
}

/// Determinant of a square matrix with polynomial entries.
pub fn poly_matrix_det(entries: &[Vec<IntPoly>]) -> IntPoly {
    let n = entries.len();
    if n == 0 {
        return IntPoly::one();
    }
    let bound: usize = entries
        .iter()
        .map(|row| row.iter().filter_map(IntPoly::degree).max().unwrap_or(0))
        .sum();
    let points: Vec<Int> = (0..=bound as i64).map(BigInt::from).collect();
    let values: Vec<Int> = points
        .iter()
        .map(|x| {
            let mut m = IntMatrix::zeros(n, n);
            for (i, row) in entries.iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    m[(i, j)] = p.eval(x);
                }
            }
            m.det().expect("square")
        })
        .collect();
    interpolate(&points, &values)
}

/// Newton interpolation through integer points; the result is known to
/// have integer coefficients when the values come from an integer
/// polynomial of degree below the number of points.
fn interpolate(xs: &[Int], ys: &[Int]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys
        .iter()
        .map(|y| BigRational::from_integer(y.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (t - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigRational::from_integer(xs[i].clone());
        }
        next[0] += &dd[i];
        acc = next;
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                debug_assert!(c.is_integer(), "interpolation produced a fraction");
                c.to_integer()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&IntMatrix::identity(2)).unwrap(),
            IntPoly::from_i64(&[1, -2, 1])
        );
        let order6 = IntMatrix::from_i64(&[&[0, -1], &[1, 1]]);
        assert_eq!(char_poly(&order6).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        let comp = IntMatrix::companion(&[-1i64, -1, 0]);
        assert_eq!(char_poly(&comp).unwrap(), IntPoly::from_i64(&[-1, -1, 0, 1]));
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cayley_hamilton() {
        let a = IntMatrix::from_i64(&[&[1, 0, 0], &[1, 5, 18], &[0, 3, 11]]);
        let p = char_poly(&a).unwrap();
        assert!(p.eval_matrix(&a).is_zero());
        assert_eq!(p.coeff(0), -a.det().unwrap());
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[-3, 2, 5]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&IntPoly::from_i64(&[1, 2])), None);
        assert_eq!(IntPoly::from_i64(&[1, 2]).div_exact(&IntPoly::from_i64(&[0, 2])), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(IntPoly::from_i64(&[1, -2, 1]).to_string(), "1 - 2*t + t^2");
        assert_eq!(IntPoly::from_i64(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn monomial_and_strip() {
        let p = IntPoly::from_i64(&[0, 0, 3]);
        assert!(p.is_monomial());
        assert_eq!(p.strip_t(), (IntPoly::from_i64(&[3]), 2));
        assert!(!IntPoly::zero().is_monomial());
    }
}
