//! Integral binary quadratic forms and the question of whether a 2x2
//! integer matrix has a cyclic vector.
//!
//! A vector `v` is cyclic for `A` exactly when `det[v | Av] = ±1`, and that
//! determinant is a binary quadratic form in the coordinates of `v`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::arith::exact_sqrt;
use crate::exactalg::{Int, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("expected a 2x2 matrix, found {rows}x{cols}")]
    NotTwoByTwo { rows: usize, cols: usize },
    #[error("reduction cycles need a positive non-square discriminant, found {0}")]
    NotIndefinite(Int),
}

/// `a x^2 + b xy + c y^2`
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BQForm {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

/// A primitive vector at which a form takes the value `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Int,
    pub y: Int,
    pub value: i32,
}

impl BQForm {
    pub fn new(a: Int, b: Int, c: Int) -> Self {
        BQForm { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        BQForm::new(a.into(), b.into(), c.into())
    }

    pub fn discriminant(&self) -> Int {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn content(&self) -> Int {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn negate(&self) -> BQForm {
        BQForm::new(-&self.a, -&self.b, -&self.c)
    }

    /// The form `(x, y) -> f(M (x, y))` for a 2x2 matrix `M`.
    pub fn transform(&self, m: &IntMatrix) -> BQForm {
        let (p, q, r, s) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        BQForm::new(
            self.eval(p, r),
            BigInt::from(2) * a * p * q + b * (p * s + q * r) + BigInt::from(2) * c * r * s,
            self.eval(q, s),
        )
    }

    /// Reducedness for indefinite forms: `0 < b < √D` and
    /// `√D - b < 2|a| < √D + b`.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if !d.is_positive() || exact_sqrt(&d).is_some() {
            return false;
        }
        let r = d.sqrt();
        let two_a = BigInt::from(2) * self.a.abs();
        let lower = &two_a + &self.b;
        let upper = &two_a - &self.b;
        self.b.is_positive()
            && self.b <= r
            && lower.is_positive()
            && &lower * &lower > d
            && (upper.is_negative() || &upper * &upper < d)
    }
}

impl fmt::Debug for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x^2 + {}xy + {}y^2", self.a, self.b, self.c)
    }
}

fn check_2x2(a: &IntMatrix) -> Result<(), QuadError> {
    if a.rows() == 2 && a.cols() == 2 {
        Ok(())
    } else {
        Err(QuadError::NotTwoByTwo {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// `det[v | Av]` as a form in `v = (x, y)`; for `A = [[a, b], [c, d]]`
/// this is `(c, d - a, -b)`.
pub fn cyclicity_form(a: &IntMatrix) -> Result<BQForm, QuadError> {
    check_2x2(a)?;
    Ok(BQForm::new(
        a[(1, 0)].clone(),
        &a[(1, 1)] - &a[(0, 0)],
        -&a[(0, 1)],
    ))
}

/// One rho step together with its determinant-1 change of variables `T`,
/// so that `rho(f) = f.transform(T)`.
pub fn rho(f: &BQForm) -> Result<(BQForm, IntMatrix), QuadError> {
    let d = f.discriminant();
    if !d.is_positive() || exact_sqrt(&d).is_some() {
        return Err(QuadError::NotIndefinite(d));
    }
    let r = d.sqrt();
    let c_abs = f.c.abs();
    let two_c = BigInt::from(2) * &c_abs;
    // b' ≡ -b mod 2|c| in a window of length 2|c|
    let lo: Int = if c_abs > r {
        -&c_abs + 1
    } else {
        &r - &two_c + 1
    };
    let shift: Int = (-&f.b - &lo).mod_floor(&two_c);
    let b_new = &lo + shift;
    let s = (&b_new + &f.b) / (BigInt::from(2) * &f.c);
    let t = IntMatrix::from_rows(&[vec![BigInt::zero(), -BigInt::one()], vec![BigInt::one(), s]])
        .expect("2x2");
    let g = f.transform(&t);
    debug_assert_eq!(g.b, b_new);
    Ok((g, t))
}

/// Reduced forms reached from `f` with the accumulated change of variables
/// `M` (`form = f.transform(M)`): the pre-period is dropped and the cycle
/// is returned once.
fn cycle_with_transforms(f: &BQForm) -> Result<Vec<(BQForm, IntMatrix)>, QuadError> {
    let mut cur = f.clone();
    let mut m = IntMatrix::identity(2);
    while !cur.is_reduced() {
        let (g, t) = rho(&cur)?;
        cur = g;
        m = m.mul(&t);
    }
    let start = cur.clone();
    let mut out = vec![(cur.clone(), m.clone())];
    loop {
        let (g, t) = rho(&cur)?;
        m = m.mul(&t);
        if g == start {
            break;
        }
        out.push((g.clone(), m.clone()));
        cur = g;
    }
    Ok(out)
}

/// The cycle of reduced forms properly equivalent to `f`, in rho order.
pub fn reduce_cycle(f: &BQForm) -> Result<Vec<BQForm>, QuadError> {
    Ok(cycle_with_transforms(f)?
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}

fn witness(f: &BQForm, x: Int, y: Int) -> Option<Witness> {
    let v = f.eval(&x, &y);
    let value = if v.is_one() {
        1
    } else if (-&v).is_one() {
        -1
    } else {
        return None;
    };
    Some(Witness { x, y, value })
}

/// A primitive vector with `f(v) = ±1`, or `None` when `f` takes neither
/// value.
pub fn represents_pm_one(f: &BQForm) -> Option<Witness> {
    if f.is_zero() || !f.content().is_one() {
        return None;
    }
    let d = f.discriminant();
    if d.is_negative() {
        return definite_search(f);
    }
    if exact_sqrt(&d).is_some() {
        return split_solve(f);
    }
    for g in [f.clone(), f.negate()] {
        let cycle = cycle_with_transforms(&g).expect("indefinite non-square");
        for (h, m) in cycle {
            if h.a.abs().is_one() {
                return witness(f, m[(0, 0)].clone(), m[(1, 0)].clone());
            }
        }
    }
    None
}

/// For definite `f` with `|D| >= 3`, `|f(v)| >= 3|v|^2 / (4(|a| + |c|))`,
/// so `|f(v)| = 1` forces `|v| < 2 sqrt(|a| + |c|)`.
fn definite_search(f: &BQForm) -> Option<Witness> {
    let bound: Int = BigInt::from(2) * (f.a.abs() + f.c.abs()).sqrt() + 4;
    let mut y = -&bound;
    while y <= bound {
        for target in [1i32, -1] {
            if let Some(x) = solve_for_x(f, &y, &BigInt::from(target)) {
                return witness(f, x, y);
            }
        }
        y += 1;
    }
    None
}

/// An integer `x` with `f(x, y) = v` for fixed `y`, if one exists.
pub(crate) fn solve_for_x(f: &BQForm, y: &Int, v: &Int) -> Option<Int> {
    if f.a.is_zero() {
        // b y x = v - c y^2
        let lin = &f.b * y;
        let rhs = v - &f.c * y * y;
        if lin.is_zero() {
            return rhs.is_zero().then(BigInt::zero);
        }
        let (q, r) = rhs.div_rem(&lin);
        return r.is_zero().then_some(q);
    }
    let disc = f.discriminant() * y * y + BigInt::from(4) * &f.a * v;
    let s = exact_sqrt(&disc)?;
    let two_a = BigInt::from(2) * &f.a;
    let by = &f.b * y;
    for num in [-&by + &s, -&by - &s] {
        let (q, r) = num.div_rem(&two_a);
        if r.is_zero() {
            return Some(q);
        }
    }
    None
}

/// Primitive linear forms `(α, β)`, `(γ, δ)` and `k` with
/// `f = k (αx + βy)(γx + δy)`, for square discriminant.
fn factor_square(f: &BQForm) -> (Int, [Int; 2], [Int; 2]) {
    let prim = |u: Int, v: Int| {
        let g = u.gcd(&v);
        (g.clone(), [u / &g, v / &g])
    };
    if f.a.is_zero() {
        let (g, l2) = prim(f.b.clone(), f.c.clone());
        return (g, [BigInt::zero(), BigInt::one()], l2);
    }
    let s = exact_sqrt(&f.discriminant()).expect("square discriminant");
    let two_a = BigInt::from(2) * &f.a;
    let (g1, l1) = prim(two_a.clone(), &f.b + &s);
    let (g2, l2) = prim(two_a, &f.b - &s);
    let k = g1 * g2 / (BigInt::from(4) * &f.a);
    (k, l1, l2)
}

fn split_solve(f: &BQForm) -> Option<Witness> {
    let (k, [al, be], [ga, de]) = factor_square(f);
    if !k.abs().is_one() {
        return None;
    }
    let det = &al * &de - &be * &ga;
    if det.is_zero() {
        // f = k L^2; L primitive, so L(v) = 1 is solvable
        let e = al.extended_gcd(&be);
        let sign = e.gcd.signum();
        return witness(f, e.x * &sign, e.y * &sign);
    }
    for e1 in [1i64, -1] {
        for e2 in [1i64, -1] {
            let (e1, e2) = (BigInt::from(e1), BigInt::from(e2));
            let xn = &e1 * &de - &be * &e2;
            let yn = &al * &e2 - &ga * &e1;
            if xn.is_multiple_of(&det) && yn.is_multiple_of(&det) {
                return witness(f, xn / &det, yn / &det);
            }
        }
    }
    None
}

/// A cyclic vector `v` for a 2x2 matrix `A` and `P = [v | Av]`, which is
/// unimodular with `P^-1 A P = [[0, ±1], [1, tr A]]`.
pub fn companion_conjugacy(a: &IntMatrix) -> Result<Option<(Vec<Int>, IntMatrix)>, QuadError> {
    let f = cyclicity_form(a)?;
    let Some(w) = represents_pm_one(&f) else {
        return Ok(None);
    };
    let v = vec![w.x, w.y];
    let av = a.mul_vec(&v);
    let p = IntMatrix::from_rows(&[vec![v[0].clone(), av[0].clone()], vec![v[1].clone(), av[1].clone()]])
        .expect("2x2");
    Ok(Some((v, p)))
}
