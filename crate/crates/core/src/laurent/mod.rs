//! Arithmetic and ideals in the Laurent polynomial ring `Z[t, t^-1]`.
//!
//! The unit-ideal decision works in two stages. First the generators are
//! compared over `Q[t]`: a nonconstant common factor means the ideal is
//! proper. Otherwise some positive integer `c` lies in the ideal, and every
//! maximal ideal containing the generators must contain a prime `p | c`;
//! the ideal is then proper exactly when the generators have a
//! non-monomial common factor in `F_p[t]` for one of those primes.

mod upoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::arith::{factorize, mod_inverse, modp, prime_divisors};
use crate::exactalg::{self, write_terms, AlgError, Int, IntMatrix, IntPoly};
use upoly::{fp, q, FpPoly, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("the ideal has no nonzero generators")]
    EmptyIdeal,
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("elementary ideal needs a square matrix of size at least 2")]
    TooSmall,
    #[error("cannot parse Laurent polynomial: {0}")]
    Parse(String),
}

/// `t^shift * poly(t)`; in normal form `poly` has a nonzero constant term,
/// and zero is stored as the zero polynomial with shift 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    poly: IntPoly,
    shift: i64,
}

impl LaurentPoly {
    pub fn new(poly: IntPoly, shift: i64) -> Self {
        if poly.is_zero() {
            return LaurentPoly::default();
        }
        let (p, v) = poly.strip_t();
        LaurentPoly {
            poly: p,
            shift: shift + v as i64,
        }
    }

    pub fn from_poly(poly: IntPoly) -> Self {
        Self::new(poly, 0)
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    /// `c * t^k`
    pub fn monomial(c: Int, k: i64) -> Self {
        Self::new(IntPoly::constant(c), k)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Units of the ring are exactly `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.poly.degree() == Some(0) && self.poly.coeff(0).abs().is_one()
    }

    /// Idempotent canonicalization.
    pub fn normalize(&self) -> Self {
        Self::new(self.poly.clone(), self.shift)
    }

    /// Coefficients as `(exponent, coefficient)` pairs, nonzero only.
    pub fn terms(&self) -> Vec<(i64, Int)> {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    pub fn from_terms(terms: &[(i64, Int)]) -> Self {
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            v[(e - lo) as usize] += c;
        }
        Self::new(IntPoly::new(v), lo)
    }

    pub fn times_t_power(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            poly: self.poly.clone(),
            shift: self.shift + k,
        }
    }

    pub fn scale(&self, s: &Int) -> Self {
        Self::new(self.poly.scale(s), self.shift)
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_scalar_exact(&self, d: &Int) -> Option<Self> {
        let mut out = Vec::new();
        for c in self.poly.coeffs() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(IntPoly::new(out), self.shift))
    }

    /// Reduces coefficients into the symmetric range modulo `m`.
    pub fn reduce_symmetric(&self, m: &Int) -> Self {
        let half = m / 2;
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .map(|c| {
                let r = modp(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect();
        Self::new(IntPoly::new(coeffs), self.shift)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(o.shift);
        let a = self.poly.shift((self.shift - lo) as usize);
        let b = o.poly.shift((o.shift - lo) as usize);
        LaurentPoly::new(&a + &b, lo)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::new(-&self.poly, self.shift)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(&self.poly * &o.poly, self.shift + o.shift)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.poly
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (self.shift + i as i64, c)),
        )
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts sums of terms such as `t^-1 - 2 + 3*t^2`, `-t`, `5t^3`.
    fn from_str(s: &str) -> Result<Self, LaurentError> {
        let err = || LaurentError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // Split into signed terms; a '-' right after '^' belongs to the exponent.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        terms.push(cur);

        let mut parsed = Vec::new();
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'+' => (false, &term[1..]),
                b'-' => (true, &term[1..]),
                _ => (false, term.as_str()),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, exp) = match body.find('t') {
                None => (body.parse::<BigInt>().map_err(|_| err())?, 0i64),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() {
                        BigInt::one()
                    } else {
                        c.parse::<BigInt>().map_err(|_| err())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        let r = rest.strip_prefix('^').ok_or_else(err)?;
                        let r = r.trim_start_matches('(').trim_end_matches(')');
                        r.parse::<i64>().map_err(|_| err())?
                    };
                    (c, e)
                }
            };
            parsed.push((exp, if neg { -coef } else { coef }));
        }
        Ok(LaurentPoly::from_terms(&parsed))
    }
}

/// Finitely generated ideal of `Z[t, t^-1]`. Generators are stored as
/// polynomials with nonzero constant term (the `t`-power is a unit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentIdeal {
    gens: Vec<IntPoly>,
}

impl LaurentIdeal {
    /// Drops zero generators and divides out powers of `t`.
    pub fn new(gens: impl IntoIterator<Item = LaurentPoly>) -> Self {
        LaurentIdeal {
            gens: gens
                .into_iter()
                .filter(|g| !g.is_zero())
                .map(|g| g.normalize().poly)
                .collect(),
        }
    }

    pub fn from_polys(gens: impl IntoIterator<Item = IntPoly>) -> Self {
        Self::new(gens.into_iter().map(LaurentPoly::from_poly))
    }

    pub fn generators(&self) -> &[IntPoly] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Explicit combination `sum cof_i * gen_i`.
    pub fn combine(&self, cofactors: &[LaurentPoly]) -> LaurentPoly {
        assert_eq!(cofactors.len(), self.gens.len());
        self.gens
            .iter()
            .zip(cofactors)
            .fold(LaurentPoly::zero(), |acc, (g, c)| {
                &acc + &(c * &LaurentPoly::from_poly(g.clone()))
            })
    }
}

impl fmt::Display for LaurentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// The ideal generated by the `(n-1) x (n-1)` minors of `tI - A`.
pub fn elementary_ideal_e1(a: &IntMatrix) -> Result<LaurentIdeal, LaurentError> {
    if !a.is_square() {
        return Err(AlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    let n = a.rows();
    if n < 2 {
        return Err(LaurentError::TooSmall);
    }
    let t = IntPoly::monomial(BigInt::one(), 1);
    let entry = |i: usize, j: usize| {
        let c = IntPoly::constant(-a[(i, j)].clone());
        if i == j {
            &c + &t
        } else {
            c
        }
    };
    let subsets = exactalg::subsets(n, n - 1);
    let mut gens = Vec::new();
    for rs in &subsets {
        for cs in &subsets {
            let block: Vec<Vec<IntPoly>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| entry(i, j)).collect())
                .collect();
            gens.push(exactalg::poly_matrix_det(&block));
        }
    }
    Ok(LaurentIdeal::from_polys(gens))
}

/// Bezout data over `Q[t]`, cleared to integers:
/// `sum cofactors_i * gen_i = multiplier * gcd * t^t_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QgcdCertificate {
    /// Primitive gcd of the generators over `Q[t]`, positive leading coefficient.
    pub gcd: IntPoly,
    pub multiplier: Int,
    pub t_power: u32,
    pub cofactors: Vec<IntPoly>,
}

impl QgcdCertificate {
    pub fn verify(&self, ideal: &LaurentIdeal) -> bool {
        let lhs = ideal
            .gens
            .iter()
            .zip(&self.cofactors)
            .fold(IntPoly::zero(), |acc, (g, c)| &acc + &(g * c));
        let rhs = self
            .gcd
            .scale(&self.multiplier)
            .shift(self.t_power as usize);
        lhs == rhs && self.multiplier.is_positive()
    }

    /// The gcd is a unit of the Laurent ring up to sign and `t`-power.
    pub fn gcd_is_monomial(&self) -> bool {
        self.gcd.is_monomial()
    }
}

/// Deterministic certificate from the extended Euclidean algorithm over
/// `Q[t]` in generator order, with content removed; when the gcd is
/// constant the multiplier is further reduced against the integer
/// generators. The `t`-power is always 0 because generators are stored
/// with nonzero constant term.
pub fn qgcd_certificate(ideal: &LaurentIdeal) -> Result<QgcdCertificate, LaurentError> {
    if ideal.is_empty() {
        return Err(LaurentError::EmptyIdeal);
    }
    let qgens: Vec<QPoly> = ideal.gens.iter().map(IntPoly::to_rational).collect();
    let mut g: QPoly = Vec::new();
    let mut cof: Vec<QPoly> = vec![Vec::new(); qgens.len()];
    for (i, f) in qgens.iter().enumerate() {
        let (h, s, t) = q::ext_gcd(&g, f);
        for c in cof.iter_mut().take(i) {
            *c = q::mul(c, &s);
        }
        cof[i] = t;
        g = h;
    }
    // g is monic; write g = lambda * prim with prim primitive in Z[t].
    let den_g = g.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled: Vec<Int> = g
        .iter()
        .map(|c| (c * BigRational::from_integer(den_g.clone())).to_integer())
        .collect();
    let prim = IntPoly::new(scaled).primitive_part();
    // sum cof_i f_i = g = prim / lambda'  =>  sum (cof_i * r) f_i = prim,
    // where r = prim_lead / g_lead = prim_lead (g monic).
    let r = BigRational::from_integer(prim.leading().cloned().unwrap_or_else(BigInt::one));
    let b: Vec<QPoly> = cof.iter().map(|c| q::scale(c, &r)).collect();
    let d = b
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut ints: Vec<IntPoly> = b
        .iter()
        .map(|c| {
            IntPoly::new(
                c.iter()
                    .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
                    .collect(),
            )
        })
        .collect();
    let mut mult = d;
    let e = ints.iter().fold(mult.clone(), |acc, p| acc.gcd(&p.content()));
    if !e.is_one() {
        mult /= &e;
        ints = ints
            .iter()
            .map(|p| p.div_exact(&IntPoly::constant(e.clone())).unwrap())
            .collect();
    }
    if prim.degree() == Some(0) {
        // Integer generators lie in the ideal too; fold them in by Bezout.
        for (j, gen) in ideal.gens.iter().enumerate() {
            if gen.degree() != Some(0) {
                continue;
            }
            let k = gen.coeff(0);
            let eg = mult.extended_gcd(&k);
            if eg.gcd.abs() >= mult {
                continue;
            }
            let sign = if eg.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
            let sx = &eg.x * &sign;
            let sy = &eg.y * &sign;
            ints = ints.iter().map(|p| p.scale(&sx)).collect();
            ints[j] = &ints[j] + &IntPoly::constant(sy);
            mult = eg.gcd.abs();
        }
    }
    let cert = QgcdCertificate {
        gcd: prim,
        multiplier: mult,
        t_power: 0,
        cofactors: ints,
    };
    debug_assert!(cert.verify(ideal));
    Ok(cert)
}

fn reduce_gens_mod(ideal: &LaurentIdeal, p: &Int) -> Vec<FpPoly> {
    ideal.gens.iter().map(|g| fp::reduce(g.coeffs(), p)).collect()
}

fn fp_is_monomial(g: &FpPoly) -> bool {
    !g.is_empty() && g.iter().filter(|c| !c.is_zero()).count() == 1
}

/// Whether the ideal is all of `Z[t, t^-1]`.
pub fn is_unit_ideal(ideal: &LaurentIdeal) -> Result<bool, LaurentError> {
    let cert = qgcd_certificate(ideal)?;
    if !cert.gcd_is_monomial() {
        return Ok(false);
    }
    for p in prime_divisors(&cert.multiplier) {
        let (g, _) = fp::ext_gcd_many(&reduce_gens_mod(ideal, &p), &p);
        if !fp_is_monomial(&g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Explicit Laurent cofactors with `sum cof_i * gen_i = 1`, or `None` when
/// the ideal is proper.
///
/// Built prime power by prime power: over `F_p` the Euclidean algorithm
/// gives `1 + p*r`, which is inverted modulo `p^e` by a finite geometric
/// series, and the local solutions are glued by the Chinese remainder
/// theorem before the integer multiplier is cancelled.
pub fn unit_combination(ideal: &LaurentIdeal) -> Result<Option<Vec<LaurentPoly>>, LaurentError> {
    let cert = qgcd_certificate(ideal)?;
    if !cert.gcd_is_monomial() {
        return Ok(None);
    }
    let n = ideal.gens.len();
    let c = cert.multiplier.clone();
    // sum a_i f_i = c * sign (gcd is ±1 here)
    let sign = cert.gcd.coeff(0);
    let a: Vec<LaurentPoly> = cert
        .cofactors
        .iter()
        .map(|p| LaurentPoly::from_poly(p.scale(&sign)))
        .collect();
    if c.is_one() {
        return Ok(Some(a));
    }

    let mut glued = vec![LaurentPoly::zero(); n];
    for (p, e) in factorize(&c) {
        let qpow = num_traits::pow(p.clone(), e as usize);
        let (g, s) = fp::ext_gcd_many(&reduce_gens_mod(ideal, &p), &p);
        if !fp_is_monomial(&g) {
            return Ok(None);
        }
        let j = (g.len() - 1) as i64;
        // sum s_i f_i = t^j + p*r over Z; multiply by t^-j.
        let local: Vec<LaurentPoly> = s
            .iter()
            .map(|si| LaurentPoly::from_poly(IntPoly::new(si.clone())).times_t_power(-j))
            .collect();
        let x = &ideal.combine(&local) - &LaurentPoly::one();
        // (1 + x)^-1 = sum_{i<e} (-x)^i modulo p^e
        let minus_x = -&x;
        let mut inv = LaurentPoly::one();
        let mut pw = LaurentPoly::one();
        for _ in 1..e {
            pw = (&pw * &minus_x).reduce_symmetric(&qpow);
            inv = &inv + &pw;
        }
        let cofactor = &c / &qpow;
        let idem = &cofactor * mod_inverse(&cofactor, &qpow).expect("coprime");
        for (acc, li) in glued.iter_mut().zip(&local) {
            let term = (&inv * li).reduce_symmetric(&qpow).scale(&idem);
            *acc = (&*acc + &term).reduce_symmetric(&c);
        }
    }
    // sum glued_i f_i = 1 + c*R
    let r = (&ideal.combine(&glued) - &LaurentPoly::one())
        .div_scalar_exact(&c)
        .expect("combination is 1 modulo c");
    let out: Vec<LaurentPoly> = glued
        .iter()
        .zip(&a)
        .map(|(g, ai)| g - &(&r * ai))
        .collect();
    debug_assert_eq!(ideal.combine(&out), LaurentPoly::one());
    Ok(Some(out))
}

/// Membership `x ∈ I`. Writing `I = g*J` with `g` the primitive `Q[t]`
/// gcd, the question reduces to `g | x` and `x/g ∈ J`, where `J` contains
/// a positive integer `c`. Primes `p | c` with `J + (p)` the unit ideal
/// impose no condition; the rest are decided over `F_p` when they divide
/// `c` exactly once, and `None` is returned otherwise.
pub fn contains(ideal: &LaurentIdeal, x: &LaurentPoly) -> Result<Option<bool>, LaurentError> {
    if x.is_zero() {
        return Ok(Some(true));
    }
    if ideal.is_empty() {
        return Err(LaurentError::EmptyIdeal);
    }
    let cert = qgcd_certificate(ideal)?;
    let g = &cert.gcd;
    let Some(xq) = x.poly.div_exact(g) else {
        return Ok(Some(false));
    };
    let reduced = LaurentIdeal::from_polys(
        ideal
            .gens
            .iter()
            .map(|f| f.div_exact(g).expect("gcd divides every generator")),
    );
    let cert = qgcd_certificate(&reduced)?;
    let mut decided = true;
    for (p, e) in factorize(&cert.multiplier) {
        let (h, _) = fp::ext_gcd_many(&reduce_gens_mod(&reduced, &p), &p);
        if fp_is_monomial(&h) {
            continue;
        }
        let xr = fp::reduce(xq.coeffs(), &p);
        if !xr.is_empty() && !fp::divrem(&xr, &h, &p).1.is_empty() {
            return Ok(Some(false));
        }
        decided &= e == 1;
    }
    Ok(decided.then_some(true))
}

/// Ideal equality by two-sided generator membership, where decidable.
pub fn same_ideal(i: &LaurentIdeal, j: &LaurentIdeal) -> Result<Option<bool>, LaurentError> {
    let mut all = Some(true);
    for (a, b) in [(i, j), (j, i)] {
        for g in &a.gens {
            match contains(b, &LaurentPoly::from_poly(g.clone()))? {
                Some(false) => return Ok(Some(false)),
                None => all = None,
                Some(true) => {}
            }
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests;
