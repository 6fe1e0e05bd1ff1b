//! Univariate helpers over `Q` and over `Z/p`. Polynomials are plain
//! coefficient vectors, lowest degree first, with no trailing zeros.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactalg::arith::{mod_inverse, modp};
use crate::exactalg::Int;

pub(crate) type QPoly = Vec<BigRational>;
pub(crate) type FpPoly = Vec<Int>;

fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub(crate) mod q {
    use super::*;

    pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    a.get(i).cloned().unwrap_or_else(BigRational::zero)
                        - b.get(i).cloned().unwrap_or_else(BigRational::zero)
                })
                .collect(),
        )
    }

    pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        trim(v)
    }

    pub fn scale(a: &QPoly, s: &BigRational) -> QPoly {
        trim(a.iter().map(|x| x * s).collect())
    }

    pub fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.clone();
        let db = b.len() - 1;
        let lb = b[db].clone();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut quot = vec![BigRational::zero(); r.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &r[i + db] / &lb;
            if c.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
            quot[i] = c;
        }
        (trim(quot), trim(r))
    }

    /// Monic gcd `g` with `s*a + t*b = g`.
    pub fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let one = vec![BigRational::one()];
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), one);
        while !r1.is_empty() {
            let (qq, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&qq, &s1));
            let t = sub(&t0, &mul(&qq, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let inv = BigRational::one() / r0.last().unwrap();
        (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
    }
}

pub(crate) mod fp {
    use super::*;

    pub fn reduce(a: &[Int], p: &Int) -> FpPoly {
        trim(a.iter().map(|x| modp(x, p)).collect())
    }

    pub fn sub(a: &FpPoly, b: &FpPoly, p: &Int) -> FpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or_default();
                    let y = b.get(i).cloned().unwrap_or_default();
                    modp(&(x - y), p)
                })
                .collect(),
        )
    }

    pub fn mul(a: &FpPoly, b: &FpPoly, p: &Int) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        reduce(&v, p)
    }

    pub fn scale(a: &FpPoly, s: &Int, p: &Int) -> FpPoly {
        reduce(&a.iter().map(|x| x * s).collect::<Vec<_>>(), p)
    }

    pub fn divrem(a: &FpPoly, b: &FpPoly, p: &Int) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let inv = mod_inverse(&b[db], p).expect("leading coefficient is a unit");
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut quot = vec![BigInt::zero(); r.len() - db];
        for i in (0..quot.len()).rev() {
            let c = modp(&(&r[i + db] * &inv), p);
            if c.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] = modp(&(&r[i + j] - &c * y), p);
            }
            quot[i] = c;
        }
        (trim(quot), trim(r))
    }

    /// Monic gcd `g` with `s*a + t*b = g` over `F_p`.
    pub fn ext_gcd(a: &FpPoly, b: &FpPoly, p: &Int) -> (FpPoly, FpPoly, FpPoly) {
        let one = vec![BigInt::one()];
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), one);
        while !r1.is_empty() {
            let (qq, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&qq, &s1, p), p);
            let t = sub(&t0, &mul(&qq, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let inv = mod_inverse(r0.last().unwrap(), p).expect("unit");
        (scale(&r0, &inv, p), scale(&s0, &inv, p), scale(&t0, &inv, p))
    }

    /// Gcd of several polynomials with cofactors: `sum cof_i * f_i = g`.
    pub fn ext_gcd_many(fs: &[FpPoly], p: &Int) -> (FpPoly, Vec<FpPoly>) {
        let mut g: FpPoly = Vec::new();
        let mut cof: Vec<FpPoly> = vec![Vec::new(); fs.len()];
        for (i, f) in fs.iter().enumerate() {
            let (h, s, t) = ext_gcd(&g, f, p);
            for c in cof.iter_mut().take(i) {
                *c = mul(c, &s, p);
            }
            cof[i] = t;
            g = h;
        }
        (g, cof)
    }
}
