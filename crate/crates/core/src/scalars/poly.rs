//! Dense univariate polynomials with integer coefficients.
//!
//! Coefficients are stored little-endian (index = power of `q`) and the
//! vector never ends in a zero, so the zero polynomial is the empty vector
//! and structural equality is polynomial equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Lowest power with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        ZPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_exact_int(&self, c: &BigInt) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: v }
    }

    /// Divide by `q^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Nonnegative gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_exact_int(&c)
    }

    pub fn pow(&self, e: u32) -> ZPoly {
        let mut acc = ZPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Pseudo-remainder: `lead(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = r.scale(&lb).sub(&b.scale(&lr).shift_up(dr - db));
        }
        r
    }

    /// Exact division in `Z[q]`; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &ZPoly) -> ZPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            assert!(dr >= db, "inexact polynomial division");
            let (qc, rem) = r.lead().div_rem(&lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            r = r.sub(&b.scale(&qc).shift_up(dr - db));
            quot[dr - db] = qc;
        }
        ZPoly::from_coeffs(quot)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &ZPoly) -> ZPoly {
        let dm = m.degree().expect("reduction by zero polynomial");
        debug_assert!(m.lead().is_one());
        let mut v = self.coeffs.clone();
        while v.len() > dm {
            let top = v.len() - 1;
            let c = v[top].clone();
            if !c.is_zero() {
                for (k, mk) in m.coeffs.iter().enumerate() {
                    v[top - dm + k] -= &c * mk;
                }
            }
            v.pop();
        }
        ZPoly::from_coeffs(v)
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u32) -> ZPoly {
        assert!(n >= 1);
        let mut p = ZPoly::monomial(BigInt::one(), n as usize).sub(&ZPoly::one());
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = p.div_exact(&ZPoly::cyclotomic(d));
            }
        }
        p
    }
}

impl fmt::Display for ZPoly {
    /// Ascending powers, e.g. `1-q^2`, `-1+2*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(ZPoly::cyclotomic(2), ZPoly::from_i64(&[1, 1]));
        assert_eq!(ZPoly::cyclotomic(3), ZPoly::from_i64(&[1, 1, 1]));
        assert_eq!(ZPoly::cyclotomic(4), ZPoly::from_i64(&[1, 0, 1]));
        assert_eq!(ZPoly::cyclotomic(6), ZPoly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn gcd_of_q_factors() {
        let a = ZPoly::from_i64(&[1, 0, -1]);
        let b = ZPoly::from_i64(&[1, -1]).scale(&BigInt::from(3));
        assert_eq!(a.gcd(&b), ZPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(ZPoly::from_i64(&[1, 0, -1]).to_string(), "1-q^2");
        assert_eq!(ZPoly::from_i64(&[-1, 2]).to_string(), "-1+2*q");
    }
}
