//! Exact coefficients.
//!
//! A [`Scalar`] lives in one of three fields, fixed per computation:
//! the rationals, rational functions in a symbol `q`, or `Q[q]/Phi_N(q)`
//! (so that `q` is a primitive `N`-th root of unity).
//!
//! Every value is kept in canonical form, so derived `Eq`/`Hash` agree
//! with field equality:
//! - rational functions are `num/den` with `gcd(num, den) = 1` over `Q[q]`,
//!   integer coefficients with no common integer factor across both, and a
//!   positive leading coefficient in `den`;
//! - cyclotomic residues have `deg num < deg Phi_N` and a positive integer
//!   denominator;
//! - rationals are the rational-function form restricted to constants.

pub(crate) mod parse;
pub mod poly;

pub use parse::parse_scalar;
pub use poly::ZPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("the symbol q is not available in {0}")]
    NoSymbol(Field),
    #[error("cyclotomic order must be at least 2, got {0}")]
    BadOrder(u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    RationalQ,
    Cyclotomic(u32),
}

impl Field {
    pub fn cyclotomic(n: u32) -> Result<Field, ScalarError> {
        if n < 2 {
            return Err(ScalarError::BadOrder(n));
        }
        Ok(Field::Cyclotomic(n))
    }

    pub fn has_symbol(self) -> bool {
        !matches!(self, Field::Rational)
    }

    pub fn zero(self) -> Scalar {
        Scalar { field: self, num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        Scalar::normalized(self, ZPoly::constant(BigInt::from(n)), ZPoly::one())
    }

    pub fn ratio(self, n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::normalized(self, ZPoly::constant(BigInt::from(n)), ZPoly::constant(BigInt::from(d)))
    }

    /// The deformation parameter `q`.
    pub fn q(self) -> Result<Scalar, ScalarError> {
        if !self.has_symbol() {
            return Err(ScalarError::NoSymbol(self));
        }
        Ok(Scalar::normalized(self, ZPoly::monomial(BigInt::one(), 1), ZPoly::one()))
    }

    /// Build `num/den` from integer polynomials in `q`.
    pub fn fraction(self, num: ZPoly, den: ZPoly) -> Result<Scalar, ScalarError> {
        if !self.has_symbol() && (!num.is_constant() || !den.is_constant()) {
            return Err(ScalarError::NoSymbol(self));
        }
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let s = Scalar::normalized(self, num, den);
        Ok(s)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::RationalQ => write!(f, "q"),
            Field::Cyclotomic(n) => write!(f, "cyclotomic:{n}"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" | "rationals" => Ok(Field::Rational),
            "q" | "rational_q" => Ok(Field::RationalQ),
            _ => {
                let n = s
                    .strip_prefix("cyclotomic:")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| ScalarError::Parse { pos: 0, msg: format!("unknown field `{s}`") })?;
                Field::cyclotomic(n)
            }
        }
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    num: ZPoly,
    den: ZPoly,
}

impl Scalar {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for nonzero integers times `q^0`, i.e. no `q` dependence.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    fn normalized(field: Field, num: ZPoly, den: ZPoly) -> Scalar {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return field.zero();
        }
        let (num, den) = match field {
            Field::Rational | Field::RationalQ => reduce_fraction(num, den),
            Field::Cyclotomic(n) => reduce_cyclotomic(n, num, den),
        };
        Scalar { field, num, den }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.den == other.den {
            return Ok(Scalar::normalized(self.field, self.num.add(&other.num), self.den.clone()));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Ok(Scalar::normalized(self.field, num, self.den.mul(&other.den)))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        Ok(Scalar::normalized(self.field, self.num.mul(&other.num), self.den.mul(&other.den)))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalized(self.field, self.den.clone(), self.num.clone()))
    }

    fn neg_ref(&self) -> Scalar {
        Scalar { field: self.field, num: self.num.neg(), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Reinterpret a `q`-free value in another field.
    pub fn to_field(&self, field: Field) -> Result<Scalar, ScalarError> {
        if self.field == field {
            return Ok(self.clone());
        }
        if !self.is_constant() {
            return Err(ScalarError::NoSymbol(field));
        }
        Ok(Scalar::normalized(field, self.num.clone(), self.den.clone()))
    }

    /// Substitute an integer for `q` (rational-function mode only); `None`
    /// if the denominator vanishes there.
    pub fn eval_at(&self, x: i64) -> Option<Scalar> {
        let x = BigInt::from(x);
        let d = self.den.eval_int(&x);
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval_int(&x);
        Some(Scalar::normalized(Field::Rational, ZPoly::constant(n), ZPoly::constant(d)))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(BigRational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn parse(field: Field, s: &str) -> Result<Scalar, ScalarError> {
        parse_scalar(field, s)
    }
}

fn reduce_fraction(num: ZPoly, den: ZPoly) -> (ZPoly, ZPoly) {
    let (mut num, mut den) = if den.is_constant() {
        (num, den)
    } else if den.term_count() == 1 {
        let k = den.low_degree().unwrap().min(num.low_degree().unwrap());
        (num.shift_down(k), den.shift_down(k))
    } else {
        let g = num.gcd(&den);
        if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        }
    };
    let mut c = num.content().gcd(&den.content());
    if den.lead().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        num = num.div_exact_int(&c);
        den = den.div_exact_int(&c);
    }
    (num, den)
}

fn reduce_cyclotomic(n: u32, num: ZPoly, den: ZPoly) -> (ZPoly, ZPoly) {
    let phi = ZPoly::cyclotomic(n);
    let num = num.rem_monic(&phi);
    let den = den.rem_monic(&phi);
    let (mut num, mut den) = if den.is_constant() {
        (num, den)
    } else {
        let (inv_num, inv_den) = cyclotomic_inverse(&den, &phi);
        (num.mul(&inv_num).rem_monic(&phi), inv_den)
    };
    if num.is_zero() {
        return (ZPoly::zero(), ZPoly::one());
    }
    let mut c = num.content().gcd(&den.content());
    if den.lead().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        num = num.div_exact_int(&c);
        den = den.div_exact_int(&c);
    }
    (num, den)
}

/// Inverse of `a` in `Q[q]/(m)` written as `p / d` with `p` integral and `d`
/// a positive integer. `a` must be coprime to `m`.
fn cyclotomic_inverse(a: &ZPoly, m: &ZPoly) -> (ZPoly, ZPoly) {
    type QP = Vec<BigRational>;
    fn trim(mut v: QP) -> QP {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    fn to_q(p: &ZPoly) -> QP {
        p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }
    fn sub_scaled(a: &QP, b: &QP, c: &BigRational, shift: usize) -> QP {
        let n = a.len().max(b.len() + shift);
        let mut v = vec![BigRational::zero(); n];
        for (k, x) in a.iter().enumerate() {
            v[k] += x;
        }
        for (k, x) in b.iter().enumerate() {
            v[k + shift] -= x * c;
        }
        trim(v)
    }
    fn mul(a: &QP, b: &QP) -> QP {
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
    fn divrem(a: &QP, b: &QP) -> (QP, QP) {
        let mut r = a.clone();
        let db = b.len() - 1;
        let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() / b.last().unwrap();
            r = sub_scaled(&r, b, &c, k);
            quot[k] = c;
        }
        (trim(quot), r)
    }
    // Extended Euclid tracking the cofactor of `a` only.
    let (mut r0, mut r1) = (to_q(m), to_q(a));
    let (mut s0, mut s1): (QP, QP) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (qt, r) = divrem(&r0, &r1);
        let s = {
            let prod = mul(&qt, &s1);
            sub_scaled(&s0, &prod, &BigRational::one(), 0)
        };
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(r0.len() == 1, "element is not invertible modulo the cyclotomic polynomial");
    let g = r0[0].clone();
    let inv: QP = s0.iter().map(|c| c / &g).collect();
    let mut d = BigInt::one();
    for c in &inv {
        d = d.lcm(c.denom());
    }
    let p = ZPoly::from_coeffs(inv.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect());
    (p, ZPoly::constant(d))
}

/// The four field operations as one entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// `1 + base + ... + base^(m-1)`.
pub fn q_int(m: u32, base: &Scalar) -> Scalar {
    let mut acc = base.field().zero();
    let mut p = base.field().one();
    for _ in 0..m {
        acc = &acc + &p;
        p = &p * base;
    }
    acc
}

/// `[m]!` in the given base.
pub fn q_factorial(m: u32, base: &Scalar) -> Scalar {
    (1..=m).fold(base.field().one(), |acc, k| &acc * &q_int(k, base))
}

/// Gaussian binomial `[m]!/([r]![m-r]!)`.
///
/// The product form is divided exactly in `Z[x]` and only then evaluated at
/// `base`, so specializations such as `base = 1` or roots of unity are safe.
pub fn q_binomial(m: u32, r: u32, base: &Scalar) -> Scalar {
    if r > m {
        return base.field().zero();
    }
    let geo = |k: u32| ZPoly::from_coeffs(vec![BigInt::one(); k as usize]);
    let mut num = ZPoly::one();
    let mut den = ZPoly::one();
    for k in 1..=r {
        num = num.mul(&geo(m - r + k));
        den = den.mul(&geo(k));
    }
    eval_poly(&num.div_exact(&den), base)
}

/// Evaluate an integer polynomial at a scalar.
pub fn eval_poly(p: &ZPoly, x: &Scalar) -> Scalar {
    let f = x.field();
    let mut acc = f.zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &Scalar::normalized(f, ZPoly::constant(c.clone()), ZPoly::one());
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let ns = self.num.to_string();
        if self.num.term_count() > 1 {
            write!(f, "({ns})")?;
        } else {
            write!(f, "{ns}")?;
        }
        let ds = self.den.to_string();
        let bare = self.den.term_count() == 1 && (self.den.is_constant() || self.den.lead().is_one());
        if bare {
            write!(f, "/{ds}")
        } else {
            write!(f, "/({ds})")
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
