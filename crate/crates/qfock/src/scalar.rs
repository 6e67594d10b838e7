//! Exact scalar arithmetic over the rationals, with the distinguished
//! parameters (q, p) and the bounded genericity check.
//!
//! Every identity handled by this crate is an identity of rational functions
//! in q and p, so checking it at a generic rational specialization in exact
//! arithmetic is sound evidence. The default specialization is q = 4/3,
//! p = 5/7. A symbolic rational-function field is deliberately not provided.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational scalar, always kept in canonical form
/// (reduced fraction, positive denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// Builds `num/den`. Panics on a zero denominator; that is a programming
    /// error, not an input condition.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "Scalar::ratio: zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    /// Integer power with a signed exponent. Panics when raising zero to a
    /// negative power.
    pub fn pow(&self, exp: i64) -> Scalar {
        if exp == 0 {
            return Scalar::one();
        }
        let base = if exp > 0 {
            self.0.clone()
        } else {
            assert!(!self.is_zero(), "Scalar::pow: zero base, negative exponent");
            self.0.recip()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = BigRational::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Scalar(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"a/b"` or a bare integer `"a"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n =
            BigInt::from_str(numer).map_err(|_| Error::Parse(format!("bad numerator {numer:?}")))?;
        let d = BigInt::from_str(denom)
            .map_err(|_| Error::Parse(format!("bad denominator {denom:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::from_str(&s).map_err(de::Error::custom)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "Scalar division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "Scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

/// Outcome of the bounded genericity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    /// True when no obstruction was found up to the bound.
    pub generic: bool,
    /// Set when q = 1; this specialization is explicitly permitted.
    pub q_is_one: bool,
    /// The obstruction found, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// The bound up to which the membership conditions were searched.
    pub bound: u32,
}

/// Checks that q is not a root of unity (q = 1 permitted, flagged) and that
/// p avoids q^(2a/b) for exponents up to the bound.
///
/// The full condition "p not in q^(2Q>=0)" is undecidable for arbitrary
/// rationals; this search over 1 <= b <= bound, 0 <= a <= bound is a
/// documented finite approximation, and the bound is recorded in the report.
pub fn check_genericity(q: &Scalar, p: &Scalar, bound: u32) -> Result<GenericityReport> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    if p.is_zero() {
        return Err(Error::InvalidParameter("p must be nonzero".into()));
    }
    if bound == 0 {
        return Err(Error::InvalidParameter("bound must be positive".into()));
    }
    let q_is_one = q.is_one();
    if !q_is_one {
        // For rationals only +-1 can be roots of unity, but run the literal
        // search so the report matches the stated condition.
        let mut pw = q.clone();
        for k in 1..=bound {
            if pw.is_one() {
                return Ok(GenericityReport {
                    generic: false,
                    q_is_one: false,
                    witness: Some(format!("q^{k} = 1")),
                    bound,
                });
            }
            if k < bound {
                pw = pw * q;
            }
        }
    }
    let q2 = q * q;
    for b in 1..=bound {
        let pb = p.pow(b as i64);
        let mut q2a = Scalar::one();
        for a in 0..=bound {
            if pb == q2a {
                return Ok(GenericityReport {
                    generic: false,
                    q_is_one,
                    witness: Some(format!("p^{b} = q^{}", 2 * a)),
                    bound,
                });
            }
            if a < bound {
                q2a = q2a * &q2;
            }
        }
    }
    Ok(GenericityReport {
        generic: true,
        q_is_one,
        witness: None,
        bound,
    })
}

/// The working parameters of every context: q, p, and the genericity bound.
///
/// Construction validates the parameters with [`check_genericity`] unless
/// q = 1, which is explicitly permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSet {
    q: Scalar,
    p: Scalar,
    genericity_bound: u32,
    q_is_one: bool,
}

impl ParameterSet {
    pub const DEFAULT_BOUND: u32 = 50;

    pub fn new(q: Scalar, p: Scalar, genericity_bound: u32) -> Result<Self> {
        let report = check_genericity(&q, &p, genericity_bound)?;
        if !report.generic && !report.q_is_one {
            return Err(Error::Degeneracy(format!(
                "parameters fail the genericity check: {}",
                report.witness.unwrap_or_default()
            )));
        }
        Ok(ParameterSet {
            q,
            p,
            genericity_bound,
            q_is_one: report.q_is_one,
        })
    }

    /// The default generic specialization q = 4/3, p = 5/7, bound 50.
    pub fn standard() -> Self {
        ParameterSet::new(Scalar::ratio(4, 3), Scalar::ratio(5, 7), Self::DEFAULT_BOUND)
            .expect("default parameters are generic")
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }

    pub fn genericity_bound(&self) -> u32 {
        self.genericity_bound
    }

    pub fn q_is_one(&self) -> bool {
        self.q_is_one
    }

    pub fn q_pow(&self, e: i64) -> Scalar {
        self.q.pow(e)
    }

    pub fn p_pow(&self, e: i64) -> Scalar {
        self.p.pow(e)
    }

    /// q - q^{-1}, the ubiquitous Hecke constant.
    pub fn q_minus_qinv(&self) -> Scalar {
        &self.q - &self.q.pow(-1)
    }
}
