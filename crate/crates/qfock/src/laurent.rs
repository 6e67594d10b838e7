//! Sparse multivariate Laurent polynomials in z_1, ..., z_N and the
//! elementary variable operators: the exchange K_{i,j} and the dilation
//! s^{D_i} that rescales z_i by s.
//!
//! Terms are kept in a canonical sparse map with no stored zero
//! coefficients, ordered by total degree and then lexicographically, so
//! serialized output is byte-stable. The variable count N travels with every
//! polynomial; mixing different N is an error, never an implicit embedding.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The exponent vector of a monomial z^lambda.
///
/// Ordering is graded (total degree first) and then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponents(pub Vec<i64>);

impl Exponents {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse Laurent polynomial in z_1, ..., z_N over exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, &vec![0; nvars], Scalar::one())
    }

    /// The single term c * z^exps. A zero coefficient gives the zero polynomial.
    pub fn monomial(nvars: usize, exps: &[i64], coeff: Scalar) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Exponents(exps.to_vec()), coeff);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable z_i (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        Self::monomial(nvars, &exps, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(nvars, &vec![0; nvars], c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Scalar {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars);
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exps: Vec<i64> = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                out.add_term(Exponents(exps), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Multiplication by the single monomial c * z^exps.
    pub fn mul_monomial(&self, exps: &[i64], c: &Scalar) -> Self {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let ne: Vec<i64> = e.0.iter().zip(exps).map(|(a, b)| a + b).collect();
                    (Exponents(ne), v * c)
                })
                .collect(),
        }
    }

    /// The variable exchange K_{i,j}: swaps the exponents of z_i and z_j in
    /// every term. Indices are 1-based.
    pub fn swap_vars(&self, i: usize, j: usize) -> Result<Self> {
        let (i, j) = self.check_pair(i, j)?;
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            let mut ne = e.0.clone();
            ne.swap(i - 1, j - 1);
            out.add_term(Exponents(ne), c);
        }
        Ok(out)
    }

    /// The dilation s^{D_i}: every term z^lambda acquires the factor
    /// s^(lambda_i). Errors on s = 0.
    pub fn dilate(&self, i: usize, s: &Scalar) -> Result<Self> {
        if !(1..=self.nvars).contains(&i) {
            return Err(Error::IndexOutOfRange(format!(
                "dilate index {i} with {} variables",
                self.nvars
            )));
        }
        if s.is_zero() {
            return Err(Error::InvalidParameter("dilation scale must be nonzero".into()));
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), &(c * &s.pow(e.0[i - 1])));
        }
        Ok(out)
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        if i == j || !(1..=self.nvars).contains(&i) || !(1..=self.nvars).contains(&j) {
            return Err(Error::IndexOutOfRange(format!(
                "variable pair ({i}, {j}) with {} variables",
                self.nvars
            )));
        }
        Ok((i, j))
    }

    /// Exact division by (z_i - z_j). Returns `Error::ExactDivision` when the
    /// remainder is nonzero; for the operators in this crate that can only
    /// happen through an arithmetic bug, never through valid input.
    pub fn div_exact_zi_minus_zj(&self, i: usize, j: usize) -> Result<Self> {
        let (i, j) = self.check_pair(i, j)?;
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Treat the polynomial as a univariate polynomial in z_i whose
        // coefficients are Laurent polynomials in the remaining variables.
        // Shift by z_i^(-lo) so exponents of z_i are nonnegative, divide with
        // the synthetic recurrence v_(d-1) = u_d + z_j * v_d, and shift back.
        let lo = self
            .terms
            .keys()
            .map(|e| e.0[i - 1])
            .min()
            .expect("nonzero polynomial");
        let hi = self
            .terms
            .keys()
            .map(|e| e.0[i - 1])
            .max()
            .expect("nonzero polynomial");
        // Coefficient layers of z_i^d for d in lo..=hi, as polynomials with
        // the z_i exponent zeroed out.
        let span = (hi - lo + 1) as usize;
        let mut layers: Vec<LaurentPoly> = vec![Self::zero(self.nvars); span];
        for (e, c) in self.terms() {
            let d = (e.0[i - 1] - lo) as usize;
            let mut ne = e.0.clone();
            ne[i - 1] = 0;
            layers[d].add_term(Exponents(ne), c);
        }
        let zj = Self::var(self.nvars, j);
        let mut quotient_layers: Vec<LaurentPoly> = vec![Self::zero(self.nvars); span];
        let mut carry = Self::zero(self.nvars);
        for d in (0..span).rev() {
            // carry holds v_d; v_(d-1) = u_d + z_j * v_d
            let v = layers[d].add(&carry.mul(&zj)?)?;
            if d == 0 {
                if !v.is_zero() {
                    return Err(Error::ExactDivision(format!(
                        "nonzero remainder dividing by z_{i} - z_{j}"
                    )));
                }
            } else {
                quotient_layers[d - 1] = v.clone();
                carry = v;
            }
        }
        let mut out = Self::zero(self.nvars);
        for (d, layer) in quotient_layers.iter().enumerate() {
            for (e, c) in layer.terms() {
                let mut ne = e.0.clone();
                ne[i - 1] = d as i64 + lo;
                out.add_term(Exponents(ne), c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*z^{:?}", e.0)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<i64>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    exps: e.0.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero(repr.nvars);
        for t in repr.terms {
            if t.exps.len() != repr.nvars {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            out.add_term(Exponents(t.exps), &t.coeff);
        }
        Ok(out)
    }
}
