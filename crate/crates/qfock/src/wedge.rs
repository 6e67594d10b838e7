//! The q-wedge quotient of the color-valued Laurent module: the Hecke
//! operator S on colors, the two-rule normal-ordering straightening, and the
//! quotient map from tensors to wedges.
//!
//! Basis vectors of V(z) are u_k = z^m v_e with k = e - n m, so a pure tensor
//! corresponds to a formal wedge of u_k's. Normally ordered wedges (strictly
//! decreasing k) form a basis of the quotient; every other wedge straightens
//! through the rules
//!
//!   u_l ^ u_m = -u_m ^ u_l                       (l = m mod n)
//!   u_l ^ u_m = -q u_m ^ u_l
//!     + (q^2-1)(u_{m-i} ^ u_{l+i} - q u_{m-n} ^ u_{l+n}
//!     + q^2 u_{m-n-i} ^ u_{l+n+i} + ...)         (l < m, m-l = i mod n, 0<i<n)
//!
//! where each correction series continues as long as its wedges are normally
//! ordered. The rules apply to adjacent slots of an N-fold wedge with all
//! other slots as passive spectators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckeContext;
use crate::laurent::{Exponents, LaurentPoly};
use crate::scalar::{ParameterSet, Scalar};

/// Decodes a wedge index k into (m, e) with k = e - n m, 1 <= e <= n.
pub fn decode_index(k: i64, ncolors: usize) -> (i64, u8) {
    let n = ncolors as i64;
    let mut e = k.rem_euclid(n);
    if e == 0 {
        e = n;
    }
    let m = (e - k) / n;
    (m, e as u8)
}

/// Encodes (m, e) into the wedge index k = e - n m.
pub fn encode_index(m: i64, e: u8, ncolors: usize) -> i64 {
    e as i64 - ncolors as i64 * m
}

/// An element of the tensor product C[z^+-] (x) (C^n)^(x) N: a sparse map
/// from (exponent vector, color word) to scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    nvars: usize,
    ncolors: usize,
    terms: BTreeMap<(Exponents, Vec<u8>), Scalar>,
}

impl TensorVector {
    pub fn zero(nvars: usize, ncolors: usize) -> Self {
        TensorVector {
            nvars,
            ncolors,
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(nvars: usize, ncolors: usize, exps: &[i64], colors: &[u8]) -> Self {
        let mut v = Self::zero(nvars, ncolors);
        v.add_term(exps.to_vec(), colors.to_vec(), &Scalar::one());
        v
    }

    /// f(z) (x) v_e for a polynomial f and a fixed color word.
    pub fn from_poly(poly: &LaurentPoly, colors: &[u8], ncolors: usize) -> Self {
        let mut v = Self::zero(poly.nvars(), ncolors);
        for (e, c) in poly.terms() {
            v.add_term(e.0.clone(), colors.to_vec(), c);
        }
        v
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ncolors(&self) -> usize {
        self.ncolors
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Exponents, Vec<u8>), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, colors: Vec<u8>, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars);
        debug_assert_eq!(colors.len(), self.nvars);
        debug_assert!(colors.iter().all(|&c| 1 <= c && c as usize <= self.ncolors));
        let key = (Exponents(exps), colors);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(en) => {
                en.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut en) => {
                *en.get_mut() += coeff;
                if en.get().is_zero() {
                    en.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for ((e, w), c) in other.terms() {
            out.add_term(e.0.clone(), w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.ncolors);
        }
        TensorVector {
            nvars: self.nvars,
            ncolors: self.ncolors,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.ncolors != other.ncolors {
            return Err(Error::DimensionMismatch(format!(
                "tensors of shape ({}, {}) and ({}, {})",
                self.nvars, self.ncolors, other.nvars, other.ncolors
            )));
        }
        Ok(())
    }

    /// Applies an operator on the polynomial factor, color word by color
    /// word, leaving the colors untouched.
    pub fn map_poly<F>(&self, mut op: F) -> Result<Self>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly>,
    {
        let mut grouped: BTreeMap<Vec<u8>, LaurentPoly> = BTreeMap::new();
        for ((e, w), c) in self.terms() {
            grouped
                .entry(w.clone())
                .or_insert_with(|| LaurentPoly::zero(self.nvars))
                .add_term(e.clone(), c);
        }
        let mut out = Self::zero(self.nvars, self.ncolors);
        for (w, poly) in grouped {
            let img = op(&poly)?;
            for (e, c) in img.terms() {
                out.add_term(e.0.clone(), w.clone(), c);
            }
        }
        Ok(out)
    }
}

/// An element of the q-wedge product: a sparse combination of normally
/// ordered wedges, indexed by strictly decreasing integer sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    width: usize,
    ncolors: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl WedgeVector {
    pub fn zero(width: usize, ncolors: usize) -> Self {
        WedgeVector {
            width,
            ncolors,
            terms: BTreeMap::new(),
        }
    }

    /// The basis wedge u_{k_1} ^ ... ^ u_{k_N} for strictly decreasing ks.
    pub fn basis(ks: &[i64], ncolors: usize) -> Result<Self> {
        if !ks.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(format!(
                "wedge index {ks:?} is not strictly decreasing"
            )));
        }
        let mut w = Self::zero(ks.len(), ncolors);
        w.add_term(ks.to_vec(), &Scalar::one());
        Ok(w)
    }

    /// The basis wedge labeled by a nondecreasing n-strict m-sequence and an
    /// admissible color word.
    pub fn from_m_e(m: &[i64], e: &[u8], ncolors: usize) -> Result<Self> {
        if m.len() != e.len() {
            return Err(Error::DimensionMismatch(
                "m and e sequences of different lengths".into(),
            ));
        }
        let ks: Vec<i64> = m
            .iter()
            .zip(e)
            .map(|(&mi, &ei)| encode_index(mi, ei, ncolors))
            .collect();
        Self::basis(&ks, ncolors)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ncolors(&self) -> usize {
        self.ncolors
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ks: &[i64]) -> Scalar {
        self.terms.get(ks).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, ks: Vec<i64>, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(ks.len(), self.width);
        debug_assert!(ks.windows(2).all(|w| w[0] > w[1]), "not normally ordered");
        match self.terms.entry(ks) {
            std::collections::btree_map::Entry::Vacant(en) => {
                en.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut en) => {
                *en.get_mut() += coeff;
                if en.get().is_zero() {
                    en.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.width != other.width || self.ncolors != other.ncolors {
            return Err(Error::DimensionMismatch(format!(
                "wedges of shape ({}, {}) and ({}, {})",
                self.width, self.ncolors, other.width, other.ncolors
            )));
        }
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.width, self.ncolors);
        }
        WedgeVector {
            width: self.width,
            ncolors: self.ncolors,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    /// Sparse coordinates for rank computations.
    pub fn coords(&self) -> BTreeMap<Vec<i64>, Scalar> {
        self.terms.clone()
    }
}

impl std::fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*u{k:?}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WedgeTermRepr {
    ks: Vec<i64>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct WedgeRepr {
    #[serde(rename = "N")]
    width: usize,
    n: usize,
    terms: Vec<WedgeTermRepr>,
}

impl Serialize for WedgeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WedgeRepr {
            width: self.width,
            n: self.ncolors,
            terms: self
                .terms()
                .map(|(k, c)| WedgeTermRepr {
                    ks: k.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WedgeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WedgeRepr::deserialize(d)?;
        let mut out = WedgeVector::zero(repr.width, repr.n);
        for t in repr.terms {
            if t.ks.len() != repr.width {
                return Err(serde::de::Error::custom("wedge index length mismatch"));
            }
            if !t.ks.windows(2).all(|w| w[0] > w[1]) {
                return Err(serde::de::Error::custom(
                    "wedge index is not strictly decreasing",
                ));
            }
            out.add_term(t.ks, &t.coeff);
        }
        Ok(out)
    }
}

/// The Hecke generator S on the colors at slots (i, i+1), or its inverse
/// S^{-1} = S - (q - q^{-1}) for sign = -1.
pub fn s_apply(params: &ParameterSet, i: usize, v: &TensorVector, sign: i8) -> Result<TensorVector> {
    if !(1..v.nvars()).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "S slot {i} with N = {}",
            v.nvars()
        )));
    }
    let q = params.q();
    let qq = params.q_minus_qinv();
    let mut out = TensorVector::zero(v.nvars(), v.ncolors());
    for ((e, w), c) in v.terms() {
        let a = w[i - 1];
        let b = w[i];
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => {
                out.add_term(e.0.clone(), w.clone(), &-(c * &q.pow(-1)));
            }
            std::cmp::Ordering::Less => {
                out.add_term(e.0.clone(), w.clone(), &(c * &qq));
                let mut sw = w.clone();
                sw.swap(i - 1, i);
                out.add_term(e.0.clone(), sw, &-c.clone());
            }
            std::cmp::Ordering::Greater => {
                let mut sw = w.clone();
                sw.swap(i - 1, i);
                out.add_term(e.0.clone(), sw, &-c.clone());
            }
        }
    }
    if sign == -1 {
        // the quadratic relation gives S^{-1} = S - (q - q^{-1}) I
        out = out.sub(&v.scale(&qq))?;
    }
    Ok(out)
}

/// g_{i,j} acting on the polynomial factor of a tensor, colors untouched.
pub fn tensor_g_apply(
    ctx: &HeckeContext,
    i: usize,
    j: usize,
    v: &TensorVector,
) -> Result<TensorVector> {
    v.map_poly(|f| ctx.g_apply(i, j, f))
}

/// Which adjacent disordered pair the straightening loop rewrites first.
/// Both strategies reach the same normal form; the second exists to test
/// confluence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// Rewrites a formal wedge (arbitrary integer index sequence) into the basis
/// of normally ordered wedges, using the two straightening rules on adjacent
/// slots until a fixed point is reached.
pub fn normal_order(params: &ParameterSet, ks: &[i64], ncolors: usize) -> WedgeVector {
    normal_order_with(params, ks, ncolors, RewriteStrategy::Leftmost)
}

/// [`normal_order`] with an explicit pair-selection strategy.
pub fn normal_order_with(
    params: &ParameterSet,
    ks: &[i64],
    ncolors: usize,
    strategy: RewriteStrategy,
) -> WedgeVector {
    let n = ncolors as i64;
    let q = params.q();
    let q2m1 = &params.q_pow(2) - &Scalar::one();
    let mut out = WedgeVector::zero(ks.len(), ncolors);
    // frontier keyed by sequence, so coefficients of identical intermediate
    // wedges combine instead of being rewritten independently
    let mut work: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
    work.insert(ks.to_vec(), Scalar::one());
    fn push(work: &mut BTreeMap<Vec<i64>, Scalar>, seq: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match work.entry(seq) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
    // each rewrite strictly shrinks a well-founded disorder measure; the fuel
    // bound turns a hypothetical violation into a loud failure
    let mut fuel: u64 = 50_000_000;
    while let Some((seq, coeff)) = work.pop_first() {
        fuel = fuel.checked_sub(1).expect("straightening did not terminate");
        let disordered = |w: &[i64]| w[0] <= w[1];
        let pos = match strategy {
            RewriteStrategy::Leftmost => seq.windows(2).position(disordered),
            RewriteStrategy::Rightmost => seq.windows(2).rposition(disordered),
        };
        let Some(t) = pos else {
            out.add_term(seq, &coeff);
            continue;
        };
        let l = seq[t];
        let m = seq[t + 1];
        if l == m {
            // u ^ u = 0
            continue;
        }
        let rem = (m - l).rem_euclid(n);
        let mut swapped = seq.clone();
        swapped.swap(t, t + 1);
        if rem == 0 {
            push(&mut work, swapped, -coeff);
        } else {
            push(&mut work, swapped, &coeff * &-q.clone());
            let series_coeff = &coeff * &q2m1;
            let mut step = 0i64;
            loop {
                let d = if step % 2 == 0 {
                    (step / 2) * n + rem
                } else {
                    ((step + 1) / 2) * n
                };
                let first = m - d;
                let second = l + d;
                if first <= second {
                    break;
                }
                let mut ns = seq.clone();
                ns[t] = first;
                ns[t + 1] = second;
                push(&mut work, ns, &series_coeff * &(-q.clone()).pow(step));
                step += 1;
            }
        }
    }
    out
}

/// The quotient map from tensors to wedges: each pure term z^m (x) v_e goes
/// to the formal wedge with k_i = e_i - n m_i, then normal-orders.
pub fn lambda_map(params: &ParameterSet, v: &TensorVector) -> WedgeVector {
    let mut out = WedgeVector::zero(v.nvars(), v.ncolors());
    for ((exps, colors), c) in v.terms() {
        let ks: Vec<i64> = exps
            .0
            .iter()
            .zip(colors)
            .map(|(&m, &e)| encode_index(m, e, v.ncolors()))
            .collect();
        let ordered = normal_order(params, &ks, v.ncolors());
        out = out.add(&ordered.scale(c)).expect("matching dimensions");
    }
    out
}

/// The pure-tensor section of the quotient map: each basis wedge lifts to
/// z^m (x) v_e. lambda_map after canonical_lift is the identity.
pub fn canonical_lift(w: &WedgeVector) -> TensorVector {
    let mut out = TensorVector::zero(w.width(), w.ncolors());
    for (ks, c) in w.terms() {
        let mut exps = Vec::with_capacity(ks.len());
        let mut colors = Vec::with_capacity(ks.len());
        for &k in ks {
            let (m, e) = decode_index(k, w.ncolors());
            exps.push(m);
            colors.push(e);
        }
        out.add_term(exps, colors, c);
    }
    out
}

/// Every normally ordered basis wedge of the given width whose decoded
/// m-entries all lie in [m_lo, m_hi].
pub fn wedge_basis_box(
    width: usize,
    ncolors: usize,
    m_lo: i64,
    m_hi: i64,
) -> Vec<WedgeVector> {
    use itertools::Itertools;
    let mut ks: Vec<i64> = (m_lo..=m_hi)
        .flat_map(|m| (1..=ncolors as i64).map(move |e| e - ncolors as i64 * m))
        .collect();
    ks.sort_unstable_by(|a, b| b.cmp(a));
    ks.into_iter()
        .combinations(width)
        .map(|c| WedgeVector::basis(&c, ncolors).expect("descending by construction"))
        .collect()
}

/// The Hecke generator of the alternative convention,
/// T_i = q K_{i,i+1} (g_{i,i+1} + S_{i,i+1}^{-1}) - I,
/// provided purely as a cross-check operator. It satisfies
/// T^2 = (q^2 - 1) T + q^2 and acts by -1 on Ker(g + S^{-1}).
pub fn kms_generator(ctx: &HeckeContext, i: usize, v: &TensorVector) -> Result<TensorVector> {
    let params = ctx.params();
    let g = tensor_g_apply(ctx, i, i + 1, v)?;
    let s_inv = s_apply(params, i, v, -1)?;
    let sum = g.add(&s_inv)?;
    let swapped = sum.map_poly(|f| f.swap_vars(i, i + 1))?;
    swapped.scale(params.q()).sub(v)
}
