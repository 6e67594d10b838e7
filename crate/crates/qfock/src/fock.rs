//! The semi-infinite side: vacuum sequences, the truncated subspaces of
//! finite wedge spaces, the projection that drops a trailing vacuum block,
//! stabilization, and the level-0 action with its commuting Hamiltonians on
//! the q-deformed Fock space.
//!
//! For a charge M with M = s mod n (0 <= s <= n-1) the vacuum of width
//! s + nr is u_M ^ u_{M-1} ^ ... ^ u_{M-(s+nr)+1}; its m-sequence starts
//! with s copies of m^0 = (s - M)/n and then full blocks of n equal values
//! increasing by one. A semi-infinite wedge of degree k is represented by
//! its minimal stabilized head, a wedge of width s + nk; widening (appending
//! the next vacuum block) and the projection are explicit operations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::decomp::{drinfeld_polys, enumerate_colors, h_eigenvalue, DrinfeldData, ModuleLabel};
use crate::error::{Error, Result};
use crate::hecke::HeckeContext;
use crate::linalg::sparse_rank;
use crate::qaffine::{act_wedge, hamiltonian_wedge, ActionFlavor, GeneratorName};
use crate::report::{RelationCheck, RelationReport};
use crate::scalar::{ParameterSet, Scalar};
use crate::wedge::{decode_index, WedgeVector};

/// A Fock-space charge sector: the integer M and the color count n, with the
/// derived residue s and base level m^0 = (s - M)/n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FockLabel {
    #[serde(rename = "M")]
    pub charge: i64,
    pub n: usize,
}

impl FockLabel {
    pub fn new(charge: i64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("need n >= 2 colors".into()));
        }
        Ok(FockLabel { charge, n })
    }

    /// s = M mod n with 0 <= s <= n-1.
    pub fn s(&self) -> usize {
        self.charge.rem_euclid(self.n as i64) as usize
    }

    /// m^0 = (s - M)/n, always an integer.
    pub fn m0_base(&self) -> i64 {
        (self.s() as i64 - self.charge) / self.n as i64
    }

    /// Width of the depth-r truncation, s + n r.
    pub fn width(&self, r: usize) -> usize {
        self.s() + self.n * r
    }

    /// Entry i (1-based) of the vacuum m-sequence.
    pub fn m0_entry(&self, i: usize) -> i64 {
        let s = self.s();
        if i <= s {
            self.m0_base()
        } else {
            self.m0_base() + ((i - s - 1) / self.n) as i64 + 1
        }
    }

    /// Entry i (1-based) of the vacuum color sequence.
    pub fn e0_entry(&self, i: usize) -> u8 {
        let s = self.s();
        if i <= s {
            (s - i + 1) as u8
        } else {
            (self.n - (i - s - 1) % self.n) as u8
        }
    }
}

/// A charge sector together with the parameters and a pool of Hecke
/// contexts, one per truncation width, so operator caches persist across the
/// whole computation.
pub struct FockSpace {
    label: FockLabel,
    params: ParameterSet,
    ctxs: Mutex<HashMap<usize, Arc<HeckeContext>>>,
}

impl FockSpace {
    pub fn new(charge: i64, n: usize, params: ParameterSet) -> Result<Self> {
        Ok(FockSpace {
            label: FockLabel::new(charge, n)?,
            params,
            ctxs: Mutex::new(HashMap::new()),
        })
    }

    pub fn label(&self) -> FockLabel {
        self.label
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn ncolors(&self) -> usize {
        self.label.n
    }

    /// The Hecke context at a given width, shared and cached.
    pub fn ctx(&self, width: usize) -> Arc<HeckeContext> {
        self.ctxs
            .lock()
            .unwrap()
            .entry(width)
            .or_insert_with(|| Arc::new(HeckeContext::new(width, self.params.clone())))
            .clone()
    }

    /// The vacuum wedge of depth r: u_M ^ u_{M-1} ^ ... down to width s + nr.
    pub fn vacuum_wedge(&self, r: usize) -> WedgeVector {
        let width = self.label.width(r);
        let ks: Vec<i64> = (0..width).map(|t| self.label.charge - t as i64).collect();
        WedgeVector::basis(&ks, self.label.n).expect("vacuum is strictly decreasing")
    }

    /// The degree sum_i (m^0_i - m_i) of a homogeneous vector in the charge
    /// sector. Errors on mixed degrees and on terms outside the truncated
    /// subspace (some m_i above the vacuum).
    pub fn degree(&self, w: &WedgeVector) -> Result<i64> {
        let mut deg: Option<i64> = None;
        for (ks, _) in w.terms() {
            let mut d = 0i64;
            for (t, &k) in ks.iter().enumerate() {
                let (m, _) = decode_index(k, self.label.n);
                let diff = self.label.m0_entry(t + 1) - m;
                if diff < 0 {
                    return Err(Error::InvalidParameter(format!(
                        "wedge {ks:?} exceeds the vacuum bound at slot {}",
                        t + 1
                    )));
                }
                d += diff;
            }
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::MixedDegree(format!(
                        "degrees {prev} and {d} in the same vector"
                    )));
                }
                _ => {}
            }
        }
        deg.ok_or_else(|| Error::MixedDegree("degree of the zero vector is undefined".into()))
    }

    /// The projection dropping the last vacuum block: a basis wedge of width
    /// s + nr + n maps to its width s + nr prefix when the last n entries
    /// match the vacuum values, and to zero otherwise.
    pub fn rho_project(&self, r: usize, w: &WedgeVector) -> Result<WedgeVector> {
        let wide = self.label.width(r + 1);
        let narrow = self.label.width(r);
        if w.width() != wide {
            return Err(Error::DimensionMismatch(format!(
                "rho at depth {r} expects width {wide}, got {}",
                w.width()
            )));
        }
        let vacuum_value = self.label.m0_base() + r as i64 + 1;
        let mut out = WedgeVector::zero(narrow, self.label.n);
        for (ks, c) in w.terms() {
            let tail_is_vacuum = ks[narrow..]
                .iter()
                .all(|&k| decode_index(k, self.label.n).0 == vacuum_value);
            if tail_is_vacuum {
                out.add_term(ks[..narrow].to_vec(), c);
            }
        }
        Ok(out)
    }

    /// Appends the next vacuum block, sending a width s + nr vector to width
    /// s + nr + n. Always well defined on the truncated subspace: the new
    /// indices sit strictly below every existing one.
    pub fn widen(&self, w: &WedgeVector) -> Result<WedgeVector> {
        let width = w.width();
        let s = self.label.s();
        if width < s || (width - s) % self.label.n != 0 {
            return Err(Error::DimensionMismatch(format!(
                "width {width} is not of the form s + nr"
            )));
        }
        let mut out = WedgeVector::zero(width + self.label.n, self.label.n);
        let first_new = self.label.charge - width as i64;
        for (ks, c) in w.terms() {
            let mut nks = ks.clone();
            for t in 0..self.label.n {
                nks.push(first_new - t as i64);
            }
            out.add_term(nks, c);
        }
        Ok(out)
    }

    /// All labels of wedges in the degree-k piece of the truncated subspace
    /// at depth r: nondecreasing n-strict sequences below the vacuum with
    /// total deficit k. Lexicographic order.
    pub fn graded_labels(&self, r: usize, k: i64) -> Vec<ModuleLabel> {
        let width = self.label.width(r);
        let mut out = Vec::new();
        let mut current: Vec<i64> = Vec::with_capacity(width);
        let label = self.label;
        fn rec(
            out: &mut Vec<ModuleLabel>,
            current: &mut Vec<i64>,
            label: &FockLabel,
            width: usize,
            remaining: i64,
        ) {
            let i = current.len();
            if i == width {
                if remaining == 0 {
                    if let Ok(l) = ModuleLabel::new(current.clone(), label.n) {
                        out.push(l);
                    }
                }
                return;
            }
            let hi = label.m0_entry(i + 1);
            let mut lo = hi - remaining;
            if let Some(&prev) = current.last() {
                lo = lo.max(prev);
            }
            for v in lo..=hi {
                let run = current.iter().rev().take_while(|&&x| x == v).count();
                if run >= label.n {
                    continue;
                }
                current.push(v);
                rec(out, current, label, width, remaining - (hi - v));
                current.pop();
            }
        }
        rec(&mut out, &mut current, &label, width, k);
        out
    }

    /// The monomial basis of the degree-k piece at depth r.
    pub fn graded_basis(&self, r: usize, k: i64) -> Vec<WedgeVector> {
        let mut out = Vec::new();
        for label in self.graded_labels(r, k) {
            for e in enumerate_colors(&label) {
                out.push(
                    WedgeVector::from_m_e(label.entries(), &e, self.label.n)
                        .expect("admissible (m, e) is normally ordered"),
                );
            }
        }
        out
    }

    /// g_l^(N) = h_l^(N) - h_l^(N)(m^0) I at the given width: the Hamiltonian
    /// renormalized by its vacuum eigenvalue.
    pub fn g_at_width(&self, l: i64, width: usize, w: &WedgeVector) -> Result<WedgeVector> {
        let ctx = self.ctx(width);
        let h = hamiltonian_wedge(&ctx, ActionFlavor::U0, l, w)?;
        h.sub(&w.scale(&self.vacuum_h_eigenvalue(l, width)))
    }

    /// h_l^(N)(m^0) = sum_j p^(l m^0_j) q^(2l(1-j)) over the first N slots.
    pub fn vacuum_h_eigenvalue(&self, l: i64, width: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for j in 1..=width {
            acc += &(&self.params.p_pow(l * self.label.m0_entry(j))
                * &self.params.q_pow(2 * l * (1 - j as i64)));
        }
        acc
    }

    /// Checks that the restriction of the projection to degree k is
    /// surjective, and bijective exactly when k <= r, by exhaustive graded
    /// basis enumeration.
    pub fn stabilization_check(&self, k: i64, r: usize) -> Result<StabilizationReport> {
        let source = self.graded_basis(r + 1, k);
        let target = self.graded_basis(r, k);
        let images: Vec<_> = source
            .iter()
            .map(|w| self.rho_project(r, w).map(|v| v.coords()))
            .collect::<Result<_>>()?;
        let rank = sparse_rank(images);
        Ok(StabilizationReport {
            degree: k,
            depth: r,
            source_dim: source.len(),
            target_dim: target.len(),
            rank,
            surjective: rank == target.len(),
            injective: rank == source.len(),
            expected_bijective: k <= r as i64,
        })
    }

    /// Builds the minimal stabilized representative of a semi-infinite
    /// wedge from its head. The head must be homogeneous, lie below the
    /// vacuum bound, and have width s + n k for its own degree k.
    pub fn stabilized(&self, head: WedgeVector) -> Result<SemiInfiniteWedge> {
        if head.is_zero() {
            return Err(Error::MixedDegree(
                "cannot infer the degree of a zero head".into(),
            ));
        }
        let k = self.degree(&head)?;
        let expected = self.label.width(k as usize);
        if head.width() != expected {
            return Err(Error::DimensionMismatch(format!(
                "degree {k} heads live at width {expected}, got {}",
                head.width()
            )));
        }
        Ok(SemiInfiniteWedge { degree: k, head })
    }

    /// The action of a generator on a semi-infinite wedge: act on the head
    /// at the minimal width and re-attach the vacuum tail. The action
    /// preserves both the degree and the truncated subspace; both are
    /// re-validated on the result.
    pub fn fock_act(&self, gen: GeneratorName, w: &SemiInfiniteWedge) -> Result<SemiInfiniteWedge> {
        let ctx = self.ctx(w.head.width());
        let head = act_wedge(&ctx, ActionFlavor::U0, gen, &w.head)?;
        if !head.is_zero() {
            let k = self.degree(&head)?;
            if k != w.degree {
                return Err(Error::MixedDegree(format!(
                    "generator changed the degree from {} to {k}",
                    w.degree
                )));
            }
        }
        Ok(SemiInfiniteWedge {
            degree: w.degree,
            head,
        })
    }

    /// The same action computed at depth k + extra: widen, act, and return
    /// the raw wide result. Projecting it back must agree with
    /// [`FockSpace::fock_act`]; this is the r-independence property.
    pub fn fock_act_widened(
        &self,
        gen: GeneratorName,
        w: &SemiInfiniteWedge,
        extra: usize,
    ) -> Result<WedgeVector> {
        let mut head = w.head.clone();
        for _ in 0..extra {
            head = self.widen(&head)?;
        }
        let ctx = self.ctx(head.width());
        act_wedge(&ctx, ActionFlavor::U0, gen, &head)
    }

    /// The commuting Hamiltonian g_l on a semi-infinite wedge.
    pub fn g_act(&self, l: i64, w: &SemiInfiniteWedge) -> Result<SemiInfiniteWedge> {
        let head = self.g_at_width(l, w.head.width(), &w.head)?;
        Ok(SemiInfiniteWedge {
            degree: w.degree,
            head,
        })
    }

    /// Verifies the intertwining of the projection with the generators and
    /// with the renormalized Hamiltonians on the full degree-k basis at
    /// depth r, and that the generators preserve Ker rho.
    pub fn intertwine_check(&self, k: i64, r: usize, ls: &[i64]) -> Result<RelationReport> {
        let n = self.label.n;
        let wide = self.label.width(r + 1);
        let narrow = self.label.width(r);
        let wide_ctx = self.ctx(wide);
        let narrow_ctx = self.ctx(narrow);
        let basis = self.graded_basis(r + 1, k);
        let mut report = RelationReport::new();
        for gen in GeneratorName::all(n) {
            let mut check = RelationCheck::pass(format!(
                "rho x^(w{wide}) = x^(w{narrow}) rho for {gen}, k = {k}"
            ));
            for w in &basis {
                let lhs = self.rho_project(r, &act_wedge(&wide_ctx, ActionFlavor::U0, gen, w)?)?;
                let rhs = act_wedge(
                    &narrow_ctx,
                    ActionFlavor::U0,
                    gen,
                    &self.rho_project(r, w)?,
                )?;
                if lhs != rhs {
                    check = RelationCheck::fail(
                        format!("rho x^(w{wide}) = x^(w{narrow}) rho for {gen}, k = {k}"),
                        format!("input {w}: lhs {lhs}, rhs {rhs}"),
                    );
                    break;
                }
            }
            report.push(check);
        }
        for &l in ls {
            let mut check = RelationCheck::pass(format!(
                "rho g_{l}^(w{wide}) = g_{l}^(w{narrow}) rho, k = {k}"
            ));
            for w in &basis {
                let lhs = self.rho_project(r, &self.g_at_width(l, wide, w)?)?;
                let rhs = self.g_at_width(l, narrow, &self.rho_project(r, w)?)?;
                if lhs != rhs {
                    check = RelationCheck::fail(
                        format!("rho g_{l}^(w{wide}) = g_{l}^(w{narrow}) rho, k = {k}"),
                        format!("input {w}: lhs {lhs}, rhs {rhs}"),
                    );
                    break;
                }
            }
            report.push(check);
        }
        // generators keep the kernel of rho inside itself
        let mut check = RelationCheck::pass(format!("U_0 preserves Ker rho, k = {k}, r = {r}"));
        'outer: for w in &basis {
            if !self.rho_project(r, w)?.is_zero() {
                continue;
            }
            for gen in GeneratorName::all(n) {
                let img = act_wedge(&wide_ctx, ActionFlavor::U0, gen, w)?;
                if !self.rho_project(r, &img)?.is_zero() {
                    check = RelationCheck::fail(
                        format!("U_0 preserves Ker rho, k = {k}, r = {r}"),
                        format!("{gen} on {w} leaves the kernel"),
                    );
                    break 'outer;
                }
            }
        }
        report.push(check);
        Ok(report)
    }

    /// Counts normally ordered semi-infinite wedges of degree k by direct
    /// enumeration of strictly decreasing index sequences in the stabilized
    /// window. Serves as the independent oracle for the block dimensions.
    pub fn count_semiinfinite_wedges(&self, k: i64) -> usize {
        use itertools::Itertools;
        if k < 0 {
            return 0;
        }
        if k == 0 && self.label.width(0) == 0 {
            return 1;
        }
        let width = self.label.width(k as usize);
        let n = self.label.n as i64;
        // any entry of a degree-k wedge satisfies m_i >= m^0_i - k, so the
        // indices live in a finite window above the vacuum continuation
        let k_min = self.label.charge - width as i64 + 1;
        let k_max = n * (1 + k - self.label.m0_entry(1));
        if k_max < k_min {
            return 0;
        }
        let pool: Vec<i64> = (k_min..=k_max).rev().collect();
        let mut count = 0usize;
        for combo in pool.into_iter().combinations(width) {
            let deficit: i64 = combo
                .iter()
                .enumerate()
                .map(|(t, &kk)| self.label.m0_entry(t + 1) - decode_index(kk, self.label.n).0)
                .sum();
            let below = combo
                .iter()
                .enumerate()
                .all(|(t, &kk)| decode_index(kk, self.label.n).0 <= self.label.m0_entry(t + 1));
            if below && deficit == k {
                count += 1;
            }
        }
        count
    }

    /// The decomposition of the degree-k piece into irreducible blocks, one
    /// per n-strict lowering of the vacuum sequence, with Drinfeld
    /// polynomials and Hamiltonian eigenvalues. The phi bases are computed
    /// only when `with_basis` is set.
    pub fn decompose(&self, k: i64, ls: &[i64], with_basis: bool) -> Result<Vec<FockBlock>> {
        let width = self.label.width(k.max(0) as usize);
        let ctx = self.ctx(width);
        let mut out = Vec::new();
        for label in self.graded_labels(k.max(0) as usize, k) {
            let dim = label.dimension();
            let drinfeld = drinfeld_polys(&self.params, &label);
            let g_eigenvalues: Vec<(i64, Scalar)> = ls
                .iter()
                .map(|&l| {
                    (
                        l,
                        &h_eigenvalue(&self.params, label.entries(), l)
                            - &self.vacuum_h_eigenvalue(l, width),
                    )
                })
                .collect();
            let basis = if with_basis {
                let mut b = Vec::with_capacity(dim);
                for e in enumerate_colors(&label) {
                    b.push(crate::decomp::phi_vector(&ctx, &label, &e)?);
                }
                Some(b)
            } else {
                None
            };
            out.push(FockBlock {
                m_head: label.entries().to_vec(),
                norm: k,
                dim,
                drinfeld,
                g_eigenvalues,
                basis,
            });
        }
        Ok(out)
    }
}

/// A homogeneous degree-k vector of the Fock space, stored as its minimal
/// stabilized head of width s + nk; the tail is the vacuum continuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiInfiniteWedge {
    degree: i64,
    head: WedgeVector,
}

impl SemiInfiniteWedge {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn head(&self) -> &WedgeVector {
        &self.head
    }
}

/// Outcome of one stabilization check.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub degree: i64,
    pub depth: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub surjective: bool,
    pub injective: bool,
    pub expected_bijective: bool,
}

impl StabilizationReport {
    /// Surjective always; bijective exactly when k <= r.
    pub fn as_expected(&self) -> bool {
        self.surjective && (self.injective == self.expected_bijective)
    }
}

/// One irreducible block of the degree-k piece of the Fock space.
#[derive(Clone, Debug, Serialize)]
pub struct FockBlock {
    pub m_head: Vec<i64>,
    pub norm: i64,
    pub dim: usize,
    pub drinfeld: DrinfeldData,
    pub g_eigenvalues: Vec<(i64, Scalar)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<WedgeVector>>,
}
