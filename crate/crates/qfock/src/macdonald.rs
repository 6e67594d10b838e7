//! The dominance order on compositions, the eigenvalues zeta_i, and the
//! nonsymmetric Macdonald polynomials: the joint eigenfunctions of the
//! Cherednik operators, unitriangular in the monomial basis.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckeContext;
use crate::laurent::LaurentPoly;
use crate::scalar::{ParameterSet, Scalar};

/// An integer composition lambda together with its sorted partition
/// lambda^+ (weakly decreasing) and the staircase permutation sigma.
///
/// sigma is the unique permutation with lambda^+_(sigma(i)) = lambda_i and
/// sigma(i) < sigma(j) whenever i < j and lambda_i = lambda_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    entries: Vec<i64>,
    sorted_desc: Vec<i64>,
    sigma: Vec<usize>,
}

impl Composition {
    pub fn new(entries: Vec<i64>) -> Self {
        let n = entries.len();
        let mut idx: Vec<usize> = (0..n).collect();
        // sort by value descending, ties by original index ascending
        idx.sort_by(|&a, &b| entries[b].cmp(&entries[a]).then(a.cmp(&b)));
        let sorted_desc: Vec<i64> = idx.iter().map(|&i| entries[i]).collect();
        let mut sigma = vec![0usize; n];
        for (pos, &orig) in idx.iter().enumerate() {
            sigma[orig] = pos + 1;
        }
        Composition {
            entries,
            sorted_desc,
            sigma,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn sorted_desc(&self) -> &[i64] {
        &self.sorted_desc
    }

    /// sigma(i), 1-based.
    pub fn sigma(&self, i: usize) -> usize {
        self.sigma[i - 1]
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// The transposed composition (i, i+1) lambda.
    pub fn swap_adjacent(&self, i: usize) -> Composition {
        let mut e = self.entries.clone();
        e.swap(i - 1, i);
        Composition::new(e)
    }
}

impl Serialize for Composition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Composition::new(Vec::<i64>::deserialize(d)?))
    }
}

/// Outcome of a dominance comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

fn prefix_sums(sorted_desc: &[i64]) -> Vec<i64> {
    let mut acc = 0;
    sorted_desc
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect()
}

/// Compares two compositions in the dominance order: partition dominance on
/// the sorted rearrangements, refined within a rearrangement class by the
/// sign of the last nonzero entry of the difference (negative means larger).
pub fn dominance_cmp(a: &Composition, b: &Composition) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "compositions of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.total() != b.total() {
        return Ok(Dominance::Incomparable);
    }
    let pa = prefix_sums(a.sorted_desc());
    let pb = prefix_sums(b.sorted_desc());
    let mut some_greater = false;
    let mut some_less = false;
    for (x, y) in pa.iter().zip(&pb) {
        match x.cmp(y) {
            Ordering::Greater => some_greater = true,
            Ordering::Less => some_less = true,
            Ordering::Equal => {}
        }
    }
    match (some_greater, some_less) {
        (true, true) => Ok(Dominance::Incomparable),
        (true, false) => Ok(Dominance::Greater),
        (false, true) => Ok(Dominance::Less),
        (false, false) => {
            // same partition: the last nonzero difference decides
            for k in (0..a.len()).rev() {
                match (a.entries()[k] - b.entries()[k]).cmp(&0) {
                    Ordering::Less => return Ok(Dominance::Greater),
                    Ordering::Greater => return Ok(Dominance::Less),
                    Ordering::Equal => {}
                }
            }
            Ok(Dominance::Equal)
        }
    }
}

/// A deterministic total order refining dominance, used to process basis
/// monomials from the top down: higher prefix sums first, then reversed
/// entries ascending (which matches the tie-break within a rearrangement
/// class).
pub fn dominance_sort_desc(items: &mut [Composition]) {
    items.sort_by(|x, y| {
        let px = prefix_sums(x.sorted_desc());
        let py = prefix_sums(y.sorted_desc());
        py.cmp(&px).then_with(|| {
            let rx: Vec<i64> = x.entries().iter().rev().cloned().collect();
            let ry: Vec<i64> = y.entries().iter().rev().cloned().collect();
            rx.cmp(&ry)
        })
    });
}

/// The eigenvalue zeta_i(lambda) = p^(lambda_i) q^(2 sigma(i) - N - 1).
pub fn zeta(params: &ParameterSet, lambda: &Composition, i: usize) -> Scalar {
    assert!((1..=lambda.len()).contains(&i), "zeta index out of range");
    let n = lambda.len() as i64;
    &params.p_pow(lambda.entries()[i - 1]) * &params.q_pow(2 * lambda.sigma(i) as i64 - n - 1)
}

/// All compositions mu with mu <= lambda in dominance and the same total
/// degree. Finite: dominated entries are boxed between the smallest and
/// largest part of lambda^+.
pub fn lower_set(lambda: &Composition) -> Vec<Composition> {
    let n = lambda.len();
    if n == 0 {
        return vec![lambda.clone()];
    }
    let hi = lambda.sorted_desc()[0];
    let lo = lambda.sorted_desc()[n - 1];
    let total = lambda.total();
    let mut out = Vec::new();
    let mut current = vec![lo; n];
    // enumerate the box [lo, hi]^n, filter by sum and dominance
    loop {
        if current.iter().sum::<i64>() == total {
            let cand = Composition::new(current.clone());
            match dominance_cmp(&cand, lambda).expect("equal lengths") {
                Dominance::Less | Dominance::Equal => out.push(cand),
                _ => {}
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                dominance_sort_desc(&mut out);
                return out;
            }
            if current[pos] < hi {
                current[pos] += 1;
                break;
            }
            current[pos] = lo;
            pos += 1;
        }
    }
}

/// A nonsymmetric Macdonald polynomial: the unique joint Y-eigenfunction
/// equal to z^lambda plus dominance-lower terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MacdonaldPoly {
    pub label: Composition,
    pub poly: LaurentPoly,
}

/// Computes Phi^lambda by an exact triangular solve over the dominance lower
/// set of lambda. Any eigenvalue collision is reported as a parameter
/// degeneracy rather than silently perturbed. Results are memoized in the
/// context cache.
pub fn macdonald_poly(ctx: &HeckeContext, lambda: &Composition) -> Result<MacdonaldPoly> {
    if lambda.len() != ctx.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "composition of length {} in a context with N = {}",
            lambda.len(),
            ctx.nvars()
        )));
    }
    if let Some(hit) = ctx
        .macdonald_cache
        .lock()
        .unwrap()
        .get(lambda.entries())
        .cloned()
    {
        return Ok(MacdonaldPoly {
            label: lambda.clone(),
            poly: hit,
        });
    }
    let params = ctx.params();
    let n = lambda.len();
    let basis = lower_set(lambda);
    debug_assert_eq!(basis[0].entries(), lambda.entries());
    let zeta_top: Vec<Scalar> = (1..=n).map(|i| zeta(params, lambda, i)).collect();

    // coefficients in processing order; basis[0] = lambda itself
    let mut coeffs: Vec<Scalar> = Vec::with_capacity(basis.len());
    coeffs.push(Scalar::one());
    // cached Y_i images of the processed monomials, computed lazily per i
    let mut images: Vec<Vec<Option<LaurentPoly>>> = vec![vec![None; n]; basis.len()];

    for idx in 1..basis.len() {
        let mu = &basis[idx];
        let pivot_i = (1..=n).find(|&i| zeta(params, mu, i) != zeta_top[i - 1]);
        let Some(i) = pivot_i else {
            return Err(Error::Degeneracy(format!(
                "eigenvalue collision between {:?} and {:?}",
                lambda.entries(),
                mu.entries()
            )));
        };
        let mut numer = Scalar::zero();
        for prev in 0..idx {
            if images[prev][i - 1].is_none() {
                let mono = LaurentPoly::monomial(n, basis[prev].entries(), Scalar::one());
                images[prev][i - 1] = Some(ctx.y_apply(i, 1, &mono)?);
            }
            let img = images[prev][i - 1].as_ref().unwrap();
            let contrib = img.coeff(mu.entries());
            if !contrib.is_zero() {
                numer += &(&coeffs[prev] * &contrib);
            }
        }
        let denom = &zeta_top[i - 1] - &zeta(params, mu, i);
        coeffs.push(&numer / &denom);
    }

    let mut poly = LaurentPoly::zero(n);
    for (mu, c) in basis.iter().zip(&coeffs) {
        poly = poly.add(&LaurentPoly::monomial(n, mu.entries(), c.clone()))?;
    }

    // verify the joint eigenvector property for every i; at generic
    // parameters this always holds, so a failure means degeneracy
    for i in 1..=n {
        let img = ctx.y_apply(i, 1, &poly)?;
        if img != poly.scale(&zeta_top[i - 1]) {
            return Err(Error::Degeneracy(format!(
                "Y_{i} eigenvector verification failed for {:?}",
                lambda.entries()
            )));
        }
    }

    ctx.macdonald_cache
        .lock()
        .unwrap()
        .insert(lambda.entries().to_vec(), poly.clone());
    Ok(MacdonaldPoly {
        label: lambda.clone(),
        poly,
    })
}

/// The coefficients (A_i, B_i) of the Hecke action
/// g_{i,i+1} Phi^lambda = A_i Phi^lambda + B_i Phi^{(i,i+1) lambda},
/// with x = zeta_{i+1}(lambda)/zeta_i(lambda) and
/// {x} = (x - q^2)(q^2 x - 1)/(x - 1)^2.
pub fn hecke_coeffs(
    params: &ParameterSet,
    lambda: &Composition,
    i: usize,
) -> Result<(Scalar, Scalar)> {
    if !(1..lambda.len()).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "hecke_coeffs index {i} for length {}",
            lambda.len()
        )));
    }
    let q = params.q();
    let li = lambda.entries()[i - 1];
    let li1 = lambda.entries()[i];
    if li == li1 {
        // x = q^2, so A_i = q and the second term drops out
        return Ok((q.clone(), Scalar::zero()));
    }
    let x = &zeta(params, lambda, i + 1) / &zeta(params, lambda, i);
    let xm1 = &x - &Scalar::one();
    if xm1.is_zero() {
        return Err(Error::Degeneracy(format!(
            "zeta ratio 1 at sites ({i}, {}) of {:?}",
            i + 1,
            lambda.entries()
        )));
    }
    let a = &(&params.q_minus_qinv() * &x) / &xm1;
    let b = if li < li1 {
        params.q_pow(-1)
    } else {
        let q2 = params.q_pow(2);
        let braces = &(&(&x - &q2) * &(&(&q2 * &x) - &Scalar::one())) / &(&xm1 * &xm1);
        &params.q_pow(-1) * &braces
    };
    Ok((a, b))
}

/// Derives Phi^{(i,i+1) lambda} from Phi^lambda through the Hecke action.
/// This degree-preserving recursion only reaches the orbit of lambda under
/// the symmetric group; it is kept as a cross-check of [`macdonald_poly`].
pub fn hecke_step(ctx: &HeckeContext, phi: &MacdonaldPoly, i: usize) -> Result<MacdonaldPoly> {
    let lambda = &phi.label;
    let (a, b) = hecke_coeffs(ctx.params(), lambda, i)?;
    if b.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "hecke_step requires lambda_{i} != lambda_{}",
            i + 1
        )));
    }
    let g_phi = ctx.g_apply(i, i + 1, &phi.poly)?;
    let poly = g_phi.sub(&phi.poly.scale(&a))?.scale(&b.inv().unwrap());
    Ok(MacdonaldPoly {
        label: lambda.swap_adjacent(i),
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::monomial_box;

    fn params() -> ParameterSet {
        ParameterSet::standard()
    }

    fn comp(e: &[i64]) -> Composition {
        Composition::new(e.to_vec())
    }

    #[test]
    fn dominance_tie_break() {
        // (0,1) < (1,0): the difference (-1, 1) has a positive last nonzero
        assert_eq!(
            dominance_cmp(&comp(&[0, 1]), &comp(&[1, 0])).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance_cmp(&comp(&[1, 1]), &comp(&[2, 0])).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance_cmp(&comp(&[1, 0]), &comp(&[1, 0])).unwrap(),
            Dominance::Equal
        );
        assert_eq!(
            dominance_cmp(&comp(&[1, 0]), &comp(&[0, 2])).unwrap(),
            Dominance::Incomparable
        );
        assert!(dominance_cmp(&comp(&[1]), &comp(&[1, 0])).is_err());
    }

    #[test]
    fn dominance_is_transitive_on_a_box() {
        let mut all = Vec::new();
        for f in monomial_box(3, -1, 1) {
            let (e, _) = f.terms().next().unwrap();
            all.push(comp(&e.0));
        }
        for a in &all {
            for b in &all {
                for c in &all {
                    let ab = dominance_cmp(a, b).unwrap();
                    let bc = dominance_cmp(b, c).unwrap();
                    if ab == Dominance::Less && bc == Dominance::Less {
                        assert_eq!(dominance_cmp(a, c).unwrap(), Dominance::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_convention() {
        // no ties: sigma is the position in the sorted-descending list
        let c = comp(&[1, 0]);
        assert_eq!((c.sigma(1), c.sigma(2)), (1, 2));
        let c = comp(&[0, 1]);
        assert_eq!((c.sigma(1), c.sigma(2)), (2, 1));
        // ties broken by increasing original index
        let c = comp(&[0, 0, 1]);
        assert_eq!((c.sigma(1), c.sigma(2), c.sigma(3)), (2, 3, 1));
    }

    #[test]
    fn zeta_constant_composition() {
        let pr = params();
        for n in 1..=4usize {
            let lam = comp(&vec![0; n]);
            for i in 1..=n {
                assert_eq!(
                    zeta(&pr, &lam, i),
                    pr.q_pow(2 * i as i64 - n as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn zeta_matches_the_operator_diagonal() {
        // zeta_i(lambda) must be the diagonal coefficient of Y_i on z^lambda;
        // this pins the sigma convention against the actual operators
        let ctx = HeckeContext::new(2, params());
        let pr = params();
        for lam in [comp(&[1, 0]), comp(&[0, 1]), comp(&[2, -1])] {
            for i in 1..=2 {
                let f = LaurentPoly::monomial(2, lam.entries(), Scalar::one());
                let img = ctx.y_apply(i, 1, &f).unwrap();
                assert_eq!(
                    img.coeff(lam.entries()),
                    zeta(&pr, &lam, i),
                    "lambda {:?} i {i}",
                    lam.entries()
                );
            }
        }
        // frozen values at the paper's convention: sigma((1,0)) = id
        let pq = |a: i64, b: i64| &pr.p_pow(a) * &pr.q_pow(b);
        assert_eq!(zeta(&pr, &comp(&[1, 0]), 1), pq(1, -1));
        assert_eq!(zeta(&pr, &comp(&[1, 0]), 2), pq(0, 1));
        assert_eq!(zeta(&pr, &comp(&[0, 1]), 1), pq(0, 1));
        assert_eq!(zeta(&pr, &comp(&[0, 1]), 2), pq(1, -1));
    }

    #[test]
    fn zeta_ratio_at_equal_entries_is_q_squared() {
        let pr = params();
        let lam = comp(&[2, 2, 0]);
        let ratio = &zeta(&pr, &lam, 2) / &zeta(&pr, &lam, 1);
        assert_eq!(ratio, pr.q_pow(2));
    }

    #[test]
    fn lower_set_examples() {
        assert_eq!(lower_set(&comp(&[0, 0])).len(), 1);
        let ls: Vec<Vec<i64>> = lower_set(&comp(&[1, 0]))
            .iter()
            .map(|c| c.entries().to_vec())
            .collect();
        assert_eq!(ls, vec![vec![1, 0], vec![0, 1]]);
        let ls3 = lower_set(&comp(&[1, 0, -1]));
        let entries: Vec<Vec<i64>> = ls3.iter().map(|c| c.entries().to_vec()).collect();
        assert!(entries.contains(&vec![0, 0, 0]));
        for perm in [
            vec![1, 0, -1],
            vec![1, -1, 0],
            vec![0, 1, -1],
            vec![0, -1, 1],
            vec![-1, 1, 0],
            vec![-1, 0, 1],
        ] {
            assert!(entries.contains(&perm), "missing {perm:?}");
        }
        // descending: the label comes first
        assert_eq!(ls3[0].entries(), &[1, 0, -1]);
    }

    #[test]
    fn macdonald_minimal_cases() {
        let ctx = HeckeContext::new(2, params());
        let phi = macdonald_poly(&ctx, &comp(&[0, 0])).unwrap();
        assert_eq!(phi.poly, LaurentPoly::one(2));
        let ctx1 = HeckeContext::new(1, params());
        let phi = macdonald_poly(&ctx1, &comp(&[5])).unwrap();
        assert_eq!(phi.poly, LaurentPoly::monomial(1, &[5], Scalar::one()));
    }

    #[test]
    fn macdonald_two_variable_oracle() {
        // hand-computed 2x2 triangular solve: Phi^{(1,0)} = z1 + c z2 with
        // c = p(q^2 - 1)/(q^2 - p); at q = 4/3, p = 5/7 this is 35/67
        let ctx = HeckeContext::new(2, params());
        let phi = macdonald_poly(&ctx, &comp(&[1, 0])).unwrap();
        let mut expected = LaurentPoly::var(2, 1);
        expected = expected
            .add(&LaurentPoly::var(2, 2).scale(&Scalar::ratio(35, 67)))
            .unwrap();
        assert_eq!(phi.poly, expected);
        // (0,1) has a singleton lower set, so Phi is the bare monomial
        let phi = macdonald_poly(&ctx, &comp(&[0, 1])).unwrap();
        assert_eq!(phi.poly, LaurentPoly::var(2, 2));
    }

    #[test]
    fn macdonald_at_q_one_is_monomial() {
        let pr = ParameterSet::new(Scalar::one(), Scalar::ratio(5, 7), 20).unwrap();
        let ctx = HeckeContext::new(2, pr);
        for f in monomial_box(2, -1, 1) {
            let (e, _) = f.terms().next().unwrap();
            let phi = macdonald_poly(&ctx, &comp(&e.0)).unwrap();
            assert_eq!(phi.poly, f);
        }
    }

    #[test]
    fn degenerate_parameters_are_reported() {
        // q = 1, p = 1 collapses every eigenvalue; the solve must refuse
        let pr = ParameterSet::new(Scalar::one(), Scalar::one(), 20).unwrap();
        let ctx = HeckeContext::new(2, pr);
        match macdonald_poly(&ctx, &comp(&[1, 0])) {
            Err(Error::Degeneracy(_)) => {}
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn hecke_coeffs_cases() {
        let pr = params();
        // equal entries: A = q, B = 0
        let (a, b) = hecke_coeffs(&pr, &comp(&[1, 1]), 1).unwrap();
        assert_eq!(a, pr.q_pow(1));
        assert!(b.is_zero());
        // ascending pair: B = q^{-1}
        let (_, b) = hecke_coeffs(&pr, &comp(&[0, 1]), 1).unwrap();
        assert_eq!(b, pr.q_pow(-1));
        // descending pair: B = q^{-1} {x}
        let lam = comp(&[1, 0]);
        let x = &zeta(&pr, &lam, 2) / &zeta(&pr, &lam, 1);
        let q2 = pr.q_pow(2);
        let xm1 = &x - &Scalar::one();
        let braces = &(&(&x - &q2) * &(&(&q2 * &x) - &Scalar::one())) / &(&xm1 * &xm1);
        let (_, b) = hecke_coeffs(&pr, &lam, 1).unwrap();
        assert_eq!(b, &pr.q_pow(-1) * &braces);
    }

    #[test]
    fn hecke_action_identity_small_box() {
        let ctx = HeckeContext::new(2, params());
        for f in monomial_box(2, -1, 1) {
            let (e, _) = f.terms().next().unwrap();
            let lam = comp(&e.0);
            let phi = macdonald_poly(&ctx, &lam).unwrap();
            let (a, b) = hecke_coeffs(ctx.params(), &lam, 1).unwrap();
            let lhs = ctx.g_apply(1, 2, &phi.poly).unwrap();
            let mut rhs = phi.poly.scale(&a);
            if !b.is_zero() {
                let swapped = macdonald_poly(&ctx, &lam.swap_adjacent(1)).unwrap();
                rhs = rhs.add(&swapped.poly.scale(&b)).unwrap();
            }
            assert_eq!(lhs, rhs, "lambda {:?}", lam.entries());
        }
    }

    #[test]
    fn hecke_recursion_matches_direct_solve() {
        let ctx = HeckeContext::new(3, params());
        // walk (0,1,2) -> (1,0,2) -> (1,2,0) by adjacent transpositions
        let start = macdonald_poly(&ctx, &comp(&[0, 1, 2])).unwrap();
        let step1 = hecke_step(&ctx, &start, 1).unwrap();
        assert_eq!(step1.label.entries(), &[1, 0, 2]);
        assert_eq!(step1.poly, macdonald_poly(&ctx, &step1.label).unwrap().poly);
        let step2 = hecke_step(&ctx, &step1, 2).unwrap();
        assert_eq!(step2.label.entries(), &[1, 2, 0]);
        assert_eq!(step2.poly, macdonald_poly(&ctx, &step2.label).unwrap().poly);
    }

    #[test]
    fn eigenvalue_separation_on_box() {
        let pr = params();
        let mut seen: Vec<(Vec<i64>, Vec<Scalar>)> = Vec::new();
        for f in monomial_box(2, -2, 2) {
            let (e, _) = f.terms().next().unwrap();
            let lam = comp(&e.0);
            let zs: Vec<Scalar> = (1..=2).map(|i| zeta(&pr, &lam, i)).collect();
            for (other, zo) in &seen {
                assert!(zo != &zs, "zeta collision between {other:?} and {:?}", e.0);
            }
            seen.push((e.0.clone(), zs));
        }
    }
}
