//! The level-0 actions of U_q'(sl_n^) on tensors and wedges, and the
//! commuting Hamiltonian families.
//!
//! Both actions share the same generator formulas; they differ only in the
//! realization of the commuting elements y_i:
//!
//!   U_1: y_i = z_i^{-1}            (multiplication)
//!   U_0: y_i = q^{1-N} Y_i^{(N)}   (Cherednik difference operators)
//!
//! Generators, with color indices read modulo n (color 0 means color n):
//!
//!   K_e = K_1^e ... K_N^e,  K_i^e = q^(E_i^{e,e} - E_i^{e+1,e+1})
//!   E_e = sum_i y_i^{-d(0,e)} E_i^{e,e+1} K_{i+1}^e ... K_N^e
//!   F_e = sum_i y_i^{d(0,e)} (K_1^e)^{-1} ... (K_{i-1}^e)^{-1} E_i^{e+1,e}
//!
//! The Hamiltonians are the power sums B_a = sum_i z_i^a (for U_1) and
//! h_a = sum_i (q^{1-N} Y_i)^a (for U_0); each family commutes with its own
//! action.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hecke::HeckeContext;
use crate::laurent::LaurentPoly;
use crate::report::{RelationCheck, RelationReport};
use crate::scalar::Scalar;
use crate::wedge::{canonical_lift, lambda_map, TensorVector, WedgeVector};

/// Which of the two level-0 actions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionFlavor {
    /// y_i = q^{1-N} Y_i^{(N)}, the principal action.
    U0,
    /// y_i = z_i^{-1}, the multiplication action.
    U1,
}

impl fmt::Display for ActionFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionFlavor::U0 => write!(f, "u0"),
            ActionFlavor::U1 => write!(f, "u1"),
        }
    }
}

impl FromStr for ActionFlavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u0" => Ok(ActionFlavor::U0),
            "u1" => Ok(ActionFlavor::U1),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

/// The kind of a Chevalley generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    E,
    F,
    KPlus,
    KMinus,
}

/// A Chevalley generator E_e, F_e, or K_e^{+-1} with 0 <= e <= n-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorName {
    pub kind: GenKind,
    pub index: usize,
}

impl GeneratorName {
    pub fn new(kind: GenKind, index: usize) -> Self {
        GeneratorName { kind, index }
    }

    /// All generators E_e, F_e, K_e, K_e^{-1} for e in 0..n.
    pub fn all(n: usize) -> Vec<GeneratorName> {
        let mut out = Vec::new();
        for e in 0..n {
            for kind in [GenKind::E, GenKind::F, GenKind::KPlus, GenKind::KMinus] {
                out.push(GeneratorName::new(kind, e));
            }
        }
        out
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::E => write!(f, "E{}", self.index),
            GenKind::F => write!(f, "F{}", self.index),
            GenKind::KPlus => write!(f, "K{}", self.index),
            GenKind::KMinus => write!(f, "Kinv{}", self.index),
        }
    }
}

impl FromStr for GeneratorName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = if let Some(r) = s.strip_prefix("Kinv") {
            (GenKind::KMinus, r)
        } else if let Some(r) = s.strip_prefix('E') {
            (GenKind::E, r)
        } else if let Some(r) = s.strip_prefix('F') {
            (GenKind::F, r)
        } else if let Some(r) = s.strip_prefix('K') {
            (GenKind::KPlus, r)
        } else {
            return Err(Error::Parse(format!("unknown generator {s:?}")));
        };
        let index: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator index in {s:?}")))?;
        Ok(GeneratorName { kind, index })
    }
}

/// The color in 1..=n representing the residue of `e` modulo n.
fn color_of(e: usize, ncolors: usize) -> u8 {
    let r = e % ncolors;
    if r == 0 {
        ncolors as u8
    } else {
        r as u8
    }
}

fn check_gen(gen: GeneratorName, ncolors: usize) -> Result<()> {
    if gen.index >= ncolors {
        return Err(Error::IndexOutOfRange(format!(
            "generator index {} with n = {ncolors}",
            gen.index
        )));
    }
    Ok(())
}

/// y_i^{sign} of the chosen flavor applied to the polynomial factor.
fn y_factor(
    ctx: &HeckeContext,
    flavor: ActionFlavor,
    i: usize,
    sign: i8,
    f: &LaurentPoly,
) -> Result<LaurentPoly> {
    match flavor {
        ActionFlavor::U1 => {
            let mut exps = vec![0i64; f.nvars()];
            exps[i - 1] = -(sign as i64);
            Ok(f.mul_monomial(&exps, &Scalar::one()))
        }
        ActionFlavor::U0 => {
            let scale = ctx.params().q_pow((1 - ctx.nvars() as i64) * sign as i64);
            Ok(ctx.y_apply(i, sign, f)?.scale(&scale))
        }
    }
}

/// Applies a generator to a tensor.
pub fn act_tensor(
    ctx: &HeckeContext,
    flavor: ActionFlavor,
    gen: GeneratorName,
    v: &TensorVector,
) -> Result<TensorVector> {
    let n = v.ncolors();
    check_gen(gen, n)?;
    if v.nvars() != ctx.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "tensor over N = {} in a context with N = {}",
            v.nvars(),
            ctx.nvars()
        )));
    }
    let width = v.nvars();
    let q = ctx.params().q();
    let ce = color_of(gen.index, n);
    let ce1 = color_of(gen.index + 1, n);
    let mut out = TensorVector::zero(width, n);
    match gen.kind {
        GenKind::KPlus | GenKind::KMinus => {
            let sgn: i64 = if gen.kind == GenKind::KPlus { 1 } else { -1 };
            for ((exps, colors), c) in v.terms() {
                let wt: i64 = colors
                    .iter()
                    .map(|&cl| (cl == ce) as i64 - (cl == ce1) as i64)
                    .sum();
                out.add_term(exps.0.clone(), colors.clone(), &(c * &q.pow(sgn * wt)));
            }
        }
        GenKind::E => {
            let is_affine = gen.index == 0;
            for ((exps, colors), c) in v.terms() {
                for i in 1..=width {
                    if colors[i - 1] != ce1 {
                        continue;
                    }
                    let wt: i64 = colors[i..]
                        .iter()
                        .map(|&cl| (cl == ce) as i64 - (cl == ce1) as i64)
                        .sum();
                    let coeff = c * &q.pow(wt);
                    let mut new_colors = colors.clone();
                    new_colors[i - 1] = ce;
                    if is_affine {
                        let mono = LaurentPoly::monomial(width, &exps.0, coeff);
                        let img = y_factor(ctx, flavor, i, -1, &mono)?;
                        for (e2, c2) in img.terms() {
                            out.add_term(e2.0.clone(), new_colors.clone(), c2);
                        }
                    } else {
                        out.add_term(exps.0.clone(), new_colors, &coeff);
                    }
                }
            }
        }
        GenKind::F => {
            let is_affine = gen.index == 0;
            for ((exps, colors), c) in v.terms() {
                for i in 1..=width {
                    if colors[i - 1] != ce {
                        continue;
                    }
                    let wt: i64 = colors[..i - 1]
                        .iter()
                        .map(|&cl| (cl == ce) as i64 - (cl == ce1) as i64)
                        .sum();
                    let coeff = c * &q.pow(-wt);
                    let mut new_colors = colors.clone();
                    new_colors[i - 1] = ce1;
                    if is_affine {
                        let mono = LaurentPoly::monomial(width, &exps.0, coeff);
                        let img = y_factor(ctx, flavor, i, 1, &mono)?;
                        for (e2, c2) in img.terms() {
                            out.add_term(e2.0.clone(), new_colors.clone(), c2);
                        }
                    } else {
                        out.add_term(exps.0.clone(), new_colors, &coeff);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Applies a generator to a wedge: lift, act on the tensor, project back.
/// Well defined because both actions preserve the quotient subspace.
pub fn act_wedge(
    ctx: &HeckeContext,
    flavor: ActionFlavor,
    gen: GeneratorName,
    w: &WedgeVector,
) -> Result<WedgeVector> {
    let lifted = canonical_lift(w);
    let acted = act_tensor(ctx, flavor, gen, &lifted)?;
    Ok(lambda_map(ctx.params(), &acted))
}

/// The Hamiltonian of the chosen flavor on tensors: multiplication by the
/// power sum (U_1) or the symmetric Cherednik power sum (U_0).
pub fn hamiltonian_tensor(
    ctx: &HeckeContext,
    flavor: ActionFlavor,
    a: i64,
    v: &TensorVector,
) -> Result<TensorVector> {
    if a == 0 {
        return Err(Error::InvalidParameter("Hamiltonian index must be nonzero".into()));
    }
    let width = ctx.nvars();
    match flavor {
        ActionFlavor::U1 => v.map_poly(|f| {
            let mut acc = LaurentPoly::zero(width);
            for i in 1..=width {
                let mut exps = vec![0i64; width];
                exps[i - 1] = a;
                acc = acc.add(&f.mul_monomial(&exps, &Scalar::one()))?;
            }
            Ok(acc)
        }),
        ActionFlavor::U0 => {
            let scale = ctx.params().q_pow(a * (1 - width as i64));
            v.map_poly(|f| {
                let mut acc = LaurentPoly::zero(width);
                for i in 1..=width {
                    acc = acc.add(&ctx.y_power(i, a, f)?)?;
                }
                Ok(acc.scale(&scale))
            })
        }
    }
}

/// The Hamiltonian on wedges, through the canonical lift.
pub fn hamiltonian_wedge(
    ctx: &HeckeContext,
    flavor: ActionFlavor,
    a: i64,
    w: &WedgeVector,
) -> Result<WedgeVector> {
    let lifted = canonical_lift(w);
    let acted = hamiltonian_tensor(ctx, flavor, a, &lifted)?;
    Ok(lambda_map(ctx.params(), &acted))
}

/// Entry a_{ij} of the affine Cartan matrix of sl_n^ on indices 0..n-1:
/// cyclic A-type for n >= 3, and the rank-one affine matrix [[2,-2],[-2,2]]
/// for n = 2.
pub fn cartan(n: usize, i: usize, j: usize) -> i64 {
    assert!(i < n && j < n);
    if i == j {
        return 2;
    }
    if n == 2 {
        return -2;
    }
    let diff = (n + i - j) % n;
    if diff == 1 || diff == n - 1 {
        -1
    } else {
        0
    }
}

/// The symmetric q-integer [k]_q = (q^k - q^{-k})/(q - q^{-1}).
fn q_int(q: &Scalar, k: i64) -> Scalar {
    if q.is_one() {
        return Scalar::from_int(k);
    }
    &(&q.pow(k) - &q.pow(-k)) / &(q - &q.pow(-1))
}

/// The symmetric q-binomial coefficient.
fn q_binomial(q: &Scalar, n: i64, r: i64) -> Scalar {
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for t in 0..r {
        num *= &q_int(q, n - t);
        den *= &q_int(q, t + 1);
    }
    &num / &den
}

/// Compares two wedge operators on every corpus element; used by the
/// verification suites and, in tests, by deliberately corrupted operators.
pub fn check_wedge_identity<L, R>(
    relation: impl Into<String>,
    corpus: &[WedgeVector],
    lhs: L,
    rhs: R,
) -> Result<RelationCheck>
where
    L: Fn(&WedgeVector) -> Result<WedgeVector>,
    R: Fn(&WedgeVector) -> Result<WedgeVector>,
{
    let relation = relation.into();
    for w in corpus {
        let l = lhs(w)?;
        let r = rhs(w)?;
        if l != r {
            return Ok(RelationCheck::fail(
                relation,
                format!("input {w}: lhs {l}, rhs {r}"),
            ));
        }
    }
    Ok(RelationCheck::pass(relation))
}

/// Checks the defining relations of U_q'(sl_n^) as exact operator identities
/// on each corpus wedge: K-commutativity, the K E K^{-1} and K F K^{-1}
/// weight relations, the [E, F] relation, and the q-Serre relations.
pub fn verify_quantum_group_relations(
    ctx: &HeckeContext,
    flavor: ActionFlavor,
    ncolors: usize,
    corpus: &[WedgeVector],
) -> Result<RelationReport> {
    let n = ncolors;
    let q = ctx.params().q().clone();
    let mut report = RelationReport::new();
    let apply = |gen: GeneratorName, w: &WedgeVector| act_wedge(ctx, flavor, gen, w);
    let e = |i: usize| GeneratorName::new(GenKind::E, i);
    let f = |i: usize| GeneratorName::new(GenKind::F, i);
    let k = |i: usize| GeneratorName::new(GenKind::KPlus, i);
    let kinv = |i: usize| GeneratorName::new(GenKind::KMinus, i);

    for i in 0..n {
        report.push(check_wedge_identity(
            format!("K_{i} K_{i}^-1 = I"),
            corpus,
            |w| apply(kinv(i), &apply(k(i), w)?),
            |w| Ok(w.clone()),
        )?);
        for j in (i + 1)..n {
            report.push(check_wedge_identity(
                format!("K_{i} K_{j} = K_{j} K_{i}"),
                corpus,
                |w| apply(k(i), &apply(k(j), w)?),
                |w| apply(k(j), &apply(k(i), w)?),
            )?);
        }
    }

    for i in 0..n {
        for j in 0..n {
            let a = cartan(n, i, j);
            report.push(check_wedge_identity(
                format!("K_{i} E_{j} K_{i}^-1 = q^{a} E_{j}"),
                corpus,
                |w| apply(k(i), &apply(e(j), &apply(kinv(i), w)?)?),
                |w| Ok(apply(e(j), w)?.scale(&q.pow(a))),
            )?);
            report.push(check_wedge_identity(
                format!("K_{i} F_{j} K_{i}^-1 = q^-{a} F_{j}"),
                corpus,
                |w| apply(k(i), &apply(f(j), &apply(kinv(i), w)?)?),
                |w| Ok(apply(f(j), w)?.scale(&q.pow(-a))),
            )?);
        }
    }

    let q_is_one = ctx.params().q_is_one();
    let qq = ctx.params().q_minus_qinv();
    for i in 0..n {
        for j in 0..n {
            report.push(check_wedge_identity(
                format!("[E_{i}, F_{j}] = delta {{(K_{i} - K_{i}^-1)/(q - q^-1)}}"),
                corpus,
                |w| {
                    let comm = apply(e(i), &apply(f(j), w)?)?.sub(&apply(f(j), &apply(e(i), w)?)?)?;
                    // at q = 1 compare (q - q^-1) [E, F] with K - K^-1 instead
                    if q_is_one {
                        Ok(comm.scale(&qq))
                    } else {
                        Ok(comm)
                    }
                },
                |w| {
                    if i != j {
                        return Ok(WedgeVector::zero(w.width(), w.ncolors()));
                    }
                    let kdiff = apply(k(i), w)?.sub(&apply(kinv(i), w)?)?;
                    if q_is_one {
                        Ok(kdiff)
                    } else {
                        Ok(kdiff.scale(&qq.inv().expect("q generic")))
                    }
                },
            )?);
        }
    }

    // q-Serre relations, degree 1 - a_{ij} in the repeated generator
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = 1 - cartan(n, i, j);
            for (name, x) in [("E", e as fn(usize) -> GeneratorName), ("F", f)] {
                report.push(check_wedge_identity(
                    format!("Serre {name}_{i}^r {name}_{j} {name}_{i}^(p-r), p = {p}"),
                    corpus,
                    |w| {
                        let mut acc = WedgeVector::zero(w.width(), w.ncolors());
                        for r in 0..=p {
                            let mut v = w.clone();
                            for _ in 0..(p - r) {
                                v = apply(x(i), &v)?;
                            }
                            v = apply(x(j), &v)?;
                            for _ in 0..r {
                                v = apply(x(i), &v)?;
                            }
                            let mut c = q_binomial(&q, p, r);
                            if r % 2 == 1 {
                                c = -c;
                            }
                            acc = acc.add(&v.scale(&c))?;
                        }
                        Ok(acc)
                    },
                    |w| Ok(WedgeVector::zero(w.width(), w.ncolors())),
                )?);
            }
        }
    }
    Ok(report)
}
