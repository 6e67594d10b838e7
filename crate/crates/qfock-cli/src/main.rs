//! Command-line front end: computes Macdonald polynomials, applies quantum
//! affine generators and Hamiltonians to wedges, decomposes finite wedge
//! spaces and Fock-space degrees, and drives the verification suites.
//!
//! All numeric output is exact rational strings; orderings are
//! deterministic, so identical invocations produce identical bytes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parameter degeneracy,
//! 3 usage error.

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qfock::decomp::{drinfeld_polys, em_block, enumerate_labels};
use qfock::fock::FockSpace;
use qfock::hecke::{monomial_box, HeckeContext, Representation};
use qfock::macdonald::{macdonald_poly, Composition};
use qfock::qaffine::{
    act_wedge, hamiltonian_wedge, verify_quantum_group_relations, ActionFlavor, GeneratorName,
};
use qfock::report::RelationReport;
use qfock::scalar::{ParameterSet, Scalar};
use qfock::wedge::{normal_order_with, s_apply, tensor_g_apply, RewriteStrategy, WedgeVector};
use qfock::Error;

#[derive(Parser)]
#[command(name = "qfock", version, about = "Exact q-wedge and Fock-space computer algebra")]
struct Cli {
    /// Deformation parameter q as an exact rational (default 4/3, or QFOCK_Q)
    #[arg(long, global = true)]
    q: Option<String>,
    /// Deformation parameter p as an exact rational (default 5/7, or QFOCK_P)
    #[arg(long, global = true)]
    p: Option<String>,
    /// Bound for the finite genericity search
    #[arg(long, global = true, default_value_t = ParameterSet::DEFAULT_BOUND)]
    bound: u32,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a nonsymmetric Macdonald polynomial
    Macdonald {
        /// Number of variables N
        #[arg(long)]
        nvars: usize,
        /// Composition as a comma-separated list, e.g. "1,0,-2"
        #[arg(long)]
        lambda: String,
    },
    /// Apply a generator to a wedge vector
    Act {
        #[arg(long)]
        flavor: String,
        /// Generator name: E0, F1, K2, Kinv0, ...
        #[arg(long)]
        gen: String,
        /// Wedge vector JSON, or "-" to read it from stdin
        #[arg(long)]
        wedge: String,
    },
    /// Apply a commuting Hamiltonian to a wedge vector
    Hamiltonian {
        #[arg(long)]
        flavor: String,
        /// Power index a (nonzero integer)
        #[arg(long)]
        index: i64,
        /// Wedge vector JSON, or "-" to read it from stdin
        #[arg(long)]
        wedge: String,
    },
    /// Decompose a finite wedge space into irreducible blocks
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        width: usize,
        /// Entry window "lo..hi" for the labels
        #[arg(long)]
        window: String,
        /// Optional window "lo..hi" on the total of the labels
        #[arg(long)]
        sum_window: Option<String>,
    },
    /// Decompose a degree of a q-deformed Fock space
    Fock {
        #[arg(long = "M")]
        charge: i64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = Emit::Blocks)]
        emit: Emit,
    },
    /// Run a verification suite
    Verify {
        /// One of: hecke, uq, wedge, fock-intertwine, fock-stabilize
        #[arg(long)]
        suite: String,
        #[arg(long)]
        flavor: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "N")]
        width: Option<usize>,
        #[arg(long = "M")]
        charge: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        r: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Blocks,
    Basis,
    Drinfeld,
    Spectrum,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Degeneracy(_) | Error::ExactDivision(_) => ExitCode::from(2),
                Error::InvalidParameter(_)
                | Error::Parse(_)
                | Error::IndexOutOfRange(_)
                | Error::DimensionMismatch(_)
                | Error::MixedDegree(_) => ExitCode::from(3),
            }
        }
    }
}

fn resolve_params(cli: &Cli) -> qfock::Result<ParameterSet> {
    let q_str = cli
        .q
        .clone()
        .or_else(|| std::env::var("QFOCK_Q").ok())
        .unwrap_or_else(|| "4/3".into());
    let p_str = cli
        .p
        .clone()
        .or_else(|| std::env::var("QFOCK_P").ok())
        .unwrap_or_else(|| "5/7".into());
    ParameterSet::new(Scalar::from_str(&q_str)?, Scalar::from_str(&p_str)?, cli.bound)
}

fn params_json(params: &ParameterSet) -> serde_json::Value {
    json!({
        "q": params.q().to_string(),
        "p": params.p().to_string(),
        "genericity_bound": params.genericity_bound(),
        "q_is_one": params.q_is_one(),
    })
}

fn parse_list(s: &str) -> qfock::Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in list")))
        })
        .collect()
}

fn parse_window(s: &str) -> qfock::Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("window {s:?} is not of the form lo..hi")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad window bound {lo:?}")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad window bound {hi:?}")))?;
    if lo > hi {
        return Err(Error::Parse(format!("empty window {s:?}")));
    }
    Ok((lo, hi))
}

fn parse_wedge(arg: &str) -> qfock::Result<WedgeVector> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        buf
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("wedge JSON: {e}")))
}

fn emit(format: Format, value: &serde_json::Value, text: String) {
    match format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{text}"),
    }
}

fn report_output(
    format: Format,
    params: &ParameterSet,
    suite: &str,
    report: &RelationReport,
) -> ExitCode {
    let passed = report.all_passed();
    let value = json!({
        "params": params_json(params),
        "suite": suite,
        "passed": passed,
        "checks": report.checks,
    });
    let mut text = format!("suite {suite}: {}\n", if passed { "pass" } else { "FAIL" });
    for c in &report.checks {
        text.push_str(&format!(
            "  [{}] {}{}\n",
            if c.passed() { "ok" } else { "FAIL" },
            c.relation,
            c.witness
                .as_ref()
                .map(|w| format!(" ({w})"))
                .unwrap_or_default()
        ));
    }
    emit(format, &value, text.trim_end().to_string());
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Serialize)]
struct BlockOut {
    m: Vec<i64>,
    dim: usize,
    drinfeld: Vec<Vec<String>>,
    h_eigenvalues: Vec<(i64, String)>,
}

fn run(cli: Cli) -> qfock::Result<ExitCode> {
    let params = resolve_params(&cli)?;
    let format = cli.format;
    match &cli.command {
        Command::Macdonald { nvars, lambda } => {
            let entries = parse_list(lambda)?;
            if entries.len() != *nvars {
                return Err(Error::DimensionMismatch(format!(
                    "lambda has {} entries, expected {nvars}",
                    entries.len()
                )));
            }
            let ctx = HeckeContext::new(*nvars, params.clone());
            let phi = macdonald_poly(&ctx, &Composition::new(entries))?;
            let value = json!({
                "params": params_json(&params),
                "label": phi.label,
                "poly": phi.poly,
            });
            let text = format!("Phi^{:?} = {}", phi.label.entries(), phi.poly);
            emit(format, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Act { flavor, gen, wedge } => {
            let flavor = ActionFlavor::from_str(flavor)?;
            let gen = GeneratorName::from_str(gen)?;
            let w = parse_wedge(wedge)?;
            let ctx = HeckeContext::new(w.width(), params.clone());
            let out = act_wedge(&ctx, flavor, gen, &w)?;
            let value = json!({
                "params": params_json(&params),
                "wedge": out,
            });
            let text = format!("{gen}.w = {out}");
            emit(format, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Hamiltonian {
            flavor,
            index,
            wedge,
        } => {
            let flavor = ActionFlavor::from_str(flavor)?;
            let w = parse_wedge(wedge)?;
            let ctx = HeckeContext::new(w.width(), params.clone());
            let out = hamiltonian_wedge(&ctx, flavor, *index, &w)?;
            let value = json!({
                "params": params_json(&params),
                "wedge": out,
            });
            let text = format!("h_{index}.w = {out}");
            emit(format, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            n,
            width,
            window,
            sum_window,
        } => {
            let (lo, hi) = parse_window(window)?;
            let sum = sum_window.as_deref().map(parse_window).transpose()?;
            let ctx = HeckeContext::new(*width, params.clone());
            let labels = enumerate_labels(*width, *n, lo, hi, sum);
            let mut blocks = Vec::new();
            for label in &labels {
                let block = em_block(&ctx, label, &[-2, -1, 1, 2])?;
                let drinfeld = drinfeld_polys(&params, label);
                blocks.push(BlockOut {
                    m: label.entries().to_vec(),
                    dim: block.dim,
                    drinfeld: drinfeld
                        .polys
                        .iter()
                        .map(|p| p.coeffs.iter().map(|c| c.to_string()).collect())
                        .collect(),
                    h_eigenvalues: block
                        .h_eigenvalues
                        .iter()
                        .map(|(a, v)| (*a, v.to_string()))
                        .collect(),
                });
            }
            let value = json!({
                "params": params_json(&params),
                "n": n,
                "N": width,
                "blocks": blocks,
            });
            let mut text = String::new();
            for b in &blocks {
                text.push_str(&format!("m = {:?}, dim = {}\n", b.m, b.dim));
            }
            emit(format, &value, text.trim_end().to_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Fock {
            charge,
            n,
            degree,
            emit: what,
        } => {
            if *degree < 0 {
                return Err(Error::InvalidParameter("degree must be nonnegative".into()));
            }
            let space = FockSpace::new(*charge, *n, params.clone())?;
            let with_basis = *what == Emit::Basis;
            let blocks = space.decompose(*degree, &[-2, -1, 1, 2], with_basis)?;
            let mut out = Vec::new();
            for b in &blocks {
                let mut obj = serde_json::Map::new();
                obj.insert("m_head".into(), json!(b.m_head));
                obj.insert("norm".into(), json!(b.norm));
                obj.insert("dim".into(), json!(b.dim));
                if matches!(what, Emit::Blocks | Emit::Basis | Emit::Drinfeld) {
                    let roots: Vec<Vec<String>> = b
                        .drinfeld
                        .polys
                        .iter()
                        .map(|p| p.roots.iter().map(|r| r.to_string()).collect())
                        .collect();
                    obj.insert("drinfeld".into(), json!(roots));
                }
                if matches!(what, Emit::Blocks | Emit::Basis | Emit::Spectrum) {
                    let g: Vec<(String, String)> = b
                        .g_eigenvalues
                        .iter()
                        .map(|(l, v)| (l.to_string(), v.to_string()))
                        .collect();
                    obj.insert("g".into(), json!(g));
                }
                if let Some(basis) = &b.basis {
                    obj.insert("basis".into(), json!(basis));
                }
                out.push(serde_json::Value::Object(obj));
            }
            let value = json!({
                "params": params_json(&params),
                "M": charge,
                "n": n,
                "degree": degree,
                "blocks": out,
            });
            let mut text = String::new();
            for b in &blocks {
                text.push_str(&format!(
                    "m_head = {:?}, norm = {}, dim = {}\n",
                    b.m_head, b.norm, b.dim
                ));
            }
            emit(format, &value, text.trim_end().to_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            flavor,
            n,
            width,
            charge,
            k,
            r,
        } => {
            let suite = suite.as_str();
            match suite {
                "hecke" => {
                    let width = width.ok_or_else(|| Error::InvalidParameter("--N required".into()))?;
                    let ctx = HeckeContext::new(width, params.clone());
                    let lim = if width >= 3 { 2 } else { 2 };
                    let corpus = monomial_box(width, -lim, lim);
                    let mut report = RelationReport::new();
                    for rep in [Representation::Polynomial, Representation::Difference] {
                        let mut sub = ctx.verify_hecke_relations(rep, &corpus)?;
                        for c in &mut sub.checks {
                            c.relation = format!("{rep:?}: {}", c.relation);
                        }
                        report.merge(sub);
                    }
                    Ok(report_output(format, &params, suite, &report))
                }
                "uq" => {
                    let flavor = ActionFlavor::from_str(
                        flavor
                            .as_deref()
                            .ok_or_else(|| Error::InvalidParameter("--flavor required".into()))?,
                    )?;
                    let n = n.ok_or_else(|| Error::InvalidParameter("--n required".into()))?;
                    let width =
                        width.ok_or_else(|| Error::InvalidParameter("--N required".into()))?;
                    let ctx = HeckeContext::new(width, params.clone());
                    let corpus = qfock::wedge::wedge_basis_box(width, n, -1, 1);
                    let report = verify_quantum_group_relations(&ctx, flavor, n, &corpus)?;
                    Ok(report_output(format, &params, suite, &report))
                }
                "wedge" => {
                    let n = n.unwrap_or(2);
                    let width = width.unwrap_or(3);
                    let ctx = HeckeContext::new(width, params.clone());
                    let mut report = RelationReport::new();
                    // quotient well-definedness on the monomial box
                    let mut check = qfock::report::RelationCheck::pass(
                        "Lambda((g - S) f) = 0 on basis tensors",
                    );
                    'outer: for mono in monomial_box(width, -1, 1) {
                        let (e, _) = mono.terms().next().unwrap();
                        for colors in color_words(width, n) {
                            let f = qfock::wedge::TensorVector::pure(width, n, &e.0, &colors);
                            for i in 1..width {
                                let gv = tensor_g_apply(&ctx, i, i + 1, &f)?;
                                let sv = s_apply(&params, i, &f, 1)?;
                                if !qfock::wedge::lambda_map(&params, &gv.sub(&sv)?).is_zero() {
                                    check = qfock::report::RelationCheck::fail(
                                        "Lambda((g - S) f) = 0 on basis tensors",
                                        format!("exps {:?}, colors {colors:?}, slot {i}", e.0),
                                    );
                                    break 'outer;
                                }
                            }
                        }
                    }
                    report.push(check);
                    // straightening confluence over a deterministic sample
                    let mut check = qfock::report::RelationCheck::pass("straightening confluence");
                    let mut seed = 0x9e3779b97f4a7c15u64;
                    for _ in 0..200 {
                        let mut ks = Vec::new();
                        for _ in 0..width {
                            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                            ks.push(((seed >> 33) % 13) as i64 - 6);
                        }
                        let l = normal_order_with(&params, &ks, n, RewriteStrategy::Leftmost);
                        let rr = normal_order_with(&params, &ks, n, RewriteStrategy::Rightmost);
                        if l != rr {
                            check = qfock::report::RelationCheck::fail(
                                "straightening confluence",
                                format!("{ks:?}"),
                            );
                            break;
                        }
                    }
                    report.push(check);
                    Ok(report_output(format, &params, suite, &report))
                }
                "fock-intertwine" => {
                    let n = n.ok_or_else(|| Error::InvalidParameter("--n required".into()))?;
                    let charge =
                        charge.ok_or_else(|| Error::InvalidParameter("--M required".into()))?;
                    let k = k.ok_or_else(|| Error::InvalidParameter("--k required".into()))?;
                    let space = FockSpace::new(charge, n, params.clone())?;
                    let mut report = RelationReport::new();
                    for depth in [k.max(0) as usize, k.max(0) as usize + 1] {
                        report.merge(space.intertwine_check(k, depth, &[-1, 1])?);
                    }
                    Ok(report_output(format, &params, suite, &report))
                }
                "fock-stabilize" => {
                    let n = n.ok_or_else(|| Error::InvalidParameter("--n required".into()))?;
                    let charge =
                        charge.ok_or_else(|| Error::InvalidParameter("--M required".into()))?;
                    let k = k.ok_or_else(|| Error::InvalidParameter("--k required".into()))?;
                    let depth = r.unwrap_or(k.max(0) as usize);
                    let space = FockSpace::new(charge, n, params.clone())?;
                    let rep = space.stabilization_check(k, depth)?;
                    let mut report = RelationReport::new();
                    let name = format!(
                        "rho restricted to degree {k} at depth {depth}: surjective{}",
                        if rep.expected_bijective {
                            " and injective"
                        } else {
                            ""
                        }
                    );
                    if rep.as_expected() {
                        report.push(qfock::report::RelationCheck::pass(name));
                    } else {
                        report.push(qfock::report::RelationCheck::fail(
                            name,
                            format!(
                                "rank {} of source {} target {}",
                                rep.rank, rep.source_dim, rep.target_dim
                            ),
                        ));
                    }
                    Ok(report_output(format, &params, suite, &report))
                }
                other => Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
            }
        }
    }
}

fn color_words(width: usize, ncolors: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..width {
        let mut next = Vec::with_capacity(out.len() * ncolors);
        for w in &out {
            for c in 1..=ncolors as u8 {
                let mut nw = w.clone();
                nw.push(c);
                next.push(nw);
            }
        }
        out = next;
    }
    out
}
