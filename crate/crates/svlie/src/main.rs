//! Command-line front end.
//!
//! Every subcommand prints one JSON report to standard output and exits
//! with `0` when all checked identities held, `1` when violations were
//! found, and `2` on usage, parse, or window errors.  The environment
//! variable `SVLIE_MAX_K` (default 12) caps the accepted window scale to
//! bound memory use.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use svlie::algebra::{self, AlgebraId, CheckReport};
use svlie::automorphisms::{
    apply_aut, apply_inner, check_compose_agreement, check_homomorphism, check_inner_nilpotency,
    check_lift_homomorphism, compose, inner_coset_normal_form, inverse, lift_apply,
    verify_group_relations, AutParams, InnerWord,
};
use svlie::cohomology::{
    solve_h2_window, solve_invariant_forms, solve_leibniz_h2_window, Cochain2,
};
use svlie::derivations::{solve_degree_zero_window, solve_der_sv0, solve_hom_sv0, LinearMap};
use svlie::extension::{central_class_count, verify_primed_table, verify_wedge_relations, WedgeSpace};
use svlie::parse::{parse_element, parse_symbol};
use svlie::report::{Report, Status};
use svlie::{Rational, Window};

/// Exact bracket tables and window verifiers for the extended
/// Schrödinger–Virasoro Lie algebra and its relatives.
#[derive(Parser)]
#[command(name = "svlie", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the algebra-plus-window commands.
#[derive(Args)]
struct AlgebraWindow {
    /// Algebra name: witt, vir, sv, svt, svhat, heis, hvir, s, hs, i1, i2, i3, i4.
    #[arg(long, default_value = "svt")]
    algebra: String,
    /// Window scale K: generators with doubled index in [-2K, 2K].
    #[arg(long, default_value_t = 6)]
    window: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two element expressions, e.g. "L(1) + 2*M(0)".
    Bracket {
        /// Algebra whose bracket (and central terms) to use.
        #[arg(long, default_value = "svt")]
        algebra: String,
        /// Left element expression.
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Right element expression.
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Check antisymmetry and the Jacobi identity on all window triples.
    VerifyJacobi(AlgebraWindow),
    /// Check that brackets add degrees on all window pairs.
    VerifyGrading(AlgebraWindow),
    /// Check that a subalgebra's window span is a bracket ideal.
    VerifyIdeal {
        #[command(flatten)]
        aw: AlgebraWindow,
        /// Name of the candidate ideal.
        #[arg(long)]
        sub: String,
    },
    /// Compute the window center (elements commuting with the interior).
    Center {
        #[command(flatten)]
        aw: AlgebraWindow,
        /// Interior half-window for centrality tests (default K/2).
        #[arg(long)]
        interior: Option<u32>,
    },
    /// Solve for the second Lie cohomology with trivial coefficients.
    SolveH2(AlgebraWindow),
    /// Solve for the second Leibniz cohomology (no antisymmetry imposed).
    SolveLeibnizH2(AlgebraWindow),
    /// Solve for invariant bilinear forms f([x,y],z) = f(x,[y,z]).
    SolveInvariantForm(AlgebraWindow),
    /// Solve for derivations: a degree slice (--degree) or the whole
    /// degree-zero family at window scale (--window).
    SolveDerivations {
        /// Target degree for the slice solver, e.g. "2" or "3/2".
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
        /// Window scale for the degree-zero solver.
        #[arg(long)]
        window: Option<u32>,
        /// Interior half-window for the degree-zero solver (default K/2).
        #[arg(long)]
        interior: Option<u32>,
    },
    /// Dimension of maps between degree slices commuting with the
    /// degree-zero generators.
    HomDim {
        /// Source degree, e.g. "2" or "-1/2".
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        /// Target degree.
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Normal form of a wedge x^y modulo the Jacobi span.
    WedgeReduce {
        /// Window scale for the wedge space.
        #[arg(long, default_value_t = 6)]
        window: u32,
        /// First basis symbol, e.g. "L(-3)".
        x: String,
        /// Second basis symbol.
        y: String,
    },
    /// Verify the closed-form wedge reduction rules against the Jacobi span.
    VerifyWedgeRelations {
        /// Window scale for the wedge space.
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    /// Verify the bracket table of the centrally extended algebra inside
    /// the wedge quotient, and count its central classes.
    VerifyPrimedTable {
        /// Query window K; the wedge space is built at K+2.
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    /// Apply a four-parameter automorphism "eps,lambda,a,d" to an element.
    AutApply {
        /// Parameters, e.g. "-1,2,3,1/2".
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Element expression.
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Compose two automorphisms (the second argument acts first).
    AutCompose {
        /// Outer parameters.
        #[arg(allow_hyphen_values = true)]
        outer: String,
        /// Inner parameters (applied first).
        #[arg(allow_hyphen_values = true)]
        inner: String,
    },
    /// Invert an automorphism.
    AutInverse {
        /// Parameters to invert.
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// Randomized verification: homomorphism property, composition
    /// agreement, group relations, and inner nilpotency on a window.
    AutVerify {
        /// Window scale for the checks.
        #[arg(long, default_value_t = 4)]
        window: u32,
        /// Number of random parameter tuples.
        #[arg(long, default_value_t = 25)]
        samples: u32,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply a word of inner exponentials "c*Y(1/2),..." to an element.
    InnerApply {
        /// Word of factors, e.g. "1*Y(1/2),2*Y(3/2)"; "1" is the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Element expression.
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Collapse a word of Y-exponentials to its two-factor normal form.
    InnerNormalForm {
        /// Word of Y factors.
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Apply the lift of an automorphism to the central extension.
    LiftApply {
        /// Parameters, e.g. "-1,0,1,1".
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Element expression (central symbols allowed).
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Run a command over a range of window scales and report whether
    /// the value stabilizes.
    Sweep {
        /// One of: verify-jacobi, verify-grading, center, solve-h2,
        /// solve-leibniz-h2, solve-invariant-form, verify-wedge-relations.
        #[arg(long)]
        command: String,
        /// Algebra name.
        #[arg(long, default_value = "svt")]
        algebra: String,
        /// Inclusive window range, e.g. "4..8".
        #[arg(long)]
        range: String,
    },
}

/// Uniform error type for handler failures; always exits with code 2.
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<E: std::fmt::Display>(e: E) -> CliError {
    CliError(e.to_string())
}

fn max_k() -> u32 {
    std::env::var("SVLIE_MAX_K")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(12)
}

fn checked_window(k: u32) -> Result<Window, CliError> {
    let cap = max_k();
    if k > cap {
        Err(CliError(format!(
            "window {k} exceeds the cap {cap}; raise SVLIE_MAX_K to allow it"
        )))
    } else {
        Ok(Window::new(k))
    }
}

fn parse_algebra(name: &str) -> Result<AlgebraId, CliError> {
    AlgebraId::from_str(name).map_err(err)
}

/// Parses a degree such as "2", "-1" or "3/2" into its doubled index.
fn parse_degree2(s: &str) -> Result<i64, CliError> {
    let bad = || CliError(format!("bad degree {s:?}: expected an integer or odd/2"));
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        match d {
            1 => Ok(2 * n),
            2 => Ok(n),
            _ => Err(bad()),
        }
    } else {
        let n: i64 = s.trim().parse().map_err(|_| bad())?;
        Ok(2 * n)
    }
}

/// Serializes a check outcome and derives the report status from it.
fn check_result(r: &CheckReport) -> (Value, Status) {
    let status = if r.ok() { Status::Ok } else { Status::Violations };
    let value = json!({
        "pairs_checked": r.pairs_checked,
        "triples_checked": r.triples_checked,
        "violations": r.violations,
    });
    (value, status)
}

fn merge_check(total: &mut CheckReport, part: CheckReport) {
    total.pairs_checked += part.pairs_checked;
    total.triples_checked += part.triples_checked;
    total.violations.extend(part.violations);
}

/// Renders a stored cochain as sorted "psi(x, y) = c" entry strings.
fn cochain_entries(c: &Cochain2) -> Vec<String> {
    match c {
        Cochain2::Stored { entries, .. } => entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((x, y), v)| format!("psi({x}, {y}) = {v}"))
            .collect(),
        other => vec![format!("{other:?}")],
    }
}

/// Renders a linear map as sorted "s |-> image" strings.
fn map_entries(m: &LinearMap) -> Vec<String> {
    m.domain()
        .map(|s| {
            let image = m.image(s).expect("domain symbol has an image");
            format!("{s} |-> {image}")
        })
        .collect()
}

fn random_params(rng: &mut ChaCha8Rng) -> AutParams {
    let eps = if rng.random_bool(0.5) { 1 } else { -1 };
    let lambda = rng.random_range(-3..=3);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let n = rng.random_range(-4..=4i64);
        if n != 0 {
            return n;
        }
    };
    let a = Rational::new(nonzero(rng), rng.random_range(1..=4));
    let d = Rational::new(nonzero(rng), rng.random_range(1..=4));
    AutParams::new(eps, lambda, a, d).expect("nonzero scales")
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Bracket { algebra, x, y } => {
            let alg = parse_algebra(&algebra)?;
            let ex = parse_element(&x).map_err(err)?;
            let ey = parse_element(&y).map_err(err)?;
            let image = algebra::bracket(alg, &ex, &ey).map_err(err)?;
            let result = json!({
                "value": image.to_string(),
                "x": ex.to_string(),
                "y": ey.to_string(),
            });
            Ok(Report::new("bracket", alg.as_str(), 0, result))
        }
        Command::VerifyJacobi(aw) => {
            let alg = parse_algebra(&aw.algebra)?;
            let w = checked_window(aw.window)?;
            let (result, status) = check_result(&algebra::check_jacobi(alg, w));
            Ok(Report::new("verify-jacobi", alg.as_str(), aw.window as i64, result)
                .with_status(status))
        }
        Command::VerifyGrading(aw) => {
            let alg = parse_algebra(&aw.algebra)?;
            let w = checked_window(aw.window)?;
            let (result, status) = check_result(&algebra::check_grading(alg, w));
            Ok(Report::new("verify-grading", alg.as_str(), aw.window as i64, result)
                .with_status(status))
        }
        Command::VerifyIdeal { aw, sub } => {
            let alg = parse_algebra(&aw.algebra)?;
            let sub = parse_algebra(&sub)?;
            let w = checked_window(aw.window)?;
            let report = algebra::check_ideal(alg, sub, w).map_err(err)?;
            let (mut result, status) = check_result(&report);
            result["sub"] = json!(sub.as_str());
            Ok(Report::new("verify-ideal", alg.as_str(), aw.window as i64, result)
                .with_status(status))
        }
        Command::Center { aw, interior } => {
            let alg = parse_algebra(&aw.algebra)?;
            let w = checked_window(aw.window)?;
            let interior = interior.unwrap_or(aw.window / 2);
            let basis = algebra::center(alg, w, interior);
            let result = json!({
                "basis": basis.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "dimension": basis.len(),
                "interior": interior,
            });
            Ok(Report::new("center", alg.as_str(), aw.window as i64, result))
        }
        Command::SolveH2(aw) => {
            let alg = parse_algebra(&aw.algebra)?;
            checked_window(aw.window)?;
            let sol = solve_h2_window(alg, aw.window).map_err(err)?;
            let result = json!({
                "block_dims": sol.block_dims,
                "dimension": sol.dimension,
                "interior": sol.interior,
                "representatives": sol.representatives.iter().map(cochain_entries).collect::<Vec<_>>(),
            });
            Ok(Report::new("solve-h2", alg.as_str(), aw.window as i64, result))
        }
        Command::SolveLeibnizH2(aw) => {
            let alg = parse_algebra(&aw.algebra)?;
            checked_window(aw.window)?;
            let sol = solve_leibniz_h2_window(alg, aw.window).map_err(err)?;
            let result = json!({
                "antisymmetric_class": sol.antisymmetric_class,
                "block_dims": sol.block_dims,
                "dimension": sol.dimension,
                "interior": sol.interior,
            });
            Ok(Report::new("solve-leibniz-h2", alg.as_str(), aw.window as i64, result))
        }
        Command::SolveInvariantForm(aw) => {
            let alg = parse_algebra(&aw.algebra)?;
            checked_window(aw.window)?;
            let sol = solve_invariant_forms(alg, aw.window).map_err(err)?;
            let result = json!({
                "dimension": sol.dimension,
                "interior": sol.interior,
                "representatives": sol.representatives.iter().map(cochain_entries).collect::<Vec<_>>(),
            });
            Ok(Report::new("solve-invariant-form", alg.as_str(), aw.window as i64, result))
        }
        Command::SolveDerivations { degree, window, interior } => match (degree, window) {
            (Some(d), None) => {
                let n2 = parse_degree2(&d)?;
                let sol = solve_der_sv0(n2).map_err(err)?;
                let result = json!({
                    "basis": sol.basis.iter().map(map_entries).collect::<Vec<_>>(),
                    "derivation_dim": sol.der_dim,
                    "inner_dim": sol.inn_dim,
                    "outer_dim": sol.h1_dim,
                    "target_degree2": n2,
                });
                Ok(Report::new("solve-derivations", AlgebraId::Svt.as_str(), 0, result))
            }
            (None, Some(k)) => {
                let w = checked_window(k)?;
                let interior = interior.unwrap_or(k / 2);
                let sol = solve_degree_zero_window(w, interior);
                let result = json!({
                    "degree_zero_dim": sol.dim,
                    "interior": interior,
                });
                Ok(Report::new("solve-derivations", AlgebraId::Svt.as_str(), k as i64, result))
            }
            _ => Err(CliError(
                "pass exactly one of --degree (slice solver) or --window (degree-zero solver)"
                    .to_string(),
            )),
        },
        Command::HomDim { from, to } => {
            let m2 = parse_degree2(&from)?;
            let n2 = parse_degree2(&to)?;
            let sol = solve_hom_sv0(m2, n2);
            let result = json!({
                "basis": sol.basis.iter().map(map_entries).collect::<Vec<_>>(),
                "dimension": sol.dim,
                "from_degree2": m2,
                "to_degree2": n2,
            });
            Ok(Report::new("hom-dim", AlgebraId::Svt.as_str(), 0, result))
        }
        Command::WedgeReduce { window, x, y } => {
            checked_window(window)?;
            let sx = parse_symbol(&x).map_err(err)?;
            let sy = parse_symbol(&y).map_err(err)?;
            let space = WedgeSpace::new(window);
            let nf = space.wedge_normal_form(sx, sy).map_err(err)?;
            let result = json!({
                "input": format!("{sx}^{sy}"),
                "normal_form": nf.to_string(),
            });
            Ok(Report::new("wedge-reduce", AlgebraId::Svt.as_str(), window as i64, result))
        }
        Command::VerifyWedgeRelations { window } => {
            checked_window(window)?;
            let space = WedgeSpace::new(window);
            let (result, status) = check_result(&verify_wedge_relations(&space));
            Ok(Report::new(
                "verify-wedge-relations",
                AlgebraId::Svt.as_str(),
                window as i64,
                result,
            )
            .with_status(status))
        }
        Command::VerifyPrimedTable { window } => {
            checked_window(window)?;
            let space = WedgeSpace::new(window + 2);
            let report = verify_primed_table(&space, window).map_err(err)?;
            let (mut result, status) = check_result(&report);
            result["central_classes"] = json!(central_class_count(&space, window));
            Ok(Report::new(
                "verify-primed-table",
                AlgebraId::Svt.as_str(),
                window as i64,
                result,
            )
            .with_status(status))
        }
        Command::AutApply { params, x } => {
            let p = AutParams::from_str(&params).map_err(err)?;
            let ex = parse_element(&x).map_err(err)?;
            let image = apply_aut(&p, &ex).map_err(err)?;
            let result = json!({
                "image": image.to_string(),
                "params": p.to_string(),
                "x": ex.to_string(),
            });
            Ok(Report::new("aut-apply", AlgebraId::Svt.as_str(), 0, result))
        }
        Command::AutCompose { outer, inner } => {
            let p1 = AutParams::from_str(&outer).map_err(err)?;
            let p2 = AutParams::from_str(&inner).map_err(err)?;
            let c = compose(&p1, &p2);
            let result = json!({
                "composite": c.to_string(),
                "inner": p2.to_string(),
                "outer": p1.to_string(),
            });
            Ok(Report::new("aut-compose", AlgebraId::Svt.as_str(), 0, result))
        }
        Command::AutInverse { params } => {
            let p = AutParams::from_str(&params).map_err(err)?;
            let inv = inverse(&p);
            let result = json!({
                "inverse": inv.to_string(),
                "params": p.to_string(),
            });
            Ok(Report::new("aut-inverse", AlgebraId::Svt.as_str(), 0, result))
        }
        Command::AutVerify { window, samples, seed } => {
            let w = checked_window(window)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut total = CheckReport::default();
            let mut previous: Option<AutParams> = None;
            for _ in 0..samples {
                let p = random_params(&mut rng);
                merge_check(&mut total, check_homomorphism(&p, w));
                merge_check(&mut total, check_lift_homomorphism(&p, w));
                if let Some(q) = previous.take() {
                    merge_check(&mut total, check_compose_agreement(&q, &p, w));
                    merge_check(&mut total, verify_group_relations(&q, &p, w));
                }
                previous = Some(p);
            }
            merge_check(&mut total, check_inner_nilpotency(w));
            let (mut result, status) = check_result(&total);
            result["samples"] = json!(samples);
            result["seed"] = json!(seed);
            Ok(Report::new("aut-verify", AlgebraId::Svt.as_str(), window as i64, result)
                .with_status(status))
        }
        Command::InnerApply { word, x } => {
            let iw = InnerWord::from_str(&word).map_err(err)?;
            let ex = parse_element(&x).map_err(err)?;
            let image = apply_inner(&iw, &ex);
            let result = json!({
                "image": image.to_string(),
                "word": iw.to_string(),
                "x": ex.to_string(),
            });
            Ok(Report::new("inner-apply", AlgebraId::Svt.as_str(), 0, result))
        }
        Command::InnerNormalForm { word } => {
            let iw = InnerWord::from_str(&word).map_err(err)?;
            let nf = inner_coset_normal_form(&iw).map_err(err)?;
            let result = json!({
                "m_sum": nf.m_sum.to_string(),
                "word": iw.to_string(),
                "y_sum": nf.y_sum.to_string(),
            });
            Ok(Report::new("inner-normal-form", AlgebraId::Svt.as_str(), 0, result))
        }
        Command::LiftApply { params, x } => {
            let p = AutParams::from_str(&params).map_err(err)?;
            let ex = parse_element(&x).map_err(err)?;
            let image = lift_apply(&p, &ex);
            let result = json!({
                "image": image.to_string(),
                "params": p.to_string(),
                "x": ex.to_string(),
            });
            Ok(Report::new("lift-apply", AlgebraId::SvHat.as_str(), 0, result))
        }
        Command::Sweep { command, algebra, range } => {
            let alg = parse_algebra(&algebra)?;
            let (lo, hi) = range
                .split_once("..")
                .and_then(|(a, b)| Some((a.trim().parse::<u32>().ok()?, b.trim().parse::<u32>().ok()?)))
                .filter(|(a, b)| a <= b)
                .ok_or_else(|| CliError(format!("bad range {range:?}: expected LO..HI")))?;
            checked_window(hi)?;
            let mut ks = Vec::new();
            let mut values = Vec::new();
            let mut verify_failed = false;
            for k in lo..=hi {
                let w = Window::new(k);
                let value: i64 = match command.as_str() {
                    "verify-jacobi" => {
                        let v = algebra::check_jacobi(alg, w).violations.len() as i64;
                        verify_failed |= v != 0;
                        v
                    }
                    "verify-grading" => {
                        let v = algebra::check_grading(alg, w).violations.len() as i64;
                        verify_failed |= v != 0;
                        v
                    }
                    "center" => algebra::center(alg, w, k / 2).len() as i64,
                    "solve-h2" => solve_h2_window(alg, k).map_err(err)?.dimension as i64,
                    "solve-leibniz-h2" => {
                        solve_leibniz_h2_window(alg, k).map_err(err)?.dimension as i64
                    }
                    "solve-invariant-form" => {
                        solve_invariant_forms(alg, k).map_err(err)?.dimension as i64
                    }
                    "verify-wedge-relations" => {
                        let v = verify_wedge_relations(&WedgeSpace::new(k)).violations.len() as i64;
                        verify_failed |= v != 0;
                        v
                    }
                    other => {
                        return Err(CliError(format!("command {other:?} cannot be swept")));
                    }
                };
                ks.push(k);
                values.push(value);
            }
            let stabilized = values.len() >= 2 && values[values.len() - 1] == values[values.len() - 2];
            let result = json!({
                "command": command,
                "ks": ks,
                "stabilized": stabilized,
                "values": values,
            });
            let status = if verify_failed { Status::Violations } else { Status::Ok };
            Ok(Report::new("sweep", alg.as_str(), hi as i64, result).with_status(status))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.to_json());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
