use std::fmt::Write as _;
use std::path::Path;

use algdecomp::algebra::{run_invariant_suite, AlgMatrix, NormChoice, SpecKind};
use algdecomp::catalog::parse_descriptor;
use algdecomp::jacobi::{aqr, asvd, Beta, DecompReport, Factors, QrOptions, SvdOptions};
use algdecomp::random::{gaussian_matrix, rng_from_seed};
use algdecomp::wedderburn::{
    laurent_embed, rep_cyclic_dft, rep_for_spec, wqr, wsvd, Representation, WedderburnOptions,
};
use serde::Serialize;

use crate::args::{
    BetaArg, DecomposeArgs, InputArgs, Method, NormArg, Op, SolverArgs, SweepArgs, VerifyArgs,
};
use crate::error::{exit, CliError};
use crate::matfile;

fn load(input: &InputArgs) -> Result<AlgMatrix, CliError> {
    match (&input.input, &input.random) {
        (Some(path), _) => {
            let a = matfile::read(path)?;
            if let Some(desc) = &input.algebra {
                let spec = parse_descriptor(desc)?;
                if &spec != a.spec() {
                    return Err(algdecomp::Error::SpecMismatch {
                        left: spec.descriptor().into(),
                        right: a.spec().descriptor().into(),
                    }
                    .into());
                }
            }
            Ok(a)
        }
        (None, Some(shape)) => {
            let desc = input
                .algebra
                .as_deref()
                .ok_or_else(|| CliError::Usage("--random needs --algebra".into()))?;
            let spec = parse_descriptor(desc)?;
            let mut rng = rng_from_seed(input.seed);
            Ok(gaussian_matrix(
                &spec,
                shape[0],
                shape[1],
                &mut rng,
                input.window,
            )?)
        }
        (None, None) => Err(CliError::Usage("give --input FILE or --random M N".into())),
    }
}

/// Matrix handed to one engine, plus the representation used for the
/// representation route and for cost normalisation.
struct Prepared {
    a: AlgMatrix,
    rep: Option<Representation>,
}

fn laurent_vars(a: &AlgMatrix) -> Option<usize> {
    match a.spec().kind() {
        SpecKind::Laurent { vars } => Some(*vars),
        _ => None,
    }
}

fn prepare(a: &AlgMatrix, method: Method, delta: Option<usize>) -> Result<Prepared, CliError> {
    match (laurent_vars(a), method) {
        (Some(vars), Method::Wedderburn) => {
            let delta = delta.ok_or_else(|| {
                CliError::Usage("the representation route on Laurent matrices needs --delta".into())
            })?;
            Ok(Prepared {
                a: laurent_embed(a, delta)?,
                rep: Some(rep_cyclic_dft(vars, delta)?),
            })
        }
        (Some(vars), Method::Jacobi) => Ok(Prepared {
            a: a.clone(),
            rep: delta.and_then(|d| rep_cyclic_dft(vars, d).ok()),
        }),
        (None, Method::Wedderburn) => Ok(Prepared {
            a: a.clone(),
            rep: Some(rep_for_spec(a.spec())?),
        }),
        (None, Method::Jacobi) => Ok(Prepared {
            a: a.clone(),
            rep: rep_for_spec(a.spec()).ok(),
        }),
    }
}

fn resolve(a: &AlgMatrix, solver: &SolverArgs) -> (Beta, NormChoice) {
    let norm = solver.norm.map(|n| match n {
        NormArg::Inf => NormChoice::Inf,
        NormArg::Two => NormChoice::Two,
    });
    let (beta, fallback) = match solver.beta {
        BetaArg::Auto => Beta::recommended(a.spec()),
        BetaArg::Basis => (Beta::Basis, NormChoice::Inf),
        BetaArg::Division => (Beta::Division, NormChoice::Two),
    };
    (beta, norm.unwrap_or(fallback))
}

/// Runs one decomposition. A Jacobi run that hits its iteration limit comes
/// back as `Ok((partial, false))`; a failed representation block is an error.
fn run(
    prep: &Prepared,
    method: Method,
    eps: f64,
    solver: &SolverArgs,
    beta: &Beta,
    norm: NormChoice,
) -> Result<(DecompReport, bool), CliError> {
    let outcome = match method {
        Method::Jacobi => {
            let qr = QrOptions::new(beta.clone(), norm, eps)
                .with_max_sweeps(solver.max_sweeps)
                .with_trim(solver.trim);
            match solver.op {
                Op::Qr => aqr(&prep.a, &qr),
                Op::Svd => asvd(
                    &prep.a,
                    &SvdOptions::new(qr).with_max_iters(solver.max_iters),
                ),
            }
        }
        Method::Wedderburn => {
            let rep = prep.rep.as_ref().expect("prepared with a representation");
            let opts = WedderburnOptions::new(eps)
                .with_norm(norm)
                .with_max_sweeps(solver.max_sweeps)
                .with_max_iters(solver.max_iters)
                .with_workers(solver.workers);
            match solver.op {
                Op::Qr => wqr(&prep.a, rep, &opts),
                Op::Svd => wsvd(&prep.a, rep, &opts),
            }
        }
    };
    match outcome {
        Ok(r) => Ok((r, true)),
        Err(algdecomp::Error::NotConverged { partial, .. }) => Ok((*partial, false)),
        Err(e) => Err(e.into()),
    }
}

fn normalized_cost(method: Method, rotations: usize, rep: Option<&Representation>) -> f64 {
    match method {
        Method::Jacobi => rotations as f64 * rep.map_or(1.0, Representation::cost_ratio),
        Method::Wedderburn => rotations as f64,
    }
}

fn op_name(op: Op) -> &'static str {
    match op {
        Op::Qr => "qr",
        Op::Svd => "svd",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Jacobi => "jacobi",
        Method::Wedderburn => "wedderburn",
    }
}

fn norm_name(n: NormChoice) -> &'static str {
    match n {
        NormChoice::Inf => "inf",
        NormChoice::Two => "two",
    }
}

#[derive(Serialize)]
struct Summary {
    algebra: String,
    op: &'static str,
    method: &'static str,
    rows: usize,
    cols: usize,
    eps: f64,
    norm: &'static str,
    beta: String,
    converged: bool,
    rotations: usize,
    sweeps: usize,
    qrd_calls: usize,
    normalized_cost: f64,
    /// Max below-diagonal (QR) or off-diagonal (SVD) entry norm.
    residual: f64,
    reconstruction_error: f64,
    relative_reconstruction_error: f64,
    unitarity_error: f64,
    trimmed: usize,
    stalls: usize,
    notes: Vec<String>,
    warnings: Vec<String>,
}

fn write_factors(
    dir: &Path,
    input: &AlgMatrix,
    report: &DecompReport,
    summary: &Summary,
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    matfile::write(&dir.join("a.jsonl"), input)?;
    let factors: Vec<(&str, &AlgMatrix)> = match &report.factors {
        Factors::Qr { q, r } => vec![("q", q), ("r", r)],
        Factors::Svd { u, d, v } => vec![("u", u), ("d", d), ("v", v)],
    };
    for (name, m) in factors {
        matfile::write(&dir.join(format!("{name}.jsonl")), m)?;
    }
    let path = dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))
}

pub fn decompose(args: &DecomposeArgs) -> Result<u8, CliError> {
    let input = load(&args.input)?;
    let prep = prepare(&input, args.method, args.solver.delta)?;
    let (beta, norm) = resolve(&input, &args.solver);
    let (report, converged) = run(&prep, args.method, args.eps, &args.solver, &beta, norm)?;

    let recon = report.reconstruction_error(&prep.a)?;
    let scale = prep.a.frob();
    let relative = if scale > 0.0 { recon / scale } else { recon };
    let summary = Summary {
        algebra: prep.a.spec().descriptor().into(),
        op: op_name(args.solver.op),
        method: method_name(args.method),
        rows: input.rows(),
        cols: input.cols(),
        eps: args.eps,
        norm: norm_name(norm),
        beta: match args.method {
            Method::Jacobi => format!("{beta:?}").to_lowercase(),
            Method::Wedderburn => "division (blocks)".into(),
        },
        converged,
        rotations: report.rotations,
        sweeps: report.sweeps,
        qrd_calls: report.qrd_calls,
        normalized_cost: normalized_cost(args.method, report.rotations, prep.rep.as_ref()),
        residual: report.residual,
        reconstruction_error: recon,
        relative_reconstruction_error: relative,
        unitarity_error: report.unitarity_error()?,
        trimmed: report.trimmed,
        stalls: report.stalls,
        notes: report.notes.clone(),
        warnings: report.warnings.clone(),
    };
    if let Some(dir) = &args.out_dir {
        write_factors(dir, &input, &report, &summary)?;
    }
    print_summary(&summary, &report);

    if !converged {
        eprintln!(
            "error: did not converge (residual {:e} > eps {:e}); partial factors were reported",
            report.residual, args.eps
        );
        return Ok(exit::NOT_CONVERGED);
    }
    let mut broken = Vec::new();
    if summary.residual > args.eps {
        broken.push(format!(
            "residual {:e} exceeds eps {:e}",
            summary.residual, args.eps
        ));
    }
    if relative.is_nan() || relative > args.recon_tol {
        broken.push(format!(
            "relative reconstruction error {relative:e} exceeds {:e}",
            args.recon_tol
        ));
    }
    if summary.unitarity_error.is_nan() || summary.unitarity_error > args.unitarity_tol {
        broken.push(format!(
            "unitarity error {:e} exceeds {:e}",
            summary.unitarity_error, args.unitarity_tol
        ));
    }
    if broken.is_empty() {
        Ok(exit::OK)
    } else {
        Err(CliError::Contract(broken.join("; ")))
    }
}

fn print_summary(s: &Summary, report: &DecompReport) {
    let kind = match s.op {
        "qr" => "max below-diagonal",
        _ => "max off-diagonal",
    };
    println!("algebra: {}", s.algebra);
    println!("operation: {} ({}), {}x{}", s.op, s.method, s.rows, s.cols);
    println!("eps: {:e} (norm {}, beta {})", s.eps, s.norm, s.beta);
    println!("converged: {}", s.converged);
    println!("rotations: {}", s.rotations);
    println!("sweeps: {}", s.sweeps);
    if s.op == "svd" {
        println!("qrd calls: {}", s.qrd_calls);
    }
    println!("normalized cost: {}", s.normalized_cost);
    println!("{kind}: {:e}", s.residual);
    println!(
        "reconstruction error: {:e} (relative {:e})",
        s.reconstruction_error, s.relative_reconstruction_error
    );
    println!("unitarity error: {:e}", s.unitarity_error);
    if s.trimmed > 0 {
        println!("trimmed coefficients: {}", s.trimmed);
    }
    for b in &report.blocks {
        println!(
            "block {}^{}x{}: {} rotations, residual {:e}",
            b.field, b.size, b.size, b.rotations, b.residual
        );
    }
    for n in &s.notes {
        println!("note: {n}");
    }
    for w in &s.warnings {
        println!("warning: {w}");
    }
    println!("elapsed: {:.3?}", report.elapsed);
}

pub const CSV_HEADER: &str =
    "epsilon,method,rotations,sweeps,qrd_calls,normalized_cost,reconstruction_error,unitarity_error";

pub fn sweep_eps(args: &SweepArgs) -> Result<u8, CliError> {
    let input = load(&args.input)?;
    let grid: Vec<f64> = if args.eps.is_empty() {
        (2..=12).map(|k| 10f64.powi(-k)).collect()
    } else {
        args.eps.clone()
    };
    if args.methods.is_empty() {
        return Err(CliError::Usage("no methods selected".into()));
    }
    let (beta, norm) = resolve(&input, &args.solver);
    let mut prepared = Vec::new();
    for &m in &args.methods {
        prepared.push((m, prepare(&input, m, args.solver.delta)?));
    }
    // Both routes report cost in rotations of the cheapest route's field.
    let ratio_rep = prepared.iter().find_map(|(_, p)| p.rep.as_ref());

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut unconverged = 0;
    for &eps in &grid {
        for (m, prep) in &prepared {
            let (report, converged) = run(prep, *m, eps, &args.solver, &beta, norm)?;
            if !converged {
                unconverged += 1;
                eprintln!(
                    "warning: {} at eps {eps:e} stopped at the iteration limit",
                    method_name(*m)
                );
            }
            writeln!(
                csv,
                "{eps:e},{},{},{},{},{},{:e},{:e}",
                method_name(*m),
                report.rotations,
                report.sweeps,
                report.qrd_calls,
                normalized_cost(*m, report.rotations, ratio_rep),
                report.reconstruction_error(&prep.a)?,
                report.unitarity_error()?,
            )
            .expect("writing to a string");
        }
    }
    match &args.output {
        Some(path) => std::fs::write(path, &csv).map_err(|e| CliError::io(path, e))?,
        None => print!("{csv}"),
    }
    Ok(if unconverged > 0 {
        exit::NOT_CONVERGED
    } else {
        exit::OK
    })
}

pub fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let spec = parse_descriptor(&args.algebra)?;
    println!("algebra: {}", spec.descriptor());
    let mut failed = 0;
    for outcome in run_invariant_suite(&spec, args.seed) {
        if !outcome.passed {
            failed += 1;
        }
        println!("{outcome}");
    }
    match rep_for_spec(&spec) {
        Ok(rep) => println!(
            "[PASS] {:<22} {} {}",
            "representation",
            rep.name(),
            rep.verification()
        ),
        Err(algdecomp::Error::Unsupported(why)) => {
            println!("[----] {:<22} none cataloged ({why})", "representation")
        }
        Err(e) => {
            failed += 1;
            println!("[FAIL] {:<22} {e}", "representation");
        }
    }
    if failed > 0 {
        Err(CliError::Contract(format!("{failed} check(s) failed")))
    } else {
        Ok(exit::OK)
    }
}
