use std::time::Instant;

use super::beta::Beta;
use super::givens::{rotate_cols, rotate_rows, shift_col, shift_row};
use super::report::{DecompReport, Factors, TracePoint};
use crate::algebra::{AlgMatrix, Element, NormChoice};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SWEEPS: usize = 200;

/// A rotation whose guaranteed gain in `Re(r_kk)²` falls below this is
/// treated as no progress.
const STALL_GAIN: f64 = 1e-30;

#[derive(Clone, Debug)]
pub struct QrOptions {
    pub beta: Beta,
    pub norm: NormChoice,
    pub eps: f64,
    pub max_sweeps: usize,
    /// Relative coefficient trim applied to rotated entries; 0 disables it.
    pub trim: f64,
    /// Record `Re(r₁₁)²` and `‖R‖²_F` after every step.
    pub trace: bool,
}

impl QrOptions {
    pub fn new(beta: Beta, norm: NormChoice, eps: f64) -> Self {
        QrOptions {
            beta,
            norm,
            eps,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            trim: 0.0,
            trace: false,
        }
    }

    pub fn with_max_sweeps(mut self, max_sweeps: usize) -> Self {
        self.max_sweeps = max_sweeps;
        self
    }

    pub fn with_trim(mut self, trim: f64) -> Self {
        self.trim = trim;
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }
}

pub(crate) struct QrRun {
    pub q: AlgMatrix,
    pub r: AlgMatrix,
    pub rotations: usize,
    pub sweeps: usize,
    pub stalls: usize,
    pub trimmed: usize,
    pub warnings: Vec<String>,
    pub trace: Vec<TracePoint>,
    pub converged: bool,
}

impl QrRun {
    fn into_report(self, opts: &QrOptions, started: Instant) -> DecompReport {
        DecompReport {
            residual: self.r.max_below_diag(opts.norm),
            residual_norm: opts.norm,
            factors: Factors::Qr {
                q: self.q,
                r: self.r,
            },
            rotations: self.rotations,
            sweeps: self.sweeps,
            qrd_calls: 0,
            elapsed: started.elapsed(),
            stalls: self.stalls,
            trimmed: self.trimmed,
            warnings: self.warnings,
            notes: Vec::new(),
            trace: self.trace,
            blocks: Vec::new(),
        }
    }
}

pub(crate) fn validate(a: &AlgMatrix, opts: &QrOptions) -> Result<()> {
    opts.beta.validate(a.spec())?;
    if opts.eps.is_nan() || opts.eps < 0.0 {
        return Err(Error::usage(format!(
            "tolerance must be non-negative, got {}",
            opts.eps
        )));
    }
    if opts.eps == 0.0 && !opts.beta.annihilates_exactly(a.spec()) {
        return Err(Error::usage(
            "a zero tolerance needs R, C or H with the division β",
        ));
    }
    if opts.max_sweeps == 0 {
        return Err(Error::usage("max_sweeps must be at least 1"));
    }
    if opts.trim.is_nan() || opts.trim < 0.0 {
        return Err(Error::usage("trim must be non-negative"));
    }
    Ok(())
}

fn trace_point(r: &AlgMatrix) -> TracePoint {
    let re = r[(0, 0)].re();
    TracePoint {
        re_r11_sq: re * re,
        frob_sq: r.frob().powi(2),
    }
}

/// QR by columns. Always returns factors; `converged` is false when the
/// sweep limit was hit.
pub(crate) fn aqr_core(a: &AlgMatrix, opts: &QrOptions) -> QrRun {
    let spec = a.spec().clone();
    let (m, n) = a.shape();
    let p = m.min(n);
    let exact = opts.beta.annihilates_exactly(&spec);
    let mut r = a.clone();
    let mut q = AlgMatrix::identity(&spec, m).expect("positive size");
    let mut run_trace = Vec::new();
    let mut rotations = 0;
    let mut sweeps = 0;
    let mut stalls = 0;
    let mut trimmed = 0;
    let mut warnings: Vec<String> = Vec::new();
    let warn = |w: String, warnings: &mut Vec<String>| {
        if warnings.len() < 16 && !warnings.contains(&w) {
            warnings.push(w);
        }
    };

    let mut g1 = r.max_below_diag(opts.norm);
    let mut converged = true;
    // At least one sweep, as with g₁ initialised to 1 + ε.
    let mut first = true;
    while first || g1 > opts.eps {
        first = false;
        if sweeps == opts.max_sweeps {
            converged = false;
            break;
        }
        sweeps += 1;
        for k in 0..p {
            // Pre-shift: make Re(r_kk) as large as β allows.
            let b = opts.beta.eval_unchecked(&r[(k, k)]);
            let bc = b.conj();
            let before = r[(k, k)].re().abs();
            shift_row(&mut r, &bc, k);
            shift_col(&mut q, &b, k);
            if r[(k, k)].re().abs() < before * (1.0 - 1e-12) {
                warn(
                    format!("β decreased |Re| of a pivot (column {k}); β may not be decent"),
                    &mut warnings,
                );
            }
            if opts.trace {
                run_trace.push(trace_point(&r));
            }
            if k == m - 1 {
                break;
            }
            loop {
                let mut i = k + 1;
                let mut g2 = r[(i, k)].norm(opts.norm);
                for l in k + 2..m {
                    let v = r[(l, k)].norm(opts.norm);
                    if v > g2 {
                        g2 = v;
                        i = l;
                    }
                }
                if g2 <= opts.eps {
                    break;
                }
                let b = opts.beta.eval_unchecked(&r[(i, k)]);
                let bc = b.conj();
                let x = bc.re_mul(&r[(i, k)]);
                let y = r[(k, k)].re();
                if x == 0.0 || (!exact && x * x < STALL_GAIN) {
                    stalls += 1;
                    if x == 0.0 {
                        warn(
                            format!(
                                "Re(conj(β(a))·a) = 0 for a non-negligible entry in column {k}"
                            ),
                            &mut warnings,
                        );
                    }
                    break;
                }
                let theta = x.atan2(y);
                rotate_rows(&mut r, -theta, &b, &bc, i, k);
                rotate_cols(&mut q, theta, &b, &bc, i, k);
                if exact {
                    r[(i, k)] = Element::zero(&spec);
                }
                if opts.trim > 0.0 {
                    for col in 0..n {
                        trimmed += r[(i, col)].trim(opts.trim);
                        trimmed += r[(k, col)].trim(opts.trim);
                    }
                    for row in 0..m {
                        trimmed += q[(row, i)].trim(opts.trim);
                        trimmed += q[(row, k)].trim(opts.trim);
                    }
                }
                rotations += 1;
                if opts.trace {
                    run_trace.push(trace_point(&r));
                }
            }
        }
        g1 = r.max_below_diag(opts.norm);
    }

    // Make the real parts of the diagonal non-negative.
    let minus_one = Element::scalar(&spec, -1.0);
    for k in 0..p {
        if r[(k, k)].re() < 0.0 {
            shift_row(&mut r, &minus_one, k);
            shift_col(&mut q, &minus_one, k);
        }
    }
    if stalls > 0 {
        warn(
            format!("{stalls} inner iteration(s) stopped without progress"),
            &mut warnings,
        );
    }

    QrRun {
        q,
        r,
        rotations,
        sweeps,
        stalls,
        trimmed,
        warnings,
        trace: run_trace,
        converged,
    }
}

/// QR decomposition by columns with A-Givens rotations.
///
/// Returns `Q` unitary and `R` with every below-diagonal entry of norm at
/// most `eps`. With `eps = 0` on R, C or H (division β) each rotation zeroes
/// its entry exactly and `R` is exactly triangular after one sweep.
pub fn aqr(a: &AlgMatrix, opts: &QrOptions) -> Result<DecompReport> {
    validate(a, opts)?;
    let started = Instant::now();
    let run = aqr_core(a, opts);
    let converged = run.converged;
    let report = run.into_report(opts, started);
    if !converged {
        return Err(Error::NotConverged {
            stage: "QR",
            limit: opts.max_sweeps,
            residual: report.residual,
            partial: Box::new(report),
        });
    }
    Ok(report)
}
