use std::time::Instant;

use super::qr::{aqr_core, validate, QrOptions};
use super::report::{DecompReport, Factors};
use crate::algebra::AlgMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_QRD_CALLS: usize = 500;

#[derive(Clone, Debug)]
pub struct SvdOptions {
    /// Options for every inner QR; its `eps` is also the SVD tolerance.
    pub qr: QrOptions,
    /// Limit on inner QR decompositions.
    pub max_iters: usize,
}

impl SvdOptions {
    pub fn new(qr: QrOptions) -> Self {
        SvdOptions {
            qr,
            max_iters: DEFAULT_MAX_QRD_CALLS,
        }
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }
}

/// SVD by alternating QR decompositions of `D` and `D^H`.
///
/// Returns `A = U D V^H` with `U`, `V` unitary and every off-diagonal entry
/// of `D` of norm at most `eps`. Diagonal entries are left in the order the
/// iteration produces them.
pub fn asvd(a: &AlgMatrix, opts: &SvdOptions) -> Result<DecompReport> {
    validate(a, &opts.qr)?;
    if opts.qr.eps <= 0.0 {
        return Err(Error::usage("the SVD needs a positive tolerance"));
    }
    if opts.max_iters == 0 {
        return Err(Error::usage("max_iters must be at least 1"));
    }
    let started = Instant::now();
    let spec = a.spec().clone();
    let norm = opts.qr.norm;
    let mut u = AlgMatrix::identity(&spec, a.rows())?;
    let mut v = AlgMatrix::identity(&spec, a.cols())?;
    let mut d = a.clone();
    let mut report = DecompReport {
        factors: Factors::Svd {
            u: u.clone(),
            d: d.clone(),
            v: v.clone(),
        },
        rotations: 0,
        sweeps: 0,
        qrd_calls: 0,
        residual: d.max_off_diag(norm),
        residual_norm: norm,
        elapsed: Default::default(),
        stalls: 0,
        trimmed: 0,
        warnings: Vec::new(),
        notes: Vec::new(),
        trace: Vec::new(),
        blocks: Vec::new(),
    };
    let mut qr_opts = opts.qr.clone();
    qr_opts.trace = false;

    let mut g = report.residual;
    let mut failed = false;
    while g > opts.qr.eps {
        if report.qrd_calls + 2 > opts.max_iters {
            failed = true;
            break;
        }
        for transpose in [false, true] {
            let input = if transpose { d.herm() } else { d };
            let run = aqr_core(&input, &qr_opts);
            report.qrd_calls += 1;
            report.rotations += run.rotations;
            report.sweeps += run.sweeps;
            report.stalls += run.stalls;
            report.trimmed += run.trimmed;
            for w in run.warnings {
                if report.warnings.len() < 16 && !report.warnings.contains(&w) {
                    report.warnings.push(w);
                }
            }
            let acc = if transpose {
                d = run.r.herm();
                v = v.matmul(&run.q)?;
                &mut v
            } else {
                d = run.r;
                u = u.matmul(&run.q)?;
                &mut u
            };
            if qr_opts.trim > 0.0 {
                report.trimmed += acc.trim(qr_opts.trim);
            }
            if !run.converged {
                failed = true;
            }
        }
        g = d.max_off_diag(norm);
        if failed {
            break;
        }
    }

    report.residual = g;
    report.factors = Factors::Svd { u, d, v };
    report.elapsed = started.elapsed();
    if failed {
        return Err(Error::NotConverged {
            stage: "SVD",
            limit: opts.max_iters,
            residual: g,
            partial: Box::new(report),
        });
    }
    Ok(report)
}
