use std::time::Instant;

use rayon::prelude::*;

use super::field::FieldMatrix;
use super::rep::Representation;
use crate::algebra::{AlgMatrix, NormChoice};
use crate::error::{Error, Result};
use crate::jacobi::{
    aqr, asvd, Beta, BlockStats, DecompReport, Factors, QrOptions, SvdOptions,
    DEFAULT_MAX_QRD_CALLS, DEFAULT_MAX_SWEEPS,
};

#[derive(Clone, Debug)]
pub struct WedderburnOptions {
    /// Tolerance on the unlifted factors, measured in `norm`.
    pub eps: f64,
    pub norm: NormChoice,
    pub max_sweeps: usize,
    pub max_iters: usize,
    /// Worker threads for the blocks; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl WedderburnOptions {
    pub fn new(eps: f64) -> Self {
        WedderburnOptions {
            eps,
            norm: NormChoice::Inf,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            max_iters: DEFAULT_MAX_QRD_CALLS,
            workers: None,
        }
    }

    pub fn with_norm(mut self, norm: NormChoice) -> Self {
        self.norm = norm;
        self
    }

    pub fn with_max_sweeps(mut self, max_sweeps: usize) -> Self {
        self.max_sweeps = max_sweeps;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_workers(mut self, workers: Option<usize>) -> Self {
        self.workers = workers;
        self
    }
}

/// Tolerance handed to every block so that unlifted entries meet `opts.eps`.
pub fn block_tolerance(rep: &Representation, opts: &WedderburnOptions) -> f64 {
    opts.eps / rep.tolerance_factor(opts.norm)
}

struct BlockResult {
    factors: Vec<FieldMatrix>,
    report: DecompReport,
}

fn run_blocks(
    n: usize,
    workers: Option<usize>,
    job: impl Fn(usize) -> Result<BlockResult> + Sync + Send,
) -> Result<Vec<BlockResult>> {
    let run = || (0..n).into_par_iter().map(&job).collect::<Vec<_>>();
    let results = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::usage(format!("cannot start {w} workers: {e}")))?
            .install(run),
        None => run(),
    };
    // Lowest failing block wins, independent of scheduling.
    results
        .into_iter()
        .enumerate()
        .map(|(block, r)| {
            r.map_err(|e| Error::Block {
                block,
                source: Box::new(e),
            })
        })
        .collect()
}

fn check_input(a: &AlgMatrix, rep: &Representation, opts: &WedderburnOptions) -> Result<()> {
    if a.spec() != rep.source() {
        return Err(Error::SpecMismatch {
            left: rep.source().descriptor().to_string(),
            right: a.spec().descriptor().to_string(),
        });
    }
    if opts.eps.is_nan() || opts.eps < 0.0 {
        return Err(Error::usage(format!(
            "tolerance must be non-negative, got {}",
            opts.eps
        )));
    }
    Ok(())
}

fn assemble(
    results: &[BlockResult],
    rep: &Representation,
    factors: Factors,
    residual: f64,
    opts: &WedderburnOptions,
    started: Instant,
) -> DecompReport {
    let mut warnings = Vec::new();
    let blocks = results
        .iter()
        .zip(rep.blocks())
        .enumerate()
        .map(|(l, (r, b))| {
            for w in &r.report.warnings {
                let w = format!("block {l}: {w}");
                if warnings.len() < 16 && !warnings.contains(&w) {
                    warnings.push(w);
                }
            }
            BlockStats {
                field: b.field.tag(),
                size: b.size,
                rotations: r.report.rotations,
                sweeps: r.report.sweeps,
                qrd_calls: r.report.qrd_calls,
                residual: r.report.residual,
            }
        })
        .collect::<Vec<_>>();
    DecompReport {
        factors,
        rotations: blocks.iter().map(|b| b.rotations).sum(),
        sweeps: blocks.iter().map(|b| b.sweeps).sum(),
        qrd_calls: blocks.iter().map(|b| b.qrd_calls).sum(),
        residual,
        residual_norm: opts.norm,
        elapsed: started.elapsed(),
        stalls: results.iter().map(|r| r.report.stalls).sum(),
        trimmed: 0,
        warnings,
        notes: Vec::new(),
        trace: Vec::new(),
        blocks,
    }
}

fn block_qr_options(beps: f64, opts: &WedderburnOptions) -> QrOptions {
    QrOptions::new(Beta::Division, NormChoice::Two, beps).with_max_sweeps(opts.max_sweeps)
}

/// QR through the representation: every block is decomposed over its field
/// with the division β, then `Q` and `R` are mapped back.
pub fn wqr(a: &AlgMatrix, rep: &Representation, opts: &WedderburnOptions) -> Result<DecompReport> {
    check_input(a, rep, opts)?;
    let started = Instant::now();
    let lifted = rep.lift(a)?;
    let beps = block_tolerance(rep, opts);
    let results = run_blocks(lifted.len(), opts.workers, |l| {
        let block = &lifted[l];
        let report = aqr(&block.to_alg(), &block_qr_options(beps, opts))?;
        let field = block.field();
        let q = FieldMatrix::from_alg(field, report.q().expect("QR factors"))?;
        let r = FieldMatrix::from_alg(field, report.r().expect("QR factors"))?;
        Ok(BlockResult {
            factors: vec![q, r],
            report,
        })
    })?;
    let (m, n) = a.shape();
    let take = |k: usize| {
        results
            .iter()
            .map(|r| r.factors[k].clone())
            .collect::<Vec<_>>()
    };
    let q = rep.unlift(&take(0), m, m)?;
    let r = rep.unlift(&take(1), m, n)?;
    let residual = r.max_below_diag(opts.norm);
    Ok(assemble(
        &results,
        rep,
        Factors::Qr { q, r },
        residual,
        opts,
        started,
    ))
}

/// Reorders the first `min(m, n)` singular triples so diagonal norms descend.
fn sort_block(u: &mut FieldMatrix, d: &mut FieldMatrix, v: &mut FieldMatrix) {
    let p = d.rows().min(d.cols());
    let norms: Vec<f64> = (0..p)
        .map(|i| d.entry(i, i).iter().map(|x| x * x).sum::<f64>())
        .collect();
    let mut perm: Vec<usize> = (0..p).collect();
    perm.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    if perm.iter().enumerate().all(|(i, &j)| i == j) {
        return;
    }
    let full = |n: usize| -> Vec<usize> { perm.iter().copied().chain(p..n).collect() };
    let (pr, pc) = (full(d.rows()), full(d.cols()));
    let old = d.clone();
    for (i, &si) in pr.iter().enumerate() {
        for (j, &sj) in pc.iter().enumerate() {
            d.entry_mut(i, j).copy_from_slice(old.entry(si, sj));
        }
    }
    let permute_cols = |x: &mut FieldMatrix, cols: &[usize]| {
        let old = x.clone();
        for i in 0..x.rows() {
            for (j, &src) in cols.iter().enumerate() {
                x.entry_mut(i, j).copy_from_slice(old.entry(i, src));
            }
        }
    };
    permute_cols(u, &pr);
    permute_cols(v, &pc);
}

/// Labels carrying non-negligible weight on the diagonal of `d`.
fn diagonal_support(d: &AlgMatrix) -> Vec<String> {
    let p = d.rows().min(d.cols());
    let scale = (0..p).map(|i| d[(i, i)].norm_inf()).fold(0.0, f64::max);
    let mut labels = std::collections::BTreeSet::new();
    for i in 0..p {
        for (l, c) in d[(i, i)].terms() {
            if c.abs() > 1e-8 * scale {
                labels.insert(l.clone());
            }
        }
    }
    labels.iter().map(|l| d.spec().render(l)).collect()
}

/// SVD through the representation. Singular values are sorted in descending
/// order inside each block before unlifting.
pub fn wsvd(a: &AlgMatrix, rep: &Representation, opts: &WedderburnOptions) -> Result<DecompReport> {
    check_input(a, rep, opts)?;
    if opts.eps <= 0.0 {
        return Err(Error::usage("the SVD needs a positive tolerance"));
    }
    let started = Instant::now();
    let lifted = rep.lift(a)?;
    let beps = block_tolerance(rep, opts);
    let results = run_blocks(lifted.len(), opts.workers, |l| {
        let block = &lifted[l];
        let svd_opts = SvdOptions::new(block_qr_options(beps, opts)).with_max_iters(opts.max_iters);
        let report = asvd(&block.to_alg(), &svd_opts)?;
        let field = block.field();
        let mut u = FieldMatrix::from_alg(field, report.u().expect("SVD factors"))?;
        let mut d = FieldMatrix::from_alg(field, report.d().expect("SVD factors"))?;
        let mut v = FieldMatrix::from_alg(field, report.v().expect("SVD factors"))?;
        sort_block(&mut u, &mut d, &mut v);
        Ok(BlockResult {
            factors: vec![u, d, v],
            report,
        })
    })?;
    let (m, n) = a.shape();
    let take = |k: usize| {
        results
            .iter()
            .map(|r| r.factors[k].clone())
            .collect::<Vec<_>>()
    };
    let u = rep.unlift(&take(0), m, m)?;
    let d = rep.unlift(&take(1), m, n)?;
    let v = rep.unlift(&take(2), n, n)?;
    let residual = d.max_off_diag(opts.norm);
    let support = diagonal_support(&d);
    let mut report = assemble(
        &results,
        rep,
        Factors::Svd { u, d, v },
        residual,
        opts,
        started,
    );
    let shown = if support.len() > 8 {
        format!("{}, ...", support[..8].join(", "))
    } else {
        support.join(", ")
    };
    report.notes.push(format!(
        "diagonal of D is supported on {} basis element(s): {shown}",
        support.len()
    ));
    Ok(report)
}
