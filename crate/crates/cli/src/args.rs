use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "algdecomp",
    version,
    about = "QR and SVD of matrices over real *-algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor one matrix and write the factors.
    Decompose(DecomposeArgs),
    /// Rotation counts against a grid of tolerances, as CSV.
    SweepEps(SweepArgs),
    /// Run the invariant checks of an algebra and of its representation.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Qr,
    Svd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Jacobi,
    Wedderburn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Inf,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BetaArg {
    /// Division β with the two-norm on R, C and H; basis β with the sup-norm elsewhere.
    Auto,
    Basis,
    Division,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Algebra descriptor: real, complex, quat, cl(p,q), laurent(k), cyclic(k,delta), quadquat, biquat.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Matrix file to factor.
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Random m x n matrix with i.i.d. standard Gaussian coefficients.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    pub random: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Laurent exponent window for random entries: exponents in [-w, w].
    #[arg(long, default_value_t = 2)]
    pub window: i32,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value_t = Op::Qr)]
    pub op: Op,
    /// Norm for tolerances and residuals [default: from --beta auto, else inf].
    #[arg(long, value_enum)]
    pub norm: Option<NormArg>,
    #[arg(long, value_enum, default_value_t = BetaArg::Auto)]
    pub beta: BetaArg,
    #[arg(long, default_value_t = algdecomp::jacobi::DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: usize,
    /// Limit on QR calls in an SVD.
    #[arg(long, default_value_t = algdecomp::jacobi::DEFAULT_MAX_QRD_CALLS)]
    pub max_iters: usize,
    /// Drop coefficients below trim * ‖entry‖∞ after each rotation.
    #[arg(long, default_value_t = 0.0)]
    pub trim: f64,
    /// Cyclic modulus for the representation route on Laurent matrices.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Worker threads for representation blocks [default: all cores].
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Method::Jacobi)]
    pub method: Method,
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    /// Directory for the input matrix, the factors and summary.json.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Largest accepted frob(A - reconstruction) / frob(A).
    #[arg(long, default_value_t = 1e-8)]
    pub recon_tol: f64,
    /// Largest accepted ‖X^H X - I‖_F of a unitary factor.
    #[arg(long, default_value_t = 1e-8)]
    pub unitarity_tol: f64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Tolerances to run [default: 1e-2, 1e-3, ..., 1e-12].
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Method::Jacobi, Method::Wedderburn])]
    pub methods: Vec<Method>,
    /// CSV destination [default: stdout].
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub algebra: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
