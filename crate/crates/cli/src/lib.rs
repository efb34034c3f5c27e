//! Command-line front end for `leafkit-core`.
//!
//! Every subcommand reads JSON matrix files, runs one family of checks and
//! prints a single JSON report on stdout. Exit codes: `0` when every
//! contract in the report holds, `1` when one fails, `2` for usage and
//! input errors, `3` when the inputs fail a numerical precondition.

mod commands;
pub mod error;
pub mod matrix_file;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

pub use error::{CliError, EXIT_CONTRACT, EXIT_NUMERICAL, EXIT_PASS, EXIT_USAGE};
pub use report::Report;

/// Environment variable supplying the seed when `--seed` is absent.
pub const SEED_ENV: &str = "LEAFKIT_SEED";

#[derive(Debug, Parser)]
#[command(name = "leafkit", version, about = "Operator ideals, unitary orbits and their cross-sections")]
pub struct Cli {
    /// Seed for sampled checks; falls back to LEAFKIT_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// Norming function syntax: `sum`, `max`, `schatten:p`, `schatten:inf`,
/// `lorentz:power:a`, `lorentz-dual:power:a`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ideal norm ‖A‖_Φ.
    Norm {
        #[arg(long, default_value = "sum")]
        phi: String,
        matrix: PathBuf,
    },
    /// Trace pairing |Tr(TS)| against ‖T‖_Φ* ‖S‖_Φ.
    DualCheck {
        #[arg(long, default_value = "sum")]
        phi: String,
        t: PathBuf,
        s: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Closed-form adjoint Φ* and a sampled check of its defining supremum.
    Adjoint {
        #[arg(long, default_value = "sum")]
        phi: String,
        /// Comma-separated sequence η; random when absent.
        #[arg(long)]
        eta: Option<String>,
        #[arg(long, default_value_t = 8)]
        len: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// ‖F₁−F₂‖ ≤ ‖F₁−F₂‖_Φ ≤ 2k‖F₁−F₂‖ for rank ≤ k inputs.
    Sandwich {
        #[arg(long, default_value = "sum")]
        phi: String,
        #[arg(long)]
        k: usize,
        f1: PathBuf,
        f2: PathBuf,
    },
    /// Regularity ratios (π₁+…+π_n)/(nπ_n) up to a horizon.
    PiRegularity {
        /// `constant`, `power:a` or `prefix:p1,p2,…:power:a`.
        #[arg(long, default_value = "power:0.5")]
        pi: String,
        #[arg(long, default_value_t = leafkit_core::norming::DEFAULT_HORIZON)]
        horizon: usize,
    },
    /// Support projection of a positive functional.
    Support {
        rho: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Jordan decomposition; with --unitary, the fixed-point equivalence.
    Jordan {
        rho: PathBuf,
        #[arg(long)]
        unitary: Option<PathBuf>,
    },
    /// Centralizer basis; with --unitary, the support-block equivalence.
    Centralizer {
        rho: PathBuf,
        #[arg(long)]
        unitary: Option<PathBuf>,
    },
    /// Whether a positive functional is faithful.
    Faithful {
        rho: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Pinching Σ E_i S E_i along the spectral projections of T.
    Pinch { t: PathBuf, s: PathBuf },
    /// Kernel/range splitting of ad T on skew-Hermitian matrices.
    Split { t: PathBuf },
    /// ω_T(X, Y) = Tr(T[X, Y]).
    Omega { t: PathBuf, x: PathBuf, y: PathBuf },
    /// Radical of ω_T against the isotropy algebra of T.
    Radical {
        t: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Complex polarization of T and its four defining properties.
    Polarization { t: PathBuf },
    /// Isotropy and positivity of ω_T on the polarization.
    KahlerCheck {
        t: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Orbit form at p_x against 2 Im⟨a₁x, a₂x⟩.
    ProjectiveCompare { x0: PathBuf, a1: PathBuf, a2: PathBuf },
    /// Random points V*TV on the orbit of T.
    OrbitSample {
        t: PathBuf,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Whether two Hermitian matrices lie on one orbit.
    LeafCompare {
        r1: PathBuf,
        r2: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Cross-section φ = ψ(V)V for the orbit point V*TV.
    CrossSection {
        t: PathBuf,
        v: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// ‖φ(GV) − φ(V)‖ for G commuting with T.
    WellDefined {
        t: PathBuf,
        v: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// ‖φ − 1‖_Φ along V_k = exp(2^{-k} A), k = 0..=steps.
    Continuity {
        t: PathBuf,
        a: PathBuf,
        #[arg(long, default_value = "sum")]
        phi: String,
        #[arg(long, default_value_t = 20)]
        steps: u32,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// ‖E_iWE_j‖_Φ |λ_i − λ_j| against ‖TW − WT‖_Φ.
    OffdiagBound {
        t: PathBuf,
        w: PathBuf,
        #[arg(long, default_value = "max")]
        phi: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// Minimal polynomial of a Hermitian matrix.
    Minpoly {
        t: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Dimension of the C*-algebra generated by a Hermitian matrix.
    AlgebraDim {
        t: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Digest of the arguments (seed excluded) and input file contents.
pub(crate) struct InputDigest(Sha256);

impl InputDigest {
    fn new(args: &[OsString]) -> Self {
        let mut h = Sha256::new();
        let mut skip = false;
        for a in args.iter().skip(1) {
            let s = a.to_string_lossy();
            if skip {
                skip = false;
                continue;
            }
            if s == "--seed" {
                skip = true;
                continue;
            }
            if s.starts_with("--seed=") {
                continue;
            }
            h.update((s.len() as u64).to_le_bytes());
            h.update(s.as_bytes());
        }
        Self(h)
    }

    pub(crate) fn add_file(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    fn finish(self) -> String {
        format!("sha256:{:x}", self.0.finalize())
    }
}

/// Runs one invocation. `env_seed` is the value of `LEAFKIT_SEED`, if set.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() }
            };
        }
    };
    let seed = match (cli.seed, env_seed) {
        (Some(s), _) => s,
        (None, Some(v)) => match v.trim().parse::<u64>() {
            Ok(s) => s,
            Err(_) => {
                let e = CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"));
                return Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
            }
        },
        (None, None) => 0,
    };
    let mut digest = InputDigest::new(&args);
    match commands::execute(&cli.command, seed, &mut digest) {
        Ok(mut report) => {
            report.inputs = digest.finish();
            let code = if report.pass { EXIT_PASS } else { EXIT_CONTRACT };
            Outcome { code, stdout: report.to_json(), stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
