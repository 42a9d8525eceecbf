//! vsep: reweighted spectral partitioning from the command line. Computes the
//! maximum reweighted spectral gap with its dual embedding certificates,
//! reduces dimension, rounds to sparse vertex cuts and balanced separators,
//! generates geometric instances, and re-verifies every emitted document.

mod bench;
mod run;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "vsep", version, about)]
pub struct Cli {
    /// Master seed; all randomness derives from it.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Numerical tolerance echoed into reports.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Output directory; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    /// Worker threads for corpus runs (VSEP_THREADS overrides).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimredArg {
    Gaussian,
    Coordinate,
    Partition,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    Hexsub,
    DegreeReduce,
    Triangulate,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Delaunay,
    Knn,
    Ballsys,
    Grid,
    Path,
    Cycle,
    Gnp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Brute-force expansion, eigenvalue, and witness report for a small graph.
    Oracle { graph: std::path::PathBuf },

    /// Maximize the reweighted spectral gap and optionally emit the dual
    /// embedding certificate.
    Lambda2star {
        graph: std::path::PathBuf,
        #[arg(long, default_value_t = 0)]
        iters: usize,
        #[arg(long)]
        emit_certificate: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },

    /// Solve, reduce to one dimension, and sweep to a sparse vertex cut.
    Partition {
        graph: std::path::PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = DimredArg::Gaussian)]
        dimred: DimredArg,
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },

    /// Recursive balanced vertex separator via the full pipeline.
    Separator {
        graph: std::path::PathBuf,
        #[arg(long, default_value_t = 2.0 / 3.0)]
        alpha: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = DimredArg::Gaussian)]
        dimred: DimredArg,
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },

    /// Reduce a stored embedding certificate to one dimension.
    Dimred {
        certificate: std::path::PathBuf,
        graph: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = DimredArg::Gaussian)]
        method: DimredArg,
        #[arg(long, default_value_t = 64)]
        trials: usize,
    },

    /// Apply a combinatorial surface transformation to a rotation system.
    Transform {
        rotation: std::path::PathBuf,
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },

    /// The vertex-expansion hardness reduction graph.
    ReduceExpansion {
        graph: std::path::PathBuf,
        #[arg(long)]
        k: usize,
    },

    /// Generate an instance of a named family.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },

    /// Circle-pack a planar triangulation onto the sphere.
    Pack { rotation: std::path::PathBuf },

    /// Ball-form certificate from a normalized geodesic ball system.
    CertifyGeometry {
        ballsys: std::path::PathBuf,
        graph: std::path::PathBuf,
    },

    /// Maximize the extremal spread.
    Spread {
        graph: std::path::PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u8,
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },

    /// Corpus benchmark with fitted log-log slopes.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Delaunay)]
        family: Family,
        #[arg(long, value_delimiter = ',', default_values_t = vec![50, 100, 200])]
        sizes: Vec<usize>,
    },

    /// Re-verify a stored certificate against a graph.
    Verify {
        certificate: std::path::PathBuf,
        graph: std::path::PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run::dispatch(cli));
}
