//! `graphcx`: command-line front end.
//!
//! Exit status: 0 success, 1 verification failure, 2 parse or structural
//! error, 3 resource guard.

mod commands;
mod format;

use clap::{Parser, Subcommand};

use commands::{Config, Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "graphcx", version, about = "Exact graph operad and graph complex computations")]
struct Cli {
    /// Largest number of black vertices accepted in inputs.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_black: u64,
    /// Largest number of white vertices accepted in inputs.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    max_white: u64,
    /// Largest number of edges per graph accepted in inputs.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_edges: u64,
    /// Work in the loopless subcomplex and reject inputs with loops.
    #[arg(long, global = true)]
    loopless: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical form of a graph sum.
    Canon {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Insert INNER into slot SLOT of OUTER; the slot colour is the output colour of INNER.
    Insert {
        outer: String,
        inner: String,
        #[arg(long)]
        slot: usize,
    },
    /// Lie bracket in dfGC.
    DfgcBracket { a: String, b: String },
    /// Differential in dfGC.
    DfgcD {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Exit 1 unless the input is a dfGC cocycle.
    DfgcCocycle {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Decide exactness of a homogeneous cocycle and print a witness.
    DfgcExact {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Cohomology dimension of dfGC at n vertices and e edges.
    DfgcHdim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        /// Print the differential out of (n, e) as a JSON matrix instead.
        #[arg(long)]
        matrix: bool,
    },
    /// Bracket in the convolution algebra.
    ConvBracket { a: String, b: String },
    /// Half the self-bracket; exit 1 unless it vanishes.
    McResidual {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Gauge action exp(ad XI) on ALPHA.
    Gauge { xi: String, alpha: String },
    /// Action of a degree-zero dfGC cocycle GAMMA on ALPHA.
    DfgcAct { gamma: String, alpha: String },
    /// Integrate the gauge flow; each --xi file is the next coefficient in t.
    McFlow {
        alpha: String,
        #[arg(long)]
        xi: Vec<String>,
        #[arg(long, default_value_t = 32)]
        max_iter: usize,
    },
    /// Exit 1 unless the element has the prescribed boundary values.
    CheckBoundary {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Exit 1 unless the element is an admissible homotopy parameter.
    CheckHomotopy {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Hochschild differential.
    HochD {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Split a closed cochain into harmonic part plus a coboundary.
    HochDecompose {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Cohomology dimension of the Hochschild complex.
    HochHdim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        matrix: bool,
    },
    /// Hedgehog differential.
    HgD {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Partner of the hedgehog differential.
    HgDstar {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Check the Hodge-type identity on a hedgehog; exit 1 if it fails.
    HgHodge {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Primitive of a closed hedgehog.
    HgWitness {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Apply a graph sum to polynomial arguments given as `poly` lines.
    Act {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn max_cells() -> Result<Option<usize>, commands::Failure> {
    match std::env::var("GRAPHCOMPLEX_MAX_CELLS") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| commands::Failure {
            code: 2,
            msg: format!("GRAPHCOMPLEX_MAX_CELLS={v} is not a non-negative integer"),
        }),
        Err(_) => Ok(None),
    }
}

fn dispatch(cfg: &Config, cmd: Cmd) -> Outcome {
    use commands::*;
    match cmd {
        Cmd::Canon { input } => canon(cfg, &input),
        Cmd::Insert { outer, inner, slot } => insert(cfg, &outer, &inner, slot),
        Cmd::DfgcBracket { a, b } => dfgc_bracket(cfg, &a, &b),
        Cmd::DfgcD { input } => dfgc_d(cfg, &input),
        Cmd::DfgcCocycle { input } => dfgc_cocycle(cfg, &input),
        Cmd::DfgcExact { input } => dfgc_exact(cfg, &input),
        Cmd::DfgcHdim { n, e, matrix } => dfgc_hdim(cfg, n, e, matrix),
        Cmd::ConvBracket { a, b } => conv_bracket(cfg, &a, &b),
        Cmd::McResidual { input } => mc_residual(cfg, &input),
        Cmd::Gauge { xi, alpha } => gauge(cfg, &xi, &alpha),
        Cmd::DfgcAct { gamma, alpha } => dfgc_act(cfg, &gamma, &alpha),
        Cmd::McFlow { alpha, xi, max_iter } => mc_flow(cfg, &alpha, &xi, max_iter),
        Cmd::CheckBoundary { input } => check_boundary(cfg, &input),
        Cmd::CheckHomotopy { input } => check_homotopy(cfg, &input),
        Cmd::HochD { input } => hoch_d(cfg, &input),
        Cmd::HochDecompose { input } => hoch_decompose(cfg, &input),
        Cmd::HochHdim { n, k, e, matrix } => hoch_hdim(cfg, n, k, e, matrix),
        Cmd::HgD { input } => hg_d(cfg, &input),
        Cmd::HgDstar { input } => hg_dstar(cfg, &input),
        Cmd::HgHodge { input } => hg_hodge(cfg, &input),
        Cmd::HgWitness { input } => hg_witness(cfg, &input),
        Cmd::Act { input } => act(cfg, &input),
        Cmd::Selftest => selftest(cfg),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            std::process::exit(2);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            std::process::exit(0);
        }
    };
    let result = max_cells().and_then(|max_cells| {
        let cfg = Config {
            max_black: cli.max_black as usize,
            max_white: cli.max_white as usize,
            max_edges: cli.max_edges as usize,
            loopless: cli.loopless,
            format: cli.format,
            seed: cli.seed,
            max_cells,
        };
        dispatch(&cfg, cli.cmd).map(|r| (r, cfg.format))
    });
    match result {
        Ok((report, f)) => {
            print!("{}", report.render(f));
            std::process::exit(report.status);
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            std::process::exit(e.code);
        }
    }
}
