use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use ctrace_core::linalg::{RankOptions, DEFAULT_MAX_ENTRIES};
use ctrace_core::Error;
use serde_json::{Map, Value};

mod commands;
mod render;

/// Canonical traces, Teter numbers and related invariants, computed exactly.
#[derive(Parser, Debug)]
#[command(name = "ctrace", version, about)]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators of I_r(X)^(n-m), the canonical trace of K[X]/I_{r+1}(X).
    TraceGeneric {
        m: usize,
        n: usize,
        r: usize,
        /// Use this power of I_r(X) instead of n - m.
        #[arg(long)]
        power: Option<u32>,
        /// Also compute minimal generator counts in the determinantal ring.
        #[arg(long)]
        mu: bool,
    },
    /// The Teter number det[binom(2n-m-j, n-i)] of the generic determinantal ring.
    Teter {
        m: usize,
        n: usize,
        r: usize,
        /// Compare with the generator count of the anti-canonical module.
        #[arg(long)]
        verify: bool,
    },
    /// Tree ideal, its matrix and canonical trace, for an edge list like 1-2,2-3.
    Tree {
        edges: String,
        /// Number of vertices (default: largest label).
        #[arg(short = 'n', long)]
        vertices: Option<usize>,
        /// Rename the matrix entries a, b, c, ... in row-major order.
        #[arg(long)]
        alias: bool,
        /// Sort edges lexicographically before building the matrix.
        #[arg(long)]
        canonical: bool,
    },
    /// Work with a Hilbert-Burch matrix read from a file.
    #[command(group(ArgGroup::new("mode").args(["check", "ideal", "trace", "specialize"])))]
    Hb {
        file: PathBuf,
        /// Shape, grading and minor homogeneity report (default).
        #[arg(long)]
        check: bool,
        /// The ideal of maximal minors.
        #[arg(long)]
        ideal: bool,
        /// The canonical trace, generated by the (n-2)-minors.
        #[arg(long)]
        trace: bool,
        /// I_R(M)^(n-m), the trace predicted by specialization.
        #[arg(long, value_name = "R")]
        specialize: Option<usize>,
        /// Assert that the quotient ring is generically Gorenstein.
        #[arg(long)]
        assert_gg: bool,
        /// Assert that the relevant ideal of minors has generic height.
        #[arg(long)]
        assert_height: bool,
    },
    /// Gaps, critical binomials, Hilbert-Burch matrix and canonical trace of <n1, n2, n3>.
    Semigroup { n1: u64, n2: u64, n3: u64 },
    /// Check an identity of the generic determinantal ring.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// mu((PQ)^l) = mu(P^l) * mu(Q^l).
    Lasagna {
        m: usize,
        n: usize,
        r: usize,
        #[arg(long, default_value_t = 1)]
        l: u32,
    },
    /// PQ = delta * I_r(X).
    Pq { m: usize, n: usize, r: usize },
}

/// A finished document and whether it reports a failed verification.
pub struct Outcome {
    pub doc: Map<String, Value>,
    pub inconsistent: bool,
}

impl Outcome {
    pub fn ok(doc: Map<String, Value>) -> Self {
        Outcome {
            doc,
            inconsistent: false,
        }
    }
}

fn rank_options() -> Result<RankOptions, Error> {
    let cap = match std::env::var("CTRACE_MAX_TERMS") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("CTRACE_MAX_TERMS must be a positive integer, got `{s}`")))?,
        Err(_) => DEFAULT_MAX_ENTRIES,
    };
    Ok(RankOptions::with_max_entries(cap))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let opts = rank_options()?;
    match &cli.command {
        Command::TraceGeneric { m, n, r, power, mu } => commands::trace_generic(*m, *n, *r, *power, *mu, &opts),
        Command::Teter { m, n, r, verify } => commands::teter(*m, *n, *r, *verify, &opts),
        Command::Tree {
            edges,
            vertices,
            alias,
            canonical,
        } => commands::tree(edges, *vertices, *alias, *canonical),
        Command::Hb {
            file,
            check: _,
            ideal,
            trace,
            specialize,
            assert_gg,
            assert_height,
        } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", file.display())))?;
            let mode = if *ideal {
                commands::HbMode::Ideal
            } else if *trace {
                commands::HbMode::Trace
            } else if let Some(r) = specialize {
                commands::HbMode::Specialize(*r)
            } else {
                commands::HbMode::Check
            };
            commands::hb(&text, mode, *assert_gg, *assert_height)
        }
        Command::Semigroup { n1, n2, n3 } => commands::semigroup(*n1, *n2, *n3),
        Command::Verify { which } => match which {
            Verify::Lasagna { m, n, r, l } => commands::verify_lasagna(*m, *n, *r, *l, &opts),
            Verify::Pq { m, n, r } => commands::verify_pq(*m, *n, *r, &opts),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(Outcome { mut doc, inconsistent }) => {
            doc.insert("elapsed_ms".into(), Value::from(start.elapsed().as_millis() as u64));
            let doc = Value::Object(doc);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print!("{}", render::text(&doc));
            }
            if inconsistent {
                eprintln!("error: verification failed");
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
