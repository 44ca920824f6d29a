use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use genus2::catalogue::{build_catalogue, classify_record, to_tsv, TSV_HEADER};
use genus2::moves::{
    apply_psi, build_gf, canonical, canonical_report, sigma, verify_sigma_constructively,
};
use genus2::orbits::{explore, minimize_path};
use genus2::suites::{run_suite, run_suite_with_bound};
use genus2::tuple::{admissibility, exchange_symmetry, rho_symmetry_check};
use genus2::{build_graph, h1, is_admissible, SixTuple};

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gem2",
    version,
    about = "Genus-two crystallizations from admissible 6-tuples"
)]
struct Cli {
    /// Worker threads for enumeration and suites.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Report conditions (I) to (VI) for a tuple.
    Check { tuple: SixTuple },
    /// Print the crystallization of a tuple.
    Graph {
        tuple: SixTuple,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Apply the 2-symmetric move.
    Sigma {
        tuple: SixTuple,
        /// Also print the blocks of the surgery realising the move.
        #[arg(long)]
        trace: bool,
    },
    /// Check the move against the block surgery on the graph.
    VerifySigma {
        tuple: SixTuple,
        #[arg(long)]
        trace: bool,
    },
    /// Canonical representative of the H-orbit.
    Canonical { tuple: SixTuple },
    /// Apply psi1, psi2 or psi3.
    Psi {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        k: u8,
        tuple: SixTuple,
    },
    /// Catalogue record of the canonical form of a tuple.
    Classify { tuple: SixTuple },
    /// Explore the G-orbit through sigma moves.
    Orbit {
        tuple: SixTuple,
        #[arg(long, default_value_t = 21)]
        max_complexity: i64,
        #[arg(long, default_value_t = 1000)]
        max_nodes: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: GraphFormat,
    },
    /// Descend to a minimal tuple of the G-orbit.
    Minimize { tuple: SixTuple },
    /// Canonical admissible tuples up to a complexity, as TSV.
    Catalogue {
        #[arg(long)]
        max_complexity: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Override the suite's complexity bound.
        #[arg(long)]
        bound: Option<i64>,
    },
}

fn admissible(f: &SixTuple) -> Result<(), ExitCode> {
    if is_admissible(f) {
        Ok(())
    } else {
        eprintln!("{f}: {}", admissibility(f));
        Err(ExitCode::from(INVALID))
    }
}

fn run(cmd: Command) -> Result<(), ExitCode> {
    match cmd {
        Command::Check { tuple } => {
            println!("tuple\t{tuple}");
            println!("complexity\t{}", tuple.complexity());
            println!("conditions I-IV\tok");
            println!("admissibility\t{}", admissibility(&tuple));
            println!("rho_symmetry\t{}", rho_symmetry_check(&tuple));
            if let Some(p) = exchange_symmetry(&tuple) {
                println!("exchange_symmetry\t{p:?}");
            }
            admissible(&tuple)?;
        }
        Command::Graph { tuple, format } => {
            let g = build_graph(&tuple);
            match format {
                GraphFormat::Dot => print!("{}", g.to_dot()),
                GraphFormat::Tsv => {
                    println!("vertex\tlabel\tc0\tc1\tc2\tc3");
                    for v in 0..g.vertex_count() {
                        let p: Vec<String> = (0..4).map(|c| g.partner(c, v).to_string()).collect();
                        println!("{v}\t{}\t{}", g.label(v), p.join("\t"));
                    }
                }
            }
        }
        Command::Sigma { tuple, trace } => {
            let s = sigma(&tuple).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(INVALID)
            })?;
            println!("{s}");
            if trace && tuple.q()[0] != 0 {
                match build_gf(&tuple) {
                    Ok(t) => println!("{t}"),
                    Err(e) => {
                        eprintln!("{e}");
                        return Err(ExitCode::from(FAILED));
                    }
                }
            }
        }
        Command::VerifySigma { tuple, trace } => {
            admissible(&tuple)?;
            if tuple.q()[0] == 0 {
                println!("{tuple}: q0 = 0, sigma is the identity");
                return Ok(());
            }
            let report = verify_sigma_constructively(&tuple).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(FAILED)
            })?;
            if trace {
                let t = build_gf(&tuple).expect("built once already");
                println!("{t}");
            }
            println!("{report}");
            if !report.passed() {
                return Err(ExitCode::from(FAILED));
            }
        }
        Command::Canonical { tuple } => {
            admissible(&tuple)?;
            let r = canonical_report(&tuple);
            println!("{}", r.tuple);
            if r.is_fallback() {
                eprintln!(
                    "warning: {} members left by the conditions, least taken",
                    r.matches
                );
            }
        }
        Command::Psi { k, tuple } => {
            println!("{}", apply_psi(k, &tuple).expect("k checked by the parser"));
        }
        Command::Classify { tuple } => {
            admissible(&tuple)?;
            let record = classify_record(&canonical(&tuple)).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(FAILED)
            })?;
            println!("{TSV_HEADER}\n{record}");
        }
        Command::Orbit {
            tuple,
            max_complexity,
            max_nodes,
            format,
        } => {
            admissible(&tuple)?;
            let orbit = explore(&tuple, max_complexity, max_nodes);
            match format {
                GraphFormat::Tsv => print!("{}", orbit.to_tsv()),
                GraphFormat::Dot => print!("{}", orbit.to_dot()),
            }
            eprintln!(
                "{} nodes, {} edges, {}",
                orbit.nodes.len(),
                orbit.edges.len(),
                if orbit.is_closed() { "closed" } else { "open" }
            );
        }
        Command::Minimize { tuple } => {
            admissible(&tuple)?;
            let steps = minimize_path(&tuple);
            println!("start\t{}", canonical(&tuple));
            for s in &steps {
                println!("sigma psi1^{}\t{} -> {}", s.rotation, s.from, s.to);
            }
            let end = steps.last().map_or_else(|| canonical(&tuple), |s| s.to);
            println!(
                "minimal\t{end}\t{}",
                h1(&build_graph(&end)).map_or_else(|e| e.to_string(), |g| g.to_string())
            );
        }
        Command::Catalogue {
            max_complexity,
            out,
        } => {
            if max_complexity < 3 {
                eprintln!("--max-complexity must be at least 3");
                return Err(ExitCode::from(USAGE));
            }
            let records = build_catalogue(max_complexity).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(FAILED)
            })?;
            let text = to_tsv(&records);
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| {
                        eprintln!("{}: {e}", path.display());
                        ExitCode::from(USAGE)
                    })?;
                    eprintln!("{} records written to {}", records.len(), path.display());
                }
                None => print!("{text}"),
            }
        }
        Command::Verify { suite, bound } => {
            let report = match bound {
                Some(b) => run_suite_with_bound(&suite, b),
                None => run_suite(&suite),
            }
            .map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(USAGE)
            })?;
            println!("{report}");
            if !report.passed() {
                return Err(ExitCode::from(FAILED));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                _ if !e.use_stderr() => 0,
                clap::error::ErrorKind::ValueValidation => INVALID,
                _ => USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("{e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
