use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use grim_core::octal::{octal6_sequence_with_progress, SgSequence};
use grim_core::random::{
    crossings, exact_histogram, monte_carlo, polynomial_string, w1, w2, DEFAULT_TOLERANCE,
};
use grim_core::theory::{verify, Suite};
use grim_core::{family, Solver};
use serde_json::json;

use crate::view::solve;

#[derive(Debug, Parser)]
#[command(name = "grim", version, about = "Solve, verify and play the vertex-deletion game Grim")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqFamily {
    /// Generic solver on paths.
    Path,
    /// Octal .6 recurrence.
    Octal6,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value, outcome and winning moves of a position.
    Solve {
        /// Family spec (path:5, kpartite:1,2,3, cart(cycle:4,path:2), ...) or graph6.
        spec: String,
        /// Print the Sprague-Grundy value.
        #[arg(long)]
        sg: bool,
        /// Print the winning moves.
        #[arg(long)]
        moves: bool,
        #[arg(long)]
        json: bool,
    },
    /// Value sequence of paths.
    Seq {
        #[arg(long, value_enum, default_value = "octal6")]
        family: SeqFamily,
        #[arg(long)]
        max: usize,
        /// Print only the sizes n >= 2 with value 0.
        #[arg(long)]
        zeros: bool,
        /// Write the sequence in binary form.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check closed-form rules against the solver.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long = "max-vertices")]
        max_vertices: usize,
        #[arg(long)]
        json: bool,
    },
    /// Win probabilities on G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        /// Exact enumeration (the default).
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        /// Monte Carlo estimate at --p.
        #[arg(long, requires = "p")]
        mc: bool,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report the roots of W2(p) = 1/2.
        #[arg(long, conflicts_with = "mc")]
        crossings: bool,
        #[arg(long)]
        json: bool,
    },
    /// HTTP game service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory of static assets served at /.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Idle session lifetime in seconds.
        #[arg(long, default_value_t = 3600)]
        ttl: u64,
    },
}

pub async fn run(cli: Cli) -> Result<()> {
    let solver = Solver::new();
    match cli.command {
        Command::Solve {
            spec,
            sg,
            moves,
            json,
        } => {
            let r = solve(&spec, &solver)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
                return Ok(());
            }
            println!("graph    {} vertices, {} edges", r.board.vertices.len(), r.board.edges.len());
            println!("outcome  {}", r.outcome);
            if sg {
                println!("sg       {}", r.sg);
            }
            if moves {
                println!("winning  {:?}", r.winning_moves);
            }
            if let Some(p) = r.prediction {
                println!("rule     {:?} ({})", p.outcome, p.rule);
            }
        }
        Command::Seq {
            family,
            max,
            zeros,
            out,
        } => {
            if max == 0 {
                bail!("--max must be at least 1");
            }
            let seq = match family {
                SeqFamily::Octal6 => octal6_sequence_with_progress(max, |n| eprintln!("computed {n}")),
                SeqFamily::Path => {
                    let mut values = Vec::with_capacity(max);
                    for n in 1..=max {
                        let v = solver.sg_value(&family::path(n))?.0;
                        values.push(u16::try_from(v).context("value exceeds 16 bits")?);
                        if n % 1000 == 0 {
                            eprintln!("computed {n}");
                        }
                    }
                    SgSequence::from_values(&values)
                }
            };
            if let Some(path) = out {
                seq.save(&path)?;
            }
            if zeros {
                let z: Vec<String> = seq.zeros().iter().map(|n| n.to_string()).collect();
                println!("{}", z.join(" "));
            } else {
                for (i, v) in seq.values().iter().enumerate() {
                    println!("{} {v}", i + 1);
                }
            }
        }
        Command::Verify {
            suite,
            max_vertices,
            json,
        } => {
            let suite: Suite = suite.parse()?;
            let report = verify(suite, max_vertices, &solver)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            if !report.all_passed() {
                std::process::exit(1);
            }
        }
        Command::Random {
            n,
            mc,
            p,
            trials,
            seed,
            crossings: want_roots,
            json,
            ..
        } => {
            if mc {
                let est = monte_carlo(n, p.expect("clap requires p"), trials, seed, &solver)?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&est)?);
                } else {
                    println!(
                        "W2({}) ~ {:.6} +/- {:.6}  ({} trials, seed {})",
                        est.p, est.estimate, est.stderr, est.trials, est.seed
                    );
                }
                return Ok(());
            }
            let hist = exact_histogram(n, &solver)?;
            let roots = if want_roots {
                Some(crossings(&hist, DEFAULT_TOLERANCE)?)
            } else {
                None
            };
            let at = p.map(|p| Ok::<_, grim_core::Error>((p, w1(&hist, p)?, w2(&hist, p)?)));
            let at = at.transpose()?;
            if json {
                let out = json!({
                    "n": n,
                    "histogram": hist,
                    "polynomial": polynomial_string(&hist),
                    "crossings": roots,
                    "at": at.map(|(p, a, b)| json!({"p": p, "w1": a, "w2": b})),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
                return Ok(());
            }
            println!("W2(p) = {}", polynomial_string(&hist));
            println!("k  P-graphs  all");
            for (k, (c, t)) in hist.p_counts.iter().zip(&hist.total_counts).enumerate() {
                println!("{k:<2} {c:<9} {t}");
            }
            if let Some(r) = roots {
                println!("W2 = 1/2 at {:?}", r.roots);
            }
            if let Some((p, a, b)) = at {
                println!("p = {p}: W1 = {a:.12}, W2 = {b:.12}");
            }
        }
        Command::Serve {
            port,
            static_dir,
            ttl,
        } => crate::server::serve(port, static_dir, Duration::from_secs(ttl)).await?,
    }
    Ok(())
}
