//! `arcx`: inspect triangulated punctured surfaces, enumerate graph-
//! restricted arcs, build balls and paths in matching and arc complexes,
//! and run seeded verification batches over their geometry.
//!
//! Exit codes: 0 when every check passed, 1 when any verification failed,
//! 2 on malformed input.  For a fixed command line (including the seed) the
//! output is byte-identical across runs.

mod commands;
mod inputs;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Complex, Format, GuessFixture, Outcome, WindowFixture};
use inputs::{input_err, RunError};

#[derive(Parser)]
#[command(
    name = "arcx",
    version,
    about = "Arcs on punctured surfaces: graph-restricted arc and matching complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Arguments shared by every command that works on a graph drawn on the
/// surface.  When `--punctures` is omitted the surface gets exactly one
/// puncture per graph vertex.
#[derive(Args)]
struct Site {
    /// Genus of the surface
    #[arg(long, default_value_t = 0)]
    genus: u32,
    /// Number of punctures (default: one per graph vertex)
    #[arg(long)]
    punctures: Option<u32>,
    /// Graph: a name (k5, c6, p4, star5, two-edges, triangle-plus-point) or a JSON file
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
struct Sampling {
    /// Number of sampled instances
    #[arg(long)]
    samples: usize,
    /// RNG seed; identical seeds reproduce identical output
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the triangulated surface
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Inspect a graph on the punctures
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Grow a ball in the matching or arc complex
    Ball {
        #[command(flatten)]
        site: Site,
        /// Center arc: edge:K, join:P-Q, or a JSON file
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// Only arcs of at most this weight enter the ball
        #[arg(long, default_value_t = 6)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = Complex::Matching)]
        complex: Complex,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a validated path between two arcs in the matching complex
    Connect {
        #[command(flatten)]
        site: Site,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Write the certificate (JSON) here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the unicorn sequence between two arcs with chosen basepoints
    Unicorn {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        punctures: u32,
        #[arg(long)]
        from: String,
        /// Basepoint puncture on the first arc
        #[arg(long)]
        from_point: u32,
        #[arg(long)]
        to: String,
        /// Basepoint puncture on the second arc
        #[arg(long)]
        to_point: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Validate a path certificate against the complex
    Validate {
        #[command(flatten)]
        site: Site,
        /// Certificate file (JSON)
        certificate: PathBuf,
    },
    /// Run a seeded verification batch
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Estimate the hyperbolicity constant of a ball
    Delta {
        #[command(flatten)]
        site: Site,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 6)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = Complex::Matching)]
        complex: Complex,
        /// Sample this many quadruples instead of exhausting them
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Triangulation counts and Euler characteristic
    Info {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        punctures: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Structural report: support, special shapes, complex connectivity
    Check {
        /// Graph: a name (k5, c6, ...) or a JSON file
        graph: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        punctures: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Bridge disjoint arcs sharing exactly one endpoint in <= 4 steps
    BridgeShared {
        #[command(flatten)]
        site: Site,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 6)]
        weight: usize,
    },
    /// Bridge disjoint arcs with the same endpoints in <= 6 steps
    BridgeSame {
        #[command(flatten)]
        site: Site,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 6)]
        weight: usize,
    },
    /// Guess-set families between sampled triples are 2-thin
    Thin {
        #[command(flatten)]
        site: Site,
        #[command(flatten)]
        sampling: Sampling,
        /// Weight bound for the sampled arcs
        #[arg(long, default_value_t = 6)]
        weight: usize,
        /// Weight bound for the ambient comparison window
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// Guess-set families of adjacent pairs stay within the diameter bound
    Diam {
        #[command(flatten)]
        site: Site,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 6)]
        weight: usize,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
    /// Run the generic guessing-geodesics checker on a fixture
    Guess {
        #[arg(long, value_enum)]
        fixture: FixtureKind,
        /// Vertex count for the tree and cycle fixtures
        #[arg(long, default_value_t = 7)]
        size: usize,
        /// Slimness constant to test (window fixture defaults to its own bound)
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        punctures: Option<u32>,
        /// Graph for the window fixture
        #[arg(long)]
        graph: Option<String>,
        /// Center arc for the window fixture
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 6)]
        weight: usize,
        /// Sample pairs/triples instead of exhausting them
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
    },
    /// Sampled distances satisfy d <= D <= 6d between the two complexes
    Qi {
        #[command(flatten)]
        site: Site,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 6)]
        weight: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FixtureKind {
    Tree,
    Cycle,
    Window,
}

fn run(cli: Cli) -> Result<Outcome, RunError> {
    match cli.command {
        Command::Surface {
            cmd: SurfaceCmd::Info {
                genus,
                punctures,
                format,
            },
        } => commands::surface_info(genus, punctures, format),
        Command::Graph {
            cmd:
                GraphCmd::Check {
                    graph,
                    genus,
                    punctures,
                    format,
                    out,
                },
        } => commands::graph_check(genus, punctures, &graph, format).map(|o| divert(o, out)),
        Command::Ball {
            site,
            base,
            radius,
            weight,
            complex,
            format,
            out,
        } => commands::ball(
            site.genus,
            site.punctures,
            &site.graph,
            &base,
            radius,
            weight,
            complex,
            format,
        )
        .map(|o| divert(o, out)),
        Command::Connect {
            site,
            from,
            to,
            out,
            format,
        } => commands::connect(
            site.genus,
            site.punctures,
            &site.graph,
            &from,
            &to,
            out,
            format,
        ),
        Command::Unicorn {
            genus,
            punctures,
            from,
            from_point,
            to,
            to_point,
            format,
        } => commands::unicorn(genus, punctures, &from, from_point, &to, to_point, format),
        Command::Validate { site, certificate } => {
            commands::validate(site.genus, site.punctures, &site.graph, &certificate)
        }
        Command::Verify { cmd } => match cmd {
            VerifyCmd::BridgeShared {
                site,
                sampling,
                weight,
            } => commands::verify_bridge_shared(
                site.genus,
                site.punctures,
                &site.graph,
                sampling.samples,
                sampling.seed,
                weight,
            ),
            VerifyCmd::BridgeSame {
                site,
                sampling,
                weight,
            } => commands::verify_bridge_same(
                site.genus,
                site.punctures,
                &site.graph,
                sampling.samples,
                sampling.seed,
                weight,
            ),
            VerifyCmd::Thin {
                site,
                sampling,
                weight,
                window,
            } => commands::verify_thin(
                site.genus,
                site.punctures,
                &site.graph,
                sampling.samples,
                sampling.seed,
                weight,
                window,
            ),
            VerifyCmd::Diam {
                site,
                sampling,
                weight,
                window,
            } => commands::verify_diam(
                site.genus,
                site.punctures,
                &site.graph,
                sampling.samples,
                sampling.seed,
                weight,
                window,
            ),
            VerifyCmd::Guess {
                fixture,
                size,
                m,
                genus,
                punctures,
                graph,
                base,
                radius,
                weight,
                samples,
                seed,
            } => {
                let fixture = match fixture {
                    FixtureKind::Tree => GuessFixture::Tree { size },
                    FixtureKind::Cycle => GuessFixture::Cycle { size },
                    FixtureKind::Window => GuessFixture::Window(Box::new(WindowFixture {
                        genus,
                        punctures,
                        graph_spec: graph.ok_or_else(|| {
                            input_err("--graph is required for the window fixture")
                        })?,
                        base_spec: base.ok_or_else(|| {
                            input_err("--base is required for the window fixture")
                        })?,
                        radius,
                        weight,
                        sample: samples.zip(seed),
                    })),
                };
                commands::verify_guess(fixture, m)
            }
            VerifyCmd::Qi {
                site,
                sampling,
                weight,
            } => commands::verify_qi(
                site.genus,
                site.punctures,
                &site.graph,
                sampling.samples,
                sampling.seed,
                weight,
            ),
        },
        Command::Delta {
            site,
            base,
            radius,
            weight,
            complex,
            samples,
            seed,
            format,
        } => commands::delta(
            site.genus,
            site.punctures,
            &site.graph,
            &base,
            radius,
            weight,
            complex,
            samples.zip(seed),
            format,
        ),
    }
}

/// Redirect an outcome's text into a file, leaving a one-line note on stdout.
fn divert(outcome: Outcome, out: Option<PathBuf>) -> Outcome {
    match out {
        None => outcome,
        Some(path) => match fs::write(&path, &outcome.text) {
            Ok(()) => Outcome {
                text: format!("written to {}\n", path.display()),
                passed: outcome.passed,
            },
            Err(e) => Outcome {
                text: format!("cannot write {}: {e}\n", path.display()),
                passed: false,
            },
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("{err}");
            match err {
                RunError::Input(_) => ExitCode::from(2),
                RunError::Verification(_) => ExitCode::from(1),
            }
        }
    }
}
