//! `scrollar`: splitting types of Tschirnhausen bundles of covers of the
//! projective line, pinched towers, inflations and dimension counts.

mod commands;
mod model;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use scrollar_core::arith::Field;

use commands::{Ctx, InputError, Report};

#[derive(Parser, Debug)]
#[command(name = "scrollar", version, about)]
struct Cli {
    /// Plane model `f(x, y)` as text, or cover, bundle or plane JSON; reports the splitting type
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,

    /// With a plane model, list the rational fiber points over x = X as sheet vectors
    #[arg(long, value_name = "X", requires = "model", allow_hyphen_values = true)]
    fiber_at: Option<String>,

    /// Characteristic of the ground field: 0 or a prime
    #[arg(long = "char", value_name = "P", default_value_t = 0, global = true)]
    characteristic: u64,

    /// Seed for every random choice
    #[arg(long, value_name = "S", default_value_t = 1, global = true)]
    seed: u64,

    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Glue lines along the given numbers of points; emit the cover and its splitting type
    Pinch {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
    },
    /// The cyclic cover y^d = p(x)
    Kummer {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Inflate a bundle at a point along the given vectors
    Inflate {
        /// Bundle JSON
        #[arg(long, value_name = "FILE")]
        bundle: PathBuf,
        #[arg(long, value_name = "Q", allow_hyphen_values = true)]
        point: String,
        /// Vectors separated by `;`, entries by `,`, e.g. "1,0;0,1"
        #[arg(long, allow_hyphen_values = true)]
        vectors: String,
    },
    /// Rank of the sampled pairing vectors for rational normal curves
    Lingen {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 60)]
        trials: usize,
    },
    /// Parametrize the rational normal curve with points a_i and weights b_i
    Rnc {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Defaults to all ones
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Realizability of scrollar invariants (a1, a2) by smooth triple covers
    Miranda {
        #[arg(long, allow_hyphen_values = true)]
        a1: i64,
        #[arg(long, allow_hyphen_values = true)]
        a2: i64,
        /// Search for a witness, or test random degenerate cubics when not realizable
        #[arg(long)]
        construct: bool,
        #[arg(long, default_value_t = 100)]
        attempts: usize,
    },
    /// Dimension of the Hurwitz space of degree d genus g covers of a genus gy curve
    Dims {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long)]
        gy: i64,
    },
    /// Expected dimension of the locus with a given splitting type
    Maroni {
        #[arg(
            long = "type",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        parts: Vec<i64>,
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long)]
        gy: i64,
    },
    /// Degrees of a filtration with gaps at least N
    Filtration {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, allow_hyphen_values = true)]
        gap: i64,
    },
    /// Run a verification suite
    Verify {
        suite: String,
        /// Override the suite's default number of trials
        #[arg(long)]
        trials: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    let ctx = Ctx {
        field: Field::from_characteristic(cli.characteristic)?,
        seed: cli.seed,
    };
    let Some(command) = &cli.command else {
        let path = cli.model.as_ref().ok_or_else(|| {
            InputError("nothing to do: pass --model FILE or a subcommand (see --help)".into())
        })?;
        return commands::model(path, cli.fiber_at.as_deref(), &ctx);
    };
    if cli.model.is_some() {
        return Err(InputError(
            "--model cannot be combined with a subcommand".into(),
        ));
    }
    match command {
        Command::Pinch { degrees } => commands::pinch(degrees, &ctx),
        Command::Kummer { d, p } => commands::kummer(*d, p, &ctx),
        Command::Inflate {
            bundle,
            point,
            vectors,
        } => commands::inflate_cmd(bundle, point, vectors, &ctx),
        Command::Lingen { d, trials } => commands::lingen(*d, *trials, &ctx),
        Command::Rnc { a, b } => commands::rnc(a, b.as_deref(), &ctx),
        Command::Miranda {
            a1,
            a2,
            construct,
            attempts,
        } => commands::miranda(*a1, *a2, *construct, *attempts, &ctx),
        Command::Dims { d, g, gy } => commands::dims(*d, *g, *gy),
        Command::Maroni { parts, d, g, gy } => commands::maroni(parts, *d, *g, *gy),
        Command::Filtration { rank, degree, gap } => commands::filtration(*rank, *degree, *gap),
        Command::Verify { suite, trials } => commands::verify(suite, *trials, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.value).expect("reports serialize")
                );
            } else {
                print!(
                    "{}",
                    report.text.unwrap_or_else(|| render::render(&report.value))
                );
                if !report.passed {
                    println!("FAIL");
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
