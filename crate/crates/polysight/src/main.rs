use std::path::PathBuf;

use clap::{Parser, Subcommand};
use polysight::cli::{self, Engine, RunConfig};
use polysight::effective::Mode;

#[derive(Parser)]
#[command(name = "polysight", about = "Visibility polygons in a constrained workspace", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the visibility polygon of a viewpoint in a polygon file.
    Run {
        /// Polygon file (line 1: count, then `x y` per line, CCW).
        #[arg(long)]
        input: PathBuf,
        /// Viewpoint as `x,y`.
        #[arg(long)]
        viewpoint: String,
        #[arg(long, default_value = "constrained")]
        engine: Engine,
        #[arg(long, default_value = "strict-paper")]
        mode: Mode,
        /// Output polygon file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Optional SVG rendering of the scene.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Optional stats file (JSON).
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Generate a random simple polygon and print a usable viewpoint.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Sweep the constrained engine over growing inputs and print meters.
    Bench {
        /// Comma-separated sizes.
        #[arg(long, default_value = "1000,10000,100000", value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Teeth of the comb family.
        #[arg(long, default_value_t = 8)]
        teeth: usize,
    },
}

fn main() {
    let args = Args::parse();
    let code = match args.command {
        Command::Run { input, viewpoint, engine, mode, output, svg, stats } => {
            cli::cmd_run(&RunConfig { input, viewpoint, engine, mode, output, svg, stats })
        }
        Command::Generate { n, seed, output } => cli::cmd_generate(n, seed, &output),
        Command::Bench { sizes, teeth } => cli::cmd_bench(&sizes, teeth),
    };
    std::process::exit(code);
}
