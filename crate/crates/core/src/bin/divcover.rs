use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use divcover::io::points_to_csv;
use divcover::metric::Metric;
use divcover::oracle::{verify_interleaving_with_limits, Limits, CECH_POINT_LIMIT};
use divcover::pipeline::{
    run_cech_pipeline, run_pipeline, DivisionKind, Format, Input, Normalize, Resolution, RunConfig,
};

#[derive(Parser)]
#[command(name = "divcover", version, about = "Persistent homology through divisive covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Divisive cover, nerve and barcode of a point cloud.
    Run(RunArgs),
    /// Write a generated point cloud as CSV.
    Generate {
        #[arg(long, default_value = "sphere")]
        generator: Input,
        #[arg(long, default_value = "l2")]
        metric: Metric,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the divisive barcode against the Čech barcode.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = CECH_POINT_LIMIT)]
        cech_limit: usize,
    },
    /// Barcode of the intrinsic Čech filtration.
    Cech {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = CECH_POINT_LIMIT)]
        cech_limit: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// CSV file of points.
    #[arg(long, conflicts_with = "generator")]
    input: Option<PathBuf>,
    /// `sphere[:n[:mean:sd]]` or `torus[:k]`.
    #[arg(long)]
    generator: Option<Input>,
    #[arg(long, default_value = "l2")]
    metric: Metric,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Absolute radius, or `rel:<f>` for a fraction of the radius of the space.
    #[arg(long, default_value = "rel:0.3")]
    resolution: Resolution,
    #[arg(long, default_value = "ellipsoid")]
    division: DivisionKind,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "diameter")]
    normalize: Normalize,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

impl RunArgs {
    fn config(self) -> RunConfig {
        let defaults = RunConfig::default();
        let input = match (self.input, self.generator) {
            (Some(path), _) => Input::Csv(path),
            (None, Some(generator)) => generator,
            (None, None) => defaults.input,
        };
        let outputs = [
            (Format::Csv, self.out_csv),
            (Format::Json, self.out_json),
            (Format::Svg, self.out_svg),
        ]
        .into_iter()
        .filter_map(|(format, path)| path.map(|p| (format, p)))
        .collect();
        RunConfig {
            input,
            metric: self.metric,
            delta: self.delta,
            resolution: self.resolution,
            division: self.division,
            max_dim: self.max_dim,
            seed: self.seed,
            normalize: self.normalize,
            outputs,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> divcover::Result<bool> {
    match command {
        Command::Run(args) => {
            let out = run_pipeline(&args.config())?;
            println!("{}", out.summary());
            Ok(true)
        }
        Command::Generate { generator, metric, seed, out } => {
            let space = generator.load(metric, seed)?;
            let csv = points_to_csv(&space);
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Verify { run, cech_limit } => {
            let config = run.config();
            let space = config.input.load(config.metric, config.seed)?;
            let resolution = config.resolution.resolve(&space);
            let strategy = config.division.with_delta(config.delta);
            let limits = Limits { cech_points: cech_limit, ..Limits::default() };
            let report = verify_interleaving_with_limits(&space, strategy, resolution, config.max_dim, limits)?;
            println!("{}", report.to_json());
            Ok(report.pass && report.division_failures == 0)
        }
        Command::Cech { run, cech_limit } => {
            let out = run_cech_pipeline(&run.config(), cech_limit)?;
            println!("{}", out.summary());
            Ok(true)
        }
    }
}
