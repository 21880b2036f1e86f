//! End-to-end runs: input → divisive cover → filtered nerve → barcode →
//! exports.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::cover::DivisionStrategy;
use crate::error::{Error, Result};
use crate::generate::{generate_sphere, generate_torus};
use crate::io::{barcode_to_csv, barcode_to_json, barcode_to_svg, ingest_csv, ExportMeta};
use crate::metric::{FiniteMetricSpace, Metric};
use crate::oracle::{cech_filtration, cech_filtration_with_limit, measured_cover, Limits};
use crate::persistence::{compute_persistence, Barcode};

/// Where the points come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Csv(PathBuf),
    Sphere { n: usize, mean_radius: f64, sd_radius: f64 },
    Torus { k: usize },
}

impl Input {
    /// Loads or generates the points under `metric`.
    pub fn load(&self, metric: Metric, seed: u64) -> Result<FiniteMetricSpace> {
        match self {
            Input::Csv(path) => ingest_csv(path, metric),
            Input::Sphere { n, mean_radius, sd_radius } => {
                generate_sphere(*n, *mean_radius, *sd_radius, seed)?.with_metric(metric)
            }
            Input::Torus { k } => generate_torus(*k, seed)?.with_metric(metric),
        }
    }
}

impl FromStr for Input {
    type Err = Error;

    /// Generator specs: `sphere`, `sphere:<n>`, `sphere:<n>:<mean>:<sd>`,
    /// `torus`, `torus:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize, default: f64| -> Result<f64> {
            parts.get(i).map_or(Ok(default), |p| {
                p.parse()
                    .map_err(|_| Error::usage(format!("bad number `{p}` in generator `{s}`")))
            })
        };
        match parts[0] {
            "sphere" if parts.len() <= 4 => Ok(Input::Sphere {
                n: num(1, 1000.0)? as usize,
                mean_radius: num(2, 1.0)?,
                sd_radius: num(3, 0.1)?,
            }),
            "torus" if parts.len() <= 2 => Ok(Input::Torus {
                k: num(1, 20.0)? as usize,
            }),
            _ => Err(Error::usage(format!("unknown generator `{s}`"))),
        }
    }
}

/// Resolution as an absolute radius or as a fraction of `r(X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolution {
    Absolute(f64),
    Relative(f64),
}

impl FromStr for Resolution {
    type Err = Error;

    /// `0.2` is absolute; `rel:0.3` is relative to the radius of the space.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("bad resolution `{s}`"));
        let r = match s.strip_prefix("rel:") {
            Some(f) => Resolution::Relative(f.parse().map_err(|_| bad())?),
            None => Resolution::Absolute(s.parse().map_err(|_| bad())?),
        };
        match r {
            Resolution::Absolute(v) | Resolution::Relative(v) if v >= 0.0 && v.is_finite() => Ok(r),
            _ => Err(bad()),
        }
    }
}

impl Resolution {
    /// The resolution as a radius in the units of `space`.
    pub fn resolve(&self, space: &FiniteMetricSpace) -> f64 {
        match *self {
            Resolution::Absolute(r) => r,
            Resolution::Relative(f) => f * space.relative_radius(&space.all()).value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionKind {
    Ellipsoid,
    Decision,
}

impl DivisionKind {
    pub fn with_delta(self, delta: f64) -> DivisionStrategy {
        match self {
            DivisionKind::Ellipsoid => DivisionStrategy::Ellipsoid { delta },
            DivisionKind::Decision => DivisionStrategy::Decision { delta },
        }
    }
}

impl FromStr for DivisionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ellipsoid" => Ok(DivisionKind::Ellipsoid),
            "decision" => Ok(DivisionKind::Decision),
            _ => Err(Error::usage(format!("unknown division `{s}`"))),
        }
    }
}

/// Constant all filtration values are divided by before export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalize {
    None,
    /// Divide by the diameter `d(X)`.
    Diameter,
    /// Divide by the radius `r(X)`.
    Radius,
}

impl fmt::Display for Normalize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalize::None => "none",
            Normalize::Diameter => "diameter",
            Normalize::Radius => "radius",
        })
    }
}

impl FromStr for Normalize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Normalize::None),
            "diameter" => Ok(Normalize::Diameter),
            "radius" => Ok(Normalize::Radius),
            _ => Err(Error::usage(format!("unknown normalization `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Input,
    pub metric: Metric,
    pub delta: f64,
    pub resolution: Resolution,
    pub division: DivisionKind,
    pub max_dim: usize,
    pub seed: u64,
    pub normalize: Normalize,
    pub outputs: Vec<(Format, PathBuf)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: Input::Sphere {
                n: 1000,
                mean_radius: 1.0,
                sd_radius: 0.1,
            },
            metric: Metric::L2,
            delta: 0.05,
            resolution: Resolution::Relative(0.3),
            division: DivisionKind::Ellipsoid,
            max_dim: 3,
            seed: 0,
            normalize: Normalize::Diameter,
            outputs: Vec::new(),
        }
    }
}

/// Wall time of each stage.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Timings {
    pub input: Duration,
    pub cover: Duration,
    pub nerve: Duration,
    pub persistence: Duration,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Normalized barcode.
    pub barcode: Barcode,
    pub meta: ExportMeta,
    pub points: usize,
    /// Resolution in unnormalized units.
    pub resolution: f64,
    pub timings: Timings,
}

impl RunOutput {
    pub fn summary(&self) -> String {
        let t = &self.timings;
        format!(
            "points: {}\ncover size: {}\nnerve sizes: {:?}\nintervals: {} ({} zero-length dropped)\n\
             timings: input {:.3?}, cover {:.3?}, nerve {:.3?}, persistence {:.3?}",
            self.points,
            self.meta.cover_size,
            self.meta.nerve_sizes,
            self.barcode.intervals.len(),
            self.barcode.zero_length,
            t.input,
            t.cover,
            t.nerve,
            t.persistence
        )
    }

    pub fn csv(&self) -> String {
        barcode_to_csv(&self.barcode)
    }

    pub fn json(&self) -> String {
        barcode_to_json(&self.barcode, &self.meta)
    }
}

fn stage<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Usage(m) => Error::Usage(format!("{name}: {m}")),
        other => other,
    })
}

fn normalization(space: &FiniteMetricSpace, normalize: Normalize) -> f64 {
    let c = match normalize {
        Normalize::None => 1.0,
        Normalize::Diameter => space.diameter(&space.all()).value,
        Normalize::Radius => space.relative_radius(&space.all()).value,
    };
    if c > 0.0 {
        c
    } else {
        1.0
    }
}

/// Runs the divisive pipeline and writes every requested output.
pub fn run_pipeline(config: &RunConfig) -> Result<RunOutput> {
    let clock = Instant::now();
    let space = stage("input", config.input.load(config.metric, config.seed))?;
    let input_time = clock.elapsed();
    run_on_space(&space, config, input_time)
}

/// [`run_pipeline`] on points already in memory; `config.input` is ignored.
pub fn run_on_space(space: &FiniteMetricSpace, config: &RunConfig, input_time: Duration) -> Result<RunOutput> {
    let strategy = config.division.with_delta(config.delta);
    let resolution = config.resolution.resolve(space);

    let clock = Instant::now();
    let measured = stage("cover", measured_cover(space, strategy, resolution, config.max_dim, Limits::NONE))?;
    let cover_and_nerve = clock.elapsed();
    let nerve_time = measured.nerve_time;

    let clock = Instant::now();
    let scale = normalization(space, config.normalize);
    let mut barcode = compute_persistence(&measured.nerve).normalized(scale);
    barcode.meta.resolution = Some(resolution);
    barcode.meta.delta = Some(config.delta);
    let persistence_time = clock.elapsed();

    let meta = ExportMeta {
        delta: config.delta,
        resolution,
        metric: config.metric.to_string(),
        division: strategy.name().into(),
        normalize: config.normalize.to_string(),
        normalization: scale,
        seed: config.seed,
        cover_size: measured.cover.len(),
        nerve_sizes: measured.nerve.sizes(),
    };
    let output = RunOutput {
        barcode,
        meta,
        points: space.len(),
        resolution,
        timings: Timings {
            input: input_time,
            cover: cover_and_nerve - nerve_time,
            nerve: nerve_time,
            persistence: persistence_time,
        },
    };
    write_outputs(&output, &config.outputs)?;
    Ok(output)
}

fn write_outputs(output: &RunOutput, outputs: &[(Format, PathBuf)]) -> Result<()> {
    for (format, path) in outputs {
        let body = match format {
            Format::Csv => output.csv(),
            Format::Json => output.json(),
            Format::Svg => barcode_to_svg(&output.barcode, None),
        };
        std::fs::write(path, body)?;
    }
    Ok(())
}

/// Reference barcode of the intrinsic Čech filtration, normalized like a run.
pub fn run_cech(space: &FiniteMetricSpace, max_dim: usize, normalize: Normalize) -> Result<Barcode> {
    let complex = cech_filtration(space, max_dim)?;
    Ok(compute_persistence(&complex).normalized(normalization(space, normalize)))
}

/// Čech counterpart of [`run_pipeline`]: the same input, normalization and
/// outputs, with `delta`, `resolution` and `division` ignored.
pub fn run_cech_pipeline(config: &RunConfig, point_limit: usize) -> Result<RunOutput> {
    let clock = Instant::now();
    let space = stage("input", config.input.load(config.metric, config.seed))?;
    let input_time = clock.elapsed();

    let clock = Instant::now();
    let complex = stage("cech", cech_filtration_with_limit(&space, config.max_dim, point_limit))?;
    let build_time = clock.elapsed();

    let clock = Instant::now();
    let scale = normalization(&space, config.normalize);
    let mut barcode = compute_persistence(&complex).normalized(scale);
    barcode.meta.resolution = Some(0.0);
    barcode.meta.delta = Some(1.0);
    let persistence_time = clock.elapsed();

    let output = RunOutput {
        meta: ExportMeta {
            delta: 1.0,
            resolution: 0.0,
            metric: config.metric.to_string(),
            division: "cech".into(),
            normalize: config.normalize.to_string(),
            normalization: scale,
            seed: config.seed,
            cover_size: space.len(),
            nerve_sizes: complex.sizes(),
        },
        barcode,
        points: space.len(),
        resolution: 0.0,
        timings: Timings {
            input: input_time,
            cover: Duration::ZERO,
            nerve: build_time,
            persistence: persistence_time,
        },
    };
    write_outputs(&output, &config.outputs)?;
    Ok(output)
}
