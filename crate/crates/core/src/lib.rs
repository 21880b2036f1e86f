//! # divcover
//!
//! Persistent homology of finite metric spaces through divisive covers.
//!
//! A divisive cover is built top-down: starting from the whole space, the
//! member of largest diameter is split into two overlapping parts (a
//! δ-division) until every member fits in a ball of the requested resolution.
//! The filtered nerve of that cover, with each member entering at its relative
//! radius, has persistent homology multiplicatively `(1, 1/δ)`-interleaved with
//! the intrinsic Čech filtration above the resolution, at a fraction of the
//! size.
//!
//! The pieces:
//!
//! * [`metric`] - point clouds with `L∞`/`L2`/`Lp` metrics, diameter and relative radius.
//! * [`cover`] - ellipsoid and decision divisions, the divisive cover algorithm.
//! * [`nerve`] - filtered complexes and the filtered nerve of a cover.
//! * [`persistence`] - F2 barcodes by boundary-matrix reduction.
//! * [`oracle`] - brute-force Čech filtration and the log-bottleneck interleaving check.
//! * [`generate`], [`io`], [`pipeline`] - synthetic data, CSV/JSON/SVG, end-to-end runs.
//!
//! ```
//! use divcover::cover::{divisive_cover, DivisionStrategy};
//! use divcover::generate::generate_torus;
//! use divcover::nerve::build_nerve;
//! use divcover::persistence::compute_persistence;
//!
//! let space = generate_torus(6, 1).unwrap();
//! let radius = space.relative_radius(&space.all()).value;
//! let cover = divisive_cover(&space, DivisionStrategy::Ellipsoid { delta: 0.1 }, 0.3 * radius).unwrap();
//! let barcode = compute_persistence(&build_nerve(&cover, 2));
//! assert_eq!(barcode.betti_at(f64::MAX)[0], 1);
//! ```
//!
//! Runnable examples live in `examples/`; `cargo run --example sphere` is a
//! good place to start.

pub mod cover;
pub mod error;
pub mod generate;
pub mod io;
pub mod metric;
pub mod nerve;
pub mod oracle;
pub mod persistence;
pub mod pipeline;

pub use error::{Error, Result};
