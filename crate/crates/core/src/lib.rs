//! Certified computations for the self-affine iterated function system
//! `{(λx, μy), (μx + 1 − μ, λy + 1 − λ)}` with `0 < λ < μ < 1`, `λ + μ > 1`.
//!
//! * [`maps`]: exact maps, words, fixed points and limit points `pt_a`.
//! * [`bcurve`]: truncated-map polygon towers and enclosures of the maximal attractor `B`.
//! * [`topcurve`] / [`cover`]: the top-boundary operator, attractor covers, box counting.
//! * [`certify`]: rigorous region certificates over parameter rectangles.
//! * [`dimension`]: box-dimension lower bounds from sub-systems with the rectangular open set condition.
//! * [`interior`]: the non-empty interior predicate.

pub mod arith;
pub mod bcurve;
pub mod certify;
pub mod cover;
pub mod curve;
pub mod dimension;
pub mod enclose;
pub mod error;
pub mod exec;
pub mod interior;
pub mod maps;
pub mod record;
pub mod region;
pub mod render;
pub mod topcurve;
pub mod transcendental;

pub use arith::{parse_scalar, q, Interval, Scalar};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use maps::{EpWord, ParamRect, Params, Point, Symbol, Word};

/// Version string stored in every certificate record.
pub const CHECKER_VERSION: &str = concat!("affine-top/", env!("CARGO_PKG_VERSION"));
