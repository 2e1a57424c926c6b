//! Simulation and verification toolkit for piecewise isometries and kicked
//! oscillator maps: outer billiards on convex polygons, digital-filter maps,
//! sawtooth Standard Maps and kicked harmonic oscillators, with exact
//! algebraic arithmetic for period certification, symbolic dynamics, and
//! phase-space web generation.

pub mod conjugacy;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod maps;
pub mod orbits;
pub mod symbolic;
pub mod verify;
pub mod webs;

pub use exact::{minpoly, AlgebraicReal, MinPoly};
pub use geometry::{ConvexPolygon, Point};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("conductor mismatch: {left} vs {right}")]
    Conductor { left: u32, right: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular frame: theta is a multiple of pi")]
    SingularFrame,
    #[error("point is inside the polygon")]
    InsidePolygon,
    #[error("point lies on a trailing edge: the tangent map is undefined there")]
    OnTrailingEdge,
    #[error("ambiguous period: candidates {0} and {1} both within tolerance")]
    AmbiguousPeriod(u64, u64),
    #[error("orbit centroid is not fixed under the rotation: not a tile")]
    NotATile,
    #[error("symbol sequence has the wrong alphabet: expected {expected}")]
    Alphabet { expected: &'static str },
    #[error("map error at iteration {index}: {source}")]
    AtIteration {
        index: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
