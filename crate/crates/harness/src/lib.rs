//! File formats, the random planar ensemble and the rate sweep for codes
//! on planar Tanner graphs.

pub mod doc;
pub mod generate;
pub mod sweep;

pub use doc::{GraphDocument, Provenance};
pub use generate::{generate, DegreeProfile, EnsembleSpec, GeneratedGraph};
pub use sweep::{run_sweep, RateGrid, SweepConfig, SweepRow};
