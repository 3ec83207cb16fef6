//! Decides incompressibility of surfaces in handlebodies from a combinatorial
//! encoding relative to a meridian disk system.

pub mod complex;
pub mod corpus;
pub mod decide;
pub mod error;
pub mod faces;
pub mod format;
pub mod handlebody;
pub mod mutate;
pub mod oracle;
pub mod polygon;
pub mod region;
pub mod retract;
pub mod solver;
pub mod standard;
pub mod svg;

pub use complex::{
    validate, ArcSite, Census, DEdge, DiskPiece, PieceKind, SurfaceArc, SurfaceComplex,
    ValidationReport, Violation,
};
pub use decide::{decide, decide_with, DecideOptions, DecisionReport, Verdict, Witness};
pub use error::*;
pub use format::{parse, write_json, write_text, Document};
pub use handlebody::{build_spine, handcuff_spine, ps_balls, Handlebody, PsBall, Side, Slot, SpineGraph};
pub use oracle::{check_surface, OracleReport};
pub use polygon::{enumerate_polygons, PolygonCensus};
pub use retract::RetractGraph;
pub use solver::{verify_certificate, Certificate};
pub use standard::{complexity, reduce_to_standard, Complexity, MoveRecord};
