use thiserror::Error;

use crate::handlebody::{ArcId, PieceId};

/// Errors raised while building a spine or a handlebody.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpineError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotTrivalent { vertex: usize, degree: usize },
    #[error("spine is disconnected")]
    Disconnected,
    #[error("edge {edge} references vertex {vertex} outside 0..{count}")]
    BadVertex { edge: usize, vertex: usize, count: usize },
    #[error("spanning tree is invalid: {0}")]
    BadTree(String),
    #[error("expected genus {expected}, spine has first Betti number {found}")]
    GenusMismatch { expected: usize, found: usize },
}

/// Errors raised while reading a surface document.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown arc {arc}")]
    DanglingArc { line: usize, arc: usize },
    #[error("line {line}: two consecutive D-edges; boundary words must alternate with `|`")]
    NotAlternating { line: usize },
    #[error("nesting cycle through arc {0}")]
    NestingCycle(usize),
    #[error("line {line}: duplicate id {id}")]
    Duplicate { line: usize, id: usize },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("json: {0}")]
    Json(String),
    #[error("spine: {0}")]
    Spine(#[from] SpineError),
}

/// Errors raised by the reduction moves.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("piece {0} is not a movable saddle at the given arcs")]
    NotMovable(PieceId),
    #[error("arc {0} is not outermost for this move")]
    NotOutermost(ArcId),
    #[error("far-side pieces of arcs {0} and {1} coincide; compressing would not reduce complexity")]
    FarSidesCoincide(ArcId, ArcId),
    #[error("merged piece would have {0} D-edges; need an even count of at least 4")]
    BadMergedValence(usize),
    #[error("saddle {0} has a direct inner/outer pair; compress it directly instead")]
    DirectPair(PieceId),
    #[error("pieces {0} and {1} are not joined by a level arc")]
    NotAdjacent(PieceId, PieceId),
    #[error("unknown piece {0}")]
    UnknownPiece(PieceId),
    #[error("unknown arc {0}")]
    UnknownArc(ArcId),
    #[error("complexity did not decrease")]
    NoProgress,
}

/// Errors raised while building complement regions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("face containing piece {0} is not a disk (level arcs form a cycle)")]
    FaceNotDisk(PieceId),
    #[error("ball {ball}: both sides of the face containing piece {piece} lie in one region")]
    SidesMerged { ball: usize, piece: PieceId },
    #[error("ball {ball}: found {found} regions, expected {expected}")]
    RegionCount { ball: usize, found: usize, expected: usize },
    #[error("ball {ball}: leg {slot} is crossed by several faces and its slot carries no arcs")]
    AmbiguousLeg { ball: usize, slot: usize },
}

/// Errors raised by the fundamental-group oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("surface is non-orientable")]
    NonOrientable,
    #[error("surface is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("surface is empty")]
    Empty,
}

/// Errors raised by the corpus generators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("family parameter must be at least 1, got {0}")]
    BadIndex(usize),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown variant `{0}`")]
    UnknownVariant(String),
    #[error("variant `{variant}` is not available for family `{family}`")]
    VariantUnsupported { family: String, variant: String },
}
