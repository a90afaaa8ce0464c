use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points coincide")]
    CoincidentPoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarrierError {
    #[error("barrier has no segments")]
    Empty,
    #[error("segment {index} has zero length")]
    ZeroLength { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangentError {
    #[error("point lies inside or on the hull")]
    NotExternal,
    #[error("point is collinear with a degenerate hull")]
    CollinearWithSegment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("clip box does not strictly contain intersection of lines {0} and {1}")]
    ClipTooSmall(usize, usize),
    #[error("clip box is empty")]
    EmptyClip,
    #[error("boundary line of wedge system {system} is not an arrangement line")]
    MissingBoundaryLine { system: usize },
}
