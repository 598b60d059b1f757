use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the module that raises them; [`Error::code`]
/// gives the stable reason code the command-line tool prints.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("triangle is degenerate (collinear or coincident points)")]
    DegenerateTriangle,
    #[error("points coincide")]
    CoincidentPoints,

    #[error("exponent {0} is outside the representable range")]
    ExponentOutOfRange(f64),
    #[error("exponent 0 has no external foot")]
    ZeroExponent,
    #[error("triangle is isosceles (|AB| = |AC|)")]
    IsoscelesExcluded,
    #[error("location coincides with B or C")]
    AtVertex,
    #[error("external location corresponds to exponent 0 (point at infinity)")]
    ZeroExponentExternal,
    #[error("reflected cevian is parallel to BC")]
    ParallelAfterReflection,

    #[error("all conic coefficients vanish")]
    ZeroConic,
    #[error("point is not on the conic")]
    NotOnConic,
    #[error("conic gradient vanishes at the point")]
    SingularPoint,
    #[error("polar of the point is the line at infinity")]
    ZeroPolar,
    #[error("conic has no center")]
    NotCentral,
    #[error("points do not determine a unique conic")]
    RankDeficient,
    #[error("line is a component of the conic")]
    LineOnConic,

    #[error("mixed family is undefined for span 0")]
    ZeroSpanMixed,
    #[error("point lies on the critical line")]
    OnCriticalLine,
    #[error("point lies on a side of the pencil")]
    OnSide,
    #[error("circle center coincides with the focus")]
    CenterIsFocus,
    #[error("point is inside the parabola; its circle misses BC")]
    InsideParabola,
    #[error("point is on the parabola; its circle touches BC once")]
    OnParabolaTangent,
    #[error("circle passes through B or C")]
    HitAtVertex,
    #[error("point is not strictly inside the parabola")]
    NotInsideParabola,
    #[error("line through the vertex is parallel to the polar")]
    ParallelPolar,

    #[error("identity needs irrational quantities: {0}")]
    NotRationalizable(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::DegenerateTriangle => "DegenerateTriangle",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::ExponentOutOfRange(_) => "ExponentOutOfRange",
            Error::ZeroExponent => "ZeroExponent",
            Error::IsoscelesExcluded => "IsoscelesExcluded",
            Error::AtVertex => "AtVertex",
            Error::ZeroExponentExternal => "ZeroExponentExternal",
            Error::ParallelAfterReflection => "ParallelAfterReflection",
            Error::ZeroConic => "ZeroConic",
            Error::NotOnConic => "NotOnConic",
            Error::SingularPoint => "SingularPoint",
            Error::ZeroPolar => "ZeroPolar",
            Error::NotCentral => "NotCentral",
            Error::RankDeficient => "RankDeficient",
            Error::LineOnConic => "LineOnConic",
            Error::ZeroSpanMixed => "ZeroSpanMixed",
            Error::OnCriticalLine => "OnCriticalLine",
            Error::OnSide => "OnSide",
            Error::CenterIsFocus => "CenterIsFocus",
            Error::InsideParabola => "InsideParabola",
            Error::OnParabolaTangent => "OnParabolaTangent",
            Error::HitAtVertex => "HitAtVertex",
            Error::NotInsideParabola => "NotInsideParabola",
            Error::ParallelPolar => "ParallelPolar",
            Error::NotRationalizable(_) => "NotRationalizable",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
