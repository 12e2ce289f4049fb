use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the geometry engine can report.
///
/// All variants describe a math-domain problem with the caller's input; none
/// of them are transient.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is not on the unit sphere (norm {norm})")]
    NotOnSphere { norm: f64 },
    #[error("angle {name} = {value} is outside its valid range")]
    BadAngle { name: &'static str, value: f64 },
    #[error("at least {min} samples are required, got {got}")]
    BadSampleCount { min: usize, got: usize },
    #[error("polyline needs at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("point coincides with the projection center; its image is at infinity")]
    AtProjectionCenter,
    #[error("stereographic denominator {denominator} is singular")]
    SingularDenominator { denominator: f64 },
    #[error("latitude sphere passes through the projection center; its image is a plane")]
    PassesThroughCenter,
    #[error("latitude sphere is not a section of the view frame's 3-sphere")]
    NotALatitudeSphere,
    #[error("torus with psi = {psi} collapses to a single fiber")]
    DegenerateTorus { psi: f64 },
    #[error("family count must be at least 2, got {0}")]
    BadCount(usize),
    #[error("arc {index} does not start where the previous arc ends (gap {gap})")]
    DisconnectedArcs { index: usize, gap: f64 },
    #[error("base curve is invalid: {0}")]
    BadCurve(&'static str),
    #[error("unknown polyhedron kind")]
    UnknownKind,
    #[error("phase count must be at least 1")]
    BadPhaseCount,
    #[error("disk radius {radius} exceeds the packing bound {bound}")]
    RadiusTooLarge { radius: f64, bound: f64 },
    #[error("points are collinear; no unique circle")]
    CollinearInput,
    #[error("curves are closer than {distance}; linking number undefined")]
    CurvesTooClose { distance: f64 },
    #[error("linking sum residual {residual} too large; curves are under-sampled")]
    LinkingUnresolved { residual: f64 },
    #[error("input is degenerate: {0}")]
    DegenerateInput(&'static str),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotOnSphere { .. } => "NotOnSphere",
            Error::BadAngle { .. } => "BadAngle",
            Error::BadSampleCount { .. } => "BadSampleCount",
            Error::TooFewVertices { .. } => "TooFewVertices",
            Error::AtProjectionCenter => "AtProjectionCenter",
            Error::SingularDenominator { .. } => "SingularDenominator",
            Error::PassesThroughCenter => "PassesThroughCenter",
            Error::NotALatitudeSphere => "NotALatitudeSphere",
            Error::DegenerateTorus { .. } => "DegenerateTorus",
            Error::BadCount(_) => "BadCount",
            Error::DisconnectedArcs { .. } => "DisconnectedArcs",
            Error::BadCurve(_) => "BadCurve",
            Error::UnknownKind => "UnknownKind",
            Error::BadPhaseCount => "BadPhaseCount",
            Error::RadiusTooLarge { .. } => "RadiusTooLarge",
            Error::CollinearInput => "CollinearInput",
            Error::CurvesTooClose { .. } => "CurvesTooClose",
            Error::LinkingUnresolved { .. } => "LinkingUnresolved",
            Error::DegenerateInput(_) => "DegenerateInput",
        }
    }
}
