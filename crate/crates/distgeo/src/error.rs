use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("expression undefined at t = {t}: {what}")]
    Domain { t: f64, what: String },
    #[error("metric coefficient {index} vanishes at t = {t}")]
    SingularMetric { index: usize, t: f64 },
    #[error("vector field is not tangent to the distribution (coefficient {index})")]
    NotTangent { index: usize },
    #[error("vector field is not normal to the distribution (coefficient {index})")]
    NotNormal { index: usize },
    #[error("cubic form C(X,Y,Z) = g(K(X,Y),Z) is not fully symmetric (residual {residual})")]
    AsymmetricCubicForm { residual: f64 },
    #[error("distribution rank {n} is below the minimum {min} for this inequality")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("ambient frame is not a declared space form: {0}")]
    NotConstantCurvature(String),
    #[error("field is not unit at t = {t}: g(X,X) = {norm_sq}")]
    NotUnit { t: f64, norm_sq: f64 },
    #[error("plane indices coincide: {0}")]
    SamePlane(usize),
    #[error("family parameter constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("warp function vanishes at t = {t}")]
    ZeroWarp { t: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid scenario: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;
