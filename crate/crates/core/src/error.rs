use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("ideals live at different centers ({left} vs {right})")]
    CenterMismatch { left: String, right: String },

    #[error("the zero polynomial has no order or valuation")]
    ZeroPolynomial,

    #[error("generator set is empty or identically zero")]
    ZeroIdeal,

    #[error("ideal is not primary to the maximal ideal at {center} (no certificate up to degree {cap})")]
    NotPrimary { center: String, cap: u32 },

    #[error("point {point} does not lie on the curve")]
    NotOnCurve { point: String },

    #[error("equation is not squarefree: {0}")]
    NotSquarefree(String),

    #[error("equation is constant; it defines no curve")]
    ConstantEquation,

    #[error("blow-up center is not a rational point (chart {chart}, factor {factor})")]
    NonRationalCenter { chart: String, factor: String },

    #[error("curve has a singular point that is not rational ({coordinate} is a root of {factor})")]
    NonRationalSingularPoint { coordinate: String, factor: String },

    #[error("embedded resolution exceeded {cap} blow-ups")]
    BlowUpCap { cap: usize },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal arithmetic invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::CenterMismatch { .. } => "center_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ZeroIdeal => "zero_ideal",
            Error::NotPrimary { .. } => "not_primary",
            Error::NotOnCurve { .. } => "not_on_curve",
            Error::NotSquarefree(_) => "not_squarefree",
            Error::ConstantEquation => "constant_equation",
            Error::NonRationalCenter { .. } => "non_rational_center",
            Error::NonRationalSingularPoint { .. } => "non_rational_singular_point",
            Error::BlowUpCap { .. } => "blow_up_cap",
            Error::Range(_) => "range",
            Error::Input(_) => "input",
            Error::Internal(_) => "internal",
        }
    }
}
