use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("cannot parse group spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error("group generated by `{spec}` exceeds the order cap {cap}")]
    OrderCap { spec: String, cap: usize },

    #[error("subgroup is not normal: conjugating {witness} leaves the subgroup")]
    NotNormal { witness: String },

    #[error("subgroup selector `{selector}` is ambiguous ({count} normal subgroups match)")]
    AmbiguousSelector { selector: String, count: usize },

    #[error("subgroup selector `{selector}` matches nothing")]
    NoSuchSubgroup { selector: String },

    #[error("degenerate instance `{spec}`: {reason} (pass --allow-degenerate to accept)")]
    Degenerate { spec: String, reason: String },

    #[error("commutant splitting failed after {attempts} attempts: {reason}")]
    SplitFailure { attempts: usize, reason: String },

    #[error("class function is not a character: multiplicity {value} for irrep {irrep}")]
    NotACharacter { irrep: usize, value: String },

    #[error("2-cocycle identity fails at ({g}, {h}, {k}) by {defect:e}")]
    CocycleInvalid { g: usize, h: usize, k: usize, defect: f64 },

    #[error("intertwiner space has dimension {dim}, expected 1 ({context})")]
    SchurViolation { dim: usize, context: String },

    #[error("non-integral multiplicity {value:e} ({context})")]
    NonIntegralMultiplicity { value: f64, context: String },

    #[error("Verlinde coefficient N[{i}][{j}][{k}] = {value} is not a nonnegative integer")]
    NonIntegralFusion { i: usize, j: usize, k: usize, value: String },

    #[error("modular data axiom `{axiom}` fails: {witness}")]
    AxiomFailure { axiom: String, witness: String },

    #[error("braiding does not descend to the tensor product over A: {witness}")]
    DescentFailure { witness: String },

    #[error("Yang-Baxter equation fails by {defect:e}: {witness}")]
    YbeFailure { defect: f64, witness: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Errors that falsify a theorem rather than reject an input.
    pub fn is_falsification(&self) -> bool {
        matches!(
            self,
            Error::DescentFailure { .. }
                | Error::YbeFailure { .. }
                | Error::AxiomFailure { .. }
                | Error::NonIntegralFusion { .. }
        )
    }
}
