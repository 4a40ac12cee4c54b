use thiserror::Error;

/// Errors surfaced by the library. Each variant carries a stable machine
/// code (see [`Error::code`]) so front ends can map them without string
/// matching.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulus { expected: u32, got: u32 },
    #[error("field size {p}^{k} exceeds the word budget (q <= 2^62)")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("no root of the subfield modulus exists in the target field (degree {src_k} does not divide {dst_k})")]
    NoEmbedding { src_k: u32, dst_k: u32 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("form is not homogeneous: found terms of degree {a} and {b}")]
    NotHomogeneous { a: u32, b: u32 },
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("operation requires characteristic {expected}, field has characteristic {got}")]
    WrongCharacteristic { expected: u64, got: u64 },

    #[error("line is not contained in the cubic")]
    NotOnCubic,
    #[error("line lies in F0: the linear forms L0, L1, L2 are dependent, no frame exists")]
    LineInF0,
    #[error("point does not lie on the discriminant curve")]
    PointNotOnDiscriminant,
    #[error("double cover is not etale; counts are undefined")]
    NotEtale,
    #[error("no affine chart with F_y != 0 exists for this quintic")]
    ChartInvalid,
    #[error("curve is singular: {what}")]
    NotSmooth { what: String },
    #[error("quadratic space must have even dimension, got {0}")]
    OddDimension(usize),

    #[error("counts violate the Weil bound at m={m}: N={n}, |N-(q^m+1)| > 2g*q^(m/2)")]
    WeilViolation { m: u32, n: u64 },
    #[error("non-integer intermediate in Newton's identities at step {m}; counts are inconsistent")]
    NonIntegerIntermediate { m: u32 },
    #[error("count reconstruction mismatch at m={m}: expected {expected}, L-polynomial gives {got}")]
    CountMismatch { m: u32, expected: u64, got: i128 },
    #[error("L-polynomial division is not exact")]
    NonExactDivision,
    #[error("degree mismatch for Prym quotient: deg L_C = {base}, deg L_cover = {cover}")]
    PrymDegrees { base: usize, cover: usize },

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded { what: &'static str, needed: u64, cap: u64 },
    #[error("Groebner degree cap exceeded: S-polynomial of degree {got}, cap {cap}")]
    DegreeCapExceeded { got: u32, cap: u32 },
    #[error("Groebner pair queue cap exceeded: {cap} pairs")]
    PairCapExceeded { cap: usize },

    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            NotPrime(_) => "not_prime",
            ReducibleModulus { .. } => "reducible_modulus",
            BadModulus { .. } => "bad_modulus",
            FieldTooLarge { .. } => "field_too_large",
            DivisionByZero => "division_by_zero",
            NoEmbedding { .. } => "no_embedding",
            Parse { .. } => "parse_error",
            UnknownVariable { .. } => "unknown_variable",
            NotHomogeneous { .. } => "not_homogeneous",
            WrongDegree { .. } => "wrong_degree",
            DimensionMismatch { .. } => "dimension_mismatch",
            SingularMatrix => "singular_matrix",
            WrongCharacteristic { .. } => "wrong_characteristic",
            NotOnCubic => "not_on_cubic",
            LineInF0 => "line_in_f0",
            PointNotOnDiscriminant => "point_not_on_discriminant",
            NotEtale => "not_etale",
            ChartInvalid => "chart_invalid",
            NotSmooth { .. } => "not_smooth",
            OddDimension(_) => "odd_dimension",
            WeilViolation { .. } => "weil_violation",
            NonIntegerIntermediate { .. } => "non_integer_intermediate",
            CountMismatch { .. } => "count_mismatch",
            NonExactDivision => "non_exact_division",
            PrymDegrees { .. } => "prym_degrees",
            BudgetExceeded { .. } => "budget_exceeded",
            DegreeCapExceeded { .. } => "degree_cap_exceeded",
            PairCapExceeded { .. } => "pair_cap_exceeded",
            Internal(_) => "internal",
        }
    }

    /// True for resource-budget errors (CLI exit code 4).
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::DegreeCapExceeded { .. } | Error::PairCapExceeded { .. }
        )
    }

    /// True for internal invariant breaches (CLI exit code 5).
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
