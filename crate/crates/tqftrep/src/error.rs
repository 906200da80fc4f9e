use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and representation layers.
#[derive(Debug, Error)]
pub enum TqftError {
    #[error("conductor must be at least 3, got {0}")]
    ConductorTooSmall(u64),
    #[error("exponent {s} is not coprime to conductor {m}")]
    NotCoprime { s: u64, m: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("order of A^-4 is {r_eff}, need at least 3")]
    LevelTooSmall { r_eff: u64 },
    #[error("inadmissible triple ({0}, {1}, {2})")]
    InadmissibleTriple(i64, i64, i64),
    #[error("inadmissible tetrahedron face ({0}, {1}, {2})")]
    InadmissibleFace(i64, i64, i64),
    #[error("vanishing theta denominator in 6j-symbol")]
    VanishingTheta,
    #[error("color {color} outside range 0..={max}")]
    ColorOutOfRange { color: i64, max: i64 },
    #[error("negative argument {0} to a quantum factorial")]
    NegativeFactorial(i64),
    #[error("generator index {index} out of range for {n} strands")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("empty path basis for n={n}, m_color={m_color}")]
    EmptyBasis { n: usize, m_color: i64 },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("boundary mismatch composing diagrams: {0} vs {1}")]
    BoundaryMismatch(usize, usize),
    #[error("diagram is not a planar matching")]
    NonPlanar,
    #[error("shape needs {needed} strands, above the configured cap {cap}")]
    ShapeTooLarge { needed: usize, cap: usize },
    #[error("Jones-Wenzl projector f^({n}) is not defined here: {reason}")]
    JonesWenzlUndefined { n: usize, reason: String },
    #[error("denominator vanishes when specializing a Laurent fraction")]
    SpecializationPole,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("malformed trivalent graph: {0}")]
    MalformedGraph(String),
    #[error("level mismatch: exact side has r_eff={r_eff}, numeric side has r={r}")]
    LevelMismatch { r_eff: u64, r: u64 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, TqftError>;
