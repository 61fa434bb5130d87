use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("modulus mismatch: expected {0}, found {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has every field element as a root")]
    ZeroPolynomial,
    #[error("nonzero isotropic vector {0:?}")]
    Isotropic(Vec<u32>),
    #[error("exhaustive search over F_{p}^{dim} is too large")]
    SearchTooLarge { p: u32, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Add,
    Mul,
}

impl std::fmt::Display for Table {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Table::Add => "addition",
            Table::Mul => "multiplication",
        })
    }
}

/// Why a pair of operation tables is not a left brace.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a brace needs at least one element")]
    Empty,
    #[error("{table} table is not square")]
    NotSquare { table: Table },
    #[error("tables have different sizes ({add} and {mul})")]
    SizeMismatch { add: usize, mul: usize },
    #[error("{table} table entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange {
        table: Table,
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("{table} table has no identity element")]
    NoIdentity { table: Table },
    #[error("{table} table has identity {identity}, but element 0 must be the identity")]
    IdentityNotZero { table: Table, identity: usize },
    #[error("identities differ: addition has {add}, multiplication has {mul}")]
    IdentitiesDiffer { add: usize, mul: usize },
    #[error("{table} table is not a group: element {element} has no inverse / a row or column repeats")]
    NotLatin { table: Table, element: usize },
    #[error("{table} is not associative at ({a}, {b}, {c})")]
    NotAssociative {
        table: Table,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("addition is not commutative at ({a}, {b})")]
    AddNotAbelian { a: usize, b: usize },
    #[error("brace law a(b+c) = ab + ac - a fails at ({a}, {b}, {c})")]
    BraceLaw { a: usize, b: usize, c: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid brace: {0}")]
    Invalid(#[from] ValidationError),
    #[error("{what}: size {actual} exceeds the configured cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subset is empty")]
    EmptySubset,
    #[error("masks and braces disagree in size ({expected} vs {found})")]
    SizeMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    /// Two routes that must agree did not. Always a bug in this crate.
    #[error("internal inconsistency: {0}")]
    Engine(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
