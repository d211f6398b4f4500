use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Evaluation errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{cells} cells do not fill a {rows}x{cols} grid")]
    Shape {
        rows: usize,
        cols: usize,
        cells: usize,
    },

    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("bar undefined on w")]
    BarOfFailure,

    #[error("hat undefined: {0}")]
    HatUndefined(&'static str),

    #[error("not an integer encoding")]
    NotIntegerEncoding,

    #[error("not a rational encoding: {0}")]
    NotRationalEncoding(&'static str),

    #[error("integer overflow")]
    Overflow,

    #[error("magnitude {value} exceeds cap {cap}")]
    MagnitudeCap { value: String, cap: u64 },

    #[error("connective {kind} expects {expected} operand(s)")]
    Arity { kind: &'static str, expected: usize },

    #[error("no morphism structure for the empty lattice")]
    NoMorphismStructure,

    #[error("intersection needs at least one binding")]
    NoBindings,

    #[error("variant not in union")]
    VariantNotInUnion,

    #[error("program failed")]
    ProgramFailed,

    #[error("result is not a state: {0}")]
    NotAState(String),

    #[error("template root must be a lattice")]
    TemplateRoot,

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
}

impl Error {
    /// Whether the error reports an exceeded resource limit rather than a
    /// semantic failure.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::MagnitudeCap { .. } | Error::Overflow)
    }
}
