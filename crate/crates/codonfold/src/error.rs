use thiserror::Error;

/// Errors produced by sequence parsing, data-file loading, and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,

    #[error("invalid amino-acid code '{ch}' at position {pos}")]
    InvalidResidue { ch: char, pos: usize },

    #[error("invalid nucleotide '{ch}' at position {pos}")]
    InvalidBase { ch: char, pos: usize },

    #[error("sequence length {0} is not a multiple of 3")]
    LengthNotTriplet(usize),

    #[error("unknown codon '{0}'")]
    UnknownCodon(String),

    #[error("invalid structure character '{ch}' at position {pos}")]
    InvalidStructureChar { ch: char, pos: usize },

    #[error("unbalanced dot-bracket string: {0}")]
    UnbalancedStructure(String),

    #[error("pair ({i}, {j}) is invalid for sequence length {n}")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("position {0} appears in more than one pair")]
    PositionReused(usize),

    #[error("pairs ({a}, {b}) and ({c}, {d}) cross")]
    CrossingPairs { a: usize, b: usize, c: usize, d: usize },

    #[error("structure length {structure} does not match sequence length {sequence}")]
    LengthMismatch { sequence: usize, structure: usize },

    #[error("codon table: {0}")]
    CodonTable(String),

    #[error("energy parameters: {0}")]
    EnergyParams(String),

    #[error("assignment index {index} out of range at position {position}")]
    AssignmentOutOfRange { position: usize, index: usize },

    #[error("brute-force instance has {size:e} assignments, limit is {limit:e}")]
    InstanceTooLarge { size: f64, limit: f64 },

    #[error("exhaustive search supports at most {max} variables, model has {n}")]
    TooManyVariables { n: usize, max: usize },

    #[error("statevector simulation supports at most {max} qubits, model has {n}")]
    QubitBoundExceeded { n: usize, max: usize },

    #[error("tail fraction must be in (0, 1], got {0}")]
    InvalidTailFraction(f64),

    #[error("cannot take tail statistics of an empty sample set")]
    EmptySamples,

    #[error("penalty weight must be positive, got {0}")]
    InvalidPenaltyWeight(f64),

    #[error("solver returned an infeasible selection: {0}")]
    InfeasibleResult(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
