use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A qubit label outside `1..=qubit_count`.
    QubitOutOfRange { qubit: usize, qubit_count: usize },
    /// A two-qubit gate with identical operands.
    DuplicateOperand { qubit: usize },
    /// The operation needs a circuit without terminal measurement tags.
    HasMeasurements,
    /// Dense unitary construction is capped to keep memory bounded.
    TooManyQubits { qubit_count: usize, limit: usize },
    /// Sampling requires at least one shot.
    ZeroShots,
    /// Two objects that must agree on register size do not.
    LengthMismatch { expected: usize, found: usize },
    /// Expectation values are only defined for Hermitian Pauli strings.
    NonHermitian,
    /// A probability outside `[0, 1]`.
    InvalidProbability { name: &'static str, value: f64 },
    /// The gate kind has no rule in the requested transformation.
    UnsupportedGate,
    /// Measurement bases that are not one of the two legal teleportation patterns.
    UnknownBasisPattern,
    /// Neither direction of a CNOT is available on the device.
    NoCoupling { control: usize, target: usize },
    /// The device graph has no path between two qubits.
    Unreachable { from: usize, to: usize },
    /// An adjacency matrix that is not symmetric with a zero diagonal.
    InvalidGraph,
    /// A syndrome check must cover at least one qubit.
    EmptySupport,
    /// A parameter outside its documented range.
    OutOfRange { name: &'static str, value: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::QubitOutOfRange { qubit, qubit_count } => {
                write!(f, "qubit {qubit} outside register of {qubit_count} qubits")
            }
            Error::DuplicateOperand { qubit } => write!(f, "qubit {qubit} used twice in one gate"),
            Error::HasMeasurements => write!(f, "circuit carries measurement tags"),
            Error::TooManyQubits { qubit_count, limit } => {
                write!(f, "{qubit_count} qubits exceeds the limit of {limit}")
            }
            Error::ZeroShots => write!(f, "shot count must be at least 1"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::NonHermitian => write!(f, "pauli string has an imaginary phase"),
            Error::InvalidProbability { name, value } => {
                write!(f, "{name} = {value} is not a probability")
            }
            Error::UnsupportedGate => write!(f, "gate not supported by this operation"),
            Error::UnknownBasisPattern => write!(f, "unknown measurement basis pattern"),
            Error::NoCoupling { control, target } => {
                write!(f, "no coupling between qubits {control} and {target}")
            }
            Error::Unreachable { from, to } => write!(f, "no path from qubit {from} to {to}"),
            Error::InvalidGraph => write!(f, "adjacency matrix must be symmetric with zero diagonal"),
            Error::EmptySupport => write!(f, "syndrome check has an empty support"),
            Error::OutOfRange { name, value } => write!(f, "{name} = {value} is out of range"),
        }
    }
}

impl core::error::Error for Error {}
