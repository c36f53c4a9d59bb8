use thiserror::Error;

/// Errors raised by the simulator, planner and search drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {0} is outside the supported range 1..={max}", max = crate::sv::MAX_QUBITS)]
    Size(usize),

    #[error("qubit {qubit} is out of range for a {n_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("basis index {index} is out of range for a {n_qubits}-qubit state")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("register [{start}, {end}) is empty or exceeds {n_qubits} qubits")]
    BadRegister {
        start: usize,
        end: usize,
        n_qubits: usize,
    },

    #[error("shot count must be positive")]
    ZeroShots,

    #[error("non-finite gate angle {0}")]
    NonFiniteAngle(f64),

    #[error("Hamming weight {k} is outside [0, {n}]")]
    WeightOutOfRange { n: usize, k: usize },

    #[error("rotation angle {0} is outside [0, pi]")]
    OmegaOutOfRange(f64),

    #[error("no rotation reaches amplitude {target} (maximum is {max})")]
    NoSolution { target: f64, max: f64 },

    #[error("arcsin argument {0} exceeds 1")]
    InfeasibleAngle(f64),

    #[error("target set is empty")]
    EmptyTargets,

    #[error("oracle flips no basis states")]
    EmptyFlipSet,

    #[error("width mismatch: expected {expected} qubits, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    #[error("binomial mode requires a rotation angle")]
    MissingOmega,

    #[error("invalid bit pattern {0:?}")]
    BadPattern(String),

    #[error("invalid adaptive schedule: {0}")]
    BadSchedule(String),

    #[error("gate list parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
