use thiserror::Error;

use crate::circuit::Circuit;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rows are linearly dependent: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("{what} is {value}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("stabilizer {index} ({literal}) is not a product of Z operators")]
    NotZType { index: usize, literal: String },

    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("gates overlap on qubit {qubit} inside one layer")]
    OverlappingSupports { qubit: usize },

    #[error("light cone grew to {size} qubits (limit {limit})")]
    LightConeTooLarge { size: usize, limit: usize },

    #[error("gate matrix is not unitary (deviation {deviation:e})")]
    NonUnitaryGate { deviation: f64 },

    #[error("circuit does not preserve the codespace (residual {residual:e})")]
    NotPreserving { residual: f64 },

    #[error("enumeration would produce {count} circuits, budget is {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error("counterexample: circuit with {} gates violates the no-go bound", .circuit.gates().len())]
    CounterexampleFound { circuit: Box<Circuit> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
