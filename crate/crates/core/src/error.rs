use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("variable index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a Jacobian map: det J = {det}")]
    NotJacobianMap { det: String },

    #[error("not a Poisson endomorphism: {{x{i}', x{j}'}} has residual {residual}")]
    NotPoisson { i: usize, j: usize, residual: String },

    #[error("image of x{index} is not of the form x{index} + higher terms: {image}")]
    NotUnipotent { index: usize, image: String },

    #[error("linear part is singular")]
    SingularLinearPart,

    #[error("1-form is not closed: d{i}(f{j}) != d{j}(f{i})")]
    NotClosed { i: usize, j: usize },

    #[error("generator {generator} does not preserve the order filtration (order {order})")]
    FiltrationNotPreserved { generator: String, order: String },

    #[error("relation {relation} fails with residual {residual}")]
    RelationFailure { relation: String, residual: String },

    #[error("zero input not allowed: {0}")]
    ZeroInput(&'static str),

    #[error("division is not exact")]
    InexactDivision,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
