use thiserror::Error;

use crate::measures::ConsistencyViolation;
use crate::scalar::DegreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("{count} variables declared, limit is {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("`{0}` is not a valid variable name")]
    BadIdentifier(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("weight must be positive")]
    ZeroWeight,
    #[error("formula uses variable #{0}, outside the base's variable table")]
    ForeignVariable(usize),
    #[error("premise is not a {0}")]
    NotAClause(&'static str),
    #[error("pivot variable #{0} does not occur with opposite signs in the two premises")]
    NoComplementaryPivot(usize),
    #[error("the two bases are declared over different variables")]
    VariableMismatch,
    #[error(transparent)]
    Inconsistent(#[from] ConsistencyViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditioningError {
    #[error("conditioning on the empty event")]
    EmptyEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagnosisError {
    #[error("attribute `{0}` is not declared")]
    UnknownAttribute(String),
    #[error("attribute `{0}` declared twice")]
    DuplicateAttribute(String),
    #[error("attribute `{attribute}` has no value `{value}`")]
    UnknownValue { attribute: String, value: String },
    #[error("fuzzy sets are defined over different domains")]
    DomainMismatch,
    #[error("attribute `{0}` observed more than once")]
    RepeatedObservation(String),
    #[error("cause `{0}` declared twice")]
    DuplicateCause(String),
    #[error("attribute `{0}` lists value `{1}` twice")]
    DuplicateValue(String, String),
    #[error("lower profile exceeds upper profile for cause `{cause}` on attribute `{attribute}`")]
    IncoherentProfile { cause: String, attribute: String },
    #[error("{0}")]
    Degree(#[from] DegreeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("node `{0}` declared twice")]
    DuplicateNode(String),
    #[error("node `{node}` lists unknown parent `{parent}`")]
    UnknownParent { node: String, parent: String },
    #[error("node `{node}` lists parent `{parent}` twice")]
    RepeatedParent { node: String, parent: String },
    #[error("node `{node}`: context has {got} values, node has {expected} parents")]
    ContextArity { node: String, expected: usize, got: usize },
    #[error("node `{node}`: row given twice")]
    DuplicateRow { node: String },
    #[error("parent graph has a cycle through {}", .0.join(", "))]
    Cycle(Vec<String>),
    #[error("network fails validation ({} problem(s))", .0.len())]
    Invalid(Vec<crate::networks::Violation>),
}
