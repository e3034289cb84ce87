//! Bipolar possibilistic representations.
//!
//! Information is carried by two possibility distributions over the same
//! universe: an upper one `π^*` bounding what is not impossible, compiled
//! under minimal specificity from necessity-type constraints, and a lower one
//! `π_*` collecting what is guaranteed possible, compiled under maximal
//! specificity from guaranteed-possibility constraints. The pair is
//! consistent when `π_* <= π^*`.
//!
//! All numeric types are generic over a [`Grade`] backend. The defaults are
//! exact rationals ([`Rational`]); the `F64*` aliases select floating point.

pub mod bases;
pub mod comparative;
pub mod conditioning;
pub mod diagnosis;
pub mod error;
pub mod format;
pub mod logic;
pub mod measures;
pub mod networks;
pub mod scalar;

pub use error::{BaseError, ConditioningError, DiagnosisError, LogicError, NetworkError};
pub use diagnosis::{AttributeDomain, CauseModel, CauseScore, DiagnosisModel, Observation};
pub use networks::{BipolarNetwork, JointResult, NodeSpec, Violation, WeakenedBound};
pub use logic::{parse_formula, Event, Formula, Interpretation, VariableTable};
pub use measures::{
    BipolarPair, BipolarValue, ConsistencyViolation, DualValue, FuzzySet, Graded,
    PossibilityDistribution,
};
pub use scalar::{Degree, DegreeError, Grade};

/// Exact rational scalar, the default backend.
pub type Rational = num_rational::Ratio<i64>;

pub type F64Degree = Degree<f64>;
pub type F64Distribution = PossibilityDistribution<f64>;
pub type F64Pair = BipolarPair<f64>;
