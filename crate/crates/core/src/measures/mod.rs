//! Possibility distributions, fuzzy sets, the set functions Π, N, Δ, ∇ and
//! bipolar pairs.

mod distribution;
mod pair;

pub use distribution::{FuzzySet, Graded, PossibilityDistribution};
pub use pair::{
    BipolarPair, BipolarValue, ConsistencyViolation, DualValue, Eq6Report, EQ6_SEARCH_LIMIT,
};
