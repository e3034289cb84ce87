use std::cmp::Ordering;

use thiserror::Error;

use crate::logic::Event;
use crate::scalar::{Degree, Grade};

use super::{Graded, PossibilityDistribution};

/// Evaluation of an event by a bipolar pair: `(Δ(A), Π(A))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipolarValue<T: Grade = num_rational::Ratio<i64>> {
    pub delta: Degree<T>,
    pub pi: Degree<T>,
}

impl<T: Grade> BipolarValue<T> {
    pub fn new(delta: Degree<T>, pi: Degree<T>) -> Self {
        BipolarValue { delta, pi }
    }

    /// `(0, 1)`: nothing guaranteed, nothing excluded.
    pub fn vacuous() -> Self {
        Self::new(Degree::zero(), Degree::one())
    }

    /// `delta <= pi`. Fails only for values of the empty event or values
    /// built by hand.
    pub fn is_consistent(&self) -> bool {
        self.delta <= self.pi
    }

    /// `mM((a, b), (c, d)) = (min(a, c), max(b, d))`
    pub fn min_max(self, other: Self) -> Self {
        Self::new(self.delta.min(other.delta), self.pi.max(other.pi))
    }

    /// `Mm((a, b), (c, d)) = (max(a, c), min(b, d))`
    pub fn max_min(self, other: Self) -> Self {
        Self::new(self.delta.max(other.delta), self.pi.min(other.pi))
    }

    /// `1 - (a, b) = (1 - b, 1 - a)`
    pub fn dual(self) -> Self {
        Self::new(self.pi.complement(), self.delta.complement())
    }

    /// "Better informed than": `self ⊑ other` iff `self.delta >= other.delta`
    /// and `self.pi <= other.pi`. `Less` means strictly better informed.
    pub fn informed_cmp(&self, other: &Self) -> Option<Ordering> {
        product_order(other.delta.cmp(&self.delta), self.pi.cmp(&other.pi))
    }

    /// "Less possible than": componentwise order on `(delta, pi)`.
    pub fn possible_cmp(&self, other: &Self) -> Option<Ordering> {
        product_order(self.delta.cmp(&other.delta), self.pi.cmp(&other.pi))
    }

    /// Both components strictly greater than `other`'s.
    pub fn strictly_dominates(&self, other: &Self) -> bool {
        self.delta > other.delta && self.pi > other.pi
    }
}

fn product_order(first: Ordering, second: Ordering) -> Option<Ordering> {
    use Ordering::*;
    match (first, second) {
        (Equal, o) | (o, Equal) => Some(o),
        (Less, Less) => Some(Less),
        (Greater, Greater) => Some(Greater),
        _ => None,
    }
}

/// `(N(A), ∇(A))`, the dual evaluation of an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualValue<T: Grade = num_rational::Ratio<i64>> {
    pub necessity: Degree<T>,
    pub potential_necessity: Degree<T>,
}

/// Interpretations where the lower distribution exceeds the upper one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lower distribution exceeds upper distribution at {} interpretation(s)", witnesses.len())]
pub struct ConsistencyViolation {
    pub witnesses: Vec<usize>,
}

/// Outcome of the opt-in check of `max(N, Δ) <= min(Π, ∇)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq6Report {
    pub upper_normalized: bool,
    pub lower_vanishes: bool,
    /// A nonempty proper event violating the inequality, when one was found.
    pub violation: Option<Event>,
    /// Whether every event was examined. Only small universes are searched
    /// when the preconditions fail; when they hold, the inequality is
    /// implied for every event and nothing needs searching.
    pub exhaustive: bool,
}

impl Eq6Report {
    pub fn preconditions_hold(&self) -> bool {
        self.upper_normalized && self.lower_vanishes
    }

    pub fn holds(&self) -> bool {
        self.violation.is_none() && (self.preconditions_hold() || self.exhaustive)
    }
}

/// Universes up to this many elements are searched exhaustively by
/// [`BipolarPair::check_eq6`].
pub const EQ6_SEARCH_LIMIT: usize = 16;

/// A lower distribution `π_*` (guaranteed possibility) and an upper one
/// `π^*` (non-impossibility) with `π_* <= π^*` pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipolarPair<T: Grade = num_rational::Ratio<i64>> {
    lower: PossibilityDistribution<T>,
    upper: PossibilityDistribution<T>,
}

impl<T: Grade> BipolarPair<T> {
    pub fn new(
        lower: PossibilityDistribution<T>,
        upper: PossibilityDistribution<T>,
    ) -> Result<Self, ConsistencyViolation> {
        assert_eq!(lower.size(), upper.size(), "pair components disagree on the universe");
        let witnesses: Vec<usize> =
            (0..lower.size()).filter(|&u| lower.degree(u) > upper.degree(u)).collect();
        if witnesses.is_empty() {
            Ok(BipolarPair { lower, upper })
        } else {
            Err(ConsistencyViolation { witnesses })
        }
    }

    /// Lower `≡ 0`, upper `≡ 1`.
    pub fn vacuous(size: usize) -> Self {
        BipolarPair {
            lower: PossibilityDistribution::constant(size, Degree::zero()),
            upper: PossibilityDistribution::vacuous(size),
        }
    }

    pub fn lower(&self) -> &PossibilityDistribution<T> {
        &self.lower
    }

    pub fn upper(&self) -> &PossibilityDistribution<T> {
        &self.upper
    }

    pub fn size(&self) -> usize {
        self.lower.size()
    }

    /// `(Δ, Π)(A)`; delta from the lower distribution, pi from the upper.
    /// For `A = ∅` this is `(1, 0)`, the one value with `delta > pi`.
    pub fn eval(&self, event: &Event) -> BipolarValue<T> {
        BipolarValue::new(self.lower.guaranteed(event), self.upper.possibility(event))
    }

    /// `(N, ∇)(A) = 1 - (Δ, Π)(A^c)`.
    pub fn eval_dual(&self, event: &Event) -> DualValue<T> {
        let dual = self.eval(&event.complement()).dual();
        DualValue { necessity: dual.delta, potential_necessity: dual.pi }
    }

    pub fn check_eq6(&self) -> Eq6Report {
        let upper_normalized = self.upper.is_normalized();
        let lower_vanishes = self.lower.vanishes_somewhere();
        let mut report = Eq6Report { upper_normalized, lower_vanishes, violation: None, exhaustive: false };
        if report.preconditions_hold() || self.size() > EQ6_SEARCH_LIMIT {
            return report;
        }
        let n = self.size();
        report.exhaustive = true;
        report.violation = (1..(1u64 << n) - 1).map(|mask| Event::from_mask(n, mask)).find(|a| {
            let (v, d) = (self.eval(a), self.eval_dual(a));
            d.necessity.max(v.delta) > v.pi.min(d.potential_necessity)
        });
        report
    }
}
