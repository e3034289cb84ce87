//! Qualitative (min/max) conditioning.
//!
//! `Π(·|A)` is the greatest solution of `Π(A∩B) = min(Π(B|A), Π(A))` and
//! `Δ(·|A)` the least solution of `Δ(A∩B) = max(Δ(B|A), Δ(A))`.

use crate::error::ConditioningError;
use crate::logic::Event;
use crate::measures::{BipolarPair, BipolarValue, Graded, PossibilityDistribution};
use crate::scalar::{Degree, Grade};

fn nonempty(evidence: &Event) -> Result<(), ConditioningError> {
    if evidence.is_empty() {
        Err(ConditioningError::EmptyEvidence)
    } else {
        Ok(())
    }
}

/// `Π(B|A)`: 1 when `Π(A∩B) = Π(A)`, otherwise `Π(A∩B)`.
pub fn cond_pi<T: Grade, D: Graded<T>>(d: &D, evidence: &Event, hypothesis: &Event) -> Result<Degree<T>, ConditioningError> {
    nonempty(evidence)?;
    let both = d.possibility(&evidence.intersection(hypothesis));
    let prior = d.possibility(evidence);
    if both == prior {
        return Ok(Degree::one());
    }
    debug_assert!(d.possibility(&evidence.difference(hypothesis)) > both);
    Ok(both)
}

/// `N(B|A) = 1 - Π(B^c|A)`.
pub fn cond_n<T: Grade, D: Graded<T>>(d: &D, evidence: &Event, hypothesis: &Event) -> Result<Degree<T>, ConditioningError> {
    Ok(cond_pi(d, evidence, &hypothesis.complement())?.complement())
}

/// `Δ(B|A)`: `Δ(A∩B)` when `Δ(A) < Δ(A∩B)`, otherwise 0.
pub fn cond_delta<T: Grade, D: Graded<T>>(d: &D, evidence: &Event, hypothesis: &Event) -> Result<Degree<T>, ConditioningError> {
    nonempty(evidence)?;
    let both = d.guaranteed(&evidence.intersection(hypothesis));
    let prior = d.guaranteed(evidence);
    if prior < both {
        return Ok(both);
    }
    debug_assert!(both == prior && d.guaranteed(&evidence.difference(hypothesis)) >= both);
    Ok(Degree::zero())
}

/// `π(·|A)`: 1 on the most possible worlds of `A`, unchanged on the rest of
/// `A`, 0 outside `A`.
pub fn cond_distribution<T: Grade>(d: &PossibilityDistribution<T>, evidence: &Event) -> Result<PossibilityDistribution<T>, ConditioningError> {
    nonempty(evidence)?;
    let top = d.possibility(evidence);
    Ok(PossibilityDistribution::from_fn(d.size(), |u| {
        if !evidence.contains(u) {
            Degree::zero()
        } else if d.degree(u) == top {
            Degree::one()
        } else {
            d.degree(u)
        }
    }))
}

/// `(Δ, Π)(B|A)` with Δ conditioned on the lower distribution and Π on the
/// upper one.
pub fn cond_bipolar<T: Grade>(pair: &BipolarPair<T>, evidence: &Event, hypothesis: &Event) -> Result<BipolarValue<T>, ConditioningError> {
    Ok(BipolarValue::new(
        cond_delta(pair.lower(), evidence, hypothesis)?,
        cond_pi(pair.upper(), evidence, hypothesis)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn deg(s: &str) -> Degree<Rational> {
        s.parse().unwrap()
    }

    fn dist(values: &[&str]) -> PossibilityDistribution {
        PossibilityDistribution::new(values.iter().map(|s| deg(s)).collect())
    }

    #[test]
    fn pi_examples() {
        let d = dist(&["1", ".6", ".3"]);
        let bc = Event::from_indices(3, [1, 2]);
        assert_eq!(cond_pi(&d, &bc, &Event::full(3)).unwrap(), deg("1"));
        assert_eq!(cond_pi(&d, &bc, &Event::from_indices(3, [2])).unwrap(), deg(".3"));
        assert_eq!(cond_pi(&d, &Event::empty(3), &bc), Err(ConditioningError::EmptyEvidence));
    }

    #[test]
    fn n_examples() {
        let d = dist(&["1", ".6", ".3"]);
        let bc = Event::from_indices(3, [1, 2]);
        assert_eq!(cond_n(&d, &bc, &Event::full(3)).unwrap(), deg("1"));
        assert_eq!(cond_n(&d, &bc, &Event::from_indices(3, [1])).unwrap(), deg(".7"));
        assert_eq!(cond_n(&d, &bc, &Event::from_indices(3, [2])).unwrap(), deg("0"));
    }

    #[test]
    fn delta_examples() {
        let d = dist(&[".2", ".7", ".2"]);
        let ab = Event::from_indices(3, [0, 1]);
        assert_eq!(cond_delta(&d, &ab, &Event::from_indices(3, [1])).unwrap(), deg(".7"));
        assert_eq!(cond_delta(&d, &ab, &Event::full(3)).unwrap(), deg("0"));
        assert_eq!(cond_delta(&d, &ab, &Event::from_indices(3, [0])).unwrap(), deg("0"));
    }

    #[test]
    fn distribution_examples() {
        let d = dist(&["1", ".6", ".3"]);
        assert_eq!(cond_distribution(&d, &Event::full(3)).unwrap(), d);
        assert_eq!(cond_distribution(&d, &Event::from_indices(3, [1, 2])).unwrap(), dist(&["0", "1", ".3"]));
        // Π(A) = 0 is allowed: every A-world becomes fully possible
        let zero = dist(&["1", "0", "0"]);
        assert_eq!(cond_distribution(&zero, &Event::from_indices(3, [1, 2])).unwrap(), dist(&["0", "1", "1"]));
    }

    #[test]
    fn bipolar_self_conditioning() {
        let pair = BipolarPair::new(dist(&["0", ".3", ".5"]), dist(&[".4", "1", ".5"])).unwrap();
        let a = Event::from_indices(3, [0, 2]);
        assert_eq!(cond_bipolar(&pair, &a, &a).unwrap(), BipolarValue::new(deg("0"), deg("1")));
    }

    #[test]
    fn conditional_pi_matches_conditional_distribution() {
        let d = dist(&[".2", "1", ".5", ".5", "0", ".7", ".2", ".9"]);
        for a in 1..256u64 {
            let a = Event::from_mask(8, a);
            // with Π(A) = 0 the measure gives 1 to every B, the distribution
            // only to those meeting A
            if d.possibility(&a).is_zero() {
                let c = cond_distribution(&d, &a).unwrap();
                assert!(a.iter().all(|u| c.degree(u).is_one()));
                assert_eq!(cond_pi(&d, &a, &a.complement()).unwrap(), deg("1"));
                continue;
            }
            let c = cond_distribution(&d, &a).unwrap();
            for b in 0..256u64 {
                let b = Event::from_mask(8, b);
                assert_eq!(c.possibility(&b), cond_pi(&d, &a, &b).unwrap());
            }
        }
    }
}
