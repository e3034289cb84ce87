//! Cause ranking from bipolar effect profiles.
//!
//! Each cause describes its effects on an attribute by a pair of fuzzy sets:
//! a lower profile of values that are guaranteed possible effects and an
//! upper profile of values that are not impossible. An observation is scored
//! against the upper profile by sup-min overlap (consistency) and against
//! the lower profile by inf of Gödel implication (relevance).

use std::collections::BTreeMap;

use crate::error::DiagnosisError;
use crate::measures::{FuzzySet, Graded};
use crate::scalar::{inf, sup, Degree, Grade};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeDomain {
    pub name: String,
    values: Vec<String>,
}

impl AttributeDomain {
    pub fn new(name: impl Into<String>, values: Vec<String>) -> Result<Self, DiagnosisError> {
        let name = name.into();
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(DiagnosisError::DuplicateValue(name, v.clone()));
            }
        }
        Ok(AttributeDomain { name, values })
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    /// Fuzzy set over this domain from `(value, degree)` pairs; unlisted
    /// values get 0.
    pub fn fuzzy<T: Grade>(&self, entries: &[(&str, Degree<T>)]) -> Result<FuzzySet<T>, DiagnosisError> {
        let mut membership = vec![Degree::zero(); self.values.len()];
        for (value, d) in entries {
            let i = self.values.iter().position(|v| v == value).ok_or_else(|| DiagnosisError::UnknownValue {
                attribute: self.name.clone(),
                value: value.to_string(),
            })?;
            membership[i] = *d;
        }
        Ok(FuzzySet::new(self.values.clone(), membership))
    }

    pub fn constant<T: Grade>(&self, d: Degree<T>) -> FuzzySet<T> {
        FuzzySet::constant(self.values.clone(), d)
    }
}

/// `x ⇒ y = 1` if `x <= y`, else `y`.
pub fn godel_implies<T: Grade>(x: Degree<T>, y: Degree<T>) -> Degree<T> {
    if x <= y {
        Degree::one()
    } else {
        y
    }
}

/// `cons(O, π^*) = sup_u min(O(u), π^*(u))`
pub fn cons_index<T: Grade>(observation: &FuzzySet<T>, upper: &FuzzySet<T>) -> Result<Degree<T>, DiagnosisError> {
    if !observation.same_domain(upper) {
        return Err(DiagnosisError::DomainMismatch);
    }
    Ok(sup(observation.degrees().iter().zip(upper.degrees()).map(|(o, p)| *o.min(p))))
}

/// `rel(O, π_*) = inf_u (O(u) ⇒ π_*(u))` with Gödel implication.
pub fn rel_index<T: Grade>(observation: &FuzzySet<T>, lower: &FuzzySet<T>) -> Result<Degree<T>, DiagnosisError> {
    if !observation.same_domain(lower) {
        return Err(DiagnosisError::DomainMismatch);
    }
    Ok(inf(observation.degrees().iter().zip(lower.degrees()).map(|(o, l)| godel_implies(*o, *l))))
}

/// Lower and upper effect profile of one cause on one attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfilePair<T: Grade = Rational> {
    lower: FuzzySet<T>,
    upper: FuzzySet<T>,
}

impl<T: Grade> ProfilePair<T> {
    /// `None` unless both sets share a domain and `lower <= upper` pointwise.
    pub fn new(lower: FuzzySet<T>, upper: FuzzySet<T>) -> Option<Self> {
        let coherent = lower.same_domain(&upper)
            && lower.degrees().iter().zip(upper.degrees()).all(|(l, u)| l <= u);
        coherent.then_some(ProfilePair { lower, upper })
    }

    /// Lower `≡ 0`, upper `≡ 1`.
    pub fn vacuous(domain: &AttributeDomain) -> Self {
        ProfilePair { lower: domain.constant(Degree::zero()), upper: domain.constant(Degree::one()) }
    }

    pub fn lower(&self) -> &FuzzySet<T> {
        &self.lower
    }

    pub fn upper(&self) -> &FuzzySet<T> {
        &self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauseModel<T: Grade = Rational> {
    pub name: String,
    profiles: BTreeMap<String, ProfilePair<T>>,
}

impl<T: Grade> CauseModel<T> {
    pub fn new(name: impl Into<String>) -> Self {
        CauseModel { name: name.into(), profiles: BTreeMap::new() }
    }

    pub fn with_profile(mut self, attribute: &str, lower: FuzzySet<T>, upper: FuzzySet<T>) -> Result<Self, DiagnosisError> {
        let pair = ProfilePair::new(lower, upper).ok_or_else(|| DiagnosisError::IncoherentProfile {
            cause: self.name.clone(),
            attribute: attribute.to_string(),
        })?;
        self.profiles.insert(attribute.to_string(), pair);
        Ok(self)
    }

    pub fn profile(&self, attribute: &str) -> Option<&ProfilePair<T>> {
        self.profiles.get(attribute)
    }

    pub fn profiles(&self) -> impl Iterator<Item = (&str, &ProfilePair<T>)> {
        self.profiles.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Fuzzy observations, at most one per attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation<T: Grade = Rational> {
    entries: BTreeMap<String, FuzzySet<T>>,
}

impl<T: Grade> Default for Observation<T> {
    fn default() -> Self {
        Observation { entries: BTreeMap::new() }
    }
}

impl<T: Grade> Observation<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, attribute: &str, set: FuzzySet<T>) -> Result<(), DiagnosisError> {
        if self.entries.contains_key(attribute) {
            return Err(DiagnosisError::RepeatedObservation(attribute.to_string()));
        }
        self.entries.insert(attribute.to_string(), set);
        Ok(())
    }

    pub fn with(mut self, attribute: &str, set: FuzzySet<T>) -> Result<Self, DiagnosisError> {
        self.observe(attribute, set)?;
        Ok(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &FuzzySet<T>)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every observed fuzzy set reaches 1 somewhere.
    pub fn is_normalized(&self) -> bool {
        self.entries.values().all(|o| o.is_normalized())
    }
}

/// Attribute domains plus the causes described over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosisModel<T: Grade = Rational> {
    attributes: Vec<AttributeDomain>,
    causes: Vec<CauseModel<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauseScore<T: Grade = Rational> {
    pub cause: String,
    pub cons: Degree<T>,
    pub rel: Degree<T>,
}

impl<T: Grade> DiagnosisModel<T> {
    pub fn new(attributes: Vec<AttributeDomain>) -> Result<Self, DiagnosisError> {
        for (i, a) in attributes.iter().enumerate() {
            if attributes[..i].iter().any(|b| b.name == a.name) {
                return Err(DiagnosisError::DuplicateAttribute(a.name.clone()));
            }
        }
        Ok(DiagnosisModel { attributes, causes: Vec::new() })
    }

    pub fn attribute(&self, name: &str) -> Result<&AttributeDomain, DiagnosisError> {
        self.attributes
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| DiagnosisError::UnknownAttribute(name.to_string()))
    }

    pub fn attributes(&self) -> &[AttributeDomain] {
        &self.attributes
    }

    pub fn causes(&self) -> &[CauseModel<T>] {
        &self.causes
    }

    /// Adds a cause after checking its profiles against the declared domains.
    pub fn add_cause(&mut self, cause: CauseModel<T>) -> Result<(), DiagnosisError> {
        if self.causes.iter().any(|c| c.name == cause.name) {
            return Err(DiagnosisError::DuplicateCause(cause.name));
        }
        for (attr, pair) in cause.profiles() {
            if pair.lower().labels() != self.attribute(attr)?.values() {
                return Err(DiagnosisError::DomainMismatch);
            }
        }
        self.causes.push(cause);
        Ok(())
    }

    /// Scores every cause and sorts by consistency, then relevance (both
    /// descending), then name. Indices combine across attributes by min;
    /// a cause without a profile for an observed attribute is scored
    /// against the vacuous pair.
    pub fn rank_causes(&self, observation: &Observation<T>) -> Result<Vec<CauseScore<T>>, DiagnosisError> {
        let observed: Vec<(&AttributeDomain, &FuzzySet<T>)> = observation
            .iter()
            .map(|(attr, set)| {
                let domain = self.attribute(attr)?;
                if set.labels() != domain.values() {
                    return Err(DiagnosisError::DomainMismatch);
                }
                Ok((domain, set))
            })
            .collect::<Result<_, _>>()?;
        let mut scores = Vec::with_capacity(self.causes.len());
        for cause in &self.causes {
            let (mut cons, mut rel) = (Degree::one(), Degree::one());
            for (domain, set) in &observed {
                let vacuous;
                let pair = match cause.profile(&domain.name) {
                    Some(p) => p,
                    None => {
                        vacuous = ProfilePair::vacuous(domain);
                        &vacuous
                    }
                };
                cons = cons.min(cons_index(set, pair.upper())?);
                rel = rel.min(rel_index(set, pair.lower())?);
            }
            scores.push(CauseScore { cause: cause.name.clone(), cons, rel });
        }
        scores.sort_by(|a, b| b.cons.cmp(&a.cons).then(b.rel.cmp(&a.rel)).then_with(|| a.cause.cmp(&b.cause)));
        Ok(scores)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Event;

    fn deg(s: &str) -> Degree {
        s.parse().unwrap()
    }

    fn fever() -> AttributeDomain {
        AttributeDomain::new("fever", ["37", "38", "39", "40"].map(String::from).to_vec()).unwrap()
    }

    fn crisp(domain: &AttributeDomain, values: &[&str]) -> FuzzySet {
        let entries: Vec<(&str, Degree)> = values.iter().map(|v| (*v, Degree::one())).collect();
        domain.fuzzy(&entries).unwrap()
    }

    #[test]
    fn godel_implication() {
        assert_eq!(godel_implies(deg(".3"), deg(".5")), deg("1"));
        assert_eq!(godel_implies(deg(".5"), deg(".3")), deg(".3"));
        for x in ["0", ".4", "1"] {
            assert_eq!(godel_implies(deg(x), deg(x)), deg("1"));
        }
    }

    #[test]
    fn consistency_index() {
        let d = fever();
        let high = crisp(&d, &["39", "40"]);
        assert_eq!(cons_index(&high, &high).unwrap(), deg("1"));
        assert_eq!(cons_index(&d.constant(deg("0")), &high).unwrap(), deg("0"));
        let graded = d.fuzzy(&[("38", deg(".7")), ("39", deg(".4"))]).unwrap();
        assert_eq!(cons_index(&crisp(&d, &["38", "39"]), &graded).unwrap(), graded.possibility(&Event::from_indices(4, [1, 2])));
    }

    #[test]
    fn relevance_index() {
        let d = fever();
        let high = crisp(&d, &["39", "40"]);
        assert_eq!(rel_index(&d.constant(deg("0")), &high).unwrap(), deg("1"));
        assert_eq!(rel_index(&crisp(&d, &["37"]), &high).unwrap(), deg("0"));
        let graded = d.fuzzy(&[("38", deg(".7")), ("39", deg(".4"))]).unwrap();
        assert_eq!(rel_index(&crisp(&d, &["38", "39"]), &graded).unwrap(), deg(".4"));
    }

    #[test]
    fn domain_mismatch() {
        let other = AttributeDomain::new("t", vec!["a".into()]).unwrap();
        let d = fever();
        assert_eq!(cons_index(&other.constant(deg("1")), &d.constant(deg("1"))), Err(DiagnosisError::DomainMismatch));
        assert_eq!(rel_index(&other.constant(deg("1")), &d.constant(deg("1"))), Err(DiagnosisError::DomainMismatch));
    }

    fn flu_and_cold() -> DiagnosisModel {
        let d = fever();
        let mut model = DiagnosisModel::new(vec![d.clone()]).unwrap();
        let high = crisp(&d, &["39", "40"]);
        let low = crisp(&d, &["37", "38"]);
        model.add_cause(CauseModel::new("flu").with_profile("fever", high.clone(), high).unwrap()).unwrap();
        model.add_cause(CauseModel::new("cold").with_profile("fever", low.clone(), low).unwrap()).unwrap();
        model
    }

    #[test]
    fn ranking() {
        let model = flu_and_cold();
        let obs = Observation::new().with("fever", crisp(&fever(), &["39"])).unwrap();
        let ranked = model.rank_causes(&obs).unwrap();
        assert_eq!(ranked[0], CauseScore { cause: "flu".into(), cons: deg("1"), rel: deg("1") });
        assert_eq!(ranked[1], CauseScore { cause: "cold".into(), cons: deg("0"), rel: deg("0") });
    }

    #[test]
    fn empty_observation_is_vacuous() {
        let model = flu_and_cold();
        let ranked = model.rank_causes(&Observation::new()).unwrap();
        assert!(ranked.iter().all(|s| s.cons.is_one() && s.rel.is_one()));
        assert_eq!(ranked[0].cause, "cold");
    }

    #[test]
    fn relevance_breaks_ties() {
        let d = fever();
        let mut model = DiagnosisModel::new(vec![d.clone()]).unwrap();
        let top = d.constant(deg("1"));
        let lo = |x: &str| d.fuzzy(&[("37", deg(x)), ("38", deg(x)), ("39", deg(x)), ("40", deg(x))]).unwrap();
        model.add_cause(CauseModel::new("a").with_profile("fever", lo(".3"), top.clone()).unwrap()).unwrap();
        model.add_cause(CauseModel::new("b").with_profile("fever", lo(".8"), top).unwrap()).unwrap();
        let obs = Observation::new().with("fever", crisp(&d, &["39"])).unwrap();
        let ranked = model.rank_causes(&obs).unwrap();
        assert_eq!(ranked.iter().map(|s| s.cause.as_str()).collect::<Vec<_>>(), ["b", "a"]);
        assert_eq!(ranked[0].rel, deg(".8"));
    }

    #[test]
    fn missing_profile_defaults_to_vacuous_pair() {
        let d = fever();
        let mut model = DiagnosisModel::new(vec![d.clone()]).unwrap();
        model.add_cause(CauseModel::new("unknown")).unwrap();
        let obs = Observation::new().with("fever", d.fuzzy(&[("39", deg(".6"))]).unwrap()).unwrap();
        let ranked = model.rank_causes(&obs).unwrap();
        assert_eq!((ranked[0].cons, ranked[0].rel), (deg(".6"), deg("0")));
    }

    #[test]
    fn model_errors() {
        let d = fever();
        let high = crisp(&d, &["39", "40"]);
        assert!(matches!(
            CauseModel::new("x").with_profile("fever", d.constant(deg("1")), high),
            Err(DiagnosisError::IncoherentProfile { .. })
        ));
        let model = flu_and_cold();
        let other = AttributeDomain::new("cough", vec!["yes".into()]).unwrap();
        let obs = Observation::new().with("cough", other.constant(deg("1"))).unwrap();
        assert_eq!(model.rank_causes(&obs), Err(DiagnosisError::UnknownAttribute("cough".into())));
        let mut obs = Observation::new();
        obs.observe("fever", d.constant(deg("1"))).unwrap();
        assert!(matches!(obs.observe("fever", d.constant(deg("1"))), Err(DiagnosisError::RepeatedObservation(_))));
        assert!(matches!(d.fuzzy(&[("41", deg("1"))]), Err(DiagnosisError::UnknownValue { .. })));
    }
}
