use serde::{Deserialize, Serialize};

use crate::logic::Event;
use crate::scalar::{inf, sup, Degree, Grade};

/// Anything that grades the elements of a finite indexed universe: a
/// possibility distribution over interpretations, or a fuzzy set over a
/// labeled domain. The four set functions and the two cuts are derived from
/// the grades alone.
pub trait Graded<T: Grade> {
    fn degrees(&self) -> &[Degree<T>];

    fn size(&self) -> usize {
        self.degrees().len()
    }

    fn degree(&self, index: usize) -> Degree<T> {
        self.degrees()[index]
    }

    /// `Π(A) = max_{u ∈ A} π(u)`, with `Π(∅) = 0`.
    fn possibility(&self, event: &Event) -> Degree<T> {
        self.check(event);
        sup(event.iter().map(|u| self.degree(u)))
    }

    /// Guaranteed possibility `Δ(A) = min_{u ∈ A} π(u)`, with `Δ(∅) = 1`.
    fn guaranteed(&self, event: &Event) -> Degree<T> {
        self.check(event);
        inf(event.iter().map(|u| self.degree(u)))
    }

    /// `N(A) = 1 - Π(A^c)`.
    fn necessity(&self, event: &Event) -> Degree<T> {
        self.possibility(&event.complement()).complement()
    }

    /// Potential necessity `∇(A) = 1 - Δ(A^c)`.
    fn potential_necessity(&self, event: &Event) -> Degree<T> {
        self.guaranteed(&event.complement()).complement()
    }

    /// `{u : A(u) >= alpha}`
    fn weak_cut(&self, alpha: Degree<T>) -> Event {
        Event::from_predicate(self.size(), |u| self.degree(u) >= alpha)
    }

    /// `{u : A(u) > alpha}`
    fn strict_cut(&self, alpha: Degree<T>) -> Event {
        Event::from_predicate(self.size(), |u| self.degree(u) > alpha)
    }

    fn height(&self) -> Degree<T> {
        sup(self.degrees().iter().copied())
    }

    /// Some element is fully possible.
    fn is_normalized(&self) -> bool {
        self.height().is_one()
    }

    /// Some element has degree 0.
    fn vanishes_somewhere(&self) -> bool {
        self.degrees().iter().any(|d| d.is_zero())
    }

    /// Distinct attained degrees, ascending.
    fn levels(&self) -> Vec<Degree<T>> {
        let mut levels = self.degrees().to_vec();
        levels.sort();
        levels.dedup();
        levels
    }

    /// `Π(A ∩ B) = min(Π(A), Π(B))`
    fn is_unrelated_pi(&self, a: &Event, b: &Event) -> bool {
        self.possibility(&a.intersection(b)) == self.possibility(a).min(self.possibility(b))
    }

    /// `Δ(A ∩ B) = max(Δ(A), Δ(B))`
    fn is_unrelated_delta(&self, a: &Event, b: &Event) -> bool {
        self.guaranteed(&a.intersection(b)) == self.guaranteed(a).max(self.guaranteed(b))
    }

    #[doc(hidden)]
    fn check(&self, event: &Event) {
        assert_eq!(event.universe_size(), self.size(), "event and grading disagree on the universe");
    }
}

/// Total map from interpretations (by canonical index) to degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PossibilityDistribution<T: Grade = num_rational::Ratio<i64>> {
    #[serde(with = "degree_vec")]
    degrees: Vec<Degree<T>>,
}

impl<T: Grade> PossibilityDistribution<T> {
    pub fn new(degrees: Vec<Degree<T>>) -> Self {
        PossibilityDistribution { degrees }
    }

    pub fn constant(size: usize, value: Degree<T>) -> Self {
        Self::new(vec![value; size])
    }

    /// `π ≡ 1`: total ignorance.
    pub fn vacuous(size: usize) -> Self {
        Self::constant(size, Degree::one())
    }

    pub fn from_fn(size: usize, f: impl FnMut(usize) -> Degree<T>) -> Self {
        Self::new((0..size).map(f).collect())
    }

    /// Characteristic function of `event`.
    pub fn indicator(event: &Event) -> Self {
        Self::from_fn(event.universe_size(), |u| {
            if event.contains(u) {
                Degree::one()
            } else {
                Degree::zero()
            }
        })
    }

    pub fn set(&mut self, index: usize, value: Degree<T>) {
        self.degrees[index] = value;
    }

    /// `self(u) <= other(u)` everywhere.
    pub fn is_below(&self, other: &Self) -> bool {
        assert_eq!(self.size(), other.size());
        self.degrees.iter().zip(&other.degrees).all(|(a, b)| a <= b)
    }

    pub fn pointwise_min(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size());
        Self::new(self.degrees.iter().zip(&other.degrees).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn into_degrees(self) -> Vec<Degree<T>> {
        self.degrees
    }
}

impl<T: Grade> Graded<T> for PossibilityDistribution<T> {
    fn degrees(&self) -> &[Degree<T>] {
        &self.degrees
    }
}

/// Membership function over a finite list of labeled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzySet<T: Grade = num_rational::Ratio<i64>> {
    labels: Vec<String>,
    membership: Vec<Degree<T>>,
}

impl<T: Grade> FuzzySet<T> {
    /// Panics if the two vectors differ in length.
    pub fn new(labels: Vec<String>, membership: Vec<Degree<T>>) -> Self {
        assert_eq!(labels.len(), membership.len(), "membership must be total over the domain");
        FuzzySet { labels, membership }
    }

    pub fn constant(labels: Vec<String>, value: Degree<T>) -> Self {
        let n = labels.len();
        Self::new(labels, vec![value; n])
    }

    /// Crisp subset given by its member indices.
    pub fn crisp(labels: Vec<String>, members: &Event) -> Self {
        assert_eq!(labels.len(), members.universe_size());
        let membership = (0..labels.len())
            .map(|i| if members.contains(i) { Degree::one() } else { Degree::zero() })
            .collect();
        Self::new(labels, membership)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn membership(&self, label: &str) -> Option<Degree<T>> {
        self.index_of(label).map(|i| self.membership[i])
    }

    pub fn same_domain(&self, other: &Self) -> bool {
        self.labels == other.labels
    }

    pub fn is_crisp(&self) -> bool {
        self.membership.iter().all(|d| d.is_zero() || d.is_one())
    }

    /// Elements with nonzero membership.
    pub fn support(&self) -> Event {
        self.strict_cut(Degree::zero())
    }

    /// Same domain, degrees mapped through `f`.
    pub fn map(&self, f: impl FnMut(Degree<T>) -> Degree<T>) -> Self {
        Self::new(self.labels.clone(), self.membership.iter().copied().map(f).collect())
    }
}

impl<T: Grade> Graded<T> for FuzzySet<T> {
    fn degrees(&self) -> &[Degree<T>] {
        &self.membership
    }
}

mod degree_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::{Degree, Grade};

    pub fn serialize<T: Grade, S: Serializer>(v: &[Degree<T>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|d| d.render()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, T: Grade, D: Deserializer<'de>>(d: D) -> Result<Vec<Degree<T>>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| Degree::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
