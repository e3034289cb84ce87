//! Weighted logical bases and their extreme distributions.
//!
//! A necessity base `Σ = {(a_i, γ_i)}` states `N(A_i) >= γ_i` and compiles to
//! the least specific distribution obeying it. A guaranteed-possibility base
//! `Ξ = {[b_j, δ_j]}` states `Δ(B_j) >= δ_j` and compiles to the most specific
//! one.

use std::marker::PhantomData;

use crate::error::BaseError;
use crate::logic::{Event, Formula, VariableTable};
use crate::measures::{BipolarPair, Graded, PossibilityDistribution};
use crate::scalar::{Degree, Grade};
use crate::Rational;

/// Formula tagged with a positive weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedFormula<T: Grade = Rational> {
    pub formula: Formula,
    pub weight: Degree<T>,
}

impl<T: Grade> WeightedFormula<T> {
    pub fn new(formula: Formula, weight: Degree<T>) -> Self {
        WeightedFormula { formula, weight }
    }
}

/// Marker for bases read as `N(A) >= w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecessityKind {}

/// Marker for bases read as `Δ(B) >= w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuaranteedKind {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBase<K, T: Grade = Rational> {
    vars: VariableTable,
    entries: Vec<WeightedFormula<T>>,
    kind: PhantomData<K>,
}

/// `Σ`: necessity-weighted formulas.
pub type NecessityBase<T = Rational> = WeightedBase<NecessityKind, T>;
/// `Ξ`: guaranteed-possibility-weighted formulas.
pub type GuaranteedBase<T = Rational> = WeightedBase<GuaranteedKind, T>;

impl<K, T: Grade> WeightedBase<K, T> {
    pub fn new(vars: VariableTable) -> Self {
        WeightedBase { vars, entries: Vec::new(), kind: PhantomData }
    }

    /// Adds an entry. Zero weights are vacuous and rejected; an entry equal
    /// to an existing one is ignored.
    pub fn push(&mut self, formula: Formula, weight: Degree<T>) -> Result<(), BaseError> {
        if weight.is_zero() {
            return Err(BaseError::ZeroWeight);
        }
        if let Some(v) = formula.max_var().filter(|&v| v >= self.vars.len()) {
            return Err(BaseError::ForeignVariable(v));
        }
        let entry = WeightedFormula::new(formula, weight);
        if !self.entries.contains(&entry) {
            self.entries.push(entry);
        }
        Ok(())
    }

    pub fn with(mut self, formula: Formula, weight: Degree<T>) -> Result<Self, BaseError> {
        self.push(formula, weight)?;
        Ok(self)
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn entries(&self) -> &[WeightedFormula<T>] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn model_sets(&self) -> Vec<(Event, Degree<T>)> {
        self.entries.iter().map(|e| (e.formula.models(&self.vars), e.weight)).collect()
    }
}

impl<T: Grade> NecessityBase<T> {
    /// `π^*(u) = 1` if `u` satisfies every formula, otherwise
    /// `1 - max{γ_i : u ⊭ a_i}`.
    pub fn compile_upper(&self) -> PossibilityDistribution<T> {
        let sets = self.model_sets();
        PossibilityDistribution::from_fn(self.vars.world_count(), |u| {
            sets.iter()
                .filter(|(models, _)| !models.contains(u))
                .map(|(_, w)| *w)
                .max()
                .map_or(Degree::one(), Degree::complement)
        })
    }

    /// Whether some constraint fails under the compiled distribution.
    /// Never true for `compile_upper`; exposed for hand-built distributions.
    pub fn violated_by(&self, dist: &PossibilityDistribution<T>) -> Vec<usize> {
        self.model_sets()
            .iter()
            .enumerate()
            .filter(|(_, (models, w))| dist.necessity(models) < *w)
            .map(|(i, _)| i)
            .collect()
    }

    /// `1 - height(π^*)`; zero iff the base is consistent.
    pub fn inconsistency_degree(&self) -> Degree<T> {
        self.compile_upper().height().complement()
    }

    /// One entry per attained level `α < 1` of `dist`:
    /// `N({u : dist(u) > α}) >= 1 - α`.
    pub fn from_fuzzy_upper(dist: &PossibilityDistribution<T>, vars: &VariableTable) -> Self {
        assert_eq!(dist.size(), vars.world_count());
        let mut base = Self::new(vars.clone());
        for alpha in dist.levels().into_iter().filter(|a| !a.is_one()) {
            let cut = dist.strict_cut(alpha);
            base.push(Formula::from_event(&cut, vars), alpha.complement())
                .expect("1 - α > 0 for α < 1");
        }
        base
    }
}

impl<T: Grade> GuaranteedBase<T> {
    /// `π_*(u) = max{δ_j : u ⊨ b_j}`, `0` when `u` satisfies no `b_j`.
    pub fn compile_lower(&self) -> PossibilityDistribution<T> {
        let sets = self.model_sets();
        PossibilityDistribution::from_fn(self.vars.world_count(), |u| {
            sets.iter()
                .filter(|(models, _)| models.contains(u))
                .map(|(_, w)| *w)
                .max()
                .unwrap_or_else(Degree::zero)
        })
    }

    pub fn violated_by(&self, dist: &PossibilityDistribution<T>) -> Vec<usize> {
        self.model_sets()
            .iter()
            .enumerate()
            .filter(|(_, (models, w))| dist.guaranteed(models) < *w)
            .map(|(i, _)| i)
            .collect()
    }

    /// One entry per attained level `α > 0` of `dist`:
    /// `Δ({u : dist(u) >= α}) >= α`.
    pub fn from_fuzzy_lower(dist: &PossibilityDistribution<T>, vars: &VariableTable) -> Self {
        assert_eq!(dist.size(), vars.world_count());
        let mut base = Self::new(vars.clone());
        for alpha in dist.levels().into_iter().filter(|a| !a.is_zero()) {
            let cut = dist.weak_cut(alpha);
            base.push(Formula::from_event(&cut, vars), alpha).expect("α > 0");
        }
        base
    }
}

/// Compiles both bases and checks `π_* <= π^*`.
pub fn make_pair<T: Grade>(
    upper: &NecessityBase<T>,
    lower: &GuaranteedBase<T>,
) -> Result<BipolarPair<T>, BaseError> {
    if upper.vars() != lower.vars() {
        return Err(BaseError::VariableMismatch);
    }
    Ok(BipolarPair::new(lower.compile_lower(), upper.compile_upper())?)
}

type Literal = (usize, bool);

fn collect_literals(formula: &Formula, conjunctive: bool, out: &mut Vec<Literal>) -> Result<(), BaseError> {
    let shape = if conjunctive { "conjunction of literals" } else { "clause" };
    match formula {
        Formula::Var(v) => out.push((*v, true)),
        Formula::Not(inner) => match **inner {
            Formula::Var(v) => out.push((v, false)),
            _ => return Err(BaseError::NotAClause(shape)),
        },
        Formula::True if conjunctive => {}
        Formula::False if !conjunctive => {}
        Formula::And(a, b) if conjunctive => {
            collect_literals(a, conjunctive, out)?;
            collect_literals(b, conjunctive, out)?;
        }
        Formula::Or(a, b) if !conjunctive => {
            collect_literals(a, conjunctive, out)?;
            collect_literals(b, conjunctive, out)?;
        }
        _ => return Err(BaseError::NotAClause(shape)),
    }
    Ok(())
}

fn cut_on_pivot<T: Grade>(
    first: &WeightedFormula<T>,
    second: &WeightedFormula<T>,
    pivot: usize,
    conjunctive: bool,
) -> Result<WeightedFormula<T>, BaseError> {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    collect_literals(&first.formula, conjunctive, &mut left)?;
    collect_literals(&second.formula, conjunctive, &mut right)?;
    let sign = [true, false]
        .into_iter()
        .find(|&s| left.contains(&(pivot, s)) && right.contains(&(pivot, !s)))
        .ok_or(BaseError::NoComplementaryPivot(pivot))?;
    let mut rest: Vec<Literal> = Vec::new();
    for lit in left.into_iter().filter(|&l| l != (pivot, sign)).chain(right.into_iter().filter(|&l| l != (pivot, !sign))) {
        if !rest.contains(&lit) {
            rest.push(lit);
        }
    }
    let parts = rest.into_iter().map(|(v, s)| Formula::literal(v, s));
    let formula = if conjunctive { Formula::conjunction(parts) } else { Formula::disjunction(parts) };
    Ok(WeightedFormula::new(formula, first.weight.min(second.weight)))
}

/// Possibilistic resolution: `(a ∨ b, α), (¬a ∨ c, β) ⊢ (b ∨ c, min(α, β))`.
/// Premises are clauses; `pivot` is the variable of `a`, which may occur
/// positively in either premise.
pub fn resolve_necessity<T: Grade>(
    first: &WeightedFormula<T>,
    second: &WeightedFormula<T>,
    pivot: usize,
) -> Result<WeightedFormula<T>, BaseError> {
    cut_on_pivot(first, second, pivot, false)
}

/// Cut rule for guaranteed-possibility formulas:
/// `[a ∧ b, α], [¬a ∧ c, β] ⊢ [b ∧ c, min(α, β)]`. Premises are
/// conjunctions of literals.
pub fn resolve_guaranteed<T: Grade>(
    first: &WeightedFormula<T>,
    second: &WeightedFormula<T>,
    pivot: usize,
) -> Result<WeightedFormula<T>, BaseError> {
    cut_on_pivot(first, second, pivot, true)
}
