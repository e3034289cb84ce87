//! Strict comparative possibility rules and their well-ordered partitions.
//!
//! A Π-rule `a -> b` reads `Π(A∩B) > Π(A∩B^c)`; a Δ-rule `a ~> b` reads
//! `Δ(A∩B) > Δ(A∩B^c)`. Π-rules are compiled to the least specific ordering
//! satisfying them, Δ-rules to the most specific one.

use thiserror::Error;

use crate::logic::{Event, Formula, VariableTable};
use crate::measures::{BipolarPair, Graded, PossibilityDistribution};
use crate::scalar::{Degree, Grade};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Pi,
    Delta,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComparativeRule {
    pub kind: RuleKind,
    pub context: Formula,
    pub conclusion: Formula,
}

impl ComparativeRule {
    pub fn pi(context: Formula, conclusion: Formula) -> Self {
        ComparativeRule { kind: RuleKind::Pi, context, conclusion }
    }

    pub fn delta(context: Formula, conclusion: Formula) -> Self {
        ComparativeRule { kind: RuleKind::Delta, context, conclusion }
    }

    /// `A ∩ B`
    pub fn left_part(&self, vars: &VariableTable) -> Event {
        self.context.models(vars).intersection(&self.conclusion.models(vars))
    }

    /// `A ∩ B^c`
    pub fn right_part(&self, vars: &VariableTable) -> Event {
        self.context.models(vars).difference(&self.conclusion.models(vars))
    }

    /// Whether `dist` satisfies the strict inequality this rule encodes.
    pub fn holds_in<T: Grade>(&self, dist: &PossibilityDistribution<T>, vars: &VariableTable) -> bool {
        let (left, right) = (self.left_part(vars), self.right_part(vars));
        match self.kind {
            RuleKind::Pi => dist.possibility(&left) > dist.possibility(&right),
            RuleKind::Delta => dist.guaranteed(&left) > dist.guaranteed(&right),
        }
    }
}

/// `Π(A) > Π(B)` as the Π-rule `a ∨ b -> ¬b`.
pub fn encode_global_inequality(a: Formula, b: Formula) -> ComparativeRule {
    ComparativeRule::pi(a.or(b.clone()), b.not())
}

/// Ordered partition `E_1, …, E_n` of the universe; `E_1` holds the most
/// possible elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WellOrderedPartition {
    strata: Vec<Event>,
}

impl WellOrderedPartition {
    /// Panics unless `strata` are nonempty, disjoint and cover the universe.
    pub fn new(strata: Vec<Event>) -> Self {
        let size = strata.first().map_or(0, Event::universe_size);
        let mut covered = Event::empty(size);
        for s in &strata {
            assert!(!s.is_empty(), "empty stratum");
            assert!(!s.intersects(&covered), "strata overlap");
            covered = covered.union(s);
        }
        assert!(covered.is_full(), "strata do not cover the universe");
        WellOrderedPartition { strata }
    }

    pub fn strata(&self) -> &[Event] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn universe_size(&self) -> usize {
        self.strata.first().map_or(0, Event::universe_size)
    }

    /// 0-based stratum index of `element`.
    pub fn rank(&self, element: usize) -> usize {
        self.strata
            .iter()
            .position(|s| s.contains(element))
            .expect("strata cover the universe")
    }

    /// `u ∈ E_i ↦ (n - i + 1) / n` for `n` strata.
    pub fn to_distribution<T: Grade>(&self) -> PossibilityDistribution<T> {
        let n = self.strata.len() as u64;
        let mut degrees = vec![Degree::one(); self.universe_size()];
        for (i, stratum) in self.strata.iter().enumerate() {
            let d = Degree::ratio(n - i as u64, n).expect("level within [0, 1]");
            for u in stratum.iter() {
                degrees[u] = d;
            }
        }
        PossibilityDistribution::new(degrees)
    }
}

/// A rule set the compilation procedure cannot stratify.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rule set is inconsistent: {} rule(s) still block {} interpretation(s)", rules.len(), unplaced.len())]
pub struct InconsistentRules {
    /// Indices (in input order) of the rules active at the stall point.
    pub rules: Vec<usize>,
    /// Elements that could not be placed.
    pub unplaced: Event,
}

struct Constraint {
    index: usize,
    left: Event,
    right: Event,
}

fn constraints(rules: &[ComparativeRule], kind: RuleKind, vars: &VariableTable) -> Result<Vec<Constraint>, InconsistentRules> {
    let all: Vec<Constraint> = rules
        .iter()
        .enumerate()
        .map(|(index, r)| {
            assert_eq!(r.kind, kind, "rule #{index} has the wrong kind");
            Constraint { index, left: r.left_part(vars), right: r.right_part(vars) }
        })
        .collect();
    // an empty left part can never be strictly above anything
    let empty: Vec<usize> = all.iter().filter(|c| c.left.is_empty()).map(|c| c.index).collect();
    if !empty.is_empty() {
        return Err(InconsistentRules { rules: empty, unplaced: Event::empty(vars.world_count()) });
    }
    Ok(all)
}

/// Generic layering loop. Each round takes every unplaced element outside
/// the `blocking` part of the active constraints, then retires the
/// constraints whose `releasing` part meets the new layer.
fn layer(
    mut active: Vec<Constraint>,
    size: usize,
    blocking: impl Fn(&Constraint) -> &Event,
    releasing: impl Fn(&Constraint) -> &Event,
) -> Result<Vec<Event>, InconsistentRules> {
    let mut unplaced = Event::full(size);
    let mut layers = Vec::new();
    while !unplaced.is_empty() {
        let blocked = active
            .iter()
            .fold(Event::empty(size), |acc, c| acc.union(blocking(c)));
        let next = unplaced.difference(&blocked);
        if next.is_empty() {
            return Err(InconsistentRules { rules: active.iter().map(|c| c.index).collect(), unplaced });
        }
        unplaced = unplaced.difference(&next);
        active.retain(|c| !releasing(c).intersects(&next));
        layers.push(next);
    }
    Ok(layers)
}

/// Least specific ordering satisfying every Π-rule: each round places all
/// interpretations that are not in the right part of a remaining rule.
pub fn wop_upper(rules: &[ComparativeRule], vars: &VariableTable) -> Result<WellOrderedPartition, InconsistentRules> {
    let active = constraints(rules, RuleKind::Pi, vars)?;
    let strata = layer(active, vars.world_count(), |c| &c.right, |c| &c.left)?;
    Ok(WellOrderedPartition::new(strata))
}

/// Most specific ordering satisfying every Δ-rule. Layers `S_1, S_2, …` are
/// built from the least possible upwards and then reversed.
pub fn wop_lower(rules: &[ComparativeRule], vars: &VariableTable) -> Result<WellOrderedPartition, InconsistentRules> {
    lower_layers(rules, vars).map(|mut layers| {
        layers.reverse();
        WellOrderedPartition::new(layers)
    })
}

/// The layers `S_1, S_2, …` of the Δ-rule procedure, least possible first.
pub fn lower_layers(rules: &[ComparativeRule], vars: &VariableTable) -> Result<Vec<Event>, InconsistentRules> {
    let active = constraints(rules, RuleKind::Delta, vars)?;
    layer(active, vars.world_count(), |c| &c.left, |c| &c.right)
}

/// Mixed comparative base over one variable table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparativeBase {
    pub vars: VariableTable,
    pub rules: Vec<ComparativeRule>,
}

/// Both orderings of a mixed base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledBase {
    pub upper: WellOrderedPartition,
    pub lower: WellOrderedPartition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("Π-rules: {0}")]
    Upper(InconsistentRules),
    #[error("Δ-rules: {0}")]
    Lower(InconsistentRules),
}

impl ComparativeBase {
    pub fn new(vars: VariableTable) -> Self {
        ComparativeBase { vars, rules: Vec::new() }
    }

    pub fn rules_of(&self, kind: RuleKind) -> Vec<ComparativeRule> {
        self.rules.iter().filter(|r| r.kind == kind).cloned().collect()
    }

    /// Compiles the Π-rules and the Δ-rules independently. Rule indices in
    /// errors refer to positions within the rules of that kind.
    pub fn compile(&self) -> Result<CompiledBase, CompileError> {
        let upper = wop_upper(&self.rules_of(RuleKind::Pi), &self.vars).map_err(CompileError::Upper)?;
        let lower = wop_lower(&self.rules_of(RuleKind::Delta), &self.vars).map_err(CompileError::Lower)?;
        Ok(CompiledBase { upper, lower })
    }
}

impl CompiledBase {
    /// Numeric embedding of both orderings, checked for `π_* <= π^*`.
    pub fn to_pair<T: Grade>(&self) -> Result<BipolarPair<T>, crate::ConsistencyViolation> {
        BipolarPair::new(self.lower.to_distribution(), self.upper.to_distribution())
    }
}

impl ComparativeBase {
    /// Compiles and embeds both orderings. Without Δ-rules nothing is
    /// guaranteed possible, so the lower distribution is 0 everywhere rather
    /// than the embedding of the single stratum.
    pub fn to_pair<T: Grade>(&self) -> Result<BipolarPair<T>, PairError> {
        let compiled = self.compile()?;
        if self.rules.iter().any(|r| r.kind == RuleKind::Delta) {
            return Ok(compiled.to_pair()?);
        }
        let lower = PossibilityDistribution::constant(self.vars.world_count(), Degree::zero());
        Ok(BipolarPair::new(lower, compiled.upper.to_distribution())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Inconsistent(#[from] crate::ConsistencyViolation),
}
