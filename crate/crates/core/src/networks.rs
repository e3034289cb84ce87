//! Bipolar possibilistic networks over binary variables.
//!
//! Every node carries, for both of its values and each instantiation of its
//! parents, a local pair `(Δ(x | ctx), Π(x | ctx))`. The joint upper
//! distribution is the min of the local Π entries along an interpretation,
//! the raw joint lower distribution the max of the local Δ entries.

use std::fmt;

use crate::error::NetworkError;
use crate::logic::{Event, VariableTable, DEFAULT_MAX_VARS};
use crate::measures::{BipolarValue, Graded, PossibilityDistribution};
use crate::scalar::{Degree, Grade};
use crate::Rational;

/// Unresolved node description, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSpec<T: Grade = Rational> {
    pub name: String,
    pub parents: Vec<String>,
    /// `(value, parent values in declared parent order, local pair)`
    pub rows: Vec<(bool, Vec<bool>, BipolarValue<T>)>,
}

impl<T: Grade> NodeSpec<T> {
    pub fn new(name: impl Into<String>, parents: &[&str]) -> Self {
        NodeSpec { name: name.into(), parents: parents.iter().map(|p| p.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(mut self, value: bool, context: &[bool], local: BipolarValue<T>) -> Self {
        self.rows.push((value, context.to_vec(), local));
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Node<T: Grade> {
    parents: Vec<usize>,
    /// index `2 * context + (value ? 0 : 1)`, contexts by binary counting
    /// over the parents with the first parent most significant
    table: Vec<Option<BipolarValue<T>>>,
}

fn context_index(context: &[bool]) -> usize {
    context.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

fn context_values(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|i| index >> (arity - 1 - i) & 1 == 1).collect()
}

/// One failed condition found by [`BipolarNetwork::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingEntry { node: String, value: bool, context: Vec<bool> },
    /// `max(Π(x|ctx), Π(¬x|ctx)) != 1`
    PiNormalization { node: String, context: Vec<bool> },
    /// `min(Δ(x|ctx), Δ(¬x|ctx)) != 0`
    DeltaNormalization { node: String, context: Vec<bool> },
    /// `Δ(x|ctx) > Π(x|ctx)`
    Coherence { node: String, value: bool, context: Vec<bool> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = |c: &[bool]| {
            if c.is_empty() {
                "-".to_string()
            } else {
                c.iter().map(|&b| if b { "1" } else { "0" }).collect()
            }
        };
        match self {
            Violation::MissingEntry { node, value, context } => {
                write!(f, "missing entry: node {node}, value {}, context {}", *value as u8, ctx(context))
            }
            Violation::PiNormalization { node, context } => {
                write!(f, "pi normalization: node {node}, context {}", ctx(context))
            }
            Violation::DeltaNormalization { node, context } => {
                write!(f, "delta normalization: node {node}, context {}", ctx(context))
            }
            Violation::Coherence { node, value, context } => {
                write!(f, "coherence (delta > pi): node {node}, value {}, context {}", *value as u8, ctx(context))
            }
        }
    }
}

/// DAG of binary variables with local bipolar tables. Nodes define the
/// variable table in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct BipolarNetwork<T: Grade = Rational> {
    vars: VariableTable,
    nodes: Vec<Node<T>>,
}

/// Joint distributions of a network, with the raw lower distribution kept
/// next to its revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointResult<T: Grade = Rational> {
    pub upper: PossibilityDistribution<T>,
    pub lower_raw: PossibilityDistribution<T>,
    pub lower_revised: PossibilityDistribution<T>,
    /// Interpretations where `lower_raw > upper`.
    pub violations: Vec<usize>,
}

/// A local guaranteed-possibility entry no longer met by the revised lower
/// distribution: `Δ_revised(x ∧ ctx) < Δ(x | ctx)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakenedBound<T: Grade = Rational> {
    pub node: String,
    pub value: bool,
    pub context: Vec<bool>,
    pub local: Degree<T>,
    pub revised: Degree<T>,
}

impl<T: Grade> BipolarNetwork<T> {
    pub fn new(specs: Vec<NodeSpec<T>>) -> Result<Self, NetworkError> {
        Self::with_limit(specs, DEFAULT_MAX_VARS)
    }

    pub fn with_limit(specs: Vec<NodeSpec<T>>, max_vars: usize) -> Result<Self, NetworkError> {
        for (i, s) in specs.iter().enumerate() {
            if specs[..i].iter().any(|o| o.name == s.name) {
                return Err(NetworkError::DuplicateNode(s.name.clone()));
            }
        }
        let vars = VariableTable::with_limit(specs.iter().map(|s| s.name.clone()), max_vars)?;
        let mut nodes = Vec::with_capacity(specs.len());
        for spec in specs {
            let mut parents = Vec::with_capacity(spec.parents.len());
            for p in &spec.parents {
                let idx = vars.position(p).ok_or_else(|| NetworkError::UnknownParent {
                    node: spec.name.clone(),
                    parent: p.clone(),
                })?;
                if parents.contains(&idx) {
                    return Err(NetworkError::RepeatedParent { node: spec.name.clone(), parent: p.clone() });
                }
                parents.push(idx);
            }
            let mut table = vec![None; 2 << parents.len()];
            for (value, context, local) in spec.rows {
                if context.len() != parents.len() {
                    return Err(NetworkError::ContextArity {
                        node: spec.name.clone(),
                        expected: parents.len(),
                        got: context.len(),
                    });
                }
                let slot = &mut table[2 * context_index(&context) + usize::from(!value)];
                if slot.is_some() {
                    return Err(NetworkError::DuplicateRow { node: spec.name.clone() });
                }
                *slot = Some(local);
            }
            nodes.push(Node { parents, table });
        }
        Ok(BipolarNetwork { vars, nodes })
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn parents(&self, node: usize) -> &[usize] {
        &self.nodes[node].parents
    }

    pub fn local(&self, node: usize, value: bool, context: &[bool]) -> Option<BipolarValue<T>> {
        self.nodes[node].table[2 * context_index(context) + usize::from(!value)]
    }

    /// Names of the nodes lying on a directed cycle, or `None` for a DAG.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        let n = self.nodes.len();
        let mut indegree: Vec<usize> = self.nodes.iter().map(|node| node.parents.len()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut done = vec![false; n];
        while let Some(i) = ready.pop() {
            done[i] = true;
            for (j, node) in self.nodes.iter().enumerate() {
                if node.parents.contains(&i) {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        let stuck: Vec<String> = (0..n).filter(|&i| !done[i]).map(|i| self.vars.name(i).to_string()).collect();
        (!stuck.is_empty()).then_some(stuck)
    }

    /// Every violated table condition; empty iff the network is valid.
    /// A cycle is reported as an error before any table is inspected.
    pub fn validate(&self) -> Result<Vec<Violation>, NetworkError> {
        if let Some(cycle) = self.find_cycle() {
            return Err(NetworkError::Cycle(cycle));
        }
        let mut report = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            let name = self.vars.name(i).to_string();
            for ctx in 0..1usize << node.parents.len() {
                let context = context_values(ctx, node.parents.len());
                let entries = [node.table[2 * ctx], node.table[2 * ctx + 1]];
                for (value, entry) in [true, false].into_iter().zip(entries) {
                    match entry {
                        None => report.push(Violation::MissingEntry { node: name.clone(), value, context: context.clone() }),
                        Some(v) if !v.is_consistent() => {
                            report.push(Violation::Coherence { node: name.clone(), value, context: context.clone() })
                        }
                        Some(_) => {}
                    }
                }
                if let [Some(pos), Some(neg)] = entries {
                    if !pos.pi.max(neg.pi).is_one() {
                        report.push(Violation::PiNormalization { node: name.clone(), context: context.clone() });
                    }
                    if !pos.delta.min(neg.delta).is_zero() {
                        report.push(Violation::DeltaNormalization { node: name.clone(), context: context.clone() });
                    }
                }
            }
        }
        Ok(report)
    }

    fn ensure_valid(&self) -> Result<(), NetworkError> {
        let report = self.validate()?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(NetworkError::Invalid(report))
        }
    }

    /// Local entries selected by `world`, one per node.
    fn locals(&self, world: usize) -> impl Iterator<Item = BipolarValue<T>> + '_ {
        let interp = self.vars.interpretation(world);
        self.nodes.iter().enumerate().map(move |(i, node)| {
            let ctx = node.parents.iter().fold(0, |acc, &p| acc << 1 | interp.value(p) as usize);
            node.table[2 * ctx + usize::from(!interp.value(i))].expect("validated table is total")
        })
    }

    /// `π^*(u) = min_X Π(x | u_Par(X))`
    pub fn joint_upper(&self) -> Result<PossibilityDistribution<T>, NetworkError> {
        self.ensure_valid()?;
        Ok(self.upper_unchecked())
    }

    /// `π_*(u) = max_X Δ(x | u_Par(X))`
    pub fn joint_lower_raw(&self) -> Result<PossibilityDistribution<T>, NetworkError> {
        self.ensure_valid()?;
        Ok(self.lower_unchecked())
    }

    /// `min(π^*, raw π_*)`, which is always below the upper distribution.
    pub fn joint_lower_revised(&self) -> Result<PossibilityDistribution<T>, NetworkError> {
        Ok(self.joint()?.lower_revised)
    }

    pub fn joint(&self) -> Result<JointResult<T>, NetworkError> {
        self.ensure_valid()?;
        let upper = self.upper_unchecked();
        let lower_raw = self.lower_unchecked();
        let violations = (0..upper.size()).filter(|&u| lower_raw.degree(u) > upper.degree(u)).collect();
        let lower_revised = lower_raw.pointwise_min(&upper);
        Ok(JointResult { upper, lower_raw, lower_revised, violations })
    }

    fn upper_unchecked(&self) -> PossibilityDistribution<T> {
        PossibilityDistribution::from_fn(self.vars.world_count(), |u| {
            self.locals(u).map(|l| l.pi).min().unwrap_or_else(Degree::one)
        })
    }

    fn lower_unchecked(&self) -> PossibilityDistribution<T> {
        PossibilityDistribution::from_fn(self.vars.world_count(), |u| {
            self.locals(u).map(|l| l.delta).max().unwrap_or_else(Degree::zero)
        })
    }

    /// Models of `node = value ∧ parents = context`.
    pub fn local_event(&self, node: usize, value: bool, context: &[bool]) -> Event {
        let parents = &self.nodes[node].parents;
        Event::from_predicate(self.vars.world_count(), |w| {
            let interp = self.vars.interpretation(w);
            interp.value(node) == value && parents.iter().zip(context).all(|(&p, &c)| interp.value(p) == c)
        })
    }

    /// Local Δ entries that the revised lower distribution no longer
    /// guarantees. The raw lower distribution meets all of them by
    /// construction.
    pub fn weakened_bounds(&self, joint: &JointResult<T>) -> Vec<WeakenedBound<T>> {
        let mut out = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for ctx in 0..1usize << node.parents.len() {
                let context = context_values(ctx, node.parents.len());
                for value in [true, false] {
                    let Some(local) = self.local(i, value, &context) else { continue };
                    let revised = joint.lower_revised.guaranteed(&self.local_event(i, value, &context));
                    if revised < local.delta {
                        out.push(WeakenedBound {
                            node: self.vars.name(i).to_string(),
                            value,
                            context: context.clone(),
                            local: local.delta,
                            revised,
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(s: &str) -> Degree {
        s.parse().unwrap()
    }

    fn bv(d: &str, p: &str) -> BipolarValue {
        BipolarValue::new(deg(d), deg(p))
    }

    fn root(name: &str, pos: BipolarValue, neg: BipolarValue) -> NodeSpec {
        NodeSpec::new(name, &[]).row(true, &[], pos).row(false, &[], neg)
    }

    fn incoherent_pair() -> BipolarNetwork {
        BipolarNetwork::new(vec![
            root("x", bv(".3", ".3"), bv("0", "1")),
            root("y", bv(".5", ".6"), bv("0", "1")),
        ])
        .unwrap()
    }

    fn example() -> BipolarNetwork {
        let child = [
            (true, [true, true], (".4", "1")),
            (true, [true, false], ("0", "1")),
            (true, [false, true], ("0", ".5")),
            (true, [false, false], (".4", ".8")),
            (false, [true, true], ("0", ".6")),
            (false, [true, false], (".3", "1")),
            (false, [false, true], (".2", "1")),
            (false, [false, false], ("0", "1")),
        ];
        let x3 = child
            .iter()
            .fold(NodeSpec::new("x3", &["x1", "x2"]), |s, (v, c, (d, p))| s.row(*v, c, bv(d, p)));
        BipolarNetwork::new(vec![
            root("x1", bv("0", ".5"), bv(".45", "1")),
            root("x2", bv("0", "1"), bv(".4", ".5")),
            x3,
        ])
        .unwrap()
    }

    #[test]
    fn consistent_network_needs_no_revision() {
        let net = example();
        assert!(net.validate().unwrap().is_empty());
        let joint = net.joint().unwrap();
        assert!(joint.violations.is_empty());
        assert_eq!(joint.lower_raw, joint.lower_revised);
        assert!(net.weakened_bounds(&joint).is_empty());
        // !x1 x2 !x3 and x1 x2 !x3
        assert_eq!(joint.upper.degree(0b010), deg("1"));
        assert_eq!(joint.lower_raw.degree(0b110), deg("0"));
    }

    #[test]
    fn single_node() {
        let net = BipolarNetwork::new(vec![root("x", bv("0", "1"), bv(".2", ".4"))]).unwrap();
        assert!(net.validate().unwrap().is_empty());
        let joint = net.joint().unwrap();
        assert_eq!(joint.upper.degree(1), deg("1"));
        assert_eq!(joint.upper.degree(0), deg(".4"));
        assert_eq!(joint.lower_raw.degree(0), deg(".2"));
    }

    #[test]
    fn validation_catches_each_condition() {
        let net = BipolarNetwork::new(vec![root("x", bv("0", ".5"), bv("0", ".5"))]).unwrap();
        assert_eq!(
            net.validate().unwrap(),
            vec![Violation::PiNormalization { node: "x".into(), context: vec![] }]
        );
        let net = BipolarNetwork::new(vec![root("x", bv(".6", ".4"), bv("0", "1"))]).unwrap();
        assert_eq!(
            net.validate().unwrap(),
            vec![Violation::Coherence { node: "x".into(), value: true, context: vec![] }]
        );
        let net = BipolarNetwork::new(vec![root("x", bv(".1", "1"), bv(".2", "1"))]).unwrap();
        assert_eq!(
            net.validate().unwrap(),
            vec![Violation::DeltaNormalization { node: "x".into(), context: vec![] }]
        );
        let net = BipolarNetwork::new(vec![NodeSpec::new("x", &[]).row(true, &[], bv("0", "1"))]).unwrap();
        assert_eq!(
            net.validate().unwrap(),
            vec![Violation::MissingEntry { node: "x".into(), value: false, context: vec![] }]
        );
        assert!(matches!(net.joint(), Err(NetworkError::Invalid(_))));
    }

    #[test]
    fn cycles_are_structural_errors() {
        let net = BipolarNetwork::<Rational>::new(vec![NodeSpec::new("a", &["b"]), NodeSpec::new("b", &["a"])]).unwrap();
        assert_eq!(net.validate(), Err(NetworkError::Cycle(vec!["a".into(), "b".into()])));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            BipolarNetwork::<Rational>::new(vec![NodeSpec::new("a", &["zz"])]),
            Err(NetworkError::UnknownParent { .. })
        ));
        assert!(matches!(
            BipolarNetwork::new(vec![NodeSpec::new("a", &[]).row(true, &[true], bv("0", "1"))]),
            Err(NetworkError::ContextArity { .. })
        ));
        assert!(matches!(
            BipolarNetwork::new(vec![root("a", bv("0", "1"), bv("0", "1")), root("a", bv("0", "1"), bv("0", "1"))]),
            Err(NetworkError::DuplicateNode(_))
        ));
    }

    #[test]
    fn incoherent_lower_is_revised() {
        let net = incoherent_pair();
        let joint = net.joint().unwrap();
        let xy = 3;
        assert_eq!(joint.upper.degree(xy), deg(".3"));
        assert_eq!(joint.lower_raw.degree(xy), deg(".5"));
        assert_eq!(joint.violations, vec![xy]);
        assert_eq!(joint.lower_revised.degree(xy), deg(".3"));
        assert!(joint.lower_revised.is_below(&joint.upper));
        // Δ(y) = .5 is no longer guaranteed on y-worlds
        let weakened = net.weakened_bounds(&joint);
        assert_eq!(weakened.len(), 1);
        assert_eq!((weakened[0].node.as_str(), weakened[0].value), ("y", true));
        assert_eq!(weakened[0].revised, deg(".3"));
    }
}
