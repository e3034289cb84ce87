//! Line-oriented text formats for bases, rule sets, networks and diagnosis
//! models, plus the tab-separated distribution table.
//!
//! All formats share the same lexical rules: `#` starts a comment, blank
//! lines are ignored, and degrees are written as decimals (`0.45`, `.45`,
//! `1`) or fractions (`9/20`).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bases::{GuaranteedBase, NecessityBase};
use crate::comparative::{ComparativeBase, ComparativeRule};
use crate::diagnosis::{AttributeDomain, CauseModel, DiagnosisModel, Observation};
use crate::error::{BaseError, DiagnosisError, LogicError, NetworkError};
use crate::logic::{is_identifier, is_keyword, parse_formula, VariableTable};
use crate::measures::{BipolarValue, FuzzySet, PossibilityDistribution};
use crate::networks::{BipolarNetwork, NodeSpec};
use crate::scalar::{Degree, DegreeError, Grade};

/// An error tied to a line of the input. Line 0 means the file as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Diagnosis(#[from] DiagnosisError),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}: {}", self.line, self.kind)
        }
    }
}

impl std::error::Error for FormatError {}

impl FormatError {
    fn at(line: usize, kind: impl Into<FormatErrorKind>) -> Self {
        FormatError { line, kind: kind.into() }
    }

    fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, kind: FormatErrorKind::Syntax(message.into()) }
    }

    /// The declared variable count exceeds the configured limit.
    pub fn is_limit(&self) -> bool {
        matches!(
            self.kind,
            FormatErrorKind::Logic(LogicError::TooManyVariables { .. })
                | FormatErrorKind::Network(NetworkError::Logic(LogicError::TooManyVariables { .. }))
        )
    }
}

/// What a file contains, judged from its first directive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Base,
    Rules,
    Network,
    Model,
    Observation,
}

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim_end();
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

fn keyword<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.trim_start().strip_prefix(key)?;
    if key.ends_with(':') || rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

pub fn sniff(text: &str) -> Option<InputKind> {
    let mut saw_vars = false;
    for (_, line) in content_lines(text) {
        let first = line.split_whitespace().next().unwrap_or("");
        match first {
            "vars:" => saw_vars = true,
            "node" => return Some(InputKind::Network),
            "attribute" | "cause" => return Some(InputKind::Model),
            "obs" => return Some(InputKind::Observation),
            _ if line.trim_start().starts_with("PI:") || line.trim_start().starts_with("GD:") => {
                return Some(InputKind::Rules)
            }
            _ if line.trim_start().starts_with("N:") || line.trim_start().starts_with("D:") => {
                return Some(InputKind::Base)
            }
            _ if line.trim_start().starts_with("vars:") => saw_vars = true,
            _ => return None,
        }
    }
    saw_vars.then_some(InputKind::Base)
}

fn parse_degree<T: Grade>(line: usize, text: &str) -> Result<Degree<T>, FormatError> {
    text.trim().parse().map_err(|e| FormatError::at(line, FormatErrorKind::Degree(e)))
}

fn vars_header(line: usize, rest: &str, max_vars: usize) -> Result<VariableTable, FormatError> {
    VariableTable::with_limit(rest.split_whitespace(), max_vars).map_err(|e| FormatError::at(line, e))
}

/// Header of a base or rule file: `vars: p q r`. Returns the table and the
/// remaining lines.
fn split_header(text: &str, max_vars: usize) -> Result<(VariableTable, Vec<(usize, &str)>), FormatError> {
    let mut lines = content_lines(text).peekable();
    let vars = match lines.peek() {
        Some(&(n, line)) => match keyword(line, "vars:") {
            Some(rest) => {
                lines.next();
                vars_header(n, rest, max_vars)?
            }
            None => return Err(FormatError::syntax(n, "expected `vars:` header")),
        },
        None => VariableTable::with_limit(Vec::<String>::new(), max_vars).map_err(|e| FormatError::at(0, e))?,
    };
    Ok((vars, lines.collect()))
}

/// Contents of a base file: `N: <formula> : <weight>` and
/// `D: <formula> : <weight>` entries after a `vars:` header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseFile<T: Grade> {
    pub necessity: NecessityBase<T>,
    pub guaranteed: GuaranteedBase<T>,
}

impl<T: Grade> BaseFile<T> {
    pub fn vars(&self) -> &VariableTable {
        self.necessity.vars()
    }
}

pub fn parse_base_file<T: Grade>(text: &str, max_vars: usize) -> Result<BaseFile<T>, FormatError> {
    let (vars, lines) = split_header(text, max_vars)?;
    let mut necessity = NecessityBase::new(vars.clone());
    let mut guaranteed = GuaranteedBase::new(vars.clone());
    for (n, line) in lines {
        let line = line.trim();
        let (necessary, rest) = if let Some(rest) = line.strip_prefix("N:") {
            (true, rest)
        } else if let Some(rest) = line.strip_prefix("D:") {
            (false, rest)
        } else {
            return Err(FormatError::syntax(n, "expected `N:` or `D:` entry"));
        };
        let (formula, weight) = rest
            .rsplit_once(':')
            .ok_or_else(|| FormatError::syntax(n, "expected `<formula> : <weight>`"))?;
        let formula = parse_formula(formula.trim(), &vars).map_err(|e| FormatError::at(n, e))?;
        let weight = parse_degree(n, weight)?;
        let pushed = if necessary { necessity.push(formula, weight) } else { guaranteed.push(formula, weight) };
        pushed.map_err(|e| FormatError::at(n, e))?;
    }
    Ok(BaseFile { necessity, guaranteed })
}

/// Several base files over the same variables, merged into one.
pub fn merge_base_files<T: Grade>(files: Vec<BaseFile<T>>) -> Result<BaseFile<T>, BaseError> {
    let mut files = files.into_iter();
    let Some(mut merged) = files.next() else {
        return Ok(BaseFile {
            necessity: NecessityBase::new(VariableTable::new(Vec::<String>::new()).expect("empty table")),
            guaranteed: GuaranteedBase::new(VariableTable::new(Vec::<String>::new()).expect("empty table")),
        });
    };
    for file in files {
        if file.vars() != merged.vars() {
            return Err(BaseError::VariableMismatch);
        }
        for e in file.necessity.entries() {
            merged.necessity.push(e.formula.clone(), e.weight)?;
        }
        for e in file.guaranteed.entries() {
            merged.guaranteed.push(e.formula.clone(), e.weight)?;
        }
    }
    Ok(merged)
}

/// Contents of a rule file, with the source line of every rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulesFile {
    pub base: ComparativeBase,
    pub lines: Vec<usize>,
}

/// `PI: <formula> -> <formula>` and `GD: <formula> ~> <formula>` after a
/// `vars:` header.
pub fn parse_rules_file(text: &str, max_vars: usize) -> Result<RulesFile, FormatError> {
    let (vars, lines) = split_header(text, max_vars)?;
    let mut base = ComparativeBase::new(vars);
    let mut numbers = Vec::new();
    for (n, line) in lines {
        let line = line.trim();
        let (pi, rest, arrow) = if let Some(rest) = line.strip_prefix("PI:") {
            (true, rest, "->")
        } else if let Some(rest) = line.strip_prefix("GD:") {
            (false, rest, "~>")
        } else {
            return Err(FormatError::syntax(n, "expected `PI:` or `GD:` rule"));
        };
        let (context, conclusion) = rest
            .split_once(arrow)
            .ok_or_else(|| FormatError::syntax(n, format!("expected `<formula> {arrow} <formula>`")))?;
        let context = parse_formula(context.trim(), &base.vars).map_err(|e| FormatError::at(n, e))?;
        let conclusion = parse_formula(conclusion.trim(), &base.vars).map_err(|e| FormatError::at(n, e))?;
        base.rules.push(if pi {
            ComparativeRule::pi(context, conclusion)
        } else {
            ComparativeRule::delta(context, conclusion)
        });
        numbers.push(n);
    }
    Ok(RulesFile { base, lines: numbers })
}

fn literal(token: &str) -> (bool, &str) {
    match token.strip_prefix('!') {
        Some(name) => (false, name),
        None => (true, token),
    }
}

fn parse_local<T: Grade>(n: usize, text: &str) -> Result<BipolarValue<T>, FormatError> {
    let (mut delta, mut pi) = (None, None);
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| FormatError::syntax(n, format!("expected `key=degree`, found `{field}`")))?;
        let slot = match key {
            "delta" => &mut delta,
            "pi" => &mut pi,
            _ => return Err(FormatError::syntax(n, format!("unknown field `{key}`"))),
        };
        if slot.replace(parse_degree(n, value)?).is_some() {
            return Err(FormatError::syntax(n, format!("field `{key}` given twice")));
        }
    }
    match (delta, pi) {
        (Some(delta), Some(pi)) => Ok(BipolarValue::new(delta, pi)),
        _ => Err(FormatError::syntax(n, "row needs both `delta=` and `pi=`")),
    }
}

/// `node <name> [parents: <p1> <p2> …]`; the brackets are optional.
fn parse_node_header<T: Grade>(n: usize, rest: &str) -> Result<NodeSpec<T>, FormatError> {
    let rest = rest.trim();
    let rest = rest.replace(['[', ']'], " ");
    let (name, parents) = match rest.split_once("parents:") {
        Some((name, parents)) => (name.trim(), parents.split_whitespace().collect::<Vec<_>>()),
        None => (rest.trim(), Vec::new()),
    };
    if !is_identifier(name) || is_keyword(name) {
        return Err(FormatError::syntax(n, format!("`{name}` is not a valid node name")));
    }
    Ok(NodeSpec::new(name, &parents))
}

/// `<value-literal> | <parent literals or -> : delta=<d> pi=<p>`; the
/// `| …` part may be omitted for root nodes. Parent literals may come in any
/// order but must cover every parent exactly once.
fn parse_node_row<T: Grade>(n: usize, line: &str, spec: &mut NodeSpec<T>) -> Result<(), FormatError> {
    let (head, fields) = line
        .rsplit_once(':')
        .ok_or_else(|| FormatError::syntax(n, "expected `<literal> | <context> : delta=<d> pi=<p>`"))?;
    let (value, context) = match head.split_once('|') {
        Some((value, context)) => (value.trim(), context.trim()),
        None => (head.trim(), "-"),
    };
    let (positive, name) = literal(value);
    if name != spec.name {
        return Err(FormatError::syntax(n, format!("row literal `{value}` does not belong to node `{}`", spec.name)));
    }
    let mut assigned: Vec<Option<bool>> = vec![None; spec.parents.len()];
    if context != "-" {
        for token in context.split(|c: char| c.is_whitespace() || c == ',' || c == '&').filter(|t| !t.is_empty()) {
            let (v, p) = literal(token);
            let i = spec
                .parents
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| FormatError::syntax(n, format!("`{p}` is not a parent of `{}`", spec.name)))?;
            if assigned[i].replace(v).is_some() {
                return Err(FormatError::syntax(n, format!("parent `{p}` assigned twice")));
            }
        }
    }
    let context: Vec<bool> = assigned
        .into_iter()
        .zip(&spec.parents)
        .map(|(v, p)| v.ok_or_else(|| FormatError::syntax(n, format!("parent `{p}` not assigned"))))
        .collect::<Result<_, _>>()?;
    if spec.rows.iter().any(|(v, c, _)| *v == positive && *c == context) {
        return Err(FormatError::at(n, NetworkError::DuplicateRow { node: spec.name.clone() }));
    }
    spec.rows.push((positive, context, parse_local(n, fields)?));
    Ok(())
}

/// Parses and builds a network. Structural errors are reported at the line
/// of the offending node header; cycles are left to validation.
pub fn parse_network_file<T: Grade>(text: &str, max_vars: usize) -> Result<BipolarNetwork<T>, FormatError> {
    let mut specs: Vec<(usize, NodeSpec<T>)> = Vec::new();
    for (n, line) in content_lines(text) {
        if let Some(rest) = keyword(line, "node") {
            let spec = parse_node_header(n, rest)?;
            if specs.iter().any(|(_, s)| s.name == spec.name) {
                return Err(FormatError::at(n, NetworkError::DuplicateNode(spec.name)));
            }
            specs.push((n, spec));
        } else {
            let (_, spec) = specs.last_mut().ok_or_else(|| FormatError::syntax(n, "row before any `node` header"))?;
            parse_node_row(n, line.trim(), spec)?;
        }
    }
    let headers: Vec<(String, usize)> = specs.iter().map(|(n, s)| (s.name.clone(), *n)).collect();
    BipolarNetwork::with_limit(specs.into_iter().map(|(_, s)| s).collect(), max_vars).map_err(|e| {
        let line = match &e {
            NetworkError::UnknownParent { node, .. } | NetworkError::RepeatedParent { node, .. } => {
                headers.iter().find(|(m, _)| m == node).map_or(0, |(_, n)| *n)
            }
            _ => 0,
        };
        FormatError::at(line, e)
    })
}

fn parse_memberships<T: Grade>(n: usize, domain: &AttributeDomain, text: &str) -> Result<FuzzySet<T>, FormatError> {
    let mut entries: Vec<(&str, Degree<T>)> = Vec::new();
    for field in text.split_whitespace() {
        let (value, degree) = field
            .rsplit_once('=')
            .ok_or_else(|| FormatError::syntax(n, format!("expected `value=degree`, found `{field}`")))?;
        if entries.iter().any(|(v, _)| *v == value) {
            return Err(FormatError::syntax(n, format!("value `{value}` given twice")));
        }
        entries.push((value, parse_degree(n, degree)?));
    }
    domain.fuzzy(&entries).map_err(|e| FormatError::at(n, e))
}

type PendingProfiles<T> = BTreeMap<String, (usize, Option<FuzzySet<T>>, Option<FuzzySet<T>>)>;

/// `attribute <name>: <v1> <v2> …`, `cause <name>`, then indented profile
/// lines `<attribute> lower: <v>=<d> …` and `<attribute> upper: <v>=<d> …`.
/// A missing lower profile defaults to 0 everywhere, a missing upper one to 1.
pub fn parse_model_file<T: Grade>(text: &str) -> Result<DiagnosisModel<T>, FormatError> {
    let mut attributes: Vec<AttributeDomain> = Vec::new();
    let mut causes: Vec<(usize, String, PendingProfiles<T>)> = Vec::new();
    for (n, line) in content_lines(text) {
        if let Some(rest) = keyword(line, "attribute") {
            if !causes.is_empty() {
                return Err(FormatError::syntax(n, "attributes must be declared before causes"));
            }
            let (name, values) = rest
                .split_once(':')
                .ok_or_else(|| FormatError::syntax(n, "expected `attribute <name>: <values>`"))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(FormatError::syntax(n, "attribute name must be a single word"));
            }
            if attributes.iter().any(|a| a.name == name) {
                return Err(FormatError::at(n, DiagnosisError::DuplicateAttribute(name.to_string())));
            }
            let values: Vec<String> = values.split_whitespace().map(String::from).collect();
            if values.is_empty() {
                return Err(FormatError::syntax(n, format!("attribute `{name}` has no values")));
            }
            attributes.push(AttributeDomain::new(name, values).map_err(|e| FormatError::at(n, e))?);
        } else if let Some(rest) = keyword(line, "cause") {
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(FormatError::syntax(n, "expected `cause <name>`"));
            }
            if causes.iter().any(|(_, c, _)| c == rest) {
                return Err(FormatError::at(n, DiagnosisError::DuplicateCause(rest.to_string())));
            }
            causes.push((n, rest.to_string(), BTreeMap::new()));
        } else {
            let (_, cause, profiles) =
                causes.last_mut().ok_or_else(|| FormatError::syntax(n, "profile line before any `cause`"))?;
            let (head, memberships) = line
                .split_once(':')
                .ok_or_else(|| FormatError::syntax(n, "expected `<attribute> lower|upper: <value>=<degree> …`"))?;
            let mut words = head.split_whitespace();
            let (Some(attr), Some(side), None) = (words.next(), words.next(), words.next()) else {
                return Err(FormatError::syntax(n, "expected `<attribute> lower|upper:`"));
            };
            let domain = attributes
                .iter()
                .find(|a| a.name == attr)
                .ok_or_else(|| FormatError::at(n, DiagnosisError::UnknownAttribute(attr.to_string())))?;
            let set = parse_memberships(n, domain, memberships)?;
            let entry = profiles.entry(attr.to_string()).or_insert((n, None, None));
            entry.0 = n;
            let slot = match side {
                "lower" => &mut entry.1,
                "upper" => &mut entry.2,
                _ => return Err(FormatError::syntax(n, format!("expected `lower` or `upper`, found `{side}`"))),
            };
            if slot.replace(set).is_some() {
                return Err(FormatError::syntax(n, format!("{side} profile of `{attr}` given twice for `{cause}`")));
            }
        }
    }
    let mut model = DiagnosisModel::new(attributes).map_err(|e| FormatError::at(0, e))?;
    for (header, name, profiles) in causes {
        let mut cause = CauseModel::new(name);
        for (attr, (n, lower, upper)) in profiles {
            let domain = model.attribute(&attr).map_err(|e| FormatError::at(n, e))?;
            let lower = lower.unwrap_or_else(|| domain.constant(Degree::zero()));
            let upper = upper.unwrap_or_else(|| domain.constant(Degree::one()));
            cause = cause.with_profile(&attr, lower, upper).map_err(|e| FormatError::at(n, e))?;
        }
        model.add_cause(cause).map_err(|e| FormatError::at(header, e))?;
    }
    Ok(model)
}

/// `obs <attribute>: <v>=<d> …`, resolved against the model's domains.
pub fn parse_observation_file<T: Grade>(text: &str, model: &DiagnosisModel<T>) -> Result<Observation<T>, FormatError> {
    let mut observation = Observation::new();
    for (n, line) in content_lines(text) {
        let rest = keyword(line, "obs").ok_or_else(|| FormatError::syntax(n, "expected `obs <attribute>: …`"))?;
        let (attr, memberships) = rest
            .split_once(':')
            .ok_or_else(|| FormatError::syntax(n, "expected `obs <attribute>: <value>=<degree> …`"))?;
        let domain = model.attribute(attr.trim()).map_err(|e| FormatError::at(n, e))?;
        let set = parse_memberships(n, domain, memberships)?;
        observation.observe(attr.trim(), set).map_err(|e| FormatError::at(n, e))?;
    }
    Ok(observation)
}

/// `interpretation\tlower\tupper` table in canonical world order.
pub fn distribution_tsv<T: Grade>(
    vars: &VariableTable,
    lower: &PossibilityDistribution<T>,
    upper: &PossibilityDistribution<T>,
) -> String {
    use crate::measures::Graded;
    let mut out = String::from("interpretation\tlower\tupper\n");
    for u in 0..vars.world_count() {
        out.push_str(&format!("{}\t{}\t{}\n", vars.label(u), lower.degree(u), upper.degree(u)));
    }
    out
}
