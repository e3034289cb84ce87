use std::fmt;
use std::path::Path;

use bipolar_core::bases::make_pair;
use bipolar_core::comparative::{
    wop_lower, wop_upper, CompileError, InconsistentRules, PairError, RuleKind, WellOrderedPartition,
};
use bipolar_core::conditioning::{cond_bipolar, cond_n};
use bipolar_core::format::{
    merge_base_files, parse_base_file, parse_model_file, parse_network_file, parse_observation_file,
    parse_rules_file, sniff, FormatError, FormatErrorKind, InputKind, RulesFile,
};
use bipolar_core::{
    parse_formula, BaseError, BipolarNetwork, BipolarPair, DiagnosisError, DiagnosisModel, Event, Graded,
    Rational, VariableTable,
};

use crate::output::{
    CheckReport, ConditionReport, DiagnosisReport, DistributionReport, Eq6Json, FileStatus, Finding, Format,
    NetCheckReport, QueryReport, RankedCause, Report, Stratum, WopReport,
};

/// Why a command failed. Each variant has its own exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Parse(String),
    Invalid(String),
    Inconsistent(String),
    Limit(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 3,
            Failure::Invalid(_) => 4,
            Failure::Inconsistent(_) => 5,
            Failure::Limit(_) => 6,
            Failure::Io(_) => 7,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse-error",
            Failure::Invalid(_) => "invalid",
            Failure::Inconsistent(_) => "inconsistent",
            Failure::Limit(_) => "limit",
            Failure::Io(_) => "io-error",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Inconsistent(m) | Failure::Limit(m) | Failure::Io(m) => m,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

/// Everything a command produced. A command may print a result and still
/// fail, e.g. a compiled table whose lower side exceeds its upper side.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub failure: Option<Failure>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ..Outcome::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub format: Format,
    pub max_vars: usize,
    pub check_eq6: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn format_failure(path: &Path, err: FormatError) -> Failure {
    let message = format!("{}: {err}", path.display());
    if err.is_limit() {
        return Failure::Limit(message);
    }
    match err.kind {
        FormatErrorKind::Base(BaseError::VariableMismatch)
        | FormatErrorKind::Diagnosis(DiagnosisError::IncoherentProfile { .. }) => Failure::Invalid(message),
        _ => Failure::Parse(message),
    }
}

fn labels(vars: &VariableTable, worlds: impl IntoIterator<Item = usize>) -> String {
    worlds.into_iter().map(|u| vars.label(u)).collect::<Vec<_>>().join(", ")
}

fn lower_exceeds_upper(vars: &VariableTable, witnesses: &[usize]) -> Failure {
    Failure::Inconsistent(format!("lower exceeds upper at: {}", labels(vars, witnesses.iter().copied())))
}

fn kind_lines(rules: &RulesFile, kind: RuleKind) -> Vec<usize> {
    rules.base.rules.iter().zip(&rules.lines).filter(|(r, _)| r.kind == kind).map(|(_, &n)| n).collect()
}

fn blocked(path: &Path, rules: &RulesFile, kind: RuleKind, err: &InconsistentRules) -> Failure {
    let lines = kind_lines(rules, kind);
    let order = if kind == RuleKind::Pi { "PI" } else { "GD" };
    let blocking: Vec<String> = err.rules.iter().map(|&i| lines[i].to_string()).collect();
    let mut message = format!("{}: {order} rules are inconsistent; blocking rules at lines {}", path.display(), blocking.join(", "));
    if !err.unplaced.is_empty() {
        message.push_str(&format!("; unplaced: {}", labels(&rules.base.vars, err.unplaced.iter())));
    }
    Failure::Inconsistent(message)
}

fn compile_rules(path: &Path, rules: &RulesFile) -> Result<(WellOrderedPartition, WellOrderedPartition), Failure> {
    let vars = &rules.base.vars;
    let upper = wop_upper(&rules.base.rules_of(RuleKind::Pi), vars).map_err(|e| blocked(path, rules, RuleKind::Pi, &e))?;
    let lower =
        wop_lower(&rules.base.rules_of(RuleKind::Delta), vars).map_err(|e| blocked(path, rules, RuleKind::Delta, &e))?;
    Ok((upper, lower))
}

fn rules_pair(path: &Path, rules: &RulesFile) -> Result<BipolarPair, Failure> {
    rules.base.to_pair().map_err(|e| match e {
        PairError::Compile(CompileError::Upper(e)) => blocked(path, rules, RuleKind::Pi, &e),
        PairError::Compile(CompileError::Lower(e)) => blocked(path, rules, RuleKind::Delta, &e),
        PairError::Inconsistent(v) => lower_exceeds_upper(&rules.base.vars, &v.witnesses),
    })
}

fn net_problems(path: &Path, net: &BipolarNetwork) -> Result<Vec<String>, Failure> {
    let report = net.validate().map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(report.iter().map(ToString::to_string).collect())
}

fn load_network(path: &Path, settings: Settings) -> Result<BipolarNetwork, Failure> {
    parse_network_file(&read(path)?, settings.max_vars).map_err(|e| format_failure(path, e))
}

fn valid_network(path: &Path, settings: Settings) -> Result<BipolarNetwork, Failure> {
    let net = load_network(path, settings)?;
    let problems = net_problems(path, &net)?;
    if !problems.is_empty() {
        return Err(Failure::Invalid(format!("{}: network fails validation: {}", path.display(), problems.join("; "))));
    }
    Ok(net)
}

/// A consistent pair from a base file, a rule file or a network (using the
/// revised lower joint).
fn load_pair(path: &Path, settings: Settings) -> Result<(VariableTable, BipolarPair), Failure> {
    let text = read(path)?;
    let kind = sniff(&text).or_else(|| is_blank(&text).then_some(InputKind::Base));
    match kind {
        Some(InputKind::Base) => {
            let file = parse_base_file::<Rational>(&text, settings.max_vars).map_err(|e| format_failure(path, e))?;
            let vars = file.vars().clone();
            match make_pair(&file.necessity, &file.guaranteed) {
                Ok(pair) => Ok((vars, pair)),
                Err(BaseError::Inconsistent(v)) => Err(lower_exceeds_upper(&vars, &v.witnesses)),
                Err(e) => Err(Failure::Invalid(format!("{}: {e}", path.display()))),
            }
        }
        Some(InputKind::Rules) => {
            let rules = parse_rules_file(&text, settings.max_vars).map_err(|e| format_failure(path, e))?;
            let pair = rules_pair(path, &rules)?;
            Ok((rules.base.vars, pair))
        }
        Some(InputKind::Network) => {
            let net = valid_network(path, settings)?;
            let joint = net.joint().map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            let pair = BipolarPair::new(joint.lower_revised, joint.upper).expect("revised lower is below upper");
            Ok((net.vars().clone(), pair))
        }
        _ => Err(Failure::Parse(format!("{}: not a base, rule or network file", path.display()))),
    }
}

/// Only comments and whitespace; read as an empty base.
fn is_blank(text: &str) -> bool {
    text.lines().all(|l| l.split('#').next().unwrap_or("").trim().is_empty())
}

fn parse_event(vars: &VariableTable, text: &str, what: &str) -> Result<(String, Event), Failure> {
    let formula = parse_formula(text, vars).map_err(|e| Failure::Parse(format!("{what}: {e}")))?;
    let event = formula.models(vars);
    Ok((formula.display(vars).to_string(), event))
}

pub fn compile(files: &[&Path], settings: Settings) -> Result<Outcome, Failure> {
    let mut parsed = Vec::with_capacity(files.len());
    for &path in files {
        let text = read(path)?;
        if sniff(&text) != Some(InputKind::Base) && !is_blank(&text) {
            return Err(Failure::Parse(format!("{}: not a base file", path.display())));
        }
        parsed.push(parse_base_file::<Rational>(&text, settings.max_vars).map_err(|e| format_failure(path, e))?);
    }
    let base = merge_base_files(parsed).map_err(|e| Failure::Invalid(e.to_string()))?;
    let vars = base.vars();
    let lower = base.guaranteed.compile_lower();
    let upper = base.necessity.compile_upper();
    let mut outcome = Outcome::default();
    if !upper.is_normalized() {
        outcome.warnings.push(format!("upper distribution is subnormalized (height {})", upper.height()));
    }
    let mut report = DistributionReport::new(vars, &lower, &upper);
    match BipolarPair::new(lower, upper) {
        Ok(pair) => {
            report.consistent = Some(true);
            if settings.check_eq6 {
                report.eq6 = Some(Eq6Json::new(&pair.check_eq6(), vars));
            }
        }
        Err(v) => {
            report.consistent = Some(false);
            outcome.failure = Some(lower_exceeds_upper(vars, &v.witnesses));
        }
    }
    outcome.stdout = report.render(settings.format);
    Ok(outcome)
}

pub fn query(source: &Path, formula: &str, settings: Settings) -> Result<Outcome, Failure> {
    let (vars, pair) = load_pair(source, settings)?;
    let (formula, event) = parse_event(&vars, formula, "formula")?;
    let value = pair.eval(&event);
    let dual = pair.eval_dual(&event);
    let report = QueryReport {
        formula,
        delta: value.delta.render(),
        pi: value.pi.render(),
        necessity: dual.necessity.render(),
        potential_necessity: dual.potential_necessity.render(),
        eq6: settings.check_eq6.then(|| Eq6Json::new(&pair.check_eq6(), &vars)),
    };
    Ok(Outcome::ok(report.render(settings.format)))
}

pub fn condition(source: &Path, evidence: &str, hypothesis: &str, settings: Settings) -> Result<Outcome, Failure> {
    let (vars, pair) = load_pair(source, settings)?;
    let (evidence, a) = parse_event(&vars, evidence, "evidence")?;
    let (hypothesis, b) = parse_event(&vars, hypothesis, "hypothesis")?;
    let empty = |_| Failure::Invalid(format!("evidence `{evidence}` has no models"));
    let value = cond_bipolar(&pair, &a, &b).map_err(empty)?;
    let necessity = cond_n(pair.upper(), &a, &b).map_err(empty)?;
    let report = ConditionReport {
        evidence: evidence.clone(),
        hypothesis,
        delta: value.delta.render(),
        pi: value.pi.render(),
        necessity: necessity.render(),
    };
    Ok(Outcome::ok(report.render(settings.format)))
}

fn strata(order: &'static str, wop: &WellOrderedPartition, vars: &VariableTable) -> Vec<Stratum> {
    let dist = wop.to_distribution::<Rational>();
    wop.strata()
        .iter()
        .enumerate()
        .map(|(i, s)| Stratum {
            order,
            stratum: i + 1,
            degree: dist.degree(s.iter().next().expect("strata are nonempty")).render(),
            interpretations: s.iter().map(|u| vars.label(u)).collect(),
        })
        .collect()
}

/// Strata of the Π-rules (`upper`) and the Δ-rules (`lower`). Orders without
/// rules are omitted unless the file has no rules at all.
pub fn wop(path: &Path, settings: Settings) -> Result<Outcome, Failure> {
    let rules = parse_rules_file(&read(path)?, settings.max_vars).map_err(|e| format_failure(path, e))?;
    let (upper, lower) = compile_rules(path, &rules)?;
    let has = |kind| rules.base.rules.iter().any(|r| r.kind == kind);
    let none = rules.base.rules.is_empty();
    let vars = &rules.base.vars;
    let mut rows = Vec::new();
    if none || has(RuleKind::Pi) {
        rows.extend(strata("upper", &upper, vars));
    }
    if none || has(RuleKind::Delta) {
        rows.extend(strata("lower", &lower, vars));
    }
    let report = WopReport { vars: vars.names().to_vec(), rows };
    Ok(Outcome::ok(report.render(settings.format)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum NetMode {
    Raw,
    Revised,
    Check,
}

fn context_label(net: &BipolarNetwork, node: &str, value: bool, context: &[bool]) -> String {
    let vars = net.vars();
    let index = vars.position(node).expect("node names are variables");
    let lit = |name: &str, v: bool| if v { name.to_string() } else { format!("!{name}") };
    let ctx: Vec<String> = net.parents(index).iter().zip(context).map(|(&p, &v)| lit(vars.name(p), v)).collect();
    let ctx = if ctx.is_empty() { "-".to_string() } else { ctx.join(" ") };
    format!("{} | {ctx}", lit(node, value))
}

pub fn net(path: &Path, mode: NetMode, settings: Settings) -> Result<Outcome, Failure> {
    if mode != NetMode::Check {
        let net = valid_network(path, settings)?;
        let joint = net.joint().map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        let lower = if mode == NetMode::Raw { &joint.lower_raw } else { &joint.lower_revised };
        let report = DistributionReport::new(net.vars(), lower, &joint.upper);
        return Ok(Outcome::ok(report.render(settings.format)));
    }
    let net = load_network(path, settings)?;
    let vars = net.vars().names().to_vec();
    let problems = net_problems(path, &net)?;
    if !problems.is_empty() {
        let rows = problems.iter().map(|p| Finding { kind: "invalid", subject: "-".into(), detail: p.clone() }).collect();
        let report = NetCheckReport { vars, valid: false, consistent: false, rows };
        return Ok(Outcome {
            stdout: report.render(settings.format),
            warnings: Vec::new(),
            failure: Some(Failure::Invalid(format!("{}: network fails validation", path.display()))),
        });
    }
    let joint = net.joint().map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Finding> = joint
        .violations
        .iter()
        .map(|&u| Finding {
            kind: "violation",
            subject: net.vars().label(u),
            detail: format!("lower={} upper={}", joint.lower_raw.degree(u), joint.upper.degree(u)),
        })
        .collect();
    let weakened = net.weakened_bounds(&joint);
    rows.extend(weakened.iter().map(|w| Finding {
        kind: "weakened",
        subject: context_label(&net, &w.node, w.value, &w.context),
        detail: format!("local={} revised={}", w.local, w.revised),
    }));
    let consistent = joint.violations.is_empty();
    let failure = (!consistent).then(|| {
        Failure::Inconsistent(format!(
            "{}: raw lower joint exceeds upper joint at {} interpretation(s)",
            path.display(),
            joint.violations.len()
        ))
    });
    let report = NetCheckReport { vars, valid: true, consistent, rows };
    Ok(Outcome { stdout: report.render(settings.format), warnings: Vec::new(), failure })
}

fn load_model(path: &Path) -> Result<DiagnosisModel, Failure> {
    parse_model_file(&read(path)?).map_err(|e| format_failure(path, e))
}

pub fn diagnose(model_path: &Path, obs_path: &Path, settings: Settings) -> Result<Outcome, Failure> {
    let model = load_model(model_path)?;
    let obs = parse_observation_file(&read(obs_path)?, &model).map_err(|e| format_failure(obs_path, e))?;
    let ranked = model.rank_causes(&obs).map_err(|e| Failure::Invalid(e.to_string()))?;
    let rows = ranked
        .into_iter()
        .enumerate()
        .map(|(i, s)| RankedCause { rank: i + 1, cause: s.cause, cons: s.cons.render(), rel: s.rel.render() })
        .collect();
    let mut outcome = Outcome::ok(DiagnosisReport { rows }.render(settings.format));
    if !obs.is_normalized() {
        outcome.warnings.push("observation is not normalized; rel may exceed cons".into());
    }
    Ok(outcome)
}

fn check_base(path: &Path, text: &str, settings: Settings) -> Result<String, Failure> {
    let file = parse_base_file::<Rational>(text, settings.max_vars).map_err(|e| format_failure(path, e))?;
    let vars = file.vars();
    let mut notes = vec![format!(
        "{} necessity and {} guaranteed entries",
        file.necessity.entries().len(),
        file.guaranteed.entries().len()
    )];
    let upper = file.necessity.compile_upper();
    if !upper.is_normalized() {
        notes.push(format!("upper subnormalized (height {})", upper.height()));
    }
    let pair = match make_pair(&file.necessity, &file.guaranteed) {
        Ok(pair) => pair,
        Err(BaseError::Inconsistent(v)) => return Err(lower_exceeds_upper(vars, &v.witnesses)),
        Err(e) => return Err(Failure::Invalid(e.to_string())),
    };
    if settings.check_eq6 {
        eq6_note(&pair, vars, &mut notes)?;
    }
    Ok(notes.join("; "))
}

fn eq6_note(pair: &BipolarPair, vars: &VariableTable, notes: &mut Vec<String>) -> Result<(), Failure> {
    let report = pair.check_eq6();
    if let Some(event) = &report.violation {
        return Err(Failure::Invalid(format!("eq6 fails on {{{}}}", labels(vars, event.iter()))));
    }
    notes.push(
        if report.holds() {
            "eq6 holds"
        } else {
            "eq6 not checked: preconditions fail and the universe is too large to search"
        }
        .into(),
    );
    Ok(())
}

fn check_rules(path: &Path, text: &str, settings: Settings) -> Result<String, Failure> {
    let rules = parse_rules_file(text, settings.max_vars).map_err(|e| format_failure(path, e))?;
    let (upper, lower) = compile_rules(path, &rules)?;
    let pair = rules_pair(path, &rules)?;
    let mut notes = vec![format!("{} rules; {} upper and {} lower strata", rules.base.rules.len(), upper.len(), lower.len())];
    if settings.check_eq6 {
        eq6_note(&pair, &rules.base.vars, &mut notes)?;
    }
    Ok(notes.join("; "))
}

fn check_network(path: &Path, settings: Settings) -> Result<String, Failure> {
    let net = load_network(path, settings)?;
    let problems = net_problems(path, &net)?;
    if !problems.is_empty() {
        return Err(Failure::Invalid(problems.join("; ")));
    }
    let joint = net.joint().map_err(|e| Failure::Invalid(e.to_string()))?;
    if !joint.violations.is_empty() {
        return Err(lower_exceeds_upper(net.vars(), &joint.violations));
    }
    Ok(format!("{} nodes", net.vars().len()))
}

/// Validates every file and reports one line each. The exit status is the
/// highest failure code met.
pub fn check(files: &[&Path], settings: Settings) -> Result<Outcome, Failure> {
    let texts: Vec<Result<String, Failure>> = files.iter().map(|p| read(p)).collect();
    let model = files.iter().zip(&texts).find_map(|(p, t)| {
        let t = t.as_ref().ok()?;
        (sniff(t) == Some(InputKind::Model)).then(|| load_model(p).ok()).flatten()
    });
    let mut rows = Vec::with_capacity(files.len());
    let mut worst: Option<Failure> = None;
    for (&path, text) in files.iter().zip(texts) {
        let kind = text.as_ref().ok().and_then(|t| sniff(t).or_else(|| is_blank(t).then_some(InputKind::Base)));
        let result = text.and_then(|text| match kind {
            Some(InputKind::Base) => check_base(path, &text, settings),
            Some(InputKind::Rules) => check_rules(path, &text, settings),
            Some(InputKind::Network) => check_network(path, settings),
            Some(InputKind::Model) => {
                let model = load_model(path)?;
                Ok(format!("{} attributes, {} causes", model.attributes().len(), model.causes().len()))
            }
            Some(InputKind::Observation) => match &model {
                Some(model) => {
                    let obs = parse_observation_file(&text, model).map_err(|e| format_failure(path, e))?;
                    Ok(format!("{} attributes observed", obs.iter().count()))
                }
                None => Err(Failure::Invalid("observation files need a valid model file in the same check".into())),
            },
            None => Err(Failure::Parse("unrecognised input".into())),
        });
        let kind = match kind {
            Some(InputKind::Base) => "base",
            Some(InputKind::Rules) => "rules",
            Some(InputKind::Network) => "network",
            Some(InputKind::Model) => "model",
            Some(InputKind::Observation) => "observation",
            None => "-",
        };
        let (status, detail) = match result {
            Ok(detail) => ("ok", detail),
            Err(f) => {
                let prefix = format!("{}: ", path.display());
                let row = (f.status(), f.message().strip_prefix(&prefix).unwrap_or(f.message()).to_string());
                if worst.as_ref().map_or(true, |w| f.code() > w.code()) {
                    worst = Some(f);
                }
                row
            }
        };
        rows.push(FileStatus { file: path.display().to_string(), kind: kind.into(), status, detail });
    }
    let stdout = CheckReport { rows }.render(settings.format);
    Ok(Outcome { stdout, warnings: Vec::new(), failure: worst.map(|w| relabel(w, "check failed")) })
}

fn relabel(f: Failure, message: &str) -> Failure {
    let message = message.to_string();
    match f {
        Failure::Parse(_) => Failure::Parse(message),
        Failure::Invalid(_) => Failure::Invalid(message),
        Failure::Inconsistent(_) => Failure::Inconsistent(message),
        Failure::Limit(_) => Failure::Limit(message),
        Failure::Io(_) => Failure::Io(message),
    }
}
