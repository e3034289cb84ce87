use std::fmt;

use super::{Event, Interpretation, VariableTable};

/// Propositional formula over the variables of a [`VariableTable`].
/// Leaves hold variable positions, not names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Var(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(v: usize) -> Self {
        Formula::Var(v)
    }

    pub fn literal(v: usize, positive: bool) -> Self {
        if positive {
            Formula::Var(v)
        } else {
            Formula::Var(v).not()
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    /// Disjunction of the minterms of `event`: a formula whose models are
    /// exactly the members of the event.
    pub fn from_event(event: &Event, vars: &VariableTable) -> Self {
        assert_eq!(event.universe_size(), vars.world_count());
        if event.is_full() {
            return Formula::True;
        }
        Formula::disjunction(event.iter().map(|w| {
            let interp = vars.interpretation(w);
            Formula::conjunction((0..vars.len()).map(|v| Formula::literal(v, interp.value(v))))
        }))
    }

    pub fn eval(&self, interp: Interpretation) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Var(v) => interp.value(*v),
            Formula::Not(f) => !f.eval(interp),
            Formula::And(a, b) => a.eval(interp) && b.eval(interp),
            Formula::Or(a, b) => a.eval(interp) || b.eval(interp),
            Formula::Implies(a, b) => !a.eval(interp) || b.eval(interp),
        }
    }

    /// The set of interpretations satisfying the formula, built with set
    /// algebra on the literal model sets.
    pub fn models(&self, vars: &VariableTable) -> Event {
        match self {
            Formula::True => vars.universe(),
            Formula::False => Event::empty(vars.world_count()),
            Formula::Var(v) => vars.literal_event(*v, true),
            Formula::Not(f) => f.models(vars).complement(),
            Formula::And(a, b) => a.models(vars).intersection(&b.models(vars)),
            Formula::Or(a, b) => a.models(vars).union(&b.models(vars)),
            Formula::Implies(a, b) => a.models(vars).complement().union(&b.models(vars)),
        }
    }

    /// Largest variable position used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Var(v) => Some(*v),
            Formula::Not(f) => f.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    pub fn display<'a>(&'a self, vars: &'a VariableTable) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, vars }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(..) => 3,
            _ => 4,
        }
    }
}

/// Prints a formula in the input grammar with the fewest parentheses that
/// reproduce the same tree on re-parsing.
pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    vars: &'a VariableTable,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula, min_prec: u8) -> fmt::Result {
        let parens = node.precedence() < min_prec;
        if parens {
            f.write_str("(")?;
        }
        match node {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Var(v) => f.write_str(self.vars.name(*v))?,
            Formula::Not(inner) => {
                f.write_str("!")?;
                self.write(f, inner, 3)?;
            }
            // and/or associate to the left: a right operand of equal
            // precedence needs parentheses
            Formula::And(a, b) => {
                self.write(f, a, 2)?;
                f.write_str(" & ")?;
                self.write(f, b, 3)?;
            }
            Formula::Or(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(" | ")?;
                self.write(f, b, 2)?;
            }
            Formula::Implies(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(" => ")?;
                self.write(f, b, 0)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 0)
    }
}
