use std::fmt;

use crate::error::LogicError;

use super::Event;

/// Default bound on the number of declared variables.
pub const DEFAULT_MAX_VARS: usize = 16;

/// Ordered list of binary variables. Position `i` in the table is bit
/// `n - 1 - i` of an interpretation index, so the first variable is the most
/// significant one and interpretations enumerate by binary counting.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, LogicError> {
        Self::with_limit(names, DEFAULT_MAX_VARS)
    }

    pub fn with_limit<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        max: usize,
    ) -> Result<Self, LogicError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > max {
            return Err(LogicError::TooManyVariables { count: names.len(), max });
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) || is_keyword(name) {
                return Err(LogicError::BadIdentifier(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(LogicError::DuplicateVariable(name.clone()));
            }
        }
        Ok(VariableTable { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of interpretations, `2^n`.
    pub fn world_count(&self) -> usize {
        1usize << self.names.len()
    }

    /// All interpretations in canonical order.
    pub fn enumerate(&self) -> impl Iterator<Item = Interpretation> + '_ {
        (0..self.world_count()).map(move |index| Interpretation { index, width: self.len() })
    }

    pub fn interpretation(&self, index: usize) -> Interpretation {
        assert!(index < self.world_count());
        Interpretation { index, width: self.len() }
    }

    /// Interpretation from a full assignment in table order.
    pub fn interpretation_of(&self, assignment: &[bool]) -> Interpretation {
        assert_eq!(assignment.len(), self.len(), "assignment must be total");
        let index = assignment.iter().fold(0, |acc, &b| acc << 1 | b as usize);
        Interpretation { index, width: self.len() }
    }

    /// Models of the literal `var` (or its negation when `value` is false).
    pub fn literal_event(&self, var: usize, value: bool) -> Event {
        Event::from_predicate(self.world_count(), |w| self.interpretation(w).value(var) == value)
    }

    pub fn universe(&self) -> Event {
        Event::full(self.world_count())
    }

    /// Human label such as `!p q r`; `T` for the single world of an empty table.
    pub fn label(&self, world: usize) -> String {
        let interp = self.interpretation(world);
        if self.is_empty() {
            return "T".to_string();
        }
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| if interp.value(i) { n.clone() } else { format!("!{n}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A total truth assignment, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    index: usize,
    width: usize,
}

impl Interpretation {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn value(self, var: usize) -> bool {
        debug_assert!(var < self.width);
        self.index >> (self.width - 1 - var) & 1 == 1
    }

    pub fn assignment(self) -> Vec<bool> {
        (0..self.width).map(|v| self.value(v)).collect()
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.width {
            f.write_str(if self.value(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_keyword(s: &str) -> bool {
    s == "true" || s == "false"
}
