//! Recursive-descent parser for the formula grammar
//!
//! ```text
//! formula := impl
//! impl    := or ("=>" impl)?
//! or      := and ("|" and)*
//! and     := not ("&" not)*
//! not     := "!" not | atom
//! atom    := ident | "true" | "false" | "(" formula ")"
//! ```
//!
//! Positions in errors are 1-based character columns.

use crate::error::LogicError;

use super::{Formula, VariableTable};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Not => "`!`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`=>`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, LogicError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '=' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Implies
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(LogicError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        tokens.push((token, pos));
        i += 1;
    }
    tokens.push((Token::End, chars.len() + 1));
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    vars: &'a VariableTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor].0
    }

    fn position(&self) -> usize {
        self.tokens[self.cursor].1
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.cursor].0.clone();
        if token != Token::End {
            self.cursor += 1;
        }
        token
    }

    fn unexpected(&self, expected: &str) -> LogicError {
        LogicError::Syntax {
            position: self.position(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Token::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Token::Or {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.negation()?;
        while *self.peek() == Token::And {
            self.bump();
            lhs = lhs.and(self.negation()?);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Formula, LogicError> {
        if *self.peek() == Token::Not {
            self.bump();
            return Ok(self.negation()?.not());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        let position = self.position();
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "true" => Ok(Formula::True),
                    "false" => Ok(Formula::False),
                    _ => self
                        .vars
                        .position(&name)
                        .map(Formula::Var)
                        .ok_or(LogicError::UnknownVariable { name, position }),
                }
            }
            Token::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a variable, constant or `(`")),
        }
    }
}

/// Parses `text` against `vars`.
pub fn parse_formula(text: &str, vars: &VariableTable) -> Result<Formula, LogicError> {
    let mut parser = Parser { tokens: tokenize(text)?, cursor: 0, vars };
    let formula = parser.implication()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> VariableTable {
        VariableTable::new(["p", "q", "r"]).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        let v = vars();
        let (p, q, r) = (Formula::Var(0), Formula::Var(1), Formula::Var(2));
        assert_eq!(parse_formula("p & !q", &v).unwrap(), p.clone().and(q.clone().not()));
        assert_eq!(
            parse_formula("p => q => r", &v).unwrap(),
            p.clone().implies(q.clone().implies(r.clone()))
        );
        assert_eq!(
            parse_formula("p | q & r => !p", &v).unwrap(),
            p.clone().or(q.clone().and(r.clone())).implies(p.clone().not())
        );
        assert_eq!(parse_formula("p | q | r", &v).unwrap(), p.clone().or(q.clone()).or(r.clone()));
        assert_eq!(parse_formula("!!(true)", &v).unwrap(), Formula::True.not().not());
    }

    #[test]
    fn syntax_error_positions() {
        let v = vars();
        assert!(matches!(parse_formula("p |", &v), Err(LogicError::Syntax { position: 4, .. })));
        assert!(matches!(parse_formula("(p & q", &v), Err(LogicError::Syntax { position: 7, .. })));
        assert!(matches!(parse_formula("p q", &v), Err(LogicError::Syntax { position: 3, .. })));
        assert!(matches!(parse_formula("p -> q", &v), Err(LogicError::Syntax { position: 3, .. })));
        assert!(matches!(parse_formula("", &v), Err(LogicError::Syntax { position: 1, .. })));
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(
            parse_formula("p & zz", &vars()),
            Err(LogicError::UnknownVariable { name: "zz".into(), position: 5 })
        );
    }

    #[test]
    fn printer_uses_minimal_parentheses() {
        let v = vars();
        for (src, printed) in [
            ("p & !q", "p & !q"),
            ("(p | q) & r", "(p | q) & r"),
            ("p => q => r", "p => q => r"),
            ("(p => q) => r", "(p => q) => r"),
            ("p | (q | r)", "p | (q | r)"),
            ("!(p & q)", "!(p & q)"),
        ] {
            assert_eq!(parse_formula(src, &v).unwrap().display(&v).to_string(), printed);
        }
    }
}
