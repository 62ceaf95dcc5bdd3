use thiserror::Error;

use crate::grammar::MnfReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing `start: <Nonterminal>` header")]
    UndeclaredAxiom,
    #[error("axiom `{0}` has no productions")]
    EmptyAxiom(String),
    #[error("nonterminal {0} has no productions")]
    MissingProductions(String),
    #[error("invalid grammar: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("regex syntax error at {position}: {message}")]
pub struct RegexSyntaxError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("unresolved dependency on nonterminal `{0}`")]
    UnresolvedDependency(String),
    #[error("unknown `{0}` still occurs in a coefficient")]
    SelfReference(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("grammar is not in Marciani normal form")]
    NotMnf(Box<MnfReport>),
    #[error("dependency cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error(transparent)]
    Equation(#[from] EquationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("regex contains nonterminal literal `{0}`")]
    NonterminalLiteral(String),
    #[error("enumeration budget exceeded: more than {cap} candidate strings")]
    BudgetExceeded { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnfoldError {
    #[error("cannot unfold production {production} at position {position}: {reason}")]
    InvalidPosition {
        production: usize,
        position: usize,
        reason: &'static str,
    },
    #[error("grammar generates the empty language")]
    EmptyLanguage(Box<crate::grammar::Grammar>),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
