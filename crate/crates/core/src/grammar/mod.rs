//! Context-free grammar data model.
//!
//! A [`Grammar`] is the usual quadruple of terminals, nonterminals, an axiom
//! and an ordered list of productions. Symbol kinds are fixed when a symbol
//! is created; the text format decides them lexically (see [`parse`]).

mod mnf;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use mnf::{
    check_looking_forward, check_mnf, dependency_digraph, partition_productions, DependencyDigraph,
    MnfReport, PartitionFailure, PseudoRegularPartition,
};
pub use parse::{parse_grammar, parse_grammar_with, ParseOptions, Parsed, Warning};

use crate::error::GrammarError;

/// Keyword for the empty body in grammar files and for ε in regexes.
pub const EPSILON_TOKEN: &str = "eps";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Terminal,
    Nonterminal,
}

/// A terminal or nonterminal symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    kind: SymbolKind,
    name: String,
}

impl Symbol {
    pub fn terminal(name: impl Into<String>) -> Self {
        Self::with_kind(SymbolKind::Terminal, name)
    }

    pub fn nonterminal(name: impl Into<String>) -> Self {
        Self::with_kind(SymbolKind::Nonterminal, name)
    }

    /// Classifies `name` by the lexical rule of the file format: an ASCII
    /// uppercase first character makes a nonterminal.
    pub fn lexical(name: impl Into<String>) -> Self {
        let name = name.into();
        let kind = if is_nonterminal_name(&name) {
            SymbolKind::Nonterminal
        } else {
            SymbolKind::Terminal
        };
        Self::with_kind(kind, name)
    }

    fn with_kind(kind: SymbolKind, name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(
            !name.is_empty() && !name.chars().any(char::is_whitespace),
            "symbol name must be non-empty and free of whitespace: {name:?}"
        );
        Self { kind, name }
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_terminal(&self) -> bool {
        self.kind == SymbolKind::Terminal
    }

    pub fn is_nonterminal(&self) -> bool {
        self.kind == SymbolKind::Nonterminal
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub(crate) fn is_nonterminal_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// `head -> body`; an empty body is an ε-production.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub head: Symbol,
    pub body: Vec<Symbol>,
}

impl Production {
    pub fn new(head: Symbol, body: Vec<Symbol>) -> Self {
        assert!(
            head.is_nonterminal(),
            "production head must be a nonterminal"
        );
        Self { head, body }
    }

    pub fn is_epsilon(&self) -> bool {
        self.body.is_empty()
    }
}

/// Renders a body as whitespace-separated tokens, `eps` when empty.
pub fn render_body(body: &[Symbol]) -> String {
    if body.is_empty() {
        EPSILON_TOKEN.to_string()
    } else {
        body.iter().map(Symbol::name).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.head, render_body(&self.body))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    terminals: BTreeSet<Symbol>,
    nonterminals: BTreeSet<Symbol>,
    axiom: Symbol,
    productions: Vec<Production>,
}

impl Grammar {
    /// Builds a grammar whose alphabet is exactly the symbols mentioned by
    /// the axiom and the productions.
    pub fn new(axiom: Symbol, productions: Vec<Production>) -> Result<Self, GrammarError> {
        let mut terminals = BTreeSet::new();
        let mut nonterminals = BTreeSet::new();
        nonterminals.insert(axiom.clone());
        for p in &productions {
            nonterminals.insert(p.head.clone());
            for s in &p.body {
                match s.kind() {
                    SymbolKind::Terminal => terminals.insert(s.clone()),
                    SymbolKind::Nonterminal => nonterminals.insert(s.clone()),
                };
            }
        }
        Self::with_alphabet(terminals, nonterminals, axiom, productions)
    }

    /// Builds a grammar over an explicit alphabet, checking every structural
    /// invariant.
    pub fn with_alphabet(
        terminals: BTreeSet<Symbol>,
        nonterminals: BTreeSet<Symbol>,
        axiom: Symbol,
        productions: Vec<Production>,
    ) -> Result<Self, GrammarError> {
        if let Some(s) = terminals.iter().find(|s| !s.is_terminal()) {
            return Err(GrammarError::Invalid(format!("`{s}` listed as terminal")));
        }
        if let Some(s) = nonterminals.iter().find(|s| !s.is_nonterminal()) {
            return Err(GrammarError::Invalid(format!(
                "`{s}` listed as nonterminal"
            )));
        }
        let term_names: BTreeSet<&str> = terminals.iter().map(Symbol::name).collect();
        if let Some(s) = nonterminals.iter().find(|s| term_names.contains(s.name())) {
            return Err(GrammarError::Invalid(format!(
                "`{s}` is both a terminal and a nonterminal"
            )));
        }
        if !nonterminals.contains(&axiom) {
            return Err(GrammarError::Invalid(format!(
                "axiom `{axiom}` is not a nonterminal of the grammar"
            )));
        }
        for p in &productions {
            if !nonterminals.contains(&p.head) {
                return Err(GrammarError::Invalid(format!("unknown head in `{p}`")));
            }
            for s in &p.body {
                let known = match s.kind() {
                    SymbolKind::Terminal => terminals.contains(s),
                    SymbolKind::Nonterminal => nonterminals.contains(s),
                };
                if !known {
                    return Err(GrammarError::Invalid(format!(
                        "unknown symbol `{s}` in `{p}`"
                    )));
                }
            }
        }
        Ok(Self {
            terminals,
            nonterminals,
            axiom,
            productions,
        })
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &BTreeSet<Symbol> {
        &self.nonterminals
    }

    pub fn axiom(&self) -> &Symbol {
        &self.axiom
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// Productions with the given head, in grammar order.
    pub fn productions_of<'a>(&'a self, head: &'a Symbol) -> impl Iterator<Item = &'a Production> {
        self.productions.iter().filter(move |p| &p.head == head)
    }

    /// Nonterminals that derive at least one terminal string.
    pub fn productive(&self) -> BTreeSet<Symbol> {
        let mut productive = BTreeSet::new();
        loop {
            let before = productive.len();
            for p in &self.productions {
                if !productive.contains(&p.head)
                    && p.body
                        .iter()
                        .all(|s| s.is_terminal() || productive.contains(s))
                {
                    productive.insert(p.head.clone());
                }
            }
            if productive.len() == before {
                return productive;
            }
        }
    }

    /// Nonterminals reachable from the axiom.
    pub fn reachable(&self) -> BTreeSet<Symbol> {
        let mut seen = BTreeSet::from([self.axiom.clone()]);
        let mut stack = vec![self.axiom.clone()];
        while let Some(a) = stack.pop() {
            for p in self.productions_of(&a) {
                for s in p.body.iter().filter(|s| s.is_nonterminal()) {
                    if seen.insert(s.clone()) {
                        stack.push(s.clone());
                    }
                }
            }
        }
        seen
    }

    /// Removes unproductive symbols, then symbols unreachable from the axiom.
    /// The axiom always survives, possibly without productions.
    pub fn pruned(&self) -> Grammar {
        let productive = self.productive();
        let kept: Vec<Production> = self
            .productions
            .iter()
            .filter(|p| {
                productive.contains(&p.head)
                    && p.body
                        .iter()
                        .all(|s| s.is_terminal() || productive.contains(s))
            })
            .cloned()
            .collect();
        let step = Grammar::new(self.axiom.clone(), kept).expect("subset of a valid grammar");
        let reachable = step.reachable();
        let kept = step
            .productions
            .into_iter()
            .filter(|p| reachable.contains(&p.head))
            .collect();
        Grammar::new(self.axiom.clone(), kept).expect("subset of a valid grammar")
    }

    /// Structural identity used to deduplicate grammars: the axiom and the
    /// sorted, deduplicated production set.
    pub fn canonical_key(&self) -> (Symbol, Vec<Production>) {
        let mut ps = self.productions.clone();
        ps.sort();
        ps.dedup();
        (self.axiom.clone(), ps)
    }
}

/// Renders the grammar in the text file format, one rule line per head in
/// order of first appearance.
impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.axiom)?;
        let mut order: Vec<&Symbol> = Vec::new();
        let mut alts: BTreeMap<&Symbol, Vec<String>> = BTreeMap::new();
        for p in &self.productions {
            if !alts.contains_key(&p.head) {
                order.push(&p.head);
            }
            alts.entry(&p.head).or_default().push(render_body(&p.body));
        }
        for head in order {
            writeln!(f, "{} -> {}", head, alts[head].join(" | "))?;
        }
        Ok(())
    }
}
