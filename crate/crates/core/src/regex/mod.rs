//! Regular-expression syntax trees.
//!
//! Trees are built through the smart constructors [`Regex::concat`],
//! [`Regex::union`] and [`Regex::star`], which flatten nested
//! concatenations and unions and collapse lists of length zero or one. A
//! tree built that way is *canonical*: every `Concat` and `Union` has at
//! least two children, none of which is itself a `Concat` (resp. `Union`).
//!
//! [`simplify`] adds the unit, annihilator and idempotence laws on top.

mod syntax;

use std::fmt;

pub use syntax::{parse_regex, render_regex};

use crate::grammar::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    /// ∅
    Empty,
    /// ε
    Epsilon,
    Literal(Symbol),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn literal(terminal: impl Into<String>) -> Self {
        Regex::Literal(Symbol::terminal(terminal))
    }

    pub fn symbol(symbol: Symbol) -> Self {
        Regex::Literal(symbol)
    }

    pub fn concat(parts: impl IntoIterator<Item = Regex>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Regex::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Regex::Epsilon,
            1 => flat.pop().unwrap(),
            _ => Regex::Concat(flat),
        }
    }

    pub fn union(parts: impl IntoIterator<Item = Regex>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Regex::Union(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Regex::Empty,
            1 => flat.pop().unwrap(),
            _ => Regex::Union(flat),
        }
    }

    pub fn star(inner: Regex) -> Self {
        Regex::Star(Box::new(inner))
    }

    /// A concatenation of symbol literals; ε for an empty word.
    pub fn word(symbols: &[Symbol]) -> Self {
        Regex::concat(symbols.iter().cloned().map(Regex::Literal))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Literal(_) => 1,
            Regex::Concat(v) | Regex::Union(v) => 1 + v.iter().map(Regex::size).sum::<usize>(),
            Regex::Star(r) => 1 + r.size(),
        }
    }

    /// Calls `f` on every literal in the tree, left to right.
    pub fn for_each_literal<'a>(&'a self, f: &mut impl FnMut(&'a Symbol)) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Literal(s) => f(s),
            Regex::Concat(v) | Regex::Union(v) => v.iter().for_each(|r| r.for_each_literal(f)),
            Regex::Star(r) => r.for_each_literal(f),
        }
    }

    pub fn has_nonterminal(&self) -> bool {
        let mut found = false;
        self.for_each_literal(&mut |s| found |= s.is_nonterminal());
        found
    }

    /// Replaces each literal by the tree `f` returns for it, rebuilding
    /// through the smart constructors.
    pub fn substitute<E>(
        &self,
        f: &mut impl FnMut(&Symbol) -> Result<Regex, E>,
    ) -> Result<Regex, E> {
        Ok(match self {
            Regex::Empty => Regex::Empty,
            Regex::Epsilon => Regex::Epsilon,
            Regex::Literal(s) => f(s)?,
            Regex::Concat(v) => Regex::concat(
                v.iter()
                    .map(|r| r.substitute(f))
                    .collect::<Result<Vec<_>, E>>()?,
            ),
            Regex::Union(v) => Regex::union(
                v.iter()
                    .map(|r| r.substitute(f))
                    .collect::<Result<Vec<_>, E>>()?,
            ),
            Regex::Star(r) => Regex::star(r.substitute(f)?),
        })
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_regex(self))
    }
}

/// Rewrites to a fixed point with
/// `ε·e = e·ε = e`, `∅·e = e·∅ = ∅`, `∅+e = e+∅ = e`, `e+e = e`,
/// `ε* = ∅* = ε` and `(e*)* = e*`. Duplicate detection in unions is
/// syntactic.
pub fn simplify(r: &Regex) -> Regex {
    match r {
        Regex::Empty | Regex::Epsilon | Regex::Literal(_) => r.clone(),
        Regex::Concat(parts) => {
            let parts: Vec<Regex> = parts.iter().map(simplify).collect();
            if parts.contains(&Regex::Empty) {
                return Regex::Empty;
            }
            Regex::concat(parts.into_iter().filter(|p| *p != Regex::Epsilon))
        }
        Regex::Union(parts) => {
            let mut kept: Vec<Regex> = Vec::new();
            for p in parts.iter().map(simplify) {
                let items = match p {
                    Regex::Union(inner) => inner,
                    Regex::Empty => continue,
                    other => vec![other],
                };
                for item in items {
                    if !kept.contains(&item) {
                        kept.push(item);
                    }
                }
            }
            Regex::union(kept)
        }
        Regex::Star(inner) => match simplify(inner) {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            s @ Regex::Star(_) => s,
            other => Regex::star(other),
        },
    }
}
