//! Independent verification machinery.
//!
//! Nothing here depends on the synthesis path: regexes go through Thompson
//! NFAs, subset construction and minimization, or through direct set
//! semantics on the syntax tree; grammars go through derivation closure or
//! an Earley recognizer. Equivalence between a grammar and a regex is
//! always stated together with the length bound it was checked at.

mod automata;
mod earley;
mod enumerate;

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

pub use automata::{minimize_dfa, nfa_to_dfa, regex_to_dfa, regex_to_nfa, Dfa, Nfa};
pub use earley::{cfg_membership, Recognizer};
pub use enumerate::{
    dfa_bounded_language, grammar_bounded_language, grammar_bounded_language_by_membership,
    lfp_bounded, regex_bounded_language,
};

use crate::error::OracleError;
use crate::grammar::Grammar;
use crate::regex::Regex;

/// A word as a sequence of terminal names.
pub type Word = Vec<String>;

/// All words of a language up to some length.
pub type BoundedLanguage = BTreeSet<Word>;

pub const DEFAULT_ENUM_CAP: usize = 2_000_000;
pub const ENUM_CAP_VAR: &str = "MNFLAB_ENUM_CAP";

/// Ceiling on the number of strings a single enumeration may hold or test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub enum_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

impl Budget {
    /// Default budget, overridden by `MNFLAB_ENUM_CAP` when it parses.
    pub fn from_env() -> Self {
        std::env::var(ENUM_CAP_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|enum_cap| Budget { enum_cap })
            .unwrap_or_default()
    }

    pub(crate) fn check(&self, count: usize) -> Result<(), OracleError> {
        if count > self.enum_cap {
            Err(OracleError::BudgetExceeded { cap: self.enum_cap })
        } else {
            Ok(())
        }
    }
}

/// Anything whose bounded language can be enumerated.
#[derive(Debug, Clone, Copy)]
pub enum Language<'a> {
    Grammar(&'a Grammar),
    Regex(&'a Regex),
    Dfa(&'a Dfa),
}

impl<'a> From<&'a Grammar> for Language<'a> {
    fn from(g: &'a Grammar) -> Self {
        Language::Grammar(g)
    }
}

impl<'a> From<&'a Regex> for Language<'a> {
    fn from(r: &'a Regex) -> Self {
        Language::Regex(r)
    }
}

impl<'a> From<&'a Dfa> for Language<'a> {
    fn from(d: &'a Dfa) -> Self {
        Language::Dfa(d)
    }
}

/// `{ w ∈ L(x) : |w| ≤ bound }`. Grammars use derivation closure, regexes
/// their tree semantics, automata a pruned walk.
pub fn bounded_language<'a>(
    x: impl Into<Language<'a>>,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedLanguage, OracleError> {
    match x.into() {
        Language::Grammar(g) => grammar_bounded_language(g, bound, budget),
        Language::Regex(r) => regex_bounded_language(r, bound, budget),
        Language::Dfa(d) => dfa_bounded_language(d, bound, budget),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    InLeftOnly,
    InRightOnly,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::InLeftOnly => "in-left-only",
            Side::InRightOnly => "in-right-only",
        })
    }
}

/// Result of an equivalence check. `bound` is `None` for exact checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivVerdict {
    counterexample: Option<(Word, Side)>,
    bound: Option<usize>,
}

impl EquivVerdict {
    pub fn equivalent(bound: Option<usize>) -> Self {
        EquivVerdict {
            counterexample: None,
            bound,
        }
    }

    /// A distinguishing word, with its side derived from the two
    /// membership facts. Panics unless exactly one side holds the word or
    /// the word exceeds the bound.
    pub fn distinguished(word: Word, in_left: bool, in_right: bool, bound: Option<usize>) -> Self {
        assert!(
            in_left != in_right,
            "counterexample must belong to exactly one side"
        );
        if let Some(n) = bound {
            assert!(word.len() <= n, "counterexample longer than the bound");
        }
        let side = if in_left {
            Side::InLeftOnly
        } else {
            Side::InRightOnly
        };
        EquivVerdict {
            counterexample: Some((word, side)),
            bound,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn counterexample(&self) -> Option<(&[String], Side)> {
        self.counterexample
            .as_ref()
            .map(|(w, s)| (w.as_slice(), *s))
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "equivalent": self.is_equivalent(),
            "counterexample": self.counterexample.as_ref().map(|(w, _)| w),
            "side": self.counterexample.as_ref().map(|(_, s)| s),
            "bound": self.bound,
        })
    }

    pub fn render_text(&self) -> String {
        let scope = match self.bound {
            Some(n) => format!("up to length {n}"),
            None => "exactly".to_string(),
        };
        match &self.counterexample {
            None => format!("equivalent {scope}\n"),
            Some((w, side)) => format!(
                "not equivalent {scope}: counterexample \"{}\" ({side})\n",
                render_word(w)
            ),
        }
    }
}

/// Space-separated tokens; `eps` for the empty word.
pub fn render_word(w: &[String]) -> String {
    if w.is_empty() {
        crate::grammar::EPSILON_TOKEN.to_string()
    } else {
        w.join(" ")
    }
}

/// Exact equivalence by breadth-first search of the product automaton over
/// the union alphabet. The counterexample is a shortest distinguishing
/// word, lexicographically least among those.
pub fn dfa_equiv(d1: &Dfa, d2: &Dfa) -> EquivVerdict {
    let left = d1.with_alphabet(d2.alphabet());
    let right = d2.with_alphabet(d1.alphabet());
    debug_assert_eq!(left.alphabet(), right.alphabet());
    let k = left.alphabet().len();
    let n2 = right.state_count();
    let id = |p: usize, q: usize| p * n2 + q;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; left.state_count() * n2];
    let mut visited = vec![false; left.state_count() * n2];
    let start = (left.start(), right.start());
    visited[id(start.0, start.1)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if left.is_accepting(p) != right.is_accepting(q) {
            let mut word = Vec::new();
            let mut at = id(p, q);
            while let Some((prev, a)) = parent[at] {
                word.push(left.alphabet()[a].clone());
                at = prev;
            }
            word.reverse();
            let (l, r) = (d1.accepts(&word), d2.accepts(&word));
            return EquivVerdict::distinguished(word, l, r, None);
        }
        for a in 0..k {
            let (p2, q2) = (left.step(p, a), right.step(q, a));
            let j = id(p2, q2);
            if !visited[j] {
                visited[j] = true;
                parent[j] = Some((id(p, q), a));
                queue.push_back((p2, q2));
            }
        }
    }
    EquivVerdict::equivalent(None)
}

/// Shortest-then-lexicographic word in exactly one of the two sets.
pub(crate) fn first_difference(left: &BoundedLanguage, right: &BoundedLanguage) -> Option<Word> {
    left.symmetric_difference(right)
        .min_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)))
        .cloned()
}

/// Compares `L(g)` and `L(r)` on all words of length ≤ `bound`. A grammar
/// side counterexample is rechecked with the Earley recognizer.
pub fn bounded_equiv(
    g: &Grammar,
    r: &Regex,
    bound: usize,
    budget: &Budget,
) -> Result<EquivVerdict, OracleError> {
    let lg = grammar_bounded_language(g, bound, budget)?;
    let lr = regex_bounded_language(r, bound, budget)?;
    Ok(match first_difference(&lg, &lr) {
        None => EquivVerdict::equivalent(Some(bound)),
        Some(w) => {
            let in_left = cfg_membership(g, &w);
            assert_eq!(
                in_left,
                lg.contains(&w),
                "closure and recognizer disagree on {w:?}"
            );
            let in_right = lr.contains(&w);
            EquivVerdict::distinguished(w, in_left, in_right, Some(bound))
        }
    })
}

/// Bounded comparison of two regexes through their minimal automata.
pub fn bounded_equiv_regex(
    r1: &Regex,
    r2: &Regex,
    bound: usize,
    budget: &Budget,
) -> Result<EquivVerdict, OracleError> {
    let l1 = dfa_bounded_language(&regex_to_dfa(r1)?, bound, budget)?;
    let l2 = dfa_bounded_language(&regex_to_dfa(r2)?, bound, budget)?;
    Ok(match first_difference(&l1, &l2) {
        None => EquivVerdict::equivalent(Some(bound)),
        Some(w) => {
            let (a, b) = (l1.contains(&w), l2.contains(&w));
            EquivVerdict::distinguished(w, a, b, Some(bound))
        }
    })
}

/// Exact regex equivalence through minimal automata.
pub fn regex_equiv(r1: &Regex, r2: &Regex) -> Result<EquivVerdict, OracleError> {
    Ok(dfa_equiv(&regex_to_dfa(r1)?, &regex_to_dfa(r2)?))
}
