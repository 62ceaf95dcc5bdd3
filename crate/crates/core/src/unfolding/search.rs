use std::collections::HashSet;

use serde::Serialize;

use super::cnf::to_cnf;
use crate::error::{OracleError, UnfoldError};
use crate::grammar::{check_mnf, Grammar, Production, Symbol};
use crate::oracle::{bounded_equiv, Budget};
use crate::regex::{render_regex, Regex};
use crate::synthesis::synthesize_regex;

/// Length bound at which a found grammar's regex is checked against the
/// input grammar.
pub const VERIFY_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Unfolding rounds; 0 only checks the start grammar.
    pub max_depth: usize,
    /// Grammars to check before giving up; at least 1.
    pub max_candidates: usize,
    pub start_from_cnf: bool,
    pub budget: Budget,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: 3,
            max_candidates: 10_000,
            start_from_cnf: false,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Grammars checked for normal form.
    pub explored: usize,
    /// Deepest unfolding round reached.
    pub depth: usize,
    /// Generated grammars skipped as structural duplicates.
    pub deduped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub found: Option<(Grammar, Regex)>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        self.found.is_some()
    }

    pub fn grammar(&self) -> Option<&Grammar> {
        self.found.as_ref().map(|(g, _)| g)
    }

    pub fn regex(&self) -> Option<&Regex> {
        self.found.as_ref().map(|(_, r)| r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "found": self.is_found(),
            "grammar": self.grammar().map(ToString::to_string),
            "regex": self.regex().map(render_regex),
            "stats": self.stats,
        })
    }

    pub fn render_text(&self) -> String {
        let SearchStats {
            explored,
            depth,
            deduped,
        } = self.stats;
        let stats =
            format!("explored {explored} grammars, depth {depth}, {deduped} duplicates skipped\n");
        match &self.found {
            Some((g, r)) => format!("found: yes\nregex: {}\n{g}{stats}", render_regex(r)),
            None => format!("found: no\n{stats}"),
        }
    }
}

/// Replaces the nonterminal at `position` of production `production` by
/// each of its bodies, in place. If that nonterminal is then unreferenced
/// and not the axiom, its rules are dropped.
pub fn unfold_once(
    g: &Grammar,
    production: usize,
    position: usize,
) -> Result<Grammar, UnfoldError> {
    let invalid = |reason| UnfoldError::InvalidPosition {
        production,
        position,
        reason,
    };
    let target = g
        .productions()
        .get(production)
        .ok_or(invalid("no such production"))?;
    let b = target
        .body
        .get(position)
        .ok_or(invalid("no such body position"))?;
    if b.is_terminal() {
        return Err(invalid("position holds a terminal"));
    }
    if *b == target.head {
        return Err(invalid("self-reference"));
    }

    let mut out: Vec<Production> = Vec::with_capacity(g.productions().len());
    let mut push = |p: Production| {
        // `A -> A` never contributes a word
        if p.body != [p.head.clone()] && !out.contains(&p) {
            out.push(p);
        }
    };
    for (i, p) in g.productions().iter().enumerate() {
        if i != production {
            push(p.clone());
            continue;
        }
        for delta in g.productions_of(b) {
            let mut body = p.body[..position].to_vec();
            body.extend(delta.body.iter().cloned());
            body.extend(p.body[position + 1..].iter().cloned());
            push(Production::new(p.head.clone(), body));
        }
    }
    if b != g.axiom() && !out.iter().any(|p| p.body.contains(b)) {
        out.retain(|p| p.head != *b);
    }
    Ok(Grammar::new(g.axiom().clone(), out).expect("unfolding keeps symbols declared"))
}

/// Every `(production, position)` that [`unfold_once`] accepts, in
/// grammar order.
pub fn unfold_sites(g: &Grammar) -> Vec<(usize, usize)> {
    g.productions()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.body
                .iter()
                .enumerate()
                .filter(move |(_, s)| s.is_nonterminal() && **s != p.head)
                .map(move |(j, _)| (i, j))
        })
        .collect()
}

/// Breadth-first search over unfoldings for a grammar in normal form.
/// The first hit in BFS order is synthesized and checked against the
/// input at [`VERIFY_BOUND`] before it is reported.
pub fn search_mnf(g: &Grammar, cfg: &SearchConfig) -> Result<SearchOutcome, OracleError> {
    let start = if cfg.start_from_cnf {
        match to_cnf(g) {
            Ok(c) => c,
            Err(UnfoldError::EmptyLanguage(c)) => *c,
            Err(UnfoldError::Oracle(e)) => return Err(e),
            Err(e @ UnfoldError::InvalidPosition { .. }) => unreachable!("{e}"),
        }
    } else {
        g.clone()
    };
    let max_candidates = cfg.max_candidates.max(1);
    let mut stats = SearchStats::default();
    let mut seen: HashSet<(Symbol, Vec<Production>)> = HashSet::from([start.canonical_key()]);
    let mut level = vec![start];

    for depth in 0..=cfg.max_depth {
        stats.depth = depth;
        for candidate in &level {
            if stats.explored == max_candidates {
                return Ok(SearchOutcome { found: None, stats });
            }
            stats.explored += 1;
            if !check_mnf(candidate).is_mnf() {
                continue;
            }
            let regex = synthesize_regex(candidate).expect("normal-form grammar synthesizes");
            if bounded_equiv(g, &regex, VERIFY_BOUND, &cfg.budget)?.is_equivalent() {
                return Ok(SearchOutcome {
                    found: Some((candidate.clone(), regex)),
                    stats,
                });
            }
        }
        if depth == cfg.max_depth {
            break;
        }
        let mut next = Vec::new();
        for candidate in &level {
            for (i, j) in unfold_sites(candidate) {
                let child = unfold_once(candidate, i, j).expect("site is valid");
                if seen.insert(child.canonical_key()) {
                    next.push(child);
                } else {
                    stats.deduped += 1;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(SearchOutcome { found: None, stats })
}
