//! Regular expressions for grammars in normal form.
//!
//! Nonterminals are solved dependencies-first: each one's bilateral
//! equation only mentions nonterminals that already have a solution, so
//! substitution followed by the bilateral rule yields a terminal-only
//! expression for it. The axiom's entry is the answer.

use std::collections::{BTreeMap, BTreeSet};

use crate::equations::equation_from_partition;
use crate::error::SynthesisError;
use crate::grammar::{check_mnf, dependency_digraph, DependencyDigraph, Grammar, Symbol};
use crate::regex::{simplify, Regex};

/// Solved nonterminals, filled in dependency order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionEnv {
    solutions: BTreeMap<Symbol, Regex>,
    order: Vec<Symbol>,
}

impl SolutionEnv {
    pub fn get(&self, nonterminal: &Symbol) -> Option<&Regex> {
        self.solutions.get(nonterminal)
    }

    /// Nonterminals in the order they were solved.
    pub fn order(&self) -> &[Symbol] {
        &self.order
    }

    pub fn as_map(&self) -> &BTreeMap<Symbol, Regex> {
        &self.solutions
    }

    fn insert(&mut self, nonterminal: Symbol, solution: Regex) {
        debug_assert!(!solution.has_nonterminal());
        self.order.push(nonterminal.clone());
        self.solutions.insert(nonterminal, solution);
    }
}

/// Orders the nodes so that every arc `(A, B)` has `B` before `A`. Ties go
/// to the lexicographically smallest name.
pub fn topological_order(d: &DependencyDigraph) -> Result<Vec<String>, SynthesisError> {
    if let Some(cycle) = d.find_cycle() {
        return Err(SynthesisError::Cycle(cycle));
    }
    let mut pending: BTreeMap<&str, usize> = d.nodes().iter().map(|n| (n.as_str(), 0)).collect();
    let mut dependents: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (from, to) in d.arcs() {
        *pending.get_mut(from.as_str()).unwrap() += 1;
        dependents
            .entry(to.as_str())
            .or_default()
            .push(from.as_str());
    }
    let mut ready: BTreeSet<&str> = pending
        .iter()
        .filter(|(_, &n)| n == 0)
        .map(|(&k, _)| k)
        .collect();
    let mut order = Vec::with_capacity(pending.len());
    while let Some(next) = ready.pop_first() {
        order.push(next.to_string());
        for &dep in dependents.get(next).into_iter().flatten() {
            let n = pending.get_mut(dep).unwrap();
            *n -= 1;
            if *n == 0 {
                ready.insert(dep);
            }
        }
    }
    debug_assert_eq!(order.len(), d.nodes().len());
    Ok(order)
}

/// Solves every nonterminal of a normal-form grammar.
pub fn solve_all(g: &Grammar) -> Result<SolutionEnv, SynthesisError> {
    let report = check_mnf(g);
    if !report.is_mnf() {
        return Err(SynthesisError::NotMnf(Box::new(report)));
    }
    let mut env = SolutionEnv::default();
    for name in topological_order(&dependency_digraph(g))? {
        let a = Symbol::nonterminal(name);
        let partition = report
            .partition(&a)
            .expect("normal-form report has every partition");
        let equation = equation_from_partition(partition, env.as_map())?;
        let solution = equation.solve()?;
        env.insert(a, solution);
    }
    Ok(env)
}

/// A regular expression denoting the language of `g`.
pub fn synthesize_regex(g: &Grammar) -> Result<Regex, SynthesisError> {
    let env = solve_all(g)?;
    Ok(simplify(env.get(g.axiom()).expect("axiom solved")))
}
