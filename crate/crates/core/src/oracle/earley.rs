//! Earley recognizer with the Aycock–Horspool treatment of nullable
//! nonterminals. Handles ε-productions, unit cycles and left recursion.

use std::collections::{BTreeMap, HashSet};

use crate::grammar::Grammar;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Sym {
    T(usize),
    N(usize),
}

/// A grammar compiled to dense ids, reusable across many words.
pub struct Recognizer {
    terminals: BTreeMap<String, usize>,
    axiom: usize,
    heads: Vec<usize>,
    bodies: Vec<Vec<Sym>>,
    rules_of: Vec<Vec<usize>>,
    nullable: Vec<bool>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    rule: usize,
    dot: usize,
    origin: usize,
}

impl Recognizer {
    pub fn new(g: &Grammar) -> Self {
        let terminals: BTreeMap<String, usize> = g
            .terminals()
            .iter()
            .enumerate()
            .map(|(i, t)| (t.name().to_string(), i))
            .collect();
        let nts: BTreeMap<&str, usize> = g
            .nonterminals()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.name(), i))
            .collect();
        let mut heads = Vec::new();
        let mut bodies: Vec<Vec<Sym>> = Vec::new();
        let mut rules_of = vec![Vec::new(); nts.len()];
        for p in g.productions() {
            let head = nts[p.head.name()];
            rules_of[head].push(bodies.len());
            heads.push(head);
            bodies.push(
                p.body
                    .iter()
                    .map(|s| {
                        if s.is_terminal() {
                            Sym::T(terminals[s.name()])
                        } else {
                            Sym::N(nts[s.name()])
                        }
                    })
                    .collect(),
            );
        }
        let mut nullable = vec![false; nts.len()];
        loop {
            let mut changed = false;
            for (r, body) in bodies.iter().enumerate() {
                if !nullable[heads[r]]
                    && body.iter().all(|s| matches!(s, Sym::N(n) if nullable[*n]))
                {
                    nullable[heads[r]] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self {
            terminals,
            axiom: nts[g.axiom().name()],
            heads,
            bodies,
            rules_of,
            nullable,
        }
    }

    pub fn recognizes<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut input = Vec::with_capacity(word.len());
        for tok in word {
            match self.terminals.get(tok.as_ref()) {
                Some(&t) => input.push(t),
                None => return false,
            }
        }
        let n = input.len();
        let mut chart: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
        let add =
            |chart: &mut Vec<Vec<Item>>, seen: &mut Vec<HashSet<Item>>, at: usize, item: Item| {
                if seen[at].insert(item) {
                    chart[at].push(item);
                }
            };
        for &rule in &self.rules_of[self.axiom] {
            add(
                &mut chart,
                &mut seen,
                0,
                Item {
                    rule,
                    dot: 0,
                    origin: 0,
                },
            );
        }
        for i in 0..=n {
            let mut k = 0;
            while k < chart[i].len() {
                let item = chart[i][k];
                k += 1;
                match self.bodies[item.rule].get(item.dot) {
                    Some(Sym::N(b)) => {
                        for &rule in &self.rules_of[*b] {
                            add(
                                &mut chart,
                                &mut seen,
                                i,
                                Item {
                                    rule,
                                    dot: 0,
                                    origin: i,
                                },
                            );
                        }
                        if self.nullable[*b] {
                            add(
                                &mut chart,
                                &mut seen,
                                i,
                                Item {
                                    dot: item.dot + 1,
                                    ..item
                                },
                            );
                        }
                    }
                    Some(Sym::T(t)) => {
                        if i < n && input[i] == *t {
                            add(
                                &mut chart,
                                &mut seen,
                                i + 1,
                                Item {
                                    dot: item.dot + 1,
                                    ..item
                                },
                            );
                        }
                    }
                    None => {
                        let head = self.heads[item.rule];
                        let waiting: Vec<Item> = chart[item.origin]
                            .iter()
                            .filter(|w| self.bodies[w.rule].get(w.dot) == Some(&Sym::N(head)))
                            .copied()
                            .collect();
                        for w in waiting {
                            add(
                                &mut chart,
                                &mut seen,
                                i,
                                Item {
                                    dot: w.dot + 1,
                                    ..w
                                },
                            );
                        }
                    }
                }
            }
        }
        chart[n].iter().any(|it| {
            it.origin == 0
                && self.heads[it.rule] == self.axiom
                && it.dot == self.bodies[it.rule].len()
        })
    }
}

/// Whether the axiom of `g` derives `word`.
pub fn cfg_membership<S: AsRef<str>>(g: &Grammar, word: &[S]) -> bool {
    Recognizer::new(g).recognizes(word)
}
