//! Chomsky normal form by the textbook sequence: fresh start symbol,
//! terminal wrappers, binarization, ε-elimination, unit elimination and
//! removal of useless symbols.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::UnfoldError;
use crate::grammar::{Grammar, Production, Symbol};

struct Names {
    used: BTreeSet<String>,
}

impl Names {
    fn fresh(&mut self, base: &str) -> Symbol {
        let mut name = base.to_string();
        let mut i = 1;
        while self.used.contains(&name) {
            name = format!("{base}_{i}");
            i += 1;
        }
        self.used.insert(name.clone());
        Symbol::nonterminal(name)
    }
}

fn push_unique(out: &mut Vec<Production>, p: Production) {
    if !out.contains(&p) {
        out.push(p);
    }
}

/// Whether every production is `A -> B C`, `A -> a`, or `S -> ε` for a
/// start symbol that occurs in no body.
pub fn is_cnf(g: &Grammar) -> bool {
    let axiom_in_body = g.productions().iter().any(|p| p.body.contains(g.axiom()));
    g.productions().iter().all(|p| match p.body.as_slice() {
        [] => p.head == *g.axiom() && !axiom_in_body,
        [a] => a.is_terminal(),
        [b, c] => b.is_nonterminal() && c.is_nonterminal(),
        _ => false,
    })
}

/// An equivalent grammar in Chomsky normal form. When `g` generates no
/// word at all, the error carries the (production-free) result.
pub fn to_cnf(g: &Grammar) -> Result<Grammar, UnfoldError> {
    let mut names = Names {
        used: g
            .nonterminals()
            .iter()
            .chain(g.terminals())
            .map(|s| s.name().to_string())
            .collect(),
    };
    let mut axiom = g.axiom().clone();
    let mut prods: Vec<Production> = g.productions().to_vec();

    if prods.iter().any(|p| p.body.contains(&axiom)) {
        let start = names.fresh(&format!("{}0", axiom.name()));
        prods.insert(0, Production::new(start.clone(), vec![axiom]));
        axiom = start;
    }

    // terminal wrappers inside long bodies
    let mut wrappers: BTreeMap<Symbol, Symbol> = BTreeMap::new();
    let mut wrapper_rules = Vec::new();
    for p in &mut prods {
        if p.body.len() < 2 {
            continue;
        }
        for s in &mut p.body {
            if s.is_terminal() {
                let w = wrappers.entry(s.clone()).or_insert_with(|| {
                    let w = names.fresh(&format!("T_{}", s.name()));
                    wrapper_rules.push(Production::new(w.clone(), vec![s.clone()]));
                    w
                });
                *s = w.clone();
            }
        }
    }
    prods.extend(wrapper_rules);

    // binarize
    let mut binary = Vec::with_capacity(prods.len());
    for p in prods {
        if p.body.len() <= 2 {
            binary.push(p);
            continue;
        }
        let k = p.body.len();
        let mut head = p.head.clone();
        for i in 0..k - 2 {
            let rest = names.fresh(&format!("{}_{}", p.head.name(), "R"));
            binary.push(Production::new(head, vec![p.body[i].clone(), rest.clone()]));
            head = rest;
        }
        binary.push(Production::new(head, p.body[k - 2..].to_vec()));
    }

    // ε-elimination
    let mut nullable: BTreeSet<Symbol> = BTreeSet::new();
    loop {
        let before = nullable.len();
        for p in &binary {
            if p.body.iter().all(|s| nullable.contains(s)) {
                nullable.insert(p.head.clone());
            }
        }
        if nullable.len() == before {
            break;
        }
    }
    let mut no_eps = Vec::new();
    for p in &binary {
        let optional: Vec<usize> = (0..p.body.len())
            .filter(|&i| nullable.contains(&p.body[i]))
            .collect();
        for mask in 0..(1u32 << optional.len()) {
            let body: Vec<Symbol> = p
                .body
                .iter()
                .enumerate()
                .filter(|(i, _)| match optional.iter().position(|o| o == i) {
                    Some(bit) => mask & (1 << bit) == 0,
                    None => true,
                })
                .map(|(_, s)| s.clone())
                .collect();
            if body.is_empty() || body == [p.head.clone()] {
                continue;
            }
            push_unique(&mut no_eps, Production::new(p.head.clone(), body));
        }
    }

    // unit elimination
    let heads: BTreeSet<Symbol> = no_eps
        .iter()
        .map(|p| p.head.clone())
        .chain([axiom.clone()])
        .collect();
    let mut result = Vec::new();
    for a in &heads {
        let mut reach = vec![a.clone()];
        let mut i = 0;
        while i < reach.len() {
            let b = reach[i].clone();
            for p in no_eps.iter().filter(|p| p.head == b) {
                if let [c] = p.body.as_slice() {
                    if c.is_nonterminal() && !reach.contains(c) {
                        reach.push(c.clone());
                    }
                }
            }
            i += 1;
        }
        for b in &reach {
            for p in no_eps.iter().filter(|p| &p.head == b) {
                if !matches!(p.body.as_slice(), [c] if c.is_nonterminal()) {
                    push_unique(&mut result, Production::new(a.clone(), p.body.clone()));
                }
            }
        }
    }
    if nullable.contains(g.axiom()) {
        result.insert(0, Production::new(axiom.clone(), Vec::new()));
    }

    // keep the axiom's rules first, everything else in construction order
    result.sort_by_key(|p| p.head != axiom);
    let cnf = Grammar::new(axiom, result)
        .expect("construction only uses symbols it declared")
        .pruned();
    if cnf.productions().is_empty() {
        return Err(UnfoldError::EmptyLanguage(Box::new(cnf)));
    }
    Ok(cnf)
}
