//! Shared fixtures and seeded generators for the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use mnf_lab::grammar::{parse_grammar, Grammar, Production, Symbol};
use mnf_lab::regex::{parse_regex, Regex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn fixture(name: &str) -> Grammar {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_grammar(&text).unwrap()
}

pub fn regex(text: &str) -> Regex {
    parse_regex(text).unwrap()
}

pub struct Example {
    pub file: &'static str,
    pub expected: &'static str,
}

pub const EXAMPLE_1: Example = Example {
    file: "ex1.cfg",
    expected: "(a b c)* (g h i + eps) (d e f)*",
};

pub const EXAMPLE_2: Example = Example {
    file: "ex2.cfg",
    expected: "(a u* m v*)* (g* i h* p* r q* + eps) (x* n y* d e f)*",
};

pub const EXAMPLE_3: Example = Example {
    file: "ex3.cfg",
    expected: "(u* m u*)* (u* i u* x* r x* + z + eps) (x* n x*)*",
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const TERMINALS: [&str; 3] = ["a", "b", "c"];
const NONTERMINALS: [&str; 4] = ["S", "A", "B", "C"];

/// A regex over the first `alphabet` letters with tree depth at most
/// `depth`. ∅ and ε leaves are rare but present.
pub fn random_regex(rng: &mut impl Rng, alphabet: usize, depth: usize) -> Regex {
    let leaf = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..12) {
        0 => Regex::Empty,
        1 | 2 => Regex::Epsilon,
        _ => Regex::literal(TERMINALS[rng.gen_range(0..alphabet)]),
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=3);
            Regex::concat(
                (0..n)
                    .map(|_| random_regex(rng, alphabet, depth - 1))
                    .collect::<Vec<_>>(),
            )
        }
        1 => {
            let n = rng.gen_range(2..=3);
            Regex::union(
                (0..n)
                    .map(|_| random_regex(rng, alphabet, depth - 1))
                    .collect::<Vec<_>>(),
            )
        }
        _ => Regex::star(random_regex(rng, alphabet, depth - 1)),
    }
}

/// Alphabet size in 1..=3 and depth in 0..=4.
pub fn random_small_regex(rng: &mut impl Rng) -> Regex {
    let alphabet = rng.gen_range(1..=3);
    let depth = rng.gen_range(0..=4);
    random_regex(rng, alphabet, depth)
}

fn random_factor(rng: &mut impl Rng, pool: &[Symbol], max_len: usize) -> Vec<Symbol> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| pool.choose(rng).unwrap().clone())
        .collect()
}

/// A grammar in normal form by construction: nonterminal `i` only refers
/// to nonterminals `j > i`, and every body has one of the three
/// pseudo-regular shapes. At most 4 nonterminals and 3 terminals.
pub fn random_mnf_grammar(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=4);
    let t = rng.gen_range(1..=3);
    let nts: Vec<Symbol> = NONTERMINALS[..k]
        .iter()
        .map(|n| Symbol::nonterminal(*n))
        .collect();
    let terms: Vec<Symbol> = TERMINALS[..t]
        .iter()
        .map(|n| Symbol::terminal(*n))
        .collect();
    let mut prods = Vec::new();
    for (i, head) in nts.iter().enumerate() {
        let pool: Vec<Symbol> = terms.iter().chain(&nts[i + 1..]).cloned().collect();
        let count = rng.gen_range(1..=3);
        for c in 0..count {
            // usually keep at least one constant so languages are non-trivial
            let shape = if c == 0 && rng.gen_bool(0.85) {
                2
            } else {
                rng.gen_range(0..3)
            };
            let f = random_factor(rng, &pool, 2);
            let body = match shape {
                0 => f.into_iter().chain([head.clone()]).collect(),
                1 => [head.clone()].into_iter().chain(f).collect(),
                _ => f,
            };
            prods.push(Production::new(head.clone(), body));
        }
    }
    Grammar::new(nts[0].clone(), prods).unwrap()
}

/// An unrestricted grammar: bodies of length ≤ 3 over `a`, `b` and up to 3
/// nonterminals, so recursion, ε- and unit productions all occur.
pub fn random_cfg(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=3);
    let nts: Vec<Symbol> = NONTERMINALS[..k]
        .iter()
        .map(|n| Symbol::nonterminal(*n))
        .collect();
    let pool: Vec<Symbol> = TERMINALS[..2]
        .iter()
        .map(|n| Symbol::terminal(*n))
        .chain(nts.iter().cloned())
        .collect();
    let mut prods = Vec::new();
    for head in &nts {
        for _ in 0..rng.gen_range(1..=3) {
            let body = random_factor(rng, &pool, 3);
            prods.push(Production::new(head.clone(), body));
        }
    }
    Grammar::new(nts[0].clone(), prods).unwrap()
}

/// Nodes `n0..n{k-1}` with k ≤ 8 and random arcs, self-loops excluded.
pub fn random_digraph(rng: &mut impl Rng) -> (Vec<String>, Vec<(String, String)>) {
    let k = rng.gen_range(1..=8);
    let nodes: Vec<String> = (0..k).map(|i| format!("n{i}")).collect();
    let density = rng.gen_range(0.0..0.4);
    let mut arcs = Vec::new();
    for a in &nodes {
        for b in &nodes {
            if a != b && rng.gen_bool(density) {
                arcs.push((a.clone(), b.clone()));
            }
        }
    }
    (nodes, arcs)
}

/// The same grammar with its productions shuffled.
pub fn shuffled(rng: &mut impl Rng, g: &Grammar) -> Grammar {
    let mut prods = g.productions().to_vec();
    prods.shuffle(rng);
    Grammar::new(g.axiom().clone(), prods).unwrap()
}
