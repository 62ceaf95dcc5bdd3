//! Length-bounded enumeration of languages.
//!
//! Words are handled internally as vectors of symbol ids over a sorted
//! alphabet, then returned as token vectors. Every route materializes
//! only members of the language, except the membership route for
//! grammars, which tests every word over the alphabet.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{BoundedLanguage, Budget, Word};
use crate::error::OracleError;
use crate::grammar::{Grammar, Symbol};
use crate::oracle::automata::Dfa;
use crate::oracle::earley::Recognizer;
use crate::regex::Regex;

type Ids = Vec<u32>;

/// Words bucketed by length, with a set for membership.
#[derive(Default, Clone)]
struct Lang {
    by_len: Vec<Vec<Ids>>,
    set: HashSet<Ids>,
}

impl Lang {
    fn new(bound: usize) -> Self {
        Lang {
            by_len: vec![Vec::new(); bound + 1],
            set: HashSet::new(),
        }
    }

    fn insert(&mut self, w: Ids) -> bool {
        if self.set.contains(&w) {
            return false;
        }
        self.by_len[w.len()].push(w.clone());
        self.set.insert(w);
        true
    }

    fn len(&self) -> usize {
        self.set.len()
    }

    fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    fn iter(&self) -> impl Iterator<Item = &Ids> {
        self.by_len.iter().flatten()
    }
}

/// Concatenations `u·v` with `u ∈ left`, `v ∈ right`, `|uv| ≤ bound`.
fn product(left: &Lang, right: &Lang, bound: usize, budget: &Budget) -> Result<Lang, OracleError> {
    let mut out = Lang::new(bound);
    for u in left.iter() {
        for bucket in &right.by_len[..=bound - u.len()] {
            for v in bucket {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.insert(w);
            }
        }
        budget.check(out.len())?;
    }
    Ok(out)
}

fn union_into(target: &mut Lang, other: &Lang) -> usize {
    other.iter().filter(|w| target.insert((*w).clone())).count()
}

/// Symbol interning over a sorted alphabet.
pub(crate) struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub(crate) fn new(names: impl IntoIterator<Item = String>) -> Self {
        let names: BTreeSet<String> = names.into_iter().collect();
        Alphabet {
            names: names.into_iter().collect(),
        }
    }

    fn id(&self, name: &str) -> u32 {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .expect("symbol in alphabet") as u32
    }

    fn word(&self, ids: &[u32]) -> Word {
        ids.iter()
            .map(|&i| self.names[i as usize].clone())
            .collect()
    }

    fn export(&self, lang: &Lang) -> BoundedLanguage {
        lang.iter().map(|w| self.word(w)).collect()
    }
}

pub(crate) fn regex_alphabet(r: &Regex) -> Result<Vec<String>, OracleError> {
    let mut names = Vec::new();
    let mut bad = None;
    r.for_each_literal(&mut |s: &Symbol| {
        if s.is_nonterminal() {
            bad.get_or_insert_with(|| s.name().to_string());
        }
        names.push(s.name().to_string());
    });
    match bad {
        Some(name) => Err(OracleError::NonterminalLiteral(name)),
        None => Ok(names),
    }
}

/// Language of a regex by structural recursion on the tree.
fn regex_lang(
    r: &Regex,
    alphabet: &Alphabet,
    bound: usize,
    budget: &Budget,
) -> Result<Lang, OracleError> {
    Ok(match r {
        Regex::Empty => Lang::new(bound),
        Regex::Epsilon => {
            let mut l = Lang::new(bound);
            l.insert(Vec::new());
            l
        }
        Regex::Literal(s) => {
            let mut l = Lang::new(bound);
            if bound >= 1 {
                l.insert(vec![alphabet.id(s.name())]);
            }
            l
        }
        Regex::Concat(parts) => {
            let mut acc = regex_lang(&Regex::Epsilon, alphabet, bound, budget)?;
            for p in parts {
                let l = regex_lang(p, alphabet, bound, budget)?;
                acc = product(&acc, &l, bound, budget)?;
            }
            acc
        }
        Regex::Union(parts) => {
            let mut acc = Lang::new(bound);
            for p in parts {
                union_into(&mut acc, &regex_lang(p, alphabet, bound, budget)?);
                budget.check(acc.len())?;
            }
            acc
        }
        Regex::Star(inner) => {
            let base = regex_lang(inner, alphabet, bound, budget)?;
            let mut acc = regex_lang(&Regex::Epsilon, alphabet, bound, budget)?;
            let mut frontier = acc.clone();
            while !frontier.is_empty() {
                let grown = product(&frontier, &base, bound, budget)?;
                let mut fresh = Lang::new(bound);
                for w in grown.iter() {
                    if acc.insert(w.clone()) {
                        fresh.insert(w.clone());
                    }
                }
                budget.check(acc.len())?;
                frontier = fresh;
            }
            acc
        }
    })
}

pub fn regex_bounded_language(
    r: &Regex,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedLanguage, OracleError> {
    let alphabet = Alphabet::new(regex_alphabet(r)?);
    Ok(alphabet.export(&regex_lang(r, &alphabet, bound, budget)?))
}

/// Depth-first walk over the automaton, pruning states that cannot reach
/// acceptance.
pub fn dfa_bounded_language(
    d: &Dfa,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedLanguage, OracleError> {
    let live = d.live_states();
    let mut out = BoundedLanguage::new();
    if !live[d.start()] {
        return Ok(out);
    }
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(d.start(), Vec::new())];
    while let Some((state, word)) = stack.pop() {
        if d.is_accepting(state) {
            out.insert(word.iter().map(|&a| d.alphabet()[a].clone()).collect());
            budget.check(out.len())?;
        }
        if word.len() == bound {
            continue;
        }
        for a in 0..d.alphabet().len() {
            let t = d.step(state, a);
            if live[t] {
                let mut w = word.clone();
                w.push(a);
                stack.push((t, w));
            }
        }
    }
    Ok(out)
}

/// Grammar language by least-fixpoint derivation closure: each nonterminal
/// accumulates the terminal words of length ≤ `bound` it derives. Rounds
/// only recombine bodies where at least one factor gained words in the
/// previous round.
pub fn grammar_bounded_language(
    g: &Grammar,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedLanguage, OracleError> {
    let alphabet = Alphabet::new(g.terminals().iter().map(|t| t.name().to_string()));
    let nts: HashMap<&Symbol, usize> = g
        .nonterminals()
        .iter()
        .enumerate()
        .map(|(i, n)| (n, i))
        .collect();
    let literal = |s: &Symbol| {
        let mut l = Lang::new(bound);
        if bound >= 1 {
            l.insert(vec![alphabet.id(s.name())]);
        }
        l
    };
    enum Factor {
        Fixed(Lang),
        Var(usize),
    }
    let rules: Vec<(usize, Vec<Factor>)> = g
        .productions()
        .iter()
        .map(|p| {
            let factors = p
                .body
                .iter()
                .map(|s| {
                    if s.is_terminal() {
                        Factor::Fixed(literal(s))
                    } else {
                        Factor::Var(nts[s])
                    }
                })
                .collect();
            (nts[&p.head], factors)
        })
        .collect();

    let mut full: Vec<Lang> = vec![Lang::new(bound); nts.len()];
    let mut delta: Vec<Lang> = vec![Lang::new(bound); nts.len()];
    let mut first = true;
    loop {
        let mut next: Vec<Lang> = vec![Lang::new(bound); nts.len()];
        for (head, factors) in &rules {
            // positions whose delta seeds this round; the first round
            // evaluates every body once in full
            let seeds: Vec<Option<usize>> = if first {
                vec![None]
            } else {
                factors
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| matches!(f, Factor::Var(n) if !delta[*n].is_empty()))
                    .map(|(i, _)| Some(i))
                    .collect()
            };
            for seed in seeds {
                let mut acc = Lang::new(bound);
                acc.insert(Vec::new());
                for (i, f) in factors.iter().enumerate() {
                    let l = match f {
                        Factor::Fixed(l) => l,
                        Factor::Var(n) if seed == Some(i) => &delta[*n],
                        Factor::Var(n) => &full[*n],
                    };
                    acc = product(&acc, l, bound, budget)?;
                    if acc.is_empty() {
                        break;
                    }
                }
                for w in acc.iter() {
                    if !full[*head].set.contains(w) {
                        next[*head].insert(w.clone());
                    }
                }
            }
        }
        first = false;
        let mut grew = false;
        let mut total = 0;
        for (i, fresh) in next.iter().enumerate() {
            grew |= union_into(&mut full[i], fresh) > 0;
            total += full[i].len();
        }
        budget.check(total)?;
        delta = next;
        if !grew {
            break;
        }
    }
    Ok(alphabet.export(&full[nts[g.axiom()]]))
}

/// Grammar language by testing every word over the terminal alphabet with
/// the Earley recognizer.
pub fn grammar_bounded_language_by_membership(
    g: &Grammar,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedLanguage, OracleError> {
    let names: Vec<String> = g.terminals().iter().map(|t| t.name().to_string()).collect();
    let k = names.len();
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=bound {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k);
    }
    budget.check(total)?;
    let recognizer = Recognizer::new(g);
    let mut out = BoundedLanguage::new();
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for len in 0..=bound {
        for w in &frontier {
            if recognizer.recognizes(w) {
                out.insert(w.clone());
            }
        }
        if len == bound {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|w| {
                names.iter().map(move |a| {
                    let mut x = w.clone();
                    x.push(a.clone());
                    x
                })
            })
            .collect();
    }
    Ok(out)
}

/// Bounded least solution of `X = a·X + X·b + s` by Kleene iteration
/// from the empty set.
pub fn lfp_bounded(
    a: &Regex,
    b: &Regex,
    s: &Regex,
    bound: usize,
    budget: &Budget,
) -> Result<BoundedLanguage, OracleError> {
    let alphabet = Alphabet::new(
        regex_alphabet(a)?
            .into_iter()
            .chain(regex_alphabet(b)?)
            .chain(regex_alphabet(s)?),
    );
    let la = regex_lang(a, &alphabet, bound, budget)?;
    let lb = regex_lang(b, &alphabet, bound, budget)?;
    let ls = regex_lang(s, &alphabet, bound, budget)?;
    let mut x = Lang::new(bound);
    loop {
        let mut next = ls.clone();
        union_into(&mut next, &product(&la, &x, bound, budget)?);
        union_into(&mut next, &product(&x, &lb, bound, budget)?);
        budget.check(next.len())?;
        // the map is monotone and starts from ∅, so equal sizes mean a
        // fixed point
        if next.len() == x.len() {
            return Ok(alphabet.export(&x));
        }
        x = next;
    }
}
