//! Thompson NFAs, subset construction and partition-refinement
//! minimization.

use std::collections::{btree_map::Entry, BTreeMap, BTreeSet, VecDeque};

use crate::error::OracleError;
use crate::regex::Regex;

/// An ε-NFA with a single start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<String>,
    epsilon: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.moves.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    /// All transitions as `(from, label, to)`; `None` labels are ε-moves.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Option<&str>, usize)> + '_ {
        let eps = self
            .epsilon
            .iter()
            .enumerate()
            .flat_map(|(from, v)| v.iter().map(move |&to| (from, None, to)));
        let sym = self.moves.iter().enumerate().flat_map(move |(from, v)| {
            v.iter()
                .map(move |&(a, to)| (from, Some(self.alphabet[a].as_str()), to))
        });
        eps.chain(sym)
    }

    fn add_state(&mut self) -> usize {
        self.epsilon.push(Vec::new());
        self.moves.push(Vec::new());
        self.moves.len() - 1
    }

    fn closure(&self, states: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = states.into_iter().collect();
        while let Some(s) = stack.pop() {
            if set.insert(s) {
                stack.extend(self.epsilon[s].iter().copied());
            }
        }
        set
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut current = self.closure([self.start]);
        for tok in word {
            let Ok(a) = self
                .alphabet
                .binary_search_by(|x| x.as_str().cmp(tok.as_ref()))
            else {
                return false;
            };
            let next: Vec<usize> = current
                .iter()
                .flat_map(|&s| {
                    self.moves[s]
                        .iter()
                        .filter(|(b, _)| *b == a)
                        .map(|&(_, t)| t)
                })
                .collect();
            current = self.closure(next);
        }
        current.iter().any(|s| self.accepting.contains(s))
    }
}

/// Thompson construction. Uses at most two states per syntax-tree node.
pub fn regex_to_nfa(r: &Regex) -> Result<Nfa, OracleError> {
    let mut names = BTreeSet::new();
    let mut bad = None;
    r.for_each_literal(&mut |s| {
        if s.is_nonterminal() {
            bad.get_or_insert_with(|| s.name().to_string());
        }
        names.insert(s.name().to_string());
    });
    if let Some(name) = bad {
        return Err(OracleError::NonterminalLiteral(name));
    }
    let mut nfa = Nfa {
        alphabet: names.into_iter().collect(),
        epsilon: Vec::new(),
        moves: Vec::new(),
        start: 0,
        accepting: BTreeSet::new(),
    };
    let (start, end) = build(&mut nfa, r);
    nfa.start = start;
    nfa.accepting.insert(end);
    Ok(nfa)
}

fn build(nfa: &mut Nfa, r: &Regex) -> (usize, usize) {
    match r {
        Regex::Empty => (nfa.add_state(), nfa.add_state()),
        Regex::Epsilon => {
            let (s, e) = (nfa.add_state(), nfa.add_state());
            nfa.epsilon[s].push(e);
            (s, e)
        }
        Regex::Literal(sym) => {
            let (s, e) = (nfa.add_state(), nfa.add_state());
            let a = nfa
                .alphabet
                .binary_search_by(|x| x.as_str().cmp(sym.name()))
                .expect("literal collected into alphabet");
            nfa.moves[s].push((a, e));
            (s, e)
        }
        Regex::Concat(parts) => {
            let frags: Vec<(usize, usize)> = parts.iter().map(|p| build(nfa, p)).collect();
            for w in frags.windows(2) {
                nfa.epsilon[w[0].1].push(w[1].0);
            }
            match (frags.first(), frags.last()) {
                (Some(first), Some(last)) => (first.0, last.1),
                _ => build(nfa, &Regex::Epsilon),
            }
        }
        Regex::Union(parts) => {
            let (s, e) = (nfa.add_state(), nfa.add_state());
            for p in parts {
                let (ps, pe) = build(nfa, p);
                nfa.epsilon[s].push(ps);
                nfa.epsilon[pe].push(e);
            }
            (s, e)
        }
        Regex::Star(inner) => {
            let (s, e) = (nfa.add_state(), nfa.add_state());
            let (is, ie) = build(nfa, inner);
            nfa.epsilon[s].extend([is, e]);
            nfa.epsilon[ie].extend([is, e]);
            (s, e)
        }
    }
}

/// A complete deterministic automaton: every state has exactly one
/// successor per alphabet symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    next: Vec<Vec<usize>>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a dense transition table indexed by state, then by
    /// position in the sorted, deduplicated `alphabet`.
    pub fn from_table(
        alphabet: Vec<String>,
        next: Vec<Vec<usize>>,
        start: usize,
        accepting: Vec<bool>,
    ) -> Self {
        assert!(
            alphabet.windows(2).all(|w| w[0] < w[1]),
            "alphabet must be sorted"
        );
        assert_eq!(next.len(), accepting.len());
        assert!(start < next.len());
        for row in &next {
            assert_eq!(
                row.len(),
                alphabet.len(),
                "transition function must be total"
            );
            assert!(row.iter().all(|&t| t < next.len()));
        }
        Self {
            alphabet,
            next,
            start,
            accepting,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.next.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// Successor of `state` on the `symbol`-th alphabet entry.
    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.next[state][symbol]
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut state = self.start;
        for tok in word {
            match self
                .alphabet
                .binary_search_by(|x| x.as_str().cmp(tok.as_ref()))
            {
                Ok(a) => state = self.next[state][a],
                Err(_) => return false,
            }
        }
        self.accepting[state]
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let mut live = self.accepting.clone();
        loop {
            let mut changed = false;
            for s in 0..self.next.len() {
                if !live[s] && self.next[s].iter().any(|&t| live[t]) {
                    live[s] = true;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    pub fn live_state_count(&self) -> usize {
        self.live_states().into_iter().filter(|&l| l).count()
    }

    /// The same language over a larger alphabet; new symbols lead to a
    /// rejecting sink.
    pub fn with_alphabet(&self, alphabet: &[String]) -> Dfa {
        let mut target: Vec<String> = alphabet.iter().chain(&self.alphabet).cloned().collect();
        target.sort();
        target.dedup();
        if target == self.alphabet {
            return self.clone();
        }
        let sink = self.next.len();
        let mut next: Vec<Vec<usize>> = self
            .next
            .iter()
            .map(|row| {
                target
                    .iter()
                    .map(|a| match self.alphabet.binary_search(a) {
                        Ok(i) => row[i],
                        Err(_) => sink,
                    })
                    .collect()
            })
            .collect();
        next.push(vec![sink; target.len()]);
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa::from_table(target, next, self.start, accepting)
    }
}

/// Subset construction. The empty subset, when reached, is the sink.
pub fn nfa_to_dfa(n: &Nfa) -> Dfa {
    let k = n.alphabet.len();
    let start = n.closure([n.start]);
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut next: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let targets = subsets[i]
                .iter()
                .flat_map(|&s| n.moves[s].iter().filter(|(b, _)| *b == a).map(|&(_, t)| t));
            let set = n.closure(targets);
            let id = match index.get(&set) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(set.clone(), id);
                    subsets.push(set);
                    id
                }
            };
            row.push(id);
        }
        next.push(row);
        i += 1;
    }
    let accepting = subsets
        .iter()
        .map(|set| set.iter().any(|s| n.accepting.contains(s)))
        .collect();
    Dfa::from_table(n.alphabet.clone(), next, 0, accepting)
}

/// Drops unreachable states and merges indistinguishable ones by iterated
/// partition refinement. States of the result are numbered in
/// breadth-first order from the start, so equal languages over the same
/// alphabet give identical automata.
pub fn minimize_dfa(d: &Dfa) -> Dfa {
    let k = d.alphabet.len();
    // reachable states in BFS order
    let mut order = vec![d.start];
    let mut seen = vec![false; d.next.len()];
    seen[d.start] = true;
    let mut q = VecDeque::from([d.start]);
    while let Some(s) = q.pop_front() {
        for &t in &d.next[s] {
            if !seen[t] {
                seen[t] = true;
                order.push(t);
                q.push_back(t);
            }
        }
    }

    let mut class: Vec<usize> = vec![usize::MAX; d.next.len()];
    for &s in &order {
        class[s] = usize::from(d.accepting[s]);
    }
    let mut count = order
        .iter()
        .map(|&s| class[s])
        .collect::<BTreeSet<_>>()
        .len();
    loop {
        let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut refined = vec![usize::MAX; d.next.len()];
        for &s in &order {
            let mut signature = Vec::with_capacity(k + 1);
            signature.push(class[s]);
            signature.extend(d.next[s].iter().map(|&t| class[t]));
            let fresh = ids.len();
            refined[s] = *ids.entry(signature).or_insert(fresh);
        }
        class = refined;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }

    // renumber classes in BFS order of the quotient
    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut q = VecDeque::from([d.start]);
    renumber.insert(class[d.start], 0);
    reps.push(d.start);
    while let Some(s) = q.pop_front() {
        for &t in &d.next[s] {
            if let Entry::Vacant(e) = renumber.entry(class[t]) {
                e.insert(reps.len());
                reps.push(t);
                q.push_back(t);
            }
        }
    }
    let next = reps
        .iter()
        .map(|&s| d.next[s].iter().map(|&t| renumber[&class[t]]).collect())
        .collect();
    let accepting = reps.iter().map(|&s| d.accepting[s]).collect();
    Dfa::from_table(d.alphabet.clone(), next, 0, accepting)
}

/// Regex to minimal DFA in one call.
pub fn regex_to_dfa(r: &Regex) -> Result<Dfa, OracleError> {
    Ok(minimize_dfa(&nfa_to_dfa(&regex_to_nfa(r)?)))
}
