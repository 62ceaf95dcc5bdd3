//! Looking-forward property, pseudo-regular partitions and the normal-form
//! decision built on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{render_body, Grammar, Production, Symbol};

/// Arcs from each nonterminal to the other nonterminals in its bodies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyDigraph {
    nodes: BTreeSet<String>,
    arcs: BTreeSet<(String, String)>,
}

impl DependencyDigraph {
    /// Builds a digraph, silently dropping self-arcs.
    pub fn new(
        nodes: impl IntoIterator<Item = String>,
        arcs: impl IntoIterator<Item = (String, String)>,
    ) -> Self {
        let mut nodes: BTreeSet<String> = nodes.into_iter().collect();
        let arcs: BTreeSet<(String, String)> = arcs.into_iter().filter(|(a, b)| a != b).collect();
        for (a, b) in &arcs {
            nodes.insert(a.clone());
            nodes.insert(b.clone());
        }
        Self { nodes, arcs }
    }

    pub fn nodes(&self) -> &BTreeSet<String> {
        &self.nodes
    }

    pub fn arcs(&self) -> &BTreeSet<(String, String)> {
        &self.arcs
    }

    pub fn has_arc(&self, from: &str, to: &str) -> bool {
        self.arcs.contains(&(from.to_string(), to.to_string()))
    }

    /// Successors of `node` in name order.
    pub fn successors<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a str> {
        self.arcs
            .range((node.to_string(), String::new())..)
            .take_while(move |(a, _)| a == node)
            .map(|(_, b)| b.as_str())
    }

    /// Some cycle `[n1, ..., nk, n1]` if the digraph has one. Depth-first
    /// search in name order, so the witness is deterministic.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        self.find_cycle_from(None)
    }

    /// Like [`find_cycle`](Self::find_cycle), but the search starts at
    /// `first` when it is a node.
    pub fn find_cycle_from(&self, first: Option<&str>) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let index: BTreeMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let names: Vec<&str> = self.nodes.iter().map(String::as_str).collect();
        let succ: Vec<Vec<usize>> = names
            .iter()
            .map(|n| self.successors(n).map(|m| index[m]).collect())
            .collect();
        let mut mark = vec![Mark::New; names.len()];
        let roots = first
            .and_then(|f| index.get(f).copied())
            .into_iter()
            .chain(0..names.len());

        for root in roots {
            if mark[root] != Mark::New {
                continue;
            }
            // (node, next successor to visit)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Open;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&m) = succ[node].get(*next) {
                    *next += 1;
                    match mark[m] {
                        Mark::New => {
                            mark[m] = Mark::Open;
                            stack.push((m, 0));
                        }
                        Mark::Open => {
                            let from = stack.iter().position(|&(n, _)| n == m).unwrap();
                            let mut cycle: Vec<String> = stack[from..]
                                .iter()
                                .map(|&(n, _)| names[n].to_string())
                                .collect();
                            cycle.push(names[m].to_string());
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[node] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }
}

pub fn dependency_digraph(g: &Grammar) -> DependencyDigraph {
    DependencyDigraph::new(
        g.nonterminals().iter().map(|n| n.name().to_string()),
        g.productions().iter().flat_map(|p| {
            p.body
                .iter()
                .filter(|s| s.is_nonterminal())
                .map(|s| (p.head.name().to_string(), s.name().to_string()))
        }),
    )
}

/// `(true, None)` when the dependency digraph is acyclic, otherwise `false`
/// with a cycle witness.
pub fn check_looking_forward(g: &Grammar) -> (bool, Option<Vec<String>>) {
    match dependency_digraph(g).find_cycle_from(Some(g.axiom().name())) {
        Some(cycle) => (false, Some(cycle)),
        None => (true, None),
    }
}

/// The productions of one nonterminal `A` split into `A -> α A`,
/// `A -> A β` and `A -> γ`, storing only α, β and γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoRegularPartition {
    pub owner: Symbol,
    pub left_factors: Vec<Vec<Symbol>>,
    pub right_factors: Vec<Vec<Symbol>>,
    pub constants: Vec<Vec<Symbol>>,
}

impl PseudoRegularPartition {
    pub fn len(&self) -> usize {
        self.left_factors.len() + self.right_factors.len() + self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Productions of a nonterminal that fit none of the three shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFailure {
    pub owner: Symbol,
    pub offenders: Vec<Production>,
}

pub fn partition_productions(
    g: &Grammar,
    owner: &Symbol,
) -> Result<PseudoRegularPartition, PartitionFailure> {
    let mut partition = PseudoRegularPartition {
        owner: owner.clone(),
        left_factors: Vec::new(),
        right_factors: Vec::new(),
        constants: Vec::new(),
    };
    let mut offenders = Vec::new();
    for p in g.productions_of(owner) {
        let hits: Vec<usize> = p
            .body
            .iter()
            .enumerate()
            .filter(|(_, s)| *s == owner)
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [] => partition.constants.push(p.body.clone()),
            // A bare `A` lands here too, as α = ε.
            [i] if *i == p.body.len() - 1 => partition.left_factors.push(p.body[..*i].to_vec()),
            [0] => partition.right_factors.push(p.body[1..].to_vec()),
            _ => offenders.push(p.clone()),
        }
    }
    if offenders.is_empty() {
        Ok(partition)
    } else {
        Err(PartitionFailure {
            owner: owner.clone(),
            offenders,
        })
    }
}

/// Outcome of the normal-form check. All failures are collected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnfReport {
    cycle: Option<Vec<String>>,
    partitions: BTreeMap<Symbol, Result<PseudoRegularPartition, PartitionFailure>>,
}

impl MnfReport {
    pub fn is_mnf(&self) -> bool {
        self.looking_forward() && self.partitions.values().all(Result::is_ok)
    }

    pub fn looking_forward(&self) -> bool {
        self.cycle.is_none()
    }

    pub fn cycle_witness(&self) -> Option<&[String]> {
        self.cycle.as_deref()
    }

    pub fn partitions(
        &self,
    ) -> &BTreeMap<Symbol, Result<PseudoRegularPartition, PartitionFailure>> {
        &self.partitions
    }

    pub fn partition(&self, owner: &Symbol) -> Option<&PseudoRegularPartition> {
        self.partitions.get(owner).and_then(|r| r.as_ref().ok())
    }

    /// Offending productions across all nonterminals, in nonterminal order.
    pub fn offenders(&self) -> Vec<&Production> {
        self.partitions
            .values()
            .filter_map(|r| r.as_ref().err())
            .flat_map(|f| f.offenders.iter())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Classes {
            left: Vec<String>,
            right: Vec<String>,
            #[serde(rename = "const")]
            constants: Vec<String>,
        }
        #[derive(Serialize)]
        struct Doc {
            is_mnf: bool,
            looking_forward: bool,
            cycle: Option<Vec<String>>,
            partitions: BTreeMap<String, Classes>,
            offenders: Vec<String>,
        }
        let bodies = |v: &[Vec<Symbol>]| v.iter().map(|b| render_body(b)).collect();
        let doc = Doc {
            is_mnf: self.is_mnf(),
            looking_forward: self.looking_forward(),
            cycle: self.cycle.clone(),
            partitions: self
                .partitions
                .iter()
                .filter_map(|(k, r)| r.as_ref().ok().map(|p| (k, p)))
                .map(|(k, p)| {
                    (
                        k.name().to_string(),
                        Classes {
                            left: bodies(&p.left_factors),
                            right: bodies(&p.right_factors),
                            constants: bodies(&p.constants),
                        },
                    )
                })
                .collect(),
            offenders: self.offenders().iter().map(ToString::to_string).collect(),
        };
        serde_json::to_value(doc).expect("report serializes")
    }

    /// Human-readable rendering; the first line is `MNF: yes` or `MNF: no`.
    pub fn render_text(&self) -> String {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!("MNF: {}\n", yes_no(self.is_mnf()));
        match &self.cycle {
            None => out.push_str("looking-forward: yes\n"),
            Some(c) => out.push_str(&format!("looking-forward: no (cycle {})\n", c.join(" -> "))),
        }
        let list = |v: &[Vec<Symbol>]| {
            v.iter()
                .map(|b| render_body(b))
                .collect::<Vec<_>>()
                .join(", ")
        };
        for (owner, r) in &self.partitions {
            match r {
                Ok(p) => out.push_str(&format!(
                    "partition {owner}: left [{}] right [{}] const [{}]\n",
                    list(&p.left_factors),
                    list(&p.right_factors),
                    list(&p.constants)
                )),
                Err(f) => {
                    for p in &f.offenders {
                        out.push_str(&format!("offender: {p}\n"));
                    }
                }
            }
        }
        out
    }
}

pub fn check_mnf(g: &Grammar) -> MnfReport {
    let (_, cycle) = check_looking_forward(g);
    let partitions = g
        .nonterminals()
        .iter()
        .map(|a| (a.clone(), partition_productions(g, a)))
        .collect();
    MnfReport { cycle, partitions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    const EXAMPLE_2: &str = "start: S
S -> a A S | S B d e f | C D | eps
A -> u A | A v | m
B -> x B | B y | n
C -> g C | C h | i
D -> p D | D q | r
";

    fn arcs(d: &DependencyDigraph) -> Vec<(String, String)> {
        d.arcs().iter().cloned().collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    fn names(v: &[Vec<Symbol>]) -> Vec<String> {
        v.iter().map(|b| render_body(b)).collect()
    }

    #[test]
    fn digraph_of_second_example() {
        let d = dependency_digraph(&parse_grammar(EXAMPLE_2).unwrap());
        assert_eq!(
            arcs(&d),
            [
                pair("S", "A"),
                pair("S", "B"),
                pair("S", "C"),
                pair("S", "D")
            ]
        );
        assert_eq!(d.nodes().len(), 5);
    }

    #[test]
    fn digraph_excludes_self_arcs() {
        let d = dependency_digraph(&parse_grammar("start: S\nS -> a S | eps").unwrap());
        assert!(d.arcs().is_empty());
        let d = dependency_digraph(&parse_grammar("start: S\nS -> A\nA -> b S").unwrap());
        assert_eq!(arcs(&d), [pair("A", "S"), pair("S", "A")]);
    }

    #[test]
    fn looking_forward_cases() {
        let (ok, w) = check_looking_forward(&parse_grammar("start: S\nS -> A\nA -> b S").unwrap());
        assert!(!ok);
        assert_eq!(w.unwrap(), ["S", "A", "S"]);
        let (ok, w) = check_looking_forward(&parse_grammar("start: S\nS -> eps").unwrap());
        assert!(ok && w.is_none());
    }

    #[test]
    fn partitions_of_worked_examples() {
        let g = parse_grammar("start: S\nS -> a b c S | S d e f | g h i | eps").unwrap();
        let p = partition_productions(&g, &Symbol::nonterminal("S")).unwrap();
        assert_eq!(names(&p.left_factors), ["a b c"]);
        assert_eq!(names(&p.right_factors), ["d e f"]);
        assert_eq!(names(&p.constants), ["g h i", "eps"]);

        let g = parse_grammar(EXAMPLE_2).unwrap();
        let p = partition_productions(&g, &Symbol::nonterminal("A")).unwrap();
        assert_eq!(names(&p.left_factors), ["u"]);
        assert_eq!(names(&p.right_factors), ["v"]);
        assert_eq!(names(&p.constants), ["m"]);
    }

    #[test]
    fn partition_failures() {
        let g = parse_grammar("start: S\nS -> a S b | eps").unwrap();
        let f = partition_productions(&g, g.axiom()).unwrap_err();
        assert_eq!(f.offenders.len(), 1);
        assert_eq!(f.offenders[0].to_string(), "S -> a S b");

        let g = parse_grammar("start: S\nS -> S a S | S S | a").unwrap();
        let f = partition_productions(&g, g.axiom()).unwrap_err();
        assert_eq!(f.offenders.len(), 2);
    }

    #[test]
    fn bare_self_reference_is_a_left_factor() {
        let g = crate::grammar::parse_grammar_with(
            "start: S\nS -> S | a",
            crate::grammar::ParseOptions {
                strict: true,
                ..Default::default()
            },
        )
        .unwrap()
        .grammar;
        let p = partition_productions(&g, g.axiom()).unwrap();
        assert_eq!(p.left_factors, [Vec::<Symbol>::new()]);
        assert!(p.right_factors.is_empty());
    }

    #[test]
    fn mnf_reports() {
        let r =
            check_mnf(&parse_grammar("start: S\nS -> a b c S | S d e f | g h i | eps").unwrap());
        assert!(r.is_mnf());
        assert!(r.render_text().starts_with("MNF: yes\n"));

        let r = check_mnf(&parse_grammar("start: S\nS -> a S b | eps").unwrap());
        assert!(!r.is_mnf() && r.looking_forward());
        assert_eq!(r.offenders()[0].to_string(), "S -> a S b");

        let r = check_mnf(&parse_grammar("start: S\nS -> A | b\nA -> a S").unwrap());
        assert!(!r.is_mnf());
        assert_eq!(r.cycle_witness().unwrap(), ["S", "A", "S"]);
        assert!(r.offenders().is_empty());
    }

    #[test]
    fn report_json_shape() {
        let r = check_mnf(&parse_grammar("start: S\nS -> a S | S b | c | eps").unwrap());
        let v = r.to_json();
        assert_eq!(v["is_mnf"], true);
        assert_eq!(v["cycle"], serde_json::Value::Null);
        assert_eq!(v["partitions"]["S"]["left"][0], "a");
        assert_eq!(v["partitions"]["S"]["const"][1], "eps");
        assert_eq!(v["offenders"].as_array().unwrap().len(), 0);
    }
}
