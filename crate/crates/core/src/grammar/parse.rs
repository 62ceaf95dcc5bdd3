//! Reader for the line-oriented grammar file format.
//!
//! ```text
//! # comment
//! start: S
//! S -> a b c S | S d e f | g h i | eps
//! ```
//!
//! Tokens starting with an ASCII uppercase letter are nonterminals, every
//! other token is a terminal, and `eps` alone denotes the empty body. Rule
//! lines for the same head are merged in file order.

use std::collections::BTreeSet;
use std::fmt;

use super::{Grammar, Production, Symbol, EPSILON_TOKEN};
use crate::error::GrammarError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Keep `A -> A` productions instead of dropping them.
    pub strict: bool,
    /// Accept nonterminals other than the axiom that have no productions.
    pub allow_empty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    DroppedUnitSelfLoop(Production),
    NoProductions(Symbol),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::DroppedUnitSelfLoop(p) => {
                write!(f, "dropped language-neutral production `{p}`")
            }
            Warning::NoProductions(s) => write!(
                f,
                "nonterminal {s} has no productions and generates nothing"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub grammar: Grammar,
    pub warnings: Vec<Warning>,
}

/// Parses with default options, discarding warnings.
pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    parse_grammar_with(text, ParseOptions::default()).map(|p| p.grammar)
}

pub fn parse_grammar_with(text: &str, options: ParseOptions) -> Result<Parsed, GrammarError> {
    let mut axiom: Option<Symbol> = None;
    let mut productions = Vec::new();
    let mut warnings = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let syntax = |byte: usize, message: String| GrammarError::Syntax {
            line: line_no,
            column: column_of(line, byte),
            message,
        };

        if axiom.is_none() {
            let start = line.len() - line.trim_start().len();
            let Some(rest) = line.trim_start().strip_prefix("start:") else {
                return Err(GrammarError::UndeclaredAxiom);
            };
            let name_at = start + "start:".len();
            let tokens = tokens(rest, name_at);
            match tokens.as_slice() {
                [(at, name)] => {
                    let symbol = Symbol::lexical(*name);
                    if !symbol.is_nonterminal() {
                        return Err(syntax(*at, format!("axiom `{name}` is not a nonterminal")));
                    }
                    axiom = Some(symbol);
                }
                [] => {
                    return Err(syntax(
                        name_at,
                        "expected a nonterminal after `start:`".into(),
                    ))
                }
                [_, (at, _), ..] => return Err(syntax(*at, "unexpected token after axiom".into())),
            }
            continue;
        }

        if line.trim_start().starts_with("start:") {
            return Err(syntax(
                line.find("start:").unwrap(),
                "duplicate `start:` header".into(),
            ));
        }
        let Some(arrow) = line.find("->") else {
            let toks = tokens(line, 0);
            let at = toks.get(1).or(toks.first()).map_or(0, |(at, _)| *at);
            return Err(syntax(at, "expected `->`".into()));
        };
        let head = match tokens(&line[..arrow], 0).as_slice() {
            [(at, name)] => {
                let symbol = Symbol::lexical(*name);
                if !symbol.is_nonterminal() {
                    return Err(syntax(
                        *at,
                        format!("rule head `{name}` is not a nonterminal"),
                    ));
                }
                symbol
            }
            [] => return Err(syntax(arrow, "missing rule head".into())),
            [_, (at, _), ..] => {
                return Err(syntax(*at, "rule head must be a single nonterminal".into()))
            }
        };

        let rhs_at = arrow + 2;
        let mut alt_at = rhs_at;
        for alt in line[rhs_at..].split('|') {
            let toks = tokens(alt, alt_at);
            let body = match toks.as_slice() {
                [] => return Err(syntax(alt_at, "empty alternative (write `eps`)".into())),
                [(_, tok)] if *tok == EPSILON_TOKEN => Vec::new(),
                _ => {
                    let mut body = Vec::with_capacity(toks.len());
                    for (at, tok) in toks {
                        if tok == EPSILON_TOKEN {
                            return Err(syntax(at, "`eps` must stand alone".into()));
                        }
                        if tok.contains("->") {
                            return Err(syntax(at, "unexpected `->`".into()));
                        }
                        body.push(Symbol::lexical(tok));
                    }
                    body
                }
            };
            let production = Production::new(head.clone(), body);
            if !options.strict && production.body == [head.clone()] {
                warnings.push(Warning::DroppedUnitSelfLoop(production));
            } else {
                productions.push(production);
            }
            alt_at += alt.len() + 1;
        }
    }

    let axiom = axiom.ok_or(GrammarError::UndeclaredAxiom)?;
    if !productions.iter().any(|p| p.head == axiom) {
        return Err(GrammarError::EmptyAxiom(axiom.name().to_string()));
    }
    let grammar = Grammar::new(axiom, productions)?;
    let heads: BTreeSet<&Symbol> = grammar.productions().iter().map(|p| &p.head).collect();
    for n in grammar.nonterminals() {
        if !heads.contains(n) {
            if !options.allow_empty {
                return Err(GrammarError::MissingProductions(n.name().to_string()));
            }
            warnings.push(Warning::NoProductions(n.clone()));
        }
    }
    Ok(Parsed { grammar, warnings })
}

/// Whitespace-separated tokens of `s` with their byte offsets, shifted by
/// `base`.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((base + st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((base + st, &s[st..]));
    }
    out
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte.min(line.len())].chars().count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_grammar() {
        let g = parse_grammar("start: S\nS -> a S | eps").unwrap();
        assert_eq!(g.productions().len(), 2);
        assert_eq!(g.productions()[0].to_string(), "S -> a S");
        assert!(g.productions()[1].is_epsilon());
        assert_eq!(g.axiom().name(), "S");
    }

    #[test]
    fn merges_rule_lines_in_order() {
        let g =
            parse_grammar("# header\nstart: S\n\nS -> a\nA -> b\nS -> A  # trailing\n").unwrap();
        let rendered: Vec<String> = g.productions().iter().map(ToString::to_string).collect();
        assert_eq!(rendered, ["S -> a", "A -> b", "S -> A"]);
    }

    #[test]
    fn missing_rule_is_an_error_by_default() {
        let err = parse_grammar("start: S\nS -> a Q").unwrap_err();
        assert_eq!(err, GrammarError::MissingProductions("Q".into()));
        assert_eq!(err.to_string(), "nonterminal Q has no productions");

        let parsed = parse_grammar_with(
            "start: S\nS -> a Q",
            ParseOptions {
                allow_empty: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            parsed.warnings,
            [Warning::NoProductions(Symbol::nonterminal("Q"))]
        );
    }

    #[test]
    fn axiom_errors() {
        assert_eq!(
            parse_grammar("S -> a").unwrap_err(),
            GrammarError::UndeclaredAxiom
        );
        assert_eq!(
            parse_grammar("# nothing\n").unwrap_err(),
            GrammarError::UndeclaredAxiom
        );
        assert_eq!(
            parse_grammar("start: S\nA -> a").unwrap_err(),
            GrammarError::EmptyAxiom("S".into())
        );
        assert!(matches!(
            parse_grammar("start: s\ns -> a").unwrap_err(),
            GrammarError::Syntax {
                line: 1,
                column: 8,
                ..
            }
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_grammar("start: S\nS -> a | | b").unwrap_err();
        assert!(
            matches!(
                err,
                GrammarError::Syntax {
                    line: 2,
                    column: 9,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_grammar("start: S\nS a b").unwrap_err();
        assert!(
            matches!(
                err,
                GrammarError::Syntax {
                    line: 2,
                    column: 3,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_grammar("start: S\n  x -> a").unwrap_err();
        assert!(
            matches!(
                err,
                GrammarError::Syntax {
                    line: 2,
                    column: 3,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_grammar("start: S\nS -> a eps").unwrap_err();
        assert!(
            matches!(
                err,
                GrammarError::Syntax {
                    line: 2,
                    column: 8,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_grammar("start: S\nS -> a\nstart: S").unwrap_err();
        assert!(
            matches!(err, GrammarError::Syntax { line: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn unit_self_loops() {
        let text = "start: S\nS -> S | a";
        let parsed = parse_grammar_with(text, ParseOptions::default()).unwrap();
        assert_eq!(parsed.grammar.productions().len(), 1);
        assert_eq!(parsed.warnings.len(), 1);

        let strict = parse_grammar_with(
            text,
            ParseOptions {
                strict: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(strict.grammar.productions().len(), 2);
        assert!(strict.warnings.is_empty());
    }

    #[test]
    fn first_worked_example() {
        let g = parse_grammar("start: S\nS -> a b c S | S d e f | g h i | eps").unwrap();
        assert_eq!(g.productions().len(), 4);
        assert_eq!(g.terminals().len(), 9);
    }

    #[test]
    fn display_round_trips() {
        let text = "start: S\nS -> a A S | S B | eps\nA -> u A | m\nB -> n\n";
        let g = parse_grammar(text).unwrap();
        assert_eq!(g.to_string(), text);
        assert_eq!(parse_grammar(&g.to_string()).unwrap(), g);
    }
}
