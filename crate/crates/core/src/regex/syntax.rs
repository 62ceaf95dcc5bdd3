//! Textual regex syntax.
//!
//! Union is `+` or `|`, concatenation is juxtaposition, `*` is postfix,
//! `eps` is ε and `void` is ∅. Precedence is star over concatenation over
//! union. A token is a maximal run of characters other than whitespace and
//! `( ) + | *`, so `abc` is one literal and `a b c` three. Tokens with an
//! uppercase initial become nonterminal literals, as in grammar files.

use super::Regex;
use crate::error::RegexSyntaxError;
use crate::grammar::{Symbol, EPSILON_TOKEN};

pub const EMPTY_TOKEN: &str = "void";

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Plus,
    Star,
    Word(&'a str),
}

fn lex<'a>(text: &'a str) -> Vec<(usize, Tok<'a>)> {
    let mut out = Vec::new();
    let mut word_start: Option<usize> = None;
    let flush = |out: &mut Vec<(usize, Tok<'a>)>, start: &mut Option<usize>, end: usize| {
        if let Some(s) = start.take() {
            out.push((s, Tok::Word(&text[s..end])));
        }
    };
    for (i, c) in text.char_indices() {
        let punct = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '+' | '|' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(p) = punct {
            flush(&mut out, &mut word_start, i);
            out.push((i, p));
        } else if c.is_whitespace() {
            flush(&mut out, &mut word_start, i);
        } else if word_start.is_none() {
            word_start = Some(i);
        }
    }
    flush(&mut out, &mut word_start, text.len());
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> RegexSyntaxError {
        RegexSyntaxError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<Regex, RegexSyntaxError> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        Ok(Regex::union(alts))
    }

    fn concat(&mut self) -> Result<Regex, RegexSyntaxError> {
        let mut parts = Vec::new();
        while matches!(self.peek(), Some(Tok::Word(_) | Tok::Open)) {
            parts.push(self.postfix()?);
        }
        if parts.is_empty() {
            return Err(self.error("expected an expression"));
        }
        Ok(Regex::concat(parts))
    }

    fn postfix(&mut self) -> Result<Regex, RegexSyntaxError> {
        let mut r = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, RegexSyntaxError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = *w;
                self.pos += 1;
                Ok(match w {
                    EPSILON_TOKEN => Regex::Epsilon,
                    EMPTY_TOKEN => Regex::Empty,
                    name => Regex::Literal(Symbol::lexical(name)),
                })
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a literal or `(`")),
        }
    }
}

pub fn parse_regex(text: &str) -> Result<Regex, RegexSyntaxError> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        end: text.len(),
    };
    let r = p.union()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected token"));
    }
    Ok(r)
}

/// Renders with `+` for union and single spaces between concatenated
/// factors, parenthesizing only where precedence requires it.
pub fn render_regex(r: &Regex) -> String {
    let mut out = String::new();
    render_into(r, None, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Parent {
    Union,
    Concat,
    Star,
}

fn render_into(r: &Regex, parent: Option<Parent>, out: &mut String) {
    // Same-kind nesting is parenthesized too, so non-canonical trees still
    // print unambiguously.
    let parens = match r {
        Regex::Union(_) => parent.is_some(),
        Regex::Concat(_) => matches!(parent, Some(Parent::Concat | Parent::Star)),
        _ => false,
    };
    if parens {
        out.push('(');
    }
    match r {
        Regex::Empty => out.push_str(EMPTY_TOKEN),
        Regex::Epsilon => out.push_str(EPSILON_TOKEN),
        Regex::Literal(s) => out.push_str(s.name()),
        Regex::Union(v) => {
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                render_into(x, Some(Parent::Union), out);
            }
        }
        Regex::Concat(v) => {
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                render_into(x, Some(Parent::Concat), out);
            }
        }
        Regex::Star(x) => {
            render_into(x, Some(Parent::Star), out);
            out.push('*');
        }
    }
    if parens {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Regex {
        Regex::literal(s)
    }

    #[test]
    fn parses_first_example() {
        let r = parse_regex("(abc)*(ghi+eps)(def)*").unwrap();
        let expected = Regex::concat([
            Regex::star(lit("abc")),
            Regex::union([lit("ghi"), Regex::Epsilon]),
            Regex::star(lit("def")),
        ]);
        assert_eq!(r, expected);
        assert_eq!(render_regex(&r), "abc* (ghi + eps) def*");
        assert_eq!(parse_regex(&render_regex(&r)).unwrap(), r);
    }

    #[test]
    fn void_and_eps() {
        assert_eq!(parse_regex("void").unwrap(), Regex::Empty);
        assert_eq!(render_regex(&Regex::Empty), "void");
        assert_eq!(parse_regex(" eps ").unwrap(), Regex::Epsilon);
    }

    #[test]
    fn spaced_concatenation() {
        let r = parse_regex("u* m v*").unwrap();
        assert_eq!(
            r,
            Regex::Concat(vec![Regex::star(lit("u")), lit("m"), Regex::star(lit("v"))])
        );
        assert_eq!(render_regex(&r), "u* m v*");
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_regex("a b* | c").unwrap(),
            Regex::union([Regex::concat([lit("a"), Regex::star(lit("b"))]), lit("c")])
        );
        assert_eq!(
            render_regex(&parse_regex("(a b c)* (x + y)").unwrap()),
            "(a b c)* (x + y)"
        );
        assert_eq!(render_regex(&parse_regex("a**").unwrap()), "a**");
    }

    #[test]
    fn uppercase_tokens_are_nonterminals() {
        let r = parse_regex("a A").unwrap();
        assert!(r.has_nonterminal());
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_regex("").unwrap_err().position, 0);
        assert_eq!(parse_regex("(a").unwrap_err().position, 2);
        assert_eq!(parse_regex("a +").unwrap_err().position, 3);
        assert_eq!(parse_regex("a ) b").unwrap_err().position, 2);
        assert_eq!(parse_regex("* a").unwrap_err().position, 0);
        assert!(parse_regex("()").is_err());
    }

    #[test]
    fn renders_non_canonical_nesting_unambiguously() {
        let r = Regex::Concat(vec![Regex::Concat(vec![lit("a"), lit("b")]), lit("c")]);
        assert_eq!(render_regex(&r), "(a b) c");
        let u = Regex::Union(vec![Regex::Union(vec![lit("a"), lit("b")]), lit("c")]);
        assert_eq!(render_regex(&u), "(a + b) + c");
    }
}
