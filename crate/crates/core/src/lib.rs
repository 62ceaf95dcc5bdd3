//! Context-free grammars in Marciani normal form.
//!
//! A grammar is in this normal form when its nonterminal dependency graph
//! (ignoring self-references) is acyclic and every nonterminal `A` has only
//! productions of the shapes `A -> α A`, `A -> A β` and `A -> γ`, with `A`
//! absent from α, β and γ. Such a grammar generates a regular language:
//! each nonterminal satisfies `A = α·A + A·β + γ`, whose least solution is
//! `α* γ β*`, and solving nonterminals dependencies-first yields a regular
//! expression for the axiom.
//!
//! ```
//! use mnf_lab::{grammar::parse_grammar, regex::render_regex, synthesis::synthesize_regex};
//!
//! let g = parse_grammar("start: S\nS -> a b c S | S d e f | g h i | eps").unwrap();
//! let r = synthesize_regex(&g).unwrap();
//! assert_eq!(render_regex(&r), "(a b c)* (g h i + eps) (d e f)*");
//! ```
//!
//! Every result can be checked with the [`oracle`] module, which compares
//! languages up to an explicit length bound using automata and an Earley
//! recognizer that share no code with the synthesis path.
//!
//! The guide under `book/` walks through each module; its code blocks are
//! compiled and run as doc-tests of this crate.

pub mod equations;
pub mod error;
pub mod grammar;
pub mod oracle;
pub mod regex;
pub mod synthesis;
pub mod unfolding;

pub use error::{
    EquationError, GrammarError, OracleError, RegexSyntaxError, SynthesisError, UnfoldError,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grammars.md")]
    mod grammars {}
    #[doc = include_str!("../../../book/src/equations.md")]
    mod equations {}
    #[doc = include_str!("../../../book/src/synthesis.md")]
    mod synthesis {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/unfolding.md")]
    mod unfolding {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
