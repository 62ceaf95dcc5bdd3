//! Searching for an equivalent normal-form grammar by unfolding.
//!
//! Unfolding replaces one nonterminal occurrence by all of that
//! nonterminal's bodies, which preserves the language. The search explores
//! unfoldings breadth-first under explicit depth and candidate budgets,
//! optionally starting from the Chomsky normal form of the input, and
//! reports exhaustion as an ordinary outcome.

mod cnf;
mod search;

pub use cnf::{is_cnf, to_cnf};
pub use search::{
    search_mnf, unfold_once, unfold_sites, SearchConfig, SearchOutcome, SearchStats, VERIFY_BOUND,
};
