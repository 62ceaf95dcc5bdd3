//! Linear language equations and their least solutions.
//!
//! * left-linear `r = a·r + s` has least solution `a* s` (Arden),
//! * right-linear `r = r·a + s` has least solution `s a*` (Arden),
//! * bilateral `r = a·r + r·b + s` has least solution `a* s b*`.
//!
//! The bilateral rule is what turns a pseudo-regular partition into a
//! regular expression: left factors feed `a`, right factors `b` and
//! constant bodies `s`.

use std::collections::BTreeMap;

use crate::error::EquationError;
use crate::grammar::{PseudoRegularPartition, Symbol};
use crate::regex::{simplify, Regex};

pub fn arden_left_solve(a: &Regex, s: &Regex) -> Regex {
    simplify(&Regex::concat([Regex::star(a.clone()), s.clone()]))
}

pub fn arden_right_solve(a: &Regex, s: &Regex) -> Regex {
    simplify(&Regex::concat([s.clone(), Regex::star(a.clone())]))
}

pub fn marciani_solve(a: &Regex, b: &Regex, s: &Regex) -> Regex {
    simplify(&Regex::concat([
        Regex::star(a.clone()),
        s.clone(),
        Regex::star(b.clone()),
    ]))
}

/// `unknown = a·unknown + unknown·b + s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilateralEquation {
    pub unknown: Symbol,
    pub a: Regex,
    pub b: Regex,
    pub s: Regex,
}

impl BilateralEquation {
    /// The right-hand side with `r` substituted for the unknown.
    pub fn apply(&self, r: &Regex) -> Regex {
        Regex::union([
            Regex::concat([self.a.clone(), r.clone()]),
            Regex::concat([r.clone(), self.b.clone()]),
            self.s.clone(),
        ])
    }

    /// Least solution, after checking that the unknown does not occur in a
    /// coefficient.
    pub fn solve(&self) -> Result<Regex, EquationError> {
        for coefficient in [&self.a, &self.b, &self.s] {
            let mut hit = false;
            coefficient.for_each_literal(&mut |s| hit |= *s == self.unknown);
            if hit {
                return Err(EquationError::SelfReference(
                    self.unknown.name().to_string(),
                ));
            }
        }
        Ok(marciani_solve(&self.a, &self.b, &self.s))
    }
}

/// Builds the equation of a partition, replacing every other nonterminal
/// by its solution from `env`.
pub fn equation_from_partition(
    p: &PseudoRegularPartition,
    env: &BTreeMap<Symbol, Regex>,
) -> Result<BilateralEquation, EquationError> {
    let sum = |bodies: &[Vec<Symbol>]| -> Result<Regex, EquationError> {
        let mut terms = Vec::with_capacity(bodies.len());
        for body in bodies {
            let mut factors = Vec::with_capacity(body.len());
            for sym in body {
                if sym.is_terminal() {
                    factors.push(Regex::Literal(sym.clone()));
                } else {
                    let solved = env.get(sym).ok_or_else(|| {
                        EquationError::UnresolvedDependency(sym.name().to_string())
                    })?;
                    factors.push(solved.clone());
                }
            }
            terms.push(Regex::concat(factors));
        }
        Ok(Regex::union(terms))
    };
    Ok(BilateralEquation {
        unknown: p.owner.clone(),
        a: sum(&p.left_factors)?,
        b: sum(&p.right_factors)?,
        s: sum(&p.constants)?,
    })
}
