use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::Monomial;
use crate::error::{Error, Result};

/// Monomial orders. Variable precedence is the ring's declaration order.
///
/// `Block(k)` compares the first `k` variables by degrevlex and breaks ties
/// with degrevlex on the rest, so it eliminates the leading block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrder {
    Lex,
    DegLex,
    DegRevLex,
    Block(usize),
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::DegRevLex
    }
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegLex => degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)),
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Block(k) => {
                let k = k.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    match degree(a).cmp(&degree(b)) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Order comparison with an arity check.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: TermOrder) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    Ok(order.compare(a, b))
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::DegLex => write!(f, "deglex"),
            TermOrder::DegRevLex => write!(f, "degrevlex"),
            TermOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(TermOrder::Lex),
            "deglex" => Ok(TermOrder::DegLex),
            "degrevlex" | "grevlex" => Ok(TermOrder::DegRevLex),
            _ => s
                .strip_prefix("block:")
                .and_then(|k| k.parse().ok())
                .map(TermOrder::Block)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown term order `{s}`"))),
        }
    }
}
