//! Exact real-root machinery: polynomial algebra, Sturm sequences, root
//! isolation with multiplicities, and the constrained three-term polynomial
//! family used by the witness constructions.

pub mod gfamily;
pub mod isolate;
pub mod poly;
pub mod sturm;

pub use gfamily::GFamily;
pub use isolate::{IsolatedRoot, RootReport};
pub use poly::{PolyError, UniPoly};
pub use sturm::SturmChain;

use thiserror::Error;

use crate::rat::{fmt_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("interval endpoint {0} is a root of the polynomial")]
    EndpointIsRoot(String),
    #[error("empty interval: lo must be strictly below hi")]
    EmptyInterval,
    #[error("cannot isolate roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid family parameter: {0}")]
    BadParameter(String),
    #[error("{0} is not a root of the expanded family")]
    NotARoot(String),
    #[error("perturbation made l or m nonpositive; shrink |lambda|")]
    NonpositiveParameter,
    #[error("fewer than two distinct roots in the window")]
    TooFewRoots,
    #[error("iteration budget exhausted")]
    BudgetExhausted,
}

/// An interval with exact rational endpoints. Openness flags are bookkeeping;
/// the isolation routines always produce open intervals whose endpoints are
/// not roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn open(lo: Rat, hi: Rat) -> Self {
        Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / crate::rat::int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let below = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        above && below
    }

    /// True when `self` lies inside `outer` (endpoint contact allowed only
    /// where `outer` is closed or `self` is open at that endpoint).
    pub fn within(&self, outer: &Interval) -> bool {
        self.lo >= outer.lo && self.hi <= outer.hi
    }

    pub fn display(&self) -> String {
        format!(
            "{}{}, {}{}",
            if self.lo_open { "(" } else { "[" },
            fmt_rat(&self.lo),
            fmt_rat(&self.hi),
            if self.hi_open { ")" } else { "]" },
        )
    }
}
