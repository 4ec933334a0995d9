//! Sturm sequences: exact counting of distinct real roots in an interval.

use std::cmp::Ordering;

use crate::rat::{fmt_rat, Rat};

use super::poly::UniPoly;
use super::{Interval, RootError};

/// The signed remainder chain of a polynomial. Each element is kept as a
/// primitive integer polynomial (sign preserved), which keeps coefficient
/// growth in check without affecting sign variations.
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut seq = Vec::new();
        let p0 = p.primitive();
        if p0.is_zero() {
            return SturmChain { seq };
        }
        seq.push(p0.clone());
        let mut prev = p0;
        let mut cur = p.derivative().primitive();
        while !cur.is_zero() {
            seq.push(cur.clone());
            let (_, r) = prev.div_rem(&cur).expect("nonzero divisor");
            prev = cur;
            cur = r.neg().primitive();
        }
        SturmChain { seq }
    }

    /// Number of sign variations of the chain evaluated at `x`.
    pub fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<Ordering> = None;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct real roots of the underlying polynomial in the open
    /// interval `(lo, hi)`. Endpoints must not be roots.
    pub fn count_roots(&self, iv: &Interval) -> Result<usize, RootError> {
        if iv.lo >= iv.hi {
            return Err(RootError::EmptyInterval);
        }
        let p = match self.seq.first() {
            Some(p) => p,
            None => return Err(RootError::ZeroPolynomial),
        };
        if p.sign_at(&iv.lo) == Ordering::Equal {
            return Err(RootError::EndpointIsRoot(fmt_rat(&iv.lo)));
        }
        if p.sign_at(&iv.hi) == Ordering::Equal {
            return Err(RootError::EndpointIsRoot(fmt_rat(&iv.hi)));
        }
        Ok(self.variations_at(&iv.lo) - self.variations_at(&iv.hi))
    }
}

/// Distinct real roots of `p` in the open interval `iv`. Errors when an
/// endpoint is a root; callers resolve that by exact deflation or by an exact
/// rational nudge of the window, never by perturbing `p`.
pub fn sturm_count(p: &UniPoly, iv: &Interval) -> Result<usize, RootError> {
    SturmChain::new(p).count_roots(iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn from_roots(roots: &[i64]) -> UniPoly {
        let mut p = UniPoly::one();
        for &r in roots {
            p = p.mul(&UniPoly::linear(int(-r), int(1)));
        }
        p
    }

    #[test]
    fn counts_roots_of_cubic() {
        // (a-1)(a-2)(a-3) on (0, 5/2) has roots 1 and 2.
        let p = from_roots(&[1, 2, 3]);
        let iv = Interval::open(int(0), rat(5, 2));
        assert_eq!(sturm_count(&p, &iv).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        let p = UniPoly::from_coeffs(vec![int(1), int(0), int(1)]); // z^2 + 1
        let iv = Interval::open(int(-10), int(10));
        assert_eq!(sturm_count(&p, &iv).unwrap(), 0);
    }

    #[test]
    fn multiple_roots_counted_once_after_squarefree() {
        // Squarefree part of (3-a)^2 (a-2)(a-1) on (0,3): roots 1 and 2
        // (3 itself is an excluded endpoint).
        let p = from_roots(&[3, 3, 2, 1]);
        let sf = p.squarefree_part();
        // Endpoint 3 is a root of sf; count on a shrunk window instead.
        let iv = Interval::open(int(0), rat(5, 2));
        assert_eq!(sturm_count(&sf, &iv).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_is_an_error() {
        let p = from_roots(&[1, 2]);
        let iv = Interval::open(int(1), int(3));
        assert!(matches!(
            sturm_count(&p, &iv),
            Err(RootError::EndpointIsRoot(_))
        ));
    }
}
