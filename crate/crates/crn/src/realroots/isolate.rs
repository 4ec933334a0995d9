//! Root isolation by bisection with Sturm counts, with multiplicities read
//! off the squarefree decomposition.
//!
//! Rational roots are found exactly up front (rational root theorem on the
//! primitive integer form, best effort for huge coefficients) and deflated
//! out; irrational roots end up in disjoint open isolating intervals refined
//! to the requested width. Endpoint-root collisions are always resolved by
//! exact deflation of the squarefree part, never by perturbing the
//! polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rat::{int, Rat};

use super::poly::UniPoly;
use super::sturm::SturmChain;
use super::{Interval, RootError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    /// Open interval containing exactly one distinct root of the polynomial.
    pub interval: Interval,
    pub multiplicity: usize,
    /// Set when the root is a known rational (it then equals the interval
    /// midpoint).
    pub exact: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    /// Pairwise disjoint, sorted by position.
    pub isolated: Vec<IsolatedRoot>,
    pub total_in_window: usize,
    pub simple_in_window: usize,
}

impl RootReport {
    pub fn empty() -> Self {
        RootReport {
            isolated: vec![],
            total_in_window: 0,
            simple_in_window: 0,
        }
    }
}

/// Isolate the distinct real roots of `p` in the open interval `iv`,
/// refining every isolating interval to width at most `target_width`.
pub fn isolate_roots(
    p: &UniPoly,
    iv: &Interval,
    target_width: &Rat,
) -> Result<RootReport, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if iv.lo >= iv.hi {
        return Err(RootError::EmptyInterval);
    }
    if p.degree() == Some(0) {
        return Ok(RootReport::empty());
    }

    let decomposition = p.squarefree_decomposition();
    let mut q = UniPoly::one();
    for (f, _) in &decomposition {
        q = q.mul(f);
    }
    // Roots sitting exactly on the window endpoints are excluded from the
    // open window; deflate them so Sturm counting is well defined.
    for e in [&iv.lo, &iv.hi] {
        while !q.is_zero() && q.eval(e).is_zero() {
            q = q
                .div_exact(&UniPoly::linear(-e.clone(), int(1)))
                .expect("endpoint root divides");
        }
    }

    let mut exact_roots: Vec<Rat> = Vec::new();
    for r in rational_roots(&q) {
        if iv.contains(&r) {
            q = q
                .div_exact(&UniPoly::linear(-r.clone(), int(1)))
                .expect("rational root divides");
            exact_roots.push(r);
        }
    }

    let mut brackets: Vec<Interval> = Vec::new();
    if q.degree().unwrap_or(0) > 0 {
        let mut chain = SturmChain::new(&q);
        let mut work: Vec<(Rat, Rat)> = vec![(iv.lo.clone(), iv.hi.clone())];
        while let Some((lo, hi)) = work.pop() {
            let seg = Interval::open(lo.clone(), hi.clone());
            let n = chain.count_roots(&seg)?;
            if n == 0 {
                continue;
            }
            if n == 1 {
                match refine(&mut q, &mut chain, lo, hi, target_width)? {
                    Refined::Interval(b) => brackets.push(b),
                    Refined::Exact(r) => exact_roots.push(r),
                }
                continue;
            }
            let mid = seg.midpoint();
            if q.eval(&mid).is_zero() {
                exact_roots.push(mid.clone());
                deflate_at(&mut q, &mut chain, &mid);
            }
            work.push((lo, mid.clone()));
            work.push((mid, hi));
        }
    }

    // Brackets for exact roots: small enough to clear every other root and
    // stay inside the window.
    let mut isolated: Vec<IsolatedRoot> = Vec::new();
    for r in &exact_roots {
        let mut gap = {
            let a = r - &iv.lo;
            let b = &iv.hi - r;
            if a < b {
                a
            } else {
                b
            }
        };
        for other in &exact_roots {
            if other != r {
                let d = (other - r).abs();
                if d < gap {
                    gap = d;
                }
            }
        }
        for b in &brackets {
            let d = if &b.lo > r { &b.lo - r } else { r - &b.hi };
            if d < gap {
                gap = d;
            }
        }
        let mut radius = gap / int(2);
        let half_target = target_width / int(2);
        if radius > half_target {
            radius = half_target;
        }
        isolated.push(IsolatedRoot {
            interval: Interval::open(r - &radius, r + &radius),
            multiplicity: multiplicity_of_exact(&decomposition, r),
            exact: Some(r.clone()),
        });
    }
    for b in brackets {
        let m = multiplicity_of_interval(&decomposition, &b)?;
        isolated.push(IsolatedRoot {
            interval: b,
            multiplicity: m,
            exact: None,
        });
    }
    isolated.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));

    let total = isolated.len();
    let simple = isolated.iter().filter(|r| r.multiplicity == 1).count();
    Ok(RootReport {
        isolated,
        total_in_window: total,
        simple_in_window: simple,
    })
}

enum Refined {
    Interval(Interval),
    Exact(Rat),
}

fn refine(
    q: &mut UniPoly,
    chain: &mut SturmChain,
    mut lo: Rat,
    mut hi: Rat,
    target: &Rat,
) -> Result<Refined, RootError> {
    while &(&hi - &lo) > target {
        let mid = (&lo + &hi) / int(2);
        if q.eval(&mid).is_zero() {
            // The unique root of this segment turned out to be rational.
            deflate_at(q, chain, &mid);
            return Ok(Refined::Exact(mid));
        }
        let left = Interval::open(lo.clone(), mid.clone());
        if chain.count_roots(&left)? == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Refined::Interval(Interval::open(lo, hi)))
}

fn deflate_at(q: &mut UniPoly, chain: &mut SturmChain, r: &Rat) {
    *q = q
        .div_exact(&UniPoly::linear(-r.clone(), int(1)))
        .expect("root divides");
    *chain = SturmChain::new(q);
}

fn multiplicity_of_exact(decomposition: &[(UniPoly, usize)], r: &Rat) -> usize {
    for (f, m) in decomposition {
        if f.eval(r).is_zero() {
            return *m;
        }
    }
    unreachable!("every root belongs to exactly one squarefree factor")
}

fn multiplicity_of_interval(
    decomposition: &[(UniPoly, usize)],
    iv: &Interval,
) -> Result<usize, RootError> {
    for (f, m) in decomposition {
        if SturmChain::new(f).count_roots(iv)? == 1 {
            return Ok(*m);
        }
    }
    unreachable!("isolating interval holds a root of exactly one factor")
}

/// All rational roots of `q`, via the rational root theorem on the primitive
/// integer form. Best effort: returns the empty list when a coefficient is
/// too large to factor quickly (roots then stay as isolating intervals,
/// which is still correct — just less informative).
fn rational_roots(q: &UniPoly) -> Vec<Rat> {
    let mut found = BTreeSet::new();
    let qi = q.primitive();
    let coeffs = qi.coeffs();
    if coeffs.len() < 2 {
        return vec![];
    }
    let low = match coeffs.iter().position(|c| !c.is_zero()) {
        Some(k) => k,
        None => return vec![],
    };
    if low > 0 {
        found.insert(int(0));
    }
    let a0 = coeffs[low].numer().abs();
    let ad = coeffs.last().unwrap().numer().abs();
    let (nums, dens) = match (divisors(&a0), divisors(&ad)) {
        (Some(a), Some(b)) => (a, b),
        _ => return found.into_iter().collect(),
    };
    if nums.len().saturating_mul(dens.len()) > 50_000 {
        return found.into_iter().collect();
    }
    for n in &nums {
        for d in &dens {
            let r = Rat::new(BigInt::from(*n), BigInt::from(*d));
            for cand in [r.clone(), -r] {
                if qi.eval(&cand).is_zero() {
                    found.insert(cand);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Divisors of `n > 0` by trial division. `None` when `n` is too large to
/// factor with divisors up to 10^6 (a leftover cofactor above 10^12 could be
/// composite; anything smaller with no divisor up to 10^6 is prime).
fn divisors(n: &BigInt) -> Option<Vec<u128>> {
    let mut m = n.to_u128()?;
    if m == 0 {
        return None;
    }
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut d: u128 = 2;
    while d <= 1_000_000 && d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        if m > 1_000_000_000_000 && d * d <= m {
            return None;
        }
        primes.push((m, 1));
    }
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in primes {
        let snapshot = divs.clone();
        let mut pe: u128 = 1;
        for _ in 0..e {
            pe = pe.checked_mul(p)?;
            for d in &snapshot {
                divs.push(d.checked_mul(pe)?);
            }
        }
        if divs.len() > 10_000 {
            return None;
        }
    }
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn from_roots(roots: &[(Rat, usize)]) -> UniPoly {
        let mut p = UniPoly::one();
        for (r, m) in roots {
            p = p.mul(&UniPoly::linear(-r.clone(), int(1)).pow(*m));
        }
        p
    }

    fn default_width() -> Rat {
        rat(1, 1 << 20)
    }

    #[test]
    fn double_and_simple_root() {
        // (z-1)^2 (z-2) on (0,3).
        let p = from_roots(&[(int(1), 2), (int(2), 1)]);
        let report = isolate_roots(&p, &Interval::open(int(0), int(3)), &default_width()).unwrap();
        assert_eq!(report.total_in_window, 2);
        assert_eq!(report.simple_in_window, 1);
        assert!(report.isolated[0].interval.contains(&int(1)));
        assert_eq!(report.isolated[0].multiplicity, 2);
        assert!(report.isolated[1].interval.contains(&int(2)));
        assert_eq!(report.isolated[1].multiplicity, 1);
    }

    #[test]
    fn remark_quartic() {
        // (3-a)^2 (a-2)(a-1) on (0,3): the double root 3 is an excluded
        // endpoint; 1 and 2 are both simple.
        let p = from_roots(&[(int(3), 2), (int(2), 1), (int(1), 1)]);
        let report = isolate_roots(&p, &Interval::open(int(0), int(3)), &default_width()).unwrap();
        assert_eq!(report.total_in_window, 2);
        assert_eq!(report.simple_in_window, 2);
        assert_eq!(report.isolated[0].exact, Some(int(1)));
        assert_eq!(report.isolated[1].exact, Some(int(2)));
    }

    #[test]
    fn quartic_with_complex_companions() {
        // (1-z)^4 - (5/27) z + (1/4) z^2: double root 2/3 and two complex
        // roots. Regression: a sign-normalizing primitive() used to corrupt
        // the Sturm chain here and send bisection into an endless split.
        let p = UniPoly::from_coeffs(vec![
            int(1),
            rat(-113, 27),
            rat(25, 4),
            int(-4),
            int(1),
        ]);
        let report = isolate_roots(&p, &Interval::open(int(0), int(1)), &default_width()).unwrap();
        assert_eq!(report.total_in_window, 1);
        assert_eq!(report.simple_in_window, 0);
        assert_eq!(report.isolated[0].exact, Some(rat(2, 3)));
        assert_eq!(report.isolated[0].multiplicity, 2);
    }

    #[test]
    fn irrational_roots_are_bracketed() {
        // z^2 - 2 on (0, 2): sqrt(2) in a narrow interval, no exact value.
        let p = UniPoly::from_coeffs(vec![int(-2), int(0), int(1)]);
        let report = isolate_roots(&p, &Interval::open(int(0), int(2)), &default_width()).unwrap();
        assert_eq!(report.total_in_window, 1);
        let root = &report.isolated[0];
        assert_eq!(root.exact, None);
        assert_eq!(root.multiplicity, 1);
        assert!(root.interval.width() <= default_width());
        let two = int(2);
        assert!(&root.interval.lo * &root.interval.lo < two);
        assert!(&root.interval.hi * &root.interval.hi > two);
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let report =
            isolate_roots(&UniPoly::one(), &Interval::open(int(0), int(1)), &default_width())
                .unwrap();
        assert_eq!(report, RootReport::empty());
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            isolate_roots(
                &UniPoly::zero(),
                &Interval::open(int(0), int(1)),
                &default_width()
            ),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn close_rational_roots_get_disjoint_brackets() {
        let p = from_roots(&[(rat(1, 3), 1), (rat(1, 3) + rat(1, 1000), 2)]);
        let report = isolate_roots(&p, &Interval::open(int(0), int(1)), &default_width()).unwrap();
        assert_eq!(report.total_in_window, 2);
        assert_eq!(report.simple_in_window, 1);
        let a = &report.isolated[0].interval;
        let b = &report.isolated[1].interval;
        assert!(a.hi <= b.lo);
        assert_eq!(report.isolated[0].exact, Some(rat(1, 3)));
        assert_eq!(report.isolated[1].exact, Some(rat(1, 3) + rat(1, 1000)));
    }
}
