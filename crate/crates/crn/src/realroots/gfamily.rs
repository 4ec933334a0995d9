//! The constrained three-term family
//!
//! ```text
//!     g(z) = (T - mu z)^{n2} - l z^{p1} (T - mu z)^{n1} + m z^{p2}
//! ```
//!
//! with `mu, T, l, m > 0`, `1 <= p1 < p2`, and `0 <= n1 < n2`. Reduced
//! steady-state polynomials of the networks treated here all land in this
//! family, so its root structure on the window `(0, T/mu)` is what decides
//! multistationarity.
//!
//! The key operation is the anchored perturbation `perturb`: moving
//! `(l, m) -> (l + lambda b^{p2}, m + lambda (T-b)^{n1} b^{p1})` keeps a
//! chosen window root `b` in place while tilting the derivative there at a
//! strictly positive rate in `lambda`, which is how multiple roots are made
//! simple without losing them.

use num_traits::{Signed, Zero};

use crate::rat::{dyadic, fmt_rat, int, is_positive, pow, Rat};

use super::isolate::isolate_roots;
use super::poly::UniPoly;
use super::{Interval, RootError};

/// How many dyadic shrinking steps `make_simple` and `split_multiplicities`
/// try before giving up. Purely a safety net; admissible parameters succeed
/// within the first few steps.
const LAMBDA_STEPS: u32 = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFamily {
    pub mu: Rat,
    pub t: Rat,
    pub l: Rat,
    pub m: Rat,
    pub p1: usize,
    pub p2: usize,
    pub n1: usize,
    pub n2: usize,
}

impl GFamily {
    pub fn new(
        mu: Rat,
        t: Rat,
        l: Rat,
        m: Rat,
        p1: usize,
        p2: usize,
        n1: usize,
        n2: usize,
    ) -> Result<Self, RootError> {
        for (name, v) in [("mu", &mu), ("T", &t), ("l", &l), ("m", &m)] {
            if !is_positive(v) {
                return Err(RootError::BadParameter(format!(
                    "{name} must be positive, got {}",
                    fmt_rat(v)
                )));
            }
        }
        if p1 < 1 || p2 <= p1 {
            return Err(RootError::BadParameter(format!(
                "need 1 <= p1 < p2, got p1={p1}, p2={p2}"
            )));
        }
        if n2 <= n1 {
            return Err(RootError::BadParameter(format!(
                "need n1 < n2, got n1={n1}, n2={n2}"
            )));
        }
        Ok(GFamily {
            mu,
            t,
            l,
            m,
            p1,
            p2,
            n1,
            n2,
        })
    }

    /// The expanded polynomial in `z`.
    pub fn expand(&self) -> UniPoly {
        let lin = UniPoly::linear(self.t.clone(), -self.mu.clone());
        let head = lin.pow(self.n2);
        let mid = UniPoly::monomial(self.l.clone(), self.p1).mul(&lin.pow(self.n1));
        let tail = UniPoly::monomial(self.m.clone(), self.p2);
        head.sub(&mid).add(&tail)
    }

    /// The open window `(0, T/mu)` on which roots correspond to positive
    /// steady states.
    pub fn window(&self) -> Interval {
        Interval::open(int(0), &self.t / &self.mu)
    }

    pub fn is_normalized(&self) -> bool {
        self.mu == int(1)
    }

    /// Equivalent family with `mu = 1`: substituting `z = w/mu` gives
    /// parameters `(1, T, l/mu^{p1}, m/mu^{p2})`. Returns the normalized
    /// family together with `mu`; each root `w` of the result corresponds to
    /// the root `w/mu` of `self`, and the window becomes `(0, T)`.
    pub fn normalize_mu(&self) -> (GFamily, Rat) {
        let mu = self.mu.clone();
        let f = GFamily {
            mu: int(1),
            t: self.t.clone(),
            l: &self.l / pow(&mu, self.p1 as i64),
            m: &self.m / pow(&mu, self.p2 as i64),
            p1: self.p1,
            p2: self.p2,
            n1: self.n1,
            n2: self.n2,
        };
        (f, mu)
    }

    /// Inverse of [`normalize_mu`]: reinstate `mu`, scaling `l` and `m` back
    /// up. Roots move from `w` to `w/mu`.
    ///
    /// [`normalize_mu`]: GFamily::normalize_mu
    pub fn restore_mu(&self, mu: &Rat) -> Result<GFamily, RootError> {
        if !self.is_normalized() {
            return Err(RootError::BadParameter(
                "restore_mu expects a mu=1 family".into(),
            ));
        }
        GFamily::new(
            mu.clone(),
            self.t.clone(),
            &self.l * pow(mu, self.p1 as i64),
            &self.m * pow(mu, self.p2 as i64),
            self.p1,
            self.p2,
            self.n1,
            self.n2,
        )
    }

    fn require_window_root(&self, b: &Rat) -> Result<(), RootError> {
        if !self.is_normalized() {
            return Err(RootError::BadParameter(
                "perturbation requires a mu=1 family; call normalize_mu first".into(),
            ));
        }
        if !self.window().contains(b) {
            return Err(RootError::BadParameter(format!(
                "{} is outside the window {}",
                fmt_rat(b),
                self.window().display()
            )));
        }
        if !self.expand().eval(b).is_zero() {
            return Err(RootError::NotARoot(fmt_rat(b)));
        }
        Ok(())
    }

    /// Direction polynomial `q` of the anchored perturbation at `b`:
    /// the perturbed family expands to `g + lambda q` with
    /// `q(z) = -b^{p2} z^{p1} (T-z)^{n1} + (T-b)^{n1} b^{p1} z^{p2}`.
    /// Note `q(b) = 0`, so `b` stays a root for every `lambda`.
    fn direction(&self, b: &Rat) -> UniPoly {
        let lin = UniPoly::linear(self.t.clone(), int(-1));
        let tb = &self.t - b;
        let first =
            UniPoly::monomial(-pow(b, self.p2 as i64), self.p1).mul(&lin.pow(self.n1));
        let second = UniPoly::monomial(pow(&tb, self.n1 as i64) * pow(b, self.p1 as i64), self.p2);
        first.add(&second)
    }

    /// Move `(l, m)` along the direction that keeps the window root `b`
    /// fixed: `l -> l + lambda b^{p2}`, `m -> m + lambda (T-b)^{n1} b^{p1}`.
    /// Fails if the new `l` or `m` is not positive.
    pub fn perturb(&self, b: &Rat, lambda: &Rat) -> Result<GFamily, RootError> {
        self.require_window_root(b)?;
        let tb = &self.t - b;
        let l = &self.l + lambda * pow(b, self.p2 as i64);
        let m = &self.m + lambda * pow(&tb, self.n1 as i64) * pow(b, self.p1 as i64);
        if !is_positive(&l) || !is_positive(&m) {
            return Err(RootError::NonpositiveParameter);
        }
        Ok(GFamily {
            mu: int(1),
            t: self.t.clone(),
            l,
            m,
            p1: self.p1,
            p2: self.p2,
            n1: self.n1,
            n2: self.n2,
        })
    }

    /// Rate of change of the perturbed derivative at `b`:
    /// `d/d lambda [g_lambda'(b)] = q'(b)`, which equals
    /// `b^{p1+p2-1} (T-b)^{n1-1} [(p2-p1)(T-b) + n1 b]` and is strictly
    /// positive on the window.
    pub fn lambda_slope(&self, b: &Rat) -> Result<Rat, RootError> {
        self.require_window_root(b)?;
        Ok(self.direction(b).derivative().eval(b))
    }

    /// Make the window root `b` simple while keeping it a root, by the
    /// anchored perturbation with the smallest admissible dyadic `lambda`.
    /// Returns the perturbed family and the `lambda` used (`0` when `b` is
    /// already simple). When `eps` is given, the coefficient vector of the
    /// expansion moves by less than `eps` in Euclidean distance.
    pub fn make_simple(
        &self,
        b: &Rat,
        eps: Option<&Rat>,
    ) -> Result<(GFamily, Rat), RootError> {
        self.require_window_root(b)?;
        let g = self.expand();
        if !g.derivative().eval(b).is_zero() {
            return Ok((self.clone(), int(0)));
        }
        for k in 0..LAMBDA_STEPS {
            for sign in [1i64, -1] {
                let lambda = dyadic(k) * int(sign);
                let cand = match self.perturb(b, &lambda) {
                    Ok(f) => f,
                    Err(RootError::NonpositiveParameter) => continue,
                    Err(e) => return Err(e),
                };
                if let Some(eps) = eps {
                    if cand.expand().dist_sq(&g) >= eps * eps {
                        continue;
                    }
                }
                debug_assert!(!cand.expand().derivative().eval(b).is_zero());
                return Ok((cand, lambda));
            }
        }
        Err(RootError::BudgetExhausted)
    }

    /// Perturb the family until at least two of its window roots are simple,
    /// preserving the total count of distinct window roots. Multiple roots at
    /// known rational positions are split by [`make_simple`] with a radius
    /// small enough to keep the other roots isolated; multiple roots at
    /// irrational positions fall back to a deterministic dyadic sweep over
    /// `(l, m)`. Every root isolation run counts against `budget`.
    ///
    /// Errors with [`RootError::TooFewRoots`] when the window holds fewer
    /// than two distinct roots: in this family a multiple window root is
    /// always the unique window root (on the window `g / (z^{p1}(T-z)^{n1})`
    /// is a strictly decreasing term plus a strictly increasing term whose
    /// slope ratio is strictly monotone, so `g` is unimodal there), so that
    /// is the outcome whenever a multiple root is actually present.
    ///
    /// [`make_simple`]: GFamily::make_simple
    pub fn split_multiplicities(&self, budget: usize) -> Result<GFamily, RootError> {
        let (mut cur, mu) = self.normalize_mu();
        let width = &cur.t * dyadic(20);
        let mut spent = 0usize;
        let isolate = |f: &GFamily, spent: &mut usize| {
            if *spent >= budget {
                return Err(RootError::BudgetExhausted);
            }
            *spent += 1;
            isolate_roots(&f.expand(), &f.window(), &width)
        };

        loop {
            let report = isolate(&cur, &mut spent)?;
            if report.simple_in_window >= 2 {
                return cur.restore_mu(&mu);
            }
            if report.total_in_window < 2 {
                return Err(RootError::TooFewRoots);
            }
            let multiple = report
                .isolated
                .iter()
                .find(|r| r.multiplicity > 1)
                .expect("some root is multiple when fewer are simple than distinct");
            match &multiple.exact {
                Some(b) => {
                    // Keep the perturbation small enough that every root
                    // stays strictly inside its present surroundings.
                    let mut gap = {
                        let w = cur.window();
                        let a = b - &w.lo;
                        let c = &w.hi - b;
                        if a < c {
                            a
                        } else {
                            c
                        }
                    };
                    for other in &report.isolated {
                        if other.interval != multiple.interval {
                            let d = if other.interval.lo > *b {
                                &other.interval.lo - b
                            } else {
                                b - &other.interval.hi
                            };
                            if d.is_positive() && d < gap {
                                gap = d;
                            }
                        }
                    }
                    let (next, _) = cur.make_simple(b, Some(&gap))?;
                    cur = next;
                }
                None => {
                    // No rational anchor: sweep (l, m) by shrinking dyadic
                    // steps until two simple window roots appear.
                    let mut done = None;
                    'sweep: for k in 1..LAMBDA_STEPS {
                        let step = dyadic(k);
                        for (dl, dm) in [
                            (1i64, 0i64),
                            (0, 1),
                            (-1, 0),
                            (0, -1),
                            (1, 1),
                            (-1, -1),
                            (1, -1),
                            (-1, 1),
                        ] {
                            let l = &cur.l + &step * int(dl);
                            let m = &cur.m + &step * int(dm);
                            if !is_positive(&l) || !is_positive(&m) {
                                continue;
                            }
                            let cand = GFamily {
                                l,
                                m,
                                ..cur.clone()
                            };
                            let r = isolate(&cand, &mut spent)?;
                            if r.simple_in_window >= 2 {
                                done = Some(cand);
                                break 'sweep;
                            }
                        }
                    }
                    match done {
                        Some(f) => cur = f,
                        None => return Err(RootError::BudgetExhausted),
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn base() -> GFamily {
        // (1-z) - 3 z + 4 z^2 = (2z - 1)^2: double root 1/2.
        GFamily::new(int(1), int(1), int(3), int(4), 1, 2, 0, 1).unwrap()
    }

    #[test]
    fn expand_matches_hand_computation() {
        assert_eq!(
            base().expand(),
            UniPoly::from_coeffs(vec![int(1), int(-4), int(4)])
        );
        // With n1 > 0: (1-z)^2 - z(1-z) + z^3.
        let f = GFamily::new(int(1), int(1), int(1), int(1), 1, 3, 1, 2).unwrap();
        assert_eq!(
            f.expand(),
            UniPoly::from_coeffs(vec![int(1), int(-3), int(2), int(1)])
        );
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        for (mu, t, l, m, p1, p2, n1, n2) in [
            (0, 1, 1, 1, 1, 2, 0, 1),
            (1, 1, 0, 1, 1, 2, 0, 1),
            (1, 1, 1, -1, 1, 2, 0, 1),
            (1, 1, 1, 1, 0, 2, 0, 1),
            (1, 1, 1, 1, 2, 2, 0, 1),
            (1, 1, 1, 1, 1, 2, 1, 1),
        ] {
            assert!(matches!(
                GFamily::new(int(mu), int(t), int(l), int(m), p1, p2, n1, n2),
                Err(RootError::BadParameter(_))
            ));
        }
    }

    #[test]
    fn window_is_t_over_mu() {
        let f = GFamily::new(int(2), int(3), int(1), int(1), 1, 2, 0, 1).unwrap();
        assert_eq!(f.window(), Interval::open(int(0), rat(3, 2)));
    }

    #[test]
    fn normalize_mu_rescales_roots() {
        // mu=2 family whose normalization is (1-w) - 4w + 4w^2, roots 1/4, 1.
        let f = GFamily::new(int(2), int(1), int(8), int(16), 1, 2, 0, 1).unwrap();
        let (n, mu) = f.normalize_mu();
        assert_eq!(mu, int(2));
        assert_eq!(n.l, int(4));
        assert_eq!(n.m, int(4));
        assert!(n.expand().eval(&rat(1, 4)).is_zero());
        // Root 1/4 of the normalization is the root 1/8 of the original.
        assert!(f.expand().eval(&rat(1, 8)).is_zero());
        assert_eq!(n.restore_mu(&mu).unwrap(), f);
    }

    #[test]
    fn perturb_keeps_the_anchored_root() {
        let f = base();
        let b = rat(1, 2);
        let g = f.perturb(&b, &int(1)).unwrap();
        assert_eq!(g.l, rat(13, 4));
        assert_eq!(g.m, rat(9, 2));
        assert!(g.expand().eval(&b).is_zero());
        assert_eq!(g.expand().derivative().eval(&b), rat(1, 4));
        // lambda = 0 is the identity.
        assert_eq!(f.perturb(&b, &int(0)).unwrap(), f);
        // Non-roots are rejected.
        assert!(matches!(
            f.perturb(&rat(1, 3), &int(1)),
            Err(RootError::NotARoot(_))
        ));
        // A perturbation that drives l negative is rejected.
        assert!(matches!(
            f.perturb(&b, &int(-13)),
            Err(RootError::NonpositiveParameter)
        ));
    }

    #[test]
    fn lambda_slope_is_positive_and_matches_closed_form() {
        let f = base();
        assert_eq!(f.lambda_slope(&rat(1, 2)).unwrap(), rat(1, 4));
        // With n1 >= 1 the closed form is
        // b^{p1+p2-1} (T-b)^{n1-1} [(p2-p1)(T-b) + n1 b].
        let f = GFamily::new(int(1), int(1), rat(5, 3), rat(1, 3), 1, 2, 2, 3).unwrap();
        // Double root of (1-z)^3 - (5/3) z (1-z)^2 + (1/3) z^2 at 1/2.
        let b = rat(1, 2);
        assert!(f.expand().eval(&b).is_zero());
        let slope = f.lambda_slope(&b).unwrap();
        let closed = pow(&b, 2) * pow(&(int(1) - &b), 1) * ((int(1) - &b) + int(2) * &b);
        assert_eq!(slope, closed);
        assert!(is_positive(&slope));
    }

    #[test]
    fn make_simple_splits_a_double_root() {
        let f = base();
        let b = rat(1, 2);
        let (g, lambda) = f.make_simple(&b, None).unwrap();
        assert!(!lambda.is_zero());
        assert!(g.expand().eval(&b).is_zero());
        assert!(!g.expand().derivative().eval(&b).is_zero());
        assert!(is_positive(&g.l) && is_positive(&g.m));
        // The derivative after perturbation is lambda times the slope.
        assert_eq!(
            g.expand().derivative().eval(&b),
            &lambda * f.lambda_slope(&b).unwrap()
        );
    }

    #[test]
    fn make_simple_respects_the_distance_bound() {
        let f = base();
        let b = rat(1, 2);
        let eps = rat(1, 1000);
        let (g, lambda) = f.make_simple(&b, Some(&eps)).unwrap();
        assert!(!lambda.is_zero());
        assert!(g.expand().dist_sq(&f.expand()) < &eps * &eps);
    }

    #[test]
    fn make_simple_is_identity_on_simple_roots() {
        // (1-z) - 4z + 4z^2 has simple roots 1/4 and 1 (the latter excluded).
        let f = GFamily::new(int(1), int(1), int(4), int(4), 1, 2, 0, 1).unwrap();
        let (g, lambda) = f.make_simple(&rat(1, 4), None).unwrap();
        assert_eq!(g, f);
        assert!(lambda.is_zero());
    }

    #[test]
    fn split_leaves_two_simple_roots_alone() {
        // 8z^2 - 6z + 1 = (2z-1)(4z-1): simple roots 1/4 and 1/2.
        let f = GFamily::new(int(1), int(1), int(5), int(8), 1, 2, 0, 1).unwrap();
        assert_eq!(f.split_multiplicities(50).unwrap(), f);
        // Same family pushed to mu = 2; the result keeps mu = 2.
        let f2 = GFamily::new(int(2), int(1), int(10), int(32), 1, 2, 0, 1).unwrap();
        assert_eq!(f2.split_multiplicities(50).unwrap(), f2);
    }

    #[test]
    fn split_reports_too_few_roots_at_a_lone_multiple_root() {
        assert_eq!(
            base().split_multiplicities(50),
            Err(RootError::TooFewRoots)
        );
    }

    #[test]
    fn multiple_window_roots_are_always_alone() {
        // Sweep small parameter shapes, anchoring a double root at b by the
        // 2x2 linear system g(b) = g'(b) = 0 in (l, m). Whenever the solution
        // is admissible, the double root is the only distinct window root.
        let width = dyadic(16);
        let mut seen = 0;
        for p1 in 1..=3usize {
            for p2 in (p1 + 1)..=4 {
                for n1 in 0..=2usize {
                    for n2 in (n1 + 1)..=4 {
                        for b in [rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4), rat(3, 4)] {
                            let t = int(1);
                            let tb = &t - &b;
                            // g(b)  = a0 - l c0 + m d0, g'(b) = a1 - l c1 + m d1.
                            let a0 = pow(&tb, n2 as i64);
                            let c0 = pow(&b, p1 as i64) * pow(&tb, n1 as i64);
                            let d0 = pow(&b, p2 as i64);
                            let a1 = -int(n2 as i64) * pow(&tb, n2 as i64 - 1);
                            let c1 = int(p1 as i64) * pow(&b, p1 as i64 - 1) * pow(&tb, n1 as i64)
                                - if n1 > 0 {
                                    int(n1 as i64) * pow(&b, p1 as i64) * pow(&tb, n1 as i64 - 1)
                                } else {
                                    int(0)
                                };
                            let d1 = int(p2 as i64) * pow(&b, p2 as i64 - 1);
                            let det = &d0 * &c1 - &c0 * &d1;
                            if det.is_zero() {
                                continue;
                            }
                            let l = (&d0 * &a1 - &a0 * &d1) / &det;
                            let m = (&c0 * &a1 - &a0 * &c1) / &det;
                            let f = match GFamily::new(int(1), t, l, m, p1, p2, n1, n2) {
                                Ok(f) => f,
                                Err(_) => continue,
                            };
                            let g = f.expand();
                            assert!(g.eval(&b).is_zero());
                            assert!(g.derivative().eval(&b).is_zero());
                            let report = isolate_roots(&g, &f.window(), &width).unwrap();
                            assert_eq!(report.total_in_window, 1, "{f:?}");
                            seen += 1;
                        }
                    }
                }
            }
        }
        assert!(seen > 20);
    }
}
