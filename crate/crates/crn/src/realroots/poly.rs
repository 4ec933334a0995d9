//! Univariate polynomials with arbitrary-precision rational coefficients.
//!
//! Coefficients are stored in ascending degree with trailing zeros stripped;
//! the zero polynomial is the empty coefficient vector. Everything here is
//! exact — this is the substrate every certificate check runs on.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{fmt_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact polynomial division (nonzero remainder)")]
    InexactDivision,
}

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rat(c))?,
                1 => write!(f, "({})z", fmt_rat(c))?,
                _ => write!(f, "({})z^{}", fmt_rat(c), k)?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `coeffs[k]` is the coefficient of `z^k`; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `b + a·z`.
    pub fn linear(b: Rat, a: Rat) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    /// The monomial `c·z^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
            .collect();
        Self::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute `z ↦ α·z + β`.
    pub fn compose_linear(&self, alpha: &Rat, beta: &Rat) -> UniPoly {
        let lin = UniPoly::linear(beta.clone(), alpha.clone());
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Quotient and remainder of `self / divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let d_deg = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Ok((Self::zero(), self.clone()));
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![Rat::zero(); q_len];
        for k in (0..q_len).rev() {
            let c = &rem[k + d_deg] / &d_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Clear denominators and divide by the integer content; the sign of the
    /// leading coefficient is preserved. Keeps remainder sequences small.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        UniPoly {
            coeffs: ints
                .into_iter()
                .map(|v| Rat::from_integer(&v / &content))
                .collect(),
        }
    }

    /// Monic scalar multiple (leading coefficient 1).
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.clone().recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// `p / gcd(p, p′)`, monic: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's squarefree decomposition: returns `(f_i, i)` with the `f_i` monic,
    /// squarefree, pairwise coprime, and `self = lc · ∏ f_i^i` (trivial factors
    /// omitted).
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let p = self.monic();
        if p.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0).expect("gcd divides");
        let mut c = dp.div_exact(&a0).expect("gcd divides");
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.monic(), i));
                }
                break;
            }
            let f = b.gcd(&d);
            if f.degree().unwrap_or(0) > 0 {
                out.push((f.clone(), i));
            }
            b = b.div_exact(&f).expect("factor divides");
            c = d.div_exact(&f).expect("factor divides");
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// An exact upper bound `M` with every real root of `self` in `(-M, M)`
    /// (Cauchy bound).
    pub fn cauchy_root_bound(&self) -> Rat {
        let lead = match self.leading() {
            Some(l) => l,
            None => return Rat::one(),
        };
        let mut max = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c / lead).abs();
            if q > max {
                max = q;
            }
        }
        max + Rat::one()
    }

    pub fn sign_at(&self, x: &Rat) -> Ordering {
        let v = self.eval(x);
        if v.is_zero() {
            Ordering::Equal
        } else if v.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Euclidean distance between coefficient vectors, squared (kept squared
    /// to stay rational).
    pub fn dist_sq(&self, other: &UniPoly) -> Rat {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut acc = Rat::zero();
        for k in 0..n {
            let d = self.coeff(k) - other.coeff(k);
            acc += &d * &d;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn from_roots(roots: &[(i64, usize)]) -> UniPoly {
        let mut p = UniPoly::one();
        for &(r, m) in roots {
            p = p.mul(&UniPoly::linear(int(-r), int(1)).pow(m));
        }
        p
    }

    #[test]
    fn derivative_of_shifted_square() {
        // (1 - z)^2 has derivative 2z - 2.
        let p = UniPoly::linear(int(1), int(-1)).pow(2);
        assert_eq!(p.derivative(), UniPoly::from_coeffs(vec![int(-2), int(2)]));
    }

    #[test]
    fn gcd_shared_root() {
        let a = from_roots(&[(1, 2), (2, 1)]);
        let b = from_roots(&[(1, 1), (3, 1)]);
        assert_eq!(a.gcd(&b), UniPoly::linear(int(-1), int(1)));
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let p = from_roots(&[(1, 2), (2, 1)]);
        let sf = p.squarefree_part();
        assert_eq!(sf, from_roots(&[(1, 1), (2, 1)]).monic());
    }

    #[test]
    fn squarefree_decomposition_yun() {
        let p = from_roots(&[(1, 1), (2, 3), (5, 2)]).scale(&rat(7, 3));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (from_roots(&[(1, 1)]), 1));
        assert_eq!(dec[1], (from_roots(&[(5, 1)]), 2));
        assert_eq!(dec[2], (from_roots(&[(2, 1)]), 3));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let p = from_roots(&[(1, 1), (2, 1)]);
        assert_eq!(
            p.div_exact(&UniPoly::linear(int(-1), int(1))).unwrap(),
            from_roots(&[(2, 1)])
        );
        assert_eq!(
            p.div_exact(&UniPoly::linear(int(-3), int(1))),
            Err(PolyError::InexactDivision)
        );
    }

    #[test]
    fn compose_linear_substitutes() {
        // p(z) = z^2, p(2z + 1) = 4z^2 + 4z + 1.
        let p = UniPoly::monomial(int(1), 2);
        assert_eq!(
            p.compose_linear(&int(2), &int(1)),
            UniPoly::from_coeffs(vec![int(1), int(4), int(4)])
        );
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = from_roots(&[(3, 1), (-7, 1)]);
        let m = p.cauchy_root_bound();
        assert!(m > int(7));
    }
}
