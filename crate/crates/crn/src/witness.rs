//! Construction and independent verification of witness certificates.
//!
//! A certificate pins down positive rational rate constants and conservation
//! totals under which a rank-1 network provably has at least two positive
//! nondegenerate steady states in one compatibility class. Conservation laws
//! reduce the steady-state condition to a single univariate polynomial in the
//! reference-species concentration; the certificate records that polynomial,
//! the positivity window cut out by the conservation substitutions, and at
//! least two isolated simple roots inside the window. [`verify_certificate`]
//! replays every claim from scratch with exact rational arithmetic and shares
//! no intermediate state with the search.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{detect_shape, rev_plus_irrev_parts, ShapeTag};
use crate::netparse::{format_network, parse_network, structurally_equal, ReactionNetwork, SpeciesId};
use crate::rat::{dyadic, fmt_rat, int, is_positive, parse_rat, pow, rat, Rat};
use crate::realroots::gfamily::GFamily;
use crate::realroots::isolate::{isolate_roots, IsolatedRoot};
use crate::realroots::sturm::sturm_count;
use crate::realroots::{Interval, RootError, UniPoly};
use crate::structure::{embedded_network, find_alternating_subnetwork, is_t_alternating, stoich_data, subnetwork};

/// Default attempt budget for [`witness_search`].
pub const DEFAULT_BUDGET: usize = 600;

/// Certificate file format version.
pub const CERT_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("network shape does not fit this construction: {0}")]
    ShapeMismatch(String),
    #[error("network does not have a rank-1 stoichiometric matrix")]
    NotRankOne,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("conservation totals make the positivity window empty")]
    EmptyWindow,
    #[error("only {found} simple roots in the window; a witness needs two")]
    TooFewSimpleRoots { found: usize },
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("root isolation failed: {0}")]
    Root(#[from] RootError),
}

/// Open interval of reference-species values on which every substituted
/// coordinate is positive. `hi == None` means unbounded above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: Rat,
    pub hi: Option<Rat>,
}

impl Window {
    pub fn contains(&self, x: &Rat) -> bool {
        *x > self.lo && self.hi.as_ref().map_or(true, |h| x < h)
    }

    pub fn display(&self) -> String {
        match &self.hi {
            Some(h) => format!("({}, {})", fmt_rat(&self.lo), fmt_rat(h)),
            None => format!("({}, inf)", fmt_rat(&self.lo)),
        }
    }
}

/// How every concentration was written as a linear function of the reference
/// species: `x_i = slopes[i] * a + totals[i]`, with `slopes[ref] = 1` and
/// `totals[ref] = 0`. `monomial_exponents[i]` is the power of `x_i` divided
/// out of the substituted rate function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionRecord {
    pub ref_species: SpeciesId,
    pub slopes: Vec<Rat>,
    pub totals: Vec<Rat>,
    pub monomial_exponents: Vec<u64>,
}

impl SubstitutionRecord {
    /// The divided-out factor `prod_i (slopes[i] a + totals[i])^{e_i}` as a
    /// polynomial in the reference concentration.
    pub fn monomial_factor(&self) -> UniPoly {
        let mut m = UniPoly::one();
        for i in 0..self.slopes.len() {
            let lin = UniPoly::linear(self.totals[i].clone(), self.slopes[i].clone());
            m = m.mul(&lin.pow(self.monomial_exponents[i] as usize));
        }
        m
    }
}

/// One isolated simple positive root of the reduced polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootWitness {
    pub lo: Rat,
    pub hi: Rat,
    /// Set when the root is a known rational inside `(lo, hi)`.
    pub exact: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    /// Text form of the network the certificate is about.
    pub network_text: String,
    /// Species names in the order every species-indexed vector below uses.
    /// Recorded because the text form alone fixes species only up to the
    /// order of first appearance.
    pub species: Vec<String>,
    /// Positive rate constants, one per reaction in stored order.
    pub kappa: Vec<Rat>,
    /// Conservation totals, one per species (`totals[ref] = 0`).
    pub totals: Vec<Rat>,
    pub substitution: SubstitutionRecord,
    /// The substituted rate function with the shared coordinate monomial
    /// divided out.
    pub poly: UniPoly,
    pub window: Window,
    /// At least two disjoint intervals, each isolating one simple root
    /// strictly inside the window.
    pub roots: Vec<RootWitness>,
}

impl WitnessCertificate {
    pub fn summary(&self) -> String {
        format!(
            "kappa = [{}], totals = [{}], {} simple positive steady states in window {}",
            self.kappa.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
            self.totals.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
            self.roots.len(),
            self.window.display(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

/// The reference species used by default: the first species the reactions
/// move that carries a 2-alternating 1-species embedded network, else the
/// first species the reactions move at all.
pub fn choose_ref_species(net: &ReactionNetwork) -> Result<SpeciesId, WitnessError> {
    if stoich_data(net).rank != 1 {
        return Err(WitnessError::NotRankOne);
    }
    let v = net.reaction_vector(0);
    let moving: Vec<SpeciesId> = (0..net.num_species()).filter(|&i| v[i] != 0).collect();
    for &i in &moving {
        let drop: BTreeSet<SpeciesId> =
            (0..net.num_species()).filter(|&j| j != i).collect();
        let e = embedded_network(net, &BTreeSet::new(), &drop);
        if e.num_species() == 1 && is_t_alternating(&e, 2).unwrap_or(false) {
            return Ok(i);
        }
    }
    moving
        .first()
        .copied()
        .ok_or_else(|| WitnessError::BadParameters("no species changes".into()))
}

fn slopes_for(net: &ReactionNetwork, ref_species: SpeciesId) -> Result<Vec<Rat>, WitnessError> {
    if stoich_data(net).rank != 1 {
        return Err(WitnessError::NotRankOne);
    }
    let v = net.reaction_vector(0);
    if v[ref_species] == 0 {
        return Err(WitnessError::BadParameters(
            "reference species is not changed by the reactions".into(),
        ));
    }
    Ok((0..net.num_species())
        .map(|i| rat(v[i], v[ref_species]))
        .collect())
}

/// The window `(lo, hi)` on which every `slopes[i] a + totals[i]` is
/// positive. `None` when it is empty.
fn window_for(slopes: &[Rat], totals: &[Rat], ref_species: SpeciesId) -> Option<Window> {
    let zero = int(0);
    let mut lo = zero.clone();
    let mut hi: Option<Rat> = None;
    for i in 0..slopes.len() {
        if i == ref_species {
            continue;
        }
        let c = &slopes[i];
        let t = &totals[i];
        if c > &zero {
            let cut = -(t / c);
            if cut > lo {
                lo = cut;
            }
        } else if c < &zero {
            if !is_positive(t) {
                return None;
            }
            let cut = -(t / c);
            if hi.as_ref().map_or(true, |h| cut < *h) {
                hi = Some(cut);
            }
        } else if !is_positive(t) {
            return None;
        }
    }
    if let Some(h) = &hi {
        if lo >= *h {
            return None;
        }
    }
    Some(Window { lo, hi })
}

/// Per-reaction divided basis polynomials `B_k` with
/// `f / monomial = sum_k kappa_k B_k`, together with the window and the
/// substitution record (totals recorded, exponents computed).
fn divided_basis(
    net: &ReactionNetwork,
    totals: &[Rat],
    ref_species: SpeciesId,
) -> Result<(Vec<UniPoly>, Window, SubstitutionRecord), WitnessError> {
    let s = net.num_species();
    let r = net.num_reactions();
    if totals.len() != s {
        return Err(WitnessError::BadParameters(format!(
            "expected {s} totals, got {}",
            totals.len()
        )));
    }
    if !totals[ref_species].is_zero() {
        return Err(WitnessError::BadParameters(
            "the reference species total must be 0".into(),
        ));
    }
    let slopes = slopes_for(net, ref_species)?;
    let window = window_for(&slopes, totals, ref_species).ok_or(WitnessError::EmptyWindow)?;
    let exponents: Vec<u64> = (0..s)
        .map(|i| {
            (0..r)
                .map(|k| net.reactions[k].reactant.coeff(i))
                .min()
                .unwrap_or(0)
        })
        .collect();
    let lins: Vec<UniPoly> = (0..s)
        .map(|i| UniPoly::linear(totals[i].clone(), slopes[i].clone()))
        .collect();
    let mut basis = Vec::with_capacity(r);
    for k in 0..r {
        let d = net.reaction_vector(k)[ref_species];
        let mut b = UniPoly::constant(int(d));
        for i in 0..s {
            let e = net.reactions[k].reactant.coeff(i) - exponents[i];
            b = b.mul(&lins[i].pow(e as usize));
        }
        basis.push(b);
    }
    let record = SubstitutionRecord {
        ref_species,
        slopes,
        totals: totals.to_vec(),
        monomial_exponents: exponents,
    };
    Ok((basis, window, record))
}

/// Substitute the conservation relations into the reference-species rate
/// function and divide out the shared coordinate monomial. Returns the
/// reduced polynomial, the positivity window, and the substitution record.
pub fn substituted_polynomial(
    net: &ReactionNetwork,
    kappa: &[Rat],
    totals: &[Rat],
) -> Result<(UniPoly, Window, SubstitutionRecord), WitnessError> {
    let r = choose_ref_species(net)?;
    substituted_polynomial_with_ref(net, kappa, totals, r)
}

/// As [`substituted_polynomial`] with an explicit reference species; used by
/// verification to replay a certificate's recorded choice.
pub fn substituted_polynomial_with_ref(
    net: &ReactionNetwork,
    kappa: &[Rat],
    totals: &[Rat],
    ref_species: SpeciesId,
) -> Result<(UniPoly, Window, SubstitutionRecord), WitnessError> {
    if kappa.len() != net.num_reactions() {
        return Err(WitnessError::BadParameters(format!(
            "expected {} rate constants, got {}",
            net.num_reactions(),
            kappa.len()
        )));
    }
    if let Some(k) = kappa.iter().find(|k| !is_positive(k)) {
        return Err(WitnessError::BadParameters(format!(
            "rate constants must be positive, got {}",
            fmt_rat(k)
        )));
    }
    let (basis, window, record) = divided_basis(net, totals, ref_species)?;
    let mut f = UniPoly::zero();
    for (k, b) in kappa.iter().zip(&basis) {
        f = f.add(&b.scale(k));
    }
    if f.is_zero() {
        return Err(WitnessError::BadParameters(
            "the substituted rate function vanishes identically".into(),
        ));
    }
    Ok((f, window, record))
}

// ---------------------------------------------------------------------------
// Certificate construction
// ---------------------------------------------------------------------------

/// Shrink an isolating interval so it sits strictly inside the window (the
/// undivided rate function vanishes at the window's ends, so endpoint contact
/// would break the nondegeneracy checks).
fn tighten_interval(
    sq: &UniPoly,
    root: &IsolatedRoot,
    window: &Window,
) -> Option<RootWitness> {
    if let Some(x) = &root.exact {
        let mut delta = {
            let a = x - &root.interval.lo;
            let b = &root.interval.hi - x;
            if a < b { a } else { b }
        };
        let g = x - &window.lo;
        if g < delta {
            delta = g;
        }
        if let Some(h) = &window.hi {
            let g = h - x;
            if g < delta {
                delta = g;
            }
        }
        let delta = delta / int(2);
        if !is_positive(&delta) {
            return None;
        }
        return Some(RootWitness {
            lo: x - &delta,
            hi: x + &delta,
            exact: Some(x.clone()),
        });
    }
    let mut lo = root.interval.lo.clone();
    let mut hi = root.interval.hi.clone();
    for _ in 0..512 {
        let lo_ok = lo > window.lo;
        let hi_ok = window.hi.as_ref().map_or(true, |h| hi < *h);
        if lo_ok && hi_ok {
            return Some(RootWitness { lo, hi, exact: None });
        }
        let m = (&lo + &hi) / int(2);
        match sturm_count(sq, &Interval::open(m.clone(), hi.clone())) {
            Ok(1) => lo = m,
            Ok(_) => hi = m,
            Err(_) => return None,
        }
    }
    None
}

/// Build and check a certificate for explicit parameters: substitute, isolate
/// the window roots, and require at least two simple ones.
pub fn build_certificate(
    net: &ReactionNetwork,
    kappa: &[Rat],
    totals: &[Rat],
    ref_species: SpeciesId,
) -> Result<WitnessCertificate, WitnessError> {
    let (poly, window, record) = substituted_polynomial_with_ref(net, kappa, totals, ref_species)?;
    let hi_bound = match &window.hi {
        Some(h) => h.clone(),
        None => {
            let b = poly.cauchy_root_bound() + int(1);
            if b > window.lo {
                b
            } else {
                &window.lo + int(1)
            }
        }
    };
    let iv = Interval::open(window.lo.clone(), hi_bound);
    let report = isolate_roots(&poly, &iv, &dyadic(20))?;
    let simple: Vec<&IsolatedRoot> = report
        .isolated
        .iter()
        .filter(|r| r.multiplicity == 1)
        .collect();
    if simple.len() < 2 {
        return Err(WitnessError::TooFewSimpleRoots { found: simple.len() });
    }
    let sq = poly.squarefree_part();
    let mut roots = Vec::new();
    for r in simple {
        match tighten_interval(&sq, r, &window) {
            Some(w) => roots.push(w),
            None => {
                return Err(WitnessError::BadParameters(
                    "could not separate a root from the window boundary".into(),
                ))
            }
        }
    }
    let network_text = format_network(net)
        .map_err(|e| WitnessError::BadParameters(format!("unprintable network: {e}")))?;
    Ok(WitnessCertificate {
        network_text,
        species: net.species.clone(),
        kappa: kappa.to_vec(),
        totals: totals.to_vec(),
        substitution: record,
        poly,
        window,
        roots,
    })
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

fn eval_linear(c: &Rat, t: &Rat, x: &Rat) -> Rat {
    c * x + t
}

/// The permutation sending index `i` of `from` to the position of the same
/// name in `to`, provided the two lists name the same species.
fn species_permutation(from: &[String], to: &[String]) -> Option<Vec<usize>> {
    if from.len() != to.len() {
        return None;
    }
    let map: Vec<usize> = from
        .iter()
        .map(|n| to.iter().position(|m| m == n))
        .collect::<Option<Vec<_>>>()?;
    let mut sorted = map.clone();
    sorted.sort_unstable();
    (sorted == (0..to.len()).collect::<Vec<_>>()).then_some(map)
}

/// Rewrite `net` so its species list becomes exactly `order`, matching by
/// name; `None` when the name sets differ.
fn align_species(net: &ReactionNetwork, order: &[String]) -> Option<ReactionNetwork> {
    let map = species_permutation(&net.species, order)?;
    let relabel = |c: &crate::netparse::Complex| c.relabeled(&|i| Some(map[i]));
    Some(ReactionNetwork {
        species: order.to_vec(),
        reactions: net
            .reactions
            .iter()
            .map(|r| crate::netparse::Reaction {
                reactant: relabel(&r.reactant),
                product: relabel(&r.product),
            })
            .collect(),
    })
}

/// Re-express a certificate's species-indexed data in the species order
/// `order`, matching by name; `None` when the name sets differ.
fn realign_certificate(cert: &WitnessCertificate, order: &[String]) -> Option<WitnessCertificate> {
    let map = species_permutation(&cert.species, order)?;
    let s = order.len();
    let permute_rat = |v: &[Rat]| -> Option<Vec<Rat>> {
        if v.len() != s {
            return None;
        }
        let mut w = vec![int(0); s];
        for i in 0..s {
            w[map[i]] = v[i].clone();
        }
        Some(w)
    };
    let permute_exp = |v: &[u64]| -> Option<Vec<u64>> {
        if v.len() != s {
            return None;
        }
        let mut w = vec![0u64; s];
        for i in 0..s {
            w[map[i]] = v[i];
        }
        Some(w)
    };
    if cert.substitution.ref_species >= s {
        return None;
    }
    Some(WitnessCertificate {
        network_text: cert.network_text.clone(),
        species: order.to_vec(),
        kappa: cert.kappa.clone(),
        totals: permute_rat(&cert.totals)?,
        substitution: SubstitutionRecord {
            ref_species: map[cert.substitution.ref_species],
            slopes: permute_rat(&cert.substitution.slopes)?,
            totals: permute_rat(&cert.substitution.totals)?,
            monomial_exponents: permute_exp(&cert.substitution.monomial_exponents)?,
        },
        poly: cert.poly.clone(),
        window: cert.window.clone(),
        roots: cert.roots.clone(),
    })
}

/// Replay every claim of a certificate against the network with independent
/// exact arithmetic. All checks are reported; `pass` requires all of them.
pub fn verify_certificate(net: &ReactionNetwork, cert: &WitnessCertificate) -> VerificationReport {
    // Species-indexed data may be recorded in another order of the same
    // species (parsing fixes species order by first appearance only);
    // re-express it in the given network's order before checking.
    if cert.species != net.species {
        return match realign_certificate(cert, &net.species) {
            Some(aligned) => verify_certificate(net, &aligned),
            None => VerificationReport {
                pass: false,
                checks: vec![Check {
                    name: "parameter-shape",
                    pass: false,
                    detail: "certificate species are not the network's species".into(),
                }],
            },
        };
    }
    let mut checks: Vec<Check> = Vec::new();
    let push = |checks: &mut Vec<Check>, name: &'static str, pass: bool, detail: String| {
        checks.push(Check { name, pass, detail });
        pass
    };

    // 1. The certificate is about this network.
    let net_ok = match parse_network(&cert.network_text) {
        Ok(n) => align_species(&n, &net.species)
            .is_some_and(|n| structurally_equal(&n, net)),
        Err(_) => false,
    };
    push(
        &mut checks,
        "network-match",
        net_ok,
        if net_ok {
            "recorded network text parses to the given network".into()
        } else {
            "recorded network text does not match the given network".into()
        },
    );

    // 2. Parameter shape.
    let s = net.num_species();
    let r = net.num_reactions();
    let shape_ok = cert.kappa.len() == r
        && cert.kappa.iter().all(is_positive)
        && cert.totals.len() == s
        && cert.substitution.ref_species < s
        && cert.substitution.slopes.len() == s
        && cert.substitution.totals == cert.totals
        && cert.substitution.monomial_exponents.len() == s
        && cert.totals[cert.substitution.ref_species].is_zero();
    push(
        &mut checks,
        "parameter-shape",
        shape_ok,
        "rate constants positive, totals and substitution record well-formed".into(),
    );
    if !(net_ok && shape_ok) {
        return VerificationReport { pass: false, checks };
    }
    let ref_species = cert.substitution.ref_species;

    // 3. Replaying the substitution reproduces the recorded data.
    let replay = substituted_polynomial_with_ref(net, &cert.kappa, &cert.totals, ref_species);
    let replay_ok = match &replay {
        Ok((poly, window, record)) => {
            *poly == cert.poly && *window == cert.window && *record == cert.substitution
        }
        Err(_) => false,
    };
    push(
        &mut checks,
        "substitution-replay",
        replay_ok,
        "recomputed polynomial, window, and substitution record match".into(),
    );

    // 4. Polynomial identity against a direct expansion of the undivided rate
    //    function (no shared code with the divided computation).
    let slopes = match slopes_for(net, ref_species) {
        Ok(s) => s,
        Err(_) => {
            push(&mut checks, "polynomial-identity", false, "network is not rank 1".into());
            return VerificationReport { pass: false, checks };
        }
    };
    let lins: Vec<UniPoly> = (0..s)
        .map(|i| UniPoly::linear(cert.totals[i].clone(), slopes[i].clone()))
        .collect();
    let mut undivided = UniPoly::zero();
    for k in 0..r {
        let mut term = UniPoly::constant(&cert.kappa[k] * int(net.reaction_vector(k)[ref_species]));
        for i in 0..s {
            term = term.mul(&lins[i].pow(net.reactions[k].reactant.coeff(i) as usize));
        }
        undivided = undivided.add(&term);
    }
    let identity_ok = slopes == cert.substitution.slopes
        && undivided == cert.poly.mul(&cert.substitution.monomial_factor());
    push(
        &mut checks,
        "polynomial-identity",
        identity_ok,
        "divided polynomial times the recorded monomial equals the rate function".into(),
    );

    // 5. Root intervals: at least two, sorted, disjoint, strictly inside the
    //    window, exact roots checked by evaluation.
    let mut roots_ok = cert.roots.len() >= 2;
    let mut detail = String::new();
    let mut prev_hi: Option<&Rat> = None;
    for w in &cert.roots {
        if w.lo >= w.hi || w.lo <= cert.window.lo {
            roots_ok = false;
            detail = "interval empty or touching the window boundary".into();
        }
        if let Some(h) = &cert.window.hi {
            if &w.hi >= h {
                roots_ok = false;
                detail = "interval reaches the upper window boundary".into();
            }
        }
        if let Some(p) = prev_hi {
            if &w.lo < p {
                roots_ok = false;
                detail = "intervals overlap or are out of order".into();
            }
        }
        prev_hi = Some(&w.hi);
        if let Some(x) = &w.exact {
            if !(x > &w.lo && x < &w.hi && cert.poly.eval(x).is_zero()) {
                roots_ok = false;
                detail = format!("{} is not a root inside its interval", fmt_rat(x));
            }
        }
    }
    push(
        &mut checks,
        "roots-wellformed",
        roots_ok,
        if roots_ok {
            format!("{} disjoint intervals strictly inside the window", cert.roots.len())
        } else {
            detail
        },
    );
    if !roots_ok {
        return VerificationReport { pass: false, checks };
    }

    // 6. Each interval holds exactly one root, and it is simple: Sturm count
    //    one on the squarefree part and no root of gcd(f, f') inside.
    let sq = cert.poly.squarefree_part();
    let mult = cert.poly.gcd(&cert.poly.derivative());
    let mut simple_ok = true;
    for w in &cert.roots {
        let iv = Interval::open(w.lo.clone(), w.hi.clone());
        match sturm_count(&sq, &iv) {
            Ok(1) => {}
            _ => {
                simple_ok = false;
            }
        }
        if mult.degree().unwrap_or(0) > 0 {
            match sturm_count(&mult, &iv) {
                Ok(0) => {}
                _ => {
                    simple_ok = false;
                }
            }
        }
    }
    push(
        &mut checks,
        "roots-simple",
        simple_ok,
        "each interval isolates exactly one simple root of the divided polynomial".into(),
    );

    // 7. Every substituted coordinate is positive on every root interval (a
    //    linear form positive at both endpoints is positive between them).
    let mut pos_ok = true;
    for w in &cert.roots {
        for i in 0..s {
            if !is_positive(&eval_linear(&slopes[i], &cert.totals[i], &w.lo))
                || !is_positive(&eval_linear(&slopes[i], &cert.totals[i], &w.hi))
            {
                pos_ok = false;
            }
        }
    }
    push(
        &mut checks,
        "coordinate-positivity",
        pos_ok,
        "all species concentrations are positive on every root interval".into(),
    );

    // 8. Nondegeneracy on the undivided rate function: it has no multiple
    //    root in any certified interval, so each steady state is a simple
    //    zero of the full substituted rate function.
    let gu = undivided.gcd(&undivided.derivative());
    let mut nondeg_ok = true;
    if gu.degree().unwrap_or(0) > 0 {
        for w in &cert.roots {
            let iv = Interval::open(w.lo.clone(), w.hi.clone());
            match sturm_count(&gu, &iv) {
                Ok(0) => {}
                _ => {
                    nondeg_ok = false;
                }
            }
        }
    }
    push(
        &mut checks,
        "nondegeneracy-undivided",
        nondeg_ok,
        "the full substituted rate function has only simple zeros in the intervals".into(),
    );

    let pass = checks.iter().all(|c| c.pass);
    VerificationReport { pass, checks }
}

// ---------------------------------------------------------------------------
// Closed-form constructions
// ---------------------------------------------------------------------------

/// Positive-slope construction: with all totals zero every coordinate is a
/// positive multiple of the reference one, the substituted polynomial is a
/// trinomial with an alternating sign pattern, and rate constants giving the
/// prescribed roots 1 and 2 are the solution of a 2x2 linear system.
pub fn witness_positive_slope(net: &ReactionNetwork) -> Result<WitnessCertificate, WitnessError> {
    let ref_species = choose_ref_species(net)?;
    let slopes = slopes_for(net, ref_species)?;
    if net.num_reactions() != 3 {
        return Err(WitnessError::ShapeMismatch("needs exactly three reactions".into()));
    }
    for (i, c) in slopes.iter().enumerate() {
        if i != ref_species && !is_positive(c) {
            return Err(WitnessError::ShapeMismatch(
                "a species does not track the reference species with positive slope".into(),
            ));
        }
    }
    // With totals zero, reaction k contributes C_k a^{E_k}.
    let s = net.num_species();
    let mut coeffs: Vec<(u64, Rat, usize)> = Vec::new(); // (exponent, coefficient, reaction)
    for k in 0..3 {
        let d = net.reaction_vector(k)[ref_species];
        let mut c = int(d);
        let mut e = 0u64;
        for i in 0..s {
            let y = net.reactions[k].reactant.coeff(i);
            c *= pow(&slopes[i], y as i64);
            e += y;
        }
        coeffs.push((e, c, k));
    }
    coeffs.sort_by_key(|t| t.0);
    if coeffs[0].0 == coeffs[1].0 || coeffs[1].0 == coeffs[2].0 {
        return Err(WitnessError::ShapeMismatch(
            "reactant exponents collide after the substitution".into(),
        ));
    }
    let signs: Vec<bool> = coeffs.iter().map(|t| is_positive(&t.1)).collect();
    if signs[0] == signs[1] || signs[1] == signs[2] {
        return Err(WitnessError::ShapeMismatch(
            "the trinomial sign pattern does not alternate".into(),
        ));
    }
    // Fix the lowest-exponent rate constant so that term's coefficient is
    // +/-1, then solve f(1) = f(2) = 0 for the other two.
    let mut kappa = vec![int(0); 3];
    let sigma = if signs[0] { int(1) } else { int(-1) };
    kappa[coeffs[0].2] = (&sigma / &coeffs[0].1).abs();
    let two = int(2);
    let c1 = &coeffs[1].1;
    let c2 = &coeffs[2].1;
    let (e0, e1, e2) = (coeffs[0].0 as i64, coeffs[1].0 as i64, coeffs[2].0 as i64);
    // u = kappa_1 * C_1, w = kappa_2 * C_2:
    //   u + w = -sigma, u 2^{e1-e0} + w 2^{e2-e0} = -sigma  (after dividing by the fixed term).
    let a11 = int(1);
    let a12 = int(1);
    let a21 = pow(&two, e1 - e0);
    let a22 = pow(&two, e2 - e0);
    let b1 = -sigma.clone();
    let b2 = -sigma.clone();
    let det = &a11 * &a22 - &a12 * &a21;
    if det.is_zero() {
        return Err(WitnessError::ShapeMismatch("singular prescribed-root system".into()));
    }
    let u = (&b1 * &a22 - &a12 * &b2) / &det;
    let w = (&a11 * &b2 - &b1 * &a21) / &det;
    kappa[coeffs[1].2] = &u / c1;
    kappa[coeffs[2].2] = &w / c2;
    if !kappa.iter().all(is_positive) {
        return Err(WitnessError::ShapeMismatch(
            "prescribed roots force a nonpositive rate constant".into(),
        ));
    }
    let totals = vec![int(0); s];
    build_certificate(net, &kappa, &totals, ref_species)
}

struct OrientedParts {
    fwd: usize,
    back: usize,
    irrev: usize,
    ref_species: SpeciesId,
    other: SpeciesId,
    /// Reactant of the pair written so that `y.0 < yp.0` in (ref, other)
    /// coordinates.
    y: (u64, u64),
    yp: (u64, u64),
    yt: (u64, u64),
}

/// Orient a 2-species reversible-pair-plus-irreversible network around its
/// 2-alternating reference species.
fn oriented_parts(net: &ReactionNetwork) -> Result<OrientedParts, WitnessError> {
    if net.num_species() != 2 {
        return Err(WitnessError::ShapeMismatch("needs exactly two species".into()));
    }
    let (mut fwd, mut back, irrev) = rev_plus_irrev_parts(net)
        .ok_or_else(|| WitnessError::ShapeMismatch("needs a reversible pair plus one irreversible reaction".into()))?;
    let ref_species = choose_ref_species(net)?;
    // The constructions below need the alternating embedded network.
    {
        let drop: BTreeSet<SpeciesId> =
            (0..2).filter(|&j| j != ref_species).collect();
        let e = embedded_network(net, &BTreeSet::new(), &drop);
        if !(e.num_species() == 1 && is_t_alternating(&e, 2).unwrap_or(false)) {
            return Err(WitnessError::ShapeMismatch(
                "no species carries a 2-alternating embedded network".into(),
            ));
        }
    }
    let other = 1 - ref_species;
    let at = |k: usize| {
        let c = &net.reactions[k].reactant;
        (c.coeff(ref_species), c.coeff(other))
    };
    let mut y = at(fwd);
    let mut yp = at(back);
    if y.0 > yp.0 {
        std::mem::swap(&mut fwd, &mut back);
        std::mem::swap(&mut y, &mut yp);
    }
    let yt = at(irrev);
    Ok(OrientedParts { fwd, back, irrev, ref_species, other, y, yp, yt })
}

/// Slope −1 construction: the reversible pair has positive slope and the
/// marked diagonal through the irreversible reactant has slope −1. The rate
/// constant of the high-degree irreversible term is scanned around the value
/// balancing the two top-degree coefficients while the conservation total
/// doubles; each candidate is checked by exact isolation.
pub fn witness_slope_minus_one(
    net: &ReactionNetwork,
    budget: usize,
) -> Result<WitnessCertificate, WitnessError> {
    let p = oriented_parts(net)?;
    let (y, yp, yt) = (p.y, p.yp, p.yt);
    if yp.1 <= y.1 {
        return Err(WitnessError::ShapeMismatch("the pair's slope is not positive".into()));
    }
    if yp.0 + yp.1 != yt.0 + yt.1 || yp.0 == yt.0 {
        return Err(WitnessError::ShapeMismatch("the marked diagonal slope is not -1".into()));
    }
    // Balance point for the two equal-degree leading terms (independent of T).
    let base = {
        let probe = {
            let mut t = vec![int(0); 2];
            t[p.other] = int(1);
            t
        };
        let (basis, _, _) = divided_basis(net, &probe, p.ref_species)?;
        let lb = basis[p.back].leading().cloned().unwrap_or_else(|| int(0));
        let li = basis[p.irrev].leading().cloned().unwrap_or_else(|| int(0));
        if lb.is_zero() || li.is_zero() || basis[p.back].degree() != basis[p.irrev].degree() {
            return Err(WitnessError::ShapeMismatch(
                "top-degree terms do not align".into(),
            ));
        }
        (lb / li).abs()
    };
    let factors = [rat(3, 2), int(2), int(3), int(6), rat(1, 2), rat(9, 8), int(12), rat(1, 4)];
    let mut spent = 0usize;
    let mut best = WitnessError::BudgetExhausted;
    for texp in 0..=30u32 {
        let t_val = pow(&int(2), texp as i64);
        for f in &factors {
            if spent >= budget {
                return Err(best);
            }
            spent += 1;
            let mut kappa = vec![int(0); 3];
            kappa[p.fwd] = int(1);
            kappa[p.back] = int(1);
            kappa[p.irrev] = &base * f;
            let mut totals = vec![int(0); 2];
            totals[p.other] = t_val.clone();
            match build_certificate(net, &kappa, &totals, p.ref_species) {
                Ok(cert) => return Ok(cert),
                Err(e) => best = e,
            }
        }
    }
    Err(best)
}

/// Negative-slope construction: the reversible pair has negative slope and
/// the irreversible reactant sits on its far side. The substituted family is
/// the three-term family `(T - mu a)^{n2} - l a^{p1} (T - mu a)^{n1} + m a^{p2}`;
/// a deterministic dyadic grid over `(l, m)` is scanned, falling back to the
/// multiplicity-splitting perturbation when a grid point lands on a multiple
/// root.
pub fn witness_negative_slope(
    net: &ReactionNetwork,
    budget: usize,
) -> Result<WitnessCertificate, WitnessError> {
    let p = oriented_parts(net)?;
    let (y, yp, yt) = (p.y, p.yp, p.yt);
    if yp.1 >= y.1 {
        return Err(WitnessError::ShapeMismatch("the pair's slope is not negative".into()));
    }
    if yt.1 > yp.1 {
        return Err(WitnessError::ShapeMismatch(
            "the irreversible reactant is not beyond the pair in the other species".into(),
        ));
    }
    if yt.0 <= yp.0 {
        return Err(WitnessError::ShapeMismatch(
            "the irreversible reactant is not beyond the pair in the reference species".into(),
        ));
    }
    let p1 = (yp.0 - y.0) as usize;
    let p2 = (yt.0 - y.0) as usize;
    let n1 = (yp.1 - yt.1) as usize;
    let n2 = (y.1 - yt.1) as usize;
    let mu = rat((y.1 - yp.1) as i64, (yp.0 - y.0) as i64);
    let d_f = net.reaction_vector(p.fwd)[p.ref_species]; // > 0 by orientation
    let d_i = net.reaction_vector(p.irrev)[p.ref_species];
    if d_f <= 0 || d_i <= 0 {
        return Err(WitnessError::ShapeMismatch("unexpected reaction directions".into()));
    }
    let attempt = |fam: &GFamily, spent: &mut usize| -> Result<WitnessCertificate, WitnessError> {
        *spent += 1;
        let mut kappa = vec![int(0); 3];
        kappa[p.fwd] = rat(1, d_f);
        kappa[p.back] = &fam.l / int(d_f);
        kappa[p.irrev] = &fam.m / int(d_i);
        let mut totals = vec![int(0); 2];
        totals[p.other] = fam.t.clone();
        build_certificate(net, &kappa, &totals, p.ref_species)
    };
    let mut spent = 0usize;
    let mut best = WitnessError::BudgetExhausted;
    let mut seen: BTreeSet<(Rat, Rat)> = BTreeSet::new();
    for level in 0..=3u32 {
        let step = dyadic(level);
        let top = 3 * (1usize << level);
        for li in 1..=top {
            for mi in 1..=top {
                let l = &step * int(li as i64);
                let m = &step * int(mi as i64);
                if !seen.insert((l.clone(), m.clone())) {
                    continue;
                }
                if spent >= budget {
                    return Err(best);
                }
                let fam = match GFamily::new(
                    mu.clone(),
                    int(1),
                    l,
                    m,
                    p1,
                    p2,
                    n1,
                    n2,
                ) {
                    Ok(f) => f,
                    Err(e) => return Err(WitnessError::Root(e)),
                };
                match attempt(&fam, &mut spent) {
                    Ok(cert) => return Ok(cert),
                    Err(WitnessError::TooFewSimpleRoots { found }) => {
                        best = WitnessError::TooFewSimpleRoots { found };
                        // A grid point may sit on a multiple root; try the
                        // exact perturbation that splits it.
                        if let Ok(split) = fam.split_multiplicities(8) {
                            if spent >= budget {
                                return Err(best);
                            }
                            if let Ok(cert) = attempt(&split, &mut spent) {
                                return Ok(cert);
                            }
                        }
                    }
                    Err(e) => best = e,
                }
            }
        }
    }
    Err(best)
}

// ---------------------------------------------------------------------------
// Generic prescribed-root search
// ---------------------------------------------------------------------------

fn pos_schedule() -> Vec<Rat> {
    [
        (1, 1), (2, 1), (3, 1), (1, 2), (4, 1), (3, 2),
        (5, 1), (5, 2), (8, 1), (1, 4), (16, 1), (1, 8),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect()
}

fn plus_schedule() -> Vec<Rat> {
    [
        (0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1),
        (1, 2), (-1, 2), (3, 1), (-3, 1),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect()
}

/// Index tuples of length `n` into [`plus_schedule`], by ascending index sum.
fn plus_tuples(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let max_index = plus_schedule().len() - 1;
    let mut out = Vec::new();
    for total in 0..=6usize {
        let mut stack = vec![(Vec::new(), total)];
        while let Some((prefix, rest)) = stack.pop() {
            if prefix.len() == n {
                if rest == 0 {
                    out.push(prefix);
                }
                continue;
            }
            let slots_left = n - prefix.len() - 1;
            for v in (0..=rest.min(max_index)).rev() {
                if rest - v <= slots_left * max_index {
                    let mut p = prefix.clone();
                    p.push(v);
                    stack.push((p, rest - v));
                }
            }
        }
        if out.len() >= 24 {
            break;
        }
    }
    out.truncate(24);
    out
}

/// Candidate root pairs inside a window, coarse dyadic subdivisions first.
fn root_pairs(window: &Window) -> Vec<(Rat, Rat)> {
    let mut pairs = Vec::new();
    match &window.hi {
        Some(hi) => {
            let w = hi - &window.lo;
            for d in [4i64, 8] {
                for i in 1..d {
                    for j in (i + 1)..d {
                        if d == 8 && i % 2 == 0 && j % 2 == 0 {
                            continue;
                        }
                        let r1 = &window.lo + &w * rat(i, d);
                        let r2 = &window.lo + &w * rat(j, d);
                        pairs.push((r1, r2));
                        if pairs.len() >= 24 {
                            return pairs;
                        }
                    }
                }
            }
        }
        None => {
            let vals: Vec<Rat> = [
                (1, 1), (2, 1), (3, 1), (1, 2), (4, 1),
                (3, 2), (5, 2), (8, 1), (1, 4), (6, 1),
            ]
            .iter()
            .map(|&(n, d)| &window.lo + rat(n, d))
            .collect();
            let n = vals.len();
            for sum in 1..(2 * n) {
                for i in 0..n {
                    if sum <= i {
                        break;
                    }
                    let j = sum - i;
                    if j <= i || j >= n {
                        continue;
                    }
                    let (a, b) = (&vals[i], &vals[j]);
                    let (r1, r2) = if a < b { (a, b) } else { (b, a) };
                    pairs.push((r1.clone(), r2.clone()));
                    if pairs.len() >= 24 {
                        return pairs;
                    }
                }
            }
        }
    }
    pairs
}

/// Candidate tangency points inside a window, small values first (double
/// roots of the rate function often sit close to the window floor).
fn root_singles(window: &Window) -> Vec<Rat> {
    match &window.hi {
        Some(hi) => {
            let w = hi - &window.lo;
            [(1, 4), (1, 2), (1, 8), (3, 4), (3, 8), (1, 16), (5, 8), (7, 8)]
                .iter()
                .map(|&(n, d)| &window.lo + &w * rat(n, d))
                .collect()
        }
        None => [
            (1, 4), (1, 2), (1, 1), (1, 8), (2, 1), (1, 16), (3, 2), (3, 1), (4, 1), (8, 1),
        ]
        .iter()
        .map(|&(n, d)| &window.lo + rat(n, d))
        .collect(),
    }
}

/// Reaction `k`'s undivided contribution as a polynomial in the reference
/// concentration, for unit rate.
fn term_poly(
    net: &ReactionNetwork,
    slopes: &[Rat],
    totals: &[Rat],
    ref_species: SpeciesId,
    k: usize,
) -> UniPoly {
    let mut t = UniPoly::constant(int(net.reaction_vector(k)[ref_species]));
    for i in 0..net.num_species() {
        let y = net.reactions[k].reactant.coeff(i);
        if y != 0 {
            t = t.mul(&UniPoly::linear(totals[i].clone(), slopes[i].clone()).pow(y as usize));
        }
    }
    t
}

/// Evaluate reaction `k`'s undivided contribution at `x` for unit rate.
fn term_at(net: &ReactionNetwork, slopes: &[Rat], totals: &[Rat], ref_species: SpeciesId, k: usize, x: &Rat) -> Rat {
    let mut t = int(net.reaction_vector(k)[ref_species]);
    for i in 0..net.num_species() {
        let y = net.reactions[k].reactant.coeff(i) as i64;
        if y != 0 {
            t *= pow(&eval_linear(&slopes[i], &totals[i], x), y);
        }
    }
    t
}

/// Deterministic prescribed-root search: enumerate conservation totals and
/// candidate root pairs, fix one rate constant, solve the linear system
/// forcing the rate function to vanish at the candidates, and keep the first
/// all-positive solution whose roots isolate and verify.
fn generic_search(
    net: &ReactionNetwork,
    ref_species: SpeciesId,
    budget: &mut usize,
) -> Option<WitnessCertificate> {
    let r = net.num_reactions();
    if !(2..=3).contains(&r) {
        return None;
    }
    let s = net.num_species();
    let slopes = slopes_for(net, ref_species).ok()?;
    let zero = int(0);
    let shared: Vec<usize> = (0..s)
        .filter(|&i| i != ref_species && slopes[i] <= zero)
        .collect();
    let plus: Vec<usize> = (0..s)
        .filter(|&i| i != ref_species && slopes[i] > zero)
        .collect();
    let shared_vals = if shared.is_empty() { vec![int(1)] } else { pos_schedule() };
    let plus_vals = plus_schedule();
    let tuples = plus_tuples(plus.len());
    for tv in &shared_vals {
        for tuple in &tuples {
            let mut totals = vec![int(0); s];
            for &i in &shared {
                totals[i] = tv.clone();
            }
            for (slot, &i) in plus.iter().enumerate() {
                totals[i] = plus_vals[tuple[slot]].clone();
            }
            let Some(window) = window_for(&slopes, &totals, ref_species) else {
                continue;
            };
            let mut seen_single: BTreeSet<Rat> = BTreeSet::new();
            for (r1, r2) in root_pairs(&window) {
                for fix in 0..r {
                    if *budget == 0 {
                        return None;
                    }
                    *budget -= 1;
                    let kappa = if r == 2 {
                        if !seen_single.insert(r1.clone()) {
                            break;
                        }
                        let t0 = term_at(net, &slopes, &totals, ref_species, fix, &r1);
                        let other = 1 - fix;
                        let t1 = term_at(net, &slopes, &totals, ref_species, other, &r1);
                        if t1.is_zero() {
                            break;
                        }
                        let k1 = -(&t0 / &t1);
                        let mut kappa = vec![int(0); 2];
                        kappa[fix] = int(1);
                        kappa[other] = k1;
                        kappa
                    } else {
                        let others: Vec<usize> = (0..3).filter(|&k| k != fix).collect();
                        let a11 = term_at(net, &slopes, &totals, ref_species, others[0], &r1);
                        let a12 = term_at(net, &slopes, &totals, ref_species, others[1], &r1);
                        let a21 = term_at(net, &slopes, &totals, ref_species, others[0], &r2);
                        let a22 = term_at(net, &slopes, &totals, ref_species, others[1], &r2);
                        let b1 = -term_at(net, &slopes, &totals, ref_species, fix, &r1);
                        let b2 = -term_at(net, &slopes, &totals, ref_species, fix, &r2);
                        let det = &a11 * &a22 - &a12 * &a21;
                        if det.is_zero() {
                            continue;
                        }
                        let u = (&b1 * &a22 - &a12 * &b2) / &det;
                        let w = (&a11 * &b2 - &b1 * &a21) / &det;
                        let mut kappa = vec![int(0); 3];
                        kappa[fix] = int(1);
                        kappa[others[0]] = u;
                        kappa[others[1]] = w;
                        kappa
                    };
                    // The vanishing conditions are homogeneous in kappa, so
                    // a solvable normalization already determines the whole
                    // solution ray; other choices of `fix` only rescale it.
                    if !kappa.iter().all(is_positive) {
                        break;
                    }
                    if let Ok(cert) = build_certificate(net, &kappa, &totals, ref_species) {
                        if verify_certificate(net, &cert).pass {
                            return Some(cert);
                        }
                    }
                    break;
                }
            }
            if r != 3 {
                continue;
            }
            // Tangency attempts: force a double root of the rate function at
            // a candidate point (two linear conditions, two free rates), then
            // split it into two simple roots with a tiny rate perturbation.
            let tpolys: Vec<UniPoly> = (0..3)
                .map(|k| term_poly(net, &slopes, &totals, ref_species, k))
                .collect();
            let tderivs: Vec<UniPoly> = tpolys.iter().map(|p| p.derivative()).collect();
            for r0 in root_singles(&window) {
                for fix in 0..3 {
                    if *budget == 0 {
                        return None;
                    }
                    *budget -= 1;
                    let others: Vec<usize> = (0..3).filter(|&k| k != fix).collect();
                    let a11 = tpolys[others[0]].eval(&r0);
                    let a12 = tpolys[others[1]].eval(&r0);
                    let a21 = tderivs[others[0]].eval(&r0);
                    let a22 = tderivs[others[1]].eval(&r0);
                    let b1 = -tpolys[fix].eval(&r0);
                    let b2 = -tderivs[fix].eval(&r0);
                    let det = &a11 * &a22 - &a12 * &a21;
                    if det.is_zero() {
                        continue;
                    }
                    let u = (&b1 * &a22 - &a12 * &b2) / &det;
                    let w = (&a11 * &b2 - &b1 * &a21) / &det;
                    let mut kappa = vec![int(0); 3];
                    kappa[fix] = int(1);
                    kappa[others[0]] = u;
                    kappa[others[1]] = w;
                    // Homogeneous system: one solvable normalization settles
                    // the whole ray (see the prescribed-pair attempts above).
                    if !kappa.iter().all(is_positive) {
                        break;
                    }
                    for j in 0..3 {
                        for e in [8u32, 14, 20] {
                            for down in [false, true] {
                                if *budget == 0 {
                                    return None;
                                }
                                *budget -= 1;
                                let factor = if down {
                                    int(1) - dyadic(e)
                                } else {
                                    int(1) + dyadic(e)
                                };
                                let mut split = kappa.clone();
                                split[j] = &split[j] * factor;
                                if let Ok(cert) =
                                    build_certificate(net, &split, &totals, ref_species)
                                {
                                    if verify_certificate(net, &cert).pass {
                                        return Some(cert);
                                    }
                                }
                            }
                        }
                    }
                    break;
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Extension and reduction
// ---------------------------------------------------------------------------

/// Extend a certificate for a reaction-subset subnetwork with the same span
/// to the full network by giving every dropped reaction a small rate. The
/// extension is re-proved from scratch: the rate shrinks geometrically until
/// the full network's certificate isolates and verifies.
pub fn extend_with_small_rates(
    net: &ReactionNetwork,
    sub_indices: &[usize],
    sub_cert: &WitnessCertificate,
) -> Option<WitnessCertificate> {
    let r = net.num_reactions();
    let ref_species = sub_cert.substitution.ref_species;
    for e in [10u32, 20, 30, 40, 60, 80] {
        let eps = dyadic(e);
        let mut kappa = vec![Rat::zero(); r];
        let mut ok = true;
        for k in 0..r {
            kappa[k] = match sub_indices.iter().position(|&j| j == k) {
                Some(pos) => sub_cert.kappa.get(pos).cloned().unwrap_or_else(|| {
                    ok = false;
                    int(1)
                }),
                None => eps.clone(),
            };
        }
        if !ok {
            return None;
        }
        if let Ok(cert) = build_certificate(net, &kappa, &sub_cert.totals, ref_species) {
            if verify_certificate(net, &cert).pass {
                return Some(cert);
            }
        }
    }
    None
}

fn witness_rev_plus_irrev(net: &ReactionNetwork, budget: &mut usize) -> Option<WitnessCertificate> {
    if let Ok(cert) = witness_positive_slope(net) {
        return Some(cert);
    }
    let slice = (*budget).min(180);
    match witness_slope_minus_one(net, slice) {
        Ok(cert) => return Some(cert),
        Err(WitnessError::ShapeMismatch(_)) => {}
        Err(_) => *budget = budget.saturating_sub(slice / 2),
    }
    let slice = (*budget).min(240);
    match witness_negative_slope(net, slice) {
        Ok(cert) => return Some(cert),
        Err(WitnessError::ShapeMismatch(_)) => {}
        Err(_) => *budget = budget.saturating_sub(slice / 2),
    }
    let ref_species = choose_ref_species(net).ok()?;
    generic_search(net, ref_species, budget)
}

/// Section-style reduction for rank-1 networks with more than two species:
/// delegate to the reduced 2-species problem when the conservation
/// substitutions collapse the network, and search the full substituted family
/// directly otherwise.
pub fn reduce_and_witness(net: &ReactionNetwork, budget: usize) -> Option<WitnessCertificate> {
    let mut budget = budget;
    if net.num_species() <= 2 {
        return witness_search(net, budget);
    }
    if let Some(red) = crate::classify::reduce_multispecies(net) {
        if let Some(sub_cert) = witness_search(&red.reduced_net, budget) {
            // Reduced species "A" (index 0) is the merged reference block and
            // "E" (index 1) the opposing block; totals transfer directly.
            let t = sub_cert.totals[1].clone();
            let mut totals = vec![int(0); net.num_species()];
            for &i in &red.minus_species {
                totals[i] = t.clone();
            }
            if let Ok(cert) = build_certificate(net, &sub_cert.kappa, &totals, red.ref_species) {
                if verify_certificate(net, &cert).pass {
                    return Some(cert);
                }
            }
        }
    }
    let ref_species = choose_ref_species(net).ok()?;
    generic_search(net, ref_species, &mut budget)
}

/// Search for a verified witness certificate, dispatching on the network's
/// shape. Every returned certificate has passed [`verify_certificate`].
pub fn witness_search(net: &ReactionNetwork, budget: usize) -> Option<WitnessCertificate> {
    if !crate::netparse::validate(net).is_empty() {
        return None;
    }
    let mut budget = budget;
    let shape = detect_shape(net);
    let found = match shape.tag {
        ShapeTag::OneSpecies => {
            let (ix, sub) = find_alternating_subnetwork(net, 2).ok().flatten()?;
            let sub_cert = witness_positive_slope(&sub)
                .ok()
                .or_else(|| generic_search(&sub, 0, &mut budget))?;
            if ix.len() == net.num_reactions() {
                Some(sub_cert)
            } else {
                extend_with_small_rates(net, &ix, &sub_cert)
            }
        }
        ShapeTag::TwoIrrev => {
            let ref_species = choose_ref_species(net).ok()?;
            generic_search(net, ref_species, &mut budget)
        }
        ShapeTag::TwoSpeciesRevPlusIrrev => witness_rev_plus_irrev(net, &mut budget),
        ShapeTag::TwoSpeciesTwoRev => {
            let rank = stoich_data(net).rank;
            let drops: Vec<usize> = (0..net.num_reactions())
                .filter(|&drop| {
                    let keep: Vec<usize> =
                        (0..net.num_reactions()).filter(|&k| k != drop).collect();
                    stoich_data(&subnetwork(net, &keep)).rank == rank
                })
                .collect();
            // Each drop candidate gets an equal slice of the budget so one
            // fruitless subnetwork search cannot starve the others.
            let per = (budget / drops.len().max(1)).max(1);
            let mut found = None;
            for drop in drops {
                let keep: Vec<usize> =
                    (0..net.num_reactions()).filter(|&k| k != drop).collect();
                let sub = subnetwork(net, &keep);
                let mut slice = per.min(budget);
                let start = slice;
                let sub_found = witness_rev_plus_irrev(&sub, &mut slice);
                budget = budget.saturating_sub(start - slice);
                if let Some(sub_cert) = sub_found {
                    if let Some(cert) = extend_with_small_rates(net, &keep, &sub_cert) {
                        found = Some(cert);
                        break;
                    }
                }
                if budget == 0 {
                    break;
                }
            }
            found
        }
        ShapeTag::MultiSpeciesRank1 => reduce_and_witness(net, budget),
        _ => None,
    };
    let cert = found?;
    verify_certificate(net, &cert).pass.then_some(cert)
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RootFile {
    lo: String,
    hi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    version: u32,
    network: String,
    species: Vec<String>,
    kappa: Vec<String>,
    totals: Vec<String>,
    ref_species: usize,
    slopes: Vec<String>,
    monomial_exponents: Vec<u64>,
    poly: Vec<String>,
    window_lo: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window_hi: Option<String>,
    roots: Vec<RootFile>,
}

impl WitnessCertificate {
    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            version: CERT_VERSION,
            network: self.network_text.clone(),
            species: self.species.clone(),
            kappa: self.kappa.iter().map(fmt_rat).collect(),
            totals: self.totals.iter().map(fmt_rat).collect(),
            ref_species: self.substitution.ref_species,
            slopes: self.substitution.slopes.iter().map(fmt_rat).collect(),
            monomial_exponents: self.substitution.monomial_exponents.clone(),
            poly: self.poly.coeffs().iter().map(fmt_rat).collect(),
            window_lo: fmt_rat(&self.window.lo),
            window_hi: self.window.hi.as_ref().map(fmt_rat),
            roots: self
                .roots
                .iter()
                .map(|r| RootFile {
                    lo: fmt_rat(&r.lo),
                    hi: fmt_rat(&r.hi),
                    exact: r.exact.as_ref().map(fmt_rat),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("certificate serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<WitnessCertificate, String> {
        let file: CertificateFile =
            serde_json::from_str(text).map_err(|e| format!("malformed certificate: {e}"))?;
        if file.version != CERT_VERSION {
            return Err(format!(
                "unsupported certificate version {} (expected {CERT_VERSION})",
                file.version
            ));
        }
        let rats = |v: &[String]| -> Result<Vec<Rat>, String> {
            v.iter().map(|s| parse_rat(s)).collect()
        };
        let mut roots = Vec::new();
        for r in &file.roots {
            roots.push(RootWitness {
                lo: parse_rat(&r.lo)?,
                hi: parse_rat(&r.hi)?,
                exact: r.exact.as_deref().map(parse_rat).transpose()?,
            });
        }
        Ok(WitnessCertificate {
            network_text: file.network,
            species: file.species,
            kappa: rats(&file.kappa)?,
            totals: rats(&file.totals)?,
            substitution: SubstitutionRecord {
                ref_species: file.ref_species,
                slopes: rats(&file.slopes)?,
                totals: rats(&file.totals)?,
                monomial_exponents: file.monomial_exponents,
            },
            poly: UniPoly::from_coeffs(rats(&file.poly)?),
            window: Window {
                lo: parse_rat(&file.window_lo)?,
                hi: file.window_hi.as_deref().map(parse_rat).transpose()?,
            },
            roots,
        })
    }
}
