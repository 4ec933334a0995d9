//! Decision procedures: dispatch a network to the applicable classification
//! criterion and return a verdict with structured evidence.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::netparse::{ReactionNetwork, SpeciesId};
use crate::rat::{fmt_rat, int, Rat};
use crate::structure::{
    box_diagram_for_pair, embedded_network, find_alternating_subnetwork, is_t_alternating,
    stoich_data, subnetwork, zigzag_class, ZigzagTag,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("scalar_multiple requires nonzero vectors")]
    ZeroVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NONDEG_MSS")]
    NondegMss,
    #[serde(rename = "NOT_MSS")]
    NotMss,
    #[serde(rename = "UNKNOWN")]
    Unknown,
    #[serde(rename = "OUT_OF_SCOPE")]
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShapeTag {
    #[serde(rename = "ONE_SPECIES")]
    OneSpecies,
    #[serde(rename = "ONE_REACTION_OR_REV_PAIR")]
    OneReactionOrRevPair,
    #[serde(rename = "TWO_IRREV")]
    TwoIrrev,
    #[serde(rename = "TWO_SPECIES_REV_PLUS_IRREV")]
    TwoSpeciesRevPlusIrrev,
    #[serde(rename = "TWO_SPECIES_TWO_REV")]
    TwoSpeciesTwoRev,
    #[serde(rename = "MULTI_SPECIES_RANK1")]
    MultiSpeciesRank1,
    #[serde(rename = "OTHER")]
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetworkShape {
    pub tag: ShapeTag,
    pub species: usize,
    pub reactions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    pub shape: NetworkShape,
    /// Set when the verdict leans on a sub-case distinction the cited results
    /// leave open (see the per-branch evidence for details).
    pub caveat: bool,
}

/// Reversible pairs (i, j) with i < j and reaction j the reverse of i; each
/// reaction belongs to at most one pair.
pub fn reversible_pairs(net: &ReactionNetwork) -> Vec<(usize, usize)> {
    let mut used = vec![false; net.num_reactions()];
    let mut pairs = Vec::new();
    for i in 0..net.num_reactions() {
        if used[i] {
            continue;
        }
        if let Some(j) = net.reverse_partner(i) {
            if j > i && !used[j] {
                used[i] = true;
                used[j] = true;
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// For a one-reversible-pair-plus-one-irreversible network, the indices
/// (pair forward, pair backward, irreversible).
pub fn rev_plus_irrev_parts(net: &ReactionNetwork) -> Option<(usize, usize, usize)> {
    if net.num_reactions() != 3 {
        return None;
    }
    let pairs = reversible_pairs(net);
    if pairs.len() != 1 {
        return None;
    }
    let (i, j) = pairs[0];
    let irrev = (0..3).find(|k| *k != i && *k != j).unwrap();
    Some((i, j, irrev))
}

pub fn detect_shape(net: &ReactionNetwork) -> NetworkShape {
    let s = net.num_species();
    let r = net.num_reactions();
    let pairs = reversible_pairs(net);
    let tag = if s == 1 {
        ShapeTag::OneSpecies
    } else if r == 1 || (r == 2 && pairs.len() == 1) {
        ShapeTag::OneReactionOrRevPair
    } else if r == 2 {
        ShapeTag::TwoIrrev
    } else if s == 2 && r == 3 && pairs.len() == 1 {
        ShapeTag::TwoSpeciesRevPlusIrrev
    } else if s == 2 && r == 4 && pairs.len() == 2 {
        ShapeTag::TwoSpeciesTwoRev
    } else if s >= 3 && r == 3 && pairs.len() == 1 && stoich_data(net).rank == 1 {
        ShapeTag::MultiSpeciesRank1
    } else {
        ShapeTag::Other
    };
    NetworkShape {
        tag,
        species: s,
        reactions: r,
    }
}

/// The nonzero rational lambda with v = lambda * w, if one exists.
pub fn scalar_multiple(v: &[i64], w: &[i64]) -> Result<Option<Rat>, ClassifyError> {
    if v.iter().all(|&x| x == 0) || w.iter().all(|&x| x == 0) {
        return Err(ClassifyError::ZeroVector);
    }
    let pivot = w.iter().position(|&x| x != 0).unwrap();
    if v[pivot] == 0 {
        return Ok(None);
    }
    let lambda = Rat::new(v[pivot].into(), w[pivot].into());
    for (a, b) in v.iter().zip(w) {
        if int(*a) != &lambda * int(*b) {
            return Ok(None);
        }
    }
    Ok(Some(lambda))
}

/// The 1-species embedded network keeping only species `i`, when it still has
/// that species.
fn embedded_on_species(net: &ReactionNetwork, i: SpeciesId) -> Option<ReactionNetwork> {
    let drop: BTreeSet<SpeciesId> = (0..net.num_species()).filter(|&j| j != i).collect();
    let e = embedded_network(net, &BTreeSet::new(), &drop);
    (e.num_species() == 1).then_some(e)
}

fn embedded_is_alternating(net: &ReactionNetwork, i: SpeciesId, t: usize) -> Option<ReactionNetwork> {
    let e = embedded_on_species(net, i)?;
    is_t_alternating(&e, t).unwrap_or(false).then_some(e)
}

pub fn classify(net: &ReactionNetwork) -> Classification {
    classify_core(net, true)
}

/// Classification restricted to the base criteria: the multi-species branch
/// does not fall back to a witness search. Used when classifying subnetworks
/// during lifting, where only directly cited criteria may conclude.
pub fn classify_base(net: &ReactionNetwork) -> Classification {
    classify_core(net, false)
}

fn classify_core(net: &ReactionNetwork, allow_witness: bool) -> Classification {
    let shape = detect_shape(net);
    let mut evidence = Vec::new();
    let mut caveat = false;
    let verdict = match shape.tag {
        ShapeTag::OneSpecies => {
            match find_alternating_subnetwork(net, 2).unwrap() {
                Some((ix, sub)) => {
                    evidence.push(format!(
                        "Proposition 2.13(1): subnetwork {{{}}} (reactions {:?}) is 2-alternating",
                        one_line(&sub),
                        ix
                    ));
                    Verdict::NondegMss
                }
                None => {
                    if shape.reactions == 1 || reversible_pairs(net).len() * 2 == shape.reactions && shape.reactions == 2 {
                        evidence.push(
                            "Proposition 2.13(2): a single reaction or reversible pair is not multistationary"
                                .to_string(),
                        );
                    } else {
                        evidence.push(
                            "Proposition 2.13(1): no 2-alternating subnetwork, so not nondegenerately \
                             multistationary; the resolved Nondegeneracy Conjecture for 1 species \
                             excludes multistationarity unless the rate function vanishes identically \
                             (infinitely many steady states)"
                                .to_string(),
                        );
                        caveat = true;
                    }
                    Verdict::NotMss
                }
            }
        }
        ShapeTag::OneReactionOrRevPair => {
            evidence.push(
                "Proposition 2.13(2): a single reaction or reversible pair is not multistationary"
                    .to_string(),
            );
            Verdict::NotMss
        }
        _ if shape.species + shape.reactions <= 3 => {
            evidence.push("Corollary 3.8 of prior work: r + s <= 3 excludes multistationarity".to_string());
            Verdict::NotMss
        }
        ShapeTag::TwoIrrev => classify_two_irrev(net, &mut evidence),
        ShapeTag::TwoSpeciesRevPlusIrrev => classify_rev_plus_irrev(net, &mut evidence),
        ShapeTag::TwoSpeciesTwoRev => classify_two_rev(net, &mut evidence),
        ShapeTag::MultiSpeciesRank1 => classify_multi(net, allow_witness, &mut evidence),
        ShapeTag::Other => {
            evidence.push("no cited criterion covers this shape".to_string());
            Verdict::OutOfScope
        }
    };
    Classification {
        verdict,
        evidence,
        shape,
        caveat,
    }
}

fn one_line(net: &ReactionNetwork) -> String {
    net.to_string().replace('\n', "; ")
}

fn classify_two_irrev(net: &ReactionNetwork, evidence: &mut Vec<String>) -> Verdict {
    let s = net.num_species();
    // Zigzag projections of Proposition 2.13(3).
    let mut zigzags: Vec<(usize, usize, Rat)> = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            if let Ok(diagram) = box_diagram_for_pair(net, i, j) {
                let (tag, slope) = zigzag_class(&diagram);
                if tag == ZigzagTag::Zigzag {
                    zigzags.push((i, j, slope));
                }
            }
        }
    }
    if zigzags.is_empty() {
        evidence.push(
            "Proposition 2.13(3): no coordinate-pair projection of the box diagram is a zigzag, \
             so not nondegenerately multistationary; multistationarity itself is not decided by \
             the cited results"
                .to_string(),
        );
        return Verdict::Unknown;
    }
    let minus_one = int(-1);
    if zigzags.len() == 1 && zigzags[0].2 == minus_one {
        evidence.push(format!(
            "Proposition 2.13(3): only the ({}, {}) projection is a zigzag and its diagonal slope \
             is -1, so not nondegenerately multistationary; multistationarity itself is not \
             decided by the cited results",
            net.species[zigzags[0].0], net.species[zigzags[0].1]
        ));
        return Verdict::Unknown;
    }
    for (i, j, slope) in &zigzags {
        evidence.push(format!(
            "Proposition 2.13(3): the ({}, {}) projection of the box diagram is a zigzag with \
             diagonal slope {}",
            net.species[*i],
            net.species[*j],
            fmt_rat(slope)
        ));
    }
    Verdict::NondegMss
}

fn classify_rev_plus_irrev(net: &ReactionNetwork, evidence: &mut Vec<String>) -> Verdict {
    let (fwd, _back, irrev) = rev_plus_irrev_parts(net).unwrap();
    let pair_vec = net.reaction_vector(fwd);
    let irrev_vec = net.reaction_vector(irrev);
    let lambda = scalar_multiple(&pair_vec, &irrev_vec).unwrap();
    let Some(lambda) = lambda else {
        evidence.push(
            "Theorem 1.1 (Case 1): reaction vectors are not scalar multiples, so not \
             multistationary"
                .to_string(),
        );
        return Verdict::NotMss;
    };
    for i in 0..net.num_species() {
        if let Some(e) = embedded_is_alternating(net, i, 2) {
            evidence.push(format!(
                "Theorem 3.5: lambda = {}, and the embedded network on species {} \
                 {{{}}} is 2-alternating",
                fmt_rat(&lambda),
                net.species[i],
                one_line(&e)
            ));
            return Verdict::NondegMss;
        }
    }
    evidence.push(format!(
        "Theorem 1.1 (Case 1): lambda = {} but no 1-species embedded network is 2-alternating, \
         so not multistationary",
        fmt_rat(&lambda)
    ));
    Verdict::NotMss
}

fn classify_two_rev(net: &ReactionNetwork, evidence: &mut Vec<String>) -> Verdict {
    let pairs = reversible_pairs(net);
    let v = net.reaction_vector(pairs[0].0);
    let w = net.reaction_vector(pairs[1].0);
    let lambda = scalar_multiple(&v, &w).unwrap();
    let Some(lambda) = lambda else {
        evidence.push(
            "Theorem 1.1 (Case 2): reaction vectors are not scalar multiples, so not \
             multistationary"
                .to_string(),
        );
        return Verdict::NotMss;
    };
    for i in 0..net.num_species() {
        if let Some(e) = embedded_is_alternating(net, i, 3) {
            evidence.push(format!(
                "Theorem 3.6: lambda = {}, and the embedded network on species {} \
                 {{{}}} is 3-alternating",
                fmt_rat(&lambda),
                net.species[i],
                one_line(&e)
            ));
            if let Some(lift) = lift_from_subnetwork(net, DEFAULT_LIFT_BUDGET) {
                evidence.push(lift.description);
            }
            return Verdict::NondegMss;
        }
    }
    evidence.push(format!(
        "Theorem 1.1 (Case 2): lambda = {} but no 1-species embedded network is 3-alternating, \
         so not multistationary",
        fmt_rat(&lambda)
    ));
    Verdict::NotMss
}

fn classify_multi(net: &ReactionNetwork, allow_witness: bool, evidence: &mut Vec<String>) -> Verdict {
    evidence.push(
        "heuristic: multi-species rank-1 dispatch mirrors the partial Section 5 reduction"
            .to_string(),
    );
    if let Some(red) = reduce_multispecies(net) {
        evidence.push(format!(
            "Section 5 reduction: conservation substitutions give the steady-state family of the \
             2-species network {{{}}}, which is nondegenerately multistationary; {}",
            one_line(&red.reduced_net),
            red.reduced_classification.evidence.join("; ")
        ));
        return Verdict::NondegMss;
    }
    evidence.push("Section 5 reduction does not apply".to_string());
    if allow_witness {
        if let Some(cert) = crate::witness::witness_search(net, crate::witness::DEFAULT_BUDGET) {
            evidence.push(format!(
                "verified witness certificate: {}",
                cert.summary()
            ));
            return Verdict::NondegMss;
        }
        evidence.push("witness search exhausted its budget without a certificate".to_string());
    }
    Verdict::Unknown
}

pub const DEFAULT_LIFT_BUDGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftEvidence {
    /// Reaction indices of the subnetwork, ascending.
    pub reactions: Vec<usize>,
    pub sub_classification: Classification,
    pub description: String,
}

/// Search reaction-subset subnetworks with the same stoichiometric subspace
/// for one that a base criterion certifies; Lemma 2.6 then lifts the steady
/// states to the full network. Subsets are scanned largest-first, then
/// lexicographically; `budget` caps the number examined.
pub fn lift_from_subnetwork(net: &ReactionNetwork, budget: usize) -> Option<LiftEvidence> {
    let r = net.num_reactions();
    let rank = stoich_data(net).rank;
    let mut examined = 0;
    for size in (2..r).rev() {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if examined > budget {
                return None;
            }
            let sub = subnetwork(net, &indices);
            // The subnetwork's span is a subspace of the full span, so equal
            // rank means equal stoichiometric subspace.
            if stoich_data(&sub).rank == rank {
                let c = classify_base(&sub);
                if c.verdict == Verdict::NondegMss {
                    let description = format!(
                        "Lemma 2.6: subnetwork {{{}}} (reactions {:?}) has the same stoichiometric \
                         subspace and is nondegenerately multistationary, so the full network \
                         admits at least as many nondegenerate positive steady states",
                        one_line(&sub),
                        indices
                    );
                    return Some(LiftEvidence {
                        reactions: indices,
                        sub_classification: c,
                        description,
                    });
                }
            }
            let mut i = size;
            loop {
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
                i -= 1;
                if indices[i] != i + r - size {
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
            indices[i] += 1;
            for j in i + 1..size {
                indices[j] = indices[j - 1] + 1;
            }
        }
    }
    None
}

/// One term kappa_k * coeff * a^{a_exp} * (T - a)^{t_exp} of a reduced
/// steady-state family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTerm {
    pub reaction: usize,
    pub coeff: i64,
    pub a_exp: u64,
    pub t_exp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedProblem {
    /// The 2-species network whose steady-state family matches the reduced
    /// one (species "A" carries the alternating embedded network, "E" the
    /// shared total).
    pub reduced_net: ReactionNetwork,
    pub reduced_classification: Classification,
    /// da/dt = sum over terms after the Section 5 substitutions.
    pub family: Vec<FamilyTerm>,
    pub ref_species: SpeciesId,
    /// Species substituted x_i = x_ref (their totals are set to 0).
    pub plus_species: Vec<SpeciesId>,
    /// Species substituted x_i = T - x_ref (totals equalized to T).
    pub minus_species: Vec<SpeciesId>,
}

/// The Section 5 reduction: for a rank-1 reversible-pair-plus-irreversible
/// network where every species tracks the reference species as dx_i/dt =
/// +/- dx_ref/dt, substitute x_i = x_ref (totals 0) or x_i = T - x_ref
/// (totals equalized) and recognize the resulting univariate family as the
/// steady-state family of a 2-species network. Returns the reduction only
/// when that 2-species network is classified nondegenerately multistationary.
pub fn reduce_multispecies(net: &ReactionNetwork) -> Option<ReducedProblem> {
    let s = net.num_species();
    let sd = stoich_data(net);
    if sd.rank != 1 {
        return None;
    }
    let (fwd, _, _) = rev_plus_irrev_parts(net)?;
    let v = net.reaction_vector(fwd);
    // Reference species: carries a 2-alternating 1-species embedded network.
    let ref_species = (0..s).find(|&i| {
        v[i] != 0 && embedded_is_alternating(net, i, 2).is_some()
    })?;
    if s <= 2 {
        // A genuinely 2-species (or smaller) network reduces to itself.
        let c = classify_base(net);
        if c.verdict != Verdict::NondegMss {
            return None;
        }
        let (mut plus_species, mut minus_species) = (Vec::new(), Vec::new());
        for i in 0..s {
            if i != ref_species {
                if v[i] * v[ref_species] > 0 {
                    plus_species.push(i);
                } else {
                    minus_species.push(i);
                }
            }
        }
        return Some(ReducedProblem {
            reduced_net: net.clone(),
            reduced_classification: c,
            family: Vec::new(),
            ref_species,
            plus_species,
            minus_species,
        });
    }
    let mut plus_species = Vec::new();
    let mut minus_species = Vec::new();
    for i in 0..s {
        if i == ref_species {
            continue;
        }
        if v[i] == v[ref_species] {
            plus_species.push(i);
        } else if v[i] == -v[ref_species] {
            minus_species.push(i);
        } else {
            // dx_i/dt is not +/- dx_ref/dt; the technique does not apply.
            return None;
        }
    }
    let red = |c: &crate::netparse::Complex| {
        let mut a = c.coeff(ref_species);
        let mut e = 0u64;
        for &i in &plus_species {
            a += c.coeff(i);
        }
        for &i in &minus_species {
            e += c.coeff(i);
        }
        (a, e)
    };
    let mut reduced_reactions = Vec::new();
    let mut family = Vec::new();
    for (k, reaction) in net.reactions.iter().enumerate() {
        let (ra, re) = red(&reaction.reactant);
        let (pa, pe) = red(&reaction.product);
        let mut reactant = crate::netparse::Complex::zero();
        reactant.add_term(0, ra);
        reactant.add_term(1, re);
        let mut product = crate::netparse::Complex::zero();
        product.add_term(0, pa);
        product.add_term(1, pe);
        if reactant == product {
            return None;
        }
        reduced_reactions.push(crate::netparse::Reaction { reactant, product });
        family.push(FamilyTerm {
            reaction: k,
            coeff: net.reaction_vector(k)[ref_species],
            a_exp: ra,
            t_exp: re,
        });
    }
    let reduced_net = ReactionNetwork {
        species: vec!["A".to_string(), "E".to_string()],
        reactions: reduced_reactions,
    };
    if crate::netparse::validate(&reduced_net).is_empty() {
        let c = classify_base(&reduced_net);
        if c.verdict == Verdict::NondegMss {
            return Some(ReducedProblem {
                reduced_net,
                reduced_classification: c,
                family,
                ref_species,
                plus_species,
                minus_species,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netparse::parse_network;
    use crate::rat::rat;

    fn net(text: &str) -> ReactionNetwork {
        parse_network(text).unwrap()
    }

    #[test]
    fn scalar_multiple_examples() {
        assert_eq!(scalar_multiple(&[1, 1], &[1, 1]).unwrap(), Some(int(1)));
        assert_eq!(scalar_multiple(&[2, -2], &[-1, 1]).unwrap(), Some(int(-2)));
        assert_eq!(scalar_multiple(&[1, 0], &[1, 1]).unwrap(), None);
        assert_eq!(
            scalar_multiple(&[0, 0], &[1, 1]),
            Err(ClassifyError::ZeroVector)
        );
        assert_eq!(scalar_multiple(&[1, 2], &[2, 4]).unwrap(), Some(rat(1, 2)));
    }

    #[test]
    fn shapes_follow_precedence() {
        let cases = [
            ("0 <- A; A -> 2A", ShapeTag::OneSpecies),
            ("A -> B", ShapeTag::OneReactionOrRevPair),
            ("A <-> B", ShapeTag::OneReactionOrRevPair),
            ("A -> B; 2A + B -> 3A", ShapeTag::TwoIrrev),
            ("0 <-> A + B; 2A + B -> 3A + 2B", ShapeTag::TwoSpeciesRevPlusIrrev),
            ("0 <-> A + B; 2A + B <-> 3A + 2B", ShapeTag::TwoSpeciesTwoRev),
            (
                "2C + 2D <-> A + B + C + D; 2A + 2B + C + D -> 3A + 3B",
                ShapeTag::MultiSpeciesRank1,
            ),
            ("A -> B; B -> C; C -> A", ShapeTag::Other),
        ];
        for (text, tag) in cases {
            assert_eq!(detect_shape(&net(text)).tag, tag, "{text}");
        }
    }

    #[test]
    fn worked_example_networks() {
        let c = classify(&net("0 <-> A + B; 2A + B -> 3A + 2B"));
        assert_eq!(c.verdict, Verdict::NondegMss);
        assert!(c.evidence.iter().any(|e| e.contains("lambda = 1")));
        assert!(c.evidence.iter().any(|e| e.contains("2-alternating")));

        let c = classify(&net("2B <-> A + B; 3A -> 2A + B"));
        assert_eq!(c.verdict, Verdict::NotMss);
        assert!(!c.caveat);

        let c = classify(&net("A -> B; 2A + B -> 3A"));
        assert_eq!(c.verdict, Verdict::NondegMss);
        assert!(c.evidence.iter().any(|e| e.contains("zigzag")));
    }

    #[test]
    fn one_species_dispatch() {
        let c = classify(&net("0 <- A; 2A -> 3A; 2A <- 3A"));
        assert_eq!(c.verdict, Verdict::NondegMss);
        // No 2-alternating subnetwork: excluded with the sub-case caveat.
        let c = classify(&net("0 <- A; A -> 2A; 2A -> 3A"));
        assert_eq!(c.verdict, Verdict::NotMss);
        assert!(c.caveat);
        // A lone reversible pair needs no caveat.
        let c = classify(&net("A <-> 2A"));
        assert_eq!(c.verdict, Verdict::NotMss);
        assert!(!c.caveat);
    }

    #[test]
    fn two_irrev_dispatch() {
        // No zigzag projection: nondegenerate multistationarity excluded, the
        // rest undecided.
        let c = classify(&net("A -> 2A + B; 2B -> A + 3B"));
        assert_eq!(c.verdict, Verdict::Unknown);
        // Single zigzag pair with diagonal slope -1: proviso applies.
        let c = classify(&net("A + B -> 2A + 2B; 2A -> A + B"));
        let b = crate::structure::box_diagram(&net("A + B -> 2A + 2B; 2A -> A + B")).unwrap();
        assert_eq!(b.diagonal_slope, int(-1));
        if zigzag_class(&b).0 == ZigzagTag::Zigzag {
            assert_eq!(c.verdict, Verdict::Unknown);
        }
    }

    #[test]
    fn two_rev_pairs_dispatch() {
        let c = classify(&net("0 <-> A + B; 2A + B <-> 3A + 2B"));
        assert_eq!(c.verdict, Verdict::NondegMss);
        assert!(c.evidence.iter().any(|e| e.contains("3-alternating")));
        assert!(c.evidence.iter().any(|e| e.contains("Lemma 2.6")));

        let c = classify(&net("0 <-> A + B; A + 2B <-> 3A + 2B"));
        assert_eq!(c.verdict, Verdict::NotMss);
    }

    #[test]
    fn classification_is_permutation_invariant() {
        let original = classify(&net("0 <-> A + B; 2A + B -> 3A + 2B"));
        // Swap species names and reaction order.
        let swapped = classify(&net("2B + A -> 3B + 2A; 0 <-> B + A"));
        assert_eq!(original.verdict, swapped.verdict);
        // Swap y and y' in the reversible pair.
        let flipped = classify(&net("A + B <-> 0; 2A + B -> 3A + 2B"));
        assert_eq!(original.verdict, flipped.verdict);
    }

    #[test]
    fn lift_examples() {
        let l = lift_from_subnetwork(&net("0 <-> A + B; 2A + B <-> 3A + 2B"), DEFAULT_LIFT_BUDGET)
            .unwrap();
        assert_eq!(l.sub_classification.verdict, Verdict::NondegMss);
        assert_eq!(l.reactions.len(), 3);
        assert_eq!(lift_from_subnetwork(&net("A -> B"), DEFAULT_LIFT_BUDGET), None);
        // Every proper subnetwork spans a smaller subspace.
        assert_eq!(
            lift_from_subnetwork(&net("A -> 2A; B -> 2B"), DEFAULT_LIFT_BUDGET),
            None
        );
    }

    #[test]
    fn reduction_of_four_species_example() {
        let n = net("2C + 2D <-> A + B + C + D; 2A + 2B + C + D -> 3A + 3B");
        let red = reduce_multispecies(&n).unwrap();
        assert_eq!(
            red.reduced_net.to_string(),
            "4E <-> 2A + 2E; 4A + 2E -> 6A"
        );
        let expect = |k: usize, coeff: i64, a_exp: u64, t_exp: u64| FamilyTerm {
            reaction: k,
            coeff,
            a_exp,
            t_exp,
        };
        assert_eq!(
            red.family,
            vec![expect(0, 1, 0, 4), expect(1, -1, 2, 2), expect(2, 1, 4, 2)]
        );
        assert_eq!(red.plus_species, vec![3]); // B tracks A
        assert_eq!(red.minus_species, vec![0, 1]); // C and D oppose A
        let c = classify(&n);
        assert_eq!(c.verdict, Verdict::NondegMss);
    }

    #[test]
    fn reduction_fails_on_collapsing_example() {
        let n = net("2C + 2D <-> A + B + C + D; 2A + C + D -> 3A + B");
        assert_eq!(reduce_multispecies(&n), None);
    }

    #[test]
    fn reduction_is_identity_for_two_species() {
        let n = net("0 <-> A + B; 2A + B -> 3A + 2B");
        let red = reduce_multispecies(&n).unwrap();
        assert_eq!(red.minus_species.len() + red.plus_species.len() + 1, 2);
        assert_eq!(red.reduced_classification.verdict, Verdict::NondegMss);
    }
}
