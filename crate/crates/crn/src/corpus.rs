//! Deterministic enumeration of small networks for consistency checking.
//!
//! The enumerators produce every network of a given shape with stoichiometric
//! coefficients up to a bound, deduplicated up to species permutation, in a
//! fixed deterministic order. They drive the classifier/witness consistency
//! suite and the `corpus` CLI subcommand.

use std::collections::BTreeSet;

use crate::classify::ShapeTag;
use crate::netparse::{Complex, Reaction, ReactionNetwork};

/// All complexes over `species_count` species with every coefficient at most
/// `max_coeff`, in lexicographic coefficient order (the zero complex first).
fn complexes(species_count: usize, max_coeff: u64) -> Vec<Complex> {
    let mut vecs: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..species_count {
        let mut next = Vec::new();
        for v in &vecs {
            for k in 0..=max_coeff {
                let mut w: Vec<u64> = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        vecs = next;
    }
    vecs.into_iter()
        .map(|v| Complex::from_terms(v.into_iter().enumerate().filter(|&(_, k)| k > 0)))
        .collect()
}

fn species_names(n: usize) -> Vec<String> {
    ["A", "B"].iter().take(n).map(|s| s.to_string()).collect()
}

/// Canonical text key of a network up to species permutation: the minimum
/// over species orders of the sorted reaction list rendering.
fn canonical_key(net: &ReactionNetwork) -> String {
    let s = net.num_species();
    let perms: Vec<Vec<usize>> = if s == 2 {
        vec![vec![0, 1], vec![1, 0]]
    } else {
        vec![(0..s).collect()]
    };
    perms
        .iter()
        .map(|perm| {
            let render = |c: &Complex| -> Vec<u64> {
                (0..s).map(|i| c.coeff(perm[i])).collect()
            };
            let mut rs: Vec<(Vec<u64>, Vec<u64>)> = net
                .reactions
                .iter()
                .map(|r| (render(&r.reactant), render(&r.product)))
                .collect();
            rs.sort();
            format!("{rs:?}")
        })
        .min()
        .unwrap()
}

fn push_unique(out: &mut Vec<ReactionNetwork>, seen: &mut BTreeSet<String>, net: ReactionNetwork) {
    // Skip degenerate members (e.g. a declared species no reaction uses —
    // those are really smaller-shape networks covered elsewhere).
    if !crate::netparse::validate(&net).is_empty() {
        return;
    }
    if seen.insert(canonical_key(&net)) {
        out.push(net);
    }
}

/// Every nonempty set of 1-species reactions `aA -> bA` with `a, b <=
/// max_coeff`, `a != b`.
pub fn one_species_networks(max_coeff: u64) -> Vec<ReactionNetwork> {
    let cs = complexes(1, max_coeff);
    let mut reactions = Vec::new();
    for y in &cs {
        for yp in &cs {
            if y != yp {
                reactions.push(Reaction {
                    reactant: y.clone(),
                    product: yp.clone(),
                });
            }
        }
    }
    let m = reactions.len();
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        let subset: Vec<Reaction> = (0..m)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| reactions[k].clone())
            .collect();
        out.push(ReactionNetwork {
            species: species_names(1),
            reactions: subset,
        });
    }
    out
}

/// Every 2-species network with one reversible pair and one irreversible
/// reaction, coefficients at most `max_coeff`, up to species permutation.
pub fn two_species_rev_plus_irrev(max_coeff: u64) -> Vec<ReactionNetwork> {
    let cs = complexes(2, max_coeff);
    let n = cs.len();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (y, yp) = (&cs[i], &cs[j]);
            for (a, b) in (0..n).flat_map(|a| (0..n).map(move |b| (a, b))) {
                if a == b {
                    continue;
                }
                let (yt, ytp) = (&cs[a], &cs[b]);
                // The irreversible reaction must not duplicate either pair
                // direction, and its reverse must be absent.
                let dup = (yt == y && ytp == yp) || (yt == yp && ytp == y);
                let makes_pair = (ytp == y && yt == yp) || (ytp == yp && yt == y);
                if dup || makes_pair {
                    continue;
                }
                let net = ReactionNetwork {
                    species: species_names(2),
                    reactions: vec![
                        Reaction { reactant: y.clone(), product: yp.clone() },
                        Reaction { reactant: yp.clone(), product: y.clone() },
                        Reaction { reactant: yt.clone(), product: ytp.clone() },
                    ],
                };
                push_unique(&mut out, &mut seen, net);
            }
        }
    }
    out
}

/// Every 2-species network with exactly two reversible pairs, coefficients at
/// most `max_coeff`, up to species permutation.
pub fn two_species_two_rev(max_coeff: u64) -> Vec<ReactionNetwork> {
    let cs = complexes(2, max_coeff);
    let n = cs.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for p in 0..pairs.len() {
        for q in (p + 1)..pairs.len() {
            let (i, j) = pairs[p];
            let (k, l) = pairs[q];
            let net = ReactionNetwork {
                species: species_names(2),
                reactions: vec![
                    Reaction { reactant: cs[i].clone(), product: cs[j].clone() },
                    Reaction { reactant: cs[j].clone(), product: cs[i].clone() },
                    Reaction { reactant: cs[k].clone(), product: cs[l].clone() },
                    Reaction { reactant: cs[l].clone(), product: cs[k].clone() },
                ],
            };
            push_unique(&mut out, &mut seen, net);
        }
    }
    out
}

/// Every 2-species network with two irreversible reactions (no reversible
/// pair), coefficients at most `max_coeff`, up to species permutation.
pub fn two_species_two_irrev(max_coeff: u64) -> Vec<ReactionNetwork> {
    let cs = complexes(2, max_coeff);
    let n = cs.len();
    let mut reactions = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                reactions.push((a, b));
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for p in 0..reactions.len() {
        for q in (p + 1)..reactions.len() {
            let (a, b) = reactions[p];
            let (c, d) = reactions[q];
            if a == d && b == c {
                continue; // would form a reversible pair
            }
            let net = ReactionNetwork {
                species: species_names(2),
                reactions: vec![
                    Reaction { reactant: cs[a].clone(), product: cs[b].clone() },
                    Reaction { reactant: cs[c].clone(), product: cs[d].clone() },
                ],
            };
            push_unique(&mut out, &mut seen, net);
        }
    }
    out
}

/// The corpus for a bound and optional shape filter, in deterministic order.
pub fn corpus(max_coeff: u64, shape: Option<ShapeTag>) -> Vec<ReactionNetwork> {
    let mut out = Vec::new();
    let include = |tag: ShapeTag| shape.map_or(true, |s| s == tag);
    if include(ShapeTag::OneSpecies) {
        out.extend(one_species_networks(max_coeff));
    }
    if include(ShapeTag::TwoIrrev) {
        out.extend(two_species_two_irrev(max_coeff));
    }
    if include(ShapeTag::TwoSpeciesRevPlusIrrev) {
        out.extend(two_species_rev_plus_irrev(max_coeff));
    }
    if include(ShapeTag::TwoSpeciesTwoRev) {
        out.extend(two_species_two_rev(max_coeff));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::detect_shape;
    use crate::netparse::validate;

    #[test]
    fn complexes_count_and_order() {
        let cs = complexes(2, 3);
        assert_eq!(cs.len(), 16);
        assert!(cs[0].is_zero());
    }

    #[test]
    fn one_species_bound_one() {
        // Reactions 0 -> A and A -> 0: three nonempty subsets.
        let nets = one_species_networks(1);
        assert_eq!(nets.len(), 3);
        for n in &nets {
            assert!(validate(n).is_empty(), "{n}");
            assert_eq!(detect_shape(n).tag, ShapeTag::OneSpecies);
        }
    }

    #[test]
    fn rev_plus_irrev_shapes_are_valid() {
        let nets = two_species_rev_plus_irrev(1);
        assert!(!nets.is_empty());
        for n in &nets {
            assert!(validate(n).is_empty(), "{n}");
            assert_eq!(crate::classify::reversible_pairs(n).len(), 1, "{n}");
            assert_eq!(detect_shape(n).tag, ShapeTag::TwoSpeciesRevPlusIrrev, "{n}");
        }
    }

    #[test]
    fn dedup_is_permutation_aware() {
        // A <-> B plus B -> A's mirror would double-count without dedup: the
        // bound-1 rev+irrev corpus must not contain two networks equal up to
        // swapping A and B.
        let nets = two_species_rev_plus_irrev(1);
        let mut keys = BTreeSet::new();
        for n in &nets {
            assert!(keys.insert(canonical_key(n)));
        }
    }

    #[test]
    fn two_rev_networks_have_two_pairs() {
        let nets = two_species_two_rev(1);
        for n in &nets {
            assert!(validate(n).is_empty(), "{n}");
            assert_eq!(crate::classify::reversible_pairs(n).len(), 2, "{n}");
        }
    }
}
