//! Property-based checks of the algebraic building blocks.

use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;

use crn::classify::classify;
use crn::netparse::{format_network, parse_network, Complex, Reaction, ReactionNetwork};
use crn::rat::{dyadic, int, is_positive, pow, rat, Rat};
use crn::realroots::gfamily::GFamily;
use crn::realroots::sturm::sturm_count;
use crn::realroots::{Interval, UniPoly};
use crn::structure::embedded_network;

fn species_names(n: usize) -> Vec<String> {
    ["A", "B", "C"].iter().take(n).map(|s| s.to_string()).collect()
}

/// A valid network from raw coefficient vectors: reactions whose sides
/// coincide are dropped, unused species are pruned.
fn build_network(species: usize, raw: Vec<(Vec<u64>, Vec<u64>)>) -> Option<ReactionNetwork> {
    let mut reactions = Vec::new();
    for (r, p) in raw {
        let reactant = Complex::from_terms(r.into_iter().enumerate().filter(|&(_, k)| k > 0));
        let product = Complex::from_terms(p.into_iter().enumerate().filter(|&(_, k)| k > 0));
        if reactant != product {
            let rx = Reaction { reactant, product };
            if !reactions.contains(&rx) {
                reactions.push(rx);
            }
        }
    }
    if reactions.is_empty() {
        return None;
    }
    let net = ReactionNetwork {
        species: species_names(species),
        reactions,
    };
    // Prune unused species by taking the trivial embedding.
    let pruned = embedded_network(&net, &BTreeSet::new(), &BTreeSet::new());
    (!pruned.species.is_empty()).then_some(pruned)
}

fn raw_reactions(species: usize) -> impl Strategy<Value = Vec<(Vec<u64>, Vec<u64>)>> {
    let side = prop::collection::vec(0u64..=3, species);
    prop::collection::vec((side.clone(), side), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Formatting is a fixpoint of parse∘format: the printed text of a
    /// parsed network re-parses and re-prints identically.
    #[test]
    fn format_parse_roundtrip(species in 1usize..=3, raw in raw_reactions(3)) {
        let raw: Vec<_> = raw
            .into_iter()
            .map(|(mut r, mut p)| { r.truncate(species); p.truncate(species); (r, p) })
            .collect();
        prop_assume!(build_network(species, raw.clone()).is_some());
        let net = build_network(species, raw).unwrap();
        let text = format_network(&net).unwrap();
        let parsed = parse_network(&text).unwrap();
        prop_assert_eq!(format_network(&parsed).unwrap(), text);
        prop_assert_eq!(parsed.num_reactions(), net.num_reactions());
    }

    /// Taking an embedded network is idempotent: embedding again with
    /// nothing dropped changes nothing.
    #[test]
    fn embedding_idempotent(
        species in 1usize..=3,
        raw in raw_reactions(3),
        drop_rx in prop::collection::btree_set(0usize..4, 0..=2),
        drop_sp in prop::collection::btree_set(0usize..3, 0..=1),
    ) {
        let raw: Vec<_> = raw
            .into_iter()
            .map(|(mut r, mut p)| { r.truncate(species); p.truncate(species); (r, p) })
            .collect();
        prop_assume!(build_network(species, raw.clone()).is_some());
        let net = build_network(species, raw).unwrap();
        let e = embedded_network(&net, &drop_rx, &drop_sp);
        let again = embedded_network(&e, &BTreeSet::new(), &BTreeSet::new());
        prop_assert_eq!(&again, &e);
    }

    /// The classifier's verdict does not depend on the stored species order.
    #[test]
    fn classification_is_permutation_invariant(raw in raw_reactions(2)) {
        prop_assume!(build_network(2, raw.clone()).is_some());
        let net = build_network(2, raw).unwrap();
        prop_assume!(net.num_species() == 2);
        let swap = |c: &Complex| c.relabeled(&|s| Some(1 - s));
        let swapped = ReactionNetwork {
            species: vec![net.species[1].clone(), net.species[0].clone()],
            reactions: net
                .reactions
                .iter()
                .map(|r| Reaction { reactant: swap(&r.reactant), product: swap(&r.product) })
                .collect(),
        };
        prop_assert_eq!(classify(&swapped).verdict, classify(&net).verdict);
    }

    /// The anchored perturbation keeps its anchor root in place, and the
    /// tilt rate of the derivative there matches the closed form and is
    /// strictly positive.
    #[test]
    fn gfamily_perturbation_laws(
        p1 in 1usize..=3,
        dp in 1usize..=2,
        n1 in 0usize..=2,
        dn in 1usize..=2,
        t in 1i64..=3,
        bj in 1i64..=7,
        lnum in 1i64..=6,
        lam_k in 2u32..=8,
        lam_sign in prop::bool::ANY,
    ) {
        let (p2, n2) = (p1 + dp, n1 + dn);
        let t = int(t);
        let b = &t * rat(bj, 8);
        // One linear condition g(b) = 0 fixes m for a chosen l.
        let h0 = pow(&(&t - &b), n2 as i64);
        let h1 = pow(&b, p1 as i64) * pow(&(&t - &b), n1 as i64);
        let h2 = pow(&b, p2 as i64);
        let l = rat(lnum, 2);
        let m = (&l * &h1 - &h0) / &h2;
        prop_assume!(is_positive(&m));
        let fam = GFamily::new(int(1), t.clone(), l, m, p1, p2, n1, n2).unwrap();
        prop_assert!(fam.expand().eval(&b).is_zero());

        let lambda = dyadic(lam_k) * int(if lam_sign { 1 } else { -1 });
        if let Ok(tilted) = fam.perturb(&b, &lambda) {
            prop_assert!(tilted.expand().eval(&b).is_zero());
        }

        let slope = fam.lambda_slope(&b).unwrap();
        let closed = pow(&b, (p1 + p2 - 1) as i64)
            * pow(&(&t - &b), n1 as i64)
            * int((p2 - p1) as i64)
            + int(n1 as i64) * pow(&b, (p1 + p2) as i64) * pow(&(&t - &b), n1 as i64 - 1);
        prop_assert_eq!(&slope, &closed);
        prop_assert!(is_positive(&slope));
    }

    /// Normalizing mu away is an exact reparametrization: it round-trips,
    /// and the expansions agree under z -> mu z.
    #[test]
    fn gfamily_mu_normalization(
        p1 in 1usize..=3,
        dp in 1usize..=2,
        n1 in 0usize..=2,
        dn in 1usize..=2,
        mu_num in 1i64..=5,
        mu_den in 1i64..=5,
        t in 1i64..=3,
        l in 1i64..=4,
        m in 1i64..=4,
        z_num in 0i64..=8,
    ) {
        let mu = rat(mu_num, mu_den);
        let fam = GFamily::new(
            mu.clone(), int(t), int(l), int(m), p1, p1 + dp, n1, n1 + dn,
        ).unwrap();
        let (norm, mu_out) = fam.normalize_mu();
        prop_assert_eq!(&mu_out, &mu);
        prop_assert_eq!(norm.restore_mu(&mu).unwrap(), fam.clone());
        let z = rat(z_num, 4);
        prop_assert_eq!(norm.expand().eval(&(&mu * &z)), fam.expand().eval(&z));
    }

    /// Sturm counting agrees with the known root set of a factored cubic.
    #[test]
    fn sturm_matches_known_roots(
        r1 in -6i64..=6,
        r2 in -6i64..=6,
        r3 in -6i64..=6,
        d in 1i64..=3,
        lo3 in -21i64..=18,
        width3 in 1i64..=12,
    ) {
        let roots: BTreeSet<Rat> =
            [r1, r2, r3].iter().map(|&n| rat(n, d)).collect();
        let mut p = UniPoly::one();
        for r in &roots {
            p = p.mul(&UniPoly::linear(-r.clone(), int(1)));
        }
        let lo = rat(lo3, 3) + rat(1, 7); // 1/7 offset: endpoints never roots
        let hi = &lo + rat(width3, 3);
        let expected = roots.iter().filter(|r| **r > lo && **r < hi).count();
        let counted = sturm_count(&p, &Interval::open(lo, hi)).unwrap();
        prop_assert_eq!(counted, expected);
    }
}
