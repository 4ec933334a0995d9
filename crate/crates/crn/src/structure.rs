//! Stoichiometric linear algebra and the combinatorial structures the
//! classification theorems dispatch on: embedded networks, arrow diagrams of
//! 1-species networks, and box diagrams of 2-reaction networks.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::netparse::{Complex, Reaction, ReactionNetwork, SpeciesId};
use crate::rat::{int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructError {
    #[error("operation requires a 1-species network, got {0} species")]
    NotOneSpecies(usize),
    #[error("box diagram requires exactly 2 reactions, got {0}")]
    NotTwoReactions(usize),
    #[error("box diagram undefined: reactant vectors agree in coordinate {0}")]
    DegenerateBox(String),
}

/// Stoichiometric matrix with its rank and an exact basis of conservation
/// laws (the left kernel of the matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoichData {
    /// s x r integer matrix; column k is the reaction vector of reaction k.
    pub matrix: Vec<Vec<i64>>,
    pub rank: usize,
    /// Rational s-vectors w with w^T * matrix = 0; together with `rank` they
    /// account for all s dimensions.
    pub conservation_basis: Vec<Vec<Rat>>,
}

pub fn stoich_data(net: &ReactionNetwork) -> StoichData {
    let s = net.num_species();
    let r = net.num_reactions();
    let mut matrix = vec![vec![0i64; r]; s];
    for k in 0..r {
        let v = net.reaction_vector(k);
        for (i, row) in matrix.iter_mut().enumerate() {
            row[k] = v[i];
        }
    }
    // Conservation laws solve Gamma^T w = 0: row-reduce the r x s transpose.
    let mut a: Vec<Vec<Rat>> = (0..r)
        .map(|k| (0..s).map(|i| int(matrix[i][k])).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..s {
        let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].clone().recip();
        for x in &mut a[row] {
            *x = &*x * &inv;
        }
        for i in 0..r {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..s {
                    let sub = &a[row][j] * &f;
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == r {
            break;
        }
    }
    let rank = pivots.len();
    let mut conservation_basis = Vec::new();
    for free in (0..s).filter(|c| !pivots.contains(c)) {
        let mut w = vec![int(0); s];
        w[free] = int(1);
        for (i, &piv) in pivots.iter().enumerate() {
            w[piv] = -a[i][free].clone();
        }
        conservation_basis.push(w);
    }
    StoichData {
        matrix,
        rank,
        conservation_basis,
    }
}

/// Restriction of Definition 3.1: zero out the stoichiometric coefficients of
/// species outside `keep`, drop reactions that become trivial, and keep the
/// first occurrence of any duplicates.
pub fn restrict_reactions(reactions: &[Reaction], keep: &BTreeSet<SpeciesId>) -> Vec<Reaction> {
    let mut out: Vec<Reaction> = Vec::new();
    for r in reactions {
        let keep_fn = |s: SpeciesId| keep.contains(&s);
        let restricted = Reaction {
            reactant: r.reactant.restricted(&keep_fn),
            product: r.product.restricted(&keep_fn),
        };
        if restricted.reactant != restricted.product && !out.contains(&restricted) {
            out.push(restricted);
        }
    }
    out
}

/// Embedded network of Definition 3.2: remove `drop_reactions`, restrict the
/// rest to the species outside `drop_species`, and prune the species list to
/// those still appearing (original order and names kept).
pub fn embedded_network(
    net: &ReactionNetwork,
    drop_reactions: &BTreeSet<usize>,
    drop_species: &BTreeSet<SpeciesId>,
) -> ReactionNetwork {
    let kept: Vec<Reaction> = net
        .reactions
        .iter()
        .enumerate()
        .filter(|(k, _)| !drop_reactions.contains(k))
        .map(|(_, r)| r.clone())
        .collect();
    let keep: BTreeSet<SpeciesId> = (0..net.num_species())
        .filter(|s| !drop_species.contains(s))
        .collect();
    let restricted = restrict_reactions(&kept, &keep);
    // Prune unused species and renumber.
    let mut used: BTreeSet<SpeciesId> = BTreeSet::new();
    for r in &restricted {
        used.extend(r.reactant.terms().map(|(s, _)| s));
        used.extend(r.product.terms().map(|(s, _)| s));
    }
    let order: Vec<SpeciesId> = used.into_iter().collect();
    let renumber = |s: SpeciesId| order.iter().position(|&t| t == s);
    let reactions = restricted
        .iter()
        .map(|r| Reaction {
            reactant: r.reactant.relabeled(&renumber),
            product: r.product.relabeled(&renumber),
        })
        .collect();
    ReactionNetwork {
        species: order.iter().map(|&s| net.species[s].clone()).collect(),
        reactions,
    }
}

/// Keep only the reactions at `indices` (species list untouched).
pub fn subnetwork(net: &ReactionNetwork, indices: &[usize]) -> ReactionNetwork {
    ReactionNetwork {
        species: net.species.clone(),
        reactions: indices.iter().map(|&k| net.reactions[k].clone()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowDir {
    Right,
    Left,
    Both,
}

/// Arrow diagram of a 1-species network (Definition 2.8): one entry per
/// distinct reactant, in increasing stoichiometric coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDiagram {
    /// Distinct reactant coefficients, ascending.
    pub reactants: Vec<u64>,
    pub entries: Vec<ArrowDir>,
}

fn one_species_coeff(c: &Complex) -> u64 {
    c.coeff(0)
}

pub fn arrow_diagram(net: &ReactionNetwork) -> Result<ArrowDiagram, StructError> {
    if net.num_species() != 1 {
        return Err(StructError::NotOneSpecies(net.num_species()));
    }
    let mut reactants: Vec<u64> = net
        .reactions
        .iter()
        .map(|r| one_species_coeff(&r.reactant))
        .collect();
    reactants.sort_unstable();
    reactants.dedup();
    let entries = reactants
        .iter()
        .map(|&a| {
            let mut up = false;
            let mut down = false;
            for r in &net.reactions {
                if one_species_coeff(&r.reactant) == a {
                    if one_species_coeff(&r.product) > a {
                        up = true;
                    } else {
                        down = true;
                    }
                }
            }
            match (up, down) {
                (true, false) => ArrowDir::Right,
                (false, true) => ArrowDir::Left,
                _ => ArrowDir::Both,
            }
        })
        .collect();
    Ok(ArrowDiagram { reactants, entries })
}

/// Definition 2.9: exactly `t + 1` reactions whose arrow diagram strictly
/// alternates between single directions.
pub fn is_t_alternating(net: &ReactionNetwork, t: usize) -> Result<bool, StructError> {
    let diagram = arrow_diagram(net)?;
    if net.num_reactions() != t + 1 || diagram.entries.len() != t + 1 {
        return Ok(false);
    }
    Ok(diagram.entries.windows(2).all(|w| {
        matches!(
            w,
            [ArrowDir::Right, ArrowDir::Left] | [ArrowDir::Left, ArrowDir::Right]
        )
    }))
}

/// First (in lexicographic reaction-index order) `t`-alternating subnetwork,
/// as reaction indices into `net` plus the subnetwork itself. Exhaustive over
/// subsets of size `t + 1`; fine at this scope (r stays small).
pub fn find_alternating_subnetwork(
    net: &ReactionNetwork,
    t: usize,
) -> Result<Option<(Vec<usize>, ReactionNetwork)>, StructError> {
    if net.num_species() != 1 {
        return Err(StructError::NotOneSpecies(net.num_species()));
    }
    let r = net.num_reactions();
    let size = t + 1;
    if size > r {
        return Ok(None);
    }
    let mut indices: Vec<usize> = (0..size).collect();
    loop {
        let sub = subnetwork(net, &indices);
        if is_t_alternating(&sub, t)? {
            return Ok(Some((indices, sub)));
        }
        // Next lexicographic combination.
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if indices[i] != i + r - size {
                break;
            }
        }
        indices[i] += 1;
        for j in i + 1..size {
            indices[j] = indices[j - 1] + 1;
        }
    }
}

/// Box diagram of Definition 2.12 (possibly of a coordinate-pair projection):
/// the two reactant corners, the reaction vectors anchored there, and the
/// slope of the diagonal connecting the corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDiagram {
    pub corners: [[i64; 2]; 2],
    pub arrows: [[i64; 2]; 2],
    pub diagonal_slope: Rat,
}

/// Box diagram of a 2-species, 2-reaction network.
pub fn box_diagram(net: &ReactionNetwork) -> Result<BoxDiagram, StructError> {
    if net.num_species() != 2 {
        return Err(StructError::NotOneSpecies(net.num_species()));
    }
    box_diagram_for_pair(net, 0, 1)
}

/// Box diagram of the projection to the `(i, j)` coordinate plane, for a
/// 2-reaction network over any number of species.
pub fn box_diagram_for_pair(
    net: &ReactionNetwork,
    i: SpeciesId,
    j: SpeciesId,
) -> Result<BoxDiagram, StructError> {
    if net.num_reactions() != 2 {
        return Err(StructError::NotTwoReactions(net.num_reactions()));
    }
    let proj = |c: &Complex| [c.coeff(i) as i64, c.coeff(j) as i64];
    let y = proj(&net.reactions[0].reactant);
    let yt = proj(&net.reactions[1].reactant);
    for (axis, name) in [(0usize, &net.species[i]), (1, &net.species[j])] {
        if y[axis] == yt[axis] {
            return Err(StructError::DegenerateBox(name.clone()));
        }
    }
    let arrow = |k: usize| {
        let v = net.reaction_vector(k);
        [v[i], v[j]]
    };
    let slope = Rat::new((yt[1] - y[1]).into(), (yt[0] - y[0]).into());
    Ok(BoxDiagram {
        corners: [y, yt],
        arrows: [arrow(0), arrow(1)],
        diagonal_slope: slope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZigzagTag {
    Zigzag,
    None,
}

/// Zigzag recognition for Proposition 2.13(3), as sign conditions derived
/// once from the four depicted patterns.
///
/// Write d = ytilde - y for the corner displacement and let v, w be the
/// arrows at y and ytilde. In every depicted pattern each arrow crosses, for
/// both axes, the box side near its own corner (never the far side), and the
/// two arrows leave on opposite sides of the diagonal. Componentwise that is
/// captured by
///
/// ```text
/// t = (sign(v_A) * sign(d_A), sign(v_B) * sign(d_B))
/// u = (-sign(w_A) * sign(d_A), -sign(w_B) * sign(d_B))
/// ```
///
/// being equal and in {(+,-), (-,+)}: checking the four figures left to
/// right gives t = u = (+,-), (-,+), (-,+), (+,-). An arrow parallel to a
/// box side produces a zero sign; the cited figures leave such boundary
/// cases undepicted and they are classified as None here.
pub fn zigzag_class(diagram: &BoxDiagram) -> (ZigzagTag, Rat) {
    let d = [
        diagram.corners[1][0] - diagram.corners[0][0],
        diagram.corners[1][1] - diagram.corners[0][1],
    ];
    let sgn = |x: i64| x.signum();
    let t = [
        sgn(diagram.arrows[0][0]) * sgn(d[0]),
        sgn(diagram.arrows[0][1]) * sgn(d[1]),
    ];
    let u = [
        -sgn(diagram.arrows[1][0]) * sgn(d[0]),
        -sgn(diagram.arrows[1][1]) * sgn(d[1]),
    ];
    let tag = if t == u && (t == [1, -1] || t == [-1, 1]) {
        ZigzagTag::Zigzag
    } else {
        ZigzagTag::None
    };
    (tag, diagram.diagonal_slope.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netparse::parse_network;

    fn net(text: &str) -> ReactionNetwork {
        parse_network(text).unwrap()
    }

    #[test]
    fn stoich_of_worked_example() {
        // 0 <-> A+B; 2A+B -> 3A+2B: rank 1, S = span{(1,1)}.
        let d = stoich_data(&net("0 <-> A + B; 2A + B -> 3A + 2B"));
        assert_eq!(d.rank, 1);
        assert_eq!(d.matrix, vec![vec![1, -1, 1], vec![1, -1, 1]]);
        assert_eq!(d.conservation_basis, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn stoich_single_reaction() {
        let d = stoich_data(&net("A + B -> 3A + C"));
        assert_eq!(d.matrix, vec![vec![2], vec![-1], vec![1]]);
        assert_eq!(d.rank, 1);
        assert_eq!(d.conservation_basis.len(), 2);
    }

    #[test]
    fn stoich_closed_cycle() {
        let d = stoich_data(&net("A -> B; B -> A"));
        assert_eq!(d.rank, 1);
        assert_eq!(d.conservation_basis, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn conservation_basis_annihilates_reaction_vectors() {
        for text in [
            "0 <-> A + B; 2A + B -> 3A + 2B",
            "A + B -> 3A + C",
            "2C + 2D <-> A + B + C + D; 2A + 2B + C + D -> 3A + 3B",
        ] {
            let n = net(text);
            let d = stoich_data(&n);
            assert_eq!(d.rank + d.conservation_basis.len(), n.num_species());
            for w in &d.conservation_basis {
                for k in 0..n.num_reactions() {
                    let dot: Rat = n
                        .reaction_vector(k)
                        .iter()
                        .zip(w)
                        .map(|(&v, wi)| wi * int(v))
                        .sum();
                    assert!(dot.is_zero(), "{text}");
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        // {A+B -> A+C} restricted to {A,C} gives {A -> A+C}.
        let n = net("A + B -> A + C");
        let keep: BTreeSet<_> = [0, 2].into();
        let r = restrict_reactions(&n.reactions, &keep);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].reactant.coeff(0), 1);
        assert_eq!(r[0].reactant.coeff(1), 0);
        assert_eq!(r[0].product.coeff(2), 1);
        // {A+B -> A} restricted to {A} is empty (A -> A is trivial).
        let n = net("A + B -> A");
        let r = restrict_reactions(&n.reactions, &[0].into());
        assert!(r.is_empty());
        // Restriction to all species is the identity.
        let n = net("0 <-> A + B; 2A + B -> 3A + 2B");
        let all: BTreeSet<_> = (0..n.num_species()).collect();
        assert_eq!(restrict_reactions(&n.reactions, &all), n.reactions);
    }

    #[test]
    fn restriction_is_idempotent() {
        let n = net("2B <-> A + B; 3A -> 2A + B");
        let keep: BTreeSet<_> = [1].into();
        let once = restrict_reactions(&n.reactions, &keep);
        assert_eq!(restrict_reactions(&once, &keep), once);
    }

    #[test]
    fn embedded_network_examples() {
        // Example network, drop species B: {0 <-> A, 2A -> 3A}.
        let n = net("0 <-> A + B; 2A + B -> 3A + 2B");
        let e = embedded_network(&n, &BTreeSet::new(), &[1].into());
        assert_eq!(e.species, vec!["A"]);
        assert!(crate::netparse::structurally_equal(
            &e,
            &net("0 <-> A; 2A -> 3A")
        ));
        // {2B <-> A+B, 3A -> 2A+B}, drop A: {0 -> B <-> 2B}.
        let n = net("2B <-> A + B; 3A -> 2A + B");
        let e = embedded_network(&n, &BTreeSet::new(), &[1].into());
        assert!(crate::netparse::structurally_equal(
            &e,
            &net("2B <-> B; 0 -> B")
        ));
        // Dropping nothing is the identity.
        let n = net("0 <-> A + B; 2A + B -> 3A + 2B");
        assert_eq!(embedded_network(&n, &BTreeSet::new(), &BTreeSet::new()), n);
    }

    #[test]
    fn arrow_diagram_examples() {
        // {0 <- A, A -> 2A}: single reactant A with both directions.
        let d = arrow_diagram(&net("0 <- A; A -> 2A")).unwrap();
        assert_eq!(d.entries, vec![ArrowDir::Both]);
        // {0 <- A, 2A -> 3A, 2A <- 3A}: (Left, Right, Left).
        let d = arrow_diagram(&net("0 <- A; 2A -> 3A; 2A <- 3A")).unwrap();
        assert_eq!(d.reactants, vec![1, 2, 3]);
        assert_eq!(
            d.entries,
            vec![ArrowDir::Left, ArrowDir::Right, ArrowDir::Left]
        );
        let d = arrow_diagram(&net("A -> 2A")).unwrap();
        assert_eq!(d.entries, vec![ArrowDir::Right]);
        assert!(matches!(
            arrow_diagram(&net("A -> B")),
            Err(StructError::NotOneSpecies(2))
        ));
    }

    #[test]
    fn alternating_checks() {
        assert!(is_t_alternating(&net("A -> 2A; 3A -> 2A"), 1).unwrap());
        assert!(is_t_alternating(&net("0 <-> A; 2A -> 3A"), 2).unwrap());
        assert!(!is_t_alternating(&net("0 <- A; A -> 2A"), 1).unwrap());
    }

    #[test]
    fn find_alternating_examples() {
        // {0 <- A -> 2A <-> 3A} has the 2-alternating {0 <- A, 2A <-> 3A}.
        let n = net("A -> 0; A -> 2A; 2A <-> 3A");
        let (ix, sub) = find_alternating_subnetwork(&n, 2).unwrap().unwrap();
        assert_eq!(ix, vec![0, 2, 3]);
        assert!(is_t_alternating(&sub, 2).unwrap());
        // {0 <-> A, 2A <- 3A} has none.
        let n = net("0 <-> A; 3A -> 2A");
        assert_eq!(find_alternating_subnetwork(&n, 2).unwrap(), None);
        // T+1 exceeding r gives none.
        assert_eq!(find_alternating_subnetwork(&net("A -> 2A"), 2).unwrap(), None);
    }

    #[test]
    fn box_diagram_examples() {
        // {A -> B, 2A+B -> 3A}: corners (1,0),(2,1); slope 1.
        let b = box_diagram(&net("A -> B; 2A + B -> 3A")).unwrap();
        assert_eq!(b.corners, [[1, 0], [2, 1]]);
        assert_eq!(b.arrows, [[-1, 1], [1, -1]]);
        assert_eq!(b.diagonal_slope, int(1));
        // {A+B -> 2A+2B, 2A -> B}: corners (1,1),(2,0); slope -1.
        let b = box_diagram(&net("A + B -> 2A + 2B; 2A -> B")).unwrap();
        assert_eq!(b.corners, [[1, 1], [2, 0]]);
        assert_eq!(b.diagonal_slope, int(-1));
        // Reactants sharing a coordinate: degenerate.
        assert!(matches!(
            box_diagram(&net("A -> 2A; A + B -> B")),
            Err(StructError::DegenerateBox(_))
        ));
    }

    #[test]
    fn zigzag_examples() {
        let b = box_diagram(&net("A -> B; 2A + B -> 3A")).unwrap();
        assert_eq!(zigzag_class(&b), (ZigzagTag::Zigzag, int(1)));
        // Both arrows on the same side of the diagonal: not a zigzag.
        let b = box_diagram(&net("A -> 2A + B; 2B -> A + 3B")).unwrap();
        assert_eq!(zigzag_class(&b).0, ZigzagTag::None);
        // Swapping the two species preserves the tag and inverts the slope.
        let b = box_diagram(&net("B -> A; 2B + A -> 3B")).unwrap();
        assert_eq!(zigzag_class(&b), (ZigzagTag::Zigzag, int(1)));
        // Translating both reactions by a common complex changes nothing.
        let b = box_diagram(&net("A + B -> 2B; 2A + 2B -> 3A + B")).unwrap();
        assert_eq!(zigzag_class(&b), (ZigzagTag::Zigzag, int(1)));
        // An arrow parallel to a box side is a boundary case: None.
        let b = box_diagram(&net("A -> 2A; 2A + B -> A")).unwrap();
        assert_eq!(zigzag_class(&b).0, ZigzagTag::None);
    }
}
