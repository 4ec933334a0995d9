//! Text grammar and exact data model for reaction networks.
//!
//! A network is a list of reactions separated by `;` or newlines. Each
//! reaction is `<complex> ARROW <complex>` with `ARROW` one of `->`, `<-`,
//! `<->`; a complex is `0` or a `+`-separated list of `[<uint>]<species>`
//! terms, e.g. `2A + B`. Species tokens are case-sensitive, start with an
//! uppercase letter, and are ordered by first appearance. `<->` expands to
//! two mutually reverse stored reactions; `<-` is normalized by swapping
//! sides. Multiple networks in one file are separated by lines containing
//! only `---`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("line {line}, column {col}: diagonal reaction (reactant equals product)")]
    Diagonal { line: usize, col: usize },
    #[error("line {line}, column {col}: duplicate reaction")]
    Duplicate { line: usize, col: usize },
    #[error("no reactions")]
    NoReactions,
}

/// A species, identified by position in [`ReactionNetwork::species`].
pub type SpeciesId = usize;

/// A formal nonnegative-integer combination of species. Only nonzero
/// coefficients are stored; the empty complex is `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Complex {
    coeffs: BTreeMap<SpeciesId, u64>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SpeciesId, u64)>) -> Self {
        let mut c = Complex::zero();
        for (s, k) in terms {
            c.add_term(s, k);
        }
        c
    }

    pub fn add_term(&mut self, species: SpeciesId, coeff: u64) {
        if coeff > 0 {
            *self.coeffs.entry(species).or_insert(0) += coeff;
        }
    }

    pub fn coeff(&self, species: SpeciesId) -> u64 {
        self.coeffs.get(&species).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in species order.
    pub fn terms(&self) -> impl Iterator<Item = (SpeciesId, u64)> + '_ {
        self.coeffs.iter().map(|(&s, &k)| (s, k))
    }

    /// Drop every species not in `keep` (restriction of Definition 3.1).
    pub fn restricted(&self, keep: &dyn Fn(SpeciesId) -> bool) -> Complex {
        Complex {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(s, _)| keep(**s))
                .map(|(&s, &k)| (s, k))
                .collect(),
        }
    }

    /// Rewrite species ids through `map`; ids mapped to `None` are dropped.
    pub fn relabeled(&self, map: &dyn Fn(SpeciesId) -> Option<SpeciesId>) -> Complex {
        let mut c = Complex::zero();
        for (s, k) in self.terms() {
            if let Some(t) = map(s) {
                c.add_term(t, k);
            }
        }
        c
    }
}

/// An ordered pair of distinct complexes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Reaction {
    pub reactant: Complex,
    pub product: Complex,
}

impl Reaction {
    pub fn reversed(&self) -> Reaction {
        Reaction {
            reactant: self.product.clone(),
            product: self.reactant.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionNetwork {
    /// Species names in order of first appearance.
    pub species: Vec<String>,
    pub reactions: Vec<Reaction>,
}

impl ReactionNetwork {
    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    /// Index of the stored reverse of reaction `k`, if present.
    pub fn reverse_partner(&self, k: usize) -> Option<usize> {
        let rev = self.reactions[k].reversed();
        self.reactions.iter().position(|r| *r == rev)
    }

    /// Reaction vector y' - y of reaction `k`, indexed by species.
    pub fn reaction_vector(&self, k: usize) -> Vec<i64> {
        let r = &self.reactions[k];
        (0..self.num_species())
            .map(|s| r.product.coeff(s) as i64 - r.reactant.coeff(s) as i64)
            .collect()
    }

    pub fn format_complex(&self, c: &Complex) -> String {
        if c.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(SpeciesId, u64)> = c.terms().collect();
        terms.sort_by(|a, b| self.species[a.0].cmp(&self.species[b.0]));
        terms
            .into_iter()
            .map(|(s, k)| {
                if k == 1 {
                    self.species[s].clone()
                } else {
                    format!("{k}{}", self.species[s])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn format_reaction(&self, k: usize) -> String {
        let r = &self.reactions[k];
        format!(
            "{} -> {}",
            self.format_complex(&r.reactant),
            self.format_complex(&r.product)
        )
    }
}

impl fmt::Display for ReactionNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match format_network(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str("<empty network>"),
        }
    }
}

/// Structural equality up to reaction order: same species names in the same
/// order and the same set of reactions. `format_network` may reorder a
/// reversible pair's partner next to it, so parse-format round-trips are
/// compared with this rather than `==`.
pub fn structurally_equal(a: &ReactionNetwork, b: &ReactionNetwork) -> bool {
    if a.species != b.species {
        return false;
    }
    let mut ra = a.reactions.clone();
    let mut rb = b.reactions.clone();
    ra.sort();
    rb.sort();
    ra == rb
}

/// Split a batch file into `---`-separated network blocks.
pub fn split_blocks(text: &str) -> Vec<String> {
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            blocks.push(String::new());
        } else {
            let cur = blocks.last_mut().unwrap();
            cur.push_str(line);
            cur.push('\n');
        }
    }
    blocks.retain(|b| !b.trim().is_empty());
    blocks
}

#[derive(Clone, Copy, PartialEq)]
enum Arrow {
    Right,
    Left,
    Both,
}

pub fn parse_network(text: &str) -> Result<ReactionNetwork, NetError> {
    let mut species: Vec<String> = Vec::new();
    let mut reactions: Vec<Reaction> = Vec::new();
    let mut saw_statement = false;

    for (line_ix, line) in text.lines().enumerate() {
        let line_no = line_ix + 1;
        let mut col_base = 1;
        for stmt in line.split(';') {
            let stmt_col = col_base;
            col_base += stmt.chars().count() + 1;
            if stmt.trim().is_empty() {
                continue;
            }
            saw_statement = true;
            let (reactant, arrow, product) =
                parse_statement(stmt, line_no, stmt_col, &mut species)?;
            let (lhs, rhs) = match arrow {
                Arrow::Left => (product, reactant),
                _ => (reactant, product),
            };
            if lhs == rhs {
                return Err(NetError::Diagonal {
                    line: line_no,
                    col: stmt_col + leading_ws(stmt),
                });
            }
            let mut push = |r: Reaction| {
                if reactions.contains(&r) {
                    return Err(NetError::Duplicate {
                        line: line_no,
                        col: stmt_col + leading_ws(stmt),
                    });
                }
                reactions.push(r);
                Ok(())
            };
            let fwd = Reaction {
                reactant: lhs,
                product: rhs,
            };
            if arrow == Arrow::Both {
                let rev = fwd.reversed();
                push(fwd)?;
                push(rev)?;
            } else {
                push(fwd)?;
            }
        }
    }
    if !saw_statement {
        return Err(NetError::Syntax {
            line: 1,
            col: 1,
            msg: "empty input: expected at least one reaction".into(),
        });
    }
    Ok(ReactionNetwork { species, reactions })
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

/// Parse one `<complex> ARROW <complex>` statement.
fn parse_statement(
    stmt: &str,
    line: usize,
    col0: usize,
    species: &mut Vec<String>,
) -> Result<(Complex, Arrow, Complex), NetError> {
    // Locate the arrow. `<->` must be matched before its substrings.
    let chars: Vec<char> = stmt.chars().collect();
    let mut arrow: Option<(usize, usize, Arrow)> = None; // (start, len, kind)
    let mut i = 0;
    while i < chars.len() {
        let kind = if chars[i..].starts_with(&['<', '-', '>']) {
            Some((3, Arrow::Both))
        } else if chars[i..].starts_with(&['-', '>']) {
            Some((2, Arrow::Right))
        } else if chars[i..].starts_with(&['<', '-']) {
            Some((2, Arrow::Left))
        } else {
            None
        };
        if let Some((len, k)) = kind {
            if arrow.is_some() {
                return Err(NetError::Syntax {
                    line,
                    col: col0 + i,
                    msg: "more than one arrow in reaction".into(),
                });
            }
            arrow = Some((i, len, k));
            i += len;
        } else {
            i += 1;
        }
    }
    let (start, len, kind) = arrow.ok_or_else(|| NetError::Syntax {
        line,
        col: col0 + leading_ws(stmt),
        msg: "expected an arrow (`->`, `<-`, or `<->`)".into(),
    })?;
    let lhs: String = chars[..start].iter().collect();
    let rhs: String = chars[start + len..].iter().collect();
    let reactant = parse_complex(&lhs, line, col0, species)?;
    let product = parse_complex(&rhs, line, col0 + start + len, species)?;
    Ok((reactant, kind, product))
}

/// Parse a complex: `0` or `+`-separated `[<uint>]<species>` terms.
fn parse_complex(
    text: &str,
    line: usize,
    col0: usize,
    species: &mut Vec<String>,
) -> Result<Complex, NetError> {
    let syntax = |off: usize, msg: String| NetError::Syntax {
        line,
        col: col0 + off,
        msg,
    };
    if text.trim().is_empty() {
        return Err(syntax(
            leading_ws(text),
            "expected a complex (`0` or e.g. `2A + B`)".into(),
        ));
    }
    if text.trim() == "0" {
        return Ok(Complex::zero());
    }
    let mut complex = Complex::zero();
    let mut off = 0;
    for term in text.split('+') {
        let term_off = off;
        off += term.chars().count() + 1;
        let inner = term.trim();
        let inner_off = term_off + leading_ws(term);
        if inner.is_empty() {
            return Err(syntax(term_off, "empty term in complex".into()));
        }
        let digits: String = inner.chars().take_while(|c| c.is_ascii_digit()).collect();
        let rest = &inner[digits.len()..];
        let coeff: u64 = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| {
                syntax(inner_off, format!("coefficient too large: {digits:?}"))
            })?
        };
        if rest.is_empty() {
            return Err(syntax(
                inner_off,
                format!("expected a species name after {digits:?}"),
            ));
        }
        if !rest.chars().next().unwrap().is_ascii_uppercase()
            || !rest.chars().all(|c| c.is_ascii_alphanumeric())
        {
            return Err(syntax(
                inner_off + digits.chars().count(),
                format!(
                    "invalid species name {rest:?} (uppercase letter then alphanumerics)"
                ),
            ));
        }
        if coeff == 0 {
            return Err(syntax(
                inner_off,
                format!("zero coefficient on species {rest:?}"),
            ));
        }
        let id = match species.iter().position(|s| s == rest) {
            Some(id) => id,
            None => {
                species.push(rest.to_string());
                species.len() - 1
            }
        };
        complex.add_term(id, coeff);
    }
    Ok(complex)
}

/// Render a network in the input grammar, re-collapsing reversible pairs to
/// `<->` (the reverse partner is folded into its mate's statement).
pub fn format_network(net: &ReactionNetwork) -> Result<String, NetError> {
    if net.reactions.is_empty() {
        return Err(NetError::NoReactions);
    }
    let mut consumed = vec![false; net.reactions.len()];
    let mut parts = Vec::new();
    for k in 0..net.reactions.len() {
        if consumed[k] {
            continue;
        }
        let r = &net.reactions[k];
        let arrow = match net.reverse_partner(k) {
            Some(j) if !consumed[j] => {
                consumed[j] = true;
                "<->"
            }
            _ => "->",
        };
        parts.push(format!(
            "{} {arrow} {}",
            net.format_complex(&r.reactant),
            net.format_complex(&r.product)
        ));
    }
    Ok(parts.join("; "))
}

/// Invariant check: returns human-readable violations (empty = valid).
pub fn validate(net: &ReactionNetwork) -> Vec<String> {
    let mut out = Vec::new();
    for (i, name) in net.species.iter().enumerate() {
        let ok = name
            .chars()
            .next()
            .map(|c| c.is_ascii_uppercase())
            .unwrap_or(false)
            && name.chars().all(|c| c.is_ascii_alphanumeric());
        if !ok {
            out.push(format!("invalid species name {name:?}"));
        }
        let used = net
            .reactions
            .iter()
            .any(|r| r.reactant.coeff(i) > 0 || r.product.coeff(i) > 0);
        if !used {
            out.push(format!("species {name} appears in no reaction"));
        }
    }
    for (k, r) in net.reactions.iter().enumerate() {
        if r.reactant == r.product {
            out.push(format!("diagonal reaction: {}", net.format_reaction(k)));
        }
        if net.reactions[..k].contains(r) {
            out.push(format!("duplicate reaction: {}", net.format_reaction(k)));
        }
        for (s, _) in r.reactant.terms().chain(r.product.terms()) {
            if s >= net.species.len() {
                out.push(format!("reaction {k} references unknown species id {s}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(text: &str) -> ReactionNetwork {
        parse_network(text).unwrap()
    }

    #[test]
    fn parses_reversible_and_irreversible() {
        // 0 <-> A+B expands to two reactions; three reactions total.
        let n = net("0 <-> A + B; 2A + B -> 3A + 2B");
        assert_eq!(n.species, vec!["A", "B"]);
        assert_eq!(n.num_reactions(), 3);
        assert_eq!(n.reverse_partner(0), Some(1));
        assert_eq!(n.reverse_partner(1), Some(0));
        assert_eq!(n.reverse_partner(2), None);
        assert_eq!(n.reaction_vector(2), vec![1, 1]);
        assert!(validate(&n).is_empty());
    }

    #[test]
    fn left_arrow_swaps_sides() {
        let a = net("0 <- A");
        let b = net("A -> 0");
        assert_eq!(a.reactions, b.reactions);
        assert_eq!(a.species, b.species);
    }

    #[test]
    fn whitespace_insensitive() {
        assert!(structurally_equal(
            &net("2A+B->3A+2B"),
            &net("  2A + B   ->  3A + 2B ")
        ));
    }

    #[test]
    fn newlines_separate_reactions() {
        let n = net("0 -> A\nA -> 2A");
        assert_eq!(n.num_reactions(), 2);
    }

    #[test]
    fn rejects_missing_arrow() {
        assert!(matches!(
            parse_network("0"),
            Err(NetError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_diagonal() {
        assert!(matches!(
            parse_network("A -> A"),
            Err(NetError::Diagonal { line: 1, col: 1 })
        ));
        // Also diagonal after expansion: A + A vs 2A.
        assert!(matches!(
            parse_network("A + A -> 2A"),
            Err(NetError::Diagonal { .. })
        ));
    }

    #[test]
    fn rejects_duplicates() {
        assert!(matches!(
            parse_network("0 -> A; 0 -> A"),
            Err(NetError::Duplicate { line: 1, .. })
        ));
        // <-> followed by one of its halves is also a duplicate.
        assert!(matches!(
            parse_network("0 <-> A; A -> 0"),
            Err(NetError::Duplicate { .. })
        ));
    }

    #[test]
    fn syntax_error_positions() {
        match parse_network("0 -> A;\n2A + -> B") {
            Err(NetError::Syntax { line, col, .. }) => {
                assert_eq!(line, 2);
                assert!(col >= 5);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse_network("a -> B"),
            Err(NetError::Syntax { .. })
        ));
        assert!(matches!(
            parse_network("0A -> B"),
            Err(NetError::Syntax { .. })
        ));
        assert!(matches!(
            parse_network("A -> B <- C"),
            Err(NetError::Syntax { .. })
        ));
    }

    #[test]
    fn format_round_trips() {
        for text in [
            "0 <-> A + B; 2A + B -> 3A + 2B",
            "2B <-> A + B; 3A -> 2A + B",
            "0 -> A",
            "A -> 2A; 3A <- 2A",
        ] {
            let n = net(text);
            let printed = format_network(&n).unwrap();
            let reparsed = net(&printed);
            assert!(structurally_equal(&n, &reparsed), "{text} -> {printed}");
        }
        assert_eq!(
            format_network(&net("2B <-> A+B; 3A -> 2A+B")).unwrap(),
            "2B <-> A + B; 3A -> 2A + B"
        );
        assert_eq!(format_network(&net("0 -> A")).unwrap(), "0 -> A");
        assert_eq!(
            format_network(&ReactionNetwork {
                species: vec![],
                reactions: vec![]
            }),
            Err(NetError::NoReactions)
        );
    }

    #[test]
    fn validate_reports_violations() {
        let mut n = net("0 -> A + B");
        n.reactions.push(n.reactions[0].clone());
        let dup = validate(&n);
        assert!(dup.iter().any(|v| v.contains("duplicate")));
        let mut n = net("0 -> A");
        n.reactions[0].product = n.reactions[0].reactant.clone();
        let viol = validate(&n);
        assert!(viol.iter().any(|v| v.contains("diagonal")));
        assert!(viol.iter().any(|v| v.contains("appears in no reaction")));
    }

    #[test]
    fn batch_blocks() {
        let blocks = split_blocks("0 -> A\n---\nA -> B\nB -> A\n---\n");
        assert_eq!(blocks.len(), 2);
        assert_eq!(net(&blocks[1]).num_reactions(), 2);
    }

    #[test]
    fn repeated_species_in_a_term_sum() {
        let n = net("A + A + B -> 3A");
        assert_eq!(n.reactions[0].reactant.coeff(0), 2);
    }
}
