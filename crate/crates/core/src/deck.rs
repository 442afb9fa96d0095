//! Decks of vertex-deleted subgraphs and multiset bookkeeping over cards.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::canon::{canonical_form, is_isomorphic, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modular::nondegenerate_skeleton;

/// The deck `D(G)`: the `n` cards of an `n`-vertex graph, each up to
/// isomorphism, kept as a sorted code list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Deck {
    n: usize,
    cards: Vec<CanonicalCode>,
}

impl Deck {
    /// Builds a deck from cards in any order. Every card must have
    /// `cards.len() - 1` vertices.
    pub fn from_codes(mut cards: Vec<CanonicalCode>) -> Result<Deck> {
        let n = cards.len();
        if n == 0 {
            return Err(Error::Precondition("a deck needs at least one card".into()));
        }
        if let Some(bad) = cards.iter().find(|c| c.order() != n - 1) {
            return Err(Error::Integrity(format!(
                "card {bad} has {} vertices but a deck of {n} cards needs {}",
                bad.order(),
                n - 1
            )));
        }
        cards.sort_unstable();
        Ok(Deck { n, cards })
    }

    pub fn from_graphs(cards: &[Graph]) -> Result<Deck> {
        Deck::from_codes(cards.iter().map(canonical_form).collect())
    }

    /// Order of the graph the deck came from.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cards(&self) -> &[CanonicalCode] {
        &self.cards
    }

    pub fn graphs(&self) -> Vec<Graph> {
        self.cards.iter().map(CanonicalCode::decode).collect()
    }

    /// Parses the deck file format: one graph6 card per line, blank lines
    /// and `#` comments ignored, order irrelevant.
    pub fn parse(text: &str) -> Result<Deck> {
        Deck::parse_named(text, "<deck>")
    }

    fn parse_named(text: &str, name: &str) -> Result<Deck> {
        let mut cards = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let code = CanonicalCode::parse(line).map_err(|source| Error::DeckFile {
                path: name.to_string(),
                line: i + 1,
                source,
            })?;
            cards.push(code);
        }
        Deck::from_codes(cards)
    }

    pub fn load(path: &Path) -> Result<Deck> {
        let text = std::fs::read_to_string(path)?;
        Deck::parse_named(&text, &path.display().to_string())
    }

    /// One card per line, sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cards {
            out.push_str(c.as_str());
            out.push('\n');
        }
        out
    }

    pub fn multiset(&self) -> Multiset<CanonicalCode> {
        self.cards.iter().cloned().collect()
    }
}

impl fmt::Debug for Deck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Deck")
            .field("n", &self.n)
            .field(
                "cards",
                &self.cards.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// `D(g)`.
pub fn make_deck(g: &Graph) -> Result<Deck> {
    if g.order() == 0 {
        return Err(Error::Precondition("the empty graph has no cards".into()));
    }
    let cards = (0..g.order())
        .map(|v| canonical_form(&g.delete_vertex(v).expect("vertex in range")))
        .collect();
    Deck::from_codes(cards)
}

pub fn deck_equal(a: &Deck, b: &Deck) -> bool {
    a == b
}

/// `|E(G)|` from the deck: each edge survives in exactly `n - 2` cards.
pub fn edge_count_from_deck(d: &Deck) -> Result<usize> {
    if d.n < 3 {
        return Err(Error::Precondition(format!(
            "edge counting needs at least 3 cards, got {}",
            d.n
        )));
    }
    let total: usize = d.cards.iter().map(|c| c.decode().edge_count()).sum();
    if !total.is_multiple_of(d.n - 2) {
        return Err(Error::Integrity(format!(
            "card edge total {total} is not divisible by {}",
            d.n - 2
        )));
    }
    Ok(total / (d.n - 2))
}

/// `D_K(G)`: the cards whose skeleton is isomorphic to `k`.
pub fn filter_by_skeleton(d: &Deck, k: &Graph) -> Vec<CanonicalCode> {
    d.cards
        .iter()
        .filter(|c| {
            c.order() >= k.order()
                && nondegenerate_skeleton(&c.decode()).is_some_and(|s| is_isomorphic(&s, k))
        })
        .cloned()
        .collect()
}

/// A finite multiset with a deterministic (sorted) iteration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T: Ord>(BTreeMap<T, usize>);

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset(BTreeMap::new())
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T) {
        self.insert_n(item, 1);
    }

    pub fn insert_n(&mut self, item: T, count: usize) {
        if count > 0 {
            *self.0.entry(item).or_insert(0) += count;
        }
    }

    pub fn count(&self, item: &T) -> usize {
        self.0.get(item).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct items with multiplicities, in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> {
        self.0.iter().map(|(k, &v)| (k, v))
    }

    /// All items, repeated by multiplicity.
    pub fn items(&self) -> Vec<T> {
        self.0
            .iter()
            .flat_map(|(k, &v)| std::iter::repeat_n(k.clone(), v))
            .collect()
    }

    pub fn is_submultiset(&self, other: &Multiset<T>) -> bool {
        self.0.iter().all(|(k, &v)| other.count(k) >= v)
    }

    /// Removes `count` copies of `item`, failing if fewer are present.
    pub fn remove_n(&mut self, item: &T, count: usize) -> std::result::Result<(), usize> {
        let have = self.count(item);
        if have < count {
            return Err(have);
        }
        if have == count {
            self.0.remove(item);
        } else if count > 0 {
            *self.0.get_mut(item).expect("present") -= count;
        }
        Ok(())
    }

    /// Multiset difference `self - other`, requiring containment.
    pub fn difference(&self, other: &Multiset<T>) -> Option<Multiset<T>> {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.remove_n(k, v).ok()?;
        }
        Some(out)
    }
}

impl<T: Ord + Clone> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for item in iter {
            m.insert(item);
        }
        m
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// Removes the cards attributed to an already identified object from a
/// pooled card list.
pub fn subtract_attributable(
    pool: &Multiset<CanonicalCode>,
    attributed: &Multiset<CanonicalCode>,
) -> Result<Multiset<CanonicalCode>> {
    pool.difference(attributed).ok_or_else(|| {
        Error::Integrity(format!(
            "attributed cards {attributed:?} are not contained in the pool {pool:?}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::inflate;

    fn code(g: &Graph) -> CanonicalCode {
        canonical_form(g)
    }

    #[test]
    fn deck_examples() {
        let p3 = make_deck(&Graph::path(3)).unwrap();
        let k2 = code(&Graph::complete(2));
        let e2 = code(&Graph::empty(2));
        let mut expect = vec![k2.clone(), k2.clone(), e2.clone()];
        expect.sort();
        assert_eq!(p3.cards(), expect.as_slice());
        assert_eq!(
            make_deck(&Graph::complete(3)).unwrap().cards(),
            &[k2.clone(), k2.clone(), k2]
        );
        let c5 = make_deck(&Graph::cycle(5)).unwrap();
        assert!(c5.cards().iter().all(|c| *c == code(&Graph::path(4))));
        assert_eq!(c5.cards().len(), 5);
        assert!(make_deck(&Graph::empty(0)).is_err());
    }

    #[test]
    fn deck_equality() {
        let c5 = Graph::cycle(5);
        let relabelled = c5.permute(&[3, 0, 4, 1, 2]);
        assert!(deck_equal(
            &make_deck(&c5).unwrap(),
            &make_deck(&relabelled).unwrap()
        ));
        assert!(deck_equal(
            &make_deck(&Graph::complete(2)).unwrap(),
            &make_deck(&Graph::empty(2)).unwrap()
        ));
        assert!(!deck_equal(
            &make_deck(&Graph::path(4)).unwrap(),
            &make_deck(&Graph::star(3)).unwrap()
        ));
    }

    #[test]
    fn edge_count_examples() {
        assert_eq!(
            edge_count_from_deck(&make_deck(&Graph::complete(3)).unwrap()).unwrap(),
            3
        );
        assert_eq!(
            edge_count_from_deck(&make_deck(&Graph::path(3)).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            edge_count_from_deck(&make_deck(&Graph::cycle(5)).unwrap()).unwrap(),
            5
        );
        assert!(edge_count_from_deck(&make_deck(&Graph::complete(2)).unwrap()).is_err());
        // three cards K2, K2, K2bar: total 2 edges over n - 2 = 1 is fine,
        // but K2, K2bar, K2bar on 4 cards of order 3 is not a real deck
        let odd = Deck::from_graphs(&[
            Graph::complete(3),
            Graph::empty(3),
            Graph::empty(3),
            Graph::empty(3),
        ])
        .unwrap();
        assert!(matches!(
            edge_count_from_deck(&odd),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn filter_examples() {
        let one = Graph::empty(1);
        let c5_k2 = inflate(
            &Graph::cycle(5),
            &[
                Graph::complete(2),
                one.clone(),
                one.clone(),
                one.clone(),
                one.clone(),
            ],
        )
        .unwrap();
        let d = make_deck(&c5_k2).unwrap();
        assert_eq!(filter_by_skeleton(&d, &Graph::cycle(5)).len(), 2);
        assert!(
            filter_by_skeleton(&make_deck(&Graph::cycle(5)).unwrap(), &Graph::cycle(5)).is_empty()
        );
        let p4_ends = inflate(
            &Graph::path(4),
            &[Graph::complete(2), one.clone(), one, Graph::complete(2)],
        )
        .unwrap();
        assert_eq!(
            filter_by_skeleton(&make_deck(&p4_ends).unwrap(), &Graph::path(4)).len(),
            4
        );
    }

    #[test]
    fn subtraction_examples() {
        let p3 = code(&Graph::path(3));
        let k2 = code(&Graph::complete(2));
        let e2 = code(&Graph::empty(2));
        let pool: Multiset<_> = [p3.clone(), k2.clone(), k2.clone(), e2.clone()]
            .into_iter()
            .collect();
        let attributed = make_deck(&Graph::path(3)).unwrap().multiset();
        let rest = subtract_attributable(&pool, &attributed).unwrap();
        assert_eq!(rest.items(), vec![p3]);
        assert_eq!(
            subtract_attributable(&pool, &Multiset::new()).unwrap(),
            pool
        );
        let single: Multiset<_> = [k2].into_iter().collect();
        let other: Multiset<_> = [e2].into_iter().collect();
        assert!(subtract_attributable(&single, &other).is_err());
    }

    #[test]
    fn deck_file_round_trip() {
        let d = make_deck(&Graph::cycle(6)).unwrap();
        let text = format!("# C6\n\n{}", d.to_text());
        assert_eq!(Deck::parse(&text).unwrap(), d);
        assert!(matches!(Deck::parse("C~\nB?\n"), Err(Error::Integrity(_))));
        assert!(matches!(
            Deck::parse("C~\nzz\n"),
            Err(Error::DeckFile { line: 2, .. })
        ));
        assert!(Deck::parse("# nothing\n").is_err());
    }
}
