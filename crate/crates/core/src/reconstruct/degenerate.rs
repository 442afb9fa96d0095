//! Degenerate graphs from their decks.
//!
//! For `n >= 3` a graph is disconnected exactly when at most one card is
//! connected. The components are then read off the pooled components of
//! all cards: the largest pooled graph is always a genuine component `L`,
//! present in exactly `n - |L|` cards, and every card of `L` contributes
//! the components of `L - v` to the pool. Removing those and repeating
//! leaves nothing once every component has been found.

use crate::canon::{canonical_form, CanonicalCode};
use crate::deck::{Deck, Multiset};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) fn looks_disconnected(cards: &[Graph]) -> bool {
    cards.len() >= 3 && cards.iter().filter(|c| c.is_connected()).count() <= 1
}

pub(crate) fn looks_co_disconnected(cards: &[Graph]) -> bool {
    cards.len() >= 3
        && cards
            .iter()
            .filter(|c| c.complement().is_connected())
            .count()
            <= 1
}

/// Whether the deck belongs to a disconnected graph or to the complement
/// of one. Needs at least three cards.
pub fn is_degenerate_deck(d: &Deck) -> bool {
    let cards = d.graphs();
    looks_disconnected(&cards) || looks_co_disconnected(&cards)
}

/// The graph behind the deck of a degenerate graph on at least three
/// vertices, with its components (or co-components) in decreasing order.
pub fn reconstruct_degenerate(d: &Deck) -> Result<Graph> {
    let cards = d.graphs();
    if looks_disconnected(&cards) {
        return components_from_cards(d.order(), &cards);
    }
    if looks_co_disconnected(&cards) {
        let flipped: Vec<Graph> = cards.iter().map(Graph::complement).collect();
        return Ok(components_from_cards(d.order(), &flipped)?.complement());
    }
    Err(Error::Precondition(
        "the deck does not belong to a degenerate graph on three or more vertices".into(),
    ))
}

fn component_codes(g: &Graph) -> impl Iterator<Item = CanonicalCode> + '_ {
    g.components()
        .into_iter()
        .map(|c| canonical_form(&g.induced_subgraph(c).expect("component in range")))
}

fn components_from_cards(n: usize, cards: &[Graph]) -> Result<Graph> {
    let mut pool: Multiset<CanonicalCode> = cards.iter().flat_map(component_codes).collect();
    let mut found: Vec<Graph> = Vec::new();
    while let Some(largest) = pool
        .iter()
        .map(|(c, _)| c)
        .max_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)))
        .cloned()
    {
        let size = largest.order();
        if size >= n {
            return Err(Error::Integrity(format!(
                "pooled component {largest} is too large"
            )));
        }
        pool.remove_n(&largest, n - size).map_err(|have| {
            Error::Integrity(format!(
                "component {largest} should appear in {} cards, found {have}",
                n - size
            ))
        })?;
        let g = largest.decode();
        for v in 0..size {
            for part in component_codes(&g.delete_vertex(v).expect("vertex in range")) {
                pool.remove_n(&part, 1).map_err(|_| {
                    Error::Integrity(format!("fragment {part} of {largest} is missing"))
                })?;
            }
        }
        found.push(g);
    }
    let total: usize = found.iter().map(Graph::order).sum();
    if total != n {
        return Err(Error::Integrity(format!(
            "components cover {total} vertices, expected {n}"
        )));
    }
    found.sort_by_key(|g| std::cmp::Reverse(g.order()));
    found
        .iter()
        .try_fold(Graph::empty(0), |acc, c| acc.disjoint_union(c))
}
