//! Card-level decomposition data, the skeleton of a deck and `s(G)`.

use serde::Serialize;

use crate::canon::{
    find_isomorphism, is_isomorphic, orbits_unchecked, CanonicalCode, OrbitPartition,
};
use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::modular::{decompose_any, inflate, Decomposition, Interval};

/// A graph written as `skeleton[intervals]` with an indecomposable skeleton
/// of order at least four. Indecomposable graphs are their own skeleton
/// with singleton intervals.
#[derive(Clone, Debug)]
pub(crate) struct PrimeView {
    pub skeleton: Graph,
    pub intervals: Vec<Interval>,
}

impl PrimeView {
    pub fn of(g: &Graph) -> Option<PrimeView> {
        if g.order() < 4 {
            return None;
        }
        match decompose_any(g).ok()? {
            Decomposition::Prime {
                skeleton,
                intervals,
            } => Some(PrimeView {
                skeleton,
                intervals,
            }),
            Decomposition::Indecomposable => Some(PrimeView {
                skeleton: g.clone(),
                intervals: (0..g.order())
                    .map(|v| Interval {
                        vertex: v,
                        members: VertexSet::singleton(v),
                        graph: Graph::empty(1),
                    })
                    .collect(),
            }),
            _ => None,
        }
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(|i| i.members.len() > 1)
    }

    /// The same inflation with the interval at skeleton vertex `at` replaced.
    pub fn splice(&self, at: usize, replacement: &Graph) -> Result<Graph> {
        let parts: Vec<Graph> = self
            .intervals
            .iter()
            .map(|i| {
                if i.vertex == at {
                    replacement.clone()
                } else {
                    i.graph.clone()
                }
            })
            .collect();
        inflate(&self.skeleton, &parts)
    }

    /// Orbit of `k` hit by each skeleton vertex under an isomorphism onto `k`.
    pub fn orbit_tags(&self, k: &Graph, orbits: &OrbitPartition) -> Result<Vec<usize>> {
        let iso = find_isomorphism(&self.skeleton, k).ok_or_else(|| {
            Error::Integrity(format!(
                "card skeleton {} is not isomorphic to {k}",
                self.skeleton
            ))
        })?;
        Ok(iso.iter().map(|&x| orbits.class_of(x)).collect())
    }
}

/// One card with its decomposition data.
#[derive(Clone, Debug)]
pub(crate) struct Card {
    pub code: CanonicalCode,
    pub graph: Graph,
    pub view: Option<PrimeView>,
}

impl Card {
    pub fn skeleton_order(&self) -> Option<usize> {
        self.view.as_ref().map(|v| v.skeleton.order())
    }

    pub fn has_skeleton(&self, k: &Graph) -> bool {
        self.view
            .as_ref()
            .is_some_and(|v| v.skeleton.order() == k.order() && is_isomorphic(&v.skeleton, k))
    }
}

/// Cards of a deck split into `D_K(G)` and the rest.
#[derive(Clone, Debug)]
pub(crate) struct Analysis {
    pub n: usize,
    pub skeleton: Graph,
    pub orbits: OrbitPartition,
    pub in_dk: Vec<Card>,
    pub others: Vec<Card>,
}

impl Analysis {
    pub fn new(d: &Deck) -> Result<Analysis> {
        let cards = analyse_cards(d);
        let skeleton = largest_skeleton(&cards)?;
        Ok(Analysis::split(d.order(), cards, skeleton))
    }

    /// Uses a caller-supplied skeleton; orbit ids refer to its labelling.
    pub fn with_skeleton(d: &Deck, skeleton: &Graph) -> Analysis {
        Analysis::split(d.order(), analyse_cards(d), skeleton.clone())
    }

    fn split(n: usize, cards: Vec<Card>, skeleton: Graph) -> Analysis {
        let orbits = orbits_unchecked(&skeleton);
        let (in_dk, others) = cards.into_iter().partition(|c| c.has_skeleton(&skeleton));
        Analysis {
            n,
            skeleton,
            orbits,
            in_dk,
            others,
        }
    }

    /// `s(G)`.
    pub fn singletons(&self) -> usize {
        self.others.len()
    }

    /// Number of intervals with at least two vertices.
    pub fn nontrivial_intervals(&self) -> isize {
        self.skeleton.order() as isize - self.singletons() as isize
    }
}

pub(crate) fn analyse_cards(d: &Deck) -> Vec<Card> {
    d.cards()
        .iter()
        .map(|code| {
            let graph = code.decode();
            let view = PrimeView::of(&graph);
            Card {
                code: code.clone(),
                graph,
                view,
            }
        })
        .collect()
}

fn largest_skeleton(cards: &[Card]) -> Result<Graph> {
    let top = cards
        .iter()
        .filter_map(Card::skeleton_order)
        .max()
        .ok_or_else(|| {
            Error::Precondition("no card has a skeleton on four or more vertices".into())
        })?;
    let mut largest = cards
        .iter()
        .filter_map(|c| c.view.as_ref())
        .filter(|v| v.skeleton.order() == top);
    let first = largest
        .next()
        .expect("maximum is attained")
        .skeleton
        .clone();
    if largest.any(|v| !is_isomorphic(&v.skeleton, &first)) {
        return Err(Error::Precondition(
            "cards disagree on the largest skeleton".into(),
        ));
    }
    Ok(crate::canon::canonical_form(&first).decode())
}

/// `Skel(G)` for the deck of a decomposable, non-degenerate graph: the
/// unique largest skeleton among the cards, returned in canonical labelling.
pub fn skeleton_from_deck(d: &Deck) -> Result<Graph> {
    largest_skeleton(&analyse_cards(d))
}

/// Number of singleton intervals, `s(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SingletonCount(pub usize);

/// `s(G)`: the number of cards whose skeleton is not `k`.
pub fn singleton_count(d: &Deck, k: &Graph) -> SingletonCount {
    SingletonCount(
        analyse_cards(d)
            .iter()
            .filter(|c| !c.has_skeleton(k))
            .count(),
    )
}
