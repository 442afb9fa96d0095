//! From a deck back to the graph.
//!
//! Degenerate graphs are rebuilt from pooled card components. Otherwise the
//! deck fixes the skeleton `K` and the number `s` of singleton intervals,
//! and one of three routes recovers the intervals and where they sit:
//! several large intervals, a single interval on three or more vertices,
//! or a single two-vertex interval. Every answer is checked by rebuilding
//! its deck.

mod degenerate;
mod families;
mod intervals;
mod skeleton;

use std::fmt;

use serde::Serialize;

pub use degenerate::{is_degenerate_deck, reconstruct_degenerate};
pub use families::{
    in_family_f, in_family_g, is_vertex_transitive, relaxed_skeleton_condition, MAX_FAMILY_ORDER,
};
pub use intervals::{
    interval_single_large, interval_single_pair, intervals_multi, is_hereditary, PairInterval,
    PairRoute, TaggedInterval,
};
pub use skeleton::{singleton_count, skeleton_from_deck, SingletonCount};

use crate::canon::{canonical_form, find_isomorphism};
use crate::deck::{edge_count_from_deck, make_deck, Deck};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::modular::inflate;
use skeleton::{Analysis, Card};

/// Which argument produced a reconstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Disconnected graph or complement of one.
    Degenerate,
    /// A card shows a damaged interval that is not an interval of the graph.
    IntervalSplice,
    /// As [`Provenance::IntervalSplice`], with a skeleton whose only
    /// automorphism is the identity.
    TrivialAutomorphismSkeleton,
    /// One interval on three or more vertices, read off a card.
    SingleLargeInterval,
    /// Vertex-transitive skeleton.
    VertexTransitiveSkeleton,
    /// Two-vertex interval on the only vertex whose removal keeps the
    /// skeleton indecomposable.
    UniquePrimeDeletion,
    /// Two-vertex interval located up to automorphism from the cards.
    PairIntervalOrbit,
    /// Two-vertex interval located through one well-behaved card type.
    RelaxedSkeleton,
    /// Skeleton with no indecomposable card; candidates checked against the
    /// deck.
    CriticalSkeleton,
    /// Brute-force search over all graphs of the order.
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Degenerate => "degenerate",
            Provenance::IntervalSplice => "interval-splice",
            Provenance::TrivialAutomorphismSkeleton => "trivial-automorphism-skeleton",
            Provenance::SingleLargeInterval => "single-large-interval",
            Provenance::VertexTransitiveSkeleton => "vertex-transitive-skeleton",
            Provenance::UniquePrimeDeletion => "unique-prime-deletion",
            Provenance::PairIntervalOrbit => "pair-interval-orbit",
            Provenance::RelaxedSkeleton => "relaxed-skeleton",
            Provenance::CriticalSkeleton => "critical-skeleton",
            Provenance::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a deck was not reconstructed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum UnsupportedReason {
    /// Fewer than three cards.
    TooFewVertices,
    /// The deck is not recognised as that of a decomposable graph.
    NotDecomposable { detail: String },
    /// Several large intervals, every card of each already an interval on
    /// the same orbit, and a skeleton that is not vertex-transitive.
    HereditaryIntervals,
    /// A two-vertex interval whose position the cards do not pin down.
    UnidentifiedPairPosition,
}

impl UnsupportedReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            UnsupportedReason::TooFewVertices => "too-few-vertices",
            UnsupportedReason::NotDecomposable { .. } => "not-decomposable",
            UnsupportedReason::HereditaryIntervals => "hereditary-intervals",
            UnsupportedReason::UnidentifiedPairPosition => "unidentified-pair-position",
        }
    }
}

impl fmt::Display for UnsupportedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnsupportedReason::NotDecomposable { detail } => {
                write!(f, "not-decomposable: {detail}")
            }
            other => f.write_str(other.as_str()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Reconstructed {
        graph: Graph,
        provenance: Provenance,
    },
    Unsupported(UnsupportedReason),
    /// Several non-isomorphic graphs survive, or the bookkeeping of a
    /// degenerate deck failed (then `candidates` is empty).
    Ambiguous {
        candidates: Vec<Graph>,
        detail: String,
    },
}

/// The outcome plus what the deck revealed along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub order: usize,
    pub outcome: Outcome,
    /// Skeleton of the deck, when it has a non-degenerate one.
    pub skeleton: Option<Graph>,
    /// Number of singleton intervals.
    pub singletons: Option<usize>,
}

impl ReconstructionResult {
    pub fn graph(&self) -> Option<&Graph> {
        match &self.outcome {
            Outcome::Reconstructed { graph, .. } => Some(graph),
            _ => None,
        }
    }

    pub fn provenance(&self) -> Option<Provenance> {
        match &self.outcome {
            Outcome::Reconstructed { provenance, .. } => Some(*provenance),
            _ => None,
        }
    }

    pub fn is_reconstructed(&self) -> bool {
        self.graph().is_some()
    }
}

fn not_decomposable(detail: impl Into<String>) -> Outcome {
    Outcome::Unsupported(UnsupportedReason::NotDecomposable {
        detail: detail.into(),
    })
}

/// Accepts `g` only if its deck is the input deck.
fn checked(d: &Deck, g: Graph, provenance: Provenance) -> Result<Outcome> {
    if make_deck(&g)? == *d {
        Ok(Outcome::Reconstructed {
            graph: canonical_form(&g).decode(),
            provenance,
        })
    } else {
        Ok(not_decomposable("the rebuilt graph has a different deck"))
    }
}

/// Reconstructs a decomposable graph from its deck.
///
/// Errors are reserved for malformed decks (for instance a card edge total
/// that no graph can produce); decks the method does not cover come back
/// as [`Outcome::Unsupported`].
pub fn reconstruct(d: &Deck) -> Result<ReconstructionResult> {
    let n = d.order();
    let mut result = ReconstructionResult {
        order: n,
        outcome: Outcome::Unsupported(UnsupportedReason::TooFewVertices),
        skeleton: None,
        singletons: None,
    };
    if n < 3 {
        return Ok(result);
    }
    let edges = edge_count_from_deck(d)?;
    if is_degenerate_deck(d) {
        result.outcome = match reconstruct_degenerate(d) {
            Ok(g) => checked(d, g, Provenance::Degenerate)?,
            Err(Error::Integrity(detail)) => Outcome::Ambiguous {
                candidates: Vec::new(),
                detail,
            },
            Err(e) => return Err(e),
        };
        return Ok(result);
    }
    let analysis = match Analysis::new(d) {
        Ok(a) => a,
        Err(Error::Precondition(detail)) => {
            result.outcome = not_decomposable(detail);
            return Ok(result);
        }
        Err(e) => return Err(e),
    };
    result.skeleton = Some(analysis.skeleton.clone());
    result.singletons = Some(analysis.singletons());
    result.outcome = match non_degenerate(d, &analysis, edges) {
        Ok(outcome) => outcome,
        Err(Error::Integrity(detail) | Error::Precondition(detail)) => not_decomposable(detail),
        Err(e) => return Err(e),
    };
    Ok(result)
}

fn non_degenerate(d: &Deck, a: &Analysis, edges: usize) -> Result<Outcome> {
    let k = a.skeleton.order();
    let t = a.nontrivial_intervals();
    let spread = a.n - a.singletons();
    if t < 1 || k >= a.n || (spread as isize) < 2 * t {
        return Err(Error::Precondition(format!(
            "skeleton of order {k} with {} singletons does not fit {} vertices",
            a.singletons(),
            a.n
        )));
    }
    if t >= 2 {
        several_intervals(d, a)
    } else if spread >= 3 {
        let interval = intervals::single_large(a)?;
        let card = a
            .in_dk
            .first()
            .ok_or_else(|| Error::Integrity("no card keeps the skeleton".into()))?;
        let view = card
            .view
            .as_ref()
            .expect("cards keeping the skeleton have a view");
        let at = view
            .nontrivial()
            .next()
            .expect("checked by single_large")
            .vertex;
        checked(
            d,
            view.splice(at, &interval)?,
            Provenance::SingleLargeInterval,
        )
    } else {
        pair_interval(d, a, edges)
    }
}

fn several_intervals(d: &Deck, a: &Analysis) -> Result<Outcome> {
    let found = intervals::multi(a)?;
    if !is_hereditary(&found) {
        let g = intervals::splice_from_witness(a, &found)?
            .ok_or_else(|| Error::Integrity("no card shows a new damaged interval".into()))?;
        let provenance = if a.orbits.is_trivial() {
            Provenance::TrivialAutomorphismSkeleton
        } else {
            Provenance::IntervalSplice
        };
        return checked(d, g, provenance);
    }
    if a.skeleton.order() >= 5 && a.orbits.is_transitive() {
        return checked(
            d,
            intervals::rebuild_vertex_transitive(a)?,
            Provenance::VertexTransitiveSkeleton,
        );
    }
    if intervals::placement_exists(d, a, &found)? == Some(false) {
        return Err(Error::Integrity(
            "no placement of the intervals reproduces the deck".into(),
        ));
    }
    Ok(Outcome::Unsupported(UnsupportedReason::HereditaryIntervals))
}

fn with_pair(k: &Graph, at: usize, pair: &Graph) -> Result<Graph> {
    let mut parts = vec![Graph::empty(1); k.order()];
    parts[at] = pair.clone();
    inflate(k, &parts)
}

fn pair_interval(d: &Deck, a: &Analysis, edges: usize) -> Result<Outcome> {
    let k = &a.skeleton;
    let pair = intervals::single_pair(a, edges)?;
    match pair.route {
        PairRoute::UniquePrimeDeletion => {
            let at = pair.candidates.first().expect("one candidate");
            let interval = pair.interval.as_ref().expect("known interval");
            checked(
                d,
                with_pair(k, at, interval)?,
                Provenance::UniquePrimeDeletion,
            )
        }
        PairRoute::IsolatedVertexCards => by_deck_check(d, a, &pair),
        PairRoute::PrimeDeletionCards => {
            let interval = pair.interval.as_ref().expect("known interval");
            if families::in_g(k) {
                let first = pair.candidates.first().expect("non-empty");
                if pair
                    .candidates
                    .iter()
                    .any(|v| !a.orbits.same_orbit(v, first))
                {
                    return Err(Error::Integrity(
                        "candidate positions span several orbits".into(),
                    ));
                }
                let provenance = if a.orbits.is_transitive() {
                    Provenance::VertexTransitiveSkeleton
                } else {
                    Provenance::PairIntervalOrbit
                };
                return checked(d, with_pair(k, first, interval)?, provenance);
            }
            if let Some(witness) = families::relaxed_witness(k) {
                let shape = k.delete_vertex(witness)?;
                let cards: Vec<&Card> =
                    a.others.iter().filter(|c| c.has_skeleton(&shape)).collect();
                let at = if cards.is_empty() {
                    witness
                } else {
                    let (_, places) = intervals::narrow_by_cards(k, &cards)?;
                    places.first().expect("non-empty")
                };
                return checked(d, with_pair(k, at, interval)?, Provenance::RelaxedSkeleton);
            }
            // only decks that some placement explains count as decomposable
            let mut explained = false;
            for at in pair.candidates {
                explained |= make_deck(&with_pair(k, at, interval)?)? == *d;
            }
            if !explained {
                return Err(Error::Integrity(
                    "no candidate position reproduces the deck".into(),
                ));
            }
            Ok(Outcome::Unsupported(
                UnsupportedReason::UnidentifiedPairPosition,
            ))
        }
    }
}

/// Tries one vertex per orbit among the candidates, with each possible
/// two-vertex interval, and keeps the graphs whose deck matches.
fn by_deck_check(d: &Deck, a: &Analysis, pair: &PairInterval) -> Result<Outcome> {
    let k = &a.skeleton;
    let options = match &pair.interval {
        Some(g) => vec![g.clone()],
        None => vec![Graph::empty(2), Graph::complete(2)],
    };
    let mut seen = VertexSet::EMPTY;
    let mut survivors = Vec::new();
    for at in pair.candidates {
        if seen.contains(at) {
            continue;
        }
        seen = seen.union(a.orbits.orbit(at));
        for option in &options {
            let g = with_pair(k, at, option)?;
            if make_deck(&g)? == *d
                && !survivors
                    .iter()
                    .any(|h: &Graph| find_isomorphism(h, &g).is_some())
            {
                survivors.push(g);
            }
        }
    }
    match survivors.len() {
        0 => Err(Error::Integrity(
            "no candidate position reproduces the deck".into(),
        )),
        1 => checked(
            d,
            survivors.pop().expect("one survivor"),
            Provenance::CriticalSkeleton,
        ),
        _ => Ok(Outcome::Ambiguous {
            candidates: survivors,
            detail: "several positions reproduce the deck".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::modular::critically_indecomposable;

    fn run(g: &Graph) -> ReconstructionResult {
        reconstruct(&make_deck(g).unwrap()).unwrap()
    }

    fn assert_back(g: &Graph, provenance: Provenance) {
        let r = run(g);
        match &r.outcome {
            Outcome::Reconstructed {
                graph,
                provenance: p,
            } => {
                assert!(is_isomorphic(graph, g), "{g} came back as {graph}");
                assert_eq!(*p, provenance, "{g}");
            }
            other => panic!("{g}: {other:?}"),
        }
    }

    fn bull() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn small_decks() {
        let r = reconstruct(&make_deck(&Graph::complete(2)).unwrap()).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::Unsupported(UnsupportedReason::TooFewVertices)
        );
        assert_back(&Graph::path(3), Provenance::Degenerate);
        assert_back(&Graph::empty(4), Provenance::Degenerate);
    }

    #[test]
    fn indecomposable_decks_are_unsupported() {
        for g in [
            Graph::path(4),
            Graph::cycle(5),
            bull(),
            critically_indecomposable(6, false).unwrap(),
        ] {
            let r = run(&g);
            assert!(
                matches!(
                    r.outcome,
                    Outcome::Unsupported(UnsupportedReason::NotDecomposable { .. })
                ),
                "{g}: {:?}",
                r.outcome
            );
        }
    }

    #[test]
    fn pair_on_p4_is_checked_against_the_deck() {
        for at in 0..4 {
            for pair in [Graph::complete(2), Graph::empty(2)] {
                assert_back(
                    &with_pair(&Graph::path(4), at, &pair).unwrap(),
                    Provenance::CriticalSkeleton,
                );
            }
        }
    }

    #[test]
    fn pair_on_c5() {
        assert_back(
            &with_pair(&Graph::cycle(5), 0, &Graph::empty(2)).unwrap(),
            Provenance::VertexTransitiveSkeleton,
        );
    }

    #[test]
    fn large_interval_on_bull() {
        let mut parts = vec![Graph::empty(1); 5];
        parts[0] = Graph::cycle(4);
        let g = inflate(&bull(), &parts).unwrap();
        assert_back(&g, Provenance::SingleLargeInterval);
    }

    #[test]
    fn several_intervals() {
        let g = inflate(
            &Graph::path(4),
            &[
                Graph::complete(2),
                Graph::empty(1),
                Graph::empty(1),
                Graph::empty(3),
            ],
        )
        .unwrap();
        let r = run(&g);
        assert!(r.is_reconstructed(), "{:?}", r.outcome);
        assert_eq!(r.singletons, Some(2));
    }
}
