//! Recovering the intervals of a non-degenerate decomposable graph.

use serde::Serialize;

use super::degenerate::{is_degenerate_deck, reconstruct_degenerate};
use super::skeleton::{Analysis, Card, PrimeView};
use crate::canon::{
    canonical_form, find_isomorphism, for_each_subset, orbits_unchecked, CanonicalCode,
};
use crate::deck::{make_deck, Deck, Multiset};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// An interval (as an isomorphism class) together with the automorphism
/// orbit of the skeleton vertex it inflates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TaggedInterval {
    pub orbit: usize,
    pub code: CanonicalCode,
}

fn integrity(msg: impl Into<String>) -> Error {
    Error::Integrity(msg.into())
}

fn view(card: &Card) -> Result<&PrimeView> {
    card.view
        .as_ref()
        .ok_or_else(|| integrity(format!("card {} has no skeleton", card.code)))
}

fn tagged_intervals(view: &PrimeView, a: &Analysis) -> Result<Vec<TaggedInterval>> {
    let tags = view.orbit_tags(&a.skeleton, &a.orbits)?;
    Ok(view
        .intervals
        .iter()
        .map(|i| TaggedInterval {
            orbit: tags[i.vertex],
            code: canonical_form(&i.graph),
        })
        .collect())
}

/// All intervals of `G`, singletons included, tagged with the orbit of `k`
/// they sit on. Needs `k` to be the skeleton of the deck and at least two
/// intervals with two or more vertices. Orbit ids index
/// `automorphism_orbits(k)`.
pub fn intervals_multi(d: &Deck, k: &Graph) -> Result<Multiset<TaggedInterval>> {
    multi(&Analysis::with_skeleton(d, k))
}

pub(crate) fn multi(a: &Analysis) -> Result<Multiset<TaggedInterval>> {
    let t = a.nontrivial_intervals();
    let pool_cards = a.in_dk.len();
    if t < 2 {
        return Err(Error::Precondition(format!(
            "needs two or more intervals with several vertices, the deck shows {t}"
        )));
    }
    let mut pool = Multiset::new();
    for card in &a.in_dk {
        for item in tagged_intervals(view(card)?, a)? {
            pool.insert(item);
        }
    }
    let mut found = Multiset::new();
    for _ in 0..t {
        let largest = pool
            .iter()
            .map(|(item, _)| item)
            .filter(|item| item.code.order() >= 2)
            .max_by(|x, y| x.code.order().cmp(&y.code.order()).then_with(|| x.cmp(y)))
            .cloned()
            .ok_or_else(|| integrity("ran out of intervals"))?;
        let size = largest.code.order();
        let copies = pool_cards
            .checked_sub(size)
            .ok_or_else(|| integrity(format!("interval {} is too large", largest.code)))?;
        pool.remove_n(&largest, copies).map_err(|have| {
            integrity(format!(
                "interval {} should appear in {copies} cards, found {have}",
                largest.code
            ))
        })?;
        for v in 0..size {
            let fragment = TaggedInterval {
                orbit: largest.orbit,
                code: canonical_form(&largest.code.decode().delete_vertex(v)?),
            };
            pool.remove_n(&fragment, 1).map_err(|_| {
                integrity(format!("card {} of an interval is missing", fragment.code))
            })?;
        }
        found.insert(largest);
    }
    for (item, count) in pool.iter() {
        if item.code.order() != 1 || count % pool_cards != 0 {
            return Err(integrity(format!(
                "{count} leftover copies of {} on orbit {}",
                item.code, item.orbit
            )));
        }
        found.insert_n(item.clone(), count / pool_cards);
    }
    if found.len() != a.skeleton.order() {
        return Err(integrity(format!(
            "found {} intervals for a skeleton on {} vertices",
            found.len(),
            a.skeleton.order()
        )));
    }
    Ok(found)
}

/// Every card of every interval with several vertices already occurs as an
/// interval on the same orbit.
pub fn is_hereditary(intervals: &Multiset<TaggedInterval>) -> bool {
    intervals.iter().all(|(item, _)| {
        let g = item.code.decode();
        g.order() < 2
            || (0..g.order()).all(|v| {
                let card = TaggedInterval {
                    orbit: item.orbit,
                    code: canonical_form(&g.delete_vertex(v).expect("vertex in range")),
                };
                intervals.count(&card) > 0
            })
    })
}

fn excess<'a, T: Ord + Clone>(a: &'a Multiset<T>, b: &Multiset<T>) -> Vec<&'a T> {
    a.iter()
        .flat_map(|(item, count)| std::iter::repeat_n(item, count.saturating_sub(b.count(item))))
        .collect()
}

/// Looks for a card `G - u` whose damaged interval `I - u` is not itself an
/// interval of `G` on that orbit. Such a card has exactly one place where
/// the damage can sit, and putting the original interval back yields `G`.
pub(crate) fn splice_from_witness(
    a: &Analysis,
    intervals: &Multiset<TaggedInterval>,
) -> Result<Option<Graph>> {
    for card in &a.in_dk {
        let view = view(card)?;
        let tagged = tagged_intervals(view, a)?;
        let here: Multiset<TaggedInterval> = tagged.iter().cloned().collect();
        let lost = excess(intervals, &here);
        let gained = excess(&here, intervals);
        let (&[original], &[damaged]) = (lost.as_slice(), gained.as_slice()) else {
            return Err(integrity(format!(
                "card {} differs from the interval list in more than one place",
                card.code
            )));
        };
        if original.orbit != damaged.orbit {
            return Err(integrity("a damaged interval moved to another orbit"));
        }
        if intervals.count(damaged) > 0 {
            continue;
        }
        let mut spots = view
            .intervals
            .iter()
            .zip(&tagged)
            .filter(|(_, tag)| *tag == damaged);
        if let (Some((spot, _)), None) = (spots.next(), spots.next()) {
            return view.splice(spot.vertex, &original.code.decode()).map(Some);
        }
        return Err(integrity("damaged interval occurs twice on its orbit"));
    }
    Ok(None)
}

/// Hereditary case with a vertex-transitive skeleton: any card missing a
/// singleton shows `K - k` with all intervals; `k` is put back next to the
/// vertices whose degree dropped.
pub(crate) fn rebuild_vertex_transitive(a: &Analysis) -> Result<Graph> {
    let k = &a.skeleton;
    let card = a
        .others
        .iter()
        .find(|c| c.skeleton_order() == Some(k.order() - 1))
        .ok_or_else(|| integrity("no card lost a singleton interval"))?;
    let view = view(card)?;
    let reduced = &view.skeleton;
    let twice = 2 * reduced.edge_count();
    if twice % (k.order() - 2) != 0 {
        return Err(integrity("skeleton card is not a card of a regular graph"));
    }
    let r = twice / (k.order() - 2);
    let neighbours: VertexSet = (0..reduced.order())
        .filter(|&x| reduced.degree(x) + 1 == r)
        .collect();
    if neighbours.len() != r {
        return Err(integrity(
            "cannot tell where the missing skeleton vertex attaches",
        ));
    }
    let rebuilt = reduced.with_vertex(neighbours)?;
    if find_isomorphism(&rebuilt, k).is_none() {
        return Err(integrity("rebuilt skeleton differs from the deck skeleton"));
    }
    let mut parts: Vec<Graph> = view.intervals.iter().map(|i| i.graph.clone()).collect();
    parts.push(Graph::empty(1));
    crate::modular::inflate(&rebuilt, &parts)
}

/// Placements tried before giving up on confirming a hereditary deck.
const PLACEMENT_BUDGET: usize = 200_000;

fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
        return false;
    };
    let j = (i..items.len())
        .rev()
        .find(|&j| items[i - 1] < items[j])
        .expect("pivot has a successor");
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Whether some placement of the recovered intervals on the skeleton,
/// respecting orbits, has deck `d`. Gives `None` when the search is too
/// large to finish.
pub(crate) fn placement_exists(
    d: &Deck,
    a: &Analysis,
    intervals: &Multiset<TaggedInterval>,
) -> Result<Option<bool>> {
    let classes = a.orbits.classes();
    let mut slots: Vec<Vec<CanonicalCode>> = vec![Vec::new(); classes.len()];
    for item in intervals.items() {
        slots[item.orbit].push(item.code);
    }
    for (orbit, class) in classes.iter().enumerate() {
        if slots[orbit].len() != class.len() {
            return Ok(Some(false));
        }
        slots[orbit].sort();
    }
    let mut budget = PLACEMENT_BUDGET;
    let mut parts = vec![Graph::empty(1); a.skeleton.order()];
    place(d, a, &mut slots, 0, &mut parts, &mut budget)
}

fn place(
    d: &Deck,
    a: &Analysis,
    slots: &mut [Vec<CanonicalCode>],
    orbit: usize,
    parts: &mut Vec<Graph>,
    budget: &mut usize,
) -> Result<Option<bool>> {
    if orbit == slots.len() {
        if *budget == 0 {
            return Ok(None);
        }
        *budget -= 1;
        let g = crate::modular::inflate(&a.skeleton, parts)?;
        return Ok(Some(make_deck(&g)? == *d));
    }
    let class = a.orbits.classes()[orbit].to_vec();
    let mut order = slots[orbit].clone();
    loop {
        for (&v, code) in class.iter().zip(&order) {
            parts[v] = code.decode();
        }
        match place(d, a, slots, orbit + 1, parts, budget)? {
            Some(false) => {}
            done => return Ok(done),
        }
        if !next_permutation(&mut order) {
            return Ok(Some(false));
        }
    }
}

fn non_degenerate(g: &Graph) -> bool {
    g.is_connected() && g.complement().is_connected()
}

/// Components, or co-components when `g` is connected.
fn degenerate_parts(g: &Graph) -> Vec<Graph> {
    let parts = if g.is_connected() {
        g.complement().components()
    } else {
        g.components()
    };
    parts.into_iter().map(|p| g.induced(p)).collect()
}

/// Maximal connected and co-connected pieces met while splitting `g` into
/// components and co-components.
fn pieces(g: &Graph, out: &mut Vec<Graph>) {
    if g.order() <= 1 {
        return;
    }
    if non_degenerate(g) {
        out.push(g.clone());
        return;
    }
    for part in degenerate_parts(g) {
        pieces(&part, out);
    }
}

fn only<T>(mut it: impl Iterator<Item = T>) -> Option<T> {
    match (it.next(), it.next()) {
        (Some(x), None) => Some(x),
        _ => None,
    }
}

/// A card showing `K - k` indecomposable, with the interval intact.
fn from_prime_card(card: &Card, k: usize, m: usize) -> Option<Graph> {
    let view = card.view.as_ref().filter(|v| v.skeleton.order() == k - 1)?;
    let interval = only(view.nontrivial())?;
    (interval.graph.order() == m).then(|| interval.graph.clone())
}

/// A card whose skeleton lost two vertices: the interval shows up intact,
/// or merged with one vertex into a degenerate interval.
fn from_merged_card(card: &Card, k: usize, m: usize) -> Option<Graph> {
    let view = card.view.as_ref().filter(|v| v.skeleton.order() == k - 2)?;
    if let Some(i) = view
        .nontrivial()
        .find(|i| i.graph.order() == m && non_degenerate(&i.graph))
    {
        return Some(i.graph.clone());
    }
    let merged = only(view.nontrivial()).filter(|i| i.graph.order() == m + 1)?;
    if non_degenerate(&merged.graph) {
        return None;
    }
    let parts = degenerate_parts(&merged.graph);
    match parts.as_slice() {
        [x, y] if x.order() == m && y.order() == 1 => Some(x.clone()),
        [x, y] if y.order() == m && x.order() == 1 => Some(y.clone()),
        _ => None,
    }
}

/// A degenerate card made of one vertex and a graph whose skeleton lost
/// two vertices.
fn from_degenerate_card(card: &Card, k: usize, m: usize) -> Option<Graph> {
    if non_degenerate(&card.graph) {
        return None;
    }
    let parts = degenerate_parts(&card.graph);
    let rest = match parts.as_slice() {
        [x, y] if y.order() == 1 => x,
        [x, y] if x.order() == 1 => y,
        _ => return None,
    };
    let view = PrimeView::of(rest).filter(|v| v.skeleton.order() == k - 2)?;
    let interval = only(view.nontrivial())?;
    (interval.graph.order() == m).then(|| interval.graph.clone())
}

fn from_pieces(card: &Card, m: usize) -> Option<Graph> {
    let mut found = Vec::new();
    pieces(&card.graph, &mut found);
    only(found.into_iter().filter(|p| p.order() == m))
}

/// The only interval with several vertices when it has at least three
/// vertices. Needs `k` to be the skeleton of the deck.
pub fn interval_single_large(d: &Deck, k: &Graph) -> Result<Graph> {
    single_large(&Analysis::with_skeleton(d, k))
}

pub(crate) fn single_large(a: &Analysis) -> Result<Graph> {
    let m = a.n - a.singletons();
    let k = a.skeleton.order();
    if a.nontrivial_intervals() != 1 || m < 3 {
        return Err(Error::Precondition(format!(
            "needs exactly one interval with three or more vertices, the deck shows {} of total size {m}",
            a.nontrivial_intervals()
        )));
    }
    let mut damaged = Vec::with_capacity(m);
    for card in &a.in_dk {
        let interval = only(view(card)?.nontrivial())
            .filter(|i| i.graph.order() == m - 1)
            .ok_or_else(|| {
                integrity(format!(
                    "card {} should show one damaged interval",
                    card.code
                ))
            })?;
        damaged.push(interval.graph.clone());
    }
    let interval_deck = Deck::from_graphs(&damaged)?;
    if interval_deck.order() != m {
        return Err(integrity("damaged intervals do not form a deck"));
    }
    if is_degenerate_deck(&interval_deck) {
        return reconstruct_degenerate(&interval_deck);
    }
    let found = if k >= 6 {
        a.others.iter().find_map(|c| {
            from_prime_card(c, k, m)
                .or_else(|| from_merged_card(c, k, m))
                .or_else(|| from_degenerate_card(c, k, m))
        })
    } else {
        a.others
            .iter()
            .find_map(|c| from_prime_card(c, k, m))
            .or_else(|| a.others.iter().find_map(|c| from_pieces(c, m)))
    };
    let interval = found.ok_or_else(|| integrity("no card shows the interval intact"))?;
    if make_deck(&interval)? != interval_deck {
        return Err(integrity("recovered interval does not match its deck"));
    }
    Ok(interval)
}

/// How the position of a two-vertex interval was narrowed down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairRoute {
    /// One vertex of `K` leaves an indecomposable graph and no card shows
    /// it missing, so the interval sits there.
    UniquePrimeDeletion,
    /// Cards of the form `(K - k)[I]` with `K - k` indecomposable.
    PrimeDeletionCards,
    /// `K` has no indecomposable card; evidence comes from cards with an
    /// isolated (or universal) vertex.
    IsolatedVertexCards,
}

/// The interval `I` of order two and the vertices of `K` it may inflate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInterval {
    /// `K2` or its complement, when the cards tell which.
    pub interval: Option<Graph>,
    pub candidates: VertexSet,
    pub route: PairRoute,
}

/// Vertices of `k` that vertex `x` of `s` can land on under an embedding
/// of `s` as an induced subgraph of `k`.
pub(crate) fn embedding_images(s: &Graph, x: usize, k: &Graph) -> VertexSet {
    let orbit = orbits_unchecked(s).orbit(x);
    let mut images = VertexSet::EMPTY;
    for_each_subset(k.order(), s.order(), |set| {
        if let Some(phi) = find_isomorphism(s, &k.induced(set)) {
            let vertices = set.to_vec();
            for y in orbit {
                images.insert(vertices[phi[y]]);
            }
        }
        true
    });
    images
}

fn pair_from_edges(a: &Analysis, at: usize, edges: usize) -> Result<Graph> {
    let base = a.skeleton.edge_count() + a.skeleton.degree(at);
    match edges.checked_sub(base) {
        Some(0) => Ok(Graph::empty(2)),
        Some(1) => Ok(Graph::complete(2)),
        _ => Err(integrity("edge count does not fit a two-vertex interval")),
    }
}

/// The two-vertex interval of a graph with skeleton of order `n - 1`, and
/// the candidate positions for it. Needs `k` to be the deck's skeleton.
pub fn interval_single_pair(d: &Deck, k: &Graph) -> Result<PairInterval> {
    single_pair(
        &Analysis::with_skeleton(d, k),
        crate::deck::edge_count_from_deck(d)?,
    )
}

pub(crate) fn single_pair(a: &Analysis, edges: usize) -> Result<PairInterval> {
    let k = &a.skeleton;
    if a.nontrivial_intervals() != 1 || a.n != k.order() + 1 {
        return Err(Error::Precondition(
            "needs exactly one interval, of two vertices".into(),
        ));
    }
    let prime_deletions: Vec<usize> = (0..k.order())
        .filter(|&v| crate::modular::is_prime(&k.delete_vertex(v).expect("vertex in range")))
        .collect();
    if prime_deletions.is_empty() {
        return isolated_vertex_evidence(a, edges);
    }
    let prime_cards: Vec<&Card> = a
        .others
        .iter()
        .filter(|c| c.skeleton_order() == Some(k.order() - 1))
        .collect();
    if let ([at], []) = (prime_deletions.as_slice(), prime_cards.as_slice()) {
        return Ok(PairInterval {
            interval: Some(pair_from_edges(a, *at, edges)?),
            candidates: VertexSet::singleton(*at),
            route: PairRoute::UniquePrimeDeletion,
        });
    }
    let (interval, candidates) = narrow_by_cards(k, &prime_cards)?;
    Ok(PairInterval {
        interval: Some(interval),
        candidates,
        route: PairRoute::PrimeDeletionCards,
    })
}

/// Intersects, over cards `(K - k)[I]`, the places the interval can take
/// in `K`.
pub(crate) fn narrow_by_cards(k: &Graph, cards: &[&Card]) -> Result<(Graph, VertexSet)> {
    let mut interval: Option<Graph> = None;
    let mut candidates = k.vertices();
    for card in cards {
        let view = view(card)?;
        let i = only(view.nontrivial())
            .filter(|i| i.graph.order() == 2)
            .ok_or_else(|| integrity(format!("card {} should show the interval", card.code)))?;
        if interval.as_ref().is_some_and(|g| *g != i.graph) {
            return Err(integrity("cards disagree on the interval"));
        }
        interval = Some(i.graph.clone());
        candidates = candidates.intersection(embedding_images(&view.skeleton, i.vertex, k));
    }
    let interval = interval.ok_or_else(|| integrity("no card shows the interval"))?;
    if candidates.is_empty() {
        return Err(integrity("no position fits every card"));
    }
    Ok((interval, candidates))
}

fn isolated_vertex_evidence(a: &Analysis, edges: usize) -> Result<PairInterval> {
    let mut interval = None;
    let mut candidates = a.skeleton.vertices();
    for flip in [false, true] {
        let k = if flip {
            a.skeleton.complement()
        } else {
            a.skeleton.clone()
        };
        for card in &a.others {
            let g = if flip {
                card.graph.complement()
            } else {
                card.graph.clone()
            };
            let comps = g.components();
            let rest = match comps.as_slice() {
                [x, y] if y.len() == 1 => *x,
                [x, y] if x.len() == 1 => *y,
                _ => continue,
            };
            let Some(view) = PrimeView::of(&g.induced(rest)) else {
                continue;
            };
            let Some(i) = only(view.nontrivial()).filter(|i| i.graph.order() == 2) else {
                continue;
            };
            let shown = if flip {
                i.graph.complement()
            } else {
                i.graph.clone()
            };
            if interval.as_ref().is_some_and(|g: &Graph| *g != shown) {
                return Err(integrity("cards disagree on the interval"));
            }
            interval = Some(shown);
            candidates = candidates.intersection(embedding_images(&view.skeleton, i.vertex, &k));
        }
    }
    if candidates.is_empty() {
        return Err(integrity("no position fits every card"));
    }
    if interval.is_none() {
        // the edge count settles it when every candidate has the same degree
        let mut degrees = candidates.iter().map(|v| a.skeleton.degree(v));
        let first = degrees.next().expect("non-empty");
        if degrees.all(|d| d == first) {
            interval = Some(pair_from_edges(
                a,
                candidates.first().expect("non-empty"),
                edges,
            )?);
        }
    }
    Ok(PairInterval {
        interval,
        candidates,
        route: PairRoute::IsolatedVertexCards,
    })
}
