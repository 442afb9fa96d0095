//! Skeleton families for which the interval position can be recovered.

use std::collections::BTreeSet;

use crate::canon::{canonical_form, for_each_subset, orbits_unchecked, OrbitPartition};
use crate::error::{check_order, Result};
use crate::graph::Graph;
use crate::modular::is_prime;

/// Largest order accepted by the subset-scanning predicates.
pub const MAX_FAMILY_ORDER: usize = 10;

fn card(g: &Graph, w: usize) -> Graph {
    g.delete_vertex(w).expect("vertex in range")
}

/// Vertex of `g` that is vertex `i` of `g - w`.
fn lift(w: usize, i: usize) -> usize {
    if i < w {
        i
    } else {
        i + 1
    }
}

pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    check_order(
        "is_vertex_transitive",
        g.order(),
        crate::canon::MAX_ORBIT_ORDER,
    )?;
    Ok(orbits_unchecked(g).is_transitive())
}

fn distinct_subgraphs(g: &Graph, k: usize) -> bool {
    let mut seen = BTreeSet::new();
    let mut distinct = true;
    for_each_subset(g.order(), k, |set| {
        distinct = seen.insert(canonical_form(&g.induced(set)));
        distinct
    });
    distinct
}

/// Trivial automorphism group, and every induced subgraph on `n - 1` or
/// `n - 2` vertices occurs on exactly one vertex subset.
pub fn in_family_f(g: &Graph) -> Result<bool> {
    check_order("in_family_f", g.order(), MAX_FAMILY_ORDER)?;
    let n = g.order();
    Ok(orbits_unchecked(g).is_trivial()
        && (n < 1 || distinct_subgraphs(g, n - 1))
        && (n < 2 || distinct_subgraphs(g, n - 2)))
}

/// Every orbit of `g - w` lies inside an orbit of `g`.
fn card_orbits_lift(g: &Graph, orbits: &OrbitPartition, w: usize) -> bool {
    orbits_unchecked(&card(g, w)).classes().iter().all(|class| {
        let mut lifted = class.iter().map(|i| orbits.class_of(lift(w, i)));
        let first = lifted.next();
        lifted.all(|c| Some(c) == first)
    })
}

/// Isomorphic cards come from vertices in the same orbit.
fn no_pseudo_similar(g: &Graph, orbits: &OrbitPartition) -> bool {
    let codes: Vec<_> = (0..g.order())
        .map(|w| canonical_form(&card(g, w)))
        .collect();
    (0..g.order())
        .all(|u| (u + 1..g.order()).all(|v| codes[u] != codes[v] || orbits.same_orbit(u, v)))
}

/// No pseudo-similar vertices, and every orbit of every card lies inside
/// an orbit of `g`.
pub fn in_family_g(g: &Graph) -> Result<bool> {
    check_order("in_family_g", g.order(), crate::canon::MAX_ORBIT_ORDER)?;
    Ok(in_g(g))
}

pub(crate) fn in_g(g: &Graph) -> bool {
    let orbits = orbits_unchecked(g);
    no_pseudo_similar(g, &orbits) && (0..g.order()).all(|w| card_orbits_lift(g, &orbits, w))
}

/// The smallest vertex `k'` with `g - k'` indecomposable such that cards
/// isomorphic to `g - k'` only come from the orbit of `k'` and the orbits
/// of `g - k'` lift into orbits of `g`.
pub(crate) fn relaxed_witness(g: &Graph) -> Option<usize> {
    let orbits = orbits_unchecked(g);
    let codes: Vec<_> = (0..g.order())
        .map(|w| canonical_form(&card(g, w)))
        .collect();
    (0..g.order()).find(|&w| {
        is_prime(&card(g, w))
            && (0..g.order()).all(|u| codes[u] != codes[w] || orbits.same_orbit(u, w))
            && card_orbits_lift(g, &orbits, w)
    })
}

/// Whether some indecomposable card of `g` satisfies the relaxed
/// identification condition (see [`relaxed_witness`]).
pub fn relaxed_skeleton_condition(g: &Graph) -> Result<bool> {
    check_order("relaxed_skeleton_condition", g.order(), MAX_FAMILY_ORDER)?;
    Ok(relaxed_witness(g).is_some())
}
