//! Modules (intervals), indecomposability and the top-level modular
//! decomposition `G = K[I_k : k in K]`.

use serde::Serialize;

use crate::error::{check_order, Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};

/// Largest order accepted by the module routines.
pub const MAX_MODULE_ORDER: usize = 20;

/// Largest order accepted by [`is_critically_indecomposable`].
pub const MAX_CRITICAL_ORDER: usize = 12;

/// True when every vertex outside `set` sees all of `set` or none of it.
pub fn is_module(g: &Graph, set: VertexSet) -> bool {
    let inside = set.bits();
    g.vertices().difference(set).iter().all(|x| {
        let seen = g.rows()[x] & inside;
        seen == 0 || seen == inside
    })
}

/// Smallest module containing `set`.
pub fn module_closure(g: &Graph, set: VertexSet) -> VertexSet {
    let mut closure = set;
    loop {
        let inside = closure.bits();
        let splitters: VertexSet = g
            .vertices()
            .difference(closure)
            .iter()
            .filter(|&x| {
                let seen = g.rows()[x] & inside;
                seen != 0 && seen != inside
            })
            .collect();
        if splitters.is_empty() {
            return closure;
        }
        closure = closure.union(splitters);
    }
}

/// Every non-empty module of `g`, singletons and `V` included, in
/// increasing bit order.
pub fn modules(g: &Graph) -> Result<Vec<VertexSet>> {
    check_order("modules", g.order(), MAX_MODULE_ORDER)?;
    let n = g.order();
    Ok((1u64..1u64 << n)
        .map(VertexSet)
        .filter(|&s| is_module(g, s))
        .collect())
}

/// True when `g` has no module other than the empty set, singletons and
/// `V`. Graphs on at most two vertices count as indecomposable; none on
/// three vertices are.
pub fn is_indecomposable(g: &Graph) -> Result<bool> {
    check_order("is_indecomposable", g.order(), MAX_MODULE_ORDER)?;
    Ok(is_prime(g))
}

pub(crate) fn is_prime(g: &Graph) -> bool {
    let n = g.order();
    if n <= 2 {
        return true;
    }
    if n == 3 {
        return false;
    }
    let all = g.vertices();
    (0..n).all(|u| (u + 1..n).all(|v| module_closure(g, [u, v].into_iter().collect()) == all))
}

/// A maximal proper interval of a prime decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    /// Skeleton vertex the interval inflates.
    pub vertex: usize,
    pub members: VertexSet,
    pub graph: Graph,
}

/// Top-level modular decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `g` itself has no proper module.
    Indecomposable,
    /// `g` is disconnected; the connected components.
    Parallel { components: Vec<VertexSet> },
    /// The complement of `g` is disconnected; the co-components.
    Series { co_components: Vec<VertexSet> },
    /// `g = skeleton[intervals]` with an indecomposable skeleton of order at
    /// least four. Interval `i` sits at skeleton vertex `i`.
    Prime {
        skeleton: Graph,
        intervals: Vec<Interval>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionKind {
    Indecomposable,
    DegenerateParallel,
    DegenerateSeries,
    Prime,
}

impl DecompositionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionKind::Indecomposable => "indecomposable",
            DecompositionKind::DegenerateParallel => "degenerate-parallel",
            DecompositionKind::DegenerateSeries => "degenerate-series",
            DecompositionKind::Prime => "prime",
        }
    }
}

impl Decomposition {
    pub fn kind(&self) -> DecompositionKind {
        match self {
            Decomposition::Indecomposable => DecompositionKind::Indecomposable,
            Decomposition::Parallel { .. } => DecompositionKind::DegenerateParallel,
            Decomposition::Series { .. } => DecompositionKind::DegenerateSeries,
            Decomposition::Prime { .. } => DecompositionKind::Prime,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Decomposition::Parallel { .. } | Decomposition::Series { .. }
        )
    }

    /// Number of single-vertex intervals; only meaningful for `Prime`.
    pub fn singleton_count(&self) -> usize {
        match self {
            Decomposition::Prime { intervals, .. } => {
                intervals.iter().filter(|i| i.members.len() == 1).count()
            }
            _ => 0,
        }
    }

    /// Intervals with at least two vertices.
    pub fn nontrivial_intervals(&self) -> Vec<&Interval> {
        match self {
            Decomposition::Prime { intervals, .. } => {
                intervals.iter().filter(|i| i.members.len() > 1).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Modular decomposition of `g`.
pub fn decompose(g: &Graph) -> Result<Decomposition> {
    check_order("decompose", g.order(), MAX_MODULE_ORDER)?;
    decompose_any(g)
}

pub(crate) fn decompose_any(g: &Graph) -> Result<Decomposition> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Precondition(
            "cannot decompose the empty graph".into(),
        ));
    }
    if n <= 2 {
        return Ok(Decomposition::Indecomposable);
    }
    let components = g.components();
    if components.len() > 1 {
        return Ok(Decomposition::Parallel { components });
    }
    let co_components = g.complement().components();
    if co_components.len() > 1 {
        return Ok(Decomposition::Series { co_components });
    }

    // Both g and its complement are connected, so the maximal proper
    // modules partition V. The one containing v holds every w whose pair
    // closure with v stays proper.
    let all = g.vertices();
    let mut part_of: Vec<Option<usize>> = vec![None; n];
    let mut parts: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        if part_of[v].is_some() {
            continue;
        }
        let mut part = VertexSet::singleton(v);
        for w in 0..n {
            if w != v && module_closure(g, [v, w].into_iter().collect()) != all {
                part.insert(w);
            }
        }
        for w in part {
            if part_of[w].is_some() {
                return Err(Error::Integrity(format!(
                    "maximal modules overlap at vertex {w} of {}",
                    g.to_graph6()
                )));
            }
            part_of[w] = Some(parts.len());
        }
        if part.len() > 1 && !is_module(g, part) {
            return Err(Error::Integrity(format!(
                "maximal module candidate {part:?} of {} is not a module",
                g.to_graph6()
            )));
        }
        parts.push(part);
    }
    if parts.len() == n {
        return Ok(Decomposition::Indecomposable);
    }
    let reps: VertexSet = parts
        .iter()
        .map(|p| p.first().expect("parts are non-empty"))
        .collect();
    let skeleton = g.induced(reps);
    if skeleton.order() < 4 || !is_prime(&skeleton) {
        return Err(Error::Integrity(format!(
            "quotient of {} is not indecomposable of order >= 4",
            g.to_graph6()
        )));
    }
    let intervals = parts
        .into_iter()
        .enumerate()
        .map(|(vertex, members)| Interval {
            vertex,
            members,
            graph: g.induced(members),
        })
        .collect();
    Ok(Decomposition::Prime {
        skeleton,
        intervals,
    })
}

/// `Skel(g)` when it has at least four vertices: the prime quotient, or `g`
/// itself when `g` is indecomposable. `None` for degenerate graphs and
/// graphs on fewer than four vertices.
pub fn nondegenerate_skeleton(g: &Graph) -> Option<Graph> {
    if g.order() < 4 {
        return None;
    }
    match decompose_any(g).ok()? {
        Decomposition::Indecomposable => Some(g.clone()),
        Decomposition::Prime { skeleton, .. } => Some(skeleton),
        _ => None,
    }
}

/// Replaces vertex `i` of `skeleton` by `parts[i]`. Vertices of `parts[0]`
/// come first, then those of `parts[1]`, and so on.
pub fn inflate(skeleton: &Graph, parts: &[Graph]) -> Result<Graph> {
    if parts.len() != skeleton.order() {
        return Err(Error::Precondition(format!(
            "{} parts for a skeleton on {} vertices",
            parts.len(),
            skeleton.order()
        )));
    }
    if let Some(i) = parts.iter().position(|p| p.order() == 0) {
        return Err(Error::Precondition(format!("part {i} is empty")));
    }
    let total: usize = parts.iter().map(Graph::order).sum();
    check_order("inflate", total, MAX_ORDER)?;
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for p in parts {
        offsets.push(acc);
        acc += p.order();
    }
    let block = |i: usize| VertexSet::full(parts[i].order()).bits() << offsets[i];
    let mut rows = vec![0u64; total];
    for (i, part) in parts.iter().enumerate() {
        let mut outside = 0u64;
        for j in skeleton.neighbours(i) {
            outside |= block(j);
        }
        for v in 0..part.order() {
            rows[offsets[i] + v] = part.rows()[v] << offsets[i] | outside;
        }
    }
    Graph::from_rows(rows)
}

/// The half-graph on `n` vertices: `A_1..A_m` are vertices `0..m`,
/// `B_1..B_m` are `m..2m`, and `A_i ~ B_j` exactly when `j <= i`.
/// With `complemented` the complement is returned.
pub fn critically_indecomposable(n: usize, complemented: bool) -> Result<Graph> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::Precondition(format!(
            "half-graphs need an even order of at least 4, got {n}"
        )));
    }
    check_order("critically_indecomposable", n, MAX_ORDER)?;
    let m = n / 2;
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..=i {
            edges.push((i, m + j));
        }
    }
    let g = Graph::from_edges(n, &edges)?;
    Ok(if complemented { g.complement() } else { g })
}

/// Indecomposable with no indecomposable card.
pub fn is_critically_indecomposable(g: &Graph) -> Result<bool> {
    check_order(
        "is_critically_indecomposable",
        g.order(),
        MAX_CRITICAL_ORDER,
    )?;
    Ok(is_critical(g))
}

pub(crate) fn is_critical(g: &Graph) -> bool {
    is_prime(g) && (0..g.order()).all(|v| !is_prime(&g.delete_vertex(v).expect("vertex in range")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn bull() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]).unwrap()
    }

    fn brute_modules(g: &Graph) -> Vec<VertexSet> {
        // straight from the definition: equal outside neighbourhoods
        let n = g.order();
        (1u64..1 << n)
            .map(VertexSet)
            .filter(|s| {
                let members = s.to_vec();
                members.iter().all(|&u| {
                    members
                        .iter()
                        .all(|&v| g.neighbours(u).difference(*s) == g.neighbours(v).difference(*s))
                })
            })
            .collect()
    }

    #[test]
    fn module_examples() {
        let p4 = modules(&Graph::path(4)).unwrap();
        assert_eq!(p4.len(), 5);
        assert!(p4.iter().all(|m| m.len() == 1 || m.len() == 4));
        assert_eq!(modules(&Graph::complete(3)).unwrap().len(), 7);
        // C4 = 0-1-2-3-0: antipodal pairs {0,2} and {1,3}
        let c4 = modules(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.len(), 7);
        assert!(c4.contains(&VertexSet(0b0101)));
        assert!(c4.contains(&VertexSet(0b1010)));
        assert_eq!(c4, brute_modules(&Graph::cycle(4)));
        assert!(modules(&Graph::empty(21)).is_err());
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&Graph::path(4)).unwrap());
        assert!(is_indecomposable(&bull()).unwrap());
        assert!(!is_indecomposable(&Graph::cycle(4)).unwrap());
        assert!(is_indecomposable(&Graph::complete(2)).unwrap());
        assert!(is_indecomposable(&Graph::empty(1)).unwrap());
        assert!(!is_indecomposable(&Graph::path(3)).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let c5_k2 = inflate(
            &Graph::cycle(5),
            &[
                Graph::complete(2),
                Graph::empty(1),
                Graph::empty(1),
                Graph::empty(1),
                Graph::empty(1),
            ],
        )
        .unwrap();
        match decompose(&c5_k2).unwrap() {
            Decomposition::Prime {
                skeleton,
                intervals,
            } => {
                assert!(is_isomorphic(&skeleton, &Graph::cycle(5)));
                let mut sizes: Vec<_> = intervals.iter().map(|i| i.graph.order()).collect();
                sizes.sort();
                assert_eq!(sizes, vec![1, 1, 1, 1, 2]);
                let big = intervals.iter().find(|i| i.graph.order() == 2).unwrap();
                assert_eq!(big.graph, Graph::complete(2));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            decompose(&Graph::complete(4)).unwrap().kind(),
            DecompositionKind::DegenerateSeries
        );
        assert_eq!(
            decompose(&Graph::path(4)).unwrap().kind(),
            DecompositionKind::Indecomposable
        );
        assert_eq!(
            decompose(&Graph::empty(3)).unwrap().kind(),
            DecompositionKind::DegenerateParallel
        );
        assert!(decompose(&Graph::empty(0)).is_err());
    }

    #[test]
    fn inflate_examples() {
        let c4 = inflate(&Graph::complete(2), &[Graph::empty(2), Graph::empty(2)]).unwrap();
        assert!(is_isomorphic(&c4, &Graph::cycle(4)));
        let b = bull();
        let ones = vec![Graph::empty(1); 5];
        assert_eq!(inflate(&b, &ones).unwrap(), b);
        assert!(inflate(
            &b,
            &[
                Graph::empty(1),
                Graph::empty(0),
                Graph::empty(1),
                Graph::empty(1),
                Graph::empty(1)
            ]
        )
        .is_err());
        assert!(inflate(&b, &ones[..4]).is_err());
    }

    #[test]
    fn half_graph_examples() {
        let h4 = critically_indecomposable(4, false).unwrap();
        assert!(is_isomorphic(&h4, &Graph::path(4)));
        let h6 = critically_indecomposable(6, false).unwrap();
        assert!(is_indecomposable(&h6).unwrap());
        for v in 0..6 {
            assert!(!is_indecomposable(&h6.delete_vertex(v).unwrap()).unwrap());
        }
        assert!(is_critically_indecomposable(&h6).unwrap());
        assert!(critically_indecomposable(5, false).is_err());
        assert!(critically_indecomposable(2, false).is_err());
        assert!(!is_critically_indecomposable(&Graph::cycle(5)).unwrap());
        assert!(!is_critically_indecomposable(&Graph::cycle(4)).unwrap());
        assert!(
            is_critically_indecomposable(&critically_indecomposable(8, true).unwrap()).unwrap()
        );
    }

    #[test]
    fn closure_agrees_with_brute_force_modules() {
        for g in [Graph::cycle(6), bull(), Graph::path(6), Graph::star(4)] {
            let fast = modules(&g).unwrap();
            assert_eq!(fast, brute_modules(&g));
            for m in &fast {
                assert_eq!(module_closure(&g, *m), *m);
            }
        }
    }

    #[test]
    fn skeleton_of_cards() {
        assert_eq!(
            nondegenerate_skeleton(&Graph::cycle(5)),
            Some(Graph::cycle(5))
        );
        assert_eq!(nondegenerate_skeleton(&Graph::complete(5)), None);
        assert_eq!(nondegenerate_skeleton(&Graph::path(3)), None);
    }
}
