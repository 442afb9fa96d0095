//! Canonical labelling, isomorphism, automorphism orbits and induced
//! subgraph counting.
//!
//! The canonical form is found by an individualisation-refinement search:
//! the vertex set is refined to an equitable ordered partition, a smallest
//! non-trivial cell is split by individualising each of its vertices in
//! turn, and every discrete leaf yields a relabelling of the graph. The
//! smallest relabelled adjacency matrix (row by row) is the canonical one.
//! Two leaves with equal matrices give an automorphism; those are kept to
//! prune sibling branches and to produce orbits.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_order, Result};
use crate::graph::{Graph, VertexSet};
use crate::Graph6Error;

/// Largest order accepted by [`automorphism_orbits`].
pub const MAX_ORBIT_ORDER: usize = 12;

/// graph6 string of the canonically relabelled graph.
///
/// Equal codes mean isomorphic graphs. The ordering is the plain string
/// ordering, so sorted code lists are canonical multisets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Order of the encoded graph, read from the length prefix.
    pub fn order(&self) -> usize {
        let b = self.0.as_bytes();
        if b[0] == b'~' {
            b[1..4]
                .iter()
                .fold(0usize, |n, &c| n << 6 | (c - 63) as usize)
        } else {
            (b[0] - 63) as usize
        }
    }

    pub fn decode(&self) -> Graph {
        Graph::from_graph6(&self.0).expect("canonical codes are valid graph6")
    }

    /// Parses and canonicalises an arbitrary graph6 string.
    pub fn parse(text: &str) -> Result<CanonicalCode, Graph6Error> {
        Ok(canonical_form(&Graph::from_graph6(text)?))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

/// Result of a canonical search.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub code: CanonicalCode,
    /// `labels[v]` is the canonical position of vertex `v`.
    pub labels: Vec<usize>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

struct Leaf {
    path: Vec<usize>,
    labels: Vec<usize>,
    cert: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn refine(&self, cells: &mut Vec<u64>) {
        // Restart from the first splitter after every change; cell order only
        // depends on positions and counts, so it is relabelling invariant.
        'outer: loop {
            for w in 0..cells.len() {
                let splitter = cells[w];
                let mut next = Vec::with_capacity(cells.len() + 1);
                let mut split = false;
                for &cell in cells.iter() {
                    if cell.count_ones() == 1 {
                        next.push(cell);
                        continue;
                    }
                    let mut buckets: Vec<(u32, u64)> = Vec::new();
                    for v in VertexSet(cell) {
                        let count = (self.g.rows()[v] & splitter).count_ones();
                        match buckets.iter_mut().find(|(c, _)| *c == count) {
                            Some((_, mask)) => *mask |= 1u64 << v,
                            None => buckets.push((count, 1u64 << v)),
                        }
                    }
                    if buckets.len() > 1 {
                        split = true;
                        buckets.sort_unstable_by_key(|&(c, _)| c);
                        next.extend(buckets.into_iter().map(|(_, m)| m));
                    } else {
                        next.push(cell);
                    }
                }
                if split {
                    *cells = next;
                    continue 'outer;
                }
            }
            break;
        }
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let n = self.g.order();
        let mut labels = vec![0; n];
        for (pos, &cell) in cells.iter().enumerate() {
            labels[cell.trailing_zeros() as usize] = pos;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            let mut row = 0u64;
            for u in self.g.neighbours(v) {
                row |= 1u64 << labels[u];
            }
            cert[labels[v]] = row;
        }
        let leaf = Leaf {
            path: path.to_vec(),
            labels,
            cert,
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                path: leaf.path.clone(),
                labels: leaf.labels.clone(),
                cert: leaf.cert.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if first.cert == leaf.cert {
            let level = divergence(&first.path, &leaf.path);
            let gamma = automorphism(&first.labels, &leaf.labels);
            self.generators.push(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.cert.cmp(&best.cert) {
            Ordering::Equal => {
                let level = divergence(&best.path, &leaf.path);
                let gamma = automorphism(&best.labels, &leaf.labels);
                self.generators.push(gamma);
                Some(level)
            }
            Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            Ordering::Greater => None,
        }
    }

    /// Returns `Some(level)` to unwind to the node whose path has `level`
    /// entries.
    fn dfs(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        self.refine(&mut cells);
        if cells.len() == self.g.order() {
            return self.leaf(&cells, path);
        }
        let (target, cell) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-trivial cell");
        let depth = path.len();
        let mut tried = VertexSet::EMPTY;
        for v in VertexSet(cell) {
            if !tried.is_empty()
                && !self
                    .stabiliser_orbit(v, path)
                    .intersection(tried)
                    .is_empty()
            {
                continue;
            }
            tried.insert(v);
            let mut child = cells.clone();
            child[target] = cell & !(1u64 << v);
            child.insert(target, 1u64 << v);
            path.push(v);
            let jump = self.dfs(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Orbit of `v` under the group generated by the known automorphisms
    /// that fix every vertex of `path`.
    fn stabiliser_orbit(&self, v: usize, path: &[usize]) -> VertexSet {
        let gens: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|g| path.iter().all(|&p| g[p] == p))
            .collect();
        let mut orbit = VertexSet::singleton(v);
        let mut frontier = orbit;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                for g in &gens {
                    next.insert(g[u]);
                }
            }
            frontier = next.difference(orbit);
            orbit = orbit.union(frontier);
        }
        orbit
    }
}

fn divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .unwrap_or_else(|| a.len().min(b.len()))
}

/// Vertex map sending each vertex to the vertex with the same position in
/// the other leaf.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inverse_to = vec![0; to.len()];
    for (v, &pos) in to.iter().enumerate() {
        inverse_to[pos] = v;
    }
    from.iter().map(|&pos| inverse_to[pos]).collect()
}

/// Runs the canonical search on `g`.
pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n == 0 {
        return Labeling {
            code: CanonicalCode(g.to_graph6()),
            labels: Vec::new(),
            generators: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.dfs(vec![g.vertices().bits()], &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");
    let canon = Graph::from_rows(best.cert).expect("relabelled graph is simple");
    Labeling {
        code: CanonicalCode(canon.to_graph6()),
        labels: best.labels,
        generators: search.generators,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_labeling(g).code
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && g.degree_sequence() == h.degree_sequence()
        && canonical_form(g) == canonical_form(h)
}

/// An isomorphism `g -> h` as a vertex map, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let lg = canonical_labeling(g);
    let lh = canonical_labeling(h);
    (lg.code == lh.code).then(|| automorphism(&lg.labels, &lh.labels))
}

/// Partition of the vertex set into automorphism orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    classes: Vec<VertexSet>,
    class_of: Vec<usize>,
}

impl OrbitPartition {
    fn from_generators(n: usize, generators: &[Vec<usize>]) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in generators {
            for (v, &w) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut classes: Vec<VertexSet> = Vec::new();
        let mut class_of = vec![0; n];
        let mut root_class = vec![usize::MAX; n];
        for (v, slot) in class_of.iter_mut().enumerate() {
            let r = find(&mut parent, v);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(VertexSet::EMPTY);
            }
            classes[root_class[r]].insert(v);
            *slot = root_class[r];
        }
        OrbitPartition { classes, class_of }
    }

    /// Builds a partition from explicit classes; used by test oracles.
    pub fn from_classes(n: usize, mut classes: Vec<VertexSet>) -> Self {
        classes.sort_by_key(|c| c.first());
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for v in *c {
                class_of[v] = i;
            }
        }
        OrbitPartition { classes, class_of }
    }

    /// Orbits ordered by smallest member.
    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the orbit containing `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn orbit(&self, v: usize) -> VertexSet {
        self.classes[self.class_of[v]]
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.class_of[u] == self.class_of[v]
    }

    /// True when every orbit is a single vertex.
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn is_transitive(&self) -> bool {
        self.classes.len() == 1
    }
}

/// Exact automorphism orbits of `g`, for `g` of order at most
/// [`MAX_ORBIT_ORDER`].
pub fn automorphism_orbits(g: &Graph) -> Result<OrbitPartition> {
    check_order("automorphism_orbits", g.order(), MAX_ORBIT_ORDER)?;
    Ok(orbits_unchecked(g))
}

pub(crate) fn orbits_unchecked(g: &Graph) -> OrbitPartition {
    let labeling = canonical_labeling(g);
    OrbitPartition::from_generators(g.order(), &labeling.generators)
}

/// Calls `visit` on every `k`-subset of `0..n` in colex order; stops early
/// when `visit` returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(VertexSet) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(VertexSet::EMPTY);
        return;
    }
    let limit: u128 = 1u128 << n;
    let mut set: u128 = (1u128 << k) - 1;
    while set < limit {
        if !visit(VertexSet(set as u64)) {
            return;
        }
        // Gosper's hack
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
}

fn induced_matches(g: &Graph, h: &Graph, mut on_match: impl FnMut() -> bool) {
    let k = h.order();
    let edges = h.edge_count();
    let degrees = h.degree_sequence();
    let code = canonical_form(h);
    for_each_subset(g.order(), k, |set| {
        let sub = g.induced(set);
        if sub.edge_count() == edges
            && sub.degree_sequence() == degrees
            && canonical_form(&sub) == code
        {
            on_match()
        } else {
            true
        }
    });
}

/// True when some vertex subset of `g` induces a copy of `h`.
pub fn has_induced_subgraph(g: &Graph, h: &Graph) -> bool {
    let mut found = false;
    induced_matches(g, h, || {
        found = true;
        false
    });
    found
}

/// Number of vertex subsets of `g` inducing a copy of `h`.
pub fn count_induced_copies(g: &Graph, h: &Graph) -> usize {
    let mut count = 0;
    induced_matches(g, h, || {
        count += 1;
        true
    });
    count
}
