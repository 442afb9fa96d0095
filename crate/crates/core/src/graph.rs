//! Small simple undirected graphs stored as one `u64` neighbourhood row per
//! vertex, plus graph6 encoding.

use std::fmt;

use crate::error::{Error, Graph6Error, Result};

/// Largest supported vertex count; one neighbourhood fits a machine word.
pub const MAX_ORDER: usize = 64;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices `0..64` packed into a word.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Simple undirected graph on the vertices `0..n`, `n <= 64`.
///
/// Row `v` of `adj` is the neighbourhood of `v`. Rows are kept symmetric and
/// loop-free by every constructor, so two graphs compare equal exactly when
/// they are equal as vertex-labelled graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graphs are limited to {MAX_ORDER} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = low_mask(n) & !(1u64 << v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are in range")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle edges are in range")
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are in range")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Capability {
                op: "graph construction",
                order: n,
                max: MAX_ORDER,
            });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbourhood rows, rejecting asymmetric
    /// rows, loops and bits at or above `rows.len()`.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::Capability {
                op: "graph construction",
                order: n,
                max: MAX_ORDER,
            });
        }
        let g = Graph { n, adj: rows };
        g.check_invariants().map_err(Error::Precondition)?;
        Ok(g)
    }

    /// Verifies symmetry, irreflexivity and range of every row.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.adj.len() != self.n {
            return Err(format!("{} rows for {} vertices", self.adj.len(), self.n));
        }
        let outside = !low_mask(self.n);
        for (v, &row) in self.adj.iter().enumerate() {
            if row & outside != 0 {
                return Err(format!("row {v} has bits beyond vertex {}", self.n));
            }
            if row >> v & 1 == 1 {
                return Err(format!("loop at vertex {v}"));
            }
            for u in VertexSet(row) {
                if self.adj[u] >> v & 1 == 0 {
                    return Err(format!("edge {v}-{u} is not symmetric"));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if present {
            self.adj[u] |= 1u64 << v;
            self.adj[v] |= 1u64 << u;
        } else {
            self.adj[u] &= !(1u64 << v);
            self.adj[v] &= !(1u64 << u);
        }
    }

    /// Copy of `self` with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.edited(u, v, true)
    }

    /// Copy of `self` with the edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.edited(u, v, false)
    }

    fn edited(&self, u: usize, v: usize, present: bool) -> Result<Graph> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v, present);
        Ok(g)
    }

    /// Copy of `self` with one new vertex `n` adjacent to `neighbours`.
    pub fn with_vertex(&self, neighbours: VertexSet) -> Result<Graph> {
        if self.n == MAX_ORDER {
            return Err(Error::Capability {
                op: "vertex addition",
                order: self.n + 1,
                max: MAX_ORDER,
            });
        }
        if !neighbours.is_subset(VertexSet::full(self.n)) {
            return Err(Error::Precondition(
                "new neighbourhood names a missing vertex".into(),
            ));
        }
        let mut g = self.clone();
        let new = g.n;
        g.n += 1;
        g.adj.push(neighbours.0);
        for u in neighbours {
            g.adj[u] |= 1u64 << new;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            for u in VertexSet(self.adj[v] & low_mask(v)) {
                out.push((u, v));
            }
        }
        out.sort_unstable();
        out
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn complement(&self) -> Graph {
        let all = low_mask(self.n);
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & all & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `set`, relabelled in increasing order of the
    /// original indices.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Graph> {
        if let Some(bad) = set.difference(self.vertices()).first() {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: self.n,
            });
        }
        Ok(self.induced(set))
    }

    /// Same as [`Graph::induced_subgraph`] with `set` taken from a slice.
    pub fn induced_on(&self, vertices: &[usize]) -> Result<Graph> {
        if let Some(&bad) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: self.n,
            });
        }
        Ok(self.induced(vertices.iter().copied().collect()))
    }

    pub(crate) fn induced(&self, set: VertexSet) -> Graph {
        let members = set.to_vec();
        let mut adj = vec![0u64; members.len()];
        for (i, &v) in members.iter().enumerate() {
            let row = self.adj[v];
            for (j, &u) in members.iter().enumerate() {
                if row >> u & 1 == 1 {
                    adj[i] |= 1u64 << j;
                }
            }
        }
        Graph {
            n: members.len(),
            adj,
        }
    }

    /// The card `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let mut set = self.vertices();
        set.remove(v);
        Ok(self.induced(set))
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut unseen = self.vertices();
        while let Some(start) = unseen.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier {
                    next |= self.adj[v];
                }
                frontier = VertexSet(next).difference(comp);
                comp = comp.union(frontier);
            }
            unseen = unseen.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for u in VertexSet(self.adj[v]) {
                row |= 1u64 << perm[u];
            }
            adj[perm[v]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::Capability {
                op: "disjoint union",
                order: n,
                max: MAX_ORDER,
            });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6) + 3);
        if n <= 62 {
            out.push((n as u8 + 63) as char);
        } else {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
            }
        }
        let mut chunk = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                chunk = chunk << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((chunk + 63) as char);
                    chunk = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((chunk << (6 - filled)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        let body = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text).as_bytes();
        let (&first, _) = body.split_first().ok_or(Graph6Error::Empty)?;
        let sixbits = |offset: usize| -> Result<u8, Graph6Error> {
            let byte = body[offset];
            if (63..=126).contains(&byte) {
                Ok(byte - 63)
            } else {
                Err(Graph6Error::BadByte { offset, byte })
            }
        };
        let (n, start) = if first == b'~' {
            if body.len() < 4 {
                return Err(Graph6Error::BadLength);
            }
            if body[1] == b'~' {
                // 36-bit form; anything needing it is far beyond the cap
                return Err(Graph6Error::TooLarge(258_048));
            }
            let mut n = 0usize;
            for offset in 1..4 {
                n = n << 6 | sixbits(offset).map_err(|_| Graph6Error::BadLength)? as usize;
            }
            if n < 63 {
                return Err(Graph6Error::BadLength);
            }
            (n, 4)
        } else {
            (sixbits(0).map_err(|_| Graph6Error::BadLength)? as usize, 1)
        };
        if n > MAX_ORDER {
            return Err(Graph6Error::TooLarge(n));
        }
        let nbytes = (n * n.saturating_sub(1) / 2).div_ceil(6);
        let found = body.len() - start;
        if found < nbytes {
            return Err(Graph6Error::Truncated {
                expected: nbytes,
                found,
            });
        }
        if found > nbytes {
            return Err(Graph6Error::Trailing(found - nbytes));
        }
        let mut g = Graph::empty(n);
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                let chunk = sixbits(start + bit / 6)?;
                if chunk >> (5 - bit % 6) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                bit += 1;
            }
        }
        for offset in start + bit / 6..body.len() {
            sixbits(offset)?;
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} {:?})", self.to_graph6(), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl std::str::FromStr for Graph {
    type Err = Graph6Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::from_graph6(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        assert_eq!(Graph::complete(4).to_graph6(), "C~");
        assert_eq!(Graph::empty(5).to_graph6(), "D??");
        assert_eq!(Graph::empty(0).to_graph6(), "?");
        assert_eq!(Graph::from_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(Graph::from_graph6("D??").unwrap(), Graph::empty(5));
        assert_eq!(Graph::from_graph6("?").unwrap(), Graph::empty(0));
        // petgraph's reference string for a 5-vertex graph
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
    }

    #[test]
    fn graph6_header_accepted_not_emitted() {
        let g = Graph::from_graph6(">>graph6<<C~").unwrap();
        assert_eq!(g, Graph::complete(4));
        assert!(!g.to_graph6().starts_with(">>"));
    }

    #[test]
    fn graph6_errors_are_distinct() {
        assert_eq!(Graph::from_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(Graph::from_graph6("C~x"), Err(Graph6Error::Trailing(1)));
        assert_eq!(
            Graph::from_graph6("C"),
            Err(Graph6Error::Truncated {
                expected: 1,
                found: 0
            })
        );
        assert_eq!(
            Graph::from_graph6("C\u{1}"),
            Err(Graph6Error::BadByte { offset: 1, byte: 1 })
        );
        assert_eq!(Graph::from_graph6(" "), Err(Graph6Error::BadLength));
        // n = 65 through the long length form
        assert_eq!(Graph::from_graph6("~?@@"), Err(Graph6Error::TooLarge(65)));
        assert_eq!(Graph::from_graph6("~??@"), Err(Graph6Error::BadLength));
        assert_eq!(Graph::from_graph6("~?"), Err(Graph6Error::BadLength));
    }

    #[test]
    fn graph6_long_form_for_63_and_64() {
        for n in [63, 64] {
            let g = Graph::cycle(n);
            let text = g.to_graph6();
            assert!(text.starts_with('~'));
            assert_eq!(Graph::from_graph6(&text).unwrap(), g);
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::empty(5).complement(), Graph::complete(5));
        let g = Graph::path(4);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn induced_and_delete() {
        let k4 = Graph::complete(4);
        let sub = k4.induced_subgraph([0, 2].into_iter().collect()).unwrap();
        assert_eq!(sub, Graph::complete(2));
        let c5 = Graph::cycle(5);
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap(), c5);
        assert!(matches!(
            c5.induced_subgraph([0, 7].into_iter().collect()),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
        // deleting vertex 0 of the cycle 0-1-2-3-4-0 leaves the path 1-2-3-4
        assert_eq!(c5.delete_vertex(0).unwrap(), Graph::path(4));
        assert_eq!(Graph::path(4).delete_vertex(3).unwrap(), Graph::path(3));
        assert_eq!(Graph::empty(1).delete_vertex(0).unwrap(), Graph::empty(0));
        assert!(Graph::empty(1).delete_vertex(1).is_err());
    }

    #[test]
    fn components_examples() {
        let k3_k2 = Graph::complete(3)
            .disjoint_union(&Graph::complete(2))
            .unwrap();
        let comps = k3_k2.components();
        assert_eq!(
            comps.iter().map(|c| c.len()).collect::<Vec<_>>(),
            vec![3, 2]
        );
        assert_eq!(Graph::cycle(5).components().len(), 1);
        assert_eq!(Graph::empty(3).components().len(), 3);
        assert!(Graph::empty(0).components().is_empty());
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0b000]).is_err());
    }

    #[test]
    fn with_vertex_extends() {
        let g = Graph::path(3)
            .with_vertex([0, 2].into_iter().collect())
            .unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.check_invariants().is_ok());
    }
}
