//! Every graph of a small order, one per isomorphism class.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalCode};
use crate::deck::{make_deck, Deck};
use crate::error::{check_order, Error, Result};
use crate::graph::{Graph, VertexSet};

pub const MAX_CATALOG_ORDER: usize = 8;

/// Number of isomorphism classes of graphs on `n` vertices, `n = 0..=8`.
pub const CLASS_COUNTS: [usize; MAX_CATALOG_ORDER + 1] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

/// Sorted canonical codes of all graphs on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCatalog {
    n: usize,
    classes: Vec<CanonicalCode>,
}

impl GraphCatalog {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[CanonicalCode] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.classes.iter().map(CanonicalCode::decode)
    }

    fn check(&self) -> Result<()> {
        let sorted = self.classes.windows(2).all(|w| w[0] < w[1]);
        if !sorted || self.classes.len() != CLASS_COUNTS[self.n] {
            return Err(Error::Integrity(format!(
                "catalog for n = {} has {} entries (sorted: {sorted}), expected {}",
                self.n,
                self.classes.len(),
                CLASS_COUNTS[self.n]
            )));
        }
        if let Some(bad) = self
            .classes
            .par_iter()
            .find_any(|c| c.order() != self.n || canonical_form(&c.decode()) != **c)
        {
            return Err(Error::Integrity(format!(
                "catalog entry {bad} is not canonical"
            )));
        }
        Ok(())
    }

    fn augment(smaller: &GraphCatalog) -> GraphCatalog {
        let n = smaller.n + 1;
        let found: BTreeSet<CanonicalCode> = smaller
            .classes
            .par_iter()
            .flat_map_iter(|code| {
                let g = code.decode();
                (0u64..1 << smaller.n).map(move |nbrs| {
                    canonical_form(
                        &g.with_vertex(VertexSet(nbrs))
                            .expect("order below the limit"),
                    )
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        GraphCatalog {
            n,
            classes: found.into_iter().collect(),
        }
    }

    fn base() -> GraphCatalog {
        GraphCatalog {
            n: 0,
            classes: vec![canonical_form(&Graph::empty(0))],
        }
    }
}

static CATALOGS: [OnceLock<Arc<GraphCatalog>>; MAX_CATALOG_ORDER + 1] =
    [const { OnceLock::new() }; MAX_CATALOG_ORDER + 1];

/// The catalog for order `n`, built by adding a vertex in every possible
/// way to each graph of order `n - 1`. Results are kept for the life of
/// the process.
pub fn enumerate_graphs(n: usize) -> Result<Arc<GraphCatalog>> {
    check_order("enumerate_graphs", n, MAX_CATALOG_ORDER)?;
    if let Some(c) = CATALOGS[n].get() {
        return Ok(c.clone());
    }
    let catalog = if n == 0 {
        GraphCatalog::base()
    } else {
        GraphCatalog::augment(enumerate_graphs(n - 1)?.as_ref())
    };
    catalog.check()?;
    Ok(CATALOGS[n].get_or_init(|| Arc::new(catalog)).clone())
}

fn cache_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("graphs-{n}.g6"))
}

fn load(dir: &Path, n: usize) -> Option<GraphCatalog> {
    let text = fs::read_to_string(cache_file(dir, n)).ok()?;
    let classes = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| CanonicalCode::parse(l.trim()).ok())
        .collect::<Option<Vec<_>>>()?;
    let catalog = GraphCatalog { n, classes };
    catalog.check().ok().map(|_| catalog)
}

/// As [`enumerate_graphs`], reading and writing a cache file (one graph6
/// code per line) under `dir`. A cache file that fails verification is
/// rebuilt.
pub fn enumerate_graphs_cached(n: usize, dir: &Path) -> Result<Arc<GraphCatalog>> {
    check_order("enumerate_graphs", n, MAX_CATALOG_ORDER)?;
    if let Some(c) = CATALOGS[n].get() {
        return Ok(c.clone());
    }
    if let Some(catalog) = load(dir, n) {
        return Ok(CATALOGS[n].get_or_init(|| Arc::new(catalog)).clone());
    }
    let catalog = enumerate_graphs(n)?;
    fs::create_dir_all(dir)?;
    let mut text = String::new();
    for c in catalog.classes() {
        text.push_str(c.as_str());
        text.push('\n');
    }
    fs::write(cache_file(dir, n), text)?;
    Ok(catalog)
}

/// Decks of all graphs of order `n`, each with the classes that produce it.
pub fn deck_index(n: usize) -> Result<HashMap<Deck, Vec<CanonicalCode>>> {
    let catalog = enumerate_graphs(n)?;
    if n == 0 {
        return Ok(HashMap::new());
    }
    let decks: Vec<(Deck, CanonicalCode)> = catalog
        .classes()
        .par_iter()
        .map(|c| Ok((make_deck(&c.decode())?, c.clone())))
        .collect::<Result<_>>()?;
    let mut index: HashMap<Deck, Vec<CanonicalCode>> = HashMap::new();
    for (deck, code) in decks {
        index.entry(deck).or_default().push(code);
    }
    Ok(index)
}

/// Every graph with deck `d`, found by scanning the catalog.
pub fn oracle_preimages(d: &Deck) -> Result<Vec<Graph>> {
    let n = d.order();
    check_order("oracle_preimages", n, MAX_CATALOG_ORDER)?;
    let edges = if n >= 3 {
        Some(crate::deck::edge_count_from_deck(d)?)
    } else {
        None
    };
    let catalog = enumerate_graphs(n)?;
    let mut found: Vec<CanonicalCode> = catalog
        .classes()
        .par_iter()
        .filter(|c| {
            let g = c.decode();
            edges.is_none_or(|e| g.edge_count() == e) && make_deck(&g).is_ok_and(|own| own == *d)
        })
        .cloned()
        .collect();
    found.sort();
    Ok(found.iter().map(CanonicalCode::decode).collect())
}
