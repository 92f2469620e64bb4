//! Exact clique numbers of induced neighborhood subgraphs.
//!
//! Bron–Kerbosch with Tomita pivoting (the pivot maximizes `|P ∩ N(u)|`) and
//! a size bound `|R| + |P| <= best`. Candidate sets are dense bitsets over the
//! local vertex indices, which is adequate for neighborhoods of a few dozen
//! vertices.

use crate::error::Result;
use crate::graph::{PartitionGraph, VertexId};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn difference(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    /// Ascending iteration over members.
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// A subgraph induced on an ordered subset of a parent's vertices, with
/// adjacency re-indexed to local positions `0..len`.
#[derive(Clone)]
pub struct InducedSubgraph {
    members: Vec<VertexId>,
    adjacency: Vec<BitSet>,
}

impl InducedSubgraph {
    /// Restriction of `g` to `members` (kept in the given order).
    pub fn new(g: &PartitionGraph, members: &[VertexId]) -> Self {
        let k = members.len();
        let mut adjacency = vec![BitSet::empty(k); k];
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if g.has_edge(u, v) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        InducedSubgraph {
            members: members.to_vec(),
            adjacency,
        }
    }

    /// The induced subgraph on the open neighborhood `N(v)`.
    pub fn neighborhood(g: &PartitionGraph, v: VertexId) -> Self {
        Self::new(g, g.neighbors(v))
    }

    /// A standalone graph on `0..k` from an undirected edge list. Self-loops are ignored.
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![BitSet::empty(k); k];
        for &(u, v) in edges {
            assert!(
                u < k && v < k,
                "edge ({u},{v}) out of range for {k} vertices"
            );
            if u != v {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
        InducedSubgraph {
            members: (0..k as VertexId).collect(),
            adjacency,
        }
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Adjacency between local positions `i` and `j`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// `ω(g)`, the size of a maximum clique; 0 for the empty graph.
    pub fn clique_number(&self) -> usize {
        let k = self.len();
        if k == 0 {
            return 0;
        }
        let mut search = Search {
            adjacency: &self.adjacency,
            best: 0,
        };
        search.expand(0, BitSet::full(k), BitSet::empty(k));
        search.best
    }
}

struct Search<'a> {
    adjacency: &'a [BitSet],
    best: usize,
}

impl Search<'_> {
    fn expand(&mut self, depth: usize, mut candidates: BitSet, mut excluded: BitSet) {
        let remaining = candidates.count();
        if remaining == 0 {
            if depth > self.best {
                self.best = depth;
            }
            return;
        }
        if depth + remaining <= self.best {
            return;
        }
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .max_by_key(|&u| {
                (
                    candidates.intersection_count(&self.adjacency[u]),
                    std::cmp::Reverse(u),
                )
            })
            .expect("candidate set is nonempty");
        let branch = candidates.difference(&self.adjacency[pivot]);
        for v in branch.iter() {
            let nv = &self.adjacency[v];
            self.expand(
                depth + 1,
                candidates.intersection(nv),
                excluded.intersection(nv),
            );
            candidates.remove(v);
            excluded.insert(v);
            if depth + candidates.count() <= self.best {
                return;
            }
        }
    }
}

/// Local simplex dimension via the clique number of the neighborhood of `λ`.
pub fn dim_loc_clique(lambda: &Partition, g: &PartitionGraph) -> Result<u32> {
    let id = g.require_id(lambda)?;
    Ok(dim_loc_clique_by_id(g, id))
}

pub fn dim_loc_clique_by_id(g: &PartitionGraph, id: VertexId) -> u32 {
    if g.n() == 1 {
        return 0;
    }
    InducedSubgraph::neighborhood(g, id).clique_number() as u32
}
