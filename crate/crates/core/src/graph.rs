//! The partition graph `G_n`: partitions of `n`, adjacent when they differ
//! by moving a single unit between parts.

use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::partition::{enumerate_partitions, Partition};

/// Vertex id: position in the canonical (reverse-lexicographic) order.
pub type VertexId = u32;

#[derive(Debug, Clone)]
pub struct PartitionGraph {
    n: u32,
    vertices: Vec<Partition>,
    index: HashMap<Partition, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
}

/// Neighbors of `λ` as the admissible corner transfers `λ(c→a)`.
pub fn neighbors_by_corners(lambda: &Partition) -> Vec<Partition> {
    let corners = lambda.corners();
    let mut out: Vec<Partition> = corners
        .removable
        .iter()
        .flat_map(|&c| {
            corners
                .addable
                .iter()
                .filter_map(move |&a| lambda.transfer_unchecked(c, a))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Neighbors of `λ` by moving one unit from one part to another part (or to a
/// new part of size 1), then re-sorting.
pub fn neighbors_by_multiset(lambda: &Partition) -> Vec<Partition> {
    let parts = lambda.parts();
    let mut out = Vec::new();
    for from in 0..parts.len() {
        // `parts.len()` stands for a fresh part of size 0.
        for to in 0..=parts.len() {
            if to == from {
                continue;
            }
            let mut next = parts.to_vec();
            next[from] -= 1;
            if to == parts.len() {
                next.push(1);
            } else {
                next[to] += 1;
            }
            let mu = Partition::from_multiset(next).expect("a unit move keeps the total positive");
            if mu != *lambda {
                out.push(mu);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

impl PartitionGraph {
    /// Builds `G_n` from the corner-transfer adjacency.
    pub fn build(n: u32) -> Result<Self> {
        let vertices = enumerate_partitions(n)?;
        let index: HashMap<Partition, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as VertexId))
            .collect();
        let adjacency = vertices
            .par_iter()
            .map(|v| {
                let mut ids: Vec<VertexId> =
                    neighbors_by_corners(v).iter().map(|mu| index[mu]).collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        Ok(PartitionGraph {
            n,
            vertices,
            index,
            adjacency,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[Partition] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Partition {
        &self.vertices[id as usize]
    }

    pub fn id_of(&self, lambda: &Partition) -> Option<VertexId> {
        self.index.get(lambda).copied()
    }

    /// Like [`PartitionGraph::id_of`], but an absent vertex is an error.
    pub fn require_id(&self, lambda: &Partition) -> Result<VertexId> {
        self.id_of(lambda)
            .ok_or_else(|| invalid(format!("{lambda} is not a vertex of G_{}", self.n)))
    }

    /// Sorted neighbor ids.
    pub fn neighbors(&self, id: VertexId) -> &[VertexId] {
        &self.adjacency[id as usize]
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.adjacency[id as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, ns)| {
            let u = u as VertexId;
            ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    /// One edge per line, `[λ]<TAB>[μ]`, `λ` first in canonical order.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(w, "{}\t{}", self.vertex(u), self.vertex(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::p;

    #[test]
    fn corner_neighbors_examples() {
        assert_eq!(neighbors_by_corners(&p(&[4])), vec![p(&[3, 1])]);
        assert_eq!(
            neighbors_by_corners(&p(&[2, 2])),
            vec![p(&[3, 1]), p(&[2, 1, 1])]
        );
        assert!(neighbors_by_corners(&p(&[1])).is_empty());
    }

    #[test]
    fn multiset_neighbors_examples() {
        assert_eq!(
            neighbors_by_multiset(&p(&[3, 1])),
            vec![p(&[4]), p(&[2, 2]), p(&[2, 1, 1])]
        );
        assert_eq!(
            neighbors_by_multiset(&p(&[2, 1, 1])),
            vec![p(&[3, 1]), p(&[2, 2]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(neighbors_by_multiset(&p(&[2])), vec![p(&[1, 1])]);
        assert!(neighbors_by_multiset(&p(&[1])).is_empty());
    }

    #[test]
    fn small_graphs() {
        let g = PartitionGraph::build(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));

        let g = PartitionGraph::build(3).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);

        let g = PartitionGraph::build(4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));
        let ids: Vec<VertexId> = [p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]
            .iter()
            .map(|v| g.id_of(v).unwrap())
            .collect();
        assert!(
            g.has_edge(ids[0], ids[1]) && g.has_edge(ids[1], ids[2]) && g.has_edge(ids[0], ids[2])
        );
        assert!(PartitionGraph::build(0).is_err());
    }

    #[test]
    fn edge_list_format() {
        let g = PartitionGraph::build(3).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "[3]\t[2,1]\n[2,1]\t[1,1,1]\n"
        );
    }

    #[test]
    fn require_id_rejects_foreign_partition() {
        let g = PartitionGraph::build(4).unwrap();
        assert!(g.require_id(&p(&[3, 2])).is_err());
    }
}
