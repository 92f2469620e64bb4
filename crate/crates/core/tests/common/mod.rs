#![allow(dead_code)]

use partition_strata::{InducedSubgraph, PartitionGraph, VertexId};

/// p(n) by Euler's pentagonal number recurrence.
pub fn partition_counts(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max as i64 {
        let mut total = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[(n - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                total += sign * p[(n - g2) as usize];
            }
        }
        p[n as usize] = total;
    }
    p.into_iter().map(|v| v as u64).collect()
}

/// Maximum clique by checking every vertex subset. Exponential; small graphs only.
pub fn naive_clique_number(k: usize, adjacent: impl Fn(usize, usize) -> bool) -> usize {
    assert!(k <= 24, "naive search over {k} vertices is too large");
    let mut masks = vec![0u32; k];
    for (i, m) in masks.iter_mut().enumerate() {
        for j in 0..k {
            if i != j && adjacent(i, j) {
                *m |= 1 << j;
            }
        }
    }
    let mut best = 0;
    for subset in 0u32..(1u32 << k) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let is_clique = (0..k)
            .filter(|&i| subset >> i & 1 == 1)
            .all(|i| subset & !(1 << i) & !masks[i] == 0);
        if is_clique {
            best = size;
        }
    }
    best
}

pub fn naive_neighborhood_clique(g: &PartitionGraph, v: VertexId) -> usize {
    let ns = g.neighbors(v);
    naive_clique_number(ns.len(), |i, j| g.has_edge(ns[i], ns[j]))
}

pub fn clique_of(k: usize, edges: &[(usize, usize)]) -> usize {
    InducedSubgraph::from_edges(k, edges).clique_number()
}
