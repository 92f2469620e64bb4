//! Simplex layers, phase boundaries, interface graphs and thresholds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::dim_loc_capacity;
use crate::clique::dim_loc_clique_by_id;
use crate::error::{invalid, Error, Result};
use crate::graph::{PartitionGraph, VertexId};
use crate::partition::{enumerate_partitions, Partition};

/// How `dim_loc` is computed for each vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Closed form `max(1, s, t)`.
    #[default]
    Capacity,
    /// Clique number of the neighborhood subgraph.
    Clique,
    /// Both, failing on the first disagreement.
    CrossCheck,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Capacity => "capacity",
            Mode::Clique => "clique",
            Mode::CrossCheck => "cross-check",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "capacity" => Ok(Mode::Capacity),
            "clique" => Ok(Mode::Clique),
            "cross-check" => Ok(Mode::CrossCheck),
            other => Err(invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    n: u32,
    vertices: Vec<Partition>,
    dims: Vec<u32>,
    layers: BTreeMap<u32, Vec<VertexId>>,
    delta: u32,
}

impl Stratification {
    /// Assembles a stratification from per-vertex dimensions in canonical vertex order.
    pub fn from_dims(n: u32, dims: Vec<u32>) -> Result<Self> {
        let vertices = enumerate_partitions(n)?;
        if vertices.len() != dims.len() {
            return Err(invalid(format!(
                "{} dimensions supplied for {} partitions of {n}",
                dims.len(),
                vertices.len()
            )));
        }
        let mut layers: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
        for (id, &d) in dims.iter().enumerate() {
            layers.entry(d).or_default().push(id as VertexId);
        }
        let delta = dims.iter().copied().max().unwrap_or(0);
        Ok(Stratification {
            n,
            vertices,
            dims,
            layers,
            delta,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &[Partition] {
        &self.vertices
    }

    /// `dim_loc` per canonical vertex id.
    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn dim(&self, id: VertexId) -> u32 {
        self.dims[id as usize]
    }

    /// `Δ(n)`.
    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Ids of `L_r(n)`, ascending.
    pub fn layer_ids(&self, r: u32) -> &[VertexId] {
        self.layers.get(&r).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `L_r(n)` in canonical order.
    pub fn layer(&self, r: u32) -> Vec<Partition> {
        self.partitions(self.layer_ids(r))
    }

    /// Ids of `L_{>=r}(n)`, ascending.
    pub fn layer_ge_ids(&self, r: u32) -> Vec<VertexId> {
        let mut ids: Vec<VertexId> = self
            .layers
            .range(r..)
            .flat_map(|(_, v)| v.iter().copied())
            .collect();
        ids.sort_unstable();
        ids
    }

    /// `L_{>=r}(n)` in canonical order.
    pub fn layer_ge(&self, r: u32) -> Vec<Partition> {
        self.partitions(&self.layer_ge_ids(r))
    }

    /// `(r, |L_r(n)|)` for every nonempty layer.
    pub fn layer_sizes(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.layers.iter().map(|(&r, ids)| (r, ids.len()))
    }

    pub fn partitions(&self, ids: &[VertexId]) -> Vec<Partition> {
        ids.iter()
            .map(|&i| self.vertices[i as usize].clone())
            .collect()
    }

    fn vertex_of(&self, id: VertexId) -> &Partition {
        &self.vertices[id as usize]
    }

    fn check_graph(&self, g: &PartitionGraph) -> Result<()> {
        if g.n() != self.n {
            return Err(invalid(format!(
                "stratification is for n={} but graph is G_{}",
                self.n,
                g.n()
            )));
        }
        Ok(())
    }
}

/// Computes `dim_loc` for every vertex of `n` under `mode`.
pub fn stratify(n: u32, mode: Mode) -> Result<Stratification> {
    match mode {
        Mode::Capacity => {
            let vertices = enumerate_partitions(n)?;
            let dims = vertices.par_iter().map(dim_loc_capacity).collect();
            Stratification::from_dims(n, dims)
        }
        Mode::Clique | Mode::CrossCheck => stratify_graph(&PartitionGraph::build(n)?, mode),
    }
}

/// As [`stratify`], reusing an already built graph.
pub fn stratify_graph(g: &PartitionGraph, mode: Mode) -> Result<Stratification> {
    let ids: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    let dims: Vec<u32> = match mode {
        Mode::Capacity => ids
            .par_iter()
            .map(|&v| dim_loc_capacity(g.vertex(v)))
            .collect(),
        Mode::Clique => ids
            .par_iter()
            .map(|&v| dim_loc_clique_by_id(g, v))
            .collect(),
        Mode::CrossCheck => {
            let pairs: Vec<(u32, u32)> = ids
                .par_iter()
                .map(|&v| (dim_loc_clique_by_id(g, v), dim_loc_capacity(g.vertex(v))))
                .collect();
            if let Some((id, &(clique, capacity))) =
                pairs.iter().enumerate().find(|(_, (a, b))| a != b)
            {
                return Err(Error::Inconsistency {
                    n: g.n(),
                    partition: g.vertex(id as VertexId).to_string(),
                    clique,
                    capacity,
                });
            }
            pairs.into_iter().map(|(d, _)| d).collect()
        }
    };
    Stratification::from_dims(g.n(), dims)
}

/// One-sided phase boundaries between `L_r(n)` and `L_{r+1}(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySets {
    pub n: u32,
    pub r: u32,
    /// `B_r(n)`.
    pub lower: Vec<VertexId>,
    /// `B⁻_{r+1}(n)`.
    pub upper: Vec<VertexId>,
    /// `∂_{r,r+1}(n)`.
    pub full: Vec<VertexId>,
}

impl BoundarySets {
    pub fn is_empty(&self) -> bool {
        self.full.is_empty()
    }
}

pub fn boundaries(s: &Stratification, g: &PartitionGraph, r: u32) -> Result<BoundarySets> {
    s.check_graph(g)?;
    let touches = |v: VertexId, level: u32| g.neighbors(v).iter().any(|&w| s.dim(w) == level);
    let lower: Vec<VertexId> = s
        .layer_ids(r)
        .iter()
        .copied()
        .filter(|&v| touches(v, r + 1))
        .collect();
    let upper: Vec<VertexId> = s
        .layer_ids(r + 1)
        .iter()
        .copied()
        .filter(|&v| touches(v, r))
        .collect();
    let mut full: Vec<VertexId> = lower.iter().chain(&upper).copied().collect();
    full.sort_unstable();
    Ok(BoundarySets {
        n: s.n(),
        r,
        lower,
        upper,
        full,
    })
}

/// Bipartite graph of the edges of `G_n` between `L_r(n)` and `L_{r+1}(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceGraph {
    pub n: u32,
    pub r: u32,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    /// `(left, right)` pairs, sorted.
    pub edges: Vec<(VertexId, VertexId)>,
}

impl InterfaceGraph {
    /// Vertices with interface degree at least one, ascending.
    pub fn touched(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        set.into_iter().collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }
}

pub fn interface_graph(s: &Stratification, g: &PartitionGraph, r: u32) -> Result<InterfaceGraph> {
    s.check_graph(g)?;
    let left = s.layer_ids(r).to_vec();
    let right = s.layer_ids(r + 1).to_vec();
    let mut edges: Vec<(VertexId, VertexId)> = left
        .iter()
        .flat_map(|&u| {
            g.neighbors(u)
                .iter()
                .filter(|&&w| s.dim(w) == r + 1)
                .map(move |&w| (u, w))
        })
        .collect();
    edges.sort_unstable();
    Ok(InterfaceGraph {
        n: s.n(),
        r,
        left,
        right,
        edges,
    })
}

/// Number of connected components of the subgraph of `G_n` induced on `vertices`.
pub fn component_count(g: &PartitionGraph, vertices: &[VertexId]) -> usize {
    let members: BTreeSet<VertexId> = vertices.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut components = 0;
    for &start in &members {
        if !seen.insert(start) {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if members.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    components
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdKind {
    Tau,
    TauGe,
    TauBoundary,
}

impl ThresholdKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdKind::Tau => "tau",
            ThresholdKind::TauGe => "tau_ge",
            ThresholdKind::TauBoundary => "tau_boundary",
        }
    }
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// First occurrences of layers, upper sets and boundaries over `n = 1..=range_max`.
///
/// Only levels actually witnessed in range have entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThresholdTable {
    pub range_max: u32,
    pub tau: BTreeMap<u32, u32>,
    pub tau_ge: BTreeMap<u32, u32>,
    pub tau_boundary: BTreeMap<u32, u32>,
    pub witnesses: BTreeMap<(ThresholdKind, u32), Partition>,
    /// `Δ(n)` for `n = 1..=range_max`.
    pub deltas: Vec<u32>,
}

impl ThresholdTable {
    /// Folds stratifications given for `n = 1, 2, ...` in order.
    pub fn from_levels<'a, I>(levels: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a PartitionGraph, &'a Stratification)>,
    {
        let mut table = ThresholdTable::default();
        for (g, s) in levels {
            let n = s.n();
            if n != table.range_max + 1 {
                return Err(invalid(format!(
                    "levels must run consecutively from n=1, got n={n} after {}",
                    table.range_max
                )));
            }
            table.range_max = n;
            table.deltas.push(s.delta());
            for (r, _) in s.layer_sizes() {
                table.record(ThresholdKind::Tau, r, n, s.vertex_of(s.layer_ids(r)[0]));
            }
            for r in 0..=s.delta() {
                let first = *s
                    .layer_ge_ids(r)
                    .first()
                    .expect("layer_ge(r) nonempty for r <= delta");
                table.record(ThresholdKind::TauGe, r, n, s.vertex_of(first));
            }
            for r in 0..s.delta() {
                let b = boundaries(s, g, r)?;
                if let Some(&first) = b.full.first() {
                    table.record(ThresholdKind::TauBoundary, r, n, s.vertex_of(first));
                }
            }
        }
        Ok(table)
    }

    fn record(&mut self, kind: ThresholdKind, r: u32, n: u32, witness: &Partition) {
        let map = match kind {
            ThresholdKind::Tau => &mut self.tau,
            ThresholdKind::TauGe => &mut self.tau_ge,
            ThresholdKind::TauBoundary => &mut self.tau_boundary,
        };
        if let std::collections::btree_map::Entry::Vacant(e) = map.entry(r) {
            e.insert(n);
            self.witnesses.insert((kind, r), witness.clone());
        }
    }

    pub fn get(&self, kind: ThresholdKind) -> &BTreeMap<u32, u32> {
        match kind {
            ThresholdKind::Tau => &self.tau,
            ThresholdKind::TauGe => &self.tau_ge,
            ThresholdKind::TauBoundary => &self.tau_boundary,
        }
    }

    /// `(kind, r, n, witness)` rows in kind, then level order.
    pub fn rows(&self) -> Vec<(ThresholdKind, u32, u32, &Partition)> {
        self.witnesses
            .iter()
            .map(|(&(kind, r), w)| (kind, r, self.get(kind)[&r], w))
            .collect()
    }
}

/// Builds `G_n` and its stratification for every `n` in `1..=n_max`, in parallel.
pub fn stratify_range(n_max: u32, mode: Mode) -> Result<Vec<(PartitionGraph, Stratification)>> {
    if n_max == 0 {
        return Err(invalid("n_max must be positive"));
    }
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let g = PartitionGraph::build(n)?;
            let s = stratify_graph(&g, mode)?;
            Ok((g, s))
        })
        .collect()
}

pub fn scan_thresholds(n_max: u32) -> Result<ThresholdTable> {
    scan_thresholds_with(n_max, Mode::Capacity)
}

pub fn scan_thresholds_with(n_max: u32, mode: Mode) -> Result<ThresholdTable> {
    let levels = stratify_range(n_max, mode)?;
    ThresholdTable::from_levels(levels.iter().map(|(g, s)| (g, s)))
}
