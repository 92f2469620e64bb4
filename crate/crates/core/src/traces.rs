//! Distinguished vertex regions of `G_n` and the traces of layers and
//! boundaries on them.
//!
//! The framework is taken to be the set of hooks `(n-k, 1^k)`, a path from
//! `(n)` to `(1^n)`. That convention lives in [`framework`] only.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::{PartitionGraph, VertexId};
use crate::partition::Partition;
use crate::strata::{BoundarySets, Stratification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Self-conjugate partitions.
    Axis,
    /// Hook partitions.
    Framework,
}

impl RegionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionKind::Axis => "axis",
            RegionKind::Framework => "framework",
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub kind: RegionKind,
    pub n: u32,
    /// Ascending vertex ids.
    pub members: Vec<VertexId>,
}

impl Region {
    pub fn contains(&self, id: VertexId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn partitions(&self, g: &PartitionGraph) -> Vec<Partition> {
        self.members.iter().map(|&v| g.vertex(v).clone()).collect()
    }

    fn check_n(&self, n: u32) -> Result<()> {
        if self.n != n {
            return Err(invalid(format!(
                "{} region is for n={} but the data is for n={n}",
                self.kind, self.n
            )));
        }
        Ok(())
    }

    fn intersect(&self, ids: &[VertexId]) -> Vec<VertexId> {
        ids.iter().copied().filter(|&v| self.contains(v)).collect()
    }
}

pub fn axis(g: &PartitionGraph) -> Region {
    let members = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_self_conjugate())
        .map(|(i, _)| i as VertexId)
        .collect();
    Region {
        kind: RegionKind::Axis,
        n: g.n(),
        members,
    }
}

/// The hooks of `n`, ordered from `(n)` to `(1^n)` in canonical order.
pub fn framework(g: &PartitionGraph) -> Result<Region> {
    let n = g.n();
    if n < 2 {
        return Err(invalid("the framework is defined only for n >= 2"));
    }
    let mut members = (0..n)
        .map(|k| g.require_id(&Partition::hook(n, k)?))
        .collect::<Result<Vec<_>>>()?;
    members.sort_unstable();
    Ok(Region {
        kind: RegionKind::Framework,
        n,
        members,
    })
}

/// Ids of `L_r(n) ∩ region`.
pub fn layer_trace(s: &Stratification, region: &Region, r: u32) -> Result<Vec<VertexId>> {
    region.check_n(s.n())?;
    Ok(region.intersect(s.layer_ids(r)))
}

/// Ids of `L_{>=r}(n) ∩ region`.
pub fn layer_ge_trace(s: &Stratification, region: &Region, r: u32) -> Result<Vec<VertexId>> {
    region.check_n(s.n())?;
    Ok(region.intersect(&s.layer_ge_ids(r)))
}

/// Ids of `∂_{r,r+1}(n) ∩ region`.
pub fn boundary_trace(b: &BoundarySets, region: &Region) -> Result<Vec<VertexId>> {
    region.check_n(b.n)?;
    Ok(region.intersect(&b.full))
}

/// One-sided traces `(B_r ∩ region, B⁻_{r+1} ∩ region)`.
pub fn one_sided_traces(
    b: &BoundarySets,
    region: &Region,
) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
    region.check_n(b.n)?;
    Ok((region.intersect(&b.lower), region.intersect(&b.upper)))
}
