//! Range verification of the registered claims.
//!
//! Every claim is checked over `n = 1..=n_max` with both `dim_loc` routes.
//! A claim is `verified-in-range` when at least one instance falls in range
//! and none fails, `skipped` when no instance falls in range, and `falsified`
//! with a counterexample otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::Cache;
use crate::capacity::dim_loc_capacity;
use crate::clique::dim_loc_clique_by_id;
use crate::error::{invalid, Result};
use crate::graph::{PartitionGraph, VertexId};
use crate::partition::{staircase, Partition};
use crate::reference;
use crate::strata::{boundaries, component_count, Stratification, ThresholdTable};
use crate::traces::{boundary_trace, framework, layer_trace, one_sided_traces};

pub const CLAIM_ZERO_LAYER: &str = "claim.zero-layer";
pub const CLAIM_ORACLE: &str = "claim.oracle.agreement";
pub const CLAIM_DELTA: &str = "claim.delta.sequence";
pub const CLAIM_TAU_TABLE: &str = "claim.tau.table";
pub const CLAIM_TRIANGULAR: &str = "claim.tau.triangular";
pub const CLAIM_FIRST_FAMILY: &str = "claim.firstfamily.staircase";
pub const CLAIM_LAYER_SIZES: &str = "claim.layer-sizes.table";
pub const CLAIM_ANTENNAS: &str = "claim.L1.antennas";
pub const CLAIM_BOUNDARY: &str = "claim.boundary.tau-eq";
pub const CLAIM_FW_LOW: &str = "claim.framework.lowlayers";
pub const CLAIM_FW_TRACES: &str = "claim.framework.traces";

/// The fixed claim registry.
pub const CLAIM_IDS: [&str; 11] = [
    CLAIM_ZERO_LAYER,
    CLAIM_ORACLE,
    CLAIM_DELTA,
    CLAIM_TAU_TABLE,
    CLAIM_TRIANGULAR,
    CLAIM_FIRST_FAMILY,
    CLAIM_LAYER_SIZES,
    CLAIM_ANTENNAS,
    CLAIM_BOUNDARY,
    CLAIM_FW_LOW,
    CLAIM_FW_TRACES,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedInRange,
    Falsified,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::VerifiedInRange => "verified-in-range",
            Status::Falsified => "falsified",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u32,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub range_max: u32,
    pub claims: BTreeMap<String, ClaimCheck>,
    /// `Δ(n)` for `n = 1..=range_max`.
    pub delta: Vec<u32>,
    pub tau: BTreeMap<u32, u32>,
    pub tau_ge: BTreeMap<u32, u32>,
    pub tau_boundary: BTreeMap<u32, u32>,
    /// Per `n`, `(r, |∂_{r,r+1}(n)|, components)` for nonempty boundaries.
    /// Exploratory; not checked against anything.
    pub boundary_components: BTreeMap<u32, Vec<(u32, usize, usize)>>,
}

impl VerificationReport {
    pub fn check(&self, id: &str) -> Option<&ClaimCheck> {
        self.claims.get(id)
    }

    /// True when any claim is falsified (oracle disagreement included).
    pub fn has_failures(&self) -> bool {
        self.claims.values().any(|c| c.status == Status::Falsified)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One line per claim, in registry order.
    pub fn render_text(&self) -> String {
        let mut out = format!("verification over n = 1..={}\n", self.range_max);
        for id in CLAIM_IDS {
            let c = &self.claims[id];
            let _ = write!(out, "[{}] {id}: {}", c.status, c.details);
            if let Some(cx) = &c.counterexample {
                let _ = write!(out, " (counterexample n={} {})", cx.n, cx.partition);
            }
            out.push('\n');
        }
        out
    }
}

/// Graph and cross-checked stratification for one `n`.
pub struct Level {
    pub graph: PartitionGraph,
    pub strat: Stratification,
    /// `(vertex, clique route, capacity route)` wherever the routes differ.
    pub disagreements: Vec<(VertexId, u32, u32)>,
}

impl Level {
    /// Builds `G_n` and computes both routes for every vertex. The clique
    /// route is authoritative for the stratification.
    pub fn compute(n: u32) -> Result<Self> {
        let graph = PartitionGraph::build(n)?;
        let pairs: Vec<(u32, u32)> = (0..graph.vertex_count() as VertexId)
            .into_par_iter()
            .map(|v| {
                (
                    dim_loc_clique_by_id(&graph, v),
                    dim_loc_capacity(graph.vertex(v)),
                )
            })
            .collect();
        let disagreements = pairs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(v, &(a, b))| (v as VertexId, a, b))
            .collect();
        let strat = Stratification::from_dims(n, pairs.into_iter().map(|(d, _)| d).collect())?;
        Ok(Level {
            graph,
            strat,
            disagreements,
        })
    }

    fn load_or_compute(n: u32, cache: Option<&Cache>) -> Result<Self> {
        if let Some(strat) = cache.and_then(|c| c.load_stratification(n, true)) {
            return Ok(Level {
                graph: PartitionGraph::build(n)?,
                strat,
                disagreements: Vec::new(),
            });
        }
        let level = Self::compute(n)?;
        if let Some(c) = cache {
            if level.disagreements.is_empty() {
                if let Err(e) = c.store(&level.strat, true) {
                    log::warn!("could not cache n={n}: {e}");
                }
            }
        }
        Ok(level)
    }
}

/// Computes every level `1..=n_max` (in parallel) and checks the registry.
pub fn verify(n_max: u32, cache: Option<&Cache>) -> Result<VerificationReport> {
    if n_max == 0 {
        return Err(invalid("n_max must be positive"));
    }
    let levels = (1..=n_max)
        .into_par_iter()
        .map(|n| Level::load_or_compute(n, cache))
        .collect::<Result<Vec<_>>>()?;
    verify_levels(&levels)
}

/// Checks the registry against precomputed levels for `n = 1, 2, ...`.
pub fn verify_levels(levels: &[Level]) -> Result<VerificationReport> {
    let n_max = levels.len() as u32;
    let table = ThresholdTable::from_levels(levels.iter().map(|l| (&l.graph, &l.strat)))?;
    let mut claims = BTreeMap::new();
    let mut put = |id: &str, c: ClaimCheck| {
        claims.insert(id.to_string(), c);
    };
    put(CLAIM_ZERO_LAYER, check_zero_layer(levels));
    put(CLAIM_ORACLE, check_oracle(levels));
    put(CLAIM_DELTA, check_delta(levels));
    put(CLAIM_TAU_TABLE, check_tau_table(levels, &table));
    put(CLAIM_TRIANGULAR, check_triangular(levels, &table));
    put(CLAIM_FIRST_FAMILY, check_first_family(levels, &table));
    put(CLAIM_LAYER_SIZES, check_layer_sizes(levels));
    put(CLAIM_ANTENNAS, check_antennas(levels));
    put(CLAIM_BOUNDARY, check_boundary(levels, &table));
    put(CLAIM_FW_LOW, check_framework_low(levels)?);
    put(CLAIM_FW_TRACES, check_framework_traces(levels)?);

    let mut boundary_components = BTreeMap::new();
    for l in levels {
        let mut rows = Vec::new();
        for r in 0..l.strat.delta() {
            let b = boundaries(&l.strat, &l.graph, r)?;
            if !b.is_empty() {
                rows.push((r, b.full.len(), component_count(&l.graph, &b.full)));
            }
        }
        boundary_components.insert(l.strat.n(), rows);
    }

    Ok(VerificationReport {
        range_max: n_max,
        claims,
        delta: table.deltas.clone(),
        tau: table.tau.clone(),
        tau_ge: table.tau_ge.clone(),
        tau_boundary: table.tau_boundary.clone(),
        boundary_components,
    })
}

fn verified(details: impl Into<String>) -> ClaimCheck {
    ClaimCheck {
        status: Status::VerifiedInRange,
        details: details.into(),
        counterexample: None,
    }
}

fn skipped(details: impl Into<String>) -> ClaimCheck {
    ClaimCheck {
        status: Status::Skipped,
        details: details.into(),
        counterexample: None,
    }
}

fn falsified(details: impl Into<String>, n: u32, partition: Partition) -> ClaimCheck {
    ClaimCheck {
        status: Status::Falsified,
        details: details.into(),
        counterexample: Some(Counterexample { n, partition }),
    }
}

fn level(levels: &[Level], n: u32) -> Option<&Level> {
    levels.get(n.checked_sub(1)? as usize)
}

/// Some vertex of `L_{>=Δ(n)}(n)`, used to anchor counterexamples about `n` as a whole.
fn top_vertex(l: &Level) -> Partition {
    l.strat.layer(l.strat.delta())[0].clone()
}

fn check_zero_layer(levels: &[Level]) -> ClaimCheck {
    let l1 = &levels[0];
    if l1.strat.layer(0) != vec![Partition::row(1).expect("n=1")] {
        return falsified("L_0(1) is not {(1)}", 1, Partition::row(1).expect("n=1"));
    }
    for l in &levels[1..] {
        if let Some(v) = l.strat.layer(0).first() {
            return falsified(
                format!("L_0({}) is nonempty", l.strat.n()),
                l.strat.n(),
                v.clone(),
            );
        }
    }
    verified(format!(
        "L_0(1) = {{(1)}} and L_0(n) empty for 2 <= n <= {}",
        levels.len()
    ))
}

fn check_oracle(levels: &[Level]) -> ClaimCheck {
    let mut vertices = 0usize;
    for l in levels {
        vertices += l.graph.vertex_count();
        if let Some(&(v, clique, capacity)) = l.disagreements.first() {
            return falsified(
                format!(
                    "{} disagreement(s) at n={}; first: clique {clique} vs capacity {capacity}",
                    l.disagreements.len(),
                    l.strat.n()
                ),
                l.strat.n(),
                l.graph.vertex(v).clone(),
            );
        }
    }
    verified(format!(
        "clique and capacity routes agree on all {vertices} vertices"
    ))
}

fn check_delta(levels: &[Level]) -> ClaimCheck {
    let covered = (levels.len() as u32).min(reference::RANGE_MAX);
    for n in 1..=covered {
        let l = level(levels, n).expect("in range");
        let expected = reference::DELTA_SEQUENCE[n as usize - 1];
        if l.strat.delta() != expected {
            return falsified(
                format!("Δ({n}) = {}, expected {expected}", l.strat.delta()),
                n,
                top_vertex(l),
            );
        }
    }
    let mut details = format!("Δ(n) matches the reference sequence for 1 <= n <= {covered}");
    if levels.len() as u32 > reference::RANGE_MAX {
        details.push_str("; no reference beyond n=30");
    }
    verified(details)
}

fn check_tau_table(levels: &[Level], table: &ThresholdTable) -> ClaimCheck {
    let n_max = levels.len() as u32;
    let mut checked = Vec::new();
    for &(r, expected) in &reference::TAU {
        match table.tau.get(&r) {
            Some(&got) if got != expected => {
                let l = level(levels, got).expect("in range");
                return falsified(
                    format!("τ({r}) = {got}, expected {expected}"),
                    got,
                    l.strat.layer(r)[0].clone(),
                );
            }
            None if expected <= n_max => {
                let l = level(levels, expected).expect("in range");
                return falsified(
                    format!("L_{r}({expected}) is empty, expected τ({r}) = {expected}"),
                    expected,
                    top_vertex(l),
                );
            }
            Some(_) => checked.push(r),
            None => {}
        }
    }
    verified(format!(
        "τ(r) matches the reference table for r in {checked:?}"
    ))
}

fn check_triangular(levels: &[Level], table: &ThresholdTable) -> ClaimCheck {
    let n_max = levels.len() as u32;
    for (&r, &got) in &table.tau {
        let expected = reference::triangular_threshold(r);
        if got != expected {
            let l = level(levels, got).expect("in range");
            return falsified(
                format!("τ({r}) = {got} but 1 + r(r+1)/2 = {expected}"),
                got,
                l.strat.layer(r)[0].clone(),
            );
        }
    }
    let mut r = 0;
    while reference::triangular_threshold(r) <= n_max {
        let expected = reference::triangular_threshold(r);
        if !table.tau.contains_key(&r) {
            let l = level(levels, expected).expect("in range");
            return falsified(
                format!("L_{r} never appears in range although 1 + r(r+1)/2 = {expected}"),
                expected,
                top_vertex(l),
            );
        }
        r += 1;
    }
    for l in levels {
        let n = l.strat.n();
        let expected = (0..)
            .take_while(|&r| reference::triangular_threshold(r) <= n)
            .last()
            .unwrap_or(0);
        if l.strat.delta() != expected {
            return falsified(
                format!(
                    "Δ({n}) = {}, triangular prediction {expected}",
                    l.strat.delta()
                ),
                n,
                top_vertex(l),
            );
        }
    }
    let gaps: Vec<u32> = table
        .tau
        .values()
        .collect::<Vec<_>>()
        .windows(2)
        .map(|w| w[1] - w[0])
        .collect();
    verified(format!(
        "τ(r) = 1 + r(r+1)/2 for r <= {}; gaps {gaps:?}; higher r beyond range",
        r - 1
    ))
}

fn check_first_family(levels: &[Level], table: &ThresholdTable) -> ClaimCheck {
    let mut checked = Vec::new();
    for (&r, &n) in table.tau.range(2..) {
        let l = level(levels, n).expect("in range");
        let layer: BTreeSet<Partition> = l.strat.layer(r).into_iter().collect();
        let family: BTreeSet<Partition> = staircase(r)
            .expect("r >= 2")
            .one_cell_extensions()
            .into_iter()
            .collect();
        if let Some(extra) = layer.symmetric_difference(&family).next() {
            return falsified(
                format!("L_{r}({n}) differs from the one-cell extensions of the staircase δ_{r}"),
                n,
                extra.clone(),
            );
        }
        if layer.len() != r as usize + 1 {
            return falsified(
                format!("|L_{r}({n})| = {}, expected {}", layer.len(), r + 1),
                n,
                layer.first().expect("nonempty").clone(),
            );
        }
        if let Some((_, listing)) = reference::FIRST_LAYERS.iter().find(|(lr, _)| *lr == r) {
            let listed: BTreeSet<Partition> = listing
                .iter()
                .map(|parts| Partition::try_from(*parts).expect("valid listing"))
                .collect();
            if let Some(extra) = layer.symmetric_difference(&listed).next() {
                return falsified(
                    format!("L_{r}({n}) differs from the reference listing"),
                    n,
                    extra.clone(),
                );
            }
        }
        checked.push(r);
    }
    if checked.is_empty() {
        return skipped("no layer L_r with r >= 2 appears in range");
    }
    verified(format!(
        "L_r(τ(r)) = one-cell extensions of δ_r, size r+1, for r in {checked:?}"
    ))
}

fn check_layer_sizes(levels: &[Level]) -> ClaimCheck {
    let mut checked = Vec::new();
    for &(n, delta, sizes) in &reference::LAYER_SIZES_AT_THRESHOLDS {
        let Some(l) = level(levels, n) else { continue };
        if l.strat.delta() != delta {
            return falsified(
                format!("Δ({n}) = {}, expected {delta}", l.strat.delta()),
                n,
                top_vertex(l),
            );
        }
        for (i, &expected) in sizes.iter().enumerate() {
            let r = i as u32 + 1;
            let got = l.strat.layer_ids(r).len();
            if got != expected {
                let witness = l
                    .strat
                    .layer(r)
                    .first()
                    .cloned()
                    .unwrap_or_else(|| top_vertex(l));
                return falsified(
                    format!("|L_{r}({n})| = {got}, expected {expected}"),
                    n,
                    witness,
                );
            }
        }
        checked.push(n);
    }
    if checked.is_empty() {
        return skipped("no reference row with n in range");
    }
    verified(format!(
        "layer profiles match the reference rows n in {checked:?}"
    ))
}

fn antennas(n: u32) -> Vec<Partition> {
    vec![
        Partition::row(n).expect("n >= 1"),
        Partition::column(n).expect("n >= 1"),
    ]
}

fn check_antennas(levels: &[Level]) -> ClaimCheck {
    let in_range: Vec<&Level> = levels.iter().filter(|l| l.strat.n() >= 4).collect();
    if in_range.is_empty() {
        return skipped("needs n >= 4");
    }
    for l in &in_range {
        let n = l.strat.n();
        let layer = l.strat.layer(1);
        let expected = antennas(n);
        if layer != expected {
            let witness = layer
                .iter()
                .find(|v| !expected.contains(v))
                .or_else(|| expected.iter().find(|v| !layer.contains(v)))
                .expect("sets differ")
                .clone();
            return falsified(format!("L_1({n}) has {} vertices", layer.len()), n, witness);
        }
    }
    verified(format!(
        "L_1(n) = {{(n),(1^n)}} for 4 <= n <= {}",
        levels.len()
    ))
}

fn check_boundary(levels: &[Level], table: &ThresholdTable) -> ClaimCheck {
    let n_max = levels.len() as u32;
    for &(r, expected) in &reference::TAU_BOUNDARY {
        match table.tau_boundary.get(&r) {
            Some(&got) if got != expected => {
                let l = level(levels, got).expect("in range");
                let b = boundaries(&l.strat, &l.graph, r).expect("same n");
                return falsified(
                    format!("τ_∂({r}) = {got}, expected {expected}"),
                    got,
                    l.graph.vertex(b.full[0]).clone(),
                );
            }
            None if expected <= n_max => {
                let l = level(levels, expected).expect("in range");
                return falsified(
                    format!(
                        "∂_{{{r},{}}}({expected}) is empty, expected τ_∂({r}) = {expected}",
                        r + 1
                    ),
                    expected,
                    top_vertex(l),
                );
            }
            _ => {}
        }
    }
    let levels_seen: BTreeSet<u32> = table
        .tau_boundary
        .keys()
        .copied()
        .chain(table.tau.keys().filter(|&&r| r >= 2).map(|r| r - 1))
        .filter(|&r| r >= 1)
        .collect();
    for &r in &levels_seen {
        let boundary = table.tau_boundary.get(&r).copied();
        let upper = table.tau.get(&(r + 1)).copied();
        if boundary != upper {
            let n = boundary.or(upper).expect("one side witnessed");
            let l = level(levels, n).expect("in range");
            return falsified(
                format!("τ_∂({r}) = {boundary:?} but τ({}) = {upper:?}", r + 1),
                n,
                top_vertex(l),
            );
        }
    }
    if levels_seen.is_empty() {
        return skipped("no boundary with r >= 1 in range");
    }
    verified(format!(
        "τ_∂(r) = τ(r+1) for r in {:?}",
        levels_seen.iter().collect::<Vec<_>>()
    ))
}

fn framework_levels(levels: &[Level]) -> impl Iterator<Item = &Level> {
    levels.iter().filter(|l| l.strat.n() >= 4)
}

fn check_framework_low(levels: &[Level]) -> Result<ClaimCheck> {
    if framework_levels(levels).next().is_none() {
        return Ok(skipped("needs n >= 4"));
    }
    for l in framework_levels(levels) {
        let n = l.strat.n();
        let fw = framework(&l.graph)?;
        if let Some(&v) = fw.members.iter().find(|&&v| l.strat.dim(v) > 2) {
            log::error!(
                "framework convention check failed at n={n}: {} has dim_loc {}",
                l.graph.vertex(v),
                l.strat.dim(v)
            );
            return Ok(falsified(
                format!("framework vertex with dim_loc {} at n={n}", l.strat.dim(v)),
                n,
                l.graph.vertex(v).clone(),
            ));
        }
        let low: Vec<Partition> = layer_trace(&l.strat, &fw, 1)?
            .into_iter()
            .map(|v| l.graph.vertex(v).clone())
            .collect();
        if low != antennas(n) {
            log::error!("framework convention check failed at n={n}: Fw ∩ L_1 = {low:?}");
            let witness = low
                .first()
                .cloned()
                .unwrap_or_else(|| Partition::row(n).expect("n >= 4"));
            return Ok(falsified(
                format!("Fw ∩ L_1 has {} vertices at n={n}", low.len()),
                n,
                witness,
            ));
        }
    }
    Ok(verified(format!(
        "Fw ⊆ L_1 ∪ L_2 and Fw ∩ L_1 = antennas for 4 <= n <= {}",
        levels.len()
    )))
}

fn check_framework_traces(levels: &[Level]) -> Result<ClaimCheck> {
    if framework_levels(levels).next().is_none() {
        return Ok(skipped("needs n >= 4"));
    }
    for l in framework_levels(levels) {
        let n = l.strat.n();
        let g = &l.graph;
        let fw = framework(g)?;
        let ids = |v: Vec<Partition>| -> Result<BTreeSet<VertexId>> {
            v.iter().map(|p| g.require_id(p)).collect()
        };
        let ant = ids(antennas(n))?;
        let inner = ids(vec![Partition::hook(n, 1)?, Partition::hook(n, n - 2)?])?;
        let outer: BTreeSet<VertexId> = ant.union(&inner).copied().collect();

        let mismatch = |what: String, got: &BTreeSet<VertexId>, want: &BTreeSet<VertexId>| {
            let v = *got.symmetric_difference(want).next().expect("sets differ");
            log::error!("framework convention check failed at n={n}: {what}");
            falsified(what, n, g.vertex(v).clone())
        };

        let b1 = boundaries(&l.strat, g, 1)?;
        let (lower, upper) = one_sided_traces(&b1, &fw)?;
        let lower: BTreeSet<VertexId> = lower.into_iter().collect();
        let upper: BTreeSet<VertexId> = upper.into_iter().collect();
        let full1: BTreeSet<VertexId> = boundary_trace(&b1, &fw)?.into_iter().collect();
        if lower != ant {
            return Ok(mismatch(
                format!("B_1 ∩ Fw differs from antennas at n={n}"),
                &lower,
                &ant,
            ));
        }
        if upper != inner {
            return Ok(mismatch(
                format!("B⁻_2 ∩ Fw differs from {{(n-1,1),(2,1^(n-2))}} at n={n}"),
                &upper,
                &inner,
            ));
        }
        if full1 != outer {
            return Ok(mismatch(
                format!("∂^Fw_{{1,2}} differs from the four outer hooks at n={n}"),
                &full1,
                &outer,
            ));
        }
        if n >= 7 {
            let b2 = boundaries(&l.strat, g, 2)?;
            let full2: BTreeSet<VertexId> = boundary_trace(&b2, &fw)?.into_iter().collect();
            let want: BTreeSet<VertexId> = fw
                .members
                .iter()
                .copied()
                .filter(|v| !outer.contains(v))
                .collect();
            if full2 != want {
                return Ok(mismatch(
                    format!("∂^Fw_{{2,3}} differs from Fw minus outer hooks at n={n}"),
                    &full2,
                    &want,
                ));
            }
        }
        for r in 3..l.strat.delta().max(3) {
            let b = boundaries(&l.strat, g, r)?;
            if let Some(&v) = boundary_trace(&b, &fw)?.first() {
                log::error!(
                    "framework convention check failed at n={n}: ∂^Fw_{{{r},{}}} nonempty",
                    r + 1
                );
                return Ok(falsified(
                    format!("∂^Fw_{{{r},{}}} is nonempty at n={n}", r + 1),
                    n,
                    g.vertex(v).clone(),
                ));
            }
        }
    }
    Ok(verified(format!(
        "framework boundary traces hold for 4 <= n <= {} (∂^Fw_{{2,3}} from n=7)",
        levels.len()
    )))
}
