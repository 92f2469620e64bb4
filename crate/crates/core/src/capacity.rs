//! Star and top capacities and the closed form for the local simplex dimension.
//!
//! For a removable corner `c`, `A_max(λ, c)` is the set of addable corners
//! `a` with `λ(c→a)` admissible; the star capacity `s(λ)` is the largest such
//! set. Dually, `C_max(λ, a)` collects removable corners moving admissibly to
//! `a`, and `t(λ)` is its maximum size. For `n >= 2`,
//! `dim_loc(λ) = max(1, s(λ), t(λ))`, and `dim_loc((1)) = 0`.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::partition::{Cell, CornerSets, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CapacityProfile {
    pub s: u32,
    pub t: u32,
    pub dim_loc: u32,
    pub star_witness: Option<Cell>,
    pub top_witness: Option<Cell>,
}

/// Every admissible pair `(c, a)` with its result, in (row of c, row of a) order.
fn admissible_pairs(lambda: &Partition, corners: &CornerSets) -> Vec<(Cell, Cell, Partition)> {
    let mut out = Vec::new();
    for &c in &corners.removable {
        for &a in &corners.addable {
            if let Some(mu) = lambda.transfer_unchecked(c, a) {
                out.push((c, a, mu));
            }
        }
    }
    out
}

/// `A_max(λ, c)`.
pub fn admissible_targets(lambda: &Partition, c: Cell) -> Result<Vec<Cell>> {
    let corners = lambda.corners();
    if !corners.removable.contains(&c) {
        return Err(invalid(format!(
            "{c} is not a removable corner of {lambda}"
        )));
    }
    Ok(corners
        .addable
        .iter()
        .copied()
        .filter(|&a| lambda.transfer_unchecked(c, a).is_some())
        .collect())
}

/// `C_max(λ, a)`.
pub fn admissible_sources(lambda: &Partition, a: Cell) -> Result<Vec<Cell>> {
    let corners = lambda.corners();
    if !corners.addable.contains(&a) {
        return Err(invalid(format!("{a} is not an addable corner of {lambda}")));
    }
    Ok(corners
        .removable
        .iter()
        .copied()
        .filter(|&c| lambda.transfer_unchecked(c, a).is_some())
        .collect())
}

// Ties go to the first corner, i.e. the smallest row. A zero maximum has no witness.
fn best_of(counts: impl Iterator<Item = (Cell, u32)>) -> (u32, Option<Cell>) {
    let mut best = (0, None);
    for (cell, count) in counts {
        if count > best.0 {
            best = (count, Some(cell));
        }
    }
    best
}

/// `s(λ)` with the smallest-row removable corner attaining it.
pub fn star_capacity(lambda: &Partition) -> (u32, Option<Cell>) {
    let corners = lambda.corners();
    let pairs = admissible_pairs(lambda, &corners);
    best_of(
        corners
            .removable
            .iter()
            .map(|&c| (c, pairs.iter().filter(|(pc, _, _)| *pc == c).count() as u32)),
    )
}

/// `t(λ)` with the smallest-row addable corner attaining it.
pub fn top_capacity(lambda: &Partition) -> (u32, Option<Cell>) {
    let corners = lambda.corners();
    let pairs = admissible_pairs(lambda, &corners);
    best_of(
        corners
            .addable
            .iter()
            .map(|&a| (a, pairs.iter().filter(|(_, pa, _)| *pa == a).count() as u32)),
    )
}

/// `{λ} ∪ {λ(c→a) : a ∈ A_max(λ, c)}`.
pub fn full_star_simplex(lambda: &Partition, c: Cell) -> Result<Vec<Partition>> {
    let targets = admissible_targets(lambda, c)?;
    let mut out = vec![lambda.clone()];
    out.extend(
        targets
            .into_iter()
            .filter_map(|a| lambda.transfer_unchecked(c, a)),
    );
    Ok(out)
}

/// `{λ} ∪ {λ(c→a) : c ∈ C_max(λ, a)}`.
pub fn full_top_simplex(lambda: &Partition, a: Cell) -> Result<Vec<Partition>> {
    let sources = admissible_sources(lambda, a)?;
    let mut out = vec![lambda.clone()];
    out.extend(
        sources
            .into_iter()
            .filter_map(|c| lambda.transfer_unchecked(c, a)),
    );
    Ok(out)
}

pub fn capacity_profile(lambda: &Partition) -> CapacityProfile {
    let (s, star_witness) = star_capacity(lambda);
    let (t, top_witness) = top_capacity(lambda);
    let dim_loc = if lambda.n() == 1 { 0 } else { s.max(t).max(1) };
    CapacityProfile {
        s,
        t,
        dim_loc,
        star_witness,
        top_witness,
    }
}

pub fn dim_loc_capacity(lambda: &Partition) -> u32 {
    capacity_profile(lambda).dim_loc
}
