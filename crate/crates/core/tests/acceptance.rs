//! Acceptance suite over the range n <= 30. All comparisons are exact.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one PASS/FAIL line; the process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use partition_strata::capacity::{
    admissible_sources, admissible_targets, full_star_simplex, full_top_simplex,
};
use partition_strata::clique::dim_loc_clique_by_id;
use partition_strata::strata::{boundaries, interface_graph, Stratification, ThresholdTable};
use partition_strata::traces::{
    boundary_trace, framework, layer_ge_trace, layer_trace, one_sided_traces,
};
use partition_strata::{
    dim_loc_capacity, neighbors_by_corners, neighbors_by_multiset, staircase, InducedSubgraph,
    Partition, PartitionGraph, VertexId,
};
use rand::{Rng, SeedableRng};

use common::{naive_clique_number, naive_neighborhood_clique, partition_counts};

const N_MAX: u32 = 30;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Level {
    g: PartitionGraph,
    s: Stratification,
    capacity_dims: Vec<u32>,
}

/// Both routes computed independently for every n; the clique route defines the layers.
fn levels() -> Vec<Level> {
    (1..=N_MAX)
        .map(|n| {
            let g = PartitionGraph::build(n).unwrap();
            let ids = 0..g.vertex_count() as VertexId;
            let clique: Vec<u32> = ids.clone().map(|v| dim_loc_clique_by_id(&g, v)).collect();
            let capacity_dims = ids.map(|v| dim_loc_capacity(g.vertex(v))).collect();
            let s = Stratification::from_dims(n, clique).unwrap();
            Level {
                g,
                s,
                capacity_dims,
            }
        })
        .collect()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn set(v: Vec<Partition>) -> BTreeSet<Partition> {
    v.into_iter().collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_agreement(levels: &[Level]) -> Outcome {
    let mut count = 0;
    for l in levels {
        for (v, (&a, &b)) in l.s.dims().iter().zip(&l.capacity_dims).enumerate() {
            ensure(a == b, || {
                format!(
                    "n={} {}: clique {a} vs capacity {b}",
                    l.s.n(),
                    l.g.vertex(v as VertexId)
                )
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} vertices, 0 disagreements"))
}

fn delta_sequence(levels: &[Level]) -> Outcome {
    const EXPECTED: [u32; 30] = [
        0, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 6, 7, 7,
    ];
    let got: Vec<u32> = levels.iter().map(|l| l.s.delta()).collect();
    ensure(got == EXPECTED, || format!("got {got:?}"))?;
    Ok("Δ(1..=30) matches".into())
}

fn table(levels: &[Level]) -> ThresholdTable {
    ThresholdTable::from_levels(levels.iter().map(|l| (&l.g, &l.s))).unwrap()
}

fn threshold_table(levels: &[Level]) -> Outcome {
    let t = table(levels);
    let tau: Vec<u32> = t.tau.values().copied().collect();
    ensure(t.tau.keys().copied().eq(0..=7), || {
        format!("levels {:?}", t.tau.keys())
    })?;
    ensure(tau == [1, 2, 4, 7, 11, 16, 22, 29], || {
        format!("τ = {tau:?}")
    })?;
    let gaps: Vec<u32> = tau.windows(2).map(|w| w[1] - w[0]).collect();
    ensure(gaps == [1, 2, 3, 4, 5, 6, 7], || format!("gaps {gaps:?}"))?;
    for (&r, &n) in &t.tau {
        ensure(n == 1 + r * (r + 1) / 2, || {
            format!("τ({r}) = {n} is not triangular")
        })?;
    }
    Ok(format!("τ = {tau:?}, gaps {gaps:?}"))
}

fn layer_size_table(levels: &[Level]) -> Outcome {
    const ROWS: [(u32, u32, [usize; 7]); 6] = [
        (4, 2, [2, 3, 0, 0, 0, 0, 0]),
        (7, 3, [2, 9, 4, 0, 0, 0, 0]),
        (11, 4, [2, 19, 30, 5, 0, 0, 0]),
        (16, 5, [2, 29, 114, 80, 6, 0, 0]),
        (22, 6, [2, 40, 268, 489, 196, 7, 0]),
        (29, 7, [2, 57, 494, 1725, 1859, 420, 8]),
    ];
    for (n, delta, sizes) in ROWS {
        let s = &levels[n as usize - 1].s;
        let got: Vec<usize> = (1..=7).map(|r| s.layer_ids(r).len()).collect();
        ensure(s.delta() == delta && got == sizes, || {
            format!(
                "n={n}: Δ={} sizes {got:?}, expected Δ={delta} {sizes:?}",
                s.delta()
            )
        })?;
    }
    Ok("6 rows × 7 columns match".into())
}

fn first_families(levels: &[Level]) -> Outcome {
    let t = table(levels);
    for r in 2..=7u32 {
        let n = *t.tau.get(&r).ok_or(format!("L_{r} never appears"))?;
        let layer = set(levels[n as usize - 1].s.layer(r));
        let family = set(staircase(r).unwrap().one_cell_extensions());
        ensure(layer == family, || format!("L_{r}({n}) = {layer:?}"))?;
        ensure(layer.len() == r as usize + 1, || {
            format!("|L_{r}({n})| = {}", layer.len())
        })?;
    }
    let listings = [
        (2, 4, vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]),
        (
            3,
            7,
            vec![
                p(&[4, 2, 1]),
                p(&[3, 3, 1]),
                p(&[3, 2, 2]),
                p(&[3, 2, 1, 1]),
            ],
        ),
        (
            4,
            11,
            vec![
                p(&[5, 3, 2, 1]),
                p(&[4, 4, 2, 1]),
                p(&[4, 3, 3, 1]),
                p(&[4, 3, 2, 2]),
                p(&[4, 3, 2, 1, 1]),
            ],
        ),
    ];
    for (r, n, listed) in listings {
        let layer = set(levels[n - 1].s.layer(r));
        ensure(layer == set(listed), || format!("L_{r}({n}) = {layer:?}"))?;
    }
    Ok("r = 2..=7 match the staircase extensions; listings for r = 2, 3, 4 match".into())
}

fn antennas(n: u32) -> Vec<Partition> {
    vec![Partition::row(n).unwrap(), Partition::column(n).unwrap()]
}

fn l1_antennas(levels: &[Level]) -> Outcome {
    for l in &levels[3..] {
        let n = l.s.n();
        ensure(l.s.layer(1) == antennas(n), || {
            format!("L_1({n}) = {:?}", l.s.layer(1))
        })?;
    }
    Ok("L_1(n) = {(n),(1^n)} for 4 <= n <= 30".into())
}

fn boundary_thresholds(levels: &[Level]) -> Outcome {
    let t = table(levels);
    let got: Vec<(u32, u32)> = t.tau_boundary.iter().map(|(&r, &n)| (r, n)).collect();
    let expected = vec![(1, 4), (2, 7), (3, 11), (4, 16), (5, 22), (6, 29)];
    ensure(got == expected, || format!("τ_∂ = {got:?}"))?;
    for (r, n) in got {
        ensure(t.tau.get(&(r + 1)) == Some(&n), || {
            format!("τ_∂({r}) = {n} ≠ τ({})", r + 1)
        })?;
    }
    Ok("τ_∂(1..=6) = 4,7,11,16,22,29 = τ(r+1)".into())
}

fn framework_identities(levels: &[Level]) -> Outcome {
    for l in &levels[3..] {
        let (g, s, n) = (&l.g, &l.s, l.s.n());
        let fw = framework(g).unwrap();
        let names = |ids: Vec<VertexId>| -> BTreeSet<Partition> {
            ids.into_iter().map(|v| g.vertex(v).clone()).collect()
        };
        let ant = set(antennas(n));
        let inner = set(vec![
            Partition::hook(n, 1).unwrap(),
            Partition::hook(n, n - 2).unwrap(),
        ]);
        let outer: BTreeSet<Partition> = ant.union(&inner).cloned().collect();

        ensure(fw.members.iter().all(|&v| s.dim(v) <= 2), || {
            format!("n={n}: Fw ⊄ L_1 ∪ L_2")
        })?;
        ensure(layer_ge_trace(s, &fw, 3).unwrap().is_empty(), || {
            format!("n={n}: Fw ∩ L_≥3 ≠ ∅")
        })?;
        ensure(names(layer_trace(s, &fw, 1).unwrap()) == ant, || {
            format!("n={n}: Fw ∩ L_1")
        })?;

        let b1 = boundaries(s, g, 1).unwrap();
        let (lower, upper) = one_sided_traces(&b1, &fw).unwrap();
        ensure(names(lower) == ant, || format!("n={n}: B_1 ∩ Fw"))?;
        ensure(names(upper) == inner, || format!("n={n}: B⁻_2 ∩ Fw"))?;
        ensure(names(boundary_trace(&b1, &fw).unwrap()) == outer, || {
            format!("n={n}: ∂^Fw_(1,2)")
        })?;

        if n >= 7 {
            let b2 = boundaries(s, g, 2).unwrap();
            let want: BTreeSet<Partition> = fw
                .partitions(g)
                .into_iter()
                .filter(|v| !outer.contains(v))
                .collect();
            ensure(names(boundary_trace(&b2, &fw).unwrap()) == want, || {
                format!("n={n}: ∂^Fw_(2,3)")
            })?;
        }
        for r in 3..=s.delta() + 1 {
            let b = boundaries(s, g, r).unwrap();
            ensure(boundary_trace(&b, &fw).unwrap().is_empty(), || {
                format!("n={n}: ∂^Fw_({r},{}) ≠ ∅", r + 1)
            })?;
        }
    }
    Ok("all framework identities hold for 4 <= n <= 30".into())
}

fn structural_suites(levels: &[Level]) -> Outcome {
    let counts = partition_counts(20);
    for l in &levels[..20] {
        let (g, s, n) = (&l.g, &l.s, l.s.n());
        let conj = |v: VertexId| g.id_of(&g.vertex(v).conjugate()).unwrap();
        let conj_set = |ids: &[VertexId]| ids.iter().map(|&v| conj(v)).collect::<BTreeSet<_>>();
        let as_set = |ids: &[VertexId]| ids.iter().copied().collect::<BTreeSet<_>>();

        let total: usize = s.layer_sizes().map(|(_, k)| k).sum();
        ensure(total as u64 == counts[n as usize], || {
            format!("n={n}: layers cover {total}")
        })?;

        for v in 0..g.vertex_count() as VertexId {
            ensure(s.dim(v) == s.dim(conj(v)), || {
                format!("n={n}: dim not conjugation-invariant")
            })?;
            let lambda = g.vertex(v);
            ensure(
                neighbors_by_corners(lambda) == neighbors_by_multiset(lambda),
                || format!("adjacency routes differ at {lambda}"),
            )?;
        }
        for r in 0..=s.delta() {
            ensure(conj_set(s.layer_ids(r)) == as_set(s.layer_ids(r)), || {
                format!("n={n}: L_{r}")
            })?;
            let b = boundaries(s, g, r).unwrap();
            for part in [&b.lower, &b.upper, &b.full] {
                ensure(conj_set(part) == as_set(part), || {
                    format!("n={n}: boundary r={r} not conjugation-closed")
                })?;
            }
            let lower = as_set(&b.lower);
            let upper = as_set(&b.upper);
            ensure(lower.is_disjoint(&upper), || {
                format!("n={n} r={r}: halves overlap")
            })?;
            ensure(
                as_set(&b.full) == lower.union(&upper).copied().collect(),
                || format!("n={n} r={r}: ∂ ≠ B ⊔ B⁻"),
            )?;
            let ig = interface_graph(s, g, r).unwrap();
            ensure(ig.touched() == b.full, || {
                format!("n={n} r={r}: interface degree")
            })?;
        }
        if n <= 15 {
            for lambda in g.vertices() {
                let corners = lambda.corners();
                let is_clique = |vs: &[Partition]| {
                    vs.iter().enumerate().all(|(i, a)| {
                        vs[i + 1..]
                            .iter()
                            .all(|b| g.has_edge(g.id_of(a).unwrap(), g.id_of(b).unwrap()))
                    })
                };
                for &c in &corners.removable {
                    let sx = full_star_simplex(lambda, c).unwrap();
                    ensure(
                        is_clique(&sx)
                            && sx.len() == 1 + admissible_targets(lambda, c).unwrap().len(),
                        || format!("star simplex of {lambda} at {c}"),
                    )?;
                }
                for &a in &corners.addable {
                    let sx = full_top_simplex(lambda, a).unwrap();
                    ensure(
                        is_clique(&sx)
                            && sx.len() == 1 + admissible_sources(lambda, a).unwrap().len(),
                        || format!("top simplex of {lambda} at {a}"),
                    )?;
                }
            }
        }
        if n <= 10 {
            for v in 0..g.vertex_count() as VertexId {
                let fast = InducedSubgraph::neighborhood(g, v).clique_number();
                ensure(fast == naive_neighborhood_clique(g, v), || {
                    format!("clique engine vs naive at {}", g.vertex(v))
                })?;
            }
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let k = rng.gen_range(0..=16usize);
        let density: f64 = rng.gen();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if rng.gen_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let adj: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
        let naive = naive_clique_number(k, |i, j| adj.contains(&(i.min(j), i.max(j))));
        let fast = InducedSubgraph::from_edges(k, &edges).clique_number();
        ensure(fast == naive, || {
            format!("random graph on {k} vertices: {fast} vs {naive}")
        })?;
    }
    Ok("n <= 20 structure, n <= 15 simplices, n <= 10 neighborhoods, 500 random graphs".into())
}

fn determinism() -> Outcome {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| partition_strata::verify(N_MAX, None))
            .unwrap()
            .to_json()
            .unwrap()
    };
    let single = run(1);
    let multi = run(4);
    ensure(single == multi, || {
        "reports differ between 1 and 4 threads".into()
    })?;
    let report: serde_json::Value = serde_json::from_str(&single).unwrap();
    ensure(report["range_max"] == N_MAX, || "range_max missing".into())?;
    Ok(format!(
        "{} bytes identical across 1 and 4 threads",
        single.len()
    ))
}

fn main() -> ExitCode {
    let levels = levels();
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 oracle agreement", Box::new(|| oracle_agreement(&levels))),
        ("2 Δ(n) sequence", Box::new(|| delta_sequence(&levels))),
        ("3 threshold table", Box::new(|| threshold_table(&levels))),
        (
            "4 layer sizes at thresholds",
            Box::new(|| layer_size_table(&levels)),
        ),
        (
            "5 first-occurrence families",
            Box::new(|| first_families(&levels)),
        ),
        ("6 L_1 antennas", Box::new(|| l1_antennas(&levels))),
        (
            "7 boundary thresholds",
            Box::new(|| boundary_thresholds(&levels)),
        ),
        (
            "8 framework identities",
            Box::new(|| framework_identities(&levels)),
        ),
        (
            "9 structural suites",
            Box::new(|| structural_suites(&levels)),
        ),
        ("10 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
