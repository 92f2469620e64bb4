//! Tabular outputs. Every table is written either as CSV with a fixed header
//! or as a JSON array of objects with the same field names.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::capacity::capacity_profile;
use crate::error::{invalid, Error, Result};
use crate::graph::PartitionGraph;
use crate::partition::Partition;
use crate::strata::{boundaries, interface_graph, Stratification, ThresholdKind, ThresholdTable};
use crate::traces::{axis, boundary_trace, framework, layer_trace, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(invalid(format!("unknown format {other:?}"))),
        }
    }
}

/// A row type with a fixed column list.
pub trait Table: Serialize {
    /// File stem, e.g. `layers` for `layers.csv`.
    const NAME: &'static str;
    const HEADER: &'static [&'static str];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerRow {
    pub n: u32,
    pub partition: Partition,
    pub dim_loc: u32,
    pub s: u32,
    pub t: u32,
}

impl Table for LayerRow {
    const NAME: &'static str = "layers";
    const HEADER: &'static [&'static str] = &["n", "partition", "dim_loc", "s", "t"];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerSizeRow {
    pub n: u32,
    pub r: u32,
    pub size: usize,
}

impl Table for LayerSizeRow {
    const NAME: &'static str = "layer_sizes";
    const HEADER: &'static [&'static str] = &["n", "r", "size"];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdRow {
    pub kind: ThresholdKind,
    pub r: u32,
    pub n: u32,
    pub witness: Partition,
}

impl Table for ThresholdRow {
    const NAME: &'static str = "thresholds";
    const HEADER: &'static [&'static str] = &["kind", "r", "n", "witness"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryRow {
    pub n: u32,
    pub r: u32,
    pub side: Side,
    pub partition: Partition,
}

impl Table for BoundaryRow {
    const NAME: &'static str = "boundaries";
    const HEADER: &'static [&'static str] = &["n", "r", "side", "partition"];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterfaceEdgeRow {
    pub n: u32,
    pub r: u32,
    pub left: Partition,
    pub right: Partition,
}

impl Table for InterfaceEdgeRow {
    const NAME: &'static str = "interface_edges";
    const HEADER: &'static [&'static str] = &["n", "r", "left", "right"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    Layer,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub n: u32,
    pub region: crate::traces::RegionKind,
    pub kind: TraceKind,
    pub r: u32,
    pub partition: Partition,
}

impl Table for TraceRow {
    const NAME: &'static str = "traces";
    const HEADER: &'static [&'static str] = &["n", "region", "kind", "r", "partition"];
}

pub fn layer_rows(s: &Stratification) -> Vec<LayerRow> {
    s.vertices()
        .iter()
        .zip(s.dims())
        .map(|(v, &d)| {
            let prof = capacity_profile(v);
            LayerRow {
                n: s.n(),
                partition: v.clone(),
                dim_loc: d,
                s: prof.s,
                t: prof.t,
            }
        })
        .collect()
}

pub fn layer_size_rows(s: &Stratification) -> Vec<LayerSizeRow> {
    s.layer_sizes()
        .map(|(r, size)| LayerSizeRow { n: s.n(), r, size })
        .collect()
}

pub fn threshold_rows(t: &ThresholdTable) -> Vec<ThresholdRow> {
    t.rows()
        .into_iter()
        .map(|(kind, r, n, w)| ThresholdRow {
            kind,
            r,
            n,
            witness: w.clone(),
        })
        .collect()
}

pub fn boundary_rows(s: &Stratification, g: &PartitionGraph, r: u32) -> Result<Vec<BoundaryRow>> {
    let b = boundaries(s, g, r)?;
    let row = |side, id| BoundaryRow {
        n: s.n(),
        r,
        side,
        partition: g.vertex(id).clone(),
    };
    Ok(b.lower
        .iter()
        .map(|&v| row(Side::Lower, v))
        .chain(b.upper.iter().map(|&v| row(Side::Upper, v)))
        .collect())
}

pub fn interface_rows(
    s: &Stratification,
    g: &PartitionGraph,
    r: u32,
) -> Result<Vec<InterfaceEdgeRow>> {
    let ig = interface_graph(s, g, r)?;
    Ok(ig
        .edges
        .iter()
        .map(|&(a, b)| InterfaceEdgeRow {
            n: s.n(),
            r,
            left: g.vertex(a).clone(),
            right: g.vertex(b).clone(),
        })
        .collect())
}

/// Layer traces for `r = 0..=Δ(n)` and boundary traces for `r = 0..Δ(n)`,
/// on the axis and (for `n >= 2`) the framework.
pub fn trace_rows(s: &Stratification, g: &PartitionGraph) -> Result<Vec<TraceRow>> {
    let mut regions: Vec<Region> = vec![axis(g)];
    if g.n() >= 2 {
        regions.push(framework(g)?);
    }
    let mut rows = Vec::new();
    for region in &regions {
        let mut push = |kind, r, ids: Vec<u32>| {
            rows.extend(ids.into_iter().map(|v| TraceRow {
                n: s.n(),
                region: region.kind,
                kind,
                r,
                partition: g.vertex(v).clone(),
            }))
        };
        for r in 0..=s.delta() {
            push(TraceKind::Layer, r, layer_trace(s, region, r)?);
        }
        for r in 0..s.delta() {
            push(
                TraceKind::Boundary,
                r,
                boundary_trace(&boundaries(s, g, r)?, region)?,
            );
        }
    }
    Ok(rows)
}

/// Serializes `rows` to `w`. CSV output always carries the header line.
pub fn write_table<T: Table, W: Write>(rows: &[T], format: Format, mut w: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            wtr.write_record(T::HEADER)?;
            for row in rows {
                wtr.serialize(row)?;
            }
            wtr.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Writes `rows` to `dir/<NAME>.<ext>` and returns the path.
pub fn write_table_file<T: Table>(rows: &[T], format: Format, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.{}", T::NAME, format.extension()));
    let mut w = BufWriter::new(File::create(&path)?);
    write_table(rows, format, &mut w)?;
    w.flush()?;
    Ok(path)
}
