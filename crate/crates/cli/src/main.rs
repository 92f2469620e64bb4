use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use partition_strata::cache::Cache;
use partition_strata::export::{self, Format};
use partition_strata::strata::{stratify_graph, ThresholdTable};
use partition_strata::{Error, Mode, PartitionGraph, Stratification};

#[derive(Parser)]
#[command(
    name = "pstrata",
    version,
    about = "Simplex stratification of partition graphs"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Directory for cached stratifications.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Capacity,
    Clique,
    CrossCheck,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Capacity => Mode::Capacity,
            ModeArg::Clique => Mode::Clique,
            ModeArg::CrossCheck => Mode::CrossCheck,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge list of G_n to OUT/edges.txt.
    Graph {
        /// Number being partitioned.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Write layers and layer sizes for one n.
    Layers {
        /// Number being partitioned.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// How dim_loc is computed.
        #[arg(long, value_enum, default_value_t = ModeArg::Capacity)]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Write first-occurrence thresholds over 1..=n-max.
    Thresholds {
        /// Scan n = 1..=N_MAX.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        /// How dim_loc is computed.
        #[arg(long, value_enum, default_value_t = ModeArg::Capacity)]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Write the (r, r+1) phase boundary and interface edges for one n.
    Boundaries {
        /// Number being partitioned.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Lower layer of the (r, r+1) boundary.
        #[arg(long)]
        r: u32,
        /// How dim_loc is computed.
        #[arg(long, value_enum, default_value_t = ModeArg::Capacity)]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Write layer and boundary traces on the axis and framework regions.
    Traces {
        /// Number being partitioned.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// How dim_loc is computed.
        #[arg(long, value_enum, default_value_t = ModeArg::Capacity)]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Check every registered claim over 1..=n-max with both dim_loc routes.
    Verify {
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        /// Directory for report.json and report.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: could not configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let inconsistent = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Inconsistency { .. })));
            ExitCode::from(if inconsistent { 1 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cache = cli.cache.as_ref().map(Cache::new);
    match &cli.command {
        Command::Graph { n, out } => {
            let g = PartitionGraph::build(*n)?;
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            let path = out.join("edges.txt");
            let mut w = BufWriter::new(
                fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?,
            );
            g.write_edge_list(&mut w)?;
            w.flush()?;
            report_written(&[path]);
        }
        Command::Layers { n, mode, output } => {
            let (_, s) = level(*n, (*mode).into(), cache.as_ref())?;
            let format = output.format.into();
            let written = vec![
                export::write_table_file(&export::layer_rows(&s), format, &output.out)?,
                export::write_table_file(&export::layer_size_rows(&s), format, &output.out)?,
            ];
            report_written(&written);
        }
        Command::Thresholds {
            n_max,
            mode,
            output,
        } => {
            let levels = (1..=*n_max)
                .map(|n| level(n, (*mode).into(), cache.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            let table = ThresholdTable::from_levels(levels.iter().map(|(g, s)| (g, s)))?;
            let path = export::write_table_file(
                &export::threshold_rows(&table),
                output.format.into(),
                &output.out,
            )?;
            report_written(&[path]);
        }
        Command::Boundaries { n, r, mode, output } => {
            let (g, s) = level(*n, (*mode).into(), cache.as_ref())?;
            let format = output.format.into();
            let written = vec![
                export::write_table_file(&export::boundary_rows(&s, &g, *r)?, format, &output.out)?,
                export::write_table_file(
                    &export::interface_rows(&s, &g, *r)?,
                    format,
                    &output.out,
                )?,
            ];
            report_written(&written);
        }
        Command::Traces { n, mode, output } => {
            let (g, s) = level(*n, (*mode).into(), cache.as_ref())?;
            let path = export::write_table_file(
                &export::trace_rows(&s, &g)?,
                output.format.into(),
                &output.out,
            )?;
            report_written(&[path]);
        }
        Command::Verify { n_max, out } => {
            let report = partition_strata::verify(*n_max, cache.as_ref())?;
            let text = report.render_text();
            io::stdout().write_all(text.as_bytes())?;
            if let Some(dir) = out {
                write_report(dir, &report.to_json()?, &text)?;
            }
            if report.has_failures() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Builds `G_n` and its stratification, consulting the cache when one is configured.
fn level(n: u32, mode: Mode, cache: Option<&Cache>) -> Result<(PartitionGraph, Stratification)> {
    let g = PartitionGraph::build(n)?;
    let need_cross_check = mode == Mode::CrossCheck;
    if let Some(s) = cache.and_then(|c| c.load_stratification(n, need_cross_check)) {
        return Ok((g, s));
    }
    let s = stratify_graph(&g, mode)?;
    if let Some(c) = cache {
        c.store(&s, need_cross_check)
            .with_context(|| format!("caching n={n}"))?;
    }
    Ok((g, s))
}

fn write_report(dir: &Path, json: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("report.json"), json)?;
    fs::write(dir.join("report.txt"), text)?;
    Ok(())
}

fn report_written(paths: &[PathBuf]) {
    for p in paths {
        log::info!("wrote {}", p.display());
    }
}
