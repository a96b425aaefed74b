//! Command-line front end: load polygons, run either engine, write results,
//! emit SVG plots and stats.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::driver::{self, OutputSink, RunStats};
use crate::effective::{EffectiveFlags, Mode};
use crate::error::{Error, Result};
use crate::geom::{shadow_point, Point};
use crate::oracle;
use crate::polygon::{self, PolygonInput};
use crate::{corpus, svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Constrained,
    Oracle,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Constrained => "constrained",
            Engine::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "constrained" => Ok(Engine::Constrained),
            "oracle" => Ok(Engine::Oracle),
            other => Err(format!("unknown engine {other:?} (constrained | oracle)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub viewpoint: String,
    pub engine: Engine,
    pub mode: Mode,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::DegeneratePosition { .. } | Error::DegenerateInput(_) | Error::WindowNotFound { .. } => {
            EXIT_DEGENERATE
        }
        Error::PipelineDiscrepancy { .. } => EXIT_DISCREPANCY,
        _ => EXIT_INVALID,
    }
}

fn fail(err: &Error) -> i32 {
    let name = match err {
        Error::NotSimple { .. } => "NotSimple",
        Error::NotCcw => "NotCcw",
        Error::ViewpointOutside => "ViewpointOutside",
        Error::DegeneratePosition { .. } => "DegeneratePosition",
        Error::DegenerateInput(_) => "DegenerateInput",
        Error::WindowNotFound { .. } => "WindowNotFound",
        Error::PipelineDiscrepancy { .. } => "PipelineDiscrepancy",
        Error::GenerationTimeout => "GenerationTimeout",
        Error::Parse { .. } => "Parse",
        Error::Io(_) => "Io",
    };
    eprintln!("error: {name}: {err}");
    exit_code_for(err)
}

pub fn parse_viewpoint(s: &str) -> Result<Point> {
    let mut it = s.split(',');
    let parse = |tok: Option<&str>| -> Result<f64> {
        tok.map(str::trim)
            .and_then(|t| t.parse().ok())
            .ok_or(Error::Parse { line: 0, message: format!("viewpoint must be `x,y`, got {s:?}") })
    };
    let x = parse(it.next())?;
    let y = parse(it.next())?;
    if it.next().is_some() {
        return Err(Error::Parse { line: 0, message: format!("viewpoint must be `x,y`, got {s:?}") });
    }
    Ok(Point::new(x, y))
}

fn stats_json(stats: &RunStats, wall_ms: f64, engine: Engine) -> String {
    format!(
        "{{\n  \"n\": {},\n  \"c\": {},\n  \"c_effective\": {},\n  \"vertex_reads\": {},\n  \"flag_bits\": {},\n  \"scalar_slots_peak\": {},\n  \"wall_ms\": {:.3},\n  \"engine\": \"{}\",\n  \"mode\": \"{}\"\n}}\n",
        stats.n,
        stats.c,
        stats.c_effective,
        stats.meter.vertex_reads,
        stats.meter.flag_bits,
        stats.meter.scalar_slots_peak,
        wall_ms,
        engine.as_str(),
        stats.mode.as_str(),
    )
}

fn window_segments(input: &PolygonInput, flags: &EffectiveFlags) -> Result<Vec<(Point, Point)>> {
    let mut out = Vec::new();
    for idx in flags.effective_vertex_indices(input)? {
        let v = input.vertex(idx);
        if let Some((s, _)) = shadow_point(input.viewpoint(), v, input.edges())? {
            out.push((v, s));
        }
    }
    Ok(out)
}

fn run_inner(config: &RunConfig) -> Result<i32> {
    let vertices = polygon::read_polygon_file(&config.input)?;
    let q = parse_viewpoint(&config.viewpoint)?;
    let input = PolygonInput::new(vertices, q)?;
    polygon::validate(&input, false)?;

    let started = Instant::now();
    let (points, stats) = match config.engine {
        Engine::Constrained => {
            let mut sink = OutputSink::new();
            match driver::visibility_polygon(&input, &mut sink, config.mode) {
                Ok(stats) => (sink.into_points(), stats),
                Err(boxed) => return Err(boxed.error),
            }
        }
        Engine::Oracle => {
            let points = oracle::brute_force_visibility(&input)?;
            let stats = RunStats {
                n: input.len(),
                c: polygon::critical_count(&input)?,
                c_effective: oracle::visible_critical_indices(&input)?.len(),
                meter: Default::default(),
                mode: config.mode,
                partial: false,
                discrepancies: Vec::new(),
            };
            (points, stats)
        }
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let text = polygon::format_polygon(&points);
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }

    if let Some(path) = &config.svg {
        let flags = crate::effective::compute_effective(&input, Mode::StrictPaper)?;
        let markers: Vec<Point> = flags
            .effective_vertex_indices(&input)?
            .iter()
            .map(|&i| input.vertex(i))
            .collect();
        let windows = window_segments(&input, &flags)?;
        let scene = svg::SvgScene {
            boundary: input.vertices(),
            viewpoint: input.viewpoint(),
            visibility: &points,
            critical_markers: &markers,
            windows: &windows,
        };
        std::fs::write(path, svg::render(&scene))?;
    }

    if let Some(path) = &config.stats {
        std::fs::write(path, stats_json(&stats, wall_ms, config.engine))?;
    }
    Ok(EXIT_OK)
}

/// `run` subcommand. Returns the process exit code.
pub fn cmd_run(config: &RunConfig) -> i32 {
    match run_inner(config) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

/// `generate` subcommand: writes a random simple polygon in the polygon
/// file format and prints a general-position interior viewpoint.
pub fn cmd_generate(n: usize, seed: u64, output: &Path) -> i32 {
    let inner = || -> Result<()> {
        let input = corpus::random_instance(n, seed)?;
        polygon::write_polygon_file(output, input.vertices())?;
        let q = input.viewpoint();
        println!("{},{}", q.x, q.y);
        Ok(())
    };
    match inner() {
        Ok(()) => EXIT_OK,
        Err(e) => fail(&e),
    }
}

/// One bench row.
pub struct BenchRow {
    pub family: &'static str,
    pub n: usize,
    pub c: usize,
    pub vertex_reads: u64,
    pub reads_per_n: f64,
    pub flag_bits: u64,
    pub scalar_slots_peak: u64,
    pub wall_ms: f64,
}

pub fn bench_families(sizes: &[usize], teeth: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        for family in ["comb", "convex"] {
            let input = match family {
                "comb" => corpus::comb_sized(teeth, n),
                _ => corpus::convex_regular(n),
            };
            let started = Instant::now();
            let mut sink = OutputSink::new();
            let stats = driver::visibility_polygon(&input, &mut sink, Mode::StrictPaper)
                .map_err(|boxed| boxed.error)?;
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            rows.push(BenchRow {
                family,
                n: input.len(),
                c: stats.c,
                vertex_reads: stats.meter.vertex_reads,
                reads_per_n: stats.meter.vertex_reads as f64 / input.len() as f64,
                flag_bits: stats.meter.flag_bits,
                scalar_slots_peak: stats.meter.scalar_slots_peak,
                wall_ms,
            });
        }
    }
    rows.sort_by(|a, b| a.family.cmp(b.family).then(a.n.cmp(&b.n)));
    Ok(rows)
}

/// `bench` subcommand: size sweep over the comb and convex families.
pub fn cmd_bench(sizes: &[usize], teeth: usize) -> i32 {
    match bench_families(sizes, teeth) {
        Ok(rows) => {
            println!(
                "{:<8} {:>8} {:>6} {:>12} {:>9} {:>9} {:>12} {:>10}",
                "family", "n", "c", "vertex_reads", "reads/n", "flag_bits", "scalar_peak", "wall_ms"
            );
            for r in rows {
                println!(
                    "{:<8} {:>8} {:>6} {:>12} {:>9.2} {:>9} {:>12} {:>10.3}",
                    r.family, r.n, r.c, r.vertex_reads, r.reads_per_n, r.flag_bits, r.scalar_slots_peak, r.wall_ms
                );
            }
            EXIT_OK
        }
        Err(e) => fail(&e),
    }
}
