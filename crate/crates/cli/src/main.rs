mod render;
mod scene;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use segguard_core::aspect::{disk_aspect_ratio, line_aspect_ratio};
use segguard_core::oracle::{coverage_report, random_scene};
use segguard_core::slicer::{slice, BlockerResult, GuardSet, IterationRecord};
use segguard_core::visibility::classify_pair;
use segguard_core::{Error, Point};
use serde::{Deserialize, Serialize};

use scene::{load_polygon, load_scene, pair, round9, Pair, SceneFile};

#[derive(Parser)]
#[command(
    name = "segguard",
    version,
    about = "Guard a weakly visible segment from another segment inside a simple polygon"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the visibility class of the scene's segment pair.
    Classify { scene: PathBuf },
    /// Compute a guard set on the source covering the target.
    Guards {
        scene: PathBuf,
        /// Include the per-iteration trace.
        #[arg(long)]
        trace: bool,
        /// Write JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check coverage on this many target samples.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print widths, diameters and aspect ratios of a polygon.
    Ar {
        /// Scene file or polygon file.
        path: PathBuf,
    },
    /// Draw the scene (and its guards) as SVG.
    Render {
        scene: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        with_trace: bool,
    },
    /// Generate a random weakly visible scene.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(4..))]
        vertices: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the guards see every target sample.
    Verify {
        scene: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Use guards from this file instead of computing them.
        #[arg(long)]
        guards: Option<PathBuf>,
    },
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GuardOutput {
    guards: Vec<Pair>,
    iterations: usize,
    ar: f64,
    bound: usize,
    reason: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    covered_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceEntry>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TraceEntry {
    index: usize,
    x: Pair,
    y: Pair,
    lbv_x: Option<Pair>,
    rbv_x: Option<Pair>,
    lbv_y: Option<Pair>,
    rbv_y: Option<Pair>,
    t_x: Option<Pair>,
    t_y: Option<Pair>,
    next_x: Option<Pair>,
    next_y: Option<Pair>,
}

#[derive(Deserialize)]
struct GuardFile {
    guards: Vec<Pair>,
}

fn opt(p: Option<Point>) -> Option<Pair> {
    p.map(pair)
}

fn vertex(b: &BlockerResult) -> Option<Pair> {
    opt(b.vertex)
}

impl From<&IterationRecord> for TraceEntry {
    fn from(r: &IterationRecord) -> Self {
        Self {
            index: r.index,
            x: pair(r.x_point),
            y: pair(r.y_point),
            lbv_x: vertex(&r.lbv_x),
            rbv_x: vertex(&r.rbv_x),
            lbv_y: vertex(&r.lbv_y),
            rbv_y: vertex(&r.rbv_y),
            t_x: opt(r.t_x),
            t_y: opt(r.t_y),
            next_x: opt(r.next_x),
            next_y: opt(r.next_y),
        }
    }
}

fn guard_output(g: &GuardSet, covered: Option<f64>, trace: bool) -> GuardOutput {
    GuardOutput {
        guards: g.guards.iter().map(|&p| pair(p)).collect(),
        iterations: g.termination_iteration,
        ar: round9(g.ar),
        bound: g.bound(),
        reason: g.termination_reason.label(),
        covered_fraction: covered,
        trace: trace.then(|| g.trace.iter().map(TraceEntry::from).collect()),
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Classify { scene } => {
            let sc = load_scene(&scene)?;
            println!(
                "{}",
                classify_pair(&sc.polygon, sc.source, sc.target)?.label()
            );
        }
        Command::Guards {
            scene,
            trace,
            out,
            samples,
        } => {
            let sc = load_scene(&scene)?;
            let g = slice(&sc.polygon, sc.source, sc.target)?;
            let covered = samples
                .map(|n| coverage_report(&sc.polygon, &g.guards, sc.target, n).covered_fraction);
            let text = scene::to_json(&guard_output(&g, covered, trace));
            write_or_print(out.as_deref(), &text)?;
        }
        Command::Ar { path } => {
            let poly = load_polygon(&path)?;
            let line = line_aspect_ratio(&poly);
            let disk = disk_aspect_ratio(&poly);
            println!("LW = {:.6}", line.lw);
            println!("SW = {:.6}", line.sw);
            println!("AR_line = {:.6}", line.ar);
            println!("LD = {:.6}", disk.ld);
            println!("SD = {:.6}", disk.sd);
            println!("AR_disk = {:.6}", disk.ar);
            match line.sw_witness {
                Some(w) => println!(
                    "witness = ({:.6}, {:.6}) ({:.6}, {:.6})",
                    w.first.x, w.first.y, w.second.x, w.second.y
                ),
                None => println!("witness = absent"),
            }
        }
        Command::Render {
            scene,
            svg,
            with_trace,
        } => {
            let sc = load_scene(&scene)?;
            let guards = match slice(&sc.polygon, sc.source, sc.target) {
                Ok(g) => Some(g),
                Err(e) => {
                    eprintln!("note: drawing without guards: {e}");
                    None
                }
            };
            let text = render::render_svg(&sc, guards.as_ref(), with_trace);
            fs::write(&svg, text).with_context(|| format!("cannot write {}", svg.display()))?;
        }
        Command::Gen {
            seed,
            vertices,
            out,
        } => {
            let sc = random_scene(seed, vertices as usize)?;
            let file = SceneFile::from_scene(
                Some(format!("seed-{seed}-n{vertices}")),
                &sc.polygon,
                sc.source,
                sc.target,
            );
            write_or_print(out.as_deref(), &file.to_json())?;
        }
        Command::Verify {
            scene,
            samples,
            guards,
        } => {
            let sc = load_scene(&scene)?;
            let pts: Vec<Point> = match guards {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("cannot read {}", path.display()))?;
                    let file: GuardFile = serde_json::from_str(&text)
                        .with_context(|| format!("cannot parse {}", path.display()))?;
                    file.guards
                        .iter()
                        .map(|g| Point::try_new(g[0], g[1]))
                        .collect::<segguard_core::Result<_>>()?
                }
                None => slice(&sc.polygon, sc.source, sc.target)?.guards,
            };
            let report = coverage_report(&sc.polygon, &pts, sc.target, samples);
            println!("coveredFraction = {}", report.covered_fraction);
            if !report.is_complete() {
                eprintln!(
                    "{} of {} samples uncovered; first 10:",
                    report.uncovered.len(),
                    report.samples
                );
                for (c, p) in report.uncovered.iter().take(10) {
                    eprintln!("  t = {c:.6} at ({:.6}, {:.6})", p.x, p.y);
                }
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    e.chain()
        .find_map(|c| c.downcast_ref::<Error>())
        .map_or(2, |e| match e {
            Error::NotWeaklyVisible => 3,
            Error::IterationCapExceeded(_) | Error::StalledWithoutProgress(_) => 4,
            Error::GenerationBudgetExceeded(_) => 5,
            _ => 2,
        })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
