use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use triconic::geometry::{Point2, Triangle};
use triconic::loci::{
    halftangent_locus, region_map, sample_locus_ostar, sample_locus_x478, trace_curve, BBox, ImplicitCurve, RegionKind,
};
use triconic::render::{emit_ppm, emit_svg};
use triconic::scene::Scene;
use triconic::triads::{six_point_conic, TriadKind};
use triconic::verification::{run_all_with, run_proposition, SuiteReport, MANIFEST};
use triconic::tolerance;

const PALETTE_HELP: &str = "PPM colors: circle 255 215 0, ellipse 70 130 180, imaginary_ellipse 200 200 200, \
parabola 0 0 0, hyperbola 220 80 60, rectangular_hyperbola 150 40 150, degenerate_two_lines 255 255 255, \
degenerate_parallel_lines 128 128 128, degenerate_point 64 64 64; failed cells 0 0 0";

#[derive(Parser)]
#[command(name = "triconic", version, about = "Focal conic triads of a triangle")]
struct Cli {
    /// Relative tolerance (overrides TRICONIC_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for sweeps and the verification suite.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a triad on a triangle and write the scene.
    Construct {
        /// Vertices as "x1,y1 x2,y2 x3,y3".
        #[arg(long)]
        triangle: String,
        /// v-ell, p-ell, v-hyp or p-hyp.
        #[arg(long)]
        triad: TriadKind,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print class and center of each triad's six-point conic.
    Classify {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the proposition checks.
    Verify {
        /// Check id or "all".
        #[arg(long, default_value = "all")]
        prop: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// List check ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Sample a locus: x478, ostar or zero-set:<curve>.
    Locus {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 120)]
        samples: usize,
        /// Triangle for ostar and for triangle-dependent curves.
        #[arg(long)]
        triangle: Option<String>,
        /// "xmin,xmax,ymin,ymax" for zero sets.
        #[arg(long)]
        bbox: Option<BBox>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify six-point conics over a grid of drivers.
    #[command(after_help = PALETTE_HELP)]
    Regions {
        /// v-ell (C moves), p-ell or p-hyp (P moves).
        #[arg(long)]
        kind: RegionKind,
        #[arg(long, default_value = "0,0 1,0 0.5,0.8660254037844386")]
        triangle: String,
        /// "NxM" cells.
        #[arg(long, default_value = "101x101")]
        grid: String,
        /// Defaults to the triangle's box with half a diameter of margin.
        #[arg(long)]
        bbox: Option<BBox>,
        /// .ppm for an image, .json for the grid.
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw a scene as SVG.
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Usage-type failures map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_point(s: &str) -> Result<Point2> {
    let v: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| usage(format!("bad point '{s}': {e}")))?;
    match v[..] {
        [x, y] => Ok(Point2::new(x, y)),
        _ => Err(usage(format!("point must be 'x,y', got '{s}'"))),
    }
}

fn parse_triangle(s: &str) -> Result<Triangle> {
    let pts: Vec<Point2> = s.split_whitespace().map(parse_point).collect::<Result<_>>()?;
    let [a, b, c] = pts[..] else {
        return Err(usage(format!("triangle needs three points, got '{s}'")));
    };
    Triangle::new(a, b, c).map_err(|e| usage(format!("triangle '{s}': {e}")))
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| usage(format!("grid must be NxM, got '{s}'")))?;
    let n = a.trim().parse::<usize>().map_err(|e| usage(format!("grid '{s}': {e}")))?;
    let m = b.trim().parse::<usize>().map_err(|e| usage(format!("grid '{s}': {e}")))?;
    if n < 2 || m < 2 {
        return Err(usage("grid needs at least 2x2 cells"));
    }
    Ok((n, m))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_scene(p: &Path) -> Result<Scene> {
    let s = fs::read_to_string(p).map_err(|e| usage(format!("reading {}: {e}", p.display())))?;
    Scene::from_json(&s).map_err(|e| usage(format!("{}: {e}", p.display())))
}

/// Up to ten decimals, trailing zeros dropped.
fn num(v: f64) -> String {
    let s = format!("{v:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn classify(scene: &Scene, format: Format) -> Result<()> {
    if scene.triads.is_empty() {
        return Err(usage("scene has no triads"));
    }
    let mut rows = Vec::new();
    for i in 0..scene.triads.len() {
        let tr = scene.triad(i)?;
        let rep = six_point_conic(&tr)?;
        rows.push((tr.kind(), rep));
    }
    match format {
        Format::Text => {
            for (kind, rep) in &rows {
                let c = rep.center.map_or("none".to_string(), |c| format!("({},{})", num(c.x), num(c.y)));
                println!("{kind}: {} center {c} residual6 {:.3e}", rep.class, rep.residual6);
            }
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(kind, rep)| {
                    json!({
                        "triad": kind,
                        "class": rep.class,
                        "center": rep.center,
                        "residual6": rep.residual6,
                        "carnot_product": rep.carnot_product,
                        "coefficients": rep.conic.to_cartesian().coefficients(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
    }
    Ok(())
}

fn verify(prop: &str, seed: u64, trials: Option<usize>, format: Format, out: Option<&Path>) -> Result<bool> {
    let report = if prop == "all" {
        run_all_with(seed, trials)
    } else {
        let r = run_proposition(prop, seed, trials).map_err(|e| usage(e.to_string()))?;
        SuiteReport::new(seed, vec![r])
    };
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    print!("{text}");
    if let Some(p) = out {
        fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(report.pass)
}

fn locus(kind: &str, samples: usize, triangle: Option<&str>, bbox: Option<BBox>, out: Option<&Path>) -> Result<()> {
    let text = match kind {
        "x478" => serde_json::to_string_pretty(&sample_locus_x478(samples)?)?,
        "ostar" => {
            let t = parse_triangle(triangle.ok_or_else(|| usage("ostar needs --triangle"))?)?;
            serde_json::to_string_pretty(&sample_locus_ostar(&t, samples)?.samples)?
        }
        k => {
            let name = k.strip_prefix("zero-set:").ok_or_else(|| usage(format!("unknown locus kind '{k}'")))?;
            let curve: ImplicitCurve = name.parse().map_err(usage)?;
            let frame = triangle.map(parse_triangle).transpose()?;
            if !curve.is_planar() && frame.is_none() {
                return Err(usage(format!("{curve} needs --triangle")));
            }
            let bbox = bbox.unwrap_or_else(|| frame.map_or(BBox::square(2.0), |t| BBox::around(&t, 0.5)));
            let lines = if curve == ImplicitCurve::HalftangentSextic {
                halftangent_locus(bbox, samples)
            } else {
                trace_curve(curve, frame, bbox, samples)
            };
            serde_json::to_string_pretty(&json!({ "curve": curve, "bbox": bbox, "polylines": lines }))?
        }
    };
    write_out(out, &(text + "\n"))
}

fn regions(kind: RegionKind, triangle: &str, grid: &str, bbox: Option<BBox>, out: &Path) -> Result<()> {
    let t = parse_triangle(triangle)?;
    let (nx, ny) = parse_grid(grid)?;
    let g = region_map(&t, kind, bbox.unwrap_or_else(|| BBox::around(&t, 0.5)), nx, ny);
    let text = match out.extension().and_then(|e| e.to_str()) {
        Some("json") => serde_json::to_string(&g)? + "\n",
        Some("ppm") => emit_ppm(&g)?,
        _ => return Err(usage(format!("output must end in .ppm or .json: {}", out.display()))),
    };
    write_out(Some(out), &text)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(usage(format!("--tol must be positive, got {t}")));
        }
        tolerance::set(t);
    }
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!("thread pool: {e}"))?;
    }
    match cli.cmd {
        Cmd::Construct { triangle, triad, point, out } => {
            let t = parse_triangle(&triangle)?;
            let p = point.as_deref().map(parse_point).transpose()?;
            if triad.needs_point() && p.is_none() {
                return Err(usage(format!("{triad} needs --point")));
            }
            let scene = Scene::construct(&t, triad, if triad.needs_point() { p } else { None })?;
            write_out(out.as_deref(), &(scene.to_json() + "\n"))?;
        }
        Cmd::Classify { scene, format } => classify(&read_scene(&scene)?, format)?,
        Cmd::Verify { prop, seed, trials, format, out, list } => {
            if list {
                for d in MANIFEST {
                    println!("{:<40} {}", d.id, d.summary);
                }
                return Ok(true);
            }
            return verify(&prop, seed, trials, format, out.as_deref());
        }
        Cmd::Locus { kind, samples, triangle, bbox, out } => locus(&kind, samples, triangle.as_deref(), bbox, out.as_deref())?,
        Cmd::Regions { kind, triangle, grid, bbox, out } => regions(kind, &triangle, &grid, bbox, &out)?,
        Cmd::Render { scene, out } => {
            let svg = emit_svg(&read_scene(&scene)?)?;
            write_out(out.as_deref(), &svg)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<Usage>().is_some() { 2 } else { 1 })
        }
    }
}
