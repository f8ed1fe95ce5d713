//! SVG figures of scenes and PPM images of region maps.
//!
//! Conics are drawn by the rational parametrization from a point `p0` on the
//! curve: the line through `p0` with direction angle `θ` meets the conic again
//! at `p0 + t(θ)·(cos θ, sin θ)`. Sweeping `θ` over `[0, π]` visits the whole
//! conic once; `t` passes through infinity where the direction is asymptotic,
//! which is where hyperbola branches are split.

use std::fmt::Write as _;

use thiserror::Error;

use crate::conics::{center, classify, conic_line_intersection, split_degenerate, Conic, ConicClass, FocalConic, FocalKind};
use crate::geometry::{LineEq, Point2};
use crate::loci::{BBox, Polyline, RegionGrid};
use crate::scene::{Scene, SceneMember};

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("nothing to draw")]
    EmptyScene,
    #[error("non-finite geometry: {0}")]
    NonFinite(String),
}

/// Uniform samples of `θ` before refinement.
pub const BASE_SAMPLES: usize = 512;
const MAX_DEPTH: usize = 10;

/// PPM colors per class, also listed in `--help` of the CLI.
pub const PALETTE: [(ConicClass, [u8; 3]); 9] = [
    (ConicClass::Circle, [255, 215, 0]),
    (ConicClass::Ellipse, [70, 130, 180]),
    (ConicClass::ImaginaryEllipse, [200, 200, 200]),
    (ConicClass::Parabola, [0, 0, 0]),
    (ConicClass::Hyperbola, [220, 80, 60]),
    (ConicClass::RectangularHyperbola, [150, 40, 150]),
    (ConicClass::DegenerateTwoLines, [255, 255, 255]),
    (ConicClass::DegenerateParallelLines, [128, 128, 128]),
    (ConicClass::DegeneratePoint, [64, 64, 64]),
];

pub fn class_color(c: ConicClass) -> [u8; 3] {
    PALETTE.iter().find(|(k, _)| *k == c).map(|(_, rgb)| *rgb).unwrap_or([0, 0, 0])
}

fn inside(v: &BBox, p: Point2) -> bool {
    p.x >= v.xmin && p.x <= v.xmax && p.y >= v.ymin && p.y <= v.ymax
}

fn grow(v: &BBox, f: f64) -> BBox {
    let (dx, dy) = ((v.xmax - v.xmin) * f, (v.ymax - v.ymin) * f);
    BBox::new(v.xmin - dx, v.xmax + dx, v.ymin - dy, v.ymax + dy)
}

/// Part of the line `p + s·d` inside the box (Liang–Barsky).
pub fn clip_line(p: Point2, d: Point2, v: &BBox) -> Option<(Point2, Point2)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (q, dq, a, b) in [(p.x, d.x, v.xmin, v.xmax), (p.y, d.y, v.ymin, v.ymax)] {
        if dq == 0.0 {
            if q < a || q > b {
                return None;
            }
            continue;
        }
        let (s1, s2) = ((a - q) / dq, (b - q) / dq);
        lo = lo.max(s1.min(s2));
        hi = hi.min(s1.max(s2));
    }
    (lo < hi && lo.is_finite() && hi.is_finite()).then(|| (p + d * lo, p + d * hi))
}

fn clip_line_eq(l: [f64; 3], v: &BBox) -> Option<(Point2, Point2)> {
    let n2 = l[0] * l[0] + l[1] * l[1];
    if n2 == 0.0 {
        return None;
    }
    let foot = Point2::new(-l[0] * l[2] / n2, -l[1] * l[2] / n2);
    clip_line(foot, Point2::new(-l[1], l[0]), v)
}

#[derive(Clone, Copy)]
struct Sample {
    theta: f64,
    p: Point2,
    /// Sign of `dᵀMd`; flips across an asymptotic direction.
    side: bool,
}

/// Polylines of a conic inside `view`: segments for line pairs, nothing for
/// imaginary conics and isolated points.
pub fn conic_polylines(c: &Conic, view: &BBox) -> Vec<Polyline> {
    let cart = c.to_cartesian();
    let class = classify(&cart);
    if class.is_degenerate() {
        if class == ConicClass::DegeneratePoint {
            return vec![];
        }
        let Some((g, h)) = split_degenerate(cart.matrix()) else {
            return vec![];
        };
        return [g, h].iter().filter_map(|l| clip_line_eq(*l, view)).map(|(a, b)| vec![a, b]).collect();
    }
    if class == ConicClass::ImaginaryEllipse {
        return vec![];
    }
    let mid = Point2::new(0.5 * (view.xmin + view.xmax), 0.5 * (view.ymin + view.ymax));
    let origin = center(&cart).unwrap_or(mid);
    let p0 = (0..8).find_map(|k| {
        let a = k as f64 * std::f64::consts::PI / 8.0;
        let l = LineEq::cartesian(-a.sin(), a.cos(), a.sin() * origin.x - a.cos() * origin.y);
        conic_line_intersection(&cart, &l).ok().and_then(|v| v.into_iter().next())
    });
    let Some(p0) = p0 else {
        return vec![];
    };
    let m = *cart.matrix();
    let h = p0.homogeneous();
    let at = |theta: f64| {
        let d = [theta.cos(), theta.sin(), 0.0];
        let a: f64 = (0..3).map(|i| (0..3).map(|j| d[i] * m[i][j] * d[j]).sum::<f64>()).sum();
        let b: f64 = (0..3).map(|i| (0..3).map(|j| h[i] * m[i][j] * d[j]).sum::<f64>()).sum();
        let t = -2.0 * b / a;
        Sample { theta, p: p0 + Point2::new(d[0], d[1]) * t, side: a > 0.0 }
    };
    let near = grow(view, 0.05);
    let step = ((view.xmax - view.xmin).powi(2) + (view.ymax - view.ymin).powi(2)).sqrt() / 400.0;
    let pi = std::f64::consts::PI;
    let mut samples = vec![at(0.0)];
    for k in 1..=BASE_SAMPLES {
        let next = at(pi * k as f64 / BASE_SAMPLES as f64);
        let last = *samples.last().unwrap();
        refine(&at, &last, &next, &near, step, MAX_DEPTH, &mut samples);
        samples.push(next);
    }
    let keep = |a: &Sample, b: &Sample| {
        a.side == b.side && a.p.is_finite() && b.p.is_finite() && (inside(&near, a.p) || inside(&near, b.p))
    };
    let mut runs: Vec<Polyline> = Vec::new();
    let mut open = false;
    for w in samples.windows(2) {
        if keep(&w[0], &w[1]) {
            if !open {
                runs.push(vec![w[0].p]);
                open = true;
            }
            runs.last_mut().unwrap().push(w[1].p);
        } else {
            open = false;
        }
    }
    // θ = π and θ = 0 give the same point
    let wraps = samples.len() > 2 && keep(&samples[samples.len() - 2], &samples[samples.len() - 1]) && keep(&samples[0], &samples[1]);
    if wraps && runs.len() > 1 {
        let first = runs.remove(0);
        runs.last_mut().unwrap().extend(first.into_iter().skip(1));
    }
    runs
}

fn refine<F: Fn(f64) -> Sample>(at: &F, a: &Sample, b: &Sample, near: &BBox, step: f64, depth: usize, out: &mut Vec<Sample>) {
    if depth == 0 || a.side != b.side || !(inside(near, a.p) || inside(near, b.p)) || a.p.dist(b.p) <= step {
        return;
    }
    let m = at(0.5 * (a.theta + b.theta));
    refine(at, a, &m, near, step, depth - 1, out);
    out.push(m);
    refine(at, &m, b, near, step, depth - 1, out);
}

fn focal_polylines(f: &FocalConic, view: &BBox) -> Vec<Polyline> {
    conic_polylines(&f.to_conic(), view)
}

fn member_polylines(m: &SceneMember, view: &BBox) -> Vec<Polyline> {
    match m {
        SceneMember::Focal { foci, axis_length, hyperbola } => {
            let kind = if *hyperbola { FocalKind::Hyperbola } else { FocalKind::Ellipse };
            let p = |[x, y]: [f64; 2]| Point2::new(x, y);
            FocalConic::new(p(foci[0]), p(foci[1]), *axis_length, kind).map(|f| focal_polylines(&f, view)).unwrap_or_default()
        }
        SceneMember::Line { coefficients } => clip_line_eq(*coefficients, view).map(|(a, b)| vec![vec![a, b]]).unwrap_or_default(),
    }
}

/// World box shown for a scene: triangle, labeled points, polylines and
/// circles no larger than the triangle's diameter, with a 25% margin.
pub fn viewport(scene: &Scene) -> BBox {
    let mut pts: Vec<[f64; 2]> = scene.triangle.to_vec();
    pts.extend(scene.points.iter().map(|p| p.at));
    pts.extend(scene.polylines.iter().flat_map(|l| l.points.iter().copied()));
    let tri = BBox::new(
        pts[..3].iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
        pts[..3].iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max),
        pts[..3].iter().map(|p| p[1]).fold(f64::INFINITY, f64::min),
        pts[..3].iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max),
    );
    let diam = (tri.xmax - tri.xmin).hypot(tri.ymax - tri.ymin);
    for c in scene.circles.iter().filter(|c| c.radius <= diam) {
        pts.push([c.center[0] - c.radius, c.center[1] - c.radius]);
        pts.push([c.center[0] + c.radius, c.center[1] + c.radius]);
    }
    let pts: Vec<_> = pts.into_iter().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    let xs = pts.iter().map(|p| p[0]);
    let ys = pts.iter().map(|p| p[1]);
    let b = BBox::new(
        xs.clone().fold(f64::INFINITY, f64::min),
        xs.fold(f64::NEG_INFINITY, f64::max),
        ys.clone().fold(f64::INFINITY, f64::min),
        ys.fold(f64::NEG_INFINITY, f64::max),
    );
    let side = (b.xmax - b.xmin).max(b.ymax - b.ymin).max(1e-9);
    let pad = 0.25 * side;
    BBox::new(b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;").replace('\'', "&apos;")
}

struct Screen {
    view: BBox,
    scale: f64,
    width: f64,
    height: f64,
}

impl Screen {
    fn new(view: BBox, width: f64) -> Self {
        let scale = width / (view.xmax - view.xmin);
        Screen { view, scale, width, height: (view.ymax - view.ymin) * scale }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.view.xmin) * self.scale, (self.view.ymax - p.y) * self.scale)
    }

    fn path(&self, lines: &[Polyline]) -> String {
        let mut d = String::new();
        for l in lines.iter().filter(|l| l.len() >= 2) {
            for (k, p) in l.iter().enumerate() {
                let (x, y) = self.map(*p);
                let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
            }
            if l.len() > 2 && l[0].dist(l[l.len() - 1]) <= 1e-12 * (1.0 + l[0].norm()) {
                d.push_str("Z ");
            }
        }
        d.trim_end().to_string()
    }
}

/// SVG document for a scene; a pure function of the scene.
pub fn emit_svg(scene: &Scene) -> Result<String, RenderError> {
    if scene.is_empty() && scene.points.is_empty() {
        return Err(RenderError::EmptyScene);
    }
    if scene.triangle.as_flattened().iter().any(|v| !v.is_finite()) {
        return Err(RenderError::NonFinite("triangle".into()));
    }
    let sc = Screen::new(viewport(scene), 800.0);
    let near = grow(&sc.view, 0.02);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = sc.width,
        h = sc.height
    );
    s.push_str(concat!(
        "<style>\n",
        ".triangle{fill:none;stroke:#000;stroke-width:1.5}\n",
        ".member{fill:none;stroke:#1f77b4;stroke-width:1.2}\n",
        ".conic{fill:none;stroke:#d62728;stroke-width:1.2;stroke-dasharray:6 3}\n",
        ".circle{fill:none;stroke:#2ca02c;stroke-width:1}\n",
        ".locus{fill:none;stroke:#9467bd;stroke-width:1}\n",
        ".point{fill:#000}\n",
        ".label{font:12px sans-serif}\n",
        "</style>\n"
    ));
    let _ = writeln!(s, r#"<defs><clipPath id="view"><rect x="0" y="0" width="{:.3}" height="{:.3}"/></clipPath></defs>"#, sc.width, sc.height);
    s.push_str("<g clip-path=\"url(#view)\">\n");
    let tri: Vec<String> = scene.triangle.iter().map(|&[x, y]| sc.map(Point2::new(x, y))).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(s, r#"<polygon class="triangle" points="{}"/>"#, tri.join(" "));
    for tr in &scene.triads {
        for (i, m) in tr.members.iter().enumerate() {
            let d = sc.path(&member_polylines(m, &near));
            let _ = writeln!(s, r#"<path class="member" data-triad="{}" data-index="{i}" d="{d}"/>"#, tr.kind);
        }
    }
    for c in &scene.conics {
        let Ok(conic) = Conic::from_coefficients(c.coefficients) else {
            return Err(RenderError::NonFinite(c.label.clone()));
        };
        let d = sc.path(&conic_polylines(&conic, &near));
        let _ = writeln!(s, r#"<path class="conic" data-label="{}" data-class="{}" d="{d}"/>"#, escape(&c.label), c.class);
    }
    for c in &scene.circles {
        let (x, y) = sc.map(Point2::new(c.center[0], c.center[1]));
        let _ = writeln!(s, r#"<circle class="circle" data-label="{}" cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#, escape(&c.label), c.radius * sc.scale);
    }
    for l in &scene.polylines {
        let pts: Polyline = l.points.iter().map(|&[x, y]| Point2::new(x, y)).collect();
        let _ = writeln!(s, r#"<path class="locus" data-label="{}" d="{}"/>"#, escape(&l.label), sc.path(&[pts]));
    }
    s.push_str("</g>\n");
    for p in scene.points.iter().filter(|p| inside(&sc.view, Point2::new(p.at[0], p.at[1]))) {
        let (x, y) = sc.map(Point2::new(p.at[0], p.at[1]));
        let _ = writeln!(s, r#"<circle class="point" cx="{x:.3}" cy="{y:.3}" r="2.5"/>"#);
        let _ = writeln!(s, r#"<text class="label" x="{:.3}" y="{:.3}">{}</text>"#, x + 4.0, y - 4.0, escape(&p.label));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Plain PPM (P3) of a region grid, top row at `ymax`, colors from [`PALETTE`].
/// Cells where the construction failed are black.
pub fn emit_ppm(grid: &RegionGrid) -> Result<String, RenderError> {
    if grid.nx == 0 || grid.ny == 0 || grid.cells.len() != grid.nx * grid.ny {
        return Err(RenderError::EmptyScene);
    }
    let mut s = format!("P3\n# {} {:?}\n{} {}\n255\n", grid.kind.name(), grid.bbox, grid.nx, grid.ny);
    for j in (0..grid.ny).rev() {
        let row: Vec<String> = (0..grid.nx)
            .map(|i| {
                let [r, g, b] = if grid.det_at(i, j).is_nan() { [0, 0, 0] } else { class_color(grid.class_at(i, j)) };
                format!("{r} {g} {b}")
            })
            .collect();
        s.push_str(&row.join("  "));
        s.push('\n');
    }
    Ok(s)
}
