//! Implicit locus equations, sampled loci of degenerate-conic centers,
//! special driver points and conic-type region maps.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::centers::{
    anticevian_triangle, center_barycentrics, circumcircle, classic_center, incircle, reflection_triangle, CenterError,
    CenterId,
};
use crate::conics::{
    center, conic_shape, fit_conic, fit_conic_lsq, FitConstraint, FitReport, classify, line_tangency_discriminant, normalized_determinant, residual, Conic, ConicClass, ConicError,
};
use crate::geometry::{line_intersection, line_through, point_line_distance, signed_area, GeometryError, Point2, Triangle};
use crate::optimize::{bisect, gauss_newton, NelderMead};
use crate::triads::{
    build_triad, second_common_point, six_point_conic, triad_covertices, triad_vertices, triple_points, ConicTriad, TriadError,
    TriadKind,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LociError {
    #[error("{curve}: negative radicand ({detail})")]
    Domain { curve: ImplicitCurve, detail: &'static str },
    #[error("{curve} cannot be evaluated in this context")]
    ContextMismatch { curve: ImplicitCurve },
    #[error("minimization did not converge (best value {best:e})")]
    NotConverged { best: f64 },
    #[error("driver point is not on the locus (implicit value {value:e})")]
    DriverNotOnLocus { value: f64 },
    #[error(transparent)]
    Triad(#[from] TriadError),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Center(#[from] Box<CenterError>),
}

impl From<CenterError> for LociError {
    fn from(e: CenterError) -> Self {
        LociError::Center(Box::new(e))
    }
}

/// The implicit equations with their coordinate normalizations.
///
/// | curve | variables | frame |
/// |---|---|---|
/// | `x478_quartic` | `(x, y)` | `A = (1/2, 0)`, `B = (−1/2, 0)` |
/// | `parabola_deg8_V` | `a, b, c` | plane form: `A = (−1/2, 0)`, `B = (1/2, 0)`, `C = (x, y)` |
/// | `covertex_locus_V` | `(x, y)` | `A = (−1, 0)`, `B = (1, 0)` |
/// | `halftangent_sextic` | `(x, y)` | `A = (−1, 0)`, `B = (1, 0)` |
/// | `pstar_circle_functional` | triangle, `P` | `δa = |PB| + |PC|`, ... |
/// | `covertex_condition_equilateral_P` | `P` | equilateral with circumradius 1, `A = (0, 1)` |
/// | `phyp_circle_functional` | triangle, `P` | `λa = |PB| − |PC|`, ... |
/// | `phyp_parabola_condition` | triangle, `P` | same |
///
/// `covertex_locus_V_printed` keeps the co-vertex equation with the factor
/// 2 on the first and last terms as originally displayed; `covertex_locus_V`
/// is the form that vanishes on the actual locus. `unit_circle` is a debug
/// curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImplicitCurve {
    X478Quartic,
    #[serde(rename = "parabola_deg8_V")]
    ParabolaDeg8V,
    #[serde(rename = "covertex_locus_V")]
    CovertexLocusV,
    #[serde(rename = "covertex_locus_V_printed")]
    CovertexLocusVPrinted,
    HalftangentSextic,
    PstarCircleFunctional,
    #[serde(rename = "covertex_condition_equilateral_P")]
    CovertexConditionEquilateralP,
    PhypCircleFunctional,
    PhypParabolaCondition,
    UnitCircle,
}

impl ImplicitCurve {
    pub const ALL: [ImplicitCurve; 10] = [
        ImplicitCurve::X478Quartic,
        ImplicitCurve::ParabolaDeg8V,
        ImplicitCurve::CovertexLocusV,
        ImplicitCurve::CovertexLocusVPrinted,
        ImplicitCurve::HalftangentSextic,
        ImplicitCurve::PstarCircleFunctional,
        ImplicitCurve::CovertexConditionEquilateralP,
        ImplicitCurve::PhypCircleFunctional,
        ImplicitCurve::PhypParabolaCondition,
        ImplicitCurve::UnitCircle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ImplicitCurve::X478Quartic => "x478_quartic",
            ImplicitCurve::ParabolaDeg8V => "parabola_deg8_V",
            ImplicitCurve::CovertexLocusV => "covertex_locus_V",
            ImplicitCurve::CovertexLocusVPrinted => "covertex_locus_V_printed",
            ImplicitCurve::HalftangentSextic => "halftangent_sextic",
            ImplicitCurve::PstarCircleFunctional => "pstar_circle_functional",
            ImplicitCurve::CovertexConditionEquilateralP => "covertex_condition_equilateral_P",
            ImplicitCurve::PhypCircleFunctional => "phyp_circle_functional",
            ImplicitCurve::PhypParabolaCondition => "phyp_parabola_condition",
            ImplicitCurve::UnitCircle => "unit_circle",
        }
    }

    /// Whether the curve is a function of a plane point without a triangle.
    pub fn is_planar(&self) -> bool {
        !matches!(
            self,
            ImplicitCurve::PstarCircleFunctional | ImplicitCurve::PhypCircleFunctional | ImplicitCurve::PhypParabolaCondition
        )
    }
}

impl fmt::Display for ImplicitCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ImplicitCurve {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_");
        ImplicitCurve::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| format!("unknown curve '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalContext {
    /// A point in the curve's own normalized frame.
    Plane(Point2),
    /// Side lengths `a, b, c`.
    Sides([f64; 3]),
    /// A triangle with a driver point.
    TrianglePoint(Triangle, Point2),
}

fn checked_sqrt(v: f64, curve: ImplicitCurve, detail: &'static str) -> Result<f64, LociError> {
    if v < 0.0 || v.is_nan() {
        return Err(LociError::Domain { curve, detail });
    }
    Ok(v.sqrt())
}

fn x478_quartic(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    4.0 * r2 * r2 - 8.0 * y.powi(3) - x * x + 2.0 * y * y
}

fn deg8(a: f64, b: f64, c: f64) -> f64 {
    let (a4, b4, c4) = (a.powi(4), b.powi(4), c.powi(4));
    a4 * a4 + b4 * b4 + c4 * c4 - 2.0 * (a4 * b4 + a4 * c4 + b4 * c4)
        + 4.0
            * a
            * b
            * c
            * (a.powi(5) + b.powi(5) + c.powi(5) - a4 * b - a * b4 - a4 * c - a * c4 - b * c4 - b4 * c
                + a.powi(3) * b * c
                + a * b.powi(3) * c
                + a * b * c.powi(3))
}

/// Terms `[P1 ρ1ρ2, P2 (ρ1+ρ2), 2x P3 (ρ1−ρ2), P4 (x²+y²−1)(x²−1)]` of the
/// co-vertex equation.
fn covertex_terms(x: f64, y: f64, curve: ImplicitCurve) -> Result<[f64; 4], LociError> {
    let (x2, y2) = (x * x, y * y);
    let (x4, y4) = (x2 * x2, y2 * y2);
    let (x6, y6) = (x4 * x2, y4 * y2);
    let r1 = checked_sqrt(x2 + y2 + 2.0 * x + 1.0, curve, "rho1")?;
    let r2 = checked_sqrt(x2 + y2 - 2.0 * x + 1.0, curve, "rho2")?;
    let p1 = x6 - (2.0 * y2 + 3.0) * x4 - (3.0 * y4 - 8.0 * y2 - 3.0) * x2 + 11.0 * y4 - 6.0 * y2 - 1.0;
    let p2 = -2.0 * x6 - (22.0 * y2 - 6.0) * x4 - (14.0 * y4 - 36.0 * y2 + 6.0) * x2 + 6.0 * y6 + 22.0 * y4 - 14.0 * y2
        + 2.0;
    let p3 = x6 + (3.0 * y2 - 3.0) * x4 + (3.0 * y4 - 2.0 * y2 + 3.0) * x2 + y6 - 7.0 * y4 - y2 - 1.0;
    let p4 = 5.0 * x4 + 2.0 * (y2 - 5.0) * x2 - 3.0 * y4 - 14.0 * y2 + 5.0;
    Ok([p1 * r1 * r2, p2 * (r1 + r2), 2.0 * x * p3 * (r1 - r2), p4 * (x2 + y2 - 1.0) * (x2 - 1.0)])
}

fn sextic(x: f64, y: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    -4.0 * x2 * x2 * x2 - 4.0 * x2 * x2 * (2.0 * y2 + 2.0 * y + 1.0) - 4.0 * x2 * (y2 * y2 + y2 * y - 4.0 * y - 5.0)
        + 4.0 * y.powi(5)
        + 13.0 * y2 * y2
        + 20.0 * y2 * y
        + 8.0 * y2
        - 8.0 * y
        - 12.0
}

/// Sides `a, b, c` and the focal sums `δ` (or differences `λ` with `diff`).
fn sides_and_params(t: &Triangle, p: Point2, diff: bool) -> ([f64; 3], [f64; 3]) {
    let d = [p.dist(t.vertex_a()), p.dist(t.vertex_b()), p.dist(t.vertex_c())];
    let par = if diff {
        [d[1] - d[2], d[2] - d[0], d[0] - d[1]]
    } else {
        [d[1] + d[2], d[2] + d[0], d[0] + d[1]]
    };
    (t.sides(), par)
}

/// The three squared brackets of the P* functional.
pub fn pstar_brackets(t: &Triangle, p: Point2) -> [f64; 3] {
    let ([a, b, c], [da, db, dc]) = sides_and_params(t, p, false);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let (da2, db2, dc2) = (da * da, db * db, dc * dc);
    [
        (a2 - da2) * (c2 - b2 + db2 - dc2),
        (b2 - db2) * (a2 - c2 + dc2 - da2),
        (c2 - dc2) * (b2 - a2 + da2 - db2),
    ]
}

/// The three squared brackets of the P-hyperbola circle functional.
pub fn phyp_circle_brackets(t: &Triangle, p: Point2) -> [f64; 3] {
    let ([a, b, c], [la, lb, lc]) = sides_and_params(t, p, true);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let (la2, lb2, lc2) = (la * la, lb * lb, lc * lc);
    [
        (c2 - lc2) * (-a2 + b2 + la2 - lb2),
        (b2 - lb2) * (-a2 + c2 + la2 - lc2),
        (a2 - la2) * (-b2 + c2 + lb2 - lc2),
    ]
}

fn phyp_parabola(t: &Triangle, p: Point2) -> f64 {
    let ([a, b, c], [la, lb, lc]) = sides_and_params(t, p, true);
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let (la2, lb2, lc2) = (la * la, lb * lb, lc * lc);
    let mu = (a * b * c).powi(2);
    let ratio = la2 / a2 + lb2 / b2 + lc2 / c2;
    (c2 * la2 * lb2).powi(2)
        + (b2 * la2 * lc2).powi(2)
        + (a2 * lb2 * lc2).powi(2)
        + mu * (mu * (-3.0 + 4.0 * ratio) + 2.0 * la2 * lb2 * lc2 * (6.0 - ratio)
            - 6.0 * (c2 * la2 * lb2 + b2 * la2 * lc2 + a2 * lb2 * lc2))
}

/// The equilateral co-vertex condition with `δ` measured in circumradii.
fn equilateral_covertex(d: [f64; 3]) -> [f64; 2] {
    let [a, b, c] = d.map(|v| v * v);
    let pos = a * b + a * c + b * c + 48.0;
    let neg = 8.0 * (a + b + c);
    [pos - neg, pos + neg]
}

fn equilateral_frame() -> Triangle {
    let h = 3f64.sqrt() / 2.0;
    Triangle::from_coords([[0.0, 1.0], [-h, -0.5], [h, -0.5]]).expect("equilateral frame")
}

fn sq_sum(v: [f64; 3]) -> f64 {
    v.iter().map(|e| e * e).sum()
}

/// Value and magnitude scale (sum of absolute term sizes) of a curve.
fn eval_scaled(id: ImplicitCurve, ctx: &EvalContext) -> Result<(f64, f64), LociError> {
    let mismatch = || LociError::ContextMismatch { curve: id };
    let finite = |p: &Point2| {
        if p.is_finite() {
            Ok(())
        } else {
            Err(LociError::Geometry(GeometryError::NonFinite))
        }
    };
    match (id, ctx) {
        (ImplicitCurve::X478Quartic, EvalContext::Plane(p)) => {
            finite(p)?;
            let (x, y) = (p.x, p.y);
            let r2 = x * x + y * y;
            Ok((x478_quartic(x, y), 4.0 * r2 * r2 + 8.0 * y.abs().powi(3) + x * x + 2.0 * y * y))
        }
        (ImplicitCurve::ParabolaDeg8V, EvalContext::Sides([a, b, c])) => {
            let s = a.abs().max(b.abs()).max(c.abs());
            Ok((deg8(*a, *b, *c), 12.0 * s.powi(8)))
        }
        (ImplicitCurve::ParabolaDeg8V, EvalContext::Plane(p)) => {
            finite(p)?;
            let (pa, pb) = (Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0));
            eval_scaled(id, &EvalContext::Sides([p.dist(pb), p.dist(pa), 1.0]))
        }
        (ImplicitCurve::ParabolaDeg8V, EvalContext::TrianglePoint(t, p)) => {
            finite(p)?;
            let (pa, pb) = (t.vertex_a(), t.vertex_b());
            eval_scaled(id, &EvalContext::Sides([p.dist(pb), p.dist(pa), pa.dist(pb)]))
        }
        (ImplicitCurve::CovertexLocusV | ImplicitCurve::CovertexLocusVPrinted, EvalContext::Plane(p)) => {
            finite(p)?;
            let k = covertex_terms(p.x, p.y, id)?;
            let w = if id == ImplicitCurve::CovertexLocusV { [2.0, 1.0, 1.0, 1.0] } else { [1.0, 1.0, 1.0, 2.0] };
            let v = (0..4).map(|i| w[i] * k[i]).sum();
            let s = (0..4).map(|i| (w[i] * k[i]).abs()).sum();
            Ok((v, s))
        }
        (ImplicitCurve::HalftangentSextic, EvalContext::Plane(p)) => {
            finite(p)?;
            let (x, y) = (p.x.abs(), p.y.abs());
            let scale = 4.0 * x.powi(6) + 4.0 * x.powi(4) * (2.0 * y * y + 2.0 * y + 1.0)
                + 4.0 * x * x * (y.powi(4) + y.powi(3) + 4.0 * y + 5.0)
                + 4.0 * y.powi(5)
                + 13.0 * y.powi(4)
                + 20.0 * y.powi(3)
                + 8.0 * y * y
                + 8.0 * y
                + 12.0;
            Ok((sextic(p.x, p.y), scale))
        }
        (ImplicitCurve::PstarCircleFunctional, EvalContext::TrianglePoint(t, p)) => {
            finite(p)?;
            Ok((sq_sum(pstar_brackets(t, *p)), t.diameter().powi(16)))
        }
        (ImplicitCurve::PhypCircleFunctional, EvalContext::TrianglePoint(t, p)) => {
            finite(p)?;
            Ok((sq_sum(phyp_circle_brackets(t, *p)), t.diameter().powi(16)))
        }
        (ImplicitCurve::PhypParabolaCondition, EvalContext::TrianglePoint(t, p)) => {
            finite(p)?;
            Ok((phyp_parabola(t, *p), 30.0 * t.diameter().powi(24)))
        }
        (ImplicitCurve::CovertexConditionEquilateralP, EvalContext::Plane(p)) => {
            finite(p)?;
            let t = equilateral_frame();
            let (_, d) = sides_and_params(&t, *p, false);
            let [v, s] = equilateral_covertex(d);
            Ok((v, s))
        }
        (ImplicitCurve::CovertexConditionEquilateralP, EvalContext::TrianglePoint(t, p)) => {
            finite(p)?;
            let r = circumcircle(t).radius;
            let (_, d) = sides_and_params(t, *p, false);
            let [v, s] = equilateral_covertex(d.map(|v| v / r));
            Ok((v, s))
        }
        (ImplicitCurve::UnitCircle, EvalContext::Plane(p)) => {
            finite(p)?;
            Ok((p.x * p.x + p.y * p.y - 1.0, p.x * p.x + p.y * p.y + 1.0))
        }
        _ => Err(mismatch()),
    }
}

/// Value of the displayed polynomial or functional.
pub fn eval_implicit(id: ImplicitCurve, ctx: &EvalContext) -> Result<f64, LociError> {
    eval_scaled(id, ctx).map(|(v, _)| v)
}

/// Value divided by the sum of absolute term magnitudes.
pub fn eval_implicit_relative(id: ImplicitCurve, ctx: &EvalContext) -> Result<f64, LociError> {
    let (v, s) = eval_scaled(id, ctx)?;
    Ok(if s > 0.0 { v / s } else { v })
}

/// Plane function of a curve; triangle functionals need `frame`.
pub fn curve_fn(id: ImplicitCurve, frame: Option<Triangle>) -> impl Fn(f64, f64) -> Option<f64> + Sync {
    move |x, y| {
        let p = Point2::new(x, y);
        let ctx = match frame {
            Some(t) if !id.is_planar() || id == ImplicitCurve::ParabolaDeg8V => EvalContext::TrianglePoint(t, p),
            _ => EvalContext::Plane(p),
        };
        eval_implicit(id, &ctx).ok().filter(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusSample {
    /// Sweep angle.
    pub parameter: f64,
    /// The moving vertex `C` or the point `P`.
    pub driver: Point2,
    /// Center of the degenerate six-point conic.
    pub center: Point2,
    pub implicit_residual: f64,
}

/// Center of the degenerate Yiu conic of `A = (1/2, 0)`, `B = (−1/2, 0)`,
/// `C = (cos θ, sin θ)/2`.
pub fn x478_center(theta: f64) -> Result<(Point2, Point2), LociError> {
    let c = Point2::new(theta.cos() * 0.5, theta.sin() * 0.5);
    let t = Triangle::new(Point2::new(0.5, 0.0), Point2::new(-0.5, 0.0), c)?;
    let tr = build_triad(&t, TriadKind::VEllipse, None)?;
    // all six vertices: near A, B two of them crowd together
    let conic = fit_conic_lsq(&triad_vertices(&tr)?, 1e-13)?.conic;
    Ok((c, center(&conic)?))
}

/// Sweeps `C` over the upper semicircle on `AB` with `θ ∈ [ε, π − ε]`.
pub fn sample_locus_x478_range(n: usize, eps: f64) -> Result<Vec<LocusSample>, LociError> {
    let n = n.max(2);
    (0..n)
        .into_par_iter()
        .map(|k| {
            let theta = eps + (std::f64::consts::PI - 2.0 * eps) * k as f64 / (n - 1) as f64;
            let (c, o) = x478_center(theta)?;
            let r = eval_implicit(ImplicitCurve::X478Quartic, &EvalContext::Plane(o))?;
            Ok(LocusSample { parameter: theta, driver: c, center: o, implicit_residual: r.abs() })
        })
        .collect()
}

pub fn sample_locus_x478(n: usize) -> Result<Vec<LocusSample>, LociError> {
    sample_locus_x478_range(n, 1e-3)
}

/// Center `O*` of the six-point conic of the P-ellipse triad through `p`.
pub fn ostar_center(t: &Triangle, p: Point2) -> Result<Point2, LociError> {
    let tr = build_triad(t, TriadKind::PEllipse, Some(p))?;
    let rep = six_point_conic(&tr)?;
    Ok(center(&rep.conic)?)
}

/// Index `k` of the vertex whose opposite circumcircle arc holds `p`.
pub fn circumcircle_arc(t: &Triangle, p: Point2) -> usize {
    (0..3)
        .min_by(|&i, &j| arc_side(t, i, p).total_cmp(&arc_side(t, j, p)))
        .expect("three vertices")
}

fn arc_side(t: &Triangle, k: usize, p: Point2) -> f64 {
    let (u, v) = t.side_endpoints(k);
    signed_area(u, v, p) * signed_area(u, v, t.vertex(k)).signum()
}

/// Ellipse `L_k` through the two V-ellipse vertices next to vertex `k` and
/// the side midpoints.
pub fn ostar_arc_conic(t: &Triangle, k: usize) -> Result<Conic, LociError> {
    let tr = build_triad(t, TriadKind::VEllipse, None)?;
    let v = triad_vertices(&tr)?;
    let apex = t.vertex(k);
    let near = |m: usize| {
        let (p, q) = (v[2 * m], v[2 * m + 1]);
        if p.dist(apex) <= q.dist(apex) {
            p
        } else {
            q
        }
    };
    let pts = [near((k + 1) % 3), near((k + 2) % 3), t.side_midpoint(0), t.side_midpoint(1), t.side_midpoint(2)];
    Ok(fit_conic(&pts.map(FitConstraint::Point))?.conic)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OstarLocus {
    pub samples: Vec<LocusSample>,
    /// Vertex index whose opposite arc each sample lies on.
    pub arc_index: Vec<usize>,
    #[serde(skip)]
    pub arcs: Vec<Conic>,
    /// Worst residual of a side midpoint on any arc ellipse.
    pub midpoint_residual: f64,
}

/// Sweeps `P` over the circumcircle and measures each `O*` against the arc
/// ellipse of its third of the circle.
pub fn sample_locus_ostar(t: &Triangle, n: usize) -> Result<OstarLocus, LociError> {
    let n = n.max(1);
    let circ = circumcircle(t);
    let arcs = [ostar_arc_conic(t, 0)?, ostar_arc_conic(t, 1)?, ostar_arc_conic(t, 2)?];
    let midpoint_residual = arcs
        .iter()
        .flat_map(|c| (0..3).map(move |i| residual(c, t.side_midpoint(i))))
        .fold(0.0, f64::max);
    let a = t.vertex_a() - circ.center;
    let theta0 = a.y.atan2(a.x);
    let rows: Vec<(LocusSample, usize)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta = theta0 + std::f64::consts::TAU * (j as f64 + 0.5) / n as f64;
            let p = circ.point_at(theta);
            let k = circumcircle_arc(t, p);
            let o = ostar_center(t, p)?;
            let s = LocusSample { parameter: theta, driver: p, center: o, implicit_residual: residual(&arcs[k], o) };
            Ok((s, k))
        })
        .collect::<Result<_, LociError>>()?;
    let (samples, arc_index) = rows.into_iter().unzip();
    Ok(OstarLocus { samples, arc_index, arcs: arcs.to_vec(), midpoint_residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilateralOstarReport {
    /// Per arc `(semi-major, semi-minor)`.
    pub semi_axes: [(f64, f64); 3],
    /// Distance of each arc center from its vertex.
    pub center_offsets: [f64; 3],
    /// `|sin|` of the angle between each major axis and its altitude.
    pub axis_misalignment: [f64; 3],
    pub midpoint_residual: f64,
    /// Distance of the limits of `O*` (P → A, P → B) from the reflections of
    /// the midpoints of `AC`, `BC` about `C`.
    pub endpoint_error: f64,
    /// Tangency discriminants of `AC_a` and `BC_b` against the arc ellipse.
    pub tangency: [f64; 2],
    /// Distance of the top vertex from the midpoint of `C C_ab`.
    pub top_vertex_error: f64,
    pub area_ratio: f64,
}

/// Checks the arc ellipses of the side-1 equilateral.
pub fn equilateral_ostar_locus_check() -> Result<EquilateralOstarReport, LociError> {
    let t = Triangle::equilateral(1.0);
    let mut semi_axes = [(0.0, 0.0); 3];
    let mut center_offsets = [0.0; 3];
    let mut axis_misalignment = [0.0; 3];
    let mut midpoint_residual: f64 = 0.0;
    let mut arcs = Vec::new();
    for k in 0..3 {
        let conic = ostar_arc_conic(&t, k)?;
        let sh = conic_shape(&conic)?;
        let apex = t.vertex(k);
        let alt = (apex - t.side_midpoint(k)).normalized();
        semi_axes[k] = (sh.semi_major, sh.semi_minor);
        center_offsets[k] = sh.center.dist(apex);
        axis_misalignment[k] = sh.major_direction.cross(alt).abs();
        for i in 0..3 {
            midpoint_residual = midpoint_residual.max(residual(&conic, t.side_midpoint(i)));
        }
        arcs.push((conic, sh));
    }
    let (a, b, c) = (t.vertex_a(), t.vertex_b(), t.vertex_c());
    // the endpoint joined to A is the reflection of the BC midpoint
    let ca = c * 2.0 - t.side_midpoint(0);
    let cb = c * 2.0 - t.side_midpoint(1);
    let circ = circumcircle(&t);
    let angle = |p: Point2| {
        let d = p - circ.center;
        d.y.atan2(d.x)
    };
    let h = 1e-7;
    let near_a = ostar_center(&t, circ.point_at(angle(a) + h))?;
    let near_b = ostar_center(&t, circ.point_at(angle(b) - h))?;
    let endpoint_error = near_a.dist(ca).max(near_b.dist(cb));
    let (lc, shc) = &arcs[2];
    let l1 = line_through(a, ca)?;
    let l2 = line_through(b, cb)?;
    let tangency = [line_tangency_discriminant(lc, &l1)?, line_tangency_discriminant(lc, &l2)?];
    let cab = line_intersection(&l1, &l2)?;
    let ab = t.sideline(2);
    let top = [shc.center + shc.major_direction * shc.semi_major, shc.center - shc.major_direction * shc.semi_major]
        .into_iter()
        .max_by(|p, q| point_line_distance(*p, &ab).total_cmp(&point_line_distance(*q, &ab)))
        .expect("two vertices");
    let top_vertex_error = top.dist(c.midpoint(cab));
    let area_ratio = signed_area(a, cab, b).abs() / t.area();
    Ok(EquilateralOstarReport {
        semi_axes,
        center_offsets,
        axis_misalignment,
        midpoint_residual,
        endpoint_error,
        tangency,
        top_vertex_error,
        area_ratio,
    })
}

/// Six-point conic of a triad, classified, with radial spread of its
/// vertices around the conic center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleCheck {
    pub class: ConicClass,
    pub center: Point2,
    pub radius: f64,
    /// `max |dist − radius|` over the six vertices.
    pub radial_spread: f64,
    /// Distance from the circumcenter of the reference triangle.
    pub circumcenter_offset: f64,
    pub circumradius: f64,
}

pub fn circle_check(tr: &ConicTriad) -> Result<CircleCheck, LociError> {
    let rep = six_point_conic(tr)?;
    let ctr = center(&rep.conic)?;
    let d = rep.vertices.map(|v| v.dist(ctr));
    let radius = d.iter().sum::<f64>() / 6.0;
    let radial_spread = d.iter().map(|v| (v - radius).abs()).fold(0.0, f64::max);
    let circ = circumcircle(tr.triangle());
    Ok(CircleCheck {
        class: rep.class,
        center: ctr,
        radius,
        radial_spread,
        circumcenter_offset: ctr.dist(circ.center),
        circumradius: circ.radius,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub point: Point2,
    /// Functional value divided by `diameter^16`.
    pub value: f64,
    /// Starts converging to this point.
    pub hits: usize,
    /// Largest distance between converged starts assigned to this point.
    pub spread: f64,
    pub circle: CircleCheck,
}

const CONVERGED: f64 = 1e-16;

fn minimize_brackets<F>(t: &Triangle, brackets: F, starts: &[Point2]) -> Vec<(Point2, f64)>
where
    F: Fn(&Triangle, Point2) -> [f64; 3] + Sync,
{
    let d = t.diameter();
    let scale = d.powi(4);
    let r = |x: &[f64; 2]| brackets(t, Point2::new(x[0], x[1])).map(|v| v / scale);
    let f = |x: &[f64; 2]| sq_sum(r(x));
    let nm = NelderMead::default();
    starts
        .par_iter()
        .map(|s| {
            let m = nm.minimize(f, [s.x, s.y], 0.1 * d);
            let g = gauss_newton(r, m.x, 50);
            let (x, v) = if g.value <= m.value { (g.x, g.value) } else { (m.x, m.value) };
            (Point2::new(x[0], x[1]), v)
        })
        .collect()
}

fn away_from_vertices(t: &Triangle, p: Point2) -> bool {
    t.vertices().iter().all(|v| v.dist(p) > 1e-3 * t.diameter())
}

/// Groups converged minima into distinct points (distance `1e−6 · diameter`).
fn cluster(t: &Triangle, hits: &[(Point2, f64)]) -> Vec<(Point2, f64, usize, f64)> {
    let d = t.diameter();
    let mut groups: Vec<(Point2, f64, usize, f64)> = Vec::new();
    for &(p, v) in hits {
        if v > CONVERGED || !away_from_vertices(t, p) {
            continue;
        }
        match groups.iter_mut().find(|g| g.0.dist(p) <= 1e-6 * d) {
            Some(g) => {
                g.3 = g.3.max(g.0.dist(p));
                g.2 += 1;
                if v < g.1 {
                    g.0 = p;
                    g.1 = v;
                }
            }
            None => groups.push((p, v, 1, 0.0)),
        }
    }
    groups
}

fn pstar_starts(t: &Triangle) -> Vec<Point2> {
    let g = t.centroid();
    let i = classic_center(t, CenterId::Incenter).unwrap_or(g);
    let o = circumcircle(t).center;
    let mut s = vec![g, i, o];
    let r = 0.25 * t.diameter();
    for k in 0..6 {
        let a = std::f64::consts::PI * k as f64 / 3.0 + 0.3;
        s.push(g + Point2::new(a.cos(), a.sin()) * r);
    }
    s
}

/// The point `P*` whose P-ellipse six-point conic is a circle.
pub fn find_pstar(t: &Triangle) -> Result<SpecialPoint, LociError> {
    let hits = minimize_brackets(t, pstar_brackets, &pstar_starts(t));
    let groups = cluster(t, &hits);
    let best = hits.iter().map(|h| h.1).fold(f64::INFINITY, f64::min);
    let (p, v, n, spread) = groups
        .into_iter()
        .max_by(|a, b| a.2.cmp(&b.2).then(b.1.total_cmp(&a.1)))
        .ok_or(LociError::NotConverged { best })?;
    let tr = build_triad(t, TriadKind::PEllipse, Some(p))?;
    Ok(SpecialPoint { point: p, value: v, hits: n, spread, circle: circle_check(&tr)? })
}

/// The pair `P*`, `Q*` whose P-hyperbola six-point conic is a circle, in
/// lexicographic order.
pub fn find_phyp_circle_points(t: &Triangle) -> Result<(SpecialPoint, SpecialPoint), LociError> {
    let g = t.centroid();
    let d = t.diameter();
    let mut starts = vec![g];
    for i in 0..6 {
        for j in 0..6 {
            starts.push(g + Point2::new(i as f64 / 5.0 - 0.5, j as f64 / 5.0 - 0.5) * (2.0 * d));
        }
    }
    let hits = minimize_brackets(t, phyp_circle_brackets, &starts);
    let best = hits.iter().map(|h| h.1).fold(f64::INFINITY, f64::min);
    let mut groups = cluster(t, &hits);
    groups.sort_by(|a, b| b.2.cmp(&a.2).then(a.1.total_cmp(&b.1)));
    let first = *groups.first().ok_or(LociError::NotConverged { best })?;
    // the partner is another common point of the triad through the first
    let tr = build_triad(t, TriadKind::PHyperbola, Some(first.0))?;
    let scale = d.powi(4);
    let r = |x: &[f64; 2]| phyp_circle_brackets(t, Point2::new(x[0], x[1])).map(|v| v / scale);
    let seeds: Vec<(Point2, f64)> = triple_points(&tr)?
        .into_iter()
        .map(|q| {
            let g = gauss_newton(r, [q.x, q.y], 50);
            (Point2::new(g.x[0], g.x[1]), g.value)
        })
        .collect();
    let partner = groups[1..]
        .iter()
        .map(|g| (g.0, g.1, g.2, g.3))
        .chain(cluster(t, &seeds).into_iter().map(|g| (g.0, g.1, 0, 0.0)))
        .filter(|g| g.0.dist(first.0) > 1e-6 * d)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(LociError::NotConverged { best })?;
    let mut groups = [first, partner];
    groups.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.0.y.total_cmp(&b.0.y)));
    let mk = |(p, v, n, spread): (Point2, f64, usize, f64)| -> Result<SpecialPoint, LociError> {
        let tr = build_triad(t, TriadKind::PHyperbola, Some(p))?;
        Ok(SpecialPoint { point: p, value: v, hits: n, spread, circle: circle_check(&tr)? })
    };
    let second = mk(groups[1])?;
    Ok((mk(groups[0])?, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnticevianReport {
    /// P* functional of the anticevian at the reference circumcenter,
    /// divided by `diameter^16`.
    pub functional: f64,
    pub circle: CircleCheck,
    /// Distance of the circle center from the reference `X4X6` line over the
    /// anticevian diameter.
    pub x4x6_residual: f64,
}

/// P-ellipse triad of the X3-anticevian through the reference X3.
pub fn anticevian_x3_check(t: &Triangle) -> Result<AnticevianReport, LociError> {
    let w = center_barycentrics(t, CenterId::X3).expect("closed form");
    let anti = anticevian_triangle(t, w)?;
    let x3 = classic_center(t, CenterId::X3)?;
    let functional = sq_sum(pstar_brackets(&anti, x3)) / anti.diameter().powi(16);
    let tr = build_triad(&anti, TriadKind::PEllipse, Some(x3))?;
    let circle = circle_check(&tr)?;
    let l = line_through(classic_center(t, CenterId::X4)?, classic_center(t, CenterId::X6)?)?;
    let x4x6_residual = point_line_distance(circle.center, &l) / anti.diameter();
    Ok(AnticevianReport { functional, circle, x4x6_residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct X55Report {
    /// Radial spread of the six vertices over the circumradius of `T′`.
    pub circle_residual: f64,
    /// Conic center vs circumcenter of `T′`, over that circumradius.
    pub concentric_residual: f64,
    /// Circumcenter of `T′` vs X7 of `T`, over that circumradius.
    pub x7_residual: f64,
    pub class: ConicClass,
    pub center: Point2,
    pub x55: Point2,
    pub second_point: Option<Point2>,
}

/// Evidence for the X55 reflection-triangle circle.
pub fn x55_conjecture_check(t: &Triangle) -> Result<X55Report, LociError> {
    let x55 = classic_center(t, CenterId::X55)?;
    let tp = reflection_triangle(t, x55)?;
    let tr = build_triad(&tp, TriadKind::PHyperbola, Some(x55))?;
    let cc = circle_check(&tr)?;
    let x7 = classic_center(t, CenterId::X7)?;
    let circ = circumcircle(&tp);
    Ok(X55Report {
        circle_residual: cc.radial_spread / circ.radius,
        concentric_residual: cc.circumcenter_offset / circ.radius,
        x7_residual: circ.center.dist(x7) / circ.radius,
        class: cc.class,
        center: cc.center,
        x55,
        second_point: second_common_point(&tr).ok(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CovertexCase {
    /// V-ellipses of `A = (−1, 0)`, `B = (1, 0)`, driver `C`.
    VEllipse,
    /// P-ellipses of the circumradius-1 equilateral, driver `P`.
    EquilateralP,
}

impl CovertexCase {
    fn curve(&self) -> ImplicitCurve {
        match self {
            CovertexCase::VEllipse => ImplicitCurve::CovertexLocusV,
            CovertexCase::EquilateralP => ImplicitCurve::CovertexConditionEquilateralP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovertexReport {
    pub driver: Point2,
    /// Implicit value relative to its term magnitudes.
    pub implicit_value: f64,
    /// Residual of the co-vertex left out of the fit.
    pub residual6: f64,
    pub class: ConicClass,
    pub center: Option<Point2>,
    /// `| |O†| − r |` for the equilateral incircle.
    pub incircle_gap: Option<f64>,
}

/// Root of the co-vertex implicit along the ray from the origin at `angle`,
/// the first one found scanning outward over `(r0, r1)`.
pub fn covertex_driver_on_ray(case: CovertexCase, angle: f64, r0: f64, r1: f64) -> Option<Point2> {
    let u = Point2::new(angle.cos(), angle.sin());
    let f = |r: f64| eval_implicit_relative(case.curve(), &EvalContext::Plane(u * r)).unwrap_or(f64::NAN);
    let steps = 3000;
    let mut prev = (r0, f(r0));
    for k in 1..=steps {
        let r = r0 + (r1 - r0) * k as f64 / steps as f64;
        let v = f(r);
        if prev.1.is_finite() && v.is_finite() && prev.1.signum() != v.signum() {
            return bisect(f, prev.0, r, 1e-15).map(|r| u * r);
        }
        prev = (r, v);
    }
    None
}

/// Six co-vertex conic when the driver satisfies the co-vertex implicit.
pub fn covertex_conic_check(case: CovertexCase, driver: Point2) -> Result<CovertexReport, LociError> {
    let implicit_value = eval_implicit_relative(case.curve(), &EvalContext::Plane(driver))?;
    if implicit_value.abs() > 1e-9 {
        return Err(LociError::DriverNotOnLocus { value: implicit_value });
    }
    let tr = match case {
        CovertexCase::VEllipse => {
            let t = Triangle::new(Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), driver)?;
            build_triad(&t, TriadKind::VEllipse, None)?
        }
        CovertexCase::EquilateralP => build_triad(&equilateral_frame(), TriadKind::PEllipse, Some(driver))?,
    };
    let v = triad_covertices(&tr)?;
    // five of the six can be nearly dependent; fit the best-conditioned five
    let mut best: Option<(FitReport, usize)> = None;
    let mut last_err = None;
    for out in (0..6).rev() {
        let idx: Vec<usize> = (0..6).filter(|&k| k != out).collect();
        match fit_conic(&[0, 1, 2, 3, 4].map(|k| FitConstraint::Point(v[idx[k]]))) {
            Ok(f) if best.as_ref().map_or(true, |b| f.condition_ratio() > b.0.condition_ratio()) => best = Some((f, out)),
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    let Some((fit, out)) = best else {
        return Err(last_err.expect("six subsets tried").into());
    };
    let conic = fit.conic;
    let class = classify(&conic);
    let ctr = center(&conic).ok();
    let incircle_gap = match (case, ctr) {
        (CovertexCase::EquilateralP, Some(o)) => {
            let inc = incircle(tr.triangle());
            Some((o.dist(inc.center) - inc.radius).abs())
        }
        _ => None,
    };
    Ok(CovertexReport { driver, implicit_value, residual6: residual(&conic, v[out]), class, center: ctr, incircle_gap })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Yiu conic with `A`, `B` fixed and `C` at the cell.
    VEllipseOverC,
    PEllipseOverP,
    PHyperbolaOverP,
}

impl RegionKind {
    pub const ALL: [RegionKind; 3] = [RegionKind::VEllipseOverC, RegionKind::PEllipseOverP, RegionKind::PHyperbolaOverP];

    pub fn name(&self) -> &'static str {
        match self {
            RegionKind::VEllipseOverC => "v_ellipse_over_C",
            RegionKind::PEllipseOverP => "p_ellipse_over_P",
            RegionKind::PHyperbolaOverP => "p_hyperbola_over_P",
        }
    }
}

impl FromStr for RegionKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_");
        let alias = match key.to_ascii_lowercase().as_str() {
            "v_ell" | "v_ellipse" => Some(RegionKind::VEllipseOverC),
            "p_ell" | "p_ellipse" => Some(RegionKind::PEllipseOverP),
            "p_hyp" | "p_hyperbola" => Some(RegionKind::PHyperbolaOverP),
            _ => None,
        };
        alias
            .or_else(|| RegionKind::ALL.iter().copied().find(|k| k.name().eq_ignore_ascii_case(&key)))
            .ok_or_else(|| format!("unknown region kind '{s}'"))
    }
}

/// Axis-aligned box `[xmin, xmax] × [ymin, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        BBox { xmin, xmax, ymin, ymax }
    }

    pub fn square(h: f64) -> Self {
        BBox::new(-h, h, -h, h)
    }

    /// Box around a triangle, grown by `margin` diameters on every side.
    pub fn around(t: &Triangle, margin: f64) -> Self {
        let vs = t.vertices();
        let m = margin * t.diameter();
        BBox::new(
            vs.iter().map(|v| v.x).fold(f64::INFINITY, f64::min) - m,
            vs.iter().map(|v| v.x).fold(f64::NEG_INFINITY, f64::max) + m,
            vs.iter().map(|v| v.y).fold(f64::INFINITY, f64::min) - m,
            vs.iter().map(|v| v.y).fold(f64::NEG_INFINITY, f64::max) + m,
        )
    }
}

impl FromStr for BBox {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<f64> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<f64>().map_err(|e| format!("bad bbox number '{p}': {e}")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [a, b, c, d] if a < b && c < d => Ok(BBox::new(a, b, c, d)),
            _ => Err(format!("bbox must be 'xmin,xmax,ymin,ymax', got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub kind: RegionKind,
    pub bbox: BBox,
    pub nx: usize,
    pub ny: usize,
    /// Row-major from `ymin`; failed constructions are degenerate.
    pub cells: Vec<ConicClass>,
    /// Normalized determinant, oriented by continuation down the first
    /// column and then along each row; NaN where the construction failed.
    pub det: Vec<f64>,
}

impl RegionGrid {
    pub fn cell_center(&self, i: usize, j: usize) -> Point2 {
        let dx = (self.bbox.xmax - self.bbox.xmin) / self.nx as f64;
        let dy = (self.bbox.ymax - self.bbox.ymin) / self.ny as f64;
        Point2::new(self.bbox.xmin + (i as f64 + 0.5) * dx, self.bbox.ymin + (j as f64 + 0.5) * dy)
    }

    pub fn class_at(&self, i: usize, j: usize) -> ConicClass {
        self.cells[j * self.nx + i]
    }

    pub fn det_at(&self, i: usize, j: usize) -> f64 {
        self.det[j * self.nx + i]
    }
}

/// Triad for a region-map driver point.
pub fn region_triad(t: &Triangle, kind: RegionKind, p: Point2) -> Result<ConicTriad, TriadError> {
    match kind {
        RegionKind::VEllipseOverC => {
            let tc = Triangle::new(t.vertex_a(), t.vertex_b(), p)?;
            build_triad(&tc, TriadKind::VEllipse, None)
        }
        RegionKind::PEllipseOverP => build_triad(t, TriadKind::PEllipse, Some(p)),
        RegionKind::PHyperbolaOverP => build_triad(t, TriadKind::PHyperbola, Some(p)),
    }
}

/// Six-point conic of a driver: class, normalized determinant and unit
/// Cartesian coefficients, with the sign the fit happened to produce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriverConic {
    pub class: ConicClass,
    pub det: f64,
    pub coefficients: [f64; 6],
}

impl DriverConic {
    fn flip(&mut self) {
        self.det = -self.det;
        self.coefficients = self.coefficients.map(|c| -c);
    }

    fn align(&self, other: &DriverConic) -> f64 {
        self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a * b).sum()
    }
}

pub fn classify_driver(t: &Triangle, kind: RegionKind, p: Point2) -> Option<DriverConic> {
    let tr = region_triad(t, kind, p).ok()?;
    let rep = six_point_conic(&tr).ok()?;
    let k = rep.conic.to_cartesian().coefficients();
    let n = k.iter().map(|v| v * v).sum::<f64>().sqrt();
    Some(DriverConic { class: rep.class, det: normalized_determinant(&rep.conic), coefficients: k.map(|v| v / n) })
}

/// Orients conics along a path by continuation: each one is flipped to
/// agree with the previous valid one.
pub fn orient_path<'a>(path: impl IntoIterator<Item = &'a mut Option<DriverConic>>) {
    let mut prev: Option<DriverConic> = None;
    for c in path.into_iter().flatten() {
        if let Some(q) = prev {
            if c.align(&q) < 0.0 {
                c.flip();
            }
        }
        prev = Some(*c);
    }
}

pub fn region_map(t: &Triangle, kind: RegionKind, bbox: BBox, nx: usize, ny: usize) -> RegionGrid {
    let (nx, ny) = (nx.max(2), ny.max(2));
    let mut grid = RegionGrid { kind, bbox, nx, ny, cells: Vec::new(), det: Vec::new() };
    let mut out: Vec<Option<DriverConic>> =
        (0..nx * ny).into_par_iter().map(|idx| classify_driver(t, kind, grid.cell_center(idx % nx, idx / nx))).collect();
    // first column upward, then each row from its first cell
    orient_path(out.iter_mut().step_by(nx));
    for row in out.chunks_mut(nx) {
        orient_path(row.iter_mut());
    }
    (grid.cells, grid.det) =
        out.into_iter().map(|c| c.map_or((ConicClass::DegenerateTwoLines, f64::NAN), |c| (c.class, c.det))).unzip();
    grid
}

pub type Polyline = Vec<Point2>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeId {
    H(usize, usize),
    V(usize, usize),
}

/// Marching squares on an `n × n` seed grid, crossings refined by bisection
/// along grid edges and chained into polylines. Closed loops repeat their
/// first point at the end.
pub fn trace_zero_set<F>(f: F, bbox: BBox, n: usize) -> Vec<Polyline>
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let n = n.max(2);
    let dx = (bbox.xmax - bbox.xmin) / n as f64;
    let dy = (bbox.ymax - bbox.ymin) / n as f64;
    let node = |i: usize, j: usize| Point2::new(bbox.xmin + i as f64 * dx, bbox.ymin + j as f64 * dy);
    let vals: Vec<Option<f64>> = (0..(n + 1) * (n + 1))
        .into_par_iter()
        .map(|k| {
            let p = node(k % (n + 1), k / (n + 1));
            f(p.x, p.y)
        })
        .collect();
    let val = |i: usize, j: usize| vals[j * (n + 1) + i];
    let positive = |v: f64| v >= 0.0;
    let crosses = |a: Option<f64>, b: Option<f64>| matches!((a, b), (Some(a), Some(b)) if positive(a) != positive(b));
    let edge_ends = |e: EdgeId| match e {
        EdgeId::H(i, j) => ((i, j), (i + 1, j)),
        EdgeId::V(i, j) => ((i, j), (i, j + 1)),
    };
    let edge_crosses = |e: EdgeId| {
        let (p, q) = edge_ends(e);
        crosses(val(p.0, p.1), val(q.0, q.1))
    };
    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let edges = [EdgeId::H(i, j), EdgeId::V(i + 1, j), EdgeId::H(i, j + 1), EdgeId::V(i, j)];
            let hit: Vec<EdgeId> = edges.into_iter().filter(|&e| edge_crosses(e)).collect();
            match hit.len() {
                2 => segments.push((hit[0], hit[1])),
                4 => {
                    let c = node(i, j) + Point2::new(dx, dy) * 0.5;
                    let same = match (f(c.x, c.y), val(i, j)) {
                        (Some(vc), Some(v0)) => positive(vc) == positive(v0),
                        _ => true,
                    };
                    // corner (i, j) joined with the center: its two edges are cut off
                    if same {
                        segments.push((hit[0], hit[1]));
                        segments.push((hit[2], hit[3]));
                    } else {
                        segments.push((hit[0], hit[3]));
                        segments.push((hit[1], hit[2]));
                    }
                }
                _ => {}
            }
        }
    }
    let mut ids: Vec<EdgeId> = segments.iter().flat_map(|s| [s.0, s.1]).collect();
    ids.sort_by_key(|e| match *e {
        EdgeId::H(i, j) => (0, j, i),
        EdgeId::V(i, j) => (1, j, i),
    });
    ids.dedup();
    let points: HashMap<EdgeId, Point2> = ids
        .par_iter()
        .map(|&e| {
            let (p, q) = edge_ends(e);
            let (a, b) = (node(p.0, p.1), node(q.0, q.1));
            let g = |s: f64| {
                let x = a.lerp(b, s);
                f(x.x, x.y).unwrap_or(f64::NAN)
            };
            let s = bisect(g, 0.0, 1.0, 1e-16).unwrap_or(0.5);
            (e, a.lerp(b, s))
        })
        .collect();
    let mut adj: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (k, s) in segments.iter().enumerate() {
        adj.entry(s.0).or_default().push(k);
        adj.entry(s.1).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let walk = |start_edge: EdgeId, first: usize, used: &mut Vec<bool>| {
        let mut line = vec![points[&start_edge]];
        let mut edge = start_edge;
        let mut seg = first;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            edge = if a == edge { b } else { a };
            line.push(points[&edge]);
            match adj[&edge].iter().copied().find(|&k| !used[k]) {
                Some(k) => seg = k,
                None => break,
            }
        }
        line
    };
    // open chains first, from their ends
    for &e in &ids {
        if adj[&e].len() == 1 && !used[adj[&e][0]] {
            out.push(walk(e, adj[&e][0], &mut used));
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            out.push(walk(segments[k].0, k, &mut used));
        }
    }
    out
}

/// Traces a curve in its own frame (or in `frame` for triangle functionals).
pub fn trace_curve(id: ImplicitCurve, frame: Option<Triangle>, bbox: BBox, n: usize) -> Vec<Polyline> {
    trace_zero_set(curve_fn(id, frame), bbox, n)
}

/// The half-tangent sextic together with its reflection about the x-axis.
pub fn halftangent_locus(bbox: BBox, n: usize) -> Vec<Polyline> {
    let mut lines = trace_curve(ImplicitCurve::HalftangentSextic, None, bbox, n);
    let mirrored: Vec<Polyline> = lines.iter().map(|l| l.iter().map(|p| Point2::new(p.x, -p.y)).collect()).collect();
    lines.extend(mirrored);
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(id: ImplicitCurve, x: f64, y: f64) -> f64 {
        eval_implicit(id, &EvalContext::Plane(Point2::new(x, y))).unwrap()
    }

    #[test]
    fn displayed_values() {
        assert_eq!(plane(ImplicitCurve::X478Quartic, 0.5, 1.0), 0.0);
        assert_eq!(plane(ImplicitCurve::X478Quartic, 0.0, 0.0), 0.0);
        assert_eq!(plane(ImplicitCurve::HalftangentSextic, 0.0, 1.0), 25.0);
        let v = eval_implicit(ImplicitCurve::ParabolaDeg8V, &EvalContext::Sides([1.0, 1.0, 1.0])).unwrap();
        assert_eq!(v, -3.0);
    }

    #[test]
    fn pstar_functional_vanishes_at_equilateral_center() {
        let t = Triangle::equilateral(1.0);
        let v = eval_implicit(ImplicitCurve::PstarCircleFunctional, &EvalContext::TrianglePoint(t, t.centroid())).unwrap();
        assert!(v.abs() < 1e-28, "{v}");
    }

    #[test]
    fn context_mismatch_is_reported() {
        let e = eval_implicit(ImplicitCurve::PstarCircleFunctional, &EvalContext::Plane(Point2::origin()));
        assert!(matches!(e, Err(LociError::ContextMismatch { .. })));
        let e = eval_implicit(ImplicitCurve::X478Quartic, &EvalContext::Plane(Point2::new(f64::NAN, 0.0)));
        assert!(e.is_err());
    }

    #[test]
    fn curve_names_round_trip() {
        for c in ImplicitCurve::ALL {
            assert_eq!(c.name().parse::<ImplicitCurve>().unwrap(), c);
        }
        assert_eq!("p-hyp".parse::<RegionKind>().unwrap(), RegionKind::PHyperbolaOverP);
        assert!("1,0,0,1".parse::<BBox>().is_err());
    }

    #[test]
    fn unit_circle_traces_closed() {
        let lines = trace_curve(ImplicitCurve::UnitCircle, None, BBox::square(1.5), 41);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert_eq!(l.first(), l.last());
        let err = l.iter().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn equilateral_pstar_is_center() {
        let t = Triangle::equilateral(2.0);
        let s = find_pstar(&t).unwrap();
        assert!(s.point.dist(t.centroid()) < 1e-8, "{s:?}");
        assert_eq!(s.circle.class, ConicClass::Circle);
    }
}
