//! Regression suite: one named check per proposition, theorem, corollary,
//! remark and conjecture, plus the appendix blocks.
//!
//! A check draws `trials` seeded configurations, evaluates a residual for
//! each and keeps the worst one as a replayable witness. Bounds scale with
//! the global tolerance (see [`crate::tolerance`]).

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::appendix::{check_appendix, AppendixBlock};
use crate::centers::{
    classic_center, excircle_tangency_points, half_tangent_sum, intouch_extouch, kissing_circles, soddy_line, CenterId,
};
use crate::conics::{normalized_determinant, relative_discriminant, ConicClass};
use crate::geometry::{bary_to_cartesian, point_line_distance, BaryCoords, Point2, Triangle};
use crate::loci::{
    anticevian_x3_check, classify_driver, orient_path, covertex_conic_check, covertex_driver_on_ray,
    equilateral_ostar_locus_check, eval_implicit, find_phyp_circle_points, find_pstar, region_map, sample_locus_ostar,
    sample_locus_x478, sample_locus_x478_range, x478_center, x55_conjecture_check, BBox, CovertexCase, EvalContext,
    ImplicitCurve, RegionKind,
};
use crate::optimize::bisect;
use crate::sampling::{random_point_near, random_triangle, trial_rng};
use crate::tolerance;
use crate::triads::{
    build_triad, concurrency_theorems, equal_area_check, gap_identity_residual, second_common_point,
    six_point_conic, triad_vertices, ConcurrencyReport, TriadKind,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown proposition {0:?}")]
    UnknownProposition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementKind {
    Proposition,
    Theorem,
    Corollary,
    Remark,
    Conjecture,
    Appendix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// Failing residuals fail the suite.
    Hard,
    /// Numerical evidence only; fails the suite above [`EVIDENCE_LIMIT`].
    Evidence,
}

pub const EVIDENCE_LIMIT: f64 = 1e-5;

/// One configuration of a check, enough to replay it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialInput {
    pub triangle: [[f64; 2]; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Point2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
}

impl TrialInput {
    fn of(t: &Triangle) -> Self {
        TrialInput { triangle: t.vertices().map(|v| [v.x, v.y]), point: None, param: None }
    }

    fn with_point(t: &Triangle, p: Point2) -> Self {
        TrialInput { point: Some(p), ..Self::of(t) }
    }

    fn with_param(t: &Triangle, v: f64) -> Self {
        TrialInput { param: Some(v), ..Self::of(t) }
    }

    pub fn triangle(&self) -> Result<Triangle, String> {
        Triangle::from_coords(self.triangle).map_err(|e| e.to_string())
    }

    fn point(&self) -> Result<Point2, String> {
        self.point.ok_or_else(|| "trial needs a point".to_string())
    }

    fn param(&self) -> Result<f64, String> {
        self.param.ok_or_else(|| "trial needs a parameter".to_string())
    }
}

/// Residual of one trial; `None` when the configuration does not apply.
pub type Outcome = Result<Option<f64>, String>;

pub struct PropositionDef {
    pub id: &'static str,
    pub kind: StatementKind,
    pub group: u8,
    pub summary: &'static str,
    pub status: CheckStatus,
    /// Bound at the default tolerance.
    pub bound: f64,
    pub trials: usize,
    pub generate: fn(&mut ChaCha8Rng) -> TrialInput,
    pub evaluate: fn(&TrialInput) -> Outcome,
}

impl PropositionDef {
    pub fn effective_bound(&self) -> f64 {
        self.bound * tolerance::get() / tolerance::DEFAULT_TOLERANCE
    }
}

impl fmt::Debug for PropositionDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropositionDef").field("id", &self.id).field("kind", &self.kind).field("trials", &self.trials).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub id: String,
    pub kind: StatementKind,
    pub status: CheckStatus,
    pub pass: bool,
    pub trials: usize,
    pub applicable: usize,
    pub max_residual: f64,
    pub bound: f64,
    pub witness: Option<TrialInput>,
    /// First few trial errors, verbatim.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub pass: bool,
    pub reports: Vec<PropositionReport>,
}

impl SuiteReport {
    /// Aggregates reports; evidence checks only fail on errors or residuals
    /// above [`EVIDENCE_LIMIT`].
    pub fn new(seed: u64, reports: Vec<PropositionReport>) -> Self {
        let pass = reports.iter().all(|r| match r.status {
            CheckStatus::Hard => r.pass,
            CheckStatus::Evidence => r.errors.is_empty() && r.applicable > 0 && r.max_residual <= EVIDENCE_LIMIT,
        });
        SuiteReport { seed, pass, reports }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            let tag = match (r.pass, r.status) {
                (true, CheckStatus::Hard) => "pass",
                (true, CheckStatus::Evidence) => "evidence",
                (false, CheckStatus::Evidence) if r.max_residual <= EVIDENCE_LIMIT => "weak-evidence",
                (false, _) => "FAIL",
            };
            s.push_str(&format!(
                "{:<9} {:<40} trials {:>5} applicable {:>5} max {:.3e} bound {:.1e}\n",
                tag, r.id, r.trials, r.applicable, r.max_residual, r.bound
            ));
        }
        s.push_str(&format!("seed {} {}\n", self.seed, if self.pass { "all pass" } else { "FAILED" }));
        s
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

pub fn lookup(id: &str) -> Result<&'static PropositionDef, VerifyError> {
    MANIFEST.iter().find(|d| d.id == id).ok_or_else(|| VerifyError::UnknownProposition(id.to_string()))
}

/// Runs one check; `trials` overrides the manifest count.
pub fn run_proposition(id: &str, seed: u64, trials: Option<usize>) -> Result<PropositionReport, VerifyError> {
    let def = lookup(id)?;
    Ok(run_def(def, seed, trials.unwrap_or(def.trials)))
}

fn run_def(def: &PropositionDef, seed: u64, trials: usize) -> PropositionReport {
    let base = seed ^ fnv(def.id);
    let inputs: Vec<TrialInput> = (0..trials).map(|k| (def.generate)(&mut trial_rng(base, k as u64))).collect();
    let outcomes: Vec<Outcome> = inputs.par_iter().map(|i| (def.evaluate)(i)).collect();
    let bound = def.effective_bound();
    let mut applicable = 0;
    let mut worst: Option<(f64, usize)> = None;
    let mut errors = Vec::new();
    let mut failed = false;
    for (k, o) in outcomes.iter().enumerate() {
        match o {
            Ok(Some(r)) => {
                applicable += 1;
                let r = if r.is_nan() { f64::INFINITY } else { *r };
                if worst.map_or(true, |(w, _)| r > w) {
                    worst = Some((r, k));
                }
            }
            Ok(None) => {}
            Err(e) => {
                failed = true;
                if errors.len() < 5 {
                    let input = serde_json::to_string(&inputs[k]).unwrap_or_default();
                    errors.push(format!("trial {k}: {e}; input {input}"));
                }
            }
        }
    }
    let max_residual = worst.map_or(0.0, |w| w.0);
    PropositionReport {
        id: def.id.to_string(),
        kind: def.kind,
        status: def.status,
        pass: !failed && applicable > 0 && max_residual <= bound,
        trials,
        applicable,
        max_residual,
        bound,
        witness: worst.map(|(_, k)| inputs[k]),
        errors,
    }
}

/// Re-evaluates a witness.
pub fn replay(id: &str, witness: &TrialInput) -> Result<Outcome, VerifyError> {
    Ok((lookup(id)?.evaluate)(witness))
}

/// Every check in manifest order.
pub fn run_all(seed: u64) -> SuiteReport {
    run_all_with(seed, None)
}

/// [`run_all`] with the trial count of every randomized check replaced;
/// fixed single-configuration checks still run once.
pub fn run_all_with(seed: u64, trials: Option<usize>) -> SuiteReport {
    let count = |d: &PropositionDef| if d.trials == 1 { 1 } else { trials.unwrap_or(d.trials) };
    SuiteReport::new(seed, MANIFEST.par_iter().map(|d| run_def(d, seed, count(d))).collect())
}

// ---- generators ----

fn gen_triangle(rng: &mut ChaCha8Rng) -> TrialInput {
    TrialInput::of(&random_triangle(rng))
}

/// Triangle with a point in its enlarged bounding box, away from the
/// circumcircle.
fn gen_triangle_point(rng: &mut ChaCha8Rng) -> TrialInput {
    let t = random_triangle(rng);
    let circ = crate::centers::circumcircle(&t);
    loop {
        let p = random_point_near(rng, &t, 1.6);
        if (p.dist(circ.center) - circ.radius).abs() > 0.02 * circ.radius {
            return TrialInput::with_point(&t, p);
        }
    }
}

/// Triangle with a point away from the sidelines.
fn gen_triangle_point_off_sides(rng: &mut ChaCha8Rng) -> TrialInput {
    let t = random_triangle(rng);
    loop {
        let p = random_point_near(rng, &t, 1.6);
        if (0..3).all(|i| point_line_distance(p, &t.sideline(i)) > 0.02 * t.diameter()) {
            return TrialInput::with_point(&t, p);
        }
    }
}

fn gen_angle(rng: &mut ChaCha8Rng) -> TrialInput {
    let t = random_triangle(rng);
    TrialInput::with_param(&t, rng.gen_range(0.0..2.0 * PI))
}

/// Triangle with no angle within 5° of a right angle and none below 10°.
fn gen_not_right(rng: &mut ChaCha8Rng) -> TrialInput {
    loop {
        let t = random_triangle(rng);
        if (0..3).all(|i| {
            let a = t.angle(i).to_degrees();
            a >= 10.0 && (a - 90.0).abs() >= 5.0
        }) {
            return TrialInput::of(&t);
        }
    }
}

/// Triangle with every angle between 10° and 120°.
fn gen_moderate(rng: &mut ChaCha8Rng) -> TrialInput {
    loop {
        let t = random_triangle(rng);
        if (0..3).all(|i| (10.0..=120.0).contains(&t.angle(i).to_degrees())) {
            return TrialInput::of(&t);
        }
    }
}

fn gen_right(rng: &mut ChaCha8Rng) -> TrialInput {
    let a = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let b = a + Point2::new(1.0, 0.0).rotate(rng.gen_range(0.0..2.0 * PI)) * rng.gen_range(0.5..2.0);
    let m = a.midpoint(b);
    let r = a.dist(b) / 2.0;
    let phi = rng.gen_range(0.3..PI - 0.3);
    let dir = (b - a).normalized();
    let c = m + dir.rotate(phi) * r;
    TrialInput::of(&Triangle::new(a, b, c).expect("right triangle"))
}

fn gen_isosceles(rng: &mut ChaCha8Rng) -> TrialInput {
    let apex = rng.gen_range(0.3..2.5);
    let base = rng.gen_range(0.5..2.0);
    let t = Triangle::from_coords([[0.0, apex], [-base / 2.0, 0.0], [base / 2.0, 0.0]]).expect("isosceles");
    TrialInput::of(&t)
}

fn gen_fixed(_: &mut ChaCha8Rng) -> TrialInput {
    TrialInput::of(&Triangle::equilateral(1.0))
}

// ---- helpers ----

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn claims_max(rep: &ConcurrencyReport, prefix: &[&str]) -> Option<f64> {
    let mut any = false;
    let mut w: f64 = 0.0;
    for c in rep.claims.iter().filter(|c| prefix.iter().any(|p| c.name.starts_with(p))) {
        if c.applicable {
            any = true;
            w = w.max(c.residual);
        }
    }
    any.then_some(w)
}

fn six_residual(t: &Triangle, kind: TriadKind, p: Option<Point2>) -> Result<f64, String> {
    let tr = build_triad(t, kind, p).map_err(err)?;
    Ok(six_point_conic(&tr).map_err(err)?.residual6)
}

fn match_sets(a: &[Point2], b: &[Point2]) -> f64 {
    a.iter().map(|p| b.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

/// First sign change of `f` over `(r0, r1)` in `steps` steps, refined.
fn first_root(f: impl Fn(f64) -> f64, r0: f64, r1: f64, steps: usize) -> Option<f64> {
    let mut prev = (r0, f(r0));
    for k in 1..=steps {
        let r = r0 + (r1 - r0) * k as f64 / steps as f64;
        let v = f(r);
        if prev.1.is_finite() && v.is_finite() && prev.1.signum() != v.signum() {
            return bisect(&f, prev.0, r, 1e-15);
        }
        prev = (r, v);
    }
    None
}

/// `A = (−1/2, 0)`, `B = (1/2, 0)` with `C = (x, y)`.
fn unit_base(c: Point2) -> Result<Triangle, String> {
    Triangle::new(Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0), c).map_err(err)
}

// ---- V-ellipses ----

fn p2_yiu_vertices(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VEllipse, None).map_err(err)?;
    let mut w: f64 = 0.0;
    for k in 0..3 {
        let m = tr.member(k).map_err(err)?;
        w = w.max(m.center().dist(t.side_midpoint(k)) / t.diameter());
    }
    let v = triad_vertices(&tr).map_err(err)?;
    let ex = excircle_tangency_points(&t);
    w = w.max(match_sets(&v, &ex) / t.diameter()).max(match_sets(&ex, &v) / t.diameter());
    Ok(Some(w.max(six_point_conic(&tr).map_err(err)?.residual6)))
}

fn r2_yiu_conic(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VEllipse, None).map_err(err)?;
    let rep = six_point_conic(&tr).map_err(err)?;
    let eq = six_point_conic(&build_triad(&Triangle::equilateral(1.0), TriadKind::VEllipse, None).map_err(err)?).map_err(err)?;
    let circle_ok = rep.class != ConicClass::Circle && eq.class == ConicClass::Circle;
    Ok(Some(if circle_ok { rep.residual6 } else { f64::INFINITY }))
}

fn p2_excentral_tangency(i: &TrialInput) -> Outcome {
    let tr = build_triad(&i.triangle()?, TriadKind::VEllipse, None).map_err(err)?;
    Ok(claims_max(&concurrency_theorems(&tr).map_err(err)?, &["excentral-tangent"]))
}

fn p2_chords_x20(i: &TrialInput) -> Outcome {
    let tr = build_triad(&i.triangle()?, TriadKind::VEllipse, None).map_err(err)?;
    let rep = concurrency_theorems(&tr).map_err(err)?;
    if let Some(c) = rep.claims.iter().find(|c| c.name.ends_with("-exists")) {
        return Err(format!("{} failed", c.name));
    }
    Ok(claims_max(&rep, &["chord-"]))
}

fn p2_right_x20(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VEllipse, None).map_err(err)?;
    let x20 = classic_center(&t, CenterId::X20).map_err(err)?;
    let mut w: f64 = 0.0;
    for k in 0..3 {
        w = w.max(tr.member(k).map_err(err)?.focal_residual(x20).abs() / t.diameter());
    }
    Ok(Some(w))
}

/// Oriented determinants along a path of drivers.
fn path_dets(t: &Triangle, kind: RegionKind, pts: &[Point2]) -> Vec<f64> {
    let mut cs: Vec<_> = pts.iter().map(|p| classify_driver(t, kind, *p)).collect();
    orient_path(cs.iter_mut());
    cs.iter().map(|c| c.map_or(f64::NAN, |c| c.det)).collect()
}

/// Sweep of `C` along a ray from the midpoint of `AB` across the circle on
/// `AB` as diameter: the oriented determinant changes sign once, at the
/// circle. Residual: relative distance of the sign change from the circle.
fn p2_degenerate_iff_right(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let (a, b) = (t.vertex_a(), t.vertex_b());
    let m = a.midpoint(b);
    let r0 = a.dist(b) / 2.0;
    let phi = 0.6 + (PI - 1.2) * i.param()?.rem_euclid(2.0 * PI) / (2.0 * PI);
    let dir = (b - a).normalized().rotate(phi);
    let hi = (0.9 / phi.cos().abs()).min(1.6);
    let steps = 200;
    let s: Vec<f64> = (0..=steps).map(|k| 0.5 + (hi - 0.5) * k as f64 / steps as f64).collect();
    let pts: Vec<Point2> = s.iter().map(|s| m + dir * (s * r0)).collect();
    let det = path_dets(&t, RegionKind::VEllipseOverC, &pts);
    // the parabolic transition is a double zero; samples near it carry no sign
    let signed: Vec<usize> = (0..=steps).filter(|&k| det[k].abs() > 1e-9).collect();
    let flips: Vec<(usize, usize)> =
        signed.windows(2).filter(|w| det[w[0]].signum() != det[w[1]].signum()).map(|w| (w[0], w[1])).collect();
    let [(k, k2)] = flips[..] else {
        return Ok(Some(f64::INFINITY));
    };
    // refine inside the bracket, keeping the orientation of its left end
    let left = classify_driver(&t, RegionKind::VEllipseOverC, pts[k]).ok_or("sweep")?;
    let sign = if left.det.signum() == det[k].signum() { 1.0 } else { -1.0 };
    let f = |x: f64| {
        classify_driver(&t, RegionKind::VEllipseOverC, m + dir * (x * r0)).map_or(f64::NAN, |c| {
            let al: f64 = c.coefficients.iter().zip(&left.coefficients).map(|(a, b)| a * b).sum();
            c.det * al.signum() * sign
        })
    };
    let root = bisect(f, s[k], s[k2], 1e-15).ok_or("no bracket")?;
    Ok(Some((root - 1.0).abs()))
}

fn p2_x478_quartic(_: &TrialInput) -> Outcome {
    let s = sample_locus_x478(120).map_err(err)?;
    let w = s.iter().map(|x| x.implicit_residual).fold(0.0, f64::max);
    let near = sample_locus_x478_range(2, 1e-4).map_err(err)?;
    let end = near[0].center.dist(Point2::new(0.5, 1.0)).max(near[1].center.dist(Point2::new(-0.5, 1.0)));
    let top = x478_center(PI / 2.0).map_err(err)?.1;
    // the arc stays at or above y = 1
    let below = s.iter().map(|x| (1.0 - x.center.y).max(0.0)).fold(0.0, f64::max);
    Ok(Some(w.max(end * 1e-4).max(below).max((top.x).abs())))
}

/// (i) `C` on the circle on `AB` or on the perpendiculars at `A`, `B`:
/// degenerate. (ii) `C` on the degree-8 curve: parabola.
fn p2_degenerate_parabola_v(i: &TrialInput) -> Outcome {
    let th = 0.2 + (PI - 0.4) * i.param()?.rem_euclid(2.0 * PI) / (2.0 * PI);
    let det = |c: Point2| -> Result<f64, String> {
        let tr = build_triad(&unit_base(c)?, TriadKind::VEllipse, None).map_err(err)?;
        Ok(normalized_determinant(&six_point_conic(&tr).map_err(err)?.conic).abs())
    };
    let on_circle = det(Point2::new(0.5 * th.cos(), 0.5 * th.sin()))?;
    let on_tangent = det(Point2::new(0.5, 0.2 + th))?.max(det(Point2::new(-0.5, -0.3 - th))?);
    let u = Point2::new(th.cos(), th.sin());
    let f = |r: f64| {
        let c = u * r;
        let s = [c.dist(Point2::new(0.5, 0.0)), c.dist(Point2::new(-0.5, 0.0)), 1.0];
        eval_implicit(ImplicitCurve::ParabolaDeg8V, &EvalContext::Sides(s)).unwrap_or(f64::NAN)
    };
    let parab = match first_root(f, 0.51, 20.0, 4000) {
        Some(r) => {
            let tr = build_triad(&unit_base(u * r)?, TriadKind::VEllipse, None).map_err(err)?;
            relative_discriminant(&six_point_conic(&tr).map_err(err)?.conic).abs()
        }
        None => 0.0,
    };
    Ok(Some(on_circle.max(on_tangent).max(parab)))
}

fn p2_covertex_v(i: &TrialInput) -> Outcome {
    let th = 0.1 + (PI - 0.2) * i.param()?.rem_euclid(2.0 * PI) / (2.0 * PI);
    match covertex_driver_on_ray(CovertexCase::VEllipse, th, 0.02, 6.0) {
        Some(c) => Ok(Some(covertex_conic_check(CovertexCase::VEllipse, c).map_err(err)?.residual6)),
        None => Ok(None),
    }
}

// ---- P-ellipses ----

fn t3_six_point(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    six_residual(&t, TriadKind::PEllipse, Some(i.point()?)).map(Some)
}

fn p3_pstar(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let s = find_pstar(&t).map_err(err)?;
    let c = s.circle;
    if c.class != ConicClass::Circle {
        return Ok(Some(f64::INFINITY));
    }
    let spread = s.spread / t.diameter();
    Ok(Some((c.radial_spread / c.circumradius).max(c.circumcenter_offset / c.circumradius).max(spread).max(s.value)))
}

fn p3_anticevian(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let r = anticevian_x3_check(&t).map_err(err)?;
    let c = r.circle;
    if c.class != ConicClass::Circle {
        return Ok(Some(f64::INFINITY));
    }
    let x3p = check_appendix(AppendixBlock::X3primeCenter, &t, None).map_err(err)?.max_residual;
    // spread against 1e-6 R and the rest against 1e-8
    Ok(Some((c.radial_spread / c.circumradius * 1e-2).max(r.x4x6_residual).max(x3p).max(r.functional).max(c.circumcenter_offset / c.circumradius)))
}

/// `P` on the circumcircle: degenerate, and the oriented determinant changes
/// sign across the circle along the radius through `P`.
fn p3_degenerate_on_circumcircle(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let circ = crate::centers::circumcircle(&t);
    let th = i.param()?;
    let p = circ.point_at(th);
    if t.vertices().iter().any(|v| v.dist(p) < 0.05 * t.diameter()) {
        return Ok(None);
    }
    let on = classify_driver(&t, RegionKind::PEllipseOverP, p).ok_or("construction failed")?;
    if !on.class.is_degenerate() {
        return Ok(Some(f64::INFINITY));
    }
    let radial: Vec<Point2> = (0..=20).map(|k| circ.center + (p - circ.center) * (0.98 + 0.002 * k as f64)).collect();
    let det = path_dets(&t, RegionKind::PEllipseOverP, &radial);
    // other zero curves can pass close to the circle; compare the nearest samples
    if det[9].signum() == det[11].signum() {
        return Ok(Some(f64::INFINITY));
    }
    Ok(Some(on.det.abs()))
}

fn p3_ostar_arcs(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let l = sample_locus_ostar(&t, 120).map_err(err)?;
    let w = l.samples.iter().map(|s| s.implicit_residual).fold(0.0, f64::max);
    Ok(Some(w.max(l.midpoint_residual)))
}

fn c3_equilateral_ostar(_: &TrialInput) -> Outcome {
    let r = equilateral_ostar_locus_check().map_err(err)?;
    let (a, b) = (3f64.sqrt() / 2.0, 3f64.sqrt() / 6.0);
    let mut w: f64 = 0.0;
    for k in 0..3 {
        w = w.max((r.semi_axes[k].0 - a).abs()).max((r.semi_axes[k].1 - b).abs());
        w = w.max(r.center_offsets[k]).max(r.axis_misalignment[k]);
    }
    w = w.max(r.midpoint_residual).max((r.area_ratio - 3.0).abs());
    w = w.max(r.tangency[0].abs()).max(r.tangency[1].abs()).max(r.top_vertex_error);
    // endpoints are limits, approached linearly in the step
    w = w.max(r.endpoint_error * 1e-2);
    Ok(Some(w))
}

/// Equilateral region map: the inside holds degenerate cells (deltoid) and
/// both ellipse and hyperbola cells. Residual 0 when all are present.
/// Inside the equilateral, the map shows ellipse and hyperbola cells and a
/// degenerate boundary, seen as a determinant sign change between neighbors.
fn r3_equilateral_regions(_: &TrialInput) -> Outcome {
    let t = Triangle::equilateral(1.0);
    let g = region_map(&t, RegionKind::PEllipseOverP, BBox::around(&t, 0.0), 61, 61);
    let inside = |i: usize, j: usize| {
        let b = crate::geometry::cartesian_to_bary(&t, g.cell_center(i, j));
        b.u > 0.02 && b.v > 0.02 && b.w > 0.02
    };
    let mut seen = [false; 3];
    for j in 0..g.ny {
        for i in 0..g.nx {
            if !inside(i, j) {
                continue;
            }
            let (c, d) = (g.cells[j * g.nx + i], g.det[j * g.nx + i]);
            seen[0] |= c.is_degenerate();
            seen[1] |= c.is_ellipse();
            seen[2] |= c.is_hyperbola();
            if i + 1 < g.nx && inside(i + 1, j) {
                let e = g.det[j * g.nx + i + 1];
                seen[0] |= d.is_finite() && e.is_finite() && d.signum() != e.signum();
            }
        }
    }
    Ok(Some(seen.iter().filter(|s| !**s).count() as f64))
}

/// Hyperbolic `𝒴*` is never rectangular: residual `1e−6 / |trace|` of the
/// normalized quadratic part (at most 1 when the trace stays above 1e−6).
fn r3_never_rectangular(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::PEllipse, Some(i.point()?)).map_err(err)?;
    let c = six_point_conic(&tr).map_err(err)?.conic.to_cartesian();
    if relative_discriminant(&c) >= -1e-6 {
        return Ok(None);
    }
    let m = c.matrix();
    let q = (m[0][0] * m[0][0] + m[1][1] * m[1][1] + 2.0 * m[0][1] * m[0][1]).sqrt();
    Ok(Some(1e-6 / ((m[0][0] + m[1][1]).abs() / q) * 1e-8))
}

fn p3_covertex_equilateral(i: &TrialInput) -> Outcome {
    let th = i.param()?;
    if (th.rem_euclid(2.0 * PI / 3.0) - PI / 6.0).abs() < 0.05 || (th.rem_euclid(PI / 3.0)).abs() < 0.05 {
        return Ok(None);
    }
    match covertex_driver_on_ray(CovertexCase::EquilateralP, th, 0.01, 3.0) {
        Some(p) => {
            let r = covertex_conic_check(CovertexCase::EquilateralP, p).map_err(err)?;
            Ok(Some((r.residual6 * 1e-1).max(r.incircle_gap.unwrap_or(f64::INFINITY) * 1e-1)))
        }
        None => Ok(None),
    }
}

// ---- V-hyperbolas ----

/// `A1 = [0, a + λ, a − λ]`, `A2 = [0, a − λ, a + λ]` with `λ = |AB| − |AC|`.
fn r4_vertex_barycentrics(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VHyperbola, None).map_err(err)?;
    let v = triad_vertices(&tr).map_err(err)?;
    let [a, b, c] = t.sides();
    let side = [a, b, c];
    let lam = [c - b, a - c, b - a];
    let mut w: f64 = 0.0;
    for k in 0..3 {
        let (s, l) = (side[k], lam[k]);
        let mut p = [0.0; 3];
        let mut q = [0.0; 3];
        p[(k + 1) % 3] = s + l;
        p[(k + 2) % 3] = s - l;
        q[(k + 1) % 3] = s - l;
        q[(k + 2) % 3] = s + l;
        let pts = [BaryCoords::from_array(p), BaryCoords::from_array(q)]
            .map(|b| bary_to_cartesian(&t, b).map_err(err));
        let pts = [pts[0].clone()?, pts[1].clone()?];
        w = w.max(match_sets(&pts, &v[2 * k..2 * k + 2]) / t.diameter());
    }
    Ok(Some(w))
}

fn c4_extouch_intouch(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VHyperbola, None).map_err(err)?;
    let v = triad_vertices(&tr).map_err(err)?;
    let (intouch, extouch) = intouch_extouch(&t);
    let firsts = [v[0], v[2], v[4]];
    let seconds = [v[1], v[3], v[5]];
    let d = t.diameter();
    let direct = match_sets(&firsts, &extouch).max(match_sets(&seconds, &intouch));
    // members are numbered by their first vertex; either labeling works if consistent
    let swapped = match_sets(&firsts, &intouch).max(match_sets(&seconds, &extouch));
    Ok(Some(direct.min(swapped) / d))
}

fn c4_privalov(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VHyperbola, None).map_err(err)?;
    let v = triad_vertices(&tr).map_err(err)?;
    let [a, b, c] = t.sides();
    let (k1, k2, k3, k4) = (a - b - c, a + b - c, a - b + c, a * a + b * b + c * c);
    let mut w: f64 = 0.0;
    for q in v {
        let bc = crate::geometry::cartesian_to_bary(&t, q);
        let (x, y, z) = (bc.u, bc.v, bc.w);
        let terms = [
            k1 * k2 * k3 * x * x,
            k1 * k2 * k3 * y * y,
            k1 * k2 * k3 * z * z,
            2.0 * k2 * (k4 - 2.0 * a * b) * x * y,
            2.0 * k3 * (k4 - 2.0 * a * c) * x * z,
            -2.0 * k1 * (k4 - 2.0 * b * c) * y * z,
        ];
        let s: f64 = terms.iter().sum();
        let m = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        w = w.max(s.abs() / m);
    }
    let x5452 = check_appendix(AppendixBlock::X5452Coordinate, &t, None).map_err(err)?.max_residual;
    Ok(Some(w.max(x5452)))
}

/// Isosceles: one degenerate member, and the six-point conic is tangent to
/// the base at its midpoint.
fn r4_isosceles(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VHyperbola, None).map_err(err)?;
    let k = match tr.degenerate_index() {
        Some(k) => k,
        None => return Ok(Some(f64::INFINITY)),
    };
    let rep = six_point_conic(&tr).map_err(err)?;
    let base = t.sideline(k);
    let tang = crate::conics::line_tangency_discriminant(&rep.conic, &base).map_err(err)?.abs();
    let on = crate::conics::residual(&rep.conic, t.side_midpoint(k));
    Ok(Some(tang.max(on).max(rep.residual6)))
}

/// `C` on the sextic (frame `A = (−1, 0)`, `B = (1, 0)`) has half-tangent sum 2.
fn p4_halftangent(i: &TrialInput) -> Outcome {
    let th = 0.05 + (PI - 0.1) * i.param()?.rem_euclid(2.0 * PI) / (2.0 * PI);
    let u = Point2::new(th.cos(), th.sin());
    let f = |r: f64| eval_implicit(ImplicitCurve::HalftangentSextic, &EvalContext::Plane(u * r)).unwrap_or(f64::NAN);
    match first_root(f, 0.01, 10.0, 2000) {
        Some(r) => {
            let t = Triangle::new(Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), u * r).map_err(err)?;
            Ok(Some((half_tangent_sum(&t) - 2.0).abs()))
        }
        None => Ok(None),
    }
}

fn p4_soddy(i: &TrialInput) -> Outcome {
    let tr = build_triad(&i.triangle()?, TriadKind::VHyperbola, None).map_err(err)?;
    Ok(claims_max(&concurrency_theorems(&tr).map_err(err)?, &["through-x17", "triple-point-x17"]))
}

fn p4_through_ellipse_pairs(i: &TrialInput) -> Outcome {
    let tr = build_triad(&i.triangle()?, TriadKind::VHyperbola, None).map_err(err)?;
    Ok(claims_max(&concurrency_theorems(&tr).map_err(err)?, &["through-ellipse-pair"]))
}

fn p4_nagel(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::VHyperbola, None).map_err(err)?;
    // lines through the vertex pairs of each member
    let v = triad_vertices(&tr).map_err(err)?;
    let x8 = classic_center(&t, CenterId::X8).map_err(err)?;
    let [a, b, c] = t.sides();
    let x8_bary = bary_to_cartesian(&t, BaryCoords::new(b + c - a, c + a - b, a + b - c)).map_err(err)?;
    let mut w = x8.dist(x8_bary) / t.diameter();
    // A1 is on BC, so the cevian of the Nagel point is A A1 with A1 the extouch point
    for k in 0..3 {
        let l = crate::geometry::line_through(t.vertex(k), v[2 * k]).map_err(err)?;
        let l2 = crate::geometry::line_through(t.vertex(k), v[2 * k + 1]).map_err(err)?;
        let d = point_line_distance(x8, &l).min(point_line_distance(x8, &l2));
        w = w.max(d / t.diameter());
    }
    Ok(Some(w))
}

/// Triangle vertices and the twelve V-vertices all lie on the sidelines.
fn r4_fifteen_point_cubic(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let mut pts: Vec<Point2> = t.vertices().to_vec();
    for kind in [TriadKind::VEllipse, TriadKind::VHyperbola] {
        pts.extend(triad_vertices(&build_triad(&t, kind, None).map_err(err)?).map_err(err)?);
    }
    let w = pts
        .iter()
        .map(|p| (0..3).map(|k| point_line_distance(*p, &t.sideline(k))).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    Ok(Some(w / t.diameter()))
}

/// At `C` on the sextic the outer Soddy circle is a line tangent to the
/// three circles on the sides as diameters.
fn p4_soddy_line(i: &TrialInput) -> Outcome {
    let th = 0.05 + (PI - 0.1) * i.param()?.rem_euclid(2.0 * PI) / (2.0 * PI);
    let u = Point2::new(th.cos(), th.sin());
    let f = |r: f64| eval_implicit(ImplicitCurve::HalftangentSextic, &EvalContext::Plane(u * r)).unwrap_or(f64::NAN);
    let Some(r) = first_root(f, 0.01, 10.0, 2000) else {
        return Ok(None);
    };
    let t = Triangle::new(Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), u * r).map_err(err)?;
    let l = soddy_line(&t, &kissing_circles(&t));
    let mut w: f64 = 0.0;
    for k in 0..3 {
        let d = point_line_distance(t.side_midpoint(k), &l);
        w = w.max((d - t.side(k) / 2.0).abs() / t.diameter());
    }
    for c in kissing_circles(&t) {
        w = w.max((point_line_distance(c.center, &l) - c.radius).abs() / t.diameter());
    }
    Ok(Some(w))
}

// ---- P-hyperbolas ----

fn p5_second_point(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::PHyperbola, Some(i.point()?)).map_err(err)?;
    let q = second_common_point(&tr).map_err(err)?;
    let mut w: f64 = 0.0;
    for k in 0..3 {
        w = w.max(tr.member(k).map_err(err)?.focal_residual(q).abs() / t.diameter());
    }
    Ok(Some(w))
}

/// Six-point conic of P-hyperbolas; `P` on a sideline extension makes it
/// degenerate. The zero of the determinant there is of even order, so it is
/// located by its quadratic approach from both sides rather than by a sign
/// change.
fn p5_six_point(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let p = i.point()?;
    let w = six_residual(&t, TriadKind::PHyperbola, Some(p))?;
    let k = (fnv(&format!("{:?}", p)) % 3) as usize;
    let (e1, e2) = t.side_endpoints(k);
    // on the extension beyond either endpoint
    let f = p.x - p.x.floor();
    let s = if f < 0.5 { -0.2 - 1.2 * f } else { 1.2 + 1.2 * (f - 0.5) };
    let foot = e1.lerp(e2, s);
    let n = t.sideline(k).direction().perp().normalized() * t.diameter();
    let det = |h: f64| classify_driver(&t, RegionKind::PHyperbolaOverP, foot + n * h).map(|c| c.det.abs()).ok_or("construction failed");
    let mut near: f64 = 0.0;
    for side in [1.0, -1.0] {
        let (d1, d2) = (det(side * 1e-5)?, det(side * 1e-4)?);
        if d1 > 0.05 * d2 {
            return Ok(Some(f64::INFINITY));
        }
        near = near.max(d1);
    }
    Ok(Some(w.max(near)))
}

fn p5_equal_areas(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let tr = build_triad(&t, TriadKind::PHyperbola, Some(i.point()?)).map_err(err)?;
    let (a1, a2) = equal_area_check(&tr).map_err(err)?;
    let rel = (a1 - a2).abs() / a1.max(a2);
    let gap = gap_identity_residual(&tr).map_err(err)?.abs() / t.diameter();
    Ok(Some(rel.max(gap * 1e-1)))
}

fn p5_circle_pair(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let (p, q) = find_phyp_circle_points(&t).map_err(err)?;
    let mut w: f64 = 0.0;
    for s in [&p, &q] {
        if s.circle.class != ConicClass::Circle {
            return Ok(Some(f64::INFINITY));
        }
        w = w.max(s.value).max(s.circle.radial_spread / s.circle.circumradius).max(s.circle.circumcenter_offset / s.circle.circumradius);
    }
    // Q* lies on the triad through P*
    let tr = build_triad(&t, TriadKind::PHyperbola, Some(p.point)).map_err(err)?;
    for k in 0..3 {
        w = w.max(tr.member(k).map_err(err)?.focal_residual(q.point).abs() / t.diameter());
    }
    Ok(Some(w))
}

fn j5_x55(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let r = x55_conjecture_check(&t).map_err(err)?;
    Ok(Some(r.circle_residual.max(r.concentric_residual).max(r.x7_residual * 10.0)))
}

fn p5_through_pellipse_points(i: &TrialInput) -> Outcome {
    let tr = build_triad(&i.triangle()?, TriadKind::PHyperbola, Some(i.point()?)).map_err(err)?;
    Ok(claims_max(&concurrency_theorems(&tr).map_err(err)?, &["through-ellipse-point"]))
}

/// `P` on the parabola condition: the six-point conic is a parabola.
fn p5_parabola(i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let g = t.centroid();
    let u = Point2::new(1.0, 0.0).rotate(i.param()?);
    let f = |r: f64| {
        eval_implicit(ImplicitCurve::PhypParabolaCondition, &EvalContext::TrianglePoint(t, g + u * (r * t.diameter())))
            .unwrap_or(f64::NAN)
    };
    let Some(r) = first_root(f, 0.01, 3.0, 3000) else {
        return Ok(None);
    };
    let p = g + u * (r * t.diameter());
    if (0..3).any(|k| point_line_distance(p, &t.sideline(k)) < 0.01 * t.diameter()) {
        return Ok(None);
    }
    let tr = build_triad(&t, TriadKind::PHyperbola, Some(p)).map_err(err)?;
    let rep = six_point_conic(&tr).map_err(err)?;
    Ok(Some(relative_discriminant(&rep.conic).abs()))
}

// ---- appendix ----

fn appendix_check(block: AppendixBlock, i: &TrialInput) -> Outcome {
    let t = i.triangle()?;
    let r = check_appendix(block, &t, i.point).map_err(err)?;
    Ok(Some(r.max_residual / r.bound * 1e-6))
}

fn a1(i: &TrialInput) -> Outcome {
    appendix_check(AppendixBlock::AEllipse, i)
}
fn a2(i: &TrialInput) -> Outcome {
    appendix_check(AppendixBlock::MajorVertices, i)
}
fn a3(i: &TrialInput) -> Outcome {
    appendix_check(AppendixBlock::X3primeCenter, i)
}
fn a4(i: &TrialInput) -> Outcome {
    appendix_check(AppendixBlock::PhypMember, i)
}
fn a5(i: &TrialInput) -> Outcome {
    appendix_check(AppendixBlock::PstarConic, i)
}
fn a6(i: &TrialInput) -> Outcome {
    appendix_check(AppendixBlock::X5452Coordinate, i)
}

fn gen_appendix_point(rng: &mut ChaCha8Rng) -> TrialInput {
    gen_triangle_point_off_sides(rng)
}

fn gen_appendix_plain(rng: &mut ChaCha8Rng) -> TrialInput {
    gen_not_right(rng)
}

macro_rules! def {
    ($id:expr, $kind:ident, $sec:expr, $sum:expr, $bound:expr, $trials:expr, $gen:expr, $eval:expr) => {
        PropositionDef {
            id: $id,
            kind: StatementKind::$kind,
            group: $sec,
            summary: $sum,
            status: CheckStatus::Hard,
            bound: $bound,
            trials: $trials,
            generate: $gen,
            evaluate: $eval,
        }
    };
}

/// Every statement, in document order, then the appendix blocks.
pub static MANIFEST: &[PropositionDef] = &[
    def!("P2.1-yiu-vertices", Proposition, 2, "V-ellipses centered at side midpoints; vertices at excircle tangency points; six-point conic", 1e-8, 1000, gen_triangle, p2_yiu_vertices),
    def!("R2.1-yiu-conic", Remark, 2, "conic through the six excircle tangency points; a circle only for the equilateral", 1e-8, 500, gen_triangle, r2_yiu_conic),
    def!("P2.2-excentral-tangency", Proposition, 2, "each V-ellipse tangent at its vertex to a side of the excentral triangle", 1e-8, 500, gen_triangle, p2_excentral_tangency),
    def!("P2.3-chords-excenters-x20", Proposition, 2, "chords A'A'', B'B'', C'C'' pass through the excenters and concur at X20", 1e-8, 500, gen_triangle, p2_chords_x20),
    def!("P2.4-right-through-x20", Proposition, 2, "right triangle: V-ellipses pass through X20", 1e-8, 500, gen_right, p2_right_x20),
    def!("P2.5-degenerate-iff-right", Proposition, 2, "Yiu conic degenerate exactly at right triangles (single sign change at the circle on AB)", 1e-6, 100, gen_angle, p2_degenerate_iff_right),
    def!("P2.6-x478-quartic", Proposition, 2, "degenerate-center locus on the quartic, arc above y = 1 ending at (±1/2, 1)", 1e-8, 1, gen_fixed, p2_x478_quartic),
    def!("P2.7-degenerate-parabola-V", Proposition, 2, "degenerate on the circle and tangents at A, B; parabola on the degree-8 curve", 1e-7, 100, gen_angle, p2_degenerate_parabola_v),
    def!("P2.8-covertex-locus-V", Proposition, 2, "C on the co-vertex locus: six co-vertices on a conic", 1e-7, 60, gen_angle, p2_covertex_v),
    def!("T3.1-pellipse-six-point", Theorem, 3, "six vertices of P-ellipses on a conic", 1e-8, 1000, gen_triangle_point, t3_six_point),
    def!("P3.1-pstar-circle", Proposition, 3, "unique P* making the six-point conic a circle, concentric with the circumcircle", 1e-8, 40, gen_triangle, p3_pstar),
    def!("P3.2-anticevian-x3", Proposition, 3, "X3 is the P* of its X3-anticevian; center on the X4X6 line", 1e-8, 200, gen_not_right, p3_anticevian),
    def!("P3.3-degenerate-on-circumcircle", Proposition, 3, "P on the circumcircle: degenerate, with a sign change across it", 1e-8, 1000, gen_angle, p3_degenerate_on_circumcircle),
    def!("P3.4-ostar-arcs", Proposition, 3, "O* over the circumcircle traces three ellipse arcs through the side midpoints", 1e-8, 3, gen_triangle, p3_ostar_arcs),
    def!("C3.1-equilateral-ostar", Corollary, 3, "equilateral: congruent arc ellipses with semi-axes sqrt3/2, sqrt3/6 centered on the vertices", 1e-8, 1, gen_fixed, c3_equilateral_ostar),
    def!("R3.1-equilateral-regions", Remark, 3, "equilateral region map: degenerate deltoid between ellipse and hyperbola regions", 0.0, 1, gen_fixed, r3_equilateral_regions),
    def!("R3.2-never-rectangular", Remark, 3, "a hyperbolic six-point conic is never rectangular", 1e-8, 1000, gen_triangle_point, r3_never_rectangular),
    def!("P3.5-covertex-equilateral-P", Proposition, 3, "equilateral: co-vertex locus condition; the conic center lies on the incircle", 1e-8, 60, gen_angle, p3_covertex_equilateral),
    def!("R4.1-vhyp-vertex-barycentrics", Remark, 4, "V-hyperbola vertices [0, a±λ, a∓λ]", 1e-10, 500, gen_triangle, r4_vertex_barycentrics),
    def!("C4.1-extouch-intouch", Corollary, 4, "V-hyperbola vertex triangles are the extouch and intouch triangles", 1e-10, 500, gen_triangle, c4_extouch_intouch),
    def!("C4.2-privalov-conic", Corollary, 4, "six V-hyperbola vertices on the Privalov conic centered at X5452", 1e-8, 500, gen_triangle, c4_privalov),
    def!("R4.2-isosceles-degenerate", Remark, 4, "isosceles: degenerate member and Privalov conic tangent to the base at its midpoint", 1e-8, 100, gen_isosceles, r4_isosceles),
    def!("P4.1-halftangent-sextic", Proposition, 4, "C on the sextic: half-tangent sum 2", 1e-8, 200, gen_angle, p4_halftangent),
    def!("P4.2-soddy-x175-x176", Proposition, 4, "V-hyperbolas meet at the Soddy centers X175, X176", 1e-8, 500, gen_triangle, p4_soddy),
    def!("P4.3-through-ellipse-pairs", Proposition, 4, "each V-hyperbola through the intersections of the other two V-ellipses", 1e-8, 500, gen_triangle, p4_through_ellipse_pairs),
    def!("P4.4-chords-nagel", Proposition, 4, "lines A1A2, B1B2, C1C2 through the vertices concur at X8", 1e-8, 500, gen_triangle, p4_nagel),
    def!("R4.3-fifteen-point-cubic", Remark, 4, "union of sidelines through 15 points", 1e-12, 500, gen_triangle, r4_fifteen_point_cubic),
    def!("P4.5-soddy-line-diameter-circles", Proposition, 4, "Soddy line tangent to the circles on the sides as diameters", 1e-7, 200, gen_angle, p4_soddy_line),
    def!("P5.1-second-common-point", Proposition, 5, "P-hyperbolas meet at a second real point P'", 1e-8, 500, gen_triangle_point_off_sides, p5_second_point),
    def!("P5.2-phyp-six-point", Proposition, 5, "six vertices of P-hyperbolas on a conic; degenerate on the sideline extensions", 1e-8, 1000, gen_triangle_point_off_sides, p5_six_point),
    def!("P5.3-equal-areas", Proposition, 5, "A1B1C1 and A2B2C2 have equal areas; B1B2 + C1C2 = A1A2", 1e-9, 1000, gen_triangle_point_off_sides, p5_equal_areas),
    def!("P5.4-pstar-qstar-circle", Proposition, 5, "two points P*, Q* making the P-hyperbola six-point conic a circle", 1e-8, 30, gen_moderate, p5_circle_pair),
    PropositionDef {
        id: "J5.1-x55-conjecture",
        kind: StatementKind::Conjecture,
        group: 5,
        summary: "X55-reflection triangle: six P-hyperbola vertices on a circle centered at X7",
        status: CheckStatus::Evidence,
        bound: 1e-6,
        trials: 500,
        generate: gen_triangle,
        evaluate: j5_x55,
    },
    def!("P5.5-through-pellipse-points", Proposition, 5, "each P-hyperbola through the non-P intersection of the other two P-ellipses", 1e-8, 500, gen_triangle_point_off_sides, p5_through_pellipse_points),
    def!("P5.6-phyp-parabola", Proposition, 5, "P on the parabola condition: six-point conic is a parabola", 1e-7, 100, gen_angle, p5_parabola),
    def!("A1-a-ellipse", Appendix, 6, "A-ellipse barycentric equation", 1e-6, 10, gen_appendix_plain, a1),
    def!("A2-major-vertices", Appendix, 6, "major vertices of the A-ellipse", 1e-6, 10, gen_appendix_plain, a2),
    def!("A3-x3prime-center", Appendix, 6, "center of the anticevian six-point circle", 1e-6, 10, gen_appendix_plain, a3),
    def!("A4-phyp-member", Appendix, 6, "P-hyperbola member equation", 1e-6, 10, gen_appendix_point, a4),
    def!("A5-pstar-conic", Appendix, 6, "P-hyperbola six-point conic equation", 1e-6, 10, gen_appendix_point, a5),
    def!("A6-x5452-coordinate", Appendix, 6, "center of the V-hyperbola six-point conic", 1e-6, 10, gen_appendix_plain, a6),
];

/// Statements per kind: propositions, theorems, corollaries, remarks,
/// conjectures, appendix blocks.
pub const MANIFEST_COUNTS: [usize; 6] = [24, 1, 3, 6, 1, 6];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = MANIFEST.iter().map(|d| d.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), MANIFEST.len());
    }

    #[test]
    fn manifest_counts_match() {
        let kinds = [
            StatementKind::Proposition,
            StatementKind::Theorem,
            StatementKind::Corollary,
            StatementKind::Remark,
            StatementKind::Conjecture,
            StatementKind::Appendix,
        ];
        for (k, n) in kinds.iter().zip(MANIFEST_COUNTS) {
            assert_eq!(MANIFEST.iter().filter(|d| d.kind == *k).count(), n, "{k:?}");
        }
    }

    #[test]
    fn unknown_id_is_reported() {
        assert!(matches!(run_proposition("P9.9", 1, None), Err(VerifyError::UnknownProposition(_))));
    }

    #[test]
    fn fnv_is_stable() {
        assert_eq!(fnv(""), 0xcbf29ce484222325);
        assert_eq!(fnv("a"), 0xaf63dc4c8601ec8c);
    }
}
