//! Long barycentric polynomials stored as term lists, and geometric checks
//! that evaluate them on constructed objects.
//!
//! Each `data/appendix/<name>.json` file holds
//! `{"name", "source", "variables": [...], "components": {key: [[coeff, e1, e2, ...], ...]}}`
//! where `source` is the expression as transcribed and every component is
//! its expansion (rational blocks are split into numerator and denominator).
//! `tools/gen_appendix.py` regenerates them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::centers::{anticevian_triangle, center_barycentrics, classic_center, CenterId};
use crate::conics::{center, FocalConic};
use crate::geometry::{bary_to_cartesian, cartesian_to_bary, BaryCoords, Point2, Triangle};
use crate::loci::circle_check;
use crate::triads::{build_triad, six_point_conic, triad_vertices, TriadKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppendixError {
    #[error("unknown appendix block {0:?}")]
    UnknownBlock(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("bad appendix data: {0}")]
    Data(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AppendixBlock {
    AEllipse,
    MajorVertices,
    X3primeCenter,
    PhypMember,
    PstarConic,
    X5452Coordinate,
}

impl AppendixBlock {
    pub const ALL: [AppendixBlock; 6] = [
        AppendixBlock::AEllipse,
        AppendixBlock::MajorVertices,
        AppendixBlock::X3primeCenter,
        AppendixBlock::PhypMember,
        AppendixBlock::PstarConic,
        AppendixBlock::X5452Coordinate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AppendixBlock::AEllipse => "a_ellipse",
            AppendixBlock::MajorVertices => "major_vertices",
            AppendixBlock::X3primeCenter => "x3prime_center",
            AppendixBlock::PhypMember => "phyp_member",
            AppendixBlock::PstarConic => "pstar_conic",
            AppendixBlock::X5452Coordinate => "x5452_coordinate",
        }
    }

    /// Raw JSON contents of the data file.
    pub fn data(&self) -> &'static str {
        match self {
            AppendixBlock::AEllipse => include_str!("../data/appendix/a_ellipse.json"),
            AppendixBlock::MajorVertices => include_str!("../data/appendix/major_vertices.json"),
            AppendixBlock::X3primeCenter => include_str!("../data/appendix/x3prime_center.json"),
            AppendixBlock::PhypMember => include_str!("../data/appendix/phyp_member.json"),
            AppendixBlock::PstarConic => include_str!("../data/appendix/pstar_conic.json"),
            AppendixBlock::X5452Coordinate => include_str!("../data/appendix/x5452_coordinate.json"),
        }
    }

    pub fn load(&self) -> Result<AppendixPolynomial, AppendixError> {
        let p: AppendixPolynomial = serde_json::from_str(self.data()).map_err(|e| AppendixError::Data(e.to_string()))?;
        if p.name != *self {
            return Err(AppendixError::Data(format!("{} holds {}", self, p.name)));
        }
        for (key, terms) in &p.components {
            if let Some(bad) = terms.iter().find(|row| row.len() != p.variables.len() + 1) {
                return Err(AppendixError::Data(format!("{key}: row of length {}", bad.len())));
            }
        }
        Ok(p)
    }
}

impl fmt::Display for AppendixBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AppendixBlock {
    type Err = AppendixError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase().replace('-', "_");
        AppendixBlock::ALL
            .into_iter()
            .find(|b| b.as_str() == s || (s == "x3prime" && *b == AppendixBlock::X3primeCenter) || (s == "x5452" && *b == AppendixBlock::X5452Coordinate))
            .ok_or(AppendixError::UnknownBlock(s))
    }
}

/// Value of a polynomial together with the largest term magnitude, the
/// natural scale for its residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    pub value: f64,
    pub max_term: f64,
}

impl Evaluated {
    pub fn relative(&self) -> f64 {
        if self.max_term == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.max_term
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppendixPolynomial {
    pub name: AppendixBlock,
    pub source: String,
    pub variables: Vec<String>,
    /// Rows of `[coefficient, exponent per variable...]`.
    pub components: BTreeMap<String, Vec<Vec<f64>>>,
}

impl AppendixPolynomial {
    pub fn component(&self, key: &str) -> Result<&[Vec<f64>], AppendixError> {
        self.components.get(key).map(|v| v.as_slice()).ok_or_else(|| AppendixError::Data(format!("{}: no component {key}", self.name)))
    }

    /// Evaluates a component with variables bound by name.
    pub fn eval(&self, key: &str, env: &[(&str, f64)]) -> Result<Evaluated, AppendixError> {
        let values = self
            .variables
            .iter()
            .map(|v| {
                env.iter().find(|(n, _)| n == v).map(|e| e.1).ok_or_else(|| AppendixError::Data(format!("{}: unbound variable {v}", self.name)))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        Ok(eval_terms(self.component(key)?, &values))
    }
}

pub fn eval_terms(terms: &[Vec<f64>], values: &[f64]) -> Evaluated {
    let mut value = 0.0;
    let mut max_term: f64 = 0.0;
    for row in terms {
        let term = row[1..].iter().zip(values).fold(row[0], |acc, (&e, &v)| acc * v.powi(e as i32));
        value += term;
        max_term = max_term.max(term.abs());
    }
    Evaluated { value, max_term }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub name: AppendixBlock,
    pub samples: usize,
    pub max_residual: f64,
    pub bound: f64,
}

impl AppendixReport {
    pub fn pass(&self) -> bool {
        self.max_residual <= self.bound
    }
}

fn failed(e: impl fmt::Display) -> AppendixError {
    AppendixError::ConstructionFailed(e.to_string())
}

fn sides_env(t: &Triangle) -> [(&'static str, f64); 3] {
    let [a, b, c] = t.sides();
    [("a", a), ("b", b), ("c", c)]
}

/// Ellipse with foci on `B′C′` of the X3-anticevian, through X3.
pub fn a_ellipse(t: &Triangle) -> Result<FocalConic, AppendixError> {
    let w = center_barycentrics(t, CenterId::X3).ok_or_else(|| failed("X3"))?;
    let anti = anticevian_triangle(t, w).map_err(failed)?;
    let x3 = classic_center(t, CenterId::X3).map_err(failed)?;
    let (f1, f2) = (anti.vertex_b(), anti.vertex_c());
    FocalConic::ellipse(f1, f2, x3.dist(f1) + x3.dist(f2)).map_err(failed)
}

fn normalized(b: BaryCoords) -> [f64; 3] {
    let s = b.u.abs() + b.v.abs() + b.w.abs();
    [b.u / s, b.v / s, b.w / s]
}

fn with_point<'a>(env: &[(&'a str, f64)], names: [&'a str; 3], b: [f64; 3]) -> Vec<(&'a str, f64)> {
    let mut e = env.to_vec();
    e.extend(names.into_iter().zip(b));
    e
}

/// Evaluates one appendix block against its geometric construction on `t`.
/// `extra` is the driver point of the P-hyperbola blocks (default: the
/// centroid nudged off the medians); for `x5452_coordinate` without `extra`
/// the V-hyperbola triad is used.
pub fn check_appendix(name: AppendixBlock, t: &Triangle, extra: Option<Point2>) -> Result<AppendixReport, AppendixError> {
    let poly = name.load()?;
    let sides = sides_env(t);
    let driver = extra.unwrap_or_else(|| t.centroid() + Point2::new(0.071, 0.043) * t.diameter());
    let lambdas = |p: Point2| {
        let [pa, pb, pc] = t.vertices().map(|v| v.dist(p));
        [("La", pb - pc), ("Lb", pc - pa), ("Lc", pa - pb)]
    };
    let (samples, max_residual, bound) = match name {
        AppendixBlock::AEllipse => {
            let e = a_ellipse(t)?;
            let mut worst: f64 = 0.0;
            for k in 0..12 {
                let q = e.point_at(std::f64::consts::TAU * k as f64 / 12.0 + 0.1, 1.0);
                let env = with_point(&sides, ["x", "y", "z"], normalized(cartesian_to_bary(t, q)));
                worst = worst.max(poly.eval("equation", &env)?.relative());
            }
            (12, worst, 1e-6)
        }
        AppendixBlock::MajorVertices => {
            let e = a_ellipse(t)?;
            let (v1, v2) = e.vertices();
            let targets = [v1, v2].map(|v| cartesian_to_bary(t, v));
            let area2 = 2.0 * t.area();
            let [a, b, c] = t.sides();
            let rad = a.powi(6) - 3.0 * a * a * b.powi(4) + 2.0 * b.powi(6) + 6.0 * a * a * b * b * c * c - 2.0 * b.powi(4) * c * c
                - 3.0 * a * a * c.powi(4)
                - 2.0 * b * b * c.powi(4)
                + 2.0 * c.powi(6);
            if rad < 0.0 {
                return Err(failed("negative radicand for rt"));
            }
            let mut worst: f64 = 0.0;
            for pm in [1.0, -1.0] {
                let mut env = sides.to_vec();
                env.extend([("S", area2), ("rt", rad.sqrt()), ("pm", pm)]);
                let u = poly.eval("u_numerator", &env)?.value / poly.eval("u_denominator", &env)?.value;
                let got = BaryCoords::new(u, poly.eval("v", &env)?.value, poly.eval("w", &env)?.value);
                let d = targets.iter().map(|&tb| tb.projective_distance(got)).fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
            (2, worst, 1e-7)
        }
        AppendixBlock::X3primeCenter => {
            let w = center_barycentrics(t, CenterId::X3).ok_or_else(|| failed("X3"))?;
            let anti = anticevian_triangle(t, w).map_err(failed)?;
            let x3 = classic_center(t, CenterId::X3).map_err(failed)?;
            let tr = build_triad(&anti, TriadKind::PEllipse, Some(x3)).map_err(failed)?;
            let circle = circle_check(&tr).map_err(failed)?;
            let [a, b, c] = t.sides();
            let f = |a: f64, b: f64, c: f64| poly.eval("f", &[("a", a), ("b", b), ("c", c)]).map(|e| e.value);
            let p = bary_to_cartesian(t, BaryCoords::new(f(a, b, c)?, f(b, c, a)?, f(c, a, b)?)).map_err(failed)?;
            (1, p.dist(circle.center) / anti.diameter(), 1e-7)
        }
        AppendixBlock::PhypMember => {
            let tr = build_triad(t, TriadKind::PHyperbola, Some(driver)).map_err(failed)?;
            let h = tr.member(0).map_err(failed)?;
            let (v1, v2) = h.vertices();
            let mut pts = vec![driver, v1, v2];
            for k in 0..12 {
                let s = -1.5 + 3.0 * k as f64 / 11.0;
                pts.push(h.point_at(s, if k % 2 == 0 { 1.0 } else { -1.0 }));
            }
            let pb = normalized(cartesian_to_bary(t, driver));
            let mut env = with_point(&sides, ["p", "q", "r"], pb);
            env.push(lambdas(driver)[0]);
            let mut worst: f64 = 0.0;
            for q in &pts {
                let e = with_point(&env, ["x", "y", "z"], normalized(cartesian_to_bary(t, *q)));
                worst = worst.max(poly.eval("equation", &e)?.relative());
            }
            (pts.len(), worst, 1e-6)
        }
        AppendixBlock::PstarConic => {
            let tr = build_triad(t, TriadKind::PHyperbola, Some(driver)).map_err(failed)?;
            let verts = triad_vertices(&tr).map_err(failed)?;
            let mut env = sides.to_vec();
            env.extend(lambdas(driver));
            let mut worst: f64 = 0.0;
            for q in &verts {
                let e = with_point(&env, ["x", "y", "z"], normalized(cartesian_to_bary(t, *q)));
                worst = worst.max(poly.eval("equation", &e)?.relative());
            }
            (6, worst, 1e-6)
        }
        AppendixBlock::X5452Coordinate => {
            let (kind, p) = match extra {
                Some(p) => (TriadKind::PHyperbola, Some(p)),
                None => (TriadKind::VHyperbola, None),
            };
            let tr = build_triad(t, kind, p).map_err(failed)?;
            let six = six_point_conic(&tr).map_err(failed)?;
            let target = center(&six.conic).map_err(failed)?;
            let [a, b, c] = t.sides();
            let lam = match p {
                Some(p) => lambdas(p).map(|l| l.1),
                None => [c - b, a - c, b - a],
            };
            let f = |s: [f64; 3], l: [f64; 3]| -> Result<f64, AppendixError> {
                let env = [("a", s[0]), ("b", s[1]), ("c", s[2]), ("La", l[0]), ("Lb", l[1]), ("Lc", l[2])];
                Ok(poly.eval("numerator", &env)?.value / poly.eval("denominator", &env)?.value)
            };
            let rot = |v: [f64; 3], k: usize| [v[k % 3], v[(k + 1) % 3], v[(k + 2) % 3]];
            let s = [a, b, c];
            let got = BaryCoords::new(f(s, lam)?, f(rot(s, 1), rot(lam, 1))?, f(rot(s, 2), rot(lam, 2))?);
            (1, got.projective_distance(cartesian_to_bary(t, target)), 1e-7)
        }
    };
    Ok(AppendixReport { name, samples, max_residual, bound })
}
