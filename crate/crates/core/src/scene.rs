//! JSON scenes: a triangle and the objects built on it, as exchanged by the
//! command-line tool and consumed by the renderer.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::centers::{soddy, CenterError, OuterSoddy};
use crate::conics::{ConicClass, FocalKind};
use crate::geometry::{GeometryError, Point2, Triangle};
use crate::triads::{build_triad, second_common_point, six_point_conic, triad_vertices, ConicTriad, TriadError, TriadKind, TriadMember};

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("scene json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Triad(#[from] TriadError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("non-finite number in '{0}'")]
    NonFinite(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SceneMember {
    Focal { foci: [[f64; 2]; 2], axis_length: f64, hyperbola: bool },
    /// Zero-axis hyperbola, drawn as the perpendicular bisector of its foci.
    Line { coefficients: [f64; 3] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneTriad {
    pub kind: TriadKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 2]>,
    pub members: Vec<SceneMember>,
}

/// Cartesian conic `a x² + b xy + c y² + d x + e y + f = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneConic {
    pub label: String,
    pub coefficients: [f64; 6],
    pub class: ConicClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneCircle {
    pub label: String,
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub label: String,
    pub at: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenePolyline {
    pub label: String,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub triangle: [[f64; 2]; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 2]>,
    #[serde(default)]
    pub triads: Vec<SceneTriad>,
    #[serde(default)]
    pub conics: Vec<SceneConic>,
    #[serde(default)]
    pub circles: Vec<SceneCircle>,
    #[serde(default)]
    pub points: Vec<LabeledPoint>,
    #[serde(default)]
    pub polylines: Vec<ScenePolyline>,
}

fn xy(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

impl Scene {
    /// Triangle with its vertices labeled `A`, `B`, `C`.
    pub fn new(t: &Triangle) -> Self {
        let points = ["A", "B", "C"].iter().zip(t.vertices()).map(|(l, v)| LabeledPoint { label: l.to_string(), at: xy(v) }).collect();
        Scene { triangle: t.vertices().map(xy), point: None, triads: vec![], conics: vec![], circles: vec![], points, polylines: vec![] }
    }

    /// Scene of one triad: members, six-point conic, labeled vertices, and
    /// the Soddy circles with X175/X176 (V-hyperbolas) or `P′` (P-hyperbolas).
    pub fn construct(t: &Triangle, kind: TriadKind, p: Option<Point2>) -> Result<Self, SceneError> {
        let tr = build_triad(t, kind, p)?;
        let mut s = Scene::new(t);
        s.point = p.map(xy);
        if let Some(p) = p {
            s.add_point("P", p);
        }
        s.add_triad(&tr);
        if let Ok(rep) = six_point_conic(&tr) {
            let k = rep.conic.to_cartesian().coefficients();
            s.conics.push(SceneConic { label: format!("{kind} six-point conic"), coefficients: k, class: rep.class });
        }
        if let Ok(v) = triad_vertices(&tr) {
            for (l, q) in ["A1", "A2", "B1", "B2", "C1", "C2"].iter().zip(v) {
                s.add_point(l, q);
            }
        }
        match kind {
            TriadKind::VHyperbola => {
                let cfg = soddy(t)?;
                s.circles.push(SceneCircle { label: "inner Soddy".into(), center: xy(cfg.inner.center), radius: cfg.inner.radius });
                s.add_point("X176", cfg.inner.center);
                if let OuterSoddy::Containing(c) | OuterSoddy::External(c) = cfg.outer {
                    s.circles.push(SceneCircle { label: "outer Soddy".into(), center: xy(c.center), radius: c.radius });
                    s.add_point("X175", c.center);
                }
            }
            TriadKind::PHyperbola => {
                if let Ok(q) = second_common_point(&tr) {
                    s.add_point("P'", q);
                }
            }
            _ => {}
        }
        Ok(s)
    }

    pub fn add_point(&mut self, label: &str, p: Point2) {
        self.points.push(LabeledPoint { label: label.into(), at: xy(p) });
    }

    pub fn add_triad(&mut self, tr: &ConicTriad) {
        let members = tr
            .members()
            .iter()
            .map(|m| match m {
                TriadMember::Focal(f) => SceneMember::Focal {
                    foci: [xy(f.focus1()), xy(f.focus2())],
                    axis_length: f.axis_length(),
                    hyperbola: f.kind() == FocalKind::Hyperbola,
                },
                TriadMember::Degenerate(l) => SceneMember::Line { coefficients: l.coefficients() },
            })
            .collect();
        self.triads.push(SceneTriad { kind: tr.kind(), point: tr.point().map(xy), members });
    }

    pub fn triangle(&self) -> Result<Triangle, SceneError> {
        Ok(Triangle::from_coords(self.triangle)?)
    }

    pub fn driver(&self) -> Option<Point2> {
        self.point.map(|[x, y]| Point2::new(x, y))
    }

    /// Rebuilds triad `i` from the triangle, its kind and its point.
    pub fn triad(&self, i: usize) -> Result<ConicTriad, SceneError> {
        let st = &self.triads[i];
        let p = st.point.map(|[x, y]| Point2::new(x, y));
        Ok(build_triad(&self.triangle()?, st.kind, p)?)
    }

    pub fn is_empty(&self) -> bool {
        self.triads.is_empty() && self.conics.is_empty() && self.circles.is_empty() && self.polylines.is_empty()
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        let mut seen = HashSet::new();
        let labels = self.conics.iter().map(|c| &c.label).chain(self.circles.iter().map(|c| &c.label)).chain(self.points.iter().map(|p| &p.label)).chain(self.polylines.iter().map(|p| &p.label));
        for l in labels {
            if !seen.insert(l) {
                return Err(SceneError::DuplicateLabel(l.clone()));
            }
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !finite(self.triangle.as_flattened()) {
            return Err(SceneError::NonFinite("triangle".into()));
        }
        for c in &self.conics {
            if !finite(&c.coefficients) {
                return Err(SceneError::NonFinite(c.label.clone()));
            }
        }
        for c in &self.circles {
            if !finite(&c.center) || !c.radius.is_finite() {
                return Err(SceneError::NonFinite(c.label.clone()));
            }
        }
        for p in &self.points {
            if !finite(&p.at) {
                return Err(SceneError::NonFinite(p.label.clone()));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, SceneError> {
        let scene: Scene = serde_json::from_str(s)?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t345() -> Triangle {
        Triangle::from_coords([[0.0, 3.0], [4.0, 0.0], [0.0, 0.0]]).unwrap()
    }

    #[test]
    fn round_trip_is_a_fixpoint() {
        for kind in TriadKind::ALL {
            let p = kind.needs_point().then(|| Point2::new(1.1, 0.7));
            let s = Scene::construct(&t345(), kind, p).unwrap();
            let j = s.to_json();
            let back = Scene::from_json(&j).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_json(), j);
        }
    }

    #[test]
    fn vhyp_scene_has_soddy_objects() {
        let s = Scene::construct(&t345(), TriadKind::VHyperbola, None).unwrap();
        assert_eq!(s.circles.len(), 2);
        assert!(s.points.iter().any(|p| p.label == "X175"));
        assert!(s.points.iter().any(|p| p.label == "X176"));
        assert_eq!(s.triads[0].members.len(), 3);
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let mut s = Scene::new(&t345());
        s.add_point("A", Point2::new(1.0, 1.0));
        assert!(matches!(Scene::from_json(&s.to_json()), Err(SceneError::DuplicateLabel(_))));
    }
}
