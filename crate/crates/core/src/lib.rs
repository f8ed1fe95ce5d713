//! Focal conic triads of a triangle.
//!
//! Every triangle carries four triads of focal conics whose foci are pairs of
//! its vertices: ellipses or hyperbolas through the opposite vertex
//! (V-triads) or through a common point `P` (P-triads). The six vertices of
//! each triad lie on a conic. This crate constructs the triads, fits and
//! classifies their six-point conics, computes the associated triangle
//! centers, Soddy circles and loci, and checks the incidence and concurrency
//! properties numerically.
//!
//! The geometric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix `f64`. Loci, region maps and the verification suite
//! work in `f64` only.

pub mod appendix;
pub mod centers;
pub mod conics;
pub mod geometry;
pub mod linalg;
pub mod loci;
pub mod optimize;
pub mod render;
pub mod sampling;
pub mod scalar;
pub mod scene;
pub mod tolerance;
pub mod triads;
pub mod verification;

pub use scalar::Real;

pub type Point2d = geometry::Point2<f64>;
pub type Point2f = geometry::Point2<f32>;
pub type Triangle2d = geometry::Triangle<f64>;
pub type Triangle2f = geometry::Triangle<f32>;
pub type BaryCoordsd = geometry::BaryCoords<f64>;
pub type LineEqd = geometry::LineEq<f64>;
pub type Conicd = conics::Conic<f64>;
pub type Conicf = conics::Conic<f32>;
pub type FocalConicd = conics::FocalConic<f64>;
pub type Circled = centers::Circle<f64>;
pub type ConicTriadd = triads::ConicTriad<f64>;
pub type ConicTriadf = triads::ConicTriad<f32>;
