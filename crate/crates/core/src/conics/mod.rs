//! General conics: representation, classification, centers, incidence
//! residuals, frame conversion and line intersection.

mod fit;
mod focal;
mod pencil;
mod shape;

pub use fit::{constraint_residual, fit_conic, fit_conic_5pts, fit_conic_lsq, FitConstraint, FitReport};
pub use focal::{conic_from_foci, covertices_of_focal_conic, vertices_of_focal_conic, FocalConic, FocalKind};
pub use pencil::{intersect_conics, split_degenerate};
pub use shape::{conic_shape, ConicShape};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{cartesian_to_bary, LineEq, LineFrame, Point2, Triangle};
use crate::linalg::{det3, frobenius3, inverse3, mat_vec3, mul3, quad_form, transpose3, Mat3, Vec3};
use crate::scalar::{sq, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConicError {
    #[error("conic matrix is zero or not finite")]
    InvalidMatrix,
    #[error("conic has no finite center")]
    NoFiniteCenter,
    #[error("points do not determine a unique conic (singular value ratio {ratio:e})")]
    RankDeficient { ratio: f64 },
    #[error("axis length {axis_length} incompatible with focal distance {focal_distance} for {kind}")]
    InvalidAxisLength { axis_length: f64, focal_distance: f64, kind: FocalKind },
    #[error("line is a component of the conic")]
    LineOnConic,
    #[error("operation requires a Cartesian conic")]
    WrongFrame,
}

/// Coordinate frame of a conic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConicFrame<T = f64> {
    /// `(x, y, 1)ᵀ m (x, y, 1) = 0`.
    Cartesian,
    /// `[u, v, w] m [u, v, w]ᵀ = 0` in barycentrics of the triangle.
    Barycentric(Triangle<T>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicClass {
    Circle,
    Ellipse,
    /// Positive-definite quadratic part without real points.
    ImaginaryEllipse,
    Parabola,
    Hyperbola,
    RectangularHyperbola,
    DegenerateTwoLines,
    DegenerateParallelLines,
    DegeneratePoint,
}

impl ConicClass {
    pub const ALL: [ConicClass; 9] = [
        ConicClass::Circle,
        ConicClass::Ellipse,
        ConicClass::ImaginaryEllipse,
        ConicClass::Parabola,
        ConicClass::Hyperbola,
        ConicClass::RectangularHyperbola,
        ConicClass::DegenerateTwoLines,
        ConicClass::DegenerateParallelLines,
        ConicClass::DegeneratePoint,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConicClass::Circle => "circle",
            ConicClass::Ellipse => "ellipse",
            ConicClass::ImaginaryEllipse => "imaginary_ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::RectangularHyperbola => "rectangular_hyperbola",
            ConicClass::DegenerateTwoLines => "degenerate_two_lines",
            ConicClass::DegenerateParallelLines => "degenerate_parallel_lines",
            ConicClass::DegeneratePoint => "degenerate_point",
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            ConicClass::DegenerateTwoLines | ConicClass::DegenerateParallelLines | ConicClass::DegeneratePoint
        )
    }

    pub fn is_hyperbola(&self) -> bool {
        matches!(self, ConicClass::Hyperbola | ConicClass::RectangularHyperbola)
    }

    pub fn is_ellipse(&self) -> bool {
        matches!(self, ConicClass::Ellipse | ConicClass::Circle)
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConicClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConicClass::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown conic class '{s}'"))
    }
}

/// A conic as a symmetric 3x3 matrix with unit Frobenius norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic<T = f64> {
    m: Mat3<T>,
    frame: ConicFrame<T>,
}

impl<T: Real> Conic<T> {
    pub fn from_matrix(m: Mat3<T>, frame: ConicFrame<T>) -> Result<Self, ConicError> {
        let mut s = m;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let v = (m[i][j] + m[j][i]) * T::lit(0.5);
                s[i][j] = v;
                s[j][i] = v;
            }
        }
        let n = frobenius3(&s);
        if !(n.is_finite() && n > T::zero()) {
            return Err(ConicError::InvalidMatrix);
        }
        for row in s.iter_mut() {
            for v in row.iter_mut() {
                *v = *v / n;
            }
        }
        Ok(Self { m: s, frame })
    }

    pub fn cartesian(m: Mat3<T>) -> Result<Self, ConicError> {
        Self::from_matrix(m, ConicFrame::Cartesian)
    }

    /// Cartesian conic `xx·x² + xy·xy + yy·y² + x·x + y·y + c = 0`.
    pub fn from_coefficients(k: [T; 6]) -> Result<Self, ConicError> {
        Self::from_matrix(coefficients_to_matrix(k), ConicFrame::Cartesian)
    }

    /// Barycentric conic with coefficients of `[u², uv, v², uw, vw, w²]`.
    pub fn from_bary_coefficients(t: &Triangle<T>, k: [T; 6]) -> Result<Self, ConicError> {
        Self::from_matrix(coefficients_to_matrix(k), ConicFrame::Barycentric(*t))
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.m
    }

    pub fn frame(&self) -> &ConicFrame<T> {
        &self.frame
    }

    pub fn is_cartesian(&self) -> bool {
        matches!(self.frame, ConicFrame::Cartesian)
    }

    /// Coefficients in the order `[xx, xy, yy, x, y, 1]`.
    pub fn coefficients(&self) -> [T; 6] {
        let m = &self.m;
        let two = T::lit(2.0);
        [m[0][0], two * m[0][1], m[1][1], two * m[0][2], two * m[1][2], m[2][2]]
    }

    /// Homogeneous coordinates of a Cartesian point in this conic's frame.
    pub fn point_coords(&self, p: Point2<T>) -> Vec3<T> {
        match &self.frame {
            ConicFrame::Cartesian => p.homogeneous(),
            ConicFrame::Barycentric(t) => cartesian_to_bary(t, p).to_array(),
        }
    }

    pub fn eval_hom(&self, v: &Vec3<T>) -> T {
        quad_form(&self.m, v)
    }

    /// Value of the normalized quadratic form at `p`.
    pub fn eval(&self, p: Point2<T>) -> T {
        self.eval_hom(&self.point_coords(p))
    }

    /// Gradient of the quadratic form at `p` in Cartesian coordinates.
    pub fn gradient(&self, p: Point2<T>) -> Point2<T> {
        let c = self.to_cartesian();
        let g = mat_vec3(&c.m, &p.homogeneous());
        Point2::new(g[0] * T::lit(2.0), g[1] * T::lit(2.0))
    }

    pub fn to_cartesian(&self) -> Conic<T> {
        match &self.frame {
            ConicFrame::Cartesian => *self,
            ConicFrame::Barycentric(t) => conic_bary_to_cartesian(self, t).expect("triangle is nondegenerate"),
        }
    }

    /// Same locus with the matrix negated when the form is negative at `reference`.
    pub fn oriented_positive_at(&self, reference: Point2<T>) -> Conic<T> {
        if self.eval(reference) < T::zero() {
            Conic { m: crate::linalg::scale3(&self.m, -T::one()), frame: self.frame }
        } else {
            *self
        }
    }

    /// Image under the affine map `p -> k·p + shift`.
    pub fn transform_similarity(&self, k: T, shift: Point2<T>) -> Result<Conic<T>, ConicError> {
        if !self.is_cartesian() {
            return Err(ConicError::WrongFrame);
        }
        // inverse map q -> (q - shift) / k
        let inv = [
            [T::one() / k, T::zero(), -shift.x / k],
            [T::zero(), T::one() / k, -shift.y / k],
            [T::zero(), T::zero(), T::one()],
        ];
        Conic::cartesian(mul3(&transpose3(&inv), &mul3(&self.m, &inv)))
    }
}

pub(crate) fn coefficients_to_matrix<T: Real>(k: [T; 6]) -> Mat3<T> {
    let h = T::lit(0.5);
    [[k[0], k[1] * h, k[3] * h], [k[1] * h, k[2], k[4] * h], [k[3] * h, k[4] * h, k[5]]]
}

/// Degeneracy threshold on the normalized determinant.
fn degeneracy_threshold<T: Real>() -> T {
    T::tol() * T::lit(0.1)
}

/// `|vᵀ m v| / (‖m‖_F ‖v‖²)` with `v` the homogeneous coordinates of `p`.
pub fn residual<T: Real>(c: &Conic<T>, p: Point2<T>) -> T {
    let v = c.point_coords(p);
    let n2 = v.iter().fold(T::zero(), |acc, x| acc + sq(*x));
    c.eval_hom(&v).abs() / (frobenius3(&c.m) * n2)
}

/// Translates a Cartesian conic matrix so that `p` becomes the origin.
fn translate_to<T: Real>(m: &Mat3<T>, p: Point2<T>) -> Mat3<T> {
    let t = [[T::one(), T::zero(), p.x], [T::zero(), T::one(), p.y], [T::zero(), T::zero(), T::one()]];
    mul3(&transpose3(&t), &mul3(m, &t))
}

/// Discriminant of the quadratic part relative to its own magnitude:
/// positive for ellipses (at most 1/2), zero for parabolas, negative for hyperbolas.
pub fn relative_discriminant<T: Real>(c: &Conic<T>) -> T {
    let m = c.to_cartesian().m;
    let qn2 = sq(m[0][0]) + sq(m[1][1]) + T::lit(2.0) * sq(m[0][1]);
    if qn2 == T::zero() {
        return T::zero();
    }
    (m[0][0] * m[1][1] - sq(m[0][1])) / qn2
}

/// Determinant of the Frobenius-normalized matrix, computed after moving the
/// origin to the center when the conic is central.
pub fn normalized_determinant<T: Real>(c: &Conic<T>) -> T {
    let cart = c.to_cartesian();
    let mut m = cart.m;
    if relative_discriminant(&cart).abs() > degeneracy_threshold::<T>() {
        if let Ok(ctr) = center(&cart) {
            m = translate_to(&m, ctr);
        }
    }
    let n = frobenius3(&m);
    det3(&m) / (n * n * n)
}

pub fn classify<T: Real>(c: &Conic<T>) -> ConicClass {
    let cart = c.to_cartesian();
    let m = cart.m;
    let thr = degeneracy_threshold::<T>();
    let delta = relative_discriminant(&cart);
    let det = normalized_determinant(&cart);
    if det.abs() < thr {
        return if delta < -thr {
            ConicClass::DegenerateTwoLines
        } else if delta > thr {
            ConicClass::DegeneratePoint
        } else {
            ConicClass::DegenerateParallelLines
        };
    }
    if delta.abs() < thr {
        return ConicClass::Parabola;
    }
    let qn = (sq(m[0][0]) + sq(m[1][1]) + T::lit(2.0) * sq(m[0][1])).sqrt();
    let tol = T::tol();
    if delta > T::zero() {
        // real iff the constant at the center has the opposite sign of the quadratic part
        let ctr = center(&cart).expect("central conic");
        let f = quad_form(&m, &ctr.homogeneous());
        if f * m[0][0] > T::zero() || f * m[1][1] > T::zero() {
            return ConicClass::ImaginaryEllipse;
        }
        if (m[0][0] - m[1][1]).abs() <= tol * qn && m[0][1].abs() <= tol * qn {
            return ConicClass::Circle;
        }
        return ConicClass::Ellipse;
    }
    if (m[0][0] + m[1][1]).abs() <= tol * qn {
        ConicClass::RectangularHyperbola
    } else {
        ConicClass::Hyperbola
    }
}

/// Center of a central conic, or the singular point of a crossing line pair.
pub fn center<T: Real>(c: &Conic<T>) -> Result<Point2<T>, ConicError> {
    let cart = c.to_cartesian();
    let m = cart.m;
    let qn2 = sq(m[0][0]) + sq(m[1][1]) + T::lit(2.0) * sq(m[0][1]);
    let d = m[0][0] * m[1][1] - sq(m[0][1]);
    if qn2 == T::zero() || d.abs() <= degeneracy_threshold::<T>() * qn2 {
        return Err(ConicError::NoFiniteCenter);
    }
    let x = (m[0][1] * m[1][2] - m[1][1] * m[0][2]) / d;
    let y = (m[0][1] * m[0][2] - m[0][0] * m[1][2]) / d;
    let p = Point2::new(x, y);
    if !p.is_finite() {
        return Err(ConicError::NoFiniteCenter);
    }
    Ok(p)
}

/// Change of frame `m' = K⁻ᵀ m K⁻¹` with `K` mapping barycentrics to `(x, y, 1)`.
pub fn conic_bary_to_cartesian<T: Real>(c: &Conic<T>, t: &Triangle<T>) -> Result<Conic<T>, ConicError> {
    let [a, b, cc] = t.vertices();
    let k = [[a.x, b.x, cc.x], [a.y, b.y, cc.y], [T::one(), T::one(), T::one()]];
    let kinv = inverse3(&k).ok_or(ConicError::InvalidMatrix)?;
    Conic::cartesian(mul3(&transpose3(&kinv), &mul3(&c.m, &kinv)))
}

/// Inverse of [`conic_bary_to_cartesian`].
pub fn conic_cartesian_to_bary<T: Real>(c: &Conic<T>, t: &Triangle<T>) -> Result<Conic<T>, ConicError> {
    if !c.is_cartesian() {
        return Err(ConicError::WrongFrame);
    }
    let [a, b, cc] = t.vertices();
    let k = [[a.x, b.x, cc.x], [a.y, b.y, cc.y], [T::one(), T::one(), T::one()]];
    Conic::from_matrix(mul3(&transpose3(&k), &mul3(&c.m, &k)), ConicFrame::Barycentric(*t))
}

/// Restriction of a Cartesian conic to a line, `q(t) = c2 t² + 2 c1 t + c0`
/// along `p0 + t·d` with unit `d`.
struct LineRestriction<T> {
    p0: Point2<T>,
    dir: Point2<T>,
    c2: T,
    c1: T,
    c0: T,
    scale: T,
}

fn restrict<T: Real>(c: &Conic<T>, l: &LineEq<T>) -> Result<LineRestriction<T>, ConicError> {
    if l.frame != LineFrame::Cartesian {
        return Err(ConicError::WrongFrame);
    }
    let cart = c.to_cartesian();
    let ln = l.normalized();
    let p0 = ln.foot_from_origin();
    let dir = ln.direction();
    let h0 = p0.homogeneous();
    let h1 = [dir.x, dir.y, T::zero()];
    let m = &cart.m;
    let c2 = quad_form(m, &h1);
    let c1 = crate::linalg::dot3(&h0, &mat_vec3(m, &h1));
    let c0 = quad_form(m, &h0);
    let scale = crate::linalg::dot3(&h0, &h0);
    Ok(LineRestriction { p0, dir, c2, c1, c0, scale })
}

/// Real intersection points of a conic and a Cartesian line. A tangent line
/// yields its single point of contact.
pub fn conic_line_intersection<T: Real>(c: &Conic<T>, l: &LineEq<T>) -> Result<Vec<Point2<T>>, ConicError> {
    let r = restrict(c, l)?;
    let tol = T::tol();
    let mag = r.c2.abs().max(r.c1.abs()).max(r.c0.abs() / r.scale);
    if mag <= tol * tol {
        return Err(ConicError::LineOnConic);
    }
    let at = |t: T| r.p0 + r.dir * t;
    if r.c2.abs() <= tol * mag {
        if r.c1.abs() <= tol * mag {
            return Ok(Vec::new());
        }
        return Ok(vec![at(-r.c0 / (T::lit(2.0) * r.c1))]);
    }
    let disc = sq(r.c1) - r.c2 * r.c0;
    let disc_scale = sq(r.c1) + (r.c2 * r.c0).abs();
    if disc.abs() <= tol * disc_scale {
        return Ok(vec![at(-r.c1 / r.c2)]);
    }
    if disc < T::zero() {
        return Ok(Vec::new());
    }
    let q = -(r.c1 + r.c1.signum() * disc.sqrt());
    let (t1, t2) = if q == T::zero() { (T::zero(), T::zero()) } else { (q / r.c2, r.c0 / q) };
    let (t1, t2) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    Ok(vec![at(t1), at(t2)])
}

/// Discriminant of the conic restricted to a line, relative to its natural
/// magnitude: zero for tangency, positive for secants, negative for misses.
pub fn line_tangency_discriminant<T: Real>(c: &Conic<T>, l: &LineEq<T>) -> Result<T, ConicError> {
    let r = restrict(c, l)?;
    let disc = sq(r.c1) - r.c2 * r.c0;
    let len = r.scale.sqrt();
    let scale = sq(r.c1) + sq(r.c2.abs() * len + r.c0.abs() / len);
    if scale == T::zero() {
        return Err(ConicError::LineOnConic);
    }
    Ok(disc / scale)
}
