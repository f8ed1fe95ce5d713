use std::fmt;

use super::{Conic, ConicError};
use crate::geometry::Point2;
use crate::scalar::{sq, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FocalKind {
    Ellipse,
    Hyperbola,
}

impl fmt::Display for FocalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FocalKind::Ellipse => "ellipse",
            FocalKind::Hyperbola => "hyperbola",
        })
    }
}

/// Ellipse or hyperbola given by its foci and major (transverse) axis length `2α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalConic<T = f64> {
    focus1: Point2<T>,
    focus2: Point2<T>,
    axis_length: T,
    kind: FocalKind,
}

impl<T: Real> FocalConic<T> {
    pub fn new(focus1: Point2<T>, focus2: Point2<T>, axis_length: T, kind: FocalKind) -> Result<Self, ConicError> {
        let focal = focus1.dist(focus2);
        let ok = axis_length.is_finite()
            && focal.is_finite()
            && match kind {
                FocalKind::Ellipse => axis_length > focal,
                FocalKind::Hyperbola => axis_length > T::zero() && axis_length < focal,
            };
        if !ok {
            return Err(ConicError::InvalidAxisLength {
                axis_length: axis_length.to_f64_lossy(),
                focal_distance: focal.to_f64_lossy(),
                kind,
            });
        }
        Ok(Self { focus1, focus2, axis_length, kind })
    }

    pub fn ellipse(focus1: Point2<T>, focus2: Point2<T>, axis_length: T) -> Result<Self, ConicError> {
        Self::new(focus1, focus2, axis_length, FocalKind::Ellipse)
    }

    pub fn hyperbola(focus1: Point2<T>, focus2: Point2<T>, axis_length: T) -> Result<Self, ConicError> {
        Self::new(focus1, focus2, axis_length, FocalKind::Hyperbola)
    }

    pub fn focus1(&self) -> Point2<T> {
        self.focus1
    }

    pub fn focus2(&self) -> Point2<T> {
        self.focus2
    }

    pub fn foci(&self) -> (Point2<T>, Point2<T>) {
        (self.focus1, self.focus2)
    }

    pub fn axis_length(&self) -> T {
        self.axis_length
    }

    pub fn kind(&self) -> FocalKind {
        self.kind
    }

    pub fn center(&self) -> Point2<T> {
        self.focus1.midpoint(self.focus2)
    }

    /// Half the focal distance.
    pub fn focal_half(&self) -> T {
        self.focus1.dist(self.focus2) * T::lit(0.5)
    }

    /// Semi-major (semi-transverse) axis `α`.
    pub fn alpha(&self) -> T {
        self.axis_length * T::lit(0.5)
    }

    /// Semi-minor (semi-conjugate) axis `β = sqrt|α² − c²|`.
    pub fn beta(&self) -> T {
        (sq(self.alpha()) - sq(self.focal_half())).abs().sqrt()
    }

    /// Unit vector from `focus1` to `focus2`.
    pub fn axis_direction(&self) -> Point2<T> {
        (self.focus2 - self.focus1).normalized()
    }

    /// Vertices on the focal axis: the first lies on the `focus1` side.
    pub fn vertices(&self) -> (Point2<T>, Point2<T>) {
        let c = self.center();
        let u = self.axis_direction() * self.alpha();
        (c - u, c + u)
    }

    /// Co-vertices `center ± β·n` with `n` the axis direction turned
    /// counterclockwise. For hyperbolas these are the conjugate-axis endpoints,
    /// which do not lie on the curve.
    pub fn covertices(&self) -> (Point2<T>, Point2<T>) {
        let c = self.center();
        let n = self.axis_direction().perp() * self.beta();
        (c + n, c - n)
    }

    /// `|q−f1| + |q−f2| − 2α` for ellipses, `||q−f1| − |q−f2|| − 2α` for hyperbolas.
    pub fn focal_residual(&self, q: Point2<T>) -> T {
        let d1 = q.dist(self.focus1);
        let d2 = q.dist(self.focus2);
        match self.kind {
            FocalKind::Ellipse => d1 + d2 - self.axis_length,
            FocalKind::Hyperbola => (d1 - d2).abs() - self.axis_length,
        }
    }

    /// Signed focal difference `|q−f1| − |q−f2|`; its sign identifies the hyperbola branch.
    pub fn focal_difference(&self, q: Point2<T>) -> T {
        q.dist(self.focus1) - q.dist(self.focus2)
    }

    /// Point at angle `t` of the standard parametrization
    /// (`cos/sin` for ellipses, `±cosh/sinh` for hyperbolas with `branch = ±1`).
    pub fn point_at(&self, t: T, branch: T) -> Point2<T> {
        let c = self.center();
        let u = self.axis_direction();
        let n = u.perp();
        let (x, y) = match self.kind {
            FocalKind::Ellipse => (self.alpha() * t.cos(), self.beta() * t.sin()),
            FocalKind::Hyperbola => (branch * self.alpha() * t.cosh(), self.beta() * t.sinh()),
        };
        c + u * x + n * y
    }

    pub fn to_conic(&self) -> Conic<T> {
        conic_from_foci(self)
    }
}

/// Cartesian conic of a focal conic: `x'²/α² ± y'²/β² = 1` in the frame of its axes.
pub fn conic_from_foci<T: Real>(fc: &FocalConic<T>) -> Conic<T> {
    let c = fc.center();
    let u = fc.axis_direction();
    let a2 = sq(fc.alpha());
    let b2 = sq(fc.beta());
    // quadratic form in local coordinates: b2 x'^2 ± a2 y'^2 − a2 b2, with
    // x' = u·(p − c), y' = n·(p − c)
    let s = match fc.kind {
        FocalKind::Ellipse => T::one(),
        FocalKind::Hyperbola => -T::one(),
    };
    let (ux, uy) = (u.x, u.y);
    let (nx, ny) = (-uy, ux);
    let qa = b2 * ux * ux + s * a2 * nx * nx;
    let qb = b2 * ux * uy + s * a2 * nx * ny;
    let qc = b2 * uy * uy + s * a2 * ny * ny;
    // expand (p − c)ᵀ Q (p − c) − a2 b2
    let lx = -(qa * c.x + qb * c.y);
    let ly = -(qb * c.x + qc * c.y);
    let k = qa * c.x * c.x + T::lit(2.0) * qb * c.x * c.y + qc * c.y * c.y - a2 * b2;
    Conic::cartesian([[qa, qb, lx], [qb, qc, ly], [lx, ly, k]]).expect("focal conic matrix is nonzero")
}

pub fn vertices_of_focal_conic<T: Real>(fc: &FocalConic<T>) -> (Point2<T>, Point2<T>) {
    fc.vertices()
}

pub fn covertices_of_focal_conic<T: Real>(fc: &FocalConic<T>) -> (Point2<T>, Point2<T>) {
    fc.covertices()
}

#[cfg(test)]
mod tests {
    use super::super::{classify, residual, ConicClass};
    use super::*;
    use approx::assert_relative_eq;

    fn assert_same_conic(c: &Conic, k: [f64; 6]) {
        let other = Conic::from_coefficients(k).unwrap();
        let a = c.matrix();
        let b = other.matrix();
        let s = if a[0][0] * b[0][0] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..3 {
            for j in 0..3 {
                assert!((a[i][j] - s * b[i][j]).abs() < 1e-13, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn textbook_ellipse() {
        let fc = FocalConic::ellipse(Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), 4.0).unwrap();
        assert_same_conic(&conic_from_foci(&fc), [0.25, 0.0, 1.0 / 3.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn shifted_ellipse_and_hyperbola() {
        let b = Point2::new(4.0, 0.0);
        let c = Point2::new(0.0, 0.0);
        let e = FocalConic::ellipse(b, c, 8.0).unwrap();
        assert_same_conic(&e.to_conic(), [1.0 / 16.0, 0.0, 1.0 / 12.0, -0.25, 0.0, 0.25 - 1.0]);
        let (v1, v2) = e.vertices();
        assert_relative_eq!(v1.x, 6.0);
        assert_relative_eq!(v2.x, -2.0);
        let (c1, c2) = e.covertices();
        assert_relative_eq!(c1.x, 2.0);
        assert_relative_eq!(c1.y.abs(), 12f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(c2.y, -c1.y);
        let h = FocalConic::hyperbola(b, c, 2.0).unwrap();
        assert_same_conic(&h.to_conic(), [1.0, 0.0, -1.0 / 3.0, -4.0, 0.0, 3.0]);
        let (v1, v2) = h.vertices();
        assert_relative_eq!(v1.x, 3.0);
        assert_relative_eq!(v2.x, 1.0);
        assert_eq!(classify(&h.to_conic()), ConicClass::Hyperbola);
    }

    #[test]
    fn invalid_axis_lengths() {
        let f1 = Point2::new(0.0, 0.0);
        let f2 = Point2::new(2.0, 0.0);
        assert!(FocalConic::ellipse(f1, f2, 2.0).is_err());
        assert!(FocalConic::hyperbola(f1, f2, 2.0).is_err());
        assert!(FocalConic::hyperbola(f1, f2, 0.0).is_err());
    }

    #[test]
    fn parametrized_points_on_conic() {
        let fc = FocalConic::hyperbola(Point2::new(0.3, -0.2), Point2::new(1.7, 0.9), 1.1).unwrap();
        let c = fc.to_conic();
        for i in 0..20 {
            let t = -2.0 + 0.2 * i as f64;
            for br in [1.0, -1.0] {
                let p = fc.point_at(t, br);
                assert!(residual(&c, p) < 1e-13);
                assert!(fc.focal_residual(p).abs() < 1e-12);
            }
        }
    }
}
