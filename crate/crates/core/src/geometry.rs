//! Points, lines, triangles and barycentric coordinates.

use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{sq, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("triangle vertices are collinear or coincident")]
    DegenerateTriangle,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("barycentric weights sum to zero: point at infinity")]
    PointAtInfinity,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("construction produced a degenerate triangle")]
    DegenerateResult,
}

/// A point (or free vector) of the Cartesian plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Point2<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Self {
        self / self.norm()
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Self) -> Self {
        (self + o) * T::lit(0.5)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Homogeneous coordinates `(x, y, 1)`.
    pub fn homogeneous(self) -> [T; 3] {
        [self.x, self.y, T::one()]
    }

    pub fn rotate(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn cast<U: Real>(self) -> Point2<U> {
        Point2::new(U::lit(self.x.to_f64_lossy()), U::lit(self.y.to_f64_lossy()))
    }
}

impl<T: Real> Add for Point2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl<T: Real> Div<T> for Point2<T> {
    type Output = Self;
    fn div(self, k: T) -> Self {
        Self::new(self.x / k, self.y / k)
    }
}

impl<T: Real> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Homogeneous barycentric coordinates `[u, v, w]` with respect to a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BaryCoords<T = f64> {
    pub u: T,
    pub v: T,
    pub w: T,
}

impl<T: Real> BaryCoords<T> {
    pub fn new(u: T, v: T, w: T) -> Self {
        Self { u, v, w }
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [T; 3] {
        [self.u, self.v, self.w]
    }

    pub fn sum(self) -> T {
        self.u + self.v + self.w
    }

    pub fn is_zero(self) -> bool {
        self.u == T::zero() && self.v == T::zero() && self.w == T::zero()
    }

    /// Scales to unit max-abs component with the first nonzero entry positive.
    pub fn normalized(self) -> Self {
        let a = self.to_array();
        let m = a.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
        if m == T::zero() {
            return self;
        }
        let first = a.iter().copied().find(|v| *v != T::zero()).unwrap_or(T::one());
        let k = if first < T::zero() { -m } else { m };
        Self::new(a[0] / k, a[1] / k, a[2] / k)
    }

    /// Projective equality after normalization.
    pub fn projective_eq(self, other: Self, tol: T) -> bool {
        self.projective_distance(other) <= tol
    }

    /// Max-abs difference of the normalized representatives, minimized over sign.
    pub fn projective_distance(self, other: Self) -> T {
        let a = self.normalized().to_array();
        let b = other.normalized().to_array();
        let d = |s: T| {
            a.iter()
                .zip(b.iter())
                .fold(T::zero(), |acc, (x, y)| acc.max((*x - s * *y).abs()))
        };
        d(T::one()).min(d(-T::one()))
    }

    /// Cyclic relabelling `[u, v, w] -> [w, u, v]`, i.e. the A-component moves to B.
    pub fn rotate_forward(self) -> Self {
        Self::new(self.w, self.u, self.v)
    }
}

/// Frame of a line equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LineFrame {
    /// `l x + m y + n = 0` in Cartesian coordinates.
    #[default]
    Cartesian,
    /// `l x + m y + n z = 0` in barycentric coordinates of some triangle.
    Barycentric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineEq<T = f64> {
    pub l: T,
    pub m: T,
    pub n: T,
    pub frame: LineFrame,
}

impl<T: Real> LineEq<T> {
    pub fn cartesian(l: T, m: T, n: T) -> Self {
        Self { l, m, n, frame: LineFrame::Cartesian }
    }

    pub fn barycentric(l: T, m: T, n: T) -> Self {
        Self { l, m, n, frame: LineFrame::Barycentric }
    }

    pub fn coefficients(&self) -> [T; 3] {
        [self.l, self.m, self.n]
    }

    /// Cartesian line scaled to a unit normal `(l, m)`.
    pub fn normalized(&self) -> Self {
        let k = match self.frame {
            LineFrame::Cartesian => self.l.hypot(self.m),
            LineFrame::Barycentric => self.l.hypot(self.m).hypot(self.n),
        };
        Self { l: self.l / k, m: self.m / k, n: self.n / k, frame: self.frame }
    }

    pub fn eval(&self, p: Point2<T>) -> T {
        self.l * p.x + self.m * p.y + self.n
    }

    /// Unit direction vector of a Cartesian line.
    pub fn direction(&self) -> Point2<T> {
        Point2::new(-self.m, self.l).normalized()
    }

    /// Point of the line closest to the origin.
    pub fn foot_from_origin(&self) -> Point2<T> {
        let k = -self.n / (sq(self.l) + sq(self.m));
        Point2::new(self.l * k, self.m * k)
    }

    pub fn projective_eq(&self, other: &Self, tol: T) -> bool {
        BaryCoords::new(self.l, self.m, self.n)
            .projective_eq(BaryCoords::new(other.l, other.m, other.n), tol)
    }
}

/// Half the signed cross product: positive iff `p, q, r` turn counterclockwise.
pub fn signed_area<T: Real>(p: Point2<T>, q: Point2<T>, r: Point2<T>) -> T {
    (q - p).cross(r - p) * T::lit(0.5)
}

pub fn distance<T: Real>(p: Point2<T>, q: Point2<T>) -> T {
    p.dist(q)
}

pub fn line_through<T: Real>(p: Point2<T>, q: Point2<T>) -> Result<LineEq<T>, GeometryError> {
    let d = q - p;
    if d.norm() <= T::min_positive_value() {
        return Err(GeometryError::CoincidentPoints);
    }
    // (p, 1) x (q, 1)
    Ok(LineEq::cartesian(p.y - q.y, q.x - p.x, p.x * q.y - p.y * q.x).normalized())
}

pub fn line_intersection<T: Real>(l1: &LineEq<T>, l2: &LineEq<T>) -> Result<Point2<T>, GeometryError> {
    let a = l1.normalized();
    let b = l2.normalized();
    let w = a.l * b.m - a.m * b.l;
    if w.abs() <= T::tol() * T::lit(1e-3) {
        return Err(GeometryError::ParallelLines);
    }
    let x = a.m * b.n - a.n * b.m;
    let y = a.n * b.l - a.l * b.n;
    Ok(Point2::new(x / w, y / w))
}

pub fn point_line_distance<T: Real>(p: Point2<T>, l: &LineEq<T>) -> T {
    l.normalized().eval(p).abs()
}

/// Scale-aware collinearity test.
pub fn collinear<T: Real>(p: Point2<T>, q: Point2<T>, r: Point2<T>) -> bool {
    let scale = p.dist(q).max(q.dist(r)).max(r.dist(p));
    if scale == T::zero() {
        return true;
    }
    signed_area(p, q, r).abs() * T::lit(2.0) <= T::tol() * sq(scale)
}

/// Scale-aware concurrency test for three lines of the same frame.
pub fn concurrent<T: Real>(l1: &LineEq<T>, l2: &LineEq<T>, l3: &LineEq<T>) -> bool {
    concurrency_residual(l1, l2, l3) <= T::tol()
}

/// Residual of a concurrency claim: for Cartesian lines, the distance from the
/// intersection of the two most transversal lines to the third, relative to the
/// configuration scale; for barycentric lines, the determinant of unit rows.
pub fn concurrency_residual<T: Real>(l1: &LineEq<T>, l2: &LineEq<T>, l3: &LineEq<T>) -> T {
    let ls = [l1.normalized(), l2.normalized(), l3.normalized()];
    if l1.frame == LineFrame::Barycentric {
        return crate::linalg::det3(&[ls[0].coefficients(), ls[1].coefficients(), ls[2].coefficients()]).abs();
    }
    let pairs = [(0, 1, 2), (1, 2, 0), (0, 2, 1)];
    let (i, j, k) = pairs
        .iter()
        .copied()
        .max_by(|a, b| {
            let ca = (ls[a.0].l * ls[a.1].m - ls[a.0].m * ls[a.1].l).abs();
            let cb = (ls[b.0].l * ls[b.1].m - ls[b.0].m * ls[b.1].l).abs();
            ca.partial_cmp(&cb).unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap();
    let Ok(x) = line_intersection(&ls[i], &ls[j]) else {
        return T::infinity();
    };
    let scale = ls.iter().fold(x.norm(), |acc, l| acc.max(l.n.abs()));
    let d = ls[k].eval(x).abs();
    if scale <= T::min_positive_value() {
        d
    } else {
        d / scale
    }
}

pub fn reflect_about_point<T: Real>(p: Point2<T>, center: Point2<T>) -> Point2<T> {
    center * T::lit(2.0) - p
}

pub fn reflect_about_line<T: Real>(p: Point2<T>, l: &LineEq<T>) -> Point2<T> {
    let u = l.normalized();
    let d = u.eval(p);
    Point2::new(p.x - T::lit(2.0) * d * u.l, p.y - T::lit(2.0) * d * u.m)
}

/// Orthogonal projection of `p` onto the line through `a` and `b`.
pub fn project_onto_line<T: Real>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> Point2<T> {
    let d = b - a;
    a + d * ((p - a).dot(d) / d.norm_sq())
}

/// A nondegenerate triangle. Vertices are the ground truth; sidelengths
/// `a = |BC|, b = |CA|, c = |AB|` and the semiperimeter are cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle<T = f64> {
    vertices: [Point2<T>; 3],
    sides: [T; 3],
    semiperimeter: T,
}

impl<T: Real> Triangle<T> {
    pub fn new(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let sides = [b.dist(c), c.dist(a), a.dist(b)];
        let longest = sides[0].max(sides[1]).max(sides[2]);
        let twice = (b - a).cross(c - a).abs();
        if longest == T::zero() || twice <= T::tol() * sq(longest) {
            return Err(GeometryError::DegenerateTriangle);
        }
        let semiperimeter = (sides[0] + sides[1] + sides[2]) * T::lit(0.5);
        Ok(Self { vertices: [a, b, c], sides, semiperimeter })
    }

    pub fn from_coords(coords: [[T; 2]; 3]) -> Result<Self, GeometryError> {
        Self::new(
            Point2::new(coords[0][0], coords[0][1]),
            Point2::new(coords[1][0], coords[1][1]),
            Point2::new(coords[2][0], coords[2][1]),
        )
    }

    /// Equilateral triangle with the given side, base on the x-axis centred at the origin.
    pub fn equilateral(side: T) -> Self {
        let h = side * T::lit(3.0).sqrt() * T::lit(0.5);
        let half = side * T::lit(0.5);
        Self::new(Point2::new(-half, T::zero()), Point2::new(half, T::zero()), Point2::new(T::zero(), h))
            .expect("equilateral triangle is nondegenerate")
    }

    pub fn vertices(&self) -> [Point2<T>; 3] {
        self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2<T> {
        self.vertices[i % 3]
    }

    pub fn vertex_a(&self) -> Point2<T> {
        self.vertices[0]
    }

    pub fn vertex_b(&self) -> Point2<T> {
        self.vertices[1]
    }

    pub fn vertex_c(&self) -> Point2<T> {
        self.vertices[2]
    }

    /// `[a, b, c]` with `a = |BC|`.
    pub fn sides(&self) -> [T; 3] {
        self.sides
    }

    pub fn side(&self, i: usize) -> T {
        self.sides[i % 3]
    }

    pub fn side_a(&self) -> T {
        self.sides[0]
    }

    pub fn side_b(&self) -> T {
        self.sides[1]
    }

    pub fn side_c(&self) -> T {
        self.sides[2]
    }

    pub fn semiperimeter(&self) -> T {
        self.semiperimeter
    }

    pub fn perimeter(&self) -> T {
        self.semiperimeter * T::lit(2.0)
    }

    pub fn signed_area(&self) -> T {
        signed_area(self.vertices[0], self.vertices[1], self.vertices[2])
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    /// Largest sidelength; the natural length scale of the configuration.
    pub fn diameter(&self) -> T {
        self.sides[0].max(self.sides[1]).max(self.sides[2])
    }

    pub fn centroid(&self) -> Point2<T> {
        (self.vertices[0] + self.vertices[1] + self.vertices[2]) / T::lit(3.0)
    }

    /// Endpoints of the side opposite vertex `i`, in cyclic order (B, C for A).
    pub fn side_endpoints(&self, i: usize) -> (Point2<T>, Point2<T>) {
        (self.vertex(i + 1), self.vertex(i + 2))
    }

    pub fn side_midpoint(&self, i: usize) -> Point2<T> {
        let (p, q) = self.side_endpoints(i);
        p.midpoint(q)
    }

    /// Sideline opposite vertex `i`.
    pub fn sideline(&self, i: usize) -> LineEq<T> {
        let (p, q) = self.side_endpoints(i);
        line_through(p, q).expect("sides of a nondegenerate triangle have distinct endpoints")
    }

    /// Interior angle at vertex `i`.
    pub fn angle(&self, i: usize) -> T {
        let a = self.side(i);
        let b = self.side(i + 1);
        let c = self.side(i + 2);
        ((sq(b) + sq(c) - sq(a)) / (T::lit(2.0) * b * c)).max(-T::one()).min(T::one()).acos()
    }

    /// Relative defect of the Pythagorean relation at the most obtuse angle.
    pub fn right_angle_defect(&self) -> T {
        let mut s = self.sides;
        s.sort_by(|x, y| x.partial_cmp(y).unwrap());
        (sq(s[2]) - sq(s[0]) - sq(s[1])).abs() / sq(s[2])
    }

    pub fn map_vertices(&self, f: impl Fn(Point2<T>) -> Point2<T>) -> Result<Self, GeometryError> {
        Self::new(f(self.vertices[0]), f(self.vertices[1]), f(self.vertices[2]))
    }

    pub fn cast<U: Real>(&self) -> Result<Triangle<U>, GeometryError> {
        Triangle::new(self.vertices[0].cast(), self.vertices[1].cast(), self.vertices[2].cast())
    }
}

pub fn bary_to_cartesian<T: Real>(t: &Triangle<T>, b: BaryCoords<T>) -> Result<Point2<T>, GeometryError> {
    let s = b.sum();
    let mag = b.u.abs() + b.v.abs() + b.w.abs();
    if mag == T::zero() || s.abs() <= T::tol() * mag {
        return Err(GeometryError::PointAtInfinity);
    }
    let [a, bb, c] = t.vertices();
    Ok((a * b.u + bb * b.v + c * b.w) / s)
}

/// Areal coordinates of `p` (weights summing to one).
pub fn cartesian_to_bary<T: Real>(t: &Triangle<T>, p: Point2<T>) -> BaryCoords<T> {
    let [a, b, c] = t.vertices();
    let s = t.signed_area();
    BaryCoords::new(signed_area(p, b, c) / s, signed_area(a, p, c) / s, signed_area(a, b, p) / s)
}
