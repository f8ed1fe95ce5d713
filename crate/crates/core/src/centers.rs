//! Triangle centers, classical circles, Soddy circles and derived triangles.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{
    bary_to_cartesian, line_through, reflect_about_line, BaryCoords, GeometryError, LineEq, Point2, Triangle,
};
use crate::scalar::{sq, Real};
use crate::triads::TriadError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CenterError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("distance circles do not meet (worst residual {residual:e})")]
    TrilaterationInconsistent { residual: f64 },
    #[error("center requires a triad construction: {0}")]
    Triad(#[from] TriadError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle<T = f64> {
    pub center: Point2<T>,
    pub radius: T,
}

impl<T: Real> Circle<T> {
    pub fn new(center: Point2<T>, radius: T) -> Self {
        Self { center, radius }
    }

    /// Signed distance from `p` to the circle (negative inside).
    pub fn power_distance(&self, p: Point2<T>) -> T {
        p.dist(self.center) - self.radius
    }

    /// Distance from a Cartesian line to the circle minus the radius.
    pub fn line_gap(&self, l: &LineEq<T>) -> T {
        crate::geometry::point_line_distance(self.center, l) - self.radius
    }

    pub fn point_at(&self, angle: T) -> Point2<T> {
        self.center + Point2::new(angle.cos(), angle.sin()) * self.radius
    }
}

/// Named triangle centers (ETC numbering) and the in/excenters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CenterId {
    X3,
    X4,
    X6,
    X7,
    X8,
    X20,
    X55,
    X175,
    X176,
    X478,
    X5452,
    Incenter,
    ExcenterA,
    ExcenterB,
    ExcenterC,
}

impl CenterId {
    pub const ALL: [CenterId; 15] = [
        CenterId::X3,
        CenterId::X4,
        CenterId::X6,
        CenterId::X7,
        CenterId::X8,
        CenterId::X20,
        CenterId::X55,
        CenterId::X175,
        CenterId::X176,
        CenterId::X478,
        CenterId::X5452,
        CenterId::Incenter,
        CenterId::ExcenterA,
        CenterId::ExcenterB,
        CenterId::ExcenterC,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            CenterId::X3 => "X3",
            CenterId::X4 => "X4",
            CenterId::X6 => "X6",
            CenterId::X7 => "X7",
            CenterId::X8 => "X8",
            CenterId::X20 => "X20",
            CenterId::X55 => "X55",
            CenterId::X175 => "X175",
            CenterId::X176 => "X176",
            CenterId::X478 => "X478",
            CenterId::X5452 => "X5452",
            CenterId::Incenter => "incenter",
            CenterId::ExcenterA => "excenter-a",
            CenterId::ExcenterB => "excenter-b",
            CenterId::ExcenterC => "excenter-c",
        }
    }
}

impl fmt::Display for CenterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CenterId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let alias = match norm.as_str() {
            "x1" => "incenter",
            "ia" => "excenter-a",
            "ib" => "excenter-b",
            "ic" => "excenter-c",
            other => other,
        };
        CenterId::ALL
            .iter()
            .copied()
            .find(|c| c.label().to_ascii_lowercase() == alias)
            .ok_or_else(|| format!("unknown center '{s}'"))
    }
}

/// Barycentric coordinates of the centers that have closed-form weights.
///
/// | center | first weight (others cyclic) |
/// |--------|------------------------------|
/// | X3 circumcenter | `a²(b² + c² − a²)` |
/// | X4 orthocenter | `(c² + a² − b²)(a² + b² − c²)` |
/// | X6 symmedian point | `a²` |
/// | X7 Gergonne point | `(s − b)(s − c)` |
/// | X8 Nagel point | `b + c − a` |
/// | X20 de Longchamps point | `−3a⁴ + 2a²(b² + c²) + (b² − c²)²` |
/// | X55 insimilicenter of incircle and circumcircle | `a²(b + c − a)` |
/// | incenter | `a` |
/// | excenter opposite A | `[−a, b, c]` |
pub fn center_barycentrics<T: Real>(t: &Triangle<T>, id: CenterId) -> Option<BaryCoords<T>> {
    let [a, b, c] = t.sides();
    let s = t.semiperimeter();
    let cyc = |f: &dyn Fn(T, T, T) -> T| BaryCoords::new(f(a, b, c), f(b, c, a), f(c, a, b));
    let two = T::lit(2.0);
    let w = match id {
        CenterId::X3 => cyc(&|a, b, c| sq(a) * (sq(b) + sq(c) - sq(a))),
        CenterId::X4 => cyc(&|a, b, c| (sq(c) + sq(a) - sq(b)) * (sq(a) + sq(b) - sq(c))),
        CenterId::X6 => cyc(&|a, _, _| sq(a)),
        CenterId::X7 => cyc(&|a, b, c| (s - b) * (s - c) + T::zero() * a),
        CenterId::X8 => cyc(&|a, b, c| b + c - a),
        CenterId::X20 => cyc(&|a, b, c| {
            -T::lit(3.0) * sq(sq(a)) + two * sq(a) * (sq(b) + sq(c)) + sq(sq(b) - sq(c))
        }),
        CenterId::X55 => cyc(&|a, b, c| sq(a) * (b + c - a)),
        CenterId::Incenter => BaryCoords::new(a, b, c),
        CenterId::ExcenterA => BaryCoords::new(-a, b, c),
        CenterId::ExcenterB => BaryCoords::new(a, -b, c),
        CenterId::ExcenterC => BaryCoords::new(a, b, -c),
        CenterId::X175 | CenterId::X176 | CenterId::X478 | CenterId::X5452 => return None,
    };
    Some(w)
}

/// Cartesian position of a named center. Soddy centers come from the metric
/// Descartes construction; X478 and X5452 are centers of six-point conics.
pub fn classic_center<T: Real>(t: &Triangle<T>, id: CenterId) -> Result<Point2<T>, CenterError> {
    if let Some(w) = center_barycentrics(t, id) {
        return Ok(bary_to_cartesian(t, w)?);
    }
    match id {
        CenterId::X176 => Ok(soddy(t)?.inner.center),
        CenterId::X175 => match soddy(t)?.outer {
            OuterSoddy::Containing(c) | OuterSoddy::External(c) => Ok(c.center),
            OuterSoddy::Line(_) => Err(GeometryError::PointAtInfinity.into()),
        },
        CenterId::X478 => {
            let tr = crate::triads::build_triad(t, crate::triads::TriadKind::VEllipse, None)?;
            let rep = crate::triads::six_point_conic(&tr)?;
            rep.center.ok_or(CenterError::Geometry(GeometryError::PointAtInfinity))
        }
        CenterId::X5452 => {
            let tr = crate::triads::build_triad(t, crate::triads::TriadKind::VHyperbola, None)?;
            let rep = crate::triads::six_point_conic(&tr)?;
            rep.center.ok_or(CenterError::Geometry(GeometryError::PointAtInfinity))
        }
        _ => unreachable!("closed-form centers handled above"),
    }
}

pub fn circumcircle<T: Real>(t: &Triangle<T>) -> Circle<T> {
    let o = classic_center(t, CenterId::X3).expect("circumcenter of a nondegenerate triangle is finite");
    Circle::new(o, o.dist(t.vertex_a()))
}

pub fn incircle<T: Real>(t: &Triangle<T>) -> Circle<T> {
    let i = classic_center(t, CenterId::Incenter).expect("incenter is finite");
    Circle::new(i, t.area() / t.semiperimeter())
}

/// Excircles opposite A, B, C.
pub fn excircles<T: Real>(t: &Triangle<T>) -> [Circle<T>; 3] {
    let ids = [CenterId::ExcenterA, CenterId::ExcenterB, CenterId::ExcenterC];
    let s = t.semiperimeter();
    let area = t.area();
    let mut out = [Circle::new(Point2::origin(), T::zero()); 3];
    for (i, id) in ids.iter().enumerate() {
        let ctr = classic_center(t, *id).expect("excenters are finite");
        out[i] = Circle::new(ctr, area / (s - t.side(i)));
    }
    out
}

/// External tangency points of the excircles with the sidelines, in the
/// order `A1, A2, B1, B2, C1, C2` (A-points on BC, with `|BA1| = s − a`
/// beyond B and `|CA2| = s − a` beyond C; cyclically).
pub fn excircle_tangency_points<T: Real>(t: &Triangle<T>) -> [Point2<T>; 6] {
    let [a, b, c] = t.sides();
    let l = a + b + c;
    let z = T::zero();
    let w = [
        BaryCoords::new(z, l, a - b - c),
        BaryCoords::new(z, a - b - c, l),
        BaryCoords::new(b - c - a, z, l),
        BaryCoords::new(l, z, b - c - a),
        BaryCoords::new(l, c - a - b, z),
        BaryCoords::new(c - a - b, l, z),
    ];
    w.map(|w| bary_to_cartesian(t, w).expect("weights sum to twice a side"))
}

/// Intouch and extouch points on BC, CA, AB. The intouch point on BC lies at
/// distance `s − b` from B, the extouch point at distance `s − c`.
pub fn intouch_extouch<T: Real>(t: &Triangle<T>) -> ([Point2<T>; 3], [Point2<T>; 3]) {
    let s = t.semiperimeter();
    let mut intouch = [Point2::origin(); 3];
    let mut extouch = [Point2::origin(); 3];
    for i in 0..3 {
        let (p, q) = t.side_endpoints(i);
        let len = t.side(i);
        intouch[i] = p.lerp(q, (s - t.side(i + 1)) / len);
        extouch[i] = p.lerp(q, (s - t.side(i + 2)) / len);
    }
    (intouch, extouch)
}

/// Mutually tangent circles centered at A, B, C with radii `s − a, s − b, s − c`.
pub fn kissing_circles<T: Real>(t: &Triangle<T>) -> [Circle<T>; 3] {
    let s = t.semiperimeter();
    [0, 1, 2].map(|i| Circle::new(t.vertex(i), s - t.side(i)))
}

/// `tan(A/2) + tan(B/2) + tan(C/2)`.
pub fn half_tangent_sum<T: Real>(t: &Triangle<T>) -> T {
    let r = t.area() / t.semiperimeter();
    let s = t.semiperimeter();
    (0..3).fold(T::zero(), |acc, i| acc + r / (s - t.side(i)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SoddyRegime {
    /// The outer Soddy circle contains the kissing circles.
    Contains,
    /// The outer Soddy circle degenerates to a line.
    Line,
    /// The outer Soddy circle is externally tangent to the kissing circles.
    External,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuterSoddy<T = f64> {
    Containing(Circle<T>),
    Line(LineEq<T>),
    External(Circle<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoddyConfig<T = f64> {
    pub kissing: [Circle<T>; 3],
    pub inner: Circle<T>,
    pub outer: OuterSoddy<T>,
    pub regime: SoddyRegime,
    /// Curvature of the outer circle (negative when it contains the others).
    pub outer_curvature: T,
}

fn circle_circle<T: Real>(c1: Point2<T>, r1: T, c2: Point2<T>, r2: T) -> Vec<Point2<T>> {
    let d = c1.dist(c2);
    if d == T::zero() {
        return Vec::new();
    }
    let u = (c2 - c1) / d;
    let a = (sq(d) + sq(r1) - sq(r2)) / (T::lit(2.0) * d);
    let h2 = sq(r1) - sq(a);
    let base = c1 + u * a;
    if h2 < T::zero() {
        if -h2 <= T::lit(1e-6) * sq(r1.max(r2)) {
            return vec![base];
        }
        return Vec::new();
    }
    let h = h2.sqrt();
    vec![base + u.perp() * h, base - u.perp() * h]
}

/// Point at the given distances from three centers: candidates from pairwise
/// circle intersections, the best one by the remaining residual, then a few
/// Gauss-Newton steps.
pub fn trilaterate<T: Real>(centers: [Point2<T>; 3], dists: [T; 3]) -> Result<Point2<T>, CenterError> {
    let resid = |p: Point2<T>| (0..3).fold(T::zero(), |acc, i| acc.max((p.dist(centers[i]) - dists[i]).abs()));
    let mut best: Option<(T, Point2<T>)> = None;
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        for p in circle_circle(centers[i], dists[i], centers[j], dists[j]) {
            let r = resid(p);
            if best.map_or(true, |(br, _)| r < br) {
                best = Some((r, p));
            }
        }
    }
    let Some((_, mut x)) = best else {
        return Err(CenterError::TrilaterationInconsistent { residual: f64::INFINITY });
    };
    for _ in 0..8 {
        let (mut jtj, mut jtr) = ([T::zero(); 3], [T::zero(); 2]);
        for i in 0..3 {
            let d = x.dist(centers[i]);
            if d == T::zero() {
                continue;
            }
            let g = (x - centers[i]) / d;
            let r = d - dists[i];
            jtj[0] = jtj[0] + g.x * g.x;
            jtj[1] = jtj[1] + g.x * g.y;
            jtj[2] = jtj[2] + g.y * g.y;
            jtr[0] = jtr[0] + g.x * r;
            jtr[1] = jtr[1] + g.y * r;
        }
        let Some(step) = crate::linalg::solve2(jtj[0], jtj[1], jtj[1], jtj[2], jtr) else { break };
        let cand = Point2::new(x.x - step[0], x.y - step[1]);
        if resid(cand) < resid(x) {
            x = cand;
        } else {
            break;
        }
    }
    let scale = dists.iter().fold(T::zero(), |acc, d| acc.max(*d)).max(centers[0].dist(centers[1]));
    let r = resid(x);
    if r > T::tol() * T::lit(10.0) * scale {
        return Err(CenterError::TrilaterationInconsistent { residual: r.to_f64_lossy() });
    }
    Ok(x)
}

/// Inner and outer Soddy circles of the kissing circles (Descartes' theorem
/// for the curvatures, trilateration for the centers).
pub fn soddy<T: Real>(t: &Triangle<T>) -> Result<SoddyConfig<T>, CenterError> {
    let kissing = kissing_circles(t);
    let k = kissing.map(|c| T::one() / c.radius);
    let sum = k[0] + k[1] + k[2];
    let root = (k[0] * k[1] + k[1] * k[2] + k[2] * k[0]).sqrt();
    let two = T::lit(2.0);
    let k_in = sum + two * root;
    let r_in = T::one() / k_in;
    let centers = t.vertices();
    let inner_center = trilaterate(centers, kissing.map(|c| c.radius + r_in))?;
    let inner = Circle::new(inner_center, r_in);
    let k_out = sum - two * root;
    let (outer, regime) = if k_out.abs() < T::tol() * T::lit(0.1) * sum {
        (OuterSoddy::Line(soddy_line(t, &kissing)), SoddyRegime::Line)
    } else if k_out < T::zero() {
        let r = -T::one() / k_out;
        let c = trilaterate(centers, kissing.map(|c| r - c.radius))?;
        (OuterSoddy::Containing(Circle::new(c, r)), SoddyRegime::Contains)
    } else {
        let r = T::one() / k_out;
        let c = trilaterate(centers, kissing.map(|c| r + c.radius))?;
        (OuterSoddy::External(Circle::new(c, r)), SoddyRegime::External)
    };
    Ok(SoddyConfig { kissing, inner, outer, regime, outer_curvature: k_out })
}

/// Common tangent line of the kissing circles with all three on the same side.
pub fn soddy_line<T: Real>(t: &Triangle<T>, kissing: &[Circle<T>; 3]) -> LineEq<T> {
    let [a, b, c] = t.vertices();
    let [ra, rb, rc] = kissing.map(|k| k.radius);
    let ab = b - a;
    let ac = c - a;
    let n = crate::linalg::solve2(ab.x, ab.y, ac.x, ac.y, [rb - ra, rc - ra])
        .map(|v| Point2::new(v[0], v[1]))
        .unwrap_or(ab.perp());
    let n = n.normalized();
    // n·X − (n·A − r_A) is the signed distance from X to the line
    let off = n.dot(a) - ra;
    LineEq::cartesian(n.x, n.y, -off)
}

/// Outer Soddy center, or the direction of the point at infinity when the
/// outer circle is a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuterCenter<T = f64> {
    Finite(Point2<T>),
    AtInfinity(Point2<T>),
}

/// `(X175, X176)`.
pub fn soddy_centers<T: Real>(t: &Triangle<T>) -> Result<(OuterCenter<T>, Point2<T>), CenterError> {
    let cfg = soddy(t)?;
    let outer = match cfg.outer {
        OuterSoddy::Containing(c) | OuterSoddy::External(c) => OuterCenter::Finite(c.center),
        OuterSoddy::Line(l) => OuterCenter::AtInfinity(Point2::new(l.l, l.m).normalized()),
    };
    Ok((outer, cfg.inner.center))
}

/// Triangle whose Q-cevian triangle is `t`: vertices `[−u, v, w]`, `[u, −v, w]`, `[u, v, −w]`.
pub fn anticevian_triangle<T: Real>(t: &Triangle<T>, q: BaryCoords<T>) -> Result<Triangle<T>, GeometryError> {
    let (u, v, w) = (q.u, q.v, q.w);
    let pa = bary_to_cartesian(t, BaryCoords::new(-u, v, w))?;
    let pb = bary_to_cartesian(t, BaryCoords::new(u, -v, w))?;
    let pc = bary_to_cartesian(t, BaryCoords::new(u, v, -w))?;
    Triangle::new(pa, pb, pc).map_err(|_| GeometryError::DegenerateResult)
}

/// Cevian triangle of Q: vertices `[0, v, w]`, `[u, 0, w]`, `[u, v, 0]`.
pub fn cevian_triangle<T: Real>(t: &Triangle<T>, q: BaryCoords<T>) -> Result<Triangle<T>, GeometryError> {
    let z = T::zero();
    let pa = bary_to_cartesian(t, BaryCoords::new(z, q.v, q.w))?;
    let pb = bary_to_cartesian(t, BaryCoords::new(q.u, z, q.w))?;
    let pc = bary_to_cartesian(t, BaryCoords::new(q.u, q.v, z))?;
    Triangle::new(pa, pb, pc).map_err(|_| GeometryError::DegenerateResult)
}

/// Reflections of `q` in the sidelines BC, CA, AB.
pub fn reflection_triangle<T: Real>(t: &Triangle<T>, q: Point2<T>) -> Result<Triangle<T>, GeometryError> {
    let r = [0, 1, 2].map(|i| reflect_about_line(q, &t.sideline(i)));
    Triangle::new(r[0], r[1], r[2]).map_err(|_| GeometryError::DegenerateResult)
}

pub fn medial_triangle<T: Real>(t: &Triangle<T>) -> Triangle<T> {
    Triangle::new(t.side_midpoint(0), t.side_midpoint(1), t.side_midpoint(2)).expect("medial triangle is nondegenerate")
}

pub fn excentral_triangle<T: Real>(t: &Triangle<T>) -> Triangle<T> {
    let e = excircles(t);
    Triangle::new(e[0].center, e[1].center, e[2].center).expect("excentral triangle is nondegenerate")
}

pub fn intouch_triangle<T: Real>(t: &Triangle<T>) -> Triangle<T> {
    let (i, _) = intouch_extouch(t);
    Triangle::new(i[0], i[1], i[2]).expect("intouch triangle is nondegenerate")
}

pub fn extouch_triangle<T: Real>(t: &Triangle<T>) -> Triangle<T> {
    let (_, e) = intouch_extouch(t);
    Triangle::new(e[0], e[1], e[2]).expect("extouch triangle is nondegenerate")
}

/// Sides of the excentral triangle through A, B, C (the external bisectors).
pub fn excentral_sidelines<T: Real>(t: &Triangle<T>) -> [LineEq<T>; 3] {
    let e = excircles(t);
    [0, 1, 2].map(|i| line_through(e[(i + 1) % 3].center, e[(i + 2) % 3].center).expect("distinct excenters"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn t345() -> Triangle {
        Triangle::new(Point2::new(0.0, 3.0), Point2::new(4.0, 0.0), Point2::new(0.0, 0.0)).unwrap()
    }

    fn close(p: Point2, x: f64, y: f64, eps: f64) {
        assert!((p.x - x).abs() < eps && (p.y - y).abs() < eps, "{p:?} vs ({x}, {y})");
    }

    #[test]
    fn classic_centers_of_right_triangle() {
        let t = t345();
        close(classic_center(&t, CenterId::X8).unwrap(), 2.0, 1.0, 1e-14);
        close(classic_center(&t, CenterId::X20).unwrap(), 4.0, 3.0, 1e-13);
        close(classic_center(&t, CenterId::X3).unwrap(), 2.0, 1.5, 1e-14);
        close(classic_center(&t, CenterId::X4).unwrap(), 0.0, 0.0, 1e-14);
        close(classic_center(&t, CenterId::Incenter).unwrap(), 1.0, 1.0, 1e-14);
        let w = center_barycentrics(&t, CenterId::X20).unwrap();
        assert_relative_eq!(w.u, 576.0);
        assert_relative_eq!(w.w, -576.0);
    }

    #[test]
    fn equilateral_centers_coincide() {
        let t = Triangle::equilateral(1.0);
        let g = t.centroid();
        for id in [CenterId::X3, CenterId::X4, CenterId::X6, CenterId::X7, CenterId::X8, CenterId::X20, CenterId::X55] {
            let p = classic_center(&t, id).unwrap();
            assert!(p.dist(g) < 1e-14, "{id}");
        }
    }

    #[test]
    fn circles_of_right_triangle() {
        let t = t345();
        let i = incircle(&t);
        close(i.center, 1.0, 1.0, 1e-14);
        assert_relative_eq!(i.radius, 1.0);
        let o = circumcircle(&t);
        close(o.center, 2.0, 1.5, 1e-14);
        assert_relative_eq!(o.radius, 2.5);
        let e = Triangle::equilateral(1.0);
        assert_relative_eq!(circumcircle(&e).radius, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(incircle(&e).radius, 1.0 / (2.0 * 3f64.sqrt()), epsilon = 1e-15);
    }

    #[test]
    fn tangency_points() {
        let t = t345();
        let six = excircle_tangency_points(&t);
        close(six[0], 6.0, 0.0, 1e-14);
        close(six[1], -2.0, 0.0, 1e-14);
        close(six[2], 0.0, -3.0, 1e-14);
        close(six[3], 0.0, 6.0, 1e-14);
        close(six[4], -0.8, 3.6, 1e-14);
        close(six[5], 4.8, -0.6, 1e-14);
        let (it, et) = intouch_extouch(&t);
        close(it[0], 1.0, 0.0, 1e-14);
        close(et[0], 3.0, 0.0, 1e-14);
        let k = kissing_circles(&t);
        assert_eq!(k.map(|c| c.radius), [2.0, 3.0, 1.0]);
    }

    #[test]
    fn soddy_of_right_triangle() {
        let t = t345();
        let s = soddy(&t).unwrap();
        assert_relative_eq!(s.inner.radius, 6.0 / 23.0, epsilon = 1e-15);
        assert_eq!(s.regime, SoddyRegime::Contains);
        let OuterSoddy::Containing(o) = s.outer else { panic!("expected containing circle") };
        close(o.center, 4.0, 3.0, 1e-12);
        assert_relative_eq!(o.radius, 6.0, epsilon = 1e-12);
        let d = t.vertices().map(|v| v.dist(s.inner.center));
        assert_relative_eq!(d[0], 52.0 / 23.0, epsilon = 1e-12);
        assert_relative_eq!(d[1], 75.0 / 23.0, epsilon = 1e-12);
        assert_relative_eq!(d[2], 29.0 / 23.0, epsilon = 1e-12);
        assert_relative_eq!(half_tangent_sum(&t), 11.0 / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn derived_triangles() {
        let t = t345();
        let r = reflection_triangle(&t, Point2::new(1.0, 1.0)).unwrap();
        close(r.vertex_a(), 1.0, -1.0, 1e-14);
        close(r.vertex_b(), -1.0, 1.0, 1e-14);
        close(r.vertex_c(), 11.0 / 5.0, 13.0 / 5.0, 1e-14);
        let g = BaryCoords::new(1.0, 1.0, 1.0);
        let m = cevian_triangle(&t, g).unwrap();
        close(m.vertex_a(), 2.0, 0.0, 1e-14);
        let q = BaryCoords::new(0.3, 0.45, 0.25);
        let ac = anticevian_triangle(&t, q).unwrap();
        let qp = bary_to_cartesian(&t, q).unwrap();
        let qb = crate::geometry::cartesian_to_bary(&ac, qp);
        let ct = cevian_triangle(&ac, qb).unwrap();
        for i in 0..3 {
            assert!(ct.vertex(i).dist(t.vertex(i)) < 1e-12);
        }
    }

    #[test]
    fn center_names_parse() {
        for id in CenterId::ALL {
            assert_eq!(id.label().parse::<CenterId>().unwrap(), id);
        }
        assert_eq!("x176".parse::<CenterId>().unwrap(), CenterId::X176);
    }
}
