//! The four focal-conic triads of a triangle and their incidence theorems.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::centers::{self, CenterError, CenterId, OuterCenter};
use crate::conics::{
    center, classify, fit_conic, intersect_conics, line_tangency_discriminant, residual, Conic, ConicClass,
    ConicError, FitConstraint, FocalConic, FocalKind,
};
use crate::geometry::{
    line_through, point_line_distance, signed_area, GeometryError, LineEq, Point2, Triangle,
};
use crate::scalar::Real;
use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TriadError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error("{0} triad needs a point P")]
    MissingPoint(TriadKind),
    #[error("P coincides with a triangle vertex")]
    PointIsVertex,
    #[error("member {index} is degenerate: {reason}")]
    DegenerateMember { index: usize, reason: &'static str },
    #[error("operation needs a {expected} triad")]
    WrongKind { expected: TriadKind },
    #[error("point {index} is off its sideline")]
    PointOffSideline { index: usize },
    #[error("no point satisfies all three members")]
    NotFound,
    #[error(transparent)]
    Center(Box<CenterError>),
}

impl From<CenterError> for TriadError {
    fn from(e: CenterError) -> Self {
        TriadError::Center(Box::new(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriadKind {
    VEllipse,
    PEllipse,
    VHyperbola,
    PHyperbola,
}

impl TriadKind {
    pub const ALL: [TriadKind; 4] = [TriadKind::VEllipse, TriadKind::PEllipse, TriadKind::VHyperbola, TriadKind::PHyperbola];

    pub fn needs_point(&self) -> bool {
        matches!(self, TriadKind::PEllipse | TriadKind::PHyperbola)
    }

    pub fn is_hyperbola(&self) -> bool {
        matches!(self, TriadKind::VHyperbola | TriadKind::PHyperbola)
    }

    pub fn focal_kind(&self) -> FocalKind {
        if self.is_hyperbola() {
            FocalKind::Hyperbola
        } else {
            FocalKind::Ellipse
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TriadKind::VEllipse => "v_ellipse",
            TriadKind::PEllipse => "p_ellipse",
            TriadKind::VHyperbola => "v_hyperbola",
            TriadKind::PHyperbola => "p_hyperbola",
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            TriadKind::VEllipse => "v-ell",
            TriadKind::PEllipse => "p-ell",
            TriadKind::VHyperbola => "v-hyp",
            TriadKind::PHyperbola => "p-hyp",
        }
    }
}

impl fmt::Display for TriadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TriadKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s.trim().to_ascii_lowercase().replace('-', "_");
        TriadKind::ALL
            .into_iter()
            .find(|t| t.as_str() == k || t.short_name().replace('-', "_") == k)
            .ok_or_else(|| format!("unknown triad kind '{s}'"))
    }
}

/// A triad member: a focal conic, or the perpendicular bisector of its foci
/// when the hyperbola's axis length vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TriadMember<T = f64> {
    Focal(FocalConic<T>),
    Degenerate(LineEq<T>),
}

impl<T: Real> TriadMember<T> {
    pub fn focal(&self) -> Option<&FocalConic<T>> {
        match self {
            TriadMember::Focal(f) => Some(f),
            TriadMember::Degenerate(_) => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, TriadMember::Degenerate(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicTriad<T = f64> {
    kind: TriadKind,
    triangle: Triangle<T>,
    p: Option<Point2<T>>,
    members: [TriadMember<T>; 3],
    params: [T; 3],
}

impl<T: Real> ConicTriad<T> {
    pub fn kind(&self) -> TriadKind {
        self.kind
    }

    pub fn triangle(&self) -> &Triangle<T> {
        &self.triangle
    }

    pub fn point(&self) -> Option<Point2<T>> {
        self.p
    }

    pub fn members(&self) -> &[TriadMember<T>; 3] {
        &self.members
    }

    /// `δ = |XB| + |XC|` (ellipses) or `λ = |XB| − |XC|` (hyperbolas) per member,
    /// `X` the through point, cyclically.
    pub fn params(&self) -> [T; 3] {
        self.params
    }

    pub fn member(&self, i: usize) -> Result<&FocalConic<T>, TriadError> {
        self.members[i].focal().ok_or(TriadError::DegenerateMember { index: i, reason: "zero axis length" })
    }

    pub fn degenerate_index(&self) -> Option<usize> {
        self.members.iter().position(|m| m.is_degenerate())
    }

    /// Point the member passes through (vertex for V-triads, P otherwise).
    pub fn through_point(&self, i: usize) -> Point2<T> {
        self.p.unwrap_or_else(|| self.triangle.vertex(i))
    }

    /// Signed distance of `q` from branch `sign` (`+1`: branch of the through point).
    pub fn branch_residual(&self, i: usize, q: Point2<T>, sign: T) -> Result<T, TriadError> {
        let fc = self.member(i)?;
        Ok(match fc.kind() {
            FocalKind::Ellipse => fc.focal_residual(q),
            FocalKind::Hyperbola => fc.focal_difference(q) - sign * self.params[i],
        })
    }

    /// `+1` if `q` is nearer the through point's branch, `−1` otherwise.
    pub fn branch_of(&self, i: usize, q: Point2<T>) -> T {
        let d = q.dist(self.triangle.vertex((i + 1) % 3)) - q.dist(self.triangle.vertex((i + 2) % 3));
        if d * self.params[i] >= T::zero() {
            T::one()
        } else {
            -T::one()
        }
    }

    pub fn conics(&self) -> Result<[Conic<T>; 3], TriadError> {
        Ok([self.member(0)?.to_conic(), self.member(1)?.to_conic(), self.member(2)?.to_conic()])
    }
}

/// Builds the triad with foci `(B, C)`, `(C, A)`, `(A, B)`.
pub fn build_triad<T: Real>(t: &Triangle<T>, kind: TriadKind, p: Option<Point2<T>>) -> Result<ConicTriad<T>, TriadError> {
    let p = if kind.needs_point() {
        let p = p.ok_or(TriadError::MissingPoint(kind))?;
        if !p.is_finite() {
            return Err(GeometryError::NonFinite.into());
        }
        if t.vertices().iter().any(|v| v.dist(p) <= T::tol() * t.diameter()) {
            return Err(TriadError::PointIsVertex);
        }
        Some(p)
    } else {
        None
    };
    let mut params = [T::zero(); 3];
    let mut members = [TriadMember::Degenerate(LineEq::cartesian(T::one(), T::zero(), T::zero())); 3];
    for i in 0..3 {
        let f1 = t.vertex((i + 1) % 3);
        let f2 = t.vertex((i + 2) % 3);
        let x = p.unwrap_or_else(|| t.vertex(i));
        let (d1, d2) = (x.dist(f1), x.dist(f2));
        let side = t.side(i);
        members[i] = if kind.is_hyperbola() {
            let lam = d1 - d2;
            params[i] = lam;
            if lam.abs() <= T::tol() * side {
                let m = f1.midpoint(f2);
                let dir = (f2 - f1).perp();
                let l = line_through(m, m + dir)?;
                TriadMember::Degenerate(l)
            } else {
                let fc = FocalConic::hyperbola(f1, f2, lam.abs())
                    .map_err(|_| TriadError::DegenerateMember { index: i, reason: "through point on a sideline extension" })?;
                TriadMember::Focal(fc)
            }
        } else {
            let delta = d1 + d2;
            params[i] = delta;
            let fc = FocalConic::ellipse(f1, f2, delta)
                .map_err(|_| TriadError::DegenerateMember { index: i, reason: "through point on the focal segment" })?;
            TriadMember::Focal(fc)
        };
    }
    Ok(ConicTriad { kind, triangle: *t, p, members, params })
}

fn member_vertices<T: Real>(tr: &ConicTriad<T>, i: usize) -> Result<(Point2<T>, Point2<T>), TriadError> {
    let fc = tr.member(i)?;
    let (v1, v2) = fc.vertices();
    // the second vertex is on the through point's branch
    if fc.kind() == FocalKind::Hyperbola && tr.params[i] < T::zero() {
        Ok((v2, v1))
    } else {
        Ok((v1, v2))
    }
}

/// `A1, A2, B1, B2, C1, C2`. For ellipses `X1` is the vertex on the first
/// focus side; for hyperbolas `X2` is on the branch of the through point.
pub fn triad_vertices<T: Real>(tr: &ConicTriad<T>) -> Result<[Point2<T>; 6], TriadError> {
    let mut out = [Point2::origin(); 6];
    for i in 0..3 {
        let (v1, v2) = member_vertices(tr, i)?;
        out[2 * i] = v1;
        out[2 * i + 1] = v2;
    }
    Ok(out)
}

/// `A+, A−, B+, B−, C+, C−`: co-vertices of each member (conjugate-axis
/// endpoints for hyperbolas).
pub fn triad_covertices<T: Real>(tr: &ConicTriad<T>) -> Result<[Point2<T>; 6], TriadError> {
    let mut out = [Point2::origin(); 6];
    for i in 0..3 {
        let (p, q) = tr.member(i)?.covertices();
        out[2 * i] = p;
        out[2 * i + 1] = q;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SixPointConicReport<T = f64> {
    pub conic: Conic<T>,
    pub class: ConicClass,
    /// Residual of the point left out of the fit.
    pub residual6: T,
    pub center: Option<Point2<T>>,
    pub carnot_product: T,
    pub vertices: [Point2<T>; 6],
}

/// Fits the conic through five of the six triad vertices and measures the
/// sixth. With a degenerate member the conic is fitted through three other
/// vertices plus tangency to the base at its midpoint; the fourth other
/// vertex is the check point.
pub fn six_point_conic<T: Real>(tr: &ConicTriad<T>) -> Result<SixPointConicReport<T>, TriadError> {
    let t = &tr.triangle;
    let (conic, residual6, vertices) = match tr.degenerate_index() {
        None => {
            let v = triad_vertices(tr)?;
            let cons = [0, 1, 2, 3, 4].map(|k| FitConstraint::Point(v[k]));
            let rep = fit_conic(&cons)?;
            (rep.conic, residual(&rep.conic, v[5]), v)
        }
        Some(d) => {
            if tr.members.iter().filter(|m| m.is_degenerate()).count() > 1 {
                return Err(TriadError::DegenerateMember { index: d, reason: "more than one degenerate member" });
            }
            let (f1, f2) = t.side_endpoints(d);
            let m = f1.midpoint(f2);
            let mut v = [m; 6];
            let mut others = Vec::with_capacity(4);
            for i in (0..3).filter(|&i| i != d) {
                let (a, b) = member_vertices(tr, i)?;
                v[2 * i] = a;
                v[2 * i + 1] = b;
                others.push(a);
                others.push(b);
            }
            let cons = [
                FitConstraint::Point(others[0]),
                FitConstraint::Point(others[1]),
                FitConstraint::Point(others[2]),
                FitConstraint::Point(m),
                FitConstraint::Tangent { point: m, direction: f2 - f1 },
            ];
            let rep = fit_conic(&cons)?;
            (rep.conic, residual(&rep.conic, others[3]), v)
        }
    };
    let class = classify(&conic);
    let ctr = if class == ConicClass::Parabola { None } else { center(&conic).ok() };
    let carnot = carnot_product(t, &vertices)?;
    Ok(SixPointConicReport { conic, class, residual6, center: ctr, carnot_product: carnot, vertices })
}

fn check_on_side<T: Real>(t: &Triangle<T>, side: usize, p: Point2<T>, index: usize) -> Result<(), TriadError> {
    let l = t.sideline(side);
    if point_line_distance(p, &l) > T::tol() * T::lit(1e3) * t.diameter() {
        return Err(TriadError::PointOffSideline { index });
    }
    Ok(())
}

/// Carnot product `(AC1·AC2)/(BC1·BC2) · (BA1·BA2)/(CA1·CA2) · (CB1·CB2)/(AB1·AB2)`
/// for points given as `A1, A2, B1, B2, C1, C2` (A-points on BC, cyclically).
pub fn carnot_product<T: Real>(t: &Triangle<T>, six: &[Point2<T>; 6]) -> Result<T, TriadError> {
    let mut prod = T::one();
    for i in 0..3 {
        let (near, far) = t.side_endpoints(i);
        for k in 0..2 {
            let p = six[2 * i + k];
            check_on_side(t, i, p, 2 * i + k)?;
            prod = prod * p.dist(near) / p.dist(far);
        }
    }
    Ok(prod)
}

/// `(p1C/p1B)·(p3B/p3A)·(p2A/p2C)` for `p1 ∈ BC`, `p2 ∈ CA`, `p3 ∈ AB`.
/// Unsigned: a value of 1 is necessary but not sufficient for collinearity.
pub fn menelaus_check<T: Real>(t: &Triangle<T>, p1: Point2<T>, p2: Point2<T>, p3: Point2<T>) -> Result<T, TriadError> {
    check_on_side(t, 0, p1, 0)?;
    check_on_side(t, 1, p2, 1)?;
    check_on_side(t, 2, p3, 2)?;
    let [a, b, c] = t.vertices();
    Ok((p1.dist(c) / p1.dist(b)) * (p3.dist(b) / p3.dist(a)) * (p2.dist(a) / p2.dist(c)))
}

/// An intersection of two members with its branch signs on each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint<T = f64> {
    pub point: Point2<T>,
    pub branches: [T; 2],
}

/// All real intersections of the two members other than `i`
/// (`(E_b, E_c)` for `i = 0`, cyclically).
pub fn member_intersections<T: Real>(tr: &ConicTriad<T>, i: usize) -> Result<Vec<BranchPoint<T>>, TriadError> {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let cj = tr.member(j)?.to_conic();
    let ck = tr.member(k)?.to_conic();
    let pts = intersect_conics(&cj, &ck)?;
    Ok(pts.into_iter().map(|q| BranchPoint { point: q, branches: [tr.branch_of(j, q), tr.branch_of(k, q)] }).collect())
}

/// The named pair of intersections of each member pair, `None` where fewer
/// real points exist:
/// - V-ellipses: the two intersections `(A′, A″)`;
/// - P-ellipses: `(P, A′)`;
/// - V-hyperbolas: the two intersections on opposite branch combinations;
/// - P-hyperbolas: `(P, Q)` with `Q` on equal branches of both, preferring
///   the branches not through `P`.
pub fn pairwise_intersections<T: Real>(tr: &ConicTriad<T>) -> Result<[Option<(Point2<T>, Point2<T>)>; 3], TriadError> {
    let mut out = [None; 3];
    let scale = tr.triangle.diameter();
    let same = |a: Point2<T>, b: Point2<T>| a.dist(b) <= T::lit(1e-6) * scale;
    for (i, slot) in out.iter_mut().enumerate() {
        let pts = member_intersections(tr, i)?;
        *slot = match tr.kind {
            TriadKind::VEllipse => match pts.as_slice() {
                [x, y] => Some((x.point, y.point)),
                _ => None,
            },
            TriadKind::PEllipse => {
                let p = tr.p.expect("p-triad");
                pts.iter().find(|q| !same(q.point, p)).map(|q| (p, q.point))
            }
            TriadKind::VHyperbola => {
                let mixed: Vec<_> = pts.iter().filter(|q| q.branches[0] != q.branches[1]).collect();
                match mixed.as_slice() {
                    [x, y] => Some((x.point, y.point)),
                    _ => None,
                }
            }
            TriadKind::PHyperbola => {
                let p = tr.p.expect("p-triad");
                let mut rest: Vec<_> = pts.iter().filter(|q| !same(q.point, p) && q.branches[0] == q.branches[1]).collect();
                rest.sort_by(|x, y| x.branches[0].partial_cmp(&y.branches[0]).unwrap_or(std::cmp::Ordering::Equal));
                rest.first().map(|q| (p, q.point))
            }
        };
    }
    Ok(out)
}

/// Outcome of one numerical claim.
#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub name: String,
    pub residual: f64,
    pub bound: f64,
    pub applicable: bool,
}

impl Claim {
    pub fn new(name: impl Into<String>, residual: f64, bound: f64) -> Self {
        Claim { name: name.into(), residual, bound, applicable: true }
    }

    pub fn skipped(name: impl Into<String>) -> Self {
        Claim { name: name.into(), residual: 0.0, bound: 0.0, applicable: false }
    }

    pub fn pass(&self) -> bool {
        !self.applicable || (self.residual.is_finite() && self.residual <= self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConcurrencyReport {
    pub claims: Vec<Claim>,
}

impl ConcurrencyReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(Claim::pass)
    }

    pub fn worst(&self) -> f64 {
        self.claims.iter().filter(|c| c.applicable).map(|c| c.residual / c.bound.max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

fn chord<T: Real>(pair: Option<(Point2<T>, Point2<T>)>) -> Option<LineEq<T>> {
    pair.and_then(|(p, q)| line_through(p, q).ok())
}

/// Incidence and concurrency claims of the triad, with distances scaled by
/// the triangle diameter.
pub fn concurrency_theorems<T: Real>(tr: &ConicTriad<T>) -> Result<ConcurrencyReport, TriadError> {
    let t = &tr.triangle;
    let diam = t.diameter();
    let bound = 10.0 * tolerance::get();
    let rel = |v: T| (v / diam).to_f64_lossy();
    let mut claims = Vec::new();
    match tr.kind {
        TriadKind::VEllipse => {
            let pairs = pairwise_intersections(tr)?;
            let excenters = [CenterId::ExcenterA, CenterId::ExcenterB, CenterId::ExcenterC];
            let x20 = centers::classic_center(t, CenterId::X20)?;
            let mut lines = Vec::new();
            for i in 0..3 {
                let name = ["a", "b", "c"][i];
                match chord(pairs[i]) {
                    Some(l) => {
                        let e = centers::classic_center(t, excenters[i])?;
                        claims.push(Claim::new(format!("chord-{name}-through-excenter"), rel(point_line_distance(e, &l)), bound));
                        claims.push(Claim::new(format!("chord-{name}-through-x20"), rel(point_line_distance(x20, &l)), bound));
                        lines.push(l);
                    }
                    None => claims.push(Claim::new(format!("chord-{name}-exists"), f64::INFINITY, bound)),
                }
            }
            let side = centers::excentral_sidelines(t);
            for i in 0..3 {
                let d = line_tangency_discriminant(&tr.member(i)?.to_conic(), &side[i])?;
                let on = residual(&tr.member(i)?.to_conic(), t.vertex(i));
                claims.push(Claim::new(
                    format!("excentral-tangent-{}", ["a", "b", "c"][i]),
                    d.abs().max(on).to_f64_lossy(),
                    bound,
                ));
            }
            if t.right_angle_defect() <= T::tol() {
                let w = (0..3).map(|i| tr.member(i).map(|m| m.focal_residual(x20).abs())).collect::<Result<Vec<_>, _>>()?;
                let worst = w.into_iter().fold(T::zero(), |a, b| a.max(b));
                claims.push(Claim::new("right-triangle-through-x20", rel(worst), bound));
            } else {
                claims.push(Claim::skipped("right-triangle-through-x20"));
            }
        }
        TriadKind::VHyperbola => {
            if tr.degenerate_index().is_some() {
                claims.push(Claim::skipped("chords-through-x8"));
            } else {
                let pairs = pairwise_intersections(tr)?;
                let x8 = centers::classic_center(t, CenterId::X8)?;
                for i in 0..3 {
                    let name = ["a", "b", "c"][i];
                    match chord(pairs[i]) {
                        Some(l) => claims.push(Claim::new(format!("chord-{name}-through-x8"), rel(point_line_distance(x8, &l)), bound)),
                        // opposite-branch intersections exist only for some shapes
                        None => claims.push(Claim::skipped(format!("chord-{name}-through-x8"))),
                    }
                }
                let (outer, inner) = centers::soddy_centers(t)?;
                let on_all = |q: Point2<T>| -> Result<T, TriadError> {
                    let mut w = T::zero();
                    for i in 0..3 {
                        w = w.max(tr.member(i)?.focal_residual(q).abs());
                    }
                    Ok(w)
                };
                claims.push(Claim::new("through-x176", rel(on_all(inner)?), bound));
                match outer {
                    OuterCenter::Finite(q) => claims.push(Claim::new("through-x175", rel(on_all(q)?), bound)),
                    OuterCenter::AtInfinity(_) => claims.push(Claim::skipped("through-x175")),
                }
                let triple = triple_points(tr)?;
                let near = |q: Point2<T>| triple.iter().map(|p| p.dist(q)).fold(T::infinity(), |a, b| a.min(b));
                claims.push(Claim::new("triple-point-x176", rel(near(inner)), bound));
                match outer {
                    OuterCenter::Finite(q) => claims.push(Claim::new("triple-point-x175", rel(near(q)), bound)),
                    OuterCenter::AtInfinity(_) => claims.push(Claim::skipped("triple-point-x175")),
                }
                let ve = build_triad(t, TriadKind::VEllipse, None)?;
                let epairs = pairwise_intersections(&ve)?;
                for i in 0..3 {
                    let name = format!("through-ellipse-pair-{}", ["a", "b", "c"][i]);
                    match epairs[i] {
                        Some((p, q)) => {
                            let m = tr.member(i)?;
                            let w = m.focal_residual(p).abs().max(m.focal_residual(q).abs());
                            claims.push(Claim::new(name, rel(w), bound));
                        }
                        None => claims.push(Claim::new(name, f64::INFINITY, bound)),
                    }
                }
            }
        }
        TriadKind::PEllipse => {
            let pairs = pairwise_intersections(tr)?;
            for i in 0..3 {
                let name = format!("pair-{}-through-p", ["a", "b", "c"][i]);
                match pairs[i] {
                    Some(_) => claims.push(Claim::new(name, 0.0, bound)),
                    None => claims.push(Claim::new(name, f64::INFINITY, bound)),
                }
            }
        }
        TriadKind::PHyperbola => {
            let pe = build_triad(t, TriadKind::PEllipse, tr.p)?;
            let pairs = pairwise_intersections(&pe)?;
            for i in 0..3 {
                let name = format!("through-ellipse-point-{}", ["a", "b", "c"][i]);
                if tr.members[i].is_degenerate() {
                    claims.push(Claim::skipped(name));
                    continue;
                }
                match pairs[i] {
                    Some((_, q)) => claims.push(Claim::new(name, rel(tr.branch_residual(i, q, T::one())?.abs()), bound)),
                    None => claims.push(Claim::new(name, f64::INFINITY, bound)),
                }
            }
        }
    }
    Ok(ConcurrencyReport { claims })
}

/// Points common to all three hyperbolas (any branches).
pub fn triple_points<T: Real>(tr: &ConicTriad<T>) -> Result<Vec<Point2<T>>, TriadError> {
    let scale = tr.triangle.diameter();
    let gate = T::lit(1e-6) * scale;
    let m0 = *tr.member(0)?;
    Ok(member_intersections(tr, 0)?
        .into_iter()
        .map(|q| q.point)
        .filter(|&q| m0.focal_residual(q).abs() <= gate)
        .collect())
}

/// The common point of the three P-hyperbolas other than `P`. It lies on
/// the three branches not through `P` when those meet, otherwise on the
/// branches through `P`.
pub fn second_common_point<T: Real>(tr: &ConicTriad<T>) -> Result<Point2<T>, TriadError> {
    if tr.kind != TriadKind::PHyperbola {
        return Err(TriadError::WrongKind { expected: TriadKind::PHyperbola });
    }
    let p = tr.p.expect("p-triad");
    let scale = tr.triangle.diameter();
    let mut best: Option<(T, Point2<T>)> = None;
    for q in member_intersections(tr, 0)? {
        if q.point.dist(p) <= T::lit(1e-6) * scale {
            continue;
        }
        let mut w = T::zero();
        for i in 0..3 {
            w = w.max(tr.member(i)?.focal_residual(q.point).abs());
        }
        if best.map_or(true, |(bw, _)| w < bw) {
            best = Some((w, q.point));
        }
    }
    match best {
        Some((w, q)) if w <= T::lit(1e-6) * scale => Ok(q),
        _ => Err(TriadError::NotFound),
    }
}

/// `|A1A2|, |B1B2|, |C1C2|`.
pub fn vertex_gaps<T: Real>(tr: &ConicTriad<T>) -> Result<[T; 3], TriadError> {
    let v = triad_vertices(tr)?;
    Ok([v[0].dist(v[1]), v[2].dist(v[3]), v[4].dist(v[5])])
}

/// Largest gap minus the sum of the other two (zero when one gap is the sum).
pub fn gap_identity_residual<T: Real>(tr: &ConicTriad<T>) -> Result<T, TriadError> {
    let mut g = vertex_gaps(tr)?;
    g.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(g[2] - g[1] - g[0])
}

/// Areas of `A1B1C1` and `A2B2C2`.
pub fn equal_area_check<T: Real>(tr: &ConicTriad<T>) -> Result<(T, T), TriadError> {
    if !tr.kind.is_hyperbola() {
        return Err(TriadError::WrongKind { expected: TriadKind::PHyperbola });
    }
    let v = triad_vertices(tr)?;
    Ok((signed_area(v[0], v[2], v[4]).abs(), signed_area(v[1], v[3], v[5]).abs()))
}
