use super::{residual, Conic, ConicError};
use crate::geometry::Point2;
use crate::linalg::{frobenius3, jacobi_svd, mat_vec3, mul3, transpose3, Mat3};
use crate::scalar::Real;

/// Linear condition on the six conic coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitConstraint<T = f64> {
    /// The conic passes through the point.
    Point(Point2<T>),
    /// The conic is tangent at `point` to the line with the given direction
    /// (the point itself is not imposed).
    Tangent { point: Point2<T>, direction: Point2<T> },
}

impl<T: Real> FitConstraint<T> {
    fn row(&self) -> [T; 6] {
        let h = T::lit(0.5);
        match *self {
            FitConstraint::Point(p) => [p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, T::one()],
            FitConstraint::Tangent { point: p, direction: d } => {
                [p.x * d.x, (p.y * d.x + p.x * d.y) * h, p.y * d.y, d.x * h, d.y * h, T::zero()]
            }
        }
    }

    fn point(&self) -> Point2<T> {
        match *self {
            FitConstraint::Point(p) => p,
            FitConstraint::Tangent { point, .. } => point,
        }
    }

    fn mapped(&self, k: T, c: Point2<T>) -> Self {
        match *self {
            FitConstraint::Point(p) => FitConstraint::Point((p - c) * k),
            FitConstraint::Tangent { point, direction } => {
                FitConstraint::Tangent { point: (point - c) * k, direction: direction.normalized() }
            }
        }
    }
}

/// Normalized violation of a constraint by a Cartesian conic.
pub fn constraint_residual<T: Real>(c: &Conic<T>, k: &FitConstraint<T>) -> T {
    match *k {
        FitConstraint::Point(p) => residual(c, p),
        FitConstraint::Tangent { point, direction } => {
            let m = c.to_cartesian();
            let g = mat_vec3(m.matrix(), &point.homogeneous());
            let d = direction.normalized();
            (g[0] * d.x + g[1] * d.y).abs() / (frobenius3(m.matrix()) * (point.norm_sq() + T::one()).sqrt())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport<T = f64> {
    pub conic: Conic<T>,
    /// Singular values of the normalized 5x6 design matrix, descending.
    pub singular_values: [T; 6],
}

impl<T: Real> FitReport<T> {
    /// `σ5 / σ1`: small values signal an ill-determined conic.
    pub fn condition_ratio(&self) -> T {
        self.singular_values[4] / self.singular_values[0]
    }
}

/// Threshold on `σ5 / σ1` below which the constraints do not determine a unique conic.
pub const RANK_RATIO: f64 = 1e-8;

/// Conic through five constraints, via the right null vector of the design
/// matrix after a similarity normalization of the data.
pub fn fit_conic<T: Real>(cons: &[FitConstraint<T>; 5]) -> Result<FitReport<T>, ConicError> {
    fit_rows(cons, RANK_RATIO)
}

/// Least-squares conic through five or more points: the right singular
/// vector of the smallest singular value. `min_ratio` bounds `σ5 / σ1`.
pub fn fit_conic_lsq<T: Real>(pts: &[Point2<T>], min_ratio: f64) -> Result<FitReport<T>, ConicError> {
    if pts.len() < 5 {
        return Err(ConicError::RankDeficient { ratio: 0.0 });
    }
    let cons: Vec<FitConstraint<T>> = pts.iter().map(|&p| FitConstraint::Point(p)).collect();
    fit_rows(&cons, min_ratio)
}

fn fit_rows<T: Real>(cons: &[FitConstraint<T>], min_ratio: f64) -> Result<FitReport<T>, ConicError> {
    let n = T::lit(cons.len() as f64);
    let centroid = cons.iter().fold(Point2::origin(), |acc, c| acc + c.point()) / n;
    let spread = cons.iter().fold(T::zero(), |acc, c| acc + c.point().dist(centroid)) / n;
    if !(spread.is_finite() && centroid.is_finite()) {
        return Err(ConicError::InvalidMatrix);
    }
    let k = if spread > T::zero() { T::lit(2f64.sqrt()) / spread } else { T::one() };
    let rows: Vec<[T; 6]> = cons.iter().map(|c| c.mapped(k, centroid).row()).collect();
    let svd = jacobi_svd(&rows);
    let sv = svd.values;
    if sv[0] == T::zero() || sv[4] <= T::lit(min_ratio) * sv[0] {
        return Err(ConicError::RankDeficient { ratio: (sv[4] / sv[0]).to_f64_lossy() });
    }
    let v = svd.vectors[5];
    let h = T::lit(0.5);
    let mn: Mat3<T> = [[v[0], v[1] * h, v[3] * h], [v[1] * h, v[2], v[4] * h], [v[3] * h, v[4] * h, v[5]]];
    // p' = k (p − c)  =>  m = Hᵀ m' H
    let hm = [[k, T::zero(), -k * centroid.x], [T::zero(), k, -k * centroid.y], [T::zero(), T::zero(), T::one()]];
    let m = mul3(&transpose3(&hm), &mul3(&mn, &hm));
    let conic = Conic::cartesian(m)?;
    Ok(FitReport { conic, singular_values: [sv[0], sv[1], sv[2], sv[3], sv[4], sv[5]] })
}

/// Conic through five points.
pub fn fit_conic_5pts<T: Real>(pts: &[Point2<T>; 5]) -> Result<Conic<T>, ConicError> {
    let cons = pts.map(FitConstraint::Point);
    fit_conic(&cons).map(|r| r.conic)
}

#[cfg(test)]
mod tests {
    use super::super::{center, classify, ConicClass};
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_circle_from_five_points() {
        let pts = [0.1, 0.9, 2.0, 3.5, 5.0].map(|t: f64| Point2::new(t.cos(), t.sin()));
        let c = fit_conic_5pts(&pts).unwrap();
        let k = c.coefficients();
        assert_relative_eq!(k[0] / k[5], -1.0, epsilon = 1e-12);
        assert_relative_eq!(k[2] / k[5], -1.0, epsilon = 1e-12);
        assert!(k[1].abs() < 1e-12 && k[3].abs() < 1e-12 && k[4].abs() < 1e-12);
        assert_eq!(classify(&c), ConicClass::Circle);
    }

    #[test]
    fn four_collinear_points_are_rank_deficient() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (0.0, 1.0)].map(|(x, y)| Point2::new(x, y));
        assert!(matches!(fit_conic_5pts(&pts), Err(ConicError::RankDeficient { .. })));
    }

    #[test]
    fn excircle_tangency_points_of_right_triangle() {
        let six = [(6.0, 0.0), (-2.0, 0.0), (0.0, -3.0), (0.0, 6.0), (-0.8, 3.6), (4.8, -0.6)]
            .map(|(x, y)| Point2::new(x, y));
        let c = fit_conic_5pts(&[six[0], six[1], six[2], six[3], six[4]]).unwrap();
        assert!(residual(&c, six[5]) < 1e-12);
        for p in six.iter().take(5) {
            assert!(residual(&c, *p) < 1e-12);
        }
        assert_eq!(classify(&c), ConicClass::DegenerateTwoLines);
        let ctr = center(&c).unwrap();
        assert_relative_eq!(ctr.x, -3.6, epsilon = 1e-9);
        assert_relative_eq!(ctr.y, -4.8, epsilon = 1e-9);
    }

    #[test]
    fn tangency_constraint() {
        // circle x² + y² = 1 tangent to y = 1 at (0, 1)
        let cons = [
            FitConstraint::Point(Point2::new(1.0, 0.0)),
            FitConstraint::Point(Point2::new(-1.0, 0.0)),
            FitConstraint::Point(Point2::new(0.6, -0.8)),
            FitConstraint::Point(Point2::new(0.0, 1.0)),
            FitConstraint::Tangent { point: Point2::new(0.0, 1.0), direction: Point2::new(1.0, 0.0) },
        ];
        let r = fit_conic(&cons).unwrap();
        assert_eq!(classify(&r.conic), ConicClass::Circle);
        assert!(constraint_residual(&r.conic, &cons[4]) < 1e-14);
    }
}
