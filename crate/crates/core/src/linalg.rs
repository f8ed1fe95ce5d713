//! Small dense linear algebra: 3x3 matrices, 2x2 solves, one-sided Jacobi SVD
//! and real polynomial roots up to degree three.

use crate::scalar::{sq, Real};

pub type Vec3<T> = [T; 3];
pub type Mat3<T> = [[T; 3]; 3];

pub fn zero3<T: Real>() -> Mat3<T> {
    [[T::zero(); 3]; 3]
}

pub fn identity3<T: Real>() -> Mat3<T> {
    let mut m = zero3();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn det3<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Classical adjugate (transpose of the cofactor matrix).
pub fn adj3<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

pub fn inverse3<T: Real>(m: &Mat3<T>) -> Option<Mat3<T>> {
    let d = det3(m);
    if d == T::zero() || !d.is_finite() {
        return None;
    }
    Some(scale3(&adj3(m), T::one() / d))
}

pub fn transpose3<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let mut t = zero3();
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

pub fn mul3<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut r = zero3();
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = (0..3).fold(T::zero(), |acc, k| acc + a[i][k] * b[k][j]);
        }
    }
    r
}

pub fn add3<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut r = *a;
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = r[i][j] + b[i][j];
        }
    }
    r
}

pub fn scale3<T: Real>(a: &Mat3<T>, k: T) -> Mat3<T> {
    let mut r = *a;
    for row in r.iter_mut() {
        for v in row.iter_mut() {
            *v = *v * k;
        }
    }
    r
}

pub fn mat_vec3<T: Real>(m: &Mat3<T>, v: &Vec3<T>) -> Vec3<T> {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

pub fn dot3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3<T: Real>(a: &Vec3<T>) -> T {
    dot3(a, a).sqrt()
}

/// `vᵀ m v`.
pub fn quad_form<T: Real>(m: &Mat3<T>, v: &Vec3<T>) -> T {
    dot3(v, &mat_vec3(m, v))
}

pub fn frobenius3<T: Real>(m: &Mat3<T>) -> T {
    m.iter().flatten().fold(T::zero(), |acc, v| acc + sq(*v)).sqrt()
}

pub fn trace3<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] + m[1][1] + m[2][2]
}

/// Solves `[[a, b], [c, d]] x = r` by Cramer's rule; `None` when singular.
pub fn solve2<T: Real>(a: T, b: T, c: T, d: T, r: [T; 2]) -> Option<[T; 2]> {
    let det = a * d - b * c;
    let scale = (a.abs() + b.abs()) * (c.abs() + d.abs());
    if det == T::zero() || det.abs() <= T::epsilon() * scale {
        return None;
    }
    Some([(r[0] * d - b * r[1]) / det, (a * r[1] - r[0] * c) / det])
}

/// Right singular system of a row-major matrix with `N` columns.
#[derive(Debug, Clone)]
pub struct Svd<T, const N: usize> {
    /// Singular values, descending.
    pub values: [T; N],
    /// `vectors[k]` is the right singular vector for `values[k]`.
    pub vectors: [[T; N]; N],
}

/// One-sided (Hestenes) Jacobi SVD. Only the singular values and right
/// singular vectors are returned. Works for any number of rows; missing rows
/// behave as zero rows.
pub fn jacobi_svd<T: Real, const N: usize>(rows: &[[T; N]]) -> Svd<T, N> {
    let m = rows.len();
    let mut a: Vec<Vec<T>> = (0..N).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut v = [[T::zero(); N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let eps = T::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..N {
            for q in (p + 1)..N {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = T::zero();
                for i in 0..m {
                    alpha = alpha + sq(a[p][i]);
                    beta = beta + sq(a[q][i]);
                    gamma = gamma + a[p][i] * a[q][i];
                }
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + sq(zeta)).sqrt());
                let c = T::one() / (T::one() + sq(t)).sqrt();
                let s = c * t;
                for i in 0..m {
                    let ap = a[p][i];
                    let aq = a[q][i];
                    a[p][i] = c * ap - s * aq;
                    a[q][i] = s * ap + c * aq;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<T> = a.iter().map(|col| col.iter().fold(T::zero(), |acc, x| acc + sq(*x)).sqrt()).collect();
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let mut values = [T::zero(); N];
    let mut vectors = [[T::zero(); N]; N];
    for (k, &j) in order.iter().enumerate() {
        values[k] = norms[j];
        for i in 0..N {
            vectors[k][i] = v[i][j];
        }
    }
    Svd { values, vectors }
}

/// Real roots of `c3 t³ + c2 t² + c1 t + c0`, polished by Newton steps.
/// Lower-degree polynomials are handled when leading coefficients vanish.
pub fn real_cubic_roots<T: Real>(c3: T, c2: T, c1: T, c0: T) -> Vec<T> {
    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    if scale == T::zero() {
        return Vec::new();
    }
    let (c3, c2, c1, c0) = (c3 / scale, c2 / scale, c1 / scale, c0 / scale);
    if c3.abs() <= T::epsilon() * T::lit(16.0) {
        return real_quadratic_roots(c2, c1, c0);
    }
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    // depressed cubic t = y - a/3: y³ + p y + q = 0
    let third = T::one() / T::lit(3.0);
    let p = b - sq(a) * third;
    let q = T::lit(2.0) * a * a * a / T::lit(27.0) - a * b * third + c;
    let shift = a * third;
    let disc = sq(q) * T::lit(0.25) + p * p * p / T::lit(27.0);
    let mut roots = Vec::with_capacity(3);
    if disc > T::zero() {
        let sd = disc.sqrt();
        let u = (-q * T::lit(0.5) + sd).cbrt();
        let w = (-q * T::lit(0.5) - sd).cbrt();
        roots.push(u + w - shift);
    } else if p == T::zero() {
        roots.push(-shift);
    } else {
        let r = (-p * third).sqrt();
        let arg = (-q * T::lit(0.5) / (r * r * r)).max(-T::one()).min(T::one());
        let phi = arg.acos() * third;
        let two_pi_3 = T::lit(2.0) * T::PI() * third;
        for k in 0..3 {
            let kk = T::lit(k as f64);
            roots.push(T::lit(2.0) * r * (phi - kk * two_pi_3).cos() - shift);
        }
    }
    let f = |t: T| ((t + a) * t + b) * t + c;
    let df = |t: T| (T::lit(3.0) * t + T::lit(2.0) * a) * t + b;
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = df(*r);
            if d == T::zero() {
                break;
            }
            let step = f(*r) / d;
            let cand = *r - step;
            if f(cand).abs() <= f(*r).abs() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    roots
}

/// Real roots of `a t² + b t + c` using the cancellation-free formula.
pub fn real_quadratic_roots<T: Real>(a: T, b: T, c: T) -> Vec<T> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == T::zero() {
        return Vec::new();
    }
    if a.abs() <= T::epsilon() * scale {
        if b.abs() <= T::epsilon() * scale {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - T::lit(4.0) * a * c;
    if disc < T::zero() {
        if disc.abs() <= T::epsilon() * T::lit(8.0) * b * b.max(a * c * T::lit(4.0)).abs() {
            return vec![-b / (T::lit(2.0) * a)];
        }
        return Vec::new();
    }
    let q = -(b + b.signum() * disc.sqrt()) * T::lit(0.5);
    let mut r = if q == T::zero() { vec![T::zero(), T::zero()] } else { vec![q / a, c / q] };
    r.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_times_matrix_is_det_identity() {
        let m: Mat3<f64> = [[2.0, 1.0, 0.5], [1.0, 3.0, -1.0], [0.5, -1.0, 4.0]];
        let p = mul3(&m, &adj3(&m));
        let d = det3(&m);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { d } else { 0.0 };
                assert!((p[i][j] - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn svd_recovers_nullspace() {
        // rows orthogonal to (1, -2, 3, 0, 1, -1)
        let n: [f64; 6] = [1.0, -2.0, 3.0, 0.0, 1.0, -1.0];
        let mut rows: Vec<[f64; 6]> = Vec::new();
        let basis = [
            [2.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 3.0, 2.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0, 1.0],
            [1.0, 0.0, 0.0, 5.0, 0.0, 1.0],
        ];
        rows.extend_from_slice(&basis);
        let svd = jacobi_svd(&rows);
        let v = svd.vectors[5];
        let k = v[0] / n[0];
        for i in 0..6 {
            assert!((v[i] - k * n[i]).abs() < 1e-12, "{:?}", v);
        }
        assert!(svd.values[5] < 1e-12);
        assert!(svd.values[4] > 1e-3);
    }

    #[test]
    fn cubic_roots() {
        let r: Vec<f64> = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12);
        }
        let r: Vec<f64> = real_cubic_roots(1.0, 0.0, 1.0, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] * r[0] * r[0] + r[0] + 1.0).abs() < 1e-14);
        let r: Vec<f64> = real_cubic_roots(0.0, 1.0, -3.0, 2.0);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1.0).abs() < 1e-14 && (r[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn quadratic_without_cancellation() {
        let r: Vec<f64> = real_quadratic_roots(1.0, -1e8, 1.0);
        assert!((r[0] - 1e-8).abs() < 1e-20);
    }
}
