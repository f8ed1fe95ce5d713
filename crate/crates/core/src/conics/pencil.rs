use super::{conic_line_intersection, residual, Conic, ConicError};
use crate::geometry::{LineEq, Point2};
use crate::linalg::{add3, adj3, det3, frobenius3, mat_vec3, quad_form, real_cubic_roots, scale3, solve2, Mat3, Vec3};
use crate::scalar::Real;

/// Splits a singular symmetric matrix into two real lines `g, h` with
/// `D ∝ g hᵀ + h gᵀ`. Returns `None` when the lines are complex.
pub fn split_degenerate<T: Real>(d: &Mat3<T>) -> Option<(Vec3<T>, Vec3<T>)> {
    let n = frobenius3(d);
    if n == T::zero() {
        return None;
    }
    let d = scale3(d, T::one() / n);
    let b = adj3(&d);
    let i = (0..3).max_by(|&x, &y| b[x][x].abs().partial_cmp(&b[y][y].abs()).unwrap()).unwrap();
    if b[i][i].abs() <= T::lit(1e-10) {
        // (near) double line: D ≈ ±g gᵀ
        let j = (0..3).max_by(|&x, &y| d[x][x].abs().partial_cmp(&d[y][y].abs()).unwrap()).unwrap();
        let s = d[j][j].abs().sqrt();
        if s == T::zero() {
            return None;
        }
        let g = [d[j][0] / s, d[j][1] / s, d[j][2] / s];
        return Some((g, g));
    }
    if b[i][i] > T::zero() {
        return None;
    }
    let beta = (-b[i][i]).sqrt();
    let p = [b[0][i] / beta, b[1][i] / beta, b[2][i] / beta];
    let px = [[T::zero(), -p[2], p[1]], [p[2], T::zero(), -p[0]], [-p[1], p[0], T::zero()]];
    let c = add3(&d, &px);
    let mut best = (0, 0);
    for r in 0..3 {
        for k in 0..3 {
            if c[r][k].abs() > c[best.0][best.1].abs() {
                best = (r, k);
            }
        }
    }
    let (r, k) = best;
    let g = c[r];
    let h = [c[0][k], c[1][k], c[2][k]];
    Some((g, h))
}

fn polish<T: Real>(a: &Mat3<T>, b: &Mat3<T>, mut p: Point2<T>) -> Point2<T> {
    let f = |q: Point2<T>| {
        let h = q.homogeneous();
        [quad_form(a, &h), quad_form(b, &h)]
    };
    let size = |v: [T; 2]| v[0].abs().max(v[1].abs());
    for _ in 0..6 {
        let v = f(p);
        if size(v) == T::zero() {
            break;
        }
        let h = p.homogeneous();
        let ga = mat_vec3(a, &h);
        let gb = mat_vec3(b, &h);
        let two = T::lit(2.0);
        let Some(step) = solve2(two * ga[0], two * ga[1], two * gb[0], two * gb[1], [-v[0], -v[1]]) else {
            break;
        };
        let cand = Point2::new(p.x + step[0], p.y + step[1]);
        if cand.is_finite() && size(f(cand)) < size(v) {
            p = cand;
        } else {
            break;
        }
    }
    p
}

/// Real intersection points of two Cartesian conics via a degenerate member
/// of their pencil. Points are Newton-polished and deduplicated.
pub fn intersect_conics<T: Real>(c1: &Conic<T>, c2: &Conic<T>) -> Result<Vec<Point2<T>>, ConicError> {
    let c1 = c1.to_cartesian();
    let c2 = c2.to_cartesian();
    let a = *c1.matrix();
    let b = *c2.matrix();
    let da = det3(&a);
    let db = det3(&b);
    let k1 = trace_prod(&adj3(&a), &b);
    let k2 = trace_prod(&a, &adj3(&b));
    // det(s a + t b) = s³ da + s² t k1 + s t² k2 + t³ db
    let members: Vec<Mat3<T>> = if da.abs() >= db.abs() {
        real_cubic_roots(da, k1, k2, db).into_iter().map(|s| add3(&scale3(&a, s), &b)).collect()
    } else {
        real_cubic_roots(db, k2, k1, da).into_iter().map(|t| add3(&a, &scale3(&b, t))).collect()
    };
    let mut found: Vec<Point2<T>> = Vec::new();
    let gate = T::lit(1e-7);
    for d in members {
        let Some((g, h)) = split_degenerate(&d) else { continue };
        for line in [g, h] {
            if line[0].abs().max(line[1].abs()) <= T::lit(1e-12) * line[2].abs() {
                continue;
            }
            let l = LineEq::cartesian(line[0], line[1], line[2]);
            let pts = match conic_line_intersection(&c1, &l) {
                Ok(p) => p,
                Err(ConicError::LineOnConic) => match conic_line_intersection(&c2, &l) {
                    Ok(p) => p,
                    Err(_) => continue,
                },
                Err(e) => return Err(e),
            };
            for p in pts {
                let q = polish(&a, &b, p);
                if residual(&c1, q) > gate || residual(&c2, q) > gate {
                    continue;
                }
                let tol = T::lit(1e-7) * (T::one() + q.norm());
                if !found.iter().any(|f| f.dist(q) <= tol) {
                    found.push(q);
                }
            }
        }
    }
    Ok(found)
}

fn trace_prod<T: Real>(x: &Mat3<T>, y: &Mat3<T>) -> T {
    let mut s = T::zero();
    for i in 0..3 {
        for k in 0..3 {
            s = s + x[i][k] * y[k][i];
        }
    }
    s
}
