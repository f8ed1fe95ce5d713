//! Small-dimension minimizers used by the special-point searches.

/// Result of a local minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<const N: usize> {
    pub x: [f64; N],
    pub value: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub max_iter: usize,
    /// Stop once the simplex value spread drops below this.
    pub f_tol: f64,
    /// Stop once the simplex diameter drops below this.
    pub x_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead { max_iter: 200, f_tol: 1e-32, x_tol: 1e-14 }
    }
}

fn axpy<const N: usize>(a: &[f64; N], k: f64, b: &[f64; N], c: &[f64; N]) -> [f64; N] {
    // a + k (b - c)
    let mut out = *a;
    for i in 0..N {
        out[i] += k * (b[i] - c[i]);
    }
    out
}

fn clean(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

impl NelderMead {
    /// Standard Nelder–Mead (reflection 1, expansion 2, contraction 1/2,
    /// shrink 1/2) from an axis-aligned initial simplex with edge `step`.
    pub fn minimize<const N: usize, F>(&self, f: F, x0: [f64; N], step: f64) -> Minimum<N>
    where
        F: Fn(&[f64; N]) -> f64,
    {
        let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
        simplex.push((x0, clean(f(&x0))));
        for i in 0..N {
            let mut x = x0;
            x[i] += step;
            simplex.push((x, clean(f(&x))));
        }
        let mut iterations = 0;
        while iterations < self.max_iter {
            iterations += 1;
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[N].1;
            let diam = simplex[1..]
                .iter()
                .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if (worst - best).abs() <= self.f_tol || diam <= self.x_tol {
                break;
            }
            let mut centroid = [0.0; N];
            for (x, _) in &simplex[..N] {
                for i in 0..N {
                    centroid[i] += x[i] / N as f64;
                }
            }
            let xw = simplex[N].0;
            let xr = axpy(&centroid, 1.0, &centroid, &xw);
            let fr = clean(f(&xr));
            if fr < best {
                let xe = axpy(&centroid, 2.0, &centroid, &xw);
                let fe = clean(f(&xe));
                simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[N - 1].1 {
                simplex[N] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst {
                let xc = axpy(&centroid, 0.5, &xr, &centroid);
                (xc, clean(f(&xc)))
            } else {
                let xc = axpy(&centroid, 0.5, &xw, &centroid);
                (xc, clean(f(&xc)))
            };
            if fc < worst.min(fr) {
                simplex[N] = (xc, fc);
                continue;
            }
            let x_best = simplex[0].0;
            for v in simplex.iter_mut().skip(1) {
                let x = axpy(&x_best, 0.5, &v.0, &x_best);
                *v = (x, clean(f(&x)));
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        Minimum { x: simplex[0].0, value: simplex[0].1, iterations }
    }
}

/// Damped Gauss–Newton on a residual vector with forward-difference
/// Jacobian. The objective is the sum of squared residuals.
pub fn gauss_newton<const N: usize, const M: usize, F>(r: F, x0: [f64; N], max_iter: usize) -> Minimum<N>
where
    F: Fn(&[f64; N]) -> [f64; M],
{
    let cost = |v: &[f64; M]| v.iter().map(|e| e * e).sum::<f64>();
    let mut x = x0;
    let mut rv = r(&x);
    let mut fx = clean(cost(&rv));
    let mut mu = 1e-12;
    let mut iterations = 0;
    while iterations < max_iter && fx > 0.0 {
        iterations += 1;
        let mut jac = [[0.0; N]; M];
        for j in 0..N {
            let h = 1e-7 * x[j].abs().max(1.0);
            let mut xh = x;
            xh[j] += h;
            let rh = r(&xh);
            for i in 0..M {
                jac[i][j] = (rh[i] - rv[i]) / h;
            }
        }
        // normal equations (JᵀJ + μ diag) δ = -Jᵀr
        let mut jtj = vec![vec![0.0; N]; N];
        let mut jtr = vec![0.0; N];
        for i in 0..M {
            for p in 0..N {
                jtr[p] += jac[i][p] * rv[i];
                for q in 0..N {
                    jtj[p][q] += jac[i][p] * jac[i][q];
                }
            }
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for p in 0..N {
                a[p][p] += mu * jtj[p][p].max(1e-300);
            }
            let Some(delta) = solve_dense(a, jtr.iter().map(|v| -v).collect()) else {
                mu *= 10.0;
                continue;
            };
            let mut xn = x;
            for p in 0..N {
                xn[p] += delta[p];
            }
            let rn = r(&xn);
            let fnew = clean(cost(&rn));
            if fnew < fx {
                x = xn;
                rv = rn;
                fx = fnew;
                mu = (mu * 0.1).max(1e-15);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    Minimum { x, value: fx, iterations }
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let k = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= k * a[col][c];
            }
            b[row] -= k * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Bisection on a sign change of `f` in `[lo, hi]`, returning the endpoint
/// with the smaller `|f|`. `None` if there is no sign change.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    let mut fh = fhi;
    for _ in 0..200 {
        if (hi - lo).abs() <= x_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fh = fm;
        }
    }
    Some(if flo.abs() <= fh.abs() { lo } else { hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nelder_mead_rosenbrock() {
        let nm = NelderMead { max_iter: 2000, ..Default::default() };
        let m = nm.minimize(|x: &[f64; 2]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2), [-1.2, 1.0], 0.5);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn gauss_newton_polishes_rosenbrock() {
        let m = gauss_newton(|x: &[f64; 2]| [1.0 - x[0], 10.0 * (x[1] - x[0] * x[0])], [0.8, 0.5], 100);
        assert!(m.value < 1e-20, "{m:?}");
    }

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }
}
