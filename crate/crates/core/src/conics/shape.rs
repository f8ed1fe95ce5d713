use super::{center, Conic, ConicError};
use crate::geometry::Point2;
use crate::linalg::quad_form;
use crate::scalar::{sq, Real};

/// Axes of a real central conic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicShape<T = f64> {
    pub center: Point2<T>,
    /// Semi-major axis for ellipses, semi-transverse axis for hyperbolas.
    pub semi_major: T,
    /// Semi-minor axis for ellipses, semi-conjugate axis for hyperbolas.
    pub semi_minor: T,
    /// Unit direction of the major (transverse) axis.
    pub major_direction: Point2<T>,
    pub is_hyperbola: bool,
}

/// Principal axes of a central, nondegenerate, real conic.
pub fn conic_shape<T: Real>(c: &Conic<T>) -> Result<ConicShape<T>, ConicError> {
    let cart = c.to_cartesian();
    let ctr = center(&cart)?;
    let m = cart.matrix();
    let f = quad_form(m, &ctr.homogeneous());
    let (a, b, cc) = (m[0][0], m[0][1], m[1][1]);
    // eigen-decomposition of [[a, b], [b, cc]]
    let mean = (a + cc) * T::lit(0.5);
    let rad = (sq((a - cc) * T::lit(0.5)) + sq(b)).sqrt();
    let l1 = mean + rad;
    let l2 = mean - rad;
    let theta = T::lit(0.5) * (T::lit(2.0) * b).atan2(a - cc);
    let e1 = Point2::new(theta.cos(), theta.sin());
    let e2 = e1.perp();
    // λ1 u² + λ2 v² + f = 0
    let s1 = -f / l1;
    let s2 = -f / l2;
    if !(s1.is_finite() && s2.is_finite()) || f == T::zero() {
        return Err(ConicError::NoFiniteCenter);
    }
    let shape = match (s1 > T::zero(), s2 > T::zero()) {
        (true, true) => {
            if s1 >= s2 {
                ConicShape { center: ctr, semi_major: s1.sqrt(), semi_minor: s2.sqrt(), major_direction: e1, is_hyperbola: false }
            } else {
                ConicShape { center: ctr, semi_major: s2.sqrt(), semi_minor: s1.sqrt(), major_direction: e2, is_hyperbola: false }
            }
        }
        (true, false) => ConicShape {
            center: ctr,
            semi_major: s1.sqrt(),
            semi_minor: (-s2).sqrt(),
            major_direction: e1,
            is_hyperbola: true,
        },
        (false, true) => ConicShape {
            center: ctr,
            semi_major: s2.sqrt(),
            semi_minor: (-s1).sqrt(),
            major_direction: e2,
            is_hyperbola: true,
        },
        (false, false) => return Err(ConicError::NoFiniteCenter),
    };
    Ok(shape)
}

#[cfg(test)]
mod tests {
    use super::super::FocalConic;
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_focal_parameters() {
        let f1 = Point2::new(0.3, -0.4);
        let f2 = Point2::new(2.1, 0.8);
        for fc in [FocalConic::<f64>::ellipse(f1, f2, 3.0).unwrap(), FocalConic::hyperbola(f1, f2, 1.2).unwrap()] {
            let s = conic_shape(&fc.to_conic()).unwrap();
            assert_relative_eq!(s.semi_major, fc.alpha(), epsilon = 1e-12);
            assert_relative_eq!(s.semi_minor, fc.beta(), epsilon = 1e-12);
            assert_relative_eq!(s.major_direction.cross(fc.axis_direction()).abs(), 0.0, epsilon = 1e-12);
            assert_eq!(s.is_hyperbola, fc.kind() == super::super::FocalKind::Hyperbola);
        }
    }
}
