use proptest::prelude::*;
use triconic::centers::{circumcircle, soddy, OuterSoddy};
use triconic::conics::{classify, residual, ConicClass};
use triconic::geometry::{bary_to_cartesian, cartesian_to_bary, point_line_distance, reflect_about_line, Point2, Triangle};
use triconic::sampling::well_conditioned;
use triconic::triads::{build_triad, six_point_conic, triad_vertices, vertex_gaps, TriadKind};

fn triangle() -> impl Strategy<Value = Triangle> {
    prop::array::uniform6(0.0f64..1.0)
        .prop_filter_map("thin", |c| Triangle::from_coords([[c[0], c[1]], [c[2], c[3]], [c[4], c[5]]]).ok().filter(well_conditioned))
}

fn triangle_point() -> impl Strategy<Value = (Triangle, Point2)> {
    (triangle(), -0.3f64..1.3, -0.3f64..1.3).prop_filter_map("near a degenerate locus", |(t, x, y)| {
        let p = Point2::new(x, y);
        let circ = circumcircle(&t);
        let ok = (0..3).all(|i| point_line_distance(p, &t.sideline(i)) > 0.02 * t.diameter())
            && (p.dist(circ.center) - circ.radius).abs() > 0.02 * circ.radius;
        ok.then_some((t, p))
    })
}

/// Smallest singular value proxy: |det| of the 6x6 conic design matrix with
/// unit rows, after centering and scaling the points.
fn six_point_det(pts: &[Point2; 6]) -> f64 {
    let c = pts.iter().fold(Point2::new(0.0, 0.0), |a, p| a + *p) / 6.0;
    let s = pts.iter().map(|p| p.dist(c)).fold(0.0, f64::max);
    let mut m: Vec<[f64; 6]> = pts
        .iter()
        .map(|p| {
            let (x, y) = ((p.x - c.x) / s, (p.y - c.y) / s);
            let r = [x * x, x * y, y * y, x, y, 1.0];
            let n = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            r.map(|v| v / n)
        })
        .collect();
    // Gaussian elimination with partial pivoting
    let mut det = 1.0;
    for col in 0..6 {
        let piv = (col..6).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let d = m[col][col];
        det *= d;
        if d == 0.0 {
            return 0.0;
        }
        for r in col + 1..6 {
            let f = m[r][col] / d;
            for k in col..6 {
                m[r][k] -= f * m[col][k];
            }
        }
    }
    det.abs()
}

/// Same matrix with five triad vertices and a generic sixth point, to
/// show the oracle is not identically small.
fn generic_det(v: &[Point2; 6], q: Point2) -> f64 {
    six_point_det(&[v[0], v[1], v[2], v[3], v[4], q])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn barycentric_round_trip(t in triangle(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let p = Point2::new(x, y);
        let q = bary_to_cartesian(&t, cartesian_to_bary(&t, p)).unwrap();
        prop_assert!(p.dist(q) <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn reflection_is_an_involution(t in triangle(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let p = Point2::new(x, y);
        let l = t.sideline(0);
        let r = reflect_about_line(p, &l);
        prop_assert!(reflect_about_line(r, &l).dist(p) <= 1e-12);
        prop_assert!((point_line_distance(r, &l) - point_line_distance(p, &l)).abs() <= 1e-12);
    }

    #[test]
    fn v_triad_vertices_lie_on_a_conic(t in triangle()) {
        for kind in [TriadKind::VEllipse, TriadKind::VHyperbola] {
            let tr = build_triad(&t, kind, None).unwrap();
            let v = triad_vertices(&tr).unwrap();
            prop_assert!(six_point_det(&v) <= 1e-9, "{kind}: {}", six_point_det(&v));
            prop_assert!(six_point_conic(&tr).unwrap().residual6 <= 1e-8);
        }
    }

    #[test]
    fn p_triad_vertices_lie_on_a_conic((t, p) in triangle_point()) {
        for kind in [TriadKind::PEllipse, TriadKind::PHyperbola] {
            let tr = build_triad(&t, kind, Some(p)).unwrap();
            let v = triad_vertices(&tr).unwrap();
            let d = six_point_det(&v);
            prop_assert!(d <= 1e-9, "{kind}: {d}");
            let rep = six_point_conic(&tr).unwrap();
            for q in v {
                prop_assert!(residual(&rep.conic, q) <= 1e-8);
            }
        }
    }

    #[test]
    fn oracle_detects_off_conic_points(t in triangle()) {
        let v = triad_vertices(&build_triad(&t, TriadKind::VEllipse, None).unwrap()).unwrap();
        let q = t.centroid() + Point2::new(0.37, 0.21) * t.diameter();
        let rep = six_point_conic(&build_triad(&t, TriadKind::VEllipse, None).unwrap()).unwrap();
        prop_assume!(residual(&rep.conic, q) > 1e-3);
        prop_assert!(generic_det(&v, q) > 1e-12);
    }

    #[test]
    fn vertices_lie_on_sidelines((t, p) in triangle_point()) {
        for (kind, p) in [(TriadKind::VEllipse, None), (TriadKind::PEllipse, Some(p)), (TriadKind::VHyperbola, None), (TriadKind::PHyperbola, Some(p))] {
            let v = triad_vertices(&build_triad(&t, kind, p).unwrap()).unwrap();
            for (k, q) in v.iter().enumerate() {
                prop_assert!(point_line_distance(*q, &t.sideline(k / 2)) <= 1e-12 * t.diameter());
            }
        }
    }

    #[test]
    fn hyperbola_gaps_satisfy_the_sum_identity((t, p) in triangle_point()) {
        let mut g = vertex_gaps(&build_triad(&t, TriadKind::PHyperbola, Some(p)).unwrap()).unwrap();
        g.sort_by(f64::total_cmp);
        prop_assert!((g[2] - g[0] - g[1]).abs() <= 1e-12 * t.diameter());
    }

    #[test]
    fn class_is_similarity_invariant((t, p) in triangle_point(), k in 0.2f64..5.0, a in 0.0f64..6.28, dx in -3.0f64..3.0) {
        let map = |q: Point2| q.rotate(a) * k + Point2::new(dx, -dx);
        let t2 = t.map_vertices(map).unwrap();
        let c1 = six_point_conic(&build_triad(&t, TriadKind::PEllipse, Some(p)).unwrap()).unwrap();
        let c2 = six_point_conic(&build_triad(&t2, TriadKind::PEllipse, Some(map(p))).unwrap()).unwrap();
        // near class boundaries either side may be reported
        let d = triconic::conics::relative_discriminant(&c1.conic).abs();
        prop_assume!(d > 1e-6 && !c1.class.is_degenerate());
        prop_assert_eq!(c1.class, c2.class);
    }

    #[test]
    fn soddy_curvatures_satisfy_descartes(t in triangle()) {
        let s = soddy(&t).unwrap();
        let k: Vec<f64> = s.kissing.iter().map(|c| 1.0 / c.radius).collect();
        let ks = [k[0], k[1], k[2], 1.0 / s.inner.radius];
        let lhs = ks.iter().sum::<f64>().powi(2);
        let rhs = 2.0 * ks.iter().map(|v| v * v).sum::<f64>();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs);
        for c in s.kissing {
            prop_assert!((s.inner.center.dist(c.center) - c.radius - s.inner.radius).abs() <= 1e-9 * t.diameter());
        }
        if let OuterSoddy::Containing(o) | OuterSoddy::External(o) = s.outer {
            let ko = if matches!(s.outer, OuterSoddy::Containing(_)) { -1.0 / o.radius } else { 1.0 / o.radius };
            let ks = [k[0], k[1], k[2], ko];
            let lhs = ks.iter().sum::<f64>().powi(2);
            let rhs = 2.0 * ks.iter().map(|v| v * v).sum::<f64>();
            prop_assert!((lhs - rhs).abs() <= 1e-8 * rhs);
        }
    }
}

#[test]
fn equilateral_p_ellipse_at_center_is_a_circle() {
    let t: Triangle = Triangle::equilateral(1.0);
    let rep = six_point_conic(&build_triad(&t, TriadKind::PEllipse, Some(t.centroid())).unwrap()).unwrap();
    assert_eq!(rep.class, ConicClass::Circle);
    assert_eq!(classify(&rep.conic), ConicClass::Circle);
}
