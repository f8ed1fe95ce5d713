use triconic::conics::classify;
use triconic::geometry::{Point2, Triangle};
use triconic::loci::{classify_driver, region_map, trace_zero_set, BBox, RegionKind};
use triconic::render::{emit_ppm, emit_svg};
use triconic::scene::Scene;
use triconic::triads::{build_triad, six_point_conic, TriadKind};
use triconic::verification::{replay, run_proposition, MANIFEST};

fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn witnesses_replay_their_residuals() {
    for id in ["P2.1-yiu-vertices", "T3.1-pellipse-six-point", "P4.2-soddy-x175-x176", "P5.3-equal-areas", "A4-phyp-member"] {
        let rep = run_proposition(id, 42, Some(40)).unwrap();
        assert!(rep.pass, "{id}");
        let json = serde_json::to_string(&rep.witness.unwrap()).unwrap();
        let w = serde_json::from_str(&json).unwrap();
        let r = replay(id, &w).unwrap().unwrap().unwrap();
        assert!((r - rep.max_residual).abs() <= 1e-12, "{id}: {r} vs {}", rep.max_residual);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for id in ["P3.3-degenerate-on-circumcircle", "P5.1-second-common-point", "J5.1-x55-conjecture"] {
        let one = in_pool(1, || run_proposition(id, 7, Some(60)).unwrap());
        let three = in_pool(3, || run_proposition(id, 7, Some(60)).unwrap());
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&three).unwrap(), "{id}");
    }
}

#[test]
fn seeds_change_the_trials() {
    let a = run_proposition("T3.1-pellipse-six-point", 1, Some(5)).unwrap();
    let b = run_proposition("T3.1-pellipse-six-point", 2, Some(5)).unwrap();
    assert_ne!(a.witness, b.witness);
}

#[test]
fn manifest_ids_carry_their_kind_prefix() {
    for d in MANIFEST {
        let c = d.id.chars().next().unwrap();
        assert!("PTCRJA".contains(c), "{}", d.id);
        assert!(d.trials >= 1);
    }
}

#[test]
fn region_map_matches_direct_classification() {
    let t: Triangle = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]).unwrap();
    let bbox = BBox::around(&t, 0.3);
    let g = in_pool(2, || region_map(&t, RegionKind::PEllipseOverP, bbox, 41, 37));
    assert_eq!(g.cells.len(), 41 * 37);
    let g1 = in_pool(1, || region_map(&t, RegionKind::PEllipseOverP, bbox, 41, 37));
    assert_eq!(g.cells, g1.cells);
    assert_eq!(g.det.iter().map(|d| d.to_bits()).collect::<Vec<_>>(), g1.det.iter().map(|d| d.to_bits()).collect::<Vec<_>>());
    // 20 cells against an independent build of the triad
    for k in 0..20 {
        let (i, j) = ((k * 7 + 3) % 41, (k * 11 + 5) % 37);
        let p = g.cell_center(i, j);
        let want = match build_triad(&t, TriadKind::PEllipse, Some(p)).and_then(|tr| six_point_conic(&tr)) {
            Ok(rep) => classify(&rep.conic.to_cartesian()),
            Err(_) => continue,
        };
        assert_eq!(g.class_at(i, j), want, "cell ({i}, {j}) at {p:?}");
        let d = classify_driver(&t, RegionKind::PEllipseOverP, p).unwrap();
        assert!((d.det.abs() - g.det_at(i, j).abs()).abs() <= 1e-12);
    }
}

#[test]
fn ppm_has_one_pixel_per_cell() {
    let t: Triangle = Triangle::equilateral(1.0);
    let g = region_map(&t, RegionKind::VEllipseOverC, BBox::around(&t, 0.5), 12, 9);
    let ppm = emit_ppm(&g).unwrap();
    let nums: Vec<&str> = ppm.lines().filter(|l| !l.starts_with('#')).flat_map(|l| l.split_whitespace()).collect();
    assert_eq!(nums[0], "P3");
    assert_eq!((nums[1], nums[2], nums[3]), ("12", "9", "255"));
    assert_eq!(nums.len() - 4, 12 * 9 * 3);
}

#[test]
fn traced_circle_stays_on_the_curve() {
    let lines = trace_zero_set(|x, y| Some(x * x + y * y - 1.0), BBox::new(-2.0, 2.0, -2.0, 2.0), 64);
    let pts: Vec<Point2> = lines.iter().flatten().copied().collect();
    assert!(pts.len() > 100);
    for p in pts {
        assert!((p.norm() - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn scene_round_trip_and_svg() {
    for kind in [TriadKind::VEllipse, TriadKind::PEllipse, TriadKind::VHyperbola, TriadKind::PHyperbola] {
        let t: Triangle = Triangle::from_coords([[0.0, 0.0], [4.0, 0.0], [1.0, 3.0]]).unwrap();
        let p = kind.needs_point().then_some(Point2::new(1.4, 1.1));
        let s = Scene::construct(&t, kind, p).unwrap();
        let back = Scene::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let svg = emit_svg(&s).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let paths = doc.descendants().filter(|n| n.has_tag_name("path") && n.attribute("class") == Some("member")).count();
        assert_eq!(paths, 3, "{kind}");
        let conic = doc.descendants().find(|n| n.attribute("class") == Some("conic")).unwrap();
        assert!(conic.attribute("d").is_some_and(|d| d.starts_with('M')));
        for n in doc.descendants().filter(|n| n.has_tag_name("circle")) {
            for a in ["cx", "cy", "r"] {
                assert!(n.attribute(a).unwrap().parse::<f64>().unwrap().is_finite());
            }
        }
    }
}
