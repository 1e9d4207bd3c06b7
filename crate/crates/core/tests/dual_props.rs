use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use hypdrill::combin::{drum, SurgerySpec};
use hypdrill::dual::{
    bent_dual, dual_of, edge_geodesic_search, prune_degenerate, scale_and_polarize, PolygonKind,
};
use hypdrill::pattern::{bent_complex, AngleAssignment};

fn spec() -> SurgerySpec {
    SurgerySpec::new(0, 0, 2)
}

#[test]
fn bigon_triangles_and_area() {
    let d = drum(4).unwrap();
    let s = dual_of(&d, &AngleAssignment::right()).unwrap();
    let before = s.cone_angles();
    for &theta in &[0.3, FRAC_PI_4, FRAC_PI_2, 2.5] {
        let st = bent_dual(&d, &AngleAssignment::right(), &spec(), theta).unwrap();
        let tris: Vec<_> = st.polygons.iter().filter(|p| p.kind == PolygonKind::Bigon).collect();
        assert_eq!(tris.len(), 2);
        for t in &tris {
            let mut a = t.angles.clone();
            a.sort_by(f64::total_cmp);
            let mut want = vec![PI - theta, FRAC_PI_2, FRAC_PI_2];
            want.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&want) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        assert!((st.area() - s.area() - 2.0 * (PI - theta)).abs() < 1e-10);
        assert!(st.gauss_bonnet_defect() < 1e-8);
        assert!(st.gluing_mismatch() < 1e-10);
        // slit endpoints gain the bigon angle; the split face vertex gains 2π in total
        let after = st.cone_angles();
        let total_before: f64 = before.iter().sum();
        let total_after: f64 = after.iter().sum();
        assert!((total_after - total_before - 2.0 * (PI - theta) - 2.0 * PI).abs() < 1e-10);
    }
}

#[test]
fn flat_bigon_prunes_to_original() {
    let d = drum(4).unwrap();
    let s = dual_of(&d, &AngleAssignment::right()).unwrap();
    let st = bent_dual(&d, &AngleAssignment::right(), &spec(), PI).unwrap();
    let back = prune_degenerate(&st).unwrap();
    assert_eq!(back.gluing_signature(), s.gluing_signature());
}

#[test]
fn bigon_matches_dual_of_bent_complex() {
    let d = drum(4).unwrap();
    let theta = 0.9;
    let st = bent_dual(&d, &AngleAssignment::right(), &spec(), theta).unwrap();
    let bc = bent_complex(&d, &spec()).unwrap();
    let direct = dual_of(&bc.poly, &AngleAssignment::right().with(bc.v1, bc.v2, theta)).unwrap();
    let sorted = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v
    };
    for (a, b) in sorted(st.cone_angles()).iter().zip(sorted(direct.cone_angles())) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!((st.area() - direct.area()).abs() < 1e-10);
}

#[test]
fn scaling_and_poles() {
    let d = drum(4).unwrap();
    let st = bent_dual(&d, &AngleAssignment::right(), &spec(), FRAC_PI_4).unwrap();
    assert_eq!(scale_and_polarize(&st, 0.0).unwrap(), st);
    let t = 0.05;
    let s2 = scale_and_polarize(&st, t).unwrap();
    assert!(s2.gauss_bonnet_defect() < 1e-8);
    assert!(s2.gluing_mismatch() < 1e-10);
    for e in 0..s2.edges.len() {
        let de = &s2.edges[e];
        if !de.in_bigon && de.primal.is_some() {
            assert!((s2.edge_length(e) - (1.0 + t) * FRAC_PI_2).abs() < 1e-15);
        }
    }
    let cones = s2.cone_angles();
    let poles = st.vertex_count..s2.vertex_count;
    assert_eq!(poles.len(), 8);
    for v in poles {
        let a = cones[v];
        assert!(a > 2.0 * PI && a <= 2.0 * PI * (1.0 + t) + 1e-12, "{a}");
    }
}

#[test]
fn dual_conditions_drum4() {
    let d = drum(4).unwrap();
    for &theta in &[FRAC_PI_4, FRAC_PI_2] {
        let st = bent_dual(&d, &AngleAssignment::right(), &spec(), theta).unwrap();
        let boundary = edge_geodesic_search(&st, 8).expect("equator found");
        assert!((boundary.length - 2.0 * PI).abs() < 1e-12, "{}", boundary.length);
        for &t in &[0.01, 0.05] {
            let s2 = scale_and_polarize(&st, t).unwrap();
            assert!(s2.cone_violations(0.0).is_empty());
            if let Some(g) = edge_geodesic_search(&s2, 8) {
                assert!(g.length > 2.0 * PI, "{theta} {t}: {g:?}");
            }
        }
    }
}

#[test]
fn unbent_scaled_geodesics() {
    let d = drum(4).unwrap();
    let t = 0.05;
    let st = prune_degenerate(&bent_dual(&d, &AngleAssignment::right(), &spec(), PI).unwrap()).unwrap();
    let s2 = scale_and_polarize(&st, t).unwrap();
    let g = edge_geodesic_search(&s2, 8).expect("some geodesic");
    assert!(g.length >= 2.0 * PI + t * PI - 1e-12, "{g:?}");
}
