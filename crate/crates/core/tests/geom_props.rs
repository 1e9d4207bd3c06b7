use std::f64::consts::PI;

use hypdrill::geom::{
    cross_ratio, geodesic_distance, ideal_tet_volume, polygon_from_data, quad_perpendiculars, ComplexPoint,
    Geodesic, PolygonalCurve, Mobius, C64,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt(z: C64) -> ComplexPoint {
    ComplexPoint::Finite(z)
}

fn random_mobius(rng: &mut ChaCha8Rng) -> Mobius {
    let mut c = || C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    loop {
        if let Ok(m) = Mobius::new(c(), c(), c(), c()) {
            if m.det().norm() > 1e-2 {
                return m;
            }
        }
    }
}

/// Cyclically ordered points on a random circle, kept apart by a minimum gap.
fn random_quad(rng: &mut ChaCha8Rng) -> [ComplexPoint; 4] {
    let center = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    let radius = rng.gen_range(0.2..4.0);
    let mut t: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    t.sort_by(f64::total_cmp);
    let gap = (0..4).map(|i| (t[(i + 1) % 4] - t[i]).rem_euclid(2.0 * PI)).fold(f64::INFINITY, f64::min);
    if gap < 0.05 {
        return random_quad(rng);
    }
    let q: Vec<ComplexPoint> = t.iter().map(|&a| pt(center + C64::from_polar(radius, a))).collect();
    [q[0], q[1], q[2], q[3]]
}

#[test]
fn perpendicular_product_identity_1000() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let q = random_quad(&mut rng);
        let (d1, d2) = quad_perpendiculars(q).unwrap();
        let prod = (d1 / 2.0).sinh() * (d2 / 2.0).sinh();
        assert!((prod - 1.0).abs() < 1e-10, "{prod}");
    }
}

#[test]
fn distances_and_volumes_mobius_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let g1 = Geodesic::new(pt(C64::new(-1.0, 0.0)), pt(C64::new(1.0, 0.0))).unwrap();
    let g2 = Geodesic::new(pt(C64::new(-3.0, 0.5)), pt(C64::new(2.5, 1.0))).unwrap();
    let tet = [pt(C64::new(0.1, 0.2)), pt(C64::new(1.3, -0.4)), pt(C64::new(-0.7, 0.9)), ComplexPoint::Infinity];
    let d = geodesic_distance(&g1, &g2).distance;
    let v = ideal_tet_volume(tet[0], tet[1], tet[2], tet[3]).unwrap();
    let q = random_quad(&mut rng);
    let (p1, p2) = quad_perpendiculars(q).unwrap();
    for _ in 0..100 {
        let m = random_mobius(&mut rng);
        let h1 = Geodesic::new(m.apply(g1.a), m.apply(g1.b)).unwrap();
        let h2 = Geodesic::new(m.apply(g2.a), m.apply(g2.b)).unwrap();
        assert!((geodesic_distance(&h1, &h2).distance - d).abs() < 1e-10);
        let t: Vec<ComplexPoint> = tet.iter().map(|&z| m.apply(z)).collect();
        assert!((ideal_tet_volume(t[0], t[1], t[2], t[3]).unwrap() - v).abs() < 1e-10);
        let mq = q.map(|z| m.apply(z));
        let (r1, r2) = quad_perpendiculars(mq).unwrap();
        assert!((r1 - p1).abs() < 1e-9 * (1.0 + p1) && (r2 - p2).abs() < 1e-9 * (1.0 + p2));
        let cr = cross_ratio(q[0], q[1], q[2], q[3]).unwrap();
        let mcr = cross_ratio(mq[0], mq[1], mq[2], mq[3]).unwrap();
        assert!((cr - mcr).norm() < 1e-10 * (1.0 + cr.norm()));
    }
}

/// Every vertex on the inner side of every line of the curve.
fn convex(c: &PolygonalCurve) -> bool {
    c.normals.iter().all(|n| c.vertices.iter().all(|a| n.dot(a) <= 1e-12))
}

fn cplx() -> impl Strategy<Value = C64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y)| C64::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, max_global_rejects: 100_000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tetrahedron_additivity(a in cplx(), b in cplx(), c in cplx(), d in cplx(), e in cplx()) {
        // coning the boundary of (a, b, c, d) from a fifth ideal point e
        let pts = [a, b, c, d, e];
        for i in 0..5 {
            for j in i + 1..5 {
                prop_assume!((pts[i] - pts[j]).norm() > 1e-2);
            }
        }
        let (a, b, c, d, e) = (pt(a), pt(b), pt(c), pt(d), pt(e));
        let v = |p: ComplexPoint, q: ComplexPoint, r: ComplexPoint, s: ComplexPoint| ideal_tet_volume(p, q, r, s).unwrap();
        let whole = v(a, b, c, d);
        let parts = -v(b, c, d, e) + v(a, c, d, e) - v(a, b, d, e) + v(a, b, c, e);
        prop_assert!((whole - parts).abs() < 1e-10, "{} vs {}", whole, parts);
    }

    #[test]
    fn quad_lemma_monotone(a in prop::collection::vec(0.3..1.5707f64, 3), l in prop::collection::vec(0.1..2.0f64, 2), k in 0usize..2, dl in 0.01..1.0f64) {
        let base = polygon_from_data(&a, &l).unwrap();
        let mut l2 = l.clone();
        l2[k] += dl;
        let longer = polygon_from_data(&a, &l2).unwrap();
        prop_assume!(convex(&base) && convex(&longer));
        prop_assert!(longer.end_product() <= base.end_product() + 1e-12);
    }

    #[test]
    fn pentagon_lemma_monotone(a in prop::collection::vec(0.3..1.5707f64, 4), l in prop::collection::vec(0.1..2.0f64, 3), k in 0usize..3, dl in 0.01..1.0f64) {
        let base = polygon_from_data(&a, &l).unwrap();
        let mut l2 = l.clone();
        l2[k] += dl;
        let longer = polygon_from_data(&a, &l2).unwrap();
        prop_assume!(convex(&base) && convex(&longer));
        prop_assert!(longer.end_product() <= base.end_product() + 1e-12);
    }
}
