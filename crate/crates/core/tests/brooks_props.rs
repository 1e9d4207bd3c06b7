use hypdrill::brooks::{
    build_pn, extended_pattern, funnel_quad, funnel_quads, greedy_cfrac, solve_r, solve_r_with, SolveOptions, AUDIT_TOL,
};
use hypdrill::geom::{Mobius, C64};
use hypdrill::pattern::{polyhedron_volume, realize, AngleAssignment, RealizeOptions};
use proptest::prelude::*;

fn mobius_strategy() -> impl Strategy<Value = Mobius> {
    proptest::array::uniform8(-2.0f64..2.0).prop_filter_map("singular", |v| {
        let m = Mobius::new(C64::new(v[0], v[1]), C64::new(v[2], v[3]), C64::new(v[4], v[5]), C64::new(v[6], v[7])).ok()?;
        (m.det().norm() > 1e-2).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn greedy_digits_are_conformally_invariant(m in mobius_strategy(), r in prop::sample::select(vec![2.5, 4.0, 6.3])) {
        let q = funnel_quad(r).unwrap();
        let base = greedy_cfrac(&q, 3).unwrap();
        let moved = greedy_cfrac(&q.transformed(&m).unwrap(), 3).unwrap();
        prop_assert_eq!(&base.digits, &moved.digits);
        prop_assert_eq!(base.terminated, moved.terminated);
    }
}

#[test]
fn packing_value_grows_with_r() {
    let mut prev = f64::NEG_INFINITY;
    for k in 0..=40 {
        let r = 1.9 + 0.25 * k as f64;
        let v = greedy_cfrac(&funnel_quad(r).unwrap(), 6).unwrap().value;
        assert!(v >= prev - 1e-9, "r = {r}: {v} < {prev}");
        prev = v;
    }
}

#[test]
fn four_congruent_funnels() {
    for r in [2.0, 3.0, 5.5] {
        let g = extended_pattern(r).unwrap();
        let f = funnel_quads(&g).unwrap();
        assert_eq!(f.len(), 4);
        let d: Vec<_> = f.iter().map(|(q, _)| greedy_cfrac(q, 4).unwrap().digits).collect();
        assert!(d.iter().all(|x| *x == d[0]), "{d:?}");
    }
}

#[test]
fn solved_radii_increase_and_are_stable() {
    let rs: Vec<f64> = (1..=6).map(|n| solve_r(n).unwrap()).collect();
    assert!(rs.windows(2).all(|w| w[0] < w[1]), "{rs:?}");
    for (n, r) in rs.iter().enumerate().take(3) {
        let coarse = solve_r_with(n + 1, &SolveOptions { width: 1e-10, ..SolveOptions::default() }).unwrap();
        assert!((coarse - r).abs() < 1e-8);
        let c = greedy_cfrac(&funnel_quad(*r).unwrap(), 3).unwrap();
        assert_eq!(c.digits, vec![n as u64 + 1]);
        assert!(c.terminated);
    }
    assert!(solve_r(0).is_err());
}

#[test]
fn built_polyhedra_are_right_angled_and_ideal() {
    for n in 1..=3 {
        let b = build_pn(n).unwrap();
        assert!(b.graph.audit_error() < AUDIT_TOL);
        assert_eq!(b.poly.faces.len(), 12 * n + 18);
        assert_eq!(b.poly.vertex_count, 12 * n + 16);
        assert_eq!(b.poly.euler(), 2);
        let mut on = vec![0; b.poly.vertex_count];
        for cyc in &b.poly.faces {
            for &v in cyc {
                on[v] += 1;
            }
        }
        assert!(on.iter().all(|&k| k == 4));
        assert_eq!(b.poly.faces[b.face("C0").unwrap()].len(), 4);
        assert!(b.pattern.residual < 1e-9);
    }
}

#[test]
fn constructed_volume_matches_fresh_realization() {
    for n in 1..=4 {
        let b = build_pn(n).unwrap();
        let fresh = realize(&b.poly, &AngleAssignment::right(), &RealizeOptions::default()).unwrap();
        let (v0, v1) = (polyhedron_volume(&b.pattern).unwrap(), polyhedron_volume(&fresh).unwrap());
        assert!((v0 - v1).abs() < 1e-7, "n = {n}: {v0} vs {v1}");
    }
}

#[test]
fn family_trend() {
    let rows = hypdrill::brooks::family_experiment(&[1, 2, 3, 4, 5, 6], 1.0, &RealizeOptions::default()).unwrap();
    assert!(rows.windows(2).all(|w| w[0].l_n < w[1].l_n && w[0].ratio > w[1].ratio));
    assert!(rows[5].l_n - rows[0].l_n > 2.0);
    assert!(rows.iter().all(|r| r.dv > 0.0 && r.dv <= r.k_bound));
}
