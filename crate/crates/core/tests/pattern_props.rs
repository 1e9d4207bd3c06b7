use std::f64::consts::FRAC_PI_2;

use hypdrill::combin::{admissible_surgeries, drum, surgery, CombPolyhedron};
use hypdrill::geom::{dihedral_angle, Mobius, C64};
use hypdrill::pattern::{
    bend_length, bent_complex, bent_realize, deform_family, face_perp_length, ideal_fan_volume, polyhedron_volume,
    realize, schlafli_residual, AngleAssignment, BendSpec, CirclePattern, RealizeOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn right(p: &CombPolyhedron) -> CirclePattern {
    realize(p, &AngleAssignment::right(), &RealizeOptions::default()).unwrap()
}

fn inventory() -> Vec<CombPolyhedron> {
    let mut out = Vec::new();
    for n in 3..=6 {
        let d = drum(n).unwrap();
        for s in admissible_surgeries(&d) {
            out.push(surgery(&d, &s).unwrap());
        }
        out.push(d);
    }
    out
}

fn random_mobius(rng: &mut ChaCha8Rng) -> Mobius {
    let mut c = || C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    loop {
        if let Ok(m) = Mobius::new(c(), c(), c(), c()) {
            if m.det().norm() > 1e-3 {
                return m;
            }
        }
    }
}

#[test]
fn inventory_patterns_accepted_and_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in inventory() {
        let pat = right(&p);
        assert!(pat.residual < 1e-9);
        for e in p.edges().unwrap() {
            let t = dihedral_angle(&pat.normals[e.left], &pat.normals[e.right]);
            assert!((t - FRAC_PI_2).abs() < 1e-8);
        }
        let v = polyhedron_volume(&pat).unwrap();
        for apex in 0..p.vertex_count {
            assert!((ideal_fan_volume(&pat, apex).unwrap() - v).abs() < 1e-9);
        }
        let m = random_mobius(&mut rng);
        let moved = pat.transformed(&m);
        assert!((polyhedron_volume(&moved).unwrap() - v).abs() < 1e-8);
    }
}

#[test]
fn surgery_increases_volume() {
    for n in 3..=6 {
        let d = drum(n).unwrap();
        let v = polyhedron_volume(&right(&d)).unwrap();
        for s in admissible_surgeries(&d) {
            let vp = polyhedron_volume(&right(&surgery(&d, &s).unwrap())).unwrap();
            assert!(vp > v, "drum {n} {s:?}: {vp} <= {v}");
        }
    }
}

#[test]
fn face_perp_mobius_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pat = right(&drum(5).unwrap());
    let d = face_perp_length(&pat, 0, 0, 2).unwrap();
    for _ in 0..20 {
        let moved = pat.transformed(&random_mobius(&mut rng));
        assert!((face_perp_length(&moved, 0, 0, 2).unwrap() - d).abs() < 1e-10);
    }
}

#[test]
fn bent_angle_recovered() {
    let d = drum(5).unwrap();
    let b = BendSpec::new(0, 1, 3);
    let bc = bent_complex(&d, &b).unwrap();
    for &t in &[0.3, 1.0, FRAC_PI_2] {
        let pat = bent_realize(&d, &b, t, &RealizeOptions::default()).unwrap();
        let got = dihedral_angle(&pat.normals[bc.faces[0]], &pat.normals[bc.faces[1]]);
        assert!((got - t).abs() < 1e-8);
        assert!(bend_length(&pat, &bc).unwrap() > 0.0);
    }
}

#[test]
fn small_angle_close_to_pinched() {
    let d = drum(4).unwrap();
    let b = BendSpec::new(0, 0, 2);
    let bc = bent_complex(&d, &b).unwrap();
    let pat = bent_realize(&d, &b, 0.05, &RealizeOptions::default()).unwrap();
    let l = bend_length(&pat, &bc).unwrap();
    let v = polyhedron_volume(&pat).unwrap();
    let vp = polyhedron_volume(&right(&surgery(&d, &b).unwrap())).unwrap();
    assert!(v < vp && vp - v < 0.05 * l, "{v} {vp} {l}");
}

fn grid(lo: f64, step: f64) -> Vec<f64> {
    let n = ((FRAC_PI_2 - lo) / step).floor() as usize;
    let mut g: Vec<f64> = (0..=n).map(|k| lo + step * k as f64).collect();
    if FRAC_PI_2 - g[n] > 1e-12 {
        g.push(FRAC_PI_2);
    }
    g
}

#[test]
fn schlafli_family_drum4() {
    let d = drum(4).unwrap();
    let b = BendSpec::new(0, 0, 2);
    let opts = RealizeOptions::default();
    let fam = deform_family(&d, &b, &grid(0.1, 1e-2), &opts).unwrap();
    let res = schlafli_residual(&fam).unwrap();
    assert!(res < 1e-4, "{res}");
    for w in fam.samples.windows(2) {
        assert!(w[1].l > w[0].l);
        assert!(w[1].volume < w[0].volume);
    }
    let first = fam.samples[0];
    let vp = polyhedron_volume(&right(&surgery(&d, &b).unwrap())).unwrap();
    assert!(first.volume < vp && vp - first.volume < 0.5 * first.theta * first.l);
    // refine on a shorter window with matching interior points
    let coarse = deform_family(&d, &b, &[0.5, 0.51, 0.52], &opts).unwrap();
    let fine = deform_family(&d, &b, &[0.509, 0.51, 0.511], &opts).unwrap();
    let rc = schlafli_residual(&coarse).unwrap();
    let rf = schlafli_residual(&fine).unwrap();
    assert!(rf * 10.0 <= rc, "{rc} {rf}");
}

#[test]
fn deform_deterministic() {
    let d = drum(4).unwrap();
    let b = BendSpec::new(0, 0, 2);
    let g = [0.2, 0.4, 0.8, 1.2];
    let a = deform_family(&d, &b, &g, &RealizeOptions::default()).unwrap();
    let c = deform_family(&d, &b, &g, &RealizeOptions::default()).unwrap();
    assert_eq!(a, c);
}

