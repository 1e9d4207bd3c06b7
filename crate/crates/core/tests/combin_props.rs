use hypdrill::combin::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn code(p: &CombPolyhedron) -> CanonicalCode {
    canonical_code(p).unwrap()
}

#[test]
fn drum5_mirror_positions_agree() {
    let d = drum(5).unwrap();
    let a = surgery(&d, &SurgerySpec::new(0, 0, 2)).unwrap();
    let b = surgery(&d, &SurgerySpec::new(0, 0, 3)).unwrap();
    assert_eq!(code(&a), code(&b));
}

#[test]
fn reflection_identified() {
    let d = drum(6).unwrap();
    let q = surgery(&d, &SurgerySpec::new(0, 0, 2)).unwrap();
    let q2 = surgery(&q, &SurgerySpec::new(1, 1, 4)).unwrap();
    assert_eq!(code(&q2), code(&q2.mirror()));
}

#[test]
fn relabel_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = drum(5).unwrap();
    let fixtures = [
        d.clone(),
        surgery(&d, &SurgerySpec::new(0, 0, 2)).unwrap(),
        cube(),
        prism(5).unwrap(),
    ];
    for p in &fixtures {
        let c = code(p);
        let mut perm: Vec<usize> = (0..p.vertex_count).collect();
        for _ in 0..1000 {
            perm.shuffle(&mut rng);
            assert_eq!(code(&p.relabel(&perm)), c);
        }
    }
}

#[test]
fn drum_surgery_classes() {
    let counts: Vec<usize> = (4..=6)
        .map(|n| enumerate_basic(&[drum(n).unwrap()], 1).unwrap().len() - 1)
        .collect();
    assert_eq!(counts, vec![1, 1, 2]);
}

#[test]
fn enumeration_is_deterministic_and_valid() {
    let a = enumerate_basic(&[drum(4).unwrap(), drum(5).unwrap()], 2).unwrap();
    let b = enumerate_basic(&[drum(4).unwrap(), drum(5).unwrap()], 2).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.code, y.code);
        assert_eq!(x.poly, y.poly);
        let r = x.poly.validate_basic();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(x.poly.euler(), 2);
    }
}

fn all_signings<'a>(p: &'a CombPolyhedron, alphabet: &[Sign]) -> impl Iterator<Item = SignedPolyhedron> + 'a {
    let m = p.edge_count();
    let k = alphabet.len();
    let total = k.pow(m as u32);
    let alphabet = alphabet.to_vec();
    (0..total).map(move |mut code| {
        let signs = (0..m)
            .map(|_| {
                let s = alphabet[code % k];
                code /= k;
                s
            })
            .collect();
        SignedPolyhedron::new(p.clone(), signs).unwrap()
    })
}

#[test]
fn zero_free_total_index_is_two() {
    for p in [tetrahedron(), cube()] {
        for sp in all_signings(&p, &[Sign::Plus, Sign::Minus]) {
            assert_eq!(sign_indices(&sp).unwrap().total, Quarters(8));
        }
    }
}

#[test]
fn tetrahedron_signings_collapse_to_spheres() {
    for sp in all_signings(&tetrahedron(), &[Sign::Plus, Sign::Minus, Sign::Zero]) {
        let c = collapse_zero_edges(&sp);
        for s in &c.components {
            assert_eq!(s.euler(), 2);
            assert!(s.edges.is_empty() || s.vertex_words.iter().all(|w| !w.is_empty()));
        }
        let faces: usize = c.components.iter().map(|s| s.faces.len()).sum();
        assert_eq!(faces, 4);
    }
}

#[test]
fn cube_dichotomy_exhaustive() {
    let cube = cube();
    let mut holds = 0usize;
    for sp in all_signings(&cube, &[Sign::Plus, Sign::Minus, Sign::Zero]) {
        for (f1, f2) in [(0, 1), (2, 4), (3, 5)] {
            let v = check_rigidity_dichotomy(&sp, f1, f2).unwrap();
            if v.hypothesis {
                holds += 1;
                assert!(v.conclusion, "{:?} {:?}", v.witness, sp.to_json());
            }
        }
    }
    assert!(holds > 0);
}

proptest! {
    #[test]
    fn surgery_preserves_basic(n in 4usize..9, pick in 0usize..1000) {
        let d = drum(n).unwrap();
        let specs = admissible_surgeries(&d);
        let s = specs[pick % specs.len()];
        let q = surgery(&d, &s).unwrap();
        prop_assert_eq!(q.euler(), 2);
        prop_assert!(q.validate().is_basic);
        let specs2 = admissible_surgeries(&q);
        let q2 = surgery(&q, &specs2[pick % specs2.len()]).unwrap();
        prop_assert!(q2.validate().is_basic);
        prop_assert_eq!(q2.vertex_count, d.vertex_count + 2);
    }
}
