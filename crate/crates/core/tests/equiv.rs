use std::sync::Arc;

use loctwist::dgalg::Cobar;
use loctwist::dgmod::{BarModule, FiniteModule, FreeModule, HomComplex, RightModule, TwistedComplex, Window};
use loctwist::equiv::*;
use loctwist::simplicial::{normalized_chains, pinched, sphere_min, SimplicialSet};
use loctwist::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const W: Window = Window {
    max_degree: 4,
    max_weight: 10,
};

fn cobar(k: &SimplicialSet, f: Field) -> Cobar {
    Cobar::new(Arc::new(normalized_chains(k, f).unwrap())).unwrap()
}

fn check_phi<M: RightModule + Clone>(m: &M) {
    let (phi, section) = comparison_maps(m, W, 8).unwrap();
    phi.verify().unwrap();
    section.verify().unwrap();
    for (p, s) in phi.map.maps.iter().zip(&section.map.maps) {
        let id = loctwist::linalg::SparseMatrix::identity(m.field(), p.rows());
        assert_eq!(p.mul(s).unwrap(), id);
    }
    for d in phi.induced().unwrap() {
        assert!(d.is_isomorphism, "degree {}", d.degree);
    }
}

#[test]
fn phi_is_a_quasi_isomorphism_with_section() {
    for f in [Field::Rational, Field::prime(5).unwrap()] {
        let s2 = sphere_min(2).unwrap();
        let om = cobar(&s2, f);
        check_phi(&FiniteModule::trivial(&om).unwrap());
        check_phi(&FiniteModule::hopf(&om, 1).unwrap());
        check_phi(&FreeModule::new(&om));
        let p = pinched().unwrap();
        check_phi(&FiniteModule::trivial(&cobar(&p, f)).unwrap());
    }
}

fn assert_nilpotent<M: RightModule + Clone>(m: &M, samples: usize) {
    let b = BarModule::new(m.clone(), W);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..samples {
        let d = (i % 4) as i64 + 1;
        let x = sample_kernel(&b, &mut rng, d, 8).unwrap();
        let bound = letter_count(&x);
        assert!(nilpotency_order(&b, &x, bound).is_some(), "sample {i} in degree {d}");
    }
}

#[test]
fn contraction_is_nilpotent() {
    let s2 = sphere_min(2).unwrap();
    let om = cobar(&s2, Field::Rational);
    assert_nilpotent(&FiniteModule::hopf(&om, 1).unwrap(), 20);
    assert_nilpotent(&FreeModule::new(&om), 20);
    let p = pinched().unwrap();
    assert_nilpotent(&FiniteModule::trivial(&cobar(&p, Field::Rational)).unwrap(), 20);
}

#[test]
fn f_and_g_are_chain_maps_with_fg_identity() {
    let s2 = sphere_min(2).unwrap();
    let om = cobar(&s2, Field::Rational);
    let hopf = FiniteModule::hopf(&om, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, n) in [(hopf.clone(), hopf.clone())] {
        let infty = HomComplex::new(BarModule::new(m.clone(), W), n.clone()).unwrap();
        let tau = HomComplex::new(TwistedComplex::new(m.clone(), W), n.clone()).unwrap();
        let (lo, hi) = tau.degree_range();
        for p in lo..=hi {
            let g = tau.random_map(&mut rng, p);
            let gg = g_map(&infty, &tau, &g).unwrap();
            assert_eq!(f_map(&infty, &tau, &gg, 8).unwrap(), g, "FG in degree {p}");
            assert_eq!(g_map(&infty, &tau, &tau.delta(&g, p)).unwrap(), infty.delta(&gg, p), "G chain map {p}");
            let f = infty.random_map(&mut rng, p);
            assert_eq!(
                f_map(&infty, &tau, &infty.delta(&f, p), 8).unwrap(),
                tau.delta(&f_map(&infty, &tau, &f, 8).unwrap(), p),
                "F chain map {p}"
            );
        }
    }
}
