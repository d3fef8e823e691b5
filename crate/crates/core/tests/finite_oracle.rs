use hok_core::finite::checks::{random_class_function, proper_standard};
use hok_core::finite::hecke::{orbital, orbital_density};
use hok_core::finite::{build_gl, inner_product, twisted_induction, ClassFunction};
use hok_core::linalg::{rat, CycloNumber};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn class_counts_match_known_values() {
    // GL2(F_q) has q² − 1 classes; GL3(F2) has 6
    for (n, q, k) in [(2, 2, 3), (2, 3, 8), (2, 4, 15), (2, 5, 24), (3, 2, 6)] {
        let g = build_gl(n, q).unwrap();
        assert_eq!(g.classes(&g.whole, false).unwrap().len(), k, "{n} {q}");
    }
}

#[test]
fn orbital_is_orbit_sum() {
    let g = build_gl(2, 3).unwrap();
    let cl = g.classes(&g.whole, false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_class_function(&mut rng, &g.whole, &cl);
    for &x in &cl.reps {
        let dens = orbital_density(&g, x);
        let via_density = (0..g.order()).fold(CycloNumber::zero(), |acc, y| &acc + &(&dens.values[y] * &f.values[y]));
        assert_eq!(orbital(&g, x, &f), via_density);
        // 1_e(f) = |G| f(e)
    }
    assert_eq!(orbital(&g, g.identity, &f), f.values[g.identity].scale(&rat(48, 1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induction_is_linear_and_adjoint(seed in 0u64..10_000, which in 0usize..3) {
        let (n, q) = [(2, 2), (2, 3), (3, 2)][which];
        let g = build_gl(n, q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in proper_standard(&g, false).unwrap() {
            let mc = g.classes(&p.levi, false).unwrap();
            let a = random_class_function(&mut rng, &p.levi, &mc);
            let b = random_class_function(&mut rng, &p.levi, &mc);
            let ia = twisted_induction(&g, &p, &a, false).unwrap();
            let ib = twisted_induction(&g, &p, &b, false).unwrap();
            let iab = twisted_induction(&g, &p, &a.add(&b).unwrap(), false).unwrap();
            prop_assert_eq!(iab, ia.add(&ib).unwrap());
            // Frobenius: ⟨1, Ind φ⟩_G = ⟨1, φ⟩_M
            let one_g = ClassFunction::constant(&g.whole, CycloNumber::one());
            let one_m = ClassFunction::constant(&p.levi, CycloNumber::one());
            prop_assert_eq!(inner_product(&g.whole, &one_g, &ia).unwrap(), inner_product(&p.levi, &one_m, &a).unwrap());
        }
    }
}
