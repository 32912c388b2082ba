//! Property tests of the structural invariants, each against an independent computation.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superw_core::arith::PrimeField;
use superw_core::dynkin::{kw_bound, nilpotent_element, nilpotent_frame, JordanType};
use superw_core::envelope::{EnvElement, Pbw};
use superw_core::lie::{build_catalog, build_q, AlgebraKind, PCharacter};
use superw_core::modrep::{baby_vermas, certify};
use superw_core::wfinite::{
    classify_simple, natural_branchings, predicted_series, AssocSuperAlgebra, SuperShape,
};

fn gl_nilpotents() -> Vec<(AlgebraKind, JordanType)> {
    let mut out = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)] {
        let kind: AlgebraKind = format!("gl({m}|{n})").parse().unwrap();
        for jt in JordanType::enumerate(&kind).unwrap() {
            out.push((kind.clone(), jt));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// `(d0, d1) = dim g - dim g^e`, with `d1 = r mod 2` and the frame conditions.
    #[test]
    fn frame_invariants_of_gl(i in 0usize..64, p in prop::sample::select(vec![3u64, 5, 7])) {
        let cases = gl_nilpotents();
        let (kind, jt) = &cases[i % cases.len()];
        let g = build_q(kind).unwrap();
        let e = nilpotent_element(&g, jt).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        let d = fr.invariants;
        let (g0, g1) = g.space.sdim();
        let (c0, c1) = g.centralizer(&e).graded_dims();
        prop_assert_eq!((d.d0, d.d1), (g0 - c0, g1 - c1));
        prop_assert_eq!(d.d1 % 2, d.r % 2);
        prop_assert_eq!(fr.m.graded_dims(), d.m_dims());
        prop_assert_eq!(fr.m_prime.graded_dims(), d.m_prime_dims());
        prop_assert!(fr.gram_holds(&g) && fr.chi_vanishes_on_m(&g));
        let by_hand = (p as u128).pow((d.d0 / 2) as u32) * (1u128 << d.d1.div_ceil(2));
        prop_assert_eq!(kw_bound(&d, p), by_hand);
    }

    /// Straightening agrees with the left-regular representation and is associative.
    #[test]
    fn straightening_matches_the_regular_representation(
        alg in prop::sample::select(vec!["gl(1|1)", "osp(1|2)", "sl(2|1)"]),
        p in prop::sample::select(vec![3u64, 5, 7]),
        seed in any::<u64>(),
    ) {
        let g = build_catalog(&alg.parse().unwrap(), p).unwrap();
        let chi = PCharacter { values: g.zero_vec(), dual_element: None };
        let pbw = Pbw::reduced(g, chi).unwrap();
        let basis = pbw.basis().unwrap();
        let f = *pbw.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = || {
            let mut a = EnvElement::zero();
            for _ in 0..3 {
                a.add_term(&f, basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(1..p));
            }
            a
        };
        let (a, b, c) = (random(), random(), random());
        prop_assert_eq!(pbw.mul(&a, &b), pbw.mul_left_regular(&a, &b));
        prop_assert_eq!(pbw.mul(&pbw.mul(&a, &b), &c), pbw.mul(&a, &pbw.mul(&b, &c)));
    }

    /// The tensor identities `M⊗M`, `M⊗Q`, `Q⊗Q`, recovered from structure constants.
    #[test]
    fn tensor_of_simple_superalgebras(
        a in prop::sample::select(vec![SuperShape::m(1, 0), SuperShape::m(1, 1), SuperShape::m(2, 1), SuperShape::Q { n: 1 }, SuperShape::Q { n: 2 }]),
        b in prop::sample::select(vec![SuperShape::m(1, 1), SuperShape::m(2, 0), SuperShape::Q { n: 1 }]),
        p in prop::sample::select(vec![3u64, 5]),
    ) {
        let f = PrimeField::new(p).unwrap();
        let t = AssocSuperAlgebra::of_shape(f, a).tensor(&AssocSuperAlgebra::of_shape(f, b));
        let (e, o) = t.sdim();
        let ((ae, ao), (be, bo)) = (a.sdim(), b.sdim());
        prop_assert_eq!((e, o), (ae * be + ao * bo, ae * bo + ao * be));
        prop_assert_eq!(classify_simple(&t, 0).unwrap(), a.tensor(&b));
    }

    /// Coefficients of `Π(1 + t^d) / Π(1 - t^d)` by direct count of monomials.
    #[test]
    fn free_supercommutative_series(gens in prop::collection::vec((1i32..5, 0u8..2), 0..5), cap in 0usize..10) {
        let mut count = vec![0u64; cap + 1];
        let mut exps = vec![0usize; gens.len()];
        'odometer: loop {
            let deg: usize = gens.iter().zip(&exps).map(|(&(d, _), &k)| d as usize * k).sum();
            if deg <= cap {
                count[deg] += 1;
            }
            // Odometer over exponents, odd generators capped at 1.
            let mut i = 0;
            loop {
                if i == gens.len() {
                    break 'odometer;
                }
                let max = if gens[i].1 == 1 { 1 } else { cap / gens[i].0 as usize };
                if exps[i] < max {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
        prop_assert_eq!(predicted_series(&gens, cap), count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    /// MeatAxe certificates of baby Vermas replay for any seed.
    #[test]
    fn certificates_replay(p in prop::sample::select(vec![3u64, 5, 7]), seed in any::<u64>()) {
        let g = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:1|2".parse().unwrap()).unwrap();
        let fr = nilpotent_frame(&g, &e).unwrap();
        for (_, z) in baby_vermas(&g, &fr, p, 1000).unwrap() {
            let c = certify(&z, seed).unwrap();
            prop_assert!(c.is_simple());
            prop_assert!(c.replay(&z));
        }
    }

    /// Outer tensors of natural modules: dimensions add up and the branching follows the types.
    #[test]
    fn natural_branching_types(p in prop::sample::select(vec![3u64, 5, 7, 11]), seed in any::<u64>()) {
        let shapes = [SuperShape::m(1, 0), SuperShape::m(1, 1), SuperShape::Q { n: 1 }];
        for (a, b, br) in natural_branchings(PrimeField::new(p).unwrap(), &shapes, seed).unwrap() {
            prop_assert_eq!(br.factors.iter().map(|f| f.dim).sum::<usize>(), br.dim);
            prop_assert!(br.is_expected(), "{} ⊠ {} at p = {}", a, b, p);
        }
    }
}
