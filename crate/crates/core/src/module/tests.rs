use proptest::prelude::*;

use super::*;
use crate::testing::*;
use crate::groebner::QuotientRing;

fn same_shape(a: &PresentedModule, b: &PresentedModule) {
    let (a, b) = (a.minimal_presentation().unwrap(), b.minimal_presentation().unwrap());
    let sorted = |v: &[i32]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    assert_eq!(sorted(a.gen_twists()), sorted(b.gen_twists()));
    assert_eq!(sorted(a.rel_twists()), sorted(b.rel_twists()));
    assert_eq!(a.hilbert().unwrap(), b.hilbert().unwrap());
}

#[test]
fn twists_are_inferred_from_entries() {
    let ctx = r1();
    let n = example_n(&ctx);
    assert_eq!(n.gen_twists(), &[0, 0, 0, 0]);
    assert_eq!(n.rel_twists(), &[1]);
    let m = coker(&ctx, &[&["w", "y"], &["z", "x"]]);
    assert_eq!(m.gen_twists(), &[0, 0]);
    assert_eq!(m.rel_twists(), &[1, 1]);
    let bad: Vec<Vec<Polynomial>> = vec![vec![p(&ctx, "w"), p(&ctx, "x*y")], vec![p(&ctx, "y"), p(&ctx, "z")]];
    assert!(PresentedModule::from_rows(&ctx, &bad).is_err());
}

#[test]
fn kernel_of_identity_is_zero() {
    let ctx = r1();
    let n = example_n(&ctx);
    assert!(ModuleMap::identity(&n).kernel().unwrap().is_zero().unwrap());
}

#[test]
fn kernel_of_multiplication_by_x() {
    let ctx = QuotientRing::parse(101, &["x", "y"], &["x^2"]).unwrap();
    let r = PresentedModule::free(&ctx, vec![0]);
    let target = PresentedModule::free(&ctx, vec![-1]);
    let img = FreeVector::from_entries(ctx.poly(), target.space(), &[(0, p(&ctx, "x"))]).unwrap();
    let f = ModuleMap::new(&r, &target, vec![img]).unwrap();
    let k = f.kernel_embedded().unwrap();
    assert_eq!(k.gens.len(), 1);
    assert_eq!(k.gens[0].entry(ctx.poly(), 0), p(&ctx, "x"));
    // (x) ≅ (R/(x))(-1)
    same_shape(&k.module, &PresentedModule::cyclic(&ctx, &[p(&ctx, "x")]).unwrap().twist(-1));
}

#[test]
fn cokernel_of_the_column_gives_example_module() {
    let ctx = r1();
    let r = PresentedModule::free(&ctx, vec![1]);
    let f4 = PresentedModule::free(&ctx, vec![0, 0, 0, 0]);
    let col = FreeVector::from_entries(
        ctx.poly(),
        f4.space(),
        &[(0, p(&ctx, "w")), (1, p(&ctx, "x")), (2, p(&ctx, "y")), (3, p(&ctx, "z"))],
    )
    .unwrap();
    let f = ModuleMap::new(&r, &f4, vec![col]).unwrap();
    let n = f.cokernel().unwrap();
    same_shape(&n, &example_n(&ctx));
    assert!(!n.is_free().unwrap());
    assert_eq!(f.image().unwrap().num_gens(), 1);
}

#[test]
fn ill_defined_maps_are_rejected() {
    let ctx = dual_numbers();
    let k = PresentedModule::residue_field(&ctx);
    let r = PresentedModule::free(&ctx, vec![0]);
    // k → R sending 1 to 1 does not respect x·1 = 0
    assert!(ModuleMap::new(&k, &r, vec![FreeVector::basis(0)]).is_err());
}

#[test]
fn duals_of_free_modules_flip_twists() {
    let ctx = r1();
    let d = dual(&PresentedModule::free(&ctx, vec![3])).unwrap();
    assert_eq!(d.gen_twists(), &[-3]);
    assert_eq!(d.num_rels(), 0);
}

#[test]
fn dual_of_residue_field_is_the_socle() {
    let ctx = r3();
    let d = dual(&PresentedModule::residue_field(&ctx)).unwrap();
    assert_eq!(d.length().unwrap(), Some(1));
    assert_eq!(d.gen_twists(), &[2]);
}

#[test]
fn mcm_module_is_reflexive() {
    let ctx = r1();
    let m = coker(&ctx, &[&["w", "y"], &["z", "x"]]);
    let mdd = dual(&dual(&m).unwrap()).unwrap();
    same_shape(&m, &mdd);
}

#[test]
fn units_of_tensor_and_hom() {
    let ctx = r1();
    let n = example_n(&ctx);
    let r = PresentedModule::free(&ctx, vec![0]);
    same_shape(&tensor(&n, &r).unwrap(), &n);
    same_shape(&hom(&r, &n).unwrap(), &n);
}

#[test]
fn tensor_of_residue_fields() {
    let ctx = dual_numbers();
    let k = PresentedModule::residue_field(&ctx);
    let t = tensor(&k, &k).unwrap();
    assert_eq!(t.length().unwrap(), Some(1));
}

#[test]
fn natural_map_is_an_isomorphism_for_free_sources() {
    let ctx = r1();
    let n = example_n(&ctx);
    let f = natural_map_tensor_to_hom(&PresentedModule::free(&ctx, vec![0, 1]), &n).unwrap();
    assert!(f.kernel().unwrap().is_zero().unwrap());
    assert!(f.cokernel().unwrap().is_zero().unwrap());
}

#[test]
fn stable_endomorphisms_of_residue_field() {
    let ctx = dual_numbers();
    let k = PresentedModule::residue_field(&ctx);
    let f = natural_map_tensor_to_hom(&k, &k).unwrap();
    assert_eq!(f.cokernel().unwrap().length().unwrap(), Some(1));
}

#[test]
fn second_natural_map_with_a_free_side() {
    let ctx = r2();
    let k = PresentedModule::residue_field(&ctx);
    let r = PresentedModule::free(&ctx, vec![0]);
    for (m, n) in [(&k, &r), (&r, &k)] {
        let f = natural_map_tensor_to_hom_dual(m, n).unwrap();
        assert!(f.kernel().unwrap().is_zero().unwrap());
        assert!(f.cokernel().unwrap().is_zero().unwrap());
    }
}

#[test]
fn minimal_presentations() {
    let ctx = QuotientRing::parse(101, &["x", "y"], &[]).unwrap();
    let split = direct_sum(&PresentedModule::free(&ctx, vec![0]), &coker(&ctx, &[&["1"]])).unwrap();
    let m = split.minimal_presentation().unwrap();
    assert_eq!((m.num_gens(), m.num_rels()), (1, 0));

    let m = coker(&ctx, &[&["1", "x"], &["0", "y"]]);
    let min = m.minimal_presentation().unwrap();
    assert_eq!((min.num_gens(), min.num_rels()), (1, 1));
    let again = min.minimize_embedded().unwrap().module;
    assert_eq!(again.gen_twists(), min.gen_twists());
    assert_eq!(again.relations(), min.relations());
}

#[test]
fn zero_and_free_tests() {
    let ctx = r1();
    assert!(coker(&ctx, &[&["1", "0"], &["0", "1"]]).is_zero().unwrap());
    assert!(PresentedModule::free(&ctx, vec![2, 2, 2]).is_free().unwrap());
    assert!(!example_n(&ctx).is_free().unwrap());
    assert!(PresentedModule::zero(&ctx).is_free().unwrap());
}

#[test]
fn matlis_dual_and_socles() {
    let ctx = r2();
    let k = PresentedModule::residue_field(&ctx);
    let kd = k.matlis_dual().unwrap();
    assert_eq!(kd.hilbert().unwrap().finite_dims(), Some(vec![(0, 1)]));

    let s = socle(&ctx).unwrap();
    let emb = PresentedModule::free(&ctx, vec![0]).socle().unwrap();
    assert_eq!(emb.hilbert().unwrap().finite_dims(), Some(vec![(2, 1)]));
    assert_eq!(s.num_gens(), 1);

    let ctx = r3();
    let s = socle(&ctx).unwrap();
    assert_eq!(s.hilbert().unwrap().finite_dims(), Some(vec![(2, 1)]));
    assert_eq!(ctx.embedding_dim(), 3);
}

#[test]
fn socle_generator_is_xy() {
    let ctx = r2();
    let r = PresentedModule::free(&ctx, vec![0]);
    let mut target = PresentedModule::zero(&ctx);
    for _ in 0..2 {
        target = direct_sum(&target, &r.twist(1)).unwrap();
    }
    let img = FreeVector::from_entries(ctx.poly(), target.space(), &[(0, p(&ctx, "x")), (1, p(&ctx, "y"))]).unwrap();
    let k = ModuleMap::new(&r, &target, vec![img]).unwrap().kernel_embedded().unwrap();
    assert_eq!(k.gens.len(), 1);
    assert_eq!(k.gens[0].entry(ctx.poly(), 0), p(&ctx, "x*y"));
}

#[test]
fn dimensions_and_lengths() {
    let ctx = r1();
    let k = PresentedModule::residue_field(&ctx);
    assert_eq!((k.dimension().unwrap(), k.length().unwrap()), (0, Some(1)));
    let r = PresentedModule::free(&ctx, vec![0]);
    assert_eq!((r.dimension().unwrap(), r.length().unwrap()), (3, None));
    let ctx = r3();
    assert_eq!(PresentedModule::free(&ctx, vec![0]).length().unwrap(), Some(5));
    assert_eq!(PresentedModule::zero(&ctx).dimension().unwrap(), -1);
}

#[test]
fn realization_of_residue_field_over_hypersurface() {
    let ctx = r1();
    let real = FiniteLengthRealization::of_module(&PresentedModule::residue_field(&ctx)).unwrap();
    assert_eq!(real.length(), 1);
    assert!(FiniteLengthRealization::of_module(&example_n(&ctx)).is_err());
}

/// Random homogeneous presentation over `ctx`: up to two generators in
/// degrees 0..=1 and up to two relations of degree one or two above.
fn finite(m: &PresentedModule) -> Vec<(i64, u64)> {
    m.hilbert().unwrap().finite_dims().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn minimization_is_idempotent_and_keeps_hilbert(seed in any::<u64>(), which in 0usize..2) {
        let ctx = if which == 0 { r2() } else { r3() };
        let m = random_module(&ctx, seed);
        let a = m.minimal_presentation().unwrap();
        prop_assert_eq!(finite(&a), finite(&m));
        let b = a.minimize_embedded().unwrap().module;
        prop_assert_eq!(a.gen_twists(), b.gen_twists());
        prop_assert_eq!(a.rel_twists(), b.rel_twists());
        for i in 0..a.num_rels() {
            for j in 0..a.num_gens() {
                let e = a.entry(j, i);
                prop_assert!(e.terms().iter().all(|t| !t.0.is_one()));
            }
        }
    }

    #[test]
    fn hom_tensor_adjunction_on_dimensions(seed in any::<u64>()) {
        let ctx = r2();
        let m = random_module(&ctx, seed);
        let n = random_module(&ctx, seed.wrapping_mul(31).wrapping_add(7));
        let r = PresentedModule::free(&ctx, vec![0]);
        let left = hom(&tensor(&m, &n).unwrap(), &r).unwrap();
        let right = hom(&m, &hom(&n, &r).unwrap()).unwrap();
        prop_assert_eq!(finite(&left), finite(&right));
    }

    #[test]
    fn matlis_duality_reverses_and_is_involutive(seed in any::<u64>(), which in 0usize..2) {
        let ctx = if which == 0 { r2() } else { r3() };
        let m = random_module(&ctx, seed);
        let real = FiniteLengthRealization::of_module(&m).unwrap();
        prop_assert!(real.actions_commute());
        prop_assert!(real.satisfies(ctx.ideal()));
        let md = m.matlis_dual().unwrap();
        let reversed: Vec<(i64, u64)> = finite(&m).into_iter().rev().map(|(d, v)| (-d, v)).collect();
        prop_assert_eq!(finite(&md), reversed);
        prop_assert_eq!(finite(&md.matlis_dual().unwrap()), finite(&m));
    }

    #[test]
    fn presenting_a_realization_recovers_the_module(seed in any::<u64>()) {
        let ctx = r3();
        let m = random_module(&ctx, seed);
        let back = FiniteLengthRealization::of_module(&m).unwrap().present(&ctx).unwrap();
        let min = m.minimal_presentation().unwrap();
        prop_assert_eq!(finite(&back), finite(&m));
        prop_assert_eq!(back.gen_twists(), min.gen_twists());
        prop_assert_eq!(back.rel_twists().len(), min.rel_twists().len());
    }
}
