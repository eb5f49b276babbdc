use proptest::prelude::*;

use super::*;
use crate::groebner::QuotientRing;
use crate::module::{dual, hom, tensor};
use crate::testing::*;

fn poly_ring(n: usize) -> Ctx {
    let names = ["x", "y", "z", "u"];
    QuotientRing::parse(101, &names[..n], &[]).unwrap()
}

fn fin(d: Dimension) -> u64 {
    d.finite().unwrap_or_else(|| panic!("expected a finite dimension, got {d}"))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn graded_betti_sorted(t: &BettiTable) -> Vec<(i64, Vec<(i64, u64)>)> {
    t.entries.iter().map(|(i, r)| (*i, r.iter().map(|(j, b)| (*j, *b)).collect())).collect()
}

#[test]
fn koszul_betti_numbers() {
    for n in 2..=3 {
        let ctx = poly_ring(n);
        let k = PresentedModule::residue_field(&ctx);
        let r = minimal_free_resolution(&k, n + 2).unwrap();
        assert_eq!(r.projective_dimension(), Some(n));
        let b = r.betti();
        for i in 0..=n {
            assert_eq!(b.total(i as i64), binomial(n as u64, i as u64));
            assert_eq!(b.get(i as i64, i as i64), binomial(n as u64, i as u64));
        }
        assert!(r.complex().composition_is_zero());
        assert!(r.complex().is_minimal());
    }
}

#[test]
fn residue_field_of_dual_numbers_is_periodic() {
    let ctx = dual_numbers();
    let k = PresentedModule::residue_field(&ctx);
    let r = minimal_free_resolution(&k, 6).unwrap();
    assert_eq!(r.projective_dimension(), None);
    for i in 0..=6 {
        assert_eq!(r.complex().rank(i), 1);
        assert_eq!(r.complex().twists(i), &[i as i32]);
    }
    for i in 1..=6 {
        assert_eq!(r.complex().entry(i, 0, 0), p(&ctx, "x"));
    }
}

#[test]
fn example_module_has_projective_dimension_one() {
    let ctx = r1();
    let n = example_n(&ctx);
    let r = minimal_free_resolution(&n, 4).unwrap();
    assert_eq!(r.projective_dimension(), Some(1));
    assert_eq!(r.betti().totals(), vec![4, 1]);
}

#[test]
fn betti_table_renders_triangularly() {
    let ctx = poly_ring(3);
    let k = PresentedModule::residue_field(&ctx);
    let text = minimal_free_resolution(&k, 3).unwrap().betti().to_string();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["total:", "1", "3", "3", "1"]);
    assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["0:", "1", "3", "3", "1"]);
    let json = minimal_free_resolution(&k, 3).unwrap().betti().to_json();
    assert_eq!(json["rows"][2]["total"], 3);
}

#[test]
fn first_syzygy_of_residue_field_is_the_maximal_ideal() {
    let ctx = poly_ring(2);
    let k = PresentedModule::residue_field(&ctx);
    let s = syzygy(&k, 1).unwrap();
    assert_eq!(s.gen_twists(), &[1, 1]);
    assert_eq!(s.rel_twists(), &[2]);
    let free = PresentedModule::free(&ctx, vec![0, 3]);
    for i in 1..4 {
        assert!(syzygy(&free, i).unwrap().is_zero().unwrap());
    }
}

#[test]
fn high_syzygies_are_maximal_cohen_macaulay() {
    let ctx = r1();
    for m in [example_n(&ctx), PresentedModule::residue_field(&ctx), random_module(&ctx, 3)] {
        let s = syzygy(&m, 3).unwrap();
        assert!(is_mcm(&s).unwrap(), "{s}");
    }
    let ctx = poly_ring(2);
    let k = PresentedModule::residue_field(&ctx);
    assert!(syzygy(&k, 2).unwrap().is_free().unwrap());
}

#[test]
fn depth_and_gorenstein() {
    let ctx = r1();
    let k = PresentedModule::residue_field(&ctx);
    assert_eq!(depth(&k).unwrap(), 0);
    assert_eq!(depth(&example_n(&ctx)).unwrap(), 2);
    assert_eq!(depth(&PresentedModule::free(&ctx, vec![0])).unwrap(), 3);
    assert!(!is_mcm(&example_n(&ctx)).unwrap());
    assert!(is_mcm(&coker(&ctx, &[&["w", "y"], &["z", "x"]])).unwrap());
    assert!(gorenstein_check(&ctx).unwrap());
    assert!(gorenstein_check(&r3()).unwrap());
    assert!(gorenstein_check(&r2()).unwrap());
    let not = QuotientRing::parse(101, &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
    assert!(!gorenstein_check(&not).unwrap());
    assert_eq!(depth(&PresentedModule::zero(&ctx)), Err(Error::ZeroModule));
}

#[test]
fn auslander_buchsbaum_on_example_module() {
    let ctx = r1();
    let n = example_n(&ctx);
    let pd = projective_dimension(&n, 5).unwrap().unwrap();
    assert_eq!(pd + depth(&n).unwrap(), ctx.dim());
}

#[test]
fn ext_of_residue_field_over_the_plane() {
    let ctx = poly_ring(2);
    let k = PresentedModule::residue_field(&ctx);
    let e = ext(&k, &k, 0..=3).unwrap();
    let dims: Vec<u64> = e.dims().into_iter().map(fin).collect();
    assert_eq!(dims, vec![1, 2, 1, 0]);
    let d: Vec<u64> = ext_dims(&k, &k, 0..=3).unwrap().dims().into_iter().map(fin).collect();
    assert_eq!(d, dims);
    // Ext^i(k, k) sits in internal degree -i
    assert_eq!(e.get(1).unwrap().graded().unwrap(), vec![(-1, 2)]);
    let t: Vec<u64> = tor(&k, &k, 0..=3).unwrap().dims().into_iter().map(fin).collect();
    assert_eq!(t, vec![1, 2, 1, 0]);
}

#[test]
fn ext_zero_and_tor_zero_are_hom_and_tensor() {
    let ctx = r3();
    let m = random_module(&ctx, 11);
    let n = random_module(&ctx, 12);
    let e0 = ext(&m, &n, 0..=0).unwrap();
    assert_eq!(e0.get(0).unwrap().hilbert.clone().unwrap(), hom(&m, &n).unwrap().hilbert().unwrap());
    let t0 = tor(&m, &n, 0..=0).unwrap();
    assert_eq!(t0.get(0).unwrap().hilbert.clone().unwrap(), tensor(&m, &n).unwrap().hilbert().unwrap());
}

#[test]
fn tor_against_the_ring_vanishes() {
    let ctx = r1();
    let r = PresentedModule::free(&ctx, vec![0]);
    for m in [example_n(&ctx), PresentedModule::residue_field(&ctx)] {
        let t = tor_dims(&m, &r, 1..=3).unwrap();
        assert!(t.dims().iter().all(|d| *d == Dimension::Finite(0)));
    }
}

#[test]
fn example_ext_four_into_dual_is_nonzero() {
    let ctx = r1();
    let k = PresentedModule::residue_field(&ctx);
    let nd = dual(&example_n(&ctx)).unwrap();
    let e = ext_dims(&k, &nd, 4..=4).unwrap();
    assert!(fin(e.dim(4)) > 0);
    let t = tor_dims(&k, &example_n(&ctx), 2..=5).unwrap();
    assert!(t.dims().iter().all(|d| *d == Dimension::Finite(0)));
}

#[test]
fn dual_numbers_negative_syzygies_are_residue_fields() {
    let ctx = dual_numbers();
    let k = PresentedModule::residue_field(&ctx);
    for t in 1..=4 {
        let s = negative_syzygy(&k, -t).unwrap();
        assert_eq!(s.length().unwrap(), Some(1));
        assert_eq!(s.num_gens(), 1);
    }
    let c = complete_resolution(&k, 3, 3).unwrap();
    assert!(c.complex().composition_is_zero());
    assert!(c.is_exact().unwrap());
    assert_eq!(c.complex().lo(), -3);
    assert!((c.complex().lo()..=c.complex().hi()).all(|i| c.complex().rank(i) == 1));
}

#[test]
fn complete_resolution_requires_hypotheses() {
    let ctx = r1();
    assert!(matches!(complete_resolution(&example_n(&ctx), 2, 2), Err(Error::NotMcm(_))));
    let not = QuotientRing::parse(101, &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
    let k = PresentedModule::residue_field(&not);
    assert_eq!(complete_resolution(&k, 2, 2).unwrap_err(), Error::NotGorenstein);
}

#[test]
fn complete_resolution_over_the_hypersurface() {
    let ctx = r1();
    let m = coker(&ctx, &[&["w", "y"], &["z", "x"]]);
    let c = complete_resolution(&m, 3, 3).unwrap();
    assert!(c.complex().composition_is_zero());
    assert!(c.is_exact().unwrap());
    // the dual of C(M) carries the graded data of C(M*)
    let md = dual(&m).unwrap();
    let cd = complete_resolution(&md, 4, 2).unwrap();
    let a = c.complex().dual().betti();
    let b = cd.complex().betti();
    for i in a.indices() {
        if b.entries.contains_key(&i) {
            assert_eq!(a.entries[&i], b.entries[&i], "index {i}");
        }
    }
}

#[test]
fn via_complete_agrees_on_free_and_residue_field() {
    let ctx = r3();
    let k = PresentedModule::residue_field(&ctx);
    let free = PresentedModule::free(&ctx, vec![0]);
    let e = ext_via_complete(&free, &k, 1..=3, 5).unwrap();
    assert!(e.dims().iter().all(|d| *d == Dimension::Finite(0)));
    let t = tor_via_complete(&free, &k, 1..=3, 5).unwrap();
    assert!(t.dims().iter().all(|d| *d == Dimension::Finite(0)));
    let a = ext_dims(&k, &k, 1..=3).unwrap().dims();
    let b = ext_via_complete(&k, &k, 1..=3, 5).unwrap().dims();
    assert_eq!(a, b);
    let a = tor_dims(&k, &k, 1..=3).unwrap().dims();
    let b = tor_via_complete(&k, &k, 1..=3, 5).unwrap().dims();
    assert_eq!(a, b);
    assert!(matches!(ext_via_complete(&k, &k, 1..=4, 5), Err(Error::WindowTooSmall(_))));
}

#[test]
fn stable_hom_examples() {
    let ctx = r1();
    let n = example_n(&ctx);
    let r = PresentedModule::free(&ctx, vec![0]);
    assert!(stable_hom(&r, &n).unwrap().is_zero().unwrap());
    let ctx = dual_numbers();
    let k = PresentedModule::residue_field(&ctx);
    assert_eq!(stable_hom(&k, &k).unwrap().length().unwrap(), Some(1));
}

#[test]
fn ext_read_off_the_dual_complex() {
    let ctx = r3();
    let m = random_module(&ctx, 5);
    let n = random_module(&ctx, 6);
    let c = complete_resolution(&m, 2, 5).unwrap();
    let d = c.complex().dual();
    for i in 1..=3usize {
        let a = ext_dim(&m, &n, i).unwrap();
        let b = tensor_homology_dim(&d, &n, -(i as i64) - 1).unwrap();
        assert_eq!(a, b, "i = {i}");
        let a = tor_dim(&m, &n, i).unwrap();
        let b = tensor_homology_dim(c.complex(), &n, i as i64).unwrap();
        assert_eq!(a, b, "i = {i}");
    }
}

#[test]
fn cache_is_shared_between_calls() {
    let ctx = r2();
    let k = PresentedModule::residue_field(&ctx);
    let before = ctx.cached_resolutions();
    minimal_free_resolution(&k, 3).unwrap();
    minimal_free_resolution(&k, 5).unwrap();
    minimal_free_resolution(&k, 2).unwrap();
    assert_eq!(ctx.cached_resolutions(), before + 1);
}

#[test]
fn rank_budget_makes_entries_unknown() {
    use crate::groebner::Limits;
    let ctx = r3().with_new_limits(Limits { max_rank: 30, ..Limits::default() });
    let k = PresentedModule::residue_field(&ctx);
    let e = ext_dims(&k, &k, 0..=6).unwrap();
    assert_eq!(e.dim(0), Dimension::Finite(1));
    assert_eq!(e.dim(6), Dimension::Unknown);
    assert!(minimal_free_resolution(&k, 6).is_err());
}

#[test]
fn dims_against_a_free_module_come_from_the_other_side() {
    let ctx = r3();
    let k = PresentedModule::residue_field(&ctx);
    let free = PresentedModule::free(&ctx, vec![0, 1]);
    let e = ext_dims(&k, &free, 0..=10).unwrap();
    assert!(e.dims()[1..].iter().all(|d| *d == Dimension::Finite(0)));
    assert!(tor_dims(&k, &free, 1..=10).unwrap().dims().iter().all(|d| *d == Dimension::Finite(0)));
    let direct = ext(&k, &free, 0..=2).unwrap();
    for i in 0..=2 {
        assert_eq!(e.get(i).unwrap().graded(), direct.get(i).unwrap().graded(), "Ext^{i}");
    }
    let direct = tor(&free, &k, 0..=2).unwrap();
    let t = tor_dims(&k, &free, 0..=2).unwrap();
    for i in 0..=2 {
        assert_eq!(t.get(i).unwrap().graded(), direct.get(i).unwrap().graded(), "Tor_{i}");
    }
}

fn artinian_pair(which: usize, a: u64, b: u64) -> (PresentedModule, PresentedModule) {
    let ctx = if which == 0 { r2() } else { r3() };
    (random_module(&ctx, a), random_module(&ctx, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resolutions_compose_to_zero_and_are_minimal(seed in any::<u64>(), which in 0usize..3) {
        let ctx = [r1, r2, r3][which]();
        let m = random_module(&ctx, seed);
        let r = minimal_free_resolution(&m, 3).unwrap();
        prop_assert!(r.complex().composition_is_zero());
        prop_assert!(r.complex().is_minimal());
        let h0 = r.complex().cokernel_at(0).unwrap().hilbert().unwrap();
        prop_assert_eq!(h0, m.hilbert().unwrap());
    }

    #[test]
    fn module_and_dimension_paths_agree(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        let e = ext(&m, &n, 0..=2).unwrap();
        let d = ext_dims(&m, &n, 0..=2).unwrap();
        for i in 0..=2 {
            prop_assert_eq!(&e.get(i).unwrap().hilbert, &d.get(i).unwrap().hilbert);
        }
        let e = tor(&m, &n, 0..=2).unwrap();
        let d = tor_dims(&m, &n, 0..=2).unwrap();
        for i in 0..=2 {
            prop_assert_eq!(&e.get(i).unwrap().hilbert, &d.get(i).unwrap().hilbert);
        }
    }

    #[test]
    fn both_backends_give_the_same_ext(a in any::<u64>(), b in any::<u64>()) {
        let ctx = r3();
        let generic = ctx.generic_backend();
        let (m, n) = (random_module(&ctx, a), random_module(&ctx, b));
        let (mg, ng) = (random_module(&generic, a), random_module(&generic, b));
        prop_assert_eq!(ext_dims(&m, &n, 0..=2).unwrap().dims(), ext(&mg, &ng, 0..=2).unwrap().dims());
    }

    #[test]
    fn shift_isomorphism(which in 0usize..2, a in any::<u64>(), b in any::<u64>(), n_shift in 1usize..=3) {
        let (m, n) = artinian_pair(which, a, b);
        let nn = syzygy(&n, n_shift).unwrap();
        for i in 1..=2usize {
            prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), ext_dim(&m, &nn, i + n_shift).unwrap());
        }
    }

    #[test]
    fn ext_is_symmetric_under_duals(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        let (md, nd) = (dual(&m).unwrap(), dual(&n).unwrap());
        for i in 1..=4usize {
            prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), ext_dim(&nd, &md, i).unwrap());
        }
    }

    #[test]
    fn negative_syzygies_dualize(which in 0usize..2, a in any::<u64>()) {
        let ctx = if which == 0 { r2() } else { r3() };
        let m = random_module(&ctx, a);
        let md = dual(&m).unwrap();
        let cm = complete_resolution(&m, 3, 3).unwrap();
        let cmd = complete_resolution(&md, 3, 3).unwrap();
        for i in -2i64..=2 {
            let lhs = dual(&cm.syzygy(i).unwrap()).unwrap();
            let rhs = cmd.syzygy(-i).unwrap();
            let bl = minimal_free_resolution(&lhs, 2).unwrap().betti();
            let br = minimal_free_resolution(&rhs, 2).unwrap().betti();
            prop_assert_eq!(graded_betti_sorted(&bl), graded_betti_sorted(&br), "i = {}", i);
        }
        prop_assert!(cm.is_exact().unwrap());
    }

    #[test]
    fn dual_of_complete_resolution_matches(which in 0usize..2, a in any::<u64>()) {
        let ctx = if which == 0 { r2() } else { r3() };
        let m = random_module(&ctx, a);
        let cm = complete_resolution(&m, 3, 2).unwrap();
        let cmd = complete_resolution(&dual(&m).unwrap(), 3, 2).unwrap();
        let a = cm.complex().dual().betti();
        let b = cmd.complex().betti();
        for i in -2i64..=1 {
            prop_assert_eq!(a.entries.get(&i), b.entries.get(&i), "index {}", i);
        }
    }

    #[test]
    fn conversions_through_negative_syzygies(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        let t = 4usize;
        let mt = negative_syzygy(&m, -(t as i64)).unwrap();
        let md = dual(&m).unwrap();
        for i in 1..=t - 2 {
            prop_assert_eq!(tor_dim(&mt, &n, i).unwrap(), ext_dim(&md, &n, t - i - 1).unwrap());
            prop_assert_eq!(ext_dim(&mt, &n, i).unwrap(), tor_dim(&md, &n, t - i - 1).unwrap());
        }
    }

    #[test]
    fn both_paths_agree(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        prop_assert_eq!(ext_dims(&m, &n, 1..=3).unwrap().dims(), ext_via_complete(&m, &n, 1..=3, 5).unwrap().dims());
        prop_assert_eq!(tor_dims(&m, &n, 1..=3).unwrap().dims(), tor_via_complete(&m, &n, 1..=3, 5).unwrap().dims());
    }

    #[test]
    fn exact_sequence_of_stable_hom(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        for i in 2..=3usize {
            let mi = syzygy(&m, i).unwrap();
            let lhs = fin(ext_dim(&m, &n, i - 1).unwrap()) as i64
                - tensor(&dual(&mi).unwrap(), &n).unwrap().length().unwrap().unwrap() as i64
                + hom(&mi, &n).unwrap().length().unwrap().unwrap() as i64
                - fin(ext_dim(&m, &n, i).unwrap()) as i64;
            prop_assert_eq!(lhs, 0, "i = {}", i);
            let sh = stable_hom(&mi, &n).unwrap().length().unwrap().unwrap();
            prop_assert_eq!(sh, fin(ext_dim(&m, &n, i).unwrap()));
        }
    }

    #[test]
    fn stable_hom_shifts_and_dualizes(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        let len = |x: PresentedModule| x.length().unwrap().unwrap();
        let base = len(stable_hom(&m, &n).unwrap());
        let shifted = len(stable_hom(&syzygy(&m, 1).unwrap(), &syzygy(&n, 1).unwrap()).unwrap());
        let dualized = len(stable_hom(&dual(&n).unwrap(), &dual(&m).unwrap()).unwrap());
        prop_assert_eq!(base, shifted);
        prop_assert_eq!(base, dualized);
    }

    #[test]
    fn ext_into_matlis_dual_matches_tor(which in 0usize..2, a in any::<u64>(), b in any::<u64>()) {
        let (m, n) = artinian_pair(which, a, b);
        let nv = n.matlis_dual().unwrap();
        for i in 0..=3usize {
            prop_assert_eq!(ext_dim(&m, &nv, i).unwrap(), tor_dim(&m, &n, i).unwrap());
        }
    }

    #[test]
    fn auslander_buchsbaum_over_polynomial_rings(seed in any::<u64>()) {
        let ctx = poly_ring(3);
        let m = random_module(&ctx, seed);
        let pd = projective_dimension(&m, 4).unwrap().unwrap();
        prop_assert_eq!(pd + depth(&m).unwrap(), 3);
    }
}

