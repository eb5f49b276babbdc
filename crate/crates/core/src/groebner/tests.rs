use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::submodule::{kernel, quotient_hilbert};
use super::*;
use crate::algebra::field::FieldSpec;
use crate::algebra::monomial::Monomial;
use crate::algebra::parse::parse_homogeneous;
use crate::algebra::poly::Polynomial;

fn ring(vars: &[&str]) -> PolyRing {
    PolyRing::new(FieldSpec::default_field(), vars.iter().map(|s| s.to_string()).collect()).unwrap()
}

fn p(r: &PolyRing, s: &str) -> Polynomial {
    parse_homogeneous(s, r).unwrap()
}

fn rank_one(r: &PolyRing, fs: &[Polynomial]) -> SubmoduleBasis {
    let space = FreeModuleSpec::new(vec![0]);
    let gens = fs.iter().map(|f| FreeVector::from_entries(r, &space, &[(0, f.clone())]).unwrap()).collect();
    SubmoduleBasis { space, gens }
}

fn polys(r: &PolyRing, gb: &GroebnerBasis) -> Vec<Polynomial> {
    gb.generators.iter().map(|g| g.entry(r, 0)).collect()
}

fn gb_of(r: &PolyRing, fs: &[Polynomial]) -> GroebnerBasis {
    GroebnerBasis { space: FreeModuleSpec::new(vec![0]), generators: rank_one(r, fs).gens, reduced: false }
}

#[test]
fn binomial_reduces_in_one_step() {
    let r = ring(&["w", "x", "y", "z"]);
    let gb = gb_of(&r, &[p(&r, "w*x - y*z")]);
    let v = rank_one(&r, &[p(&r, "w*x")]).gens.remove(0);
    let nf = normal_form(&r, &gb, &v).unwrap();
    assert_eq!(nf.entry(&r, 0), p(&r, "y*z"));
    assert!(normal_form(&r, &gb, &gb.generators[0]).unwrap().is_zero());
}

#[test]
fn y_cubed_is_irreducible_before_completion() {
    let r = ring(&["x", "y"]);
    let gb = gb_of(&r, &[p(&r, "x^2"), p(&r, "x*y + y^2")]);
    let v = rank_one(&r, &[p(&r, "y^3")]).gens.remove(0);
    assert_eq!(normal_form(&r, &gb, &v).unwrap().entry(&r, 0), p(&r, "y^3"));
}

#[test]
fn normal_form_rejects_foreign_components() {
    let r = ring(&["x"]);
    let gb = gb_of(&r, &[p(&r, "x")]);
    assert!(normal_form(&r, &gb, &FreeVector::basis(3)).is_err());
}

#[test]
fn completion_adds_y_cubed() {
    let r = ring(&["x", "y"]);
    let sub = rank_one(&r, &[p(&r, "x^2"), p(&r, "x*y + y^2")]);
    let gb = buchberger(&r, &sub, &Limits::default()).unwrap();
    assert_eq!(polys(&r, &gb), vec![p(&r, "x^2"), p(&r, "x*y + y^2"), p(&r, "y^3")]);
}

#[test]
fn single_binomial_and_koszul_pair_are_already_bases() {
    let r = ring(&["w", "x", "y", "z"]);
    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "w*x - y*z")]), &Limits::default()).unwrap();
    assert_eq!(polys(&r, &gb), vec![p(&r, "w*x - y*z")]);
    let r = ring(&["x", "y"]);
    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "y"), p(&r, "x")]), &Limits::default()).unwrap();
    assert_eq!(polys(&r, &gb), vec![p(&r, "x"), p(&r, "y")]);
}

#[test]
fn degree_cap_is_reported() {
    let r = ring(&["x", "y"]);
    let sub = rank_one(&r, &[p(&r, "x^2"), p(&r, "x*y + y^2")]);
    let limits = Limits { degree_cap: 2, ..Limits::default() };
    assert!(matches!(buchberger(&r, &sub, &limits), Err(Error::DegreeCapExceeded { .. })));
}

fn apply(r: &PolyRing, gb: &GroebnerBasis, syz: &FreeVector) -> FreeVector {
    let mut acc = FreeVector::zero();
    for (i, c) in syz.entries(r) {
        acc = acc.add_poly_mul(r, &gb.space, &gb.generators[i], c.terms());
    }
    acc
}

#[test]
fn koszul_relation_of_two_variables() {
    let r = ring(&["x", "y"]);
    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "x"), p(&r, "y")]), &Limits::default()).unwrap();
    let syz = syzygy_basis(&r, &gb, &Limits::default()).unwrap();
    assert_eq!(syz.gens.len(), 1);
    assert_eq!(syz.space.twists(), &[1, 1]);
    let s = &syz.gens[0];
    assert!(apply(&r, &gb, s).is_zero());
    let (a, b) = (s.entry(&r, 0), s.entry(&r, 1));
    assert!(
        (a == p(&r, "-y") && b == p(&r, "x")) || (a == p(&r, "y") && b == p(&r, "-x")),
        "{} {}",
        r.format(&a),
        r.format(&b)
    );
}

#[test]
fn single_generator_has_no_syzygies() {
    let r = ring(&["x", "y"]);
    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "x^2 + x*y")]), &Limits::default()).unwrap();
    assert!(syzygy_basis(&r, &gb, &Limits::default()).unwrap().gens.is_empty());
}

#[test]
fn schreyer_syzygies_of_three_generators() {
    let r = ring(&["x", "y"]);
    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "x^2"), p(&r, "x*y + y^2")]), &Limits::default()).unwrap();
    let syz = syzygy_basis(&r, &gb, &Limits::default()).unwrap();
    assert_eq!(syz.gens.len(), 2);
    for s in &syz.gens {
        assert!(apply(&r, &gb, s).is_zero());
    }
    // the ideal has exactly two minimal relations
    let ctx = QuotientRing::polynomial(r.clone()).unwrap();
    let cols: Vec<FreeVector> = gb.generators.clone();
    let kern = kernel(&ctx, &[2, 2, 3], &[0], &cols).unwrap();
    assert_eq!(kern.len(), 2);
}

#[test]
fn lifting_appends_ideal_times_basis_vectors() {
    let ctx = QuotientRing::parse(101, &["w", "x", "y", "z"], &["w*x - y*z"]).unwrap();
    let sub = SubmoduleBasis::new(vec![0], Vec::new());
    let lifted = lift_over_quotient(&ctx, &sub);
    assert_eq!(lifted.gens.len(), 1);
    assert_eq!(lifted.gens[0].entry(ctx.poly(), 0), p(ctx.poly(), "w*x - y*z"));

    let ctx = QuotientRing::parse(101, &["x"], &["x^2"]).unwrap();
    let r = ctx.poly();
    let sub = SubmoduleBasis::new(vec![0], rank_one(r, &[p(r, "x")]).gens);
    let lifted = lift_over_quotient(&ctx, &sub);
    let entries: Vec<Polynomial> = lifted.gens.iter().map(|g| g.entry(r, 0)).collect();
    assert_eq!(entries, vec![p(r, "x"), p(r, "x^2")]);
}

fn annihilator_check(ctx: &Ctx) {
    let r = ctx.poly();
    let col = rank_one(r, &[p(r, "x")]).gens;
    let kern = kernel(ctx, &[1], &[0], &col).unwrap();
    assert_eq!(kern.len(), 1);
    assert_eq!(kern[0].entry(r, 0), p(r, "x"));
}

#[test]
fn annihilator_of_x_modulo_x_squared() {
    let ctx = QuotientRing::parse(101, &["x"], &["x^2"]).unwrap();
    assert!(ctx.is_artinian());
    annihilator_check(&ctx);
    annihilator_check(&ctx.generic_backend());
    let ctx = QuotientRing::parse(101, &["x", "y"], &["x^2"]).unwrap();
    assert!(!ctx.is_artinian());
    annihilator_check(&ctx);
}

#[test]
fn hilbert_data_examples() {
    let r = ring(&["w", "x", "y", "z"]);
    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "w*x - y*z")]), &Limits::default()).unwrap();
    assert_eq!(hilbert_data(&r, &gb).1, 3);

    let r = ring(&["x", "y"]);
    let gb = buchberger(&r, &rank_one(&r, &[]), &Limits::default()).unwrap();
    let (h, d) = hilbert_data(&r, &gb);
    assert_eq!(d, 2);
    assert_eq!(h.values(0, 4), vec![1, 2, 3, 4, 5]);

    let gb = buchberger(&r, &rank_one(&r, &[p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")]), &Limits::default())
        .unwrap();
    let (h, d) = hilbert_data(&r, &gb);
    assert_eq!(d, 0);
    assert_eq!(h.finite_dims().unwrap(), vec![(0, 1), (1, 2)]);
}

#[test]
fn polynomial_and_artinian_dimensions() {
    for n in 1..=4 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        assert_eq!(QuotientRing::parse(101, &refs, &[]).unwrap().dim(), n);
    }
    let r3 = QuotientRing::parse(101, &["x", "y", "z"], &["x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"]).unwrap();
    assert_eq!(r3.dim(), 0);
    assert_eq!(r3.hilbert().length(), Some(5));
    assert_eq!(r3.artinian().unwrap().top_degree(), 2);
}

fn random_form(r: &PolyRing, rng: &mut ChaCha8Rng, deg: u32) -> Polynomial {
    let n = r.nvars();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; n];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        terms.push((Monomial::from_exponents(&exps, r.weights()).unwrap(), rng.gen_range(1..101)));
    }
    r.from_terms(terms)
}

fn random_ideal(r: &PolyRing, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_form(r, &mut rng, d)
        })
        .filter(|f| !f.is_zero())
        .collect()
}

fn s_poly(r: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = *f.leading().unwrap();
    let (mg, cg) = *g.leading().unwrap();
    let l = r.lcm(&mf, &mg);
    let fld = r.field();
    let a = r.from_terms(vec![(mf.quotient_of(&l), fld.inv(cf))]);
    let b = r.from_terms(vec![(mg.quotient_of(&l), fld.inv(cg))]);
    r.sub(&r.mul(&a, f).unwrap(), &r.mul(&b, g).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_pairs_reduce_to_zero(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"]);
        let ideal = random_ideal(&r, seed);
        let gb = buchberger(&r, &rank_one(&r, &ideal), &Limits::default()).unwrap();
        let gs = polys(&r, &gb);
        for i in 0..gs.len() {
            prop_assert_eq!(gs[i].leading().unwrap().1, 1);
            for j in i + 1..gs.len() {
                let s = s_poly(&r, &gs[i], &gs[j]);
                let v = rank_one(&r, &[s]).gens.remove(0);
                prop_assert!(normal_form(&r, &gb, &v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_decides_membership(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"]);
        let ideal = random_ideal(&r, seed);
        let gb = buchberger(&r, &rank_one(&r, &ideal), &Limits::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let target = 3 + rng.gen_range(0..2);
        let mut member = r.zero();
        for f in &ideal {
            let d = f.degree().unwrap();
            if d <= target {
                let c = random_form(&r, &mut rng, target - d);
                member = r.add(&member, &r.mul(&c, f).unwrap()).unwrap();
            }
        }
        let v = rank_one(&r, &[member]).gens.remove(0);
        prop_assert!(normal_form(&r, &gb, &v).unwrap().is_zero());

        let w = rank_one(&r, &[random_form(&r, &mut rng, target)]).gens.remove(0);
        let nf = normal_form(&r, &gb, &w).unwrap();
        prop_assert_eq!(normal_form(&r, &gb, &nf).unwrap(), nf.clone());
        for t in nf.terms() {
            for g in &gb.generators {
                prop_assert!(!g.lead().unwrap().mon.divides(&t.mon));
            }
        }
    }

    #[test]
    fn syzygies_annihilate_the_basis(seed in any::<u64>()) {
        let r = ring(&["x", "y", "z"]);
        let ideal = random_ideal(&r, seed);
        let gb = buchberger(&r, &rank_one(&r, &ideal), &Limits::default()).unwrap();
        let syz = syzygy_basis(&r, &gb, &Limits::default()).unwrap();
        for s in &syz.gens {
            prop_assert!(s.is_homogeneous(&syz.space));
            prop_assert!(apply(&r, &gb, s).is_zero());
        }
    }

    #[test]
    fn artinian_and_groebner_backends_agree(seed in any::<u64>(), which in 0usize..2) {
        let ctx = if which == 0 {
            QuotientRing::parse(101, &["x", "y"], &["x^2", "y^2"]).unwrap()
        } else {
            QuotientRing::parse(101, &["x", "y", "z"], &["x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"]).unwrap()
        };
        let slow = ctx.generic_backend();
        let r = ctx.poly();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tgt: Vec<i32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..2)).collect();
        let tspace = FreeModuleSpec::new(tgt.clone());
        let mut src = Vec::new();
        let mut cols = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let d = tgt.iter().max().unwrap() + rng.gen_range(1..=2);
            let entries: Vec<(usize, Polynomial)> = tgt
                .iter()
                .enumerate()
                .map(|(j, &a)| (j, ctx.reduce(&random_form(r, &mut rng, (d - a) as u32))))
                .collect();
            src.push(d);
            cols.push(FreeVector::from_entries(r, &tspace, &entries).unwrap());
        }
        let h_fast = quotient_hilbert(&ctx, &tgt, &cols).unwrap();
        let h_slow = quotient_hilbert(&slow, &tgt, &cols).unwrap();
        prop_assert_eq!(h_fast.finite_dims(), h_slow.finite_dims());

        let k_fast = kernel(&ctx, &src, &tgt, &cols).unwrap();
        let k_slow = kernel(&slow, &src, &tgt, &cols).unwrap();
        let deg = |k: &[FreeVector]| {
            let sspace = FreeModuleSpec::new(src.clone());
            let mut d: Vec<i64> = k.iter().map(|v| v.degree(&sspace).unwrap()).collect();
            d.sort();
            d
        };
        prop_assert_eq!(deg(&k_fast), deg(&k_slow));
        let hk_fast = quotient_hilbert(&ctx, &src, &k_fast).unwrap();
        let hk_slow = quotient_hilbert(&ctx, &src, &k_slow).unwrap();
        prop_assert_eq!(hk_fast.finite_dims(), hk_slow.finite_dims());
    }
}
