use std::sync::Arc;

use dunkl_core::cherednik::Context;
use dunkl_core::coxeter::{build_root_system, Family, GroupElement};
use dunkl_core::exactmath::CoeffPoly;
use dunkl_core::subalgebra::{
    random_element, soundness_check, ArcDiagram, Kind, SubAlgebra, SubElement, SubWord, DEFAULT_MAX_DEGREE,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sub(f: Family, n: usize, kind: Kind) -> Arc<SubAlgebra> {
    SubAlgebra::new(&Context::symbolic(build_root_system(f, n).unwrap()).unwrap(), kind)
}

#[test]
fn random_elements_so() {
    for n in [3, 4] {
        let r = soundness_check(&sub(Family::A, n, Kind::So), 100, 3, 0xa110 + n as u64);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.counts["embedding-preserved"].instances, 100);
        assert_eq!(r.counts["routes-agree"].instances, 100);
    }
}

#[test]
fn random_elements_gl_and_other_groups() {
    let r = soundness_check(&sub(Family::A, 3, Kind::Gl), 60, 3, 0x6100);
    assert!(r.passed(), "{}", r.to_text());
    for (f, n) in [(Family::B, 3), (Family::D, 4)] {
        let r = soundness_check(&sub(f, n, Kind::So), 40, 3, 0xb300);
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn gl_outside_type_a_uses_linear_route() {
    let s = sub(Family::B, 2, Kind::Gl);
    assert!(!s.can_rewrite());
    let r = soundness_check(&s, 30, 2, 0x6b20);
    assert!(r.passed(), "{}", r.to_text());
    assert!(!r.counts.contains_key("routes-agree"));
}

#[test]
fn capped_rewriting_falls_back() {
    let ctx = Context::symbolic(build_root_system(Family::A, 4).unwrap()).unwrap();
    let free = SubAlgebra::new(&ctx, Kind::So);
    let capped = SubAlgebra::with_limits(&ctx, Kind::So, 1, DEFAULT_MAX_DEGREE);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let e = random_element(&free, 3, &mut rng);
        let nf = free.normal_form(&e).unwrap();
        assert_eq!(capped.normal_form(&e).unwrap(), nf);
    }
}

#[test]
fn dropping_a_term_is_detected() {
    let s = sub(Family::A, 4, Kind::So);
    let e = s.multiply(&SubElement::generator(Kind::So, 0, 2), &SubElement::generator(Kind::So, 1, 3));
    let nf = s.normal_form(&e).unwrap();
    let (w, c) = nf.terms().find(|(w, _)| w.degree() < 2).map(|(w, c)| (w.clone(), c.clone())).unwrap();
    let mut broken = nf.clone();
    broken.add_term(w, &-&c);
    assert_ne!(s.embed(&broken), s.embed(&e));
}

#[test]
fn outside_the_subalgebra() {
    // x1 alone is not a combination of angular momenta
    let s = sub(Family::A, 3, Kind::So);
    let ctx = s.context();
    let x1 = dunkl_core::cherednik::PbwElement::x(ctx, 0).unwrap();
    assert!(s.express(&x1).is_err());
    let m = s.embed(&SubElement::generator(Kind::So, 0, 1));
    let back = s.express(&m).unwrap();
    assert_eq!(back, SubElement::generator(Kind::So, 0, 1));
}

#[test]
fn crossing_resolution_shape() {
    let s = sub(Family::A, 4, Kind::So);
    let e = s.multiply(&SubElement::generator(Kind::So, 0, 2), &SubElement::generator(Kind::So, 1, 3));
    let nf = s.normal_form(&e).unwrap();
    for (w, _) in nf.terms() {
        assert_eq!(ArcDiagram::from_letters(&w.letters()).crossings(), 0);
    }
    let top: Vec<&SubWord> = nf.terms().map(|(w, _)| w).filter(|w| w.degree() == 2).collect();
    assert_eq!(top.len(), 2);
}

#[test]
fn generator_conventions() {
    assert_eq!(SubElement::generator(Kind::So, 1, 0), SubElement::generator(Kind::So, 0, 1).scale(&CoeffPoly::int(-1)));
    assert!(SubElement::generator(Kind::So, 2, 2).is_zero());
    assert!(!SubElement::generator(Kind::Gl, 2, 2).is_zero());
    let w = SubWord::from_letters(&[(0, 1)], GroupElement::IDENTITY);
    assert!(w.is_basis(Kind::So));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn straightening_is_sound(seed in any::<u64>()) {
        let s = sub(Family::A, 3, Kind::So);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_element(&s, 3, &mut rng);
        let nf = s.normal_form(&e).unwrap();
        prop_assert!(nf.is_normal());
        prop_assert_eq!(s.embed(&nf), s.embed(&e));
        prop_assert_eq!(s.normal_form(&nf).unwrap(), nf);
    }
}
