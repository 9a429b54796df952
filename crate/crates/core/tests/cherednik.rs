use std::sync::{Arc, LazyLock};

use dunkl_core::cherednik::*;
use dunkl_core::coxeter::{build_root_system, Family, GroupElement};
use dunkl_core::exactmath::{CoeffPoly, Mono, Rat, XPoly};
use dunkl_core::polyrep::{monomials_up_to, DunklContext};
use proptest::prelude::*;

fn ctx(f: Family, n: usize) -> Arc<Context> {
    Context::symbolic(build_root_system(f, n).unwrap()).unwrap()
}

static A2: LazyLock<Arc<Context>> = LazyLock::new(|| ctx(Family::A, 2));
static A3: LazyLock<Arc<Context>> = LazyLock::new(|| ctx(Family::A, 3));
static B2: LazyLock<Arc<Context>> = LazyLock::new(|| ctx(Family::B, 2));

fn g() -> CoeffPoly {
    CoeffPoly::symbol(0)
}

fn x(c: &Arc<Context>, i: usize) -> PbwElement {
    PbwElement::x(c, i).unwrap()
}

fn d(c: &Arc<Context>, i: usize) -> PbwElement {
    PbwElement::d(c, i).unwrap()
}

fn elem(c: &Arc<Context>, images: &[i64]) -> PbwElement {
    PbwElement::group_element(c, c.group().find_signed(images).unwrap())
}

fn scalar(c: &Arc<Context>, v: CoeffPoly) -> PbwElement {
    PbwElement::scalar(c, v)
}

/// Both elements act identically on every monomial up to `deg`.
fn same_action(c: &Arc<Context>, p: &PbwElement, q: &PbwElement, deg: u32) -> bool {
    let dc = DunklContext::new(c);
    monomials_up_to(c.rank(), deg).into_iter().all(|m| {
        let f = XPoly::monomial(m, CoeffPoly::one());
        dc.apply_element(p, &f).unwrap() == dc.apply_element(q, &f).unwrap()
    })
}

#[test]
fn dunkl_past_coordinate() {
    let c = &*A2;
    let lhs = &d(c, 0) * &x(c, 0);
    let rhs = &(&x(c, 0) * &d(c, 0)) + &(&scalar(c, CoeffPoly::one()) + &scalar(c, g()).try_mul(&elem(c, &[2, 1])).unwrap());
    assert_eq!(lhs, rhs);
    assert!(same_action(c, &lhs, &rhs, 3));
}

#[test]
fn dunkl_past_product() {
    let c = &*A2;
    let lhs = &d(c, 0) * &(&x(c, 0) * &x(c, 1));
    let rhs = &(&(&x(c, 0) * &x(c, 1)) * &d(c, 0)) + &x(c, 1);
    assert_eq!(lhs, rhs);
    // the oracle: apply D1 to x1 x2 f directly
    let dc = DunklContext::new(c);
    for m in monomials_up_to(2, 3) {
        let f = XPoly::monomial(m, CoeffPoly::one());
        let x1x2f = f.mul_mono(&Mono::from_slice(&[1, 1]));
        assert_eq!(dc.dunkl_basis(0, &x1x2f).unwrap(), dc.apply_element(&rhs, &f).unwrap());
    }
}

#[test]
fn group_moves_coordinates() {
    let c = &*A2;
    let s = elem(c, &[2, 1]);
    assert_eq!(&s * &x(c, 0), &x(c, 1) * &s);
    assert_eq!(&s * &d(c, 0), &d(c, 1) * &s);
}

#[test]
fn commuting_generators() {
    let c = &*A3;
    for i in 0..3 {
        for j in 0..3 {
            assert!(commutator(&x(c, i), &x(c, j)).unwrap().is_zero());
            assert!(commutator(&d(c, i), &d(c, j)).unwrap().is_zero());
        }
    }
}

#[test]
fn disjoint_angular_momenta() {
    let c = ctx(Family::A, 4);
    let mm = |i, j| m(&c, i, j).unwrap();
    let s = |i, j| s_ij(&c, i, j).unwrap();
    let lhs = commutator(&mm(0, 1), &mm(2, 3)).unwrap();
    let rhs = &(&(&mm(0, 3) * &s(1, 2)) + &(&mm(1, 2) * &s(0, 3))) - &(&(&mm(0, 2) * &s(3, 1)) + &(&mm(1, 3) * &s(0, 2)));
    assert_eq!(lhs, rhs);
    assert!(!lhs.is_zero());
}

#[test]
fn angular_momentum_shape() {
    let c = &*A2;
    let e1 = [Rat::ONE, Rat::ZERO];
    let e2 = [Rat::ZERO, Rat::ONE];
    let m12 = angular_momentum(c, &e1, &e2);
    assert_eq!(m12, &(&x(c, 0) * &d(c, 1)) - &(&x(c, 1) * &d(c, 0)));
    assert_eq!(angular_momentum(c, &e2, &e1), -&m12);
    assert!(angular_momentum(c, &e1, &e1).is_zero());
    assert_eq!(m12.filtration_degree(), Some(2));
}

#[test]
fn angular_momentum_equivariance() {
    let c = &*B2;
    let group = c.group();
    let xi = [Rat::new(3, 2), Rat::int(-1)];
    let eta = [Rat::int(2), Rat::new(1, 3)];
    let mxe = angular_momentum(c, &xi, &eta);
    for w in group.elements() {
        let pw = PbwElement::group_element(c, w);
        let pinv = PbwElement::group_element(c, group.inv(w));
        let lhs = &(&pw * &mxe) * &pinv;
        let rhs = angular_momentum(c, &group.apply(w, &xi), &group.apply(w, &eta));
        assert_eq!(lhs, rhs, "w = {}", group.render(w));
    }
}

#[test]
fn angular_momentum_bilinear() {
    let c = &*A3;
    let u = [Rat::int(1), Rat::int(2), Rat::int(-1)];
    let v = [Rat::new(1, 2), Rat::int(0), Rat::int(3)];
    let w = [Rat::int(0), Rat::int(-2), Rat::int(1)];
    let sum: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
    let lhs = angular_momentum(c, &sum, &w);
    let rhs = &angular_momentum(c, &u, &w) + &angular_momentum(c, &v, &w);
    assert_eq!(lhs, rhs);
}

#[test]
fn gl_generators() {
    let c = &*A2;
    let e = |k, l| e_generator(c, k, l).unwrap();
    assert_eq!(&e(0, 1) - &e(1, 0), m(c, 0, 1).unwrap());
    let lhs = commutator(&e(0, 0), &e(1, 1)).unwrap();
    let rhs = &(&e(0, 0) - &e(1, 1)) * &s_ij(c, 0, 1).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(adjoint(&e(0, 1)), e(1, 0));
}

#[test]
fn named_elements() {
    let c1 = ctx(Family::A, 1);
    let h = hamiltonian_h(&c1);
    assert_eq!(h, (&d(&c1, 0) * &d(&c1, 0)).scale_rat(&Rat::new(-1, 2)));

    let c = &*A2;
    let m12 = m(c, 0, 1).unwrap();
    let sq = m_squared(c);
    assert_eq!(sq, &m12 * &m12);
    // action on x1 and x1 x2 against applying M12 twice
    let dc = DunklContext::new(c);
    for f in [XPoly::var(0), &XPoly::var(0) * &XPoly::var(1)] {
        let twice = dc.apply_element(&m12, &dc.apply_element(&m12, &f).unwrap()).unwrap();
        assert_eq!(dc.apply_element(&sq, &f).unwrap(), twice);
    }

    let r = rho(c);
    let e = |k, l| e_generator(c, k, l).unwrap();
    let expected = &(&e(0, 0) + &e(1, 1)) + &scalar(c, g()).try_mul(&elem(c, &[2, 1])).unwrap();
    assert_eq!(r, expected);
    assert!(commutator(&r, &e(0, 1)).unwrap().is_zero());
}

#[test]
fn gamma_values() {
    let half = CoeffPoly::constant(Rat::new(1, 2));
    let g2 = &g() * &g();
    assert_eq!(gamma_pm(&A2, true).unwrap(), &g2 * &half);
    assert_eq!(gamma_pm(&A2, false).unwrap(), &g2 * &half);
    let nine_g2 = g2.scale(&Rat::int(9));
    let three_g = g().scale(&Rat::int(3));
    assert_eq!(gamma_pm(&A3, true).unwrap(), &(&nine_g2 + &three_g) * &half);
    assert!(gamma_pm(&B2, true).is_err());
}

#[test]
fn adjoint_examples() {
    let c = &*A3;
    let m12 = m(c, 0, 1).unwrap();
    assert_eq!(adjoint(&m12), -&m12);
    let s = elem(c, &[2, 1, 3]);
    assert_eq!(adjoint(&s), s);
    let cyc = elem(c, &[2, 3, 1]);
    assert_eq!(adjoint(&cyc), elem(c, &[3, 1, 2]));
    assert_eq!(adjoint(&s_sum(c)), s_sum(c));
}

#[test]
fn exchange_examples() {
    let c = &*A2;
    // x^a w D^b maps to x^b w^{-1} D^a with no reordering left over
    let p = &x(c, 0) * &d(c, 1);
    assert_eq!(exchange_antiauto(&p), &x(c, 1) * &d(c, 0));
    let c3 = &*A3;
    let h = hamiltonian_h(c3);
    assert_eq!(exchange_antiauto(&h), x_squared(c3).scale_rat(&Rat::new(-1, 2)));
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mij = m(c3, i, j).unwrap();
        assert_eq!(exchange_antiauto(&mij), -&mij);
        let hm = commutator(&h, &mij).unwrap();
        assert!(hm.is_zero());
        assert!(exchange_antiauto(&hm).is_zero());
        assert!(commutator(&x_squared(c3), &mij).unwrap().is_zero());
    }
}

#[test]
fn pfaffian_cases() {
    let c = &*A2;
    assert_eq!(pfaffian_sum(c).unwrap(), m(c, 0, 1).unwrap().scale(&CoeffPoly::int(2)));
    assert!(pfaffian_sum(&A3).is_err());
    let c4 = ctx(Family::A, 4);
    assert!(pfaffian_sum(&c4).unwrap().is_zero());
    let flipped = pfaffian_like(&c4, |c, i, j| {
        let mij = m(c, i, j).unwrap();
        if (i, j) == (0, 1) {
            -&mij
        } else {
            mij
        }
    })
    .unwrap();
    assert!(!flipped.is_zero());
}

#[test]
fn leading_parts() {
    let c = &*A3;
    let lhs = commutator(&m(c, 0, 1).unwrap(), &m(c, 1, 2).unwrap()).unwrap();
    let top = lhs.leading_part();
    assert_eq!(top.filtration_degree(), Some(2));
    assert!(top.terms().any(|(k, _)| !k.w.is_identity()));
    assert!(commutator(&x(c, 0), &x(c, 1)).unwrap().is_zero());
}

#[test]
fn context_mismatch() {
    let p = x(&A2, 0);
    let q = x(&A3, 0);
    assert!(p.try_mul(&q).is_err());
}

/// Random element from up to `len` monomials with small exponents.
fn element_strategy(c: &'static LazyLock<Arc<Context>>, len: usize, max_exp: u32) -> impl Strategy<Value = PbwElement> {
    let n = c.rank();
    let order = c.group().len() as u32;
    let term = (
        prop::collection::vec(0..=max_exp, n),
        0..order,
        prop::collection::vec(0..=max_exp, n),
        -3i64..=3,
        0u32..=1,
    );
    prop::collection::vec(term, 1..=len).prop_map(move |terms| {
        let c: &Arc<Context> = c;
        let mut acc = PbwElement::zero(c);
        for (a, w, b, k, gp) in terms {
            let coeff = CoeffPoly::int(k).scale(&Rat::ONE);
            let coeff = if gp == 1 { &coeff * &g() } else { coeff };
            let key = PbwKey { a: Mono::from_slice(&a), w: GroupElement(w), b: Mono::from_slice(&b) };
            acc = &acc + &PbwElement::monomial(c, key, coeff);
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity_a3(p in element_strategy(&A3, 3, 1), q in element_strategy(&A3, 3, 1), r in element_strategy(&A3, 3, 1)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn associativity_b2(p in element_strategy(&B2, 3, 2), q in element_strategy(&B2, 3, 1), r in element_strategy(&B2, 2, 2)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn distributivity(p in element_strategy(&A2, 3, 2), q in element_strategy(&A2, 3, 2), r in element_strategy(&A2, 3, 2)) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn adjoint_involutive_antimultiplicative(p in element_strategy(&A3, 3, 1), q in element_strategy(&A3, 3, 1)) {
        prop_assert_eq!(adjoint(&adjoint(&p)), p.clone());
        prop_assert_eq!(adjoint(&(&p * &q)), &adjoint(&q) * &adjoint(&p));
    }

    #[test]
    fn exchange_involutive_antimultiplicative(p in element_strategy(&B2, 3, 1), q in element_strategy(&B2, 3, 1)) {
        prop_assert_eq!(exchange_antiauto(&exchange_antiauto(&p)), p.clone());
        prop_assert_eq!(exchange_antiauto(&(&p * &q)), &exchange_antiauto(&q) * &exchange_antiauto(&p));
    }

    #[test]
    fn product_matches_oracle(p in element_strategy(&A2, 2, 1), q in element_strategy(&A2, 2, 1)) {
        // acting by the product equals acting by q then p
        let c = &*A2;
        let dc = DunklContext::new(c);
        let pq = &p * &q;
        for m in monomials_up_to(2, 2) {
            let f = XPoly::monomial(m, CoeffPoly::one());
            let stepwise = dc.apply_element(&p, &dc.apply_element(&q, &f).unwrap()).unwrap();
            prop_assert_eq!(dc.apply_element(&pq, &f).unwrap(), stepwise);
        }
    }

    #[test]
    fn nonzero_acts_nonzero(p in element_strategy(&A2, 3, 2)) {
        // faithfulness: a nonzero element moves some monomial of degree at
        // most its largest D-degree
        prop_assume!(!p.is_zero());
        let c = &*A2;
        let dc = DunklContext::new(c);
        let bound = p.terms().map(|(k, _)| k.b.degree()).max().unwrap();
        let hit = monomials_up_to(2, bound).into_iter().any(|m| {
            !dc.apply_element(&p, &XPoly::monomial(m, CoeffPoly::one())).unwrap().is_zero()
        });
        prop_assert!(hit);
    }
}
