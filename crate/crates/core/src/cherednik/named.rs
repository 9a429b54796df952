//! Named elements: angular momenta, `E_kl`, Hamiltonians, `rho`, and the
//! two antiautomorphisms.

use std::sync::Arc;

use super::context::{add_to, Context, PbwKey, Terms};
use super::element::PbwElement;
use crate::coxeter::{invariant_sum_s, s_pair, Family};
use crate::error::{Error, Result};
use crate::exactmath::{CoeffPoly, Mono, Rat};

fn unit(ctx: &Context, i: usize) -> Vec<Rat> {
    (0..ctx.rank()).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }).collect()
}

fn half() -> CoeffPoly {
    CoeffPoly::constant(Rat::new(1, 2))
}

/// `M_{xi eta} = (x, xi) D_eta - (x, eta) D_xi`.
pub fn angular_momentum(ctx: &Arc<Context>, xi: &[Rat], eta: &[Rat]) -> PbwElement {
    let mut t = Terms::default();
    for (i, a) in xi.iter().enumerate() {
        for (j, b) in eta.iter().enumerate() {
            let c = &(a * b);
            if c.is_zero() || i == j {
                continue;
            }
            // a_i b_j (x_i D_j - x_j D_i)
            let c = CoeffPoly::constant(c.clone());
            add_to(&mut t, PbwKey { a: Mono::var(i), w: Default::default(), b: Mono::var(j) }, &c);
            add_to(&mut t, PbwKey { a: Mono::var(j), w: Default::default(), b: Mono::var(i) }, &-&c);
        }
    }
    PbwElement::from_terms(ctx, t)
}

/// `M_ij = x_i D_j - x_j D_i` (0-based).
pub fn m(ctx: &Arc<Context>, i: usize, j: usize) -> Result<PbwElement> {
    check(ctx, i)?;
    check(ctx, j)?;
    Ok(angular_momentum(ctx, &unit(ctx, i), &unit(ctx, j)))
}

fn check(ctx: &Context, i: usize) -> Result<()> {
    if i >= ctx.rank() {
        return Err(Error::IndexOutOfRange { index: i, rank: ctx.rank() });
    }
    Ok(())
}

/// Unnormalized ladder operators `x_i - D_i` and `x_i + D_i`.
pub fn a_plus(ctx: &Arc<Context>, i: usize) -> Result<PbwElement> {
    Ok(&PbwElement::x(ctx, i)? - &PbwElement::d(ctx, i)?)
}

pub fn a_minus(ctx: &Arc<Context>, i: usize) -> Result<PbwElement> {
    Ok(&PbwElement::x(ctx, i)? + &PbwElement::d(ctx, i)?)
}

/// `E_kl = 1/2 (x_k - D_k)(x_l + D_l)` (0-based), so that `M_kl = E_kl - E_lk`.
pub fn e_generator(ctx: &Arc<Context>, k: usize, l: usize) -> Result<PbwElement> {
    Ok((&a_plus(ctx, k)? * &a_minus(ctx, l)?).scale(&half()))
}

/// `S_{xi eta}` as an algebra element.
pub fn s_pair_element(ctx: &Arc<Context>, xi: &[Rat], eta: &[Rat]) -> PbwElement {
    let ga = s_pair(xi, eta, ctx.root_system(), ctx.group(), ctx.multiplicities());
    PbwElement::from_group_algebra(ctx, &ga)
}

/// `S_ij` (0-based).
pub fn s_ij(ctx: &Arc<Context>, i: usize, j: usize) -> Result<PbwElement> {
    check(ctx, i)?;
    check(ctx, j)?;
    Ok(s_pair_element(ctx, &unit(ctx, i), &unit(ctx, j)))
}

/// `S = -sum g_alpha s_alpha`.
pub fn s_sum(ctx: &Arc<Context>) -> PbwElement {
    let ga = invariant_sum_s(ctx.root_system(), ctx.group(), ctx.multiplicities());
    PbwElement::from_group_algebra(ctx, &ga)
}

/// `H = -1/2 sum D_i^2`.
pub fn hamiltonian_h(ctx: &Arc<Context>) -> PbwElement {
    let mut t = Terms::default();
    for i in 0..ctx.rank() {
        let b = Mono::var(i).mul(&Mono::var(i));
        add_to(&mut t, PbwKey { a: Mono::ONE, w: Default::default(), b }, &-&half());
    }
    PbwElement::from_terms(ctx, t)
}

/// `x^2 = sum x_i^2`.
pub fn x_squared(ctx: &Arc<Context>) -> PbwElement {
    let mut t = Terms::default();
    for i in 0..ctx.rank() {
        let a = Mono::var(i).mul(&Mono::var(i));
        add_to(&mut t, PbwKey { a, w: Default::default(), b: Mono::ONE }, &CoeffPoly::one());
    }
    PbwElement::from_terms(ctx, t)
}

/// `sum D_i^2`.
pub fn d_squared(ctx: &Arc<Context>) -> PbwElement {
    hamiltonian_h(ctx).scale(&CoeffPoly::int(-2))
}

/// Euler operator `sum x_i D_i`.
pub fn euler(ctx: &Arc<Context>) -> PbwElement {
    let mut t = Terms::default();
    for i in 0..ctx.rank() {
        add_to(&mut t, PbwKey { a: Mono::var(i), w: Default::default(), b: Mono::var(i) }, &CoeffPoly::one());
    }
    PbwElement::from_terms(ctx, t)
}

/// `M^2 = sum_{i<j} M_ij^2`.
pub fn m_squared(ctx: &Arc<Context>) -> PbwElement {
    let n = ctx.rank();
    let mut acc = PbwElement::zero(ctx);
    for i in 0..n {
        for j in i + 1..n {
            let mij = m(ctx, i, j).unwrap();
            acc = &acc + &(&mij * &mij);
        }
    }
    acc
}

/// `H_Omega = -1/2 M^2 + 1/2 S (S - N + 2)`.
pub fn angular_hamiltonian(ctx: &Arc<Context>) -> PbwElement {
    let s = s_sum(ctx);
    let shift = PbwElement::scalar(ctx, CoeffPoly::int(2 - ctx.rank() as i64));
    let quad = &s * &(&s + &shift);
    &m_squared(ctx).scale(&-&half()) + &quad.scale(&half())
}

/// `rho = sum E_ii - S`.
pub fn rho(ctx: &Arc<Context>) -> PbwElement {
    let mut acc = PbwElement::zero(ctx);
    for i in 0..ctx.rank() {
        acc = &acc + &e_generator(ctx, i, i).unwrap();
    }
    &acc - &s_sum(ctx)
}

/// `gamma_+- = g N (N-1) (g N (N-1) +- 2 (N-2)) / 8` as a polynomial in `g`.
pub fn gamma_pm_formula(n: usize, plus: bool) -> CoeffPoly {
    let g = CoeffPoly::symbol(0);
    let nn = CoeffPoly::int((n * (n - 1)) as i64);
    let gn = &g * &nn;
    let shift = CoeffPoly::int(2 * (n as i64 - 2));
    let inner = if plus { &gn + &shift } else { &gn - &shift };
    (&gn * &inner).scale(&Rat::new(1, 8))
}

/// The scalar `gamma_+-` for the active type-A context.
pub fn gamma_pm(ctx: &Context, plus: bool) -> Result<CoeffPoly> {
    if ctx.root_system().family() != Family::A || ctx.rank() < 2 {
        return Err(Error::WrongRootSystem);
    }
    Ok(gamma_pm_formula(ctx.rank(), plus))
}

/// Antiautomorphism with `x_i -> x_i`, `D_i -> -D_i`, `w -> w^{-1}`.
pub fn adjoint(p: &PbwElement) -> PbwElement {
    let ctx = p.context();
    let group = ctx.group();
    let mut acc = PbwElement::zero(ctx);
    for (k, c) in p.terms() {
        let sign = if k.b.degree() % 2 == 1 { -c } else { c.clone() };
        // (x^a w D^b)^+ = (-D)^b w^{-1} x^a
        let d = PbwElement::monomial(ctx, PbwKey { a: Mono::ONE, w: Default::default(), b: k.b }, sign);
        let w = PbwElement::group_element(ctx, group.inv(k.w));
        let x = PbwElement::monomial(ctx, PbwKey { a: k.a, w: Default::default(), b: Mono::ONE }, CoeffPoly::one());
        acc = &acc + &(&(&d * &w) * &x);
    }
    acc
}

/// Antiautomorphism exchanging `x_i` and `D_i`, with `w -> w^{-1}`.
/// On PBW monomials it is the relabelling `x^a w D^b -> x^b w^{-1} D^a`.
pub fn exchange_antiauto(p: &PbwElement) -> PbwElement {
    let ctx = p.context();
    let group = ctx.group();
    let t = p
        .terms()
        .map(|(k, c)| (PbwKey { a: k.b, w: group.inv(k.w), b: k.a }, c.clone()))
        .collect();
    PbwElement::from_terms(ctx, t)
}

/// `sum_sigma sign(sigma) M_{s1 s2} M_{s3 s4} ... M_{s_{N-1} s_N}`.
pub fn pfaffian_sum(ctx: &Arc<Context>) -> Result<PbwElement> {
    let n = ctx.rank();
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    pfaffian_like(ctx, |ctx, i, j| m(ctx, i, j).unwrap())
}

/// The alternating sum with a caller-supplied factor `f(i, j)` in place of `M_ij`.
pub fn pfaffian_like(
    ctx: &Arc<Context>,
    f: impl Fn(&Arc<Context>, usize, usize) -> PbwElement,
) -> Result<PbwElement> {
    let n = ctx.rank();
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = PbwElement::zero(ctx);
    let factors: Vec<Vec<PbwElement>> = (0..n).map(|i| (0..n).map(|j| f(ctx, i, j)).collect()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut inv = 0;
        for a in 0..n {
            for b in a + 1..n {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        let mut prod = PbwElement::one(ctx);
        for k in (0..n).step_by(2) {
            prod = &prod * &factors[p[k]][p[k + 1]];
        }
        acc = if inv % 2 == 0 { &acc + &prod } else { &acc - &prod };
    });
    Ok(acc)
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}
