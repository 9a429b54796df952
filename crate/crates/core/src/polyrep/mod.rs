//! Polynomial representation by Dunkl operators and the localized
//! representation by gauged Dunkl operators. This is the evaluation oracle for
//! the rewriting engine: nothing here goes through PBW normal forms.

use std::sync::{Arc, OnceLock};

use crate::cherednik::{Context, PbwElement};
use crate::coxeter::{dot, locpoly_apply_reflection, GroupElement};
use crate::error::Result;
use crate::exactmath::{poly_divide_exact, CoeffPoly, LocPoly, LocSpace, Mono, Rat, XPoly};
use crate::report::Report;

/// Evaluation context for one algebra context.
pub struct DunklContext {
    ctx: Arc<Context>,
    loc: LocSpace,
    forms: Vec<XPoly>,
    images: Vec<OnceLock<Vec<XPoly>>>,
}

/// All exponent vectors in `n` variables of total degree exactly `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Mono::from_slice(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// All exponent vectors of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Mono> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

impl DunklContext {
    pub fn new(ctx: &Arc<Context>) -> DunklContext {
        let rs = ctx.root_system();
        DunklContext {
            ctx: ctx.clone(),
            loc: LocSpace::new(rs.rank(), rs.positive_roots()),
            forms: rs.positive_roots().iter().map(|r| XPoly::linear_form(r)).collect(),
            images: (0..ctx.group().len()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn loc_space(&self) -> &LocSpace {
        &self.loc
    }

    fn rank(&self) -> usize {
        self.ctx.rank()
    }

    fn g(&self, a: usize) -> &CoeffPoly {
        self.ctx.multiplicities().of_root(self.ctx.root_system(), a)
    }

    fn unit(&self, i: usize) -> Vec<Rat> {
        (0..self.rank()).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }).collect()
    }

    /// `(w p)(x) = p(w^{-1} x)`, i.e. `x_i -> (w e_i, x)`.
    pub fn act(&self, w: GroupElement, p: &XPoly) -> XPoly {
        if w.is_identity() {
            return p.clone();
        }
        let images = self.images[w.idx()].get_or_init(|| {
            self.ctx.group().columns(w).iter().map(|c| XPoly::linear_form(c)).collect()
        });
        p.substitute(images)
    }

    /// `D_xi p = d_xi p + sum_alpha g_alpha (alpha, xi) (p - s_alpha p) / (alpha, x)`.
    pub fn dunkl_apply(&self, xi: &[Rat], p: &XPoly) -> Result<XPoly> {
        let mut out = p.directional(xi);
        let rs = self.ctx.root_system();
        for (a, alpha) in rs.positive_roots().iter().enumerate() {
            let ax = dot(alpha, xi);
            if ax.is_zero() {
                continue;
            }
            let diff = p - &self.act(self.ctx.group().reflection(a), p);
            if diff.is_zero() {
                continue;
            }
            let q = poly_divide_exact(&diff, &self.forms[a])?;
            out = &out + &q.scale(&self.g(a).scale(&ax));
        }
        Ok(out)
    }

    /// `D_i p` (0-based).
    pub fn dunkl_basis(&self, i: usize, p: &XPoly) -> Result<XPoly> {
        self.dunkl_apply(&self.unit(i), p)
    }

    /// Action of a PBW element: `D^b` first, then `w`, then multiplication by `x^a`.
    pub fn apply_element(&self, e: &PbwElement, p: &XPoly) -> Result<XPoly> {
        let mut out = XPoly::zero();
        for (k, c) in e.terms() {
            let mut q = p.clone();
            for i in 0..self.rank() {
                for _ in 0..k.b.get(i) {
                    q = self.dunkl_basis(i, &q)?;
                }
            }
            let q = self.act(k.w, &q).mul_mono(&k.a).scale(c);
            out = &out + &q;
        }
        Ok(out)
    }

    /// Reflection/group action on localized polynomials.
    pub fn act_loc(&self, w: GroupElement, f: &LocPoly) -> LocPoly {
        locpoly_apply_reflection(&self.loc, self.ctx.group(), f, w).expect("group preserves the root set")
    }

    /// `nabla_xi f = d_xi f - sum_alpha g_alpha (alpha, xi) / (alpha, x) s_alpha f`.
    pub fn nabla_apply(&self, xi: &[Rat], f: &LocPoly) -> LocPoly {
        let mut out = self.loc.zero();
        for (i, c) in xi.iter().enumerate() {
            if !c.is_zero() {
                out = self.loc.add(&out, &self.loc.scale(&self.loc.partial(i, f), &CoeffPoly::constant(c.clone())));
            }
        }
        let rs = self.ctx.root_system();
        for (a, alpha) in rs.positive_roots().iter().enumerate() {
            let ax = dot(alpha, xi);
            if ax.is_zero() {
                continue;
            }
            let sf = self.act_loc(self.ctx.group().reflection(a), f);
            let coef = -&self.g(a).scale(&ax);
            let t = self.loc.mul(&self.loc.inverse_form_power(a, 1, coef), &sf);
            out = self.loc.add(&out, &t);
        }
        out
    }

    pub fn nabla_basis(&self, i: usize, f: &LocPoly) -> LocPoly {
        self.nabla_apply(&self.unit(i), f)
    }

    fn laplacian(&self, p: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for i in 0..self.rank() {
            out = &out + &p.partial(i).partial(i);
        }
        out
    }

    /// `-1/2 sum_i nabla_i^2 p` in localized arithmetic.
    pub fn gauged_hamiltonian(&self, p: &XPoly) -> LocPoly {
        let f = self.loc.from_poly(p.clone());
        let mut acc = self.loc.zero();
        for i in 0..self.rank() {
            let t = self.nabla_basis(i, &self.nabla_basis(i, &f));
            acc = self.loc.add(&acc, &t);
        }
        self.loc.scale(&acc, &CoeffPoly::constant(Rat::new(-1, 2)))
    }

    /// `-1/2 Delta p + sign * sum_alpha g_alpha (g_alpha - s_alpha) (alpha, alpha) / (2 (alpha, x)^2) p`.
    pub fn potential_form(&self, p: &XPoly, sign: i64) -> LocPoly {
        self.potential_form_with(p, sign, true)
    }

    /// As `potential_form`; with `root_length` false the factor
    /// `(alpha, alpha) / 2` is dropped, which is only correct when all roots
    /// have squared length 2.
    pub fn potential_form_with(&self, p: &XPoly, sign: i64, root_length: bool) -> LocPoly {
        let mut acc = self.loc.from_poly(self.laplacian(p).scale_rat(&Rat::new(-1, 2)));
        let rs = self.ctx.root_system();
        for a in 0..rs.positive_roots().len() {
            let g = self.g(a);
            let sp = self.act(self.ctx.group().reflection(a), p);
            let num = &p.scale(&(g * g)) - &sp.scale(g);
            let c = &if root_length { rs.norm(a) * &Rat::new(sign, 2) } else { Rat::int(sign) };
            let mut den = vec![0; rs.positive_roots().len()];
            den[a] = 2;
            acc = self.loc.add(&acc, &self.loc.canonical(num.scale_rat(c), den));
        }
        acc
    }

    /// `-1/2 Delta p + sum_alpha g_alpha (g_alpha - eps) (alpha, alpha) / (2 (alpha, x)^2) p`
    /// where `eps = +1` on invariants and `-1` on anti-invariants.
    pub fn calogero_moser(&self, p: &XPoly, eps: i64) -> LocPoly {
        let mut acc = self.loc.from_poly(self.laplacian(p).scale_rat(&Rat::new(-1, 2)));
        let rs = self.ctx.root_system();
        for a in 0..rs.positive_roots().len() {
            let g = self.g(a);
            let coef = g * &(g - &CoeffPoly::int(eps));
            let mut den = vec![0; rs.positive_roots().len()];
            den[a] = 2;
            let num = p.scale(&coef).scale_rat(&(rs.norm(a) * &Rat::new(1, 2)));
            acc = self.loc.add(&acc, &self.loc.canonical(num, den));
        }
        acc
    }

    /// Checks `-1/2 sum nabla_i^2 = -1/2 Delta + sum g (g - s) (alpha, alpha) / (2 (alpha, x)^2)` on
    /// every monomial of degree at most `degree_bound`. A negative `potential_sign`
    /// flips the potential and `root_length = false` drops the root length
    /// factor (negative controls).
    pub fn verify_hamiltonian_identity(&self, degree_bound: u32, potential_sign: i64, root_length: bool) -> Report {
        let rs = self.ctx.root_system();
        let mut report = Report::new("hamiltonian", &rs.family().to_string(), rs.family_rank())
            .param("degree", degree_bound)
            .param("potential_sign", potential_sign)
            .param("root_length_factor", root_length);
        let monos = monomials_up_to(self.rank(), degree_bound);
        let outcomes = crate::par::map(&monos, |m| {
            let p = XPoly::monomial(*m, CoeffPoly::one());
            let lhs = self.gauged_hamiltonian(&p);
            let rhs = self.potential_form_with(&p, potential_sign, root_length);
            let diff = self.loc.sub(&lhs, &rhs);
            (*m, diff)
        });
        let names = self.names();
        for (m, diff) in outcomes {
            report.record("hamiltonian-identity", format!("{m:?}"), diff.is_zero(), || {
                self.loc.to_string_with(&diff, &names)
            });
        }
        report
    }

    fn names(&self) -> Vec<String> {
        self.ctx.symbol_names().to_vec()
    }

    /// Spanning set of invariant (`eps = 1`) or anti-invariant (`eps = -1`)
    /// polynomials of degree at most `degree_bound`.
    pub fn spanning_set(&self, eps: i64, degree_bound: u32) -> Vec<XPoly> {
        if self.ctx.root_system().is_type_a() {
            return type_a_spanning_set(self.rank(), eps, degree_bound);
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let group = self.ctx.group();
        for m in monomials_up_to(self.rank(), degree_bound) {
            let mono = XPoly::monomial(m, CoeffPoly::one());
            let mut acc = XPoly::zero();
            for w in group.elements() {
                let t = self.act(w, &mono);
                acc = if eps < 0 && group.det(w) < 0 { &acc - &t } else { &acc + &t };
            }
            if acc.is_zero() {
                continue;
            }
            let key = format!("{acc:?}");
            if seen.insert(key) {
                out.push(acc);
            }
        }
        out
    }

    /// Restriction checks: on invariants `H p = H_+ p` and `S p = -sum g_alpha p`;
    /// on anti-invariants `H p = H_- p` and `S p = +sum g_alpha p`.
    pub fn restrict_check(&self, degree_bound: u32) -> Report {
        let rs = self.ctx.root_system();
        let mut report =
            Report::new("restriction", &rs.family().to_string(), rs.family_rank()).param("degree", degree_bound);
        let mut g_sum = CoeffPoly::zero();
        for a in 0..rs.positive_roots().len() {
            g_sum.add_assign_ref(self.g(a));
        }
        let names = self.names();
        let group = self.ctx.group();
        for (eps, label) in [(1i64, "invariant"), (-1, "anti-invariant")] {
            let set = self.spanning_set(eps, degree_bound);
            let results = crate::par::map(&set, |p| {
                let lhs = self.gauged_hamiltonian(p);
                let rhs = self.calogero_moser(p, eps);
                let h_diff = self.loc.sub(&lhs, &rhs);
                let mut s_p = XPoly::zero();
                for a in 0..rs.positive_roots().len() {
                    s_p = &s_p - &self.act(group.reflection(a), p).scale(self.g(a));
                }
                let expect = p.scale(&g_sum.scale(&Rat::int(-eps)));
                (h_diff, &s_p - &expect)
            });
            for (p, (h_diff, s_diff)) in set.iter().zip(results) {
                let inst = p.to_string_with(&names);
                report.record(&format!("{label}-hamiltonian"), inst.clone(), h_diff.is_zero(), || {
                    self.loc.to_string_with(&h_diff, &names)
                });
                report.record(&format!("{label}-s-scalar"), inst, s_diff.is_zero(), || s_diff.to_string_with(&names));
            }
        }
        let sigma = g_sum.scale(&Rat::int(-1));
        report.result = Some(serde_json::json!({
            "invariant_s": sigma.to_string_with(&names),
            "anti_invariant_s": (-&sigma).to_string_with(&names),
        }));
        report
    }
}

fn partitions(d: u32, max_parts: usize, max_part: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    if max_parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=d.min(max_part)).rev() {
        for mut rest in partitions(d - first, max_parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `m_lambda`: sum over distinct rearrangements of the exponent vector.
pub fn monomial_symmetric(n: usize, lambda: &[u32]) -> XPoly {
    let mut exps: Vec<u32> = lambda.to_vec();
    exps.resize(n, 0);
    exps.sort_unstable();
    let mut out = XPoly::zero();
    loop {
        out.add_term(Mono::from_slice(&exps), &CoeffPoly::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> XPoly {
    let mut v = XPoly::one();
    for i in 0..n {
        for j in i + 1..n {
            v = &v * &(&XPoly::var(i) - &XPoly::var(j));
        }
    }
    v
}

fn type_a_spanning_set(n: usize, eps: i64, degree_bound: u32) -> Vec<XPoly> {
    let (base, shift) = if eps > 0 {
        (XPoly::one(), 0)
    } else {
        let v = vandermonde(n);
        let d = v.degree().unwrap_or(0);
        (v, d)
    };
    if shift > degree_bound {
        return Vec::new();
    }
    let mut out = Vec::new();
    for d in 0..=degree_bound - shift {
        for lambda in partitions(d, n, d) {
            out.push(&base * &monomial_symmetric(n, &lambda));
        }
    }
    out
}

/// One letter of a generator word.
#[derive(Clone, Copy, Debug)]
pub enum Letter {
    X(usize),
    D(usize),
    W(GroupElement),
}

/// Random words in `x_i`, `D_i` and group elements, each evaluated on a
/// random polynomial twice: letter by letter through the operators, and
/// through the PBW normal form of the word.
pub fn oracle_check(ctx: &Arc<Context>, samples: usize, max_len: usize, poly_degree: u32, seed: u64) -> Report {
    use rand::{Rng, SeedableRng};
    let dc = DunklContext::new(ctx);
    let n = ctx.rank();
    let group = ctx.group();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_up_to(n, poly_degree);
    let nsym = ctx.symbol_names().len();
    let mut cases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_len);
        let word: Vec<Letter> = (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Letter::X(rng.gen_range(0..n)),
                1 => Letter::D(rng.gen_range(0..n)),
                _ => Letter::W(GroupElement(rng.gen_range(0..group.len() as u32))),
            })
            .collect();
        let mut p = XPoly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let mut c = CoeffPoly::int(rng.gen_range(-5..=5));
            if nsym > 0 && rng.gen_bool(0.3) {
                c = &c * &CoeffPoly::symbol(rng.gen_range(0..nsym));
            }
            p.add_term(monos[rng.gen_range(0..monos.len())], &c);
        }
        cases.push((word, p));
    }
    let outcomes = crate::par::map(&cases, |(word, p)| -> Result<(String, bool, String)> {
        let mut step = p.clone();
        let mut prod = PbwElement::one(ctx);
        for l in word.iter().rev() {
            let (next, gen) = match *l {
                Letter::X(i) => (step.mul_mono(&Mono::var(i)), PbwElement::x(ctx, i)?),
                Letter::D(i) => (dc.dunkl_basis(i, &step)?, PbwElement::d(ctx, i)?),
                Letter::W(w) => (dc.act(w, &step), PbwElement::group_element(ctx, w)),
            };
            step = next;
            prod = &gen * &prod;
        }
        let via_pbw = dc.apply_element(&prod, p)?;
        let label = word
            .iter()
            .map(|l| match *l {
                Letter::X(i) => format!("x{}", i + 1),
                Letter::D(i) => format!("D{}", i + 1),
                Letter::W(w) => group.render(w),
            })
            .collect::<Vec<_>>()
            .join("*");
        let names = ctx.symbol_names();
        let label = format!("{label} on {}", p.to_string_with(names));
        let diff = &via_pbw - &step;
        Ok((label, diff.is_zero(), diff.to_string_with(names)))
    });
    let mut report = Report::new("oracle", &ctx.root_system().family().to_string(), n)
        .param("samples", samples)
        .param("max_length", max_len)
        .param("polynomial_degree", poly_degree)
        .param("seed", seed);
    for o in outcomes {
        match o {
            Ok((label, ok, witness)) => report.record("stepwise-vs-normal-form", label, ok, || witness),
            Err(e) => report.fail("stepwise-vs-normal-form", "evaluation", e.to_string()),
        }
    }
    report
}

/// `gamma_+- = 1/2 sigma (sigma - N + 2)` with `sigma = -+ g N (N-1) / 2`, as a polynomial identity.
pub fn verify_gamma(n_values: &[usize]) -> Report {
    let mut report = Report::new("gamma", "A", n_values.iter().copied().max().unwrap_or(0));
    for &n in n_values {
        for plus in [true, false] {
            let g = CoeffPoly::symbol(0);
            let sign = if plus { -1 } else { 1 };
            let sigma = g.scale(&Rat::new(sign * (n * (n - 1)) as i64, 2));
            let shifted = &sigma + &CoeffPoly::int(2 - n as i64);
            let rhs = (&sigma * &shifted).scale(&Rat::new(1, 2));
            let lhs = crate::cherednik::gamma_pm_formula(n, plus);
            let diff = &lhs - &rhs;
            let names = vec!["g".to_string()];
            report.record(
                if plus { "gamma-plus" } else { "gamma-minus" },
                format!("N={n}"),
                diff.is_zero(),
                || diff.to_string_with(&names),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_root_system, Family};

    fn ctx(f: Family, n: usize) -> Arc<Context> {
        Context::symbolic(build_root_system(f, n).unwrap()).unwrap()
    }

    #[test]
    fn dunkl_on_coordinate() {
        let dc = DunklContext::new(&ctx(Family::A, 2));
        let r = dc.dunkl_basis(0, &XPoly::var(0)).unwrap();
        assert_eq!(r, XPoly::constant(&CoeffPoly::one() + &CoeffPoly::symbol(0)));
        assert!(dc.dunkl_basis(0, &XPoly::constant(CoeffPoly::int(7))).unwrap().is_zero());
    }

    #[test]
    fn nabla_examples() {
        let dc = DunklContext::new(&ctx(Family::A, 2));
        let loc = dc.loc_space();
        let one = loc.from_poly(XPoly::one());
        let g = CoeffPoly::symbol(0);
        assert_eq!(dc.nabla_basis(0, &one), loc.inverse_form_power(0, 1, -&g));
        let x1 = loc.from_poly(XPoly::var(0));
        // 1 - g x2 / (x1 - x2)
        let expect = loc.add(
            &one,
            &loc.mul(&loc.from_poly(XPoly::var(1)), &loc.inverse_form_power(0, 1, -&g)),
        );
        assert_eq!(dc.nabla_basis(0, &x1), expect);
    }

    #[test]
    fn spanning_sets() {
        assert_eq!(type_a_spanning_set(2, 1, 2).len(), 4); // 1, m1, m2, m11
        assert_eq!(type_a_spanning_set(3, -1, 4).len(), 2); // V, V m1
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(partitions(4, 2, 4), vec![vec![4], vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn gamma_identity() {
        assert!(verify_gamma(&[2, 3, 4, 5]).passed());
        let g = CoeffPoly::symbol(0);
        assert_eq!(crate::cherednik::gamma_pm_formula(2, true), (&g * &g).scale(&Rat::new(1, 2)));
        let expect = &(&g * &g).scale(&Rat::new(9, 2)) + &g.scale(&Rat::new(3, 2));
        assert_eq!(crate::cherednik::gamma_pm_formula(3, true), expect);
    }
}
