//! Elements of the rational Cherednik algebra in PBW normal form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::context::{add_to, Context, PbwKey, Terms};
use crate::coxeter::{GroupAlgebraElement, GroupElement};
use crate::error::{Error, Result};
use crate::exactmath::xpoly::write_signed_term;
use crate::exactmath::{CoeffPoly, Mono, Rat, XPoly};
use crate::par;

/// Products with at least this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 256;

/// Finite sum of `c * x^a * w * D^b`.
#[derive(Clone)]
pub struct PbwElement {
    ctx: Arc<Context>,
    terms: Terms,
}

/// One of the defining generators, or a directional one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    X(usize),
    D(usize),
    Group(GroupElement),
    XVec(Vec<Rat>),
    DVec(Vec<Rat>),
}

/// Canonical term order: total degree descending, then `x` part and `D`
/// part in descending graded reverse-lex order, then group index.
pub fn canonical_cmp(p: &PbwKey, q: &PbwKey) -> Ordering {
    q.degree()
        .cmp(&p.degree())
        .then_with(|| q.a.grevlex_cmp(&p.a))
        .then_with(|| q.b.grevlex_cmp(&p.b))
        .then_with(|| p.w.cmp(&q.w))
}

impl PbwElement {
    pub(crate) fn from_terms(ctx: &Arc<Context>, terms: Terms) -> PbwElement {
        PbwElement { ctx: ctx.clone(), terms }
    }

    pub fn zero(ctx: &Arc<Context>) -> PbwElement {
        Self::from_terms(ctx, Terms::default())
    }

    pub fn scalar(ctx: &Arc<Context>, c: CoeffPoly) -> PbwElement {
        Self::monomial(ctx, PbwKey { a: Mono::ONE, w: GroupElement::IDENTITY, b: Mono::ONE }, c)
    }

    pub fn one(ctx: &Arc<Context>) -> PbwElement {
        Self::scalar(ctx, CoeffPoly::one())
    }

    pub fn monomial(ctx: &Arc<Context>, key: PbwKey, c: CoeffPoly) -> PbwElement {
        let mut t = Terms::default();
        add_to(&mut t, key, &c);
        Self::from_terms(ctx, t)
    }

    fn check_index(ctx: &Context, i: usize) -> Result<()> {
        if i >= ctx.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: ctx.rank() });
        }
        Ok(())
    }

    /// `x_i` (0-based).
    pub fn x(ctx: &Arc<Context>, i: usize) -> Result<PbwElement> {
        Self::check_index(ctx, i)?;
        Ok(Self::monomial(ctx, PbwKey { a: Mono::var(i), w: GroupElement::IDENTITY, b: Mono::ONE }, CoeffPoly::one()))
    }

    /// `D_i` (0-based).
    pub fn d(ctx: &Arc<Context>, i: usize) -> Result<PbwElement> {
        Self::check_index(ctx, i)?;
        Ok(Self::monomial(ctx, PbwKey { a: Mono::ONE, w: GroupElement::IDENTITY, b: Mono::var(i) }, CoeffPoly::one()))
    }

    pub fn group_element(ctx: &Arc<Context>, w: GroupElement) -> PbwElement {
        Self::monomial(ctx, PbwKey { a: Mono::ONE, w, b: Mono::ONE }, CoeffPoly::one())
    }

    /// `(x, xi)`.
    pub fn x_vec(ctx: &Arc<Context>, xi: &[Rat]) -> PbwElement {
        let mut t = Terms::default();
        for (i, c) in xi.iter().enumerate() {
            add_to(&mut t, PbwKey { a: Mono::var(i), w: GroupElement::IDENTITY, b: Mono::ONE }, &CoeffPoly::constant(c.clone()));
        }
        Self::from_terms(ctx, t)
    }

    /// `D_xi = sum xi_i D_i`.
    pub fn d_vec(ctx: &Arc<Context>, xi: &[Rat]) -> PbwElement {
        let mut t = Terms::default();
        for (i, c) in xi.iter().enumerate() {
            add_to(&mut t, PbwKey { a: Mono::ONE, w: GroupElement::IDENTITY, b: Mono::var(i) }, &CoeffPoly::constant(c.clone()));
        }
        Self::from_terms(ctx, t)
    }

    pub fn generator(ctx: &Arc<Context>, spec: &GeneratorSpec) -> Result<PbwElement> {
        match spec {
            GeneratorSpec::X(i) => Self::x(ctx, *i),
            GeneratorSpec::D(i) => Self::d(ctx, *i),
            GeneratorSpec::Group(w) => Ok(Self::group_element(ctx, *w)),
            GeneratorSpec::XVec(v) | GeneratorSpec::DVec(v) => {
                if v.len() != ctx.rank() {
                    return Err(Error::Config(format!("vector of length {} in rank {}", v.len(), ctx.rank())));
                }
                Ok(match spec {
                    GeneratorSpec::XVec(_) => Self::x_vec(ctx, v),
                    _ => Self::d_vec(ctx, v),
                })
            }
        }
    }

    pub fn from_group_algebra(ctx: &Arc<Context>, e: &GroupAlgebraElement) -> PbwElement {
        let mut t = Terms::default();
        for (w, c) in e.terms() {
            add_to(&mut t, PbwKey { a: Mono::ONE, w, b: Mono::ONE }, c);
        }
        Self::from_terms(ctx, t)
    }

    /// Multiplication operator by a polynomial in `x`.
    pub fn from_xpoly(ctx: &Arc<Context>, p: &XPoly) -> PbwElement {
        let mut t = Terms::default();
        for (m, c) in p.iter() {
            add_to(&mut t, PbwKey { a: *m, w: GroupElement::IDENTITY, b: Mono::ONE }, c);
        }
        Self::from_terms(ctx, t)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn same_context(&self, other: &PbwElement) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwKey, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &PbwKey) -> CoeffPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(PbwKey, CoeffPoly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by(|p, q| canonical_cmp(&p.0, &q.0));
        v
    }

    /// Largest `|a| + |b|` over the terms; `None` for zero.
    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms.keys().map(PbwKey::degree).max()
    }

    /// Terms of maximal filtration degree.
    pub fn leading_part(&self) -> PbwElement {
        let Some(d) = self.filtration_degree() else { return self.clone() };
        let t = self.terms.iter().filter(|(k, _)| k.degree() == d).map(|(k, c)| (*k, c.clone())).collect();
        Self::from_terms(&self.ctx, t)
    }

    /// Largest coupling-polynomial degree among the coefficients.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms.values().map(CoeffPoly::total_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &CoeffPoly) -> PbwElement {
        let mut t = Terms::default();
        if !c.is_zero() {
            for (k, x) in &self.terms {
                add_to(&mut t, *k, &(x * c));
            }
        }
        Self::from_terms(&self.ctx, t)
    }

    pub fn scale_rat(&self, r: &Rat) -> PbwElement {
        self.scale(&CoeffPoly::constant(r.clone()))
    }

    fn combine(&self, other: &PbwElement, sign: i32) -> Result<PbwElement> {
        if !self.same_context(other) {
            return Err(Error::ContextMismatch);
        }
        let mut t = self.terms.clone();
        for (k, c) in &other.terms {
            if sign > 0 {
                add_to(&mut t, *k, c);
            } else {
                add_to(&mut t, *k, &-c);
            }
        }
        Ok(Self::from_terms(&self.ctx, t))
    }

    pub fn try_add(&self, other: &PbwElement) -> Result<PbwElement> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &PbwElement) -> Result<PbwElement> {
        self.combine(other, -1)
    }

    /// Normal form of the product.
    pub fn try_mul(&self, other: &PbwElement) -> Result<PbwElement> {
        if !self.same_context(other) {
            return Err(Error::ContextMismatch);
        }
        let ctx = &self.ctx;
        let left: Vec<(&PbwKey, &CoeffPoly)> = self.terms.iter().collect();
        let right: Vec<(&PbwKey, &CoeffPoly)> = other.terms.iter().collect();
        let row = |(k1, c1): &(&PbwKey, &CoeffPoly)| {
            let mut out = Terms::default();
            for (k2, c2) in &right {
                ctx.mul_monomials(k1, c1, k2, c2, &mut out);
            }
            out
        };
        let terms = if left.len() * right.len() >= PAR_THRESHOLD && par::is_parallel() {
            par::map_reduce(&left, Terms::default, row, merge)
        } else {
            let mut out = Terms::default();
            for (k1, c1) in &left {
                for (k2, c2) in &right {
                    ctx.mul_monomials(k1, c1, k2, c2, &mut out);
                }
            }
            out
        };
        Ok(Self::from_terms(ctx, terms))
    }

    pub fn pow(&self, e: u32) -> PbwElement {
        let mut acc = PbwElement::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates every coefficient at a rational point of the coupling symbols.
    pub fn specialize(&self, point: &[Rat]) -> PbwElement {
        let mut t = Terms::default();
        for (k, c) in &self.terms {
            add_to(&mut t, *k, &CoeffPoly::constant(c.eval(point)));
        }
        Self::from_terms(&self.ctx, t)
    }

    /// Canonical text: `coef*x^a*[w]*D^b` terms in canonical order.
    pub fn to_canonical_string(&self) -> String {
        let mut s = String::new();
        self.write_canonical(&mut s).unwrap();
        s
    }

    fn write_canonical(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_char('0');
        }
        let names = self.ctx.symbol_names();
        let group = self.ctx.group();
        for (idx, (k, c)) in terms.iter().enumerate() {
            let is_one = k.a.is_one() && k.b.is_one() && k.w.is_identity();
            write_signed_term(
                idx == 0,
                c,
                names,
                f,
                |f| {
                    let mut first = true;
                    if !k.a.is_one() {
                        k.a.write_with("x", f)?;
                        first = false;
                    }
                    if !k.w.is_identity() {
                        if !first {
                            f.write_char('*')?;
                        }
                        f.write_str(&group.render(k.w))?;
                        first = false;
                    }
                    if !k.b.is_one() {
                        if !first {
                            f.write_char('*')?;
                        }
                        k.b.write_with("D", f)?;
                    }
                    Ok(())
                },
                is_one,
            )?;
        }
        Ok(())
    }
}

fn merge(mut a: Terms, b: Terms) -> Terms {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, c) in b {
        add_to(&mut a, k, &c);
    }
    a
}

pub fn commutator(p: &PbwElement, q: &PbwElement) -> Result<PbwElement> {
    p.try_mul(q)?.try_sub(&q.try_mul(p)?)
}

pub fn anticommutator(p: &PbwElement, q: &PbwElement) -> Result<PbwElement> {
    p.try_mul(q)?.try_add(&q.try_mul(p)?)
}

impl PartialEq for PbwElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.terms == other.terms
    }
}

impl Eq for PbwElement {}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f)
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f)
    }
}

impl<'a> Add<&'a PbwElement> for &'a PbwElement {
    type Output = PbwElement;
    fn add(self, rhs: &PbwElement) -> PbwElement {
        self.try_add(rhs).expect("elements from different contexts")
    }
}

impl<'a> Sub<&'a PbwElement> for &'a PbwElement {
    type Output = PbwElement;
    fn sub(self, rhs: &PbwElement) -> PbwElement {
        self.try_sub(rhs).expect("elements from different contexts")
    }
}

impl<'a> Mul<&'a PbwElement> for &'a PbwElement {
    type Output = PbwElement;
    fn mul(self, rhs: &PbwElement) -> PbwElement {
        self.try_mul(rhs).expect("elements from different contexts")
    }
}

impl Neg for &PbwElement {
    type Output = PbwElement;
    fn neg(self) -> PbwElement {
        PbwElement::from_terms(&self.ctx, self.terms.iter().map(|(k, c)| (*k, -c)).collect())
    }
}

impl Add for PbwElement {
    type Output = PbwElement;
    fn add(self, rhs: PbwElement) -> PbwElement {
        &self + &rhs
    }
}

impl Sub for PbwElement {
    type Output = PbwElement;
    fn sub(self, rhs: PbwElement) -> PbwElement {
        &self - &rhs
    }
}

impl Mul for PbwElement {
    type Output = PbwElement;
    fn mul(self, rhs: PbwElement) -> PbwElement {
        &self * &rhs
    }
}

impl Neg for PbwElement {
    type Output = PbwElement;
    fn neg(self) -> PbwElement {
        -&self
    }
}
