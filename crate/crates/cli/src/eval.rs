//! Evaluation of expressions in the Cherednik algebra or in one of the
//! angular momenta subalgebras.

use std::sync::Arc;

use dunkl_core::cherednik::{self, Context, PbwElement};
use dunkl_core::coxeter::GroupElement;
use dunkl_core::exactmath::{CoeffPoly, Rat};
use dunkl_core::subalgebra::{s_element, SubAlgebra, SubElement};

use crate::expr::{Atom, Expr, GroupLit};
use crate::CliError;

/// Arithmetic needed by the evaluator.
trait Target {
    type Elem: Clone;
    fn ctx(&self) -> &Arc<Context>;
    fn scalar(&self, c: CoeffPoly) -> Self::Elem;
    fn atom(&self, a: &Atom) -> Result<Self::Elem, CliError>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

fn eval<T: Target>(t: &T, e: &Expr) -> Result<T::Elem, CliError> {
    let ctx = t.ctx();
    Ok(match e {
        Expr::Num(r) => t.scalar(CoeffPoly::constant(r.clone())),
        Expr::Rank => t.scalar(CoeffPoly::int(ctx.rank() as i64)),
        Expr::Coupling(name) => t.scalar(coupling(ctx, name)?),
        Expr::Atom(a) => t.atom(a)?,
        Expr::Neg(a) => t.neg(&eval(t, a)?),
        Expr::Add(a, b) => t.add(&eval(t, a)?, &eval(t, b)?),
        Expr::Sub(a, b) => t.sub(&eval(t, a)?, &eval(t, b)?),
        Expr::Mul(a, b) => t.mul(&eval(t, a)?, &eval(t, b)?),
        Expr::Pow(a, k) => {
            let base = eval(t, a)?;
            let mut acc = t.scalar(CoeffPoly::one());
            for _ in 0..*k {
                acc = t.mul(&acc, &base);
            }
            acc
        }
        Expr::Commutator(a, b) | Expr::Anticommutator(a, b) => {
            let (x, y) = (eval(t, a)?, eval(t, b)?);
            let (xy, yx) = (t.mul(&x, &y), t.mul(&y, &x));
            if matches!(e, Expr::Commutator(..)) {
                t.sub(&xy, &yx)
            } else {
                t.add(&xy, &yx)
            }
        }
    })
}

/// The coupling's value: a symbol, or its number under `--numeric-g`.
fn coupling(ctx: &Context, name: &str) -> Result<CoeffPoly, CliError> {
    let k = ctx
        .symbol_names()
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| CliError::Usage(format!("unknown coupling `{name}`; this group has {}", ctx.symbol_names().join(", "))))?;
    Ok(ctx.multiplicities().orbit_value(k).clone())
}

fn index(ctx: &Context, i: usize) -> Result<usize, CliError> {
    if i == 0 || i > ctx.rank() {
        return Err(CliError::Usage(format!("index {i} out of range 1..{}", ctx.rank())));
    }
    Ok(i - 1)
}

pub fn group_element(ctx: &Context, a: &Atom) -> Result<Option<GroupElement>, CliError> {
    let rs = ctx.root_system();
    let group = ctx.group();
    Ok(Some(match a {
        Atom::Reflection(i, j) => {
            let (i, j) = (index(ctx, *i)?, index(ctx, *j)?);
            let v: Vec<Rat> = (0..ctx.rank())
                .map(|k| Rat::int(i64::from(k == i) - i64::from(k == j)))
                .collect();
            let (root, _) = rs
                .find_root(&v)
                .filter(|_| i != j)
                .ok_or_else(|| CliError::Usage(format!("e{} - e{} is not a root of {}", i + 1, j + 1, rs.label())))?;
            group.reflection(root)
        }
        Atom::RootReflection(a) => {
            let count = rs.positive_roots().len();
            if *a == 0 || *a > count {
                return Err(CliError::Usage(format!("root index {a} out of range 1..{count}")));
            }
            group.reflection(a - 1)
        }
        Atom::Group(lit) => {
            let found = match lit {
                GroupLit::Image(t) => group.find_signed(t),
                GroupLit::Columns(c) => group.find(c),
            };
            found.ok_or_else(|| CliError::Usage(format!("{a} is not an element of {}", rs.label())))?
        }
        _ => return Ok(None),
    }))
}

/// The atom as an element of the Cherednik algebra.
pub fn pbw_atom(ctx: &Arc<Context>, a: &Atom) -> Result<PbwElement, CliError> {
    if let Some(w) = group_element(ctx, a)? {
        return Ok(PbwElement::group_element(ctx, w));
    }
    let i0 = |i: usize| index(ctx, i);
    Ok(match *a {
        Atom::X(i) => PbwElement::x(ctx, i0(i)?)?,
        Atom::D(i) => PbwElement::d(ctx, i0(i)?)?,
        Atom::M(i, j) => cherednik::m(ctx, i0(i)?, i0(j)?)?,
        Atom::E(i, j) => cherednik::e_generator(ctx, i0(i)?, i0(j)?)?,
        Atom::S(i, j) => cherednik::s_ij(ctx, i0(i)?, i0(j)?)?,
        Atom::Ssum => cherednik::s_sum(ctx),
        Atom::H => cherednik::hamiltonian_h(ctx),
        Atom::HOmega => cherednik::angular_hamiltonian(ctx),
        Atom::Msq => cherednik::m_squared(ctx),
        Atom::Rho => cherednik::rho(ctx),
        Atom::Reflection(..) | Atom::RootReflection(_) | Atom::Group(_) => unreachable!("handled above"),
    })
}

struct Cherednik<'a>(&'a Arc<Context>);

impl Target for Cherednik<'_> {
    type Elem = PbwElement;

    fn ctx(&self) -> &Arc<Context> {
        self.0
    }
    fn scalar(&self, c: CoeffPoly) -> PbwElement {
        PbwElement::scalar(self.0, c)
    }
    fn atom(&self, a: &Atom) -> Result<PbwElement, CliError> {
        pbw_atom(self.0, a)
    }
    fn add(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        a + b
    }
    fn sub(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        a - b
    }
    fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        a * b
    }
    fn neg(&self, a: &PbwElement) -> PbwElement {
        a.scale(&CoeffPoly::int(-1))
    }
}

struct Sub<'a>(&'a SubAlgebra);

impl Target for Sub<'_> {
    type Elem = SubElement;

    fn ctx(&self) -> &Arc<Context> {
        self.0.context()
    }
    fn scalar(&self, c: CoeffPoly) -> SubElement {
        SubElement::scalar(self.0.kind(), c)
    }
    fn atom(&self, a: &Atom) -> Result<SubElement, CliError> {
        let sub = self.0;
        let ctx = sub.context();
        let kind = sub.kind();
        if let Some(w) = group_element(ctx, a)? {
            return Ok(SubElement::group(kind, w));
        }
        match (a, kind.letter()) {
            (&Atom::M(i, j), 'M') | (&Atom::E(i, j), 'E') => {
                Ok(SubElement::generator(kind, index(ctx, i)?, index(ctx, j)?))
            }
            (Atom::Ssum, _) => Ok(s_element(sub)),
            _ => Ok(sub.express(&pbw_atom(ctx, a)?)?),
        }
    }
    fn add(&self, a: &SubElement, b: &SubElement) -> SubElement {
        a.add(b)
    }
    fn sub(&self, a: &SubElement, b: &SubElement) -> SubElement {
        a.sub(b)
    }
    fn mul(&self, a: &SubElement, b: &SubElement) -> SubElement {
        self.0.multiply(a, b)
    }
    fn neg(&self, a: &SubElement) -> SubElement {
        a.scale(&CoeffPoly::int(-1))
    }
}

pub fn eval_cherednik(ctx: &Arc<Context>, e: &Expr) -> Result<PbwElement, CliError> {
    eval(&Cherednik(ctx), e)
}

/// Evaluates with unstraightened products and straightens once at the end.
pub fn eval_sub(sub: &SubAlgebra, e: &Expr) -> Result<SubElement, CliError> {
    let raw = eval(&Sub(sub), e)?;
    Ok(sub.normal_form(&raw)?)
}
