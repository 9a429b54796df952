//! The group algebra `Q[g] W` and the pairings `S_{xi eta}`, `S`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::group::{Group, GroupElement};
use super::roots::{dot, RootSystem};
use crate::exactmath::{CoeffPoly, Rat};

/// Values of the multiplicity function on each orbit: symbolic by default,
/// or rational constants when specialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMap {
    values: Vec<CoeffPoly>,
}

impl MultiplicityMap {
    /// One independent symbol per orbit.
    pub fn symbolic(rs: &RootSystem) -> MultiplicityMap {
        MultiplicityMap { values: (0..rs.symbols().len()).map(CoeffPoly::symbol).collect() }
    }

    /// Numeric couplings, one per orbit.
    pub fn numeric(values: &[Rat]) -> MultiplicityMap {
        MultiplicityMap { values: values.iter().cloned().map(CoeffPoly::constant).collect() }
    }

    pub fn from_values(values: Vec<CoeffPoly>) -> MultiplicityMap {
        MultiplicityMap { values }
    }

    pub fn orbit_value(&self, orbit: usize) -> &CoeffPoly {
        &self.values[orbit]
    }

    /// `g_alpha` for positive root `a`.
    pub fn of_root(&self, rs: &RootSystem, a: usize) -> &CoeffPoly {
        &self.values[rs.orbit_of(a)]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_numeric(&self) -> bool {
        self.values.iter().all(|v| v.as_constant().is_some())
    }
}

/// Finite `CoeffPoly`-combination of group elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<GroupElement, CoeffPoly>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: CoeffPoly) -> Self {
        Self::term(GroupElement::IDENTITY, c)
    }

    pub fn one() -> Self {
        Self::scalar(CoeffPoly::one())
    }

    pub fn element(w: GroupElement) -> Self {
        Self::term(w, CoeffPoly::one())
    }

    pub fn term(w: GroupElement, c: CoeffPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn add_term(&mut self, w: GroupElement, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, &CoeffPoly)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn coeff(&self, w: GroupElement) -> CoeffPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect() }
    }

    pub fn scale(&self, c: &CoeffPoly) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(*w, &(x * c));
        }
        out
    }

    /// Image under the trivial character (every group element to 1).
    pub fn trivial_character(&self) -> CoeffPoly {
        let mut acc = CoeffPoly::zero();
        for c in self.terms.values() {
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Image under the sign character `w -> det w`.
    pub fn sign_character(&self, group: &Group) -> CoeffPoly {
        let mut acc = CoeffPoly::zero();
        for (w, c) in &self.terms {
            if group.det(*w) > 0 {
                acc.add_assign_ref(c);
            } else {
                acc.add_assign_ref(&-c);
            }
        }
        acc
    }

    /// `u a u^{-1}`.
    pub fn conjugate(&self, group: &Group, u: GroupElement) -> Self {
        let ui = group.inv(u);
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(group.mul(group.mul(u, *w), ui), c);
        }
        out
    }

    pub fn to_string_with(&self, group: &Group, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let body = group.render(*w);
            crate::exactmath::xpoly::write_signed_term(k == 0, c, names, &mut s, |f| f.write_str(&body), w.is_identity())
                .unwrap();
        }
        s
    }
}

pub fn ga_multiply(group: &Group, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero();
    for (u, x) in &a.terms {
        for (v, y) in &b.terms {
            out.add_term(group.mul(*u, *v), &(x * y));
        }
    }
    out
}

/// `S_{xi eta} = (xi, eta) + sum_{alpha > 0} 2 g_alpha (alpha, xi)(alpha, eta) / (alpha, alpha) s_alpha`.
pub fn s_pair(xi: &[Rat], eta: &[Rat], rs: &RootSystem, group: &Group, g: &MultiplicityMap) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::scalar(CoeffPoly::constant(dot(xi, eta)));
    for (a, alpha) in rs.positive_roots().iter().enumerate() {
        let p = &dot(alpha, xi) * &dot(alpha, eta);
        if p.is_zero() {
            continue;
        }
        let c = &(&p * &Rat::int(2)) / rs.norm(a);
        out.add_term(group.reflection(a), &g.of_root(rs, a).scale(&c));
    }
    out
}

/// `S = -sum_{alpha > 0} g_alpha s_alpha`, central in the group algebra.
pub fn invariant_sum_s(rs: &RootSystem, group: &Group, g: &MultiplicityMap) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero();
    for a in 0..rs.positive_roots().len() {
        out.add_term(group.reflection(a), &-g.of_root(rs, a));
    }
    out
}
