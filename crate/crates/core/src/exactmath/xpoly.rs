//! Polynomials in the coordinates `x1..xN` with coupling-polynomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::coeff::CoeffPoly;
use super::mono::{Mono, MAX_VARS};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    terms: FxHashMap<Mono, CoeffPoly>,
}

impl XPoly {
    pub fn zero() -> XPoly {
        XPoly::default()
    }

    pub fn one() -> XPoly {
        XPoly::constant(CoeffPoly::one())
    }

    pub fn constant(c: CoeffPoly) -> XPoly {
        XPoly::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: CoeffPoly) -> XPoly {
        let mut p = XPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(i: usize) -> XPoly {
        XPoly::monomial(Mono::var(i), CoeffPoly::one())
    }

    /// The linear form `(v, x)`.
    pub fn linear_form(v: &[Rat]) -> XPoly {
        let mut p = XPoly::zero();
        for (i, c) in v.iter().enumerate() {
            p.add_term(Mono::var(i), &CoeffPoly::constant(c.clone()));
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
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

    pub fn coeff(&self, m: &Mono) -> CoeffPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &CoeffPoly)> {
        self.terms.iter()
    }

    /// Terms in decreasing graded reverse-lex order.
    pub fn sorted_terms(&self) -> Vec<(Mono, CoeffPoly)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        v
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Mono::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &CoeffPoly) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> XPoly {
        if r.is_zero() {
            return XPoly::zero();
        }
        XPoly { terms: self.terms.iter().map(|(m, x)| (*m, x.scale(r))).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> XPoly {
        XPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> XPoly {
        let mut acc = XPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> XPoly {
        let mut out = XPoly::zero();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e == 0 {
                continue;
            }
            out.add_term(m.dec(i).unwrap(), &c.scale(&Rat::int(e as i64)));
        }
        out
    }

    /// Directional derivative along `v`.
    pub fn directional(&self, v: &[Rat]) -> XPoly {
        let mut out = XPoly::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.partial(i).scale_rat(c);
            }
        }
        out
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[XPoly]) -> XPoly {
        let mut powers: Vec<Vec<XPoly>> = images.iter().map(|p| vec![XPoly::one(), p.clone()]).collect();
        let mut out = XPoly::zero();
        for (m, c) in &self.terms {
            let mut t = XPoly::constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate().take(MAX_VARS) {
                let e = m.get(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            out = &out + &t;
        }
        out
    }

    fn leading(&self) -> Option<(Mono, CoeffPoly)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.grevlex_cmp(b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Writes using `x1*x2^2` notation with coupling symbol names.
    pub fn write_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_char('0');
        }
        for (idx, (m, c)) in terms.iter().enumerate() {
            write_signed_term(idx == 0, c, names, f, |f| m.write_with("x", f), m.is_one())?;
        }
        Ok(())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write_with(names, &mut s).unwrap();
        s
    }
}

/// Shared term printer: `coef*body`, with sign pulled out for single-term coefficients.
pub(crate) fn write_signed_term<F, W>(
    first: bool,
    c: &CoeffPoly,
    names: &[String],
    f: &mut W,
    body: F,
    body_is_one: bool,
) -> fmt::Result
where
    W: fmt::Write,
    F: FnOnce(&mut W) -> fmt::Result,
{
    let single = c.len() == 1;
    let neg = single && c.terms()[0].1.signum() < 0;
    let shown = if neg { -c } else { c.clone() };
    if first {
        if neg {
            f.write_char('-')?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if body_is_one {
        if single {
            shown.write_with(names, f)?;
        } else {
            f.write_char('(')?;
            shown.write_with(names, f)?;
            f.write_char(')')?;
        }
        return Ok(());
    }
    if shown.is_one() {
        return body(f);
    }
    if single {
        shown.write_with(names, f)?;
    } else {
        f.write_char('(')?;
        shown.write_with(names, f)?;
        f.write_char(')')?;
    }
    f.write_char('*')?;
    body(f)
}

/// Exact quotient of `p` by `q`.
///
/// Fails with [`Error::NotDivisible`] when a nonzero remainder is left.
pub fn poly_divide_exact(p: &XPoly, q: &XPoly) -> Result<XPoly> {
    let (qm, qc) = q.leading().expect("division by zero polynomial");
    let mut r = p.clone();
    let mut out = XPoly::zero();
    while let Some((rm, rc)) = r.leading() {
        let m = rm.div(&qm).ok_or(Error::NotDivisible)?;
        let c = rc.div_exact(&qc).ok_or(Error::NotDivisible)?;
        let t = XPoly::monomial(m, c);
        r = &r - &(&t * q);
        out = &out + &t;
    }
    Ok(out)
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for XPoly {
    type Output = XPoly;
    fn add(self, rhs: XPoly) -> XPoly {
        &self + &rhs
    }
}

impl Sub for XPoly {
    type Output = XPoly;
    fn sub(self, rhs: XPoly) -> XPoly {
        &self - &rhs
    }
}

impl Mul for XPoly {
    type Output = XPoly;
    fn mul(self, rhs: XPoly) -> XPoly {
        &self * &rhs
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = vec!["g".into(), "g2".into(), "g3".into(), "g4".into()];
        self.write_with(&names, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> XPoly {
        XPoly::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let q = &x(0) - &x(1);
        assert_eq!(poly_divide_exact(&p, &q).unwrap(), &x(0) + &x(1));
    }

    #[test]
    fn zero_dividend() {
        let q = &x(0) - &x(1);
        assert!(poly_divide_exact(&XPoly::zero(), &q).unwrap().is_zero());
    }

    #[test]
    fn reflected_difference_is_divisible() {
        // (1 - s12)(x1^2 x2) = x1^2 x2 - x1 x2^2
        let p = &(&(&x(0) * &x(0)) * &x(1)) - &(&(&x(0) * &x(1)) * &x(1));
        let q = &x(0) - &x(1);
        assert_eq!(poly_divide_exact(&p, &q).unwrap(), &x(0) * &x(1));
        // the swap image under s12 of x1^2 x2, checked via substitution
        let swapped = (&(&x(0) * &x(0)) * &x(1)).substitute(&[x(1), x(0)]);
        assert_eq!(swapped, &(&x(0) * &x(1)) * &x(1));
    }

    #[test]
    fn not_divisible_is_reported() {
        let p = &(&x(0) * &x(0)) + &x(1);
        let q = &x(0) - &x(1);
        assert_eq!(poly_divide_exact(&p, &q), Err(Error::NotDivisible));
    }

    #[test]
    fn display_uses_grevlex() {
        let g = CoeffPoly::symbol(0);
        let p = &(&x(0) * &x(1)).scale(&g) - &XPoly::constant(CoeffPoly::int(2));
        let p = &p + &x(0).scale(&(&g + &CoeffPoly::one()));
        let names = vec!["g".to_string()];
        assert_eq!(p.to_string_with(&names), "g*x1*x2 + (g + 1)*x1 - 2");
    }
}
