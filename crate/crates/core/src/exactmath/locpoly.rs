//! Polynomials localized at products of root linear forms `(alpha, x)`.

use std::fmt;

use super::coeff::CoeffPoly;
use super::rat::Rat;
use super::xpoly::{poly_divide_exact, XPoly};
use crate::error::{Error, Result};

/// `numerator / prod_alpha (alpha, x)^den[alpha]` in reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct LocPoly {
    pub numerator: XPoly,
    pub denominator_exponents: Vec<u32>,
}

impl LocPoly {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator_exponents.iter().all(|&m| m == 0)
    }
}

/// The ambient data needed for localized arithmetic: the set of root forms.
#[derive(Clone, Debug)]
pub struct LocSpace {
    rank: usize,
    roots: Vec<Vec<Rat>>,
    forms: Vec<XPoly>,
}

impl LocSpace {
    pub fn new(rank: usize, roots: &[Vec<Rat>]) -> LocSpace {
        LocSpace {
            rank,
            roots: roots.to_vec(),
            forms: roots.iter().map(|r| XPoly::linear_form(r)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    pub fn form(&self, a: usize) -> &XPoly {
        &self.forms[a]
    }

    pub fn from_poly(&self, p: XPoly) -> LocPoly {
        LocPoly { numerator: p, denominator_exponents: vec![0; self.forms.len()] }
    }

    pub fn zero(&self) -> LocPoly {
        self.from_poly(XPoly::zero())
    }

    /// `c / (alpha, x)^m`.
    pub fn inverse_form_power(&self, a: usize, m: u32, c: CoeffPoly) -> LocPoly {
        let mut den = vec![0; self.forms.len()];
        den[a] = m;
        self.canonical(XPoly::constant(c), den)
    }

    /// Brings `num / den` to reduced form.
    pub fn canonical(&self, mut num: XPoly, mut den: Vec<u32>) -> LocPoly {
        if num.is_zero() {
            return self.zero();
        }
        for a in 0..self.forms.len() {
            while den[a] > 0 {
                match poly_divide_exact(&num, &self.forms[a]) {
                    Ok(q) => {
                        num = q;
                        den[a] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        LocPoly { numerator: num, denominator_exponents: den }
    }

    fn lift(&self, f: &LocPoly, target: &[u32]) -> XPoly {
        let mut num = f.numerator.clone();
        for a in 0..self.forms.len() {
            let extra = target[a] - f.denominator_exponents[a];
            if extra > 0 {
                num = &num * &self.forms[a].pow(extra);
            }
        }
        num
    }

    pub fn add(&self, f: &LocPoly, h: &LocPoly) -> LocPoly {
        if f.is_zero() {
            return h.clone();
        }
        if h.is_zero() {
            return f.clone();
        }
        let den: Vec<u32> = f
            .denominator_exponents
            .iter()
            .zip(&h.denominator_exponents)
            .map(|(a, b)| *a.max(b))
            .collect();
        let num = &self.lift(f, &den) + &self.lift(h, &den);
        self.canonical(num, den)
    }

    pub fn neg(&self, f: &LocPoly) -> LocPoly {
        LocPoly { numerator: -&f.numerator, denominator_exponents: f.denominator_exponents.clone() }
    }

    pub fn sub(&self, f: &LocPoly, h: &LocPoly) -> LocPoly {
        self.add(f, &self.neg(h))
    }

    pub fn mul(&self, f: &LocPoly, h: &LocPoly) -> LocPoly {
        let den = f
            .denominator_exponents
            .iter()
            .zip(&h.denominator_exponents)
            .map(|(a, b)| a + b)
            .collect();
        self.canonical(&f.numerator * &h.numerator, den)
    }

    pub fn scale(&self, f: &LocPoly, c: &CoeffPoly) -> LocPoly {
        self.canonical(f.numerator.scale(c), f.denominator_exponents.clone())
    }

    /// Partial derivative in `x_i`.
    pub fn partial(&self, i: usize, f: &LocPoly) -> LocPoly {
        let mut acc = self.canonical(f.numerator.partial(i), f.denominator_exponents.clone());
        for a in 0..self.forms.len() {
            let m = f.denominator_exponents[a];
            let ai = &self.roots[a][i];
            if m == 0 || ai.is_zero() {
                continue;
            }
            let mut den = f.denominator_exponents.clone();
            den[a] += 1;
            let coef = -&(ai * &Rat::int(m as i64));
            let t = self.canonical(f.numerator.scale_rat(&coef), den);
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// The action `(w f)(x) = f(w^{-1} x)` of an orthogonal matrix mapping the
    /// root set to itself up to sign. `matrix[r][c]` is row-major.
    pub fn apply_orthogonal(&self, f: &LocPoly, matrix: &[Vec<Rat>]) -> Result<LocPoly> {
        let n = self.rank;
        let image = |v: &[Rat]| -> Vec<Rat> {
            (0..n).map(|r| (0..n).map(|c| &matrix[r][c] * &v[c]).sum()).collect()
        };
        let subs: Vec<XPoly> = (0..n)
            .map(|i| {
                let col: Vec<Rat> = (0..n).map(|r| matrix[r][i].clone()).collect();
                XPoly::linear_form(&col)
            })
            .collect();
        let mut num = f.numerator.substitute(&subs);
        let mut den = vec![0; self.forms.len()];
        for (a, &m) in f.denominator_exponents.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let wb = image(&self.roots[a]);
            let (b, sign) = self
                .roots
                .iter()
                .enumerate()
                .find_map(|(b, r)| {
                    if *r == wb {
                        Some((b, 1))
                    } else if r.iter().zip(&wb).all(|(x, y)| *x == -y) {
                        Some((b, -1))
                    } else {
                        None
                    }
                })
                .ok_or_else(|| Error::InvalidRootSystem("group element does not permute the roots".into()))?;
            den[b] += m;
            if sign < 0 && m % 2 == 1 {
                num = -&num;
            }
        }
        Ok(self.canonical(num, den))
    }

    pub fn to_string_with(&self, f: &LocPoly, names: &[String]) -> String {
        let num = f.numerator.to_string_with(names);
        let mut den = Vec::new();
        for (a, &m) in f.denominator_exponents.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let form = self.forms[a].to_string_with(names);
            den.push(if m > 1 { format!("({form})^{m}") } else { format!("({form})") });
        }
        if den.is_empty() {
            num
        } else {
            format!("({num})/({})", den.join("*"))
        }
    }
}

impl fmt::Debug for LocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / {:?}", self.numerator, self.denominator_exponents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_space() -> LocSpace {
        let r = |v: [i64; 3]| v.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>();
        LocSpace::new(3, &[r([1, -1, 0]), r([1, 0, -1]), r([0, 1, -1])])
    }

    fn swap12() -> Vec<Vec<Rat>> {
        let z = Rat::ZERO;
        let o = Rat::ONE;
        vec![vec![z.clone(), o.clone(), z.clone()], vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), z, o]]
    }

    #[test]
    fn reflection_negates_its_root() {
        let sp = a2_space();
        let f = sp.inverse_form_power(0, 1, CoeffPoly::one());
        let r = sp.apply_orthogonal(&f, &swap12()).unwrap();
        assert_eq!(r, sp.neg(&f));
    }

    #[test]
    fn reflection_moves_other_roots() {
        let sp = a2_space();
        // x1 / (x1 - x3)  ->  x2 / (x2 - x3)
        let f = sp.mul(&sp.from_poly(XPoly::var(0)), &sp.inverse_form_power(1, 1, CoeffPoly::one()));
        let r = sp.apply_orthogonal(&f, &swap12()).unwrap();
        let expect = sp.mul(&sp.from_poly(XPoly::var(1)), &sp.inverse_form_power(2, 1, CoeffPoly::one()));
        assert_eq!(r, expect);
    }

    #[test]
    fn reduces_common_factors() {
        let sp = a2_space();
        let f = sp.canonical(&sp.form(0).clone() * &XPoly::var(2), vec![2, 0, 0]);
        assert_eq!(f.denominator_exponents, vec![1, 0, 0]);
        assert_eq!(f.numerator, XPoly::var(2));
        let sum = sp.add(&f, &sp.neg(&f));
        assert!(sum.is_zero() && sum.is_polynomial());
    }

    #[test]
    fn quotient_rule() {
        let sp = a2_space();
        // d/dx1 of 1/(x1-x2) = -1/(x1-x2)^2
        let f = sp.inverse_form_power(0, 1, CoeffPoly::one());
        let d = sp.partial(0, &f);
        assert_eq!(d, sp.inverse_form_power(0, 2, CoeffPoly::int(-1)));
    }
}
