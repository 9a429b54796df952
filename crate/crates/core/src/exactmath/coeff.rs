//! Polynomials in the coupling symbols `g1..gk` over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::rat::{mulmod, Rat};

/// Largest number of coupling symbols (one per reflection orbit).
pub const MAX_SYMBOLS: usize = 4;

/// Exponent vector over the coupling symbols.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct GExp(pub [u16; MAX_SYMBOLS]);

impl GExp {
    pub const ONE: GExp = GExp([0; MAX_SYMBOLS]);

    pub fn var(k: usize) -> GExp {
        let mut e = GExp::ONE;
        e.0[k] = 1;
        e
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, o: &GExp) -> GExp {
        let mut out = *self;
        for i in 0..MAX_SYMBOLS {
            out.0[i] = out.0[i].checked_add(o.0[i]).expect("coupling degree overflow");
        }
        out
    }

    fn div(&self, o: &GExp) -> Option<GExp> {
        let mut out = *self;
        for i in 0..MAX_SYMBOLS {
            out.0[i] = out.0[i].checked_sub(o.0[i])?;
        }
        Some(out)
    }

    fn min(&self, o: &GExp) -> GExp {
        let mut out = *self;
        for i in 0..MAX_SYMBOLS {
            out.0[i] = out.0[i].min(o.0[i]);
        }
        out
    }

    pub fn grevlex_cmp(&self, other: &GExp) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_SYMBOLS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_SYMBOLS).filter(|&i| self.0[i] > 0)
    }
}

type Terms = SmallVec<[(GExp, Rat); 2]>;

/// A polynomial in the coupling symbols with rational coefficients.
///
/// Terms are kept sorted by decreasing graded reverse-lex order with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffPoly {
    terms: Terms,
}

impl CoeffPoly {
    pub fn zero() -> CoeffPoly {
        CoeffPoly { terms: SmallVec::new() }
    }

    pub fn one() -> CoeffPoly {
        CoeffPoly::constant(Rat::ONE)
    }

    pub fn constant(r: Rat) -> CoeffPoly {
        let mut terms = SmallVec::new();
        if !r.is_zero() {
            terms.push((GExp::ONE, r));
        }
        CoeffPoly { terms }
    }

    pub fn int(n: i64) -> CoeffPoly {
        CoeffPoly::constant(Rat::int(n))
    }

    /// The `k`-th coupling symbol (0-based).
    pub fn symbol(k: usize) -> CoeffPoly {
        assert!(k < MAX_SYMBOLS, "too many coupling symbols");
        CoeffPoly { terms: smallvec::smallvec![(GExp::var(k), Rat::ONE)] }
    }

    pub fn monomial(e: GExp, c: Rat) -> CoeffPoly {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((e, c));
        }
        CoeffPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (GExp, Rat)>) -> CoeffPoly {
        let mut terms: Terms = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        normalize(&mut terms);
        CoeffPoly { terms }
    }

    pub fn terms(&self) -> &[(GExp, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == GExp::ONE && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::ZERO),
            1 if self.terms[0].0 == GExp::ONE => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.degree()).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(GExp, Rat)> {
        self.terms.first()
    }

    pub fn scale(&self, r: &Rat) -> CoeffPoly {
        if r.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    pub fn add_assign_ref(&mut self, other: &CoeffPoly) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        if self.terms.len() == 1 && other.terms.len() == 1 && self.terms[0].0 == other.terms[0].0 {
            let c = &self.terms[0].1 + &other.terms[0].1;
            if c.is_zero() {
                self.terms.clear();
            } else {
                self.terms[0].1 = c;
            }
            return;
        }
        self.terms = merge(&self.terms, &other.terms, false);
    }

    pub fn pow(&self, e: u32) -> CoeffPoly {
        let mut acc = CoeffPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point (missing trailing values count as 0).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::ZERO;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in e.support() {
                t = &t * &point[k].pow(e.0[k] as u32);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates modulo a prime, `None` if a coefficient denominator vanishes.
    pub fn eval_mod_p(&self, point: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = c.mod_p(p)?;
            for k in e.support() {
                for _ in 0..e.0[k] {
                    t = mulmod(t, point[k], p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Substitutes constants for symbols; `None` entries stay symbolic.
    pub fn specialize(&self, values: &[Option<Rat>]) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            let mut nc = c.clone();
            for k in e.support() {
                if let Some(Some(v)) = values.get(k) {
                    nc = &nc * &v.pow(e.0[k] as u32);
                    ne.0[k] = 0;
                }
            }
            out.add_assign_ref(&CoeffPoly::monomial(ne, nc));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &CoeffPoly) -> Option<CoeffPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(CoeffPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dl_e, dl_c) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(GExp, Rat)> = Vec::new();
        while let Some((re, rc)) = rem.terms.first().cloned() {
            let qe = re.div(&dl_e)?;
            let qc = &rc / &dl_c;
            let t = CoeffPoly::monomial(qe, qc.clone());
            rem = &rem - &(&t * d);
            quot.push((qe, qc));
        }
        Some(CoeffPoly::from_terms(quot))
    }

    fn is_univariate_in(&self, k: usize) -> bool {
        self.terms.iter().all(|(e, _)| e.support().all(|i| i == k))
    }

    fn single_symbol(&self) -> Option<usize> {
        let mut found = None;
        for (e, _) in &self.terms {
            for i in e.support() {
                match found {
                    None => found = Some(i),
                    Some(j) if j == i => {}
                    Some(_) => return None,
                }
            }
        }
        found
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> CoeffPoly {
        match self.terms.first() {
            None => CoeffPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Greatest common divisor, normalized to be monic.
    ///
    /// Exact for univariate inputs; for genuinely multivariate inputs only the
    /// common monomial factor is extracted.
    pub fn gcd(a: &CoeffPoly, b: &CoeffPoly) -> CoeffPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.as_constant().is_some() || b.as_constant().is_some() {
            return CoeffPoly::one();
        }
        let var = match (a.single_symbol(), b.single_symbol()) {
            (Some(i), Some(j)) if i == j => Some(i),
            _ => None,
        };
        match var {
            Some(k) if a.is_univariate_in(k) && b.is_univariate_in(k) => {
                let (mut x, mut y) = (a.monic(), b.monic());
                if x.total_degree() < y.total_degree() {
                    std::mem::swap(&mut x, &mut y);
                }
                while !y.is_zero() {
                    let r = univariate_rem(&x, &y, k);
                    x = y;
                    y = r.monic();
                }
                x.monic()
            }
            _ => {
                let mut e = a.terms[0].0;
                for (t, _) in a.terms.iter().chain(b.terms.iter()) {
                    e = e.min(t);
                }
                CoeffPoly::monomial(e, Rat::ONE)
            }
        }
    }

    /// Writes the polynomial using the given symbol names.
    pub fn write_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if idx == 0 {
                if neg {
                    f.write_char('-')?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_const = *e == GExp::ONE;
            if is_const {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let mut first = true;
            for k in e.support() {
                if !first {
                    f.write_char('*')?;
                }
                first = false;
                let name = names.get(k).map(String::as_str).unwrap_or("g?");
                f.write_str(name)?;
                if e.0[k] > 1 {
                    write!(f, "^{}", e.0[k])?;
                }
            }
        }
        Ok(())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write_with(names, &mut s).unwrap();
        s
    }
}

fn univariate_rem(a: &CoeffPoly, b: &CoeffPoly, k: usize) -> CoeffPoly {
    let mut r = a.clone();
    let (be, bc) = b.terms[0].clone();
    let bd = be.0[k];
    while let Some((re, rc)) = r.terms.first().cloned() {
        if re.0[k] < bd {
            break;
        }
        let mut qe = GExp::ONE;
        qe.0[k] = re.0[k] - bd;
        let t = CoeffPoly::monomial(qe, &rc / &bc);
        r = &r - &(&t * b);
    }
    r
}

fn normalize(terms: &mut Terms) {
    terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
    let mut out: Terms = SmallVec::with_capacity(terms.len());
    for (e, c) in terms.drain(..) {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc = &*lc + &c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    *terms = out;
}

fn merge(a: &[(GExp, Rat)], b: &[(GExp, Rat)], negate_b: bool) -> Terms {
    let mut out: Terms = SmallVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.grevlex_cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<'a> Add<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        CoeffPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<'a> Sub<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        CoeffPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<'a> Mul<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        if self.is_zero() || rhs.is_zero() {
            return CoeffPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            // multiplying by a monomial preserves the term order
            return CoeffPoly { terms: self.terms.iter().map(|(a, b)| (a.mul(e), b * c)).collect() };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let mut terms: Terms = SmallVec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                terms.push((a.mul(b), x * y));
            }
        }
        normalize(&mut terms);
        CoeffPoly { terms }
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: CoeffPoly) -> CoeffPoly {
        &self + &rhs
    }
}

impl Sub for CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: CoeffPoly) -> CoeffPoly {
        &self - &rhs
    }
}

impl Mul for CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: CoeffPoly) -> CoeffPoly {
        &self * &rhs
    }
}

impl Neg for CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        -&self
    }
}

impl From<Rat> for CoeffPoly {
    fn from(r: Rat) -> Self {
        CoeffPoly::constant(r)
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=MAX_SYMBOLS).map(|k| format!("g{k}")).collect();
        self.write_with(&names, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> CoeffPoly {
        CoeffPoly::symbol(0)
    }

    fn names() -> Vec<String> {
        vec!["g".into(), "h".into()]
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&g() * &g()) - &CoeffPoly::constant(Rat::new(1, 2));
        assert_eq!(p.to_string_with(&names()), "g^2 - 1/2");
        let q = &(&g() + &CoeffPoly::one()) * &(&g() - &CoeffPoly::one());
        assert_eq!(q.to_string_with(&names()), "g^2 - 1");
        assert!((&q - &q).is_zero());
        let neg = -&g();
        assert_eq!(neg.to_string_with(&names()), "-g");
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = &(&g() + &CoeffPoly::one()) * &(&g() - &CoeffPoly::int(2));
        let b = &g() + &CoeffPoly::one();
        assert_eq!(a.div_exact(&b).unwrap(), &g() - &CoeffPoly::int(2));
        assert!(a.div_exact(&(&g() + &CoeffPoly::int(5))).is_none());
        let c = &b * &(&g() + &CoeffPoly::int(7));
        assert_eq!(CoeffPoly::gcd(&a, &c), b);
        let h = CoeffPoly::symbol(1);
        let m = &(&g() * &h) * &(&g() + &h);
        assert_eq!(m.div_exact(&(&g() + &h)).unwrap(), &g() * &h);
    }

    #[test]
    fn evaluation() {
        let p = &(&g() * &g()) + &CoeffPoly::int(3);
        assert_eq!(p.eval(&[Rat::new(1, 2)]), Rat::new(13, 4));
        assert_eq!(p.eval_mod_p(&[2], 101), Some(7));
        let s = p.specialize(&[Some(Rat::int(2))]);
        assert_eq!(s.as_constant(), Some(Rat::int(7)));
    }
}
