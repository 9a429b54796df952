//! Packed exponent vectors.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of coordinates.
pub const MAX_VARS: usize = 8;

/// Exponent vector over at most [`MAX_VARS`] commuting variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u8; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::ONE;
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u32]) -> Mono {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = Mono::ONE;
        for (i, &x) in e.iter().enumerate() {
            m.0[i] = u8::try_from(x).expect("exponent overflow");
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_VARS]
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.0[i] = out.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        out
    }

    #[inline]
    pub fn inc(&self, i: usize) -> Mono {
        let mut out = *self;
        out.0[i] = out.0[i].checked_add(1).expect("exponent overflow");
        out
    }

    #[inline]
    pub fn dec(&self, i: usize) -> Option<Mono> {
        let mut out = *self;
        out.0[i] = out.0[i].checked_sub(1)?;
        Some(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.0[i] = out.0[i].checked_sub(other.0[i])?;
        }
        Some(out)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Graded reverse-lexicographic comparison.
    pub fn grevlex_cmp(&self, other: &Mono) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Writes `x1^2*x3` style text using `prefix` as variable stem.
    pub fn write_with(&self, prefix: &str, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for i in 0..MAX_VARS {
            let e = self.0[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "{prefix}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.write_with("x", f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_is_graded_then_reverse() {
        let a = Mono::from_slice(&[2, 0, 0]);
        let b = Mono::from_slice(&[1, 1, 0]);
        let c = Mono::from_slice(&[1, 0, 1]);
        let d = Mono::from_slice(&[0, 0, 3]);
        assert_eq!(a.grevlex_cmp(&b), Ordering::Greater);
        assert_eq!(b.grevlex_cmp(&c), Ordering::Greater);
        assert_eq!(d.grevlex_cmp(&a), Ordering::Greater);
    }

    #[test]
    fn div_and_text() {
        let a = Mono::from_slice(&[2, 1]);
        assert_eq!(a.div(&Mono::var(0)), Some(Mono::from_slice(&[1, 1])));
        assert_eq!(Mono::var(2).div(&Mono::var(0)), None);
        let mut s = String::new();
        a.write_with("x", &mut s).unwrap();
        assert_eq!(s, "x1^2*x2");
    }
}
