//! Words in the angular momenta generators, their arc diagrams and the
//! ordered non-crossing (so) or double-sorted (gl) bases.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::coxeter::GroupElement;

/// Which presented algebra a word belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Generated by `M_ij` (`i < j`) and the group.
    So,
    /// Generated by `E_ij` and the group.
    Gl,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::So => 'M',
            Kind::Gl => 'E',
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::So => "so",
            Kind::Gl => "gl",
        })
    }
}

/// A generator index pair, 0-based.
pub type Letter = (u8, u8);

/// One factor `G_ij^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub i: u8,
    pub j: u8,
    pub power: u32,
}

/// `G_{i1 j1}^{n1} ... G_{ik jk}^{nk} * tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubWord {
    pub factors: Vec<Factor>,
    pub tail: GroupElement,
}

impl SubWord {
    pub fn one() -> SubWord {
        SubWord { factors: Vec::new(), tail: GroupElement::IDENTITY }
    }

    /// Collapses runs of equal letters into powers.
    pub fn from_letters(letters: &[Letter], tail: GroupElement) -> SubWord {
        let mut factors: Vec<Factor> = Vec::new();
        for &(i, j) in letters {
            match factors.last_mut() {
                Some(f) if f.i == i && f.j == j => f.power += 1,
                _ => factors.push(Factor { i, j, power: 1 }),
            }
        }
        SubWord { factors, tail }
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for f in &self.factors {
            for _ in 0..f.power {
                out.push((f.i, f.j));
            }
        }
        out
    }

    /// Number of generator factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.power).sum()
    }

    pub fn arcs(&self) -> ArcDiagram {
        ArcDiagram::from_letters(&self.letters())
    }

    /// Ordered by `(i, j)` and, for so, free of crossing arcs; for gl both
    /// index sequences nondecreasing.
    pub fn is_basis(&self, kind: Kind) -> bool {
        letters_are_basis(&self.letters(), kind)
    }

    pub fn write(&self, kind: Kind, render: impl Fn(GroupElement) -> String, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for fac in &self.factors {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "{}{}{}", kind.letter(), fac.i + 1, fac.j + 1)?;
            if fac.power > 1 {
                write!(f, "^{}", fac.power)?;
            }
        }
        if !self.tail.is_identity() {
            if !first {
                f.write_char('*')?;
            }
            f.write_str(&render(self.tail))?;
        }
        Ok(())
    }
}

impl Ord for SubWord {
    /// Degree, then factors lexicographically, then group tail.
    fn cmp(&self, other: &SubWord) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for SubWord {
    fn partial_cmp(&self, other: &SubWord) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn letters_are_basis(letters: &[Letter], kind: Kind) -> bool {
    if letters.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    match kind {
        Kind::So => letters.iter().all(|&(i, j)| i < j) && crossing_count(letters) == 0,
        Kind::Gl => letters.windows(2).all(|w| w[0].1 <= w[1].1),
    }
}

/// Number of pairs of arcs `(a, c)`, `(b, d)` with `a < b < c < d`.
pub fn crossing_count(letters: &[Letter]) -> usize {
    let mut n = 0;
    for (p, &(a, c)) in letters.iter().enumerate() {
        for &(b, d) in &letters[p + 1..] {
            if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                n += 1;
            }
        }
    }
    n
}

/// Pairs `p < q` with `i_p < i_q` and `j_p > j_q` (the gl analogue of crossings).
pub fn gl_inversions(letters: &[Letter]) -> usize {
    let mut n = 0;
    for (p, &(a, b)) in letters.iter().enumerate() {
        for &(c, d) in &letters[p + 1..] {
            if (a < c && b > d) || (a > c && b < d) {
                n += 1;
            }
        }
    }
    n
}

/// Multiset of arcs `(i, j)`, `i < j`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcDiagram {
    pub arcs: Vec<(u8, u8, u32)>,
}

impl ArcDiagram {
    pub fn from_letters(letters: &[Letter]) -> ArcDiagram {
        let mut sorted: Vec<Letter> = letters.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        sorted.sort_unstable();
        let mut arcs: Vec<(u8, u8, u32)> = Vec::new();
        for (i, j) in sorted {
            match arcs.last_mut() {
                Some(a) if a.0 == i && a.1 == j => a.2 += 1,
                _ => arcs.push((i, j, 1)),
            }
        }
        ArcDiagram { arcs }
    }

    pub fn crossings(&self) -> usize {
        let mut n = 0;
        for (p, &(a, c, m)) in self.arcs.iter().enumerate() {
            for &(b, d, m2) in &self.arcs[p + 1..] {
                if (a < b && b < c && c < d) || (b < a && a < d && d < c) {
                    n += (m * m2) as usize;
                }
            }
        }
        n
    }

    pub fn is_sorted(&self) -> bool {
        self.arcs.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1))
    }

    /// ASCII picture: one line per arc with its span marked over points `1..n`.
    pub fn render(&self, n: usize) -> String {
        let mut s = String::new();
        for &(i, j, m) in &self.arcs {
            for p in 0..n {
                let c = if p == i as usize || p == j as usize {
                    'o'
                } else if p > i as usize && p < j as usize {
                    '-'
                } else {
                    ' '
                };
                s.push(c);
            }
            if m > 1 {
                s.push_str(&format!("  x{m}"));
            }
            s.push('\n');
        }
        let points: String = (1..=n).map(|p| char::from_digit((p % 10) as u32, 10).unwrap()).collect();
        s.push_str(&points);
        s.push('\n');
        s
    }
}

/// Multisets of `d` items from `0..m`, as nondecreasing index sequences.
fn multisets(m: usize, d: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d as usize);
    fn rec(m: usize, left: u32, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..m {
            cur.push(k);
            rec(m, left - 1, k, cur, out);
            cur.pop();
        }
    }
    rec(m, d, 0, &mut cur, &mut out);
    out
}

/// Ordered non-crossing monomials in `M_ij` of degree exactly `d`.
pub fn enumerate_basis_so(n: usize, d: u32) -> Vec<SubWord> {
    let arcs: Vec<Letter> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i as u8, j as u8))).collect();
    multisets(arcs.len(), d)
        .into_iter()
        .map(|ms| ms.into_iter().map(|k| arcs[k]).collect::<Vec<_>>())
        .filter(|letters| crossing_count(letters) == 0)
        .map(|letters| SubWord::from_letters(&letters, GroupElement::IDENTITY))
        .collect()
}

/// Monomials in `E_ij` of degree exactly `d` with both index sequences sorted.
pub fn enumerate_basis_gl(n: usize, d: u32) -> Vec<SubWord> {
    let pairs: Vec<Letter> = (0..n).flat_map(|i| (0..n).map(move |j| (i as u8, j as u8))).collect();
    multisets(pairs.len(), d)
        .into_iter()
        .map(|ms| ms.into_iter().map(|k| pairs[k]).collect::<Vec<_>>())
        .filter(|letters| letters.windows(2).all(|w| w[0].1 <= w[1].1))
        .map(|letters| SubWord::from_letters(&letters, GroupElement::IDENTITY))
        .collect()
}

pub fn enumerate_basis(kind: Kind, n: usize, d: u32) -> Vec<SubWord> {
    match kind {
        Kind::So => enumerate_basis_so(n, d),
        Kind::Gl => enumerate_basis_gl(n, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        let so3: Vec<usize> = (0..=4).map(|d| enumerate_basis_so(3, d).len()).collect();
        assert_eq!(so3, vec![1, 3, 6, 10, 15]);
        assert_eq!(enumerate_basis_so(4, 2).len(), 20);
        assert_eq!(enumerate_basis_so(2, 3).len(), 1);
        let gl2: Vec<usize> = (0..=2).map(|d| enumerate_basis_gl(2, d).len()).collect();
        assert_eq!(gl2, vec![1, 4, 9]);
        assert_eq!(enumerate_basis_gl(1, 3).len(), 1);
    }

    #[test]
    fn crossing_and_arcs() {
        // M13 M24 is the only crossing pair at N = 4
        assert_eq!(crossing_count(&[(0, 2), (1, 3)]), 1);
        assert_eq!(crossing_count(&[(0, 3), (1, 2)]), 0);
        assert_eq!(crossing_count(&[(0, 2), (2, 3)]), 0);
        let w = SubWord::from_letters(&[(0, 1), (0, 1), (0, 3), (1, 2)], GroupElement::IDENTITY);
        assert_eq!(w.factors.len(), 3);
        assert_eq!(w.degree(), 4);
        assert!(w.is_basis(Kind::So));
        let d = w.arcs();
        assert_eq!(d.arcs, vec![(0, 1, 2), (0, 3, 1), (1, 2, 1)]);
        assert_eq!(d.crossings(), 0);
        assert!(d.render(4).ends_with("1234\n"));
    }

    #[test]
    fn gl_sortedness() {
        assert!(letters_are_basis(&[(0, 0), (0, 1), (1, 1)], Kind::Gl));
        assert!(!letters_are_basis(&[(0, 1), (1, 0)], Kind::Gl));
        assert_eq!(gl_inversions(&[(0, 1), (1, 0)]), 1);
    }
}
