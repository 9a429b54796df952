//! Exact linear algebra: fraction-free elimination over `Q[g]`, plus rational
//! and modular rank computations at specializations.

use super::coeff::CoeffPoly;
use super::rat::{inv_mod, mulmod, Rat};

/// Large prime used for modular rank bounds.
pub const RANK_PRIME: u64 = 2_147_483_629;

/// Result of fraction-free Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    /// Reduced rows; every pivot entry equals `det`.
    pub rows: Vec<Vec<CoeffPoly>>,
    pub det: CoeffPoly,
}

fn cost(c: &CoeffPoly) -> (u32, usize) {
    (c.total_degree(), c.len())
}

/// Fraction-free Gauss-Jordan elimination over `Q[g1..gk]`.
///
/// Every division performed is exact; the final pivot entries all equal the
/// leading minor `det` of the chosen pivot rows and columns.
pub fn fraction_free_reduce(mut rows: Vec<Vec<CoeffPoly>>) -> Echelon {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = CoeffPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| cost(&rows[i][c]));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let v = &(&piv * &rows[i][j]) - &(&f * &rows[r][j]);
                rows[i][j] = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("fraction-free elimination: inexact division")
                };
            }
        }
        pivots.push(c);
        prev = piv;
        r += 1;
    }
    rows.truncate(r);
    Echelon { rank: r, pivots, rows, det: prev }
}

/// Removes the common content of a vector and fixes the sign of its first
/// nonzero entry. Content is exact for one coupling symbol; with several
/// symbols only monomial and rational content is removed.
pub fn primitive(v: &mut [CoeffPoly]) {
    let mut g = CoeffPoly::zero();
    for c in v.iter() {
        if !c.is_zero() {
            g = if g.is_zero() { c.clone() } else { CoeffPoly::gcd(&g, c) };
        }
    }
    if g.is_zero() {
        return;
    }
    // gcd is monic; fold in the rational content of the entries
    let mut num_gcd: Option<num_bigint::BigInt> = None;
    let mut den_lcm: Option<num_bigint::BigInt> = None;
    let divided: Vec<CoeffPoly> = v
        .iter()
        .map(|c| c.div_exact(&g).unwrap_or_else(|| c.clone()))
        .collect();
    let exact = v.iter().zip(&divided).all(|(c, d)| c.is_zero() || &(d * &g) == c);
    let work = if exact { divided } else { v.to_vec() };
    for c in &work {
        for (_, r) in c.terms() {
            use num_integer::Integer;
            let n = r.numer();
            let d = r.denom();
            num_gcd = Some(match num_gcd {
                None => n.clone(),
                Some(x) => x.gcd(&n),
            });
            den_lcm = Some(match den_lcm {
                None => d.clone(),
                Some(x) => x.lcm(&d),
            });
        }
    }
    let (Some(ng), Some(dl)) = (num_gcd, den_lcm) else { return };
    let mut scale = Rat::from_bigint(dl) / Rat::from_bigint(ng);
    let lead = work.iter().find(|c| !c.is_zero()).and_then(|c| c.leading().map(|t| t.1.signum()));
    if lead == Some(-1) {
        scale = -scale;
    }
    for (slot, c) in v.iter_mut().zip(work) {
        *slot = c.scale(&scale);
    }
}

/// Basis of the right kernel `{v : M v = 0}` with polynomial entries.
pub fn nullspace(rows: Vec<Vec<CoeffPoly>>, ncols: usize) -> Vec<Vec<CoeffPoly>> {
    let ech = fraction_free_reduce(rows);
    let mut out = Vec::new();
    for f in 0..ncols {
        if ech.pivots.contains(&f) {
            continue;
        }
        let mut v = vec![CoeffPoly::zero(); ncols];
        v[f] = ech.det.clone();
        for (k, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = -&ech.rows[k][f];
        }
        primitive(&mut v);
        out.push(v);
    }
    out
}

/// Rank of a rational matrix.
pub fn rank_rat(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for j in c..ncols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let t = &f * &rows[r][j];
                rows[i][j] -= &t;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rational kernel basis (reduced: pivot coordinates solved, free coordinate 1).
pub fn nullspace_rat(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for j in 0..ncols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let t = &f * &rows[r][j];
                rows[i][j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![Rat::ZERO; ncols];
        v[f] = Rat::ONE;
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[k][f];
        }
        out.push(v);
    }
    out
}

/// Rank over `Z/p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for j in c..ncols {
            rows[r][j] = mulmod(rows[r][j], inv, p);
        }
        for i in r + 1..rows.len() {
            let f = rows[i][c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                let t = mulmod(f, rows[r][j], p);
                rows[i][j] = (rows[i][j] + p - t) % p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of a polynomial matrix at a rational specialization of the symbols.
pub fn rank_at(rows: &[Vec<CoeffPoly>], point: &[Rat]) -> usize {
    rank_rat(rows.iter().map(|r| r.iter().map(|c| c.eval(point)).collect()).collect())
}

/// Rank modulo `p` at a specialization; `None` if some coefficient has a
/// denominator divisible by `p`.
pub fn rank_mod_p_at(rows: &[Vec<CoeffPoly>], point: &[u64], p: u64) -> Option<usize> {
    let mut m = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(r.len());
        for c in r {
            row.push(c.eval_mod_p(point, p)?);
        }
        m.push(row);
    }
    Some(rank_mod_p(m, p))
}

/// Indices of a maximal set of rows independent modulo `p` at a
/// specialization, chosen greedily in order; `None` on a bad denominator.
pub fn independent_rows_mod_p(rows: &[Vec<CoeffPoly>], point: &[u64], p: u64) -> Option<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut out = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut v = Vec::with_capacity(r.len());
        for c in r {
            v.push(c.eval_mod_p(point, p)?);
        }
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], p);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            basis.push((pc, v));
            out.push(idx);
        }
    }
    Some(out)
}

/// Incrementally built rational row space used for membership tests and
/// coordinate solves.
#[derive(Clone, Debug, Default)]
pub struct RatEchelon {
    ncols: usize,
    /// Reduced rows with pivot 1, paired with pivot column and their expression
    /// in terms of inserted vectors.
    rows: Vec<(usize, Vec<Rat>, Vec<Rat>)>,
    inserted: usize,
}

impl RatEchelon {
    pub fn new(ncols: usize) -> RatEchelon {
        RatEchelon { ncols, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`; returns the remainder and the combination of inserted
    /// vectors that was subtracted.
    pub fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut v = v.to_vec();
        let mut comb = vec![Rat::ZERO; self.inserted];
        for (pc, row, expr) in &self.rows {
            let f = v[*pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    let t = &f * &row[j];
                    v[j] -= &t;
                }
            }
            for (k, e) in expr.iter().enumerate() {
                if !e.is_zero() {
                    let t = &f * e;
                    comb[k] += &t;
                }
            }
        }
        (v, comb)
    }

    /// Inserts `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let (mut rem, comb) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        for (_, _, e) in &mut self.rows {
            e.push(Rat::ZERO);
        }
        let Some(pc) = rem.iter().position(|c| !c.is_zero()) else { return false };
        // expr(rem) = e_idx - comb
        let mut expr: Vec<Rat> = comb.iter().map(|c| -c).collect();
        expr.push(Rat::ONE);
        let inv = rem[pc].recip();
        for c in &mut rem {
            *c = &*c * &inv;
        }
        for e in &mut expr {
            *e = &*e * &inv;
        }
        debug_assert_eq!(expr.len(), idx + 1);
        // keep earlier rows reduced at the new pivot
        for (_, row, e) in &mut self.rows {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                let t = &f * &rem[j];
                row[j] -= &t;
            }
            for k in 0..e.len() {
                let t = &f * &expr[k];
                e[k] -= &t;
            }
        }
        self.rows.push((pc, rem, expr));
        true
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` is in the span.
    pub fn solve(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (rem, comb) = self.reduce(v);
        rem.iter().all(Rat::is_zero).then_some(comb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CoeffPoly {
        CoeffPoly::int(n)
    }

    fn g() -> CoeffPoly {
        CoeffPoly::symbol(0)
    }

    #[test]
    fn rational_rank() {
        let m = vec![
            vec![Rat::int(1), Rat::int(2), Rat::int(3)],
            vec![Rat::int(2), Rat::int(4), Rat::int(6)],
            vec![Rat::int(0), Rat::int(1), Rat::int(1)],
        ];
        assert_eq!(rank_rat(m.clone()), 2);
        let ns = nullspace_rat(m.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn symbolic_kernel_depends_on_g() {
        // [[g, 1], [g^2, g]] has rank 1 generically, kernel (1, -g)
        let m = vec![vec![g(), c(1)], vec![&g() * &g(), g()]];
        let ns = nullspace(m.clone(), 2);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = &(&row[0] * &ns[0][0]) + &(&row[1] * &ns[0][1]);
            assert!(dot.is_zero());
        }
        assert_eq!(ns[0][0], c(1));
    }

    #[test]
    fn fraction_free_pivots_are_determinants() {
        let m = vec![vec![c(2), c(1), c(0)], vec![c(1), c(3), c(1)], vec![c(0), c(1), c(4)]];
        let e = fraction_free_reduce(m);
        assert_eq!(e.rank, 3);
        assert_eq!(e.det, c(18));
        for (k, &p) in e.pivots.iter().enumerate() {
            assert_eq!(e.rows[k][p], c(18));
        }
    }

    #[test]
    fn modular_rank_matches() {
        let m = vec![vec![g(), c(1)], vec![c(1), g()]];
        assert_eq!(rank_at(&m, &[Rat::int(1)]), 1);
        assert_eq!(rank_at(&m, &[Rat::int(2)]), 2);
        assert_eq!(rank_mod_p_at(&m, &[5], RANK_PRIME), Some(2));
    }

    #[test]
    fn echelon_solves() {
        let mut e = RatEchelon::new(3);
        assert!(e.insert(&[Rat::int(1), Rat::int(1), Rat::int(0)]));
        assert!(e.insert(&[Rat::int(0), Rat::int(1), Rat::int(1)]));
        assert!(!e.insert(&[Rat::int(1), Rat::int(2), Rat::int(1)]));
        let s = e.solve(&[Rat::int(2), Rat::int(3), Rat::int(1)]).unwrap();
        assert_eq!(&s[..2], &[Rat::int(2), Rat::int(1)]);
        assert!(e.solve(&[Rat::int(0), Rat::int(0), Rat::int(1)]).is_none());
    }
}
