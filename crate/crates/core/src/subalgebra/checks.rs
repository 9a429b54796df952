//! PBW flatness of the word bases and centralizer computations.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde_json::json;

use super::algebra::{SubAlgebra, SubElement};
use super::word::{Kind, SubWord};
use crate::cherednik::{angular_hamiltonian, rho, Context, PbwElement, PbwKey};
use crate::coxeter::{invariant_sum_s, GroupElement};
use crate::error::Result;
use crate::exactmath::linalg::{fraction_free_reduce, independent_rows_mod_p, nullspace, rank_at, RatEchelon, RANK_PRIME};
use crate::exactmath::{CoeffPoly, Rat};
use crate::report::{Report, Timing};

/// Seeds of the random specializations used for rank bounds.
const SPECIALIZATION_SEEDS: [u64; 3] = [0x5eed_0001, 0x5eed_0002, 0x5eed_0003];

/// A random point with entries in `[1, 997] / [1, 97]`.
pub fn random_point(nsym: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..nsym).map(|_| Rat::new(rng.gen_range(1..998), rng.gen_range(1..98))).collect()
}

fn report_for(ctx: &Context, check: &str) -> Report {
    let rs = ctx.root_system();
    Report::new(check, &rs.family().to_string(), ctx.rank())
}

/// Coefficient vectors of PBW elements over the union of their keys.
fn pbw_matrix(elems: &[PbwElement]) -> Vec<Vec<CoeffPoly>> {
    let mut cols: FxHashMap<PbwKey, usize> = FxHashMap::default();
    for e in elems {
        for (k, _) in e.terms() {
            let n = cols.len();
            cols.entry(*k).or_insert(n);
        }
    }
    elems
        .iter()
        .map(|e| {
            let mut row = vec![CoeffPoly::zero(); cols.len()];
            for (k, c) in e.terms() {
                row[cols[k]] = c.clone();
            }
            row
        })
        .collect()
}

/// Rank over `Q(g)`: columns independent at a specialization are selected
/// first, then the fraction-free elimination runs on that submatrix.
fn symbolic_rank(rows: &[Vec<CoeffPoly>], point: &[Rat]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let numeric: Vec<Vec<CoeffPoly>> =
        rows.iter().map(|r| r.iter().map(|c| CoeffPoly::constant(c.eval(point))).collect()).collect();
    let pivots = fraction_free_reduce(numeric).pivots;
    if pivots.len() == rows.len().min(ncols) && pivots.len() == rows.len() {
        // full row rank at a point already proves full rank over Q(g)
        let sub: Vec<Vec<CoeffPoly>> = rows.iter().map(|r| pivots.iter().map(|&c| r[c].clone()).collect()).collect();
        return fraction_free_reduce(sub).rank;
    }
    fraction_free_reduce(rows.to_vec()).rank
}

/// Embeds all basis words of degree at most `d` (identity tails) and compares
/// the rank of their images with their number.
pub fn pbw_rank_check(sub: &SubAlgebra, d: u32) -> Result<Report> {
    let start = Instant::now();
    let ctx = sub.context();
    let mut report = report_for(ctx, "pbw").param("algebra", sub.kind().to_string()).param("degree", d);
    let mut counts = Vec::new();
    let mut all: Vec<PbwElement> = Vec::new();
    for k in 0..=d {
        let words = sub.basis(k);
        let images = crate::par::map(&words, |w| sub.embed_word(w));
        let rows = pbw_matrix(&images);
        let point = random_point(ctx.symbol_names().len(), SPECIALIZATION_SEEDS[0]);
        let r = if rows.is_empty() { 0 } else { symbolic_rank(&rows, &point) };
        report.record("rank-degree", format!("degree {k}"), r == words.len(), || {
            format!("rank {r} for {} words", words.len())
        });
        counts.push(json!({"degree": k, "count": words.len(), "rank": r}));
        all.extend(images);
    }
    let rows = pbw_matrix(&all);
    let total = all.len();
    let nsym = ctx.symbol_names().len();
    let mut spec_ranks = Vec::new();
    for seed in SPECIALIZATION_SEEDS {
        let point = random_point(nsym, seed);
        let r = rank_at(&rows, &point);
        spec_ranks.push(r);
        report.record("rank-specialization", format!("seed {seed:#x}"), r == total, || {
            format!("rank {r} for {total} words")
        });
    }
    let r = symbolic_rank(&rows, &random_point(nsym, SPECIALIZATION_SEEDS[0]));
    report.record("rank-symbolic", format!("degree <= {d}"), r == total, || format!("rank {r} for {total} words"));
    report.result = Some(json!({
        "per_degree": counts,
        "total_words": total,
        "rank": r,
        "specialization_ranks": spec_ranks,
    }));
    report.timing = Some(Timing { wall_seconds: start.elapsed().as_secs_f64() });
    Ok(report)
}

/// Coordinates of elements over their common word support.
struct Coordinates {
    index: BTreeMap<SubWord, usize>,
}

impl Coordinates {
    fn new<'a>(elems: impl IntoIterator<Item = &'a SubElement>) -> Coordinates {
        let mut index = BTreeMap::new();
        for e in elems {
            for (w, _) in e.terms() {
                let n = index.len();
                index.entry(w.clone()).or_insert(n);
            }
        }
        Coordinates { index }
    }

    fn vector(&self, e: &SubElement) -> Vec<CoeffPoly> {
        let mut v = vec![CoeffPoly::zero(); self.index.len()];
        for (w, c) in e.terms() {
            v[self.index[w]] = c.clone();
        }
        v
    }
}

fn rank_of(elems: &[SubElement]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    let coords = Coordinates::new(elems);
    if coords.index.is_empty() {
        return 0;
    }
    fraction_free_reduce(elems.iter().map(|e| coords.vector(e)).collect()).rank
}

/// Generators the centre must commute with, as SubElements and as PBW elements.
fn generators(sub: &SubAlgebra) -> Vec<(String, SubElement)> {
    let n = sub.rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let take = match sub.kind() {
                Kind::So => i < j,
                Kind::Gl => true,
            };
            if take {
                out.push((format!("{}{}{}", sub.kind().letter(), i + 1, j + 1), SubElement::generator(sub.kind(), i, j)));
            }
        }
    }
    out
}

/// `S = -sum g_alpha s_alpha` over group tails.
pub fn s_element(sub: &SubAlgebra) -> SubElement {
    let ctx = sub.context();
    let ga = invariant_sum_s(ctx.root_system(), ctx.group(), ctx.multiplicities());
    let mut e = SubElement::zero(sub.kind());
    for (w, c) in ga.terms() {
        e.add_term(SubWord { factors: Vec::new(), tail: w }, c);
    }
    e
}

/// `H_Omega = -1/2 sum_{i<j} M_ij^2 + 1/2 S (S - N + 2)` over basis words.
pub fn angular_hamiltonian_element(sub: &SubAlgebra) -> Result<SubElement> {
    let n = sub.rank();
    let s = s_element(sub);
    let shift = s.add(&SubElement::scalar(Kind::So, CoeffPoly::int(2 - n as i64)));
    let mut acc = sub.multiply(&s, &shift).scale(&CoeffPoly::constant(Rat::new(1, 2)));
    for i in 0..n {
        for j in i + 1..n {
            let m = SubElement::generator(Kind::So, i, j);
            acc = acc.add(&sub.multiply(&m, &m).scale(&CoeffPoly::constant(Rat::new(-1, 2))));
        }
    }
    sub.normal_form(&acc)
}

/// `rho = sum E_ii - S` over basis words.
pub fn rho_element(sub: &SubAlgebra) -> Result<SubElement> {
    let mut acc = s_element(sub).scale(&CoeffPoly::int(-1));
    for i in 0..sub.rank() {
        acc = acc.add(&SubElement::generator(Kind::Gl, i, i));
    }
    sub.normal_form(&acc)
}

/// Result of a centralizer computation.
pub struct Centre {
    /// Basis of the centralizer over `Q(g)`, in normal form.
    pub basis: Vec<SubElement>,
    /// The known central elements `1, C, C^2, ...` up to the degree bound.
    pub known: Vec<(String, SubElement)>,
    pub report: Report,
}

/// Elements of degree at most `d` commuting with every generator and every
/// group element.
///
/// Unknowns are group averages `sum_v v b v^{-1}` of basis words times group
/// tails, thinned to those whose top-degree parts are independent; these
/// form a basis of the invariant part. The conditions `[B, G] = 0` are
/// straightened in the subalgebra. Their rank at a modular specialization
/// bounds the centre dimension from above; the known central elements bound
/// it from below. When the bounds differ the kernel is computed over `Q(g)`
/// from rows preselected modulo a prime and checked against every row.
/// Either way each basis element is finally checked in the Cherednik algebra.
pub fn centralizer(sub: &SubAlgebra, d: u32) -> Result<Centre> {
    let start = Instant::now();
    let ctx = sub.context().clone();
    let group = ctx.group();
    let kind = sub.kind();
    let mut report = report_for(&ctx, "centre")
        .param("algebra", kind.to_string())
        .param("degree", d)
        .param("degree_convention", "number of generator factors; group elements have degree 0");
    let nsym = ctx.symbol_names().len();

    let elements: Vec<GroupElement> = group.elements().collect();
    let mut seeds = Vec::new();
    for k in 0..=d {
        for w in sub.basis(k) {
            for &t in &elements {
                seeds.push(SubWord { factors: w.factors.clone(), tail: t });
            }
        }
    }
    let averaged = crate::par::map(&seeds, |b| -> Result<SubElement> {
        let e = SubElement::word(kind, b.clone());
        let mut acc = SubElement::zero(kind);
        for &v in &elements {
            acc = acc.add(&sub.conjugate(&e, v));
        }
        sub.normal_form(&acc)
    });
    let averaged: Vec<(u32, SubElement)> =
        seeds.iter().map(SubWord::degree).zip(averaged).map(|(k, e)| e.map(|e| (k, e))).collect::<Result<_>>()?;
    let candidates = select_by_leading_part(averaged, &mut report);

    let gens = generators(sub);
    let condition = |b: &SubElement| -> Result<Vec<SubElement>> {
        gens.iter().map(|(_, g)| sub.normal_form(&sub.multiply(b, g).sub(&sub.multiply(g, b)))).collect()
    };
    let conds: Vec<Vec<SubElement>> = crate::par::map(&candidates, condition).into_iter().collect::<Result<_>>()?;

    // rows indexed by (generator, word), columns by candidate
    let coords = Coordinates::new(conds.iter().flatten());
    let ncols = candidates.len();
    let mut rows: Vec<Vec<CoeffPoly>> = Vec::new();
    for gi in 0..gens.len() {
        let cols: Vec<Vec<CoeffPoly>> = conds.iter().map(|c| coords.vector(&c[gi])).collect();
        for r in 0..coords.index.len() {
            let row: Vec<CoeffPoly> = cols.iter().map(|c| c[r].clone()).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let selected = modular_row_selection(&rows, nsym);
    let upper = ncols - selected.len();

    // known central elements
    let (name, gen) = match kind {
        Kind::So => ("H_Omega", angular_hamiltonian_element(sub)?),
        Kind::Gl => ("rho", rho_element(sub)?),
    };
    let reference = match kind {
        Kind::So => angular_hamiltonian(&ctx),
        Kind::Gl => rho(&ctx),
    };
    let embedded = sub.embed(&gen);
    report.record("known-embedding", name, embedded == reference, || (&embedded - &reference).to_canonical_string());
    let step = gen.degree().unwrap_or(0).max(1);
    let mut known = vec![("1".to_string(), SubElement::scalar(kind, CoeffPoly::one()))];
    let mut power = SubElement::scalar(kind, CoeffPoly::one());
    for p in 1..=d / step {
        power = sub.normal_form(&sub.multiply(&power, &gen))?;
        known.push((if p == 1 { name.to_string() } else { format!("{name}^{p}") }, power.clone()));
    }
    let known_elems: Vec<SubElement> = known.iter().map(|(_, e)| e.clone()).collect();
    let mut all_known_central = true;
    for (kname, e) in &known {
        let c = condition(e)?;
        let ok = c.iter().all(SubElement::is_zero);
        all_known_central &= ok;
        report.record("known-commutes", kname.clone(), ok, || {
            c.iter().find(|x| !x.is_zero()).map(|x| x.to_string_with(&ctx)).unwrap_or_default()
        });
    }
    let lower = if all_known_central { rank_of(&known_elems) } else { 0 };

    let (basis, method) = if lower == upper {
        (known_elems.clone(), "bounds")
    } else {
        let picked: Vec<Vec<CoeffPoly>> = selected.iter().map(|&i| rows[i].clone()).collect();
        let mut kernel = nullspace(picked, ncols);
        let satisfies = |v: &[CoeffPoly]| {
            rows.iter().all(|r| r.iter().zip(v).fold(CoeffPoly::zero(), |acc, (a, b)| &acc + &(a * b)).is_zero())
        };
        let exact = kernel.iter().all(|v| satisfies(v));
        let how = if exact { "selected rows suffice" } else { "recomputed from all rows" };
        report.record("kernel-verification", format!("{} of {} rows, {how}", selected.len(), rows.len()), true, String::new);
        if !exact {
            kernel = nullspace(rows.clone(), ncols);
        }
        let mut basis: Vec<SubElement> = kernel
            .iter()
            .map(|v| {
                let e = v.iter().zip(&candidates).fold(SubElement::zero(kind), |acc, (c, b)| acc.add(&b.scale(c)));
                // leading coefficient 1 when it is a number
                match e.sorted_terms(&ctx).first().and_then(|(_, c)| c.as_constant()) {
                    Some(r) => e.scale(&CoeffPoly::constant(r.recip())),
                    None => e,
                }
            })
            .collect();
        basis.sort_by_key(|e| e.degree());
        (basis, "nullspace")
    };
    report.record("dimension-bounds", format!("lower {lower}, upper {upper}"), lower <= upper, String::new);

    // the Cherednik algebra side: each basis element commutes with the
    // generator images and with every reflection
    let pbw_gens: Vec<(String, PbwElement)> = gens.iter().map(|(n, g)| (n.clone(), sub.embed(g))).collect();
    let reflections: Vec<(String, PbwElement)> = (0..ctx.root_system().positive_roots().len())
        .map(|a| {
            let r = group.reflection(a);
            (group.render(r), PbwElement::group_element(&ctx, r))
        })
        .collect();
    for (k, b) in basis.iter().enumerate() {
        let p = sub.embed(b);
        for (gname, g) in pbw_gens.iter().chain(&reflections) {
            let c = &(&p * g) - &(g * &p);
            report.record("pbw-commutator", format!("basis {} with {gname}", k + 1), c.is_zero(), || {
                c.to_canonical_string()
            });
        }
    }

    let rk = rank_of(&basis);
    let rc = rank_of(&known_elems);
    let joint: Vec<SubElement> = basis.iter().chain(&known_elems).cloned().collect();
    let rj = rank_of(&joint);
    let expected = known.len();
    report.record("centre-dimension", format!("degree <= {d}"), rk == expected, || {
        format!("dimension {rk} but {expected} expected")
    });
    report.record("known-central", known.iter().map(|k| k.0.clone()).collect::<Vec<_>>().join(", "), rj == rk, || {
        format!("rank of centre {rk}, joint rank {rj}")
    });
    report.record("spanned-by-known", format!("degree <= {d}"), rj == rc, || {
        format!("centre has {} directions outside the span of the known elements", rj - rc)
    });
    report.result = Some(json!({
        "dimension": rk,
        "expected_dimension": expected,
        "method": method,
        "known": known.iter().map(|k| k.0.clone()).collect::<Vec<_>>(),
        "known_in_centre": rj == rk,
        "spanned_by_known": rj == rc,
        "candidates": candidates.len(),
        "basis": basis.iter().map(|b| b.to_string_with(&ctx)).collect::<Vec<_>>(),
    }));
    report.timing = Some(Timing { wall_seconds: start.elapsed().as_secs_f64() });
    Ok(Centre { basis, known, report })
}

/// Keeps averages whose top-degree parts are independent, degree by degree.
/// An average of a degree `k` word whose degree drops lies in the span of
/// averages of lower words and is skipped. Top-degree coefficients are
/// rational, so the selection is exact; a non-constant one is reported.
fn select_by_leading_part(elems: Vec<(u32, SubElement)>, report: &mut Report) -> Vec<SubElement> {
    let mut by_degree: BTreeMap<u32, Vec<SubElement>> = BTreeMap::new();
    for (k, e) in elems {
        if e.degree() == Some(k) {
            by_degree.entry(k).or_default().push(e);
        }
    }
    let mut out = Vec::new();
    let mut constant = true;
    for (k, group) in by_degree {
        let mut index: BTreeMap<SubWord, usize> = BTreeMap::new();
        for e in &group {
            for (w, _) in e.terms().filter(|(w, _)| w.degree() == k) {
                let n = index.len();
                index.entry(w.clone()).or_insert(n);
            }
        }
        let mut ech = RatEchelon::new(index.len());
        for e in group {
            let mut v = vec![Rat::ZERO; index.len()];
            for (w, c) in e.terms().filter(|(w, _)| w.degree() == k) {
                v[index[w]] = match c.as_constant() {
                    Some(r) => r,
                    None => {
                        constant = false;
                        c.eval(&vec![Rat::ONE; crate::exactmath::MAX_SYMBOLS])
                    }
                };
            }
            if ech.insert(&v) {
                out.push(e);
            }
        }
    }
    report.record("leading-parts-rational", "group averages", constant, || "non-constant top coefficient".into());
    out
}

/// Rows independent at the first specialization whose denominators are
/// invertible modulo the rank prime.
fn modular_row_selection(rows: &[Vec<CoeffPoly>], nsym: usize) -> Vec<usize> {
    for seed in SPECIALIZATION_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point: Vec<u64> = (0..nsym).map(|_| rng.gen_range(2..RANK_PRIME)).collect();
        if let Some(sel) = independent_rows_mod_p(rows, &point, RANK_PRIME) {
            return sel;
        }
    }
    // every point hit a bad denominator: fall back to a rational point
    let point = random_point(nsym, SPECIALIZATION_SEEDS[0]);
    let ncols = rows.first().map_or(0, Vec::len);
    let mut ech = RatEchelon::new(ncols);
    (0..rows.len()).filter(|&i| ech.insert(&rows[i].iter().map(|c| c.eval(&point)).collect::<Vec<_>>())).collect()
}

/// A random combination of up to three words of degree at most `max_degree`
/// with arbitrary letters (unsorted, crossing, reversed) and group tails.
pub fn random_element(sub: &SubAlgebra, max_degree: u32, rng: &mut ChaCha8Rng) -> SubElement {
    let kind = sub.kind();
    let n = sub.rank();
    let order = sub.context().group().len() as u32;
    let nsym = sub.context().symbol_names().len();
    let mut e = SubElement::zero(kind);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_degree);
        let mut w = SubElement::scalar(kind, CoeffPoly::one());
        for _ in 0..len {
            let (i, j) = loop {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if kind == Kind::Gl || i != j {
                    break (i, j);
                }
            };
            w = sub.multiply(&w, &SubElement::generator(kind, i, j));
        }
        let t = GroupElement(rng.gen_range(0..order));
        w = sub.multiply(&w, &SubElement::group(kind, t));
        let mut c = CoeffPoly::int(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
        if nsym > 0 && rng.gen_bool(0.3) {
            c = &c * &CoeffPoly::symbol(rng.gen_range(0..nsym));
        }
        e = e.add(&w.scale(&c));
    }
    e
}

/// Straightening on random elements: same image in the Cherednik algebra,
/// support on basis words, idempotence, and agreement of the rewriting and
/// linear routes.
pub fn soundness_check(sub: &SubAlgebra, samples: usize, max_degree: u32, seed: u64) -> Report {
    let ctx = sub.context();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<SubElement> = (0..samples).map(|_| random_element(sub, max_degree, &mut rng)).collect();
    let mut report = report_for(ctx, "straightening")
        .param("algebra", sub.kind().to_string())
        .param("samples", samples)
        .param("max_degree", max_degree)
        .param("seed", seed);
    let outcomes = crate::par::map(&inputs, |e| -> Result<Vec<(&'static str, bool, String)>> {
        let nf = sub.normal_form(e)?;
        let lhs = sub.embed(&nf);
        let rhs = sub.embed(e);
        let mut out = vec![
            ("embedding-preserved", lhs == rhs, (&lhs - &rhs).to_canonical_string()),
            ("basis-support", nf.is_normal(), nf.to_string_with(ctx)),
        ];
        let again = sub.normal_form(&nf)?;
        out.push(("idempotent", again == nf, again.to_string_with(ctx)));
        if sub.can_rewrite() {
            let lin = sub.normal_form_linear(e)?;
            out.push(("routes-agree", lin == nf, lin.sub(&nf).to_string_with(ctx)));
        }
        Ok(out)
    });
    for (k, (e, o)) in inputs.iter().zip(outcomes).enumerate() {
        let label = format!("sample {} ({} terms, degree {})", k + 1, e.len(), e.degree().unwrap_or(0));
        match o {
            Ok(rows) => {
                for (rel, ok, w) in rows {
                    report.record(rel, label.clone(), ok, || w);
                }
            }
            Err(err) => report.fail("embedding-preserved", label, err.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_root_system, Family};

    #[test]
    fn so3_small_degrees() {
        let ctx = Context::symbolic(build_root_system(Family::A, 3).unwrap()).unwrap();
        let sub = SubAlgebra::new(&ctx, Kind::So);
        let r = pbw_rank_check(&sub, 2).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let c = centralizer(&sub, 2).unwrap();
        assert!(c.report.passed(), "{}", c.report.to_text());
        assert_eq!(c.basis.len(), 2);
    }

    #[test]
    fn gl2_centre() {
        let ctx = Context::symbolic(build_root_system(Family::A, 2).unwrap()).unwrap();
        let sub = SubAlgebra::new(&ctx, Kind::Gl);
        let c = centralizer(&sub, 1).unwrap();
        assert!(c.report.passed(), "{}", c.report.to_text());
    }
}
