//! Elements of the angular momenta algebras over basis words, their embedding
//! into the Cherednik algebra, and straightening to the basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};

use super::word::{crossing_count, enumerate_basis, gl_inversions, Kind, Letter, SubWord};
use crate::cherednik::{angular_momentum, e_generator, Context, PbwElement};
use crate::coxeter::{Family, GroupElement};
use crate::error::{Error, Result};
use crate::exactmath::linalg::RatEchelon;
use crate::exactmath::xpoly::write_signed_term;
use crate::exactmath::{CoeffPoly, GExp, Mono, Rat};

/// Default cap on rewriting steps before falling back to linear reduction.
pub const DEFAULT_REWRITE_CAP: usize = 200_000;
/// Default bound on the word degree accepted by `normal_form`.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

/// Finite combination of words; words need not be basis words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubElement {
    pub kind: Kind,
    terms: BTreeMap<SubWord, CoeffPoly>,
}

impl SubElement {
    pub fn zero(kind: Kind) -> SubElement {
        SubElement { kind, terms: BTreeMap::new() }
    }

    pub fn word(kind: Kind, w: SubWord) -> SubElement {
        let mut e = SubElement::zero(kind);
        e.add_term(w, &CoeffPoly::one());
        e
    }

    pub fn scalar(kind: Kind, c: CoeffPoly) -> SubElement {
        let mut e = SubElement::zero(kind);
        e.add_term(SubWord::one(), &c);
        e
    }

    pub fn group(kind: Kind, w: GroupElement) -> SubElement {
        SubElement::word(kind, SubWord { factors: Vec::new(), tail: w })
    }

    /// `M_ij` or `E_ij` (0-based); `M_ji = -M_ij` and `M_ii = 0`.
    pub fn generator(kind: Kind, i: usize, j: usize) -> SubElement {
        let mut e = SubElement::zero(kind);
        if let Some((l, s)) = normalize(kind, i as u8, j as u8) {
            e.add_term(SubWord::from_letters(&[l], GroupElement::IDENTITY), &CoeffPoly::int(s));
        }
        e
    }

    pub fn add_term(&mut self, w: SubWord, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubWord, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &SubWord) -> CoeffPoly {
        self.terms.get(w).cloned().unwrap_or_default()
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

    /// Largest word degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(SubWord::degree).max()
    }

    /// Every word is a basis word.
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| w.is_basis(self.kind))
    }

    pub fn add(&self, other: &SubElement) -> SubElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SubElement) -> SubElement {
        self.add(&other.scale(&CoeffPoly::int(-1)))
    }

    pub fn scale(&self, c: &CoeffPoly) -> SubElement {
        let mut out = SubElement::zero(self.kind);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// Terms in the canonical display order: degree descending, crossings,
    /// factors, group tail.
    pub fn sorted_terms(&self, ctx: &Context) -> Vec<(&SubWord, &CoeffPoly)> {
        let kind = self.kind;
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let (la, lb) = (a.letters(), b.letters());
            b.degree()
                .cmp(&a.degree())
                .then_with(|| disorder(kind, &la).cmp(&disorder(kind, &lb)))
                .then_with(|| a.factors.cmp(&b.factors))
                .then_with(|| ctx.group().cmp(a.tail, b.tail))
        });
        v
    }

    pub fn to_string_with(&self, ctx: &Context) -> String {
        let terms = self.sorted_terms(ctx);
        if terms.is_empty() {
            return "0".into();
        }
        let names = ctx.symbol_names();
        let group = ctx.group();
        let mut s = String::new();
        for (idx, (w, c)) in terms.iter().enumerate() {
            let is_one = w.factors.is_empty() && w.tail.is_identity();
            write_signed_term(idx == 0, c, names, &mut s, |f| w.write(self.kind, |g| group.render(g), f), is_one)
                .unwrap();
        }
        s
    }
}

fn disorder(kind: Kind, letters: &[Letter]) -> usize {
    match kind {
        Kind::So => crossing_count(letters),
        Kind::Gl => gl_inversions(letters),
    }
}

/// Canonical letter and sign: `M_ji = -M_ij`, `M_ii = 0`; `E_ij` unchanged.
fn normalize(kind: Kind, i: u8, j: u8) -> Option<(Letter, i64)> {
    match kind {
        Kind::So if i == j => None,
        Kind::So if i > j => Some(((j, i), -1)),
        _ => Some(((i, j), 1)),
    }
}

type Key = (Vec<Letter>, GroupElement);

/// A replacement for two adjacent letters: `sign * left * S_pair * right`.
struct Piece {
    sign: i64,
    left: Vec<Letter>,
    s: Option<(u8, u8)>,
    right: Vec<Letter>,
}

fn piece(sign: i64, left: &[Letter], s: Option<(u8, u8)>, right: &[Letter]) -> Piece {
    Piece { sign, left: left.to_vec(), s, right: right.to_vec() }
}

enum Step {
    Swap(usize),
    Cross(usize, usize),
}

/// Symbols of the basis words of one degree, as a rational row space.
struct SymbolTable {
    words: Vec<SubWord>,
    columns: FxHashMap<(Mono, Mono), usize>,
    echelon: RatEchelon,
}

type Symbol = FxHashMap<(Mono, Mono), Rat>;

/// One presented algebra over a Cherednik context, with its caches.
pub struct SubAlgebra {
    kind: Kind,
    ctx: Arc<Context>,
    gens: Vec<Vec<PbwElement>>,
    conj: DashMap<(GroupElement, Letter), Arc<Vec<(Letter, Rat)>>, FxBuildHasher>,
    embed_cache: DashMap<Vec<Letter>, PbwElement, FxBuildHasher>,
    symbols: DashMap<u32, Arc<SymbolTable>, FxBuildHasher>,
    rewrite_cap: usize,
    max_degree: u32,
}

impl SubAlgebra {
    pub fn new(ctx: &Arc<Context>, kind: Kind) -> Arc<SubAlgebra> {
        Self::with_limits(ctx, kind, DEFAULT_REWRITE_CAP, DEFAULT_MAX_DEGREE)
    }

    pub fn with_limits(ctx: &Arc<Context>, kind: Kind, rewrite_cap: usize, max_degree: u32) -> Arc<SubAlgebra> {
        let n = ctx.rank();
        let unit = |i: usize| -> Vec<Rat> { (0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }).collect() };
        let gens = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match kind {
                        Kind::So => angular_momentum(ctx, &unit(i), &unit(j)),
                        Kind::Gl => e_generator(ctx, i, j).unwrap(),
                    })
                    .collect()
            })
            .collect();
        Arc::new(SubAlgebra {
            kind,
            ctx: ctx.clone(),
            gens,
            conj: DashMap::default(),
            embed_cache: DashMap::default(),
            symbols: DashMap::default(),
            rewrite_cap,
            max_degree,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Basis words of degree exactly `d` with identity tail.
    pub fn basis(&self, d: u32) -> Vec<SubWord> {
        enumerate_basis(self.kind, self.rank(), d)
    }

    /// `u G_ij u^{-1}` as a combination of canonical letters.
    fn conj_letter(&self, u: GroupElement, l: Letter) -> Arc<Vec<(Letter, Rat)>> {
        if u.is_identity() {
            return Arc::new(vec![(l, Rat::ONE)]);
        }
        if let Some(v) = self.conj.get(&(u, l)) {
            return v.clone();
        }
        let cols = self.ctx.group().columns(u);
        let (ci, cj) = (&cols[l.0 as usize], &cols[l.1 as usize]);
        let n = self.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = match self.kind {
                    Kind::So if a >= b => continue,
                    Kind::So => &(&ci[a] * &cj[b]) - &(&ci[b] * &cj[a]),
                    Kind::Gl => &ci[a] * &cj[b],
                };
                if !c.is_zero() {
                    out.push(((a as u8, b as u8), c));
                }
            }
        }
        let v = Arc::new(out);
        self.conj.insert((u, l), v.clone());
        v
    }

    /// `u * letters * u^{-1}` expanded into words.
    fn conj_letters(&self, u: GroupElement, letters: &[Letter]) -> Vec<(Vec<Letter>, Rat)> {
        let mut acc = vec![(Vec::with_capacity(letters.len()), Rat::ONE)];
        for &l in letters {
            let images = self.conj_letter(u, l);
            let mut next = Vec::with_capacity(acc.len() * images.len());
            for (w, c) in &acc {
                for (m, r) in images.iter() {
                    let mut w2 = w.clone();
                    w2.push(*m);
                    next.push((w2, c * r));
                }
            }
            acc = next;
        }
        acc
    }

    /// `v e v^{-1}` (not straightened).
    pub fn conjugate(&self, e: &SubElement, v: GroupElement) -> SubElement {
        let group = self.ctx.group();
        let vinv = group.inv(v);
        let mut out = SubElement::zero(self.kind);
        for (w, c) in e.terms() {
            let tail = group.mul(group.mul(v, w.tail), vinv);
            for (letters, r) in self.conj_letters(v, &w.letters()) {
                out.add_term(SubWord::from_letters(&letters, tail), &c.scale(&r));
            }
        }
        out
    }

    /// Product of two elements as words (not straightened).
    pub fn multiply(&self, a: &SubElement, b: &SubElement) -> SubElement {
        let group = self.ctx.group();
        let mut out = SubElement::zero(self.kind);
        for (w1, c1) in a.terms() {
            let l1 = w1.letters();
            for (w2, c2) in b.terms() {
                let tail = group.mul(w1.tail, w2.tail);
                let c12 = c1 * c2;
                for (l2, r) in self.conj_letters(w1.tail, &w2.letters()) {
                    let mut l = l1.clone();
                    l.extend(l2);
                    out.add_term(SubWord::from_letters(&l, tail), &c12.scale(&r));
                }
            }
        }
        out
    }

    /// Product of the generator images, without the tail.
    fn embed_letters(&self, letters: &[Letter]) -> PbwElement {
        if letters.is_empty() {
            return PbwElement::one(&self.ctx);
        }
        if let Some(v) = self.embed_cache.get(letters) {
            return v.clone();
        }
        let (last, init) = letters.split_last().unwrap();
        let p = &self.embed_letters(init) * &self.gens[last.0 as usize][last.1 as usize];
        self.embed_cache.insert(letters.to_vec(), p.clone());
        p
    }

    pub fn embed_word(&self, w: &SubWord) -> PbwElement {
        let p = self.embed_letters(&w.letters());
        if w.tail.is_identity() {
            p
        } else {
            &p * &PbwElement::group_element(&self.ctx, w.tail)
        }
    }

    /// Image in the Cherednik algebra.
    pub fn embed(&self, e: &SubElement) -> PbwElement {
        let terms: Vec<(&SubWord, &CoeffPoly)> = e.terms().collect();
        let parts = crate::par::map(&terms, |(w, c)| self.embed_word(w).scale(c));
        parts.iter().fold(PbwElement::zero(&self.ctx), |acc, p| &acc + p)
    }

    fn check_degree(&self, e: &SubElement) -> Result<()> {
        match e.degree() {
            Some(d) if d > self.max_degree => Err(Error::DegreeBound { found: d, bound: self.max_degree }),
            _ => Ok(()),
        }
    }

    /// Straightens onto basis words: diagram rewriting first, linear reduction
    /// through the embedding if rewriting is unavailable or hits its cap.
    pub fn normal_form(&self, e: &SubElement) -> Result<SubElement> {
        self.check_degree(e)?;
        match self.normal_form_rewrite(e) {
            Some(r) => Ok(r),
            None => self.normal_form_linear(e),
        }
    }

    /// Whether diagram rewriting is implemented for this algebra.
    pub fn can_rewrite(&self) -> bool {
        match self.kind {
            Kind::So => true,
            Kind::Gl => self.ctx.root_system().family() == Family::A,
        }
    }

    /// Rewriting by the commutator and crossing relations; `None` when not
    /// available or when the step cap is exceeded.
    pub fn normal_form_rewrite(&self, e: &SubElement) -> Option<SubElement> {
        if !self.can_rewrite() {
            return None;
        }
        let mut pending: BTreeMap<(usize, Key), CoeffPoly> = BTreeMap::new();
        for (w, c) in e.terms() {
            let mut letters = Vec::new();
            let mut sign = 1;
            let mut zero = false;
            for (i, j) in w.letters() {
                match normalize(self.kind, i, j) {
                    Some((l, s)) => {
                        letters.push(l);
                        sign *= s;
                    }
                    None => zero = true,
                }
            }
            if !zero {
                add_pending(&mut pending, (letters, w.tail), &c.scale(&Rat::int(sign)));
            }
        }
        let mut done = SubElement::zero(self.kind);
        let mut steps = 0usize;
        while let Some(((_, key), c)) = pending.pop_last() {
            let Some(step) = self.find_step(&key.0) else {
                done.add_term(SubWord::from_letters(&key.0, key.1), &c);
                continue;
            };
            steps += 1;
            if steps > self.rewrite_cap {
                return None;
            }
            self.apply_step(&mut pending, &key, &c, step);
        }
        Some(done)
    }

    fn find_step(&self, l: &[Letter]) -> Option<Step> {
        if let Some(p) = (0..l.len().saturating_sub(1)).find(|&p| l[p] > l[p + 1]) {
            return Some(Step::Swap(p));
        }
        for p in 0..l.len() {
            for q in p + 1..l.len() {
                let ((a, c), (b, d)) = (l[p], l[q]);
                let hit = match self.kind {
                    Kind::So => a < b && b < c && c < d,
                    Kind::Gl => c > d,
                };
                if hit {
                    return Some(Step::Cross(p, q));
                }
            }
        }
        None
    }

    /// `[X, Y]` as pieces.
    fn commutator_pieces(&self, x: Letter, y: Letter) -> Vec<Piece> {
        let ((i, j), (k, l)) = (x, y);
        match self.kind {
            // M_il S_jk + M_jk S_il - M_ik S_lj - M_jl S_ik
            Kind::So => vec![
                piece(1, &[(i, l)], Some((j, k)), &[]),
                piece(1, &[(j, k)], Some((i, l)), &[]),
                piece(-1, &[(i, k)], Some((l, j)), &[]),
                piece(-1, &[(j, l)], Some((i, k)), &[]),
            ],
            // E_il S_jk - S_il E_kj + S_kl E_ij - E_ij S_kl
            Kind::Gl => vec![
                piece(1, &[(i, l)], Some((j, k)), &[]),
                piece(-1, &[], Some((i, l)), &[(k, j)]),
                piece(1, &[], Some((k, l)), &[(i, j)]),
                piece(-1, &[(i, j)], Some((k, l)), &[]),
            ],
        }
    }

    /// Replacement of a crossing adjacent pair `X Y`.
    fn crossing_pieces(&self, x: Letter, y: Letter) -> Vec<Piece> {
        match self.kind {
            // M_ac M_bd = M_ab M_cd + M_bc M_ad - M_ab S_cd - M_bc S_ad + M_ac S_bd
            Kind::So => {
                let ((a, c), (b, d)) = (x, y);
                vec![
                    piece(1, &[(a, b), (c, d)], None, &[]),
                    piece(1, &[(b, c), (a, d)], None, &[]),
                    piece(-1, &[(a, b)], Some((c, d)), &[]),
                    piece(-1, &[(b, c)], Some((a, d)), &[]),
                    piece(1, &[(a, c)], Some((b, d)), &[]),
                ]
            }
            // E_ij E_kl = E_il E_kj + E_il S_kj - E_ij S_kl
            Kind::Gl => {
                let ((i, j), (k, l)) = (x, y);
                vec![
                    piece(1, &[(i, l), (k, j)], None, &[]),
                    piece(1, &[(i, l)], Some((k, j)), &[]),
                    piece(-1, &[(i, j)], Some((k, l)), &[]),
                ]
            }
        }
    }

    /// Adds `c * L[..p] * (pieces) * L[p+2..] * tail`.
    fn emit(&self, out: &mut BTreeMap<(usize, Key), CoeffPoly>, l: &[Letter], p: usize, pieces: &[Piece], tail: GroupElement, c: &CoeffPoly) {
        let group = self.ctx.group();
        'pieces: for pc in pieces {
            let mut sign = pc.sign;
            let mut prefix = l[..p].to_vec();
            for &(i, j) in &pc.left {
                let Some((lt, s)) = normalize(self.kind, i, j) else { continue 'pieces };
                prefix.push(lt);
                sign *= s;
            }
            let mut suffix = Vec::new();
            for &(i, j) in &pc.right {
                let Some((lt, s)) = normalize(self.kind, i, j) else { continue 'pieces };
                suffix.push(lt);
                sign *= s;
            }
            suffix.extend_from_slice(&l[p + 2..]);
            let c = c.scale(&Rat::int(sign));
            match pc.s {
                None => {
                    prefix.extend(suffix);
                    add_pending(out, (prefix, tail), &c);
                }
                Some((a, b)) => {
                    for (u, sc) in self.ctx.s_basis(a as usize, b as usize) {
                        let cu = &c * sc;
                        let t = group.mul(*u, tail);
                        for (letters, r) in self.conj_letters(*u, &suffix) {
                            let mut w = prefix.clone();
                            w.extend(letters);
                            add_pending(out, (w, t), &cu.scale(&r));
                        }
                    }
                }
            }
        }
    }

    fn apply_step(&self, out: &mut BTreeMap<(usize, Key), CoeffPoly>, key: &Key, c: &CoeffPoly, step: Step) {
        let (l, tail) = (&key.0, key.1);
        match step {
            Step::Swap(p) => {
                // X Y = Y X + [X, Y]
                let mut sw = l.clone();
                sw.swap(p, p + 1);
                add_pending(out, (sw, tail), c);
                self.emit(out, l, p, &self.commutator_pieces(l[p], l[p + 1]), tail, c);
            }
            Step::Cross(p, q) => {
                // bring L[q] next to L[p], then untangle
                let mut cur = l.clone();
                for r in (p + 1..q).rev() {
                    self.emit(out, &cur, r, &self.commutator_pieces(cur[r], cur[r + 1]), tail, c);
                    cur.swap(r, r + 1);
                }
                self.emit(out, &cur, p, &self.crossing_pieces(cur[p], cur[p + 1]), tail, c);
            }
        }
    }

    fn letter_symbol(&self, l: Letter) -> Symbol {
        let (i, j) = (l.0 as usize, l.1 as usize);
        let mut s = Symbol::default();
        let mut put = |a: Mono, b: Mono, r: Rat| {
            let e = s.entry((a, b)).or_default();
            *e += &r;
        };
        match self.kind {
            Kind::So => {
                put(Mono::var(i), Mono::var(j), Rat::ONE);
                put(Mono::var(j), Mono::var(i), -Rat::ONE);
            }
            Kind::Gl => {
                // 1/2 (x_i - p_i)(x_j + p_j)
                let h = Rat::new(1, 2);
                put(Mono::var(i).mul(&Mono::var(j)), Mono::ONE, h.clone());
                put(Mono::var(i), Mono::var(j), h.clone());
                put(Mono::var(j), Mono::var(i), -h.clone());
                put(Mono::ONE, Mono::var(i).mul(&Mono::var(j)), -h);
            }
        }
        s.retain(|_, r| !r.is_zero());
        s
    }

    fn word_symbol(&self, letters: &[Letter]) -> Symbol {
        let mut acc = Symbol::default();
        acc.insert((Mono::ONE, Mono::ONE), Rat::ONE);
        for &l in letters {
            let f = self.letter_symbol(l);
            let mut next = Symbol::default();
            for ((a, b), r) in &acc {
                for ((c, d), s) in &f {
                    let e = next.entry((a.mul(c), b.mul(d))).or_default();
                    *e += &(r * s);
                }
            }
            next.retain(|_, r| !r.is_zero());
            acc = next;
        }
        acc
    }

    fn symbol_table(&self, d: u32) -> Result<Arc<SymbolTable>> {
        if let Some(t) = self.symbols.get(&d) {
            return Ok(t.clone());
        }
        let words = self.basis(d);
        let syms: Vec<Symbol> = words.iter().map(|w| self.word_symbol(&w.letters())).collect();
        let mut columns = FxHashMap::default();
        for s in &syms {
            for k in s.keys() {
                let n = columns.len();
                columns.entry(*k).or_insert(n);
            }
        }
        let mut echelon = RatEchelon::new(columns.len());
        for s in &syms {
            let mut v = vec![Rat::ZERO; columns.len()];
            for (k, r) in s {
                v[columns[k]] = r.clone();
            }
            if !echelon.insert(&v) {
                // symbols of basis words must be independent
                return Err(Error::NotInSubalgebra(format!("basis symbols of degree {d} are dependent")));
            }
        }
        let t = Arc::new(SymbolTable { words, columns, echelon });
        self.symbols.insert(d, t.clone());
        Ok(t)
    }

    /// Reduction through the embedding: repeatedly matches the top symbol of
    /// the image against symbols of basis words times group elements.
    pub fn normal_form_linear(&self, e: &SubElement) -> Result<SubElement> {
        self.check_degree(e)?;
        let p = self.embed(e);
        self.express(&p)
    }

    /// Writes a Cherednik element of the subalgebra over basis words.
    pub fn express(&self, p: &PbwElement) -> Result<SubElement> {
        let mut rest = p.clone();
        let mut out = SubElement::zero(self.kind);
        while let Some(top) = rest.filtration_degree() {
            if top % 2 == 1 || top / 2 > self.max_degree {
                return Err(Error::NotInSubalgebra(format!("leading part of filtration degree {top}")));
            }
            let d = top / 2;
            let table = self.symbol_table(d)?;
            // untwisted top symbol per group element: x^a u D^b -> x^a (u.D)^b u
            let mut per_u: BTreeMap<GroupElement, FxHashMap<(Mono, Mono), CoeffPoly>> = BTreeMap::new();
            for (k, c) in rest.terms() {
                if k.degree() != top {
                    continue;
                }
                let slot = per_u.entry(k.w).or_default();
                for (b, r) in self.ctx.act(k.w, k.b).iter() {
                    let e = slot.entry((k.a, *b)).or_default();
                    e.add_assign_ref(&c.scale(r));
                }
            }
            let mut step = SubElement::zero(self.kind);
            for (u, sym) in per_u {
                let coords = self.solve_symbol(&table, &sym)?;
                for (w, c) in table.words.iter().zip(coords) {
                    if !c.is_zero() {
                        step.add_term(SubWord { factors: w.factors.clone(), tail: u }, &c);
                    }
                }
            }
            if step.is_zero() {
                return Err(Error::NotInSubalgebra("leading symbol vanishes".into()));
            }
            rest = &rest - &self.embed(&step);
            if rest.filtration_degree().is_some_and(|t| t >= top) {
                return Err(Error::NotInSubalgebra("leading part does not cancel".into()));
            }
            out = out.add(&step);
        }
        Ok(out)
    }

    fn solve_symbol(&self, table: &SymbolTable, sym: &FxHashMap<(Mono, Mono), CoeffPoly>) -> Result<Vec<CoeffPoly>> {
        let mut by_g: FxHashMap<GExp, Vec<Rat>> = FxHashMap::default();
        let ncols = table.columns.len();
        for (k, c) in sym {
            if c.is_zero() {
                continue;
            }
            let col = *table.columns.get(k).ok_or_else(|| Error::NotInSubalgebra("symbol outside the basis span".into()))?;
            for (ge, r) in c.terms() {
                by_g.entry(*ge).or_insert_with(|| vec![Rat::ZERO; ncols])[col] += r;
            }
        }
        let mut out = vec![CoeffPoly::zero(); table.words.len()];
        for (ge, v) in by_g {
            let coords = table.echelon.solve(&v).ok_or_else(|| Error::NotInSubalgebra("symbol outside the basis span".into()))?;
            for (slot, r) in out.iter_mut().zip(coords) {
                if !r.is_zero() {
                    slot.add_assign_ref(&CoeffPoly::monomial(ge, r));
                }
            }
        }
        Ok(out)
    }

    /// Word-level equality check of two straightening routes; used by tests
    /// and the CLI `--check` mode.
    pub fn routes_agree(&self, e: &SubElement) -> Result<bool> {
        let lin = self.normal_form_linear(e)?;
        Ok(match self.normal_form_rewrite(e) {
            Some(r) => r == lin,
            None => true,
        })
    }

    /// Formats a word list for reports.
    pub fn render_word(&self, w: &SubWord) -> String {
        let mut s = String::new();
        if w.factors.is_empty() && w.tail.is_identity() {
            s.push('1');
        } else {
            let _ = w.write(self.kind, |g| self.ctx.group().render(g), &mut s);
        }
        s
    }
}

fn add_pending(out: &mut BTreeMap<(usize, Key), CoeffPoly>, key: Key, c: &CoeffPoly) {
    if c.is_zero() {
        return;
    }
    let k = (key.0.len(), key);
    match out.get_mut(&k) {
        Some(e) => {
            e.add_assign_ref(c);
            if e.is_zero() {
                out.remove(&k);
            }
        }
        None => {
            out.insert(k, c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_root_system;

    fn sub(f: Family, n: usize, kind: Kind) -> Arc<SubAlgebra> {
        let ctx = Context::symbolic(build_root_system(f, n).unwrap()).unwrap();
        SubAlgebra::new(&ctx, kind)
    }

    fn m(i: usize, j: usize) -> SubElement {
        SubElement::generator(Kind::So, i, j)
    }

    #[test]
    fn swap_gives_lower_terms() {
        let a = sub(Family::A, 3, Kind::So);
        let e = a.multiply(&m(1, 2), &m(0, 1));
        let nf = a.normal_form(&e).unwrap();
        assert!(nf.is_normal());
        assert_eq!(a.embed(&nf), a.embed(&e));
        assert_eq!(nf, a.normal_form_linear(&e).unwrap());
        let top = SubWord::from_letters(&[(0, 1), (1, 2)], GroupElement::IDENTITY);
        assert_eq!(nf.coeff(&top), CoeffPoly::one());
    }

    #[test]
    fn crossing_untangles() {
        let a = sub(Family::A, 4, Kind::So);
        let e = a.multiply(&m(0, 2), &m(1, 3));
        let nf = a.normal_form(&e).unwrap();
        assert!(nf.is_normal());
        assert_eq!(a.embed(&nf), a.embed(&e));
        let w1 = SubWord::from_letters(&[(0, 1), (2, 3)], GroupElement::IDENTITY);
        let w2 = SubWord::from_letters(&[(0, 3), (1, 2)], GroupElement::IDENTITY);
        assert_eq!(nf.coeff(&w1), CoeffPoly::one());
        assert_eq!(nf.coeff(&w2), CoeffPoly::one());
        assert_eq!(nf, a.normal_form_linear(&e).unwrap());
    }

    #[test]
    fn basis_word_is_fixed() {
        let a = sub(Family::A, 4, Kind::So);
        for w in a.basis(2) {
            let e = SubElement::word(Kind::So, w);
            assert_eq!(a.normal_form(&e).unwrap(), e);
            assert_eq!(a.normal_form_linear(&e).unwrap(), e);
        }
    }

    #[test]
    fn gl_straightening() {
        let a = sub(Family::A, 2, Kind::Gl);
        let e12 = SubElement::generator(Kind::Gl, 0, 1);
        let e21 = SubElement::generator(Kind::Gl, 1, 0);
        let e = a.multiply(&e12, &e21);
        let nf = a.normal_form(&e).unwrap();
        assert!(nf.is_normal());
        assert_eq!(a.embed(&nf), a.embed(&e));
        assert_eq!(nf, a.normal_form_linear(&e).unwrap());
    }

    #[test]
    fn general_group_rewriting() {
        let a = sub(Family::B, 3, Kind::So);
        let e = a.multiply(&a.multiply(&m(1, 2), &m(0, 2)), &m(0, 1));
        let nf = a.normal_form(&e).unwrap();
        assert!(nf.is_normal());
        assert_eq!(nf, a.normal_form_linear(&e).unwrap());
    }

    #[test]
    fn degree_bound() {
        let a = SubAlgebra::with_limits(&Context::symbolic(build_root_system(Family::A, 2).unwrap()).unwrap(), Kind::So, 10, 2);
        let mut e = SubElement::scalar(Kind::So, CoeffPoly::one());
        for _ in 0..3 {
            e = a.multiply(&e, &m(0, 1));
        }
        assert!(matches!(a.normal_form(&e), Err(Error::DegreeBound { found: 3, bound: 2 })));
    }
}
