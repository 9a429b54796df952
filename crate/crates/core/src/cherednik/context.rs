//! Algebra context and the memoized normal-form engine.

use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::coxeter::{s_pair, Group, GroupElement, MultiplicityMap, RootSystem, DEFAULT_GROUP_CAP};
use crate::error::Result;
use crate::exactmath::{CoeffPoly, Mono, Rat};

/// Index of a PBW monomial `x^a * w * D^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PbwKey {
    pub a: Mono,
    pub w: GroupElement,
    pub b: Mono,
}

impl PbwKey {
    pub fn degree(&self) -> u32 {
        self.a.degree() + self.b.degree()
    }
}

pub(crate) type Terms = FxHashMap<PbwKey, CoeffPoly>;
type TermList = Arc<Vec<(PbwKey, CoeffPoly)>>;
type LowerList = Arc<Vec<(Mono, GroupElement, CoeffPoly)>>;
type ActList = Arc<Vec<(Mono, Rat)>>;

pub(crate) fn add_to(terms: &mut Terms, k: PbwKey, c: &CoeffPoly) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&k) {
        Some(e) => {
            e.add_assign_ref(c);
            if e.is_zero() {
                terms.remove(&k);
            }
        }
        None => {
            terms.insert(k, c.clone());
        }
    }
}

/// A root system with its group and multiplicities, plus the rewriting caches.
pub struct Context {
    rs: RootSystem,
    group: Group,
    mult: MultiplicityMap,
    /// `S_{e_i e_j}` as (group element, coefficient) lists.
    s_basis: Vec<Vec<Vec<(GroupElement, CoeffPoly)>>>,
    /// `D^b x^c` in normal form.
    memo_dx: DashMap<(Mono, Mono), TermList, FxBuildHasher>,
    /// `D_i x^c - x^c D_i`, which lies in `Q[x] W`.
    memo_lower: DashMap<(usize, Mono), LowerList, FxBuildHasher>,
    /// `w . x^m` for non-monomial group elements.
    memo_act: DashMap<(GroupElement, Mono), ActList, FxBuildHasher>,
}

impl std::fmt::Debug for Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Context")
            .field("root_system", &self.rs.label())
            .field("group_order", &self.group.len())
            .finish()
    }
}

impl Context {
    pub fn new(rs: RootSystem, mult: MultiplicityMap) -> Result<Arc<Context>> {
        Self::with_cap(rs, mult, DEFAULT_GROUP_CAP)
    }

    /// Symbolic couplings, one per orbit.
    pub fn symbolic(rs: RootSystem) -> Result<Arc<Context>> {
        let m = MultiplicityMap::symbolic(&rs);
        Self::new(rs, m)
    }

    pub fn with_cap(rs: RootSystem, mult: MultiplicityMap, cap: usize) -> Result<Arc<Context>> {
        let group = Group::enumerate(&rs, cap)?;
        if mult.len() < rs.symbols().len() {
            return Err(crate::Error::Config(format!(
                "{} coupling values given for {} orbits",
                mult.len(),
                rs.symbols().len()
            )));
        }
        let n = rs.rank();
        let e = |i: usize| -> Vec<Rat> { (0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }).collect() };
        let s_basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| s_pair(&e(i), &e(j), &rs, &group, &mult).terms().map(|(w, c)| (w, c.clone())).collect())
                    .collect()
            })
            .collect();
        Ok(Arc::new(Context {
            rs,
            group,
            mult,
            s_basis,
            memo_dx: DashMap::default(),
            memo_lower: DashMap::default(),
            memo_act: DashMap::default(),
        }))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn multiplicities(&self) -> &MultiplicityMap {
        &self.mult
    }

    /// Number of coordinates `N`.
    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn symbol_names(&self) -> &[String] {
        self.rs.symbols()
    }

    pub fn s_basis(&self, i: usize, j: usize) -> &[(GroupElement, CoeffPoly)] {
        &self.s_basis[i][j]
    }

    /// Number of cached `D^b x^c` products.
    pub fn memo_len(&self) -> usize {
        self.memo_dx.len()
    }

    pub fn clear_memo(&self) {
        self.memo_dx.clear();
        self.memo_lower.clear();
        self.memo_act.clear();
    }

    /// `w . x^m` as a sum of monomials (the same formula transforms `D^m`).
    pub fn act(&self, w: GroupElement, m: Mono) -> ActList {
        if w.is_identity() || m.is_one() {
            return Arc::new(vec![(m, Rat::ONE)]);
        }
        if let Some(sp) = self.group.signed_perm(w) {
            let mut out = Mono::ONE;
            let mut neg = false;
            for (i, &(p, s)) in sp.iter().enumerate() {
                let e = m.get(i);
                out.0[p as usize] = e as u8;
                if s < 0 && e % 2 == 1 {
                    neg = !neg;
                }
            }
            return Arc::new(vec![(out, if neg { -Rat::ONE } else { Rat::ONE })]);
        }
        let hit = self.memo_act.get(&(w, m)).map(|v| v.clone());
        if let Some(v) = hit {
            return v;
        }
        let cols = self.group.columns(w);
        let mut acc: FxHashMap<Mono, Rat> = FxHashMap::default();
        acc.insert(Mono::ONE, Rat::ONE);
        for i in 0..self.rank() {
            for _ in 0..m.get(i) {
                let mut next: FxHashMap<Mono, Rat> = FxHashMap::default();
                for (mono, c) in &acc {
                    for (j, x) in cols[i].iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        let e = next.entry(mono.inc(j)).or_default();
                        *e += &(c * x);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                acc = next;
            }
        }
        let v: ActList = Arc::new(acc.into_iter().collect());
        self.memo_act.insert((w, m), v.clone());
        v
    }

    /// `D_i x^c - x^c D_i`.
    fn lower(&self, i: usize, c: Mono) -> LowerList {
        if c.is_one() {
            return Arc::new(Vec::new());
        }
        let hit = self.memo_lower.get(&(i, c)).map(|v| v.clone());
        if let Some(v) = hit {
            return v;
        }
        let j = c.first_nonzero().unwrap();
        let c1 = c.dec(j).unwrap();
        let mut acc: FxHashMap<(Mono, GroupElement), CoeffPoly> = FxHashMap::default();
        let mut push = |k: (Mono, GroupElement), v: CoeffPoly| {
            let e = acc.entry(k).or_default();
            e.add_assign_ref(&v);
        };
        // D_i x_j x^{c1} = x_j (D_i x^{c1}) + S_ij x^{c1}
        for (a, w, coef) in self.lower(i, c1).iter() {
            push((a.inc(j), *w), coef.clone());
        }
        for (u, s) in &self.s_basis[i][j] {
            for (m, r) in self.act(*u, c1).iter() {
                push((*m, *u), s.scale(r));
            }
        }
        let v: LowerList = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, w), c)| (a, w, c)).collect());
        self.memo_lower.insert((i, c), v.clone());
        v
    }

    /// Normal form of `D^b x^c`.
    pub fn d_times_x(&self, b: Mono, c: Mono) -> TermList {
        if b.is_one() || c.is_one() {
            return Arc::new(vec![(PbwKey { a: c, w: GroupElement::IDENTITY, b }, CoeffPoly::one())]);
        }
        let hit = self.memo_dx.get(&(b, c)).map(|v| v.clone());
        if let Some(v) = hit {
            return v;
        }
        let i = b.first_nonzero().unwrap();
        let b1 = b.dec(i).unwrap();
        let mut out = Terms::default();
        // D^{b1} (x^c D_i + lower)
        for (k, coef) in self.d_times_x(b1, c).iter() {
            add_to(&mut out, PbwKey { a: k.a, w: k.w, b: k.b.inc(i) }, coef);
        }
        for (a, w, coef) in self.lower(i, c).iter() {
            let winv = self.group.inv(*w);
            for (k, c2) in self.d_times_x(b1, *a).iter() {
                // x^a' u D^b' w = x^a' (u w) (w^-1 . D^b')
                let u = self.group.mul(k.w, *w);
                let c12 = coef * c2;
                for (bm, r) in self.act(winv, k.b).iter() {
                    add_to(&mut out, PbwKey { a: k.a, w: u, b: *bm }, &c12.scale(r));
                }
            }
        }
        let v: TermList = Arc::new(out.into_iter().collect());
        self.memo_dx.insert((b, c), v.clone());
        v
    }

    /// Adds `c1 c2 (x^a1 w1 D^b1)(x^a2 w2 D^b2)` to `out`.
    pub(crate) fn mul_monomials(&self, k1: &PbwKey, c1: &CoeffPoly, k2: &PbwKey, c2: &CoeffPoly, out: &mut Terms) {
        let c12 = c1 * c2;
        let w2inv = self.group.inv(k2.w);
        for (k, c) in self.d_times_x(k1.b, k2.a).iter() {
            let w = self.group.mul(self.group.mul(k1.w, k.w), k2.w);
            let coef = &c12 * c;
            let xs = self.act(k1.w, k.a);
            let ds = self.act(w2inv, k.b);
            for (xm, r1) in xs.iter() {
                for (dm, r2) in ds.iter() {
                    let key = PbwKey { a: k1.a.mul(xm), w, b: dm.mul(&k2.b) };
                    add_to(out, key, &coef.scale(&(r1 * r2)));
                }
            }
        }
    }
}
