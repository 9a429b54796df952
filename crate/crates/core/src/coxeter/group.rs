//! Enumeration of the reflection group generated by a root system.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use serde::Serialize;
use smallvec::SmallVec;

use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::exactmath::Rat;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Groups at most this large get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Handle of an element of an enumerated [`Group`]; `0` is the identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// `w e_i = sign_i e_{perm_i}`.
pub type SignedPerm = SmallVec<[(u8, i8); 8]>;

#[derive(Clone, Debug)]
struct ElemData {
    /// `cols[i] = w e_i`.
    cols: Vec<Vec<Rat>>,
    signed: Option<SignedPerm>,
}

/// The finite reflection group `W`, enumerated with canonical numbering:
/// identity first, then lexicographic by the image tuple of the standard basis.
#[derive(Debug)]
pub struct Group {
    n: usize,
    elems: Vec<ElemData>,
    index: FxHashMap<Vec<Rat>, u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    det: Vec<i8>,
    refl: Vec<u32>,
    /// `root_image[w][a] = (b, sign)` with `w alpha_a = sign * alpha_b`.
    root_image: Vec<Vec<(u32, i8)>>,
    type_a: bool,
}

fn flat_key(cols: &[Vec<Rat>]) -> Vec<Rat> {
    cols.iter().flat_map(|c| c.iter().cloned()).collect()
}

fn signed_of(cols: &[Vec<Rat>]) -> Option<SignedPerm> {
    let mut out = SignedPerm::new();
    for c in cols {
        let mut hit = None;
        for (j, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if hit.is_some() {
                return None;
            }
            if x.is_one() {
                hit = Some((j as u8, 1));
            } else if (-x).is_one() {
                hit = Some((j as u8, -1));
            } else {
                return None;
            }
        }
        out.push(hit?);
    }
    Some(out)
}

/// `(A B) e_i = sum_j B_{ji} A e_j`.
fn compose(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    b.iter()
        .map(|bc| {
            let mut col = vec![Rat::ZERO; n];
            for (j, bj) in bc.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for r in 0..n {
                    if !a[j][r].is_zero() {
                        col[r] += &(bj * &a[j][r]);
                    }
                }
            }
            col
        })
        .collect()
}

fn apply_cols(cols: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let n = cols.len();
    let mut out = vec![Rat::ZERO; n];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for r in 0..n {
            if !cols[i][r].is_zero() {
                out[r] += &(vi * &cols[i][r]);
            }
        }
    }
    out
}

impl Group {
    pub fn enumerate(rs: &RootSystem, cap: usize) -> Result<Group> {
        let n = rs.rank();
        let identity: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }).collect())
            .collect();
        let gens: Vec<Vec<Vec<Rat>>> = (0..rs.positive_roots().len())
            .map(|a| {
                (0..n)
                    .map(|i| super::roots::reflect(rs.root(a), rs.norm(a), &identity[i]))
                    .collect()
            })
            .collect();

        // breadth-first closure; left multiplication by generators
        let mut mats = vec![identity.clone()];
        let mut index: FxHashMap<Vec<Rat>, u32> = FxHashMap::default();
        index.insert(flat_key(&identity), 0);
        let mut parent: Vec<Option<(u32, u32)>> = vec![None];
        let mut det: Vec<i8> = vec![1];
        let mut left: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut queue = VecDeque::from([0u32]);
        while let Some(u) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let m = compose(g, &mats[u as usize]);
                let key = flat_key(&m);
                let v = match index.get(&key) {
                    Some(&v) => v,
                    None => {
                        if mats.len() >= cap {
                            return Err(Error::GroupTooLarge(cap));
                        }
                        let v = mats.len() as u32;
                        index.insert(key, v);
                        mats.push(m);
                        parent.push(Some((u, s as u32)));
                        det.push(-det[u as usize]);
                        queue.push_back(v);
                        v
                    }
                };
                let row = &mut left[s];
                if row.len() <= u as usize {
                    row.resize(u as usize + 1, u32::MAX);
                }
                row[u as usize] = v;
            }
        }
        let size = mats.len();

        // canonical order
        let signed: Vec<Option<SignedPerm>> = mats.iter().map(|m| signed_of(m)).collect();
        let all_signed = signed.iter().all(Option::is_some);
        let mut order: Vec<u32> = (1..size as u32).collect();
        order.sort_by(|&a, &b| {
            if all_signed {
                let ka = signed[a as usize].as_ref().unwrap();
                let kb = signed[b as usize].as_ref().unwrap();
                let t = |k: &SignedPerm| k.iter().map(|&(p, s)| (p as i32 + 1) * s as i32).collect::<Vec<_>>();
                t(ka).cmp(&t(kb))
            } else {
                flat_key(&mats[a as usize]).cmp(&flat_key(&mats[b as usize]))
            }
        });
        order.insert(0, 0);
        let mut new_of = vec![0u32; size];
        for (new, &old) in order.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }

        let table = (size <= TABLE_LIMIT).then(|| {
            // row w = s * p  =>  w u = s (p u)
            let mut t_old = vec![u32::MAX; size * size];
            for u in 0..size {
                t_old[u] = u as u32;
            }
            // parents were discovered before their children
            for w in 1..size {
                let (p, s) = parent[w].unwrap();
                for u in 0..size {
                    let pu = t_old[p as usize * size + u];
                    t_old[w * size + u] = left[s as usize][pu as usize];
                }
            }
            let mut t = vec![0u32; size * size];
            for a in 0..size {
                for b in 0..size {
                    t[new_of[a] as usize * size + new_of[b] as usize] = new_of[t_old[a * size + b] as usize];
                }
            }
            t
        });

        let mut elems = Vec::with_capacity(size);
        let mut dets = Vec::with_capacity(size);
        let mut new_index = FxHashMap::default();
        for (new, &old) in order.iter().enumerate() {
            let m = &mats[old as usize];
            new_index.insert(flat_key(m), new as u32);
            elems.push(ElemData { cols: m.clone(), signed: signed[old as usize].clone() });
            dets.push(det[old as usize]);
        }
        let refl: Vec<u32> = gens.iter().map(|g| new_index[&flat_key(g)]).collect();
        let inv: Vec<u32> = elems
            .iter()
            .map(|e| {
                let t: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| e.cols[j][i].clone()).collect()).collect();
                new_index[&flat_key(&t)]
            })
            .collect();
        let root_image = elems
            .iter()
            .map(|e| {
                rs.positive_roots()
                    .iter()
                    .map(|r| {
                        let img = apply_cols(&e.cols, r);
                        let (b, s) = rs.find_root(&img).expect("group element permutes roots");
                        (b as u32, s)
                    })
                    .collect()
            })
            .collect();
        Ok(Group {
            n,
            elems,
            index: new_index,
            table,
            inv,
            det: dets,
            refl,
            root_image,
            type_a: rs.is_type_a(),
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.elems.len() as u32).map(GroupElement)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        if a.is_identity() {
            return b;
        }
        if b.is_identity() {
            return a;
        }
        match &self.table {
            Some(t) => GroupElement(t[a.idx() * self.elems.len() + b.idx()]),
            None => {
                let m = compose(&self.elems[a.idx()].cols, &self.elems[b.idx()].cols);
                GroupElement(self.index[&flat_key(&m)])
            }
        }
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.inv[a.idx()])
    }

    pub fn det(&self, a: GroupElement) -> i8 {
        self.det[a.idx()]
    }

    /// The reflection in positive root `a`.
    pub fn reflection(&self, a: usize) -> GroupElement {
        GroupElement(self.refl[a])
    }

    /// Positive root index whose reflection is `w`, if `w` is a reflection.
    pub fn reflection_root(&self, w: GroupElement) -> Option<usize> {
        self.refl.iter().position(|&r| r == w.0)
    }

    /// `w alpha_a = sign * alpha_b`.
    pub fn root_image(&self, w: GroupElement, a: usize) -> (usize, i8) {
        let (b, s) = self.root_image[w.idx()][a];
        (b as usize, s)
    }

    /// Images of the standard basis: `columns(w)[i] = w e_i`.
    pub fn columns(&self, w: GroupElement) -> &[Vec<Rat>] {
        &self.elems[w.idx()].cols
    }

    pub fn signed_perm(&self, w: GroupElement) -> Option<&SignedPerm> {
        self.elems[w.idx()].signed.as_ref()
    }

    pub fn apply(&self, w: GroupElement, v: &[Rat]) -> Vec<Rat> {
        apply_cols(&self.elems[w.idx()].cols, v)
    }

    pub fn find(&self, cols: &[Vec<Rat>]) -> Option<GroupElement> {
        self.index.get(&flat_key(cols)).map(|&i| GroupElement(i))
    }

    /// Looks up a signed permutation given as a 1-based image tuple such as `[2, -1, 3]`.
    pub fn find_signed(&self, tuple: &[i64]) -> Option<GroupElement> {
        if tuple.len() != self.n {
            return None;
        }
        let mut cols = vec![vec![Rat::ZERO; self.n]; self.n];
        for (i, &t) in tuple.iter().enumerate() {
            let j = t.unsigned_abs() as usize;
            if j == 0 || j > self.n {
                return None;
            }
            cols[i][j - 1] = Rat::int(t.signum());
        }
        self.find(&cols)
    }

    /// Text rendering: `s(12)` for type-A transpositions, otherwise the image
    /// tuple `w"2,-1,3"`; general matrices list columns separated by `;`.
    pub fn render(&self, w: GroupElement) -> String {
        if w.is_identity() {
            return "1".into();
        }
        let e = &self.elems[w.idx()];
        if let Some(sp) = &e.signed {
            if self.type_a {
                let moved: Vec<usize> = sp.iter().enumerate().filter(|(i, p)| p.0 as usize != *i).map(|(i, _)| i).collect();
                if moved.len() == 2 {
                    return format!("s({}{})", moved[0] + 1, moved[1] + 1);
                }
            }
            let parts: Vec<String> = sp.iter().map(|&(p, s)| format!("{}", (p as i64 + 1) * s as i64)).collect();
            return format!("w\"{}\"", parts.join(","));
        }
        let mut out = String::from("w\"");
        for (i, c) in e.cols.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "{}", parts.join(","));
        }
        out.push('"');
        out
    }

    /// Canonical comparison key: the element index.
    pub fn cmp(&self, a: GroupElement, b: GroupElement) -> Ordering {
        a.cmp(&b)
    }

    pub fn is_type_a(&self) -> bool {
        self.type_a
    }
}
