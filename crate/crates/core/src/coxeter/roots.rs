//! Root systems: the standard A/B/D realizations and user-supplied rational ones.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Rat, MAX_SYMBOLS, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::Custom => "custom",
        })
    }
}

/// A set of positive roots in `Q^N` together with the orbit labelling that
/// determines the coupling symbols.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    /// `n` as passed to [`build_root_system`]; equals `rank` for custom systems.
    n: usize,
    rank: usize,
    roots: Vec<Vec<Rat>>,
    norms: Vec<Rat>,
    orbit_of: Vec<usize>,
    symbols: Vec<String>,
    lookup: FxHashMap<Vec<Rat>, (usize, i8)>,
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `s_alpha v = v - 2 (alpha, v) / (alpha, alpha) alpha`.
pub fn reflect(alpha: &[Rat], norm: &Rat, v: &[Rat]) -> Vec<Rat> {
    let c = &(&dot(alpha, v) * &Rat::int(2)) / norm;
    v.iter().zip(alpha).map(|(x, a)| x - &(&c * a)).collect()
}

fn unit(n: usize, i: usize, s: i64) -> Vec<Rat> {
    let mut v = vec![Rat::ZERO; n];
    v[i] = Rat::int(s);
    v
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The standard realization: `A` with `n` coordinates (the symmetric group
/// `S_n`), `B(n)` and `D(n)` in `Q^n`.
pub fn build_root_system(family: Family, n: usize) -> Result<RootSystem> {
    let bad = || Error::UnsupportedRank { family: family.to_string(), rank: n };
    let min = match family {
        Family::A | Family::B => 1,
        Family::D => 2,
        Family::Custom => return Err(bad()),
    };
    if n < min || n > MAX_VARS {
        return Err(bad());
    }
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.push(add(&unit(n, i, 1), &unit(n, j, -1)));
            if family != Family::A {
                roots.push(add(&unit(n, i, 1), &unit(n, j, 1)));
            }
        }
    }
    if family == Family::B {
        for i in 0..n {
            roots.push(unit(n, i, 1));
        }
    }
    let mut rs = RootSystem::assemble(family, n, n, roots, None, None)?;
    if family == Family::A {
        rs.symbols = vec!["g".into()];
    }
    Ok(rs)
}

/// On-disk description of a root system.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemConfig {
    pub rank: usize,
    pub roots: Vec<Vec<Rat>>,
    #[serde(default)]
    pub orbits: Option<Vec<usize>>,
    #[serde(default)]
    pub symbols: Option<Vec<String>>,
}

/// Validates a user-supplied system. Orbit labels are 1-based; when omitted
/// they are computed by closure.
pub fn load_root_system(config: &RootSystemConfig) -> Result<RootSystem> {
    RootSystem::assemble(
        Family::Custom,
        config.rank,
        config.rank,
        config.roots.clone(),
        config.orbits.clone(),
        config.symbols.clone(),
    )
}

pub fn load_root_system_json(text: &str) -> Result<RootSystem> {
    let cfg: RootSystemConfig =
        serde_json::from_str(text).map_err(|e| Error::InvalidRootSystem(format!("malformed config: {e}")))?;
    load_root_system(&cfg)
}

impl RootSystem {
    fn assemble(
        family: Family,
        n: usize,
        rank: usize,
        roots: Vec<Vec<Rat>>,
        orbits: Option<Vec<usize>>,
        symbols: Option<Vec<String>>,
    ) -> Result<RootSystem> {
        let invalid = |m: String| Error::InvalidRootSystem(m);
        if rank == 0 || rank > MAX_VARS {
            return Err(invalid(format!("rank must be between 1 and {MAX_VARS}, got {rank}")));
        }
        let mut lookup = FxHashMap::default();
        let mut norms = Vec::with_capacity(roots.len());
        for (k, r) in roots.iter().enumerate() {
            if r.len() != rank {
                return Err(invalid(format!("root {} has {} coordinates, expected {rank}", k + 1, r.len())));
            }
            let norm = dot(r, r);
            if norm.is_zero() {
                return Err(invalid(format!("root {} is zero", k + 1)));
            }
            norms.push(norm);
            let neg: Vec<Rat> = r.iter().map(|x| -x).collect();
            if lookup.contains_key(r) || lookup.contains_key(&neg) {
                return Err(invalid(format!("positive roots: root {} repeats a root up to sign", k + 1)));
            }
            lookup.insert(r.clone(), (k, 1));
            lookup.insert(neg, (k, -1));
        }
        // closure under reflections, recording the permutation of roots
        let mut images = vec![vec![0usize; roots.len()]; roots.len()];
        for (a, alpha) in roots.iter().enumerate() {
            for (b, beta) in roots.iter().enumerate() {
                let img = reflect(alpha, &norms[a], beta);
                match lookup.get(&img) {
                    Some(&(c, _)) => images[a][b] = c,
                    None => {
                        return Err(invalid(format!(
                            "closure under reflections: s of root {} maps root {} outside the root set",
                            a + 1,
                            b + 1
                        )))
                    }
                }
            }
        }
        // orbits under the reflections
        let mut computed = vec![usize::MAX; roots.len()];
        let mut count = 0;
        for start in 0..roots.len() {
            if computed[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            computed[start] = count;
            while let Some(b) = stack.pop() {
                for img in images.iter().map(|row| row[b]) {
                    if computed[img] == usize::MAX {
                        computed[img] = count;
                        stack.push(img);
                    }
                }
            }
            count += 1;
        }
        let orbit_of = match orbits {
            None => computed,
            Some(given) => {
                if given.len() != roots.len() {
                    return Err(invalid(format!("{} orbit labels for {} roots", given.len(), roots.len())));
                }
                if given.iter().any(|&o| o == 0) {
                    return Err(invalid("orbit labels are 1-based".into()));
                }
                let given: Vec<usize> = given.iter().map(|o| o - 1).collect();
                for a in 0..roots.len() {
                    for b in 0..roots.len() {
                        if given[images[a][b]] != given[b] {
                            return Err(invalid(format!(
                                "orbit invariance: s of root {} maps root {} into a different orbit",
                                a + 1,
                                b + 1
                            )));
                        }
                    }
                }
                let k = given.iter().max().map_or(0, |m| m + 1);
                for o in 0..k {
                    if !given.contains(&o) {
                        return Err(invalid(format!("orbit label {} is unused", o + 1)));
                    }
                }
                given
            }
        };
        let k = orbit_of.iter().max().map_or(0, |m| m + 1);
        if k > MAX_SYMBOLS {
            return Err(invalid(format!("at most {MAX_SYMBOLS} orbits are supported, got {k}")));
        }
        let symbols = match symbols {
            Some(s) => {
                if s.len() != k.max(1) {
                    return Err(invalid(format!("{} symbols for {} orbits", s.len(), k)));
                }
                s
            }
            None if k <= 1 => vec!["g".into()],
            None => (1..=k).map(|i| format!("g{i}")).collect(),
        };
        Ok(RootSystem { family, n, rank, roots, norms, orbit_of, symbols, lookup })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The `n` of the family label (`A(n)` has `n` coordinates).
    pub fn family_rank(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Custom => format!("custom({})", self.rank),
            f => format!("{f}({})", self.n),
        }
    }

    /// Number of coordinates `N`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Vec<Rat>] {
        &self.roots
    }

    pub fn root(&self, a: usize) -> &[Rat] {
        &self.roots[a]
    }

    /// `(alpha, alpha)`.
    pub fn norm(&self, a: usize) -> &Rat {
        &self.norms[a]
    }

    pub fn orbit_of(&self, a: usize) -> usize {
        self.orbit_of[a]
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Names of the coupling symbols, one per orbit (at least one).
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Index and sign with `v = sign * root`, if `v` is a root.
    pub fn find_root(&self, v: &[Rat]) -> Option<(usize, i8)> {
        self.lookup.get(v).copied()
    }

    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }

    /// Same roots up to sign and order, with the same orbit partition.
    pub fn equivalent(&self, other: &RootSystem) -> bool {
        if self.rank != other.rank || self.roots.len() != other.roots.len() {
            return false;
        }
        let mut map = FxHashMap::default();
        for (a, r) in self.roots.iter().enumerate() {
            let Some((b, _)) = other.find_root(r) else { return false };
            match map.insert(self.orbit_of[a], other.orbit_of[b]) {
                Some(prev) if prev != other.orbit_of[b] => return false,
                _ => {}
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts() {
        let a3 = build_root_system(Family::A, 3).unwrap();
        assert_eq!((a3.positive_roots().len(), a3.num_orbits()), (3, 1));
        let b2 = build_root_system(Family::B, 2).unwrap();
        assert_eq!((b2.positive_roots().len(), b2.num_orbits()), (4, 2));
        assert_eq!(b2.symbols(), &["g1".to_string(), "g2".to_string()]);
        let d4 = build_root_system(Family::D, 4).unwrap();
        assert_eq!((d4.positive_roots().len(), d4.num_orbits()), (12, 1));
        assert!(build_root_system(Family::D, 1).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn manual_a2_matches_builder() {
        let text = r#"{"rank": 3, "roots": [["1","-1","0"],["0","1","-1"],["1","0","-1"]], "orbits": [1,1,1], "symbols": ["g"]}"#;
        let rs = load_root_system_json(text).unwrap();
        assert!(rs.equivalent(&build_root_system(Family::A, 3).unwrap()));
    }

    #[test]
    fn rejects_missing_closure() {
        let text = r#"{"rank": 2, "roots": [["1","-1"],["1","0"]], "orbits": [1,2], "symbols": ["a","b"]}"#;
        match load_root_system_json(text) {
            Err(Error::InvalidRootSystem(m)) => assert!(m.contains("closure")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_invariant_orbits() {
        let text = r#"{"rank": 3, "roots": [["1","-1","0"],["0","1","-1"],["1","0","-1"]], "orbits": [1,2,1], "symbols": ["a","b"]}"#;
        match load_root_system_json(text) {
            Err(Error::InvalidRootSystem(m)) => assert!(m.contains("orbit invariance")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
