//! Root systems, reflection groups and group-algebra arithmetic.

pub mod algebra;
pub mod group;
pub mod roots;

pub use algebra::{ga_multiply, invariant_sum_s, s_pair, GroupAlgebraElement, MultiplicityMap};
pub use group::{Group, GroupElement, SignedPerm, DEFAULT_GROUP_CAP};
pub use roots::{build_root_system, dot, load_root_system, load_root_system_json, Family, RootSystem, RootSystemConfig};

use crate::error::Result;
use crate::exactmath::{LocPoly, LocSpace, Rat};

/// Localized-polynomial space whose denominators are the positive roots of `rs`.
pub fn loc_space(rs: &RootSystem) -> LocSpace {
    LocSpace::new(rs.rank(), rs.positive_roots())
}

/// `(w f)(x) = f(w^{-1} x)`.
pub fn locpoly_apply_reflection(space: &LocSpace, group: &Group, f: &LocPoly, w: GroupElement) -> Result<LocPoly> {
    let n = group.rank();
    let cols = group.columns(w);
    let matrix: Vec<Vec<Rat>> = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
    space.apply_orthogonal(f, &matrix)
}
