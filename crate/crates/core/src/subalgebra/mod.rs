//! The angular momenta subalgebras of the Cherednik algebra.

pub mod algebra;
pub mod checks;
pub mod relations;
pub mod word;

pub use algebra::{SubAlgebra, SubElement, DEFAULT_MAX_DEGREE, DEFAULT_REWRITE_CAP};
pub use checks::{
    angular_hamiltonian_element, centralizer, pbw_rank_check, random_element, random_point, rho_element, s_element,
    soundness_check, Centre,
};
pub use relations::{verify_relation_suite, Generators, Suite};
pub use word::{
    crossing_count, enumerate_basis, enumerate_basis_gl, enumerate_basis_so, ArcDiagram, Factor, Kind, Letter, SubWord,
};
