//! Ground truth for tests and benchmarks. Nothing in the bound formulas
//! calls into this module.

pub mod exact;
mod roots;

pub use exact::{char_poly_integer, charpoly_exact_check, integer_entries, MAX_EXACT_ORDER};
pub use roots::{
    find_roots, max_root_modulus, min_nonzero_root_modulus, RootSet, CLUSTER_TOLERANCE, DEFAULT_TOLERANCE,
    MAX_ITERATIONS,
};
