//! Clifford algebra `Cl(n+1)`, Ahlfors matrices and multidimensional
//! continued fractions built from `x ↦ (x + b)⁻¹`.

mod cycle_nd;
mod multivector;
mod nd_chain;
mod versor;

pub use multivector::{Multivector, MAX_DIM};
pub use versor::{
    ahlfors_validate, b_vectors_to_multivectors, image_of_infinity, md_cf_matrix, mobius_apply_vector,
    parse_b_vectors, partial_quotient_nd, ValidationReport, VersorMatrix,
};
pub use cycle_nd::{
    adapted_generator, cycle_image_nd, inner_product_nd, lemma4_horocycle, lemma5_horocycle, lemma6_center,
    lemma6_connecting, CycleND, SphereShape,
};
pub use nd_chain::{build_nd_chain, convergence_check, ConnectingGenerator, ConvergenceMode, ConvergenceReport, NdLink};
