//! State-space geometry of finite-level quantum systems: observables and
//! their two products, dual coordinates, the rank stratification, tangent
//! fields built from the antisymmetric and symmetric tensors, and
//! dissipative dynamics that can move states between strata.

mod dual;
mod dynamics;
mod fields;
mod operators;
mod strata;

pub use dual::{
    expectation, lambda_d_tensor, lambda_tensor, linear_function, r_d_tensor, r_tensor,
    DensityState, DualElement, EPS_RANK, STATE_TOL,
};
pub use dynamics::{flow_unchecked, integrate, TrajectorySample};
pub use fields::{
    gradient_field, gradient_field_at, hamiltonian_field, hamiltonian_field_at, kl_vector_field,
    kl_vector_field_at, kraus_field, kraus_field_at, lindblad_generator, AlgebraConfig,
    LindbladSpec,
};
pub use operators::{jordan_product, lie_product, HermitianOperator, ObservableBasis};
pub use strata::{
    born_probabilities, polar_state, rank_and_stratum, tangency_check, tangent_space_dimension,
    StratumInfo,
};
