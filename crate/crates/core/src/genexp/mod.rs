//! Finite-group experiments: exact closure in tiny `SL_n(q)`, Monte Carlo
//! generation estimates, prime-order class shapes and the common-eigenspace
//! count.

mod closure;
mod intersection;
mod montecarlo;
mod shapes;

pub use closure::{
    bfs_group_closure, class_orbit, closure_with_stop, elements_of_order, exact_generation_probability,
    exact_generation_probability_sets, generates_special_linear, group_elements, special_linear_generators,
    special_linear_order, special_linear_order_u64, ClosureOutcome, DEFAULT_CLOSURE_CAP,
};
pub use intersection::{verify_intersection_formula, IntersectionReport};
pub use montecarlo::{
    best_good_pair, classify_pair, estimate_for_orders, estimate_for_tuple, estimate_generation_probability,
    irreducible_regular_element, sample_rng, wilson_interval, ExperimentConfig, GenerationReport,
    SampleClass, SampleCounts, WILSON_Z,
};
pub use shapes::{
    classify_good_bad, enumerate_prime_order_shapes, max_dimensional_shapes, multiplicative_order,
    realize_shape, root_of_unity_orbits, shape_of_element, ClassShape, GoodBadReport, PairRecord,
    PairStatus,
};
