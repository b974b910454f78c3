//! Distances induced by amplitudes, plus classical diagram distances.

mod assignment;
mod basic;
mod path;
mod plan;
mod wasserstein;

pub use assignment::{bottleneck_assignment, hopcroft_karp, hungarian};
pub use basic::{
    abs_distance, abs_distance_grid, lp_hilbert_distance, lp_hilbert_distance_barcodes, noise_membership,
    noise_membership_grid, DistanceReport,
};
pub use path::{is_exact, path_metric_1param, path_metric_exhaustive, Exactness, PathMetric, EXHAUSTIVE_LIMIT};
pub use plan::{
    cospan_costs, cost_of_cospan, matching_cospan, overlaps, CospanFragments, CostFunction, MatchingPlan,
};
pub use wasserstein::{
    augmented_costs, bottleneck, interleaving_1param, plan_from_assignment, wasserstein, Ground,
};
