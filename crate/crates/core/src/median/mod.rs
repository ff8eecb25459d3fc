//! Exact centres of cube-free median graphs: a median of the current convex
//! region is compared with its star, and the region is cut down to the
//! halfspace that holds the centre.

mod reduce;
mod star;
mod theta;

pub use reduce::{
    cut_on_best_neighbor, cut_on_best_neighbor_traced, fiber_boundary, improving_neighbor_analysis,
    local_min_on_boundary_tree, reduce_convex_region, FiberBoundary, MedianRun, NeighborClass, ReduceCase,
    ReduceRound, Reduction,
};
pub use star::{star_and_eccentricities, StarRecord};
pub use theta::{median_vertex, theta_classes, ThetaClass, ThetaDecomposition};
