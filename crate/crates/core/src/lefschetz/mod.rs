//! Holomorphic Lefschetz bookkeeping for symplectic involutions of fourfolds
//! with `b_2 = 23`, and the resulting integer classification.

mod classify;
mod graded;
mod hodge;
mod local_terms;

pub use classify::{
    corollary_check, solve_classification, system_rows, Classification, ClassificationSolution, CorollaryReport,
    ReducedSystem, Rejection, SystemRow, ABELIAN_EULER, K3_EULER,
};
pub use graded::{ch_rank2_c1zero, ch_trivial_determinant, todd_surface, GradedClass};
pub use hodge::{lefschetz_numbers, trace_s2, HodgeData};
pub use local_terms::{point_local_term, point_term_with, surface_local_term, Sheaf};
