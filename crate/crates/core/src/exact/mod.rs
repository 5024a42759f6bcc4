//! Exact maximization by exhaustive enumeration and by depth-first
//! branch-and-bound over the edge variables.

mod bnb;
mod brute;
mod construction;
mod two_stage;

pub use bnb::{branch_and_bound, optimistic_bound, BnbConfig};
pub use brute::{brute_force, BruteForce, BRUTE_FORCE_MAX_N};
pub use construction::{
    chord_slots, construction_floor, star_plus_chords, triangle_bound, warm_start, TriangleBound,
};
pub use two_stage::{solve_two_stage, Method, StageOne, TwoStage};
