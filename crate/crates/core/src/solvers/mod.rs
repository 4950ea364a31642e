//! Baseline solvers for every problem in the web. They double as ground truth
//! for the reduction tests.

mod c3xor;
mod clique;
mod six_sum;
mod three_sum;
mod three_xor;
mod triangles;

pub use c3xor::solve_c3xor_bruteforce;
pub use clique::{detect_4clique_bruteforce, is_4clique};
pub use six_sum::{solve_6sum_z3, verify_6sum};
pub use three_sum::{repeated_value_3sum, solve_3sum_quadratic, three_sum_indexed, SumValue};
pub use three_xor::{
    repeated_value_3xor, solve_3xor_quadratic, solve_3xor_wht, three_xor_indexed, WhtOutcome, DEFAULT_WHT_WIDTH_CAP,
};
pub use triangles::{detect_triangle, list_all_triangles};

/// Three pairwise distinct indices, stored in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness3([usize; 3]);

impl Witness3 {
    pub fn new(i: usize, j: usize, k: usize) -> Option<Witness3> {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        (idx[0] != idx[1] && idx[1] != idx[2]).then_some(Witness3(idx))
    }

    pub fn indices(&self) -> [usize; 3] {
        self.0
    }
}

/// A convolution-3XOR solution `(i, j)` with `A[i] ⊕ A[j] = A[i ⊕ j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WitnessC3xor {
    pub i: usize,
    pub j: usize,
}
