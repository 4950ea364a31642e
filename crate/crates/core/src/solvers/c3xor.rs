use super::WitnessC3xor;
use crate::instance::C3xorArray;

/// First ordered pair `(i, j)`, including `i = j` and index 0, with all three
/// cells present and `A[i] ⊕ A[j] = A[i ⊕ j]`. Index arithmetic is xor.
pub fn solve_c3xor_bruteforce(a: &C3xorArray) -> Option<WitnessC3xor> {
    let n = a.len();
    for i in (0..n).filter(|&i| a.get(i).is_some()) {
        for j in 0..n {
            if a.is_solution(i, j) {
                return Some(WitnessC3xor { i, j });
            }
        }
    }
    None
}
