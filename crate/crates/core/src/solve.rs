//! Ground-truth and heuristic QUBO solvers.
//!
//! `solve_exact` walks all `2^n` assignments in Gray-code order, flipping
//! one bit per step and updating the objective in `O(n)`, which keeps the
//! oracle usable up to the default limit of `n = 22`. `solve_heuristic`
//! is restarted simulated annealing with a greedy single-flip descent at
//! the end of each restart; it stands in for an annealing device when the
//! instance is too large to enumerate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{random_bits, QuboMatrix};
use crate::rng::{rng_from_seed, Rng};
use rand::Rng as _;

/// Largest order `solve_exact` accepts unless overridden.
pub const DEFAULT_EXACT_LIMIT: usize = 22;

/// Sweeps (of `n` proposals each) per annealing restart.
const SWEEPS_PER_RESTART: usize = 64;

/// A binary assignment together with its objective value.
///
/// `value` always equals `objective(q, bits)` for the matrix the vector
/// answers; solvers recompute it from scratch before returning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionVector {
    pub bits: Vec<u8>,
    pub value: f64,
}

impl SolutionVector {
    pub fn evaluated(q: &QuboMatrix, bits: Vec<u8>) -> Result<Self> {
        let value = q.objective(&bits)?;
        Ok(Self { bits, value })
    }
}

/// Incremental single-flip state: `field[i]` holds
/// `Σ_{j≠i, x_j=1} (Q[i][j] + Q[j][i])`, so the objective delta for
/// flipping bit `i` is `±(Q[i][i] + field[i])`.
struct FlipState<'a> {
    q: &'a QuboMatrix,
    bits: Vec<u8>,
    field: Vec<f64>,
    value: f64,
}

impl<'a> FlipState<'a> {
    fn new(q: &'a QuboMatrix, bits: Vec<u8>) -> Self {
        let n = q.n();
        let mut field = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                if j != i && bits[j] == 1 {
                    field[i] += q.get(i, j) + q.get(j, i);
                }
            }
        }
        let value = q.objective(&bits).expect("bits match matrix order");
        Self { q, bits, field, value }
    }

    fn delta(&self, i: usize) -> f64 {
        let gain = self.q.get(i, i) + self.field[i];
        if self.bits[i] == 0 {
            gain
        } else {
            -gain
        }
    }

    fn flip(&mut self, i: usize) {
        let sign = if self.bits[i] == 0 { 1.0 } else { -1.0 };
        self.value += self.delta(i);
        self.bits[i] ^= 1;
        for j in 0..self.q.n() {
            if j != i {
                self.field[j] += sign * (self.q.get(j, i) + self.q.get(i, j));
            }
        }
    }
}

/// Exhaustive minimization over all `2^n` assignments.
///
/// Ties are broken toward the smallest integer encoding of the bits
/// (bit 0 least significant), so the result is unique and deterministic.
pub fn solve_exact(q: &QuboMatrix) -> Result<SolutionVector> {
    solve_exact_with_limit(q, DEFAULT_EXACT_LIMIT)
}

pub fn solve_exact_with_limit(q: &QuboMatrix, limit: usize) -> Result<SolutionVector> {
    let n = q.n();
    if n > limit || n >= usize::BITS as usize - 1 {
        return Err(Error::ExhaustiveLimit { n, limit });
    }
    let mut state = FlipState::new(q, vec![0u8; n]);
    // Gray code: after step t the assignment is gray(t) = t ^ (t >> 1).
    let mut best_value = state.value;
    let mut best_code: usize = 0;
    for step in 1usize..(1usize << n) {
        let bit = step.trailing_zeros() as usize;
        state.flip(bit);
        let code = step ^ (step >> 1);
        if state.value < best_value || (state.value == best_value && code < best_code) {
            best_value = state.value;
            best_code = code;
        }
    }
    let bits: Vec<u8> = (0..n).map(|i| ((best_code >> i) & 1) as u8).collect();
    SolutionVector::evaluated(q, bits)
}

/// Restarted simulated annealing with geometric cooling and a final
/// greedy descent per restart.
///
/// `budget` counts single-flip proposals across the whole run; each
/// restart spends `SWEEPS_PER_RESTART * n` of them. Deterministic for a
/// fixed `(q, budget, seed)`.
pub fn solve_heuristic(q: &QuboMatrix, budget: u64, seed: u64) -> Result<SolutionVector> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be >= 1".into()));
    }
    let n = q.n();
    let max_abs = q.max_abs();
    if max_abs == 0.0 {
        // Constant-zero objective; nothing to search.
        return SolutionVector::evaluated(q, vec![0u8; n]);
    }
    let mut rng = rng_from_seed(seed);
    let inner = (SWEEPS_PER_RESTART * n) as u64;
    let restarts = (budget / inner).max(1);

    // Hottest useful temperature: the largest possible single-flip move.
    let t_hi = (0..n)
        .map(|i| (0..n).map(|j| q.get(i, j).abs() + q.get(j, i).abs()).sum::<f64>())
        .fold(max_abs, f64::max);
    let t_lo = 1e-3 * max_abs;
    let cool = (t_lo / t_hi).powf(1.0 / inner as f64);

    let mut best: Option<SolutionVector> = None;
    for _ in 0..restarts {
        let mut state = FlipState::new(q, random_bits(n, &mut rng));
        let mut temp = t_hi;
        for _ in 0..inner {
            let i = rng.random_range(0..n);
            let delta = state.delta(i);
            if delta <= 0.0 || rng.random::<f64>() < (-delta / temp).exp() {
                state.flip(i);
            }
            temp *= cool;
        }
        greedy_descent(&mut state);
        if best.as_ref().is_none_or(|b| state.value < b.value) {
            best = Some(SolutionVector::evaluated(q, state.bits.clone())?);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Flip the best improving bit until no single flip helps.
fn greedy_descent(state: &mut FlipState) {
    let n = state.q.n();
    loop {
        let mut best_i = None;
        let mut best_delta = 0.0;
        for i in 0..n {
            let d = state.delta(i);
            if d < best_delta {
                best_delta = d;
                best_i = Some(i);
            }
        }
        match best_i {
            Some(i) => state.flip(i),
            None => return,
        }
    }
}

/// Solver selection for the server and the in-process harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SolverBackend {
    /// Exact when the order fits under `exact_cap`, annealing otherwise.
    Auto { exact_cap: usize, budget: u64 },
    /// Exact only; refuses matrices above the cap.
    Exact { exact_cap: usize },
    /// Annealing only.
    Heuristic { budget: u64 },
}

impl Default for SolverBackend {
    fn default() -> Self {
        SolverBackend::Auto { exact_cap: DEFAULT_EXACT_LIMIT, budget: 200_000 }
    }
}

impl SolverBackend {
    pub fn solve(&self, q: &QuboMatrix, seed: u64) -> Result<SolutionVector> {
        match *self {
            SolverBackend::Auto { exact_cap, budget } => {
                if q.n() <= exact_cap {
                    solve_exact_with_limit(q, exact_cap)
                } else {
                    solve_heuristic(q, budget, seed)
                }
            }
            SolverBackend::Exact { exact_cap } => solve_exact_with_limit(q, exact_cap),
            SolverBackend::Heuristic { budget } => solve_heuristic(q, budget, seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{example_matrix, generate_matrix, MatrixGenSpec};

    /// Independent oracle: evaluate `objective` from scratch at every
    /// assignment, no incremental updates.
    fn brute_force(q: &QuboMatrix) -> (Vec<u8>, f64) {
        let n = q.n();
        let mut best_bits = vec![0u8; n];
        let mut best = q.objective(&best_bits).unwrap();
        for code in 1usize..(1 << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((code >> i) & 1) as u8).collect();
            let v = q.objective(&bits).unwrap();
            if v < best {
                best = v;
                best_bits = bits;
            }
        }
        (best_bits, best)
    }

    #[test]
    fn exact_finds_worked_example_optimum() {
        let sol = solve_exact(&example_matrix()).unwrap();
        assert_eq!(sol.bits, vec![0, 1, 1, 0]);
        assert_eq!(sol.value, -24.0);
    }

    #[test]
    fn exact_all_positive_prefers_empty_support() {
        let q = QuboMatrix::from_rows(vec![vec![2.0, 1.0], vec![3.0, 4.0]]).unwrap();
        let sol = solve_exact(&q).unwrap();
        assert_eq!(sol.bits, vec![0, 0]);
        assert_eq!(sol.value, 0.0);
    }

    #[test]
    fn exact_diagonal_case() {
        // diag(-1, 3): candidates 00->0, 10->-1, 01->3, 11->2.
        let q = QuboMatrix::from_rows(vec![vec![-1.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let sol = solve_exact(&q).unwrap();
        assert_eq!(sol.bits, vec![1, 0]);
        assert_eq!(sol.value, -1.0);
    }

    #[test]
    fn exact_agrees_with_brute_force() {
        for seed in 0..20 {
            let n = 2 + (seed as usize % 7);
            let q = generate_matrix(&MatrixGenSpec::new(n, 0.0, 4.0, 1000 + seed).unwrap())
                .unwrap();
            let sol = solve_exact(&q).unwrap();
            let (bits, value) = brute_force(&q);
            assert_eq!(sol.value, value, "seed {seed}");
            assert_eq!(sol.bits, bits, "seed {seed}");
        }
    }

    #[test]
    fn exact_tie_break_is_smallest_encoding() {
        // Zero matrix: every assignment scores 0; encoding 0 must win.
        let q = QuboMatrix::new(3, vec![0.0; 9]).unwrap();
        let sol = solve_exact(&q).unwrap();
        assert_eq!(sol.bits, vec![0, 0, 0]);
    }

    #[test]
    fn exact_refuses_above_limit() {
        let q = QuboMatrix::new(5, vec![0.5; 25]).unwrap();
        assert!(matches!(
            solve_exact_with_limit(&q, 4),
            Err(Error::ExhaustiveLimit { n: 5, limit: 4 })
        ));
    }

    #[test]
    fn exact_is_a_lower_bound_on_random_assignments() {
        let q = generate_matrix(&MatrixGenSpec::new(10, 0.0, 4.0, 5).unwrap()).unwrap();
        let sol = solve_exact(&q).unwrap();
        let mut rng = rng_from_seed(17);
        for _ in 0..1000 {
            let x = random_bits(10, &mut rng);
            assert!(sol.value <= q.objective(&x).unwrap());
        }
    }

    #[test]
    fn heuristic_matches_exact_on_worked_example() {
        let q = example_matrix();
        let sol = solve_heuristic(&q, 50_000, 1).unwrap();
        assert_eq!(sol.value, -24.0);
    }

    #[test]
    fn heuristic_zero_matrix() {
        let q = QuboMatrix::new(3, vec![0.0; 9]).unwrap();
        let sol = solve_heuristic(&q, 100, 9).unwrap();
        assert_eq!(sol.value, 0.0);
    }

    #[test]
    fn heuristic_is_deterministic() {
        let q = generate_matrix(&MatrixGenSpec::new(12, 0.0, 4.0, 2).unwrap()).unwrap();
        let a = solve_heuristic(&q, 30_000, 5).unwrap();
        let b = solve_heuristic(&q, 30_000, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn heuristic_never_beats_exact_and_usually_matches() {
        let mut hits = 0;
        let trials = 40;
        for seed in 0..trials {
            let q = generate_matrix(&MatrixGenSpec::new(12, 0.0, 4.0, 300 + seed).unwrap())
                .unwrap();
            let exact = solve_exact(&q).unwrap();
            let heur = solve_heuristic(&q, 100_000, seed).unwrap();
            assert!(heur.value >= exact.value - 1e-9, "seed {seed}");
            if heur.value == exact.value {
                hits += 1;
            }
        }
        assert!(
            hits * 100 >= trials * 95,
            "heuristic matched exact on {hits}/{trials} instances"
        );
    }

    #[test]
    fn same_permutation_preserves_objective_multiset() {
        use crate::perm::Permutation;
        let mut rng = rng_from_seed(23);
        for n in 2..=4usize {
            let q = generate_matrix(&MatrixGenSpec::new(n, 0.0, 4.0, 40 + n as u64).unwrap())
                .unwrap();
            let sigma = Permutation::random(n, &mut rng);
            let qp = q.permuted(&sigma).unwrap();
            let values = |m: &QuboMatrix| -> Vec<i64> {
                let mut v: Vec<i64> = (0..1u32 << n)
                    .map(|code| {
                        let bits: Vec<u8> = (0..n).map(|i| ((code >> i) & 1) as u8).collect();
                        (m.objective(&bits).unwrap() * 1e9).round() as i64
                    })
                    .collect();
                v.sort_unstable();
                v
            };
            assert_eq!(values(&q), values(&qp));
        }
    }

    #[test]
    fn backend_auto_switches_on_cap() {
        let q = generate_matrix(&MatrixGenSpec::new(6, 0.0, 4.0, 8).unwrap()).unwrap();
        let auto = SolverBackend::Auto { exact_cap: 6, budget: 10_000 };
        let exact = solve_exact(&q).unwrap();
        assert_eq!(auto.solve(&q, 0).unwrap(), exact);
        let strict = SolverBackend::Exact { exact_cap: 4 };
        assert!(strict.solve(&q, 0).is_err());
    }
}
