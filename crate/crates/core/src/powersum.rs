//! Constrained power-sum maximization on the zero-sum unit sphere.
//!
//! The feasible set is the intersection of the unit sphere with the
//! hyperplane of zero coordinate sum. Closed-form stationary points come
//! from two-level configurations (n1 coordinates at one value, n2 at
//! another); a seeded projected-gradient optimizer provides an independent
//! numeric route, and the threshold machinery decides for which (n, p) the
//! one-big-coordinate point wins outright.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Default restart count for the numeric optimizer.
pub const DEFAULT_RESTARTS: u32 = 32;

#[derive(Debug, Error, PartialEq)]
pub enum PowerSumError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("signed exponent must be at least 3, got {0}")]
    SignedExponentTooSmall(u32),
    #[error("absolute-mode exponent must exceed 2, got {0}")]
    AbsoluteExponentOutOfRange(f64),
    #[error(
        "no restart reached gradient-projection residual {tolerance:.3e}; best residual {best_residual:.3e}"
    )]
    NoConvergence { best_residual: f64, tolerance: f64 },
}

/// Which power of the coordinates is summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PowerMode {
    /// Sum of x_i^p for integer p; sign matters for odd p.
    Signed { p: u32 },
    /// Sum of |x_i|^p for real p; the true L^p norm, exploratory only.
    Absolute { p: f64 },
}

/// Maximize the p-th power sum over the zero-sum unit sphere in R^n.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PowerSumProblem {
    pub n: usize,
    #[serde(flatten)]
    pub mode: PowerMode,
}

impl PowerSumProblem {
    pub fn signed(n: usize, p: u32) -> Result<Self, PowerSumError> {
        if n < 2 {
            return Err(PowerSumError::DimensionTooSmall(n));
        }
        if p < 3 {
            return Err(PowerSumError::SignedExponentTooSmall(p));
        }
        Ok(PowerSumProblem {
            n,
            mode: PowerMode::Signed { p },
        })
    }

    pub fn absolute(n: usize, p: f64) -> Result<Self, PowerSumError> {
        if n < 2 {
            return Err(PowerSumError::DimensionTooSmall(n));
        }
        // NaN fails the finiteness test, so both arms are total.
        if !p.is_finite() || p <= 2.0 {
            return Err(PowerSumError::AbsoluteExponentOutOfRange(p));
        }
        Ok(PowerSumProblem {
            n,
            mode: PowerMode::Absolute { p },
        })
    }

    pub fn exponent(&self) -> f64 {
        match self.mode {
            PowerMode::Signed { p } => p as f64,
            PowerMode::Absolute { p } => p,
        }
    }

    /// The summand s(x): x^p or |x|^p.
    fn value(&self, x: f64) -> f64 {
        match self.mode {
            PowerMode::Signed { p } => x.powi(p as i32),
            PowerMode::Absolute { p } => x.abs().powf(p),
        }
    }

    /// The dual power phi(x) with s'(x) = p phi(x): x^{p-1} or
    /// |x|^{p-1} sgn(x). Stationarity reads phi(x_i) = lambda1 + lambda2 x_i.
    fn phi(&self, x: f64) -> f64 {
        match self.mode {
            PowerMode::Signed { p } => x.powi(p as i32 - 1),
            PowerMode::Absolute { p } => {
                if x == 0.0 {
                    0.0
                } else {
                    x.abs().powf(p - 1.0) * x.signum()
                }
            }
        }
    }

    fn objective(&self, xs: &[f64]) -> f64 {
        xs.iter().map(|&x| self.value(x)).sum()
    }
}

/// A stationary point of the constrained problem with its multipliers.
///
/// For two-level constructions the fields are exact by formula. For numeric
/// points n1/alpha1 (n2/alpha2) are the count and mean of the positive
/// (nonpositive) coordinates, which coincide with the level values whenever
/// the point genuinely has two levels.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalSolution {
    /// Coordinates in descending order.
    pub point: Vec<f64>,
    pub n1: usize,
    pub n2: usize,
    pub alpha1: f64,
    pub alpha2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub objective: f64,
}

impl ExtremalSolution {
    /// Residual of the stationarity system phi(x_i) = lambda1 + lambda2 x_i,
    /// maximal over coordinates.
    pub fn stationarity_residual(&self, problem: &PowerSumProblem) -> f64 {
        self.point
            .iter()
            .map(|&x| (problem.phi(x) - self.lambda1 - self.lambda2 * x).abs())
            .fold(0.0, f64::max)
    }
}

/// The stationary point with n1 coordinates at sqrt(n2/(n1 n)) and n2 at
/// -sqrt(n1/(n2 n)). Multipliers solve the two-equation linear system; the
/// objective is evaluated directly, and equals lambda2 at stationarity.
fn two_level(problem: &PowerSumProblem, n1: usize) -> ExtremalSolution {
    let n = problem.n;
    let n2 = n - n1;
    assert!(n1 >= 1 && n2 >= 1);
    let (n1f, n2f, nf) = (n1 as f64, n2 as f64, n as f64);
    let alpha1 = (n2f / (n1f * nf)).sqrt();
    let alpha2 = -(n1f / (n2f * nf)).sqrt();
    let (phi1, phi2) = (problem.phi(alpha1), problem.phi(alpha2));
    let lambda2 = (phi1 - phi2) / (alpha1 - alpha2);
    let lambda1 = phi1 - lambda2 * alpha1;
    let objective = n1f * problem.value(alpha1) + n2f * problem.value(alpha2);
    let mut point = vec![alpha1; n1];
    point.extend(std::iter::repeat_n(alpha2, n2));
    ExtremalSolution {
        point,
        n1,
        n2,
        alpha1,
        alpha2,
        lambda1,
        lambda2,
        objective,
    }
}

/// The closed-form maximizer: one large positive coordinate and n-1 equal
/// negative ones. For the signed problem its objective is the exact maximum
/// for every integer p >= 3.
pub fn extremal_point(n: usize, p: u32) -> ExtremalSolution {
    let problem = PowerSumProblem::signed(n, p).expect("preconditions: n >= 2, p >= 3");
    two_level(&problem, 1)
}

/// Every two-level stationary point of the given problem, sorted by
/// descending objective (ties by ascending n1).
pub fn two_level_candidates(problem: &PowerSumProblem) -> Vec<ExtremalSolution> {
    let mut out: Vec<ExtremalSolution> = (1..problem.n).map(|n1| two_level(problem, n1)).collect();
    out.sort_by(|a, b| {
        b.objective
            .total_cmp(&a.objective)
            .then(a.n1.cmp(&b.n1))
    });
    out
}

/// Two-level stationary points of the signed problem.
pub fn two_level_solutions(n: usize, p: u32) -> Vec<ExtremalSolution> {
    let problem = PowerSumProblem::signed(n, p).expect("preconditions: n >= 2, p >= 3");
    two_level_candidates(&problem)
}

/// Center to the zero-sum hyperplane and normalize to the sphere.
/// None when the centered vector is numerically zero.
fn retract(mut xs: Vec<f64>) -> Option<Vec<f64>> {
    let n = xs.len() as f64;
    let mean: f64 = xs.iter().sum::<f64>() / n;
    for x in &mut xs {
        *x -= mean;
    }
    let norm = xs.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return None;
    }
    for x in &mut xs {
        *x /= norm;
    }
    Some(xs)
}

/// Projection of the phi-gradient onto the tangent space {v : v.x = 0,
/// v.1 = 0}, and its norm. Zero norm means the stationarity system holds.
fn tangent_gradient(problem: &PowerSumProblem, xs: &[f64]) -> (Vec<f64>, f64) {
    let n = xs.len() as f64;
    let g: Vec<f64> = xs.iter().map(|&x| problem.phi(x)).collect();
    let gx: f64 = g.iter().zip(xs).map(|(a, b)| a * b).sum();
    let gmean: f64 = g.iter().sum::<f64>() / n;
    let t: Vec<f64> = g
        .iter()
        .zip(xs)
        .map(|(gi, xi)| gi - gx * xi - gmean)
        .collect();
    let norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    (t, norm)
}

/// One restart of the numeric optimizer.
#[derive(Debug, Clone, Serialize)]
pub struct RestartOutcome {
    pub restart: u32,
    pub objective: f64,
    pub residual: f64,
    pub iterations_used: u32,
    pub converged: bool,
}

/// Numeric result with per-restart diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub best: ExtremalSolution,
    pub restarts: Vec<RestartOutcome>,
}

struct AscentResult {
    point: Vec<f64>,
    objective: f64,
    residual: f64,
    iterations_used: u32,
}

/// Projected-gradient ascent with step halving from one random start.
fn ascend(problem: &PowerSumProblem, rng: &mut ChaCha8Rng, iterations: u32, tol: f64) -> AscentResult {
    let n = problem.n;
    let mut x = loop {
        let draw: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        if let Some(x0) = retract(draw) {
            break x0;
        }
    };
    let mut fx = problem.objective(&x);
    let mut step = 0.5;
    let mut iterations_used = iterations;
    for it in 0..iterations {
        let (t, res) = tangent_gradient(problem, &x);
        if res <= tol {
            iterations_used = it;
            break;
        }
        // backtracking line search with a mild sufficient-increase test
        let t_sq = res * res;
        let mut accepted = false;
        while step >= 1e-18 {
            let trial: Vec<f64> = x.iter().zip(&t).map(|(xi, ti)| xi + step * ti).collect();
            if let Some(y) = retract(trial) {
                let fy = problem.objective(&y);
                if fy >= fx + 1e-4 * step * t_sq {
                    x = y;
                    fx = fy;
                    accepted = true;
                    step = (step * 2.0).min(1.0);
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            // step underflow: no ascent direction makes progress
            iterations_used = it;
            break;
        }
    }
    let (_, residual) = tangent_gradient(problem, &x);
    AscentResult {
        point: x,
        objective: fx,
        residual,
        iterations_used,
    }
}

/// Builds an ExtremalSolution from a numeric point: coordinates sorted
/// descending, levels read off the sign partition, multipliers from the
/// exact identities lambda2 = phi.x and lambda1 = mean(phi).
fn solution_from_point(problem: &PowerSumProblem, mut point: Vec<f64>) -> ExtremalSolution {
    point.sort_by(|a, b| b.total_cmp(a));
    let n1 = point.iter().filter(|&&x| x > 0.0).count().max(1);
    let n2 = point.len() - n1;
    let alpha1 = point[..n1].iter().sum::<f64>() / n1 as f64;
    let alpha2 = if n2 > 0 {
        point[n1..].iter().sum::<f64>() / n2 as f64
    } else {
        0.0
    };
    let g: Vec<f64> = point.iter().map(|&x| problem.phi(x)).collect();
    let lambda2: f64 = g.iter().zip(&point).map(|(a, b)| a * b).sum();
    let lambda1: f64 = g.iter().sum::<f64>() / point.len() as f64;
    let objective = problem.objective(&point);
    ExtremalSolution {
        point,
        n1,
        n2,
        alpha1,
        alpha2,
        lambda1,
        lambda2,
        objective,
    }
}

/// True when (objective, point) of `a` beats `b`: larger objective first,
/// ties by lexicographically largest canonical point.
fn beats(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> bool {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            for (x, y) in a.1.iter().zip(&b.1) {
                match x.total_cmp(y) {
                    std::cmp::Ordering::Greater => return true,
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
            false
        }
    }
}

/// Projected-gradient ascent with the given restart count. Restarts run in
/// parallel; the merge is deterministic (best objective, ties broken by the
/// lexicographically largest canonical point).
pub fn numeric_maximize_detailed(
    problem: &PowerSumProblem,
    seed: u64,
    iterations: u32,
    restarts: u32,
    tol: f64,
) -> Result<NumericReport, PowerSumError> {
    assert!(tol > 0.0 && iterations > 0 && restarts > 0);
    let runs: Vec<AscentResult> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            ascend(problem, &mut rng, iterations, tol)
        })
        .collect();
    let outcomes: Vec<RestartOutcome> = runs
        .iter()
        .enumerate()
        .map(|(i, r)| RestartOutcome {
            restart: i as u32,
            objective: r.objective,
            residual: r.residual,
            iterations_used: r.iterations_used,
            converged: r.residual <= tol,
        })
        .collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for r in &runs {
        if r.residual > tol {
            continue;
        }
        let mut canonical = r.point.clone();
        canonical.sort_by(|a, b| b.total_cmp(a));
        let key = (r.objective, canonical);
        if best.as_ref().is_none_or(|b| beats(&key, b)) {
            best = Some(key);
        }
    }
    match best {
        Some((_, point)) => Ok(NumericReport {
            best: solution_from_point(problem, point),
            restarts: outcomes,
        }),
        None => {
            let best_residual = runs.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min);
            Err(PowerSumError::NoConvergence {
                best_residual,
                tolerance: tol,
            })
        }
    }
}

/// Best local maximum found by seeded projected-gradient ascent with the
/// default restart count. Constraints hold to machine accuracy and the
/// gradient-projection residual is at most tol.
pub fn numeric_maximize(
    problem: &PowerSumProblem,
    seed: u64,
    iterations: u32,
    tol: f64,
) -> Result<ExtremalSolution, PowerSumError> {
    numeric_maximize_detailed(problem, seed, iterations, DEFAULT_RESTARTS, tol).map(|r| r.best)
}

/// Threshold data for exponent p: the one-big-coordinate point maximizes
/// whenever 1 - 1/n >= g(p).
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRecord {
    pub p: f64,
    /// g(p) = 1/h(p), strictly decreasing, tends to 1/2.
    pub g_value: f64,
    /// h(p) = (1 + (p-1)^{-2/(p-2)})^{(p-2)/p}.
    pub h_value: f64,
    /// Minimal n with 1 - 1/n >= g(p).
    pub n_threshold: u64,
    /// Candidates n in [3, n_threshold) that need separate treatment.
    pub exceptional_n: Vec<u64>,
}

/// Evaluates the threshold function at p and scans for the minimal
/// dimension satisfying it. Requires p > 2; g(p) > 1/2 for all such p, so
/// the threshold is at least 3.
pub fn g_threshold(p: f64) -> ThresholdRecord {
    assert!(p > 2.0, "threshold function needs p > 2");
    let h_value = (1.0 + (p - 1.0).powf(-2.0 / (p - 2.0))).powf((p - 2.0) / p);
    let g_value = 1.0 / h_value;
    debug_assert!(g_value < 1.0 && g_value > 0.5);
    let mut n = 2u64;
    while 1.0 - 1.0 / (n as f64) < g_value {
        n += 1;
    }
    ThresholdRecord {
        p,
        g_value,
        h_value,
        n_threshold: n,
        exceptional_n: (3..n).collect(),
    }
}

/// All (n, p) pairs with even p <= p_max that fall below the threshold and
/// so are not settled by the general argument.
pub fn exceptional_set(p_max: u64) -> BTreeSet<(u64, u64)> {
    assert!(p_max >= 4 && p_max.is_multiple_of(2), "p_max must be even and at least 4");
    let mut out = BTreeSet::new();
    for p in (4..=p_max).step_by(2) {
        for n in g_threshold(p as f64).exceptional_n {
            out.insert((n, p));
        }
    }
    out
}

/// Three-value exclusion test for p = 4.
#[derive(Debug, Clone, Serialize)]
pub struct ThreeValueExclusion {
    pub n: u64,
    /// Largest alpha^2 a three-value stationary configuration allows.
    pub alpha_sq_upper: f64,
    /// Smallest alpha^2 a maximizer must have.
    pub alpha_sq_lower: f64,
    /// lower > upper: no three-value maximizer exists for this n.
    pub excluded: bool,
}

/// Contradiction test ruling out three-value maximizers for p = 4: the
/// largest coordinate squared is at most 1/2 at any three-value stationary
/// configuration, but a maximizer needs at least ((n-1)/n)^2.
pub fn p4_three_value_check(n: u64) -> ThreeValueExclusion {
    assert!(n >= 3);
    let alpha_sq_upper = 0.5;
    let ratio = (n - 1) as f64 / n as f64;
    let alpha_sq_lower = ratio * ratio;
    ThreeValueExclusion {
        n,
        alpha_sq_upper,
        alpha_sq_lower,
        excluded: alpha_sq_lower > alpha_sq_upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{power_sum_max_even, power_sum_max_odd};
    use crate::symfun::elementary_from_roots_f64;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn extremal_point_small_cases() {
        let s = extremal_point(3, 3);
        assert!(close(s.point[0], 0.816_496_580_927_726, 1e-15));
        assert!(close(s.point[1], -0.408_248_290_463_863, 1e-15));
        assert!(close(s.point[2], -0.408_248_290_463_863, 1e-15));
        assert!(close(s.objective, 0.408_248_290_463_863, 1e-15));
        let s = extremal_point(4, 3);
        assert!(close(s.objective, 0.5773502691896258, 1e-15));
        assert!(close(s.lambda2, 2.0 / 12f64.sqrt(), 1e-15));
        assert!(close(extremal_point(3, 4).objective, 0.5, 1e-15));
        assert!(close(extremal_point(4, 4).objective, 7.0 / 12.0, 1e-15));
        assert!(close(extremal_point(5, 4).objective, 0.65, 1e-15));
        assert!(close(extremal_point(20, 15).objective, 0.6806550008335745, 1e-14));
        // degenerate dimension: antipodal pair
        assert!(extremal_point(2, 3).objective.abs() < 1e-16);
        assert!(close(extremal_point(2, 4).objective, 0.5, 1e-15));
    }

    #[test]
    fn extremal_point_matches_bound_formulas() {
        for n in 2..=10u64 {
            for p in 3..=10u32 {
                let s = extremal_point(n as usize, p);
                let formula = if p % 2 == 1 {
                    power_sum_max_odd(n, p)
                } else {
                    power_sum_max_even(n, p).unwrap()
                };
                assert!(
                    close(s.objective, formula, 1e-12),
                    "n={n} p={p}: {} vs {}",
                    s.objective,
                    formula
                );
            }
        }
    }

    #[test]
    fn solution_invariants_hold() {
        for n in 2..=9 {
            for p in 3..=9 {
                for s in two_level_solutions(n, p) {
                    let sum: f64 = s.point.iter().sum();
                    let sq: f64 = s.point.iter().map(|x| x * x).sum();
                    assert!(sum.abs() < 1e-12);
                    assert!((sq - 1.0).abs() < 1e-12);
                    assert!((s.n1 as f64 * s.alpha1 + s.n2 as f64 * s.alpha2).abs() < 1e-12);
                    // lambda2 equals the objective at signed stationary points
                    assert!((s.lambda2 - s.objective).abs() < 1e-10);
                    let problem = PowerSumProblem::signed(n, p).unwrap();
                    assert!(s.stationarity_residual(&problem) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn two_level_split_table() {
        let sols = two_level_solutions(4, 3);
        let objectives: Vec<f64> = sols.iter().map(|s| s.objective).collect();
        assert!(close(objectives[0], 0.5773502691896258, 1e-14));
        assert!(objectives[1].abs() < 1e-15);
        assert!(close(objectives[2], -0.5773502691896258, 1e-14));
        assert_eq!(sols[0].n1, 1);
        assert_eq!(sols[1].n1, 2);
        assert_eq!(sols[2].n1, 3);
        // n=2: the single antipodal split
        let sols = two_level_solutions(2, 3);
        assert_eq!(sols.len(), 1);
        assert!(sols[0].objective.abs() < 1e-16);
        // odd p: the best split always puts n-1 coordinates low
        for n in 3..=9 {
            for p in (3..=9).step_by(2) {
                assert_eq!(two_level_solutions(n, p)[0].n1, 1, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn multiplier_identities_at_cubic_exponent() {
        for n in 2..=10usize {
            for s in two_level_solutions(n, 3) {
                assert!((s.lambda1 - 1.0 / n as f64).abs() < 1e-12);
                let k = s.n1 as f64 - s.n2 as f64;
                let nf = n as f64;
                let expect = 4.0 * k * k / (nf * (nf * nf - k * k));
                assert!((s.lambda2 * s.lambda2 - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn numeric_matches_closed_form_on_cubic() {
        let problem = PowerSumProblem::signed(3, 3).unwrap();
        let best = numeric_maximize(&problem, 1, 1000, 1e-8).unwrap();
        let exact = extremal_point(3, 3);
        assert!((best.objective - exact.objective).abs() < 1e-6);
        for (a, b) in best.point.iter().zip(&exact.point) {
            assert!((a - b).abs() < 1e-5);
        }
        assert!(best.stationarity_residual(&problem) <= 1e-7);
    }

    #[test]
    fn numeric_never_beats_closed_form() {
        for n in [3usize, 5, 8] {
            for p in [3u32, 4, 7] {
                let problem = PowerSumProblem::signed(n, p).unwrap();
                let best = numeric_maximize(&problem, 7, 1500, 1e-8).unwrap();
                let closed = extremal_point(n, p).objective;
                assert!(best.objective <= closed + 1e-7, "n={n} p={p}");
                assert!(best.objective >= closed - 1e-6, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn numeric_absolute_mode_reaches_candidates() {
        let problem = PowerSumProblem::absolute(3, 2.5).unwrap();
        let best = numeric_maximize(&problem, 3, 1500, 1e-8).unwrap();
        let candidate_best = two_level_candidates(&problem)[0].objective;
        assert!(close(candidate_best, 0.815382370489, 1e-10));
        assert!(best.objective >= candidate_best - 1e-9);
    }

    #[test]
    fn numeric_determinism() {
        let problem = PowerSumProblem::signed(5, 4).unwrap();
        let a = numeric_maximize(&problem, 42, 800, 1e-8).unwrap();
        let b = numeric_maximize(&problem, 42, 800, 1e-8).unwrap();
        assert_eq!(a.point, b.point);
        assert_eq!(a.objective, b.objective);
    }

    #[test]
    fn threshold_records() {
        let r = g_threshold(4.0);
        assert!(close(r.g_value, 3f64.sqrt() / 2.0, 1e-15));
        assert!(close(r.g_value, 0.8660254037844386, 1e-15));
        assert!(close(r.g_value * r.h_value, 1.0, 1e-15));
        assert_eq!(r.n_threshold, 8);
        assert_eq!(r.exceptional_n, vec![3, 4, 5, 6, 7]);
        let r = g_threshold(3.0);
        assert!(close(r.g_value, 0.9283177667225558, 1e-15));
        assert_eq!(r.n_threshold, 14);
        let r = g_threshold(14.0);
        assert!(close(r.g_value, 0.6502824728240817, 1e-15));
        assert_eq!(r.n_threshold, 3);
        assert!(r.exceptional_n.is_empty());
    }

    #[test]
    fn exceptional_set_is_the_ten_pairs() {
        let expect: BTreeSet<(u64, u64)> = [
            (3, 4),
            (4, 4),
            (5, 4),
            (6, 4),
            (7, 4),
            (3, 6),
            (4, 6),
            (3, 8),
            (3, 10),
            (3, 12),
        ]
        .into_iter()
        .collect();
        assert_eq!(exceptional_set(12), expect);
        assert_eq!(exceptional_set(30), expect);
        let quartic: BTreeSet<(u64, u64)> =
            [(3, 4), (4, 4), (5, 4), (6, 4), (7, 4)].into_iter().collect();
        assert_eq!(exceptional_set(4), quartic);
    }

    #[test]
    fn three_value_exclusion() {
        let r = p4_three_value_check(3);
        assert!(close(r.alpha_sq_lower, 4.0 / 9.0, 1e-15));
        assert!(!r.excluded);
        let r = p4_three_value_check(4);
        assert!(close(r.alpha_sq_lower, 0.5625, 1e-15));
        assert!(r.excluded);
        assert!(p4_three_value_check(100).excluded);
    }

    #[test]
    fn quartic_elementary_extremes_coincide() {
        // among the n=4 two-level points, e3 is maximized and e4 minimized
        // at the same canonical point (ties on e4 broken lex-largest)
        let problem = PowerSumProblem::signed(4, 4).unwrap();
        let candidates = two_level_candidates(&problem);
        let es: Vec<Vec<f64>> = candidates
            .iter()
            .map(|s| elementary_from_roots_f64(&s.point))
            .collect();
        let e3_max = (0..candidates.len())
            .max_by(|&i, &j| es[i][2].total_cmp(&es[j][2]))
            .unwrap();
        let e4_min_val = es.iter().map(|e| e[3]).fold(f64::INFINITY, f64::min);
        let e4_argmin = (0..candidates.len())
            .filter(|&i| es[i][3] <= e4_min_val + 1e-12)
            .max_by(|&i, &j| {
                let (a, b) = (&candidates[i].point, &candidates[j].point);
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| *o != std::cmp::Ordering::Equal)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        assert_eq!(e3_max, e4_argmin);
        for (a, b) in candidates[e3_max].point.iter().zip(&candidates[e4_argmin].point) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            PowerSumProblem::signed(1, 3).unwrap_err(),
            PowerSumError::DimensionTooSmall(1)
        );
        assert_eq!(
            PowerSumProblem::signed(3, 2).unwrap_err(),
            PowerSumError::SignedExponentTooSmall(2)
        );
        assert!(matches!(
            PowerSumProblem::absolute(3, 2.0).unwrap_err(),
            PowerSumError::AbsoluteExponentOutOfRange(_)
        ));
    }
}
