//! Adjacency spectra and exact trace powers.
//!
//! Two routes to the same quantities: a floating-point symmetric eigensolver
//! (cyclic Jacobi rotations, eigenvalues only) and exact big-integer matrix
//! powers. tr A^k ties the routes together: it equals the sum of k-th
//! eigenvalue powers and, combinatorially, the number of closed k-walks.

use crate::graph::Graph;
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

/// Default relative eigenvalue tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    ConvergenceFailure { sweeps: usize, off: f64 },
}

/// Adjacency eigenvalues, sorted descending, each accurate to `tolerance`
/// relative to the spectral radius.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

/// Computes the adjacency spectrum of `g` by cyclic Jacobi sweeps.
pub fn adjacency_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let n = g.vertex_count();
    let mut a = vec![0.0f64; n * n];
    for &(u, v) in g.edges() {
        a[u as usize * n + v as usize] = 1.0;
        a[v as usize * n + u as usize] = 1.0;
    }
    let mut eigenvalues = jacobi_eigenvalues(&mut a, n, tol)?;
    eigenvalues.sort_by(|x, y| y.total_cmp(x));

    // Orthogonal similarity preserves the trace and the Frobenius norm, so a
    // converged run must reproduce tr A = 0 and tr A^2 = 2E almost exactly.
    let radius = eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let scale = radius.max(1.0);
    let sum: f64 = eigenvalues.iter().sum();
    let sum_sq: f64 = eigenvalues.iter().map(|l| l * l).sum();
    let budget = tol * scale * scale * n as f64;
    if sum.abs() > budget || (sum_sq - 2.0 * g.edge_count() as f64).abs() > budget {
        return Err(SpectralError::ConvergenceFailure {
            sweeps: MAX_SWEEPS,
            off: sum.abs().max((sum_sq - 2.0 * g.edge_count() as f64).abs()),
        });
    }
    Ok(Spectrum {
        eigenvalues,
        tolerance: tol,
    })
}

/// Sum of k-th powers of the eigenvalues.
pub fn spectral_trace(spectrum: &Spectrum, k: u32) -> f64 {
    spectrum.eigenvalues.iter().map(|l| l.powi(k as i32)).sum()
}

/// Exact tr A^k via big-integer matrix exponentiation by repeated squaring.
/// `k >= 1`.
pub fn trace_power(g: &Graph, k: u32) -> BigInt {
    assert!(k >= 1, "trace_power requires k >= 1");
    let n = g.vertex_count();
    let mut base: Vec<BigInt> = vec![BigInt::from(0); n * n];
    for &(u, v) in g.edges() {
        base[u as usize * n + v as usize] = BigInt::from(1);
        base[v as usize * n + u as usize] = BigInt::from(1);
    }
    let mut result: Option<Vec<BigInt>> = None;
    let mut sq = base;
    let mut exp = k;
    loop {
        if exp & 1 == 1 {
            result = Some(match result {
                None => sq.clone(),
                Some(r) => mat_mul(&r, &sq, n),
            });
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        sq = mat_mul(&sq, &sq, n);
    }
    let power = result.expect("k >= 1 always selects at least one factor");
    (0..n).map(|i| power[i * n + i].clone()).sum()
}

fn mat_mul(x: &[BigInt], y: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); n * n];
    for i in 0..n {
        for l in 0..n {
            let xil = &x[i * n + l];
            if xil.bits() == 0 {
                continue;
            }
            for j in 0..n {
                let yl = &y[l * n + j];
                if yl.bits() != 0 {
                    out[i * n + j] += xil * yl;
                }
            }
        }
    }
    out
}

/// Cyclic Jacobi: repeatedly rotates away the off-diagonal entries of a
/// symmetric matrix until their norm is below `tol` relative to the largest
/// diagonal magnitude. Eigenvalues land on the diagonal; eigenvectors are
/// not accumulated.
fn jacobi_eigenvalues(a: &mut [f64], n: usize, tol: f64) -> Result<Vec<f64>, SpectralError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };
    for _ in 0..MAX_SWEEPS {
        let off = off_norm(a);
        let scale = (0..n).map(|i| a[i * n + i].abs()).fold(0.0f64, f64::max).max(1.0);
        if off <= tol * scale {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                // rotation angle from the standard 2x2 symmetric Schur decomposition
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = arp - s * (arq + tau * arp);
                    a[p * n + r] = a[r * n + p];
                    a[r * n + q] = arq + s * (arp - tau * arq);
                    a[q * n + r] = a[r * n + q];
                }
            }
        }
    }
    Err(SpectralError::ConvergenceFailure {
        sweeps: MAX_SWEEPS,
        off: off_norm(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() <= tol, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn triangle_spectrum() {
        let s = adjacency_spectrum(&Graph::complete(3), DEFAULT_TOLERANCE).unwrap();
        assert_close(&s.eigenvalues, &[2.0, -1.0, -1.0], 1e-9);
    }

    #[test]
    fn single_edge_spectrum() {
        let g = Graph::from_edge_list(&[(0, 1)], None).unwrap();
        let s = adjacency_spectrum(&g, DEFAULT_TOLERANCE).unwrap();
        assert_close(&s.eigenvalues, &[1.0, -1.0], 1e-12);
    }

    #[test]
    fn complete_graph_spectrum_is_n_minus_1_and_minus_ones() {
        let s = adjacency_spectrum(&Graph::complete(5), DEFAULT_TOLERANCE).unwrap();
        assert_close(&s.eigenvalues, &[4.0, -1.0, -1.0, -1.0, -1.0], 1e-9);
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let g = Graph::from_edge_list(&[], Some(3)).unwrap();
        let s = adjacency_spectrum(&g, DEFAULT_TOLERANCE).unwrap();
        assert_close(&s.eigenvalues, &[0.0, 0.0, 0.0], 0.0);
        let g1 = Graph::from_edge_list(&[], Some(1)).unwrap();
        assert_eq!(adjacency_spectrum(&g1, DEFAULT_TOLERANCE).unwrap().eigenvalues, vec![0.0]);
    }

    #[test]
    fn trace_power_small_cases() {
        let k3 = Graph::complete(3);
        assert_eq!(trace_power(&k3, 1), BigInt::from(0));
        assert_eq!(trace_power(&k3, 2), BigInt::from(6));
        assert_eq!(trace_power(&k3, 3), BigInt::from(6));
        let k5 = Graph::complete(5);
        assert_eq!(trace_power(&k5, 5), BigInt::from(1020));
    }

    #[test]
    fn trace_power_matches_closed_form_on_complete_graphs() {
        // spectrum of K_n: (n-1) once, -1 with multiplicity n-1
        for n in 2..=7usize {
            for k in 1..=10u32 {
                let expect = BigInt::from(n as i64 - 1).pow(k)
                    + BigInt::from(n as i64 - 1) * BigInt::from(-1i64).pow(k);
                assert_eq!(trace_power(&Graph::complete(n), k), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn spectral_trace_tracks_exact_trace() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], None).unwrap();
        let s = adjacency_spectrum(&g, DEFAULT_TOLERANCE).unwrap();
        for k in 1..=8u32 {
            let exact: f64 = trace_power(&g, k).to_string().parse().unwrap();
            let spectral = spectral_trace(&s, k);
            let radius = s.eigenvalues[0].abs().max(s.eigenvalues.last().unwrap().abs());
            let budget = 10.0 * DEFAULT_TOLERANCE * radius.powi(k as i32).max(1.0);
            assert!((exact - spectral).abs() <= budget, "k={k}: {exact} vs {spectral}");
        }
    }

    #[test]
    fn spectrum_sums_match_edge_count() {
        let g = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3), (4, 5)], None).unwrap();
        let s = adjacency_spectrum(&g, DEFAULT_TOLERANCE).unwrap();
        let sum: f64 = s.eigenvalues.iter().sum();
        let sum_sq: f64 = s.eigenvalues.iter().map(|l| l * l).sum();
        assert!(sum.abs() < 1e-10);
        assert!((sum_sq - 8.0).abs() < 1e-10);
    }
}
