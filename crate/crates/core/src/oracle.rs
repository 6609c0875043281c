//! Brute-force oracles for the optimized measures.
//!
//! These deliberately re-derive every objective from scratch so they can
//! cross-check the closed forms and optimizers in `measures`: grid scans
//! bound the optima (from above for minima, from below for maxima), and the
//! coherence oracle polishes its best sample with projected gradient steps
//! on the probability simplex.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{frobenius_distance, ComplexMatrix};
use crate::measures::Bipartition;
use crate::state::{
    entropy_of_hermitian, expand_bits, partial_trace, partial_trace_raw, von_neumann_entropy,
    DensityMatrix,
};

/// Nested sampling lattice: `resolution` intervals per dimension, so doubling
/// the resolution keeps every existing point.
#[derive(Debug, Clone)]
pub struct GridSpec {
    resolution: usize,
    bounds: Vec<(f64, f64)>,
}

impl GridSpec {
    pub fn new(resolution: usize, bounds: Vec<(f64, f64)>) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidArgument(
                "grid resolution must be at least 2".into(),
            ));
        }
        if bounds
            .iter()
            .any(|(lo, hi)| !lo.is_finite() || !hi.is_finite() || hi < lo)
        {
            return Err(Error::InvalidArgument("invalid grid bounds".into()));
        }
        Ok(Self { resolution, bounds })
    }

    /// Shared-angle grid: one (alpha, beta) pair.
    pub fn symmetric_angles(resolution: usize) -> Self {
        Self {
            resolution,
            bounds: vec![(0.0, std::f64::consts::PI), (0.0, std::f64::consts::TAU)],
        }
    }

    /// Per-qubit (alpha, beta) grid.
    pub fn general_angles(n_qubits: usize, resolution: usize) -> Self {
        let mut bounds = Vec::with_capacity(2 * n_qubits);
        for _ in 0..n_qubits {
            bounds.push((0.0, std::f64::consts::PI));
            bounds.push((0.0, std::f64::consts::TAU));
        }
        Self { resolution, bounds }
    }

    /// Per-qubit grid with phases pinned to zero; complete for states with
    /// non-negative entries, and exponentially cheaper.
    pub fn real_general_angles(n_qubits: usize, resolution: usize) -> Self {
        let mut bounds = Vec::with_capacity(2 * n_qubits);
        for _ in 0..n_qubits {
            bounds.push((0.0, std::f64::consts::PI));
            bounds.push((0.0, 0.0));
        }
        Self { resolution, bounds }
    }

    /// Bloch-angle grid for single-qubit measurement bases.
    pub fn bloch_angles(resolution: usize) -> Self {
        Self::symmetric_angles(resolution)
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn axis_points(&self, dim: usize) -> Vec<f64> {
        let (lo, hi) = self.bounds[dim];
        if hi <= lo {
            return vec![lo];
        }
        (0..=self.resolution)
            .map(|k| lo + (hi - lo) * k as f64 / self.resolution as f64)
            .collect()
    }

    /// Visit every lattice point (odometer order).
    fn for_each_point(&self, mut visit: impl FnMut(&[f64])) {
        let axes: Vec<Vec<f64>> = (0..self.bounds.len())
            .map(|d| self.axis_points(d))
            .collect();
        let mut counters = vec![0usize; axes.len()];
        let mut point: Vec<f64> = axes.iter().map(|a| a[0]).collect();
        loop {
            visit(&point);
            let mut d = axes.len();
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                counters[d] += 1;
                if counters[d] < axes[d].len() {
                    point[d] = axes[d][counters[d]];
                    break;
                }
                counters[d] = 0;
                point[d] = axes[d][0];
            }
        }
    }
}

/// Euclidean projection onto the probability simplex (sort-based).
fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (k, &value) in sorted.iter().enumerate() {
        cumulative += value;
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if value - candidate > 0.0 {
            threshold = candidate;
        }
    }
    v.iter().map(|&x| (x - threshold).max(0.0)).collect()
}

fn diagonal_matrix(weights: &[f64]) -> ComplexMatrix {
    let d = weights.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for (i, &w) in weights.iter().enumerate() {
        m.set(i, i, Complex64::new(w, 0.0));
    }
    m
}

/// Enumerate compositions of `total` into `parts` buckets, bounded by `cap`
/// visits.
fn for_each_composition(total: usize, parts: usize, cap: usize, visit: &mut impl FnMut(&[usize])) {
    fn recurse(
        remaining: usize,
        slot: usize,
        current: &mut Vec<usize>,
        visits: &mut usize,
        cap: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if *visits >= cap {
            return;
        }
        if slot + 1 == current.len() {
            current[slot] = remaining;
            *visits += 1;
            visit(current);
            return;
        }
        for take in 0..=remaining {
            current[slot] = take;
            recurse(remaining - take, slot + 1, current, visits, cap, visit);
            if *visits >= cap {
                return;
            }
        }
    }
    let mut current = vec![0usize; parts];
    let mut visits = 0usize;
    recurse(total, 0, &mut current, &mut visits, cap, visit);
}

fn compositions_count(total: usize, parts: usize) -> f64 {
    // C(total + parts - 1, parts - 1), as f64 to dodge overflow.
    let mut out = 1.0f64;
    for k in 1..parts {
        out *= (total + k) as f64 / k as f64;
    }
    out
}

/// Minimize `‖rho − diag(delta)‖_F` over probability vectors `delta`.
///
/// Samples a simplex lattice (resolution per simplex dimension, auto-reduced
/// to keep the enumeration bounded) and polishes the best sample with
/// projected gradient descent; any feasible point upper-bounds the true
/// coherence minimum.
pub fn coherence_grid_oracle(rho: &DensityMatrix, spec: &GridSpec) -> f64 {
    let d = rho.dim();
    const SAMPLE_CAP: usize = 300_000;
    let mut resolution = spec.resolution();
    while resolution > 2 && compositions_count(resolution, d) > SAMPLE_CAP as f64 {
        resolution -= 1;
    }

    let distance_to = |weights: &[f64]| -> f64 {
        frobenius_distance(rho.matrix(), &diagonal_matrix(weights)).expect("same dimensions")
    };

    let mut best_weights = vec![1.0 / d as f64; d];
    let mut best = distance_to(&best_weights);
    for_each_composition(resolution, d, SAMPLE_CAP, &mut |counts| {
        let weights: Vec<f64> = counts
            .iter()
            .map(|&k| k as f64 / resolution as f64)
            .collect();
        let value = distance_to(&weights);
        if value < best {
            best = value;
            best_weights = weights;
        }
    });

    // Projected gradient polish; the objective is a convex quadratic in
    // delta, so this converges to the global minimum from any sample.
    let gradient_at = |weights: &[f64]| -> Vec<f64> {
        (0..d)
            .map(|i| 2.0 * (weights[i] - rho.entry(i, i).re))
            .collect()
    };
    let mut current = best_weights.clone();
    for _ in 0..200 {
        let grad = gradient_at(&current);
        let stepped: Vec<f64> = current
            .iter()
            .zip(&grad)
            .map(|(&x, &g)| x - 0.5 * g)
            .collect();
        let projected = project_to_simplex(&stepped);
        let moved: f64 = projected
            .iter()
            .zip(&current)
            .map(|(a, b)| (a - b).abs())
            .sum();
        current = projected;
        if moved < 1e-15 {
            break;
        }
    }
    best.min(distance_to(&current))
}

fn oracle_product_amplitudes(point: &[f64]) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for pair in point.chunks_exact(2) {
        let (s, c) = pair[0].sin_cos();
        let excited = Complex64::from_polar(s, pair[1]);
        let mut next = Vec::with_capacity(amps.len() * 2);
        for &a in &amps {
            next.push(a * c);
            next.push(a * excited);
        }
        amps = next;
    }
    amps
}

/// Exhaustive overlap scan over the angle grid; a lower bound on the true
/// product-state maximum, nondecreasing in resolution.
///
/// Symmetric mode expects two grid dimensions (one shared angle pair);
/// general mode expects two per qubit.
pub fn gm_grid_oracle(rho: &DensityMatrix, spec: &GridSpec, symmetric: bool) -> Result<f64> {
    let n = rho.n_qubits();
    let expected_dims = if symmetric { 2 } else { 2 * n };
    if spec.bounds().len() != expected_dims {
        return Err(Error::InvalidArgument(format!(
            "grid has {} dimensions, expected {expected_dims}",
            spec.bounds().len()
        )));
    }
    let matrix = rho.matrix();
    let mut best = f64::NEG_INFINITY;
    spec.for_each_point(|point| {
        let amps = if symmetric {
            let repeated: Vec<f64> = std::iter::repeat_n(point, n)
                .flat_map(|p| p.iter().copied())
                .collect();
            oracle_product_amplitudes(&repeated)
        } else {
            oracle_product_amplitudes(point)
        };
        let mut acc = 0.0;
        for (i, &ai) in amps.iter().enumerate() {
            let mut row = Complex64::new(0.0, 0.0);
            for (j, &aj) in amps.iter().enumerate() {
                row += matrix.get(i, j) * aj;
            }
            acc += (ai.conj() * row).re;
        }
        if acc > best {
            best = acc;
        }
    });
    Ok(best)
}

/// Conditional-entropy scan over single-qubit Bloch bases; an upper bound on
/// the true discord.
pub fn discord_grid_oracle(
    rho: &DensityMatrix,
    split: &Bipartition,
    spec: &GridSpec,
) -> Result<f64> {
    if split.measured().len() != 1 {
        return Err(Error::OracleScope);
    }
    if split.n_qubits() != rho.n_qubits() {
        return Err(Error::Dimension("split size mismatch".into()));
    }
    if spec.bounds().len() != 2 {
        return Err(Error::InvalidArgument(
            "discord oracle expects a (theta, phi) grid".into(),
        ));
    }
    let n = rho.n_qubits();
    let measured = split.measured();

    let conditional_entropy = |theta: f64, phi: f64| -> Result<f64> {
        let (s, c) = theta.sin_cos();
        let phase = Complex64::from_polar(1.0, phi);
        let columns = [
            [Complex64::new(c, 0.0), phase * s],
            [-phase.conj() * s, Complex64::new(c, 0.0)],
        ];
        let mut total = 0.0;
        for column in &columns {
            // Dense embed of |e><e| on the measured qubit, then sandwich.
            let dim = rho.dim();
            let mut projector = ComplexMatrix::zeros(dim, dim);
            for m in 0..2usize {
                for mp in 0..2usize {
                    let v = column[m] * column[mp].conj();
                    for u in 0..(dim / 2) {
                        let u_full = expand_bits(u, split.rest(), n);
                        projector.set(
                            expand_bits(m, measured, n) | u_full,
                            expand_bits(mp, measured, n) | u_full,
                            v,
                        );
                    }
                }
            }
            let sandwiched = projector.mul(rho.matrix())?.mul(&projector)?;
            let block = partial_trace_raw(&sandwiched, n, split.rest());
            let p = block.trace().re;
            if p > 1e-14 {
                total += p * entropy_of_hermitian(&block.scale(1.0 / p))?;
            }
        }
        Ok(total)
    };

    let mut best = f64::INFINITY;
    let thetas = spec.axis_points(0);
    let phis = spec.axis_points(1);
    for &theta in &thetas {
        for &phi in &phis {
            let value = conditional_entropy(theta, phi)?;
            if value < best {
                best = value;
            }
        }
    }

    let s_measured = von_neumann_entropy(&partial_trace(rho, measured)?);
    Ok(best + s_measured - von_neumann_entropy(rho))
}
