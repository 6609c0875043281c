//! Geometric measure of entanglement: maximal overlap with pure product
//! states, G = -2 log2 Lambda.
//!
//! The optimizer is a fixed multistart grid plus Nelder-Mead refinement.
//! Symmetric mode shares one (alpha, beta) pair across all qubits and is
//! only valid on permutation-symmetric states; general mode optimizes one
//! pair per qubit and covers every product state up to global phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::optim::{multistart_minimize, weyl_points, NelderMeadOptions};
use crate::state::DensityMatrix;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnsatzMode {
    Symmetric,
    General,
}

/// Product-state parameterization: each qubit is
/// `cos(alpha)|0> + e^{i beta} sin(alpha)|1>`.
#[derive(Debug, Clone, PartialEq)]
pub enum ProductAnsatz {
    Symmetric { alpha: f64, beta: f64 },
    General { angles: Vec<(f64, f64)> },
}

impl ProductAnsatz {
    /// Amplitudes of the product state over `n_qubits` (qubit 0 = most
    /// significant bit).
    pub fn amplitudes(&self, n_qubits: usize) -> Vec<Complex64> {
        let per_qubit: Vec<(f64, f64)> = match self {
            ProductAnsatz::Symmetric { alpha, beta } => vec![(*alpha, *beta); n_qubits],
            ProductAnsatz::General { angles } => angles.clone(),
        };
        product_amplitudes(&per_qubit)
    }

    /// Fold angles into alpha in [0, pi], beta in [0, 2 pi); the state is
    /// unchanged up to global phase.
    fn canonicalized(self) -> Self {
        match self {
            ProductAnsatz::Symmetric { alpha, beta } => {
                let (a, b) = canonical_pair(alpha, beta);
                ProductAnsatz::Symmetric { alpha: a, beta: b }
            }
            ProductAnsatz::General { angles } => ProductAnsatz::General {
                angles: angles
                    .into_iter()
                    .map(|(a, b)| canonical_pair(a, b))
                    .collect(),
            },
        }
    }
}

fn canonical_pair(alpha: f64, beta: f64) -> (f64, f64) {
    let mut a = alpha.rem_euclid(TAU);
    let mut b = beta;
    if a > PI {
        a = TAU - a;
        b += PI;
    }
    (a, b.rem_euclid(TAU))
}

fn product_amplitudes(per_qubit: &[(f64, f64)]) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for &(alpha, beta) in per_qubit {
        let (s, c) = alpha.sin_cos();
        let excited = Complex64::from_polar(s, beta);
        let mut next = Vec::with_capacity(amps.len() * 2);
        for &a in &amps {
            next.push(a * c);
            next.push(a * excited);
        }
        amps = next;
    }
    amps
}

/// Overlap `<phi|rho|phi>` and the optimum found for it.
#[derive(Debug, Clone)]
pub struct GMResult {
    pub lambda2: f64,
    pub gm: f64,
    pub argmax: ProductAnsatz,
}

/// Overlap evaluation, specialized to a state vector when `rho` is rank one
/// so large pure states stay cheap.
enum Overlap<'a> {
    Pure(Vec<Complex64>),
    Mixed(&'a ComplexMatrix),
}

impl<'a> Overlap<'a> {
    fn build(rho: &'a DensityMatrix) -> Self {
        if (rho.purity() - 1.0).abs() <= 1e-12 {
            if let Some(psi) = dominant_vector(rho) {
                return Overlap::Pure(psi);
            }
        }
        Overlap::Mixed(rho.matrix())
    }

    fn eval(&self, phi: &[Complex64]) -> f64 {
        match self {
            Overlap::Pure(psi) => {
                let inner: Complex64 = phi.iter().zip(psi).map(|(p, s)| p.conj() * s).sum();
                inner.norm_sqr()
            }
            Overlap::Mixed(m) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, &pi) in phi.iter().enumerate() {
                    let mut row = Complex64::new(0.0, 0.0);
                    for (j, &pj) in phi.iter().enumerate() {
                        row += m.get(i, j) * pj;
                    }
                    acc += pi.conj() * row;
                }
                acc.re
            }
        }
    }
}

/// For a unit-purity state, recover |psi> from its densest column.
fn dominant_vector(rho: &DensityMatrix) -> Option<Vec<Complex64>> {
    let d = rho.dim();
    let col =
        (0..d).max_by(|&a, &b| rho.entry(a, a).re.partial_cmp(&rho.entry(b, b).re).unwrap())?;
    let pivot = rho.entry(col, col).re;
    if pivot <= 0.0 {
        return None;
    }
    let scale = 1.0 / pivot.sqrt();
    let psi: Vec<Complex64> = (0..d).map(|i| rho.entry(i, col) * scale).collect();
    // Confirm rho psi = psi before trusting the shortcut.
    let mut max_dev: f64 = 0.0;
    for (i, &expected) in psi.iter().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &pj) in psi.iter().enumerate() {
            acc += rho.entry(i, j) * pj;
        }
        max_dev = max_dev.max((acc - expected).norm());
    }
    (max_dev <= 1e-8).then_some(psi)
}

/// Entrywise permutation-symmetry check under adjacent qubit swaps.
fn is_permutation_symmetric(rho: &DensityMatrix, tol: f64) -> bool {
    let n = rho.n_qubits();
    let d = rho.dim();
    for k in 0..n.saturating_sub(1) {
        let hi = n - 1 - k;
        let lo = n - 2 - k;
        let swap = |idx: usize| -> usize {
            let bit_hi = (idx >> hi) & 1;
            let bit_lo = (idx >> lo) & 1;
            (idx & !(1 << hi) & !(1 << lo)) | (bit_hi << lo) | (bit_lo << hi)
        };
        for i in 0..d {
            for j in 0..d {
                if (rho.entry(swap(i), swap(j)) - rho.entry(i, j)).norm() > tol {
                    return false;
                }
            }
        }
    }
    true
}

pub fn gm_lambda2(rho: &DensityMatrix, mode: AnsatzMode) -> Result<GMResult> {
    gm_lambda2_with_budget(rho, mode, None)
}

/// Maximize the product-state overlap; `budget` caps objective evaluations
/// per optimizer start.
pub fn gm_lambda2_with_budget(
    rho: &DensityMatrix,
    mode: AnsatzMode,
    budget: Option<usize>,
) -> Result<GMResult> {
    let n = rho.n_qubits();
    let overlap = Overlap::build(rho);
    let opts = NelderMeadOptions {
        max_evals: budget.unwrap_or(2000),
        initial_step: 0.3,
        ..Default::default()
    };

    let result = match mode {
        AnsatzMode::Symmetric => {
            if !is_permutation_symmetric(rho, 1e-10) {
                return Err(Error::InvalidArgument(
                    "symmetric ansatz requires a permutation-symmetric state".into(),
                ));
            }
            let objective = |x: &[f64]| -overlap.eval(&product_amplitudes(&vec![(x[0], x[1]); n]));
            let mut starts = Vec::with_capacity(64 * 64 + 5);
            for i in 0..64 {
                for j in 0..64 {
                    starts.push(vec![i as f64 / 63.0 * PI, j as f64 / 64.0 * TAU]);
                }
            }
            for alpha in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
                starts.push(vec![alpha, 0.0]);
            }
            let best = multistart_minimize(objective, &starts, 8, &opts);
            let argmax = ProductAnsatz::Symmetric {
                alpha: best.x[0],
                beta: best.x[1],
            };
            (best.value, argmax)
        }
        AnsatzMode::General => {
            let objective = |x: &[f64]| {
                let per_qubit: Vec<(f64, f64)> = x.chunks_exact(2).map(|c| (c[0], c[1])).collect();
                -overlap.eval(&product_amplitudes(&per_qubit))
            };
            let mut starts = Vec::new();
            // Computational corners reach every basis state, so the result
            // can never fall below the largest diagonal entry.
            for corner in 0..(1usize << n) {
                let mut x = Vec::with_capacity(2 * n);
                for q in 0..n {
                    let bit = (corner >> (n - 1 - q)) & 1;
                    x.push(if bit == 1 { PI / 2.0 } else { 0.0 });
                    x.push(0.0);
                }
                starts.push(x);
            }
            // Best shared-angle grid points, replicated across qubits.
            let mut shared: Vec<(f64, Vec<f64>)> = Vec::new();
            for i in 0..32 {
                for j in 0..32 {
                    let pair = vec![i as f64 / 31.0 * PI, j as f64 / 32.0 * TAU];
                    let value = -overlap.eval(&product_amplitudes(&vec![(pair[0], pair[1]); n]));
                    shared.push((value, pair));
                }
            }
            shared.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for (_, pair) in shared.into_iter().take(4) {
                let mut x = Vec::with_capacity(2 * n);
                for _ in 0..n {
                    x.extend_from_slice(&pair);
                }
                starts.push(x);
            }
            for p in weyl_points(2 * n, 128) {
                starts.push(
                    p.iter()
                        .enumerate()
                        .map(|(d, &v)| if d % 2 == 0 { v * PI } else { v * TAU })
                        .collect(),
                );
            }
            let best = multistart_minimize(objective, &starts, 8, &opts);
            let argmax = ProductAnsatz::General {
                angles: best.x.chunks_exact(2).map(|c| (c[0], c[1])).collect(),
            };
            (best.value, argmax)
        }
    };

    let lambda2 = (-result.0).min(1.0);
    if lambda2 <= 0.0 {
        return Err(Error::Internal(format!(
            "non-positive overlap {lambda2} from optimizer"
        )));
    }
    Ok(GMResult {
        lambda2,
        gm: -lambda2.log2(),
        argmax: result.1.canonicalized(),
    })
}

/// Geometric measure `G = -2 log2 Lambda = -log2 Lambda^2` with the general
/// per-qubit ansatz.
pub fn gm(rho: &DensityMatrix) -> Result<f64> {
    Ok(gm_lambda2(rho, AnsatzMode::General)?.gm)
}
