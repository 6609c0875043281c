//! Closed-form stage states of the worked three-qubit HHL instance
//! (system matrix [[3,1],[1,3]]/2, right-hand side (b0, b1)).
//!
//! The three stages are given directly as states: a pure state after phase
//! estimation, then rank-two mixtures after the eigenvalue-inversion
//! rotation and after uncomputation. Everything is parameterized by the
//! input amplitudes (b0, b1) with b0^2 + b1^2 = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::{DensityMatrix, PureState};

/// Ancilla rotation scale of the eigenvalue-inversion step,
/// (sin(pi/4) + 2 sin(pi/8)) / 2 ~ 0.736.
pub fn rotation_scale() -> f64 {
    ((std::f64::consts::FRAC_PI_4).sin() + 2.0 * (std::f64::consts::PI / 8.0).sin()) / 2.0
}

/// Input amplitudes of the linear system right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HHLInput {
    b0: f64,
    b1: f64,
}

impl HHLInput {
    pub fn new(b0: f64, b1: f64) -> Result<Self> {
        let norm_sqr = b0 * b0 + b1 * b1;
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { b0, b1 })
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }
}

/// Scalars of the post-rotation stage: mixing weight `p`, spectral
/// amplitudes `x1`, `x2`, and the intermediate quantities they come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HHLStage2Params {
    pub c: f64,
    pub gamma: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub p: f64,
    pub a1: f64,
    pub a2: f64,
    pub x1: f64,
    pub x2: f64,
}

/// Scalars of the post-uncomputation stage: mixing weight `q` and the
/// solution-qubit amplitudes `y1`, `y2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HHLStage3Params {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub q: f64,
    pub f1: f64,
    pub f2: f64,
    pub y1: f64,
    pub y2: f64,
}

fn checked_sqrt(radicand: f64, what: &str) -> Result<f64> {
    if radicand < -1e-12 {
        return Err(Error::Internal(format!(
            "negative radicand {radicand:.3e} in {what}"
        )));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Pure state after phase estimation:
/// ((b0-b1)|01>(|0>-|1>) + (b0+b1)|10>(|0>+|1>)) / 2.
pub fn stage1_state(input: &HHLInput) -> Result<PureState> {
    let lo = (input.b0 - input.b1) / 2.0;
    let hi = (input.b0 + input.b1) / 2.0;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[2] = Complex64::new(lo, 0.0);
    amps[3] = Complex64::new(-lo, 0.0);
    amps[4] = Complex64::new(hi, 0.0);
    amps[5] = Complex64::new(hi, 0.0);
    PureState::new(3, amps)
}

pub fn stage2_params(input: &HHLInput) -> Result<HHLStage2Params> {
    let c = rotation_scale();
    let c2 = c * c;
    let gamma = checked_sqrt((1.0 - c2) * (1.0 - c2 / 4.0), "gamma")? + c2 / 2.0;

    let beta1 = (input.b0 - input.b1) / 2f64.sqrt();
    let beta2 = (input.b0 + input.b1) / 2f64.sqrt();

    let shrink = 1.0 - gamma * gamma;
    let root = checked_sqrt(
        1.0 - 4.0 * beta1 * beta1 * beta2 * beta2 * shrink,
        "mixing weight",
    )?;
    let p = 0.5 * (1.0 + root);

    let a1 = beta1 * (1.0 + root - 2.0 * beta2 * beta2 * shrink);
    let a2 = beta2 * gamma * (1.0 + root);
    let norm_sqr = a1 * a1 + a2 * a2;
    if norm_sqr < 1e-24 {
        return Err(Error::DegenerateSpectralParameters);
    }
    let norm = norm_sqr.sqrt();

    Ok(HHLStage2Params {
        c,
        gamma,
        beta1,
        beta2,
        p,
        a1,
        a2,
        x1: a1 / norm,
        x2: a2 / norm,
    })
}

fn spectral_pair(psi1: &PureState, psi2: &PureState, weight: f64) -> Result<DensityMatrix> {
    let d = psi1.dim();
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let v = weight * psi1.amplitude(i) * psi1.amplitude(j).conj()
                + (1.0 - weight) * psi2.amplitude(i) * psi2.amplitude(j).conj();
            m.set(i, j, v);
        }
    }
    DensityMatrix::new(psi1.n_qubits(), m)
}

/// Rank-two mixed state after the eigenvalue-inversion rotation.
pub fn stage2_state(params: &HHLStage2Params) -> Result<DensityMatrix> {
    let s = 1.0 / 2f64.sqrt();
    let mut phi1 = vec![Complex64::new(0.0, 0.0); 8];
    phi1[2] = Complex64::new(params.x1 * s, 0.0);
    phi1[3] = Complex64::new(-params.x1 * s, 0.0);
    phi1[4] = Complex64::new(params.x2 * s, 0.0);
    phi1[5] = Complex64::new(params.x2 * s, 0.0);
    let mut phi2 = vec![Complex64::new(0.0, 0.0); 8];
    phi2[2] = Complex64::new(-params.x2 * s, 0.0);
    phi2[3] = Complex64::new(params.x2 * s, 0.0);
    phi2[4] = Complex64::new(params.x1 * s, 0.0);
    phi2[5] = Complex64::new(params.x1 * s, 0.0);
    spectral_pair(
        &PureState::new(3, phi1)?,
        &PureState::new(3, phi2)?,
        params.p,
    )
}

pub fn stage3_params(input: &HHLInput) -> Result<HHLStage3Params> {
    let c = rotation_scale();
    let r1 = checked_sqrt(1.0 - c * c, "eigenvalue-1 leftover")?;
    let r2 = checked_sqrt(1.0 - c * c / 4.0, "eigenvalue-2 leftover")?;
    let diff = input.b0 - input.b1;
    let sum = input.b0 + input.b1;

    let a = 0.5 * (diff * r1 + sum * r2);
    let b = 0.5 * (-diff * r1 + sum * r2);
    let c1 = c * (3.0 * input.b0 - input.b1) / 4.0;
    let c2 = c * (-input.b0 + 3.0 * input.b1) / 4.0;

    let cross = a * c2 - b * c1;
    let root = checked_sqrt(1.0 - 4.0 * cross * cross, "mixing weight")?;
    let q = 0.5 * (1.0 + root);

    let f1 = a * a - b * b + c1 * c1 + c2 * c2 + root;
    let f2 = 2.0 * (a * b + c1 * c2);
    let norm_sqr = f1 * f1 + f2 * f2;
    if norm_sqr < 1e-24 {
        return Err(Error::DegenerateSpectralParameters);
    }
    let norm = norm_sqr.sqrt();

    Ok(HHLStage3Params {
        a,
        b,
        c1,
        c2,
        q,
        f1,
        f2,
        y1: f1 / norm,
        y2: f2 / norm,
    })
}

/// Rank-two mixed state after uncomputation, supported on |000> and |001>.
pub fn stage3_state(params: &HHLStage3Params) -> Result<DensityMatrix> {
    let mut phi1 = vec![Complex64::new(0.0, 0.0); 8];
    phi1[0] = Complex64::new(params.y1, 0.0);
    phi1[1] = Complex64::new(params.y2, 0.0);
    let mut phi2 = vec![Complex64::new(0.0, 0.0); 8];
    phi2[0] = Complex64::new(-params.y2, 0.0);
    phi2[1] = Complex64::new(params.y1, 0.0);
    spectral_pair(
        &PureState::new(3, phi1)?,
        &PureState::new(3, phi2)?,
        params.q,
    )
}

/// Closed-form geometric measure of the stage-1 state:
/// -log2(max{(b0-b1)^2/2, (b0+b1)^2/2}).
pub fn stage1_gm_closed_form(input: &HHLInput) -> f64 {
    let lo = (input.b0 - input.b1).powi(2) / 2.0;
    let hi = (input.b0 + input.b1).powi(2) / 2.0;
    -lo.max(hi).log2()
}

/// Closed-form geometric measure of the stage-3 state: -log2(max{q, 1-q}).
pub fn stage3_gm_closed_form(params: &HHLStage3Params) -> f64 {
    -params.q.max(1.0 - params.q).log2()
}

/// The stage-2 state rewritten over |000> and |111> by local unitaries on
/// each qubit: the spectral vectors map to x1|000> + x2|111> and
/// -x2|000> + x1|111>. Geometric measure is invariant under that rewrite,
/// and the rewritten state is permutation symmetric, so the two-angle
/// symmetric optimizer applies.
pub fn stage2_ghz_form(params: &HHLStage2Params) -> Result<DensityMatrix> {
    let mut phi1 = vec![Complex64::new(0.0, 0.0); 8];
    phi1[0] = Complex64::new(params.x1, 0.0);
    phi1[7] = Complex64::new(params.x2, 0.0);
    let mut phi2 = vec![Complex64::new(0.0, 0.0); 8];
    phi2[0] = Complex64::new(-params.x2, 0.0);
    phi2[7] = Complex64::new(params.x1, 0.0);
    spectral_pair(
        &PureState::new(3, phi1)?,
        &PureState::new(3, phi2)?,
        params.p,
    )
}

/// Best overlap of the stage-2 state with a product state restricted to a
/// single real angle, together with the maximizing angle.
#[derive(Debug, Clone, Copy)]
pub struct SingleAngleBound {
    pub lambda2: f64,
    pub alpha: f64,
}

/// Single-angle overlap bound for the stage-2 state:
/// f(alpha) = a cos^6 + b cos^3 sin^3 + c sin^6 maximized over its
/// stationary points on [0, pi/2]. The coefficients are the diagonal and
/// doubled cross entries of the rewritten state, a = p x1^2 + (1-p) x2^2,
/// b = |(4p-2) x1 x2|, c = (1-p) x1^2 + p x2^2; the phase maximization
/// cos(3 beta) = +/-1 is already folded in, so f's maximum equals the full
/// two-angle optimum.
pub fn stage2_gm_single_angle_bound(params: &HHLStage2Params) -> SingleAngleBound {
    let (p, x1, x2) = (params.p, params.x1, params.x2);
    let a = p * x1 * x1 + (1.0 - p) * x2 * x2;
    let b = ((4.0 * p - 2.0) * x1 * x2).abs();
    let c = (1.0 - p) * x1 * x1 + p * x2 * x2;

    let f = |alpha: f64| {
        let (s, co) = alpha.sin_cos();
        a * co.powi(6) + b * co.powi(3) * s.powi(3) + c * s.powi(6)
    };
    let fp = |alpha: f64| {
        let (s, co) = alpha.sin_cos();
        -6.0 * a * co.powi(5) * s
            + 3.0 * b * co.powi(2) * s.powi(2) * (2.0 * alpha).cos()
            + 6.0 * c * s.powi(5) * co
    };

    // Endpoints are stationary; interior roots of f' found by bisection on
    // sign changes over a fine scan.
    let mut candidates = vec![0.0, std::f64::consts::FRAC_PI_2];
    let steps = 2048;
    let width = std::f64::consts::FRAC_PI_2 / steps as f64;
    let mut prev = fp(0.0);
    for k in 1..=steps {
        let alpha = k as f64 * width;
        let cur = fp(alpha);
        if prev == 0.0 {
            candidates.push((k - 1) as f64 * width);
        } else if prev.signum() != cur.signum() {
            let (mut lo, mut hi) = ((k - 1) as f64 * width, alpha);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if fp(lo).signum() == fp(mid).signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            candidates.push(0.5 * (lo + hi));
        }
        prev = cur;
    }

    let mut best = SingleAngleBound {
        lambda2: f64::NEG_INFINITY,
        alpha: 0.0,
    };
    for alpha in candidates {
        let value = f(alpha);
        if value > best.lambda2 {
            best = SingleAngleBound {
                lambda2: value,
                alpha,
            };
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::hermitian_eig;
    use rand::{Rng, SeedableRng};

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn rotation_scale_value() {
        assert!((rotation_scale() - 0.7362368229583636).abs() < 1e-15);
    }

    #[test]
    fn input_requires_normalization() {
        assert!(HHLInput::new(0.8, 0.7).is_err());
        assert!(HHLInput::new(0.6, 0.8).is_ok());
    }

    #[test]
    fn stage1_basis_cases() {
        let psi = stage1_state(&HHLInput::new(1.0, 0.0).unwrap()).unwrap();
        for (i, expect) in [0.0, 0.0, 0.5, -0.5, 0.5, 0.5, 0.0, 0.0].iter().enumerate() {
            assert!((psi.amplitude(i).re - expect).abs() < 1e-15, "index {i}");
            assert_eq!(psi.amplitude(i).im, 0.0);
        }

        let psi = stage1_state(&HHLInput::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap()).unwrap();
        for i in 0..8 {
            let expect = if i == 4 || i == 5 { FRAC_1_SQRT_2 } else { 0.0 };
            assert!((psi.amplitude(i).re - expect).abs() < 1e-12, "index {i}");
        }
    }

    #[test]
    fn stage1_normalized_for_random_inputs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let input = HHLInput::new(t.cos(), t.sin()).unwrap();
            let psi = stage1_state(&input).unwrap();
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stage2_params_equal_amplitude_branch() {
        // b0 = 1: beta1 = beta2 = 1/sqrt(2) and p = (1 + gamma) / 2.
        let params = stage2_params(&HHLInput::new(1.0, 0.0).unwrap()).unwrap();
        assert!((params.beta1 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((params.beta2 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((params.p - 0.5 * (1.0 + params.gamma)).abs() < 1e-12);
    }

    #[test]
    fn stage2_params_degenerate_branch() {
        let params = stage2_params(&HHLInput::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap()).unwrap();
        assert!((params.p - 1.0).abs() < 1e-12);
        assert!(params.x1.abs() < 1e-12);
        assert!((params.x2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stage2_state_is_pure_when_p_is_one() {
        let params = HHLStage2Params {
            c: rotation_scale(),
            gamma: 0.9,
            beta1: 0.0,
            beta2: 1.0,
            p: 1.0,
            a1: 1.0,
            a2: 0.0,
            x1: 1.0,
            x2: 0.0,
        };
        let rho = stage2_state(&params).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((rho.entry(2, 2).re - 0.5).abs() < 1e-15);
        assert!((rho.entry(2, 3).re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn stage2_state_block_pattern() {
        let params = stage2_params(&HHLInput::new(0.6, 0.8).unwrap()).unwrap();
        let rho = stage2_state(&params).unwrap();
        let (p, x1, x2) = (params.p, params.x1, params.x2);
        for i in 0..8 {
            for j in 0..8 {
                let inside = (2..=5).contains(&i) && (2..=5).contains(&j);
                if !inside {
                    assert!(rho.entry(i, j).norm() < 1e-15, "({i},{j}) outside block");
                }
            }
        }
        let d_hi = 0.5 * (p * x1 * x1 + (1.0 - p) * x2 * x2);
        let d_lo = 0.5 * ((1.0 - p) * x1 * x1 + p * x2 * x2);
        let cross = 0.5 * (2.0 * p - 1.0) * x1 * x2;
        assert!((rho.entry(2, 2).re - d_hi).abs() < 1e-14);
        assert!((rho.entry(3, 3).re - d_hi).abs() < 1e-14);
        assert!((rho.entry(2, 3).re + d_hi).abs() < 1e-14);
        assert!((rho.entry(4, 4).re - d_lo).abs() < 1e-14);
        assert!((rho.entry(2, 4).re - cross).abs() < 1e-14);
        assert!((rho.entry(3, 4).re + cross).abs() < 1e-14);
    }

    #[test]
    fn stage2_spectrum_and_eigenvectors() {
        let params = stage2_params(&HHLInput::new(0.6, 0.8).unwrap()).unwrap();
        let rho = stage2_state(&params).unwrap();
        let eig = hermitian_eig(rho.matrix()).unwrap();
        assert!((eig.eigenvalues[0] - params.p).abs() < 1e-9);
        assert!((eig.eigenvalues[1] - (1.0 - params.p)).abs() < 1e-9);

        // Eigenvectors reconstruct the spectral pair up to phase.
        let s = FRAC_1_SQRT_2;
        let pair = [
            [
                (2usize, params.x1 * s),
                (3, -params.x1 * s),
                (4, params.x2 * s),
                (5, params.x2 * s),
            ],
            [
                (2usize, -params.x2 * s),
                (3, params.x2 * s),
                (4, params.x1 * s),
                (5, params.x1 * s),
            ],
        ];
        for (col, phi) in pair.iter().enumerate() {
            let v = eig.eigenvector(col);
            let overlap: Complex64 = phi.iter().map(|&(i, amp)| v[i].conj() * amp).sum();
            assert!(
                (overlap.norm() - 1.0).abs() < 1e-8,
                "eigenvector {col} overlap {}",
                overlap.norm()
            );
        }
    }

    #[test]
    fn stage3_params_identities() {
        for k in 0..=100 {
            let b0 = k as f64 / 100.0;
            let b1 = (1.0 - b0 * b0).max(0.0).sqrt();
            let params = stage3_params(&HHLInput::new(b0, b1).unwrap()).unwrap();
            let total = params.a * params.a
                + params.b * params.b
                + params.c1 * params.c1
                + params.c2 * params.c2;
            assert!((total - 1.0).abs() < 1e-12, "b0={b0}");
            assert!((0.5..=1.0 + 1e-12).contains(&params.q), "b0={b0}");
            assert!((params.y1 * params.y1 + params.y2 * params.y2 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stage3_params_symmetric_input() {
        let params = stage3_params(&HHLInput::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap()).unwrap();
        assert!((params.a - params.b).abs() < 1e-14);
        assert!((params.c1 - params.c2).abs() < 1e-14);
        assert!((params.a * params.c2 - params.b * params.c1).abs() < 1e-14);
        assert!((params.q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stage3_state_support_and_spectrum() {
        let params = stage3_params(&HHLInput::new(0.6, 0.8).unwrap()).unwrap();
        let rho = stage3_state(&params).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i > 1 || j > 1 {
                    assert!(rho.entry(i, j).norm() < 1e-15);
                }
            }
        }
        let expect00 = params.q * params.y1 * params.y1 + (1.0 - params.q) * params.y2 * params.y2;
        let expect01 = (2.0 * params.q - 1.0) * params.y1 * params.y2;
        assert!((rho.entry(0, 0).re - expect00).abs() < 1e-14);
        assert!((rho.entry(0, 1).re - expect01).abs() < 1e-14);

        let eig = hermitian_eig(rho.matrix()).unwrap();
        assert!((eig.eigenvalues[0] - params.q).abs() < 1e-9);
        assert!((eig.eigenvalues[1] - (1.0 - params.q)).abs() < 1e-9);
    }

    #[test]
    fn stage3_state_pure_case() {
        let params = HHLStage3Params {
            a: 0.0,
            b: 0.0,
            c1: 0.0,
            c2: 0.0,
            q: 1.0,
            f1: 1.0,
            f2: 0.0,
            y1: 1.0,
            y2: 0.0,
        };
        let rho = stage3_state(&params).unwrap();
        assert!((rho.entry(0, 0).re - 1.0).abs() < 1e-15);
        for i in 1..8 {
            assert!(rho.entry(i, i).norm() < 1e-15);
        }
    }

    #[test]
    fn swapping_inputs_flips_beta1_and_preserves_p() {
        let fwd = stage2_params(&HHLInput::new(0.6, 0.8).unwrap()).unwrap();
        let rev = stage2_params(&HHLInput::new(0.8, 0.6).unwrap()).unwrap();
        assert!((fwd.beta1 + rev.beta1).abs() < 1e-14);
        assert!((fwd.p - rev.p).abs() < 1e-14);
    }

    #[test]
    fn closed_forms_basic_values() {
        let balanced = HHLInput::new(1.0, 0.0).unwrap();
        assert!((stage1_gm_closed_form(&balanced) - 1.0).abs() < 1e-12);
        let product = HHLInput::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        assert!(stage1_gm_closed_form(&product).abs() < 1e-12);

        let params = stage3_params(&HHLInput::new(0.6, 0.8).unwrap()).unwrap();
        let g = stage3_gm_closed_form(&params);
        assert!((g + params.q.log2()).abs() < 1e-12);
    }

    #[test]
    fn single_angle_bound_endpoint_case() {
        // p = 1, x2 = 1 concentrates the state on |111>, a product state, so
        // the best overlap is 1 at alpha = pi/2.
        let params = stage2_params(&HHLInput::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap()).unwrap();
        let bound = stage2_gm_single_angle_bound(&params);
        assert!((bound.lambda2 - 1.0).abs() < 1e-12);
        assert!((bound.alpha - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn ghz_form_preserves_spectrum() {
        let params = stage2_params(&HHLInput::new(0.6, 0.8).unwrap()).unwrap();
        let ghz = stage2_ghz_form(&params).unwrap();
        let eig = hermitian_eig(ghz.matrix()).unwrap();
        assert!((eig.eigenvalues[0] - params.p).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - (1.0 - params.p)).abs() < 1e-12);
        assert!((ghz.matrix().trace().re - 1.0).abs() < 1e-12);
    }
}
