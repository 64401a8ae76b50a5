//! Seeded random ensembles for the property suites and experiment drivers.
//!
//! Every generator takes the random source by reference, so a single 64-bit
//! seed fed to a counter-based generator (the drivers use ChaCha12) pins
//! down each ensemble bit for bit across runs and platforms.
//!
//! Two ensembles matter for the extremality and distillability suites:
//! bounded-photon Fock states, whose moments the truncated register
//! represents exactly as long as every occupied level sits two below the
//! cut, and two-mode covariance matrices built around a squeezed core so
//! that both distillability classes actually appear.  A Gram-shifted
//! ensemble like AAᵀ + 𝟙 alone would be useless for the latter: its
//! partial transpose is again a shifted Gram matrix, hence never
//! distillable, and any ⟺ check against the negativity would pass
//! vacuously.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::fock::FockDensityOperator;
use crate::phase_space::{CovarianceMatrix, DEFAULT_TOL};

/// Uniformly random pure state supported on Fock levels ≤ `n_max` in every
/// mode: complex-normal coefficients on the allowed indices, normalized.
///
/// For exact moment extraction downstream, choose `dims[k] ≥ n_max + 2`.
pub fn random_pure_state<R: Rng>(
    rng: &mut R,
    dims: &[usize],
    n_max: usize,
) -> Result<FockDensityOperator> {
    let total: usize = dims.iter().product();
    let mut coeffs = vec![Complex64::ZERO; total];
    let mut norm_sq = 0.0;
    for (flat, slot) in coeffs.iter_mut().enumerate() {
        let mut rest = flat;
        let mut allowed = true;
        for &d in dims.iter().rev() {
            if rest % d > n_max {
                allowed = false;
            }
            rest /= d;
        }
        if allowed {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *slot = Complex64::new(re, im);
            norm_sq += slot.norm_sqr();
        }
    }
    let norm = norm_sq.sqrt();
    for c in &mut coeffs {
        *c /= norm;
    }
    FockDensityOperator::build_pure_state(dims, &coeffs)
}

/// A bounded-photon state that is either pure or a two-component mixture
/// with uniformly random weight, each branch drawn with equal probability.
pub fn random_bounded_state<R: Rng>(
    rng: &mut R,
    dims: &[usize],
    n_max: usize,
) -> Result<FockDensityOperator> {
    let first = random_pure_state(rng, dims, n_max)?;
    if rng.random::<bool>() {
        return Ok(first);
    }
    let second = random_pure_state(rng, dims, n_max)?;
    let w: f64 = rng.random();
    let mixed = first.rho() * Complex64::new(w, 0.0)
        + second.rho() * Complex64::new(1.0 - w, 0.0);
    FockDensityOperator::from_matrix(dims, mixed)
}

/// Valid covariance matrix from the shifted Gram construction Γ = AAᵀ + 𝟙.
///
/// Useful for exercising validity-preserving plumbing; note that this
/// ensemble never contains a distillable state (see the module docs), so
/// entanglement suites draw from [`random_two_mode_cm`] instead.
pub fn random_cm<R: Rng>(rng: &mut R, n_modes: usize) -> CovarianceMatrix {
    let dim = 2 * n_modes;
    let a = DMatrix::from_fn(dim, dim, |_, _| 0.5 * rng.sample::<f64, _>(StandardNormal));
    let gamma = &a * a.transpose() + DMatrix::identity(dim, dim);
    CovarianceMatrix::with_tol(gamma, DEFAULT_TOL)
        .expect("a shifted Gram matrix satisfies the uncertainty relation")
}

fn rotation_block(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, s, -s, c])
}

/// Random single-mode symplectic: rotation · squeezer · rotation, the Euler
/// form with squeezing parameter |r| ≤ `r_max`.
fn random_single_mode_symplectic<R: Rng>(rng: &mut R, r_max: f64) -> DMatrix<f64> {
    use std::f64::consts::TAU;
    let r = rng.random_range(-r_max..=r_max);
    let squeeze = DMatrix::from_diagonal(&DVector::from_vec(vec![r.exp(), (-r).exp()]));
    rotation_block(rng.random_range(0.0..TAU)) * squeeze * rotation_block(rng.random_range(0.0..TAU))
}

/// Random N-mode symplectic matrix: two sweeps of per-mode Euler blocks
/// interleaved with beam-splitter rotations over every mode pair.
pub fn random_symplectic<R: Rng>(rng: &mut R, n_modes: usize) -> DMatrix<f64> {
    use std::f64::consts::TAU;
    let dim = 2 * n_modes;
    let mut s = DMatrix::identity(dim, dim);
    for _ in 0..2 {
        for k in 0..n_modes {
            let mut layer = DMatrix::identity(dim, dim);
            layer
                .view_mut((2 * k, 2 * k), (2, 2))
                .copy_from(&random_single_mode_symplectic(rng, 0.8));
            s = layer * s;
        }
        for i in 0..n_modes {
            for j in (i + 1)..n_modes {
                let theta = rng.random_range(0.0..TAU);
                let (sin, cos) = theta.sin_cos();
                let mut layer = DMatrix::identity(dim, dim);
                // The same rotation acts on (Q_i, Q_j) and on (P_i, P_j).
                for off in 0..2 {
                    let (a, b) = (2 * i + off, 2 * j + off);
                    layer[(a, a)] = cos;
                    layer[(a, b)] = sin;
                    layer[(b, a)] = -sin;
                    layer[(b, b)] = cos;
                }
                s = layer * s;
            }
        }
    }
    s
}

/// Two-mode ensemble straddling the distillability boundary: a two-mode
/// squeezed core (ν = cosh 2r, k = sinh 2r) dressed in random local frames,
/// and, half of the time, buried in random positive noise.
///
/// Local symplectics leave the partial-transpose spectrum invariant, so the
/// noiseless half is distillable for every r > 0; the noisy half crosses
/// into the non-distillable class whenever the added Gram term outweighs
/// the squeezing.
pub fn random_two_mode_cm<R: Rng>(rng: &mut R) -> CovarianceMatrix {
    let r: f64 = rng.random_range(0.05..1.0);
    let (nu, k) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let mut core = DMatrix::from_diagonal_element(4, 4, nu);
    core[(0, 2)] = k;
    core[(2, 0)] = k;
    core[(1, 3)] = -k;
    core[(3, 1)] = -k;

    let mut local = DMatrix::identity(4, 4);
    local
        .view_mut((0, 0), (2, 2))
        .copy_from(&random_single_mode_symplectic(rng, 0.5));
    local
        .view_mut((2, 2), (2, 2))
        .copy_from(&random_single_mode_symplectic(rng, 0.5));
    let mut gamma = &local * core * local.transpose();

    if rng.random::<bool>() {
        let t = rng.random_range(0.0..1.2);
        let a = DMatrix::from_fn(4, 4, |_, _| 0.5 * rng.sample::<f64, _>(StandardNormal));
        gamma += (&a * a.transpose()) * t;
    }
    CovarianceMatrix::with_tol(gamma, DEFAULT_TOL)
        .expect("a symplectic congruence of a valid CM plus positive noise is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{
        is_distillable_gaussian, log_negativity_gaussian, symplectic_form, validate_cm,
        Bipartition, CmVerdict,
    };
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn pure_states_respect_the_photon_bound_and_the_seed() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let state = random_pure_state(&mut rng, &[4, 4], 2).unwrap();
        assert_abs_diff_eq!(state.purity(), 1.0, epsilon = 1e-12);
        // Indices with a digit of 3 in either mode must stay empty.
        for flat in 0..16 {
            if flat / 4 == 3 || flat % 4 == 3 {
                assert_abs_diff_eq!(state.rho()[(flat, flat)].re, 0.0, epsilon = 1e-15);
            }
        }

        let mut again = ChaCha12Rng::seed_from_u64(11);
        let replay = random_pure_state(&mut again, &[4, 4], 2).unwrap();
        assert_abs_diff_eq!((state.rho() - replay.rho()).norm(), 0.0, epsilon = 0.0);

        let mut other = ChaCha12Rng::seed_from_u64(12);
        let different = random_pure_state(&mut other, &[4, 4], 2).unwrap();
        assert!((state.rho() - different.rho()).norm() > 1e-3);
    }

    #[test]
    fn bounded_states_include_genuine_mixtures() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let mut mixed_seen = 0;
        for _ in 0..20 {
            let state = random_bounded_state(&mut rng, &[4, 4], 2).unwrap();
            if state.purity() < 0.99 {
                mixed_seen += 1;
            }
        }
        assert!(mixed_seen >= 4, "only {mixed_seen} mixtures in 20 draws");
    }

    #[test]
    fn random_symplectics_preserve_the_form() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for n_modes in 1..=3 {
            let s = random_symplectic(&mut rng, n_modes);
            let sigma = symplectic_form(n_modes);
            let defect = (&s * &sigma * s.transpose() - &sigma).norm();
            assert!(defect < 1e-12, "defect {defect} at {n_modes} modes");
        }
    }

    #[test]
    fn gram_ensemble_is_valid_but_never_distillable() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let part = Bipartition::new(2, &[0]).unwrap();
        for _ in 0..50 {
            let cm = random_cm(&mut rng, 2);
            assert!(matches!(
                validate_cm(cm.matrix(), 1e-9).unwrap(),
                CmVerdict::Valid
            ));
            assert!(!is_distillable_gaussian(&cm, &part, 1e-9).unwrap());
        }
    }

    #[test]
    fn squeezed_ensemble_straddles_the_boundary_consistently() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let part = Bipartition::new(2, &[0]).unwrap();
        let (mut yes, mut no) = (0, 0);
        for _ in 0..200 {
            let cm = random_two_mode_cm(&mut rng);
            let distillable = is_distillable_gaussian(&cm, &part, 1e-9).unwrap();
            let en = log_negativity_gaussian(&cm, &part).unwrap();
            assert_eq!(distillable, en > 1e-9, "criterion and negativity split");
            if distillable {
                yes += 1;
            } else {
                no += 1;
            }
        }
        assert!(yes >= 30 && no >= 30, "one-sided ensemble: {yes} vs {no}");
    }
}
