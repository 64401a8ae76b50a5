//! Extremality comparisons against the Gaussian state with matched moments.
//!
//! Every state ρ with means d and covariance matrix Γ defines a Gaussian
//! counterpart ρ_G built from the same pair.  Two functionals sit at an
//! extremum there: the von Neumann entropy, which ρ_G maximizes, and the
//! difference f(ρ) = S(ρ_A) − S(ρ), which ρ_G minimizes.  The
//! log-negativity obeys no such one-sided bound: [`counterexample_phi`]
//! builds the two-mode family |φ⟩ = √(1−λ²)|00⟩ + λ|11⟩ whose λ = 1/4
//! member has E_N(φ) ≈ 0.5696 while its Gaussian counterpart reaches
//! E_N(φ_G) ≈ 0.6419.
//!
//! [`extremality_report`] evaluates both sides of a comparison and attaches
//! explicit verdicts, ready for serialization by the experiment drivers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockDensityOperator;
use crate::phase_space::{
    gaussian_entropy, is_distillable_gaussian, log_negativity_gaussian, reduce_gaussian,
    Bipartition, CovarianceMatrix, GaussianState, MeansVector, DEFAULT_TOL,
};

/// Absolute slack for the asserted inequality directions.
///
/// All compared quantities are O(1) bits, so a fixed absolute tolerance is
/// appropriate; violations beyond it indicate a genuine ordering failure
/// rather than roundoff.
pub const INEQUALITY_TOL: f64 = 1e-9;

fn check_partition(n_modes: usize, part: &Bipartition) -> Result<()> {
    if part.n_modes() != n_modes {
        return Err(Error::Partition(format!(
            "bipartition covers {} modes but the state has {}",
            part.n_modes(),
            n_modes
        )));
    }
    Ok(())
}

/// `S(ρ_A) − S(ρ)` in bits, with A the first side of the bipartition.
///
/// For a pure state this is the entanglement entropy of the cut; positive
/// values on mixed states still witness quantum correlation, while
/// sufficiently mixed states drive it negative (the maximally mixed pair of
/// qubits gives 1 − 2 = −1).
pub fn conditional_entropy(rho: &FockDensityOperator, part: &Bipartition) -> Result<f64> {
    check_partition(rho.n_modes(), part)?;
    let reduced = rho.partial_trace(part.side_a())?;
    Ok(reduced.von_neumann_entropy() - rho.von_neumann_entropy())
}

/// The same functional evaluated on the Gaussian state with covariance Γ.
///
/// Only second moments enter: `gaussian_entropy(Γ_A) − gaussian_entropy(Γ)`.
pub fn gaussian_conditional_entropy(cm: &CovarianceMatrix, part: &Bipartition) -> Result<f64> {
    check_partition(cm.n_modes(), part)?;
    let state = GaussianState::new(MeansVector::zeros(cm.n_modes()), cm.clone())?;
    let reduced = reduce_gaussian(&state, part.side_a())?;
    Ok(gaussian_entropy(reduced.cm())? - gaussian_entropy(cm)?)
}

/// The Gaussian state sharing ρ's first and second moments.
pub fn gaussian_reference(rho: &FockDensityOperator) -> Result<GaussianState> {
    let (means, cm) = rho.extract_moments()?;
    GaussianState::new(means, cm)
}

/// The two-mode family |φ⟩ = √(1−λ²)|00⟩ + λ|11⟩ on dims (3, 3), together
/// with its covariance matrix in closed form.
///
/// Both marginals have ν = 1 + 2λ² on the diagonal; the cross-mode entries
/// carry k = 2λ√(1−λ²), positive for Q₁Q₂ and negative for P₁P₂.  The state
/// is supported on two levels per mode, so the (3, 3) register represents
/// it — and its moments — exactly.
///
/// At λ = 1/4 the log-negativity of the state itself falls below that of
/// its Gaussian counterpart: matched second moments do not order E_N.
pub fn counterexample_phi(lambda: f64) -> Result<(FockDensityOperator, CovarianceMatrix)> {
    if !lambda.is_finite() || lambda <= 0.0 || lambda >= 1.0 {
        return Err(Error::Domain(format!(
            "the counterexample family needs 0 < lambda < 1, got {lambda}"
        )));
    }
    let mut coeffs = vec![Complex64::ZERO; 9];
    coeffs[0] = Complex64::new((1.0 - lambda * lambda).sqrt(), 0.0);
    coeffs[4] = Complex64::new(lambda, 0.0);
    let rho = FockDensityOperator::build_pure_state(&[3, 3], &coeffs)?;

    let nu = 1.0 + 2.0 * lambda * lambda;
    let k = 2.0 * lambda * (1.0 - lambda * lambda).sqrt();
    let mut g = DMatrix::from_diagonal_element(4, 4, nu);
    g[(0, 2)] = k;
    g[(2, 0)] = k;
    g[(1, 3)] = -k;
    g[(3, 1)] = -k;
    Ok((rho, CovarianceMatrix::new(g)?))
}

/// One side of an extremality comparison — the state itself or its Gaussian
/// counterpart — evaluated with a fixed bipartition.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantitySet {
    /// Total von Neumann entropy S, in bits.
    pub entropy: f64,
    /// Entropy of the reduced state on side A.
    pub reduced_entropy: f64,
    /// S(ρ_A) − S(ρ).
    pub conditional_entropy: f64,
    /// Log-negativity across the cut, in bits.
    pub log_negativity: f64,
    /// Gaussian side: the partial-transpose criterion on Γ.  Fock side: a
    /// nonpositive partial transpose, i.e. E_N above tolerance.
    pub distillable: bool,
}

/// Directional checks attached to a report.
///
/// The two entropy functionals have a guaranteed side, asserted with
/// [`INEQUALITY_TOL`] slack.  The negativity has none, so only its signed
/// margin and the observed direction are recorded.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalityVerdicts {
    /// S(ρ_G) ≥ S(ρ): the Gaussian counterpart attains the maximum entropy.
    pub max_entropy_holds: bool,
    /// [S_A − S](ρ) ≥ [S_A − S](ρ_G).
    pub conditional_extremality_holds: bool,
    /// E_N(ρ) − E_N(ρ_G); either sign occurs.
    pub negativity_margin: f64,
    /// Whether the Gaussian side's negativity strictly exceeds the state's
    /// own — true for the λ = 1/4 counterexample.
    pub gaussian_negativity_exceeds: bool,
    /// The partial-transpose criterion on Γ.  Because the Gaussian state
    /// with the state's own moments is a lower bound in every distillation
    /// protocol's sense, a distillable Γ certifies the state itself.
    pub distillable_by_cm: bool,
}

/// Paired evaluation of a state and its Gaussian counterpart.
#[derive(Clone, Debug)]
pub struct ExtremalityReport {
    /// Free-form tag carried into serialized output.
    pub state_label: String,
    /// Covariance matrix shared by both sides.
    pub cm: CovarianceMatrix,
    /// Quantities evaluated on the state itself.
    pub fock: QuantitySet,
    /// Quantities evaluated on the Gaussian counterpart, derived from the
    /// extracted (d, Γ) alone.
    pub gaussian: QuantitySet,
    /// Inequality outcomes for the pair.
    pub verdicts: ExtremalityVerdicts,
}

/// Evaluate both sides of the extremality comparison for one state.
///
/// The Fock side uses the spectral entropies and the exact partial
/// transpose of the truncated operator; the Gaussian side is computed from
/// the extracted moments alone.  The leakage guard inside moment extraction
/// rejects inputs whose top levels are too occupied for the comparison to
/// be meaningful.
pub fn extremality_report(
    rho: &FockDensityOperator,
    part: &Bipartition,
) -> Result<ExtremalityReport> {
    check_partition(rho.n_modes(), part)?;
    let (means, cm) = rho.extract_moments()?;

    let entropy = rho.von_neumann_entropy();
    let reduced_entropy = rho.partial_trace(part.side_a())?.von_neumann_entropy();
    let log_negativity = rho.log_negativity_fock(part)?;
    let fock = QuantitySet {
        entropy,
        reduced_entropy,
        conditional_entropy: reduced_entropy - entropy,
        log_negativity,
        distillable: log_negativity > INEQUALITY_TOL,
    };

    let g_state = GaussianState::new(means, cm.clone())?;
    let entropy = gaussian_entropy(&cm)?;
    let reduced_entropy = gaussian_entropy(reduce_gaussian(&g_state, part.side_a())?.cm())?;
    let log_negativity = log_negativity_gaussian(&cm, part)?;
    let distillable = is_distillable_gaussian(&cm, part, DEFAULT_TOL)?;
    let gaussian = QuantitySet {
        entropy,
        reduced_entropy,
        conditional_entropy: reduced_entropy - entropy,
        log_negativity,
        distillable,
    };

    let verdicts = ExtremalityVerdicts {
        max_entropy_holds: gaussian.entropy >= fock.entropy - INEQUALITY_TOL,
        conditional_extremality_holds: fock.conditional_entropy
            >= gaussian.conditional_entropy - INEQUALITY_TOL,
        negativity_margin: fock.log_negativity - gaussian.log_negativity,
        gaussian_negativity_exceeds: gaussian.log_negativity
            > fock.log_negativity + INEQUALITY_TOL,
        distillable_by_cm: distillable,
    };

    Ok(ExtremalityReport {
        state_label: "state".to_owned(),
        cm,
        fock,
        gaussian,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pure(dims: &[usize], entries: &[(usize, f64)]) -> FockDensityOperator {
        let len: usize = dims.iter().product();
        let mut coeffs = vec![Complex64::ZERO; len];
        for &(idx, amp) in entries {
            coeffs[idx] = c(amp, 0.0);
        }
        FockDensityOperator::build_pure_state(dims, &coeffs).unwrap()
    }

    fn cut_first(n: usize) -> Bipartition {
        Bipartition::new(n, &[0]).unwrap()
    }

    #[test]
    fn conditional_entropy_on_reference_states() {
        // Pure product: both entropies vanish.
        let prod = pure(&[3, 3], &[(3, 1.0)]);
        let f = conditional_entropy(&prod, &cut_first(2)).unwrap();
        assert_abs_diff_eq!(f, 0.0, epsilon = 1e-12);

        // Maximally mixed pair of qubits: S_A = 1, S = 2.
        let mixed =
            FockDensityOperator::from_matrix(&[2, 2], DMatrix::from_diagonal_element(4, 4, c(0.25, 0.0)))
                .unwrap();
        let f = conditional_entropy(&mixed, &cut_first(2)).unwrap();
        assert_abs_diff_eq!(f, -1.0, epsilon = 1e-12);

        // Pure entangled: the entanglement entropy h₂(λ²) at λ = 1/4.
        let (phi, _) = counterexample_phi(0.25).unwrap();
        let f = conditional_entropy(&phi, &cut_first(2)).unwrap();
        assert_abs_diff_eq!(f, 0.3372900666170139, epsilon = 1e-12);
    }

    #[test]
    fn gaussian_conditional_entropy_matches_frozen_values() {
        let part = cut_first(2);

        let vac = GaussianState::vacuum(2);
        let f = gaussian_conditional_entropy(vac.cm(), &part).unwrap();
        assert_abs_diff_eq!(f, 0.0, epsilon = 1e-12);

        // h(1.125) − S(Γ_φ) at λ = 1/4.
        let (_, cm) = counterexample_phi(0.25).unwrap();
        let f = gaussian_conditional_entropy(&cm, &part).unwrap();
        assert_abs_diff_eq!(f, 0.2117677411206828, epsilon = 1e-12);

        // Thermal ⊗ vacuum: the pure factor contributes nothing, so the
        // reduced and total entropies cancel.
        let th = GaussianState::thermal(1, 0.7).unwrap();
        let mut g = DMatrix::identity(4, 4);
        g[(0, 0)] = th.cm().matrix()[(0, 0)];
        g[(1, 1)] = th.cm().matrix()[(1, 1)];
        let cm = CovarianceMatrix::new(g).unwrap();
        let f = gaussian_conditional_entropy(&cm, &part).unwrap();
        assert_abs_diff_eq!(f, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn counterexample_cm_matches_extracted_moments() {
        let (rho, cm) = counterexample_phi(0.25).unwrap();
        assert_abs_diff_eq!(cm.matrix()[(0, 0)], 1.125, epsilon = 1e-15);
        assert_abs_diff_eq!(cm.matrix()[(0, 2)], 0.4841229182759271, epsilon = 1e-15);
        assert_abs_diff_eq!(cm.matrix()[(1, 3)], -0.4841229182759271, epsilon = 1e-15);

        // The closed form and the moment extraction agree exactly: the
        // state is supported two levels below every register cut.
        let (means, extracted) = rho.extract_moments().unwrap();
        assert_abs_diff_eq!(means.vector().norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            (extracted.matrix() - cm.matrix()).norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn counterexample_rejects_degenerate_weights() {
        for bad in [0.0, 1.0, -0.2, 1.3, f64::NAN] {
            assert!(matches!(
                counterexample_phi(bad),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn counterexample_negativities_at_quarter() {
        let (rho, cm) = counterexample_phi(0.25).unwrap();
        let part = cut_first(2);
        let en_fock = rho.log_negativity_fock(&part).unwrap();
        let en_gauss = log_negativity_gaussian(&cm, &part).unwrap();
        assert_abs_diff_eq!(en_fock, 0.5696105840364359, epsilon = 1e-10);
        assert_abs_diff_eq!(en_gauss, 0.6418804160340621, epsilon = 1e-10);
        assert!(en_gauss > en_fock);
    }

    #[test]
    fn counterexample_negativities_vanish_with_the_weight() {
        let (rho, cm) = counterexample_phi(1e-4).unwrap();
        let part = cut_first(2);
        let en_fock = rho.log_negativity_fock(&part).unwrap();
        let en_gauss = log_negativity_gaussian(&cm, &part).unwrap();
        assert!(en_fock >= 0.0 && en_fock < 1e-3);
        assert!(en_gauss >= 0.0 && en_gauss < 1e-3);
    }

    #[test]
    fn report_on_gaussian_representable_inputs_is_tight() {
        // Vacuum: both sides coincide on every quantity.
        let vac = pure(&[3, 3], &[(0, 1.0)]);
        let report = extremality_report(&vac, &cut_first(2)).unwrap();
        assert_abs_diff_eq!(report.fock.entropy, report.gaussian.entropy, epsilon = 1e-8);
        assert_abs_diff_eq!(
            report.fock.reduced_entropy,
            report.gaussian.reduced_entropy,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            report.fock.log_negativity,
            report.gaussian.log_negativity,
            epsilon = 1e-8
        );
        assert!(report.verdicts.max_entropy_holds);
        assert!(report.verdicts.conditional_extremality_holds);
        assert!(!report.verdicts.gaussian_negativity_exceeds);
        assert!(!report.verdicts.distillable_by_cm);
        assert!(!report.fock.distillable && !report.gaussian.distillable);

        // A displaced Gaussian-representable product: coherent ⊗ vacuum.
        let coh = FockDensityOperator::coherent(15, c(0.4, -0.3)).unwrap();
        let joint = FockDensityOperator::tensor_product(&coh, &pure(&[3], &[(0, 1.0)])).unwrap();
        let report = extremality_report(&joint, &cut_first(2)).unwrap();
        assert_abs_diff_eq!(report.fock.entropy, report.gaussian.entropy, epsilon = 1e-8);
        assert!(report.verdicts.negativity_margin.abs() < 1e-8);
    }

    #[test]
    fn report_flags_the_quarter_counterexample() {
        let (rho, _) = counterexample_phi(0.25).unwrap();
        let report = extremality_report(&rho, &cut_first(2)).unwrap();

        assert!(report.verdicts.max_entropy_holds);
        assert_abs_diff_eq!(
            report.gaussian.entropy - report.fock.entropy,
            0.13116152770780282,
            epsilon = 1e-10
        );

        assert!(report.verdicts.conditional_extremality_holds);
        assert_abs_diff_eq!(
            report.fock.conditional_entropy - report.gaussian.conditional_entropy,
            0.12552232549633108,
            epsilon = 1e-10
        );

        // The reversal: the Gaussian counterpart carries strictly more
        // negativity than the state it models.
        assert!(report.verdicts.gaussian_negativity_exceeds);
        assert_abs_diff_eq!(
            report.verdicts.negativity_margin,
            0.5696105840364359 - 0.6418804160340621,
            epsilon = 1e-10
        );
        assert!(report.fock.distillable);
        assert!(report.gaussian.distillable);
        assert!(report.verdicts.distillable_by_cm);
    }

    #[test]
    fn partition_size_mismatch_is_rejected() {
        let (rho, cm) = counterexample_phi(0.25).unwrap();
        let part = Bipartition::new(3, &[0]).unwrap();
        assert!(matches!(
            conditional_entropy(&rho, &part),
            Err(Error::Partition(_))
        ));
        assert!(matches!(
            gaussian_conditional_entropy(&cm, &part),
            Err(Error::Partition(_))
        ));
        assert!(matches!(
            extremality_report(&rho, &part),
            Err(Error::Partition(_))
        ));
    }
}
