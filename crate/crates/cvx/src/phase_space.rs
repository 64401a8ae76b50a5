//! Phase-space description of continuous-variable states.
//!
//! An N-mode system carries canonical operators ordered as
//! (Q₁, P₁, …, Q_N, P_N). The symplectic form in this ordering is the
//! block-diagonal matrix σ = ⊕_j [[0, 1], [−1, 0]], and commutation reads
//! [R_k, R_l] = i·σ_kl (ħ = 1).
//!
//! First and second moments use the anticommutator convention
//!
//! > Γ_kl = tr[ρ {R_k − d_k, R_l − d_l}₊],  d_k = tr[ρ R_k],
//!
//! so the vacuum has Γ = 𝟙 and a physical Γ satisfies Γ + iσ ⪰ 0. A Gaussian
//! state is fixed by (d, Γ) through its characteristic function
//!
//! > χ(ξ) = exp(i·ξᵀd − ¼·ξᵀΓξ).
//!
//! All entropies and negativities in this crate are reported in bits.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Default numerical tolerance for validity, symmetry and symplecticity
/// certificates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// The symplectic form σ for `n_modes` modes: ⊕ [[0, 1], [−1, 0]].
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for j in 0..n_modes {
        s[(2 * j, 2 * j + 1)] = 1.0;
        s[(2 * j + 1, 2 * j)] = -1.0;
    }
    s
}

fn check_phase_space_shape(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape {
            rows: m.nrows(),
            cols: m.ncols(),
            reason: "phase-space matrices must be square",
        });
    }
    if m.nrows() == 0 || m.nrows() % 2 != 0 {
        return Err(Error::Shape {
            rows: m.nrows(),
            cols: m.ncols(),
            reason: "phase-space matrices must have even dimension 2N ≥ 2",
        });
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    Ok(m.nrows() / 2)
}

// ---------------------------------------------------------------------------
// Covariance matrices
// ---------------------------------------------------------------------------

/// Outcome of checking a candidate covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CmVerdict {
    /// Symmetric and Γ + iσ ⪰ 0 within tolerance.
    Valid,
    /// Symmetry fails; carries the largest entry of |Γ − Γᵀ|.
    NotSymmetric { asymmetry: f64 },
    /// The uncertainty relation fails; carries min eig(Γ + iσ).
    ViolatesUncertainty { min_eigenvalue: f64 },
}

/// Check whether `mat` is a physical covariance matrix.
///
/// Shape problems (non-square, odd dimension, non-finite entries) are hard
/// errors; symmetry and the uncertainty relation Γ + iσ ⪰ 0 are reported in
/// the verdict so callers can triage unphysical inputs.
pub fn validate_cm(mat: &DMatrix<f64>, tol: f64) -> Result<CmVerdict> {
    let n_modes = check_phase_space_shape(mat)?;
    let asym = linalg::asymmetry(mat);
    if asym > tol {
        return Ok(CmVerdict::NotSymmetric { asymmetry: asym });
    }
    // Γ + iσ is Hermitian; its minimum eigenvalue certifies the uncertainty
    // relation.
    let mut h = linalg::to_complex(mat);
    let sigma = symplectic_form(n_modes);
    for i in 0..2 * n_modes {
        for j in 0..2 * n_modes {
            h[(i, j)] += Complex64::new(0.0, sigma[(i, j)]);
        }
    }
    let min = linalg::herm_eigenvalues(&h)[0];
    if min < -tol {
        return Ok(CmVerdict::ViolatesUncertainty { min_eigenvalue: min });
    }
    Ok(CmVerdict::Valid)
}

/// A validated covariance matrix. The stored matrix is exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    mat: DMatrix<f64>,
    n_modes: usize,
}

impl CovarianceMatrix {
    /// Validate with [`DEFAULT_TOL`].
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        Self::with_tol(mat, DEFAULT_TOL)
    }

    /// Validate with an explicit tolerance, then store a symmetrized copy.
    pub fn with_tol(mut mat: DMatrix<f64>, tol: f64) -> Result<Self> {
        let n_modes = check_phase_space_shape(&mat)?;
        match validate_cm(&mat, tol)? {
            CmVerdict::Valid => {}
            CmVerdict::NotSymmetric { asymmetry } => return Err(Error::NotSymmetric(asymmetry)),
            CmVerdict::ViolatesUncertainty { min_eigenvalue } => {
                return Err(Error::Uncertainty(min_eigenvalue))
            }
        }
        linalg::symmetrize(&mut mat);
        Ok(CovarianceMatrix { mat, n_modes })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.mat
    }
}

// ---------------------------------------------------------------------------
// Means and states
// ---------------------------------------------------------------------------

/// First moments d_k = tr[ρ R_k] in canonical ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct MeansVector {
    v: DVector<f64>,
}

impl MeansVector {
    pub fn new(v: DVector<f64>) -> Result<Self> {
        if v.len() == 0 || v.len() % 2 != 0 {
            return Err(Error::Length {
                expected: v.len() + v.len() % 2,
                got: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("means vector"));
        }
        Ok(MeansVector { v })
    }

    pub fn zeros(n_modes: usize) -> Self {
        MeansVector {
            v: DVector::zeros(2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.v.len() / 2
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.v
    }
}

/// A Gaussian state, given by its means and covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    means: MeansVector,
    cm: CovarianceMatrix,
}

impl GaussianState {
    pub fn new(means: MeansVector, cm: CovarianceMatrix) -> Result<Self> {
        if means.n_modes() != cm.n_modes() {
            return Err(Error::Length {
                expected: 2 * cm.n_modes(),
                got: 2 * means.n_modes(),
            });
        }
        Ok(GaussianState { means, cm })
    }

    /// The N-mode vacuum: d = 0, Γ = 𝟙.
    pub fn vacuum(n_modes: usize) -> Self {
        GaussianState {
            means: MeansVector::zeros(n_modes),
            cm: CovarianceMatrix::new(DMatrix::identity(2 * n_modes, 2 * n_modes))
                .expect("identity is a valid covariance matrix"),
        }
    }

    /// An N-mode thermal state with `nbar` mean photons per mode:
    /// Γ = (2·nbar + 1)·𝟙.
    pub fn thermal(n_modes: usize, nbar: f64) -> Result<Self> {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::Domain(format!(
                "thermal occupation must be finite and ≥ 0, got {nbar}"
            )));
        }
        let g = (2.0 * nbar + 1.0) * DMatrix::identity(2 * n_modes, 2 * n_modes);
        Ok(GaussianState {
            means: MeansVector::zeros(n_modes),
            cm: CovarianceMatrix::new(g)?,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.cm.n_modes()
    }

    pub fn means(&self) -> &MeansVector {
        &self.means
    }

    pub fn cm(&self) -> &CovarianceMatrix {
        &self.cm
    }

    /// A Gaussian state is pure iff every symplectic eigenvalue equals 1.
    pub fn is_pure(&self, tol: f64) -> Result<bool> {
        let nus = symplectic_eigenvalues(self.cm.matrix())?;
        Ok(nus.iter().all(|nu| (nu - 1.0).abs() <= tol))
    }
}

// ---------------------------------------------------------------------------
// Bipartitions and energy budgets
// ---------------------------------------------------------------------------

/// A two-block split of the modes 0..n_modes. Both sides are non-empty,
/// sorted, and disjoint by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n_modes: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Bipartition {
    /// Build a bipartition from the modes of side A; side B is the
    /// complement.
    pub fn new(n_modes: usize, a_modes: &[usize]) -> Result<Self> {
        let mut a: Vec<usize> = a_modes.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != a_modes.len() {
            return Err(Error::Partition("duplicate modes on side A".into()));
        }
        if let Some(&bad) = a.iter().find(|&&m| m >= n_modes) {
            return Err(Error::ModeIndex {
                index: bad,
                n_modes,
            });
        }
        let b: Vec<usize> = (0..n_modes).filter(|m| !a.contains(m)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::Partition(
                "both sides of a bipartition must be non-empty".into(),
            ));
        }
        Ok(Bipartition { n_modes, a, b })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn side_a(&self) -> &[usize] {
        &self.a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.b
    }
}

/// A mean-energy budget tr[ρ Σ_j (Q_j² + P_j²)] ≤ κ.
///
/// The vacuum already carries energy 1 per mode under this convention, so a
/// feasible budget requires κ ≥ N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyConstraint {
    kappa: f64,
    n_modes: usize,
}

impl EnergyConstraint {
    pub fn new(kappa: f64, n_modes: usize) -> Result<Self> {
        if !kappa.is_finite() || kappa < n_modes as f64 {
            return Err(Error::Domain(format!(
                "energy budget κ = {kappa} is below the vacuum floor {n_modes}"
            )));
        }
        Ok(EnergyConstraint { kappa, n_modes })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }
}

// ---------------------------------------------------------------------------
// Characteristic function, spectra, entropy
// ---------------------------------------------------------------------------

/// Gaussian characteristic function χ(ξ) = exp(i·ξᵀd − ¼·ξᵀΓξ).
pub fn gaussian_chi(state: &GaussianState, xi: &[f64]) -> Result<Complex64> {
    let dim = 2 * state.n_modes();
    if xi.len() != dim {
        return Err(Error::Length {
            expected: dim,
            got: xi.len(),
        });
    }
    if xi.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("phase-space argument ξ"));
    }
    let xi = DVector::from_column_slice(xi);
    let phase = state.means.vector().dot(&xi);
    let quad = (state.cm.matrix() * &xi).dot(&xi);
    Ok(Complex64::new(0.0, phase).exp() * (-0.25 * quad).exp())
}

/// Symplectic eigenvalues of a symmetric positive-definite matrix, in
/// descending order.
///
/// Computed as the positive spectrum of the Hermitian matrix
/// i·Γ^{1/2}·σ·Γ^{1/2}, which shares its moduli with the eigenvalues of iσΓ
/// but keeps the computation inside a symmetric eigenproblem. A physical Γ
/// has every ν_k ≥ 1; this function only requires Γ ≻ 0 so that it can also
/// be applied to partially transposed covariance matrices.
pub fn symplectic_eigenvalues(mat: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n_modes = check_phase_space_shape(mat)?;
    let asym = linalg::asymmetry(mat);
    if asym > DEFAULT_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let root = linalg::spd_sqrt(mat)?;
    let mut core = &root * symplectic_form(n_modes) * &root;
    // root·σ·root is antisymmetric; i times it is Hermitian.
    for i in 0..2 * n_modes {
        for j in (i + 1)..2 * n_modes {
            let avg = 0.5 * (core[(i, j)] - core[(j, i)]);
            core[(i, j)] = avg;
            core[(j, i)] = -avg;
        }
    }
    let herm = core.map(|x| Complex64::new(0.0, x));
    let mut moduli: Vec<f64> = linalg::herm_eigenvalues(&herm)
        .into_iter()
        .map(f64::abs)
        .collect();
    // The spectrum is symmetric about zero: (ν₁, ν₁, ν₂, ν₂, …) after taking
    // absolute values. Keep one representative per pair.
    moduli.sort_by(|a, b| b.total_cmp(a));
    Ok(moduli.into_iter().step_by(2).collect())
}

/// Entropy contribution of one symplectic eigenvalue, in bits.
pub(crate) fn nu_entropy(nu: f64) -> f64 {
    // Physical ν may sit at 1 − O(tol); clamp so the second term vanishes
    // instead of going NaN.
    let nu = nu.max(1.0);
    let up = (nu + 1.0) / 2.0;
    let dn = (nu - 1.0) / 2.0;
    let up_term = up * up.log2();
    let dn_term = if dn > 0.0 { dn * dn.log2() } else { 0.0 };
    up_term - dn_term
}

/// Von Neumann entropy of a Gaussian state in bits:
/// S = Σ_k h(ν_k) with h(ν) = ((ν+1)/2)·log₂((ν+1)/2) − ((ν−1)/2)·log₂((ν−1)/2).
pub fn gaussian_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    let nus = symplectic_eigenvalues(cm.matrix())?;
    Ok(nus.into_iter().map(nu_entropy).sum())
}

// ---------------------------------------------------------------------------
// Partial transposition, negativity, distillability
// ---------------------------------------------------------------------------

/// Covariance matrix of the partial transpose: momenta on side B flip sign,
/// Γ ↦ PΓP with P = diag(…, 1, −1 on B's momenta, …).
///
/// The result is symmetric and positive definite (it is a congruence of Γ)
/// but need not satisfy the uncertainty relation — that failure is exactly
/// what [`log_negativity_gaussian`] detects.
pub fn partial_transpose_cm(cm: &CovarianceMatrix, part: &Bipartition) -> Result<DMatrix<f64>> {
    if part.n_modes() != cm.n_modes() {
        return Err(Error::Partition(format!(
            "bipartition covers {} modes but the state has {}",
            part.n_modes(),
            cm.n_modes()
        )));
    }
    let mut out = cm.matrix().clone();
    for &m in part.side_b() {
        let p = 2 * m + 1;
        for k in 0..out.nrows() {
            out[(k, p)] = -out[(k, p)];
        }
        for k in 0..out.ncols() {
            out[(p, k)] = -out[(p, k)];
        }
    }
    Ok(out)
}

/// Logarithmic negativity of a Gaussian state across `part`, in bits:
/// E_N = Σ_k max(0, −log₂ ν̃_k) over the symplectic spectrum ν̃ of the
/// partially transposed covariance matrix.
pub fn log_negativity_gaussian(cm: &CovarianceMatrix, part: &Bipartition) -> Result<f64> {
    let pt = partial_transpose_cm(cm, part)?;
    let nus = symplectic_eigenvalues(&pt)?;
    Ok(nus.into_iter().map(|nu| (-nu.log2()).max(0.0)).sum())
}

/// Distillability of a Gaussian state across `part`.
///
/// For Gaussian states, distillable entanglement is non-zero exactly when
/// the partial transpose is non-positive, i.e. when the smallest symplectic
/// eigenvalue of the partially transposed covariance matrix drops below 1.
/// `tol` guards the boundary: the verdict is ν̃_min < 1 − tol.
pub fn is_distillable_gaussian(
    cm: &CovarianceMatrix,
    part: &Bipartition,
    tol: f64,
) -> Result<bool> {
    let pt = partial_transpose_cm(cm, part)?;
    let nus = symplectic_eigenvalues(&pt)?;
    let min = nus.last().copied().unwrap_or(1.0);
    Ok(min < 1.0 - tol)
}

// ---------------------------------------------------------------------------
// Mode maps
// ---------------------------------------------------------------------------

/// Restrict a Gaussian state to `keep` (sorted, deduplicated): the reduced
/// state of a Gaussian state is Gaussian with the corresponding sub-vector
/// and principal sub-matrix.
pub fn reduce_gaussian(state: &GaussianState, keep: &[usize]) -> Result<GaussianState> {
    let n = state.n_modes();
    let mut modes: Vec<usize> = keep.to_vec();
    modes.sort_unstable();
    modes.dedup();
    if modes.len() != keep.len() {
        return Err(Error::Partition("duplicate modes in reduction".into()));
    }
    if modes.is_empty() {
        return Err(Error::Partition("reduction must keep at least one mode".into()));
    }
    if let Some(&bad) = modes.iter().find(|&&m| m >= n) {
        return Err(Error::ModeIndex {
            index: bad,
            n_modes: n,
        });
    }
    let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
    let mut sub = DMatrix::zeros(idx.len(), idx.len());
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            sub[(r, c)] = state.cm.matrix()[(i, j)];
        }
    }
    let means = DVector::from_iterator(idx.len(), idx.iter().map(|&i| state.means.vector()[i]));
    GaussianState::new(MeansVector::new(means)?, CovarianceMatrix::new(sub)?)
}

/// Apply a symplectic map: d ↦ S·d, Γ ↦ S·Γ·Sᵀ. `s` must satisfy
/// S·σ·Sᵀ = σ within [`DEFAULT_TOL`].
pub fn apply_symplectic(state: &GaussianState, s: &DMatrix<f64>) -> Result<GaussianState> {
    let n = state.n_modes();
    if s.nrows() != 2 * n || s.ncols() != 2 * n {
        return Err(Error::Shape {
            rows: s.nrows(),
            cols: s.ncols(),
            reason: "symplectic matrix must be 2N x 2N for the state's N",
        });
    }
    let sigma = symplectic_form(n);
    let defect = (s * &sigma * s.transpose() - &sigma)
        .iter()
        .fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if defect > DEFAULT_TOL {
        return Err(Error::NotSymplectic(defect));
    }
    let mut g = s * state.cm.matrix() * s.transpose();
    linalg::symmetrize(&mut g);
    let d = s * state.means.vector();
    GaussianState::new(MeansVector::new(d)?, CovarianceMatrix::new(g)?)
}

/// Mean energy tr[ρ Σ_j (Q_j² + P_j²)] of a Gaussian state:
/// Σ_j [(Γ_qq + Γ_pp)/2 + d_q² + d_p²], so the vacuum carries 1 per mode.
pub fn energy_of_gaussian(state: &GaussianState) -> f64 {
    let g = state.cm.matrix();
    let d = state.means.vector();
    (0..state.n_modes())
        .map(|j| {
            let (q, p) = (2 * j, 2 * j + 1);
            0.5 * (g[(q, q)] + g[(p, p)]) + d[q] * d[q] + d[p] * d[p]
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    /// Two-mode covariance matrix of √(1−λ²)|00⟩ + λ|11⟩:
    /// diagonal 1 + 2λ², QQ coupling +2λ√(1−λ²), PP coupling −2λ√(1−λ²).
    fn two_mode_coupled_cm(lambda: f64) -> DMatrix<f64> {
        let nu = 1.0 + 2.0 * lambda * lambda;
        let k = 2.0 * lambda * (1.0 - lambda * lambda).sqrt();
        DMatrix::from_row_slice(
            4,
            4,
            &[
                nu, 0.0, k, 0.0, //
                0.0, nu, 0.0, -k, //
                k, 0.0, nu, 0.0, //
                0.0, -k, 0.0, nu,
            ],
        )
    }

    #[test]
    fn symplectic_form_shape_and_entries() {
        let s = symplectic_form(2);
        assert_eq!(s.nrows(), 4);
        assert_eq!(s[(0, 1)], 1.0);
        assert_eq!(s[(1, 0)], -1.0);
        assert_eq!(s[(2, 3)], 1.0);
        assert_eq!(s[(0, 2)], 0.0);
        // σᵀ = −σ, σ² = −1.
        assert_eq!(s.transpose(), -s.clone());
        assert_eq!(&s * &s, -DMatrix::<f64>::identity(4, 4));
    }

    #[test]
    fn vacuum_is_valid_and_pure() {
        let v = GaussianState::vacuum(3);
        assert_eq!(
            validate_cm(v.cm().matrix(), DEFAULT_TOL).unwrap(),
            CmVerdict::Valid
        );
        assert!(v.is_pure(1e-9).unwrap());
        assert_abs_diff_eq!(gaussian_entropy(v.cm()).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(energy_of_gaussian(&v), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn validate_cm_flags_uncertainty_violation() {
        // Half the vacuum variance on both quadratures is unphysical:
        // min eig(0.5·𝟙 + iσ) = −0.5.
        let m = 0.5 * DMatrix::identity(2, 2);
        match validate_cm(&m, 1e-9).unwrap() {
            CmVerdict::ViolatesUncertainty { min_eigenvalue } => {
                assert_abs_diff_eq!(min_eigenvalue, -0.5, epsilon = 1e-12);
            }
            other => panic!("expected uncertainty violation, got {other:?}"),
        }
    }

    #[test]
    fn validate_cm_flags_asymmetry_and_rejects_odd_dims() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.0, 1.0]);
        assert!(matches!(
            validate_cm(&m, 1e-9).unwrap(),
            CmVerdict::NotSymmetric { .. }
        ));
        let odd = DMatrix::identity(3, 3);
        assert!(validate_cm(&odd, 1e-9).is_err());
    }

    #[test]
    fn squeezed_vacuum_is_valid_and_pure_for_any_squeezing() {
        for &r in &[0.1_f64, 1.0, 3.0] {
            let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
                (2.0 * r).exp(),
                (-2.0 * r).exp(),
            ]));
            assert_eq!(validate_cm(&m, 1e-9).unwrap(), CmVerdict::Valid);
            let nus = symplectic_eigenvalues(&m).unwrap();
            assert_abs_diff_eq!(nus[0], 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn gaussian_chi_of_vacuum_and_displaced_vacuum() {
        let v = GaussianState::vacuum(1);
        let xi = [1.0, -0.5];
        let norm2: f64 = xi.iter().map(|x| x * x).sum();
        let chi = gaussian_chi(&v, &xi).unwrap();
        assert_abs_diff_eq!(chi.re, (-norm2 / 4.0).exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(chi.im, 0.0, epsilon = 1e-14);

        // Displacement multiplies χ by the plane wave exp(i·ξᵀd).
        let d = MeansVector::new(DVector::from_vec(vec![2.0_f64.sqrt(), 0.0])).unwrap();
        let disp = GaussianState::new(
            d,
            CovarianceMatrix::new(DMatrix::identity(2, 2)).unwrap(),
        )
        .unwrap();
        let chi_d = gaussian_chi(&disp, &xi).unwrap();
        let phase = Complex64::new(0.0, 2.0_f64.sqrt() * xi[0]).exp();
        assert_abs_diff_eq!((chi_d - chi * phase).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn symplectic_eigenvalues_of_thermal_and_coupled_states() {
        // Single thermal mode: Γ = (2n̄+1)·𝟙 has ν = 2n̄+1.
        let m = 2.0 * DMatrix::identity(2, 2);
        assert_abs_diff_eq!(symplectic_eigenvalues(&m).unwrap()[0], 2.0, epsilon = 1e-12);

        // Two-mode coupled state at λ = 1/4: both symplectic eigenvalues are
        // √(ν² − k²) = √1.03125.
        let g = two_mode_coupled_cm(0.25);
        let nus = symplectic_eigenvalues(&g).unwrap();
        assert_eq!(nus.len(), 2);
        let want = 1.03125_f64.sqrt();
        assert_abs_diff_eq!(nus[0], want, epsilon = 1e-12);
        assert_abs_diff_eq!(nus[1], want, epsilon = 1e-12);
    }

    #[test]
    fn symplectic_eigenvalues_match_direct_route_on_random_cms() {
        // Independent route: moduli of the (purely imaginary-paired)
        // eigenvalues of σΓ, via the general complex eigensolver.
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n_modes = 1 + (rng.random::<u32>() % 3) as usize;
            let dim = 2 * n_modes;
            let a = DMatrix::from_fn(dim, dim, |_, _| rng.random::<f64>() * 2.0 - 1.0);
            // A·Aᵀ + 𝟙 ⪰ 𝟙 is always a valid covariance matrix.
            let g = &a * a.transpose() + DMatrix::identity(dim, dim);
            let via_sqrt = symplectic_eigenvalues(&g).unwrap();

            let product = symplectic_form(n_modes) * &g;
            let mut direct: Vec<f64> = product
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .collect();
            direct.sort_by(|a, b| b.total_cmp(a));
            let direct: Vec<f64> = direct.into_iter().step_by(2).collect();

            for (x, y) in via_sqrt.iter().zip(direct.iter()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn symplectic_eigenvalues_reject_bad_inputs() {
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(
            symplectic_eigenvalues(&asym),
            Err(Error::NotSymmetric(_))
        ));
        let indef = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            symplectic_eigenvalues(&indef),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn thermal_entropy_closed_form() {
        // ν = 2: h(2) = (3/2)·log₂(3/2) − (1/2)·log₂(1/2).
        let want = 1.5 * 1.5_f64.log2() + 0.5;
        let cm = CovarianceMatrix::new(2.0 * DMatrix::identity(2, 2)).unwrap();
        assert_abs_diff_eq!(gaussian_entropy(&cm).unwrap(), want, epsilon = 1e-12);
        assert_abs_diff_eq!(want, 1.377443751081734, epsilon = 1e-14);
    }

    #[test]
    fn entropy_is_additive_and_zero_on_pure_states() {
        let one = CovarianceMatrix::new(3.0 * DMatrix::identity(2, 2)).unwrap();
        let two = CovarianceMatrix::new(3.0 * DMatrix::identity(4, 4)).unwrap();
        assert_abs_diff_eq!(
            2.0 * gaussian_entropy(&one).unwrap(),
            gaussian_entropy(&two).unwrap(),
            epsilon = 1e-12
        );
        let g = two_mode_coupled_cm(0.5);
        let pure = CovarianceMatrix::new(g).unwrap();
        // Globally pure two-mode state: S = 2·h(√(ν²−k²))… which is NOT zero
        // here because Γ describes a correlated pure state only in the
        // two-mode sense; its global symplectic eigenvalues sit above 1.
        // The pure case is the vacuum:
        let vac = CovarianceMatrix::new(DMatrix::identity(4, 4)).unwrap();
        assert_abs_diff_eq!(gaussian_entropy(&vac).unwrap(), 0.0, epsilon = 1e-12);
        assert!(gaussian_entropy(&pure).unwrap() > 0.0);
    }

    #[test]
    fn partial_transpose_flips_pp_coupling() {
        let cm = CovarianceMatrix::new(two_mode_coupled_cm(0.25)).unwrap();
        let part = Bipartition::new(2, &[0]).unwrap();
        let pt = partial_transpose_cm(&cm, &part).unwrap();
        // QQ coupling untouched, PP coupling flipped, diagonal untouched.
        assert_abs_diff_eq!(pt[(0, 2)], cm.matrix()[(0, 2)], epsilon = 1e-15);
        assert_abs_diff_eq!(pt[(1, 3)], -cm.matrix()[(1, 3)], epsilon = 1e-15);
        assert_abs_diff_eq!(pt[(3, 3)], cm.matrix()[(3, 3)], epsilon = 1e-15);
        // Congruence keeps it symmetric positive definite.
        assert!(symplectic_eigenvalues(&pt).is_ok());
    }

    #[test]
    fn log_negativity_of_coupled_state_at_quarter() {
        // ν̃± = (1 + 2λ²) ± 2λ√(1−λ²); E_N = −log₂ ν̃₋ = log₂(1 + k) for this
        // family since ν̃₊ > 1 never contributes.
        let lambda = 0.25_f64;
        let k = 2.0 * lambda * (1.0 - lambda * lambda).sqrt();
        let cm = CovarianceMatrix::new(two_mode_coupled_cm(lambda)).unwrap();
        let part = Bipartition::new(2, &[0]).unwrap();
        let en = log_negativity_gaussian(&cm, &part).unwrap();
        let want = -(1.0 + 2.0 * lambda * lambda - k).log2();
        assert_abs_diff_eq!(en, want, epsilon = 1e-12);
        assert_abs_diff_eq!(en, 0.6418804160340621, epsilon = 1e-10);
    }

    #[test]
    fn product_states_have_zero_negativity_and_are_not_distillable() {
        let cm = CovarianceMatrix::new(DMatrix::identity(4, 4)).unwrap();
        let part = Bipartition::new(2, &[0]).unwrap();
        assert_abs_diff_eq!(
            log_negativity_gaussian(&cm, &part).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(!is_distillable_gaussian(&cm, &part, 1e-9).unwrap());

        let coupled = CovarianceMatrix::new(two_mode_coupled_cm(0.25)).unwrap();
        assert!(is_distillable_gaussian(&coupled, &part, 1e-9).unwrap());
    }

    #[test]
    fn distillability_matches_negativity_positivity() {
        let part = Bipartition::new(2, &[0]).unwrap();
        for &lambda in &[0.05, 0.1, 0.25, 0.5, 0.75] {
            let cm = CovarianceMatrix::new(two_mode_coupled_cm(lambda)).unwrap();
            let en = log_negativity_gaussian(&cm, &part).unwrap();
            let dist = is_distillable_gaussian(&cm, &part, 1e-9).unwrap();
            assert_eq!(dist, en > 1e-9);
        }
    }

    #[test]
    fn reduce_gaussian_takes_principal_submatrix() {
        let lambda = 0.25;
        let cm = CovarianceMatrix::new(two_mode_coupled_cm(lambda)).unwrap();
        let st = GaussianState::new(MeansVector::zeros(2), cm).unwrap();
        let red = reduce_gaussian(&st, &[1]).unwrap();
        assert_eq!(red.n_modes(), 1);
        let nu = 1.0 + 2.0 * lambda * lambda;
        assert_abs_diff_eq!(red.cm().matrix()[(0, 0)], nu, epsilon = 1e-14);
        assert_abs_diff_eq!(red.cm().matrix()[(1, 1)], nu, epsilon = 1e-14);
        assert_abs_diff_eq!(red.cm().matrix()[(0, 1)], 0.0, epsilon = 1e-14);

        assert!(reduce_gaussian(&st, &[2]).is_err());
        assert!(reduce_gaussian(&st, &[0, 0]).is_err());
    }

    #[test]
    fn apply_symplectic_on_beam_splitter_rotation() {
        // Balanced beam splitter on (Q₁,P₁,Q₂,P₂): block rotation by π/4.
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let s = DMatrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, c, 0.0, //
                0.0, c, 0.0, c, //
                -c, 0.0, c, 0.0, //
                0.0, -c, 0.0, c,
            ],
        );
        let vac = GaussianState::vacuum(2);
        let out = apply_symplectic(&vac, &s).unwrap();
        // Vacuum is invariant under passive transformations.
        assert_abs_diff_eq!(
            (out.cm().matrix() - DMatrix::<f64>::identity(4, 4)).norm(),
            0.0,
            epsilon = 1e-12
        );

        // A non-symplectic matrix is rejected.
        let bad = 2.0 * DMatrix::<f64>::identity(4, 4);
        assert!(matches!(
            apply_symplectic(&vac, &bad),
            Err(Error::NotSymplectic(_))
        ));
    }

    #[test]
    fn symplectic_maps_preserve_symplectic_spectrum_and_entropy() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let bs = DMatrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, c, 0.0, //
                0.0, c, 0.0, c, //
                -c, 0.0, c, 0.0, //
                0.0, -c, 0.0, c,
            ],
        );
        for _ in 0..20 {
            let a = DMatrix::from_fn(4, 4, |_, _| rng.random::<f64>() - 0.5);
            let g = &a * a.transpose() + DMatrix::identity(4, 4);
            let cm = CovarianceMatrix::new(g).unwrap();
            let st = GaussianState::new(MeansVector::zeros(2), cm).unwrap();
            let out = apply_symplectic(&st, &bs).unwrap();
            let before = symplectic_eigenvalues(st.cm().matrix()).unwrap();
            let after = symplectic_eigenvalues(out.cm().matrix()).unwrap();
            for (x, y) in before.iter().zip(after.iter()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn energy_accounts_for_variance_and_displacement() {
        // Thermal: Σ⟨Q²+P²⟩ = 2n̄+1 per mode.
        let th = GaussianState::thermal(1, 0.5).unwrap();
        assert_abs_diff_eq!(energy_of_gaussian(&th), 2.0, epsilon = 1e-12);
        // Coherent state at d = (√2, 0): energy 1 + 2 = 3 (so n̄ = 1).
        let d = MeansVector::new(DVector::from_vec(vec![2.0_f64.sqrt(), 0.0])).unwrap();
        let coh = GaussianState::new(
            d,
            CovarianceMatrix::new(DMatrix::identity(2, 2)).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(energy_of_gaussian(&coh), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn energy_constraint_enforces_vacuum_floor() {
        assert!(EnergyConstraint::new(3.0, 1).is_ok());
        assert!(EnergyConstraint::new(0.9, 1).is_err());
        assert!(EnergyConstraint::new(1.5, 2).is_err());
    }

    #[test]
    fn bipartition_rejects_malformed_splits() {
        assert!(Bipartition::new(2, &[0]).is_ok());
        assert!(Bipartition::new(2, &[0, 1]).is_err()); // empty B side
        assert!(Bipartition::new(2, &[]).is_err());
        assert!(Bipartition::new(2, &[3]).is_err());
        assert!(Bipartition::new(3, &[1, 1]).is_err());
    }
}
