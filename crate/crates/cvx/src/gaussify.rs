//! Gaussification by balanced beam-splitter cascades.
//!
//! Feed n = 2^m identical copies of an N-mode state into an array of
//! balanced beam splitters wired as a Sylvester–Hadamard matrix H of order
//! n, i.e. the mode map a_k ↦ Σ_l (H_kl/√n)·a_l applied site-wise. Because
//! every copy carries the same characteristic function χ, each output port k
//! factorizes *exactly*:
//!
//! > χ_k(ξ) = χ(ξ/√n)^{n₊} · χ(−ξ/√n)^{n₋},
//!
//! where (n₊, n₋) count the +1/−1 entries of row k. As n grows this product
//! converges pointwise to the Gaussian characteristic function with the
//! source's first and second moments — a central-limit effect with the
//! 1/n rate measured by [`convergence_scan`].
//!
//! Two independent routes compute the same physics here: the scaling
//! formula above ([`reduced_chi`]), and honest truncated-Fock simulation of
//! one cascade layer ([`fock_gaussify_step`]). Their agreement is one of
//! the crate's core invariants.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::FockDensityOperator;
use crate::linalg;
use crate::phase_space::{
    gaussian_chi, CovarianceMatrix, GaussianState, MeansVector,
};

/// Largest supported Hadamard order exponent: n = 2^m with m ≤ 12.
pub const MAX_ORDER_EXPONENT: u32 = 12;

// ---------------------------------------------------------------------------
// Sources
// ---------------------------------------------------------------------------

/// Anything that exposes a characteristic function and canonical moments.
///
/// The two implementations — exact Gaussian states and truncated Fock
/// density operators — let every diagnostic in this module run on either
/// picture.
pub trait ChiSource {
    fn n_modes(&self) -> usize;
    /// χ(ξ) with ξ of length 2·n_modes.
    fn chi(&self, xi: &[f64]) -> Result<Complex64>;
    /// First and second canonical moments (d, Γ).
    fn moments(&self) -> Result<(MeansVector, CovarianceMatrix)>;
}

impl ChiSource for GaussianState {
    fn n_modes(&self) -> usize {
        GaussianState::n_modes(self)
    }

    fn chi(&self, xi: &[f64]) -> Result<Complex64> {
        gaussian_chi(self, xi)
    }

    fn moments(&self) -> Result<(MeansVector, CovarianceMatrix)> {
        Ok((self.means().clone(), self.cm().clone()))
    }
}

impl ChiSource for FockDensityOperator {
    fn n_modes(&self) -> usize {
        FockDensityOperator::n_modes(self)
    }

    fn chi(&self, xi: &[f64]) -> Result<Complex64> {
        self.fock_chi(xi)
    }

    fn moments(&self) -> Result<(MeansVector, CovarianceMatrix)> {
        self.extract_moments()
    }
}

// ---------------------------------------------------------------------------
// Hadamard networks
// ---------------------------------------------------------------------------

/// A Sylvester–Hadamard matrix H of order n = 2^m, entries ±1, built by the
/// recursion H_{2n} = [[H_n, H_n], [H_n, −H_n]].
#[derive(Debug, Clone)]
pub struct HadamardNetwork {
    m: u32,
    h: DMatrix<f64>,
}

/// Build the order-2^m Sylvester–Hadamard matrix (1 ≤ m ≤ 12).
pub fn hadamard_matrix(m: u32) -> Result<HadamardNetwork> {
    if m == 0 || m > MAX_ORDER_EXPONENT {
        return Err(Error::NetworkOrder(format!(
            "order exponent must satisfy 1 ≤ m ≤ {MAX_ORDER_EXPONENT}, got {m}"
        )));
    }
    let h2 = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, -1.0]);
    let mut h = h2.clone();
    for _ in 1..m {
        h = h2.kronecker(&h);
    }
    Ok(HadamardNetwork { m, h })
}

impl HadamardNetwork {
    pub fn order_exponent(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        1 << self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.h
    }

    /// Count the (+1, −1) entries of a row.
    pub fn row_signs(&self, row: usize) -> Result<(usize, usize)> {
        if row >= self.n() {
            return Err(Error::RowIndex { row, n: self.n() });
        }
        let plus = self.h.row(row).iter().filter(|&&x| x > 0.0).count();
        Ok((plus, self.n() - plus))
    }

    /// The symplectic matrix of the network acting site-wise on n copies of
    /// an N-mode system (copy-major mode ordering): (H/√n) ⊗ 𝟙_{2N}.
    pub fn network_symplectic(&self, n_modes: usize) -> DMatrix<f64> {
        let n = self.n() as f64;
        let scaled = self.h.map(|x| x / n.sqrt());
        scaled.kronecker(&DMatrix::identity(2 * n_modes, 2 * n_modes))
    }
}

/// (n₊, n₋) for row `row` of the order-n Sylvester matrix, without
/// materializing it: row 0 is all ones; every other row is balanced. (The
/// recursion doubles each row into (r, r) or (r, −r), and only the all-ones
/// row survives with a single sign.)
fn row_sign_counts(row: usize, n: usize) -> (usize, usize) {
    if row == 0 {
        (n, 0)
    } else {
        (n / 2, n / 2)
    }
}

fn check_order(n: usize) -> Result<u32> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NetworkOrder(format!(
            "number of copies must be a power of two ≥ 2, got {n}"
        )));
    }
    let m = n.trailing_zeros();
    if m > MAX_ORDER_EXPONENT {
        return Err(Error::NetworkOrder(format!(
            "number of copies 2^{m} exceeds the cap 2^{MAX_ORDER_EXPONENT}"
        )));
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Reduced outputs
// ---------------------------------------------------------------------------

/// Characteristic function of output port `row` after feeding n = 2^m copies
/// of `source` through the Hadamard network:
/// χ_row(ξ) = χ(ξ/√n)^{n₊} · χ(−ξ/√n)^{n₋}.
///
/// This is exact for any source — Gaussian or not, displaced or not — and
/// costs two source-χ evaluations per point.
pub fn reduced_chi<S: ChiSource + ?Sized>(
    source: &S,
    row: usize,
    n: usize,
    xi: &[f64],
) -> Result<Complex64> {
    check_order(n)?;
    if row >= n {
        return Err(Error::RowIndex { row, n });
    }
    if xi.len() != 2 * source.n_modes() {
        return Err(Error::Length {
            expected: 2 * source.n_modes(),
            got: xi.len(),
        });
    }
    let scale = 1.0 / (n as f64).sqrt();
    let plus_arg: Vec<f64> = xi.iter().map(|x| x * scale).collect();
    let (n_plus, n_minus) = row_sign_counts(row, n);
    let chi_plus = source.chi(&plus_arg)?;
    if n_minus == 0 {
        return Ok(chi_plus.powu(n_plus as u32));
    }
    let minus_arg: Vec<f64> = plus_arg.iter().map(|x| -x).collect();
    let chi_minus = source.chi(&minus_arg)?;
    Ok(chi_plus.powu(n_plus as u32) * chi_minus.powu(n_minus as u32))
}

/// One cascade layer in the Fock picture: ρ ⊗ ρ, one balanced beam splitter
/// per site (θ = π/4), then reduction to each output copy. Returns the
/// (symmetric, balanced) output pair, corresponding to Hadamard rows 0
/// and 1 at n = 2.
///
/// The beam splitter conserves photon number per site, so results are exact
/// whenever each register can hold the *combined* occupation of its site —
/// embed the source first if its support reaches past the halfway level.
pub fn fock_gaussify_step(
    state: &FockDensityOperator,
) -> Result<(FockDensityOperator, FockDensityOperator)> {
    let n_modes = state.n_modes();
    let mut joint = FockDensityOperator::tensor_product(state, state)?;
    for m in 0..n_modes {
        joint = joint.apply_beam_splitter(m, n_modes + m, std::f64::consts::FRAC_PI_4)?;
    }
    let first: Vec<usize> = (0..n_modes).collect();
    let second: Vec<usize> = (n_modes..2 * n_modes).collect();
    let symmetric = joint.partial_trace(&first)?;
    let balanced = joint.partial_trace(&second)?;
    Ok((symmetric, balanced))
}

// ---------------------------------------------------------------------------
// Convergence diagnostics
// ---------------------------------------------------------------------------

/// Output-port class of a Hadamard row: the all-ones row, or any of the
/// sign-balanced ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowClass {
    Symmetric,
    Balanced,
}

impl RowClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowClass::Symmetric => "symmetric",
            RowClass::Balanced => "balanced",
        }
    }
}

/// Sup-error sequence and log-log slope fits for one row class.
#[derive(Debug, Clone)]
pub struct ClassFit {
    pub row_class: RowClass,
    /// sup_ξ |χ_row(ξ) − χ_G(ξ)| per n, aligned with the report's
    /// `n_values`.
    pub sup_errors: Vec<f64>,
    /// Least-squares slope of ln(sup error) against ln(n) over all n.
    pub slope_all: f64,
    /// The same fit restricted to n ≥ 4. The first doubling still carries
    /// strong pre-asymptotic curvature; from n = 4 on the sequence sits on
    /// its 1/n asymptote, so this is the slope to compare against −1.
    pub slope_tail: f64,
    pub strictly_decreasing: bool,
}

/// Result of scanning the Gaussification limit over a phase-space grid.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// Copy counts 2, 4, …, 2^m_max.
    pub n_values: Vec<usize>,
    pub grid_len: usize,
    /// One fit per row class: symmetric (row 0) and balanced (row 1).
    pub fits: Vec<ClassFit>,
}

impl ConvergenceReport {
    pub fn fit(&self, class: RowClass) -> &ClassFit {
        self.fits
            .iter()
            .find(|f| f.row_class == class)
            .expect("report carries both row classes")
    }
}

fn log_log_slope(ns: &[usize], errs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errs)
        .map(|(&n, &e)| ((n as f64).ln(), e.max(1e-300).ln()))
        .collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Measure sup_ξ |χ_row(ξ) − χ_G(ξ)| over `grid` for n = 2, 4, …, 2^m_max
/// and both row classes, where χ_G is the Gaussian characteristic function
/// with the source's moments.
///
/// The Gaussian limit of the *balanced* ports is centered regardless of the
/// source, while the symmetric port's means drift as √n·d; a single shared
/// target therefore only exists for centered sources, and displaced ones
/// are rejected.
pub fn convergence_scan<S: ChiSource + ?Sized>(
    source: &S,
    m_max: u32,
    grid: &[Vec<f64>],
) -> Result<ConvergenceReport> {
    if m_max == 0 || m_max > MAX_ORDER_EXPONENT {
        return Err(Error::NetworkOrder(format!(
            "m_max must satisfy 1 ≤ m_max ≤ {MAX_ORDER_EXPONENT}, got {m_max}"
        )));
    }
    if grid.is_empty() {
        return Err(Error::Domain("convergence grid must be non-empty".into()));
    }
    let dim = 2 * source.n_modes();
    if let Some(bad) = grid.iter().find(|p| p.len() != dim) {
        return Err(Error::Length {
            expected: dim,
            got: bad.len(),
        });
    }
    let (means, cm) = source.moments()?;
    let max_mean = means.vector().iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if max_mean > 1e-9 {
        return Err(Error::Domain(format!(
            "convergence target is defined for centered sources; found |d|∞ = {max_mean:.3e} — displace the state to the origin first"
        )));
    }
    let target = GaussianState::new(MeansVector::zeros(dim / 2), cm)?;

    let n_values: Vec<usize> = (1..=m_max).map(|m| 1usize << m).collect();
    let classes = [(RowClass::Symmetric, 0usize), (RowClass::Balanced, 1usize)];
    let mut fits = Vec::with_capacity(2);
    for (class, row) in classes {
        let mut sup_errors = Vec::with_capacity(n_values.len());
        for &n in &n_values {
            let mut sup = 0.0_f64;
            for point in grid {
                let got = reduced_chi(source, row, n, point)?;
                let want = gaussian_chi(&target, point)?;
                sup = sup.max((got - want).norm());
            }
            sup_errors.push(sup);
        }
        let strictly_decreasing = sup_errors.windows(2).all(|w| w[1] < w[0]);
        let slope_all = log_log_slope(&n_values, &sup_errors);
        let (tail_n, tail_e): (Vec<usize>, Vec<f64>) = n_values
            .iter()
            .zip(&sup_errors)
            .filter(|(&n, _)| n >= 4)
            .map(|(&n, &e)| (n, e))
            .unzip();
        let slope_tail = if tail_n.len() >= 2 {
            log_log_slope(&tail_n, &tail_e)
        } else {
            slope_all
        };
        fits.push(ClassFit {
            row_class: class,
            sup_errors,
            slope_all,
            slope_tail,
            strictly_decreasing,
        });
    }
    Ok(ConvergenceReport {
        n_values,
        grid_len: grid.len(),
        fits,
    })
}

// ---------------------------------------------------------------------------
// Pointwise structure checks
// ---------------------------------------------------------------------------

/// One central-difference estimate of g″(0) for g(x) = χ(x·ξ).
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSample {
    pub step: f64,
    /// Re[(g(h) − 2g(0) + g(−h))/h²]. The imaginary part cancels exactly
    /// because χ(−ξ) = χ(ξ)*.
    pub estimate: f64,
    /// |estimate − expected| / |expected|, or the absolute deviation in the
    /// zero-curvature case ξ = 0.
    pub deviation: f64,
}

/// Comparison of the numerical curvature of x ↦ χ(x·ξ) at 0 against the
/// moment prediction.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    /// −ξᵀΓξ/2 − (ξᵀd)². (The second term vanishes for centered sources,
    /// where the prediction is the familiar −ξᵀΓξ/2.)
    pub expected: f64,
    /// True iff ξ = 0, where g ≡ 1 and the curvature degenerates to zero.
    pub zero_curvature: bool,
    pub samples: Vec<CurvatureSample>,
}

/// Estimate g″(0) for g(x) = χ(x·ξ) by central differences at each step in
/// `steps`, and compare with −ξᵀΓξ/2 − (ξᵀd)² from the extracted moments.
/// This ties the small-|ξ| expansion of the characteristic function to the
/// second moments, one direction ξ at a time.
pub fn second_order_check<S: ChiSource + ?Sized>(
    source: &S,
    xi: &[f64],
    steps: &[f64],
) -> Result<CurvatureReport> {
    if xi.len() != 2 * source.n_modes() {
        return Err(Error::Length {
            expected: 2 * source.n_modes(),
            got: xi.len(),
        });
    }
    if steps.is_empty() {
        return Err(Error::Domain("need at least one step size".into()));
    }
    if let Some(&bad) = steps.iter().find(|&&h| !(h > 0.0) || !h.is_finite()) {
        return Err(Error::Domain(format!("step sizes must be positive, got {bad}")));
    }
    let (means, cm) = source.moments()?;
    let xi_v = nalgebra::DVector::from_column_slice(xi);
    let quad = (cm.matrix() * &xi_v).dot(&xi_v);
    let lin = means.vector().dot(&xi_v);
    let expected = -0.5 * quad - lin * lin;
    let zero_curvature = xi.iter().all(|&x| x == 0.0);

    let g0 = source.chi(&vec![0.0; xi.len()])?;
    let mut samples = Vec::with_capacity(steps.len());
    for &h in steps {
        let plus: Vec<f64> = xi.iter().map(|x| x * h).collect();
        let minus: Vec<f64> = xi.iter().map(|x| -x * h).collect();
        let gp = source.chi(&plus)?;
        let gm = source.chi(&minus)?;
        let estimate = ((gp - g0 * 2.0 + gm) / Complex64::new(h * h, 0.0)).re;
        let deviation = if zero_curvature {
            estimate.abs()
        } else {
            (estimate - expected).abs() / expected.abs()
        };
        samples.push(CurvatureSample {
            step: h,
            estimate,
            deviation,
        });
    }
    Ok(CurvatureReport {
        expected,
        zero_curvature,
        samples,
    })
}

/// Positivity certificate for a Gram matrix sampled from χ.
#[derive(Debug, Clone)]
pub struct BochnerReport {
    pub size: usize,
    pub min_eigenvalue: f64,
}

/// Build the Gram matrix G_jk = χ((x_j − x_k)·ξ) over the given offsets and
/// report its minimum eigenvalue. For a genuine quantum characteristic
/// function restricted to a line this matrix is positive semidefinite; a
/// clearly negative eigenvalue certifies that the sampled function is not a
/// valid χ.
pub fn bochner_check<S: ChiSource + ?Sized>(
    source: &S,
    xi: &[f64],
    offsets: &[f64],
) -> Result<BochnerReport> {
    if xi.len() != 2 * source.n_modes() {
        return Err(Error::Length {
            expected: 2 * source.n_modes(),
            got: xi.len(),
        });
    }
    if offsets.len() < 2 {
        return Err(Error::Domain(
            "Bochner check needs at least two sample offsets".into(),
        ));
    }
    if offsets.len() > 64 {
        return Err(Error::Domain(format!(
            "Bochner check caps at 64 offsets, got {}",
            offsets.len()
        )));
    }
    let m = offsets.len();
    let mut gram = DMatrix::zeros(m, m);
    for j in 0..m {
        for k in 0..m {
            let x = offsets[j] - offsets[k];
            let arg: Vec<f64> = xi.iter().map(|v| v * x).collect();
            gram[(j, k)] = source.chi(&arg)?;
        }
    }
    let min_eigenvalue = linalg::herm_eigenvalues(&gram)[0];
    Ok(BochnerReport {
        size: m,
        min_eigenvalue,
    })
}

// ---------------------------------------------------------------------------
