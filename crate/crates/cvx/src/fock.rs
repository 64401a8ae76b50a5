//! Truncated Fock-space simulator with explicit error accounting.
//!
//! States live on N registers with local dimensions `dims = [d₁, …, d_N]`
//! (register j holds number states |0⟩ … |d_j − 1⟩). Flat indices are
//! mode-major with the *last* mode fastest: |n₁, …, n_N⟩ sits at
//! Σ_j n_j·s_j with s_N = 1, s_j = s_{j+1}·d_{j+1}. Tensor products
//! therefore concatenate dimension lists in order.
//!
//! Truncation is never silent. Two guards make results trustworthy:
//!
//! * **Leakage** — the total population of the top number level across
//!   modes. Moment extraction and characteristic-function evaluation refuse
//!   to run when it exceeds [`LEAKAGE_BUDGET`], because truncated operator
//!   products are only exact for states supported strictly below the top
//!   level.
//! * **Reliability radius** — exp(iξ·R) built from truncated quadratures
//!   deviates from the true displacement operator as |ξ| grows. For each
//!   local dimension, [`xi_max`] calibrates the largest |ξ| at which the
//!   truncated vacuum characteristic function still matches exp(−|ξ|²/4) to
//!   1e−8, and [`FockDensityOperator::fock_chi`] enforces that radius
//!   per mode.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::phase_space::{Bipartition, CovarianceMatrix, MeansVector};

/// Permitted total population of top number levels before moment extraction
/// and χ evaluation refuse to answer.
pub const LEAKAGE_BUDGET: f64 = 1e-8;

/// Error target used to calibrate the per-dimension reliability radius.
const RADIUS_TARGET: f64 = 1e-8;

/// Total-dimension cap. Configurable through the `CVX_MAX_DIM` environment
/// variable; defaults to 20000.
pub fn max_total_dim() -> usize {
    match std::env::var("CVX_MAX_DIM") {
        Ok(s) => s.trim().parse().unwrap_or(20000),
        Err(_) => 20000,
    }
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::Domain("dimension list must be non-empty".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::Domain(format!(
            "every local dimension must be ≥ 2, got {d}"
        )));
    }
    let mut total: usize = 1;
    for &d in dims {
        total = total.checked_mul(d).unwrap_or(usize::MAX);
    }
    let cap = max_total_dim();
    if total > cap {
        return Err(Error::Capacity {
            requested: total,
            cap,
        });
    }
    Ok(total)
}

/// Strides for mode-major indexing with the last mode fastest.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        s[j] = s[j + 1] * dims[j + 1];
    }
    s
}

/// Per-mode digits of every flat index: `table[idx][mode]`.
fn digit_table(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let s = strides(dims);
    (0..total)
        .map(|idx| {
            dims.iter()
                .enumerate()
                .map(|(j, &d)| (idx / s[j]) % d)
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Single-mode operators
// ---------------------------------------------------------------------------

/// Truncated single-mode operators at a given local dimension: annihilation
/// a, quadratures Q = (a + a†)/√2 and P = i(a† − a)/√2, and the number
/// operator.
#[derive(Debug, Clone)]
pub struct ModeOps {
    dim: usize,
    a: DMatrix<Complex64>,
    q: DMatrix<Complex64>,
    p: DMatrix<Complex64>,
    number: DMatrix<Complex64>,
}

impl ModeOps {
    pub fn new(dim: usize) -> ModeOps {
        let mut a = DMatrix::zeros(dim, dim);
        for n in 1..dim {
            a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
        }
        let adag = a.adjoint();
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let q = (&a + &adag).map(|z| z * inv_sqrt2);
        let p = (&adag - &a).map(|z| z * inv_sqrt2 * Complex64::i());
        let number = &adag * &a;
        ModeOps { dim, a, q, p, number }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn annihilation(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn q(&self) -> &DMatrix<Complex64> {
        &self.q
    }

    pub fn p(&self) -> &DMatrix<Complex64> {
        &self.p
    }

    pub fn number(&self) -> &DMatrix<Complex64> {
        &self.number
    }
}

// ---------------------------------------------------------------------------
// Reliability radius
// ---------------------------------------------------------------------------

fn radius_cache() -> &'static Mutex<HashMap<usize, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// |χ_trunc(s) − exp(−s²/4)| for the vacuum at local dimension `dim`,
/// evaluated along the Q axis (truncation error is phase-invariant, so one
/// axis suffices).
fn vacuum_chi_error(dim: usize, s: f64) -> f64 {
    let ops = ModeOps::new(dim);
    let h = ops.q().map(|z| z * Complex64::new(s, 0.0));
    let (vals, vecs) = linalg::herm_eigen(&h);
    // ⟨0| e^{iH} |0⟩ = Σ_k |V₀ₖ|² e^{iλₖ}.
    let mut chi = Complex64::new(0.0, 0.0);
    for k in 0..dim {
        let w = vecs[(0, k)].norm_sqr();
        chi += Complex64::from_polar(w, vals[k]);
    }
    (chi - Complex64::new((-s * s / 4.0).exp(), 0.0)).norm()
}

/// Largest |ξ| (per mode) at which the truncated characteristic function is
/// trusted for local dimension `dim`: calibrated so the truncated vacuum
/// matches exp(−|ξ|²/4) to 1e−8 inside the radius. Monotone in `dim`;
/// results are cached.
pub fn xi_max(dim: usize) -> f64 {
    if let Some(&r) = radius_cache().lock().unwrap().get(&dim) {
        return r;
    }
    // Grow an upper bracket, then bisect the error threshold.
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while vacuum_chi_error(dim, hi) <= RADIUS_TARGET && hi < 1024.0 {
        lo = hi;
        hi *= 2.0;
    }
    if hi >= 1024.0 {
        radius_cache().lock().unwrap().insert(dim, lo);
        return lo;
    }
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        if vacuum_chi_error(dim, mid) <= RADIUS_TARGET {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    radius_cache().lock().unwrap().insert(dim, lo);
    lo
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

/// A density operator on a truncated multi-mode Fock space.
#[derive(Debug, Clone)]
pub struct FockDensityOperator {
    dims: Vec<usize>,
    rho: DMatrix<Complex64>,
}

impl FockDensityOperator {
    /// Build |ψ⟩⟨ψ| from amplitudes in flat (mode-major, last mode fastest)
    /// order. The amplitude vector must be normalized to 1e−6; it is then
    /// renormalized exactly.
    pub fn build_pure_state(dims: &[usize], coeffs: &[Complex64]) -> Result<Self> {
        let total = check_dims(dims)?;
        if coeffs.len() != total {
            return Err(Error::Length {
                expected: total,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NotAState(format!(
                "amplitudes have norm {norm:.9}, expected 1"
            )));
        }
        let psi = DVector::from_iterator(total, coeffs.iter().map(|c| c / norm));
        let rho = &psi * psi.adjoint();
        Ok(FockDensityOperator {
            dims: dims.to_vec(),
            rho,
        })
    }

    /// Ingest a density matrix. It must be Hermitian to 1e−9, have unit
    /// trace to 1e−6 (it is then renormalized exactly), and be positive
    /// semidefinite to −1e−9.
    pub fn from_matrix(dims: &[usize], mat: DMatrix<Complex64>) -> Result<Self> {
        let total = check_dims(dims)?;
        if mat.nrows() != total || mat.ncols() != total {
            return Err(Error::Shape {
                rows: mat.nrows(),
                cols: mat.ncols(),
                reason: "density matrix must match the product of local dimensions",
            });
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm_defect = (&mat - mat.adjoint()).iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        if herm_defect > 1e-9 {
            return Err(Error::NotAState(format!(
                "matrix is not Hermitian (defect {herm_defect:.3e})"
            )));
        }
        let rho = linalg::hermitize(&mat);
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > 1e-6 {
            return Err(Error::NotAState(format!("trace is {tr:.9}, expected 1")));
        }
        let rho = rho.map(|z| z / tr);
        let min_eig = linalg::herm_eigenvalues(&rho)[0];
        if min_eig < -1e-9 {
            return Err(Error::NotAState(format!(
                "matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(FockDensityOperator {
            dims: dims.to_vec(),
            rho,
        })
    }

    /// Single-mode thermal state with mean occupation `nbar`, truncated and
    /// renormalized.
    pub fn thermal(dim: usize, nbar: f64) -> Result<Self> {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::Domain(format!(
                "thermal occupation must be finite and ≥ 0, got {nbar}"
            )));
        }
        let ratio = nbar / (1.0 + nbar);
        let mut weights: Vec<f64> = Vec::with_capacity(dim);
        let mut w = 1.0;
        for _ in 0..dim {
            weights.push(w);
            w *= ratio;
        }
        let z: f64 = weights.iter().sum();
        let mut rho = DMatrix::zeros(dim, dim);
        for (n, w) in weights.iter().enumerate() {
            rho[(n, n)] = Complex64::new(w / z, 0.0);
        }
        Ok(FockDensityOperator {
            dims: vec![dim],
            rho,
        })
    }

    /// Single-mode coherent state |α⟩, truncated. The leakage guard reports
    /// whether the truncation was adequate for the requested amplitude.
    pub fn coherent(dim: usize, alpha: Complex64) -> Result<Self> {
        let mut coeffs: Vec<Complex64> = Vec::with_capacity(dim);
        let mut c = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        for n in 0..dim {
            if n > 0 {
                c *= alpha / Complex64::new((n as f64).sqrt(), 0.0);
            }
            coeffs.push(c);
        }
        // Renormalize the truncated tail so the constructor's unit-norm
        // contract holds; the discarded weight shows up as leakage instead.
        let norm = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.5 {
            return Err(Error::Domain(format!(
                "coherent amplitude |α| = {:.3} is far too large for dimension {dim}",
                alpha.norm()
            )));
        }
        let coeffs: Vec<Complex64> = coeffs.into_iter().map(|z| z / norm).collect();
        Self::build_pure_state(&[dim], &coeffs)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_modes(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn rho(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// tr ρ² — 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Σ_j (population of the top number level of mode j). Zero exactly when
    /// every mode's highest level is empty.
    pub fn top_level_leakage(&self) -> f64 {
        let digits = digit_table(&self.dims);
        let mut leak = 0.0;
        for (idx, dg) in digits.iter().enumerate() {
            let tops = dg
                .iter()
                .zip(&self.dims)
                .filter(|&(&n, &d)| n == d - 1)
                .count();
            if tops > 0 {
                leak += tops as f64 * self.rho[(idx, idx)].re;
            }
        }
        leak.max(0.0)
    }

    fn leakage_guard(&self) -> Result<()> {
        let leakage = self.top_level_leakage();
        if leakage > LEAKAGE_BUDGET {
            return Err(Error::Leakage {
                leakage,
                budget: LEAKAGE_BUDGET,
            });
        }
        Ok(())
    }

    // -----------------------------------------------------------------------
    // Structure: tensor, embed, trace out
    // -----------------------------------------------------------------------

    /// ρ_a ⊗ ρ_b; dimension lists concatenate.
    pub fn tensor_product(a: &Self, b: &Self) -> Result<Self> {
        let dims: Vec<usize> = a.dims.iter().chain(b.dims.iter()).copied().collect();
        check_dims(&dims)?;
        Ok(FockDensityOperator {
            dims,
            rho: a.rho.kronecker(&b.rho),
        })
    }

    /// Zero-pad each mode to a larger local dimension. Padding is exact: it
    /// changes no physical content, only the representable support.
    pub fn embed(&self, new_dims: &[usize]) -> Result<Self> {
        if new_dims.len() != self.dims.len() {
            return Err(Error::DimsMismatch(self.dims.clone(), new_dims.to_vec()));
        }
        for (m, (&old, &new)) in self.dims.iter().zip(new_dims).enumerate() {
            if new < old {
                return Err(Error::EmbedShrink {
                    mode: m,
                    from: old,
                    to: new,
                });
            }
        }
        let total = check_dims(new_dims)?;
        let old_digits = digit_table(&self.dims);
        let new_strides = strides(new_dims);
        let map: Vec<usize> = old_digits
            .iter()
            .map(|dg| dg.iter().zip(&new_strides).map(|(&n, &s)| n * s).sum())
            .collect();
        let mut rho = DMatrix::zeros(total, total);
        for (i_old, &i_new) in map.iter().enumerate() {
            for (j_old, &j_new) in map.iter().enumerate() {
                rho[(i_new, j_new)] = self.rho[(i_old, j_old)];
            }
        }
        Ok(FockDensityOperator {
            dims: new_dims.to_vec(),
            rho,
        })
    }

    /// Trace out every mode not listed in `keep` (sorted, deduplicated,
    /// non-empty).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.n_modes();
        let mut modes: Vec<usize> = keep.to_vec();
        modes.sort_unstable();
        modes.dedup();
        if modes.len() != keep.len() {
            return Err(Error::Partition("duplicate modes in partial trace".into()));
        }
        if modes.is_empty() {
            return Err(Error::Partition(
                "partial trace must keep at least one mode".into(),
            ));
        }
        if let Some(&bad) = modes.iter().find(|&&m| m >= n) {
            return Err(Error::ModeIndex {
                index: bad,
                n_modes: n,
            });
        }
        let traced: Vec<usize> = (0..n).filter(|m| !modes.contains(m)).collect();
        if traced.is_empty() {
            return Ok(self.clone());
        }
        let full_strides = strides(&self.dims);
        let keep_dims: Vec<usize> = modes.iter().map(|&m| self.dims[m]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&m| self.dims[m]).collect();

        // Offset of each reduced (resp. traced) multi-index inside the full
        // flat index, so the sum below is pure table lookups.
        let offsets = |sub_modes: &[usize], sub_dims: &[usize]| -> Vec<usize> {
            digit_table(sub_dims)
                .iter()
                .map(|dg| {
                    dg.iter()
                        .zip(sub_modes)
                        .map(|(&n, &m)| n * full_strides[m])
                        .sum()
                })
                .collect()
        };
        let keep_off = offsets(&modes, &keep_dims);
        let tr_off = offsets(&traced, &traced_dims);

        let d_keep: usize = keep_dims.iter().product();
        let mut rho = DMatrix::zeros(d_keep, d_keep);
        for (i, &io) in keep_off.iter().enumerate() {
            for (j, &jo) in keep_off.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &t in &tr_off {
                    acc += self.rho[(io + t, jo + t)];
                }
                rho[(i, j)] = acc;
            }
        }
        Ok(FockDensityOperator {
            dims: keep_dims,
            rho,
        })
    }

    // -----------------------------------------------------------------------
    // Moments and characteristic function
    // -----------------------------------------------------------------------

    /// First and second canonical moments (d, Γ), in the anticommutator
    /// convention. Refuses when top-level leakage exceeds the budget, since
    /// truncated quadrature products are only exact for states supported
    /// below the top level.
    pub fn extract_moments(&self) -> Result<(MeansVector, CovarianceMatrix)> {
        self.leakage_guard()?;
        let n = self.n_modes();
        let mut d = DVector::zeros(2 * n);
        let mut g = DMatrix::zeros(2 * n, 2 * n);

        // Single-mode marginals: means and same-mode second moments.
        for j in 0..n {
            let marg = self.partial_trace(&[j])?;
            let ops = ModeOps::new(self.dims[j]);
            let dq = expect(&marg.rho, ops.q());
            let dp = expect(&marg.rho, ops.p());
            d[2 * j] = dq;
            d[2 * j + 1] = dp;
            let qq = expect(&marg.rho, &(ops.q() * ops.q()));
            let pp = expect(&marg.rho, &(ops.p() * ops.p()));
            let qp_sym = expect(&marg.rho, &(ops.q() * ops.p() + ops.p() * ops.q()));
            g[(2 * j, 2 * j)] = 2.0 * qq - 2.0 * dq * dq;
            g[(2 * j + 1, 2 * j + 1)] = 2.0 * pp - 2.0 * dp * dp;
            g[(2 * j, 2 * j + 1)] = qp_sym - 2.0 * dq * dp;
            g[(2 * j + 1, 2 * j)] = g[(2 * j, 2 * j + 1)];
        }

        // Pair marginals: cross-mode entries. Operators on different modes
        // commute, so {R_k, R_l} = 2·R_k·R_l there.
        for i in 0..n {
            for j in (i + 1)..n {
                let marg = self.partial_trace(&[i, j])?;
                let oi = ModeOps::new(self.dims[i]);
                let oj = ModeOps::new(self.dims[j]);
                let quads_i = [oi.q(), oi.p()];
                let quads_j = [oj.q(), oj.p()];
                for (a, qa) in quads_i.iter().enumerate() {
                    for (b, qb) in quads_j.iter().enumerate() {
                        let mean = expect_pair(&marg.rho, qa, qb);
                        let (k, l) = (2 * i + a, 2 * j + b);
                        let val = 2.0 * mean - 2.0 * d[k] * d[l];
                        g[(k, l)] = val;
                        g[(l, k)] = val;
                    }
                }
            }
        }

        let means = MeansVector::new(d)?;
        // Leakage below the budget can still perturb the moments by more
        // than the strict validity tolerance, so allow truncation-sized
        // slack here.
        let cm = CovarianceMatrix::with_tol(g, 1e-6)?;
        Ok((means, cm))
    }

    /// Characteristic function χ(ξ) = tr[ρ·exp(i ξ·R)].
    ///
    /// Because different modes commute, exp(iξ·R) factorizes exactly into
    /// per-mode unitaries even on the truncated space; each factor is built
    /// by a local spectral decomposition. Guarded by the leakage budget and
    /// the per-mode reliability radius [`xi_max`].
    pub fn fock_chi(&self, xi: &[f64]) -> Result<Complex64> {
        let n = self.n_modes();
        if xi.len() != 2 * n {
            return Err(Error::Length {
                expected: 2 * n,
                got: xi.len(),
            });
        }
        if xi.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("phase-space argument ξ"));
        }
        self.leakage_guard()?;
        for (j, &dim) in self.dims.iter().enumerate() {
            let norm = (xi[2 * j].powi(2) + xi[2 * j + 1].powi(2)).sqrt();
            let max = xi_max(dim);
            if norm > max {
                return Err(Error::XiOutOfRange {
                    mode: j,
                    value: norm,
                    max,
                    dim,
                });
            }
        }

        // Per-mode factors E_j = exp(i(q_j Q + p_j P)).
        let factors: Vec<DMatrix<Complex64>> = self
            .dims
            .iter()
            .enumerate()
            .map(|(j, &dim)| {
                let ops = ModeOps::new(dim);
                let h = ops.q().map(|z| z * Complex64::new(xi[2 * j], 0.0))
                    + ops.p().map(|z| z * Complex64::new(xi[2 * j + 1], 0.0));
                linalg::unitary_exp_i(&h, 1.0)
            })
            .collect();

        // tr[ρ ⊗E_j] = Σ_{I,J} ρ[I,J] Π_j E_j[J_j, I_j].
        let digits = digit_table(&self.dims);
        let total = self.total_dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..total {
            for j in 0..total {
                let r = self.rho[(i, j)];
                if r.norm_sqr() == 0.0 {
                    continue;
                }
                let mut prod = Complex64::new(1.0, 0.0);
                for (m, f) in factors.iter().enumerate() {
                    prod *= f[(digits[j][m], digits[i][m])];
                }
                acc += r * prod;
            }
        }
        Ok(acc)
    }

    // -----------------------------------------------------------------------
    // Dynamics
    // -----------------------------------------------------------------------

    /// Two-mode beam splitter exp[θ(a_i†a_j − a_i a_j†)] between modes `i`
    /// and `j` (equal local dimensions). In the Heisenberg picture
    /// a_i ↦ cosθ·a_i + sinθ·a_j and a_j ↦ cosθ·a_j − sinθ·a_i, so at
    /// θ = π/4 mode i carries the symmetric combination. The generator
    /// conserves total photon number, so the truncated unitary is exact on
    /// states whose total occupation per pair stays below the local cutoff.
    pub fn apply_beam_splitter(&self, i: usize, j: usize, theta: f64) -> Result<Self> {
        let n = self.n_modes();
        for &m in &[i, j] {
            if m >= n {
                return Err(Error::ModeIndex {
                    index: m,
                    n_modes: n,
                });
            }
        }
        if i == j {
            return Err(Error::Domain(
                "beam splitter needs two distinct modes".into(),
            ));
        }
        if self.dims[i] != self.dims[j] {
            return Err(Error::DimsMismatch(
                vec![self.dims[i]],
                vec![self.dims[j]],
            ));
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite("beam-splitter angle"));
        }
        let a_i = self.lift(i, ModeOps::new(self.dims[i]).annihilation());
        let a_j = self.lift(j, ModeOps::new(self.dims[j]).annihilation());
        let w = a_i.adjoint() * &a_j;
        // G = a_i†a_j − a_ia_j† is anti-Hermitian; H = −iG is Hermitian and
        // exp(iθH) = exp(θG).
        let g = &w - w.adjoint();
        let h = g.map(|z| z * Complex64::new(0.0, -1.0));
        let u = linalg::unitary_exp_i(&h, theta);
        let rho = &u * &self.rho * u.adjoint();
        Ok(FockDensityOperator {
            dims: self.dims.clone(),
            rho,
        })
    }

    /// Lift a single-mode operator to the full space: 𝟙 ⊗ … ⊗ op ⊗ … ⊗ 𝟙.
    fn lift(&self, mode: usize, op: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut out = DMatrix::identity(1, 1);
        for (m, &d) in self.dims.iter().enumerate() {
            out = if m == mode {
                out.kronecker(op)
            } else {
                out.kronecker(&DMatrix::identity(d, d))
            };
        }
        out
    }

    // -----------------------------------------------------------------------
    // Information quantities
    // -----------------------------------------------------------------------

    /// Von Neumann entropy −tr[ρ log₂ ρ] in bits.
    pub fn von_neumann_entropy(&self) -> f64 {
        linalg::herm_eigenvalues(&self.rho)
            .into_iter()
            .filter(|&lam| lam > 0.0)
            .map(|lam| -lam * lam.log2())
            .sum()
    }

    /// Logarithmic negativity across `part` in bits:
    /// E_N = log₂ ‖ρ^{T_B}‖₁, clamped at 0.
    pub fn log_negativity_fock(&self, part: &Bipartition) -> Result<f64> {
        if part.n_modes() != self.n_modes() {
            return Err(Error::Partition(format!(
                "bipartition covers {} modes but the state has {}",
                part.n_modes(),
                self.n_modes()
            )));
        }
        let pt = self.partial_transpose(part.side_b())?;
        let trace_norm: f64 = linalg::herm_eigenvalues(&pt)
            .into_iter()
            .map(f64::abs)
            .sum();
        Ok(trace_norm.max(1.0).log2())
    }

    /// Partial transpose on the listed modes (as a raw matrix — the result
    /// is Hermitian but generally not positive).
    pub fn partial_transpose(&self, modes: &[usize]) -> Result<DMatrix<Complex64>> {
        let n = self.n_modes();
        if let Some(&bad) = modes.iter().find(|&&m| m >= n) {
            return Err(Error::ModeIndex {
                index: bad,
                n_modes: n,
            });
        }
        let digits = digit_table(&self.dims);
        let s = strides(&self.dims);
        let total = self.total_dim();
        let flip: Vec<bool> = (0..n).map(|m| modes.contains(&m)).collect();
        let mut out = DMatrix::zeros(total, total);
        for i in 0..total {
            for j in 0..total {
                // Swap bra and ket digits on transposed modes.
                let mut ii = 0usize;
                let mut jj = 0usize;
                for m in 0..n {
                    let (di, dj) = if flip[m] {
                        (digits[j][m], digits[i][m])
                    } else {
                        (digits[i][m], digits[j][m])
                    };
                    ii += di * s[m];
                    jj += dj * s[m];
                }
                out[(ii, jj)] = self.rho[(i, j)];
            }
        }
        Ok(out)
    }
}

/// tr[ρ M].re for Hermitian M.
fn expect(rho: &DMatrix<Complex64>, m: &DMatrix<Complex64>) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..rho.nrows() {
        for j in 0..rho.ncols() {
            acc += rho[(i, j)] * m[(j, i)];
        }
    }
    acc.re
}

/// tr[ρ (A⊗B)].re on a two-mode state without materializing the Kronecker
/// product.
fn expect_pair(rho: &DMatrix<Complex64>, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let (da, db) = (a.nrows(), b.nrows());
    let mut acc = Complex64::new(0.0, 0.0);
    for m1 in 0..da {
        for n1 in 0..da {
            let am = a[(n1, m1)];
            if am.norm_sqr() == 0.0 {
                continue;
            }
            for m2 in 0..db {
                for n2 in 0..db {
                    acc += rho[(m1 * db + m2, n1 * db + n2)] * am * b[(n2, m2)];
                }
            }
        }
    }
    acc.re
}

/// ½‖ρ_a − ρ_b‖₁ — the trace distance between two operators on the same
/// mode layout.
pub fn trace_distance(a: &FockDensityOperator, b: &FockDensityOperator) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimsMismatch(a.dims().to_vec(), b.dims().to_vec()));
    }
    let diff = a.rho() - b.rho();
    Ok(0.5
        * linalg::herm_eigenvalues(&diff)
            .into_iter()
            .map(f64::abs)
            .sum::<f64>())
}

/// Grow each local dimension until its reliability radius covers `radius`,
/// then zero-pad. Use this before evaluating χ on a wide phase-space grid.
pub fn embed_for_radius(state: &FockDensityOperator, radius: f64) -> Result<FockDensityOperator> {
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::Domain(format!(
            "target radius must be finite and ≥ 0, got {radius}"
        )));
    }
    let mut new_dims = Vec::with_capacity(state.n_modes());
    for &d in state.dims() {
        let mut dim = d;
        while xi_max(dim) < radius {
            dim += 1;
            if dim > 4096 {
                return Err(Error::Capacity {
                    requested: dim,
                    cap: 4096,
                });
            }
        }
        new_dims.push(dim);
    }
    state.embed(&new_dims)
}
