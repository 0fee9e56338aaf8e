//! Fisher information over the channel parameters, the effective FIM after
//! eliminating the gain nuisances, and the geometry Jacobian that carries
//! information onto positions.
//!
//! The channel parameter vector groups by kind:
//!
//! ```text
//! ξ = [τ_0..τ_K, θ_0..θ_K, ℜγ_0..ℜγ_K, ℑγ_0..ℑγ_K]   (length 4(K+1))
//! η = [τ_0..τ_K, θ_0..θ_K]                            (first 2(K+1))
//! ```
//!
//! The FIM accumulates `(2/σ²) Σ_{n,g} ℜ{(∂ū/∂ξ)ᴴ (∂ū/∂ξ)}` over all
//! symbol/sub-carrier pairs, and the effective FIM for `η` is the Schur
//! complement that folds away the gain block.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{DaisError, Result};
use crate::geometry::Position2D;
use crate::linalg;
use crate::mismatch::PseudoTrueLocations;
use crate::signal::{steering_derivative, steering_vector, PilotSet, SystemConfig, VirtualChannelParams};

/// Index bookkeeping for the grouped-by-kind parameter layout. All indexing
/// into `ξ` goes through these helpers; nothing touches raw offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamLayout {
    n_paths: usize,
}

impl ParamLayout {
    pub fn new(n_paths: usize) -> Self {
        assert!(n_paths > 0);
        Self { n_paths }
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    /// Full parameter dimension `4(K+1)`.
    pub fn dim(&self) -> usize {
        4 * self.n_paths
    }

    /// Location-relevant dimension `2(K+1)`.
    pub fn eta_dim(&self) -> usize {
        2 * self.n_paths
    }

    pub fn tau(&self, k: usize) -> usize {
        debug_assert!(k < self.n_paths);
        k
    }

    pub fn theta(&self, k: usize) -> usize {
        debug_assert!(k < self.n_paths);
        self.n_paths + k
    }

    pub fn re_gain(&self, k: usize) -> usize {
        debug_assert!(k < self.n_paths);
        2 * self.n_paths + k
    }

    pub fn im_gain(&self, k: usize) -> usize {
        debug_assert!(k < self.n_paths);
        3 * self.n_paths + k
    }
}

/// The real parameter vector `ξ` with its layout attached.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelParamVector {
    pub values: DVector<f64>,
    pub layout: ParamLayout,
}

impl ChannelParamVector {
    pub fn from_virtual(vc: &VirtualChannelParams) -> Self {
        let layout = ParamLayout::new(vc.num_paths());
        let mut values = DVector::zeros(layout.dim());
        for (k, (pp, gain)) in vc.shifted.iter().zip(&vc.gains).enumerate() {
            values[layout.tau(k)] = pp.toa_us;
            values[layout.theta(k)] = pp.aod_rad;
            values[layout.re_gain(k)] = gain.re;
            values[layout.im_gain(k)] = gain.im;
        }
        Self { values, layout }
    }

    pub fn to_virtual(&self) -> VirtualChannelParams {
        let l = self.layout;
        let shifted = (0..l.n_paths())
            .map(|k| crate::geometry::PathParams {
                toa_us: self.values[l.tau(k)],
                aod_rad: self.values[l.theta(k)],
            })
            .collect();
        let gains = (0..l.n_paths())
            .map(|k| Complex64::new(self.values[l.re_gain(k)], self.values[l.im_gain(k)]))
            .collect();
        VirtualChannelParams::new(shifted, gains)
    }

    /// The location-relevant prefix `η = [τ; θ]`.
    pub fn eta(&self) -> DVector<f64> {
        self.values.rows(0, self.layout.eta_dim()).into_owned()
    }
}

/// Fisher information matrix over `ξ`: real, symmetric, PSD.
#[derive(Debug, Clone)]
pub struct Fim {
    pub matrix: DMatrix<f64>,
    pub layout: ParamLayout,
}

/// Effective FIM over `η` after Schur-eliminating the gain block.
#[derive(Debug, Clone)]
pub struct Efim {
    pub matrix: DMatrix<f64>,
    pub layout: ParamLayout,
}

impl Efim {
    /// The 2×2 per-path block `[[J_ττ, J_τθ], [J_θτ, J_θθ]]` for path `k`,
    /// as used by the block-diagonal (orthogonal-paths) approximation.
    pub fn path_block(&self, k: usize) -> DMatrix<f64> {
        let t = self.layout.tau(k);
        let h = self.layout.theta(k);
        DMatrix::from_row_slice(2, 2, &[
            self.matrix[(t, t)],
            self.matrix[(t, h)],
            self.matrix[(h, t)],
            self.matrix[(h, h)],
        ])
    }
}

/// Per-path steering projections, hoisted so a whole FIM accumulation builds
/// each steering vector once instead of once per (g, n) pair.
struct PathProjections {
    /// conj(α(θ_k))
    alpha_conj: Vec<DVector<Complex64>>,
    /// conj(dα/dθ at θ_k)
    dalpha_conj: Vec<DVector<Complex64>>,
}

impl PathProjections {
    fn new(vc: &VirtualChannelParams, cfg: &SystemConfig) -> Self {
        let alpha_conj = vc
            .shifted
            .iter()
            .map(|pp| steering_vector(pp.aod_rad, cfg).map(|c| c.conj()))
            .collect();
        let dalpha_conj = vc
            .shifted
            .iter()
            .map(|pp| steering_derivative(pp.aod_rad, cfg).map(|c| c.conj()))
            .collect();
        Self { alpha_conj, dalpha_conj }
    }

    /// Analytic gradient of `ū⁽ᵍ'ⁿ⁾` with respect to `ξ`.
    fn gradient(
        &self,
        vc: &VirtualChannelParams,
        pilots: &PilotSet,
        cfg: &SystemConfig,
        g: usize,
        n: usize,
    ) -> DVector<Complex64> {
        let layout = ParamLayout::new(vc.num_paths());
        let s = pilots.symbol(g, n);
        let n_ts = cfg.n_ts_us();
        let mut grad = DVector::from_element(layout.dim(), Complex64::new(0.0, 0.0));
        let tau_factor = Complex64::new(0.0, -2.0 * std::f64::consts::PI * n as f64 / n_ts);
        for (k, (pp, gain)) in vc.shifted.iter().zip(&vc.gains).enumerate() {
            let phase = Complex64::from_polar(
                1.0,
                -2.0 * std::f64::consts::PI * n as f64 * pp.toa_us / n_ts,
            );
            // nalgebra's `dot` does not conjugate; the conjugation is baked
            // into the stored projections, so these are αᴴs and (dα)ᴴs.
            let a = self.alpha_conj[k].dot(s);
            let b = self.dalpha_conj[k].dot(s);
            grad[layout.tau(k)] = tau_factor * gain * phase * a;
            grad[layout.theta(k)] = gain * phase * b;
            grad[layout.re_gain(k)] = phase * a;
            grad[layout.im_gain(k)] = Complex64::new(0.0, 1.0) * phase * a;
        }
        grad
    }
}

/// Gradient of the noiseless response at one `(g, n)` pair, ordered by
/// [`ParamLayout`].
pub fn response_gradient(
    vc: &VirtualChannelParams,
    pilots: &PilotSet,
    cfg: &SystemConfig,
    g: usize,
    n: usize,
) -> DVector<Complex64> {
    PathProjections::new(vc, cfg).gradient(vc, pilots, cfg, g, n)
}

/// Accumulate the FIM over all symbol/sub-carrier pairs in a fixed order.
pub fn compute_fim(
    vc: &VirtualChannelParams,
    pilots: &PilotSet,
    cfg: &SystemConfig,
    sigma2: f64,
) -> Fim {
    assert!(sigma2 > 0.0, "noise variance must be positive");
    let layout = ParamLayout::new(vc.num_paths());
    let dim = layout.dim();
    let proj = PathProjections::new(vc, cfg);
    let mut acc = DMatrix::<f64>::zeros(dim, dim);
    for n in 0..cfg.n_subcarriers {
        for g in 0..cfg.n_symbols {
            let grad = proj.gradient(vc, pilots, cfg, g, n);
            for a in 0..dim {
                let ga = grad[a].conj();
                for b in a..dim {
                    let v = (ga * grad[b]).re;
                    acc[(a, b)] += v;
                }
            }
        }
    }
    for a in 0..dim {
        for b in a..dim {
            let v = acc[(a, b)] * 2.0 / sigma2;
            acc[(a, b)] = v;
            acc[(b, a)] = v;
        }
    }
    Fim { matrix: acc, layout }
}

/// Effective FIM for `η`: Schur complement of the gain block.
pub fn compute_efim(fim: &Fim) -> Result<Efim> {
    let matrix = linalg::schur_complement(&fim.matrix, fim.layout.eta_dim(), "gain block")?;
    Ok(Efim { matrix, layout: fim.layout })
}

/// Jacobian `Π = ∂η/∂φ̄` of the misspecified geometric map, evaluated at the
/// pseudo-true locations.
///
/// Rows follow the canonical path labels of `η` (all τ, then all θ, path
/// order `k = 0..K`); columns are `[p̄_x, p̄_y, v̄_1x, v̄_1y, …]`. When phase
/// wrapping promoted path `k_min ≠ 0` to apparent line-of-sight, the row for
/// path `k_min` is the LOS row of the misspecified map and the row for path
/// 0 is the row of scatterer slot `k_min`, mirroring the index swap in the
/// pseudo-true construction.
#[derive(Debug, Clone)]
pub struct LocationJacobian {
    pub matrix: DMatrix<f64>,
}

pub fn location_jacobian(
    pseudo: &PseudoTrueLocations,
    eve: &Position2D,
    cfg: &SystemConfig,
) -> Result<LocationJacobian> {
    let c = cfg.light_speed_m_per_us;
    let n_paths = pseudo.scatterers.len() + 1;
    let eta_dim = 2 * n_paths;
    let pb = pseudo.alice;

    // Slot-ordered rows of the misspecified map: slot 0 is the apparent LOS
    // (derivatives of ‖z - p̄‖/c and the bearing of z from p̄), slot j ≥ 1 the
    // path via pseudo scatterer v̄_j.
    let mut tau_rows = DMatrix::<f64>::zeros(n_paths, eta_dim);
    let mut theta_rows = DMatrix::<f64>::zeros(n_paths, eta_dim);

    let wx = eve.x - pb.x;
    let wy = eve.y - pb.y;
    let r_los = (wx * wx + wy * wy).sqrt();
    if r_los <= 0.0 {
        return Err(DaisError::DegenerateGeometry(
            "pseudo-true alice coincides with eve".into(),
        ));
    }
    tau_rows[(0, 0)] = -wx / (c * r_los);
    tau_rows[(0, 1)] = -wy / (c * r_los);
    theta_rows[(0, 0)] = wy / (r_los * r_los);
    theta_rows[(0, 1)] = -wx / (r_los * r_los);

    for (j, v) in pseudo.scatterers.iter().enumerate() {
        let slot = j + 1;
        let dvx = v.x - pb.x;
        let dvy = v.y - pb.y;
        let r_tx = (dvx * dvx + dvy * dvy).sqrt();
        let dex = v.x - eve.x;
        let dey = v.y - eve.y;
        let r_rx = (dex * dex + dey * dey).sqrt();
        if r_tx <= 0.0 || r_rx <= 0.0 {
            return Err(DaisError::DegenerateGeometry(format!(
                "pseudo-true scatterer {slot} coincides with alice or eve"
            )));
        }
        let col_v = 2 * slot;
        // τ_slot = (‖v̄ - z‖ + ‖v̄ - p̄‖)/c
        tau_rows[(slot, 0)] = -dvx / (c * r_tx);
        tau_rows[(slot, 1)] = -dvy / (c * r_tx);
        tau_rows[(slot, col_v)] = (dex / r_rx + dvx / r_tx) / c;
        tau_rows[(slot, col_v + 1)] = (dey / r_rx + dvy / r_tx) / c;
        // θ_slot = arctan of the bearing of v̄ from p̄
        let r2 = r_tx * r_tx;
        theta_rows[(slot, 0)] = dvy / r2;
        theta_rows[(slot, 1)] = -dvx / r2;
        theta_rows[(slot, col_v)] = -dvy / r2;
        theta_rows[(slot, col_v + 1)] = dvx / r2;
    }

    // Reorder slot rows into canonical path labels (swap 0 ↔ k_min).
    let mut matrix = DMatrix::<f64>::zeros(eta_dim, eta_dim);
    for k in 0..n_paths {
        let slot = pseudo.slot_of_path(k);
        matrix.row_mut(k).copy_from(&tau_rows.row(slot));
        matrix.row_mut(n_paths + k).copy_from(&theta_rows.row(slot));
    }
    Ok(LocationJacobian { matrix })
}

/// Worst normalized cross-path FIM coupling: the largest `|J[a,b]|` over
/// entries whose path indices differ, divided by `√(J[a,a]·J[b,b])`. Zero
/// means the paths are exactly orthogonal in the Fisher sense; the bound
/// simplifications assume this is small.
pub fn orthogonality_residual(
    vc: &VirtualChannelParams,
    pilots: &PilotSet,
    cfg: &SystemConfig,
    sigma2: f64,
) -> f64 {
    let n_paths = vc.num_paths();
    if n_paths < 2 {
        return 0.0;
    }
    let fim = compute_fim(vc, pilots, cfg, sigma2);
    cross_path_residual(&fim)
}

/// The normalization used by [`orthogonality_residual`], split out so tests
/// can probe synthetic matrices.
pub fn cross_path_residual(fim: &Fim) -> f64 {
    let l = fim.layout;
    let idx = |kind: usize, k: usize| match kind {
        0 => l.tau(k),
        1 => l.theta(k),
        2 => l.re_gain(k),
        _ => l.im_gain(k),
    };
    let mut worst: f64 = 0.0;
    for k in 0..l.n_paths() {
        for kp in 0..l.n_paths() {
            if k == kp {
                continue;
            }
            for kind_a in 0..4 {
                for kind_b in 0..4 {
                    let a = idx(kind_a, k);
                    let b = idx(kind_b, kp);
                    let denom = (fim.matrix[(a, a)] * fim.matrix[(b, b)]).sqrt();
                    if denom > 0.0 {
                        worst = worst.max(fim.matrix[(a, b)].abs() / denom);
                    }
                }
            }
        }
    }
    worst
}
