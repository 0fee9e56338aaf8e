//! Positions, the geometric forward map (locations → delays/angles), and the
//! delay-angle shifting with modular wrapping.
//!
//! The transmitter (Alice) sits at `p`, the eavesdropper (Eve) at `z`, and
//! each scatterer `k ≥ 1` at `v_k`. Path 0 is the line-of-sight path. The
//! time of arrival (TOA, microseconds) and angle of departure (AOD, radians,
//! principal branch `(-π/2, π/2]`) of each path follow from the positions:
//!
//! ```text
//! τ_0 = ‖z - p‖ / c                τ_k = (‖v_k - z‖ + ‖v_k - p‖) / c
//! θ_k = arctan((v_k,y - p_y) / (v_k,x - p_x))       (v_0 ≜ z)
//! ```
//!
//! Spoofing shifts every TOA by `Δτ` (wrapped into `(0, N·Ts]`) and every
//! AOD through its sine by `sin Δθ` (wrapped into `(-1, 1]`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DaisError, Result};

/// A 2-D position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position2D {
    pub x: f64,
    pub y: f64,
}

impl Position2D {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance_to(&self, other: &Position2D) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Transmitter, eavesdropper, and scatterer positions plus per-path complex
/// gains (`K + 1` gains: LOS first, then one per scatterer).
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub alice: Position2D,
    pub eve: Position2D,
    pub scatterers: Vec<Position2D>,
    pub gains: Vec<Complex64>,
}

impl Scenario {
    /// Number of scatterers `K`.
    pub fn num_scatterers(&self) -> usize {
        self.scatterers.len()
    }

    /// Number of propagation paths `K + 1`.
    pub fn num_paths(&self) -> usize {
        self.scatterers.len() + 1
    }

    /// Check the structural invariants: gain count `K + 1`, all gains
    /// nonzero, all points finite, and no scatterer coinciding with Alice
    /// or Eve (nor Alice with Eve).
    pub fn validate(&self) -> Result<()> {
        if !self.alice.is_finite() || !self.eve.is_finite() {
            return Err(DaisError::InvalidScenario("non-finite position".into()));
        }
        if self.gains.len() != self.num_paths() {
            return Err(DaisError::InvalidScenario(format!(
                "expected {} gains (LOS + one per scatterer), got {}",
                self.num_paths(),
                self.gains.len()
            )));
        }
        if self.alice.distance_to(&self.eve) <= 0.0 {
            return Err(DaisError::InvalidScenario(
                "alice and eve positions coincide".into(),
            ));
        }
        for (k, v) in self.scatterers.iter().enumerate() {
            if !v.is_finite() {
                return Err(DaisError::InvalidScenario(format!(
                    "scatterer {} has a non-finite position",
                    k + 1
                )));
            }
            if v.distance_to(&self.alice) <= 0.0 || v.distance_to(&self.eve) <= 0.0 {
                return Err(DaisError::InvalidScenario(format!(
                    "scatterer {} coincides with alice or eve",
                    k + 1
                )));
            }
        }
        for (k, g) in self.gains.iter().enumerate() {
            if g.norm() == 0.0 {
                return Err(DaisError::InvalidScenario(format!("gain {k} is zero")));
            }
            if !g.re.is_finite() || !g.im.is_finite() {
                return Err(DaisError::InvalidScenario(format!("gain {k} is non-finite")));
            }
        }
        Ok(())
    }
}

/// Delay-angle parameters of one propagation path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathParams {
    /// Time of arrival in microseconds.
    pub toa_us: f64,
    /// Angle of departure in radians, principal branch.
    pub aod_rad: f64,
}

/// The spoofing design pair `Δ = (Δτ, Δθ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpoofShift {
    pub delta_tau_us: f64,
    pub delta_theta_rad: f64,
}

impl SpoofShift {
    pub const NONE: SpoofShift = SpoofShift { delta_tau_us: 0.0, delta_theta_rad: 0.0 };

    pub fn new(delta_tau_us: f64, delta_theta_rad: f64) -> Self {
        Self { delta_tau_us, delta_theta_rad }
    }
}

/// Reduce `x` into the half-open interval `(t1, t2]`.
///
/// Uses the strict-floor convention (`⌊x⌋` = largest integer *strictly
/// less* than `x`, so `⌊1⌋ = 0`): the right endpoint `t2` is a fixed point
/// and the interval stays half-open on the left. A plain `f64::floor` would
/// send `t2` to `t1` instead.
pub fn wrap_halfopen(x: f64, t1: f64, t2: f64) -> Result<f64> {
    if !(t1 < t2) {
        return Err(DaisError::InvalidInterval { t1, t2 });
    }
    let period = t2 - t1;
    let q = (x - t1) / period;
    let mut m = q.floor();
    if m == q {
        m -= 1.0;
    }
    let mut r = x - m * period;
    // Guard against a rounding step landing just outside the interval.
    if r > t2 {
        r -= period;
    }
    if r <= t1 {
        r += period;
    }
    Ok(r)
}

fn principal_aod(dx: f64, dy: f64) -> f64 {
    // Principal-branch arctangent of the slope, reduced to (-π/2, π/2].
    // Deliberately *not* atan2: the forward model cannot distinguish the
    // two half-planes, matching the AOD range convention.
    let theta = (dy / dx).atan();
    if theta == -std::f64::consts::FRAC_PI_2 {
        std::f64::consts::FRAC_PI_2
    } else {
        theta
    }
}

/// Map positions to per-path delay-angle parameters. Index 0 is the LOS
/// path; index `k ≥ 1` reflects off scatterer `k`.
///
/// `c` is the propagation speed in meters per microsecond.
pub fn forward_geometry(scenario: &Scenario, c: f64) -> Result<Vec<PathParams>> {
    paths_from_positions(&scenario.alice, &scenario.eve, &scenario.scatterers, c)
}

/// [`forward_geometry`] on bare positions, for callers (the pseudo-true
/// solver, validation checks) that have no gains to hand.
pub fn paths_from_positions(
    alice: &Position2D,
    eve: &Position2D,
    scatterers: &[Position2D],
    c: f64,
) -> Result<Vec<PathParams>> {
    let d_los = alice.distance_to(eve);
    if d_los <= 0.0 {
        return Err(DaisError::DegenerateGeometry("alice coincides with eve".into()));
    }
    let mut out = Vec::with_capacity(scatterers.len() + 1);
    out.push(PathParams {
        toa_us: d_los / c,
        aod_rad: principal_aod(eve.x - alice.x, eve.y - alice.y),
    });
    for (k, v) in scatterers.iter().enumerate() {
        let d_tx = v.distance_to(alice);
        let d_rx = v.distance_to(eve);
        if d_tx <= 0.0 || d_rx <= 0.0 {
            return Err(DaisError::DegenerateGeometry(format!(
                "scatterer {} coincides with alice or eve",
                k + 1
            )));
        }
        out.push(PathParams {
            toa_us: (d_rx + d_tx) / c,
            aod_rad: principal_aod(v.x - alice.x, v.y - alice.y),
        });
    }
    Ok(out)
}

/// Shift every path's TOA and AOD by the design pair, with wrapping.
///
/// The TOA wraps into `(0, n_ts]` (`n_ts = N·Ts`); the AOD shifts through
/// its sine, wrapped into `(-1, 1]`, and comes back through `asin`, so the
/// returned angles lie in `[-π/2, π/2]`. When the wrapped sine is unchanged
/// the original angle is returned bit-for-bit, which makes the zero shift an
/// exact identity.
pub fn apply_shift(params: &[PathParams], shift: &SpoofShift, n_ts: f64) -> Result<Vec<PathParams>> {
    if !(n_ts > 0.0) {
        return Err(DaisError::InvalidInterval { t1: 0.0, t2: n_ts });
    }
    let sin_shift = shift.delta_theta_rad.sin();
    params
        .iter()
        .map(|pp| {
            let toa = wrap_halfopen(pp.toa_us + shift.delta_tau_us, 0.0, n_ts)?;
            let s0 = pp.aod_rad.sin();
            let s1 = wrap_halfopen(s0 + sin_shift, -1.0, 1.0)?;
            let aod = if s1 == s0 { pp.aod_rad } else { s1.asin() };
            Ok(PathParams { toa_us: toa, aod_rad: aod })
        })
        .collect()
}

/// Index of the path with the smallest shifted TOA (the path a misled
/// estimator takes for line-of-sight). Ties break to the smallest index.
pub fn kmin_index(shifted: &[PathParams]) -> usize {
    assert!(!shifted.is_empty(), "kmin_index on empty path list");
    let mut best = 0;
    for (k, pp) in shifted.iter().enumerate().skip(1) {
        if pp.toa_us < shifted[best].toa_us {
            best = k;
        }
    }
    best
}
