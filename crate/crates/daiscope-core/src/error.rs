//! Error types shared across the crate.

use thiserror::Error;

/// Errors surfaced by the geometry, Fisher, and bound computations.
///
/// Singular bound points in the Remark-2 regime (vanishing `cos²(θ̄_kmin)`)
/// are *not* errors: they are reported as `unstable` flags / infinite values
/// so that parameter sweeps can carry them as first-class cells. Errors here
/// mean the inputs violate a precondition or an inversion that must succeed
/// did not.
#[derive(Debug, Error)]
pub enum DaisError {
    /// `wrap_halfopen` called with a non-interval.
    #[error("invalid wrap interval: t1 = {t1} must be < t2 = {t2}")]
    InvalidInterval { t1: f64, t2: f64 },

    /// Two points that must be distinct coincide (or nearly so).
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// A scenario field violates its invariants.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// The nuisance (gain) block of the FIM could not be inverted.
    #[error("singular nuisance block `{block}` (condition estimate {cond:.3e})")]
    SingularNuisance { block: &'static str, cond: f64 },

    /// The pseudo-true location solve hit a vanishing denominator.
    #[error("singular pseudo-true geometry: {0}")]
    SingularGeometry(String),

    /// The pseudo-true solution failed its forward-consistency check.
    #[error("pseudo-true inversion inconsistent: residual {residual:.3e} exceeds {tolerance:.1e}")]
    InternalInversion { residual: f64, tolerance: f64 },

    /// The reference channel has zero received power.
    #[error("zero channel: cannot derive a noise variance from SNR")]
    ZeroChannel,

    /// A grid optimization found no feasible point.
    #[error("no feasible grid point: {0}")]
    NoFeasiblePoint(String),

    /// A symmetric matrix inversion failed its conditioning gate.
    #[error("singular matrix in {what} (condition estimate {cond:.3e})")]
    SingularMatrix { what: &'static str, cond: f64 },
}

pub type Result<T> = std::result::Result<T, DaisError>;
