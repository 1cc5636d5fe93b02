//! Error type shared by every operation in the crate.

use thiserror::Error;

/// Errors surfaced by schedule construction, certification, simulation and
/// optimization.
#[derive(Debug, Error)]
pub enum EvacError {
    /// A parameter lies outside its legal range (`r <= 1`, even `n`,
    /// `a` outside `[s - 1, r]`, ...). The message names the parameter and
    /// the violated bound.
    #[error("parameter out of range: {0}")]
    ParamRange(String),

    /// An input is structurally invalid for the requested operation
    /// (target at the origin, unknown agent label, empty grid, ...).
    #[error("invalid input: {0}")]
    Domain(String),

    /// A closed form was evaluated outside the hypotheses under which it is
    /// exact. The message names the violated hypothesis.
    #[error("hypothesis violated: {0}")]
    Contract(String),

    /// Per-round maxima kept drifting, so the certified ratio never
    /// stabilized inside the window.
    #[error("ratio did not stabilize after {rounds} rounds (last drift {drift:.3e})")]
    NonStabilized { rounds: usize, drift: f64 },

    /// The simulator ran out of schedule rounds before the trajectory
    /// reached the requested coordinate.
    #[error("target never reached within {max_rounds} rounds: {detail}")]
    Horizon { max_rounds: i64, detail: String },

    /// No feasible parameter point exists in the searched region.
    #[error("no feasible point: {0}")]
    Infeasible(String),

    /// A closed-form value and its independently certified counterpart
    /// disagree beyond tolerance; one of the two is wrong, so neither is
    /// returned.
    #[error("closed form {closed:.9} and certificate {certified:.9} disagree beyond {tol:.1e}")]
    CertificateMismatch { closed: f64, certified: f64, tol: f64 },

    /// Underlying I/O failure (config or output files).
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
