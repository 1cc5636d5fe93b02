//! Evacuation and search on the infinite line by `n = 2f + 1` unit-speed
//! agents, up to `f` of which may be faulty.
//!
//! All agents start at the origin. A hidden target sits at an unknown
//! `x != 0`. Reliable agents that step on the target announce it instantly
//! (wireless, zero latency); crash-faulty agents stay silent forever but keep
//! moving, and byzantine agents may additionally announce locations that hold
//! no target. Evacuation completes when the slowest reliable agent reaches the
//! target; the competitive ratio of a schedule is the worst case over targets
//! of completion time divided by `|x|`.
//!
//! The crate provides:
//! - parametric zigzag schedules ([`params`], [`schedule`]): a one-parameter
//!   geometric family and a three-parameter generalization with two extra
//!   turning points per round,
//! - exact first-visit and meeting kinematics ([`kinematics`]),
//! - an adversarial certifier that computes the exact competitive ratio of a
//!   schedule against the worst fault set and target ([`adversary`]),
//! - closed-form ratio expressions and parameter maps that the certifier is
//!   checked against ([`closed_form`]),
//! - an event-driven simulator used as an independent oracle ([`sim`]),
//! - parameter optimizers reproducing the best known ratios ([`optimizer`]),
//! - a three-agent search protocol tolerating one byzantine agent
//!   ([`byzantine`]).
//!
//! Floating point policy: every quantity is an exact closed form in `r^(k/n)`
//! evaluated in `f64`; comparisons go through the tolerances in [`tol`].

pub mod adversary;
pub mod byzantine;
pub mod closed_form;
pub mod error;
pub mod kinematics;
pub mod optimizer;
pub mod par;
pub mod params;
pub mod schedule;
pub mod sim;
pub mod target;
pub mod tol;

pub use error::EvacError;
pub use params::{ScheduleKind, ScheduleParams};

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, EvacError>;
