//! Target specifications.
//!
//! Worst-case targets sit at one-sided limits "just beyond a turning point"
//! (an adversary places the target infinitesimally past the point a trajectory
//! turns at, so the turning agent misses it). Those limits are evaluated
//! analytically; a concrete offset is only materialized when a simulator needs
//! a real coordinate.

use crate::schedule::{self, Approach, IntervalLocator, TurningPointRef};
use crate::{tol, Result, ScheduleParams};

/// Where the target sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetSpec {
    /// Exactly at the coordinate.
    Exact(f64),
    /// The one-sided limit just beyond the turning point, away from the
    /// origin.
    JustBeyond(TurningPointRef),
}

/// A target resolved against a schedule: limit coordinate plus lattice
/// location.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedTarget {
    pub spec: TargetSpec,
    /// Limit coordinate; ratios divide by its magnitude.
    pub coordinate: f64,
    pub locator: IntervalLocator,
}

impl TargetSpec {
    pub fn resolve(self, params: &ScheduleParams) -> Result<ResolvedTarget> {
        match self {
            TargetSpec::Exact(x) => Ok(ResolvedTarget {
                spec: self,
                coordinate: x,
                locator: schedule::locate(params, x, Approach::Exact)?,
            }),
            TargetSpec::JustBeyond(tp) => Ok(ResolvedTarget {
                spec: self,
                coordinate: schedule::turning_point(params, tp.canonical(params.n()))?,
                locator: schedule::locate_just_beyond(params, tp)?,
            }),
        }
    }

    /// Concrete coordinate for simulation: limits are realized a relative
    /// `tol::JUST_BEYOND_OFFSET` past the turning point.
    pub fn realized_coordinate(self, params: &ScheduleParams) -> Result<f64> {
        match self {
            TargetSpec::Exact(x) => Ok(x),
            TargetSpec::JustBeyond(tp) => {
                let w = schedule::turning_point(params, tp.canonical(params.n()))?;
                Ok(w * (1.0 + tol::JUST_BEYOND_OFFSET))
            }
        }
    }
}

impl std::fmt::Display for TargetSpec {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TargetSpec::Exact(x) => write!(out, "exact x = {x:.9}"),
            TargetSpec::JustBeyond(tp) => {
                write!(out, "just beyond turn (i = {}, j = {}, leg = {})", tp.i, tp.j, tp.ell)
            }
        }
    }
}
