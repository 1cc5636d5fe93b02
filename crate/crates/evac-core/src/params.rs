//! Validated schedule parameters.
//!
//! A schedule is described by the number of agents `n = 2f + 1`, the geometric
//! expansion ratio `r > 1`, and, for the generalized family, the pacing
//! parameter `q` and the sub-turn depth `a`. Rounds are indexed by `j` (all
//! integers, negative included) and agents by `i` in `0..n`; agent `i`'s main
//! turning point of round `j` sits at `d[i][j] = r^(2i/n) * (-r)^j`.
//!
//! In the generalized family each round inserts two sub-turns on the way from
//! `d[i][j]` to `d[i][j+1] = -r * d[i][j]`:
//!
//! ```text
//! d[i][j]  ->  -a * d[i][j]  ->  (s - a) * d[i][j]  ->  -r * d[i][j]
//! ```
//!
//! where `s = q * (r - 1) - r` is the total back-tracking budget. Legal ranges
//! are `s` in `[0, r + 1]` and `a` in `[s - 1, r]`; zero-length legs are legal
//! and traversed instantaneously. The proportional family is the special case
//! `q = r / (r - 1)`, `a = 1` (so `s = 0`), whose waypoint chain collapses to
//! the straight run `d[i][j] -> -r * d[i][j]`.

use crate::{EvacError, Result};

/// Which schedule family the parameters describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    /// One-parameter geometric zigzag: straight legs between main turning
    /// points, `q` and `a` pinned to `r/(r-1)` and `1`.
    Proportional,
    /// Three-parameter family with two sub-turns per round.
    Generalized,
}

/// Validated parameters of a schedule for `n` agents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleParams {
    kind: ScheduleKind,
    n: usize,
    r: f64,
    q: f64,
    a: f64,
}

/// `r^(numer/n)` evaluated through one shared code path, so identical
/// exponents produce identical floats everywhere in the crate.
pub fn r_pow(r: f64, numer: i64, n: usize) -> f64 {
    if numer == 0 {
        return 1.0;
    }
    (numer as f64 / n as f64 * r.ln()).exp()
}

impl ScheduleParams {
    /// Proportional schedule for `n` agents with expansion ratio `r`.
    pub fn proportional(n: usize, r: f64) -> Result<Self> {
        check_n(n)?;
        check_r(r)?;
        Ok(Self { kind: ScheduleKind::Proportional, n, r, q: r / (r - 1.0), a: 1.0 })
    }

    /// Generalized schedule from `(n, r, q, a)`.
    pub fn generalized(n: usize, r: f64, q: f64, a: f64) -> Result<Self> {
        check_n(n)?;
        check_r(r)?;
        // Boundary values (s = 0, a = s - 1, a = r) are legal zero-length
        // legs; the band absorbs the rounding of q = (r + s) / (r - 1)
        // round-trips so they stay constructible.
        let band = crate::tol::EXACT_IDENTITY * r;
        let s = q * (r - 1.0) - r;
        if !(-band..=r + 1.0 + band).contains(&s) {
            return Err(EvacError::ParamRange(format!(
                "s = q*(r-1)-r = {s:.6} must lie in [0, r+1] = [0, {:.6}]",
                r + 1.0
            )));
        }
        if !(s - 1.0 - band..=r + band).contains(&a) {
            return Err(EvacError::ParamRange(format!(
                "a = {a:.6} must lie in [s-1, r] = [{:.6}, {r:.6}]",
                s - 1.0
            )));
        }
        Ok(Self { kind: ScheduleKind::Generalized, n, r, q, a })
    }

    /// Generalized schedule from `(n, r, s, a)`, converting the back-tracking
    /// budget `s` into `q = (r + s) / (r - 1)`.
    pub fn generalized_with_s(n: usize, r: f64, s: f64, a: f64) -> Result<Self> {
        check_r(r)?;
        Self::generalized(n, r, (r + s) / (r - 1.0), a)
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Fault budget `f = (n - 1) / 2`.
    pub fn f(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Back-tracking budget `s = q * (r - 1) - r`; zero for proportional.
    pub fn s(&self) -> f64 {
        self.q * (self.r - 1.0) - self.r
    }

    /// `r^(numer/n)` for this schedule's `r` and `n`.
    pub fn r_pow(&self, numer: i64) -> f64 {
        r_pow(self.r, numer, self.n)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(EvacError::ParamRange(format!("n = {n} must be odd and at least 3")));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(EvacError::ParamRange(format!("r = {r} must be finite and exceed 1")));
    }
    Ok(())
}
