//! Closed-form competitive-ratio expressions and parameter maps.
//!
//! These formulas predict what the adversarial certifier measures; the two
//! routes are developed independently and cross-checked in the acceptance
//! suite. Nothing here enumerates candidates: every function is O(1)
//! arithmetic in `r^(k/n)`.

use crate::params::r_pow;
use crate::{EvacError, Result};

/// Certified-ratio bracket for the proportional schedule with `n = 2f + 1`
/// agents and ratio `r`: the worst-case ratio `R` satisfies
/// `lower <= R < upper`, where
///
/// ```text
/// lower = 1 + 2r/(r + r^(2/n)) + 4 r^(2 + 1/n) / ((r + r^(2/n)) (r - 1))
/// upper = 1 + 2r/(r + 1)       + 4 r^(2 + 1/n) / ((r + 1) (r - 1))
/// ```
///
/// The bracket pinches as `n` grows (both ends approach the same limit), so
/// for large `n` it certifies the ratio to within its width.
pub fn proportional_ratio_bracket(n: usize, r: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    check_n(n)?;
    let grow2 = r_pow(r, 2, n);
    let bulge = 4.0 * r * r * r_pow(r, 1, n) / (r - 1.0);
    let lower = 1.0 + (2.0 * r + bulge) / (r + grow2);
    let upper = 1.0 + (2.0 * r + bulge) / (r + 1.0);
    Ok((lower, upper))
}

/// Limit of the proportional worst-case ratio as `n -> infinity` at fixed
/// `r`: `7 - 2 (r - 3) / (r^2 - 1)`.
pub fn asymptotic_ratio(r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(7.0 - 2.0 * (r - 3.0) / (r * r - 1.0))
}

/// Minimizer of [`asymptotic_ratio`] and its value: `(3 + 2 sqrt 2,
/// 4 + 2 sqrt 2)`.
pub fn asymptotic_optimum() -> (f64, f64) {
    let sqrt8 = 8.0_f64.sqrt();
    (3.0 + sqrt8, 4.0 + sqrt8)
}

/// Scenario branch a generalized parameter point falls in.
///
/// `AOnly`: the first-visit scenario alone pins the optimal sub-turn depth;
/// `AB`: the depth balances the first-visit scenario against the
/// late-discovery scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioBranch {
    AOnly,
    AB,
}

/// Feasibility report for the generalized-schedule parameter map at
/// `(n, r, u)`.
#[derive(Debug, Clone)]
pub struct RegimeReport {
    pub n: usize,
    pub u: usize,
    pub r: f64,
    /// Pacing the map selects, when its defining denominator is positive.
    pub q: Option<f64>,
    /// Feasible pacing band `[q_low, q_high]`.
    pub q_low: f64,
    pub q_high: f64,
    pub in_regime: bool,
    pub branch: Option<ScenarioBranch>,
    /// Why the point is out of regime, when it is.
    pub reason: Option<String>,
}

/// Pacing selected by the balance condition at `(n, r, u)`:
///
/// ```text
/// q = (r^(2u/n - 1) + 1) / ((1 + r^(2/n)) r^(2(u-1)/n - 1) - 2 r^(1/n))
/// ```
///
/// Returns `None` when the denominator is not positive (the balance has no
/// solution there; an out-of-regime flag, not an error).
pub fn balanced_pacing(n: usize, r: f64, u: usize) -> Result<Option<f64>> {
    check_r(r)?;
    check_n(n)?;
    let numer = r_pow(r, 2 * u as i64 - n as i64, n) + 1.0;
    let denom =
        (1.0 + r_pow(r, 2, n)) * r_pow(r, 2 * (u as i64 - 1) - n as i64, n) - 2.0 * r_pow(r, 1, n);
    if denom <= 0.0 {
        return Ok(None);
    }
    Ok(Some(numer / denom))
}

/// Optimal sub-turn depth for pacing `q` at `(n, r)`:
/// `q (r^(1 - 2/n) - 1)` while the first-visit scenario alone binds
/// (`q <= r / (r - r^(2/n))`), else `q (r^(1 - 4/n) - 1)`.
pub fn optimal_depth(n: usize, r: f64, q: f64) -> Result<f64> {
    check_r(r)?;
    check_n(n)?;
    if q <= r / (r - r_pow(r, 2, n)) {
        Ok(q * (r_pow(r, n as i64 - 2, n) - 1.0))
    } else {
        Ok(q * (r_pow(r, n as i64 - 4, n) - 1.0))
    }
}

/// Full regime check of the parameter map at `(n, r, u)`.
///
/// In regime means: `n >= 5`, `u` in `f + 3 ..= n`, the balance denominator
/// is positive, and the selected pacing lands in
/// `[r/(r-1), min(r/(r - r^(1 - 2/n)), r/(r - r^(4/n)))]`.
pub fn regime_check(n: usize, r: f64, u: usize) -> Result<RegimeReport> {
    check_r(r)?;
    check_n(n)?;
    let f = (n - 1) / 2;
    let q_low = r / (r - 1.0);
    let q_high = if n >= 5 {
        (r / (r - r_pow(r, n as i64 - 2, n))).min(r / (r - r_pow(r, 4, n)))
    } else {
        f64::NAN
    };
    let q = balanced_pacing(n, r, u)?;
    let mut report = RegimeReport {
        n,
        u,
        r,
        q,
        q_low,
        q_high,
        in_regime: false,
        branch: None,
        reason: None,
    };
    if n < 5 {
        report.reason = Some(format!("map needs n >= 5, got n = {n}"));
        return Ok(report);
    }
    if !(f + 3..=n).contains(&u) {
        report.reason = Some(format!("u = {u} outside {}..={n}", f + 3));
        return Ok(report);
    }
    let Some(q) = q else {
        report.reason = Some("balance denominator not positive".into());
        return Ok(report);
    };
    if !(q_low..=q_high).contains(&q) {
        report.reason =
            Some(format!("pacing q = {q:.6} outside [{q_low:.6}, {q_high:.6}]"));
        return Ok(report);
    }
    report.in_regime = true;
    report.branch = Some(if q <= r / (r - r_pow(r, 2, n)) {
        ScenarioBranch::AOnly
    } else {
        ScenarioBranch::AB
    });
    Ok(report)
}

/// Worst first-visit-scenario ratio of the generalized schedule at pacing
/// `q`: `1 + 2q (1 + 2q r^(1/n)) / (q + (q - 1) r^(2/n))`.
pub fn scenario_a_ratio(n: usize, r: f64, q: f64) -> Result<f64> {
    check_r(r)?;
    check_n(n)?;
    let g1 = r_pow(r, 1, n);
    let g2 = r_pow(r, 2, n);
    Ok(1.0 + 2.0 * q * (1.0 + 2.0 * q * g1) / (q + (q - 1.0) * g2))
}

/// Upper bound on the late-discovery-scenario ratio at pacing `q` with the
/// balanced depth `a = q (r^(1 - 4/n) - 1)`. A bound, not the exact value;
/// the certifier supplies the exact one and the gap is reported, never
/// assumed zero.
pub fn scenario_b_bound(n: usize, r: f64, q: f64) -> Result<f64> {
    check_r(r)?;
    check_n(n)?;
    let g1 = r_pow(r, 1, n);
    let g2 = r_pow(r, 2, n);
    let g3 = r_pow(r, 3, n);
    let depth = q * (r_pow(r, n as i64 - 4, n) - 1.0);
    if depth <= 0.0 {
        return Err(EvacError::Contract(format!(
            "late-discovery bound needs positive balanced depth, got {depth:.6}"
        )));
    }
    Ok(3.0
        + 2.0 * (q - 1.0) / depth
            * (2.0 * r - g3 * (1.0 + 2.0 * q * g1) / (q + (q - 1.0) * g2)))
}

/// Positive root of the three-agent depth polynomial
/// `P(a) = a^2 (r - 2 r^(1/3)) + a (r + 1 + r^(2/3)) - r^(2/3) (r + 1)`,
/// in the conjugate form `2C / (B + sqrt(B^2 + 4AC))`, which stays stable as
/// the leading coefficient vanishes at `r = 2 sqrt 2` (where `r^(1/3)` is
/// exactly `sqrt 2`).
pub fn three_agent_depth(r: f64) -> Result<f64> {
    check_three_agent_r(r)?;
    let g1 = r_pow(r, 1, 3);
    let g2 = r_pow(r, 2, 3);
    let a2 = r - 2.0 * g1;
    let b = r + 1.0 + g2;
    let c = g2 * (r + 1.0);
    Ok(2.0 * c / (b + (b * b + 4.0 * a2 * c).sqrt()))
}

/// Three-agent depth polynomial, used to validate the root.
pub fn three_agent_depth_polynomial(r: f64, a: f64) -> Result<f64> {
    check_three_agent_r(r)?;
    let g1 = r_pow(r, 1, 3);
    let g2 = r_pow(r, 2, 3);
    Ok(a * a * (r - 2.0 * g1) + a * (r + 1.0 + g2) - g2 * (r + 1.0))
}

/// Three-agent pacing induced by depth `a`: `(r + 1 - a) / (r + 1 - 2 r^(1/3))`.
pub fn three_agent_pacing(r: f64, a: f64) -> Result<f64> {
    check_three_agent_r(r)?;
    Ok((r + 1.0 - a) / (r + 1.0 - 2.0 * r_pow(r, 1, 3)))
}

/// Worst-case three-agent search ratio at `r`:
/// `2 + (r^(1/3) (2 - r^(1/3)) + sqrt(B^2 + 4AC)) / (r + 1 - 2 r^(1/3))`.
pub fn three_agent_ratio(r: f64) -> Result<f64> {
    check_three_agent_r(r)?;
    let g1 = r_pow(r, 1, 3);
    let g2 = r_pow(r, 2, 3);
    let a2 = r - 2.0 * g1;
    let b = r + 1.0 + g2;
    let c = g2 * (r + 1.0);
    Ok(2.0 + (g1 * (2.0 - g1) + (b * b + 4.0 * a2 * c).sqrt()) / (r + 1.0 - 2.0 * g1))
}

/// First-visit-scenario ratio of the three-agent schedule: `1 + 2 (q + a)`.
pub fn three_agent_scenario_a(r: f64) -> Result<f64> {
    let a = three_agent_depth(r)?;
    let q = three_agent_pacing(r, a)?;
    Ok(1.0 + 2.0 * (q + a))
}

/// Late-discovery-scenario ratio of the three-agent schedule:
/// `1 + 2 q r^(2/3) / a`.
pub fn three_agent_scenario_b(r: f64) -> Result<f64> {
    let a = three_agent_depth(r)?;
    let q = three_agent_pacing(r, a)?;
    Ok(1.0 + 2.0 * q * r_pow(r, 2, 3) / a)
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(EvacError::ParamRange(format!("r = {r} must be finite and exceed 1")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(EvacError::ParamRange(format!("n = {n} must be odd and at least 3")));
    }
    Ok(())
}

fn check_three_agent_r(r: f64) -> Result<()> {
    let floor = 8.0_f64.sqrt();
    if !r.is_finite() || r < floor {
        return Err(EvacError::ParamRange(format!(
            "three-agent closed forms need r >= 2*sqrt(2) = {floor:.6}, got {r}"
        )));
    }
    Ok(())
}
