//! Schedule geometry: turning points, waypoint chains, interval location and
//! exact trajectory positions.
//!
//! Agent `i`'s main turning point of round `j` is `d[i][j] = r^(2i/n) * (-r)^j`
//! (so consecutive rounds alternate sides and expand by `r`, and labels shift
//! by `r^(2/n)`). Trajectories extend to `j -> -infinity`: the zigzag is
//! self-similar and accumulates turns near `t = 0`, so positions are computed
//! in closed form rather than by replaying turns from the start.
//!
//! Shift identities used throughout (and pinned by tests):
//!
//! ```text
//! d[i+k][j] = r^(2k/n) * d[i][j]      d[i][j+k] = (-r)^k * d[i][j]
//! d[i+n][j] = d[i][j+2]               (label wrap-around)
//! ```

use crate::params::ScheduleParams;
use crate::{EvacError, Result};

/// Reference to a turning point of agent `i`'s round `j`.
///
/// `ell` selects the waypoint within the round: `0` is the main turning point
/// `d[i][j]`, `1` the first sub-turn `-a * d[i][j]`, `2` the second sub-turn
/// `(s - a) * d[i][j]`. Proportional schedules only have `ell = 0`.
/// Out-of-range labels are legal and wrap via `d[i+n][j] = d[i][j+2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TurningPointRef {
    pub i: i64,
    pub j: i64,
    pub ell: u8,
}

impl TurningPointRef {
    pub fn main(i: i64, j: i64) -> Self {
        Self { i, j, ell: 0 }
    }

    /// Equivalent reference with the label reduced into `0..n`.
    pub fn canonical(self, n: usize) -> Self {
        let n = n as i64;
        let wraps = self.i.div_euclid(n);
        Self { i: self.i.rem_euclid(n), j: self.j + 2 * wraps, ell: self.ell }
    }
}

/// How a coordinate approaches the point it denotes.
///
/// `FromAbove` stands for the one-sided limit `x * (1 + eps)`, `eps -> 0+`
/// (infinitesimally farther from the origin): interval membership and branch
/// comparisons treat the coordinate as strictly beyond every point it ties
/// with. `Exact` is the coordinate itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    Exact,
    FromAbove,
}

/// Location of a coordinate within the turning-point lattice: the interval
/// `(d[i][j], d[i+1][j]]` it falls in plus its relative position
/// `z = x / d[i][j]`, which lies in `(1, r^(2/n)]`.
///
/// For `approach = FromAbove`, `z` carries the limit value and may equal `1`
/// exactly (the coordinate sits just beyond the turning point `d[i][j]`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalLocator {
    pub i: usize,
    pub j: i64,
    pub z: f64,
    pub approach: Approach,
}

/// Signed coordinate of the main turning point `d[i][j]`.
pub fn main_turning_point(params: &ScheduleParams, i: i64, j: i64) -> f64 {
    let c = TurningPointRef::main(i, j).canonical(params.n());
    params.r_pow(2 * c.i) * (-params.r()).powi(c.j as i32)
}

/// Signed coordinate of any turning point.
pub fn turning_point(params: &ScheduleParams, tp: TurningPointRef) -> Result<f64> {
    let d = main_turning_point(params, tp.i, tp.j);
    match tp.ell {
        0 => Ok(d),
        1 => Ok(-params.a() * d),
        2 => Ok((params.s() - params.a()) * d),
        ell => Err(EvacError::Domain(format!("turning-point index ell = {ell} must be 0, 1 or 2"))),
    }
}

/// Time at which the turn at `tp` happens.
///
/// With `c = 2q - 1` the waypoint times of round `j` are `c|d|`,
/// `(2q + a)|d|` and `(2q + s + a)|d|`; the round ends at the next main turn
/// `c * r * |d|`. Leg durations equal leg lengths (unit speed).
pub fn turn_time(params: &ScheduleParams, tp: TurningPointRef) -> Result<f64> {
    let d_abs = main_turning_point(params, tp.i, tp.j).abs();
    let q = params.q();
    match tp.ell {
        0 => Ok((2.0 * q - 1.0) * d_abs),
        1 => Ok((2.0 * q + params.a()) * d_abs),
        2 => Ok((2.0 * q + params.s() + params.a()) * d_abs),
        ell => Err(EvacError::Domain(format!("turning-point index ell = {ell} must be 0, 1 or 2"))),
    }
}

/// The waypoint chain of agent `i`'s round `j`: `(time, position)` pairs from
/// the main turn `d[i][j]` (inclusive) to the next main turn `d[i][j+1]`
/// (inclusive). Zero-length legs are kept; interpolation skips them.
pub fn round_waypoints(params: &ScheduleParams, i: i64, j: i64) -> [(f64, f64); 4] {
    let d = main_turning_point(params, i, j);
    let d_abs = d.abs();
    let (q, s, a) = (params.q(), params.s(), params.a());
    let c = 2.0 * q - 1.0;
    [
        (c * d_abs, d),
        ((2.0 * q + a) * d_abs, -a * d),
        ((2.0 * q + s + a) * d_abs, (s - a) * d),
        (c * params.r() * d_abs, -params.r() * d),
    ]
}

/// Exact position of agent `i` at time `t >= 0`.
///
/// Finds the round whose span contains `t` via logarithms (with guard loops
/// absorbing floating-point boundary error) and interpolates linearly on the
/// waypoint chain. Never replays turns, so cost is O(1) for any `t`.
pub fn position_at(params: &ScheduleParams, agent: usize, t: f64) -> Result<f64> {
    if agent >= params.n() {
        return Err(EvacError::Domain(format!(
            "agent label {agent} must lie below n = {}",
            params.n()
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(EvacError::Domain(format!("time t = {t} must be finite and nonnegative")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let n = params.n();
    let r = params.r();
    let c = 2.0 * params.q() - 1.0;
    // Round start times are c * r^(2i/n + j); solve for j and guard.
    let u = (t / c).ln() / r.ln() - 2.0 * agent as f64 / n as f64;
    let mut j = u.floor() as i64;
    let round_start = |j: i64| (2.0 * params.q() - 1.0) * params.r_pow(2 * agent as i64) * r.powi(j as i32);
    while round_start(j) > t {
        j -= 1;
    }
    while round_start(j + 1) <= t {
        j += 1;
    }
    let wp = round_waypoints(params, agent as i64, j);
    for k in 0..3 {
        let (t0, p0) = wp[k];
        let (t1, p1) = wp[k + 1];
        if t <= t1 && t1 > t0 {
            return Ok(p0 + (t - t0) * (p1 - p0) / (t1 - t0));
        }
    }
    // Guard loops guarantee t lies inside the round; the final waypoint
    // closes any residual rounding gap.
    Ok(wp[3].1)
}

/// Locate `x` in the turning-point lattice.
///
/// `Exact` resolves interval-boundary coordinates downward (`x = d[i+1][j]`
/// belongs to `(d[i][j], d[i+1][j]]`); `FromAbove` resolves them upward into
/// the next interval, carrying `z = 1`.
pub fn locate(params: &ScheduleParams, x: f64, approach: Approach) -> Result<IntervalLocator> {
    if x == 0.0 || !x.is_finite() {
        return Err(EvacError::Domain(format!("coordinate x = {x} must be finite and nonzero")));
    }
    let n = params.n() as i64;
    let r = params.r();
    let parity: i64 = if x > 0.0 { 0 } else { 1 };
    // d[i][j] magnitudes are r^(g/n) with g = 2i + j*n; g and j share parity
    // because n is odd.
    let ln_z_of = |g: i64| x.abs().ln() - g as f64 / n as f64 * r.ln();
    let mut g = (x.abs().ln() / r.ln() * n as f64).floor() as i64;
    if g.rem_euclid(2) != parity {
        g -= 1;
    }
    let two_over_n = 2.0 / n as f64 * r.ln();
    // z must land in (1, r^(2/n)] for Exact, [1, r^(2/n)) for FromAbove. A
    // coordinate exactly at an interval boundary can round so that both
    // neighbors reject it (z <= 1 in one, z > r^(2/n) in the other); the
    // first reversal of direction detects that and resolves by convention:
    // Exact keeps the boundary as the top of the lower interval, FromAbove
    // as the bottom of the upper one.
    let mut last_move: i64 = 0;
    let mut snapped_z: Option<f64> = None;
    loop {
        let ln_z = ln_z_of(g);
        let too_low = match approach {
            Approach::Exact => ln_z <= 0.0,
            Approach::FromAbove => ln_z < 0.0,
        };
        let too_high = match approach {
            Approach::Exact => ln_z > two_over_n,
            Approach::FromAbove => ln_z >= two_over_n,
        };
        let step = if too_low {
            -2
        } else if too_high {
            2
        } else {
            break;
        };
        if step * last_move < 0 {
            match approach {
                Approach::Exact => {
                    // The boundary exponent is the larger of the oscillating
                    // pair; its interval lies below.
                    if step > 0 {
                        g += 2;
                    }
                    g -= 2;
                    snapped_z = Some((two_over_n).exp());
                }
                Approach::FromAbove => {
                    // The boundary exponent is the larger of the pair; the
                    // coordinate opens its interval.
                    if step > 0 {
                        g += 2;
                    }
                    snapped_z = Some(1.0);
                }
            }
            break;
        }
        g += step;
        last_move = step;
    }
    // g = 2i + j*n determines i via the inverse of 2 modulo odd n.
    let i = (g.rem_euclid(n) * ((n + 1) / 2)).rem_euclid(n);
    let j = (g - 2 * i) / n;
    let z = snapped_z.unwrap_or_else(|| ln_z_of(g).exp());
    Ok(IntervalLocator { i: i as usize, j, z, approach })
}

/// Locator for a coordinate just beyond `tp` (away from the origin).
///
/// Main turning points are interval endpoints, so their limit locator is
/// built structurally (`z = 1` in the adjacent interval) instead of through
/// floating-point location.
pub fn locate_just_beyond(params: &ScheduleParams, tp: TurningPointRef) -> Result<IntervalLocator> {
    let c = tp.canonical(params.n() as usize);
    match c.ell {
        0 => Ok(IntervalLocator { i: c.i as usize, j: c.j, z: 1.0, approach: Approach::FromAbove }),
        _ => locate(params, turning_point(params, c)?, Approach::FromAbove),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn three_agent_params() -> ScheduleParams {
        ScheduleParams::generalized(3, 6.833921, 1.518949, 1.699557).unwrap()
    }

    #[test]
    fn shift_identities_hold() {
        let p = ScheduleParams::proportional(5, 2.7).unwrap();
        let d = |i, j| main_turning_point(&p, i, j);
        for (i, j) in [(0i64, 0i64), (2, -3), (4, 5), (1, 2)] {
            assert_relative_eq!(d(i + 1, j), p.r_pow(2) * d(i, j), max_relative = 1e-12);
            assert_relative_eq!(d(i, j + 1), -p.r() * d(i, j), max_relative = 1e-12);
            assert_relative_eq!(d(i + 5, j), d(i, j + 2), max_relative = 1e-12);
        }
    }

    #[test]
    fn three_agent_waypoints_match_frozen_values() {
        // r = 6.833921, q = 1.518949, a = 1.699557, so s = 2.027507: the
        // round-0 chain of agent 0 runs 1 -> -1.699557 -> 0.327950 -> -r.
        let p = three_agent_params();
        assert_relative_eq!(p.s(), 2.027507, max_relative = 1e-6);
        let wp = round_waypoints(&p, 0, 0);
        assert_relative_eq!(wp[0].1, 1.0, max_relative = 1e-12);
        assert_relative_eq!(wp[1].1, -1.699557, max_relative = 1e-12);
        assert_relative_eq!(wp[2].1, 0.327950, max_relative = 1e-5);
        assert_relative_eq!(wp[3].1, -6.833921, max_relative = 1e-12);
        assert_relative_eq!(wp[0].0, 2.0 * 1.518949 - 1.0, max_relative = 1e-12);
        assert_relative_eq!(wp[1].0, 4.737455, max_relative = 1e-6);
        assert_relative_eq!(wp[2].0, 6.764962, max_relative = 1e-6);
        assert_relative_eq!(wp[3].0, (2.0 * 1.518949 - 1.0) * 6.833921, max_relative = 1e-12);
    }

    #[test]
    fn waypoint_times_advance_by_leg_lengths() {
        let p = three_agent_params();
        for (i, j) in [(0i64, 0i64), (1, -1), (2, 1)] {
            let wp = round_waypoints(&p, i, j);
            for k in 0..3 {
                let dt = wp[k + 1].0 - wp[k].0;
                let dx = (wp[k + 1].1 - wp[k].1).abs();
                assert_relative_eq!(dt, dx, max_relative = 1e-12);
                assert!(dt >= 0.0, "waypoint times must be nondecreasing");
            }
        }
    }

    #[test]
    fn position_interpolates_through_turns() {
        let p = three_agent_params();
        let wp = round_waypoints(&p, 0, 0);
        for (t, pos) in wp {
            assert_relative_eq!(position_at(&p, 0, t).unwrap(), pos, max_relative = 1e-12);
        }
        // Midpoint of the first leg (1 -> -1.699557).
        let mid_t = 0.5 * (wp[0].0 + wp[1].0);
        assert_relative_eq!(
            position_at(&p, 0, mid_t).unwrap(),
            0.5 * (1.0 - 1.699557),
            max_relative = 1e-12
        );
        assert_eq!(position_at(&p, 0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn position_is_unit_speed_everywhere() {
        let p = three_agent_params();
        let q = ScheduleParams::proportional(5, 3.1).unwrap();
        for params in [&p, &q] {
            for agent in 0..params.n() {
                let mut prev = (1e-3, position_at(params, agent, 1e-3).unwrap());
                for step in 1..400 {
                    let t = 1e-3 + step as f64 * 0.05;
                    let pos = position_at(params, agent, t).unwrap();
                    let covered = (pos - prev.1).abs();
                    assert!(
                        covered <= t - prev.0 + crate::tol::SPEED_SLACK,
                        "agent {agent} covered {covered} in {} time units",
                        t - prev.0
                    );
                    prev = (t, pos);
                }
            }
        }
    }

    #[test]
    fn locate_finds_enclosing_interval() {
        let p = three_agent_params();
        for &x in &[1.5, -2.0, 0.01, -350.0, 6.833921, 1.0000001] {
            let loc = locate(&p, x, Approach::Exact).unwrap();
            let lo = main_turning_point(&p, loc.i as i64, loc.j);
            assert!(loc.z > 1.0 && loc.z <= p.r_pow(2) * (1.0 + 1e-14), "z = {} out of band", loc.z);
            assert_relative_eq!(lo * loc.z, x, max_relative = 1e-12);
            assert_eq!(lo.signum(), x.signum(), "interval must sit on the coordinate's side");
        }
    }

    #[test]
    fn locate_resolves_boundaries_by_approach() {
        let p = three_agent_params();
        // x exactly at the turning point d[1][0] = r^(2/3): Exact keeps it in
        // the interval below (z at the top), FromAbove pushes it into the
        // interval starting at d[1][0] (z at 1).
        let x = main_turning_point(&p, 1, 0);
        let exact = locate(&p, x, Approach::Exact).unwrap();
        assert_eq!((exact.i, exact.j), (0, 0));
        assert_relative_eq!(exact.z, p.r_pow(2), max_relative = 1e-12);
        let above = locate(&p, x, Approach::FromAbove).unwrap();
        assert_eq!((above.i, above.j), (1, 0));
        assert_relative_eq!(above.z, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn just_beyond_main_turn_is_structural() {
        let p = three_agent_params();
        let loc = locate_just_beyond(&p, TurningPointRef::main(2, -1)).unwrap();
        assert_eq!((loc.i, loc.j, loc.z, loc.approach), (2, -1, 1.0, Approach::FromAbove));
        // Wrapped labels reduce before locating: i = 3 is i = 0 two rounds on.
        let wrapped = locate_just_beyond(&p, TurningPointRef::main(3, -1)).unwrap();
        assert_eq!((wrapped.i, wrapped.j, wrapped.z), (0, 1, 1.0));
    }

    #[test]
    fn canonical_label_reduction_preserves_coordinates() {
        let p = ScheduleParams::proportional(7, 2.2).unwrap();
        for (i, j) in [(9i64, 0i64), (-3, 2), (14, -4)] {
            let tp = TurningPointRef::main(i, j);
            let c = tp.canonical(7);
            assert!((0..7).contains(&c.i));
            assert_relative_eq!(
                main_turning_point(&p, i, j),
                main_turning_point(&p, c.i, c.j),
                max_relative = 1e-12
            );
        }
    }
}
