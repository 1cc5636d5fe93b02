//! Exact event kinematics: first visits, trajectory meetings, cone slopes.
//!
//! Everything here is a closed form; nothing steps through time. Positions
//! derived from these formulas are cross-checked against
//! [`schedule::position_at`] in tests and against the event simulator in the
//! oracle suite.

use crate::params::ScheduleKind;
use crate::schedule::{self, Approach, IntervalLocator};
use crate::{tol, EvacError, Result, ScheduleParams};

/// Which closed-form branch produced a value.
///
/// Generalized first visits and meetings split on whether the event happens
/// on the early (`Circ`) or late (`Plus`) part of the visiting round; the two
/// expressions coincide for proportional schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Proportional,
    Circ,
    Plus,
}

/// First-visit instant plus the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisitTime {
    pub time: f64,
    pub branch: Branch,
}

/// A meeting of two trajectories: where, when, which branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Meeting {
    pub position: f64,
    pub time: f64,
    pub branch: Branch,
}

/// Slope of the cone traced by a meeting family in the space-time diagram:
/// every meeting of the family obeys `time = beta * |position|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeSlope {
    pub k: usize,
    pub variant: Branch,
    pub beta: f64,
}

impl ConeSlope {
    /// True when the family passes through the origin, where the slope
    /// degenerates; `beta` then carries an infinite sentinel.
    pub fn is_infinite(&self) -> bool {
        self.beta.is_infinite()
    }
}

/// Visit order of `agent` for a target in interval `(d[i][j], d[i+1][j]]`:
/// agent `i + k` (labels mod `n`) is the `k`-th visitor, `k` in `1..=n`.
pub fn visit_order_offset(n: usize, interval_i: usize, agent: usize) -> usize {
    let k = (agent as i64 - interval_i as i64).rem_euclid(n as i64) as usize;
    if k == 0 {
        n
    } else {
        k
    }
}

/// Time at which the `k`-th visitor first reaches the target.
///
/// For a target `x = z * d[i][j]`, the `k`-th visitor is agent `i + k` and
/// reaches `x` either on the early part of its approach round (`Circ`, when
/// the target sits below its sub-turn apex `a * r^((2k-n)/n) * |d[i][j]|`) or
/// on its final full-length leg (`Plus`):
///
/// ```text
/// Circ: (z + 2q * r^((2k-n)/n)) * |d[i][j]|
/// Plus: (z + 2(q-1) * r^(2k/n)) * |d[i][j]|
/// ```
///
/// A target exactly at the apex is visited at the touch, so the boundary goes
/// to `Circ`. A `FromAbove` target compares strictly: a trajectory that
/// exactly touches the coordinate never reaches the far side, so the touch
/// does not count and the visit falls to the `Plus` branch.
pub fn first_visit_by_offset(
    params: &ScheduleParams,
    target: &IntervalLocator,
    k: usize,
) -> Result<VisitTime> {
    let n = params.n();
    if k == 0 || k > n {
        return Err(EvacError::Domain(format!("visitor offset k = {k} must lie in 1..={n}")));
    }
    let d_abs = schedule::main_turning_point(params, target.i as i64, target.j).abs();
    let z = target.z;
    if params.kind() == ScheduleKind::Proportional {
        let time = (z + 2.0 * (params.q() - 1.0) * params.r_pow(2 * k as i64)) * d_abs;
        return Ok(VisitTime { time, branch: Branch::Proportional });
    }
    let apex = params.a() * params.r_pow(2 * k as i64 - n as i64);
    // Targets at sub-turning points land exactly on the apex in real
    // arithmetic but a few ulps off after logarithms; a relative snap band
    // keeps the boundary convention deterministic either way.
    let circ = match target.approach {
        Approach::Exact => z <= apex * (1.0 + tol::EXACT_IDENTITY),
        Approach::FromAbove => z < apex * (1.0 - tol::EXACT_IDENTITY),
    };
    if circ {
        let time = (z + 2.0 * params.q() * params.r_pow(2 * k as i64 - n as i64)) * d_abs;
        Ok(VisitTime { time, branch: Branch::Circ })
    } else {
        let time = (z + 2.0 * (params.q() - 1.0) * params.r_pow(2 * k as i64)) * d_abs;
        Ok(VisitTime { time, branch: Branch::Plus })
    }
}

/// First-visit time of a specific agent.
pub fn first_visit_time(
    params: &ScheduleParams,
    agent: usize,
    target: &IntervalLocator,
) -> Result<VisitTime> {
    if agent >= params.n() {
        return Err(EvacError::Domain(format!(
            "agent label {agent} must lie below n = {}",
            params.n()
        )));
    }
    first_visit_by_offset(params, target, visit_order_offset(params.n(), target.i, agent))
}

/// Meeting of agent `i`'s round-`j` descent with the trajectory `k` labels
/// ahead, for `k` in `0..=f`; `k = 0` degenerates to agent `i`'s own turn
/// event at `d[i][j]`.
///
/// The branch is selected by the depth rule `Circ iff a >= q * (r^((n-2k)/n)
/// - 1)` (boundary inclusive); at the boundary both branch formulas are
/// genuine crossings (the trajectories touch and re-cross), and the rule
/// picks the earlier one. Generalized meetings additionally require the
/// depth hypothesis `a >= r^(1/n)`; outside it the formulas describe no
/// trajectory event, so the call fails rather than return a number.
///
/// Optimized parameter points sit exactly on the branch boundary; callers
/// that need a specific branch use [`intersection_in_branch`].
pub fn intersection(params: &ScheduleParams, i: i64, j: i64, k: usize) -> Result<Meeting> {
    check_meeting_offset(params, k)?;
    let branch = match params.kind() {
        ScheduleKind::Proportional => Branch::Proportional,
        ScheduleKind::Generalized => {
            check_depth_hypothesis(params)?;
            let threshold = params.q() * (params.r_pow(params.n() as i64 - 2 * k as i64) - 1.0);
            if params.a() >= threshold {
                Branch::Circ
            } else {
                Branch::Plus
            }
        }
    };
    intersection_in_branch(params, i, j, k, branch)
}

/// Meeting evaluated in an explicitly chosen branch.
///
/// The branch-selection rule is not applied, but each branch's own leg
/// containment still is: the claimed point must land on the legs the formula
/// assumes, else the configuration is an uncovered intersection case and the
/// call fails. At the branch boundary both variants are genuine crossings,
/// which is what makes this explicit-variant form useful there; strictly
/// inside one branch's region, only that branch's point is a crossing.
pub fn intersection_in_branch(
    params: &ScheduleParams,
    i: i64,
    j: i64,
    k: usize,
    branch: Branch,
) -> Result<Meeting> {
    check_meeting_offset(params, k)?;
    let d = schedule::main_turning_point(params, i, j);
    let d_abs = d.abs();
    let (q, r) = (params.q(), params.r());
    match branch {
        Branch::Proportional => {
            if params.kind() != ScheduleKind::Proportional {
                return Err(EvacError::Domain(
                    "proportional meeting branch requires proportional parameters".into(),
                ));
            }
            let grow = params.r_pow(2 * k as i64);
            Ok(Meeting {
                position: (r - grow) / (r - 1.0) * d,
                time: (r + grow) / (r - 1.0) * d_abs,
                branch,
            })
        }
        Branch::Circ => {
            check_depth_hypothesis(params)?;
            let shrink = params.r_pow(2 * k as i64 - params.n() as i64);
            // The meeting must land on agent i's descent leg, which starts at
            // d[i][j]: position q(1 - r^((2k-n)/n)) d beyond d means agent i
            // has not yet turned there.
            if q * (1.0 - shrink) > 1.0 + tol::EXACT_IDENTITY {
                return Err(EvacError::Contract(format!(
                    "uncovered intersection case: Circ meeting k = {k} lands beyond the \
                     turning point (q(1 - r^((2k-n)/n)) = {:.9} > 1)",
                    q * (1.0 - shrink)
                )));
            }
            Ok(Meeting {
                position: q * (1.0 - shrink) * d,
                time: q * (1.0 + shrink) * d_abs,
                branch,
            })
        }
        Branch::Plus => {
            check_depth_hypothesis(params)?;
            let grow = params.r_pow(2 * k as i64);
            // The meeting must land on agent i's descent leg, which ends at
            // the sub-turn -a d[i][j]: a shallower sub-turn cuts the leg off
            // before the claimed crossing.
            if params.a() < (q - 1.0) * grow - q - tol::EXACT_IDENTITY {
                return Err(EvacError::Contract(format!(
                    "uncovered intersection case: Plus meeting k = {k} needs descent depth \
                     a >= (q-1) r^(2k/n) - q = {:.9}, got a = {:.9}",
                    (q - 1.0) * grow - q,
                    params.a()
                )));
            }
            Ok(Meeting {
                position: (q - (q - 1.0) * grow) * d,
                time: (q + (q - 1.0) * grow) * d_abs,
                branch,
            })
        }
    }
}

fn check_meeting_offset(params: &ScheduleParams, k: usize) -> Result<()> {
    let f = params.f();
    if k > f {
        return Err(EvacError::Domain(format!("meeting family k = {k} must lie in 0..={f}")));
    }
    Ok(())
}

fn check_depth_hypothesis(params: &ScheduleParams) -> Result<()> {
    if params.kind() == ScheduleKind::Generalized
        && params.a() < params.r_pow(1) - tol::EXACT_IDENTITY
    {
        return Err(EvacError::Contract(format!(
            "meeting formulas require sub-turn depth a >= r^(1/n), got a = {:.9} < {:.9}",
            params.a(),
            params.r_pow(1)
        )));
    }
    Ok(())
}

/// Slope of the `k`-th meeting family's cone in the requested variant.
///
/// ```text
/// Circ: (r + r^(2k/n)) / (r - r^(2k/n))
/// Plus: (q + (q-1) r^(2k/n)) / |q - (q-1) r^(2k/n)|
/// ```
///
/// Proportional parameters reproduce the single proportional cone from
/// either variant (with `q = r/(r-1)` the two expressions coincide), recorded
/// as `Proportional`. A vanishing `Plus` denominator means the family passes
/// through the origin: the result carries an infinite `beta` sentinel, see
/// [`ConeSlope::is_infinite`].
pub fn cone_slope(params: &ScheduleParams, k: usize, variant: Branch) -> Result<ConeSlope> {
    check_meeting_offset(params, k)?;
    let r = params.r();
    let q = params.q();
    let grow = params.r_pow(2 * k as i64);
    if params.kind() == ScheduleKind::Proportional {
        return Ok(ConeSlope {
            k,
            variant: Branch::Proportional,
            beta: (r + grow) / (r - grow),
        });
    }
    let beta = match variant {
        Branch::Proportional => {
            return Err(EvacError::Domain(
                "proportional cone variant requires proportional parameters".into(),
            ));
        }
        Branch::Circ => (r + grow) / (r - grow),
        Branch::Plus => {
            let numer = q + (q - 1.0) * grow;
            let denom = q - (q - 1.0) * grow;
            if denom.abs() < tol::EXACT_IDENTITY * numer.abs() {
                f64::INFINITY
            } else {
                numer / denom.abs()
            }
        }
    };
    Ok(ConeSlope { k, variant, beta })
}

/// The agent farthest from coordinate `x` at time `t > 0`, and its distance.
/// Ties go to the smallest agent label.
pub fn most_distant_agent(params: &ScheduleParams, x: f64, t: f64) -> Result<(usize, f64)> {
    if !(t > 0.0) {
        return Err(EvacError::Domain(format!("query time t = {t} must be positive")));
    }
    let mut best = (0usize, f64::NEG_INFINITY);
    for agent in 0..params.n() {
        let dist = (schedule::position_at(params, agent, t)? - x).abs();
        if dist > best.1 {
            best = (agent, dist);
        }
    }
    Ok(best)
}

/// Frontier band of a proportional schedule at time `t`: on each side of the
/// origin some agent sits in `[t / beta_1, t / beta_0]`, and no agent lies
/// beyond `t / beta_0`.
pub fn frontier_bounds(params: &ScheduleParams, t: f64) -> Result<(f64, f64)> {
    if params.kind() != ScheduleKind::Proportional {
        return Err(EvacError::Contract(
            "frontier band is a proportional-schedule bound; generalized schedules do not obey it"
                .into(),
        ));
    }
    if !(t > 0.0) {
        return Err(EvacError::Domain(format!("frontier time t = {t} must be positive")));
    }
    let beta0 = cone_slope(params, 0, Branch::Proportional)?.beta;
    let beta1 = cone_slope(params, 1, Branch::Proportional)?.beta;
    Ok((t / beta1, t / beta0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{locate, locate_just_beyond, position_at, TurningPointRef};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn three_agent_params() -> ScheduleParams {
        ScheduleParams::generalized(3, 6.833921, 1.518949, 1.699557).unwrap()
    }

    #[test]
    fn frozen_three_agent_first_visits() {
        // Target just beyond d[0][0] = 1: visits at 4.7376731 (Plus),
        // 6.7649628 (Circ) and 21.7607549 (Circ, the owner's next-round
        // return).
        let p = three_agent_params();
        let t = locate_just_beyond(&p, TurningPointRef::main(0, 0)).unwrap();
        let expect =
            [(4.7376731, Branch::Plus), (6.7649628, Branch::Circ), (21.7607549, Branch::Circ)];
        for (k, (time, branch)) in (1..=3).zip(expect) {
            let v = first_visit_by_offset(&p, &t, k).unwrap();
            assert_relative_eq!(v.time, time, max_relative = 1e-6);
            assert_eq!(v.branch, branch, "branch for visitor offset {k}");
        }
    }

    #[test]
    fn touching_trajectories_split_by_approach() {
        // The second visitor's sub-turn apex lands exactly on
        // a * r^(1/3) * d[2][-2]: an Exact target is visited at the touch
        // (2.4964437, Circ), a FromAbove target only on the late leg
        // (4.6332696, Plus).
        let p = three_agent_params();
        let apex_z = p.a() * p.r_pow(1);
        let exact = IntervalLocator { i: 2, j: -2, z: apex_z, approach: Approach::Exact };
        let v = first_visit_by_offset(&p, &exact, 2).unwrap();
        assert_eq!(v.branch, Branch::Circ);
        assert_relative_eq!(v.time, 2.4964437, max_relative = 1e-6);
        let above = IntervalLocator { i: 2, j: -2, z: apex_z, approach: Approach::FromAbove };
        let v = first_visit_by_offset(&p, &above, 2).unwrap();
        assert_eq!(v.branch, Branch::Plus);
        assert_relative_eq!(v.time, 4.6332696, max_relative = 1e-6);
    }

    #[test]
    fn proportional_first_visits_match_frozen_values() {
        let p = ScheduleParams::proportional(3, 2.0).unwrap();
        let t = locate(&p, 1.3, Approach::Exact).unwrap();
        assert_eq!((t.i, t.j), (0, 0));
        for (k, time) in (1..=3).zip([1.3 + 3.174802, 1.3 + 5.039684, 1.3 + 8.0]) {
            let v = first_visit_by_offset(&p, &t, k).unwrap();
            assert_relative_eq!(v.time, time, max_relative = 1e-6);
            assert_eq!(v.branch, Branch::Proportional);
        }
    }

    #[test]
    fn first_visit_lands_on_the_target() {
        let p3 = three_agent_params();
        let p5 = ScheduleParams::proportional(5, 3.3).unwrap();
        let g5 = ScheduleParams::generalized_with_s(5, 3.58545, 0.17225, 1.67348).unwrap();
        for params in [&p3, &p5, &g5] {
            for &x in &[1.17, -0.44, 7.9, -123.4, 0.031] {
                let loc = locate(params, x, Approach::Exact).unwrap();
                for agent in 0..params.n() {
                    let v = first_visit_time(params, agent, &loc).unwrap();
                    let pos = position_at(params, agent, v.time).unwrap();
                    assert_abs_diff_eq!(pos, x, epsilon = 1e-9 * x.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn visit_times_increase_with_offset() {
        let p3 = three_agent_params();
        let g5 = ScheduleParams::generalized_with_s(5, 4.21585, 0.22813, 2.84964).unwrap();
        for params in [&p3, &g5] {
            for &x in &[1.01, 2.6, -5.0] {
                let loc = locate(params, x, Approach::Exact).unwrap();
                let mut last = 0.0;
                for k in 1..=params.n() {
                    let v = first_visit_by_offset(params, &loc, k).unwrap();
                    assert!(
                        v.time > last,
                        "visitor {k} at {} must come after {last}",
                        v.time
                    );
                    last = v.time;
                }
            }
        }
    }

    #[test]
    fn visit_order_offset_wraps_labels() {
        assert_eq!(visit_order_offset(5, 3, 4), 1);
        assert_eq!(visit_order_offset(5, 3, 0), 2);
        assert_eq!(visit_order_offset(5, 3, 3), 5);
        assert_eq!(visit_order_offset(3, 0, 1), 1);
    }

    #[test]
    fn meetings_lie_on_both_trajectories() {
        // Generic parameter points chosen away from the Circ/Plus branch
        // boundary (optimized points sit exactly on it, where rounding noise
        // picks either branch). gen_plus meets in Plus at offset 1 and Circ
        // at offset 2; gen_circ meets in Circ at both offsets.
        let prop = ScheduleParams::proportional(5, 2.7).unwrap();
        let gen_circ = ScheduleParams::generalized(5, 3.5, 1.5, 2.0).unwrap();
        let gen_plus = ScheduleParams::generalized(5, 8.0, 1.3, 1.6).unwrap();
        assert_eq!(intersection(&gen_plus, 0, 0, 1).unwrap().branch, Branch::Plus);
        assert_eq!(intersection(&gen_plus, 0, 0, 2).unwrap().branch, Branch::Circ);
        assert_eq!(intersection(&gen_circ, 0, 0, 1).unwrap().branch, Branch::Circ);
        for params in [&prop, &gen_circ, &gen_plus] {
            for (i, j) in [(0i64, 0i64), (2, -1), (1, 1)] {
                for k in 1..=params.f() {
                    let m = intersection(params, i, j, k).unwrap();
                    let early = (i.rem_euclid(params.n() as i64)) as usize;
                    let late = ((i + k as i64).rem_euclid(params.n() as i64)) as usize;
                    for agent in [early, late] {
                        let pos = position_at(params, agent, m.time).unwrap();
                        assert_abs_diff_eq!(
                            pos,
                            m.position,
                            epsilon = 1e-9 * m.position.abs().max(1.0)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_depth_admits_both_crossings() {
        // With a exactly at the offset-1 branch threshold the trajectories
        // touch at the sub-turn (the Circ point) and re-cross later (the Plus
        // point): the rule picks Circ, and both explicit variants are genuine
        // events on both trajectories.
        let r: f64 = 3.5;
        let q = 1.5;
        let a = q * ((r.ln() * 3.0 / 5.0).exp() - 1.0);
        let p = ScheduleParams::generalized(5, r, q, a).unwrap();
        assert_eq!(intersection(&p, 0, 0, 1).unwrap().branch, Branch::Circ);
        for branch in [Branch::Circ, Branch::Plus] {
            let m = intersection_in_branch(&p, 0, 0, 1, branch).unwrap();
            for agent in [0usize, 1] {
                let pos = position_at(&p, agent, m.time).unwrap();
                assert_abs_diff_eq!(pos, m.position, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_meetings_are_turn_events() {
        let prop = ScheduleParams::proportional(3, 2.0).unwrap();
        let m0 = intersection(&prop, 0, 0, 0).unwrap();
        assert_relative_eq!(m0.position, 1.0, max_relative = 1e-12);
        assert_relative_eq!(m0.time, 3.0, max_relative = 1e-12);
        let gen = ScheduleParams::generalized(5, 3.5, 1.5, 2.0).unwrap();
        let m0 = intersection(&gen, 1, 0, 0).unwrap();
        let d = crate::schedule::main_turning_point(&gen, 1, 0);
        assert_relative_eq!(m0.position, d, max_relative = 1e-12);
        assert_relative_eq!(m0.time, (2.0 * gen.q() - 1.0) * d.abs(), max_relative = 1e-12);
    }

    #[test]
    fn meeting_offsets_beyond_f_are_rejected() {
        let p = ScheduleParams::proportional(5, 2.0).unwrap();
        let err = intersection(&p, 0, 0, 3).unwrap_err();
        assert!(err.to_string().contains("0..=2"), "unexpected message: {err}");
    }

    #[test]
    fn meetings_respect_the_depth_hypothesis() {
        // a = 1.699557 < r^(1/3) = 1.897681: the meeting formulas describe no
        // real event and must refuse.
        let p = three_agent_params();
        let err = intersection(&p, 0, 0, 1).unwrap_err();
        assert!(
            err.to_string().contains("a >= r^(1/n)"),
            "error must name the violated hypothesis, got: {err}"
        );
    }

    #[test]
    fn uncovered_meeting_case_is_reported_not_guessed() {
        // Extreme pacing pushes the Circ crossing beyond agent i's turning
        // point: the claimed point is on neither trajectory, so the call must
        // refuse rather than return it.
        let p = ScheduleParams::generalized(5, 1000.0, 2.0, 998.0).unwrap();
        let err = intersection(&p, 0, 0, 2).unwrap_err();
        assert!(
            err.to_string().contains("uncovered intersection case"),
            "unexpected message: {err}"
        );
    }

    #[test]
    fn cone_slopes_match_meetings() {
        let prop = ScheduleParams::proportional(7, 2.2).unwrap();
        let gen_circ = ScheduleParams::generalized(5, 3.5, 1.5, 2.0).unwrap();
        let gen_plus = ScheduleParams::generalized(5, 8.0, 1.3, 1.6).unwrap();
        for params in [&prop, &gen_circ, &gen_plus] {
            for k in 0..=params.f() {
                let m = intersection(params, 0, 0, k).unwrap();
                let slope = cone_slope(params, k, m.branch).unwrap();
                for (i, j) in [(0i64, 0i64), (1, -2), (3, 2)] {
                    let m = intersection_in_branch(params, i, j, k, m.branch).unwrap();
                    assert_relative_eq!(
                        m.time,
                        slope.beta * m.position.abs(),
                        max_relative = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn origin_crossing_cone_is_flagged_infinite() {
        // q = r / (r - r^(1-2/n)) zeroes the Plus denominator at k = 1: the
        // family passes through the origin.
        let r: f64 = 2.0;
        let q = r / (r - (r.ln() * 3.0 / 5.0).exp());
        let p = ScheduleParams::generalized(5, r, q, 1.5).unwrap();
        let slope = cone_slope(&p, 1, Branch::Plus).unwrap();
        assert!(slope.is_infinite(), "expected infinite sentinel, got beta = {}", slope.beta);
        let finite = cone_slope(&p, 1, Branch::Circ).unwrap();
        assert!(finite.beta > 1.0 && finite.beta.is_finite());
    }

    #[test]
    fn most_distant_agent_maximizes_distance() {
        let p = ScheduleParams::proportional(5, 2.4).unwrap();
        for &(x, t) in &[(1.7, 4.0), (-0.3, 11.0), (6.0, 2.5)] {
            let (agent, delta) = most_distant_agent(&p, x, t).unwrap();
            for other in 0..p.n() {
                let dist = (position_at(&p, other, t).unwrap() - x).abs();
                assert!(
                    dist <= delta + 1e-12,
                    "agent {other} at distance {dist} beats reported {delta}"
                );
                if other < agent {
                    assert!(dist < delta, "tie must resolve to the smallest label");
                }
            }
        }
    }

    #[test]
    fn frontier_band_brackets_every_agent() {
        let p = ScheduleParams::proportional(5, 2.4).unwrap();
        for &t in &[0.7, 3.0, 41.0, 1234.5] {
            let (lo, hi) = frontier_bounds(&p, t).unwrap();
            assert!(0.0 < lo && lo < hi);
            let positions: Vec<f64> =
                (0..5).map(|m| position_at(&p, m, t).unwrap()).collect();
            for &pos in &positions {
                assert!(pos.abs() <= hi * (1.0 + 1e-12), "agent beyond frontier: {pos} vs {hi}");
            }
            for side in [1.0, -1.0] {
                assert!(
                    positions.iter().any(|&p| p * side >= lo * (1.0 - 1e-12)),
                    "no agent inside the band on side {side} at t = {t}: {positions:?}"
                );
            }
        }
        let gen = three_agent_params();
        assert!(frontier_bounds(&gen, 1.0).is_err(), "band is proportional-only");
    }
}
