//! Three-agent search with one possibly lying agent: the announcement
//! response protocol and its adversarial evaluation.
//!
//! The searched coordinate is confirmed once the claim of an agent at the
//! target is provable under the one-fault budget: either a second agent
//! corroborates the location, or the false announcement is exposed by a
//! reliable visit to the announced spot that finds it empty. Lying about a
//! location an agent never visits exposes it instantly, so every lie worth
//! evaluating is emitted exactly when the liar's own schedule passes the
//! announced coordinate.
//!
//! Scale symmetry pins the announced coordinate into the first positive
//! interval: shrinking every length by `r^(2/n)` relabels agents cyclically,
//! and the whole trajectory family satisfies `pos(r * t) = -r * pos(t)`, so
//! a mirrored announcement maps to a canonical one with the true target
//! negated and rescaled. A target grid covering both sides of the origin
//! therefore exhausts all scenarios.

use crate::kinematics::{first_visit_by_offset, first_visit_time, visit_order_offset};
use crate::schedule::{self, Approach, TurningPointRef};
use crate::target::TargetSpec;
use crate::{adversary, par, tol, EvacError, Result, ScheduleKind, ScheduleParams};

/// A detection claim: `agent` says the target sits at `location`, spoken at
/// `time` from that very spot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Announcement {
    pub agent: usize,
    pub location: f64,
    pub time: f64,
}

/// Which branch of the response protocol an announcement lands in.
///
/// The split point inside an interval is the sub-turn apex of the second
/// scheduled visitor: at or below it (`Case1`) both remaining agents can
/// check the claim directly; above it (`Case2`) the deepest agent first
/// completes its scheduled turn. `ImmediateExposure` covers announcements
/// that are inconsistent on their face (origin, or spoken away from the
/// announcer's actual position): the two other agents sweep opposite
/// directions and ignore the claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseCase {
    Case1,
    Case2,
    ImmediateExposure,
}

impl std::fmt::Display for ResponseCase {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResponseCase::Case1 => write!(out, "case-1"),
            ResponseCase::Case2 => write!(out, "case-2"),
            ResponseCase::ImmediateExposure => write!(out, "immediate-exposure"),
        }
    }
}

/// Post-announcement trajectory of one agent: unit-speed polyline knots
/// starting at the announcement instant, then a ray of `ray_direction`
/// forever.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentPlan {
    pub agent: usize,
    /// `(time, position)` knots; consecutive knots are unit-speed legs.
    pub waypoints: Vec<(f64, f64)>,
    /// `+1.0` or `-1.0`: direction of the final unbounded leg.
    pub ray_direction: f64,
}

impl AgentPlan {
    /// Position at `t`, which must not precede the first knot.
    pub fn position(&self, t: f64) -> f64 {
        for pair in self.waypoints.windows(2) {
            let (t0, p0) = pair[0];
            let (t1, p1) = pair[1];
            if t <= t1 {
                if t1 <= t0 {
                    return p1;
                }
                return p0 + (t - t0) * (p1 - p0) / (t1 - t0);
            }
        }
        let (t_last, p_last) = *self.waypoints.last().expect("plans carry a starting knot");
        p_last + self.ray_direction * (t - t_last).max(0.0)
    }

    /// First time at or after the starting knot at which the plan crosses
    /// `x`; `None` when the trajectory never reaches it.
    pub fn first_crossing(&self, x: f64) -> Option<f64> {
        for pair in self.waypoints.windows(2) {
            let (t0, p0) = pair[0];
            let (_, p1) = pair[1];
            if (p0 - x) * (p1 - x) <= 0.0 {
                return Some(t0 + (x - p0).abs());
            }
        }
        let (t_last, p_last) = *self.waypoints.last().expect("plans carry a starting knot");
        if (x - p_last) * self.ray_direction >= 0.0 {
            Some(t_last + (x - p_last).abs())
        } else {
            None
        }
    }
}

/// Deterministic response to an announcement: the branch taken and the
/// trajectories of the two agents that did not announce.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponsePlan {
    pub case: ResponseCase,
    pub announcement: Announcement,
    /// Plans for the two non-announcing agents.
    pub plans: Vec<AgentPlan>,
}

impl ResponsePlan {
    fn plan_for(&self, agent: usize) -> &AgentPlan {
        self.plans
            .iter()
            .find(|p| p.agent == agent)
            .expect("the response plan covers both non-announcing agents")
    }
}

/// One adversary choice: which agent is byzantine, whether (and where) it
/// lies, and where the target really is.
#[derive(Debug, Clone, PartialEq)]
pub struct ByzScenario {
    pub byz_agent: usize,
    /// Announced coordinate of the false claim, when the adversary lies.
    pub lie: Option<f64>,
    pub true_target: f64,
    /// True when the byzantine agent stays silent at the true target.
    pub suppressed: bool,
}

/// Worst case over the scenario grids, reported with both family maxima.
#[derive(Debug, Clone)]
pub struct ByzCertificate {
    /// Overall ratio: max of the silent family and the lying family.
    pub ratio: f64,
    pub scenario: ByzScenario,
    pub completion_time: f64,
    /// Response branch of the worst lying scenario; `None` when silence wins.
    pub case: Option<ResponseCase>,
    /// Worst ratio with a silent byzantine agent (crash-equivalent family).
    pub suppression_ratio: f64,
    /// Worst ratio over the lie grids.
    pub lie_ratio_max: f64,
    pub scenarios_examined: usize,
    /// Lie scenarios skipped because a reliable agent had already visited
    /// the true target on schedule before the lie was spoken; those reduce
    /// to the silent family.
    pub preempted: usize,
    /// Flag raised when lying beats silence beyond tolerance; a true value
    /// is a counterexample to the protocol's guarantee, surfaced loudly.
    pub exceeds_suppression: bool,
}

impl std::fmt::Display for ByzCertificate {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "ratio: {:.9}", self.ratio)?;
        writeln!(out, "byz-agent: {}", self.scenario.byz_agent)?;
        match self.scenario.lie {
            Some(x) => writeln!(out, "lie: {x:.9}")?,
            None => writeln!(out, "lie: none")?,
        }
        writeln!(out, "true-target: {:.9}", self.scenario.true_target)?;
        writeln!(out, "suppressed: {}", self.scenario.suppressed)?;
        match self.case {
            Some(c) => writeln!(out, "case: {c}")?,
            None => writeln!(out, "case: none")?,
        }
        writeln!(out, "completion-time: {:.9}", self.completion_time)?;
        writeln!(out, "suppression-ratio: {:.9}", self.suppression_ratio)?;
        writeln!(out, "lie-scenario-max: {:.9}", self.lie_ratio_max)?;
        writeln!(out, "scenarios-examined: {}", self.scenarios_examined)?;
        writeln!(out, "preempted: {}", self.preempted)?;
        write!(out, "exceeds-suppression: {}", self.exceeds_suppression)
    }
}

fn check_three_agent(params: &ScheduleParams) -> Result<()> {
    if params.n() != 3 || params.kind() != ScheduleKind::Generalized {
        return Err(EvacError::Domain(
            "the announcement response protocol is defined for the three-agent generalized \
             schedule"
                .into(),
        ));
    }
    Ok(())
}

/// Opposite full-speed sweeps for two vindicated agents: the one further
/// left (ties to the smaller label) takes the negative ray.
fn opposite_sweeps(params: &ScheduleParams, t: f64, first: usize, second: usize) -> Result<Vec<AgentPlan>> {
    let p_first = schedule::position_at(params, first, t)?;
    let p_second = schedule::position_at(params, second, t)?;
    let first_goes_left = match p_first.partial_cmp(&p_second) {
        Some(std::cmp::Ordering::Less) => true,
        Some(std::cmp::Ordering::Greater) => false,
        _ => first < second,
    };
    let dir = |left: bool| if left { -1.0 } else { 1.0 };
    Ok(vec![
        AgentPlan { agent: first, waypoints: vec![(t, p_first)], ray_direction: dir(first_goes_left) },
        AgentPlan {
            agent: second,
            waypoints: vec![(t, p_second)],
            ray_direction: dir(!first_goes_left),
        },
    ])
}

/// Straight line from the agent's current spot to `x`, then a ray.
fn beeline_then_ray(
    params: &ScheduleParams,
    agent: usize,
    t: f64,
    x: f64,
    ray_direction: f64,
) -> Result<AgentPlan> {
    let p = schedule::position_at(params, agent, t)?;
    Ok(AgentPlan {
        agent,
        waypoints: vec![(t, p), (t + (x - p).abs(), x)],
        ray_direction,
    })
}

/// Follow the agent's own schedule to the end of round `j` (its next
/// full-radius turning point), then ray off; an agent already past that
/// turn rays off from its current position at once.
fn schedule_until_round_end(
    params: &ScheduleParams,
    agent: usize,
    j: i64,
    t: f64,
    ray_direction: f64,
) -> Result<AgentPlan> {
    let p = schedule::position_at(params, agent, t)?;
    let mut waypoints = vec![(t, p)];
    for (wt, wp) in schedule::round_waypoints(params, agent as i64, j) {
        if wt > t {
            waypoints.push((wt, wp));
        }
    }
    Ok(AgentPlan { agent, waypoints, ray_direction })
}

/// Build the deterministic response to `announcement`.
///
/// The two non-announcing agents jointly cover the announced spot and both
/// line directions:
///
/// - announcer is the interval's first scheduled visitor: the second
///   visitor heads for the announced spot and then sweeps the opposite
///   side; the deepest agent checks the spot from below and keeps going
///   (`Case1`), or first completes its scheduled full-radius turn
///   (`Case2`).
/// - announcer is the second visitor: the first visitor has already passed
///   the spot and found it empty, so it finishes its outward leg (when
///   still on it) and sweeps the opposite side; the deepest agent checks
///   the spot as above.
/// - announcer is the deepest agent: both others have already disproved
///   the claim and sweep opposite directions immediately.
///
/// An announcement at the origin or away from the announcer's position is
/// self-exposing: the response is an immediate opposite sweep and the
/// returned case says so.
pub fn respond(params: &ScheduleParams, announcement: &Announcement) -> Result<ResponsePlan> {
    check_three_agent(params)?;
    let x = announcement.location;
    let t_a = announcement.time;
    if announcement.agent >= 3 {
        return Err(EvacError::Domain(format!(
            "announcer label {} must lie below n = 3",
            announcement.agent
        )));
    }
    if !t_a.is_finite() || t_a <= 0.0 {
        return Err(EvacError::Domain(format!(
            "announcement time {t_a} must be finite and positive"
        )));
    }
    let others = [(announcement.agent + 1) % 3, (announcement.agent + 2) % 3];
    let consistent = x != 0.0
        && x.is_finite()
        && (schedule::position_at(params, announcement.agent, t_a)? - x).abs()
            <= tol::JUST_BEYOND_OFFSET * x.abs().max(1.0);
    if !consistent {
        return Ok(ResponsePlan {
            case: ResponseCase::ImmediateExposure,
            announcement: *announcement,
            plans: opposite_sweeps(params, t_a, others[0], others[1])?,
        });
    }
    let locator = schedule::locate(params, x, Approach::Exact)?;
    let i = locator.i;
    let offset = visit_order_offset(3, i, announcement.agent);
    let away = x.signum();
    // The split point is the sub-turn apex of the interval's second visitor,
    // `a * r^(1/3)` in interval units; at the apex the visit is a touch, so
    // the boundary belongs to the first case. The snap band absorbs the few
    // ulps a sub-turn coordinate loses in location.
    let apex = params.a() * params.r_pow(1);
    let case = if locator.z <= apex * (1.0 + tol::EXACT_IDENTITY) {
        ResponseCase::Case1
    } else {
        ResponseCase::Case2
    };
    let deepest = i; // label i: the interval's last scheduled visitor
    let second = (i + 2) % 3;
    let first = (i + 1) % 3;
    let plans = match offset {
        3 => {
            // Announcer is the deepest agent; both others have already
            // visited the spot and found it empty.
            opposite_sweeps(params, t_a, others[0], others[1])?
        }
        1 => {
            let checker = match case {
                ResponseCase::Case1 => beeline_then_ray(params, deepest, t_a, x, away)?,
                _ => schedule_until_round_end(params, deepest, locator.j, t_a, away)?,
            };
            vec![beeline_then_ray(params, second, t_a, x, -away)?, checker]
        }
        2 => {
            // The first visitor already disproved the claim; it finishes
            // its outward leg when still on it, then sweeps the far side.
            let turn = TurningPointRef::main(first as i64, locator.j);
            let turn_t = schedule::turn_time(params, turn)?;
            let p_first = schedule::position_at(params, first, t_a)?;
            let mut waypoints = vec![(t_a, p_first)];
            if t_a < turn_t {
                waypoints.push((turn_t, schedule::turning_point(params, turn)?));
            }
            let sweeper = AgentPlan { agent: first, waypoints, ray_direction: -away };
            let checker = match case {
                ResponseCase::Case1 => beeline_then_ray(params, deepest, t_a, x, away)?,
                _ => schedule_until_round_end(params, deepest, locator.j, t_a, away)?,
            };
            vec![sweeper, checker]
        }
        _ => unreachable!("offsets for n = 3 are 1, 2, 3"),
    };
    Ok(ResponsePlan { case, announcement: *announcement, plans })
}

/// Announcement emitted at the announcer's first scheduled pass of the
/// canonical-interval coordinate `z` (in units of the interval's lower
/// turning point).
fn scheduled_announcement(params: &ScheduleParams, offset: usize, z: f64) -> Result<Announcement> {
    let locator = schedule::locate(params, z, Approach::Exact)?;
    let time = first_visit_by_offset(params, &locator, offset)?.time;
    Ok(Announcement { agent: (locator.i + offset) % 3, location: z, time })
}

/// Completion time of the search against one lying scenario, or `None`
/// when a reliable agent had already visited the true target on schedule
/// before the lie was spoken (the scenario degenerates to the silent
/// family).
///
/// Confirmation routes, all under the one-fault budget:
/// - the lie was already disproved (or is disproved en route) no later
///   than the find: the find stands at the find time;
/// - otherwise the faster of: the other reliable agent diverting to the
///   found coordinate, the finder itself checking the announced spot, or
///   the standing plan's own later visit to the announced spot;
/// - a find at the announced coordinate itself corroborates the
///   announcement: two agents agree, which the budget cannot fake.
pub fn scenario_completion(
    params: &ScheduleParams,
    plan: &ResponsePlan,
    true_target: f64,
) -> Result<Option<f64>> {
    let t_a = plan.announcement.time;
    let lie = plan.announcement.location;
    let reliable = [plan.plans[0].agent, plan.plans[1].agent];
    let target_loc = schedule::locate(params, true_target, Approach::Exact)?;
    for agent in reliable {
        if first_visit_time(params, agent, &target_loc)?.time <= t_a * (1.0 + tol::EXACT_IDENTITY) {
            return Ok(None);
        }
    }
    let arr: Vec<Option<f64>> =
        reliable.iter().map(|&a| plan.plan_for(a).first_crossing(true_target)).collect();
    let (finder_idx, arr_f) = match (arr[0], arr[1]) {
        (Some(a), Some(b)) => {
            if a <= b {
                (0, a)
            } else {
                (1, b)
            }
        }
        (Some(a), None) => (0, a),
        (None, Some(b)) => (1, b),
        (None, None) => {
            return Err(EvacError::Contract(format!(
                "response plan never reaches coordinate {true_target}: both line directions \
                 must stay covered"
            )));
        }
    };
    if (true_target - lie).abs() <= tol::EXACT_IDENTITY * lie.abs().max(1.0) {
        // The find corroborates the announcement itself.
        return Ok(Some(arr_f));
    }
    let lie_loc = schedule::locate(params, lie, Approach::Exact)?;
    let mut cert_min = f64::INFINITY;
    for agent in reliable {
        let cert = if first_visit_time(params, agent, &lie_loc)?.time
            <= t_a * (1.0 + tol::EXACT_IDENTITY)
        {
            t_a
        } else {
            plan.plan_for(agent).first_crossing(lie).unwrap_or(f64::INFINITY)
        };
        cert_min = cert_min.min(cert);
    }
    if cert_min <= arr_f * (1.0 + tol::EXACT_IDENTITY) {
        return Ok(Some(arr_f));
    }
    let other = plan.plan_for(reliable[1 - finder_idx]);
    let divert = arr_f + (other.position(arr_f) - true_target).abs();
    let self_check = arr_f + (true_target - lie).abs();
    Ok(Some(divert.min(self_check).min(cert_min)))
}

/// Worst ratio with a silent byzantine agent: the target is announced by
/// the first reliable visitor and the remaining reliable agent must reach
/// it to corroborate, which is exactly a single-crash evacuation.
fn suppression_certificate(params: &ScheduleParams) -> Result<(f64, ByzScenario, f64)> {
    let mut best: Option<(f64, ByzScenario, f64)> = None;
    for byz in 0..3 {
        for j in 0..adversary::DEFAULT_WINDOW as i64 {
            for i in 0..3 {
                for ell in 0..3 {
                    let target = TargetSpec::JustBeyond(TurningPointRef { i, j, ell });
                    let outcome = adversary::evacuation_outcome_with_faults(params, target, &[byz])?;
                    if best.as_ref().is_none_or(|(r, _, _)| outcome.ratio > *r) {
                        let coordinate = target.realized_coordinate(params)?;
                        best = Some((
                            outcome.ratio,
                            ByzScenario {
                                byz_agent: byz,
                                lie: None,
                                true_target: coordinate,
                                suppressed: true,
                            },
                            outcome.evacuation_time,
                        ));
                    }
                }
            }
        }
    }
    Ok(best.expect("the candidate window is never empty"))
}

/// Interior lie coordinates plus the analytic corners of both cases, all in
/// canonical interval units `(1, r^(2/3)]`.
fn lie_coordinates(params: &ScheduleParams, count: usize) -> Vec<f64> {
    let top = params.r_pow(2);
    let apex = params.a() * params.r_pow(1);
    let lo = 1.0 + tol::JUST_BEYOND_OFFSET;
    let mut zs: Vec<f64> = (0..count)
        .map(|m| lo * (top / lo).powf((m as f64 + 0.5) / count as f64))
        .collect();
    let eps = tol::JUST_BEYOND_OFFSET;
    zs.extend([
        lo,
        apex * (1.0 - eps),
        apex,
        apex * (1.0 + eps),
        top * (1.0 - eps),
        top,
    ]);
    zs.retain(|&z| z > 1.0 && z <= top);
    zs
}

/// Signed true-target coordinates: log-spaced magnitudes on both sides plus
/// the analytic corners (turning-point depths and their offsets) and the
/// per-scenario dynamic corners supplied by the caller.
fn target_coordinates(params: &ScheduleParams, count: usize, dynamic: &[f64]) -> Vec<f64> {
    let r = params.r();
    let a = params.a();
    let eps = tol::JUST_BEYOND_OFFSET;
    let per_side = count.max(2);
    let (w_lo, w_hi) = (0.8, r * r * 1.3);
    let mut mags: Vec<f64> = (0..per_side)
        .map(|m| w_lo * (w_hi / w_lo).powf((m as f64 + 0.5) / per_side as f64))
        .collect();
    for c in [
        a,
        params.r_pow(1),
        a * params.r_pow(1),
        params.r_pow(2),
        a * params.r_pow(2),
        r,
        a * r,
        r * params.r_pow(1),
    ] {
        mags.extend([c * (1.0 - eps), c, c * (1.0 + eps)]);
    }
    let mut out = Vec::with_capacity(mags.len() * 2 + dynamic.len());
    for w in mags {
        out.push(w);
        out.push(-w);
    }
    for &d in dynamic {
        if d.abs() > 1e-6 {
            out.push(d);
        }
    }
    out
}

struct FamilyBlock {
    best: Option<(f64, f64, f64, ResponseCase, usize, f64)>,
    examined: usize,
    preempted: usize,
}

/// Adversarial evaluation over (byzantine agent, lie coordinate, true
/// target, suppression) with at least 100 grid points per axis; corners of
/// both response cases are always included. The certificate reports the
/// silent and lying family maxima separately and flags a lying win instead
/// of clamping it.
pub fn byz_competitive_ratio(
    params: &ScheduleParams,
    lie_grid: usize,
    target_grid: usize,
) -> Result<ByzCertificate> {
    check_three_agent(params)?;
    if lie_grid < 100 || target_grid < 100 {
        return Err(EvacError::Domain(format!(
            "scenario grids need at least 100 points per axis, got ({lie_grid}, {target_grid})"
        )));
    }
    let (suppression_ratio, silent_scenario, silent_completion) = suppression_certificate(params)?;
    let scenarios: Vec<(usize, f64)> = lie_coordinates(params, lie_grid)
        .into_iter()
        .flat_map(|z| [(1usize, z), (2, z), (3, z)])
        .collect();
    let blocks: Vec<Result<FamilyBlock>> = par::map_collect(&scenarios, |&(offset, z)| {
        let announcement = scheduled_announcement(params, offset, z)?;
        let plan = respond(params, &announcement)?;
        let dynamic: Vec<f64> = plan
            .plans
            .iter()
            .flat_map(|p| {
                let pos = p.waypoints[0].1;
                [
                    pos * (1.0 - tol::JUST_BEYOND_OFFSET),
                    pos * (1.0 + tol::JUST_BEYOND_OFFSET),
                ]
            })
            .chain([z * (1.0 - tol::JUST_BEYOND_OFFSET), z, z * (1.0 + tol::JUST_BEYOND_OFFSET)])
            .collect();
        let mut block = FamilyBlock { best: None, examined: 0, preempted: 0 };
        for target in target_coordinates(params, target_grid, &dynamic) {
            block.examined += 1;
            match scenario_completion(params, &plan, target)? {
                None => block.preempted += 1,
                Some(completion) => {
                    let ratio = completion / target.abs();
                    if block.best.as_ref().is_none_or(|b| ratio > b.0) {
                        block.best = Some((
                            ratio,
                            completion,
                            target,
                            plan.case,
                            announcement.agent,
                            z,
                        ));
                    }
                }
            }
        }
        Ok(block)
    });
    let mut lie_best: Option<(f64, f64, f64, ResponseCase, usize, f64)> = None;
    let mut examined = 0;
    let mut preempted = 0;
    for block in blocks {
        let block = block?;
        examined += block.examined;
        preempted += block.preempted;
        if let Some(b) = block.best {
            if lie_best.as_ref().is_none_or(|cur| b.0 > cur.0) {
                lie_best = Some(b);
            }
        }
    }
    let (lie_ratio_max, lie_completion, lie_target, lie_case, lie_agent, lie_z) =
        lie_best.ok_or_else(|| {
            EvacError::Contract("every lie scenario was preempted: grids too narrow".into())
        })?;
    let lying_wins = lie_ratio_max > suppression_ratio;
    let exceeds_suppression = lie_ratio_max > suppression_ratio + tol::ORACLE_REL;
    let (ratio, scenario, completion_time, case) = if lying_wins {
        (
            lie_ratio_max,
            ByzScenario {
                byz_agent: lie_agent,
                lie: Some(lie_z),
                true_target: lie_target,
                suppressed: true,
            },
            lie_completion,
            Some(lie_case),
        )
    } else {
        (suppression_ratio, silent_scenario, silent_completion, None)
    };
    Ok(ByzCertificate {
        ratio,
        scenario,
        completion_time,
        case,
        suppression_ratio,
        lie_ratio_max,
        scenarios_examined: examined + 3 * 3 * adversary::DEFAULT_WINDOW * 3,
        preempted,
        exceeds_suppression,
    })
}

/// Ratio of one fully specified lying scenario, built from the canonical
/// interval: the `offset`-th scheduled visitor announces `z` at its first
/// pass and the true target sits at `true_target`.
fn probe(params: &ScheduleParams, offset: usize, z: f64, true_target: f64) -> Result<f64> {
    let announcement = scheduled_announcement(params, offset, z)?;
    let plan = respond(params, &announcement)?;
    let completion = scenario_completion(params, &plan, true_target)?.ok_or_else(|| {
        EvacError::Contract(format!(
            "probe scenario (offset {offset}, lie {z}, target {true_target}) is preempted"
        ))
    })?;
    Ok(completion / true_target.abs())
}

/// First-case boundary scenario: the first visitor lies exactly at the
/// case split point while the target hides just beyond the second
/// visitor's most recent turning point on the far side. Attains the
/// schedule's full crash ratio.
pub fn case1_boundary_probe(params: &ScheduleParams) -> Result<f64> {
    check_three_agent(params)?;
    let z = params.a() * params.r_pow(1);
    let target = -params.r_pow(1) * (1.0 + tol::JUST_BEYOND_OFFSET);
    probe(params, 1, z, target)
}

/// Second-case corner scenario: the first visitor lies at the top of its
/// interval while the target hides just beyond the deepest agent's next
/// full-radius turning point, forcing the far-side sweeper to cover it.
pub fn case2_corner_probe(params: &ScheduleParams) -> Result<f64> {
    check_three_agent(params)?;
    let z = params.r_pow(2);
    let target = -params.r() * (1.0 + tol::JUST_BEYOND_OFFSET);
    probe(params, 1, z, target)
}

/// Pointwise comparison of the two second-case lying families on a shared
/// grid: an announcement by the interval's second visitor must never beat
/// an announcement by the first visitor at the same lie and target.
/// Returns `(violations, comparisons)`.
pub fn case2_announcer_domination(
    params: &ScheduleParams,
    lie_grid: usize,
    target_grid: usize,
) -> Result<(usize, usize)> {
    check_three_agent(params)?;
    let apex = params.a() * params.r_pow(1);
    let top = params.r_pow(2);
    let mut violations = 0;
    let mut comparisons = 0;
    for m in 0..lie_grid {
        let z = apex * (top / apex).powf((m as f64 + 0.5) / lie_grid as f64);
        let plan_first = respond(params, &scheduled_announcement(params, 1, z)?)?;
        let plan_second = respond(params, &scheduled_announcement(params, 2, z)?)?;
        for target in target_coordinates(params, target_grid, &[]) {
            let r_first = scenario_completion(params, &plan_first, target)?;
            let r_second = scenario_completion(params, &plan_second, target)?;
            if let (Some(c1), Some(c2)) = (r_first, r_second) {
                comparisons += 1;
                if c2 > c1 + tol::DOMINANCE_SLACK * c1.abs().max(1.0) {
                    violations += 1;
                }
            }
        }
    }
    Ok((violations, comparisons))
}
