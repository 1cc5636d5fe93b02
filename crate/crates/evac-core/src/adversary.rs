//! Worst-case evaluation: search time, evacuation time against an adversary
//! that crashes up to `f` agents, and competitive-ratio certificates.
//!
//! The driving quantities, for a target `x` and a crash set `F`:
//!
//! ```text
//! S = min over agents not in F of first-visit time to x
//! delta = max over agents not in F of |position(S) - x|
//! E = S + delta,    ratio = E / |x|
//! ```
//!
//! The supremum of the ratio over `x` is attained in the limit just beyond
//! turning points, so certificates scan exactly those one-sided limits; a
//! randomized grid check confirms interior targets never exceed the certified
//! value.

use itertools::Itertools;
use ordered_float::NotNan;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::ScheduleKind;
use crate::schedule::TurningPointRef;
use crate::target::{ResolvedTarget, TargetSpec};
use crate::{kinematics, par, tol, EvacError, Result, ScheduleParams};

/// Rounds scanned by default; ratios are round-invariant by scale symmetry,
/// so the extra rounds only guard against implementation drift.
pub const DEFAULT_WINDOW: usize = 3;

/// Exhaustive-subset ceiling: beyond this many crash subsets the exhaustive
/// evaluator refuses and the prefix evaluator must be used instead.
const SUBSET_CEILING: u128 = 2_000_000;

/// Outcome of the adversary's best play for one target.
#[derive(Debug, Clone, PartialEq)]
pub struct EvacOutcome {
    /// Crashed agents, ascending labels.
    pub fault_set: Vec<usize>,
    /// First reliable visit to the target.
    pub search_time: f64,
    /// Reliable agent farthest from the target at the search time (ties to
    /// the smallest label).
    pub most_distant: usize,
    /// Distance of that agent; only reliable agents must evacuate.
    pub delta: f64,
    /// Same maximum taken over all agents, reported for comparison.
    pub delta_all: f64,
    /// `search_time + delta`.
    pub evacuation_time: f64,
    /// `evacuation_time / |x|`.
    pub ratio: f64,
}

/// Certified worst case over the candidate-target scan.
#[derive(Debug, Clone)]
pub struct CrCertificate {
    pub ratio: f64,
    pub witness: TargetSpec,
    pub target_coordinate: f64,
    pub outcome: EvacOutcome,
    pub candidates_examined: usize,
    pub window: usize,
    /// Maximum ratio seen in each scanned round.
    pub round_maxima: Vec<f64>,
    /// Largest relative disagreement between consecutive round maxima.
    pub drift: f64,
    /// True when the drift stays within the stabilization tolerance; a false
    /// value marks the certificate inconclusive, never silently wrong.
    pub stabilized: bool,
}

/// Result of the randomized interior-target supremacy check.
#[derive(Debug, Clone)]
pub struct GridCheckReport {
    pub samples: usize,
    pub seed: u64,
    pub certificate_ratio: f64,
    pub max_ratio: f64,
    /// `max_ratio - certificate_ratio`; negative slack means every interior
    /// target stayed below the certificate.
    pub max_excess: f64,
    pub worst_x: f64,
    pub ok: bool,
}

impl std::fmt::Display for CrCertificate {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "ratio: {:.9}", self.ratio)?;
        writeln!(out, "witness: {}", self.witness)?;
        writeln!(out, "target-coordinate: {:.9}", self.target_coordinate)?;
        writeln!(out, "search-time: {:.9}", self.outcome.search_time)?;
        writeln!(out, "fault-set: {:?}", self.outcome.fault_set)?;
        writeln!(out, "most-distant-agent: {}", self.outcome.most_distant)?;
        writeln!(out, "delta: {:.9}", self.outcome.delta)?;
        writeln!(out, "delta-all: {:.9}", self.outcome.delta_all)?;
        writeln!(out, "evacuation-time: {:.9}", self.outcome.evacuation_time)?;
        writeln!(out, "candidates-examined: {}", self.candidates_examined)?;
        writeln!(out, "window: {}", self.window)?;
        writeln!(out, "stabilized: {}", self.stabilized)?;
        write!(out, "round-drift: {:.3e}", self.drift)
    }
}

impl std::fmt::Display for GridCheckReport {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "samples: {}", self.samples)?;
        writeln!(out, "seed: {}", self.seed)?;
        writeln!(out, "certificate-ratio: {:.9}", self.certificate_ratio)?;
        writeln!(out, "max-interior-ratio: {:.9}", self.max_ratio)?;
        writeln!(out, "max-excess: {:.3e}", self.max_excess)?;
        writeln!(out, "worst-x: {:.9}", self.worst_x)?;
        write!(out, "ok: {}", self.ok)
    }
}

fn check_fault_set(params: &ScheduleParams, fault_set: &[usize]) -> Result<()> {
    if fault_set.len() > params.f() {
        return Err(EvacError::Domain(format!(
            "crash set of {} agents exceeds the fault budget f = {}",
            fault_set.len(),
            params.f()
        )));
    }
    for &agent in fault_set {
        if agent >= params.n() {
            return Err(EvacError::Domain(format!(
                "crashed agent label {agent} must lie below n = {}",
                params.n()
            )));
        }
    }
    if fault_set.iter().tuple_windows().any(|(a, b)| a >= b) {
        return Err(EvacError::Domain(
            "crash set must be strictly ascending agent labels".into(),
        ));
    }
    Ok(())
}

/// First-visit time of every agent, indexed by agent label.
fn agent_visit_times(params: &ScheduleParams, target: &ResolvedTarget) -> Result<Vec<f64>> {
    (0..params.n())
        .map(|agent| Ok(kinematics::first_visit_time(params, agent, &target.locator)?.time))
        .collect()
}

/// First reliable visit to the target when `fault_set` crashes.
pub fn search_time(
    params: &ScheduleParams,
    target: TargetSpec,
    fault_set: &[usize],
) -> Result<f64> {
    check_fault_set(params, fault_set)?;
    let resolved = target.resolve(params)?;
    let times = agent_visit_times(params, &resolved)?;
    let s = times
        .iter()
        .enumerate()
        .filter(|(agent, _)| !fault_set.contains(agent))
        .map(|(_, &t)| t)
        .fold(f64::INFINITY, f64::min);
    Ok(s)
}

/// Evacuation outcome for a fixed crash set (ascending labels).
fn outcome_for(
    params: &ScheduleParams,
    target: &ResolvedTarget,
    times: &[f64],
    fault_set: Vec<usize>,
) -> Result<EvacOutcome> {
    let x = target.coordinate;
    let s = times
        .iter()
        .enumerate()
        .filter(|(agent, _)| fault_set.binary_search(agent).is_err())
        .map(|(_, &t)| t)
        .fold(f64::INFINITY, f64::min);
    let mut delta = f64::NEG_INFINITY;
    let mut delta_all = f64::NEG_INFINITY;
    let mut most_distant = 0usize;
    for agent in 0..params.n() {
        let dist = (crate::schedule::position_at(params, agent, s)? - x).abs();
        delta_all = delta_all.max(dist);
        if fault_set.binary_search(&agent).is_err() && dist > delta {
            delta = dist;
            most_distant = agent;
        }
    }
    Ok(EvacOutcome {
        fault_set,
        search_time: s,
        most_distant,
        delta,
        delta_all,
        evacuation_time: s + delta,
        ratio: (s + delta) / x.abs(),
    })
}

/// Evacuation outcome for one fixed crash set (ascending labels), without
/// adversarial maximization; the closed-form counterpart of a single
/// simulation run.
pub fn evacuation_outcome_with_faults(
    params: &ScheduleParams,
    target: TargetSpec,
    fault_set: &[usize],
) -> Result<EvacOutcome> {
    check_fault_set(params, fault_set)?;
    let resolved = target.resolve(params)?;
    let times = agent_visit_times(params, &resolved)?;
    outcome_for(params, &resolved, &times, fault_set.to_vec())
}

/// Worst evacuation outcome over every crash subset of size at most `f`,
/// enumerated exhaustively. Ties keep the first maximizer in
/// (size, lexicographic) subset order.
pub fn evacuation_time(params: &ScheduleParams, target: TargetSpec) -> Result<EvacOutcome> {
    let n = params.n() as u128;
    let mut subsets: u128 = 1;
    let mut binom: u128 = 1;
    for k in 1..=params.f() as u128 {
        binom = binom * (n + 1 - k) / k;
        subsets += binom;
        if subsets > SUBSET_CEILING {
            return Err(EvacError::Domain(format!(
                "exhaustive crash-subset enumeration needs more than {SUBSET_CEILING} subsets \
                 for n = {n}; use the visit-prefix evaluator"
            )));
        }
    }
    let resolved = target.resolve(params)?;
    let times = agent_visit_times(params, &resolved)?;
    let mut best: Option<EvacOutcome> = None;
    for size in 0..=params.f() {
        for subset in (0..params.n()).combinations(size) {
            let outcome = outcome_for(params, &resolved, &times, subset)?;
            if best.as_ref().is_none_or(|b| outcome.evacuation_time > b.evacuation_time) {
                best = Some(outcome);
            }
        }
    }
    Ok(best.expect("the empty crash set is always enumerated"))
}

/// Worst evacuation outcome computed without enumerating subsets.
///
/// Crashing any set rather than a prefix of the visit order only shrinks the
/// reliable set that `delta` maximizes over without delaying the search, so
/// some prefix of the first `f` visitors is always a worst crash set; this
/// evaluates the `f + 1` prefixes and returns the worst, with `search_time`
/// equal to the corresponding order statistic of the visit times. Equal to
/// [`evacuation_time`] in every field except possibly the identity of a tied
/// `fault_set`.
pub fn evacuation_time_fast(params: &ScheduleParams, target: TargetSpec) -> Result<EvacOutcome> {
    let resolved = target.resolve(params)?;
    let times = agent_visit_times(params, &resolved)?;
    let order: Vec<usize> = (0..params.n())
        .sorted_by_key(|&agent| {
            (NotNan::new(times[agent]).expect("visit times are finite"), agent)
        })
        .collect();
    let mut best: Option<EvacOutcome> = None;
    for crashed in 0..=params.f() {
        let fault_set: Vec<usize> = order[..crashed].iter().copied().sorted().collect();
        let outcome = outcome_for(params, &resolved, &times, fault_set)?;
        if best.as_ref().is_none_or(|b| outcome.evacuation_time > b.evacuation_time) {
            best = Some(outcome);
        }
    }
    Ok(best.expect("the empty prefix is always evaluated"))
}

/// Candidate targets for one scan: the just-beyond limit of every turning
/// and sub-turning point, rounds `0..window`, in (round, agent, leg) order.
fn candidate_targets(params: &ScheduleParams, window: usize) -> Vec<TargetSpec> {
    let legs: &[u8] = match params.kind() {
        ScheduleKind::Proportional => &[0],
        ScheduleKind::Generalized => &[0, 1, 2],
    };
    let mut out = Vec::with_capacity(window * params.n() * legs.len());
    for j in 0..window {
        for i in 0..params.n() {
            for &ell in legs {
                out.push(TargetSpec::JustBeyond(TurningPointRef {
                    i: i as i64,
                    j: j as i64,
                    ell,
                }));
            }
        }
    }
    out
}

/// Certified competitive ratio: the maximum adversary ratio over the
/// candidate scan, with per-round maxima recorded so a non-stabilized scan is
/// visible in the certificate rather than silently wrong. Ties keep the first
/// maximizer in scan order.
pub fn competitive_ratio(params: &ScheduleParams, window: usize) -> Result<CrCertificate> {
    if window == 0 {
        return Err(EvacError::Domain("scan window must cover at least one round".into()));
    }
    let candidates = candidate_targets(params, window);
    let evaluated: Vec<Result<(f64, EvacOutcome)>> = par::map_collect(&candidates, |spec| {
        let resolved = spec.resolve(params)?;
        let outcome = evacuation_time_fast(params, *spec)?;
        Ok((resolved.coordinate, outcome))
    });
    let mut best: Option<(usize, f64, EvacOutcome)> = None;
    let per_round = candidates.len() / window;
    let mut round_maxima = vec![f64::NEG_INFINITY; window];
    for (index, item) in evaluated.into_iter().enumerate() {
        let (coordinate, outcome) = item?;
        let round = index / per_round;
        round_maxima[round] = round_maxima[round].max(outcome.ratio);
        if best.as_ref().is_none_or(|(_, _, b)| outcome.ratio > b.ratio) {
            best = Some((index, coordinate, outcome));
        }
    }
    let (index, target_coordinate, outcome) =
        best.expect("a positive window always yields candidates");
    let drift = round_maxima
        .iter()
        .tuple_windows()
        .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
        .fold(0.0, f64::max);
    Ok(CrCertificate {
        ratio: outcome.ratio,
        witness: candidates[index],
        target_coordinate,
        outcome,
        candidates_examined: candidates.len(),
        window,
        round_maxima,
        drift,
        stabilized: drift <= tol::STABILIZATION,
    })
}

/// The certificate's ratio, or a loud error when the scan failed to
/// stabilize.
pub fn certified_ratio(params: &ScheduleParams, window: usize) -> Result<f64> {
    let cert = competitive_ratio(params, window)?;
    if !cert.stabilized {
        return Err(EvacError::NonStabilized { rounds: window, drift: cert.drift });
    }
    Ok(cert.ratio)
}

/// Randomized check that interior targets never beat the turning-point
/// certificate: samples log-uniform coordinates across the scanned span and
/// compares each adversary ratio against the certified maximum.
pub fn grid_check_turning_point_supremum(
    params: &ScheduleParams,
    samples: usize,
    seed: u64,
) -> Result<GridCheckReport> {
    if samples == 0 {
        return Err(EvacError::Domain("grid check needs at least one sample".into()));
    }
    let cert = competitive_ratio(params, DEFAULT_WINDOW)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span_numer = (2 * (params.n() - 1) + params.n() * (DEFAULT_WINDOW - 1)) as f64;
    let ln_max = span_numer / params.n() as f64 * params.r().ln();
    let mut max_ratio = f64::NEG_INFINITY;
    let mut worst_x = 0.0;
    for _ in 0..samples {
        let magnitude = (rng.gen_range(0.0..ln_max)).exp();
        let x = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
        let outcome = evacuation_time_fast(params, TargetSpec::Exact(x))?;
        if outcome.ratio > max_ratio {
            max_ratio = outcome.ratio;
            worst_x = x;
        }
    }
    let max_excess = max_ratio - cert.ratio;
    Ok(GridCheckReport {
        samples,
        seed,
        certificate_ratio: cert.ratio,
        max_ratio,
        max_excess,
        worst_x,
        ok: max_excess <= tol::DOMINANCE_SLACK,
    })
}
