//! Independent discrete-event playback of the protocol, used as the oracle
//! against every closed form.
//!
//! Trajectories are built from the schedule definition alone: turning points
//! come from the multiplicative recurrence and waypoint times accumulate leg
//! lengths at unit speed (the anchor time is the geometric series of the
//! infinite-past path length). Nothing here calls the closed-form visit or
//! meeting formulas, so agreement between this module and `kinematics` or
//! `adversary` is evidence, not circularity.
//!
//! Playback: agents follow their trajectories until the first reliable agent
//! reaches the target; that agent announces, every reliable agent then moves
//! straight to the target; crashed agents stay on their trajectories and
//! never announce.

use crate::schedule::{self, TurningPointRef};
use crate::target::TargetSpec;
use crate::params::ScheduleKind;
use crate::{tol, EvacError, Result, ScheduleParams};

/// What happened at an event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventKind {
    /// Reached a scheduled turning point.
    Turn(TurningPointRef),
    /// Passed over the target coordinate.
    Detect,
    /// Broadcast the target coordinate (reliable detection only).
    Announce,
    /// Reached the target after the announcement.
    Arrive,
}

/// One log entry: when, who, where, what.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub agent: usize,
    pub position: f64,
    pub kind: EventKind,
}

/// A configured run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub params: ScheduleParams,
    /// Concrete nonzero target coordinate.
    pub target_x: f64,
    /// Crashed agents, ascending labels.
    pub fault_set: Vec<usize>,
    /// Relative offset used to realize just-beyond limits numerically.
    pub epsilon_rel: f64,
    /// Most schedule rounds any agent may play before the run is declared
    /// stuck.
    pub max_rounds: i64,
}

/// Finished run: full event log plus the two headline times.
#[derive(Debug, Clone)]
pub struct SimRun {
    pub events: Vec<Event>,
    /// Announcement time: first reliable agent on the target.
    pub search_time: f64,
    /// Last reliable arrival at the target.
    pub evacuation_time: f64,
}

impl SimRun {
    /// Distance covered after the announcement by the slowest evacuee.
    pub fn delta(&self) -> f64 {
        self.evacuation_time - self.search_time
    }
}

impl SimConfig {
    pub fn new(params: ScheduleParams, target_x: f64, fault_set: Vec<usize>) -> Self {
        SimConfig {
            params,
            target_x,
            fault_set,
            epsilon_rel: tol::JUST_BEYOND_OFFSET,
            max_rounds: 200,
        }
    }

    /// Configuration for a target spec; just-beyond limits are realized a
    /// relative `epsilon_rel` past the turning point.
    pub fn for_target(
        params: ScheduleParams,
        target: TargetSpec,
        fault_set: Vec<usize>,
    ) -> Result<Self> {
        let target_x = target.realized_coordinate(&params)?;
        Ok(SimConfig::new(params, target_x, fault_set))
    }
}

/// One agent's piecewise-linear trajectory, generated round by round.
struct Track {
    agent: usize,
    /// (time, position) waypoints, time strictly increasing except for
    /// zero-length legs.
    breakpoints: Vec<(f64, f64)>,
    /// Scheduled turn events: (time, position, reference).
    turns: Vec<(f64, f64, TurningPointRef)>,
    next_j: i64,
    rounds_played: i64,
}

impl Track {
    /// Anchor the track at the arrival on `d[agent][j_lo]`. The anchor time
    /// is the total path length of all earlier rounds: each round `j` walks
    /// `(r + 1 + 2s) |d[agent][j]|`, and the geometric series over the
    /// infinite past sums to `(r + 1 + 2s) / (r - 1) * |d[agent][j_lo]|`.
    fn start(params: &ScheduleParams, agent: usize, j_lo: i64) -> Track {
        let d = schedule::main_turning_point(params, agent as i64, j_lo);
        let t0 = (params.r() + 1.0 + 2.0 * params.s()) / (params.r() - 1.0) * d.abs();
        Track {
            agent,
            breakpoints: vec![(t0, d)],
            turns: Vec::new(),
            next_j: j_lo,
            rounds_played: 0,
        }
    }

    fn push_leg(&mut self, position: f64) {
        let (t, p) = *self.breakpoints.last().expect("tracks start anchored");
        self.breakpoints.push((t + (position - p).abs(), position));
    }

    /// Append one schedule round: the current main turn, the sub-turns for
    /// generalized schedules, and the walk to the next main turning point.
    fn extend_round(&mut self, params: &ScheduleParams) {
        let j = self.next_j;
        let d = schedule::main_turning_point(params, self.agent as i64, j);
        let (t, p) = *self.breakpoints.last().expect("tracks start anchored");
        debug_assert!((p - d).abs() <= 1e-9 * d.abs().max(1.0), "round must start on its turn");
        let agent_i = self.agent as i64;
        let at = move |ell: u8| TurningPointRef { i: agent_i, j, ell };
        self.turns.push((t, d, at(0)));
        if params.kind() == ScheduleKind::Generalized {
            let sub = -params.a() * d;
            self.push_leg(sub);
            let (t1, _) = *self.breakpoints.last().unwrap();
            self.turns.push((t1, sub, at(1)));
            let sub2 = (params.s() - params.a()) * d;
            self.push_leg(sub2);
            let (t2, _) = *self.breakpoints.last().unwrap();
            self.turns.push((t2, sub2, at(2)));
        }
        self.push_leg(schedule::main_turning_point(params, self.agent as i64, j + 1));
        self.next_j += 1;
        self.rounds_played += 1;
    }

    fn last_time(&self) -> f64 {
        self.breakpoints.last().expect("tracks start anchored").0
    }

    /// Earliest time the track touches `x`, if it has so far.
    fn first_crossing(&self, x: f64) -> Option<f64> {
        for pair in self.breakpoints.windows(2) {
            let ((t0, p0), (_, p1)) = (pair[0], pair[1]);
            if (p0 - x) * (p1 - x) <= 0.0 {
                return Some(t0 + (x - p0).abs());
            }
        }
        None
    }

    /// Position at `t`, which must be within the generated span.
    fn position(&self, t: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&(bt, _)| bt <= t);
        if idx == 0 {
            // Before the anchor the agent is still converging toward the
            // origin; the span is chosen so this never matters, but clamp
            // defensively.
            return self.breakpoints[0].1;
        }
        if idx == self.breakpoints.len() {
            return self.breakpoints[idx - 1].1;
        }
        let (t0, p0) = self.breakpoints[idx - 1];
        let (t1, p1) = self.breakpoints[idx];
        if t1 == t0 {
            return p1;
        }
        p0 + (p1 - p0) * (t - t0) / (t1 - t0)
    }
}

fn check_config(config: &SimConfig) -> Result<()> {
    if !config.target_x.is_finite() || config.target_x == 0.0 {
        return Err(EvacError::Domain(format!(
            "target coordinate {} must be finite and nonzero",
            config.target_x
        )));
    }
    let params = &config.params;
    if config.fault_set.len() > params.f() {
        return Err(EvacError::Domain(format!(
            "crash set of {} agents exceeds the fault budget f = {}",
            config.fault_set.len(),
            params.f()
        )));
    }
    for pair in config.fault_set.windows(2) {
        if pair[0] >= pair[1] {
            return Err(EvacError::Domain(
                "crash set must be strictly ascending agent labels".into(),
            ));
        }
    }
    if config.fault_set.iter().any(|&a| a >= params.n()) {
        return Err(EvacError::Domain(format!(
            "crashed agent label must lie below n = {}",
            params.n()
        )));
    }
    if config.max_rounds < 1 {
        return Err(EvacError::Domain("round horizon must be at least 1".into()));
    }
    Ok(())
}

/// Play one configured run and return the event log plus headline times.
pub fn run(config: &SimConfig) -> Result<SimRun> {
    check_config(config)?;
    let params = &config.params;
    let n = params.n();
    let x = config.target_x;

    // Anchor every track deep enough that no agent can have touched the
    // target before its anchor: before arriving at d[i][j] an agent stays
    // within |d[i][j]| (its previous sub-turn reaches at most a/r of that),
    // so anchoring three rounds below the target's magnitude is safe.
    let j_lo = (x.abs().ln() / params.r().ln() - 2.0).floor() as i64 - 1;
    let mut tracks: Vec<Track> = (0..n).map(|agent| Track::start(params, agent, j_lo)).collect();

    // Phase 1: extend every track until it crosses the target.
    let mut crossings: Vec<f64> = vec![f64::NAN; n];
    for (agent, track) in tracks.iter_mut().enumerate() {
        loop {
            if let Some(t) = track.first_crossing(x) {
                crossings[agent] = t;
                break;
            }
            if track.rounds_played >= config.max_rounds {
                return Err(EvacError::Horizon {
                    max_rounds: config.max_rounds,
                    detail: format!(
                        "agent {agent} never crossed x = {x} within {} rounds from round {j_lo}",
                        config.max_rounds
                    ),
                });
            }
            track.extend_round(params);
        }
    }

    // The announcement: earliest reliable crossing, ties to the smallest
    // label.
    let reliable = |agent: usize| config.fault_set.binary_search(&agent).is_err();
    let (announcer, search_time) = (0..n)
        .filter(|&agent| reliable(agent))
        .map(|agent| (agent, crossings[agent]))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("the crash budget leaves a reliable majority");

    // Phase 2: every surviving trajectory must span the announcement time so
    // positions can be read off.
    for track in tracks.iter_mut() {
        while track.last_time() < search_time {
            if track.rounds_played >= config.max_rounds {
                return Err(EvacError::Horizon {
                    max_rounds: config.max_rounds,
                    detail: format!(
                        "agent {} could not be extended past the announcement at {search_time}",
                        track.agent
                    ),
                });
            }
            track.extend_round(params);
        }
    }

    // Reliable agents beeline from wherever they stand at the announcement.
    let mut evacuation_time = search_time;
    let mut arrivals: Vec<(usize, f64)> = Vec::new();
    for track in tracks.iter().filter(|track| reliable(track.agent)) {
        let arrive = search_time + (track.position(search_time) - x).abs();
        evacuation_time = evacuation_time.max(arrive);
        arrivals.push((track.agent, arrive));
    }

    // Crashed agents keep playing the schedule through the whole log span.
    for track in tracks.iter_mut().filter(|track| !reliable(track.agent)) {
        while track.last_time() < evacuation_time && track.rounds_played < config.max_rounds {
            track.extend_round(params);
        }
    }

    let mut events: Vec<Event> = Vec::new();
    for track in &tracks {
        let horizon = if reliable(track.agent) { search_time } else { evacuation_time };
        for &(t, position, turn) in &track.turns {
            if t <= horizon {
                events.push(Event {
                    time: t,
                    agent: track.agent,
                    position,
                    kind: EventKind::Turn(turn),
                });
            }
        }
        // Detections: the announcer's at the announcement; crashed agents
        // detect silently whenever they pass the target within the log span.
        if track.agent == announcer {
            events.push(Event {
                time: search_time,
                agent: announcer,
                position: x,
                kind: EventKind::Detect,
            });
        } else if !reliable(track.agent) && crossings[track.agent] <= evacuation_time {
            events.push(Event {
                time: crossings[track.agent],
                agent: track.agent,
                position: x,
                kind: EventKind::Detect,
            });
        }
    }
    events.push(Event { time: search_time, agent: announcer, position: x, kind: EventKind::Announce });
    for (agent, arrive) in arrivals {
        events.push(Event { time: arrive, agent, position: x, kind: EventKind::Arrive });
    }
    let rank = |kind: &EventKind| match kind {
        EventKind::Turn(_) => 0u8,
        EventKind::Detect => 1,
        EventKind::Announce => 2,
        EventKind::Arrive => 3,
    };
    events.sort_by(|a, b| {
        a.time.total_cmp(&b.time).then(rank(&a.kind).cmp(&rank(&b.kind))).then(a.agent.cmp(&b.agent))
    });
    Ok(SimRun { events, search_time, evacuation_time })
}

/// Line-oriented rendering of an event log: time, agent, kind, coordinate.
pub fn render_log(run: &SimRun) -> String {
    let mut out = String::new();
    for event in &run.events {
        let kind = match event.kind {
            EventKind::Turn(tp) => format!("turn:{},{},{}", tp.i, tp.j, tp.ell),
            EventKind::Detect => "detect".into(),
            EventKind::Announce => "announce".into(),
            EventKind::Arrive => "arrive".into(),
        };
        out.push_str(&format!(
            "{:.9}\t{}\t{}\t{:.9}\n",
            event.time, event.agent, kind, event.position
        ));
    }
    out
}
