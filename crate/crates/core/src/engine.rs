//! Run orchestration: seeded initialization, synchronous stepping of agents
//! and targets, metric accumulation, and result emission.
//!
//! Step ordering within one iteration is fixed: the topology is built from
//! the time-`t` positions, every agent and every target transitions on the
//! time-`t` snapshot (double-buffered, so iteration order is irrelevant),
//! the commit happens at once, and metrics are sampled from the committed
//! time-`t+1` state. Two runs with the same config are bit-identical.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::{Placement, SimConfig};
use crate::error::{ConfigError, SimError};
use crate::network::Topology;
use crate::rng::{self, uniform_to};
use crate::strategy::{agent_step, AgentState, Observation};
use crate::target::{target_step, TargetMode, TargetState};
use crate::vec2::Vec2;

/// Binary coverage: is some agent within `rho` of the target?
pub fn coverage(target: &TargetState, agent_positions: &[Vec2], rho: f64) -> bool {
    let rho_sq = rho * rho;
    agent_positions
        .iter()
        .any(|&p| target.position.dist_sq(p) <= rho_sq)
}

/// Accumulates the two run metrics from per-step samples taken after each
/// commit: the per-target coverage indicators and the number of agents in
/// the tracking state.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsAccumulator {
    n_agents: usize,
    cov_sums: Vec<u64>,
    engaged_sum: u64,
    samples: u64,
}

impl MetricsAccumulator {
    pub fn new(n_agents: usize, n_targets: usize) -> Self {
        Self {
            n_agents,
            cov_sums: vec![0; n_targets],
            engaged_sum: 0,
            samples: 0,
        }
    }

    pub fn record(&mut self, covered: &[bool], engaged: usize) {
        debug_assert_eq!(covered.len(), self.cov_sums.len());
        debug_assert!(engaged <= self.n_agents);
        for (sum, &c) in self.cov_sums.iter_mut().zip(covered) {
            *sum += c as u64;
        }
        self.engaged_sum += engaged as u64;
        self.samples += 1;
    }

    /// Mean per-target coverage, its per-target breakdown, and the mean
    /// fraction of engaged agents. With no targets the reward is undefined
    /// and reported as 0 alongside `xi_defined = false`.
    pub fn finalize(&self) -> Metrics {
        let t = self.samples.max(1) as f64;
        let j = self.cov_sums.len();
        let per_target_xi: Vec<f64> = self.cov_sums.iter().map(|&s| s as f64 / t).collect();
        let xi_defined = j > 0;
        let xi = if xi_defined {
            self.cov_sums.iter().sum::<u64>() as f64 / (t * j as f64)
        } else {
            0.0
        };
        let theta = self.engaged_sum as f64 / (t * self.n_agents as f64);
        Metrics {
            xi,
            theta,
            per_target_xi,
            xi_defined,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub xi: f64,
    pub theta: f64,
    pub per_target_xi: Vec<f64>,
    pub xi_defined: bool,
}

/// One sample of the optional downsampled time series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesPoint {
    pub t: u64,
    /// Number of targets covered at step `t`.
    pub covered: u32,
    /// Number of agents in the tracking state at step `t`.
    pub engaged: u32,
}

/// Snapshot of all positions and states at one step, for trajectory export.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Frame {
    pub t: u64,
    pub agents: Vec<AgentFrame>,
    pub targets: Vec<TargetFrame>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AgentFrame {
    pub x: f64,
    pub y: f64,
    pub tracking: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TargetFrame {
    pub x: f64,
    pub y: f64,
    pub mode: TargetMode,
}

/// Everything a finished run reports.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunResult {
    /// Mean per-target coverage over the measured window.
    pub xi: f64,
    /// Mean fraction of agents in the tracking state.
    pub theta: f64,
    pub per_target_xi: Vec<f64>,
    /// False only for target-free calibration runs, where `xi` is reported
    /// as 0 by convention.
    pub xi_defined: bool,
    pub series: Vec<SeriesPoint>,
    pub final_frame: Frame,
    pub config: SimConfig,
}

const PLACEMENT_ATTEMPTS: u32 = 100_000;

/// A stepper over one seeded run. Use [`run_simulation`] unless you need
/// per-step access (frame export, invariant checks).
pub struct Simulation {
    config: SimConfig,
    class_of: Vec<usize>,
    ks: Vec<usize>,
    agents: Vec<AgentState>,
    targets: Vec<TargetState>,
    next_agents: Vec<AgentState>,
    next_targets: Vec<TargetState>,
    positions: Vec<Vec2>,
    covered: Vec<bool>,
    detections: Vec<Observation>,
    topo: Topology,
    t: u64,
    metrics: MetricsAccumulator,
    series: Vec<SeriesPoint>,
}

impl Simulation {
    pub fn new(config: &SimConfig) -> Result<Self, SimError> {
        config.validate().map_err(SimError::Config)?;

        let n = config.total_agents();
        let j = config.target_count;
        let arena_l = config.arena.side_length;
        let mut rng = rng::init_stream(config.seed);

        let mut class_of = Vec::with_capacity(n);
        for (idx, spec) in config.classes.iter().enumerate() {
            class_of.extend(core::iter::repeat(idx).take(spec.count));
        }
        let ks: Vec<usize> = class_of
            .iter()
            .map(|&c| config.classes[c].class.k)
            .collect();

        // Agents: positions per the placement policy, headings random at
        // class top speed.
        let mut agents = Vec::with_capacity(n);
        let mut grid_side = 1usize;
        while grid_side * grid_side < n {
            grid_side += 1;
        }
        for (i, &c) in class_of.iter().enumerate() {
            let position = match config.placement {
                Placement::UniformRandom => Vec2::new(
                    uniform_to(&mut rng, arena_l),
                    uniform_to(&mut rng, arena_l),
                ),
                Placement::Grid => {
                    let row = i / grid_side;
                    let col = i % grid_side;
                    let pitch = arena_l / grid_side as f64;
                    Vec2::new(
                        (col as f64 + 0.5) * pitch,
                        (row as f64 + 0.5) * pitch,
                    )
                }
            };
            let heading = rng::unit_vec(&mut rng);
            let velocity = heading * config.classes[c].class.v_max;
            agents.push(AgentState::new(c, position, velocity));
        }

        // Targets: rejection-sampled so spawns sit at least 2*rho apart.
        let min_sep_sq = (2.0 * config.target_params.rho) * (2.0 * config.target_params.rho);
        let mut target_positions: Vec<Vec2> = Vec::with_capacity(j);
        let mut attempts = 0u32;
        while target_positions.len() < j {
            let candidate = Vec2::new(
                uniform_to(&mut rng, arena_l),
                uniform_to(&mut rng, arena_l),
            );
            if target_positions
                .iter()
                .all(|&p| candidate.dist_sq(p) >= min_sep_sq)
            {
                target_positions.push(candidate);
            }
            attempts += 1;
            if attempts >= PLACEMENT_ATTEMPTS {
                return Err(SimError::Placement { attempts });
            }
        }
        let targets: Vec<TargetState> = target_positions
            .into_iter()
            .map(|p| {
                let waypoint = Vec2::new(
                    uniform_to(&mut rng, arena_l),
                    uniform_to(&mut rng, arena_l),
                );
                TargetState::new(p, waypoint)
            })
            .collect();

        Ok(Self {
            next_agents: agents.clone(),
            next_targets: targets.clone(),
            positions: Vec::with_capacity(n),
            covered: vec![false; j],
            detections: Vec::new(),
            topo: Topology::default(),
            t: 0,
            metrics: MetricsAccumulator::new(n, j),
            series: Vec::new(),
            config: config.clone(),
            class_of,
            ks,
            agents,
            targets,
        })
    }

    /// Steps completed so far; also the time index of the current state.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn targets(&self) -> &[TargetState] {
        &self.targets
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    /// Snapshot of the current state.
    pub fn frame(&self) -> Frame {
        Frame {
            t: self.t,
            agents: self
                .agents
                .iter()
                .map(|a| AgentFrame {
                    x: a.position.x,
                    y: a.position.y,
                    tracking: a.tracking,
                })
                .collect(),
            targets: self
                .targets
                .iter()
                .map(|t| TargetFrame {
                    x: t.position.x,
                    y: t.position.y,
                    mode: t.mode,
                })
                .collect(),
        }
    }

    /// Advance the whole system by one synchronous step and sample metrics
    /// from the committed state.
    pub fn step(&mut self) -> Result<(), SimError> {
        let t = self.t;
        let seed = self.config.seed;
        let rho_sq = self.config.target_params.rho * self.config.target_params.rho;

        self.positions.clear();
        self.positions.extend(self.agents.iter().map(|a| a.position));
        self.topo.rebuild(&self.positions, &self.ks)?;

        for i in 0..self.agents.len() {
            let agent = &self.agents[i];
            self.detections.clear();
            for (m, target) in self.targets.iter().enumerate() {
                if agent.position.dist_sq(target.position) <= rho_sq {
                    self.detections.push(Observation {
                        target_index: m,
                        position: target.position,
                        timestamp: t,
                    });
                }
            }
            let class = &self.config.classes[agent.class_index].class;
            let mut stream = rng::agent_stream(seed, t, i);
            self.next_agents[i] = agent_step(
                agent,
                class,
                self.topo.out_neighbors(i),
                &self.agents,
                &self.detections,
                &self.config.strategy_params,
                &self.config.arena,
                t,
                &mut stream,
            )?;
        }

        for m in 0..self.targets.len() {
            let mut stream = rng::target_stream(seed, t, m);
            self.next_targets[m] = target_step(
                &self.targets[m],
                &self.positions,
                &self.targets,
                m,
                &self.config.target_params,
                &self.config.arena,
                &mut stream,
            )?;
        }

        core::mem::swap(&mut self.agents, &mut self.next_agents);
        core::mem::swap(&mut self.targets, &mut self.next_targets);
        self.t += 1;

        if self.t > self.config.burn_in {
            self.positions.clear();
            self.positions.extend(self.agents.iter().map(|a| a.position));
            for (m, target) in self.targets.iter().enumerate() {
                self.covered[m] = coverage(target, &self.positions, self.config.target_params.rho);
            }
            let engaged = self.agents.iter().filter(|a| a.tracking).count();
            self.metrics.record(&self.covered, engaged);

            let every = self.config.series_every;
            if every > 0 && (self.t - self.config.burn_in - 1) % every == 0 {
                self.series.push(SeriesPoint {
                    t: self.t,
                    covered: self.covered.iter().filter(|&&c| c).count() as u32,
                    engaged: engaged as u32,
                });
            }
        }
        Ok(())
    }

    /// Finish the run and emit the result.
    pub fn finish(self) -> RunResult {
        let metrics = self.metrics.finalize();
        let final_frame = self.frame();
        RunResult {
            xi: metrics.xi,
            theta: metrics.theta,
            per_target_xi: metrics.per_target_xi,
            xi_defined: metrics.xi_defined,
            series: self.series,
            final_frame,
            config: self.config,
        }
    }

    #[doc(hidden)]
    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }
}

/// Execute a full run: `n_steps` synchronous steps from the seeded initial
/// state, metrics from every post-commit state after `burn_in`.
pub fn run_simulation(config: &SimConfig) -> Result<RunResult, SimError> {
    let mut sim = Simulation::new(config)?;
    for _ in 0..config.n_steps {
        sim.step()?;
    }
    Ok(sim.finish())
}

/// Reject invalid configs exactly like [`run_simulation`] but without
/// running anything.
pub fn check_config(config: &SimConfig) -> Result<(), ConfigError> {
    config.validate()
}
