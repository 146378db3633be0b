//! Deterministic simulation core for decentralized multi-agent search and
//! tracking of fast evasive targets.
//!
//! A heterogeneous swarm of agents moves in a bounded square arena, sharing
//! target sightings over a per-step k-nearest-neighbor network and steering
//! by an attraction / repulsion composition: remembered target positions
//! pull, topological neighbors push. Targets wander between waypoints, flee
//! agents that come within their radius, and sprint straight after repeated
//! encounters. Two scalar metrics summarize a run: the mean per-target
//! coverage (tracking performance) and the mean fraction of agents holding
//! a valid point of attraction (engagement, a proxy for exploitation).
//!
//! Everything is pure computation over value types: a single 64-bit seed
//! expands into keyed substreams per entity and step, so runs are
//! bit-reproducible and independent of evaluation order. The crate is
//! `no_std`-compatible (`default-features = false, features = ["libm"]`);
//! IO, config files, and the experiment CLI live in the companion
//! `swarmtrack` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod config;
pub mod engine;
pub mod error;
mod math;
pub mod network;
mod repulsion;
pub mod rng;
pub mod strategy;
pub mod target;
pub mod vec2;

pub use config::{
    AgentClass, ArenaConfig, ClassSpec, Placement, SimConfig, StrategyParams, TargetParams,
};
pub use engine::{
    coverage, run_simulation, AgentFrame, Frame, Metrics, MetricsAccumulator, RunResult,
    SeriesPoint, Simulation, TargetFrame,
};
pub use error::{ConfigError, SimError};
pub use network::Topology;
pub use strategy::{
    agent_step, attraction_velocity, repulsion_velocity, select_attraction_point, update_memory,
    AgentState, Observation,
};
pub use target::{target_step, TargetMode, TargetState};
pub use vec2::{clamp_to_arena, normalize_to_speed, Vec2};
