//! Simulation configuration: arena, agent classes, strategy and target
//! parameters, run length, and seed. `SimConfig::validate` is the single
//! gate every front end goes through before a run starts.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::error::ConfigError;

/// Bounded square search space `[0, L]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArenaConfig {
    pub side_length: f64,
}

impl Default for ArenaConfig {
    fn default() -> Self {
        Self { side_length: 30.0 }
    }
}

/// Capability bundle shared by every agent of one class: top speed,
/// communication out-degree, and observation memory length in steps.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AgentClass {
    pub name: String,
    pub v_max: f64,
    pub k: usize,
    pub t_mem: u64,
}

/// An agent class together with how many agents of it to deploy.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassSpec {
    pub class: AgentClass,
    pub count: usize,
}

/// Knobs of the search-and-track behavior.
///
/// `omega` weighs the previous velocity, `c` the pull toward the point of
/// attraction. `a_r_agent`/`d_agent` shape the inter-agent repulsion and
/// `gamma_track` attenuates it while an agent is tracking, so tracking
/// agents tolerate clustering while searching agents spread out.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StrategyParams {
    pub omega: f64,
    pub c: f64,
    pub a_r_agent: f64,
    pub d_agent: u32,
    pub gamma_track: f64,
}

impl Default for StrategyParams {
    fn default() -> Self {
        Self {
            omega: 1.0,
            c: 0.5,
            a_r_agent: 1.0,
            d_agent: 2,
            gamma_track: 0.3,
        }
    }
}

/// Evasive-target motion parameters. `rho` doubles as the detection and
/// coverage radius; `t_limit` consecutive encounters trigger a straight
/// sprint of `t_evade` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TargetParams {
    pub v_max: f64,
    pub rho: f64,
    pub a_r: f64,
    pub d: u32,
    pub t_limit: u64,
    pub t_evade: u64,
    pub waypoint_tolerance: f64,
}

impl Default for TargetParams {
    fn default() -> Self {
        Self {
            v_max: 0.3,
            rho: 1.0,
            a_r: 1.0,
            d: 2,
            t_limit: 5,
            t_evade: 20,
            waypoint_tolerance: 0.5,
        }
    }
}

/// Initial agent layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Placement {
    #[default]
    UniformRandom,
    Grid,
}

/// Full description of one run. Identical configs produce bit-identical
/// results.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimConfig {
    pub arena: ArenaConfig,
    pub classes: Vec<ClassSpec>,
    pub target_count: usize,
    pub target_params: TargetParams,
    pub strategy_params: StrategyParams,
    pub n_steps: u64,
    pub burn_in: u64,
    /// Record a `(t, covered, engaged)` sample every this many steps;
    /// 0 disables the series.
    pub series_every: u64,
    pub placement: Placement,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            arena: ArenaConfig::default(),
            classes: vec![
                ClassSpec {
                    class: AgentClass {
                        name: String::from("slow"),
                        v_max: 0.1,
                        k: 12,
                        t_mem: 20,
                    },
                    count: 50,
                },
                ClassSpec {
                    class: AgentClass {
                        name: String::from("fast"),
                        v_max: 0.26,
                        k: 12,
                        t_mem: 20,
                    },
                    count: 0,
                },
            ],
            target_count: 1,
            target_params: TargetParams::default(),
            strategy_params: StrategyParams::default(),
            n_steps: 50_000,
            burn_in: 0,
            series_every: 0,
            placement: Placement::UniformRandom,
            seed: 0,
        }
    }
}

impl SimConfig {
    /// Total number of agents across all classes.
    pub fn total_agents(&self) -> usize {
        self.classes.iter().map(|c| c.count).sum()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = ConfigError::new;

        if !(self.arena.side_length > 0.0) || !self.arena.side_length.is_finite() {
            return Err(err(
                "arena.side_length",
                format!("must be a positive finite number; got {}", self.arena.side_length),
            ));
        }

        let n = self.total_agents();
        if n < 2 {
            return Err(err(
                "classes",
                format!("total agent count must be at least 2; got {n}"),
            ));
        }
        for (i, spec) in self.classes.iter().enumerate() {
            let name = if spec.class.name.is_empty() {
                format!("classes[{i}]")
            } else {
                format!("classes.{}", spec.class.name)
            };
            if !(spec.class.v_max > 0.0) || !spec.class.v_max.is_finite() {
                return Err(err(
                    format!("{name}.v_max"),
                    format!("must be a positive finite number; got {}", spec.class.v_max),
                ));
            }
            if spec.class.k < 1 || spec.class.k > n - 1 {
                return Err(err(
                    format!("{name}.k"),
                    format!(
                        "connectivity must be in [1, N-1] = [1, {}]; got {}",
                        n - 1,
                        spec.class.k
                    ),
                ));
            }
            for other in &self.classes[..i] {
                if other.class.name == spec.class.name {
                    return Err(err(
                        format!("{name}.name"),
                        String::from("duplicate class name"),
                    ));
                }
            }
        }

        let t = &self.target_params;
        if !(t.v_max >= 0.0) || !t.v_max.is_finite() {
            return Err(err(
                "targets.v_max",
                format!("must be a non-negative finite number; got {}", t.v_max),
            ));
        }
        if !(t.rho > 0.0) || !t.rho.is_finite() {
            return Err(err(
                "targets.rho",
                format!("must be a positive finite number; got {}", t.rho),
            ));
        }
        if !(t.a_r > 0.0) || !t.a_r.is_finite() {
            return Err(err(
                "targets.a_r",
                format!("must be a positive finite number; got {}", t.a_r),
            ));
        }
        if t.d < 1 {
            return Err(err("targets.d", String::from("exponent must be at least 1")));
        }
        if t.t_limit < 1 {
            return Err(err(
                "targets.t_limit",
                String::from("encounter threshold must be at least 1"),
            ));
        }
        if t.t_evade < 1 {
            return Err(err(
                "targets.t_evade",
                String::from("sprint duration must be at least 1"),
            ));
        }
        if !(t.waypoint_tolerance > 0.0) || !t.waypoint_tolerance.is_finite() {
            return Err(err(
                "targets.waypoint_tolerance",
                format!("must be a positive finite number; got {}", t.waypoint_tolerance),
            ));
        }

        let s = &self.strategy_params;
        if !s.omega.is_finite() {
            return Err(err("strategy.omega", String::from("must be finite")));
        }
        if !s.c.is_finite() {
            return Err(err("strategy.c", String::from("must be finite")));
        }
        if !(s.a_r_agent > 0.0) || !s.a_r_agent.is_finite() {
            return Err(err(
                "strategy.a_r_agent",
                format!("must be a positive finite number; got {}", s.a_r_agent),
            ));
        }
        if s.d_agent < 1 {
            return Err(err(
                "strategy.d_agent",
                String::from("exponent must be at least 1"),
            ));
        }
        if !(0.0..=1.0).contains(&s.gamma_track) {
            return Err(err(
                "strategy.gamma_track",
                format!("must be in [0, 1]; got {}", s.gamma_track),
            ));
        }

        if self.n_steps < 1 {
            return Err(err("run.n_steps", String::from("must be at least 1")));
        }
        if self.burn_in >= self.n_steps {
            return Err(err(
                "run.burn_in",
                format!(
                    "must be smaller than n_steps = {}; got {}",
                    self.n_steps, self.burn_in
                ),
            ));
        }

        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid_and_paper_sized() {
        let cfg = SimConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.arena.side_length, 30.0);
        assert_eq!(cfg.total_agents(), 50);
        assert_eq!(cfg.target_count, 1);
        assert_eq!(cfg.target_params.rho, 1.0);
        assert_eq!(cfg.strategy_params.omega, 1.0);
        assert_eq!(cfg.strategy_params.c, 0.5);
    }

    #[test]
    fn rejects_connectivity_at_or_above_swarm_size() {
        let mut cfg = SimConfig::default();
        cfg.classes[0].class.k = 50;
        let e = cfg.validate().unwrap_err();
        assert_eq!(e.key, "classes.slow.k");
        assert!(e.message.contains("[1, N-1]"), "message: {}", e.message);
        assert!(e.message.contains("[1, 49]"), "message: {}", e.message);
    }

    #[test]
    fn rejects_tiny_swarm_and_bad_burn_in() {
        let mut cfg = SimConfig::default();
        cfg.classes[0].count = 1;
        assert_eq!(cfg.validate().unwrap_err().key, "classes");

        let mut cfg = SimConfig::default();
        cfg.burn_in = cfg.n_steps;
        assert_eq!(cfg.validate().unwrap_err().key, "run.burn_in");
    }

    #[test]
    fn accepts_stationary_targets_and_zero_target_count() {
        let mut cfg = SimConfig::default();
        cfg.target_params.v_max = 0.0;
        cfg.validate().unwrap();
        cfg.target_count = 0;
        cfg.validate().unwrap();
    }
}
