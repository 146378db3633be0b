//! Evasive target dynamics.
//!
//! A target wanders between random waypoints until an agent comes within
//! its radius, then flees along the inverse-power repulsion of the agents
//! it can see. After `t_limit` consecutive encounters it commits to a
//! straight sprint of `t_evade` steps to outrun pursuit, reflecting off
//! walls. Targets also keep two radii clear of each other.

use rand_chacha::ChaCha8Rng;

use crate::config::{ArenaConfig, TargetParams};
use crate::error::SimError;
use crate::repulsion::repulsion_sum;
use crate::rng::{uniform_to, unit_vec};
use crate::vec2::{clamp_to_arena, normalize_to_speed, Vec2};

/// What drove the target's motion on its latest step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TargetMode {
    Waypoint,
    Repel,
    Sprint,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TargetState {
    pub position: Vec2,
    pub waypoint: Vec2,
    pub mode: TargetMode,
    pub encounter_streak: u64,
    pub sprint_remaining: u64,
    pub sprint_heading: Vec2,
}

impl TargetState {
    pub fn new(position: Vec2, waypoint: Vec2) -> Self {
        Self {
            position,
            waypoint,
            mode: TargetMode::Waypoint,
            encounter_streak: 0,
            sprint_remaining: 0,
            sprint_heading: Vec2::new(1.0, 0.0),
        }
    }
}

/// Repulsion from other targets closer than `2 * rho`, keeping the
/// non-overlap constraint alive during the run. `skip` is the target's own
/// index within `targets`.
fn crowding_push(
    position: Vec2,
    targets: &[TargetState],
    skip: usize,
    params: &TargetParams,
    rng: &mut ChaCha8Rng,
) -> Vec2 {
    let reach_sq = (2.0 * params.rho) * (2.0 * params.rho);
    let near = targets
        .iter()
        .enumerate()
        .filter(|&(m, t)| m != skip && position.dist_sq(t.position) <= reach_sq)
        .map(|(_, t)| t.position);
    repulsion_sum(position, near, params.a_r, params.d, rng)
}

/// Advance one target by one step from the time-`t` snapshot of agent and
/// target positions. `index` is the target's own position in `targets`.
pub fn target_step(
    target: &TargetState,
    agent_positions: &[Vec2],
    targets: &[TargetState],
    index: usize,
    params: &TargetParams,
    arena: &ArenaConfig,
    rng: &mut ChaCha8Rng,
) -> Result<TargetState, SimError> {
    let mut next = target.clone();

    if target.sprint_remaining > 0 {
        // Mid-sprint: straight line at top speed, agents ignored.
        let step = target.sprint_heading * params.v_max;
        let unclamped = target.position + step;
        next.position = clamp_to_arena(unclamped, arena);
        if next.position.x != unclamped.x {
            next.sprint_heading.x = -next.sprint_heading.x;
        }
        if next.position.y != unclamped.y {
            next.sprint_heading.y = -next.sprint_heading.y;
        }
        next.sprint_remaining -= 1;
        next.mode = if next.sprint_remaining > 0 {
            TargetMode::Sprint
        } else {
            TargetMode::Waypoint
        };
        return Ok(next);
    }

    let rho_sq = params.rho * params.rho;
    let pursuers = || {
        agent_positions
            .iter()
            .copied()
            .filter(|&p| target.position.dist_sq(p) <= rho_sq)
    };

    if pursuers().next().is_some() {
        // Encounter: flee the agents inside the radius.
        let mut v = repulsion_sum(target.position, pursuers(), params.a_r, params.d, rng);
        v += crowding_push(target.position, targets, index, params, rng);
        if v.norm_sq() == 0.0 {
            // Exact cancellation: fall back to the waypoint direction so the
            // target keeps moving.
            v = target.waypoint - target.position;
            if v.norm_sq() == 0.0 {
                v = unit_vec(rng);
            }
        }
        let velocity = normalize_to_speed(v, params.v_max)?;

        next.encounter_streak = target.encounter_streak + 1;
        if next.encounter_streak >= params.t_limit {
            // Commit to a straight escape from the next step on.
            next.sprint_heading = normalize_to_speed(velocity, 1.0)?;
            next.sprint_remaining = params.t_evade;
            next.encounter_streak = 0;
            next.mode = TargetMode::Sprint;
        } else {
            next.mode = TargetMode::Repel;
        }
        next.position = clamp_to_arena(target.position + velocity, arena);
        return Ok(next);
    }

    // Unbothered: head for the waypoint, redrawing it once reached.
    next.encounter_streak = 0;
    next.mode = TargetMode::Waypoint;
    let tol_sq = params.waypoint_tolerance * params.waypoint_tolerance;
    let mut attempts = 0u32;
    while target.position.dist_sq(next.waypoint) <= tol_sq {
        next.waypoint = Vec2::new(
            uniform_to(rng, arena.side_length),
            uniform_to(rng, arena.side_length),
        );
        attempts += 1;
        if attempts >= 1_000 {
            break;
        }
    }

    let mut v = next.waypoint - target.position;
    v = normalize_to_speed(v, 1.0)?;
    v += crowding_push(target.position, targets, index, params, rng);
    if v.norm_sq() == 0.0 {
        v = unit_vec(rng);
    }
    let velocity = normalize_to_speed(v, params.v_max)?;
    next.position = clamp_to_arena(target.position + velocity, arena);
    if !next.position.is_finite() {
        return Err(SimError::NonFinite {
            context: "target position update",
        });
    }
    Ok(next)
}
