//! Planar vector math and the two primitive motion rules shared by agents
//! and targets: scaling a velocity to a fixed speed and clamping a position
//! to the arena.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::config::ArenaConfig;
use crate::error::SimError;
use crate::math;

/// A point or displacement in the plane, in arena length units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        math::sqrt(self.norm_sq())
    }

    pub fn dist_sq(self, other: Vec2) -> f64 {
        (other - self).norm_sq()
    }

    pub fn dist(self, other: Vec2) -> f64 {
        math::sqrt(self.dist_sq(other))
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Scale `v` so its magnitude is exactly `v_max`.
///
/// The zero vector is returned unchanged: a stalled entity stays put rather
/// than dividing by zero. Non-finite input signals a corrupted run state.
pub fn normalize_to_speed(v: Vec2, v_max: f64) -> Result<Vec2, SimError> {
    if !v.is_finite() {
        return Err(SimError::NonFinite {
            context: "velocity normalization",
        });
    }
    let n = v.norm();
    if n == 0.0 {
        return Ok(Vec2::ZERO);
    }
    Ok(v * (v_max / n))
}

/// Clamp each coordinate of `p` to the arena `[0, L]²`. Idempotent; the
/// identity on interior points.
pub fn clamp_to_arena(p: Vec2, arena: &ArenaConfig) -> Vec2 {
    let l = arena.side_length;
    Vec2::new(p.x.clamp(0.0, l), p.y.clamp(0.0, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arena(l: f64) -> ArenaConfig {
        ArenaConfig { side_length: l }
    }

    #[test]
    fn normalize_scales_three_four_five() {
        let v = normalize_to_speed(Vec2::new(3.0, 4.0), 0.1).unwrap();
        assert!((v.x - 0.06).abs() < 1e-12);
        assert!((v.y - 0.08).abs() < 1e-12);
        assert!((v.norm() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn normalize_scales_axis_vector() {
        let v = normalize_to_speed(Vec2::new(1.0, 0.0), 0.26).unwrap();
        assert_eq!(v, Vec2::new(0.26, 0.0));
    }

    #[test]
    fn normalize_keeps_zero_vector_at_rest() {
        let v = normalize_to_speed(Vec2::ZERO, 0.1).unwrap();
        assert_eq!(v, Vec2::ZERO);
    }

    #[test]
    fn normalize_rejects_non_finite() {
        assert!(normalize_to_speed(Vec2::new(f64::NAN, 0.0), 0.1).is_err());
        assert!(normalize_to_speed(Vec2::new(0.0, f64::INFINITY), 0.1).is_err());
    }

    #[test]
    fn clamp_pushes_points_inside() {
        let a = arena(30.0);
        assert_eq!(clamp_to_arena(Vec2::new(-1.0, 5.0), &a), Vec2::new(0.0, 5.0));
        assert_eq!(
            clamp_to_arena(Vec2::new(31.0, 31.0), &a),
            Vec2::new(30.0, 30.0)
        );
        assert_eq!(
            clamp_to_arena(Vec2::new(15.0, 15.0), &a),
            Vec2::new(15.0, 15.0)
        );
    }
}
