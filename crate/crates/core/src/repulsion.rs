//! Inverse-power repulsion shared by agents (spacing out from neighbors)
//! and targets (fleeing nearby agents, keeping clear of other targets).

use rand_chacha::ChaCha8Rng;

use crate::math::pow_int;
use crate::rng::unit_vec;
use crate::vec2::Vec2;

/// Sum of `-(a_r / r)^d · r̂` over the given neighbor positions, where `r`
/// is the vector from `position` to the neighbor.
///
/// A coincident neighbor (`r = 0`) contributes a unit-magnitude push in a
/// direction drawn from `rng` instead of a singular term; draws happen in
/// iteration order.
pub fn repulsion_sum<I>(position: Vec2, neighbors: I, a_r: f64, d: u32, rng: &mut ChaCha8Rng) -> Vec2
where
    I: IntoIterator<Item = Vec2>,
{
    let mut sum = Vec2::ZERO;
    for p in neighbors {
        let r = p - position;
        let r2 = r.norm_sq();
        if r2 == 0.0 {
            sum += unit_vec(rng);
        } else {
            let dist = crate::math::sqrt(r2);
            sum += r * (-pow_int(a_r / dist, d) / dist);
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::init_stream;

    #[test]
    fn single_neighbor_at_half_unit_pushes_away_with_squared_law() {
        let mut rng = init_stream(0);
        let v = repulsion_sum(
            Vec2::ZERO,
            [Vec2::new(0.5, 0.0)],
            1.0,
            2,
            &mut rng,
        );
        assert!((v.x - -4.0).abs() < 1e-12);
        assert!(v.y.abs() < 1e-12);
    }

    #[test]
    fn neighbor_at_reference_distance_gives_unit_magnitude() {
        let mut rng = init_stream(0);
        let v = repulsion_sum(Vec2::ZERO, [Vec2::new(1.0, 0.0)], 1.0, 2, &mut rng);
        assert!((v.x - -1.0).abs() < 1e-12);
        assert!(v.y.abs() < 1e-12);
    }

    #[test]
    fn symmetric_neighbors_cancel() {
        let mut rng = init_stream(0);
        let v = repulsion_sum(
            Vec2::ZERO,
            [Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0)],
            1.0,
            2,
            &mut rng,
        );
        assert_eq!(v, Vec2::ZERO);
    }

    #[test]
    fn coincident_neighbor_contributes_unit_push() {
        let mut rng = init_stream(42);
        let v = repulsion_sum(Vec2::new(3.0, 3.0), [Vec2::new(3.0, 3.0)], 1.0, 2, &mut rng);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }
}
