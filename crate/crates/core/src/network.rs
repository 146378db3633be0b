//! Dynamic k-nearest-neighbor communication topology.
//!
//! The network is directed and rebuilt from scratch every step: agent `i`
//! reads information from the `k_i` agents currently nearest to it, where
//! `k_i` comes from its class. Distance ties break toward the lower agent
//! index, so construction is deterministic and seed-independent.

use alloc::format;
use alloc::vec::Vec;

use crate::error::ConfigError;
use crate::vec2::Vec2;

/// Per-agent out-neighbor lists, stored flat. `out_neighbors(i)` is ordered
/// nearest first.
#[derive(Debug, Clone, Default)]
pub struct Topology {
    starts: Vec<usize>,
    neighbors: Vec<usize>,
    scratch: Vec<(f64, usize)>,
}

impl Topology {
    /// Build the topology for one step from agent positions and per-agent
    /// out-degrees.
    pub fn build(positions: &[Vec2], k_per_agent: &[usize]) -> Result<Self, ConfigError> {
        let mut topo = Topology::default();
        topo.rebuild(positions, k_per_agent)?;
        Ok(topo)
    }

    /// Rebuild in place, reusing allocations across steps.
    pub fn rebuild(
        &mut self,
        positions: &[Vec2],
        k_per_agent: &[usize],
    ) -> Result<(), ConfigError> {
        let n = positions.len();
        if k_per_agent.len() != n {
            return Err(ConfigError::new(
                "classes",
                format!(
                    "degree list length {} does not match agent count {n}",
                    k_per_agent.len()
                ),
            ));
        }
        if n < 2 {
            return Err(ConfigError::new(
                "classes",
                format!("need at least 2 agents to form a network; got {n}"),
            ));
        }

        self.starts.clear();
        self.neighbors.clear();
        self.starts.push(0);

        for (i, &k) in k_per_agent.iter().enumerate() {
            if k < 1 || k > n - 1 {
                return Err(ConfigError::new(
                    "classes.k",
                    format!("connectivity must be in [1, N-1] = [1, {}]; got {k}", n - 1),
                ));
            }

            self.scratch.clear();
            for (j, &p) in positions.iter().enumerate() {
                if j != i {
                    self.scratch.push((positions[i].dist_sq(p), j));
                }
            }
            // Partition the k smallest to the front, then order just that
            // prefix. (f64, index) keys are distinct, so the unstable
            // selection is still deterministic.
            let cmp = |a: &(f64, usize), b: &(f64, usize)| {
                a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
            };
            if k < self.scratch.len() {
                self.scratch.select_nth_unstable_by(k - 1, cmp);
            }
            self.scratch[..k].sort_unstable_by(cmp);
            self.neighbors.extend(self.scratch[..k].iter().map(|&(_, j)| j));
            self.starts.push(self.neighbors.len());
        }
        Ok(())
    }

    /// Number of agents in the topology.
    pub fn len(&self) -> usize {
        self.starts.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Agents whose information agent `i` reads this step, nearest first.
    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[self.starts[i]..self.starts[i + 1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_neighbors_on_a_line() {
        let positions = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(3.0, 0.0)];
        let topo = Topology::build(&positions, &[1, 1, 1]).unwrap();
        assert_eq!(topo.out_neighbors(0), &[1]);
        assert_eq!(topo.out_neighbors(1), &[0]);
        assert_eq!(topo.out_neighbors(2), &[1]);
    }

    #[test]
    fn distance_tie_breaks_to_lower_index() {
        // B and C are both at distance 1 from A; B has the lower index.
        let positions = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)];
        let topo = Topology::build(&positions, &[1, 1, 1]).unwrap();
        assert_eq!(topo.out_neighbors(0), &[1]);
    }

    #[test]
    fn rejects_degree_outside_range() {
        let positions = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)];
        assert!(Topology::build(&positions, &[2, 1]).is_err());
        assert!(Topology::build(&positions, &[0, 1]).is_err());
        assert!(Topology::build(&positions[..1], &[1]).is_err());
    }

    #[test]
    fn full_degree_lists_everyone_else() {
        let positions = [
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(5.0, 5.0),
        ];
        let topo = Topology::build(&positions, &[3, 3, 3, 3]).unwrap();
        assert_eq!(topo.out_neighbors(0), &[2, 1, 3]);
        assert_eq!(topo.len(), 4);
    }
}
