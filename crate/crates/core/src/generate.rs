//! Seeded random network systems targeting a validation tier.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, NetworkSystem, NodeLabel, Partition, Tier, TierViolation};
use crate::scalar::{rational_from_f64, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("node range {min}..={max} is empty")]
    EmptyRange { min: usize, max: usize },
    #[error("density {0} is outside [0, 1]")]
    Density(f64),
    #[error("tier {tier} needs at least {needed} nodes but at most {max} were requested")]
    TooFewNodes { tier: Tier, needed: usize, max: usize },
    #[error("{0} cannot be combined with tier {1}")]
    Conflict(&'static str, Tier),
    #[error("generated system misses tier {tier}: {violations:?}")]
    Missed { tier: Tier, violations: Vec<TierViolation> },
}

/// Distribution of listed edge weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightDist {
    /// `p/q` with `p, q` drawn uniformly from `1..=max`.
    Rational { max: u32 },
    /// Uniform on `(0, max]`, stored as the exact value of the float.
    Float { max: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphGenerator {
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Probability that a candidate pair becomes an edge.
    pub density: f64,
    pub weights: WeightDist,
    pub tier: Tier,
    pub seed: u64,
    /// Build the edge set as a union of directed cycles so that every node
    /// is weight-balanced.
    pub balanced: bool,
    /// Start from a random spanning tree (symmetric tiers only).
    pub connected: bool,
    /// Allow self-loops on tiers that permit them.
    pub self_loops: bool,
}

impl Default for GraphGenerator {
    fn default() -> Self {
        Self {
            min_nodes: 1,
            max_nodes: 6,
            density: 0.4,
            weights: WeightDist::Rational { max: 9 },
            tier: Tier::Weighted,
            seed: 0,
            balanced: false,
            connected: false,
            self_loops: true,
        }
    }
}

fn forbids_loops(tier: Tier) -> bool {
    tier.implies(Tier::Simple)
}

fn is_symmetric(tier: Tier) -> bool {
    tier.implies(Tier::Symmetric)
}

fn allows_multi(tier: Tier) -> bool {
    !tier.implies(Tier::NoMulti)
}

fn min_nodes_for(tier: Tier) -> usize {
    if tier.implies(Tier::PartitionedWeighted) {
        3
    } else if forbids_loops(tier) {
        2
    } else if tier.implies(Tier::Nonempty) {
        1
    } else {
        0
    }
}

impl GraphGenerator {
    pub fn new(tier: Tier, seed: u64) -> Self {
        Self {
            tier,
            seed,
            ..Self::default()
        }
    }

    pub fn nodes(mut self, min: usize, max: usize) -> Self {
        self.min_nodes = min;
        self.max_nodes = max;
        self
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn weights(mut self, weights: WeightDist) -> Self {
        self.weights = weights;
        self
    }

    pub fn balanced(mut self, on: bool) -> Self {
        self.balanced = on;
        self
    }

    pub fn connected(mut self, on: bool) -> Self {
        self.connected = on;
        self
    }

    pub fn self_loops(mut self, on: bool) -> Self {
        self.self_loops = on;
        self
    }

    fn check(&self) -> Result<(), GenError> {
        if self.min_nodes > self.max_nodes {
            return Err(GenError::EmptyRange {
                min: self.min_nodes,
                max: self.max_nodes,
            });
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(GenError::Density(self.density));
        }
        let needed = min_nodes_for(self.tier);
        if self.max_nodes < needed {
            return Err(GenError::TooFewNodes {
                tier: self.tier,
                needed,
                max: self.max_nodes,
            });
        }
        if self.connected && !is_symmetric(self.tier) {
            return Err(GenError::Conflict("connected generation", self.tier));
        }
        if self.balanced && is_symmetric(self.tier) {
            return Err(GenError::Conflict("cycle-union generation", self.tier));
        }
        if self.balanced && self.tier.implies(Tier::BinaryWeighted) {
            return Err(GenError::Conflict("cycle-union generation", self.tier));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn gen_system(&self) -> Result<NetworkSystem, GenError> {
        self.gen_with(&mut self.rng())
    }

    /// A system and a uniformly chosen legal partition of it.
    pub fn gen_partitioned(&self) -> Result<(NetworkSystem, Partition), GenError> {
        let mut rng = self.rng();
        let sys = self.gen_with(&mut rng)?;
        let part = gen_partition(&sys, &mut rng).ok_or(GenError::TooFewNodes {
            tier: Tier::PartitionedWeighted,
            needed: 3,
            max: sys.m(),
        })?;
        Ok((sys, part))
    }

    pub fn gen_with(&self, rng: &mut impl Rng) -> Result<NetworkSystem, GenError> {
        self.check()?;
        let loops = self.self_loops && !forbids_loops(self.tier);
        let mut lo = self.min_nodes.max(min_nodes_for(self.tier));
        if !loops && self.tier.implies(Tier::Nonempty) {
            lo = lo.max(2);
        }
        if lo > self.max_nodes {
            return Err(GenError::TooFewNodes {
                tier: self.tier,
                needed: lo,
                max: self.max_nodes,
            });
        }
        let m = rng.random_range(lo..=self.max_nodes);
        let binary = self.tier.implies(Tier::BinaryWeighted);

        // pair -> weight; ordered so the output is deterministic
        let mut chosen: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        let weight = |rng: &mut dyn rand::RngCore| {
            if binary {
                Rational::one()
            } else {
                self.draw_weight(rng)
            }
        };

        if m > 0 && self.tier.implies(Tier::Nonempty) || (m > 0 && rng.random_bool(0.9)) {
            if is_symmetric(self.tier) {
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                if self.connected {
                    let mut order: Vec<usize> = (0..m).collect();
                    order.shuffle(rng);
                    for k in 1..m {
                        let parent = order[rng.random_range(0..k)];
                        pairs.push((parent.min(order[k]), parent.max(order[k])));
                    }
                }
                for i in 0..m {
                    for j in i..m {
                        if (i != j || loops) && !pairs.contains(&(i, j)) && rng.random_bool(self.density) {
                            pairs.push((i, j));
                        }
                    }
                }
                if pairs.is_empty() {
                    pairs.push(if m == 1 { (0, 0) } else { distinct_pair(rng, m, true) });
                }
                let same_weight = self.tier.implies(Tier::Weighted);
                for (i, j) in pairs {
                    let w = weight(rng);
                    let back = if same_weight { w.clone() } else { weight(rng) };
                    chosen.insert((i, j), w);
                    chosen.insert((j, i), if i == j { chosen[&(i, j)].clone() } else { back });
                }
            } else if self.balanced {
                let cycles = rng.random_range(1..=m.max(1));
                for _ in 0..cycles {
                    let mut members: Vec<usize> = (0..m).collect();
                    members.shuffle(rng);
                    let shortest = if loops { 1 } else { 2 };
                    let len = rng.random_range(shortest..=m);
                    members.truncate(len);
                    let w = weight(rng);
                    for k in 0..len {
                        let pair = (members[k], members[(k + 1) % len]);
                        let entry = chosen.entry(pair).or_insert_with(Rational::zero);
                        *entry += w.clone();
                    }
                }
            } else {
                for i in 0..m {
                    for j in 0..m {
                        if (i != j || loops) && rng.random_bool(self.density) {
                            chosen.insert((i, j), weight(rng));
                        }
                    }
                }
                if chosen.is_empty() {
                    let pair = if m == 1 { (0, 0) } else { distinct_pair(rng, m, false) };
                    chosen.insert(pair, weight(rng));
                }
            }
        }

        let labels: Vec<NodeLabel> = (0..m).map(|i| NodeLabel::new(format!("n{i}"))).collect();
        let mut edges: Vec<Edge> = chosen
            .keys()
            .map(|&(h, t)| Edge::new(labels[h].clone(), labels[t].clone()))
            .collect();
        if allows_multi(self.tier) && !edges.is_empty() && rng.random_bool(0.3) {
            let copy = edges[rng.random_range(0..edges.len())].clone();
            edges.push(copy);
        }
        edges.shuffle(rng);
        let weights = chosen
            .into_iter()
            .map(|((h, t), w)| (Edge::new(labels[h].clone(), labels[t].clone()), w))
            .collect();
        let sys = NetworkSystem::build(labels, edges, weights).map_err(|v| GenError::Missed {
            tier: Tier::WellFormed,
            violations: v
                .0
                .into_iter()
                .map(|violation| TierViolation {
                    tier: Tier::WellFormed,
                    violation,
                })
                .collect(),
        })?;
        sys.validate(self.tier).map_err(|violations| GenError::Missed {
            tier: self.tier,
            violations,
        })?;
        Ok(sys)
    }

    fn draw_weight(&self, rng: &mut dyn rand::RngCore) -> Rational {
        match self.weights {
            WeightDist::Rational { max } => {
                let max = max.max(1);
                let p = rng.random_range(1..=max);
                let q = rng.random_range(1..=max);
                Rational::new(BigInt::from(p), BigInt::from(q))
            }
            WeightDist::Float { max } => {
                // 1 - U lies in (0, 1]
                let u: f64 = rng.random();
                let x = ((1.0 - u) * max).max(f64::MIN_POSITIVE);
                rational_from_f64(x).expect("finite weight")
            }
        }
    }
}

fn distinct_pair(rng: &mut impl Rng, m: usize, sorted: bool) -> (usize, usize) {
    let i = rng.random_range(0..m);
    let mut j = rng.random_range(0..m - 1);
    if j >= i {
        j += 1;
    }
    if sorted {
        (i.min(j), i.max(j))
    } else {
        (i, j)
    }
}

/// Boundary size drawn uniformly from the legal range `2..=m-1`.
pub fn gen_partition(sys: &NetworkSystem, rng: &mut impl Rng) -> Option<Partition> {
    if sys.m() < 3 {
        return None;
    }
    let k = rng.random_range(2..sys.m());
    sys.make_partition(k).ok()
}

/// Voltages `p/q` with `p` in `-20..=20` and `q` in `1..=4`.
pub fn gen_voltages(rng: &mut impl Rng, m: usize) -> Vec<Rational> {
    (0..m)
        .map(|_| {
            let p: i64 = rng.random_range(-20..=20);
            let q: i64 = rng.random_range(1..=4);
            Rational::new(BigInt::from(p), BigInt::from(q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let g = GraphGenerator::new(Tier::Weighted, 7).nodes(2, 6);
        assert_eq!(g.gen_system().unwrap(), g.gen_system().unwrap());
    }

    #[test]
    fn every_tier_is_met() {
        for tier in Tier::ALL {
            for seed in 0..200 {
                let g = GraphGenerator::new(tier, seed).nodes(0, 6);
                let sys = g.gen_system().unwrap_or_else(|e| panic!("{tier} seed {seed}: {e}"));
                assert!(sys.satisfies(tier));
            }
        }
    }

    #[test]
    fn symmetric_edges_have_equal_mirrors() {
        let sys = GraphGenerator::new(Tier::SymmetricWeighted, 3)
            .nodes(4, 6)
            .gen_system()
            .unwrap();
        for &(h, t) in sys.edge_positions() {
            assert_eq!(sys.weight(h, t), sys.weight(t, h));
        }
    }

    #[test]
    fn balanced_generation() {
        for seed in 0..50 {
            let sys = GraphGenerator::new(Tier::Weighted, seed)
                .nodes(1, 8)
                .balanced(true)
                .gen_system()
                .unwrap();
            for u in sys.nodes() {
                assert!(sys.weight_balanced(u).unwrap());
            }
        }
    }

    #[test]
    fn partitioned_three_nodes() {
        let (sys, part) = GraphGenerator::new(Tier::PartitionedWeighted, 1)
            .nodes(3, 3)
            .gen_partitioned()
            .unwrap();
        assert_eq!(sys.m(), 3);
        assert_eq!((part.boundary().len(), part.interior().len()), (2, 1));
    }

    #[test]
    fn float_weights_in_range() {
        let g = GraphGenerator::new(Tier::Weighted, 5)
            .weights(WeightDist::Float { max: 10.0 })
            .density(1.0);
        let sys = g.gen_system().unwrap();
        for j in 0..sys.n() {
            let w = sys.edge_weight(j);
            assert!(w > Rational::zero() && w <= Rational::from_integer(10.into()));
        }
    }

    #[test]
    fn unsatisfiable_requests() {
        let g = GraphGenerator::new(Tier::Simple, 0).nodes(1, 1);
        assert!(matches!(g.gen_system(), Err(GenError::TooFewNodes { .. })));
        let g = GraphGenerator::new(Tier::Weighted, 0).nodes(5, 2);
        assert!(matches!(g.gen_system(), Err(GenError::EmptyRange { .. })));
        let g = GraphGenerator::new(Tier::Weighted, 0).density(1.5);
        assert!(matches!(g.gen_system(), Err(GenError::Density(_))));
        let g = GraphGenerator::new(Tier::Weighted, 0).connected(true);
        assert!(matches!(g.gen_system(), Err(GenError::Conflict(..))));
    }
}
