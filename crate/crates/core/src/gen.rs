//! Seeded random instances.
//!
//! The stream is ChaCha8 seeded with `seed_from_u64(seed)`. Pairs `(i, j)`
//! with `i < j` are visited row by row; each pair draws one Bernoulli trial
//! from the top 53 bits of a `u64`, and every arc that is kept then draws its
//! capacity and cost (in that order) by rejection sampling on `u64`. Chain
//! arcs `(i, i + 1)` are always kept, but still consume their trial. This
//! mapping from config to instance is part of the crate's compatibility
//! contract; do not reorder draws.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::max_feasible_flow;
use crate::instance::{FlowArc, FlowInstance};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupplyMode {
    /// Ship the maximum flow of the generated network.
    MaxFlow,
    Fixed(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub node_count: usize,
    /// Probability that a non-chain pair `i < j` carries an arc.
    pub density: f64,
    pub capacity_range: (u64, u64),
    pub cost_range: (u64, u64),
    pub seed: u64,
    pub supply_mode: SupplyMode,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            node_count: 50,
            density: 0.3,
            capacity_range: (1, 15),
            cost_range: (1, 15),
            seed: 0,
            supply_mode: SupplyMode::MaxFlow,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("node count must be at least 2, got {0}")]
    NodeCount(usize),
    #[error("density must lie in (0, 1], got {0}")]
    Density(f64),
    #[error("{which} range {lo}:{hi} must satisfy 1 <= lo <= hi")]
    Range {
        which: &'static str,
        lo: u64,
        hi: u64,
    },
    #[error("value {0} does not fit the scalar type")]
    Overflow(u64),
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.node_count < 2 {
            return Err(GenError::NodeCount(self.node_count));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(GenError::Density(self.density));
        }
        for (which, (lo, hi)) in [("capacity", self.capacity_range), ("cost", self.cost_range)] {
            if lo < 1 || lo > hi {
                return Err(GenError::Range { which, lo, hi });
            }
        }
        Ok(())
    }
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (u64, u64)) -> u64 {
    let span = hi - lo;
    if span == u64::MAX {
        return rng.next_u64();
    }
    let range = span + 1;
    let zone = u64::MAX - (u64::MAX % range);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return lo + x % range;
        }
    }
}

fn bernoulli(rng: &mut ChaCha8Rng, p: f64) -> bool {
    let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    unit < p
}

fn cast<T: Scalar>(v: u64) -> Result<T, GenError> {
    T::from(v).ok_or(GenError::Overflow(v))
}

pub fn generate<T: Scalar>(config: &GenConfig) -> Result<FlowInstance<T>, GenError> {
    config.validate()?;
    let n = config.node_count;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut arcs = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let hit = bernoulli(&mut rng, config.density);
            if hit || j == i + 1 {
                let cap = uniform(&mut rng, config.capacity_range);
                let cost = uniform(&mut rng, config.cost_range);
                arcs.push(FlowArc::new(i, j, cast(cap)?, cast(cost)?));
            }
        }
    }
    let inst = FlowInstance::new(n, arcs, T::zero()).expect("generated arcs are index-ordered");
    let supply = match config.supply_mode {
        SupplyMode::MaxFlow => max_feasible_flow(&inst),
        SupplyMode::Fixed(k) => cast(k)?,
    };
    Ok(inst.with_supply(supply).expect("supply is nonnegative"))
}
