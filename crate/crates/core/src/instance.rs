use std::collections::HashSet;

use thiserror::Error;

use crate::scalar::Scalar;

/// A directed arc `tail -> head` with integral capacity and unit cost.
///
/// Node labels are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlowArc<T> {
    pub tail: usize,
    pub head: usize,
    pub capacity: T,
    pub cost: T,
}

impl<T> FlowArc<T> {
    pub fn new(tail: usize, head: usize, capacity: T, cost: T) -> Self {
        FlowArc {
            tail,
            head,
            capacity,
            cost,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("instance needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("arc {tail}->{head} references a node outside 1..={n}")]
    NodeOutOfRange { tail: usize, head: usize, n: usize },
    #[error("arc {tail}->{head} is not index-ordered (tail must be < head)")]
    NotIndexOrdered { tail: usize, head: usize },
    #[error("duplicate arc {tail}->{head}")]
    DuplicateArc { tail: usize, head: usize },
    #[error("arc {tail}->{head} has negative capacity")]
    NegativeCapacity { tail: usize, head: usize },
    #[error("arc {tail}->{head} has negative cost")]
    NegativeCost { tail: usize, head: usize },
    #[error("supply must be nonnegative")]
    NegativeSupply,
}

/// Single-source/single-sink minimum-cost flow problem on an index-ordered DAG.
///
/// Node 1 is the source and node `n` the sink. Arcs are kept sorted by
/// `(tail, head)`; zero-capacity arcs are dropped on construction since they
/// can carry nothing and the tableau has no way to tell them from absent arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowInstance<T> {
    node_count: usize,
    arcs: Vec<FlowArc<T>>,
    supply: T,
}

impl<T: Scalar> FlowInstance<T> {
    pub fn new(
        node_count: usize,
        arcs: impl IntoIterator<Item = FlowArc<T>>,
        supply: T,
    ) -> Result<Self, InstanceError> {
        if node_count < 2 {
            return Err(InstanceError::TooFewNodes(node_count));
        }
        if supply < T::zero() {
            return Err(InstanceError::NegativeSupply);
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for arc in arcs {
            let FlowArc { tail, head, .. } = arc;
            if tail == 0 || head == 0 || tail > node_count || head > node_count {
                return Err(InstanceError::NodeOutOfRange {
                    tail,
                    head,
                    n: node_count,
                });
            }
            if tail >= head {
                return Err(InstanceError::NotIndexOrdered { tail, head });
            }
            if !seen.insert((tail, head)) {
                return Err(InstanceError::DuplicateArc { tail, head });
            }
            if arc.capacity < T::zero() {
                return Err(InstanceError::NegativeCapacity { tail, head });
            }
            if arc.cost < T::zero() {
                return Err(InstanceError::NegativeCost { tail, head });
            }
            if arc.capacity > T::zero() {
                kept.push(arc);
            }
        }
        kept.sort_by_key(|a| (a.tail, a.head));
        Ok(FlowInstance {
            node_count,
            arcs: kept,
            supply,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arcs(&self) -> &[FlowArc<T>] {
        &self.arcs
    }

    pub fn supply(&self) -> T {
        self.supply
    }

    pub fn source(&self) -> usize {
        1
    }

    pub fn sink(&self) -> usize {
        self.node_count
    }

    pub fn arc(&self, tail: usize, head: usize) -> Option<&FlowArc<T>> {
        self.arcs
            .binary_search_by_key(&(tail, head), |a| (a.tail, a.head))
            .ok()
            .map(|i| &self.arcs[i])
    }

    /// Same network, different supply.
    pub fn with_supply(&self, supply: T) -> Result<Self, InstanceError> {
        if supply < T::zero() {
            return Err(InstanceError::NegativeSupply);
        }
        Ok(FlowInstance {
            supply,
            ..self.clone()
        })
    }
}
