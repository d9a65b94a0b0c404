use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// One shipment from `sender` to `receiver` along a single arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DispatchEvent<T> {
    pub sender: usize,
    pub receiver: usize,
    pub quantity: T,
    pub unit_cost: T,
    pub leg_cost: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    /// All supply reached the sink.
    Completed,
    /// The heuristic left units on a node with no admissible receiver.
    Stranded,
    /// The network cannot carry the requested supply.
    Infeasible,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Completed => "completed",
            SolveStatus::Stranded => "stranded",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSolution<T> {
    /// Flow per arc `(tail, head)`; arcs carrying nothing are omitted.
    pub arc_flows: BTreeMap<(usize, usize), T>,
    pub total_cost: T,
    /// Units delivered to the sink.
    pub shipped: T,
    pub status: SolveStatus,
    /// Dispatch log; empty for solvers that do not produce one.
    pub trace: Vec<DispatchEvent<T>>,
}

impl<T: Scalar> FlowSolution<T> {
    pub fn flow(&self, tail: usize, head: usize) -> T {
        self.arc_flows
            .get(&(tail, head))
            .copied()
            .unwrap_or_else(T::zero)
    }
}

/// Sum of leg costs over a trace.
pub fn total_cost<T: Scalar>(trace: &[DispatchEvent<T>]) -> T {
    trace.iter().fold(T::zero(), |acc, e| acc + e.leg_cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_trace_costs_nothing() {
        assert_eq!(total_cost::<i64>(&[]), 0);
    }
}
