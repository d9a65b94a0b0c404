//! Greedy cost-flow summation heuristic over the [`Tableau`].
//!
//! Each round picks a sender among the non-sink nodes still holding units,
//! scores every higher-indexed node by its direct cost plus its direct cost to
//! the sink, and pushes as much as the chosen arc allows. The loop stops when
//! every non-sink balance is zero, or when a sender has nowhere to go.
//!
//! The sender is the lowest-indexed non-sink node with a nonzero balance. Flow
//! only moves towards higher indices, so a node that has been emptied is never
//! refilled and the sender index is non-decreasing over a run.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::instance::FlowInstance;
use crate::scalar::{Cost, Scalar};
use crate::solution::{total_cost, DispatchEvent, FlowSolution, SolveStatus};
use crate::tableau::Tableau;

/// Score of one receiver candidate for a given sender.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReceiverScore<T> {
    pub candidate: usize,
    /// Unit cost sender -> candidate.
    pub direct_cost: Cost<T>,
    /// `direct_cost` plus the unit cost candidate -> sink (zero when the candidate is the sink).
    pub summation: Cost<T>,
    /// The arc exists, still has residual capacity and the summation is finite.
    pub feasible: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DispatchError {
    #[error("node {0} holds no units to dispatch")]
    EmptySender(usize),
    #[error("arc {sender}->{receiver} has no residual capacity")]
    NoResidual { sender: usize, receiver: usize },
}

/// Lowest-indexed non-sink node with a nonzero balance, or `None` once only
/// the sink holds units.
pub fn select_sender<T: Scalar>(tab: &Tableau<T>) -> Option<usize> {
    select_sender_from(tab, 1)
}

fn select_sender_from<T: Scalar>(tab: &Tableau<T>, start: usize) -> Option<usize> {
    let n = tab.node_count();
    (start..n).find(|&i| !tab.rhs(i).is_zero())
}

pub fn score_receivers<T: Scalar>(tab: &Tableau<T>, sender: usize) -> Vec<ReceiverScore<T>> {
    let mut out = Vec::with_capacity(tab.node_count().saturating_sub(sender));
    score_receivers_into(tab, sender, &mut out);
    out
}

/// Like [`score_receivers`] but reuses `out`.
pub fn score_receivers_into<T: Scalar>(
    tab: &Tableau<T>,
    sender: usize,
    out: &mut Vec<ReceiverScore<T>>,
) {
    let n = tab.node_count();
    out.clear();
    for candidate in (sender + 1)..=n {
        let direct_cost = tab.unit_cost(sender, candidate);
        let summation = direct_cost.plus(tab.unit_cost(candidate, n));
        let feasible = summation.is_finite() && tab.residual(sender, candidate) > T::zero();
        out.push(ReceiverScore {
            candidate,
            direct_cost,
            summation,
            feasible,
        });
    }
}

/// Feasible candidate with the smallest summation; lowest index wins ties.
pub fn select_receiver<T: Scalar>(scores: &[ReceiverScore<T>]) -> Option<usize> {
    scores
        .iter()
        .filter(|s| s.feasible)
        .filter_map(|s| s.summation.finite().map(|sum| (sum, s.candidate)))
        .min()
        .map(|(_, candidate)| candidate)
}

/// Moves `min(|rhs[sender]|, residual)` units along `sender -> receiver`.
pub fn dispatch<T: Scalar>(
    tab: &mut Tableau<T>,
    sender: usize,
    receiver: usize,
) -> Result<DispatchEvent<T>, DispatchError> {
    let held = tab.rhs(sender).abs();
    if held.is_zero() {
        return Err(DispatchError::EmptySender(sender));
    }
    let residual = tab.residual(sender, receiver);
    let unit_cost = match tab.unit_cost(sender, receiver) {
        Cost::Finite(c) if residual > T::zero() => c,
        _ => return Err(DispatchError::NoResidual { sender, receiver }),
    };
    let quantity = held.min(residual);
    tab.consume(sender, receiver, quantity);
    Ok(DispatchEvent {
        sender,
        receiver,
        quantity,
        unit_cost,
        leg_cost: quantity * unit_cost,
    })
}

/// Outcome of a single heuristic round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<T> {
    Dispatched(DispatchEvent<T>),
    Completed,
    Stranded { sender: usize },
}

/// Step-wise driver so callers can inspect the tableau between dispatches.
pub struct HeuristicRun<T> {
    tableau: Tableau<T>,
    trace: Vec<DispatchEvent<T>>,
    cursor: usize,
    scores: Vec<ReceiverScore<T>>,
    outcome: Option<SolveStatus>,
}

impl<T: Scalar> HeuristicRun<T> {
    pub fn new(instance: &FlowInstance<T>) -> Self {
        HeuristicRun {
            tableau: Tableau::build(instance),
            trace: Vec::new(),
            cursor: 1,
            scores: Vec::new(),
            outcome: None,
        }
    }

    pub fn tableau(&self) -> &Tableau<T> {
        &self.tableau
    }

    pub fn trace(&self) -> &[DispatchEvent<T>] {
        &self.trace
    }

    /// Terminal status, once reached.
    pub fn outcome(&self) -> Option<SolveStatus> {
        self.outcome
    }

    pub fn step(&mut self) -> Step<T> {
        match self.outcome {
            Some(SolveStatus::Completed) => return Step::Completed,
            Some(_) => {
                return Step::Stranded {
                    sender: self.cursor,
                }
            }
            None => {}
        }
        let Some(sender) = select_sender_from(&self.tableau, self.cursor) else {
            self.outcome = Some(SolveStatus::Completed);
            return Step::Completed;
        };
        self.cursor = sender;
        score_receivers_into(&self.tableau, sender, &mut self.scores);
        let Some(receiver) = select_receiver(&self.scores) else {
            self.outcome = Some(SolveStatus::Stranded);
            return Step::Stranded { sender };
        };
        let event = dispatch(&mut self.tableau, sender, receiver)
            .expect("selected receiver always has residual capacity");
        self.trace.push(event);
        Step::Dispatched(event)
    }

    /// Runs to a terminal state and assembles the solution.
    pub fn finish(mut self) -> FlowSolution<T> {
        while let Step::Dispatched(_) = self.step() {}
        let mut arc_flows = BTreeMap::new();
        for e in &self.trace {
            let f = arc_flows
                .entry((e.sender, e.receiver))
                .or_insert_with(T::zero);
            *f = *f + e.quantity;
        }
        let n = self.tableau.node_count();
        FlowSolution {
            arc_flows,
            total_cost: total_cost(&self.trace),
            shipped: -self.tableau.rhs(n),
            status: self.outcome.unwrap_or(SolveStatus::Stranded),
            trace: self.trace,
        }
    }
}

/// Runs the summation heuristic to completion.
pub fn run_heuristic<T: Scalar>(instance: &FlowInstance<T>) -> FlowSolution<T> {
    HeuristicRun::new(instance).finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::FlowArc;

    fn with_rhs(n: usize, rhs: &[i64]) -> Tableau<i64> {
        let supply = rhs.iter().map(|v| v.abs()).sum();
        let mut cost = vec![Cost::NoArc; n * n];
        for i in 0..n {
            cost[i * n + i] = Cost::Finite(0);
        }
        Tableau::from_parts(n, vec![0; n * n], cost, rhs.to_vec(), supply)
    }

    #[test]
    fn sender_rule() {
        assert_eq!(select_sender(&with_rhs(5, &[12, 0, 0, 0, 0])), Some(1));
        assert_eq!(select_sender(&with_rhs(5, &[0, -4, 0, -5, -3])), Some(2));
        assert_eq!(select_sender(&with_rhs(4, &[0, -2, -2, 0])), Some(2));
        assert_eq!(select_sender(&with_rhs(4, &[0, 0, 0, -4])), None);
        // Example 1 third round: node 2 goes before node 4
        assert_eq!(select_sender(&with_rhs(5, &[0, -7, 0, -5, 0])), Some(2));
    }

    fn feasible(scores: &[ReceiverScore<i64>]) -> Vec<(usize, i64, i64)> {
        scores
            .iter()
            .filter(|s| s.feasible)
            .map(|s| {
                (
                    s.candidate,
                    s.direct_cost.finite().unwrap(),
                    s.summation.finite().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn scores_example1_source() {
        let tab = Tableau::build(&fixtures::example1());
        let scores = score_receivers(&tab, 1);
        assert_eq!(scores.len(), 4);
        assert_eq!(feasible(&scores), vec![(2, 3, 7), (4, 6, 10)]);
        assert_eq!(scores[1].summation, Cost::NoArc);
        assert_eq!(scores[3].summation, Cost::NoArc);
        assert_eq!(select_receiver(&scores), Some(2));
    }

    #[test]
    fn scores_example2_source() {
        let tab = Tableau::build(&fixtures::example2());
        let scores = score_receivers(&tab, 1);
        assert_eq!(feasible(&scores), vec![(2, 2, 5), (3, 2, 3)]);
        assert_eq!(select_receiver(&scores), Some(3));
    }

    #[test]
    fn scores_example3_source() {
        let tab = Tableau::build(&fixtures::example3());
        let scores = score_receivers(&tab, 1);
        assert_eq!(
            feasible(&scores),
            vec![(2, 1, 5), (3, 6, 10), (4, 7, 9), (5, 10, 10)]
        );
        for s in &scores {
            assert!(s.summation.finite().unwrap() >= s.direct_cost.finite().unwrap());
        }
    }

    #[test]
    fn no_feasible_receiver() {
        let scores = vec![ReceiverScore {
            candidate: 2,
            direct_cost: Cost::Finite(1i64),
            summation: Cost::NoArc,
            feasible: false,
        }];
        assert_eq!(select_receiver(&scores), None);
        assert_eq!(select_receiver::<i64>(&[]), None);
    }

    #[test]
    fn receiver_ties_go_to_lowest_index() {
        let mk = |c, s| ReceiverScore {
            candidate: c,
            direct_cost: Cost::Finite(1i64),
            summation: Cost::Finite(s),
            feasible: true,
        };
        assert_eq!(select_receiver(&[mk(4, 3), mk(3, 3), mk(5, 7)]), Some(3));
    }

    #[test]
    fn dispatch_quantities() {
        let mut tab = Tableau::build(&fixtures::example1());
        let e = dispatch(&mut tab, 1, 2).unwrap();
        assert_eq!((e.quantity, e.leg_cost), (7, 21));
        assert_eq!(tab.rhs_values(), &[5, -7, 0, 0, 0]);
        assert_eq!(tab.residual(1, 2), 0);
        assert_eq!(tab.balance_mass(), 12);
        // residual is now zero
        assert_eq!(
            dispatch(&mut tab, 1, 2),
            Err(DispatchError::NoResidual {
                sender: 1,
                receiver: 2
            })
        );
        let e = dispatch(&mut tab, 1, 4).unwrap();
        assert_eq!((e.quantity, e.leg_cost), (5, 30));
        let e = dispatch(&mut tab, 4, 5).unwrap();
        assert_eq!((e.quantity, e.leg_cost), (5, 20));
        assert_eq!(tab.rhs_values(), &[0, -7, 0, 0, -5]);
    }

    #[test]
    fn dispatch_from_empty_sender_is_rejected() {
        let inst = FlowInstance::new(3, [FlowArc::new(2, 3, 3i64, 1)], 0).unwrap();
        let mut tab = Tableau::build(&inst);
        assert_eq!(dispatch(&mut tab, 2, 3), Err(DispatchError::EmptySender(2)));
    }

    #[test]
    fn single_arc() {
        let inst = FlowInstance::new(2, [FlowArc::new(1, 2, 5i64, 1)], 5).unwrap();
        let sol = run_heuristic(&inst);
        assert_eq!(sol.status, SolveStatus::Completed);
        assert_eq!(sol.total_cost, 5);
        assert_eq!(sol.shipped, 5);
    }

    #[test]
    fn zero_supply_completes_immediately() {
        let inst = FlowInstance::<i64>::new(2, [], 0).unwrap();
        let sol = run_heuristic(&inst);
        assert_eq!(sol.status, SolveStatus::Completed);
        assert!(sol.trace.is_empty());
    }

    #[test]
    fn strands_without_sink_lookahead() {
        // 1->2 exists but 2 has no arc to the sink, and 1 has no direct arc either
        let inst = FlowInstance::new(
            4,
            [
                FlowArc::new(1, 2, 3i64, 1),
                FlowArc::new(2, 3, 3, 1),
                FlowArc::new(3, 4, 3, 1),
            ],
            2,
        )
        .unwrap();
        let sol = run_heuristic(&inst);
        assert_eq!(sol.status, SolveStatus::Stranded);
        assert!(sol.trace.is_empty());
        assert_eq!(sol.shipped, 0);
    }

    #[test]
    fn stranded_keeps_partial_flows() {
        // node 2 receives 4 units but its only outlet carries 1
        let inst = FlowInstance::new(
            3,
            [FlowArc::new(1, 2, 4i64, 1), FlowArc::new(2, 3, 1, 1)],
            4,
        )
        .unwrap();
        let sol = run_heuristic(&inst);
        assert_eq!(sol.status, SolveStatus::Stranded);
        assert_eq!(sol.flow(1, 2), 4);
        assert_eq!(sol.flow(2, 3), 1);
        assert_eq!(sol.shipped, 1);
        assert_eq!(sol.total_cost, 5);
    }

    #[test]
    fn tableau_after_three_dispatches_is_sound() {
        let inst = fixtures::example1();
        let mut run = HeuristicRun::new(&inst);
        for _ in 0..3 {
            assert!(matches!(run.step(), Step::Dispatched(_)));
        }
        assert!(crate::check_tableau(run.tableau(), 12).is_empty());
        assert_eq!(run.tableau().rhs_values(), &[0, -4, 0, -5, -3]);
    }
}
