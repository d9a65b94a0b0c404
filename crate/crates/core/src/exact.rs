//! Exact reference solver: successive shortest augmenting paths on the
//! residual network, with a label-correcting shortest-path search so that
//! negative backward arcs are handled without potentials.

use std::collections::{BTreeMap, VecDeque};

use num_rational::Ratio;

use crate::heuristic::run_heuristic;
use crate::instance::FlowInstance;
use crate::scalar::Scalar;
use crate::solution::{FlowSolution, SolveStatus};

#[derive(Clone, Copy, Debug)]
struct ResidualEdge<T> {
    to: usize,
    residual: T,
    cost: T,
}

/// Residual network with paired forward/backward edges.
///
/// Edge `2k` is the forward copy of instance arc `k`, edge `2k + 1` its
/// reverse with negated cost. Nodes are 0-based internally.
#[derive(Clone, Debug)]
pub struct ResidualNetwork<T> {
    n: usize,
    edges: Vec<ResidualEdge<T>>,
    adj: Vec<Vec<usize>>,
    capacity: Vec<T>,
    arcs: Vec<(usize, usize)>,
}

impl<T: Scalar> ResidualNetwork<T> {
    pub fn from_instance(instance: &FlowInstance<T>) -> Self {
        let n = instance.node_count();
        let m = instance.arcs().len();
        let mut edges = Vec::with_capacity(2 * m);
        let mut adj = vec![Vec::new(); n];
        let mut capacity = Vec::with_capacity(m);
        let mut arcs = Vec::with_capacity(m);
        for arc in instance.arcs() {
            let (t, h) = (arc.tail - 1, arc.head - 1);
            adj[t].push(edges.len());
            edges.push(ResidualEdge {
                to: h,
                residual: arc.capacity,
                cost: arc.cost,
            });
            adj[h].push(edges.len());
            edges.push(ResidualEdge {
                to: t,
                residual: T::zero(),
                cost: -arc.cost,
            });
            capacity.push(arc.capacity);
            arcs.push((arc.tail, arc.head));
        }
        ResidualNetwork {
            n,
            edges,
            adj,
            capacity,
            arcs,
        }
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn forward_residual(&self, arc: usize) -> T {
        self.edges[2 * arc].residual
    }

    pub fn backward_residual(&self, arc: usize) -> T {
        self.edges[2 * arc + 1].residual
    }

    pub fn forward_cost(&self, arc: usize) -> T {
        self.edges[2 * arc].cost
    }

    /// Current flow on instance arc `arc` (the backward residual).
    pub fn flow(&self, arc: usize) -> T {
        self.backward_residual(arc)
    }

    fn push(&mut self, edge: usize, amount: T) {
        self.edges[edge].residual = self.edges[edge].residual - amount;
        self.edges[edge ^ 1].residual = self.edges[edge ^ 1].residual + amount;
    }

    /// Lists broken residual invariants (forward + flow = capacity, residuals ≥ 0).
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        for k in 0..self.arcs.len() {
            let (t, h) = self.arcs[k];
            if self.forward_residual(k) + self.backward_residual(k) != self.capacity[k] {
                out.push(format!(
                    "residuals of arc {t}->{h} do not add up to capacity"
                ));
            }
            if self.forward_residual(k) < T::zero() || self.backward_residual(k) < T::zero() {
                out.push(format!("negative residual on arc {t}->{h}"));
            }
        }
        out
    }

    /// Cheapest source-to-sink path in the residual graph: returns the edge
    /// sequence (sink to source) and its unit cost.
    fn shortest_path(&self, s: usize, t: usize) -> Option<(Vec<usize>, T)> {
        let n = self.n;
        let mut dist: Vec<Option<T>> = vec![None; n];
        let mut pred = vec![usize::MAX; n];
        let mut in_queue = vec![false; n];
        let mut relax_count = vec![0usize; n];
        let mut queue = VecDeque::new();
        dist[s] = Some(T::zero());
        queue.push_back(s);
        in_queue[s] = true;
        while let Some(u) = queue.pop_front() {
            in_queue[u] = false;
            let du = dist[u].expect("queued nodes are labelled");
            for &e in &self.adj[u] {
                let edge = &self.edges[e];
                if edge.residual <= T::zero() {
                    continue;
                }
                let cand = du + edge.cost;
                if dist[edge.to].is_none_or(|d| cand < d) {
                    dist[edge.to] = Some(cand);
                    pred[edge.to] = e;
                    if !in_queue[edge.to] {
                        relax_count[edge.to] += 1;
                        assert!(
                            relax_count[edge.to] <= n,
                            "negative cycle in residual network"
                        );
                        queue.push_back(edge.to);
                        in_queue[edge.to] = true;
                    }
                }
            }
        }
        let cost = dist[t]?;
        let mut path = Vec::new();
        let mut v = t;
        while v != s {
            let e = pred[v];
            path.push(e);
            v = self.edges[e ^ 1].to;
        }
        Some((path, cost))
    }
}

/// One augmentation of the successive-shortest-path loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Augmentation<T> {
    pub amount: T,
    pub unit_cost: T,
}

/// Exact solution together with the augmentation log that produced it.
#[derive(Clone, Debug)]
pub struct ExactRun<T> {
    pub solution: FlowSolution<T>,
    pub augmentations: Vec<Augmentation<T>>,
}

/// Minimum-cost flow of `limit` units (or as many as fit when `limit` is `None`).
fn successive_shortest_paths<T: Scalar>(
    instance: &FlowInstance<T>,
    limit: Option<T>,
) -> (ResidualNetwork<T>, Vec<Augmentation<T>>, T, T) {
    let mut net = ResidualNetwork::from_instance(instance);
    let (s, t) = (0, instance.node_count() - 1);
    let mut shipped = T::zero();
    let mut cost = T::zero();
    let mut log = Vec::new();
    while limit.is_none_or(|l| shipped < l) {
        let Some((path, unit_cost)) = net.shortest_path(s, t) else {
            break;
        };
        let mut amount = path
            .iter()
            .map(|&e| net.edges[e].residual)
            .min()
            .expect("paths have at least one edge");
        if let Some(l) = limit {
            amount = amount.min(l - shipped);
        }
        for &e in &path {
            net.push(e, amount);
        }
        shipped = shipped + amount;
        cost = cost + amount * unit_cost;
        log.push(Augmentation { amount, unit_cost });
    }
    (net, log, shipped, cost)
}

pub fn solve_exact_logged<T: Scalar>(instance: &FlowInstance<T>) -> ExactRun<T> {
    let supply = instance.supply();
    let (net, augmentations, shipped, total_cost) =
        successive_shortest_paths(instance, Some(supply));
    let arc_flows: BTreeMap<_, _> = (0..net.arc_count())
        .filter(|&k| net.flow(k) > T::zero())
        .map(|k| (net.arcs[k], net.flow(k)))
        .collect();
    let status = if shipped == supply {
        SolveStatus::Completed
    } else {
        SolveStatus::Infeasible
    };
    ExactRun {
        solution: FlowSolution {
            arc_flows,
            total_cost,
            shipped,
            status,
            trace: Vec::new(),
        },
        augmentations,
    }
}

/// Optimal flow of exactly `supply` units; `Infeasible` (carrying the
/// cheapest maximum flow) when the network is too narrow.
pub fn solve_exact<T: Scalar>(instance: &FlowInstance<T>) -> FlowSolution<T> {
    solve_exact_logged(instance).solution
}

/// Maximum source-to-sink flow (Dinic), independent of costs and supply.
pub fn max_feasible_flow<T: Scalar>(instance: &FlowInstance<T>) -> T {
    let mut net = ResidualNetwork::from_instance(instance);
    let n = net.n;
    let (s, t) = (0, n - 1);
    let mut total = T::zero();
    loop {
        let mut level = vec![usize::MAX; n];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &net.adj[u] {
                let edge = net.edges[e];
                if edge.residual > T::zero() && level[edge.to] == usize::MAX {
                    level[edge.to] = level[u] + 1;
                    queue.push_back(edge.to);
                }
            }
        }
        if level[t] == usize::MAX {
            return total;
        }
        let mut next = vec![0usize; n];
        loop {
            let pushed = blocking_push(&mut net, &level, &mut next, s, t, None);
            if pushed.is_zero() {
                break;
            }
            total = total + pushed;
        }
    }
}

fn blocking_push<T: Scalar>(
    net: &mut ResidualNetwork<T>,
    level: &[usize],
    next: &mut [usize],
    u: usize,
    t: usize,
    limit: Option<T>,
) -> T {
    if u == t {
        return limit.expect("sink reached through at least one edge");
    }
    while next[u] < net.adj[u].len() {
        let e = net.adj[u][next[u]];
        let edge = net.edges[e];
        if edge.residual > T::zero() && level[edge.to] == level[u] + 1 {
            let cap = limit.map_or(edge.residual, |l| l.min(edge.residual));
            let pushed = blocking_push(net, level, next, edge.to, t, Some(cap));
            if pushed > T::zero() {
                net.push(e, pushed);
                return pushed;
            }
        }
        next[u] += 1;
    }
    T::zero()
}

/// Checks capacities, conservation and the reported cost of a solution.
pub fn verify_solution<T: Scalar>(
    instance: &FlowInstance<T>,
    sol: &FlowSolution<T>,
) -> Vec<String> {
    let n = instance.node_count();
    let mut out = Vec::new();
    let mut net = vec![T::zero(); n + 1];
    let mut cost = T::zero();
    for (&(tail, head), &flow) in &sol.arc_flows {
        let Some(arc) = instance.arc(tail, head) else {
            if !flow.is_zero() {
                out.push(format!("flow {flow} on nonexistent arc {tail}->{head}"));
            }
            continue;
        };
        if flow < T::zero() {
            out.push(format!("negative flow on arc {tail}->{head}"));
        }
        if flow > arc.capacity {
            out.push(format!(
                "capacity violation on arc {tail}->{head}: flow {flow} exceeds {}",
                arc.capacity
            ));
        }
        net[tail] = net[tail] - flow;
        net[head] = net[head] + flow;
        cost = cost + flow * arc.cost;
    }
    if cost != sol.total_cost {
        out.push(format!(
            "cost mismatch: reported {}, recomputed {cost}",
            sol.total_cost
        ));
    }
    if !sol.trace.is_empty() {
        let traced = crate::solution::total_cost(&sol.trace);
        if traced != sol.total_cost {
            out.push(format!(
                "cost mismatch: trace sums to {traced}, reported {}",
                sol.total_cost
            ));
        }
    }
    let supply = instance.supply();
    let source_out = -net[1];
    if net[n] != sol.shipped {
        out.push(format!(
            "sink receives {} but solution reports {} shipped",
            net[n], sol.shipped
        ));
    }
    match sol.status {
        SolveStatus::Completed | SolveStatus::Infeasible => {
            let expected = if sol.status == SolveStatus::Completed {
                supply
            } else {
                sol.shipped
            };
            if source_out != expected {
                out.push(format!("source sends {source_out}, expected {expected}"));
            }
            if net[n] != expected {
                out.push(format!("sink receives {}, expected {expected}", net[n]));
            }
            for (v, b) in net.iter().enumerate().take(n).skip(2) {
                if !b.is_zero() {
                    out.push(format!("conservation violated at node {v}: net inflow {b}"));
                }
            }
        }
        SolveStatus::Stranded => {
            if source_out > supply || source_out < T::zero() {
                out.push(format!("source sends {source_out}, supply is {supply}"));
            }
            for (v, b) in net.iter().enumerate().take(n).skip(2) {
                if *b < T::zero() {
                    out.push(format!("node {v} sends more than it receives"));
                }
            }
        }
    }
    out
}

/// Heuristic versus exact on the same instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport<T: Clone + num_integer::Integer> {
    pub heuristic_cost: T,
    pub exact_cost: T,
    pub heuristic_shipped: T,
    pub exact_shipped: T,
    pub heuristic_status: SolveStatus,
    pub exact_status: SolveStatus,
    /// Only defined when both solvers shipped the full supply.
    pub absolute_gap: Option<T>,
    /// `absolute_gap / exact_cost`; `None` also when the exact cost is zero and the gap is not.
    pub relative_gap: Option<Ratio<T>>,
}

impl<T: Scalar> GapReport<T> {
    pub fn from_solutions(heuristic: &FlowSolution<T>, exact: &FlowSolution<T>) -> Self {
        let both =
            heuristic.status == SolveStatus::Completed && exact.status == SolveStatus::Completed;
        let absolute_gap = both.then(|| heuristic.total_cost - exact.total_cost);
        let relative_gap = absolute_gap.and_then(|g| {
            if !exact.total_cost.is_zero() {
                Some(Ratio::new(g, exact.total_cost))
            } else if g.is_zero() {
                Some(Ratio::from_integer(T::zero()))
            } else {
                None
            }
        });
        GapReport {
            heuristic_cost: heuristic.total_cost,
            exact_cost: exact.total_cost,
            heuristic_shipped: heuristic.shipped,
            exact_shipped: exact.shipped,
            heuristic_status: heuristic.status,
            exact_status: exact.status,
            absolute_gap,
            relative_gap,
        }
    }
}

pub fn gap<T: Scalar>(instance: &FlowInstance<T>) -> GapReport<T> {
    GapReport::from_solutions(&run_heuristic(instance), &solve_exact(instance))
}
