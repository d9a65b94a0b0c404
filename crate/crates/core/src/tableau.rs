//! The summarized table: residual capacities above the diagonal, unit costs
//! below it, and a signed balance column.
//!
//! Public accessors take 1-based node labels. Row `i`, column `j` with `i < j`
//! holds the residual capacity of arc `i -> j`; row `j`, column `i` holds its
//! unit cost, or [`Cost::NoArc`] when the arc does not exist.

use crate::instance::FlowInstance;
use crate::scalar::{Cost, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau<T> {
    n: usize,
    cap: Vec<T>,
    cost: Vec<Cost<T>>,
    rhs: Vec<T>,
    supply: T,
}

impl<T: Scalar> Tableau<T> {
    /// Lays out the instance: all supply sits on the source row.
    pub fn build(instance: &FlowInstance<T>) -> Self {
        let n = instance.node_count();
        let mut cap = vec![T::zero(); n * n];
        let mut cost = vec![Cost::NoArc; n * n];
        for i in 0..n {
            cost[i * n + i] = Cost::zero();
        }
        for arc in instance.arcs() {
            let (t, h) = (arc.tail - 1, arc.head - 1);
            cap[t * n + h] = arc.capacity;
            cost[h * n + t] = Cost::Finite(arc.cost);
        }
        let mut rhs = vec![T::zero(); n];
        rhs[0] = instance.supply();
        Tableau {
            n,
            cap,
            cost,
            rhs,
            supply: instance.supply(),
        }
    }

    /// Assembles a tableau from raw row-major matrices without validation.
    ///
    /// `cap` and `cost` are `n * n`; only the upper triangle of `cap` and the
    /// lower triangle plus diagonal of `cost` are meaningful. Pair with
    /// [`check_tableau`] when the parts come from outside.
    pub fn from_parts(n: usize, cap: Vec<T>, cost: Vec<Cost<T>>, rhs: Vec<T>, supply: T) -> Self {
        assert_eq!(cap.len(), n * n, "capacity matrix must be n*n");
        assert_eq!(cost.len(), n * n, "cost matrix must be n*n");
        assert_eq!(rhs.len(), n, "rhs must have n entries");
        Tableau {
            n,
            cap,
            cost,
            rhs,
            supply,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn supply(&self) -> T {
        self.supply
    }

    /// Residual capacity of `tail -> head`; zero for absent arcs or `tail >= head`.
    pub fn residual(&self, tail: usize, head: usize) -> T {
        if tail >= head {
            return T::zero();
        }
        self.cap[(tail - 1) * self.n + (head - 1)]
    }

    /// Unit cost of `tail -> head`, read from the lower triangle.
    pub fn unit_cost(&self, tail: usize, head: usize) -> Cost<T> {
        if tail == head {
            return Cost::zero();
        }
        if tail > head {
            return Cost::NoArc;
        }
        self.cost[(head - 1) * self.n + (tail - 1)]
    }

    pub fn rhs(&self, node: usize) -> T {
        self.rhs[node - 1]
    }

    pub fn rhs_values(&self) -> &[T] {
        &self.rhs
    }

    /// Σ |rhs|, which stays equal to the supply for a well-formed tableau.
    pub fn balance_mass(&self) -> T {
        self.rhs.iter().fold(T::zero(), |acc, v| acc + v.abs())
    }

    /// Raw entry at 1-based `(row, col)` as printed in the table: a capacity
    /// above the diagonal, a cost on or below it.
    pub fn entry(&self, row: usize, col: usize) -> Cost<T> {
        let idx = (row - 1) * self.n + (col - 1);
        if row < col {
            Cost::Finite(self.cap[idx])
        } else {
            self.cost[idx]
        }
    }

    pub(crate) fn consume(&mut self, tail: usize, head: usize, quantity: T) {
        let idx = (tail - 1) * self.n + (head - 1);
        self.cap[idx] = self.cap[idx] - quantity;
        let s = &mut self.rhs[tail - 1];
        *s = if *s > T::zero() {
            *s - quantity
        } else {
            *s + quantity
        };
        self.rhs[head - 1] = self.rhs[head - 1] - quantity;
    }
}

/// Lists every broken tableau invariant; an empty list means the tableau is sound.
pub fn check_tableau<T: Scalar>(tab: &Tableau<T>, supply: T) -> Vec<String> {
    let n = tab.n;
    let mut out = Vec::new();
    for i in 1..=n {
        if tab.cap[(i - 1) * n + (i - 1)] != T::zero() {
            out.push(format!("nonzero capacity on diagonal at node {i}"));
        }
        if tab.cost[(i - 1) * n + (i - 1)] != Cost::zero() {
            out.push(format!("nonzero cost on diagonal at node {i}"));
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let cap = tab.residual(i, j);
            if cap < T::zero() {
                out.push(format!("negative residual capacity on arc {i}->{j}"));
            }
            match tab.unit_cost(i, j) {
                Cost::NoArc if cap != T::zero() => {
                    out.push(format!("capacity {cap} on missing arc {i}->{j}"))
                }
                Cost::Finite(c) if c < T::zero() => {
                    out.push(format!("negative unit cost on arc {i}->{j}"))
                }
                _ => {}
            }
        }
    }
    if tab.rhs[0] < T::zero() {
        out.push("sign violation at node 1: source balance is negative".to_string());
    }
    for (idx, v) in tab.rhs.iter().enumerate().skip(1) {
        if *v > T::zero() {
            out.push(format!(
                "sign violation at node {}: balance {v} is positive",
                idx + 1
            ));
        }
    }
    let mass = tab.balance_mass();
    if mass != supply {
        out.push(format!(
            "unit conservation violated: sum of |rhs| is {mass}, supply is {supply}"
        ));
    }
    out
}
