#![allow(dead_code)]

use flowtab::{FlowArc, Instance};

/// Minimum cost over every integral arc-flow vector that ships exactly the
/// supply, or `None` when no such vector exists. Exponential; tiny inputs only.
pub fn brute_force_min_cost(inst: &Instance) -> Option<i64> {
    let n = inst.node_count();
    let arcs = inst.arcs();
    let mut flow = vec![0i64; arcs.len()];
    let mut best: Option<i64> = None;
    loop {
        let mut balance = vec![0i64; n + 1];
        let mut cost = 0;
        for (a, &f) in arcs.iter().zip(&flow) {
            balance[a.tail] -= f;
            balance[a.head] += f;
            cost += f * a.cost;
        }
        let s = inst.supply();
        let ok = balance[1] == -s && balance[n] == s && balance[2..n].iter().all(|&b| b == 0);
        if ok && best.is_none_or(|b| cost < b) {
            best = Some(cost);
        }
        // odometer over [0, capacity] per arc
        let mut k = 0;
        loop {
            if k == flow.len() {
                return best;
            }
            if flow[k] < arcs[k].capacity {
                flow[k] += 1;
                break;
            }
            flow[k] = 0;
            k += 1;
        }
    }
}

pub fn instance(n: usize, arcs: &[(usize, usize, i64, i64)], supply: i64) -> Instance {
    Instance::new(
        n,
        arcs.iter().map(|&(t, h, c, w)| FlowArc::new(t, h, c, w)),
        supply,
    )
    .unwrap()
}
