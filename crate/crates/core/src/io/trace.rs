use std::fmt::Write as _;

use crate::scalar::Scalar;
use crate::solution::FlowSolution;

pub const TRACE_HEADER: &str = "step,sender,receiver,quantity,unit_cost,leg_cost,cumulative_cost";

/// Dispatch log as CSV, one row per shipment, LF line endings.
pub fn write_trace<T: Scalar>(sol: &FlowSolution<T>) -> String {
    let mut out = String::with_capacity(32 * (sol.trace.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    let mut cumulative = T::zero();
    for (i, e) in sol.trace.iter().enumerate() {
        cumulative = cumulative + e.leg_cost;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            i + 1,
            e.sender,
            e.receiver,
            e.quantity,
            e.unit_cost,
            e.leg_cost,
            cumulative
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, run_heuristic, SolveStatus};

    #[test]
    fn example1_rows() {
        let csv = write_trace(&run_heuristic(&fixtures::example1()));
        let rows: Vec<_> = csv.lines().collect();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0], TRACE_HEADER);
        assert_eq!(rows[1], "1,1,2,7,3,21,21");
        assert!(rows[6].ends_with(",103"));
    }

    #[test]
    fn example2_cumulative() {
        let csv = write_trace(&run_heuristic(&fixtures::example2()));
        let cumulative: Vec<i64> = csv
            .lines()
            .skip(1)
            .map(|r| r.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(cumulative, vec![4, 8, 10, 14]);
    }

    #[test]
    fn empty_trace_is_header_only() {
        let sol = crate::FlowSolution::<i64> {
            arc_flows: Default::default(),
            total_cost: 0,
            shipped: 0,
            status: SolveStatus::Stranded,
            trace: vec![],
        };
        assert_eq!(write_trace(&sol), format!("{TRACE_HEADER}\n"));
    }
}
