//! Cost-flow summation tableau heuristic for single-source/single-sink
//! minimum-cost flow on index-ordered DAGs, plus an exact successive
//! shortest path solver to measure how far the heuristic lands from optimal.
//!
//! Everything is generic over an integer [`Scalar`]; the aliases at the crate
//! root fix it to `i64`.
//!
//! ```
//! use flowtab::{fixtures, run_heuristic, solve_exact};
//!
//! let inst = fixtures::example1();
//! assert_eq!(run_heuristic(&inst).total_cost, 103);
//! assert_eq!(solve_exact(&inst).total_cost, 103);
//! ```

pub mod exact;
pub mod fixtures;
pub mod gen;
pub mod heuristic;
pub mod instance;
pub mod io;
pub mod scalar;
pub mod solution;
pub mod tableau;

pub use exact::{
    gap, max_feasible_flow, solve_exact, solve_exact_logged, verify_solution, Augmentation,
    ExactRun, GapReport, ResidualNetwork,
};
pub use gen::{generate, GenConfig, GenError, SupplyMode};
pub use heuristic::{
    dispatch, run_heuristic, score_receivers, select_receiver, select_sender, DispatchError,
    HeuristicRun, ReceiverScore, Step,
};
pub use instance::{FlowArc, FlowInstance, InstanceError};
pub use io::{Format, ParseError};
pub use scalar::{Cost, Scalar};
pub use solution::{total_cost, DispatchEvent, FlowSolution, SolveStatus};
pub use tableau::{check_tableau, Tableau};

pub type Instance = FlowInstance<i64>;
pub type Solution = FlowSolution<i64>;
pub type Event = DispatchEvent<i64>;
pub type Table = Tableau<i64>;
pub type Gap = GapReport<i64>;
