//! One entry point per (model, objective) pair.

use crate::arrangement::Arrangement;
use crate::crossing_graph::{Casing, ObjectiveReport};
use crate::objective::{Model, Objective, ObjectiveValue};
use crate::stacking::solve_stacking_on;
use crate::switches::{full_report, solve_min_total_switches_on};
use crate::tunnels::{
    heuristic_min_max_tunnel_length, solve_max_min_tunnel_distance_weaving, solve_min_max_tunnel_length_exact,
    solve_min_max_tunnels_weaving, TunnelError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Node budget of the exact weaving tunnel-length search.
    pub exact_budget: u64,
    /// Return the stacking upper bound when that budget runs out.
    pub allow_heuristic: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { exact_budget: 2_000_000, allow_heuristic: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("{model} {objective}: no polynomial algorithm is known for this combination (open problem (Table 1))")]
    OpenProblem { model: Model, objective: Objective },
    #[error(transparent)]
    Budget(#[from] TunnelError),
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub model: Model,
    pub objective: Objective,
    pub casing: Casing,
    /// Metrics including the odd-face lower bound.
    pub report: ObjectiveReport,
    pub value: ObjectiveValue,
    /// False only for the tunnel-length fallback.
    pub optimal: bool,
    /// Bottom-first edge indices for stacking solutions.
    pub order: Option<Vec<usize>>,
}

pub fn is_open_problem(model: Model, objective: Objective) -> bool {
    objective == Objective::MinMaxSwitches || (model == Model::Stacking && objective == Objective::MinTotalSwitches)
}

pub fn solve(arr: &Arrangement, model: Model, objective: Objective, options: SolveOptions) -> Result<Solution, SolveError> {
    if is_open_problem(model, objective) {
        return Err(SolveError::OpenProblem { model, objective });
    }
    let mut order = None;
    let mut optimal = true;
    let casing = match (model, objective) {
        (Model::Stacking, _) => {
            let s = solve_stacking_on(arr, objective).expect("tunnel objectives are supported");
            order = Some(s.order.bottom_first);
            s.casing
        }
        (Model::Weaving, Objective::MinTotalSwitches) => solve_min_total_switches_on(arr).casing,
        (Model::Weaving, Objective::MinMaxTunnels) => solve_min_max_tunnels_weaving(arr).casing,
        (Model::Weaving, Objective::MaxMinTunnelDistance) => solve_max_min_tunnel_distance_weaving(arr).casing,
        (Model::Weaving, Objective::MinMaxTunnelLength) => {
            match solve_min_max_tunnel_length_exact(arr, options.exact_budget) {
                Ok(s) => s.casing,
                Err(_) if options.allow_heuristic => {
                    optimal = false;
                    heuristic_min_max_tunnel_length(arr).casing
                }
                Err(e) => return Err(e.into()),
            }
        }
        (Model::Weaving, Objective::MinMaxSwitches) => unreachable!("rejected above"),
    };
    let report = full_report(arr, &casing).expect("solver casings match their arrangement");
    let value = objective.value_of(&report);
    Ok(Solution { model, objective, casing, report, value, optimal, order })
}
