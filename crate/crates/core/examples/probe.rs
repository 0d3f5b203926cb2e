use monomap_core::planning::solve_monotone_capped;
use monomap_core::reduction::build_instance;
use monomap_core::sat::{complete_formula_three_vars, example_formula};
use std::time::Instant;

fn main() {
    let (instance, _) = build_instance(&complete_formula_three_vars());
    let t = Instant::now();
    let (plan, stats) = solve_monotone_capped(&instance, 32).unwrap();
    println!(
        "complete formula: feasible={} explored={} pruned={} elapsed={:?}",
        plan.is_some(),
        stats.states_explored,
        stats.states_pruned,
        t.elapsed()
    );
    let (fig1, _) = build_instance(&example_formula());
    let t = Instant::now();
    let (plan, stats) = solve_monotone_capped(&fig1, 32).unwrap();
    println!(
        "example formula: feasible={} explored={} pruned={} elapsed={:?}",
        plan.is_some(),
        stats.states_explored,
        stats.states_pruned,
        t.elapsed()
    );
}
