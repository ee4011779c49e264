//! Acceptance suite: one test per claim, at pinned caps and tolerances.
//!
//! Every check is exact arithmetic; the only tolerances are the stated
//! runtime budgets. Each test prints its own pass line so a full run reads
//! as a checklist (`cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use steenrod::verify::{
    check_action_module, check_adem_milnor, check_antipode_convolution, check_antipode_leading_term,
    check_antipode_witness, check_count_oracle, check_excess_recurrence, check_greatest_element,
    check_kso_table, check_small_n_exact, check_triangularity, check_valuation_consistency,
    ACTION_SEED,
};

fn pass(criterion: u32, id: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("criterion {criterion:02} ({id}): PASS"),
        Err(detail) => panic!("criterion {criterion:02} ({id}): FAIL: {detail}"),
    }
}

#[test]
fn criterion_01_published_table_reproduced_quickly() {
    let started = Instant::now();
    let result = check_kso_table();
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "table took {elapsed:?}");
    pass(1, "kso-table", result);
}

#[test]
fn criterion_02_small_dimension_exact_values() {
    pass(2, "small-n-exact", check_small_n_exact());
}

#[test]
fn criterion_03_valuation_windows_up_to_2000() {
    let started = Instant::now();
    let result = check_valuation_consistency(2000);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "sweep took {elapsed:?}");
    pass(3, "valuation-consistency", result);
}

#[test]
fn criterion_04_count_oracle_up_to_500() {
    pass(4, "count-oracle", check_count_oracle(&[2, 3, 5, 7], 500));
}

#[test]
fn criterion_05_excess_recurrence_and_minimum() {
    pass(5, "excess-recurrence", check_excess_recurrence(&[2, 3, 5], 30, 20));
}

#[test]
fn criterion_06_greatest_element_properties() {
    pass(6, "greatest-element", check_greatest_element(&[2, 3, 5], 30));
}

#[test]
fn criterion_07_triangular_transition_to_degree_60() {
    pass(7, "triangularity", check_triangularity(&[2, 3, 5], 60));
}

#[test]
fn criterion_08_antipode_leading_term() {
    pass(8, "antipode-leading-term", check_antipode_leading_term(&[2, 3], 8));
}

#[test]
fn criterion_09_antipode_convolution_cross_check() {
    pass(9, "antipode-convolution", check_antipode_convolution(&[2, 3, 5], 10));
}

#[test]
fn criterion_10_adem_milnor_agreement() {
    pass(10, "adem-milnor", check_adem_milnor(&[2, 3, 5], 8));
}

#[test]
fn criterion_11_antipode_nontriviality_witness() {
    let started = Instant::now();
    let result = check_antipode_witness(&[(2, 8), (3, 6)]);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "witnesses took {elapsed:?}");
    pass(11, "antipode-witness", result);
}

#[test]
fn criterion_12_action_module_structure() {
    pass(12, "action-module", check_action_module(200, 40, ACTION_SEED));
}
