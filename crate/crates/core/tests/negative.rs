//! Orders and groupings that admit no separation, checked by exhaustive choice-point search.

mod common;

use common::worked_sets::{blocked_orders, grouping_changes_the_result, selection_matters};

#[test]
fn grouping_is_not_associative() {
    grouping_changes_the_result().unwrap();
}

#[test]
fn blocked_orders_have_no_separation() {
    blocked_orders().unwrap();
}

#[test]
fn only_one_selection_closes_the_input_order() {
    selection_matters().unwrap();
}
