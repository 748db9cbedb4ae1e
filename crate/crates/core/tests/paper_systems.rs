//! Regression of every published affine system, coefficient for
//! coefficient, over every coherent case of its order.

mod common;

use help_core::pipeline::{Pipeline, PipelineConfig};

#[test]
fn published_systems_reproduced() {
    let bundle = common::load_group("m23");
    let mut pipeline = Pipeline::new(&bundle, PipelineConfig::default());
    // the fixture needs the coherent cases for each displayed order
    for k in [4u64, 6, 7, 10, 11, 15, 21, 22, 23, 33, 35, 46, 55, 69, 77, 115, 161, 253] {
        pipeline.solve_order(k).expect("order solves");
    }
    let n = common::check_paper_systems(&pipeline);
    assert_eq!(n, 73, "expected all 73 published forms to be checked");
}
