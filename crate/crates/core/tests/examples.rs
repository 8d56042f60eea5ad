//! Every runnable example doubles as a test.

#[allow(dead_code)]
mod free_group_certificate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/free_group_certificate.rs"));
}

#[test]
fn free_group_certificate_runs() {
    free_group_certificate::run_example().expect("free_group_certificate example should run");
}

#[allow(dead_code)]
mod sharpness_on_integers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sharpness_on_integers.rs"));
}

#[test]
fn sharpness_on_integers_runs() {
    sharpness_on_integers::run_example().expect("sharpness_on_integers example should run");
}

#[allow(dead_code)]
mod modular_group_growth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/modular_group_growth.rs"));
}

#[test]
fn modular_group_growth_runs() {
    modular_group_growth::run_example().expect("modular_group_growth example should run");
}

#[allow(dead_code)]
mod chebyshev_capacity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/chebyshev_capacity.rs"));
}

#[test]
fn chebyshev_capacity_runs() {
    chebyshev_capacity::run_example().expect("chebyshev_capacity example should run");
}

#[allow(dead_code)]
mod tree_criterion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tree_criterion.rs"));
}

#[test]
fn tree_criterion_runs() {
    tree_criterion::run_example().expect("tree_criterion example should run");
}

#[allow(dead_code)]
mod padic_scan {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/padic_scan.rs"));
}

#[test]
fn padic_scan_runs() {
    padic_scan::run_example().expect("padic_scan example should run");
}

#[allow(dead_code)]
mod asserted_growth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/asserted_growth.rs"));
}

#[test]
fn asserted_growth_runs() {
    asserted_growth::run_example().expect("asserted_growth example should run");
}

#[allow(dead_code)]
mod rewriting_system {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rewriting_system.rs"));
}

#[test]
fn rewriting_system_runs() {
    rewriting_system::run_example().expect("rewriting_system example should run");
}

#[allow(dead_code)]
mod report_round_trip {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/report_round_trip.rs"));
}

#[test]
fn report_round_trip_runs() {
    report_round_trip::run_example().expect("report_round_trip example should run");
}
