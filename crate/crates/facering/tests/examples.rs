mod face_ring_basics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/face_ring_basics.rs"));
}
mod rational_functions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rational_functions.rs"));
}
mod artinian_reduction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/artinian_reduction.rs"));
}
mod lee_formula {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lee_formula.rs"));
}
mod anisotropy_certificates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/anisotropy_certificates.rs"));
}
mod lefschetz_witness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lefschetz_witness.rs"));
}
mod edge_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/edge_decomposition.rs"));
}
mod contraction_step {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/contraction_step.rs"));
}
mod pipeline {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pipeline.rs"));
}

#[test]
fn face_ring_basics_runs() {
    face_ring_basics::run_example().expect("face_ring_basics");
}

#[test]
fn rational_functions_runs() {
    rational_functions::run_example().expect("rational_functions");
}

#[test]
fn artinian_reduction_runs() {
    artinian_reduction::run_example().expect("artinian_reduction");
}

#[test]
fn lee_formula_runs() {
    lee_formula::run_example().expect("lee_formula");
}

#[test]
fn anisotropy_certificates_runs() {
    anisotropy_certificates::run_example().expect("anisotropy_certificates");
}

#[test]
fn lefschetz_witness_runs() {
    lefschetz_witness::run_example().expect("lefschetz_witness");
}

#[test]
fn edge_decomposition_runs() {
    edge_decomposition::run_example().expect("edge_decomposition");
}

#[test]
fn contraction_step_runs() {
    contraction_step::run_example().expect("contraction_step");
}

#[test]
fn pipeline_runs() {
    pipeline::run_example().expect("pipeline");
}
