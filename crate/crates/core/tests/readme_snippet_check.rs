use arcx_core::gamma::{ConnectivityVerdict, MarkedGraph};
use arcx_core::macx::Macx;
use arcx_core::surface::Triangulation;

#[test]
fn readme_snippet_compiles_and_runs() {
    let tri = Triangulation::standard(0, 6).unwrap();
    let graph = MarkedGraph::complete(&tri, 6).unwrap();
    assert_eq!(
        graph.connectivity_verdict(tri.genus()),
        ConnectivityVerdict::Connected
    );

    let mut complex = Macx::new(&tri, &graph).unwrap();
    let arcs = complex.compatible_arcs(4);
    let cert = complex.connect(&arcs[0], &arcs[100]).unwrap();
    assert!(complex.validate_certificate(&cert).is_ok());
    println!("connected {} arcs in {} steps", arcs.len(), cert.length());
}
