use std::path::PathBuf;

use hkpr_core::graph::load_edge_list;

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/dolphins.edges")
}

#[test]
fn dolphins_fixture_has_expected_shape() {
    let path = fixture();
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let list = load_edge_list(&text).unwrap();
    assert_eq!(list.graph.n(), 62);
    assert_eq!(list.graph.m(), 159);
    assert!(list.graph.is_connected());
}
