//! The JSON files under `corpus/` must match the built-in example graphs.
//! Set `CGM_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use cgm_core::corpus::corpus;
use cgm_core::graph::parse_graph;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn corpus_files_match_builtins() {
    let dir = corpus_dir();
    let bless = std::env::var_os("CGM_BLESS").is_some();
    for e in corpus() {
        let path = dir.join(format!("{}.json", e.name));
        if bless {
            fs::write(&path, e.graph.to_json() + "\n").unwrap();
        }
        let text = fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        let g = parse_graph(&text).unwrap();
        assert!(g == e.graph, "{} differs from the built-in graph", e.name);
    }
}
