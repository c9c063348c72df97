use std::fs;
use std::path::Path;

use cgm_core::corpus::corpus_entry;
use cgm_core::graph::{parse_graph, ColoredGraph};
use cgm_core::schemes::{j15, shrikhande_colored, PartitionDoc, RelationPartition};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Raw input bytes with a label and their SHA-256 digest.
pub struct Input {
    pub source: String,
    pub bytes: Vec<u8>,
}

impl Input {
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }

    fn text(&self) -> Result<&str, CliError> {
        std::str::from_utf8(&self.bytes).map_err(|e| CliError::input(format!("{}: {e}", self.source)))
    }
}

fn read_file(arg: &str) -> Result<Option<Input>, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        return Ok(None);
    }
    let bytes = fs::read(path).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
    Ok(Some(Input {
        source: arg.to_string(),
        bytes,
    }))
}

/// A graph file, or the name of a bundled corpus graph.
pub fn load_graph(arg: &str) -> Result<(Input, ColoredGraph), CliError> {
    if let Some(input) = read_file(arg)? {
        let g = parse_graph(input.text()?).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        return Ok((input, g));
    }
    let name = arg
        .strip_prefix("corpus/")
        .unwrap_or(arg)
        .trim_end_matches(".json");
    match corpus_entry(name) {
        Some(e) => Ok((
            Input {
                source: format!("builtin:{name}"),
                bytes: e.graph.to_json().into_bytes(),
            },
            e.graph,
        )),
        None => Err(CliError::input(format!("{arg}: no such file or bundled graph"))),
    }
}

/// The input of the scheme command.
pub struct SchemeInput {
    pub partition: RelationPartition,
    /// Present when the partition comes from a complete colored graph.
    pub graph: Option<ColoredGraph>,
}

pub fn load_scheme(arg: &str) -> Result<(Input, SchemeInput), CliError> {
    let from_graph = |g: ColoredGraph| -> Result<SchemeInput, CliError> {
        let partition = RelationPartition::from_complete_graph(&g).map_err(|e| CliError::input(e.to_string()))?;
        Ok(SchemeInput {
            partition,
            graph: Some(g),
        })
    };
    if let Some(input) = read_file(arg)? {
        let text = input.text()?;
        if let Ok(doc) = serde_json::from_str::<PartitionDoc>(text) {
            let partition =
                RelationPartition::from_document(&doc).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
            return Ok((input, SchemeInput { partition, graph: None }));
        }
        let g = parse_graph(text).map_err(|e| CliError::input(format!("{arg}: neither a partition nor a graph: {e}")))?;
        let s = from_graph(g)?;
        return Ok((input, s));
    }
    let builtin = |source: String, g: ColoredGraph| -> Result<(Input, SchemeInput), CliError> {
        let bytes = g.to_json().into_bytes();
        Ok((Input { source, bytes }, from_graph(g)?))
    };
    match arg {
        "shrikhande" => builtin("builtin:shrikhande".into(), shrikhande_colored()),
        "j15" => builtin("builtin:j15".into(), j15()),
        _ => {
            let n: usize = arg
                .strip_prefix("trivial:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::input(format!("{arg}: no such file or builtin scheme")))?;
            if n == 0 {
                return Err(CliError::input("trivial scheme needs at least one point"));
            }
            let partition = RelationPartition::trivial(n);
            let bytes = serde_json::to_vec(&partition.to_document()).expect("serializable");
            Ok((
                Input {
                    source: format!("builtin:{arg}"),
                    bytes,
                },
                SchemeInput { partition, graph: None },
            ))
        }
    }
}
