use cgm_core::block::{find_block_violation, is_block_forest};
use cgm_core::graph::{ColoredGraph, GraphBuilder};
use cgm_core::ideal::{decide_binomial, Generators, Reason};
use cgm_core::oracle::{verify_graph, witness_nonbinomial, VerifyOptions};
use cgm_core::regularity::regularity_report;
use cgm_core::schemes::{
    is_association_scheme, is_coherent_configuration, is_jordan_scheme, is_strongly_regular,
    ordered_pair_signature, symmetrization_obstruction, IntersectionTable, Outcome, RelationPartition,
};
use cgm_core::structure::{depth_function, lemma_suite, StructureError};
use serde_json::{json, Value};

use crate::input::SchemeInput;
use crate::{CliError, Outcome as Done};

fn describe_decision(g: &ColoredGraph) -> (Value, bool, String) {
    let d = decide_binomial(g);
    let text = match &d.reason {
        Reason::None => "binomial".to_string(),
        Reason::BlockViolation { violation, .. } => format!(
            "not binomial: not a block graph ({} and {})",
            g.id(violation.u),
            g.id(violation.v)
        ),
        Reason::Regularity { counterexample, .. } => {
            format!("not binomial: {}", counterexample.describe(g))
        }
    };
    (d.to_json(g), d.binomial, text)
}

fn witness_json(g: &ColoredGraph, binomial: bool) -> Value {
    if binomial || !g.is_connected() {
        return Value::Null;
    }
    match witness_nonbinomial(g) {
        Ok(w) => w.to_json(g),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn check(g: &ColoredGraph) -> Result<Done, CliError> {
    let (decision, binomial, text) = describe_decision(g);
    let report = regularity_report(g);
    let connected = g.is_connected();
    let violation = if connected {
        find_block_violation(g).ok().flatten().map(|v| {
            json!({
                "kind": v.kind,
                "u": g.id(v.u),
                "v": g.id(v.v),
                "path_p": v.path_p.user_ids(g),
                "path_q": v.path_q.user_ids(g),
            })
        })
    } else {
        None
    };
    let rcop = cgm_core::schemes::is_rcop(g);
    let payload = json!({
        "vertices": g.n(),
        "edges": g.num_edges(),
        "connected": connected,
        "block_graph": is_block_forest(g),
        "block_violation": violation,
        "regularity": {
            "vertex_regular": report.vertex_regular,
            "edge_regular": report.edge_regular,
            "edge_triangle_regular": report.edge_triangle_regular,
            "vertex_triangle_regular": report.vertex_triangle_regular,
            "triangle_regular": report.triangle_regular,
            "counterexample": report.counterexample.as_ref().map(|c| c.describe(g)),
        },
        "rcop": rcop,
        "binomial": binomial,
        "decision": decision,
        "witness": witness_json(g, binomial),
    });
    let summary = format!(
        "{text}; block graph: {}; triangle-regular: {}; rcop: {rcop}",
        is_block_forest(g),
        report.triangle_regular
    );
    Ok(Done::new(payload, summary, if binomial { 0 } else { 1 }))
}

pub fn generators(g: &ColoredGraph, all_pairs: bool) -> Result<Done, CliError> {
    let (decision, binomial, text) = describe_decision(g);
    if !binomial {
        let payload = json!({
            "binomial": false,
            "decision": decision,
            "witness": witness_json(g, false),
        });
        return Ok(Done::new(payload, text, 1));
    }
    let gens = Generators::compute(g, all_pairs).map_err(|e| CliError::oracle(e.to_string()))?;
    let summary = format!(
        "{} linear and {} quadratic generators{}",
        gens.linear.len(),
        gens.quadratic.len(),
        if all_pairs { " (all pairs)" } else { "" }
    );
    let payload = json!({
        "binomial": true,
        "mode": if all_pairs { "all-pairs" } else { "spanning" },
        "counts": { "linear": gens.linear.len(), "quadratic": gens.quadratic.len() },
        "generators": gens.to_json(g),
    });
    Ok(Done::new(payload, summary, 0))
}

pub fn verify(g: &ColoredGraph, opts: &VerifyOptions) -> Result<Done, CliError> {
    let binomial = decide_binomial(g).binomial;
    let checks = verify_graph(g, opts);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let passed = failed.is_empty();
    let summary = if passed {
        format!("{} checks passed ({})", checks.len(), if binomial { "binomial" } else { "not binomial" })
    } else {
        format!("oracle disagreement in {}", failed.join(", "))
    };
    let payload = json!({
        "binomial": binomial,
        "degree_bound": opts.degree,
        "trials": opts.trials,
        "rational": opts.rational,
        "passed": passed,
        "checks": checks,
    });
    Ok(Done::new(payload, summary, if passed { 0 } else { 3 }))
}

fn table_json(t: &IntersectionTable) -> Value {
    let r = t.classes;
    json!((0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| t.get(i, j, k)).collect::<Vec<_>>()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn class_graph(p: &RelationPartition, c: usize) -> ColoredGraph {
    let mut b = GraphBuilder::new();
    for x in 0..p.size() {
        b.add_vertex(x.to_string(), "p");
    }
    for x in 0..p.size() {
        for y in x + 1..p.size() {
            if p.class(x, y) == c {
                b.add_edge(x.to_string(), y.to_string(), "c");
            }
        }
    }
    b.build().expect("valid class graph")
}

fn signature_json(g: &ColoredGraph, x: usize, y: usize) -> Value {
    match ordered_pair_signature(g, x, y) {
        Ok(s) => json!(s
            .to_sorted_vec()
            .iter()
            .map(|(a, b)| format!("({},{})", a.label, b.label))
            .collect::<Vec<_>>()),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn scheme(input: &SchemeInput) -> Result<Done, CliError> {
    let p = &input.partition;
    let coherent = is_coherent_configuration(p);
    let association = is_association_scheme(p);
    let symmetric = p.is_symmetric();
    let (jordan, q_table, jordan_note) = match is_jordan_scheme(p) {
        Ok(Outcome::Holds(t)) => (Some(true), Some(table_json(&t)), None),
        Ok(Outcome::Fails(v)) => (Some(false), None, Some(serde_json::to_value(v).expect("serializable"))),
        Err(e) => (None, None, Some(json!(e.to_string()))),
    };
    let (coherent_flag, p_table, coherent_violation) = match &coherent {
        Outcome::Holds(t) => (true, Some(table_json(t)), None),
        Outcome::Fails(v) => (false, None, Some(serde_json::to_value(v).expect("serializable"))),
    };
    let obstruction = if symmetric {
        match symmetrization_obstruction(p) {
            Ok(Some(o)) => {
                let sig = input.graph.as_ref().map(|g| {
                    json!({
                        "first": signature_json(g, o.first.0, o.first.1),
                        "second": signature_json(g, o.second.0, o.second.1),
                    })
                });
                json!({
                    "violated": true,
                    "class": o.class,
                    "first": [o.first.0 + 1, o.first.1 + 1],
                    "second": [o.second.0 + 1, o.second.1 + 1],
                    "signatures": sig,
                })
            }
            Ok(None) => json!({ "violated": false }),
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    let mut srg = Vec::new();
    if symmetric {
        for c in 0..p.num_classes() {
            let diagonal = (0..p.size()).any(|x| p.class(x, x) == c);
            if diagonal {
                continue;
            }
            if let Some((k, a, b)) = is_strongly_regular(&class_graph(p, c)) {
                srg.push(json!({ "class": c, "k": k, "lambda": a, "mu": b }));
            }
        }
    }
    let summary = format!(
        "{} points, {} classes; coherent: {coherent_flag}; association scheme: {association}; jordan: {}",
        p.size(),
        p.num_classes(),
        jordan.map(|j| j.to_string()).unwrap_or_else(|| "n/a".into())
    );
    let payload = json!({
        "points": p.size(),
        "classes": p.num_classes(),
        "symmetric": symmetric,
        "coherent": coherent_flag,
        "coherent_violation": coherent_violation,
        "association_scheme": association,
        "jordan": jordan,
        "jordan_detail": jordan_note,
        "intersection_numbers": p_table,
        "jordan_coefficients": q_table,
        "symmetrization_obstruction": obstruction,
        "strongly_regular": srg,
    });
    Ok(Done::new(payload, summary, 0))
}

pub fn structure(g: &ColoredGraph) -> Result<Done, CliError> {
    let negative = |e: StructureError| -> Result<Done, CliError> {
        let payload = json!({ "precondition": e.to_string() });
        Ok(Done::new(payload, format!("precondition failed: {e}"), 1))
    };
    let kappa = match depth_function(g) {
        Ok(k) => k,
        Err(e) => return negative(e),
    };
    let lemmas = match lemma_suite(g) {
        Ok(l) => l,
        Err(e) => return negative(e),
    };
    let passed = lemmas.iter().all(|l| l.passed);
    let summary = format!(
        "{} peel steps, max depth {}; lemma checks {}",
        kappa.peel_sequence.len(),
        kappa.max_depth(),
        if passed { "passed" } else { "FAILED" }
    );
    let payload = json!({
        "depth": kappa.to_json(g),
        "max_depth": kappa.max_depth(),
        "lemmas": lemmas,
        "passed": passed,
    });
    Ok(Done::new(payload, summary, if passed { 0 } else { 3 }))
}
