//! Graph files: `{"nodes": [{"id", "score"}...], "edges": [[id, id]...]}`.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Number, Value};

use crate::error::{Error, Result};
use crate::graph::{DiversityGraph, ScoredResult};
use crate::score::Score;

#[derive(Deserialize)]
struct GraphFile {
    nodes: Vec<ScoredResult<f64>>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

/// Renders a score as an integer when it is integral, otherwise as a float
/// rounded to six decimals.
pub fn score_json<S: Score>(s: S) -> Value {
    let x = s.to_f64().unwrap_or(f64::NAN);
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        Value::Number(Number::from(x as i64))
    } else {
        let rounded = (x * 1e6).round() / 1e6;
        Number::from_f64(rounded).map_or(Value::Null, Value::Number)
    }
}

pub fn graph_to_json<S: Score>(g: &DiversityGraph<S>) -> Value {
    let nodes: Vec<Value> = (0..g.len())
        .map(|i| json!({"id": g.label(i), "score": score_json(g.score(i))}))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(a, b)| json!([g.label_of(a), g.label_of(b)]))
        .collect();
    json!({"nodes": nodes, "edges": edges})
}

pub fn graph_from_json<S: Score>(text: &str) -> Result<DiversityGraph<S>> {
    let file: GraphFile = serde_json::from_str(text)?;
    let mut results = Vec::with_capacity(file.nodes.len());
    for r in file.nodes {
        let score = S::from_f64(r.score)
            .filter(|s| s.is_valid_score() && r.score.is_finite())
            .ok_or_else(|| Error::InvalidScore(r.id.clone()))?;
        results.push(ScoredResult::new(r.id, score));
    }
    DiversityGraph::from_labeled_edges(results, file.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

pub fn read_graph<S: Score>(path: impl AsRef<Path>) -> Result<DiversityGraph<S>> {
    graph_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_graph<S: Score>(g: &DiversityGraph<S>, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&graph_to_json(g))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
