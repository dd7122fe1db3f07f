#![allow(dead_code)]

use rand::Rng;

use qdecision::born::State;
use qdecision::random::{
    random_density, random_maximal_variable, random_state, random_variable_with_ranks, seeded,
};
use qdecision::scenario::{ProjectorSpec, Query, Scenario, ScenarioError};

/// A random valid scenario touching every query kind its state allows.
pub fn generated_scenario(seed: u64) -> Scenario {
    let mut rng = seeded(seed);
    let r = rng.random_range(2..=5usize);
    let mixed = seed % 4 == 3;
    let state = if mixed {
        let rank = rng.random_range(1..=r);
        State::Mixed(random_density(&mut rng, r, rank))
    } else {
        State::Pure(random_state(&mut rng, r))
    };
    let a = random_maximal_variable(&mut rng, "a", r).unwrap();
    let b = random_maximal_variable(&mut rng, "b", r).unwrap();
    let cond = random_variable_with_ranks(&mut rng, "cond", &[1, r - 1]).unwrap();
    let spec = |v: &qdecision::variable::DecisionVariable, k: usize| {
        ProjectorSpec::new(v.name(), v.values()[k % v.values().len()])
    };
    let k = rng.random_range(0..r);
    let mut queries = vec![
        Query::Distribution {
            variable: "a".into(),
        },
        Query::Expectation {
            variable: "b".into(),
        },
        Query::Sequence {
            steps: vec![spec(&a, k), spec(&b, k + 1), spec(&cond, k)],
        },
        Query::ReconstructCheck { noise: 0.0 },
    ];
    if !mixed {
        queries.extend([
            Query::Conjunction {
                first: spec(&a, k),
                second: spec(&b, k),
            },
            Query::TotalProbability {
                partition: "b".into(),
                target: spec(&a, k),
            },
            Query::SureThing {
                condition: "cond".into(),
                choice: spec(&a, k),
                threshold: 0.5,
            },
        ]);
    }
    Scenario::new(
        format!("generated-{seed}"),
        state,
        vec![a, b, cond],
        queries,
    )
    .unwrap()
}

const VALID: &str = r#"{
  "context": "c",
  "dimension": 2,
  "state": {"vector": [[1, 0], [0, 0]]},
  "variables": [
    {"name": "A", "values": [1, 0], "basis_angle_degrees": 40},
    {"name": "B", "values": [1, 0], "basis_angle_degrees": 70}
  ],
  "queries": [
    {"kind": "distribution", "variable": "A"},
    {"kind": "conjunction", "first": {"variable": "A", "value": 1}, "second": {"variable": "B", "value": 1}}
  ]
}"#;

pub fn valid_document() -> &'static str {
    VALID
}

fn edit(from: &str, to: &str) -> String {
    assert!(VALID.contains(from), "corpus edit target {from:?} missing");
    VALID.replacen(from, to, 1)
}

const STATE: &str = r#""state": {"vector": [[1, 0], [0, 0]]}"#;
const VAR_A: &str = r#"{"name": "A", "values": [1, 0], "basis_angle_degrees": 40}"#;
const QUERY: &str = r#"{"kind": "distribution", "variable": "A"}"#;

fn with_state(s: &str) -> String {
    edit(STATE, &format!(r#""state": {s}"#))
}

fn with_var(v: &str) -> String {
    edit(VAR_A, v)
}

fn with_query(q: &str) -> String {
    edit(QUERY, q)
}

/// Fifty malformed documents, each with a short label.
pub fn malformed_corpus() -> Vec<(&'static str, String)> {
    let eye3 = r#"[[[1,0],[0,0],[0,0]]], [[[0,0],[1,0],[0,0]]], [[[0,0],[0,0],[1,0]]]"#;
    let corpus: Vec<(&'static str, String)> = vec![
        ("empty", String::new()),
        ("whitespace", "   \n\t".into()),
        ("open brace", "{".into()),
        ("bare array", "[]".into()),
        ("null", "null".into()),
        ("trailing comma", edit(r#""context": "c","#, r#""context": "c",,"#)),
        ("trailing garbage", format!("{VALID} x")),
        ("unterminated string", edit(r#""context": "c""#, r#""context": "c"#)),
        ("NaN literal", edit("[[1, 0], [0, 0]]", "[[NaN, 0], [0, 0]]")),
        ("comment", format!("// scenario\n{VALID}")),
        ("missing dimension", edit("\"dimension\": 2,\n", "")),
        ("negative dimension", edit("\"dimension\": 2", "\"dimension\": -2")),
        ("string dimension", edit("\"dimension\": 2", "\"dimension\": \"2\"")),
        ("zero dimension", edit("\"dimension\": 2", "\"dimension\": 0")),
        ("fractional dimension", edit("\"dimension\": 2", "\"dimension\": 2.5")),
        ("missing state", edit(&format!("{STATE},\n"), "")),
        ("unknown state kind", with_state(r#"{"ket": [[1, 0], [0, 0]]}"#)),
        ("two state kinds", with_state(r#"{"vector": [[1, 0], [0, 0]], "density": []}"#)),
        ("short vector", with_state(r#"{"vector": [[1, 0]]}"#)),
        ("norm 0.9", with_state(r#"{"vector": [[0.9, 0], [0, 0]]}"#)),
        ("three-part complex", with_state(r#"{"vector": [[1, 0, 0], [0, 0]]}"#)),
        ("real amplitudes", with_state(r#"{"vector": [1, 0]}"#)),
        ("huge number", with_state(r#"{"vector": [[1e999, 0], [0, 0]]}"#)),
        ("density trace 2", with_state(r#"{"density": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#)),
        ("density not hermitian", with_state(r#"{"density": [[[0.5, 0], [0.3, 0]], [[0, 0], [0.5, 0]]]}"#)),
        ("density negative", with_state(r#"{"density": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}"#)),
        ("density ragged", with_state(r#"{"density": [[[1, 0], [0, 0]], [[0, 0]]]}"#)),
        ("variable without basis", with_var(r#"{"name": "A", "values": [1, 0]}"#)),
        ("variable with both bases", with_var(r#"{"name": "A", "values": [1, 0], "basis_angle_degrees": 40, "eigenvectors": [[[[1,0],[0,0]]], [[[0,0],[1,0]]]]}"#)),
        ("angle with three values", with_var(r#"{"name": "A", "values": [1, 0, 2], "basis_angle_degrees": 40}"#)),
        ("duplicate values", with_var(r#"{"name": "A", "values": [1, 1], "basis_angle_degrees": 40}"#)),
        ("non-orthogonal eigenvectors", with_var(r#"{"name": "A", "values": [1, 0], "eigenvectors": [[[[1,0],[0,0]]], [[[0.6,0],[0.8,0]]]]}"#)),
        ("eigenvector too long", with_var(&format!(r#"{{"name": "A", "values": [1, 0, 2], "eigenvectors": [{eye3}]}}"#))),
        ("eigenspace count mismatch", with_var(r#"{"name": "A", "values": [1, 0, 2], "eigenvectors": [[[[1,0],[0,0]]], [[[0,0],[1,0]]]]}"#)),
        ("zero eigenvector", with_var(r#"{"name": "A", "values": [1, 0], "eigenvectors": [[[[0,0],[0,0]]], [[[0,0],[1,0]]]]}"#)),
        ("incomplete eigenbasis", with_var(r#"{"name": "A", "values": [1], "eigenvectors": [[[[1,0],[0,0]]]]}"#)),
        ("empty eigenspace", with_var(r#"{"name": "A", "values": [1, 0], "eigenvectors": [[], [[[0,0],[1,0]], [[1,0],[0,0]]]]}"#)),
        ("duplicate variable name", edit(r#""name": "B""#, r#""name": "A""#)),
        ("numeric name", with_var(r#"{"name": 7, "values": [1, 0], "basis_angle_degrees": 40}"#)),
        ("string value", with_var(r#"{"name": "A", "values": [1, "yes"], "basis_angle_degrees": 40}"#)),
        ("unknown variable field", with_var(r#"{"name": "A", "values": [1, 0], "basis_angle_degrees": 40, "unit": "s"}"#)),
        ("unknown top-level field", edit("\"dimension\": 2", "\"dimension\": 2, \"seed\": 3")),
        ("unknown query kind", with_query(r#"{"kind": "variance", "variable": "A"}"#)),
        ("query without kind", with_query(r#"{"variable": "A"}"#)),
        ("undeclared variable", with_query(r#"{"kind": "distribution", "variable": "η"}"#)),
        ("absent outcome value", with_query(r#"{"kind": "sequence", "steps": [{"variable": "A", "value": 3}]}"#)),
        ("empty sequence", with_query(r#"{"kind": "sequence", "steps": []}"#)),
        ("threshold out of range", with_query(r#"{"kind": "sure_thing", "condition": "B", "choice": {"variable": "A", "value": 1}, "threshold": 1.5}"#)),
        ("negative noise", with_query(r#"{"kind": "reconstruct_check", "noise": -1}"#)),
        ("zero-probability condition", edit(STATE, r#""state": {"vector": [[0.766044443118978, 0], [0.6427876096865393, 0]]}"#).replacen(QUERY, r#"{"kind": "sure_thing", "condition": "A", "choice": {"variable": "B", "value": 1}}"#, 1)),
    ];
    assert_eq!(corpus.len(), 50);
    corpus
}

/// True when the error says where it happened.
pub fn is_annotated(e: &ScenarioError) -> bool {
    match e {
        ScenarioError::Syntax { line, .. } => *line >= 1,
        ScenarioError::Validation { location, message } => {
            !location.is_empty() && !message.is_empty()
        }
        ScenarioError::Engine { query_index, .. } => *query_index >= 1,
    }
}
