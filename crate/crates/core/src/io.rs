//! JSON documents for drawings and casings.
//!
//! Coordinates and the casing width are written as decimal strings (or
//! `p/q` when no finite decimal exists) so values survive a round trip
//! exactly. On input, JSON numbers are accepted too and read from their
//! source text, never through a float.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::arrangement::Arrangement;
use crate::crossing_graph::{Casing, CasingError, ObjectiveReport};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::geometry::{validate_drawing, Drawing, DrawingError, EdgeId, ValidationIssue};
use crate::objective::{Model, Objective};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid drawing: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ValidationIssue>),
    #[error(transparent)]
    Casing(#[from] CasingError),
}

impl IoError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Field { path: path.into(), message: message.into() }
    }
}

fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, IoError> {
    obj.get(key).ok_or_else(|| IoError::field(format!("{path}.{key}"), "missing field"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| IoError::field(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| IoError::field(path, "expected an array"))
}

fn number(v: &Value, path: &str) -> Result<Rational, IoError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(IoError::field(path, "expected a number or a decimal string")),
    };
    parse_rational(&text).map_err(|e| IoError::field(path, e.to_string()))
}

fn id(v: &Value, path: &str) -> Result<u64, IoError> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
    .ok_or_else(|| IoError::field(path, "expected a non-negative integer id"))
}

/// Parses a drawing document and runs validation; any validation error
/// rejects the document.
pub fn parse_drawing(text: &str) -> Result<Drawing, IoError> {
    let d = parse_drawing_unchecked(text)?;
    let report = validate_drawing(&d, None);
    if !report.is_valid() {
        return Err(IoError::Invalid(report.errors));
    }
    Ok(d)
}

/// Parses a drawing document without the geometric validation.
pub fn parse_drawing_unchecked(text: &str) -> Result<Drawing, IoError> {
    let root = parse_json(text)?;
    let obj = as_object(&root, "$")?;
    let w = number(get(obj, "casing_width", "$")?, "$.casing_width")?;
    let mut vertices = Vec::new();
    for (i, v) in as_array(get(obj, "vertices", "$")?, "$.vertices")?.iter().enumerate() {
        let path = format!("$.vertices[{i}]");
        let o = as_object(v, &path)?;
        let vid = id(get(o, "id", &path)?, &format!("{path}.id"))?;
        let x = number(get(o, "x", &path)?, &format!("{path}.x"))?;
        let y = number(get(o, "y", &path)?, &format!("{path}.y"))?;
        vertices.push((vid, crate::exact::Point::new(x, y)));
    }
    let mut edges = Vec::new();
    for (i, e) in as_array(get(obj, "edges", "$")?, "$.edges")?.iter().enumerate() {
        let path = format!("$.edges[{i}]");
        let o = as_object(e, &path)?;
        edges.push((
            id(get(o, "id", &path)?, &format!("{path}.id"))?,
            id(get(o, "u", &path)?, &format!("{path}.u"))?,
            id(get(o, "v", &path)?, &format!("{path}.v"))?,
        ));
    }
    Drawing::new(vertices.clone(), edges.clone(), w).map_err(|e| {
        // Point at the offending entry.
        let path = match &e {
            DrawingError::DuplicateVertex(v) => {
                let i = vertices.iter().rposition(|(id, _)| id == v).unwrap_or(0);
                format!("$.vertices[{i}].id")
            }
            DrawingError::DuplicateEdge(x) => {
                let i = edges.iter().rposition(|(id, _, _)| id == x).unwrap_or(0);
                format!("$.edges[{i}].id")
            }
            DrawingError::MissingVertex { edge, vertex } => {
                let i = edges.iter().position(|(id, _, _)| id == edge).unwrap_or(0);
                let end = if edges[i].1 == *vertex { "u" } else { "v" };
                format!("$.edges[{i}].{end}")
            }
            DrawingError::ZeroLength(x) => {
                let i = edges.iter().position(|(id, _, _)| id == x).unwrap_or(0);
                format!("$.edges[{i}]")
            }
            DrawingError::NonPositiveWidth(_) => "$.casing_width".to_string(),
        };
        IoError::field(path, e.to_string())
    })
}

pub fn drawing_to_value(d: &Drawing) -> Value {
    let vertices: Vec<Value> = d
        .vertices()
        .iter()
        .map(|v| json!({"id": v.id, "x": format_rational(&v.pos.x), "y": format_rational(&v.pos.y)}))
        .collect();
    let edges: Vec<Value> = d
        .edges()
        .iter()
        .map(|e| json!({"id": e.id, "u": d.vertices()[e.u].id, "v": d.vertices()[e.v].id}))
        .collect();
    json!({"casing_width": format_rational(d.casing_width()), "vertices": vertices, "edges": edges})
}

pub fn serialize_drawing(d: &Drawing) -> String {
    let mut s = serde_json::to_string_pretty(&drawing_to_value(d)).expect("plain JSON values");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRef {
    pub edge_a: EdgeId,
    pub edge_b: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub crossing: CrossingRef,
    pub top: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeMetricsDocument {
    pub edge: EdgeId,
    pub switches: usize,
    pub tunnels: usize,
    pub bridges: usize,
    pub tunnel_length: String,
    pub tunnel_length_approx: f64,
    /// Exact squared distance, absent with fewer than two tunnels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_tunnel_distance_sq: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsDocument {
    pub total_switches: usize,
    pub max_switches: usize,
    pub max_tunnels: usize,
    pub max_tunnel_length: String,
    pub max_tunnel_length_approx: f64,
    /// `"unbounded"` when no edge has two tunnels.
    pub min_tunnel_distance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_tunnel_distance_sq: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_face_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switch_lower_bound: Option<usize>,
    pub per_edge: Vec<EdgeMetricsDocument>,
}

impl MetricsDocument {
    pub fn from_report(r: &ObjectiveReport) -> Self {
        MetricsDocument {
            total_switches: r.total_switches,
            max_switches: r.max_switches,
            max_tunnels: r.max_tunnels,
            max_tunnel_length: r.max_tunnel_length.to_string(),
            max_tunnel_length_approx: r.max_tunnel_length.to_f64(),
            min_tunnel_distance: crate::objective::ObjectiveValue::Distance(r.min_tunnel_distance_sq.clone())
                .to_string(),
            min_tunnel_distance_sq: r.min_tunnel_distance_sq.as_ref().map(format_rational),
            odd_face_count: r.odd_face_count,
            switch_lower_bound: r.switch_lower_bound,
            per_edge: r
                .per_edge
                .iter()
                .map(|m| EdgeMetricsDocument {
                    edge: m.edge,
                    switches: m.switches,
                    tunnels: m.tunnels,
                    bridges: m.bridges,
                    tunnel_length: m.tunnel_length.to_string(),
                    tunnel_length_approx: m.tunnel_length.to_f64(),
                    min_tunnel_distance_sq: m.min_tunnel_distance_sq.as_ref().map(format_rational),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasingDocument {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<String>,
    /// Optimal objective value as printed by the solver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// Set when the solver fell back to a bound instead of an optimum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub crossings: Vec<CrossingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsDocument>,
}

impl CasingDocument {
    /// Records in crossing-id order, with edge ids instead of indices.
    pub fn new(arr: &Arrangement, casing: &Casing) -> Self {
        let edges = arr.drawing().edges();
        let crossings = arr
            .crossings()
            .iter()
            .map(|c| CrossingRecord {
                crossing: CrossingRef { edge_a: edges[c.edge_a].id, edge_b: edges[c.edge_b].id },
                top: edges[casing.top(c.id)].id,
            })
            .collect();
        CasingDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            model: None,
            objective: None,
            value: None,
            note: None,
            crossings,
            metrics: None,
        }
    }

    pub fn with_provenance(mut self, model: Model, objective: Objective) -> Self {
        self.model = Some(model.name().to_string());
        self.objective = Some(objective.name().to_string());
        self
    }

    pub fn with_metrics(mut self, r: &ObjectiveReport) -> Self {
        self.metrics = Some(MetricsDocument::from_report(r));
        self
    }

    /// The casing these records describe on `arr`; needs exactly one record
    /// per crossing.
    pub fn to_casing(&self, arr: &Arrangement) -> Result<Casing, IoError> {
        let d = arr.drawing();
        let k = arr.num_crossings();
        let mut top: Vec<Option<usize>> = vec![None; k];
        for r in &self.crossings {
            let (a, b) = (r.crossing.edge_a, r.crossing.edge_b);
            let unknown = || CasingError::UnknownCrossing(a, b);
            let ia = d.edge_index(a).ok_or_else(unknown)?;
            let ib = d.edge_index(b).ok_or_else(unknown)?;
            let c = arr.crossing_between(ia, ib).ok_or_else(unknown)?;
            let t = d.edge_index(r.top).filter(|&t| t == ia || t == ib);
            let t = t.ok_or(CasingError::NotInvolved { crossing: c, edge: d.edge_index(r.top).unwrap_or(usize::MAX) })?;
            if top[c].replace(t).is_some() {
                return Err(CasingError::DuplicateCrossing(a, b).into());
            }
        }
        let found = top.iter().filter(|t| t.is_some()).count();
        if found != k {
            return Err(CasingError::CountMismatch { expected: k, found }.into());
        }
        Ok(Casing::new(arr, top.into_iter().map(Option::unwrap).collect())?)
    }
}

pub fn serialize_casing(doc: &CasingDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain JSON values");
    s.push('\n');
    s
}

pub fn parse_casing(text: &str) -> Result<CasingDocument, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossing_graph::{casing_metrics, zero_switch_casing};
    use crate::exact::rat;
    use crate::fixtures::{grid, random_segments, triangle};

    #[test]
    fn grid_round_trip() {
        let d = grid(3, 3, &crate::exact::int(1), &rat(1, 10));
        let text = serialize_drawing(&d);
        let back = parse_drawing(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!((back.num_vertices(), back.num_edges()), (12, 6));
        assert_eq!(serialize_drawing(&back), text);
    }

    #[test]
    fn decimals_are_exact() {
        let text = r#"{"casing_width": 0.1, "vertices": [{"id": 1, "x": "0.1", "y": 0}, {"id": 2, "x": 3, "y": "1/3"}],
            "edges": [{"id": 0, "u": 1, "v": 2}]}"#;
        let d = parse_drawing(text).unwrap();
        assert_eq!(d.vertices()[0].pos.x, rat(1, 10));
        assert_eq!(d.vertices()[1].pos.y, rat(1, 3));
        assert_eq!(d.casing_width(), &rat(1, 10));
    }

    #[test]
    fn error_paths() {
        let missing = r#"{"casing_width": "1", "vertices": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 1, "y": 0}],
            "edges": [{"id": 0, "u": 1, "v": 9}]}"#;
        match parse_drawing(missing).unwrap_err() {
            IoError::Field { path, .. } => assert_eq!(path, "$.edges[0].v"),
            e => panic!("{e}"),
        }
        let dup = r#"{"casing_width": "1", "vertices": [{"id": 1, "x": 0, "y": 0}, {"id": 1, "x": 1, "y": 0}], "edges": []}"#;
        assert!(matches!(parse_drawing(dup), Err(IoError::Field { path, .. }) if path == "$.vertices[1].id"));
        let bad_num = r#"{"casing_width": "1", "vertices": [{"id": 1, "x": "abc", "y": 0}], "edges": []}"#;
        assert!(matches!(parse_drawing(bad_num), Err(IoError::Field { path, .. }) if path == "$.vertices[0].x"));
        assert!(matches!(parse_drawing("{\n\"casing_width\": }"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_drawing(r#"{"vertices": [], "edges": []}"#), Err(IoError::Field { .. })));
        // A vertex on another edge fails validation.
        let on_edge = r#"{"casing_width": "0.1", "vertices": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 2, "y": 0},
            {"id": 3, "x": 1, "y": 0}, {"id": 4, "x": 1, "y": 1}], "edges": [{"id": 0, "u": 1, "v": 2}, {"id": 1, "u": 3, "v": 4}]}"#;
        assert!(matches!(parse_drawing(on_edge), Err(IoError::Invalid(_))));
    }

    #[test]
    fn casing_round_trip() {
        let d = grid(3, 3, &crate::exact::int(1), &rat(1, 10));
        let arr = Arrangement::build(&d).unwrap();
        let c = zero_switch_casing(&arr).unwrap();
        let r = casing_metrics(&arr, &c).unwrap();
        let doc = CasingDocument::new(&arr, &c).with_provenance(Model::Weaving, Objective::MinTotalSwitches).with_metrics(&r);
        let text = serialize_casing(&doc);
        let back = parse_casing(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_casing(&arr).unwrap(), c);
        assert_eq!(back.metrics.unwrap().total_switches, 0);
    }

    #[test]
    fn casing_mismatches() {
        let arr = Arrangement::build(&triangle()).unwrap();
        let c = Casing::new(&arr, vec![0, 0, 1]).unwrap();
        let doc = CasingDocument::new(&arr, &c);
        let mut short = doc.clone();
        short.crossings.pop();
        assert!(matches!(short.to_casing(&arr), Err(IoError::Casing(CasingError::CountMismatch { .. }))));
        let mut dup = doc.clone();
        dup.crossings[2] = dup.crossings[0].clone();
        assert!(matches!(dup.to_casing(&arr), Err(IoError::Casing(CasingError::DuplicateCrossing(..)))));
        let mut wrong = doc.clone();
        wrong.crossings[0].top = 2;
        assert!(matches!(wrong.to_casing(&arr), Err(IoError::Casing(CasingError::NotInvolved { .. }))));
        let mut unknown = doc;
        unknown.crossings[0].crossing.edge_b = 77;
        assert!(matches!(unknown.to_casing(&arr), Err(IoError::Casing(CasingError::UnknownCrossing(0, 77)))));
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..20 {
            let d = random_segments(8, seed, 10.0, 2.0, 8.0);
            assert_eq!(parse_drawing(&serialize_drawing(&d)).unwrap(), d);
        }
    }
}
