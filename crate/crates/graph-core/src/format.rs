//! KECS-G v1 text format and the companion coloring file format.
//!
//! Graph files are line-oriented; `#` starts a comment that runs to the end
//! of the line and blank lines are ignored:
//!
//! ```text
//! graph <vertex_count>
//! vertex <id> label <x> <y>
//! vertex <id> allow <c1>,<c2>,...
//! edge <u> <v> weight <decimal-bigint>
//! ```
//!
//! The `graph` record must come first; `label`, `allow` and `weight` are
//! optional (`weight` defaults to 1). Coloring files carry one
//! `color <u> <v> <c>` record per colored edge with `c` in `1..=k`.
//!
//! Writers emit records sorted by vertex id and canonical edge order, so
//! rendering the same data always yields identical bytes.

use crate::{
    canonical_edge, ColorConstraintMap, Edge, Error, Graph, KEdgeColoring, Vertex, WeightMap,
};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};

/// Parsed form of a KECS-G v1 file. Constraint sets are kept raw (unbound
/// to any `k`) because the file does not store `k`; bind them with
/// [`KecsDocument::constraint_map`] once `k` is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KecsDocument {
    pub vertex_count: usize,
    pub labels: BTreeMap<Vertex, (i64, i64)>,
    pub allows: BTreeMap<Vertex, BTreeSet<usize>>,
    /// Canonical order, weight default 1.
    pub edges: Vec<(Edge, BigUint)>,
    /// True when at least one edge record carried an explicit weight.
    pub any_weight_given: bool,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, Error> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_i64(tok: &str, line: usize, what: &str) -> Result<i64, Error> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

impl KecsDocument {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut vertex_count: Option<usize> = None;
        let mut labels = BTreeMap::new();
        let mut allows = BTreeMap::new();
        let mut edges: BTreeMap<Edge, BigUint> = BTreeMap::new();
        let mut any_weight_given = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            match tokens[0] {
                "graph" => {
                    if vertex_count.is_some() {
                        return Err(parse_err(line_no, "duplicate graph record"));
                    }
                    if tokens.len() != 2 {
                        return Err(parse_err(line_no, "expected `graph <vertex_count>`"));
                    }
                    vertex_count = Some(parse_usize(tokens[1], line_no, "vertex count")?);
                }
                "vertex" => {
                    let n = vertex_count
                        .ok_or_else(|| parse_err(line_no, "vertex record before graph record"))?;
                    if tokens.len() < 3 {
                        return Err(parse_err(line_no, "truncated vertex record"));
                    }
                    let v = parse_usize(tokens[1], line_no, "vertex id")?;
                    if v >= n {
                        return Err(parse_err(
                            line_no,
                            format!("vertex id {v} out of range (vertex count {n})"),
                        ));
                    }
                    match tokens[2] {
                        "label" => {
                            if tokens.len() != 5 {
                                return Err(parse_err(
                                    line_no,
                                    "expected `vertex <id> label <x> <y>`",
                                ));
                            }
                            let x = parse_i64(tokens[3], line_no, "label coordinate")?;
                            let y = parse_i64(tokens[4], line_no, "label coordinate")?;
                            if labels.insert(v, (x, y)).is_some() {
                                return Err(parse_err(
                                    line_no,
                                    format!("duplicate label for vertex {v}"),
                                ));
                            }
                        }
                        "allow" => {
                            if tokens.len() != 4 {
                                return Err(parse_err(
                                    line_no,
                                    "expected `vertex <id> allow <c1>,<c2>,...`",
                                ));
                            }
                            let mut set = BTreeSet::new();
                            if tokens[3] != "-" {
                                for part in tokens[3].split(',') {
                                    let c = parse_usize(part, line_no, "color")?;
                                    if c == 0 {
                                        return Err(parse_err(line_no, "color 0 is not allowed"));
                                    }
                                    set.insert(c);
                                }
                            }
                            if allows.insert(v, set).is_some() {
                                return Err(parse_err(
                                    line_no,
                                    format!("duplicate allow record for vertex {v}"),
                                ));
                            }
                        }
                        other => {
                            return Err(parse_err(
                                line_no,
                                format!("unknown vertex field `{other}`"),
                            ))
                        }
                    }
                }
                "edge" => {
                    let n = vertex_count
                        .ok_or_else(|| parse_err(line_no, "edge record before graph record"))?;
                    if tokens.len() != 3 && tokens.len() != 5 {
                        return Err(parse_err(
                            line_no,
                            "expected `edge <u> <v> [weight <decimal>]`",
                        ));
                    }
                    let u = parse_usize(tokens[1], line_no, "vertex id")?;
                    let v = parse_usize(tokens[2], line_no, "vertex id")?;
                    if u >= n || v >= n {
                        return Err(parse_err(
                            line_no,
                            format!("edge endpoint out of range (vertex count {n})"),
                        ));
                    }
                    let e = canonical_edge(u, v)
                        .map_err(|_| parse_err(line_no, format!("loop edge at vertex {u}")))?;
                    let weight = if tokens.len() == 5 {
                        if tokens[3] != "weight" {
                            return Err(parse_err(
                                line_no,
                                format!("unknown edge field `{}`", tokens[3]),
                            ));
                        }
                        any_weight_given = true;
                        let w: BigUint = tokens[4]
                            .parse()
                            .map_err(|_| parse_err(line_no, format!("invalid weight `{}`", tokens[4])))?;
                        if w == BigUint::from(0u32) {
                            return Err(parse_err(line_no, "weight must be positive"));
                        }
                        w
                    } else {
                        BigUint::one()
                    };
                    if edges.insert(e, weight).is_some() {
                        return Err(parse_err(
                            line_no,
                            format!("duplicate edge ({}, {})", e.0, e.1),
                        ));
                    }
                }
                other => return Err(parse_err(line_no, format!("unknown record `{other}`"))),
            }
        }

        let vertex_count =
            vertex_count.ok_or_else(|| parse_err(0, "missing graph record"))?;
        Ok(KecsDocument {
            vertex_count,
            labels,
            allows,
            edges: edges.into_iter().collect(),
            any_weight_given,
        })
    }

    pub fn to_graph(&self) -> Result<Graph, Error> {
        Graph::new(self.vertex_count, self.edges.iter().map(|&(e, _)| e))?
            .with_labels(self.labels.clone())
    }

    /// Weight map over the parsed edges (absent weights default to 1).
    pub fn weight_map(&self, g: &Graph) -> Result<WeightMap, Error> {
        WeightMap::new(g, self.edges.iter().cloned().collect())
    }

    /// Binds the raw `allow` sets to a concrete `k`. `None` when the file
    /// had no allow records. A recorded color above `k` is an error.
    pub fn constraint_map(&self, k: usize) -> Result<Option<ColorConstraintMap>, Error> {
        if self.allows.is_empty() {
            return Ok(None);
        }
        let mut map = ColorConstraintMap::full(self.vertex_count, k);
        for (&v, set) in &self.allows {
            map.set(v, set.clone())?;
        }
        Ok(Some(map))
    }

    /// Assembles a document from solver-side values. Weights equal to 1 are
    /// left implicit; constraint sets equal to the full `{1..k}` are left
    /// implicit too.
    pub fn from_parts(
        g: &Graph,
        w: Option<&WeightMap>,
        wc: Option<&ColorConstraintMap>,
    ) -> KecsDocument {
        let mut allows = BTreeMap::new();
        if let Some(map) = wc {
            let full: BTreeSet<usize> = (1..=map.k()).collect();
            for v in 0..g.vertex_count() {
                if map.allowed(v) != &full {
                    allows.insert(v, map.allowed(v).clone());
                }
            }
        }
        let mut any_weight_given = false;
        let edges = g
            .edges()
            .iter()
            .map(|&e| {
                let weight = match w {
                    Some(map) => map.get(e.0, e.1).clone(),
                    None => BigUint::one(),
                };
                if !weight.is_one() {
                    any_weight_given = true;
                }
                (e, weight)
            })
            .collect();
        KecsDocument {
            vertex_count: g.vertex_count(),
            labels: g.labels().clone(),
            allows,
            edges,
            any_weight_given,
        }
    }

    /// Renders the document; output is byte-deterministic.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph {}\n", self.vertex_count));
        for v in 0..self.vertex_count {
            if let Some(&(x, y)) = self.labels.get(&v) {
                out.push_str(&format!("vertex {v} label {x} {y}\n"));
            }
            if let Some(set) = self.allows.get(&v) {
                let list = if set.is_empty() {
                    "-".to_string()
                } else {
                    set.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                out.push_str(&format!("vertex {v} allow {list}\n"));
            }
        }
        for ((u, v), w) in &self.edges {
            if w.is_one() {
                out.push_str(&format!("edge {u} {v}\n"));
            } else {
                out.push_str(&format!("edge {u} {v} weight {w}\n"));
            }
        }
        out
    }
}

/// Renders a coloring file; records in canonical edge order.
pub fn write_coloring(c: &KEdgeColoring) -> String {
    let mut out = String::new();
    for ((u, v), color) in c.colored_edges() {
        out.push_str(&format!("color {u} {v} {color}\n"));
    }
    out
}

/// Parses a coloring file against a known `k`.
pub fn parse_coloring(text: &str, k: usize) -> Result<KEdgeColoring, Error> {
    let mut coloring = KEdgeColoring::new(k);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens[0] != "color" || tokens.len() != 4 {
            return Err(parse_err(line_no, "expected `color <u> <v> <c>`"));
        }
        let u = parse_usize(tokens[1], line_no, "vertex id")?;
        let v = parse_usize(tokens[2], line_no, "vertex id")?;
        let c = parse_usize(tokens[3], line_no, "color")?;
        if c == 0 || c > k {
            return Err(parse_err(
                line_no,
                format!("color {c} outside 1..={k}"),
            ));
        }
        if u == v {
            return Err(parse_err(line_no, format!("loop edge at vertex {u}")));
        }
        let e = canonical_edge(u, v).expect("loop handled above");
        if coloring.get(e.0, e.1) != 0 {
            return Err(parse_err(
                line_no,
                format!("duplicate color record for edge ({}, {})", e.0, e.1),
            ));
        }
        coloring.set(e.0, e.1, c).expect("range checked above");
    }
    Ok(coloring)
}
