use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::NodeType;
use crate::error::{Error, Result};
use crate::hypergraph::check_id;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub label: String,
}

/// A Geography instance `(N, A, s)` with labelled arcs.
///
/// Construction checks structure only (endpoints exist, labels unique, no
/// self-loops or parallel arcs); the degree and bipartiteness profile is the
/// job of [`super::validate_geo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoInstance {
    nodes: Vec<String>,
    arcs: Vec<Arc>,
    start: usize,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl GeoInstance {
    /// `arcs` are `(tail, head, label)`; missing labels become `a0`, `a1`, ...
    /// in input order, skipping labels already in use.
    pub fn new<S: AsRef<str>>(nodes: &[S], arcs: &[(S, S, Option<S>)], start: &str) -> Result<Self> {
        let invalid = |msg: String| Error::InvalidInstance(msg);
        let mut index = BTreeMap::new();
        let mut names = Vec::new();
        for n in nodes {
            let n = n.as_ref();
            check_id(n)?;
            if index.insert(n.to_string(), names.len()).is_some() {
                return Err(invalid(format!("duplicate node {n:?}")));
            }
            names.push(n.to_string());
        }
        let lookup = |n: &str| index.get(n).copied().ok_or_else(|| invalid(format!("unknown node {n:?}")));
        let start = lookup(start)?;

        let mut used: BTreeSet<String> = BTreeSet::new();
        for (_, _, l) in arcs {
            if let Some(l) = l {
                let l = l.as_ref();
                check_id(l)?;
                if !used.insert(l.to_string()) {
                    return Err(invalid(format!("duplicate arc label {l:?}")));
                }
            }
        }
        let mut next_auto = 0;
        let mut resolved = Vec::with_capacity(arcs.len());
        let mut endpoints = BTreeSet::new();
        for (t, h, l) in arcs {
            let (tail, head) = (lookup(t.as_ref())?, lookup(h.as_ref())?);
            if tail == head {
                return Err(invalid(format!("self-loop at {:?}", t.as_ref())));
            }
            if !endpoints.insert((tail, head)) {
                return Err(invalid(format!("parallel arcs {:?} -> {:?}", t.as_ref(), h.as_ref())));
            }
            let label = match l {
                Some(l) => l.as_ref().to_string(),
                None => loop {
                    let candidate = format!("a{next_auto}");
                    next_auto += 1;
                    if used.insert(candidate.clone()) {
                        break candidate;
                    }
                },
            };
            resolved.push(Arc { tail, head, label });
        }

        let mut out_arcs = vec![Vec::new(); names.len()];
        let mut in_arcs = vec![Vec::new(); names.len()];
        for (i, a) in resolved.iter().enumerate() {
            out_arcs[a.tail].push(i);
            in_arcs[a.head].push(i);
        }
        for list in out_arcs.iter_mut().chain(in_arcs.iter_mut()) {
            list.sort_by(|&a, &b| resolved[a].label.cmp(&resolved[b].label));
        }
        Ok(GeoInstance { nodes: names, arcs: resolved, start, out_arcs, in_arcs })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.nodes[v]
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> &Arc {
        &self.arcs[i]
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.label == label)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Out-arcs of `v`, ordered by label.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    /// In-arcs of `v`, ordered by label.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    pub fn to_json(&self) -> GeoJson {
        GeoJson {
            nodes: self.nodes.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcJson {
                    tail: self.nodes[a.tail].clone(),
                    head: self.nodes[a.head].clone(),
                    label: Some(a.label.clone()),
                })
                .collect(),
            start: self.nodes[self.start].clone(),
        }
    }

    pub fn from_json(json: &GeoJson) -> Result<Self> {
        let arcs: Vec<(&str, &str, Option<&str>)> = json
            .arcs
            .iter()
            .map(|a| (a.tail.as_str(), a.head.as_str(), a.label.as_deref()))
            .collect();
        let nodes: Vec<&str> = json.nodes.iter().map(String::as_str).collect();
        Self::new(&nodes, &arcs, &json.start)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("geography serialization is infallible")
    }

    /// Graphviz rendering. With `types`, B-nodes are drawn as boxes and
    /// M-nodes as ellipses, each labelled with its class.
    pub fn to_dot(&self, types: Option<&[NodeType]>) -> String {
        let mut out = String::from("digraph geography {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let (shape, label) = match types {
                Some(t) => (
                    if t[i].is_breaker() { "box" } else { "ellipse" },
                    format!("{n}\\n{}", t[i]),
                ),
                None => ("ellipse", n.clone()),
            };
            let peripheries = if i == self.start { 2 } else { 1 };
            let _ = writeln!(out, "  \"{n}\" [shape={shape}, peripheries={peripheries}, label=\"{label}\"];");
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.nodes[a.tail], self.nodes[a.head], a.label
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Wire format: `{"nodes":[...],"arcs":[{"tail":..,"head":..,"label":..}],"start":..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoJson {
    pub nodes: Vec<String>,
    pub arcs: Vec<ArcJson>,
    pub start: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub tail: String,
    pub head: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}
