//! Finite multigraphs with loops, open edge ends and bare circle components.
//!
//! A [`TopoGraph`] models a graph-like space with finitely many edges. Every
//! edge is an open unit interval glued along its two ends; an end is either
//! attached to a vertex or left open (the space is then not compact there).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{TopoError, Violation};

macro_rules! id_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

id_newtype!(
    /// Opaque vertex identifier.
    VertexId
);
id_newtype!(
    /// Opaque edge identifier.
    EdgeId
);

/// One end of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Attached(VertexId),
    Open,
}

impl Slot {
    pub fn vertex(&self) -> Option<&VertexId> {
        match self {
            Slot::Attached(v) => Some(v),
            Slot::Open => None,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, Slot::Open)
    }

    pub fn is_at(&self, v: &VertexId) -> bool {
        matches!(self, Slot::Attached(u) if u == v)
    }
}

// JSON shape: `{"v": "<id>"}` for an attached end, the string `"open"` otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SlotRepr {
    Attached { v: VertexId },
    Open(String),
}

impl Serialize for Slot {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Slot::Attached(v) => SlotRepr::Attached { v: v.clone() },
            Slot::Open => SlotRepr::Open("open".to_owned()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Slot {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match SlotRepr::deserialize(deserializer)? {
            SlotRepr::Attached { v } => Ok(Slot::Attached(v)),
            SlotRepr::Open(s) if s == "open" => Ok(Slot::Open),
            SlotRepr::Open(s) => Err(serde::de::Error::custom(format!(
                "expected \"open\" or {{\"v\": id}}, found \"{s}\""
            ))),
        }
    }
}

/// An edge record with exactly two end slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub ends: [Slot; 2],
}

impl Edge {
    pub fn new(id: impl Into<EdgeId>, a: Slot, b: Slot) -> Self {
        Self {
            id: id.into(),
            ends: [a, b],
        }
    }

    pub fn is_loop(&self) -> bool {
        match &self.ends {
            [Slot::Attached(a), Slot::Attached(b)] => a == b,
            _ => false,
        }
    }

    pub fn is_open_arc(&self) -> bool {
        self.ends[0].is_open() && self.ends[1].is_open()
    }

    pub fn is_half_open(&self) -> bool {
        self.ends[0].is_open() != self.ends[1].is_open()
    }

    pub fn open_slots(&self) -> usize {
        self.ends.iter().filter(|s| s.is_open()).count()
    }

    /// Number of slots of this edge attached to `v` (2 for a loop at `v`).
    pub fn slots_at(&self, v: &VertexId) -> usize {
        self.ends.iter().filter(|s| s.is_at(v)).count()
    }
}

/// Reference to one end slot of an edge, written `edge@end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotRef {
    pub edge: EdgeId,
    pub end: u8,
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.edge, self.end)
    }
}

impl std::str::FromStr for SlotRef {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (edge, end) = s
            .rsplit_once('@')
            .ok_or_else(|| TopoError::InvalidPartition(format!("malformed slot reference `{s}`")))?;
        let end = match end {
            "0" => 0,
            "1" => 1,
            _ => {
                return Err(TopoError::InvalidPartition(format!(
                    "slot end must be 0 or 1 in `{s}`"
                )))
            }
        };
        Ok(SlotRef {
            edge: EdgeId::new(edge),
            end,
        })
    }
}

/// The result of [`TopoGraph::subdivide_with_vertex`].
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: TopoGraph,
    /// The fresh degree-2 vertex.
    pub vertex: VertexId,
    /// `halves[i]` inherits end slot `i` of the subdivided edge.
    pub halves: [EdgeId; 2],
}

/// A finite graph-like space: vertices, edges with attached or open ends,
/// and a count of vertexless circle components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopoGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    /// Signed so that malformed input survives parsing and is reported by [`TopoGraph::validate`].
    #[serde(default)]
    pub circles: i64,
}

impl TopoGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `k` disjoint circles and nothing else.
    pub fn circles(k: i64) -> Self {
        Self {
            circles: k,
            ..Self::default()
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>) -> VertexId {
        let id = id.into();
        self.vertices.push(id.clone());
        id
    }

    pub fn add_edge(&mut self, id: impl Into<EdgeId>, a: Slot, b: Slot) -> EdgeId {
        let edge = Edge::new(id, a, b);
        let id = edge.id.clone();
        self.edges.push(edge);
        id
    }

    /// Closed edge between `u` and `v` (a loop when `u == v`).
    pub fn connect(&mut self, id: impl Into<EdgeId>, u: impl Into<VertexId>, v: impl Into<VertexId>) -> EdgeId {
        self.add_edge(id, Slot::Attached(u.into()), Slot::Attached(v.into()))
    }

    pub fn half_open(&mut self, id: impl Into<EdgeId>, u: impl Into<VertexId>) -> EdgeId {
        self.add_edge(id, Slot::Attached(u.into()), Slot::Open)
    }

    pub fn open_arc(&mut self, id: impl Into<EdgeId>) -> EdgeId {
        self.add_edge(id, Slot::Open, Slot::Open)
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.iter().any(|u| u == v)
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn edge_index(&self, id: &EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| &e.id == id)
    }

    /// Count of attached slots at `v`; a loop contributes 2, open slots nothing.
    pub fn degree(&self, v: &VertexId) -> usize {
        self.edges.iter().map(|e| e.slots_at(v)).sum()
    }

    pub fn loops_at(&self, v: &VertexId) -> usize {
        self.edges.iter().filter(|e| e.is_loop() && e.ends[0].is_at(v)).count()
    }

    pub fn open_slot_count(&self) -> usize {
        self.edges.iter().map(Edge::open_slots).sum()
    }

    /// All open slots, in edge order.
    pub fn open_slots(&self) -> Vec<SlotRef> {
        self.edges
            .iter()
            .flat_map(|e| {
                e.ends.iter().enumerate().filter(|(_, s)| s.is_open()).map(|(i, _)| SlotRef {
                    edge: e.id.clone(),
                    end: i as u8,
                })
            })
            .collect()
    }

    /// Returns the first broken invariant, if any.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.circles < 0 {
            return Err(Violation::NegativeCircles(self.circles));
        }
        let mut seen = HashSet::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(Violation::DuplicateVertex(v.clone()));
            }
        }
        let mut seen_edges = HashSet::with_capacity(self.edges.len());
        for e in &self.edges {
            if !seen_edges.insert(&e.id) {
                return Err(Violation::DuplicateEdge(e.id.clone()));
            }
            for v in e.ends.iter().filter_map(Slot::vertex) {
                if !seen.contains(v) {
                    return Err(Violation::DanglingReference {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Compact iff no edge has an open end.
    pub fn is_compact(&self) -> bool {
        self.edges.iter().all(|e| e.open_slots() == 0)
    }

    /// Number of points, or `None` when the space is infinite (any edge or circle).
    pub fn point_count(&self) -> Option<usize> {
        if self.edges.is_empty() && self.circles == 0 {
            Some(self.vertices.len())
        } else {
            None
        }
    }

    pub fn has_at_least_points(&self, n: usize) -> bool {
        self.point_count().is_none_or(|k| k >= n)
    }

    /// A vertex id not yet used, derived from `stem`.
    pub fn fresh_vertex_id(&self, stem: &str) -> VertexId {
        fresh_id(stem, |s| self.vertices.iter().any(|v| v.as_str() == s)).into()
    }

    pub fn fresh_edge_id(&self, stem: &str) -> EdgeId {
        fresh_id(stem, |s| self.edges.iter().any(|e| e.id.as_str() == s)).into()
    }

    /// Replaces edge `e` by two edges through a fresh degree-2 vertex.
    pub fn subdivide(&self, e: &EdgeId) -> Result<TopoGraph, TopoError> {
        self.subdivide_with_vertex(e).map(|s| s.graph)
    }

    pub fn subdivide_with_vertex(&self, e: &EdgeId) -> Result<Subdivision, TopoError> {
        let idx = self.edge_index(e).ok_or_else(|| TopoError::UnknownEdge(e.clone()))?;
        let mut g = self.clone();
        let old = g.edges.remove(idx);
        let x = g.fresh_vertex_id(&format!("{}~", old.id));
        g.vertices.push(x.clone());
        let first = g.fresh_edge_id(&format!("{}.0", old.id));
        g.edges.insert(idx, Edge::new(first.clone(), old.ends[0].clone(), Slot::Attached(x.clone())));
        let second = g.fresh_edge_id(&format!("{}.1", old.id));
        g.edges
            .insert(idx + 1, Edge::new(second.clone(), Slot::Attached(x.clone()), old.ends[1].clone()));
        Ok(Subdivision {
            graph: g,
            vertex: x,
            halves: [first, second],
        })
    }

    /// Connected components. Vertex-carrying components come first (ordered by
    /// their first vertex), then open arcs in edge order, then one graph per circle.
    pub fn components(&self) -> Vec<TopoGraph> {
        let index = |v: &VertexId| self.vertices.iter().position(|u| u == v);
        let mut dsu = Dsu::new(self.vertices.len());
        for e in &self.edges {
            if let [Slot::Attached(a), Slot::Attached(b)] = &e.ends {
                if let (Some(a), Some(b)) = (index(a), index(b)) {
                    dsu.union(a, b);
                }
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comps: Vec<TopoGraph> = Vec::new();
        let mut slot_of = vec![usize::MAX; self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            let r = dsu.find(i);
            let c = match roots.iter().position(|&x| x == r) {
                Some(c) => c,
                None => {
                    roots.push(r);
                    comps.push(TopoGraph::new());
                    comps.len() - 1
                }
            };
            slot_of[i] = c;
            comps[c].vertices.push(v.clone());
        }
        let mut arcs = Vec::new();
        for e in &self.edges {
            match e.ends.iter().find_map(Slot::vertex).and_then(index) {
                Some(i) => comps[slot_of[i]].edges.push(e.clone()),
                None => {
                    let mut arc = TopoGraph::new();
                    arc.edges.push(e.clone());
                    arcs.push(arc);
                }
            }
        }
        comps.extend(arcs);
        comps.extend((0..self.circles.max(0)).map(|_| TopoGraph::circles(1)));
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Renames every identifier; the maps must be injective for the result to stay valid.
    pub fn relabel(
        &self,
        mut vertex: impl FnMut(&VertexId) -> VertexId,
        mut edge: impl FnMut(&EdgeId) -> EdgeId,
    ) -> TopoGraph {
        let mut vmap = std::collections::HashMap::new();
        for v in &self.vertices {
            vmap.insert(v.clone(), vertex(v));
        }
        let slot = |s: &Slot| match s {
            Slot::Attached(v) => Slot::Attached(vmap.get(v).cloned().unwrap_or_else(|| v.clone())),
            Slot::Open => Slot::Open,
        };
        TopoGraph {
            vertices: self.vertices.iter().map(|v| vmap[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(edge(&e.id), slot(&e.ends[0]), slot(&e.ends[1])))
                .collect(),
            circles: self.circles,
        }
    }
}

fn fresh_id(stem: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(stem) {
        return stem.to_owned();
    }
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|s| !taken(s))
        .expect("unbounded id space")
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Small constructors used throughout tests and examples.
pub mod shapes {
    use super::*;

    /// Single closed edge `a–b`: the unit interval.
    pub fn interval() -> TopoGraph {
        let mut g = TopoGraph::new();
        g.add_vertex("a");
        g.add_vertex("b");
        g.connect("e", "a", "b");
        g
    }

    pub fn circle() -> TopoGraph {
        TopoGraph::circles(1)
    }

    /// Triangle on `a`, `b`, `c`.
    pub fn k3() -> TopoGraph {
        let mut g = TopoGraph::new();
        for v in ["a", "b", "c"] {
            g.add_vertex(v);
        }
        g.connect("ab", "a", "b");
        g.connect("bc", "b", "c");
        g.connect("ca", "c", "a");
        g
    }

    /// One vertex `v` with two loops.
    pub fn figure_eight() -> TopoGraph {
        let mut g = TopoGraph::new();
        g.add_vertex("v");
        g.connect("l1", "v", "v");
        g.connect("l2", "v", "v");
        g
    }

    /// Half-open edge at `v`: the ray `[0,1)`.
    pub fn ray() -> TopoGraph {
        let mut g = TopoGraph::new();
        g.add_vertex("v");
        g.half_open("r", "v");
        g
    }

    pub fn open_arc() -> TopoGraph {
        let mut g = TopoGraph::new();
        g.open_arc("o");
        g
    }

    /// Path `a–b–c`.
    pub fn path3() -> TopoGraph {
        let mut g = TopoGraph::new();
        for v in ["a", "b", "c"] {
            g.add_vertex(v);
        }
        g.connect("ab", "a", "b");
        g.connect("bc", "b", "c");
        g
    }

    /// Edges `a–b` and `c–d`.
    pub fn two_edges() -> TopoGraph {
        let mut g = TopoGraph::new();
        for v in ["a", "b", "c", "d"] {
            g.add_vertex(v);
        }
        g.connect("ab", "a", "b");
        g.connect("cd", "c", "d");
        g
    }
}
