//! Canonical forms and certificates.
//!
//! A graph is smoothed, split into connected components, and each component
//! is labeled by color refinement with individualization on the first
//! non-trivial cell. The lexicographically least encoding over all leaves of
//! the search tree is the component's code; swapping twin vertices is an
//! automorphism, so only one vertex per twin class is individualized.
//! Components are ordered by code and the certificate is printed from the
//! resulting global labeling.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Slot, TopoGraph, VertexId};
use crate::smooth::smooth;

/// Format tag leading every certificate. Bump when the encoding changes.
pub const CERTIFICATE_VERSION: &str = "td1";

/// Deterministic single-line encoding of a homeomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Certificate(String);

impl Certificate {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Wraps an existing certificate string, e.g. one read back from a cache.
    pub fn from_raw(s: impl Into<String>) -> Self {
        Self(s.into())
    }

    /// Rebuilds the canonical graph named by this certificate.
    pub fn decode(&self) -> Option<TopoGraph> {
        let mut fields = self.0.split(';');
        if fields.next()? != CERTIFICATE_VERSION {
            return None;
        }
        let mut field = |key: &str| fields.next()?.strip_prefix(key)?.strip_prefix('=');
        let n: usize = field("v")?.parse().ok()?;
        let circles: u64 = field("c")?.parse().ok()?;
        let arcs: u32 = field("a")?.parse().ok()?;
        let open = field("o")?;
        let edges = field("e")?;
        let mut g = IndexedGraph::new(n);
        g.circles = circles;
        g.arcs = arcs;
        if n > 0 {
            let counts: Vec<u32> = open.split(',').map(str::parse).collect::<Result<_, _>>().ok()?;
            if counts.len() != n {
                return None;
            }
            g.open = counts;
        } else if !open.is_empty() {
            return None;
        }
        for pair in edges.split(',').filter(|s| !s.is_empty()) {
            let (a, b) = pair.split_once('-')?;
            let (a, b): (usize, usize) = (a.parse().ok()?, b.parse().ok()?);
            if a >= n || b >= n {
                return None;
            }
            g.add_edge(a, b);
        }
        Some(g.to_topo())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A smoothed, canonically labeled representative together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub graph: TopoGraph,
    pub certificate: Certificate,
}

/// Canonical form of `g`. `g` must satisfy [`TopoGraph::validate`].
pub fn canon(g: &TopoGraph) -> CanonicalForm {
    debug_assert_eq!(g.validate(), Ok(()));
    let smoothed = smooth(g);
    let indexed = IndexedGraph::from_topo(&smoothed);
    let labeling = indexed.canonical();
    let relabeled = indexed.permuted(&labeling.order);
    CanonicalForm {
        certificate: relabeled.certificate(),
        graph: relabeled.to_topo(),
    }
}

pub fn certificate(g: &TopoGraph) -> Certificate {
    canon(g).certificate
}

/// True iff the two spaces are homeomorphic.
pub fn is_homeomorphic(g: &TopoGraph, h: &TopoGraph) -> bool {
    canon(g).certificate == canon(h).certificate
}

/// Index-based multigraph used for labeling. Half-open edges are tallied per
/// vertex, open arcs and circles are bare counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IndexedGraph {
    pub n: usize,
    pub loops: Vec<u32>,
    pub open: Vec<u32>,
    /// Row-major `n * n`, symmetric, zero diagonal.
    pub mult: Vec<u32>,
    pub arcs: u32,
    pub circles: u64,
}

pub(crate) struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    pub code: Vec<u32>,
}

impl IndexedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            loops: vec![0; n],
            open: vec![0; n],
            mult: vec![0; n * n],
            arcs: 0,
            circles: 0,
        }
    }

    pub fn from_topo(g: &TopoGraph) -> Self {
        let index: HashMap<&VertexId, usize> =
            g.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut ig = Self::new(g.vertices.len());
        ig.circles = g.circles.max(0) as u64;
        for e in &g.edges {
            match (&e.ends[0], &e.ends[1]) {
                (Slot::Open, Slot::Open) => ig.arcs += 1,
                (Slot::Attached(v), Slot::Open) | (Slot::Open, Slot::Attached(v)) => {
                    ig.open[index[v]] += 1
                }
                (Slot::Attached(a), Slot::Attached(b)) => ig.add_edge(index[a], index[b]),
            }
        }
        ig
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b {
            self.loops[a] += 1;
        } else {
            self.mult[a * self.n + b] += 1;
            self.mult[b * self.n + a] += 1;
        }
    }

    #[inline]
    pub fn m(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.n + b]
    }

    pub fn degree(&self, v: usize) -> u32 {
        2 * self.loops[v] + self.open[v] + (0..self.n).map(|w| self.m(v, w)).sum::<u32>()
    }

    /// Vertex components, each listed in increasing index order.
    pub fn vertex_components(&self) -> Vec<Vec<usize>> {
        let mut dsu = crate::graph::Dsu::new(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.m(a, b) > 0 {
                    dsu.union(a, b);
                }
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for v in 0..self.n {
            let r = dsu.find(v);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, members)) => members.push(v),
                None => groups.push((r, vec![v])),
            }
        }
        groups.into_iter().map(|(_, m)| m).collect()
    }

    fn induced(&self, verts: &[usize]) -> IndexedGraph {
        let mut sub = IndexedGraph::new(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            sub.loops[i] = self.loops[a];
            sub.open[i] = self.open[a];
            for (j, &b) in verts.iter().enumerate() {
                sub.mult[i * sub.n + j] = self.m(a, b);
            }
        }
        sub
    }

    /// Canonical vertex order and the code of the whole graph.
    pub fn canonical(&self) -> Labeling {
        let mut comps: Vec<(Vec<u32>, Vec<usize>)> = self
            .vertex_components()
            .into_iter()
            .map(|verts| {
                let sub = self.induced(&verts);
                let (code, local) = sub.connected_canonical();
                (code, local.into_iter().map(|i| verts[i]).collect())
            })
            .collect();
        comps.sort();
        let mut code = vec![self.circles as u32, self.arcs, comps.len() as u32];
        let mut order = Vec::with_capacity(self.n);
        for (c, o) in comps {
            code.extend(c);
            order.extend(o);
        }
        Labeling { order, code }
    }

    /// Graph with vertex `order[i]` moved to position `i`.
    pub fn permuted(&self, order: &[usize]) -> IndexedGraph {
        let mut g = self.induced(order);
        g.arcs = self.arcs;
        g.circles = self.circles;
        g
    }

    fn encode(&self, order: &[usize]) -> Vec<u32> {
        let k = order.len();
        let mut code = Vec::with_capacity(1 + 2 * k + k * k.saturating_sub(1) / 2);
        code.push(k as u32);
        code.extend(order.iter().map(|&v| self.loops[v]));
        code.extend(order.iter().map(|&v| self.open[v]));
        for i in 0..k {
            for j in i + 1..k {
                code.push(self.m(order[i], order[j]));
            }
        }
        code
    }

    fn connected_canonical(&self) -> (Vec<u32>, Vec<usize>) {
        let initial: Vec<(u32, u32, u32)> =
            (0..self.n).map(|v| (self.degree(v), self.loops[v], self.open[v])).collect();
        let mut colors = rank(&initial);
        self.refine(&mut colors);
        let mut best = None;
        self.search(colors, &mut best);
        let (code, order) = best.expect("search visits at least one leaf");
        (code, order)
    }

    fn refine(&self, colors: &mut Vec<u32>) {
        let mut classes = count_classes(colors);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut nbrs: Vec<(u32, u32)> = (0..self.n)
                        .filter(|&w| w != v && self.m(v, w) > 0)
                        .map(|w| (colors[w], self.m(v, w)))
                        .collect();
                    nbrs.sort_unstable();
                    (colors[v], nbrs)
                })
                .collect();
            let next = rank(&sigs);
            let next_classes = count_classes(&next);
            *colors = next;
            if next_classes == classes {
                return;
            }
            classes = next_classes;
        }
    }

    fn search(&self, mut colors: Vec<u32>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
        self.refine(&mut colors);
        let Some(target) = first_nontrivial_cell(&colors) else {
            let mut order: Vec<usize> = (0..self.n).collect();
            order.sort_by_key(|&v| colors[v]);
            let code = self.encode(&order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in (0..self.n).filter(|&v| colors[v] == target) {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let split: Vec<(u32, bool)> = (0..self.n).map(|u| (colors[u], u != v)).collect();
            self.search(rank(&split), best);
        }
    }

    /// `u` and `v` are interchangeable: transposing them is an automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        self.loops[u] == self.loops[v]
            && self.open[u] == self.open[v]
            && (0..self.n)
                .filter(|&w| w != u && w != v)
                .all(|w| self.m(u, w) == self.m(v, w))
    }

    /// Certificate of this (already canonically ordered) graph.
    pub fn certificate(&self) -> Certificate {
        use std::fmt::Write;
        let mut s = String::new();
        write!(
            s,
            "{CERTIFICATE_VERSION};v={};c={};a={};o=",
            self.n, self.circles, self.arcs
        )
        .unwrap();
        for (i, o) in self.open.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{o}").unwrap();
        }
        s.push_str(";e=");
        let mut first = true;
        for a in 0..self.n {
            for b in a..self.n {
                let count = if a == b { self.loops[a] } else { self.m(a, b) };
                for _ in 0..count {
                    if !first {
                        s.push(',');
                    }
                    first = false;
                    write!(s, "{a}-{b}").unwrap();
                }
            }
        }
        Certificate(s)
    }

    pub fn to_topo(&self) -> TopoGraph {
        let vid = |i: usize| VertexId::new(format!("v{i}"));
        let mut g = TopoGraph::new();
        for i in 0..self.n {
            g.add_vertex(vid(i));
        }
        let mut next = 0usize;
        let mut fresh = || {
            next += 1;
            format!("e{}", next - 1)
        };
        for a in 0..self.n {
            for b in a..self.n {
                let count = if a == b { self.loops[a] } else { self.m(a, b) };
                for _ in 0..count {
                    g.connect(fresh(), vid(a), vid(b));
                }
            }
        }
        for a in 0..self.n {
            for _ in 0..self.open[a] {
                g.half_open(fresh(), vid(a));
            }
        }
        for _ in 0..self.arcs {
            g.open_arc(fresh());
        }
        g.circles = self.circles as i64;
        g
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn first_nontrivial_cell(colors: &[u32]) -> Option<u32> {
    let mut counts = vec![0u32; count_classes(colors)];
    for &c in colors {
        counts[c as usize] += 1;
    }
    counts.iter().position(|&n| n > 1).map(|c| c as u32)
}
