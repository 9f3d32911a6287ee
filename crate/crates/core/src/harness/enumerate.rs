//! Exhaustive enumeration of compact graph-like spaces up to homeomorphism.
//!
//! Connected multigraphs (loops allowed) are grown one edge at a time from a
//! single vertex and deduplicated by canonical code at every level; every
//! connected multigraph arises this way because deleting a cycle edge or a
//! leaf edge keeps it connected. The smoothed ones (no degree-2 vertex) are
//! the connected pieces of the universe. Whole spaces are multisets of pieces
//! plus bare circles and isolated points.

use std::collections::{BTreeMap, HashSet};

use crate::canon::{canon, CanonicalForm, IndexedGraph};
use crate::graph::TopoGraph;

use super::{BudgetError, EnumerationBudget};

/// All connected multigraphs with exactly `k` edges for `k = 0..=max_edges`,
/// one per isomorphism class, canonically ordered.
pub(crate) fn connected_multigraphs(max_edges: usize) -> Vec<Vec<IndexedGraph>> {
    let mut levels = vec![vec![IndexedGraph::new(1)]];
    for _ in 0..max_edges {
        let prev = levels.last().expect("level 0 exists");
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut next = Vec::new();
        let mut offer = |g: IndexedGraph| {
            let lab = g.canonical();
            if seen.insert(lab.code) {
                next.push(g.permuted(&lab.order));
            }
        };
        for g in prev {
            for a in 0..g.n {
                for b in a..g.n {
                    let mut h = g.clone();
                    h.add_edge(a, b);
                    offer(h);
                }
                let mut h = with_extra_vertex(g);
                h.add_edge(a, g.n);
                offer(h);
            }
        }
        levels.push(next);
    }
    levels
}

fn with_extra_vertex(g: &IndexedGraph) -> IndexedGraph {
    let mut h = IndexedGraph::new(g.n + 1);
    for a in 0..g.n {
        h.loops[a] = g.loops[a];
        h.open[a] = g.open[a];
        for b in 0..g.n {
            h.mult[a * h.n + b] = g.m(a, b);
        }
    }
    h
}

/// Connected smoothed compact pieces with at least one edge, by edge count.
fn pieces(max_edges: usize) -> Vec<(usize, IndexedGraph)> {
    connected_multigraphs(max_edges)
        .into_iter()
        .enumerate()
        .skip(1)
        .flat_map(|(k, level)| {
            level
                .into_iter()
                .filter(|g| (0..g.n).all(|v| g.degree(v) != 2))
                .map(move |g| (k, g))
        })
        .collect()
}

fn disjoint_union(parts: &[&IndexedGraph], isolated: usize, circles: usize) -> IndexedGraph {
    let n = parts.iter().map(|p| p.n).sum::<usize>() + isolated;
    let mut g = IndexedGraph::new(n);
    let mut offset = 0;
    for p in parts {
        for a in 0..p.n {
            g.loops[offset + a] = p.loops[a];
            for b in 0..p.n {
                g.mult[(offset + a) * n + offset + b] = p.m(a, b);
            }
        }
        offset += p.n;
    }
    g.circles = circles as u64;
    g
}

/// Multisets of piece indices (non-decreasing) with total edge count at most `budget`.
fn piece_multisets(pieces: &[(usize, IndexedGraph)], budget: usize) -> Vec<Vec<usize>> {
    fn go(
        pieces: &[(usize, IndexedGraph)],
        start: usize,
        budget: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        for i in start..pieces.len() {
            let cost = pieces[i].0;
            if cost <= budget {
                current.push(i);
                go(pieces, i, budget - cost, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(pieces, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// One canonical representative per homeomorphism class within `budget`,
/// in increasing certificate order.
///
/// Edges count against `max_edges`. Bare circles and isolated points cost no
/// edges; each kind is capped at `max_edges` separately.
pub fn enumerate_canonical(budget: &EnumerationBudget) -> Result<Vec<CanonicalForm>, BudgetError> {
    budget.validate()?;
    let max = budget.max_edges;
    let pieces = pieces(max);
    let mut spaces: Vec<IndexedGraph> = Vec::new();
    if budget.connected_only {
        spaces.extend(pieces.iter().map(|(_, p)| p.clone()));
        spaces.push(disjoint_union(&[], 0, 1));
        spaces.push(disjoint_union(&[], 1, 0));
    } else {
        for combo in piece_multisets(&pieces, max) {
            let parts: Vec<&IndexedGraph> = combo.iter().map(|&i| &pieces[i].1).collect();
            for circles in 0..=max {
                for isolated in 0..=max {
                    spaces.push(disjoint_union(&parts, isolated, circles));
                }
            }
        }
    }
    let mut by_cert = BTreeMap::new();
    for g in spaces {
        let topo = g.to_topo();
        if !topo.has_at_least_points(budget.min_points) {
            continue;
        }
        let cf = canon(&topo);
        by_cert.entry(cf.certificate.clone()).or_insert(cf);
    }
    Ok(by_cert.into_values().collect())
}

/// Every compact multigraph with at most `max_edges` edges, one per
/// isomorphism class (not homeomorphism class: degree-2 vertices are kept).
///
/// With `connected_only` these are the connected multigraphs with at least one
/// edge. Otherwise they are all multisets of those, optionally joined by one
/// isolated vertex and one bare circle.
pub fn enumerate_multigraphs(max_edges: usize, connected_only: bool) -> Vec<TopoGraph> {
    let pieces: Vec<(usize, IndexedGraph)> = connected_multigraphs(max_edges)
        .into_iter()
        .enumerate()
        .skip(1)
        .flat_map(|(k, level)| level.into_iter().map(move |g| (k, g)))
        .collect();
    if connected_only {
        return pieces.iter().map(|(_, g)| g.to_topo()).collect();
    }
    let mut out = Vec::new();
    for combo in piece_multisets(&pieces, max_edges) {
        let parts: Vec<&IndexedGraph> = combo.iter().map(|&i| &pieces[i].1).collect();
        for circles in 0..=1 {
            for isolated in 0..=1 {
                if !parts.is_empty() || circles + isolated > 0 {
                    out.push(disjoint_union(&parts, isolated, circles).to_topo());
                }
            }
        }
    }
    out
}
