//! Suppression of degree-2 vertices.
//!
//! A degree-2 vertex is an interior point of an arc or a circle, so deleting it
//! and splicing its edges does not change the space. Applied to a fixpoint the
//! rules give a normal form in which every vertex has degree 0, 1 or at least 3.

use crate::graph::{Edge, TopoGraph, VertexId};

/// Suppresses degree-2 vertices until none remain. Candidates are taken in
/// vertex-list order; the result does not depend on that order up to isomorphism.
pub fn smooth(g: &TopoGraph) -> TopoGraph {
    let mut g = g.clone();
    while let Some(pos) = g.vertices.iter().position(|v| g.degree(v) == 2) {
        let v = g.vertices.remove(pos);
        suppress(&mut g, &v);
    }
    g
}

pub fn is_smooth(g: &TopoGraph) -> bool {
    g.vertices.iter().all(|v| g.degree(v) != 2)
}

// `v` has already been removed from the vertex list and has degree 2.
fn suppress(g: &mut TopoGraph, v: &VertexId) {
    let incident: Vec<(usize, usize)> = g
        .edges
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            e.ends
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_at(v))
                .map(move |(k, _)| (i, k))
        })
        .collect();
    debug_assert_eq!(incident.len(), 2);
    let (e1, k1) = incident[0];
    let (e2, k2) = incident[1];
    if e1 == e2 {
        // The only slots are both ends of a loop.
        g.edges.remove(e1);
        g.circles += 1;
        return;
    }
    let far1 = g.edges[e1].ends[1 - k1].clone();
    let far2 = g.edges[e2].ends[1 - k2].clone();
    let id = g.edges[e1].id.clone();
    g.edges[e1] = Edge::new(id, far1, far2);
    g.edges.remove(e2);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::shapes::*;
    use crate::graph::Slot;

    #[test]
    fn path_smooths_to_single_edge() {
        let s = smooth(&path3());
        assert_eq!(s.vertices, vec![VertexId::from("a"), VertexId::from("c")]);
        assert_eq!(s.edges.len(), 1);
        assert_eq!(s.edges[0].ends, [Slot::Attached("a".into()), Slot::Attached("c".into())]);
    }

    #[test]
    fn triangle_smooths_to_bare_circle() {
        let s = smooth(&k3());
        assert!(s.vertices.is_empty());
        assert!(s.edges.is_empty());
        assert_eq!(s.circles, 1);
    }

    #[test]
    fn ray_is_already_smooth() {
        let g = ray();
        assert_eq!(smooth(&g), g);
    }

    #[test]
    fn degree_two_between_open_ends_gives_open_arc() {
        let mut g = TopoGraph::new();
        g.add_vertex("x");
        g.half_open("p", "x");
        g.half_open("q", "x");
        let s = smooth(&g);
        assert!(s.vertices.is_empty());
        assert_eq!(s.edges.len(), 1);
        assert!(s.edges[0].is_open_arc());
    }

    #[test]
    fn figure_eight_is_smooth_and_bigon_is_circle() {
        assert!(is_smooth(&figure_eight()));
        let mut g = TopoGraph::new();
        g.add_vertex("u");
        g.add_vertex("v");
        g.connect("p", "u", "v");
        g.connect("q", "u", "v");
        assert_eq!(smooth(&g), TopoGraph::circles(1));
    }

    #[test]
    fn isolated_and_leaf_vertices_survive() {
        let mut g = interval();
        g.add_vertex("iso");
        assert_eq!(smooth(&g), g);
    }

    #[test]
    fn idempotent_on_examples() {
        for g in [path3(), k3(), figure_eight(), ray(), two_edges()] {
            let once = smooth(&g);
            assert_eq!(smooth(&once), once);
        }
    }
}
