//! Point deletion, decks and two-point quotients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canon, Certificate};
use crate::error::TopoError;
use crate::graph::{Edge, EdgeId, Slot, TopoGraph, VertexId};

/// A point of the space, up to homeomorphisms of the ambient space that
/// preserve the cell structure. All interior points of one edge are one class;
/// `Circle(k)` is any point on the `k`-th bare circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointClass {
    Vertex(VertexId),
    EdgeInterior(EdgeId),
    Circle(u32),
}

impl PointClass {
    pub fn check(&self, g: &TopoGraph) -> Result<(), TopoError> {
        let ok = match self {
            PointClass::Vertex(v) => g.has_vertex(v),
            PointClass::EdgeInterior(e) => g.edge(e).is_some(),
            PointClass::Circle(k) => i64::from(*k) < g.circles,
        };
        if ok {
            Ok(())
        } else {
            Err(TopoError::InvalidPoint(format!("`{self}` does not exist in the graph")))
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::Vertex(v) => write!(f, "v:{v}"),
            PointClass::EdgeInterior(e) => write!(f, "e:{e}"),
            PointClass::Circle(k) => write!(f, "c:{k}"),
        }
    }
}

impl FromStr for PointClass {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TopoError::InvalidPoint(format!("`{s}` is not one of v:<id>, e:<id>, c:<k>"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        if rest.is_empty() {
            return Err(bad());
        }
        match kind {
            "v" => Ok(PointClass::Vertex(rest.into())),
            "e" => Ok(PointClass::EdgeInterior(rest.into())),
            "c" => rest.parse().map(PointClass::Circle).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl Serialize for PointClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every point class of `g`: vertices, edges, then one per circle.
pub fn point_classes(g: &TopoGraph) -> Vec<PointClass> {
    g.vertices
        .iter()
        .cloned()
        .map(PointClass::Vertex)
        .chain(g.edges.iter().map(|e| PointClass::EdgeInterior(e.id.clone())))
        .chain((0..g.circles.max(0) as u32).map(PointClass::Circle))
        .collect()
}

/// The card `g ∖ {p}`.
pub fn remove_point(g: &TopoGraph, p: &PointClass) -> Result<TopoGraph, TopoError> {
    p.check(g)?;
    let mut out = g.clone();
    match p {
        PointClass::Vertex(v) => {
            out.vertices.retain(|u| u != v);
            for e in &mut out.edges {
                for s in &mut e.ends {
                    if s.is_at(v) {
                        *s = Slot::Open;
                    }
                }
            }
        }
        PointClass::EdgeInterior(id) => {
            let idx = out.edge_index(id).expect("checked above");
            let old = out.edges.remove(idx);
            let first = out.fresh_edge_id(&format!("{id}.0"));
            out.edges.insert(idx, Edge::new(first, old.ends[0].clone(), Slot::Open));
            let second = out.fresh_edge_id(&format!("{id}.1"));
            out.edges.insert(idx + 1, Edge::new(second, Slot::Open, old.ends[1].clone()));
        }
        PointClass::Circle(_) => {
            out.circles -= 1;
            let id = out.fresh_edge_id("arc");
            out.open_arc(id);
        }
    }
    Ok(out)
}

/// The set of cards of a compact host, plus which point produced which card.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deck {
    pub cards: BTreeSet<Certificate>,
    pub labeled_cards: BTreeMap<PointClass, Certificate>,
}

impl Deck {
    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }
}

/// Computes the deck of a compact space with at least three points.
pub fn deck(g: &TopoGraph) -> Result<Deck, TopoError> {
    g.validate()?;
    if !g.is_compact() {
        return Err(TopoError::NonCompact);
    }
    if let Some(n) = g.point_count().filter(|&n| n < 3) {
        return Err(TopoError::TooFewPoints(n));
    }
    let mut labeled_cards = BTreeMap::new();
    for p in point_classes(g) {
        let card = remove_point(g, &p)?;
        labeled_cards.insert(p, canon(&card).certificate);
    }
    Ok(Deck {
        cards: labeled_cards.values().cloned().collect(),
        labeled_cards,
    })
}

/// Turns `p` into a vertex without changing the space.
fn materialize(g: &mut TopoGraph, p: &PointClass) -> VertexId {
    match p {
        PointClass::Vertex(v) => v.clone(),
        PointClass::EdgeInterior(e) => {
            let s = g.subdivide_with_vertex(e).expect("point validated");
            *g = s.graph;
            s.vertex
        }
        PointClass::Circle(_) => {
            // Circles are interchangeable, so any remaining one will do.
            g.circles -= 1;
            let x = g.fresh_vertex_id("o");
            g.vertices.push(x.clone());
            let id = g.fresh_edge_id("ring");
            g.connect(id, x.clone(), x.clone());
            x
        }
    }
}

/// The quotient identifying the points `p` and `q`; returns it with the merged vertex.
pub fn collapse(
    g: &TopoGraph,
    p: &PointClass,
    q: &PointClass,
) -> Result<(TopoGraph, VertexId), TopoError> {
    if p == q {
        return Err(TopoError::SamePoint);
    }
    p.check(g)?;
    q.check(g)?;
    let mut out = g.clone();
    let a = materialize(&mut out, p);
    let b = materialize(&mut out, q);
    let merged = out.fresh_vertex_id("m");
    out.vertices.retain(|v| v != &a && v != &b);
    out.vertices.push(merged.clone());
    for e in &mut out.edges {
        for s in &mut e.ends {
            if s.is_at(&a) || s.is_at(&b) {
                *s = Slot::Attached(merged.clone());
            }
        }
    }
    Ok((out, merged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{certificate, is_homeomorphic};
    use crate::graph::shapes::*;

    fn vp(s: &str) -> PointClass {
        PointClass::Vertex(s.into())
    }

    fn ep(s: &str) -> PointClass {
        PointClass::EdgeInterior(s.into())
    }

    #[test]
    fn interval_endpoint_card_is_ray() {
        let card = remove_point(&interval(), &vp("a")).unwrap();
        assert!(is_homeomorphic(&card, &ray()));
    }

    #[test]
    fn interval_interior_card_is_two_rays() {
        let card = remove_point(&interval(), &ep("e")).unwrap();
        let mut two = TopoGraph::new();
        two.add_vertex("x");
        two.add_vertex("y");
        two.half_open("p", "x");
        two.half_open("q", "y");
        assert!(is_homeomorphic(&card, &two));
    }

    #[test]
    fn circle_card_is_open_arc() {
        let card = remove_point(&circle(), &PointClass::Circle(0)).unwrap();
        assert!(is_homeomorphic(&card, &open_arc()));
    }

    #[test]
    fn deleting_loop_vertex_leaves_open_arcs() {
        let card = remove_point(&figure_eight(), &vp("v")).unwrap();
        assert_eq!(card.edges.iter().filter(|e| e.is_open_arc()).count(), 2);
        let loop_cut = remove_point(&figure_eight(), &ep("l1")).unwrap();
        assert_eq!(loop_cut.degree(&"v".into()), 4);
        assert_eq!(loop_cut.open_slot_count(), 2);
    }

    #[test]
    fn deleting_inside_open_arc_gives_two_open_arcs() {
        let card = remove_point(&open_arc(), &ep("o")).unwrap();
        assert_eq!(card.edges.len(), 2);
        assert!(card.edges.iter().all(Edge::is_open_arc));
    }

    #[test]
    fn invalid_points_are_rejected() {
        assert!(matches!(remove_point(&interval(), &vp("zz")), Err(TopoError::InvalidPoint(_))));
        assert!(matches!(
            remove_point(&interval(), &PointClass::Circle(0)),
            Err(TopoError::InvalidPoint(_))
        ));
    }

    #[test]
    fn interval_deck_has_two_cards() {
        let d = deck(&interval()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.labeled_cards.len(), 3);
    }

    #[test]
    fn circle_and_triangle_decks_agree() {
        let c = deck(&circle()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.cards, deck(&k3()).unwrap().cards);
        assert_eq!(c.cards.iter().next().unwrap(), &certificate(&open_arc()));
    }

    #[test]
    fn deck_preconditions() {
        assert_eq!(deck(&ray()), Err(TopoError::NonCompact));
        let mut pts = TopoGraph::new();
        pts.add_vertex("a");
        pts.add_vertex("b");
        assert_eq!(deck(&pts), Err(TopoError::TooFewPoints(2)));
        pts.add_vertex("c");
        assert_eq!(deck(&pts).unwrap().len(), 1);
    }

    #[test]
    fn isolated_vertex_card_is_compact() {
        let mut g = interval();
        g.add_vertex("iso");
        assert!(remove_point(&g, &vp("iso")).unwrap().is_compact());
    }

    #[test]
    fn collapse_interval_endpoints_gives_circle() {
        let (q, m) = collapse(&interval(), &vp("a"), &vp("b")).unwrap();
        assert_eq!(q.validate(), Ok(()));
        assert_eq!(q.loops_at(&m), 1);
        assert!(is_homeomorphic(&q, &circle()));
    }

    #[test]
    fn collapse_two_edge_interiors() {
        let (q, m) = collapse(&two_edges(), &ep("ab"), &ep("cd")).unwrap();
        assert_eq!(q.degree(&m), 4);
        assert_eq!(q.edges.len(), 4);
        for far in ["a", "b", "c", "d"] {
            assert_eq!(q.degree(&far.into()), 1);
        }
    }

    #[test]
    fn collapse_along_subdivided_chain() {
        // a–x–b, identify a and x: a loop through the merged vertex plus a pendant to b.
        let s = interval().subdivide_with_vertex(&"e".into()).unwrap();
        let (q, m) = collapse(&s.graph, &vp("a"), &PointClass::Vertex(s.vertex.clone())).unwrap();
        assert_eq!(q.loops_at(&m), 1);
        assert_eq!(q.degree(&m), 3);
        assert_eq!(q.degree(&"b".into()), 1);
    }

    #[test]
    fn collapse_two_circles_gives_figure_eight() {
        let g = TopoGraph::circles(2);
        let (q, _) = collapse(&g, &PointClass::Circle(0), &PointClass::Circle(1)).unwrap();
        assert!(is_homeomorphic(&q, &figure_eight()));
        assert_eq!(collapse(&g, &PointClass::Circle(1), &PointClass::Circle(1)), Err(TopoError::SamePoint));
    }

    #[test]
    fn point_class_text_round_trip() {
        for s in ["v:a", "e:x.1", "c:3"] {
            assert_eq!(s.parse::<PointClass>().unwrap().to_string(), s);
        }
        for bad in ["x:a", "v:", "c:-1", "nocolon"] {
            assert!(bad.parse::<PointClass>().is_err(), "{bad}");
        }
    }
}
