//! Ends, the local end invariant `E(x)`, finite compactifications and N-stars.
//!
//! For a graph with finitely many edges every open end slot is one end, the
//! Freudenthal compactification adds one point per end, and it is the maximal
//! finite compactification. `E(x, D)` is the number of ends of `D ∖ {x}` for a
//! compact neighbourhood `D` of `x`; it does not depend on the choice of `D`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::is_homeomorphic;
use crate::error::TopoError;
use crate::graph::{Edge, EdgeId, Slot, SlotRef, TopoGraph, VertexId};
use crate::surgery::{collapse, remove_point, PointClass};

/// A value of `E(x)`: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EStarValue {
    Finite(u32),
    Infinite,
}

impl EStarValue {
    pub fn finite(self) -> Option<u32> {
        match self {
            EStarValue::Finite(n) => Some(n),
            EStarValue::Infinite => None,
        }
    }

    pub fn is_isolated(self) -> bool {
        self == EStarValue::Finite(0)
    }
}

impl std::ops::Add for EStarValue {
    type Output = EStarValue;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (EStarValue::Finite(a), EStarValue::Finite(b)) => EStarValue::Finite(a + b),
            _ => EStarValue::Infinite,
        }
    }
}

impl fmt::Display for EStarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EStarValue::Finite(n) => write!(f, "{n}"),
            EStarValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Number of open end slots: one per half-open edge, two per open arc.
pub fn end_count(g: &TopoGraph) -> usize {
    g.open_slot_count()
}

/// Compact neighbourhood of `p`: one arm of `arm_segments` edges per attached
/// slot at `p` (two arms for an edge-interior or circle point). Returns the
/// neighbourhood and the vertex standing for `p`.
pub fn closed_star(
    g: &TopoGraph,
    p: &PointClass,
    arm_segments: usize,
) -> Result<(TopoGraph, VertexId), TopoError> {
    p.check(g)?;
    assert!(arm_segments >= 1, "arms need at least one segment");
    let mut star = TopoGraph::new();
    let (center, arms) = match p {
        PointClass::Vertex(v) => (v.clone(), g.degree(v)),
        _ => (VertexId::new("p"), 2),
    };
    star.vertices.push(center.clone());
    for arm in 0..arms {
        let mut prev = center.clone();
        for seg in 0..arm_segments {
            let next = star.fresh_vertex_id(&format!("t{arm}.{seg}"));
            star.vertices.push(next.clone());
            let id = star.fresh_edge_id(&format!("s{arm}.{seg}"));
            star.connect(id, prev, next.clone());
            prev = next;
        }
    }
    Ok((star, center))
}

/// `E(x, D)`: ends of `D ∖ {center}` for a compact neighbourhood `D`.
pub fn local_ends(d: &TopoGraph, center: &VertexId) -> Result<EStarValue, TopoError> {
    if !d.is_compact() {
        return Err(TopoError::NonCompact);
    }
    let card = remove_point(d, &PointClass::Vertex(center.clone()))?;
    Ok(EStarValue::Finite(end_count(&card) as u32))
}

/// `E(p)` computed from the closed star of `p`.
pub fn estar(g: &TopoGraph, p: &PointClass) -> Result<EStarValue, TopoError> {
    estar_with_arms(g, p, 1)
}

/// `E(p)` computed from a closed star whose arms have `arm_segments` edges.
pub fn estar_with_arms(
    g: &TopoGraph,
    p: &PointClass,
    arm_segments: usize,
) -> Result<EStarValue, TopoError> {
    let (star, center) = closed_star(g, p, arm_segments)?;
    local_ends(&star, &center)
}

/// Degree of a vertex (loops twice); 2 for points inside edges and circles.
pub fn estar_closed_form(g: &TopoGraph, p: &PointClass) -> Result<EStarValue, TopoError> {
    p.check(g)?;
    Ok(EStarValue::Finite(match p {
        PointClass::Vertex(v) => g.degree(v) as u32,
        PointClass::EdgeInterior(_) | PointClass::Circle(_) => 2,
    }))
}

/// `E` at the point obtained by identifying `p` and `q` is `E(p) + E(q)`.
pub fn estar_additivity_check(
    g: &TopoGraph,
    p: &PointClass,
    q: &PointClass,
) -> Result<bool, TopoError> {
    if !g.is_compact() {
        return Err(TopoError::NonCompact);
    }
    let (quotient, merged) = collapse(g, p, q)?;
    let at_merged = estar(&quotient, &PointClass::Vertex(merged))?;
    Ok(at_merged == estar(g, p)? + estar(g, q)?)
}

fn attach_blocks(g: &TopoGraph, blocks: &[Vec<SlotRef>], stem: &str) -> Result<(TopoGraph, Vec<VertexId>), TopoError> {
    if g.is_compact() {
        return Err(TopoError::Compact);
    }
    let open: BTreeSet<SlotRef> = g.open_slots().into_iter().collect();
    let mut seen = BTreeSet::new();
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(TopoError::InvalidPartition(format!("block {i} is empty")));
        }
        for s in block {
            if !open.contains(s) {
                return Err(TopoError::InvalidPartition(format!("`{s}` is not an open slot")));
            }
            if !seen.insert(s.clone()) {
                return Err(TopoError::InvalidPartition(format!("`{s}` appears twice")));
            }
        }
    }
    if let Some(missing) = open.difference(&seen).next() {
        return Err(TopoError::InvalidPartition(format!("`{missing}` is not covered")));
    }
    let mut out = g.clone();
    let mut points = Vec::with_capacity(blocks.len());
    for block in blocks {
        let x = out.fresh_vertex_id(stem);
        out.vertices.push(x.clone());
        for s in block {
            let idx = out.edge_index(&s.edge).expect("slot checked");
            out.edges[idx].ends[s.end as usize] = Slot::Attached(x.clone());
        }
        points.push(x);
    }
    Ok((out, points))
}

/// Compactification adding one point per block of open slots.
pub fn finite_compactification(g: &TopoGraph, partition: &[Vec<SlotRef>]) -> Result<TopoGraph, TopoError> {
    attach_blocks(g, partition, "pt").map(|(out, _)| out)
}

/// Freudenthal compactification: one new point per end.
pub fn freudenthal(g: &TopoGraph) -> Result<TopoGraph, TopoError> {
    let blocks: Vec<Vec<SlotRef>> = g.open_slots().into_iter().map(|s| vec![s]).collect();
    attach_blocks(g, &blocks, "end").map(|(out, _)| out)
}

/// One-point compactification; returns the new point as well.
pub fn alexandroff(g: &TopoGraph) -> Result<(TopoGraph, VertexId), TopoError> {
    let (out, mut points) = attach_blocks(g, &[g.open_slots()], "inf")?;
    Ok((out, points.pop().expect("one block")))
}

/// Largest `N` admitting an N-star; 0 for compact spaces.
pub fn max_nstar(g: &TopoGraph) -> usize {
    end_count(g)
}

/// An open tail `(anchor, ∞)` of an edge running out to an end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSegment {
    /// The end slot of the original graph this tail runs out to.
    pub slot: SlotRef,
    /// The tail edge in the witness host graph.
    pub edge: EdgeId,
    /// Where the tail is cut off; belongs to the compact core.
    pub anchor: VertexId,
}

/// A decomposition `{K, G_1, …, G_N}` of a non-compact graph: `K` compact,
/// the `G_i` disjoint non-empty open sets, `K ∪ G_i` never compact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NStarWitness {
    /// The input with each open-ended edge subdivided once.
    pub host: TopoGraph,
    pub core: TopoGraph,
    pub parts: Vec<Vec<TailSegment>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessViolation {
    #[error("core is not compact")]
    CoreNotCompact,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("tail `{0}` is used more than once")]
    OverlappingParts(EdgeId),
    #[error("tail `{0}` is not a half-open edge of the host anchored in the core")]
    BadTail(EdgeId),
    #[error("core together with part {0} is compact")]
    PartCompact(usize),
    #[error("core and parts do not make up the whole space")]
    NotCovering,
    #[error("host is not homeomorphic to the original space")]
    HostChanged,
}

/// Builds an N-star for `1 <= n <= end_count(g)`. Tails are sorted by slot and
/// dealt into `n` contiguous runs whose sizes differ by at most one.
pub fn nstar_witness(g: &TopoGraph, n: usize) -> Result<NStarWitness, TopoError> {
    let max = max_nstar(g);
    if n == 0 || n > max {
        return Err(TopoError::NStarOutOfRange { requested: n, max });
    }
    let mut host = g.clone();
    let mut tails = Vec::with_capacity(max);
    for e in g.edges.iter().filter(|e| e.open_slots() > 0) {
        let s = host.subdivide_with_vertex(&e.id)?;
        host = s.graph;
        for (end, slot) in e.ends.iter().enumerate() {
            if slot.is_open() {
                tails.push(TailSegment {
                    slot: SlotRef {
                        edge: e.id.clone(),
                        end: end as u8,
                    },
                    edge: s.halves[end].clone(),
                    anchor: s.vertex.clone(),
                });
            }
        }
    }
    tails.sort_by(|a, b| a.slot.cmp(&b.slot));
    let tail_edges: HashSet<&EdgeId> = tails.iter().map(|t| &t.edge).collect();
    let core = TopoGraph {
        vertices: host.vertices.clone(),
        edges: host.edges.iter().filter(|e| !tail_edges.contains(&e.id)).cloned().collect(),
        circles: host.circles,
    };
    let (base, extra) = (tails.len() / n, tails.len() % n);
    let mut rest = tails.into_iter();
    let parts = (0..n)
        .map(|i| rest.by_ref().take(base + usize::from(i < extra)).collect())
        .collect();
    Ok(NStarWitness { host, core, parts })
}

impl NStarWitness {
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// Checks the N-star conditions against the space `original`.
    pub fn validate(&self, original: &TopoGraph) -> Result<(), WitnessViolation> {
        if self.core.validate().is_err() || !self.core.is_compact() {
            return Err(WitnessViolation::CoreNotCompact);
        }
        let core_vertices: HashSet<&VertexId> = self.core.vertices.iter().collect();
        let mut used: HashSet<&EdgeId> = HashSet::new();
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(WitnessViolation::EmptyPart(i));
            }
            let mut with_part = self.core.clone();
            for t in part {
                if !used.insert(&t.edge) {
                    return Err(WitnessViolation::OverlappingParts(t.edge.clone()));
                }
                let edge = self.host.edge(&t.edge).ok_or_else(|| WitnessViolation::BadTail(t.edge.clone()))?;
                let anchored = edge.is_half_open()
                    && edge.ends.iter().any(|s| s.is_at(&t.anchor))
                    && core_vertices.contains(&t.anchor)
                    && self.core.edge(&t.edge).is_none();
                if !anchored {
                    return Err(WitnessViolation::BadTail(t.edge.clone()));
                }
                with_part.edges.push(edge.clone());
            }
            if with_part.is_compact() {
                return Err(WitnessViolation::PartCompact(i));
            }
        }
        let mut covered: Vec<&Edge> = self.core.edges.iter().collect();
        covered.extend(
            self.parts
                .iter()
                .flatten()
                .filter_map(|t| self.host.edge(&t.edge)),
        );
        let covers = covered.len() == self.host.edges.len()
            && self.host.edges.iter().all(|e| covered.iter().any(|c| c.id == e.id))
            && self.core.vertices == self.host.vertices
            && self.core.circles == self.host.circles;
        if !covers {
            return Err(WitnessViolation::NotCovering);
        }
        if !is_homeomorphic(&self.host, original) {
            return Err(WitnessViolation::HostChanged);
        }
        Ok(())
    }
}

/// Largest `N` such that the punctured closed star of `p` splits into `N`
/// clopen pieces each having `p` in its closure.
pub fn splitting_number(g: &TopoGraph, p: &PointClass) -> Result<usize, TopoError> {
    let (star, center) = closed_star(g, p, 1)?;
    let punctured = remove_point(&star, &PointClass::Vertex(center))?;
    // A piece limits to the deleted point exactly when it carries one of the new open ends.
    Ok(punctured
        .components()
        .iter()
        .filter(|c| c.open_slot_count() > 0)
        .count())
}

/// Largest `N` such that the punctured closed star of `p` splits into `N`
/// clopen pieces each meeting the component of `p` in the star.
pub fn separating_number(g: &TopoGraph, p: &PointClass) -> Result<usize, TopoError> {
    let (star, center) = closed_star(g, p, 1)?;
    let home = star
        .components()
        .into_iter()
        .find(|c| c.has_vertex(&center))
        .expect("center lies in the star");
    let home_edges: HashSet<&EdgeId> = home.edges.iter().map(|e| &e.id).collect();
    let punctured = remove_point(&star, &PointClass::Vertex(center))?;
    Ok(punctured
        .components()
        .iter()
        .filter(|c| {
            c.edges.iter().any(|e| home_edges.contains(&e.id))
                || c.vertices.iter().any(|v| home.has_vertex(v))
        })
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::shapes::*;
    use crate::surgery::point_classes;

    fn vp(s: &str) -> PointClass {
        PointClass::Vertex(s.into())
    }

    fn two_rays() -> TopoGraph {
        remove_point(&interval(), &PointClass::EdgeInterior("e".into())).unwrap()
    }

    #[test]
    fn end_counts() {
        assert_eq!(end_count(&ray()), 1);
        assert_eq!(end_count(&open_arc()), 2);
        assert_eq!(end_count(&k3()), 0);
    }

    #[test]
    fn estar_examples() {
        assert_eq!(estar(&interval(), &vp("a")).unwrap(), EStarValue::Finite(1));
        assert_eq!(estar(&figure_eight(), &vp("v")).unwrap(), EStarValue::Finite(4));
        let mut g = interval();
        g.add_vertex("iso");
        let e = estar(&g, &vp("iso")).unwrap();
        assert!(e.is_isolated());
        assert_eq!(estar(&circle(), &PointClass::Circle(0)).unwrap(), EStarValue::Finite(2));
    }

    #[test]
    fn closed_form_matches_on_examples() {
        for g in [interval(), k3(), figure_eight(), two_edges(), circle()] {
            for p in point_classes(&g) {
                assert_eq!(estar(&g, &p).unwrap(), estar_closed_form(&g, &p).unwrap(), "{p}");
            }
        }
    }

    #[test]
    fn additivity_examples() {
        let ep = |s: &str| PointClass::EdgeInterior(s.into());
        assert!(estar_additivity_check(&two_edges(), &ep("ab"), &ep("cd")).unwrap());
        assert!(estar_additivity_check(&interval(), &vp("a"), &vp("b")).unwrap());
        assert!(estar_additivity_check(&k3(), &vp("a"), &ep("bc")).unwrap());
        assert_eq!(estar_additivity_check(&k3(), &vp("a"), &vp("a")), Err(TopoError::SamePoint));
        assert_eq!(estar_additivity_check(&ray(), &vp("v"), &ep("r")), Err(TopoError::NonCompact));
    }

    #[test]
    fn freudenthal_examples() {
        let f = freudenthal(&two_rays()).unwrap();
        assert!(f.is_compact());
        assert_eq!(f.vertices.len(), 4);
        assert!(is_homeomorphic(&f, &two_edges()));

        let f = freudenthal(&open_arc()).unwrap();
        assert!(is_homeomorphic(&f, &interval()));
        assert_eq!(f.vertices.len() - open_arc().vertices.len(), 2);

        let card = remove_point(&figure_eight(), &vp("v")).unwrap();
        let f = freudenthal(&card).unwrap();
        assert_eq!(f.vertices.len(), 4);
        assert_eq!(freudenthal(&k3()), Err(TopoError::Compact));
    }

    #[test]
    fn alexandroff_examples() {
        let (a, inf) = alexandroff(&two_rays()).unwrap();
        assert_eq!(estar(&a, &PointClass::Vertex(inf)).unwrap(), EStarValue::Finite(2));
        assert!(is_homeomorphic(&a, &interval()));

        let (a, inf) = alexandroff(&open_arc()).unwrap();
        assert_eq!(a.loops_at(&inf), 1);
        assert!(is_homeomorphic(&a, &circle()));

        let (a, _) = alexandroff(&ray()).unwrap();
        assert!(is_homeomorphic(&a, &interval()));
        assert!(alexandroff(&interval()).is_err());
    }

    #[test]
    fn partition_examples() {
        let arc = open_arc();
        let slots = arc.open_slots();
        let one = finite_compactification(&arc, std::slice::from_ref(&slots)).unwrap();
        assert!(is_homeomorphic(&one, &circle()));
        let two = finite_compactification(&arc, &[vec![slots[0].clone()], vec![slots[1].clone()]]).unwrap();
        assert!(is_homeomorphic(&two, &interval()));

        let card = remove_point(&figure_eight(), &vp("v")).unwrap();
        let s = card.open_slots();
        let blocks = vec![vec![s[0].clone(), s[1].clone()], vec![s[2].clone()], vec![s[3].clone()]];
        let three = finite_compactification(&card, &blocks).unwrap();
        assert_eq!(three.vertices.len() - card.vertices.len(), 3);
        assert!(three.is_compact());
    }

    #[test]
    fn partition_errors() {
        let arc = open_arc();
        let s = arc.open_slots();
        assert!(matches!(
            finite_compactification(&arc, &[vec![s[0].clone()]]),
            Err(TopoError::InvalidPartition(_))
        ));
        assert!(matches!(
            finite_compactification(&arc, &[s.clone(), vec![]]),
            Err(TopoError::InvalidPartition(_))
        ));
        assert!(matches!(
            finite_compactification(&arc, &[s.clone(), vec![s[0].clone()]]),
            Err(TopoError::InvalidPartition(_))
        ));
        let bogus = SlotRef { edge: "o".into(), end: 0 };
        assert!(matches!(
            finite_compactification(&ray(), &[vec![bogus]]),
            Err(TopoError::InvalidPartition(_))
        ));
    }

    #[test]
    fn nstar_for_two_rays() {
        let g = two_rays();
        assert_eq!(max_nstar(&g), 2);
        let w = nstar_witness(&g, 2).unwrap();
        assert_eq!(w.validate(&g), Ok(()));
        assert_eq!(w.core.edges.len(), 2);
        assert!(w.core.is_compact());
        assert!(w.parts.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn nstar_compact_and_range() {
        assert_eq!(max_nstar(&k3()), 0);
        assert!(matches!(nstar_witness(&k3(), 1), Err(TopoError::NStarOutOfRange { .. })));
        assert!(matches!(nstar_witness(&ray(), 2), Err(TopoError::NStarOutOfRange { .. })));
        assert!(matches!(nstar_witness(&ray(), 0), Err(TopoError::NStarOutOfRange { .. })));
    }

    #[test]
    fn nstar_figure_eight_card() {
        let card = remove_point(&figure_eight(), &vp("v")).unwrap();
        for n in 1..=4 {
            let w = nstar_witness(&card, n).unwrap();
            assert_eq!(w.validate(&card), Ok(()), "n = {n}");
            let sizes: Vec<usize> = w.parts.iter().map(Vec::len).collect();
            assert_eq!(sizes.iter().sum::<usize>(), 4);
            assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
    }

    #[test]
    fn witness_validator_catches_tampering() {
        let card = remove_point(&figure_eight(), &vp("v")).unwrap();
        let w = nstar_witness(&card, 2).unwrap();

        let mut empty = w.clone();
        empty.parts.push(Vec::new());
        assert_eq!(empty.validate(&card), Err(WitnessViolation::EmptyPart(2)));

        let mut dup = w.clone();
        let t = dup.parts[0][0].clone();
        dup.parts[1].push(t.clone());
        assert_eq!(dup.validate(&card), Err(WitnessViolation::OverlappingParts(t.edge)));

        let mut short = w.clone();
        short.parts[1].pop();
        assert_eq!(short.validate(&card), Err(WitnessViolation::NotCovering));

        let mut open_core = w.clone();
        open_core.core.open_arc("leak");
        assert_eq!(open_core.validate(&card), Err(WitnessViolation::CoreNotCompact));

        assert_eq!(w.validate(&interval()), Err(WitnessViolation::HostChanged));
    }

    #[test]
    fn splitting_and_separating_examples() {
        assert_eq!(splitting_number(&k3(), &vp("a")).unwrap(), 2);
        assert_eq!(separating_number(&k3(), &vp("a")).unwrap(), 2);
        assert_eq!(splitting_number(&figure_eight(), &vp("v")).unwrap(), 4);
        assert_eq!(separating_number(&figure_eight(), &vp("v")).unwrap(), 4);
        assert_eq!(splitting_number(&interval(), &vp("a")).unwrap(), 1);
        assert_eq!(separating_number(&interval(), &vp("a")).unwrap(), 1);
        let mut g = interval();
        g.add_vertex("iso");
        assert_eq!(splitting_number(&g, &vp("iso")).unwrap(), 0);
        assert_eq!(separating_number(&g, &vp("iso")).unwrap(), 0);
    }

    #[test]
    fn estar_sum_with_infinity() {
        assert_eq!(EStarValue::Finite(2) + EStarValue::Infinite, EStarValue::Infinite);
        assert_eq!(EStarValue::Infinite.to_string(), "inf");
    }
}
