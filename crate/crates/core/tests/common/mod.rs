#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use topodeck::{Edge, EdgeId, Slot, TopoGraph, VertexId};

/// Exhaustive isomorphism test for multigraphs with open slots and circle
/// counts. Tries vertex bijections by backtracking, rejecting a partial map as
/// soon as an already-mapped pair disagrees. Vertices of `a` are mapped in
/// order of decreasing degree so that isolated vertices come last.
pub fn brute_isomorphic(a: &TopoGraph, b: &TopoGraph) -> bool {
    if a.vertices.len() != b.vertices.len() || a.edges.len() != b.edges.len() || a.circles != b.circles {
        return false;
    }
    let ta = Table::new(a);
    let tb = Table::new(b);
    if ta.arcs != tb.arcs {
        return false;
    }
    let mut order: Vec<usize> = (0..ta.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(ta.degree[v]));
    let mut map = vec![usize::MAX; ta.n];
    let mut used = vec![false; ta.n];
    fn extend(i: usize, order: &[usize], ta: &Table, tb: &Table, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&x) = order.get(i) else {
            return true;
        };
        for y in 0..tb.n {
            if used[y] || ta.degree[x] != tb.degree[y] || ta.open[x] != tb.open[y] || ta.m(x, x) != tb.m(y, y) {
                continue;
            }
            map[x] = y;
            if order[..i].iter().all(|&z| ta.m(x, z) == tb.m(y, map[z])) {
                used[y] = true;
                if extend(i + 1, order, ta, tb, map, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    extend(0, &order, &ta, &tb, &mut map, &mut used)
}

struct Table {
    n: usize,
    mult: Vec<u32>,
    open: Vec<u32>,
    degree: Vec<u32>,
    arcs: u32,
}

impl Table {
    fn new(g: &TopoGraph) -> Self {
        let n = g.vertices.len();
        let idx = |v: &VertexId| g.vertices.iter().position(|u| u == v).unwrap();
        let mut t = Table {
            n,
            mult: vec![0; n * n],
            open: vec![0; n],
            degree: vec![0; n],
            arcs: 0,
        };
        for e in &g.edges {
            match (&e.ends[0], &e.ends[1]) {
                (Slot::Attached(x), Slot::Attached(y)) => {
                    let (x, y) = (idx(x), idx(y));
                    t.degree[x] += 1;
                    t.degree[y] += 1;
                    t.mult[x * n + y] += 1;
                    if x != y {
                        t.mult[y * n + x] += 1;
                    }
                }
                (Slot::Attached(x), Slot::Open) | (Slot::Open, Slot::Attached(x)) => {
                    let x = idx(x);
                    t.open[x] += 1;
                    t.degree[x] += 1;
                }
                (Slot::Open, Slot::Open) => t.arcs += 1,
            }
        }
        t
    }

    fn m(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.n + b]
    }
}

/// Random renaming of every id, random vertex and edge order, random end orientation.
pub fn scramble<R: Rng>(g: &TopoGraph, rng: &mut R) -> TopoGraph {
    let tag: u32 = rng.gen();
    let mut h = g.relabel(
        |v| VertexId::new(format!("q{tag}_{v}")),
        |e| EdgeId::new(format!("r{tag}_{e}")),
    );
    h.vertices.shuffle(rng);
    h.edges.shuffle(rng);
    for e in &mut h.edges {
        if rng.gen_bool(0.5) {
            e.ends.swap(0, 1);
        }
    }
    h
}

/// Random compact multigraph on `n` vertices with `m` edges and up to two circles.
pub fn random_compact<R: Rng>(rng: &mut R, n: usize, m: usize) -> TopoGraph {
    let mut g = TopoGraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}"));
    }
    for i in 0..m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        g.connect(format!("e{i}"), format!("v{a}"), format!("v{b}"));
    }
    g.circles = rng.gen_range(0..3);
    g
}

/// Arbitrary valid graph with up to 6 vertices and 7 edges. Open slots only when `allow_open`.
pub fn arb_graph(allow_open: bool) -> impl Strategy<Value = TopoGraph> {
    let open_weight = if allow_open { 1u32 } else { 0 };
    (1usize..=6, 0i64..=2).prop_flat_map(move |(n, circles)| {
        let slot = prop_oneof![
            4 => (0..n).prop_map(Some),
            open_weight => Just(None),
        ];
        prop::collection::vec((slot.clone(), slot), 0..=7).prop_map(move |ends| {
            let mut g = TopoGraph::new();
            for i in 0..n {
                g.add_vertex(format!("v{i}"));
            }
            let to_slot = |s: Option<usize>| match s {
                Some(i) => Slot::Attached(VertexId::new(format!("v{i}"))),
                None => Slot::Open,
            };
            for (i, (a, b)) in ends.into_iter().enumerate() {
                g.edges.push(Edge::new(format!("e{i}"), to_slot(a), to_slot(b)));
            }
            g.circles = circles;
            g
        })
    })
}
