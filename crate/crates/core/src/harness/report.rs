use std::collections::BTreeMap;
use std::fmt::Write;

use super::InjectivityReport;

/// Plain-text summary; byte-stable for a given report.
pub fn render_text(r: &InjectivityReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "budget max_edges={} connected_only={} min_points={}",
        r.budget.max_edges, r.budget.connected_only, r.budget.min_points
    )
    .unwrap();
    writeln!(out, "universe_size {}", r.universe_size).unwrap();
    writeln!(out, "distinct_decks {}", r.deck_groups.len()).unwrap();
    writeln!(out, "collisions {}", r.collisions.len()).unwrap();
    for c in &r.collisions {
        write!(out, "collision {}", c.deck_hash).unwrap();
        for g in &c.graphs {
            write!(out, " {g}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "hypothesis_holds {}", r.hypothesis_holds).unwrap();
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in r.min_estar.values() {
        *histogram.entry(e).or_default() += 1;
    }
    for (e, n) in histogram {
        writeln!(out, "min_estar {e} {n}").unwrap();
    }
    let verdict = if r.collisions.is_empty() {
        "decks are injective on this universe"
    } else {
        "deck collisions found"
    };
    writeln!(out, "result {verdict} (max_edges={})", r.budget.max_edges).unwrap();
    out
}

pub fn report_to_json(r: &InjectivityReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

pub fn report_from_json(s: &str) -> Result<InjectivityReport, serde_json::Error> {
    serde_json::from_str(s)
}
