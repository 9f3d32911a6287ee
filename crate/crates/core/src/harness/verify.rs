use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{CanonicalForm, Certificate};
use crate::compactify::{end_count, estar, freudenthal, max_nstar};
use crate::graph::TopoGraph;
use crate::surgery::{deck, point_classes};

use super::{enumerate_canonical, BudgetError, DeckCache, EnumerationBudget};

/// Graphs of the universe sharing one deck.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub deck_hash: String,
    pub graphs: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub budget: EnumerationBudget,
    pub universe_size: usize,
    /// Deck hash to the certificates of all graphs with that deck.
    pub deck_groups: BTreeMap<String, Vec<Certificate>>,
    pub collisions: Vec<Collision>,
    /// Smallest `E(x)` over the points of each graph.
    pub min_estar: BTreeMap<Certificate, u32>,
    /// Every graph has a card with a maximal finite compactification.
    pub hypothesis_holds: bool,
}

impl InjectivityReport {
    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// SHA-256 over the sorted card certificates, one per line.
pub fn deck_hash<'a>(cards: impl IntoIterator<Item = &'a Certificate>) -> String {
    let mut sorted: Vec<&str> = cards.into_iter().map(Certificate::as_str).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let mut hasher = Sha256::new();
    for c in sorted {
        hasher.update(c.as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

pub fn verify_deck_injectivity(budget: &EnumerationBudget) -> Result<InjectivityReport, BudgetError> {
    run(budget, None)
}

/// Like [`verify_deck_injectivity`], reading and filling `cache`.
pub fn verify_with_cache(
    budget: &EnumerationBudget,
    cache: &mut DeckCache,
) -> Result<InjectivityReport, BudgetError> {
    run(budget, Some(cache))
}

struct GraphResult {
    certificate: Certificate,
    cards: Vec<Certificate>,
    min_estar: u32,
    has_max_compactification: bool,
}

/// A card has a maximal finite compactification: its Freudenthal
/// compactification is compact and adds exactly `max_nstar` points.
fn card_has_max_compactification(card: &TopoGraph) -> bool {
    if card.is_compact() {
        return true;
    }
    let Ok(f) = freudenthal(card) else {
        return false;
    };
    f.is_compact() && f.vertices.len() - card.vertices.len() == max_nstar(card) && max_nstar(card) == end_count(card)
}

fn examine(cf: &CanonicalForm, cached: Option<Vec<Certificate>>) -> GraphResult {
    let g = &cf.graph;
    let cards: Vec<Certificate> = match cached {
        Some(cards) => cards,
        None => deck(g)
            .expect("universe members are compact with at least three points")
            .cards
            .into_iter()
            .collect(),
    };
    let min_estar = point_classes(g)
        .iter()
        .map(|p| {
            estar(g, p)
                .expect("point class of g")
                .finite()
                .expect("E is finite on finite graphs")
        })
        .min()
        .unwrap_or(0);
    let has_max_compactification = cards.iter().any(|c| {
        c.decode()
            .is_some_and(|card| card_has_max_compactification(&card))
    });
    GraphResult {
        certificate: cf.certificate.clone(),
        cards,
        min_estar,
        has_max_compactification,
    }
}

fn run(budget: &EnumerationBudget, mut cache: Option<&mut DeckCache>) -> Result<InjectivityReport, BudgetError> {
    let universe = enumerate_canonical(budget)?;
    let lookups: Vec<Option<Vec<Certificate>>> = universe
        .iter()
        .map(|cf| cache.as_deref_mut().and_then(|c| c.get(&cf.certificate)))
        .collect();
    let results: Vec<GraphResult> = universe
        .par_iter()
        .zip(lookups.into_par_iter())
        .map(|(cf, cached)| examine(cf, cached))
        .collect();

    let mut deck_groups: BTreeMap<String, Vec<Certificate>> = BTreeMap::new();
    let mut min_estar = BTreeMap::new();
    let mut hypothesis_holds = true;
    for r in &results {
        deck_groups
            .entry(deck_hash(&r.cards))
            .or_default()
            .push(r.certificate.clone());
        min_estar.insert(r.certificate.clone(), r.min_estar);
        hypothesis_holds &= r.has_max_compactification;
    }
    if let Some(cache) = cache {
        for r in results {
            cache.insert(r.certificate, r.cards);
        }
    }
    for graphs in deck_groups.values_mut() {
        graphs.sort();
    }
    let collisions = deck_groups
        .iter()
        .filter(|(_, graphs)| graphs.len() > 1)
        .map(|(hash, graphs)| Collision {
            deck_hash: hash.clone(),
            graphs: graphs.clone(),
        })
        .collect();
    Ok(InjectivityReport {
        budget: *budget,
        universe_size: universe.len(),
        deck_groups,
        collisions,
        min_estar,
        hypothesis_holds,
    })
}
