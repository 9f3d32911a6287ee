//! Topological decks of finite graph-like spaces.
//!
//! A [`TopoGraph`] is a finite multigraph whose edges may have open ends,
//! together with a number of bare circles. The crate computes homeomorphism
//! certificates, decks under point deletion, the local end invariant `E(x)`,
//! finite compactifications and N-stars, and runs exhaustive checks that the
//! deck determines the space.

pub mod canon;
pub mod cli;
pub mod compactify;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod smooth;
pub mod surgery;

pub use canon::{canon, certificate, is_homeomorphic, CanonicalForm, Certificate};
pub use compactify::{
    alexandroff, closed_star, end_count, estar, estar_additivity_check, estar_closed_form, estar_with_arms,
    finite_compactification, freudenthal, local_ends, max_nstar, nstar_witness, separating_number,
    splitting_number, EStarValue, NStarWitness, TailSegment, WitnessViolation,
};
pub use error::{TopoError, Violation};
pub use graph::{Edge, EdgeId, Slot, SlotRef, TopoGraph, VertexId};
pub use smooth::smooth;
pub use surgery::{collapse, deck, point_classes, remove_point, Deck, PointClass};
