//! Virtual link kernel: Gauss codes, thickened-surface embeddings with
//! stabilization bookkeeping, Reidemeister moves with replayable traces,
//! move-invariant fingerprints, link complement complexes with meridian
//! patterns, and a three-valued certified equivalence decider.

pub mod codes;
pub mod poly;
pub mod invariants;
pub mod moves;
pub mod surface;
pub mod search;
pub mod decompose;
pub mod decider;

pub use codes::{parse_gauss, serialize_gauss, validate, canonical_relabel, GaussCode};
