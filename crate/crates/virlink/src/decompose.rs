//! Split the link into diagram-level split parts, recognize classical parts,
//! and compare classical links.
//!
//! Splitting is diagram-level: distinct surface components of the
//! destabilized embedding. Hidden splitness is left to the decider's search,
//! so `Unknown` is a legitimate classification outcome.

use crate::codes::GaussCode;
use crate::decider::{Budget, Verdict};
use crate::invariants::{fingerprint, linking_matrix, odd_writhe};
use crate::moves::MoveTrace;
use crate::search;
use crate::surface::{carter_embed, SurfaceDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// A genus-0 representative was found; the trace reaches it.
    Classical { witness: GaussCode, trace: MoveTrace },
    /// An obstruction invariant fired.
    NonClassical { obstruction: String, detail: String },
    /// Budget exhausted without a witness either way.
    Unknown { expanded: usize },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Classical { .. } => "classical",
            Classification::NonClassical { .. } => "non-classical",
            Classification::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPart {
    pub code: GaussCode,
    /// indices of the link components (in the original code) this part carries
    pub component_indices: Vec<usize>,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub parts: Vec<SplitPart>,
}

/// Maximal split parts detectable at the diagram level: one per surface
/// component of the destabilized embedding. Concatenating the parts' codes
/// recovers the original code up to component reordering.
pub fn split_components(d: &SurfaceDiagram) -> Vec<SurfaceDiagram> {
    split_spans(d)
        .into_iter()
        .map(|span| carter_embed(&d.code().restrict_to(&span)))
        .collect()
}

/// The component-index span of each split part, ordered by least component.
pub fn split_spans(d: &SurfaceDiagram) -> Vec<Vec<usize>> {
    let cellular = if d.is_cellular() { d.clone() } else { d.destabilize_fully() };
    let mut spans: Vec<Vec<usize>> = cellular
        .surface_components()
        .iter()
        .map(|c| c.link_components.clone())
        .collect();
    spans.sort_by_key(|s| s.first().copied().unwrap_or(usize::MAX));
    spans
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub use_obstructions: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { use_obstructions: true }
    }
}

/// Classical iff some move-equivalent code has supporting genus 0. Sound in
/// both directions: Classical carries a replayable trace to a genus-0
/// representative, NonClassical carries the name and value of an obstruction.
pub fn classify_classical(code: &GaussCode, budget: &Budget) -> Classification {
    classify_classical_with(code, budget, ClassifyOptions::default())
}

pub fn classify_classical_with(
    code: &GaussCode,
    budget: &Budget,
    opts: ClassifyOptions,
) -> Classification {
    if opts.use_obstructions {
        if code.component_count() == 1 {
            let ow = odd_writhe(code).expect("knot");
            if ow != 0 {
                return Classification::NonClassical {
                    obstruction: "odd_writhe".into(),
                    detail: ow.to_string(),
                };
            }
        }
        let lk = linking_matrix(code);
        for i in 0..lk.len() {
            for j in 0..lk.len() {
                if lk[i][j].0 != lk[j][i].0 {
                    return Classification::NonClassical {
                        obstruction: "linking_asymmetry".into(),
                        detail: format!(
                            "over({i}->{j}) = {} but over({j}->{i}) = {}",
                            lk[i][j].0, lk[j][i].0
                        ),
                    };
                }
            }
        }
    }
    let (ex, out) = search::explore_until(
        code,
        budget.max_crossings,
        budget.max_expansions,
        false,
        |n| n.genus_sum == 0,
    );
    match out.goal {
        Some(id) => Classification::Classical {
            witness: ex.nodes[id].code.clone(),
            trace: ex.trace_to(code, id),
        },
        None => Classification::Unknown { expanded: out.expanded },
    }
}

/// Split a code and classify every part.
pub fn decompose(code: &GaussCode, budget: &Budget) -> SplitDecomposition {
    let d = carter_embed(code).destabilize_fully();
    let parts = split_spans(&d)
        .into_iter()
        .map(|span| {
            let part_code = code.restrict_to(&span);
            let classification = classify_classical(&part_code, budget);
            SplitPart { code: part_code, component_indices: span, classification }
        })
        .collect();
    SplitDecomposition { parts }
}

/// Compare two classical links: fingerprint separation, then bidirectional
/// bounded search. Three-valued.
pub fn compare_classical(a: &GaussCode, b: &GaussCode, budget: &Budget) -> Verdict {
    crate::decider::decide(a, b, budget)
}
