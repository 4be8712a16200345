//! Deterministic best-first exploration of the move graph over canonical
//! codes. Nodes are canonical forms (relabel + basepoint rotation); the
//! expansion order is (crossing count, canonical serialization), so runs are
//! reproducible and independent of internal parallelism.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;

use crate::codes::{canonical_form, serialize_gauss, GaussCode};
use crate::moves::{enumerate_moves, MoveSpec, MoveTrace};
use crate::surface::carter_embed;

pub struct Node {
    pub code: GaussCode,
    pub key: String,
    pub parent: Option<(usize, MoveSpec)>,
    pub crossings: usize,
    pub genus_sum: u32,
}

pub struct Explorer {
    pub nodes: Vec<Node>,
    index: HashMap<String, usize>,
    frontier: BinaryHeap<Reverse<(usize, String, usize)>>,
    pub expanded: usize,
    pub exhausted: bool,
    max_crossings: usize,
    parallel: bool,
}

fn genus_sum(code: &GaussCode) -> u32 {
    carter_embed(code).supporting_genus().iter().sum()
}

impl Explorer {
    pub fn new(start: &GaussCode, max_crossings: usize, parallel: bool) -> Explorer {
        let root = canonical_form(start);
        let key = serialize_gauss(&root);
        let mut ex = Explorer {
            nodes: Vec::new(),
            index: HashMap::new(),
            frontier: BinaryHeap::new(),
            expanded: 0,
            exhausted: false,
            max_crossings,
            parallel,
        };
        ex.insert(root, key, None);
        ex
    }

    fn insert(&mut self, code: GaussCode, key: String, parent: Option<(usize, MoveSpec)>) -> usize {
        let id = self.nodes.len();
        let crossings = code.crossing_count();
        let genus = genus_sum(&code);
        self.frontier.push(Reverse((crossings, key.clone(), id)));
        self.index.insert(key.clone(), id);
        self.nodes.push(Node { code, key, parent, crossings, genus_sum: genus });
        id
    }

    pub fn contains(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn root_key(&self) -> &str {
        &self.nodes[0].key
    }

    pub fn enqueued(&self) -> usize {
        self.nodes.len()
    }

    pub fn min_genus_seen(&self) -> u32 {
        self.nodes.iter().map(|n| n.genus_sum).min().unwrap_or(0)
    }

    /// Expand the least frontier node; returns the ids of newly reached
    /// codes. `None` when the frontier is empty.
    pub fn expand_one(&mut self) -> Option<Vec<usize>> {
        let Reverse((_, _, id)) = self.frontier.pop()?;
        self.expanded += 1;
        let moves = enumerate_moves(&self.nodes[id].code, self.max_crossings);
        let children: Vec<(MoveSpec, GaussCode, String)> = if self.parallel {
            moves
                .into_par_iter()
                .map(|(spec, next)| {
                    let canon = canonical_form(&next);
                    let key = serialize_gauss(&canon);
                    (spec, canon, key)
                })
                .collect()
        } else {
            moves
                .into_iter()
                .map(|(spec, next)| {
                    let canon = canonical_form(&next);
                    let key = serialize_gauss(&canon);
                    (spec, canon, key)
                })
                .collect()
        };
        let mut added = Vec::new();
        for (spec, canon, key) in children {
            if self.index.contains_key(&key) {
                continue;
            }
            added.push(self.insert(canon, key, Some((id, spec))));
        }
        if self.frontier.is_empty() {
            self.exhausted = true;
        }
        Some(added)
    }

    /// Move steps from the root to the given node; replays under
    /// `MoveTrace` semantics since every stored code is canonical.
    pub fn steps_to(&self, node: usize) -> Vec<MoveSpec> {
        let mut steps = Vec::new();
        let mut cur = node;
        while let Some((parent, spec)) = &self.nodes[cur].parent {
            steps.push(spec.clone());
            cur = *parent;
        }
        steps.reverse();
        steps
    }

    pub fn trace_to(&self, start: &GaussCode, node: usize) -> MoveTrace {
        MoveTrace::new(start.clone(), self.steps_to(node))
    }
}

pub struct MeetOutcome {
    pub meet: Option<(usize, usize)>,
    pub expanded: usize,
    pub enqueued: usize,
    pub min_genus_seen: u32,
}

/// Meet-in-the-middle search between two codes, alternating expansions,
/// with a shared expansion budget.
pub fn bidirectional(
    a: &GaussCode,
    b: &GaussCode,
    max_crossings: usize,
    max_expansions: usize,
    parallel: bool,
) -> (Explorer, Explorer, MeetOutcome) {
    let mut ea = Explorer::new(a, max_crossings, parallel);
    let mut eb = Explorer::new(b, max_crossings, parallel);
    let mut meet = None;
    if ea.root_key() == eb.root_key() {
        meet = Some((0, 0));
    }
    let mut turn_a = true;
    while meet.is_none() && ea.expanded + eb.expanded < max_expansions {
        let (side, other): (&mut Explorer, &mut Explorer) = if turn_a {
            (&mut ea, &mut eb)
        } else {
            (&mut eb, &mut ea)
        };
        match side.expand_one() {
            Some(added) => {
                for id in added {
                    if let Some(other_id) = other.contains(&side.nodes[id].key) {
                        meet = Some(if turn_a { (id, other_id) } else { (other_id, id) });
                        break;
                    }
                }
            }
            None => {
                if other.frontier.is_empty() {
                    break;
                }
            }
        }
        turn_a = !turn_a;
    }
    let outcome = MeetOutcome {
        meet,
        expanded: ea.expanded + eb.expanded,
        enqueued: ea.enqueued() + eb.enqueued(),
        min_genus_seen: ea.min_genus_seen().min(eb.min_genus_seen()),
    };
    (ea, eb, outcome)
}

pub struct GoalOutcome {
    pub goal: Option<usize>,
    pub expanded: usize,
    pub exhausted: bool,
}

/// Explore from one code until a node satisfies the predicate.
pub fn explore_until(
    start: &GaussCode,
    max_crossings: usize,
    max_expansions: usize,
    parallel: bool,
    pred: impl Fn(&Node) -> bool,
) -> (Explorer, GoalOutcome) {
    let mut ex = Explorer::new(start, max_crossings, parallel);
    if pred(&ex.nodes[0]) {
        let expanded = ex.expanded;
        return (ex, GoalOutcome { goal: Some(0), expanded, exhausted: false });
    }
    let mut goal = None;
    while goal.is_none() && ex.expanded < max_expansions {
        match ex.expand_one() {
            Some(added) => {
                for id in added {
                    if pred(&ex.nodes[id]) {
                        goal = Some(id);
                        break;
                    }
                }
            }
            None => break,
        }
    }
    let outcome = GoalOutcome { goal, expanded: ex.expanded, exhausted: ex.exhausted && goal.is_none() };
    (ex, outcome)
}

pub struct MinimumOutcome {
    pub best: usize,
    pub expanded: usize,
    pub exhausted: bool,
}

/// Exhaust the budget looking for the least (genus, crossings, key) node.
pub fn explore_minimum(
    start: &GaussCode,
    max_crossings: usize,
    max_expansions: usize,
    parallel: bool,
) -> (Explorer, MinimumOutcome) {
    let mut ex = Explorer::new(start, max_crossings, parallel);
    while ex.expanded < max_expansions {
        if ex.expand_one().is_none() {
            break;
        }
    }
    let best = (0..ex.nodes.len())
        .min_by_key(|&i| {
            let n = &ex.nodes[i];
            (n.genus_sum, n.crossings, n.key.clone())
        })
        .expect("at least the root");
    let outcome = MinimumOutcome { best, expanded: ex.expanded, exhausted: ex.exhausted };
    (ex, outcome)
}
