//! Reidemeister moves R1, R2, R3 as local rewrites on Gauss codes, move
//! enumeration, and replayable traces.
//!
//! Sites address positions in a fixed linearization (component, offset). The
//! cyclic gap between the last and first symbol is offset 0; insertion gaps
//! may also use `len` ("append") so that removal inverses restore the exact
//! linearization. A removal pair straddling the seam carries a `wrap` flag on
//! its inverse, which re-inserts the two symbols split across the seam.
//!
//! Trace replay canonicalizes the code (relabel + basepoint rotation) before
//! every step; sites inside a trace refer to those canonical forms.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde_json::json;
use thiserror::Error;

use crate::codes::{
    canonical_form, canonical_relabel, parse_gauss, serialize_gauss, GaussCode, Passage, Sign,
    Symbol,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub component: usize,
    pub position: usize,
}

impl Site {
    pub fn new(component: usize, position: usize) -> Site {
        Site { component, position }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveSpec {
    R1Add {
        site: Site,
        sign: Sign,
        over_first: bool,
        wrap: bool,
    },
    R1Remove {
        site: Site,
    },
    R2Add {
        over: Site,
        under: Site,
        parallel: bool,
        first_sign: Sign,
        over_wrap: bool,
        under_wrap: bool,
        under_before: bool,
    },
    R2Remove {
        over: Site,
        under: Site,
    },
    R3 {
        arcs: [Site; 3],
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("move not applicable: {reason}")]
pub struct MoveError {
    pub reason: String,
}

fn bad(reason: impl Into<String>) -> MoveError {
    MoveError { reason: reason.into() }
}

// ---------------------------------------------------------------------------
// application

struct Insertion {
    gap: usize,
    wrap: bool,
    symbols: [Symbol; 2],
    rank: u8,
}

fn insert_into_component(comp: &[Symbol], mut ins: Vec<Insertion>) -> Result<Vec<Symbol>, MoveError> {
    let len = comp.len();
    if ins.iter().filter(|i| i.wrap).count() > 1 {
        return Err(bad("two wrapped insertions in one component"));
    }
    for i in &ins {
        if !i.wrap && i.gap > len {
            return Err(bad(format!("gap {} out of range (len {len})", i.gap)));
        }
    }
    ins.sort_by_key(|i| i.rank);
    let mut out = Vec::with_capacity(len + 2 * ins.len());
    for i in ins.iter().filter(|i| i.wrap) {
        out.push(i.symbols[1]);
    }
    for p in 0..=len {
        for i in ins.iter().filter(|i| !i.wrap && i.gap == p) {
            out.push(i.symbols[0]);
            out.push(i.symbols[1]);
        }
        if p < len {
            out.push(comp[p]);
        }
    }
    for i in ins.iter().filter(|i| i.wrap) {
        out.push(i.symbols[0]);
    }
    Ok(out)
}

fn arc_positions(len: usize, start: usize) -> Option<(usize, usize)> {
    if len < 2 || start >= len {
        return None;
    }
    Some((start, (start + 1) % len))
}

/// Apply a move, validating its applicability at the site.
pub fn apply_move(code: &GaussCode, spec: &MoveSpec) -> Result<GaussCode, MoveError> {
    match spec {
        MoveSpec::R1Add { site, sign, over_first, wrap } => {
            let comp = code
                .components
                .get(site.component)
                .ok_or_else(|| bad("component out of range"))?;
            let label = code.max_label() + 1;
            let (p1, p2) = if *over_first {
                (Passage::Over, Passage::Under)
            } else {
                (Passage::Under, Passage::Over)
            };
            let symbols = [Symbol::new(label, p1, *sign), Symbol::new(label, p2, *sign)];
            let new_comp = insert_into_component(
                comp,
                vec![Insertion { gap: site.position, wrap: *wrap, symbols, rank: 0 }],
            )?;
            let mut out = code.clone();
            out.components[site.component] = new_comp;
            Ok(out)
        }
        MoveSpec::R1Remove { site } => {
            let comp = code
                .components
                .get(site.component)
                .ok_or_else(|| bad("component out of range"))?;
            let (a, b) = arc_positions(comp.len(), site.position)
                .ok_or_else(|| bad("kink site out of range"))?;
            if comp[a].label != comp[b].label {
                return Err(bad("symbols at the site are not a kink pair"));
            }
            let mut out = code.clone();
            let keep: Vec<Symbol> = comp
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != a && *i != b)
                .map(|(_, s)| *s)
                .collect();
            out.components[site.component] = keep;
            Ok(out)
        }
        MoveSpec::R2Add {
            over,
            under,
            parallel,
            first_sign,
            over_wrap,
            under_wrap,
            under_before,
        } => {
            if over.component >= code.components.len() || under.component >= code.components.len() {
                return Err(bad("component out of range"));
            }
            let m1 = code.max_label() + 1;
            let m2 = code.max_label() + 2;
            let s1 = *first_sign;
            let s2 = first_sign.flip();
            let over_syms = [Symbol::new(m1, Passage::Over, s1), Symbol::new(m2, Passage::Over, s2)];
            let under_syms = if *parallel {
                [Symbol::new(m1, Passage::Under, s1), Symbol::new(m2, Passage::Under, s2)]
            } else {
                [Symbol::new(m2, Passage::Under, s2), Symbol::new(m1, Passage::Under, s1)]
            };
            let (over_rank, under_rank) = if *under_before { (1, 0) } else { (0, 1) };
            let mut out = code.clone();
            if over.component == under.component {
                let comp = &code.components[over.component];
                let new_comp = insert_into_component(
                    comp,
                    vec![
                        Insertion { gap: over.position, wrap: *over_wrap, symbols: over_syms, rank: over_rank },
                        Insertion { gap: under.position, wrap: *under_wrap, symbols: under_syms, rank: under_rank },
                    ],
                )?;
                out.components[over.component] = new_comp;
            } else {
                out.components[over.component] = insert_into_component(
                    &code.components[over.component],
                    vec![Insertion { gap: over.position, wrap: *over_wrap, symbols: over_syms, rank: 0 }],
                )?;
                out.components[under.component] = insert_into_component(
                    &code.components[under.component],
                    vec![Insertion { gap: under.position, wrap: *under_wrap, symbols: under_syms, rank: 0 }],
                )?;
            }
            Ok(out)
        }
        MoveSpec::R2Remove { over, under } => {
            let pattern = r2_removal_pattern(code, over, under)?;
            let mut out = code.clone();
            if over.component == under.component {
                let comp = &code.components[over.component];
                let remove: HashSet<usize> = pattern.positions.iter().copied().collect();
                out.components[over.component] = comp
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !remove.contains(i))
                    .map(|(_, s)| *s)
                    .collect();
            } else {
                for (ci, a, b) in [
                    (over.component, pattern.positions[0], pattern.positions[1]),
                    (under.component, pattern.positions[2], pattern.positions[3]),
                ] {
                    out.components[ci] = code.components[ci]
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != a && *i != b)
                        .map(|(_, s)| *s)
                        .collect();
                }
            }
            Ok(out)
        }
        MoveSpec::R3 { arcs } => {
            if !r3_applicable(code, arcs) {
                return Err(bad("arcs do not form an admissible triangle"));
            }
            let mut out = code.clone();
            for arc in arcs {
                let len = out.components[arc.component].len();
                let (a, b) = arc_positions(len, arc.position).ok_or_else(|| bad("arc out of range"))?;
                out.components[arc.component].swap(a, b);
            }
            Ok(out)
        }
    }
}

struct R2Pattern {
    /// over start, over second, under start, under second (positions)
    positions: [usize; 4],
    parallel: bool,
    first_sign: Sign,
}

fn r2_removal_pattern(code: &GaussCode, over: &Site, under: &Site) -> Result<R2Pattern, MoveError> {
    let oc = code
        .components
        .get(over.component)
        .ok_or_else(|| bad("component out of range"))?;
    let uc = code
        .components
        .get(under.component)
        .ok_or_else(|| bad("component out of range"))?;
    let (o1, o2) = arc_positions(oc.len(), over.position).ok_or_else(|| bad("over arc out of range"))?;
    let (u1, u2) = arc_positions(uc.len(), under.position).ok_or_else(|| bad("under arc out of range"))?;
    if over.component == under.component {
        let set: HashSet<usize> = [o1, o2, u1, u2].into_iter().collect();
        if set.len() != 4 {
            return Err(bad("arcs overlap"));
        }
    }
    let (a, b) = (oc[o1], oc[o2]);
    let (c, d) = (uc[u1], uc[u2]);
    if a.passage != Passage::Over || b.passage != Passage::Over {
        return Err(bad("over arc is not all-over"));
    }
    if c.passage != Passage::Under || d.passage != Passage::Under {
        return Err(bad("under arc is not all-under"));
    }
    if a.label == b.label {
        return Err(bad("over arc repeats a label"));
    }
    let parallel = if c.label == a.label && d.label == b.label {
        true
    } else if c.label == b.label && d.label == a.label {
        false
    } else {
        return Err(bad("arc labels do not match"));
    };
    if a.sign != b.sign.flip() {
        return Err(bad("crossing signs are not opposite"));
    }
    Ok(R2Pattern { positions: [o1, o2, u1, u2], parallel, first_sign: a.sign })
}

// ---------------------------------------------------------------------------
// R3 admissibility table
//
// Generated from concrete planar triangles: three lines crossing pairwise,
// parameterized by mirror image, strand orientations, and which strand is on
// top at each crossing (acyclic height patterns only). Roles: r = A∩B,
// s = A∩C, t = B∩C; along its base direction A meets (r, s), B meets (r, t),
// C meets (s, t), and all pairwise direction determinants share one sign.

type ArcSig = [(u8, bool, i8); 2];

const ROLE_R: u8 = 0;
const ROLE_S: u8 = 1;
const ROLE_T: u8 = 2;

fn r3_table() -> &'static HashSet<[ArcSig; 3]> {
    static TABLE: OnceLock<HashSet<[ArcSig; 3]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashSet::new();
        for chi in [1i8, -1] {
            for eps in 0u8..8 {
                let ea = if eps & 1 != 0 { -1i8 } else { 1 };
                let eb = if eps & 2 != 0 { -1 } else { 1 };
                let ec = if eps & 4 != 0 { -1 } else { 1 };
                for heights in 0u8..8 {
                    let a_over_b = heights & 1 != 0;
                    let a_over_c = heights & 2 != 0;
                    let b_over_c = heights & 4 != 0;
                    // exclude cyclic height patterns
                    if (a_over_b && b_over_c && !a_over_c)
                        || (!a_over_b && !b_over_c && a_over_c)
                    {
                        continue;
                    }
                    let pm = |b: bool| if b { 1i8 } else { -1 };
                    let sign_r = chi * ea * eb * pm(a_over_b);
                    let sign_s = chi * ea * ec * pm(a_over_c);
                    let sign_t = chi * eb * ec * pm(b_over_c);
                    let orient = |arc: ArcSig, e: i8| -> ArcSig {
                        if e > 0 {
                            arc
                        } else {
                            [arc[1], arc[0]]
                        }
                    };
                    let arc_a = orient(
                        [(ROLE_R, a_over_b, sign_r), (ROLE_S, a_over_c, sign_s)],
                        ea,
                    );
                    let arc_b = orient(
                        [(ROLE_R, !a_over_b, sign_r), (ROLE_T, b_over_c, sign_t)],
                        eb,
                    );
                    let arc_c = orient(
                        [(ROLE_S, !a_over_c, sign_s), (ROLE_T, !b_over_c, sign_t)],
                        ec,
                    );
                    table.insert([arc_a, arc_b, arc_c]);
                }
            }
        }
        table
    })
}

/// The two symbols of a candidate arc, in traversal order.
fn arc_symbols(code: &GaussCode, arc: &Site) -> Option<[Symbol; 2]> {
    let comp = code.components.get(arc.component)?;
    let (a, b) = arc_positions(comp.len(), arc.position)?;
    Some([comp[a], comp[b]])
}

/// Check three adjacent pairs against the triangle table, trying all
/// strand-role assignments.
fn r3_applicable(code: &GaussCode, arcs: &[Site; 3]) -> bool {
    // distinct position slots
    let mut slots = HashSet::new();
    for arc in arcs {
        let Some(comp) = code.components.get(arc.component) else { return false };
        let Some((a, b)) = arc_positions(comp.len(), arc.position) else { return false };
        if !slots.insert((arc.component, a)) || !slots.insert((arc.component, b)) {
            return false;
        }
    }
    let syms: Vec<[Symbol; 2]> = match arcs.iter().map(|a| arc_symbols(code, a)).collect::<Option<Vec<_>>>() {
        Some(v) => v,
        None => return false,
    };
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in perms {
        let (a, b, c) = (&syms[perm[0]], &syms[perm[1]], &syms[perm[2]]);
        let labels = |arc: &[Symbol; 2]| [arc[0].label, arc[1].label];
        let common = |x: [u32; 2], y: [u32; 2]| -> Option<u32> {
            let shared: Vec<u32> = x.iter().filter(|l| y.contains(l)).copied().collect();
            if shared.len() == 1 {
                Some(shared[0])
            } else {
                None
            }
        };
        let (Some(r), Some(s), Some(t)) = (
            common(labels(a), labels(b)),
            common(labels(a), labels(c)),
            common(labels(b), labels(c)),
        ) else {
            continue;
        };
        if r == s || r == t || s == t {
            continue;
        }
        let role_of = |l: u32| -> Option<u8> {
            if l == r {
                Some(ROLE_R)
            } else if l == s {
                Some(ROLE_S)
            } else if l == t {
                Some(ROLE_T)
            } else {
                None
            }
        };
        let encode = |arc: &[Symbol; 2]| -> Option<ArcSig> {
            let e0 = (role_of(arc[0].label)?, arc[0].passage == Passage::Over, arc[0].sign.value() as i8);
            let e1 = (role_of(arc[1].label)?, arc[1].passage == Passage::Over, arc[1].sign.value() as i8);
            Some([e0, e1])
        };
        let (Some(sa), Some(sb), Some(sc)) = (encode(a), encode(b), encode(c)) else {
            continue;
        };
        if r3_table().contains(&[sa, sb, sc]) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// inverses

impl MoveSpec {
    /// The move that undoes `self` when applied to `apply_move(code, self)`.
    /// Restores the exact linearization (labels may renumber).
    pub fn inverse(&self, code_before: &GaussCode) -> MoveSpec {
        match self {
            MoveSpec::R1Add { site, wrap, .. } => {
                let len = code_before.components[site.component].len();
                let position = if *wrap { len + 1 } else { site.position.min(len) };
                MoveSpec::R1Remove { site: Site::new(site.component, position) }
            }
            MoveSpec::R1Remove { site } => {
                let comp = &code_before.components[site.component];
                let (a, b) = arc_positions(comp.len(), site.position).expect("valid site");
                let wrap = b < a;
                MoveSpec::R1Add {
                    site: Site::new(site.component, if wrap { 0 } else { a }),
                    sign: comp[a].sign,
                    over_first: comp[a].passage == Passage::Over,
                    wrap,
                }
            }
            MoveSpec::R2Add {
                over,
                under,
                over_wrap,
                under_wrap,
                under_before,
                ..
            } => {
                // locate the arcs in the rewritten code
                let same = over.component == under.component;
                let over_len = code_before.components[over.component].len();
                let under_len = code_before.components[under.component].len();
                let over_start = if *over_wrap {
                    over_len + if same { 2 } else { 0 } + 1
                } else {
                    let mut p = over.position;
                    if same && !*under_wrap && (under.position < over.position
                        || (under.position == over.position && *under_before))
                    {
                        p += 2;
                    }
                    if same && *under_wrap {
                        p += 1;
                    }
                    p
                };
                let under_start = if *under_wrap {
                    under_len + if same { 2 } else { 0 } + 1
                } else {
                    let mut p = under.position;
                    if same && !*over_wrap && (over.position < under.position
                        || (over.position == under.position && !*under_before))
                    {
                        p += 2;
                    }
                    if same && *over_wrap {
                        p += 1;
                    }
                    p
                };
                MoveSpec::R2Remove {
                    over: Site::new(over.component, over_start),
                    under: Site::new(under.component, under_start),
                }
            }
            MoveSpec::R2Remove { over, under } => {
                let pattern = r2_removal_pattern(code_before, over, under).expect("valid removal");
                let [o1, o2, u1, u2] = pattern.positions;
                let over_wrap = o2 < o1;
                let under_wrap = u2 < u1;
                let same = over.component == under.component;
                let gap_for = |start: usize, other: [usize; 2], own_wrapped: bool| -> usize {
                    if own_wrapped {
                        return 0;
                    }
                    let mut gap = start;
                    if same {
                        gap -= other.iter().filter(|&&p| p < start).count();
                    }
                    gap
                };
                let over_gap = gap_for(o1, [u1, u2], over_wrap);
                let under_gap = gap_for(u1, [o1, o2], under_wrap);
                MoveSpec::R2Add {
                    over: Site::new(over.component, over_gap),
                    under: Site::new(under.component, under_gap),
                    parallel: pattern.parallel,
                    first_sign: pattern.first_sign,
                    over_wrap,
                    under_wrap,
                    under_before: same && !over_wrap && !under_wrap && u1 < o1,
                }
            }
            MoveSpec::R3 { arcs } => MoveSpec::R3 { arcs: *arcs },
        }
    }
}

// ---------------------------------------------------------------------------
// enumeration

/// All applicable moves, deterministic order: removals, R3, then additions
/// with every parameter choice, capped so results stay within
/// `max_crossings`.
pub fn enumerate_moves(code: &GaussCode, max_crossings: usize) -> Vec<(MoveSpec, GaussCode)> {
    let mut out = Vec::new();
    let n = code.crossing_count();

    let mut adjacent: Vec<(Site, [Symbol; 2])> = Vec::new();
    for (ci, comp) in code.components.iter().enumerate() {
        if comp.len() < 2 {
            continue;
        }
        for o in 0..comp.len() {
            let site = Site::new(ci, o);
            if let Some(syms) = arc_symbols(code, &site) {
                adjacent.push((site, syms));
            }
        }
    }

    // R1 removals
    for (site, syms) in &adjacent {
        if syms[0].label == syms[1].label {
            let spec = MoveSpec::R1Remove { site: *site };
            let next = apply_move(code, &spec).expect("detected kink applies");
            out.push((spec, next));
        }
    }

    // R2 removals
    for (os, osyms) in &adjacent {
        if osyms[0].passage != Passage::Over || osyms[1].passage != Passage::Over {
            continue;
        }
        for (us, _) in &adjacent {
            let spec = MoveSpec::R2Remove { over: *os, under: *us };
            if r2_removal_pattern(code, os, us).is_ok() {
                let next = apply_move(code, &spec).expect("detected pattern applies");
                out.push((spec, next));
            }
        }
    }

    // R3 triangles
    for i in 0..adjacent.len() {
        for j in (i + 1)..adjacent.len() {
            for k in (j + 1)..adjacent.len() {
                let arcs = [adjacent[i].0, adjacent[j].0, adjacent[k].0];
                if r3_applicable(code, &arcs) {
                    let spec = MoveSpec::R3 { arcs };
                    let next = apply_move(code, &spec).expect("admissible triangle applies");
                    out.push((spec, next));
                }
            }
        }
    }

    // R1 additions
    if n + 1 <= max_crossings {
        for (ci, comp) in code.components.iter().enumerate() {
            for gap in 0..comp.len().max(1) {
                for sign in [Sign::Plus, Sign::Minus] {
                    for over_first in [true, false] {
                        let spec = MoveSpec::R1Add {
                            site: Site::new(ci, gap),
                            sign,
                            over_first,
                            wrap: false,
                        };
                        let next = apply_move(code, &spec).expect("insertion applies");
                        out.push((spec, next));
                    }
                }
            }
        }
    }

    // R2 additions
    if n + 2 <= max_crossings {
        let gaps: Vec<Site> = code
            .components
            .iter()
            .enumerate()
            .flat_map(|(ci, comp)| (0..comp.len().max(1)).map(move |g| Site::new(ci, g)))
            .collect();
        for og in &gaps {
            for ug in &gaps {
                for parallel in [true, false] {
                    for first_sign in [Sign::Plus, Sign::Minus] {
                        let spec = MoveSpec::R2Add {
                            over: *og,
                            under: *ug,
                            parallel,
                            first_sign,
                            over_wrap: false,
                            under_wrap: false,
                            under_before: false,
                        };
                        let next = apply_move(code, &spec).expect("insertion applies");
                        out.push((spec, next));
                    }
                }
            }
        }
    }

    out
}

// ---------------------------------------------------------------------------
// traces

/// Replayable move sequence. Each step applies to the canonical form of the
/// previous code, starting from `canonical_form(start)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: GaussCode,
    pub steps: Vec<MoveSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub ok: bool,
    pub failed_step: Option<usize>,
    pub end: Option<GaussCode>,
}

impl MoveTrace {
    pub fn new(start: GaussCode, steps: Vec<MoveSpec>) -> MoveTrace {
        MoveTrace { start, steps }
    }

    /// Replay the trace; `None` with the failing step index on error.
    pub fn replay(&self) -> ReplayOutcome {
        let mut cur = canonical_form(&self.start);
        for (i, step) in self.steps.iter().enumerate() {
            match apply_move(&cur, step) {
                Ok(next) => {
                    if !crate::codes::validate(&next).is_valid() {
                        return ReplayOutcome { ok: false, failed_step: Some(i), end: None };
                    }
                    cur = canonical_form(&next);
                }
                Err(_) => return ReplayOutcome { ok: false, failed_step: Some(i), end: None },
            }
        }
        ReplayOutcome { ok: true, failed_step: None, end: Some(cur) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "start": serialize_gauss(&self.start),
            "steps": self.steps.iter().map(MoveSpec::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<MoveTrace> {
        let start = parse_gauss(v.get("start")?.as_str()?).ok()?;
        let steps = v
            .get("steps")?
            .as_array()?
            .iter()
            .map(MoveSpec::from_json)
            .collect::<Option<Vec<_>>>()?;
        Some(MoveTrace { start, steps })
    }
}

/// True iff replaying `t` from its start reaches `expected_end` up to
/// canonical relabeling (and basepoint rotation, which replay normalizes).
pub fn verify_trace(t: &MoveTrace, expected_end: &GaussCode) -> bool {
    match t.replay() {
        ReplayOutcome { ok: true, end: Some(end), .. } => {
            canonical_relabel(&end) == canonical_relabel(&canonical_form(expected_end))
        }
        _ => false,
    }
}

fn site_json(s: &Site) -> serde_json::Value {
    json!([s.component, s.position])
}

fn site_from_json(v: &serde_json::Value) -> Option<Site> {
    let arr = v.as_array()?;
    Some(Site::new(arr.first()?.as_u64()? as usize, arr.get(1)?.as_u64()? as usize))
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

fn sign_from_str(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

impl MoveSpec {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            MoveSpec::R1Add { site, sign, over_first, wrap } => json!({
                "kind": "r1_add",
                "site": site_json(site),
                "params": {"sign": sign_str(*sign), "over_first": over_first, "wrap": wrap},
            }),
            MoveSpec::R1Remove { site } => json!({
                "kind": "r1_remove",
                "site": site_json(site),
            }),
            MoveSpec::R2Add {
                over,
                under,
                parallel,
                first_sign,
                over_wrap,
                under_wrap,
                under_before,
            } => json!({
                "kind": "r2_add",
                "site": [site_json(over), site_json(under)],
                "params": {
                    "parallel": parallel,
                    "first_sign": sign_str(*first_sign),
                    "over_wrap": over_wrap,
                    "under_wrap": under_wrap,
                    "under_before": under_before,
                },
            }),
            MoveSpec::R2Remove { over, under } => json!({
                "kind": "r2_remove",
                "site": [site_json(over), site_json(under)],
            }),
            MoveSpec::R3 { arcs } => json!({
                "kind": "r3",
                "site": arcs.iter().map(site_json).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Option<MoveSpec> {
        let kind = v.get("kind")?.as_str()?;
        let site = v.get("site")?;
        match kind {
            "r1_add" => {
                let params = v.get("params")?;
                Some(MoveSpec::R1Add {
                    site: site_from_json(site)?,
                    sign: sign_from_str(params.get("sign")?.as_str()?)?,
                    over_first: params.get("over_first")?.as_bool()?,
                    wrap: params.get("wrap")?.as_bool()?,
                })
            }
            "r1_remove" => Some(MoveSpec::R1Remove { site: site_from_json(site)? }),
            "r2_add" => {
                let arr = site.as_array()?;
                let params = v.get("params")?;
                Some(MoveSpec::R2Add {
                    over: site_from_json(arr.first()?)?,
                    under: site_from_json(arr.get(1)?)?,
                    parallel: params.get("parallel")?.as_bool()?,
                    first_sign: sign_from_str(params.get("first_sign")?.as_str()?)?,
                    over_wrap: params.get("over_wrap")?.as_bool()?,
                    under_wrap: params.get("under_wrap")?.as_bool()?,
                    under_before: params.get("under_before")?.as_bool()?,
                })
            }
            "r2_remove" => {
                let arr = site.as_array()?;
                Some(MoveSpec::R2Remove {
                    over: site_from_json(arr.first()?)?,
                    under: site_from_json(arr.get(1)?)?,
                })
            }
            "r3" => {
                let arr = site.as_array()?;
                if arr.len() != 3 {
                    return None;
                }
                Some(MoveSpec::R3 {
                    arcs: [
                        site_from_json(&arr[0])?,
                        site_from_json(&arr[1])?,
                        site_from_json(&arr[2])?,
                    ],
                })
            }
            _ => None,
        }
    }
}
