//! Signed, oriented Gauss codes for virtual link diagrams.
//!
//! Text format: one symbol per passage, `O`/`U` + decimal label + `+`/`-`,
//! components joined by `/`, a crossing-free component spelled `0`.
//! Example: `O1+U2+O3+U1+O2+U3+` (trefoil), `O1+/U1+` (virtual Hopf link).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Whether the strand passes over or under at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Passage {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }
}

/// Crossing sign, stored redundantly at both passages of a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// One passage through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub label: u32,
    pub passage: Passage,
    pub sign: Sign,
}

impl Symbol {
    pub fn new(label: u32, passage: Passage, sign: Sign) -> Symbol {
        Symbol { label, passage, sign }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.passage {
            Passage::Over => 'O',
            Passage::Under => 'U',
        };
        write!(f, "{}{}{}", p, self.label, self.sign)
    }
}

/// A multi-component signed Gauss code. Components are ordered and oriented;
/// a crossing-free component is an empty symbol sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussCode {
    pub components: Vec<Vec<Symbol>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input: a link needs at least one component")]
    Empty,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid code: {0}")]
    Invalid(ValidationReport),
}

/// A single invariant violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    /// Label does not occur exactly twice.
    OccurrenceCount { label: u32, count: usize },
    /// Label occurs twice with the same passage.
    PassageClash { label: u32, passage: Passage },
    /// The two occurrences of a label disagree on sign.
    SignMismatch { label: u32 },
    /// Zero is not a legal crossing label.
    ZeroLabel,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::OccurrenceCount { label, count } => {
                write!(f, "label {label} occurs {count} time(s), expected 2")
            }
            ValidationIssue::PassageClash { label, passage } => {
                let p = match passage {
                    Passage::Over => "Over",
                    Passage::Under => "Under",
                };
                write!(f, "label {label} occurs twice as {p}")
            }
            ValidationIssue::SignMismatch { label } => {
                write!(f, "label {label} carries different signs at its two passages")
            }
            ValidationIssue::ZeroLabel => write!(f, "label 0 is not allowed"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        let msgs: Vec<String> = self.issues.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

impl std::error::Error for ValidationReport {}

impl GaussCode {
    /// Total number of crossings (distinct labels).
    pub fn crossing_count(&self) -> usize {
        let mut labels: Vec<u32> = self
            .components
            .iter()
            .flatten()
            .map(|s| s.label)
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Largest label in use, 0 if none.
    pub fn max_label(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(|s| s.label)
            .max()
            .unwrap_or(0)
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        let mut seen = std::collections::HashSet::new();
        let mut w = 0;
        for s in self.components.iter().flatten() {
            if seen.insert(s.label) {
                w += s.sign.value();
            }
        }
        w
    }

    /// Sign of the given crossing label, if present.
    pub fn sign_of(&self, label: u32) -> Option<Sign> {
        self.components
            .iter()
            .flatten()
            .find(|s| s.label == label)
            .map(|s| s.sign)
    }

    /// The sub-code spelled by the chosen components, keeping only crossings
    /// whose both passages stay inside the selection.
    pub fn restrict_to(&self, component_indices: &[usize]) -> GaussCode {
        let keep: std::collections::HashSet<usize> = component_indices.iter().copied().collect();
        let mut label_comp: std::collections::HashMap<u32, Vec<usize>> =
            std::collections::HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for s in comp {
                label_comp.entry(s.label).or_default().push(ci);
            }
        }
        let components = component_indices
            .iter()
            .map(|&ci| {
                self.components[ci]
                    .iter()
                    .filter(|s| label_comp[&s.label].iter().all(|c| keep.contains(c)))
                    .copied()
                    .collect()
            })
            .collect();
        GaussCode { components }
    }

    /// The i-th component as a standalone knot code (self-crossings only).
    pub fn component_knot(&self, index: usize) -> GaussCode {
        self.restrict_to(&[index])
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize_gauss(self))
    }
}

/// Parse the text format. Whitespace is ignored between tokens.
pub fn parse_gauss(text: &str) -> Result<GaussCode, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut components: Vec<Vec<Symbol>> = Vec::new();
    let mut current: Vec<Symbol> = Vec::new();
    let mut current_empty_marker = false;
    let mut saw_anything = false;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    while pos < bytes.len() {
        match bytes[pos] {
            b'/' => {
                if !saw_anything || (current.is_empty() && !current_empty_marker) {
                    return Err(ParseError::Syntax {
                        position: pos,
                        message: "component before '/' is missing".into(),
                    });
                }
                components.push(std::mem::take(&mut current));
                current_empty_marker = false;
                pos += 1;
            }
            b'0' => {
                if !current.is_empty() || current_empty_marker {
                    return Err(ParseError::Syntax {
                        position: pos,
                        message: "'0' must stand alone as a component".into(),
                    });
                }
                current_empty_marker = true;
                saw_anything = true;
                pos += 1;
            }
            b'O' | b'U' => {
                if current_empty_marker {
                    return Err(ParseError::Syntax {
                        position: pos,
                        message: "'0' must stand alone as a component".into(),
                    });
                }
                let passage = if bytes[pos] == b'O' { Passage::Over } else { Passage::Under };
                pos += 1;
                skip_ws(&mut pos);
                let digit_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if digit_start == pos {
                    return Err(ParseError::Syntax {
                        position: pos,
                        message: "expected a crossing label".into(),
                    });
                }
                let label: u32 = text[digit_start..pos].parse().map_err(|_| ParseError::Syntax {
                    position: digit_start,
                    message: "crossing label out of range".into(),
                })?;
                if label == 0 {
                    return Err(ParseError::Syntax {
                        position: digit_start,
                        message: "crossing labels start at 1".into(),
                    });
                }
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(ParseError::Syntax {
                        position: pos,
                        message: "expected '+' or '-' after the label".into(),
                    });
                }
                let sign = match bytes[pos] {
                    b'+' => Sign::Plus,
                    b'-' => Sign::Minus,
                    _ => {
                        return Err(ParseError::Syntax {
                            position: pos,
                            message: "expected '+' or '-' after the label".into(),
                        })
                    }
                };
                pos += 1;
                current.push(Symbol { label, passage, sign });
                saw_anything = true;
            }
            other => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!("unexpected character '{}'", other as char),
                });
            }
        }
        skip_ws(&mut pos);
    }

    if !saw_anything {
        return Err(ParseError::Empty);
    }
    if current.is_empty() && !current_empty_marker {
        return Err(ParseError::Syntax {
            position: bytes.len(),
            message: "trailing '/' without a component".into(),
        });
    }
    components.push(current);

    let code = GaussCode { components };
    let report = validate(&code);
    if !report.is_valid() {
        return Err(ParseError::Invalid(report));
    }
    Ok(code)
}

/// Check the Gauss-code invariants. An empty report means the code is valid.
pub fn validate(code: &GaussCode) -> ValidationReport {
    use std::collections::BTreeMap;
    let mut report = ValidationReport::default();
    let mut occ: BTreeMap<u32, Vec<Symbol>> = BTreeMap::new();
    for s in code.components.iter().flatten() {
        if s.label == 0 {
            if !report.issues.contains(&ValidationIssue::ZeroLabel) {
                report.issues.push(ValidationIssue::ZeroLabel);
            }
            continue;
        }
        occ.entry(s.label).or_default().push(*s);
    }
    for (label, syms) in occ {
        if syms.len() != 2 {
            report
                .issues
                .push(ValidationIssue::OccurrenceCount { label, count: syms.len() });
            continue;
        }
        if syms[0].passage == syms[1].passage {
            report.issues.push(ValidationIssue::PassageClash {
                label,
                passage: syms[0].passage,
            });
        }
        if syms[0].sign != syms[1].sign {
            report.issues.push(ValidationIssue::SignMismatch { label });
        }
    }
    report
}

/// Unique spelling of a code; `parse_gauss` is a left inverse.
pub fn serialize_gauss(code: &GaussCode) -> String {
    code.components
        .iter()
        .map(|comp| {
            if comp.is_empty() {
                "0".to_string()
            } else {
                comp.iter().map(|s| s.to_string()).collect::<String>()
            }
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// Renumber labels 1..n in order of first appearance. Idempotent; the diagram
/// itself is unchanged.
pub fn canonical_relabel(code: &GaussCode) -> GaussCode {
    use std::collections::HashMap;
    let mut map: HashMap<u32, u32> = HashMap::new();
    let mut next = 1u32;
    let components = code
        .components
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|s| {
                    let label = *map.entry(s.label).or_insert_with(|| {
                        let l = next;
                        next += 1;
                        l
                    });
                    Symbol { label, ..*s }
                })
                .collect()
        })
        .collect();
    GaussCode { components }
}

fn rotate_component(comp: &[Symbol], by: usize) -> Vec<Symbol> {
    if comp.is_empty() {
        return Vec::new();
    }
    let n = comp.len();
    (0..n).map(|i| comp[(i + by) % n]).collect()
}

/// Label-free per-symbol token used to pick canonical rotations without
/// inspecting labels: (passage, sign, partner location class).
fn rotation_token(code: &GaussCode, comp_idx: usize, sym_idx: usize) -> (u8, u8, u8, usize) {
    let s = code.components[comp_idx][sym_idx];
    let p = matches!(s.passage, Passage::Over) as u8;
    let g = matches!(s.sign, Sign::Plus) as u8;
    // find the partner occurrence
    for (ci, comp) in code.components.iter().enumerate() {
        for (si, t) in comp.iter().enumerate() {
            if t.label == s.label && (ci != comp_idx || si != sym_idx) {
                if ci == comp_idx {
                    let n = comp.len();
                    let dist = (si + n - sym_idx) % n;
                    return (p, g, 0, dist);
                }
                return (p, g, 1, ci);
            }
        }
    }
    (p, g, 2, 0)
}

/// Rotations of one component whose label-free cyclic reading is minimal.
fn minimal_rotations(code: &GaussCode, comp_idx: usize) -> Vec<usize> {
    let n = code.components[comp_idx].len();
    if n == 0 {
        return vec![0];
    }
    let tokens: Vec<_> = (0..n).map(|i| rotation_token(code, comp_idx, i)).collect();
    let reading = |start: usize| -> Vec<&(u8, u8, u8, usize)> {
        (0..n).map(|i| &tokens[(start + i) % n]).collect()
    };
    let mut best = reading(0);
    let mut rots = vec![0usize];
    for r in 1..n {
        let cand = reading(r);
        match cand.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = cand;
                rots = vec![r];
            }
            std::cmp::Ordering::Equal => rots.push(r),
            std::cmp::Ordering::Greater => {}
        }
    }
    rots
}

/// Canonical form: relabeled, with each component rotated so that the full
/// serialization is lexicographically least over all basepoint choices.
/// Component order is preserved; it is part of the link's presentation.
pub fn canonical_form(code: &GaussCode) -> GaussCode {
    let per_comp: Vec<Vec<usize>> = (0..code.components.len())
        .map(|ci| minimal_rotations(code, ci))
        .collect();
    let mut best: Option<(String, GaussCode)> = None;
    let mut choice: Vec<usize> = vec![0; per_comp.len()];
    loop {
        let rotated = GaussCode {
            components: code
                .components
                .iter()
                .enumerate()
                .map(|(ci, comp)| rotate_component(comp, per_comp[ci][choice[ci]]))
                .collect(),
        };
        let candidate = canonical_relabel(&rotated);
        let key = serialize_gauss(&candidate);
        if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
            best = Some((key, candidate));
        }
        // advance the mixed-radix counter over tied rotations
        let mut i = 0;
        loop {
            if i == choice.len() {
                let (_, code) = best.unwrap();
                return code;
            }
            choice[i] += 1;
            if choice[i] < per_comp[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Serialized canonical form; equal keys mean the codes differ only by
/// relabeling and basepoint rotation.
pub fn canonical_key(code: &GaussCode) -> String {
    serialize_gauss(&canonical_form(code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gc(text: &str) -> GaussCode {
        parse_gauss(text).unwrap()
    }

    #[test]
    fn parse_trefoil() {
        let c = gc("O1+U2+O3+U1+O2+U3+");
        assert_eq!(c.component_count(), 1);
        assert_eq!(c.crossing_count(), 3);
        assert!(c.components[0].iter().all(|s| s.sign == Sign::Plus));
    }

    #[test]
    fn parse_empty_component() {
        let c = gc("0");
        assert_eq!(c.component_count(), 1);
        assert_eq!(c.crossing_count(), 0);
    }

    #[test]
    fn parse_virtual_hopf() {
        let c = gc("O1+/U1+");
        assert_eq!(c.component_count(), 2);
        assert_eq!(c.crossing_count(), 1);
        assert_eq!(c.components[0][0].passage, Passage::Over);
    }

    #[test]
    fn parse_whitespace_insensitive() {
        assert_eq!(gc(" O1+ U1+ "), gc("O1+U1+"));
        assert_eq!(gc("O1+ / U1+"), gc("O1+/U1+"));
    }

    #[test]
    fn parse_rejects_empty_link() {
        assert_eq!(parse_gauss(""), Err(ParseError::Empty));
        assert_eq!(parse_gauss("   "), Err(ParseError::Empty));
    }

    #[test]
    fn parse_reports_position() {
        match parse_gauss("O1+Ux+") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn validate_accepts_kink() {
        assert!(validate(&gc("O1+U1+")).is_valid());
    }

    #[test]
    fn validate_rejects_double_over() {
        let code = GaussCode {
            components: vec![vec![
                Symbol::new(1, Passage::Over, Sign::Plus),
                Symbol::new(1, Passage::Over, Sign::Plus),
            ]],
        };
        let r = validate(&code);
        assert_eq!(
            r.issues,
            vec![ValidationIssue::PassageClash { label: 1, passage: Passage::Over }]
        );
    }

    #[test]
    fn validate_rejects_sign_mismatch() {
        let code = GaussCode {
            components: vec![vec![
                Symbol::new(1, Passage::Over, Sign::Plus),
                Symbol::new(1, Passage::Under, Sign::Minus),
            ]],
        };
        let r = validate(&code);
        assert_eq!(r.issues, vec![ValidationIssue::SignMismatch { label: 1 }]);
    }

    #[test]
    fn serialize_round_trip() {
        for text in ["O1+U1+", "O1+U1+/0", "O1+U2+O3+U1+O2+U3+", "0/0", "O7-/U7-"] {
            let c = gc(text);
            assert_eq!(serialize_gauss(&c), text);
            assert_eq!(gc(&serialize_gauss(&c)), c);
        }
    }

    #[test]
    fn relabel_single() {
        assert_eq!(serialize_gauss(&canonical_relabel(&gc("O7+U7+"))), "O1+U1+");
    }

    #[test]
    fn relabel_first_appearance() {
        assert_eq!(
            serialize_gauss(&canonical_relabel(&gc("O2+O1+U2+U1+"))),
            "O1+O2+U1+U2+"
        );
    }

    #[test]
    fn relabel_idempotent() {
        for text in ["O3-U5+O5+U3-", "O2+O1+U2+U1+", "O9+/U9+"] {
            let once = canonical_relabel(&gc(text));
            assert_eq!(canonical_relabel(&once), once);
        }
    }

    #[test]
    fn canonical_form_quotients_rotation() {
        let a = gc("O1+U2+O3+U1+O2+U3+");
        let b = gc("U2+O3+U1+O2+U3+O1+"); // same diagram, rotated basepoint
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn canonical_form_separates_links() {
        assert_ne!(canonical_key(&gc("O1+U1+")), canonical_key(&gc("O1-U1-")));
        assert_ne!(canonical_key(&gc("O1+/U1+")), canonical_key(&gc("U1+/O1+")));
    }

    #[test]
    fn component_knot_extraction() {
        let hopf = gc("O1+U2+/U1+O2+");
        assert_eq!(serialize_gauss(&hopf.component_knot(0)), "0");
        let mixed = gc("O1+U1+O2+/U2+");
        assert_eq!(serialize_gauss(&mixed.component_knot(0)), "O1+U1+");
    }
}
