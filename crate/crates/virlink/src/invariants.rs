//! Move-invariant fingerprints: Kauffman bracket and f-polynomial, odd
//! writhe, linking matrix, and p-coloring counts.
//!
//! The bracket is normalized so that the unknot evaluates to 1 and an extra
//! loop multiplies by δ = -A^2 - A^-2. Two evaluators are provided: a 2^n
//! state sum over end matchings and a skein-recursion on rewired component
//! words. They must agree exactly; tests and the acceptance suite hold them
//! to that.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{GaussCode, Passage, Sign};
use crate::poly::LaurentPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("odd writhe is defined for knots; this code has {0} components")]
    NotAKnot(usize),
    #[error("unsupported coloring modulus {0}; use 3, 5, or 7")]
    UnsupportedPrime(u32),
}

pub const COLORING_PRIMES: [u32; 3] = [3, 5, 7];

/// Tuple of computed invariants. Equality of fingerprints is necessary for
/// link equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub component_count: usize,
    pub f_poly: LaurentPoly,
    /// Knots only; `None` for multi-component links.
    pub odd_writhe: Option<i64>,
    /// Entry (i, j): (sum of signs where i passes over j, sum where i passes
    /// under j). Diagonal entries are (0, 0).
    pub linking_matrix: Vec<Vec<(i64, i64)>>,
    pub coloring_counts: BTreeMap<u32, u64>,
}

impl Fingerprint {
    pub fn to_json(&self) -> serde_json::Value {
        let linking: Vec<Vec<serde_json::Value>> = self
            .linking_matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(o, u)| serde_json::json!([o, u]))
                    .collect()
            })
            .collect();
        let mut colorings = serde_json::Map::new();
        for (&p, &n) in &self.coloring_counts {
            colorings.insert(p.to_string(), serde_json::Value::from(n));
        }
        serde_json::json!({
            "components": self.component_count,
            "f_poly": self.f_poly.to_json(),
            "odd_writhe": self.odd_writhe,
            "linking": linking,
            "colorings": colorings,
        })
    }
}

// Crossing ends, 4 per crossing: over-in, over-out, under-in, under-out.
const OI: usize = 0;
const OO: usize = 1;
const UI: usize = 2;
const UO: usize = 3;

struct EndStructure {
    /// crossing index per label order of first appearance
    labels: Vec<u32>,
    signs: Vec<Sign>,
    /// strand edges as an involution on end ids (4*crossing + end kind)
    edge_partner: Vec<usize>,
    /// components with no crossings contribute a loop to every state
    free_loops: usize,
}

fn end_structure(code: &GaussCode) -> EndStructure {
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut signs = Vec::new();
    for s in code.components.iter().flatten() {
        index.entry(s.label).or_insert_with(|| {
            labels.push(s.label);
            signs.push(s.sign);
            labels.len() - 1
        });
    }
    let n = labels.len();
    let mut edge_partner = vec![usize::MAX; 4 * n];
    let mut free_loops = 0;
    for comp in &code.components {
        if comp.is_empty() {
            free_loops += 1;
            continue;
        }
        let m = comp.len();
        for i in 0..m {
            let a = &comp[i];
            let b = &comp[(i + 1) % m];
            let ca = index[&a.label];
            let cb = index[&b.label];
            let out_end = 4 * ca + if a.passage == Passage::Over { OO } else { UO };
            let in_end = 4 * cb + if b.passage == Passage::Over { OI } else { UI };
            edge_partner[out_end] = in_end;
            edge_partner[in_end] = out_end;
        }
    }
    EndStructure { labels, signs, edge_partner, free_loops }
}

/// Smoothing arcs at one crossing. The A-smoothing of a positive crossing is
/// the orientation-coherent one (in-ends join to out-ends); for a negative
/// crossing the roles swap. Fixed by the positive-kink value -A^3.
fn smoothing_arcs(sign: Sign, pick_a: bool) -> [(usize, usize); 2] {
    let oriented = (sign == Sign::Plus) == pick_a;
    if oriented {
        [(OI, UO), (UI, OO)]
    } else {
        [(OO, UO), (OI, UI)]
    }
}

fn state_loops(ends: &EndStructure, state: u64) -> usize {
    let n = ends.labels.len();
    let mut arc_partner = vec![usize::MAX; 4 * n];
    for c in 0..n {
        let pick_a = state & (1 << c) != 0;
        for (x, y) in smoothing_arcs(ends.signs[c], pick_a) {
            arc_partner[4 * c + x] = 4 * c + y;
            arc_partner[4 * c + y] = 4 * c + x;
        }
    }
    let mut seen = vec![false; 4 * n];
    let mut loops = ends.free_loops;
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut e = start;
        loop {
            seen[e] = true;
            let via_arc = arc_partner[e];
            seen[via_arc] = true;
            e = ends.edge_partner[via_arc];
            if e == start {
                break;
            }
        }
    }
    loops
}

fn delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

fn delta_pow(k: usize) -> LaurentPoly {
    let d = delta();
    let mut out = LaurentPoly::one();
    for _ in 0..k {
        out = &out * &d;
    }
    out
}

/// Kauffman bracket by explicit enumeration of all 2^n smoothing states.
pub fn kauffman_bracket(code: &GaussCode) -> LaurentPoly {
    bracket_state_sum(code, false)
}

/// State-sum bracket; `parallel` fans the state range across threads and must
/// return the identical polynomial.
pub fn bracket_state_sum(code: &GaussCode, parallel: bool) -> LaurentPoly {
    let ends = end_structure(code);
    let n = ends.labels.len();
    assert!(n < 63, "state sum limited to 62 crossings");
    let term = |state: u64| {
        let a_count = state.count_ones() as i64;
        let exp = a_count - (n as i64 - a_count);
        let loops = state_loops(&ends, state);
        (exp, loops)
    };
    let mut out = LaurentPoly::zero();
    if parallel {
        let partial: Vec<(i64, usize)> = (0u64..1 << n).into_par_iter().map(term).collect();
        for (exp, loops) in partial {
            let t = &LaurentPoly::term(1, exp) * &delta_pow(loops - 1);
            out = &out + &t;
        }
    } else {
        for state in 0u64..1 << n {
            let (exp, loops) = term(state);
            let t = &LaurentPoly::term(1, exp) * &delta_pow(loops - 1);
            out = &out + &t;
        }
    }
    out
}

/// Partially smoothed diagram for the skein recursion: component words over
/// the remaining crossings, plus closed crossing-free loops.
#[derive(Clone)]
struct SkeinState {
    words: Vec<Vec<(u32, Passage)>>,
    signs: HashMap<u32, Sign>,
    loops: usize,
}

impl SkeinState {
    fn from_code(code: &GaussCode) -> SkeinState {
        let mut signs = HashMap::new();
        let mut loops = 0;
        let mut words = Vec::new();
        for comp in &code.components {
            if comp.is_empty() {
                loops += 1;
                continue;
            }
            words.push(comp.iter().map(|s| (s.label, s.passage)).collect());
            for s in comp {
                signs.insert(s.label, s.sign);
            }
        }
        SkeinState { words, signs, loops }
    }

    fn find(&self, label: u32, passage: Passage) -> (usize, usize) {
        for (wi, w) in self.words.iter().enumerate() {
            for (si, &(l, p)) in w.iter().enumerate() {
                if l == label && p == passage {
                    return (wi, si);
                }
            }
        }
        unreachable!("label {label} not present");
    }

    /// Flip stored signs of crossings with exactly one passage inside the
    /// reversed segment.
    fn flip_signs_for_reversal(&mut self, segment: &[(u32, Passage)]) {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for &(l, _) in segment {
            *counts.entry(l).or_insert(0) += 1;
        }
        for (l, c) in counts {
            if c == 1 {
                let s = self.signs.get_mut(&l).expect("sign present");
                *s = s.flip();
            }
        }
    }

    /// Resolve one crossing. `oriented` joins over-in→under-out and
    /// under-in→over-out; the disoriented smoothing joins out-ends together,
    /// reversing part of the strand.
    fn smooth(&mut self, label: u32, oriented: bool) {
        let (wo, so) = self.find(label, Passage::Over);
        let (wu, su) = self.find(label, Passage::Under);
        self.signs.remove(&label);
        if wo == wu {
            let w = self.words[wo].clone();
            let (first, second) = if so < su { (so, su) } else { (su, so) };
            let mid: Vec<_> = w[first + 1..second].to_vec();
            let mut outer: Vec<_> = w[second + 1..].to_vec();
            outer.extend_from_slice(&w[..first]);
            self.words.swap_remove(wo);
            if oriented {
                // splits into (outer) and (mid)
                for part in [outer, mid] {
                    if part.is_empty() {
                        self.loops += 1;
                    } else {
                        self.words.push(part);
                    }
                }
            } else {
                // one component; the middle segment reverses
                self.flip_signs_for_reversal(&mid);
                let mut joined = outer;
                joined.extend(mid.into_iter().rev());
                if joined.is_empty() {
                    self.loops += 1;
                } else {
                    self.words.push(joined);
                }
            }
        } else {
            // rotate so the over occurrence is last in its word and the under
            // occurrence first in its word, then drop both and splice
            let mut a = self.words[wo].clone();
            let alen = a.len();
            a.rotate_left((so + 1) % alen);
            a.pop();
            let mut b = self.words[wu].clone();
            b.rotate_left(su);
            b.remove(0);
            let (hi, lo) = if wo > wu { (wo, wu) } else { (wu, wo) };
            self.words.swap_remove(hi);
            self.words.swap_remove(lo);
            if !oriented {
                self.flip_signs_for_reversal(&b);
                b.reverse();
            }
            a.extend(b);
            if a.is_empty() {
                self.loops += 1;
            } else {
                self.words.push(a);
            }
        }
    }
}

fn skein_eval(state: &SkeinState) -> LaurentPoly {
    let label = state
        .words
        .iter()
        .flatten()
        .map(|&(l, _)| l)
        .min();
    let Some(label) = label else {
        return delta_pow(state.loops.saturating_sub(1));
    };
    let sign = state.signs[&label];
    let mut a_branch = state.clone();
    a_branch.smooth(label, sign == Sign::Plus);
    let mut b_branch = state.clone();
    b_branch.smooth(label, sign == Sign::Minus);
    let pa = &LaurentPoly::term(1, 1) * &skein_eval(&a_branch);
    let pb = &LaurentPoly::term(1, -1) * &skein_eval(&b_branch);
    &pa + &pb
}

/// Kauffman bracket by skein recursion on rewired component words. The
/// independent second route of the oracle pair.
pub fn bracket_skein(code: &GaussCode) -> LaurentPoly {
    skein_eval(&SkeinState::from_code(code))
}

/// Writhe-normalized bracket, invariant under all moves:
/// f = (-A^3)^(-w) * bracket.
pub fn f_polynomial(code: &GaussCode) -> LaurentPoly {
    kauffman_bracket(code).mul_neg_a3_pow(-code.writhe())
}

/// Sum of signs of odd crossings. A crossing is odd when an odd number of
/// symbols sits strictly between its two passages in the cyclic word.
pub fn odd_writhe(code: &GaussCode) -> Result<i64, InvariantError> {
    if code.component_count() != 1 {
        return Err(InvariantError::NotAKnot(code.component_count()));
    }
    let word = &code.components[0];
    let mut positions: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, s) in word.iter().enumerate() {
        positions.entry(s.label).or_default().push(i);
    }
    let mut total = 0;
    for (label, pos) in positions {
        let between = pos[1] - pos[0] - 1;
        if between % 2 == 1 {
            total += code.sign_of(label).expect("label present").value();
        }
    }
    Ok(total)
}

/// Per ordered component pair (i, j): (over sum, under sum) of crossing signs
/// where component i passes over / under component j. Diagonal is (0, 0).
pub fn linking_matrix(code: &GaussCode) -> Vec<Vec<(i64, i64)>> {
    let k = code.component_count();
    let mut comp_of: HashMap<(u32, Passage), usize> = HashMap::new();
    for (ci, comp) in code.components.iter().enumerate() {
        for s in comp {
            comp_of.insert((s.label, s.passage), ci);
        }
    }
    let mut over = vec![vec![0i64; k]; k];
    let mut seen = HashSet::new();
    for s in code.components.iter().flatten() {
        if !seen.insert(s.label) {
            continue;
        }
        let ci = comp_of[&(s.label, Passage::Over)];
        let cj = comp_of[&(s.label, Passage::Under)];
        if ci != cj {
            over[ci][cj] += s.sign.value();
        }
    }
    (0..k)
        .map(|i| (0..k).map(|j| (over[i][j], over[j][i])).collect())
        .collect()
}

/// Arc decomposition for colorings: arcs are maximal runs between under
/// passages; a component with no under passage is one free arc. Returns, per
/// component, the arc id covering each symbol position, plus the arc count.
struct Arcs {
    arc_of_pos: Vec<Vec<usize>>,
    count: usize,
}

fn arcs(code: &GaussCode) -> Arcs {
    let mut arc_of_pos = Vec::new();
    let mut next = 0usize;
    for comp in &code.components {
        let n = comp.len();
        if n == 0 {
            // a crossing-free circle is one free arc
            arc_of_pos.push(Vec::new());
            next += 1;
            continue;
        }
        let unders: Vec<usize> = (0..n).filter(|&i| comp[i].passage == Passage::Under).collect();
        if unders.is_empty() {
            arc_of_pos.push(vec![next; n]);
            next += 1;
            continue;
        }
        // arc m ends at (and includes) the m-th under passage
        let mut ids = vec![usize::MAX; n];
        for (m, &u) in unders.iter().enumerate() {
            let prev = unders[(m + unders.len() - 1) % unders.len()];
            let arc = next + m;
            let mut i = (prev + 1) % n;
            loop {
                ids[i] = arc;
                if i == u {
                    break;
                }
                i = (i + 1) % n;
            }
        }
        next += unders.len();
        arc_of_pos.push(ids);
    }
    Arcs { arc_of_pos, count: next }
}

struct ColoringSystem {
    /// each row: (over_arc, in_arc, out_arc)
    rows: Vec<(usize, usize, usize)>,
    arc_count: usize,
}

fn coloring_system(code: &GaussCode) -> ColoringSystem {
    let arcs = arcs(code);
    let mut over_pos: HashMap<u32, (usize, usize)> = HashMap::new();
    let mut under_pos: HashMap<u32, (usize, usize)> = HashMap::new();
    for (ci, comp) in code.components.iter().enumerate() {
        for (si, s) in comp.iter().enumerate() {
            match s.passage {
                Passage::Over => over_pos.insert(s.label, (ci, si)),
                Passage::Under => under_pos.insert(s.label, (ci, si)),
            };
        }
    }
    let mut rows = Vec::new();
    let mut labels: Vec<u32> = under_pos.keys().copied().collect();
    labels.sort_unstable();
    for label in labels {
        let (ci, si) = under_pos[&label];
        let (oc, os) = over_pos[&label];
        let comp_len = code.components[ci].len();
        let in_arc = arcs.arc_of_pos[ci][si];
        let out_arc = arcs.arc_of_pos[ci][(si + 1) % comp_len];
        let over_arc = arcs.arc_of_pos[oc][os];
        rows.push((over_arc, in_arc, out_arc));
    }
    ColoringSystem { rows, arc_count: arcs.count }
}

fn coloring_count_brute(sys: &ColoringSystem, p: u32) -> u64 {
    let p = p as u64;
    let total = p.pow(sys.arc_count as u32);
    let mut count = 0;
    let mut colors = vec![0u64; sys.arc_count];
    for mut idx in 0..total {
        for c in colors.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        let ok = sys
            .rows
            .iter()
            .all(|&(o, i, j)| (2 * colors[o]) % p == (colors[i] + colors[j]) % p);
        if ok {
            count += 1;
        }
    }
    count
}

fn coloring_count_rank(sys: &ColoringSystem, p: u32) -> u64 {
    let p = p as i64;
    let mut matrix: Vec<Vec<i64>> = sys
        .rows
        .iter()
        .map(|&(o, i, j)| {
            let mut row = vec![0i64; sys.arc_count];
            row[o] = (row[o] + 2).rem_euclid(p);
            row[i] = (row[i] - 1).rem_euclid(p);
            row[j] = (row[j] - 1).rem_euclid(p);
            row
        })
        .collect();
    // Gaussian elimination mod p
    let mut rank = 0usize;
    for col in 0..sys.arc_count {
        let Some(pivot) = (rank..matrix.len()).find(|&r| matrix[r][col] != 0) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let inv = mod_inverse(matrix[rank][col], p);
        for v in matrix[rank].iter_mut() {
            *v = (*v * inv).rem_euclid(p);
        }
        for r in 0..matrix.len() {
            if r != rank && matrix[r][col] != 0 {
                let factor = matrix[r][col];
                for c in 0..sys.arc_count {
                    matrix[r][c] = (matrix[r][c] - factor * matrix[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == matrix.len() {
            break;
        }
    }
    (p as u64).pow((sys.arc_count - rank) as u32)
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // p is a small prime
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Number of Z_p arc colorings satisfying 2·over = in + out at every
/// crossing. Brute enumeration for small systems, linear-system rank
/// otherwise; the two agree wherever both run.
pub fn coloring_count(code: &GaussCode, p: u32) -> Result<u64, InvariantError> {
    if !COLORING_PRIMES.contains(&p) {
        return Err(InvariantError::UnsupportedPrime(p));
    }
    let sys = coloring_system(code);
    let brute_feasible = (p as u64).checked_pow(sys.arc_count as u32).map_or(false, |t| t <= 250_000);
    if sys.arc_count <= 10 && brute_feasible {
        Ok(coloring_count_brute(&sys, p))
    } else {
        Ok(coloring_count_rank(&sys, p))
    }
}

/// Assemble the full invariant tuple.
pub fn fingerprint(code: &GaussCode) -> Fingerprint {
    let odd = if code.component_count() == 1 {
        Some(odd_writhe(code).expect("knot"))
    } else {
        None
    };
    let mut coloring_counts = BTreeMap::new();
    for p in COLORING_PRIMES {
        coloring_counts.insert(p, coloring_count(code, p).expect("supported prime"));
    }
    Fingerprint {
        component_count: code.component_count(),
        f_poly: f_polynomial(code),
        odd_writhe: odd,
        linking_matrix: linking_matrix(code),
        coloring_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss;

    fn gc(text: &str) -> GaussCode {
        parse_gauss(text).unwrap()
    }

    #[test]
    fn bracket_unknot_is_one() {
        assert!(kauffman_bracket(&gc("0")).is_one());
        assert!(bracket_skein(&gc("0")).is_one());
    }

    #[test]
    fn bracket_positive_kink() {
        // both states traced by hand: A-state two loops, B-state one
        assert_eq!(kauffman_bracket(&gc("O1+U1+")), LaurentPoly::term(-1, 3));
        assert_eq!(bracket_skein(&gc("O1+U1+")), LaurentPoly::term(-1, 3));
    }

    #[test]
    fn bracket_negative_kink() {
        assert_eq!(kauffman_bracket(&gc("O1-U1-")), LaurentPoly::term(-1, -3));
    }

    #[test]
    fn bracket_two_component_unlink() {
        let d = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        assert_eq!(kauffman_bracket(&gc("0/0")), d);
    }

    #[test]
    fn bracket_trefoil_golden() {
        // eight states enumerated by the oracle pair: -A^5 - A^-3 + A^-7
        let expected = LaurentPoly::from_terms([(5, -1), (-3, -1), (-7, 1)]);
        let got = kauffman_bracket(&gc("O1+U2+O3+U1+O2+U3+"));
        assert_eq!(got, expected);
        assert_eq!(got.term_count(), 3);
        assert_eq!(got.span(), 12);
        assert_eq!(bracket_skein(&gc("O1+U2+O3+U1+O2+U3+")), expected);
    }

    #[test]
    fn state_sum_matches_skein_on_samples() {
        for text in [
            "0",
            "O1+U1+",
            "O1-U1-",
            "O1+/U1+",
            "O1+U2+/U1+O2+",
            "O1+O2+U1+U2+",
            "O1+U2+O3+U1+O2+U3+",
            "O1+U2-U1+O2-",
            "O1-U2+O3-U1-O2+U3-",
        ] {
            let c = gc(text);
            assert_eq!(bracket_state_sum(&c, false), bracket_skein(&c), "mismatch on {text}");
        }
    }

    #[test]
    fn parallel_state_sum_identical() {
        for text in ["O1+U2+O3+U1+O2+U3+", "O1+O2+U1+U2+", "O1+U2+/U1+O2+"] {
            let c = gc(text);
            assert_eq!(bracket_state_sum(&c, true), bracket_state_sum(&c, false));
        }
    }

    #[test]
    fn f_poly_kink_normalizes() {
        assert!(f_polynomial(&gc("O1+U1+")).is_one());
        assert!(f_polynomial(&gc("O1-U1-")).is_one());
        assert!(f_polynomial(&gc("0")).is_one());
    }

    #[test]
    fn f_poly_virtual_trefoil_golden() {
        // four states by hand: <vt> = A^2 + 1 - A^-4, writhe 2
        let expected = LaurentPoly::from_terms([(-4, 1), (-6, 1), (-10, -1)]);
        assert_eq!(f_polynomial(&gc("O1+O2+U1+U2+")), expected);
    }

    #[test]
    fn f_poly_distinguishes_mirror_trefoils() {
        let t = f_polynomial(&gc("O1+U2+O3+U1+O2+U3+"));
        let m = f_polynomial(&gc("O1-U2-O3-U1-O2-U3-"));
        assert_ne!(t, m);
        assert_eq!(t, LaurentPoly::from_terms([(-4, 1), (-12, 1), (-16, -1)]));
    }

    #[test]
    fn odd_writhe_values() {
        assert_eq!(odd_writhe(&gc("0")), Ok(0));
        assert_eq!(odd_writhe(&gc("O1+O2+U1+U2+")), Ok(2));
        assert_eq!(odd_writhe(&gc("O1+U2+O3+U1+O2+U3+")), Ok(0));
        assert_eq!(odd_writhe(&gc("O1+/U1+")), Err(InvariantError::NotAKnot(2)));
    }

    #[test]
    fn linking_virtual_vs_classical_hopf() {
        let v = linking_matrix(&gc("O1+/U1+"));
        assert_eq!(v[0][1], (1, 0));
        assert_eq!(v[1][0], (0, 1));
        let c = linking_matrix(&gc("O1+U2+/U1+O2+"));
        assert_eq!(c[0][1], (1, 1));
        assert_eq!(c[1][0], (1, 1));
        let u = linking_matrix(&gc("0/0"));
        assert_eq!(u, vec![vec![(0, 0), (0, 0)], vec![(0, 0), (0, 0)]]);
    }

    #[test]
    fn linking_conservation() {
        for text in ["O1+U2+/U1+O2+", "O1+/U1+", "O1+U2-/U1+/O2-"] {
            let c = gc(text);
            let m = linking_matrix(&c);
            let mut total = 0;
            for i in 0..m.len() {
                for j in 0..m.len() {
                    total += m[i][j].0;
                }
            }
            let mut expected = 0;
            let mut seen = std::collections::HashSet::new();
            let mut comp_of = std::collections::HashMap::new();
            for (ci, comp) in c.components.iter().enumerate() {
                for s in comp {
                    comp_of.entry(s.label).or_insert_with(Vec::new).push(ci);
                }
            }
            for s in c.components.iter().flatten() {
                if seen.insert(s.label) && comp_of[&s.label][0] != comp_of[&s.label][1] {
                    expected += s.sign.value();
                }
            }
            assert_eq!(total, expected, "conservation on {text}");
        }
    }

    #[test]
    fn coloring_counts_golden() {
        assert_eq!(coloring_count(&gc("0"), 3), Ok(3));
        assert_eq!(coloring_count(&gc("O1+U2+O3+U1+O2+U3+"), 3), Ok(9));
        assert_eq!(coloring_count(&gc("O1+O2+U1+U2+"), 3), Ok(3));
    }

    #[test]
    fn coloring_brute_matches_rank() {
        for text in ["O1+U1+", "O1+U2+O3+U1+O2+U3+", "O1+O2+U1+U2+", "O1+U2+/U1+O2+", "0/0"] {
            let c = gc(text);
            let sys = coloring_system(&c);
            for p in COLORING_PRIMES {
                assert_eq!(
                    coloring_count_brute(&sys, p),
                    coloring_count_rank(&sys, p),
                    "p={p} on {text}"
                );
            }
        }
    }

    #[test]
    fn coloring_rejects_bad_prime() {
        assert_eq!(coloring_count(&gc("0"), 4), Err(InvariantError::UnsupportedPrime(4)));
    }

    #[test]
    fn coloring_count_is_p_power() {
        for text in ["O1+U1+", "O1+U2+O3+U1+O2+U3+", "O1+U2+/U1+O2+"] {
            for p in COLORING_PRIMES {
                let n = coloring_count(&gc(text), p).unwrap();
                let mut m = n;
                while m % p as u64 == 0 {
                    m /= p as u64;
                }
                assert_eq!(m, 1, "count {n} not a power of {p} on {text}");
            }
        }
    }

    #[test]
    fn fingerprint_examples() {
        assert_eq!(fingerprint(&gc("0")), fingerprint(&gc("O1+U1+")));
        let trefoil = fingerprint(&gc("O1+U2+O3+U1+O2+U3+"));
        let unknot = fingerprint(&gc("0"));
        assert_ne!(trefoil, unknot);
        assert_eq!(trefoil.coloring_counts[&3], 9);
        assert_eq!(unknot.coloring_counts[&3], 3);
        let vt = fingerprint(&gc("O1+O2+U1+U2+"));
        assert_ne!(vt, trefoil);
        assert_eq!(vt.odd_writhe, Some(2));
        assert_eq!(trefoil.odd_writhe, Some(0));
    }
}
