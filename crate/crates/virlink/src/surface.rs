//! Link diagrams in thickened surfaces: the Carter construction, supporting
//! genus, and stabilization/destabilization as pure face bookkeeping.
//!
//! The rotation system and strand edges are fixed by the Gauss code; only the
//! grouping of boundary walks into faces (with a genus per face) changes under
//! stabilization. Per surface component the Euler identity
//! `(V - E) + Σ_f (2 - 2g_f - b_f) = 2 - 2g` always holds, and the component
//! genus is read off from it.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::codes::{canonical_relabel, serialize_gauss, GaussCode, Passage, Sign, Symbol};

/// Dart slots at a crossing.
pub const SLOT_OVER_OUT: usize = 0;
pub const SLOT_UNDER_OUT: usize = 1;
pub const SLOT_OVER_IN: usize = 2;
pub const SLOT_UNDER_IN: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn crossing(self) -> usize {
        self.0 / 4
    }
    pub fn slot(self) -> usize {
        self.0 % 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub label: u32,
    pub sign: Sign,
}

/// One strand segment between consecutive passages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeInfo {
    pub from: Dart,
    pub to: Dart,
    /// link component carrying this segment
    pub component: usize,
    /// position of the departing passage within the component
    pub from_position: usize,
}

/// A closed boundary walk of the ribbon neighborhood: either an orbit of the
/// face permutation, or one side of a crossing-free circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Walk {
    Graph { darts: Vec<Dart> },
    CircleSide { circle: usize, side: u8 },
}

impl Walk {
    pub fn len(&self) -> usize {
        match self {
            Walk::Graph { darts } => darts.len(),
            Walk::CircleSide { .. } => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A face of the embedded diagram: the boundary walks it is glued along and
/// its internal genus. A disk has one walk and genus 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walks: Vec<usize>,
    pub genus: u32,
}

impl Face {
    pub fn boundary_count(&self) -> usize {
        self.walks.len()
    }

    pub fn is_disk(&self) -> bool {
        self.genus == 0 && self.walks.len() == 1
    }

    /// 2 - 2g - b
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.walks.len() as i64
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("face index {0} out of range")]
    BadFace(usize),
    #[error("SplitWalkPair needs two distinct faces")]
    SameFace,
    #[error("destabilization would leave no surface components")]
    EmptyResult,
    #[error("operation requires a cellular diagram (all faces disks)")]
    NotCellular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizeKind {
    /// Raise the face's genus by one.
    AddHandle,
    /// Tube the face to another one, merging them (inverse of a separating
    /// compression).
    SplitWalkPair { other: usize },
}

/// A link diagram embedded in a closed oriented surface, possibly
/// disconnected. `bare` components carry no link and only appear through
/// explicit construction; `drop_empty_components` removes them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDiagram {
    code: GaussCode,
    crossings: Vec<CrossingInfo>,
    edges: Vec<EdgeInfo>,
    /// link components with no crossings
    free_circles: Vec<usize>,
    walks: Vec<Walk>,
    faces: Vec<Face>,
    /// genus of surface components carrying no link
    bare: Vec<u32>,
}

/// Rotation successor at a crossing. At a positive crossing the cyclic order
/// is (over-out, under-out, over-in, under-in); a negative crossing mirrors
/// the under pair. This convention makes classical codes land at genus 0.
pub fn rotation_next(sign: Sign, dart: Dart) -> Dart {
    let base = dart.crossing() * 4;
    let next = match sign {
        Sign::Plus => match dart.slot() {
            SLOT_OVER_OUT => SLOT_UNDER_OUT,
            SLOT_UNDER_OUT => SLOT_OVER_IN,
            SLOT_OVER_IN => SLOT_UNDER_IN,
            _ => SLOT_OVER_OUT,
        },
        Sign::Minus => match dart.slot() {
            SLOT_OVER_OUT => SLOT_UNDER_IN,
            SLOT_UNDER_IN => SLOT_OVER_IN,
            SLOT_OVER_IN => SLOT_UNDER_OUT,
            _ => SLOT_OVER_OUT,
        },
    };
    Dart(base + next)
}

/// Realize a valid Gauss code as a cellular diagram in its Carter surface:
/// every face is a disk and the code read back equals the input.
pub fn carter_embed(code: &GaussCode) -> SurfaceDiagram {
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut crossings = Vec::new();
    for s in code.components.iter().flatten() {
        index.entry(s.label).or_insert_with(|| {
            crossings.push(CrossingInfo { label: s.label, sign: s.sign });
            crossings.len() - 1
        });
    }
    let n = crossings.len();
    let mut twin: Vec<Option<Dart>> = vec![None; 4 * n];
    let mut edges = Vec::new();
    let mut free_circles = Vec::new();
    for (ci, comp) in code.components.iter().enumerate() {
        if comp.is_empty() {
            free_circles.push(ci);
            continue;
        }
        let m = comp.len();
        for i in 0..m {
            let a = &comp[i];
            let b = &comp[(i + 1) % m];
            let ca = index[&a.label];
            let cb = index[&b.label];
            let out = Dart(4 * ca + if a.passage == Passage::Over { SLOT_OVER_OUT } else { SLOT_UNDER_OUT });
            let inn = Dart(4 * cb + if b.passage == Passage::Over { SLOT_OVER_IN } else { SLOT_UNDER_IN });
            twin[out.0] = Some(inn);
            twin[inn.0] = Some(out);
            edges.push(EdgeInfo { from: out, to: inn, component: ci, from_position: i });
        }
    }
    let twin: Vec<Dart> = twin.into_iter().map(|d| d.expect("every dart on an edge")).collect();

    // face permutation: next = rotation successor of the edge partner
    let mut walks = Vec::new();
    let mut seen = vec![false; 4 * n];
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = Dart(start);
        loop {
            seen[d.0] = true;
            darts.push(d);
            let partner = twin[d.0];
            d = rotation_next(crossings[partner.crossing()].sign, partner);
            if d.0 == start {
                break;
            }
        }
        walks.push(Walk::Graph { darts });
    }
    for (idx, _) in free_circles.iter().enumerate() {
        walks.push(Walk::CircleSide { circle: idx, side: 0 });
        walks.push(Walk::CircleSide { circle: idx, side: 1 });
    }
    let faces = (0..walks.len()).map(|w| Face { walks: vec![w], genus: 0 }).collect();
    let d = SurfaceDiagram {
        code: code.clone(),
        crossings,
        edges,
        free_circles,
        walks,
        faces,
        bare: Vec::new(),
    };
    debug_assert_eq!(&d.read_back_code(), code);
    d
}

/// Anchor node for connectivity; bare components sit after these in the
/// union-find numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Anchor {
    Crossing(usize),
    Circle(usize),
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = ra.min(rb);
        }
    }
}

/// One connected component of the ambient surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub genus: u32,
    pub crossings: Vec<usize>,
    pub circles: Vec<usize>,
    pub faces: Vec<usize>,
    pub link_components: Vec<usize>,
    pub is_bare: bool,
}

impl SurfaceDiagram {
    pub fn code(&self) -> &GaussCode {
        &self.code
    }

    pub fn crossings(&self) -> &[CrossingInfo] {
        &self.crossings
    }

    pub fn edges(&self) -> &[EdgeInfo] {
        &self.edges
    }

    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn free_circles(&self) -> &[usize] {
        &self.free_circles
    }

    pub fn bare_components(&self) -> &[u32] {
        &self.bare
    }

    pub fn is_cellular(&self) -> bool {
        self.faces.iter().all(Face::is_disk) && self.bare.is_empty()
    }

    pub fn twin(&self, d: Dart) -> Dart {
        let e = self
            .edges
            .iter()
            .find(|e| e.from == d || e.to == d)
            .expect("dart on an edge");
        if e.from == d {
            e.to
        } else {
            e.from
        }
    }

    /// Reconstruct the Gauss code from the stored strand structure.
    pub fn read_back_code(&self) -> GaussCode {
        let mut components: Vec<Vec<Symbol>> = vec![Vec::new(); self.code.components.len()];
        let mut by_pos: BTreeMap<(usize, usize), &EdgeInfo> = BTreeMap::new();
        for e in &self.edges {
            by_pos.insert((e.component, e.from_position), e);
        }
        for (&(ci, _), e) in &by_pos {
            let c = e.from.crossing();
            let passage = if e.from.slot() == SLOT_OVER_OUT { Passage::Over } else { Passage::Under };
            components[ci].push(Symbol {
                label: self.crossings[c].label,
                passage,
                sign: self.crossings[c].sign,
            });
        }
        GaussCode { components }
    }

    fn walk_anchor(&self, w: usize) -> Anchor {
        match &self.walks[w] {
            Walk::Graph { darts } => Anchor::Crossing(darts[0].crossing()),
            Walk::CircleSide { circle, .. } => Anchor::Circle(*circle),
        }
    }

    /// Connected surface components in deterministic order (least anchor
    /// first, bare components last).
    pub fn surface_components(&self) -> Vec<SurfaceComponent> {
        let nc = self.crossings.len();
        let ncirc = self.free_circles.len();
        let id = |a: Anchor| match a {
            Anchor::Crossing(i) => i,
            Anchor::Circle(i) => nc + i,
        };
        let mut uf = UnionFind::new(nc + ncirc + self.bare.len());
        for e in &self.edges {
            uf.union(e.from.crossing(), e.to.crossing());
        }
        for f in &self.faces {
            for pair in f.walks.windows(2) {
                uf.union(id(self.walk_anchor(pair[0])), id(self.walk_anchor(pair[1])));
            }
        }
        // group everything by root
        let mut groups: BTreeMap<usize, SurfaceComponent> = BTreeMap::new();
        let component_entry = |root: usize, groups: &mut BTreeMap<usize, SurfaceComponent>| {
            groups.entry(root).or_insert_with(|| SurfaceComponent {
                genus: 0,
                crossings: Vec::new(),
                circles: Vec::new(),
                faces: Vec::new(),
                link_components: Vec::new(),
                is_bare: false,
            });
        };
        for c in 0..nc {
            let root = uf.find(c);
            component_entry(root, &mut groups);
            groups.get_mut(&root).unwrap().crossings.push(c);
        }
        for i in 0..ncirc {
            let root = uf.find(nc + i);
            component_entry(root, &mut groups);
            groups.get_mut(&root).unwrap().circles.push(i);
        }
        for (i, _) in self.bare.iter().enumerate() {
            let root = uf.find(nc + ncirc + i);
            component_entry(root, &mut groups);
            let g = groups.get_mut(&root).unwrap();
            g.is_bare = true;
            g.genus = self.bare[i];
        }
        for (fi, f) in self.faces.iter().enumerate() {
            let root = uf.find(id(self.walk_anchor(f.walks[0])));
            groups.get_mut(&root).unwrap().faces.push(fi);
        }
        // euler characteristic per component
        let mut edge_count: HashMap<usize, i64> = HashMap::new();
        for e in &self.edges {
            *edge_count.entry(uf.find(e.from.crossing())).or_insert(0) += 1;
        }
        let mut out = Vec::new();
        for (root, mut comp) in groups {
            if !comp.is_bare {
                let v = comp.crossings.len() as i64;
                let e = edge_count.get(&root).copied().unwrap_or(0);
                let face_euler: i64 = comp.faces.iter().map(|&f| self.faces[f].euler()).sum();
                let chi = v - e + face_euler;
                assert!(chi <= 2 && chi % 2 == 0, "Euler characteristic {chi} is not 2-2g");
                comp.genus = ((2 - chi) / 2) as u32;
            }
            // link components living on this piece
            let mut links = Vec::new();
            for (ci, circle_comp) in self.free_circles.iter().enumerate() {
                if comp.circles.contains(&ci) {
                    links.push(*circle_comp);
                }
            }
            let crossing_set: std::collections::HashSet<usize> = comp.crossings.iter().copied().collect();
            for e in &self.edges {
                if crossing_set.contains(&e.from.crossing()) && !links.contains(&e.component) {
                    links.push(e.component);
                }
            }
            links.sort_unstable();
            comp.link_components = links;
            out.push(comp);
        }
        out
    }

    /// Genus per surface component.
    pub fn supporting_genus(&self) -> Vec<u32> {
        self.surface_components().iter().map(|c| c.genus).collect()
    }

    /// Map from link components to the index of their surface component.
    pub fn link_assignment(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (si, comp) in self.surface_components().iter().enumerate() {
            for &l in &comp.link_components {
                out.insert(l, si);
            }
        }
        out
    }

    /// Add a 1-handle. The Gauss code is unchanged; only faces move.
    pub fn stabilize(&self, face: usize, kind: StabilizeKind) -> Result<SurfaceDiagram, SurfaceError> {
        if face >= self.faces.len() {
            return Err(SurfaceError::BadFace(face));
        }
        let mut out = self.clone();
        match kind {
            StabilizeKind::AddHandle => {
                out.faces[face].genus += 1;
            }
            StabilizeKind::SplitWalkPair { other } => {
                if other >= self.faces.len() {
                    return Err(SurfaceError::BadFace(other));
                }
                if other == face {
                    return Err(SurfaceError::SameFace);
                }
                let (keep, gone) = (face.min(other), face.max(other));
                let merged_walks: Vec<usize> = {
                    let mut w = out.faces[keep].walks.clone();
                    w.extend(out.faces[gone].walks.iter().copied());
                    w
                };
                out.faces[keep] = Face {
                    walks: merged_walks,
                    genus: out.faces[face].genus + out.faces[other].genus,
                };
                out.faces.remove(gone);
            }
        }
        Ok(out)
    }

    /// Compress along essential curves until every face is a disk, dropping
    /// surface components that carry no link. Idempotent; the result equals
    /// `carter_embed` of the same code.
    pub fn destabilize_fully(&self) -> SurfaceDiagram {
        let mut out = self.clone();
        // genus compressions first, then walk separations, in face order;
        // the result does not depend on the order
        out.faces = (0..out.walks.len()).map(|w| Face { walks: vec![w], genus: 0 }).collect();
        out.bare.clear();
        out
    }

    /// Remove bare components (cap the cut circles with disks).
    pub fn drop_empty_components(&self) -> Result<SurfaceDiagram, SurfaceError> {
        if self.code.components.is_empty() {
            return Err(SurfaceError::EmptyResult);
        }
        let mut out = self.clone();
        out.bare.clear();
        Ok(out)
    }

    /// Attach a disjoint bare surface component of the given genus.
    pub fn with_bare_component(&self, genus: u32) -> SurfaceDiagram {
        let mut out = self.clone();
        out.bare.push(genus);
        out
    }

    /// Stable text dump of the rotation system and face structure.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        writeln!(s, "code {}", serialize_gauss(&self.code)).unwrap();
        for (i, c) in self.crossings.iter().enumerate() {
            let rot: Vec<String> = {
                let mut order = Vec::new();
                let mut d = Dart(4 * i);
                for _ in 0..4 {
                    order.push(format!("{}{}", ["OO", "UO", "OI", "UI"][d.slot()], ""));
                    d = rotation_next(c.sign, d);
                }
                order
            };
            writeln!(s, "crossing {} label {} sign {} rotation {}", i, c.label, c.sign, rot.join(">")).unwrap();
        }
        for e in &self.edges {
            writeln!(
                s,
                "edge c{}.{} -> c{}.{} link {} pos {}",
                e.from.crossing(),
                ["OO", "UO", "OI", "UI"][e.from.slot()],
                e.to.crossing(),
                ["OO", "UO", "OI", "UI"][e.to.slot()],
                e.component,
                e.from_position
            )
            .unwrap();
        }
        for (i, w) in self.walks.iter().enumerate() {
            match w {
                Walk::Graph { darts } => {
                    let ds: Vec<String> = darts
                        .iter()
                        .map(|d| format!("c{}.{}", d.crossing(), ["OO", "UO", "OI", "UI"][d.slot()]))
                        .collect();
                    writeln!(s, "walk {} {}", i, ds.join(" ")).unwrap();
                }
                Walk::CircleSide { circle, side } => {
                    writeln!(s, "walk {} circle {} side {}", i, circle, side).unwrap();
                }
            }
        }
        for (i, f) in self.faces.iter().enumerate() {
            let ws: Vec<String> = f.walks.iter().map(|w| w.to_string()).collect();
            writeln!(s, "face {} genus {} walks {}", i, f.genus, ws.join(",")).unwrap();
        }
        for (i, g) in self.bare.iter().enumerate() {
            writeln!(s, "bare {} genus {}", i, g).unwrap();
        }
        s
    }

    /// Canonical encoding of the labeled rotation system together with the
    /// face data, minimized over basepoint rotations of the code. Two
    /// diagrams are isomorphic iff their keys agree.
    pub fn canonical_key(&self) -> String {
        let code = &self.code;
        let mut best: Option<String> = None;
        // enumerate basepoint rotations, relabel, re-embed, and re-express
        // this diagram's faces in the new crossing numbering
        let lens: Vec<usize> = code.components.iter().map(|c| c.len().max(1)).collect();
        let mut choice = vec![0usize; lens.len()];
        loop {
            let rotated = GaussCode {
                components: code
                    .components
                    .iter()
                    .enumerate()
                    .map(|(ci, comp)| {
                        if comp.is_empty() {
                            Vec::new()
                        } else {
                            let n = comp.len();
                            (0..n).map(|i| comp[(i + choice[ci]) % n]).collect()
                        }
                    })
                    .collect(),
            };
            let relabeled = canonical_relabel(&rotated);
            let key = self.key_under(&rotated, &relabeled);
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return best.unwrap();
                }
                choice[i] += 1;
                if choice[i] < lens[i] {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn key_under(&self, rotated: &GaussCode, relabeled: &GaussCode) -> String {
        // rotation moves the basepoint only, so the relabel map is read off
        // position by position
        let mut new_label_of: HashMap<u32, u32> = HashMap::new();
        for (rc, nc) in rotated.components.iter().zip(&relabeled.components) {
            for (r, n) in rc.iter().zip(nc) {
                new_label_of.insert(r.label, n.label);
            }
        }
        let rename = |c: usize| -> u32 {
            *new_label_of
                .get(&self.crossings[c].label)
                .unwrap_or(&self.crossings[c].label)
        };

        let mut walk_keys: Vec<String> = Vec::new();
        for w in &self.walks {
            match w {
                Walk::Graph { darts } => {
                    // lexicographically least cyclic rotation of the dart list
                    let encoded: Vec<(u32, usize)> =
                        darts.iter().map(|d| (rename(d.crossing()), d.slot())).collect();
                    let n = encoded.len();
                    let mut best: Option<Vec<(u32, usize)>> = None;
                    for r in 0..n {
                        let cand: Vec<(u32, usize)> = (0..n).map(|i| encoded[(i + r) % n]).collect();
                        if best.as_ref().map_or(true, |b| cand < *b) {
                            best = Some(cand);
                        }
                    }
                    let parts: Vec<String> = best
                        .unwrap()
                        .iter()
                        .map(|(l, s)| format!("{}{}", l, ["a", "b", "c", "d"][*s]))
                        .collect();
                    walk_keys.push(format!("g:{}", parts.join(".")));
                }
                Walk::CircleSide { circle, side } => {
                    walk_keys.push(format!("c:{}:{}", self.free_circles[*circle], side));
                }
            }
        }
        let mut face_keys: Vec<String> = self
            .faces
            .iter()
            .map(|f| {
                let mut ws: Vec<String> = f.walks.iter().map(|&w| walk_keys[w].clone()).collect();
                ws.sort();
                format!("[g{} {}]", f.genus, ws.join("|"))
            })
            .collect();
        face_keys.sort();
        let mut bare = self.bare.clone();
        bare.sort_unstable();
        format!(
            "{} ;; {} ;; {:?}",
            serialize_gauss(relabeled),
            face_keys.join(" "),
            bare
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss;

    fn gc(text: &str) -> GaussCode {
        parse_gauss(text).unwrap()
    }

    /// Independent face-count oracle: explicit permutation composition over
    /// dart maps, no walk bookkeeping shared with the implementation.
    fn face_count_oracle(code: &GaussCode) -> (usize, usize, usize) {
        use std::collections::HashMap as Map;
        let mut index: Map<u32, (usize, Sign)> = Map::new();
        let mut n = 0;
        for s in code.components.iter().flatten() {
            index.entry(s.label).or_insert_with(|| {
                let i = n;
                n += 1;
                (i, s.sign)
            });
        }
        let mut alpha: Map<usize, usize> = Map::new();
        let mut edges = 0;
        for comp in &code.components {
            let m = comp.len();
            for i in 0..m {
                let a = &comp[i];
                let b = &comp[(i + 1) % m];
                let (ca, _) = index[&a.label];
                let (cb, _) = index[&b.label];
                let out = 4 * ca + if a.passage == Passage::Over { 0 } else { 1 };
                let inn = 4 * cb + if b.passage == Passage::Over { 2 } else { 3 };
                alpha.insert(out, inn);
                alpha.insert(inn, out);
                edges += 1;
            }
        }
        let sigma = |d: usize| -> usize {
            let c = d / 4;
            let sign = index.values().find(|(i, _)| *i == c).unwrap().1;
            let slot = d % 4;
            let next = match (sign, slot) {
                (Sign::Plus, 0) => 1,
                (Sign::Plus, 1) => 2,
                (Sign::Plus, 2) => 3,
                (Sign::Plus, 3) => 0,
                (Sign::Minus, 0) => 3,
                (Sign::Minus, 3) => 2,
                (Sign::Minus, 2) => 1,
                _ => 0,
            };
            4 * c + next
        };
        let mut faces = 0;
        let mut seen = std::collections::HashSet::new();
        for start in 0..4 * n {
            if seen.contains(&start) {
                continue;
            }
            faces += 1;
            let mut d = start;
            loop {
                seen.insert(d);
                d = sigma(alpha[&d]);
                if d == start {
                    break;
                }
            }
        }
        (n, edges, faces)
    }

    #[test]
    fn oracle_counts_frozen() {
        // trefoil: V=3, E=6, F=5 so chi=2 (sphere)
        assert_eq!(face_count_oracle(&gc("O1+U2+O3+U1+O2+U3+")), (3, 6, 5));
        // virtual trefoil: V=2, E=4, F=2 so chi=0 (torus)
        assert_eq!(face_count_oracle(&gc("O1+O2+U1+U2+")), (2, 4, 2));
        // virtual Hopf: V=1, E=2, F=1 so chi=0
        assert_eq!(face_count_oracle(&gc("O1+/U1+")), (1, 2, 1));
    }

    #[test]
    fn carter_matches_oracle() {
        for text in [
            "O1+U1+",
            "O1-U1-",
            "O1+U2+O3+U1+O2+U3+",
            "O1+O2+U1+U2+",
            "O1+/U1+",
            "O1+U2+/U1+O2+",
            "O1-U2+O3-U1-O2+U3-",
        ] {
            let code = gc(text);
            let d = carter_embed(&code);
            let (v, e, f) = face_count_oracle(&code);
            assert_eq!(d.crossings().len(), v, "V on {text}");
            assert_eq!(d.edges().len(), e, "E on {text}");
            let graph_walks = d.walks().iter().filter(|w| matches!(w, Walk::Graph { .. })).count();
            assert_eq!(graph_walks, f, "F on {text}");
            assert!(d.is_cellular());
            assert_eq!(&d.read_back_code(), &code, "read back {text}");
        }
    }

    #[test]
    fn carter_circle() {
        let d = carter_embed(&gc("0"));
        assert_eq!(d.crossings().len(), 0);
        assert_eq!(d.edges().len(), 0);
        assert_eq!(d.walks().len(), 2);
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.supporting_genus(), vec![0]);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(carter_embed(&gc("O1+U2+O3+U1+O2+U3+")).supporting_genus(), vec![0]);
        assert_eq!(carter_embed(&gc("O1+O2+U1+U2+")).supporting_genus(), vec![1]);
        assert_eq!(carter_embed(&gc("O1+/U1+")).supporting_genus(), vec![1]);
        assert_eq!(carter_embed(&gc("O1+U2+/U1+O2+")).supporting_genus(), vec![0]);
        assert_eq!(carter_embed(&gc("0/0")).supporting_genus(), vec![0, 0]);
    }

    #[test]
    fn add_handle_raises_genus() {
        let d = carter_embed(&gc("O1+U2+O3+U1+O2+U3+"));
        let s = d.stabilize(0, StabilizeKind::AddHandle).unwrap();
        assert_eq!(s.supporting_genus(), vec![1]);
        assert_eq!(&s.read_back_code(), s.code());
        let back = s.destabilize_fully();
        assert_eq!(back, d);
    }

    #[test]
    fn stabilize_circle_sphere_to_torus() {
        let d = carter_embed(&gc("0"));
        let s = d.stabilize(0, StabilizeKind::AddHandle).unwrap();
        assert_eq!(s.supporting_genus(), vec![1]);
        let t = d.stabilize(0, StabilizeKind::SplitWalkPair { other: 1 }).unwrap();
        assert_eq!(t.supporting_genus(), vec![1]);
    }

    #[test]
    fn split_walk_pair_merges_components() {
        let d = carter_embed(&gc("0/0"));
        assert_eq!(d.supporting_genus(), vec![0, 0]);
        // faces 0,1 belong to circle 0; faces 2,3 to circle 1
        let joined = d.stabilize(0, StabilizeKind::SplitWalkPair { other: 2 }).unwrap();
        assert_eq!(joined.supporting_genus(), vec![0]);
        let split = joined.destabilize_fully();
        assert_eq!(split.supporting_genus(), vec![0, 0]);
        assert_eq!(split, d);
    }

    #[test]
    fn destabilize_idempotent_and_roundtrip() {
        for text in ["O1+U1+", "O1+O2+U1+U2+", "O1+/U1+", "O1+U2+O3+U1+O2+U3+"] {
            let d = carter_embed(&gc(text));
            assert_eq!(d.destabilize_fully(), d);
            let mut s = d.clone();
            s = s.stabilize(0, StabilizeKind::AddHandle).unwrap();
            if s.faces().len() >= 2 {
                s = s.stabilize(0, StabilizeKind::SplitWalkPair { other: 1 }).unwrap();
            }
            s = s.stabilize(0, StabilizeKind::AddHandle).unwrap();
            let back = s.destabilize_fully();
            assert_eq!(back, d, "round trip on {text}");
            assert_eq!(back.canonical_key(), d.canonical_key());
        }
    }

    #[test]
    fn stabilize_bad_face_rejected() {
        let d = carter_embed(&gc("0"));
        assert_eq!(d.stabilize(9, StabilizeKind::AddHandle), Err(SurfaceError::BadFace(9)));
        assert_eq!(
            d.stabilize(0, StabilizeKind::SplitWalkPair { other: 0 }),
            Err(SurfaceError::SameFace)
        );
    }

    #[test]
    fn drop_empty_components_removes_bare() {
        let d = carter_embed(&gc("O1+U2+O3+U1+O2+U3+"));
        let with_torus = d.with_bare_component(1);
        assert_eq!(with_torus.supporting_genus(), vec![0, 1]);
        assert_eq!(with_torus.drop_empty_components().unwrap(), d);
        assert_eq!(d.drop_empty_components().unwrap(), d);
        let sphere_plus_bare = carter_embed(&gc("0")).with_bare_component(0);
        assert_eq!(
            sphere_plus_bare.drop_empty_components().unwrap(),
            carter_embed(&gc("0"))
        );
    }

    #[test]
    fn euler_law_after_operations() {
        let d = carter_embed(&gc("O1+O2+U1+U2+"));
        let ops = [
            d.clone(),
            d.stabilize(0, StabilizeKind::AddHandle).unwrap(),
            d.stabilize(0, StabilizeKind::SplitWalkPair { other: 1 }).unwrap(),
        ];
        for s in ops {
            for comp in s.surface_components() {
                let v = comp.crossings.len() as i64;
                let e = s
                    .edges()
                    .iter()
                    .filter(|e| comp.crossings.contains(&e.from.crossing()))
                    .count() as i64;
                let face_euler: i64 = comp.faces.iter().map(|&f| s.faces()[f].euler()).sum();
                assert_eq!(v - e + face_euler, 2 - 2 * comp.genus as i64);
            }
        }
    }

    #[test]
    fn canonical_key_ignores_basepoint() {
        let a = carter_embed(&gc("O1+U2+O3+U1+O2+U3+"));
        let b = carter_embed(&gc("U2+O3+U1+O2+U3+O1+"));
        assert_eq!(a.canonical_key(), b.canonical_key());
        let c = carter_embed(&gc("O1+O2+U1+U2+"));
        assert_ne!(a.canonical_key(), c.canonical_key());
    }

    #[test]
    fn dump_is_stable() {
        let d = carter_embed(&gc("O1+/U1+"));
        let expected = "code O1+/U1+\n\
             crossing 0 label 1 sign + rotation OO>UO>OI>UI\n\
             edge c0.OO -> c0.OI link 0 pos 0\n\
             edge c0.UO -> c0.UI link 1 pos 0\n\
             walk 0 c0.OO c0.UI c0.OI c0.UO\n\
             face 0 genus 0 walks 0\n";
        assert_eq!(d.dump(), expected);
    }

    #[test]
    fn link_assignment_tracks_components() {
        let d = carter_embed(&gc("O1+U2+/U1+O2+/0"));
        let assign = d.link_assignment();
        assert_eq!(assign[&0], assign[&1]);
        assert_ne!(assign[&0], assign[&2]);
    }
}
