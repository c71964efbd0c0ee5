//! Combinatorial link diagrams: PD codes, braid closures, resolutions,
//! mirrors and Reidemeister surgery.
//!
//! A crossing stores its four incident half-edges counterclockwise starting
//! at the incoming under-strand, plus the slot (1 or 3) where the over-strand
//! enters. All orientation and sign data derive from that.

mod faces;
mod moves;
mod parse;

pub use faces::{faces, is_planar, Face, FaceCorner};
pub use moves::{legal_moves, RMove};
pub use parse::{parse_braid, parse_pd};

use std::collections::HashMap;

use thiserror::Error;

/// Half-edge label in a PD code.
pub type Edge = u32;

/// Slot id `4 * crossing + position`, one per half-edge incidence.
pub type Slot = u32;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DiagramError {
    #[error("malformed PD syntax: {0}")]
    Syntax(String),
    #[error("unmatched half-edge {0}")]
    UnmatchedHalfEdge(Edge),
    #[error("orientation inconsistency at crossing {0}")]
    Orientation(usize),
    #[error("resolution state length {got} does not match crossing count {want}")]
    StateLength { got: usize, want: usize },
    #[error("braid generator {0} needs at least {1} strands")]
    BadGenerator(char, usize),
    #[error("braid needs at least 2 strands")]
    TooFewStrands,
    #[error("illegal Reidemeister location: {0}")]
    IllegalMove(String),
    #[error("marked edge required for the reduced theory")]
    NoMarkedEdge,
}

/// One crossing: `edges` counterclockwise from the incoming under-strand;
/// `over_in` is 1 or 3, the slot where the over-strand enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [Edge; 4],
    pub over_in: u8,
}

impl Crossing {
    pub fn sign(&self) -> i8 {
        if self.over_in == 1 {
            1
        } else {
            -1
        }
    }

    pub fn over_out(&self) -> u8 {
        4 - self.over_in
    }

    /// Is the given slot an entry point of a strand (vs an exit)?
    pub fn is_incoming(&self, slot: u8) -> bool {
        slot == 0 || slot == self.over_in
    }
}

/// Cube coordinate: one resolution bit per crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionState {
    bits: u64,
    len: u8,
}

impl ResolutionState {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 63);
        ResolutionState {
            bits: bits & ((1u64 << len) - 1),
            len: len as u8,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn flipped(&self, i: usize) -> Self {
        ResolutionState { bits: self.bits ^ (1 << i), len: self.len }
    }

    /// Number of 1-bits strictly below position `i`; the cube sign exponent.
    pub fn ones_below(&self, i: usize) -> u32 {
        (self.bits & ((1u64 << i) - 1)).count_ones()
    }
}

/// Circles of a full resolution: a partition of all slots, plus any
/// crossing-free loop components of the diagram.
#[derive(Clone, Debug)]
pub struct CircleSet {
    /// Each circle as a sorted list of the slots it passes through,
    /// ordered by smallest slot.
    pub circles: Vec<Vec<Slot>>,
    /// Unknot components that have no crossings at all.
    pub free_circles: u32,
    slot_circle: Vec<u32>,
}

impl CircleSet {
    pub fn count(&self) -> usize {
        self.circles.len() + self.free_circles as usize
    }

    /// Index of the circle a slot belongs to.
    pub fn circle_of_slot(&self, slot: Slot) -> usize {
        self.slot_circle[slot as usize] as usize
    }
}

/// A link diagram. Immutable after construction; all derived counts are
/// computed up front and validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    free_loops: u32,
    marked_edge: Option<Edge>,
    n_plus: u32,
    n_minus: u32,
    component_count: u32,
}

impl PlanarDiagram {
    /// Build and validate a diagram from explicit crossing data.
    pub fn from_parts(
        crossings: Vec<Crossing>,
        free_loops: u32,
        marked_edge: Option<Edge>,
    ) -> Result<Self, DiagramError> {
        // Each edge must occur exactly twice, once incoming and once outgoing.
        let mut occ: HashMap<Edge, Vec<(usize, u8)>> = HashMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            if x.over_in != 1 && x.over_in != 3 {
                return Err(DiagramError::Orientation(ci));
            }
            for (s, &e) in x.edges.iter().enumerate() {
                occ.entry(e).or_default().push((ci, s as u8));
            }
        }
        let mut edges: Vec<Edge> = occ.keys().copied().collect();
        edges.sort_unstable();
        for &e in &edges {
            let v = &occ[&e];
            if v.len() != 2 {
                return Err(DiagramError::UnmatchedHalfEdge(e));
            }
            let roles: Vec<bool> = v
                .iter()
                .map(|&(c, s)| crossings[c].is_incoming(s))
                .collect();
            if roles[0] == roles[1] {
                return Err(DiagramError::Orientation(v[0].0));
            }
        }
        if let Some(m) = marked_edge {
            if !occ.contains_key(&m) && !(crossings.is_empty() && free_loops > 0) {
                return Err(DiagramError::UnmatchedHalfEdge(m));
            }
        }
        let n_plus = crossings.iter().filter(|x| x.sign() > 0).count() as u32;
        let n_minus = crossings.len() as u32 - n_plus;
        let component_count = component_count(&crossings) + free_loops;
        let mut d = PlanarDiagram {
            crossings,
            free_loops,
            marked_edge,
            n_plus,
            n_minus,
            component_count,
        };
        d.canonicalize();
        Ok(d)
    }

    /// The empty diagram (the empty link).
    pub fn empty() -> Self {
        PlanarDiagram::from_parts(Vec::new(), 0, None).unwrap()
    }

    /// A zero-crossing unknot diagram.
    pub fn unknot() -> Self {
        PlanarDiagram::from_parts(Vec::new(), 1, None).unwrap()
    }

    /// Disjoint union with `m` crossing-free unknot components.
    pub fn with_free_loops(&self, m: u32) -> Self {
        let mut d = self.clone();
        d.free_loops += m;
        d.component_count += m;
        d
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn n_plus(&self) -> u32 {
        self.n_plus
    }

    pub fn n_minus(&self) -> u32 {
        self.n_minus
    }

    pub fn writhe(&self) -> i32 {
        self.n_plus as i32 - self.n_minus as i32
    }

    pub fn component_count(&self) -> u32 {
        self.component_count
    }

    pub fn is_knot(&self) -> bool {
        self.component_count == 1 && self.free_loops == 0
    }

    /// Does every strand pass alternately over and under along its component?
    pub fn is_alternating(&self) -> bool {
        let mut seen = vec![false; 4 * self.crossings.len()];
        for (ci, x) in self.crossings.iter().enumerate() {
            for local in [0u8, x.over_in] {
                let start = (4 * ci + local as usize) as Slot;
                if seen[start as usize] {
                    continue;
                }
                let mut passes = Vec::new();
                let mut s = start;
                loop {
                    seen[s as usize] = true;
                    let c = &self.crossings[(s / 4) as usize];
                    let local = (s % 4) as u8;
                    let over = local == c.over_in;
                    passes.push(over);
                    let exit = if over { c.over_out() } else { 2 };
                    let e = c.edges[exit as usize];
                    s = self.edge_ends(e).1;
                    if s == start {
                        break;
                    }
                }
                if passes.len() % 2 == 1
                    || passes.windows(2).any(|w| w[0] == w[1])
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn marked_edge(&self) -> Option<Edge> {
        self.marked_edge
    }

    pub fn with_marked_edge(&self, e: Option<Edge>) -> Self {
        let mut d = self.clone();
        d.marked_edge = e;
        d
    }

    /// Sorted list of distinct edge labels.
    pub fn edges(&self) -> Vec<Edge> {
        let mut v: Vec<Edge> = self
            .crossings
            .iter()
            .flat_map(|x| x.edges.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The two slots at which an edge is incident, (outgoing end, incoming end).
    pub fn edge_ends(&self, e: Edge) -> (Slot, Slot) {
        let mut out_slot = None;
        let mut in_slot = None;
        for (ci, x) in self.crossings.iter().enumerate() {
            for (s, &f) in x.edges.iter().enumerate() {
                if f == e {
                    let slot = (4 * ci + s) as Slot;
                    if x.is_incoming(s as u8) {
                        in_slot = Some(slot);
                    } else {
                        out_slot = Some(slot);
                    }
                }
            }
        }
        (out_slot.unwrap(), in_slot.unwrap())
    }

    /// Relabel edges densely (0-based, in order of first appearance).
    fn canonicalize(&mut self) {
        let mut map: HashMap<Edge, Edge> = HashMap::new();
        let mut next: Edge = 0;
        for x in &self.crossings {
            for &e in &x.edges {
                map.entry(e).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                });
            }
        }
        for x in &mut self.crossings {
            for e in &mut x.edges {
                *e = map[e];
            }
        }
        if let Some(m) = self.marked_edge {
            self.marked_edge = map.get(&m).copied().or(if self.crossings.is_empty() {
                Some(0)
            } else {
                None
            });
        }
    }

    /// Circles of the full resolution given by `state`.
    pub fn resolve(&self, state: &ResolutionState) -> Result<CircleSet, DiagramError> {
        if state.len() != self.crossings.len() {
            return Err(DiagramError::StateLength {
                got: state.len(),
                want: self.crossings.len(),
            });
        }
        let n = self.crossings.len();
        let mut uf = UnionFind::new(4 * n);
        let mut seen: HashMap<Edge, usize> = HashMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.edges.iter().enumerate() {
                let slot = 4 * ci + s;
                if let Some(&other) = seen.get(&e) {
                    uf.union(slot, other);
                } else {
                    seen.insert(e, slot);
                }
            }
            // 0-resolution joins (0,3) and (1,2); 1-resolution joins (0,1) and (2,3).
            if state.bit(ci) {
                uf.union(4 * ci, 4 * ci + 1);
                uf.union(4 * ci + 2, 4 * ci + 3);
            } else {
                uf.union(4 * ci, 4 * ci + 3);
                uf.union(4 * ci + 1, 4 * ci + 2);
            }
        }
        let mut groups: HashMap<usize, Vec<Slot>> = HashMap::new();
        for slot in 0..4 * n {
            groups.entry(uf.find(slot)).or_default().push(slot as Slot);
        }
        let mut circles: Vec<Vec<Slot>> = groups.into_values().collect();
        for c in &mut circles {
            c.sort_unstable();
        }
        circles.sort_unstable_by_key(|c| c[0]);
        let mut slot_circle = vec![0u32; 4 * n];
        for (i, c) in circles.iter().enumerate() {
            for &s in c {
                slot_circle[s as usize] = i as u32;
            }
        }
        Ok(CircleSet {
            circles,
            free_circles: self.free_loops,
            slot_circle,
        })
    }

    /// All-crossings-switched diagram (the mirror image).
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let r = x.over_in as usize; // rotate so the old over-in leads
                Crossing {
                    edges: [
                        x.edges[r],
                        x.edges[(r + 1) % 4],
                        x.edges[(r + 2) % 4],
                        x.edges[(r + 3) % 4],
                    ],
                    over_in: 4 - x.over_in,
                }
            })
            .collect();
        PlanarDiagram::from_parts(crossings, self.free_loops, self.marked_edge).unwrap()
    }

    /// Stable 64-bit FNV-1a hash of the canonical diagram data.
    pub fn canonical_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |b: u8| {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for x in &self.crossings {
            for &e in &x.edges {
                for b in e.to_le_bytes() {
                    eat(b);
                }
            }
            eat(x.over_in);
        }
        eat(0xfe);
        for b in self.free_loops.to_le_bytes() {
            eat(b);
        }
        eat(0xfd);
        match self.marked_edge {
            None => eat(0),
            Some(m) => {
                eat(1);
                for b in m.to_le_bytes() {
                    eat(b);
                }
            }
        }
        h
    }

    /// Connected sum of two diagrams along their lowest-numbered edges
    /// (orientation-preserving splice).
    pub fn connected_sum(&self, other: &PlanarDiagram) -> Self {
        assert!(
            !self.crossings.is_empty() && !other.crossings.is_empty(),
            "connected sum needs crossings on both sides"
        );
        let shift = self.edges().len() as Edge;
        let mut crossings = self.crossings.clone();
        let mut rhs: Vec<Crossing> = other
            .crossings
            .iter()
            .map(|x| Crossing {
                edges: [
                    x.edges[0] + shift,
                    x.edges[1] + shift,
                    x.edges[2] + shift,
                    x.edges[3] + shift,
                ],
                over_in: x.over_in,
            })
            .collect();
        // Splice edge 0 of self with edge `shift` of other: the out-end of
        // each reconnects to the in-end of the other.
        // Cut edge 0 of each diagram and cross-join the loose ends,
        // preserving orientation: out-end of the first runs into the second
        // and comes back.
        let e1: Edge = 0;
        let (_o1, i1) = self.edge_ends(e1);
        let (o2, i2) = other.edge_ends(0);
        let fresh = shift + other.edges().len() as Edge;
        let (c, s) = ((i1 / 4) as usize, (i1 % 4) as usize);
        crossings[c].edges[s] = fresh;
        let (c, s) = ((o2 / 4) as usize, (o2 % 4) as usize);
        rhs[c].edges[s] = fresh;
        let (c, s) = ((i2 / 4) as usize, (i2 % 4) as usize);
        rhs[c].edges[s] = e1;
        crossings.extend(rhs);
        PlanarDiagram::from_parts(
            crossings,
            self.free_loops + other.free_loops,
            self.marked_edge,
        )
        .unwrap()
    }
}

fn component_count(crossings: &[Crossing]) -> u32 {
    // Strand continuation: slot 0 <-> slot 2 and slot 1 <-> slot 3.
    let n = crossings.len();
    if n == 0 {
        return 0;
    }
    let mut uf = UnionFind::new(4 * n);
    let mut seen: HashMap<Edge, usize> = HashMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        uf.union(4 * ci, 4 * ci + 2);
        uf.union(4 * ci + 1, 4 * ci + 3);
        for (s, &e) in x.edges.iter().enumerate() {
            let slot = 4 * ci + s;
            if let Some(&other) = seen.get(&e) {
                uf.union(slot, other);
            } else {
                seen.insert(e, slot);
            }
        }
    }
    let mut roots: Vec<usize> = (0..4 * n).map(|s| uf.find(s)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() as u32
}

/// Union-find with path compression.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse::{parse_braid, parse_pd};
    use super::*;

    #[test]
    fn trefoil_pd_basic() {
        let d = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
    }

    #[test]
    fn empty_and_errors() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 0);
        let e = parse_pd("X[1,4,2,7];X[3,6,4,1];X[5,2,6,3]").unwrap_err();
        assert!(matches!(e, DiagramError::UnmatchedHalfEdge(_)));
    }

    #[test]
    fn braid_signs() {
        let t = parse_braid("aaa", 2).unwrap();
        assert_eq!((t.n_plus(), t.n_minus()), (3, 0));
        assert_eq!(t.component_count(), 1);
        let t5 = parse_braid("aaaaa", 2).unwrap();
        assert_eq!((t5.n_plus(), t5.n_minus()), (5, 0));
        // Identity permutation: the closure is a two-component unlink.
        let u = parse_braid("aA", 2).unwrap();
        assert_eq!((u.n_plus(), u.n_minus()), (1, 1));
        assert_eq!(u.component_count(), 2);
    }

    #[test]
    fn hopf_link_components() {
        let h = parse_braid("aa", 2).unwrap();
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.writhe(), 2);
        let split = h.with_free_loops(1);
        assert_eq!(split.component_count(), 3);
    }

    #[test]
    fn resolve_trefoil() {
        let d = parse_braid("aaa", 2).unwrap();
        let all0 = ResolutionState::new(0, 3);
        let all1 = ResolutionState::new(0b111, 3);
        assert_eq!(d.resolve(&all0).unwrap().count(), 2);
        assert_eq!(d.resolve(&all1).unwrap().count(), 3);
        let u = PlanarDiagram::unknot();
        assert_eq!(u.resolve(&ResolutionState::new(0, 0)).unwrap().count(), 1);
    }

    #[test]
    fn mirror_involution() {
        let d = parse_braid("aabAb", 3).unwrap();
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (d.n_minus(), d.n_plus()));
        assert_eq!(m.mirror(), d);
        assert_eq!(PlanarDiagram::unknot().mirror(), PlanarDiagram::unknot());
    }

    #[test]
    fn pd_and_braid_trefoils_agree_on_counts() {
        let a = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        let b = parse_braid("aaa", 2).unwrap();
        assert_eq!(a.component_count(), b.component_count());
        assert_eq!((a.n_plus(), a.n_minus()), (b.n_plus(), b.n_minus()));
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = parse_braid("aaa", 2).unwrap();
        let b = parse_braid("aaa", 2).unwrap();
        assert_eq!(a.canonical_hash(), b.canonical_hash());
        let c = parse_braid("aaaaa", 2).unwrap();
        assert_ne!(a.canonical_hash(), c.canonical_hash());
        let m = a.with_marked_edge(Some(0));
        assert_ne!(a.canonical_hash(), m.canonical_hash());
    }
}
