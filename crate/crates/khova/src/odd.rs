//! Odd Khovanov homology: the exterior-algebra cube, its 2-face
//! classification, the GF(2) edge-sign solver, and homology tables.

use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

use crate::cube::{circle_transfer, marked_circle, ChainComplex, CircleTransfer, EdgeKind, Generator, SparseMat};
use crate::diagram::{CircleSet, DiagramError, PlanarDiagram, ResolutionState};
use crate::homalg::{homology_z, HomologyTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OddError {
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
    #[error("edge-sign system inconsistent (face classification bug)")]
    InconsistentSigns,
}

/// Monomials of an exterior algebra Λ⟨Z₁,…,Z_k⟩ are variable bitsets; a map
/// sends a monomial to signed monomials.
type Terms = Vec<(u64, i64)>;

/// Z_v ∧ m in the sorted-monomial basis; `None` when v already appears.
fn wedge(v: usize, m: u64, sign: i64) -> Option<(u64, i64)> {
    if m & (1 << v) != 0 {
        return None;
    }
    let below = (m & ((1u64 << v) - 1)).count_ones();
    let s = if below % 2 == 0 { sign } else { -sign };
    Some((m | (1 << v), s))
}

/// One differential edge of the cube: flip crossing `r` of `state`.
struct OddEdge {
    state: u64,
    r: usize,
    transfer: CircleTransfer,
    /// For a split, the ordered target pair fixed by the crossing's arrow:
    /// the circle through the crossing's slot 0, then through slot 2.
    arrow: Option<(usize, usize)>,
}

impl OddEdge {
    /// Image of variable `v` under the circle relabeling, with the split
    /// source mapped to the arrow head (either choice agrees after the
    /// (Z_head − Z_tail) factor).
    fn var_image(&self, v: usize) -> usize {
        let t = &self.transfer;
        if v >= t.free_offset_src {
            return t.free_offset_tgt + (v - t.free_offset_src);
        }
        match t.kind {
            EdgeKind::Merge(s1, s2, c) if v == s1 || v == s2 => c,
            EdgeKind::Split(s, _, _) if v == s => self.arrow.unwrap().0,
            _ => t.image[v].expect("non-participating circle maps across"),
        }
    }

    /// Push one signed monomial across: substitution for a merge,
    /// left-multiplication by (Z_head − Z_tail) for a split.
    fn apply(&self, m: u64, sign: i64) -> Terms {
        // Relabel, tracking the permutation parity of re-sorting.
        let mut images: Vec<usize> = Vec::new();
        for v in 0..64 {
            if m & (1u64 << v) != 0 {
                images.push(self.var_image(v));
            }
        }
        let mut parity = 0u32;
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a] > images[b] {
                    parity += 1;
                }
                if images[a] == images[b] {
                    return Vec::new(); // Z∧Z from a merge of two marked vars
                }
            }
        }
        let mut out = 0u64;
        for &t in &images {
            out |= 1 << t;
        }
        let s = if parity % 2 == 0 { sign } else { -sign };
        match self.transfer.kind {
            EdgeKind::Merge(..) => vec![(out, s)],
            EdgeKind::Split(..) => {
                let (head, tail) = self.arrow.unwrap();
                let mut terms = Vec::new();
                if let Some(t) = wedge(head, out, s) {
                    terms.push(t);
                }
                if let Some(t) = wedge(tail, out, -s) {
                    terms.push(t);
                }
                terms
            }
        }
    }
}

/// How an (unsigned) 2-face's two compositions compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    /// Both ways equal and nonzero: the sign fix must flip parity.
    Commuting,
    /// Both ways opposite and nonzero: signs must preserve parity.
    Anticommuting,
    /// Both compositions vanish: no constraint.
    Zero,
}

pub struct OddCube {
    n: usize,
    n_plus: u32,
    n_minus: u32,
    resolutions: Vec<CircleSet>,
    edges: Vec<OddEdge>,
    /// edge_index[state] -> first edge id; edges of a state are its zero
    /// bits in increasing crossing order.
    edge_start: Vec<u32>,
}

impl OddCube {
    fn edge_id(&self, state: u64, r: usize) -> usize {
        let mut id = self.edge_start[state as usize] as usize;
        for k in 0..r {
            if state & (1 << k) == 0 {
                id += 1;
            }
        }
        id
    }
}

pub fn build_odd_cube(d: &PlanarDiagram) -> Result<OddCube, OddError> {
    let n = d.crossings().len();
    let mut resolutions = Vec::with_capacity(1 << n);
    for bits in 0..(1u64 << n) {
        resolutions.push(d.resolve(&ResolutionState::new(bits, n))?);
    }
    let mut edges = Vec::new();
    let mut edge_start = Vec::with_capacity(1 << n);
    for state in 0..(1u64 << n) {
        edge_start.push(edges.len() as u32);
        for r in 0..n {
            if state & (1 << r) != 0 {
                continue;
            }
            let target = state | (1 << r);
            let transfer = circle_transfer(
                &resolutions[state as usize],
                &resolutions[target as usize],
            );
            let arrow = match transfer.kind {
                EdgeKind::Split(..) => {
                    let tgt = &resolutions[target as usize];
                    Some((
                        tgt.circle_of_slot(4 * r as u32),
                        tgt.circle_of_slot(4 * r as u32 + 2),
                    ))
                }
                EdgeKind::Merge(..) => None,
            };
            edges.push(OddEdge { state, r, transfer, arrow });
        }
    }
    Ok(OddCube {
        n,
        n_plus: d.n_plus(),
        n_minus: d.n_minus(),
        resolutions,
        edges,
        edge_start,
    })
}

impl OddCube {
    /// Compare the two unsigned compositions around the face of `state` and
    /// zero bits r1 < r2 on every basis monomial.
    pub fn classify_face(&self, state: u64, r1: usize, r2: usize) -> FaceKind {
        let k = self.resolutions[state as usize].count();
        let via = |first: usize, second: usize, m: u64| -> HashMap<u64, i64> {
            let e1 = &self.edges[self.edge_id(state, first)];
            let mid = state | (1 << first);
            let e2 = &self.edges[self.edge_id(mid, second)];
            let mut acc: HashMap<u64, i64> = HashMap::new();
            for (m1, s1) in e1.apply(m, 1) {
                for (m2, s2) in e2.apply(m1, s1) {
                    let e = acc.entry(m2).or_insert(0);
                    *e += s2;
                    if *e == 0 {
                        acc.remove(&m2);
                    }
                }
            }
            acc
        };
        let mut saw_equal = false;
        let mut saw_opposite = false;
        for m in 0..(1u64 << k) {
            let a = via(r1, r2, m);
            let b = via(r2, r1, m);
            if a.is_empty() && b.is_empty() {
                continue;
            }
            if a == b {
                saw_equal = true;
            } else {
                let flipped: HashMap<u64, i64> =
                    b.iter().map(|(&mm, &s)| (mm, -s)).collect();
                assert_eq!(a, flipped, "face neither commutes nor anticommutes");
                saw_opposite = true;
            }
        }
        assert!(
            !(saw_equal && saw_opposite),
            "face classification mixed across monomials"
        );
        if saw_equal {
            FaceKind::Commuting
        } else if saw_opposite {
            FaceKind::Anticommuting
        } else {
            FaceKind::Zero
        }
    }

    pub fn faces(&self) -> Vec<(u64, usize, usize, FaceKind)> {
        let mut out = Vec::new();
        for state in 0..(1u64 << self.n) {
            for r1 in 0..self.n {
                if state & (1 << r1) != 0 {
                    continue;
                }
                for r2 in r1 + 1..self.n {
                    if state & (1 << r2) != 0 {
                        continue;
                    }
                    out.push((state, r1, r2, self.classify_face(state, r1, r2)));
                }
            }
        }
        out
    }

    /// Solve the GF(2) system (one equation per constrained 2-face) for the
    /// negated-edge set, returning the lexicographically least solution in
    /// edge order. Nullspace gauge = vertex coboundaries of the cube.
    pub fn solve_signs(&self) -> Result<Vec<bool>, OddError> {
        let nvars = self.edges.len();
        let mut sys = F2System::default();
        for (state, r1, r2, kind) in self.faces() {
            let rhs = match kind {
                FaceKind::Commuting => true,
                FaceKind::Anticommuting => false,
                FaceKind::Zero => continue,
            };
            let vars = vec![
                self.edge_id(state, r1) as u32,
                self.edge_id(state | (1 << r1), r2) as u32,
                self.edge_id(state, r2) as u32,
                self.edge_id(state | (1 << r2), r1) as u32,
            ];
            if !sys.add_equation(vars, rhs) {
                return Err(OddError::InconsistentSigns);
            }
        }
        let mut sol = sys.particular_solution(nvars);
        // Lex-minimize over the coboundary gauge group.
        let words = (nvars + 63) / 64;
        let mut basis: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for v in 1..(1u64 << self.n) {
            let mut vec = vec![0u64; words];
            for r in 0..self.n {
                let e = if v & (1 << r) == 0 {
                    self.edge_id(v, r)
                } else {
                    self.edge_id(v ^ (1 << r), r)
                };
                vec[e / 64] ^= 1 << (e % 64);
            }
            loop {
                let Some(lead) = leading_bit(&vec) else { break };
                match basis.get(&lead) {
                    Some(b) => xor_into(&mut vec, b),
                    None => {
                        basis.insert(lead, vec);
                        break;
                    }
                }
            }
        }
        let mut packed = vec![0u64; words];
        for (i, &b) in sol.iter().enumerate() {
            if b {
                packed[i / 64] |= 1 << (i % 64);
            }
        }
        for (&lead, b) in &basis {
            if packed[lead / 64] & (1 << (lead % 64)) != 0 {
                xor_into(&mut packed, b);
            }
        }
        for (i, s) in sol.iter_mut().enumerate() {
            *s = packed[i / 64] & (1 << (i % 64)) != 0;
        }
        Ok(sol)
    }

    /// Assemble the signed total complex over ℤ.
    pub fn complex(
        &self,
        d: &PlanarDiagram,
        signs: &[bool],
        reduced: bool,
    ) -> Result<ChainComplex<BigInt>, OddError> {
        let n = self.n;
        let shift = if reduced { 1 } else { 0 };
        let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
        let mut index: Vec<HashMap<(u64, u32), u32>> = vec![HashMap::new(); n + 1];
        let marked_of = |circles: &CircleSet| -> Option<usize> {
            if reduced {
                Some(marked_circle(d, circles).expect("marked circle exists"))
            } else {
                None
            }
        };
        if reduced {
            marked_circle(d, &self.resolutions[0])?;
        }
        for bits in 0..(1u64 << n) {
            let state = ResolutionState::new(bits, n);
            let w = state.weight() as usize;
            let circles = &self.resolutions[bits as usize];
            let k = circles.count();
            let marked = marked_of(circles);
            for m in 0..(1u64 << k) {
                if let Some(mc) = marked {
                    if m & (1 << mc) == 0 {
                        continue;
                    }
                }
                let p = k as i32 - 2 * m.count_ones() as i32;
                let j = p + w as i32 + self.n_plus as i32 - 2 * self.n_minus as i32 + shift;
                index[w].insert((bits, m as u32), gens[w].len() as u32);
                gens[w].push(Generator { state, labeling: m as u32, j });
            }
        }
        let mut diff: Vec<SparseMat<BigInt>> = (0..n)
            .map(|w| SparseMat::zero(gens[w + 1].len(), gens[w].len()))
            .collect();
        for e in &self.edges {
            let w = ResolutionState::new(e.state, n).weight() as usize;
            let target = e.state | (1 << e.r);
            let sign = if signs[self.edge_id(e.state, e.r)] { -1 } else { 1 };
            let k = self.resolutions[e.state as usize].count();
            for m in 0..(1u64 << k) {
                let Some(&src) = index[w].get(&(e.state, m as u32)) else {
                    continue;
                };
                for (m2, s) in e.apply(m, sign) {
                    let Some(&tgt) = index[w + 1].get(&(target, m2 as u32)) else {
                        continue;
                    };
                    diff[w].entries.push((tgt, src, BigInt::from(s)));
                }
            }
        }
        for m in &mut diff {
            m.entries.sort_by_key(|&(r, c, _)| (c, r));
        }
        Ok(ChainComplex {
            min_i: -(self.n_minus as i32),
            gens,
            diff,
            n_plus: self.n_plus,
            n_minus: self.n_minus,
        })
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Sparse incremental GF(2) solver; rows kept as sorted variable lists.
#[derive(Default)]
struct F2System {
    /// Pivot rows keyed by leading variable.
    rows: BTreeMap<u32, (Vec<u32>, bool)>,
}

impl F2System {
    /// Returns false when the equation is inconsistent with the system.
    fn add_equation(&mut self, mut vars: Vec<u32>, mut rhs: bool) -> bool {
        vars.sort_unstable();
        // Repeated variables cancel in pairs over GF(2).
        let mut cleaned = Vec::with_capacity(vars.len());
        let mut i = 0;
        while i < vars.len() {
            if i + 1 < vars.len() && vars[i] == vars[i + 1] {
                i += 2;
            } else {
                cleaned.push(vars[i]);
                i += 1;
            }
        }
        vars = cleaned;
        loop {
            let Some(&lead) = vars.first() else {
                return !rhs;
            };
            match self.rows.get(&lead) {
                Some((row, r)) => {
                    vars = xor_sorted(&vars, row);
                    rhs ^= r;
                }
                None => {
                    self.rows.insert(lead, (vars, rhs));
                    return true;
                }
            }
        }
    }

    /// Free variables to 0, back-substitute pivots in decreasing order.
    fn particular_solution(&self, nvars: usize) -> Vec<bool> {
        let mut sol = vec![false; nvars];
        for (&lead, (row, rhs)) in self.rows.iter().rev() {
            let mut v = *rhs;
            for &x in row.iter().skip(1) {
                v ^= sol[x as usize];
            }
            sol[lead as usize] = v;
        }
        sol
    }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

/// Integral odd Khovanov homology with the even theory's grading
/// conventions.
pub fn odd_homology(d: &PlanarDiagram, reduced: bool) -> Result<HomologyTable, OddError> {
    let cube = build_odd_cube(d)?;
    let signs = cube.solve_signs()?;
    let c = cube.complex(d, &signs, reduced)?;
    debug_assert!(c.verify_d_squared());
    Ok(homology_z(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::jones;
    use crate::cube::build_complex;
    use crate::diagram::parse_braid;
    use crate::frobenius::FrobeniusSpec;
    use crate::homalg::homology_field;

    #[test]
    fn one_crossing_cube() {
        let d = parse_braid("a", 2).unwrap();
        let cube = build_odd_cube(&d).unwrap();
        assert_eq!(cube.edges.len(), 1);
        assert!(cube.faces().is_empty());
        let t = odd_homology(&d, false).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert!(t.entries.contains_key(&(0, -1)));
        assert!(t.entries.contains_key(&(0, 1)));
    }

    #[test]
    fn hopf_faces_classify() {
        let cube = build_odd_cube(&parse_braid("aa", 2).unwrap()).unwrap();
        let faces = cube.faces();
        assert_eq!(faces.len(), 1);
        for (_, _, _, kind) in faces {
            assert_ne!(kind, FaceKind::Zero);
        }
        let signs = cube.solve_signs().unwrap();
        let d = parse_braid("aa", 2).unwrap();
        let c = cube.complex(&d, &signs, false).unwrap();
        assert!(c.verify_d_squared());
    }

    #[test]
    fn trefoil_cube_shape() {
        let d = parse_braid("aaa", 2).unwrap();
        let cube = build_odd_cube(&d).unwrap();
        assert_eq!(cube.edges.len(), 12);
        assert_eq!(cube.faces().len(), 6);
        let signs = cube.solve_signs().unwrap();
        let c = cube.complex(&d, &signs, false).unwrap();
        assert!(c.verify_d_squared());
        // Generator counts agree with the even theory.
        let even = build_complex(&d, &FrobeniusSpec::<BigInt>::khovanov(), false).unwrap();
        assert_eq!(c.graded_dimensions(), even.graded_dimensions());
        assert_eq!(c.euler_poly(), jones(&d));
    }

    #[test]
    fn gauge_choice_does_not_change_homology() {
        let d = parse_braid("aaa", 2).unwrap();
        let cube = build_odd_cube(&d).unwrap();
        let signs = cube.solve_signs().unwrap();
        let t1 = homology_z(&cube.complex(&d, &signs, false).unwrap());
        // Flip by a vertex coboundary: still a valid sign assignment.
        let mut other = signs.clone();
        let v: u64 = 0b001;
        for r in 0..3 {
            let e = if v & (1 << r) == 0 {
                cube.edge_id(v, r)
            } else {
                cube.edge_id(v ^ (1 << r), r)
            };
            other[e] = !other[e];
        }
        let c2 = cube.complex(&d, &other, false).unwrap();
        assert!(c2.verify_d_squared());
        assert_eq!(t1, homology_z(&c2));
    }

    #[test]
    fn trefoil_odd_tables() {
        let d = parse_braid("aaa", 2).unwrap().with_marked_edge(Some(0));
        let red = odd_homology(&d, true).unwrap();
        // Alternating: reduced odd homology is torsion-free and thin.
        assert_eq!(red.torsion_count(), 0);
        assert_eq!(red.total_free_rank(), 3);
        assert_eq!(red.delta_support().len(), 1);
        let unred = odd_homology(&d, false).unwrap();
        // Unreduced = two grading-shifted copies of reduced.
        assert_eq!(unred.torsion_count(), 0);
        for (&(i, j), e) in &unred.entries {
            let a = red.entries.get(&(i, j + 1)).map_or(0, |x| x.free_rank);
            let b = red.entries.get(&(i, j - 1)).map_or(0, |x| x.free_rank);
            assert_eq!(e.free_rank, a + b, "at ({i},{j})");
        }
        assert_eq!(unred.total_free_rank(), 2 * red.total_free_rank());
    }

    #[test]
    fn mod_two_agrees_with_even() {
        for (word, strands) in [("aaa", 2), ("aBaB", 3), ("aa", 2)] {
            let d = parse_braid(word, strands).unwrap();
            let cube = build_odd_cube(&d).unwrap();
            let signs = cube.solve_signs().unwrap();
            let odd_c = cube.complex(&d, &signs, false).unwrap();
            let even_c =
                build_complex(&d, &FrobeniusSpec::<BigInt>::khovanov(), false).unwrap();
            let odd_f2 = homology_field(&odd_c.mod_p(2), "F2");
            let even_f2 = homology_field(&even_c.mod_p(2), "F2");
            assert_eq!(odd_f2, even_f2, "braid {word}");
        }
    }

    #[test]
    fn solver_is_deterministic_and_lex_least() {
        let cube = build_odd_cube(&parse_braid("aBa", 3).unwrap()).unwrap();
        let s1 = cube.solve_signs().unwrap();
        let s2 = cube.solve_signs().unwrap();
        assert_eq!(s1, s2);
        // No gauge flip may produce a lexicographically smaller assignment.
        for v in 1..(1u64 << 3) {
            let mut alt = s1.clone();
            for r in 0..3 {
                let e = if v & (1 << r) == 0 {
                    cube.edge_id(v, r)
                } else {
                    cube.edge_id(v ^ (1 << r), r)
                };
                alt[e] = !alt[e];
            }
            assert!(alt >= s1, "gauge {v:#b} beats the solver output");
        }
    }
}
