//! The cube of resolutions and the (possibly deformed, possibly reduced)
//! chain complex it collapses to.
//!
//! Gradings: a generator in state I with p = #(1-labels) − #(X-labels) sits
//! in homological degree i = |I| − n₋ and quantum degree
//! j = p + |I| + n₊ − 2n₋. The edge increasing coordinate r carries the sign
//! (−1)^{#(1-bits below r)}.

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::{CircleSet, DiagramError, PlanarDiagram, ResolutionState};
use crate::frobenius::{FrobeniusSpec, Label};
use crate::poly::LaurentPoly;
use crate::ring::Coeff;

/// One basis chain: a full resolution together with a circle labeling.
/// Labeling bit k set means circle k carries X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub state: ResolutionState,
    pub labeling: u32,
    pub j: i32,
}

/// Sparse matrix in (row, col, coefficient) triplets, row = target index.
#[derive(Clone, Debug)]
pub struct SparseMat<R> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(u32, u32, R)>,
}

impl<R: Coeff> SparseMat<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Matrix product self ∘ other (apply `other` first).
    pub fn compose(&self, other: &SparseMat<R>) -> SparseMat<R> {
        assert_eq!(self.cols, other.rows);
        let mut acc: HashMap<(u32, u32), R> = HashMap::new();
        let mut by_col: HashMap<u32, Vec<(u32, R)>> = HashMap::new();
        for (r, c, v) in &self.entries {
            by_col.entry(*c).or_default().push((*r, v.clone()));
        }
        for (mid, c, v) in &other.entries {
            if let Some(rows) = by_col.get(mid) {
                for (r, w) in rows {
                    let e = acc.entry((*r, *c)).or_insert_with(R::zero);
                    *e = e.add(&w.mul(v));
                }
            }
        }
        let mut entries: Vec<(u32, u32, R)> = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_by_key(|&(r, c, _)| (c, r));
        SparseMat {
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Bigraded chain complex, one generator list and one outgoing differential
/// per homological degree.
#[derive(Clone, Debug)]
pub struct ChainComplex<R> {
    /// Homological degree of `gens[0]`.
    pub min_i: i32,
    pub gens: Vec<Vec<Generator>>,
    /// `diff[k]` maps degree `min_i + k` to `min_i + k + 1`; length is
    /// `gens.len() - 1`.
    pub diff: Vec<SparseMat<R>>,
    pub n_plus: u32,
    pub n_minus: u32,
}

impl<R: Coeff> ChainComplex<R> {
    pub fn degree_count(&self) -> usize {
        self.gens.len()
    }

    pub fn i_of(&self, k: usize) -> i32 {
        self.min_i + k as i32
    }

    pub fn total_generators(&self) -> usize {
        self.gens.iter().map(Vec::len).sum()
    }

    /// Generator counts per bidegree.
    pub fn graded_dimensions(&self) -> HashMap<(i32, i32), usize> {
        let mut out = HashMap::new();
        for (k, gs) in self.gens.iter().enumerate() {
            let i = self.i_of(k);
            for g in gs {
                *out.entry((i, g.j)).or_insert(0) += 1;
            }
        }
        out
    }

    /// d ∘ d = 0 in every degree.
    pub fn verify_d_squared(&self) -> bool {
        self.diff
            .windows(2)
            .all(|w| w[1].compose(&w[0]).is_zero())
    }

    /// Alternating sum Σ (−1)^i q^j over generators; the chain-level Jones
    /// polynomial of a graded complex.
    pub fn euler_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (k, gs) in self.gens.iter().enumerate() {
            let i = self.i_of(k);
            let sign: i64 = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            for g in gs {
                p.add_term(2 * g.j, &num_bigint::BigInt::from(sign));
            }
        }
        p
    }

    /// Stable JSON form: generators as (i, j, state bits, labeling), entries
    /// as (degree, row, col, coefficient string).
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct JsonGen {
            i: i32,
            j: i32,
            state: u64,
            labeling: u32,
        }
        let gens: Vec<JsonGen> = self
            .gens
            .iter()
            .enumerate()
            .flat_map(|(k, gs)| {
                let i = self.i_of(k);
                gs.iter().map(move |g| JsonGen {
                    i,
                    j: g.j,
                    state: g.state.bits(),
                    labeling: g.labeling,
                })
            })
            .collect();
        let entries: Vec<serde_json::Value> = self
            .diff
            .iter()
            .enumerate()
            .flat_map(|(k, m)| {
                let i = self.i_of(k);
                m.entries.iter().map(move |(r, c, v)| {
                    serde_json::json!([i, r, c, format!("{v:?}")])
                })
            })
            .collect();
        serde_json::json!({
            "min_i": self.min_i,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "generators": gens,
            "differential": entries,
        })
    }
}

impl ChainComplex<num_bigint::BigInt> {
    /// The same complex with coefficients reduced mod p. Needed because a
    /// generically built `Fp` complex only contains modulus-free constants.
    pub fn mod_p(&self, p: u64) -> ChainComplex<crate::ring::Fp> {
        use num_integer::Integer;
        let big_p = num_bigint::BigInt::from(p);
        let diff = self
            .diff
            .iter()
            .map(|m| SparseMat {
                rows: m.rows,
                cols: m.cols,
                entries: m
                    .entries
                    .iter()
                    .map(|(r, c, v)| {
                        let red = i64::try_from(v.mod_floor(&big_p)).unwrap();
                        (*r, *c, crate::ring::Fp::new(red, p))
                    })
                    .collect(),
            })
            .collect();
        ChainComplex {
            min_i: self.min_i,
            gens: self.gens.clone(),
            diff,
            n_plus: self.n_plus,
            n_minus: self.n_minus,
        }
    }

    /// The same complex with rational coefficients, for homology over ℚ.
    pub fn to_rational(&self) -> ChainComplex<num_rational::BigRational> {
        let diff = self
            .diff
            .iter()
            .map(|m| SparseMat {
                rows: m.rows,
                cols: m.cols,
                entries: m
                    .entries
                    .iter()
                    .map(|(r, c, v)| {
                        (*r, *c, num_rational::BigRational::from_integer(v.clone()))
                    })
                    .collect(),
            })
            .collect();
        ChainComplex {
            min_i: self.min_i,
            gens: self.gens.clone(),
            diff,
            n_plus: self.n_plus,
            n_minus: self.n_minus,
        }
    }
}

pub(crate) fn marked_circle(
    d: &PlanarDiagram,
    circles: &CircleSet,
) -> Result<usize, DiagramError> {
    if d.crossing_count() == 0 {
        if d.free_loops() > 0 {
            // The marked point sits on the first free circle.
            return Ok(0);
        }
        return Err(DiagramError::NoMarkedEdge);
    }
    let m = d.marked_edge().ok_or(DiagramError::NoMarkedEdge)?;
    let (out_slot, _) = d.edge_ends(m);
    Ok(circles.circle_of_slot(out_slot))
}

/// Build the Khovanov-type complex of `d` for the given Frobenius algebra.
///
/// `reduced` keeps the subcomplex where the marked circle is labeled X, with
/// quantum gradings shifted so the reduced unknot lands at (0,0). Reduction
/// requires t = 0 (otherwise X·X spills a 1 onto the marked circle and the
/// span is no subcomplex).
pub fn build_complex<R: Coeff>(
    d: &PlanarDiagram,
    spec: &FrobeniusSpec<R>,
    reduced: bool,
) -> Result<ChainComplex<R>, DiagramError> {
    if reduced {
        assert!(
            spec.t.is_zero(),
            "reduced complex needs t = 0 to be a subcomplex"
        );
    }
    let n = d.crossing_count();
    let (n_plus, n_minus) = (d.n_plus(), d.n_minus());
    // Resolutions and circle data for every state, indexed by state bits.
    let mut resolutions: Vec<CircleSet> = Vec::with_capacity(1 << n);
    for bits in 0..(1u64 << n) {
        resolutions.push(d.resolve(&ResolutionState::new(bits, n)).unwrap());
    }
    if reduced {
        marked_circle(d, &resolutions[0])?; // fail early without a mark
    }
    // The marked circle's index can differ per state; resolve it per state.
    let marked_of = |d: &PlanarDiagram, circles: &CircleSet| -> usize {
        marked_circle(d, circles).expect("marked circle exists")
    };

    // Enumerate generators per homological degree, deterministic order.
    // Generators of one state are contiguous; `range` records where.
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
    let mut range: HashMap<u64, (u32, u32)> = HashMap::new();
    let mut index: Vec<HashMap<(u64, u32), u32>> = vec![HashMap::new(); n + 1];
    for bits in 0..(1u64 << n) {
        let state = ResolutionState::new(bits, n);
        let w = state.weight() as usize;
        let circles = &resolutions[bits as usize];
        let m = circles.count();
        let marked_idx = if reduced { Some(marked_of(d, circles)) } else { None };
        let shift = if reduced { 1 } else { 0 };
        let start = gens[w].len() as u32;
        for labeling in 0..(1u32 << m) {
            if let Some(mi) = marked_idx {
                if labeling & (1 << mi) == 0 {
                    continue; // marked circle must carry X
                }
            }
            let ones = labeling.count_ones() as i32;
            let p = m as i32 - 2 * ones;
            let j = p + w as i32 + n_plus as i32 - 2 * n_minus as i32 + shift;
            let k = gens[w].len() as u32;
            index[w].insert((bits, labeling), k);
            gens[w].push(Generator {
                state,
                labeling,
                j,
            });
        }
        range.insert(bits, (start, gens[w].len() as u32));
    }

    // Differential: for each state and each 0-bit, the merge or split map.
    let mut diff: Vec<SparseMat<R>> = (0..n)
        .map(|w| SparseMat::zero(gens[w + 1].len(), gens[w].len()))
        .collect();
    for bits in 0..(1u64 << n) {
        let state = ResolutionState::new(bits, n);
        let w = state.weight() as usize;
        let src_circles = &resolutions[bits as usize];
        let m = src_circles.count();
        for r in 0..n {
            if state.bit(r) {
                continue;
            }
            let target = state.flipped(r);
            let tgt_circles = &resolutions[target.bits() as usize];
            let sign_neg = state.ones_below(r) % 2 == 1;
            // Circle correspondence via shared slots. Exactly one merge
            // (two sources, one target) or one split (one source, two
            // targets) happens; every other circle maps across.
            let mt = circle_transfer(src_circles, tgt_circles);
            let (start, end) = range[&bits];
            for src_pos in start as usize..end as usize {
                let g = gens[w][src_pos];
                let terms = apply_edge(spec, &mt, m, tgt_circles.count(), g.labeling);
                for (tgt_labeling, coeff) in terms {
                    let coeff = if sign_neg { coeff.neg() } else { coeff };
                    if coeff.is_zero() {
                        continue;
                    }
                    let tgt_pos = index[w + 1][&(target.bits(), tgt_labeling)];
                    diff[w].entries.push((tgt_pos, src_pos as u32, coeff));
                }
            }
        }
    }
    for m in &mut diff {
        // Sum duplicate positions (none expected, but keep canonical) and sort.
        m.entries.sort_by_key(|&(r, c, _)| (c, r));
    }
    Ok(ChainComplex {
        min_i: -(n_minus as i32),
        gens,
        diff,
        n_plus,
        n_minus,
    })
}

/// How circles of the source resolution sit inside the target resolution:
/// `targets_of[s]` lists target circle indices meeting source circle `s`,
/// and merge partners share a target.
pub(crate) enum EdgeKind {
    /// Sources (s1, s2) merge into target c.
    Merge(usize, usize, usize),
    /// Source s splits into targets (c1, c2).
    Split(usize, usize, usize),
}

pub(crate) struct CircleTransfer {
    pub(crate) kind: EdgeKind,
    /// Target index of every non-participating source circle.
    pub(crate) image: Vec<Option<usize>>,
    pub(crate) free_offset_src: usize,
    pub(crate) free_offset_tgt: usize,
}

pub(crate) fn circle_transfer(src: &CircleSet, tgt: &CircleSet) -> CircleTransfer {
    let mut image: Vec<Option<usize>> = vec![None; src.circles.len()];
    let mut targets_of: Vec<Vec<usize>> = vec![Vec::new(); src.circles.len()];
    for (si, slots) in src.circles.iter().enumerate() {
        for &slot in slots {
            let t = tgt.circle_of_slot(slot);
            if !targets_of[si].contains(&t) {
                targets_of[si].push(t);
            }
        }
    }
    let mut split: Option<(usize, usize, usize)> = None;
    let mut shared: HashMap<usize, Vec<usize>> = HashMap::new();
    for (si, ts) in targets_of.iter().enumerate() {
        match ts.len() {
            1 => {
                image[si] = Some(ts[0]);
                shared.entry(ts[0]).or_default().push(si);
            }
            2 => {
                let mut pair = [ts[0], ts[1]];
                pair.sort_unstable();
                split = Some((si, pair[0], pair[1]));
            }
            _ => unreachable!("a cube edge changes one crossing only"),
        }
    }
    let kind = if let Some((s, c1, c2)) = split {
        EdgeKind::Split(s, c1, c2)
    } else {
        let (&c, ss) = shared
            .iter()
            .find(|(_, ss)| ss.len() == 2)
            .expect("merge edge joins two circles");
        let (mut s1, mut s2) = (ss[0], ss[1]);
        if s1 > s2 {
            std::mem::swap(&mut s1, &mut s2);
        }
        image[s1] = None;
        image[s2] = None;
        EdgeKind::Merge(s1, s2, c)
    };
    CircleTransfer {
        kind,
        image,
        free_offset_src: src.circles.len(),
        free_offset_tgt: tgt.circles.len(),
    }
}

/// Push one labeling across a cube edge. Returns (target labeling, coeff).
fn apply_edge<R: Coeff>(
    spec: &FrobeniusSpec<R>,
    mt: &CircleTransfer,
    src_count: usize,
    tgt_count: usize,
    labeling: u32,
) -> Vec<(u32, R)> {
    let label = |i: usize| {
        if labeling & (1 << i) != 0 {
            Label::X
        } else {
            Label::One
        }
    };
    // Base labeling for circles that map straight across, free circles last.
    let mut base: u32 = 0;
    for (si, img) in mt.image.iter().enumerate() {
        if let Some(ti) = img {
            if labeling & (1 << si) != 0 {
                base |= 1 << ti;
            }
        }
    }
    let free_count = src_count - mt.free_offset_src;
    debug_assert_eq!(free_count, tgt_count - mt.free_offset_tgt);
    for f in 0..free_count {
        if labeling & (1 << (mt.free_offset_src + f)) != 0 {
            base |= 1 << (mt.free_offset_tgt + f);
        }
    }
    match mt.kind {
        EdgeKind::Merge(s1, s2, c) => spec
            .multiply(label(s1), label(s2))
            .into_iter()
            .map(|(l, coeff)| {
                let mut out = base;
                if l == Label::X {
                    out |= 1 << c;
                }
                (out, coeff)
            })
            .collect(),
        EdgeKind::Split(s, c1, c2) => spec
            .comultiply(label(s))
            .into_iter()
            .map(|(l1, l2, coeff)| {
                let mut out = base;
                if l1 == Label::X {
                    out |= 1 << c1;
                }
                if l2 == Label::X {
                    out |= 1 << c2;
                }
                (out, coeff)
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_braid;
    use num_bigint::BigInt;

    type Z = BigInt;

    #[test]
    fn unknot_complexes() {
        let u = PlanarDiagram::unknot();
        let c = build_complex::<Z>(&u, &FrobeniusSpec::khovanov(), false).unwrap();
        let dims = c.graded_dimensions();
        assert_eq!(dims.len(), 2);
        assert_eq!(dims[&(0, -1)], 1);
        assert_eq!(dims[&(0, 1)], 1);
        let r = build_complex::<Z>(&u, &FrobeniusSpec::khovanov(), true).unwrap();
        let rdims = r.graded_dimensions();
        assert_eq!(rdims.len(), 1);
        assert_eq!(rdims[&(0, 0)], 1);
    }

    #[test]
    fn empty_diagram_complex() {
        let c = build_complex::<Z>(
            &PlanarDiagram::empty(),
            &FrobeniusSpec::khovanov(),
            false,
        )
        .unwrap();
        assert_eq!(c.total_generators(), 1);
        assert_eq!(c.euler_poly(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_generator_count_and_d_squared() {
        let d = parse_braid("aaa", 2).unwrap();
        let c = build_complex::<Z>(&d, &FrobeniusSpec::khovanov(), false).unwrap();
        // Sum of 2^circles over the 8 states: 000→2, weight1→1, weight2→2, 111→3.
        let expect: usize = (0..8u64)
            .map(|bits| {
                let s = ResolutionState::new(bits, 3);
                1usize << d.resolve(&s).unwrap().count()
            })
            .sum();
        assert_eq!(c.total_generators(), expect);
        assert!(c.verify_d_squared());
    }

    #[test]
    fn d_squared_various_specs() {
        for word in ["aaa", "aBaB", "aabb"] {
            let d = parse_braid(word, 3).unwrap();
            for (h, t) in [(0i64, 0i64), (0, 1), (1, 0), (2, 3)] {
                let spec = FrobeniusSpec {
                    h: BigInt::from(h),
                    t: BigInt::from(t),
                };
                let c = build_complex(&d, &spec, false).unwrap();
                assert!(c.verify_d_squared(), "{word} at ({h},{t})");
            }
        }
    }

    #[test]
    fn graded_differential_preserves_j_and_lee_jumps_by_four() {
        let d = parse_braid("aaa", 2).unwrap();
        let c = build_complex::<Z>(&d, &FrobeniusSpec::khovanov(), false).unwrap();
        for (k, m) in c.diff.iter().enumerate() {
            for (r, col, _) in &m.entries {
                let js = c.gens[k][*col as usize].j;
                let jt = c.gens[k + 1][*r as usize].j;
                assert_eq!(js, jt);
            }
        }
        let lee = build_complex::<Z>(&d, &FrobeniusSpec::lee(), false).unwrap();
        for (k, m) in lee.diff.iter().enumerate() {
            for (r, col, _) in &m.entries {
                let jump = lee.gens[k + 1][*r as usize].j - lee.gens[k][*col as usize].j;
                assert!(jump == 0 || jump == 4, "bad Lee jump {jump}");
            }
        }
    }

    #[test]
    fn reduced_quotient_dimension_identity() {
        // dim C^{i,j} = dim C̃^{i,j-1} + dim C̃^{i,j+1} before the reduced
        // shift; with the +1 shift this reads as below.
        let d = parse_braid("aaa", 2).unwrap().with_marked_edge(Some(0));
        let c = build_complex::<Z>(&d, &FrobeniusSpec::khovanov(), false).unwrap();
        let r = build_complex::<Z>(&d, &FrobeniusSpec::khovanov(), true).unwrap();
        let cd = c.graded_dimensions();
        let rd = r.graded_dimensions();
        for (&(i, j), &dim) in &cd {
            let a = rd.get(&(i, j + 1)).copied().unwrap_or(0);
            let b = rd.get(&(i, j - 1)).copied().unwrap_or(0);
            assert_eq!(dim, a + b, "at ({i},{j})");
        }
    }

    #[test]
    fn mirror_symmetry_of_generator_counts() {
        let d = parse_braid("aab", 3).unwrap();
        let m = d.mirror();
        let cd = build_complex::<Z>(&d, &FrobeniusSpec::khovanov(), false)
            .unwrap()
            .graded_dimensions();
        let cm = build_complex::<Z>(&m, &FrobeniusSpec::khovanov(), false)
            .unwrap()
            .graded_dimensions();
        for (&(i, j), &dim) in &cd {
            assert_eq!(cm.get(&(-i, -j)).copied().unwrap_or(0), dim);
        }
    }
}
