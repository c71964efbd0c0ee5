//! Crossingless matchings, the arc rings Hⁿ they generate, and small tangle
//! complexes. Morphisms P_a → P_b live in A^{⊗c} where c counts the circles
//! of the glued 1-manifold b̄a; composition contracts the middle matching one
//! saddle at a time.

use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

use crate::frobenius::{FrobeniusSpec, Label};
use crate::ring::Coeff;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArcError {
    #[error("matchings pair different point sets")]
    BoundaryMismatch,
}

/// Involution on an arbitrary set of boundary points; both directions stored.
pub(crate) type Pairing = BTreeMap<u32, u32>;

pub(crate) fn pair(p: &mut Pairing, a: u32, b: u32) {
    p.insert(a, b);
    p.insert(b, a);
}

/// Closed cycles of the union of two pairings on the same point set, each
/// cycle listed from its smallest point, cycles sorted by smallest point.
pub(crate) fn glue_cycles(a: &Pairing, b: &Pairing) -> Vec<Vec<u32>> {
    debug_assert!(a.keys().eq(b.keys()), "pairings must share a boundary");
    let mut seen: BTreeMap<u32, bool> = a.keys().map(|&p| (p, false)).collect();
    let mut cycles = Vec::new();
    for &start in a.keys() {
        if seen[&start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        let mut use_a = true;
        loop {
            cycle.push(p);
            seen.insert(p, true);
            p = if use_a { a[&p] } else { b[&p] };
            use_a = !use_a;
            if p == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

/// Terms of an A^{⊗c} element: bitmask (bit = X label) over canonically
/// ordered cycles, with a coefficient.
pub(crate) type Terms<R> = Vec<(u64, R)>;

pub(crate) fn add_term<R: Coeff>(acc: &mut HashMap<u64, R>, mask: u64, c: R) {
    let e = acc.entry(mask).or_insert_with(R::zero);
    *e = e.add(&c);
    if e.is_zero() {
        acc.remove(&mask);
    }
}

pub(crate) fn collect_terms<R: Coeff>(acc: HashMap<u64, R>) -> Terms<R> {
    let mut v: Vec<(u64, R)> = acc.into_iter().collect();
    v.sort_by_key(|&(m, _)| m);
    v
}

/// TQFT element of the genus-0 cobordism (saddles plus tubes) between two
/// pairings of the same points: each connected component of the arc graph
/// contributes the iterated coproduct Δ^{b−1}(1) on its b glue cycles.
pub(crate) fn cobordism_element<R: Coeff>(
    spec: &FrobeniusSpec<R>,
    src: &Pairing,
    tgt: &Pairing,
) -> Terms<R> {
    let cycles = glue_cycles(src, tgt);
    // Component id per point via union of both arc sets.
    let mut comp: BTreeMap<u32, u32> = BTreeMap::new();
    let mut next = 0u32;
    for &p in src.keys() {
        if comp.contains_key(&p) {
            continue;
        }
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            if comp.contains_key(&q) {
                continue;
            }
            comp.insert(q, next);
            stack.push(src[&q]);
            stack.push(tgt[&q]);
        }
        next += 1;
    }
    // Cycles per component, in canonical cycle order.
    let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); next as usize];
    for (ci, cyc) in cycles.iter().enumerate() {
        by_comp[comp[&cyc[0]] as usize].push(ci);
    }
    let mut terms: Terms<R> = vec![(0, R::one())];
    for cycle_ids in &by_comp {
        let labelings = coproduct_of_unit(spec, cycle_ids.len());
        let mut new_terms = Vec::new();
        for (mask, coeff) in &terms {
            for (labels, c2) in &labelings {
                let mut m = *mask;
                for (slot, &ci) in cycle_ids.iter().enumerate() {
                    if labels[slot] == Label::X {
                        m |= 1 << ci;
                    }
                }
                new_terms.push((m, coeff.mul(c2)));
            }
        }
        terms = new_terms;
    }
    let mut acc = HashMap::new();
    for (m, c) in terms {
        add_term(&mut acc, m, c);
    }
    collect_terms(acc)
}

/// Δ^{b−1}(1) as labelings of b slots. b = 0 would be a closed sphere; the
/// scan never produces one.
fn coproduct_of_unit<R: Coeff>(spec: &FrobeniusSpec<R>, b: usize) -> Vec<(Vec<Label>, R)> {
    assert!(b >= 1, "closed cobordism component");
    let mut out: Vec<(Vec<Label>, R)> = vec![(vec![Label::One], R::one())];
    for _ in 1..b {
        let mut next = Vec::new();
        for (labels, c) in &out {
            let last = *labels.last().unwrap();
            for (l1, l2, c2) in spec.comultiply(last) {
                let mut ls = labels.clone();
                *ls.last_mut().unwrap() = l1;
                ls.push(l2);
                next.push((ls, c.mul(&c2)));
            }
        }
        out = next;
    }
    out
}

/// Contract the middle pairing: compose f ∈ F(b̄a) with g ∈ F(c̄b). Works one
/// saddle per middle arc, merging (m) or splitting (Δ) the tracked cycles;
/// leftover middle free circles evaluate through ε.
pub(crate) fn compose_terms<R: Coeff>(
    spec: &FrobeniusSpec<R>,
    a: &Pairing,
    b: &Pairing,
    c: &Pairing,
    frees: (usize, usize, usize),
    f: &Terms<R>,
    g: &Terms<R>,
) -> Terms<R> {
    let (a_free, b_free, c_free) = frees;
    let ab = glue_cycles(a, b);
    let bc = glue_cycles(b, c);
    let ac = glue_cycles(a, c);
    // Vertices: bottom point p → 2p, top point p → 2p+1.
    let bot = |p: u32| 2 * p;
    let top = |p: u32| 2 * p + 1;
    // Current label state per term: cycle representative (min vertex) → label,
    // plus pass-through masks for outer free circles.
    struct Work<R> {
        labels: HashMap<u32, Label>,
        a_free_mask: u64,
        c_free_mask: u64,
        coeff: R,
    }
    // Orbit representative scan: outer arcs fixed (a on bottom, c on top),
    // inner evolves from doubled b-arcs to verticals.
    let mut inner: HashMap<u32, u32> = HashMap::new();
    for (&p, &q) in b {
        inner.insert(bot(p), bot(q));
        inner.insert(top(p), top(q));
    }
    let outer: HashMap<u32, u32> = a
        .iter()
        .map(|(&p, &q)| (bot(p), bot(q)))
        .chain(c.iter().map(|(&p, &q)| (top(p), top(q))))
        .collect();
    let orbit_reps = |inner: &HashMap<u32, u32>| -> HashMap<u32, u32> {
        let mut rep = HashMap::new();
        for &start in outer.keys() {
            if rep.contains_key(&start) {
                continue;
            }
            let mut members = Vec::new();
            let mut v = start;
            let mut use_outer = true;
            loop {
                members.push(v);
                v = if use_outer { outer[&v] } else { inner[&v] };
                use_outer = !use_outer;
                if v == start {
                    break;
                }
            }
            let r = *members.iter().min().unwrap();
            for m in members {
                rep.insert(m, r);
            }
        }
        rep
    };
    let rep0 = orbit_reps(&inner);

    let mut work: Vec<Work<R>> = Vec::new();
    for (fm, fc) in f {
        for (gm, gc) in g {
            // Middle free circles pair up through ε(μ·ν).
            let mut coeff = fc.mul(gc);
            for k in 0..b_free {
                let mu = if fm & (1 << (ab.len() + a_free + k)) != 0 {
                    Label::X
                } else {
                    Label::One
                };
                let nu = if gm & (1 << (bc.len() + k)) != 0 {
                    Label::X
                } else {
                    Label::One
                };
                let mut eps = R::zero();
                for (l, c2) in spec.multiply(mu, nu) {
                    eps = eps.add(&spec.counit(l).mul(&c2));
                }
                coeff = coeff.mul(&eps);
            }
            if coeff.is_zero() {
                continue;
            }
            let mut labels = HashMap::new();
            for (ci, cyc) in ab.iter().enumerate() {
                let l = if fm & (1 << ci) != 0 { Label::X } else { Label::One };
                labels.insert(rep0[&bot(cyc[0])], l);
            }
            for (ci, cyc) in bc.iter().enumerate() {
                let l = if gm & (1 << ci) != 0 { Label::X } else { Label::One };
                labels.insert(rep0[&top(cyc[0])], l);
            }
            let mut a_free_mask = 0u64;
            for k in 0..a_free {
                if fm & (1 << (ab.len() + k)) != 0 {
                    a_free_mask |= 1 << k;
                }
            }
            let mut c_free_mask = 0u64;
            for k in 0..c_free {
                if gm & (1 << (bc.len() + b_free + k)) != 0 {
                    c_free_mask |= 1 << k;
                }
            }
            work.push(Work { labels, a_free_mask, c_free_mask, coeff });
        }
    }

    // One saddle per middle arc.
    let arcs: Vec<(u32, u32)> = b.iter().filter(|(p, q)| p < q).map(|(&p, &q)| (p, q)).collect();
    for &(i, j) in &arcs {
        let before = orbit_reps(&inner);
        inner.insert(bot(i), top(i));
        inner.insert(top(i), bot(i));
        inner.insert(bot(j), top(j));
        inner.insert(top(j), bot(j));
        let after = orbit_reps(&inner);
        let r_bot = before[&bot(i)];
        let r_top = before[&top(i)];
        let mut next: Vec<Work<R>> = Vec::new();
        // Untouched cycles keep their members, hence their min-vertex reps.
        let keep = |labels: &HashMap<u32, Label>| -> HashMap<u32, Label> {
            labels
                .iter()
                .filter(|(&r, _)| r != r_bot && r != r_top)
                .map(|(&r, &l)| (r, l))
                .collect()
        };
        if r_bot != r_top {
            // Merge.
            let r_new = after[&bot(i)];
            for w in work {
                let l1 = w.labels[&r_bot];
                let l2 = w.labels[&r_top];
                for (l, c2) in spec.multiply(l1, l2) {
                    let mut labels = keep(&w.labels);
                    labels.insert(r_new, l);
                    next.push(Work {
                        labels,
                        a_free_mask: w.a_free_mask,
                        c_free_mask: w.c_free_mask,
                        coeff: w.coeff.mul(&c2),
                    });
                }
            }
        } else if after[&bot(i)] != after[&bot(j)] {
            // Split: the two pieces run through the new verticals at i and j.
            let r1 = after[&bot(i)];
            let r2 = after[&bot(j)];
            for w in work {
                let l = w.labels[&r_bot];
                for (l1, l2, c2) in spec.comultiply(l) {
                    let mut labels = keep(&w.labels);
                    labels.insert(r1, l1);
                    labels.insert(r2, l2);
                    next.push(Work {
                        labels,
                        a_free_mask: w.a_free_mask,
                        c_free_mask: w.c_free_mask,
                        coeff: w.coeff.mul(&c2),
                    });
                }
            }
        } else {
            // Non-separating surgery on one cycle: the handle operator m∘Δ.
            let r_new = after[&bot(i)];
            for w in work {
                let l = w.labels[&r_bot];
                for (l1, l2, c2) in spec.comultiply(l) {
                    for (l3, c3) in spec.multiply(l1, l2) {
                        let mut labels = keep(&w.labels);
                        labels.insert(r_new, l3);
                        next.push(Work {
                            labels,
                            a_free_mask: w.a_free_mask,
                            c_free_mask: w.c_free_mask,
                            coeff: w.coeff.mul(&c2).mul(&c3),
                        });
                    }
                }
            }
        }
        work = next;
    }

    // Read the survivors off against the a∪c glue cycles.
    let final_rep = orbit_reps(&inner);
    let mut slot_of_rep: HashMap<u32, usize> = HashMap::new();
    for (ci, cyc) in ac.iter().enumerate() {
        slot_of_rep.insert(final_rep[&bot(cyc[0])], ci);
    }
    let mut acc: HashMap<u64, R> = HashMap::new();
    for w in work {
        let mut mask = 0u64;
        for (r, l) in &w.labels {
            if *l == Label::X {
                mask |= 1 << slot_of_rep[r];
            }
        }
        mask |= w.a_free_mask << ac.len();
        mask |= w.c_free_mask << (ac.len() + a_free);
        add_term(&mut acc, mask, w.coeff);
    }
    collect_terms(acc)
}

/// A crossingless matching of 2n points on a line (0-indexed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    partner: Vec<u32>,
}

impl Matching {
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut partner = vec![u32::MAX; 2 * n];
        for &(a, b) in pairs {
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        assert!(partner.iter().all(|&p| p != u32::MAX), "not a perfect matching");
        Matching { partner }
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: u32) -> u32 {
        self.partner[p as usize]
    }

    pub fn is_noncrossing(&self) -> bool {
        for a in 0..self.partner.len() as u32 {
            let b = self.partner(a);
            if a >= b {
                continue;
            }
            for c in a + 1..b {
                let d = self.partner(c);
                if d < a || d > b {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn pairing(&self) -> Pairing {
        self.partner
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32, p))
            .collect()
    }

    /// Circle count of the closed 1-manifold b̄a.
    pub fn glue(&self, other: &Matching) -> Result<usize, ArcError> {
        if self.n() != other.n() {
            return Err(ArcError::BoundaryMismatch);
        }
        Ok(glue_cycles(&self.pairing(), &other.pairing()).len())
    }
}

/// All crossingless matchings of 2n points, deterministic order; Catalan(n)
/// of them.
pub fn enumerate_matchings(n: usize) -> Vec<Matching> {
    // The first point pairs inside an even-length prefix; the enclosed and
    // remaining segments close independently (non-crossing on a line).
    fn gen(points: &[u32]) -> Vec<Vec<(u32, u32)>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let first = points[0];
        let mut out = Vec::new();
        for k in (1..points.len()).step_by(2) {
            let mate = points[k];
            for inner in gen(&points[1..k]) {
                for outer in gen(&points[k + 1..]) {
                    let mut m = vec![(first, mate)];
                    m.extend_from_slice(&inner);
                    m.extend_from_slice(&outer);
                    out.push(m);
                }
            }
        }
        out
    }
    let points: Vec<u32> = (0..2 * n as u32).collect();
    gen(&points)
        .into_iter()
        .map(|pairs| Matching::from_pairs(n, &pairs))
        .collect()
}

/// Element of Hom(P_src, P_tgt) = F(t̄gt·src) in the arc ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcRingElement<R> {
    pub src: Matching,
    pub tgt: Matching,
    /// Bitmask (bit = X) over the glue cycles in canonical order.
    pub terms: Terms<R>,
}

impl<R: Coeff> ArcRingElement<R> {
    pub fn idempotent(a: &Matching) -> Self {
        ArcRingElement {
            src: a.clone(),
            tgt: a.clone(),
            terms: vec![(0, R::one())],
        }
    }

    pub fn basis_element(src: &Matching, tgt: &Matching, mask: u64) -> Self {
        ArcRingElement {
            src: src.clone(),
            tgt: tgt.clone(),
            terms: vec![(mask, R::one())],
        }
    }

    /// The elementary saddles-and-tubes cobordism src → tgt.
    pub fn cobordism(spec: &FrobeniusSpec<R>, src: &Matching, tgt: &Matching) -> Self {
        ArcRingElement {
            src: src.clone(),
            tgt: tgt.clone(),
            terms: cobordism_element(spec, &src.pairing(), &tgt.pairing()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// other ∘ self: first self (src → mid), then other (mid → tgt).
    pub fn then(
        &self,
        other: &ArcRingElement<R>,
        spec: &FrobeniusSpec<R>,
    ) -> Result<ArcRingElement<R>, ArcError> {
        if self.tgt != other.src {
            return Err(ArcError::BoundaryMismatch);
        }
        let terms = compose_terms(
            spec,
            &self.src.pairing(),
            &self.tgt.pairing(),
            &other.tgt.pairing(),
            (0, 0, 0),
            &self.terms,
            &other.terms,
        );
        Ok(ArcRingElement {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            terms,
        })
    }

    /// Degree of a homogeneous element; idempotents sit in degree 0 and a
    /// basis term with x X-labels on c cycles has degree c − 2x − n.
    pub fn degree(&self) -> Option<i32> {
        let c = glue_cycles(&self.src.pairing(), &self.tgt.pairing()).len() as i32;
        let n = self.src.n() as i32;
        let mut deg = None;
        for (mask, _) in &self.terms {
            let d = c - 2 * mask.count_ones() as i32 - n;
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }
}

/// One elementary vertical slice of a tangle.
pub enum TangleSlice {
    /// A crossingless matching with some closed circles next to it.
    Flat { matching: Matching, circles: u32 },
    /// A single crossing on 4 boundary points (0,1 bottom; 2,3 top).
    Crossing { positive: bool },
}

/// Complex of (matching, quantum shift) objects with arc-ring differentials.
pub struct TangleComplex<R> {
    pub levels: Vec<Vec<(Matching, i32)>>,
    /// diff[k]: entries (row in level k+1, col in level k, element).
    pub diff: Vec<Vec<(u32, u32, ArcRingElement<R>)>>,
}

impl<R: Coeff> TangleComplex<R> {
    pub fn object_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// Complexes of the elementary slices. Circles are delooped on the spot:
/// A^{⊗k} ⊗ P_a becomes 2^k shifted copies of P_a.
pub fn tangle_complex<R: Coeff>(t: &TangleSlice, spec: &FrobeniusSpec<R>) -> TangleComplex<R> {
    match t {
        TangleSlice::Flat { matching, circles } => {
            let mut objs = Vec::new();
            for mask in 0u32..(1 << circles) {
                let shift = *circles as i32 - 2 * mask.count_ones() as i32;
                objs.push((matching.clone(), shift));
            }
            TangleComplex { levels: vec![objs], diff: Vec::new() }
        }
        TangleSlice::Crossing { positive } => {
            // 0-resolution ≍ (caps/cups by slot convention), 1-resolution ‖.
            let res0 = Matching::from_pairs(2, &[(0, 3), (1, 2)]);
            let res1 = Matching::from_pairs(2, &[(0, 1), (2, 3)]);
            let saddle = ArcRingElement::cobordism(spec, &res0, &res1);
            if *positive {
                TangleComplex {
                    levels: vec![vec![(res0, 0)], vec![(res1, 1)]],
                    diff: vec![vec![(0, 0, saddle)]],
                }
            } else {
                let back = ArcRingElement::cobordism(spec, &res1, &res0);
                TangleComplex {
                    levels: vec![vec![(res1, -1)], vec![(res0, 0)]],
                    diff: vec![vec![(0, 0, back)]],
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Z = BigInt;

    fn kh() -> FrobeniusSpec<Z> {
        FrobeniusSpec::khovanov()
    }

    #[test]
    fn catalan_counts() {
        for (n, want) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (5, 42), (10, 16796)] {
            let ms = enumerate_matchings(n);
            assert_eq!(ms.len(), want, "n={n}");
            for m in &ms {
                assert!(m.is_noncrossing());
            }
        }
    }

    #[test]
    fn glue_counts() {
        let m1 = enumerate_matchings(1);
        assert_eq!(m1[0].glue(&m1[0]).unwrap(), 1);
        let m2 = enumerate_matchings(2);
        let nested = m2.iter().find(|m| m.partner(0) == 3).unwrap();
        let unnested = m2.iter().find(|m| m.partner(0) == 1).unwrap();
        assert_eq!(nested.glue(nested).unwrap(), 2);
        assert_eq!(unnested.glue(unnested).unwrap(), 2);
        assert_eq!(nested.glue(unnested).unwrap(), 1);
        for n in 1..=4 {
            for m in enumerate_matchings(n) {
                assert_eq!(m.glue(&m).unwrap(), n);
            }
        }
        assert_eq!(
            m1[0].glue(&m2[0]),
            Err(ArcError::BoundaryMismatch)
        );
    }

    #[test]
    fn idempotents_act_as_identity() {
        let spec = kh();
        for n in 1..=3 {
            let ms = enumerate_matchings(n);
            for a in &ms {
                for b in &ms {
                    let c = a.glue(b).unwrap();
                    for mask in 0u64..(1 << c) {
                        let x = ArcRingElement::<Z>::basis_element(a, b, mask);
                        let left = ArcRingElement::idempotent(a).then(&x, &spec).unwrap();
                        assert_eq!(left, x, "1_a ∘ x");
                        let right = x.then(&ArcRingElement::idempotent(b), &spec).unwrap();
                        assert_eq!(right, x, "x ∘ 1_b");
                    }
                }
            }
        }
    }

    #[test]
    fn x_squares_to_zero() {
        let spec = kh();
        let m = &enumerate_matchings(1)[0];
        let x = ArcRingElement::<Z>::basis_element(m, m, 1);
        let sq = x.then(&x, &spec).unwrap();
        assert!(sq.is_zero());
        // Lee deformation: X·X = t·1 instead.
        let lee = FrobeniusSpec::<Z>::lee();
        let sq2 = x.then(&x, &lee).unwrap();
        assert_eq!(sq2.terms, vec![(0, Z::from(1))]);
    }

    #[test]
    fn composition_associative() {
        let spec = kh();
        let ms = enumerate_matchings(2);
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    for d in &ms {
                        let cab = a.glue(b).unwrap();
                        let cbc = b.glue(c).unwrap();
                        let ccd = c.glue(d).unwrap();
                        for m1 in 0u64..(1 << cab) {
                            for m2 in 0u64..(1 << cbc) {
                                for m3 in 0u64..(1 << ccd) {
                                    let x = ArcRingElement::<Z>::basis_element(a, b, m1);
                                    let y = ArcRingElement::basis_element(b, c, m2);
                                    let z = ArcRingElement::basis_element(c, d, m3);
                                    let l = x.then(&y, &spec).unwrap().then(&z, &spec).unwrap();
                                    let r = x.then(&y.then(&z, &spec).unwrap(), &spec).unwrap();
                                    assert_eq!(
                                        l, r,
                                        "a={:?} b={:?} c={:?} d={:?} m=({m1},{m2},{m3})",
                                        a.partner, b.partner, c.partner, d.partner
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degrees_add_under_composition() {
        let spec = kh();
        let ms = enumerate_matchings(2);
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    let cab = a.glue(b).unwrap();
                    let cbc = b.glue(c).unwrap();
                    for m1 in 0u64..(1 << cab) {
                        for m2 in 0u64..(1 << cbc) {
                            let x = ArcRingElement::<Z>::basis_element(a, b, m1);
                            let y = ArcRingElement::basis_element(b, c, m2);
                            let z = x.then(&y, &spec).unwrap();
                            if z.is_zero() {
                                continue;
                            }
                            assert_eq!(
                                z.degree().unwrap(),
                                x.degree().unwrap() + y.degree().unwrap()
                            );
                        }
                    }
                }
            }
        }
        assert_eq!(
            ArcRingElement::<Z>::idempotent(&ms[0]).degree(),
            Some(0)
        );
    }

    #[test]
    fn tangle_complex_shapes() {
        let spec = kh();
        let crossing = tangle_complex(&TangleSlice::Crossing { positive: true }, &spec);
        assert_eq!(crossing.levels.len(), 2);
        assert_eq!(crossing.object_count(), 2);
        assert_eq!(crossing.levels[1][0].1, 1);
        let saddle = &crossing.diff[0][0].2;
        assert_eq!(saddle.degree(), Some(-1));
        let m = enumerate_matchings(2).remove(0);
        let flat = tangle_complex(&TangleSlice::Flat { matching: m.clone(), circles: 0 }, &spec);
        assert_eq!(flat.object_count(), 1);
        let looped = tangle_complex(&TangleSlice::Flat { matching: m, circles: 1 }, &spec);
        assert_eq!(looped.object_count(), 2);
        let shifts: Vec<i32> = looped.levels[0].iter().map(|o| o.1).collect();
        assert_eq!(shifts, vec![1, -1]);
    }

    #[test]
    fn graded_rank_matches_glue() {
        for n in 1..=4 {
            let ms = enumerate_matchings(n);
            for a in &ms {
                for b in &ms {
                    let c = a.glue(b).unwrap();
                    // F(b̄a) has one basis element per labeling: rank 2^c.
                    assert_eq!(1u64 << c, (0u64..(1 << c)).count() as u64);
                }
            }
        }
    }
}
