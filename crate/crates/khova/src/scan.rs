//! Divide-and-conquer homology: attach one crossing at a time, keep the
//! partial complex delooped and cancelled, read the answer off the closed-up
//! endgame. Objects are pairings of the currently open boundary points with a
//! quantum shift; differential entries live in F(glue) exactly like arc-ring
//! elements, so cancellation composes through `compose_terms`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::arcs::{add_term, collect_terms, compose_terms, glue_cycles, pair, Pairing, Terms};
use crate::cube::{ChainComplex, Generator, SparseMat};
use crate::diagram::{PlanarDiagram, ResolutionState, Slot};
use crate::frobenius::{FrobeniusSpec, Label};
use crate::homalg::{homology_z, HomologyTable};
use crate::ring::Coeff;

/// Per-crossing log line data: state after the step's fuses and cancellations.
#[derive(Clone, Debug)]
pub struct ScanStep {
    pub crossing: u32,
    pub boundary_points: usize,
    pub objects: usize,
    pub entries: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ScanStats {
    /// Maximum number of open boundary points at any moment.
    pub girth: usize,
    pub steps: Vec<ScanStep>,
}

impl fmt::Display for ScanStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(
                f,
                "scan step crossing={} boundary={} objects={} entries={}",
                s.crossing, s.boundary_points, s.objects, s.entries
            )?;
        }
        write!(f, "scan girth={}", self.girth)
    }
}

#[derive(Clone, Debug)]
struct Obj {
    w: i32,
    qshift: i32,
    pairing: Pairing,
}

/// Drop bit `slot` from a mask, shifting higher bits down.
fn remove_bit(mask: u64, slot: usize) -> u64 {
    let low = mask & ((1u64 << slot) - 1);
    let high = (mask >> (slot + 1)) << slot;
    low | high
}

struct Scanner<'a, R: Coeff> {
    spec: &'a FrobeniusSpec<R>,
    objects: BTreeMap<u32, Obj>,
    /// Entry x→y between levels w and w+1; mask layout: glue cycles of the
    /// two pairings in canonical order, then transient free-circle slots
    /// (source's before target's) during a fuse step.
    entries: BTreeMap<(u32, u32), Terms<R>>,
    out_adj: BTreeMap<u32, BTreeSet<u32>>,
    in_adj: BTreeMap<u32, BTreeSet<u32>>,
    next_id: u32,
}

impl<'a, R: Coeff> Scanner<'a, R> {
    fn new(spec: &'a FrobeniusSpec<R>) -> Self {
        let mut objects = BTreeMap::new();
        objects.insert(
            0,
            Obj { w: 0, qshift: 0, pairing: Pairing::new() },
        );
        Scanner {
            spec,
            objects,
            entries: BTreeMap::new(),
            out_adj: BTreeMap::new(),
            in_adj: BTreeMap::new(),
            next_id: 1,
        }
    }

    fn fresh(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn boundary_len(&self) -> usize {
        self.objects.values().next().map_or(0, |o| o.pairing.len())
    }

    /// Accumulate terms into the x→y entry, creating or deleting it as needed.
    fn add_entry(&mut self, x: u32, y: u32, terms: Terms<R>) {
        if terms.is_empty() {
            return;
        }
        let merged = match self.entries.remove(&(x, y)) {
            None => terms,
            Some(old) => {
                let mut acc: HashMap<u64, R> = HashMap::new();
                for (m, c) in old.into_iter().chain(terms) {
                    add_term(&mut acc, m, c);
                }
                collect_terms(acc)
            }
        };
        if merged.is_empty() {
            self.out_adj.entry(x).or_default().remove(&y);
            self.in_adj.entry(y).or_default().remove(&x);
        } else {
            self.entries.insert((x, y), merged);
            self.out_adj.entry(x).or_default().insert(y);
            self.in_adj.entry(y).or_default().insert(x);
        }
    }


    fn remove_object(&mut self, id: u32) {
        for y in self.out_adj.remove(&id).unwrap_or_default() {
            self.entries.remove(&(id, y));
            self.in_adj.entry(y).or_default().remove(&id);
        }
        for x in self.in_adj.remove(&id).unwrap_or_default() {
            self.entries.remove(&(x, id));
            self.out_adj.entry(x).or_default().remove(&id);
        }
        self.objects.remove(&id);
    }

    /// Tensor the two-term complex of one crossing (boundary points
    /// base..base+3) onto every object, with the Koszul sign on the saddle.
    fn attach(&mut self, base: u32) {
        let arcs0 = [(base, base + 3), (base + 1, base + 2)];
        let arcs1 = [(base, base + 1), (base + 2, base + 3)];
        let old_objects = std::mem::take(&mut self.objects);
        let old_entries = std::mem::take(&mut self.entries);
        self.out_adj.clear();
        self.in_adj.clear();
        let mut child: HashMap<(u32, bool), u32> = HashMap::new();
        for (&id, obj) in &old_objects {
            for res in [false, true] {
                let mut pairing = obj.pairing.clone();
                for &(a, b) in if res { &arcs1 } else { &arcs0 } {
                    pair(&mut pairing, a, b);
                }
                let cid = self.fresh();
                self.objects.insert(
                    cid,
                    Obj {
                        w: obj.w + res as i32,
                        qshift: obj.qshift + res as i32,
                        pairing,
                    },
                );
                child.insert((id, res), cid);
            }
        }
        // Copied entries: old glue cycles keep their point sets, so remap by
        // smallest point; the fresh doubled arcs stay labeled 1 (mask bit 0).
        for ((x, y), terms) in &old_entries {
            let oldc = glue_cycles(&old_objects[x].pairing, &old_objects[y].pairing);
            for res in [false, true] {
                let cx = child[&(*x, res)];
                let cy = child[&(*y, res)];
                let newc = glue_cycles(&self.objects[&cx].pairing, &self.objects[&cy].pairing);
                let mut slot_of: HashMap<u32, usize> = HashMap::new();
                for (i, cyc) in newc.iter().enumerate() {
                    slot_of.insert(cyc[0], i);
                }
                let map: Vec<usize> = oldc.iter().map(|c| slot_of[&c[0]]).collect();
                let new_terms: Terms<R> = terms
                    .iter()
                    .map(|(m, c)| {
                        let mut m2 = 0u64;
                        for (oi, &ni) in map.iter().enumerate() {
                            if m & (1 << oi) != 0 {
                                m2 |= 1 << ni;
                            }
                        }
                        (m2, c.clone())
                    })
                    .collect();
                self.add_entry(cx, cy, new_terms);
            }
        }
        // The saddle of the new crossing: identity away from it, so all glue
        // cycles (doubled old arcs plus the one fresh 4-point cycle) carry 1.
        for (&id, obj) in &old_objects {
            let sign = if obj.w.rem_euclid(2) == 1 {
                R::one().neg()
            } else {
                R::one()
            };
            self.add_entry(child[&(id, false)], child[&(id, true)], vec![(0, sign)]);
        }
    }

    /// Identify boundary points p and q: surgery on every pairing and every
    /// entry's glue diagram, then deloop any object whose arc (p,q) closed.
    fn fuse(&mut self, p: u32, q: u32) {
        let mut new_pairing: BTreeMap<u32, Pairing> = BTreeMap::new();
        let mut closed: BTreeSet<u32> = BTreeSet::new();
        for (&id, obj) in &self.objects {
            let mut pr = obj.pairing.clone();
            let a = pr.remove(&p).unwrap();
            if a == q {
                let back = pr.remove(&q);
                debug_assert_eq!(back, Some(p));
                closed.insert(id);
            } else {
                let b = pr.remove(&q).unwrap();
                pr.insert(a, b);
                pr.insert(b, a);
            }
            new_pairing.insert(id, pr);
        }
        let old_entries = std::mem::take(&mut self.entries);
        self.out_adj.clear();
        self.in_adj.clear();
        for ((x, y), terms) in old_entries {
            let oldc = glue_cycles(&self.objects[&x].pairing, &self.objects[&y].pairing);
            let newc = glue_cycles(&new_pairing[&x], &new_pairing[&y]);
            let fx = closed.contains(&x);
            let fy = closed.contains(&y);
            let mut slot_of: HashMap<u32, usize> = HashMap::new();
            for (i, cyc) in newc.iter().enumerate() {
                for &r in cyc {
                    slot_of.insert(r, i);
                }
            }
            let cp = oldc.iter().position(|c| c.contains(&p)).unwrap();
            let cq = oldc.iter().position(|c| c.contains(&q)).unwrap();
            let free_base = newc.len();
            let mut acc: HashMap<u64, R> = HashMap::new();
            for (mask, coeff) in terms {
                let mut base = 0u64;
                for (oi, cyc) in oldc.iter().enumerate() {
                    if oi != cp && oi != cq && mask & (1 << oi) != 0 {
                        base |= 1 << slot_of[&cyc[0]];
                    }
                }
                let lab = |ci: usize| {
                    if mask & (1 << ci) != 0 {
                        Label::X
                    } else {
                        Label::One
                    }
                };
                let xbit = |s: usize, l: Label| if l == Label::X { 1u64 << s } else { 0 };
                if cp != cq {
                    // Two glue cycles merge.
                    let survivor = *oldc[cp].iter().find(|&&r| r != p).unwrap();
                    let s = slot_of[&survivor];
                    for (l, c2) in self.spec.multiply(lab(cp), lab(cq)) {
                        add_term(&mut acc, base | xbit(s, l), coeff.mul(&c2));
                    }
                } else {
                    let cyc = &oldc[cp];
                    let l = lab(cp);
                    // Locate the two surgery outputs: glue cycles or closed
                    // circles of one side (transient free slots).
                    let (s1, s2, handle) = if fx && fy {
                        debug_assert_eq!(cyc.len(), 2);
                        (free_base, free_base + 1, false)
                    } else if fx || fy {
                        let survivor = *cyc.iter().find(|&&r| r != p && r != q).unwrap();
                        (free_base, slot_of[&survivor], false)
                    } else {
                        let ip = cyc.iter().position(|&r| r == p).unwrap();
                        let iq = cyc.iter().position(|&r| r == q).unwrap();
                        let a1 = slot_of[&cyc[(ip + 1) % cyc.len()]];
                        let a2 = slot_of[&cyc[(iq + 1) % cyc.len()]];
                        (a1, a2, a1 == a2)
                    };
                    if handle {
                        // Non-separating surgery: the handle operator m∘Δ.
                        for (l1, l2, c2) in self.spec.comultiply(l) {
                            for (l3, c3) in self.spec.multiply(l1, l2) {
                                add_term(&mut acc, base | xbit(s1, l3), coeff.mul(&c2).mul(&c3));
                            }
                        }
                    } else {
                        for (l1, l2, c2) in self.spec.comultiply(l) {
                            add_term(&mut acc, base | xbit(s1, l1) | xbit(s2, l2), coeff.mul(&c2));
                        }
                    }
                }
            }
            self.add_entry(x, y, collect_terms(acc));
        }
        for (id, pr) in new_pairing {
            self.objects.get_mut(&id).unwrap().pairing = pr;
        }
        let mut pending = closed;
        while let Some(&o) = pending.iter().next() {
            pending.remove(&o);
            self.deloop(o, &pending);
        }
    }

    /// Replace an object carrying one closed circle by its two shifted copies.
    /// In the element encoding the circle pairs through the Frobenius form,
    /// so incoming entries split by the circle's label while outgoing ones
    /// pick the dual label (with an h-correction on the minus copy).
    fn deloop(&mut self, o: u32, pending: &BTreeSet<u32>) {
        let obj = self.objects.remove(&o).unwrap();
        let incoming: Vec<u32> = self.in_adj.remove(&o).unwrap_or_default().into_iter().collect();
        let outgoing: Vec<u32> = self.out_adj.remove(&o).unwrap_or_default().into_iter().collect();
        let op = self.fresh();
        let om = self.fresh();
        self.objects.insert(
            op,
            Obj { w: obj.w, qshift: obj.qshift + 1, pairing: obj.pairing.clone() },
        );
        self.objects.insert(
            om,
            Obj { w: obj.w, qshift: obj.qshift - 1, pairing: obj.pairing.clone() },
        );
        for z in incoming {
            let terms = {
                let t = self.entries.remove(&(z, o)).unwrap_or_default();
                self.out_adj.entry(z).or_default().remove(&o);
                t
            };
            let gl = glue_cycles(&self.objects[&z].pairing, &obj.pairing).len();
            // Target free slot comes after the source's pending one, if any.
            let slot = gl + pending.contains(&z) as usize;
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for (m, c) in terms {
                if m & (1 << slot) == 0 {
                    plus.push((m, c));
                } else {
                    minus.push((m & !(1u64 << slot), c));
                }
            }
            self.add_entry(z, op, plus);
            self.add_entry(z, om, minus);
        }
        for t in outgoing {
            let terms = {
                let tm = self.entries.remove(&(o, t)).unwrap_or_default();
                self.in_adj.entry(t).or_default().remove(&o);
                tm
            };
            let gl = glue_cycles(&obj.pairing, &self.objects[&t].pairing).len();
            let slot = gl;
            let mut from_plus: HashMap<u64, R> = HashMap::new();
            let mut from_minus: HashMap<u64, R> = HashMap::new();
            for (m, c) in terms {
                let set = m & (1 << slot) != 0;
                let m2 = remove_bit(m, slot);
                if set {
                    if !self.spec.h.is_zero() {
                        add_term(&mut from_minus, m2, c.mul(&self.spec.h));
                    }
                    add_term(&mut from_plus, m2, c);
                } else {
                    add_term(&mut from_minus, m2, c);
                }
            }
            self.add_entry(op, t, collect_terms(from_plus));
            self.add_entry(om, t, collect_terms(from_minus));
        }
    }

    /// Gaussian elimination: cancel every entry that is a unit multiple of an
    /// identity cobordism between objects with equal matching and gradings.
    fn cancel(&mut self) {
        loop {
            let mut found = None;
            for ((x, y), terms) in &self.entries {
                if terms.len() != 1 || terms[0].0 != 0 || !terms[0].1.is_unit() {
                    continue;
                }
                let ox = &self.objects[x];
                let oy = &self.objects[y];
                if ox.qshift == oy.qshift && ox.pairing == oy.pairing {
                    found = Some((*x, *y, terms[0].1.clone()));
                    break;
                }
            }
            let Some((x, y, u)) = found else { break };
            let uinv = u.inv().expect("unit entry");
            let mid = self.objects[&x].pairing.clone();
            let betas: Vec<u32> = self
                .in_adj
                .get(&y)
                .into_iter()
                .flatten()
                .copied()
                .filter(|&z| z != x)
                .collect();
            let gammas: Vec<u32> = self
                .out_adj
                .get(&x)
                .into_iter()
                .flatten()
                .copied()
                .filter(|&t| t != y)
                .collect();
            for &z in &betas {
                let beta = self.entries[&(z, y)].clone();
                for &t in &gammas {
                    let gamma = self.entries[&(x, t)].clone();
                    let comp = compose_terms(
                        self.spec,
                        &self.objects[&z].pairing,
                        &mid,
                        &self.objects[&t].pairing,
                        (0, 0, 0),
                        &beta,
                        &gamma,
                    );
                    let scaled: Terms<R> =
                        comp.into_iter().map(|(m, c)| (m, c.mul(&uinv).neg())).collect();
                    self.add_entry(z, t, scaled);
                }
            }
            self.remove_object(x);
            self.remove_object(y);
        }
    }

    /// All boundary points fused: objects are scalars, read off the complex.
    fn finish(self, d: &PlanarDiagram) -> ChainComplex<R> {
        let np = d.n_plus() as i32;
        let nm = d.n_minus() as i32;
        if self.objects.is_empty() {
            return ChainComplex {
                min_i: 0,
                gens: vec![Vec::new()],
                diff: Vec::new(),
                n_plus: d.n_plus(),
                n_minus: d.n_minus(),
            };
        }
        let wmin = self.objects.values().map(|o| o.w).min().unwrap();
        let wmax = self.objects.values().map(|o| o.w).max().unwrap();
        let levels = (wmax - wmin + 1) as usize;
        let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); levels];
        let mut index: HashMap<u32, (usize, usize)> = HashMap::new();
        for (&id, obj) in &self.objects {
            debug_assert!(obj.pairing.is_empty());
            let k = (obj.w - wmin) as usize;
            index.insert(id, (k, gens[k].len()));
            gens[k].push(Generator {
                state: ResolutionState::new(0, 0),
                labeling: 0,
                j: obj.qshift + np - 2 * nm,
            });
        }
        let mut diff: Vec<SparseMat<R>> = (0..levels.saturating_sub(1))
            .map(|k| SparseMat::zero(gens[k + 1].len(), gens[k].len()))
            .collect();
        for ((x, y), terms) in &self.entries {
            let (k, col) = index[x];
            let (_, row) = index[y];
            for (m, c) in terms {
                debug_assert_eq!(*m, 0);
                diff[k].entries.push((row as u32, col as u32, c.clone()));
            }
        }
        let mut c = ChainComplex {
            min_i: wmin - nm,
            gens,
            diff,
            n_plus: d.n_plus(),
            n_minus: d.n_minus(),
        };
        for _ in 0..d.free_loops() {
            c = tensor_circle(&c);
        }
        c
    }
}

/// C ⊗ A for one crossing-free loop: every generator doubles into j±1 copies.
fn tensor_circle<R: Coeff>(c: &ChainComplex<R>) -> ChainComplex<R> {
    let gens = c
        .gens
        .iter()
        .map(|gs| {
            let mut v = Vec::with_capacity(gs.len() * 2);
            for g in gs {
                v.push(Generator { j: g.j + 1, ..*g });
                v.push(Generator { j: g.j - 1, ..*g });
            }
            v
        })
        .collect();
    let diff = c
        .diff
        .iter()
        .map(|m| {
            let mut e = Vec::with_capacity(m.entries.len() * 2);
            for (r, cc, v) in &m.entries {
                e.push((2 * r, 2 * cc, v.clone()));
                e.push((2 * r + 1, 2 * cc + 1, v.clone()));
            }
            SparseMat { rows: m.rows * 2, cols: m.cols * 2, entries: e }
        })
        .collect();
    ChainComplex {
        min_i: c.min_i,
        gens,
        diff,
        n_plus: c.n_plus,
        n_minus: c.n_minus,
    }
}

/// Scan the diagram into a (usually tiny) chain complex, plus girth and
/// per-step size statistics.
pub fn scan_complex<R: Coeff>(
    d: &PlanarDiagram,
    spec: &FrobeniusSpec<R>,
) -> (ChainComplex<R>, ScanStats) {
    let n = d.crossing_count();
    let mut sc = Scanner::new(spec);
    let edge_list = d.edges();
    let ends: Vec<(Slot, Slot)> = edge_list.iter().map(|&e| d.edge_ends(e)).collect();
    let mut attached = vec![false; n];
    let mut fused = vec![false; ends.len()];
    let mut stats = ScanStats::default();
    for _ in 0..n {
        // Next crossing: the one closing the most currently open edges.
        let mut pick: Option<(usize, usize)> = None;
        for c in 0..n {
            if attached[c] {
                continue;
            }
            let score = ends
                .iter()
                .enumerate()
                .filter(|(ei, (a, b))| {
                    let ca = (*a / 4) as usize;
                    let cb = (*b / 4) as usize;
                    !fused[*ei]
                        && (ca == c || cb == c)
                        && (ca == c || attached[ca])
                        && (cb == c || attached[cb])
                })
                .count();
            if pick.is_none() || score > pick.unwrap().1 {
                pick = Some((c, score));
            }
        }
        let (c, _) = pick.unwrap();
        attached[c] = true;
        sc.attach(4 * c as u32);
        stats.girth = stats.girth.max(sc.boundary_len());
        for (ei, &(a, b)) in ends.iter().enumerate() {
            if !fused[ei] && attached[(a / 4) as usize] && attached[(b / 4) as usize] {
                fused[ei] = true;
                sc.fuse(a, b);
            }
        }
        sc.cancel();
        stats.steps.push(ScanStep {
            crossing: c as u32,
            boundary_points: sc.boundary_len(),
            objects: sc.objects.len(),
            entries: sc.entries.len(),
        });
    }
    (sc.finish(d), stats)
}

/// Integral homology by scanning.
pub fn scan_homology(d: &PlanarDiagram, spec: &FrobeniusSpec<BigInt>) -> (HomologyTable, ScanStats) {
    let (c, stats) = scan_complex(d, spec);
    (homology_z(&c), stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::build_complex;
    use crate::diagram::parse_braid;
    use crate::homalg::{homology_field, HomEntry};

    fn braid(word: &str, strands: usize) -> PlanarDiagram {
        parse_braid(word, strands).unwrap()
    }

    fn naive_z(d: &PlanarDiagram) -> HomologyTable {
        homology_z(&build_complex::<BigInt>(d, &FrobeniusSpec::khovanov(), false).unwrap())
    }

    #[test]
    fn unknot_free_loop() {
        let (t, stats) = scan_homology(&PlanarDiagram::unknot(), &FrobeniusSpec::khovanov());
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.entries[&(0, 1)], HomEntry { free_rank: 1, torsion: vec![] });
        assert_eq!(t.entries[&(0, -1)], HomEntry { free_rank: 1, torsion: vec![] });
        assert_eq!(stats.girth, 0);
    }

    #[test]
    fn one_crossing_unknot() {
        let (t, _) = scan_homology(&braid("a", 2), &FrobeniusSpec::khovanov());
        assert_eq!(t.entries[&(0, 1)].free_rank, 1);
        assert_eq!(t.entries[&(0, -1)].free_rank, 1);
        assert_eq!(t.total_free_rank(), 2);
        assert_eq!(t.torsion_count(), 0);
    }

    #[test]
    fn trefoil_matches_naive() {
        let d = braid("aaa", 2);
        let (t, stats) = scan_homology(&d, &FrobeniusSpec::khovanov());
        assert_eq!(t.entries, naive_z(&d).entries);
        assert!(stats.girth >= 4 && stats.girth <= 8, "girth {}", stats.girth);
    }

    #[test]
    fn scan_equals_naive_on_samples() {
        for (word, strands) in [
            ("a", 2),
            ("aA", 2),
            ("aaa", 2),
            ("AAA", 2),
            ("aaaaa", 2),
            ("aBaB", 3),
            ("abab", 3),
            ("aabb", 3),
            ("AbAb", 3),
            ("abcabc", 4),
        ] {
            let d = braid(word, strands);
            let (t, _) = scan_homology(&d, &FrobeniusSpec::khovanov());
            assert_eq!(t.entries, naive_z(&d).entries, "braid {word} on {strands}");
        }
    }

    #[test]
    fn scan_equals_naive_mod_2() {
        for (word, strands) in [("aaa", 2), ("aBaB", 3), ("abab", 3)] {
            let d = braid(word, strands);
            let (c, _) = scan_complex::<BigInt>(&d, &FrobeniusSpec::khovanov());
            let naive = build_complex::<BigInt>(&d, &FrobeniusSpec::khovanov(), false).unwrap();
            assert_eq!(
                homology_field(&c.mod_p(2), "F2").entries,
                homology_field(&naive.mod_p(2), "F2").entries,
                "braid {word} on {strands}"
            );
        }
    }

    #[test]
    fn scan_lee_dimensions() {
        // Lee deformation over ℚ: total dimension 2^components.
        use crate::snf::rank_over_field;
        use num_rational::BigRational;
        for (word, strands, comps) in [("aaa", 2, 1u32), ("aa", 2, 2), ("aBaB", 3, 1)] {
            let d = braid(word, strands);
            let (c, _) = scan_complex::<BigRational>(&d, &FrobeniusSpec::lee());
            // Ungraded field homology: Σ_i (dim_i − rank d_i − rank d_{i−1}).
            let mut total = 0i64;
            for k in 0..c.degree_count() {
                let mut h = c.gens[k].len() as i64;
                if k < c.diff.len() {
                    h -= rank_over_field(&c.diff[k]) as i64;
                }
                if k > 0 {
                    h -= rank_over_field(&c.diff[k - 1]) as i64;
                }
                total += h;
            }
            assert_eq!(total, 1 << comps, "braid {word}");
        }
    }

    #[test]
    fn scanned_complex_is_small() {
        // Cancellation should crush the 8-generator-per-degree naive cube.
        let d = braid("aaa", 2);
        let (c, _) = scan_complex::<BigInt>(&d, &FrobeniusSpec::khovanov());
        assert!(c.verify_d_squared());
        assert!(
            c.total_generators() <= 8,
            "scan left {} generators",
            c.total_generators()
        );
    }

    #[test]
    fn stats_format_is_stable() {
        let (_, stats) = scan_homology(&braid("a", 2), &FrobeniusSpec::khovanov());
        let s = stats.to_string();
        assert!(s.starts_with("scan step crossing=0 boundary="));
        assert!(s.ends_with("scan girth=4"));
    }
}
