//! Bigraded homology of a chain complex: groups per (i, j), Euler
//! characteristic, and the invariants read off the support.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::cube::{ChainComplex, SparseMat};
use crate::poly::LaurentPoly;
use crate::ring::Coeff;
use crate::snf::{invariant_factors, rank_over_field};

/// One homology group: free part plus invariant-factor torsion (ℤ only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomEntry {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomEntry {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Homology groups keyed by (homological degree i, quantum degree j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub entries: BTreeMap<(i32, i32), HomEntry>,
    /// Coefficient ring label: "Z", "Q", "F2", ...
    pub coeff: String,
}

/// Which difference of the two gradings bounds the Thurston–Bennequin number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TbConvention {
    /// min(j − i) over the support; the default.
    JMinusI,
    /// min(i − j), for the opposite mirror convention.
    IMinusJ,
}

impl HomologyTable {
    pub fn total_free_rank(&self) -> usize {
        self.entries.values().map(|e| e.free_rank).sum()
    }

    pub fn torsion_count(&self) -> usize {
        self.entries.values().map(|e| e.torsion.len()).sum()
    }

    /// Σ (−1)^i rank q^j; equals the Jones-type Euler characteristic of the
    /// underlying complex.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), e) in &self.entries {
            if e.free_rank == 0 {
                continue;
            }
            let sign: i64 = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(2 * j, &BigInt::from(sign * e.free_rank as i64));
        }
        p
    }

    /// Upper bound on the Thurston–Bennequin number from the support.
    pub fn tb_bound(&self, convention: TbConvention) -> Option<i32> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.is_trivial())
            .map(|(&(i, j), _)| match convention {
                TbConvention::JMinusI => j - i,
                TbConvention::IMinusJ => i - j,
            })
            .min()
    }

    /// Values of δ = j − 2i carried by nonzero groups.
    pub fn delta_support(&self) -> BTreeSet<i32> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.is_trivial())
            .map(|(&(i, j), _)| j - 2 * i)
            .collect()
    }

    /// A diagram is homologically thin when its δ-support is a single value
    /// pair {δ, δ+2} (unreduced) or a single δ (reduced).
    pub fn is_thin_unreduced(&self) -> bool {
        let s = self.delta_support();
        match s.len() {
            0 | 1 => true,
            2 => {
                let v: Vec<i32> = s.into_iter().collect();
                v[1] - v[0] == 2
            }
            _ => false,
        }
    }

    fn group_string(&self, e: &HomEntry) -> String {
        if e.is_trivial() {
            return "0".into();
        }
        let base = if self.coeff == "Z" { "Z" } else { self.coeff.as_str() };
        let mut parts = Vec::new();
        match e.free_rank {
            0 => {}
            1 => parts.push(base.to_string()),
            r => parts.push(format!("{base}^{r}")),
        }
        for t in &e.torsion {
            parts.push(format!("Z/{t}"));
        }
        parts.join("+")
    }

    /// Grid of groups, rows by i, columns by j.
    pub fn to_tsv(&self) -> String {
        let support: Vec<(i32, i32)> = self
            .entries
            .iter()
            .filter(|(_, e)| !e.is_trivial())
            .map(|(&k, _)| k)
            .collect();
        if support.is_empty() {
            return "empty\n".into();
        }
        let (imin, imax) = (
            support.iter().map(|p| p.0).min().unwrap(),
            support.iter().map(|p| p.0).max().unwrap(),
        );
        let js: BTreeSet<i32> = support.iter().map(|p| p.1).collect();
        let mut out = String::from("i\\j");
        for j in &js {
            write!(out, "\t{j}").unwrap();
        }
        out.push('\n');
        for i in imin..=imax {
            write!(out, "{i}").unwrap();
            for &j in &js {
                let cell = self
                    .entries
                    .get(&(i, j))
                    .map(|e| self.group_string(e))
                    .unwrap_or_else(|| "0".into());
                write!(out, "\t{cell}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct JsonGroup<'a> {
            i: i32,
            j: i32,
            free_rank: usize,
            torsion: Vec<String>,
            group: &'a str,
        }
        let groups: Vec<serde_json::Value> = self
            .entries
            .iter()
            .filter(|(_, e)| !e.is_trivial())
            .map(|(&(i, j), e)| {
                let s = self.group_string(e);
                serde_json::to_value(JsonGroup {
                    i,
                    j,
                    free_rank: e.free_rank,
                    torsion: e.torsion.iter().map(|t| t.to_string()).collect(),
                    group: &s,
                })
                .unwrap()
            })
            .collect();
        serde_json::json!({
            "coeff": self.coeff,
            "total_free_rank": self.total_free_rank(),
            "groups": groups,
        })
    }
}

/// Per-level generator bookkeeping: quantum degree and position within its
/// (level, j) block.
struct GradedLevels {
    j_of: Vec<Vec<i32>>,
    pos: Vec<Vec<u32>>,
    dims: HashMap<(usize, i32), usize>,
}

fn graded_levels<R>(c: &ChainComplex<R>) -> GradedLevels {
    let mut j_of = Vec::with_capacity(c.gens.len());
    let mut pos = Vec::with_capacity(c.gens.len());
    let mut dims = HashMap::new();
    for (k, gs) in c.gens.iter().enumerate() {
        let mut counters: HashMap<i32, u32> = HashMap::new();
        let mut jo = Vec::with_capacity(gs.len());
        let mut po = Vec::with_capacity(gs.len());
        for g in gs {
            let ctr = counters.entry(g.j).or_insert(0);
            jo.push(g.j);
            po.push(*ctr);
            *ctr += 1;
        }
        for (j, n) in counters {
            dims.insert((k, j), n as usize);
        }
        j_of.push(jo);
        pos.push(po);
    }
    GradedLevels { j_of, pos, dims }
}

/// Restriction of `diff[k]` to the quantum degree `j` summand. The
/// differential of a graded complex preserves j, so rows and columns both
/// come from degree-j generators.
fn sub_diff<R: Clone>(
    c: &ChainComplex<R>,
    gl: &GradedLevels,
    k: usize,
    j: i32,
) -> SparseMat<R> {
    let rows = gl.dims.get(&(k + 1, j)).copied().unwrap_or(0);
    let cols = gl.dims.get(&(k, j)).copied().unwrap_or(0);
    let entries = c.diff[k]
        .entries
        .iter()
        .filter(|(_, col, _)| gl.j_of[k][*col as usize] == j)
        .map(|(row, col, v)| {
            debug_assert_eq!(gl.j_of[k + 1][*row as usize], j, "differential must preserve j");
            (gl.pos[k + 1][*row as usize], gl.pos[k][*col as usize], v.clone())
        })
        .collect();
    SparseMat { rows, cols, entries }
}

/// Integral homology, one group per bidegree; torsion from the Smith form of
/// the incoming differential.
pub fn homology_z(c: &ChainComplex<BigInt>) -> HomologyTable {
    let gl = graded_levels(c);
    // factors[k] holds the invariant factors of each degree-j block of diff[k].
    let mut factors: Vec<HashMap<i32, Vec<BigInt>>> = Vec::with_capacity(c.diff.len());
    for k in 0..c.diff.len() {
        let mut by_j = HashMap::new();
        for (&(kk, j), _) in gl.dims.iter().filter(|(&(kk, _), _)| kk == k) {
            debug_assert_eq!(kk, k);
            by_j.insert(j, invariant_factors(&sub_diff(c, &gl, k, j)));
        }
        factors.push(by_j);
    }
    let mut entries = BTreeMap::new();
    for (&(k, j), &dim) in &gl.dims {
        let rank_out = if k < c.diff.len() {
            factors[k].get(&j).map_or(0, Vec::len)
        } else {
            0
        };
        let incoming: &[BigInt] = if k > 0 {
            factors[k - 1].get(&j).map_or(&[], Vec::as_slice)
        } else {
            &[]
        };
        let free_rank = dim - rank_out - incoming.len();
        let torsion: Vec<BigInt> = incoming.iter().filter(|f| !f.is_one()).cloned().collect();
        let e = HomEntry { free_rank, torsion };
        if !e.is_trivial() {
            entries.insert((c.i_of(k), j), e);
        }
    }
    HomologyTable { entries, coeff: "Z".into() }
}

/// Homology over a field; `coeff_name` labels the output ("Q", "F2", ...).
pub fn homology_field<R: Coeff>(c: &ChainComplex<R>, coeff_name: &str) -> HomologyTable {
    assert!(R::is_field(), "coefficients must form a field");
    let gl = graded_levels(c);
    let mut ranks: Vec<HashMap<i32, usize>> = Vec::with_capacity(c.diff.len());
    for k in 0..c.diff.len() {
        let mut by_j = HashMap::new();
        for (&(kk, j), _) in gl.dims.iter().filter(|(&(kk, _), _)| kk == k) {
            debug_assert_eq!(kk, k);
            by_j.insert(j, rank_over_field(&sub_diff(c, &gl, k, j)));
        }
        ranks.push(by_j);
    }
    let mut entries = BTreeMap::new();
    for (&(k, j), &dim) in &gl.dims {
        let rank_out = if k < c.diff.len() {
            ranks[k].get(&j).copied().unwrap_or(0)
        } else {
            0
        };
        let rank_in = if k > 0 {
            ranks[k - 1].get(&j).copied().unwrap_or(0)
        } else {
            0
        };
        let free_rank = dim - rank_out - rank_in;
        if free_rank > 0 {
            entries.insert(
                (c.i_of(k), j),
                HomEntry { free_rank, torsion: Vec::new() },
            );
        }
    }
    HomologyTable { entries, coeff: coeff_name.into() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::jones;
    use crate::cube::build_complex;
    use crate::diagram::{parse_braid, PlanarDiagram};
    use crate::frobenius::FrobeniusSpec;
    use num_rational::BigRational;

    fn kh_z(d: &PlanarDiagram, reduced: bool) -> HomologyTable {
        let d = if reduced { d.with_marked_edge(Some(0)) } else { d.clone() };
        homology_z(&build_complex(&d, &FrobeniusSpec::<BigInt>::khovanov(), reduced).unwrap())
    }

    fn entry(free: usize, torsion: &[i64]) -> HomEntry {
        HomEntry {
            free_rank: free,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    #[test]
    fn unknot_homology() {
        let d = parse_braid("a", 2).unwrap();
        let t = kh_z(&d, false);
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.entries[&(0, -1)], entry(1, &[]));
        assert_eq!(t.entries[&(0, 1)], entry(1, &[]));
        let r = kh_z(&d, true);
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[&(0, 0)], entry(1, &[]));
    }

    #[test]
    fn right_trefoil_homology() {
        let t = kh_z(&parse_braid("aaa", 2).unwrap(), false);
        assert_eq!(t.entries[&(0, 1)], entry(1, &[]));
        assert_eq!(t.entries[&(0, 3)], entry(1, &[]));
        assert_eq!(t.entries[&(2, 5)], entry(1, &[]));
        assert_eq!(t.entries[&(3, 9)], entry(1, &[]));
        assert_eq!(t.entries[&(3, 7)], entry(0, &[2]));
        assert_eq!(t.entries.len(), 5);
        assert_eq!(t.tb_bound(TbConvention::JMinusI), Some(1));
        assert!(t.is_thin_unreduced());
    }

    #[test]
    fn tb_bound_unknot() {
        let t = kh_z(&parse_braid("a", 2).unwrap(), false);
        assert_eq!(t.tb_bound(TbConvention::JMinusI), Some(-1));
        assert_eq!(t.tb_bound(TbConvention::IMinusJ), Some(-1));
    }

    #[test]
    fn euler_matches_jones() {
        for (word, strands) in [("a", 2), ("aa", 2), ("aaa", 2), ("aBaB", 3), ("abab", 3)] {
            let d = parse_braid(word, strands).unwrap();
            let t = kh_z(&d, false);
            assert_eq!(t.euler_characteristic(), jones(&d), "braid {word}");
        }
    }

    #[test]
    fn field_ranks_consistent() {
        let d = parse_braid("aaa", 2).unwrap();
        let q = homology_field(
            &build_complex(&d, &FrobeniusSpec::<BigRational>::khovanov(), false).unwrap(),
            "Q",
        );
        let z = kh_z(&d, false);
        // Over Q every free summand survives and torsion disappears.
        for (k, e) in &q.entries {
            assert_eq!(e.free_rank, z.entries[k].free_rank);
        }
        assert_eq!(q.total_free_rank(), z.total_free_rank());
        // F2 picks up each Z/2 twice (universal coefficients).
        let cz = build_complex(&d, &FrobeniusSpec::<BigInt>::khovanov(), false).unwrap();
        let f2 = homology_field(&cz.mod_p(2), "F2");
        assert_eq!(
            f2.total_free_rank(),
            z.total_free_rank() + 2 * z.torsion_count()
        );
        assert_eq!(f2.entries[&(2, 7)], entry(1, &[]));
        assert_eq!(f2.entries[&(3, 7)], entry(1, &[]));
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let d = parse_braid("aBaB", 3).unwrap();
        let t = kh_z(&d, false);
        // Free part symmetric under (i, j) -> (-i, -j).
        for (&(i, j), e) in &t.entries {
            let mirror = t.entries.get(&(-i, -j)).map_or(0, |m| m.free_rank);
            assert_eq!(e.free_rank, mirror, "at ({i},{j})");
        }
        assert_eq!(t.euler_characteristic(), jones(&d));
        assert!(t.is_thin_unreduced());
        // Alternating knot: unreduced free rank is det + 1.
        assert_eq!(t.total_free_rank(), 6);
    }

    #[test]
    fn mirror_flips_support() {
        let d = parse_braid("aaa", 2).unwrap();
        let t = kh_z(&d, false);
        let m = kh_z(&d.mirror(), false);
        for (&(i, j), e) in &t.entries {
            let other = m.entries.get(&(-i, -j)).map_or(0, |x| x.free_rank);
            assert_eq!(e.free_rank, other);
        }
    }

    #[test]
    fn reduced_trefoil() {
        let t = kh_z(&parse_braid("aaa", 2).unwrap(), true);
        // Reduced homology of the right trefoil: Z at (0,2), (2,6), (3,8).
        assert_eq!(t.entries[&(0, 2)], entry(1, &[]));
        assert_eq!(t.entries[&(2, 6)], entry(1, &[]));
        assert_eq!(t.entries[&(3, 8)], entry(1, &[]));
        assert_eq!(t.entries.len(), 3);
        assert_eq!(t.delta_support().len(), 1);
    }

    #[test]
    fn renderers() {
        let t = kh_z(&parse_braid("aaa", 2).unwrap(), false);
        let tsv = t.to_tsv();
        assert!(tsv.contains("Z/2"));
        assert!(tsv.starts_with("i\\j"));
        let json = t.to_json();
        assert_eq!(json["coeff"], "Z");
        assert_eq!(json["total_free_rank"], 4);
    }
}
