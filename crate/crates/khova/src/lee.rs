//! Lee deformation over ℚ: filtered complexes, the induced spectral
//! sequence, Lee homology, and the s-invariant with its genus bound.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

use crate::cube::{build_complex, ChainComplex};
use crate::diagram::PlanarDiagram;
use crate::frobenius::FrobeniusSpec;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeeError {
    #[error("s-invariant needs a knot; diagram has {0} components")]
    NotAKnot(u32),
    #[error("differential entry drops filtration by {0}")]
    FiltrationViolation(i32),
    #[error("diagram error: {0}")]
    Diagram(#[from] crate::diagram::DiagramError),
}

/// Lee complex over ℚ with the quantum grading demoted to a filtration.
/// Differential entries raise filtration by 0 or 4.
pub struct FilteredComplex {
    min_i: i32,
    /// Per level: filtration value of each generator.
    filt: Vec<Vec<i32>>,
    /// out[k][g] = targets of g in level k+1 with coefficients.
    out: Vec<HashMap<u32, HashMap<u32, BigRational>>>,
}

impl FilteredComplex {
    pub fn from_complex(c: &ChainComplex<BigRational>) -> Result<Self, LeeError> {
        let filt: Vec<Vec<i32>> = c
            .gens
            .iter()
            .map(|gs| gs.iter().map(|g| g.j).collect())
            .collect();
        let mut out = vec![HashMap::new(); filt.len()];
        for (k, m) in c.diff.iter().enumerate() {
            for (row, col, v) in &m.entries {
                if v.is_zero() {
                    continue;
                }
                let jump = filt[k + 1][*row as usize] - filt[k][*col as usize];
                if jump < 0 {
                    return Err(LeeError::FiltrationViolation(-jump));
                }
                debug_assert!(jump % 2 == 0, "unexpected filtration jump {jump}");
                let e = out[k]
                    .entry(*col)
                    .or_insert_with(HashMap::new)
                    .entry(*row)
                    .or_insert_with(BigRational::zero);
                *e += v;
            }
        }
        Ok(FilteredComplex { min_i: c.min_i, filt, out })
    }

    /// Scanning only cancels unit entries between equal quantum shifts
    /// (filtration jump 0), so it preserves the filtered homotopy type and
    /// every page of the spectral sequence from E₁ on.
    pub fn from_diagram(d: &PlanarDiagram) -> Result<Self, LeeError> {
        let (c, _) = crate::scan::scan_complex(d, &FrobeniusSpec::<BigRational>::lee());
        Self::from_complex(&c)
    }

    /// The full cube of resolutions, without scanning; slower but direct.
    pub fn from_diagram_naive(d: &PlanarDiagram) -> Result<Self, LeeError> {
        let c = build_complex(d, &FrobeniusSpec::<BigRational>::lee(), false)?;
        Self::from_complex(&c)
    }
}

/// Bigraded dimensions of one spectral sequence page, keyed by
/// (homological degree, filtration).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    /// Filtration jump of the differentials eliminated to reach this page;
    /// 0 for E₁.
    pub jump: i32,
    pub dims: BTreeMap<(i32, i32), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequenceResult {
    /// Sparse page list: E₁ first, then one page per jump size encountered.
    pub pages: Vec<Page>,
    /// Surviving (i, filtration) positions, sorted.
    pub e_infinity: Vec<(i32, i32)>,
    /// Index into `pages` of the first page equal to E∞.
    pub collapse_page: usize,
}

impl SpectralSequenceResult {
    pub fn total_dimension(&self) -> usize {
        self.e_infinity.len()
    }
}

/// Filtration-respecting Gaussian elimination, smallest jumps first. Each
/// cancelled pivot removes a generator pair; pages are recorded each time a
/// jump size is exhausted.
pub fn spectral_sequence(f: FilteredComplex) -> SpectralSequenceResult {
    let levels = f.filt.len();
    let mut alive: Vec<Vec<bool>> = f.filt.iter().map(|v| vec![true; v.len()]).collect();
    let mut out = f.out;
    // incoming[k][h] = sources in level k-1 hitting h.
    let mut incoming: Vec<HashMap<u32, HashSet<u32>>> = vec![HashMap::new(); levels];
    for (k, by_src) in out.iter().enumerate() {
        for (&g, tgts) in by_src {
            for &h in tgts.keys() {
                incoming[k + 1].entry(h).or_default().insert(g);
            }
        }
    }
    let jump = |k: usize, g: u32, h: u32| f.filt[k + 1][h as usize] - f.filt[k][g as usize];

    let mut pages = Vec::new();
    loop {
        // Smallest jump still present.
        let mut r: Option<i32> = None;
        for (k, by_src) in out.iter().enumerate() {
            for (&g, tgts) in by_src {
                for &h in tgts.keys() {
                    let j = jump(k, g, h);
                    if r.map_or(true, |cur| j < cur) {
                        r = Some(j);
                    }
                }
            }
        }
        let Some(r) = r else { break };
        // Cancel jump-r pivots until none remain at this jump.
        loop {
            let mut pivot: Option<(usize, u32, u32)> = None;
            'scan: for (k, by_src) in out.iter().enumerate() {
                for (&g, tgts) in by_src {
                    for &h in tgts.keys() {
                        if jump(k, g, h) == r {
                            pivot = Some((k, g, h));
                            break 'scan;
                        }
                    }
                }
            }
            let Some((k, g, h)) = pivot else { break };
            let alpha = out[k][&g][&h].clone();
            alive[k][g as usize] = false;
            alive[k + 1][h as usize] = false;
            // Detach g's outgoing and h's incoming rows first.
            let g_targets: Vec<(u32, BigRational)> = out[k]
                .remove(&g)
                .unwrap()
                .into_iter()
                .filter(|(y, _)| *y != h)
                .collect();
            for (y, _) in &g_targets {
                incoming[k + 1].get_mut(y).map(|s| s.remove(&g));
            }
            let h_sources: Vec<(u32, BigRational)> = incoming[k + 1]
                .remove(&h)
                .unwrap_or_default()
                .into_iter()
                .filter(|x| *x != g)
                .map(|x| {
                    let beta = out[k].get_mut(&x).unwrap().remove(&h).unwrap();
                    (x, beta)
                })
                .collect();
            // g also dies as a target and h as a source.
            if k > 0 {
                if let Some(srcs) = incoming[k].remove(&g) {
                    for x in srcs {
                        out[k - 1].get_mut(&x).map(|t| t.remove(&g));
                    }
                }
            }
            if k + 2 < levels {
                if let Some(tgts) = out[k + 1].remove(&h) {
                    for y in tgts.keys() {
                        incoming[k + 2].get_mut(y).map(|s| s.remove(&h));
                    }
                }
            }
            // d(x) += -(beta/alpha) * gamma * y for the cancelled zig-zag.
            for (x, beta) in &h_sources {
                let scale = -(beta / &alpha);
                for (y, gamma) in &g_targets {
                    let delta = &scale * gamma;
                    let row = out[k].entry(*x).or_insert_with(HashMap::new);
                    let e = row.entry(*y).or_insert_with(BigRational::zero);
                    *e += delta;
                    if e.is_zero() {
                        row.remove(y);
                        incoming[k + 1].get_mut(y).map(|s| s.remove(x));
                    } else {
                        incoming[k + 1].entry(*y).or_default().insert(*x);
                    }
                }
            }
        }
        let mut dims = BTreeMap::new();
        for (k, flags) in alive.iter().enumerate() {
            for (g, &live) in flags.iter().enumerate() {
                if live {
                    *dims
                        .entry((f.min_i + k as i32, f.filt[k][g]))
                        .or_insert(0) += 1;
                }
            }
        }
        pages.push(Page { jump: r, dims });
    }
    if pages.is_empty() {
        // Zero differential from the start: E₁ = everything.
        let mut dims = BTreeMap::new();
        for (k, fs) in f.filt.iter().enumerate() {
            for &j in fs {
                *dims.entry((f.min_i + k as i32, j)).or_insert(0) += 1;
            }
        }
        pages.push(Page { jump: 0, dims });
    }
    let last = pages.last().unwrap();
    let mut e_infinity = Vec::new();
    for (&(i, j), &n) in &last.dims {
        for _ in 0..n {
            e_infinity.push((i, j));
        }
    }
    let collapse_page = pages
        .iter()
        .position(|p| p.dims == last.dims)
        .unwrap();
    SpectralSequenceResult { pages, e_infinity, collapse_page }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeResult {
    pub dimension: usize,
    /// Surviving (homological degree, filtration) positions.
    pub e_infinity: Vec<(i32, i32)>,
    pub ss: SpectralSequenceResult,
}

pub fn lee_homology(d: &PlanarDiagram) -> Result<LeeResult, LeeError> {
    let ss = spectral_sequence(FilteredComplex::from_diagram(d)?);
    Ok(LeeResult {
        dimension: ss.total_dimension(),
        e_infinity: ss.e_infinity.clone(),
        ss,
    })
}

/// The two Lee survivors of a knot sit at filtration s ± 1 in homological
/// degree 0; returns that even s.
pub fn s_invariant(d: &PlanarDiagram) -> Result<i32, LeeError> {
    if d.component_count() != 1 {
        return Err(LeeError::NotAKnot(d.component_count()));
    }
    let lee = lee_homology(d)?;
    let at_zero: Vec<i32> = lee
        .e_infinity
        .iter()
        .filter(|(i, _)| *i == 0)
        .map(|&(_, j)| j)
        .collect();
    assert_eq!(lee.dimension, 2, "Lee homology of a knot has dimension 2");
    assert_eq!(at_zero.len(), 2, "both survivors in homological degree 0");
    let q_min = *at_zero.iter().min().unwrap();
    let q_max = *at_zero.iter().max().unwrap();
    assert_eq!(q_max, q_min + 2, "survivors in adjacent quantum gradings");
    Ok(q_min + 1)
}

/// Slice-genus lower bound ⌈|s|/2⌉ from |s(K)| ≤ 2g₄(K).
pub fn genus_bounds(s: i32) -> u32 {
    (s.unsigned_abs() + 1) / 2
}

/// One-stop JSON report for a diagram.
pub fn report_json(d: &PlanarDiagram) -> Result<serde_json::Value, LeeError> {
    let lee = lee_homology(d)?;
    let s = if d.component_count() == 1 {
        Some(s_invariant(d)?)
    } else {
        None
    };
    let pages: Vec<serde_json::Value> = lee
        .ss
        .pages
        .iter()
        .map(|p| {
            serde_json::json!({
                "jump": p.jump,
                "dims": p
                    .dims
                    .iter()
                    .map(|(&(i, j), &n)| serde_json::json!([i, j, n]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(serde_json::json!({
        "s": s,
        "lee_dim": lee.dimension,
        "e_infinity": lee.e_infinity,
        "pages": pages,
        "collapse_page": lee.ss.collapse_page,
        "genus_lower_bound": s.map(genus_bounds),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_braid, ResolutionState};
    use crate::homalg::homology_field;

    #[test]
    fn unknot_lee() {
        let d = parse_braid("a", 2).unwrap();
        let lee = lee_homology(&d).unwrap();
        assert_eq!(lee.dimension, 2);
        assert_eq!(lee.e_infinity, vec![(0, -1), (0, 1)]);
        assert_eq!(lee.ss.collapse_page, 0);
        assert_eq!(s_invariant(&d).unwrap(), 0);
    }

    #[test]
    fn scanned_and_naive_filtrations_agree() {
        for (word, strands) in [("aaa", 2), ("aBaB", 3), ("abab", 3), ("AAAAA", 2)] {
            let d = parse_braid(word, strands).unwrap();
            let scanned = spectral_sequence(FilteredComplex::from_diagram(&d).unwrap());
            let naive = spectral_sequence(FilteredComplex::from_diagram_naive(&d).unwrap());
            assert_eq!(scanned.e_infinity, naive.e_infinity, "{word}");
        }
    }

    #[test]
    fn hopf_link_dimension_four() {
        let lee = lee_homology(&parse_braid("aa", 2).unwrap()).unwrap();
        assert_eq!(lee.dimension, 4);
    }

    #[test]
    fn unlinks_powers_of_two() {
        for (word, strands, c) in [("aA", 2, 2), ("", 3, 3)] {
            let d = parse_braid(word, strands).unwrap();
            assert_eq!(d.component_count(), c);
            let lee = lee_homology(&d).unwrap();
            assert_eq!(lee.dimension, 1 << c, "braid {word:?}");
        }
    }

    #[test]
    fn trefoil_s_and_pages() {
        let d = parse_braid("aaa", 2).unwrap();
        let c = build_complex(&d, &FrobeniusSpec::<BigRational>::lee(), false).unwrap();
        let ss = spectral_sequence(FilteredComplex::from_complex(&c).unwrap());
        // E₁ equals Khovanov homology over ℚ.
        let kh = {
            let ckh =
                build_complex(&d, &FrobeniusSpec::<BigRational>::khovanov(), false).unwrap();
            homology_field(&ckh, "Q")
        };
        let e1: BTreeMap<(i32, i32), usize> = kh
            .entries
            .iter()
            .map(|(&k, e)| (k, e.free_rank))
            .collect();
        assert_eq!(ss.pages[0].dims, e1);
        // Both survivors in homological degree 0, at s ± 1 with s = 2.
        assert_eq!(ss.e_infinity, vec![(0, 1), (0, 3)]);
        assert_eq!(s_invariant(&d).unwrap(), 2);
        assert_eq!(genus_bounds(2), 1);
    }

    #[test]
    fn torus_2_5_s_is_four() {
        let d = parse_braid("aaaaa", 2).unwrap();
        assert_eq!(s_invariant(&d).unwrap(), 4);
        assert_eq!(genus_bounds(4), 2);
    }

    #[test]
    fn mirror_antisymmetry() {
        for word in ["aaa", "aaaaa", "aBaB"] {
            let d = parse_braid(word, if word == "aBaB" { 3 } else { 2 }).unwrap();
            let s = s_invariant(&d).unwrap();
            assert_eq!(s_invariant(&d.mirror()).unwrap(), -s, "braid {word}");
        }
    }

    #[test]
    fn figure_eight_s_zero() {
        let d = parse_braid("aBaB", 3).unwrap();
        let lee = lee_homology(&d).unwrap();
        assert_eq!(lee.e_infinity, vec![(0, -1), (0, 1)]);
        assert_eq!(s_invariant(&d).unwrap(), 0);
    }

    #[test]
    fn positive_diagram_formula() {
        // s = n − k + 1 with k the circle count of the oriented resolution.
        for (word, strands) in [("aaa", 2), ("aaaaa", 2), ("abab", 3)] {
            let d = parse_braid(word, strands).unwrap();
            let n = d.crossings().len();
            let k = d
                .resolve(&ResolutionState::new(0, n))
                .unwrap()
                .count();
            assert_eq!(
                s_invariant(&d).unwrap(),
                n as i32 - k as i32 + 1,
                "braid {word}"
            );
        }
    }

    #[test]
    fn connected_sum_additive() {
        let tre = parse_braid("aaa", 2).unwrap();
        let fig8 = parse_braid("aBaB", 3).unwrap();
        let sum = tre.connected_sum(&fig8);
        assert_eq!(sum.component_count(), 1);
        assert_eq!(
            s_invariant(&sum).unwrap(),
            s_invariant(&tre).unwrap() + s_invariant(&fig8).unwrap()
        );
    }

    #[test]
    fn s_rejects_links() {
        let d = parse_braid("aa", 2).unwrap();
        assert_eq!(s_invariant(&d), Err(LeeError::NotAKnot(2)));
    }

    #[test]
    fn report_shape() {
        let v = report_json(&parse_braid("aaa", 2).unwrap()).unwrap();
        assert_eq!(v["s"], 2);
        assert_eq!(v["lee_dim"], 2);
        assert!(v["pages"].as_array().unwrap().len() >= 1);
    }
}
