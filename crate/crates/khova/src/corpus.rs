//! Bundled diagram corpora for batch runs and oracle tests: torus closures,
//! alternating diagrams, and a seeded pseudorandom braid family. Everything
//! is deterministic, so cached and logged results stay comparable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{parse_braid, PlanarDiagram};

pub const CORPORA: [&str; 3] = ["alternating-le10", "torus", "random-seeded"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown corpus {0:?}; available: alternating-le10, torus, random-seeded")]
    Unknown(String),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub braid: String,
    pub strands: usize,
    pub diagram: PlanarDiagram,
}

fn entry(name: &str, word: &str, strands: usize) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        braid: word.to_string(),
        strands,
        diagram: parse_braid(word, strands).expect("bundled braid parses"),
    }
}

pub fn corpus(name: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    match name {
        "torus" => Ok(torus()),
        "alternating-le10" => Ok(alternating_le10()),
        "random-seeded" => Ok(random_seeded()),
        other => Err(CorpusError::Unknown(other.to_string())),
    }
}

/// All three corpora, in a fixed order.
pub fn full_corpus() -> Vec<CorpusEntry> {
    let mut v = alternating_le10();
    v.extend(torus());
    v.extend(random_seeded());
    v
}

/// Torus-link braid closures T(2,k) and T(3,k).
fn torus() -> Vec<CorpusEntry> {
    let mut v = Vec::new();
    for k in 2..=7usize {
        v.push(entry(&format!("T(2,{k})"), &"a".repeat(k), 2));
    }
    for k in 2..=5usize {
        v.push(entry(&format!("T(3,{k})"), &"ab".repeat(k), 3));
    }
    v
}

/// Alternating diagrams with at most 10 crossings: the (2,k) torus family
/// plus every alternating closure of a word over {σ₁, σ₂⁻¹} on 3 strands,
/// deduplicated up to diagram symmetry.
fn alternating_le10() -> Vec<CorpusEntry> {
    let mut v = Vec::new();
    for k in 2..=7usize {
        v.push(entry(&format!("alt-2-braid-{k}"), &"a".repeat(k), 2));
    }
    let mut seen: Vec<u64> = v.iter().map(|e| e.diagram.canonical_hash()).collect();
    for len in 3..=7usize {
        for bits in 0u32..(1 << len) {
            let word: String = (0..len)
                .map(|i| if bits & (1 << i) != 0 { 'B' } else { 'a' })
                .collect();
            let d = parse_braid(&word, 3).unwrap();
            if !d.is_alternating() {
                continue;
            }
            let h = d.canonical_hash();
            if seen.contains(&h) {
                continue;
            }
            seen.push(h);
            v.push(entry(&format!("alt-3-braid-{word}"), &word, 3));
            if v.len() >= 26 {
                return v;
            }
        }
    }
    v
}

/// Seeded pseudorandom braid closures, at most 12 crossings each.
fn random_seeded() -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b686f7661); // "khova"
    let mut v = Vec::new();
    let mut seen = Vec::new();
    while v.len() < 35 {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(4..=10usize);
        let word: String = (0..len)
            .map(|_| {
                let g = rng.gen_range(0..strands - 1) as u8;
                let lower = rng.gen_bool(0.5);
                (if lower { b'a' + g } else { b'A' + g }) as char
            })
            .collect();
        let d = parse_braid(&word, strands).unwrap();
        if d.crossing_count() == 0 {
            continue;
        }
        let h = d.canonical_hash();
        if seen.contains(&h) {
            continue;
        }
        seen.push(h);
        v.push(entry(&format!("random-{}-{word}", v.len()), &word, strands));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_corpus_is_large_and_small_crossing() {
        let all = full_corpus();
        assert!(all.len() >= 60, "only {} diagrams", all.len());
        assert!(all.iter().all(|e| e.diagram.crossing_count() <= 12));
    }

    #[test]
    fn torus_includes_both_small_torus_knots() {
        let t = corpus("torus").unwrap();
        for word in ["aaa", "aaaaa"] {
            let h = parse_braid(word, 2).unwrap().canonical_hash();
            assert!(
                t.iter().any(|e| e.diagram.canonical_hash() == h),
                "missing closure of {word}"
            );
        }
    }

    #[test]
    fn alternating_corpus_is_alternating() {
        let alts = corpus("alternating-le10").unwrap();
        assert!(!alts.is_empty());
        for e in &alts {
            assert!(e.diagram.is_alternating(), "{} not alternating", e.name);
            assert!(e.diagram.crossing_count() <= 10);
        }
    }

    #[test]
    fn alternation_detector() {
        assert!(parse_braid("aaa", 2).unwrap().is_alternating());
        assert!(parse_braid("aBaB", 3).unwrap().is_alternating());
        assert!(!parse_braid("abab", 3).unwrap().is_alternating());
        assert!(!parse_braid("aab", 3).unwrap().is_alternating());
    }

    #[test]
    fn unknown_corpus_lists_options() {
        let err = corpus("nope").unwrap_err().to_string();
        for c in CORPORA {
            assert!(err.contains(c), "error should list {c}");
        }
    }

    #[test]
    fn random_corpus_is_deterministic() {
        let a: Vec<u64> = random_seeded().iter().map(|e| e.diagram.canonical_hash()).collect();
        let b: Vec<u64> = random_seeded().iter().map(|e| e.diagram.canonical_hash()).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 35);
    }
}
