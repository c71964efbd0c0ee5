//! Text input formats: PD codes and braid words.

use std::collections::HashMap;

use super::{Crossing, DiagramError, Edge, PlanarDiagram};

/// Parse a PD code such as `X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]`.
///
/// Tuples list the four edges counterclockwise from the incoming
/// under-strand. The over-strand direction is inferred from the edge
/// numbering (consecutive labels run forward, with wrap-around on closed
/// components); ambiguous cases are settled so that the whole diagram
/// carries a consistent orientation. A bare `U` adds a crossing-free
/// unknot component.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut tuples: Vec<[Edge; 4]> = Vec::new();
    let mut free_loops = 0u32;
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix(['u', 'U']) {
            free_loops += 1;
            rest = r.trim_start_matches([';', ',', ' ', '\t', '\n']).trim();
            continue;
        }
        let r = rest
            .strip_prefix(['x', 'X'])
            .ok_or_else(|| DiagramError::Syntax(format!("expected X[...] near '{}'", snippet(rest))))?;
        let r = r.trim_start();
        let r = r
            .strip_prefix('[')
            .ok_or_else(|| DiagramError::Syntax(format!("expected '[' near '{}'", snippet(rest))))?;
        let (body, r) = r
            .split_once(']')
            .ok_or_else(|| DiagramError::Syntax("missing ']'".into()))?;
        let nums: Result<Vec<Edge>, _> = body.split(',').map(|t| t.trim().parse::<Edge>()).collect();
        let nums = nums.map_err(|_| DiagramError::Syntax(format!("bad edge list '[{body}]'")))?;
        let arr: [Edge; 4] = nums
            .try_into()
            .map_err(|_| DiagramError::Syntax(format!("tuple '[{body}]' must have 4 entries")))?;
        tuples.push(arr);
        rest = r.trim_start_matches([';', ',', ' ', '\t', '\n']).trim();
    }
    let crossings = orient(&tuples)?;
    PlanarDiagram::from_parts(crossings, free_loops, None)
}

fn snippet(s: &str) -> String {
    s.chars().take(12).collect()
}

/// Assign an over-strand direction to every tuple.
///
/// The numbering rule gives a preference per crossing (`d == b+1` means the
/// over-strand runs `b -> d`, and large jumps are wrap-arounds on a closed
/// component). Preferences can disagree with global consistency, so the
/// in/out constraint "every edge enters once and leaves once" is solved by
/// propagation, falling back on the preference for unconstrained components.
fn orient(tuples: &[[Edge; 4]]) -> Result<Vec<Crossing>, DiagramError> {
    let n = tuples.len();
    // Preference per crossing: over_in slot 1 or 3, or none.
    let prefer: Vec<Option<u8>> = tuples
        .iter()
        .map(|t| {
            let (b, d) = (t[1], t[3]);
            if b == d {
                None
            } else if d == b + 1 || b > d + 1 {
                Some(1) // over-strand runs b -> d
            } else {
                Some(3) // d == b + 1 or wrap-around d -> b
            }
        })
        .collect();

    // Occurrences of every edge.
    let mut occ: HashMap<Edge, Vec<(usize, u8)>> = HashMap::new();
    for (ci, t) in tuples.iter().enumerate() {
        for (s, &e) in t.iter().enumerate() {
            occ.entry(e).or_default().push((ci, s as u8));
        }
    }
    for (&e, v) in &occ {
        if v.len() != 2 {
            return Err(DiagramError::UnmatchedHalfEdge(e));
        }
    }

    // Role of a slot given a crossing's over_in choice: true = incoming.
    let role = |slot: u8, over_in: u8| slot == 0 || slot == over_in;

    // Propagate constraints. assigned[c] is the fixed over_in if known.
    let mut assigned: Vec<Option<u8>> = vec![None; n];
    // Pairwise constraints between over-slot occurrences of the same edge:
    // (c1, s1, c2, s2) with the requirement role1 != role2.
    let mut pair_constraints: Vec<(usize, u8, usize, u8)> = Vec::new();
    for v in occ.values() {
        let (a, b) = (v[0], v[1]);
        let a_over = a.1 == 1 || a.1 == 3;
        let b_over = b.1 == 1 || b.1 == 3;
        match (a_over, b_over) {
            (false, false) => {
                if role(a.1, 1) == role(b.1, 1) {
                    return Err(DiagramError::Orientation(a.0));
                }
            }
            (true, false) => {
                let need = !role(b.1, 1); // the over occurrence must take the opposite role
                force(&mut assigned, a.0, need_over_in(a.1, need))?;
            }
            (false, true) => {
                let need = !role(a.1, 1);
                force(&mut assigned, b.0, need_over_in(b.1, need))?;
            }
            (true, true) => {
                if a.0 == b.0 {
                    // A loop over the same crossing: either choice works.
                } else {
                    pair_constraints.push((a.0, a.1, b.0, b.1));
                }
            }
        }
    }
    // Fixed-point propagation over the pairwise constraints.
    let mut changed = true;
    while changed {
        changed = false;
        for &(c1, s1, c2, s2) in &pair_constraints {
            match (assigned[c1], assigned[c2]) {
                (Some(o1), None) => {
                    let need = !role(s1, o1);
                    force(&mut assigned, c2, need_over_in(s2, need))?;
                    changed = true;
                }
                (None, Some(o2)) => {
                    let need = !role(s2, o2);
                    force(&mut assigned, c1, need_over_in(s1, need))?;
                    changed = true;
                }
                (Some(o1), Some(o2)) => {
                    if role(s1, o1) == role(s2, o2) {
                        return Err(DiagramError::Orientation(c1));
                    }
                }
                (None, None) => {}
            }
        }
        if !changed {
            // Seed an unassigned crossing from its preference and keep going.
            if let Some(c) = (0..n).find(|&c| assigned[c].is_none()) {
                assigned[c] = Some(prefer[c].unwrap_or(1));
                changed = true;
            }
        }
    }

    // When a whole component was seeded against its preferences, flipping the
    // component is also consistent; prefer majority agreement.
    // (Seeding already starts from the preferred value, so only genuinely
    // ambiguous crossings deviate.)
    Ok(tuples
        .iter()
        .zip(&assigned)
        .map(|(t, o)| Crossing {
            edges: *t,
            over_in: o.unwrap(),
        })
        .collect())
}

fn need_over_in(slot: u8, incoming: bool) -> u8 {
    // Slot `over_in` is incoming; the other over slot is outgoing.
    if incoming {
        slot
    } else {
        4 - slot
    }
}

fn force(assigned: &mut [Option<u8>], c: usize, val: u8) -> Result<(), DiagramError> {
    match assigned[c] {
        None => {
            assigned[c] = Some(val);
            Ok(())
        }
        Some(v) if v == val => Ok(()),
        Some(_) => Err(DiagramError::Orientation(c)),
    }
}

/// Parse a braid word and return its closure.
///
/// Letters `a`..`y` are the positive generators σ1, σ2, ...; the matching
/// capitals are their inverses. Strands run downward; a positive crossing
/// takes the left strand over the right.
pub fn parse_braid(word: &str, strands: usize) -> Result<PlanarDiagram, DiagramError> {
    if strands < 2 {
        return Err(DiagramError::TooFewStrands);
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    // Open edge at each strand position; the first `strands` ids are the top
    // edges, which the closure identifies with the final bottom edges.
    let mut current: Vec<Edge> = (0..strands as Edge).collect();
    let mut next_edge = strands as Edge;
    let mut fresh = || {
        let e = next_edge;
        next_edge += 1;
        e
    };
    for ch in word.chars() {
        if ch.is_whitespace() {
            continue;
        }
        let (i, positive) = if ch.is_ascii_lowercase() {
            ((ch as u8 - b'a') as usize, true)
        } else if ch.is_ascii_uppercase() {
            ((ch as u8 - b'A') as usize, false)
        } else {
            return Err(DiagramError::Syntax(format!("bad braid letter '{ch}'")));
        };
        if i + 1 >= strands {
            return Err(DiagramError::BadGenerator(ch, i + 2));
        }
        if positive {
            // Left strand passes over; slots counterclockwise from the
            // under-strand entering at the upper right.
            let (o_top, u_top) = (current[i], current[i + 1]);
            let (u_bot, o_bot) = (fresh(), fresh());
            crossings.push(Crossing {
                edges: [u_top, o_top, u_bot, o_bot],
                over_in: 1,
            });
            current[i] = u_bot;
            current[i + 1] = o_bot;
        } else {
            let (u_top, o_top) = (current[i], current[i + 1]);
            let (u_bot, o_bot) = (fresh(), fresh());
            crossings.push(Crossing {
                edges: [u_top, o_bot, u_bot, o_top],
                over_in: 3,
            });
            current[i] = o_bot;
            current[i + 1] = u_bot;
        }
    }
    // Close the braid: identify each bottom edge with its top edge.
    let mut free_loops = 0u32;
    for s in 0..strands {
        let top = s as Edge;
        let bottom = current[s];
        if bottom == top {
            if crossings.iter().all(|x| !x.edges.contains(&top)) {
                free_loops += 1;
            }
            continue;
        }
        for x in &mut crossings {
            for e in &mut x.edges {
                if *e == bottom {
                    *e = top;
                }
            }
        }
    }
    PlanarDiagram::from_parts(crossings, free_loops, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_orientation_inference_matches_signs() {
        // Figure-eight knot, a standard PD code: two positive, two negative.
        let d = parse_pd("X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]").unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 0);
        assert_eq!((d.n_plus(), d.n_minus()), (2, 2));
    }

    #[test]
    fn pd_free_loop_token() {
        let d = parse_pd("U").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
        let two = parse_pd("U;U").unwrap();
        assert_eq!(two.component_count(), 2);
    }

    #[test]
    fn braid_idle_strand_becomes_free_loop() {
        let d = parse_braid("aaa", 3).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.free_loops(), 1);
    }

    #[test]
    fn braid_inverse_letters() {
        let fig8 = parse_braid("aBaB", 3).unwrap();
        assert_eq!(fig8.component_count(), 1);
        assert_eq!(fig8.writhe(), 0);
        assert!(parse_braid("c", 2).is_err());
        assert!(parse_braid("a1", 2).is_err());
    }
}
