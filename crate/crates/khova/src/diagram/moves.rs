//! Reidemeister moves as diagram surgery.
//!
//! Local pictures are rebuilt from ray models: at each new crossing the four
//! incident segments are listed in cyclic order with their strand directions,
//! then rotated so the incoming under-strand leads. Face traces fix where a
//! move is legal; when the trace chirality is not determined locally, both
//! mirror models are built and the one passing the sphere Euler check wins.

use super::faces::{faces, is_planar};
use super::{Crossing, DiagramError, Edge, PlanarDiagram};

/// A Reidemeister move location.
///
/// Faces and face positions refer to the output of [`faces`] on the diagram
/// the move is applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RMove {
    /// Add a kink on `edge` (`None` kinks a crossing-free loop).
    R1Add { edge: Option<Edge>, positive: bool },
    /// Undo a kink at the given crossing.
    R1Remove { crossing: usize },
    /// Push the strand at face position `pos1` across the one at `pos2`.
    R2Add {
        face: usize,
        pos1: usize,
        pos2: usize,
        over_first: bool,
    },
    /// Pull apart the bigon face.
    R2Remove { face: usize },
    /// Slide a strand across the triangle face; `mid_edge` is the face edge
    /// of the strand being slid.
    R3 { face: usize, mid_edge: Edge },
}

/// One ray at a crossing under construction: the incident edge, whether the
/// strand enters along it, and whether it belongs to the over-strand.
#[derive(Clone, Copy)]
struct Ray {
    edge: Edge,
    strand_in: bool,
    over: bool,
}

/// Rotate a counterclockwise ray list so the incoming under-strand leads.
fn crossing_from_rays(rays: &[Ray; 4]) -> Crossing {
    let start = rays
        .iter()
        .position(|r| r.strand_in && !r.over)
        .expect("under-strand must enter somewhere");
    let at = |i: usize| rays[(start + i) % 4];
    let over_in = (1..4).find(|&i| at(i).strand_in && at(i).over).unwrap() as u8;
    debug_assert!(over_in == 1 || over_in == 3);
    Crossing {
        edges: [at(0).edge, at(1).edge, at(2).edge, at(3).edge],
        over_in,
    }
}

fn reversed(rays: &[Ray; 4]) -> [Ray; 4] {
    [rays[3], rays[2], rays[1], rays[0]]
}

impl PlanarDiagram {
    pub fn apply_reidemeister(&self, mv: &RMove) -> Result<PlanarDiagram, DiagramError> {
        match mv {
            RMove::R1Add { edge, positive } => self.r1_add(*edge, *positive),
            RMove::R1Remove { crossing } => self.r1_remove(*crossing),
            RMove::R2Add {
                face,
                pos1,
                pos2,
                over_first,
            } => self.r2_add(*face, *pos1, *pos2, *over_first),
            RMove::R2Remove { face } => self.r2_remove(*face),
            RMove::R3 { face, mid_edge } => self.r3(*face, *mid_edge),
        }
    }

    fn r1_add(&self, edge: Option<Edge>, positive: bool) -> Result<PlanarDiagram, DiagramError> {
        let mut crossings = self.crossings().to_vec();
        match edge {
            None => {
                if self.free_loops() == 0 {
                    return Err(DiagramError::IllegalMove("no free loop to kink".into()));
                }
                let e = crossings.len() as Edge * 4 + 7; // any two fresh labels
                let f = e + 1;
                crossings.push(if positive {
                    Crossing {
                        edges: [e, f, f, e],
                        over_in: 1,
                    }
                } else {
                    Crossing {
                        edges: [e, e, f, f],
                        over_in: 3,
                    }
                });
                PlanarDiagram::from_parts(crossings, self.free_loops() - 1, self.marked_edge())
            }
            Some(e) => {
                if !self.edges().contains(&e) {
                    return Err(DiagramError::IllegalMove(format!("no edge {e}")));
                }
                let (_out, inn) = self.edge_ends(e);
                let f = self.edges().len() as Edge;
                let g = f + 1;
                crossings[(inn / 4) as usize].edges[(inn % 4) as usize] = g;
                crossings.push(if positive {
                    Crossing {
                        edges: [e, f, f, g],
                        over_in: 1,
                    }
                } else {
                    Crossing {
                        edges: [e, g, f, f],
                        over_in: 3,
                    }
                });
                PlanarDiagram::from_parts(crossings, self.free_loops(), self.marked_edge())
            }
        }
    }

    fn r1_remove(&self, ci: usize) -> Result<PlanarDiagram, DiagramError> {
        let x = *self
            .crossings()
            .get(ci)
            .ok_or_else(|| DiagramError::IllegalMove(format!("no crossing {ci}")))?;
        let pair = (0..4)
            .find(|&s| x.edges[s] == x.edges[(s + 1) % 4])
            .ok_or_else(|| DiagramError::IllegalMove(format!("crossing {ci} has no kink loop")))?;
        let loop_edge = x.edges[pair];
        let (oa, ob) = (x.edges[(pair + 2) % 4], x.edges[(pair + 3) % 4]);
        let mut surgeon = Surgeon::new(self);
        surgeon.delete(ci);
        surgeon.bond(oa, ob);
        surgeon.drop_edge(loop_edge);
        surgeon.finish()
    }

    fn r2_add(
        &self,
        face_idx: usize,
        pos1: usize,
        pos2: usize,
        over_first: bool,
    ) -> Result<PlanarDiagram, DiagramError> {
        let fs = faces(self);
        let face = fs
            .get(face_idx)
            .ok_or_else(|| DiagramError::IllegalMove(format!("no face {face_idx}")))?;
        if pos1 == pos2 || pos1 >= face.len() || pos2 >= face.len() {
            return Err(DiagramError::IllegalMove("bad face positions".into()));
        }
        // The strand departed at a corner, and whether the boundary traversal
        // runs with the strand's own orientation there.
        let side = |pos: usize| {
            let c = face.corners[pos];
            let x = self.crossings()[c.crossing];
            let t = c.depart_slot();
            (x.edges[t as usize], !x.is_incoming(t))
        };
        let (e1, matched1) = side(pos1);
        let (e2, matched2) = side(pos2);
        if e1 == e2 {
            return Err(DiagramError::IllegalMove("strands must be distinct edges".into()));
        }
        // Split both edges in thirds: traversal order a1,a2,a3 along the face
        // boundary for the pushed strand, b1,b2,b3 for the other.
        let base = self.edges().len() as Edge;
        let (a1, a2, a3) = (e1, base, base + 1);
        let (b1, b2, b3) = (e2, base + 2, base + 3);
        let mut crossings = self.crossings().to_vec();
        let mut set = |slot: u32, e: Edge| {
            crossings[(slot / 4) as usize].edges[(slot % 4) as usize] = e;
        };
        let (o1, i1) = self.edge_ends(e1);
        set(o1, if matched1 { a1 } else { a3 });
        set(i1, if matched1 { a3 } else { a1 });
        let (o2, i2) = self.edge_ends(e2);
        set(o2, if matched2 { b1 } else { b3 });
        set(i2, if matched2 { b3 } else { b1 });
        // Ray models of the two new crossings, counterclockwise. The pushed
        // strand crosses the other twice; traversal in/out is fixed by the
        // finger picture, strand direction by the `matched` flags.
        let ray = |e: Edge, t_in: bool, first: bool| Ray {
            edge: e,
            strand_in: t_in == if first { matched1 } else { matched2 },
            over: first == over_first,
        };
        let w2 = [
            ray(b2, true, false),
            ray(a2, false, true),
            ray(b3, false, false),
            ray(a1, true, true),
        ];
        let e2rays = [
            ray(b1, true, false),
            ray(a2, true, true),
            ray(b2, false, false),
            ray(a3, false, true),
        ];
        // The face trace turns clockwise in the model's terms, so the mirror
        // of the model picture is the right one.
        crossings.push(crossing_from_rays(&reversed(&w2)));
        crossings.push(crossing_from_rays(&reversed(&e2rays)));
        let d = PlanarDiagram::from_parts(crossings, self.free_loops(), self.marked_edge())?;
        debug_assert!(is_planar(&d));
        Ok(d)
    }

    fn r2_remove(&self, face_idx: usize) -> Result<PlanarDiagram, DiagramError> {
        let fs = faces(self);
        let face = fs
            .get(face_idx)
            .ok_or_else(|| DiagramError::IllegalMove(format!("no face {face_idx}")))?;
        if face.len() != 2 {
            return Err(DiagramError::IllegalMove("not a bigon face".into()));
        }
        let (c0, c1) = (face.corners[0], face.corners[1]);
        let (p, q) = (c0.crossing, c1.crossing);
        if p == q {
            return Err(DiagramError::IllegalMove("bigon must join two crossings".into()));
        }
        // g1 runs from the first corner to the second, g2 back.
        let g1 = self.crossings()[p].edges[c0.depart_slot() as usize];
        let g2 = self.crossings()[q].edges[c1.depart_slot() as usize];
        let g1_slot_p = c0.depart_slot();
        let g1_slot_q = c1.arrive_slot;
        if g1_slot_p % 2 != g1_slot_q % 2 {
            return Err(DiagramError::IllegalMove(
                "bigon strands alternate over and under".into(),
            ));
        }
        let g2_slot_q = c1.depart_slot();
        let g2_slot_p = c0.arrive_slot;
        let outer = |ci: usize, s: u8| self.crossings()[ci].edges[((s + 2) % 4) as usize];
        let (o1p, o1q) = (outer(p, g1_slot_p), outer(q, g1_slot_q));
        let (o2p, o2q) = (outer(p, g2_slot_p), outer(q, g2_slot_q));
        let mut surgeon = Surgeon::new(self);
        surgeon.delete(p);
        surgeon.delete(q);
        surgeon.bond(o1p, g1);
        surgeon.bond(g1, o1q);
        surgeon.bond(o2p, g2);
        surgeon.bond(g2, o2q);
        surgeon.finish()
    }

    fn r3(&self, face_idx: usize, mid_edge: Edge) -> Result<PlanarDiagram, DiagramError> {
        let fs = faces(self);
        let face = fs
            .get(face_idx)
            .ok_or_else(|| DiagramError::IllegalMove(format!("no face {face_idx}")))?;
        if face.len() != 3 {
            return Err(DiagramError::IllegalMove("not a triangle face".into()));
        }
        let cr: Vec<usize> = face.corners.iter().map(|c| c.crossing).collect();
        if cr[0] == cr[1] || cr[1] == cr[2] || cr[0] == cr[2] {
            return Err(DiagramError::IllegalMove("triangle crossings must differ".into()));
        }
        let edges = face.boundary_edges(self);
        let k = edges
            .iter()
            .position(|&e| e == mid_edge)
            .ok_or_else(|| DiagramError::IllegalMove(format!("edge {mid_edge} not on face")))?;
        // Boundary order: corner k sits at B, departs along the sliding
        // strand's mid-edge to C; the third crossing is A.
        let (ck, ck1, ck2) = (
            face.corners[k],
            face.corners[(k + 1) % 3],
            face.corners[(k + 2) % 3],
        );
        let (b, c, a) = (ck.crossing, ck1.crossing, ck2.crossing);
        let (mx, my, mz) = (mid_edge, edges[(k + 1) % 3], edges[(k + 2) % 3]);
        let mx_b = ck.depart_slot();
        let mx_c = ck1.arrive_slot;
        if mx_b % 2 != mx_c % 2 {
            return Err(DiagramError::IllegalMove(
                "sliding strand must pass over both or under both".into(),
            ));
        }
        let my_c = ck1.depart_slot();
        let my_a = ck2.arrive_slot;
        let mz_a = ck2.depart_slot();
        let mz_b = ck.arrive_slot;
        let opp = |ci: usize, s: u8| self.crossings()[ci].edges[((s + 2) % 4) as usize];
        let (ox1, ox2) = (opp(b, mx_b), opp(c, mx_c));
        let (oy1, oy2) = (opp(c, my_c), opp(a, my_a));
        let (oz1, oz2) = (opp(b, mz_b), opp(a, mz_a));
        // Strand directions: does each strand run with the model orientation
        // (x from the ox1 side, y from oy1, z from oz1)?
        let dir_x = !self.crossings()[b].is_incoming(mx_b);
        let dir_y = !self.crossings()[c].is_incoming(my_c);
        let dir_z = !self.crossings()[b].is_incoming(mz_b);
        // Which strand is over at each crossing pair, read off slot parity
        // (over-strand slots are odd) and preserved by the slide.
        let x_over = mx_b % 2 == 1;
        let y_over_a = my_a % 2 == 1;
        let ray = |e: Edge, model_in: bool, dir: bool, over: bool| Ray {
            edge: e,
            strand_in: model_in == dir,
            over,
        };
        // After the slide each strand meets its two crossings in the opposite
        // order; new cyclic pictures from the slid model.
        let new_b = [
            ray(ox2, false, dir_x, x_over),
            ray(oz2, false, dir_z, !x_over),
            ray(mx, true, dir_x, x_over),
            ray(mz, true, dir_z, !x_over),
        ];
        let new_c = [
            ray(mx, false, dir_x, x_over),
            ray(oy2, false, dir_y, !x_over),
            ray(ox1, true, dir_x, x_over),
            ray(my, true, dir_y, !x_over),
        ];
        let new_a = [
            ray(mz, false, dir_z, !y_over_a),
            ray(my, false, dir_y, y_over_a),
            ray(oz1, true, dir_z, !y_over_a),
            ray(oy1, true, dir_y, y_over_a),
        ];
        // As in the R2 case, the traced face is the mirror of the model.
        let mut cs = self.crossings().to_vec();
        cs[b] = crossing_from_rays(&reversed(&new_b));
        cs[c] = crossing_from_rays(&reversed(&new_c));
        cs[a] = crossing_from_rays(&reversed(&new_a));
        let d = PlanarDiagram::from_parts(cs, self.free_loops(), self.marked_edge())?;
        debug_assert!(is_planar(&d));
        Ok(d)
    }
}

/// Every legal move location on the diagram.
pub fn legal_moves(d: &PlanarDiagram) -> Vec<RMove> {
    let mut out = Vec::new();
    for positive in [true, false] {
        if d.free_loops() > 0 {
            out.push(RMove::R1Add {
                edge: None,
                positive,
            });
        }
        for e in d.edges() {
            out.push(RMove::R1Add {
                edge: Some(e),
                positive,
            });
        }
    }
    for (ci, x) in d.crossings().iter().enumerate() {
        if (0..4).any(|s| x.edges[s] == x.edges[(s + 1) % 4]) {
            out.push(RMove::R1Remove { crossing: ci });
        }
    }
    let fs = faces(d);
    for (fi, face) in fs.iter().enumerate() {
        let edges = face.boundary_edges(d);
        for p1 in 0..face.len() {
            for p2 in 0..face.len() {
                if p1 != p2 && edges[p1] != edges[p2] {
                    for over_first in [true, false] {
                        out.push(RMove::R2Add {
                            face: fi,
                            pos1: p1,
                            pos2: p2,
                            over_first,
                        });
                    }
                }
            }
        }
        if face.len() == 2
            && face.corners[0].crossing != face.corners[1].crossing
            && face.corners[0].depart_slot() % 2 == face.corners[1].arrive_slot % 2
        {
            out.push(RMove::R2Remove { face: fi });
        }
        if face.len() == 3 {
            let cs: Vec<usize> = face.corners.iter().map(|c| c.crossing).collect();
            let distinct = cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2];
            let mut uniq = edges.clone();
            uniq.sort_unstable();
            uniq.dedup();
            if distinct && uniq.len() == 3 {
                for k in 0..3 {
                    let slot_here = face.corners[k].depart_slot();
                    let slot_there = face.corners[(k + 1) % 3].arrive_slot;
                    if slot_here % 2 == slot_there % 2 {
                        out.push(RMove::R3 {
                            face: fi,
                            mid_edge: edges[k],
                        });
                    }
                }
            }
        }
    }
    out
}

/// Mutable scratch state for crossing-level surgery. Deleting crossings
/// leaves loose edge ends; `bond` records that two edges fuse into one.
/// `finish` chases the bond chains, turning fully closed chains into free
/// loops, and revalidates.
struct Surgeon {
    crossings: Vec<Option<Crossing>>,
    free_loops: u32,
    marked: Option<Edge>,
    bonds: Vec<(Edge, Edge)>,
    dropped: Vec<Edge>,
    edge_count: usize,
}

impl Surgeon {
    fn new(d: &PlanarDiagram) -> Self {
        Surgeon {
            crossings: d.crossings().iter().copied().map(Some).collect(),
            free_loops: d.free_loops(),
            marked: d.marked_edge(),
            bonds: Vec::new(),
            dropped: Vec::new(),
            edge_count: d.edges().len(),
        }
    }

    fn delete(&mut self, ci: usize) {
        self.crossings[ci] = None;
    }

    fn bond(&mut self, a: Edge, b: Edge) {
        self.bonds.push((a, b));
    }

    fn drop_edge(&mut self, e: Edge) {
        self.dropped.push(e);
    }

    fn finish(self) -> Result<PlanarDiagram, DiagramError> {
        let mut uf = super::UnionFind::new(self.edge_count);
        for &(a, b) in &self.bonds {
            uf.union(a as usize, b as usize);
        }
        let mut occurrences = vec![0u32; self.edge_count];
        let mut crossings = Vec::new();
        for x in self.crossings.into_iter().flatten() {
            let mut y = x;
            for e in &mut y.edges {
                *e = uf.find(*e as usize) as Edge;
                occurrences[*e as usize] += 1;
            }
            crossings.push(y);
        }
        let mut free_loops = self.free_loops;
        let mut bonded: Vec<Edge> = self
            .bonds
            .iter()
            .map(|&(a, _)| uf.find(a as usize) as Edge)
            .collect();
        bonded.sort_unstable();
        bonded.dedup();
        for cls in bonded {
            if occurrences[cls as usize] == 0 {
                free_loops += 1;
            }
        }
        let marked = self.marked.and_then(|m| {
            if self.dropped.contains(&m) {
                return None;
            }
            let cls = uf.find(m as usize) as Edge;
            if occurrences[cls as usize] > 0 {
                Some(cls)
            } else {
                None
            }
        });
        PlanarDiagram::from_parts(crossings, free_loops, marked)
    }
}
