//! Faces of the diagram's 4-valent graph, read off the rotation system.

use std::collections::HashMap;

use super::{PlanarDiagram, Slot};

/// A corner of a face: arrival at `arrive_slot`, departure along the edge at
/// the counterclockwise-next slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceCorner {
    pub crossing: usize,
    pub arrive_slot: u8,
}

impl FaceCorner {
    pub fn depart_slot(&self) -> u8 {
        (self.arrive_slot + 1) % 4
    }
}

/// A face boundary as its cyclic corner sequence.
#[derive(Clone, Debug)]
pub struct Face {
    pub corners: Vec<FaceCorner>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Edge departed along at each corner, in boundary order.
    pub fn boundary_edges(&self, d: &PlanarDiagram) -> Vec<u32> {
        self.corners
            .iter()
            .map(|c| d.crossings()[c.crossing].edges[c.depart_slot() as usize])
            .collect()
    }
}

/// All faces, each traced once. Corners are `(crossing, arrive_slot)` pairs;
/// departing from slot `s+1` continues along that slot's edge to its other
/// incidence. Faces are listed by their smallest slot.
pub fn faces(d: &PlanarDiagram) -> Vec<Face> {
    let n = d.crossings().len();
    // Other incidence of each slot's edge.
    let mut partner: Vec<Slot> = vec![0; 4 * n];
    {
        let mut seen: HashMap<u32, Slot> = HashMap::new();
        for (ci, x) in d.crossings().iter().enumerate() {
            for (s, &e) in x.edges.iter().enumerate() {
                let slot = (4 * ci + s) as Slot;
                if let Some(&other) = seen.get(&e) {
                    partner[slot as usize] = other;
                    partner[other as usize] = slot;
                } else {
                    seen.insert(e, slot);
                }
            }
        }
    }
    let mut visited = vec![false; 4 * n];
    let mut out = Vec::new();
    for start in 0..4 * n {
        if visited[start] {
            continue;
        }
        let mut corners = Vec::new();
        let mut slot = start as Slot;
        loop {
            visited[slot as usize] = true;
            corners.push(FaceCorner {
                crossing: (slot / 4) as usize,
                arrive_slot: (slot % 4) as u8,
            });
            let depart = slot - slot % 4 + (slot + 1) % 4;
            slot = partner[depart as usize];
            if slot as usize == start {
                break;
            }
        }
        out.push(Face { corners });
    }
    out
}

/// Does the rotation system describe a sphere embedding for every connected
/// component? (Euler check; free loops are ignored.)
pub fn is_planar(d: &PlanarDiagram) -> bool {
    let n = d.crossings().len();
    if n == 0 {
        return true;
    }
    // Connected components of the underlying 4-valent graph.
    let mut uf = super::UnionFind::new(n);
    let mut seen: HashMap<u32, usize> = HashMap::new();
    for (ci, x) in d.crossings().iter().enumerate() {
        for &e in &x.edges {
            if let Some(&other) = seen.get(&e) {
                uf.union(ci, other);
            } else {
                seen.insert(e, ci);
            }
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|c| uf.find(c)).collect();
    roots.sort_unstable();
    roots.dedup();
    let comps = roots.len();
    // V - E + F = 2 per sphere with E = 2V, so F = V + 2 * comps.
    faces(d).len() == n + 2 * comps
}

#[cfg(test)]
mod tests {
    use super::super::parse::{parse_braid, parse_pd};
    use super::*;

    #[test]
    fn trefoil_face_count() {
        let d = parse_braid("aaa", 2).unwrap();
        let f = faces(&d);
        assert_eq!(f.len(), 5);
        assert_eq!(f.iter().map(Face::len).sum::<usize>(), 12);
        assert!(is_planar(&d));
    }

    #[test]
    fn pd_codes_are_planar() {
        for code in [
            "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]",
            "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]",
        ] {
            assert!(is_planar(&parse_pd(code).unwrap()));
        }
    }

    #[test]
    fn bigon_and_triangle_faces_exist() {
        let d = parse_braid("aaa", 2).unwrap();
        let sizes: Vec<usize> = {
            let mut v: Vec<usize> = faces(&d).iter().map(Face::len).collect();
            v.sort_unstable();
            v
        };
        // Closure of a 3-crossing 2-braid: two 1-gons from the closure arcs,
        // bigons between consecutive crossings, and the outer faces.
        assert_eq!(sizes.iter().sum::<usize>(), 12);
        let u = parse_braid("aA", 2).unwrap();
        assert!(faces(&u).iter().any(|f| f.len() == 2));
    }
}
