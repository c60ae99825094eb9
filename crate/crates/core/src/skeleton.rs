//! Vertex, edge and face classes of a triangulation.

use serde::Serialize;

use crate::perm::{edge_index, facet_vertices, EDGE_VERTICES};
use crate::triangulation::Triangulation;

/// One tetrahedron edge slot belonging to an edge class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeSlot {
    pub tet: usize,
    pub edge: usize,
    /// Whether the slot's low-to-high vertex direction agrees with the class
    /// orientation.
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    pub slots: Vec<EdgeSlot>,
    pub boundary: bool,
    /// Tail and head vertex classes along the class orientation.
    pub ends: [usize; 2],
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone, Debug)]
pub struct FaceClass {
    /// One or two `(tet, facet)` members; the first is the representative.
    pub members: Vec<(usize, usize)>,
    pub boundary: bool,
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    pub edge_agrees: Vec<[bool; 6]>,
    pub face_of: Vec<[usize; 4]>,
    pub vertices: Vec<Vec<(usize, usize)>>,
    pub edges: Vec<EdgeClass>,
    pub faces: Vec<FaceClass>,
    /// Edge classes identified with themselves in reverse.
    pub invalid_edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonCounts {
    pub tetrahedra: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

struct ParityUnionFind {
    parent: Vec<usize>,
    // parity relative to parent
    flip: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), flip: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, pf) = self.find(p);
        self.parent[x] = root;
        self.flip[x] ^= pf;
        (root, self.flip[x])
    }

    /// Record that `a` and `b` are identified, reversed iff `reversed`.
    /// Returns false if this contradicts an earlier identification.
    fn union(&mut self, a: usize, b: usize, reversed: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == reversed;
        }
        // keep the smaller index as root for deterministic numbering
        if ra < rb {
            self.parent[rb] = ra;
            self.flip[rb] = fa ^ fb ^ reversed;
        } else {
            self.parent[ra] = rb;
            self.flip[ra] = fa ^ fb ^ reversed;
        }
        true
    }
}

pub fn compute_skeleton(tri: &Triangulation) -> Skeleton {
    let n = tri.tet_count();
    let mut vuf = ParityUnionFind::new(4 * n);
    let mut euf = ParityUnionFind::new(6 * n);
    let mut reversed_slots = Vec::new();
    for t in 0..n {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            for v in facet_vertices(f) {
                vuf.union(4 * t + v, 4 * g.tet + g.perm.apply(v), false);
            }
            let fv = facet_vertices(f);
            for (i, &a) in fv.iter().enumerate() {
                for &b in &fv[i + 1..] {
                    let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                    if !euf.union(6 * t + edge_index(a, b), 6 * g.tet + edge_index(pa, pb), pa > pb) {
                        reversed_slots.push(6 * t + edge_index(a, b));
                    }
                }
            }
        }
    }

    let mut vertex_of = vec![[0usize; 4]; n];
    let mut vertices: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut vid = vec![usize::MAX; 4 * n];
    for t in 0..n {
        for v in 0..4 {
            let (r, _) = vuf.find(4 * t + v);
            if vid[r] == usize::MAX {
                vid[r] = vertices.len();
                vertices.push(Vec::new());
            }
            vertex_of[t][v] = vid[r];
            vertices[vid[r]].push((t, v));
        }
    }

    let mut edge_of = vec![[0usize; 6]; n];
    let mut edge_agrees = vec![[true; 6]; n];
    let mut edges: Vec<EdgeClass> = Vec::new();
    let mut eid = vec![usize::MAX; 6 * n];
    for t in 0..n {
        for e in 0..6 {
            let (r, flip) = euf.find(6 * t + e);
            if eid[r] == usize::MAX {
                eid[r] = edges.len();
                let [a, b] = EDGE_VERTICES[e];
                // representative slot is the root, which is the first slot seen
                debug_assert!(!flip);
                edges.push(EdgeClass { slots: Vec::new(), boundary: false, ends: [vertex_of[t][a], vertex_of[t][b]] });
            }
            let id = eid[r];
            edge_of[t][e] = id;
            edge_agrees[t][e] = !flip;
            edges[id].slots.push(EdgeSlot { tet: t, edge: e, agrees: !flip });
        }
    }

    let mut face_of = vec![[usize::MAX; 4]; n];
    let mut faces: Vec<FaceClass> = Vec::new();
    for t in 0..n {
        for f in 0..4 {
            if face_of[t][f] != usize::MAX {
                continue;
            }
            let id = faces.len();
            face_of[t][f] = id;
            let mut members = vec![(t, f)];
            let boundary = match tri.gluing(t, f) {
                None => true,
                Some(g) => {
                    let back = g.perm.apply(f);
                    if (g.tet, back) != (t, f) {
                        face_of[g.tet][back] = id;
                        members.push((g.tet, back));
                    }
                    false
                }
            };
            if boundary {
                let fv = facet_vertices(f);
                for (i, &a) in fv.iter().enumerate() {
                    for &b in &fv[i + 1..] {
                        edges[edge_of[t][edge_index(a, b)]].boundary = true;
                    }
                }
            }
            faces.push(FaceClass { members, boundary });
        }
    }

    let mut invalid_edges: Vec<usize> = reversed_slots.iter().map(|&s| edge_of[s / 6][s % 6]).collect();
    invalid_edges.sort_unstable();
    invalid_edges.dedup();
    Skeleton { vertex_of, edge_of, edge_agrees, face_of, vertices, edges, faces, invalid_edges }
}

impl Skeleton {
    pub fn counts(&self) -> SkeletonCounts {
        SkeletonCounts {
            tetrahedra: self.edge_of.len(),
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
        }
    }

    pub fn degree(&self, edge: usize) -> usize {
        self.edges[edge].degree()
    }

    /// Histogram `E_i` of edge degrees, indexed by degree.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let max = self.edges.iter().map(EdgeClass::degree).max().unwrap_or(0);
        let mut h = vec![0; max + 1];
        for e in &self.edges {
            h[e.degree()] += 1;
        }
        h
    }

    /// Sign (+1/-1) of the oriented tetrahedron edge `a -> b` relative to its
    /// class orientation.
    pub fn edge_direction(&self, tet: usize, a: usize, b: usize) -> i32 {
        let e = edge_index(a, b);
        let s = if self.edge_agrees[tet][e] { 1 } else { -1 };
        if a < b {
            s
        } else {
            -s
        }
    }

    /// V - E + F - T.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64 - self.edge_of.len() as i64
    }

    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        self.faces.iter().filter(|f| f.boundary).map(|f| f.members[0]).collect()
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].boundary).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lone_tetrahedron() {
        let t = Triangulation::with_tets(1);
        let s = compute_skeleton(&t);
        assert_eq!(s.counts(), SkeletonCounts { tetrahedra: 1, vertices: 4, edges: 6, faces: 4 });
        assert!(s.edges.iter().all(|e| e.boundary && e.degree() == 1));
    }

    #[test]
    fn degrees_sum_to_six_per_tet() {
        let t = Triangulation::parse("tri 1\ntet 0: 0:1230 0:3012 - -\n").unwrap();
        let s = compute_skeleton(&t);
        let total: usize = s.edges.iter().map(EdgeClass::degree).sum();
        assert_eq!(total, 6);
    }
}
