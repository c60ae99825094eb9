//! Normal coordinates, the disc incidence table, and direct cell counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{facet_vertices, opposite_edge, EDGE_VERTICES};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TetCoord {
    /// Triangle at vertex `v`.
    pub tri: [i64; 4],
    /// Quad `k` avoids edges `k` and `5 - k`.
    pub quad: [i64; 3],
    /// Octagon `k` meets edges `k` and `5 - k` twice.
    pub oct: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalCoordinate {
    pub tets: Vec<TetCoord>,
    /// Formal coordinates may have negative entries and are not surfaces.
    pub formal: bool,
}

/// The kind of a normal disc within one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiscType {
    Triangle(usize),
    Quad(usize),
    Octagon(usize),
}

impl DiscType {
    pub const ALL: [DiscType; 10] = [
        DiscType::Triangle(0),
        DiscType::Triangle(1),
        DiscType::Triangle(2),
        DiscType::Triangle(3),
        DiscType::Quad(0),
        DiscType::Quad(1),
        DiscType::Quad(2),
        DiscType::Octagon(0),
        DiscType::Octagon(1),
        DiscType::Octagon(2),
    ];

    /// Corners of the arcs this disc leaves in facet `f`.
    pub fn arcs(self, f: usize) -> Vec<usize> {
        match self {
            DiscType::Triangle(v) if v == f => vec![],
            DiscType::Triangle(v) => vec![v],
            DiscType::Quad(k) => vec![partner(k, f)],
            DiscType::Octagon(k) => {
                let p = partner(k, f);
                facet_vertices(f).into_iter().filter(|&w| w != p).collect()
            }
        }
    }

    /// How many times the disc meets tetrahedron edge `e`.
    pub fn edge_hits(self, e: usize) -> i64 {
        let [a, b] = EDGE_VERTICES[e];
        match self {
            DiscType::Triangle(v) => i64::from(v == a || v == b),
            DiscType::Quad(k) => i64::from(e != k && e != opposite_edge(k)),
            DiscType::Octagon(k) => {
                if e == k || e == opposite_edge(k) {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// Vertices on the marked side of the disc.
    pub fn marked_side(self) -> Vec<usize> {
        match self {
            DiscType::Triangle(v) => vec![v],
            DiscType::Quad(k) | DiscType::Octagon(k) => EDGE_VERTICES[k].to_vec(),
        }
    }
}

/// The vertex paired with `v` under the vertex split of quad type `k`.
pub fn partner(k: usize, v: usize) -> usize {
    let [a, b] = EDGE_VERTICES[k];
    let [c, d] = EDGE_VERTICES[opposite_edge(k)];
    match v {
        _ if v == a => b,
        _ if v == b => a,
        _ if v == c => d,
        _ => c,
    }
}

impl TetCoord {
    pub fn get(&self, d: DiscType) -> i64 {
        match d {
            DiscType::Triangle(v) => self.tri[v],
            DiscType::Quad(k) => self.quad[k],
            DiscType::Octagon(k) => self.oct[k],
        }
    }

    pub fn get_mut(&mut self, d: DiscType) -> &mut i64 {
        match d {
            DiscType::Triangle(v) => &mut self.tri[v],
            DiscType::Quad(k) => &mut self.quad[k],
            DiscType::Octagon(k) => &mut self.oct[k],
        }
    }

    /// Normal arcs at corner `w` of facet `f`.
    pub fn arcs_at(&self, f: usize, w: usize) -> i64 {
        DiscType::ALL.iter().map(|&d| if d.arcs(f).contains(&w) { self.get(d) } else { 0 }).sum()
    }

    pub fn edge_weight(&self, e: usize) -> i64 {
        DiscType::ALL.iter().map(|&d| d.edge_hits(e) * self.get(d)).sum()
    }

    pub fn disc_count(&self) -> i64 {
        DiscType::ALL.iter().map(|&d| self.get(d)).sum()
    }

    fn add_scaled(&mut self, other: &TetCoord, s: i64) {
        for d in DiscType::ALL {
            *self.get_mut(d) += s * other.get(d);
        }
    }
}

impl NormalCoordinate {
    pub fn zero(tets: usize) -> NormalCoordinate {
        NormalCoordinate { tets: vec![TetCoord::default(); tets], formal: false }
    }

    /// One triangle at every tetrahedron corner.
    pub fn vertex_link(tets: usize) -> NormalCoordinate {
        NormalCoordinate { tets: vec![TetCoord { tri: [1; 4], ..Default::default() }; tets], formal: false }
    }

    pub fn scaled(&self, s: i64) -> NormalCoordinate {
        let mut out = NormalCoordinate::zero(self.tets.len());
        out.formal = self.formal;
        for (o, t) in out.tets.iter_mut().zip(&self.tets) {
            o.add_scaled(t, s);
        }
        out
    }

    pub fn add(&self, other: &NormalCoordinate) -> NormalCoordinate {
        self.add_scaled(other, 1)
    }

    pub fn add_scaled(&self, other: &NormalCoordinate, s: i64) -> NormalCoordinate {
        let mut out = self.clone();
        out.formal |= other.formal;
        for (o, t) in out.tets.iter_mut().zip(&other.tets) {
            o.add_scaled(t, s);
        }
        out
    }

    pub fn octagon_count(&self) -> i64 {
        self.tets.iter().map(|t| t.oct.iter().sum::<i64>()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.iter().all(|t| *t == TetCoord::default())
    }

    /// Weight on each edge class, read from its first slot.
    pub fn edge_weights(&self, sk: &Skeleton) -> Vec<i64> {
        sk.edges.iter().map(|c| self.tets[c.slots[0].tet].edge_weight(c.slots[0].edge)).collect()
    }

    /// First face class whose two sides disagree on some corner.
    pub fn matching_violation(&self, tri: &Triangulation, sk: &Skeleton) -> Option<usize> {
        for t in 0..tri.tet_count() {
            for f in 0..4 {
                let Some(g) = tri.gluing(t, f) else { continue };
                let f2 = g.perm.apply(f);
                for w in facet_vertices(f) {
                    if self.tets[t].arcs_at(f, w) != self.tets[g.tet].arcs_at(f2, g.perm.apply(w)) {
                        return Some(sk.face_of[t][f]);
                    }
                }
            }
        }
        None
    }

    /// First tetrahedron with negative entries or two distinct quad/octagon
    /// types.
    pub fn embeddability_violation(&self) -> Option<usize> {
        self.tets.iter().position(|t| {
            let negative = DiscType::ALL.iter().any(|&d| t.get(d) < 0);
            let kinds = t.quad.iter().chain(&t.oct).filter(|&&x| x != 0).count();
            negative || kinds > 1
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NormalCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tets.iter().enumerate() {
            let j = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            writeln!(f, "{i}: {} | {} | {}", j(&t.tri), j(&t.quad), j(&t.oct))?;
        }
        Ok(())
    }
}

fn check_surface(tri: &Triangulation, sk: &Skeleton, coord: &NormalCoordinate) -> Result<()> {
    if coord.tets.len() != tri.tet_count() {
        return Err(Error::InvalidParameter("coordinate length differs from tetrahedron count".into()));
    }
    if coord.formal {
        return Err(Error::InvalidParameter("formal coordinate is not a surface".into()));
    }
    if let Some(t) = coord.embeddability_violation() {
        return Err(Error::NotEmbeddable(t));
    }
    if let Some(face) = coord.matching_violation(tri, sk) {
        return Err(Error::Matching(face));
    }
    Ok(())
}

/// Euler characteristic by counting the cells of the surface: points on
/// edges, arcs in faces, and discs.
pub fn euler_char(tri: &Triangulation, coord: &NormalCoordinate) -> Result<i64> {
    let sk = compute_skeleton(tri);
    euler_char_with_skeleton(tri, &sk, coord)
}

pub fn euler_char_with_skeleton(tri: &Triangulation, sk: &Skeleton, coord: &NormalCoordinate) -> Result<i64> {
    check_surface(tri, sk, coord)?;
    let v: i64 = coord.edge_weights(sk).iter().sum();
    let e: i64 = sk
        .faces
        .iter()
        .map(|fc| {
            let (t, f) = fc.members[0];
            facet_vertices(f).iter().map(|&w| coord.tets[t].arcs_at(f, w)).sum::<i64>()
        })
        .sum();
    let d: i64 = coord.tets.iter().map(TetCoord::disc_count).sum();
    Ok(v - e + d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub chi: i64,
    pub orientable: bool,
    pub connected: bool,
    pub components: usize,
}

struct ParityUf {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl ParityUf {
    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (r, f) = self.find(p);
        self.parent[x] = r;
        self.flip[x] ^= f;
        (r, self.flip[x])
    }

    fn union(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == odd;
        }
        self.parent[rb] = ra;
        self.flip[rb] = fa ^ fb ^ odd;
        true
    }
}

/// One normal disc: tetrahedron, type, and copy index.
type Disc = (usize, DiscType, usize);

/// Discs owning the arcs at corner `w` of facet `f`, listed outward from `w`.
fn arcs_outward(t: usize, c: &TetCoord, f: usize, w: usize, index: &dyn Fn(Disc) -> usize) -> Vec<(usize, DiscType)> {
    let mut out = Vec::new();
    for i in 0..c.tri[w].max(0) as usize {
        out.push((index((t, DiscType::Triangle(w), i)), DiscType::Triangle(w)));
    }
    for d in DiscType::ALL.into_iter().filter(|d| !matches!(d, DiscType::Triangle(_))) {
        if !d.arcs(f).contains(&w) {
            continue;
        }
        let n = c.get(d).max(0) as usize;
        // copies are numbered from the marked side outwards
        let from_marked = d.marked_side().contains(&w);
        for i in 0..n {
            let copy = if from_marked { i } else { n - 1 - i };
            out.push((index((t, d, copy)), d));
        }
    }
    out
}

/// Euler characteristic, orientability and connectivity of an embedded
/// coordinate. Orientability is two-sidedness of the disc complex, which
/// agrees with orientability inside an orientable ambient manifold.
pub fn surface_classify(tri: &Triangulation, coord: &NormalCoordinate) -> Result<SurfaceClass> {
    let sk = compute_skeleton(tri);
    let chi = euler_char_with_skeleton(tri, &sk, coord)?;
    let mut base = Vec::with_capacity(coord.tets.len());
    let mut total = 0usize;
    for c in &coord.tets {
        base.push(total);
        total += c.disc_count() as usize;
    }
    let offsets: Vec<[usize; 10]> = coord
        .tets
        .iter()
        .zip(&base)
        .map(|(c, &b)| {
            let mut o = [0usize; 10];
            let mut acc = b;
            for (i, &d) in DiscType::ALL.iter().enumerate() {
                o[i] = acc;
                acc += c.get(d) as usize;
            }
            o
        })
        .collect();
    let index = |(t, d, i): Disc| offsets[t][DiscType::ALL.iter().position(|&x| x == d).expect("type")] + i;

    let mut uf = ParityUf { parent: (0..total).collect(), flip: vec![false; total] };
    let mut two_sided = true;
    for t in 0..tri.tet_count() {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            let f2 = g.perm.apply(f);
            if (g.tet, f2) < (t, f) {
                continue;
            }
            for w in facet_vertices(f) {
                let w2 = g.perm.apply(w);
                let here = arcs_outward(t, &coord.tets[t], f, w, &index);
                let there = arcs_outward(g.tet, &coord.tets[g.tet], f2, w2, &index);
                for ((a, da), (b, db)) in here.into_iter().zip(there) {
                    // marked normals both point towards the corner, or both away
                    let ta = da.marked_side().contains(&w);
                    let tb = db.marked_side().contains(&w2);
                    two_sided &= uf.union(a, b, ta != tb);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..total).map(|x| uf.find(x).0).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(SurfaceClass { chi, orientable: two_sided, connected: roots.len() == 1, components: roots.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{fold_lst, layered_loop, lst};

    #[test]
    fn incidence_table_is_consistent() {
        // arcs in a facet cross the edges the disc meets
        for d in DiscType::ALL {
            for e in 0..6 {
                let [a, b] = EDGE_VERTICES[e];
                let crossings: i64 = (0..4)
                    .filter(|&f| f != a && f != b)
                    .map(|f| d.arcs(f).iter().filter(|&&w| w == a || w == b).count() as i64)
                    .sum();
                assert_eq!(crossings, 2 * d.edge_hits(e), "{d:?} edge {e}");
            }
        }
    }

    #[test]
    fn vertex_link_is_sphere() {
        for t in [layered_loop(5, true).unwrap(), fold_lst(&lst(2, 5).unwrap().0, &lst(2, 5).unwrap().1, 2).unwrap().0] {
            let c = NormalCoordinate::vertex_link(t.tet_count());
            let s = surface_classify(&t, &c).unwrap();
            assert_eq!(s, SurfaceClass { chi: 2, orientable: true, connected: true, components: 1 });
            let two = surface_classify(&t, &c.scaled(2)).unwrap();
            assert_eq!((two.chi, two.components), (4, 2));
        }
    }

    #[test]
    fn rejects_broken_coordinates() {
        let t = layered_loop(4, true).unwrap();
        let mut c = NormalCoordinate::vertex_link(4);
        c.tets[2].tri[1] = 0;
        assert!(matches!(euler_char(&t, &c), Err(Error::Matching(_))));
        let mut c = NormalCoordinate::zero(4);
        c.tets[1].quad = [1, 1, 0];
        assert_eq!(euler_char(&t, &c), Err(Error::NotEmbeddable(1)));
    }
}
