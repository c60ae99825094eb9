//! Canonical labelling and combinatorial isomorphism.
//!
//! For each connected component, every choice of starting tetrahedron and
//! vertex relabelling seeds a breadth-first renumbering; the lexicographically
//! least gluing code wins. Components are then ordered by their codes.

use crate::perm::Perm4;
use crate::triangulation::Triangulation;

type Code = Vec<Option<(usize, Perm4)>>;

fn components(tri: &Triangulation) -> Vec<Vec<usize>> {
    let n = tri.tet_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let t = comp[i];
            i += 1;
            for f in 0..4 {
                if let Some(g) = tri.gluing(t, f) {
                    if !seen[g.tet] {
                        seen[g.tet] = true;
                        comp.push(g.tet);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Breadth-first relabelling from `start` with vertex map `rho`. Returns the
/// code and the (old tet -> new index, relabel) assignment in new order.
fn label_from(tri: &Triangulation, start: usize, rho: Perm4, size: usize, best: Option<&Code>) -> Option<(Code, Vec<(usize, Perm4)>)> {
    let mut index = std::collections::HashMap::with_capacity(size);
    let mut order: Vec<(usize, Perm4)> = vec![(start, rho)];
    index.insert(start, 0usize);
    let mut code: Code = Vec::with_capacity(4 * size);
    let mut less = false;
    let mut i = 0;
    while i < order.len() {
        let (t, r) = order[i];
        i += 1;
        for nf in 0..4 {
            let of = r.inverse().apply(nf);
            let entry = match tri.gluing(t, of) {
                None => None,
                Some(g) => {
                    let (ni, nr) = match index.get(&g.tet) {
                        Some(&k) => (k, order[k].1),
                        None => {
                            // choose the new labelling that makes this gluing the identity
                            let nr = r * g.perm.inverse();
                            let k = order.len();
                            index.insert(g.tet, k);
                            order.push((g.tet, nr));
                            (k, nr)
                        }
                    };
                    Some((ni, nr * g.perm * r.inverse()))
                }
            };
            if let (false, Some(b)) = (less, best) {
                let pos = code.len();
                match entry.cmp(&b[pos]) {
                    std::cmp::Ordering::Greater => return None,
                    std::cmp::Ordering::Less => less = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            code.push(entry);
        }
    }
    Some((code, order))
}

fn canonical_component(tri: &Triangulation, comp: &[usize]) -> (Code, Vec<(usize, Perm4)>) {
    let mut best: Option<(Code, Vec<(usize, Perm4)>)> = None;
    for &s in comp {
        for rho in Perm4::all() {
            if let Some(c) = label_from(tri, s, rho, comp.len(), best.as_ref().map(|b| &b.0)) {
                if best.as_ref().is_none_or(|b| c.0 < b.0) {
                    best = Some(c);
                }
            }
        }
    }
    best.expect("non-empty component")
}

/// The canonical representative of the isomorphism class of `tri`.
pub fn canonical(tri: &Triangulation) -> Triangulation {
    let mut comps: Vec<(Code, Vec<(usize, Perm4)>)> =
        components(tri).iter().map(|c| canonical_component(tri, c)).collect();
    comps.sort_by(|a, b| a.0.cmp(&b.0));
    let mut order = vec![0; tri.tet_count()];
    let mut relabel = vec![Perm4::IDENTITY; tri.tet_count()];
    let mut next = 0;
    for (_, assignment) in &comps {
        for &(t, r) in assignment {
            order[t] = next;
            relabel[t] = r;
            next += 1;
        }
    }
    tri.relabel(&order, &relabel)
}

pub fn isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    if a.tet_count() != b.tet_count() || a.boundary_facets().len() != b.boundary_facets().len() {
        return false;
    }
    canonical(a) == canonical(b)
}

/// Canonical gluing code as a compact string, usable as a hash key.
pub fn signature(tri: &Triangulation) -> String {
    canonical(tri).to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_tet() -> Triangulation {
        let mut t = Triangulation::with_tets(2);
        t.join(0, 0, 1, Perm4::from_images([1, 0, 2, 3]));
        t.join(0, 1, 1, Perm4::from_images([1, 0, 3, 2]));
        t
    }

    #[test]
    fn reversed_order_is_isomorphic() {
        let t = two_tet();
        let r = t.relabel(&[1, 0], &[Perm4::from_images([2, 0, 3, 1]), Perm4::from_images([3, 2, 1, 0])]);
        assert!(isomorphic(&t, &r));
        assert_eq!(canonical(&canonical(&t)), canonical(&t));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        assert!(!isomorphic(&two_tet(), &Triangulation::with_tets(1)));
    }
}
