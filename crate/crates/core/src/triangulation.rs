//! Face-gluing representation of pseudo-simplicial triangulations and the
//! `.tri` text format.
//!
//! Facet `i` of a tetrahedron is the face opposite vertex `i`. A gluing of
//! facet `f` of tetrahedron `t` stores the target tetrahedron and the vertex
//! map `p`; the facet lands on facet `p(f)` of the target.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::{facet_vertices, Perm4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    /// `n` tetrahedra with every facet unglued.
    pub fn with_tets(n: usize) -> Triangulation {
        Triangulation { gluings: vec![[None; 4]; n] }
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn add_tet(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    pub fn gluing(&self, tet: usize, facet: usize) -> Option<Gluing> {
        self.gluings[tet][facet]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    /// Glue facet `facet` of `tet` to `other` via `perm`, and the reverse.
    /// Panics if either side is already glued.
    pub fn join(&mut self, tet: usize, facet: usize, other: usize, perm: Perm4) {
        let back = perm.apply(facet);
        assert!(self.gluings[tet][facet].is_none(), "facet {tet}:{facet} already glued");
        assert!(
            self.gluings[other][back].is_none() || (other == tet && back == facet),
            "facet {other}:{back} already glued"
        );
        self.gluings[tet][facet] = Some(Gluing { tet: other, perm });
        self.gluings[other][back] = Some(Gluing { tet, perm: perm.inverse() });
    }

    /// Remove the gluing on `(tet, facet)` and its partner.
    pub fn unjoin(&mut self, tet: usize, facet: usize) {
        if let Some(g) = self.gluings[tet][facet].take() {
            self.gluings[g.tet][g.perm.apply(facet)] = None;
        }
    }

    pub(crate) fn set_raw(&mut self, tet: usize, facet: usize, g: Option<Gluing>) {
        self.gluings[tet][facet] = g;
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|g| g.iter().all(Option::is_some))
    }

    /// Unglued facets as `(tet, facet)`.
    pub fn boundary_facets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, g) in self.gluings.iter().enumerate() {
            for (f, x) in g.iter().enumerate() {
                if x.is_none() {
                    out.push((t, f));
                }
            }
        }
        out
    }

    /// Check involutivity, index ranges and pointwise self-gluings.
    pub fn validate(&self) -> Result<()> {
        let n = self.tet_count();
        for (t, gs) in self.gluings.iter().enumerate() {
            for (f, g) in gs.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(Error::Invalid(format!("tet {t} facet {f} glued to missing tet {}", g.tet)));
                }
                let back = g.perm.apply(f);
                if g.tet == t && back == f && facet_vertices(f).iter().all(|&v| g.perm.apply(v) == v) {
                    return Err(Error::Invalid(format!("tet {t} facet {f} glued to itself pointwise")));
                }
                match self.gluings[g.tet][back] {
                    Some(r) if r.tet == t && r.perm == g.perm.inverse() => {}
                    _ => return Err(Error::Invalid(format!("non-involutive gluing at tet {t} facet {f}"))),
                }
            }
        }
        Ok(())
    }

    /// Canonical `.tri` text: tetrahedra ascending, facets in order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "tri {}", self.tet_count()).unwrap();
        for (t, gs) in self.gluings.iter().enumerate() {
            write!(s, "tet {t}:").unwrap();
            for g in gs {
                match g {
                    None => s.push_str(" -"),
                    Some(g) => write!(s, " {}:{}", g.tet, g.perm).unwrap(),
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut count: Option<(usize, usize)> = None;
        let mut rows: Vec<Option<([Option<Gluing>; 4], usize)>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('%').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            if let Some(rest) = content.strip_prefix("tri ") {
                if count.is_some() {
                    return Err(perr("duplicate `tri` header"));
                }
                let n: usize = rest.trim().parse().map_err(|_| perr("bad tetrahedron count"))?;
                count = Some((n, line));
                rows = vec![None; n];
                continue;
            }
            let Some((n, _)) = count else {
                return Err(perr("missing `tri <count>` header"));
            };
            let rest = content.strip_prefix("tet ").ok_or_else(|| perr("expected `tet <i>: ...`"))?;
            let (idx_s, body) = rest.split_once(':').ok_or_else(|| perr("missing `:` after tetrahedron index"))?;
            let t: usize = idx_s.trim().parse().map_err(|_| perr("bad tetrahedron index"))?;
            if t >= n {
                return Err(Error::DanglingTetrahedron { line, index: t, count: n });
            }
            if rows[t].is_some() {
                return Err(perr("tetrahedron listed twice"));
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(perr("expected four facet entries"));
            }
            let mut gs = [None; 4];
            for (f, tok) in toks.iter().enumerate() {
                if *tok == "-" {
                    continue;
                }
                let (ts, ps) = tok.split_once(':').ok_or_else(|| perr("facet entry must be `-` or `<t>:<abcd>`"))?;
                let target: usize = ts.parse().map_err(|_| perr("bad target index"))?;
                if target >= n {
                    return Err(Error::DanglingTetrahedron { line, index: target, count: n });
                }
                let perm: Perm4 = ps.parse().map_err(|_| Error::BadPermutation { line, text: ps.to_string() })?;
                gs[f] = Some(Gluing { tet: target, perm });
            }
            rows[t] = Some((gs, line));
        }
        let Some((n, header_line)) = count else {
            return Err(Error::Parse { line: 0, msg: "empty input".into() });
        };
        let mut tri = Triangulation::with_tets(n);
        let mut lines = vec![header_line; n];
        for (t, row) in rows.into_iter().enumerate() {
            match row {
                Some((gs, line)) => {
                    tri.gluings[t] = gs;
                    lines[t] = line;
                }
                None => {
                    return Err(Error::Parse { line: header_line, msg: format!("tetrahedron {t} not listed") })
                }
            }
        }
        for t in 0..n {
            for f in 0..4 {
                let Some(g) = tri.gluings[t][f] else { continue };
                let back = g.perm.apply(f);
                let ok = matches!(tri.gluings[g.tet][back], Some(r) if r.tet == t && r.perm == g.perm.inverse());
                if !ok {
                    return Err(Error::NonInvolutive { line: lines[t], tet: t, facet: f });
                }
                if g.tet == t && back == f {
                    return Err(Error::Parse { line: lines[t], msg: format!("facet {f} glued to itself") });
                }
            }
        }
        Ok(tri)
    }

    /// Relabel: tetrahedron `t` becomes `order[t]`, with vertex relabelling
    /// `relabel[t]` (old vertex `v` becomes `relabel[t](v)`).
    pub fn relabel(&self, order: &[usize], relabel: &[Perm4]) -> Triangulation {
        let mut out = Triangulation::with_tets(self.tet_count());
        for t in 0..self.tet_count() {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    let nf = relabel[t].apply(f);
                    let perm = relabel[g.tet] * g.perm * relabel[t].inverse();
                    out.gluings[order[t]][nf] = Some(Gluing { tet: order[g.tet], perm });
                }
            }
        }
        out
    }

    /// Return the triangulation obtained by keeping only the tetrahedra in
    /// `keep` (in that order) and only the gluings accepted by `keep_gluing`.
    pub fn sub_complex(&self, keep: &[usize], keep_gluing: impl Fn(usize, usize) -> bool) -> Triangulation {
        let mut index = vec![usize::MAX; self.tet_count()];
        for (i, &t) in keep.iter().enumerate() {
            index[t] = i;
        }
        let mut out = Triangulation::with_tets(keep.len());
        for (i, &t) in keep.iter().enumerate() {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    let j = index[g.tet];
                    if j != usize::MAX && keep_gluing(t, f) && keep_gluing(g.tet, g.perm.apply(f)) {
                        out.gluings[i][f] = Some(Gluing { tet: j, perm: g.perm });
                    }
                }
            }
        }
        out
    }

    /// Disjoint union, `other` appended after `self`.
    pub fn append(&mut self, other: &Triangulation) -> usize {
        let off = self.tet_count();
        for gs in &other.gluings {
            let mut row = [None; 4];
            for (f, g) in gs.iter().enumerate() {
                row[f] = g.map(|g| Gluing { tet: g.tet + off, perm: g.perm });
            }
            self.gluings.push(row);
        }
        off
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_unglued_tet() {
        let t = Triangulation::parse("tri 1\ntet 0: - - - -\n").unwrap();
        assert_eq!(t.tet_count(), 1);
        assert!(!t.is_closed());
        t.validate().unwrap();
    }

    #[test]
    fn self_glued_tet_parses() {
        // facet 0 -> facet 1 under 1230, facet 1 -> facet 0 under its inverse 3012
        let text = "% one-tetrahedron solid torus\ntri 1\ntet 0: 0:1230 0:3012 - -\n";
        let t = Triangulation::parse(text).unwrap();
        t.validate().unwrap();
        assert_eq!(t.to_text(), "tri 1\ntet 0: 0:1230 0:3012 - -\n");
    }

    #[test]
    fn one_sided_gluing_is_rejected() {
        let err = Triangulation::parse("tri 2\ntet 0: 1:0123 - - -\ntet 1: - - - -\n").unwrap_err();
        assert!(matches!(err, Error::NonInvolutive { line: 2, tet: 0, facet: 0 }));
        assert!(err.to_string().contains("non-involutive gluing"));
    }

    #[test]
    fn bad_permutation_and_dangling_index() {
        let err = Triangulation::parse("tri 1\ntet 0: 0:0023 - - -\n").unwrap_err();
        assert!(matches!(err, Error::BadPermutation { line: 2, .. }));
        let err = Triangulation::parse("tri 1\n\ntet 0: 3:0123 - - -\n").unwrap_err();
        assert!(matches!(err, Error::DanglingTetrahedron { line: 3, index: 3, .. }));
    }
}
