use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

/// A permutation of the four vertices of a tetrahedron, stored as images.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    /// Panics on a non-bijective array; meant for literal tables.
    pub fn from_images(images: [u8; 4]) -> Perm4 {
        Perm4::new(images).expect("not a permutation of 0123")
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(self) -> i32 {
        let mut s = 1;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24).map(Perm4::from_index)
    }

    /// Lexicographic enumeration index in `0..24`.
    pub fn from_index(mut idx: usize) -> Perm4 {
        let mut pool = vec![0u8, 1, 2, 3];
        let mut out = [0u8; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let f = [6, 2, 1, 1][k];
            *slot = pool.remove(idx / f);
            idx %= f;
        }
        Perm4(out)
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut img = [0u8, 1, 2, 3];
        img.swap(a, b);
        Perm4(img)
    }
}

/// `(p * q)(v) = p(q(v))`.
impl Mul for Perm4 {
    type Output = Perm4;
    fn mul(self, rhs: Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[rhs.0[i] as usize];
        }
        Perm4(out)
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({})", self)
    }
}

impl FromStr for Perm4 {
    type Err = ();
    fn from_str(s: &str) -> Result<Perm4, ()> {
        let b = s.as_bytes();
        if b.len() != 4 {
            return Err(());
        }
        let mut img = [0u8; 4];
        for (i, c) in b.iter().enumerate() {
            if !(b'0'..=b'3').contains(c) {
                return Err(());
            }
            img[i] = c - b'0';
        }
        Perm4::new(img).ok_or(())
    }
}

/// Unordered vertex pairs of a tetrahedron, indexed 0..6.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Edge index of the pair `{a, b}`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// The edge opposite edge `e`.
pub fn opposite_edge(e: usize) -> usize {
    5 - e
}

/// Opposite edge pairs: pair k is `{k, 5-k}`.
pub const OPPOSITE_PAIRS: [[usize; 2]; 3] = [[0, 5], [1, 4], [2, 3]];

/// Vertices of facet `f` in increasing order.
pub fn facet_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumeration_is_complete_and_sorted() {
        let all: Vec<Perm4> = Perm4::all().collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Perm4::IDENTITY);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
    }

    #[test]
    fn parse_rejects_non_bijections() {
        assert!("0123".parse::<Perm4>().is_ok());
        assert!("0023".parse::<Perm4>().is_err());
        assert!("0124".parse::<Perm4>().is_err());
        assert!("012".parse::<Perm4>().is_err());
    }

    #[test]
    fn edge_tables_agree() {
        for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            assert_eq!(edge_index(*a, *b), e);
            let [c, d] = EDGE_VERTICES[opposite_edge(e)];
            assert!(c != *a && c != *b && d != *a && d != *b);
        }
    }

    proptest! {
        #[test]
        fn group_laws(a in 0usize..24, b in 0usize..24, c in 0usize..24) {
            let (p, q, r) = (Perm4::from_index(a), Perm4::from_index(b), Perm4::from_index(c));
            prop_assert_eq!((p * q) * r, p * (q * r));
            prop_assert_eq!(p * p.inverse(), Perm4::IDENTITY);
            prop_assert_eq!(p.inverse().inverse(), p);
            prop_assert_eq!((p * q).sign(), p.sign() * q.sign());
        }
    }
}
