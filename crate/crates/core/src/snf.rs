//! Smith normal form over the integers for the small boundary matrices that
//! show up in homology computations.

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x as i128;
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        if k != 0 {
            for j in 0..self.cols {
                let v = self[(src, j)];
                self[(dst, j)] += k * v;
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        if k != 0 {
            for i in 0..self.rows {
                let v = self[(i, src)];
                self[(i, dst)] += k * v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of diagonalising `A` as `U A V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub diagonal: Vec<i128>,
    /// Left transform (only when requested).
    pub left: Option<IntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smith normal form. If `track_left`, the returned `left` is unimodular `U`
/// with `U A V = D`; rows of `U` past the rank span the integer left kernel.
pub fn smith_normal_form(a: &IntMatrix, track_left: bool) -> SmithForm {
    let mut m = a.clone();
    let mut u = if track_left {
        let mut id = IntMatrix::zeros(a.rows, a.rows);
        for i in 0..a.rows {
            id[(i, i)] = 1;
        }
        Some(id)
    } else {
        None
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.rows && t < m.cols {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let v = m[(i, j)].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < m[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        loop {
            let p = m[(t, t)];
            let mut done = true;
            for i in t + 1..m.rows {
                let q = m[(i, t)] / p;
                if q != 0 {
                    m.add_row(i, t, -q);
                    if let Some(u) = u.as_mut() {
                        u.add_row(i, t, -q);
                    }
                }
                if m[(i, t)] != 0 {
                    done = false;
                }
            }
            for j in t + 1..m.cols {
                let q = m[(t, j)] / p;
                m.add_col(j, t, -q);
                if m[(t, j)] != 0 {
                    done = false;
                }
            }
            if !done {
                // move a smaller remainder into pivot position
                let mut best = (t, t);
                for i in t..m.rows {
                    let v = m[(i, t)].abs();
                    if v != 0 && v < m[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..m.cols {
                    let v = m[(t, j)].abs();
                    if v != 0 && v < m[best].abs() {
                        best = (t, j);
                    }
                }
                m.swap_rows(t, best.0);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(t, best.0);
                }
                m.swap_cols(t, best.1);
                continue;
            }
            // divisibility: pivot must divide every remaining entry
            let p = m[(t, t)];
            let mut bad = None;
            'scan: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if m[(i, j)] % p != 0 {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    m.add_row(t, i, 1);
                    if let Some(u) = u.as_mut() {
                        u.add_row(t, i, 1);
                    }
                }
                None => break,
            }
        }
        if m[(t, t)] < 0 {
            m.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        diag.push(m[(t, t)]);
        t += 1;
    }
    debug_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
    SmithForm { diagonal: diag, left: u }
}

/// Primitive integer vectors spanning `{ y : y^T A = 0 }`.
pub fn left_kernel(a: &IntMatrix) -> Vec<Vec<i128>> {
    let sf = smith_normal_form(a, true);
    let u = sf.left.as_ref().expect("tracked");
    (sf.rank()..a.rows)
        .map(|i| {
            let row: Vec<i128> = (0..a.rows).map(|j| u[(i, j)]).collect();
            let g = row.iter().fold(0, |g, &x| gcd(g, x));
            row.into_iter().map(|x| if g > 1 { x / g } else { x }).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_of_known_matrix() {
        // classic example: diag(2, 6, 12) up to unimodular change
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let sf = smith_normal_form(&a, false);
        assert_eq!(sf.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4], vec![3, 1]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 1);
        for j in 0..a.cols {
            let s: i128 = (0..a.rows).map(|i| k[0][i] * a[(i, j)]).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn zero_and_empty() {
        assert!(smith_normal_form(&IntMatrix::zeros(3, 2), false).diagonal.is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(0, 4), false).diagonal.is_empty());
    }
}
