//! Dense matrices over a Euclidean domain and the Smith normal form.

use std::fmt;

use super::euclid::EuclideanRing;

/// Row-major dense matrix. `cols` is stored so that empty matrices keep
/// their shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(cols: usize, data: Vec<Vec<E>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![value; cols]; rows],
        }
    }

    pub fn identity<R: EuclideanRing<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Matrix::filled(n, n, ring.zero());
        for i in 0..n {
            m.data[i][i] = ring.one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| self.column(j)).collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::filled(self.rows, other.cols, ring.zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                if ring.is_zero(&self.data[i][k]) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = ring.mul(&self.data[i][k], &other.data[k][j]);
                    out.data[i][j] = ring.add(&out.data[i][j], &t);
                }
            }
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: perm.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| perm.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        }
    }
}

impl<E: fmt::Display> fmt::Display for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, e) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `left * A * right = diag(diagonal)` with `d_1 | d_2 | ...`, every `d_i`
/// normalized, and `right_inverse * right = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult<E> {
    pub diagonal: Vec<E>,
    pub left: Matrix<E>,
    pub right: Matrix<E>,
    pub right_inverse: Matrix<E>,
}

impl<E: Clone> NormalFormResult<E> {
    /// The full `m x n` diagonal matrix.
    pub fn diagonal_matrix<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        let mut d = Matrix::filled(self.left.nrows(), self.right.nrows(), ring.zero());
        for (i, e) in self.diagonal.iter().enumerate() {
            d.set(i, i, e.clone());
        }
        d
    }
}

struct SnfState<'r, R: EuclideanRing> {
    ring: &'r R,
    a: Vec<Vec<R::Elem>>,
    left: Vec<Vec<R::Elem>>,
    right: Vec<Vec<R::Elem>>,
    right_inv: Vec<Vec<R::Elem>>,
}

impl<R: EuclideanRing> SnfState<'_, R> {
    /// row_i += c * row_j on A and U
    fn add_row(&mut self, i: usize, j: usize, c: &R::Elem) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.left] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src.iter()) {
                *x = ring.add(x, &ring.mul(c, y));
            }
        }
    }

    /// col_i += c * col_j on A and V; V^-1 gets row_j -= c * row_i
    fn add_col(&mut self, i: usize, j: usize, c: &R::Elem) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.right] {
            for r in m.iter_mut() {
                let t = ring.mul(c, &r[j]);
                r[i] = ring.add(&r[i], &t);
            }
        }
        let src = self.right_inv[i].clone();
        for (x, y) in self.right_inv[j].iter_mut().zip(src.iter()) {
            *x = ring.sub(x, &ring.mul(c, y));
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.right.iter_mut()) {
            r.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }

    fn scale_row(&mut self, i: usize, u: &R::Elem) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.left] {
            for x in m[i].iter_mut() {
                *x = ring.mul(x, u);
            }
        }
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form<R: EuclideanRing>(ring: &R, matrix: &Matrix<R::Elem>) -> NormalFormResult<R::Elem> {
    let (m, n) = (matrix.nrows(), matrix.ncols());
    let mut st = SnfState {
        ring,
        a: matrix.rows().to_vec(),
        left: Matrix::identity(ring, m).into_rows(),
        right: Matrix::identity(ring, n).into_rows(),
        right_inv: Matrix::identity(ring, n).into_rows(),
    };
    let mut rank = 0;
    'outer: for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if ring.is_zero(&st.a[i][j]) {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => ring.size_cmp(&st.a[i][j], &st.a[bi][bj]).is_lt(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            if pi != t {
                st.swap_rows(pi, t);
            }
            if pj != t {
                st.swap_cols(pj, t);
            }
            let pivot = st.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if ring.is_zero(&st.a[i][t]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&st.a[i][t], &pivot);
                st.add_row(i, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            for j in t + 1..n {
                if ring.is_zero(&st.a[t][j]) {
                    continue;
                }
                let (q, r) = ring.div_rem(&st.a[t][j], &pivot);
                st.add_col(j, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !ring.divides(&pivot, &st.a[i][j])));
            match offender {
                Some(i) => st.add_row(t, i, &ring.one()),
                None => break,
            }
        }
        let (_, u) = ring.normalize(&st.a[t][t]);
        let ui = ring.unit_inverse(&u);
        st.scale_row(t, &ui);
        rank = t + 1;
    }
    let diagonal = (0..m.min(n))
        .map(|i| if i < rank { st.a[i][i].clone() } else { ring.zero() })
        .collect();
    NormalFormResult {
        diagonal,
        left: Matrix::from_rows(m, st.left),
        right: Matrix::from_rows(n, st.right),
        right_inverse: Matrix::from_rows(n, st.right_inv),
    }
}
