use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution<F> {
    Empty,
    Affine { point: Vec<F>, kernel: Vec<Vec<F>> },
}

impl<F: Field> AffineSolution<F> {
    pub fn dim(&self) -> Option<usize> {
        match self {
            AffineSolution::Empty => None,
            AffineSolution::Affine { kernel, .. } => Some(kernel.len()),
        }
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            entries.extend(r);
        }
        Matrix { rows: n, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols, "column mismatch in stack");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form. Pivots are taken column by column, using the
    /// first row (from the current position down) with a nonzero entry.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * pv.clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pv = m.get(c, c).clone();
            for i in c + 1..m.rows {
                let f = m.get(i, c).clone() / pv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
            det = det * pv;
        }
        det
    }

    /// Basis of the null space, one vector per free column with that
    /// coordinate set to one.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b`.
    pub fn solve_affine(&self, b: &[F]) -> AffineSolution<F> {
        assert_eq!(self.rows, b.len(), "right-hand side length must equal row count");
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, rhs.clone());
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&n) {
            return AffineSolution::Empty;
        }
        let mut point = vec![F::zero(); n];
        for (i, &p) in red.pivots.iter().enumerate() {
            point[p] = red.matrix.get(i, n).clone();
        }
        AffineSolution::Affine { point, kernel: self.kernel_basis() }
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.entries[r * self.cols..(r + 1) * self.cols].iter().map(|v| format!("{v:?}")).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{Gaussian, Rational};

    type Q = Rational;

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::<Q>::identity(2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!((r.rank, r.pivots), (2, vec![0, 1]));

        let z = Matrix::<Q>::zeros(3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!((r.rank, r.pivots.len()), (0, 0));
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::<Q>::from_i64(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
        // row operation record: R = E·M with E = [[1,0],[-2,1]]
        let e = Matrix::<Q>::from_i64(&[&[1, 0], &[-2, 1]]);
        assert_eq!(e.mul(&m), r.matrix);
    }

    #[test]
    fn kernels() {
        assert!(Matrix::<Q>::identity(2).kernel_basis().is_empty());
        assert_eq!(Matrix::<Q>::zeros(1, 3).kernel_basis().len(), 3);
        let k = Matrix::<Q>::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![Q::from_i64(-1), Q::from_i64(1)]]);
    }

    #[test]
    fn affine_solutions() {
        let id = Matrix::<Q>::identity(2);
        match id.solve_affine(&[Q::from_i64(1), Q::from_i64(2)]) {
            AffineSolution::Affine { point, kernel } => {
                assert_eq!(point, vec![Q::from_i64(1), Q::from_i64(2)]);
                assert!(kernel.is_empty());
            }
            AffineSolution::Empty => panic!("unique solution expected"),
        }
        let diag = Matrix::<Q>::from_i64(&[&[1, -1]]);
        assert_eq!(diag.solve_affine(&[Q::from_i64(0)]).dim(), Some(1));
        let contra = Matrix::<Q>::from_i64(&[&[1], &[1]]);
        assert_eq!(contra.solve_affine(&[Q::from_i64(0), Q::from_i64(1)]), AffineSolution::Empty);
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::<Q>::from_i64(&[&[0, 1], &[1, 0]]).determinant(), Q::from_i64(-1));
        assert_eq!(Matrix::<Q>::from_i64(&[&[2, 1], &[4, 2]]).determinant(), Q::from_i64(0));
        assert_eq!(Matrix::<Q>::from_i64(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 1]]).determinant(), Q::from_i64(7));
    }

    #[test]
    fn gaussian_rref_commutes_with_conjugation() {
        let g = |a, b| Gaussian::from_ints(a, b);
        let m = Matrix::from_rows(3, vec![vec![g(1, 1), g(0, 2), g(3, 0)], vec![g(2, 0), g(1, -1), g(0, 1)]]);
        let lhs = m.map(|v| v.conj()).rref().matrix;
        let rhs = m.rref().matrix.map(|v| v.conj());
        assert_eq!(lhs, rhs);
    }
}
