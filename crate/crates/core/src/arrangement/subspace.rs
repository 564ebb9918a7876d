use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix};

/// An affine subspace `{x : A x = b}` stored as the nonzero rows of the
/// reduced row echelon form of `[A | b]`. Equal sets have identical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalSubspace<F> {
    ambient_dim: usize,
    rows: Vec<Vec<F>>,
    empty: bool,
}

impl<F: Field> CanonicalSubspace<F> {
    pub fn ambient(ambient_dim: usize) -> Self {
        CanonicalSubspace { ambient_dim, rows: Vec::new(), empty: false }
    }

    /// Each row is `[a_1, ..., a_N, b]` meaning `a · x = b`.
    pub fn from_equations(ambient_dim: usize, rows: Vec<Vec<F>>) -> Self {
        if rows.is_empty() {
            return Self::ambient(ambient_dim);
        }
        let red = Matrix::from_rows(ambient_dim + 1, rows).rref();
        if red.pivots.last() == Some(&ambient_dim) {
            let mut unit = vec![F::zero(); ambient_dim + 1];
            unit[ambient_dim] = F::one();
            return CanonicalSubspace { ambient_dim, rows: vec![unit], empty: true };
        }
        let rows = (0..red.rank).map(|r| red.matrix.row(r).to_vec()).collect();
        CanonicalSubspace { ambient_dim, rows, empty: false }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn dim(&self) -> Option<usize> {
        (!self.empty).then(|| self.ambient_dim - self.rows.len())
    }

    pub fn codim(&self) -> Option<usize> {
        (!self.empty).then_some(self.rows.len())
    }

    pub fn equations(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if self.empty {
            return self.clone();
        }
        if other.empty {
            return other.clone();
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::from_equations(self.ambient_dim, rows)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        if other.empty {
            return true;
        }
        if self.empty {
            return false;
        }
        self.intersect(other) == *other
    }

    /// Whether every constant term vanishes, i.e. the subspace passes
    /// through the origin.
    pub fn is_linear(&self) -> bool {
        !self.empty && self.rows.iter().all(|r| r[self.ambient_dim].is_zero())
    }

    /// Coefficient rows without the constants.
    pub fn linear_part(&self) -> Matrix<F> {
        let n = self.ambient_dim;
        Matrix::from_rows(n, self.rows.iter().map(|r| r[..n].to_vec()).collect())
    }

    /// A point of the subspace: free coordinates set to zero.
    pub fn point(&self) -> Option<Vec<F>> {
        if self.empty {
            return None;
        }
        let n = self.ambient_dim;
        let mut p = vec![F::zero(); n];
        for r in &self.rows {
            let pivot = r.iter().position(|v| !v.is_zero()).expect("canonical rows are nonzero");
            p[pivot] = r[n].clone();
        }
        Some(p)
    }

    /// A basis of the direction space.
    pub fn directions(&self) -> Vec<Vec<F>> {
        if self.rows.is_empty() {
            return Matrix::<F>::identity(self.ambient_dim).row_vecs();
        }
        self.linear_part().kernel_basis()
    }

    pub fn contains_point(&self, x: &[F]) -> bool {
        let n = self.ambient_dim;
        !self.empty && self.rows.iter().all(|r| crate::linalg::dot(&r[..n], x) == r[n])
    }

    pub(crate) fn cmp_canonical(&self, other: &Self) -> Ordering {
        let lex = |a: &[F], b: &[F]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.cmp_canonical(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        };
        self.rows
            .len()
            .cmp(&other.rows.len())
            .then_with(|| {
                self.rows
                    .iter()
                    .zip(&other.rows)
                    .map(|(a, b)| lex(a, b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn sub(n: usize, rows: &[&[i64]]) -> CanonicalSubspace<Rational> {
        CanonicalSubspace::from_equations(n, rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn same_set_same_form() {
        let a = sub(2, &[&[2, 0, 4]]);
        let b = sub(2, &[&[1, 0, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), Some(1));
        let c = sub(3, &[&[1, 1, 0, 1], &[0, 1, 1, 2]]);
        let d = sub(3, &[&[1, 2, 1, 3], &[1, 0, -1, -1]]);
        assert_eq!(c, d);
    }

    #[test]
    fn emptiness_and_containment() {
        let e = sub(1, &[&[1, 0], &[1, 1]]);
        assert!(e.is_empty());
        assert_eq!(e.dim(), None);
        let line = sub(2, &[&[1, -1, 0]]);
        let origin = sub(2, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(line.contains(&origin));
        assert!(!origin.contains(&line));
        assert_eq!(line.point().unwrap(), vec![q(0), q(0)]);
        assert_eq!(line.directions().len(), 1);
        assert!(line.is_linear());
    }
}
