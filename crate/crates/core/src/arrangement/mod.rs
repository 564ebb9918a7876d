//! Arrangements of affine planes, their intersection posets and the standard
//! classification predicates.

mod classify;
mod document;
mod poset;
mod subspace;

pub use classify::{
    cone, dimensional_data, is_central, is_ge2_arrangement, is_generic, is_hyperplane_arrangement,
    is_normal_crossings, transversal, DimensionSignature,
};
pub use document::{parse_arrangement, AnyArrangement, ArrangementDocument, PlaneDocument};
pub use poset::{build_intersection_poset, IntersectionPoset, PosetNode};
pub use subspace::CanonicalSubspace;

use serde::Serialize;

use crate::linalg::{Field, Gaussian, Rational};
use crate::{Error, Result};

/// Hard cap on the number of planes, so that generator sets fit a `u64`.
pub const MAX_PLANES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plane<F> {
    pub label: String,
    /// Equations as given, each `[a_1, ..., a_N, b]`.
    pub equations: Vec<Vec<F>>,
    pub subspace: CanonicalSubspace<F>,
}

/// A finite collection of proper affine subspaces `L_1, ..., L_m` of `F^N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrangement<F> {
    ambient_dim: usize,
    planes: Vec<Plane<F>>,
}

impl<F: Field> Arrangement<F> {
    /// Each plane is an optional label and its equations `[a_1, ..., a_N, b]`.
    pub fn new(ambient_dim: usize, planes: Vec<(Option<String>, Vec<Vec<F>>)>) -> Result<Self> {
        if planes.is_empty() {
            return Err(Error::InvalidArgument("an arrangement needs at least one plane".into()));
        }
        if planes.len() > MAX_PLANES {
            return Err(Error::SizeLimit { what: "number of planes", got: planes.len(), limit: MAX_PLANES });
        }
        let mut out = Vec::with_capacity(planes.len());
        for (i, (label, equations)) in planes.into_iter().enumerate() {
            let label = label.unwrap_or_else(|| format!("L{}", i + 1));
            if let Some(bad) = equations.iter().find(|r| r.len() != ambient_dim + 1) {
                return Err(Error::InvalidArgument(format!(
                    "plane {} ({label}): equation has {} entries, expected {}",
                    i + 1,
                    bad.len(),
                    ambient_dim + 1
                )));
            }
            let subspace = CanonicalSubspace::from_equations(ambient_dim, equations.clone());
            if subspace.is_empty() {
                return Err(Error::InconsistentPlane { index: i + 1, label });
            }
            if subspace.codim() == Some(0) {
                return Err(Error::InvalidArgument(format!("plane {} ({label}) is the whole space", i + 1)));
            }
            out.push(Plane { label, equations, subspace });
        }
        Ok(Arrangement { ambient_dim, planes: out })
    }

    /// Arrangement of hyperplanes `a_i · x = b_i`, one row per plane.
    pub fn hyperplanes(ambient_dim: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        Self::new(ambient_dim, rows.into_iter().map(|r| (None, vec![r])).collect())
    }

    pub fn from_i64_hyperplanes(ambient_dim: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::hyperplanes(ambient_dim, rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn planes(&self) -> &[Plane<F>] {
        &self.planes
    }

    pub fn plane(&self, i: usize) -> &Plane<F> {
        &self.planes[i]
    }

    pub fn labels(&self) -> Vec<String> {
        self.planes.iter().map(|p| p.label.clone()).collect()
    }

    /// `L_I` for the generator set given as a bitmask.
    pub fn intersection(&self, mask: u64) -> CanonicalSubspace<F> {
        self.planes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(CanonicalSubspace::ambient(self.ambient_dim), |acc, (_, p)| acc.intersect(&p.subspace))
    }

    /// For hyperplane arrangements: the single canonical row of each plane.
    pub fn hyperplane_rows(&self) -> Result<Vec<Vec<F>>> {
        self.planes
            .iter()
            .map(|p| match p.subspace.equations() {
                [row] => Ok(row.clone()),
                _ => Err(Error::NotHyperplanes),
            })
            .collect()
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        for (p, l) in self.planes.iter_mut().zip(labels) {
            p.label = (*l).to_string();
        }
        self
    }
}

impl Arrangement<Rational> {
    /// The complex arrangement cut out by the same real equations.
    pub fn complexify(&self) -> Arrangement<Gaussian> {
        let planes = self
            .planes
            .iter()
            .map(|p| {
                let eq = p.equations.iter().map(|r| r.iter().map(|v| Gaussian::from_rational(v.clone())).collect()).collect();
                (Some(p.label.clone()), eq)
            })
            .collect();
        Arrangement::new(self.ambient_dim, planes).expect("complexification preserves validity")
    }
}

impl Arrangement<Gaussian> {
    /// The same planes viewed in `R^{2N}` with coordinates
    /// `(Re z_1, ..., Re z_N, Im z_1, ..., Im z_N)`.
    pub fn realify(&self) -> Arrangement<Rational> {
        let n = self.ambient_dim;
        let planes = self
            .planes
            .iter()
            .map(|p| {
                let mut eqs = Vec::with_capacity(2 * p.equations.len());
                for row in &p.equations {
                    let mut re = vec![Rational::from_i64(0); 2 * n + 1];
                    let mut im = re.clone();
                    for k in 0..n {
                        let (a, b) = (&row[k].re, &row[k].im);
                        re[k] = a.clone();
                        re[n + k] = -b.clone();
                        im[k] = b.clone();
                        im[n + k] = a.clone();
                    }
                    re[2 * n] = row[n].re.clone();
                    im[2 * n] = row[n].im.clone();
                    eqs.push(re);
                    eqs.push(im);
                }
                (Some(p.label.clone()), eqs)
            })
            .collect();
        Arrangement::new(2 * n, planes).expect("realification preserves validity")
    }
}

/// The diagonal arrangement `A(N, k)`: for every `k`-subset `S` of
/// coordinates, the plane where all `x_i`, `i ∈ S`, coincide.
pub fn diagonal_arrangement<F: Field>(n: usize, k: usize) -> Result<Arrangement<F>> {
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!("A(N,k) needs 2 <= k <= N, got N={n}, k={k}")));
    }
    let mut planes = Vec::new();
    for subset in k_subsets(n, k) {
        let label = format!("V{}", subset.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(if n > 9 { "," } else { "" }));
        let eqs = subset
            .windows(2)
            .map(|w| {
                let mut row = vec![F::zero(); n + 1];
                row[w[0]] = F::one();
                row[w[1]] = -F::one();
                row
            })
            .collect();
        planes.push((Some(label), eqs));
    }
    Arrangement::new(n, planes)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_planes() {
        let q = Rational::from_i64;
        let err = Arrangement::new(1, vec![(None, vec![vec![q(1), q(0)], vec![q(1), q(1)]])]).unwrap_err();
        assert_eq!(err, Error::InconsistentPlane { index: 1, label: "L1".into() });
        assert!(Arrangement::<Rational>::new(2, vec![]).is_err());
        assert!(Arrangement::new(1, vec![(None, vec![vec![q(0), q(0)]])]).is_err());
    }

    #[test]
    fn diagonal_labels_and_counts() {
        let a = diagonal_arrangement::<Rational>(4, 2).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(a.plane(0).label, "V12");
        assert_eq!(diagonal_arrangement::<Rational>(4, 3).unwrap().plane(0).subspace.codim(), Some(2));
    }

    #[test]
    fn realify_doubles_dimensions() {
        let one = Arrangement::<Gaussian>::from_i64_hyperplanes(1, &[&[1, 0]]).unwrap().realify();
        assert_eq!(one.ambient_dim(), 2);
        assert_eq!(one.plane(0).subspace.dim(), Some(0));

        let a22 = diagonal_arrangement::<Gaussian>(2, 2).unwrap().realify();
        assert_eq!((a22.ambient_dim(), a22.plane(0).subspace.dim()), (4, Some(2)));

        let two = Arrangement::<Gaussian>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap().realify();
        assert_eq!(two.intersection(0b11).dim(), Some(0));
    }

    #[test]
    fn realify_handles_imaginary_coefficients() {
        // i·z = 1 means z = -i
        let arr = Arrangement::new(1, vec![(None, vec![vec![Gaussian::i(), Gaussian::from_ints(1, 0)]])]).unwrap();
        let real = arr.realify();
        let p = real.plane(0).subspace.point().unwrap();
        assert_eq!(p, vec![Rational::from_i64(0), Rational::from_i64(-1)]);
    }
}
