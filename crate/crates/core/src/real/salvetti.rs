//! Cell censuses of the complexified complement `C^N ∖ L` of a real
//! arrangement.
//!
//! With `z = x + i y` and `f_j(z) = a_j·x − b_j + i a_j·y`, a sign sequence
//! over `{+, −, ↑, ↓}` prescribes `sign Re f_j` for `+`/`−` and
//! `Re f_j = 0`, `sign Im f_j` for `↑`/`↓`. For a fixed set `U` of
//! arrow positions the conditions split into an `x`-part (strict signs of
//! the other hyperplanes on `E_U = {a_j x = b_j, j ∈ U}`) and a `y`-part
//! (strict signs of the central forms `a_j·y`, `j ∈ U`), so the census
//! factors over `U`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fm::{is_feasible, Inequality};
use super::{rows_of, sign_cells, solve_rows};
use crate::arrangement::{build_intersection_poset, is_normal_crossings, Arrangement};
use crate::linalg::{dot, AffineSolution, Field, Matrix, Rational};
use crate::par::{self, Execution};
use crate::{Error, Result};

pub const MAX_SALVETTI_PLANES: usize = 12;
pub const MAX_BRUTE_FORCE_PLANES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalvettiCensus {
    /// Complex dimension `N`.
    pub ambient_dim: usize,
    pub planes: usize,
    /// Nonempty cells by real dimension, not counting the added point.
    pub cells: BTreeMap<usize, usize>,
}

impl SalvettiCensus {
    pub fn total(&self) -> usize {
        self.cells.values().sum::<usize>() + 1
    }

    /// Euler characteristic of the one-point compactification.
    pub fn euler_characteristic(&self) -> i64 {
        1 + self.cells.iter().map(|(&d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum::<i64>()
    }
}

fn check_size(m: usize, limit: usize) -> Result<()> {
    if m > limit {
        return Err(Error::SizeLimit { what: "planes for a Salvetti census", got: m, limit });
    }
    Ok(())
}

pub fn salvetti_census(arr: &Arrangement<Rational>, execution: Execution) -> Result<SalvettiCensus> {
    let m = arr.len();
    check_size(m, MAX_SALVETTI_PLANES)?;
    let n = arr.ambient_dim();
    let rows = rows_of(arr)?;
    let per_subset: Vec<Option<(usize, usize)>> = par::map_range(execution, 1 << m, |mask| {
        let u: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        let (point, kernel) = match solve_rows(n, &rows, &u) {
            AffineSolution::Empty => return None,
            AffineSolution::Affine { point, kernel } => (point, kernel),
        };
        // x-part in coordinates t of E_U = point + Σ t_k kernel_k
        let induced: Vec<Vec<Rational>> = (0..m)
            .filter(|j| mask >> j & 1 == 0)
            .map(|j| {
                let a = &rows[j][..n];
                let mut r: Vec<Rational> = kernel.iter().map(|d| dot(a, d)).collect();
                r.push(&rows[j][n] - &dot(a, &point));
                r
            })
            .collect();
        let x_count = sign_cells(kernel.len(), &induced).len();
        let central: Vec<Vec<Rational>> = u
            .iter()
            .map(|&j| {
                let mut r = rows[j][..n].to_vec();
                r.push(Rational::zero());
                r
            })
            .collect();
        let y_count = sign_cells(n, &central).len();
        let count = x_count * y_count;
        (count > 0).then_some((kernel.len() + n, count))
    });
    let mut cells = BTreeMap::new();
    for (dim, count) in per_subset.into_iter().flatten() {
        *cells.entry(dim).or_insert(0) += count;
    }
    Ok(SalvettiCensus { ambient_dim: n, planes: m, cells })
}

/// The same census by testing each of the `4^m` sequences directly in
/// `R^{2N}`. Exponential; for cross-checks only.
pub fn salvetti_census_brute_force(arr: &Arrangement<Rational>) -> Result<SalvettiCensus> {
    let m = arr.len();
    check_size(m, MAX_BRUTE_FORCE_PLANES)?;
    let n = arr.ambient_dim();
    let rows = rows_of(arr)?;
    let mut cells = BTreeMap::new();
    for code in 0..4usize.pow(m as u32) {
        let mut system = Vec::new();
        let mut equalities: Vec<Vec<Rational>> = Vec::new();
        for (j, row) in rows.iter().enumerate() {
            let a = &row[..n];
            let mut x_part: Vec<Rational> = a.to_vec();
            x_part.extend(std::iter::repeat_n(Rational::zero(), n));
            let mut y_part: Vec<Rational> = vec![Rational::zero(); n];
            y_part.extend(a.iter().cloned());
            match code / 4usize.pow(j as u32) % 4 {
                0 => system.push(Inequality::signed(&x_part, &row[n], 1)),
                1 => system.push(Inequality::signed(&x_part, &row[n], -1)),
                s => {
                    system.push(Inequality::new(x_part.clone(), row[n].clone(), false));
                    system.push(Inequality::new(x_part.iter().map(|v| -v.clone()).collect(), -row[n].clone(), false));
                    system.push(Inequality::signed(&y_part, &Rational::zero(), if s == 2 { 1 } else { -1 }));
                    equalities.push(x_part);
                }
            }
        }
        if is_feasible(2 * n, &system) {
            let dim = 2 * n - Matrix::from_rows(2 * n, equalities).rank();
            *cells.entry(dim).or_insert(0) += 1;
        }
    }
    Ok(SalvettiCensus { ambient_dim: n, planes: m, cells })
}

/// One imaginary wedge: the generators of a node (empty for the whole
/// space) and its real dimension `2N − |I|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeCell {
    pub generators: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeCensus {
    pub ambient_dim: usize,
    pub cells: Vec<WedgeCell>,
    /// Ranks of the Borel–Moore homology of the complement, by degree.
    pub borel_moore_ranks: BTreeMap<usize, usize>,
}

impl WedgeCensus {
    /// Betti numbers of the complement via `H^p ≅ H^BM_{2N−p}`.
    pub fn cohomology_ranks(&self) -> Vec<usize> {
        let top = 2 * self.ambient_dim;
        let mut b: Vec<usize> = (0..=self.ambient_dim).map(|p| self.borel_moore_ranks.get(&(top - p)).copied().unwrap_or(0)).collect();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }
}

/// Wedge cells of the complexification of a real normal-crossing
/// arrangement. All incidence numbers vanish, so cells are homology classes.
pub fn imaginary_wedge_census(arr: &Arrangement<Rational>) -> Result<WedgeCensus> {
    if !is_normal_crossings(arr)? {
        return Err(Error::NotNormalCrossings);
    }
    let n = arr.ambient_dim();
    let poset = build_intersection_poset(arr);
    let mut cells = vec![WedgeCell { generators: Vec::new(), dim: 2 * n }];
    cells.extend(poset.nodes().iter().map(|node| {
        let generators: Vec<usize> = node.generator_indices().iter().map(|g| g + 1).collect();
        WedgeCell { dim: 2 * n - generators.len(), generators }
    }));
    let mut ranks = BTreeMap::new();
    for c in &cells {
        *ranks.entry(c.dim).or_insert(0) += 1;
    }
    Ok(WedgeCensus { ambient_dim: n, cells, borel_moore_ranks: ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::diagonal_arrangement;

    fn real(n: usize, rows: &[&[i64]]) -> Arrangement<Rational> {
        Arrangement::from_i64_hyperplanes(n, rows).unwrap()
    }

    #[test]
    fn punctured_line() {
        let c = salvetti_census(&real(1, &[&[1, 0]]), Execution::Sequential).unwrap();
        assert_eq!(c.cells, BTreeMap::from([(1, 2), (2, 2)]));
        assert_eq!(c.total(), 5);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn factored_matches_brute_force() {
        for arr in [
            real(2, &[&[1, 0, 0], &[0, 1, 0]]),
            real(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]),
            real(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]),
            real(2, &[&[1, 0, 0], &[1, 0, 1], &[0, 1, 0]]),
        ] {
            let fast = salvetti_census(&arr, Execution::Parallel).unwrap();
            let slow = salvetti_census_brute_force(&arr).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn wedges() {
        let three = real(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        let w = imaginary_wedge_census(&three).unwrap();
        assert_eq!(w.borel_moore_ranks, BTreeMap::from([(2, 3), (3, 3), (4, 1)]));
        assert_eq!(w.cohomology_ranks(), vec![1, 3, 3]);

        let one = imaginary_wedge_census(&real(3, &[&[1, 1, 0, 2]])).unwrap();
        assert_eq!(one.cells.iter().filter(|c| c.dim == 5).count(), 1);

        let a32 = diagonal_arrangement::<Rational>(3, 2).unwrap();
        assert!(matches!(imaginary_wedge_census(&a32), Err(Error::NotNormalCrossings)));
    }
}
