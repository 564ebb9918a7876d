//! Real-side combinatorics of hyperplane arrangements: regions with exact
//! witnesses, bounded regions, and cell censuses of complexified
//! complements.

pub mod fm;
mod salvetti;

pub use salvetti::{
    imaginary_wedge_census, salvetti_census, salvetti_census_brute_force, SalvettiCensus, WedgeCell, WedgeCensus,
};

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::linalg::{AffineSolution, Field, Matrix, Rational};
use crate::Result;
use fm::{feasible_point, is_feasible, Inequality};

/// An open region of the complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    /// One character per hyperplane, `+` or `-`.
    pub signs: String,
    pub witness: Vec<Rational>,
    pub bounded: bool,
}

impl Region {
    pub fn sign_vector(&self) -> Vec<i32> {
        self.signs.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()
    }
}

/// Hyperplanes as rows `[a_1, ..., a_n, b]` meaning `a · x = b`.
pub(crate) fn rows_of(arr: &Arrangement<Rational>) -> Result<Vec<Vec<Rational>>> {
    arr.hyperplane_rows()
}

/// Feasible strict sign vectors of the rows, each with a witness, found by
/// inserting one hyperplane at a time. Rows may have a zero normal; such a
/// row admits only the sign of its constant.
pub(crate) fn sign_cells(n: usize, rows: &[Vec<Rational>]) -> Vec<(Vec<i32>, Vec<Rational>)> {
    let mut cells: Vec<(Vec<i32>, Vec<Rational>)> = vec![(Vec::new(), vec![Rational::zero(); n])];
    for row in rows {
        let (a, b) = (&row[..n], &row[n]);
        let mut next = Vec::with_capacity(2 * cells.len());
        for (signs, w) in cells {
            let value = &crate::linalg::dot(a, &w) - b;
            for s in [1, -1] {
                if value.signum() == s {
                    let mut sv = signs.clone();
                    sv.push(s);
                    next.push((sv, w.clone()));
                    continue;
                }
                let mut system: Vec<Inequality> =
                    signs.iter().enumerate().map(|(j, &t)| Inequality::signed(&rows[j][..n], &rows[j][n], t)).collect();
                system.push(Inequality::signed(a, b, s));
                if let Some(p) = feasible_point(n, &system) {
                    let mut sv = signs.clone();
                    sv.push(s);
                    next.push((sv, p));
                }
            }
        }
        cells = next;
    }
    cells
}

/// A region is bounded iff its recession cone `{d : s_i a_i · d ≥ 0}` is
/// zero: no kernel, and no `d` with `Σ s_i a_i · d ≥ 1`.
fn is_bounded(n: usize, rows: &[Vec<Rational>], signs: &[i32]) -> bool {
    let scaled: Vec<Vec<Rational>> = rows
        .iter()
        .zip(signs)
        .map(|(r, &s)| r[..n].iter().map(|v| v * &Rational::from_i64(s as i64)).collect())
        .collect();
    if Matrix::from_rows(n, scaled.clone()).rank() < n {
        return false;
    }
    let mut system: Vec<Inequality> =
        scaled.iter().map(|a| Inequality::new(a.clone(), Rational::zero(), false)).collect();
    let total: Vec<Rational> = (0..n).map(|k| scaled.iter().fold(Rational::zero(), |acc, a| acc + a[k].clone())).collect();
    system.push(Inequality::new(total, Rational::one(), false));
    !is_feasible(n, &system)
}

pub fn enumerate_regions(arr: &Arrangement<Rational>) -> Result<Vec<Region>> {
    let n = arr.ambient_dim();
    let rows = rows_of(arr)?;
    let mut regions: Vec<Region> = sign_cells(n, &rows)
        .into_iter()
        .map(|(signs, witness)| Region {
            bounded: is_bounded(n, &rows, &signs),
            signs: signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect(),
            witness,
        })
        .collect();
    regions.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(regions)
}

pub fn count_bounded(arr: &Arrangement<Rational>) -> Result<usize> {
    Ok(enumerate_regions(arr)?.iter().filter(|r| r.bounded).count())
}

/// The arrangement induced on hyperplane `i`, in coordinates of a
/// parametrization of it. `None` if no other hyperplane cuts it.
pub fn restriction(arr: &Arrangement<Rational>, i: usize) -> Result<Option<Arrangement<Rational>>> {
    let n = arr.ambient_dim();
    let rows = rows_of(arr)?;
    let h = &arr.plane(i).subspace;
    let p = h.point().expect("hyperplanes are nonempty");
    let dirs = h.directions();
    let k = dirs.len();
    let mut induced: Vec<Vec<Rational>> = Vec::new();
    for (j, r) in rows.iter().enumerate() {
        if j == i {
            continue;
        }
        // a · (p + D t) = b  ⇔  (a·D) t = b − a·p
        let coeffs: Vec<Rational> = dirs.iter().map(|d| crate::linalg::dot(&r[..n], d)).collect();
        if coeffs.iter().all(Field::is_zero) {
            continue; // parallel or equal
        }
        let mut row = coeffs;
        row.push(&r[n] - &crate::linalg::dot(&r[..n], &p));
        induced.push(row);
    }
    if induced.is_empty() {
        return Ok(None);
    }
    // merge hyperplanes that coincide inside the restriction
    let mut distinct: Vec<Vec<Rational>> = Vec::new();
    for row in induced {
        let pivot = row.iter().position(|v| !v.is_zero()).expect("nonzero normal");
        let lead = row[pivot].clone();
        let normal: Vec<Rational> = row.iter().map(|v| v / &lead).collect();
        if !distinct.contains(&normal) {
            distinct.push(normal);
        }
    }
    Arrangement::hyperplanes(k, distinct).map(Some)
}

/// The solution set `{x : A x = b}` of the rows indexed by `subset`.
pub(crate) fn solve_rows(n: usize, rows: &[Vec<Rational>], subset: &[usize]) -> AffineSolution<Rational> {
    let a = Matrix::from_rows(n, subset.iter().map(|&j| rows[j][..n].to_vec()).collect());
    let b: Vec<Rational> = subset.iter().map(|&j| rows[j][n].clone()).collect();
    a.solve_affine(&b)
}
