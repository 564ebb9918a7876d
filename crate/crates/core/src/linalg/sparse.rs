//! Sparse integer matrices and elementary divisors by unit-pivot elimination.
//!
//! Simplicial boundary matrices are mostly ±1 entries, so nearly all of the
//! work is unimodular elimination on unit pivots. Whatever survives is handed
//! to the dense solver.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;

use super::snf::{smith_normal_form, SnfResult};

/// Column-major sparse integer matrix. Each column is sorted by row index
/// and holds no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        SparseIntMatrix { rows, cols, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::from(0); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] = BigInt::from(v);
            }
        }
        d
    }

    /// `self · other`, or `None` on overflow.
    pub fn mul(&self, other: &SparseIntMatrix) -> Option<SparseIntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in sparse product");
        let mut acc = vec![0i128; self.rows];
        let mut touched = Vec::new();
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] = acc[r].checked_add((a as i128).checked_mul(b as i128)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &r in &touched {
                if acc[r] != 0 {
                    out.push((r, i64::try_from(acc[r]).ok()?));
                }
                acc[r] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        Some(SparseIntMatrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Elementary divisors of a sparse matrix.
pub fn sparse_smith(m: &SparseIntMatrix) -> SnfResult {
    match eliminate_units(m) {
        Some((units, rest)) => {
            let dense = smith_normal_form(&rest);
            let mut divisors = vec![BigInt::one(); units];
            divisors.extend(dense.elementary_divisors);
            SnfResult { rank: divisors.len(), elementary_divisors: divisors }
        }
        None => smith_normal_form(&m.to_dense()),
    }
}

type Column = Vec<(usize, i128)>;

/// Runs unit-pivot elimination; returns the number of unit pivots and the
/// dense remainder. `None` means an intermediate entry overflowed.
fn eliminate_units(m: &SparseIntMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut cols: Vec<Option<Column>> = m
        .columns
        .iter()
        .map(|c| Some(c.iter().map(|&(r, v)| (r, v as i128)).collect()))
        .collect();
    let mut row_cols: Vec<HashSet<usize>> = vec![HashSet::new(); m.rows];
    for (c, col) in m.columns.iter().enumerate() {
        for &(r, _) in col {
            row_cols[r].insert(c);
        }
    }

    let mut units = 0;
    loop {
        let mut order: Vec<usize> = (0..cols.len()).filter(|&c| cols[c].as_ref().is_some_and(|v| !v.is_empty())).collect();
        order.sort_by_key(|&c| cols[c].as_ref().map_or(0, Vec::len));
        let mut progressed = false;
        for c in order {
            let Some(col) = cols[c].as_ref() else { continue };
            let pivot = col
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(r, _)| row_cols[*r].len())
                .copied();
            let Some((pr, pv)) = pivot else { continue };
            let pivot_col = cols[c].take().expect("pivot column present");
            for &(r, _) in &pivot_col {
                row_cols[r].remove(&c);
            }
            let others: Vec<usize> = row_cols[pr].iter().copied().collect();
            for o in others {
                let target = cols[o].as_mut().expect("indexed column present");
                let v = target.iter().find(|(r, _)| *r == pr).map(|&(_, v)| v).expect("row index in sync");
                // pv is ±1, so v / pv is exact
                let q = v * pv;
                let (merged, added, removed) = axpy(target, &pivot_col, -q)?;
                *target = merged;
                for r in added {
                    row_cols[r].insert(o);
                }
                for r in removed {
                    row_cols[r].remove(&o);
                }
            }
            debug_assert!(row_cols[pr].is_empty());
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| cols[c].as_ref().is_some_and(|v| !v.is_empty())).collect();
    let mut live_rows: Vec<usize> = live_cols
        .iter()
        .flat_map(|&c| cols[c].as_ref().into_iter().flatten().map(|&(r, _)| r))
        .collect();
    live_rows.sort_unstable();
    live_rows.dedup();
    let mut dense = vec![vec![BigInt::from(0); live_cols.len()]; live_rows.len()];
    for (j, &c) in live_cols.iter().enumerate() {
        for &(r, v) in cols[c].as_ref().into_iter().flatten() {
            let i = live_rows.binary_search(&r).expect("live row");
            dense[i][j] = BigInt::from(v);
        }
    }
    Some((units, dense))
}

/// `target + q · source` for sorted sparse columns; also reports which rows
/// gained or lost an entry.
fn axpy(target: &Column, source: &Column, q: i128) -> Option<(Column, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let mut added = Vec::new();
    let mut removed = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let tr = target.get(i).map_or(usize::MAX, |e| e.0);
        let sr = source.get(j).map_or(usize::MAX, |e| e.0);
        if tr < sr {
            out.push(target[i]);
            i += 1;
        } else if sr < tr {
            out.push((sr, q.checked_mul(source[j].1)?));
            added.push(sr);
            j += 1;
        } else {
            let v = target[i].1.checked_add(q.checked_mul(source[j].1)?)?;
            if v == 0 {
                removed.push(tr);
            } else {
                out.push((tr, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some((out, added, removed))
}
