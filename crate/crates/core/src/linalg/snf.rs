//! Dense Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Rank and elementary divisors `d_1 | d_2 | ... | d_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub rank: usize,
    #[serde(with = "bigint_strings")]
    pub elementary_divisors: Vec<BigInt>,
}

impl SnfResult {
    /// Divisors strictly greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.elementary_divisors.iter().filter(|d| !d.is_one())
    }

    pub fn is_chain(&self) -> bool {
        self.elementary_divisors.iter().all(|d| d.is_positive())
            && self.elementary_divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

/// Smith form with unimodular certificates: `left · A · right = D`.
#[derive(Debug, Clone)]
pub struct SnfCertificate {
    pub result: SnfResult,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    Reducer::new(a, false).run()
}

pub fn smith_normal_form_certified(a: &IntMatrix) -> SnfCertificate {
    let mut r = Reducer::new(a, true);
    let result = r.run_in_place();
    let t = r.transforms.expect("transforms were requested");
    SnfCertificate { result, left: t.left, left_inv: t.left_inv, right: t.right, right_inv: t.right_inv }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

struct Transforms {
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    rows: usize,
    cols: usize,
    transforms: Option<Transforms>,
}

impl Reducer {
    fn new(a: &IntMatrix, certify: bool) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let transforms = certify.then(|| Transforms {
            left: int_identity(rows),
            left_inv: int_identity(rows),
            right: int_identity(cols),
            right_inv: int_identity(cols),
        });
        Reducer { a: a.clone(), rows, cols, transforms }
    }

    fn run(mut self) -> SnfResult {
        self.run_in_place()
    }

    // row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            if !self.a[j][c].is_zero() {
                let v = q * &self.a[j][c];
                self.a[i][c] += v;
            }
        }
        if let Some(t) = &mut self.transforms {
            for c in 0..self.rows {
                if !t.left[j][c].is_zero() {
                    let v = q * &t.left[j][c];
                    t.left[i][c] += v;
                }
            }
            // inverse: col_j -= q * col_i
            for r in 0..self.rows {
                if !t.left_inv[r][i].is_zero() {
                    let v = q * &t.left_inv[r][i];
                    t.left_inv[r][j] -= v;
                }
            }
        }
    }

    // col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            if !self.a[r][j].is_zero() {
                let v = q * &self.a[r][j];
                self.a[r][i] += v;
            }
        }
        if let Some(t) = &mut self.transforms {
            for r in 0..self.cols {
                if !t.right[r][j].is_zero() {
                    let v = q * &t.right[r][j];
                    t.right[r][i] += v;
                }
            }
            // inverse: row_j -= q * row_i
            for c in 0..self.cols {
                if !t.right_inv[i][c].is_zero() {
                    let v = q * &t.right_inv[i][c];
                    t.right_inv[j][c] -= v;
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(t) = &mut self.transforms {
            t.left.swap(i, j);
            for row in &mut t.left_inv {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(t) = &mut self.transforms {
            for row in &mut t.right {
                row.swap(i, j);
            }
            t.right_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.a[i] {
            *v = -std::mem::take(v);
        }
        if let Some(t) = &mut self.transforms {
            for v in &mut t.left[i] {
                *v = -std::mem::take(v);
            }
            for row in &mut t.left_inv {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    fn min_abs_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run_in_place(&mut self) -> SnfResult {
        let mut divisors = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_abs_from(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&p);
                        self.add_row(i, t, &-q);
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&p);
                        self.add_col(j, t, &-q);
                    }
                }
                // a remainder smaller than the pivot moves into the pivot slot
                let col_rest = (t + 1..self.rows).filter(|&i| !self.a[i][t].is_zero()).min_by_key(|&i| self.a[i][t].abs());
                if let Some(i) = col_rest {
                    self.swap_rows(t, i);
                    continue;
                }
                let row_rest = (t + 1..self.cols).filter(|&j| !self.a[t][j].is_zero()).min_by_key(|&j| self.a[t][j].abs());
                if let Some(j) = row_rest {
                    self.swap_cols(t, j);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !(&self.a[i][j] % &p).is_zero()));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            divisors.push(self.a[t][t].clone());
            t += 1;
        }
        SnfResult { rank: divisors.len(), elementary_divisors: divisors }
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|d| d.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}
