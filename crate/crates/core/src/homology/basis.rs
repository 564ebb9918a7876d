use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ChainComplexData;
use crate::linalg::{int_mul, smith_normal_form_certified, IntMatrix, SparseIntMatrix};
use crate::{Error, Result};

/// Integral cycles representing a basis of the free part of `H_d`, with the
/// data needed to read off coordinates of any other cycle.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub degree: i32,
    /// One coefficient vector over the degree-`d` generators per class.
    pub cycles: Vec<Vec<BigInt>>,
    /// Orders of the torsion classes that were skipped.
    pub skipped_torsion: Vec<BigInt>,
    kernel_rank: usize,
    boundary_rank: usize,
    // kernel coordinates: w = rows [boundary_rank..] of right_inv · c
    right_inv: IntMatrix,
    // change to the adapted kernel basis, with the sign normalization folded in
    adapt: IntMatrix,
}

impl HomologyBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Coordinates of a cycle on the free basis, modulo boundaries and
    /// torsion. `None` if `chain` is not a cycle.
    pub fn coordinates(&self, chain: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.right_inv.len();
        assert_eq!(chain.len(), n, "chain length must match the generator count");
        let full: Vec<BigInt> = self
            .right_inv
            .iter()
            .map(|row| row.iter().zip(chain).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect();
        if full[..self.boundary_rank].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let w = &full[self.boundary_rank..];
        let z = self.kernel_rank;
        let adapted: Vec<BigInt> = (0..z)
            .map(|i| self.adapt[i].iter().zip(w).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect();
        Some(adapted[z - self.cycles.len()..].to_vec())
    }
}

fn dense(m: &SparseIntMatrix) -> IntMatrix {
    m.to_dense()
}

/// Basis of the free part of `H_degree` of a chain complex, from Smith form
/// certificates of the two adjacent boundary maps.
pub fn free_homology_basis(cc: &ChainComplexData, degree: i32) -> Result<HomologyBasis> {
    let n = cc.rank(degree);
    let d_out = match cc.boundary(degree) {
        Some(b) => dense(b),
        None => return Err(Error::InvalidArgument(format!("degree {degree} is not in the complex"))),
    };
    let (r, right, right_inv) = if d_out.is_empty() {
        let id = crate::linalg::snf::int_identity(n);
        (0, id.clone(), id)
    } else {
        let c = smith_normal_form_certified(&d_out);
        (c.result.rank, c.right, c.right_inv)
    };
    let z = n - r;
    let kernel: IntMatrix = (0..n).map(|i| right[i][r..].to_vec()).collect();

    let x: IntMatrix = match cc.boundary(degree + 1) {
        Some(b) if b.cols > 0 => {
            let coords = int_mul(&right_inv, &dense(b), n, b.cols);
            debug_assert!(coords[..r].iter().all(|row| row.iter().all(Zero::is_zero)));
            coords[r..].to_vec()
        }
        _ => vec![Vec::new(); z],
    };
    let cols = x.first().map_or(0, Vec::len);
    let (r2, left, left_inv, divisors) = if z == 0 || cols == 0 {
        let id = crate::linalg::snf::int_identity(z);
        (0, id.clone(), id, Vec::new())
    } else {
        let c = smith_normal_form_certified(&x);
        (c.result.rank, c.left, c.left_inv, c.result.elementary_divisors)
    };
    // adapted kernel basis Z' = Z · left⁻¹
    let adapted = int_mul(&kernel, &left_inv, z, z);
    let mut adapt = left;
    let mut cycles = Vec::with_capacity(z - r2);
    for j in r2..z {
        let mut v: Vec<BigInt> = (0..n).map(|i| adapted[i][j].clone()).collect();
        if v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            for c in &mut v {
                *c = -std::mem::take(c);
            }
            for c in &mut adapt[j] {
                *c = -std::mem::take(c);
            }
        }
        cycles.push(v);
    }
    let skipped_torsion = divisors.into_iter().filter(|d| *d != BigInt::from(1)).collect();
    Ok(HomologyBasis { degree, cycles, skipped_torsion, kernel_rank: z, boundary_rank: r, right_inv, adapt })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{connected_graph_pair, SimplicialComplex, SimplicialPair};
    use crate::homology::chain_complex;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn circle_cycle() {
        let c = SimplicialComplex::new(labels(3), vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let cc = chain_complex(&SimplicialPair::absolute(c), false, 100).unwrap();
        let b = free_homology_basis(&cc, 1).unwrap();
        assert_eq!(b.len(), 1);
        // generators are 01, 02, 12; the cycle is 01 - 02 + 12
        let want: Vec<BigInt> = [1, -1, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(b.cycles[0], want);
        assert_eq!(b.coordinates(&want).unwrap(), vec![BigInt::from(1)]);
        let twice: Vec<BigInt> = want.iter().map(|v| v * 2).collect();
        assert_eq!(b.coordinates(&twice).unwrap(), vec![BigInt::from(2)]);
        assert!(b.coordinates(&[BigInt::from(1), BigInt::from(0), BigInt::from(0)]).is_none());
    }

    #[test]
    fn graph_three_basis() {
        let cc = chain_complex(&connected_graph_pair(3).unwrap(), false, 100).unwrap();
        let b = free_homology_basis(&cc, 1).unwrap();
        assert_eq!(b.len(), 2);
        // the boundary of the triangle is zero in homology
        let tri: Vec<BigInt> = cc.boundary(2).unwrap().to_dense().iter().map(|r| r[0].clone()).collect();
        assert_eq!(b.coordinates(&tri).unwrap(), vec![BigInt::zero(), BigInt::zero()]);
        for (k, cyc) in b.cycles.iter().enumerate() {
            let coords = b.coordinates(cyc).unwrap();
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(*c, BigInt::from((j == k) as i64));
            }
        }
    }
}
