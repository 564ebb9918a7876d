//! The Orlik–Solomon algebra of a central hyperplane arrangement, built
//! directly as a quotient of the exterior algebra on one generator per
//! hyperplane.
//!
//! Relations are `∂e_C` for dependent sets `C`, multiplied by all monomials.
//! Each degree is reduced separately with exact elimination. Pivots are
//! taken at the lexicographically largest monomial, so the monomials that
//! survive as a basis are the lexicographically smallest ones.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::arrangement::{cone, is_central, is_hyperplane_arrangement, k_subsets, Arrangement};
use crate::linalg::{Field, Matrix, Rational};
use crate::par::{self, Execution};
use crate::{Error, Result};

pub const MAX_CIRCUIT_PLANES: usize = 20;
pub const MAX_ALGEBRA_PLANES: usize = 10;

/// A sorted set of generator indices (0-based) with a coefficient.
pub type Element = BTreeMap<Vec<usize>, Rational>;

fn check_central_hyperplanes<F: Field>(arr: &Arrangement<F>) -> Result<()> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    if !is_central(arr) {
        return Err(Error::NotCentral);
    }
    Ok(())
}

fn normals<F: Field>(arr: &Arrangement<F>) -> Result<Vec<Vec<F>>> {
    let n = arr.ambient_dim();
    Ok(arr.hyperplane_rows()?.into_iter().map(|r| r[..n].to_vec()).collect())
}

fn rank_of<F: Field>(rows: &[Vec<F>], subset: &[usize], n: usize) -> usize {
    Matrix::from_rows(n, subset.iter().map(|&i| rows[i].clone()).collect()).rank()
}

/// Minimal dependent sets, each sorted, in order of size then lexicographic.
pub fn circuits<F: Field>(arr: &Arrangement<F>) -> Result<Vec<Vec<usize>>> {
    check_central_hyperplanes(arr)?;
    let m = arr.len();
    if m > MAX_CIRCUIT_PLANES {
        return Err(Error::SizeLimit { what: "planes for circuit search", got: m, limit: MAX_CIRCUIT_PLANES });
    }
    let n = arr.ambient_dim();
    let rows = normals(arr)?;
    let total_rank = rank_of(&rows, &(0..m).collect::<Vec<_>>(), n);
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    // a circuit has at most rank + 1 elements
    for size in 1..=(total_rank + 1).min(m) {
        for s in k_subsets(m, size) {
            let mask = s.iter().fold(0u64, |acc, &i| acc | 1 << i);
            // skip supersets of known circuits
            if masks.iter().any(|&c| c & !mask == 0) {
                continue;
            }
            if rank_of(&rows, &s, n) < size {
                masks.push(mask);
                found.push(s);
            }
        }
    }
    Ok(found)
}

/// Every dependent set. Generates the same ideal as the circuits.
pub fn dependent_sets<F: Field>(arr: &Arrangement<F>) -> Result<Vec<Vec<usize>>> {
    check_central_hyperplanes(arr)?;
    let m = arr.len();
    if m > MAX_ALGEBRA_PLANES {
        return Err(Error::SizeLimit { what: "planes for the Orlik-Solomon algebra", got: m, limit: MAX_ALGEBRA_PLANES });
    }
    let n = arr.ambient_dim();
    let rows = normals(arr)?;
    Ok((1..=m).flat_map(|k| k_subsets(m, k)).filter(|s| rank_of(&rows, s, n) < s.len()).collect())
}

/// Exterior product of two monomials: `None` if they share a generator.
pub fn monomial_product(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut out = [a, b].concat();
    out.sort_unstable();
    Some((out, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// `∂e_C = Σ_j (−1)^j e_{C∖c_j}`.
fn boundary(c: &[usize]) -> Element {
    (0..c.len())
        .map(|j| {
            let mut rest = c.to_vec();
            rest.remove(j);
            (rest, Rational::from_i64(if j % 2 == 0 { 1 } else { -1 }))
        })
        .collect()
}

pub fn wedge(x: &Element, y: &Element) -> Element {
    let mut out = Element::new();
    for (a, ka) in x {
        for (b, kb) in y {
            if let Some((mono, sign)) = monomial_product(a, b) {
                let entry = out.entry(mono).or_insert_with(|| Rational::from_i64(0));
                *entry = entry.clone() + ka.clone() * kb.clone() * Rational::from_i64(sign as i64);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Echelon form of the relation span in one degree, keyed by pivot monomial.
/// Each row has coefficient 1 at its pivot and only smaller monomials besides.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: HashMap<Vec<usize>, Element>,
}

impl Echelon {
    fn reduce(&self, v: &Element) -> Element {
        let mut v = v.clone();
        let mut out = Element::new();
        while let Some((k, c)) = v.pop_last() {
            match self.rows.get(&k) {
                Some(row) => {
                    for (k2, c2) in row.range(..k.clone()) {
                        let entry = v.entry(k2.clone()).or_insert_with(|| Rational::from_i64(0));
                        *entry = entry.clone() - c.clone() * c2.clone();
                        if entry.is_zero() {
                            v.remove(k2);
                        }
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    fn insert(&mut self, v: &Element) {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.last_key_value() else { return };
        let lead = lead.clone();
        let pivot = pivot.clone();
        let row = r.into_iter().map(|(k, c)| (k, c / lead.clone())).collect();
        self.rows.insert(pivot, row);
    }
}

/// The Orlik–Solomon algebra over Q with its chosen monomial basis.
#[derive(Debug, Clone)]
pub struct OsAlgebra {
    pub generators: usize,
    pub circuits: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    /// Surviving monomials per degree, lexicographically sorted.
    pub basis: Vec<Vec<Vec<usize>>>,
    relations: Vec<Echelon>,
}

/// Serializable summary of an algebra. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsReport {
    pub generators: usize,
    /// Whether the input was affine and has been coned.
    pub coned: bool,
    pub circuits: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    pub basis: Vec<Vec<Vec<usize>>>,
    /// Poincaré polynomial of the input itself, low degree first.
    pub poincare: Vec<usize>,
}

impl OsAlgebra {
    /// Normal form of an element modulo the relations.
    pub fn normal_form(&self, x: &Element) -> Element {
        let mut by_degree: BTreeMap<usize, Element> = BTreeMap::new();
        for (k, c) in x {
            if !c.is_zero() {
                by_degree.entry(k.len()).or_default().insert(k.clone(), c.clone());
            }
        }
        let mut out = Element::new();
        for (d, part) in by_degree {
            // above the top degree everything vanishes
            if let Some(e) = self.relations.get(d) {
                out.extend(e.reduce(&part));
            }
        }
        out
    }

    pub fn product(&self, x: &Element, y: &Element) -> Element {
        self.normal_form(&wedge(x, y))
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        self.normal_form(x).is_empty()
    }

    pub fn poincare_polynomial(&self) -> Vec<usize> {
        self.dims.clone()
    }

    fn report(&self, coned: bool) -> OsReport {
        let one_based = |s: &Vec<usize>| s.iter().map(|i| i + 1).collect::<Vec<_>>();
        OsReport {
            generators: self.generators,
            coned,
            circuits: self.circuits.iter().map(one_based).collect(),
            dims: self.dims.clone(),
            basis: self.basis[..self.dims.len()].iter().map(|d| d.iter().map(one_based).collect()).collect(),
            poincare: if coned { decone(&self.dims) } else { self.dims.clone() },
        }
    }
}

/// The algebra of a central arrangement, or of the cone over an affine one.
pub fn os_report<F: Field>(arr: &Arrangement<F>, execution: Execution) -> Result<OsReport> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    if is_central(arr) {
        Ok(os_algebra(arr, execution)?.report(false))
    } else {
        Ok(os_algebra(&cone(arr)?, execution)?.report(true))
    }
}

/// Single-generator element `e_i`.
pub fn generator(i: usize) -> Element {
    Element::from([(vec![i], Rational::from_i64(1))])
}

pub fn os_algebra<F: Field>(arr: &Arrangement<F>, execution: Execution) -> Result<OsAlgebra> {
    let m = arr.len();
    if m > MAX_ALGEBRA_PLANES {
        return Err(Error::SizeLimit { what: "planes for the Orlik-Solomon algebra", got: m, limit: MAX_ALGEBRA_PLANES });
    }
    let cs = circuits(arr)?;
    Ok(algebra_from_relations(m, cs, execution))
}

/// The same quotient, generated by all dependent sets instead of circuits.
pub fn os_algebra_all_dependent<F: Field>(arr: &Arrangement<F>, execution: Execution) -> Result<OsAlgebra> {
    let deps = dependent_sets(arr)?;
    let mut alg = algebra_from_relations(arr.len(), deps, execution);
    alg.circuits = circuits(arr)?;
    Ok(alg)
}

fn algebra_from_relations(m: usize, generators_of_ideal: Vec<Vec<usize>>, execution: Execution) -> OsAlgebra {
    let degrees: Vec<usize> = (0..=m).collect();
    let relations: Vec<Echelon> = par::map(execution, &degrees, |&d| {
        let mut e = Echelon::default();
        for c in &generators_of_ideal {
            // ∂e_C has degree |C| − 1; multiply by monomials of the complement degree
            let Some(rest) = (d + 1).checked_sub(c.len()) else { continue };
            let dc = boundary(c);
            for s in k_subsets(m, rest) {
                let rel = wedge(&Element::from([(s, Rational::from_i64(1))]), &dc);
                if !rel.is_empty() {
                    e.insert(&rel);
                }
            }
        }
        e
    });
    let basis: Vec<Vec<Vec<usize>>> = degrees
        .iter()
        .map(|&d| k_subsets(m, d).into_iter().filter(|s| !relations[d].rows.contains_key(s)).collect())
        .collect();
    let mut dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    while dims.len() > 1 && dims.last() == Some(&0) {
        dims.pop();
    }
    OsAlgebra { generators: m, circuits: generators_of_ideal, dims, basis, relations }
}

/// Graded dimensions, low degree first. Affine inputs are coned first and
/// the factor `1 + t` is divided back out.
pub fn os_poincare_polynomial<F: Field>(arr: &Arrangement<F>, execution: Execution) -> Result<Vec<usize>> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    Ok(os_report(arr, execution)?.poincare)
}

/// Divides a polynomial by `1 + t`.
pub fn decone(p: &[usize]) -> Vec<usize> {
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut prev: i64 = 0;
    for &c in &p[..p.len().saturating_sub(1)] {
        prev = c as i64 - prev;
        q.push(prev.max(0) as usize);
    }
    while q.len() > 1 && q.last() == Some(&0) {
        q.pop();
    }
    if q.is_empty() {
        q.push(1);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::diagonal_arrangement;
    use crate::linalg::Gaussian;

    fn gauss(n: usize, rows: &[&[i64]]) -> Arrangement<Gaussian> {
        Arrangement::from_i64_hyperplanes(n, rows).unwrap()
    }

    #[test]
    fn braid_circuits() {
        let a32 = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
        assert_eq!(circuits(&a32).unwrap(), vec![vec![0, 1, 2]]);

        // planes of A(4,2): 12 13 14 23 24 34
        let a42 = diagonal_arrangement::<Gaussian>(4, 2).unwrap();
        let cs = circuits(&a42).unwrap();
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
        assert!(cs.contains(&vec![0, 2, 3, 5])); // 12 14 23 34
    }

    #[test]
    fn dimensions() {
        let a32 = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
        assert_eq!(os_algebra(&a32, Execution::Sequential).unwrap().dims, vec![1, 3, 2]);
        let a42 = diagonal_arrangement::<Gaussian>(4, 2).unwrap();
        assert_eq!(os_algebra(&a42, Execution::Parallel).unwrap().dims, vec![1, 6, 11, 6]);

        let four = gauss(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 2, 0]]);
        assert_eq!(os_algebra(&four, Execution::Sequential).unwrap().dims, vec![1, 4, 3]);
        let one = gauss(3, &[&[1, 2, 3, 0]]);
        assert_eq!(os_poincare_polynomial(&one, Execution::Sequential).unwrap(), vec![1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        let a43 = diagonal_arrangement::<Gaussian>(4, 3).unwrap();
        assert!(matches!(os_algebra(&a43, Execution::Sequential), Err(Error::NotHyperplanes)));
        let affine = gauss(1, &[&[1, 1]]);
        assert!(matches!(circuits(&affine), Err(Error::NotCentral)));
    }

    #[test]
    fn coned_affine_lines() {
        // three generic affine lines: 1 + 3t + 3t²
        let arr = gauss(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        assert_eq!(os_poincare_polynomial(&arr, Execution::Sequential).unwrap(), vec![1, 3, 3]);
        assert_eq!(decone(&[1, 4, 6, 3]), vec![1, 3, 3]);
    }

    #[test]
    fn products() {
        let a32 = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
        let alg = os_algebra(&a32, Execution::Sequential).unwrap();
        let e = generator;
        assert!(alg.product(&e(0), &e(0)).is_empty());
        // α12α23 + α23α31 + α31α12 with α31 = α13
        let mut sum = alg.product(&e(0), &e(2));
        for part in [alg.product(&e(2), &e(1)), alg.product(&e(1), &e(0))] {
            for (k, v) in part {
                let entry = sum.entry(k).or_insert_with(|| Rational::from_i64(0));
                *entry = entry.clone() + v;
            }
        }
        assert!(alg.is_zero(&sum));
        assert!(!alg.product(&e(0), &e(1)).is_empty());

        let three = gauss(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        let alg = os_algebra(&three, Execution::Sequential).unwrap();
        let rel = wedge(&e(0), &e(1));
        let mut rel = rel;
        for (k, v) in wedge(&e(0), &e(2)) {
            rel.insert(k, -v);
        }
        for (k, v) in wedge(&e(1), &e(2)) {
            rel.insert(k, v);
        }
        assert!(alg.is_zero(&rel));
        assert_eq!(alg.basis[2], vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn all_dependent_sets_give_the_same_quotient() {
        let a42 = diagonal_arrangement::<Gaussian>(4, 2).unwrap();
        let a = os_algebra(&a42, Execution::Sequential).unwrap();
        let b = os_algebra_all_dependent(&a42, Execution::Sequential).unwrap();
        assert_eq!(a.dims, b.dims);
        assert_eq!(a.basis, b.basis);
    }
}
