//! Products of relative cycles of local order pairs.
//!
//! A class at node `x` is a chain `λ_0 < ... < λ_p = x` of nodes, read from
//! large planes down to `x`. The product of chains at transversal nodes `x`
//! and `y` sums over shuffles of the two sequences. In a shuffle, each
//! element is replaced by its meet with the most recent element of the
//! other sequence. Shuffles that collapse or break the chain condition
//! contribute nothing.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{k_subsets, Arrangement, IntersectionPoset};
use crate::complexes::{local_order_pair, OrderPair};
use crate::homology::{chain_complex, free_homology_basis, ChainComplexData, HomologyBasis};
use crate::linalg::{AffineSolution, Gaussian, Matrix, Rational};
use crate::par::{self, ComputeOptions};
use crate::{Error, Result};

/// A choice of coorientation frame for every node: the rows of a matrix
/// whose kernel is the direction space of the node.
#[derive(Debug, Clone)]
pub struct Orientation {
    frames: Vec<Matrix<Rational>>,
}

impl Orientation {
    /// Frames from the reduced row echelon form of each node's equations.
    pub fn canonical(poset: &IntersectionPoset<Rational>) -> Self {
        Orientation { frames: poset.nodes().iter().map(|n| n.subspace.linear_part()).collect() }
    }

    /// Complex orientation for the realification of `complex`: each complex
    /// equation `c` contributes `Re(c·z)` then `Im(c·z)`. With these frames
    /// every transversal sign is `+1`.
    ///
    /// `poset` must be the intersection poset of `complex.realify()`.
    pub fn complex(complex: &Arrangement<Gaussian>, poset: &IntersectionPoset<Rational>) -> Self {
        let n = complex.ambient_dim();
        let frames = poset
            .nodes()
            .iter()
            .map(|node| {
                let lin = complex.intersection(node.generators).linear_part();
                let mut rows = Vec::with_capacity(2 * lin.rows());
                for c in lin.row_vecs() {
                    let mut re = vec![Rational::from_i64(0); 2 * n];
                    let mut im = re.clone();
                    for k in 0..n {
                        re[k] = c[k].re.clone();
                        re[n + k] = -c[k].im.clone();
                        im[k] = c[k].im.clone();
                        im[n + k] = c[k].re.clone();
                    }
                    rows.push(re);
                    rows.push(im);
                }
                Matrix::from_rows(2 * n, rows)
            })
            .collect();
        Orientation { frames }
    }

    pub fn frame(&self, x: usize) -> &Matrix<Rational> {
        &self.frames[x]
    }

    /// Sign comparing `frame(x) ⊕ frame(y)` with `frame(z)`.
    pub fn sign(&self, x: usize, y: usize, z: usize) -> i32 {
        let stacked = self.frames[x].stack(&self.frames[y]);
        let k = &self.frames[z];
        assert_eq!(stacked.rows(), k.rows(), "sign needs a transversal pair");
        // rows of `stacked` in the row basis of `k`
        let kt = k.transpose();
        let rows = stacked
            .row_vecs()
            .into_iter()
            .map(|s| match kt.solve_affine(&s) {
                AffineSolution::Affine { point, .. } => point,
                AffineSolution::Empty => panic!("frames of a transversal pair span the meet's frame"),
            })
            .collect();
        let t = Matrix::from_rows(k.rows(), rows);
        t.determinant().signum()
    }
}

/// An integral chain of a local pair, in global node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    pub node: usize,
    pub terms: BTreeMap<Vec<usize>, BigInt>,
}

impl GradedClass {
    /// Chains with `p + 1` nodes sit in pair degree `p`.
    pub fn pair_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|c| c.len() - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }
}

/// The product of two classes, or `None` when the nodes are not transversal.
pub fn shuffle_product(
    poset: &IntersectionPoset<Rational>,
    orientation: &Orientation,
    a: &GradedClass,
    b: &GradedClass,
) -> Option<GradedClass> {
    let (x, y) = (a.node, b.node);
    let z = poset.meet(x, y)?;
    if poset.node(z).codim != poset.node(x).codim + poset.node(y).codim {
        return None;
    }
    let eps = orientation.sign(x, y, z);
    let mut terms: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for (ca, ka) in &a.terms {
        for (cb, kb) in &b.terms {
            let coeff = ka * kb * eps;
            for (chain, sign) in shuffles(poset, ca, cb) {
                *terms.entry(chain).or_insert_with(BigInt::zero) += &coeff * sign;
            }
        }
    }
    terms.retain(|_, v| !v.is_zero());
    Some(GradedClass { node: z, terms })
}

fn shuffles(poset: &IntersectionPoset<Rational>, ca: &[usize], cb: &[usize]) -> Vec<(Vec<usize>, i32)> {
    let total = ca.len() + cb.len();
    let mut out = Vec::new();
    'outer: for apos in k_subsets(total, ca.len()) {
        let mut chain = Vec::with_capacity(total);
        let (mut ia, mut ib) = (0, 0);
        let (mut last_a, mut last_b) = (None, None);
        let mut inversions = 0;
        for t in 0..total {
            let from_a = apos.get(ia) == Some(&t);
            let (raw, other) = if from_a {
                inversions += ib;
                let r = ca[ia];
                ia += 1;
                last_a = Some(r);
                (r, last_b)
            } else {
                let r = cb[ib];
                ib += 1;
                last_b = Some(r);
                (r, last_a)
            };
            let v = match other {
                Some(o) => match poset.meet(raw, o) {
                    Some(m) => m,
                    None => continue 'outer,
                },
                None => raw,
            };
            if let Some(&prev) = chain.last() {
                if !poset.less(prev, v) {
                    continue 'outer;
                }
            }
            chain.push(v);
        }
        out.push((chain, if inversions % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// Local data for one node: its pair, chain complex and chain indexing.
struct LocalComplex {
    pair: OrderPair,
    cc: ChainComplexData,
}

impl LocalComplex {
    fn new(poset: &IntersectionPoset<Rational>, x: usize, max_faces: usize) -> Result<Self> {
        let pair = local_order_pair(poset, x);
        let cc = chain_complex(&pair.pair, false, max_faces)?;
        Ok(LocalComplex { pair, cc })
    }

    /// Coefficient vector of a class on the generators of its pair degree.
    /// `None` if some chain is not a relative generator of this pair.
    fn vector(&self, class: &GradedClass) -> Option<(i32, Vec<BigInt>)> {
        let degree = class.pair_degree()?;
        let gens = self.cc.generators.get(degree)?;
        let mut v = vec![BigInt::zero(); gens.len()];
        for (chain, k) in &class.terms {
            if chain.len() != degree + 1 {
                return None;
            }
            let local: Vec<usize> =
                chain.iter().map(|g| self.pair.nodes.binary_search(g).ok()).collect::<Option<_>>()?;
            let i = gens.iter().position(|f| *f == local)?;
            v[i] += k;
        }
        Some((degree as i32, v))
    }

    fn class(&self, degree: usize, coeffs: &[BigInt]) -> GradedClass {
        let gens = &self.cc.generators[degree];
        let terms = gens
            .iter()
            .zip(coeffs)
            .filter(|(_, k)| !k.is_zero())
            .map(|(f, k)| (f.iter().map(|&l| self.pair.nodes[l]).collect(), k.clone()))
            .collect();
        GradedClass { node: *self.pair.nodes.last().expect("pairs contain the apex"), terms }
    }
}

/// Whether `class` is a cycle of its node's local pair.
pub fn is_relative_cycle(poset: &IntersectionPoset<Rational>, class: &GradedClass, max_faces: usize) -> Result<bool> {
    if class.is_zero() {
        return Ok(true);
    }
    let local = LocalComplex::new(poset, class.node, max_faces)?;
    let Some((degree, v)) = local.vector(class) else { return Ok(false) };
    let Some(d) = local.cc.boundary(degree) else { return Ok(false) };
    let mut image = vec![BigInt::zero(); d.rows];
    for (c, col) in d.columns.iter().enumerate() {
        if v[c].is_zero() {
            continue;
        }
        for &(r, e) in col {
            image[r] += &v[c] * e;
        }
    }
    Ok(image.iter().all(Zero::is_zero))
}

/// One basis element of the graded ring. Class `0` is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingClass {
    pub index: usize,
    pub node: Option<usize>,
    pub generators: Vec<usize>,
    /// Cohomological degree.
    pub degree: usize,
    pub pair_degree: Option<usize>,
}

/// A nonzero entry `left · right = Σ coeff · class`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingProduct {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, i64)>,
}

/// Multiplication table of the graded ring on a free basis. Deserialized
/// tables carry no representatives.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(from = "RingTableData")]
pub struct RingTable {
    pub classes: Vec<RingClass>,
    pub products: Vec<RingProduct>,
    /// Torsion summands left out of the basis, as (node, pair degree, order).
    pub skipped_torsion: Vec<(usize, usize, String)>,
    #[serde(skip)]
    table: Vec<Vec<Vec<(usize, i64)>>>,
    #[serde(skip)]
    pub representatives: Vec<Option<GradedClass>>,
}

#[derive(Deserialize)]
struct RingTableData {
    classes: Vec<RingClass>,
    products: Vec<RingProduct>,
    skipped_torsion: Vec<(usize, usize, String)>,
}

impl From<RingTableData> for RingTable {
    fn from(d: RingTableData) -> Self {
        let n = d.classes.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for p in &d.products {
            table[p.left][p.right] = p.result.clone();
        }
        RingTable { representatives: vec![None; n], classes: d.classes, products: d.products, skipped_torsion: d.skipped_torsion, table }
    }
}

impl PartialEq for RingTable {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes && self.products == other.products && self.skipped_torsion == other.skipped_torsion
    }
}

impl RingTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn product(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    /// Product of two linear combinations of basis classes.
    pub fn multiply(&self, u: &BTreeMap<usize, i64>, v: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&a, &ka) in u {
            for (&b, &kb) in v {
                for &(c, k) in &self.table[a][b] {
                    *out.entry(c).or_insert(0) += ka * kb * k;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn is_associative(&self) -> bool {
        let n = self.len();
        let unit = |i| BTreeMap::from([(i, 1)]);
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.multiply(&unit(a), &unit(b));
                (0..n).all(|c| {
                    let bc = self.multiply(&unit(b), &unit(c));
                    self.multiply(&ab, &unit(c)) == self.multiply(&unit(a), &bc)
                })
            })
        })
    }

    /// `a · b = (−1)^{|a||b|} b · a` for all basis pairs.
    pub fn is_graded_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let sign = if (self.classes[a].degree * self.classes[b].degree).is_multiple_of(2) { 1 } else { -1 };
                let ba: Vec<(usize, i64)> = self.table[b][a].iter().map(|&(c, k)| (c, sign * k)).collect();
                self.table[a][b] == ba
            })
        })
    }

    /// Class of degree `degree` supported on the node with these 1-based
    /// generators, if it is the only one there.
    pub fn find(&self, generators: &[usize], degree: usize) -> Option<usize> {
        let mut hits = self.classes.iter().filter(|c| c.node.is_some() && c.generators == generators && c.degree == degree);
        let first = hits.next()?;
        hits.next().is_none().then_some(first.index)
    }
}

/// Ring table of an arrangement's graded cohomology ring over the free
/// classes of all local pairs.
/// Nonzero entries `(class, coefficient)` of one product.
type Row = Vec<(usize, i64)>;

pub fn graded_ring_table(
    poset: &IntersectionPoset<Rational>,
    orientation: &Orientation,
    opts: ComputeOptions,
) -> Result<RingTable> {
    let n = poset.ambient_dim();
    let nodes: Vec<usize> = (0..poset.len()).collect();
    let locals: Vec<LocalComplex> = par::map(opts.execution, &nodes, |&x| LocalComplex::new(poset, x, opts.max_faces))
        .into_iter()
        .collect::<Result<_>>()?;
    // bases[x][j]
    let bases: Vec<Vec<HomologyBasis>> = par::map(opts.execution, &locals, |l| {
        (0..l.cc.generators.len() as i32).map(|j| free_homology_basis(&l.cc, j)).collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut classes = vec![RingClass { index: 0, node: None, generators: Vec::new(), degree: 0, pair_degree: None }];
    let mut representatives = vec![None];
    let mut skipped_torsion = Vec::new();
    let mut first_class: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, per_degree) in bases.iter().enumerate() {
        let node = poset.node(x);
        for (j, basis) in per_degree.iter().enumerate() {
            for t in &basis.skipped_torsion {
                skipped_torsion.push((x, j, t.to_string()));
            }
            if basis.is_empty() {
                continue;
            }
            first_class.insert((x, j), classes.len());
            for cyc in &basis.cycles {
                let index = classes.len();
                classes.push(RingClass {
                    index,
                    node: Some(x),
                    generators: node.generator_indices().iter().map(|g| g + 1).collect(),
                    degree: n - j - node.dim - 1,
                    pair_degree: Some(j),
                });
                representatives.push(Some(locals[x].class(j, cyc)));
            }
        }
    }

    let count = classes.len();
    let rows: Vec<Result<Vec<Row>>> = par::map_range(opts.execution, count, |a| {
        (0..count)
            .map(|b| {
                let (Some(ca), Some(cb)) = (&representatives[a], &representatives[b]) else {
                    // the unit
                    let other = if a == 0 { b } else { a };
                    return Ok(vec![(other, 1)]);
                };
                let Some(prod) = shuffle_product(poset, orientation, ca, cb) else { return Ok(Vec::new()) };
                if prod.is_zero() {
                    return Ok(Vec::new());
                }
                let local = &locals[prod.node];
                let (degree, v) = local.vector(&prod).ok_or_else(|| {
                    Error::InvalidArgument("shuffle product left the local pair of the meet".into())
                })?;
                let basis = &bases[prod.node][degree as usize];
                let coords = basis
                    .coordinates(&v)
                    .ok_or_else(|| Error::InvalidArgument("shuffle product is not a relative cycle".into()))?;
                let offset = first_class.get(&(prod.node, degree as usize)).copied();
                coords
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| !k.is_zero())
                    .map(|(i, k)| {
                        let k = k.to_i64().ok_or(Error::Overflow)?;
                        Ok((offset.expect("nonzero coordinates need a basis") + i, k))
                    })
                    .collect()
            })
            .collect()
    });
    let table: Vec<Vec<Vec<(usize, i64)>>> = rows.into_iter().collect::<Result<_>>()?;
    let products = table
        .iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, r)| !r.is_empty())
                .map(move |(b, r)| RingProduct { left: a, right: b, result: r.clone() })
        })
        .collect();
    Ok(RingTable { classes, products, skipped_torsion, table, representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_intersection_poset, diagonal_arrangement};

    fn braid(n: usize) -> (Arrangement<Gaussian>, IntersectionPoset<Rational>) {
        let c = diagonal_arrangement::<Gaussian>(n, 2).unwrap();
        let p = build_intersection_poset(&c.realify());
        (c, p)
    }

    #[test]
    fn complex_signs_are_positive() {
        let (c, p) = braid(3);
        let o = Orientation::complex(&c, &p);
        for x in 0..p.len() {
            for y in 0..p.len() {
                if let Some(z) = p.meet(x, y) {
                    if p.node(z).codim == p.node(x).codim + p.node(y).codim {
                        assert_eq!(o.sign(x, y, z), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn products_are_cycles() {
        let (c, p) = braid(3);
        let o = Orientation::complex(&c, &p);
        let t = graded_ring_table(&p, &o, ComputeOptions::sequential()).unwrap();
        assert_eq!(t.len(), 1 + 3 + 2);
        for a in t.representatives.iter().flatten() {
            assert!(is_relative_cycle(&p, a, 1000).unwrap());
            for b in t.representatives.iter().flatten() {
                if let Some(prod) = shuffle_product(&p, &o, a, b) {
                    assert!(is_relative_cycle(&p, &prod, 1000).unwrap());
                }
            }
        }
    }

    #[test]
    fn coordinate_cross_ring() {
        let arr = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let p = build_intersection_poset(&arr);
        let o = Orientation::canonical(&p);
        let t = graded_ring_table(&p, &o, ComputeOptions::sequential()).unwrap();
        assert_eq!(t.len(), 4);
        let x = t.find(&[1], 0).unwrap();
        let y = t.find(&[2], 0).unwrap();
        let xy = t.find(&[1, 2], 0).unwrap();
        assert_eq!(t.product(x, y).len(), 1);
        assert_eq!(t.product(x, y)[0].0, xy);
        assert!(t.product(x, x).is_empty());
        assert!(t.is_associative());
    }

    #[test]
    fn braid_ring_relations() {
        for n in [3, 4] {
            let (c, p) = braid(n);
            let o = Orientation::complex(&c, &p);
            let t = graded_ring_table(&p, &o, ComputeOptions::default()).unwrap();
            assert!(t.is_associative(), "n = {n}");
            assert!(t.is_graded_commutative(), "n = {n}");
        }
        let (c, p) = braid(3);
        let o = Orientation::complex(&c, &p);
        let t = graded_ring_table(&p, &o, ComputeOptions::sequential()).unwrap();
        let e = |g: usize| BTreeMap::from([(t.find(&[g], 1).unwrap(), 1i64)]);
        let prod = |a, b| t.multiply(&e(a), &e(b));
        // e1 e2 - e1 e3 + e2 e3 = 0
        let mut sum = prod(1, 2);
        for (k, v) in prod(1, 3) {
            *sum.entry(k).or_insert(0) -= v;
        }
        for (k, v) in prod(2, 3) {
            *sum.entry(k).or_insert(0) += v;
        }
        sum.retain(|_, v| *v != 0);
        assert!(sum.is_empty(), "{sum:?}");
        assert!(!prod(1, 2).is_empty());
    }
}
