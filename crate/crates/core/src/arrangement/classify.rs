use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{build_intersection_poset, Arrangement, CanonicalSubspace, IntersectionPoset};
use crate::linalg::Field;
use crate::{Error, Result};

pub const MAX_SIGNATURE_PLANES: usize = 20;

/// Dimension of `L_I` (or emptiness) for every nonempty `I ⊆ {1..m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionSignature {
    pub planes: usize,
    pub ambient_dim: usize,
    /// Indexed by bitmask; entry 0 is the ambient space.
    dims: Vec<Option<usize>>,
}

impl DimensionSignature {
    pub fn dim(&self, mask: u64) -> Option<usize> {
        self.dims[mask as usize]
    }

    /// `(mask, dim)` for every nonempty subset.
    pub fn entries(&self) -> impl Iterator<Item = (u64, Option<usize>)> + '_ {
        self.dims.iter().enumerate().skip(1).map(|(m, d)| (m as u64, *d))
    }
}

pub fn dimensional_data<F: Field>(arr: &Arrangement<F>) -> Result<DimensionSignature> {
    let m = arr.len();
    if m > MAX_SIGNATURE_PLANES {
        return Err(Error::SizeLimit { what: "planes for dimensional data", got: m, limit: MAX_SIGNATURE_PLANES });
    }
    let poset = build_intersection_poset(arr);
    // node ∩ plane, memoized through the poset's node indices
    let mut meet: HashMap<(usize, usize), Option<usize>> = HashMap::new();
    let mut lookup = |x: usize, i: usize| -> Option<usize> {
        *meet.entry((x, i)).or_insert_with(|| {
            let s = poset.node(x).subspace.intersect(&arr.plane(i).subspace);
            (!s.is_empty()).then(|| poset.find(&s).expect("poset is closed under intersection"))
        })
    };
    let mut node_of: Vec<Option<usize>> = vec![None; 1 << m];
    let mut dims = vec![None; 1 << m];
    dims[0] = Some(arr.ambient_dim());
    for mask in 1usize..1 << m {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        node_of[mask] = if rest == 0 {
            Some(poset.plane_node(low))
        } else {
            node_of[rest].and_then(|x| lookup(x, low))
        };
        dims[mask] = node_of[mask].map(|x| poset.node(x).dim);
    }
    Ok(DimensionSignature { planes: m, ambient_dim: arr.ambient_dim(), dims })
}

pub fn is_hyperplane_arrangement<F: Field>(arr: &Arrangement<F>) -> bool {
    arr.planes().iter().all(|p| p.subspace.codim() == Some(1))
}

/// All planes pass through the origin.
pub fn is_central<F: Field>(arr: &Arrangement<F>) -> bool {
    arr.planes().iter().all(|p| p.subspace.is_linear())
}

/// Every nonempty `L_I` has codimension `|I|`.
pub fn is_normal_crossings<F: Field>(arr: &Arrangement<F>) -> Result<bool> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    // generator sets are maximal, so checking nodes covers every I
    let p = build_intersection_poset(arr);
    Ok(p.nodes().iter().all(|n| n.codim == n.generators.count_ones() as usize))
}

/// Normal crossings in projective space after adjoining the hyperplane at
/// infinity.
pub fn is_generic<F: Field>(arr: &Arrangement<F>) -> Result<bool> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    let homog = homogenize(arr);
    let p = build_intersection_poset(&homog);
    // the origin of F^{N+1} is empty in projective space
    Ok(p.nodes().iter().filter(|n| n.dim >= 1).all(|n| n.codim == n.generators.count_ones() as usize))
}

/// `a · x = b` becomes `a · x - b x_0 = 0` in `F^{N+1}` with `x_0` the last
/// coordinate, followed by the plane at infinity `x_0 = 0`.
fn homogenize<F: Field>(arr: &Arrangement<F>) -> Arrangement<F> {
    let n = arr.ambient_dim();
    let mut planes: Vec<(Option<String>, Vec<Vec<F>>)> = arr
        .planes()
        .iter()
        .map(|p| {
            let eqs = p
                .subspace
                .equations()
                .iter()
                .map(|r| {
                    let mut row: Vec<F> = r[..n].to_vec();
                    row.push(-r[n].clone());
                    row.push(F::zero());
                    row
                })
                .collect();
            (Some(p.label.clone()), eqs)
        })
        .collect();
    let mut row = vec![F::zero(); n + 2];
    row[n] = F::one();
    planes.push((Some("H0".to_string()), vec![row]));
    Arrangement::new(n + 1, planes).expect("homogenization preserves validity")
}

/// The central arrangement in one dimension higher whose projectivization
/// has the input as affine part; the last plane is `x_0 = 0`.
pub fn cone<F: Field>(arr: &Arrangement<F>) -> Result<Arrangement<F>> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    Ok(homogenize(arr))
}

/// `codim(L_x ∩ L_y) = codim L_x + codim L_y` with a nonempty intersection.
pub fn transversal<F: Field>(poset: &IntersectionPoset<F>, x: usize, y: usize) -> bool {
    let (a, b) = (poset.node(x), poset.node(y));
    let s: CanonicalSubspace<F> = a.subspace.intersect(&b.subspace);
    s.codim() == Some(a.codim + b.codim)
}

/// Every strict incidence `L_y ⊊ L_x` between nodes has dimension gap ≥ 2.
pub fn is_ge2_arrangement<F: Field>(poset: &IntersectionPoset<F>) -> bool {
    poset.order_pairs().into_iter().all(|(x, y)| poset.node(x).dim >= poset.node(y).dim + 2)
}
