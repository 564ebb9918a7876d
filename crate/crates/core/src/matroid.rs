//! Matroids of central arrangements, the rank axioms, and an exact run of
//! the ten-line configuration whose realizations force `α² = −1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::{dimensional_data, is_central, is_hyperplane_arrangement, Arrangement};
use crate::linalg::{Field, Gaussian, Matrix};
use crate::{Error, Result};

pub const MAX_MATROID_PLANES: usize = 16;

/// `r(I)` for every nonempty `I ⊆ {1..m}`, indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    m: usize,
    // entry 0 is r(∅) = 0 and is only consulted behind the empty-set flag
    ranks: Vec<usize>,
}

impl RankFunction {
    pub fn new(m: usize, ranks: BTreeMap<u64, usize>) -> Result<Self> {
        if m == 0 || m > MAX_MATROID_PLANES {
            return Err(Error::SizeLimit { what: "matroid ground set", got: m, limit: MAX_MATROID_PLANES });
        }
        let mut table = vec![0; 1 << m];
        for mask in 1..1u64 << m {
            table[mask as usize] = *ranks
                .get(&mask)
                .ok_or_else(|| Error::InvalidArgument(format!("rank of subset {mask} is missing")))?;
        }
        if let Some(extra) = ranks.keys().find(|&&k| k == 0 || k >= 1 << m) {
            return Err(Error::InvalidArgument(format!("subset {extra} is outside the ground set")));
        }
        Ok(RankFunction { m, ranks: table })
    }

    pub fn from_fn(m: usize, f: impl Fn(u64) -> usize) -> Result<Self> {
        Self::new(m, (1..1u64 << m).map(|mask| (mask, f(mask))).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn rank(&self, mask: u64) -> usize {
        self.ranks[mask as usize]
    }

    pub fn set(&mut self, mask: u64, rank: usize) {
        assert!(mask != 0, "r(∅) is not stored");
        self.ranks[mask as usize] = rank;
    }

    pub fn to_map(&self) -> BTreeMap<u64, usize> {
        (1..1u64 << self.m).map(|mask| (mask, self.rank(mask))).collect()
    }
}

impl Serialize for RankFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RankFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<u64, usize>::deserialize(d)?;
        let size = map.len() + 1;
        if !size.is_power_of_two() {
            return Err(serde::de::Error::custom("a rank function lists all 2^m - 1 nonempty subsets"));
        }
        RankFunction::new(size.trailing_zeros() as usize, map).map_err(serde::de::Error::custom)
    }
}

/// `r(I) = codim L_I`.
pub fn matroid_from_arrangement<F: Field>(arr: &Arrangement<F>) -> Result<RankFunction> {
    if !is_hyperplane_arrangement(arr) {
        return Err(Error::NotHyperplanes);
    }
    if !is_central(arr) {
        return Err(Error::NotCentral);
    }
    let m = arr.len();
    if m > MAX_MATROID_PLANES {
        return Err(Error::SizeLimit { what: "matroid ground set", got: m, limit: MAX_MATROID_PLANES });
    }
    let sig = dimensional_data(arr)?;
    let n = arr.ambient_dim();
    RankFunction::from_fn(m, |mask| n - sig.dim(mask).expect("central arrangements have nonempty intersections"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: u8,
    /// Subsets involved, as bitmasks.
    pub sets: Vec<u64>,
    pub message: String,
}

/// Axioms: `1 ≤ r(I) ≤ |I|`; monotonicity; submodularity
/// `r(I∩J) + r(I∪J) ≤ r(I) + r(J)` where `I ∩ J` is nonempty. With
/// `empty_set_rank_zero`, submodularity is also required for disjoint pairs
/// with `r(∅) = 0`.
///
/// Monotonicity and submodularity are checked on covering steps
/// (`I ⊂ I+x`, and the square `I, I+x, I+y, I+x+y`), which is equivalent to
/// the full conditions on each interval.
pub fn check_matroid_axioms(r: &RankFunction, empty_set_rank_zero: bool) -> Vec<AxiomViolation> {
    let m = r.m;
    let full = 1u64 << m;
    let mut out = Vec::new();
    for i in 1..full {
        let size = i.count_ones() as usize;
        let ri = r.rank(i);
        if ri < 1 || ri > size {
            out.push(AxiomViolation { axiom: 1, sets: vec![i], message: format!("r({}) = {ri} outside [1, {size}]", show(i)) });
        }
    }
    for i in 1..full {
        for x in (0..m).filter(|x| i >> x & 1 == 0) {
            let j = i | 1 << x;
            if r.rank(i) > r.rank(j) {
                out.push(AxiomViolation {
                    axiom: 2,
                    sets: vec![i, j],
                    message: format!("r({}) = {} > r({}) = {}", show(i), r.rank(i), show(j), r.rank(j)),
                });
            }
        }
    }
    let start = if empty_set_rank_zero { 0 } else { 1 };
    for i in start..full {
        let ri = if i == 0 { 0 } else { r.rank(i) };
        for x in (0..m).filter(|x| i >> x & 1 == 0) {
            for y in (x + 1..m).filter(|y| i >> y & 1 == 0) {
                let (a, b, ab) = (i | 1 << x, i | 1 << y, i | 1 << x | 1 << y);
                if ri + r.rank(ab) > r.rank(a) + r.rank(b) {
                    out.push(AxiomViolation {
                        axiom: 3,
                        sets: vec![a, b],
                        message: format!(
                            "r({}) + r({}) = {} > r({}) + r({}) = {}",
                            show(i),
                            show(ab),
                            ri + r.rank(ab),
                            show(a),
                            show(b),
                            r.rank(a) + r.rank(b)
                        ),
                    });
                }
            }
        }
    }
    out
}

fn show(mask: u64) -> String {
    let items: Vec<String> = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Whether two arrangements have the same `dim L_I` (or emptiness) for
/// every `I`.
pub fn same_dimensional_data<F: Field, G: Field>(a: &Arrangement<F>, b: &Arrangement<G>) -> Result<bool> {
    if a.len() != b.len() || a.ambient_dim() != b.ambient_dim() {
        return Err(Error::InvalidArgument(format!(
            "cannot compare {} planes in dimension {} with {} planes in dimension {}",
            a.len(),
            a.ambient_dim(),
            b.len(),
            b.ambient_dim()
        )));
    }
    let (sa, sb) = (dimensional_data(a)?, dimensional_data(b)?);
    let same = sa.entries().zip(sb.entries()).all(|(x, y)| x == y);
    Ok(same)
}

/// One rank condition of the ten-line configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MnevConstraint {
    pub name: String,
    /// 1-based line numbers.
    pub lines: Vec<usize>,
    pub expected: usize,
    pub rank: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MnevReport {
    pub alpha: Gaussian,
    /// Projective line coordinates `(a, b, c)` of `a x + b y + c = 0`.
    pub lines: Vec<[Gaussian; 3]>,
    pub constraints: Vec<MnevConstraint>,
    pub passed: bool,
    /// Name of the first constraint that fails.
    pub failure: Option<String>,
}

impl MnevReport {
    pub fn summary(&self) -> String {
        match &self.failure {
            None => "PASS".to_string(),
            Some(name) => format!("FAIL at {name}"),
        }
    }
}

fn cross(u: &[Gaussian; 3], v: &[Gaussian; 3]) -> [Gaussian; 3] {
    let c = |i: usize, j: usize| u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn rank_of(vs: &[&[Gaussian; 3]]) -> usize {
    Matrix::from_rows(3, vs.iter().map(|v| v.to_vec()).collect()).rank()
}

fn g(v: i64) -> Gaussian {
    Gaussian::from_i64(v)
}

/// Builds the ten lines for the parameter `alpha` and evaluates every rank
/// condition. `L1` is the line at infinity, `L2 = {x = 0}`, `L3 = {y = 0}`,
/// and `L4` passes through `(0, 1)` and `(1, 0)`. `L5` meets `L2` at
/// `(0, α)`; each later line is the join of two points made from earlier
/// lines, and parallelism is incidence with a point of `L1`.
pub fn mnev_check(alpha: &Gaussian) -> Result<MnevReport> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    let mut lines: Vec<[Gaussian; 3]> = vec![
        [g(0), g(0), g(1)],
        [g(1), g(0), g(0)],
        [g(0), g(1), g(0)],
        [g(1), g(1), g(-1)],
    ];
    type Step = fn(&[[Gaussian; 3]], &Gaussian) -> ([Gaussian; 3], [Gaussian; 3]);
    // each later line as the join of two points
    let steps: [Step; 6] = [
        |l, a| (cross(&l[2], &l[3]), [g(0), a.clone(), g(1)]),
        |l, _| (cross(&l[4], &l[1]), cross(&l[3], &l[0])),
        |l, _| (cross(&l[5], &l[2]), cross(&l[4], &l[0])),
        |l, _| (cross(&l[6], &l[1]), cross(&l[3], &l[0])),
        |l, _| (cross(&l[2], &l[3]), cross(&l[6], &l[1])),
        |l, _| (cross(&l[1], &l[3]), cross(&l[2], &l[7])),
    ];
    for (k, step) in steps.iter().enumerate() {
        let number = k + 5;
        let (p, q) = step(&lines, alpha);
        let line = cross(&p, &q);
        if line.iter().all(Field::is_zero) {
            return Err(Error::Construction { step: format!("L{number} is undefined") });
        }
        if let Some(j) = lines.iter().position(|l| rank_of(&[l, &line]) == 1) {
            return Err(Error::Construction { step: format!("L{number} = L{}", j + 1) });
        }
        lines.push(line);
    }

    let conditions: Vec<(Vec<usize>, usize)> = vec![
        (vec![1, 2, 3], 3),
        (vec![1, 2, 4], 3),
        (vec![1, 3, 4], 3),
        (vec![2, 3, 4], 3),
        (vec![3, 4, 5], 2),
        (vec![2, 5, 6], 2),
        (vec![1, 4, 6], 2),
        (vec![3, 6, 7], 2),
        (vec![1, 5, 7], 2),
        (vec![2, 7, 8], 2),
        (vec![1, 4, 6, 8], 2),
        (vec![3, 4, 5, 9], 2),
        (vec![2, 7, 8, 9], 2),
        (vec![2, 4, 10], 2),
        (vec![3, 8, 10], 2),
        (vec![1, 9, 10], 2),
    ];
    let constraints: Vec<MnevConstraint> = conditions
        .into_iter()
        .map(|(ls, expected)| {
            let rank = rank_of(&ls.iter().map(|&i| &lines[i - 1]).collect::<Vec<_>>());
            let names: Vec<String> = ls.iter().map(|i| format!("L{i}")).collect();
            MnevConstraint { name: format!("r({})={expected}", names.join(",")), lines: ls, expected, rank, holds: rank == expected }
        })
        .collect();
    let failure = constraints.iter().find(|c| !c.holds).map(|c| c.name.clone());
    Ok(MnevReport { alpha: alpha.clone(), lines, passed: failure.is_none(), constraints, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::diagonal_arrangement;
    use crate::linalg::Rational;

    #[test]
    fn arrangement_matroids() {
        let three = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let r = matroid_from_arrangement(&three).unwrap();
        assert_eq!((r.rank(0b001), r.rank(0b011), r.rank(0b111)), (1, 2, 2));
        assert!(check_matroid_axioms(&r, false).is_empty());
        assert!(check_matroid_axioms(&r, true).is_empty());

        let a32 = diagonal_arrangement::<Gaussian>(3, 2).unwrap();
        assert_eq!(matroid_from_arrangement(&a32).unwrap().rank(0b111), 2);

        let affine = Arrangement::<Rational>::from_i64_hyperplanes(1, &[&[1, 1]]).unwrap();
        assert!(matches!(matroid_from_arrangement(&affine), Err(Error::NotCentral)));
    }

    #[test]
    fn violations() {
        let mut r = RankFunction::from_fn(2, |m| m.count_ones() as usize).unwrap();
        r.set(0b11, 3);
        let v = check_matroid_axioms(&r, false);
        assert!(v.iter().any(|x| x.axiom == 1 && x.sets == vec![0b11]));

        // r({1,2}) + r({1,3}) < r({1}) + r({1,2,3})
        let ranks = BTreeMap::from([(0b001, 1), (0b010, 1), (0b100, 1), (0b011, 1), (0b101, 1), (0b110, 2), (0b111, 2)]);
        let r = RankFunction::new(3, ranks).unwrap();
        let v = check_matroid_axioms(&r, false);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].axiom, v[0].sets.clone()), (3, vec![0b011, 0b101]));
    }

    #[test]
    fn rank_function_json() {
        let r = RankFunction::from_fn(2, |m| m.count_ones() as usize).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"1":1,"2":1,"3":2}"#);
        assert_eq!(serde_json::from_str::<RankFunction>(&s).unwrap(), r);
        assert!(serde_json::from_str::<RankFunction>(r#"{"1":1,"2":1}"#).is_err());
    }

    #[test]
    fn dimensional_data_comparison() {
        let generic = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]).unwrap();
        let concurrent = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let rotated = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[0, 1, 0], &[-1, 0, 0], &[-1, 1, 1]]).unwrap();
        assert!(!same_dimensional_data(&generic, &concurrent).unwrap());
        assert!(same_dimensional_data(&generic, &rotated).unwrap());
        let two = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(same_dimensional_data(&generic, &two).is_err());
    }

    #[test]
    fn mnev_configuration() {
        for a in [Gaussian::i(), -Gaussian::i()] {
            let r = mnev_check(&a).unwrap();
            assert!(r.passed, "{}", r.summary());
            assert_eq!(r.summary(), "PASS");
        }
        let r = mnev_check(&Gaussian::from_ints(2, 0)).unwrap();
        assert_eq!(r.summary(), "FAIL at r(L1,L9,L10)=2");
        assert_eq!(r.constraints.iter().filter(|c| !c.holds).count(), 1);
        assert_eq!(mnev_check(&Gaussian::one()), Err(Error::Construction { step: "L5 = L4".into() }));
        assert_eq!(mnev_check(&Gaussian::from_ints(-1, 0)), Err(Error::Construction { step: "L8 = L4".into() }));
        assert!(matches!(mnev_check(&Gaussian::zero()), Err(Error::InvalidArgument(_))));
    }
}
