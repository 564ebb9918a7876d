//! Rank-one local systems on complements of complex hyperplane
//! arrangements: monodromy data, the closed-form dimension predictions for
//! generic and for complexified real normal-crossing arrangements, and the
//! explicit cellular model on the punctured line.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::{is_hyperplane_arrangement, is_normal_crossings, Arrangement};
use crate::homology::{DegreeHomology, HomologySummary};
use crate::linalg::{Field, Gaussian, Matrix, ParseScalarError, Rational};
use crate::real::count_bounded;
use crate::{Error, Result};

/// A monodromy coefficient: an exact value, or a formal symbol for which
/// `τ − 1` and every product with other formal symbols count as nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tau {
    Value(Gaussian),
    Generic,
}

impl Tau {
    pub fn is_one(&self) -> bool {
        matches!(self, Tau::Value(v) if *v == Gaussian::one())
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tau::Value(v) => v.fmt(f),
            Tau::Generic => f.write_str("generic"),
        }
    }
}

impl Serialize for Tau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Tau {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.trim() == "generic" {
            return Ok(Tau::Generic);
        }
        s.parse().map(Tau::Value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyData {
    pub taus: Vec<Tau>,
    /// Product of all coefficients.
    pub tau0: Tau,
}

impl MonodromyData {
    pub fn new(taus: Vec<Tau>) -> Result<Self> {
        if taus.is_empty() {
            return Err(Error::InvalidArgument("at least one monodromy coefficient is needed".into()));
        }
        if let Some(i) = taus.iter().position(|t| matches!(t, Tau::Value(v) if v.is_zero())) {
            return Err(Error::InvalidArgument(format!("monodromy coefficient {} is zero", i + 1)));
        }
        let tau0 = taus.iter().try_fold(Gaussian::one(), |acc, t| match t {
            Tau::Value(v) => Some(acc * v.clone()),
            Tau::Generic => None,
        });
        let tau0 = tau0.map_or(Tau::Generic, Tau::Value);
        Ok(MonodromyData { taus, tau0 })
    }

    /// `m` copies of one value.
    pub fn constant(m: usize, tau: Tau) -> Result<Self> {
        Self::new(vec![tau; m])
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn any_nontrivial(&self) -> bool {
        self.taus.iter().any(|t| !t.is_one())
    }

    pub fn none_trivial(&self) -> bool {
        self.taus.iter().all(|t| !t.is_one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedPrediction {
    pub applicable: bool,
    pub reason: String,
    /// The only degree with nonzero twisted homology.
    pub degree: usize,
    pub dimension: usize,
    /// Whether the map from ordinary to locally finite twisted homology is an
    /// isomorphism; `None` where no criterion is available.
    pub canonical_map_bijective: Option<bool>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Generic arrangement of `m` hyperplanes in `C^N`.
pub fn resonance_generic(md: &MonodromyData, n: usize) -> TwistedPrediction {
    let m = md.len();
    let applicable = md.any_nontrivial();
    let reason = if applicable {
        "generic arrangement with at least one coefficient different from 1".to_string()
    } else {
        "all coefficients equal 1: the system is trivial".to_string()
    };
    TwistedPrediction {
        applicable,
        reason,
        degree: n,
        dimension: binomial(m.saturating_sub(1), n),
        canonical_map_bijective: Some(md.none_trivial() && !md.tau0.is_one()),
    }
}

/// Complexification of a real arrangement with normal crossings: the
/// dimension is the number of bounded regions of the real part.
pub fn twisted_dim_normal_crossing(arr: &Arrangement<Rational>, md: &MonodromyData) -> Result<TwistedPrediction> {
    if md.len() != arr.len() {
        return Err(Error::InvalidArgument(format!("{} coefficients for {} hyperplanes", md.len(), arr.len())));
    }
    let n = arr.ambient_dim();
    let not = |reason: &str| TwistedPrediction {
        applicable: false,
        reason: reason.to_string(),
        degree: n,
        dimension: 0,
        canonical_map_bijective: None,
    };
    if !is_hyperplane_arrangement(arr) {
        return Ok(not("not a hyperplane arrangement"));
    }
    if !is_normal_crossings(arr)? {
        return Ok(not("not normal crossings"));
    }
    if !md.none_trivial() {
        return Ok(not("some coefficient equals 1"));
    }
    Ok(TwistedPrediction {
        applicable: true,
        reason: "complexified real normal-crossing arrangement, no coefficient equal to 1".to_string(),
        degree: n,
        dimension: count_bounded(arr)?,
        canonical_map_bijective: None,
    })
}

/// Locally finite twisted homology of `C` minus `m` real points, from the
/// cell structure of `m` rays plus one 2-cell whose boundary is
/// `Σ (τ_j − 1) ∇_j`. Ranks are over Q(i).
pub fn one_dim_twisted_complex(points: &[Rational], md: &MonodromyData) -> Result<HomologySummary> {
    if md.len() != points.len() {
        return Err(Error::InvalidArgument(format!("{} coefficients for {} points", md.len(), points.len())));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::CoincidentPoints(i + 1, j + 1));
            }
        }
    }
    let m = points.len();
    // generic entries are formally nonzero; stand in 1 for them
    let column: Vec<Vec<Gaussian>> = md
        .taus
        .iter()
        .map(|t| {
            vec![match t {
                Tau::Value(v) => v.clone() - Gaussian::one(),
                Tau::Generic => Gaussian::one(),
            }]
        })
        .collect();
    let rank = Matrix::from_rows(1, column).rank();
    let degree = |rank| DegreeHomology { rank, torsion: Vec::new() };
    Ok(HomologySummary { reduced: false, degrees: BTreeMap::from([(1, degree(m - rank)), (2, degree(1 - rank))]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taus(vals: &[&str]) -> MonodromyData {
        MonodromyData::new(vals.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn pts(m: i64) -> Vec<Rational> {
        (0..m).map(Rational::from_i64).collect()
    }

    #[test]
    fn generic_predictions() {
        let p = resonance_generic(&taus(&["-1", "-1", "-1"]), 2);
        assert_eq!((p.dimension, p.canonical_map_bijective, p.applicable), (1, Some(true), true));
        let p = resonance_generic(&taus(&["-1", "-1"]), 1);
        assert_eq!((p.dimension, p.canonical_map_bijective), (1, Some(false)));
        assert!(!resonance_generic(&taus(&["1", "1"]), 1).applicable);
        let p = resonance_generic(&taus(&["generic", "i", "2"]), 2);
        assert_eq!(p.canonical_map_bijective, Some(true));
    }

    #[test]
    fn tau_parsing() {
        assert_eq!("generic".parse::<Tau>().unwrap(), Tau::Generic);
        assert_eq!("i".parse::<Tau>().unwrap(), Tau::Value(Gaussian::i()));
        assert!(MonodromyData::new(vec!["0".parse().unwrap()]).is_err());
        assert_eq!(taus(&["i", "i"]).tau0, Tau::Value(Gaussian::from_ints(-1, 0)));
    }

    #[test]
    fn normal_crossing_predictions() {
        let three = Arrangement::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]).unwrap();
        let p = twisted_dim_normal_crossing(&three, &taus(&["i", "i", "i"])).unwrap();
        assert_eq!((p.applicable, p.dimension), (true, 1));
        let parallel = Arrangement::from_i64_hyperplanes(2, &[&[1, 0, 0], &[1, 0, 1]]).unwrap();
        assert_eq!(twisted_dim_normal_crossing(&parallel, &taus(&["-1", "-1"])).unwrap().dimension, 0);
        assert!(!twisted_dim_normal_crossing(&three, &taus(&["1", "i", "i"])).unwrap().applicable);
    }

    #[test]
    fn punctured_line_complex() {
        let h = one_dim_twisted_complex(&pts(1), &taus(&["-1"])).unwrap();
        assert_eq!((h.rank(1), h.rank(2)), (0, 0));
        let h = one_dim_twisted_complex(&pts(3), &taus(&["-1", "-1", "-1"])).unwrap();
        assert_eq!((h.rank(1), h.rank(2)), (2, 0));
        let h = one_dim_twisted_complex(&pts(3), &taus(&["1", "1", "1"])).unwrap();
        assert_eq!((h.rank(1), h.rank(2)), (3, 1));
        let coincident = [Rational::from_i64(1), Rational::from_i64(1)];
        assert!(matches!(one_dim_twisted_complex(&coincident, &taus(&["i", "i"])), Err(Error::CoincidentPoints(1, 2))));
    }
}
