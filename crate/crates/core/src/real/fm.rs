//! Exact feasibility of mixed strict / non-strict linear inequality systems
//! by Fourier–Motzkin elimination, with a witness recovered by
//! back-substitution.

use std::collections::HashSet;

use crate::linalg::{Field, Rational};

/// `coeffs · x > rhs` when `strict`, otherwise `coeffs · x ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational, strict: bool) -> Self {
        Inequality { coeffs, rhs, strict }
    }

    /// `sign · (coeffs · x − rhs) > 0`.
    pub fn signed(coeffs: &[Rational], rhs: &Rational, sign: i32) -> Self {
        let s = Rational::from_i64(sign as i64);
        Inequality { coeffs: coeffs.iter().map(|c| c * &s).collect(), rhs: rhs * &s, strict: true }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }

    // scale so the last nonzero coefficient is ±1; equal constraints then dedupe
    fn normalized(mut self) -> Self {
        if let Some(c) = self.coeffs.iter().rev().find(|c| !c.is_zero()).map(Rational::abs) {
            for v in &mut self.coeffs {
                *v = &*v / &c;
            }
            self.rhs = &self.rhs / &c;
        }
        self
    }
}

/// A feasible point, or `None`. Every system over zero variables is decided
/// directly.
pub fn feasible_point(n: usize, system: &[Inequality]) -> Option<Vec<Rational>> {
    let mut stages: Vec<Vec<Inequality>> = Vec::with_capacity(n + 1);
    let mut current: Vec<Inequality> = system.iter().cloned().map(Inequality::normalized).collect();
    dedup(&mut current);
    for k in (0..n).rev() {
        let next = eliminate(&current, k);
        stages.push(current);
        current = next;
    }
    // no variables left: each constraint reads 0 > rhs or 0 ≥ rhs
    if !current.iter().all(|c| c.holds(&[])) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (k, stage) in (0..n).zip(stages.iter().rev()) {
        x[k] = choose(stage, &x, k)?;
    }
    debug_assert!(system.iter().all(|c| c.holds(&x)));
    Some(x)
}

pub fn is_feasible(n: usize, system: &[Inequality]) -> bool {
    feasible_point(n, system).is_some()
}

fn dedup(v: &mut Vec<Inequality>) {
    let mut seen = HashSet::new();
    v.retain(|c| seen.insert(c.clone()));
    // a strict and a weak copy of the same constraint: keep only the strict one
    let strict: HashSet<(Vec<Rational>, Rational)> =
        v.iter().filter(|c| c.strict).map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    v.retain(|c| c.strict || !strict.contains(&(c.coeffs.clone(), c.rhs.clone())));
}

/// Removes variable `k` (all variables above `k` are already gone).
fn eliminate(system: &[Inequality], k: usize) -> Vec<Inequality> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    for c in system {
        match c.coeffs[k].signum() {
            1 => lower.push(c),
            -1 => upper.push(c),
            _ => out.push(c.clone()),
        }
    }
    for l in &lower {
        for u in &upper {
            // l: a x_k + p·x' ⋈ r,  u: −b x_k + q·x' ⋈ s, with a, b > 0
            let a = &l.coeffs[k];
            let b = -u.coeffs[k].clone();
            let coeffs: Vec<Rational> = (0..l.coeffs.len())
                .map(|i| if i == k { Rational::zero() } else { &(&l.coeffs[i] * &b) + &(&u.coeffs[i] * a) })
                .collect();
            let rhs = &(&l.rhs * &b) + &(&u.rhs * a);
            out.push(Inequality { coeffs, rhs, strict: l.strict || u.strict }.normalized());
        }
    }
    dedup(&mut out);
    out
}

/// A value for `x_k` satisfying every constraint of `stage` given
/// `x_0..x_{k-1}`; the later coordinates have zero coefficients.
fn choose(stage: &[Inequality], x: &[Rational], k: usize) -> Option<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for c in stage {
        let rest: Rational = (0..k).fold(Rational::zero(), |acc, i| acc + &c.coeffs[i] * &x[i]);
        let a = &c.coeffs[k];
        if a.is_zero() {
            continue;
        }
        let bound = &(&c.rhs - &rest) / a;
        if a.is_positive() {
            // x_k > bound or ≥ bound
            if lo.as_ref().is_none_or(|(v, s)| bound > *v || (bound == *v && c.strict && !s)) {
                lo = Some((bound, c.strict));
            }
        } else if hi.as_ref().is_none_or(|(v, s)| bound < *v || (bound == *v && c.strict && !s)) {
            hi = Some((bound, c.strict));
        }
    }
    let one = Rational::one();
    let v = match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some((l, _)), None) => &l + &one,
        (None, Some((h, _))) => &h - &one,
        (Some((l, ls)), Some((h, hs))) => {
            if l < h {
                &(&l + &h) / &Rational::from_i64(2)
            } else if l == h && !ls && !hs {
                l
            } else {
                return None;
            }
        }
    };
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ineq(c: &[i64], r: i64, strict: bool) -> Inequality {
        Inequality::new(c.iter().map(|&v| Rational::from_i64(v)).collect(), Rational::from_i64(r), strict)
    }

    #[test]
    fn open_triangle() {
        // x > 0, y > 0, x + y < 1
        let sys = [ineq(&[1, 0], 0, true), ineq(&[0, 1], 0, true), ineq(&[-1, -1], -1, true)];
        let p = feasible_point(2, &sys).unwrap();
        assert!(sys.iter().all(|c| c.holds(&p)));
    }

    #[test]
    fn strictness_matters() {
        // x ≥ 1 and x ≤ 1 is a point; x > 1 and x ≤ 1 is empty
        assert_eq!(feasible_point(1, &[ineq(&[1], 1, false), ineq(&[-1], -1, false)]), Some(vec![Rational::from_i64(1)]));
        assert!(!is_feasible(1, &[ineq(&[1], 1, true), ineq(&[-1], -1, false)]));
        assert!(!is_feasible(0, &[ineq(&[], 0, true)]));
        assert!(is_feasible(0, &[ineq(&[], 0, false)]));
    }

    #[test]
    fn parallel_strips() {
        // 0 < x + y < 1 and 2 < x + y
        assert!(!is_feasible(2, &[ineq(&[1, 1], 0, true), ineq(&[-1, -1], -1, true), ineq(&[1, 1], 2, true)]));
        assert!(is_feasible(3, &[ineq(&[1, 1, 0], 0, true), ineq(&[-1, -1, 1], -1, true)]));
    }
}
