//! `D(k) = gcd(f^k - 1, g^k - 1)` over `Q[t]` and its torsion levels.
//!
//! A root `s` of `D(k)` has `f(s)` and `g(s)` both roots of unity; its
//! multiplicity in `D(k)` does not depend on `k`, and it appears exactly for
//! the multiples of its period `d_s`. Grouping roots by period gives monic,
//! pairwise coprime levels `P_d` with `D(k) = prod_{d | k} P_d`, which are
//! peeled off inductively here without ever factoring.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyarith::{self, RatPoly, Rational};
use crate::refine::{proportional_exponents, Independence};

/// Two non-constant polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPair {
    f: RatPoly,
    g: RatPoly,
}

impl PolyPair {
    pub fn new(f: RatPoly, g: RatPoly) -> Result<Self> {
        for (name, p) in [("f", &f), ("g", &g)] {
            if p.is_constant() {
                return Err(Error::precondition(name, format!("{p} is constant")));
            }
        }
        Ok(PolyPair { f, g })
    }

    pub fn f(&self) -> &RatPoly {
        &self.f
    }

    pub fn g(&self) -> &RatPoly {
        &self.g
    }
}

/// Monic `gcd(f^k - 1, g^k - 1)`.
pub fn poly_gcd_k(pair: &PolyPair, k: u64) -> Result<RatPoly> {
    if k == 0 {
        return Err(Error::precondition("k", "k must be positive"));
    }
    let one = RatPoly::one();
    (pair.f.pow(k) - &one).gcd(&(pair.g.pow(k) - &one))
}

/// `D(1), ..., D(k_max)`, computed in parallel.
pub fn gcd_sequence(pair: &PolyPair, k_max: u64) -> Result<Vec<RatPoly>> {
    (1..=k_max)
        .into_par_iter()
        .map(|k| poly_gcd_k(pair, k))
        .collect()
}

/// `f^r = g^s` test, constants included.
pub fn mult_indep_poly(pair: &PolyPair) -> Independence {
    let basis = polyarith::coprime_basis(&[pair.f.clone(), pair.g.clone()])
        .expect("pair members are non-constant");
    let [ff, fg] = &basis.factorizations[..] else {
        unreachable!("one factorization per input");
    };
    let Some((r, s)) = proportional_exponents(&ff.exponents, &fg.exponents) else {
        return Independence::Independent;
    };
    // Monic parts agree for every multiple m(r, s); the constants need
    // (cf^r / cg^s)^m = 1, and the only rational roots of unity are ±1.
    let cf = ff.unit.coeff(0);
    let cg = fg.unit.coeff(0);
    let ratio = pow_rational(&cf, r) / pow_rational(&cg, s);
    if ratio.is_one() {
        Independence::Dependent { r, s }
    } else if (-ratio).is_one() {
        Independence::Dependent { r: 2 * r, s: 2 * s }
    } else {
        Independence::Independent
    }
}

fn pow_rational(x: &Rational, e: u64) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Torsion levels extracted from `D(1..=k_scanned)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionLevels {
    /// `d -> P_d` for every level with `P_d != 1`.
    pub levels: BTreeMap<u64, RatPoly>,
    /// Product of all levels; every scanned `D(k)` divides it.
    pub h_candidate: RatPoly,
    /// Levels `d >= 2`, ascending.
    pub progressions: Vec<u64>,
    pub k_scanned: u64,
    /// No new level in the last `stability_window` values of `d`.
    pub stabilized: bool,
}

impl TorsionLevels {
    /// `prod_{d | k} P_d`.
    pub fn product_for(&self, k: u64) -> RatPoly {
        self.levels
            .iter()
            .filter(|(d, _)| k % **d == 0)
            .fold(RatPoly::one(), |acc, (_, p)| &acc * p)
    }
}

/// Computes `D(d)` for `d = 1..=k_max` and peels off the levels.
pub fn torsion_levels(pair: &PolyPair, k_max: u64, stability_window: u64) -> Result<TorsionLevels> {
    if k_max < 2 {
        return Err(Error::precondition("k_max", "must be at least 2"));
    }
    let values = gcd_sequence(pair, k_max)?;
    levels_from_sequence(&values, stability_window)
}

/// Level extraction from a precomputed `D(1..)` sequence (`values[k - 1] = D(k)`).
pub fn levels_from_sequence(values: &[RatPoly], stability_window: u64) -> Result<TorsionLevels> {
    if stability_window == 0 {
        return Err(Error::precondition("stability_window", "must be at least 1"));
    }
    let k_max = values.len() as u64;
    let mut levels: BTreeMap<u64, RatPoly> = BTreeMap::new();
    for (idx, dk) in values.iter().enumerate() {
        let d = idx as u64 + 1;
        let known = levels
            .iter()
            .filter(|(j, _)| d % **j == 0)
            .fold(RatPoly::one(), |acc, (_, p)| &acc * p);
        let level = dk.exact_div(&known).ok_or_else(|| Error::StructuralFailure {
            k: d,
            detail: format!("D({d}) = {dk} is not divisible by the lower levels {known}"),
        })?;
        if !level.is_one() {
            levels.insert(d, level.monic());
        }
    }

    let out = TorsionLevels {
        h_candidate: levels.values().fold(RatPoly::one(), |acc, p| &acc * p),
        progressions: levels.keys().copied().filter(|&d| d >= 2).collect(),
        stabilized: levels
            .keys()
            .all(|&d| d + stability_window <= k_max),
        k_scanned: k_max,
        levels,
    };

    for (idx, dk) in values.iter().enumerate() {
        let k = idx as u64 + 1;
        let rebuilt = out.product_for(k);
        if &rebuilt != dk {
            return Err(Error::StructuralFailure {
                k,
                detail: format!("D({k}) = {dk} but the levels multiply to {rebuilt}"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionViolation {
    pub k: u64,
    pub gcd: RatPoly,
    /// Whether the progressions predicted `D(k) = D(1)`.
    pub predicted_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionReport {
    pub verified_up_to: u64,
    /// `gcd(f - 1, g - 1)` when it is not 1; it then divides every `D(k)`
    /// and the check compares `D(k)` against it instead of against 1.
    pub always_divides: Option<RatPoly>,
    pub violations: Vec<ProgressionViolation>,
}

impl ProgressionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `D(k) = 1  <=>  no progression modulus divides k` for `k <= k_max`.
pub fn progression_check(
    pair: &PolyPair,
    levels: &TorsionLevels,
    k_max: u64,
) -> Result<ProgressionReport> {
    if k_max == 0 {
        return Err(Error::precondition("k_max", "must be at least 1"));
    }
    let values = gcd_sequence(pair, k_max)?;
    Ok(check_progressions(&values, &levels.progressions))
}

/// Same check on a precomputed sequence (`values[k - 1] = D(k)`).
pub fn check_progressions(values: &[RatPoly], progressions: &[u64]) -> ProgressionReport {
    let base = values.first().cloned().unwrap_or_else(RatPoly::one);
    let violations = values
        .iter()
        .enumerate()
        .filter_map(|(idx, dk)| {
            let k = idx as u64 + 1;
            let predicted_trivial = !progressions.iter().any(|d| k % d == 0);
            let trivial = *dk == base;
            (predicted_trivial != trivial).then(|| ProgressionViolation {
                k,
                gcd: dk.clone(),
                predicted_trivial,
            })
        })
        .collect();
    ProgressionReport {
        verified_up_to: values.len() as u64,
        always_divides: (!base.is_one() && !base.is_zero()).then_some(base),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    fn pair(f: &str, g: &str) -> PolyPair {
        PolyPair::new(p(f), p(g)).unwrap()
    }

    #[test]
    fn pair_rejects_constants() {
        assert!(PolyPair::new(p("3"), p("t")).is_err());
        assert!(PolyPair::new(p("t"), p("0")).is_err());
    }

    #[test]
    fn gcd_k_examples() {
        let tt1 = pair("t", "t+1");
        assert_eq!(poly_gcd_k(&tt1, 6).unwrap(), p("t^2+t+1"));
        assert_eq!(poly_gcd_k(&tt1, 3).unwrap(), RatPoly::one());
        assert_eq!(poly_gcd_k(&tt1, 1).unwrap(), RatPoly::one());
        assert!(poly_gcd_k(&tt1, 0).is_err());
    }

    #[test]
    fn levels_for_t_and_t_plus_one() {
        let lv = torsion_levels(&pair("t", "t+1"), 36, 12).unwrap();
        assert_eq!(lv.levels.len(), 1);
        assert_eq!(lv.levels[&6], p("t^2+t+1"));
        assert_eq!(lv.h_candidate, p("t^2+t+1"));
        assert_eq!(lv.progressions, vec![6]);
        assert!(lv.stabilized);
        assert_eq!(lv.k_scanned, 36);
    }

    #[test]
    fn dependent_pair_never_stabilizes() {
        // gcd(t^2k - 1, t^3k - 1) = t^k - 1, so every d is a level.
        let lv = torsion_levels(&pair("t^2", "t^3"), 12, 3).unwrap();
        assert_eq!(lv.levels.len(), 12);
        assert_eq!(lv.levels[&1], p("t-1"));
        assert_eq!(lv.levels[&4], p("t^2+1"));
        assert!(!lv.stabilized);
    }

    #[test]
    fn levels_for_t_and_minus_t() {
        // Brute-force sympy oracle over k <= 12.
        let lv = torsion_levels(&pair("t", "-t"), 12, 4).unwrap();
        let expected: BTreeMap<u64, RatPoly> = [
            (2, "t^2-1"),
            (4, "t^2+1"),
            (6, "t^4+t^2+1"),
            (8, "t^4+1"),
            (10, "t^8+t^6+t^4+t^2+1"),
            (12, "t^4-t^2+1"),
        ]
        .into_iter()
        .map(|(d, s)| (d, p(s)))
        .collect();
        assert_eq!(lv.levels, expected);
        assert!(!lv.stabilized);
    }

    #[test]
    fn inexact_sequence_is_a_structural_failure() {
        // D(2) must be divisible by D(1).
        let fake = vec![p("t-1"), p("t+1")];
        let err = levels_from_sequence(&fake, 1).unwrap_err();
        assert!(matches!(err, Error::StructuralFailure { k: 2, .. }));
    }

    #[test]
    fn independence_examples() {
        assert_eq!(
            mult_indep_poly(&pair("t^2", "t^3")),
            Independence::Dependent { r: 3, s: 2 }
        );
        assert_eq!(mult_indep_poly(&pair("t", "t+1")), Independence::Independent);
        assert_eq!(mult_indep_poly(&pair("2*t^2", "4*t^3")), Independence::Independent);
        assert_eq!(
            mult_indep_poly(&pair("2*t^2", "2*t^3")),
            Independence::Independent
        );
        assert_eq!(
            mult_indep_poly(&pair("4*t^2", "8*t^3")),
            Independence::Dependent { r: 3, s: 2 }
        );
        // (-t)^2 = t^2, while -t != t.
        assert_eq!(
            mult_indep_poly(&pair("t", "-t")),
            Independence::Dependent { r: 2, s: 2 }
        );
        assert_eq!(
            mult_indep_poly(&pair("t^2+2*t+1", "-t-1")),
            Independence::Dependent { r: 1, s: 2 }
        );
    }

    #[test]
    fn progression_check_examples() {
        let tt1 = pair("t", "t+1");
        let lv = torsion_levels(&tt1, 36, 12).unwrap();
        let report = progression_check(&tt1, &lv, 60).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.verified_up_to, 60);
        assert_eq!(report.always_divides, None);

        let mut forced = lv.clone();
        forced.progressions.clear();
        let report = progression_check(&tt1, &forced, 6).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].k, 6);
        assert!(report.violations[0].predicted_trivial);

        let same = pair("t", "t");
        let lv = torsion_levels(&same, 6, 2).unwrap();
        let report = progression_check(&same, &lv, 6).unwrap();
        assert_eq!(report.always_divides, Some(p("t-1")));
        assert!(report.is_clean());
    }

    #[test]
    fn rational_coefficients_are_supported() {
        // f = 2t has f(1/2) = 1 and g = t + 1/2 has g(1/2) = 1.
        let pr = pair("2*t", "t+1/2");
        assert_eq!(poly_gcd_k(&pr, 1).unwrap(), p("t-1/2"));
        let lv = torsion_levels(&pr, 12, 3).unwrap();
        assert_eq!(lv.levels[&1], p("t-1/2"));
    }
}
