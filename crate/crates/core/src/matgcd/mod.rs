//! Contents of `A^k - I` for integer and polynomial matrices.

mod eigen;
mod matrix;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::GcdDomain;
use crate::error::{Error, Result};
use crate::numeric::{ln_abs, ols_slope};
use crate::polyarith::{self, RatPoly};

pub use eigen::{char_poly, eigen_mult_indep, polynomial_eigenvalues, EigenReport, EigenVerdict};
pub use matrix::{IntMat, Matrix, PolyMat};

/// Normalized gcd of all entries.
pub fn mat_content<R: GcdDomain>(m: &Matrix<R>) -> Result<R> {
    m.content().ok_or(Error::UndefinedContent)
}

/// `A^k - I` for `k >= 1`.
pub fn mat_pow_minus_identity<R: GcdDomain>(a: &Matrix<R>, k: u64) -> Result<Matrix<R>> {
    if k == 0 {
        return Err(Error::precondition("k", "must be at least 1"));
    }
    Ok(a.pow(k).minus_identity())
}

fn content_or_zero<R: GcdDomain>(m: &Matrix<R>) -> R {
    m.content().unwrap_or_else(R::zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityRow {
    pub k: u64,
    /// `content(A^k - I)`, or 0 when `A^k = I`.
    pub content: BigInt,
    pub is_primitive: bool,
    pub det: BigInt,
    pub content_divides_det: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivitySurvey {
    pub base_content: BigInt,
    pub rows: Vec<PrimitivityRow>,
    pub warnings: Vec<String>,
}

impl PrimitivitySurvey {
    pub fn primitive_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_primitive).count()
    }
}

/// Contents of `A^k - I` for `k = 1..=k_max`; parallel over `k`.
pub fn primitivity_survey(a: &IntMat, k_max: u64) -> Result<PrimitivitySurvey> {
    if k_max == 0 {
        return Err(Error::precondition("k_max", "must be at least 1"));
    }
    if a.det().is_zero() {
        return Err(Error::precondition("matrix", "must be nonsingular"));
    }
    let base_content = content_or_zero(&a.minus_identity());
    let mut warnings = Vec::new();
    if !base_content.is_one() {
        warnings.push(format!(
            "content(A - I) = {base_content}, so no power of A is primitive"
        ));
    }

    let rows = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let m = a.pow(k).minus_identity();
            let content = content_or_zero(&m);
            let det = m.det();
            PrimitivityRow {
                k,
                is_primitive: content.is_one(),
                content_divides_det: GcdDomain::divides(&content, &det),
                content,
                det,
            }
        })
        .collect::<Vec<_>>();

    if let Some(row) = rows
        .iter()
        .find(|r| !GcdDomain::divides(&base_content, &r.content))
    {
        return Err(Error::StructuralFailure {
            k: row.k,
            detail: format!(
                "content(A - I) = {base_content} does not divide content(A^{} - I) = {}",
                row.k, row.content
            ),
        });
    }
    Ok(PrimitivitySurvey {
        base_content,
        rows,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSample {
    pub k: u64,
    pub content: BigInt,
    pub log_content: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub trace: BigInt,
    /// Dominant eigenvalue `(|tr| + sqrt(tr^2 - 4)) / 2`.
    pub epsilon: f64,
    pub samples: Vec<GrowthSample>,
    /// Least-squares slope of `log content` against `k` over `[k_max/2, k_max]`.
    pub fitted_slope: f64,
    /// `log(epsilon) / 2`.
    pub theoretical_slope: f64,
}

/// Growth of `content(A^k - I)` for a hyperbolic `A` in `SL_2(Z)`.
pub fn hyperbolic_growth(a: &IntMat, k_max: u64) -> Result<GrowthReport> {
    if a.size() != 2 {
        return Err(Error::precondition("matrix", "must be 2x2"));
    }
    if !a.det().is_one() {
        return Err(Error::precondition("matrix", "determinant must be 1"));
    }
    let trace = a.trace();
    if trace.abs() <= BigInt::from(2) {
        return Err(Error::precondition(
            "matrix",
            format!("|trace| = {} is not greater than 2", trace.abs()),
        ));
    }
    if k_max < 2 {
        return Err(Error::precondition("k_max", "must be at least 2"));
    }

    let samples: Vec<GrowthSample> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let content = content_or_zero(&a.pow(k).minus_identity());
            GrowthSample {
                k,
                log_content: ln_abs(&content),
                content,
            }
        })
        .collect();

    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.k >= k_max / 2)
        .map(|s| (s.k as f64, s.log_content))
        .collect();
    let tr = trace.abs().to_f64().expect("trace fits f64");
    let epsilon = (tr + (tr * tr - 4.0).sqrt()) / 2.0;
    Ok(GrowthReport {
        trace,
        epsilon,
        fitted_slope: ols_slope(&points),
        theoretical_slope: epsilon.ln() / 2.0,
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProgression {
    /// Monic squarefree factor of `H`.
    pub factor: RatPoly,
    /// Smallest `k` with `factor | C(k)`.
    pub first_k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorViolation {
    pub k: u64,
    pub factor: RatPoly,
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatSurvey {
    /// `C(k) = content(A^k - I)`, `contents[k - 1]`; 0 when `A^k = I`.
    pub contents: Vec<RatPoly>,
    /// Monic lcm of the nonzero `C(k)`.
    pub h: RatPoly,
    pub factors: Vec<FactorProgression>,
    /// Distinct `first_k >= 2`, ascending.
    pub progressions: Vec<u64>,
    /// Cases where `factor | C(k)` disagrees with `first_k | k`.
    pub violations: Vec<FactorViolation>,
    /// `H` did not change over the last `stability_window` values of `k`.
    pub stabilized: bool,
    /// `k` with `C(k)` not dividing `det(A^k - I)`.
    pub det_failures: Vec<u64>,
}

/// Contents of `A^k - I` over `Q[t]` and their arithmetic progressions.
pub fn pm_survey(a: &PolyMat, k_max: u64, stability_window: u64) -> Result<PolyMatSurvey> {
    if k_max == 0 {
        return Err(Error::precondition("k_max", "must be at least 1"));
    }
    if stability_window == 0 {
        return Err(Error::precondition("stability_window", "must be at least 1"));
    }
    if a.det().is_zero() {
        return Err(Error::precondition("matrix", "must be nonsingular"));
    }

    let rows: Vec<(RatPoly, bool)> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let m = a.pow(k).minus_identity();
            let content = content_or_zero(&m);
            let ok = GcdDomain::divides(&content, &m.det());
            (content, ok)
        })
        .collect();
    let det_failures = (1..=k_max)
        .zip(&rows)
        .filter(|(_, (_, ok))| !ok)
        .map(|(k, _)| k)
        .collect();
    let contents: Vec<RatPoly> = rows.into_iter().map(|(c, _)| c).collect();

    let mut h = RatPoly::one();
    let mut last_growth = 0;
    for (k, c) in (1..=k_max).zip(&contents) {
        if c.is_zero() {
            continue;
        }
        let next = GcdDomain::lcm(&h, c);
        if next != h {
            h = next;
            last_growth = k;
        }
    }

    let nontrivial: Vec<RatPoly> = contents
        .iter()
        .filter(|c| !c.is_zero() && !c.is_constant())
        .map(polyarith::squarefree_part)
        .collect::<Result<_>>()?;
    let mut factors: Vec<FactorProgression> = if nontrivial.is_empty() {
        Vec::new()
    } else {
        polyarith::coprime_basis(&nontrivial)?
            .basis
            .into_iter()
            .map(|w| {
                let first_k = (1..=k_max)
                    .zip(&contents)
                    .find(|(_, c)| !c.is_zero() && w.divides(c))
                    .map(|(k, _)| k)
                    .expect("basis factor divides some content");
                FactorProgression { factor: w, first_k }
            })
            .collect()
    };
    factors.sort_by(|x, y| x.first_k.cmp(&y.first_k).then_with(|| x.factor.cmp(&y.factor)));

    let mut violations = Vec::new();
    for f in &factors {
        for (k, c) in (1..=k_max).zip(&contents) {
            let divides = c.is_zero() || f.factor.divides(c);
            if divides != (k % f.first_k == 0) {
                violations.push(FactorViolation {
                    k,
                    factor: f.factor.clone(),
                    divides,
                });
            }
        }
    }
    violations.sort_by_key(|v| v.k);

    let mut progressions: Vec<u64> = factors
        .iter()
        .map(|f| f.first_k)
        .filter(|&d| d >= 2)
        .collect();
    progressions.sort_unstable();
    progressions.dedup();

    Ok(PolyMatSurvey {
        stabilized: last_growth + stability_window <= k_max,
        contents,
        h,
        factors,
        progressions,
        violations,
        det_failures,
    })
}
