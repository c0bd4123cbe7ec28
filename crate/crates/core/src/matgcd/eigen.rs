//! Polynomial eigenvalues of matrices over `Q[t]`.
//!
//! Only characteristic polynomials that split into factors `y - λ(t)` with
//! polynomial `λ` are handled. Candidates come from rational roots of `χ` at
//! a specialization `t = t0`, lifted to power series in `t - t0` up to the
//! degree of `det A` (a bound on `deg λ`), and are kept only if they divide
//! `χ` exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyMat;
use crate::polyarith::{RatPoly, Rational};
use crate::polygcd::{mult_indep_poly, PolyPair};
use crate::refine::Independence;

/// Characteristic polynomial `det(yI - A)` as coefficients in `y`,
/// ascending: `chi[j]` multiplies `y^j`, `chi[r] = 1`.
pub fn char_poly(a: &PolyMat) -> Vec<RatPoly> {
    // Faddeev-LeVerrier: only ring operations and division by 1..=r.
    let n = a.size();
    let mut coeffs = vec![RatPoly::zero(); n + 1];
    coeffs[n] = RatPoly::one();
    let mut m = PolyMat::scalar(n, RatPoly::zero());
    for k in 1..=n {
        m = a.mul(&m).add_scalar(&coeffs[n - k + 1]);
        let tr = a.mul(&m).trace();
        let scale = Rational::new(BigInt::from(-1), BigInt::from(k));
        coeffs[n - k] = tr.scale(&scale);
    }
    coeffs
}

fn eval_char(chi: &[RatPoly], y: &RatPoly) -> RatPoly {
    chi.iter()
        .rev()
        .fold(RatPoly::zero(), |acc, c| &(&acc * y) + c)
}

/// Divides `chi` by `y - root`; the remainder must vanish.
fn deflate(chi: &[RatPoly], root: &RatPoly) -> Vec<RatPoly> {
    let n = chi.len() - 1;
    let mut out = vec![RatPoly::zero(); n];
    let mut carry = RatPoly::zero();
    for j in (1..=n).rev() {
        carry = &chi[j] + &(&carry * root);
        out[j - 1] = carry.clone();
    }
    out
}

const DIVISOR_LIMIT: u64 = 1 << 32;
const SPECIALIZATIONS: [i64; 13] = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6];

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a polynomial in one variable, by the rational root
/// theorem. `None` if the coefficients are too large to enumerate.
fn rational_roots(poly: &RatPoly) -> Option<Vec<Rational>> {
    let (_, ints) = poly.primitive_part();
    let low = ints.iter().position(|c| !c.is_zero())?;
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() < 2 {
        return Some(roots);
    }
    let small = |c: &BigInt| c.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT);
    let p_divs = divisors(small(&ints[0])?);
    let q_divs = divisors(small(ints.last().unwrap())?);
    for &q in &q_divs {
        for &p in &p_divs {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                if poly.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Some(roots)
}

fn compose(p: &RatPoly, q: &RatPoly) -> RatPoly {
    p.coeffs()
        .iter()
        .rev()
        .fold(RatPoly::zero(), |acc, c| &(&acc * q) + &RatPoly::constant(c.clone()))
}

fn truncate(p: &RatPoly, n: usize) -> RatPoly {
    RatPoly::new(p.coeffs().iter().take(n).cloned().collect())
}

fn y_derivative(chi: &[RatPoly]) -> Vec<RatPoly> {
    chi.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c.scale(&Rational::from_integer(BigInt::from(j))))
        .collect()
}

/// Lifts a simple root `y0` of `g(0, y)` to a power series root of `g(s, y)`
/// modulo `s^n`.
fn lift_root(g: &[RatPoly], y0: &Rational, n: usize) -> Option<RatPoly> {
    let slope: Rational = y_derivative(g)
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * y0 + c.coeff(0));
    if slope.is_zero() {
        return None;
    }
    let mut y = RatPoly::constant(y0.clone());
    for i in 1..n {
        let value = g
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, c| truncate(&(&(&acc * &y) + c), i + 1));
        let step = -(value.coeff(i) / &slope);
        y = &y + &RatPoly::monomial(step, i);
    }
    Some(y)
}

/// A polynomial root of `chi`, from the rational roots of `chi(t0, y)`.
fn find_root(chi: &[RatPoly], degree_bound: usize) -> Option<RatPoly> {
    for t0 in SPECIALIZATIONS {
        let t0 = Rational::from_integer(BigInt::from(t0));
        let at_t0 = RatPoly::new(chi.iter().map(|c| c.eval(&t0)).collect());
        let Some(roots) = rational_roots(&at_t0) else {
            continue;
        };
        let shift = RatPoly::new(vec![t0.clone(), Rational::one()]);
        let unshift = RatPoly::new(vec![-t0.clone(), Rational::one()]);
        for y0 in roots {
            // A root of multiplicity m is a simple root of the (m-1)-th derivative.
            let mut g = chi.to_vec();
            let mut q = at_t0.clone();
            while q.derivative().eval(&y0).is_zero() {
                g = y_derivative(&g);
                q = q.derivative();
            }
            let shifted: Vec<RatPoly> = g.iter().map(|c| compose(c, &shift)).collect();
            let Some(series) = lift_root(&shifted, &y0, degree_bound + 1) else {
                continue;
            };
            let lambda = compose(&series, &unshift);
            if eval_char(chi, &lambda).is_zero() {
                return Some(lambda);
            }
        }
    }
    None
}

/// All eigenvalues with multiplicity if `chi` splits over `Q[t]`.
pub fn polynomial_eigenvalues(a: &PolyMat) -> Result<Vec<RatPoly>, String> {
    let mut chi = char_poly(a);
    let det = a.det();
    if det.is_zero() {
        return Err("matrix is singular".to_string());
    }
    // Every eigenvalue divides det A.
    let degree_bound = det.degree().unwrap_or(0);
    let mut found = Vec::new();
    while chi.len() > 1 {
        let Some(lambda) = find_root(&chi, degree_bound) else {
            return Err(format!(
                "characteristic polynomial has a factor of degree {} without polynomial roots",
                chi.len() - 1
            ));
        };
        chi = deflate(&chi, &lambda);
        found.push(lambda);
    }
    found.sort();
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenVerdict {
    /// A pair of non-constant eigenvalues that are multiplicatively independent.
    IndependentPair(RatPoly, RatPoly),
    /// Every tested pair satisfies `λ^r = μ^s`.
    Dependent(Vec<(RatPoly, RatPoly, u64, u64)>),
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub verdict: EigenVerdict,
    /// Empty when the eigenvalues could not be determined.
    pub eigenvalues: Vec<RatPoly>,
    /// Pairs not tested because one member is constant.
    pub skipped: Vec<(RatPoly, RatPoly)>,
}

/// Looks for two multiplicatively independent eigenvalues.
///
/// Pairs containing a constant eigenvalue are skipped and listed; a matrix
/// whose only pairs are such is reported as unsupported.
pub fn eigen_mult_indep(a: &PolyMat) -> EigenReport {
    let eigenvalues = match polynomial_eigenvalues(a) {
        Ok(ev) => ev,
        Err(reason) => {
            return EigenReport {
                verdict: EigenVerdict::Unsupported(reason),
                eigenvalues: Vec::new(),
                skipped: Vec::new(),
            }
        }
    };
    let mut skipped = Vec::new();
    let mut dependent = Vec::new();
    for i in 0..eigenvalues.len() {
        for j in i + 1..eigenvalues.len() {
            let (x, y) = (&eigenvalues[i], &eigenvalues[j]);
            let Ok(pair) = PolyPair::new(x.clone(), y.clone()) else {
                skipped.push((x.clone(), y.clone()));
                continue;
            };
            match mult_indep_poly(&pair) {
                Independence::Independent => {
                    return EigenReport {
                        verdict: EigenVerdict::IndependentPair(x.clone(), y.clone()),
                        eigenvalues: eigenvalues.clone(),
                        skipped,
                    }
                }
                Independence::Dependent { r, s } => {
                    dependent.push((x.clone(), y.clone(), r, s));
                }
            }
        }
    }
    let verdict = if dependent.is_empty() {
        EigenVerdict::Unsupported("every eigenvalue pair involves a constant".into())
    } else {
        EigenVerdict::Dependent(dependent)
    };
    EigenReport {
        verdict,
        eigenvalues,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    fn pm(s: &str) -> PolyMat {
        s.parse().unwrap()
    }

    #[test]
    fn char_poly_of_diagonal() {
        let chi = char_poly(&pm("t,0;0,t+1"));
        assert_eq!(chi, vec![p("t^2+t"), p("-2*t-1"), p("1")]);
    }

    #[test]
    fn char_poly_of_3x3_matches_determinant_at_points() {
        let a = pm("t,1,0;2,t^2,1;0,3,1-t");
        let chi = char_poly(&a);
        for y in -3..=3 {
            let shifted = PolyMat::scalar(3, RatPoly::from_ints(&[y])).sub(&a);
            assert_eq!(eval_char(&chi, &RatPoly::from_ints(&[y])), shifted.det(), "y = {y}");
        }
    }

    #[test]
    fn verdict_examples() {
        let r = eigen_mult_indep(&pm("t,0;0,t+1"));
        assert_eq!(r.verdict, EigenVerdict::IndependentPair(p("t"), p("t+1")));

        let r = eigen_mult_indep(&pm("t,0;0,t^2"));
        assert_eq!(
            r.verdict,
            EigenVerdict::Dependent(vec![(p("t"), p("t^2"), 2, 1)])
        );

        // Companion matrix of y^2 - (t^2+1) y + t^2: eigenvalues 1 and t^2.
        let r = eigen_mult_indep(&pm("0,-t^2;1,t^2+1"));
        assert_eq!(r.eigenvalues, vec![p("1"), p("t^2")]);
        assert!(matches!(r.verdict, EigenVerdict::Unsupported(_)));
        assert_eq!(r.skipped, vec![(p("1"), p("t^2"))]);
    }

    #[test]
    fn non_split_and_repeated_eigenvalues() {
        // y^2 - t has no polynomial root.
        let r = eigen_mult_indep(&pm("0,t;1,0"));
        assert!(matches!(r.verdict, EigenVerdict::Unsupported(_)));
        assert!(r.eigenvalues.is_empty());

        let r = eigen_mult_indep(&pm("t,0;0,t"));
        assert_eq!(r.verdict, EigenVerdict::Dependent(vec![(p("t"), p("t"), 1, 1)]));

        // Unipotent: both eigenvalues are 1.
        let r = eigen_mult_indep(&pm("1,t;0,1"));
        assert_eq!(r.eigenvalues, vec![p("1"), p("1")]);
        assert!(matches!(r.verdict, EigenVerdict::Unsupported(_)));
    }

    #[test]
    fn finds_scaled_eigenvalues_of_a_conjugated_matrix() {
        // diag(2t, -t^2+1/2) conjugated by [[1,1],[0,1]].
        let d = pm("2*t,0;0,-t^2+1/2");
        let s = pm("1,1;0,1");
        let s_inv = pm("1,-1;0,1");
        let a = s.mul(&d).mul(&s_inv);
        let ev = polynomial_eigenvalues(&a).unwrap();
        assert_eq!(ev, vec![p("2*t"), p("-t^2+1/2")]);
        assert!(matches!(
            eigen_mult_indep(&a).verdict,
            EigenVerdict::IndependentPair(..)
        ));
    }

    #[test]
    fn three_by_three_with_a_constant_eigenvalue() {
        let d = pm("t^2+1,0,0;0,t-3,0;0,0,2");
        let s = pm("1,2,0;0,1,1;0,0,1");
        let s_inv = pm("1,-2,2;0,1,-1;0,0,1");
        assert_eq!(s.mul(&s_inv), PolyMat::identity(3));
        let r = eigen_mult_indep(&s.mul(&d).mul(&s_inv));
        assert_eq!(r.eigenvalues, vec![p("2"), p("t-3"), p("t^2+1")]);
        assert_eq!(r.verdict, EigenVerdict::IndependentPair(p("t-3"), p("t^2+1")));
        assert_eq!(r.skipped, vec![(p("2"), p("t-3")), (p("2"), p("t^2+1"))]);
    }

    #[test]
    fn rational_root_search() {
        // 6c^2 - c - 2 = (2c + 1)(3c - 2)
        let roots = rational_roots(&RatPoly::from_ints(&[-2, -1, 6])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Rational::new((-1).into(), 2.into())));
        assert!(roots.contains(&Rational::new(2.into(), 3.into())));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(
            rational_roots(&RatPoly::from_ints(&[0, 0, 1, 1])).unwrap(),
            vec![Rational::zero(), Rational::from_integer((-1).into())]
        );
    }
}
