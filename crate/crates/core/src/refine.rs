//! Gcd-based factor refinement into a coprime basis.
//!
//! Works in any [`GcdDomain`]; used with monic polynomials for the
//! polynomial independence test and with `|n|` for the integer one. No
//! irreducible factorization is performed: two basis elements are only ever
//! split by a common divisor.

use crate::algebra::GcdDomain;

/// One input written over the basis: `unit * prod(basis[i]^exponents[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<R> {
    pub unit: R,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeBasis<R> {
    /// Pairwise coprime, normalized non-units.
    pub basis: Vec<R>,
    /// One entry per input, in input order.
    pub factorizations: Vec<Factorization<R>>,
}

impl<R: GcdDomain> CoprimeBasis<R> {
    pub fn reconstruct(&self, fac: &Factorization<R>) -> R {
        let mut acc = fac.unit.clone();
        for (b, &e) in self.basis.iter().zip(&fac.exponents) {
            for _ in 0..e {
                acc = acc.mul(b);
            }
        }
        acc
    }
}

fn find_split<R: GcdDomain>(elems: &[R]) -> Option<(usize, usize, R)> {
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let g = elems[i].gcd(&elems[j]);
            if !g.is_unit() {
                return Some((i, j, g));
            }
        }
    }
    None
}

/// Refines nonzero inputs into a coprime basis.
///
/// Basis order is canonical: by the first input each element divides, then
/// by the ring's own order.
pub fn coprime_basis<R: GcdDomain + Ord>(inputs: &[R]) -> CoprimeBasis<R> {
    let mut elems: Vec<R> = inputs
        .iter()
        .filter(|x| !x.is_unit())
        .map(GcdDomain::normalized)
        .collect();
    elems.sort();
    elems.dedup();

    // Replacing x, y by x/g, y/g, g strictly shrinks the product of the
    // multiset, so this terminates.
    while let Some((i, j, g)) = find_split(&elems) {
        let y = elems.swap_remove(j);
        let x = elems.swap_remove(i);
        for part in [
            x.exact_div(&g).expect("gcd divides"),
            y.exact_div(&g).expect("gcd divides"),
            g,
        ] {
            if !part.is_unit() {
                elems.push(part.normalized());
            }
        }
        elems.sort();
        elems.dedup();
    }

    let first_home = |b: &R| {
        inputs
            .iter()
            .position(|x| b.divides(x))
            .expect("every basis element divides some input")
    };
    elems.sort_by(|a, b| first_home(a).cmp(&first_home(b)).then_with(|| a.cmp(b)));

    let factorizations = inputs
        .iter()
        .map(|x| {
            let mut rest = x.clone();
            let exponents = elems
                .iter()
                .map(|b| {
                    let mut e = 0;
                    while let Some(q) = rest.exact_div(b) {
                        rest = q;
                        e += 1;
                    }
                    e
                })
                .collect();
            debug_assert!(rest.is_unit(), "cofactor {rest:?} is not a unit");
            Factorization {
                unit: rest,
                exponents,
            }
        })
        .collect();

    CoprimeBasis {
        basis: elems,
        factorizations,
    }
}

/// Outcome of a multiplicative independence test for `x, y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// `x^r = y^s` with `(r, s)` minimal, `r, s >= 1`.
    Dependent { r: u64, s: u64 },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// Smallest `(r, s)` with `r * ex = s * ey`, if the two exponent vectors are
/// positively proportional. Both vectors must be nonzero.
pub fn proportional_exponents(ex: &[u32], ey: &[u32]) -> Option<(u64, u64)> {
    let pivot = ex.iter().zip(ey).position(|(&a, &b)| a != 0 || b != 0)?;
    let (a, b) = (u64::from(ex[pivot]), u64::from(ey[pivot]));
    if a == 0 || b == 0 {
        return None;
    }
    let g = num_integer::gcd(a, b);
    let (r, s) = (b / g, a / g);
    ex.iter()
        .zip(ey)
        .all(|(&a, &b)| r * u64::from(a) == s * u64::from(b))
        .then_some((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn proportionality() {
        assert_eq!(proportional_exponents(&[2], &[3]), Some((3, 2)));
        assert_eq!(proportional_exponents(&[1, 0], &[0, 1]), None);
        assert_eq!(proportional_exponents(&[2, 4], &[1, 2]), Some((1, 2)));
        assert_eq!(proportional_exponents(&[2, 4], &[1, 3]), None);
    }
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn integer_refinement() {
        let b = coprime_basis(&[big(12), big(18)]);
        assert_eq!(b.basis, vec![big(2), big(3)]);
        assert_eq!(b.factorizations[0].exponents, vec![2, 1]);
        assert_eq!(b.factorizations[1].exponents, vec![1, 2]);

        // 6 and 10 share 2; 15 then splits 3 and 5.
        let b = coprime_basis(&[big(6), big(10), big(-15)]);
        assert_eq!(b.basis, vec![big(2), big(3), big(5)]);
        assert_eq!(b.factorizations[2].unit, big(-1));
    }

    #[test]
    fn refinement_does_not_factor_unnecessarily() {
        // 6^2 and 6^3 never need 2 and 3 separately.
        let b = coprime_basis(&[big(36), big(216)]);
        assert_eq!(b.basis, vec![big(6)]);
        assert_eq!(b.factorizations[0].exponents, vec![2]);
        assert_eq!(b.factorizations[1].exponents, vec![3]);
    }

    proptest! {
        #[test]
        fn integer_basis_reconstructs(xs in prop::collection::vec(2i64..5000, 1..5), neg in any::<bool>()) {
            let mut inputs: Vec<BigInt> = xs.iter().map(|&x| big(x)).collect();
            if neg {
                inputs[0] = -inputs[0].clone();
            }
            let b = coprime_basis(&inputs);
            for (x, fac) in inputs.iter().zip(&b.factorizations) {
                prop_assert_eq!(&b.reconstruct(fac), x);
            }
            for i in 0..b.basis.len() {
                for j in i + 1..b.basis.len() {
                    prop_assert!(b.basis[i].gcd(&b.basis[j]).is_unit());
                }
            }
        }
    }
}
