use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Natural log of `|n|` for `n != 0`, accurate for arbitrarily large `n`.
pub(crate) fn ln_abs(n: &BigInt) -> f64 {
    let n = n.abs();
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let mantissa = (&n >> shift).to_f64().expect("64-bit mantissa fits f64");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Ordinary least-squares slope of `y` against `x`.
pub(crate) fn ols_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}
