use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::{lambert_w0, v3, BoundParams, BoundReport, BoundsError, InputValue};
use crate::coding::CyclicWord;

fn inputs<const N: usize>(pairs: [(&str, InputValue); N]) -> BTreeMap<String, InputValue> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn param_inputs(ell: f64, p: &BoundParams) -> BTreeMap<String, InputValue> {
    inputs([
        ("ell", ell.into()),
        ("C", p.c_rho.into()),
        ("delta", p.delta_rho.into()),
        ("d_sigma", p.d_sigma.into()),
    ])
}

fn positive_w(formula: &'static str, argument: f64) -> Result<f64, BoundsError> {
    if argument.is_nan() || argument <= 0.0 {
        return Err(BoundsError::WArgumentNonpositive { formula, argument });
    }
    lambert_w0(argument)
}

fn require_n(n: u64) -> Result<(), BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidInput("n must be at least 1".into()));
    }
    Ok(())
}

/// `8·v₃·(5n + 2)`.
pub fn thm_seq_upper(n: u64) -> Result<f64, BoundsError> {
    require_n(n)?;
    Ok(8.0 * v3() * (5 * n + 2) as f64)
}

/// `v₃·n/12 ≤ Vol ≤ 8·v₃·(5n + 2)`.
pub fn thm_ub_bounds(n: u64) -> Result<BoundReport, BoundsError> {
    require_n(n)?;
    let lower = v3() * n as f64 / 12.0;
    let upper = thm_seq_upper(n)?;
    Ok(BoundReport::new(
        "thm-ub",
        inputs([("n", n.into())]),
        Some(lower),
        Some(upper),
    ))
}

/// Exact `upper/lower = 96(5n + 2)/n` as a reduced fraction.
pub fn thm_ub_ratio(n: u64) -> Result<(u64, u64), BoundsError> {
    require_n(n)?;
    let num = 96 * (5 * n + 2);
    let g = num.gcd(&n);
    Ok((num / g, n / g))
}

/// Covering degree `max{6gk, 6(k−3), 6}` of a `(g, k)` surface.
pub fn d_sigma(g: u64, k: u64) -> Result<u64, BoundsError> {
    if 2 * g + k <= 2 {
        return Err(BoundsError::NotHyperbolicSurface { g, k });
    }
    if g >= 2 && k % g != 2 % g {
        return Err(BoundsError::CongruenceViolated { g, k });
    }
    Ok((6 * g * k).max(6 * k.saturating_sub(3)).max(6))
}

/// `8·d_Σ·v₃·(C·ℓ / W(ℓ/C − 2) + 2)`.
pub fn coro_nub_upper(ell: f64, p: &BoundParams) -> Result<f64, BoundsError> {
    let w = positive_w("coro-nub", ell / p.c_rho - 2.0)?;
    Ok(8.0 * p.d_sigma as f64 * v3() * (p.c_rho * ell / w + 2.0))
}

/// Lower `(d_Σ·v₃/12)((C·ℓ − 3/2)/W(ℓ/C) − 3/2)` with the `coro_nub_upper`
/// expression as upper bound. When only the upper W argument is nonpositive
/// the report carries the lower bound alone and is marked invalid.
pub fn coro2_bounds(ell: f64, p: &BoundParams) -> Result<BoundReport, BoundsError> {
    let w = positive_w("coro-2", ell / p.c_rho)?;
    let lower = p.d_sigma as f64 * v3() / 12.0 * ((p.c_rho * ell - 1.5) / w - 1.5);
    let inputs = param_inputs(ell, p);
    match coro_nub_upper(ell, p) {
        Ok(upper) => Ok(BoundReport::new("coro-2", inputs, Some(lower), Some(upper))),
        Err(BoundsError::WArgumentNonpositive { argument, .. }) => Ok(BoundReport::invalid(
            "coro-2",
            inputs,
            Some(lower),
            None,
            format!("upper bound undefined: W argument ell/C - 2 = {argument} is not positive"),
        )),
        Err(e) => Err(e),
    }
}

/// `(2v₃/3)((C·ℓ − δ)/W(ℓ/C) − 9)`.
pub fn pib2_lower(ell: f64, p: &BoundParams) -> Result<f64, BoundsError> {
    let w = positive_w("pib2", ell / p.c_rho)?;
    Ok(2.0 * v3() / 3.0 * ((p.c_rho * ell - p.delta_rho) / w - 9.0))
}

/// `(v₃/2)(#distinct X exponents + #distinct Y exponents − 2)`.
pub fn thm1_lower(w: &CyclicWord) -> f64 {
    let code = w.code();
    let xs: BTreeSet<u64> = code.pairs().iter().map(|&(k, _)| k).collect();
    let ys: BTreeSet<u64> = code.pairs().iter().map(|&(_, m)| m).collect();
    v3() / 2.0 * (xs.len() + ys.len() - 2) as f64
}

/// `C = max{1/(2 + ln 2m), e}`, `δ = 2·ln((6(m + r) + 4)/6)/C`, `d_Σ = 1`.
pub fn tps_constants(m: u64, r: u64) -> Result<BoundParams, BoundsError> {
    if m == 0 || r >= m {
        return Err(BoundsError::InvalidInput(format!(
            "need 0 <= r < m, got m = {m}, r = {r}"
        )));
    }
    let c = (1.0 / (2.0 + (2.0 * m as f64).ln())).max(std::f64::consts::E);
    let z1 = (6 * (m + r) + 4) as f64;
    let delta = 2.0 * (z1 / 6.0).ln() / c;
    BoundParams::new(c, delta, 1)
}

/// Lower `(v₃/2)((ℓ/C − δ)/W(C·ℓ) − 3/2)`, upper
/// `8v₃((5C·ℓ + δ)/W(ℓ/C − 2) + 8)`.
pub fn tps_bounds(ell: f64, p: &BoundParams) -> Result<BoundReport, BoundsError> {
    let (c, delta) = (p.c_rho, p.delta_rho);
    let w_lower = positive_w("tps", c * ell)?;
    let w_upper = positive_w("tps", ell / c - 2.0)?;
    let lower = v3() / 2.0 * ((ell / c - delta) / w_lower - 1.5);
    let upper = 8.0 * v3() * ((5.0 * c * ell + delta) / w_upper + 8.0);
    Ok(BoundReport::new(
        "tps",
        param_inputs(ell, p),
        Some(lower),
        Some(upper),
    ))
}
