use std::f64::consts::E;

use super::BoundsError;

/// `−1/e`, the branch point of `W`.
pub const BRANCH_POINT: f64 = -1.0 / E;

/// Principal branch `W₀(x)` of the Lambert W function, `w·eʷ = x`, `w ≥ −1`.
///
/// Starting guesses: the branch-point series in `p = √(2(ex + 1))` for
/// `x < −0.25`, `ln(1 + x)` up to `e`, and the asymptotic `L₁ − L₂ + L₂/L₁`
/// beyond. Halley's iteration then converges cubically; its step is the
/// Newton step damped by `1 − f·(w + 2) / (2(w + 1)·f')`.
pub fn lambert_w0(x: f64) -> Result<f64, BoundsError> {
    if x.is_nan() || x < BRANCH_POINT {
        return Err(BoundsError::OutOfDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut w = if x < -0.25 {
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        let series = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
        if p < 1e-3 {
            return Ok(series);
        }
        series
    } else if x <= E {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}
