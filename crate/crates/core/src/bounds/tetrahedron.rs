use std::f64::consts::PI;

/// Volume of the regular ideal hyperbolic tetrahedron.
pub const V3: f64 = 1.014_941_606_409_653_6;

pub fn v3() -> f64 {
    V3
}

/// `v₃ = −2 ∫₀^{π/6} ln|2 sin u| du`, by adaptive Simpson quadrature.
///
/// The logarithmic singularity at 0 is removed by splitting
/// `ln(2 sin u) = ln(2u) + ln(sin u / u)`; the first part integrates to
/// `a ln(2a) − a` in closed form and the second is smooth.
pub fn v3_by_quadrature() -> f64 {
    let a = PI / 6.0;
    let smooth = |u: f64| {
        let ratio = if u < 1e-4 {
            1.0 - u * u / 6.0
        } else {
            u.sin() / u
        };
        ratio.ln()
    };
    let singular_part = a * (2.0 * a).ln() - a;
    -2.0 * (singular_part + adaptive_simpson(&smooth, 0.0, a, 1e-15, 40))
}

/// `|V3 − v3_by_quadrature()|`.
pub fn v3_self_test() -> f64 {
    (V3 - v3_by_quadrature()).abs()
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
