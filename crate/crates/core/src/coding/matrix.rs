use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cf::QuadraticSurd;
use super::word::Letter;
use super::CodingError;

/// Off-diagonal entry of the generators: `1` for the modular surface, `2` for
/// the thrice-punctured sphere representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum GeneratorScale {
    #[default]
    Modular,
    ThricePunctured,
}

impl GeneratorScale {
    pub fn value(self) -> u64 {
        match self {
            GeneratorScale::Modular => 1,
            GeneratorScale::ThricePunctured => 2,
        }
    }

    pub fn from_value(v: u64) -> Option<Self> {
        match v {
            1 => Some(GeneratorScale::Modular),
            2 => Some(GeneratorScale::ThricePunctured),
            _ => None,
        }
    }
}

/// A 2×2 integer matrix `[[a, b], [c, d]]` of determinant one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2Z {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2Z {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, CodingError> {
        let m = Mat2Z {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if !det.is_one() {
            return Err(CodingError::DeterminantNotOne(det.to_string()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mat2Z {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// `X^k = [[1, sk], [0, 1]]` or `Y^k = [[1, 0], [sk, 1]]`.
    pub fn generator_power(letter: Letter, exponent: u64, scale: GeneratorScale) -> Self {
        let off = BigInt::from(exponent) * scale.value();
        match letter {
            Letter::X => Mat2Z {
                b: off,
                ..Mat2Z::identity()
            },
            Letter::Y => Mat2Z {
                c: off,
                ..Mat2Z::identity()
            },
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// `a + b + c + d`.
    pub fn entry_sum(&self) -> BigInt {
        &self.a + &self.b + &self.c + &self.d
    }

    pub fn is_nonnegative(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|e| !e.is_negative())
    }

    /// Hyperbolic translation length `2 ln((t + √(t² − 4)) / 2)`.
    pub fn geodesic_length(&self) -> Result<f64, CodingError> {
        length_from_trace(&self.trace())
    }

    /// The attracting fixed point of `x ↦ (ax + b) / (cx + d)`.
    ///
    /// The roots of `cx² + (d − a)x − b = 0` are `((a − d) ± √(t² − 4)) / 2c`;
    /// at a root `cx + d = (t ± √(t² − 4)) / 2`, so the attracting one
    /// (`|cx + d| > 1`) takes the sign of the trace.
    pub fn fixed_point(&self) -> Result<QuadraticSurd, CodingError> {
        if self.c.is_zero() {
            return Err(CodingError::DegenerateMoebius);
        }
        let t = self.trace();
        if t.abs() < BigInt::from(3) {
            return Err(CodingError::NotHyperbolic(t.to_string()));
        }
        let disc = &t * &t - 4;
        let p = &self.a - &self.d;
        let q: BigInt = &self.c * 2;
        if t.is_positive() {
            QuadraticSurd::new(p, q, disc)
        } else {
            QuadraticSurd::new(-p, -q, disc)
        }
    }
}

impl Mul for &Mat2Z {
    type Output = Mat2Z;
    fn mul(self, rhs: &Mat2Z) -> Mat2Z {
        Mat2Z {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// `2 ln((t + √(t² − 4)) / 2)` for an exact trace `t ≥ 3`.
///
/// `ln t` is taken from the top 64 bits of `t` plus `shift · ln 2`, so traces
/// with thousands of digits never pass through an overflowing `f64`. The rest
/// is `ln((1 + √(1 − u)) / 2)` with `u = 4/t²`, evaluated as a `ln_1p`.
pub fn length_from_trace(trace: &BigInt) -> Result<f64, CodingError> {
    if *trace < BigInt::from(3) {
        return Err(CodingError::NotHyperbolic(trace.to_string()));
    }
    let bits = trace.bits();
    let shift = bits.saturating_sub(64);
    let mantissa = (trace >> shift)
        .to_f64()
        .expect("64-bit mantissa fits in f64");
    let ln_t = mantissa.ln() + shift as f64 * std::f64::consts::LN_2;
    let u = (std::f64::consts::LN_2 * 2.0 - 2.0 * ln_t).exp();
    let correction = (-u / (2.0 * (1.0 + (1.0 - u).sqrt()))).ln_1p();
    Ok(2.0 * (ln_t + correction))
}
