use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::word::GeodesicCode;
use super::CodingError;

/// The real number `(P + √D) / Q`, kept in the form where `Q | D − P²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// Builds `(p + √d) / q`. When `q ∤ d − p²` all three are rescaled
    /// (`p·|q|`, `q·|q|`, `d·q²`), which leaves the value unchanged.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, CodingError> {
        let (mut p, mut q, mut d) = (p.into(), q.into(), d.into());
        if q.is_zero() {
            return Err(CodingError::InvalidSurd("denominator is zero"));
        }
        if !d.is_positive() {
            return Err(CodingError::InvalidSurd("radicand must be positive"));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(CodingError::InvalidSurd("radicand is a perfect square"));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            let aq = q.abs();
            d = d * &q * &q;
            p *= &aq;
            q *= &aq;
        }
        Ok(QuadraticSurd { p, q, d })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::INFINITY);
        (self.p.to_f64().unwrap_or(f64::NAN) + d.sqrt()) / self.q.to_f64().unwrap_or(f64::NAN)
    }

    /// `⌊(P + √D) / Q⌋`, exact.
    fn floor(&self, isqrt_d: &BigInt) -> BigInt {
        // P + √D lies strictly between P + s and P + s + 1.
        if self.q.is_positive() {
            (&self.p + isqrt_d).div_floor(&self.q)
        } else {
            (&self.p + isqrt_d + BigInt::from(1)).div_floor(&self.q)
        }
    }

    /// Continued-fraction expansion by the exact surd recurrence
    /// `a = ⌊x⌋`, `P' = aQ − P`, `Q' = (D − P'²)/Q`, stopping at the first
    /// repeated `(P, Q)` state.
    pub fn to_cf(&self, max_steps: usize) -> Result<PeriodicCF, CodingError> {
        if self.to_f64() < 0.0 {
            return Err(CodingError::NegativeSurd);
        }
        let s = self.d.sqrt();
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut digits: Vec<u64> = Vec::new();
        let (mut p, mut q) = (self.p.clone(), self.q.clone());
        for step in 0..max_steps {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = digits.split_off(start);
                return PeriodicCF::new(digits, period);
            }
            seen.insert((p.clone(), q.clone()), step);
            let state = QuadraticSurd {
                p: p.clone(),
                q: q.clone(),
                d: self.d.clone(),
            };
            let a = state.floor(&s);
            digits.push(a.to_u64().ok_or(CodingError::DigitOverflow)?);
            let next_p = &a * &q - &p;
            let next_q = (&self.d - &next_p * &next_p) / &q;
            p = next_p;
            q = next_q;
        }
        Err(CodingError::PeriodNotFound(max_steps))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            write!(f, "√{}/{}", self.d, self.q)
        } else {
            write!(f, "({}+√{})/{}", self.p, self.d, self.q)
        }
    }
}

/// An eventually periodic continued fraction `[a_0; a_1, …, overline(…)]`.
///
/// Always stored with a primitive period and the shortest preperiod, so
/// derived equality is equality of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicCF {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl PeriodicCF {
    pub fn new(mut preperiod: Vec<u64>, mut period: Vec<u64>) -> Result<Self, CodingError> {
        if period.is_empty() {
            return Err(CodingError::InvalidContinuedFraction("empty period"));
        }
        if period.contains(&0) || preperiod.iter().skip(1).any(|&a| a == 0) {
            return Err(CodingError::InvalidContinuedFraction(
                "only the leading digit may be zero",
            ));
        }
        period.truncate(primitive_period_len(&period));
        while let (Some(&last_pre), Some(&last_per)) = (preperiod.last(), period.last()) {
            if last_pre != last_per {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(PeriodicCF { preperiod, period })
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// The digit `a_i`.
    pub fn digit(&self, i: usize) -> u64 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = u64> + '_ {
        (0..).map(|i| self.digit(i))
    }

    /// Approximate value from the first `terms` digits.
    pub fn to_f64(&self, terms: usize) -> f64 {
        let digits: Vec<u64> = self.digits().take(terms.max(1)).collect();
        let mut x = *digits.last().unwrap() as f64;
        for &a in digits.iter().rev().skip(1) {
            x = a as f64 + 1.0 / x;
        }
        x
    }

    /// Offset `s` with `period[s..] ++ period[..s] == other.period`, when the
    /// primitive periods are rotations of each other.
    fn rotation_to(&self, other: &PeriodicCF) -> Option<usize> {
        let len = self.period.len();
        if len != other.period.len() {
            return None;
        }
        (0..len).find(|&s| (0..len).all(|i| self.period[(s + i) % len] == other.period[i]))
    }

    /// True iff `a_{p+r} = b_{q+r}` for all `r ≥ 1` for some `p, q`.
    pub fn same_tail(&self, other: &PeriodicCF) -> bool {
        self.rotation_to(other).is_some()
    }

    /// [`same_tail`](Self::same_tail) with the extra requirement `p + q` even.
    ///
    /// Matching index pairs `(i, j)` satisfy `i − j ≡ c (mod L)` for one fixed
    /// class `c`, `L` the primitive period length. With `L` odd every parity
    /// is reachable; with `L` even the parity of `c` decides.
    pub fn same_tail_mod2(&self, other: &PeriodicCF) -> bool {
        let Some(s) = self.rotation_to(other) else {
            return false;
        };
        let len = self.period.len();
        if len % 2 == 1 {
            return true;
        }
        // self digit at index pre_a + s + t equals other digit at pre_b + t.
        let i = self.preperiod.len() + s;
        let j = other.preperiod.len();
        (i + j).is_multiple_of(2)
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        // A purely periodic expansion is shown with a_0 split off the period.
        let (head, pre, per): (u64, &[u64], Vec<u64>) = if self.preperiod.is_empty() {
            let mut rotated = self.period.clone();
            rotated.rotate_left(1);
            (self.period[0], &[], rotated)
        } else {
            (self.preperiod[0], &self.preperiod[1..], self.period.clone())
        };
        if pre.is_empty() {
            write!(f, "[{}; overline({})]", head, join(&per))
        } else {
            write!(f, "[{}; {}, overline({})]", head, join(pre), join(&per))
        }
    }
}

fn primitive_period_len(period: &[u64]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| period[i] == period[i % d]))
        .unwrap_or(n)
}

/// `[0; overline(k_1, m_1, …, k_n, m_n)]`.
pub fn cf_of_code(code: &GeodesicCode) -> PeriodicCF {
    PeriodicCF::new(vec![0], code.digits()).expect("code digits are positive")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// An itinerary `L^{n_0} R^{n_1} L^{n_2} …` through the Farey tessellation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuttingSequence {
    runs: Vec<(Side, u64)>,
}

impl CuttingSequence {
    pub fn runs(&self) -> &[(Side, u64)] {
        &self.runs
    }
}

impl fmt::Display for CuttingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(side, n)| {
                let s = match side {
                    Side::L => "L",
                    Side::R => "R",
                };
                if n == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{n}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// First `num_runs` runs of the cutting sequence of a positive number with the
/// given expansion: `L^{a_0} R^{a_1} …` when `a_0 ≥ 1`, and `R^{a_1} L^{a_2} …`
/// when `a_0 = 0`.
pub fn cf_to_cutting(cf: &PeriodicCF, num_runs: usize) -> CuttingSequence {
    let skip = usize::from(cf.digit(0) == 0);
    let first = if skip == 1 { Side::R } else { Side::L };
    let runs = cf
        .digits()
        .skip(skip)
        .take(num_runs)
        .enumerate()
        .map(|(i, n)| {
            let side = if i % 2 == 0 { first } else { other_side(first) };
            (side, n)
        })
        .collect();
    CuttingSequence { runs }
}

fn other_side(s: Side) -> Side {
    match s {
        Side::L => Side::R,
        Side::R => Side::L,
    }
}
