//! Word families built from blocks `X^{k_i}Y`, and exact checks of the
//! trace recurrences along them.
//!
//! Block products are taken newest-first, `A_n = X^{k_n}Y · A_{n−1}`, so the
//! generated word reads `X^{k_n}Y ⋯ X^{k_1}Y` and `z_i` is the entry sum of
//! `X^{k_i}Y ⋯ X^{k_1}Y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bounds::{
    lambert_w0, thm1_lower, thm_seq_upper, thm_ub_bounds, tps_bounds, tps_constants,
};
use crate::coding::{
    length_from_trace, CodingError, CyclicWord, GeneratorScale, Letter, Mat2Z, Syllable,
};
use crate::lorenz::BraidError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),
    #[error("need 0 <= r < m, got m = {m}, r = {r}")]
    BadResidue { m: u64, r: u64 },
    #[error("exponent lists differ in length ({k} vs {m})")]
    LengthMismatch { k: usize, m: usize },
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Coding(#[from] CodingError),
}

impl From<BraidError> for FamilyError {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::InvalidStaircase(msg) => FamilyError::InvalidStaircase(msg),
            other => FamilyError::InvalidParameter(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    Staircase,
    Eta,
    Ub,
    Tps,
    Fig8,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::Staircase,
        FamilyId::Eta,
        FamilyId::Ub,
        FamilyId::Tps,
        FamilyId::Fig8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Staircase => "staircase",
            FamilyId::Eta => "eta",
            FamilyId::Ub => "ub",
            FamilyId::Tps => "tps",
            FamilyId::Fig8 => "fig8",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| FamilyError::InvalidParameter(format!("unknown family '{s}'")))
    }
}

/// `X^{k_n}Y ⋯ X^{k_1}Y`.
pub fn block_word(k: &[u64]) -> Result<CyclicWord, FamilyError> {
    if k.is_empty() {
        return Err(FamilyError::InvalidParameter(
            "need at least one block".into(),
        ));
    }
    let syllables = k
        .iter()
        .rev()
        .flat_map(|&ki| [Syllable::new(Letter::X, ki), Syllable::new(Letter::Y, 1)]);
    Ok(CyclicWord::from_syllables(syllables)?)
}

fn require_n(n: u64) -> Result<(), FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidParameter("n must be at least 1".into()));
    }
    Ok(())
}

fn check_residue(m: u64, r: u64) -> Result<(), FamilyError> {
    if m == 0 || r >= m {
        return Err(FamilyError::BadResidue { m, r });
    }
    Ok(())
}

pub fn eta_exponents(n: u64) -> Vec<u64> {
    (1..=n).collect()
}

pub fn ub_exponents(n: u64) -> Vec<u64> {
    (1..=n).map(|i| 6 * i + 1).collect()
}

pub fn tps_exponents(n: u64, m: u64, r: u64) -> Vec<u64> {
    (1..=n).map(|i| m * i + r).collect()
}

/// Staircase word for increasing exponents with `k_1 + 1 < k_2`.
pub fn gen_staircase(k: &[u64]) -> Result<CyclicWord, FamilyError> {
    crate::lorenz::validate_staircase(k)?;
    block_word(k)
}

pub fn gen_eta(n: u64) -> Result<CyclicWord, FamilyError> {
    require_n(n)?;
    block_word(&eta_exponents(n))
}

pub fn gen_ub(n: u64) -> Result<CyclicWord, FamilyError> {
    require_n(n)?;
    block_word(&ub_exponents(n))
}

pub fn gen_tps(n: u64, m: u64, r: u64) -> Result<CyclicWord, FamilyError> {
    check_residue(m, r)?;
    require_n(n)?;
    block_word(&tps_exponents(n, m, r))
}

/// `X^{k_1}Y^{m_1} ⋯ X^{k_n}Y^{m_n}` in the given order.
pub fn gen_fig8(k: &[u64], m: &[u64]) -> Result<CyclicWord, FamilyError> {
    if k.len() != m.len() {
        return Err(FamilyError::LengthMismatch {
            k: k.len(),
            m: m.len(),
        });
    }
    if k.is_empty() {
        return Err(FamilyError::InvalidParameter(
            "need at least one block".into(),
        ));
    }
    let syllables = k
        .iter()
        .zip(m)
        .flat_map(|(&ki, &mi)| [Syllable::new(Letter::X, ki), Syllable::new(Letter::Y, mi)]);
    Ok(CyclicWord::from_syllables(syllables)?)
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_decimals<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Entry sums `z_1 … z_n` of the partial products and the trace of the last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecurrenceWitness {
    pub family: FamilyId,
    pub n: u64,
    #[serde(serialize_with = "as_decimals")]
    pub z: Vec<BigInt>,
    #[serde(serialize_with = "as_decimal")]
    pub trace_n: BigInt,
}

impl TraceRecurrenceWitness {
    pub fn build(family: FamilyId, k: &[u64], scale: GeneratorScale) -> Self {
        let y = Mat2Z::generator_power(Letter::Y, 1, scale);
        let mut acc = Mat2Z::identity();
        let mut z = Vec::with_capacity(k.len());
        for &ki in k {
            let block = &Mat2Z::generator_power(Letter::X, ki, scale) * &y;
            acc = &block * &acc;
            z.push(acc.entry_sum());
        }
        TraceRecurrenceWitness {
            family,
            n: k.len() as u64,
            trace_n: acc.trace(),
            z,
        }
    }

    /// `z_i`, 1-based.
    pub fn z_at(&self, i: usize) -> &BigInt {
        &self.z[i - 1]
    }
}

/// One inequality `lhs ≤ rhs` with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub statement: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    /// `log10(rhs / lhs)`; nonnegative exactly when the inequality holds.
    pub log10_margin: f64,
    /// Whether the inequality belongs to the verified claim. Inequalities
    /// reported only for comparison are excluded from `all_hold`.
    pub counted: bool,
}

impl Verdict {
    fn exact(statement: &str, lhs: &BigInt, rhs: &BigInt) -> Self {
        Verdict {
            statement: statement.to_string(),
            holds: lhs <= rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            log10_margin: (ln_big(rhs) - ln_big(lhs)) / std::f64::consts::LN_10,
            counted: true,
        }
    }

    fn equal(statement: &str, lhs: &BigInt, rhs: &BigInt) -> Self {
        let mut v = Verdict::exact(statement, lhs, rhs);
        v.holds = lhs == rhs;
        v
    }

    fn real(statement: &str, lhs: f64, rhs: f64) -> Self {
        Verdict {
            statement: statement.to_string(),
            holds: lhs <= rhs,
            lhs: format!("{lhs}"),
            rhs: format!("{rhs}"),
            log10_margin: (rhs / lhs).log10(),
            counted: true,
        }
    }

    fn for_comparison(mut self) -> Self {
        self.counted = false;
        self
    }
}

/// Natural log of a positive big integer, `−∞` for zero.
fn ln_big(v: &BigInt) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    let shift = bits.saturating_sub(64);
    let top = (v.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub witness: TraceRecurrenceWitness,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().filter(|v| v.counted).all(|v| v.holds)
    }

    pub fn verdict(&self, statement_prefix: &str) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.statement.starts_with(statement_prefix))
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

/// `(5/2)·n! ≤ Tr B_n`, `(n+1)·z_{n−1} ≤ z_n` and
/// `n ≤ e·ℓ/W(ℓ/2 − 2)` for `B_n = ∏ X^iY`.
pub fn check_claim_eta(n: u64) -> Result<ClaimReport, FamilyError> {
    require_n(n)?;
    let w =
        TraceRecurrenceWitness::build(FamilyId::Eta, &eta_exponents(n), GeneratorScale::Modular);
    let mut verdicts = vec![Verdict::exact(
        "(5/2) n! <= Tr B_n",
        &(big(5) * factorial(n)),
        &(big(2) * &w.trace_n),
    )];
    let mut notes = Vec::new();
    if n == 1 {
        notes.push("n = 1: only the factorial bound applies, Tr(XY) = 3 >= 5/2".to_string());
        return Ok(ClaimReport {
            witness: w,
            verdicts,
            notes,
        });
    }
    let nu = n as usize;
    verdicts.push(Verdict::exact(
        "(n+1) z_{n-1} <= z_n",
        &(big(n + 1) * w.z_at(nu - 1)),
        w.z_at(nu),
    ));
    let ell = length_from_trace(&w.trace_n)?;
    let arg = ell / 2.0 - 2.0;
    if arg > 0.0 {
        let bound = std::f64::consts::E * ell / lambert_w0(arg).expect("positive argument");
        verdicts.push(Verdict::real("n <= e l / W(l/2 - 2)", n as f64, bound));
    } else {
        notes.push(format!(
            "l/2 - 2 = {arg} is not positive; the W bound is vacuous"
        ));
    }
    Ok(ClaimReport {
        witness: w,
        verdicts,
        notes,
    })
}

/// `Tr A_n ≤ 6^{n+1}(n+1)!` and `z_n ≤ 6(n+1)·z_{n−1}` for `A_n = ∏ X^{6i+1}Y`.
pub fn check_claim_ub(n: u64) -> Result<ClaimReport, FamilyError> {
    require_n(n)?;
    let w = TraceRecurrenceWitness::build(FamilyId::Ub, &ub_exponents(n), GeneratorScale::Modular);
    let mut verdicts = vec![Verdict::exact(
        "Tr A_n <= 6^(n+1) (n+1)!",
        &w.trace_n,
        &(num_traits::pow(big(6), n as usize + 1) * factorial(n + 1)),
    )];
    if n >= 2 {
        let nu = n as usize;
        verdicts.push(Verdict::exact(
            "z_n <= 6(n+1) z_{n-1}",
            w.z_at(nu),
            &(big(6 * (n + 1)) * w.z_at(nu - 1)),
        ));
    }
    Ok(ClaimReport {
        witness: w,
        verdicts,
        notes: Vec::new(),
    })
}

/// Recurrence `(2mn)·z_{n−1} ≤ z_n ≤ 4m(n+1)·z_{n−1}` for `A_n = ∏ X^{mi+r}Y`
/// with scale-2 generators, and the trace sandwiches it implies.
///
/// The factorial trace sandwich `(2m)^{n−2}(n+1)!·z_1 ≤ Tr A_n ≤
/// (2m)^{n−1}(n+1)!·z_1/6` is reported for comparison only; the counted
/// versions `(2m)^{n−2}(n−1)!·z_1 ≤ Tr A_n ≤ (4m)^{n−1}(n+1)!·z_1/2` follow
/// from the recurrence together with `z_{n−1} ≤ Tr A_n ≤ 4m(n+1)·z_{n−1}`.
pub fn check_claim_tps(n: u64, m: u64, r: u64) -> Result<ClaimReport, FamilyError> {
    check_residue(m, r)?;
    if n < 2 {
        return Err(FamilyError::InvalidParameter(
            "the recurrence needs n >= 2".into(),
        ));
    }
    let w = TraceRecurrenceWitness::build(
        FamilyId::Tps,
        &tps_exponents(n, m, r),
        GeneratorScale::ThricePunctured,
    );
    let nu = n as usize;
    let z1 = w.z_at(1).clone();
    let zp = w.z_at(nu - 1);
    let zn = w.z_at(nu);
    let tr = &w.trace_n;
    let two_m = big(2 * m);
    let four_m = big(4 * m);
    let mut verdicts = vec![
        Verdict::equal("z_1 = 6(m+r)+4", &z1, &big(6 * (m + r) + 4)),
        Verdict::exact("(2mn) z_{n-1} <= z_n", &(big(2 * m * n) * zp), zn),
        Verdict::exact("z_n <= 4m(n+1) z_{n-1}", zn, &(big(4 * m * (n + 1)) * zp)),
        Verdict::exact("z_{n-1} <= Tr A_n", zp, tr),
        Verdict::exact(
            "Tr A_n <= 4m(n+1) z_{n-1}",
            tr,
            &(big(4 * m * (n + 1)) * zp),
        ),
        Verdict::exact(
            "(2m)^(n-2) (n-1)! z_1 <= Tr A_n",
            &(num_traits::pow(two_m.clone(), nu - 2) * factorial(n - 1) * &z1),
            tr,
        ),
        Verdict::exact(
            "2 Tr A_n <= (4m)^(n-1) (n+1)! z_1",
            &(big(2) * tr),
            &(num_traits::pow(four_m, nu - 1) * factorial(n + 1) * &z1),
        ),
    ];
    verdicts.push(
        Verdict::exact(
            "(2m)^(n-2) (n+1)! z_1 <= Tr A_n",
            &(num_traits::pow(two_m.clone(), nu - 2) * factorial(n + 1) * &z1),
            tr,
        )
        .for_comparison(),
    );
    verdicts.push(
        Verdict::exact(
            "6 Tr A_n <= (2m)^(n-1) (n+1)! z_1",
            &(big(6) * tr),
            &(num_traits::pow(two_m, nu - 1) * factorial(n + 1) * &z1),
        )
        .for_comparison(),
    );
    let notes = vec![
        "the factorial sandwich with (n+1)! on both sides is listed for comparison and not counted"
            .to_string(),
    ];
    Ok(ClaimReport {
        witness: w,
        verdicts,
        notes,
    })
}

/// One row of a family table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: u64,
    pub word: String,
    pub period: usize,
    pub length: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

/// Rows `n = 1 ..= n_max` for the `eta`, `ub` and `tps` families.
///
/// Bounds used: `eta` pairs the exponent-count lower bound with `8v₃(5n+2)`;
/// `ub` uses `v₃n/12` and `8v₃(5n+2)`; `tps` uses the thrice-punctured sphere
/// bounds with scale-2 lengths, left empty where a W argument is not positive.
pub fn family_table(
    id: FamilyId,
    n_max: u64,
    m: u64,
    r: u64,
) -> Result<Vec<TableRow>, FamilyError> {
    require_n(n_max)?;
    if id == FamilyId::Tps {
        check_residue(m, r)?;
    }
    (1..=n_max)
        .map(|n| {
            let (word, scale) = match id {
                FamilyId::Eta => (gen_eta(n)?, GeneratorScale::Modular),
                FamilyId::Ub => (gen_ub(n)?, GeneratorScale::Modular),
                FamilyId::Tps => (gen_tps(n, m, r)?, GeneratorScale::ThricePunctured),
                other => {
                    return Err(FamilyError::InvalidParameter(format!(
                        "no table for family '{other}'; use eta, ub or tps"
                    )))
                }
            };
            let length = word.to_matrix(scale).geodesic_length()?;
            let (lower, upper) = match id {
                FamilyId::Eta => (Some(thm1_lower(&word)), thm_seq_upper(n).ok()),
                FamilyId::Ub => {
                    let rep = thm_ub_bounds(n).expect("n >= 1");
                    (rep.lower, rep.upper)
                }
                _ => {
                    let p = tps_constants(m, r).expect("residue checked");
                    match tps_bounds(length, &p) {
                        Ok(rep) => (rep.lower, rep.upper),
                        Err(_) => (None, None),
                    }
                }
            };
            Ok(TableRow {
                n,
                word: word.to_string(),
                period: word.period(),
                length,
                lower,
                upper,
            })
        })
        .collect()
}
