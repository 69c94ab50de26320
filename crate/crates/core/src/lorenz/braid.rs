use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidError;
use crate::coding::{CyclicWord, Letter};

/// Largest letter count accepted by [`williams_braid`].
pub const MAX_STRANDS: u64 = 1 << 24;

/// The permutation braid read off the lexicographic order of rotations.
///
/// `mu[i]` (0-based `i`) is the 1-based lexicographic rank of the rotation
/// starting at letter `i`; strand `i` runs from top position `mu[i]` to bottom
/// position `mu[i + 1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidPermutation {
    mu: Vec<usize>,
    successor: Vec<usize>,
}

impl BraidPermutation {
    fn from_ranks(mu: Vec<usize>) -> Self {
        let n = mu.len();
        let mut successor = vec![0; n];
        for i in 0..n {
            successor[mu[i] - 1] = mu[(i + 1) % n];
        }
        BraidPermutation { mu, successor }
    }

    pub fn total_strands(&self) -> usize {
        self.mu.len()
    }

    /// The lex ranks `μ_1 … μ_N` in rotation order (the "cyclic order").
    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    /// Bottom position of the strand starting at top position `pos` (1-based).
    pub fn end_of(&self, pos: usize) -> usize {
        self.successor[pos - 1]
    }

    pub fn is_overcrossing(&self, pos: usize) -> bool {
        self.end_of(pos) > pos
    }

    /// True when following strands from position 1 visits every position.
    pub fn is_single_cycle(&self) -> bool {
        let n = self.mu.len();
        let mut pos = 1;
        for step in 1..=n {
            pos = self.end_of(pos);
            if pos == 1 {
                return step == n;
            }
        }
        false
    }
}

/// A Lorenz braid given by the displacements `d_1 ≤ … ≤ d_p` of its
/// overcrossing strands, together with the grouped form `⟨r_1^{s_1}, …⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LorenzBraid {
    d: Vec<u64>,
    groups: Vec<(u64, u64)>,
}

impl LorenzBraid {
    pub fn from_displacements(d: Vec<u64>) -> Result<Self, BraidError> {
        if d.is_empty() || d[0] == 0 || d.windows(2).any(|w| w[0] > w[1]) {
            return Err(BraidError::InvalidDisplacements);
        }
        let mut groups: Vec<(u64, u64)> = Vec::new();
        for &x in &d {
            match groups.last_mut() {
                Some((r, s)) if *r == x => *s += 1,
                _ => groups.push((x, 1)),
            }
        }
        Ok(LorenzBraid { d, groups })
    }

    pub fn d(&self) -> &[u64] {
        &self.d
    }

    /// `(r_j, s_j)` with `r_j` strictly increasing.
    pub fn groups(&self) -> &[(u64, u64)] {
        &self.groups
    }

    /// Number of overcrossing strands.
    pub fn p(&self) -> usize {
        self.d.len()
    }

    /// `p + d_p`.
    pub fn strands(&self) -> u64 {
        self.d.len() as u64 + self.d[self.d.len() - 1]
    }

    pub fn trip_number(&self) -> usize {
        trip_number(self)
    }

    /// `⟨1^2,2^1,4^1,5^1⟩`
    pub fn grouped_string(&self) -> String {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|(r, s)| format!("{r}^{s}"))
            .collect();
        format!("⟨{}⟩", parts.join(","))
    }
}

impl fmt::Display for LorenzBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(u64::to_string).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

/// `♯{i : i + d_i > p}`, the braid index of the closed braid.
pub fn trip_number(braid: &LorenzBraid) -> usize {
    let p = braid.p() as u64;
    braid
        .d
        .iter()
        .enumerate()
        .filter(|(i, &d)| *i as u64 + 1 + d > p)
        .count()
}

/// 1-based lexicographic ranks of all cyclic rotations, by prefix doubling.
/// Returns `None` when two rotations coincide (the word is a proper power).
pub(crate) fn rotation_ranks(letters: &[Letter]) -> Option<Vec<usize>> {
    let n = letters.len();
    let mut rank: Vec<usize> = letters.iter().map(|&l| l as usize).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut width = 1;
    loop {
        let key = |i: usize| (rank[i], rank[(i + width) % n]);
        order.sort_unstable_by_key(|&i| key(i));
        let mut next = vec![0; n];
        for j in 1..n {
            next[order[j]] = next[order[j - 1]] + usize::from(key(order[j]) != key(order[j - 1]));
        }
        rank = next;
        if rank[order[n - 1]] == n - 1 {
            return Some(rank.into_iter().map(|r| r + 1).collect());
        }
        if width >= n {
            return None;
        }
        width *= 2;
    }
}

/// Williams' algorithm: rank the `N` rotations of `w` lexicographically with
/// `X < Y`, connect rank `μ_i` to `μ_{i+1}`, and collect the displacements of
/// the overcrossing strands (`μ_i < μ_{i+1}`).
pub fn williams_braid(w: &CyclicWord) -> Result<(BraidPermutation, LorenzBraid), BraidError> {
    if !w.is_primitive() {
        return Err(BraidError::NonPrimitiveWord(w.to_string()));
    }
    let n = w.letter_count();
    if n > MAX_STRANDS {
        return Err(BraidError::TooManyStrands(n));
    }
    braid_from_letters(&w.letters()).ok_or_else(|| BraidError::NonPrimitiveWord(w.to_string()))
}

pub(crate) fn braid_from_letters(letters: &[Letter]) -> Option<(BraidPermutation, LorenzBraid)> {
    let mu = rotation_ranks(letters)?;
    let perm = BraidPermutation::from_ranks(mu);
    let p = letters.iter().filter(|&&l| l == Letter::X).count();
    // Rotations starting with X occupy ranks 1..=p and are exactly the
    // overcrossing strands.
    let d: Vec<u64> = (1..=p).map(|pos| (perm.end_of(pos) - pos) as u64).collect();
    debug_assert!((1..=p).all(|pos| perm.is_overcrossing(pos)));
    let braid =
        LorenzBraid::from_displacements(d).expect("overcrossing displacements are monotone");
    Some((perm, braid))
}

/// The undercrossing-side vector: Williams' ranking with the letters exchanged.
pub fn y_vector(w: &CyclicWord) -> Result<LorenzBraid, BraidError> {
    williams_braid(&w.swapped()).map(|(_, b)| b)
}

/// Closed form of the braid of the staircase word with exponents `k`:
/// `⟨1^{s_1}, …, n^{s_n}⟩`, `s_i = i(k_{n+1−i} − k_{n−i})` for `i ≤ n − 2`,
/// `s_{n−1} = (n − 1)(k_2 − k_1 − 1)`, `s_n = n(k_1 + 1) − 1`.
pub fn closed_form_staircase(k: &[u64]) -> Result<LorenzBraid, BraidError> {
    validate_staircase(k)?;
    let n = k.len();
    let mut d = Vec::new();
    for i in 1..=n {
        let s = if i <= n - 2 {
            i as u64 * (k[n - i] - k[n - i - 1])
        } else if i == n - 1 {
            (n as u64 - 1) * (k[1] - k[0] - 1)
        } else {
            n as u64 * (k[0] + 1) - 1
        };
        d.extend(std::iter::repeat_n(i as u64, s as usize));
    }
    LorenzBraid::from_displacements(d)
}

/// `n ≥ 2`, `k_1 ≥ 1`, `k_1 + 1 < k_2`, `k_i < k_{i+1}`.
pub fn validate_staircase(k: &[u64]) -> Result<(), BraidError> {
    let bad = |msg: &str| Err(BraidError::InvalidStaircase(format!("{k:?}: {msg}")));
    if k.len() < 2 {
        return bad("need at least two exponents");
    }
    if k[0] == 0 {
        return bad("exponents must be positive");
    }
    if k[0] + 1 >= k[1] {
        return bad("need k_1 + 1 < k_2");
    }
    if k.windows(2).any(|w| w[0] >= w[1]) {
        return bad("exponents must increase");
    }
    Ok(())
}

/// The braid record written by the CLI as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidRecord {
    pub word: String,
    pub period: usize,
    pub p: usize,
    pub strands: u64,
    pub trip: usize,
    pub d: Vec<u64>,
    pub groups: Vec<(u64, u64)>,
    pub mu: Vec<usize>,
}

impl BraidRecord {
    pub fn new(w: &CyclicWord) -> Result<Self, BraidError> {
        let (perm, braid) = williams_braid(w)?;
        Ok(BraidRecord {
            word: w.to_string(),
            period: w.period(),
            p: braid.p(),
            strands: braid.strands(),
            trip: braid.trip_number(),
            d: braid.d().to_vec(),
            groups: braid.groups().to_vec(),
            mu: perm.mu().to_vec(),
        })
    }
}
