use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{GeneratorScale, Mat2Z};
use super::CodingError;

/// A generator letter. The derived order `X < Y` is the lexicographic rule used
/// throughout (canonical rotations and Williams' ranking).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::X => "X",
            Letter::Y => "Y",
        })
    }
}

/// A maximal power `X^k` or `Y^m` inside a cyclic word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub letter: Letter,
    pub exponent: u64,
}

impl Syllable {
    pub fn new(letter: Letter, exponent: u64) -> Self {
        Syllable { letter, exponent }
    }
}

/// A cyclically reduced positive word in `{X, Y}` containing both letters.
///
/// The stored rotation is always the lexicographically least rotation of the
/// letter expansion (with `X < Y`), so it starts with an `X`-syllable and ends
/// with a `Y`-syllable, and derived equality is equality of cyclic words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    syllables: Vec<Syllable>,
}

impl CyclicWord {
    /// Builds a cyclic word from any sequence of syllables, merging equal
    /// neighbours (also across the seam) and rotating into canonical form.
    pub fn from_syllables(
        syllables: impl IntoIterator<Item = Syllable>,
    ) -> Result<Self, CodingError> {
        let mut merged: Vec<Syllable> = Vec::new();
        for syl in syllables {
            if syl.exponent == 0 {
                return Err(CodingError::NonPositiveExponent("0".into()));
            }
            match merged.last_mut() {
                Some(last) if last.letter == syl.letter => {
                    last.exponent = last
                        .exponent
                        .checked_add(syl.exponent)
                        .ok_or_else(|| CodingError::NonPositiveExponent("overflow".into()))?;
                }
                _ => merged.push(syl),
            }
        }
        if merged.is_empty() {
            return Err(CodingError::EmptyWord);
        }
        if merged.len() > 1 && merged[0].letter == merged[merged.len() - 1].letter {
            let tail = merged.pop().unwrap();
            merged[0].exponent += tail.exponent;
        }
        if merged.len() < 2 {
            return Err(CodingError::SingleLetterWord);
        }
        debug_assert!(merged.len().is_multiple_of(2));
        let start = least_rotation(&merged);
        merged.rotate_left(start);
        Ok(CyclicWord { syllables: merged })
    }

    /// Builds the word `∏ X^{k_i} Y^{m_i}` from a code.
    pub fn from_code(code: &GeodesicCode) -> Self {
        let syllables = code
            .pairs()
            .iter()
            .flat_map(|&(k, m)| [Syllable::new(Letter::X, k), Syllable::new(Letter::Y, m)]);
        CyclicWord::from_syllables(syllables).expect("codes always describe valid words")
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self, CodingError> {
        CyclicWord::from_syllables(letters.iter().map(|&l| Syllable::new(l, 1)))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of cyclic `XY` subwords, i.e. the number of `X`-syllables.
    pub fn period(&self) -> usize {
        self.syllables.len() / 2
    }

    /// Total number of letters `N`.
    pub fn letter_count(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent).sum()
    }

    pub fn count_of(&self, letter: Letter) -> u64 {
        self.syllables
            .iter()
            .filter(|s| s.letter == letter)
            .map(|s| s.exponent)
            .sum()
    }

    /// The letter expansion of the canonical rotation.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_count() as usize);
        for s in &self.syllables {
            out.extend(std::iter::repeat_n(s.letter, s.exponent as usize));
        }
        out
    }

    /// False when the word is a proper power `v^j`, `j ≥ 2`.
    pub fn is_primitive(&self) -> bool {
        let n = self.syllables.len();
        // A proper power of a cyclic word is periodic at the syllable level too.
        (1..n)
            .filter(|d| n.is_multiple_of(*d) && d % 2 == 0)
            .all(|d| !(0..n).all(|i| self.syllables[i] == self.syllables[(i + d) % n]))
    }

    /// The pair code `(k_1, m_1, …, k_n, m_n)` read off the canonical rotation.
    pub fn code(&self) -> GeodesicCode {
        let pairs = self
            .syllables
            .chunks(2)
            .map(|c| (c[0].exponent, c[1].exponent))
            .collect();
        GeodesicCode { pairs }
    }

    /// The word with `X` and `Y` exchanged.
    pub fn swapped(&self) -> CyclicWord {
        CyclicWord::from_syllables(
            self.syllables
                .iter()
                .map(|s| Syllable::new(s.letter.swapped(), s.exponent)),
        )
        .expect("swapping letters keeps a word valid")
    }

    /// The word read backwards.
    pub fn reversed(&self) -> CyclicWord {
        CyclicWord::from_syllables(self.syllables.iter().rev().copied())
            .expect("reversal keeps a word valid")
    }

    /// Product of the syllable powers in canonical order, with generators
    /// `X = [[1,s],[0,1]]`, `Y = [[1,0],[s,1]]`.
    pub fn to_matrix(&self, scale: GeneratorScale) -> Mat2Z {
        self.syllables.iter().fold(Mat2Z::identity(), |acc, syl| {
            &acc * &Mat2Z::generator_power(syl.letter, syl.exponent, scale)
        })
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.syllables {
            if s.exponent == 1 {
                write!(f, "{}", s.letter)?;
            } else {
                write!(f, "{}^{}", s.letter, s.exponent)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for CyclicWord {
    type Err = CodingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Index of the syllable where the least rotation starts.
///
/// For an alternating syllable cycle, comparing two `X`-aligned rotations
/// letter by letter is the same as comparing their syllable sequences under
/// the key `X^k ↦ -k`, `Y^m ↦ m`: a longer `X`-run or a shorter `Y`-run wins.
fn least_rotation(syllables: &[Syllable]) -> usize {
    let n = syllables.len();
    let key = |i: usize| {
        let s = syllables[i % n];
        match s.letter {
            Letter::X => (0u8, u64::MAX - s.exponent),
            Letter::Y => (1u8, s.exponent),
        }
    };
    let cmp = |a: usize, b: usize| {
        for j in 0..n {
            match key(a + j).cmp(&key(b + j)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    };
    (0..n)
        .filter(|&i| syllables[i].letter == Letter::X)
        .min_by(|&a, &b| cmp(a, b).then(a.cmp(&b)))
        .expect("word contains an X-syllable")
}

/// The sequence `(k_1, m_1, …, k_n, m_n)` of a word `∏ X^{k_i} Y^{m_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeodesicCode {
    pairs: Vec<(u64, u64)>,
}

impl GeodesicCode {
    /// From the flat digit list `[k_1, m_1, …]`.
    pub fn from_digits(digits: &[u64]) -> Result<Self, CodingError> {
        if digits.is_empty() {
            return Err(CodingError::EmptyWord);
        }
        if !digits.len().is_multiple_of(2) {
            return Err(CodingError::MalformedToken {
                position: 0,
                found: format!("code of odd length {}", digits.len()),
            });
        }
        if digits.contains(&0) {
            return Err(CodingError::NonPositiveExponent("0".into()));
        }
        Ok(GeodesicCode {
            pairs: digits.chunks(2).map(|c| (c[0], c[1])).collect(),
        })
    }

    pub fn from_pairs(pairs: Vec<(u64, u64)>) -> Result<Self, CodingError> {
        if pairs.is_empty() {
            return Err(CodingError::EmptyWord);
        }
        if pairs.iter().any(|&(k, m)| k == 0 || m == 0) {
            return Err(CodingError::NonPositiveExponent("0".into()));
        }
        Ok(GeodesicCode { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn period(&self) -> usize {
        self.pairs.len()
    }

    pub fn digits(&self) -> Vec<u64> {
        self.pairs.iter().flat_map(|&(k, m)| [k, m]).collect()
    }
}

impl fmt::Display for GeodesicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.digits().iter().map(u64::to_string).collect();
        write!(f, "[{}]", digits.join(","))
    }
}

/// Parses `X^4 Y^3 X Y^2` style words (case-insensitive letters, whitespace
/// ignored) or the code form `[4,3,1,2]`.
pub fn parse_word(text: &str) -> Result<CyclicWord, CodingError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(CodingError::EmptyWord);
    }
    if trimmed.starts_with('[') {
        let offset = text.len() - text.trim_start().len();
        return parse_code(trimmed, offset).map(|c| CyclicWord::from_code(&c));
    }

    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut syllables = Vec::new();
    let skip_ws = |mut p: usize| {
        while p < bytes.len() && bytes[p].is_ascii_whitespace() {
            p += 1;
        }
        p
    };
    loop {
        pos = skip_ws(pos);
        if pos >= bytes.len() {
            break;
        }
        let letter = match bytes[pos] {
            b'X' | b'x' => Letter::X,
            b'Y' | b'y' => Letter::Y,
            _ => return Err(malformed(text, pos)),
        };
        pos += 1;
        let mut exponent = 1;
        let after = skip_ws(pos);
        if after < bytes.len() && bytes[after] == b'^' {
            let start = skip_ws(after + 1);
            let mut end = start;
            if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
                end += 1;
            }
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let token = &text[start..end];
            exponent = parse_exponent(token, text, start)?;
            pos = end;
        }
        syllables.push(Syllable::new(letter, exponent));
    }
    CyclicWord::from_syllables(syllables)
}

fn parse_exponent(token: &str, text: &str, start: usize) -> Result<u64, CodingError> {
    let digits = token.strip_prefix('+').unwrap_or(token);
    if digits.is_empty() || digits == "-" {
        return Err(malformed(text, start));
    }
    if digits.starts_with('-') {
        return Err(CodingError::NonPositiveExponent(token.to_string()));
    }
    let value: u64 = digits.parse().map_err(|_| malformed(text, start))?;
    if value == 0 {
        return Err(CodingError::NonPositiveExponent(token.to_string()));
    }
    Ok(value)
}

fn parse_code(trimmed: &str, offset: usize) -> Result<GeodesicCode, CodingError> {
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| malformed(trimmed, trimmed.len().saturating_sub(1)))
        .map_err(|e| shift(e, offset))?;
    if inner.trim().is_empty() {
        return Err(CodingError::EmptyWord);
    }
    let mut digits = Vec::new();
    let mut cursor = 1;
    for piece in inner.split(',') {
        let token = piece.trim();
        if token.is_empty()
            || !token
                .trim_start_matches(['-', '+'])
                .bytes()
                .all(|b| b.is_ascii_digit())
        {
            return Err(CodingError::MalformedToken {
                position: offset + cursor,
                found: token.to_string(),
            });
        }
        digits.push(parse_exponent(token, trimmed, cursor).map_err(|e| shift(e, offset))?);
        cursor += piece.len() + 1;
    }
    GeodesicCode::from_digits(&digits)
}

fn malformed(text: &str, pos: usize) -> CodingError {
    let found: String = text[pos.min(text.len())..].chars().take(8).collect();
    CodingError::MalformedToken {
        position: pos,
        found,
    }
}

fn shift(err: CodingError, offset: usize) -> CodingError {
    match err {
        CodingError::MalformedToken { position, found } => CodingError::MalformedToken {
            position: position + offset,
            found,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syl(word: &CyclicWord) -> Vec<(Letter, u64)> {
        word.syllables()
            .iter()
            .map(|s| (s.letter, s.exponent))
            .collect()
    }

    #[test]
    fn parses_running_example() {
        let w = parse_word("X^4 Y^3 X Y^2").unwrap();
        assert_eq!(
            syl(&w),
            vec![
                (Letter::X, 4),
                (Letter::Y, 3),
                (Letter::X, 1),
                (Letter::Y, 2)
            ]
        );
        assert_eq!(w.to_string(), "X^4Y^3XY^2");
        assert_eq!(w.period(), 2);
    }

    #[test]
    fn parses_lowercase_and_spaces_around_caret() {
        let w = parse_word(" x ^ 2 y  X y^3 ").unwrap();
        assert_eq!(w.to_string(), "X^2YXY^3");
    }

    #[test]
    fn merges_across_seam() {
        let w = parse_word("X^2 Y X^3").unwrap();
        assert_eq!(syl(&w), vec![(Letter::X, 5), (Letter::Y, 1)]);
        let w = parse_word("YXXY").unwrap();
        assert_eq!(w.to_string(), "X^2Y^2");
    }

    #[test]
    fn xy_is_period_one() {
        let w = parse_word("XY").unwrap();
        assert_eq!(syl(&w), vec![(Letter::X, 1), (Letter::Y, 1)]);
        assert_eq!(w.period(), 1);
    }

    #[test]
    fn five_blocks_have_period_five() {
        let w = parse_word("XYX^2YX^3YX^4YX^5Y").unwrap();
        assert_eq!(w.period(), 5);
    }

    #[test]
    fn canonical_rotation_is_least() {
        let a = parse_word("Y^2X^4Y^3X").unwrap();
        let b = parse_word("X^4Y^3XY^2").unwrap();
        assert_eq!(a, b);
        // X^2Y X^2Y^3: a shorter Y-run after an equal X-run is smaller.
        let w = parse_word("X^2Y^3X^2Y").unwrap();
        assert_eq!(w.to_string(), "X^2YX^2Y^3");
    }

    #[test]
    fn code_form() {
        let w = parse_word("[4,3,1,2]").unwrap();
        assert_eq!(w.to_string(), "X^4Y^3XY^2");
        assert_eq!(w.code().to_string(), "[4,3,1,2]");
        let w = parse_word(" [1, 3, 4, 1] ").unwrap();
        assert_eq!(w.code().to_string(), "[4,1,1,3]");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_word(""), Err(CodingError::EmptyWord));
        assert_eq!(parse_word("   "), Err(CodingError::EmptyWord));
        assert_eq!(parse_word("[]"), Err(CodingError::EmptyWord));
        assert_eq!(parse_word("XX"), Err(CodingError::SingleLetterWord));
        assert_eq!(parse_word("Y^7"), Err(CodingError::SingleLetterWord));
        assert!(matches!(
            parse_word("X^0Y"),
            Err(CodingError::NonPositiveExponent(_))
        ));
        assert!(matches!(
            parse_word("X^-2Y"),
            Err(CodingError::NonPositiveExponent(_))
        ));
        assert!(matches!(
            parse_word("[1,0]"),
            Err(CodingError::NonPositiveExponent(_))
        ));
        assert!(matches!(
            parse_word("XZY"),
            Err(CodingError::MalformedToken { position: 1, .. })
        ));
        assert!(matches!(
            parse_word("X^Y"),
            Err(CodingError::MalformedToken { .. })
        ));
        assert!(matches!(
            parse_word("[1,2,3]"),
            Err(CodingError::MalformedToken { .. })
        ));
        assert!(matches!(
            parse_word("[1,a]"),
            Err(CodingError::MalformedToken { .. })
        ));
        assert!(matches!(
            parse_word("[1,2"),
            Err(CodingError::MalformedToken { .. })
        ));
    }

    #[test]
    fn primitivity() {
        assert!(parse_word("XY").unwrap().is_primitive());
        assert!(!parse_word("XYXY").unwrap().is_primitive());
        assert!(!parse_word("X^2YX^2Y X^2Y").unwrap().is_primitive());
        assert!(parse_word("X^2YX^2Y^2").unwrap().is_primitive());
    }

    #[test]
    fn swap_and_reverse() {
        let w = parse_word("X^4Y^3XY^2").unwrap();
        assert_eq!(w.swapped().to_string(), "X^3YX^2Y^4");
        assert_eq!(w.reversed().to_string(), "X^4Y^2XY^3");
        assert_eq!(w.count_of(Letter::X), 5);
        assert_eq!(w.letter_count(), 10);
    }
}
