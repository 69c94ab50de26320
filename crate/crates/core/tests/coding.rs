use modular_lorenz::coding::{
    cf_of_code, length_from_trace, parse_word, CyclicWord, GeneratorScale, GeodesicCode, Letter,
    PeriodicCF,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn all_words(max_len: usize) -> impl Iterator<Item = Vec<Letter>> {
    (2..=max_len).flat_map(|len| {
        (0u32..1 << len).map(move |bits| {
            (0..len)
                .map(|i| {
                    if bits >> i & 1 == 0 {
                        Letter::X
                    } else {
                        Letter::Y
                    }
                })
                .collect()
        })
    })
}

fn mixed(letters: &[Letter]) -> bool {
    letters.contains(&Letter::X) && letters.contains(&Letter::Y)
}

/// Plain 2×2 product over i128, letter by letter.
fn oracle_matrix(letters: &[Letter], s: i128) -> [i128; 4] {
    let mut m = [1i128, 0, 0, 1];
    for l in letters {
        let g = match l {
            Letter::X => [1, s, 0, 1],
            Letter::Y => [1, 0, s, 1],
        };
        m = [
            m[0] * g[0] + m[1] * g[2],
            m[0] * g[1] + m[1] * g[3],
            m[2] * g[0] + m[3] * g[2],
            m[2] * g[1] + m[3] * g[3],
        ];
    }
    m
}

#[test]
fn every_short_word_is_hyperbolic() {
    for letters in all_words(12).filter(|l| mixed(l)) {
        let w = CyclicWord::from_letters(&letters).unwrap();
        for scale in [GeneratorScale::Modular, GeneratorScale::ThricePunctured] {
            let m = w.to_matrix(scale);
            assert_eq!(m.det(), BigInt::from(1));
            assert!(m.is_nonnegative());
            assert!(m.trace() >= BigInt::from(3));
            let o = oracle_matrix(&letters, scale.value() as i128);
            assert_eq!(m.trace(), BigInt::from(o[0] + o[3]), "{w}");
        }
    }
}

#[test]
fn thrice_punctured_entry_sum_of_xy_blocks() {
    for k in 1..40u64 {
        let w = parse_word(&format!("X^{k}Y")).unwrap();
        let m = w.to_matrix(GeneratorScale::ThricePunctured);
        assert_eq!(m.entry_sum(), BigInt::from(6 * k + 4));
    }
}

/// `2·arccosh(t/2)` in f64 for moderate traces.
fn naive_length(t: f64) -> f64 {
    2.0 * (t / 2.0).acosh()
}

#[test]
fn length_matches_arccosh() {
    for t in [3u64, 4, 7, 51, 1000, 123_456_789] {
        let got = length_from_trace(&BigInt::from(t)).unwrap();
        assert!(
            (got - naive_length(t as f64)).abs() <= 1e-12 * got,
            "t = {t}"
        );
    }
}

/// `x` is a fixed point of the matrix of the periodic expansion `overline(a)`:
/// `c·x² + (d − a)·x − b = 0` with `x = (P + √D)/Q`, split into rational and
/// irrational parts.
fn fixed_by_period(cf_period: &[u64], p: &BigInt, q: &BigInt, d: &BigInt) -> bool {
    let (mut ma, mut mb, mut mc, mut md) = (
        BigInt::from(1),
        BigInt::from(0),
        BigInt::from(0),
        BigInt::from(1),
    );
    for &a in cf_period {
        let a = BigInt::from(a);
        let (na, nb) = (&ma * &a + &mb, ma.clone());
        let (nc, nd) = (&mc * &a + &md, mc.clone());
        ma = na;
        mb = nb;
        mc = nc;
        md = nd;
    }
    let rational = &mc * (p * p + d) + (&md - &ma) * p * q - &mb * q * q;
    let irrational = BigInt::from(2) * &mc * p + (&md - &ma) * q;
    rational == BigInt::from(0) && irrational == BigInt::from(0)
}

fn primitive_root(digits: &[u64]) -> Vec<u64> {
    let n = digits.len();
    (1..=n)
        .find(|&l| n.is_multiple_of(l) && (0..n).all(|i| digits[i] == digits[i % l]))
        .map(|l| digits[..l].to_vec())
        .unwrap()
}

fn is_rotation(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn render_parse_round_trip(pairs in prop::collection::vec((1u64..20, 1u64..20), 1..8)) {
        let w = CyclicWord::from_code(&GeodesicCode::from_pairs(pairs).unwrap());
        let again = parse_word(&w.to_string()).unwrap();
        prop_assert_eq!(&again, &w);
        let from_code = parse_word(&w.code().to_string()).unwrap();
        prop_assert_eq!(from_code, w);
    }

    #[test]
    fn fixed_point_cf_round_trip(pairs in prop::collection::vec((1u64..10, 1u64..10), 1..7)) {
        let code = GeodesicCode::from_pairs(pairs).unwrap();
        let w = CyclicWord::from_code(&code);
        let surd = w.to_matrix(GeneratorScale::Modular).fixed_point().unwrap();
        let cf = surd.to_cf(100_000).unwrap();
        prop_assert!(cf.is_purely_periodic());
        let root = primitive_root(&code.digits());
        prop_assert!(is_rotation(cf.period(), &root), "{} vs {:?}", cf, root);
        prop_assert!(fixed_by_period(cf.period(), surd.p(), surd.q(), surd.d()));
        prop_assert!(cf.same_tail(&cf_of_code(&code)));
        prop_assert!((cf.to_f64(60) - surd.to_f64()).abs() < 1e-9 * surd.to_f64());
    }

    #[test]
    fn swap_and_reverse_keep_trace(pairs in prop::collection::vec((1u64..12, 1u64..12), 1..6)) {
        let w = CyclicWord::from_code(&GeodesicCode::from_pairs(pairs).unwrap());
        let t = w.to_matrix(GeneratorScale::Modular).trace();
        prop_assert_eq!(w.swapped().to_matrix(GeneratorScale::Modular).trace(), t.clone());
        prop_assert_eq!(w.reversed().to_matrix(GeneratorScale::Modular).trace(), t);
    }
}

#[test]
fn golden_ratio_expansion() {
    let cf = PeriodicCF::new(vec![], vec![1]).unwrap();
    assert!((cf.to_f64(80) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
    let xy = parse_word("XY").unwrap();
    let surd = xy.to_matrix(GeneratorScale::Modular).fixed_point().unwrap();
    assert_eq!(surd.to_string(), "(1+√5)/2");
}
