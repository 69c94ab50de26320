//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::E;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use modular_lorenz::bounds::{
    coro2_bounds, coro_nub_upper, lambert_w0, thm1_lower, thm_seq_upper, thm_ub_bounds,
    v3_by_quadrature, BoundParams, BRANCH_POINT, V3,
};
use modular_lorenz::coding::{parse_word, CyclicWord, GeneratorScale, GeodesicCode, Letter};
use modular_lorenz::families::{gen_eta, gen_staircase, gen_ub};
use modular_lorenz::lorenz::{closed_form_staircase, ring_partition, williams_braid, BraidRecord};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_primitive(rng: &mut ChaCha8Rng, max_len: usize) -> CyclicWord {
    loop {
        let len = rng.gen_range(2..=max_len);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Letter::X
                } else {
                    Letter::Y
                }
            })
            .collect();
        if let Ok(w) = CyclicWord::from_letters(&letters) {
            if w.is_primitive() {
                return w;
            }
        }
    }
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_mlorenz"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

type Mat = [BigInt; 4];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

/// Partial products `X^{k_i}Y ⋯ X^{k_1}Y` for `i = 1..=n`, scale `s`.
fn partials(k: &[u64], s: u64) -> Vec<Mat> {
    let one = || BigInt::one();
    let zero = || BigInt::from(0);
    let mut acc: Mat = [one(), zero(), zero(), one()];
    k.iter()
        .map(|&ki| {
            let x: Mat = [one(), BigInt::from(s * ki), zero(), one()];
            let y: Mat = [one(), zero(), BigInt::from(s), one()];
            acc = mat_mul(&mat_mul(&x, &y), &acc);
            acc.clone()
        })
        .collect()
}

fn trace(m: &Mat) -> BigInt {
    &m[0] + &m[3]
}

fn entry_sum(m: &Mat) -> BigInt {
    m.iter().sum()
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

fn bisect_w(x: f64) -> f64 {
    let (mut lo, mut hi) = (-1.0f64, (1.0 + x.max(0.0)).ln() + 1.0);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid * mid.exp() > x {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn williams_example() -> Outcome {
    let w = parse_word("X^4Y^3XY^2").unwrap();
    let rec = BraidRecord::new(&w).map_err(|e| e.to_string())?;
    let (_, braid) = williams_braid(&w).unwrap();
    ensure(rec.d == [1, 1, 2, 4, 5], || format!("d = {:?}", rec.d))?;
    ensure(braid.grouped_string() == "⟨1^2,2^1,4^1,5^1⟩", || {
        braid.grouped_string()
    })?;
    ensure(rec.p == 5 && rec.strands == 10 && rec.trip == 2, || {
        format!("{rec:?}")
    })?;
    ensure(rec.mu == [1, 2, 3, 5, 10, 9, 7, 4, 8, 6], || {
        format!("mu = {:?}", rec.mu)
    })?;
    let (code, out) = cli(&["braid", "X^4Y^3XY^2"]);
    let text = String::from_utf8_lossy(&out);
    ensure(code == 0, || format!("exit {code}"))?;
    for line in [
        "d         (1,1,2,4,5)",
        "p         5",
        "strands   10",
        "trip      2",
        "order     (1,2,3,5,10,9,7,4,8,6)",
    ] {
        ensure(text.lines().any(|l| l == line), || {
            format!("missing line '{line}'")
        })?;
    }
    Ok("d, grouping, p, strands, trip and cyclic order match exactly".into())
}

fn staircase_tuples(n: usize, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    let lo = match prefix.len() {
        0 => 1,
        1 => prefix[0] + 2,
        _ => prefix[prefix.len() - 1] + 1,
    };
    for k in lo..=max {
        prefix.push(k);
        staircase_tuples(n, max, prefix, out);
        prefix.pop();
    }
}

fn staircase_equivalence() -> Outcome {
    let start = std::time::Instant::now();
    let mut tuples = Vec::new();
    for n in 2..=5 {
        staircase_tuples(n, 9, &mut Vec::new(), &mut tuples);
    }
    for k in &tuples {
        let closed = closed_form_staircase(k).map_err(|e| e.to_string())?;
        let (_, braid) = williams_braid(&gen_staircase(k).unwrap()).unwrap();
        ensure(closed.d() == braid.d(), || {
            format!("{k:?}: {:?} vs {:?}", closed.d(), braid.d())
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} tuples agree in {secs:.2} s", tuples.len()))
}

fn figure_reproduction() -> Outcome {
    let k = [1, 5, 8, 10, 11];
    let want = "⟨1^1,2^4,3^9,4^12,5^9⟩";
    let closed = closed_form_staircase(&k).unwrap();
    let (_, braid) = williams_braid(&gen_staircase(&k).unwrap()).unwrap();
    ensure(closed.grouped_string() == want, || closed.grouped_string())?;
    ensure(braid.grouped_string() == want, || braid.grouped_string())?;
    Ok(format!(
        "{want} from both the closed form and the braid algorithm"
    ))
}

fn trip_is_period() -> Outcome {
    let mut exhaustive = 0;
    for len in 2..=14usize {
        for bits in 0u32..1 << len {
            let letters: Vec<Letter> = (0..len)
                .map(|i| {
                    if bits >> i & 1 == 0 {
                        Letter::X
                    } else {
                        Letter::Y
                    }
                })
                .collect();
            let Ok(w) = CyclicWord::from_letters(&letters) else {
                continue;
            };
            if !w.is_primitive() {
                continue;
            }
            let (_, b) = williams_braid(&w).unwrap();
            ensure(b.trip_number() == w.period(), || format!("{w}"))?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    for _ in 0..1000 {
        let w = random_primitive(&mut rng, 60);
        let (_, b) = williams_braid(&w).unwrap();
        ensure(b.trip_number() == w.period(), || format!("{w}"))?;
    }
    Ok(format!(
        "{exhaustive} exhaustive (letters <= 14) and 1000 random (letters <= 60)"
    ))
}

fn trace_inequalities() -> Outcome {
    for n in 2..=25u64 {
        let k: Vec<u64> = (1..=n).collect();
        let t = trace(partials(&k, 1).last().unwrap());
        ensure(
            BigInt::from(5) * factorial(n) <= BigInt::from(2) * &t,
            || format!("eta n = {n}"),
        )?;
    }
    for n in 1..=25u64 {
        let k: Vec<u64> = (1..=n).map(|i| 6 * i + 1).collect();
        let t = trace(partials(&k, 1).last().unwrap());
        let bound = num_traits::pow(BigInt::from(6), n as usize + 1) * factorial(n + 1);
        ensure(t <= bound, || format!("ub n = {n}"))?;
    }
    let mut checked = 0;
    for m in 1..=5u64 {
        for r in 0..m {
            let k: Vec<u64> = (1..=20).map(|i| m * i + r).collect();
            let z: Vec<BigInt> = partials(&k, 2).iter().map(entry_sum).collect();
            ensure(z[0] == BigInt::from(6 * (m + r) + 4), || {
                format!("z_1 at m = {m}, r = {r}")
            })?;
            for n in 2..=20u64 {
                let (zp, zn) = (&z[n as usize - 2], &z[n as usize - 1]);
                ensure(BigInt::from(2 * m * n) * zp <= *zn, || {
                    format!("lower at n={n} m={m} r={r}")
                })?;
                ensure(*zn <= BigInt::from(4 * m * (n + 1)) * zp, || {
                    format!("upper at n={n} m={m} r={r}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "eta 2..=25, ub 1..=25, {checked} recurrence cases (n <= 20, m <= 5)"
    ))
}

fn w_inequality() -> Outcome {
    let mut min_margin = f64::INFINITY;
    for n in 2..=20u64 {
        let k: Vec<u64> = (1..=n).collect();
        let t = trace(partials(&k, 1).last().unwrap()).to_f64().unwrap();
        let ell = 2.0 * (t / 2.0).acosh();
        let lib = gen_eta(n)
            .unwrap()
            .to_matrix(GeneratorScale::Modular)
            .geodesic_length()
            .unwrap();
        ensure((lib - ell).abs() <= 1e-12 * ell, || {
            format!("length mismatch at n = {n}")
        })?;
        let w = lambert_w0(ell / 2.0 - 2.0).map_err(|e| e.to_string())?;
        ensure((w - bisect_w(ell / 2.0 - 2.0)).abs() <= 1e-9, || {
            format!("W mismatch at n = {n}")
        })?;
        let bound = E * ell / w;
        ensure(n as f64 <= bound, || format!("n = {n}: bound {bound}"))?;
        min_margin = min_margin.min(bound - n as f64);
    }
    Ok(format!(
        "holds for 2 <= n <= 20, smallest margin {min_margin:.4}"
    ))
}

fn lambert_w() -> Outcome {
    let (a, b) = (1e-6f64.log10(), (1e6 - BRANCH_POINT).log10());
    let mut worst = 0.0f64;
    for i in 0..200 {
        let x = BRANCH_POINT + 10f64.powf(a + (b - a) * i as f64 / 199.0);
        let w = lambert_w0(x).map_err(|e| e.to_string())?;
        let scaled = (w * w.exp() - x).abs() / (1.0 + x.abs());
        ensure(scaled <= 1e-12, || {
            format!("x = {x}: scaled residual {scaled:e}")
        })?;
        worst = worst.max(scaled);
    }
    ensure(lambert_w0(0.0).unwrap().abs() <= 1e-14, || "W(0)".into())?;
    ensure((lambert_w0(E).unwrap() - 1.0).abs() <= 1e-14, || {
        "W(e)".into()
    })?;
    Ok(format!(
        "200-point grid, worst scaled residual {worst:.2e}; W(0), W(e) within 1e-14"
    ))
}

fn tetrahedron_volume() -> Outcome {
    let q = v3_by_quadrature();
    ensure((V3 - 1.014_941_606_4).abs() <= 5e-10, || {
        format!("v3 = {V3}")
    })?;
    ensure((V3 - q).abs() <= 5e-10, || format!("quadrature {q}"))?;
    Ok(format!(
        "v3 = {V3:.12}, quadrature differs by {:.1e}",
        (V3 - q).abs()
    ))
}

fn primitive_root(d: &[u64]) -> Vec<u64> {
    let n = d.len();
    let l = (1..=n)
        .find(|&l| n.is_multiple_of(l) && (0..n).all(|i| d[i] == d[i % l]))
        .unwrap();
    d[..l].to_vec()
}

fn cf_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut reduced = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let pairs: Vec<(u64, u64)> = (0..n)
            .map(|_| (rng.gen_range(1..=9), rng.gen_range(1..=9)))
            .collect();
        let code = GeodesicCode::from_pairs(pairs).unwrap();
        let w = CyclicWord::from_code(&code);
        let surd = w
            .to_matrix(GeneratorScale::Modular)
            .fixed_point()
            .map_err(|e| e.to_string())?;
        let cf = surd.to_cf(100_000).map_err(|e| e.to_string())?;
        ensure(cf.is_purely_periodic(), || format!("{code}: {cf}"))?;
        let digits = code.digits();
        let root = primitive_root(&digits);
        if root.len() < digits.len() {
            reduced += 1;
        }
        let p = cf.period();
        let rotation = p.len() == root.len()
            && (0..p.len()).any(|s| (0..p.len()).all(|i| p[(i + s) % p.len()] == root[i]));
        ensure(rotation, || format!("{code}: {cf}"))?;
    }
    Ok(format!(
        "500 codes; {reduced} had a repeating digit block and matched its primitive root"
    ))
}

fn ring_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1_000);
    let mut tight = 0;
    for _ in 0..1000 {
        let w = random_primitive(&mut rng, 60);
        let r = ring_partition(&w).map_err(|e| e.to_string())?;
        ensure(r.total_rings() <= 2 * r.trip + 2, || format!("{w}"))?;
        if r.total_rings() == 2 * r.trip + 2 {
            tight += 1;
        }
    }
    Ok(format!("1000 random words, {tight} attain the bound"))
}

fn bound_sandwich() -> Outcome {
    for n in 1..=200u64 {
        let r = thm_ub_bounds(n).unwrap();
        ensure(r.lower.unwrap() < thm_seq_upper(n).unwrap(), || {
            format!("n = {n}")
        })?;
    }
    let mut rows = 0;
    for n in 1..=30u64 {
        let ell = gen_ub(n)
            .unwrap()
            .to_matrix(GeneratorScale::Modular)
            .geodesic_length()
            .unwrap();
        for c in [2.0, E] {
            for ds in [1u64, 6, 48] {
                if ell / c - 2.0 <= 0.0 {
                    continue;
                }
                let p = BoundParams::new(c, 0.0, ds).unwrap();
                let lower = coro2_bounds(ell, &p).unwrap().lower.unwrap();
                let upper = coro_nub_upper(ell, &p).unwrap();
                ensure(lower <= upper, || format!("n = {n}, C = {c}, d = {ds}"))?;
                rows += 1;
            }
        }
    }
    Ok(format!(
        "n <= 200, and {rows} ub rows with C in {{2, e}}, d in {{1, 6, 48}}"
    ))
}

fn exponent_count_bound() -> Outcome {
    ensure(thm1_lower(&parse_word("XY").unwrap()) == 0.0, || {
        "XY".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let n = rng.gen_range(1..=10usize);
        let mut k: Vec<u64> = Vec::new();
        while k.len() < n {
            let v = rng.gen_range(1..=40);
            if !k.contains(&v) {
                k.push(v);
            }
        }
        let code = GeodesicCode::from_pairs(k.iter().map(|&ki| (ki, 1)).collect()).unwrap();
        let w = CyclicWord::from_code(&code);
        let want = V3 / 2.0 * (n as f64 - 1.0);
        ensure(thm1_lower(&w) == want, || format!("{w}"))?;
    }
    Ok("XY gives 0; 200 words with distinct k_i give (v3/2)(n-1)".into())
}

fn cli_determinism() -> Outcome {
    let invocations: &[&[&str]] = &[
        &["code", "X^4Y^3XY^2"],
        &["code", "--json", "[1,3,4,1]"],
        &["braid", "X^4Y^3XY^2"],
        &["braid", "--json", "X^11YX^10YX^8YX^5YXY"],
        &[
            "bounds",
            "coro-2",
            "--ell",
            "123.5",
            "--C",
            "2",
            "--genus",
            "2",
            "--punctures",
            "4",
        ],
        &[
            "bounds",
            "tps",
            "--word",
            "X^4YX^3YX^2YXY",
            "--scale",
            "2",
            "--m",
            "1",
            "--json",
        ],
        &[
            "family", "tps", "--n", "6", "--m", "2", "--r", "1", "--check",
        ],
        &["family", "ub", "--table", "--n", "8"],
        &["render", "X^4Y^3XY^2"],
    ];
    for args in invocations {
        let (c1, o1) = cli(args);
        let (c2, o2) = cli(args);
        ensure(c1 == 0 && c2 == 0, || format!("{args:?} exited {c1}/{c2}"))?;
        ensure(o1 == o2, || format!("{args:?} differs between runs"))?;
    }
    let dir = std::env::temp_dir().join(format!("mlorenz-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let (a, b) = (dir.join("a.svg"), dir.join("b.svg"));
    for path in [&a, &b] {
        let (code, _) = cli(&["render", "X^4Y^3XY^2", "--out", path.to_str().unwrap()]);
        ensure(code == 0, || format!("render exited {code}"))?;
    }
    let same = std::fs::read(&a).map_err(|e| e.to_string())?
        == std::fs::read(&b).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(same, || "SVG files differ".into())?;
    Ok(format!(
        "{} invocations and two SVG files byte-identical",
        invocations.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("braid of X^4Y^3XY^2", williams_example),
        (
            "staircase closed form vs braid algorithm",
            staircase_equivalence,
        ),
        ("staircase (1,5,8,10,11) grouping", figure_reproduction),
        ("trip number equals period", trip_is_period),
        ("exact trace inequalities", trace_inequalities),
        ("n <= e l / W(l/2 - 2)", w_inequality),
        ("Lambert W accuracy", lambert_w),
        ("tetrahedron volume constant", tetrahedron_volume),
        ("continued fraction round trip", cf_round_trip),
        ("ring count <= 2t + 2", ring_bound),
        ("bound sandwich", bound_sandwich),
        ("distinct exponent lower bound", exponent_count_bound),
        ("CLI determinism", cli_determinism),
    ];
    let start = std::time::Instant::now();
    let mut passed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => {
                passed += 1;
                println!("criterion {:>2} PASS  {name}: {detail}", i + 1);
            }
            Err(why) => println!("criterion {:>2} FAIL  {name}: {why}", i + 1),
        }
    }
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1} s",
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
