//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secgain::code::io::load_code;
use secgain::code::{format_bits, parse_bits, Code, EnumOptions, Word, WeightEnumerator};
use secgain::convcode::{scan_convolutional, ScanRanking};
use secgain::corpus::Corpus;
use secgain::highreal::{close, HighReal};
use secgain::secrecy::{
    gleason_decompose, necessary_condition_score, strong_secrecy_gain, sufficient_condition_check, symmetry_check,
    weak_secrecy_gain, GainOptions, SufficientVerdict, DEFAULT_SYMMETRY_TAUS,
};
use secgain::theta::{
    jacobi_theta, t_of_tau, theta_construction_a_series, theta_periodic_packing, PeriodicPacking, ThetaKind,
};
use secgain::wiretap::{
    check_unique_decomposition, eve_bound, find_linear_b, load_scheme, simulate_wiretap, SimOptions,
};
use std::path::PathBuf;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn code(name: &str) -> Code {
    load_code(corpus_dir().join("codes").join(name), EnumOptions::default()).expect(name)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit as f64, format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64()))
}

fn hr(x: f64) -> HighReal {
    HighReal::from_f64(x)
}

fn strong(w: &WeightEnumerator) -> Result<secgain::secrecy::StrongGain, String> {
    strong_secrecy_gain(w, &GainOptions::default()).map_err(|e| e.to_string())
}

fn words(v: &[&str]) -> Vec<Word> {
    v.iter().map(|s| parse_bits(s, 4).unwrap()).collect()
}

fn c1_nordstrom_robinson() -> Outcome {
    let start = Instant::now();
    let c = code("n16.json");
    let w = c.weight_enumerator().map_err(|e| e.to_string())?;
    let want = WeightEnumerator::from_pairs(16, &[(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)]).unwrap();
    ensure(*w == want, format!("enumerator {w}"))?;

    let s = theta_construction_a_series(w, 16).map_err(|e| e.to_string())?;
    let expect: [(usize, u64); 7] = [(0, 1), (2, 32), (3, 7168), (4, 8160), (5, 258048), (6, 127360), (7, 2709504)];
    for (e, v) in expect {
        ensure(s.half_coeff(2 * e) == Some(&BigInt::from(v)), format!("theta coefficient at q^{e}"))?;
    }
    ensure(s.half_coeff(2) == Some(&BigInt::from(0)), "theta coefficient at q^1")?;

    let g = strong(w)?;
    let xi = g.xi.to_f64();
    let dt = (g.t_star.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs();
    ensure((xi - 2.2069).abs() <= 5e-4, format!("xi = {xi}"))?;
    ensure(dt <= 1e-8, format!("|t* - 1/sqrt2| = {dt:e}"))?;
    within(start.elapsed(), 5)?;
    Ok(format!("xi = {xi:.6}, |t*-1/sqrt2| = {dt:.1e}, {:.2}s", start.elapsed().as_secs_f64()))
}

fn c2_table_subset() -> Outcome {
    let start = Instant::now();
    let corpus = Corpus::load(corpus_dir().join("table.json")).map_err(|e| e.to_string())?;
    let wanted = ["[6,3,3]", "E8 [8,4,4]", "C12", "C20 [20,10,6]", "rep2 + NR", "3 x [6,3,3]"];
    let mut report = Vec::new();
    for name in wanted {
        let e = corpus.entries.iter().find(|e| e.name == name).ok_or(format!("{name} missing from corpus"))?;
        let r = corpus.resolve(e, EnumOptions::default()).map_err(|e| e.to_string())?;
        let xi = strong(&r.enumerator)?.xi.to_f64();
        let expect = e.expected.xi.ok_or(format!("{name} has no expected xi"))?;
        ensure((xi - expect).abs() <= 1e-3, format!("{name}: xi = {xi}, expected {expect}"))?;
        report.push(format!("{xi:.4}"));
    }
    let e8 = weak_secrecy_gain(code("e8.json").weight_enumerator().unwrap()).unwrap();
    let four_thirds = HighReal::from_u64(4) / HighReal::from_u64(3);
    ensure(close(&e8, &four_thirds, 1e-60), format!("E8 weak gain {e8}"))?;
    within(start.elapsed(), 10)?;
    Ok(format!("xi = [{}], {:.2}s", report.join(", "), start.elapsed().as_secs_f64()))
}

fn c3_gleason() -> Outcome {
    let w = code("c18.json").weight_enumerator().unwrap().clone();
    let g = gleason_decompose(&w).map_err(|e| e.to_string())?;
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    ensure(g.a == vec![q(-29, 16), q(27, 8), q(-9, 16)], format!("coefficients {:?}", g.a))?;
    let s = sufficient_condition_check(&g);
    ensure(s.verdict == SufficientVerdict::Certified, "positivity not certified")?;
    let m = s.minimum.ok_or("no minimum")?;
    ensure(m.exact() == Some(&q(9, 4)), format!("minimum in [{}, {}]", m.lower, m.upper))?;
    Ok("a = (-29/16, 27/8, -9/16), certified minimum 9/4".into())
}

fn theta(kind: ThetaKind, tau: &HighReal) -> HighReal {
    jacobi_theta(kind, tau).unwrap().value
}

fn c4_theta_identities() -> Outcome {
    let one = HighReal::one();
    let r0 = (theta(ThetaKind::Three, &one) - HighReal::from_u64(2).powf(&hr(0.25)) * theta(ThetaKind::Four, &one)).abs();
    ensure(r0.to_f64() < 1e-30, format!("theta3(i) - 2^(1/4) theta4(i) = {r0}"))?;
    let mut worst = 0f64;
    for tau in [0.5, 1.0, 2.0] {
        let t = hr(tau);
        let t2 = &t * &HighReal::from_u64(2);
        let (a2, a3, a4) = (theta(ThetaKind::Two, &t), theta(ThetaKind::Three, &t), theta(ThetaKind::Four, &t));
        let (b2, b3) = (theta(ThetaKind::Two, &t2), theta(ThetaKind::Three, &t2));
        let two = HighReal::from_u64(2);
        let residuals = [
            a3.powi(4) - a2.powi(4) - a4.powi(4),
            a3.powi(2) + a4.powi(2) - &two * b3.powi(2),
            a3.powi(2) - a4.powi(2) - &two * b2.powi(2),
        ];
        for r in residuals {
            worst = worst.max(r.abs().to_f64());
        }
    }
    ensure(worst < 1e-30, format!("identity residual {worst:e}"))?;
    let dt = (t_of_tau(&one).unwrap() - (HighReal::one() / HighReal::from_u64(2)).sqrt()).abs().to_f64();
    ensure(dt < 1e-25, format!("|t(1) - 1/sqrt2| = {dt:e}"))?;
    Ok(format!("max identity residual {worst:.1e}, |t(1)-1/sqrt2| = {dt:.1e}"))
}

fn c5_symmetry() -> Outcome {
    let corpus = Corpus::load(corpus_dir().join("table.json")).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for e in &corpus.entries {
        let w = corpus.resolve(e, EnumOptions::default()).map_err(|e| e.to_string())?.enumerator;
        ensure(secgain::code::fsd_certificate(&w).is_fsd, format!("{} is not FSD", e.name))?;
        let r = symmetry_check(&w, &DEFAULT_SYMMETRY_TAUS, None).map_err(|e| e.to_string())?;
        let m = r.iter().map(|(_, x)| x.to_f64()).fold(0.0, f64::max);
        ensure(m < 1e-18, format!("{}: residual {m:e}", e.name))?;
        worst = worst.max(m);
    }
    let bad = code("nonfsd4.json");
    let w = bad.weight_enumerator().unwrap();
    ensure(!secgain::code::fsd_certificate(w).is_fsd, "counterexample is FSD")?;
    let r = symmetry_check(w, &DEFAULT_SYMMETRY_TAUS, None).map_err(|e| e.to_string())?;
    let m = r.iter().map(|(_, x)| x.to_f64()).fold(0.0, f64::max);
    ensure(m > 1e-3, format!("non-FSD residual only {m:e}"))?;
    Ok(format!("FSD max residual {worst:.1e}, non-FSD residual {m:.3}"))
}

fn dual_brute(n: usize, rows: &[Word]) -> WeightEnumerator {
    let mut counts = vec![0u64; n + 1];
    for v in 0..(1u128 << n) {
        if rows.iter().all(|&r| (r & v).count_ones() % 2 == 0) {
            counts[v.count_ones() as usize] += 1;
        }
    }
    WeightEnumerator::from_u64(n, &counts).unwrap()
}

fn c6_macwilliams() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6377);
    let mut done = 0;
    while done < 50 {
        let n = rng.random_range(2..=12usize);
        let k = rng.random_range(1..=n);
        let rows: Vec<Word> = (0..k).map(|_| rng.random_range(1..(1u128 << n))).collect();
        let Ok(c) = Code::linear("r", n, rows.clone()) else { continue };
        let w = c.weight_enumerator().unwrap();
        let t = w.macwilliams(&c.size()).map_err(|e| e.to_string())?;
        ensure(t == dual_brute(n, &rows), format!("mismatch for n = {n}, k = {k}"))?;
        done += 1;
    }
    Ok("50 random codes, n <= 12".into())
}

fn c7_necessary_condition() -> Outcome {
    let corpus = Corpus::load(corpus_dir().join("table.json")).map_err(|e| e.to_string())?;
    let get = |name: &str| {
        let e = corpus.entries.iter().find(|e| e.name == name).unwrap();
        corpus.resolve(e, EnumOptions::default()).unwrap().enumerator
    };
    let (s2, s3) = (get("rep2 + NR"), get("3 x [6,3,3]"));
    let (a, b) = (necessary_condition_score(&s2), necessary_condition_score(&s3));
    ensure(a < b, format!("scores {a} vs {b}"))?;
    let (x2, x3) = (strong(&s2)?.xi.to_f64(), strong(&s3)?.xi.to_f64());
    ensure(x2 > x3, format!("gains {x2} vs {x3}"))?;
    Ok(format!("score {a} < {b}, xi {x2:.3} > {x3:.3}"))
}

fn c8_cosets() -> Outcome {
    let c = words(&["0000", "1100", "1010", "1001"]);
    let b3 = words(&["0000", "0110"]);
    let a3: Vec<Word> = {
        let mut v: Vec<Word> = b3.iter().flat_map(|&x| c.iter().map(move |&y| x ^ y)).collect();
        v.sort();
        v.dedup();
        v
    };
    let r = check_unique_decomposition(4, &a3, &b3, &c).map_err(|e| e.to_string())?;
    ensure(!r.valid && r.witness.map(|w| format_bits(w, 4)) == Some("1010".into()), format!("double representation: {r:?}"))?;

    let span = code("star4_span.json").codewords().unwrap();
    let full: Vec<Word> = (0..16).collect();
    let ok1 = check_unique_decomposition(4, &span, &words(&["0000", "1111"]), &c).unwrap().valid;
    let ok2 = check_unique_decomposition(4, &full, &words(&["0000", "1111", "1110", "0001"]), &c).unwrap().valid;
    ensure(ok1 && ok2, "a published B set was rejected")?;

    let b = find_linear_b(&code("star4.json"), None).map_err(|e| e.to_string())?;
    let mut got: Vec<String> = b.codewords().unwrap().iter().map(|&w| format_bits(w, 4)).collect();
    got.sort();
    ensure(got == ["0000", "1111"], format!("find_linear_B gave {got:?}"))?;
    Ok("unique-decomposition witness 1010, both B sets valid, greedy B = {0000, 1111}".into())
}

/// Direct lattice sum over (C + 2Z^n)/sqrt2 for the bound at sigma.
fn brute_bound(c: &[Word], n: usize, a_size: usize, sigma: f64) -> f64 {
    let cutoff = 1e6 * sigma * sigma;
    let r = (2.0 * cutoff).sqrt().ceil() as i64 / 2 + 1;
    let mut per_bit = [0.0f64; 2];
    for (bit, slot) in per_bit.iter_mut().enumerate() {
        for z in -r..=r {
            let x = (bit as i64 + 2 * z) as f64;
            if x * x / 2.0 <= cutoff {
                *slot += (-x * x / 2.0 / (2.0 * sigma * sigma)).exp();
            }
        }
    }
    let theta: f64 = c
        .iter()
        .map(|&w| (0..n).map(|i| per_bit[((w >> i) & 1) as usize]).product::<f64>())
        .sum();
    let vol = 2f64.powf(n as f64 / 2.0) / a_size as f64;
    vol * (2.0 * std::f64::consts::PI * sigma * sigma).powf(-(n as f64) / 2.0) * theta
}

fn c9_wiretap() -> Outcome {
    let start = Instant::now();
    let scheme = load_scheme(corpus_dir().join("schemes/star4_full.json")).map_err(|e| e.to_string())?;
    let k = scheme.k();
    let limit = 0.5f64.powi(k as i32);
    let opts = SimOptions::default();
    let mut parts = Vec::new();
    for sigma in [0.3, 0.5, 1.0] {
        let r = simulate_wiretap(&scheme, sigma, 100_000, 7, opts).map_err(|e| e.to_string())?;
        ensure(
            r.empirical_pce <= r.bound + 3.0 * r.half_width,
            format!("sigma {sigma}: empirical {} > bound {}", r.empirical_pce, r.bound),
        )?;
        parts.push(format!("{sigma}: {:.4} vs bound {:.4} + {:.4}", r.empirical_pce, r.bound, 3.0 * r.half_width));
    }
    let noisy = simulate_wiretap(&scheme, 10.0, 100_000, 11, opts).map_err(|e| e.to_string())?;
    ensure(noisy.ci_low <= limit && limit <= noisy.ci_high, format!("sigma 10: CI [{}, {}]", noisy.ci_low, noisy.ci_high))?;
    let far = eve_bound(&scheme, 1e3).map_err(|e| e.to_string())?.to_f64();
    ensure((far / limit - 1.0).abs() < 0.01, format!("bound at sigma 1e3 = {far}"))?;
    let exact = eve_bound(&scheme, 1.0).unwrap().to_f64();
    let brute = brute_bound(&scheme.c_words, 4, 16, 1.0);
    ensure((exact / brute - 1.0).abs() < 1e-12, format!("bound {exact} vs lattice sum {brute}"))?;
    within(start.elapsed(), 60)?;
    Ok(format!("{}; sigma 10 CI covers 2^-{k}; {:.2}s", parts.join(", "), start.elapsed().as_secs_f64()))
}

fn c10_scan() -> Outcome {
    let start = Instant::now();
    let r = scan_convolutional(2, 9, ScanRanking::Gain, secgain::par::DEFAULT_PARALLEL).map_err(|e| e.to_string())?;
    let best = r.entries.first().ok_or("empty scan")?;
    ensure(best.xi >= 2.424, format!("best xi {}", best.xi))?;
    ensure(r.fsd_failures == 0, format!("{} non-FSD tail-biting codes", r.fsd_failures))?;
    within(start.elapsed(), 30)?;
    Ok(format!(
        "best ({},{}) xi = {:.6}, {} distinct enumerators, {:.2}s",
        best.spec.g1_octal(),
        best.spec.g2_octal(),
        best.xi,
        r.entries.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn c11_theta_oracle() -> Outcome {
    for name in ["rep2.json", "star4.json"] {
        let c = code(name);
        let w = c.weight_enumerator().unwrap();
        let series = theta_construction_a_series(w, 25).map_err(|e| e.to_string())?;
        let n = c.n();
        let translates: Vec<Vec<i64>> =
            c.codewords().unwrap().iter().map(|&x| (0..n).map(|i| ((x >> i) & 1) as i64).collect()).collect();
        let p = PeriodicPacking { scale_sq: BigRational::new(1.into(), 2.into()), base: 2, translates };
        let brute = theta_periodic_packing(&p, &BigRational::from_integer(12.into())).map_err(|e| e.to_string())?;
        ensure(series.half_coeffs() == brute.half_coeffs(), format!("{name}: series differ"))?;
    }
    Ok("rep2 and star4 agree through q^12".into())
}

fn c12_log_domain() -> Outcome {
    let nr = code("n16.json").weight_enumerator().unwrap().clone();
    let rep = WeightEnumerator::from_pairs(2, &[(0, 1), (2, 1)]).unwrap();
    let mut w = rep.product(&rep).product(&rep);
    for _ in 0..4 {
        w = w.product(&nr);
    }
    ensure(w.n() == 70 && w.size() == BigUint::from(1u64) << 35, "bad synthetic enumerator")?;
    let chi = weak_secrecy_gain(&w).map_err(|e| e.to_string())?;
    let reference = HighReal::parse("23.72072203268573593805008193348895276418").unwrap();
    let exact = HighReal::from_rational(&BigRational::new(16777216.into(), 707281.into()));
    ensure(close(&chi, &reference, 1e-12), format!("chi = {chi}"))?;
    ensure(close(&chi, &exact, 1e-12), "chi differs from (64/29)^4")?;
    let rel = ((&chi - &exact).abs() / &exact).to_f64();
    Ok(format!("n = 70 weak gain {}, relative error {rel:.1e}", chi.to_string_digits(20)))
}

fn main() {
    let checks: [Check; 12] = [
        ("1 Nordstrom-Robinson pipeline", c1_nordstrom_robinson),
        ("2 table subset", c2_table_subset),
        ("3 Gleason decomposition and sufficient condition", c3_gleason),
        ("4 theta identities", c4_theta_identities),
        ("5 symmetry about tau = 1", c5_symmetry),
        ("6 MacWilliams oracle", c6_macwilliams),
        ("7 necessary-condition ordering", c7_necessary_condition),
        ("8 coset decomposition", c8_cosets),
        ("9 wiretap bound", c9_wiretap),
        ("10 convolutional scan", c10_scan),
        ("11 theta oracle equivalence", c11_theta_oracle),
        ("12 n = 70 log-domain path", c12_log_domain),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
