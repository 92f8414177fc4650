use anyhow::{bail, Context, Result};
use secgain::code::io::load_code;
use secgain::code::{format_bits, Code, EnumOptions, Representation};
use secgain::convcode::{scan_convolutional, ScanRanking};
use secgain::corpus::Corpus;
use secgain::highreal::HighReal;
use secgain::secrecy::{analyze as analyze_report, secrecy_curve, strong_secrecy_gain, GainOptions, ReportOptions};
use secgain::theta::{theta_construction_a_numeric, theta_construction_a_series, DEFAULT_ORDER};
use secgain::wiretap::{load_scheme, simulate_wiretap, SimOptions};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

pub struct CurveArgs {
    pub path: PathBuf,
    pub db_min: f64,
    pub db_max: f64,
    pub points: usize,
}

fn load(path: &Path, parallel: bool) -> Result<Code> {
    let opts = EnumOptions { parallel, ..EnumOptions::default() };
    load_code(path, opts).with_context(|| format!("loading {}", path.display()))
}

fn kind(c: &Code) -> &'static str {
    match c.representation() {
        Representation::Linear { .. } => "linear",
        Representation::Explicit { .. } => "explicit",
        Representation::Z4Gray { .. } => "z4gray",
        Representation::TailBiting { .. } => "tailbiting",
    }
}

#[derive(Serialize)]
struct AnalyzeJson {
    name: String,
    kind: &'static str,
    n: usize,
    m: String,
    d: Option<usize>,
    kissing: Option<String>,
    fsd: bool,
    fsd_failure: Option<secgain::code::FsdFailure>,
    distance_invariant: Option<bool>,
    violating: Option<String>,
}

pub fn analyze(out: &mut impl Write, path: &Path, json: bool, parallel: bool) -> Result<()> {
    let c = load(path, parallel)?;
    let n = c.n();
    let cert = c.is_formally_self_dual()?;
    let d = c.min_distance().ok();
    let kissing = if d.is_some() { Some(c.kissing_number()?.to_string()) } else { None };
    // pairwise checks on very large nonlinear codes are skipped
    let inv = c.distance_invariance_check().ok();
    let report = AnalyzeJson {
        name: c.name().to_string(),
        kind: kind(&c),
        n,
        m: c.size().to_string(),
        d,
        kissing,
        fsd: cert.is_fsd,
        fsd_failure: cert.failure.clone(),
        distance_invariant: inv.as_ref().map(|i| i.invariant),
        violating: inv.and_then(|i| i.violating).map(|w| format_bits(w, n)),
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        return Ok(());
    }
    let dash = |o: Option<String>| o.unwrap_or_else(|| "-".into());
    writeln!(out, "code: {} ({})", report.name, report.kind)?;
    writeln!(out, "(n, M, d) = ({}, {}, {})", n, report.m, dash(d.map(|d| d.to_string())))?;
    writeln!(out, "kissing number: {}", dash(report.kissing.clone()))?;
    match &report.fsd_failure {
        None => writeln!(out, "formally self-dual: true")?,
        Some(f) => writeln!(out, "formally self-dual: false ({})", serde_json::to_string(f)?)?,
    }
    let inv = match (report.distance_invariant, &report.violating) {
        (Some(true), _) => "true".to_string(),
        (Some(false), Some(w)) => format!("false (codeword {w})"),
        (Some(false), None) => "false".to_string(),
        (None, _) => "skipped (too many codewords)".to_string(),
    };
    writeln!(out, "distance invariant: {inv}")?;
    Ok(())
}

pub fn enumerator(out: &mut impl Write, path: &Path, json: bool, parallel: bool) -> Result<()> {
    let c = load(path, parallel)?;
    let w = c.weight_enumerator()?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&w.to_json())?)?;
    } else {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

pub fn secrecy(
    out: &mut impl Write,
    path: &Path,
    curve: Option<CurveArgs>,
    gleason: bool,
    conditions: bool,
    parallel: bool,
) -> Result<()> {
    let c = load(path, parallel)?;
    let w = c.weight_enumerator()?;
    if let Some(cv) = &curve {
        let rows = secrecy_curve(w, cv.db_min, cv.db_max, cv.points, parallel)?;
        let mut text = String::from("tau_db,xi\n");
        for (db, xi) in rows {
            text.push_str(&format!("{db:.6},{xi:.12}\n"));
        }
        if cv.path.as_os_str() == "-" {
            out.write_all(text.as_bytes())?;
            return Ok(());
        }
        std::fs::write(&cv.path, text).with_context(|| format!("writing {}", cv.path.display()))?;
    }
    let opts = ReportOptions {
        gain: GainOptions { parallel, ..GainOptions::default() },
        gleason: gleason || conditions,
        derivative: conditions,
        ..ReportOptions::default()
    };
    let report = analyze_report(c.name(), w, &opts)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json())?)?;
    Ok(())
}

pub fn table(out: &mut impl Write, path: &Path, csv: bool, parallel: bool) -> Result<()> {
    let corpus = Corpus::load(path).with_context(|| format!("loading {}", path.display()))?;
    let opts = EnumOptions { parallel, ..EnumOptions::default() };
    let gain = GainOptions { parallel, ..GainOptions::default() };
    if csv {
        writeln!(out, "n,code,xi,expected,delta")?;
    } else {
        writeln!(out, "{:>4}  {:<24}  {:>10}  {:>10}  {:>10}", "n", "code", "xi", "expected", "|delta|")?;
    }
    for e in &corpus.entries {
        let r = corpus.resolve(e, opts).with_context(|| format!("corpus entry {:?}", e.name))?;
        let xi = strong_secrecy_gain(&r.enumerator, &gain).with_context(|| format!("corpus entry {:?}", e.name))?.xi.to_f64();
        let expected = e.expected.xi.map(|x| format!("{x}")).unwrap_or_else(|| "-".into());
        let delta = e.expected.xi.map(|x| format!("{:.6}", (xi - x).abs())).unwrap_or_else(|| "-".into());
        let n = r.enumerator.n();
        if csv {
            writeln!(out, "{n},\"{}\",{xi:.6},{expected},{delta}", e.name)?;
        } else {
            writeln!(out, "{n:>4}  {:<24}  {xi:>10.6}  {expected:>10}  {delta:>10}", e.name)?;
        }
    }
    Ok(())
}

pub fn scan(
    out: &mut impl Write,
    memory: usize,
    length: usize,
    rank: ScanRanking,
    top: Option<usize>,
    parallel: bool,
) -> Result<()> {
    let r = scan_convolutional(memory, length, rank, parallel)?;
    if r.fsd_failures > 0 {
        bail!("{} constructed tail-biting codes failed the FSD check", r.fsd_failures);
    }
    writeln!(out, "g1_octal,g2_octal,L,d,kissing,xi,necessary_score")?;
    for e in r.entries.iter().take(top.unwrap_or(usize::MAX)) {
        let score = HighReal::from_rational(&e.necessary_score).to_f64();
        writeln!(
            out,
            "{},{},{},{},{},{:.10},{:.10}",
            e.spec.g1_octal(),
            e.spec.g2_octal(),
            length,
            e.d,
            e.kissing,
            e.xi,
            score
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SimRow {
    sigma_e: f64,
    bound: f64,
    empirical: f64,
    ci_low: f64,
    ci_high: f64,
    trials: u64,
}

pub fn simulate(out: &mut impl Write, path: &Path, sigmas: &[f64], trials: u64, seed: u64, parallel: bool) -> Result<()> {
    let scheme = load_scheme(path).with_context(|| format!("loading {}", path.display()))?;
    let rows = sigmas
        .iter()
        .map(|&s| {
            let r = simulate_wiretap(&scheme, s, trials, seed, SimOptions { parallel })?;
            Ok(SimRow {
                sigma_e: r.sigma_e,
                bound: r.bound,
                empirical: r.empirical_pce,
                ci_low: r.ci_low,
                ci_high: r.ci_high,
                trials: r.trials,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    Ok(())
}

pub fn theta(out: &mut impl Write, path: &Path, order: Option<usize>, tau: Option<f64>, json: bool) -> Result<()> {
    let c = load(path, secgain::par::DEFAULT_PARALLEL)?;
    let w = c.weight_enumerator()?;
    if let Some(tau) = tau {
        let v = theta_construction_a_numeric(w, &HighReal::from_f64(tau))?;
        writeln!(out, "{}", v.to_string_digits(40))?;
        return Ok(());
    }
    let s = theta_construction_a_series(w, order.unwrap_or(DEFAULT_ORDER))?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&s.to_json())?)?;
        return Ok(());
    }
    match s.integer_coeffs() {
        Some(cs) => {
            let list: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", list.join(", "))?;
        }
        None => {
            for (k, c) in s.half_coeffs().iter().enumerate() {
                writeln!(out, "{}\t{c}", if k % 2 == 0 { format!("{}", k / 2) } else { format!("{}.5", k / 2) })?;
            }
        }
    }
    Ok(())
}
