use super::function::f_closed;
use super::gleason::GleasonCoeffs;
use super::symmetry_point;
use crate::code::WeightEnumerator;
use crate::highreal::HighReal;
use crate::poly::{q, qi, sign_changes, Interval, RatPoly, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Enclosure [lower, upper] of a minimum; exact when the ends coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedMin {
    pub lower: Q,
    pub upper: Q,
}

impl CertifiedMin {
    pub fn exact(&self) -> Option<&Q> {
        (self.lower == self.upper).then_some(&self.lower)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SufficientVerdict {
    /// The polynomial is positive on [3/4, 1]; the strong gain sits at tau = 1.
    Certified,
    NotCertified,
    /// Fewer than two Gleason coefficients (n < 8).
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct SufficientCheck {
    pub verdict: SufficientVerdict,
    /// P(h) = sum_{r>=1} r a_r h^(r-1).
    pub polynomial: RatPoly,
    pub minimum: Option<CertifiedMin>,
}

/// Minimum of `p` over [lo, hi] from its exact critical points: endpoints are
/// evaluated exactly, interior critical points are isolated with a Sturm
/// sequence and enclosed by bisection.
pub fn certified_minimum(p: &RatPoly, lo: &Q, hi: &Q) -> CertifiedMin {
    let mut upper = p.eval(lo).min(p.eval(hi));
    let mut lower = upper.clone();
    let d = p.derivative();
    if d.is_zero() {
        return CertifiedMin { lower, upper };
    }
    let mut ds = d.square_free();
    for end in [lo, hi] {
        if ds.degree().unwrap_or(0) > 0 && ds.eval(end).is_zero() {
            ds = ds.div_rem(&RatPoly::linear_root(end)).0;
        }
    }
    let mut root_boxes: Vec<Interval> = Vec::new();
    'restart: loop {
        root_boxes.clear();
        if ds.degree().unwrap_or(0) == 0 {
            break;
        }
        let sturm = ds.sturm_sequence();
        let count = |a: &Q, b: &Q| sign_changes(&sturm, a) - sign_changes(&sturm, b);
        let mut stack = vec![(lo.clone(), hi.clone(), count(lo, hi))];
        while let Some((a, b, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            let m = (&a + &b) / qi(2);
            if ds.eval(&m).is_zero() {
                let v = p.eval(&m);
                upper = upper.min(v.clone());
                lower = lower.min(v);
                ds = ds.div_rem(&RatPoly::linear_root(&m)).0;
                continue 'restart;
            }
            if c == 1 {
                root_boxes.push(Interval::new(a, b));
            } else {
                let cl = count(&a, &m);
                stack.push((m.clone(), b, c - cl));
                stack.push((a, m, cl));
            }
        }
        break;
    }
    let fine = Q::new(BigInt::one(), BigInt::one() << 96);
    let finest = Q::new(BigInt::one(), BigInt::one() << 256);
    for mut b in root_boxes {
        let sa = ds.eval(&b.lo).signum();
        for target in [&fine, &finest] {
            while b.width() > *target {
                let m = b.mid();
                let sm = ds.eval(&m);
                if sm.is_zero() {
                    b = Interval::point(m);
                    break;
                }
                if sm.signum() == sa {
                    b.lo = m;
                } else {
                    b.hi = m;
                }
            }
            let enc = p.eval_interval(&b);
            upper = upper.min(p.eval(&b.mid()));
            if enc.lo >= upper || target == &finest {
                lower = lower.min(enc.lo);
                break;
            }
        }
    }
    CertifiedMin { lower: lower.min(upper.clone()), upper }
}

/// Checks sum_{r>=1} r a_r h^(r-1) > 0 on the closed interval [3/4, 1].
pub fn sufficient_condition_check(g: &GleasonCoeffs) -> SufficientCheck {
    if g.a.len() < 2 {
        return SufficientCheck { verdict: SufficientVerdict::NotApplicable, polynomial: RatPoly::zero(), minimum: None };
    }
    let p = RatPoly::new(g.a.iter().enumerate().skip(1).map(|(r, a)| a * qi(r as i64)).collect());
    let m = certified_minimum(&p, &q(3, 4), &qi(1));
    let verdict = if m.lower.is_positive() { SufficientVerdict::Certified } else { SufficientVerdict::NotCertified };
    SufficientCheck { verdict, polynomial: p, minimum: Some(m) }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivativeVerdict {
    /// f_C' changes sign once, from - to +, at 1/sqrt 2.
    Confirmed { root: f64 },
    /// Sign changes elsewhere (or none at all).
    Refuted { roots: Vec<f64> },
    /// The derivative vanishes numerically on a stretch of the grid.
    Inconclusive { interval: (f64, f64) },
}

#[derive(Clone, Debug)]
pub struct DerivativeAnalysis {
    pub verdict: DerivativeVerdict,
    /// Sign changes of f_C' with their direction (true for - to +).
    pub roots: Vec<(f64, bool)>,
    /// 2^(n/2) / f_C at the best local minimum found.
    pub xi: Option<HighReal>,
}

/// sum_w A_w (1+t)^a (1-t)^b [a/(1+t) - b/(1-t)], a = (n-w)/2, b = w/2.
fn fprime_f64(counts: &[f64], t: f64) -> (f64, f64) {
    let n = counts.len() - 1;
    let (lp, lm) = ((1.0 + t).ln(), (1.0 - t).ln());
    let mut sum = 0.0;
    let mut scale = 0.0;
    for (w, &c) in counts.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let a = (n - w) as f64 / 2.0;
        let b = w as f64 / 2.0;
        let base = c * (a * lp + b * lm).exp();
        let term = base * (a / (1.0 + t) - b / (1.0 - t));
        sum += term;
        scale += term.abs();
    }
    (sum, scale)
}

fn fprime_hp(w: &WeightEnumerator, t: &HighReal) -> HighReal {
    let n = w.n();
    let one = HighReal::one();
    let two = HighReal::from_u64(2);
    let p = &one + t;
    let m = &one - t;
    let s = p.sqrt();
    let r = m.sqrt();
    let mut acc = HighReal::zero();
    for (wt, c) in w.support() {
        let a = HighReal::from_u64((n - wt) as u64) / &two;
        let b = HighReal::from_u64(wt as u64) / &two;
        let base = HighReal::from_biguint(c) * s.powi((n - wt) as u32) * r.powi(wt as u32);
        acc = acc + base * (a / &p - b / &m);
    }
    acc
}

/// Sign of f_C' at a grid point, falling back to high precision near zero.
fn sign_at(w: &WeightEnumerator, counts: &[f64], t: f64) -> i8 {
    let (v, scale) = fprime_f64(counts, t);
    if v.abs() > 1e-10 * scale {
        return if v > 0.0 { 1 } else { -1 };
    }
    let h = fprime_hp(w, &HighReal::from_f64(t));
    let tiny = HighReal::from_f64(scale) * HighReal::parse("1e-80").expect("literal");
    if h.abs() <= tiny {
        0
    } else if h.is_positive() {
        1
    } else {
        -1
    }
}

/// Evaluates the closed-form f_C' on a 4096-point grid and refines every sign change.
pub fn derivative_sign_analysis(w: &WeightEnumerator) -> DerivativeAnalysis {
    const GRID: usize = 4096;
    let counts = w.counts_f64();
    let ts: Vec<f64> = (1..=GRID).map(|i| i as f64 / (GRID + 1) as f64).collect();
    let signs: Vec<i8> = ts.iter().map(|&t| sign_at(w, &counts, t)).collect();

    // stretches of zero derivative are not decidable from samples
    let mut run = 0;
    for (i, &s) in signs.iter().enumerate() {
        if s == 0 {
            run += 1;
            if run >= 2 {
                let start = i + 1 - run;
                let end = signs[i..].iter().position(|&x| x != 0).map(|k| i + k).unwrap_or(GRID - 1);
                return DerivativeAnalysis {
                    verdict: DerivativeVerdict::Inconclusive { interval: (ts[start], ts[end]) },
                    roots: Vec::new(),
                    xi: None,
                };
            }
        } else {
            run = 0;
        }
    }

    let mut roots: Vec<(HighReal, bool)> = Vec::new();
    let mut prev: Option<(usize, i8)> = None;
    for (i, &s) in signs.iter().enumerate() {
        if s == 0 {
            continue;
        }
        if let Some((j, ps)) = prev {
            if ps != s {
                let root = if i - j == 2 {
                    HighReal::from_f64(ts[j + 1])
                } else {
                    bisect_root(w, ts[j], ts[i], ps)
                };
                roots.push((root, s > 0));
            }
        }
        prev = Some((i, s));
    }

    let sym = symmetry_point();
    let minima: Vec<&HighReal> = roots.iter().filter(|(_, up)| *up).map(|(r, _)| r).collect();
    let xi = minima
        .iter()
        .map(|r| f_closed(w, r))
        .reduce(|a, b| a.min(&b))
        .map(|f| HighReal::from_u64(2).powf(&(HighReal::from_u64(w.n() as u64) / HighReal::from_u64(2))) / f);
    let verdict = match roots.as_slice() {
        [(r, true)] if (r - &sym).abs().to_f64() < 1e-6 => DerivativeVerdict::Confirmed { root: r.to_f64() },
        _ => DerivativeVerdict::Refuted { roots: roots.iter().map(|(r, _)| r.to_f64()).collect() },
    };
    DerivativeAnalysis { verdict, roots: roots.iter().map(|(r, up)| (r.to_f64(), *up)).collect(), xi }
}

fn bisect_root(w: &WeightEnumerator, a: f64, b: f64, sign_a: i8) -> HighReal {
    let mut lo = HighReal::from_f64(a);
    let mut hi = HighReal::from_f64(b);
    let two = HighReal::from_u64(2);
    let tol = HighReal::from_f64(1e-15);
    while (&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        let v = fprime_hp(w, &mid);
        if v.is_zero() {
            return mid;
        }
        if (v.is_positive() && sign_a > 0) || (!v.is_positive() && sign_a < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// sum_w A_w / (w + 1), which also equals the integral of phi_C over [0, 1].
pub fn necessary_condition_score(w: &WeightEnumerator) -> Q {
    w.support()
        .map(|(wt, c)| Q::new(BigInt::from(c.clone()), BigInt::from(wt as u64 + 1)))
        .fold(Q::zero(), |a, b| a + b)
}

/// phi_C(u) = sum_w A_w u^w.
pub fn phi(w: &WeightEnumerator, u: f64) -> f64 {
    w.counts_f64().iter().enumerate().map(|(k, c)| c * u.powi(k as i32)).sum()
}

#[derive(Clone, Debug)]
pub struct ScoreComparison {
    pub scores: Vec<Q>,
    /// Indices sorted by ascending score.
    pub ranking: Vec<usize>,
    /// (i, j): same length and phi_i <= phi_j on the whole u-grid, hence Xi_i >= Xi_j.
    pub dominance: Vec<(usize, usize)>,
    /// Every dominance pair has score_i <= score_j.
    pub consistent: bool,
}

/// Scores and the phi-dominance relation over a grid of `grid` points in (0, 1).
pub fn compare_scores(codes: &[&WeightEnumerator], grid: usize) -> ScoreComparison {
    let scores: Vec<Q> = codes.iter().map(|w| necessary_condition_score(w)).collect();
    let mut ranking: Vec<usize> = (0..codes.len()).collect();
    ranking.sort_by(|&a, &b| scores[a].cmp(&scores[b]).then(a.cmp(&b)));
    let us: Vec<f64> = (1..=grid).map(|k| k as f64 / (grid + 1) as f64).collect();
    let curves: Vec<Vec<f64>> = codes.iter().map(|w| us.iter().map(|&u| phi(w, u)).collect()).collect();
    let mut dominance = Vec::new();
    for i in 0..codes.len() {
        for j in 0..codes.len() {
            if i == j || codes[i].n() != codes[j].n() || codes[i] == codes[j] {
                continue;
            }
            if curves[i].iter().zip(&curves[j]).all(|(a, b)| a <= b) {
                dominance.push((i, j));
            }
        }
    }
    let consistent = dominance.iter().all(|&(i, j)| scores[i] <= scores[j]);
    ScoreComparison { scores, ranking, dominance, consistent }
}
