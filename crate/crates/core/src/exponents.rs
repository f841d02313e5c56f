//! Diophantine exponents, initial critical exponents, and
//! irrationality-exponent bounds.
//!
//! The Diophantine exponent of an infinite word is `1 + limsup_n n / inrc(n)`.
//! For a regular directive word the ratio `n / inrc(n)` attains its maximum
//! over each interval `I_k` at the right endpoint of one of the (at most
//! four) constant pieces of the case analysis, so the estimator evaluates
//! exact rationals at those endpoints only. The limsup over a finite horizon
//! is reported as the maximum over the last full period of the combined
//! directive/intercept pattern.

use crate::complexity::case_analysis;
use crate::engine::{word_from_intercept, WordTower};
use crate::error::Error;
use crate::numeration::DigitString;
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

// ---------------------------------------------------------------------------
// Interval arithmetic for root expressions

/// A closed floating-point interval; arithmetic is outward-monotone on the
/// endpoint combinations (adequate at the tolerances used here).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn add(&self, other: Interval) -> Interval {
        Interval { lo: self.lo + other.lo, hi: self.hi + other.hi }
    }

    pub fn sub(&self, other: Interval) -> Interval {
        Interval { lo: self.lo - other.hi, hi: self.hi - other.lo }
    }

    pub fn mul(&self, other: Interval) -> Interval {
        let products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        Interval {
            lo: products.iter().copied().fold(f64::INFINITY, f64::min),
            hi: products.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn recip(&self) -> Interval {
        assert!(self.lo > 0.0 || self.hi < 0.0, "interval crosses zero");
        Interval { lo: 1.0 / self.hi, hi: 1.0 / self.lo }
    }

    pub fn div(&self, other: Interval) -> Interval {
        self.mul(other.recip())
    }

    pub fn scale(&self, c: f64) -> Interval {
        self.mul(Interval::point(c))
    }

    pub fn shift(&self, c: f64) -> Interval {
        Interval { lo: self.lo + c, hi: self.hi + c }
    }

    pub fn powi(&self, mut e: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Dominant roots of place-value recurrences

/// The dominant positive root of `x^m = c_1 x^{m−1} + ⋯ + c_m`, bracketed to
/// a requested width.
#[derive(Clone, Debug)]
pub struct RecurrenceRoot {
    pub coefficients: Vec<u64>,
    pub low: f64,
    pub high: f64,
}

impl RecurrenceRoot {
    pub fn interval(&self) -> Interval {
        Interval { lo: self.low, hi: self.high }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.low + self.high)
    }
}

/// Bisects the characteristic polynomial of `q_k = Σ coeff_i q_{k−i}` on
/// `[1, 1 + Σ coeff_i]` down to width `tol`.
pub fn dominant_root(coefficients: &[u64], tol: f64) -> Result<RecurrenceRoot> {
    if coefficients.is_empty() || tol <= 0.0 {
        return Err(Error::BadRecurrence("need coefficients and a positive tolerance".into()));
    }
    let eval = |x: f64| -> f64 {
        // x^m − c_1 x^{m−1} − ⋯ − c_m, by Horner.
        let mut acc = 1.0f64;
        for &c in coefficients {
            acc = acc * x - c as f64;
        }
        acc
    };
    let sum: f64 = coefficients.iter().map(|&c| c as f64).sum();
    let (mut lo, mut hi) = (1.0f64, 1.0 + sum);
    if !(eval(lo) < 0.0 && eval(hi) > 0.0) {
        return Err(Error::BadRecurrence(format!(
            "no sign change on [1, {}] for coefficients {coefficients:?}",
            1.0 + sum
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // float resolution reached
        }
        if eval(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RecurrenceRoot { coefficients: coefficients.to_vec(), low: lo, high: hi })
}

// ---------------------------------------------------------------------------
// Finite-horizon exponent estimates

/// A finite-horizon exponent estimate with its per-index trace.
#[derive(Clone, Debug)]
pub struct ExponentEstimate {
    /// `1 +` the maximum recorded ratio over the tail window.
    pub value: BigRational,
    /// Per-index maxima of the defining ratio (index `k` for the Diophantine
    /// estimator, window length `n` for the initial critical estimator).
    pub trace: Vec<(usize, BigRational)>,
    pub index_range: (usize, usize),
    /// Tail-window length used for the limsup.
    pub tail_window: usize,
    /// Whether the phase-aligned per-index maxima are nondecreasing within
    /// 1e−9 on the tail.
    pub monotone_tail: bool,
    /// False when the value is only a lower-bound estimate (brute-force
    /// routes).
    pub certified: bool,
}

impl ExponentEstimate {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::INFINITY)
    }
}

fn ratio(n: &BigInt, d: &BigInt) -> BigRational {
    BigRational::new(n.clone(), d.clone())
}

/// Default tail window: one full period of the combined directive/intercept
/// pattern (the per-`k` maxima are eventually periodic over it).
fn default_window(tower: &WordTower, intercept: &DigitString) -> usize {
    let runs = tower.directive().runs_cycle().map_or(4, |(_, r)| r);
    runs.lcm(&intercept.period_len().max(1)).max(1)
}

/// Diophantine-exponent estimate `1 + max` of `n / inrc(n)` evaluated at the
/// right endpoint of every nonempty piece of the case analysis, for
/// `k ∈ [k_min, k_max]`, with the limsup taken over the tail window.
pub fn dio_estimate(
    tower: &WordTower,
    intercept: &DigitString,
    k_min: usize,
    k_max: usize,
) -> Result<ExponentEstimate> {
    dio_estimate_with_window(tower, intercept, k_min, k_max, None)
}

/// As [`dio_estimate`] with an explicit tail window.
pub fn dio_estimate_with_window(
    tower: &WordTower,
    intercept: &DigitString,
    k_min: usize,
    k_max: usize,
    window: Option<usize>,
) -> Result<ExponentEstimate> {
    if tower.regular_period().is_none() {
        return Err(Error::Unsupported(
            "the endpoint estimator needs a regular directive word".into(),
        ));
    }
    if !tower.numeration().is_valid(intercept) {
        return Err(Error::InvalidIntercept(format!(
            "{intercept} violates the Ostrowski conditions"
        )));
    }
    if k_max < k_min {
        return Err(Error::InvalidArgument("empty k range".into()));
    }
    let mut trace: Vec<(usize, BigRational)> = Vec::with_capacity(k_max - k_min + 1);
    for k in k_min..=k_max {
        let analysis = case_analysis(tower, intercept, k)?;
        let mut best: Option<BigRational> = None;
        for piece in &analysis.pieces {
            if piece.right > piece.left && piece.right >= BigInt::one() {
                debug_assert!(piece.value.is_positive());
                let r = ratio(&piece.right, &piece.value);
                if best.as_ref().is_none_or(|b| r > *b) {
                    best = Some(r);
                }
            }
        }
        if let Some(best) = best {
            trace.push((k, best));
        }
    }
    let window = window.unwrap_or_else(|| default_window(tower, intercept));
    finish_estimate(trace, (k_min, k_max), window, true)
}

fn finish_estimate(
    trace: Vec<(usize, BigRational)>,
    index_range: (usize, usize),
    window: usize,
    certified: bool,
) -> Result<ExponentEstimate> {
    if trace.is_empty() {
        return Err(Error::InvalidArgument("no ratio candidates in the requested range".into()));
    }
    let window = window.max(1).min(trace.len());
    let tail = &trace[trace.len() - window..];
    let max_tail = tail.iter().map(|(_, r)| r.clone()).max().unwrap();
    // Phase-aligned monotonicity over the last two windows.
    let eps = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
    let mut monotone = true;
    if trace.len() >= 2 * window {
        let start = trace.len() - 2 * window;
        for i in start..trace.len() - window {
            if trace[i + window].1.clone() + eps.clone() < trace[i].1 {
                monotone = false;
                break;
            }
        }
    }
    Ok(ExponentEstimate {
        value: max_tail + BigRational::one(),
        trace,
        index_range,
        tail_window: window,
        monotone_tail: monotone,
        certified,
    })
}

/// Uncertified fallback for non-regular directive words: `1 + max_{n ≤ N}
/// n / inrc(n)` over an explicit prefix, by brute force.
pub fn dio_brute_estimate(
    tower: &WordTower,
    intercept: &DigitString,
    n_max: usize,
    budget: Option<usize>,
) -> Result<ExponentEstimate> {
    let budget = budget.unwrap_or_else(|| (8 * n_max + 4096).min(tower.cap()));
    let word = word_from_intercept(tower, intercept, budget)?;
    let mut trace = Vec::new();
    for n in 1..=n_max {
        if let Some(m) = crate::complexity::inrc_brute(&word, n)? {
            trace.push((n, ratio(&BigInt::from(n), &BigInt::from(m))));
        }
    }
    finish_estimate(trace, (1, n_max), 1, false)
}

// ---------------------------------------------------------------------------
// Closed forms for epistandard words

/// The exactly evaluated Diophantine exponent of an epistandard word.
#[derive(Clone, Debug)]
pub struct ClosedExponent {
    pub value: Interval,
    /// The dominant root used, when the place-value recurrence has constant
    /// coefficients.
    pub root: Option<RecurrenceRoot>,
}

impl ClosedExponent {
    /// The index (critical exponent) of the same word is one more than its
    /// Diophantine exponent.
    pub fn index_value(&self) -> Interval {
        self.value.shift(1.0)
    }
}

/// `dio(c_Δ) = 1 + limsup_k (a_{k+1} + |u_{r_{k−d+1}}| / q_k)` for an
/// eventually periodic regular directive word. With constant partial
/// quotients `a` the limit is `1 + a / (1 − ρ^{−d})` with `ρ` the dominant
/// root of the place-value recurrence; otherwise the eventually periodic
/// per-phase limits are evaluated on a deep tail of exact rationals.
pub fn dio_standard_closed(tower: &WordTower, tol: f64) -> Result<ClosedExponent> {
    let d = usize::from(tower.regular_period().ok_or_else(|| {
        Error::Unsupported("the closed form needs a regular directive word".into())
    })?);
    let dw = tower.directive();
    if !dw.is_eventually_periodic() {
        return Err(Error::Unsupported(
            "the closed form needs eventually periodic partial quotients".into(),
        ));
    }
    let (k0, run_period) = dw.runs_cycle().expect("eventually periodic");
    let uniform = (1..=k0 + run_period + d).map(|k| dw.run_len(k)).collect::<Vec<_>>();
    let all_equal = uniform.windows(2).all(|w| w[0] == w[1]);

    if all_equal {
        let a = uniform[0];
        let mut coefficients = vec![a; d - 1];
        coefficients.push(1);
        let root = dominant_root(&coefficients, tol)?;
        let rho = root.interval();
        // 1 + a / (1 − ρ^{−d})
        let denom = Interval::point(1.0).sub(rho.powi(d as u32).recip());
        let value = Interval::point(a as f64).div(denom).shift(1.0);
        return Ok(ClosedExponent { value, root: Some(root) });
    }

    // Eventually periodic quotients: the per-k values a_{k+1} + |u_{r_{k+1−d}}|/q_k
    // converge per phase class; evaluate a deep tail of exact rationals.
    let num = tower.numeration();
    let phases = run_period.max(1);
    let deep = (k0 + 40 * phases.max(d)).max(240);
    let per_k = |k: usize| -> BigRational {
        let e = num.central_len_run_end(k + 1); // |u_{r_{k+1}}|
        ratio(&e, &BigInt::from(num.place_value(k)))
    };
    let tail_max = (deep - phases..deep).map(per_k).max().unwrap();
    let prev_max = (deep - 2 * phases..deep - phases).map(per_k).max().unwrap();
    let v = tail_max.to_f64().unwrap() + 1.0;
    let err = (tail_max - prev_max).to_f64().unwrap().abs().max(1e-15);
    Ok(ClosedExponent { value: Interval { lo: v - err, hi: v + err }, root: None })
}

// ---------------------------------------------------------------------------
// Initial critical exponent (brute-force lower-bound estimator)

/// `1 + max_{n ≤ n_max} n / prep(n)` over a generated prefix; ratios are only
/// recorded where the repetition is witnessed inside the budget, so the value
/// is a certified lower bound but not a certified limsup.
pub fn ice_estimate(
    tower: &WordTower,
    intercept: &DigitString,
    n_max: usize,
    budget: Option<usize>,
) -> Result<ExponentEstimate> {
    let budget = budget.unwrap_or_else(|| (8 * n_max + 4096).min(tower.cap()));
    let word = word_from_intercept(tower, intercept, budget)?;
    let mut trace = Vec::new();
    for n in 1..=n_max {
        if let Some(p) = crate::complexity::prefix_nrc_brute(&word, n)? {
            trace.push((n, ratio(&BigInt::from(n), &BigInt::from(p))));
        }
    }
    finish_estimate(trace, (1, n_max), usize::MAX, false)
}

/// Maximum of `n / prep(n)` over a window of `n`, for tail inspection.
pub fn ice_ratio_max(
    tower: &WordTower,
    intercept: &DigitString,
    n_min: usize,
    n_max: usize,
    budget: Option<usize>,
) -> Result<BigRational> {
    let budget = budget.unwrap_or_else(|| (8 * n_max + 4096).min(tower.cap()));
    let word = word_from_intercept(tower, intercept, budget)?;
    let mut best: Option<BigRational> = None;
    for n in n_min..=n_max {
        if let Some(p) = crate::complexity::prefix_nrc_brute(&word, n)? {
            let r = ratio(&BigInt::from(n), &BigInt::from(p));
            if best.as_ref().is_none_or(|b| r > *b) {
                best = Some(r);
            }
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("no certified prefix repetition in window".into()))
}

// ---------------------------------------------------------------------------
// Named constants

/// Exactly evaluated Diophantine-exponent constants for specific words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedConstant {
    /// The three-letter word with paired directive runs and intercept `1^ω`:
    /// `1 + (β − 1)/2` with `β` the real root of `x³ − 2x² − 2x − 1`.
    ThreeLetterOnesIntercept,
    /// 4-bonacci subshift, intercept `(001)^ω` (or a conjugate):
    /// `1 + (−7ζ₄³ + 15ζ₄² + 13ζ₄ − 4)/27`.
    FourBonacci001,
    /// 4-bonacci subshift, intercept `(011)^ω` (or a conjugate):
    /// `1 + ζ₄² − ζ₄`.
    FourBonacci011,
    /// Lower bound for d-bonacci subshift words whose intercepts contain
    /// `0^d` infinitely often: `2 + 1/(ζ_d^d − ζ_d)`.
    DBonacciZeroRunBound(u8),
    /// The Diophantine exponent of a Fibonacci-subshift word outside the
    /// standard orbit lies in `[3, 2 + ζ₂]`.
    FibonacciSubshiftRange,
}

/// A scalar constant or a closed range.
#[derive(Clone, Copy, Debug)]
pub enum ConstantValue {
    Scalar(Interval),
    Range(Interval, Interval),
}

impl ConstantValue {
    pub fn scalar(&self) -> f64 {
        match self {
            ConstantValue::Scalar(i) => i.midpoint(),
            ConstantValue::Range(lo, _) => lo.midpoint(),
        }
    }
}

fn bonacci_root(d: u8, tol: f64) -> Result<Interval> {
    Ok(dominant_root(&vec![1u64; usize::from(d)], tol)?.interval())
}

/// Evaluates a named constant with root brackets of width `tol`.
pub fn named_constant(which: NamedConstant, tol: f64) -> Result<ConstantValue> {
    match which {
        NamedConstant::ThreeLetterOnesIntercept => {
            let beta = dominant_root(&[2, 2, 1], tol)?.interval();
            Ok(ConstantValue::Scalar(beta.shift(-1.0).scale(0.5).shift(1.0)))
        }
        NamedConstant::FourBonacci001 => {
            let z = bonacci_root(4, tol)?;
            let poly = z
                .powi(3)
                .scale(-7.0)
                .add(z.powi(2).scale(15.0))
                .add(z.scale(13.0))
                .shift(-4.0);
            Ok(ConstantValue::Scalar(poly.scale(1.0 / 27.0).shift(1.0)))
        }
        NamedConstant::FourBonacci011 => {
            let z = bonacci_root(4, tol)?;
            Ok(ConstantValue::Scalar(z.powi(2).sub(z).shift(1.0)))
        }
        NamedConstant::DBonacciZeroRunBound(d) => {
            if d < 2 {
                return Err(Error::InvalidArgument("d must be ≥ 2".into()));
            }
            let z = bonacci_root(d, tol)?;
            let denom = z.powi(u32::from(d)).sub(z);
            Ok(ConstantValue::Scalar(denom.recip().shift(2.0)))
        }
        NamedConstant::FibonacciSubshiftRange => {
            let z = bonacci_root(2, tol)?;
            Ok(ConstantValue::Range(Interval::point(3.0), z.shift(2.0)))
        }
    }
}

// ---------------------------------------------------------------------------
// Irrationality-exponent bounds

/// Whether the partial quotients are unbounded, and whether that verdict is
/// exact or certified only to a scan horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiouvilleFlag {
    pub unbounded_quotients: bool,
    pub exact: bool,
}

/// `(lower, upper, liouville)`: the Diophantine estimate is a lower bound for
/// the irrationality exponent of any real number with the word as fractional
/// part; the upper bound is `(2K+1)³ (dio + 1)` with `K = d` (the factor
/// count `(d−1)n + 1` is at most `dn`), infinite when the partial quotients
/// are unbounded. The number is Liouville exactly in the unbounded case.
pub fn irrationality_bounds(
    tower: &WordTower,
    intercept: &DigitString,
    k_min: usize,
    k_max: usize,
) -> Result<(f64, f64, LiouvilleFlag)> {
    let d = usize::from(tower.regular_period().ok_or_else(|| {
        Error::Unsupported("irrationality bounds need a regular directive word".into())
    })?);
    let dw = tower.directive();
    let flag = match dw.quotient_bound() {
        Some(_) => LiouvilleFlag { unbounded_quotients: false, exact: true },
        None => {
            // Stream-backed quotients: growth between scan halves witnesses
            // unboundedness to the horizon.
            let horizon = (3 * k_max).max(60);
            let first = (1..=horizon / 2).map(|k| dw.run_len(k)).max().unwrap();
            let second = (horizon / 2 + 1..=horizon).map(|k| dw.run_len(k)).max().unwrap();
            LiouvilleFlag { unbounded_quotients: second > first, exact: false }
        }
    };
    let dio = dio_estimate(tower, intercept, k_min, k_max)?.to_f64();
    let upper = if flag.unbounded_quotients {
        f64::INFINITY
    } else {
        let factor = (2 * d + 1).pow(3) as f64;
        factor * (dio + 1.0)
    };
    Ok((dio, upper, flag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directive::{DirectiveWord, QuotientSpec};
    use std::sync::Arc;

    fn tower(text: &str) -> WordTower {
        WordTower::from_directive(DirectiveWord::parse(text).unwrap())
    }

    #[test]
    fn dominant_roots_golden() {
        let golden = dominant_root(&[1, 1], 1e-12).unwrap();
        assert!((golden.midpoint() - 1.618_033_988_75).abs() < 1e-9);
        let zeta4 = dominant_root(&[1, 1, 1, 1], 1e-12).unwrap();
        assert!((zeta4.midpoint() - 1.9276).abs() < 1e-4);
        let beta = dominant_root(&[2, 2, 1], 1e-12).unwrap();
        assert!((beta.midpoint() - 2.8312).abs() < 1e-4);
        assert!(dominant_root(&[0], 1e-12).is_err());
    }

    #[test]
    fn closed_forms_for_bonacci_words() {
        let cases = [("periodic:|01", 2.6180), ("periodic:|012", 2.1915), ("periodic:|0123", 2.0781)];
        for (text, expected) in cases {
            let closed = dio_standard_closed(&tower(text), 1e-12).unwrap();
            assert!(
                (closed.value.midpoint() - expected).abs() < 1e-3,
                "{text}: {} vs {expected}",
                closed.value.midpoint()
            );
            assert!(closed.value.width() < 1e-9);
        }
        // Index of the standard word = dio + 1.
        let fib = dio_standard_closed(&tower("periodic:|01"), 1e-12).unwrap();
        assert!((fib.index_value().midpoint() - 3.6180).abs() < 1e-3);
    }

    #[test]
    fn closed_form_nonuniform_quotients_agrees_with_estimate() {
        let t = tower("regular:d=2;a=|2,1");
        let closed = dio_standard_closed(&t, 1e-12).unwrap();
        let est = dio_estimate(&t, &DigitString::zeros(), 0, 60).unwrap();
        assert!(
            (closed.value.midpoint() - est.to_f64()).abs() < 1e-6,
            "{} vs {}",
            closed.value.midpoint(),
            est.to_f64()
        );
    }

    #[test]
    fn dio_estimates_match_paper_constants() {
        let fib = dio_estimate(&tower("periodic:|01"), &DigitString::zeros(), 0, 40).unwrap();
        assert!((fib.to_f64() - 2.6180).abs() < 1e-3, "{}", fib.to_f64());
        assert!(fib.certified);
        assert!(fib.monotone_tail);
        let paired = dio_estimate(
            &tower("periodic:|001122"),
            &DigitString::parse("periodic:|1").unwrap(),
            0,
            40,
        )
        .unwrap();
        assert!((paired.to_f64() - 1.9156).abs() < 1e-3, "{}", paired.to_f64());
    }

    #[test]
    fn unbounded_quotients_blow_up() {
        let dw = DirectiveWord::regular(2, QuotientSpec::Stream(Arc::new(|k| k as u64))).unwrap();
        let t = WordTower::from_directive(dw);
        let est = dio_estimate(&t, &DigitString::zeros(), 0, 30).unwrap();
        assert!(est.to_f64() > 10.0, "{}", est.to_f64());
        let (lower, upper, flag) =
            irrationality_bounds(&t, &DigitString::zeros(), 0, 30).unwrap();
        assert!(lower > 10.0);
        assert!(upper.is_infinite());
        assert!(flag.unbounded_quotients);
        assert!(!flag.exact);
    }

    #[test]
    fn irrationality_bounds_fibonacci() {
        let (lower, upper, flag) =
            irrationality_bounds(&tower("periodic:|01"), &DigitString::zeros(), 0, 40).unwrap();
        assert!((lower - 2.618).abs() < 1e-3);
        assert!((upper - 125.0 * (lower + 1.0)).abs() < 1e-9);
        assert!((upper - 452.25).abs() < 0.5);
        assert!(!flag.unbounded_quotients);
        assert!(flag.exact);
    }

    #[test]
    fn named_constants_golden() {
        let tol = 1e-12;
        let three = named_constant(NamedConstant::ThreeLetterOnesIntercept, tol).unwrap();
        assert!((three.scalar() - 1.9156).abs() < 1e-4);
        let fb001 = named_constant(NamedConstant::FourBonacci001, tol).unwrap();
        assert!((fb001.scalar() - 1.9873).abs() < 1e-4);
        let fb011 = named_constant(NamedConstant::FourBonacci011, tol).unwrap();
        assert!((fb011.scalar() - 2.7879).abs() < 1e-4);
        match named_constant(NamedConstant::DBonacciZeroRunBound(2), tol).unwrap() {
            ConstantValue::Scalar(i) => assert!((i.midpoint() - 3.0).abs() < 1e-9),
            _ => panic!("scalar expected"),
        }
        match named_constant(NamedConstant::FibonacciSubshiftRange, tol).unwrap() {
            ConstantValue::Range(lo, hi) => {
                assert!((lo.midpoint() - 3.0).abs() < 1e-12);
                assert!((hi.midpoint() - 3.6180).abs() < 1e-3);
            }
            _ => panic!("range expected"),
        }
    }

    #[test]
    fn ice_estimates() {
        // The Fibonacci word: ice = dio = 1 + golden ratio.
        let fib = tower("periodic:|01");
        let est = ice_estimate(&fib, &DigitString::zeros(), 400, None).unwrap();
        assert!((est.to_f64() - 2.618).abs() < 2e-2, "{}", est.to_f64());
        assert!(!est.certified);
        // Only finitely many square prefixes: the tail ratio stays below 1.
        let paired = tower("periodic:|001122");
        let ones = DigitString::parse("periodic:|1").unwrap();
        let tail = ice_ratio_max(&paired, &ones, 50, 400, None).unwrap();
        assert!(tail.to_f64().unwrap() + 1.0 < 2.0, "{}", tail.to_f64().unwrap());
        // ice ≤ dio pointwise on a regular example.
        let dio = dio_estimate(&paired, &ones, 0, 30).unwrap();
        let ice = ice_estimate(&paired, &ones, 200, None).unwrap();
        assert!(ice.value <= dio.value + BigRational::new(BigInt::from(1), BigInt::from(100)));
    }
}
