//! The generalized Ostrowski numeration system of a directive word.
//!
//! The place values are the standard-word lengths `q_k`, computed by the
//! order-`k` recursions and never by building words. Digit strings are stored
//! least-significant first, matching the intercept digit order `c_1 c_2 ⋯`.

use crate::directive::DirectiveWord;
use crate::error::Error;
use crate::Result;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// A digit sequence `c_1 c_2 ⋯`, least-significant digit first.
///
/// With an empty period the string is finite and is implicitly extended by
/// zeros wherever an infinite sequence is expected. Validity against the
/// Ostrowski conditions is cached after the first check; a `DigitString` is
/// meant to be used with a single numeration system.
#[derive(Debug)]
pub struct DigitString {
    pre: Vec<u64>,
    per: Vec<u64>,
    valid: OnceLock<bool>,
}

impl Clone for DigitString {
    fn clone(&self) -> Self {
        Self { pre: self.pre.clone(), per: self.per.clone(), valid: self.valid.clone() }
    }
}

impl PartialEq for DigitString {
    fn eq(&self, other: &Self) -> bool {
        self.pre == other.pre && self.per == other.per
    }
}
impl Eq for DigitString {}

impl DigitString {
    /// A finite digit string (zero-extended when used as an intercept).
    pub fn finite(digits: Vec<u64>) -> Self {
        let mut pre = digits;
        while pre.last() == Some(&0) {
            pre.pop();
        }
        Self { pre, per: Vec::new(), valid: OnceLock::new() }
    }

    /// The eventually periodic string `pre · per^ω`.
    pub fn eventually_periodic(pre: Vec<u64>, per: Vec<u64>) -> Self {
        if per.iter().all(|&d| d == 0) {
            return Self::finite(pre);
        }
        Self { pre, per, valid: OnceLock::new() }
    }

    /// The all-zero intercept `0^ω` (the intercept of every epistandard word).
    pub fn zeros() -> Self {
        Self::finite(Vec::new())
    }

    /// The digit `c_i` for 1-based `i` (0 beyond the end of a finite string).
    pub fn digit(&self, i: usize) -> u64 {
        assert!(i >= 1, "digit positions are 1-based");
        if i <= self.pre.len() {
            self.pre[i - 1]
        } else if self.per.is_empty() {
            0
        } else {
            self.per[(i - self.pre.len() - 1) % self.per.len()]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.per.is_empty()
    }

    /// Number of explicitly stored leading digits.
    pub fn preperiod_len(&self) -> usize {
        self.pre.len()
    }

    pub fn period_len(&self) -> usize {
        self.per.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pre.iter().all(|&d| d == 0) && self.per.iter().all(|&d| d == 0)
    }

    pub(crate) fn cached_validity(&self) -> &OnceLock<bool> {
        &self.valid
    }

    /// Parses a bare digit string: a digit run like `1101`, or a bracketed
    /// comma list like `[1,1,0,1]` for digits above 9.
    pub fn parse_finite(text: &str) -> Result<Self> {
        Ok(Self::finite(parse_digit_block(text)?))
    }

    /// Parses the intercept grammar: `zeros`, `digits:<string>`
    /// (zero-extended), or `periodic:<pre>|<per>`.
    pub fn parse(text: &str) -> Result<Self> {
        if text == "zeros" {
            return Ok(Self::zeros());
        }
        if let Some(rest) = text.strip_prefix("digits:") {
            return Self::parse_finite(rest);
        }
        if let Some(rest) = text.strip_prefix("periodic:") {
            let (pre, per) = rest
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("expected `<pre>|<per>` in {text:?}")))?;
            let per = parse_digit_block(per)?;
            if per.is_empty() {
                return Err(Error::Parse("periodic intercept needs a nonempty period".into()));
            }
            return Ok(Self::eventually_periodic(parse_digit_block(pre)?, per));
        }
        Err(Error::Parse(format!(
            "intercept {text:?} must be `zeros`, `digits:…`, or `periodic:…`"
        )))
    }
}

fn parse_digit_block(text: &str) -> Result<Vec<u64>> {
    if let Some(inner) = text.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unterminated bracket list {text:?}")))?;
        if inner.is_empty() {
            return Ok(Vec::new());
        }
        inner
            .split(',')
            .map(|p| {
                p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad digit {p:?}")))
            })
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(u64::from)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}")))
            })
            .collect()
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = |digits: &[u64], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if digits.iter().any(|&d| d > 9) {
                let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            } else {
                for d in digits {
                    write!(f, "{d}")?;
                }
                Ok(())
            }
        };
        if self.is_finite() {
            block(&self.pre, f)
        } else {
            write!(f, "periodic:")?;
            block(&self.pre, f)?;
            write!(f, "|")?;
            block(&self.per, f)
        }
    }
}

struct NumInner {
    directive: DirectiveWord,
    /// `q_0, q_1, …`; append-only.
    q: RwLock<Vec<BigUint>>,
    /// `|u_{r_k+1}| = a_1 q_0 + ⋯ + a_k q_{k−1}` for `k ≥ 0`; append-only.
    ustart: RwLock<Vec<BigUint>>,
}

/// Place values, greedy expansions, and Ostrowski validity for one directive
/// word. Cheaply cloneable; clones share the caches.
#[derive(Clone)]
pub struct NumerationSystem {
    inner: Arc<NumInner>,
}

impl NumerationSystem {
    pub fn new(directive: DirectiveWord) -> Self {
        Self {
            inner: Arc::new(NumInner {
                directive,
                q: RwLock::new(vec![BigUint::one()]),
                ustart: RwLock::new(vec![BigUint::zero()]),
            }),
        }
    }

    pub fn directive(&self) -> &DirectiveWord {
        &self.inner.directive
    }

    fn ensure_q(&self, k: usize) {
        {
            let q = self.inner.q.read().unwrap();
            if q.len() > k {
                return;
            }
        }
        let dw = &self.inner.directive;
        let mut q = self.inner.q.write().unwrap();
        while q.len() <= k {
            let m = q.len(); // computing q_m
            let value = match dw.anchor_run(m) {
                Some(j) => {
                    // q_m = a_m q_{m−1} + ⋯ + a_{j+1} q_j + q_{j−1}
                    let mut acc = q[j - 1].clone();
                    for t in j + 1..=m {
                        acc += BigUint::from(dw.run_len(t)) * &q[t - 1];
                    }
                    acc
                }
                None => {
                    // q_m = a_m q_{m−1} + ⋯ + a_1 q_0 + 1
                    let mut acc = BigUint::one();
                    for t in 1..=m {
                        acc += BigUint::from(dw.run_len(t)) * &q[t - 1];
                    }
                    acc
                }
            };
            q.push(value);
        }
    }

    /// The place value `q_k` for `k ≥ 0` (the length of the `k`th standard
    /// word, computed by the recursions alone).
    pub fn place_value(&self, k: usize) -> BigUint {
        self.ensure_q(k);
        self.inner.q.read().unwrap()[k].clone()
    }

    /// `q_i` extended below zero by the convention `q_{−1} = 1`, `q_{−i} = 0`
    /// for `i ≥ 2`.
    pub fn place_value_ext(&self, i: i64) -> BigUint {
        if i >= 0 {
            self.place_value(i as usize)
        } else if i == -1 {
            BigUint::one()
        } else {
            BigUint::zero()
        }
    }

    /// `|u_{r_k+1}|`, the length of the palindromic prefix just after run `k`
    /// (0 for `k = 0`).
    pub fn central_len_run_start(&self, k: usize) -> BigUint {
        {
            let u = self.inner.ustart.read().unwrap();
            if u.len() > k {
                return u[k].clone();
            }
        }
        self.ensure_q(k.saturating_sub(1));
        let dw = &self.inner.directive;
        let mut u = self.inner.ustart.write().unwrap();
        while u.len() <= k {
            let m = u.len();
            let prev = u[m - 1].clone();
            let term = BigUint::from(dw.run_len(m)) * self.place_value(m - 1);
            u.push(prev + term);
        }
        u[k].clone()
    }

    /// `|u_{r_k}|`, the length of the palindromic prefix at the end of run
    /// `k`, with the convention `|u_{r_0}| = −1`.
    pub fn central_len_run_end(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::from(-1);
        }
        let base = self.central_len_run_start(k - 1);
        let extra = BigUint::from(self.inner.directive.run_len(k) - 1) * self.place_value(k - 1);
        BigInt::from(base + extra)
    }

    /// The value `Σ c_i q_{i−1}` of the first `m` digits of `c`.
    pub fn value_prefix(&self, c: &DigitString, m: usize) -> BigUint {
        if m == 0 {
            return BigUint::zero();
        }
        self.ensure_q(m - 1);
        let q = self.inner.q.read().unwrap();
        let mut acc = BigUint::zero();
        for i in 1..=m {
            let d = c.digit(i);
            if d != 0 {
                acc += BigUint::from(d) * &q[i - 1];
            }
        }
        acc
    }

    /// The value of a finite digit string.
    pub fn value(&self, c: &DigitString) -> Result<BigUint> {
        if !c.is_finite() {
            return Err(Error::InvalidArgument(
                "value is defined for finite digit strings only".into(),
            ));
        }
        Ok(self.value_prefix(c, c.preperiod_len()))
    }

    /// The greedy expansion of `n`, least-significant digit first, with no
    /// trailing zeros; `represent(0) = ε`.
    pub fn represent(&self, n: &BigUint) -> DigitString {
        if n.is_zero() {
            return DigitString::finite(Vec::new());
        }
        let mut k = 0usize;
        while self.place_value(k) <= *n {
            k += 1;
        }
        // Digits occupy positions 1..=k since q_{k−1} ≤ n < q_k.
        let mut digits = vec![0u64; k];
        let mut rest = n.clone();
        for i in (1..=k).rev() {
            let place = self.place_value(i - 1);
            let (digit, rem) = rest.div_rem(&place);
            digits[i - 1] = u64::try_from(digit).expect("digit exceeds u64; run length overflow");
            rest = rem;
        }
        debug_assert!(rest.is_zero());
        DigitString::finite(digits)
    }

    /// Digit positions that must be inspected for an exact validity verdict.
    fn validity_horizon(&self, c: &DigitString) -> usize {
        if c.is_finite() {
            return c.preperiod_len();
        }
        match self.inner.directive.runs_cycle() {
            Some((k0, r)) => {
                let m = r.lcm(&c.period_len());
                let k1 = (k0 + 2 * r).max(c.preperiod_len() + r + 1);
                k1 + 2 * m
            }
            // Stream-backed directive: certified to this horizon only.
            None => c.preperiod_len() + 2 * c.period_len().max(1) + 64,
        }
    }

    /// Whether `c` satisfies the generalized Ostrowski conditions:
    /// `0 ≤ c_i ≤ a_i` everywhere, and whenever `P(r_k + 1)` exists and
    /// `c_i = a_i` for `i = k, k−1, …, j(k)+1`, then `c_{j(k)} = 0`. A finite
    /// string is valid iff its zero-extension is. The verdict is exact for
    /// eventually periodic data and certified to a horizon for stream-backed
    /// directive words; it is cached inside `c`.
    pub fn is_valid(&self, c: &DigitString) -> bool {
        *c.cached_validity().get_or_init(|| self.check_validity(c, self.validity_horizon(c)))
    }

    /// Uncached validity check over the first `horizon` digit positions.
    pub fn check_validity(&self, c: &DigitString, horizon: usize) -> bool {
        let dw = &self.inner.directive;
        for k in 1..=horizon {
            if c.digit(k) > dw.run_len(k) {
                return false;
            }
            if let Some(j) = dw.anchor_run(k) {
                let full = (j + 1..=k).all(|i| c.digit(i) == dw.run_len(i));
                if full && c.digit(j) != 0 {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn sys(text: &str) -> NumerationSystem {
        NumerationSystem::new(DirectiveWord::parse(text).unwrap())
    }

    fn qs(n: &NumerationSystem, upto: usize) -> Vec<u64> {
        (0..=upto).map(|k| n.place_value(k).to_u64().unwrap()).collect()
    }

    #[test]
    fn place_values_golden() {
        assert_eq!(qs(&sys("periodic:|012"), 6), vec![1, 2, 4, 7, 13, 24, 44]);
        assert_eq!(qs(&sys("periodic:|01"), 4), vec![1, 2, 3, 5, 8]);
        assert_eq!(qs(&sys("periodic:|001122"), 4), vec![1, 3, 9, 25, 71]);
    }

    #[test]
    fn value_examples() {
        let tri = sys("periodic:|012");
        assert_eq!(tri.value(&DigitString::parse_finite("1101").unwrap()).unwrap(), 10u32.into());
        assert_eq!(tri.value(&DigitString::zeros()).unwrap(), 0u32.into());
        let fib = sys("periodic:|01");
        assert_eq!(fib.value(&DigitString::parse_finite("101").unwrap()).unwrap(), 4u32.into());
        assert!(fib.value(&DigitString::eventually_periodic(vec![], vec![1])).is_err());
    }

    #[test]
    fn represent_examples() {
        let tri = sys("periodic:|012");
        assert_eq!(tri.represent(&7u32.into()).to_string(), "0001");
        assert_eq!(tri.represent(&BigUint::zero()).to_string(), "");
        assert_eq!(tri.represent(&10u32.into()).to_string(), "1101");
    }

    #[test]
    fn validity_examples() {
        let tri = sys("periodic:|012");
        assert!(!tri.is_valid(&DigitString::parse_finite("111").unwrap()));
        assert!(tri.is_valid(&DigitString::parse_finite("0001").unwrap()));
        assert!(!tri.is_valid(&DigitString::parse_finite("2").unwrap()));
        // Periodic intercepts.
        let paired = sys("periodic:|001122");
        assert!(paired.is_valid(&DigitString::eventually_periodic(vec![], vec![1])));
        let fib = sys("periodic:|01");
        assert!(fib.is_valid(&DigitString::eventually_periodic(vec![], vec![0, 1])));
        assert!(!fib.is_valid(&DigitString::eventually_periodic(vec![], vec![1])));
    }

    #[test]
    fn roundtrip_and_bound_small() {
        for text in ["periodic:|01", "periodic:|012", "periodic:|0123", "periodic:|001122"] {
            let n = sys(text);
            for v in 0u32..5_000 {
                let rep = n.represent(&v.into());
                assert_eq!(n.value(&rep).unwrap(), v.into(), "{text} at {v}");
                assert!(n.is_valid(&rep), "{text}: represent({v}) must be valid");
            }
        }
    }

    #[test]
    fn central_lengths() {
        let paired = sys("periodic:|001122");
        // |u_{r_k}| for k = 1..5 are the Fig-style interval endpoints 1, 5, 17, 51, 147.
        let ends: Vec<i64> =
            (0..=5).map(|k| i64::try_from(paired.central_len_run_end(k)).unwrap()).collect();
        assert_eq!(ends, vec![-1, 1, 5, 17, 51, 147]);
        assert_eq!(paired.central_len_run_start(4).to_u64().unwrap(), 76);
    }

    #[test]
    fn digit_string_parsing() {
        assert_eq!(DigitString::parse("zeros").unwrap(), DigitString::zeros());
        let p = DigitString::parse("periodic:1|0").unwrap();
        // A periodic spec whose period is all zeros collapses to a finite string.
        assert!(p.is_finite());
        assert_eq!(p.digit(1), 1);
        assert_eq!(p.digit(2), 0);
        let b = DigitString::parse("digits:[12,0,3]").unwrap();
        assert_eq!((b.digit(1), b.digit(2), b.digit(3)), (12, 0, 3));
        assert_eq!(b.to_string(), "[12,0,3]");
        assert!(DigitString::parse("periodic:1").is_err());
        assert!(DigitString::parse("digits:1x").is_err());
    }
}
