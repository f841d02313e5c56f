//! Directive words `Δ = y_1 y_2 ⋯` and their multiplicative form
//! `Δ = x_1^{a_1} x_2^{a_2} ⋯` with `x_k ≠ x_{k+1}` and `a_k ≥ 1`.
//!
//! Two kinds of specification are supported: eventually periodic letter
//! sequences (exact, with decidable properties) and regular words driven by a
//! partial-quotient stream (properties of stream-backed words are checked up
//! to a stated horizon). Eventually constant words are rejected at
//! construction for periodic specs; for stream specs this is a documented,
//! unchecked precondition.

use crate::error::Error;
use crate::words::Letter;
use crate::Result;
use num_integer::Integer;
use std::fmt;
use std::sync::{Arc, RwLock};

/// One run of the multiplicative form: `x_k^{a_k}` ending at position `r_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplicativeEntry {
    /// 1-based run index `k`.
    pub index: usize,
    /// The run letter `x_k`.
    pub letter: Letter,
    /// The run length `a_k ≥ 1`.
    pub length: u64,
    /// The cumulative sum `r_k = a_1 + ⋯ + a_k`.
    pub end: u64,
}

/// The partial-quotient sequence of a regular directive word.
#[derive(Clone)]
pub enum QuotientSpec {
    /// `a_1 ⋯ a_p (b_1 ⋯ b_q)^ω`, all entries ≥ 1.
    Periodic { preperiod: Vec<u64>, period: Vec<u64> },
    /// `a_k = f(k)` for 1-based `k`. All values must be ≥ 1 (unchecked).
    Stream(Arc<dyn Fn(usize) -> u64 + Send + Sync>),
}

impl fmt::Debug for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::Periodic { preperiod, period } => {
                write!(f, "Periodic({preperiod:?}|{period:?})")
            }
            QuotientSpec::Stream(_) => write!(f, "Stream(..)"),
        }
    }
}

#[derive(Clone, Debug)]
enum Spec {
    /// Letters `pre · per^ω`.
    Periodic { preperiod: Vec<Letter>, period: Vec<Letter> },
    /// `x_k = (phase + k − 1) mod d`, run lengths from the quotient spec.
    Regular { d: u8, phase: u8, quotients: QuotientSpec },
}

struct RunCache {
    runs: Vec<MultiplicativeEntry>,
    /// Next unscanned 0-based letter offset (periodic letter specs only).
    scan_pos: u64,
}

struct Inner {
    alphabet: u16,
    spec: Spec,
    cache: RwLock<RunCache>,
}

/// An infinite directive word, cheaply cloneable; clones share caches.
#[derive(Clone)]
pub struct DirectiveWord {
    inner: Arc<Inner>,
}

impl fmt::Debug for DirectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirectiveWord({self})")
    }
}

impl fmt::Display for DirectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.spec {
            Spec::Periodic { preperiod, period } => {
                write!(f, "periodic:")?;
                for &l in preperiod {
                    write!(f, "{l}")?;
                }
                write!(f, "|")?;
                for &l in period {
                    write!(f, "{l}")?;
                }
                Ok(())
            }
            Spec::Regular { d, phase, quotients } => {
                write!(f, "regular:d={d}")?;
                if *phase != 0 {
                    write!(f, ";phase={phase}")?;
                }
                match quotients {
                    QuotientSpec::Periodic { preperiod, period } => {
                        let fmt_list = |v: &[u64]| {
                            v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
                        };
                        write!(f, ";a={}|{}", fmt_list(preperiod), fmt_list(period))
                    }
                    QuotientSpec::Stream(_) => write!(f, ";a=<stream>"),
                }
            }
        }
    }
}

impl DirectiveWord {
    /// An eventually periodic directive word `pre · per^ω`.
    ///
    /// The period must be nonempty and must not make the word eventually
    /// constant (aperiodicity of the resulting episturmian words).
    pub fn periodic(preperiod: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("period must be nonempty".into()));
        }
        if period.iter().all(|&l| l == period[0]) {
            return Err(Error::InvalidArgument(
                "directive word is eventually constant; such words are rejected".into(),
            ));
        }
        let alphabet = preperiod
            .iter()
            .chain(period.iter())
            .map(|&l| u16::from(l) + 1)
            .max()
            .unwrap_or(1);
        Ok(Self {
            inner: Arc::new(Inner {
                alphabet,
                spec: Spec::Periodic { preperiod, period },
                cache: RwLock::new(RunCache { runs: Vec::new(), scan_pos: 0 }),
            }),
        })
    }

    /// A regular directive word of period `d`: `x_k = (k − 1) mod d` with run
    /// lengths from `quotients`.
    pub fn regular(d: u8, quotients: QuotientSpec) -> Result<Self> {
        Self::regular_with_phase(d, 0, quotients)
    }

    fn regular_with_phase(d: u8, phase: u8, quotients: QuotientSpec) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("regular period d = {d} must be ≥ 2")));
        }
        if let QuotientSpec::Periodic { preperiod, period } = &quotients {
            if period.is_empty() {
                return Err(Error::InvalidArgument("quotient period must be nonempty".into()));
            }
            if preperiod.iter().chain(period.iter()).any(|&a| a == 0) {
                return Err(Error::InvalidArgument("partial quotients must be ≥ 1".into()));
            }
        }
        Ok(Self {
            inner: Arc::new(Inner {
                alphabet: u16::from(d),
                spec: Spec::Regular { d, phase, quotients },
                cache: RwLock::new(RunCache { runs: Vec::new(), scan_pos: 0 }),
            }),
        })
    }

    /// Parses the textual grammar:
    /// `periodic:<pre>|<per>` (single-digit letters, preperiod may be empty)
    /// or `regular:d=<d>;a=<list>|<periodic-list>` (comma-separated run
    /// lengths, e.g. `regular:d=3;a=|2` for all `a_k = 2`).
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(rest) = text.strip_prefix("periodic:") {
            let (pre, per) = split_bar(rest)?;
            let parse_letters = |s: &str| -> Result<Vec<Letter>> {
                s.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as Letter)
                            .ok_or_else(|| Error::Parse(format!("invalid letter {c:?} in {text:?}")))
                    })
                    .collect()
            };
            Self::periodic(parse_letters(pre)?, parse_letters(per)?)
        } else if let Some(rest) = text.strip_prefix("regular:") {
            let mut d = None;
            let mut quotients = None;
            for part in rest.split(';') {
                if let Some(v) = part.strip_prefix("d=") {
                    d = Some(
                        v.parse::<u8>()
                            .map_err(|_| Error::Parse(format!("invalid d in {text:?}")))?,
                    );
                } else if let Some(v) = part.strip_prefix("a=") {
                    let (pre, per) = split_bar(v)?;
                    quotients = Some(QuotientSpec::Periodic {
                        preperiod: parse_u64_list(pre)?,
                        period: parse_u64_list(per)?,
                    });
                } else {
                    return Err(Error::Parse(format!("unknown field {part:?} in {text:?}")));
                }
            }
            let d = d.ok_or_else(|| Error::Parse(format!("missing d= in {text:?}")))?;
            let quotients =
                quotients.ok_or_else(|| Error::Parse(format!("missing a= in {text:?}")))?;
            Self::regular(d, quotients)
        } else {
            Err(Error::Parse(format!(
                "directive word {text:?} must start with `periodic:` or `regular:`"
            )))
        }
    }

    /// Alphabet size `d_max` carried by the word.
    pub fn alphabet(&self) -> u16 {
        self.inner.alphabet
    }

    /// Whether all properties of this word are exactly decidable (no stream).
    pub fn is_eventually_periodic(&self) -> bool {
        !matches!(
            &self.inner.spec,
            Spec::Regular { quotients: QuotientSpec::Stream(_), .. }
        )
    }

    /// The letter `y_n` for 1-based `n`.
    pub fn letter(&self, n: u64) -> Letter {
        assert!(n >= 1, "letter positions are 1-based");
        match &self.inner.spec {
            Spec::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                if n <= pre {
                    preperiod[(n - 1) as usize]
                } else {
                    period[((n - pre - 1) % period.len() as u64) as usize]
                }
            }
            Spec::Regular { .. } => {
                let k = self.run_containing(n);
                self.run_letter(k)
            }
        }
    }

    fn raw_quotient(&self, k: usize) -> u64 {
        match &self.inner.spec {
            Spec::Regular { quotients, .. } => match quotients {
                QuotientSpec::Periodic { preperiod, period } => {
                    if k <= preperiod.len() {
                        preperiod[k - 1]
                    } else {
                        period[(k - preperiod.len() - 1) % period.len()]
                    }
                }
                QuotientSpec::Stream(f) => {
                    let a = f(k);
                    assert!(a >= 1, "stream partial quotient a_{k} = 0 violates a_k >= 1");
                    a
                }
            },
            Spec::Periodic { .. } => unreachable!(),
        }
    }

    fn extend_runs_to(&self, k: usize) {
        let mut cache = self.inner.cache.write().unwrap();
        while cache.runs.len() < k {
            let index = cache.runs.len() + 1;
            let prev_end = cache.runs.last().map_or(0, |r| r.end);
            let entry = match &self.inner.spec {
                Spec::Regular { d, phase, .. } => {
                    let letter = ((usize::from(*phase) + index - 1) % usize::from(*d)) as Letter;
                    let length = self.raw_quotient(index);
                    MultiplicativeEntry { index, letter, length, end: prev_end + length }
                }
                Spec::Periodic { .. } => {
                    // Scan the letter sequence for the next maximal run.
                    let start = cache.scan_pos;
                    let letter = self.letter(start + 1);
                    let mut len = 1u64;
                    while self.letter(start + len + 1) == letter {
                        len += 1;
                    }
                    cache.scan_pos = start + len;
                    MultiplicativeEntry { index, letter, length: len, end: prev_end + len }
                }
            };
            cache.runs.push(entry);
        }
    }

    /// The multiplicative entry `(x_k, a_k, r_k)` for 1-based run index `k`.
    pub fn multiplicative(&self, k: usize) -> MultiplicativeEntry {
        assert!(k >= 1, "run indices are 1-based");
        self.extend_runs_to(k);
        self.inner.cache.read().unwrap().runs[k - 1]
    }

    /// `x_k`.
    pub fn run_letter(&self, k: usize) -> Letter {
        self.multiplicative(k).letter
    }

    /// `a_k`.
    pub fn run_len(&self, k: usize) -> u64 {
        self.multiplicative(k).length
    }

    /// `r_k`, with `r_0 = 0`.
    pub fn run_end(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.multiplicative(k).end
        }
    }

    /// The run index `k` with `r_{k−1} < n ≤ r_k`.
    pub fn run_containing(&self, n: u64) -> usize {
        assert!(n >= 1);
        loop {
            {
                let cache = self.inner.cache.read().unwrap();
                if cache.runs.last().is_some_and(|r| r.end >= n) {
                    return cache.runs.partition_point(|r| r.end < n) + 1;
                }
            }
            let have = self.inner.cache.read().unwrap().runs.len();
            self.extend_runs_to(have + have.max(8));
        }
    }

    /// `P(n) = max{p < n : y_p = y_n}`, or `None` if the letter `y_n` has no
    /// earlier occurrence.
    pub fn prev_same_letter(&self, n: u64) -> Option<u64> {
        assert!(n >= 1);
        let k = self.run_containing(n);
        let entry = self.multiplicative(k);
        let run_start = entry.end - entry.length + 1;
        if n > run_start {
            return Some(n - 1);
        }
        (1..k)
            .rev()
            .find(|&j| self.run_letter(j) == entry.letter)
            .map(|j| self.run_end(j))
    }

    /// The largest `j ≤ k` with `x_j = x_{k+1}`; defined exactly when
    /// `P(r_k + 1)` exists. This is the run the order-`k` place-value
    /// recursion anchors on.
    pub fn anchor_run(&self, k: usize) -> Option<usize> {
        let target = self.run_letter(k + 1);
        (1..=k).rev().find(|&j| self.run_letter(j) == target)
    }

    /// Detects regularity: returns `d` if `x_1, …, x_d` are pairwise distinct
    /// and the run-letter sequence is `(x_1 ⋯ x_d)`-periodic. Exact for
    /// eventually periodic specs; stream-backed specs are checked over
    /// `horizon` runs.
    pub fn regular_period(&self, horizon: usize) -> Option<u8> {
        assert!(horizon >= 2);
        if let Spec::Regular { d, .. } = &self.inner.spec {
            return Some(*d);
        }
        // Candidate d: distance to the first reoccurrence of x_1.
        let x1 = self.run_letter(1);
        let mut d = None;
        let scan = match self.runs_cycle() {
            Some((k0, r)) => k0 + 2 * r + 2,
            None => horizon,
        };
        for j in 2..=scan {
            if self.run_letter(j) == x1 {
                d = Some(j - 1);
                break;
            }
        }
        let d = d?;
        if d < 2 {
            return None;
        }
        // Distinctness of the first cycle.
        for i in 1..=d {
            for j in i + 1..=d {
                if self.run_letter(i) == self.run_letter(j) {
                    return None;
                }
            }
        }
        // Periodicity of the letter pattern over the decisive window.
        let window = match self.runs_cycle() {
            Some((k0, r)) => k0 + r.lcm(&d) + d,
            None => horizon,
        };
        for k in 1..=window {
            if self.run_letter(k + d) != self.run_letter(k) {
                return None;
            }
        }
        u8::try_from(d).ok()
    }

    /// Returns `(k0, R)` such that the run sequence is periodic with period
    /// `R` from run index `k0` on, or `None` for stream-backed specs.
    pub fn runs_cycle(&self) -> Option<(usize, usize)> {
        match &self.inner.spec {
            Spec::Regular { d, quotients, .. } => match quotients {
                QuotientSpec::Periodic { preperiod, period } => {
                    Some((preperiod.len() + 1, (usize::from(*d)).lcm(&period.len())))
                }
                QuotientSpec::Stream(_) => None,
            },
            Spec::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                let per = period.len() as u64;
                // Track run-start phases beyond the preperiod; the run
                // decomposition repeats as soon as a phase reoccurs.
                let mut seen: Vec<(u64, usize)> = Vec::new();
                for k in 1.. {
                    let entry = self.multiplicative(k);
                    let start = entry.end - entry.length; // 0-based letter offset
                    if start < pre {
                        continue;
                    }
                    let phase = (start - pre) % per;
                    if let Some(&(_, k_prev)) =
                        seen.iter().find(|&&(ph, _)| ph == phase)
                    {
                        return Some((k_prev, k - k_prev));
                    }
                    seen.push((phase, k));
                    if seen.len() > period.len() + 1 {
                        break; // unreachable: only |per| distinct phases exist
                    }
                }
                None
            }
        }
    }

    /// The number of letters occurring infinitely often in the word.
    pub fn recurring_letter_count(&self) -> usize {
        match &self.inner.spec {
            Spec::Regular { d, .. } => usize::from(*d),
            Spec::Periodic { .. } => {
                let (k0, r) = self.runs_cycle().expect("periodic specs always cycle");
                let mut letters: Vec<Letter> = (k0..k0 + r).map(|k| self.run_letter(k)).collect();
                letters.sort_unstable();
                letters.dedup();
                letters.len()
            }
        }
    }

    /// `sup_k a_k` when it is exactly computable (eventually periodic specs).
    pub fn quotient_bound(&self) -> Option<u64> {
        match &self.inner.spec {
            Spec::Regular { quotients, .. } => match quotients {
                QuotientSpec::Periodic { preperiod, period } => {
                    preperiod.iter().chain(period.iter()).copied().max()
                }
                QuotientSpec::Stream(_) => None,
            },
            Spec::Periodic { .. } => {
                let (k0, r) = self.runs_cycle()?;
                Some((1..k0 + r).map(|k| self.run_len(k)).max().unwrap())
            }
        }
    }

    /// The directive word with the first `j` runs removed, `T^{r_j}(Δ)`.
    pub fn shift_runs(&self, j: usize) -> DirectiveWord {
        if j == 0 {
            return self.clone();
        }
        match &self.inner.spec {
            Spec::Regular { d, phase, quotients } => {
                let new_phase = ((usize::from(*phase) + j) % usize::from(*d)) as u8;
                let shifted = match quotients {
                    QuotientSpec::Periodic { preperiod, period } => {
                        if j <= preperiod.len() {
                            QuotientSpec::Periodic {
                                preperiod: preperiod[j..].to_vec(),
                                period: period.clone(),
                            }
                        } else {
                            let t = (j - preperiod.len()) % period.len();
                            let mut rotated = period[t..].to_vec();
                            rotated.extend_from_slice(&period[..t]);
                            QuotientSpec::Periodic { preperiod: Vec::new(), period: rotated }
                        }
                    }
                    QuotientSpec::Stream(f) => {
                        let f = Arc::clone(f);
                        QuotientSpec::Stream(Arc::new(move |k| f(k + j)))
                    }
                };
                Self::regular_with_phase(*d, new_phase, shifted)
                    .expect("shift of a valid regular word is valid")
            }
            Spec::Periodic { preperiod, period } => {
                let s = self.run_end(j);
                let pre = preperiod.len() as u64;
                let (new_pre, new_per) = if s <= pre {
                    (preperiod[s as usize..].to_vec(), period.clone())
                } else {
                    let t = ((s - pre) % period.len() as u64) as usize;
                    let mut rotated = period[t..].to_vec();
                    rotated.extend_from_slice(&period[..t]);
                    (Vec::new(), rotated)
                };
                Self::periodic(new_pre, new_per)
                    .expect("shift of a non-eventually-constant word stays aperiodic")
            }
        }
    }
}

fn split_bar(s: &str) -> Result<(&str, &str)> {
    s.split_once('|')
        .ok_or_else(|| Error::Parse(format!("expected `<pre>|<per>` in {s:?}")))
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("invalid run length {part:?}")))
        })
        .collect()
}
