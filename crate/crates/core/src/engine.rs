//! Construction machinery for episturmian words: the morphisms `L_a`, standard
//! and central words, certified prefix generation from an intercept, intercept
//! decoding, and the digit odometer realizing the shift map.
//!
//! Everything that only needs lengths works with big integers and is never
//! subject to the materialization cap; explicit words are produced only below
//! the cap.

use crate::directive::DirectiveWord;
use crate::error::Error;
use crate::numeration::{DigitString, NumerationSystem};
use crate::words::{FiniteWord, Letter};
use crate::Result;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

/// Default cap on explicitly materialized symbols.
pub const DEFAULT_CAP: usize = 10_000_000;

/// The image of `w` under the morphism `L_a` (`a ↦ a`, `x ↦ ax` for `x ≠ a`).
pub fn letter_image(a: Letter, w: &FiniteWord) -> FiniteWord {
    let mut out = Vec::with_capacity(2 * w.len());
    for &x in w.symbols() {
        if x == a {
            out.push(a);
        } else {
            out.push(a);
            out.push(x);
        }
    }
    FiniteWord::new(out, w.alphabet().max(u16::from(a) + 1)).expect("letters stay in alphabet")
}

/// Either a finite word or the formal inverse of a single letter, which has
/// length −1 by convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedWord {
    Word(FiniteWord),
    InverseLetter(Letter),
}

impl SignedWord {
    pub fn signed_len(&self) -> i64 {
        match self {
            SignedWord::Word(w) => w.len() as i64,
            SignedWord::InverseLetter(_) => -1,
        }
    }
}

struct TowerInner {
    num: NumerationSystem,
    cap: usize,
    /// Full standard words `s_0, s_1, …` as long as `q_k ≤ cap`.
    s_words: RwLock<Vec<Arc<Vec<Letter>>>>,
    /// Materialized prefix of the epistandard word, grown monotonically.
    c_prefix: RwLock<Arc<Vec<Letter>>>,
    /// `|τ_k(y)|` rows, one per run index `k`.
    tau_len: RwLock<Vec<Vec<BigUint>>>,
    /// `|μ_t(z)|` rows, one per letter index `t`.
    mu_len: RwLock<Vec<Vec<BigUint>>>,
    /// `|u_j|` for `j ≥ 1` (index 0 unused).
    central_len: RwLock<Vec<BigUint>>,
    /// Memoized run-shifted towers `T^{r_j}(Δ)`.
    shifted: RwLock<HashMap<usize, WordTower>>,
    regular: OnceLock<Option<u8>>,
}

/// Shared computation context for one directive word: numeration system,
/// length calculus, and capped word materialization. Clones share all caches.
#[derive(Clone)]
pub struct WordTower {
    inner: Arc<TowerInner>,
}

impl WordTower {
    pub fn new(num: NumerationSystem) -> Self {
        Self::with_cap(num, DEFAULT_CAP)
    }

    pub fn with_cap(num: NumerationSystem, cap: usize) -> Self {
        Self {
            inner: Arc::new(TowerInner {
                num,
                cap,
                s_words: RwLock::new(Vec::new()),
                c_prefix: RwLock::new(Arc::new(Vec::new())),
                tau_len: RwLock::new(Vec::new()),
                mu_len: RwLock::new(Vec::new()),
                central_len: RwLock::new(Vec::new()),
                shifted: RwLock::new(HashMap::new()),
                regular: OnceLock::new(),
            }),
        }
    }

    pub fn from_directive(dw: DirectiveWord) -> Self {
        Self::new(NumerationSystem::new(dw))
    }

    pub fn numeration(&self) -> &NumerationSystem {
        &self.inner.num
    }

    pub fn directive(&self) -> &DirectiveWord {
        self.inner.num.directive()
    }

    pub fn cap(&self) -> usize {
        self.inner.cap
    }

    /// The regularity period of the directive word, detected once.
    pub fn regular_period(&self) -> Option<u8> {
        *self.inner.regular.get_or_init(|| self.directive().regular_period(64))
    }

    /// The tower for `T^{r_j}(Δ)`, memoized per `j`.
    pub fn shifted(&self, j: usize) -> WordTower {
        if j == 0 {
            return self.clone();
        }
        if let Some(t) = self.inner.shifted.read().unwrap().get(&j) {
            return t.clone();
        }
        let tower = WordTower::with_cap(
            NumerationSystem::new(self.directive().shift_runs(j)),
            self.inner.cap,
        );
        self.inner
            .shifted
            .write()
            .unwrap()
            .entry(j)
            .or_insert(tower)
            .clone()
    }

    fn checked_len(&self, len: &BigUint, what: &str) -> Result<usize> {
        match len.to_usize() {
            Some(n) if n <= self.inner.cap => Ok(n),
            _ => Err(Error::ResourceLimit(format!(
                "{what} needs {len} symbols, above the cap of {}",
                self.inner.cap
            ))),
        }
    }

    /// `|τ_k(y)|` where `τ_k = L_{x_1}^{a_1} ∘ ⋯ ∘ L_{x_k}^{a_k}`.
    pub fn tau_image_len(&self, k: usize, y: Letter) -> BigUint {
        {
            let rows = self.inner.tau_len.read().unwrap();
            if rows.len() > k {
                return rows[k][usize::from(y)].clone();
            }
        }
        let alphabet = usize::from(self.directive().alphabet()).max(usize::from(y) + 1);
        let mut rows = self.inner.tau_len.write().unwrap();
        if rows.is_empty() {
            rows.push(vec![BigUint::from(1u32); alphabet]);
        }
        while rows.len() <= k {
            let m = rows.len(); // filling row for τ_m
            let x_m = self.directive().run_letter(m);
            let step = BigUint::from(self.directive().run_len(m)) * self.inner.num.place_value(m - 1);
            let prev = &rows[m - 1];
            let row: Vec<BigUint> = (0..alphabet)
                .map(|z| {
                    if z == usize::from(x_m) {
                        prev[z].clone()
                    } else {
                        &step + &prev[z]
                    }
                })
                .collect();
            rows.push(row);
        }
        rows[k][usize::from(y)].clone()
    }

    /// `‖C_y‖ = |μ_{r_k+ℓ}(y)|`, the cycle length for letter `y` in the Rauzy
    /// graphs of orders inside the subinterval `(k, ℓ)`.
    pub fn cycle_len(&self, k: usize, l: u64, y: Letter) -> BigUint {
        if y == self.directive().run_letter(k + 1) {
            self.inner.num.place_value(k)
        } else {
            BigUint::from(l) * self.inner.num.place_value(k) + self.tau_image_len(k, y)
        }
    }

    fn mu_len_row(&self, t: usize) -> Vec<BigUint> {
        {
            let rows = self.inner.mu_len.read().unwrap();
            if rows.len() > t {
                return rows[t].clone();
            }
        }
        let alphabet = usize::from(self.directive().alphabet());
        let mut rows = self.inner.mu_len.write().unwrap();
        if rows.is_empty() {
            rows.push(vec![BigUint::from(1u32); alphabet]);
        }
        while rows.len() <= t {
            let m = rows.len(); // filling |μ_m(·)|
            let y_m = usize::from(self.directive().letter(m as u64));
            let prev = &rows[m - 1];
            let grow = prev[y_m].clone();
            let row: Vec<BigUint> = (0..alphabet)
                .map(|z| if z == y_m { prev[z].clone() } else { &grow + &prev[z] })
                .collect();
            rows.push(row);
        }
        rows[t].clone()
    }

    /// `|u_j|` for `j ≥ 1` (letter-level index; `u_1 = ε`).
    pub fn central_len(&self, j: usize) -> BigUint {
        assert!(j >= 1, "central words are indexed from 1");
        {
            let lens = self.inner.central_len.read().unwrap();
            if lens.len() > j {
                return lens[j].clone();
            }
        }
        let mut lens = self.inner.central_len.write().unwrap();
        if lens.is_empty() {
            lens.push(BigUint::zero()); // index 0, unused
            lens.push(BigUint::zero()); // |u_1| = 0
        }
        while lens.len() <= j {
            let m = lens.len(); // |u_m| = |u_{m−1}| + |h_{m−3}|… via |u_{m}| = |u_{m-1}| + |μ_{m-2}(y_{m-1})|
            let row = self.mu_len_row(m - 2);
            let h = row[usize::from(self.directive().letter((m - 1) as u64))].clone();
            let prev = lens[m - 1].clone();
            lens.push(prev + h);
        }
        lens[j].clone()
    }

    /// The full standard word `s_k` (length `q_k`), below the cap.
    pub fn standard_word_raw(&self, k: usize) -> Result<Arc<Vec<Letter>>> {
        {
            let words = self.inner.s_words.read().unwrap();
            if words.len() > k {
                return Ok(Arc::clone(&words[k]));
            }
        }
        self.checked_len(&self.inner.num.place_value(k), "standard word")?;
        let dw = self.directive();
        let mut words = self.inner.s_words.write().unwrap();
        if words.is_empty() {
            words.push(Arc::new(vec![dw.run_letter(1)]));
        }
        while words.len() <= k {
            let m = words.len(); // building s_m
            let q_m = self
                .inner
                .num
                .place_value(m)
                .to_usize()
                .expect("cap check above bounds q_k");
            let mut out: Vec<Letter> = Vec::with_capacity(q_m);
            match dw.anchor_run(m) {
                Some(j) => {
                    // s_m = s_{m−1}^{a_m} ⋯ s_j^{a_{j+1}} s_{j−1}
                    for t in (j..m).rev() {
                        for _ in 0..dw.run_len(t + 1) {
                            out.extend_from_slice(&words[t]);
                        }
                    }
                    out.extend_from_slice(&words[j - 1]);
                }
                None => {
                    // s_m = s_{m−1}^{a_m} ⋯ s_0^{a_1} x_{m+1}
                    for t in (0..m).rev() {
                        for _ in 0..dw.run_len(t + 1) {
                            out.extend_from_slice(&words[t]);
                        }
                    }
                    out.push(dw.run_letter(m + 1));
                }
            }
            debug_assert_eq!(out.len(), q_m, "standard word length must equal q_k");
            words.push(Arc::new(out));
        }
        Ok(Arc::clone(&words[k]))
    }

    /// `s_k` as a word value.
    pub fn standard_word(&self, k: usize) -> Result<FiniteWord> {
        let raw = self.standard_word_raw(k)?;
        FiniteWord::new(raw.as_ref().clone(), self.directive().alphabet())
    }

    /// A shared buffer holding at least the first `n` symbols of the
    /// epistandard word, generated by the standard-word recursion with
    /// truncation (O(n) work, amortized over calls).
    pub fn standard_prefix(&self, n: usize) -> Result<Arc<Vec<Letter>>> {
        if n > self.inner.cap {
            return Err(Error::ResourceLimit(format!(
                "prefix of {n} symbols is above the cap of {}",
                self.inner.cap
            )));
        }
        {
            let cached = self.inner.c_prefix.read().unwrap();
            if cached.len() >= n {
                return Ok(Arc::clone(&cached));
            }
        }
        let target = (2 * self.inner.c_prefix.read().unwrap().len()).max(n).min(self.inner.cap);
        let built = self.assemble_prefix(target);
        let mut cached = self.inner.c_prefix.write().unwrap();
        if built.len() > cached.len() {
            *cached = Arc::new(built);
        }
        Ok(Arc::clone(&cached))
    }

    fn assemble_prefix(&self, n: usize) -> Vec<Letter> {
        let dw = self.directive();
        if n == 0 {
            return Vec::new();
        }
        // Invariant: every word in `levels` except possibly the last is the
        // full s_t; the last may be truncated at n, at which point we stop.
        let mut levels: Vec<Vec<Letter>> = vec![vec![dw.run_letter(1)]];
        while levels.last().unwrap().len() < n {
            let m = levels.len();
            let mut out: Vec<Letter> = Vec::new();
            let push = |src: &[Letter], out: &mut Vec<Letter>| {
                let room = n - out.len();
                out.extend_from_slice(&src[..src.len().min(room)]);
            };
            match dw.anchor_run(m) {
                Some(j) => {
                    'outer: {
                        for t in (j..m).rev() {
                            for _ in 0..dw.run_len(t + 1) {
                                push(&levels[t], &mut out);
                                if out.len() == n {
                                    break 'outer;
                                }
                            }
                        }
                        push(&levels[j - 1], &mut out);
                    }
                }
                None => {
                    'outer: {
                        for t in (0..m).rev() {
                            for _ in 0..dw.run_len(t + 1) {
                                push(&levels[t], &mut out);
                                if out.len() == n {
                                    break 'outer;
                                }
                            }
                        }
                        if out.len() < n {
                            out.push(dw.run_letter(m + 1));
                        }
                    }
                }
            }
            levels.push(out);
        }
        let mut last = levels.pop().unwrap();
        last.truncate(n);
        last
    }

    /// The central word `u_j` (letter-level index), below the cap.
    pub fn central_word(&self, j: usize) -> Result<FiniteWord> {
        let len = self.central_len(j);
        let n = self.checked_len(&len, "central word")?;
        let prefix = self.standard_prefix(n)?;
        FiniteWord::new(prefix[..n].to_vec(), self.directive().alphabet())
    }

    /// The prefix of the epistandard word of length `n`, assembled as the
    /// product `s_{k−1}^{c_k} ⋯ s_0^{c_1}` read off the greedy expansion of
    /// `n`.
    pub fn prefix_from_expansion(&self, n: &BigUint) -> Result<FiniteWord> {
        let total = self.checked_len(n, "expansion prefix")?;
        let digits = self.inner.num.represent(n);
        let mut out: Vec<Letter> = Vec::with_capacity(total);
        for i in (1..=digits.preperiod_len()).rev() {
            let s = self.standard_word_raw(i - 1)?;
            for _ in 0..digits.digit(i) {
                out.extend_from_slice(&s);
            }
        }
        debug_assert_eq!(out.len(), total);
        FiniteWord::new(out, self.directive().alphabet())
    }

    /// `t_k`: the longest word such that `s_k^{a_{k+1}+1} t_k` is a prefix of
    /// the epistandard word with period `q_k` — equivalently `s_k^{-1}
    /// u_{r_k+1}` — or the formal inverse of `x_{k+1}` when `P(r_k+1)` does
    /// not exist.
    pub fn central_tail(&self, k: usize) -> Result<SignedWord> {
        let dw = self.directive();
        if dw.anchor_run(k).is_none() {
            return Ok(SignedWord::InverseLetter(dw.run_letter(k + 1)));
        }
        let u_len = self.inner.num.central_len_run_start(k);
        let n = self.checked_len(&u_len, "central tail")?;
        let q = self
            .inner
            .num
            .place_value(k)
            .to_usize()
            .expect("q_k ≤ |u_{r_k+1}| here");
        let prefix = self.standard_prefix(n)?;
        Ok(SignedWord::Word(FiniteWord::new(
            prefix[q..n].to_vec(),
            dw.alphabet(),
        )?))
    }
}

/// `η_k`: how many leading symbols of the episturmian word with intercept `c`
/// are already fixed by the first `k` digits, namely
/// `|s_k^{a_{k+1}−c_{k+1}} s_{k−1}^{a_k} ⋯ s_0^{a_1}| − val(c_1 ⋯ c_k)`.
pub fn stable_prefix_len(tower: &WordTower, c: &DigitString, k: usize) -> BigUint {
    let num = tower.numeration();
    let dw = tower.directive();
    let a = dw.run_len(k + 1);
    let ck1 = c.digit(k + 1);
    assert!(ck1 <= a, "digit c_{} = {ck1} exceeds a = {a}", k + 1);
    let head = BigUint::from(a - ck1) * num.place_value(k);
    head + num.central_len_run_start(k) - num.value_prefix(c, k)
}

/// The prefix of length `n` of the episturmian word over `tower`'s directive
/// word with the given intercept: the least `k` with `η_k ≥ n` certifies that
/// the word agrees with `T^{val(c_1 ⋯ c_k)}` of the epistandard word on its
/// first `n` symbols.
pub fn word_from_intercept(
    tower: &WordTower,
    intercept: &DigitString,
    n: usize,
) -> Result<Vec<Letter>> {
    if !tower.numeration().is_valid(intercept) {
        return Err(Error::InvalidIntercept(format!(
            "{intercept} violates the Ostrowski conditions"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let goal = BigUint::from(n);
    let mut k = 0usize;
    while stable_prefix_len(tower, intercept, k) < goal {
        k += 1;
        if k > 1_000_000 {
            return Err(Error::HorizonExceeded(
                "no digit index certifies the requested prefix".into(),
            ));
        }
    }
    let shift = tower.numeration().value_prefix(intercept, k);
    let total = &shift + &goal;
    let total = match total.to_usize() {
        Some(t) if t <= tower.cap() => t,
        _ => {
            return Err(Error::ResourceLimit(format!(
                "prefix needs shift {shift} + {n} symbols, above the cap"
            )))
        }
    };
    let prefix = tower.standard_prefix(total)?;
    Ok(prefix[total - n..total].to_vec())
}

/// An episturmian word `(Δ, intercept)` with a cached certified prefix.
///
/// Prefix extension is serialized per instance; distinct instances are fully
/// independent.
pub struct EpisturmianWord {
    tower: WordTower,
    intercept: DigitString,
    cache: Mutex<Vec<Letter>>,
}

impl EpisturmianWord {
    /// Validates the intercept against the Ostrowski conditions and wraps it.
    pub fn new(tower: WordTower, intercept: DigitString) -> Result<Self> {
        if !tower.numeration().is_valid(&intercept) {
            return Err(Error::InvalidIntercept(format!(
                "{intercept} violates the Ostrowski conditions"
            )));
        }
        Ok(Self { tower, intercept, cache: Mutex::new(Vec::new()) })
    }

    pub fn tower(&self) -> &WordTower {
        &self.tower
    }

    pub fn intercept(&self) -> &DigitString {
        &self.intercept
    }

    /// The certified prefix of length `n`.
    pub fn prefix(&self, n: usize) -> Result<Vec<Letter>> {
        let mut cache = self.cache.lock().unwrap();
        if cache.len() < n {
            let target = n.max(2 * cache.len()).min(self.tower.cap());
            *cache = word_from_intercept(&self.tower, &self.intercept, target.max(n))?;
        }
        Ok(cache[..n].to_vec())
    }
}

/// Whether `c` is the left-shift intercept pattern of `a · c_Δ` for some
/// letter `a` occurring infinitely often in `Δ`: `c_k = 0` where `x_k = a`
/// and `c_k = a_k` elsewhere. Exactly these intercepts shift to `0^ω`.
fn matches_left_shift_pattern(tower: &WordTower, c: &DigitString) -> bool {
    if c.is_finite() {
        return false;
    }
    let dw = tower.directive();
    let (horizon, recurring) = match dw.runs_cycle() {
        Some((k0, r)) => {
            let horizon = (k0 + 2 * r).max(c.preperiod_len() + r + 1)
                + 2 * r.lcm(&c.period_len().max(1));
            let mut letters: Vec<Letter> = (k0..k0 + r).map(|k| dw.run_letter(k)).collect();
            letters.sort_unstable();
            letters.dedup();
            (horizon, letters)
        }
        None => {
            // Stream-backed regular word: every letter recurs; the check is
            // certified to this horizon only.
            let horizon = c.preperiod_len() + 2 * c.period_len().max(1) + 64;
            (horizon, (0..dw.alphabet() as Letter).collect())
        }
    };
    recurring.iter().any(|&a| {
        (1..=horizon).all(|k| {
            let expected = if dw.run_letter(k) == a { 0 } else { dw.run_len(k) };
            c.digit(k) == expected
        })
    })
}

/// The intercept of `T(t)` where `t` has intercept `c`: with
/// `m = sup{k : val(c_1 ⋯ c_k) = q_k − 1}`, the first `m+1` digits are
/// replaced by the expansion of `val(c_1 ⋯ c_{m+1}) + 1` (zero-padded) and
/// the tail is kept. Intercepts matching the left-shift pattern give `0^ω`.
pub fn shifted_intercept(
    tower: &WordTower,
    c: &DigitString,
    horizon: Option<usize>,
) -> Result<DigitString> {
    let num = tower.numeration();
    if !num.is_valid(c) {
        return Err(Error::InvalidIntercept(format!("{c} violates the Ostrowski conditions")));
    }
    if matches_left_shift_pattern(tower, c) {
        return Ok(DigitString::zeros());
    }
    let dw = tower.directive();
    let guard = c.period_len().max(dw.runs_cycle().map_or(1, |(_, r)| r)).max(8);
    let mut scan_to = horizon.unwrap_or(c.preperiod_len() + 2 * c.period_len().max(1) + guard);
    for _ in 0..12 {
        let mut last_zero = 0usize;
        for k in 1..=scan_to {
            let val = num.value_prefix(c, k);
            if val + 1u32 == num.place_value(k) {
                last_zero = k;
            }
        }
        if scan_to - last_zero >= guard {
            let m = last_zero;
            let bumped = num.value_prefix(c, m + 1) + 1u32;
            let rep = num.represent(&bumped);
            debug_assert!(rep.preperiod_len() <= m + 1);
            let mut head: Vec<u64> = (1..=m + 1).map(|i| rep.digit(i)).collect();
            // Tail digits from position m+2 on are unchanged.
            if c.is_finite() {
                head.extend((m + 2..=c.preperiod_len()).map(|i| c.digit(i)));
                return Ok(DigitString::finite(head));
            }
            // The tail is periodic past the old preperiod, so the period of
            // the result is the digit window right after the new preperiod.
            let new_pre_len = (m + 1).max(c.preperiod_len());
            head.extend((m + 2..=new_pre_len).map(|i| c.digit(i)));
            let per: Vec<u64> =
                (1..=c.period_len()).map(|t| c.digit(new_pre_len + t)).collect();
            return Ok(DigitString::eventually_periodic(head, per));
        }
        scan_to *= 2;
    }
    Err(Error::HorizonExceeded(
        "val(c_1…c_k) = q_k − 1 kept recurring within the scan horizon".into(),
    ))
}

/// Decodes a prefix of an episturmian word into its leading intercept digits
/// by desubstitution. Returns the digits of every fully decoded run and the
/// number of leading digits that are certified (the residual stayed at least
/// two symbols long, so no episturmian extension of the input can change
/// them).
pub fn intercept_of(tower: &WordTower, prefix: &FiniteWord) -> Result<(DigitString, usize)> {
    let dw = tower.directive();
    let mut w: Vec<Letter> = prefix.symbols().to_vec();
    let mut digits: Vec<u64> = Vec::new();
    let mut certified = 0usize;
    let mut chain_intact = true;
    'runs: for k in 1.. {
        let letter = dw.run_letter(k);
        let mut ones = 0u64;
        for _ in 0..dw.run_len(k) {
            if w.is_empty() {
                break 'runs;
            }
            let shifted = w[0] != letter;
            if shifted {
                ones += 1;
                w.insert(0, letter);
            }
            w = decode_letter_image(&w, letter)?;
        }
        if w.is_empty() {
            break;
        }
        digits.push(ones);
        if chain_intact && w.len() >= 2 {
            certified += 1;
        } else {
            chain_intact = false;
        }
    }
    Ok((DigitString::finite(digits), certified))
}

/// Inverts `L_a` on a prefix of an image word: blocks are `a` (↦ `a`) and
/// `a x` (↦ `x`); a trailing lone `a` is ambiguous and is dropped.
fn decode_letter_image(v: &[Letter], a: Letter) -> Result<Vec<Letter>> {
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        if v[i] != a {
            return Err(Error::DecodeInconsistency(format!(
                "symbol {} at position {} is not preceded by {}",
                v[i],
                i + 1,
                a
            )));
        }
        if i + 1 == v.len() {
            break; // ambiguous trailing block
        }
        if v[i + 1] == a {
            out.push(a);
            i += 1;
        } else {
            out.push(v[i + 1]);
            i += 2;
        }
    }
    Ok(out)
}

/// Test oracle: the epistandard prefix generated by iterated palindromic
/// closure `u_{k+1} = (u_k y_k)^{(+)}`.
pub fn standard_prefix_by_closure(dw: &DirectiveWord, n: usize) -> Vec<Letter> {
    let mut u: Vec<Letter> = Vec::new();
    let mut k = 1u64;
    while u.len() < n {
        u.push(dw.letter(k));
        u = crate::words::palindromic_closure_raw(&u);
        k += 1;
    }
    u.truncate(n);
    u
}
