//! Initial nonrepetitive complexity.
//!
//! `inrc(x, n)` is the maximal number of pairwise-distinct leading length-`n`
//! windows of `x`; equivalently `inrc(x, n) + n` is the length of the shortest
//! prefix of `x` containing a repeated length-`n` factor. Three routes are
//! provided: a brute-force scan over any explicit word, a Rauzy-graph walk
//! over the factor set of the epistandard word, and the closed-form case
//! analysis for regular directive words. The closed form never touches
//! explicit words; all boundary values are exact big integers.

use crate::engine::WordTower;
use crate::error::Error;
use crate::numeration::DigitString;
use crate::words::{FiniteWord, Letter};
use crate::Result;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Brute-force scans with rolling fingerprints

const HASH_MOD: u128 = (1u128 << 61) - 1;
const HASH_BASE: u128 = 0x1f3_5712_9e41;

fn hash_push(h: u128, sym: Letter) -> u128 {
    (h * HASH_BASE + u128::from(sym) + 1) % HASH_MOD
}

/// Rolling window hashes of all length-`n` windows of `buf`.
fn window_hashes(buf: &[Letter], n: usize) -> Vec<u64> {
    if buf.len() < n {
        return Vec::new();
    }
    let mut pow = 1u128;
    for _ in 0..n - 1 {
        pow = (pow * HASH_BASE) % HASH_MOD;
    }
    let mut out = Vec::with_capacity(buf.len() - n + 1);
    let mut h = 0u128;
    for (i, &sym) in buf.iter().enumerate() {
        if i >= n {
            h = (h + HASH_MOD * HASH_MOD - pow * (u128::from(buf[i - n]) + 1) % HASH_MOD)
                % HASH_MOD;
        }
        h = hash_push(h, sym);
        if i + 1 >= n {
            out.push(h as u64);
        }
    }
    out
}

/// Exact fallback: first window index `j` (1-based) whose window equals an
/// earlier one, via slice-keyed hashing.
fn first_repeat_exact(buf: &[Letter], n: usize) -> Option<usize> {
    let mut seen: HashMap<&[Letter], usize> = HashMap::new();
    for j in 0..buf.len().saturating_sub(n - 1) {
        if seen.insert(&buf[j..j + n], j).is_some() {
            return Some(j + 1);
        }
    }
    None
}

/// First repeated window position via fingerprints, falling back to the exact
/// scan on a fingerprint collision. The returned index is always exact.
fn first_repeat(buf: &[Letter], n: usize) -> Option<usize> {
    let hashes = window_hashes(buf, n);
    let mut seen: HashMap<u64, usize> = HashMap::with_capacity(hashes.len());
    for (j, &h) in hashes.iter().enumerate() {
        if let Some(&i) = seen.get(&h) {
            if buf[i..i + n] == buf[j..j + n] {
                // Equal windows always share a fingerprint, so no genuine
                // repeat can precede the first fingerprint repeat.
                return Some(j + 1);
            }
            return first_repeat_exact(buf, n);
        }
        seen.insert(h, j);
    }
    None
}

/// Brute-force initial nonrepetitive complexity of an explicit prefix: the
/// largest `m` such that the length-`n` windows starting at positions
/// `1, …, m` are pairwise distinct. `None` when the prefix is too short to
/// witness the first repetition.
pub fn inrc_brute(word: &[Letter], n: usize) -> Result<Option<usize>> {
    if n == 0 {
        return Err(Error::InvalidArgument("window length n must be ≥ 1".into()));
    }
    Ok(first_repeat(word, n).map(|j| j - 1))
}

/// Brute-force prefix nonrepetitive complexity: the largest `m` such that the
/// length-`n` prefix does not reoccur at positions `2, …, m`. `None` when no
/// second occurrence lies within the given prefix.
pub fn prefix_nrc_brute(word: &[Letter], n: usize) -> Result<Option<usize>> {
    if n == 0 {
        return Err(Error::InvalidArgument("window length n must be ≥ 1".into()));
    }
    if word.len() < n {
        return Ok(None);
    }
    let hashes = window_hashes(word, n);
    let target = hashes[0];
    for (j, &h) in hashes.iter().enumerate().skip(1) {
        if h == target && word[j..j + n] == word[..n] {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Intervals and the central-path gap

/// The position of `n` in the partition of the positive integers by
/// palindromic-prefix lengths: `|u_{r_k+ℓ}| < n ≤ |u_{r_k+ℓ+1}|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalIndex {
    pub k: usize,
    /// Subinterval index `ℓ ∈ [0, a_{k+1})`.
    pub subinterval: u64,
}

/// Locates `n ≥ 1` in its interval, with the convention `|u_{r_0}| = −1`.
pub fn interval_of(tower: &WordTower, n: &BigUint) -> Result<IntervalIndex> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("interval positions start at n = 1".into()));
    }
    let num = tower.numeration();
    let n_int = BigInt::from(n.clone());
    let mut k = 0usize;
    while num.central_len_run_end(k + 1) < n_int {
        k += 1;
    }
    let run_start = BigInt::from(num.central_len_run_start(k));
    let subinterval = if n_int <= run_start {
        0
    } else {
        let q = BigInt::from(num.place_value(k));
        let l: BigInt = (&n_int - &run_start - 1) / q + 1;
        let l = l.to_u64().expect("subinterval index fits u64");
        debug_assert!(l < tower.directive().run_len(k + 1));
        l
    };
    Ok(IntervalIndex { k, subinterval })
}

/// `θ_n = |u_{r_k+ℓ+1}| − n`, the length of the central path of the Rauzy
/// graph of order `n` of the epistandard word.
pub fn gap_to_central(tower: &WordTower, n: &BigUint) -> Result<BigUint> {
    let iv = interval_of(tower, n)?;
    let num = tower.numeration();
    let top = num.central_len_run_start(iv.k) + BigUint::from(iv.subinterval) * num.place_value(iv.k);
    Ok(top - n)
}

// ---------------------------------------------------------------------------
// Rauzy graphs

/// The Rauzy graph of order `n` of the epistandard word: vertices are the
/// length-`n` factors, edges the length-`(n+1)` factors.
pub struct RauzyGraph {
    pub order: usize,
    pub vertices: Vec<FiniteWord>,
    pub edge_count: usize,
    /// Index of the unique left special vertex.
    pub left_special: usize,
    /// Index of the unique right special vertex.
    pub right_special: usize,
    /// Number of edges on the path from the left special to the right
    /// special vertex (0 when they coincide).
    pub central_path_len: usize,
    /// Cycle length per extension letter of the right special vertex.
    pub cycles: Vec<(Letter, usize)>,
}

/// Builds the Rauzy graph from a horizon-length prefix of the epistandard
/// word. For regular directive words the factor counts are validated exactly
/// (`(d−1)n + 1` vertices); otherwise the count is checked against the same
/// expression as a lower bound.
pub fn rauzy_graph(tower: &WordTower, n: usize, horizon: usize) -> Result<RauzyGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("Rauzy graph order must be ≥ 1".into()));
    }
    let prefix = tower.standard_prefix(horizon.max(n + 2))?;
    let buf = &prefix[..horizon.max(n + 2).min(prefix.len())];

    let mut vertex_ids: HashMap<&[Letter], usize> = HashMap::new();
    let mut vertices: Vec<&[Letter]> = Vec::new();
    for j in 0..buf.len() - n + 1 {
        let w = &buf[j..j + n];
        vertex_ids.entry(w).or_insert_with(|| {
            vertices.push(w);
            vertices.len() - 1
        });
    }
    let mut edges: HashMap<&[Letter], (usize, usize, Letter)> = HashMap::new();
    for j in 0..buf.len() - n {
        let w = &buf[j..j + n + 1];
        if !edges.contains_key(w) {
            let from = vertex_ids[&w[..n]];
            let to = vertex_ids[&w[1..]];
            edges.insert(w, (from, to, w[n]));
        }
    }

    let recurring = tower.directive().recurring_letter_count();
    let expected = (recurring - 1) * n + 1;
    if vertices.len() < expected {
        return Err(Error::InsufficientHorizon(format!(
            "collected {} vertices of order {n}, expected at least {expected}",
            vertices.len()
        )));
    }
    if tower.regular_period().is_some() && vertices.len() != expected {
        return Err(Error::InsufficientHorizon(format!(
            "regular word must have exactly {expected} factors of length {n}, found {}",
            vertices.len()
        )));
    }

    let mut out: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); vertices.len()];
    let mut indeg = vec![0usize; vertices.len()];
    for &(from, to, letter) in edges.values() {
        out[from].push((to, letter));
        indeg[to] += 1;
    }
    let left: Vec<usize> = (0..vertices.len()).filter(|&v| indeg[v] > 1).collect();
    let right: Vec<usize> = (0..vertices.len()).filter(|&v| out[v].len() > 1).collect();
    if left.len() != 1 || right.len() != 1 {
        return Err(Error::InsufficientHorizon(format!(
            "expected unique special vertices, found {} left / {} right",
            left.len(),
            right.len()
        )));
    }
    let (left_special, right_special) = (left[0], right[0]);

    let mut central_path_len = 0usize;
    let mut v = left_special;
    while v != right_special {
        v = out[v][0].0;
        central_path_len += 1;
        if central_path_len > vertices.len() {
            return Err(Error::InsufficientHorizon("central path does not reach r".into()));
        }
    }

    let mut cycles = Vec::new();
    for &(start, letter) in &out[right_special] {
        let mut len = 1usize;
        let mut v = start;
        while v != right_special {
            v = out[v][0].0;
            len += 1;
            if len > edges.len() + 1 {
                return Err(Error::InsufficientHorizon("cycle walk does not close".into()));
            }
        }
        cycles.push((letter, len));
    }
    cycles.sort_unstable();

    let alphabet = tower.directive().alphabet();
    Ok(RauzyGraph {
        order: n,
        vertices: vertices
            .into_iter()
            .map(|w| FiniteWord::new(w.to_vec(), alphabet).expect("letters in alphabet"))
            .collect(),
        edge_count: edges.len(),
        left_special,
        right_special,
        central_path_len,
        cycles,
    })
}

/// Initial nonrepetitive complexity by walking the Rauzy graph of order `n`:
/// the word's windows are resolved to vertices of the epistandard word's
/// factor graph and the walk stops at the first repeated vertex.
pub fn inrc_rauzy(tower: &WordTower, intercept: &DigitString, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("window length n must be ≥ 1".into()));
    }
    let recurring = tower.directive().recurring_letter_count();
    let expected_v = (recurring - 1) * n + 1;
    let expected_e = (recurring - 1) * (n + 1) + 1;
    let exact_counts = tower.regular_period().is_some();

    // Grow the horizon until the factor sets of lengths n and n+1 are
    // complete (exact counts for regular words, stability otherwise).
    let mut horizon = (8 * (n + 1)).max(64);
    let (prefix, used_len) = loop {
        let prefix = tower.standard_prefix(horizon.min(tower.cap()))?;
        let len = horizon.min(prefix.len());
        let v_count = distinct_windows(&prefix[..len], n);
        let e_count = distinct_windows(&prefix[..len], n + 1);
        if exact_counts {
            if v_count == expected_v && e_count == expected_e {
                break (prefix, len);
            }
            if v_count > expected_v || e_count > expected_e {
                return Err(Error::InsufficientHorizon(format!(
                    "factor counts {v_count}/{e_count} exceed the regular bound"
                )));
            }
        } else if v_count >= expected_v && e_count >= expected_e {
            // Non-regular: accept once a doubling adds nothing new.
            let bigger = tower.standard_prefix((2 * horizon).min(tower.cap()))?;
            let blen = (2 * horizon).min(bigger.len());
            if distinct_windows(&bigger[..blen], n) == v_count
                && distinct_windows(&bigger[..blen], n + 1) == e_count
            {
                break (prefix, len);
            }
        }
        if horizon >= tower.cap() {
            return Err(Error::InsufficientHorizon(format!(
                "factor collection for order {n} exceeded the cap"
            )));
        }
        horizon = (horizon * 2).min(tower.cap());
    };
    let buf = &prefix[..used_len];

    // Vertex ids: fingerprint → first position in the epistandard prefix.
    let hashes = window_hashes(buf, n);
    let mut ids: HashMap<u64, usize> = HashMap::with_capacity(hashes.len());
    for (pos, &h) in hashes.iter().enumerate() {
        ids.entry(h).or_insert(pos);
    }

    // By pigeonhole the walk repeats a vertex within expected_v + 1 windows.
    let walk_len = expected_v + n + 1;
    let word = crate::engine::word_from_intercept(tower, intercept, walk_len)?;
    let word_hashes = window_hashes(&word, n);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (j, &h) in word_hashes.iter().enumerate() {
        let Some(&id) = ids.get(&h) else {
            return Err(Error::InsufficientHorizon(format!(
                "window at position {} is not among the collected factors",
                j + 1
            )));
        };
        if let Some(&i) = seen.get(&id) {
            if word[i..i + n] == word[j..j + n] {
                return Ok(j);
            }
            // Fingerprint collision: redo the walk with exact comparisons.
            return inrc_rauzy_exact(buf, &word, n);
        }
        seen.insert(id, j);
    }
    Err(Error::InsufficientHorizon(
        "no repeated vertex within the pigeonhole walk length".into(),
    ))
}

fn distinct_windows(buf: &[Letter], n: usize) -> usize {
    if buf.len() < n {
        return 0;
    }
    let hashes = window_hashes(buf, n);
    let mut set: HashMap<u64, usize> = HashMap::with_capacity(hashes.len());
    for (pos, &h) in hashes.iter().enumerate() {
        set.entry(h).or_insert(pos);
    }
    set.len()
}

fn inrc_rauzy_exact(buf: &[Letter], word: &[Letter], n: usize) -> Result<usize> {
    let mut ids: HashMap<&[Letter], usize> = HashMap::new();
    for j in 0..buf.len() - n + 1 {
        let next = ids.len();
        ids.entry(&buf[j..j + n]).or_insert(next);
    }
    let mut seen: Vec<bool> = vec![false; ids.len()];
    for j in 0..word.len() - n + 1 {
        let Some(&id) = ids.get(&word[j..j + n]) else {
            return Err(Error::InsufficientHorizon("window missing from factor set".into()));
        };
        if seen[id] {
            return Ok(j);
        }
        seen[id] = true;
    }
    Err(Error::InsufficientHorizon("no repeated vertex in exact walk".into()))
}

// ---------------------------------------------------------------------------
// Blocks and the shifted-standard closed form

/// One block of the decomposition of `{0, …, q_{k+d−1} − 1}`.
#[derive(Clone, Debug)]
pub struct Block {
    /// The block type: the letter `y_i`.
    pub letter: Letter,
    /// Left endpoint `L_i`.
    pub left: BigUint,
    /// `|τ_{k+1}(y_i)|`, the number of shifts covered by the block.
    pub image_len: BigUint,
    /// `‖C_{y_i}‖ = |μ_{r_k+ℓ}(y_i)|`.
    pub cycle_len: BigUint,
}

/// The block decomposition attached to a subinterval `(k, ℓ)` of a regular
/// directive word.
pub struct BlockTable {
    pub k: usize,
    pub subinterval: u64,
    pub blocks: Vec<Block>,
    q_k: BigUint,
    run_len: u64,
}

impl BlockTable {
    /// Number of blocks `K_d = Π_{i=2}^{d−1} (a_{k+i} + 1)`.
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    /// The four adjacent shift ranges `λ_{i,1..4}` of block `i` (1-based), as
    /// inclusive `(lo, hi)` pairs, for the given central-path gap `θ_n`.
    /// `λ_{i,2}` and `λ_{i,4}` may be empty (`hi < lo`).
    pub fn lambda(&self, i: usize, j: usize, theta: &BigUint) -> (BigInt, BigInt) {
        let b = &self.blocks[i - 1];
        let left = BigInt::from(b.left.clone());
        let q = BigInt::from(self.q_k.clone());
        let theta = BigInt::from(theta.clone());
        let a_minus_l = BigInt::from(self.run_len - self.subinterval);
        let full = &left + (&a_minus_l - 1) * &q + &theta; // L_i + (a−ℓ−1)q_k + θ_n
        match j {
            1 => (left, full),
            2 => (&full + 1, &left + &a_minus_l * &q - 1),
            3 => (&left + &a_minus_l * &q, &left + &a_minus_l * &q + &theta),
            4 => (
                &left + &a_minus_l * &q + &theta + 1,
                &left + &a_minus_l * &q + BigInt::from(b.cycle_len.clone()) - 1,
            ),
            _ => panic!("lambda subindex must be 1..=4"),
        }
    }
}

/// Builds the block table of `(k, ℓ)` for a regular directive word: block
/// types are the letters of the epistandard word of `T^{r_{k+1}}(Δ)`,
/// endpoints accumulate the `τ_{k+1}`-image lengths.
pub fn block_table(tower: &WordTower, k: usize, subinterval: u64) -> Result<BlockTable> {
    let d = usize::from(
        tower
            .regular_period()
            .ok_or_else(|| Error::Unsupported("block tables need a regular directive word".into()))?,
    );
    let dw = tower.directive();
    if subinterval >= dw.run_len(k + 1) {
        return Err(Error::InvalidArgument(format!(
            "subinterval {subinterval} is out of range for a_{} = {}",
            k + 1,
            dw.run_len(k + 1)
        )));
    }
    let mut count = 1u64;
    for i in 2..=d.saturating_sub(1) {
        count = count
            .checked_mul(dw.run_len(k + i) + 1)
            .ok_or_else(|| Error::ResourceLimit("block count overflows u64".into()))?;
    }
    let count = usize::try_from(count)
        .ok()
        .filter(|&c| c <= 1_000_000)
        .ok_or_else(|| Error::ResourceLimit("block table too large to materialize".into()))?;

    let shifted = tower.shifted(k + 1);
    let types = shifted.standard_prefix(count)?;
    let mut blocks = Vec::with_capacity(count);
    let mut left = BigUint::zero();
    for i in 0..count {
        let letter = types[i];
        let image_len = tower.tau_image_len(k + 1, letter);
        let cycle_len = tower.cycle_len(k, subinterval, letter);
        blocks.push(Block { letter, left: left.clone(), image_len: image_len.clone(), cycle_len });
        left += image_len;
    }
    Ok(BlockTable {
        k,
        subinterval,
        blocks,
        q_k: tower.numeration().place_value(k),
        run_len: dw.run_len(k + 1),
    })
}

/// `inrc(T^m(c_Δ), n)` for a regular directive word, by locating `m` in its
/// block range: `q_k` on `λ_{i,1}`, `|τ_{k+1}(y_i)| + L_i − m` on `λ_{i,2}`,
/// `ℓ q_k + |τ_k(y_i)|` on `λ_{i,3}`, and `q_k + L_{i+1} − m` on `λ_{i,4}`.
pub fn inrc_shifted_standard(tower: &WordTower, m: &BigUint, n: &BigUint) -> Result<BigUint> {
    let d = usize::from(
        tower
            .regular_period()
            .ok_or_else(|| Error::Unsupported("closed form needs a regular directive word".into()))?,
    );
    let iv = interval_of(tower, n)?;
    let num = tower.numeration();
    if *m >= num.place_value(iv.k + d - 1) {
        return Err(Error::InvalidArgument(format!(
            "shift {m} is outside the block range of order k = {}",
            iv.k
        )));
    }
    let theta = gap_to_central(tower, n)?;
    let table = block_table(tower, iv.k, iv.subinterval)?;
    let m_int = BigInt::from(m.clone());
    for (idx, block) in table.blocks.iter().enumerate() {
        let i = idx + 1;
        for j in 1..=4 {
            let (lo, hi) = table.lambda(i, j, &theta);
            if lo <= m_int && m_int <= hi {
                let q = BigInt::from(num.place_value(iv.k));
                let value = match j {
                    1 => q,
                    2 => BigInt::from(block.image_len.clone()) + BigInt::from(block.left.clone())
                        - &m_int,
                    3 => {
                        BigInt::from(iv.subinterval) * &q
                            + BigInt::from(tower.tau_image_len(iv.k, block.letter))
                    }
                    _ => {
                        let next_left =
                            BigInt::from(block.left.clone()) + BigInt::from(block.image_len.clone());
                        q + next_left - &m_int
                    }
                };
                let value = value.to_biguint().expect("complexity values are positive");
                return Ok(value);
            }
        }
    }
    unreachable!("the blocks tile {{0, …, q_{{k+d−1}} − 1}}")
}

// ---------------------------------------------------------------------------
// The closed-form case analysis for an arbitrary valid intercept

/// Which branch of the case analysis produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MainCase {
    I,
    Ii,
    Iii,
    IvA,
    IvB,
    IvC,
    V,
}

/// Case label plus 1-based bullet index within the case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseId {
    pub case: MainCase,
    pub bullet: u8,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.case {
            MainCase::I => "i",
            MainCase::Ii => "ii",
            MainCase::Iii => "iii",
            MainCase::IvA => "iv.a",
            MainCase::IvB => "iv.b",
            MainCase::IvC => "iv.c",
            MainCase::V => "v",
        };
        write!(f, "{name}.{}", self.bullet)
    }
}

/// Closed-form value of `inrc` at one `n`, with provenance.
#[derive(Clone, Debug)]
pub struct InrcResult {
    pub value: BigUint,
    pub case: CaseId,
    /// The shift `val(c_1 ⋯ c_{k+d−1})` (or `val(c_1 ⋯ c_{k+d})` in case v)
    /// that determines the value.
    pub shift: BigUint,
}

/// One piece of the case analysis: `inrc` is constant on
/// `(left, right] ∩ I_k`.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub left: BigInt,
    pub right: BigInt,
    pub value: BigInt,
}

pub(crate) struct CaseAnalysis {
    pub case: MainCase,
    pub pieces: Vec<Piece>,
    pub shift: BigUint,
}

/// The complete case analysis over the interval `I_k` for the given valid
/// intercept. Pieces appear in bullet order and tile `(|u_{r_k}|, |u_{r_{k+1}}|]`
/// (empty pieces have `right ≤ left`).
pub(crate) fn case_analysis(
    tower: &WordTower,
    intercept: &DigitString,
    k: usize,
) -> Result<CaseAnalysis> {
    let d = usize::from(tower.regular_period().ok_or_else(|| {
        Error::Unsupported("the closed form needs a regular directive word".into())
    })?);
    let num = tower.numeration();
    let dw = tower.directive();

    let a_next = dw.run_len(k + 1);
    let c_next = intercept.digit(k + 1);
    let c_here = if k >= 1 { intercept.digit(k) } else { 0 };
    if c_next > a_next {
        return Err(Error::InvalidIntercept(format!(
            "digit c_{} = {c_next} exceeds a_{} = {a_next}",
            k + 1,
            k + 1
        )));
    }
    let window_full = (k + 2..=k + d).all(|i| intercept.digit(i) == dw.run_len(i));

    // The block type y_i: the i-th letter of the epistandard word of
    // T^{r_{k+1}}(Δ) with i − 1 the Δ'-value of the digits c_{k+2} ⋯ c_{k+d−1}.
    let shifted = tower.shifted(k + 1);
    let mut index = BigUint::zero();
    for t in 1..=d.saturating_sub(2) {
        let digit = intercept.digit(k + 1 + t);
        if digit != 0 {
            index += BigUint::from(digit) * shifted.numeration().place_value(t - 1);
        }
    }
    let index = index.to_usize().ok_or_else(|| {
        Error::ResourceLimit("block index exceeds addressable range".into())
    })?;
    let y = shifted.standard_prefix(index + 1)?[index];

    let q_k = BigInt::from(num.place_value(k));
    let u_end_prev = num.central_len_run_end(k); // |u_{r_k}|, −1 at k = 0
    let u_end = num.central_len_run_end(k + 1); // |u_{r_{k+1}}|
    let u_start = BigInt::from(num.central_len_run_start(k)); // |u_{r_k+1}|
    let tau_k_y = BigInt::from(tower.tau_image_len(k, y));
    let tau_k1_y = BigInt::from(tower.tau_image_len(k + 1, y));
    let val_next = BigInt::from(num.value_prefix(intercept, k + 1));
    let val_here = BigInt::from(num.value_prefix(intercept, k));
    let val_prev = BigInt::from(num.value_prefix(intercept, k.saturating_sub(1)));

    let piece = |left: BigInt, right: BigInt, value: BigInt| Piece { left, right, value };
    let (case, pieces, shift_digits) = if window_full {
        if c_next != 0 {
            return Err(Error::InvalidIntercept(format!(
                "digits c_{}…c_{} maximal force c_{} = 0",
                k + 2,
                k + d,
                k + 1
            )));
        }
        (
            MainCase::V,
            vec![piece(u_end_prev.clone(), u_end.clone(), q_k.clone())],
            k + d,
        )
    } else if c_next == a_next {
        (
            MainCase::Ii,
            vec![
                piece(u_end_prev.clone(), &u_start - &val_here, tau_k_y.clone()),
                piece(&u_start - &val_here, u_end.clone(), &q_k + &tau_k_y - &val_here),
            ],
            k + d - 1,
        )
    } else if c_next + 1 == a_next && c_next > 0 && c_here != 0 {
        (
            MainCase::Iii,
            vec![
                piece(u_end_prev.clone(), u_start.clone(), &q_k + &tau_k_y - &val_here),
                piece(u_start.clone(), &u_start + &q_k - &val_here, &q_k + &tau_k_y),
                piece(&u_start + &q_k - &val_here, u_end.clone(), 2 * &q_k + &tau_k_y - &val_here),
            ],
            k + d - 1,
        )
    } else if c_next > 0 {
        // 0 < c_{k+1} < a_{k+1} − 1, or c_{k+1} = a_{k+1} − 1 > 0 with c_k = 0.
        let c_next_int = BigInt::from(c_next);
        (
            MainCase::I,
            vec![
                piece(u_end_prev.clone(), &u_end - &val_next, q_k.clone()),
                piece(&u_end - &val_next, &u_end - &c_next_int * &q_k, &tau_k1_y - &val_next),
                piece(
                    &u_end - &c_next_int * &q_k,
                    &u_end + &q_k - &val_next,
                    BigInt::from(a_next - c_next) * &q_k + &tau_k_y,
                ),
                piece(&u_end + &q_k - &val_next, u_end.clone(), &q_k + &tau_k1_y - &val_next),
            ],
            k + d - 1,
        )
    } else if c_here == 0 {
        (
            MainCase::IvA,
            vec![
                piece(u_end_prev.clone(), &u_end - &val_prev, q_k.clone()),
                piece(&u_end - &val_prev, u_end.clone(), &tau_k1_y - &val_prev),
            ],
            k + d - 1,
        )
    } else if a_next == 1 {
        (
            MainCase::IvB,
            vec![piece(u_end_prev.clone(), u_end.clone(), &tau_k1_y - &val_here)],
            k + d - 1,
        )
    } else {
        (
            MainCase::IvC,
            vec![
                piece(u_end_prev.clone(), &u_end - &val_here, q_k.clone()),
                piece(&u_end - &val_here, u_end.clone(), &tau_k1_y - &val_here),
            ],
            k + d - 1,
        )
    };
    let shift = num.value_prefix(intercept, shift_digits);
    Ok(CaseAnalysis { case, pieces, shift })
}

/// Initial nonrepetitive complexity of the episturmian word `(Δ, intercept)`
/// at window length `n`, by the closed-form case analysis. Requires a regular
/// directive word and a valid intercept.
pub fn inrc_regular(
    tower: &WordTower,
    intercept: &DigitString,
    n: &BigUint,
) -> Result<InrcResult> {
    if !tower.numeration().is_valid(intercept) {
        return Err(Error::InvalidIntercept(format!(
            "{intercept} violates the Ostrowski conditions"
        )));
    }
    let iv = interval_of(tower, n)?;
    let analysis = case_analysis(tower, intercept, iv.k)?;
    let n_int = BigInt::from(n.clone());
    for (idx, piece) in analysis.pieces.iter().enumerate() {
        if piece.left < n_int && n_int <= piece.right {
            let value = piece
                .value
                .to_biguint()
                .expect("complexity values are positive");
            return Ok(InrcResult {
                value,
                case: CaseId { case: analysis.case, bullet: (idx + 1) as u8 },
                shift: analysis.shift,
            });
        }
    }
    unreachable!("the case pieces tile I_k")
}
