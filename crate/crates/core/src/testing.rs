//! Seeded random generators for test suites. Not part of the stable API.

use crate::directive::{DirectiveWord, QuotientSpec};
use crate::numeration::{DigitString, NumerationSystem};

/// Minimal splitmix64 stream so test binaries do not need an RNG dependency.
#[derive(Clone)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[lo, hi]` (inclusive).
    pub fn range_u64(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.next_u64() % (hi - lo + 1)
    }

    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.range_u64(lo as u64, hi as u64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// A random regular directive word: period `d ∈ [2, 5]`, eventually periodic
/// partial quotients with values in `[1, 4]`.
pub fn random_regular_directive(rng: &mut SplitMix) -> DirectiveWord {
    let d = rng.range_u64(2, 5) as u8;
    let pre_len = rng.range_usize(0, 2);
    let per_len = rng.range_usize(1, 4);
    let preperiod: Vec<u64> = (0..pre_len).map(|_| rng.range_u64(1, 4)).collect();
    let period: Vec<u64> = (0..per_len).map(|_| rng.range_u64(1, 4)).collect();
    DirectiveWord::regular(d, QuotientSpec::Periodic { preperiod, period })
        .expect("generated quotients are positive")
}

/// A random Ostrowski-valid intercept for the given system, by rejection.
/// Periodic candidates align their period with the run cycle of the
/// directive word so every digit position has a well-defined bound.
pub fn random_valid_intercept(rng: &mut SplitMix, num: &NumerationSystem) -> DigitString {
    let dw = num.directive();
    let (_, run_period) = dw.runs_cycle().expect("generators use periodic directive words");
    loop {
        let candidate = if rng.chance(1, 4) {
            let len = rng.range_usize(0, 6);
            let digits: Vec<u64> = (1..=len).map(|i| rng.range_u64(0, dw.run_len(i))).collect();
            DigitString::finite(digits)
        } else {
            let pre_len = rng.range_usize(0, 3);
            let per_len = run_period * rng.range_usize(1, 2);
            let pre: Vec<u64> = (1..=pre_len).map(|i| rng.range_u64(0, dw.run_len(i))).collect();
            let per: Vec<u64> =
                (1..=per_len).map(|t| rng.range_u64(0, dw.run_len(pre_len + t))).collect();
            if per.iter().all(|&d| d == 0) {
                continue;
            }
            DigitString::eventually_periodic(pre, per)
        };
        if num.is_valid(&candidate) {
            return candidate;
        }
    }
}
