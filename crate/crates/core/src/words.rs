//! Finite-word primitives over integer alphabets `{0, …, d−1}`.
//!
//! Indexing is 1-based throughout the public API, so `w[i, j]` denotes the
//! factor from position `i` to position `j` inclusive.

use crate::error::Error;
use crate::Result;
use num_rational::Ratio;
use std::fmt;

/// A letter of an integer alphabet.
pub type Letter = u8;

/// A finite word together with the alphabet size it was declared over.
///
/// The alphabet size is carried alongside the symbols, not inferred from
/// them; the empty word is permitted. Equality and hashing look at the
/// symbols only.
#[derive(Clone)]
pub struct FiniteWord {
    symbols: Vec<Letter>,
    alphabet: u16,
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}
impl Eq for FiniteWord {}

impl std::hash::Hash for FiniteWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl FiniteWord {
    /// Builds a word, checking every letter against the alphabet size.
    pub fn new(symbols: Vec<Letter>, alphabet: u16) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| u16::from(s) >= alphabet) {
            return Err(Error::InvalidArgument(format!(
                "letter {bad} is outside the alphabet of size {alphabet}"
            )));
        }
        Ok(Self { symbols, alphabet })
    }

    /// The empty word over the given alphabet.
    pub fn empty(alphabet: u16) -> Self {
        Self { symbols: Vec::new(), alphabet }
    }

    /// Parses a word of single-digit letters, e.g. `"00100"`.
    pub fn parse_digits(text: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let digit = ch
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("expected digit, found {ch:?}")))?;
            symbols.push(digit as Letter);
        }
        let alphabet = symbols.iter().map(|&s| u16::from(s) + 1).max().unwrap_or(1);
        Self::new(symbols, alphabet.max(1))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> u16 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.symbols
    }

    /// The letter at 1-based position `i`.
    pub fn symbol(&self, i: usize) -> Letter {
        self.symbols[i - 1]
    }

    /// The factor `w[i, j]` (1-based, inclusive).
    pub fn factor(&self, i: usize, j: usize) -> FiniteWord {
        FiniteWord { symbols: self.symbols[i - 1..j].to_vec(), alphabet: self.alphabet }
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        FiniteWord { symbols, alphabet: self.alphabet.max(other.alphabet) }
    }

    pub fn reversed(&self) -> FiniteWord {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        FiniteWord { symbols, alphabet: self.alphabet }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.symbols.len();
        (0..n / 2).all(|i| self.symbols[i] == self.symbols[n - 1 - i])
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({self})")
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

/// Length of the longest palindromic suffix of `w`, by direct scan.
pub(crate) fn longest_palindromic_suffix_len(w: &[Letter]) -> usize {
    let n = w.len();
    for start in 0..n {
        let suffix = &w[start..];
        let m = suffix.len();
        if (0..m / 2).all(|i| suffix[i] == suffix[m - 1 - i]) {
            return m;
        }
    }
    0
}

pub(crate) fn palindromic_closure_raw(w: &[Letter]) -> Vec<Letter> {
    let lps = longest_palindromic_suffix_len(w);
    let mut out = w.to_vec();
    out.extend(w[..w.len() - lps].iter().rev());
    out
}

/// The shortest palindrome having `w` as a prefix.
pub fn palindromic_closure(w: &FiniteWord) -> FiniteWord {
    FiniteWord { symbols: palindromic_closure_raw(&w.symbols), alphabet: w.alphabet }
}

/// All 1-based indices `i` such that `u` is a prefix of `w[i, |w|]`, ascending.
pub fn occurrences(u: &FiniteWord, w: &FiniteWord) -> Result<Vec<usize>> {
    if u.is_empty() {
        return Err(Error::InvalidArgument("occurrences of the empty word are undefined".into()));
    }
    Ok(occurrences_raw(&u.symbols, &w.symbols))
}

pub(crate) fn occurrences_raw(u: &[Letter], w: &[Letter]) -> Vec<usize> {
    if u.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - u.len()).filter(|&i| &w[i..i + u.len()] == u).map(|i| i + 1).collect()
}

/// Whether `w` is not a proper integer power; equivalently, `w` occurs exactly
/// twice in `w²`.
pub fn is_primitive(w: &FiniteWord) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::InvalidArgument("primitivity of the empty word is undefined".into()));
    }
    let mut squared = w.symbols.clone();
    squared.extend_from_slice(&w.symbols);
    Ok(occurrences_raw(&w.symbols, &squared).len() == 2)
}

/// The fractional power `w^e = (uv)^n u` where `uv = w` and `e = n + |u|/|w|`.
///
/// Requires `e ≥ 1` and `e·|w|` integral.
pub fn fractional_power(w: &FiniteWord, e: Ratio<u64>) -> Result<FiniteWord> {
    if w.is_empty() {
        return Err(Error::InvalidArgument("fractional power of the empty word".into()));
    }
    if e < Ratio::from_integer(1) {
        return Err(Error::InvalidArgument(format!("exponent {e} is below 1")));
    }
    let total = e * Ratio::from_integer(w.len() as u64);
    if !total.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "e·|w| = {total} is not an integer for |w| = {}",
            w.len()
        )));
    }
    let total = total.to_integer() as usize;
    let mut symbols = Vec::with_capacity(total);
    while symbols.len() < total {
        let take = (total - symbols.len()).min(w.len());
        symbols.extend_from_slice(&w.symbols[..take]);
    }
    Ok(FiniteWord { symbols, alphabet: w.alphabet })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> FiniteWord {
        FiniteWord::parse_digits(text).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(palindromic_closure(&FiniteWord::empty(2)), FiniteWord::empty(2));
        assert_eq!(palindromic_closure(&w("0")), w("0"));
        assert_eq!(palindromic_closure(&w("001")), w("00100"));
        assert_eq!(palindromic_closure(&w("001001")), w("00100100"));
    }

    #[test]
    fn closure_brute_force_oracle() {
        // Minimal palindromic extension found by trying every suffix length.
        fn brute(word: &[Letter]) -> Vec<Letter> {
            for extra in 0..=word.len() {
                let mut cand = word.to_vec();
                let take: Vec<Letter> = word[..extra].iter().rev().copied().collect();
                cand.extend(take);
                let n = cand.len();
                if (0..n / 2).all(|i| cand[i] == cand[n - 1 - i]) {
                    return cand;
                }
            }
            unreachable!()
        }
        for len in 0..=10usize {
            for code in 0..3usize.pow(len as u32) {
                let mut c = code;
                let word: Vec<Letter> = (0..len)
                    .map(|_| {
                        let l = (c % 3) as Letter;
                        c /= 3;
                        l
                    })
                    .collect();
                assert_eq!(palindromic_closure_raw(&word), brute(&word));
            }
        }
    }

    #[test]
    fn closure_idempotent_and_length_identity() {
        // Exhaustive over all words of length ≤ 12 on alphabets of ≤ 3 letters.
        for len in 0..=12usize {
            for code in 0..3usize.pow(len as u32) {
                let mut c = code;
                let word: Vec<Letter> = (0..len)
                    .map(|_| {
                        let l = (c % 3) as Letter;
                        c /= 3;
                        l
                    })
                    .collect();
                let closed = palindromic_closure_raw(&word);
                assert_eq!(palindromic_closure_raw(&closed), closed);
                assert_eq!(closed.len(), 2 * word.len() - longest_palindromic_suffix_len(&word));
            }
        }
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&w("0"), &w("010")).unwrap(), vec![1, 3]);
        assert_eq!(occurrences(&w("010"), &w("010010")).unwrap(), vec![1, 4]);
        assert_eq!(occurrences(&w("01"), &w("0101")).unwrap(), vec![1, 3]);
        assert!(occurrences(&FiniteWord::empty(2), &w("010")).is_err());
    }

    #[test]
    fn primitivity_examples() {
        assert!(!is_primitive(&w("0101")).unwrap());
        assert!(is_primitive(&w("01")).unwrap());
        assert!(is_primitive(&w("01001")).unwrap());
        assert!(is_primitive(&FiniteWord::empty(2)).is_err());
    }

    #[test]
    fn primitivity_equals_square_occurrence_count() {
        // Direct check against all divisor periods, exhaustively.
        fn by_periods(word: &[Letter]) -> bool {
            let n = word.len();
            for p in 1..n {
                if n.is_multiple_of(p) && (0..n).all(|i| word[i] == word[i % p]) {
                    return false;
                }
            }
            true
        }
        for len in 1..=10usize {
            for code in 0..3usize.pow(len as u32) {
                let mut c = code;
                let word: Vec<Letter> = (0..len)
                    .map(|_| {
                        let l = (c % 3) as Letter;
                        c /= 3;
                        l
                    })
                    .collect();
                let fw = FiniteWord::new(word.clone(), 3).unwrap();
                assert_eq!(is_primitive(&fw).unwrap(), by_periods(&word), "word {fw}");
            }
        }
    }

    #[test]
    fn fractional_power_examples() {
        assert_eq!(fractional_power(&w("01"), Ratio::from_integer(2)).unwrap(), w("0101"));
        assert_eq!(fractional_power(&w("010"), Ratio::new(5, 3)).unwrap(), w("01001"));
        assert_eq!(fractional_power(&w("012"), Ratio::from_integer(1)).unwrap(), w("012"));
        assert!(fractional_power(&w("01"), Ratio::new(5, 4)).is_err());
        assert!(fractional_power(&w("01"), Ratio::new(1, 2)).is_err());
    }
}
