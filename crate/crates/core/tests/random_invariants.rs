//! Randomized invariants over arbitrary inputs (proptest), plus a shared-read
//! concurrency smoke test over the append-only caches.

use episturmian::engine::WordTower;
use episturmian::words::{fractional_power, is_primitive, occurrences, palindromic_closure};
use episturmian::{DigitString, DirectiveWord, FiniteWord, NumerationSystem};
use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;

fn arbitrary_word(max_len: usize, alphabet: u8) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(0..alphabet, 0..=max_len)
        .prop_map(move |symbols| FiniteWord::new(symbols, u16::from(alphabet)).unwrap())
}

proptest! {
    #[test]
    fn closure_is_a_minimal_palindromic_extension(w in arbitrary_word(40, 3)) {
        let closed = palindromic_closure(&w);
        prop_assert!(closed.is_palindrome());
        prop_assert_eq!(closed.factor(1, w.len()), w.clone());
        // Minimality: no shorter extension of w is a palindrome.
        for cut in w.len()..closed.len() {
            prop_assert!(!closed.factor(1, cut).is_palindrome() || cut < w.len());
        }
    }

    #[test]
    fn occurrence_positions_really_occur(
        u in arbitrary_word(6, 2).prop_filter("nonempty", |w| !w.is_empty()),
        w in arbitrary_word(60, 2),
    ) {
        let positions = occurrences(&u, &w).unwrap();
        for window in positions.windows(2) {
            prop_assert!(window[0] < window[1]);
        }
        for i in 1..=w.len().saturating_sub(u.len() - 1) {
            let here = w.factor(i, i + u.len() - 1) == u;
            prop_assert_eq!(here, positions.contains(&i), "position {}", i);
        }
    }

    #[test]
    fn integer_powers_are_imprimitive(w in arbitrary_word(12, 3), reps in 2usize..4) {
        prop_assume!(!w.is_empty());
        let power = fractional_power(&w, Ratio::from_integer(reps as u64)).unwrap();
        prop_assert_eq!(power.len(), w.len() * reps);
        prop_assert!(!is_primitive(&power).unwrap());
    }

    #[test]
    fn greedy_expansion_round_trips(n in 0u128..1u128 << 80, pick in 0usize..4) {
        let texts = ["periodic:|01", "periodic:|012", "periodic:|0123", "periodic:|001122"];
        let num = NumerationSystem::new(DirectiveWord::parse(texts[pick]).unwrap());
        let n = BigUint::from(n);
        let rep = num.represent(&n);
        prop_assert!(num.is_valid(&rep));
        prop_assert_eq!(num.value(&rep).unwrap(), n);
    }

    #[test]
    fn digit_strings_round_trip_through_text(
        pre in prop::collection::vec(0u64..30, 0..5),
        per in prop::collection::vec(0u64..30, 0..4),
    ) {
        let c = DigitString::eventually_periodic(pre, per);
        let rendered = if c.is_finite() { format!("digits:{c}") } else { c.to_string() };
        let parsed = DigitString::parse(&rendered).unwrap();
        for i in 1..=24 {
            prop_assert_eq!(parsed.digit(i), c.digit(i), "digit {}", i);
        }
    }
}

#[test]
fn shared_tower_reads_are_consistent_across_threads() {
    let t = WordTower::from_directive(DirectiveWord::parse("periodic:|001122").unwrap());
    let c = DigitString::parse("periodic:|1").unwrap();
    let baseline: Vec<BigUint> = (1..=200u64)
        .map(|n| episturmian::complexity::inrc_regular(&t, &c, &n.into()).unwrap().value)
        .collect();
    let q40 = t.numeration().place_value(40);
    std::thread::scope(|scope| {
        for _ in 0..8 {
            let t = t.clone();
            let c = c.clone();
            let baseline = baseline.clone();
            let q40 = q40.clone();
            scope.spawn(move || {
                assert_eq!(t.numeration().place_value(40), q40);
                let prefix = t.standard_prefix(5000).unwrap();
                assert_eq!(prefix[..5], [0, 0, 1, 0, 0]);
                for n in 1..=200u64 {
                    let got =
                        episturmian::complexity::inrc_regular(&t, &c, &n.into()).unwrap().value;
                    assert_eq!(got, baseline[(n - 1) as usize]);
                }
            });
        }
    });
}
