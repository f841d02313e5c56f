//! Theorem-level behavior of the Diophantine-exponent estimator: lower
//! bounds, divergence under unbounded partial quotients, shift invariance,
//! convergence to the closed forms, and the Tribonacci-subshift sandwich.

mod common;

use common::random_valid_intercept;
use episturmian::directive::QuotientSpec;
use episturmian::engine::{shifted_intercept, WordTower};
use episturmian::exponents::{dio_estimate, dio_estimate_with_window, dio_standard_closed};
use episturmian::{DigitString, DirectiveWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn tower(text: &str) -> WordTower {
    WordTower::from_directive(DirectiveWord::parse(text).unwrap())
}

/// A random regular directive word satisfying `d = 2` or `limsup a_k ≥ 3`.
fn random_lower_bound_directive<R: Rng>(rng: &mut R) -> DirectiveWord {
    let d = rng.gen_range(2..=5u8);
    let pre_len = rng.gen_range(0..=2usize);
    let per_len = rng.gen_range(1..=4usize);
    let preperiod: Vec<u64> = (0..pre_len).map(|_| rng.gen_range(1..=4)).collect();
    let mut period: Vec<u64> = (0..per_len).map(|_| rng.gen_range(1..=4)).collect();
    if d > 2 && period.iter().all(|&a| a < 3) {
        let slot = rng.gen_range(0..per_len);
        period[slot] = rng.gen_range(3..=4);
    }
    DirectiveWord::regular(d, QuotientSpec::Periodic { preperiod, period }).unwrap()
}

#[test]
fn lower_bound_hypothesis_forces_exponent_above_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10e4b07d);
    for _ in 0..120 {
        let dw = random_lower_bound_directive(&mut rng);
        let t = WordTower::from_directive(dw);
        let c = random_valid_intercept(&mut rng, t.numeration());
        let est = dio_estimate(&t, &c, 0, 60).unwrap();
        assert!(
            est.to_f64() > 2.0 + 1e-6,
            "Δ={} c={c}: dio = {}",
            t.directive(),
            est.to_f64()
        );
    }
}

#[test]
fn unbounded_quotients_diverge() {
    let dw = DirectiveWord::regular(2, QuotientSpec::Stream(Arc::new(|k| k as u64))).unwrap();
    let t = WordTower::from_directive(dw);
    for intercept in [
        DigitString::zeros(),
        DigitString::finite(vec![0, 1, 0, 2]),
        DigitString::eventually_periodic(vec![], vec![1, 0]),
    ] {
        if !t.numeration().is_valid(&intercept) {
            continue;
        }
        let est = dio_estimate(&t, &intercept, 0, 30).unwrap();
        assert!(est.to_f64() > 10.0, "{intercept}: {}", est.to_f64());
    }
}

#[test]
fn estimates_converge_to_the_closed_forms() {
    for text in ["periodic:|01", "periodic:|012", "periodic:|0123"] {
        let t = tower(text);
        let closed = dio_standard_closed(&t, 1e-12).unwrap().value.midpoint();
        let est = dio_estimate(&t, &DigitString::zeros(), 0, 40).unwrap();
        assert!(
            (est.to_f64() - closed).abs() <= 1e-3,
            "{text}: estimate {} vs closed {closed}",
            est.to_f64()
        );
        assert!(est.monotone_tail, "{text}: per-k maxima must be eventually monotone");
    }
}

#[test]
fn diophantine_exponent_is_shift_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5417);
    for text in ["periodic:|01", "periodic:|012", "periodic:|001122"] {
        let t = tower(text);
        for _ in 0..4 {
            let base = random_valid_intercept(&mut rng, t.numeration());
            let window = t
                .directive()
                .runs_cycle()
                .map(|(_, r)| r)
                .unwrap()
                .max(base.period_len().max(1))
                * 2;
            let reference =
                dio_estimate_with_window(&t, &base, 0, 48, Some(window)).unwrap().to_f64();
            let mut c = base.clone();
            let steps = rng.gen_range(1..=50usize);
            for _ in 0..steps {
                c = shifted_intercept(&t, &c, None).unwrap();
            }
            let shifted = dio_estimate_with_window(&t, &c, 0, 48, Some(window)).unwrap().to_f64();
            assert!(
                (shifted - reference).abs() <= 1e-3,
                "{text} {base} after {steps} shifts: {shifted} vs {reference}"
            );
        }
    }
}

#[test]
fn tribonacci_subshift_exponents_are_sandwiched() {
    let t = tower("periodic:|012");
    let closed = dio_standard_closed(&t, 1e-12).unwrap();
    let dio_f3 = closed.value.midpoint();
    let ind_f3 = closed.index_value().midpoint();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7314b0);
    for _ in 0..60 {
        let c = random_valid_intercept(&mut rng, t.numeration());
        let est = dio_estimate(&t, &c, 0, 60).unwrap().to_f64();
        assert!(
            est >= dio_f3 - 1e-3 && est <= ind_f3 + 1e-3,
            "{c}: {est} outside [{dio_f3}, {ind_f3}]"
        );
    }
}
