//! Oracle triple agreement: the closed-form case analysis, the brute-force
//! window scan, and the Rauzy-graph walk must agree on every randomized
//! `(directive word, intercept, n)` triple — zero mismatches tolerated.

mod common;

use common::{random_regular_directive, random_valid_intercept};
use episturmian::complexity::{inrc_brute, inrc_rauzy, inrc_regular};
use episturmian::engine::{word_from_intercept, WordTower};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Window lengths probing every region of the interval structure: small
/// absolute values, random mid-range values, and the neighborhoods of the
/// interval endpoints `|u_{r_k}|` where the case analysis switches.
fn probe_lengths<R: Rng>(rng: &mut R, tower: &WordTower, max_n: u64) -> Vec<u64> {
    let mut out = vec![1, 2, 3];
    for _ in 0..6 {
        out.push(rng.gen_range(1..=max_n));
    }
    let num = tower.numeration();
    for k in 1.. {
        let end = num.central_len_run_end(k);
        let Some(end) = end.to_u64() else { break };
        if end > max_n {
            break;
        }
        out.extend([end.max(1), end + 1, (end + 2).min(max_n)]);
    }
    out.retain(|&n| n >= 1 && n <= max_n);
    out.sort_unstable();
    out.dedup();
    out
}

#[test]
fn closed_brute_and_rauzy_agree_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x04ac1e);
    let mut triples = 0usize;
    let mut pairs = 0usize;
    while triples < 10_500 {
        let dw = random_regular_directive(&mut rng);
        let tower = WordTower::from_directive(dw);
        let intercept = random_valid_intercept(&mut rng, tower.numeration());
        pairs += 1;
        let d = usize::from(tower.regular_period().unwrap());
        let lengths = probe_lengths(&mut rng, &tower, 2000);

        // One shared explicit prefix per pair, long enough for every probe.
        let max_n = *lengths.last().unwrap() as usize;
        let budget = (d + 1) * (max_n + 1) + 64;
        let word = word_from_intercept(&tower, &intercept, budget).unwrap();

        let mut previous: Option<BigUint> = None;
        for &n in &lengths {
            let closed = inrc_regular(&tower, &intercept, &BigUint::from(n)).unwrap();
            let brute = inrc_brute(&word, n as usize)
                .unwrap()
                .unwrap_or_else(|| panic!("brute scan must certify n={n} within {budget}"));
            let rauzy = inrc_rauzy(&tower, &intercept, n as usize).unwrap();
            assert_eq!(
                closed.value,
                BigUint::from(brute),
                "closed vs brute: Δ={} c={} n={n} case={}",
                tower.directive(),
                intercept,
                closed.case
            );
            assert_eq!(
                brute, rauzy,
                "brute vs rauzy: Δ={} c={} n={n}",
                tower.directive(),
                intercept
            );
            // 1 ≤ inrc(n) ≤ (d−1)n + 1, nondecreasing in n.
            assert!(closed.value >= BigUint::from(1u32));
            assert!(closed.value <= BigUint::from((d as u64 - 1) * n + 1));
            if let Some(prev) = &previous {
                assert!(
                    closed.value >= *prev,
                    "inrc must be nondecreasing: Δ={} c={} n={n}",
                    tower.directive(),
                    intercept
                );
            }
            previous = Some(closed.value);
            triples += 1;
        }
    }
    assert!(triples >= 10_000, "ran {triples} triples over {pairs} pairs");
}
