//! Seeded corpora of all-ones minimal fibrations for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use delsarte_core::reduction::MinimalFibration;
use delsarte_core::{Error, Monomial2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn monomial(rng: &mut ChaCha8Rng, max_deg: u32) -> Monomial2 {
    let x = rng.gen_range(0..=max_deg);
    let y = rng.gen_range(0..=max_deg - x);
    Monomial2::new(x, y)
}

/// `count` distinct valid minimal fibrations of surface degree at most
/// `max_total`. With `distinct_n` set, fibrations whose plane monomials
/// coincide are skipped.
pub fn random_fibrations(seed: u64, count: usize, max_total: u32, distinct_n: bool) -> Vec<MinimalFibration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 200_000, "corpus generator stalled at {} of {count}", out.len());
        let ms = [
            monomial(&mut rng, max_total),
            monomial(&mut rng, max_total),
            monomial(&mut rng, max_total),
            monomial(&mut rng, max_total - 1),
        ];
        let mf = match MinimalFibration::new(ms) {
            Ok(mf) => mf,
            Err(Error::DegenerateInput) => continue,
            Err(e) => panic!("{ms:?}: {e}"),
        };
        if distinct_n && mf.has_coinciding_monomials() {
            continue;
        }
        let mut key: Vec<(u32, u32)> = ms[..3].iter().map(|m| (m.x, m.y)).collect();
        key.sort();
        key.push((ms[3].x, ms[3].y));
        if seen.insert(key) {
            out.push(mf);
        }
    }
    out
}

pub fn from_pairs(m: [(u32, u32); 4]) -> MinimalFibration {
    MinimalFibration::from_pairs(m).unwrap()
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}
