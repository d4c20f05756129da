//! Seeded selection of basis tuples for sampled checks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::presentations::Word;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Every `arity`-tuple of `basis`, lexicographically.
pub fn all_tuples(basis: &[Word], arity: usize) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                basis.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// `count` tuples drawn uniformly with replacement.
pub fn sample_tuples(basis: &[Word], arity: usize, count: usize, seed: u64) -> Vec<Vec<Word>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..arity)
                .map(|_| basis.choose(&mut rng).expect("nonempty").clone())
                .collect()
        })
        .collect()
}

/// All tuples when there are at most `count` of them, otherwise a sample.
pub fn tuples(basis: &[Word], arity: usize, count: usize, seed: u64) -> Vec<Vec<Word>> {
    let total = basis.len().checked_pow(arity as u32);
    match total {
        Some(t) if t <= count => all_tuples(basis, arity),
        _ => sample_tuples(basis, arity, count, seed),
    }
}

pub fn triples(tuples: Vec<Vec<Word>>) -> Vec<[Word; 3]> {
    tuples
        .into_iter()
        .map(|t| [t[0].clone(), t[1].clone(), t[2].clone()])
        .collect()
}

pub fn pairs(tuples: Vec<Vec<Word>>) -> Vec<[Word; 2]> {
    tuples.into_iter().map(|t| [t[0].clone(), t[1].clone()]).collect()
}
