//! Shared inputs for the benchmarks.

use invdec_core::{inflate, Permutation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Uniformly random permutations of size `n` from a fixed seed.
pub fn random_permutations(n: usize, count: usize, seed: u64) -> Vec<Permutation> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut word: Vec<usize> = (1..=n).collect();
            word.shuffle(&mut rng);
            Permutation::new(word).expect("shuffled identity")
        })
        .collect()
}

/// `2413` inflated by reverse identities of size `k`: one prime node over
/// four serial nodes, so the decomposition count is `2·(k!)^4 / 2 − 1`.
pub fn prime_over_serials(k: usize) -> Permutation {
    let part = Permutation::reverse_identity(k);
    let skeleton: Permutation = "2413".parse().unwrap();
    inflate(&skeleton, &[part.clone(), part.clone(), part.clone(), part]).unwrap()
}
