//! Seeded sampling shared by the axiom checker and the surveys.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `amount` distinct indices below `len`, sorted ascending so that scans
/// keep their lexicographic order.
pub fn sorted_subset(rng: &mut ChaCha8Rng, len: usize, amount: usize) -> Vec<usize> {
    let mut picked = index::sample(rng, len, amount.min(len)).into_vec();
    picked.sort_unstable();
    picked
}
