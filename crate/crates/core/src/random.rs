//! Seeded generators for quivers, trees, posets and weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::Quiver;
use crate::skeleton::Poset;

/// Deterministic generator used by the CLI and the test suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Quiver on `n` vertices with `arrows` uniformly random arrows (loops and
/// parallel arrows allowed).
pub fn random_quiver<R: Rng>(rng: &mut R, n: usize, arrows: usize) -> Quiver {
    assert!(n > 0, "a quiver needs at least one vertex");
    let edges: Vec<(usize, usize)> = (0..arrows)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Quiver::from_index_edges("R", n, &edges)
}

/// Quiver whose underlying graph is a random tree with random orientations.
pub fn random_tree_quiver<R: Rng>(rng: &mut R, n: usize) -> Quiver {
    assert!(n > 0, "a tree needs at least one vertex");
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| {
            let parent = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (parent, i)
            } else {
                (i, parent)
            }
        })
        .collect();
    Quiver::from_index_edges("T", n, &edges)
}

/// Random poset on `m` elements: each pair of a random linear order is
/// related with probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, m: usize, density: f64) -> Poset {
    let mut labels: Vec<usize> = (0..m).collect();
    labels.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if rng.gen_bool(density) {
                rel.push((labels[i], labels[j]));
            }
        }
    }
    Poset::from_relations(m, &rel).expect("relations follow a linear order")
}

/// Nonzero rational with numerator in `[-6, 6]` and denominator in `[1, 5]`.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-6..=6);
    }
    let den: i64 = rng.gen_range(1..=5);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_weights<R: Rng>(rng: &mut R, k: usize) -> Vec<BigRational> {
    (0..k).map(|_| random_nonzero_rational(rng)).collect()
}
