//! Seeded workloads shared by the criterion benches.

use dowker_core::SelfRelation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A total self-relation on `n` vertices with edge density `density`.
pub fn random_total(n: usize, density: f64, seed: u64) -> SelfRelation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_bool(density)).collect())
        .collect();
    for row in &mut rows {
        if !row.iter().any(|&b| b) {
            row[rng.gen_range(0..n)] = true;
        }
    }
    SelfRelation::from_matrix(&rows, None).expect("square matrix")
}
