//! Fixed inputs shared by the benchmarks.

use chmoduli_core::sampling::{
    random_basic_variety_point, random_quadruple, seeded_rng, QuadrupleKind,
};
use chmoduli_core::{ModuliPoint, Quadruple};

/// `count` generic quadruples in `∂CH^n`, reproducible from `seed`.
pub fn quadruples(n: usize, count: usize, seed: u64) -> Vec<Quadruple> {
    (0..count as u64)
        .map(|i| random_quadruple(n, QuadrupleKind::Generic, &mut seeded_rng(seed, i)).unwrap())
        .collect()
}

/// `count` points of the basic variety, reproducible from `seed`.
pub fn variety_points(count: usize, seed: u64) -> Vec<ModuliPoint> {
    (0..count as u64)
        .map(|i| random_basic_variety_point(&mut seeded_rng(seed, i)).unwrap())
        .collect()
}
