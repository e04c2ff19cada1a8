//! Seeded random congruence systems. The generator is ChaCha8 seeded with
//! `seed_from_u64`, so samples are identical across platforms.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::CongruenceSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    /// Inclusive dimension range.
    pub m_min: usize,
    pub m_max: usize,
    /// Moduli are drawn from `2..=nmax`.
    pub nmax: u64,
    /// Restrict moduli to primes.
    pub primes_only: bool,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, count: 200, m_min: 2, m_max: 4, nmax: 50, primes_only: false }
    }
}

/// Single-row systems: `m` uniform in `[m_min, m_max]`, modulus uniform in
/// `[2, nmax]` (or among the primes there), coefficients uniform in `[0, n)`.
pub fn random_systems(cfg: &SampleConfig) -> Vec<CongruenceSystem> {
    assert!(cfg.m_min >= 1 && cfg.m_min <= cfg.m_max && cfg.nmax >= 2, "bad sample config");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let moduli: Vec<u64> = (2..=cfg.nmax).filter(|&n| !cfg.primes_only || crate::constructions::is_prime(n)).collect();
    (0..cfg.count)
        .map(|_| {
            let m = rng.gen_range(cfg.m_min..=cfg.m_max);
            let n = moduli[rng.gen_range(0..moduli.len())];
            let row = (0..m).map(|_| rng.gen_range(0..n)).collect();
            CongruenceSystem::new(vec![n], vec![row]).expect("reduced coefficients")
        })
        .collect()
}

/// One system with coefficients drawn for a fixed modulus and dimension.
pub fn random_system(rng: &mut ChaCha8Rng, n: u64, m: usize) -> CongruenceSystem {
    let row = (0..m).map(|_| rng.gen_range(0..n)).collect();
    CongruenceSystem::new(vec![n], vec![row]).expect("reduced coefficients")
}

/// `m` distinct nonzero residues mod `n`, in random order. `None` if `m >= n`.
pub fn random_distinct_characters(rng: &mut ChaCha8Rng, n: u64, m: usize) -> Option<CongruenceSystem> {
    if m as u64 >= n {
        return None;
    }
    let row = rand::seq::index::sample(rng, n as usize - 1, m).into_iter().map(|i| i as u64 + 1).collect();
    Some(CongruenceSystem::new(vec![n], vec![row]).expect("reduced coefficients"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_characters() {
        let mut r = rng(3);
        for _ in 0..100 {
            let s = random_distinct_characters(&mut r, 7, 4).unwrap();
            let mut row = s.coefficients()[0].clone();
            assert!(row.iter().all(|&c| (1..7).contains(&c)));
            row.sort();
            row.dedup();
            assert_eq!(row.len(), 4);
        }
        assert!(random_distinct_characters(&mut r, 5, 4).is_some());
        assert!(random_distinct_characters(&mut r, 5, 5).is_none());
    }

    #[test]
    fn reproducible() {
        let cfg = SampleConfig { seed: 7, count: 50, ..Default::default() };
        let a = random_systems(&cfg);
        assert_eq!(a, random_systems(&cfg));
        assert_ne!(a, random_systems(&SampleConfig { seed: 8, ..cfg.clone() }));
        for s in &a {
            assert!((2..=4).contains(&s.dimension()));
            assert!((2..=50).contains(&s.moduli()[0]));
        }
    }

    #[test]
    fn primes_only() {
        let cfg = SampleConfig { seed: 1, count: 40, primes_only: true, ..Default::default() };
        assert!(random_systems(&cfg).iter().all(|s| crate::constructions::is_prime(s.moduli()[0])));
    }
}
