//! Seeded generator of strict-valid towers and divisors above the degree
//! bound, used by the property runner and the acceptance suite.
//!
//! Break data is generated in upper numbering (`p ∤ u_1`, `u_{i+1} = p·u_i`
//! or `u_{i+1} > p·u_i` with `p ∤ u_{i+1}`) and converted to per-level
//! breaks, so every tower passes [`validate_strict`] by construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover_tower::{
    jumps_from_upper, validate_strict, CoverTower, InvariantDivisor, RamifiedOrbit,
};
use crate::cyclic_rep::GroupSpec;
use crate::decomposition::degree_bound;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseConfig {
    pub primes: Vec<u32>,
    pub max_v: u32,
    pub max_jump: i64,
    pub max_coeff: i64,
    pub max_base_genus: i64,
    pub max_orbits: usize,
    /// Extra room above the smallest admissible base degree.
    pub base_slack: i64,
}

impl Default for CaseConfig {
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5],
            max_v: 3,
            max_jump: 25,
            max_coeff: 60,
            max_base_genus: 3,
            max_orbits: 3,
            base_slack: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub tower: CoverTower,
    pub divisor: InvariantDivisor,
}

pub struct CaseGenerator {
    rng: ChaCha8Rng,
    config: CaseConfig,
}

impl CaseGenerator {
    pub fn new(seed: u64, config: CaseConfig) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
        }
    }

    fn upper_breaks(&mut self, p: i64, depth: u32) -> Vec<i64> {
        let mut u = Vec::with_capacity(depth as usize);
        let first = loop {
            let x = self.rng.gen_range(1..=self.config.max_jump);
            if x % p != 0 {
                break x;
            }
        };
        u.push(first);
        for _ in 1..depth {
            let prev = *u.last().unwrap();
            let next = if self.rng.gen_bool(0.4) {
                p * prev
            } else {
                loop {
                    let x = p * prev + self.rng.gen_range(1..=2 * p);
                    if x % p != 0 {
                        break x;
                    }
                }
            };
            u.push(next);
        }
        u
    }

    fn orbit(&mut self, id: String, p: u32, v: u32) -> RamifiedOrbit {
        let mut depth = self.rng.gen_range(1..=v);
        loop {
            for _ in 0..8 {
                let jumps = jumps_from_upper(&self.upper_breaks(p as i64, depth), p);
                if jumps.iter().all(|&n| n <= self.config.max_jump) {
                    return RamifiedOrbit::new(id, jumps);
                }
            }
            // deep orbits may not fit under max_jump for large p
            depth = (depth - 1).max(1);
        }
    }

    /// A strict-valid tower. Data whose genus goes negative somewhere (an
    /// étale step over a rational curve) is discarded and redrawn.
    pub fn tower(&mut self) -> CoverTower {
        loop {
            if let Some(t) = self.try_tower() {
                debug_assert!(validate_strict(&t).passed());
                return t;
            }
        }
    }

    fn try_tower(&mut self) -> Option<CoverTower> {
        let p = *self
            .config
            .primes
            .choose(&mut self.rng)
            .expect("at least one prime");
        let v = self.rng.gen_range(0..=self.config.max_v);
        let group = GroupSpec::new(p, v).expect("prime and small exponent");
        let base_genus = self.rng.gen_range(0..=self.config.max_base_genus);
        let count = if v == 0 || self.rng.gen_bool(0.2) {
            0
        } else {
            self.rng.gen_range(1..=self.config.max_orbits)
        };
        let orbits = (0..count)
            .map(|i| self.orbit(format!("P{}", i + 1), p, v))
            .collect();
        CoverTower::new(group, base_genus, orbits).ok()
    }

    /// A divisor with `deg D > 2g_X - 2`.
    pub fn divisor(&mut self, t: &CoverTower) -> InvariantDivisor {
        let c = self.config.max_coeff;
        let coeffs: Vec<i64> = t
            .orbits()
            .iter()
            .map(|_| self.rng.gen_range(-c..=c))
            .collect();
        let ramified = InvariantDivisor::from_coeffs(t, 0, coeffs.clone())
            .expect("bounded coefficients")
            .degree(t);
        let order = t.group().order() as i64;
        let min_base = (degree_bound(t) - ramified).div_euclid(order) + 1;
        let base = min_base + self.rng.gen_range(0..=self.config.base_slack);
        InvariantDivisor::from_coeffs(t, base, coeffs).expect("bounded coefficients")
    }

    pub fn case(&mut self) -> Case {
        let tower = self.tower();
        let divisor = self.divisor(&tower);
        Case { tower, divisor }
    }
}

impl Iterator for CaseGenerator {
    type Item = Case;

    fn next(&mut self) -> Option<Case> {
        Some(self.case())
    }
}

/// The first `cases` cases of the default generator for `seed`.
pub fn corpus(seed: u64, cases: usize) -> Vec<Case> {
    CaseGenerator::new(seed, CaseConfig::default())
        .take(cases)
        .collect()
}
