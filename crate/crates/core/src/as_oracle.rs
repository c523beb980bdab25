//! Brute-force ground truth on Artin-Schreier curves `y^p - y = x^m`,
//! `gcd(m, p) = 1`, with `σ : y ↦ y + 1`.
//!
//! The only pole of `x` and `y` is the single point `P_∞` above infinity,
//! with `-v(x) = p` and `-v(y) = m`. The monomials `x^i y^j` (`j < p`) have
//! pairwise distinct pole orders `p·i + m·j`, so those with pole order at
//! most `n` form a basis of `L(n·P_∞)`. The Jordan type of `σ` on that space
//! is read from ranks of powers of `σ - 1` over `F_p`; ranks do not change
//! under extension to the algebraic closure.

use std::collections::{BTreeMap, HashMap};

use crate::cover_tower::{CoverTower, InvariantDivisor, RamifiedOrbit};
use crate::cyclic_rep::{Decomposition, GroupSpec};
use crate::error::{Error, Result};
use crate::fp::{self, Matrix};

/// Id of the single ramified orbit in [`AsCurve::to_tower`].
pub const INFINITY: &str = "inf";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AsCurve {
    p: u32,
    m: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl AsCurve {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        // validates primality
        GroupSpec::new(p, 1)?;
        if m == 0 || gcd(m, p) != 1 {
            return Err(Error::InvalidCurve(format!(
                "y^{p} - y = x^{m} needs m >= 1 prime to p"
            )));
        }
        Ok(Self { p, m })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn genus(&self) -> i64 {
        (self.p as i64 - 1) * (self.m as i64 - 1) / 2
    }

    /// The monomials `x^i y^j` spanning `L(n·P_∞)`, sorted by pole order.
    pub fn riemann_roch_basis(&self, n: i64) -> MonomialBasis {
        let (p, m) = (self.p as i64, self.m as i64);
        let mut monomials = Vec::new();
        if n >= 0 {
            for j in 0..p {
                let mut i = 0;
                while p * i + m * j <= n {
                    monomials.push((i as u32, j as u32));
                    i += 1;
                }
            }
        }
        monomials.sort_by_key(|&(i, j)| p * i as i64 + m * j as i64);
        MonomialBasis {
            curve: *self,
            monomials,
        }
    }

    /// Matrix of `σ` on the basis: column `(i, j)` is `x^i (y + 1)^j`
    /// expanded with binomial coefficients mod `p`.
    pub fn sigma_matrix(&self, basis: &MonomialBasis) -> Matrix {
        let p = self.p;
        let index: HashMap<(u32, u32), usize> = basis
            .monomials
            .iter()
            .enumerate()
            .map(|(k, &mono)| (mono, k))
            .collect();
        let size = basis.len();
        let mut mat = vec![vec![0u32; size]; size];
        for (col, &(i, j)) in basis.monomials.iter().enumerate() {
            for t in 0..=j {
                let c = binomial_mod(j, t, p);
                if c == 0 {
                    continue;
                }
                // x^i y^t has smaller pole order, so it is in the basis
                let row = index[&(i, t)];
                mat[row][col] = c;
            }
        }
        mat
    }

    /// Ranks of `(σ - 1)^k` on `L(n·P_∞)`, `k = 0, 1, ...` down to zero.
    pub fn rank_sequence(&self, n: i64) -> Vec<usize> {
        let basis = self.riemann_roch_basis(n);
        let nilpotent = fp::sub_identity(&self.sigma_matrix(&basis), self.p);
        fp::nilpotent_ranks(&nilpotent, self.p)
    }

    /// Jordan type of `σ` on `H^0(X, L(n·P_∞))`, for `n > 2g - 2`.
    pub fn jordan_type(&self, n: i64) -> Result<Decomposition> {
        let bound = 2 * self.genus() - 2;
        if n <= bound {
            return Err(Error::DegreeTooSmall { degree: n, bound });
        }
        Ok(fp::jordan_type_from_ranks(&self.rank_sequence(n)))
    }

    /// The one-level tower `X -> P^1` with one totally ramified point of break `m`.
    pub fn to_tower(&self) -> CoverTower {
        let group = GroupSpec::new(self.p, 1).expect("validated prime");
        CoverTower::new(
            group,
            0,
            vec![RamifiedOrbit::new(INFINITY, vec![self.m as i64])],
        )
        .expect("Artin-Schreier data is realizable")
    }

    /// The divisor `n·P_∞` on [`Self::to_tower`].
    pub fn divisor(&self, t: &CoverTower, n: i64) -> Result<InvariantDivisor> {
        InvariantDivisor::new(t, 0, &BTreeMap::from([(INFINITY.to_string(), n)]))
    }
}

fn binomial_mod(n: u32, k: u32, p: u32) -> u32 {
    let mut c = 1u64;
    for i in 0..k as u64 {
        c = c * (n as u64 - i) / (i + 1);
    }
    (c % p as u64) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    curve: AsCurve,
    monomials: Vec<(u32, u32)>,
}

impl MonomialBasis {
    /// Exponent pairs `(i, j)` of `x^i y^j`.
    pub fn monomials(&self) -> &[(u32, u32)] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn pole_orders(&self) -> Vec<i64> {
        let (p, m) = (self.curve.p as i64, self.curve.m as i64);
        self.monomials
            .iter()
            .map(|&(i, j)| p * i as i64 + m * j as i64)
            .collect()
    }
}
