//! Combinatorial model of the tower `X = X_0 -> X_1 -> ... -> X_v = Y` of
//! degree-`p` quotients of a curve with a `Z/p^v` action.
//!
//! Points are tracked as `G`-orbits. An orbit whose stabilizer has order
//! `p^m` (its *depth*) is ramified in the covers `π_1, ..., π_m` and étale
//! above that. Each ramified orbit carries one break `N^(n)` per ramified
//! level; `jumps[n - 1]` belongs to `π_n : X_{n-1} -> X_n`.
//!
//! Divisors are `G`-invariant, so they are stored as one coefficient per
//! orbit plus the degree of the unramified part on `Y`. Every operator below
//! acts as the identity on that unramified part.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::cyclic_rep::GroupSpec;
use crate::error::{Error, Result};

/// Bound on ramification breaks.
pub const MAX_JUMP: i64 = 1_000_000;
/// Bound on base genus, base degree and divisor coefficients.
pub const MAX_COEFF: i64 = 1_000_000_000;
pub const MAX_ORBITS: usize = 64;

fn check_magnitude(what: &'static str, value: i64, max: i64) -> Result<()> {
    if value.abs() > max {
        return Err(Error::Magnitude { what, value, max });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RamifiedOrbit {
    pub id: String,
    /// `jumps[n - 1]` is the break of `π_n` at the image of the orbit.
    pub jumps: Vec<i64>,
}

impl RamifiedOrbit {
    pub fn new(id: impl Into<String>, jumps: Vec<i64>) -> Self {
        Self {
            id: id.into(),
            jumps,
        }
    }

    /// Exponent `m` of the stabilizer order `p^m`.
    pub fn depth(&self) -> u32 {
        self.jumps.len() as u32
    }

    /// Break of `π_n` at this orbit, if the orbit ramifies there.
    pub fn jump(&self, n: u32) -> Option<i64> {
        if n == 0 {
            return None;
        }
        self.jumps.get(n as usize - 1).copied()
    }
}

/// Number of points of `X_n` lying in the image of the orbit.
pub fn orbit_point_count(o: &RamifiedOrbit, n: u32, g: &GroupSpec) -> i64 {
    let p = g.p() as i64;
    let m = o.depth();
    let exponent = if n <= m { g.v() - m } else { g.v() - n };
    p.pow(exponent)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTower {
    group: GroupSpec,
    base_genus: i64,
    orbits: Vec<RamifiedOrbit>,
    /// `genera[n]` is the genus of `X_n`.
    genera: Vec<i64>,
}

impl CoverTower {
    /// Builds a tower after structural validation: positive breaks, depths in
    /// `1..=v`, unique ids, and integral nonnegative genus at every level.
    pub fn new(group: GroupSpec, base_genus: i64, orbits: Vec<RamifiedOrbit>) -> Result<Self> {
        if base_genus < 0 {
            return Err(Error::NegativeBaseGenus(base_genus));
        }
        check_magnitude("base genus", base_genus, MAX_COEFF)?;
        if orbits.len() > MAX_ORBITS {
            return Err(Error::Magnitude {
                what: "orbit count",
                value: orbits.len() as i64,
                max: MAX_ORBITS as i64,
            });
        }
        let mut seen = HashSet::new();
        for o in &orbits {
            if !seen.insert(o.id.as_str()) {
                return Err(Error::DuplicateOrbit(o.id.clone()));
            }
            let invalid = |reason: String| Error::InvalidOrbit {
                id: o.id.clone(),
                reason,
            };
            if o.depth() == 0 || o.depth() > group.v() {
                return Err(invalid(format!(
                    "depth {} outside 1..={}",
                    o.depth(),
                    group.v()
                )));
            }
            if let Some(&bad) = o.jumps.iter().find(|&&n| n < 1) {
                return Err(invalid(format!("jump {bad} is not positive")));
            }
            for &n in &o.jumps {
                check_magnitude("jump", n, MAX_JUMP)?;
            }
        }
        let genera = level_genera(&group, base_genus, &orbits)?;
        Ok(Self {
            group,
            base_genus,
            orbits,
            genera,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn base_genus(&self) -> i64 {
        self.base_genus
    }

    pub fn orbits(&self) -> &[RamifiedOrbit] {
        &self.orbits
    }

    pub fn orbit_index(&self, id: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.id == id)
    }

    /// Genus of `X_n`.
    pub fn genus(&self, n: u32) -> Result<i64> {
        self.genera
            .get(n as usize)
            .copied()
            .ok_or(Error::LevelOutOfRange {
                level: n,
                v: self.group.v(),
            })
    }

    /// Genera of `X_0, ..., X_v`.
    pub fn genera(&self) -> &[i64] {
        &self.genera
    }

    /// `g_X`, the genus of the top curve.
    pub fn top_genus(&self) -> i64 {
        self.genera[0]
    }

    /// Exponent of the largest ramification subgroup: the maximal stabilizer.
    pub fn ramification_exponent(&self) -> u32 {
        self.orbits
            .iter()
            .map(RamifiedOrbit::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn max_jump(&self) -> i64 {
        self.orbits
            .iter()
            .flat_map(|o| o.jumps.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Riemann-Hurwitz down the tower, each ramified point of a degree-`p`
/// Artin-Schreier step contributing `(p - 1)(N + 1)`.
fn level_genera(group: &GroupSpec, base_genus: i64, orbits: &[RamifiedOrbit]) -> Result<Vec<i64>> {
    let p = group.p() as i64;
    let v = group.v();
    let mut genera = vec![0i64; v as usize + 1];
    genera[v as usize] = base_genus;
    // 2g - 2 at the current level
    let mut euler = 2 * base_genus - 2;
    for n in (1..=v).rev() {
        let ramified: i64 = orbits
            .iter()
            .filter_map(|o| {
                o.jump(n)
                    .map(|jump| orbit_point_count(o, n - 1, group) * (p - 1) * (jump + 1))
            })
            .sum();
        euler = p * euler + ramified;
        let level = n - 1;
        if euler % 2 != 0 {
            return Err(Error::NonIntegralGenus { level });
        }
        let genus = euler / 2 + 1;
        if genus < 0 {
            return Err(Error::NegativeGenus { level, genus });
        }
        genera[level as usize] = genus;
    }
    Ok(genera)
}

/// A `G`-invariant divisor `D = π^*δ + Σ n_P·(orbit P)` on `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantDivisor {
    base_degree: i64,
    /// Indexed like `CoverTower::orbits`.
    coeffs: Vec<i64>,
}

impl InvariantDivisor {
    /// Divisor from explicit per-orbit coefficients; absent orbits get 0.
    pub fn new(
        t: &CoverTower,
        base_degree: i64,
        orbit_coeffs: &BTreeMap<String, i64>,
    ) -> Result<Self> {
        let mut coeffs = vec![0; t.orbits.len()];
        for (id, &c) in orbit_coeffs {
            let idx = t
                .orbit_index(id)
                .ok_or_else(|| Error::UnknownOrbit(id.clone()))?;
            coeffs[idx] = c;
        }
        Self::from_coeffs(t, base_degree, coeffs)
    }

    /// Coefficients given positionally, in the tower's orbit order.
    pub fn from_coeffs(t: &CoverTower, base_degree: i64, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != t.orbits.len() {
            return Err(Error::LengthMismatch {
                expected: t.orbits.len(),
                found: coeffs.len(),
            });
        }
        check_magnitude("base degree", base_degree, MAX_COEFF)?;
        for &c in &coeffs {
            check_magnitude("divisor coefficient", c, MAX_COEFF)?;
        }
        Ok(Self {
            base_degree,
            coeffs,
        })
    }

    /// `π^*M` for a divisor class of degree `deg_m` on `Y`.
    pub fn pullback(t: &CoverTower, deg_m: i64) -> Result<Self> {
        Self::from_coeffs(t, deg_m, vec![0; t.orbits.len()])
    }

    pub fn base_degree(&self) -> i64 {
        self.base_degree
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff_map(&self, t: &CoverTower) -> BTreeMap<String, i64> {
        t.orbits
            .iter()
            .zip(&self.coeffs)
            .map(|(o, &c)| (o.id.clone(), c))
            .collect()
    }

    /// The same divisor viewed as a level-0 divisor.
    pub fn at_level_zero(&self) -> LevelDivisor {
        LevelDivisor {
            level: 0,
            base_degree: self.base_degree,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `deg D` on `X`.
    pub fn degree(&self, t: &CoverTower) -> i64 {
        divisor_degree(&self.at_level_zero(), t)
    }
}

/// A divisor on an intermediate curve `X_n`, invariant under `G/H_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelDivisor {
    pub level: u32,
    pub base_degree: i64,
    /// One coefficient per orbit of the tower (image of the orbit on `X_n`).
    pub coeffs: Vec<i64>,
}

pub fn divisor_degree(d: &LevelDivisor, t: &CoverTower) -> i64 {
    let g = &t.group;
    let p = g.p() as i64;
    let unramified = d.base_degree * p.pow(g.v() - d.level);
    let ramified: i64 = t
        .orbits
        .iter()
        .zip(&d.coeffs)
        .map(|(o, &c)| c * orbit_point_count(o, d.level, g))
        .sum();
    unramified + ramified
}

/// The twisted pushforward `π_*^α D = [ (1/p) π_*(D - α Σ N_P P) ]` along
/// `π_n : X_{n-1} -> X_n`, where `d` lives on `X_{n-1}`.
pub fn pushforward_alpha(d: &LevelDivisor, t: &CoverTower, alpha: u32) -> Result<LevelDivisor> {
    let g = &t.group;
    if d.level >= g.v() {
        return Err(Error::LevelOutOfRange {
            level: d.level + 1,
            v: g.v(),
        });
    }
    if alpha >= g.p() {
        return Err(Error::AlphaOutOfRange { alpha, p: g.p() });
    }
    if d.coeffs.len() != t.orbits.len() {
        return Err(Error::LengthMismatch {
            expected: t.orbits.len(),
            found: d.coeffs.len(),
        });
    }
    let n = d.level + 1;
    let p = g.p() as i64;
    let coeffs = t
        .orbits
        .iter()
        .zip(&d.coeffs)
        .map(|(o, &c)| match o.jump(n) {
            Some(jump) => (c - alpha as i64 * jump).div_euclid(p),
            // étale at this level: p points collapse to one, coefficient kept
            None => c,
        })
        .collect();
    Ok(LevelDivisor {
        level: n,
        base_degree: d.base_degree,
        coeffs,
    })
}

/// `π_*^G L_X(D) = L_Y([π_* D / #G])`: each orbit coefficient becomes
/// `floor(n_P / p^m)` for an orbit of depth `m`.
pub fn kani_pushforward(d: &InvariantDivisor, t: &CoverTower) -> LevelDivisor {
    let p = t.group.p() as i64;
    let coeffs = t
        .orbits
        .iter()
        .zip(&d.coeffs)
        .map(|(o, &c)| c.div_euclid(p.pow(o.depth())))
        .collect();
    LevelDivisor {
        level: t.group.v(),
        base_degree: d.base_degree,
        coeffs,
    }
}

/// Outcome of [`validate_strict`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictReport {
    pub violations: Vec<String>,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Necessary conditions for the break data to come from an actual tower:
/// `p ∤ N`, lower breaks non-decreasing, integral upper breaks obeying the
/// Artin-Schreier-Witt growth `u_{i+1} >= p·u_i` (with `p ∤ u_{i+1}` when
/// the inequality is strict). Sufficiency is not claimed.
pub fn validate_strict(t: &CoverTower) -> StrictReport {
    let p = t.group.p() as i64;
    let mut violations = Vec::new();
    for o in &t.orbits {
        for (idx, &n) in o.jumps.iter().enumerate() {
            if n % p == 0 {
                violations.push(format!(
                    "orbit `{}`: break {n} of level {} is divisible by p = {p}",
                    o.id,
                    idx + 1
                ));
            }
        }
        // lower breaks of the stabilizer, smallest first
        let lower: Vec<i64> = o.jumps.iter().rev().copied().collect();
        if let Some(w) = lower.windows(2).find(|w| w[1] < w[0]) {
            violations.push(format!(
                "orbit `{}`: lower breaks decrease ({} then {}); breaks must not increase up the tower",
                o.id, w[0], w[1]
            ));
            continue;
        }
        let mut upper = lower[0];
        let mut scale = 1i64;
        for i in 1..lower.len() {
            scale *= p;
            let diff = lower[i] - lower[i - 1];
            if diff % scale != 0 {
                violations.push(format!(
                    "orbit `{}`: upper break {} is not an integer ({} / {})",
                    o.id,
                    i + 1,
                    diff,
                    scale
                ));
                break;
            }
            let next = upper + diff / scale;
            if next < p * upper {
                violations.push(format!(
                    "orbit `{}`: upper break u_{} = {next} < p·u_{} = {}",
                    o.id,
                    i + 1,
                    i,
                    p * upper
                ));
            } else if next > p * upper && next % p == 0 {
                violations.push(format!(
                    "orbit `{}`: upper break u_{} = {next} exceeds p·u_{} and is divisible by p",
                    o.id,
                    i + 1,
                    i
                ));
            }
            upper = next;
        }
    }
    for (level, &genus) in t.genera.iter().enumerate() {
        if genus < 0 {
            violations.push(format!("genus of level {level} is negative"));
        }
    }
    StrictReport { violations }
}

/// Upper ramification breaks of an orbit, or `None` if they are not integral.
pub fn upper_breaks(o: &RamifiedOrbit, p: u32) -> Option<Vec<i64>> {
    let p = p as i64;
    let lower: Vec<i64> = o.jumps.iter().rev().copied().collect();
    let mut out = Vec::with_capacity(lower.len());
    let mut scale = 1i64;
    for (i, &b) in lower.iter().enumerate() {
        if i == 0 {
            out.push(b);
            continue;
        }
        scale *= p;
        let diff = b - lower[i - 1];
        if diff % scale != 0 {
            return None;
        }
        out.push(out[i - 1] + diff / scale);
    }
    Some(out)
}

/// Inverse of [`upper_breaks`]: per-level breaks `[N^(1), ..., N^(m)]` for a
/// stabilizer with upper breaks `u_1 <= ... <= u_m`.
pub fn jumps_from_upper(upper: &[i64], p: u32) -> Vec<i64> {
    let p = p as i64;
    let mut lower = Vec::with_capacity(upper.len());
    let mut scale = 1i64;
    for (i, &u) in upper.iter().enumerate() {
        if i == 0 {
            lower.push(u);
        } else {
            scale *= p;
            lower.push(lower[i - 1] + scale * (u - upper[i - 1]));
        }
    }
    lower.reverse();
    lower
}
