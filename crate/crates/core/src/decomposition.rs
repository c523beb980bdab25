//! Krull-Schmidt decomposition of `H^0(X, L_X(D))` as a `k[Z/p^v]`-module.
//!
//! For each `1 <= j <= p^v` the graded piece `gr_0 L(V_j)` is an invertible
//! sheaf on `Y`, represented by the divisor obtained from `D` by the twisted
//! pushforwards `π_v^{α_0(j)} ∘ ... ∘ π_1^{α_{v-1}(j)}`, where `α_h(j)` are
//! the base-`p` digits of `j - 1`. Four routes turn those degrees into
//! multiplicities; they must agree exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover_tower::{
    divisor_degree, pushforward_alpha, CoverTower, InvariantDivisor, LevelDivisor,
};
use crate::cyclic_rep::{
    self, digits, is_relatively_projective, Basis, Decomposition, GroupSpec, K0Vector,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Consecutive differences of the `gr_0` degrees.
    ClosedForm,
    /// Second differences of the partial sums `a_j`.
    SecondDifference,
    /// `gr_0` divisors by recursion on the tower, then the inverse Cartan matrix.
    Recursive,
    /// Euler characteristic in the simple basis, then the inverse Cartan matrix.
    SimpleBasis,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ClosedForm,
        Method::SecondDifference,
        Method::Recursive,
        Method::SimpleBasis,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::SecondDifference => "second-diff",
            Method::Recursive => "recursive",
            Method::SimpleBasis => "simple-basis",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub method: Method,
    /// `deg gr_0 L(V_j)` on `Y`, for `j = 1..=p^v`.
    pub degrees: Vec<i64>,
    /// Dense `m_1, ..., m_{p^v}`. Negative entries mean the ramification data
    /// cannot come from an actual curve.
    pub multiplicities: Vec<i64>,
    /// `deg D + 1 - g_X`.
    pub dim_h0: i64,
    pub genus_top: i64,
    pub divisor_degree: i64,
}

impl DecompositionReport {
    pub fn is_realizable(&self) -> bool {
        self.multiplicities.iter().all(|&m| m >= 0)
    }

    /// `Σ j·m_j`.
    pub fn total_dimension(&self) -> i64 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as i64 + 1) * m)
            .sum()
    }

    pub fn decomposition(&self) -> Result<Decomposition> {
        let mut d = Decomposition::new();
        for (i, &m) in self.multiplicities.iter().enumerate() {
            if m < 0 {
                return Err(Error::NegativeMultiplicity {
                    index: i + 1,
                    value: m,
                });
            }
            d.add(i + 1, m as u64);
        }
        Ok(d)
    }

    /// Whether the `gr_0` degrees are non-increasing in `j`.
    pub fn degrees_monotone(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] >= w[1])
    }
}

/// The `gr_0` divisor on `Y` attached to `V_j`, via the digit operators.
/// Level `n` uses the digit `α_{v-n}(j)`.
pub fn gr0_divisor(d: &InvariantDivisor, t: &CoverTower, j: usize) -> Result<LevelDivisor> {
    let g = t.group();
    let alphas = digits(j, g)?;
    let v = g.v() as usize;
    let mut current = d.at_level_zero();
    for n in 1..=v {
        current = pushforward_alpha(&current, t, alphas[v - n])?;
    }
    Ok(current)
}

/// `deg(π_v^{α_0(j)} ... π_1^{α_{v-1}(j)} D)`.
pub fn level_degrees(d: &InvariantDivisor, t: &CoverTower, j: usize) -> Result<i64> {
    Ok(divisor_degree(&gr0_divisor(d, t, j)?, t))
}

/// All `gr_0` degrees, `j = 1..=p^v`.
pub fn gr0_degrees(d: &InvariantDivisor, t: &CoverTower) -> Vec<i64> {
    (1..=t.group().order())
        .map(|j| level_degrees(d, t, j).expect("index in range"))
        .collect()
}

/// `2g_X - 2`; `H^1` vanishes strictly above it.
pub fn degree_bound(t: &CoverTower) -> i64 {
    2 * t.top_genus() - 2
}

fn check_degree(d: &InvariantDivisor, t: &CoverTower) -> Result<i64> {
    let degree = d.degree(t);
    let bound = degree_bound(t);
    if degree <= bound {
        return Err(Error::DegreeTooSmall { degree, bound });
    }
    Ok(degree)
}

fn report(
    method: Method,
    t: &CoverTower,
    degree: i64,
    degrees: Vec<i64>,
    multiplicities: Vec<i64>,
) -> DecompositionReport {
    DecompositionReport {
        method,
        degrees,
        multiplicities,
        dim_h0: degree + 1 - t.top_genus(),
        genus_top: t.top_genus(),
        divisor_degree: degree,
    }
}

pub fn decompose_closed_form(d: &InvariantDivisor, t: &CoverTower) -> Result<DecompositionReport> {
    let degree = check_degree(d, t)?;
    let degrees = gr0_degrees(d, t);
    let n = degrees.len();
    let mut mult: Vec<i64> = degrees.windows(2).map(|w| w[0] - w[1]).collect();
    mult.push(1 - t.base_genus() + degrees[n - 1]);
    Ok(report(Method::ClosedForm, t, degree, degrees, mult))
}

pub fn decompose_second_difference(
    d: &InvariantDivisor,
    t: &CoverTower,
) -> Result<DecompositionReport> {
    let degree = check_degree(d, t)?;
    let degrees = gr0_degrees(d, t);
    let n = degrees.len();
    // a_j = j(1 - g_Y) + Σ_{i<=j} deg_i
    let a: Vec<i64> = degrees
        .iter()
        .scan(0i64, |acc, &deg| {
            *acc += deg + 1 - t.base_genus();
            Some(*acc)
        })
        .collect();
    let mult = (0..n)
        .map(|i| match i {
            _ if n == 1 => a[0],
            0 => 2 * a[0] - a[1],
            _ if i == n - 1 => a[i] - a[i - 1],
            _ => -a[i - 1] + 2 * a[i] - a[i + 1],
        })
        .collect();
    Ok(report(Method::SecondDifference, t, degree, degrees, mult))
}

/// One step of the order-`p` formula: on the cover `π_n`,
/// `gr_0 L_X(D)(V_j) = L(δ + Σ [(n_P - (j-1) N_P) / p] π_* P)` for `1 <= j <= p`.
fn order_p_step(d: &LevelDivisor, t: &CoverTower, j: usize) -> LevelDivisor {
    let n = d.level + 1;
    let p = t.group().p() as i64;
    let shift = j as i64 - 1;
    let coeffs = t
        .orbits()
        .iter()
        .zip(&d.coeffs)
        .map(|(o, &c)| match o.jump(n) {
            Some(jump) => (c - shift * jump).div_euclid(p),
            None => c,
        })
        .collect();
    LevelDivisor {
        level: n,
        base_degree: d.base_degree,
        coeffs,
    }
}

/// `gr_0^G L(V_j) = gr_0^P (gr_0^H L(V_l)) (V_{j'})` with `j = (l-1)p + j'`,
/// `H` the subgroup of index `p`, applied down to the trivial group.
fn recursive_gr0(d: &LevelDivisor, t: &CoverTower, top: u32, j: usize) -> LevelDivisor {
    if top == 0 {
        debug_assert_eq!(j, 1);
        return d.clone();
    }
    let p = t.group().p() as usize;
    let l = (j - 1) / p + 1;
    let j_rem = j - (l - 1) * p;
    let inner = recursive_gr0(d, t, top - 1, l);
    order_p_step(&inner, t, j_rem)
}

/// The `gr_0` divisors computed by recursion on the tower rather than digits.
pub fn recursive_gr0_divisor(
    d: &InvariantDivisor,
    t: &CoverTower,
    j: usize,
) -> Result<LevelDivisor> {
    t.group().check_index(j)?;
    Ok(recursive_gr0(&d.at_level_zero(), t, t.group().v(), j))
}

pub fn decompose_recursive(d: &InvariantDivisor, t: &CoverTower) -> Result<DecompositionReport> {
    let degree = check_degree(d, t)?;
    let g = t.group();
    let degrees: Vec<i64> = (1..=g.order())
        .map(|j| {
            let gr0 = recursive_gr0(&d.at_level_zero(), t, g.v(), j);
            divisor_degree(&gr0, t)
        })
        .collect();
    let simple = partial_euler_sums(&degrees, t.base_genus());
    let standard = cyclic_rep::from_simple_basis(&K0Vector::new(g, Basis::Simple, simple)?)?;
    Ok(report(
        Method::Recursive,
        t,
        degree,
        degrees,
        standard.into_coords(),
    ))
}

fn partial_euler_sums(degrees: &[i64], base_genus: i64) -> Vec<i64> {
    degrees
        .iter()
        .scan(0i64, |acc, &deg| {
            *acc += deg + 1 - base_genus;
            Some(*acc)
        })
        .collect()
}

/// `χ(A, L)` in the simple basis: coordinate `j` is `Σ_{i<=j} χ(gr_0 L(V_i))`.
/// Valid for every degree; it equals `[H^0]` once `H^1` vanishes.
pub fn euler_characteristic(d: &InvariantDivisor, t: &CoverTower) -> K0Vector {
    let simple = partial_euler_sums(&gr0_degrees(d, t), t.base_genus());
    K0Vector::new(t.group(), Basis::Simple, simple).expect("one coordinate per indecomposable")
}

pub fn decompose_simple_basis(d: &InvariantDivisor, t: &CoverTower) -> Result<DecompositionReport> {
    let degree = check_degree(d, t)?;
    let degrees = gr0_degrees(d, t);
    let euler = euler_characteristic(d, t);
    let standard = cyclic_rep::from_simple_basis(&euler)?;
    Ok(report(
        Method::SimpleBasis,
        t,
        degree,
        degrees,
        standard.into_coords(),
    ))
}

pub fn decompose(
    method: Method,
    d: &InvariantDivisor,
    t: &CoverTower,
) -> Result<DecompositionReport> {
    match method {
        Method::ClosedForm => decompose_closed_form(d, t),
        Method::SecondDifference => decompose_second_difference(d, t),
        Method::Recursive => decompose_recursive(d, t),
        Method::SimpleBasis => decompose_simple_basis(d, t),
    }
}

/// `H^0(X, π^*M)` for `M` of degree `deg_m` on `Y`.
pub fn decompose_pullback(deg_m: i64, t: &CoverTower) -> Result<DecompositionReport> {
    decompose_closed_form(&InvariantDivisor::pullback(t, deg_m)?, t)
}

/// Smallest `deg M` with `p^v·deg M > 2g_X - 2`.
pub fn min_pullback_degree(t: &CoverTower) -> i64 {
    degree_bound(t).div_euclid(t.group().order() as i64) + 1
}

/// Exponent of the subgroup generated by all stabilizers.
pub fn ramification_subgroup_exponent(t: &CoverTower) -> u32 {
    t.ramification_exponent()
}

/// Divisor families fed to [`noether_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoetherSampling {
    pub seed: u64,
    /// Pullbacks of degree `min_pullback_degree .. + pullbacks`.
    pub pullbacks: usize,
    /// Random divisors supported on the ramification locus (plus a pullback
    /// part just large enough to clear the degree bound).
    pub ramified: usize,
}

impl Default for NoetherSampling {
    fn default() -> Self {
        Self {
            seed: 0,
            pullbacks: 10,
            ramified: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoetherSample {
    pub base_degree: i64,
    pub coeffs: Vec<i64>,
    pub multiplicities: Vec<i64>,
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoetherWitness {
    /// Degree of `M` in the pullback `π^*M`.
    pub base_degree: i64,
    pub j: usize,
    pub multiplicity: i64,
    /// `-Σ [-N_P/p]` over the orbits ramified in `π_{w+1}`, one term per
    /// point of `Y`; only set when the ramification exponent is `w + 1`.
    pub expected: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoetherReport {
    pub w: u32,
    pub ramification_exponent: u32,
    /// `ram π ⊂ H`.
    pub containment: bool,
    /// Every sampled `H^0` is relatively `H`-projective.
    pub all_projective: bool,
    pub samples: Vec<NoetherSample>,
    pub witness: Option<NoetherWitness>,
}

impl NoetherReport {
    /// Containment and projectivity agree, and a non-containment case has a
    /// witness whose multiplicity matches the closed-form prediction.
    pub fn consistent(&self) -> bool {
        if self.containment != self.all_projective {
            return false;
        }
        match (&self.witness, self.containment) {
            (None, true) => true,
            (Some(w), false) => {
                w.multiplicity > 0 && w.expected.is_none_or(|e| e == w.multiplicity)
            }
            _ => false,
        }
    }
}

/// Predicted `m_{p^{v-w-1}}` for a pullback when the ramification exponent is
/// exactly `w + 1`.
pub fn noether_witness_value(t: &CoverTower, w: u32) -> Option<i64> {
    if t.ramification_exponent() != w + 1 {
        return None;
    }
    let p = t.group().p() as i64;
    Some(
        t.orbits()
            .iter()
            .filter_map(|o| o.jump(w + 1))
            .map(|jump| -(-jump).div_euclid(p))
            .sum(),
    )
}

/// Relative projectivity criterion with respect to the subgroup of order `p^w`.
pub fn noether_check(t: &CoverTower, w: u32, sampling: &NoetherSampling) -> Result<NoetherReport> {
    let g: &GroupSpec = t.group();
    g.subgroup(w)?;
    let exponent = t.ramification_exponent();
    let containment = exponent <= w;
    let index = g.order() / g.subgroup(w)?.order();

    let mut divisors = Vec::new();
    let start = min_pullback_degree(t);
    for b in start..start + sampling.pullbacks as i64 {
        divisors.push(InvariantDivisor::pullback(t, b)?);
    }
    if !t.orbits().is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let top = 3 * t.max_jump();
        let order = g.order() as i64;
        for _ in 0..sampling.ramified {
            let coeffs: Vec<i64> = t.orbits().iter().map(|_| rng.gen_range(0..=top)).collect();
            let ramified_part = InvariantDivisor::from_coeffs(t, 0, coeffs.clone())?.degree(t);
            let base =
                (degree_bound(t) - ramified_part).div_euclid(order) + 1 + rng.gen_range(0..=3);
            divisors.push(InvariantDivisor::from_coeffs(t, base, coeffs)?);
        }
    }

    let mut samples = Vec::with_capacity(divisors.len());
    for d in &divisors {
        let r = decompose_closed_form(d, t)?;
        let projective = match r.decomposition() {
            Ok(dec) => is_relatively_projective(&dec, g, w)?,
            Err(_) => false,
        };
        samples.push(NoetherSample {
            base_degree: d.base_degree(),
            coeffs: d.coeffs().to_vec(),
            multiplicities: r.multiplicities,
            projective,
        });
    }
    let all_projective = samples.iter().all(|s| s.projective);

    let witness = if containment {
        None
    } else {
        let expected = noether_witness_value(t, w);
        let preferred = index / g.p() as usize;
        samples
            .iter()
            .filter(|s| s.coeffs.iter().all(|&c| c == 0))
            .find_map(|s| {
                let qualifies = |j: usize| !j.is_multiple_of(index) && s.multiplicities[j - 1] > 0;
                let j = if expected.is_some() && qualifies(preferred) {
                    Some(preferred)
                } else {
                    (1..=g.order()).find(|&j| qualifies(j))
                }?;
                Some(NoetherWitness {
                    base_degree: s.base_degree,
                    j,
                    multiplicity: s.multiplicities[j - 1],
                    expected: expected.filter(|_| j == preferred),
                })
            })
    };

    Ok(NoetherReport {
        w,
        ramification_exponent: exponent,
        containment,
        all_projective,
        samples,
        witness,
    })
}
