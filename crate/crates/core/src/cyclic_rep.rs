//! Modular representations of the cyclic `p`-group `Z/p^v` over an
//! algebraically closed field of characteristic `p`.
//!
//! The indecomposable `k[G]`-modules are the Jordan blocks `V_j = k[σ]/(σ-1)^j`
//! for `1 <= j <= p^v`. The Grothendieck group of the category of `A`-modules
//! has two natural bases: the simple functors `S_j` and the standard classes
//! `[V_j]`. Their base change is the Cartan matrix `min(i, j)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported group order. Keeps every intermediate product inside `i64`.
pub const MAX_ORDER: usize = 3125;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The cyclic group `Z/p^v` with a fixed (implicit) generator `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroupSpec", into = "RawGroupSpec")]
pub struct GroupSpec {
    p: u32,
    v: u32,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct RawGroupSpec {
    p: u32,
    v: u32,
}

impl TryFrom<RawGroupSpec> for GroupSpec {
    type Error = Error;

    fn try_from(raw: RawGroupSpec) -> Result<Self> {
        GroupSpec::new(raw.p, raw.v)
    }
}

impl From<GroupSpec> for RawGroupSpec {
    fn from(g: GroupSpec) -> Self {
        RawGroupSpec { p: g.p, v: g.v }
    }
}

impl GroupSpec {
    pub fn new(p: u32, v: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let too_large = Error::OrderTooLarge {
            p,
            v,
            max: MAX_ORDER,
        };
        let order = (p as usize).checked_pow(v).ok_or(too_large.clone())?;
        if order > MAX_ORDER {
            return Err(too_large);
        }
        Ok(Self { p, v, order })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    /// `p^v`, the number of indecomposables.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The unique subgroup of order `p^w`.
    pub fn subgroup(&self, w: u32) -> Result<GroupSpec> {
        if w > self.v {
            return Err(Error::SubgroupOutOfRange { w, v: self.v });
        }
        GroupSpec::new(self.p, w)
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.order {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.order,
            });
        }
        Ok(())
    }
}

/// The Jordan block `V_j` of dimension `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indecomposable(usize);

impl Indecomposable {
    pub fn new(g: &GroupSpec, dim: usize) -> Result<Self> {
        g.check_index(dim)?;
        Ok(Self(dim))
    }

    pub fn dim(&self) -> usize {
        self.0
    }
}

/// A finite direct sum `⊕ V_j^{m_j}`; zero multiplicities are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    mult: BTreeMap<usize, u64>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a decomposition from a dense list `[m_1, m_2, ...]`.
    pub fn from_dense(mults: &[u64]) -> Self {
        let mut d = Self::new();
        for (i, &m) in mults.iter().enumerate() {
            d.add(i + 1, m);
        }
        d
    }

    pub fn add(&mut self, dim: usize, count: u64) {
        assert!(dim >= 1, "indecomposables have positive dimension");
        if count > 0 {
            *self.mult.entry(dim).or_insert(0) += count;
        }
    }

    pub fn multiplicity(&self, dim: usize) -> u64 {
        self.mult.get(&dim).copied().unwrap_or(0)
    }

    /// `Σ j·m_j`.
    pub fn total_dimension(&self) -> u64 {
        self.mult.iter().map(|(&j, &m)| j as u64 * m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Pairs `(j, m_j)` with `m_j > 0`, in increasing `j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.mult.iter().map(|(&j, &m)| (j, m))
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.mult.keys().next_back().copied()
    }

    /// Dense multiplicities `[m_1, ..., m_len]`.
    pub fn to_dense(&self, len: usize) -> Vec<u64> {
        (1..=len).map(|j| self.multiplicity(j)).collect()
    }

    /// The class `Σ m_j [V_j]` in the standard basis.
    pub fn standard_vector(&self, g: &GroupSpec) -> Result<K0Vector> {
        if let Some(top) = self.max_dim() {
            g.check_index(top)?;
        }
        let coords = self
            .to_dense(g.order())
            .into_iter()
            .map(|m| m as i64)
            .collect();
        K0Vector::new(g, Basis::Standard, coords)
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(j, m)| format!("V_{j}^{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Simple functors `S_j`; coordinates are `dim Hom(V_j, M)`.
    Simple,
    /// Standard classes `[V_j]`; coordinates are Krull-Schmidt multiplicities.
    Standard,
}

/// An element of the Grothendieck group of the `p`-block, `Z^{p^v}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0Vector {
    basis: Basis,
    coords: Vec<i64>,
}

impl K0Vector {
    pub fn new(g: &GroupSpec, basis: Basis, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != g.order() {
            return Err(Error::LengthMismatch {
                expected: g.order(),
                found: coords.len(),
            });
        }
        Ok(Self { basis, coords })
    }

    pub fn zero(g: &GroupSpec, basis: Basis) -> Self {
        Self {
            basis,
            coords: vec![0; g.order()],
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    fn expect_basis(&self, expected: Basis) -> Result<()> {
        if self.basis != expected {
            return Err(Error::WrongBasis {
                expected,
                found: self.basis,
            });
        }
        Ok(())
    }
}

/// The matrix whose `j`-th column expresses `[V_j]` in the simple basis:
/// entry `(i, j)` is `dim Hom(V_i, V_j) = min(i, j)`.
pub fn cartan_matrix(g: &GroupSpec) -> Vec<Vec<i64>> {
    let n = g.order();
    (1..=n)
        .map(|i| (1..=n).map(|j| i.min(j) as i64).collect())
        .collect()
}

/// Inverse of [`cartan_matrix`]: tridiagonal `(-1, 2, -1)` with a `1` in the
/// bottom-right corner.
pub fn cartan_inverse(g: &GroupSpec) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = if i + 1 == n { 1 } else { 2 };
        if i > 0 {
            m[i][i - 1] = -1;
            m[i - 1][i] = -1;
        }
    }
    m
}

/// Base-`p` digits of `j - 1`, least significant first, padded to `v` digits.
pub fn digits(j: usize, g: &GroupSpec) -> Result<Vec<u32>> {
    g.check_index(j)?;
    let p = g.p() as usize;
    let mut rest = j - 1;
    let mut out = Vec::with_capacity(g.v() as usize);
    for _ in 0..g.v() {
        out.push((rest % p) as u32);
        rest /= p;
    }
    Ok(out)
}

/// Restriction of `V_j` to the subgroup of index `p`:
/// `V_j|_H = V_l^{j'} ⊕ V_{l-1}^{p-j'}` where `j = (l-1)p + j'`.
pub fn restrict_step(g: &GroupSpec, j: usize) -> Result<Decomposition> {
    if g.v() == 0 {
        return Err(Error::TrivialGroup);
    }
    g.check_index(j)?;
    let p = g.p() as usize;
    let l = (j - 1) / p + 1;
    let j_rem = j - (l - 1) * p;
    let mut d = Decomposition::new();
    d.add(l, j_rem as u64);
    if l > 1 {
        d.add(l - 1, (p - j_rem) as u64);
    }
    Ok(d)
}

/// `Ind_H^G V_l = V_{l·p^{v-w}}` for the subgroup `H` of order `p^w`.
pub fn induce(g: &GroupSpec, w: u32, l: usize) -> Result<Indecomposable> {
    let h = g.subgroup(w)?;
    h.check_index(l)?;
    Indecomposable::new(g, l * g.order() / h.order())
}

/// Whether `d` is a direct summand of a module induced from the subgroup of
/// order `p^w`, i.e. every summand has dimension divisible by `p^{v-w}`.
pub fn is_relatively_projective(d: &Decomposition, g: &GroupSpec, w: u32) -> Result<bool> {
    let h = g.subgroup(w)?;
    let index = g.order() / h.order();
    Ok(d.iter().all(|(j, _)| j % index == 0))
}

/// Heller shift `Ω(V_j)`: the kernel of the projective cover `k[G] -> V_j`.
/// Returns `None` for the projective module `V_{p^v}`.
pub fn heller(g: &GroupSpec, j: usize) -> Result<Option<Indecomposable>> {
    g.check_index(j)?;
    if j == g.order() {
        return Ok(None);
    }
    Ok(Some(Indecomposable(g.order() - j)))
}

pub fn to_simple_basis(x: &K0Vector) -> Result<K0Vector> {
    x.expect_basis(Basis::Standard)?;
    let c = &x.coords;
    let n = c.len();
    // y_i = Σ_{j<=i} j·x_j + i·Σ_{j>i} x_j
    let mut tail: i64 = c.iter().sum();
    let mut weighted = 0i64;
    let mut out = Vec::with_capacity(n);
    for (idx, &xj) in c.iter().enumerate() {
        let i = (idx + 1) as i64;
        weighted += i * xj;
        tail -= xj;
        out.push(weighted + i * tail);
    }
    Ok(K0Vector {
        basis: Basis::Simple,
        coords: out,
    })
}

pub fn from_simple_basis(x: &K0Vector) -> Result<K0Vector> {
    x.expect_basis(Basis::Simple)?;
    let c = &x.coords;
    let n = c.len();
    let out = (0..n)
        .map(|i| {
            let prev = if i > 0 { c[i - 1] } else { 0 };
            if i + 1 == n {
                c[i] - prev
            } else {
                2 * c[i] - prev - c[i + 1]
            }
        })
        .collect();
    Ok(K0Vector {
        basis: Basis::Standard,
        coords: out,
    })
}

/// Reads off the Krull-Schmidt decomposition of a class. Classes of actual
/// modules are determined up to isomorphism by their image in `K_0`.
pub fn module_from_k0(x: &K0Vector) -> Result<Decomposition> {
    let standard = match x.basis {
        Basis::Standard => x.clone(),
        Basis::Simple => from_simple_basis(x)?,
    };
    let mut d = Decomposition::new();
    for (i, &m) in standard.coords.iter().enumerate() {
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

/// `k[G]` itself: one Jordan block of full size.
pub fn regular_decomposition(g: &GroupSpec) -> Decomposition {
    let mut d = Decomposition::new();
    d.add(g.order(), 1);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp;

    fn g(p: u32, v: u32) -> GroupSpec {
        GroupSpec::new(p, v).unwrap()
    }

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        let m = b[0].len();
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rejects_bad_groups() {
        assert_eq!(GroupSpec::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(GroupSpec::new(1, 1), Err(Error::NotPrime(1)));
        assert!(matches!(
            GroupSpec::new(5, 6),
            Err(Error::OrderTooLarge { .. })
        ));
        assert_eq!(g(5, 5).order(), 3125);
        assert_eq!(g(7, 0).order(), 1);
    }

    #[test]
    fn cartan_small_cases() {
        assert_eq!(
            cartan_matrix(&g(3, 1)),
            vec![vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 3]]
        );
        assert_eq!(cartan_matrix(&g(2, 0)), vec![vec![1]]);
        assert_eq!(cartan_matrix(&g(2, 1)), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(
            cartan_inverse(&g(3, 1)),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]
        );
        assert_eq!(cartan_inverse(&g(3, 0)), vec![vec![1]]);
    }

    #[test]
    fn cartan_product_is_identity() {
        for (p, v) in [
            (2, 0),
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (2, 3),
            (3, 2),
            (5, 2),
        ] {
            let g = g(p, v);
            let prod = mat_mul(&cartan_matrix(&g), &cartan_inverse(&g));
            for (i, row) in prod.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    assert_eq!(x, (i == j) as i64, "p={p} v={v} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn digit_examples() {
        let g = g(3, 2);
        assert_eq!(digits(1, &g).unwrap(), vec![0, 0]);
        assert_eq!(digits(9, &g).unwrap(), vec![2, 2]);
        assert_eq!(digits(4, &g).unwrap(), vec![0, 1]);
        assert!(matches!(digits(0, &g), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(digits(10, &g), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn restriction_examples() {
        let z4 = g(2, 2);
        assert_eq!(
            restrict_step(&z4, 3).unwrap(),
            Decomposition::from_dense(&[1, 1])
        );
        assert_eq!(
            restrict_step(&z4, 4).unwrap(),
            Decomposition::from_dense(&[0, 2])
        );
        assert_eq!(
            restrict_step(&g(3, 1), 1).unwrap(),
            Decomposition::from_dense(&[1])
        );
        assert_eq!(restrict_step(&g(3, 0), 1), Err(Error::TrivialGroup));
    }

    /// Restriction checked against the Jordan type of `(σ-1)^p` acting on `V_j`.
    #[test]
    fn restriction_matches_jordan_type_of_power() {
        for (p, v) in [(2, 2), (3, 2), (2, 3), (5, 1)] {
            let g = g(p, v);
            for j in 1..=g.order() {
                let n = fp::nilpotent_block(j, p);
                let np = fp::mat_pow(&n, p as usize, p);
                let expected = fp::jordan_type_of_nilpotent(&np, p);
                assert_eq!(restrict_step(&g, j).unwrap(), expected, "p={p} v={v} j={j}");
            }
        }
    }

    #[test]
    fn induction_examples() {
        let z4 = g(2, 2);
        assert_eq!(induce(&z4, 1, 2).unwrap().dim(), 4);
        assert_eq!(induce(&z4, 2, 3).unwrap().dim(), 3);
        assert_eq!(induce(&z4, 0, 1).unwrap().dim(), 4);
        assert!(induce(&z4, 1, 3).is_err());
        assert!(induce(&z4, 3, 1).is_err());
    }

    #[test]
    fn relative_projectivity_examples() {
        let z4 = g(2, 2);
        assert!(
            is_relatively_projective(&Decomposition::from_dense(&[0, 0, 0, 2]), &z4, 1).unwrap()
        );
        assert!(!is_relatively_projective(&Decomposition::from_dense(&[1]), &z4, 1).unwrap());
        assert!(
            is_relatively_projective(&Decomposition::from_dense(&[0, 3, 0, 1]), &z4, 1).unwrap()
        );
        for w in 0..=2 {
            assert!(is_relatively_projective(&regular_decomposition(&z4), &z4, w).unwrap());
        }
        // everything is G-projective relative to G itself
        assert!(is_relatively_projective(&Decomposition::from_dense(&[5, 1, 2]), &z4, 2).unwrap());
    }

    /// `Ω(V_j)` is `(σ-1)^j k[G]`; its Jordan type is read from ranks of the
    /// shift operator restricted to that image.
    #[test]
    fn heller_matches_kernel_of_projective_cover() {
        for (p, v) in [(2, 2), (3, 1), (3, 2), (2, 3)] {
            let g = g(p, v);
            let n = g.order();
            let shift = fp::nilpotent_block(n, p);
            for j in 1..=n {
                let image = fp::mat_pow(&shift, j, p);
                let dim = fp::rank(&image, p);
                assert_eq!(dim, n - j);
                let kernel_type = fp::jordan_type_on_image(&shift, &image, p);
                match heller(&g, j).unwrap() {
                    None => assert!(kernel_type.is_empty()),
                    Some(omega) => {
                        assert_eq!(
                            kernel_type,
                            Decomposition::from_dense(&{
                                let mut d = vec![0; omega.dim()];
                                d[omega.dim() - 1] = 1;
                                d
                            })
                        );
                        let back = heller(&g, omega.dim()).unwrap().unwrap();
                        assert_eq!(back.dim(), j);
                    }
                }
            }
        }
        assert_eq!(heller(&g(2, 2), 1).unwrap().unwrap().dim(), 3);
    }

    #[test]
    fn basis_change_examples() {
        let g3 = g(3, 1);
        let e1 = K0Vector::new(&g3, Basis::Standard, vec![1, 0, 0]).unwrap();
        assert_eq!(to_simple_basis(&e1).unwrap().coords(), &[1, 1, 1]);
        let e3 = K0Vector::new(&g3, Basis::Standard, vec![0, 0, 1]).unwrap();
        assert_eq!(to_simple_basis(&e3).unwrap().coords(), &[1, 2, 3]);
        let zero = K0Vector::zero(&g3, Basis::Standard);
        assert_eq!(to_simple_basis(&zero).unwrap().coords(), &[0, 0, 0]);

        let z4 = g(2, 2);
        let s = K0Vector::new(&z4, Basis::Simple, vec![2, 4, 5, 6]).unwrap();
        assert_eq!(from_simple_basis(&s).unwrap().coords(), &[0, 1, 0, 1]);
        let ones = K0Vector::new(&z4, Basis::Simple, vec![1; 4]).unwrap();
        assert_eq!(from_simple_basis(&ones).unwrap().coords(), &[1, 0, 0, 0]);

        assert!(matches!(to_simple_basis(&s), Err(Error::WrongBasis { .. })));
        assert!(matches!(
            from_simple_basis(&e1),
            Err(Error::WrongBasis { .. })
        ));
        assert!(matches!(
            K0Vector::new(&z4, Basis::Simple, vec![1, 2]),
            Err(Error::LengthMismatch {
                expected: 4,
                found: 2
            })
        ));
    }

    #[test]
    fn module_from_k0_examples() {
        let z4 = g(2, 2);
        let s = K0Vector::new(&z4, Basis::Simple, vec![2, 4, 5, 6]).unwrap();
        assert_eq!(
            module_from_k0(&s).unwrap(),
            Decomposition::from_dense(&[0, 1, 0, 1])
        );
        let top = K0Vector::new(&z4, Basis::Simple, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(
            module_from_k0(&top),
            Err(Error::NegativeMultiplicity {
                index: 3,
                value: -1
            })
        );
        assert!(module_from_k0(&K0Vector::zero(&z4, Basis::Simple))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn regular_module() {
        assert_eq!(
            regular_decomposition(&g(2, 2)),
            Decomposition::from_dense(&[0, 0, 0, 1])
        );
        assert_eq!(
            regular_decomposition(&g(2, 0)),
            Decomposition::from_dense(&[1])
        );
        assert_eq!(regular_decomposition(&g(3, 2)).total_dimension(), 9);
    }
}
