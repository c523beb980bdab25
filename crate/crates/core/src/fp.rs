//! Dense matrices over the prime field `F_p`, with entries stored as reduced
//! `u32` residues. Sizes here stay small (a few dozen rows), so everything is
//! plain Gaussian elimination.

use crate::cyclic_rep::Decomposition;

pub type Matrix = Vec<Vec<u32>>;

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u32).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u32) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let s: u64 = (0..inner).map(|k| row[k] as u64 * b[k][j] as u64).sum();
                    (s % p as u64) as u32
                })
                .collect()
        })
        .collect()
}

pub fn mat_pow(a: &Matrix, exp: usize, p: u32) -> Matrix {
    let mut acc = identity(a.len());
    for _ in 0..exp {
        acc = mat_mul(&acc, a, p);
    }
    acc
}

/// `a - I`.
pub fn sub_identity(a: &Matrix, p: u32) -> Matrix {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    out
}

pub fn is_zero(a: &Matrix) -> bool {
    a.iter().all(|row| row.iter().all(|&x| x == 0))
}

pub fn rank(a: &Matrix, p: u32) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + p - mul_mod(factor, y, p)) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Jordan block sizes from the rank sequence `r_0 = dim, r_1, r_2, ...` of
/// powers of a nilpotent operator: `#blocks of size s = r_{s-1} - 2 r_s + r_{s+1}`.
pub fn jordan_type_from_ranks(ranks: &[usize]) -> Decomposition {
    let at = |k: usize| ranks.get(k).copied().unwrap_or(0) as i64;
    let mut d = Decomposition::new();
    for s in 1..ranks.len() {
        let count = at(s - 1) - 2 * at(s) + at(s + 1);
        assert!(
            count >= 0,
            "rank sequence is not that of a nilpotent operator"
        );
        d.add(s, count as u64);
    }
    d
}

/// Ranks `rank(N^k)` for `k = 0, 1, ...` until they reach zero.
pub fn nilpotent_ranks(n: &Matrix, p: u32) -> Vec<usize> {
    let mut ranks = vec![n.len()];
    let mut power = identity(n.len());
    while *ranks.last().unwrap() > 0 {
        power = mat_mul(&power, n, p);
        let r = rank(&power, p);
        assert!(r < *ranks.last().unwrap(), "operator is not nilpotent");
        ranks.push(r);
    }
    ranks
}

pub fn jordan_type_of_nilpotent(n: &Matrix, p: u32) -> Decomposition {
    jordan_type_from_ranks(&nilpotent_ranks(n, p))
}

/// Jordan type of `n` restricted to the `n`-stable column space of `span`.
pub fn jordan_type_on_image(n: &Matrix, span: &Matrix, p: u32) -> Decomposition {
    let mut ranks = vec![rank(span, p)];
    let mut current = span.clone();
    while *ranks.last().unwrap() > 0 {
        current = mat_mul(n, &current, p);
        ranks.push(rank(&current, p));
    }
    jordan_type_from_ranks(&ranks)
}

/// The nilpotent Jordan block of size `n` (ones on the subdiagonal).
pub fn nilpotent_block(n: usize, p: u32) -> Matrix {
    let mut m = vec![vec![0u32; n]; n];
    for i in 1..n {
        m[i][i - 1] = 1 % p;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&identity(4), 3), 4);
        assert_eq!(rank(&vec![vec![1, 1], vec![1, 1]], 2), 1);
        // rank drops mod 2 but not mod 3
        let m = vec![vec![1, 1], vec![1, 3]];
        assert_eq!(rank(&m, 2), 1);
        assert_eq!(rank(&m, 3), 2);
        assert_eq!(rank(&vec![vec![0, 0, 0]], 5), 0);
    }

    #[test]
    fn jordan_type_of_blocks() {
        let n = nilpotent_block(5, 3);
        assert_eq!(nilpotent_ranks(&n, 3), vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(
            jordan_type_of_nilpotent(&n, 3),
            Decomposition::from_dense(&[0, 0, 0, 0, 1])
        );
        assert_eq!(
            jordan_type_from_ranks(&[4, 1, 0]),
            Decomposition::from_dense(&[2, 1])
        );
        assert_eq!(
            jordan_type_from_ranks(&[5, 3, 1, 0]),
            Decomposition::from_dense(&[0, 1, 1])
        );
    }
}
