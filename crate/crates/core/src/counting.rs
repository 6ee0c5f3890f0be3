//! Partition counts and the leaf-adding count.
//!
//! Each call fills its own table, so concurrent callers never share state.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn overflow() -> Error {
    Error::Overflow("partition count exceeds u128")
}

/// Table t[i][j] = A(i, j) for i <= m, j <= k.
fn a_table(m: usize, k: usize) -> Result<Vec<Vec<u128>>> {
    let mut t = vec![vec![0u128; k + 1]; m + 1];
    for row in t.iter_mut().take(1) {
        row.iter_mut().for_each(|x| *x = 1);
    }
    for i in 1..=m {
        for j in 1..=k {
            let keep = t[i][j - 1];
            let with = if j <= i { t[i - j][j] } else { 0 };
            t[i][j] = keep.checked_add(with).ok_or_else(overflow)?;
        }
    }
    Ok(t)
}

/// Partitions of m into parts of size at most k, by
/// A(m, k) = A(m, k-1) + A(m-k, k), A(0, k) = 1, A(m, 0) = 0.
/// A k above m counts as k = m.
pub fn partition_a(m: usize, k: usize) -> Result<u128> {
    let k = k.min(m);
    Ok(a_table(m, k)?[m][k])
}

/// Table t[i][j] = n(i, j): partitions of i into exactly j parts.
fn n_table(m: usize) -> Result<Vec<Vec<u128>>> {
    let mut t = vec![vec![0u128; m + 1]; m + 1];
    for i in 1..=m {
        for j in 1..=i {
            // n(i, j) = [i == j] + sum_{r=1}^{min(j, i-j)} n(i-j, r)
            let acc = t[i - j][1..=j.min(i - j)]
                .iter()
                .try_fold(u128::from(i == j), |acc, &x| acc.checked_add(x));
            t[i][j] = acc.ok_or_else(overflow)?;
        }
    }
    Ok(t)
}

/// Partitions of m into exactly k nonzero parts; needs 1 <= k <= m.
pub fn partition_n(m: usize, k: usize) -> Result<u128> {
    if k == 0 || k > m {
        return Err(Error::CountRange(format!(
            "n(m, k) needs 1 <= k <= m, got m={m}, k={k}"
        )));
    }
    Ok(n_table(m)?[m][k])
}

/// One k of the leaf-adding sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ALeafTerm {
    pub k: usize,
    pub n_mk: u128,
    /// A^k_p * n(m, k) * k!, zero when k > p.
    pub falling: BigUint,
    /// n(m, k) * p!
    pub simplified: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ALeafReport {
    pub p: usize,
    pub m: usize,
    pub falling: BigUint,
    pub simplified: BigUint,
    /// The two sums differ.
    pub diverges: bool,
    /// Some k exceeds p, so A^k_p = 0 for that term.
    pub k_exceeds_p: bool,
    pub terms: Vec<ALeafTerm>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// p (p-1) ... (p-k+1), zero when k > p.
fn falling_factorial(p: usize, k: usize) -> BigUint {
    if k > p {
        return BigUint::zero();
    }
    (p - k + 1..=p).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of ways to add m leaves to a p-vertex graph, in both the
/// falling-factorial form sum A^k_p n(m,k) k! and the simplified form
/// sum n(m,k) p!.
pub fn a_leaf_count(p: usize, m: usize) -> Result<ALeafReport> {
    if p == 0 || m == 0 {
        return Err(Error::CountRange(format!(
            "A_leaf needs p >= 1 and m >= 1, got p={p}, m={m}"
        )));
    }
    let table = n_table(m)?;
    let p_fact = factorial(p);
    let mut terms = Vec::with_capacity(m);
    let (mut falling, mut simplified) = (BigUint::zero(), BigUint::zero());
    for (k, &n_mk) in table[m].iter().enumerate().skip(1) {
        let f = falling_factorial(p, k) * n_mk * factorial(k);
        let s = &p_fact * n_mk;
        falling += &f;
        simplified += &s;
        terms.push(ALeafTerm {
            k,
            n_mk,
            falling: f,
            simplified: s,
        });
    }
    Ok(ALeafReport {
        p,
        m,
        diverges: falling != simplified,
        k_exceeds_p: m > p,
        falling,
        simplified,
        terms,
    })
}
