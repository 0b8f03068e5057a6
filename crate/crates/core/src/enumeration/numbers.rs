//! Combinatorial number tables by their standard recurrences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::binomial;

/// Ordered Bell numbers: `F(n) = sum_{k=1}^n C(n,k) F(n-k)`, `F(0) = 1`.
pub fn fubini(n: usize) -> u64 {
    let mut f = vec![1u64; n + 1];
    for m in 1..=n {
        f[m] = (1..=m)
            .map(|k| u64::try_from(binomial(m, k)).unwrap() * f[m - k])
            .sum();
    }
    f[n]
}

/// Stirling numbers of the second kind, `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one();
    for m in 1..=n {
        for j in (1..=m).rev() {
            row[j] = &row[j] * BigInt::from(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Unsigned Lah numbers `L(n,k) = n!/k! C(n-1,k-1)`, from
/// `L(n+1,k) = (n+k) L(n,k) + L(n,k-1)`.
pub fn lah(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one();
    for m in 0..n {
        for j in (1..=m + 1).rev() {
            let keep = if j <= m { &row[j] * BigInt::from(m + j) } else { BigInt::zero() };
            row[j] = keep + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row.get(k).cloned().unwrap_or_default()
}

/// `C(n,k) k^{n-k}`, the coefficients of the basic sequence of the Lambert operator.
pub fn idempotent_coeff(n: usize, k: usize) -> BigInt {
    binomial(n, k) * num_traits::pow(BigInt::from(k), n - k)
}
