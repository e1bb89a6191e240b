//! Euler zigzag numbers, Euler numbers and Bernoulli numbers.
//!
//! `A_n` counts alternating permutations of `{1, ..., n}` and satisfies
//! `tan x + sec x = Σ A_n x^n / n!`. The even-index Euler numbers are
//! `E_{2n} = (-1)^n A_{2n}` and odd-index ones vanish.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};

/// Largest `n` accepted by [`zigzag_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 10;

/// `A_0, ..., A_n` by the Seidel boustrophedon.
pub fn zigzag_table(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            next[k] = &next[k - 1] + &row[m - k];
        }
        out.push(next[m].clone());
        row = next;
    }
    out
}

pub fn zigzag(n: usize) -> BigInt {
    zigzag_table(n).pop().expect("non-empty table")
}

/// Permutations of `{1, ..., n}` satisfying the two-sided alternation
/// condition `σ(i) < σ(i+1) ⇔ σ(i+1) > σ(i+2)`. Both the up-down and the
/// down-up permutations qualify, so for `n >= 2` this is `2 A_n`.
pub fn alternating_count(n: usize) -> Result<BigInt> {
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let count = (1..=n)
        .permutations(n)
        .filter(|s| s.windows(3).all(|w| (w[0] < w[1]) == (w[1] > w[2])))
        .count();
    Ok(BigInt::from(count))
}

/// `A_n` by enumeration: the two-sided count, halved for `n >= 2` since
/// complementing `σ ↦ n + 1 - σ` swaps the two directions.
pub fn zigzag_bruteforce(n: usize) -> Result<BigInt> {
    let count = alternating_count(n)?;
    Ok(if n >= 2 { count / 2 } else { count })
}

/// `B_0, ..., B_n` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`, so `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<Scalar> {
    let mut b: Vec<Scalar> = vec![Scalar::one()];
    for m in 1..=n {
        let s: Scalar = (0..m).map(|k| &binomial(m as u64 + 1, k as u64) * &b[k]).sum();
        b.push(-(s / Scalar::from_int(m as i64 + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> Scalar {
    bernoulli_table(n).pop().expect("non-empty table")
}

/// `E_n`: `(-1)^{n/2} A_n` for even `n`, zero for odd `n`.
pub fn euler(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let a = zigzag(n);
    if (n / 2) % 2 == 1 {
        -a
    } else {
        a
    }
}

/// `2^{2m} (2^{2m} - 1) B_{2m} / (2m)`, the tangent-number coefficient
/// appearing in `tanh`.
pub fn tangent_coefficient(m: usize) -> Scalar {
    let four_m = Scalar::from_int(4).pow(m as u32);
    &(&(&four_m * &(&four_m - &Scalar::one())) * &bernoulli(2 * m)) / &Scalar::from_int(2 * m as i64)
}

/// `A_{2m-1} = (-1)^{m-1} 2^{2m}(2^{2m}-1) B_{2m} / (2m)` for `m >= 1`.
pub fn check_tangent_identity(m: usize) -> bool {
    if m == 0 {
        return false;
    }
    let rhs = &Scalar::sign((m - 1) % 2 == 1) * &tangent_coefficient(m);
    Scalar::from_bigint(zigzag(2 * m - 1)) == rhs
}

/// Memo of both sequences, grown on demand.
#[derive(Clone, Debug, Default)]
pub struct SequenceCache {
    zigzag: Vec<BigInt>,
    bernoulli: Vec<Scalar>,
}

impl SequenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zigzag(&mut self, n: usize) -> &BigInt {
        if self.zigzag.len() <= n {
            self.zigzag = zigzag_table(n.max(2 * self.zigzag.len()));
        }
        &self.zigzag[n]
    }

    pub fn bernoulli(&mut self, n: usize) -> &Scalar {
        if self.bernoulli.len() <= n {
            self.bernoulli = bernoulli_table(n.max(2 * self.bernoulli.len()));
        }
        &self.bernoulli[n]
    }

    pub fn euler(&mut self, n: usize) -> BigInt {
        if n % 2 == 1 {
            return BigInt::zero();
        }
        let a = self.zigzag(n).clone();
        if (n / 2) % 2 == 1 {
            -a
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = a.len();
        (0..n)
            .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
            .collect()
    }

    fn series_div(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = a.len();
        let mut q: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            let s: Scalar = (0..k).map(|i| &q[i] * &b[k - i]).sum();
            q.push(&(&a[k] - &s) / &b[0]);
        }
        q
    }

    fn fact(n: usize) -> Scalar {
        Scalar::from_bigint(crate::scalar::factorial(n as u64))
    }

    #[test]
    fn small_values() {
        let a: Vec<i64> = vec![1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];
        assert_eq!(zigzag_table(10), a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert_eq!(bernoulli(0), Scalar::one());
        assert_eq!(bernoulli(1), Scalar::new(-1, 2));
        assert_eq!(bernoulli(2), Scalar::new(1, 6));
        assert_eq!(bernoulli(4), Scalar::new(-1, 30));
        assert_eq!(bernoulli(12), Scalar::new(-691, 2730));
        assert_eq!(euler(2), BigInt::from(-1));
        assert_eq!(euler(4), BigInt::from(5));
        assert_eq!(euler(5), BigInt::zero());
    }

    #[test]
    fn bruteforce_matches_boustrophedon() {
        for n in 0..=8 {
            assert_eq!(zigzag_bruteforce(n).unwrap(), zigzag(n), "n = {n}");
        }
        assert_eq!(zigzag_bruteforce(3).unwrap(), BigInt::from(2));
        assert_eq!(zigzag_bruteforce(2).unwrap(), BigInt::from(1));
        assert_eq!(alternating_count(4).unwrap(), BigInt::from(10));
        assert!(zigzag_bruteforce(11).is_err());
    }

    #[test]
    fn tangent_identity() {
        for m in 1..=8 {
            assert!(check_tangent_identity(m), "m = {m}");
        }
        assert!(!check_tangent_identity(0));
    }

    #[test]
    fn odd_bernoulli_vanish() {
        let b = bernoulli_table(21);
        for k in (3..=21).step_by(2) {
            assert!(b[k].is_zero());
        }
    }

    #[test]
    fn tan_plus_sec_series() {
        // (1 + sin x) / cos x from the sine and cosine series
        let n = 13;
        let mut sin = vec![Scalar::zero(); n];
        let mut cos = vec![Scalar::zero(); n];
        for k in 0..n {
            let c = &Scalar::sign((k / 2) % 2 == 1) / &fact(k);
            if k % 2 == 0 {
                cos[k] = c;
            } else {
                sin[k] = c;
            }
        }
        let mut num = sin.clone();
        num[0] = Scalar::one();
        let lhs = series_div(&num, &cos);
        let a = zigzag_table(n - 1);
        for k in 0..n {
            assert_eq!(lhs[k], &Scalar::from_bigint(a[k].clone()) / &fact(k), "x^{k}");
        }
        // tanh = sinh * sech assembled from the Bernoulli and Euler forms
        let mut sinh = vec![Scalar::zero(); n];
        let mut sech = vec![Scalar::zero(); n];
        let mut tanh = vec![Scalar::zero(); n];
        for k in 0..n {
            if k % 2 == 1 {
                sinh[k] = fact(k).recip();
                tanh[k] = &(&tangent_coefficient(k.div_ceil(2)) * &Scalar::from_int(k as i64 + 1)) / &fact(k + 1);
            } else {
                sech[k] = &Scalar::from_bigint(euler(k)) / &fact(k);
            }
        }
        assert_eq!(series_mul(&sinh, &sech), tanh);
    }

    #[test]
    fn cache_agrees() {
        let mut c = SequenceCache::new();
        assert_eq!(c.zigzag(9), &BigInt::from(7936));
        assert_eq!(c.zigzag(3), &BigInt::from(2));
        assert_eq!(c.bernoulli(6), &Scalar::new(1, 42));
        assert_eq!(c.euler(6), BigInt::from(-61));
    }
}
