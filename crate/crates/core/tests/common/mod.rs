//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's arithmetic; every value is recomputed from definitions.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn product(range: impl Iterator<Item = i64>) -> BigInt {
    range.fold(BigInt::one(), |acc, m| acc * m)
}

pub fn fact(n: i64) -> BigInt {
    product(1..=n)
}

/// n! / (k! (n - k)!) with zero outside 0 <= k <= n.
pub fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    fact(n) / (fact(k) * fact(n - k))
}

pub fn falling(x: i64, n: i64) -> BigInt {
    product((0..n).map(|m| x - m))
}

pub fn rising(x: i64, n: i64) -> BigInt {
    product((0..n).map(|m| x + m))
}

/// Sum of `(a)_k (b)_k / ((c)_k k!) z^k` with every Pochhammer recomputed.
pub fn hyp2f1(a: i64, b: i64, c: i64, z: &BigRational) -> BigRational {
    let stop = [a, b]
        .into_iter()
        .filter(|p| *p <= 0)
        .map(|p| -p)
        .min()
        .unwrap();
    (0..=stop)
        .map(|k| {
            let num = rising(a, k) * rising(b, k);
            let den = rising(c, k) * fact(k);
            BigRational::new(num, den) * num_traits::pow(z.clone(), k as usize)
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

pub fn lhs(n: i64, j: i64) -> BigRational {
    let z = BigRational::from_integer(int(-1));
    let pre = fact(j) * (BigInt::one() << n as usize) * choose(n + j - 1, j);
    BigRational::from_integer(pre) * hyp2f1(-j, -2 * j, -n - j + 1, &z)
}

pub fn rhs(n: i64, j: i64) -> BigInt {
    (0..=n)
        .map(|l| choose(n, l) * product((0..j).map(|i| 2 * (2 * i + 1 + l))))
        .sum()
}

/// Number of set partitions of an `n`-set into exactly `blocks` blocks.
pub fn count_partitions(n: usize, blocks: usize) -> u64 {
    fn go(pos: usize, n: usize, used: usize, blocks: usize) -> u64 {
        if pos == n {
            return u64::from(used == blocks);
        }
        let mut total = 0;
        for label in 0..=used {
            let next = if label == used { used + 1 } else { used };
            if next <= blocks {
                total += go(pos + 1, n, next, blocks);
            }
        }
        total
    }
    go(0, n, 0, blocks)
}

pub fn bell(n: usize) -> u64 {
    (0..=n).map(|b| count_partitions(n, b)).sum()
}
