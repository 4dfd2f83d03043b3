//! Exact integer ground truth: p(n) by the pentagonal-number recurrence,
//! p_r(n) tables by the logarithmic-derivative convolution, divisor sums
//! and Bernoulli numbers as exact rationals.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Immutable table of p_r(0..=N). Safe to share across threads.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    r: u32,
    values: Vec<Integer>,
}

impl PartitionTable {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn get(&self, n: u64) -> Option<&Integer> {
        self.values.get(n as usize)
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// p(0..=n) by Euler's pentagonal recurrence
/// p(n) = sum_{j>=1} (-1)^{j+1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)].
pub fn p_exact_table(n: u64) -> Vec<Integer> {
    let n = n as usize;
    let mut table = Vec::with_capacity(n + 1);
    table.push(Integer::from(1));
    for i in 1..=n {
        let mut acc = Integer::new();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            if j % 2 == 1 {
                acc += &table[i - g1];
                if g2 <= i {
                    acc += &table[i - g2];
                }
            } else {
                acc -= &table[i - g1];
                if g2 <= i {
                    acc -= &table[i - g2];
                }
            }
            j += 1;
        }
        table.push(acc);
    }
    table
}

/// The number of partitions of n.
pub fn p_exact(n: u64) -> Integer {
    p_exact_table(n).pop().expect("table is nonempty")
}

/// Sum of e-th powers of the positive divisors of n.
pub fn sigma(e: u32, n: u64) -> Result<Integer> {
    if n == 0 {
        return Err(Error::domain("sigma(e, n) requires n >= 1"));
    }
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += Integer::from(d).pow(e);
            let q = n / d;
            if q != d {
                s += Integer::from(q).pow(e);
            }
        }
        d += 1;
    }
    Ok(s)
}

/// Table of p_r(n) for 0 <= n <= n_max via the convolution recurrence
/// n p_r(n) = r sum_{j=1}^{n} sigma_1(j) p_r(n-j), the logarithmic
/// derivative of the generating Euler product. The r = 1 column is
/// cross-checked against the independent pentagonal recurrence.
pub fn p_r_exact_table(r: u32, n_max: u64) -> Result<PartitionTable> {
    if !(1..=24).contains(&r) {
        return Err(Error::domain(format!("r = {r} outside [1, 24]")));
    }
    let n = n_max as usize;
    let mut sigma1 = Vec::with_capacity(n + 1);
    sigma1.push(Integer::new());
    for j in 1..=n {
        sigma1.push(sigma(1, j as u64)?);
    }
    let mut values = Vec::with_capacity(n + 1);
    values.push(Integer::from(1));
    for i in 1..=n {
        let mut acc = Integer::new();
        for j in 1..=i {
            acc += Integer::from(&sigma1[j] * &values[i - j]);
        }
        acc *= r;
        let (q, rem) = acc.div_rem(Integer::from(i));
        assert!(rem.is_zero(), "convolution recurrence must divide exactly");
        values.push(q);
    }
    if r == 1 {
        let pent = p_exact_table(n_max);
        assert_eq!(values, pent, "r = 1 column disagrees with pentagonal recurrence");
    }
    Ok(PartitionTable { r, values })
}

/// Exact Bernoulli number B_k (convention B_1 = -1/2) by the recurrence
/// sum_{j=0}^{k} C(k+1, j) B_j = 0.
pub fn bernoulli(k: u32) -> Rational {
    bernoulli_table(k).pop().expect("table is nonempty")
}

/// B_0, ..., B_k.
pub fn bernoulli_table(k: u32) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(k as usize + 1);
    table.push(Rational::from(1));
    for m in 1..=k {
        let mut acc = Rational::new();
        for (j, b) in table.iter().enumerate() {
            let binom = Integer::from(m + 1).binomial(j as u32);
            acc += Rational::from(b * &binom);
        }
        acc /= Integer::from(m) + 1;
        table.push(-acc);
    }
    table
}
