//! Weak compositions, binomials and factorials.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Iterator over the weak compositions of `total` into `parts` parts.
///
/// Positions forbidden by the support mask are always zero. Compositions are
/// produced in colexicographic order: the last part varies slowest, and the
/// first yielded composition puts everything in the first allowed position.
#[derive(Debug, Clone)]
pub struct Compositions {
    total: u64,
    parts: usize,
    allowed: Vec<usize>,
    // counters for allowed[1..]; allowed[0] takes the remainder
    counters: Vec<u64>,
    used: u64,
    done: bool,
}

impl Compositions {
    pub fn new(total: u64, parts: usize) -> Self {
        Self::with_support(total, &vec![true; parts])
    }

    pub fn with_support(total: u64, support_mask: &[bool]) -> Self {
        let allowed: Vec<usize> = support_mask
            .iter()
            .enumerate()
            .filter_map(|(i, &ok)| ok.then_some(i))
            .collect();
        let done = allowed.is_empty() && total != 0;
        let counters = vec![0; allowed.len().saturating_sub(1)];
        Compositions {
            total,
            parts: support_mask.len(),
            allowed,
            counters,
            used: 0,
            done,
        }
    }

    fn current(&self) -> Vec<u64> {
        let mut out = vec![0; self.parts];
        if let Some((&first, rest)) = self.allowed.split_first() {
            out[first] = self.total - self.used;
            for (&pos, &c) in rest.iter().zip(&self.counters) {
                out[pos] = c;
            }
        }
        out
    }

    fn advance(&mut self) {
        for k in 0..self.counters.len() {
            if self.used < self.total {
                self.counters[k] += 1;
                self.used += 1;
                return;
            }
            // carry: reset this counter and try the next one
            self.used -= self.counters[k];
            self.counters[k] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// `C(n, k)` for nonnegative arguments; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial `x (x-1) ... (x-k+1) / k!` for any integer `x`.
pub fn binomial_signed(x: i64, k: u64) -> BigInt {
    if x >= 0 {
        return BigInt::from(binomial(x as u64, k));
    }
    // C(-y, k) = (-1)^k C(y + k - 1, k)
    let y = x.unsigned_abs();
    let v = BigInt::from(binomial(y + k - 1, k));
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Number of ways to split `total` into `slots` ordered nonnegative parts:
/// `C(total + slots - 1, slots - 1)`, with the single empty split when
/// `slots == 0` and `total == 0`.
pub fn multichoose(total: u64, slots: u64) -> BigUint {
    if slots == 0 {
        return if total == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    binomial(total + slots - 1, slots - 1)
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Table of `0!, 1!, ..., n!`.
pub fn factorials(n: u64) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigUint::one());
    for i in 1..=n {
        let next = out.last().unwrap() * i;
        out.push(next);
    }
    out
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)` from a factorial
/// table that reaches at least the sum.
pub fn multinomial(parts: &[u64], fact: &[BigUint]) -> BigUint {
    let total: u64 = parts.iter().sum();
    let denom = parts
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * &fact[p as usize]);
    &fact[total as usize] / denom
}

pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}
