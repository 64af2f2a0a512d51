//! The two-variable reduction identity
//!
//! ```text
//! CT_{x_n..x_1} (x_{n-1}+x_n)^{C(n,2)-a} (x_{n-1}^{a_{n-1}} x_n^{a_n} + x_{n-1}^{a_n} x_n^{a_{n-1}})
//!     prod_{i<=n-2} x_i^{a_i} prod_{i<j<=n} (x_j-x_i)^{-1}
//!   = 2^{C(n,2)-a} CT_{x_{n-2}..x_1} prod_{i<=n-2} x_i^{a_i} (1-x_i)^{-2} prod_{i<j<=n-2} (x_j-x_i)^{-1}
//! ```
//!
//! and the matrix bijection behind it.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{enumerate_umat, MatrixGrid};
use super::{constant_term, CTIntegrand, Monomial};
use crate::combinat::{binomial, choose2};
use crate::{Error, Result};

fn check_args(n: usize, a_vec: &[i64]) -> Result<i64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    if a_vec.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: a_vec.len() });
    }
    Ok(choose2(n as u64) as i64 - a_vec.iter().sum::<i64>())
}

/// Both sides of the identity. When `C(n,2) - sum a < 0` the binomial range
/// is empty and both sides are 0.
pub fn lemma_gen_sides(n: usize, a_vec: &[i64]) -> Result<(BigInt, BigInt)> {
    let range = check_args(n, a_vec)?;
    if range < 0 {
        return Ok((BigInt::zero(), BigInt::zero()));
    }
    let range_u = range as u64;
    let (p, q) = (n - 2, n - 1);

    let mut numerator = Vec::with_capacity(2 * (range_u as usize + 1));
    for t in 0..=range_u {
        let coeff = BigInt::from(binomial(range_u, t));
        for (ep, eq) in [(a_vec[p], a_vec[q]), (a_vec[q], a_vec[p])] {
            let mut e = a_vec.to_vec();
            e[p] = t as i64 + ep;
            e[q] = (range_u - t) as i64 + eq;
            numerator.push(Monomial { coeff: coeff.clone(), exponents: e });
        }
    }
    let lhs_f = CTIntegrand::new(n, numerator, vec![], vec![], 1)?;
    let lhs = constant_term(&lhs_f)?;

    let inner = &a_vec[..n - 2];
    let rhs_f = CTIntegrand::poles(inner.iter().map(|&x| -x).collect(), vec![2; n - 2], 1)?;
    let rhs = constant_term(&rhs_f)? * (BigInt::one() << range_u as usize);
    Ok((lhs, rhs))
}

/// Outcome of checking the bijection `X ⊎ X' -> Y x {0..C}` exhaustively.
#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    pub n: usize,
    pub a_vec: Vec<i64>,
    /// `C = C(n,2) - sum a`.
    pub range: i64,
    pub x_count: usize,
    pub x_prime_count: usize,
    pub y_count: usize,
    /// Every image lies in `Y x {0..C}`.
    pub well_defined: bool,
    /// Binomial weight of each `A` equals `C(C, t)` of its image.
    pub weights_match: bool,
    pub injective: bool,
    pub surjective: bool,
    /// Exactly one of the two existence inequalities holds for every
    /// `(B, t)`, and it names the side the preimage comes from.
    pub exactly_one_case: bool,
    /// `sum_{A in X} C(C, t_A) + sum_{A in X'} C(C, t'_A)`; equals the
    /// left-hand side.
    #[serde(serialize_with = "as_string")]
    pub weighted_sum: BigUint,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl PhiReport {
    pub fn verified(&self) -> bool {
        self.well_defined && self.weights_match && self.injective && self.surjective && self.exactly_one_case
    }
}

/// Enumerates
///
/// * `X_t`: umat `n x n` with `h_i = -a_i` for `i <= n-2` and `h_{n-1} = -a_{n-1} - t`,
/// * `X'_t`: the same with `h_{n-1} = -a_n - t`,
/// * `Y`: umat `(n-2) x n` with `h_i = -a_i` for `i <= n-2`,
///
/// for `t = 0..=C`, and checks that
/// `A in X_t -> (first n-2 rows, t)` and
/// `A in X'_t -> (first n-2 rows with the last two columns swapped, C - t)`
/// is a bijection onto `Y x {0..C}`.
pub fn verify_phi_bijection(n: usize, a_vec: &[i64], limit: usize) -> Result<PhiReport> {
    let range = check_args(n, a_vec)?;
    let hooks_head: Vec<i64> = a_vec[..n - 2].iter().map(|&x| -x).collect();
    let y = enumerate_umat(n - 2, n, &hooks_head, limit)?;
    let mut report = PhiReport {
        n,
        a_vec: a_vec.to_vec(),
        range,
        x_count: 0,
        x_prime_count: 0,
        y_count: y.len(),
        well_defined: true,
        weights_match: true,
        injective: true,
        surjective: true,
        exactly_one_case: true,
        weighted_sum: BigUint::zero(),
    };
    if range < 0 {
        return Ok(report);
    }
    let (a_p, a_q) = (a_vec[n - 2], a_vec[n - 1]);
    let y_set: HashSet<&MatrixGrid> = y.iter().collect();

    // image -> came from X (true) or X' (false)
    let mut images: std::collections::HashMap<(MatrixGrid, i64), bool> = Default::default();
    for (from_x, a_last) in [(true, a_p), (false, a_q)] {
        for t in 0..=range {
            let mut hooks = hooks_head.clone();
            hooks.push(-a_last - t);
            let members = enumerate_umat(n, n, &hooks, limit)?;
            for a in members {
                if from_x {
                    report.x_count += 1;
                } else {
                    report.x_prime_count += 1;
                }
                let own_t = -a_last - a.hook_sum(n - 2);
                let mut b = a.truncate_rows(n - 2);
                let image_t = if from_x {
                    own_t
                } else {
                    b.swap_columns(n - 2, n - 1);
                    range - own_t
                };
                if !(0..=range).contains(&image_t) || !y_set.contains(&b) {
                    report.well_defined = false;
                }
                if own_t != image_t && own_t != range - image_t {
                    report.weights_match = false;
                }
                report.weighted_sum += binomial(range as u64, own_t as u64);
                if images.insert((b, image_t), from_x).is_some() {
                    report.injective = false;
                }
            }
        }
    }
    report.surjective = report.well_defined && images.len() == y.len() * (range as usize + 1);

    for b in &y {
        let c = b.column_sum(n - 2) as i64;
        for t in 0..=range {
            let first = c + (n as i64 - 2) - a_p - t >= 0;
            let second = c + (n as i64 - 1) - a_p - t <= 0;
            let side = images.get(&(b.clone(), t)).copied();
            if first == second || side != Some(first) {
                report.exactly_one_case = false;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sides_small() {
        let (l, r) = lemma_gen_sides(3, &[0, 0, 0]).unwrap();
        assert_eq!((l.clone(), r), (BigInt::from(8), BigInt::from(8)));
        let (l, r) = lemma_gen_sides(4, &[0, 0, 0, 0]).unwrap();
        assert_eq!(l, BigInt::from(128));
        assert_eq!(r, BigInt::from(128));
        let (l, r) = lemma_gen_sides(3, &[1, 0, 0]).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn empty_range() {
        let (l, r) = lemma_gen_sides(3, &[2, 2, 0]).unwrap();
        assert!(l.is_zero() && r.is_zero());
        let rep = verify_phi_bijection(3, &[2, 2, 0], 1000).unwrap();
        assert!(rep.verified());
        assert_eq!(rep.x_count + rep.x_prime_count, 0);
    }

    #[test]
    fn bad_args() {
        assert!(lemma_gen_sides(1, &[0]).is_err());
        assert!(lemma_gen_sides(3, &[0, 0]).is_err());
    }

    #[test]
    fn phi_examples() {
        let rep = verify_phi_bijection(3, &[0, 0, 0], 1000).unwrap();
        assert!(rep.verified(), "{rep:?}");
        assert_eq!(rep.y_count, 1);
        assert_eq!(rep.x_count + rep.x_prime_count, 4);

        let rep = verify_phi_bijection(4, &[0, 0, 0, 0], 100_000).unwrap();
        assert!(rep.verified(), "{rep:?}");
        assert_eq!(rep.x_count + rep.x_prime_count, rep.y_count * 7);

        let rep = verify_phi_bijection(2, &[0, 0], 10).unwrap();
        assert!(rep.verified());
        assert_eq!(rep.y_count, 1);
        assert_eq!(rep.x_count + rep.x_prime_count, 2);
    }

    #[test]
    fn weighted_sum_is_lhs() {
        for a in [[0, 0, 0, 0], [1, 0, -1, 2], [0, 1, 2, -1]] {
            let rep = verify_phi_bijection(4, &a, 100_000).unwrap();
            let (lhs, _) = lemma_gen_sides(4, &a).unwrap();
            assert_eq!(BigInt::from(rep.weighted_sum), lhs);
        }
    }
}
