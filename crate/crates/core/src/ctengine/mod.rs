//! Iterated constant terms `CT_{x_n} ... CT_{x_1}` of integrands
//!
//! ```text
//! numerator(x) * prod_i x_i^{-a_i} (1 - x_i)^{-b_i} * prod_{i<j} (x_j - x_i)^{-m}
//! ```
//!
//! with `1/(x_j - x_i)` read as `x_j^{-1} sum_k (x_i/x_j)^k` for `i < j`.
//!
//! Expanding `(1 - x_i)^{-b_i}` gives one row of a nonnegative matrix per
//! variable (exponent = row sum), and expanding the Vandermonde power gives
//! `m` upper-triangular matrices with diagonal `0, 1, ..., n-1` (exponent =
//! hook sum). The constant term of `x^e` times the poles is then the number
//! of matrix tuples whose row and hook sums hit `a - e`. [`HookCounter`]
//! counts those tuples row by row, carrying the partial column sums.

mod expand;
mod gen;
mod matrix;

pub use expand::{verify_expand, ExpandReport};
pub use gen::{lemma_gen_sides, verify_phi_bijection, PhiReport};
pub use matrix::{enumerate_umat, MatrixGrid};

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, choose2, factorials, multichoose, multinomial, Compositions};
use crate::{Error, Exec, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigInt,
    pub exponents: Vec<i64>,
}

/// Integrand description; also the JSON interchange format of the `ct`
/// command:
///
/// ```json
/// {"vars": 2, "numerator": [[1, [0, 0]]], "x_pole": [0, 0],
///  "one_minus_pole": [2, 2], "vandermonde": 1}
/// ```
///
/// `x_pole[i] = a_i` stands for `x_i^{-a_i}`; negative entries are positive
/// powers. Empty pole vectors mean all zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntegrandJson", into = "IntegrandJson")]
pub struct CTIntegrand {
    pub vars: usize,
    pub numerator: Vec<Monomial>,
    pub x_pole: Vec<i64>,
    pub one_minus_pole: Vec<u64>,
    pub vandermonde: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct IntegrandJson {
    vars: usize,
    numerator: Vec<(CoeffJson, Vec<i64>)>,
    #[serde(default)]
    x_pole: Vec<i64>,
    #[serde(default)]
    one_minus_pole: Vec<u64>,
    #[serde(default)]
    vandermonde: u64,
}

impl TryFrom<IntegrandJson> for CTIntegrand {
    type Error = Error;

    fn try_from(j: IntegrandJson) -> Result<Self> {
        let numerator = j
            .numerator
            .into_iter()
            .map(|(c, exponents)| {
                let coeff = match c {
                    CoeffJson::Small(v) => BigInt::from(v),
                    CoeffJson::Big(s) => s.parse().map_err(|_| {
                        Error::InvalidIntegrand(format!("bad coefficient `{s}`"))
                    })?,
                };
                Ok(Monomial { coeff, exponents })
            })
            .collect::<Result<_>>()?;
        CTIntegrand::new(j.vars, numerator, j.x_pole, j.one_minus_pole, j.vandermonde)
    }
}

impl From<CTIntegrand> for IntegrandJson {
    fn from(f: CTIntegrand) -> Self {
        IntegrandJson {
            vars: f.vars,
            numerator: f
                .numerator
                .into_iter()
                .map(|m| (CoeffJson::Big(m.coeff.to_string()), m.exponents))
                .collect(),
            x_pole: f.x_pole,
            one_minus_pole: f.one_minus_pole,
            vandermonde: f.vandermonde,
        }
    }
}

impl CTIntegrand {
    pub fn new(
        vars: usize,
        numerator: Vec<Monomial>,
        mut x_pole: Vec<i64>,
        mut one_minus_pole: Vec<u64>,
        vandermonde: u64,
    ) -> Result<Self> {
        if x_pole.is_empty() {
            x_pole = vec![0; vars];
        }
        if one_minus_pole.is_empty() {
            one_minus_pole = vec![0; vars];
        }
        if x_pole.len() != vars || one_minus_pole.len() != vars {
            return Err(Error::InvalidIntegrand(format!(
                "pole vectors must have length {vars}"
            )));
        }
        if let Some(m) = numerator.iter().find(|m| m.exponents.len() != vars) {
            return Err(Error::InvalidIntegrand(format!(
                "monomial exponent vector {:?} has length {}, expected {vars}",
                m.exponents,
                m.exponents.len()
            )));
        }
        Ok(CTIntegrand { vars, numerator, x_pole, one_minus_pole, vandermonde })
    }

    /// Integrand with numerator 1.
    pub fn poles(x_pole: Vec<i64>, one_minus_pole: Vec<u64>, vandermonde: u64) -> Result<Self> {
        let vars = x_pole.len().max(one_minus_pole.len());
        let one = Monomial { coeff: BigInt::one(), exponents: vec![0; vars] };
        Self::new(vars, vec![one], x_pole, one_minus_pole, vandermonde)
    }
}

/// Counts matrix tuples `(B, A^(1), ..., A^(m))` with prescribed exponents
/// `r_k(B) + sum_l h_k(A^(l))`, i.e. coefficients of
/// `prod_k (1 - x_k)^{-b_k} prod_{i<j} (x_j - x_i)^{-m}`.
#[derive(Debug, Clone)]
pub struct HookCounter {
    row_slots: Vec<u64>,
    copies: u64,
}

impl HookCounter {
    pub fn new(row_slots: Vec<u64>, copies: u64) -> Self {
        HookCounter { row_slots, copies }
    }

    /// Coefficient of `x^target`.
    ///
    /// Row `k` (zero-based) must satisfy
    /// `r_k + sum_{j>k} C_{kj} = target_k + m k + sum_{i<k} C_{ik}`,
    /// where `C` is the entrywise sum of the `m` matrices; splitting an
    /// entry total `c` over `m` matrices (or a row sum over `b_k` columns of
    /// `B`) is a multichoose. States are the column sums still owed to
    /// later rows.
    pub fn count(&self, target: &[i64]) -> BigUint {
        let n = target.len();
        debug_assert_eq!(n, self.row_slots.len());
        let m = self.copies;
        let mut states: HashMap<Vec<u64>, BigUint> = HashMap::new();
        states.insert(vec![0; n], BigUint::one());
        let mut weights: HashMap<(u64, u64), BigUint> = HashMap::new();
        let mut weight = |c: u64, slots: u64| -> BigUint {
            weights.entry((c, slots)).or_insert_with(|| multichoose(c, slots)).clone()
        };

        for k in 0..n {
            let mut mask = vec![m > 0; n - k];
            mask[0] = self.row_slots[k] > 0;
            let mut next: HashMap<Vec<u64>, BigUint> = HashMap::new();
            for (cols, count) in states {
                let need = target[k] + (m * k as u64) as i64 + cols[0] as i64;
                if need < 0 {
                    continue;
                }
                for split in Compositions::with_support(need as u64, &mask) {
                    let mut w = count.clone();
                    if split[0] > 0 {
                        w *= weight(split[0], self.row_slots[k]);
                    }
                    let mut key = cols[1..].to_vec();
                    for (slot, &c) in key.iter_mut().zip(&split[1..]) {
                        if c > 0 {
                            w *= weight(c, m);
                            *slot += c;
                        }
                    }
                    *next.entry(key).or_default() += w;
                }
            }
            states = next;
            if states.is_empty() {
                return BigUint::zero();
            }
        }
        states.remove(&Vec::new()).unwrap_or_default()
    }
}

/// Sum of `coeff * [x^{a - e}] poles` over numerator monomials `coeff x^e`.
fn ct_over<I>(pole: &[i64], counter: &HookCounter, monomials: I, exec: Exec) -> BigInt
where
    I: IntoIterator<Item = (BigInt, Vec<i64>)>,
{
    // merge repeated exponent vectors first
    let mut merged: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (c, e) in monomials {
        *merged.entry(e).or_default() += c;
    }
    let terms: Vec<(Vec<i64>, BigInt)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    exec.sum(&terms, |(e, c)| {
        let target: Vec<i64> = pole.iter().zip(e).map(|(&a, &x)| a - x).collect();
        c * BigInt::from(counter.count(&target))
    })
}

pub fn constant_term(f: &CTIntegrand) -> Result<BigInt> {
    constant_term_with(f, Exec::default())
}

pub fn constant_term_with(f: &CTIntegrand, exec: Exec) -> Result<BigInt> {
    let f = CTIntegrand::new(
        f.vars,
        f.numerator.clone(),
        f.x_pole.clone(),
        f.one_minus_pole.clone(),
        f.vandermonde,
    )?;
    let counter = HookCounter::new(f.one_minus_pole.clone(), f.vandermonde);
    let monomials = f.numerator.into_iter().map(|m| (m.coeff, m.exponents));
    Ok(ct_over(&f.x_pole, &counter, monomials, exec))
}

/// `CT (x_{n-1} + x_n)^{C(n,2)} / prod_{i<j} (x_j - x_i)`.
pub fn catalan_polytope_ct(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let top = choose2(n as u64);
    let monomials = (0..=top).map(|t| {
        let mut e = vec![0i64; n];
        e[n - 2] = t as i64;
        e[n - 1] = (top - t) as i64;
        (BigInt::from(binomial(top, t)), e)
    });
    let counter = HookCounter::new(vec![0; n], 1);
    Ok(ct_over(&vec![0; n], &counter, monomials, Exec::default()))
}

/// `CT prod_i x_i^{-a} (1 - x_i)^{-b} prod_{i<j} (x_j - x_i)^{-m}`.
pub fn morris_ct(n: usize, a: u64, b: u64, m: u64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let f = CTIntegrand::poles(vec![a as i64; n], vec![b; n], m)?;
    constant_term(&f)
}

/// `CT (x_1 + ... + x_n)^{a C(n,2) + n(b-1)} prod_i x_i^{1-b} prod_{i<j} (x_j - x_i)^{-a}`.
pub fn tesler_ct(n: usize, a: u64, b: u64) -> Result<BigInt> {
    tesler_ct_with(n, a, b, Exec::default())
}

pub fn tesler_ct_with(n: usize, a: u64, b: u64, exec: Exec) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let top = (a * choose2(n as u64)) as i64 + n as i64 * (b as i64 - 1);
    if top < 0 {
        return Err(Error::InvalidArgument(format!("numerator exponent {top} is negative")));
    }
    let fact = factorials(top as u64);
    let shift = 1 - b as i64;
    let monomials = Compositions::new(top as u64, n).map(|i| {
        let coeff = BigInt::from(multinomial(&i, &fact));
        (coeff, i.iter().map(|&x| x as i64 + shift).collect())
    });
    let counter = HookCounter::new(vec![0; n], a);
    Ok(ct_over(&vec![0; n], &counter, monomials, exec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn single_variable() {
        // [x^2] (1-x)^{-3}
        let f = CTIntegrand::poles(vec![2], vec![3], 0).unwrap();
        assert_eq!(constant_term(&f).unwrap(), int(6));
    }

    #[test]
    fn cry_shape_two_vars() {
        let f = CTIntegrand::poles(vec![0, 0], vec![2, 2], 1).unwrap();
        assert_eq!(constant_term(&f).unwrap(), int(2));
    }

    #[test]
    fn constant_integrand() {
        let f = CTIntegrand::poles(vec![0; 3], vec![0; 3], 0).unwrap();
        assert_eq!(constant_term(&f).unwrap(), int(1));
        let empty = CTIntegrand::poles(vec![], vec![], 3).unwrap();
        assert_eq!(constant_term(&empty).unwrap(), int(1));
    }

    #[test]
    fn unreachable_exponent_gives_zero() {
        // x^{+1} with nothing to cancel it
        let f = CTIntegrand::poles(vec![-1], vec![4], 0).unwrap();
        assert_eq!(constant_term(&f).unwrap(), int(0));
    }

    #[test]
    fn structural_errors() {
        let bad = Monomial { coeff: int(1), exponents: vec![0] };
        assert!(CTIntegrand::new(2, vec![bad], vec![], vec![], 1).is_err());
        assert!(CTIntegrand::new(2, vec![], vec![1], vec![], 1).is_err());
    }

    #[test]
    fn catalan_polytope() {
        assert_eq!(catalan_polytope_ct(2).unwrap(), int(1));
        assert_eq!(catalan_polytope_ct(3).unwrap(), int(4));
        assert_eq!(catalan_polytope_ct(4).unwrap(), int(64));
        assert!(catalan_polytope_ct(1).is_err());
    }

    #[test]
    fn morris_examples() {
        for m in 0..3 {
            assert_eq!(morris_ct(1, 2, 3, m).unwrap(), int(6));
        }
        assert_eq!(morris_ct(2, 0, 2, 1).unwrap(), int(2));
        for n in 1..5 {
            assert_eq!(morris_ct(n, 0, 0, 0).unwrap(), int(1));
        }
    }

    #[test]
    fn tesler_examples() {
        assert_eq!(tesler_ct(2, 1, 1).unwrap(), int(1));
        assert_eq!(tesler_ct(3, 1, 1).unwrap(), int(4));
        assert_eq!(tesler_ct(2, 2, 1).unwrap(), int(1));
        assert!(tesler_ct(3, 0, 0).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        assert_eq!(
            tesler_ct_with(3, 2, 2, Exec::Sequential).unwrap(),
            tesler_ct_with(3, 2, 2, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn json_format() {
        let src = r#"{"vars": 2, "numerator": [[1, [0, 0]]], "x_pole": [0, 0],
                      "one_minus_pole": [2, 2], "vandermonde": 1}"#;
        let f: CTIntegrand = serde_json::from_str(src).unwrap();
        assert_eq!(constant_term(&f).unwrap(), int(2));
        let big = r#"{"vars": 1, "numerator": [["123456789012345678901234567890", [2]]]}"#;
        let f: CTIntegrand = serde_json::from_str(big).unwrap();
        assert_eq!(f.x_pole, vec![0]);
        assert!(serde_json::from_str::<CTIntegrand>(r#"{"vars": 2, "numerator": [[1, [0]]]}"#).is_err());
    }
}
