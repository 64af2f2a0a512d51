//! Closed-form products for the volumes and constant terms, evaluated
//! exactly.
//!
//! Gamma values at half-integers are carried as `q * pi^(e/2)` with `q`
//! rational, so `Gamma(1/2) = sqrt(pi)` is `(1, 1)`. A product that is
//! supposed to be rational must end with `e = 0`; anything else is reported
//! as [`Error::ResidualPi`].

use std::ops::{Div, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::combinat::{binomial, choose2, factorial};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaHalfValue {
    pub q: BigRational,
    pub e: i64,
}

impl GammaHalfValue {
    pub fn rational(q: BigRational) -> Self {
        GammaHalfValue { q, e: 0 }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        if self.e != 0 {
            return Err(Error::ResidualPi(self.e));
        }
        Ok(self.q.clone())
    }
}

impl Mul for GammaHalfValue {
    type Output = GammaHalfValue;
    fn mul(self, rhs: Self) -> Self {
        GammaHalfValue { q: self.q * rhs.q, e: self.e + rhs.e }
    }
}

impl Div for GammaHalfValue {
    type Output = GammaHalfValue;
    fn div(self, rhs: Self) -> Self {
        GammaHalfValue { q: self.q / rhs.q, e: self.e - rhs.e }
    }
}

/// `Gamma(two_x / 2)`.
pub fn gamma_half(two_x: i64) -> Result<GammaHalfValue> {
    if two_x <= 0 {
        return Err(Error::GammaPole { two_x });
    }
    let two_x = two_x as u64;
    if two_x % 2 == 0 {
        let j = two_x / 2;
        return Ok(GammaHalfValue::rational(BigRational::from_integer(factorial(j - 1).into())));
    }
    // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
    let k = (two_x - 1) / 2;
    let num = BigInt::from(factorial(2 * k));
    let den = BigInt::from(factorial(k)) << (2 * k as usize);
    Ok(GammaHalfValue { q: BigRational::new(num, den), e: 1 })
}

/// Running product of Gamma factors given by doubled arguments.
struct GammaProduct(GammaHalfValue);

impl GammaProduct {
    fn new() -> Self {
        GammaProduct(GammaHalfValue::one())
    }

    fn num(mut self, two_x: i64) -> Result<Self> {
        self.0 = self.0 * gamma_half(two_x)?;
        Ok(self)
    }

    fn den(mut self, two_x: i64) -> Result<Self> {
        self.0 = self.0 / gamma_half(two_x)?;
        Ok(self)
    }

    fn finish(self, scale: BigRational) -> Result<BigRational> {
        Ok(self.0.to_rational()? * scale)
    }
}

pub fn catalan(i: u64) -> BigUint {
    binomial(2 * i, i) / (i + 1)
}

/// `prod_{k=1}^{n-2} Cat(k)`.
pub fn cry_product(n: u64) -> BigUint {
    (1..=n.saturating_sub(2)).map(catalan).product()
}

/// Volume of `F_{K_{n+1}}(1,1,0,...,0,-2)`: `2^{C(n,2)-1} prod_{i=1}^{n-2} Cat(i)`.
pub fn thm1_volume(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    Ok((BigUint::one() << (choose2(n) - 1) as usize) * cry_product(n))
}

/// Right-hand side of the Morris constant-term identity:
///
/// ```text
/// 1/n! prod_{j=0}^{n-1} Gamma(a+b+(n-1+j)m/2) Gamma(m/2)
///                       / (Gamma(b+jm/2) Gamma(m/2+jm/2) Gamma(a+jm/2+1))
/// ```
pub fn morris_closed(n: u64, a: u64, b: u64, m: u64) -> Result<BigRational> {
    let (n, a, b, m) = (n as i64, a as i64, b as i64, m as i64);
    let mut p = GammaProduct::new();
    for j in 0..n {
        p = p
            .num(2 * a + 2 * b + (n - 1 + j) * m)?
            .num(m)?
            .den(2 * b + j * m)?
            .den(m + j * m)?
            .den(2 * a + j * m + 2)?;
    }
    p.finish(BigRational::new(1.into(), factorial(n as u64).into()))
}

/// Volume of `F_{K_{n+1}^{a,b,m}}(1,0,...,0,-1)`:
///
/// ```text
/// 1/(n-1)! prod_{j=0}^{n-2} Gamma(a-1+b+(n-2+j)m/2) Gamma(m/2)
///                           / (Gamma(a+jm/2) Gamma(b+jm/2) Gamma(m/2+jm/2))
/// ```
pub fn thm2_volume(n: u64, a: u64, b: u64, m: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let (ni, a, b, m) = (n as i64, a as i64, b as i64, m as i64);
    let mut p = GammaProduct::new();
    for j in 0..ni - 1 {
        p = p
            .num(2 * a - 2 + 2 * b + (ni - 2 + j) * m)?
            .num(m)?
            .den(2 * a + j * m)?
            .den(2 * b + j * m)?
            .den(m + j * m)?;
    }
    p.finish(BigRational::new(1.into(), factorial(n - 1).into()))
}

/// Volume of `F_{K_{n+1}^{a,b}}(1,...,1,-n)`:
///
/// ```text
/// ((b-1)n + a C(n,2))! prod_{i=0}^{n-1} Gamma(1+a/2) / (Gamma(1+(i+1)a/2) Gamma(b+ia/2))
/// ```
pub fn thm3_volume(n: u64, a: u64, b: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let top = (b as i64 - 1) * n as i64 + (a * choose2(n)) as i64;
    if top < 0 {
        return Err(Error::InvalidArgument(format!(
            "(b-1)n + a C(n,2) = {top} is negative"
        )));
    }
    let (a, b) = (a as i64, b as i64);
    let mut p = GammaProduct::new();
    for i in 0..n as i64 {
        p = p.num(2 + a)?.den(2 + (i + 1) * a)?.den(2 * b + i * a)?;
    }
    p.finish(BigRational::from_integer(factorial(top as u64).into()))
}

/// `C(n,2)! 2^{C(n,2)} / prod_{i=1}^n i!`.
pub fn tesler_unit_volume(n: u64) -> BigUint {
    let c = choose2(n);
    let denom: BigUint = (1..=n).map(factorial).product();
    (factorial(c) << c as usize) / denom
}

/// Standard Young tableaux of staircase shape `(n-1, ..., 1)` by the
/// hook-length formula.
pub fn syt_staircase(n: u64) -> BigUint {
    let cells = choose2(n);
    // row r (0-based) has n-1-r cells; hook at (r, c) is arm + leg + 1
    let rows = n.saturating_sub(1);
    let mut hooks = BigUint::one();
    for r in 0..rows {
        let len = rows - r;
        for c in 0..len {
            let arm = len - c - 1;
            // column c has rows - c cells
            let leg = (rows - c) - r - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(cells) / hooks
}

/// Exact integer value of a rational that should be a nonnegative integer.
pub fn as_count(q: &BigRational) -> Option<BigUint> {
    (q.is_integer() && !q.is_negative()).then(|| q.to_integer().to_biguint().unwrap())
}
