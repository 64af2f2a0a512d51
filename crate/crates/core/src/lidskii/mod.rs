//! Normalized volumes and lattice-point counts of flow polytopes through the
//! generalized Lidskii formulas, the Postnikov-Stanley special case, and an
//! Ehrhart-interpolation cross-check.
//!
//! For a graph `G` on `[n+1]` with `N` edges and netflow
//! `a' = (a_1, ..., a_n, -sum a_i)` with `a_i >= 0`:
//!
//! ```text
//! vol F_G(a') = sum_{i |= N-n} multinomial(N-n; i) a^i K_{G'}(i - t)
//! K_G(a')     = sum_{i |= N-n} prod_k C(a_k + t_k, i_k) K_{G'}(i - t)
//! ```
//!
//! where `G'` is `G` restricted to `[n]` and `t_k = outdeg(k) - 1`.

mod ehrhart;

pub use ehrhart::{ehrhart_polynomial, ehrhart_polynomial_with, positive_flow, EhrhartPolynomial};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::combinat::{binomial_signed, factorials, multinomial, Compositions};
use crate::graph::{degree_offsets, kostant, Multigraph, NetflowVector};
use crate::{Error, Exec, Result};

/// Shared setup of both Lidskii sums.
struct LidskiiTerms {
    restricted: Multigraph,
    offsets: Vec<i64>,
    excess: u64,
}

impl LidskiiTerms {
    fn new(g: &Multigraph, a: &NetflowVector) -> Result<Self> {
        a.check_for(g)?;
        let n = g.vertex_count() - 1;
        let edges = g.edge_count();
        if edges < n as u64 {
            return Err(Error::InvalidGraph(format!(
                "{edges} edges cannot connect {} vertices",
                n + 1
            )));
        }
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph must be connected".into()));
        }
        let offsets = degree_offsets(g).out;
        if let Some(k) = offsets.iter().position(|&t| t < 0) {
            return Err(Error::InvalidGraph(format!("vertex {} has no outgoing edge", k + 1)));
        }
        Ok(LidskiiTerms {
            restricted: g.restrict(n),
            offsets,
            excess: edges - n as u64,
        })
    }

    /// `K_{G'}(i_1 - t_1, ..., i_n - t_n)`.
    fn shifted_kostant(&self, i: &[u64]) -> BigUint {
        let b: Vec<i64> = i.iter().zip(&self.offsets).map(|(&x, &t)| x as i64 - t).collect();
        kostant(&self.restricted, &b).expect("length matches restriction")
    }
}

fn into_count(v: BigInt) -> BigUint {
    v.to_biguint().expect("Lidskii sums are nonnegative")
}

/// Normalized volume of `F_G(a)`.
pub fn lidskii_volume(g: &Multigraph, a: &NetflowVector) -> Result<BigUint> {
    lidskii_volume_with(g, a, Exec::default())
}

pub fn lidskii_volume_with(g: &Multigraph, a: &NetflowVector, exec: Exec) -> Result<BigUint> {
    volume_sum(g, a, exec, true)
}

/// Same sum without skipping compositions that put weight on a zero `a_k`.
pub fn lidskii_volume_unpruned(g: &Multigraph, a: &NetflowVector) -> Result<BigUint> {
    volume_sum(g, a, Exec::Sequential, false)
}

fn volume_sum(g: &Multigraph, a: &NetflowVector, exec: Exec, prune: bool) -> Result<BigUint> {
    let terms = LidskiiTerms::new(g, a)?;
    let prefix = a.prefix();
    let mask: Vec<bool> = prefix.iter().map(|&x| !prune || x > 0).collect();
    let comps: Vec<Vec<u64>> = Compositions::with_support(terms.excess, &mask).collect();
    let fact = factorials(terms.excess);
    let total = exec.sum(&comps, |i| {
        let mut w = multinomial(i, &fact);
        for (&ak, &ik) in prefix.iter().zip(i) {
            // 0^0 = 1
            w *= BigUint::from(ak as u64).pow(ik as u32);
        }
        if w.is_zero() {
            return BigInt::zero();
        }
        BigInt::from(w * terms.shifted_kostant(i))
    });
    Ok(into_count(total))
}

/// Number of lattice points of `F_G(a)`, i.e. `K_G(a)`, by the binomial
/// Lidskii sum.
pub fn lidskii_points(g: &Multigraph, a: &NetflowVector) -> Result<BigUint> {
    lidskii_points_with(g, a, Exec::default())
}

pub fn lidskii_points_with(g: &Multigraph, a: &NetflowVector, exec: Exec) -> Result<BigUint> {
    let terms = LidskiiTerms::new(g, a)?;
    let tops: Vec<i64> = a.prefix().iter().zip(&terms.offsets).map(|(&x, &t)| x + t).collect();
    // C(0, i) vanishes for every i > 0
    let mask: Vec<bool> = tops.iter().map(|&x| x != 0).collect();
    let comps: Vec<Vec<u64>> = Compositions::with_support(terms.excess, &mask).collect();
    let total = exec.sum(&comps, |i| {
        let mut w = BigInt::one();
        for (&top, &ik) in tops.iter().zip(i) {
            w *= binomial_signed(top, ik);
            if w.is_zero() {
                return w;
            }
        }
        w * BigInt::from(terms.shifted_kostant(i))
    });
    if total.is_negative() {
        unreachable!("lattice-point count came out negative");
    }
    Ok(into_count(total))
}

/// Volume of `F_G(1, 0, ..., 0, -1)` as `K_G(0, d_2, ..., d_{v-1}, -sum d_i)`
/// with `d_i = indeg(i) - 1`.
///
/// Every vertex other than the first needs an incoming edge.
pub fn ps_volume(g: &Multigraph) -> Result<BigUint> {
    let v = g.vertex_count();
    if v < 2 {
        return Err(Error::InvalidGraph("need at least 2 vertices".into()));
    }
    let d = degree_offsets(g).inn;
    if let Some(k) = (1..v).find(|&k| d[k] < 0) {
        return Err(Error::InvalidGraph(format!("vertex {} has no incoming edge", k + 1)));
    }
    let mut b = vec![0i64; v];
    b[1..v - 1].copy_from_slice(&d[1..v - 1]);
    b[v - 1] = -d[1..v - 1].iter().sum::<i64>();
    kostant(g, &b)
}
