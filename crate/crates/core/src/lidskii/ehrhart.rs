//! Volume through the Ehrhart polynomial `p(t) = K_G(t a)`, interpolated
//! exactly at `t = 0..=d` with `d = N - n` and checked at `d+1` and `d+2`.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::factorial;
use crate::graph::{kostant, Multigraph, NetflowVector};
use crate::{Error, Exec, Result};

/// Polynomial with rational coefficients, constant term first. The leading
/// coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coefficients: Vec<BigRational>,
}

impl EhrhartPolynomial {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn leading(&self) -> &BigRational {
        self.coefficients.last().unwrap()
    }

    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(t.into());
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    /// `degree! * leading coefficient`.
    pub fn normalized_volume(&self) -> BigUint {
        let v = self.leading() * BigRational::from_integer(factorial(self.degree() as u64).into());
        debug_assert!(v.is_integer());
        v.to_integer().to_biguint().expect("positive leading coefficient")
    }

    /// Newton interpolation through `(0, values[0]), (1, values[1]), ...`.
    fn interpolate(values: &[BigInt]) -> Self {
        let d = values.len() - 1;
        // forward differences at 0
        let mut diffs = Vec::with_capacity(d + 1);
        let mut row: Vec<BigInt> = values.to_vec();
        for _ in 0..=d {
            diffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let mut coefficients = vec![BigRational::zero(); d + 1];
        // falling factorial t (t-1) ... (t-k+1), integer coefficients
        let mut falling: Vec<BigInt> = vec![BigInt::one()];
        let mut k_fact = BigInt::one();
        for (k, delta) in diffs.iter().enumerate() {
            if k > 0 {
                k_fact *= k;
                let mut next = vec![BigInt::zero(); falling.len() + 1];
                for (i, c) in falling.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * (k as i64 - 1);
                }
                falling = next;
            }
            let scale = BigRational::new(delta.clone(), k_fact.clone());
            for (i, c) in falling.iter().enumerate() {
                coefficients[i] += &scale * BigRational::from_integer(c.clone());
            }
        }
        while coefficients.len() > 1 && coefficients.last().unwrap().is_zero() {
            coefficients.pop();
        }
        EhrhartPolynomial { coefficients }
    }
}

pub fn ehrhart_polynomial(g: &Multigraph, a: &NetflowVector) -> Result<EhrhartPolynomial> {
    ehrhart_polynomial_with(g, a, Exec::default())
}

pub fn ehrhart_polynomial_with(
    g: &Multigraph,
    a: &NetflowVector,
    exec: Exec,
) -> Result<EhrhartPolynomial> {
    a.check_for(g)?;
    let n = g.vertex_count() - 1;
    let edges = g.edge_count();
    if edges < n as u64 || !g.is_connected() {
        return Err(Error::InvalidGraph("graph must be connected".into()));
    }
    let d = (edges - n as u64) as usize;
    if positive_flow(g, a).is_none() {
        return Err(Error::NotFullDimensional(
            "no strictly positive flow exists for this netflow".into(),
        ));
    }
    let ts: Vec<i64> = (0..=d as i64 + 2).collect();
    let values: Vec<BigInt> = exec
        .map(&ts, |&t| kostant(g, a.scaled(t).entries()).map(BigInt::from))
        .into_iter()
        .collect::<Result<_>>()?;
    let poly = EhrhartPolynomial::interpolate(&values[..=d]);
    if poly.degree() != d || !poly.leading().is_positive() {
        return Err(Error::NotFullDimensional(format!(
            "interpolated degree {} instead of {d}",
            poly.degree()
        )));
    }
    for t in [d + 1, d + 2] {
        if poly.eval(t as i64) != BigRational::from_integer(values[t].clone()) {
            return Err(Error::NotFullDimensional(format!(
                "lattice-point count at t = {t} disagrees with a degree-{d} polynomial"
            )));
        }
    }
    Ok(poly)
}

/// An exact flow that is strictly positive on every edge, if one exists.
/// Entries follow `g.edges()` and give the total over all copies of an edge.
///
/// Each edge gets `eps` routed from a supply vertex through it to the sink,
/// with `eps` small enough that the remaining supply at every source stays
/// positive; that remainder is then sent along any path to the sink.
pub fn positive_flow(g: &Multigraph, a: &NetflowVector) -> Option<Vec<BigRational>> {
    let v = g.vertex_count();
    let sink = v - 1;
    let edges = g.edges();
    let prefix = a.prefix();
    let sources: Vec<usize> = (0..v - 1).filter(|&k| prefix[k] > 0).collect();
    if edges.is_empty() {
        return prefix.iter().all(|&x| x == 0).then(Vec::new);
    }
    if sources.is_empty() {
        return None;
    }

    let mut out_edges = vec![Vec::new(); v];
    let mut in_edges = vec![Vec::new(); v];
    for (idx, e) in edges.iter().enumerate() {
        out_edges[e.source - 1].push(idx);
        in_edges[e.target - 1].push(idx);
    }
    // forward search from all sources: predecessor edge, origin source
    let mut from_source: Vec<Option<(Option<usize>, usize)>> = vec![None; v];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in &sources {
        from_source[s] = Some((None, s));
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        let origin = from_source[x].unwrap().1;
        for &idx in &out_edges[x] {
            let y = edges[idx].target - 1;
            if from_source[y].is_none() {
                from_source[y] = Some((Some(idx), origin));
                queue.push_back(y);
            }
        }
    }
    // backward search from the sink: next edge towards the sink
    let mut to_sink: Vec<Option<Option<usize>>> = vec![None; v];
    to_sink[sink] = Some(None);
    queue.push_back(sink);
    while let Some(y) = queue.pop_front() {
        for &idx in &in_edges[y] {
            let x = edges[idx].source - 1;
            if to_sink[x].is_none() {
                to_sink[x] = Some(Some(idx));
                queue.push_back(x);
            }
        }
    }
    if sources.iter().any(|&s| to_sink[s].is_none()) {
        return None;
    }

    let path_to = |mut x: usize, out: &mut Vec<usize>| {
        while let Some((Some(idx), _)) = from_source[x] {
            out.push(idx);
            x = edges[idx].source - 1;
        }
    };
    let path_from = |mut x: usize, out: &mut Vec<usize>| {
        while let Some(Some(idx)) = to_sink[x] {
            out.push(idx);
            x = edges[idx].target - 1;
        }
    };

    let mut paths: Vec<(usize, Vec<usize>)> = Vec::with_capacity(edges.len());
    for (idx, e) in edges.iter().enumerate() {
        let (i, j) = (e.source - 1, e.target - 1);
        let origin = from_source[i]?.1;
        to_sink[j]?;
        let mut p = vec![idx];
        path_to(i, &mut p);
        path_from(j, &mut p);
        paths.push((origin, p));
    }
    let mut uses = vec![0i64; v];
    for (origin, _) in &paths {
        uses[*origin] += 1;
    }
    let eps = sources
        .iter()
        .filter(|&&s| uses[s] > 0)
        .map(|&s| BigRational::new(prefix[s].into(), (2 * uses[s]).into()))
        .min()
        .unwrap_or_else(BigRational::one);

    let mut flow = vec![BigRational::zero(); edges.len()];
    for (_, p) in &paths {
        for &idx in p {
            flow[idx] += &eps;
        }
    }
    for &s in &sources {
        let rest = BigRational::from_integer(prefix[s].into()) - &eps * BigRational::from_integer(uses[s].into());
        let mut p = Vec::new();
        path_from(s, &mut p);
        for idx in p {
            flow[idx] += &rest;
        }
    }

    // conservation check against the full netflow
    let mut net = vec![BigRational::zero(); v];
    for (e, f) in edges.iter().zip(&flow) {
        net[e.source - 1] += f;
        net[e.target - 1] -= f;
    }
    let ok = net
        .iter()
        .zip(a.entries())
        .all(|(x, &want)| *x == BigRational::from_integer(want.into()))
        && flow.iter().all(|f| f.is_positive());
    ok.then_some(flow)
}
