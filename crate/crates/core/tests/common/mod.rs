//! Slow reference implementations used only by the tests.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use flowcat_core::ctengine::CTIntegrand;
use flowcat_core::Multigraph;

/// `K_G(b)` by trying every assignment of flow values to every copy of every
/// edge.
pub fn brute_kostant(g: &Multigraph, b: &[i64]) -> u64 {
    let slots: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .flat_map(|e| std::iter::repeat_n((e.source - 1, e.target - 1), e.multiplicity as usize))
        .collect();
    let bound: i64 = b.iter().filter(|&&x| x > 0).sum();
    let mut net = vec![0i64; g.vertex_count()];
    fn go(slots: &[(usize, usize)], k: usize, bound: i64, net: &mut Vec<i64>, b: &[i64]) -> u64 {
        if k == slots.len() {
            return (net.as_slice() == b) as u64;
        }
        let (s, t) = slots[k];
        let mut total = 0;
        for f in 0..=bound {
            net[s] += f;
            net[t] -= f;
            total += go(slots, k + 1, bound, net, b);
            net[s] -= f;
            net[t] += f;
        }
        total
    }
    go(&slots, 0, bound, &mut net, b)
}

type Laurent = HashMap<Vec<i64>, BigInt>;

/// Constant term by multiplying out truncated geometric series.
///
/// With weights `w_i = n - i`, every factor's terms rise in weighted degree
/// from its leading term, so only terms up to the weighted degree of the
/// wanted monomial can contribute.
pub fn series_ct(f: &CTIntegrand) -> BigInt {
    let n = f.vars;
    let w: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
    let grade = |e: &[i64]| -> i64 { e.iter().zip(&w).map(|(x, y)| x * y).sum() };
    let m = f.vandermonde as i64;
    let lowest: i64 = -m * (0..n).map(|j| j as i64 * w[j]).sum::<i64>();

    let mut total = BigInt::zero();
    for mono in &f.numerator {
        let want: Vec<i64> = f.x_pole.iter().zip(&mono.exponents).map(|(a, e)| a - e).collect();
        let room = grade(&want) - lowest;
        if room < 0 {
            continue;
        }
        let mut factors: Vec<Vec<(Vec<i64>, i64)>> = Vec::new();
        for i in 0..n {
            for _ in 0..f.one_minus_pole[i] {
                factors.push(
                    (0..=room / w[i])
                        .map(|r| {
                            let mut e = vec![0; n];
                            e[i] = r;
                            (e, r * w[i])
                        })
                        .collect(),
                );
            }
        }
        for j in 0..n {
            for i in 0..j {
                for _ in 0..m {
                    factors.push(
                        (0..=room / (j - i) as i64)
                            .map(|k| {
                                let mut e = vec![0; n];
                                e[i] = k;
                                e[j] = -k - 1;
                                (e, k * (j - i) as i64)
                            })
                            .collect(),
                    );
                }
            }
        }
        // (exponents, excess so far) -> coefficient
        let mut acc: HashMap<(Vec<i64>, i64), BigInt> = HashMap::new();
        acc.insert((vec![0; n], 0), BigInt::one());
        for factor in &factors {
            let mut next: HashMap<(Vec<i64>, i64), BigInt> = HashMap::new();
            for ((e, used), c) in &acc {
                for (fe, cost) in factor {
                    if used + cost > room {
                        continue;
                    }
                    let sum: Vec<i64> = e.iter().zip(fe).map(|(x, y)| x + y).collect();
                    *next.entry((sum, used + cost)).or_default() += c;
                }
            }
            acc = next;
        }
        let laurent: Laurent = acc.into_iter().fold(HashMap::new(), |mut m, ((e, _), c)| {
            *m.entry(e).or_default() += c;
            m
        });
        if let Some(c) = laurent.get(&want) {
            total += &mono.coeff * c;
        }
    }
    total
}

/// a-Tesler tableaux by checking every 0/1 filling of the shifted staircase
/// against the three conditions as literally stated. Returns counts by
/// dimension.
pub fn brute_f_vector(a: &[i64]) -> Vec<u64> {
    let n = a.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut counts: Vec<u64> = Vec::new();
    for code in 0u64..(1 << cells.len()) {
        let mut t = vec![vec![false; n]; n];
        for (k, &(i, j)) in cells.iter().enumerate() {
            t[i][j] = code >> k & 1 == 1;
        }
        let row_nonzero = |i: usize| t[i].iter().any(|&x| x);
        let c1 = (0..n).all(|i| a[i] <= 0 || row_nonzero(i));
        let c2 = cells.iter().all(|&(i, j)| i == j || !t[i][j] || row_nonzero(j));
        let c3 = (0..n).all(|j| !(a[j] == 0 && (0..j).all(|i| !t[i][j])) || !row_nonzero(j));
        if c1 && c2 && c3 {
            let ones: usize = t.iter().flatten().filter(|&&x| x).count();
            let rows = (0..n).filter(|&i| row_nonzero(i)).count();
            let d = ones - rows;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
    }
    counts
}

/// Catalan numbers from the recurrence alone.
pub fn catalan_by_recurrence(up_to: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::one()];
    for i in 0..up_to {
        let next = (0..=i).map(|k| &c[k] * &c[i - k]).sum();
        c.push(next);
    }
    c
}
