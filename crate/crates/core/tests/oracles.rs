mod common;

use num_bigint::{BigInt, BigUint};

use common::{brute_f_vector, brute_kostant, catalan_by_recurrence, series_ct};
use flowcat_core::closedform::{cry_product, syt_staircase, tesler_unit_volume, thm1_volume, thm2_volume};
use flowcat_core::ctengine::{
    catalan_polytope_ct, constant_term, morris_ct, tesler_ct, CTIntegrand, Monomial,
};
use flowcat_core::faces::{enumerate_tableaux, f_vector, FaceLimits};
use flowcat_core::graph::build_graph;
use flowcat_core::lidskii::{ehrhart_polynomial, lidskii_points, lidskii_volume, ps_volume};
use flowcat_core::{kostant, GraphKind, Multigraph, NetflowVector};

fn complete(v: usize) -> Multigraph {
    build_graph(&GraphKind::Complete { vertices: v }).unwrap()
}

fn small_graphs() -> Vec<Multigraph> {
    vec![
        complete(3),
        complete(4),
        build_graph(&GraphKind::Morris { vertices: 4, a: 1, b: 2, m: 1 }).unwrap(),
        build_graph(&GraphKind::Tesler { vertices: 3, a: 2, b: 1 }).unwrap(),
        Multigraph::new(4, [(1, 2, 2), (2, 3, 1), (3, 4, 2), (1, 4, 1)]).unwrap(),
    ]
}

fn small_netflows(v: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let count = 3usize.pow((v - 1) as u32);
    for code in 0..count {
        let p: Vec<i64> = (0..v - 1).map(|k| (code / 3usize.pow(k as u32) % 3) as i64).collect();
        out.push(NetflowVector::from_prefix(&p).entries().to_vec());
    }
    // a few with negative interior entries
    if v >= 3 {
        let mut b = vec![0; v];
        b[0] = 2;
        b[1] = -1;
        b[v - 1] = -1;
        out.push(b);
    }
    out
}

#[test]
fn kostant_matches_brute_force() {
    for g in small_graphs() {
        for b in small_netflows(g.vertex_count()) {
            assert_eq!(kostant(&g, &b).unwrap(), BigUint::from(brute_kostant(&g, &b)), "{g:?} {b:?}");
        }
    }
}

#[test]
fn lidskii_points_match_brute_force() {
    for g in small_graphs() {
        for b in small_netflows(g.vertex_count()) {
            if b[..b.len() - 1].iter().any(|&x| x < 0) {
                continue;
            }
            let a = NetflowVector::new(b.clone()).unwrap();
            assert_eq!(lidskii_points(&g, &a).unwrap(), BigUint::from(brute_kostant(&g, &b)), "{g:?} {b:?}");
        }
    }
}

#[test]
fn two_term_hand_expansion() {
    // (i1, i2) = (3, 0) gives 1 * K(0, 1, -1) and (2, 1) gives 3 * K(0, 0, 0)
    let g = complete(4);
    let restricted = complete(3);
    let hand = BigUint::from(brute_kostant(&restricted, &[0, 1, -1])) + 3 * brute_kostant(&restricted, &[0, 0, 0]);
    let a = NetflowVector::new(vec![1, 1, 0, -2]).unwrap();
    assert_eq!(lidskii_volume(&g, &a).unwrap(), hand);
    assert_eq!(hand, BigUint::from(4u32));
}

#[test]
fn ehrhart_interpolation_against_brute_counts() {
    // leading coefficient times d! from brute-force lattice point counts
    let g = complete(4);
    let a = NetflowVector::new(vec![1, 1, 0, -2]).unwrap();
    let p = ehrhart_polynomial(&g, &a).unwrap();
    for t in 0..=4 {
        let b: Vec<i64> = a.entries().iter().map(|x| x * t).collect();
        assert_eq!(p.eval(t), BigInt::from(brute_kostant(&g, &b)).into());
    }
    assert_eq!(p.normalized_volume(), lidskii_volume(&g, &a).unwrap());
}

#[test]
fn catalan_products_by_recurrence() {
    let cat = catalan_by_recurrence(8);
    let want: Vec<BigUint> = (3..=7).map(|n| cat[1..=n - 2].iter().product()).collect();
    let got: Vec<BigUint> = (3..=7).map(|n| ps_volume(&complete(n + 1)).unwrap()).collect();
    assert_eq!(got, want);
    assert_eq!(got, [1u32, 2, 10, 140, 5880].map(BigUint::from).to_vec());
    for n in 3..=7u64 {
        assert_eq!(cry_product(n), want[n as usize - 3]);
    }
}

#[test]
fn thm1_values_from_recurrence() {
    let cat = catalan_by_recurrence(6);
    for n in 2..=5u64 {
        let c2 = n * (n - 1) / 2;
        let want: BigUint = (BigUint::from(1u32) << (c2 - 1) as usize) * cat[1..=(n as usize - 2)].iter().product::<BigUint>();
        assert_eq!(thm1_volume(n).unwrap(), want);
    }
}

fn ct_cases() -> Vec<CTIntegrand> {
    let one = |v: usize| Monomial { coeff: 1.into(), exponents: vec![0; v] };
    vec![
        CTIntegrand::poles(vec![0, 0], vec![2, 2], 1).unwrap(),
        CTIntegrand::poles(vec![1, 0, 2], vec![1, 2, 1], 1).unwrap(),
        CTIntegrand::poles(vec![0, 1, 0], vec![2, 2, 2], 2).unwrap(),
        CTIntegrand::poles(vec![2, 2], vec![3, 1], 2).unwrap(),
        CTIntegrand::poles(vec![-1, 3], vec![1, 1], 1).unwrap(),
        CTIntegrand::new(
            3,
            vec![
                Monomial { coeff: 3.into(), exponents: vec![1, 0, 2] },
                Monomial { coeff: (-2).into(), exponents: vec![0, 2, 0] },
                one(3),
            ],
            vec![0, 0, 0],
            vec![0, 1, 0],
            1,
        )
        .unwrap(),
    ]
}

#[test]
fn constant_term_matches_series_oracle() {
    for f in ct_cases() {
        assert_eq!(constant_term(&f).unwrap(), series_ct(&f), "{f:?}");
    }
}

#[test]
fn named_constant_terms_match_series_oracle() {
    for n in 2..=4usize {
        let top = (n * (n - 1) / 2) as u64;
        let numerator = (0..=top)
            .map(|t| {
                let mut e = vec![0; n];
                e[n - 2] = t as i64;
                e[n - 1] = (top - t) as i64;
                Monomial { coeff: flowcat_core::combinat::binomial(top, t).into(), exponents: e }
            })
            .collect();
        let f = CTIntegrand::new(n, numerator, vec![], vec![], 1).unwrap();
        assert_eq!(catalan_polytope_ct(n).unwrap(), series_ct(&f));
    }
    for (n, a, b, m) in [(1, 2, 3, 1), (2, 0, 2, 1), (2, 1, 2, 1), (2, 0, 3, 2), (3, 1, 1, 1), (3, 0, 2, 1)] {
        let f = CTIntegrand::poles(vec![a as i64; n], vec![b; n], m).unwrap();
        assert_eq!(morris_ct(n, a, b, m).unwrap(), series_ct(&f), "{n} {a} {b} {m}");
    }
}

#[test]
fn tesler_ct_matches_expanded_series() {
    for (n, a, b) in [(2usize, 1u64, 1u64), (3, 1, 1), (3, 1, 2), (2, 2, 2)] {
        let top = a * (n * (n - 1) / 2) as u64 + n as u64 * (b - 1);
        // multinomial expansion of (x_1 + ... + x_n)^top
        let mut numerator = Vec::new();
        let mut stack = vec![(Vec::<u64>::new(), top)];
        while let Some((head, left)) = stack.pop() {
            if head.len() == n - 1 {
                let mut parts = head.clone();
                parts.push(left);
                let mut coeff = flowcat_core::combinat::factorial(top);
                for &p in &parts {
                    coeff /= flowcat_core::combinat::factorial(p);
                }
                let exponents = parts.iter().map(|&p| p as i64 + 1 - b as i64).collect();
                numerator.push(Monomial { coeff: coeff.into(), exponents });
                continue;
            }
            for k in 0..=left {
                let mut h = head.clone();
                h.push(k);
                stack.push((h, left - k));
            }
        }
        let f = CTIntegrand::new(n, numerator, vec![], vec![], a).unwrap();
        assert_eq!(tesler_ct(n, a, b).unwrap(), series_ct(&f), "{n} {a} {b}");
    }
}

#[test]
fn tesler_unit_volume_by_hook_lengths() {
    let cat = catalan_by_recurrence(8);
    for n in 2..=7u64 {
        let prod: BigUint = cat[..n as usize].iter().product();
        assert_eq!(tesler_unit_volume(n), syt_staircase(n) * prod);
    }
}

#[test]
fn cry_via_morris_graph() {
    for n in 2..=5u64 {
        let g = build_graph(&GraphKind::Morris { vertices: n as usize + 1, a: 1, b: 1, m: 1 }).unwrap();
        let v = lidskii_volume(&g, &NetflowVector::unit(n as usize + 1)).unwrap();
        assert_eq!(thm2_volume(n, 1, 1, 1).unwrap(), BigInt::from(v.clone()).into());
        assert_eq!(v, cry_product(n));
    }
}

#[test]
fn f_vectors_match_literal_conditions() {
    let lim = FaceLimits::default();
    let mut prefixes = Vec::new();
    for n in 1..=4usize {
        for code in 0..3usize.pow(n as u32) {
            prefixes.push((0..n).map(|k| (code / 3usize.pow(k as u32) % 3) as i64).collect::<Vec<_>>());
        }
    }
    for a in prefixes {
        let brute = brute_f_vector(&a);
        let dp: Vec<u64> = f_vector(&a, lim).unwrap().iter().map(|c| u64::try_from(c).unwrap()).collect();
        assert_eq!(dp, brute, "{a:?}");
        assert_eq!(enumerate_tableaux(&a, lim).unwrap().len() as u64, brute.iter().sum::<u64>());
    }
}
