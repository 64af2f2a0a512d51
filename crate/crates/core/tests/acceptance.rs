//! End-to-end checks of the headline results, all as exact integer
//! equalities. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use flowcat_core::closedform::{
    cry_product, morris_closed, tesler_unit_volume, thm1_volume, thm2_volume, thm3_volume,
};
use flowcat_core::ctengine::{catalan_polytope_ct, lemma_gen_sides, morris_ct, tesler_ct, verify_expand, verify_phi_bijection};
use flowcat_core::faces::{acyclic_support_vertices, enumerate_tableaux_with, vertex_count_formula, FaceLimits};
use flowcat_core::graph::build_graph;
use flowcat_core::lidskii::{ehrhart_polynomial, lidskii_points, lidskii_volume, ps_volume};
use flowcat_core::verify::{
    all_ones_netflow, lemma_gen_vectors, two_source_netflow, volume_cases, worked_values, SweepConfig,
    EXPAND_MAX_EXCESS,
};
use flowcat_core::{kostant, Exec, GraphKind, Multigraph, NetflowVector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph(kind: GraphKind) -> Multigraph {
    build_graph(&kind).expect("valid family parameters")
}

fn q(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

fn catalan_polytope() -> Outcome {
    let mut got = Vec::new();
    for n in 2..=5usize {
        let lid = lidskii_volume(&graph(GraphKind::Complete { vertices: n + 1 }), &two_source_netflow(n)).unwrap();
        let ct = catalan_polytope_ct(n).unwrap();
        let closed = thm1_volume(n as u64).unwrap();
        ensure(BigInt::from(lid.clone()) == ct && lid == closed, || format!("n={n}: {lid} {ct} {closed}"))?;
        got.push(lid);
    }
    let want = [1u32, 4, 64, 5120].map(BigUint::from);
    ensure(got == want, || format!("values {got:?}"))?;
    Ok("n=2..5 volumes 1 4 64 5120".into())
}

fn cry_volumes() -> Outcome {
    let mut got = Vec::new();
    for n in 3..=7usize {
        let v = ps_volume(&graph(GraphKind::Complete { vertices: n + 1 })).unwrap();
        ensure(v == cry_product(n as u64), || format!("n={n}: {v}"))?;
        got.push(v);
    }
    ensure(got == [1u32, 2, 10, 140, 5880].map(BigUint::from), || format!("values {got:?}"))?;
    Ok("n=3..7 volumes 1 2 10 140 5880".into())
}

fn morris_family_volumes() -> Outcome {
    let mut count = 0;
    for n in 2..=4usize {
        for a in 1..=2 {
            for b in 1..=2 {
                for m in 1..=2 {
                    let g = graph(GraphKind::Morris { vertices: n + 1, a, b, m });
                    let lid = lidskii_volume(&g, &NetflowVector::unit(n + 1)).unwrap();
                    let closed = thm2_volume(n as u64, a, b, m).unwrap();
                    ensure(q(&lid) == closed, || format!("n={n} a={a} b={b} m={m}: {lid} vs {closed}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn tesler_family_volumes() -> Outcome {
    let mut count = 0;
    for n in 2..=3usize {
        for a in 1..=2 {
            for b in 1..=2 {
                let g = graph(GraphKind::Tesler { vertices: n + 1, a, b });
                let lid = lidskii_volume(&g, &all_ones_netflow(n)).unwrap();
                let ct = tesler_ct(n, a, b).unwrap();
                let closed = thm3_volume(n as u64, a, b).unwrap();
                ensure(BigInt::from(lid.clone()) == ct && q(&lid) == closed, || {
                    format!("n={n} a={a} b={b}: {lid} {ct} {closed}")
                })?;
                if a == 1 && b == 1 {
                    let unit = tesler_unit_volume(n as u64);
                    let want = BigUint::from(if n == 2 { 1u32 } else { 4 });
                    ensure(lid == unit && unit == want, || format!("n={n} unit: {lid} {unit}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases, unit values 1 4"))
}

fn morris_identity() -> Outcome {
    let mut count = 0;
    for n in 1..=4usize {
        for a in 0..=2 {
            for b in 1..=3 {
                for m in 1..=2 {
                    let ct = morris_ct(n, a, b, m).unwrap();
                    let closed = morris_closed(n as u64, a, b, m).unwrap();
                    ensure(BigRational::from_integer(ct.clone()) == closed, || {
                        format!("n={n} a={a} b={b} m={m}: {ct} vs {closed}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn generating_lemma() -> Outcome {
    let mut count = 0;
    for n in 2..=5usize {
        for v in lemma_gen_vectors(n) {
            let (lhs, rhs) = lemma_gen_sides(n, &v).unwrap();
            let rep = verify_phi_bijection(n, &v, 5_000_000).unwrap();
            ensure(lhs == rhs, || format!("a={v:?}: {lhs} vs {rhs}"))?;
            ensure(rep.verified(), || format!("a={v:?}: bijection {rep:?}"))?;
            ensure(BigInt::from(rep.weighted_sum.clone()) == lhs, || format!("a={v:?}: weighted sum"))?;
            count += 1;
        }
    }
    Ok(format!("{count} vectors"))
}

fn expansion_lemma() -> Outcome {
    let mut count = 0;
    for n in 1..=3usize {
        for b in 0..=2 {
            for m in 0..=2 {
                let rep = verify_expand(n, b, m, EXPAND_MAX_EXCESS).unwrap();
                ensure(rep.equal, || format!("series n={n} b={b} m={m}"))?;
                count += 1;
            }
        }
    }
    let wrong: Vec<String> = worked_values()
        .into_iter()
        .filter(|(_, stated, computed)| stated != computed)
        .map(|(name, stated, computed)| format!("{name} stated {stated} computed {computed}"))
        .collect();
    ensure(wrong.is_empty(), || format!("series {count} cases ok; worked values: {}", wrong.join(", ")))?;
    Ok(format!("series {count} cases; worked r_2 h_2 r_3 h_3"))
}

fn vertex_counts() -> Outcome {
    let limits = FaceLimits::default();
    let dim0 = |a: &[i64]| enumerate_tableaux_with(a, limits, Some(0), Exec::default()).unwrap().len() as u64;
    for total in 0..=4usize {
        for r in 0..=total {
            let s = total - r;
            let mut a = vec![0i64; r + s + 2];
            a[0] = 1;
            a[r + 1] = 1;
            let want = vertex_count_formula(r as u64, s as u64);
            ensure(BigUint::from(dim0(&a)) == want, || format!("r={r} s={s}: {} vs {want}", dim0(&a)))?;
        }
    }
    for n in 2..=6usize {
        let a = two_source_netflow(n);
        let want = 2 * 3u64.pow(n as u32 - 2);
        ensure(dim0(a.prefix()) == want, || format!("catalan n={n}"))?;
    }
    let mut prefixes = 0;
    for n in 1..=4usize {
        for code in 0..3usize.pow(n as u32) {
            let a: Vec<i64> = (0..n).map(|k| (code / 3usize.pow(k as u32) % 3) as i64).collect();
            let net = NetflowVector::from_prefix(&a);
            let supports = acyclic_support_vertices(&net, limits).unwrap().len() as u64;
            ensure(supports == dim0(&a), || format!("a={a:?}: {supports} vs {}", dim0(&a)))?;
            prefixes += 1;
        }
    }
    Ok(format!("r+s<=4, n<=6, {prefixes} prefixes against acyclic supports"))
}

fn oracle_suite() -> Outcome {
    let cfg = SweepConfig::default();
    let cases = volume_cases(&cfg, 5).unwrap();
    for (name, g, a) in &cases {
        let lid = lidskii_volume(g, a).unwrap();
        let ehr = ehrhart_polynomial(g, a).unwrap().normalized_volume();
        ensure(lid == ehr, || format!("{name}: volume {lid} vs {ehr}"))?;
        let pts = lidskii_points(g, a).unwrap();
        let k = kostant(g, a.entries()).unwrap();
        ensure(pts == k, || format!("{name}: points {pts} vs {k}"))?;
    }
    Ok(format!("{} graph/netflow pairs", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("catalan polytope volume", catalan_polytope),
        ("CRY volumes", cry_volumes),
        ("Morris-graph volumes", morris_family_volumes),
        ("Tesler-graph volumes", tesler_family_volumes),
        ("Morris constant-term identity", morris_identity),
        ("generating-function lemma", generating_lemma),
        ("expansion lemma", expansion_lemma),
        ("vertex counts", vertex_counts),
        ("oracle agreement", oracle_suite),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
