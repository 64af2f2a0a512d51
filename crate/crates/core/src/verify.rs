//! Exhaustive sweeps that cross-check every method against the others.
//!
//! Each suite returns one [`Check`] per case; a case passes when all of its
//! computed values agree (or, for structural checks, when the flag holds).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closedform::{
    catalan, cry_product, morris_closed, tesler_unit_volume, thm1_volume, thm2_volume, thm3_volume,
};
use crate::combinat::choose2;
use crate::ctengine::{
    catalan_polytope_ct, lemma_gen_sides, morris_ct, tesler_ct_with, verify_expand, verify_phi_bijection,
    MatrixGrid,
};
use crate::faces::{
    acyclic_support_vertices, catalan_polytope_vertices, enumerate_forests, enumerate_tableaux_with, f_vector,
    forest_to_tableau, is_monotone, tableau_to_forest, vertex_count_formula, FaceLimits,
};
use crate::graph::{build_graph, kostant, GraphKind, Multigraph, NetflowVector};
use crate::lidskii::{ehrhart_polynomial_with, lidskii_points_with, lidskii_volume_with, ps_volume};
use crate::{Error, Exec, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Morris,
    LemmaGen,
    LemmaExpand,
    Faces,
    LidskiiVsEhrhart,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Thm1,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Morris,
        Suite::LemmaGen,
        Suite::LemmaExpand,
        Suite::Faces,
        Suite::LidskiiVsEhrhart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Morris => "morris",
            Suite::LemmaGen => "lemma-gen",
            Suite::LemmaExpand => "lemma-expand",
            Suite::Faces => "faces",
            Suite::LidskiiVsEhrhart => "lidskii-vs-ehrhart",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub case: String,
    pub values: BTreeMap<String, String>,
    pub pass: bool,
}

impl Check {
    /// Passes iff every value was computed and all are equal.
    fn agreeing(suite: Suite, case: String, values: Vec<(&str, Result<String>)>) -> Check {
        let mut pass = true;
        let mut first: Option<String> = None;
        let mut out = BTreeMap::new();
        for (name, v) in values {
            let text = match v {
                Ok(s) => {
                    if first.get_or_insert_with(|| s.clone()) != &s {
                        pass = false;
                    }
                    s
                }
                Err(e) => {
                    pass = false;
                    format!("error: {e}")
                }
            };
            out.insert(name.to_string(), text);
        }
        Check { suite, case, values: out, pass }
    }

    fn flagged(suite: Suite, case: String, values: Vec<(&str, String)>, pass: bool) -> Check {
        let values = values.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Check { suite, case, values, pass }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    /// Caps the `n` range of every suite; `None` keeps each suite's default.
    pub max_n: Option<usize>,
    pub exec: Exec,
    pub limits: FaceLimits,
    /// Cap on matrices enumerated per bijection check.
    pub max_matrices: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: None,
            exec: Exec::default(),
            limits: FaceLimits::default(),
            max_matrices: 2_000_000,
        }
    }
}

impl SweepConfig {
    fn upto(&self, default: usize) -> usize {
        self.max_n.map_or(default, |m| m.min(default))
    }
}

pub fn run_suite(suite: Suite, cfg: &SweepConfig) -> Result<Vec<Check>> {
    match suite {
        Suite::Thm1 => thm1_suite(cfg),
        Suite::Thm2 => thm2_suite(cfg),
        Suite::Thm3 => thm3_suite(cfg),
        Suite::Morris => Ok(morris_suite(cfg)),
        Suite::LemmaGen => lemma_gen_suite(cfg),
        Suite::LemmaExpand => Ok(lemma_expand_suite(cfg)),
        Suite::Faces => Ok(faces_suite(cfg)),
        Suite::LidskiiVsEhrhart => lidskii_vs_ehrhart_suite(cfg),
    }
}

fn s<T: ToString>(r: Result<T>) -> Result<String> {
    r.map(|v| v.to_string())
}

fn graph(kind: GraphKind) -> Result<Multigraph> {
    build_graph(&kind)
}

/// `(1, 1, 0, ..., 0, -2)` on `n + 1` vertices.
pub fn two_source_netflow(n: usize) -> NetflowVector {
    let mut p = vec![0; n];
    p[0] = 1;
    p[1] = 1;
    NetflowVector::from_prefix(&p)
}

/// `(1, ..., 1, -n)` on `n + 1` vertices.
pub fn all_ones_netflow(n: usize) -> NetflowVector {
    NetflowVector::from_prefix(&vec![1; n])
}

/// Graph/netflow pairs behind the first four volume sweeps.
pub fn volume_cases(cfg: &SweepConfig, max_vertices: usize) -> Result<Vec<(String, Multigraph, NetflowVector)>> {
    let mut out = Vec::new();
    for n in 2..=cfg.upto(5).min(max_vertices - 1) {
        let g = graph(GraphKind::Complete { vertices: n + 1 })?;
        out.push((format!("complete:{}/two-source", n + 1), g, two_source_netflow(n)));
    }
    for n in 3..=cfg.upto(7).min(max_vertices - 1) {
        let g = graph(GraphKind::Complete { vertices: n + 1 })?;
        out.push((format!("complete:{}/unit", n + 1), g, NetflowVector::unit(n + 1)));
    }
    for n in 2..=cfg.upto(4).min(max_vertices - 1) {
        for (a, b, m) in triples([1, 2], [1, 2], [1, 2]) {
            let g = graph(GraphKind::Morris { vertices: n + 1, a, b, m })?;
            out.push((format!("morris:{},{a},{b},{m}/unit", n + 1), g, NetflowVector::unit(n + 1)));
        }
    }
    for n in 2..=cfg.upto(3).min(max_vertices - 1) {
        for (a, b, _) in triples([1, 2], [1, 2], [0]) {
            let g = graph(GraphKind::Tesler { vertices: n + 1, a, b })?;
            out.push((format!("tesler:{},{a},{b}/ones", n + 1), g, all_ones_netflow(n)));
        }
    }
    Ok(out)
}

fn triples<const A: usize, const B: usize, const C: usize>(
    xs: [u64; A],
    ys: [u64; B],
    zs: [u64; C],
) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for &x in &xs {
        for &y in &ys {
            for &z in &zs {
                out.push((x, y, z));
            }
        }
    }
    out
}

fn thm1_suite(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let ns: Vec<usize> = (2..=cfg.upto(5)).collect();
    Ok(cfg.exec.map(&ns, |&n| {
        let volume = graph(GraphKind::Complete { vertices: n + 1 })
            .and_then(|g| lidskii_volume_with(&g, &two_source_netflow(n), Exec::Sequential));
        Check::agreeing(
            Suite::Thm1,
            format!("n={n}"),
            vec![
                ("lidskii", s(volume)),
                ("ct", s(catalan_polytope_ct(n))),
                ("closed", s(thm1_volume(n as u64))),
            ],
        )
    }))
}

fn thm2_suite(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let cry: Vec<usize> = (3..=cfg.upto(7)).collect();
    checks.extend(cfg.exec.map(&cry, |&n| {
        let ps = graph(GraphKind::Complete { vertices: n + 1 }).and_then(|g| ps_volume(&g));
        Check::agreeing(
            Suite::Thm2,
            format!("cry n={n}"),
            vec![
                ("ps", s(ps)),
                ("catalan-product", Ok(cry_product(n as u64).to_string())),
                ("closed", s(thm2_volume(n as u64, 1, 1, 1))),
            ],
        )
    }));
    let mut cases = Vec::new();
    for n in 2..=cfg.upto(4) {
        for t in triples([1, 2], [1, 2], [1, 2]) {
            cases.push((n, t));
        }
    }
    checks.extend(cfg.exec.map(&cases, |&(n, (a, b, m))| {
        let volume = graph(GraphKind::Morris { vertices: n + 1, a, b, m })
            .and_then(|g| lidskii_volume_with(&g, &NetflowVector::unit(n + 1), Exec::Sequential));
        let ct = if a >= 1 { morris_ct(n - 1, a - 1, b, m) } else { Err(Error::InvalidArgument("a = 0".into())) };
        Check::agreeing(
            Suite::Thm2,
            format!("n={n} a={a} b={b} m={m}"),
            vec![
                ("lidskii", s(volume)),
                ("ct", s(ct)),
                ("closed", s(thm2_volume(n as u64, a, b, m))),
            ],
        )
    }));
    Ok(checks)
}

fn thm3_suite(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut cases = Vec::new();
    for n in 2..=cfg.upto(3) {
        for (a, b, _) in triples([1, 2], [1, 2], [0]) {
            cases.push((n, a, b));
        }
    }
    checks.extend(cfg.exec.map(&cases, |&(n, a, b)| {
        let volume = graph(GraphKind::Tesler { vertices: n + 1, a, b })
            .and_then(|g| lidskii_volume_with(&g, &all_ones_netflow(n), Exec::Sequential));
        let mut values = vec![
            ("lidskii", s(volume)),
            ("ct", s(tesler_ct_with(n, a, b, Exec::Sequential))),
            ("closed", s(thm3_volume(n as u64, a, b))),
        ];
        if a == 1 && b == 1 {
            values.push(("unit-formula", Ok(tesler_unit_volume(n as u64).to_string())));
        }
        Check::agreeing(Suite::Thm3, format!("n={n} a={a} b={b}"), values)
    }));
    // constant term against the product on a wider range
    let mut wide = Vec::new();
    for n in 2..=cfg.upto(4) {
        for (a, b, _) in triples([0, 1, 2], [1, 2], [0]) {
            if (b as i64 - 1) * n as i64 + (a * choose2(n as u64)) as i64 >= 0 {
                wide.push((n, a, b));
            }
        }
    }
    checks.extend(cfg.exec.map(&wide, |&(n, a, b)| {
        Check::agreeing(
            Suite::Thm3,
            format!("ct n={n} a={a} b={b}"),
            vec![
                ("ct", s(tesler_ct_with(n, a, b, Exec::Sequential))),
                ("closed", s(thm3_volume(n as u64, a, b))),
            ],
        )
    }));
    Ok(checks)
}

fn morris_suite(cfg: &SweepConfig) -> Vec<Check> {
    let mut cases = Vec::new();
    for n in 1..=cfg.upto(4) {
        for a in 0..=2 {
            for b in 1..=3 {
                for m in 1..=2 {
                    cases.push((n, a, b, m));
                }
            }
        }
    }
    cfg.exec.map(&cases, |&(n, a, b, m)| {
        Check::agreeing(
            Suite::Morris,
            format!("n={n} a={a} b={b} m={m}"),
            vec![
                ("ct", s(morris_ct(n, a, b, m))),
                ("closed", s(morris_closed(n as u64, a, b, m))),
            ],
        )
    })
}

/// All vectors in `{-1, 0, 1, 2}^n` with `C(n,2) - sum >= 0`.
pub fn lemma_gen_vectors(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let top = choose2(n as u64) as i64;
    for code in 0..4usize.pow(n as u32) {
        let v: Vec<i64> = (0..n).map(|k| (code / 4usize.pow(k as u32) % 4) as i64 - 1).collect();
        if top - v.iter().sum::<i64>() >= 0 {
            out.push(v);
        }
    }
    out
}

fn lemma_gen_suite(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut cases = Vec::new();
    for n in 2..=cfg.upto(5) {
        cases.extend(lemma_gen_vectors(n));
    }
    Ok(cfg.exec.map(&cases, |v| {
        let n = v.len();
        let case = format!("n={n} a={v:?}");
        let sides = lemma_gen_sides(n, v);
        let phi = verify_phi_bijection(n, v, cfg.max_matrices);
        match (sides, phi) {
            (Ok((lhs, rhs)), Ok(rep)) => {
                let pass = lhs == rhs && rep.verified() && lhs == rep.weighted_sum.clone().into();
                Check::flagged(
                    Suite::LemmaGen,
                    case,
                    vec![
                        ("lhs", lhs.to_string()),
                        ("rhs", rhs.to_string()),
                        ("bijection-weighted-sum", rep.weighted_sum.to_string()),
                        ("bijection", rep.verified().to_string()),
                    ],
                    pass,
                )
            }
            (a, b) => {
                let err = a.err().or(b.err()).map(|e| e.to_string()).unwrap_or_default();
                Check::flagged(Suite::LemmaGen, case, vec![("error", err)], false)
            }
        }
    }))
}

/// The 4x4 matrix used to illustrate row and hook sums.
pub fn worked_matrix() -> MatrixGrid {
    MatrixGrid::from_rows(&[vec![4, 2, 5, 7], vec![0, 1, 2, 3], vec![0, 0, 1, 8], vec![0, 0, 0, 3]])
        .expect("rectangular")
}

/// `(name, stated value, computed value)` for the illustrated sums, with
/// one-based indices as in the text.
pub fn worked_values() -> Vec<(&'static str, i64, i64)> {
    let a = worked_matrix();
    vec![
        ("r_2", 6, a.row_sum(1) as i64),
        ("h_2", 3, a.hook_sum(1)),
        ("r_3", 9, a.row_sum(2) as i64),
        ("h_3", 0, a.hook_sum(2)),
    ]
}

pub const EXPAND_MAX_EXCESS: u64 = 5;

fn lemma_expand_suite(cfg: &SweepConfig) -> Vec<Check> {
    let cases: Vec<(usize, u64, u64)> = (1..=cfg.upto(3))
        .flat_map(|n| triples([0, 1, 2], [0, 1, 2], [0]).into_iter().map(move |(b, m, _)| (n, b, m)))
        .collect();
    let mut checks = cfg.exec.map(&cases, |&(n, b, m)| {
        let case = format!("n={n} b={b} m={m} excess<={EXPAND_MAX_EXCESS}");
        match verify_expand(n, b, m, EXPAND_MAX_EXCESS) {
            Ok(rep) => Check::flagged(
                Suite::LemmaExpand,
                case,
                vec![
                    ("series-terms", rep.series_terms.to_string()),
                    ("matrix-terms", rep.matrix_terms.to_string()),
                ],
                rep.equal,
            ),
            Err(e) => Check::flagged(Suite::LemmaExpand, case, vec![("error", e.to_string())], false),
        }
    });
    for (name, stated, computed) in worked_values() {
        checks.push(Check::agreeing(
            Suite::LemmaExpand,
            format!("worked {name}"),
            vec![("stated", Ok(stated.to_string())), ("computed", Ok(computed.to_string()))],
        ));
    }
    checks
}

fn faces_suite(cfg: &SweepConfig) -> Vec<Check> {
    let limits = cfg.limits;
    let dim0 = |a: &[i64]| -> Result<String> {
        enumerate_tableaux_with(a, limits, Some(0), Exec::Sequential).map(|v| v.len().to_string())
    };
    let mut checks = Vec::new();

    let mut rs = Vec::new();
    for total in 0..=cfg.upto(6).saturating_sub(2).min(4) {
        for r in 0..=total {
            rs.push((r, total - r));
        }
    }
    checks.extend(cfg.exec.map(&rs, |&(r, s_)| {
        let mut a = vec![0i64; r + s_ + 2];
        a[0] = 1;
        a[r + 1] = 1;
        Check::agreeing(
            Suite::Faces,
            format!("two-source r={r} s={s_}"),
            vec![
                ("tableaux", dim0(&a)),
                ("f-vector", f_vector(&a, limits).map(|f| f[0].to_string())),
                ("formula", Ok(vertex_count_formula(r as u64, s_ as u64).to_string())),
            ],
        )
    }));

    let ns: Vec<usize> = (2..=cfg.upto(6)).collect();
    checks.extend(cfg.exec.map(&ns, |&n| {
        let a = two_source_netflow(n);
        Check::agreeing(
            Suite::Faces,
            format!("catalan n={n}"),
            vec![
                ("tableaux", dim0(a.prefix())),
                ("formula", s(catalan_polytope_vertices(n as u64))),
            ],
        )
    }));

    // every prefix in {0,1,2}^n for n + 1 <= 5
    let mut prefixes = Vec::new();
    for n in 1..=cfg.upto(4) {
        for code in 0..3usize.pow(n as u32) {
            prefixes.push((0..n).map(|k| (code / 3usize.pow(k as u32) % 3) as i64).collect::<Vec<_>>());
        }
    }
    checks.extend(cfg.exec.map(&prefixes, |a| {
        let net = NetflowVector::from_prefix(a);
        let forests = enumerate_forests(a, limits);
        let bijection = enumerate_tableaux_with(a, limits, Some(0), Exec::Sequential).and_then(|ts| {
            let mut images = HashSet::with_capacity(ts.len());
            for (t, _) in &ts {
                let f = tableau_to_forest(t, a)?;
                if forest_to_tableau(&f, a.len())? != *t || !f.fits(a) {
                    return Ok(false);
                }
                images.insert(f);
            }
            let family = forests.as_ref().map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(images.len() == ts.len() && family.iter().all(|f| images.contains(f)))
        });
        let monotone = enumerate_tableaux_with(a, limits, None, Exec::Sequential).map(|all| is_monotone(&all));
        let mut check = Check::agreeing(
            Suite::Faces,
            format!("vertices a={a:?}"),
            vec![
                ("tableaux", dim0(a)),
                ("acyclic-supports", s(acyclic_support_vertices(&net, limits).map(|v| v.len()))),
                ("forests", s(forests.map(|f| f.len()))),
            ],
        );
        let extra_ok = matches!(bijection, Ok(true)) && matches!(monotone, Ok(true));
        check.values.insert("bijection".into(), format!("{bijection:?}"));
        check.values.insert("monotone".into(), format!("{monotone:?}"));
        check.pass &= extra_ok;
        check
    }));
    checks
}

fn lidskii_vs_ehrhart_suite(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let cases = volume_cases(cfg, 5)?;
    let mut checks = cfg.exec.map(&cases, |(name, g, a)| {
        let ehr = ehrhart_polynomial_with(g, a, Exec::Sequential).map(|p| p.normalized_volume());
        Check::agreeing(
            Suite::LidskiiVsEhrhart,
            format!("volume {name}"),
            vec![
                ("lidskii", s(lidskii_volume_with(g, a, Exec::Sequential))),
                ("ehrhart", s(ehr)),
            ],
        )
    });
    checks.extend(cfg.exec.map(&cases, |(name, g, a)| {
        Check::agreeing(
            Suite::LidskiiVsEhrhart,
            format!("points {name}"),
            vec![
                ("lidskii", s(lidskii_points_with(g, a, Exec::Sequential))),
                ("kostant", s(kostant(g, a.entries()))),
            ],
        )
    }));
    Ok(checks)
}

/// Catalan numbers through `Cat(i + 1) = sum_k Cat(k) Cat(i - k)`.
pub fn catalan_recurrence_holds(up_to: u64) -> bool {
    (0..up_to).all(|i| catalan(i + 1) == (0..=i).map(|k| catalan(k) * catalan(i - k)).sum())
}
