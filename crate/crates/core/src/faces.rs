//! Faces of `F_{K_{n+1}}(a_1, ..., a_n, -sum a)` through a-Tesler tableaux.
//!
//! A tableau is a 0/1 filling of the shifted staircase `{(i, j) : i <= j}`.
//! It is a-valid when
//!
//! 1. row `i` is nonzero whenever `a_i > 0`,
//! 2. `T(i, j) = 1` with `i < j` forces row `j` to be nonzero,
//! 3. row `j` is zero when `a_j = 0` and column `j` has no 1 above the diagonal.
//!
//! Read top to bottom, the three conditions say exactly: row `j` is nonzero
//! iff `a_j > 0` or column `j` already has a 1 above it. Every check is local
//! to the row being filled, which is what the enumerator and the counting DP
//! use. Faces of dimension `d` correspond to tableaux of dimension `d`.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::NetflowVector;
use crate::{Error, Exec, Result};

/// Rows are bitmasks over zero-based columns; bit `j` of row `i` is `T(i+1, j+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct TeslerTableau {
    n: usize,
    rows: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    n: usize,
    /// One-based `(i, j)` of the cells holding 1.
    cells: Vec<(usize, usize)>,
}

impl TryFrom<TableauJson> for TeslerTableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        TeslerTableau::from_cells(j.n, &j.cells)
    }
}

impl From<TeslerTableau> for TableauJson {
    fn from(t: TeslerTableau) -> Self {
        TableauJson { n: t.n, cells: t.cells() }
    }
}

pub const MAX_TABLEAU_SIZE: usize = 31;

impl TeslerTableau {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TABLEAU_SIZE {
            return Err(Error::InvalidArgument(format!(
                "tableau size must be in 1..={MAX_TABLEAU_SIZE}, got {n}"
            )));
        }
        Ok(TeslerTableau { n, rows: vec![0; n] })
    }

    /// From one-based cells `(i, j)` with `i <= j`.
    pub fn from_cells(n: usize, cells: &[(usize, usize)]) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for &(i, j) in cells {
            if !(1 <= i && i <= j && j <= n) {
                return Err(Error::InvalidArgument(format!(
                    "cell ({i}, {j}) is outside the shifted staircase of size {n}"
                )));
            }
            t.rows[i - 1] |= 1 << (j - 1);
        }
        Ok(t)
    }

    /// From rows written as in the staircase: row `i` (one-based) lists
    /// `T(i, i), ..., T(i, n)`.
    pub fn from_staircase(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(Error::InvalidArgument(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n - i
                )));
            }
            for (offset, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => cells.push((i + 1, i + 1 + offset)),
                    _ => return Err(Error::InvalidArgument("entries must be 0 or 1".into())),
                }
            }
        }
        Self::from_cells(n, &cells)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// One-based access.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &r) in self.rows.iter().enumerate() {
            for j in i..self.n {
                if r >> j & 1 == 1 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn ones(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    pub fn nonzero_rows(&self) -> u32 {
        self.rows.iter().filter(|&&r| r != 0).count() as u32
    }

    /// Whether column `j` (zero-based) has a 1 strictly above the diagonal.
    fn column_hit(&self, j: usize) -> bool {
        self.rows[..j].iter().any(|r| r >> j & 1 == 1)
    }

    pub fn is_valid_for(&self, a: &[i64]) -> bool {
        if a.len() != self.n || a.iter().any(|&x| x < 0) {
            return false;
        }
        (0..self.n).all(|j| {
            let shape_ok = self.rows[j] & ((1u32 << j) - 1) == 0 && self.rows[j] >> self.n == 0;
            shape_ok && (self.rows[j] != 0) == (a[j] > 0 || self.column_hit(j))
        })
    }

    /// Entrywise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(x, y)| x & !y == 0)
    }
}

/// Number of 1s minus number of nonzero rows.
pub fn tableau_dimension(t: &TeslerTableau) -> u64 {
    (t.ones() - t.nonzero_rows()) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceLimits {
    pub max_n: usize,
    pub max_items: usize,
}

impl Default for FaceLimits {
    fn default() -> Self {
        FaceLimits { max_n: 7, max_items: 1_000_000 }
    }
}

fn check_prefix(a: &[i64], limits: FaceLimits) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidNetflow("netflow prefix is empty".into()));
    }
    if let Some(x) = a.iter().find(|&&x| x < 0) {
        return Err(Error::InvalidNetflow(format!("entries must be nonnegative, found {x}")));
    }
    if a.len() > limits.max_n.min(MAX_TABLEAU_SIZE) {
        return Err(Error::BoundExceeded(format!(
            "n = {} exceeds the enumeration bound {}",
            a.len(),
            limits.max_n.min(MAX_TABLEAU_SIZE)
        )));
    }
    Ok(())
}

pub fn enumerate_tableaux(a: &[i64], limits: FaceLimits) -> Result<Vec<(TeslerTableau, u64)>> {
    enumerate_tableaux_with(a, limits, None, Exec::default())
}

/// All a-valid tableaux (of dimension at most `max_dim`, if given) with
/// their dimensions, in lexicographic order of the row masks.
pub fn enumerate_tableaux_with(
    a: &[i64],
    limits: FaceLimits,
    max_dim: Option<u64>,
    exec: Exec,
) -> Result<Vec<(TeslerTableau, u64)>> {
    check_prefix(a, limits)?;
    let n = a.len();
    let budget = max_dim.unwrap_or(u64::MAX);
    let first: Vec<u32> = row_choices(n, 0, a[0] > 0, budget).collect();
    let found = AtomicUsize::new(0);
    let walker = Walker { a, n, budget, limits, found: &found };
    let branches = exec.map(&first, |&row| {
        let mut t = TeslerTableau { n, rows: vec![0; n] };
        t.rows[0] = row;
        let mut out = Vec::new();
        walker.walk(&mut t, 1, row_dim(row), &mut out).map(|_| out)
    });
    let mut all = Vec::new();
    for b in branches {
        all.extend(b?);
    }
    Ok(all)
}

fn row_dim(row: u32) -> u64 {
    row.count_ones().saturating_sub(1) as u64
}

/// Possible contents of zero-based row `i`: all nonempty subsets of columns
/// `i..n` with at most `budget + 1` ones if the row must be nonzero, else
/// only the empty row.
fn row_choices(n: usize, i: usize, nonzero: bool, budget: u64) -> Box<dyn Iterator<Item = u32>> {
    if !nonzero {
        return Box::new(std::iter::once(0));
    }
    let width = n - i;
    Box::new(
        (1u32..(1u32 << width))
            .filter(move |s| (s.count_ones() as u64) <= budget.saturating_add(1))
            .map(move |s| s << i),
    )
}

struct Walker<'a> {
    a: &'a [i64],
    n: usize,
    budget: u64,
    limits: FaceLimits,
    found: &'a AtomicUsize,
}

impl Walker<'_> {
    fn walk(&self, t: &mut TeslerTableau, i: usize, dim: u64, out: &mut Vec<(TeslerTableau, u64)>) -> Result<()> {
        if dim > self.budget {
            return Ok(());
        }
        if i == self.n {
            if self.found.fetch_add(1, Ordering::Relaxed) >= self.limits.max_items {
                return Err(Error::BoundExceeded(format!(
                    "more than {} tableaux",
                    self.limits.max_items
                )));
            }
            out.push((t.clone(), dim));
            return Ok(());
        }
        let nonzero = self.a[i] > 0 || t.column_hit(i);
        for row in row_choices(self.n, i, nonzero, self.budget - dim) {
            t.rows[i] = row;
            self.walk(t, i + 1, dim + row_dim(row), out)?;
        }
        t.rows[i] = 0;
        Ok(())
    }
}

/// Number of a-valid tableaux of each dimension, trailing zeros removed.
///
/// Counts without listing: the state after row `i` is the set of later
/// columns that already hold a 1 above the diagonal.
pub fn f_vector(a: &[i64], limits: FaceLimits) -> Result<Vec<BigUint>> {
    check_prefix(a, limits)?;
    let n = a.len();
    let mut states: HashMap<u32, Vec<BigUint>> = HashMap::new();
    states.insert(0, vec![BigUint::one()]);
    for i in 0..n {
        let mut next: HashMap<u32, Vec<BigUint>> = HashMap::new();
        for (mask, poly) in states {
            let nonzero = a[i] > 0 || mask >> i & 1 == 1;
            let rest = mask & !((2u32 << i) - 1);
            for row in row_choices(n, i, nonzero, u64::MAX) {
                let shift = row_dim(row) as usize;
                let key = rest | (row & !(1u32 << i));
                let slot = next.entry(key).or_default();
                if slot.len() < poly.len() + shift {
                    slot.resize(poly.len() + shift, BigUint::zero());
                }
                for (d, c) in poly.iter().enumerate() {
                    slot[d + shift] += c;
                }
            }
        }
        states = next;
    }
    let mut total: Vec<BigUint> = Vec::new();
    for poly in states.into_values() {
        if total.len() < poly.len() {
            total.resize(poly.len(), BigUint::zero());
        }
        for (d, c) in poly.into_iter().enumerate() {
            total[d] += c;
        }
    }
    while total.len() > 1 && total.last().is_some_and(Zero::is_zero) {
        total.pop();
    }
    Ok(total)
}

/// Whether `T1 <= T2` entrywise implies `dim T1 <= dim T2` across the family.
pub fn is_monotone(family: &[(TeslerTableau, u64)]) -> bool {
    family.iter().all(|(t1, d1)| {
        family.iter().all(|(t2, d2)| !t1.le(t2) || d1 <= d2)
    })
}

/// Decreasing forest on a subset of `[n]`; `parents[k]` is the parent of
/// `vertices[k]`, or 0 for a root. Parents are always larger than children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ForestJson", into = "ForestJson")]
pub struct DecreasingForest {
    n: usize,
    vertices: Vec<usize>,
    parents: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ForestJson {
    n: usize,
    vertices: Vec<usize>,
    parents: Vec<usize>,
}

impl TryFrom<ForestJson> for DecreasingForest {
    type Error = Error;
    fn try_from(j: ForestJson) -> Result<Self> {
        DecreasingForest::new(j.n, j.vertices.into_iter().zip(j.parents).collect())
    }
}

impl From<DecreasingForest> for ForestJson {
    fn from(f: DecreasingForest) -> Self {
        ForestJson { n: f.n, vertices: f.vertices, parents: f.parents }
    }
}

impl DecreasingForest {
    /// From `(vertex, parent)` pairs, parent 0 for roots.
    pub fn new(n: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        let vertices: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated forest vertex".into()));
        }
        for &(v, p) in &pairs {
            if v == 0 || v > n {
                return Err(Error::InvalidArgument(format!("vertex {v} is outside [1, {n}]")));
            }
            if p != 0 && (p <= v || vertices.binary_search(&p).is_err()) {
                return Err(Error::InvalidArgument(format!(
                    "parent {p} of {v} must be a larger vertex of the forest"
                )));
            }
        }
        let parents = pairs.iter().map(|p| p.1).collect();
        Ok(DecreasingForest { n, vertices, parents })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let k = self.vertices.binary_search(&v).ok()?;
        (self.parents[k] != 0).then_some(self.parents[k])
    }

    pub fn roots(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .zip(&self.parents)
            .filter(|(_, &p)| p == 0)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .copied()
            .filter(|v| !self.parents.contains(v))
            .collect()
    }

    /// `supp(a) ⊆ V` and every leaf lies in `supp(a)`.
    pub fn fits(&self, a: &[i64]) -> bool {
        a.len() == self.n
            && (1..=self.n).all(|v| a[v - 1] == 0 || self.vertices.binary_search(&v).is_ok())
            && self.leaves().iter().all(|&v| a[v - 1] > 0)
    }
}

/// Dimension-0 tableau to forest: nonzero rows are the vertices, an
/// off-diagonal 1 at `(i, j)` makes `j` the parent of `i`, a diagonal 1 makes
/// `i` a root.
pub fn tableau_to_forest(t: &TeslerTableau, a: &[i64]) -> Result<DecreasingForest> {
    if !t.is_valid_for(a) {
        return Err(Error::InvalidArgument("tableau is not valid for this netflow".into()));
    }
    if tableau_dimension(t) != 0 {
        return Err(Error::InvalidArgument("tableau has positive dimension".into()));
    }
    let pairs = t
        .rows
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != 0)
        .map(|(i, &r)| {
            let j = r.trailing_zeros() as usize;
            (i + 1, if j == i { 0 } else { j + 1 })
        })
        .collect();
    DecreasingForest::new(t.n, pairs)
}

pub fn forest_to_tableau(f: &DecreasingForest, n: usize) -> Result<TeslerTableau> {
    if f.n != n {
        return Err(Error::LengthMismatch { expected: n, got: f.n });
    }
    let cells: Vec<(usize, usize)> = f
        .vertices
        .iter()
        .zip(&f.parents)
        .map(|(&v, &p)| (v, if p == 0 { v } else { p }))
        .collect();
    TeslerTableau::from_cells(n, &cells)
}

/// Decreasing forests on `V` with `supp(a) ⊆ V ⊆ [n]` whose leaves lie in
/// `supp(a)`, built directly by choosing a vertex set and parents.
pub fn enumerate_forests(a: &[i64], limits: FaceLimits) -> Result<Vec<DecreasingForest>> {
    check_prefix(a, limits)?;
    let n = a.len();
    let support: u32 = (0..n).filter(|&i| a[i] > 0).fold(0, |m, i| m | 1 << i);
    let mut out = Vec::new();
    for extra in 0u32..(1 << n) {
        if extra & support != 0 {
            continue;
        }
        let set = extra | support;
        let vs: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).map(|i| i + 1).collect();
        let mut parents = vec![0usize; vs.len()];
        forest_parents(&vs, 0, &mut parents, &mut |ps| {
            let f = DecreasingForest { n, vertices: vs.clone(), parents: ps.to_vec() };
            if f.fits(a) {
                if out.len() >= limits.max_items {
                    return Err(Error::BoundExceeded(format!("more than {} forests", limits.max_items)));
                }
                out.push(f);
            }
            Ok(())
        })?;
    }
    Ok(out)
}

fn forest_parents(
    vs: &[usize],
    k: usize,
    parents: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if k == vs.len() {
        return emit(parents);
    }
    for choice in std::iter::once(0).chain(vs[k + 1..].iter().copied()) {
        parents[k] = choice;
        forest_parents(vs, k + 1, parents, emit)?;
    }
    Ok(())
}

/// `2^{r+1} 3^s`: vertices for the netflow `(1, 0^r, 1, 0^s, -2)`.
pub fn vertex_count_formula(r: u64, s: u64) -> BigUint {
    (BigUint::one() << (r + 1) as usize) * BigUint::from(3u32).pow(s as u32)
}

/// `2 * 3^{n-2}`: vertices of `F_{K_{n+1}}(1, 1, 0, ..., 0, -2)`.
pub fn catalan_polytope_vertices(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    Ok(vertex_count_formula(0, n - 2))
}

/// Vertices of `F_{K_{n+1}}(a)` found directly: every edge set of `K_{n+1}`
/// without undirected cycles whose (unique) flow is strictly positive on
/// each of its edges. Flows are listed per edge of `K_{n+1}` in the order
/// `(1,2), (1,3), ..., (n, n+1)`.
pub fn acyclic_support_vertices(a: &NetflowVector, limits: FaceLimits) -> Result<Vec<Vec<i64>>> {
    let v = a.len();
    if v < 2 {
        return Err(Error::InvalidNetflow("need at least two vertices".into()));
    }
    if a.prefix().iter().any(|&x| x < 0) {
        return Err(Error::InvalidNetflow("netflow prefix must be nonnegative".into()));
    }
    let edge_count = v * (v - 1) / 2;
    if v - 1 > limits.max_n || edge_count > 28 {
        return Err(Error::BoundExceeded(format!("K_{v} has too many edge subsets")));
    }
    let edges: Vec<(usize, usize)> = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect();
    let mut found = BTreeMap::new();
    for subset in 0u32..(1 << edge_count) {
        let chosen: Vec<usize> = (0..edge_count).filter(|&e| subset >> e & 1 == 1).collect();
        if let Some(flow) = forest_flow(v, &edges, &chosen, a.entries()) {
            if found.len() >= limits.max_items {
                return Err(Error::BoundExceeded(format!("more than {} vertices", limits.max_items)));
            }
            let mut full = vec![0i64; edge_count];
            for (&e, f) in chosen.iter().zip(flow) {
                full[e] = f;
            }
            found.insert(subset, full);
        }
    }
    Ok(found.into_values().collect())
}

/// Unique flow on a forest by peeling leaves, if the edge set is a forest
/// and that flow is strictly positive everywhere.
fn forest_flow(v: usize, edges: &[(usize, usize)], chosen: &[usize], netflow: &[i64]) -> Option<Vec<i64>> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); v];
    for (k, &e) in chosen.iter().enumerate() {
        incident[edges[e].0].push(k);
        incident[edges[e].1].push(k);
    }
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut residual = netflow.to_vec();
    let mut flow: Vec<Option<i64>> = vec![None; chosen.len()];
    let mut stack: Vec<usize> = (0..v).filter(|&x| degree[x] == 1).collect();
    let mut peeled = 0;
    while let Some(x) = stack.pop() {
        if degree[x] != 1 {
            continue;
        }
        let k = *incident[x].iter().find(|&&k| flow[k].is_none())?;
        let (s, t) = edges[chosen[k]];
        let (f, other) = if x == s { (residual[x], t) } else { (-residual[x], s) };
        flow[k] = Some(f);
        residual[x] = 0;
        if other == t {
            residual[t] += f;
        } else {
            residual[s] -= f;
        }
        peeled += 1;
        degree[x] = 0;
        degree[other] -= 1;
        if degree[other] == 1 {
            stack.push(other);
        }
    }
    // leftover edges sit on cycles
    if peeled != chosen.len() || residual.iter().any(|&r| r != 0) {
        return None;
    }
    let flow: Vec<i64> = flow.into_iter().collect::<Option<_>>()?;
    flow.iter().all(|&f| f > 0).then_some(flow)
}
