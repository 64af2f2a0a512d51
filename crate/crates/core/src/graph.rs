//! Multigraphs with edges oriented from smaller to larger vertex labels,
//! netflow vectors, and the Kostant partition function.
//!
//! Vertices are labelled `1..=vertex_count` in the public API.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{multichoose, Compositions};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub multiplicity: u64,
}

/// Loopless multigraph on `1..=vertex_count` with every edge pointing from a
/// smaller to a larger label. Parallel edges are stored once with their
/// multiplicity; entries are kept sorted and never have multiplicity zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Self> {
        Multigraph::new(g.vertices, g.edges)
    }
}

impl From<Multigraph> for GraphJson {
    fn from(g: Multigraph) -> Self {
        GraphJson {
            vertices: g.vertex_count,
            edges: g
                .edges
                .iter()
                .map(|e| (e.source, e.target, e.multiplicity))
                .collect(),
        }
    }
}

/// The graph families that appear in the volume formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    /// `K_{v}`: every pair once.
    Complete { vertices: usize },
    /// `K_{n+1}^{a,b,m}`: `(1,i)` a times and `(i,n+1)` b times for
    /// `i in [2,n]`, `(i,j)` m times for `1<i<j<n+1`. No `(1,n+1)` edge.
    Morris { vertices: usize, a: u64, b: u64, m: u64 },
    /// `K_{n+1}^{a,b}`: `(i,j)` a times for `1<=i<j<=n`, `(i,n+1)` b times.
    Tesler { vertices: usize, a: u64, b: u64 },
    Custom { vertices: usize, edges: Vec<(usize, usize, u64)> },
}

impl GraphKind {
    /// Build a kind from a family name and its integer parameters.
    pub fn from_params(kind: &str, params: &[i64]) -> Result<Self> {
        let arity = match kind {
            "complete" => 1,
            "morris" => 4,
            "tesler" => 3,
            other => return Err(Error::InvalidGraph(format!("unknown graph kind `{other}`"))),
        };
        if params.len() != arity {
            return Err(Error::InvalidGraph(format!(
                "`{kind}` takes {arity} parameter(s), got {}",
                params.len()
            )));
        }
        if let Some(bad) = params.iter().find(|&&p| p < 0) {
            return Err(Error::InvalidGraph(format!("negative parameter {bad}")));
        }
        let p: Vec<u64> = params.iter().map(|&p| p as u64).collect();
        let vertices = p[0] as usize;
        Ok(match kind {
            "complete" => GraphKind::Complete { vertices },
            "morris" => GraphKind::Morris { vertices, a: p[1], b: p[2], m: p[3] },
            _ => GraphKind::Tesler { vertices, a: p[1], b: p[2] },
        })
    }
}

/// Construct the multigraph of the given family.
pub fn build_graph(kind: &GraphKind) -> Result<Multigraph> {
    match *kind {
        GraphKind::Complete { vertices } => {
            check_vertex_count(vertices)?;
            let edges = pairs(1, vertices).map(|(i, j)| (i, j, 1));
            Multigraph::new(vertices, edges)
        }
        GraphKind::Morris { vertices, a, b, m } => {
            check_vertex_count(vertices)?;
            let last = vertices;
            let n = vertices - 1;
            let mut edges = Vec::new();
            for i in 2..=n {
                edges.push((1, i, a));
                edges.push((i, last, b));
            }
            edges.extend(pairs(2, n).map(|(i, j)| (i, j, m)));
            Multigraph::new(vertices, edges)
        }
        GraphKind::Tesler { vertices, a, b } => {
            check_vertex_count(vertices)?;
            let n = vertices - 1;
            let mut edges: Vec<_> = pairs(1, n).map(|(i, j)| (i, j, a)).collect();
            edges.extend((1..=n).map(|i| (i, vertices, b)));
            Multigraph::new(vertices, edges)
        }
        GraphKind::Custom { vertices, ref edges } => Multigraph::new(vertices, edges.clone()),
    }
}

fn check_vertex_count(vertices: usize) -> Result<()> {
    if vertices < 2 {
        return Err(Error::InvalidGraph(format!(
            "family graphs need at least 2 vertices, got {vertices}"
        )));
    }
    Ok(())
}

/// All pairs `lo <= i < j <= hi`.
fn pairs(lo: usize, hi: usize) -> impl Iterator<Item = (usize, usize)> {
    (lo..=hi).flat_map(move |i| (i + 1..=hi).map(move |j| (i, j)))
}

impl Multigraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (source, target, mult) in edges {
            if source == 0 || target == 0 || source > vertex_count || target > vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({source},{target}) outside 1..={vertex_count}"
                )));
            }
            if source >= target {
                return Err(Error::InvalidGraph(format!(
                    "edge ({source},{target}) must point from smaller to larger label"
                )));
            }
            *merged.entry((source, target)).or_default() += mult;
        }
        let edges = merged
            .into_iter()
            .filter(|&(_, m)| m > 0)
            .map(|((source, target), multiplicity)| Edge { source, target, multiplicity })
            .collect();
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total number of edges counted with multiplicity (`N`).
    pub fn edge_count(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity(&self, source: usize, target: usize) -> u64 {
        self.edges
            .binary_search_by(|e| (e.source, e.target).cmp(&(source, target)))
            .map(|i| self.edges[i].multiplicity)
            .unwrap_or(0)
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        self.edges.iter().filter(|e| e.source == v).map(|e| e.multiplicity).sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        self.edges.iter().filter(|e| e.target == v).map(|e| e.multiplicity).sum()
    }

    /// Induced subgraph on `1..=k`.
    pub fn restrict(&self, k: usize) -> Multigraph {
        Multigraph {
            vertex_count: k,
            edges: self.edges.iter().filter(|e| e.target <= k).copied().collect(),
        }
    }

    /// Weakly connected (ignoring orientation).
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            parent[a] = b;
        }
        let root = find(&mut parent, 1);
        (2..=self.vertex_count).all(|v| find(&mut parent, v) == root)
    }

    /// Out-edges of every vertex as `(target, multiplicity)`, zero-based.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.source - 1].push((e.target - 1, e.multiplicity));
        }
        adj
    }
}

/// Degree statistics used by the Lidskii formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOffsets {
    /// `t_i = outdeg(i) - 1` for the first `n` vertices.
    pub out: Vec<i64>,
    /// `d_i = indeg(i) - 1` for every vertex.
    pub inn: Vec<i64>,
}

pub fn degree_offsets(g: &Multigraph) -> DegreeOffsets {
    let n = g.vertex_count - 1;
    let mut out = vec![-1i64; n];
    let mut inn = vec![-1i64; g.vertex_count];
    for e in &g.edges {
        if e.source <= n {
            out[e.source - 1] += e.multiplicity as i64;
        }
        inn[e.target - 1] += e.multiplicity as i64;
    }
    DegreeOffsets { out, inn }
}

/// Netflow `(a_1, ..., a_n, -sum a_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NetflowVector(Vec<i64>);

impl NetflowVector {
    /// Full vector whose entries must sum to zero.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidNetflow("empty netflow".into()));
        }
        let s: i64 = entries.iter().sum();
        if s != 0 {
            return Err(Error::InvalidNetflow(format!("entries sum to {s}, not 0")));
        }
        Ok(NetflowVector(entries))
    }

    /// Append the balancing last entry to `a`.
    pub fn from_prefix(prefix: &[i64]) -> Self {
        let mut v = prefix.to_vec();
        v.push(-prefix.iter().sum::<i64>());
        NetflowVector(v)
    }

    /// `(1, 0, ..., 0, -1)` on `vertices` vertices.
    pub fn unit(vertices: usize) -> Self {
        let mut p = vec![0; vertices - 1];
        p[0] = 1;
        Self::from_prefix(&p)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Everything but the last entry.
    pub fn prefix(&self) -> &[i64] {
        &self.0[..self.0.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, t: i64) -> NetflowVector {
        NetflowVector(self.0.iter().map(|&x| x * t).collect())
    }

    /// Checks the shape required by the volume and lattice-point formulas.
    pub fn check_for(&self, g: &Multigraph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::LengthMismatch { expected: g.vertex_count(), got: self.len() });
        }
        if let Some((i, &x)) = self.prefix().iter().enumerate().find(|(_, &x)| x < 0) {
            return Err(Error::InvalidNetflow(format!("entry a_{} = {x} is negative", i + 1)));
        }
        Ok(())
    }
}

/// Kostant partition function `K_G(b)`: the number of ways to write `b` as a
/// nonnegative integer combination of the roots `e_i - e_j`, one root per
/// edge copy.
///
/// Vertices are swept in order while a sparse map keeps, for every vector of
/// inflows into the vertices not yet processed, the number of partial flows
/// producing it. A vertex must send out exactly `b_i` plus its inflow; an
/// edge of multiplicity `m` carrying a total `c` contributes `C(c+m-1, m-1)`.
pub fn kostant(g: &Multigraph, b: &[i64]) -> Result<BigUint> {
    let v = g.vertex_count();
    if b.len() != v {
        return Err(Error::LengthMismatch { expected: v, got: b.len() });
    }
    if b.iter().sum::<i64>() != 0 {
        return Ok(BigUint::zero());
    }
    let adj = g.adjacency();
    let mut weights = WeightCache::default();

    // key: inflows into vertices i..v (index 0 is vertex i)
    let mut states: HashMap<Vec<i64>, BigUint> = HashMap::new();
    states.insert(vec![0; v], BigUint::one());

    for (i, out) in adj.iter().enumerate() {
        let mut next: HashMap<Vec<i64>, BigUint> = HashMap::new();
        for (inflow, count) in states {
            let supply = b[i] + inflow[0];
            if supply < 0 {
                continue;
            }
            let rest = &inflow[1..];
            if out.is_empty() {
                if supply == 0 {
                    *next.entry(rest.to_vec()).or_default() += count;
                }
                continue;
            }
            for split in Compositions::new(supply as u64, out.len()) {
                let mut w = count.clone();
                let mut key = rest.to_vec();
                for (&c, &(target, mult)) in split.iter().zip(out) {
                    if c > 0 {
                        w *= weights.get(c, mult);
                        key[target - i - 1] += c as i64;
                    }
                }
                *next.entry(key).or_default() += w;
            }
        }
        states = next;
        if states.is_empty() {
            return Ok(BigUint::zero());
        }
    }
    Ok(states.remove(&Vec::new()).unwrap_or_default())
}

#[derive(Default)]
pub(crate) struct WeightCache(HashMap<(u64, u64), BigUint>);

impl WeightCache {
    pub(crate) fn get(&mut self, total: u64, slots: u64) -> &BigUint {
        self.0.entry((total, slots)).or_insert_with(|| multichoose(total, slots))
    }
}
