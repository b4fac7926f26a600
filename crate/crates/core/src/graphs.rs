//! Disk graphs `G^d` and their Yao subgraphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cone_of_angle, euclid, Cones, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Cached `|source target|`.
    pub length: f64,
}

/// Graph over the indices of a [`PointSet`].
///
/// Undirected graphs store each edge once with `source < target`. Edges are
/// kept sorted by `(source, target)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeomGraph<'s> {
    points: &'s PointSet,
    directed: bool,
    edges: Vec<Edge>,
}

impl<'s> GeomGraph<'s> {
    /// Builds a graph from index pairs, computing lengths from `points`.
    /// Undirected pairs are normalized and deduplicated; self loops and
    /// out-of-range indices are dropped.
    pub fn from_pairs(
        points: &'s PointSet,
        directed: bool,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let n = points.len();
        let mut keyed: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(s, t)| s != t && s < n && t < n)
            .map(|(s, t)| if directed || s < t { (s, t) } else { (t, s) })
            .collect();
        keyed.sort_unstable();
        keyed.dedup();
        let edges = keyed
            .into_iter()
            .map(|(source, target)| Edge {
                source,
                target,
                length: euclid(&points[source], &points[target]),
            })
            .collect();
        GeomGraph {
            points,
            directed,
            edges,
        }
    }

    pub fn points(&self) -> &'s PointSet {
        self.points
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        let key = if self.directed || s < t {
            (s, t)
        } else {
            (t, s)
        };
        self.edges
            .binary_search_by(|e| (e.source, e.target).cmp(&key))
            .is_ok()
    }

    /// Index pairs in storage order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|e| (e.source, e.target))
    }

    /// Neighbor lists ignoring direction, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Same graph with the listed undirected edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> GeomGraph<'s> {
        let mut g = self.clone();
        g.edges.retain(|e| {
            !removed
                .iter()
                .any(|&(s, t)| (e.source, e.target) == (s, t) || (e.source, e.target) == (t, s))
        });
        g
    }
}

/// Rule applied when several neighbors in one cone are equally near.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    #[default]
    SmallestIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YaoParams {
    pub cones: Cones,
    pub tie_break: TieBreak,
}

impl YaoParams {
    pub fn new(cones: Cones) -> Self {
        YaoParams {
            cones,
            tie_break: TieBreak::SmallestIndex,
        }
    }
}

impl From<Cones> for YaoParams {
    fn from(cones: Cones) -> Self {
        YaoParams::new(cones)
    }
}

/// `G^d`: `{p, q}` is an edge iff `|pq| <= d`.
///
/// The comparison is made on the correctly rounded Euclidean distance, so a
/// radius returned as some pairwise distance always admits that pair.
pub fn disk_graph(s: &PointSet, d: f64) -> Result<GeomGraph<'_>> {
    if d.is_nan() || d <= 0.0 || !d.is_finite() {
        return Err(Error::InvalidRadius(d));
    }
    let pts = s.points();
    let mut edges = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            let length = euclid(p, q);
            if length <= d {
                edges.push(Edge {
                    source: i,
                    target: j,
                    length,
                });
            }
        }
    }
    Ok(GeomGraph {
        points: s,
        directed: false,
        edges,
    })
}

/// Directed Yao graph: every node keeps one arc to a nearest neighbor of `g`
/// in each of its non-empty cones.
pub fn yao_directed<'s>(g: &GeomGraph<'s>, params: YaoParams) -> Result<GeomGraph<'s>> {
    if g.directed {
        return Err(Error::DirectedInput);
    }
    let pts = g.points.points();
    let k = params.cones.get();
    let mut edges = Vec::new();
    let mut best: Vec<Option<(f64, usize)>> = vec![None; k];
    for (p, nbrs) in g.adjacency().iter().enumerate() {
        best.iter_mut().for_each(|b| *b = None);
        for &q in nbrs {
            let cone = cone_of_angle(pts[p].angle_to(&pts[q]), params.cones).index() - 1;
            let d2 = pts[p].dist2(&pts[q]);
            let better = match best[cone] {
                None => true,
                Some((bd, bq)) => match params.tie_break {
                    TieBreak::SmallestIndex => d2 < bd || (d2 == bd && q < bq),
                },
            };
            if better {
                best[cone] = Some((d2, q));
            }
        }
        let mut targets: Vec<usize> = best.iter().flatten().map(|&(_, q)| q).collect();
        targets.sort_unstable();
        edges.extend(targets.into_iter().map(|q| Edge {
            source: p,
            target: q,
            length: euclid(&pts[p], &pts[q]),
        }));
    }
    Ok(GeomGraph {
        points: g.points,
        directed: true,
        edges,
    })
}

/// Undirected Yao graph: `{p, q}` is kept iff `p→q` or `q→p` is a Yao arc.
pub fn yao_undirected<'s>(g: &GeomGraph<'s>, params: YaoParams) -> Result<GeomGraph<'s>> {
    let arcs = yao_directed(g, params)?;
    Ok(GeomGraph::from_pairs(g.points, false, arcs.pairs()))
}

/// Convenience: `Y_k[G^d]`.
pub fn yao_of_disk(s: &PointSet, d: f64, cones: Cones) -> Result<GeomGraph<'_>> {
    yao_undirected(&disk_graph(s, d)?, YaoParams::new(cones))
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Connected components, ignoring arc directions. Each component is sorted
/// and components are ordered by their smallest member.
pub fn components(g: &GeomGraph<'_>) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut dsu = DisjointSets::new(n);
    for e in &g.edges {
        dsu.union(e.source, e.target);
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(dsu.set_count());
    for v in 0..n {
        let root = dsu.find(v);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(v);
    }
    out
}

/// Graphs with zero or one node count as connected.
pub fn is_connected(g: &GeomGraph<'_>) -> bool {
    let n = g.node_count();
    if n <= 1 {
        return true;
    }
    let mut dsu = DisjointSets::new(n);
    for e in &g.edges {
        dsu.union(e.source, e.target);
        if dsu.set_count() == 1 {
            return true;
        }
    }
    dsu.set_count() == 1
}

/// True iff `g` is a simple path through all of its nodes. A single node is a
/// path; the empty graph is not.
pub fn is_path_graph(g: &GeomGraph<'_>) -> bool {
    let n = g.node_count();
    match n {
        0 => return false,
        1 => return g.edges.is_empty(),
        _ => {}
    }
    if g.edge_count() != n - 1 {
        return false;
    }
    let mut degree = vec![0usize; n];
    for e in &g.edges {
        degree[e.source] += 1;
        degree[e.target] += 1;
    }
    let leaves = degree.iter().filter(|&&d| d == 1).count();
    leaves == 2 && degree.iter().all(|&d| d == 1 || d == 2) && is_connected(g)
}
