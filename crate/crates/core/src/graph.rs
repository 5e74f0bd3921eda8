//! Simple graphs, small-subgraph catalogs, and the component/cycle
//! structure of edge subsets.
//!
//! Vertices are `0..n`. Edges are unordered pairs `(i, j)` with `i < j`,
//! kept sorted lexicographically; an edge's position in that order is its
//! index.

use std::collections::VecDeque;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a simple graph. Pairs may be given in either orientation and
    /// in any order; they are normalized to `i < j` and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a},{b}) has an endpoint outside 0..{n}")));
            }
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("parallel edge {:?}", w[0])));
        }
        Ok(Graph { n, edges: list })
    }

    /// `K_n` with lexicographic edge order.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("K_0 is not a graph"));
        }
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Ok(Graph {
            n,
            edges: edges.collect(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_index(a, b).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// `(neighbor, edge index)` pairs for each vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    /// Display name: `K<n>` for complete graphs, otherwise a short summary.
    pub fn name(&self) -> String {
        if self.is_complete() {
            format!("K{}", self.n)
        } else {
            format!("G(n={},t={})", self.n, self.edges.len())
        }
    }
}

/// A graph with a sign in `{+1, -1}` on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    graph: Graph,
    signs: Vec<i8>,
}

impl SignedGraph {
    pub fn new(graph: Graph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != graph.edge_count() {
            return Err(Error::invalid(format!(
                "{} signs given for {} edges",
                signs.len(),
                graph.edge_count()
            )));
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::invalid(format!("edge sign {s} is not +1 or -1")));
        }
        Ok(SignedGraph { graph, signs })
    }

    pub fn uniform(graph: Graph, sign: i8) -> Result<Self> {
        let signs = vec![sign; graph.edge_count()];
        Self::new(graph, signs)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// A diamond (K4 minus one edge). `vertices[0..2]` are the two vertices of
/// degree three, `vertices[2..4]` the endpoints of the missing edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub vertices: [usize; 4],
}

impl Diamond {
    pub fn missing_edge(&self) -> (usize, usize) {
        (self.vertices[2], self.vertices[3])
    }
}

/// Triangles, 4-cycles, diamonds and K4s of a graph.
///
/// 4-cycles are stored once per rotation/reflection class, as the cyclic
/// order starting at the lowest vertex and continuing to its smaller
/// neighbor on the cycle. On a K4 with vertices `0..4` this lists the
/// cycles `0-1-2-3`, `0-1-3-2`, `0-2-1-3` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphCatalog {
    graph: Graph,
    pub triangles: Vec<[usize; 3]>,
    pub four_cycles: Vec<[usize; 4]>,
    pub diamonds: Vec<Diamond>,
    pub k4s: Vec<[usize; 4]>,
}

impl SubgraphCatalog {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn triangle_index(&self, mut tri: [usize; 3]) -> Option<usize> {
        tri.sort_unstable();
        self.triangles.binary_search(&tri).ok()
    }

    /// Indices of the two triangles contained in diamond `i`.
    pub fn diamond_triangles(&self, i: usize) -> [usize; 2] {
        let [a, b, c, d] = self.diamonds[i].vertices;
        [
            self.triangle_index([a, b, c]).expect("diamond triangle in catalog"),
            self.triangle_index([a, b, d]).expect("diamond triangle in catalog"),
        ]
    }

    /// Indices of the four triangles contained in K4 `i`.
    pub fn k4_triangles(&self, i: usize) -> [usize; 4] {
        let [a, b, c, d] = self.k4s[i];
        [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
            .map(|t| self.triangle_index(t).expect("k4 triangle in catalog"))
    }
}

pub fn catalog_subgraphs(g: &Graph) -> SubgraphCatalog {
    let n = g.n();
    let e = |a, b| g.has_edge(a, b);
    let mut triangles = Vec::new();
    let mut four_cycles = Vec::new();
    let mut diamonds = Vec::new();
    let mut k4s = Vec::new();

    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if e(a, b) && e(a, c) && e(b, c) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    // the three cyclic orders through a, canonical form
                    for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        let closed = (0..4).all(|i| e(cyc[i], cyc[(i + 1) % 4]));
                        if closed {
                            four_cycles.push(cyc);
                        }
                    }
                    let quad = [a, b, c, d];
                    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                    let present: Vec<bool> = pairs.iter().map(|&(i, j)| e(quad[i], quad[j])).collect();
                    let count = present.iter().filter(|&&p| p).count();
                    if count == 6 {
                        k4s.push(quad);
                    }
                    if count >= 5 {
                        // one diamond per deletable edge of the quadruple
                        for (k, &(i, j)) in pairs.iter().enumerate() {
                            let others: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
                            if (0..6).all(|kk| kk == k || present[kk]) {
                                diamonds.push(Diamond {
                                    vertices: [quad[others[0]], quad[others[1]], quad[i], quad[j]],
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    SubgraphCatalog {
        graph: g.clone(),
        triangles,
        four_cycles,
        diamonds,
        k4s,
    }
}

/// One edge traversal: `forward` means from the smaller endpoint to the
/// larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

/// A closed walk given by its start vertex and edge traversals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedWalk {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl ClosedWalk {
    /// Builds a walk from a vertex sequence `v0 v1 .. vk` with `vk == v0`.
    pub fn from_vertices(g: &Graph, vertices: &[usize]) -> Result<Self> {
        if vertices.len() < 2 || vertices.first() != vertices.last() {
            return Err(Error::invalid("vertex sequence does not describe a closed walk"));
        }
        let steps = vertices
            .windows(2)
            .map(|w| {
                let edge = g
                    .edge_index(w[0], w[1])
                    .ok_or_else(|| Error::invalid(format!("no edge between {} and {}", w[0], w[1])))?;
                Ok(Step {
                    edge,
                    forward: w[0] < w[1],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosedWalk {
            start: vertices[0],
            steps,
        })
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                edge: s.edge,
                forward: !s.forward,
            })
            .collect();
        ClosedWalk {
            start: self.start,
            steps,
        }
    }

    /// Checks that consecutive steps chain in `g` and end at the start.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.start >= g.n() {
            return Err(Error::invalid(format!("walk starts at missing vertex {}", self.start)));
        }
        let mut at = self.start;
        for s in &self.steps {
            let &(a, b) = g
                .edges()
                .get(s.edge)
                .ok_or_else(|| Error::invalid(format!("edge index {} out of range", s.edge)))?;
            let (from, to) = if s.forward { (a, b) } else { (b, a) };
            if from != at {
                return Err(Error::invalid(format!(
                    "walk is disconnected: at vertex {at}, next step leaves from {from}"
                )));
            }
            at = to;
        }
        if at != self.start {
            return Err(Error::invalid(format!("walk ends at {at}, not at its start {}", self.start)));
        }
        Ok(())
    }
}

/// Components and a cycle-space basis of the spanning subgraph `(V, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubsetStructure {
    /// Number of components, isolated vertices included.
    pub component_count: usize,
    /// Vertex sets, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// Per component: one closed walk based at the component's smallest
    /// vertex for every non-tree edge of a breadth-first spanning tree.
    pub fundamental_cycles: Vec<Vec<ClosedWalk>>,
}

impl EdgeSubsetStructure {
    pub fn cycle_total(&self) -> usize {
        self.fundamental_cycles.iter().map(Vec::len).sum()
    }
}

pub fn edge_subset_structure(g: &Graph, subset: &[usize]) -> Result<EdgeSubsetStructure> {
    let t = g.edge_count();
    let mut inside = vec![false; t];
    for &e in subset {
        if e >= t {
            return Err(Error::invalid(format!("edge index {e} out of range (t = {t})")));
        }
        inside[e] = true;
    }
    Ok(structure_of(g, &inside))
}

pub(crate) fn structure_of_mask(g: &Graph, mask: u64) -> EdgeSubsetStructure {
    let inside: Vec<bool> = (0..g.edge_count()).map(|e| mask >> e & 1 == 1).collect();
    structure_of(g, &inside)
}

fn structure_of(g: &Graph, inside: &[bool]) -> EdgeSubsetStructure {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if inside[e] {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }

    let mut comp_of = vec![usize::MAX; n];
    // tree parent: (parent vertex, edge)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut components = Vec::new();
    let mut tree_edge = vec![false; g.edge_count()];

    for root in 0..n {
        if comp_of[root] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![root];
        comp_of[root] = id;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adj[u] {
                if comp_of[v] == usize::MAX {
                    comp_of[v] = id;
                    parent[v] = Some((u, e));
                    tree_edge[e] = true;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }

    // path from root down to v, as steps
    let root_path = |v: usize| -> Vec<Step> {
        let mut up = Vec::new();
        let mut at = v;
        while let Some((p, e)) = parent[at] {
            up.push(Step { edge: e, forward: p < at });
            at = p;
        }
        up.reverse();
        up
    };

    let mut fundamental_cycles = vec![Vec::new(); components.len()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !inside[e] || tree_edge[e] {
            continue;
        }
        let id = comp_of[a];
        let mut steps = root_path(a);
        steps.push(Step { edge: e, forward: true });
        let back = ClosedWalk {
            start: components[id][0],
            steps: root_path(b),
        }
        .reversed();
        steps.extend(back.steps);
        fundamental_cycles[id].push(ClosedWalk {
            start: components[id][0],
            steps,
        });
    }

    EdgeSubsetStructure {
        component_count: components.len(),
        components,
        fundamental_cycles,
    }
}
