//! Full m-fold covers encoded as one permutation per edge.
//!
//! For an edge `(i, j)` with `i < j`, the permutation `sigma` maps a color
//! `x` in the fiber of `i` to the color `sigma(x)` in the fiber of `j` that
//! it is matched with. Traversing the edge from `j` to `i` applies the
//! inverse.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{ClosedWalk, Graph, SubgraphCatalog};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Largest number of permutation entries (edges times fold) a cover may
/// hold in memory.
pub const MAX_COVER_ENTRIES: usize = 1 << 25;

/// Rejects covers too large to materialize before anything is allocated.
pub(crate) fn check_cover_size(edge_count: usize, m: usize) -> Result<()> {
    match edge_count.max(1).checked_mul(m) {
        Some(entries) if entries <= MAX_COVER_ENTRIES => Ok(()),
        _ => Err(Error::ResourceLimit(format!(
            "a cover with {edge_count} edges at m = {m} exceeds {MAX_COVER_ENTRIES} permutation entries"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullCover {
    graph: Graph,
    m: usize,
    sigma: Vec<Permutation>,
    sigma_inv: Vec<Permutation>,
}

impl FullCover {
    /// Builds a cover from one permutation per edge, in edge-index order.
    pub fn new(graph: Graph, m: usize, sigma: Vec<Permutation>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("fold number must be at least 1"));
        }
        if sigma.len() != graph.edge_count() {
            return Err(Error::invalid(format!(
                "{} permutations given for {} edges",
                sigma.len(),
                graph.edge_count()
            )));
        }
        if let Some((e, p)) = sigma.iter().enumerate().find(|(_, p)| p.len() != m) {
            let (a, b) = graph.edges()[e];
            return Err(Error::invalid(format!(
                "permutation on edge ({a},{b}) has length {}, expected {m}",
                p.len()
            )));
        }
        check_cover_size(sigma.len(), m)?;
        let sigma_inv = sigma.iter().map(Permutation::inverse).collect();
        Ok(FullCover {
            graph,
            m,
            sigma,
            sigma_inv,
        })
    }

    /// Every edge carries the identity: the cover with a canonical labeling.
    pub fn canonical(graph: Graph, m: usize) -> Result<Self> {
        check_cover_size(graph.edge_count(), m)?;
        let sigma = vec![Permutation::identity(m); graph.edge_count()];
        Self::new(graph, m, sigma)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sigma(&self) -> &[Permutation] {
        &self.sigma
    }

    /// Permutation on edge `(a, b)`, oriented from `a` to `b`.
    pub fn sigma_between(&self, a: usize, b: usize) -> Option<Permutation> {
        let e = self.graph.edge_index(a, b)?;
        Some(if a < b {
            self.sigma[e].clone()
        } else {
            self.sigma_inv[e].clone()
        })
    }

    pub(crate) fn view(&self) -> CoverView<'_> {
        CoverView {
            m: self.m,
            fwd: self.sigma.iter().map(Permutation::images).collect(),
            inv: self.sigma_inv.iter().map(Permutation::images).collect(),
        }
    }
}

/// Builds a cover from a map keyed by edges `(i, j)` with `i < j`.
pub fn build_cover(
    g: &Graph,
    m: usize,
    sigma_map: &BTreeMap<(usize, usize), Permutation>,
) -> Result<FullCover> {
    for key in sigma_map.keys() {
        if key.0 >= key.1 || g.edge_index(key.0, key.1).is_none() {
            return Err(Error::invalid(format!("permutation given for non-edge {key:?}")));
        }
    }
    let sigma = g
        .edges()
        .iter()
        .map(|e| {
            sigma_map
                .get(e)
                .cloned()
                .ok_or_else(|| Error::invalid(format!("no permutation given for edge {e:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    FullCover::new(g.clone(), m, sigma)
}

/// Borrowed per-edge image tables; the form the counting kernels consume.
#[derive(Clone, Debug)]
pub(crate) struct CoverView<'a> {
    pub m: usize,
    pub fwd: Vec<&'a [u32]>,
    pub inv: Vec<&'a [u32]>,
}

impl CoverView<'_> {
    #[inline]
    pub fn step(&self, edge: usize, forward: bool, x: u32) -> u32 {
        if forward {
            self.fwd[edge][x as usize]
        } else {
            self.inv[edge][x as usize]
        }
    }

    #[inline]
    pub fn walk(&self, walk: &ClosedWalk, x: u32) -> u32 {
        walk.steps.iter().fold(x, |y, s| self.step(s.edge, s.forward, y))
    }
}

/// Composite permutation on the fiber of `walk.start` obtained by following
/// the matchings along the walk.
pub fn composite_along_walk(c: &FullCover, walk: &ClosedWalk) -> Result<Permutation> {
    walk.validate(&c.graph)?;
    let view = c.view();
    let images = (0..c.m as u32).map(|x| view.walk(walk, x)).collect();
    Permutation::from_images(images)
}

/// Relabels fibers so that every edge at `root` carries the identity.
///
/// The fiber of each neighbor `v` of `root` is relabeled through the
/// permutation on the edge `root-v`; all other edges at `v` are rewritten
/// accordingly. The result is isomorphic to `c` and has the same number of
/// colorings.
pub fn star_normalize(c: &FullCover, root: usize) -> Result<FullCover> {
    let g = &c.graph;
    if root >= g.n() {
        return Err(Error::invalid(format!("root {root} out of range")));
    }
    // relabel[v]: old label -> new label on fiber v
    let mut relabel: Vec<Option<Permutation>> = vec![None; g.n()];
    for (v, slot) in relabel.iter_mut().enumerate() {
        if v != root {
            // sigma from root to v; new label := its inverse applied
            *slot = c.sigma_between(root, v).map(|s| s.inverse());
        }
    }
    let sigma = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            // new sigma = relabel_a^{-1} ; sigma ; relabel_b
            let mut p = c.sigma[e].clone();
            if let Some(ra) = &relabel[a] {
                p = ra.inverse().then(&p);
            }
            if let Some(rb) = &relabel[b] {
                p = p.then(rb);
            }
            p
        })
        .collect();
    FullCover::new(g.clone(), c.m, sigma)
}

/// Seeded cover with an independent uniformly random permutation per edge.
pub fn random_cover(g: &Graph, m: usize, seed: u64) -> Result<FullCover> {
    check_cover_size(g.edge_count(), m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = (0..g.edge_count())
        .map(|_| {
            let mut images: Vec<u32> = (0..m as u32).collect();
            images.shuffle(&mut rng);
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    FullCover::new(g.clone(), m, sigma)
}

/// Counts how many colors at a root vertex extend to a copy of a fixed
/// connected subgraph inside the cover: propagate along a spanning tree,
/// then check the remaining edges.
#[derive(Clone, Debug)]
pub(crate) struct LiftPlan {
    width: usize,
    // (edge, forward, from, to) over local vertex slots
    tree: Vec<(usize, bool, usize, usize)>,
    // (edge, lo, hi): require hi == sigma_edge(lo)
    checks: Vec<(usize, usize, usize)>,
}

impl LiftPlan {
    /// `vertices[0]` is the root; `edges` must connect all of `vertices`.
    pub fn new(g: &Graph, vertices: &[usize], edges: &[usize]) -> Self {
        let slot = |v: usize| vertices.iter().position(|&u| u == v).expect("edge endpoint in vertex list");
        let mut reached = vec![false; vertices.len()];
        reached[0] = true;
        let mut used = vec![false; edges.len()];
        let mut tree = Vec::new();
        loop {
            let mut grew = false;
            for (k, &e) in edges.iter().enumerate() {
                if used[k] {
                    continue;
                }
                let (a, b) = g.edges()[e];
                let (sa, sb) = (slot(a), slot(b));
                if reached[sa] && !reached[sb] {
                    tree.push((e, true, sa, sb));
                } else if reached[sb] && !reached[sa] {
                    tree.push((e, false, sb, sa));
                } else {
                    continue;
                }
                reached[sa] = true;
                reached[sb] = true;
                used[k] = true;
                grew = true;
            }
            if !grew {
                break;
            }
        }
        assert!(reached.iter().all(|&r| r), "lift plan over a disconnected subgraph");
        let checks = edges
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(&e, _)| {
                let (a, b) = g.edges()[e];
                (e, slot(a), slot(b))
            })
            .collect();
        LiftPlan {
            width: vertices.len(),
            tree,
            checks,
        }
    }

    pub fn count(&self, view: &CoverView<'_>) -> usize {
        let mut vals = [0u32; 8];
        let mut heap;
        let vals: &mut [u32] = if self.width <= vals.len() {
            &mut vals
        } else {
            heap = vec![0u32; self.width];
            &mut heap
        };
        let mut count = 0;
        for x in 0..view.m as u32 {
            vals[0] = x;
            for &(e, fwd, from, to) in &self.tree {
                vals[to] = view.step(e, fwd, vals[from]);
            }
            if self
                .checks
                .iter()
                .all(|&(e, lo, hi)| view.fwd[e][vals[lo] as usize] == vals[hi])
            {
                count += 1;
            }
        }
        count
    }
}

/// Copy counts of triangles (`t`), 4-cycles (`q`), diamonds (`mi`) and K4s
/// (`z`) lifted into a cover, indexed like the catalog lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStats {
    pub m: usize,
    pub t: Vec<usize>,
    pub q: Vec<usize>,
    pub mi: Vec<usize>,
    pub z: Vec<usize>,
}

impl CycleStats {
    pub fn sum_t(&self) -> usize {
        self.t.iter().sum()
    }

    pub fn sum_q(&self) -> usize {
        self.q.iter().sum()
    }

    pub fn sum_mi(&self) -> usize {
        self.mi.iter().sum()
    }

    pub fn sum_z(&self) -> usize {
        self.z.iter().sum()
    }
}

/// Precompiled lift plans for every catalogued subgraph.
#[derive(Clone, Debug)]
pub(crate) struct StatsPlan {
    tri: Vec<LiftPlan>,
    quad: Vec<LiftPlan>,
    diamond: Vec<LiftPlan>,
    k4: Vec<LiftPlan>,
}

impl StatsPlan {
    pub fn new(cat: &SubgraphCatalog) -> Self {
        let g = cat.graph();
        let e = |a: usize, b: usize| g.edge_index(a, b).expect("catalogued edge");
        let tri = cat
            .triangles
            .iter()
            .map(|&[a, b, c]| LiftPlan::new(g, &[a, b, c], &[e(a, b), e(b, c), e(a, c)]))
            .collect();
        let quad = cat
            .four_cycles
            .iter()
            .map(|cyc| {
                let edges: Vec<usize> = (0..4).map(|i| e(cyc[i], cyc[(i + 1) % 4])).collect();
                LiftPlan::new(g, cyc, &edges)
            })
            .collect();
        let diamond = cat
            .diamonds
            .iter()
            .map(|d| {
                let [a, b, c, x] = d.vertices;
                LiftPlan::new(g, &d.vertices, &[e(a, b), e(a, c), e(a, x), e(b, c), e(b, x)])
            })
            .collect();
        let k4 = cat
            .k4s
            .iter()
            .map(|q| {
                let mut edges = Vec::new();
                for i in 0..4 {
                    for j in i + 1..4 {
                        edges.push(e(q[i], q[j]));
                    }
                }
                LiftPlan::new(g, q, &edges)
            })
            .collect();
        StatsPlan { tri, quad, diamond, k4 }
    }

    pub fn eval(&self, view: &CoverView<'_>) -> CycleStats {
        let run = |plans: &[LiftPlan]| plans.iter().map(|p| p.count(view)).collect();
        CycleStats {
            m: view.m,
            t: run(&self.tri),
            q: run(&self.quad),
            mi: run(&self.diamond),
            z: run(&self.k4),
        }
    }

    /// `(sum t, sum q, sum mi, sum z)` without materializing the vectors.
    pub fn sums(&self, view: &CoverView<'_>) -> [usize; 4] {
        let run = |plans: &[LiftPlan]| plans.iter().map(|p| p.count(view)).sum();
        [run(&self.tri), run(&self.quad), run(&self.diamond), run(&self.k4)]
    }
}

pub fn cycle_stats(c: &FullCover, cat: &SubgraphCatalog) -> Result<CycleStats> {
    if cat.graph() != c.graph() {
        return Err(Error::invalid("catalog was built from a different graph"));
    }
    Ok(StatsPlan::new(cat).eval(&c.view()))
}

/// True iff no triangle of the base graph lifts to a triangle of the cover.
pub fn is_cover_triangle_free(c: &FullCover, cat: &SubgraphCatalog) -> Result<bool> {
    Ok(cycle_stats(c, cat)?.t.iter().all(|&t| t == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog_subgraphs;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn oversized_covers_are_refused() {
        let err = FullCover::canonical(k(5), 4_000_000_000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
        assert!(matches!(random_cover(&k(8), 1 << 24, 1), Err(Error::ResourceLimit(_))));
        assert!(matches!(crate::constructions::even_pairing_cover(8, 600_000_000), Err(Error::ResourceLimit(_))));
        assert!(FullCover::canonical(k(5), 2059).is_ok());
    }

    #[test]
    fn build_cover_checks_keys_and_lengths() {
        let g = k(2);
        let mut map = BTreeMap::new();
        map.insert((0, 1), Permutation::identity(3));
        let c = build_cover(&g, 3, &map).unwrap();
        assert!(c.sigma()[0].is_identity());

        let g4 = k(4);
        let mut map: BTreeMap<_, _> = g4.edges().iter().map(|&e| (e, Permutation::identity(4))).collect();
        assert!(build_cover(&g4, 4, &map).is_ok());
        assert!(build_cover(&g4, 3, &map).is_err());
        map.insert((1, 0), Permutation::identity(4));
        assert!(build_cover(&g4, 4, &map).is_err());
        map.remove(&(1, 0));
        map.remove(&(2, 3));
        assert!(build_cover(&g4, 4, &map).is_err());
    }

    #[test]
    fn star_normalize_k2_swap() {
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        let c = FullCover::new(k(2), 2, vec![swap]).unwrap();
        let s = star_normalize(&c, 0).unwrap();
        assert!(s.sigma()[0].is_identity());
        let s1 = star_normalize(&c, 1).unwrap();
        assert!(s1.sigma()[0].is_identity());
        assert!(star_normalize(&c, 2).is_err());
    }

    #[test]
    fn star_normalize_identities_at_any_root() {
        for seed in 0..20 {
            let c = random_cover(&k(5), 4, seed).unwrap();
            for root in 0..5 {
                let s = star_normalize(&c, root).unwrap();
                for v in (0..5).filter(|&v| v != root) {
                    assert!(s.sigma_between(root, v).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn canonical_stats() {
        let cat = catalog_subgraphs(&k(4));
        let c = FullCover::canonical(k(4), 5).unwrap();
        let s = cycle_stats(&c, &cat).unwrap();
        assert_eq!(s.t, vec![5; 4]);
        assert_eq!(s.q, vec![5; 3]);
        assert_eq!(s.mi, vec![5; 6]);
        assert_eq!(s.z, vec![5]);
        assert!(!is_cover_triangle_free(&c, &cat).unwrap());
        let other = catalog_subgraphs(&k(5));
        assert!(cycle_stats(&c, &other).is_err());
    }

    #[test]
    fn walks_compose_matchings() {
        let c = random_cover(&k(4), 6, 7).unwrap();
        let w = ClosedWalk::from_vertices(c.graph(), &[0, 1, 3, 2, 0]).unwrap();
        let p = composite_along_walk(&c, &w).unwrap();
        let back = composite_along_walk(&c, &w.reversed()).unwrap();
        assert!(p.then(&back).is_identity());
        let open = ClosedWalk {
            start: 0,
            steps: w.steps[..2].to_vec(),
        };
        assert!(composite_along_walk(&c, &open).is_err());

        let canon = FullCover::canonical(k(3), 4).unwrap();
        let tri = ClosedWalk::from_vertices(canon.graph(), &[0, 1, 2, 0]).unwrap();
        assert!(composite_along_walk(&canon, &tri).unwrap().is_identity());
    }

    #[test]
    fn triangle_count_is_composite_fixed_points() {
        let cat = catalog_subgraphs(&k(4));
        for seed in 0..50 {
            let c = random_cover(&k(4), 5, seed).unwrap();
            let s = cycle_stats(&c, &cat).unwrap();
            for (i, &[a, b, d]) in cat.triangles.iter().enumerate() {
                let w = ClosedWalk::from_vertices(c.graph(), &[a, b, d, a]).unwrap();
                assert_eq!(s.t[i], composite_along_walk(&c, &w).unwrap().fixed_points());
            }
            for (i, cyc) in cat.four_cycles.iter().enumerate() {
                let w = ClosedWalk::from_vertices(c.graph(), &[cyc[0], cyc[1], cyc[2], cyc[3], cyc[0]]).unwrap();
                assert_eq!(s.q[i], composite_along_walk(&c, &w).unwrap().fixed_points());
            }
        }
    }

    #[test]
    fn random_cover_is_deterministic() {
        let a = random_cover(&k(4), 3, 11).unwrap();
        assert_eq!(a, random_cover(&k(4), 3, 11).unwrap());
        let differing = (12..40)
            .filter(|&s| random_cover(&k(4), 3, s).unwrap() != a)
            .count();
        assert!(differing >= 27);
        let trivial = random_cover(&k(4), 1, 5).unwrap();
        assert!(trivial.sigma().iter().all(Permutation::is_identity));
    }
}
