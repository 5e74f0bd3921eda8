//! Exact coloring counters.
//!
//! All of them count proper colorings of a full cover, i.e. independent
//! transversals: assignments `x: V -> {0..m}` with `x_j != sigma_ij(x_i)`
//! on every edge `i < j`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{CoverView, CycleStats, FullCover};
use crate::graph::{structure_of_mask, ClosedWalk, EdgeSubsetStructure, Graph, SignedGraph};
use crate::num::{add, lift, lift_i, mul, pow, sub};
use crate::{Error, Exact, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    InclusionExclusion,
    K4Identity,
    Whitney,
    Signed,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::InclusionExclusion => "inclusion_exclusion",
            Method::K4Identity => "k4_identity",
            Method::Whitney => "whitney",
            Method::Signed => "signed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult<T> {
    pub value: T,
    pub method: Method,
}

/// Colors of a signed graph coloring: `{-k..-1, 1..k}` for `lambda = 2k`
/// and `{-k..-1, 0, 1..k}` for `lambda = 2k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSetSpec {
    lambda: u32,
    colors: Vec<i64>,
}

impl ColorSetSpec {
    pub fn new(lambda: u32) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::invalid("lambda must be at least 1"));
        }
        let half = i64::from(lambda / 2);
        let mut colors: Vec<i64> = (-half..=half).collect();
        if lambda.is_multiple_of(2) {
            colors.retain(|&c| c != 0);
        }
        Ok(ColorSetSpec { lambda, colors })
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn colors(&self) -> &[i64] {
        &self.colors
    }
}

// ---------------------------------------------------------------------------
// brute force

pub fn count_brute(c: &FullCover) -> Result<CountResult<i128>> {
    count_brute_with(c, &Limits::default())
}

pub fn count_brute_with(c: &FullCover, limits: &Limits) -> Result<CountResult<i128>> {
    limits.check_brute(c.m() as u64, c.graph().n())?;
    let value = BrutePlan::new(c.graph()).count(&c.view());
    Ok(CountResult {
        value: i128::from(value),
        method: Method::Brute,
    })
}

/// Vertex-by-vertex enumeration with pruning on the first violated edge.
#[derive(Clone, Debug)]
pub(crate) struct BrutePlan {
    n: usize,
    // for each vertex v: edges (e, u) to earlier vertices u < v
    back: Vec<Vec<(usize, usize)>>,
}

impl BrutePlan {
    pub fn new(g: &Graph) -> Self {
        let mut back = vec![Vec::new(); g.n()];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            back[b].push((e, a));
        }
        BrutePlan { n: g.n(), back }
    }

    pub fn count(&self, view: &CoverView<'_>) -> u64 {
        let mut x = vec![0u32; self.n];
        self.extend(view, 0, &mut x)
    }

    fn extend(&self, view: &CoverView<'_>, v: usize, x: &mut [u32]) -> u64 {
        if v == self.n {
            return 1;
        }
        let mut total = 0;
        for color in 0..view.m as u32 {
            // edge (u, v) with u < v forbids color == sigma(x_u)
            if self.back[v].iter().all(|&(e, u)| view.fwd[e][x[u] as usize] != color) {
                x[v] = color;
                total += self.extend(view, v + 1, x);
            }
        }
        total
    }
}

// ---------------------------------------------------------------------------
// inclusion-exclusion over edge subsets

/// Number of colors at the component root fixed by every fundamental-cycle
/// composite. A component without cycles contributes `m`.
pub(crate) fn component_factor(view: &CoverView<'_>, cycles: &[ClosedWalk]) -> u64 {
    if cycles.is_empty() {
        return view.m as u64;
    }
    (0..view.m as u32)
        .filter(|&x| cycles.iter().all(|w| view.walk(w, x) == x))
        .count() as u64
}

fn ie_term<T: Exact>(view: &CoverView<'_>, s: &EdgeSubsetStructure, size: u32) -> Result<T> {
    let mut term = T::one();
    for cycles in &s.fundamental_cycles {
        let f = component_factor(view, cycles);
        if f == 0 {
            return Ok(T::zero());
        }
        term = mul(&term, &lift::<T>(u128::from(f))?)?;
    }
    Ok(if size % 2 == 1 { -term } else { term })
}

const PAR_CHUNK: u64 = 1 << 10;

fn subset_sum<T, F>(t: usize, term: F) -> Result<T>
where
    T: Exact,
    F: Fn(u64) -> Result<T> + Sync,
{
    let total = 1u64 << t;
    let chunk_sum = |lo: u64, hi: u64| -> Result<T> {
        (lo..hi).try_fold(T::zero(), |acc, mask| add(&acc, &term(mask)?))
    };
    if total <= PAR_CHUNK {
        return chunk_sum(0, total);
    }
    let chunks: Vec<Result<T>> = (0..total.div_ceil(PAR_CHUNK))
        .into_par_iter()
        .map(|k| chunk_sum(k * PAR_CHUNK, ((k + 1) * PAR_CHUNK).min(total)))
        .collect();
    // fixed left-to-right reduction keeps the result schedule independent
    chunks
        .into_iter()
        .try_fold(T::zero(), |acc, part| add(&acc, &part?))
}

/// Signed sum over all edge subsets `A` of the number of assignments that
/// violate every edge of `A`.
pub fn count_ie(c: &FullCover) -> Result<CountResult<i128>> {
    count_ie_with::<i128>(c, &Limits::default())
}

pub fn count_ie_with<T: Exact>(c: &FullCover, limits: &Limits) -> Result<CountResult<T>> {
    let g = c.graph();
    limits.check_subsets(g.edge_count())?;
    let view = c.view();
    let value = subset_sum::<T, _>(g.edge_count(), |mask| {
        let s = structure_of_mask(g, mask);
        ie_term(&view, &s, mask.count_ones())
    })?;
    if value.is_negative() {
        return Err(Error::Internal(format!("inclusion-exclusion produced {value}")));
    }
    Ok(CountResult {
        value,
        method: Method::InclusionExclusion,
    })
}

/// Inclusion-exclusion with all subset structures compiled once, for
/// repeated evaluation over many covers of the same graph. Forest subsets
/// do not depend on the cover and are folded into a constant.
#[derive(Clone, Debug)]
pub(crate) struct IePlan {
    constant: i128,
    cyclic: Vec<(bool, Vec<Vec<ClosedWalk>>, u32)>,
}

impl IePlan {
    pub fn new(g: &Graph, m: usize, limits: &Limits) -> Result<Self> {
        limits.check_subsets(g.edge_count())?;
        let mut constant: i128 = 0;
        let mut cyclic = Vec::new();
        for mask in 0..1u64 << g.edge_count() {
            let s = structure_of_mask(g, mask);
            let negative = mask.count_ones() % 2 == 1;
            let cycles: Vec<Vec<ClosedWalk>> = s
                .fundamental_cycles
                .into_iter()
                .filter(|c| !c.is_empty())
                .collect();
            let free = s.component_count - cycles.len();
            if cycles.is_empty() {
                let v = pow::<i128>(&(m as i128), free as u32)?;
                constant = if negative { sub(&constant, &v)? } else { add(&constant, &v)? };
            } else {
                cyclic.push((negative, cycles, free as u32));
            }
        }
        Ok(IePlan { constant, cyclic })
    }

    pub fn count(&self, view: &CoverView<'_>) -> Result<i128> {
        let m = view.m as i128;
        let mut total = self.constant;
        for (negative, cycles, free) in &self.cyclic {
            let mut term = pow::<i128>(&m, *free)?;
            for comp in cycles {
                let f = component_factor(view, comp) as i128;
                term = mul(&term, &f)?;
                if term == 0 {
                    break;
                }
            }
            total = if *negative { sub(&total, &term)? } else { add(&total, &term)? };
        }
        Ok(total)
    }
}

// ---------------------------------------------------------------------------
// the K4 identity

/// Number of colorings of a full K4 cover from its cycle statistics:
/// `m^4 - 6m^3 + 15m^2 - 16m + (3-m)·Σt + Σq - Σmi + z`.
pub fn count_k4_identity(stats: &CycleStats, m: usize) -> Result<CountResult<i128>> {
    if stats.t.len() != 4 || stats.q.len() != 3 || stats.mi.len() != 6 || stats.z.len() != 1 {
        return Err(Error::invalid("cycle statistics do not come from a K4"));
    }
    if stats.m != m {
        return Err(Error::invalid(format!(
            "statistics were computed at m = {}, not {m}",
            stats.m
        )));
    }
    let sums = [stats.sum_t(), stats.sum_q(), stats.sum_mi(), stats.sum_z()];
    let value = k4_identity_value(m as i128, sums.map(|s| s as i128));
    if value < 0 {
        return Err(Error::Internal(format!("K4 identity evaluated to {value}")));
    }
    Ok(CountResult {
        value,
        method: Method::K4Identity,
    })
}

#[inline]
pub(crate) fn k4_identity_value(m: i128, [t, q, mi, z]: [i128; 4]) -> i128 {
    m * m * m * m - 6 * m * m * m + 15 * m * m - 16 * m + (3 - m) * t + q - mi + z
}

// ---------------------------------------------------------------------------
// chromatic polynomial

/// `P(G, m)` as `Σ_A (-1)^{|A|} m^{k_A}` over edge subsets.
pub fn chromatic_whitney<T: Exact>(g: &Graph, m: u64) -> Result<CountResult<T>> {
    chromatic_whitney_with(g, m, &Limits::default())
}

pub fn chromatic_whitney_with<T: Exact>(g: &Graph, m: u64, limits: &Limits) -> Result<CountResult<T>> {
    limits.check_subsets(g.edge_count())?;
    let base = lift::<T>(u128::from(m))?;
    let value = subset_sum::<T, _>(g.edge_count(), |mask| {
        let k = components_of_mask(g, mask);
        let v = pow(&base, k as u32)?;
        Ok(if mask.count_ones() % 2 == 1 { -v } else { v })
    })?;
    Ok(CountResult {
        value,
        method: Method::Whitney,
    })
}

fn components_of_mask(g: &Graph, mask: u64) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut k = g.n();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if mask >> e & 1 == 1 {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                k -= 1;
            }
        }
    }
    k
}

// ---------------------------------------------------------------------------
// signed graphs

/// Maps `f: V -> colors` with `f(u) != sign(uv)·f(v)` on every edge.
pub fn count_signed(sg: &SignedGraph, spec: &ColorSetSpec) -> Result<CountResult<i128>> {
    count_signed_with(sg, spec, &Limits::default())
}

pub fn count_signed_with(sg: &SignedGraph, spec: &ColorSetSpec, limits: &Limits) -> Result<CountResult<i128>> {
    let g = sg.graph();
    limits.check_brute(u64::from(spec.lambda()), g.n())?;
    let mut back = vec![Vec::new(); g.n()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        back[b].push((a, i64::from(sg.signs()[e])));
    }
    fn extend(v: usize, f: &mut [i64], back: &[Vec<(usize, i64)>], colors: &[i64]) -> u64 {
        if v == f.len() {
            return 1;
        }
        let mut total = 0;
        for &c in colors {
            // f(u) != s * f(v)  <=>  c != s * f(u) since s = ±1
            if back[v].iter().all(|&(u, s)| c != s * f[u]) {
                f[v] = c;
                total += extend(v + 1, f, back, colors);
            }
        }
        total
    }
    let mut f = vec![0i64; g.n()];
    let value = extend(0, &mut f, &back, spec.colors());
    Ok(CountResult {
        value: lift_i(i128::from(value))?,
        method: Method::Signed,
    })
}
