//! Exhaustive and sampled search for the extremal number of colorings over
//! full m-fold covers.
//!
//! The exhaustive space fixes every edge at the normalization root to the
//! identity and lets the remaining ("free") edges range over all of `S_m`.
//! A cover is addressed by a mixed-radix index whose digits are Lehmer
//! ranks, the first free edge (in edge order) being the most significant
//! digit. Ties between covers of equal value go to the smallest index.
//!
//! Relabeling every fiber by one permutation `pi` keeps the root edges at
//! the identity and conjugates every free permutation by `pi`, so under
//! conjugacy reduction the first free edge only ranges over one
//! representative per cycle type. Extrema are unchanged; frequency
//! histograms are not, so they are only collected without reduction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::counting::{k4_identity_value, BrutePlan, IePlan};
use crate::cover::{random_cover, CoverView, FullCover, StatsPlan};
use crate::graph::{catalog_subgraphs, Graph};
use crate::perm::{all_permutations, factorial, from_cycle_type, partitions, Permutation};
use crate::{Error, Limits, Result};

/// Covers evaluated per parallel task.
pub const CHUNK: u64 = 1 << 12;

/// Largest fold for which the full permutation table is materialized.
pub const MAX_TABLE_FOLD: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Max,
    Min,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Identity on every edge at the given root vertex.
    Star(usize),
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Conjugacy,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterKind {
    Brute,
    InclusionExclusion,
    K4Identity,
}

macro_rules! str_enum {
    ($ty:ty { $($name:literal => $val:expr),* $(,)? }) => {
        impl $ty {
            pub fn as_str(&self) -> &'static str {
                match *self { $(v if v == $val => $name,)* _ => unreachable!() }
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($val),)*
                    _ => Err(Error::invalid(format!("unknown value {s:?}"))),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

str_enum!(Mode { "max" => Mode::Max, "min" => Mode::Min, "both" => Mode::Both });
str_enum!(Reduction { "conjugacy" => Reduction::Conjugacy, "none" => Reduction::None });
str_enum!(CounterKind {
    "brute" => CounterKind::Brute,
    "inclusion_exclusion" => CounterKind::InclusionExclusion,
    "ie" => CounterKind::InclusionExclusion,
    "k4_identity" => CounterKind::K4Identity,
    "k4" => CounterKind::K4Identity,
});

impl Mode {
    fn wants_max(self) -> bool {
        self != Mode::Min
    }

    fn wants_min(self) -> bool {
        self != Mode::Max
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub graph: Graph,
    pub m: usize,
    pub mode: Mode,
    pub normalization: Normalization,
    pub reduction: Reduction,
    /// `None` picks a counter from the graph and fold.
    pub counter: Option<CounterKind>,
    /// Maximum number of covers to evaluate.
    pub budget: u64,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    /// Base seed for sampled search.
    pub seed: u64,
    /// Collect a value histogram (ignored under conjugacy reduction).
    pub histogram: bool,
    pub limits: Limits,
}

impl SearchSpec {
    /// Star normalization at vertex 0, no reduction, both extrema.
    pub fn new(graph: Graph, m: usize) -> Self {
        SearchSpec {
            graph,
            m,
            mode: Mode::Both,
            normalization: Normalization::Star(0),
            reduction: Reduction::None,
            counter: None,
            budget: 100_000_000,
            threads: 0,
            seed: 0,
            histogram: false,
            limits: Limits::default(),
        }
    }

    pub fn with_reduction(mut self, reduction: Reduction) -> Self {
        self.reduction = reduction;
        self
    }

    pub fn with_counter(mut self, counter: CounterKind) -> Self {
        self.counter = Some(counter);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_histogram(mut self, on: bool) -> Self {
        self.histogram = on;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::invalid("fold number must be at least 1"));
        }
        if let Normalization::Star(root) = self.normalization {
            if root >= self.graph.n() {
                return Err(Error::invalid(format!("normalization root {root} out of range")));
            }
        }
        if self.reduction == Reduction::Conjugacy && self.normalization == Normalization::None {
            return Err(Error::invalid("conjugacy reduction requires star normalization"));
        }
        if self.counter == Some(CounterKind::K4Identity) && !is_k4(&self.graph) {
            return Err(Error::invalid("the k4_identity counter only applies to K4"));
        }
        Ok(())
    }

    /// The counter actually used.
    pub fn resolved_counter(&self) -> CounterKind {
        self.counter.unwrap_or_else(|| auto_counter(&self.graph, self.m))
    }
}

fn is_k4(g: &Graph) -> bool {
    g.n() == 4 && g.is_complete()
}

/// K4 uses the cycle-statistics identity. Elsewhere brute force is used
/// while `m^n` is below the inclusion-exclusion work `2^t · m`.
pub fn auto_counter(g: &Graph, m: usize) -> CounterKind {
    if is_k4(g) {
        return CounterKind::K4Identity;
    }
    let brute = (m as f64).powi(g.n() as i32);
    let ie = (g.edge_count() as f64).exp2() * m as f64;
    if brute <= ie {
        CounterKind::Brute
    } else {
        CounterKind::InclusionExclusion
    }
}

/// A cover attaining an extremum, with its index in the search space (or
/// its sample number in sampled search).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: i128,
    pub index: u64,
    pub cover: FullCover,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub graph: Graph,
    pub m: usize,
    pub mode: Mode,
    pub counter: CounterKind,
    pub normalization: Normalization,
    pub reduction: Reduction,
    pub sampled: bool,
    pub max: Option<Extremum>,
    pub min: Option<Extremum>,
    pub evaluated: u64,
    pub space_size: u128,
    pub histogram: Option<BTreeMap<i128, u64>>,
    pub elapsed_ms: u128,
}

impl SearchResult {
    pub fn max_value(&self) -> Option<i128> {
        self.max.as_ref().map(|e| e.value)
    }

    pub fn min_value(&self) -> Option<i128> {
        self.min.as_ref().map(|e| e.value)
    }
}

/// One representative per conjugacy class of `S_m` (per cycle type),
/// ordered as the partitions of `m` from `[m]` down to `[1, .., 1]`.
pub fn conjugacy_representatives(m: usize) -> Vec<Permutation> {
    partitions(m).iter().map(|p| from_cycle_type(p)).collect()
}

enum Evaluator {
    K4(StatsPlan),
    Brute(BrutePlan),
    Ie(IePlan),
}

impl Evaluator {
    fn new(kind: CounterKind, g: &Graph, m: usize, limits: &Limits) -> Result<Self> {
        Ok(match kind {
            CounterKind::K4Identity => Evaluator::K4(StatsPlan::new(&catalog_subgraphs(g))),
            CounterKind::Brute => {
                limits.check_brute(m as u64, g.n())?;
                Evaluator::Brute(BrutePlan::new(g))
            }
            CounterKind::InclusionExclusion => Evaluator::Ie(IePlan::new(g, m, limits)?),
        })
    }

    fn eval(&self, view: &CoverView<'_>) -> Result<i128> {
        match self {
            Evaluator::K4(plan) => {
                let sums = plan.sums(view).map(|s| s as i128);
                Ok(k4_identity_value(view.m as i128, sums))
            }
            Evaluator::Brute(plan) => Ok(i128::from(plan.count(view))),
            Evaluator::Ie(plan) => plan.count(view),
        }
    }
}

/// Running extrema of a contiguous index range.
#[derive(Clone, Debug, Default)]
struct Acc {
    max: Option<(i128, u64)>,
    min: Option<(i128, u64)>,
    hist: BTreeMap<i128, u64>,
}

impl Acc {
    fn push(&mut self, value: i128, index: u64, hist: bool) {
        if self.max.is_none_or(|(v, _)| value > v) {
            self.max = Some((value, index));
        }
        if self.min.is_none_or(|(v, _)| value < v) {
            self.min = Some((value, index));
        }
        if hist {
            *self.hist.entry(value).or_default() += 1;
        }
    }

    // indices only grow from left to right, so strict comparison keeps the
    // smallest index on ties
    fn merge(mut self, other: Acc) -> Acc {
        if let Some((v, i)) = other.max {
            if self.max.is_none_or(|(w, j)| v > w || (v == w && i < j)) {
                self.max = Some((v, i));
            }
        }
        if let Some((v, i)) = other.min {
            if self.min.is_none_or(|(w, j)| v < w || (v == w && i < j)) {
                self.min = Some((v, i));
            }
        }
        for (k, c) in other.hist {
            *self.hist.entry(k).or_default() += c;
        }
        self
    }
}

/// Layout of the normalized, possibly reduced, cover space.
struct Space {
    m: usize,
    free: Vec<usize>,
    radix: Vec<u64>,
    table: Vec<Permutation>,
    table_inv: Vec<Permutation>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    identity: Permutation,
    size: u128,
}

impl Space {
    fn new(spec: &SearchSpec) -> Result<Self> {
        let g = &spec.graph;
        let m = spec.m;
        let free: Vec<usize> = match spec.normalization {
            Normalization::Star(root) => (0..g.edge_count())
                .filter(|&e| {
                    let (a, b) = g.edges()[e];
                    a != root && b != root
                })
                .collect(),
            Normalization::None => (0..g.edge_count()).collect(),
        };
        let reduce = spec.reduction == Reduction::Conjugacy && !free.is_empty();
        let fact = factorial(m).filter(|_| m <= MAX_TABLE_FOLD || free.is_empty());
        let (table, reps) = if free.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            fact.ok_or_else(|| {
                Error::ResourceLimit(format!("exhaustive search over S_{m} is limited to m <= {MAX_TABLE_FOLD}"))
            })?;
            let reps = if reduce { conjugacy_representatives(m) } else { Vec::new() };
            (all_permutations(m), reps)
        };
        let radix: Vec<u64> = free
            .iter()
            .enumerate()
            .map(|(k, _)| if k == 0 && reduce { reps.len() as u64 } else { table.len() as u64 })
            .collect();
        let size = radix
            .iter()
            .try_fold(1u128, |acc, &r| acc.checked_mul(u128::from(r)))
            .ok_or_else(|| Error::ResourceLimit("cover space size overflows 128 bits".into()))?;
        Ok(Space {
            m,
            table_inv: table.iter().map(Permutation::inverse).collect(),
            reps_inv: reps.iter().map(Permutation::inverse).collect(),
            free,
            radix,
            table,
            reps,
            identity: Permutation::identity(m),
            size,
        })
    }

    fn digits(&self, mut index: u64) -> Vec<u64> {
        let mut d = vec![0; self.radix.len()];
        for k in (0..self.radix.len()).rev() {
            d[k] = index % self.radix[k];
            index /= self.radix[k];
        }
        d
    }

    fn reduced(&self) -> bool {
        !self.reps.is_empty()
    }

    fn perm(&self, slot: usize, digit: u64) -> (&Permutation, &Permutation) {
        if slot == 0 && self.reduced() {
            (&self.reps[digit as usize], &self.reps_inv[digit as usize])
        } else {
            (&self.table[digit as usize], &self.table_inv[digit as usize])
        }
    }

    fn base_view(&self, edges: usize) -> CoverView<'_> {
        CoverView {
            m: self.m,
            fwd: vec![self.identity.images(); edges],
            inv: vec![self.identity.images(); edges],
        }
    }

    fn set<'s>(&'s self, view: &mut CoverView<'s>, slot: usize, digit: u64) {
        let (p, q) = self.perm(slot, digit);
        let e = self.free[slot];
        view.fwd[e] = p.images();
        view.inv[e] = q.images();
    }

    fn cover_at(&self, g: &Graph, index: u64) -> Result<FullCover> {
        let mut sigma = vec![self.identity.clone(); g.edge_count()];
        for (slot, d) in self.digits(index).into_iter().enumerate() {
            sigma[self.free[slot]] = self.perm(slot, d).0.clone();
        }
        FullCover::new(g.clone(), self.m, sigma)
    }

    fn scan(&self, eval: &Evaluator, lo: u64, hi: u64, edges: usize, hist: bool) -> Result<Acc> {
        let mut acc = Acc::default();
        if lo >= hi {
            return Ok(acc);
        }
        let mut view = self.base_view(edges);
        let mut digits = self.digits(lo);
        for (slot, &d) in digits.iter().enumerate() {
            self.set(&mut view, slot, d);
        }
        let mut index = lo;
        loop {
            acc.push(eval.eval(&view)?, index, hist);
            index += 1;
            if index == hi {
                break;
            }
            // odometer step, last digit fastest
            let mut slot = digits.len();
            while slot > 0 {
                slot -= 1;
                digits[slot] += 1;
                if digits[slot] < self.radix[slot] {
                    self.set(&mut view, slot, digits[slot]);
                    break;
                }
                digits[slot] = 0;
                self.set(&mut view, slot, 0);
            }
        }
        Ok(acc)
    }
}

fn run_in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

pub fn search_exhaustive(spec: &SearchSpec) -> Result<SearchResult> {
    spec.validate()?;
    let start = Instant::now();
    let space = Space::new(spec)?;
    if space.size > u128::from(spec.budget) {
        return Err(Error::ResourceLimit(format!(
            "cover space has {} covers, budget is {}",
            space.size, spec.budget
        )));
    }
    let counter = spec.resolved_counter();
    let eval = Evaluator::new(counter, &spec.graph, spec.m, &spec.limits)?;
    let hist = spec.histogram && !space.reduced();
    let total = space.size as u64;
    let edges = spec.graph.edge_count();

    let acc = run_in_pool(spec.threads, || {
        let parts: Vec<Result<Acc>> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|k| space.scan(&eval, k * CHUNK, ((k + 1) * CHUNK).min(total), edges, hist))
            .collect();
        parts
            .into_iter()
            .try_fold(Acc::default(), |a, b| Ok::<_, Error>(a.merge(b?)))
    })??;

    let witness = |slot: Option<(i128, u64)>| -> Result<Option<Extremum>> {
        slot.map(|(value, index)| {
            Ok(Extremum {
                value,
                index,
                cover: space.cover_at(&spec.graph, index)?,
            })
        })
        .transpose()
    };
    Ok(SearchResult {
        graph: spec.graph.clone(),
        m: spec.m,
        mode: spec.mode,
        counter,
        normalization: spec.normalization,
        reduction: if space.reduced() { Reduction::Conjugacy } else { Reduction::None },
        sampled: false,
        max: if spec.mode.wants_max() { witness(acc.max)? } else { None },
        min: if spec.mode.wants_min() { witness(acc.min)? } else { None },
        evaluated: total,
        space_size: space.size,
        histogram: hist.then_some(acc.hist),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Extrema over `samples` seeded random covers; sample `i` is
/// `random_cover(graph, m, seed + i)`. Lower-bounds the maximum and
/// upper-bounds the minimum over all full covers.
pub fn search_sampled(spec: &SearchSpec, samples: u64) -> Result<SearchResult> {
    spec.validate()?;
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let start = Instant::now();
    let counter = spec.resolved_counter();
    let eval = Evaluator::new(counter, &spec.graph, spec.m, &spec.limits)?;
    let g = &spec.graph;
    let sample = |i: u64| random_cover(g, spec.m, spec.seed.wrapping_add(i));

    let acc = run_in_pool(spec.threads, || {
        let chunk = 256u64;
        let parts: Vec<Result<Acc>> = (0..samples.div_ceil(chunk))
            .into_par_iter()
            .map(|k| {
                let mut acc = Acc::default();
                for i in k * chunk..((k + 1) * chunk).min(samples) {
                    let c = sample(i)?;
                    acc.push(eval.eval(&c.view())?, i, spec.histogram);
                }
                Ok(acc)
            })
            .collect();
        parts
            .into_iter()
            .try_fold(Acc::default(), |a, b| Ok::<_, Error>(a.merge(b?)))
    })??;

    let witness = |slot: Option<(i128, u64)>| -> Result<Option<Extremum>> {
        slot.map(|(value, index)| {
            Ok(Extremum {
                value,
                index,
                cover: sample(index)?,
            })
        })
        .transpose()
    };
    let full_space = factorial(spec.m)
        .and_then(|f| f.checked_pow(g.edge_count() as u32))
        .unwrap_or(u128::MAX);
    Ok(SearchResult {
        graph: g.clone(),
        m: spec.m,
        mode: spec.mode,
        counter,
        normalization: Normalization::None,
        reduction: Reduction::None,
        sampled: true,
        max: if spec.mode.wants_max() { witness(acc.max)? } else { None },
        min: if spec.mode.wants_min() { witness(acc.min)? } else { None },
        evaluated: samples,
        space_size: full_space,
        histogram: spec.histogram.then_some(acc.hist),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs the star-normalized search with and without conjugacy reduction
/// and reports whether both extrema agree.
pub fn verify_reduction_equivalence(g: &Graph, m: usize) -> Result<bool> {
    let base = SearchSpec::new(g.clone(), m);
    let plain = search_exhaustive(&base.clone().with_reduction(Reduction::None))?;
    let reduced = search_exhaustive(&base.with_reduction(Reduction::Conjugacy))?;
    Ok(plain.max_value() == reduced.max_value() && plain.min_value() == reduced.min_value())
}
