use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use dpcover::constructions::{even_pairing_cover, extremal_cover, odd_k4_cover, odd_kn_cover};
use dpcover::counting::{count_brute_with, count_ie_with, count_k4_identity, count_signed_with, ColorSetSpec};
use dpcover::cover::{cycle_stats, random_cover};
use dpcover::formulas::{thm3_value, thm4_bounds};
use dpcover::graph::catalog_subgraphs;
use dpcover::io::{cover_json, graph_json, load_cover, load_graph, load_signed_graph, search_result_json, CoverFile};
use dpcover::search::{
    auto_counter, search_exhaustive, search_sampled, CounterKind, Mode, Normalization, Reduction, SearchResult,
    SearchSpec,
};
use dpcover::{BigCount, Error, FullCover, Graph, Limits, Result};
use serde_json::{json, Value};

use crate::args::*;

/// What a command produced: the JSON payload plus its table and CSV
/// renderings. `failure` marks a completed run whose check did not hold.
pub struct Report {
    pub payload: Value,
    pub table: String,
    pub csv: String,
    pub failure: Option<String>,
}

impl Report {
    fn ok(payload: Value, table: String, csv: String) -> Self {
        Report {
            payload,
            table,
            csv,
            failure: None,
        }
    }
}

/// Exact integer of any width as a JSON number.
pub fn num(v: impl Display) -> Value {
    serde_json::from_str(&v.to_string()).expect("integer renders as a JSON number")
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn complete(n: usize) -> Result<Graph> {
    Graph::complete(n)
}

fn opt_cell(v: Option<impl Display>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

// ---------------------------------------------------------------------------

struct VerifyRow {
    m: usize,
    method: &'static str,
    value: i128,
    min: Option<i128>,
    expected: i128,
}

pub fn verify(a: &VerifyArgs, limits: &Limits, format: Format) -> Result<Report> {
    if a.m_max < 2 {
        return Err(invalid(format!("--m-max must be at least 2, got {}", a.m_max)));
    }
    let mut rows = Vec::new();
    for m in 2..=a.m_max {
        let expected = thm3_value::<i128>(m as u64)?;
        let row = if m <= 5 {
            let mut spec = SearchSpec::new(complete(4)?, m).with_threads(a.threads);
            spec.limits = *limits;
            if let Some(b) = a.budget {
                spec = spec.with_budget(b);
            }
            let r = search_exhaustive(&spec)?;
            VerifyRow {
                m,
                method: "exhaustive",
                value: r.max_value().expect("both extremes requested"),
                min: r.min_value(),
                expected,
            }
        } else {
            let c = extremal_cover(4, m)?;
            VerifyRow {
                m,
                method: "construction",
                value: count_ie_with::<i128>(&c, limits)?.value,
                min: None,
                expected,
            }
        };
        if format == Format::Table {
            let verdict = if row.value == row.expected { "pass" } else { "FAIL" };
            eprintln!("m = {m}: {} {} vs {} {verdict}", row.method, row.value, row.expected);
        }
        rows.push(row);
    }
    let failed: Vec<usize> = rows.iter().filter(|r| r.value != r.expected).map(|r| r.m).collect();

    let payload = json!({
        "rows": rows.iter().map(|r| json!({
            "m": r.m,
            "method": r.method,
            "value": num(r.value),
            "min": r.min.map(num),
            "expected": num(r.expected),
            "pass": r.value == r.expected,
        })).collect::<Vec<_>>(),
        "all_pass": failed.is_empty(),
    });
    let table = rows
        .iter()
        .map(|r| {
            let mut block = format!("When m = {}:\n{}\n", r.m, r.value);
            if let Some(min) = r.min {
                let _ = writeln!(block, "{min}");
            }
            block
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut csv = String::from("m,method,max,min,expected,pass\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.m,
            r.method,
            r.value,
            opt_cell(r.min),
            r.expected,
            r.value == r.expected
        );
    }
    let failure = (!failed.is_empty()).then(|| format!("closed form not matched at m = {failed:?}"));
    Ok(Report {
        payload,
        table,
        csv,
        failure,
    })
}

// ---------------------------------------------------------------------------

pub fn search(a: &SearchArgs, limits: &Limits) -> Result<Report> {
    let g = load_graph(&a.graph)?;
    let normalization = match a.normalize {
        NormalizeArg::Star if a.root == 0 || a.root > g.n() => {
            return Err(invalid(format!("--root must be in 1..={}, got {}", g.n(), a.root)))
        }
        NormalizeArg::Star => Normalization::Star(a.root - 1),
        NormalizeArg::None => Normalization::None,
    };
    let mut spec = SearchSpec::new(g, a.m)
        .with_mode(match a.mode {
            ModeArg::Max => Mode::Max,
            ModeArg::Min => Mode::Min,
            ModeArg::Both => Mode::Both,
        })
        .with_normalization(normalization)
        .with_reduction(match a.reduce {
            ReduceArg::Conjugacy => Reduction::Conjugacy,
            ReduceArg::None => Reduction::None,
        })
        .with_threads(a.threads)
        .with_histogram(a.histogram);
    spec.limits = *limits;
    spec.counter = match a.counter {
        CounterArg::Auto => None,
        CounterArg::Brute => Some(CounterKind::Brute),
        CounterArg::Ie => Some(CounterKind::InclusionExclusion),
        CounterArg::K4 => Some(CounterKind::K4Identity),
    };
    if let Some(b) = a.budget {
        spec = spec.with_budget(b);
    }
    if let Some(seed) = a.seed {
        spec = spec.with_seed(seed);
    }
    let r = match a.samples {
        Some(n) => search_sampled(&spec, n)?,
        None => search_exhaustive(&spec)?,
    };
    Ok(Report::ok(search_result_json(&r), search_table(&r), search_csv(&r)))
}

fn search_table(r: &SearchResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph       {}", r.graph.name());
    let _ = writeln!(s, "m           {}", r.m);
    let _ = writeln!(s, "kind        {}", if r.sampled { "sampled" } else { "exhaustive" });
    let _ = writeln!(s, "counter     {}", r.counter);
    let _ = writeln!(s, "reduction   {}", r.reduction);
    if let Some(v) = r.max_value() {
        let _ = writeln!(s, "max         {v}");
    }
    if let Some(v) = r.min_value() {
        let _ = writeln!(s, "min         {v} (full-cover minimum)");
    }
    let _ = writeln!(s, "evaluated   {}", r.evaluated);
    let _ = writeln!(s, "space size  {}", r.space_size);
    if let Some(h) = &r.histogram {
        let _ = writeln!(s, "histogram");
        for (value, covers) in h {
            let _ = writeln!(s, "  {value:>10}  {covers}");
        }
    }
    s
}

fn search_csv(r: &SearchResult) -> String {
    format!(
        "graph,m,mode,kind,counter,reduction,max,min,evaluated,space_size\n{},{},{},{},{},{},{},{},{},{}\n",
        r.graph.name(),
        r.m,
        r.mode,
        if r.sampled { "sampled" } else { "exhaustive" },
        r.counter,
        r.reduction,
        opt_cell(r.max_value()),
        opt_cell(r.min_value()),
        r.evaluated,
        r.space_size
    )
}

// ---------------------------------------------------------------------------

fn resolve_cover(src: &CoverSource) -> Result<FullCover> {
    if let Some(path) = &src.cover {
        let g = load_graph(src.graph.as_deref().expect("clap requires --graph with --cover"))?;
        return load_cover(path, &g);
    }
    let kind = src.construct.expect("clap requires --cover or --construct");
    let m = src.m.ok_or_else(|| invalid("--construct needs --m"))?;
    let base_graph = || -> Result<Graph> {
        match (&src.graph, src.n) {
            (Some(_), Some(_)) => Err(invalid("give either --graph or --n, not both")),
            (Some(g), None) => load_graph(g),
            (None, Some(n)) => complete(n),
            (None, None) => Err(invalid("the construction needs --n or --graph")),
        }
    };
    let order = || -> Result<usize> {
        if src.graph.is_some() {
            return Err(invalid("this construction lives on K_n; use --n instead of --graph"));
        }
        src.n.ok_or_else(|| invalid("this construction needs --n"))
    };
    match kind {
        ConstructKind::EvenPairing => even_pairing_cover(order()?, m),
        ConstructKind::OddK4 => match src.n {
            Some(n) if n != 4 => Err(invalid(format!("odd-k4 is a K4 construction, got --n {n}"))),
            _ => odd_k4_cover(m),
        },
        ConstructKind::OddKn => odd_kn_cover(order()?, m),
        ConstructKind::Extremal => extremal_cover(order()?, m),
        ConstructKind::Canonical => FullCover::canonical(base_graph()?, m),
        ConstructKind::Random => {
            let seed = src.seed.ok_or_else(|| invalid("the random construction needs an explicit --seed"))?;
            random_cover(&base_graph()?, m, seed)
        }
    }
}

fn is_k4(g: &Graph) -> bool {
    g.n() == 4 && g.is_complete()
}

fn run_counter(c: &FullCover, kind: CounterKind, limits: &Limits) -> Result<i128> {
    Ok(match kind {
        CounterKind::Brute => count_brute_with(c, limits)?.value,
        CounterKind::InclusionExclusion => count_ie_with::<i128>(c, limits)?.value,
        CounterKind::K4Identity => {
            if !is_k4(c.graph()) {
                return Err(invalid("the k4 counter only applies to K4"));
            }
            count_k4_identity(&cycle_stats(c, &catalog_subgraphs(c.graph()))?, c.m())?.value
        }
    })
}

pub fn count(a: &CountArgs, limits: &Limits) -> Result<Report> {
    let c = resolve_cover(&a.source)?;
    let g = c.graph();
    let choice = if a.all { CountCounter::All } else { a.counter };
    let kinds: Vec<CounterKind> = match choice {
        CountCounter::Auto => vec![auto_counter(g, c.m())],
        CountCounter::Brute => vec![CounterKind::Brute],
        CountCounter::Ie => vec![CounterKind::InclusionExclusion],
        CountCounter::K4 => vec![CounterKind::K4Identity],
        CountCounter::All => {
            let mut all = vec![CounterKind::Brute, CounterKind::InclusionExclusion];
            if is_k4(g) {
                all.push(CounterKind::K4Identity);
            }
            all
        }
    };
    let mut counts = BTreeMap::new();
    let mut skipped = Vec::new();
    for kind in kinds {
        match run_counter(&c, kind, limits) {
            Ok(v) => {
                counts.insert(kind.as_str(), v);
            }
            // under --counter all a counter that cannot run here is skipped
            Err(e @ Error::ResourceLimit(_)) if choice == CountCounter::All => {
                eprintln!("skipping {kind}: {e}");
                skipped.push(kind.as_str());
            }
            Err(e) => return Err(e),
        }
    }
    let value = *counts
        .values()
        .next()
        .ok_or_else(|| Error::ResourceLimit("no counter could run on this cover".into()))?;
    let agree = counts.values().all(|&v| v == value);

    let payload = json!({
        "graph": graph_json(g),
        "m": c.m(),
        "counts": counts.iter().map(|(k, &v)| (k.to_string(), num(v))).collect::<serde_json::Map<_, _>>(),
        "skipped": skipped,
        "value": num(value),
        "agree": agree,
    });
    let mut table = format!("graph  {}\nm      {}\n", g.name(), c.m());
    let mut csv = String::from("counter,value\n");
    for (k, v) in &counts {
        let _ = writeln!(table, "{k:<20} {v}");
        let _ = writeln!(csv, "{k},{v}");
    }
    let failure = (!agree).then(|| format!("counters disagree: {counts:?}"));
    Ok(Report {
        payload,
        table,
        csv,
        failure,
    })
}

// ---------------------------------------------------------------------------

pub fn signed(a: &SignedArgs, limits: &Limits) -> Result<Report> {
    let sg = match (&a.graph, a.n) {
        (Some(spec), _) => load_signed_graph(spec)?,
        (None, Some(n)) => dpcover::constructions::all_negative_signing(n)?,
        (None, None) => unreachable!("clap requires --n or --graph"),
    };
    let colors = ColorSetSpec::new(a.lambda)?;
    let count = count_signed_with(&sg, &colors, limits)?.value;
    let all_negative_k4 = is_k4(sg.graph()) && sg.signs().iter().all(|&s| s == -1);
    let dual = if !a.compare_dual {
        None
    } else if all_negative_k4 && a.lambda.is_multiple_of(2) && a.lambda >= 2 {
        Some(thm3_value::<i128>(u64::from(a.lambda))?)
    } else {
        eprintln!("note: the dual comparison applies to the all-negative K4 at even lambda; skipped");
        None
    };

    let payload = json!({
        "graph": graph_json(sg.graph()),
        "lambda": a.lambda,
        "colors": colors.colors(),
        "count": num(count),
        "dual": dual.map(|d| json!({"value": num(d), "equal": d == count})),
    });
    let mut table = format!("graph   {}\nlambda  {}\ncount   {count}\n", sg.graph().name(), a.lambda);
    if let Some(d) = dual {
        let _ = writeln!(table, "dual    {d}\nequal   {}", d == count);
    }
    let csv = format!(
        "graph,lambda,count,dual,equal\n{},{},{count},{},{}\n",
        sg.graph().name(),
        a.lambda,
        opt_cell(dual),
        opt_cell(dual.map(|d| d == count))
    );
    Ok(Report::ok(payload, table, csv))
}

// ---------------------------------------------------------------------------

pub fn bounds(a: &BoundsArgs, limits: &Limits) -> Result<Report> {
    let b = thm4_bounds::<BigCount>(a.n, a.m)?;
    let asserted = b.asserted_at(&BigCount::from(a.m));
    if !asserted {
        eprintln!(
            "note: m = {} does not exceed the threshold {}; the bounds are not asserted there",
            a.m, b.threshold
        );
    }
    let construction = if a.check_construction {
        let n = usize::try_from(a.n).map_err(|_| invalid("n too large"))?;
        let m = usize::try_from(a.m).map_err(|_| invalid("m too large"))?;
        let kind = match (a.m % 2, a.n) {
            (0, _) => "even-pairing",
            (_, 4) => "odd-k4",
            _ => "odd-kn",
        };
        let c = extremal_cover(n, m)?;
        let value = count_ie_with::<BigCount>(&c, limits)?.value;
        Some((kind, b.contains(&value), value))
    } else {
        None
    };

    let t = a.n * (a.n.saturating_sub(1)) / 2;
    let payload = json!({
        "n": a.n,
        "m": a.m,
        "t": t,
        "threshold": num(&b.threshold),
        "asserted": asserted,
        "f": num(&b.f_value),
        "slack": num(&b.slack),
        "lower": num(&b.lower),
        "upper": num(&b.upper),
        "construction": construction.as_ref().map(|(kind, within, value)| json!({
            "kind": kind,
            "count": num(value),
            "within": within,
        })),
    });
    let mut table = String::new();
    let _ = writeln!(table, "n          {}", a.n);
    let _ = writeln!(table, "m          {}", a.m);
    let _ = writeln!(table, "threshold  {}", b.threshold);
    let _ = writeln!(table, "asserted   {asserted}");
    let _ = writeln!(table, "f(m)       {}", b.f_value);
    let _ = writeln!(table, "lower      {}", b.lower);
    let _ = writeln!(table, "upper      {}", b.upper);
    if let Some((kind, within, value)) = &construction {
        let _ = writeln!(table, "cover      {kind}");
        let _ = writeln!(table, "count      {value}");
        let _ = writeln!(table, "within     {within}");
    }
    let (ck, cv, cw) = match &construction {
        Some((kind, within, value)) => (kind.to_string(), value.to_string(), within.to_string()),
        None => Default::default(),
    };
    let csv = format!(
        "n,m,threshold,asserted,f,lower,upper,construction,count,within\n{},{},{},{asserted},{},{},{},{ck},{cv},{cw}\n",
        a.n, a.m, b.threshold, b.f_value, b.lower, b.upper
    );
    Ok(Report::ok(payload, table, csv))
}

// ---------------------------------------------------------------------------

pub fn construct(a: &ConstructArgs) -> Result<Report> {
    let c = resolve_cover(&a.source)?;
    let file = cover_json(&c);
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&file).expect("cover file serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let perms = CoverFile::from_cover(&c).perms;
    let mut table = format!("m {}\n", c.m());
    let mut csv = String::from("edge,permutation\n");
    for (key, images) in &perms {
        let images: Vec<String> = images.iter().map(u32::to_string).collect();
        let _ = writeln!(table, "{key:<6} {}", images.join(" "));
        let _ = writeln!(csv, "{key},{}", images.join(" "));
    }
    let payload = json!({"graph": graph_json(c.graph()), "cover": file});
    Ok(Report::ok(payload, table, csv))
}
