//! JSON file formats. Vertices and colors are 1-indexed in files.
//!
//! Graph file: `{"n": 4, "edges": [[1,2], ...], "signs": {"1-2": -1, ...}}`
//! with `signs` optional (missing edges default to `+1`).
//!
//! Cover file: `{"m": 4, "perms": {"1-2": [2,1,4,3], ...}}` with one key
//! `"i-j"`, `i < j`, per edge of the graph.
//!
//! Anywhere a graph file is accepted, the names `K1` .. `K8` may be used.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cover::{build_cover, FullCover};
use crate::graph::{Graph, SignedGraph};
use crate::perm::Permutation;
use crate::search::{Normalization, SearchResult};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<BTreeMap<String, i8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub m: usize,
    pub perms: BTreeMap<String, Vec<u32>>,
}

pub fn edge_key(a: usize, b: usize) -> String {
    format!("{}-{}", a + 1, b + 1)
}

fn parse_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::invalid(format!("edge key {key:?} is not of the form \"i-j\""));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(Error::invalid(format!("edge key {key:?} uses vertex 0; files are 1-indexed")));
    }
    if a >= b {
        return Err(Error::invalid(format!("edge key {key:?} must list the smaller vertex first")));
    }
    Ok((a - 1, b - 1))
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            signs: None,
        }
    }

    pub fn from_signed(sg: &SignedGraph) -> Self {
        let g = sg.graph();
        let signs = g
            .edges()
            .iter()
            .zip(sg.signs())
            .map(|(&(a, b), &s)| (edge_key(a, b), s))
            .collect();
        GraphFile {
            signs: Some(signs),
            ..Self::from_graph(g)
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|&[a, b]| {
                if a == 0 || b == 0 {
                    return Err(Error::invalid("edge list uses vertex 0; files are 1-indexed"));
                }
                Ok((a - 1, b - 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::new(self.n, edges)
    }

    pub fn to_signed(&self) -> Result<SignedGraph> {
        let g = self.to_graph()?;
        let mut signs = vec![1i8; g.edge_count()];
        for (key, &s) in self.signs.iter().flatten() {
            let (a, b) = parse_key(key)?;
            let e = g
                .edge_index(a, b)
                .ok_or_else(|| Error::invalid(format!("sign given for non-edge {key}")))?;
            signs[e] = s;
        }
        SignedGraph::new(g, signs)
    }
}

impl CoverFile {
    pub fn from_cover(c: &FullCover) -> Self {
        let perms = c
            .graph()
            .edges()
            .iter()
            .zip(c.sigma())
            .map(|(&(a, b), p)| (edge_key(a, b), p.to_one_indexed()))
            .collect();
        CoverFile { m: c.m(), perms }
    }

    pub fn to_cover(&self, g: &Graph) -> Result<FullCover> {
        let map = self
            .perms
            .iter()
            .map(|(key, images)| {
                let edge = parse_key(key)?;
                if images.len() != self.m {
                    return Err(Error::invalid(format!(
                        "permutation {key} has length {}, expected m = {}",
                        images.len(),
                        self.m
                    )));
                }
                Ok((edge, Permutation::from_one_indexed(images)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        build_cover(g, self.m, &map)
    }
}

/// `K<n>` for `n` in `1..=8`.
pub fn builtin_graph(name: &str) -> Option<Graph> {
    let n: usize = name.strip_prefix(['K', 'k'])?.parse().ok()?;
    (1..=8).contains(&n).then(|| Graph::complete(n).ok()).flatten()
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

/// Resolves a built-in name or reads a graph file, keeping any signs.
pub fn load_signed_graph(spec: &str) -> Result<SignedGraph> {
    if let Some(g) = builtin_graph(spec) {
        return SignedGraph::uniform(g, 1);
    }
    read_json::<GraphFile>(Path::new(spec))?.to_signed()
}

pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(g) = builtin_graph(spec) {
        return Ok(g);
    }
    read_json::<GraphFile>(Path::new(spec))?.to_graph()
}

pub fn load_cover(path: &Path, g: &Graph) -> Result<FullCover> {
    read_json::<CoverFile>(path)?.to_cover(g)
}

pub fn graph_json(g: &Graph) -> Value {
    serde_json::to_value(GraphFile::from_graph(g)).expect("graph file serializes")
}

pub fn cover_json(c: &FullCover) -> Value {
    serde_json::to_value(CoverFile::from_cover(c)).expect("cover file serializes")
}

/// Exact integer as a JSON number when it fits 64 bits, else as a decimal
/// string.
pub fn int_json(v: i128) -> Value {
    if let Ok(x) = i64::try_from(v) {
        json!(x)
    } else if let Ok(x) = u64::try_from(v) {
        json!(x)
    } else {
        json!(v.to_string())
    }
}

fn uint_json(v: u128) -> Value {
    i128::try_from(v).map_or_else(|_| json!(v.to_string()), int_json)
}

/// Search result object. Counts are exact integers; `max`/`min` are `null`
/// when the mode did not ask for them. `min` ranges over full covers only,
/// so it bounds the DP color function from above without claiming to equal
/// it.
pub fn search_result_json(r: &SearchResult) -> Value {
    let value = |e: &Option<crate::search::Extremum>| match e {
        Some(e) => int_json(e.value),
        None => Value::Null,
    };
    let cover = |e: &Option<crate::search::Extremum>| match e {
        Some(e) => cover_json(&e.cover),
        None => Value::Null,
    };
    let normalization = match r.normalization {
        Normalization::Star(root) => json!({"star": root + 1}),
        Normalization::None => json!("none"),
    };
    let mut out = json!({
        "graph": graph_json(&r.graph),
        "m": r.m,
        "mode": r.mode.as_str(),
        "kind": if r.sampled { "sampled" } else { "exhaustive" },
        "counter": r.counter.as_str(),
        "normalization": normalization,
        "reduction": r.reduction.as_str(),
        "max": value(&r.max),
        "min": value(&r.min),
        "min_scope": r.min.as_ref().map(|_| "full-cover minimum"),
        "argmax_cover": cover(&r.max),
        "argmin_cover": cover(&r.min),
        "evaluated": r.evaluated,
        "space_size": uint_json(r.space_size),
        "elapsed_ms": uint_json(r.elapsed_ms),
    });
    if let Some(hist) = &r.histogram {
        let h: BTreeMap<String, u64> = hist.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        out["histogram"] = json!(h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::even_pairing_cover;
    use crate::cover::random_cover;
    use proptest::prelude::*;

    #[test]
    fn builtins() {
        assert_eq!(builtin_graph("K4").unwrap().edge_count(), 6);
        assert_eq!(builtin_graph("K8").unwrap().edge_count(), 28);
        assert!(builtin_graph("K9").is_none());
        assert!(builtin_graph("K0").is_none());
        assert!(builtin_graph("P4").is_none());
    }

    #[test]
    fn cover_file_uses_one_indexed_keys() {
        let c = even_pairing_cover(4, 4).unwrap();
        let f = CoverFile::from_cover(&c);
        assert_eq!(f.perms["1-2"], vec![2, 1, 4, 3]);
        assert_eq!(f.perms.len(), 6);
        assert_eq!(f.to_cover(c.graph()).unwrap(), c);
    }

    #[test]
    fn cover_file_errors() {
        let g = Graph::complete(2).unwrap();
        let parse = |s: &str| serde_json::from_str::<CoverFile>(s).unwrap().to_cover(&g);
        assert!(parse(r#"{"m": 2, "perms": {"1-2": [2, 1]}}"#).is_ok());
        assert!(parse(r#"{"m": 2, "perms": {"1-2": [1, 1]}}"#).is_err());
        assert!(parse(r#"{"m": 2, "perms": {"2-1": [2, 1]}}"#).is_err());
        assert!(parse(r#"{"m": 3, "perms": {"1-2": [2, 1]}}"#).is_err());
        assert!(parse(r#"{"m": 2, "perms": {}}"#).is_err());
        assert!(parse(r#"{"m": 2, "perms": {"0-1": [2, 1]}}"#).is_err());
    }

    #[test]
    fn graph_file_with_signs() {
        let text = r#"{"n": 3, "edges": [[1,2],[2,3]], "signs": {"2-3": -1}}"#;
        let f: GraphFile = serde_json::from_str(text).unwrap();
        let sg = f.to_signed().unwrap();
        assert_eq!(sg.signs(), &[1, -1]);
        assert_eq!(GraphFile::from_signed(&sg).to_signed().unwrap(), sg);
        let bad: GraphFile = serde_json::from_str(r#"{"n": 3, "edges": [[1,2]], "signs": {"1-3": -1}}"#).unwrap();
        assert!(bad.to_signed().is_err());
        let zero: GraphFile = serde_json::from_str(r#"{"n": 3, "edges": [[0,2]]}"#).unwrap();
        assert!(zero.to_graph().is_err());
    }

    proptest! {
        #[test]
        fn cover_file_round_trip(n in 1usize..6, m in 1usize..7, seed in any::<u64>()) {
            let g = Graph::complete(n).unwrap();
            let c = random_cover(&g, m, seed).unwrap();
            let text = serde_json::to_string(&CoverFile::from_cover(&c)).unwrap();
            let back: CoverFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.to_cover(&g).unwrap(), c);
        }

        #[test]
        fn graph_file_round_trip(n in 1usize..7, bits in any::<u32>()) {
            let all = Graph::complete(n).unwrap();
            let edges = all.edges().iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e);
            let g = Graph::new(n, edges).unwrap();
            let text = serde_json::to_string(&GraphFile::from_graph(&g)).unwrap();
            let back: GraphFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.to_graph().unwrap(), g);
        }
    }
}
