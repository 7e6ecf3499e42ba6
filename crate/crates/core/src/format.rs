//! Instance and labeling files.
//!
//! JSON instances carry a header, the node table in colexicographic order,
//! the terminal list and an edge table with weights written as reduced
//! `"p/q"` strings. The DIMACS-like text form is
//!
//! ```text
//! c <comments>
//! p mwc <nodes> <edges> <k>
//! t <node> <terminal id>
//! e <u> <v> <p>/<q>
//! ```
//!
//! with 1-based node indices. Zero-weight edges are omitted unless asked for.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cuts::CutLabeling;
use crate::error::{Error, Result};
use crate::instances::{GapParams, WeightMap};
use crate::lattice::{binomial, SimplexGraph};
use crate::rational::{format_ratio, parse_rational, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub w: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format_version: u32,
    pub k: usize,
    pub n: u32,
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<[String; 4]>,
    pub nodes: Vec<Vec<u32>>,
    pub terminals: Vec<usize>,
    pub edges: Vec<EdgeRecord>,
}

/// Header values carried alongside the weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceMeta {
    pub c: Option<Rational>,
    pub lambda: Option<[Rational; 4]>,
}

impl InstanceMeta {
    pub fn from_params(p: &GapParams) -> Self {
        InstanceMeta { c: Some(p.c.clone()), lambda: Some(p.lambda.clone()) }
    }
}

fn edge_list(w: &WeightMap, include_zero: bool) -> Vec<(usize, Rational)> {
    if include_zero {
        w.dense().into_iter().enumerate().collect()
    } else {
        w.iter().map(|(id, x)| (id, x.clone())).collect()
    }
}

pub fn to_instance_file(w: &WeightMap, meta: &InstanceMeta, include_zero: bool) -> InstanceFile {
    let g = w.graph();
    InstanceFile {
        format_version: FORMAT_VERSION,
        k: g.k(),
        n: g.n(),
        tag: w.tag().to_string(),
        c: meta.c.as_ref().map(format_ratio),
        lambda: meta.lambda.as_ref().map(|l| std::array::from_fn(|i| format_ratio(&l[i]))),
        nodes: g.points().iter().map(|p| p.coords().to_vec()).collect(),
        terminals: g.terminals().to_vec(),
        edges: edge_list(w, include_zero)
            .into_iter()
            .map(|(id, x)| {
                let e = g.edge(id);
                EdgeRecord { u: e.u, v: e.v, w: format_ratio(&x) }
            })
            .collect(),
    }
}

pub fn write_json(w: &WeightMap, meta: &InstanceMeta, include_zero: bool) -> String {
    let mut s = serde_json::to_string_pretty(&to_instance_file(w, meta, include_zero)).expect("serializable");
    s.push('\n');
    s
}

fn parse_weight(s: &str) -> Result<Rational> {
    let r = parse_rational(s)?;
    if r < Rational::zero() {
        return Err(Error::Parse(format!("negative weight {s}")));
    }
    Ok(r)
}

fn set_edge(w: &mut WeightMap, u: usize, v: usize, x: Rational) -> Result<()> {
    let id = w
        .graph()
        .edge_between(u, v)
        .ok_or_else(|| Error::Parse(format!("({u}, {v}) is not an edge of the simplex graph")))?;
    if w.weight_ref(id).is_some() {
        return Err(Error::Parse(format!("edge ({u}, {v}) listed twice")));
    }
    w.set(id, x)
}

pub fn from_instance_file(f: &InstanceFile) -> Result<(WeightMap, InstanceMeta)> {
    if f.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format version {}", f.format_version)));
    }
    let g = Arc::new(SimplexGraph::new(f.k, f.n)?);
    if f.nodes.len() != g.node_count()
        || f.nodes.iter().zip(g.points()).any(|(a, p)| a.as_slice() != p.coords())
    {
        return Err(Error::Parse("node table does not match the colexicographic order".into()));
    }
    if f.terminals != g.terminals() {
        return Err(Error::Parse("terminal list does not match the simplex corners".into()));
    }
    let mut w = WeightMap::zero(g, f.tag.clone());
    for e in &f.edges {
        set_edge(&mut w, e.u, e.v, parse_weight(&e.w)?)?;
    }
    let c = f.c.as_deref().map(parse_rational).transpose()?;
    let lambda = match &f.lambda {
        Some(l) => Some([
            parse_rational(&l[0])?,
            parse_rational(&l[1])?,
            parse_rational(&l[2])?,
            parse_rational(&l[3])?,
        ]),
        None => None,
    };
    Ok((w, InstanceMeta { c, lambda }))
}

pub fn read_json(s: &str) -> Result<(WeightMap, InstanceMeta)> {
    let f: InstanceFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    from_instance_file(&f)
}

pub fn write_dimacs(w: &WeightMap, meta: &InstanceMeta, include_zero: bool) -> String {
    use std::fmt::Write;
    let g = w.graph();
    let edges = edge_list(w, include_zero);
    let mut s = String::new();
    writeln!(s, "c ckr-gap instance format {FORMAT_VERSION}").unwrap();
    writeln!(s, "c tag {}", w.tag()).unwrap();
    writeln!(s, "c k {} n {}", g.k(), g.n()).unwrap();
    if let Some(c) = &meta.c {
        writeln!(s, "c c {}", format_ratio(c)).unwrap();
    }
    if let Some(l) = &meta.lambda {
        let parts: Vec<String> = l.iter().map(format_ratio).collect();
        writeln!(s, "c lambda {}", parts.join(" ")).unwrap();
    }
    writeln!(s, "p mwc {} {} {}", g.node_count(), edges.len(), g.k()).unwrap();
    for (i, &t) in g.terminals().iter().enumerate() {
        writeln!(s, "t {} {}", t + 1, i + 1).unwrap();
    }
    for (id, x) in edges {
        let e = g.edge(id);
        writeln!(s, "e {} {} {}", e.u + 1, e.v + 1, format_ratio(&x)).unwrap();
    }
    s
}

/// `n` with `C(n+k-1, k-1) = nodes`, if any.
fn infer_n(k: usize, nodes: usize) -> Option<u32> {
    (1..=4096u32).find(|&n| binomial(u64::from(n) + k as u64 - 1, k as u64 - 1) == nodes as u128)
}

pub fn read_dimacs(s: &str) -> Result<(WeightMap, InstanceMeta)> {
    let bad = |line: usize, msg: &str| Error::Parse(format!("line {line}: {msg}"));
    let mut meta = InstanceMeta::default();
    let mut tag = String::from("instance");
    let mut header: Option<(usize, usize, usize)> = None;
    let mut w: Option<WeightMap> = None;
    let mut terminals = Vec::new();
    let mut edges_seen = 0usize;
    for (no, raw) in s.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        match it.next() {
            Some("c") => match it.next() {
                Some("tag") => tag = it.collect::<Vec<_>>().join(" "),
                Some("c") => {
                    meta.c = Some(parse_rational(it.next().ok_or_else(|| bad(line_no, "missing c"))?)?)
                }
                Some("lambda") => {
                    let parts: Vec<Rational> = it.map(parse_rational).collect::<Result<_>>()?;
                    let arr: [Rational; 4] =
                        parts.try_into().map_err(|_| bad(line_no, "lambda needs four values"))?;
                    meta.lambda = Some(arr);
                }
                _ => {}
            },
            Some("p") => {
                if header.is_some() {
                    return Err(bad(line_no, "duplicate problem line"));
                }
                if it.next() != Some("mwc") {
                    return Err(bad(line_no, "expected 'p mwc'"));
                }
                let nums: Vec<usize> = it
                    .map(|x| x.parse().map_err(|_| bad(line_no, "bad number")))
                    .collect::<Result<_>>()?;
                let [nodes, edges, k] = nums[..] else {
                    return Err(bad(line_no, "expected 'p mwc <nodes> <edges> <k>'"));
                };
                let n = infer_n(k, nodes).ok_or_else(|| bad(line_no, "node count is not a simplex size"))?;
                w = Some(WeightMap::zero(Arc::new(SimplexGraph::new(k, n)?), tag.clone()));
                header = Some((nodes, edges, k));
            }
            Some("t") => {
                let nums: Vec<usize> = it
                    .map(|x| x.parse().map_err(|_| bad(line_no, "bad number")))
                    .collect::<Result<_>>()?;
                let [node, id] = nums[..] else { return Err(bad(line_no, "expected 't <node> <id>'")) };
                terminals.push((id, node));
            }
            Some("e") => {
                let w = w.as_mut().ok_or_else(|| bad(line_no, "edge before problem line"))?;
                let parts: Vec<&str> = it.collect();
                let [u, v, x] = parts[..] else { return Err(bad(line_no, "expected 'e <u> <v> <w>'")) };
                let u: usize = u.parse().map_err(|_| bad(line_no, "bad node"))?;
                let v: usize = v.parse().map_err(|_| bad(line_no, "bad node"))?;
                if u == 0 || v == 0 {
                    return Err(bad(line_no, "node indices are 1-based"));
                }
                let (a, b) = (u.min(v) - 1, u.max(v) - 1);
                set_edge(w, a, b, parse_weight(x)?)?;
                edges_seen += 1;
            }
            Some(other) => return Err(bad(line_no, &format!("unknown record {other:?}"))),
            None => {}
        }
    }
    let (_, edges, _) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    let w = w.expect("set with header").with_tag(tag);
    if edges != edges_seen {
        return Err(Error::Parse(format!("header announces {edges} edges, found {edges_seen}")));
    }
    terminals.sort_unstable();
    let expected: Vec<(usize, usize)> = w.graph().terminals().iter().enumerate().map(|(i, &t)| (i + 1, t + 1)).collect();
    if terminals != expected {
        return Err(Error::Parse("terminal lines do not match the simplex corners".into()));
    }
    Ok((w, meta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingFile {
    pub format_version: u32,
    pub k: usize,
    pub n: u32,
    pub labels: Vec<u8>,
}

pub fn write_labeling(p: &CutLabeling) -> String {
    let f = LabelingFile {
        format_version: FORMAT_VERSION,
        k: p.graph().k(),
        n: p.graph().n(),
        labels: p.labels().to_vec(),
    };
    let mut s = serde_json::to_string(&f).expect("serializable");
    s.push('\n');
    s
}

pub fn read_labeling(s: &str) -> Result<CutLabeling> {
    let f: LabelingFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if f.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format version {}", f.format_version)));
    }
    CutLabeling::new(Arc::new(SimplexGraph::new(f.k, f.n)?), f.labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::NamedCut;
    use crate::instances::{build_amm_j, build_component, combine, Component};
    use crate::rational::rat;

    #[test]
    fn j_at_nine_dimacs_header() {
        let j = build_amm_j(9).unwrap();
        let text = write_dimacs(&j, &InstanceMeta::default(), false);
        assert!(text.contains("\np mwc 55 117 3\n"), "{text}");
        let full = write_dimacs(&j, &InstanceMeta::default(), true);
        assert!(full.contains("\np mwc 55 135 3\n"));
        assert!(text.contains("\nt 1 1\n"));
    }

    #[test]
    fn i2_json_has_nine_thirds() {
        let w = build_component(Component::I2, 3, None).unwrap();
        let f = to_instance_file(&w, &InstanceMeta::default(), false);
        assert_eq!(f.edges.len(), 9);
        assert!(f.edges.iter().all(|e| e.w == "1/3"));
    }

    #[test]
    fn round_trips_and_cross_parse() {
        let p = GapParams::reference().with_c(rat(1, 3));
        let meta = InstanceMeta::from_params(&p);
        let cases = vec![
            (build_amm_j(6).unwrap(), InstanceMeta::default()),
            (combine(&p, 3).unwrap(), meta),
            (build_component(Component::I4, 2, None).unwrap(), InstanceMeta::default()),
        ];
        for (w, meta) in cases {
            for zero in [false, true] {
                let (a, ma) = read_json(&write_json(&w, &meta, zero)).unwrap();
                let (b, mb) = read_dimacs(&write_dimacs(&w, &meta, zero)).unwrap();
                assert_eq!(a, w);
                assert_eq!(b, w);
                assert_eq!(a.tag(), w.tag());
                assert_eq!(b.tag(), w.tag());
                assert_eq!(ma, meta);
                assert_eq!(mb, meta);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let j = build_amm_j(3).unwrap();
        let text = write_dimacs(&j, &InstanceMeta::default(), false);
        assert!(read_dimacs(&text.replace("p mwc 10", "p mwc 11")).is_err());
        assert!(read_dimacs(&text.replacen("e 1 2", "e 1 10", 1)).is_err());
        let neg = text.replacen("/5", "/-5", 1);
        assert!(read_dimacs(&neg).is_err());
        let json = write_json(&j, &InstanceMeta::default(), false);
        assert!(read_json(&json.replacen("\"format_version\": 1", "\"format_version\": 9", 1)).is_err());
        assert!(read_json("{}").is_err());
    }

    #[test]
    fn labeling_round_trip() {
        let p = NamedCut::P3.build(9, Some(&rat(1, 9))).unwrap();
        assert_eq!(read_labeling(&write_labeling(&p)).unwrap(), p);
        assert!(read_labeling("{\"format_version\":1,\"k\":3,\"n\":1,\"labels\":[2,2,3]}").is_err());
    }
}
