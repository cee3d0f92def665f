//! Bundled classification catalogs.
//!
//! Each catalog file holds one record per family in a line-oriented
//! `key=value` format:
//!
//! ```text
//! name=B nodes=n min=2 edges=path(4;3...)
//! name=F4 nodes=4 edges=1-2,2-3:4,3-4
//! name=I2 nodes=2 edges=1-2:p constraint=i2
//! ```
//!
//! `nodes` is a fixed count or `n` for a size series (with `min=`).
//! `edges` is either a structural template — `path(...)`, `cycle(...)`,
//! `fork(...)`, `bifork(...)`, whose arguments are edge marks with at most
//! one `m...` filler — or an explicit comma-separated edge list `i-j:m`
//! (bare `i-j` means mark 3, like the diagram DSL). Marks may be integers,
//! `inf`, or single-letter parameters constrained by a named predicate.
//!
//! The default catalogs are compiled in; the `COXETERKIT_CATALOG` environment
//! variable points at a directory with replacement `.catalog` files.

mod enumerate;

pub use enumerate::enumerate_hyperbolic_simplexes;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::diagram::{CoxeterDiagram, EdgeMark};
use crate::error::{CoxError, Result};

/// Which catalog a record belongs to; decides the rank convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogKind {
    Spherical,
    Euclidean,
    HyperbolicCompact,
    HyperbolicNoncompact,
}

impl CatalogKind {
    fn file_name(self) -> &'static str {
        match self {
            CatalogKind::Spherical => "spherical.catalog",
            CatalogKind::Euclidean => "euclidean.catalog",
            CatalogKind::HyperbolicCompact => "hyperbolic_compact.catalog",
            CatalogKind::HyperbolicNoncompact => "hyperbolic_noncompact.catalog",
        }
    }

    /// Rank of a diagram with `k` nodes in this catalog.
    pub fn rank_of(self, k: usize) -> usize {
        match self {
            CatalogKind::Spherical => k,
            _ => k - 1,
        }
    }
}

/// A mark slot in a template: literal or named parameter.
#[derive(Debug, Clone, PartialEq)]
enum PatTok {
    Lit(EdgeMark),
    Param(String),
}

/// A value bound to a mark parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkValue {
    Finite(u32),
    Inf,
}

impl std::fmt::Display for MarkValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MarkValue::Finite(m) => write!(f, "{m}"),
            MarkValue::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Template {
    Path(Vec<SeriesTok>),
    Cycle(Vec<SeriesTok>),
    Fork(Vec<SeriesTok>),
    Bifork(Vec<SeriesTok>),
    Explicit(Vec<(usize, usize, PatTok)>),
}

#[derive(Debug, Clone, PartialEq)]
enum SeriesTok {
    One(PatTok),
    Fill(PatTok),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeSpec {
    Fixed(usize),
    Series { min: usize },
}

/// One catalog family.
#[derive(Debug, Clone)]
pub struct CatalogRecord {
    pub name: String,
    nodes: NodeSpec,
    template: Template,
    pub constraint: Option<String>,
}

/// A loaded catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub kind: CatalogKind,
    pub records: Vec<CatalogRecord>,
}

/// Family identification: catalog name, rank, and bound parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyLabel {
    pub name: String,
    pub rank: usize,
    pub params: Vec<MarkValue>,
}

impl std::fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.params.is_empty() {
            // Series names get the rank appended; fixed names carry it already.
            if self.name.chars().all(|c| !c.is_ascii_digit()) {
                write!(f, "{}{}", self.name, self.rank)
            } else {
                write!(f, "{}", self.name)
            }
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "{}({})", self.name, ps.join(","))
        }
    }
}

fn parse_pat_tok(s: &str) -> Result<PatTok> {
    if s == "inf" {
        return Ok(PatTok::Lit(EdgeMark::Parallel));
    }
    if let Ok(m) = s.parse::<u32>() {
        if m < 3 {
            return Err(CoxError::Catalog(format!("mark {m} < 3")));
        }
        return Ok(PatTok::Lit(EdgeMark::Finite(m)));
    }
    if s.len() == 1 && s.chars().next().unwrap().is_ascii_lowercase() {
        return Ok(PatTok::Param(s.to_string()));
    }
    Err(CoxError::Catalog(format!("bad mark token {s:?}")))
}

fn parse_series_toks(args: &str) -> Result<Vec<SeriesTok>> {
    let mut out = Vec::new();
    let mut fills = 0;
    for piece in args.split(';') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        if let Some(base) = piece.strip_suffix("...") {
            fills += 1;
            out.push(SeriesTok::Fill(parse_pat_tok(base)?));
        } else {
            out.push(SeriesTok::One(parse_pat_tok(piece)?));
        }
    }
    if fills > 1 {
        return Err(CoxError::Catalog("at most one filler allowed".into()));
    }
    Ok(out)
}

fn parse_explicit(list: &str) -> Result<Vec<(usize, usize, PatTok)>> {
    let mut out = Vec::new();
    for item in list.split(',') {
        let item = item.trim();
        let (pair, tok) = match item.find(':') {
            Some(pos) => (&item[..pos], parse_pat_tok(item[pos + 1..].trim())?),
            None => (item, PatTok::Lit(EdgeMark::Finite(3))),
        };
        let mut ends = pair.splitn(2, '-');
        let parse_end = |t: Option<&str>| -> Result<usize> {
            t.and_then(|x| x.trim().parse::<usize>().ok())
                .ok_or_else(|| CoxError::Catalog(format!("bad edge {item:?}")))
        };
        let i = parse_end(ends.next())?;
        let j = parse_end(ends.next())?;
        out.push((i, j, tok));
    }
    Ok(out)
}

fn parse_record(line: &str) -> Result<CatalogRecord> {
    let mut name = None;
    let mut nodes = None;
    let mut min = None;
    let mut edges = None;
    let mut constraint = None;
    for field in line.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| CoxError::Catalog(format!("expected key=value, got {field:?}")))?;
        match key {
            "name" => name = Some(value.to_string()),
            "nodes" => nodes = Some(value.to_string()),
            "min" => {
                min = Some(value.parse::<usize>().map_err(|_| {
                    CoxError::Catalog(format!("bad min {value:?}"))
                })?)
            }
            "edges" => edges = Some(value.to_string()),
            "constraint" => constraint = Some(value.to_string()),
            other => return Err(CoxError::Catalog(format!("unknown key {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| CoxError::Catalog("record without name".into()))?;
    let nodes = match nodes.as_deref() {
        Some("n") => NodeSpec::Series {
            min: min.ok_or_else(|| CoxError::Catalog(format!("{name}: series without min")))?,
        },
        Some(v) => NodeSpec::Fixed(
            v.parse::<usize>()
                .map_err(|_| CoxError::Catalog(format!("{name}: bad node count {v:?}")))?,
        ),
        None => return Err(CoxError::Catalog(format!("{name}: missing nodes="))),
    };
    let edges_text = edges.unwrap_or_default();
    let template = if let Some(args) = edges_text.strip_prefix("path(").and_then(|s| s.strip_suffix(')')) {
        Template::Path(parse_series_toks(args)?)
    } else if let Some(args) = edges_text.strip_prefix("cycle(").and_then(|s| s.strip_suffix(')')) {
        Template::Cycle(parse_series_toks(args)?)
    } else if let Some(args) = edges_text.strip_prefix("fork(").and_then(|s| s.strip_suffix(')')) {
        Template::Fork(parse_series_toks(args)?)
    } else if let Some(args) = edges_text.strip_prefix("bifork(").and_then(|s| s.strip_suffix(')')) {
        Template::Bifork(parse_series_toks(args)?)
    } else if edges_text.is_empty() {
        Template::Explicit(Vec::new())
    } else {
        Template::Explicit(parse_explicit(&edges_text)?)
    };
    if let Some(c) = &constraint {
        if !KNOWN_CONSTRAINTS.contains(&c.as_str()) {
            return Err(CoxError::Catalog(format!("{name}: unknown constraint {c:?}")));
        }
    }
    Ok(CatalogRecord { name, nodes, template, constraint })
}

const KNOWN_CONSTRAINTS: &[&str] = &[
    "i2",
    "compact_tri_path",
    "compact_tri_cycle",
    "noncompact_tri_path",
    "noncompact_tri_cycle",
];

fn eval_constraint(name: &str, params: &BTreeMap<String, MarkValue>) -> bool {
    let recip = |v: &MarkValue| match v {
        MarkValue::Finite(m) => 1.0 / *m as f64,
        MarkValue::Inf => 0.0,
    };
    let values: Vec<&MarkValue> = params.values().collect();
    let any_inf = values.iter().any(|v| matches!(v, MarkValue::Inf));
    let all_finite = !any_inf;
    match name {
        "i2" => matches!(params.get("p"), Some(MarkValue::Finite(m)) if *m >= 5),
        "compact_tri_path" => {
            all_finite && 0.5 + values.iter().map(|v| recip(v)).sum::<f64>() < 1.0 - 1e-12
        }
        "compact_tri_cycle" => {
            all_finite && values.iter().map(|v| recip(v)).sum::<f64>() < 1.0 - 1e-12
        }
        "noncompact_tri_path" | "noncompact_tri_cycle" => any_inf,
        _ => false,
    }
}

fn expand_series(toks: &[SeriesTok], len: usize) -> Option<Vec<PatTok>> {
    let ones = toks.iter().filter(|t| matches!(t, SeriesTok::One(_))).count();
    let has_fill = toks.len() != ones;
    if has_fill {
        if len + 1 < toks.len() {
            return None;
        }
        let fill_len = len - ones;
        let mut out = Vec::with_capacity(len);
        for t in toks {
            match t {
                SeriesTok::One(p) => out.push(p.clone()),
                SeriesTok::Fill(p) => out.extend(std::iter::repeat_n(p.clone(), fill_len)),
            }
        }
        Some(out)
    } else if len == ones {
        Some(toks
            .iter()
            .map(|t| match t {
                SeriesTok::One(p) => p.clone(),
                SeriesTok::Fill(_) => unreachable!(),
            })
            .collect())
    } else {
        None
    }
}

impl CatalogRecord {
    fn admits(&self, k: usize) -> bool {
        match self.nodes {
            NodeSpec::Fixed(n) => n == k,
            NodeSpec::Series { min } => k >= min,
        }
    }

    /// Pattern edges for a concrete node count, or `None` if the template
    /// cannot stretch to `k` nodes.
    fn pattern(&self, k: usize) -> Option<Vec<(usize, usize, PatTok)>> {
        if !self.admits(k) {
            return None;
        }
        match &self.template {
            Template::Explicit(edges) => Some(edges.clone()),
            Template::Path(toks) => {
                if k < 1 {
                    return None;
                }
                let marks = expand_series(toks, k - 1)?;
                Some((0..k - 1).map(|i| (i + 1, i + 2, marks[i].clone())).collect())
            }
            Template::Cycle(toks) => {
                if k < 3 {
                    return None;
                }
                let marks = expand_series(toks, k)?;
                let mut edges: Vec<(usize, usize, PatTok)> =
                    (0..k - 1).map(|i| (i + 1, i + 2, marks[i].clone())).collect();
                edges.push((1, k, marks[k - 1].clone()));
                Some(edges)
            }
            Template::Fork(toks) => {
                if k < 4 {
                    return None;
                }
                let marks = expand_series(toks, k - 3)?;
                let mut edges = vec![
                    (1, 3, PatTok::Lit(EdgeMark::Finite(3))),
                    (2, 3, PatTok::Lit(EdgeMark::Finite(3))),
                ];
                edges.extend((0..k - 3).map(|i| (i + 3, i + 4, marks[i].clone())));
                Some(edges)
            }
            Template::Bifork(toks) => {
                if k < 5 {
                    return None;
                }
                let marks = expand_series(toks, k - 5)?;
                let mut edges = vec![
                    (1, 3, PatTok::Lit(EdgeMark::Finite(3))),
                    (2, 3, PatTok::Lit(EdgeMark::Finite(3))),
                    (k - 1, k - 2, PatTok::Lit(EdgeMark::Finite(3))),
                    (k, k - 2, PatTok::Lit(EdgeMark::Finite(3))),
                ];
                edges.extend((0..k - 5).map(|i| (i + 3, i + 4, marks[i].clone())));
                Some(edges)
            }
        }
    }

    /// Instantiate with all parameters bound.
    fn instantiate(&self, k: usize, params: &BTreeMap<String, MarkValue>) -> Option<CoxeterDiagram> {
        let pattern = self.pattern(k)?;
        let mut d = CoxeterDiagram::new(k).ok()?;
        for (i, j, tok) in pattern {
            let mark = match tok {
                PatTok::Lit(m) => m,
                PatTok::Param(p) => match params.get(&p)? {
                    MarkValue::Finite(m) => EdgeMark::Finite(*m),
                    MarkValue::Inf => EdgeMark::Parallel,
                },
            };
            d.add_edge(i, j, mark).ok()?;
        }
        Some(d)
    }

    fn param_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        let mut push = |t: &PatTok| {
            if let PatTok::Param(p) = t {
                if !names.contains(p) {
                    names.push(p.clone());
                }
            }
        };
        match &self.template {
            Template::Explicit(edges) => edges.iter().for_each(|(_, _, t)| push(t)),
            Template::Path(toks) | Template::Cycle(toks) | Template::Fork(toks) | Template::Bifork(toks) => {
                toks.iter().for_each(|t| match t {
                    SeriesTok::One(p) | SeriesTok::Fill(p) => push(p),
                })
            }
        }
        names
    }
}

/// Edge-mark matrix view of a diagram, `None` meaning a right angle.
fn mark_matrix(d: &CoxeterDiagram) -> Vec<Vec<Option<EdgeMark>>> {
    let k = d.node_count();
    let mut m = vec![vec![None; k + 1]; k + 1];
    for (i, j, mark) in d.edges() {
        m[i][j] = Some(mark);
        m[j][i] = Some(mark);
    }
    m
}

fn marks_equal(a: EdgeMark, b: EdgeMark) -> bool {
    match (a, b) {
        (EdgeMark::Finite(x), EdgeMark::Finite(y)) => x == y,
        (EdgeMark::Parallel, EdgeMark::Parallel) => true,
        (EdgeMark::Ultraparallel(x), EdgeMark::Ultraparallel(y)) => (x - y).abs() < 1e-12,
        _ => false,
    }
}

/// Are two unringed diagrams isomorphic as mark-labeled graphs?
pub fn diagram_isomorphic(a: &CoxeterDiagram, b: &CoxeterDiagram) -> bool {
    if a.node_count() != b.node_count() {
        return false;
    }
    let k = a.node_count();
    let pattern: Vec<(usize, usize, PatTok)> =
        a.edges().map(|(i, j, m)| (i, j, PatTok::Lit(m))).collect();
    match_pattern(b, k, &pattern, a.edges().count()).is_some()
}

/// Backtracking isomorphism of `pattern` (on `k` nodes, edges listed, all
/// other pairs implicitly absent) onto diagram `d`. Returns the parameter
/// bindings on success.
fn match_pattern(
    d: &CoxeterDiagram,
    k: usize,
    pattern: &[(usize, usize, PatTok)],
    pattern_edge_count: usize,
) -> Option<BTreeMap<String, MarkValue>> {
    if d.node_count() != k || d.edges().count() != pattern_edge_count {
        return None;
    }
    let dm = mark_matrix(d);

    // Pattern adjacency.
    let mut pm: Vec<Vec<Option<&PatTok>>> = vec![vec![None; k + 1]; k + 1];
    let mut pdeg = vec![0usize; k + 1];
    for (i, j, t) in pattern {
        pm[*i][*j] = Some(t);
        pm[*j][*i] = Some(t);
        pdeg[*i] += 1;
        pdeg[*j] += 1;
    }
    let mut ddeg = vec![0usize; k + 1];
    for (i, j, _) in d.edges() {
        ddeg[i] += 1;
        ddeg[j] += 1;
    }
    {
        let mut a: Vec<usize> = pdeg[1..].to_vec();
        let mut b: Vec<usize> = ddeg[1..].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }

    // Assign pattern nodes in order of decreasing degree.
    let mut order: Vec<usize> = (1..=k).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pdeg[v]));

    #[allow(clippy::too_many_arguments)]
    fn go(
        pos: usize,
        order: &[usize],
        pm: &[Vec<Option<&PatTok>>],
        dm: &[Vec<Option<EdgeMark>>],
        pdeg: &[usize],
        ddeg: &[usize],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        bindings: &mut BTreeMap<String, MarkValue>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let p = order[pos];
        'candidates: for c in 1..used.len() {
            if used[c] || pdeg[p] != ddeg[c] {
                continue;
            }
            let mut added: Vec<String> = Vec::new();
            for &q in order[..pos].iter() {
                let pc = pm[p][q];
                let dc = dm[c][assign[q]];
                match (pc, dc) {
                    (None, None) => {}
                    (Some(PatTok::Lit(m)), Some(dmark)) if marks_equal(*m, dmark) => {}
                    (Some(PatTok::Param(name)), Some(dmark)) => {
                        let val = match dmark {
                            EdgeMark::Finite(m) => MarkValue::Finite(m),
                            EdgeMark::Parallel => MarkValue::Inf,
                            EdgeMark::Ultraparallel(_) => {
                                for a in added {
                                    bindings.remove(&a);
                                }
                                continue 'candidates;
                            }
                        };
                        match bindings.get(name) {
                            Some(existing) if *existing != val => {
                                for a in added {
                                    bindings.remove(&a);
                                }
                                continue 'candidates;
                            }
                            Some(_) => {}
                            None => {
                                bindings.insert(name.clone(), val);
                                added.push(name.clone());
                            }
                        }
                    }
                    _ => {
                        for a in added {
                            bindings.remove(&a);
                        }
                        continue 'candidates;
                    }
                }
            }
            assign[p] = c;
            used[c] = true;
            if go(pos + 1, order, pm, dm, pdeg, ddeg, assign, used, bindings) {
                return true;
            }
            used[c] = false;
            assign[p] = 0;
            for a in added {
                bindings.remove(&a);
            }
        }
        false
    }

    let mut assign = vec![0usize; k + 1];
    let mut used = vec![false; k + 1];
    let mut bindings = BTreeMap::new();
    if go(0, &order, &pm, &dm, &pdeg, &ddeg, &mut assign, &mut used, &mut bindings) {
        Some(bindings)
    } else {
        None
    }
}

impl Catalog {
    pub fn parse(kind: CatalogKind, text: &str) -> Result<Catalog> {
        let mut records = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            records.push(parse_record(line)?);
        }
        Ok(Catalog { kind, records })
    }

    /// Identify the family of a connected unringed diagram by graph
    /// isomorphism against each record, honoring constraints.
    pub fn match_diagram(&self, d: &CoxeterDiagram) -> Option<FamilyLabel> {
        let k = d.node_count();
        for record in &self.records {
            let Some(pattern) = record.pattern(k) else { continue };
            if let Some(bindings) = match_pattern(d, k, &pattern, pattern.len()) {
                if let Some(c) = &record.constraint {
                    if !eval_constraint(c, &bindings) {
                        continue;
                    }
                }
                let params = record
                    .param_names()
                    .iter()
                    .filter_map(|n| bindings.get(n).copied())
                    .collect();
                return Some(FamilyLabel {
                    name: record.name.clone(),
                    rank: self.kind.rank_of(k),
                    params,
                });
            }
        }
        None
    }

    /// Concrete diagrams from every record: series expanded up to
    /// `max_nodes`, parameters sampled over a small grid.
    pub fn sample_instances(&self, max_nodes: usize) -> Vec<(CoxeterDiagram, FamilyLabel)> {
        let mut out = Vec::new();
        let param_grid: Vec<MarkValue> = vec![
            MarkValue::Finite(3),
            MarkValue::Finite(4),
            MarkValue::Finite(5),
            MarkValue::Finite(6),
            MarkValue::Finite(7),
            MarkValue::Inf,
        ];
        for record in &self.records {
            let sizes: Vec<usize> = match record.nodes {
                NodeSpec::Fixed(n) => vec![n],
                NodeSpec::Series { min } => (min..=max_nodes.max(min)).collect(),
            };
            for k in sizes {
                if record.pattern(k).is_none() {
                    continue;
                }
                let names = record.param_names();
                let mut combos: Vec<BTreeMap<String, MarkValue>> = vec![BTreeMap::new()];
                for name in &names {
                    let mut next = Vec::new();
                    for combo in &combos {
                        for v in &param_grid {
                            let mut c = combo.clone();
                            c.insert(name.clone(), *v);
                            next.push(c);
                        }
                    }
                    combos = next;
                }
                for combo in combos {
                    if let Some(c) = &record.constraint {
                        if !eval_constraint(c, &combo) {
                            continue;
                        }
                    }
                    if let Some(d) = record.instantiate(k, &combo) {
                        let params =
                            names.iter().filter_map(|n| combo.get(n).copied()).collect();
                        out.push((
                            d,
                            FamilyLabel {
                                name: record.name.clone(),
                                rank: self.kind.rank_of(k),
                                params,
                            },
                        ));
                    }
                }
            }
        }
        out
    }
}

fn load(kind: CatalogKind) -> Catalog {
    let text = match std::env::var("COXETERKIT_CATALOG") {
        Ok(dir) => {
            let path = std::path::Path::new(&dir).join(kind.file_name());
            std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("cannot read catalog {}: {e}", path.display()))
        }
        Err(_) => match kind {
            CatalogKind::Spherical => include_str!("../../data/spherical.catalog").to_string(),
            CatalogKind::Euclidean => include_str!("../../data/euclidean.catalog").to_string(),
            CatalogKind::HyperbolicCompact => {
                include_str!("../../data/hyperbolic_compact.catalog").to_string()
            }
            CatalogKind::HyperbolicNoncompact => {
                include_str!("../../data/hyperbolic_noncompact.catalog").to_string()
            }
        },
    };
    Catalog::parse(kind, &text).unwrap_or_else(|e| panic!("invalid catalog {:?}: {e}", kind))
}

pub fn spherical() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| load(CatalogKind::Spherical))
}

pub fn euclidean() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| load(CatalogKind::Euclidean))
}

pub fn hyperbolic_compact() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| load(CatalogKind::HyperbolicCompact))
}

pub fn hyperbolic_noncompact() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| load(CatalogKind::HyperbolicNoncompact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_schlafli, SchlafliEntry};

    fn path(marks: &[u32]) -> CoxeterDiagram {
        let entries: Vec<SchlafliEntry> = marks.iter().map(|&m| SchlafliEntry::Finite(m)).collect();
        let mut d = from_schlafli(&entries, Some(&[1])).unwrap();
        d.set_rings([]).unwrap();
        d
    }

    #[test]
    fn matches_series_and_fixed() {
        let c = spherical();
        assert_eq!(c.match_diagram(&path(&[3, 3])).unwrap().to_string(), "A3");
        assert_eq!(c.match_diagram(&path(&[3, 3, 4])).unwrap().to_string(), "B4");
        assert_eq!(c.match_diagram(&path(&[4, 3, 3])).unwrap().to_string(), "B4");
        assert_eq!(c.match_diagram(&path(&[3, 4, 3])).unwrap().to_string(), "F4");
        assert_eq!(c.match_diagram(&path(&[5, 3, 3])).unwrap().to_string(), "H4");
        assert_eq!(c.match_diagram(&path(&[7])).unwrap().to_string(), "I2(7)");
        assert!(c.match_diagram(&path(&[3, 3, 6])).is_none());

        // D5: fork at one end.
        let mut d5 = CoxeterDiagram::new(5).unwrap();
        for (i, j) in [(1, 3), (2, 3), (3, 4), (4, 5)] {
            d5.add_edge(i, j, EdgeMark::Finite(3)).unwrap();
        }
        assert_eq!(c.match_diagram(&d5).unwrap().to_string(), "D5");
    }

    #[test]
    fn matches_euclidean_families() {
        let c = euclidean();
        assert_eq!(c.match_diagram(&path(&[4, 3, 4])).unwrap().to_string(), "C~3");
        assert_eq!(c.match_diagram(&path(&[3, 6])).unwrap().to_string(), "G2~");
        let mut seg = CoxeterDiagram::new(2).unwrap();
        seg.add_edge(1, 2, EdgeMark::Parallel).unwrap();
        assert_eq!(c.match_diagram(&seg).unwrap().to_string(), "A~1");

        let mut cyc = CoxeterDiagram::new(4).unwrap();
        for (i, j) in [(1, 2), (2, 3), (3, 4), (1, 4)] {
            cyc.add_edge(i, j, EdgeMark::Finite(3)).unwrap();
        }
        assert_eq!(c.match_diagram(&cyc).unwrap().to_string(), "A~3");

        // D~4 is the star on five nodes.
        let mut star = CoxeterDiagram::new(5).unwrap();
        for leaf in [1, 2, 4, 5] {
            star.add_edge(leaf, 3, EdgeMark::Finite(3)).unwrap();
        }
        assert_eq!(c.match_diagram(&star).unwrap().to_string(), "D~4");
    }

    #[test]
    fn isomorphism_ignores_labeling() {
        let a = path(&[5, 3]);
        let mut b = CoxeterDiagram::new(3).unwrap();
        b.add_edge(3, 2, EdgeMark::Finite(3)).unwrap();
        b.add_edge(2, 1, EdgeMark::Finite(5)).unwrap();
        assert!(diagram_isomorphic(&a, &b));
        assert!(!diagram_isomorphic(&a, &path(&[4, 3])));
    }

    #[test]
    fn every_sample_matches_its_own_family() {
        for catalog in [spherical(), euclidean()] {
            for (d, label) in catalog.sample_instances(8) {
                let found = catalog
                    .match_diagram(&d)
                    .unwrap_or_else(|| panic!("{label} instance failed to match"));
                assert_eq!(found.to_string(), label.to_string());
            }
        }
    }

    #[test]
    fn bundled_hyperbolic_entries_classify_correctly() {
        use crate::diagram::{classify, DiagramClass};
        for (catalog, expected_compact) in
            [(hyperbolic_compact(), true), (hyperbolic_noncompact(), false)]
        {
            for (d, label) in catalog.sample_instances(10) {
                let class = classify(&d)
                    .unwrap_or_else(|e| panic!("{label} failed to classify: {e}"));
                let expected = if expected_compact {
                    DiagramClass::HyperbolicCompact
                } else {
                    DiagramClass::HyperbolicNoncompact
                };
                assert_eq!(class, expected, "entry {label}: {}", d.render());
            }
        }
    }

    #[test]
    fn dimension_three_catalog_is_complete() {
        // The frozen nodes=4 entries must be exactly the enumeration output.
        let found = enumerate_hyperbolic_simplexes(4);
        let mut compact = 0;
        let mut noncompact = 0;
        for (d, is_compact) in &found {
            let catalog = if *is_compact { hyperbolic_compact() } else { hyperbolic_noncompact() };
            assert!(
                catalog.match_diagram(d).is_some(),
                "enumerated diagram missing from catalog: {}",
                d.render()
            );
            if *is_compact {
                compact += 1;
            } else {
                noncompact += 1;
            }
        }
        let fixed_entries = |c: &Catalog| {
            c.records.iter().filter(|r| r.nodes == NodeSpec::Fixed(4)).count()
        };
        assert_eq!(compact, fixed_entries(hyperbolic_compact()));
        assert_eq!(noncompact, fixed_entries(hyperbolic_noncompact()));
    }

    #[test]
    fn triangle_scan_reproduces_the_catalog_families() {
        use crate::diagram::{classify, DiagramClass};
        // Connected 3-node diagrams with marks in {2..7, inf}: every
        // hyperbolic one matches a triangle family, every triangle-family
        // instance is found hyperbolic, and the constraints separate
        // compact from non-compact.
        let marks: Vec<Option<EdgeMark>> = std::iter::once(None)
            .chain((3..=7).map(|m| Some(EdgeMark::Finite(m))))
            .chain(std::iter::once(Some(EdgeMark::Parallel)))
            .collect();
        let mut hyperbolic_seen = 0;
        for &a in &marks {
            for &b in &marks {
                for &c in &marks {
                    let mut d = CoxeterDiagram::new(3).unwrap();
                    if let Some(m) = a {
                        d.add_edge(1, 2, m).unwrap();
                    }
                    if let Some(m) = b {
                        d.add_edge(2, 3, m).unwrap();
                    }
                    if let Some(m) = c {
                        d.add_edge(1, 3, m).unwrap();
                    }
                    if !d.is_connected() {
                        continue;
                    }
                    let in_compact = hyperbolic_compact().match_diagram(&d).is_some();
                    let in_noncompact = hyperbolic_noncompact().match_diagram(&d).is_some();
                    match classify(&d).unwrap() {
                        DiagramClass::HyperbolicCompact => {
                            hyperbolic_seen += 1;
                            assert!(in_compact && !in_noncompact, "{}", d.render());
                        }
                        DiagramClass::HyperbolicNoncompact => {
                            hyperbolic_seen += 1;
                            assert!(in_noncompact && !in_compact, "{}", d.render());
                        }
                        _ => assert!(!in_compact && !in_noncompact, "{}", d.render()),
                    }
                }
            }
        }
        assert!(hyperbolic_seen > 100);
    }
}
