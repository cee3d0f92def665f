//! Coxeter(-Wythoff) diagrams: data model, text DSL, Schläfli expansion,
//! subdiagram enumeration, and classification by geometry.
//!
//! Nodes are 1-based, matching the DSL. An absent edge means a right angle
//! (mark 2); a plain edge means mark 3; a thick edge means the mirrors are
//! parallel; a dashed edge means ultraparallel at a positive distance.

mod parse;

pub use parse::parse_diagram;

use std::collections::{BTreeMap, BTreeSet};

use crate::catalog::{self, FamilyLabel};
use crate::error::{CoxError, Result};
use crate::gram;
use crate::tol;

/// Decoration on a diagram edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeMark {
    /// Dihedral angle pi/m, with m >= 3.
    Finite(u32),
    /// Thick edge: parallel mirrors.
    Parallel,
    /// Dashed edge: ultraparallel mirrors at distance d > 0.
    Ultraparallel(f64),
}

/// A labeled graph with edge marks and ringed nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterDiagram {
    node_count: usize,
    edges: BTreeMap<(usize, usize), EdgeMark>,
    rings: BTreeSet<usize>,
}

/// One entry of a Schläfli symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchlafliEntry {
    Finite(u32),
    Infinity,
}

impl std::str::FromStr for SchlafliEntry {
    type Err = CoxError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" || s == "∞" {
            return Ok(SchlafliEntry::Infinity);
        }
        let m: u32 = s
            .parse()
            .map_err(|_| CoxError::BadMark(format!("bad Schläfli entry {s:?}")))?;
        if m < 3 {
            return Err(CoxError::BadMark(format!("Schläfli entry {m} < 3")));
        }
        Ok(SchlafliEntry::Finite(m))
    }
}

/// Result of [`classify`].
#[derive(Debug, Clone, PartialEq)]
pub enum DiagramClass {
    Spherical(FamilyLabel),
    Euclidean(FamilyLabel),
    HyperbolicCompact,
    HyperbolicNoncompact,
    NotASimplexDiagram,
}

impl std::fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramClass::Spherical(l) => write!(f, "Spherical({l})"),
            DiagramClass::Euclidean(l) => write!(f, "Euclidean({l})"),
            DiagramClass::HyperbolicCompact => write!(f, "HyperbolicCompact"),
            DiagramClass::HyperbolicNoncompact => write!(f, "HyperbolicNoncompact"),
            DiagramClass::NotASimplexDiagram => write!(f, "NotASimplexDiagram"),
        }
    }
}

impl CoxeterDiagram {
    /// A diagram with `node_count` nodes, no edges, no rings.
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(CoxError::Precondition("a diagram needs at least one node".into()));
        }
        Ok(CoxeterDiagram { node_count, edges: BTreeMap::new(), rings: BTreeSet::new() })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.node_count {
            return Err(CoxError::NodeOutOfRange { index: i, count: self.node_count });
        }
        Ok(())
    }

    /// Add an edge with the given mark. Errors on self-loops, out-of-range
    /// indices, duplicate declarations, and invalid marks.
    pub fn add_edge(&mut self, i: usize, j: usize, mark: EdgeMark) -> Result<()> {
        self.check_node(i)?;
        self.check_node(j)?;
        if i == j {
            return Err(CoxError::BadMark(format!("self-loop on node {i}")));
        }
        match mark {
            EdgeMark::Finite(m) if m < 3 => {
                return Err(CoxError::BadMark(format!("edge mark {m} < 3")));
            }
            EdgeMark::Ultraparallel(d) if d <= 0.0 => {
                return Err(CoxError::BadMark(format!("ultraparallel distance {d} <= 0")));
            }
            _ => {}
        }
        let key = (i.min(j), i.max(j));
        if self.edges.contains_key(&key) {
            return Err(CoxError::DuplicateEdge(key.0, key.1));
        }
        self.edges.insert(key, mark);
        Ok(())
    }

    pub fn ring(&mut self, i: usize) -> Result<()> {
        self.check_node(i)?;
        self.rings.insert(i);
        Ok(())
    }

    pub fn rings(&self) -> &BTreeSet<usize> {
        &self.rings
    }

    pub fn set_rings<I: IntoIterator<Item = usize>>(&mut self, rings: I) -> Result<()> {
        self.rings.clear();
        for i in rings {
            self.ring(i)?;
        }
        Ok(())
    }

    /// Strip all rings (e.g. before comparing against a catalog template).
    pub fn without_rings(&self) -> CoxeterDiagram {
        CoxeterDiagram { node_count: self.node_count, edges: self.edges.clone(), rings: BTreeSet::new() }
    }

    /// The mark between `i` and `j`, or `None` for a right angle.
    pub fn edge_between(&self, i: usize, j: usize) -> Option<EdgeMark> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeMark)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn has_dashed_edge(&self) -> bool {
        self.edges.values().any(|m| matches!(m, EdgeMark::Ultraparallel(_)))
    }

    /// Connected components of the induced subdiagram on `subset`
    /// (1-based node indices), in sorted order.
    pub fn components_of(&self, subset: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut unseen: BTreeSet<usize> = subset.clone();
        let mut comps = Vec::new();
        while let Some(&start) = unseen.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            unseen.remove(&start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                let neighbors: Vec<usize> = unseen
                    .iter()
                    .copied()
                    .filter(|&u| self.edge_between(v, u).is_some())
                    .collect();
                for u in neighbors {
                    unseen.remove(&u);
                    stack.push(u);
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        let all: BTreeSet<usize> = (1..=self.node_count).collect();
        self.components_of(&all).len() == 1
    }

    /// Induced subdiagram on `subset`, renumbered 1..=|subset| in sorted
    /// order. Rings are restricted to the subset.
    pub fn induced(&self, subset: &BTreeSet<usize>) -> CoxeterDiagram {
        let order: Vec<usize> = subset.iter().copied().collect();
        let index_of: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(new, &old)| (old, new + 1)).collect();
        let mut d = CoxeterDiagram::new(order.len()).expect("nonempty subset");
        for (&(i, j), &m) in &self.edges {
            if let (Some(&ni), Some(&nj)) = (index_of.get(&i), index_of.get(&j)) {
                d.edges.insert((ni.min(nj), ni.max(nj)), m);
            }
        }
        for &r in &self.rings {
            if let Some(&nr) = index_of.get(&r) {
                d.rings.insert(nr);
            }
        }
        d
    }

    /// All node subsets of the given size, sorted lexicographically. With
    /// `require_ring`, keep only the Coxeter-Wythoff subdiagrams: every
    /// connected component of the induced subdiagram must contain a ringed
    /// node.
    pub fn subdiagrams(&self, size: usize, require_ring: bool) -> Result<Vec<BTreeSet<usize>>> {
        if size == 0 || size > self.node_count {
            return Err(CoxError::Precondition(format!(
                "subdiagram size {size} out of range 1..={}",
                self.node_count
            )));
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(size);
        subsets(1, self.node_count, size, &mut current, &mut |subset: &[usize]| {
            let set: BTreeSet<usize> = subset.iter().copied().collect();
            if !require_ring
                || self
                    .components_of(&set)
                    .iter()
                    .all(|c| c.iter().any(|v| self.rings.contains(v)))
            {
                out.push(set);
            }
        });
        Ok(out)
    }

    /// Render back to DSL text. `parse_diagram(render(d)) == d`.
    pub fn render(&self) -> String {
        let mut parts = vec![format!("nodes {}", self.node_count)];
        for (&(i, j), &m) in &self.edges {
            parts.push(match m {
                EdgeMark::Finite(3) => format!("{i}-{j}"),
                EdgeMark::Finite(k) => format!("{i}-{j}:{k}"),
                EdgeMark::Parallel => format!("{i}-{j}:inf"),
                EdgeMark::Ultraparallel(d) => format!("{i}-{j}:d={d}"),
            });
        }
        if !self.rings.is_empty() {
            let rs: Vec<String> = self.rings.iter().map(|r| r.to_string()).collect();
            parts.push(format!("ring {}", rs.join(" ")));
        }
        parts.join("; ")
    }
}

fn subsets(from: usize, to: usize, left: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if left == 0 {
        f(current);
        return;
    }
    for v in from..=to {
        if to - v + 1 < left {
            break;
        }
        current.push(v);
        subsets(v + 1, to, left - 1, current, f);
        current.pop();
    }
}

/// Expand a Schläfli symbol `{k_1, ..., k_n}` into the linear path diagram on
/// n+1 nodes with edge i-(i+1) marked k_i. `ring_spec` selects the ringed
/// nodes; the default is the first node only.
pub fn from_schlafli(symbols: &[SchlafliEntry], ring_spec: Option<&[usize]>) -> Result<CoxeterDiagram> {
    if symbols.is_empty() {
        return Err(CoxError::Precondition("empty Schläfli symbol".into()));
    }
    let mut d = CoxeterDiagram::new(symbols.len() + 1)?;
    for (i, &s) in symbols.iter().enumerate() {
        let mark = match s {
            SchlafliEntry::Finite(m) => EdgeMark::Finite(m),
            SchlafliEntry::Infinity => EdgeMark::Parallel,
        };
        d.add_edge(i + 1, i + 2, mark)?;
    }
    match ring_spec {
        Some(rs) => {
            if rs.is_empty() {
                return Err(CoxError::BadRings("empty ring specification".into()));
            }
            d.set_rings(rs.iter().copied())?;
        }
        None => d.set_rings([1])?,
    }
    Ok(d)
}

/// How a principal block behaves, for the simplex-link test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetKind {
    /// Positive definite.
    Spherical,
    /// Positive semidefinite, corank one, connected.
    Euclidean,
    Neither,
}

pub fn subset_kind(d: &CoxeterDiagram, subset: &BTreeSet<usize>) -> SubsetKind {
    let g = gram::gram_from_diagram(&d.induced(subset));
    let sig = gram::signature(&g, tol::ALGEBRAIC);
    if sig.negative > 0 {
        return SubsetKind::Neither;
    }
    if sig.zero == 0 {
        return SubsetKind::Spherical;
    }
    if sig.zero == 1 && d.components_of(subset).len() == 1 {
        return SubsetKind::Euclidean;
    }
    SubsetKind::Neither
}

/// Classify a connected diagram by the signature of its Gram matrix, with
/// family naming by catalog isomorphism for the spherical and Euclidean
/// cases. A disagreement between signature and catalog is an error, since
/// the signature test is ground truth.
pub fn classify(d: &CoxeterDiagram) -> Result<DiagramClass> {
    if !d.is_connected() {
        return Err(CoxError::Disconnected);
    }
    // Simplex diagrams have no dashed edges.
    if d.has_dashed_edge() {
        return Ok(DiagramClass::NotASimplexDiagram);
    }
    let k = d.node_count();
    let g = gram::gram_from_diagram(d);
    let sig = gram::signature(&g, tol::ALGEBRAIC);

    if sig.positive == k {
        let label = catalog::spherical()
            .match_diagram(&d.without_rings())
            .ok_or_else(|| CoxError::CatalogMismatch(format!("{sig} (spherical)")))?;
        return Ok(DiagramClass::Spherical(label));
    }
    if sig.positive == k - 1 && sig.zero == 1 {
        let label = catalog::euclidean()
            .match_diagram(&d.without_rings())
            .ok_or_else(|| CoxError::CatalogMismatch(format!("{sig} (euclidean)")))?;
        return Ok(DiagramClass::Euclidean(label));
    }
    if sig.positive == k - 1 && sig.negative == 1 {
        // A hyperbolic simplex needs every vertex link to be a vertex of the
        // right kind: spherical (real) or Euclidean (ideal).
        let all: BTreeSet<usize> = (1..=k).collect();
        let mut saw_euclidean = false;
        for v in 1..=k {
            let mut s = all.clone();
            s.remove(&v);
            let kind = if d.components_of(&s).len() == 1 {
                subset_kind(d, &s)
            } else {
                // Disconnected link: every component must be spherical.
                if d.components_of(&s)
                    .iter()
                    .all(|c| subset_kind(d, c) == SubsetKind::Spherical)
                {
                    SubsetKind::Spherical
                } else {
                    SubsetKind::Neither
                }
            };
            match kind {
                SubsetKind::Spherical => {}
                SubsetKind::Euclidean => saw_euclidean = true,
                SubsetKind::Neither => return Ok(DiagramClass::NotASimplexDiagram),
            }
        }
        return Ok(if saw_euclidean {
            DiagramClass::HyperbolicNoncompact
        } else {
            DiagramClass::HyperbolicCompact
        });
    }
    Ok(DiagramClass::NotASimplexDiagram)
}


#[cfg(test)]
mod tessellation_lists {
    use super::*;

    fn class_of(symbols: &[&str]) -> DiagramClass {
        let entries: Vec<SchlafliEntry> = symbols.iter().map(|s| s.parse().unwrap()).collect();
        classify(&from_schlafli(&entries, None).unwrap()).unwrap()
    }

    #[test]
    fn regular_polytope_symbols_are_spherical() {
        for symbols in [
            &["3", "3"][..],
            &["3", "4"],
            &["3", "5"],
            &["4", "3"],
            &["5", "3"],
            &["3", "3", "3"],
            &["3", "3", "4"],
            &["3", "3", "5"],
            &["3", "4", "3"],
            &["4", "3", "3"],
            &["5", "3", "3"],
        ] {
            assert!(
                matches!(class_of(symbols), DiagramClass::Spherical(_)),
                "{symbols:?} should be spherical"
            );
        }
    }

    #[test]
    fn regular_euclidean_tessellation_symbols() {
        for symbols in [
            &["inf"][..],
            &["3", "6"],
            &["4", "4"],
            &["6", "3"],
            &["4", "3", "4"],
            &["3", "3", "4", "3"],
            &["3", "4", "3", "3"],
            &["4", "3", "3", "4"],
        ] {
            assert!(
                matches!(class_of(symbols), DiagramClass::Euclidean(_)),
                "{symbols:?} should be Euclidean"
            );
        }
    }

    #[test]
    fn regular_compact_hyperbolic_tessellation_symbols() {
        for symbols in [
            &["5", "4"][..],
            &["7", "3"],
            &["3", "5", "3"],
            &["4", "3", "5"],
            &["5", "3", "4"],
            &["5", "3", "5"],
            &["3", "3", "3", "5"],
            &["4", "3", "3", "5"],
            &["5", "3", "3", "3"],
            &["5", "3", "3", "4"],
            &["5", "3", "3", "5"],
        ] {
            assert_eq!(class_of(symbols), DiagramClass::HyperbolicCompact, "{symbols:?}");
        }
    }

    #[test]
    fn regular_ideal_hyperbolic_tessellation_symbols() {
        for symbols in [
            &["3", "inf"][..],
            &["7", "inf"],
            &["3", "3", "6"],
            &["3", "4", "4"],
            &["4", "3", "6"],
            &["5", "3", "6"],
            &["3", "4", "3", "4"],
            &["3", "3", "3", "4", "3"],
        ] {
            assert_eq!(class_of(symbols), DiagramClass::HyperbolicNoncompact, "{symbols:?}");
        }
    }

    #[test]
    fn single_node_is_the_smallest_spherical_diagram() {
        let d = CoxeterDiagram::new(1).unwrap();
        match classify(&d).unwrap() {
            DiagramClass::Spherical(l) => assert_eq!(l.to_string(), "A1"),
            c => panic!("expected A1, got {c}"),
        }
    }
}
