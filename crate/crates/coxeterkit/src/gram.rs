//! Gram-matrix construction and analytics.
//!
//! The Gram matrix of a mirror arrangement has unit diagonal and entries
//! `-cos(pi/m)`, `-1`, or `-cosh d` off the diagonal depending on whether the
//! mirrors are incident, parallel, or ultraparallel. Its signature decides the
//! geometry; its spherical and Euclidean principal submatrices describe faces
//! and ideal vertices.

use nalgebra::{DMatrix, DVector};

use crate::diagram::{CoxeterDiagram, EdgeMark};
use crate::error::{CoxError, Result};
use crate::forms::{BilinearForm, Geometry, Isometry};
use crate::tol;

pub type GramMatrix = DMatrix<f64>;

/// Eigenvalue sign counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Unit normal covectors plus the ambient form they live in. Euclidean
/// mirrors carry affine offsets `a_i` (the mirror is `{ <x,v_i> = a_i }`);
/// the other geometries have all mirrors through the origin.
#[derive(Debug, Clone)]
pub struct MirrorSystem {
    pub form: BilinearForm,
    pub normals: Vec<DVector<f64>>,
    pub offsets: Vec<f64>,
}

impl MirrorSystem {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// The Gram matrix of the normals under the ambient form.
    pub fn gram(&self) -> Result<GramMatrix> {
        let k = self.normals.len();
        let mut g = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = self.form.inner(&self.normals[i], &self.normals[j])?;
            }
        }
        Ok(g)
    }

    /// Reflections along all mirrors, affine in the Euclidean case.
    pub fn reflections(&self) -> Result<Vec<Isometry>> {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(v, &a)| {
                if a == 0.0 {
                    crate::forms::reflection(&self.form, v)
                } else {
                    crate::forms::affine_reflection(&self.form, v, a)
                }
            })
            .collect()
    }
}

/// Hyperplane relation encoded by a single Gram entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairRelation {
    Incident(f64),
    Parallel,
    Ultraparallel(f64),
}

/// Outcome of the realization check.
#[derive(Debug, Clone, PartialEq)]
pub enum Realizability {
    Realizable { compact: bool, warnings: Vec<String> },
    NotRealizable(String),
}

/// Gram matrix of a diagram: `G_ii = 1`; mark m gives `-cos(pi/m)`; an absent
/// edge gives 0; a thick edge gives -1; a dashed edge at distance d gives
/// `-cosh d`.
pub fn gram_from_diagram(d: &CoxeterDiagram) -> GramMatrix {
    let k = d.node_count();
    let mut g = DMatrix::identity(k, k);
    for (i, j, mark) in d.edges() {
        let entry = match mark {
            EdgeMark::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            EdgeMark::Parallel => -1.0,
            EdgeMark::Ultraparallel(dist) => -dist.cosh(),
        };
        g[(i - 1, j - 1)] = entry;
        g[(j - 1, i - 1)] = entry;
    }
    g
}

fn eigenvalues_sorted(g: &GramMatrix) -> (DVector<f64>, DMatrix<f64>) {
    let eig = g.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = DVector::from_fn(order.len(), |i, _| eig.eigenvalues[order[i]]);
    let vecs = DMatrix::from_fn(order.len(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Counts of eigenvalues above, below, and inside the threshold band. The
/// band is `tol` scaled by the largest absolute eigenvalue.
pub fn signature(g: &GramMatrix, tol: f64) -> Signature {
    let (vals, _) = eigenvalues_sorted(g);
    let max_abs = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thresh = tol * max_abs;
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    for v in vals.iter() {
        if *v > thresh {
            sig.positive += 1;
        } else if *v < -thresh {
            sig.negative += 1;
        } else {
            sig.zero += 1;
        }
    }
    sig
}

/// Connected components of the graph with an edge wherever `G_ij != 0`,
/// as sorted 0-based index blocks.
pub fn decompose(g: &GramMatrix) -> Vec<Vec<usize>> {
    let k = g.nrows();
    let mut seen = vec![false; k];
    let mut blocks = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut block = vec![];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            block.push(i);
            for j in 0..k {
                if !seen[j] && i != j && g[(i, j)].abs() > tol::ALGEBRAIC {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Smallest eigenvalue and its Perron eigenvector (unit length, nonnegative
/// entries) of an indecomposable matrix with nonpositive off-diagonal.
pub fn perron(g: &GramMatrix) -> Result<(f64, DVector<f64>)> {
    let k = g.nrows();
    for i in 0..k {
        for j in 0..k {
            if i != j && g[(i, j)] > tol::ALGEBRAIC {
                return Err(CoxError::BadGram(format!(
                    "positive off-diagonal entry G[{i}][{j}] = {}",
                    g[(i, j)]
                )));
            }
        }
    }
    if decompose(g).len() != 1 {
        return Err(CoxError::BadGram("matrix is decomposable".into()));
    }
    let (vals, vecs) = eigenvalues_sorted(g);
    let mut v = vecs.column(0).into_owned();
    if v.sum() < 0.0 {
        v = -v;
    }
    // Perron-Frobenius: the eigenvector of the smallest eigenvalue of I - B
    // with B >= 0 indecomposable is strictly positive.
    for x in v.iter() {
        if *x < -1e-8 {
            return Err(CoxError::Numerical(format!(
                "Perron eigenvector has a negative entry {x}"
            )));
        }
    }
    Ok((vals[0], v.map(|x| x.max(0.0)) / v.norm()))
}

/// Classify a single Gram entry as an incidence angle, parallelism, or an
/// ultraparallel distance.
pub fn pair_relation(g: f64) -> Result<PairRelation> {
    if g > 1.0 + tol::ALGEBRAIC {
        return Err(CoxError::BadGram(format!("Gram entry {g} > 1")));
    }
    if (g + 1.0).abs() <= tol::ALGEBRAIC {
        Ok(PairRelation::Parallel)
    } else if g < -1.0 {
        Ok(PairRelation::Ultraparallel((-g).acosh()))
    } else {
        Ok(PairRelation::Incident((-g.min(1.0)).acos()))
    }
}

/// Status of a principal submatrix in the face/ideal-vertex dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubmatrixKind {
    /// Positive definite.
    Spherical,
    /// Positive semidefinite with every indecomposable block of corank one.
    Euclidean,
    Other,
}

pub(crate) fn principal(g: &GramMatrix, subset: &[usize]) -> GramMatrix {
    DMatrix::from_fn(subset.len(), subset.len(), |r, c| g[(subset[r], subset[c])])
}

/// Kind of the principal submatrix on `subset` (0-based indices).
pub fn submatrix_kind(g: &GramMatrix, subset: &[usize]) -> SubmatrixKind {
    let sub = principal(g, subset);
    let sig = signature(&sub, tol::ALGEBRAIC);
    if sig.negative > 0 {
        return SubmatrixKind::Other;
    }
    if sig.zero == 0 {
        return SubmatrixKind::Spherical;
    }
    // Every indecomposable block must have corank exactly one.
    for block in decompose(&sub) {
        let bsig = signature(&principal(&sub, &block), tol::ALGEBRAIC);
        if bsig.zero != 1 || bsig.negative != 0 {
            return SubmatrixKind::Other;
        }
    }
    SubmatrixKind::Euclidean
}

fn rank_of(g: &GramMatrix, subset: &[usize]) -> usize {
    let sig = signature(&principal(g, subset), tol::ALGEBRAIC);
    sig.positive + sig.negative
}

fn all_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1 << k);
    for mask in 1u32..(1 << k) {
        out.push((0..k).filter(|i| mask & (1 << i) != 0).collect());
    }
    out
}

fn check_non_obtuse(g: &GramMatrix) -> Result<()> {
    let k = g.nrows();
    for i in 0..k {
        if (g[(i, i)] - 1.0).abs() > 1e-9 {
            return Err(CoxError::BadGram(format!("diagonal entry G[{i}][{i}] != 1")));
        }
        for j in 0..k {
            if i != j && g[(i, j)] > tol::ALGEBRAIC {
                return Err(CoxError::BadGram(format!(
                    "positive off-diagonal entry G[{i}][{j}] = {}",
                    g[(i, j)]
                )));
            }
            if (g[(i, j)] - g[(j, i)]).abs() > 1e-9 {
                return Err(CoxError::BadGram("matrix is not symmetric".into()));
            }
        }
    }
    Ok(())
}

/// Maximal subsets whose principal submatrix is Euclidean of rank `n - 1`.
/// These are the ideal vertices of the realized polyhedron.
pub fn maximal_euclidean_subsets(g: &GramMatrix, n: usize) -> Vec<Vec<usize>> {
    let k = g.nrows();
    let mut euclidean: Vec<Vec<usize>> = all_subsets(k)
        .into_iter()
        .filter(|s| submatrix_kind(g, s) == SubmatrixKind::Euclidean && rank_of(g, s) == n - 1)
        .collect();
    let copy = euclidean.clone();
    euclidean.retain(|s| {
        !copy.iter().any(|t| t.len() > s.len() && s.iter().all(|i| t.contains(i)))
    });
    euclidean
}

/// Vinberg's criterion: does `G` realize a finite-volume non-obtuse
/// polyhedron in hyperbolic n-space?
///
/// Checks the signature `(n, 1, k-n-1)`, then: (1) at least one spherical
/// submatrix of rank n exists; (2) every spherical submatrix of rank n-1
/// extends in at least two ways, each extension spherical of rank n or
/// Euclidean of rank n-1. More than two extensions is reported as a warning,
/// not a failure.
pub fn vinberg_realizable(g: &GramMatrix, n: usize) -> Result<Realizability> {
    check_non_obtuse(g)?;
    let k = g.nrows();
    if k > 12 {
        return Err(CoxError::Precondition(format!(
            "principal-submatrix enumeration is exhaustive only up to 12 facets, got {k}"
        )));
    }
    let sig = signature(g, tol::ALGEBRAIC);
    if !(sig.positive == n && sig.negative == 1 && k == sig.positive + sig.negative + sig.zero) {
        return Ok(Realizability::NotRealizable(format!(
            "signature {sig} is not ({n},1,{})",
            k as isize - n as isize - 1
        )));
    }

    let subsets = all_subsets(k);
    let spherical_rank_n: Vec<&Vec<usize>> = subsets
        .iter()
        .filter(|s| s.len() == n && submatrix_kind(g, s) == SubmatrixKind::Spherical)
        .collect();
    let euclidean_maximal = maximal_euclidean_subsets(g, n);

    // Condition 1, in the form the realization proof actually uses: the
    // projective polyhedron needs at least one vertex inside the closed
    // ball, which is a spherical submatrix of rank n (real vertex) or a
    // Euclidean one of rank n-1 (ideal vertex). The bare statement asks
    // only for the spherical kind and would wrongly reject fully ideal
    // polyhedra such as the (inf, inf, inf) triangle.
    if spherical_rank_n.is_empty() && euclidean_maximal.is_empty() {
        return Ok(Realizability::NotRealizable(
            "condition 1: no vertex submatrix (spherical of rank n or Euclidean of rank n-1)"
                .into(),
        ));
    }

    let mut warnings = Vec::new();
    for s in subsets.iter().filter(|s| s.len() == n - 1) {
        if submatrix_kind(g, s) != SubmatrixKind::Spherical {
            continue;
        }
        let spherical_ext = spherical_rank_n
            .iter()
            .filter(|t| s.iter().all(|i| t.contains(i)))
            .count();
        let euclidean_ext = euclidean_maximal
            .iter()
            .filter(|t| s.iter().all(|i| t.contains(i)))
            .count();
        let total = spherical_ext + euclidean_ext;
        if total < 2 {
            return Ok(Realizability::NotRealizable(format!(
                "condition 2: spherical rank n-1 submatrix {s:?} has {total} extension(s)"
            )));
        }
        if total > 2 {
            warnings.push(format!(
                "submatrix {s:?} has {total} extensions; the polyhedron may be non-simple"
            ));
        }
    }

    Ok(Realizability::Realizable { compact: euclidean_maximal.is_empty(), warnings })
}

/// Geometry implied by the signature of a Gram matrix for dimension `n`.
pub fn geometry_for(sig: Signature, n: usize) -> Result<Geometry> {
    let k = sig.positive + sig.negative + sig.zero;
    if sig.positive == n + 1 && sig.negative == 0 {
        Ok(Geometry::Spherical)
    } else if sig.positive == n && sig.negative == 0 && sig.zero == k - n {
        Ok(Geometry::Euclidean)
    } else if sig.positive == n && sig.negative == 1 {
        Ok(Geometry::Hyperbolic)
    } else {
        Err(CoxError::BadGram(format!(
            "signature {sig} fits no geometry of dimension {n}"
        )))
    }
}

/// Recover unit normals realizing `G` in the ambient form of dimension `n`,
/// from the symmetric eigendecomposition: eigenvectors scaled by sqrt|lambda|
/// with null directions dropped. Lorentzian and spherical systems are
/// oriented so that a common interior point `x` with `<x, v_i> < 0` exists.
pub fn recover_normals(g: &GramMatrix, n: usize) -> Result<MirrorSystem> {
    let k = g.nrows();
    let sig = signature(g, tol::ALGEBRAIC);
    let geometry = geometry_for(sig, n)?;
    let form = match geometry {
        Geometry::Spherical => BilinearForm::spherical(n),
        Geometry::Euclidean => BilinearForm::euclidean(n),
        Geometry::Hyperbolic => BilinearForm::lorentzian(n),
    };
    let ambient = form.ambient_dim();

    let (vals, vecs) = eigenvalues_sorted(g);
    let max_abs = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thresh = tol::ALGEBRAIC * max_abs;

    // Eigenvalues are sorted ascending, so for the Lorentzian case the
    // negative one comes first and lands in coordinate 1, matching the form.
    let kept: Vec<usize> = (0..k).filter(|&m| vals[m].abs() > thresh).collect();
    if kept.len() != ambient {
        return Err(CoxError::BadGram(format!(
            "rank {} does not match ambient dimension {ambient}",
            kept.len()
        )));
    }
    let mut normals: Vec<DVector<f64>> = (0..k)
        .map(|i| {
            DVector::from_fn(ambient, |s, _| {
                let m = kept[s];
                vals[m].abs().sqrt() * vecs[(i, m)]
            })
        })
        .collect();

    // Orient so a common interior point exists (hyperbolic and spherical).
    if geometry != Geometry::Euclidean {
        let mut x = DVector::zeros(ambient);
        for block in decompose(g) {
            let (_, w) = perron(&principal(g, &block))?;
            for (bi, &i) in block.iter().enumerate() {
                x += w[bi] * &normals[i];
            }
        }
        if geometry == Geometry::Spherical {
            x = -x;
        }
        if geometry == Geometry::Hyperbolic && x[0] < 0.0 {
            for v in &mut normals {
                *v = -v.clone();
            }
            x = -x;
        }
        for v in &normals {
            let p = form.inner(&x, v)?;
            if p > tol::ALGEBRAIC {
                return Err(CoxError::Numerical(format!(
                    "no common interior point: <x,v> = {p}"
                )));
            }
        }
    }

    let offsets = match geometry {
        Geometry::Euclidean => vec![1.0; k],
        _ => vec![0.0; k],
    };
    let sys = MirrorSystem { form, normals, offsets };

    // The recovery must reproduce G.
    let back = sys.gram()?;
    let defect = (&back - g).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if defect > 1e-8 {
        return Err(CoxError::Numerical(format!("recovered Gram defect {defect}")));
    }
    Ok(sys)
}

/// Plain-text matrix format: one row per line, entries separated by spaces.
pub fn matrix_to_text(g: &GramMatrix) -> String {
    (0..g.nrows())
        .map(|i| {
            (0..g.ncols()).map(|j| format!("{}", g[(i, j)])).collect::<Vec<_>>().join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn matrix_from_text(text: &str) -> Result<GramMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(|t| t.parse::<f64>()).collect();
        rows.push(row.map_err(|e| CoxError::Numerical(format!("bad matrix entry: {e}")))?);
    }
    matrix_from_rows(rows)
}

pub fn matrix_to_json(g: &GramMatrix) -> String {
    let rows: Vec<Vec<f64>> =
        (0..g.nrows()).map(|i| (0..g.ncols()).map(|j| g[(i, j)]).collect()).collect();
    serde_json::to_string(&rows).expect("matrix serialization cannot fail")
}

pub fn matrix_from_json(text: &str) -> Result<GramMatrix> {
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(text).map_err(|e| CoxError::Numerical(format!("bad JSON matrix: {e}")))?;
    matrix_from_rows(rows)
}

fn matrix_from_rows(rows: Vec<Vec<f64>>) -> Result<GramMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CoxError::Numerical("matrix must be square and nonempty".into()));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}
