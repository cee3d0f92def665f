//! Faces and ideal vertices of a realized polyhedron, read off its Gram
//! matrix: spherical principal submatrices are faces, maximal Euclidean ones
//! are ideal vertices, and incidence is reverse inclusion of the index sets.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{CoxError, Result};
use crate::forms::{normalize_point, Geometry, Point, PointKind};
use crate::gram::{
    self, maximal_euclidean_subsets, perron, signature, submatrix_kind, vinberg_realizable,
    GramMatrix, MirrorSystem, Realizability, SubmatrixKind,
};
use crate::tol;

/// One face or ideal vertex, indexed by the facets containing it (0-based,
/// matching Gram matrix rows).
#[derive(Debug, Clone, PartialEq)]
pub struct FaceRecord {
    pub facet_set: BTreeSet<usize>,
    pub kind: FaceKind,
    pub gram_block: GramMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum FaceKind {
    RealFace { dim: usize },
    IdealVertex,
}

/// All faces of the polyhedron, ranked, with containment pairs.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    /// Dimension of the polyhedron.
    pub n: usize,
    pub records: Vec<FaceRecord>,
    /// Pairs (a, b) where face a strictly contains face b, i.e. the facet
    /// set of a is strictly contained in that of b.
    pub incidence: Vec<(usize, usize)>,
    /// Set when the matrix has more facets than a simplex; the bijection is
    /// exposed but not certified by tests for that range.
    pub unverified: bool,
}

impl FaceLattice {
    /// Face counts by dimension 0..n-1; ideal vertices count as vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.n];
        for r in &self.records {
            match r.kind {
                FaceKind::RealFace { dim } => f[dim] += 1,
                FaceKind::IdealVertex => f[0] += 1,
            }
        }
        f
    }

    pub fn records_of_dim(&self, d: usize) -> impl Iterator<Item = &FaceRecord> {
        self.records.iter().filter(move |r| match r.kind {
            FaceKind::RealFace { dim } => dim == d,
            FaceKind::IdealVertex => d == 0,
        })
    }

    pub fn ideal_vertex_count(&self) -> usize {
        self.records.iter().filter(|r| r.kind == FaceKind::IdealVertex).count()
    }

    /// JSON export: one record per face with its facet set, kind, and
    /// dimension.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct Rec<'a> {
            facets: &'a BTreeSet<usize>,
            kind: &'a FaceKind,
        }
        #[derive(serde::Serialize)]
        struct Out<'a> {
            dimension: usize,
            f_vector: Vec<usize>,
            ideal_vertices: usize,
            unverified: bool,
            records: Vec<Rec<'a>>,
        }
        let out = Out {
            dimension: self.n,
            f_vector: self.f_vector(),
            ideal_vertices: self.ideal_vertex_count(),
            unverified: self.unverified,
            records: self
                .records
                .iter()
                .map(|r| Rec { facets: &r.facet_set, kind: &r.kind })
                .collect(),
        };
        serde_json::to_string_pretty(&out).expect("lattice serialization cannot fail")
    }
}

fn subsets_of_size(k: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(from: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in from..k {
            if k - v < left {
                break;
            }
            cur.push(v);
            go(v + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    go(0, k, size, &mut cur, &mut out);
    out
}

/// Enumerate the face lattice of the polyhedron realized by `g` in
/// dimension `n`. Spherical principal submatrices of size s become real
/// faces of dimension n - s; maximal Euclidean submatrices of rank n - 1
/// become ideal vertices.
pub fn enumerate_faces(g: &GramMatrix, n: usize) -> Result<FaceLattice> {
    let k = g.nrows();
    if k > 12 {
        return Err(CoxError::Precondition(format!(
            "face enumeration is exhaustive only up to 12 facets, got {k}"
        )));
    }
    let sig = signature(g, tol::ALGEBRAIC);
    let geometry = gram::geometry_for(sig, n)?;
    match geometry {
        Geometry::Hyperbolic => match vinberg_realizable(g, n)? {
            Realizability::Realizable { .. } => {}
            Realizability::NotRealizable(reason) => {
                return Err(CoxError::BadGram(format!("not realizable: {reason}")));
            }
        },
        _ => {
            if k != n + 1 {
                return Err(CoxError::Precondition(format!(
                    "spherical/Euclidean face enumeration expects a simplex Gram (k = n + 1), got k = {k}"
                )));
            }
        }
    }

    let mut records = Vec::new();
    for size in 1..=n.min(k) {
        for subset in subsets_of_size(k, size) {
            if submatrix_kind(g, &subset) == SubmatrixKind::Spherical {
                records.push(FaceRecord {
                    facet_set: subset.iter().copied().collect(),
                    kind: FaceKind::RealFace { dim: n - size },
                    gram_block: gram::principal(g, &subset),
                });
            }
        }
    }
    if geometry == Geometry::Hyperbolic {
        for subset in maximal_euclidean_subsets(g, n) {
            records.push(FaceRecord {
                facet_set: subset.iter().copied().collect(),
                kind: FaceKind::IdealVertex,
                gram_block: gram::principal(g, &subset),
            });
        }
    }

    let mut incidence = Vec::new();
    for (a, ra) in records.iter().enumerate() {
        for (b, rb) in records.iter().enumerate() {
            if a != b && ra.facet_set.is_subset(&rb.facet_set) {
                incidence.push((a, b));
            }
        }
    }

    Ok(FaceLattice { n, records, incidence, unverified: k > n + 1 })
}

/// The Gram matrix of the link of the face indexed by `subset`, flagged
/// spherical (link on a small sphere) or Euclidean (horospherical link).
pub fn link_of(g: &GramMatrix, subset: &[usize]) -> Result<(GramMatrix, SubmatrixKind)> {
    let kind = submatrix_kind(g, subset);
    match kind {
        SubmatrixKind::Spherical | SubmatrixKind::Euclidean => {
            Ok((gram::principal(g, subset), kind))
        }
        SubmatrixKind::Other => Err(CoxError::Precondition(format!(
            "subset {subset:?} indexes neither a face nor an ideal vertex"
        ))),
    }
}

/// Coordinates of all vertices (real and ideal) of a realized simplex.
/// Real vertices are the form-orthogonal complements of their n facet
/// normals; ideal vertices are the null combinations `sum w_j v_j` with `w`
/// the kernel vector of the Euclidean block.
pub fn simplex_vertices(m: &MirrorSystem, lattice: &FaceLattice) -> Result<Vec<Point>> {
    let n = lattice.n;
    let k = m.len();
    if k != n + 1 {
        return Err(CoxError::Precondition(format!(
            "vertex coordinates need a simplex system (k = n + 1), got k = {k}"
        )));
    }
    let ambient = m.form.ambient_dim();
    let j = m.form.matrix();
    let g = m.gram()?;

    let mut out = Vec::new();
    for record in lattice.records_of_dim(0) {
        let subset: Vec<usize> = record.facet_set.iter().copied().collect();
        match record.kind {
            FaceKind::RealFace { .. } => {
                let point = if m.form.geometry == Geometry::Euclidean {
                    // Solve <x, v_j> = a_j on the n mirrors through the vertex.
                    let rows: Vec<_> =
                        subset.iter().map(|&i| m.normals[i].transpose()).collect();
                    let a = DMatrix::from_rows(&rows);
                    let b = DVector::from_fn(subset.len(), |r, _| m.offsets[subset[r]]);
                    let x = a.lu().solve(&b).ok_or_else(|| {
                        CoxError::Numerical("degenerate vertex system".into())
                    })?;
                    Point::interior(x)
                } else {
                    // One-dimensional orthogonal complement of the normals:
                    // the kernel of A is the null eigenvector of A^T A.
                    let rows: Vec<_> =
                        subset.iter().map(|&i| (&j * &m.normals[i]).transpose()).collect();
                    let a = DMatrix::from_rows(&rows);
                    let ata = a.transpose() * &a;
                    let eig = ata.symmetric_eigen();
                    let min_idx = (0..ambient)
                        .min_by(|&p, &q| eig.eigenvalues[p].total_cmp(&eig.eigenvalues[q]))
                        .expect("nonempty spectrum");
                    if eig.eigenvalues[min_idx] > 1e-8 {
                        return Err(CoxError::Numerical(
                            "degenerate orthogonal complement".into(),
                        ));
                    }
                    let u = eig.eigenvectors.column(min_idx).into_owned();
                    // Orient to the interior side of the remaining facets.
                    let mut x = u;
                    let side: f64 = (0..k)
                        .filter(|i| !subset.contains(i))
                        .map(|i| m.form.inner(&x, &m.normals[i]).unwrap_or(0.0))
                        .sum();
                    if side > 0.0 {
                        x = -x;
                    }
                    let p = normalize_point(&m.form, &x)?;
                    if p.kind != PointKind::Interior {
                        return Err(CoxError::Numerical(
                            "orthogonal complement of a spherical block is not timelike".into(),
                        ));
                    }
                    p
                };
                out.push(point);
            }
            FaceKind::IdealVertex => {
                let block = gram::principal(&g, &subset);
                let (_, w) = perron(&block)?;
                let mut x = DVector::zeros(ambient);
                for (bi, &i) in subset.iter().enumerate() {
                    x += w[bi] * &m.normals[i];
                }
                let p = normalize_point(&m.form, &x)?;
                if p.kind != PointKind::Ideal {
                    return Err(CoxError::Numerical(
                        "null combination did not land on the light cone".into(),
                    ));
                }
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Orthogonal projection onto the supporting subspace of the face indexed
/// by `subset`: `pi(x) = x - sum (H^-1)_{jl} (<x, v_j> - a_j) v_l`,
/// renormalized onto the model surface.
pub fn project_onto_face(m: &MirrorSystem, subset: &[usize], x: &Point) -> Result<Point> {
    if x.kind != PointKind::Interior {
        return Err(CoxError::Precondition("projection expects an interior point".into()));
    }
    let g = m.gram()?;
    let h = gram::principal(&g, subset);
    if submatrix_kind(&g, subset) != SubmatrixKind::Spherical {
        return Err(CoxError::Precondition(format!(
            "subset {subset:?} is not a spherical face"
        )));
    }
    let h_inv = h.try_inverse().ok_or_else(|| CoxError::Numerical("singular face block".into()))?;
    let vals =
        DVector::from_fn(subset.len(), |r, _| {
            m.form.inner(&x.coords, &m.normals[subset[r]]).unwrap() - m.offsets[subset[r]]
        });
    let coeffs = &h_inv * vals;
    let mut y = x.coords.clone();
    for (bi, &i) in subset.iter().enumerate() {
        y -= coeffs[bi] * &m.normals[i];
    }
    if m.form.geometry == Geometry::Euclidean {
        Ok(Point::interior(y))
    } else {
        normalize_point(&m.form, &y)
    }
}
