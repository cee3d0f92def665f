//! Special constructions: the E8 lattice and the Gosset polytope 4_21,
//! lattice holes, quaternionic polytopes, seed-vector families, and the
//! diagonal-slice tessellation of the cubic grid.

mod e8;
mod quaternion;
mod seeds;

pub use e8::{
    e8_basis, e8_roots, hole_neighbors, seed_orbit_is_the_root_system, LatticeVec,
    RationalPoint, E8_GRAM,
};
pub use quaternion::{
    binary_icosahedral, binary_tetrahedral, quaternion_polytopes, GoldenHalf, Quaternion,
    QuaternionPolytopes,
};
pub use seeds::{a_seed, b_seed, demicube, omnitruncated_cube, permutohedron};

use nalgebra::DVector;

use crate::diagram::{CoxeterDiagram, EdgeMark};
use crate::error::{CoxError, Result};
use crate::forms::{BilinearForm, Geometry, Point};
use crate::gram::MirrorSystem;
use crate::wythoff::{build_polytope, PatchCell, Polytope, TessellationPatch};

/// The Gosset polytope 4_21: the hull of the 240 roots. The vertex orbit is
/// verified exactly in lattice arithmetic, then the faces come from the
/// Wythoff machinery on the E8 mirror system.
pub fn build_421(cap: usize) -> Result<Polytope> {
    // Exact check first: the reflection orbit of e8 - e1 is the root set.
    let roots = seed_orbit_is_the_root_system()?;

    // Mirror system: the basis roots normalized to unit length, acting on
    // the sphere carrying the 240 scaled roots.
    let basis = e8_basis();
    let normals: Vec<DVector<f64>> =
        basis.iter().map(|b| b.to_f64() / 2f64.sqrt()).collect();
    let mirrors = MirrorSystem {
        form: BilinearForm::spherical(7),
        normals,
        offsets: vec![0.0; 8],
    };
    // The E8 diagram in the basis ordering: a chain 1..7 with node 8 hanging
    // off node 5; the seed vertex is opposite facet 1.
    let mut d = CoxeterDiagram::new(8)?;
    for (i, j) in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)] {
        d.add_edge(i, j, EdgeMark::Finite(3))?;
    }
    d.set_rings([1])?;

    let seed = Point::interior(
        LatticeVec::from_ints([-1, 0, 0, 0, 0, 0, 0, 1]).to_f64() / 2f64.sqrt(),
    );
    let p = build_polytope(&mirrors, &d, &seed, cap)?;
    if p.vertices.len() != roots.len() {
        return Err(CoxError::Numerical(format!(
            "4_21 build produced {} vertices, expected 240",
            p.vertices.len()
        )));
    }
    Ok(p)
}

/// A patch of the tessellation induced on the diagonal hyperplane
/// `x_1 + ... + x_{n+1} = 0` by the unit cubic tessellation of R^{n+1}.
/// Cells sit one per cube meeting the hyperplane; the cell of the cube at
/// corner z is the slice at level j = -sum(z), whose vertices are the 0/1
/// vectors with j ones, translated by z.
pub fn diagonal_slice_tessellation(n: usize, depth: usize) -> Result<TessellationPatch> {
    if n < 2 {
        return Err(CoxError::Precondition("the slice needs dimension at least 2".into()));
    }
    if n > 8 {
        return Err(CoxError::Precondition(format!("dimension {n} outside 2..=8")));
    }
    let m = n + 1;

    let cell_vertices = |z: &[i64]| -> Vec<Point> {
        let j = -z.iter().sum::<i64>();
        let mut verts = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as i64 == j {
                let coords = DVector::from_fn(m, |i, _| {
                    z[i] as f64 + if mask & (1 << i) != 0 { 1.0 } else { 0.0 }
                });
                verts.push(Point::interior(coords));
            }
        }
        verts
    };
    // Facets of the hypersimplex: proper coordinate sections y_i = b.
    let cell_facets = |z: &[i64], verts: &[Point]| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, &zi) in z.iter().enumerate() {
            for b in [0.0f64, 1.0] {
                let val = zi as f64 + b;
                let f: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| (p.coords[i] - val).abs() < 1e-9)
                    .map(|(idx, _)| idx)
                    .collect();
                if f.len() >= n && f.len() < verts.len() {
                    out.push(f);
                }
            }
        }
        out
    };
    let valid = |z: &[i64]| {
        let s = -z.iter().sum::<i64>();
        s >= 1 && s < m as i64
    };

    // Base cube: corner (0, ..., 0, -1), slice level 1 (a simplex cell).
    let mut z0 = vec![0i64; m];
    z0[m - 1] = -1;

    let mut cells: Vec<PatchCell> = Vec::new();
    let mut corners: Vec<Vec<i64>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
    let verts0 = cell_vertices(&z0);
    let facets0 = cell_facets(&z0, &verts0);
    cells.push(PatchCell { word: Vec::new(), vertices: verts0.clone(), facets: facets0.clone() });
    corners.push(z0.clone());
    seen.insert(z0.clone());

    let mut layer = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &ci in &layer {
            for step in 0..2 * m {
                let (axis, dir) = (step / 2, if step % 2 == 0 { 1 } else { -1 });
                let mut z = corners[ci].clone();
                z[axis] += dir;
                if !valid(&z) || seen.contains(&z) {
                    continue;
                }
                seen.insert(z.clone());
                let verts = cell_vertices(&z);
                let facets = cell_facets(&z, &verts);
                let mut word = cells[ci].word.clone();
                word.push(step);
                cells.push(PatchCell { word, vertices: verts, facets });
                corners.push(z);
                next.push(cells.len() - 1);
            }
        }
        layer = next;
    }

    // Adjacency: cubes differing by one step share the facet on the common
    // wall whenever both slices are proper.
    let mut adjacency = Vec::new();
    for (a, za) in corners.iter().enumerate() {
        for (b, zb) in corners.iter().enumerate().skip(a + 1) {
            let diff: i64 = za.iter().zip(zb).map(|(x, y)| (x - y).abs()).sum();
            if diff == 1 {
                adjacency.push((a, b));
            }
        }
    }

    let base_cell = Polytope {
        geometry: Geometry::Euclidean,
        form: BilinearForm::euclidean(m),
        dim: n,
        vertices: verts0,
        faces: {
            // Only the facet layer is materialized for slice cells.
            let mut faces = vec![Vec::new(); n - 1];
            faces[n - 2] = facets0;
            faces
        },
        edge_length: Some(2f64.sqrt()),
    };

    Ok(TessellationPatch {
        geometry: Geometry::Euclidean,
        form: BilinearForm::euclidean(m),
        dim: n,
        cells,
        adjacency,
        depth,
        base_cell,
    })
}
