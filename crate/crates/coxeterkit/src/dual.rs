//! Polar duals of uniform polytopes and their hyperbolic realizations.
//!
//! The dual of a polytope with the origin in its interior is
//! `P* = { x : <x,y> <= 1 for all y in P }`: its facets carry the primal
//! vertices as normals, its vertices solve the facet planes of the primal,
//! and its face lattice is the primal's reversed. Scaling the dual of a
//! semiregular polytope so its outer vertices reach the unit sphere and
//! reading the ball as the Klein model yields hyperbolic polyhedra, right
//! angled when the primal facets are simplexes and cross-polytopes.

use nalgebra::{DMatrix, DVector};

use crate::error::{CoxError, Result};
use crate::forms::{BilinearForm, Geometry, Point, PointKind};
use crate::tol;
use crate::wythoff::Polytope;

/// A polar dual, with its vertices grouped by distance from the center.
#[derive(Debug, Clone)]
pub struct DualPolytope {
    pub polytope: Polytope,
    /// Vertex indices grouped by radius, ascending.
    pub radius_classes: Vec<Vec<usize>>,
    /// One radius per class.
    pub radii: Vec<f64>,
    /// Ridge adjacency inherited from the primal edges: each dual ridge is
    /// the pair of dual facets (= primal vertices) of a primal edge.
    pub primal_edges: Vec<Vec<usize>>,
}

/// Hyperbolic realization of a dual polytope in the Klein model.
#[derive(Debug, Clone)]
pub struct HyperbolicRealization {
    pub polytope: Polytope,
    /// One dihedral angle per primal edge, aligned with `primal_edges` of
    /// the dual it was built from.
    pub dihedral_angles: Vec<f64>,
    pub ideal_vertices: Vec<usize>,
    pub real_vertices: Vec<usize>,
}

/// Polar dual of a convex polytope with the center in its interior.
pub fn dual_polytope(p: &Polytope) -> Result<DualPolytope> {
    if p.geometry == Geometry::Hyperbolic {
        return Err(CoxError::Precondition(
            "polar duality needs a compact convex polytope about the origin".into(),
        ));
    }
    let a = p.form.ambient_dim();
    let n = p.dim;
    let facets = p.facets();
    if facets.is_empty() {
        return Err(CoxError::Precondition("the polytope has no facets".into()));
    }

    // One dual vertex per primal facet: the solution of <x, v> = 1 over the
    // facet's vertices.
    let mut dual_vertices = Vec::with_capacity(facets.len());
    for facet in facets {
        let rows: Vec<_> = facet.iter().map(|&v| p.vertices[v].coords.transpose()).collect();
        let m = DMatrix::from_rows(&rows);
        let b = DVector::from_element(facet.len(), 1.0);
        let x = (m.transpose() * &m)
            .lu()
            .solve(&(m.transpose() * &b))
            .ok_or_else(|| CoxError::Numerical("dual vertex solve failed".into()))?;
        let residual = (&m * &x - &b).norm();
        if residual > 1e-9 {
            return Err(CoxError::Numerical(format!(
                "facet plane solve residual {residual}; polytope is not uniform enough"
            )));
        }
        dual_vertices.push(Point::interior(x));
    }

    // Origin must be interior: every primal vertex sits weakly inside every
    // dual facet plane.
    for x in &dual_vertices {
        for v in &p.vertices {
            if v.coords.dot(&x.coords) > 1.0 + 1e-7 {
                return Err(CoxError::Precondition(
                    "center is not interior: a vertex crosses a polar plane".into(),
                ));
            }
        }
    }

    // Dual faces of dimension d are primal faces of dimension n-1-d,
    // rewritten as the set of primal facets containing them.
    let facet_sets: Vec<std::collections::BTreeSet<usize>> =
        facets.iter().map(|f| f.iter().copied().collect()).collect();
    let facets_containing = |verts: &[usize]| -> Vec<usize> {
        facet_sets
            .iter()
            .enumerate()
            .filter(|(_, fs)| verts.iter().all(|v| fs.contains(v)))
            .map(|(i, _)| i)
            .collect()
    };

    let mut dual_faces: Vec<Vec<Vec<usize>>> = Vec::new();
    for d in 1..n {
        let primal_dim = n - 1 - d;
        let mut layer: Vec<Vec<usize>> = if primal_dim == 0 {
            (0..p.vertices.len()).map(|v| facets_containing(&[v])).collect()
        } else {
            p.faces[primal_dim - 1].iter().map(|f| facets_containing(f)).collect()
        };
        for f in &mut layer {
            f.sort_unstable();
        }
        layer.sort();
        dual_faces.push(layer);
    }

    // Radius classes.
    let mut order: Vec<usize> = (0..dual_vertices.len()).collect();
    order.sort_by(|&i, &j| {
        dual_vertices[i].coords.norm().total_cmp(&dual_vertices[j].coords.norm())
    });
    let mut radius_classes: Vec<Vec<usize>> = Vec::new();
    let mut radii: Vec<f64> = Vec::new();
    for idx in order {
        let r = dual_vertices[idx].coords.norm();
        match radii.last() {
            Some(&last) if (r - last).abs() <= 1e-6 => {
                radius_classes.last_mut().unwrap().push(idx)
            }
            _ => {
                radii.push(r);
                radius_classes.push(vec![idx]);
            }
        }
    }

    let polytope = Polytope {
        geometry: Geometry::Euclidean,
        form: BilinearForm::euclidean(a),
        dim: n,
        vertices: dual_vertices,
        faces: dual_faces,
        edge_length: None,
    };
    Ok(DualPolytope {
        polytope,
        radius_classes,
        radii,
        primal_edges: p.edges().to_vec(),
    })
}

/// Dihedral angles along the ridges of the dual, one per primal edge:
/// `pi - angle(v_a, v_b)` for the primal edge (a, b), since the primal
/// vertices are the dual facet normals. For a uniform primal these are all
/// equal; a spread above 1e-8 is an error.
pub fn ridge_angles(q: &DualPolytope, primal: &Polytope) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(q.primal_edges.len());
    for e in &q.primal_edges {
        let a = &primal.vertices[e[0]].coords;
        let b = &primal.vertices[e[1]].coords;
        let c = (a.dot(b) / (a.norm() * b.norm())).clamp(-1.0, 1.0);
        out.push(std::f64::consts::PI - c.acos());
    }
    let (lo, hi) = out
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if hi - lo > 1e-8 {
        return Err(CoxError::Numerical(format!(
            "ridge angles spread {} exceeds 1e-8; the primal is not uniform",
            hi - lo
        )));
    }
    Ok(out)
}

/// Realize the dual in hyperbolic space: scale the outer radius class onto
/// the unit sphere, read the ball as the Klein model, and lift the facet
/// planes to Lorentzian mirrors. Facet adjacency (hence the dihedral-angle
/// list) comes from the primal edges.
pub fn hyperbolic_realization(q: &DualPolytope, primal: &Polytope) -> Result<HyperbolicRealization> {
    let r_max = *q
        .radii
        .last()
        .ok_or_else(|| CoxError::Precondition("dual has no radius classes".into()))?;
    if r_max <= 1.0 + tol::ALGEBRAIC {
        return Err(CoxError::Precondition(
            "outer radius class must exceed the unit sphere before rescaling".into(),
        ));
    }
    let s = 1.0 / r_max;
    let n = q.polytope.dim;
    let form = BilinearForm::lorentzian(n);

    // Scaled Klein coordinates; classify and lift the vertices.
    let mut vertices = Vec::with_capacity(q.polytope.vertices.len());
    let mut ideal_vertices = Vec::new();
    let mut real_vertices = Vec::new();
    for (i, p) in q.polytope.vertices.iter().enumerate() {
        let y = s * &p.coords;
        let norm = y.norm();
        if norm > 1.0 + 1e-6 {
            return Err(CoxError::Precondition(format!(
                "vertex {i} lies outside the ball after rescaling (|y| = {norm}); not a finite-volume realization"
            )));
        }
        let mut lifted = DVector::zeros(n + 1);
        lifted[0] = 1.0;
        for c in 0..n {
            lifted[c + 1] = y[c];
        }
        if (norm - 1.0).abs() <= 1e-6 {
            ideal_vertices.push(i);
            vertices.push(Point { coords: lifted, kind: PointKind::Ideal });
        } else {
            real_vertices.push(i);
            let scale = (1.0 - norm * norm).sqrt();
            vertices.push(Point { coords: lifted / scale, kind: PointKind::Interior });
        }
    }

    // Facet planes <y, v_i> = s lift to unit spacelike normals
    // (s, v_i) / sqrt(1 - s^2), with v_i the unit primal vertices.
    let lift_normal = |i: usize| -> Result<DVector<f64>> {
        let v = &primal.vertices[i].coords;
        let vn = v.norm();
        let mut u = DVector::zeros(n + 1);
        u[0] = s;
        for c in 0..n {
            u[c + 1] = v[c] / vn;
        }
        Ok(u / (1.0 - s * s).sqrt())
    };
    let mut dihedral_angles = Vec::with_capacity(q.primal_edges.len());
    for e in &q.primal_edges {
        let u1 = lift_normal(e[0])?;
        let u2 = lift_normal(e[1])?;
        let ip = form.inner(&u1, &u2)?;
        dihedral_angles.push((-ip).clamp(-1.0, 1.0).acos());
    }

    let polytope = Polytope {
        geometry: Geometry::Hyperbolic,
        form,
        dim: n,
        vertices,
        faces: q.polytope.faces.clone(),
        edge_length: None,
    };
    Ok(HyperbolicRealization { polytope, dihedral_angles, ideal_vertices, real_vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_schlafli, SchlafliEntry};
    use crate::wythoff::{build, DEFAULT_CAP};
    use std::f64::consts::PI;

    fn schlafli(marks: &[u32], rings: &[usize]) -> crate::diagram::CoxeterDiagram {
        let entries: Vec<SchlafliEntry> = marks.iter().map(|&m| SchlafliEntry::Finite(m)).collect();
        from_schlafli(&entries, Some(rings)).unwrap()
    }

    #[test]
    fn dual_of_the_cube_is_the_octahedron() {
        let cube = build(&schlafli(&[4, 3], &[1]), DEFAULT_CAP).unwrap();
        assert_eq!(cube.f_vector(), vec![8, 12, 6]);
        let dual = dual_polytope(&cube).unwrap();
        assert_eq!(dual.polytope.f_vector(), vec![6, 12, 8]);
        // All dual vertices on one sphere: the cube is regular.
        assert_eq!(dual.radius_classes.len(), 1);
    }

    #[test]
    fn dual_of_the_cuboctahedron_is_the_rhombic_dodecahedron() {
        let cubocta = build(&schlafli(&[3, 4], &[2]), DEFAULT_CAP).unwrap();
        assert_eq!(cubocta.f_vector(), vec![12, 24, 14]);
        let dual = dual_polytope(&cubocta).unwrap();
        assert_eq!(dual.polytope.f_vector(), vec![14, 24, 12]);
        // Quadrilateral faces only.
        assert!(dual.polytope.facets().iter().all(|f| f.len() == 4));
        // Two radius classes, matching the two facet types (8 triangles and
        // 6 squares).
        let sizes: Vec<usize> = dual.radius_classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![8, 6]);
    }

    #[test]
    fn double_dual_restores_the_polytope() {
        for (marks, rings) in [(&[4, 3][..], &[1][..]), (&[3, 4], &[2]), (&[3, 3, 3], &[2])] {
            let p = build(&schlafli(marks, rings), DEFAULT_CAP).unwrap();
            let dd = dual_polytope(&dual_polytope(&p).unwrap().polytope).unwrap();
            assert_eq!(dd.polytope.f_vector(), p.f_vector());
            // The polar of the polar is the original body: vertices match.
            for v in &p.vertices {
                let found = dd
                    .polytope
                    .vertices
                    .iter()
                    .any(|w| (&w.coords - &v.coords).norm() < 1e-7);
                assert!(found, "double dual lost a vertex for {marks:?}");
            }
        }
    }

    #[test]
    fn ridge_angles_of_dual_octahedron_are_right() {
        let octa = build(&schlafli(&[3, 4], &[1]), DEFAULT_CAP).unwrap();
        let dual = dual_polytope(&octa).unwrap();
        for a in ridge_angles(&dual, &octa).unwrap() {
            assert!((a - PI / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn ridge_angles_are_equal_for_uniform_primals() {
        let cubocta = build(&schlafli(&[3, 4], &[2]), DEFAULT_CAP).unwrap();
        let dual = dual_polytope(&cubocta).unwrap();
        let angles = ridge_angles(&dual, &cubocta).unwrap();
        let first = angles[0];
        assert!(angles.iter().all(|a| (a - first).abs() < 1e-8));
    }

    #[test]
    fn perturbed_primal_fails_the_equal_angle_assertion() {
        let mut octa = build(&schlafli(&[3, 4], &[1]), DEFAULT_CAP).unwrap();
        // Tilt one vertex off its axis: the dual's ridge angles spread out.
        let tilt = 0.02 * &octa.vertices[1].coords;
        octa.vertices[0].coords += tilt;
        // The facet planes may already fail to meet in single points; if the
        // dual still assembles, the angle spread must trip the assertion.
        if let Ok(d) = dual_polytope(&octa) {
            assert!(ridge_angles(&d, &octa).is_err());
        }
    }

    #[test]
    fn rectified_simplex_dual_realizes_right_angled() {
        let p = build(&schlafli(&[3, 3, 3], &[2]), DEFAULT_CAP).unwrap();
        let dual = dual_polytope(&p).unwrap();
        assert_eq!(dual.polytope.vertices.len(), 10);
        assert_eq!(dual.radius_classes.len(), 2);

        let real = hyperbolic_realization(&dual, &p).unwrap();
        assert_eq!(real.ideal_vertices.len(), 5);
        assert_eq!(real.real_vertices.len(), 5);
        assert_eq!(real.polytope.facets().len(), 10);
        for a in &real.dihedral_angles {
            assert!((a - PI / 2.0).abs() < 1e-6, "angle {a}");
        }
        // Ideal vertex links are 3-cubes: 6 facets at each ideal vertex.
        for &v in &real.ideal_vertices {
            assert_eq!(real.polytope.facets_containing_vertex(v), 6);
        }
    }
}
