//! Cross-module invariants exercised end to end on the bundled catalogs.

use coxeterkit::catalog;
use coxeterkit::diagram::{parse_diagram, CoxeterDiagram, EdgeMark};
use coxeterkit::faces::{enumerate_faces, simplex_vertices, FaceKind};
use coxeterkit::gram::{
    decompose, gram_from_diagram, maximal_euclidean_subsets, recover_normals, vinberg_realizable,
    Realizability,
};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[test]
fn hyperbolic_catalog_entries_realize_with_the_predicted_cusps() {
    for (cat, compact) in
        [(catalog::hyperbolic_compact(), true), (catalog::hyperbolic_noncompact(), false)]
    {
        for (d, label) in cat.sample_instances(10) {
            let k = d.node_count();
            let n = k - 1;
            let g = gram_from_diagram(&d);

            // The Gram matrix of a hyperbolic polyhedron is indecomposable.
            assert_eq!(decompose(&g).len(), 1, "{label} decomposes");

            let ideal = maximal_euclidean_subsets(&g, n);
            match vinberg_realizable(&g, n).unwrap() {
                Realizability::Realizable { compact: c, .. } => {
                    assert_eq!(c, compact, "{label} compactness");
                }
                Realizability::NotRealizable(reason) => {
                    panic!("{label} not realizable: {reason}")
                }
            }

            let mirrors = recover_normals(&g, n).unwrap();
            assert!((mirrors.gram().unwrap() - &g).norm() < 1e-8, "{label} round trip");

            let lattice = enumerate_faces(&g, n).unwrap();
            assert_eq!(lattice.ideal_vertex_count(), ideal.len(), "{label} cusp count");

            // Simplex combinatorics: C(n+1, n-d) faces of dimension d, with
            // ideal vertices counted among the vertices.
            let fv = lattice.f_vector();
            for (d_dim, &count) in fv.iter().enumerate() {
                assert_eq!(count, binom(n + 1, n - d_dim), "{label} f-vector at dim {d_dim}");
            }

            // Vertex coordinates: ideal points exactly where the lattice
            // says, and compact entries have none.
            let verts = simplex_vertices(&mirrors, &lattice).unwrap();
            let ideal_points = verts.iter().filter(|p| p.is_ideal()).count();
            assert_eq!(ideal_points, ideal.len(), "{label} ideal vertex points");
            if compact {
                assert_eq!(ideal_points, 0);
            }

            // Compact non-obtuse polyhedra are simple: every d-face lies in
            // exactly n - d facets; for simplexes this holds across the
            // board.
            for r in &lattice.records {
                if let FaceKind::RealFace { dim } = r.kind {
                    assert_eq!(r.facet_set.len(), n - dim, "{label} simplicity");
                }
            }
        }
    }
}

#[test]
fn spherical_and_euclidean_catalog_normals_round_trip() {
    for cat in [catalog::spherical(), catalog::euclidean()] {
        for (d, label) in cat.sample_instances(8) {
            let k = d.node_count();
            if k == 1 {
                continue;
            }
            let g = gram_from_diagram(&d);
            // Mirror count k realizes on S^(k-1) and R^(k-1) alike.
            let n = k - 1;
            let mirrors = recover_normals(&g, n)
                .unwrap_or_else(|e| panic!("{label} failed to realize: {e}"));
            assert!((mirrors.gram().unwrap() - &g).norm() < 1e-8, "{label} round trip");
        }
    }
}

#[test]
fn random_diagrams_round_trip_through_the_dsl() {
    let mut rng = StdRng::seed_from_u64(2026);
    for _ in 0..200 {
        let k = rng.gen_range(1..=7);
        let mut d = CoxeterDiagram::new(k).unwrap();
        for i in 1..=k {
            for j in (i + 1)..=k {
                match rng.gen_range(0..5) {
                    0 => d.add_edge(i, j, EdgeMark::Finite(rng.gen_range(3..=9))).unwrap(),
                    1 => d.add_edge(i, j, EdgeMark::Parallel).unwrap(),
                    2 => d
                        .add_edge(i, j, EdgeMark::Ultraparallel(rng.gen_range(1..=40) as f64 / 8.0))
                        .unwrap(),
                    _ => {}
                }
            }
        }
        let rings: Vec<usize> = (1..=k).filter(|_| rng.gen_bool(0.4)).collect();
        d.set_rings(rings).unwrap();
        let text = d.render();
        let back = parse_diagram(&text).unwrap();
        assert_eq!(d, back, "round trip failed for {text:?}");
    }
}
