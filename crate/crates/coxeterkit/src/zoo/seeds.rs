//! Seed-vector families: explicit coordinates for the A- and B-family
//! Wythoff polytopes, demicubes, permutohedra, and omnitruncated cubes.
//!
//! The A family acts on R^{n+1} by coordinate swaps; its seed vector starts
//! at 0 and climbs by 1 across each ringed node, so the polytope is the
//! convex hull of the permutations of the seed, inside a hyperplane of
//! constant coordinate sum. The B family adds sign changes; its seed starts
//! at 1 or 0 depending on the first ring and climbs by sqrt 2.

use std::collections::BTreeSet;

use nalgebra::DVector;

use crate::diagram::{CoxeterDiagram, EdgeMark};
use crate::error::{CoxError, Result};
use crate::forms::{BilinearForm, Point};
use crate::gram::MirrorSystem;
use crate::wythoff::{build_polytope, Polytope, DEFAULT_CAP};

fn check_rings(n: usize, rings: &[usize]) -> Result<BTreeSet<usize>> {
    if rings.is_empty() {
        return Err(CoxError::BadRings("at least one node must be ringed".into()));
    }
    let set: BTreeSet<usize> = rings.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&r| r == 0 || r > n) {
        return Err(CoxError::BadRings(format!("ring {bad} out of range 1..={n}")));
    }
    Ok(set)
}

/// Mirrors of the A_n swap arrangement in R^{n+1}: wall i exchanges
/// coordinates i and i+1.
fn a_mirrors(n: usize) -> MirrorSystem {
    let normals = (0..n)
        .map(|i| {
            let mut v = DVector::zeros(n + 1);
            v[i] = 1.0 / 2f64.sqrt();
            v[i + 1] = -1.0 / 2f64.sqrt();
            v
        })
        .collect();
    MirrorSystem {
        form: BilinearForm::euclidean(n + 1),
        normals,
        offsets: vec![0.0; n],
    }
}

fn a_diagram(n: usize, rings: &BTreeSet<usize>) -> CoxeterDiagram {
    let mut d = CoxeterDiagram::new(n).expect("n >= 1");
    for i in 1..n {
        d.add_edge(i, i + 1, EdgeMark::Finite(3)).expect("path edge");
    }
    d.set_rings(rings.iter().copied()).expect("validated rings");
    d
}

/// A-family build: seed vector `(a_1, ..., a_{n+1})` with `a_1 = 0` and
/// `a_{i+1} = a_i + 1` exactly when node i is ringed. The vertex set is all
/// coordinate permutations of the seed.
pub fn a_seed(n: usize, rings: &[usize]) -> Result<Polytope> {
    if n == 0 || n > 8 {
        return Err(CoxError::Precondition(format!("rank {n} outside 1..=8")));
    }
    let rings = check_rings(n, rings)?;
    let mut seed = DVector::zeros(n + 1);
    for i in 1..=n {
        seed[i] = seed[i - 1] + if rings.contains(&i) { 1.0 } else { 0.0 };
    }
    build_polytope(&a_mirrors(n), &a_diagram(n, &rings), &Point::interior(seed), DEFAULT_CAP)
}

/// The n-permutohedron: the hull of all permutations of (0, 1, ..., n).
pub fn permutohedron(n: usize) -> Result<Polytope> {
    let rings: Vec<usize> = (1..=n).collect();
    a_seed(n, &rings)
}

/// Mirrors of the B_n arrangement in R^n: wall 1 flips the sign of the
/// first coordinate (the mark-4 end), wall i >= 2 swaps coordinates i-1, i.
fn b_mirrors(n: usize) -> MirrorSystem {
    let mut normals = Vec::with_capacity(n);
    let mut v = DVector::zeros(n);
    v[0] = -1.0;
    normals.push(v);
    for i in 1..n {
        let mut v = DVector::zeros(n);
        v[i - 1] = 1.0 / 2f64.sqrt();
        v[i] = -1.0 / 2f64.sqrt();
        normals.push(v);
    }
    MirrorSystem { form: BilinearForm::euclidean(n), normals, offsets: vec![0.0; n] }
}

fn b_diagram(n: usize, rings: &BTreeSet<usize>) -> CoxeterDiagram {
    let mut d = CoxeterDiagram::new(n).expect("n >= 2");
    d.add_edge(1, 2, EdgeMark::Finite(4)).expect("mark 4 end");
    for i in 2..n {
        d.add_edge(i, i + 1, EdgeMark::Finite(3)).expect("path edge");
    }
    d.set_rings(rings.iter().copied()).expect("validated rings");
    d
}

/// B-family build: seed `(c_1, ..., c_n)` with `c_1 = 1` when node 1 is
/// ringed (0 otherwise) and `c_{i+1} = c_i + sqrt 2` exactly when node i+1
/// is ringed. The vertex set is all permutations with all sign changes.
pub fn b_seed(n: usize, rings: &[usize]) -> Result<Polytope> {
    if !(2..=8).contains(&n) {
        return Err(CoxError::Precondition(format!("rank {n} outside 2..=8")));
    }
    let rings = check_rings(n, rings)?;
    let mut seed = DVector::zeros(n);
    seed[0] = if rings.contains(&1) { 1.0 } else { 0.0 };
    for i in 1..n {
        seed[i] = seed[i - 1] + if rings.contains(&(i + 1)) { 2f64.sqrt() } else { 0.0 };
    }
    build_polytope(&b_mirrors(n), &b_diagram(n, &rings), &Point::interior(seed), DEFAULT_CAP)
}

/// The omnitruncated n-cube: the B-family build with every node ringed.
pub fn omnitruncated_cube(n: usize) -> Result<Polytope> {
    let rings: Vec<usize> = (1..=n).collect();
    b_seed(n, &rings)
}

/// Mirrors of the D_n arrangement: the fork tips reflect across
/// x_1 = +-x_2, the chain swaps consecutive coordinates.
fn d_mirrors(n: usize) -> MirrorSystem {
    let mut normals = Vec::with_capacity(n);
    let mut tip1 = DVector::zeros(n);
    tip1[0] = 1.0 / 2f64.sqrt();
    tip1[1] = -1.0 / 2f64.sqrt();
    let mut tip2 = DVector::zeros(n);
    tip2[0] = 1.0 / 2f64.sqrt();
    tip2[1] = 1.0 / 2f64.sqrt();
    normals.push(tip1);
    normals.push(tip2);
    for i in 1..n - 1 {
        let mut v = DVector::zeros(n);
        v[i] = 1.0 / 2f64.sqrt();
        v[i + 1] = -1.0 / 2f64.sqrt();
        normals.push(v);
    }
    MirrorSystem { form: BilinearForm::euclidean(n), normals, offsets: vec![0.0; n] }
}

fn d_diagram(n: usize, ring: usize) -> CoxeterDiagram {
    let mut d = CoxeterDiagram::new(n).expect("n >= 3");
    d.add_edge(1, 3, EdgeMark::Finite(3)).expect("tip edge");
    d.add_edge(2, 3, EdgeMark::Finite(3)).expect("tip edge");
    for i in 3..n {
        d.add_edge(i, i + 1, EdgeMark::Finite(3)).expect("chain edge");
    }
    d.set_rings([ring]).expect("tip ring");
    d
}

/// The n-demicube: the vertices of the unit cube with even coordinate sum.
/// Faces come from the D_n Wythoff build on the centered cube, translated
/// back onto the 0/1 coordinates.
pub fn demicube(n: usize) -> Result<Polytope> {
    if !(3..=8).contains(&n) {
        return Err(CoxError::Precondition(format!("rank {n} outside 3..=8")));
    }
    // The seed is a cube vertex of even coordinate sum, centered: for odd n
    // that is (0, 1, ..., 1) off the first fork tip, for even n it is
    // (1, ..., 1) off the second.
    let (seed, ring) = if n % 2 == 1 {
        let mut s = DVector::from_element(n, 0.5);
        s[0] = -0.5;
        (s, 1)
    } else {
        (DVector::from_element(n, 0.5), 2)
    };
    let mut p =
        build_polytope(&d_mirrors(n), &d_diagram(n, ring), &Point::interior(seed), DEFAULT_CAP)?;
    for v in &mut p.vertices {
        for c in 0..n {
            v.coords[c] += 0.5;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutohedron_has_factorial_vertices() {
        let p = permutohedron(3).unwrap();
        assert_eq!(p.vertices.len(), 24);
        // Vertices are exactly the permutations of (0, 1, 2, 3).
        for v in &p.vertices {
            let mut coords: Vec<i64> = v.coords.iter().map(|&x| x.round() as i64).collect();
            assert!(v.coords.iter().zip(&coords).all(|(&x, &r)| (x - r as f64).abs() < 1e-9));
            coords.sort_unstable();
            assert_eq!(coords, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn octagon_coordinates() {
        let p = omnitruncated_cube(2).unwrap();
        assert_eq!(p.vertices.len(), 8);
        let target = 1.0 + 2f64.sqrt();
        for v in &p.vertices {
            let mut abs: Vec<f64> = v.coords.iter().map(|x| x.abs()).collect();
            abs.sort_by(|a, b| a.total_cmp(b));
            assert!((abs[0] - 1.0).abs() < 1e-9);
            assert!((abs[1] - target).abs() < 1e-9);
        }
    }

    #[test]
    fn truncated_octahedron_from_the_b_family() {
        // All nodes of B3 ringed: the omnitruncated 3-cube has 48 vertices.
        let p = omnitruncated_cube(3).unwrap();
        assert_eq!(p.vertices.len(), 48);
        assert_eq!(p.euler_boundary(), 2);
    }

    #[test]
    fn demicube_vertices_satisfy_the_parity_rule() {
        for n in [3usize, 4, 5] {
            let p = demicube(n).unwrap();
            assert_eq!(p.vertices.len(), 1 << (n - 1), "demicube({n})");
            for v in &p.vertices {
                let mut sum = 0i64;
                for &x in v.coords.iter() {
                    let r = x.round();
                    assert!((x - r).abs() < 1e-9, "coordinate {x} is not 0/1");
                    assert!(r == 0.0 || r == 1.0);
                    sum += r as i64;
                }
                assert_eq!(sum % 2, 0, "odd-parity vertex in demicube({n})");
            }
        }
    }

    #[test]
    fn demicube_4_is_a_cross_polytope() {
        let p = demicube(4).unwrap();
        assert_eq!(p.f_vector(), vec![8, 24, 32, 16]);
        // All facets simplexes.
        assert!(p.facets().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn demicube_5_facets_split_into_crosses_and_simplexes() {
        let p = demicube(5).unwrap();
        let crosses = p.facets().iter().filter(|f| f.len() == 8).count();
        let simplexes = p.facets().iter().filter(|f| f.len() == 5).count();
        assert_eq!((crosses, simplexes), (10, 16));
        assert_eq!(crosses + simplexes, p.facets().len());
    }

    #[test]
    fn demicube_facets_match_the_direct_combinatorial_rule() {
        // Facets are (a) the sub-demicubes x_i = b and (b) the neighbor
        // simplexes of the odd-parity cube vertices.
        let n = 5;
        let p = demicube(n).unwrap();
        let coords: Vec<Vec<i64>> = p
            .vertices
            .iter()
            .map(|v| v.coords.iter().map(|&x| x.round() as i64).collect())
            .collect();
        let index_of = |v: &Vec<i64>| coords.iter().position(|c| c == v).unwrap();

        let mut expected: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            for b in [0i64, 1] {
                let mut f: Vec<usize> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c[i] == b)
                    .map(|(idx, _)| idx)
                    .collect();
                f.sort_unstable();
                expected.push(f);
            }
        }
        for mask in 0u32..(1 << n) {
            if mask.count_ones() % 2 == 1 {
                let mut f: Vec<usize> = (0..n)
                    .map(|flip| {
                        let v: Vec<i64> = (0..n)
                            .map(|i| {
                                let bit = (mask >> i) & 1;
                                if i == flip {
                                    1 - bit as i64
                                } else {
                                    bit as i64
                                }
                            })
                            .collect();
                        index_of(&v)
                    })
                    .collect();
                f.sort_unstable();
                expected.push(f);
            }
        }
        expected.sort();
        let mut got: Vec<Vec<usize>> = p.facets().to_vec();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(a_seed(3, &[]).is_err());
        assert!(a_seed(3, &[4]).is_err());
        assert!(a_seed(9, &[1]).is_err());
        assert!(b_seed(1, &[1]).is_err());
        assert!(demicube(2).is_err());
    }
}
