//! The acceptance table: every verification criterion as a runnable check,
//! used both by the `verify` CLI verb and by the integration test gate.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::catalog;
use crate::diagram::{from_schlafli, CoxeterDiagram, SchlafliEntry};
use crate::dual::{dual_polytope, hyperbolic_realization, ridge_angles};
use crate::error::Result;
use crate::forms::Geometry;
use crate::gram::{gram_from_diagram, recover_normals, signature};
use crate::lowdim::{
    andreev_check, tetrahedron_geometry, triangle_geometry, AndreevResult, PlanarPolyhedronGraph,
    TetrahedronGeometry,
};
use crate::tol;
use crate::wythoff::{
    build, group_order, orbit_closure, seed_point, tessellation_patch, GroupOrder, Polytope,
    DEFAULT_CAP,
};
use crate::zoo;

/// Which slice of the table to run: the fast tier stays under a couple of
/// minutes, the large tier adds the 4_21 face enumeration and the bigger
/// dual realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Large,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} criterion {:2}: {} — {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn run(id: usize, name: &'static str, f: impl FnOnce() -> Result<String>) -> CriterionResult {
    match f() {
        Ok(detail) => CriterionResult { id, name, passed: true, detail },
        Err(e) => CriterionResult { id, name, passed: false, detail: e.to_string() },
    }
}

fn fail(msg: impl Into<String>) -> crate::CoxError {
    crate::CoxError::Numerical(msg.into())
}

fn schlafli(marks: &[u32], rings: &[usize]) -> Result<CoxeterDiagram> {
    let entries: Vec<SchlafliEntry> = marks.iter().map(|&m| SchlafliEntry::Finite(m)).collect();
    from_schlafli(&entries, Some(rings))
}

/// Run the acceptance suite for a tier, in criterion order.
pub fn run_suite(tier: Tier) -> Vec<CriterionResult> {
    let mut out = vec![
        run(1, "catalog signatures", catalog_signatures),
        run(2, "regular catalog f-vectors", regular_catalog),
        run(3, "dihedral-angle table", dihedral_angles),
        run(4, "semiregular table (fast part)", semiregular_fast),
        run(5, "group orders", group_orders),
        run(6, "E8 suite", e8_suite),
        run(7, "quaternion suite", quaternion_suite),
        run(8, "low-dimension criteria", lowdim_grids),
        run(9, "Andreev checker", andreev),
        run(10, "right-angled duals (fast part)", right_angled_dual_fast),
        run(11, "property suites", property_suites),
    ];
    if tier == Tier::Large {
        out.push(run(12, "semiregular table: 4_21 facets (large)", gosset_facets));
        out.push(run(13, "right-angled duals: 5-demicube (large)", right_angled_dual_large));
        out.push(run(14, "omnitruncated 120-cell faces (large)", omnitruncated_large));
    }
    out
}

/// Criterion 1: every bundled diagram's Gram signature matches its
/// geometry at relative tolerance 1e-9.
fn catalog_signatures() -> Result<String> {
    let mut checked = 0;
    for (cat, want) in [
        (catalog::spherical(), (0usize, 0usize)),
        (catalog::euclidean(), (0, 1)),
        (catalog::hyperbolic_compact(), (1, 0)),
        (catalog::hyperbolic_noncompact(), (1, 0)),
    ] {
        for (d, label) in cat.sample_instances(10) {
            let k = d.node_count();
            let sig = signature(&gram_from_diagram(&d), 1e-9);
            let expected = (k - want.0 - want.1, want.0, want.1);
            if (sig.positive, sig.negative, sig.zero) != expected {
                return Err(fail(format!(
                    "{label}: signature {sig} differs from {expected:?}"
                )));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} bundled diagrams match their signatures"))
}

fn check_build(marks: &[u32], fv: &[usize]) -> Result<Polytope> {
    let d = schlafli(marks, &[1])?;
    let p = build(&d, DEFAULT_CAP)?;
    if p.f_vector() != fv {
        return Err(fail(format!(
            "{{{marks:?}}}: f-vector {:?}, expected {fv:?}",
            p.f_vector()
        )));
    }
    Ok(p)
}

/// Criterion 2: the regular catalog up to dimension 4, exact integer
/// equality of f-vectors.
fn regular_catalog() -> Result<String> {
    check_build(&[3, 3], &[4, 6, 4])?;
    check_build(&[3, 4], &[6, 12, 8])?;
    check_build(&[4, 3], &[8, 12, 6])?;
    check_build(&[3, 5], &[12, 30, 20])?;
    check_build(&[5, 3], &[20, 30, 12])?;
    check_build(&[3, 3, 3], &[5, 10, 10, 5])?;
    check_build(&[3, 3, 4], &[8, 24, 32, 16])?;
    check_build(&[4, 3, 3], &[16, 32, 24, 8])?;
    check_build(&[3, 4, 3], &[24, 96, 96, 24])?;
    check_build(&[3, 3, 5], &[120, 720, 1200, 600])?;
    check_build(&[5, 3, 3], &[600, 1200, 720, 120])?;
    Ok("11 regular polytopes with exact f-vectors, including 24/600/120-cell".into())
}

/// Criterion 3: the dihedral-angle table rows within 1e-9, and cube cells
/// of the {4,3,5} tessellation at 2 pi / 5 within 1e-6.
fn dihedral_angles() -> Result<String> {
    let expect = |marks: &[u32], value: f64, tolerance: f64| -> Result<()> {
        let p = build(&schlafli(marks, &[1])?, DEFAULT_CAP)?;
        for a in p.dihedral_angles()? {
            if (a - value).abs() > tolerance {
                return Err(fail(format!("{{{marks:?}}}: angle {a} differs from {value}")));
            }
        }
        Ok(())
    };
    expect(&[4, 3], PI / 2.0, 1e-9)?;
    expect(&[3, 3, 4], 2.0 * PI / 3.0, 1e-9)?;
    expect(&[3, 4, 3], 2.0 * PI / 3.0, 1e-9)?;

    let patch = tessellation_patch(&schlafli(&[4, 3, 5], &[1])?, 1, DEFAULT_CAP)?;
    let expect_h = 2.0 * PI / 5.0;
    for cell in &patch.cells {
        let poly = Polytope {
            geometry: patch.geometry,
            form: patch.form,
            dim: patch.base_cell.dim,
            vertices: cell.vertices.clone(),
            faces: patch.base_cell.faces.clone(),
            edge_length: patch.base_cell.edge_length,
        };
        for a in poly.dihedral_angles()? {
            if (a - expect_h).abs() > 1e-6 {
                return Err(fail(format!("{{4,3,5}} cell angle {a} differs from {expect_h}")));
            }
        }
    }
    Ok("cube pi/2, 4-cross and 24-cell 2pi/3, hyperbolic cubes 2pi/5".into())
}

fn facet_type_counts(p: &Polytope) -> Vec<(usize, usize)> {
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for f in p.facets() {
        *counts.entry(f.len()).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// Criterion 4 (fast part): rectified 4-simplex and 5-demicube, exact.
fn semiregular_fast() -> Result<String> {
    let rect = build(&schlafli(&[3, 3, 3], &[2])?, DEFAULT_CAP)?;
    if rect.vertices.len() != 10 || facet_type_counts(&rect) != vec![(4, 5), (6, 5)] {
        return Err(fail(format!(
            "rectified 4-simplex: {} vertices, facets {:?}",
            rect.vertices.len(),
            facet_type_counts(&rect)
        )));
    }
    let demi = zoo::demicube(5)?;
    if demi.vertices.len() != 16 || facet_type_counts(&demi) != vec![(5, 16), (8, 10)] {
        return Err(fail(format!(
            "5-demicube: {} vertices, facets {:?}",
            demi.vertices.len(),
            facet_type_counts(&demi)
        )));
    }
    Ok("rectified 4-simplex 10v/5+5 facets; 5-demicube 16v/10 cross + 16 simplex".into())
}

/// Criterion 5: group orders by orbit-stabilizer, and the 14400-vertex
/// omnitruncated build.
fn group_orders() -> Result<String> {
    let order = |marks: &[u32]| -> Result<u128> {
        match group_order(&schlafli(marks, &[1])?)? {
            GroupOrder::Finite(n) => Ok(n),
            GroupOrder::Infinite => Err(fail(format!("{{{marks:?}}} came out infinite"))),
        }
    };
    for (marks, expected) in [
        (&[3u32, 3][..], 24u128),
        (&[4, 3], 48),
        (&[5, 3], 120),
        (&[5, 3, 3], 14400),
    ] {
        let got = order(marks)?;
        if got != expected {
            return Err(fail(format!("order of {{{marks:?}}} = {got}, expected {expected}")));
        }
    }
    // The omnitruncated H4 polytope has one vertex per group element.
    let d = schlafli(&[5, 3, 3], &[1, 2, 3, 4])?;
    let g = gram_from_diagram(&d);
    let mirrors = recover_normals(&g, 3)?;
    let seed = seed_point(&mirrors, d.rings())?;
    let orbit = orbit_closure(&mirrors.form, &[seed], &mirrors.reflections()?, DEFAULT_CAP)?;
    if orbit.len() != 14400 {
        return Err(fail(format!("omnitruncated H4 orbit has {} points", orbit.len())));
    }
    Ok("A3=24, B3=48, H3=120, H4=14400; omnitruncated H4 build has 14400 vertices".into())
}

/// Criterion 6: the E8 suite, exact in half-integer arithmetic.
fn e8_suite() -> Result<String> {
    let roots = zoo::e8_roots();
    if roots.len() != 240 || roots.iter().any(|r| r.norm2() != 2) {
        return Err(fail("root system is not 240 vectors of norm sqrt 2"));
    }
    let basis = zoo::e8_basis();
    for i in 0..8 {
        for j in 0..8 {
            if basis[i].dot(&basis[j]) != zoo::E8_GRAM[i][j] {
                return Err(fail(format!("basis Gram entry ({i},{j}) differs")));
            }
        }
    }
    zoo::seed_orbit_is_the_root_system()?;

    let (count, dist) = zoo::hole_neighbors(&zoo::RationalPoint::integer([1, 0, 0, 0, 0, 0, 0, 0]))?;
    if count != 16 || (dist - 1.0).abs() > 1e-12 {
        return Err(fail(format!("deep hole: {count} neighbors at {dist}")));
    }
    let shallow = zoo::RationalPoint { num: [5, 1, 1, 1, 1, 1, 1, 1], den: 6 };
    let (count, dist) = zoo::hole_neighbors(&shallow)?;
    if count != 9 || (dist - 2.0 * 2f64.sqrt() / 3.0).abs() > 1e-12 {
        return Err(fail(format!("shallow hole: {count} neighbors at {dist}")));
    }
    Ok("240 roots of norm sqrt 2, exact Gram, holes (16, 1) and (9, 2 sqrt 2 / 3)".into())
}

/// Criterion 7: quaternion groups and the 600-cell combinatorics.
fn quaternion_suite() -> Result<String> {
    let q = zoo::quaternion_polytopes()?;
    if q.cell24.len() != 24 || q.cell600.len() != 120 || q.snub24.len() != 96 {
        return Err(fail(format!(
            "group sizes {} / {} / {}",
            q.cell24.len(),
            q.cell600.len(),
            q.snub24.len()
        )));
    }
    let p = build(&schlafli(&[3, 3, 5], &[1])?, DEFAULT_CAP)?;
    if p.facets().len() != 600 {
        return Err(fail(format!("600-cell has {} facets", p.facets().len())));
    }
    for v in 0..p.vertices.len() {
        if p.edges_at_vertex(v) != 12 {
            return Err(fail(format!(
                "vertex {v} has {} edges, expected an icosahedral figure",
                p.edges_at_vertex(v)
            )));
        }
    }
    Ok("|T*24| = 24, |I*120| = 120, snub count 96; 600 facets with 12-valent vertices".into())
}

/// Criterion 8: low-dimension classifiers agree with the Gram signature on
/// exhaustive grids of angles pi/m, m in 2..=10; the ideal regular
/// tetrahedron reports four ideal vertices.
fn lowdim_grids() -> Result<String> {
    let mut triangles = 0;
    for p in 2..=10u32 {
        for q in 2..=10u32 {
            for r in 2..=10u32 {
                // The classifier cross-checks the signature internally.
                triangle_geometry(PI / p as f64, PI / q as f64, PI / r as f64)?;
                triangles += 1;
            }
        }
    }
    let mut tetrahedra = 0;
    let grid: Vec<f64> = (2..=10).map(|m| PI / m as f64).collect();
    let mut idx = [0usize; 6];
    loop {
        let angles: [f64; 6] = std::array::from_fn(|e| grid[idx[e]]);
        match tetrahedron_geometry(&angles) {
            Ok(_) => tetrahedra += 1,
            // Assignments with a vertex sum below pi admit no tetrahedron.
            Err(crate::CoxError::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
        let mut carry = true;
        for slot in idx.iter_mut() {
            if !carry {
                break;
            }
            *slot += 1;
            if *slot == grid.len() {
                *slot = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    match tetrahedron_geometry(&[PI / 3.0; 6])? {
        TetrahedronGeometry::Hyperbolic { ideal_vertices } if ideal_vertices.len() == 4 => {}
        g => return Err(fail(format!("ideal regular tetrahedron came out {g:?}"))),
    }
    Ok(format!("{triangles} triangles and {tetrahedra} tetrahedra agree with signatures"))
}

fn dodecahedron_graph() -> Result<PlanarPolyhedronGraph> {
    let p = build(&schlafli(&[5, 3], &[1])?, DEFAULT_CAP)?;
    PlanarPolyhedronGraph::from_faces(crate::export::face_cycles_3d(&p)?)
}

/// Criterion 9: the right-angled dodecahedron passes all five conditions;
/// single-vertex violations are caught with correct witnesses.
fn andreev() -> Result<String> {
    let dodeca = dodecahedron_graph()?;
    let right = dodeca.constant_angles(PI / 2.0);
    match andreev_check(&dodeca, &right)? {
        AndreevResult::Realizable => {}
        AndreevResult::Fails { condition, witness } => {
            return Err(fail(format!(
                "right-angled dodecahedron rejected by ({condition}): {witness}"
            )));
        }
    }

    // Violate one 3-valent vertex at a time and expect condition 1 to name
    // that vertex.
    let p = build(&schlafli(&[5, 3], &[1])?, DEFAULT_CAP)?;
    let cycles = crate::export::face_cycles_3d(&p)?;
    for vertex in [0usize, 7, 19] {
        let mut angles = right.clone();
        let touching: Vec<(usize, usize)> = {
            let mut pairs = BTreeSet::new();
            for (fi, c) in cycles.iter().enumerate() {
                if c.contains(&vertex) {
                    for (fj, c2) in cycles.iter().enumerate() {
                        if fj > fi && c2.contains(&vertex) {
                            pairs.insert((fi, fj));
                        }
                    }
                }
            }
            pairs.into_iter().collect()
        };
        for (n, pair) in touching.iter().enumerate() {
            angles.insert(*pair, if n == 2 { PI / 4.0 } else { PI / 3.0 });
        }
        match andreev_check(&dodeca, &angles)? {
            AndreevResult::Fails { condition: 1, witness } => {
                if !witness.contains(&format!("vertex {vertex} ")) {
                    return Err(fail(format!(
                        "wrong witness for vertex {vertex}: {witness}"
                    )));
                }
            }
            r => return Err(fail(format!("expected a condition-1 failure, got {r:?}"))),
        }
    }
    Ok("right-angled dodecahedron realizable; angle-sum violations caught with witnesses".into())
}

/// Criterion 10 (fast part): the dual of the rectified 4-simplex realizes
/// right-angled with a 5 ideal / 5 real vertex split.
fn right_angled_dual_fast() -> Result<String> {
    let p = build(&schlafli(&[3, 3, 3], &[2])?, DEFAULT_CAP)?;
    let dual = dual_polytope(&p)?;
    let real = hyperbolic_realization(&dual, &p)?;
    if real.ideal_vertices.len() != 5 || real.real_vertices.len() != 5 {
        return Err(fail(format!(
            "vertex split {} ideal / {} real",
            real.ideal_vertices.len(),
            real.real_vertices.len()
        )));
    }
    for a in &real.dihedral_angles {
        if (a - PI / 2.0).abs() > 1e-6 {
            return Err(fail(format!("dihedral angle {a} differs from pi/2")));
        }
    }
    Ok("P4: all angles within 1e-6 of pi/2, 5 ideal / 5 real vertices".into())
}

/// Criterion 11: the cross-module property suites.
fn property_suites() -> Result<String> {
    // Reflection involution and isometry at 1e-10 over the catalog mirrors.
    for marks in [&[3u32, 4][..], &[5, 3], &[3, 4, 3], &[5, 3, 3]] {
        let g = gram_from_diagram(&schlafli(marks, &[1])?);
        let mirrors = recover_normals(&g, marks.len())?;
        let a = mirrors.form.ambient_dim();
        for r in mirrors.reflections()? {
            if r.form_defect(&mirrors.form) > 1e-10 {
                return Err(fail("a reflection fails the isometry bound"));
            }
            let rr = r.compose(&r);
            let defect = (&rr.linear - nalgebra::DMatrix::identity(a, a))
                .iter()
                .fold(0.0f64, |m, x| m.max(x.abs()));
            if defect > 1e-10 {
                return Err(fail("a reflection fails the involution bound"));
            }
        }
        // Coxeter relations (r_i r_j)^m = 1 at 1e-8.
        let d = schlafli(marks, &[1])?;
        let refs = mirrors.reflections()?;
        for i in 0..refs.len() {
            for j in 0..refs.len() {
                if i == j {
                    continue;
                }
                let m = match d.edge_between(i + 1, j + 1) {
                    Some(crate::diagram::EdgeMark::Finite(m)) => m,
                    None => 2,
                    _ => continue,
                };
                let rot = refs[i].compose(&refs[j]);
                let mut power = crate::forms::Isometry::identity(a);
                for _ in 0..m {
                    power = power.compose(&rot);
                }
                let defect = (&power.linear - nalgebra::DMatrix::identity(a, a))
                    .iter()
                    .fold(0.0f64, |acc, x| acc.max(x.abs()));
                if defect > 1e-8 {
                    return Err(fail(format!("relation ({i},{j})^{m} defect {defect}")));
                }
            }
        }
    }

    // Equal edge lengths at 1e-8 and the Euler identity on compact builds.
    for (marks, rings) in [
        (&[3u32, 4][..], &[1usize][..]),
        (&[4, 3], &[1, 2]),
        (&[3, 3, 3], &[2]),
        (&[3, 4, 3], &[1]),
        (&[5, 3], &[1, 2, 3]),
    ] {
        let d = schlafli(marks, rings)?;
        let p = build(&d, DEFAULT_CAP)?;
        // build verifies the spread internally; recheck every edge here.
        let len = p.edge_length.ok_or_else(|| fail("compact build without edge length"))?;
        for e in p.edges() {
            let (a, b) = (&p.vertices[e[0]], &p.vertices[e[1]]);
            let d = match p.geometry {
                Geometry::Spherical => {
                    p.form.inner(&a.coords, &b.coords)?.clamp(-1.0, 1.0).acos()
                }
                _ => (&a.coords - &b.coords).norm(),
            };
            if (d - len).abs() > 1e-8 {
                return Err(fail(format!("edge length {d} differs from {len}")));
            }
        }
        let expected = 1 - (-1i64).pow(p.dim as u32);
        if p.euler_boundary() != expected {
            return Err(fail(format!("Euler characteristic {}", p.euler_boundary())));
        }
    }

    // Dual lattice reversal and the double dual.
    let p = build(&schlafli(&[3, 4], &[2])?, DEFAULT_CAP)?;
    let dual = dual_polytope(&p)?;
    let mut reversed = dual.polytope.f_vector();
    reversed.reverse();
    if reversed != p.f_vector() {
        return Err(fail("dual f-vector is not the reverse"));
    }
    ridge_angles(&dual, &p)?;
    let dd = dual_polytope(&dual.polytope)?;
    if dd.polytope.f_vector() != p.f_vector() {
        return Err(fail("double dual changed the f-vector"));
    }

    // Orbit closure is independent of generator order.
    let d = schlafli(&[3, 4, 3], &[1])?;
    let g = gram_from_diagram(&d);
    let mirrors = recover_normals(&g, 3)?;
    let seed = seed_point(&mirrors, d.rings())?;
    let refs = mirrors.reflections()?;
    let forward = orbit_closure(&mirrors.form, std::slice::from_ref(&seed), &refs, DEFAULT_CAP)?;
    let mut reversed_refs = refs.clone();
    reversed_refs.reverse();
    let backward = orbit_closure(&mirrors.form, &[seed], &reversed_refs, DEFAULT_CAP)?;
    if forward.len() != backward.len() {
        return Err(fail("orbit size depends on generator order"));
    }
    for (x, y) in forward.iter().zip(&backward) {
        if (&x.coords - &y.coords).norm() > tol::DEDUP {
            return Err(fail("orbit points depend on generator order"));
        }
    }

    Ok("involutions, relations, edge lengths, Euler, duality, orbit determinism".into())
}

/// Criterion 4 (large part): the 4_21 facet counts.
fn gosset_facets() -> Result<String> {
    let p = zoo::build_421(2_000_000)?;
    if p.vertices.len() != 240 {
        return Err(fail(format!("{} vertices", p.vertices.len())));
    }
    let counts = facet_type_counts(&p);
    // 7-simplexes have 8 vertices; 7-cross-polytopes have 14.
    if counts != vec![(8, 17280), (14, 2160)] {
        return Err(fail(format!("facet counts {counts:?}")));
    }
    Ok("4_21: 240 vertices, 2160 cross-polytope + 17280 simplex facets".into())
}

/// Criterion 10 (large part): the 5-demicube dual realization.
fn right_angled_dual_large() -> Result<String> {
    let p = zoo::demicube(5)?;
    // Recentre on the origin for polarity.
    let mut centered = p.clone();
    for v in &mut centered.vertices {
        for c in 0..5 {
            v.coords[c] -= 0.5;
        }
        v.coords /= v.coords.norm();
    }
    let dual = dual_polytope(&centered)?;
    let real = hyperbolic_realization(&dual, &centered)?;
    if real.ideal_vertices.len() != 10 || real.real_vertices.len() != 16 {
        return Err(fail(format!(
            "vertex split {} ideal / {} real",
            real.ideal_vertices.len(),
            real.real_vertices.len()
        )));
    }
    if real.polytope.facets().len() != 16 {
        return Err(fail(format!("{} facets, expected 16", real.polytope.facets().len())));
    }
    for a in &real.dihedral_angles {
        if (a - PI / 2.0).abs() > 1e-6 {
            return Err(fail(format!("dihedral angle {a} differs from pi/2")));
        }
    }
    // Ideal vertex links are 4-cubes: eight facets through each.
    for &v in &real.ideal_vertices {
        if real.polytope.facets_containing_vertex(v) != 8 {
            return Err(fail(format!(
                "ideal vertex {v} lies in {} facets, expected a 4-cube link",
                real.polytope.facets_containing_vertex(v)
            )));
        }
    }
    Ok("P5: right angles within 1e-6, 10 ideal / 16 real vertices, 16 facets, cubical links".into())
}

/// Large tier: the omnitruncated 120-cell with its full face structure.
fn omnitruncated_large() -> Result<String> {
    let d = schlafli(&[5, 3, 3], &[1, 2, 3, 4])?;
    let p = build(&d, DEFAULT_CAP)?;
    if p.vertices.len() != 14400 {
        return Err(fail(format!("{} vertices", p.vertices.len())));
    }
    let expected = 1 - (-1i64).pow(p.dim as u32);
    if p.euler_boundary() != expected {
        return Err(fail(format!("Euler characteristic {}", p.euler_boundary())));
    }
    Ok(format!("14400 vertices, f-vector {:?}", p.f_vector()))
}
