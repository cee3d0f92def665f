//! The Wythoff construction: seed placement, orbit closure, polytope
//! assembly with full face enumeration, tessellation patches, reflection
//! group orders, and the regular/semiregular/uniform predicates.
//!
//! Faces are recovered combinatorially: every generator acts as a
//! permutation of the vertex list, the base face of a Coxeter-Wythoff
//! subdiagram is the seed's orbit under the subdiagram's reflections, and
//! the face orbit is the closure of that index set under the permutations.
//! This never enumerates the group itself, so E8-sized builds stay cheap.

mod orbit;

pub use orbit::{orbit_closure, PointSet};

use std::collections::{BTreeMap, BTreeSet, HashSet};

use nalgebra::{DMatrix, DVector};

use crate::diagram::{classify, CoxeterDiagram, DiagramClass};
use crate::error::{CoxError, Result};
use crate::forms::{normalize_point, BilinearForm, Geometry, Isometry, Point, PointKind};
use crate::gram::{
    gram_from_diagram, maximal_euclidean_subsets, perron, principal, recover_normals,
    MirrorSystem,
};
use crate::tol;

/// Default orbit cap; the CLI can override it.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A polytope with explicit vertex coordinates and a ranked face list.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub geometry: Geometry,
    pub form: BilinearForm,
    /// Dimension of the polytope.
    pub dim: usize,
    pub vertices: Vec<Point>,
    /// `faces[d - 1]` holds the d-dimensional faces for d = 1..=dim-1, each
    /// as a sorted list of vertex indices.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// Common edge length; `None` for ideal polytopes, whose edges are
    /// infinite.
    pub edge_length: Option<f64>,
}

impl Polytope {
    /// Face counts `[f_0, ..., f_{dim-1}]`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![self.vertices.len()];
        f.extend(self.faces.iter().map(|layer| layer.len()));
        f
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        self.faces.last().map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.faces.first().map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Alternating sum `f_0 - f_1 + ... ` of the boundary face counts;
    /// equals `1 - (-1)^dim` for compact polytopes.
    pub fn euler_boundary(&self) -> i64 {
        self.f_vector().iter().enumerate().fold(0i64, |acc, (d, &c)| {
            if d % 2 == 0 {
                acc + c as i64
            } else {
                acc - c as i64
            }
        })
    }

    pub fn has_ideal_vertices(&self) -> bool {
        self.vertices.iter().any(|p| p.is_ideal())
    }

    fn interior_point(&self) -> Result<DVector<f64>> {
        let a = self.form.ambient_dim();
        let mut c = DVector::zeros(a);
        for p in &self.vertices {
            c += &p.coords;
        }
        c /= self.vertices.len() as f64;
        Ok(c)
    }

    /// Outward supporting hyperplane of a facet: unit normal and offset,
    /// with `<x, u> = offset` on the facet and `<interior, u> < offset`.
    pub fn facet_hyperplane(&self, facet: &[usize]) -> Result<(DVector<f64>, f64)> {
        let a = self.form.ambient_dim();
        let interior = self.interior_point()?;
        match self.geometry {
            Geometry::Hyperbolic => {
                // Linear hyperplane orthogonal to the facet span under J.
                let j = self.form.matrix();
                let rows: Vec<_> =
                    facet.iter().map(|&v| (&j * &self.vertices[v].coords).transpose()).collect();
                let m = DMatrix::from_rows(&rows);
                let u = null_direction(&m)?;
                let q = self.form.inner(&u, &u)?;
                if q <= tol::ALGEBRAIC {
                    return Err(CoxError::Numerical("facet normal is not spacelike".into()));
                }
                let mut u = u / q.sqrt();
                if self.form.inner(&interior, &u)? > 0.0 {
                    u = -u;
                }
                Ok((u, 0.0))
            }
            _ => {
                // Affine hyperplane through the facet vertices.
                let mut mean = DVector::zeros(a);
                for &v in facet {
                    mean += &self.vertices[v].coords;
                }
                mean /= facet.len() as f64;
                let rows: Vec<_> = facet
                    .iter()
                    .map(|&v| (&self.vertices[v].coords - &mean).transpose())
                    .collect();
                let m = DMatrix::from_rows(&rows);
                let mut u = null_direction(&m)?;
                u /= u.norm();
                let mut offset = u.dot(&mean);
                if interior.dot(&u) > offset {
                    u = -u;
                    offset = -offset;
                }
                Ok((u, offset))
            }
        }
    }

    /// Dihedral angles along all ridges, each measured between the two
    /// facets sharing the ridge.
    pub fn dihedral_angles(&self) -> Result<Vec<f64>> {
        if self.dim < 3 {
            return Err(CoxError::Precondition(
                "dihedral angles need a polytope of dimension at least 3".into(),
            ));
        }
        let ridges = &self.faces[self.dim - 3];
        let facets = self.facets();
        let facet_sets: Vec<BTreeSet<usize>> =
            facets.iter().map(|f| f.iter().copied().collect()).collect();
        let normals: Vec<(DVector<f64>, f64)> = facets
            .iter()
            .map(|f| self.facet_hyperplane(f))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(ridges.len());
        for ridge in ridges {
            let rset: BTreeSet<usize> = ridge.iter().copied().collect();
            let containing: Vec<usize> = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, fs)| rset.is_subset(fs))
                .map(|(i, _)| i)
                .collect();
            if containing.len() != 2 {
                return Err(CoxError::Numerical(format!(
                    "ridge lies in {} facets, expected 2",
                    containing.len()
                )));
            }
            let (u1, _) = &normals[containing[0]];
            let (u2, _) = &normals[containing[1]];
            let dot = match self.geometry {
                Geometry::Hyperbolic => self.form.inner(u1, u2)?,
                _ => u1.dot(u2),
            };
            out.push((-dot).clamp(-1.0, 1.0).acos());
        }
        Ok(out)
    }

    pub fn facets_containing_vertex(&self, v: usize) -> usize {
        self.facets().iter().filter(|f| f.contains(&v)).count()
    }

    pub fn edges_at_vertex(&self, v: usize) -> usize {
        self.edges().iter().filter(|e| e.contains(&v)).count()
    }
}

fn null_direction(m: &DMatrix<f64>) -> Result<DVector<f64>> {
    let ata = m.transpose() * m;
    let n = ata.nrows();
    let eig = ata.symmetric_eigen();
    let min_idx = (0..n)
        .min_by(|&p, &q| eig.eigenvalues[p].total_cmp(&eig.eigenvalues[q]))
        .expect("nonempty spectrum");
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if eig.eigenvalues[min_idx] > 1e-7 * scale.max(1.0) {
        return Err(CoxError::Numerical("matrix has trivial kernel".into()));
    }
    Ok(eig.eigenvectors.column(min_idx).into_owned())
}

/// Solve for the seed determined by ringed nodes: on every unringed mirror,
/// at one common positive distance from every ringed one. In the one-ideal-
/// vertex hyperbolic configuration the seed is the ideal vertex itself.
/// `rings` uses 1-based node indices matching the diagram.
pub fn seed_point(m: &MirrorSystem, rings: &BTreeSet<usize>) -> Result<Point> {
    let k = m.len();
    if rings.is_empty() {
        return Err(CoxError::BadRings("the diagram has no ringed node".into()));
    }
    if let Some(&bad) = rings.iter().find(|&&r| r == 0 || r > k) {
        return Err(CoxError::BadRings(format!("ring {bad} out of range 1..={k}")));
    }
    let g = m.gram()?;
    let n = m.form.dim;

    if m.form.geometry == Geometry::Hyperbolic {
        let ideal = maximal_euclidean_subsets(&g, n);
        if !ideal.is_empty() {
            // Noncompact simplex: the only supported seed is the ideal
            // vertex, ringed exactly at the opposite facet.
            if ideal.len() != 1 {
                return Err(CoxError::Precondition(
                    "seed placement supports at most one ideal vertex".into(),
                ));
            }
            if rings.len() != 1 {
                return Err(CoxError::BadRings(
                    "an ideal-vertex configuration admits exactly one ring".into(),
                ));
            }
            let ring0 = rings.iter().next().unwrap() - 1;
            let expected: Vec<usize> = (0..k).filter(|&i| i != ring0).collect();
            if ideal[0] != expected {
                return Err(CoxError::BadRings(
                    "the ring must sit opposite the ideal vertex".into(),
                ));
            }
            let block = principal(&g, &expected);
            let (_, w) = perron(&block)?;
            let mut x = DVector::zeros(m.form.ambient_dim());
            for (bi, &i) in expected.iter().enumerate() {
                x += w[bi] * &m.normals[i];
            }
            let p = normalize_point(&m.form, &x)?;
            if p.kind != PointKind::Ideal {
                return Err(CoxError::Numerical("ideal seed did not land on the cone".into()));
            }
            return Ok(p);
        }
    }

    let a = m.form.ambient_dim();
    let ring_col = |i: usize| if rings.contains(&(i + 1)) { 1.0 } else { 0.0 };
    if m.form.geometry == Geometry::Euclidean {
        let mat = DMatrix::from_fn(k, a + 1, |r, c| {
            if c < a {
                m.normals[r][c]
            } else {
                ring_col(r)
            }
        });
        if k != a + 1 {
            return Err(CoxError::Precondition(format!(
                "Euclidean seed solve needs a simplex system, got {k} mirrors in dimension {a}"
            )));
        }
        let b = DVector::from_fn(k, |r, _| m.offsets[r]);
        let sol = mat
            .lu()
            .solve(&b)
            .ok_or_else(|| CoxError::Numerical("degenerate seed system".into()))?;
        let c = sol[a];
        if c <= tol::ALGEBRAIC {
            return Err(CoxError::Numerical(format!("seed distance {c} is not positive")));
        }
        return Ok(Point::interior(sol.rows(0, a).into_owned()));
    }

    // Spherical / compact hyperbolic: homogeneous system, one-dimensional
    // kernel, normalized onto the model surface with positive distance.
    let j = m.form.matrix();
    let mat = DMatrix::from_fn(k, a + 1, |r, c| {
        if c < a {
            (&j * &m.normals[r])[c]
        } else {
            ring_col(r)
        }
    });
    let u = null_direction(&mat)?;
    let mut x = u.rows(0, a).into_owned();
    let mut c = u[a];
    if c < 0.0 {
        x = -x;
        c = -c;
    }
    if c <= tol::ALGEBRAIC {
        return Err(CoxError::Numerical(format!("seed distance {c} is not positive")));
    }
    let p = normalize_point(&m.form, &x)?;
    if p.kind != PointKind::Interior {
        return Err(CoxError::Numerical("seed is not an interior point".into()));
    }
    Ok(p)
}

fn intrinsic_distance(form: &BilinearForm, p: &Point, q: &Point) -> Result<Option<f64>> {
    if p.is_ideal() || q.is_ideal() {
        return Ok(None);
    }
    let ip = form.inner(&p.coords, &q.coords)?;
    Ok(Some(match form.geometry {
        Geometry::Euclidean => (&p.coords - &q.coords).norm(),
        Geometry::Spherical => ip.clamp(-1.0, 1.0).acos(),
        Geometry::Hyperbolic => (-ip).max(1.0).acosh(),
    }))
}

/// Generator permutations of the vertex list.
fn vertex_permutations(
    form: &BilinearForm,
    vertices: &[Point],
    reflections: &[Isometry],
) -> Result<Vec<Vec<usize>>> {
    let mut set = PointSet::new(tol::DEDUP);
    for v in vertices {
        set.insert(v.clone());
    }
    let mut perms = Vec::with_capacity(reflections.len());
    for r in reflections {
        let mut perm = Vec::with_capacity(vertices.len());
        for v in vertices {
            let image = orbit::canonical_image(form, r, v)?;
            let idx = set
                .find(&image.coords)
                .ok_or_else(|| CoxError::Numerical("vertex orbit is not closed".into()))?;
            perm.push(idx);
        }
        perms.push(perm);
    }
    Ok(perms)
}

fn orbit_of_index_set(base: Vec<usize>, perms: &[&Vec<usize>]) -> HashSet<Vec<usize>> {
    let canon = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier = vec![canon(base)];
    seen.insert(frontier[0].clone());
    while let Some(face) = frontier.pop() {
        for perm in perms {
            let image = canon(face.iter().map(|&v| perm[v]).collect());
            if seen.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    seen
}

/// Assemble the polytope of `diagram` from an explicit mirror system and
/// seed. The diagram's nodes index the mirrors (node i = mirror i-1); its
/// ring set drives the face structure. This is the engine behind [`build`],
/// exposed for constructions whose mirrors come in special coordinates.
pub fn build_polytope(
    mirrors: &MirrorSystem,
    diagram: &CoxeterDiagram,
    seed: &Point,
    cap: usize,
) -> Result<Polytope> {
    let k = diagram.node_count();
    if mirrors.len() != k {
        return Err(CoxError::DimensionMismatch { expected: k, got: mirrors.len() });
    }
    if diagram.rings().is_empty() {
        return Err(CoxError::BadRings("the diagram has no ringed node".into()));
    }
    let form = mirrors.form;
    let reflections = mirrors.reflections()?;
    let vertices = orbit_closure(&form, std::slice::from_ref(seed), &reflections, cap)?;
    let perms = vertex_permutations(&form, &vertices, &reflections)?;

    let seed_idx = {
        let mut set = PointSet::new(tol::DEDUP);
        for v in &vertices {
            set.insert(v.clone());
        }
        set.find(&seed.coords).expect("seed is in its own orbit")
    };

    let dim = k;
    let mut faces = Vec::new();
    for h in 1..dim {
        let mut layer: HashSet<Vec<usize>> = HashSet::new();
        for sub in diagram.subdiagrams(h, true)? {
            // Skip non-spherical subdiagrams: they mark ideal vertices, not
            // faces (only possible for hyperbolic cells).
            if crate::diagram::subset_kind(diagram, &sub)
                != crate::diagram::SubsetKind::Spherical
            {
                continue;
            }
            let sub_perms: Vec<&Vec<usize>> =
                sub.iter().map(|&node| &perms[node - 1]).collect();
            let base: Vec<usize> =
                orbit_of_index_set(vec![seed_idx], &sub_perms).into_iter().flatten().collect();
            let all_perms: Vec<&Vec<usize>> = perms.iter().collect();
            layer.extend(orbit_of_index_set(base, &all_perms));
        }
        let mut layer: Vec<Vec<usize>> = layer.into_iter().collect();
        layer.sort();
        faces.push(layer);
    }

    // Edge lengths across all ringed nodes must agree for a well-positioned
    // seed.
    let mut lengths = Vec::new();
    for &r in diagram.rings() {
        let image = orbit::canonical_image(&form, &reflections[r - 1], seed)?;
        lengths.push(intrinsic_distance(&form, seed, &image)?);
    }
    let edge_length = if lengths.iter().any(|l| l.is_none()) {
        None
    } else {
        let vals: Vec<f64> = lengths.into_iter().map(|l| l.unwrap()).collect();
        let (lo, hi) = vals
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if hi - lo > 1e-8 {
            return Err(CoxError::Numerical(format!(
                "seed is not well positioned: edge lengths spread {}",
                hi - lo
            )));
        }
        Some(vals[0])
    };

    Ok(Polytope { geometry: form.geometry, form, dim, vertices, faces, edge_length })
}

/// Wythoff construction for a ringed diagram. Spherical diagrams produce
/// the full polytope; Euclidean and hyperbolic simplex diagrams produce the
/// single facet cell of the tessellation (see [`tessellation_patch`] for
/// patches), choosing the first spherical facet subdiagram in node order.
pub fn build(diagram: &CoxeterDiagram, cap: usize) -> Result<Polytope> {
    if diagram.rings().is_empty() {
        return Err(CoxError::BadRings("the diagram has no ringed node".into()));
    }
    let class = classify(diagram)?;
    let g = gram_from_diagram(diagram);
    let k = diagram.node_count();
    match class {
        DiagramClass::Spherical(_) => {
            let mirrors = recover_normals(&g, k - 1)?;
            let seed = seed_point(&mirrors, diagram.rings())?;
            build_polytope(&mirrors, diagram, &seed, cap)
        }
        DiagramClass::Euclidean(_)
        | DiagramClass::HyperbolicCompact
        | DiagramClass::HyperbolicNoncompact => {
            let n = k - 1;
            let mirrors = recover_normals(&g, n)?;
            let seed = seed_point(&mirrors, diagram.rings())?;
            let cell_nodes = diagram
                .subdiagrams(n, true)?
                .into_iter()
                .find(|sub| {
                    crate::diagram::subset_kind(diagram, sub)
                        == crate::diagram::SubsetKind::Spherical
                })
                .ok_or_else(|| {
                    CoxError::Precondition("no spherical facet subdiagram".into())
                })?;
            let sub_diagram = diagram.induced(&cell_nodes);
            let sub_mirrors = MirrorSystem {
                form: mirrors.form,
                normals: cell_nodes.iter().map(|&i| mirrors.normals[i - 1].clone()).collect(),
                offsets: cell_nodes.iter().map(|&i| mirrors.offsets[i - 1]).collect(),
            };
            build_polytope(&sub_mirrors, &sub_diagram, &seed, cap)
        }
        DiagramClass::NotASimplexDiagram => Err(CoxError::Precondition(
            "the diagram is not a simplex diagram; nothing to build".into(),
        )),
    }
}

/// One cell of a tessellation patch: the breadth-first word of facet
/// crossings that reached it, its vertices, and its facets as vertex-index
/// lists.
#[derive(Debug, Clone)]
pub struct PatchCell {
    pub word: Vec<usize>,
    pub vertices: Vec<Point>,
    pub facets: Vec<Vec<usize>>,
}

/// A finite patch of a Euclidean or hyperbolic tessellation.
#[derive(Debug, Clone)]
pub struct TessellationPatch {
    pub geometry: Geometry,
    pub form: BilinearForm,
    /// Dimension of the tessellated space.
    pub dim: usize,
    pub cells: Vec<PatchCell>,
    /// Pairs of cell indices sharing a facet.
    pub adjacency: Vec<(usize, usize)>,
    pub depth: usize,
    /// The face structure of the base cell, reused by every copy.
    pub base_cell: Polytope,
}

fn facet_reflection(p: &Polytope, facet: &[usize]) -> Result<Isometry> {
    let (u, offset) = p.facet_hyperplane(facet)?;
    match p.geometry {
        Geometry::Hyperbolic => crate::forms::reflection(&p.form, &u),
        _ => crate::forms::affine_reflection(&p.form, &u, offset),
    }
}

fn cell_key(vertices: &[Point]) -> Vec<Vec<i64>> {
    let mut keys: Vec<Vec<i64>> = vertices
        .iter()
        .map(|p| p.coords.iter().map(|&x| (x / tol::HASH_CELL).round() as i64).collect())
        .collect();
    keys.sort();
    keys
}

/// Expand the tessellation of a Euclidean or hyperbolic simplex diagram
/// around its base cell, out to the given cell-adjacency depth: depth 0 is
/// the base cell alone, depth d+1 adds every cell sharing a facet with the
/// previous layer.
pub fn tessellation_patch(
    diagram: &CoxeterDiagram,
    depth: usize,
    cap: usize,
) -> Result<TessellationPatch> {
    let class = classify(diagram)?;
    match class {
        DiagramClass::Euclidean(_)
        | DiagramClass::HyperbolicCompact
        | DiagramClass::HyperbolicNoncompact => {}
        DiagramClass::Spherical(_) => {
            return Err(CoxError::Precondition(
                "spherical diagrams produce polytopes; use build".into(),
            ));
        }
        DiagramClass::NotASimplexDiagram => {
            return Err(CoxError::Precondition("not a simplex diagram".into()));
        }
    }
    let base = build(diagram, cap)?;
    let form = base.form;
    let facet_indices: Vec<Vec<usize>> = base.facets().to_vec();

    let mut cells: Vec<PatchCell> = Vec::new();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut facet_owners: BTreeMap<Vec<Vec<i64>>, Vec<usize>> = BTreeMap::new();

    let base_cell = PatchCell {
        word: Vec::new(),
        vertices: base.vertices.clone(),
        facets: facet_indices.clone(),
    };
    seen.insert(cell_key(&base_cell.vertices));
    cells.push(base_cell);

    let mut layer: Vec<usize> = vec![0];
    for _ in 0..depth {
        let mut next_layer = Vec::new();
        for &ci in &layer {
            for (fi, facet) in facet_indices.iter().enumerate() {
                // Reflect the cell across this facet's supporting plane.
                let cell_poly = Polytope {
                    geometry: base.geometry,
                    form,
                    dim: base.dim,
                    vertices: cells[ci].vertices.clone(),
                    faces: base.faces.clone(),
                    edge_length: base.edge_length,
                };
                let r = facet_reflection(&cell_poly, facet)?;
                let reflected: Result<Vec<Point>> = cells[ci]
                    .vertices
                    .iter()
                    .map(|p| orbit::canonical_image(&form, &r, p))
                    .collect();
                let reflected = reflected?;
                let key = cell_key(&reflected);
                if seen.insert(key) {
                    if cells.len() >= cap {
                        return Err(CoxError::OrbitCapExceeded { cap, partial: cells.len() });
                    }
                    let mut word = cells[ci].word.clone();
                    word.push(fi);
                    cells.push(PatchCell {
                        word,
                        vertices: reflected,
                        facets: facet_indices.clone(),
                    });
                    next_layer.push(cells.len() - 1);
                }
            }
        }
        layer = next_layer;
        if layer.is_empty() {
            break;
        }
    }

    // Adjacency: two cells share a facet exactly when a facet key repeats.
    for (ci, cell) in cells.iter().enumerate() {
        for facet in &cell.facets {
            let pts: Vec<Point> = facet.iter().map(|&v| cell.vertices[v].clone()).collect();
            facet_owners.entry(cell_key(&pts)).or_default().push(ci);
        }
    }
    let mut adjacency = Vec::new();
    for owners in facet_owners.values() {
        if owners.len() == 2 {
            adjacency.push((owners[0].min(owners[1]), owners[0].max(owners[1])));
        }
    }
    adjacency.sort_unstable();
    adjacency.dedup();

    Ok(TessellationPatch {
        geometry: base.geometry,
        form,
        dim: base.dim,
        cells,
        adjacency,
        depth,
        base_cell: base,
    })
}

/// Order of the reflection group of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u128),
    Infinite,
}

impl std::fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "Infinite"),
        }
    }
}

/// Group order by the orbit-stabilizer recursion: the orbit of a single-ring
/// seed times the order of the vertex stabilizer, which is the group of the
/// link subdiagram. Non-spherical diagrams have infinite groups.
pub fn group_order(diagram: &CoxeterDiagram) -> Result<GroupOrder> {
    let all: BTreeSet<usize> = (1..=diagram.node_count()).collect();
    let mut total: u128 = 1;
    for comp in diagram.components_of(&all) {
        let sub = diagram.induced(&comp);
        match component_order(&sub)? {
            GroupOrder::Finite(n) => total *= n,
            GroupOrder::Infinite => return Ok(GroupOrder::Infinite),
        }
    }
    Ok(GroupOrder::Finite(total))
}

fn component_order(diagram: &CoxeterDiagram) -> Result<GroupOrder> {
    let k = diagram.node_count();
    if k == 1 {
        return Ok(GroupOrder::Finite(2));
    }
    match classify(diagram)? {
        DiagramClass::Spherical(_) => {}
        _ => return Ok(GroupOrder::Infinite),
    }
    let g = gram_from_diagram(diagram);
    let mirrors = recover_normals(&g, k - 1)?;
    let rings: BTreeSet<usize> = [1].into();
    let seed = seed_point(&mirrors, &rings)?;
    let reflections = mirrors.reflections()?;
    let orbit = orbit_closure(&mirrors.form, &[seed], &reflections, DEFAULT_CAP)?;

    let rest: BTreeSet<usize> = (2..=k).collect();
    let link = diagram.induced(&rest);
    match group_order(&link)? {
        GroupOrder::Finite(stab) => Ok(GroupOrder::Finite(orbit.len() as u128 * stab)),
        GroupOrder::Infinite => Ok(GroupOrder::Infinite),
    }
}

/// Symmetry classification of a Wythoff build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    Regular,
    Semiregular,
    Uniform,
    Irregular,
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SymmetryClass::Regular => "regular",
            SymmetryClass::Semiregular => "semiregular",
            SymmetryClass::Uniform => "uniform",
            SymmetryClass::Irregular => "irregular",
        };
        write!(f, "{s}")
    }
}

/// Number of maximal chains of Coxeter-Wythoff subdiagrams, one size per
/// level. A single chain characterizes the linear one-end-ring diagrams and
/// hence regular builds.
pub fn chain_count(diagram: &CoxeterDiagram) -> Result<u64> {
    let k = diagram.node_count();
    if k < 2 {
        return Ok(1);
    }
    let mut ways: BTreeMap<BTreeSet<usize>, u64> = BTreeMap::new();
    for s in diagram.subdiagrams(1, true)? {
        ways.insert(s, 1);
    }
    for size in 2..k {
        let mut next: BTreeMap<BTreeSet<usize>, u64> = BTreeMap::new();
        for sub in diagram.subdiagrams(size, true)? {
            let mut count = 0;
            for (prev, &w) in &ways {
                if prev.is_subset(&sub) {
                    count += w;
                }
            }
            if count > 0 {
                next.insert(sub, count);
            }
        }
        ways = next;
    }
    Ok(ways.values().sum())
}

/// F-vectors of the regular polytopes, by dimension. Polygons are all
/// regular, so dimension 2 is handled separately.
fn is_regular_f_vector(fv: &[usize]) -> bool {
    let n = fv.len();
    if n <= 2 {
        return true;
    }
    let binom = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    };
    let simplex: Vec<usize> = (0..n).map(|d| binom(n + 1, d + 1)).collect();
    let cube: Vec<usize> = (0..n).map(|d| (1 << (n - d)) * binom(n, d)).collect();
    let cross: Vec<usize> = (0..n).map(|d| (1 << (d + 1)) * binom(n, d + 1)).collect();
    if fv == simplex || fv == cube || fv == cross {
        return true;
    }
    match n {
        3 => fv == [12, 30, 20] || fv == [20, 30, 12],
        4 => fv == [24, 96, 96, 24] || fv == [120, 720, 1200, 600] || fv == [600, 1200, 720, 120],
        _ => false,
    }
}

fn facet_subdiagrams(diagram: &CoxeterDiagram) -> Result<Vec<CoxeterDiagram>> {
    let k = diagram.node_count();
    let mut out = Vec::new();
    for sub in diagram.subdiagrams(k - 1, true)? {
        if crate::diagram::subset_kind(diagram, &sub)
            == crate::diagram::SubsetKind::Spherical
        {
            out.push(diagram.induced(&sub));
        }
    }
    Ok(out)
}

fn is_regular_build(diagram: &CoxeterDiagram, cap: usize) -> Result<bool> {
    if diagram.node_count() <= 2 {
        return Ok(true);
    }
    if chain_count(diagram)? == 1 {
        return Ok(true);
    }
    let p = build(diagram, cap)?;
    Ok(is_regular_f_vector(&p.f_vector()))
}

/// Classify a Wythoff build: regular when the diagram admits a single flag
/// chain (or the combinatorics match a regular polytope), semiregular when
/// uniform with regular facets, uniform otherwise. Every well-positioned
/// build is at least uniform.
pub fn symmetry_class(p: &Polytope, diagram: &CoxeterDiagram) -> Result<SymmetryClass> {
    if is_regular_build(diagram, DEFAULT_CAP)? && is_regular_f_vector(&p.f_vector()) {
        return Ok(SymmetryClass::Regular);
    }
    if p.dim == 2 {
        // A vertex-transitive polygon with equal edges is regular.
        return Ok(SymmetryClass::Regular);
    }
    let mut all_facets_regular = true;
    for facet in facet_subdiagrams(diagram)? {
        if !is_regular_build(&facet, DEFAULT_CAP)? {
            all_facets_regular = false;
            break;
        }
    }
    if all_facets_regular {
        Ok(SymmetryClass::Semiregular)
    } else {
        Ok(SymmetryClass::Uniform)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_schlafli, EdgeMark, SchlafliEntry};

    fn schlafli(marks: &[u32], rings: &[usize]) -> CoxeterDiagram {
        let entries: Vec<SchlafliEntry> = marks.iter().map(|&m| SchlafliEntry::Finite(m)).collect();
        from_schlafli(&entries, Some(rings)).unwrap()
    }

    /// D_n diagram: fork tips 1, 2 joined to 3, then a path to node n.
    fn demicube_diagram(n: usize) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::new(n).unwrap();
        d.add_edge(1, 3, EdgeMark::Finite(3)).unwrap();
        d.add_edge(2, 3, EdgeMark::Finite(3)).unwrap();
        for i in 3..n {
            d.add_edge(i, i + 1, EdgeMark::Finite(3)).unwrap();
        }
        d.set_rings([1]).unwrap();
        d
    }

    #[test]
    fn single_ring_seed_is_the_opposite_vertex() {
        let d = schlafli(&[4, 3], &[1]);
        let g = gram_from_diagram(&d);
        let mirrors = recover_normals(&g, 2).unwrap();
        let seed = seed_point(&mirrors, d.rings()).unwrap();
        // On every unringed mirror, off the ringed one.
        assert!(mirrors.form.inner(&seed.coords, &mirrors.normals[1]).unwrap().abs() < 1e-9);
        assert!(mirrors.form.inner(&seed.coords, &mirrors.normals[2]).unwrap().abs() < 1e-9);
        assert!(mirrors.form.inner(&seed.coords, &mirrors.normals[0]).unwrap() < -1e-3);
    }

    #[test]
    fn fully_ringed_euclidean_triangle_seed_is_equidistant() {
        // The (pi/2, pi/3, pi/6) triangle: marks 4 and 6 on a path.
        let mut d = schlafli(&[4, 6], &[1]);
        d.set_rings([1, 2, 3]).unwrap();
        let g = gram_from_diagram(&d);
        let mirrors = recover_normals(&g, 2).unwrap();
        let seed = seed_point(&mirrors, d.rings()).unwrap();
        let dists: Vec<f64> = (0..3)
            .map(|i| {
                mirrors.offsets[i]
                    - mirrors.form.inner(&seed.coords, &mirrors.normals[i]).unwrap()
            })
            .collect();
        assert!(dists.iter().all(|&x| x > 0.0));
        assert!((dists[0] - dists[1]).abs() < 1e-9);
        assert!((dists[1] - dists[2]).abs() < 1e-9);
    }

    #[test]
    fn ideal_seed_for_the_cusped_simplex() {
        let d = schlafli(&[3, 3, 6], &[1]);
        let g = gram_from_diagram(&d);
        let mirrors = recover_normals(&g, 3).unwrap();
        let seed = seed_point(&mirrors, d.rings()).unwrap();
        assert!(seed.is_ideal());

        // Two rings are rejected in the ideal configuration.
        let mut two = d.clone();
        two.set_rings([1, 2]).unwrap();
        assert!(seed_point(&mirrors, two.rings()).is_err());
        // A ring not opposite the ideal vertex is rejected.
        let mut wrong = d.clone();
        wrong.set_rings([4]).unwrap();
        assert!(seed_point(&mirrors, wrong.rings()).is_err());
    }

    #[test]
    fn octahedron_orbit_and_f_vector() {
        let d = schlafli(&[3, 4], &[1]);
        let p = build(&d, DEFAULT_CAP).unwrap();
        assert_eq!(p.f_vector(), vec![6, 12, 8]);
        assert_eq!(p.euler_boundary(), 2);
        assert!(p.edge_length.is_some());
    }

    #[test]
    fn cube_and_dodecahedron() {
        let cube = build(&schlafli(&[4, 3], &[1]), DEFAULT_CAP).unwrap();
        assert_eq!(cube.f_vector(), vec![8, 12, 6]);
        let dodeca = build(&schlafli(&[5, 3], &[1]), DEFAULT_CAP).unwrap();
        assert_eq!(dodeca.f_vector(), vec![20, 30, 12]);
    }

    #[test]
    fn twenty_four_cell() {
        let d = schlafli(&[3, 4, 3], &[1]);
        let p = build(&d, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices.len(), 24);
        assert_eq!(p.facets().len(), 24);
        // Octahedral facets with cubic vertex links: 6 facets and 8 edges at
        // every vertex.
        assert!(p.facets().iter().all(|f| f.len() == 6));
        for v in 0..24 {
            assert_eq!(p.facets_containing_vertex(v), 6);
            assert_eq!(p.edges_at_vertex(v), 8);
        }
    }

    #[test]
    fn rectified_4_simplex() {
        let d = schlafli(&[3, 3, 3], &[2]);
        let p = build(&d, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices.len(), 10);
        let mut sizes: Vec<usize> = p.facets().iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        // 5 tetrahedra and 5 octahedra.
        assert_eq!(sizes, vec![4, 4, 4, 4, 4, 6, 6, 6, 6, 6]);
        assert_eq!(p.euler_boundary(), 0);
    }

    #[test]
    fn omnitruncated_h4_has_the_full_group_order() {
        let d = schlafli(&[5, 3, 3], &[1, 2, 3, 4]);
        let g = gram_from_diagram(&d);
        let mirrors = recover_normals(&g, 3).unwrap();
        let seed = seed_point(&mirrors, d.rings()).unwrap();
        let refs = mirrors.reflections().unwrap();
        let orbit = orbit_closure(&mirrors.form, &[seed], &refs, DEFAULT_CAP).unwrap();
        assert_eq!(orbit.len(), 14400);
    }

    #[test]
    fn orbit_closure_ignores_generator_order() {
        let d = schlafli(&[3, 4, 3], &[1]);
        let g = gram_from_diagram(&d);
        let mirrors = recover_normals(&g, 3).unwrap();
        let seed = seed_point(&mirrors, d.rings()).unwrap();
        let refs = mirrors.reflections().unwrap();
        let a = orbit_closure(&mirrors.form, std::slice::from_ref(&seed), &refs, DEFAULT_CAP).unwrap();
        let mut rev = refs.clone();
        rev.reverse();
        let b = orbit_closure(&mirrors.form, &[seed], &rev, DEFAULT_CAP).unwrap();
        assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            assert!((&p.coords - &q.coords).norm() < 1e-9);
        }
    }

    #[test]
    fn coxeter_relations_hold_numerically() {
        // (r_i r_j)^m = identity for every edge of a few catalog diagrams.
        for marks in [&[3, 4][..], &[5, 3], &[3, 4, 3], &[5, 3, 3]] {
            let d = schlafli(marks, &[1]);
            let g = gram_from_diagram(&d);
            let mirrors = recover_normals(&g, marks.len()).unwrap();
            let refs = mirrors.reflections().unwrap();
            let a = mirrors.form.ambient_dim();
            for i in 0..mirrors.len() {
                for j in 0..mirrors.len() {
                    if i == j {
                        continue;
                    }
                    let m = match d.edge_between(i + 1, j + 1) {
                        Some(EdgeMark::Finite(m)) => m,
                        None => 2,
                        _ => continue,
                    };
                    let rot = refs[i].compose(&refs[j]);
                    let mut power = Isometry::identity(a);
                    for _ in 0..m {
                        power = power.compose(&rot);
                    }
                    let defect = (&power.linear - DMatrix::identity(a, a))
                        .iter()
                        .fold(0.0f64, |acc, x| acc.max(x.abs()));
                    assert!(defect < 1e-8, "relation ({},{})^{m} fails by {defect}", i, j);
                }
            }
        }
    }

    #[test]
    fn base_cell_of_the_square_tiling() {
        let d = schlafli(&[4, 4], &[1]);
        let cell = build(&d, DEFAULT_CAP).unwrap();
        assert_eq!(cell.geometry, Geometry::Euclidean);
        assert_eq!(cell.f_vector(), vec![4, 4]);
    }

    #[test]
    fn square_tiling_patch_contains_all_eight_neighbors() {
        let d = schlafli(&[4, 4], &[1]);
        let patch0 = tessellation_patch(&d, 0, DEFAULT_CAP).unwrap();
        assert_eq!(patch0.cells.len(), 1);

        let patch = tessellation_patch(&d, 2, DEFAULT_CAP).unwrap();
        // Depth 2 reaches the 4 edge neighbors and the 4 corner neighbors.
        assert!(patch.cells.len() >= 9, "got {} cells", patch.cells.len());
        let base_center = center_of(&patch.cells[0]);
        let spacing = patch.base_cell.edge_length.unwrap();
        let mut offsets: Vec<(i64, i64)> = patch
            .cells
            .iter()
            .map(|c| {
                let ctr = center_of(c);
                (
                    ((ctr[0] - base_center[0]) / spacing).round() as i64,
                    ((ctr[1] - base_center[1]) / spacing).round() as i64,
                )
            })
            .collect();
        offsets.sort_unstable();
        for dx in -1..=1 {
            for dy in -1..=1 {
                assert!(offsets.contains(&(dx, dy)), "missing neighbor {dx},{dy}");
            }
        }
        assert!(!patch.adjacency.is_empty());

        // Spherical diagrams are rejected.
        assert!(tessellation_patch(&schlafli(&[4, 3], &[1]), 1, DEFAULT_CAP).is_err());
    }

    fn center_of(cell: &PatchCell) -> DVector<f64> {
        let mut c = DVector::zeros(cell.vertices[0].coords.len());
        for v in &cell.vertices {
            c += &v.coords;
        }
        c / cell.vertices.len() as f64
    }

    #[test]
    fn hyperbolic_cube_cells_have_dihedral_two_pi_over_five() {
        let d = schlafli(&[4, 3, 5], &[1]);
        let patch = tessellation_patch(&d, 1, DEFAULT_CAP).unwrap();
        assert_eq!(patch.cells.len(), 7, "base cube and its six facet neighbors");
        let expect = 2.0 * std::f64::consts::PI / 5.0;
        for cell in &patch.cells {
            let poly = Polytope {
                geometry: patch.geometry,
                form: patch.form,
                dim: patch.base_cell.dim,
                vertices: cell.vertices.clone(),
                faces: patch.base_cell.faces.clone(),
                edge_length: patch.base_cell.edge_length,
            };
            assert_eq!(poly.f_vector(), vec![8, 12, 6]);
            for angle in poly.dihedral_angles().unwrap() {
                assert!((angle - expect).abs() < 1e-9, "angle {angle} vs {expect}");
            }
        }
    }

    #[test]
    fn ideal_tetrahedron_cell() {
        let d = schlafli(&[3, 3, 6], &[1]);
        let cell = build(&d, DEFAULT_CAP).unwrap();
        assert_eq!(cell.f_vector(), vec![4, 6, 4]);
        assert!(cell.vertices.iter().all(|p| p.is_ideal()));
        assert_eq!(cell.edge_length, None);
    }

    #[test]
    fn group_orders() {
        let order = |marks: &[u32]| match group_order(&schlafli(marks, &[1])).unwrap() {
            GroupOrder::Finite(n) => n,
            GroupOrder::Infinite => panic!("expected finite order"),
        };
        assert_eq!(order(&[3, 3]), 24); // A3
        assert_eq!(order(&[4, 3]), 48); // B3
        assert_eq!(order(&[5, 3]), 120); // H3
        assert_eq!(order(&[5, 3, 3]), 14400); // H4
        assert_eq!(order(&[3, 4, 3]), 1152); // F4
        assert_eq!(group_order(&schlafli(&[4, 4], &[1])).unwrap(), GroupOrder::Infinite);
        assert_eq!(group_order(&schlafli(&[4, 3, 5], &[1])).unwrap(), GroupOrder::Infinite);
    }

    #[test]
    fn face_counts_match_orbit_stabilizer_predictions() {
        // Each face type contributes |G| / |stabilizer of the base face|
        // faces, the stabilizer being generated by the subdiagram nodes and
        // the unringed nodes orthogonal to it.
        let d = schlafli(&[3, 4, 3], &[1]);
        let p = build(&d, DEFAULT_CAP).unwrap();
        let g_order = match group_order(&d).unwrap() {
            GroupOrder::Finite(n) => n,
            _ => unreachable!(),
        };
        // Facets of the 24-cell: stabilizer of the base octahedron is the
        // B3 group of {1,2,3} extended by nothing else.
        let sub: BTreeSet<usize> = [1, 2, 3].into();
        let stab = match group_order(&d.induced(&sub)).unwrap() {
            GroupOrder::Finite(n) => n,
            _ => unreachable!(),
        };
        assert_eq!(p.facets().len() as u128, g_order / stab);
    }

    #[test]
    fn euler_characteristic_of_compact_builds() {
        for (marks, rings) in [
            (&[3, 3][..], &[1][..]),
            (&[4, 3], &[1]),
            (&[3, 4], &[2]),
            (&[5, 3], &[1, 2]),
            (&[3, 3, 3], &[2]),
            (&[4, 3, 3], &[1]),
            (&[3, 4, 3], &[1]),
        ] {
            let p = build(&schlafli(marks, rings), DEFAULT_CAP).unwrap();
            let expected = 1 - (-1i64).pow(p.dim as u32);
            assert_eq!(p.euler_boundary(), expected, "marks {marks:?} rings {rings:?}");
        }
    }

    #[test]
    fn symmetry_classes() {
        let cube = schlafli(&[4, 3], &[1]);
        let p = build(&cube, DEFAULT_CAP).unwrap();
        assert_eq!(symmetry_class(&p, &cube).unwrap(), SymmetryClass::Regular);

        let rect = schlafli(&[3, 3, 3], &[2]);
        let p = build(&rect, DEFAULT_CAP).unwrap();
        assert_eq!(symmetry_class(&p, &rect).unwrap(), SymmetryClass::Semiregular);

        let demi5 = demicube_diagram(5);
        let p = build(&demi5, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices.len(), 16);
        assert_eq!(symmetry_class(&p, &demi5).unwrap(), SymmetryClass::Semiregular);

        let demi6 = demicube_diagram(6);
        let p = build(&demi6, DEFAULT_CAP).unwrap();
        assert_eq!(p.vertices.len(), 32);
        assert_eq!(symmetry_class(&p, &demi6).unwrap(), SymmetryClass::Uniform);
    }

    #[test]
    fn five_demicube_facets() {
        let p = build(&demicube_diagram(5), DEFAULT_CAP).unwrap();
        let mut sizes: Vec<usize> = p.facets().iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        let simplexes = sizes.iter().filter(|&&s| s == 5).count();
        let crosses = sizes.iter().filter(|&&s| s == 8).count();
        assert_eq!((crosses, simplexes), (10, 16));
    }

    #[test]
    fn chain_counts() {
        assert_eq!(chain_count(&schlafli(&[4, 3], &[1])).unwrap(), 1);
        assert_eq!(chain_count(&schlafli(&[3, 3, 3], &[2])).unwrap(), 3);
    }
}




#[cfg(test)]
mod ideal_patches {
    use super::*;
    use crate::diagram::{from_schlafli, SchlafliEntry};

    #[test]
    fn ideal_tetrahedral_tessellation_patch() {
        let entries: Vec<SchlafliEntry> =
            [3u32, 3, 6].iter().map(|&m| SchlafliEntry::Finite(m)).collect();
        let d = from_schlafli(&entries, Some(&[1])).unwrap();
        let patch = tessellation_patch(&d, 1, DEFAULT_CAP).unwrap();
        // Base ideal tetrahedron plus one neighbor through each facet.
        assert_eq!(patch.cells.len(), 5);
        assert_eq!(patch.adjacency.len(), 4);
        for cell in &patch.cells {
            assert_eq!(cell.vertices.len(), 4);
            assert!(cell.vertices.iter().all(|p| p.is_ideal()));
        }
        // Neighbors share exactly three ideal vertices with the base cell.
        let base: Vec<_> = patch.cells[0].vertices.clone();
        for cell in &patch.cells[1..] {
            let shared = cell
                .vertices
                .iter()
                .filter(|v| base.iter().any(|b| (&b.coords - &v.coords).norm() < 1e-7))
                .count();
            assert_eq!(shared, 3);
        }
    }
}
