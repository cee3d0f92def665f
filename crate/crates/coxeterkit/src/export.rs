//! Mesh and data exporters.
//!
//! OFF files carry the header line `OFF`, a counts line `V F E`, one vertex
//! per line (coordinates separated by single spaces, shortest round-trip
//! float formatting), and one facet per line as `k v_1 ... v_k` with
//! 0-based vertex indices. Three-dimensional facets are written as cycles;
//! higher-dimensional facets list their vertices in sorted order.
//! Hyperbolic vertices are written in Klein coordinates. OBJ export covers
//! dimension 3; SVG covers 2-dimensional patches, hyperbolic ones drawn in
//! the Klein disc.

use std::collections::BTreeSet;

use nalgebra::DVector;

use crate::error::{CoxError, Result};
use crate::forms::{klein_project, Geometry, Point};
use crate::wythoff::{Polytope, SymmetryClass, TessellationPatch};

fn written_coords(geometry: Geometry, form: &crate::forms::BilinearForm, p: &Point) -> Result<DVector<f64>> {
    match geometry {
        Geometry::Hyperbolic => klein_project(form, p),
        _ => Ok(p.coords.clone()),
    }
}

/// Order the vertices of a planar polygon (embedded in any ambient
/// dimension) into a cycle, using the two principal directions of the
/// point cloud.
fn polygon_cycle(points: &[DVector<f64>], indices: &[usize]) -> Vec<usize> {
    let a = points[0].len();
    let mut mean = DVector::zeros(a);
    for p in points {
        mean += p;
    }
    mean /= points.len() as f64;
    let rows: Vec<_> = points.iter().map(|p| (p - &mean).transpose()).collect();
    let m = nalgebra::DMatrix::from_rows(&rows);
    let cov = m.transpose() * &m;
    let eig = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..a).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let u = eig.eigenvectors.column(order[0]).into_owned();
    let v = eig.eigenvectors.column(order[1]).into_owned();
    let mut keyed: Vec<(f64, usize)> = points
        .iter()
        .zip(indices)
        .map(|(p, &idx)| {
            let d = p - &mean;
            (d.dot(&v).atan2(d.dot(&u)), idx)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.total_cmp(&y.0));
    keyed.into_iter().map(|(_, idx)| idx).collect()
}

/// Facets of a 3-polytope as vertex cycles.
pub fn face_cycles_3d(p: &Polytope) -> Result<Vec<Vec<usize>>> {
    if p.dim != 3 {
        return Err(CoxError::Export(format!(
            "face cycles need a 3-polytope, got dimension {}",
            p.dim
        )));
    }
    let coords: Vec<DVector<f64>> = p.vertices.iter().map(|v| v.coords.clone()).collect();
    Ok(p.facets()
        .iter()
        .map(|facet| {
            let pts: Vec<DVector<f64>> = facet.iter().map(|&v| coords[v].clone()).collect();
            polygon_cycle(&pts, facet)
        })
        .collect())
}

fn fmt_coords(v: &DVector<f64>) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" ")
}

/// OFF export of a polytope.
pub fn off(p: &Polytope) -> Result<String> {
    let verts: Vec<DVector<f64>> = p
        .vertices
        .iter()
        .map(|v| written_coords(p.geometry, &p.form, v))
        .collect::<Result<_>>()?;
    let facets: Vec<Vec<usize>> = if p.dim == 3 {
        face_cycles_3d(p)?
    } else {
        p.facets().to_vec()
    };
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} {}\n", p.vertices.len(), facets.len(), p.edges().len()));
    for v in &verts {
        out.push_str(&fmt_coords(v));
        out.push('\n');
    }
    for f in &facets {
        let ids: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", f.len(), ids.join(" ")));
    }
    Ok(out)
}

/// OBJ export of a 3-polytope.
pub fn obj(p: &Polytope) -> Result<String> {
    if p.dim != 3 {
        return Err(CoxError::Export(format!("OBJ export needs dimension 3, got {}", p.dim)));
    }
    let verts: Vec<DVector<f64>> = p
        .vertices
        .iter()
        .map(|v| written_coords(p.geometry, &p.form, v))
        .collect::<Result<_>>()?;
    let mut out = String::new();
    for v in &verts {
        out.push_str(&format!("v {}\n", fmt_coords(v)));
    }
    for f in face_cycles_3d(p)? {
        let ids: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("f {}\n", ids.join(" ")));
    }
    Ok(out)
}

/// Per-cell OFF export of a patch: one OFF block per cell, separated by
/// blank lines.
pub fn patch_off(patch: &TessellationPatch) -> Result<String> {
    let mut blocks = Vec::new();
    for cell in &patch.cells {
        let verts: Vec<DVector<f64>> = cell
            .vertices
            .iter()
            .map(|v| written_coords(patch.geometry, &patch.form, v))
            .collect::<Result<_>>()?;
        let facets: Vec<Vec<usize>> = if patch.dim == 3 {
            cell.facets
                .iter()
                .map(|facet| {
                    let pts: Vec<DVector<f64>> =
                        facet.iter().map(|&v| verts[v].clone()).collect();
                    polygon_cycle(&pts, facet)
                })
                .collect()
        } else {
            cell.facets.clone()
        };
        let edge_count = if patch.dim == 3 { cell_edge_count(&facets) } else { 0 };
        let mut block = String::from("OFF\n");
        block.push_str(&format!("{} {} {}\n", verts.len(), facets.len(), edge_count));
        for v in &verts {
            block.push_str(&fmt_coords(v));
            block.push('\n');
        }
        for f in &facets {
            let ids: Vec<String> = f.iter().map(|i| i.to_string()).collect();
            block.push_str(&format!("{} {}\n", f.len(), ids.join(" ")));
        }
        blocks.push(block);
    }
    Ok(blocks.join("\n"))
}

fn cell_edge_count(facet_cycles: &[Vec<usize>]) -> usize {
    let mut edges = BTreeSet::new();
    for cycle in facet_cycles {
        for w in 0..cycle.len() {
            let a = cycle[w];
            let b = cycle[(w + 1) % cycle.len()];
            edges.insert((a.min(b), a.max(b)));
        }
    }
    edges.len()
}

/// SVG export of a 2-dimensional patch. Hyperbolic patches are drawn in the
/// Klein disc with the unit circle outlined; Euclidean patches use their own
/// coordinates.
pub fn svg(patch: &TessellationPatch) -> Result<String> {
    if patch.dim != 2 {
        return Err(CoxError::Export(format!(
            "SVG export needs a 2-dimensional patch, got {}",
            patch.dim
        )));
    }
    let mut polygons = Vec::new();
    let mut bound = 1.0f64;
    for cell in &patch.cells {
        let verts: Vec<DVector<f64>> = cell
            .vertices
            .iter()
            .map(|v| written_coords(patch.geometry, &patch.form, v))
            .collect::<Result<_>>()?;
        for v in &verts {
            bound = bound.max(v[0].abs()).max(v[1].abs());
        }
        let indices: Vec<usize> = (0..verts.len()).collect();
        let cycle = polygon_cycle(&verts, &indices);
        let pts: Vec<String> =
            cycle.iter().map(|&i| format!("{:.6},{:.6}", verts[i][0], -verts[i][1])).collect();
        polygons.push(format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>",
            pts.join(" ")
        ));
    }
    let r = bound * 1.05;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\">\n",
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    if patch.geometry == Geometry::Hyperbolic {
        out.push_str(
            "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.004\"/>\n",
        );
    }
    for p in polygons {
        out.push_str(&p);
        out.push('\n');
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// JSON summary of a polytope: f-vector, geometry, edge length, symmetry.
pub fn polytope_json(p: &Polytope, symmetry: Option<SymmetryClass>) -> String {
    #[derive(serde::Serialize)]
    struct Out {
        geometry: String,
        dimension: usize,
        f_vector: Vec<usize>,
        edge_length: Option<f64>,
        ideal_vertices: usize,
        symmetry: Option<String>,
    }
    let out = Out {
        geometry: p.geometry.to_string(),
        dimension: p.dim,
        f_vector: p.f_vector(),
        edge_length: p.edge_length,
        ideal_vertices: p.vertices.iter().filter(|v| v.is_ideal()).count(),
        symmetry: symmetry.map(|s| s.to_string()),
    };
    serde_json::to_string_pretty(&out).expect("summary serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_schlafli, SchlafliEntry};
    use crate::wythoff::{build, tessellation_patch, DEFAULT_CAP};

    fn schlafli(marks: &[u32], rings: &[usize]) -> crate::diagram::CoxeterDiagram {
        let entries: Vec<SchlafliEntry> = marks.iter().map(|&m| SchlafliEntry::Finite(m)).collect();
        from_schlafli(&entries, Some(rings)).unwrap()
    }

    #[test]
    fn octahedron_off_counts() {
        let p = build(&schlafli(&[3, 4], &[1]), DEFAULT_CAP).unwrap();
        let text = off(&p).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("OFF"));
        assert_eq!(lines.next(), Some("6 8 12"));
        // 6 vertex lines then 8 triangle lines.
        let rest: Vec<&str> = lines.collect();
        assert_eq!(rest.len(), 14);
        assert!(rest[6..].iter().all(|l| l.starts_with("3 ")));
    }

    #[test]
    fn obj_has_faces_and_vertices() {
        let p = build(&schlafli(&[4, 3], &[1]), DEFAULT_CAP).unwrap();
        let text = obj(&p).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 8);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 6);

        let four_dim = build(&schlafli(&[3, 4, 3], &[1]), DEFAULT_CAP).unwrap();
        assert!(obj(&four_dim).is_err());
    }

    #[test]
    fn heptagonal_tiling_svg_stays_in_the_disc() {
        let patch = tessellation_patch(&schlafli(&[7, 3], &[1]), 2, DEFAULT_CAP).unwrap();
        for cell in &patch.cells {
            for v in &cell.vertices {
                let k = klein_project(&patch.form, v).unwrap();
                assert!(k.norm() < 1.0, "Klein image outside the disc");
            }
        }
        let text = svg(&patch).unwrap();
        assert!(text.contains("<circle"));
        assert!(text.matches("<polygon").count() >= patch.cells.len());
    }

    #[test]
    fn json_reports_the_symmetry_class() {
        let d = schlafli(&[3, 3, 3], &[2]);
        let p = build(&d, DEFAULT_CAP).unwrap();
        let class = crate::wythoff::symmetry_class(&p, &d).unwrap();
        let text = polytope_json(&p, Some(class));
        assert!(text.contains("\"semiregular\""));
        assert!(text.contains("\"f_vector\""));
    }
}
