//! Orbit closure of points under isometries, with tolerance-aware
//! deduplication through a spatial hash.

use std::collections::HashMap;

use nalgebra::DVector;

use crate::error::{CoxError, Result};
use crate::forms::{normalize_point, BilinearForm, Geometry, Isometry, Point};
use crate::tol;

/// A set of points with approximate-equality lookup: coordinates are hashed
/// into cells of size [`tol::HASH_CELL`], and lookups probe the neighboring
/// cells a query point straddles before confirming by exact distance.
pub struct PointSet {
    pub points: Vec<Point>,
    cells: HashMap<Vec<i64>, Vec<usize>>,
    tol: f64,
}

impl PointSet {
    pub fn new(tol: f64) -> Self {
        PointSet { points: Vec::new(), cells: HashMap::new(), tol }
    }

    fn key(coords: &DVector<f64>) -> Vec<i64> {
        coords.iter().map(|&x| (x / tol::HASH_CELL).floor() as i64).collect()
    }

    pub fn find(&self, coords: &DVector<f64>) -> Option<usize> {
        let lo: Vec<i64> =
            coords.iter().map(|&x| ((x - self.tol) / tol::HASH_CELL).floor() as i64).collect();
        let hi: Vec<i64> =
            coords.iter().map(|&x| ((x + self.tol) / tol::HASH_CELL).floor() as i64).collect();
        let mut probe = lo.clone();
        loop {
            if let Some(bucket) = self.cells.get(&probe) {
                for &idx in bucket {
                    if (&self.points[idx].coords - coords).norm() <= self.tol {
                        return Some(idx);
                    }
                }
            }
            // Advance the mixed-radix counter over {lo, hi} per coordinate.
            let mut carry = true;
            for d in 0..probe.len() {
                if !carry {
                    break;
                }
                if probe[d] == lo[d] && hi[d] != lo[d] {
                    probe[d] = hi[d];
                    carry = false;
                } else {
                    probe[d] = lo[d];
                }
            }
            if carry {
                return None;
            }
        }
    }

    /// Index of the point, inserting it when new.
    pub fn insert(&mut self, p: Point) -> (usize, bool) {
        if let Some(idx) = self.find(&p.coords) {
            return (idx, false);
        }
        let idx = self.points.len();
        self.cells.entry(Self::key(&p.coords)).or_default().push(idx);
        self.points.push(p);
        (idx, true)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Canonicalize a mapped point back onto the model surface so orbits of
/// ideal points stay at scale x_1 = 1 and rounding does not accumulate.
pub fn canonical_image(form: &BilinearForm, iso: &Isometry, p: &Point) -> Result<Point> {
    let raw = iso.apply(&p.coords);
    match form.geometry {
        Geometry::Euclidean => Ok(Point::interior(raw)),
        _ => normalize_point(form, &raw),
    }
}

/// Breadth-first closure of `points` under `gens`, deduplicated at the
/// dedup tolerance and returned sorted by coordinates. Exceeding `cap`
/// aborts with the partial count; that is the symptom of applying the
/// closure to an infinite (Euclidean or hyperbolic) group orbit.
pub fn orbit_closure(
    form: &BilinearForm,
    points: &[Point],
    gens: &[Isometry],
    cap: usize,
) -> Result<Vec<Point>> {
    let mut set = PointSet::new(tol::DEDUP);
    let mut frontier: Vec<usize> = Vec::new();
    for p in points {
        let (idx, new) = set.insert(p.clone());
        if new {
            frontier.push(idx);
        }
    }
    while let Some(idx) = frontier.pop() {
        for g in gens {
            let image = canonical_image(form, g, &set.points[idx])?;
            let (j, new) = set.insert(image);
            if new {
                if set.len() > cap {
                    return Err(CoxError::OrbitCapExceeded { cap, partial: set.len() });
                }
                frontier.push(j);
            }
        }
    }
    let mut out = set.points;
    out.sort_by(|a, b| {
        a.coords.iter().zip(b.coords.iter()).fold(std::cmp::Ordering::Equal, |ord, (x, y)| {
            ord.then(x.total_cmp(y))
        })
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::reflection;
    use nalgebra::dvector;

    #[test]
    fn closure_of_coordinate_reflections() {
        let form = BilinearForm::spherical(1);
        let gens = vec![
            reflection(&form, &dvector![1.0, 0.0]).unwrap(),
            reflection(&form, &dvector![0.0, 1.0]).unwrap(),
        ];
        let seed = Point::interior(dvector![0.6, 0.8]);
        let orbit = orbit_closure(&form, &[seed], &gens, 100).unwrap();
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn cap_detects_infinite_orbits() {
        let form = BilinearForm::euclidean(1);
        // Two parallel mirrors generate an infinite dihedral group.
        let a = crate::forms::affine_reflection(&form, &dvector![1.0], 0.0).unwrap();
        let b = crate::forms::affine_reflection(&form, &dvector![1.0], 1.0).unwrap();
        let seed = Point::interior(dvector![0.25]);
        match orbit_closure(&form, &[seed], &[a, b], 50) {
            Err(CoxError::OrbitCapExceeded { cap: 50, .. }) => {}
            r => panic!("expected cap error, got {r:?}"),
        }
    }

    #[test]
    fn duplicate_points_collapse() {
        let mut set = PointSet::new(1e-7);
        let (i, new) = set.insert(Point::interior(dvector![1.0, 2.0]));
        assert!(new);
        let (j, new) = set.insert(Point::interior(dvector![1.0 + 3e-8, 2.0 - 3e-8]));
        assert!(!new);
        assert_eq!(i, j);
        let (_, new) = set.insert(Point::interior(dvector![1.0 + 3e-6, 2.0]));
        assert!(new);
    }
}
