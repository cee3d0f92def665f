//! Metric kernel for the three geometries.
//!
//! A [`BilinearForm`] is the ambient product: the standard scalar product for
//! Euclidean and spherical space, and the Lorentzian product
//! `<x,y> = -x_1 y_1 + x_2 y_2 + ... + x_{n+1} y_{n+1}` for the hyperboloid
//! model of hyperbolic space. Points of the model, reflections, and the Klein
//! projection all live here.

use nalgebra::{DMatrix, DVector};

use crate::error::{CoxError, Result};
use crate::tol;

/// The three ambient geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Geometry::Euclidean => write!(f, "euclidean"),
            Geometry::Spherical => write!(f, "spherical"),
            Geometry::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

/// Ambient bilinear form for a space of dimension `dim`.
///
/// The matrix is diagonal: all `+1` in the Euclidean and spherical cases,
/// and `(-1, +1, ..., +1)` in the Lorentzian case, with the `-1` fixed in
/// coordinate 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BilinearForm {
    pub geometry: Geometry,
    /// Dimension of the model space (the sphere S^n or hyperbolic space H^n
    /// itself, not its ambient vector space).
    pub dim: usize,
}

impl BilinearForm {
    pub fn euclidean(dim: usize) -> Self {
        BilinearForm { geometry: Geometry::Euclidean, dim }
    }

    pub fn spherical(dim: usize) -> Self {
        BilinearForm { geometry: Geometry::Spherical, dim }
    }

    pub fn lorentzian(dim: usize) -> Self {
        BilinearForm { geometry: Geometry::Hyperbolic, dim }
    }

    /// Dimension of the ambient vector space the form acts on.
    pub fn ambient_dim(&self) -> usize {
        match self.geometry {
            Geometry::Euclidean => self.dim,
            Geometry::Spherical | Geometry::Hyperbolic => self.dim + 1,
        }
    }

    /// The diagonal form matrix J.
    pub fn matrix(&self) -> DMatrix<f64> {
        let a = self.ambient_dim();
        let mut m = DMatrix::identity(a, a);
        if self.geometry == Geometry::Hyperbolic {
            m[(0, 0)] = -1.0;
        }
        m
    }

    /// The product `<x,y>`.
    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        let a = self.ambient_dim();
        if x.len() != a {
            return Err(CoxError::DimensionMismatch { expected: a, got: x.len() });
        }
        if y.len() != a {
            return Err(CoxError::DimensionMismatch { expected: a, got: y.len() });
        }
        let mut s = x.dot(y);
        if self.geometry == Geometry::Hyperbolic {
            s -= 2.0 * x[0] * y[0];
        }
        Ok(s)
    }
}

/// A point of the model: on the sphere, on the hyperboloid sheet `x_1 > 0`,
/// on the light cone at canonical scale `x_1 = 1` (ideal), or a plain
/// Euclidean point.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: DVector<f64>,
    pub kind: PointKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PointKind {
    Interior,
    Ideal,
}

impl Point {
    pub fn interior(coords: DVector<f64>) -> Self {
        Point { coords, kind: PointKind::Interior }
    }

    pub fn is_ideal(&self) -> bool {
        self.kind == PointKind::Ideal
    }
}

/// An isometry of the ambient space, stored in affine form. The translation
/// part is zero except for Euclidean mirrors that miss the origin.
///
/// Invariant: `M^T J M = J` for the linear part.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    pub linear: DMatrix<f64>,
    pub translation: DVector<f64>,
}

impl Isometry {
    pub fn identity(ambient: usize) -> Self {
        Isometry {
            linear: DMatrix::identity(ambient, ambient),
            translation: DVector::zeros(ambient),
        }
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.linear * x + &self.translation
    }

    /// `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    /// Max-norm of `M^T J M - J`; zero for an exact isometry.
    pub fn form_defect(&self, form: &BilinearForm) -> f64 {
        let j = form.matrix();
        let d = self.linear.transpose() * &j * &self.linear - j;
        d.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Reflection along the mirror hyperplane with unit normal `v` (through the
/// origin): `x -> x - 2 <x,v> v`.
pub fn reflection(form: &BilinearForm, v: &DVector<f64>) -> Result<Isometry> {
    let a = form.ambient_dim();
    if v.len() != a {
        return Err(CoxError::DimensionMismatch { expected: a, got: v.len() });
    }
    let vv = form.inner(v, v)?;
    if (vv - 1.0).abs() > 1e-6 {
        return Err(CoxError::NonUnitNormal { value: vv });
    }
    let jv = form.matrix() * v;
    let linear = DMatrix::identity(a, a) - 2.0 * v * jv.transpose();
    Ok(Isometry { linear, translation: DVector::zeros(a) })
}

/// Reflection along the affine Euclidean mirror `{ <x,v> = offset }`.
pub fn affine_reflection(form: &BilinearForm, v: &DVector<f64>, offset: f64) -> Result<Isometry> {
    let mut r = reflection(form, v)?;
    r.translation = 2.0 * offset * v;
    Ok(r)
}

/// Rescale a raw vector onto the model surface.
///
/// Lorentzian: timelike vectors land on the hyperboloid sheet `x_1 > 0`,
/// lightlike vectors become ideal points at canonical scale `x_1 = 1`,
/// spacelike vectors are rejected. Spherical: unit normalization.
/// Euclidean: pass through.
pub fn normalize_point(form: &BilinearForm, x: &DVector<f64>) -> Result<Point> {
    let a = form.ambient_dim();
    if x.len() != a {
        return Err(CoxError::DimensionMismatch { expected: a, got: x.len() });
    }
    match form.geometry {
        Geometry::Euclidean => Ok(Point::interior(x.clone())),
        Geometry::Spherical => {
            let n = x.norm();
            if n < tol::ALGEBRAIC {
                return Err(CoxError::Numerical("cannot normalize the zero vector".into()));
            }
            Ok(Point::interior(x / n))
        }
        Geometry::Hyperbolic => {
            let q = form.inner(x, x)?;
            if q < -tol::DEDUP {
                let mut y = x / (-q).sqrt();
                if y[0] < 0.0 {
                    y = -y;
                }
                Ok(Point { coords: y, kind: PointKind::Interior })
            } else if q <= tol::DEDUP {
                if x[0].abs() < tol::ALGEBRAIC {
                    return Err(CoxError::Numerical("degenerate lightlike vector".into()));
                }
                let y = x / x[0];
                Ok(Point { coords: y, kind: PointKind::Ideal })
            } else {
                Err(CoxError::SpacelikePoint { value: q })
            }
        }
    }
}

/// Klein projection of a Lorentzian point: `(x_2/x_1, ..., x_{n+1}/x_1)`.
/// Interior points land strictly inside the unit ball, ideal points on the
/// unit sphere.
pub fn klein_project(form: &BilinearForm, p: &Point) -> Result<DVector<f64>> {
    if form.geometry != Geometry::Hyperbolic {
        return Err(CoxError::NotLorentzian);
    }
    let x = &p.coords;
    Ok(DVector::from_fn(x.len() - 1, |i, _| x[i + 1] / x[0]))
}
