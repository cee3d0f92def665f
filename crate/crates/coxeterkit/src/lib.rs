//! Coxeter diagrams, Gram matrices, and the Wythoff construction in
//! spherical, Euclidean, and hyperbolic geometry.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! diagram text --parse--> CoxeterDiagram --gram--> GramMatrix
//!     --recover_normals--> MirrorSystem --wythoff--> Polytope / TessellationPatch
//! ```
//!
//! with side roads for face enumeration from Gram data ([`faces`]), polar
//! duals and their hyperbolic realizations ([`dual`]), closed-form existence
//! criteria in dimensions 2 and 3 ([`lowdim`]), and the E8 / quaternion
//! constructions ([`zoo`]).

pub mod catalog;
pub mod diagram;
pub mod dual;
pub mod error;
pub mod export;
pub mod faces;
pub mod forms;
pub mod gram;
pub mod lowdim;
pub mod tol;
pub mod verify;
pub mod wythoff;
pub mod zoo;

pub use error::{CoxError, Result};
pub use forms::{BilinearForm, Geometry, Isometry, Point, PointKind};
