//! Numerical tolerances used across the crate.
//!
//! Gram entries are cosines of rational angles, so everything is O(1) and a
//! single pair of thresholds covers the whole crate: a tight one for algebraic
//! identities and a looser one for point deduplication.

/// Tolerance for algebraic identities (form values, eigenvalue thresholds).
/// Eigenvalue classifications scale this by the largest absolute eigenvalue.
pub const ALGEBRAIC: f64 = 1e-9;

/// Tolerance for deciding that two points coincide.
pub const DEDUP: f64 = 1e-7;

/// Cell size of the spatial hash used when deduplicating points.
pub const HASH_CELL: f64 = 1e-6;

/// Runtime-adjustable tolerance bundle. The defaults match the constants
/// above; the CLI can override them from its config file.
#[derive(Debug, Clone, Copy)]
pub struct Tol {
    pub algebraic: f64,
    pub dedup: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { algebraic: ALGEBRAIC, dedup: DEDUP }
    }
}
