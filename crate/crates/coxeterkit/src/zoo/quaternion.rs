//! The binary tetrahedral and binary icosahedral groups as exact unit
//! quaternions over the golden ring.
//!
//! Every coordinate is `(a + b phi) / 2` with integer a, b and
//! `phi^2 = phi + 1`. The 24 Hurwitz units generate T*24; adjoining one
//! icosian generates I*120, and the group axioms are checked exactly.

use nalgebra::DVector;

use crate::error::{CoxError, Result};

/// `(a + b phi) / 2` with phi the golden ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldenHalf {
    pub a: i64,
    pub b: i64,
}

impl GoldenHalf {
    pub const ZERO: GoldenHalf = GoldenHalf { a: 0, b: 0 };

    pub fn int(n: i64) -> Self {
        GoldenHalf { a: 2 * n, b: 0 }
    }

    pub fn half(n: i64) -> Self {
        GoldenHalf { a: n, b: 0 }
    }

    fn neg(self) -> GoldenHalf {
        GoldenHalf { a: -self.a, b: -self.b }
    }

    /// Product at quarter scale: exact, possibly outside the half-ring.
    /// Quaternion coordinates sum four of these and land back inside.
    fn mul4(self, o: GoldenHalf) -> Quarter {
        Quarter {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }

    pub fn to_f64(self) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        (self.a as f64 + self.b as f64 * phi) / 2.0
    }
}

/// `(a + b phi) / 4`: intermediate scale for quaternion products.
#[derive(Debug, Clone, Copy)]
struct Quarter {
    a: i64,
    b: i64,
}

impl Quarter {
    fn add(self, o: Quarter) -> Quarter {
        Quarter { a: self.a + o.a, b: self.b + o.b }
    }

    fn sub(self, o: Quarter) -> Quarter {
        Quarter { a: self.a - o.a, b: self.b - o.b }
    }

    fn half(self) -> GoldenHalf {
        assert!(self.a % 2 == 0 && self.b % 2 == 0, "product left the half-ring");
        GoldenHalf { a: self.a / 2, b: self.b / 2 }
    }
}

/// A quaternion with golden-ring coordinates (w, x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion(pub [GoldenHalf; 4]);

impl Quaternion {
    pub const ONE: Quaternion = Quaternion([
        GoldenHalf { a: 2, b: 0 },
        GoldenHalf::ZERO,
        GoldenHalf::ZERO,
        GoldenHalf::ZERO,
    ]);

    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quaternion([
            a1.mul4(a2).sub(b1.mul4(b2)).sub(c1.mul4(c2)).sub(d1.mul4(d2)).half(),
            a1.mul4(b2).add(b1.mul4(a2)).add(c1.mul4(d2)).sub(d1.mul4(c2)).half(),
            a1.mul4(c2).sub(b1.mul4(d2)).add(c1.mul4(a2)).add(d1.mul4(b2)).half(),
            a1.mul4(d2).add(b1.mul4(c2)).sub(c1.mul4(b2)).add(d1.mul4(a2)).half(),
        ])
    }

    pub fn conjugate(&self) -> Quaternion {
        let [a, b, c, d] = self.0;
        Quaternion([a, b.neg(), c.neg(), d.neg()])
    }

    /// Exact unit-norm check: |q|^2 = 1 in the golden ring.
    pub fn is_unit(&self) -> bool {
        // Sum of (a_i + b_i phi)^2 / 4 = 1 in Z[phi]: rational part
        // sum(a^2 + b^2) = 4 and phi part sum(2ab + b^2) = 0.
        let rat: i64 = self.0.iter().map(|g| g.a * g.a + g.b * g.b).sum();
        let gold: i64 = self.0.iter().map(|g| 2 * g.a * g.b + g.b * g.b).sum();
        rat == 4 && gold == 0
    }

    pub fn to_f64(&self) -> DVector<f64> {
        DVector::from_fn(4, |i, _| self.0[i].to_f64())
    }
}

/// The 24 Hurwitz units: (+-1, 0, 0, 0) in all positions and
/// (+-1/2, +-1/2, +-1/2, +-1/2).
pub fn binary_tetrahedral() -> Vec<Quaternion> {
    let mut out = Vec::with_capacity(24);
    for pos in 0..4 {
        for sign in [1i64, -1] {
            let mut q = [GoldenHalf::ZERO; 4];
            q[pos] = GoldenHalf::int(sign);
            out.push(Quaternion(q));
        }
    }
    for mask in 0u32..16 {
        let q: [GoldenHalf; 4] =
            std::array::from_fn(|i| GoldenHalf::half(if mask & (1 << i) != 0 { -1 } else { 1 }));
        out.push(Quaternion(q));
    }
    out.sort();
    out
}

/// Closure of a generating set under quaternion multiplication.
fn closure(generators: &[Quaternion], cap: usize) -> Result<Vec<Quaternion>> {
    let mut seen: std::collections::BTreeSet<Quaternion> = generators.iter().copied().collect();
    let mut frontier: Vec<Quaternion> = generators.to_vec();
    while let Some(q) = frontier.pop() {
        for g in generators {
            for r in [q.mul(g), g.mul(&q)] {
                if seen.insert(r) {
                    if seen.len() > cap {
                        return Err(CoxError::Numerical(format!(
                            "group closure exceeded {cap} elements"
                        )));
                    }
                    frontier.push(r);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The 120 unit icosians: the closure of the Hurwitz units and one icosian,
/// validated to have order 120 and contain the binary tetrahedral group.
pub fn binary_icosahedral() -> Result<Vec<Quaternion>> {
    let mut generators = binary_tetrahedral();
    // (0, 1, 1/phi, phi) / 2 with 1/phi = phi - 1: the coordinates are
    // 0, 1/2, (phi - 1)/2, phi/2.
    let icosian = Quaternion([
        GoldenHalf::ZERO,
        GoldenHalf { a: 1, b: 0 },
        GoldenHalf { a: -1, b: 1 },
        GoldenHalf { a: 0, b: 1 },
    ]);
    assert!(icosian.is_unit());
    generators.push(icosian);
    let group = closure(&generators, 200)?;
    if group.len() != 120 {
        return Err(CoxError::Numerical(format!(
            "binary icosahedral closure has {} elements, expected 120",
            group.len()
        )));
    }
    for t in binary_tetrahedral() {
        if group.binary_search(&t).is_err() {
            return Err(CoxError::Numerical(
                "binary tetrahedral group is not contained in the closure".into(),
            ));
        }
    }
    Ok(group)
}

/// Vertex sets of the quaternionic polytopes: the 24-cell on T*24, the
/// 600-cell on I*120, and the snub 24-cell on the 96-point difference.
pub struct QuaternionPolytopes {
    pub cell24: Vec<DVector<f64>>,
    pub cell600: Vec<DVector<f64>>,
    pub snub24: Vec<DVector<f64>>,
}

pub fn quaternion_polytopes() -> Result<QuaternionPolytopes> {
    let t24 = binary_tetrahedral();
    let i120 = binary_icosahedral()?;
    let snub: Vec<Quaternion> =
        i120.iter().filter(|q| t24.binary_search(q).is_err()).copied().collect();
    Ok(QuaternionPolytopes {
        cell24: t24.iter().map(|q| q.to_f64()).collect(),
        cell600: i120.iter().map(|q| q.to_f64()).collect(),
        snub24: snub.iter().map(|q| q.to_f64()).collect(),
    })
}
