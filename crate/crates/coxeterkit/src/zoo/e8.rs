//! The E8 lattice in exact half-integer arithmetic.
//!
//! Lattice vectors live in Z^8 or (Z + 1/2)^8 with even coordinate sum, so
//! doubling every coordinate makes them integer vectors: all-even or all-odd,
//! with the doubled sum divisible by 4. Membership, norms, and reflections
//! are exact in this representation.

use nalgebra::DVector;

use crate::error::{CoxError, Result};

/// A lattice vector with doubled integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec(pub [i64; 8]);

impl LatticeVec {
    /// From ordinary integer coordinates.
    pub fn from_ints(v: [i64; 8]) -> Self {
        LatticeVec(v.map(|x| 2 * x))
    }

    /// Is this doubled vector in the lattice?
    pub fn is_lattice(&self) -> bool {
        let all_even = self.0.iter().all(|x| x % 2 == 0);
        let all_odd = self.0.iter().all(|x| x % 2 != 0);
        let sum: i64 = self.0.iter().sum();
        (all_even || all_odd) && sum.rem_euclid(4) == 0
    }

    /// Exact scalar product (the doubled product is divisible by 4 for
    /// lattice vectors).
    pub fn dot(&self, other: &LatticeVec) -> i64 {
        let d: i64 = self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum();
        debug_assert_eq!(d % 4, 0, "non-integral product of lattice vectors");
        d / 4
    }

    /// Exact squared norm.
    pub fn norm2(&self) -> i64 {
        self.dot(self)
    }

    /// Reflection along a root r (norm 2): `x - <x,r> r`.
    pub fn reflect(&self, root: &LatticeVec) -> LatticeVec {
        let c = self.dot(root);
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(&root.0) {
            *o -= c * r;
        }
        LatticeVec(out)
    }

    pub fn to_f64(&self) -> DVector<f64> {
        DVector::from_fn(8, |i, _| self.0[i] as f64 / 2.0)
    }
}

/// The printed basis: e1-e2, ..., e5-e6, e6+e7, -(e1+...+e8)/2, e6-e7.
pub fn e8_basis() -> [LatticeVec; 8] {
    [
        LatticeVec::from_ints([1, -1, 0, 0, 0, 0, 0, 0]),
        LatticeVec::from_ints([0, 1, -1, 0, 0, 0, 0, 0]),
        LatticeVec::from_ints([0, 0, 1, -1, 0, 0, 0, 0]),
        LatticeVec::from_ints([0, 0, 0, 1, -1, 0, 0, 0]),
        LatticeVec::from_ints([0, 0, 0, 0, 1, -1, 0, 0]),
        LatticeVec::from_ints([0, 0, 0, 0, 0, 1, 1, 0]),
        LatticeVec([-1, -1, -1, -1, -1, -1, -1, -1]),
        LatticeVec::from_ints([0, 0, 0, 0, 0, 1, -1, 0]),
    ]
}

/// The even unimodular Gram matrix of the basis, as printed.
pub const E8_GRAM: [[i64; 8]; 8] = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
];

/// The 240 minimal vectors: all (+-1, +-1, 0^6) patterns and (+-1/2)^8 with
/// an even number of minus signs, each of norm sqrt 2.
pub fn e8_roots() -> Vec<LatticeVec> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in (i + 1)..8 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = [0i64; 8];
                v[i] = si;
                v[j] = sj;
                roots.push(LatticeVec::from_ints(v));
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let v: [i64; 8] = std::array::from_fn(|i| if mask & (1 << i) != 0 { -1 } else { 1 });
            roots.push(LatticeVec(v));
        }
    }
    roots.sort();
    roots
}

/// Orbit of the seed root e8 - e1 under the basis reflections, verified to
/// be exactly the 240 minimal vectors.
pub fn seed_orbit_is_the_root_system() -> Result<Vec<LatticeVec>> {
    let basis = e8_basis();
    let seed = LatticeVec::from_ints([-1, 0, 0, 0, 0, 0, 0, 1]);
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![seed];
    seen.insert(seed);
    while let Some(x) = frontier.pop() {
        for b in &basis {
            let y = x.reflect(b);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let orbit: Vec<LatticeVec> = seen.into_iter().collect();
    if orbit != e8_roots() {
        return Err(CoxError::Numerical(
            "reflection orbit of e8 - e1 is not the set of 240 roots".into(),
        ));
    }
    Ok(orbit)
}

/// A rational point of R^8: `num / den` componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalPoint {
    pub num: [i64; 8],
    pub den: i64,
}

impl RationalPoint {
    pub fn integer(v: [i64; 8]) -> Self {
        RationalPoint { num: v, den: 1 }
    }

    pub fn to_f64(&self) -> DVector<f64> {
        DVector::from_fn(8, |i, _| self.num[i] as f64 / self.den as f64)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nearest lattice vectors to a hole candidate: their count and common
/// distance, computed exactly at the common denominator. The search box
/// extends `radius` in every coordinate; the default covers the deep and
/// shallow holes, and a widening recheck guards the bound.
pub fn hole_neighbors(h: &RationalPoint) -> Result<(usize, f64)> {
    let (count, d2_num, d2_den) = nearest_in_box(h, 2)?;
    // Widening recheck: a larger box must agree.
    let again = nearest_in_box(h, 4)?;
    if again.0 != count || again.1 * d2_den != d2_num * again.2 {
        return Err(CoxError::Numerical("hole search box too small".into()));
    }
    Ok((count, (d2_num as f64 / d2_den as f64).sqrt()))
}

/// Scan lattice points whose coordinates differ from the hole by at most
/// `radius`, returning the count of nearest points and the exact squared
/// distance as a fraction.
fn nearest_in_box(h: &RationalPoint, radius: i64) -> Result<(usize, i64, i64)> {
    if h.den <= 0 {
        return Err(CoxError::Precondition("denominator must be positive".into()));
    }
    // Common scale: lattice coordinates are halves, the hole has its own
    // denominator.
    let scale = 2 * h.den / gcd(2, h.den);
    let hs: [i64; 8] = std::array::from_fn(|i| h.num[i] * (scale / h.den));
    let step = scale / 2; // lattice doubled coordinate 1 at this scale

    // Candidate doubled-coordinate ranges per coordinate.
    let mut best: Option<(i64, usize)> = None; // (dist2 * scale^2, count)
    let mut coords = [0i64; 8];
    // Enumerate both parity classes: all-even and all-odd doubled coords.
    for parity in [0i64, 1] {
        scan(&mut coords, 0, parity, step, radius * scale, &hs, &mut best);
    }
    let (d2, count) =
        best.ok_or_else(|| CoxError::Numerical("empty search box".into()))?;
    Ok((count, d2, scale * scale))
}

fn scan(
    coords: &mut [i64; 8],
    idx: usize,
    parity: i64,
    step: i64,
    radius_scaled: i64,
    hs: &[i64; 8],
    best: &mut Option<(i64, usize)>,
) {
    if idx == 8 {
        let sum: i64 = coords.iter().sum();
        // Doubled-coordinate sum divisible by 4 means even coordinate sum.
        if (sum / step).rem_euclid(4) != 0 {
            return;
        }
        let d2: i64 = coords.iter().zip(hs).map(|(&c, &h)| (c - h) * (c - h)).sum();
        // d2 is measured at doubled scale; normalize to scale^2 = (2*step)^2 / 4.
        match best {
            Some((bd, count)) => {
                if d2 < *bd {
                    *best = Some((d2, 1));
                } else if d2 == *bd {
                    *count += 1;
                }
            }
            None => *best = Some((d2, 1)),
        }
        return;
    }
    // Doubled coordinates congruent to parity*step modulo 2*step, within
    // radius of the hole coordinate.
    let lo = hs[idx] - radius_scaled;
    let hi = hs[idx] + radius_scaled;
    let modulus = 2 * step;
    let target = parity * step;
    let mut c = lo + (target - lo).rem_euclid(modulus);
    while c <= hi {
        coords[idx] = c;
        scan(coords, idx + 1, parity, step, radius_scaled, hs, best);
        c += modulus;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_gram_is_the_printed_matrix() {
        let basis = e8_basis();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(basis[i].dot(&basis[j]), E8_GRAM[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn roots_are_240_of_norm_two() {
        let roots = e8_roots();
        assert_eq!(roots.len(), 240);
        for r in &roots {
            assert!(r.is_lattice());
            assert_eq!(r.norm2(), 2);
        }
        // Closed under negation.
        for r in &roots {
            let neg = LatticeVec(r.0.map(|x| -x));
            assert!(roots.binary_search(&neg).is_ok());
        }
    }

    #[test]
    fn roots_are_weyl_invariant() {
        let roots = e8_roots();
        for b in e8_basis() {
            for r in &roots {
                assert!(roots.binary_search(&r.reflect(&b)).is_ok());
            }
        }
    }

    #[test]
    fn seed_root_is_a_root_and_generates_all() {
        let seed = LatticeVec::from_ints([-1, 0, 0, 0, 0, 0, 0, 1]);
        assert!(e8_roots().binary_search(&seed).is_ok());
        let orbit = seed_orbit_is_the_root_system().unwrap();
        assert_eq!(orbit.len(), 240);
    }

    #[test]
    fn deep_and_shallow_holes() {
        let deep = RationalPoint::integer([1, 0, 0, 0, 0, 0, 0, 0]);
        let (count, dist) = hole_neighbors(&deep).unwrap();
        assert_eq!(count, 16);
        assert!((dist - 1.0).abs() < 1e-12);

        let shallow = RationalPoint { num: [5, 1, 1, 1, 1, 1, 1, 1], den: 6 };
        let (count, dist) = hole_neighbors(&shallow).unwrap();
        assert_eq!(count, 9);
        assert!((dist - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);

        let origin = RationalPoint::integer([0; 8]);
        let (count, dist) = hole_neighbors(&origin).unwrap();
        assert_eq!(count, 1);
        assert_eq!(dist, 0.0);
    }
}
