use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{gcd_all, lcm_denominators, rref, RVector, Rational};
use crate::{Error, Result};

/// Affine span of a finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub dim: usize,
    /// Reduced-echelon basis of the direction space; independent of input order.
    pub basis: Vec<RVector>,
    pub base_point: RVector,
    /// Coordinates onto which the direction space projects isomorphically.
    pub pivots: Vec<usize>,
}

impl AffineHull {
    /// Whether `p` lies in the affine span.
    pub fn contains(&self, p: &RVector) -> bool {
        let mut rows: Vec<Vec<Rational>> =
            self.basis.iter().map(|b| b.entries().to_vec()).collect();
        rows.push((p - &self.base_point).into_entries());
        rref(&mut rows).len() == self.dim
    }
}

/// Dimension and direction basis of the affine span of `points`.
///
/// The base point is the lexicographically smallest input point, so the result
/// does not depend on the order of the input.
pub fn solve_affine_hull(points: &[RVector]) -> Result<AffineHull> {
    let base = points.iter().min().ok_or(Error::EmptyInput)?.clone();
    let n = base.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    let mut rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| (p - &base).into_entries())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let pivots = rref(&mut rows);
    rows.truncate(pivots.len());
    Ok(AffineHull {
        dim: pivots.len(),
        basis: rows.into_iter().map(RVector::new).collect(),
        base_point: base,
        pivots,
    })
}

/// Primitive integer vector on the ray through `v`, as integers.
pub fn primitive_ray_ints(v: &RVector) -> Result<Vec<BigInt>> {
    if v.is_zero() {
        return Err(Error::DegenerateRay);
    }
    let l = Rational::from_integer(lcm_denominators(v.entries()));
    let ints: Vec<BigInt> = v.entries().iter().map(|x| (x * &l).to_integer()).collect();
    let g = gcd_all(&ints);
    Ok(ints.into_iter().map(|x| x / &g).collect())
}

/// Canonical representative of the ray through `v`: coprime integers, same direction.
pub fn primitive_ray(v: &RVector) -> Result<RVector> {
    Ok(RVector::new(
        primitive_ray_ints(v)?
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    ))
}
