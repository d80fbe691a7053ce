use alloc::vec::Vec;
use core::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{int, Rational};

/// A point or direction with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RVector((0..dim).map(|_| Rational::zero()).collect())
    }

    /// Standard basis vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = int(1);
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RVector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> RVector {
        RVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Number of non-zero entries with negative sign.
    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|x| x.is_negative()).count()
    }

    /// Projection onto the given coordinate indices.
    pub fn select(&self, coords: &[usize]) -> RVector {
        RVector(coords.iter().map(|&c| self.0[c].clone()).collect())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &RVector) -> RVector {
        RVector(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &RVector {
    type Output = RVector;
    fn add(self, rhs: &RVector) -> RVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RVector {
    type Output = RVector;
    fn sub(self, rhs: &RVector) -> RVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RVector {
    type Output = RVector;
    fn neg(self) -> RVector {
        RVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<Rational>> for RVector {
    fn from(v: Vec<Rational>) -> Self {
        RVector(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::rat;

    #[test]
    fn arithmetic() {
        let a = RVector::from_ints(&[1, 2, 3]);
        let b = RVector::new(alloc::vec![rat(1, 2), int(0), int(-1)]);
        assert_eq!(a.dot(&b), rat(-5, 2));
        assert_eq!(&a - &a, RVector::zeros(3));
        assert_eq!((&a + &b)[0], rat(3, 2));
        assert_eq!(a.scale(&rat(1, 2))[1], int(1));
        assert_eq!(a.select(&[2, 0]), RVector::from_ints(&[3, 1]));
        assert_eq!(RVector::unit(3, 1), RVector::from_ints(&[0, 1, 0]));
    }
}
