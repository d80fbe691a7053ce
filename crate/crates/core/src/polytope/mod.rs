//! Polytopes with exact V- and H-descriptions.

mod fan;
mod hull;
mod iso;
mod lattice;

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

pub use fan::{is_deformation, normal_fan, normally_equivalent, NormalFan};
pub use hull::hull;
pub use iso::{canonical_form, combinatorially_equivalent, CanonicalForm};
pub use lattice::{
    f_vector, face_lattice, is_combinatorial_cube, is_cubical, FVector, FaceLattice,
};

use crate::bitset::BitSet;
use crate::ratgeom::{solve_affine_hull, RVector, Rational};
use crate::{Error, Result};

/// Inequality `normal · x <= offset`; the normal is primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: RVector,
    pub offset: Rational,
}

/// A convex polytope given by its vertices and facets.
///
/// Vertices are sorted lexicographically and facets by `(normal, offset)`, so
/// two polytopes with the same point set compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<RVector>,
    facets: Vec<Facet>,
    facet_vertices: Vec<BitSet>,
    vertex_facets: Vec<BitSet>,
    direction_basis: Vec<RVector>,
}

impl Polytope {
    fn from_parts(
        ambient_dim: usize,
        dim: usize,
        vertices: Vec<RVector>,
        facets: Vec<Facet>,
        facet_vertices: Vec<BitSet>,
        direction_basis: Vec<RVector>,
    ) -> Self {
        let nf = facets.len();
        let mut vertex_facets: Vec<BitSet> = (0..vertices.len()).map(|_| BitSet::new(nf)).collect();
        for (j, inc) in facet_vertices.iter().enumerate() {
            for i in inc.iter() {
                vertex_facets[i].insert(j);
            }
        }
        Polytope {
            ambient_dim,
            dim,
            vertices,
            facets,
            facet_vertices,
            vertex_facets,
            direction_basis,
        }
    }

    /// Convex hull of `points`; see [`hull`].
    pub fn from_points(points: &[RVector]) -> Result<Self> {
        hull(points)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Vertices on facet `j`.
    pub fn facet_vertices(&self, j: usize) -> &BitSet {
        &self.facet_vertices[j]
    }

    /// Facets through vertex `i`.
    pub fn vertex_facets(&self, i: usize) -> &BitSet {
        &self.vertex_facets[i]
    }

    /// Reduced-echelon basis of the direction space of the affine hull.
    pub fn direction_basis(&self) -> &[RVector] {
        &self.direction_basis
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Whether `p` lies in the polytope.
    pub fn contains(&self, p: &RVector) -> bool {
        if self.dim < self.ambient_dim {
            let aff = solve_affine_hull(&self.vertices).expect("non-empty");
            if !aff.contains(p) {
                return false;
            }
        }
        self.facets.iter().all(|f| f.normal.dot(p) <= f.offset)
    }

    /// Support function value `max_{p in P} x·p`.
    pub fn support(&self, x: &RVector) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.dot(x))
            .max()
            .expect("non-empty")
    }

    /// Vertices attaining the support value in direction `x`.
    pub fn maximizers(&self, x: &RVector) -> BitSet {
        let h = self.support(x);
        BitSet::from_indices(
            self.vertices.len(),
            (0..self.vertices.len()).filter(|&i| self.vertices[i].dot(x) == h),
        )
    }

    /// Facets containing every vertex of `face`.
    pub fn facets_containing(&self, face: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.facets.len());
        for i in face.iter() {
            out = out.intersection(&self.vertex_facets[i]);
        }
        out
    }

    /// Vertices lying on every facet of `facets`.
    pub fn vertices_on(&self, facets: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.vertices.len());
        for j in facets.iter() {
            out = out.intersection(&self.facet_vertices[j]);
        }
        out
    }

    /// Dimension of the affine hull of the vertex subset `face`; `None` for the empty set.
    pub fn face_dim(&self, face: &BitSet) -> Option<usize> {
        let pts: Vec<RVector> = face.iter().map(|i| self.vertices[i].clone()).collect();
        solve_affine_hull(&pts).ok().map(|a| a.dim)
    }

    /// Average of the vertices.
    pub fn centroid(&self) -> RVector {
        let n = Rational::from_integer(self.vertices.len().into());
        let sum = self
            .vertices
            .iter()
            .fold(RVector::zeros(self.ambient_dim), |acc, v| &acc + v);
        sum.scale(&(Rational::from_integer(1.into()) / n))
    }

    /// The translate `P + t`.
    pub fn translate(&self, t: &RVector) -> Result<Polytope> {
        if t.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: t.dim(),
            });
        }
        let mut out = self.clone();
        for v in out.vertices.iter_mut() {
            *v = &*v + t;
        }
        for f in out.facets.iter_mut() {
            f.offset += f.normal.dot(t);
        }
        Ok(out)
    }

    /// Number of two-dimensional faces with exactly six vertices; only meaningful in dimension 3.
    pub fn hexagonal_facets(&self) -> usize {
        if self.dim != 3 {
            return 0;
        }
        self.facet_vertices.iter().filter(|f| f.len() == 6).count()
    }

    /// Edges as pairs of vertex indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        match self.dim {
            0 => {}
            1 => out.push((0, 1)),
            _ => {
                let n = self.vertices.len();
                for a in 0..n {
                    for b in a + 1..n {
                        let common = self.vertex_facets[a].intersection(&self.vertex_facets[b]);
                        if common.len() + 1 < self.dim {
                            continue;
                        }
                        let on = self.vertices_on(&common);
                        if on.len() == 2 {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
        out
    }
}

fn check_dims(p: &Polytope, q: &Polytope) -> Result<()> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim,
            found: q.ambient_dim,
        });
    }
    Ok(())
}

/// `P + Q = { p + q }`.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    check_dims(p, q)?;
    if q.vertices.len() == 1 {
        return p.translate(&q.vertices[0]);
    }
    if p.vertices.len() == 1 {
        return q.translate(&p.vertices[0]);
    }
    let sums: Vec<RVector> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a + b))
        .collect();
    hull(&sums)
}

/// `base + Σ conv(0, g)` over the non-zero generators.
pub fn zonotope(base: &RVector, generators: &[RVector]) -> Result<Polytope> {
    let mut acc = hull(core::slice::from_ref(base))?;
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let seg = hull(&[RVector::zeros(g.dim()), g.clone()])?;
        acc = minkowski_sum(&acc, &seg)?;
    }
    Ok(acc)
}

/// Convex hull of `P ∪ Q`.
pub fn conv_union(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    check_dims(p, q)?;
    let pts: Vec<RVector> = p
        .vertices
        .iter()
        .chain(q.vertices.iter())
        .cloned()
        .collect();
    hull(&pts)
}

/// `λP`; the zero dilate is the origin.
pub fn dilate(p: &Polytope, lambda: &Rational) -> Result<Polytope> {
    if lambda.is_negative() {
        return Err(Error::NegativeScalar);
    }
    if lambda.is_zero() {
        return hull(&[RVector::zeros(p.ambient_dim)]);
    }
    let mut out = p.clone();
    for v in out.vertices.iter_mut() {
        *v = v.scale(lambda);
    }
    for f in out.facets.iter_mut() {
        f.offset = &f.offset * lambda;
    }
    Ok(out)
}

/// Polar dual `{ y : x·y <= 1 for all x in P }`.
pub fn polar_dual(p: &Polytope) -> Result<Polytope> {
    if !p.is_full_dimensional() || p.facets.iter().any(|f| !f.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let pts: Vec<RVector> = p
        .facets
        .iter()
        .map(|f| f.normal.scale(&f.offset.recip()))
        .collect();
    hull(&pts)
}
