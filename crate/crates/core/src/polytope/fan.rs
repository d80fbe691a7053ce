use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Polytope;
use crate::ratgeom::{nullspace, RMatrix, RVector};

/// Normal fan: one maximal cone per vertex, spanned by the normals of the
/// facets through it, plus the orthogonal complement of the affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    pub ambient_dim: usize,
    /// Primitive facet normals, sorted.
    pub rays: Vec<RVector>,
    /// Ray-index sets, one per vertex, sorted.
    pub maximal_cones: Vec<BTreeSet<usize>>,
    pub lineality_dim: usize,
}

impl NormalFan {
    /// Cones as sets of rays, independent of indexing.
    pub fn cone_ray_sets(&self) -> BTreeSet<BTreeSet<RVector>> {
        self.maximal_cones
            .iter()
            .map(|c| c.iter().map(|&i| self.rays[i].clone()).collect())
            .collect()
    }
}

pub fn normal_fan(p: &Polytope) -> NormalFan {
    let mut rays: Vec<RVector> = p.facets().iter().map(|f| f.normal.clone()).collect();
    rays.sort();
    let pos: Vec<usize> = p
        .facets()
        .iter()
        .map(|f| rays.binary_search(&f.normal).expect("present"))
        .collect();
    let mut cones: Vec<BTreeSet<usize>> = (0..p.num_vertices())
        .map(|i| p.vertex_facets(i).iter().map(|j| pos[j]).collect())
        .collect();
    cones.sort();
    NormalFan {
        ambient_dim: p.ambient_dim(),
        rays,
        maximal_cones: cones,
        lineality_dim: p.ambient_dim() - p.dim(),
    }
}

/// Equality of normal fans.
pub fn normally_equivalent(p: &Polytope, q: &Polytope) -> bool {
    p.ambient_dim() == q.ambient_dim()
        && p.direction_basis() == q.direction_basis()
        && normal_fan(p) == normal_fan(q)
}

/// Whether `p` is a deformation of `q`, i.e. every maximal cone of the normal
/// fan of `q` lies in a maximal cone of the normal fan of `p`.
pub fn is_deformation(p: &Polytope, q: &Polytope) -> bool {
    if p.ambient_dim() != q.ambient_dim() {
        return false;
    }
    let lineality = orthogonal_complement(q);
    if lineality.iter().any(|l| {
        p.vertices()
            .iter()
            .any(|v| v.dot(l) != p.vertices()[0].dot(l))
    }) {
        return false;
    }
    (0..q.num_vertices()).all(|i| {
        let rays: Vec<&RVector> = q
            .vertex_facets(i)
            .iter()
            .map(|j| &q.facets()[j].normal)
            .collect();
        let interior = rays
            .iter()
            .fold(RVector::zeros(q.ambient_dim()), |acc, r| &acc + *r);
        let top = p.maximizers(&interior);
        if top.len() != 1 {
            return false;
        }
        let w = &p.vertices()[top.iter().next().expect("one vertex")];
        rays.iter().all(|r| w.dot(r) == p.support(r))
    })
}

fn orthogonal_complement(q: &Polytope) -> Vec<RVector> {
    let basis = q.direction_basis();
    if basis.is_empty() {
        return (0..q.ambient_dim())
            .map(|i| RVector::unit(q.ambient_dim(), i))
            .collect();
    }
    let m = RMatrix::from_rows(basis.iter().map(|b| b.entries().to_vec()).collect())
        .expect("rectangular");
    nullspace(&m)
}
