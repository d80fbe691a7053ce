//! Face typing for `conv(P₁ ∪ P₂)` when `P₁` and `P₂` share a normal fan, and
//! the complex of mixed faces.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::polytope::{
    conv_union, face_lattice, normal_fan, normally_equivalent, NormalFan, Polytope,
};
use crate::ratgeom::{rat, solve_affine_hull, RVector, Rational};
use crate::sampling;
use crate::{Error, Result};

/// How a face pair `(F₁, F₂)` appears in the hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceType {
    /// `F₁` is a face of the hull.
    A,
    /// `F₂` is a face of the hull.
    B,
    /// `F₁` and `F₂` span the same affine space.
    C,
    /// `conv(F₁ ∪ F₂)` is a face of the hull, combinatorially a prism.
    D,
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            FaceType::A => "a",
            FaceType::B => "b",
            FaceType::C => "c",
            FaceType::D => "d",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedFace {
    pub dim: usize,
    /// Facet indices of `P₁` containing the face.
    pub facets: BitSet,
    /// A point in the relative interior of the normal cone.
    pub normal: RVector,
    pub h1: Rational,
    pub h2: Rational,
    pub face1: BitSet,
    pub face2: BitSet,
    pub label: FaceType,
}

/// Labels of all proper faces, indexed through the face lattice of `P₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTyping {
    pub faces: Vec<TypedFace>,
}

impl FaceTyping {
    /// Labels of the rays of the common normal fan, i.e. of the facets.
    pub fn ray_labels(&self) -> Vec<(RVector, FaceType)> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let mut out: Vec<(RVector, FaceType)> = self
            .faces
            .iter()
            .filter(|f| f.dim == top)
            .map(|f| (f.normal.clone(), f.label))
            .collect();
        out.sort();
        out
    }

    pub fn in_general_position(&self) -> bool {
        self.faces.iter().all(|f| f.label != FaceType::C)
    }

    pub fn count(&self, label: FaceType) -> usize {
        self.faces.iter().filter(|f| f.label == label).count()
    }
}

fn require_pair(p1: &Polytope, p2: &Polytope) -> Result<()> {
    if !normally_equivalent(p1, p2) {
        return Err(Error::NotNormallyEquivalent);
    }
    if !p1.is_full_dimensional() {
        return Err(Error::Shape(format!(
            "full-dimensional polytopes required, got dimension {}",
            p1.dim()
        )));
    }
    Ok(())
}

pub fn classify_faces(p1: &Polytope, p2: &Polytope) -> Result<FaceTyping> {
    require_pair(p1, p2)?;
    let lattice = face_lattice(p1);
    let d = p1.dim();
    let mut faces = Vec::new();
    for k in 0..d {
        for f1 in lattice.faces(k) {
            let facets = p1.facets_containing(f1);
            let normal = facets
                .iter()
                .fold(RVector::zeros(p1.ambient_dim()), |acc, j| {
                    &acc + &p1.facets()[j].normal
                });
            let (h1, h2) = (p1.support(&normal), p2.support(&normal));
            let f2 = p2.maximizers(&normal);
            let label = if h1 > h2 {
                FaceType::A
            } else if h2 > h1 {
                FaceType::B
            } else {
                let pts: Vec<RVector> = f1
                    .iter()
                    .map(|i| p1.vertices()[i].clone())
                    .chain(f2.iter().map(|i| p2.vertices()[i].clone()))
                    .collect();
                if solve_affine_hull(&pts)?.dim == k {
                    FaceType::C
                } else {
                    FaceType::D
                }
            };
            faces.push(TypedFace {
                dim: k,
                facets,
                normal,
                h1,
                h2,
                face1: f1.clone(),
                face2: f2,
                label,
            });
        }
    }
    Ok(FaceTyping { faces })
}

/// No corresponding pair of proper faces shares an affine span.
pub fn in_general_position(p1: &Polytope, p2: &Polytope) -> bool {
    classify_faces(p1, p2)
        .map(|t| t.in_general_position())
        .unwrap_or(false)
}

/// Normal fan of `conv(P₁ ∪ P₂)`.
pub fn hull_fan(p1: &Polytope, p2: &Polytope) -> Result<NormalFan> {
    require_pair(p1, p2)?;
    Ok(normal_fan(&conv_union(p1, p2)?))
}

/// Normal cones of the mixed faces of `Q = conv(P₁ ∪ P₂)`, read as a cell complex
/// on the boundary of `Q*`: a mixed face of dimension `j` is a cell of dimension `d - 1 - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingComplex {
    pub hull: Polytope,
    /// `(cell dimension, facets of Q containing the face)`; the facet indices
    /// are the rays of the hull fan.
    pub cells: Vec<(usize, BitSet)>,
    pub f_vector: Vec<usize>,
    pub components: usize,
    pub euler_characteristic: i64,
    pub component_euler: Vec<i64>,
    /// For each vertex of `P₁`, the number of vertices of `Q` whose normal cone
    /// lies in its normal cone.
    pub splits: Vec<usize>,
}

/// Euler characteristic and connected components of the mixed-face complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStats {
    pub f_vector: Vec<usize>,
    pub components: usize,
    pub euler_characteristic: i64,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn separating_fan(p1: &Polytope, p2: &Polytope) -> Result<SeparatingComplex> {
    require_pair(p1, p2)?;
    let q = conv_union(p1, p2)?;
    let d = q.dim();
    let in1: Vec<bool> = q
        .vertices()
        .iter()
        .map(|v| p1.vertices().binary_search(v).is_ok())
        .collect();
    let in2: Vec<bool> = q
        .vertices()
        .iter()
        .map(|v| p2.vertices().binary_search(v).is_ok())
        .collect();
    let lattice = face_lattice(&q);
    let mut cells = Vec::new();
    for j in 1..d {
        for face in lattice.faces(j) {
            if face.iter().all(|i| in1[i]) || face.iter().all(|i| in2[i]) {
                continue;
            }
            cells.push((d - 1 - j, q.facets_containing(face)));
        }
    }
    let nf = q.num_facets();
    let mut parent: Vec<usize> = (0..nf).collect();
    for (dim, facets) in &cells {
        if *dim == 1 {
            let ends: Vec<usize> = facets.iter().collect();
            let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = cells
        .iter()
        .filter(|c| c.0 == 0)
        .map(|c| find(&mut parent, c.1.iter().next().expect("facet")))
        .collect();
    roots.sort();
    roots.dedup();
    let mut component_euler = vec![0i64; roots.len()];
    let mut f_vector = vec![0usize; d.saturating_sub(1)];
    for (dim, facets) in &cells {
        f_vector[*dim] += 1;
        let r = find(&mut parent, facets.iter().next().expect("facet"));
        let c = roots.binary_search(&r).expect("component");
        component_euler[c] += if dim % 2 == 0 { 1 } else { -1 };
    }
    let euler_characteristic = component_euler.iter().sum();
    let splits = (0..p1.num_vertices())
        .map(|v| {
            (0..q.num_vertices())
                .filter(|&i| {
                    let w = q
                        .vertex_facets(i)
                        .iter()
                        .fold(RVector::zeros(d), |acc, j| &acc + &q.facets()[j].normal);
                    let top = p1.maximizers(&w);
                    top.len() == 1 && top.contains(v)
                })
                .count()
        })
        .collect();
    Ok(SeparatingComplex {
        hull: q,
        cells,
        f_vector,
        components: roots.len(),
        euler_characteristic,
        component_euler,
        splits,
    })
}

pub fn separating_complex_stats(p1: &Polytope, p2: &Polytope) -> Result<ComplexStats> {
    if !classify_faces(p1, p2)?.in_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let s = separating_fan(p1, p2)?;
    Ok(ComplexStats {
        f_vector: s.f_vector,
        components: s.components,
        euler_characteristic: s.euler_characteristic,
    })
}

/// Attempts made by [`perturb_to_general_position`].
pub const PERTURB_RETRIES: u32 = 64;

/// Translates `P₂` by `εv` for a seeded integer direction `v` and `ε = 2^-k`,
/// raising `k` until the pair is in general position, every face of type (a) or
/// (b) keeps its label and the hull has at least as many facets as before.
pub fn perturb_to_general_position(
    p1: &Polytope,
    p2: &Polytope,
    seed: u64,
) -> Result<(Polytope, Polytope)> {
    let before = classify_faces(p1, p2)?;
    if before.in_general_position() {
        return Ok((p1.clone(), p2.clone()));
    }
    let facets_before = conv_union(p1, p2)?.num_facets();
    let mut r = sampling::rng(seed);
    for k in 1..=PERTURB_RETRIES {
        let v = sampling::int_vector(&mut r, p1.ambient_dim(), -1000, 1000);
        let eps = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(k));
        let moved = p2.translate(&v.scale(&(eps * rat(1, 1000))))?;
        let after = classify_faces(p1, &moved)?;
        let kept = before
            .faces
            .iter()
            .zip(&after.faces)
            .all(|(x, y)| !matches!(x.label, FaceType::A | FaceType::B) || x.label == y.label);
        if after.in_general_position()
            && kept
            && conv_union(p1, &moved)?.num_facets() >= facets_before
        {
            return Ok((p1.clone(), moved));
        }
    }
    Err(Error::Exhausted(format!(
        "no general-position translate after {PERTURB_RETRIES} attempts"
    )))
}
