//! Beneath-beyond convex hull over exact integers.
//!
//! Input points are projected onto pivot coordinates of their affine hull and
//! scaled to a common integer lattice, so every orientation test is an integer
//! dot product. Facets carry the set of inserted points lying on them; ridges
//! are recognized combinatorially (a pair of facets whose common points lie in
//! no third facet).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Facet, Polytope};
use crate::bitset::BitSet;
use crate::ratgeom::{
    gcd_all, int_determinant, int_rank, lcm_denominators, nullspace, primitive_ray,
    solve_affine_hull, RMatrix, RVector, Rational,
};
use crate::{Error, Result};

struct IntFacet {
    normal: Vec<BigInt>,
    offset: BigInt,
    points: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn make_primitive(normal: &mut [BigInt], offset: &mut BigInt) {
    let g = gcd_all(normal.iter());
    if g > BigInt::from(1) {
        for x in normal.iter_mut() {
            *x /= &g;
        }
        *offset /= &g;
    }
}

/// Normal of the hyperplane through `k` affinely independent points of Z^k,
/// via signed maximal minors of the difference matrix.
fn hyperplane_normal(pts: &[&Vec<BigInt>]) -> Vec<BigInt> {
    let k = pts[0].len();
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    (0..k)
        .map(|c| {
            let minor: Vec<Vec<BigInt>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = int_determinant(minor);
            if c % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Greedy choice of `k + 1` affinely independent points, starting at index 0.
fn initial_simplex(points: &[Vec<BigInt>], k: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == k + 1 {
            break;
        }
        let diff: Vec<BigInt> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
        let mut trial = rows.clone();
        trial.push(diff.clone());
        if int_rank(trial) == rows.len() + 1 {
            rows.push(diff);
            chosen.push(i);
        }
    }
    chosen
}

/// Vertices (indices into `points`) and facets of a full-dimensional point set in Z^k, k >= 2.
fn beneath_beyond(points: &[Vec<BigInt>], k: usize) -> (Vec<usize>, Vec<IntFacet>) {
    let n = points.len();
    let simplex = initial_simplex(points, k);
    debug_assert_eq!(simplex.len(), k + 1);
    let mut facets: Vec<IntFacet> = Vec::new();
    for skip in 0..=k {
        let others: Vec<&Vec<BigInt>> = simplex
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &i)| &points[i])
            .collect();
        let mut normal = hyperplane_normal(&others);
        let mut offset = dot(&normal, others[0]);
        if dot(&normal, &points[simplex[skip]]) > offset {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        make_primitive(&mut normal, &mut offset);
        let pts = BitSet::from_indices(
            n,
            simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &i)| i),
        );
        facets.push(IntFacet {
            normal,
            offset,
            points: pts,
        });
    }

    let mut inserted = BitSet::from_indices(n, simplex.iter().copied());
    for i in 0..n {
        if inserted.contains(i) {
            continue;
        }
        let p = &points[i];
        let sides: Vec<BigInt> = facets
            .iter()
            .map(|f| dot(&f.normal, p) - &f.offset)
            .collect();
        if !sides.iter().any(Signed::is_positive) {
            continue;
        }
        inserted.insert(i);
        let mut created = Vec::new();
        for (fi, f) in facets.iter().enumerate() {
            if !sides[fi].is_positive() {
                continue;
            }
            for (gi, g) in facets.iter().enumerate() {
                if !sides[gi].is_negative() {
                    continue;
                }
                let ridge = f.points.intersection(&g.points);
                if ridge.len() + 1 < k {
                    continue;
                }
                let in_third = facets
                    .iter()
                    .enumerate()
                    .any(|(hi, h)| hi != fi && hi != gi && ridge.is_subset(&h.points));
                if in_third {
                    continue;
                }
                // the new hyperplane lies in the pencil spanned by f and g and passes through p
                let lf = -&sides[gi];
                let lg = &sides[fi];
                let mut normal: Vec<BigInt> = f
                    .normal
                    .iter()
                    .zip(&g.normal)
                    .map(|(a, b)| &lf * a + lg * b)
                    .collect();
                let mut offset = &lf * &f.offset + lg * &g.offset;
                make_primitive(&mut normal, &mut offset);
                let mut pts = ridge;
                pts.insert(i);
                created.push(IntFacet {
                    normal,
                    offset,
                    points: pts,
                });
            }
        }
        let mut kept: Vec<IntFacet> = Vec::with_capacity(facets.len() + created.len());
        for (fi, mut f) in facets.into_iter().enumerate() {
            if sides[fi].is_positive() {
                continue;
            }
            if sides[fi].is_zero() {
                f.points.insert(i);
            }
            kept.push(f);
        }
        kept.extend(created);
        facets = kept;
    }

    let mut vertices = Vec::new();
    for i in inserted.iter() {
        let mut common: Option<BitSet> = None;
        for f in facets.iter().filter(|f| f.points.contains(i)) {
            common = Some(match common {
                None => f.points.clone(),
                Some(c) => c.intersection(&f.points),
            });
        }
        if common.is_some_and(|c| c.len() == 1) {
            vertices.push(i);
        }
    }
    let vset = BitSet::from_indices(n, vertices.iter().copied());
    for f in facets.iter_mut() {
        f.points = f.points.intersection(&vset);
    }
    (vertices, facets)
}

/// Convex hull of a finite point set, with irredundant V- and H-descriptions.
///
/// Lower-dimensional sets are handled inside their affine hull; facet normals
/// are then chosen in the direction space of the affine hull.
pub fn hull(points: &[RVector]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let ambient = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != ambient) {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            found: p.dim(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let aff = solve_affine_hull(&pts)?;
    let k = aff.dim;
    let scale = Rational::from_integer(lcm_denominators(
        pts.iter()
            .flat_map(|p| aff.pivots.iter().map(move |&c| &p[c])),
    ));
    let ints: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            aff.pivots
                .iter()
                .map(|&c| (&p[c] * &scale).to_integer())
                .collect()
        })
        .collect();
    let n = pts.len();

    let (vertex_idx, int_facets) = match k {
        0 => (vec![0], Vec::new()),
        1 => {
            let lo = (0..n).min_by(|&a, &b| ints[a][0].cmp(&ints[b][0])).unwrap();
            let hi = (0..n).max_by(|&a, &b| ints[a][0].cmp(&ints[b][0])).unwrap();
            let facets = vec![
                IntFacet {
                    normal: vec![BigInt::from(-1)],
                    offset: -ints[lo][0].clone(),
                    points: BitSet::from_indices(n, [lo]),
                },
                IntFacet {
                    normal: vec![BigInt::from(1)],
                    offset: ints[hi][0].clone(),
                    points: BitSet::from_indices(n, [hi]),
                },
            ];
            let mut v = vec![lo, hi];
            v.sort();
            (v, facets)
        }
        _ => beneath_beyond(&ints, k),
    };

    let position: Vec<Option<usize>> = {
        let mut pos = vec![None; n];
        for (j, &i) in vertex_idx.iter().enumerate() {
            pos[i] = Some(j);
        }
        pos
    };
    let vertices: Vec<RVector> = vertex_idx.iter().map(|&i| pts[i].clone()).collect();
    let nv = vertices.len();
    let full = k == ambient;
    let mut facets: Vec<(Facet, BitSet)> = int_facets
        .into_iter()
        .map(|f| {
            let inc = BitSet::from_indices(
                nv,
                f.points
                    .iter()
                    .map(|i| position[i].expect("facet point is a vertex")),
            );
            let facet = if full {
                Facet {
                    normal: RVector::new(
                        f.normal.into_iter().map(Rational::from_integer).collect(),
                    ),
                    offset: Rational::from_integer(f.offset) / &scale,
                }
            } else {
                facet_in_affine_hull(&vertices, &inc, &aff.basis)
            };
            (facet, inc)
        })
        .collect();
    facets.sort_by(|a, b| (&a.0.normal, &a.0.offset).cmp(&(&b.0.normal, &b.0.offset)));
    let (facets, incidence) = facets.into_iter().unzip();
    Ok(Polytope::from_parts(
        ambient, k, vertices, facets, incidence, aff.basis,
    ))
}

/// Outer normal of a facet taken inside the direction space of the affine hull.
fn facet_in_affine_hull(vertices: &[RVector], inc: &BitSet, basis: &[RVector]) -> Facet {
    let on: Vec<usize> = inc.iter().collect();
    let v0 = &vertices[on[0]];
    let rows: Vec<Vec<Rational>> = on[1..]
        .iter()
        .map(|&i| basis.iter().map(|b| b.dot(&(&vertices[i] - v0))).collect())
        .collect();
    let m = if rows.is_empty() {
        RMatrix::zeros(0, basis.len())
    } else {
        RMatrix::from_rows(rows).expect("rectangular")
    };
    let coeffs = nullspace(&m);
    debug_assert_eq!(
        coeffs.len(),
        1,
        "facet must have a one-dimensional normal space"
    );
    let mut normal = basis
        .iter()
        .zip(coeffs[0].entries())
        .fold(RVector::zeros(v0.dim()), |acc, (b, c)| &acc + &b.scale(c));
    let off = vertices
        .iter()
        .enumerate()
        .find(|(i, _)| !inc.contains(*i))
        .map(|(_, w)| w);
    if let Some(w) = off {
        if normal.dot(&(w - v0)).is_positive() {
            normal = -&normal;
        }
    }
    let normal = primitive_ray(&normal).expect("non-zero facet normal");
    let offset = normal.dot(v0);
    Facet { normal, offset }
}
