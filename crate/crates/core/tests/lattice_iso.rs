use std::collections::BTreeSet;

use maxout_core::extremal::{build_bd, build_bd_prime};
use maxout_core::polytope::{combinatorially_equivalent, face_lattice, hull};
use maxout_core::sampling;
use maxout_core::{Polytope, RVector};

struct Faces {
    by_dim: Vec<BTreeSet<Vec<usize>>>,
    /// For each vertex, the number of faces of each dimension containing it.
    profile: Vec<Vec<usize>>,
}

fn faces(p: &Polytope) -> Faces {
    let l = face_lattice(p);
    let by_dim: Vec<BTreeSet<Vec<usize>>> = (0..p.dim())
        .map(|k| l.faces(k).iter().map(|f| f.iter().collect()).collect())
        .collect();
    let profile = (0..p.num_vertices())
        .map(|v| {
            by_dim
                .iter()
                .map(|fs| fs.iter().filter(|f| f.contains(&v)).count())
                .collect()
        })
        .collect();
    Faces { by_dim, profile }
}

/// Searches for a vertex bijection that maps every face onto a face.
fn lattice_isomorphic(p: &Polytope, q: &Polytope) -> bool {
    if p.num_vertices() != q.num_vertices() || p.dim() != q.dim() {
        return false;
    }
    let (fp, fq) = (faces(p), faces(q));
    if fp
        .by_dim
        .iter()
        .map(BTreeSet::len)
        .ne(fq.by_dim.iter().map(BTreeSet::len))
    {
        return false;
    }
    let n = p.num_vertices();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(fp: &Faces, fq: &Faces, map: &[usize]) -> bool {
        fp.by_dim.iter().zip(&fq.by_dim).all(|(ps, qs)| {
            ps.iter()
                .filter(|f| f.iter().all(|&v| map[v] != usize::MAX))
                .all(|f| {
                    let mut img: Vec<usize> = f.iter().map(|&v| map[v]).collect();
                    img.sort();
                    qs.contains(&img)
                })
        })
    }
    fn rec(k: usize, fp: &Faces, fq: &Faces, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if k == map.len() {
            return true;
        }
        for w in 0..map.len() {
            if used[w] || fp.profile[k] != fq.profile[w] {
                continue;
            }
            map[k] = w;
            used[w] = true;
            if consistent(fp, fq, map) && rec(k + 1, fp, fq, map, used) {
                return true;
            }
            map[k] = usize::MAX;
            used[w] = false;
        }
        false
    }
    rec(0, &fp, &fq, &mut map, &mut used)
}

fn permuted(p: &Polytope, perm: &[usize], shift: &[i64]) -> Polytope {
    let pts: Vec<RVector> = p
        .vertices()
        .iter()
        .map(|v| {
            &RVector::new(perm.iter().map(|&i| v[i].clone()).collect()) + &RVector::from_ints(shift)
        })
        .collect();
    hull(&pts).unwrap()
}

#[test]
fn boxtopes_in_dimension_three_differ() {
    let (b, bp) = (build_bd(3).unwrap(), build_bd_prime(3).unwrap());
    assert!(!lattice_isomorphic(&b, &bp));
    assert!(!combinatorially_equivalent(&b, &bp));
    let moved = permuted(&b, &[2, 0, 1], &[3, -1, 4]);
    assert!(lattice_isomorphic(&b, &moved));
    assert!(combinatorially_equivalent(&b, &moved));
    let moved = permuted(&bp, &[1, 2, 0], &[0, 5, 0]);
    assert!(lattice_isomorphic(&bp, &moved));
    assert!(combinatorially_equivalent(&bp, &moved));
}

#[test]
fn canonical_labeling_agrees_with_lattice_search() {
    let mut agreements = 0;
    for i in 0..60u64 {
        let mut r = sampling::rng(sampling::job_seed(77, i));
        let a: Vec<RVector> = (0..6 + i as usize % 4)
            .map(|_| sampling::int_vector(&mut r, 3, -4, 4))
            .collect();
        let b: Vec<RVector> = (0..6 + i as usize % 4)
            .map(|_| sampling::int_vector(&mut r, 3, -4, 4))
            .collect();
        let (p, q) = (hull(&a).unwrap(), hull(&b).unwrap());
        if p.dim() != 3 || q.dim() != 3 {
            continue;
        }
        assert_eq!(
            lattice_isomorphic(&p, &q),
            combinatorially_equivalent(&p, &q),
            "instance {i}"
        );
        let moved = permuted(&p, &[1, 0, 2], &[1, 1, 1]);
        assert!(lattice_isomorphic(&p, &moved) && combinatorially_equivalent(&p, &moved));
        agreements += 1;
    }
    assert!(agreements > 40);
}
