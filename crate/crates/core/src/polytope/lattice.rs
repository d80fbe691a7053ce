use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::Polytope;
use crate::bitset::BitSet;

/// Face counts `(f_0, ..., f_{d-1})` of a `d`-polytope; a point has `(1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Counts with the polytope itself appended as `f_d = 1`.
    pub fn with_top(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.push(1);
        v
    }

    /// Alternating sum over proper nonempty faces.
    pub fn euler_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Whether the Euler relation holds for a polytope of dimension `d`.
    pub fn satisfies_euler(&self, d: usize) -> bool {
        if d == 0 {
            return self.0 == [1];
        }
        let expected = if d.is_multiple_of(2) { 0 } else { 2 };
        self.0.len() == d && self.euler_sum() == expected
    }
}

/// All faces of a polytope as vertex sets, graded by dimension.
///
/// Level `k` holds the faces of dimension `k - 1`, so level 0 is the empty face
/// and the last level is the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    levels: Vec<Vec<BitSet>>,
    /// `covers[k][i]` lists the indices in level `k - 1` of the facets of face `i` of level `k`.
    covers: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    /// Faces of dimension `k`.
    pub fn faces(&self, k: usize) -> &[BitSet] {
        &self.levels[k + 1]
    }

    /// The empty face.
    pub fn bottom(&self) -> &BitSet {
        &self.levels[0][0]
    }

    /// Number of levels including the empty face and the polytope.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 2
    }

    /// Indices among the `(k-1)`-faces of the facets of the `i`-th `k`-face.
    pub fn facets_of(&self, k: usize, i: usize) -> &[usize] {
        &self.covers[k + 1][i]
    }

    /// Position of `face` among the faces of dimension `k`.
    pub fn index_of(&self, k: usize, face: &BitSet) -> Option<usize> {
        self.levels[k + 1].binary_search(face).ok()
    }

    pub fn f_vector(&self) -> FVector {
        if self.levels.len() == 2 {
            return FVector(vec![1]);
        }
        FVector(
            self.levels[1..self.levels.len() - 1]
                .iter()
                .map(Vec::len)
                .collect(),
        )
    }

    pub fn num_faces(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// Face lattice, built top-down: the facets of a face `F` are the
/// inclusion-maximal sets `F ∩ G` over facets `G` of `P` not containing `F`.
pub fn face_lattice(p: &Polytope) -> FaceLattice {
    let nv = p.num_vertices();
    let d = p.dim();
    let empty = BitSet::new(nv);
    let top = BitSet::full(nv);
    let mut levels: Vec<Vec<BitSet>> = vec![Vec::new(); d + 2];
    let mut covers: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 2];
    levels[d + 1] = vec![top];
    levels[0] = vec![empty.clone()];
    covers[0] = vec![Vec::new()];
    let facet_sets: Vec<BitSet> = (0..p.num_facets())
        .map(|j| p.facet_vertices(j).clone())
        .collect();
    for k in (1..=d + 1).rev() {
        let mut below: BTreeSet<BitSet> = BTreeSet::new();
        let mut children: Vec<Vec<BitSet>> = Vec::new();
        for face in &levels[k] {
            let subs: Vec<BitSet> = if k == 1 {
                vec![empty.clone()]
            } else {
                maximal_subfaces(face, &facet_sets)
            };
            below.extend(subs.iter().cloned());
            children.push(subs);
        }
        let sorted: Vec<BitSet> = below.into_iter().collect();
        covers[k] = children
            .iter()
            .map(|subs| {
                let mut ix: Vec<usize> = subs
                    .iter()
                    .map(|s| sorted.binary_search(s).expect("present"))
                    .collect();
                ix.sort();
                ix
            })
            .collect();
        if k > 1 {
            levels[k - 1] = sorted;
        }
    }
    FaceLattice { levels, covers }
}

fn maximal_subfaces(face: &BitSet, facets: &[BitSet]) -> Vec<BitSet> {
    let cands: BTreeSet<BitSet> = facets
        .iter()
        .filter(|g| !face.is_subset(g))
        .map(|g| face.intersection(g))
        .filter(|s| !s.is_empty())
        .collect();
    let cands: Vec<BitSet> = cands.into_iter().collect();
    cands
        .iter()
        .filter(|s| !cands.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}

pub fn f_vector(p: &Polytope) -> FVector {
    face_lattice(p).f_vector()
}

/// Whether the `i`-th face of dimension `k` is combinatorially a `k`-cube: it has
/// `2^k` vertices, each lying on exactly `k` of its facets, and all its facets are cubes.
pub fn is_combinatorial_cube(lattice: &FaceLattice, k: usize, i: usize) -> bool {
    let mut memo = BTreeMap::new();
    cube_rec(lattice, k, i, &mut memo)
}

fn cube_rec(
    l: &FaceLattice,
    k: usize,
    i: usize,
    memo: &mut BTreeMap<(usize, usize), bool>,
) -> bool {
    if k <= 1 {
        return true;
    }
    if let Some(&r) = memo.get(&(k, i)) {
        return r;
    }
    let face = &l.faces(k)[i];
    let facets = l.facets_of(k, i);
    let ok = k < usize::BITS as usize
        && face.len() == 1 << k
        && face.iter().all(|v| {
            facets
                .iter()
                .filter(|&&j| l.faces(k - 1)[j].contains(v))
                .count()
                == k
        })
        && facets.iter().all(|&j| cube_rec(l, k - 1, j, memo));
    memo.insert((k, i), ok);
    ok
}

/// Whether every proper face is combinatorially a cube.
pub fn is_cubical(p: &Polytope) -> bool {
    let d = p.dim();
    if d <= 1 {
        return true;
    }
    let l = face_lattice(p);
    let mut memo = BTreeMap::new();
    (0..l.faces(d - 1).len()).all(|j| cube_rec(&l, d - 1, j, &mut memo))
}
