//! Maxout candidates: Minkowski sums of convex hulls of zonotope pairs that
//! share their zones.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::network::{validate, MaxoutNetwork};
use crate::polytope::{conv_union, hull, minkowski_sum, zonotope, Polytope};
use crate::ratgeom::{int, nullspace, rank, solve, RMatrix, RVector, Rational};
use crate::sampling;
use crate::{Error, Result};

/// Directions `u` (d×n), shifts `v`, `w` (d×m) and scalings `s`, `t` (m×n).
///
/// The `k`-th summand is `conv(Z_k1 ∪ Z_k2)` with
/// `Z_k1 = v_k + Σ_i s_ki conv(0, u_i)` and `Z_k2 = w_k + Σ_i t_ki conv(0, u_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateParams {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub u: RMatrix,
    pub v: RMatrix,
    pub w: RMatrix,
    pub s: RMatrix,
    pub t: RMatrix,
}

impl CandidateParams {
    pub fn new(u: RMatrix, v: RMatrix, w: RMatrix, s: RMatrix, t: RMatrix) -> Result<Self> {
        let (d, n, m) = (u.rows(), u.cols(), v.cols());
        let shapes = [
            ("v", &v, d, m),
            ("w", &w, d, m),
            ("s", &s, m, n),
            ("t", &t, m, n),
        ];
        for (name, mat, r, c) in shapes {
            if mat.rows() != r || mat.cols() != c {
                return Err(Error::Shape(format!(
                    "{name} is {}x{}, expected {r}x{c}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        if s.entries()
            .iter()
            .chain(t.entries())
            .any(Signed::is_negative)
        {
            return Err(Error::NegativeScalar);
        }
        Ok(CandidateParams {
            d,
            n,
            m,
            u,
            v,
            w,
            s,
            t,
        })
    }

    /// Random candidate with integer directions and shifts in `[-10, 10]` and
    /// scalings `k/1000`, `k` in `[1, 1000]`.
    pub fn random(d: usize, n: usize, m: usize, seed: u64) -> Result<Self> {
        let mut r = sampling::rng(seed);
        let u = sampling::matrix(&mut r, d, n, -1000, 1000, 1000);
        let v = sampling::matrix(&mut r, d, m, -1000, 1000, 1000);
        let w = sampling::matrix(&mut r, d, m, -1000, 1000, 1000);
        let s = sampling::matrix(&mut r, m, n, 1, 1000, 1000);
        let t = sampling::matrix(&mut r, m, n, 1, 1000, 1000);
        CandidateParams::new(u, v, w, s, t)
    }

    /// The zonotopes `(Z_k1, Z_k2)` for `k = 0..m`.
    pub fn zonotope_pairs(&self) -> Result<Vec<(Polytope, Polytope)>> {
        let dirs: Vec<RVector> = (0..self.n).map(|i| self.u.col_vector(i)).collect();
        (0..self.m)
            .map(|k| {
                let g1: Vec<RVector> = dirs
                    .iter()
                    .enumerate()
                    .map(|(i, u)| u.scale(self.s.get(k, i)))
                    .collect();
                let g2: Vec<RVector> = dirs
                    .iter()
                    .enumerate()
                    .map(|(i, u)| u.scale(self.t.get(k, i)))
                    .collect();
                Ok((
                    zonotope(&self.v.col_vector(k), &g1)?,
                    zonotope(&self.w.col_vector(k), &g2)?,
                ))
            })
            .collect()
    }
}

pub fn build_candidate(p: &CandidateParams) -> Result<Polytope> {
    let mut acc = hull(&[RVector::zeros(p.d)])?;
    for (z1, z2) in p.zonotope_pairs()? {
        acc = minkowski_sum(&acc, &conv_union(&z1, &z2)?)?;
    }
    Ok(acc)
}

/// Candidate coordinates of a depth-two network. The output weights `c_k` are
/// absorbed into the `k`-th rows of the second-layer matrices.
pub fn phi(net: &MaxoutNetwork) -> Result<CandidateParams> {
    if net.depth() != 2 {
        return Err(Error::WrongDepth {
            expected: 2,
            found: net.depth(),
        });
    }
    validate(net).map_err(|v| Error::InvalidNetwork(v.iter().map(|x| format!("{x}")).collect()))?;
    let (a, b) = (net.a(1), net.b(1));
    let out: Vec<Rational> = net.c().row(0).to_vec();
    let c = net.a(2).scale_rows(&out);
    let d = net.b(2).scale_rows(&out);
    CandidateParams::new(
        b.sub(a)?.transpose(),
        c.mul(a)?.transpose(),
        d.mul(a)?.transpose(),
        c,
        d,
    )
}

/// The `(n+d) × 2m` matrix `[[s^T, t^T], [v, w]]`.
pub fn rank_matrix(p: &CandidateParams) -> Result<RMatrix> {
    let top = p.s.transpose().hstack(&p.t.transpose())?;
    let bottom = p.v.hstack(&p.w)?;
    top.vstack(&bottom)
}

/// Whether the rank of [`rank_matrix`] is at most `n`, with the rank.
pub fn rank_condition(p: &CandidateParams) -> Result<(bool, usize)> {
    let r = rank(&rank_matrix(p)?);
    Ok((r <= p.n, r))
}

pub fn candidate_space_dim(d: usize, n: usize, m: usize) -> usize {
    (d - 1) * n + 2 * m * (d + n)
}

pub fn weight_space_dim(d: usize, n: usize, m: usize) -> usize {
    2 * n * d + 2 * m * n - n
}

/// Expected dimension of the fibers of the network-to-candidate map.
pub fn fiber_dim(d: usize, n: usize, m: usize) -> usize {
    (d * n).saturating_sub(2 * d * m)
}

/// Rescales zones so that the first row of `t` is all ones.
pub fn normalize_scaling(p: &CandidateParams) -> Result<CandidateParams> {
    if p.m == 0 {
        return Ok(p.clone());
    }
    let pivot: Vec<Rational> = p.t.row(0).to_vec();
    if pivot.iter().any(|x| !x.is_positive()) {
        return Err(Error::CannotNormalize);
    }
    let inv: Vec<Rational> = pivot.iter().map(|x| x.recip()).collect();
    CandidateParams::new(
        p.u.scale_cols(&pivot),
        p.v.clone(),
        p.w.clone(),
        p.s.scale_cols(&inv),
        p.t.scale_cols(&inv),
    )
}

/// How far a candidate is shown to be a maxout polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realizability {
    /// An explicit network maps to the candidate.
    Realized(MaxoutNetwork),
    /// The rank condition holds but no witness was found.
    NecessaryConditionHolds { rank: usize },
    /// The rank exceeds `n`, so the candidate is not in the image.
    FailsNecessaryCondition { rank: usize },
}

/// Looks for a network `(A, B, C, D)` with `φ = p`: the first layer solves
/// `[s; t] A = [v^T; w^T]` exactly, perturbed inside the solution space by a
/// seeded element, and `B = A + u^T`, `C = s`, `D = t`.
pub fn realizability(p: &CandidateParams, seed: u64) -> Result<Realizability> {
    let (holds, r) = rank_condition(p)?;
    if !holds {
        return Ok(Realizability::FailsNecessaryCondition { rank: r });
    }
    let lhs = p.s.vstack(&p.t)?;
    let rhs = p.v.transpose().vstack(&p.w.transpose())?;
    let Some(mut a) = solve(&lhs, &rhs)? else {
        return Ok(Realizability::NecessaryConditionHolds { rank: r });
    };
    let kernel = nullspace(&lhs);
    if !kernel.is_empty() {
        let mut rng = sampling::rng(seed);
        for col in 0..p.d {
            for k in &kernel {
                let coef = sampling::rational(&mut rng, -1000, 1000, 1000);
                for row in 0..p.n {
                    let x = a.get(row, col) + &k[row] * &coef;
                    a.set(row, col, x);
                }
            }
        }
    }
    let b = RMatrix::from_rows(
        (0..p.n)
            .map(|i| (0..p.d).map(|j| a.get(i, j) + p.u.get(j, i)).collect())
            .collect(),
    )?;
    let ones = RMatrix::new(1, p.m, (0..p.m).map(|_| int(1)).collect())?;
    let net = MaxoutNetwork::new(
        alloc::vec![p.d, p.n, p.m],
        alloc::vec![a, p.s.clone()],
        alloc::vec![b, p.t.clone()],
        ones,
    )?;
    if phi(&net)? == *p {
        Ok(Realizability::Realized(net))
    } else {
        Ok(Realizability::NecessaryConditionHolds { rank: r })
    }
}

/// Number of edges of a planar polytope; `None` outside dimension 2.
pub fn planar_edges(p: &Polytope) -> Option<usize> {
    (p.dim() == 2).then(|| p.num_facets())
}

/// Whether every zone direction is non-zero.
pub fn has_nonzero_zones(p: &CandidateParams) -> bool {
    (0..p.n).all(|i| !p.u.col_vector(i).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_polytope, sample_generic};
    use crate::polytope::{combinatorially_equivalent, normally_equivalent};
    use alloc::vec;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, d: &[i64]) -> RMatrix {
        RMatrix::from_ints(rows, cols, d).unwrap()
    }

    fn two_squares() -> CandidateParams {
        CandidateParams::new(
            m(2, 2, &[1, 0, 0, 1]),
            m(2, 1, &[0, 0]),
            m(2, 1, &[2, 2]),
            m(1, 2, &[1, 1]),
            m(1, 2, &[1, 1]),
        )
        .unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(candidate_space_dim(2, 1, 2), 13);
        assert_eq!(candidate_space_dim(2, 1, 1), 7);
        assert_eq!(candidate_space_dim(1, 1, 1), 4);
        assert_eq!(weight_space_dim(2, 1, 2), 7);
        assert_eq!(weight_space_dim(2, 2, 1), 10);
        assert_eq!(fiber_dim(2, 3, 1), 2);
        assert_eq!(fiber_dim(2, 1, 2), 0);
    }

    #[test]
    fn two_unit_squares() {
        let p = two_squares();
        assert_eq!(build_candidate(&p).unwrap().num_vertices(), 6);
        assert_eq!(rank_condition(&p).unwrap(), (true, 2));
        assert!(matches!(
            realizability(&p, 1).unwrap(),
            Realizability::NecessaryConditionHolds { .. }
        ));
    }

    #[test]
    fn hexagons_and_quadrilaterals() {
        let c = CandidateParams::random(2, 1, 2, 3).unwrap();
        assert_eq!(planar_edges(&build_candidate(&c).unwrap()), Some(6));
        assert_eq!(rank_condition(&c).unwrap(), (false, 3));
        let net = sample_generic(&[2, 1, 2], 3).unwrap().net;
        let image = phi(&net).unwrap();
        assert_eq!(rank_condition(&image).unwrap(), (true, 1));
        assert_eq!(planar_edges(&build_polytope(&net).unwrap()), Some(4));
        let big = CandidateParams::random(2, 1, 4, 9).unwrap();
        assert_eq!(
            planar_edges(&build_candidate(&big).unwrap()),
            Some(2 * 4 + 2)
        );
    }

    #[test]
    fn phi_basics() {
        let net = crate::network::from_int_weights(
            vec![2, 2],
            &[&[1, 0, 0, 1]],
            &[&[0, 1, 1, 0]],
            &[1, 1],
        )
        .unwrap();
        assert_eq!(
            phi(&net),
            Err(Error::WrongDepth {
                expected: 2,
                found: 1
            })
        );
        let same = crate::network::from_int_weights(
            vec![2, 2, 1],
            &[&[1, 2, 3, 4], &[1, 1]],
            &[&[1, 2, 3, 4], &[1, 1]],
            &[1],
        )
        .unwrap();
        let p = phi(&same).unwrap();
        assert!(p.u.is_zero());
        assert_eq!(p.v, p.w);
    }

    #[test]
    fn normalization() {
        let p = two_squares();
        assert_eq!(normalize_scaling(&p).unwrap(), p);
        let doubled = CandidateParams::new(
            p.u.clone(),
            p.v.clone(),
            p.w.clone(),
            m(1, 2, &[2, 2]),
            m(1, 2, &[2, 2]),
        )
        .unwrap();
        let n = normalize_scaling(&doubled).unwrap();
        assert_eq!(n.u, p.u.scale_cols(&[int(2), int(2)]));
        assert_eq!(n.t, m(1, 2, &[1, 1]));
        let zero = CandidateParams::new(
            p.u.clone(),
            p.v.clone(),
            p.w.clone(),
            m(1, 2, &[1, 1]),
            m(1, 2, &[0, 1]),
        )
        .unwrap();
        assert_eq!(normalize_scaling(&zero), Err(Error::CannotNormalize));
        assert_eq!(
            CandidateParams::new(
                p.u.clone(),
                p.v.clone(),
                p.w.clone(),
                m(1, 2, &[-1, 1]),
                m(1, 2, &[1, 1])
            ),
            Err(Error::NegativeScalar)
        );
    }

    #[test]
    fn realized_images() {
        let net = sample_generic(&[2, 1, 2], 5).unwrap().net;
        let image = phi(&net).unwrap();
        match realizability(&image, 0).unwrap() {
            Realizability::Realized(w) => assert_eq!(phi(&w).unwrap(), image),
            other => panic!("expected a witness, got {other:?}"),
        }
        let generic = CandidateParams::random(2, 1, 2, 5).unwrap();
        assert!(matches!(
            realizability(&generic, 0).unwrap(),
            Realizability::FailsNecessaryCondition { rank: 3 }
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn phi_commutes_with_building(seed in any::<u64>()) {
            let net = crate::network::MaxoutNetwork::random(&[2, 2, 1], seed).unwrap();
            let p = build_polytope(&net).unwrap();
            let q = build_candidate(&phi(&net).unwrap()).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert!(normally_equivalent(&p, &q) && combinatorially_equivalent(&p, &q));
        }

        #[test]
        fn scaling_action_preserves_candidate(seed in any::<u64>()) {
            let c = CandidateParams::random(2, 2, 2, seed).unwrap();
            let n = normalize_scaling(&c).unwrap();
            prop_assert_eq!(build_candidate(&c).unwrap(), build_candidate(&n).unwrap());
        }

        #[test]
        fn rank_condition_necessary(seed in any::<u64>(), shape in 0usize..3) {
            let dims = [[2, 1, 2], [3, 2, 3], [2, 2, 2]][shape];
            let net = crate::network::MaxoutNetwork::random(&dims, seed).unwrap();
            prop_assert!(rank_condition(&phi(&net).unwrap()).unwrap().0);
        }

        #[test]
        fn phi_equivariant(seed in any::<u64>(), lam in prop::collection::vec(1i64..50, 2)) {
            let net = crate::network::MaxoutNetwork::random(&[2, 2, 1], seed).unwrap();
            let l: Vec<Rational> = lam.iter().map(|&x| int(x)).collect();
            let inv: Vec<Rational> = l.iter().map(|x| x.recip()).collect();
            let scaled = MaxoutNetwork::new(
                net.dims().to_vec(),
                alloc::vec![net.a(1).scale_rows(&inv), net.a(2).scale_cols(&l)],
                alloc::vec![net.b(1).scale_rows(&inv), net.b(2).scale_cols(&l)],
                net.c().clone(),
            ).unwrap();
            prop_assert_eq!(
                normalize_scaling(&phi(&scaled).unwrap()).unwrap(),
                normalize_scaling(&phi(&net).unwrap()).unwrap()
            );
        }
    }
}
