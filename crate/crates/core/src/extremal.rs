//! Extremal boxtopes and zonoboxtopes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::network::MaxoutNetwork;
use crate::polytope::{conv_union, hull, minkowski_sum, zonotope, Polytope};
use crate::ratgeom::{from_f64_rounded, int, primitive_ray, rat, RMatrix, RVector, Rational};
use crate::sampling;
use crate::{Error, Result};

/// Integer polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPolynomial(pub Vec<i64>);

impl FPolynomial {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        FPolynomial(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + o.0.get(i).unwrap_or(&0))
                .collect(),
        )
        .trim()
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&FPolynomial(o.0.iter().map(|c| -c).collect()))
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FPolynomial(out).trim()
    }

    fn pow(&self, k: usize) -> Self {
        (0..k).fold(FPolynomial(vec![1]), |acc, _| acc.mul(self))
    }

    fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        FPolynomial(c)
    }
}

/// `(2+x)^d + (1+x)((2+x)^⌈d/2⌉ − x^⌈d/2⌉)((2+x)^⌊d/2⌋ − x^⌊d/2⌋)`.
pub fn f_polynomial_bd(d: usize) -> FPolynomial {
    let two_x = FPolynomial(vec![2, 1]);
    let (c, f) = (d.div_ceil(2), d / 2);
    let left = two_x.pow(c).sub(&FPolynomial::monomial(c));
    let right = two_x.pow(f).sub(&FPolynomial::monomial(f));
    two_x
        .pow(d)
        .add(&FPolynomial(vec![1, 1]).mul(&left).mul(&right))
}

fn box_vertices(bounds: &[(i64, i64)]) -> Vec<RVector> {
    let d = bounds.len();
    (0..1usize << d)
        .map(|m| {
            RVector::new(
                (0..d)
                    .map(|i| {
                        int(if m >> i & 1 == 1 {
                            bounds[i].1
                        } else {
                            bounds[i].0
                        })
                    })
                    .collect(),
            )
        })
        .collect()
}

fn hull_of_boxes(a: &[(i64, i64)], b: &[(i64, i64)]) -> Result<Polytope> {
    let mut pts = box_vertices(a);
    pts.extend(box_vertices(b));
    hull(&pts)
}

/// `conv([-1,1]^⌈d/2⌉ × [-2,2]^⌊d/2⌋ ∪ [-2,2]^⌈d/2⌉ × [-1,1]^⌊d/2⌋)`.
pub fn build_bd(d: usize) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let c = d.div_ceil(2);
    let a: Vec<(i64, i64)> = (0..d)
        .map(|i| if i < c { (-1, 1) } else { (-2, 2) })
        .collect();
    let b: Vec<(i64, i64)> = (0..d)
        .map(|i| if i < c { (-2, 2) } else { (-1, 1) })
        .collect();
    hull_of_boxes(&a, &b)
}

/// The two boxes whose convex hull is `B_d`.
pub fn bd_boxes(d: usize) -> Result<(Polytope, Polytope)> {
    let c = d.div_ceil(2);
    let a: Vec<(i64, i64)> = (0..d)
        .map(|i| if i < c { (-1, 1) } else { (-2, 2) })
        .collect();
    let b: Vec<(i64, i64)> = (0..d)
        .map(|i| if i < c { (-2, 2) } else { (-1, 1) })
        .collect();
    Ok((hull(&box_vertices(&a))?, hull(&box_vertices(&b))?))
}

/// Per-coordinate `(lo, hi)` bounds of a box.
type Bounds = Vec<(i64, i64)>;

fn bd_prime_bounds(d: usize) -> Result<(Bounds, Bounds)> {
    if d.is_multiple_of(2) || d < 3 {
        return Err(Error::EvenDimension(d));
    }
    let f = d / 2;
    let a = (0..d)
        .map(|i| {
            if i < f {
                (-1, 1)
            } else if i == f {
                (-2, 1)
            } else {
                (-2, 2)
            }
        })
        .collect();
    let b = (0..d)
        .map(|i| {
            if i < f {
                (-2, 2)
            } else if i == f {
                (-1, 2)
            } else {
                (-1, 1)
            }
        })
        .collect();
    Ok((a, b))
}

/// `conv([-1,1]^⌊d/2⌋ × [-2,1] × [-2,2]^⌊d/2⌋ ∪ [-2,2]^⌊d/2⌋ × [-1,2] × [-1,1]^⌊d/2⌋)` for odd `d >= 3`.
pub fn build_bd_prime(d: usize) -> Result<Polytope> {
    let (a, b) = bd_prime_bounds(d)?;
    hull_of_boxes(&a, &b)
}

/// The two boxes whose convex hull is `B_d'`.
pub fn bd_prime_boxes(d: usize) -> Result<(Polytope, Polytope)> {
    let (a, b) = bd_prime_bounds(d)?;
    Ok((hull(&box_vertices(&a))?, hull(&box_vertices(&b))?))
}

/// `conv(Σ a_i I_i ∪ Σ b_i I_i)` with segments `I_i = conv(p_i, q_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxtopeData {
    pub segments: Vec<(RVector, RVector)>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl BoxtopeData {
    pub fn dim(&self) -> usize {
        self.segments[0].0.dim()
    }

    pub fn build(&self) -> Result<Polytope> {
        let pa = scaled_segment_sum(&self.segments, &self.a)?;
        let pb = scaled_segment_sum(&self.segments, &self.b)?;
        conv_union(&pa, &pb)
    }

    /// Network of type `(d, n, 1)`: the first layer produces the segment
    /// endpoints, the second layer holds the scalings.
    pub fn to_network(&self) -> Result<MaxoutNetwork> {
        let d = self.dim();
        let n = self.segments.len();
        let a1 = RMatrix::from_rows(
            self.segments
                .iter()
                .map(|(p, _)| p.entries().to_vec())
                .collect(),
        )?;
        let b1 = RMatrix::from_rows(
            self.segments
                .iter()
                .map(|(_, q)| q.entries().to_vec())
                .collect(),
        )?;
        let a2 = RMatrix::new(1, n, self.a.clone())?;
        let b2 = RMatrix::new(1, n, self.b.clone())?;
        MaxoutNetwork::new(
            vec![d, n, 1],
            vec![a1, a2],
            vec![b1, b2],
            RMatrix::new(1, 1, vec![int(1)])?,
        )
    }
}

/// `Σ w_i conv(p_i, q_i)`.
pub fn scaled_segment_sum(segments: &[(RVector, RVector)], w: &[Rational]) -> Result<Polytope> {
    let dim = segments.first().ok_or(Error::EmptyInput)?.0.dim();
    let base = segments
        .iter()
        .zip(w)
        .fold(RVector::zeros(dim), |acc, ((p, _), x)| &acc + &p.scale(x));
    let gens: Vec<RVector> = segments
        .iter()
        .zip(w)
        .map(|((p, q), x)| (q - p).scale(x))
        .collect();
    zonotope(&base, &gens)
}

fn bd_scalings(d: usize) -> (Vec<Rational>, Vec<Rational>) {
    let c = d.div_ceil(2);
    let a = (1..=d).map(|i| int(if i <= c { 1 } else { 2 })).collect();
    let b = (1..=d).map(|i| int(if i <= c { 2 } else { 1 })).collect();
    (a, b)
}

/// Segments `conv(-e_i, e_i)` with scalings 1, 2 split at `⌈d/2⌉`.
pub fn realize_bd_data(d: usize) -> Result<BoxtopeData> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "B_d realization needs d >= 2, got {d}"
        )));
    }
    let segments = (0..d)
        .map(|i| (-&RVector::unit(d, i), RVector::unit(d, i)))
        .collect();
    let (a, b) = bd_scalings(d);
    Ok(BoxtopeData { segments, a, b })
}

pub fn realize_bd_network(d: usize) -> Result<MaxoutNetwork> {
    realize_bd_data(d)?.to_network()
}

/// Translated segments at indices `1`, `⌈d/2⌉`, `d` realizing `B_d'` for odd `d >= 3`.
pub fn realize_bd_prime_network(d: usize) -> Result<BoxtopeData> {
    if d.is_multiple_of(2) || d < 3 {
        return Err(Error::EvenDimension(d));
    }
    let c = d.div_ceil(2);
    let e = |i: usize| RVector::unit(d, i - 1);
    let half = rat(1, 2);
    let segments = (1..=d)
        .map(|i| {
            if i == 1 {
                let s = e(c).scale(&half);
                (&-&e(1) + &s, &e(1) + &s)
            } else if i == c {
                let s = e(c).scale(&rat(3, 2));
                (-&s, s)
            } else if i == d {
                let s = e(c).scale(&half);
                (&-&e(d) - &s, &e(d) - &s)
            } else {
                (-&e(i), e(i))
            }
        })
        .collect();
    let (a, _) = bd_scalings(d);
    let b = (1..=d).map(|i| int(if i < c { 2 } else { 1 })).collect();
    Ok(BoxtopeData { segments, a, b })
}

/// `Q = Σ z_i I_i + conv(Σ a_i I_i ∪ Σ b_i I_i)` with `a_i b_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredZonoboxtope {
    pub segments: Vec<(RVector, RVector)>,
    pub z: Vec<Rational>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl FactoredZonoboxtope {
    pub fn dim(&self) -> usize {
        self.segments[0].0.dim()
    }

    pub fn zonotope_part(&self) -> Result<Polytope> {
        scaled_segment_sum(&self.segments, &self.z)
    }

    /// `conv(Σ a_i I_i ∪ Σ b_i I_i)`.
    pub fn hull_part(&self) -> Result<Polytope> {
        BoxtopeData {
            segments: self.segments.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
        .build()
    }

    pub fn build(&self) -> Result<Polytope> {
        minkowski_sum(&self.zonotope_part()?, &self.hull_part()?)
    }

    /// The same polytope as an unfactored zonoboxtope with scalings `z + a`, `z + b`.
    pub fn unfactored(&self) -> BoxtopeData {
        let a = self.z.iter().zip(&self.a).map(|(z, x)| z + x).collect();
        let b = self.z.iter().zip(&self.b).map(|(z, x)| z + x).collect();
        BoxtopeData {
            segments: self.segments.clone(),
            a,
            b,
        }
    }
}

/// Splits `conv(Σ a_i I_i ∪ Σ b_i I_i)` into `Σ min(a_i, b_i) I_i` plus the hull
/// of the remainders `a_i - min`, `b_i - min`.
pub fn factor_zonoboxtope(
    a: &[Rational],
    b: &[Rational],
    segments: &[(RVector, RVector)],
) -> Result<FactoredZonoboxtope> {
    if a.len() != segments.len() || b.len() != segments.len() {
        return Err(Error::DimensionMismatch {
            expected: segments.len(),
            found: a.len().min(b.len()),
        });
    }
    if a.iter().chain(b).any(Signed::is_negative) {
        return Err(Error::NegativeScalar);
    }
    let z: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x.min(y).clone()).collect();
    let ap = a.iter().zip(&z).map(|(x, m)| x - m).collect();
    let bp = b.iter().zip(&z).map(|(x, m)| x - m).collect();
    Ok(FactoredZonoboxtope {
        segments: segments.to_vec(),
        z,
        a: ap,
        b: bp,
    })
}

fn direction_key(v: &RVector) -> Option<RVector> {
    let r = primitive_ray(v).ok()?;
    let first_nonzero = r.entries().iter().find(|x| !x.is_zero())?;
    Some(if first_nonzero.is_negative() { -&r } else { r })
}

/// Edges of `Z` plus edges of the hull part not parallel to any zone of `Z`.
pub fn edge_count_2d(q: &FactoredZonoboxtope) -> Result<usize> {
    if q.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "planar data required, got dimension {}",
            q.dim()
        )));
    }
    let mut zones: Vec<RVector> = q
        .segments
        .iter()
        .zip(&q.z)
        .filter(|(_, z)| z.is_positive())
        .filter_map(|((p, r), _)| direction_key(&(r - p)))
        .collect();
    zones.sort();
    zones.dedup();
    let hp = q.hull_part()?;
    let mixed = match hp.dim() {
        0 => 0,
        1 => {
            let dir =
                direction_key(&(&hp.vertices()[1] - &hp.vertices()[0])).expect("non-degenerate");
            if zones.contains(&dir) {
                0
            } else {
                2
            }
        }
        _ => hp
            .edges()
            .iter()
            .filter(|&&(i, j)| {
                let dir = direction_key(&(&hp.vertices()[j] - &hp.vertices()[i]))
                    .expect("non-degenerate");
                !zones.contains(&dir)
            })
            .count(),
    };
    Ok(2 * zones.len() + mixed)
}

/// Upper bound `2n + 4⌊n/2⌋` on edges of planar zonoboxtopes with `n` zones.
pub fn max_edges_2d(n: usize) -> usize {
    2 * n + 4 * (n / 2)
}

/// Segments `conv(-h, h)` whose sum is a regular `2k`-gon inscribed in the unit
/// circle with a vertex at angle `phase`, coordinates rounded to `digits`.
fn polygon_segments(k: usize, phase: f64, digits: u32) -> Vec<(RVector, RVector)> {
    let pi = core::f64::consts::PI;
    let r = libm::sin(pi / (2 * k) as f64);
    (0..k)
        .map(|t| {
            let ang = phase + pi / 2.0 + pi * (2 * t + 1) as f64 / (2 * k) as f64;
            let h = RVector::new(vec![
                from_f64_rounded(r * libm::cos(ang), digits),
                from_f64_rounded(r * libm::sin(ang), digits),
            ]);
            (-&h, h)
        })
        .collect()
}

/// Planar zonoboxtope with `2n + 4⌊n/2⌋` edges.
///
/// The hull part joins two regular polygons on the unit circle whose vertices
/// alternate, so each vertex of the smaller polygon meets two mixed edges; the
/// zonotope part uses every zone once. Coordinates are rational approximations
/// (10^-6, then 10^-12) and the edge count is verified exactly.
pub fn extremal_2d_zonoboxtope_data(n: usize) -> Result<FactoredZonoboxtope> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two zones, got {n}"
        )));
    }
    let pi = core::f64::consts::PI;
    let k = n / 2;
    for digits in [6u32, 12] {
        let (sa, sb) = if n.is_multiple_of(2) {
            (
                polygon_segments(k, 0.0, digits),
                polygon_segments(k, pi / (2 * k) as f64, digits),
            )
        } else {
            (
                polygon_segments(k, pi / (4 * k * (k + 1)) as f64, digits),
                polygon_segments(k + 1, 0.0, digits),
            )
        };
        let na = sa.len();
        let segments: Vec<(RVector, RVector)> = sa.into_iter().chain(sb).collect();
        let a = (0..n).map(|i| int(i64::from(i < na))).collect();
        let b = (0..n).map(|i| int(i64::from(i >= na))).collect();
        let z = vec![int(1); n];
        let q = FactoredZonoboxtope { segments, z, a, b };
        if q.build()?.num_facets() == max_edges_2d(n) {
            return Ok(q);
        }
    }
    Err(Error::Exhausted(format!(
        "rational approximation failed for n = {n}"
    )))
}

pub fn extremal_2d_zonoboxtope(n: usize) -> Result<Polytope> {
    extremal_2d_zonoboxtope_data(n)?.build()
}

/// Random factored zonoboxtope in `R^dim`.
///
/// Each segment joins two random integer points of `[-1000, 1000]^dim` and is
/// then centered at the origin. The remainders `a'` sit on the first `⌊n/2⌋`
/// zones and `b'` on the rest, drawn as `k/1000` with `k` in `[1, 1000]`; zone
/// weights are `max(a', b')`.
pub fn sample_factored(dim: usize, n: usize, seed: u64) -> FactoredZonoboxtope {
    let mut r = sampling::rng(seed);
    let mut segments = Vec::with_capacity(n);
    while segments.len() < n {
        let p = sampling::int_vector(&mut r, dim, -1000, 1000);
        let q = sampling::int_vector(&mut r, dim, -1000, 1000);
        if p != q {
            let mid = (&p + &q).scale(&rat(1, 2));
            segments.push((&p - &mid, &q - &mid));
        }
    }
    let split = n / 2;
    let w: Vec<Rational> = (0..n)
        .map(|_| sampling::rational(&mut r, 1, 1000, 1000))
        .collect();
    let a = (0..n)
        .map(|i| if i < split { w[i].clone() } else { int(0) })
        .collect();
    let b = (0..n)
        .map(|i| if i >= split { w[i].clone() } else { int(0) })
        .collect();
    FactoredZonoboxtope {
        segments,
        z: w,
        a,
        b,
    }
}

/// Random planar factored zonoboxtope with a random side for each remainder.
pub fn sample_factored_2d(n: usize, seed: u64) -> FactoredZonoboxtope {
    let mut r = sampling::rng(seed);
    let mut q = sample_factored(2, n, sampling::job_seed(seed, 1));
    for i in 0..n {
        let w = sampling::rational(&mut r, 1, 1000, 1000);
        let side_a = sampling::rational(&mut r, 0, 1, 1).is_zero();
        q.a[i] = if side_a { w.clone() } else { int(0) };
        q.b[i] = if side_a { int(0) } else { w.clone() };
        q.z[i] = w;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::build_polytope;
    use crate::polytope::{combinatorially_equivalent, f_vector, is_cubical};
    use proptest::prelude::*;

    #[test]
    fn boxtope_f_vectors() {
        assert_eq!(f_vector(&build_bd(3).unwrap()).0, vec![16, 28, 14]);
        assert_eq!(f_vector(&build_bd(1).unwrap()).0, vec![2]);
        assert_eq!(
            build_bd(1).unwrap().vertices(),
            &[RVector::from_ints(&[-2]), RVector::from_ints(&[2])]
        );
        let bp = build_bd_prime(3).unwrap();
        assert_eq!(f_vector(&bp).0, vec![16, 28, 14]);
        assert!(is_cubical(&bp));
        assert!(!combinatorially_equivalent(&bp, &build_bd(3).unwrap()));
        assert_eq!(build_bd_prime(4), Err(Error::EvenDimension(4)));
    }

    #[test]
    fn f_polynomials() {
        assert_eq!(f_polynomial_bd(3).0, vec![16, 28, 14, 1]);
        assert_eq!(f_polynomial_bd(1).0, vec![2, 1]);
        assert_eq!(f_polynomial_bd(4).0, vec![32, 80, 72, 24, 1]);
        assert_eq!(f_polynomial_bd(5).0, vec![64, 192, 232, 136, 34, 1]);
        for d in 2..=4 {
            assert_eq!(
                f_polynomial_bd(d).0,
                f_vector(&build_bd(d).unwrap())
                    .with_top()
                    .iter()
                    .map(|&x| x as i64)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn realizations() {
        let data = realize_bd_data(3).unwrap();
        assert_eq!(data.a, vec![int(1), int(1), int(2)]);
        assert_eq!(data.b, vec![int(2), int(2), int(1)]);
        assert_eq!(
            realize_bd_data(4).unwrap().a,
            vec![int(1), int(1), int(2), int(2)]
        );
        let net = realize_bd_network(3).unwrap();
        assert_eq!(build_polytope(&net).unwrap(), build_bd(3).unwrap());
        let prime = realize_bd_prime_network(3).unwrap();
        assert_eq!(prime.b, vec![int(2), int(1), int(1)]);
        assert_eq!(
            prime.segments[0].0,
            RVector::new(vec![int(-1), rat(1, 2), int(0)])
        );
        assert_eq!(prime.build().unwrap(), build_bd_prime(3).unwrap());
        assert_eq!(
            build_polytope(&prime.to_network().unwrap()).unwrap(),
            build_bd_prime(3).unwrap()
        );
        assert_eq!(realize_bd_prime_network(2), Err(Error::EvenDimension(2)));
    }

    #[test]
    fn factoring() {
        let segs: Vec<(RVector, RVector)> = vec![
            (RVector::from_ints(&[0, 0]), RVector::from_ints(&[1, 0])),
            (RVector::from_ints(&[0, 0]), RVector::from_ints(&[0, 1])),
        ];
        let f = factor_zonoboxtope(&[int(3), int(0)], &[int(1), int(2)], &segs).unwrap();
        assert_eq!(f.a, vec![int(2), int(0)]);
        assert_eq!(f.b, vec![int(0), int(2)]);
        assert_eq!(f.z, vec![int(1), int(0)]);
        let same = factor_zonoboxtope(&[int(2), int(1)], &[int(2), int(1)], &segs).unwrap();
        assert!(same.a.iter().chain(&same.b).all(Zero::is_zero));
        assert_eq!(
            factor_zonoboxtope(&[int(-1), int(0)], &[int(1), int(1)], &segs),
            Err(Error::NegativeScalar)
        );
    }

    #[test]
    fn planar_extremes() {
        for (n, e) in [(2, 8), (3, 10), (4, 16), (5, 18)] {
            let q = extremal_2d_zonoboxtope_data(n).unwrap();
            assert_eq!(edge_count_2d(&q).unwrap(), e);
            assert_eq!(q.build().unwrap().num_facets(), e);
        }
        let pure = FactoredZonoboxtope {
            segments: sample_factored(2, 3, 1).segments,
            z: vec![int(1); 3],
            a: vec![int(0); 3],
            b: vec![int(0); 3],
        };
        assert_eq!(edge_count_2d(&pure).unwrap(), 6);
        let three_d = sample_factored(3, 3, 1);
        assert!(edge_count_2d(&three_d).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn factoring_preserves_polytope(seed in any::<u64>(), n in 2usize..4) {
            let mut r = sampling::rng(seed);
            let segs: Vec<(RVector, RVector)> = (0..n)
                .map(|_| (sampling::int_vector(&mut r, 2, -5, 5), sampling::int_vector(&mut r, 2, -5, 5)))
                .collect();
            let a: Vec<Rational> = (0..n).map(|_| sampling::rational(&mut r, 0, 4, 1)).collect();
            let b: Vec<Rational> = (0..n).map(|_| sampling::rational(&mut r, 0, 4, 1)).collect();
            let original = BoxtopeData { segments: segs.clone(), a: a.clone(), b: b.clone() }.build().unwrap();
            let f = factor_zonoboxtope(&a, &b, &segs).unwrap();
            prop_assert!(f.a.iter().zip(&f.b).all(|(x, y)| (x * y).is_zero()));
            prop_assert_eq!(f.build().unwrap(), original);
        }

        #[test]
        fn planar_formula_matches_hull(seed in any::<u64>(), n in 2usize..6) {
            let q = sample_factored_2d(n, seed);
            let p = q.build().unwrap();
            prop_assert_eq!(edge_count_2d(&q).unwrap(), p.num_facets());
            prop_assert!(p.num_facets() <= max_edges_2d(n));
        }
    }
}
