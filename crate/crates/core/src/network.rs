//! Input-convex maxout networks and their Newton polytopes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::polytope::{dilate, hull, minkowski_sum, Polytope};
use crate::ratgeom::{int, rank, RMatrix, RVector, Rational};
use crate::sampling;
use crate::{Error, Result};

/// Layer widths `(m_0, m_1, ..., m_l)`; `m_0` is the input dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetworkType(pub Vec<usize>);

impl NetworkType {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidArgument(
                "layer widths must be positive".to_string(),
            ));
        }
        Ok(NetworkType(dims))
    }

    pub fn input_dim(&self) -> usize {
        self.0[0]
    }

    pub fn depth(&self) -> usize {
        self.0.len() - 1
    }

    /// Total number of hidden neurons.
    pub fn hidden(&self) -> usize {
        self.0[1..].iter().sum()
    }

    /// No hidden layer before the last is narrower than the input.
    pub fn has_no_bottleneck(&self) -> bool {
        let l = self.depth();
        l == 0 || self.0[1..l].iter().all(|&m| m >= self.0[0])
    }
}

/// `f(x) = C max(A_l ... max(A_1 x, B_1 x) ..., B_l ...)` with entrywise maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxoutNetwork {
    net_type: NetworkType,
    a: Vec<RMatrix>,
    b: Vec<RMatrix>,
    c: RMatrix,
}

/// A weight that breaks input convexity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// `"A"`, `"B"` or `"C"`.
    pub matrix: &'static str,
    /// 1-based layer index; 0 for `C`.
    pub layer: usize,
    pub row: usize,
    pub col: usize,
    pub value: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.matrix == "C" {
            write!(f, "C[{}] = {} is negative", self.col, self.value)
        } else {
            write!(
                f,
                "{}{}[{}][{}] = {} is negative",
                self.matrix, self.layer, self.row, self.col, self.value
            )
        }
    }
}

impl MaxoutNetwork {
    /// Checks shapes against `dims`; sign constraints are reported by [`validate`].
    pub fn new(dims: Vec<usize>, a: Vec<RMatrix>, b: Vec<RMatrix>, c: RMatrix) -> Result<Self> {
        let net_type = NetworkType::new(dims)?;
        let l = net_type.depth();
        if a.len() != l || b.len() != l {
            return Err(Error::Shape(format!(
                "expected {l} weight matrices per side"
            )));
        }
        for i in 0..l {
            let (r, k) = (net_type.0[i + 1], net_type.0[i]);
            for (name, m) in [("A", &a[i]), ("B", &b[i])] {
                if m.rows() != r || m.cols() != k {
                    return Err(Error::Shape(format!(
                        "{name}{} is {}x{}, expected {r}x{k}",
                        i + 1,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        let last = net_type.0[l];
        if c.rows() != 1 || c.cols() != last {
            return Err(Error::Shape(format!(
                "C is {}x{}, expected 1x{last}",
                c.rows(),
                c.cols()
            )));
        }
        Ok(MaxoutNetwork { net_type, a, b, c })
    }

    pub fn net_type(&self) -> &NetworkType {
        &self.net_type
    }

    pub fn dims(&self) -> &[usize] {
        &self.net_type.0
    }

    pub fn input_dim(&self) -> usize {
        self.net_type.input_dim()
    }

    pub fn depth(&self) -> usize {
        self.net_type.depth()
    }

    /// `A_i` for `i` in `1..=depth`.
    pub fn a(&self, i: usize) -> &RMatrix {
        &self.a[i - 1]
    }

    pub fn b(&self, i: usize) -> &RMatrix {
        &self.b[i - 1]
    }

    pub fn c(&self) -> &RMatrix {
        &self.c
    }

    fn all_weights(&self) -> impl Iterator<Item = &Rational> {
        self.a
            .iter()
            .chain(self.b.iter())
            .flat_map(|m| m.entries().iter())
            .chain(self.c.entries().iter())
    }

    pub fn has_zero_weight(&self) -> bool {
        self.all_weights().any(Zero::is_zero)
    }

    /// Random network with first-layer weights `k/1000`, `k` in `[-1000, 1000]`,
    /// and later weights `k/1000`, `k` in `[1, 1000]`.
    pub fn random(dims: &[usize], seed: u64) -> Result<Self> {
        let t = NetworkType::new(dims.to_vec())?;
        let mut r = sampling::rng(seed);
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..t.depth() {
            let lo = if i == 0 { -1000 } else { 1 };
            a.push(sampling::matrix(
                &mut r,
                dims[i + 1],
                dims[i],
                lo,
                1000,
                1000,
            ));
            b.push(sampling::matrix(
                &mut r,
                dims[i + 1],
                dims[i],
                lo,
                1000,
                1000,
            ));
        }
        let c = sampling::matrix(&mut r, 1, dims[t.depth()], 1, 1000, 1000);
        MaxoutNetwork::new(dims.to_vec(), a, b, c)
    }
}

/// Outcome of generic sampling with retries.
#[derive(Clone, Debug)]
pub struct GenericSample {
    pub net: MaxoutNetwork,
    pub seed: u64,
    /// One entry per rejected draw, naming the failed predicate.
    pub rejected: Vec<String>,
}

pub const MAX_RETRIES: u64 = 32;

/// Random network passing the testable genericity predicates: all weights are
/// non-zero and, for types without a bottleneck, edge directions are independent.
pub fn sample_generic(dims: &[usize], seed: u64) -> Result<GenericSample> {
    let t = NetworkType::new(dims.to_vec())?;
    let mut rejected = Vec::new();
    for attempt in 0..=MAX_RETRIES {
        let s = seed.wrapping_add(attempt);
        let net = MaxoutNetwork::random(dims, s)?;
        if net.has_zero_weight() {
            rejected.push(format!("seed {s}: zero weight"));
            continue;
        }
        if t.has_no_bottleneck() && t.hidden() <= MAX_WORD_LENGTH && !edge_independence_check(&net)?
        {
            rejected.push(format!("seed {s}: edge directions dependent"));
            continue;
        }
        return Ok(GenericSample {
            net,
            seed: s,
            rejected,
        });
    }
    Err(Error::Exhausted(format!(
        "no generic network of type {dims:?} after {MAX_RETRIES} retries"
    )))
}

/// Every negative entry among `A_i, B_i` (`i >= 2`) and `C`.
pub fn validate(net: &MaxoutNetwork) -> core::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    for i in 2..=net.depth() {
        for (name, m) in [("A", net.a(i)), ("B", net.b(i))] {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if m.get(r, c).is_negative() {
                        out.push(Violation {
                            matrix: name,
                            layer: i,
                            row: r,
                            col: c,
                            value: m.get(r, c).clone(),
                        });
                    }
                }
            }
        }
    }
    for c in 0..net.c.cols() {
        if net.c.get(0, c).is_negative() {
            out.push(Violation {
                matrix: "C",
                layer: 0,
                row: 0,
                col: c,
                value: net.c.get(0, c).clone(),
            });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn ensure_valid(net: &MaxoutNetwork) -> Result<()> {
    validate(net).map_err(|v| Error::InvalidNetwork(v.iter().map(ToString::to_string).collect()))
}

/// `Σ_j w_j P_j`; weights may be negative only on single points.
pub fn weighted_sum(weights: &[Rational], polys: &[Polytope]) -> Result<Polytope> {
    let dim = polys.first().ok_or(Error::EmptyInput)?.ambient_dim();
    let mut shift = RVector::zeros(dim);
    let mut acc: Option<Polytope> = None;
    for (w, p) in weights.iter().zip(polys) {
        if w.is_zero() {
            continue;
        }
        if p.num_vertices() == 1 {
            shift = &shift + &p.vertices()[0].scale(w);
            continue;
        }
        let q = dilate(p, w)?;
        acc = Some(match acc {
            None => q,
            Some(a) => minkowski_sum(&a, &q)?,
        });
    }
    match acc {
        None => hull(&[shift]),
        Some(a) => a.translate(&shift),
    }
}

/// The polytopes `P_{k,i}` for every layer `k = 0..=l`.
pub fn build_layers(net: &MaxoutNetwork) -> Result<Vec<Vec<Polytope>>> {
    ensure_valid(net)?;
    let d = net.input_dim();
    let mut layers = vec![(0..d)
        .map(|i| hull(&[RVector::unit(d, i)]))
        .collect::<Result<Vec<_>>>()?];
    for k in 1..=net.depth() {
        let prev = &layers[k - 1];
        let (a, b) = (net.a(k), net.b(k));
        let mut cur = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            let pa = weighted_sum(a.row(i), prev)?;
            let pb = weighted_sum(b.row(i), prev)?;
            let pts: Vec<RVector> = pa.vertices().iter().chain(pb.vertices()).cloned().collect();
            cur.push(hull(&pts)?);
        }
        layers.push(cur);
    }
    Ok(layers)
}

/// Newton polytope of the network function, in `R^{m_0}`.
pub fn build_polytope(net: &MaxoutNetwork) -> Result<Polytope> {
    let layers = build_layers(net)?;
    weighted_sum(net.c.row(0), layers.last().expect("input layer"))
}

/// Forward pass `f(x)`.
pub fn support_eval(net: &MaxoutNetwork, x: &RVector) -> Result<Rational> {
    if x.dim() != net.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: net.input_dim(),
            found: x.dim(),
        });
    }
    let mut h = x.clone();
    for k in 1..=net.depth() {
        let ya = net.a(k).mul_vec(&h)?;
        let yb = net.b(k).mul_vec(&h)?;
        h = RVector::new(
            ya.entries()
                .iter()
                .zip(yb.entries())
                .map(|(p, q)| p.max(q).clone())
                .collect(),
        );
    }
    Ok(net.c.row_vector(0).dot(&h))
}

/// Word length limit for explicit enumeration.
pub const MAX_WORD_LENGTH: usize = 20;

/// Choice of `A` (`a`) or `B` (`b`) rows for every hidden neuron, layer by layer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<bool>,
    widths: Vec<usize>,
}

impl Word {
    /// `letters[k]` is true for `a`.
    pub fn new(letters: Vec<bool>, widths: Vec<usize>) -> Result<Self> {
        let m: usize = widths.iter().sum();
        if letters.len() != m {
            return Err(Error::WordLength {
                expected: m,
                found: letters.len(),
            });
        }
        Ok(Word { letters, widths })
    }

    pub fn parse(s: &str, widths: Vec<usize>) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| *c != '|')
            .map(|c| match c {
                'a' => Ok(true),
                'b' => Ok(false),
                other => Err(Error::InvalidArgument(format!(
                    "letter {other:?} not in {{a, b}}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, widths)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[bool] {
        &self.letters
    }

    /// Letters of layer `i` (1-based).
    pub fn subword(&self, i: usize) -> &[bool] {
        let start: usize = self.widths[..i - 1].iter().sum();
        &self.letters[start..start + self.widths[i - 1]]
    }

    /// The word with letter `k` flipped.
    pub fn flip(&self, k: usize) -> Word {
        let mut w = self.clone();
        w.letters[k] = !w.letters[k];
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, _) in self.widths.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for &l in self.subword(i + 1) {
                f.write_str(if l { "a" } else { "b" })?;
            }
        }
        Ok(())
    }
}

/// All `2^M` words of a network, `M <= 20`.
pub fn all_words(net: &MaxoutNetwork) -> Result<Vec<Word>> {
    let widths = net.dims()[1..].to_vec();
    let m = net.net_type.hidden();
    if m > MAX_WORD_LENGTH {
        return Err(Error::TooManyWords(m));
    }
    (0..1usize << m)
        .map(|mask| Word::new((0..m).map(|k| mask >> k & 1 == 0).collect(), widths.clone()))
        .collect()
}

/// `W^σ = C_l^{σ_l} ... C_1^{σ_1}` and `V^σ = (C W^σ)^T`.
pub fn word_matrices(net: &MaxoutNetwork, w: &Word) -> Result<(RMatrix, RVector)> {
    let widths = &net.dims()[1..];
    if w.widths != widths {
        return Err(Error::WordLength {
            expected: net.net_type.hidden(),
            found: w.len(),
        });
    }
    let mut acc = RMatrix::identity(net.input_dim());
    for i in 1..=net.depth() {
        let sub = w.subword(i);
        let rows: Vec<Vec<Rational>> = sub
            .iter()
            .enumerate()
            .map(|(k, &l)| if l { net.a(i) } else { net.b(i) }.row(k).to_vec())
            .collect();
        acc = RMatrix::from_rows(rows)?.mul(&acc)?;
    }
    let v = net.c.mul(&acc)?.row_vector(0);
    Ok((acc, v))
}

/// Newton polytope of the lifted function in `R^{d+M}`, each hidden neuron
/// contributing `±e_k` to its two branches.
pub fn build_big_cube(net: &MaxoutNetwork) -> Result<Polytope> {
    ensure_valid(net)?;
    if net.has_zero_weight() {
        return Err(Error::ZeroWeight);
    }
    let d = net.input_dim();
    let n = d + net.net_type.hidden();
    let mut prev: Vec<Polytope> = (0..d)
        .map(|i| hull(&[RVector::unit(n, i)]))
        .collect::<Result<_>>()?;
    let mut offset = d;
    for k in 1..=net.depth() {
        let (a, b) = (net.a(k), net.b(k));
        let mut cur = Vec::with_capacity(a.rows());
        for i in 0..a.rows() {
            let e = RVector::unit(n, offset + i);
            let pa = weighted_sum(a.row(i), &prev)?.translate(&e)?;
            let pb = weighted_sum(b.row(i), &prev)?.translate(&-&e)?;
            let pts: Vec<RVector> = pa.vertices().iter().chain(pb.vertices()).cloned().collect();
            cur.push(hull(&pts)?);
        }
        offset += a.rows();
        prev = cur;
    }
    weighted_sum(net.c.row(0), &prev)
}

/// Image of `P` under the coordinate projection onto `coords`.
pub fn project(p: &Polytope, coords: &[usize]) -> Result<Polytope> {
    let pts: Vec<RVector> = p.vertices().iter().map(|v| v.select(coords)).collect();
    hull(&pts)
}

/// Whether, at every word, the differences to any `min(d, M)` adjacent words
/// are linearly independent.
pub fn edge_independence_check(net: &MaxoutNetwork) -> Result<bool> {
    let words = all_words(net)?;
    let d = net.input_dim();
    let m = net.net_type.hidden();
    let k = d.min(m);
    let mut vs = Vec::with_capacity(words.len());
    for w in &words {
        vs.push(word_matrices(net, w)?.1);
    }
    // words are indexed by bitmask with bit k set for letter b
    let subsets = k_subsets(m, k);
    for (mask, v) in vs.iter().enumerate() {
        let diffs: Vec<Vec<Rational>> = (0..m)
            .map(|j| (v - &vs[mask ^ (1 << j)]).into_entries())
            .collect();
        for s in &subsets {
            let rows: Vec<Vec<Rational>> = s.iter().map(|&j| diffs[j].clone()).collect();
            if rank(&RMatrix::from_rows(rows)?) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Dimension of the polytope of a generic network of type `(d, n, m)`.
pub fn generic_dimension(d: usize, n: usize, m: usize, seed: u64) -> Result<usize> {
    let s = sample_generic(&[d, n, m], seed)?;
    Ok(build_polytope(&s.net)?.dim())
}

/// Network with the given weights in integer form, for examples and tests.
pub fn from_int_weights(
    dims: Vec<usize>,
    a: &[&[i64]],
    b: &[&[i64]],
    c: &[i64],
) -> Result<MaxoutNetwork> {
    let l = dims.len() - 1;
    let mut am = Vec::new();
    let mut bm = Vec::new();
    for i in 0..l {
        am.push(RMatrix::from_ints(dims[i + 1], dims[i], a[i])?);
        bm.push(RMatrix::from_ints(dims[i + 1], dims[i], b[i])?);
    }
    let c = RMatrix::new(1, c.len(), c.iter().map(|&x| int(x)).collect())?;
    MaxoutNetwork::new(dims, am, bm, c)
}
