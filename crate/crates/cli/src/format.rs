//! JSON file formats and OFF export. Rationals are strings `"p/q"`, or `"p"`
//! when the denominator is one; plain JSON integers are accepted on input.

use std::fmt::Write as _;

use maxout_core::candidate::CandidateParams;
use maxout_core::network::MaxoutNetwork;
use maxout_core::polytope::{hull, Facet};
use maxout_core::ratgeom::{format_rational, int, parse_rational, to_f64};
use maxout_core::{Polytope, RMatrix, RVector, Rational};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => parse_rational(&s).map(Rat).map_err(de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Rat(int(n.as_i64().unwrap()))),
            other => Err(de::Error::custom(format!(
                "expected a rational string, found {other}"
            ))),
        }
    }
}

type Rows = Vec<Vec<Rat>>;

fn vector_json(v: &RVector) -> Vec<Rat> {
    v.entries().iter().cloned().map(Rat).collect()
}

fn vector_from(v: &[Rat]) -> RVector {
    RVector::new(v.iter().map(|r| r.0.clone()).collect())
}

pub fn matrix_json(m: &RMatrix) -> Rows {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Rat).collect())
        .collect()
}

fn matrix_from(rows: &Rows, name: &str) -> Result<RMatrix, String> {
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    if rows.is_empty() || rows[0].is_empty() {
        return Err(format!("{name}: empty matrix"));
    }
    RMatrix::from_rows(rows).map_err(|e| format!("{name}: {e}"))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetJson {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    pub vertices: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetJson>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeJson {
            ambient_dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(vector_json).collect(),
            facets: Some(
                p.facets()
                    .iter()
                    .map(|f| FacetJson {
                        normal: vector_json(&f.normal),
                        offset: Rat(f.offset.clone()),
                    })
                    .collect(),
            ),
        }
    }

    /// Hull of the listed points; listed facets must match the computed ones.
    pub fn to_polytope(&self) -> Result<Polytope, String> {
        if self.vertices.is_empty() {
            return Err("polytope has no vertices".into());
        }
        if let Some(i) = self
            .vertices
            .iter()
            .position(|v| v.len() != self.ambient_dim)
        {
            return Err(format!(
                "vertex {i} has {} coordinates, expected {}",
                self.vertices[i].len(),
                self.ambient_dim
            ));
        }
        let pts: Vec<RVector> = self.vertices.iter().map(|v| vector_from(v)).collect();
        let p = hull(&pts).map_err(|e| e.to_string())?;
        if let Some(facets) = &self.facets {
            let mut given: Vec<Facet> = facets
                .iter()
                .map(|f| Facet {
                    normal: vector_from(&f.normal),
                    offset: f.offset.0.clone(),
                })
                .collect();
            given.sort();
            if given != p.facets() {
                return Err("listed facets do not match the hull of the vertices".into());
            }
        }
        Ok(p)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkJson {
    #[serde(rename = "type")]
    pub net_type: Vec<usize>,
    #[serde(rename = "A")]
    pub a: Vec<Rows>,
    #[serde(rename = "B")]
    pub b: Vec<Rows>,
    #[serde(rename = "C")]
    pub c: OutputWeights,
}

/// `C` as a single row or as a `1 x m` matrix.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutputWeights {
    Row(Vec<Rat>),
    Matrix(Rows),
}

impl NetworkJson {
    pub fn from_network(net: &MaxoutNetwork) -> Self {
        NetworkJson {
            net_type: net.dims().to_vec(),
            a: (1..=net.depth()).map(|i| matrix_json(net.a(i))).collect(),
            b: (1..=net.depth()).map(|i| matrix_json(net.b(i))).collect(),
            c: OutputWeights::Row(net.c().row(0).iter().cloned().map(Rat).collect()),
        }
    }

    pub fn to_network(&self) -> Result<MaxoutNetwork, String> {
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from(m, &format!("A{}", i + 1)))
            .collect::<Result<_, _>>()?;
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from(m, &format!("B{}", i + 1)))
            .collect::<Result<_, _>>()?;
        let c = match &self.c {
            OutputWeights::Row(r) => matrix_from(&vec![r.clone()], "C")?,
            OutputWeights::Matrix(m) => matrix_from(m, "C")?,
        };
        MaxoutNetwork::new(self.net_type.clone(), a, b, c).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateJson {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub u: Rows,
    pub v: Rows,
    pub w: Rows,
    pub s: Rows,
    pub t: Rows,
}

impl CandidateJson {
    pub fn from_params(p: &CandidateParams) -> Self {
        CandidateJson {
            d: p.d,
            n: p.n,
            m: p.m,
            u: matrix_json(&p.u),
            v: matrix_json(&p.v),
            w: matrix_json(&p.w),
            s: matrix_json(&p.s),
            t: matrix_json(&p.t),
        }
    }

    pub fn to_params(&self) -> Result<CandidateParams, String> {
        let p = CandidateParams::new(
            matrix_from(&self.u, "u")?,
            matrix_from(&self.v, "v")?,
            matrix_from(&self.w, "w")?,
            matrix_from(&self.s, "s")?,
            matrix_from(&self.t, "t")?,
        )
        .map_err(|e| e.to_string())?;
        if (p.d, p.n, p.m) != (self.d, self.n, self.m) {
            return Err(format!(
                "matrices have (d, n, m) = ({}, {}, {}), header says ({}, {}, {})",
                p.d, p.n, p.m, self.d, self.n, self.m
            ));
        }
        Ok(p)
    }
}

/// Zonotope generators, optionally translated by `base`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsJson {
    pub generators: Rows,
    #[serde(default)]
    pub base: Option<Vec<Rat>>,
}

impl GeneratorsJson {
    pub fn to_vectors(&self) -> Result<(RVector, Vec<RVector>), String> {
        let dim = self.generators.first().ok_or("no generators")?.len();
        if self.generators.iter().any(|g| g.len() != dim) {
            return Err("generators have different lengths".into());
        }
        let base = match &self.base {
            Some(b) if b.len() != dim => return Err("base has the wrong length".into()),
            Some(b) => vector_from(b),
            None => RVector::zeros(dim),
        };
        Ok((
            base,
            self.generators.iter().map(|g| vector_from(g)).collect(),
        ))
    }
}

/// Dual graph with its cells given directly.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceJson {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub cells: Vec<Vec<usize>>,
}

pub fn polytope_to_value(p: &Polytope) -> serde_json::Value {
    serde_json::to_value(PolytopeJson::from_polytope(p)).expect("polytope serializes")
}

/// Vertices of a 2-face of a 3-polytope in boundary order, counter-clockwise
/// seen from outside.
fn cyclic_order(
    p: &Polytope,
    face: &[usize],
    edges: &[(usize, usize)],
    normal: &RVector,
) -> Vec<usize> {
    let inside: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|(a, b)| face.contains(a) && face.contains(b))
        .collect();
    let mut order = vec![face[0]];
    while order.len() < face.len() {
        let last = *order.last().unwrap();
        let next = inside
            .iter()
            .filter_map(|&(a, b)| {
                if a == last {
                    Some(b)
                } else if b == last {
                    Some(a)
                } else {
                    None
                }
            })
            .find(|v| !order.contains(v))
            .expect("face boundary is a cycle");
        order.push(next);
    }
    let v = p.vertices();
    let (e1, e2) = (&v[order[1]] - &v[order[0]], &v[order[2]] - &v[order[0]]);
    let cross = RVector::new(vec![
        &e1[1] * &e2[2] - &e1[2] * &e2[1],
        &e1[2] * &e2[0] - &e1[0] * &e2[2],
        &e1[0] * &e2[1] - &e1[1] * &e2[0],
    ]);
    if cross.dot(normal) < int(0) {
        order[1..].reverse();
    }
    order
}

/// OFF text for a 3-polytope in R^3 or a polygon in R^2. Coordinates are
/// decimal approximations, so the file is for viewing only.
pub fn to_off(p: &Polytope) -> Result<String, String> {
    let mut out = String::from("OFF\n# display only: coordinates are rounded decimals\n");
    match (p.ambient_dim(), p.dim()) {
        (3, 3) => {
            let edges: Vec<(usize, usize)> = p.edges();
            writeln!(out, "{} {} {}", p.num_vertices(), p.num_facets(), edges.len()).unwrap();
            write_coords(&mut out, p, false);
            for (j, f) in p.facets().iter().enumerate() {
                let face: Vec<usize> = p.facet_vertices(j).iter().collect();
                let order = cyclic_order(p, &face, &edges, &f.normal);
                write_face(&mut out, &order);
            }
        }
        (2, 2) => {
            let mut order = vec![0];
            let edges = p.edges();
            while order.len() < p.num_vertices() {
                let last = *order.last().unwrap();
                let next = edges
                    .iter()
                    .filter_map(|&(a, b)| if a == last { Some(b) } else if b == last { Some(a) } else { None })
                    .find(|v| !order.contains(v))
                    .expect("polygon boundary is a cycle");
                order.push(next);
            }
            writeln!(out, "{} 1 {}", p.num_vertices(), edges.len()).unwrap();
            write_coords(&mut out, p, true);
            write_face(&mut out, &order);
        }
        (a, d) => return Err(format!("OFF export needs a full-dimensional polytope in R^2 or R^3, got dimension {d} in R^{a}")),
    }
    Ok(out)
}

fn write_coords(out: &mut String, p: &Polytope, pad: bool) {
    for v in p.vertices() {
        let mut xs: Vec<String> = v
            .entries()
            .iter()
            .map(|x| format!("{}", to_f64(x)))
            .collect();
        if pad {
            xs.push("0".into());
        }
        writeln!(out, "{}", xs.join(" ")).unwrap();
    }
}

fn write_face(out: &mut String, order: &[usize]) {
    let idx: Vec<String> = order.iter().map(usize::to_string).collect();
    writeln!(out, "{} {}", order.len(), idx.join(" ")).unwrap();
}
