//! Bicolorings of dual graphs and vertex bounds for zonoboxtopes.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::extremal::{sample_factored, FactoredZonoboxtope};
use crate::polytope::{face_lattice, zonotope, Polytope};
use crate::ratgeom::{RMatrix, RVector, Rational};
use crate::sampling;
use crate::separate::{classify_faces, FaceType};
use crate::{Error, Result};

/// Edge graph of `P*`: one node per facet of `P`, adjacent when the facets share
/// a ridge, plus one cell per vertex of `P` listing the facets through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    adjacency: Vec<Vec<usize>>,
    cells: Vec<Vec<usize>>,
}

impl DualGraph {
    /// Validates node indices and connectivity of the graph and of every cell.
    pub fn new(num_nodes: usize, edges: &[(usize, usize)], cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); num_nodes];
        for &(a, b) in edges {
            if a >= num_nodes || b >= num_nodes || a == b {
                return Err(Error::InvalidArgument(format!("bad edge ({a}, {b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in adjacency.iter_mut() {
            adj.sort();
            adj.dedup();
        }
        let mut cells = cells;
        for c in cells.iter_mut() {
            c.sort();
            c.dedup();
            if c.is_empty() || c.iter().any(|&v| v >= num_nodes) {
                return Err(Error::InvalidArgument(
                    "cell with missing or unknown nodes".into(),
                ));
            }
        }
        let g = DualGraph { adjacency, cells };
        if num_nodes == 0 || !g.connected(&BitSet::full(num_nodes)) {
            return Err(Error::InvalidArgument("dual graph is not connected".into()));
        }
        if let Some(i) = (0..g.cells.len()).find(|&i| !g.connected(&g.cell_set(i))) {
            return Err(Error::InvalidArgument(format!("cell {i} is not connected")));
        }
        Ok(g)
    }

    /// Dual graph of a polytope of dimension at least 2.
    pub fn from_polytope(p: &Polytope) -> Result<Self> {
        if p.dim() < 2 {
            return Err(Error::Shape(format!(
                "dual graph needs dimension >= 2, got {}",
                p.dim()
            )));
        }
        let lattice = face_lattice(p);
        let edges: Vec<(usize, usize)> = lattice
            .faces(p.dim() - 2)
            .iter()
            .map(|ridge| {
                let f: Vec<usize> = p.facets_containing(ridge).iter().collect();
                (f[0], f[1])
            })
            .collect();
        let cells = (0..p.num_vertices())
            .map(|i| p.vertex_facets(i).iter().collect())
            .collect();
        DualGraph::new(p.num_facets(), &edges, cells)
    }

    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_nodes())
            .flat_map(|a| {
                self.adjacency[a]
                    .iter()
                    .filter(move |&&b| a < b)
                    .map(move |&b| (a, b))
            })
            .collect()
    }

    fn cell_set(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.num_nodes(), self.cells[i].iter().copied())
    }

    /// Whether the subgraph induced on `nodes` is connected; the empty set counts as connected.
    fn connected(&self, nodes: &BitSet) -> bool {
        let Some(start) = nodes.iter().next() else {
            return true;
        };
        let mut seen = BitSet::new(self.num_nodes());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if nodes.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen.len() == nodes.len()
    }

    /// Whether the nodes of `color` in the cell lie in one component of the
    /// subgraph induced on the cell nodes that are `color` or uncolored.
    fn reachable(&self, cell: &[usize], colors: &[Option<Color>], color: Color) -> bool {
        let mut allowed = BitSet::new(self.num_nodes());
        let mut targets = 0;
        let mut start = None;
        for &v in cell {
            match colors[v] {
                Some(c) if c == color => {
                    allowed.insert(v);
                    targets += 1;
                    start.get_or_insert(v);
                }
                None => allowed.insert(v),
                _ => {}
            }
        }
        let Some(start) = start else {
            return true;
        };
        let mut seen = BitSet::new(self.num_nodes());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        let mut found = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if allowed.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    if colors[w] == Some(color) {
                        found += 1;
                    }
                    queue.push_back(w);
                }
            }
        }
        found == targets
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    A,
    B,
}

impl Color {
    fn other(self) -> Color {
        match self {
            Color::A => Color::B,
            Color::B => Color::A,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Color::A { "a" } else { "b" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicoloring(pub Vec<Color>);

impl Bicoloring {
    pub fn uniform(n: usize, c: Color) -> Self {
        Bicoloring(vec![c; n])
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }
}

/// Colors facet `j` of `P₁` by whether it survives in `conv(P₁ ∪ P₂)` (a) or is
/// replaced by the facet of `P₂` (b).
pub fn candidate_bicoloring(p1: &Polytope, p2: &Polytope) -> Result<Bicoloring> {
    let typing = classify_faces(p1, p2)?;
    if !typing.in_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let top = p1.dim() - 1;
    let mut colors = vec![Color::A; p1.num_facets()];
    for f in typing.faces.iter().filter(|f| f.dim == top) {
        let j = f.facets.iter().next().expect("facet");
        colors[j] = match f.label {
            FaceType::A => Color::A,
            FaceType::B => Color::B,
            _ => unreachable!("facets with equal support share their hyperplane"),
        };
    }
    Ok(Bicoloring(colors))
}

/// Every color class induces a connected subgraph in every cell.
pub fn is_valid(g: &DualGraph, c: &Bicoloring) -> bool {
    if c.0.len() != g.num_nodes() {
        return false;
    }
    let colors: Vec<Option<Color>> = c.0.iter().map(|&x| Some(x)).collect();
    g.cells
        .iter()
        .all(|cell| g.reachable(cell, &colors, Color::A) && g.reachable(cell, &colors, Color::B))
}

fn is_bicolored(cell: &[usize], c: &Bicoloring) -> bool {
    cell.iter().any(|&v| c.0[v] != c.0[cell[0]])
}

pub fn bicolored_cells(g: &DualGraph, c: &Bicoloring) -> usize {
    g.cells.iter().filter(|cell| is_bicolored(cell, c)).count()
}

/// Number of cells plus the number of bicolored cells.
pub fn count_vertices(g: &DualGraph, c: &Bicoloring) -> Result<usize> {
    if !is_valid(g, c) {
        return Err(Error::InvalidColoring);
    }
    Ok(g.cells.len() + bicolored_cells(g, c))
}

/// Result of [`max_bicolored_dfs`]. When the node budget runs out, `exact` is
/// false and the maximum lies in `[max_bicolored, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsOutcome {
    pub max_bicolored: usize,
    pub upper: usize,
    pub witness: Bicoloring,
    pub exact: bool,
    pub nodes: u64,
}

struct Search<'a> {
    g: &'a DualGraph,
    cells_of: Vec<Vec<usize>>,
    colors: Vec<Option<Color>>,
    uncolored_in: Vec<usize>,
    mono: usize,
    allowed_mono: usize,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Search<'_> {
    fn cell_state(&self, cell: usize) -> (bool, bool) {
        let mut seen = [false, false];
        for &v in &self.g.cells[cell] {
            if let Some(c) = self.colors[v] {
                seen[c as usize] = true;
            }
        }
        (seen[0], seen[1])
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.num_nodes())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| {
                let threatened = self.cells_of[v]
                    .iter()
                    .filter(|&&c| {
                        let (a, b) = self.cell_state(c);
                        a != b
                    })
                    .count();
                let urgent = self.cells_of[v]
                    .iter()
                    .filter(|&&c| {
                        let (a, b) = self.cell_state(c);
                        a != b && self.uncolored_in[c] == 1
                    })
                    .count();
                (urgent, threatened, core::cmp::Reverse(v))
            })
    }

    fn assign(&mut self, v: usize, color: Color) -> bool {
        self.colors[v] = Some(color);
        let mut ok = true;
        for &c in &self.cells_of[v] {
            self.uncolored_in[c] -= 1;
            if self.uncolored_in[c] == 0 {
                let (a, b) = self.cell_state(c);
                if !(a && b) {
                    self.mono += 1;
                }
            }
            let cell = &self.g.cells[c];
            ok &= self.g.reachable(cell, &self.colors, Color::A)
                && self.g.reachable(cell, &self.colors, Color::B);
        }
        ok && self.mono <= self.allowed_mono
    }

    fn unassign(&mut self, v: usize) {
        for &c in &self.cells_of[v] {
            if self.uncolored_in[c] == 0 {
                let (a, b) = self.cell_state(c);
                if !(a && b) {
                    self.mono -= 1;
                }
            }
            self.uncolored_in[c] += 1;
        }
        self.colors[v] = None;
    }

    fn run(&mut self, first: bool) -> bool {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.exhausted = true;
            return false;
        }
        let Some(v) = self.pick() else {
            return true;
        };
        let majority = {
            let mut count = [0usize; 2];
            for &c in &self.cells_of[v] {
                for &w in &self.g.cells[c] {
                    if let Some(x) = self.colors[w] {
                        count[x as usize] += 1;
                    }
                }
            }
            if count[1] > count[0] {
                Color::B
            } else {
                Color::A
            }
        };
        let order = if first {
            vec![Color::A]
        } else {
            vec![majority.other(), majority]
        };
        for color in order {
            if self.assign(v, color) && self.run(false) {
                return true;
            }
            self.unassign(v);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Maximum number of bicolored cells over valid bicolorings.
///
/// Searches for a valid coloring with at most `m` monochromatic cells for
/// `m = 0, 1, 2, ...`; the first success is optimal. `budget` caps the total
/// number of search nodes.
pub fn max_bicolored_dfs(g: &DualGraph, budget: Option<u64>) -> DfsOutcome {
    let n = g.num_nodes();
    let mut cells_of = vec![Vec::new(); n];
    for (i, cell) in g.cells.iter().enumerate() {
        for &v in cell {
            cells_of[v].push(i);
        }
    }
    let mut s = Search {
        g,
        cells_of,
        colors: vec![None; n],
        uncolored_in: g.cells.iter().map(Vec::len).collect(),
        mono: 0,
        allowed_mono: 0,
        nodes: 0,
        budget,
        exhausted: false,
    };
    let total = g.cells.len();
    for m in 0..=total {
        s.allowed_mono = m;
        s.colors = vec![None; n];
        s.uncolored_in = g.cells.iter().map(Vec::len).collect();
        s.mono = 0;
        if s.run(true) {
            let witness = Bicoloring(s.colors.iter().map(|c| c.expect("complete")).collect());
            let best = bicolored_cells(g, &witness);
            return DfsOutcome {
                max_bicolored: best,
                upper: best,
                witness,
                exact: true,
                nodes: s.nodes,
            };
        }
        if s.exhausted {
            let witness = Bicoloring::uniform(n, Color::A);
            return DfsOutcome {
                max_bicolored: 0,
                upper: total - m,
                witness,
                exact: false,
                nodes: s.nodes,
            };
        }
    }
    unreachable!("the uniform coloring is valid")
}

/// Zonotope `Σ conv(0, g_i)` with `n` integer generators in `[-1000, 1000]^3`,
/// any three linearly independent.
pub fn generic_zonotope(n: usize, seed: u64) -> Result<Polytope> {
    let mut r = sampling::rng(seed);
    for _ in 0..64 {
        let gens: Vec<RVector> = (0..n)
            .map(|_| sampling::int_vector(&mut r, 3, -1000, 1000))
            .collect();
        if generic_generators(&gens) {
            return zonotope(&RVector::zeros(3), &gens);
        }
    }
    Err(Error::Exhausted("no generic generator set".into()))
}

/// Any `min(n, d)` of the generators are linearly independent.
pub fn generic_generators(gens: &[RVector]) -> bool {
    let Some(d) = gens.first().map(RVector::dim) else {
        return true;
    };
    let k = d.min(gens.len());
    crate::network::k_subsets(gens.len(), k).iter().all(|s| {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| gens[i].entries().to_vec()).collect();
        RMatrix::from_rows(rows).expect("rectangular").rank() == k
    })
}

/// Number of vertices of a zonotope with `n` generators in general position in `R^3`.
pub fn generic_zonotope_vertices(n: usize) -> usize {
    n * (n - 1) + 2
}

/// Best of a run of [`sample_extremal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleBest {
    pub polytope: Polytope,
    pub data: FactoredZonoboxtope,
    pub vertices: usize,
    pub trial: usize,
}

/// One trial of [`sample_extremal`], seeded by `(seed, trial)`.
pub fn sample_trial(
    d: usize,
    n: usize,
    seed: u64,
    trial: usize,
) -> Result<(FactoredZonoboxtope, Polytope)> {
    let data = sample_factored(d, n, sampling::job_seed(seed, trial as u64));
    let p = data.build()?;
    Ok((data, p))
}

/// The sample with the most vertices over `trials` random factored zonoboxtopes;
/// ties keep the earliest trial.
pub fn sample_extremal(d: usize, n: usize, trials: usize, seed: u64) -> Result<SampleBest> {
    if d > n || d == 0 || trials == 0 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= d <= n and trials > 0, got d = {d}, n = {n}"
        )));
    }
    let mut best: Option<SampleBest> = None;
    for trial in 0..trials {
        let (data, polytope) = sample_trial(d, n, seed, trial)?;
        let vertices = polytope.num_vertices();
        if best.as_ref().is_none_or(|b| vertices > b.vertices) {
            best = Some(SampleBest {
                polytope,
                data,
                vertices,
                trial,
            });
        }
    }
    Ok(best.expect("at least one trial"))
}
