//! Canonical labeling of vertex-facet incidence graphs by color refinement
//! and individualization, keeping the lexicographically largest leaf.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Polytope;

/// Canonical form of the vertex-facet incidence graph of a polytope. Two
/// polytopes are combinatorially equivalent iff their forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub num_vertices: usize,
    pub num_facets: usize,
    /// Sorted `(vertex label, facet label)` pairs under the canonical labeling.
    pub edges: Vec<(usize, usize)>,
}

struct Graph {
    adj: Vec<Vec<usize>>,
    nv: usize,
}

type Leaf = (Vec<Vec<usize>>, Vec<(usize, usize)>);

/// Equitable refinement with canonically ranked colors.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let mut classes = count_classes(colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
            .map(|u| {
                let mut nb: Vec<usize> = g.adj[u].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[u], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        *colors = next;
        let n = distinct.len();
        if n == classes {
            break;
        }
        classes = n;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Quotient-matrix invariant of an equitable coloring.
fn invariant(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let k = count_classes(colors);
    let mut rep = vec![usize::MAX; k];
    let mut size = vec![0usize; k];
    for (u, &c) in colors.iter().enumerate() {
        size[c] += 1;
        if rep[c] == usize::MAX {
            rep[c] = u;
        }
    }
    let mut out = Vec::new();
    for c in 0..k {
        out.push(size[c]);
        let mut nb: Vec<usize> = g.adj[rep[c]].iter().map(|&w| colors[w]).collect();
        nb.sort_unstable();
        out.push(nb.len());
        out.extend(nb);
    }
    out
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let c = colors[v];
    // ranks stay canonical: v goes just before the rest of its cell
    colors
        .iter()
        .enumerate()
        .map(|(u, &x)| {
            if x > c || (x == c && u != v) {
                x + 1
            } else {
                x
            }
        })
        .collect()
}

fn search(g: &Graph, colors: Vec<usize>, path: &mut Vec<Vec<usize>>, best: &mut Option<Leaf>) {
    let mut colors = colors;
    refine(g, &mut colors);
    let inv = invariant(g, &colors);
    let depth = path.len();
    if let Some((bp, _)) = best.as_ref() {
        let cmp = path
            .iter()
            .cmp(bp.iter().take(depth))
            .then_with(|| match bp.get(depth) {
                Some(b) => inv.cmp(b),
                None => Ordering::Greater,
            });
        if cmp == Ordering::Less {
            return;
        }
    }
    path.push(inv);
    let n = colors.len();
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    match (0..n).find(|&c| size[c] > 1) {
        None => {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for u in 0..g.nv {
                for &w in &g.adj[u] {
                    edges.push((colors[u], colors[w]));
                }
            }
            edges.sort_unstable();
            let leaf = (path.clone(), edges);
            if best.as_ref().is_none_or(|b| leaf > *b) {
                *best = Some(leaf);
            }
        }
        Some(cell) => {
            let members: Vec<usize> = (0..n).filter(|&u| colors[u] == cell).collect();
            for v in members {
                search(g, individualize(&colors, v), path, best);
            }
        }
    }
    path.pop();
}

pub fn canonical_form(p: &Polytope) -> CanonicalForm {
    let nv = p.num_vertices();
    let nf = p.num_facets();
    let mut adj = vec![Vec::new(); nv + nf];
    for j in 0..nf {
        for i in p.facet_vertices(j).iter() {
            adj[i].push(nv + j);
            adj[nv + j].push(i);
        }
    }
    let g = Graph { adj, nv };
    let colors: Vec<usize> = (0..nv + nf).map(|u| usize::from(u >= nv)).collect();
    let mut best = None;
    search(&g, colors, &mut Vec::new(), &mut best);
    let (_, labeled) = best.expect("search reaches a leaf");
    let edges = labeled.into_iter().map(|(a, b)| (a, b - nv)).collect();
    CanonicalForm {
        num_vertices: nv,
        num_facets: nf,
        edges,
    }
}

/// Isomorphism of face lattices, decided on vertex-facet incidences.
pub fn combinatorially_equivalent(p: &Polytope, q: &Polytope) -> bool {
    if p.dim() != q.dim()
        || p.num_vertices() != q.num_vertices()
        || p.num_facets() != q.num_facets()
    {
        return false;
    }
    if p.dim() <= 1 {
        return true;
    }
    canonical_form(p) == canonical_form(q)
}
