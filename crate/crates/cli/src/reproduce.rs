//! Stored results with their expected values. Every entry uses fixed seeds.

use std::collections::{BTreeMap, BTreeSet};

use maxout_core::bicolor::{max_bicolored_dfs, sample_trial, DualGraph};
use maxout_core::candidate::{
    build_candidate, candidate_space_dim, phi, planar_edges, rank_condition, weight_space_dim,
    CandidateParams,
};
use maxout_core::extremal::{
    bd_boxes, bd_prime_boxes, build_bd, build_bd_prime, edge_count_2d,
    extremal_2d_zonoboxtope_data, f_polynomial_bd, max_edges_2d, realize_bd_network,
    realize_bd_prime_network, sample_factored_2d,
};
use maxout_core::network::{
    build_big_cube, build_polytope, generic_dimension, project, sample_generic,
};
use maxout_core::polytope::{
    canonical_form, combinatorially_equivalent, f_vector, face_lattice, is_combinatorial_cube,
    is_cubical,
};
use maxout_core::sampling;
use maxout_core::separate::separating_fan;
use serde_json::{json, Value};

use crate::commands::CmdResult;
use crate::report::RunReport;

type Check = Result<(bool, Value), String>;

/// `(id, claim, check)`.
type Entry = (&'static str, &'static str, fn() -> Check);

const ENTRIES: &[Entry] = &[
    (
        "thm3.1",
        "extremal boxtope f-vectors and their realizing networks",
        extremal_boxtopes,
    ),
    ("prop3.2", "extremal boxtopes are cubical", boxtopes_cubical),
    (
        "cor5.7",
        "f-polynomial of the extremal boxtope, d = 2..6",
        boxtope_f_polynomial,
    ),
    (
        "thm5.6",
        "topology of the separating complexes",
        separating_topology,
    ),
    (
        "thm6.1",
        "planar zonoboxtope edge bound and its tightness",
        planar_edge_bound,
    ),
    (
        "prop6.4",
        "sampled vertex counts 16, 26, 44, 60 for n = 3..6",
        sampled_vertex_counts,
    ),
    (
        "prop7.2",
        "the big cube projects onto the maxout polytope",
        big_cube,
    ),
    (
        "thm7.1",
        "networks without bottleneck give cubical polytopes",
        no_bottleneck_cubical,
    ),
    (
        "prop7.4",
        "type (3,2,3) polytopes have 2 or 4 hexagons",
        hexagon_counts,
    ),
    (
        "ex4.3",
        "candidate and weight spaces of type (2,1,2)",
        candidate_rank,
    ),
    ("cor7.5", "generic dimension min(d, 2n)", generic_dimensions),
];

fn known() -> String {
    ENTRIES
        .iter()
        .map(|(id, _, _)| *id)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run(id: &str) -> CmdResult {
    if id == "list" {
        let table: BTreeMap<&str, &str> =
            ENTRIES.iter().map(|(id, what, _)| (*id, *what)).collect();
        return Ok(RunReport::new(
            "reproduce",
            json!({ "id": id }),
            None,
            json!(table),
        ));
    }
    let Some((_, what, f)) = ENTRIES.iter().find(|(k, _, _)| *k == id) else {
        return Err(format!("unknown result id {id:?}; known ids: {}", known()));
    };
    let (pass, observed) = f()?;
    let mut report = RunReport::new(
        "reproduce",
        json!({ "id": id }),
        None,
        json!({ "claim": what, "observed": observed }),
    );
    report.pass = pass;
    Ok(report)
}

fn err(e: maxout_core::Error) -> String {
    e.to_string()
}

fn extremal_boxtopes() -> Check {
    let expected: [&[usize]; 3] = [&[16, 28, 14], &[32, 80, 72, 24], &[64, 192, 232, 136, 34]];
    let mut pass = true;
    let mut fv = Vec::new();
    for (d, e) in (3..=5).zip(expected) {
        let f = f_vector(&build_bd(d).map_err(err)?).0;
        pass &= f == e;
        fv.push(f);
    }
    let mut realized = Vec::new();
    for d in 2..=5 {
        let p = build_polytope(&realize_bd_network(d).map_err(err)?).map_err(err)?;
        realized.push(combinatorially_equivalent(&p, &build_bd(d).map_err(err)?));
    }
    for d in [3, 5] {
        let net = realize_bd_prime_network(d)
            .map_err(err)?
            .to_network()
            .map_err(err)?;
        let p = build_polytope(&net).map_err(err)?;
        realized.push(combinatorially_equivalent(
            &p,
            &build_bd_prime(d).map_err(err)?,
        ));
    }
    pass &= realized.iter().all(|&x| x);
    let distinct =
        !combinatorially_equivalent(&build_bd(3).map_err(err)?, &build_bd_prime(3).map_err(err)?);
    pass &= distinct;
    Ok((
        pass,
        json!({ "f_vectors": fv, "realized": realized, "b3_types_distinct": distinct }),
    ))
}

fn boxtopes_cubical() -> Check {
    let cubical: Vec<bool> = (2..=5)
        .map(|d| build_bd(d).map(|p| is_cubical(&p)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    Ok((
        cubical.iter().all(|&c| c),
        json!({ "d": [2, 3, 4, 5], "cubical": cubical }),
    ))
}

fn boxtope_f_polynomial() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for d in 2..=6 {
        let formula = f_polynomial_bd(d).0;
        let computed: Vec<i64> = f_vector(&build_bd(d).map_err(err)?)
            .with_top()
            .iter()
            .map(|&x| x as i64)
            .collect();
        pass &= formula == computed;
        rows.push(json!({ "d": d, "formula": formula, "computed": computed }));
    }
    Ok((pass, json!(rows)))
}

fn cross_polytope_boundary(k: usize) -> Vec<usize> {
    let binom = |n: usize, r: usize| (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    (0..k).map(|i| (1 << (i + 1)) * binom(k, i + 1)).collect()
}

fn separating_topology() -> Check {
    let mut out = serde_json::Map::new();
    let mut pass = true;
    let cases = [
        ("B3", bd_boxes(3), 2),
        ("B3'", bd_prime_boxes(3), 1),
        ("B4", bd_boxes(4), 1),
    ];
    for (name, boxes, components) in cases {
        let (p1, p2) = boxes.map_err(err)?;
        let s = separating_fan(&p1, &p2).map_err(err)?;
        pass &= s.components == components && s.component_euler.iter().all(|&x| x == 0);
        out.insert(
            name.into(),
            json!({ "components": s.components, "component_euler": s.component_euler }),
        );
    }
    let (p1, p2) = bd_boxes(5).map_err(err)?;
    let s = separating_fan(&p1, &p2).map_err(err)?;
    let (a, b) = (cross_polytope_boundary(3), cross_polytope_boundary(2));
    let mut product = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            product[i + j] += x * y;
        }
    }
    pass &= s.f_vector == product;
    out.insert(
        "B5".into(),
        json!({ "f_vector": s.f_vector, "expected": product }),
    );
    Ok((pass, Value::Object(out)))
}

fn planar_edge_bound() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 2..=8 {
        let q = extremal_2d_zonoboxtope_data(n).map_err(err)?;
        let edges = q.build().map_err(err)?.num_facets();
        let formula = edge_count_2d(&q).map_err(err)?;
        let mut worst = 0;
        for i in 0..500 {
            let s = sample_factored_2d(n, sampling::job_seed(4, (n * 1000 + i) as u64));
            worst = worst.max(s.build().map_err(err)?.num_facets());
        }
        let bound = max_edges_2d(n);
        pass &= edges == bound && formula == edges && worst <= bound;
        rows.push(json!({ "n": n, "bound": bound, "construction": edges, "sampled_max": worst }));
    }
    Ok((pass, json!(rows)))
}

fn sampled_vertex_counts() -> Check {
    let mut bounds: BTreeMap<_, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (n, target) in [(3, 16), (4, 26), (5, 44), (6, 60)] {
        let (mut best, mut sound) = (0, true);
        for trial in 0..1000 {
            let (data, q) = sample_trial(3, n, 42, trial).map_err(err)?;
            let z = data.zonotope_part().map_err(err)?;
            let bound = match bounds.get(&canonical_form(&z)) {
                Some(&b) => b,
                None => {
                    let r = max_bicolored_dfs(&DualGraph::from_polytope(&z).map_err(err)?, None);
                    let b = z.num_vertices() + r.upper;
                    bounds.insert(canonical_form(&z), b);
                    b
                }
            };
            sound &= q.num_vertices() <= bound;
            best = best.max(q.num_vertices());
        }
        pass &= sound && best >= target;
        rows.push(json!({ "n": n, "target": target, "best": best, "within_bound": sound }));
    }
    Ok((
        pass,
        json!({ "seed": 42, "trials": 1000, "rows": rows, "zonotope_types": bounds.len() }),
    ))
}

fn big_cube() -> Check {
    let mut pass = true;
    let mut rows = Vec::new();
    for dims in [&[2usize, 2][..], &[2, 2, 1], &[3, 3, 1]] {
        let m: usize = dims[1..].iter().sum();
        let mut ok = 0;
        for seed in 0..20 {
            let net = sample_generic(dims, 1000 * seed).map_err(err)?.net;
            let big = build_big_cube(&net).map_err(err)?;
            let coords: Vec<usize> = (0..dims[0]).collect();
            let good = big.num_vertices() == 1 << m
                && is_combinatorial_cube(&face_lattice(&big), big.dim(), 0)
                && project(&big, &coords).map_err(err)? == build_polytope(&net).map_err(err)?;
            ok += good as usize;
        }
        pass &= ok == 20;
        rows.push(json!({ "type": dims, "passed": ok, "of": 20 }));
    }
    Ok((pass, json!(rows)))
}

fn no_bottleneck_cubical() -> Check {
    let mut rows = Vec::new();
    let mut pass = true;
    for dims in [&[3usize, 3, 1][..], &[3, 3, 2], &[2, 3, 2], &[3, 4, 3]] {
        let mut cubical = 0;
        let mut rejected = 0;
        for seed in 0..20u64 {
            let s = sample_generic(dims, 1000 * seed).map_err(err)?;
            rejected += s.rejected.len();
            cubical += is_cubical(&build_polytope(&s.net).map_err(err)?) as usize;
        }
        pass &= cubical == 20;
        rows.push(
            json!({ "type": dims, "cubical": cubical, "of": 20, "rejected_draws": rejected }),
        );
    }
    Ok((pass, json!(rows)))
}

fn hexagon_counts() -> Check {
    let dims = [3usize, 2, 3];
    let mut hexagons = Vec::new();
    let mut pass = true;
    for seed in 0..20u64 {
        let p = build_polytope(&sample_generic(&dims, seed).map_err(err)?.net).map_err(err)?;
        let h = p.hexagonal_facets();
        pass &= !is_cubical(&p) && matches!(h, 2 | 4);
        hexagons.push(h);
    }
    let mut hit = None;
    for seed in 0..200u64 {
        let p = build_polytope(&sample_generic(&dims, seed).map_err(err)?.net).map_err(err)?;
        if f_vector(&p).0 == [24, 40, 18] {
            hit = Some(seed);
            break;
        }
    }
    pass &= hit.is_some();
    Ok((
        pass,
        json!({ "hexagons": hexagons, "f_vector_24_40_18_seed": hit }),
    ))
}

fn candidate_rank() -> Check {
    let (cs, ws) = (candidate_space_dim(2, 1, 2), weight_space_dim(2, 1, 2));
    let mut net_ok = true;
    let mut cand_shape = true;
    let mut ranks = BTreeSet::new();
    for seed in 0..100 {
        let net = sample_generic(&[2, 1, 2], seed).map_err(err)?.net;
        net_ok &= rank_condition(&phi(&net).map_err(err)?).map_err(err)? == (true, 1)
            && planar_edges(&build_polytope(&net).map_err(err)?) == Some(4);
        let c = CandidateParams::random(2, 1, 2, seed).map_err(err)?;
        let (holds, rank) = rank_condition(&c).map_err(err)?;
        cand_shape &= !holds && planar_edges(&build_candidate(&c).map_err(err)?) == Some(6);
        ranks.insert(rank);
    }
    let pass = cs == 13 && ws == 7 && net_ok && cand_shape && ranks == BTreeSet::from([2]);
    Ok((
        pass,
        json!({
            "candidate_space_dim": cs,
            "weight_space_dim": ws,
            "networks_rank_1_quadrilaterals": net_ok,
            "candidates_fail_and_are_hexagons": cand_shape,
            "candidate_ranks": ranks,
            "expected_candidate_rank": 2,
        }),
    ))
}

fn generic_dimensions() -> Check {
    let mut mismatches = Vec::new();
    for d in 1..=4 {
        for n in 1..=3 {
            for m in 1..=3 {
                for seed in 0..5 {
                    let got = generic_dimension(d, n, m, seed).map_err(err)?;
                    if got != d.min(2 * n) {
                        mismatches.push(
                            json!({ "d": d, "n": n, "m": m, "seed": seed, "dimension": got }),
                        );
                    }
                }
            }
        }
    }
    let base = generic_dimension(3, 1, 2, 0).map_err(err)?;
    Ok((
        base == 2 && mismatches.is_empty(),
        json!({ "dimension_3_1_2": base, "mismatches": mismatches }),
    ))
}
