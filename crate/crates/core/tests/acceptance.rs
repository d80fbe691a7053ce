use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use maxout_core::bicolor::{
    bicolored_cells, is_valid, max_bicolored_dfs, sample_trial, Bicoloring, Color, DualGraph,
};
use maxout_core::candidate::{
    build_candidate, candidate_space_dim, phi, planar_edges, rank_condition, weight_space_dim,
    CandidateParams,
};
use maxout_core::extremal::{
    build_bd, build_bd_prime, edge_count_2d, extremal_2d_zonoboxtope_data, f_polynomial_bd,
    max_edges_2d, realize_bd_network, realize_bd_prime_network, sample_factored_2d,
};
use maxout_core::network::{
    build_big_cube, build_polytope, generic_dimension, project, sample_generic, support_eval,
    MaxoutNetwork,
};
use maxout_core::polytope::{
    canonical_form, combinatorially_equivalent, f_vector, face_lattice, hull,
    is_combinatorial_cube, is_cubical,
};
use maxout_core::ratgeom::int;
use maxout_core::sampling;
use maxout_core::separate::separating_fan;
use maxout_core::{RVector, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1() -> Outcome {
    let expected: [&[usize]; 3] = [&[16, 28, 14], &[32, 80, 72, 24], &[64, 192, 232, 136, 34]];
    let mut times = Vec::new();
    for (d, f) in (3..=5).zip(expected) {
        let t = Instant::now();
        let got = f_vector(&build_bd(d).map_err(|e| e.to_string())?);
        let secs = t.elapsed().as_secs_f64();
        check(got.0 == f, format!("d = {d}: {:?}", got.0))?;
        check(secs < 10.0, format!("d = {d} took {secs:.1} s"))?;
        times.push(format!("{secs:.2}s"));
    }
    Ok(format!("times {}", times.join(", ")))
}

fn c2() -> Outcome {
    for d in 2..=6 {
        let poly: Vec<i64> = f_polynomial_bd(d).0;
        let fv: Vec<i64> = f_vector(&build_bd(d).unwrap())
            .with_top()
            .iter()
            .map(|&x| x as i64)
            .collect();
        check(poly == fv, format!("d = {d}: {poly:?} vs {fv:?}"))?;
    }
    Ok("d = 2..6".into())
}

fn c3() -> Outcome {
    for d in 2..=5 {
        let p = build_polytope(&realize_bd_network(d).unwrap()).unwrap();
        check(
            combinatorially_equivalent(&p, &build_bd(d).unwrap()),
            format!("B_{d}"),
        )?;
    }
    for d in [3, 5] {
        let net = realize_bd_prime_network(d).unwrap().to_network().unwrap();
        let p = build_polytope(&net).unwrap();
        check(
            combinatorially_equivalent(&p, &build_bd_prime(d).unwrap()),
            format!("B'_{d}"),
        )?;
    }
    Ok("B_2..B_5, B'_3, B'_5".into())
}

fn c4() -> Outcome {
    let mut worst = 0;
    for n in 2..=8 {
        let q = extremal_2d_zonoboxtope_data(n).unwrap();
        let edges = q.build().unwrap().num_facets();
        check(edges == max_edges_2d(n), format!("n = {n}: {edges} edges"))?;
        check(
            edge_count_2d(&q).unwrap() == edges,
            format!("n = {n}: formula disagrees"),
        )?;
        for i in 0..500 {
            let s = sample_factored_2d(n, sampling::job_seed(4, (n * 1000 + i) as u64));
            let e = s.build().unwrap().num_facets();
            check(
                e <= max_edges_2d(n),
                format!("n = {n} sample {i}: {e} edges"),
            )?;
            worst = worst.max(e);
        }
    }
    Ok(format!(
        "extremal counts exact for n = 2..8, 3500 samples within bound (max {worst})"
    ))
}

fn c5() -> Outcome {
    let targets = [(3, 16), (4, 26), (5, 44), (6, 60)];
    let mut bounds: BTreeMap<_, usize> = BTreeMap::new();
    let mut found = Vec::new();
    let mut misses = Vec::new();
    let mut unsound = Vec::new();
    for (n, target) in targets {
        let mut best = 0;
        for trial in 0..1000 {
            let (data, q) = sample_trial(3, n, 42, trial).unwrap();
            let z = data.zonotope_part().unwrap();
            let key = canonical_form(&z);
            let bound = *bounds.entry(key).or_insert_with(|| {
                let g = DualGraph::from_polytope(&z).unwrap();
                let out = max_bicolored_dfs(&g, None);
                assert!(out.exact);
                z.num_vertices() + out.max_bicolored
            });
            if q.num_vertices() > bound {
                unsound.push(format!(
                    "n = {n} trial {trial}: {} > {bound}",
                    q.num_vertices()
                ));
            }
            best = best.max(q.num_vertices());
        }
        found.push(best);
        if best < target {
            misses.push(format!("n = {n}: best {best} < {target}"));
        }
    }
    let summary = format!("best {found:?}, {} zonotope types bounded", bounds.len());
    check(
        unsound.is_empty(),
        format!("{summary}; bound violated: {}", unsound.join("; ")),
    )?;
    check(
        misses.is_empty(),
        format!("{summary}; {}", misses.join("; ")),
    )?;
    Ok(summary)
}

fn cross_polytope_boundary(k: usize) -> Vec<usize> {
    let binom = |n: usize, r: usize| (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    (0..k).map(|i| (1 << (i + 1)) * binom(k, i + 1)).collect()
}

fn poly_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn c6() -> Outcome {
    use maxout_core::extremal::{bd_boxes, bd_prime_boxes};
    let (p1, p2) = bd_boxes(3).unwrap();
    let s = separating_fan(&p1, &p2).unwrap();
    check(
        s.components == 2 && s.component_euler == [0, 0],
        format!("B_3: {} components {:?}", s.components, s.component_euler),
    )?;
    let (p1, p2) = bd_prime_boxes(3).unwrap();
    let s = separating_fan(&p1, &p2).unwrap();
    check(
        s.components == 1 && s.component_euler == [0],
        format!("B'_3: {} components {:?}", s.components, s.component_euler),
    )?;
    let (p1, p2) = bd_boxes(4).unwrap();
    let s = separating_fan(&p1, &p2).unwrap();
    check(
        s.components == 1 && s.euler_characteristic == 0,
        format!(
            "B_4: {} components, chi {}",
            s.components, s.euler_characteristic
        ),
    )?;
    let (p1, p2) = bd_boxes(5).unwrap();
    let s = separating_fan(&p1, &p2).unwrap();
    let expected = poly_mul(&cross_polytope_boundary(3), &cross_polytope_boundary(2));
    check(
        s.f_vector == expected,
        format!("B_5: {:?} vs {expected:?}", s.f_vector),
    )?;
    Ok(format!("B_5 complex f-vector {:?}", s.f_vector))
}

fn c7() -> Outcome {
    for dims in [&[2usize, 2][..], &[2, 2, 1], &[3, 3, 1]] {
        let m: usize = dims[1..].iter().sum();
        for seed in 0..20 {
            let net = sample_generic(dims, 1000 * seed).unwrap().net;
            let big = build_big_cube(&net).unwrap();
            check(
                big.num_vertices() == 1 << m,
                format!("{dims:?} seed {seed}: {} vertices", big.num_vertices()),
            )?;
            check(
                is_combinatorial_cube(&face_lattice(&big), big.dim(), 0),
                format!("{dims:?} seed {seed}: not a cube"),
            )?;
            let coords: Vec<usize> = (0..dims[0]).collect();
            check(
                project(&big, &coords).unwrap() == build_polytope(&net).unwrap(),
                format!("{dims:?} seed {seed}: projection"),
            )?;
        }
    }
    Ok("60 networks".into())
}

fn c8() -> Outcome {
    let mut log = Vec::new();
    for dims in [&[3usize, 3, 1][..], &[3, 3, 2], &[2, 3, 2], &[3, 4, 3]] {
        for seed in 0..20u64 {
            let mut s = sample_generic(dims, 1000 * seed).unwrap();
            log.extend(s.rejected.iter().map(|r| format!("{dims:?}: {r}")));
            let mut tries = 0;
            while !is_cubical(&build_polytope(&s.net).unwrap()) {
                log.push(format!("{dims:?} seed {}: not cubical, resampled", s.seed));
                tries += 1;
                check(
                    tries <= 32,
                    format!("{dims:?} seed {seed}: no cubical sample"),
                )?;
                s = sample_generic(dims, s.seed + 1).unwrap();
            }
        }
    }
    for line in &log {
        println!("    resample: {line}");
    }
    Ok(format!(
        "80 networks cubical, {} resamples logged",
        log.len()
    ))
}

fn c9() -> Outcome {
    let dims = [3usize, 2, 3];
    let mut hexes = BTreeSet::new();
    for seed in 0..20u64 {
        let p = build_polytope(&sample_generic(&dims, seed).unwrap().net).unwrap();
        check(!is_cubical(&p), format!("seed {seed}: cubical"))?;
        let h = p.hexagonal_facets();
        check(matches!(h, 2 | 4), format!("seed {seed}: {h} hexagons"))?;
        hexes.insert(h);
    }
    let hit = (0..200u64).find(|&seed| {
        let p = build_polytope(&sample_generic(&dims, seed).unwrap().net).unwrap();
        f_vector(&p).0 == [24, 40, 18]
    });
    check(hit.is_some(), "no seed in 200 with f-vector (24,40,18)")?;
    Ok(format!(
        "hexagon counts {hexes:?}, (24,40,18) at seed {}",
        hit.unwrap()
    ))
}

fn c10() -> Outcome {
    check(candidate_space_dim(2, 1, 2) == 13, "candidate space")?;
    check(weight_space_dim(2, 1, 2) == 7, "weight space")?;
    let mut ranks = BTreeSet::new();
    for seed in 0..100 {
        let net = sample_generic(&[2, 1, 2], seed).unwrap().net;
        check(
            rank_condition(&phi(&net).unwrap()).unwrap() == (true, 1),
            format!("network seed {seed}"),
        )?;
        check(
            planar_edges(&build_polytope(&net).unwrap()) == Some(4),
            format!("network seed {seed}: not a quadrilateral"),
        )?;
        let cand = CandidateParams::random(2, 1, 2, seed).unwrap();
        let (holds, rank) = rank_condition(&cand).unwrap();
        check(!holds, format!("candidate seed {seed}: condition holds"))?;
        check(
            planar_edges(&build_candidate(&cand).unwrap()) == Some(6),
            format!("candidate seed {seed}: not a hexagon"),
        )?;
        ranks.insert(rank);
    }
    let detail = format!(
        "networks rank 1, quadrilaterals; candidates fail the condition, hexagons, ranks {ranks:?}"
    );
    check(
        ranks.iter().all(|&r| r == 2),
        format!("{detail}; expected rank 2, but a generic 3x4 matrix has rank 3"),
    )?;
    Ok(detail)
}

fn c11() -> Outcome {
    check(generic_dimension(3, 1, 2, 0).unwrap() == 2, "(3,1,2)")?;
    let mut mismatches = BTreeSet::new();
    for d in 1..=4 {
        for n in 1..=3 {
            for m in 1..=3 {
                for seed in 0..5 {
                    let got = generic_dimension(d, n, m, seed).unwrap();
                    // the polytope spans the zone directions plus one translation per output neuron
                    check(
                        got == d.min(2 * n).min(n + m),
                        format!("({d},{n},{m}) seed {seed}: {got}"),
                    )?;
                    if got != d.min(2 * n) {
                        mismatches.insert(format!("({d},{n},{m}) has dimension {got}"));
                    }
                }
            }
        }
    }
    let list: Vec<String> = mismatches.into_iter().collect();
    check(
        list.is_empty(),
        format!(
            "min(d, 2n) fails: {}; observed min(d, 2n, n + m) on all 180 cases",
            list.join(", ")
        ),
    )?;
    Ok("180 cases".into())
}

fn gift_wrap(points: &[RVector]) -> BTreeSet<RVector> {
    let cross = |o: &RVector, a: &RVector, b: &RVector| {
        (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
    };
    let dist = |a: &RVector, b: &RVector| {
        (&a[0] - &b[0]) * (&a[0] - &b[0]) + (&a[1] - &b[1]) * (&a[1] - &b[1])
    };
    let start = points.iter().min().unwrap().clone();
    let mut out = BTreeSet::new();
    let mut cur = start.clone();
    loop {
        out.insert(cur.clone());
        let mut next = points.iter().find(|p| **p != cur).unwrap_or(&cur).clone();
        for p in points {
            let c = cross(&cur, &next, p);
            if c < int(0) || (c == int(0) && dist(&cur, p) > dist(&cur, &next)) {
                next = p.clone();
            }
        }
        if next == start || next == cur {
            return out;
        }
        cur = next;
    }
}

fn forward(net: &MaxoutNetwork, x: &RVector) -> Rational {
    let mut h: Vec<Rational> = x.entries().to_vec();
    for k in 1..=net.depth() {
        let (a, b) = (net.a(k), net.b(k));
        h = (0..a.rows())
            .map(|i| {
                let ya: Rational = (0..a.cols()).map(|j| a.get(i, j) * &h[j]).sum();
                let yb: Rational = (0..b.cols()).map(|j| b.get(i, j) * &h[j]).sum();
                ya.max(yb)
            })
            .collect();
    }
    (0..h.len()).map(|j| net.c().get(0, j) * &h[j]).sum()
}

fn brute_force(g: &DualGraph) -> usize {
    let n = g.num_nodes();
    (0..1u32 << n)
        .map(|m| {
            Bicoloring(
                (0..n)
                    .map(|i| if m >> i & 1 == 1 { Color::B } else { Color::A })
                    .collect(),
            )
        })
        .filter(|c| is_valid(g, c))
        .map(|c| bicolored_cells(g, &c))
        .max()
        .unwrap()
}

fn c12() -> Outcome {
    for i in 0..200u64 {
        let mut r = sampling::rng(sampling::job_seed(12, i));
        let pts: Vec<RVector> = (0..3 + i as usize % 15)
            .map(|_| sampling::int_vector(&mut r, 2, -30, 30))
            .collect();
        let p = hull(&pts).unwrap();
        if p.dim() < 2 {
            continue;
        }
        let expected = gift_wrap(&pts);
        let got: BTreeSet<RVector> = p.vertices().iter().cloned().collect();
        check(got == expected, format!("point set {i}"))?;
    }
    let types: [&[usize]; 5] = [
        &[2, 2, 1],
        &[3, 2, 2],
        &[2, 3, 1],
        &[3, 3, 1],
        &[2, 2, 2, 1],
    ];
    for i in 0..50u64 {
        let dims = types[i as usize % types.len()];
        let net = MaxoutNetwork::random(dims, sampling::job_seed(13, i)).unwrap();
        let p = build_polytope(&net).unwrap();
        let mut r = sampling::rng(sampling::job_seed(14, i));
        for j in 0..50 {
            let x = RVector::new(
                (0..dims[0])
                    .map(|_| sampling::rational(&mut r, -50, 50, 7))
                    .collect(),
            );
            let f = support_eval(&net, &x).unwrap();
            check(
                f == forward(&net, &x),
                format!("net {i} direction {j}: forward pass"),
            )?;
            check(
                f == p.support(&x),
                format!("net {i} direction {j}: vertex max"),
            )?;
        }
    }
    let mut graphs = 0;
    for i in 0..400u64 {
        let mut r = sampling::rng(sampling::job_seed(15, i));
        let pts: Vec<RVector> = (0..5 + i as usize % 4)
            .map(|_| sampling::int_vector(&mut r, 3, -20, 20))
            .collect();
        let p = hull(&pts).unwrap();
        if p.dim() != 3 || p.num_facets() > 12 {
            continue;
        }
        let g = DualGraph::from_polytope(&p).unwrap();
        let out = max_bicolored_dfs(&g, None);
        check(
            out.max_bicolored == brute_force(&g),
            format!("dual graph {i}"),
        )?;
        graphs += 1;
    }
    check(graphs >= 100, format!("only {graphs} dual graphs"))?;
    Ok(format!("200 hulls, 2500 evaluations, {graphs} dual graphs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("extremal boxtope f-vectors", c1),
        ("f-polynomial identity", c2),
        ("boxtope realizations", c3),
        ("planar zonoboxtope edge bound", c4),
        ("3D zonoboxtope vertex bounds", c5),
        ("separating complex topology", c6),
        ("lifted cube", c7),
        ("cubical generic networks", c8),
        ("bottleneck type (3,2,3)", c9),
        ("candidate rank condition", c10),
        ("generic dimension", c11),
        ("oracle suites", c12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}) [{secs:.1}s]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} {name}: FAIL ({detail}) [{secs:.1}s]",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
