use std::fs;
use std::path::Path;

use maxout_core::bicolor::{generic_generators, max_bicolored_dfs, sample_trial, DualGraph};
use maxout_core::candidate::{
    build_candidate, candidate_space_dim, rank_condition, realizability as realize,
    weight_space_dim, Realizability,
};
use maxout_core::extremal::{build_bd, build_bd_prime, extremal_2d_zonoboxtope, max_edges_2d};
use maxout_core::network::{build_polytope, validate};
use maxout_core::polytope::{f_vector, is_cubical, polar_dual, zonotope};
use maxout_core::separate::{
    classify_faces, perturb_to_general_position, separating_fan, FaceType,
};
use maxout_core::Polytope;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::format::{
    polytope_to_value, to_off, CandidateJson, GeneratorsJson, IncidenceJson, NetworkJson,
    PolytopeJson, Rat,
};
use crate::report::RunReport;

/// A report, or an input error message.
pub type CmdResult = Result<RunReport, String>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_polytope(path: &Path, p: &Polytope) -> Result<(), String> {
    let text =
        serde_json::to_string_pretty(&PolytopeJson::from_polytope(p)).expect("polytope serializes");
    write_file(path, &(text + "\n"))
}

pub fn read_polytope(path: &Path) -> Result<Polytope, String> {
    read_json::<PolytopeJson>(path)?
        .to_polytope()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn path_value(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn summary(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "f_vector": f_vector(p).0,
        "vertices": p.num_vertices(),
        "facets": p.num_facets(),
    })
}

pub fn build(network: Option<&Path>, candidate: Option<&Path>, out: Option<&Path>) -> CmdResult {
    let (source, p, extra) = match (network, candidate) {
        (Some(path), None) => {
            let net = read_json::<NetworkJson>(path)?.to_network()?;
            if let Err(v) = validate(&net) {
                let list: Vec<String> = v.iter().map(ToString::to_string).collect();
                return Err(format!("not input-convex: {}", list.join("; ")));
            }
            let p = build_polytope(&net).map_err(|e| e.to_string())?;
            (
                json!({ "network": path_value(path) }),
                p,
                json!({ "type": net.dims() }),
            )
        }
        (None, Some(path)) => {
            let c = read_json::<CandidateJson>(path)?.to_params()?;
            let p = build_candidate(&c).map_err(|e| e.to_string())?;
            (
                json!({ "candidate": path_value(path) }),
                p,
                json!({ "d": c.d, "n": c.n, "m": c.m }),
            )
        }
        _ => return Err("give exactly one of --network and --candidate".into()),
    };
    if let Some(out) = out {
        write_polytope(out, &p)?;
    }
    let mut outputs = summary(&p);
    outputs["source"] = extra;
    outputs["cubical"] = json!(is_cubical(&p));
    if p.dim() == 2 {
        outputs["polygon_edges"] = json!(p.num_facets());
    }
    let mut inputs = source;
    inputs["out"] = out.map_or(Value::Null, path_value);
    Ok(RunReport::new("build", inputs, None, outputs))
}

pub fn analyze(
    path: &Path,
    fvector: bool,
    cubical: bool,
    dual: bool,
    off: Option<&Path>,
) -> CmdResult {
    let p = read_polytope(path)?;
    let all = !(fvector || cubical || dual || off.is_some());
    let mut outputs = json!({
        "ambient_dim": p.ambient_dim(),
        "dim": p.dim(),
        "vertices": p.num_vertices(),
        "facets": p.num_facets(),
    });
    if fvector || all {
        let f = f_vector(&p);
        outputs["f_vector"] = json!(f.0);
        outputs["euler_relation"] = json!(f.satisfies_euler(p.dim()));
    }
    if cubical || all {
        outputs["cubical"] = json!(is_cubical(&p));
        if p.dim() == 3 {
            outputs["hexagonal_facets"] = json!(p.hexagonal_facets());
        }
    }
    if dual {
        let q = polar_dual(&p).map_err(|e| format!("polar dual: {e}"))?;
        outputs["dual"] = json!({ "f_vector": f_vector(&q).0, "polytope": polytope_to_value(&q) });
    }
    if let Some(off) = off {
        write_file(off, &to_off(&p)?)?;
        outputs["off_written"] = json!(true);
    }
    let inputs = json!({
        "polytope": path_value(path),
        "flags": { "fvector": fvector, "cubical": cubical, "dual": dual },
        "off": off.map_or(Value::Null, path_value),
    });
    Ok(RunReport::new("analyze", inputs, None, outputs))
}

fn label_counts(t: &maxout_core::separate::FaceTyping) -> Value {
    let mut m = serde_json::Map::new();
    for l in [FaceType::A, FaceType::B, FaceType::C, FaceType::D] {
        m.insert(l.to_string(), json!(t.count(l)));
    }
    Value::Object(m)
}

pub fn separating(p1_path: &Path, p2_path: &Path, perturb_seed: Option<u64>) -> CmdResult {
    let p1 = read_polytope(p1_path)?;
    let mut p2 = read_polytope(p2_path)?;
    let before = classify_faces(&p1, &p2).map_err(|e| e.to_string())?;
    let mut outputs = json!({ "general_position": before.in_general_position() });
    if let Some(seed) = perturb_seed {
        let (_, moved) = perturb_to_general_position(&p1, &p2, seed).map_err(|e| e.to_string())?;
        outputs["perturbed_p2"] = polytope_to_value(&moved);
        p2 = moved;
    }
    let typing = classify_faces(&p1, &p2).map_err(|e| e.to_string())?;
    outputs["ray_labels"] = typing
        .ray_labels()
        .into_iter()
        .map(|(ray, label)| json!({ "ray": ray.entries().iter().cloned().map(Rat).collect::<Vec<_>>(), "label": label.to_string() }))
        .collect();
    outputs["face_types"] = label_counts(&typing);
    if typing.in_general_position() {
        let s = separating_fan(&p1, &p2).map_err(|e| e.to_string())?;
        outputs["cones"] = s
            .splits
            .iter()
            .enumerate()
            .map(|(i, &k)| json!({ "vertex": i, "hull_vertices": k, "split": k > 1 }))
            .collect();
        outputs["complex"] = json!({
            "f_vector": s.f_vector,
            "components": s.components,
            "euler_characteristic": s.euler_characteristic,
            "component_euler": s.component_euler,
            "hull_f_vector": f_vector(&s.hull).0,
        });
    } else {
        outputs["complex"] = Value::Null;
    }
    let inputs = json!({ "p1": path_value(p1_path), "p2": path_value(p2_path) });
    Ok(RunReport::new("separating", inputs, perturb_seed, outputs))
}

pub fn bicolor_bound(
    gens: Option<&Path>,
    incidence: Option<&Path>,
    budget: Option<u64>,
) -> CmdResult {
    let (inputs, g, mut outputs, base_vertices) = match (gens, incidence) {
        (Some(path), None) => {
            let (base, gens) = read_json::<GeneratorsJson>(path)?.to_vectors()?;
            let z = zonotope(&base, &gens).map_err(|e| e.to_string())?;
            if !z.is_full_dimensional() {
                return Err("the zonotope is not full-dimensional".into());
            }
            let g = DualGraph::from_polytope(&z).map_err(|e| e.to_string())?;
            let out = json!({ "generic": generic_generators(&gens), "zonotope_f_vector": f_vector(&z).0 });
            (
                json!({ "zonotope": path_value(path) }),
                g,
                out,
                z.num_vertices(),
            )
        }
        (None, Some(path)) => {
            let inc = read_json::<IncidenceJson>(path)?;
            let g = DualGraph::new(inc.nodes, &inc.edges, inc.cells.clone())
                .map_err(|e| e.to_string())?;
            (
                json!({ "incidence": path_value(path) }),
                g,
                json!({}),
                inc.cells.len(),
            )
        }
        _ => return Err("give exactly one of --zonotope and --incidence".into()),
    };
    let r = max_bicolored_dfs(&g, budget);
    outputs["base_vertices"] = json!(base_vertices);
    outputs["max_bicolored"] = json!(r.max_bicolored);
    outputs["upper_bicolored"] = json!(r.upper);
    outputs["exact"] = json!(r.exact);
    outputs["vertex_bound"] = json!(base_vertices + r.upper);
    outputs["witness"] = json!(r
        .witness
        .colors()
        .iter()
        .map(ToString::to_string)
        .collect::<String>());
    outputs["search_nodes"] = json!(r.nodes);
    let mut inputs = inputs;
    inputs["budget"] = json!(budget);
    Ok(RunReport::new("bicolor-bound", inputs, None, outputs))
}

/// Runs trials `0..trials` on `jobs` threads; the result is independent of `jobs`.
pub fn sample_zonoboxtope(d: usize, n: usize, trials: usize, seed: u64, jobs: usize) -> CmdResult {
    if d == 0 || d > n || trials == 0 || jobs == 0 {
        return Err(format!("need 1 <= d <= n, trials > 0 and jobs > 0, got d = {d}, n = {n}, trials = {trials}, jobs = {jobs}"));
    }
    let jobs = jobs.min(trials);
    let results: Vec<Result<(usize, usize), String>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                s.spawn(move || {
                    let mut best: Option<(usize, usize)> = None;
                    for trial in (j..trials).step_by(jobs) {
                        let (_, p) = sample_trial(d, n, seed, trial).map_err(|e| e.to_string())?;
                        let v = p.num_vertices();
                        if best.is_none_or(|(bv, bt)| v > bv || (v == bv && trial < bt)) {
                            best = Some((v, trial));
                        }
                    }
                    Ok(best.expect("each job has a trial"))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread"))
            .collect()
    });
    let mut best = (0, usize::MAX);
    for r in results {
        let (v, t) = r?;
        if v > best.0 || (v == best.0 && t < best.1) {
            best = (v, t);
        }
    }
    let (data, p) = sample_trial(d, n, seed, best.1).map_err(|e| e.to_string())?;
    let outputs = json!({
        "best_f0": best.0,
        "trial": best.1,
        "f_vector": f_vector(&p).0,
        "witness": polytope_to_value(&p),
        "zonotope_f0": data.zonotope_part().map_err(|e| e.to_string())?.num_vertices(),
    });
    let inputs = json!({ "d": d, "n": n, "trials": trials });
    Ok(RunReport::new(
        "sample-zonoboxtope",
        inputs,
        Some(seed),
        outputs,
    ))
}

pub fn realizability(path: &Path, seed: u64) -> CmdResult {
    let c = read_json::<CandidateJson>(path)?.to_params()?;
    let (holds, rank) = rank_condition(&c).map_err(|e| e.to_string())?;
    let tier = realize(&c, seed).map_err(|e| e.to_string())?;
    let p = build_candidate(&c).map_err(|e| e.to_string())?;
    let mut outputs = json!({
        "rank": rank,
        "rank_condition": holds,
        "candidate_space_dim": candidate_space_dim(c.d, c.n, c.m),
        "weight_space_dim": weight_space_dim(c.d, c.n, c.m),
        "polytope": summary(&p),
    });
    outputs["tier"] = json!(match &tier {
        Realizability::Realized(_) => "realized",
        Realizability::NecessaryConditionHolds { .. } => "necessary-condition-holds",
        Realizability::FailsNecessaryCondition { .. } => "fails-necessary-condition",
    });
    if let Realizability::Realized(net) = &tier {
        outputs["witness"] =
            serde_json::to_value(NetworkJson::from_network(net)).expect("network serializes");
    }
    Ok(RunReport::new(
        "realizability",
        json!({ "candidate": path_value(path) }),
        Some(seed),
        outputs,
    ))
}

pub fn extremal(which: &str, k: usize, out: Option<&Path>) -> CmdResult {
    let p = match which {
        "bd" => build_bd(k),
        "bdprime" => build_bd_prime(k),
        _ => extremal_2d_zonoboxtope(k),
    }
    .map_err(|e| e.to_string())?;
    if let Some(out) = out {
        write_polytope(out, &p)?;
    }
    let mut outputs = summary(&p);
    outputs["polytope"] = polytope_to_value(&p);
    let inputs = if which == "zonobox2d" {
        outputs["max_edges"] = json!(max_edges_2d(k));
        json!({ "n": k })
    } else {
        outputs["cubical"] = json!(is_cubical(&p));
        json!({ "d": k })
    };
    Ok(RunReport::new(
        &format!("extremal {which}"),
        inputs,
        None,
        outputs,
    ))
}

pub fn export_off(path: &Path, out: &Path) -> CmdResult {
    let p = read_polytope(path)?;
    write_file(out, &to_off(&p)?)?;
    let outputs = json!({ "vertices": p.num_vertices(), "faces": if p.dim() == 3 { p.num_facets() } else { 1 } });
    Ok(RunReport::new(
        "export-off",
        json!({ "polytope": path_value(path), "out": path_value(out) }),
        None,
        outputs,
    ))
}
