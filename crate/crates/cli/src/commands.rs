use std::fs::File;
use std::io::BufReader;
use std::time::Instant;

use anyhow::{ensure, Context, Result};
use fbpaths::apsp::{apsp, apsp_from_costs, write_matrix, ApspConfig};
use fbpaths::graph::io;
use fbpaths::oracle::{
    lambda_in_from_increments, pertinence_rates, pertinence_rng, sample_spt, sampled_pertinence, PertinenceCounts,
};
use fbpaths::seed::derive_seed;
use fbpaths::sssp::{check_fb_invariants, dijkstra, dijkstra_counted, distances_close, fb_sssp, same_distances, spira};
use fbpaths::verify::{verify_fb, verify_forward_only, verify_full};
use fbpaths::{FbConfig, ScanStats, ShortestPathTree, SortedDigraph, WeightModel};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Algo, OutputArgs, QueueArgs};
use crate::report::{aggregate, write_atomic, Report, CSV_SCHEMA};
use crate::tree_file;
use crate::{
    ApspArgs, BenchCommand, Command, GenArgs, Outcome, SampleArgs, ScanScalingArgs, SsspArgs, VerifyArgs,
    VerifyCompareArgs, VerifyMode,
};

const REL_TOL: f64 = 1e-9;

pub(crate) fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Sssp(a) => sssp(a),
        Command::Verify(a) => verify(a),
        Command::Apsp(a) => run_apsp(a),
        Command::Sample(a) => sample(a),
        Command::Bench(BenchCommand::ScanScaling(a)) => scan_scaling(a),
        Command::Bench(BenchCommand::VerifyCompare(a)) => verify_compare(a),
    }
}

fn emit(report: Report, out: &OutputArgs) -> Result<()> {
    report.emit(out.out_dir.as_deref(), out.tag.as_deref())?;
    Ok(())
}

fn config_echo<T: Serialize>(args: &T) -> Result<Value> {
    Ok(serde_json::to_value(args)?)
}

fn n_ln_n(n: usize) -> f64 {
    n as f64 * (n as f64).ln()
}

fn max_finite(dist: &[f64]) -> f64 {
    dist.iter().copied().filter(|d| d.is_finite()).fold(0.0, f64::max)
}

fn gen(a: GenArgs) -> Result<Outcome> {
    a.graph.validate()?;
    let seed = derive_seed(a.seed, 0);
    let start = Instant::now();
    let g = a.graph.build(seed)?;
    let elapsed = start.elapsed();
    write_atomic(&a.output, |w| Ok(io::write_graph(&g, w)?))?;
    let summary = json!({
        "n": g.n(),
        "directed": g.is_directed(),
        "edges": g.edge_count(),
        "model": a.graph.model_name(),
        "graph_seed": seed,
        "output": a.output,
        "wall_time_ns": elapsed.as_nanos() as u64,
    });
    emit(Report::new("gen", config_echo(&a)?, summary), &a.out)?;
    Ok(Outcome::Success)
}

/// Runs `algo` from `source`; queue construction happens before the clock starts.
fn run_algo(
    g: &SortedDigraph,
    source: usize,
    algo: Algo,
    queue: &QueueArgs,
) -> Result<(ShortestPathTree, ScanStats, u64)> {
    let n = g.n();
    let out = match algo {
        Algo::Dijkstra => {
            let start = Instant::now();
            let (t, s) = dijkstra_counted(g, source);
            (t, s, start.elapsed())
        }
        Algo::Spira => {
            let kind = queue.kind(n)?;
            let start = Instant::now();
            let (t, s) = spira(g, source, kind);
            (t, s, start.elapsed())
        }
        Algo::Fb => {
            let cfg = queue.fb_config(n)?;
            let start = Instant::now();
            let (t, s) = fb_sssp(g, source, &cfg);
            (t, s, start.elapsed())
        }
    };
    Ok((out.0, out.1, out.2.as_nanos() as u64))
}

#[derive(Serialize)]
struct SsspRow {
    schema: u32,
    trial: usize,
    seed: u64,
    n: usize,
    source: usize,
    algo: &'static str,
    pq: &'static str,
    forward_scans: u64,
    backward_scans: u64,
    total_scans: u64,
    scans_per_n: f64,
    p_inserts: u64,
    p_extracts: u64,
    q_inserts: u64,
    q_extracts: u64,
    inserts_per_n: f64,
    requests: u64,
    urgent_requests: u64,
    median: Option<f64>,
    size_at_median: u64,
    reachable: usize,
    max_distance: f64,
    p_non_pertinent: Option<usize>,
    q_in_pertinent: Option<usize>,
    wall_time_ns: u64,
}

/// Audit counts for fb, or the first broken property.
fn audit(g: &SortedDigraph, tree: &ShortestPathTree, a: &SsspArgs) -> Result<Option<(usize, usize)>, String> {
    let reference = dijkstra(g, a.source);
    if !same_distances(tree, &reference.dist, REL_TOL) {
        return Err("distances differ from Dijkstra".into());
    }
    if tree.reachable_count() == tree.n() {
        let report = verify_full(g, tree).map_err(|e| e.to_string())?;
        if let Some(w) = report.witness {
            return Err(format!("tree rejected at edge ({}, {})", w.u, w.v));
        }
    }
    if a.algo != Algo::Fb {
        return Ok(None);
    }
    let cfg = a.queue.fb_config(g.n()).map_err(|e| e.to_string())?;
    let r = check_fb_invariants(g, a.source, &cfg).map_err(|e| e.to_string())?;
    Ok(Some((r.p_non_pertinent, r.q_in_pertinent)))
}

fn sssp(a: SsspArgs) -> Result<Outcome> {
    a.graph.validate()?;
    a.queue.validate(a.algo)?;
    a.trials.validate()?;
    let mut outcome = Outcome::Success;
    let mut rows = Vec::with_capacity(a.trials.trials);
    for trial in 0..a.trials.trials {
        let seed = derive_seed(a.trials.seed, trial as u64);
        let g = a.graph.build(seed)?;
        let n = g.n();
        ensure!(a.source < n, "--source {} out of range for n = {n}", a.source);
        let (tree, st, wall) = run_algo(&g, a.source, a.algo, &a.queue)?;
        let mut pertinent = None;
        if a.check_invariants {
            match audit(&g, &tree, &a) {
                Ok(p) => pertinent = p,
                Err(msg) => {
                    eprintln!("trial {trial}: invariant violated: {msg}");
                    outcome = Outcome::Violation;
                }
            }
        }
        if trial == 0 {
            if let Some(path) = &a.tree_out {
                write_atomic(path, |w| tree_file::write_tree(&tree, w))?;
            }
        }
        rows.push(SsspRow {
            schema: CSV_SCHEMA,
            trial,
            seed,
            n,
            source: a.source,
            algo: a.algo.name(),
            pq: a.queue.name(a.algo),
            forward_scans: st.forward_scans,
            backward_scans: st.backward_scans,
            total_scans: st.total_scans(),
            scans_per_n: st.total_scans() as f64 / n as f64,
            p_inserts: st.p_inserts,
            p_extracts: st.p_extracts,
            q_inserts: st.q_inserts,
            q_extracts: st.q_extracts,
            inserts_per_n: st.total_inserts() as f64 / n as f64,
            requests: st.requests,
            urgent_requests: st.urgent_requests,
            median: st.median,
            size_at_median: st.size_at_median,
            reachable: tree.reachable_count(),
            max_distance: max_finite(&tree.dist),
            p_non_pertinent: pertinent.map(|p| p.0),
            q_in_pertinent: pertinent.map(|p| p.1),
            wall_time_ns: wall,
        });
    }
    let summary = json!({
        "algo": a.algo.name(),
        "pq": a.queue.name(a.algo),
        "model": a.graph.model_name(),
        "trials": rows.len(),
        "invariants_checked": a.check_invariants,
        "invariants_ok": outcome == Outcome::Success,
        "aggregates": aggregate(&rows)?,
    });
    emit(Report::new("sssp", config_echo(&a)?, summary).with_rows(&rows)?, &a.out)?;
    Ok(outcome)
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    a.graph.validate()?;
    let g = a.graph.build(derive_seed(a.seed, 0))?;
    let file = File::open(&a.tree).with_context(|| format!("opening {}", a.tree.display()))?;
    let tree = tree_file::read_tree(BufReader::new(file)).with_context(|| format!("reading {}", a.tree.display()))?;
    let start = Instant::now();
    let result = match a.mode {
        VerifyMode::Full => verify_full(&g, &tree),
        VerifyMode::Forward => verify_forward_only(&g, &tree),
        VerifyMode::Fb => verify_fb(&g, &tree),
    };
    let wall = start.elapsed().as_nanos() as u64;
    let (summary, outcome) = match result {
        Ok(r) => {
            let outcome = if r.accepted { Outcome::Success } else { Outcome::Rejected };
            (json!({ "mode": a.mode, "n": g.n(), "report": r, "wall_time_ns": wall }), outcome)
        }
        Err(e) => (
            json!({ "mode": a.mode, "n": g.n(), "accepted": false, "error": e.to_string(), "wall_time_ns": wall }),
            Outcome::Rejected,
        ),
    };
    emit(Report::new("verify", config_echo(&a)?, summary), &a.out)?;
    Ok(outcome)
}

#[derive(Serialize)]
struct ApspRow {
    schema: u32,
    source: usize,
    forward_scans: u64,
    backward_scans: u64,
    total_scans: u64,
    p_inserts: u64,
    q_inserts: u64,
    requests: u64,
    urgent_requests: u64,
}

fn run_apsp(a: ApspArgs) -> Result<Outcome> {
    a.graph.validate()?;
    a.queue.validate(Algo::Fb)?;
    let seed = derive_seed(a.seed, 0);
    let graph = if a.raw && !a.check { None } else { Some(a.graph.build(seed)?) };
    let n = graph.as_ref().map_or(a.graph.n, SortedDigraph::n);
    let cfg = ApspConfig { fb: Some(a.queue.fb_config(n)?), threads: a.threads };
    let result = if a.raw {
        let kind = a.graph.model.kind()?;
        let directed = a.graph.model.directed();
        let model = WeightModel::new(kind, seed);
        let costs: Vec<f64> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .map(|(u, v)| if u == v { 0.0 } else { model.edge_cost(u, v, directed) })
            .collect();
        apsp_from_costs(n, &costs, kind, directed, &cfg)?
    } else {
        apsp(graph.as_ref().expect("graph built when not raw"), &cfg)?
    };
    let mut outcome = Outcome::Success;
    if a.check {
        let g = graph.as_ref().expect("graph built for --check");
        for s in 0..n {
            let reference = dijkstra(g, s);
            let row = result.row(s);
            if let Some(t) = (0..n).find(|&t| !distances_close(row[t], reference.dist[t], REL_TOL)) {
                eprintln!("row {s}: distance to {t} is {}, Dijkstra gives {}", row[t], reference.dist[t]);
                outcome = Outcome::Violation;
                break;
            }
        }
    }
    if let Some(path) = &a.dump {
        write_atomic(path, |w| Ok(write_matrix(&result, w)?))?;
    }
    let rows: Vec<ApspRow> = result
        .per_source_stats
        .iter()
        .enumerate()
        .map(|(source, st)| ApspRow {
            schema: CSV_SCHEMA,
            source,
            forward_scans: st.forward_scans,
            backward_scans: st.backward_scans,
            total_scans: st.total_scans(),
            p_inserts: st.p_inserts,
            q_inserts: st.q_inserts,
            requests: st.requests,
            urgent_requests: st.urgent_requests,
        })
        .collect();
    let total = result.total_stats();
    let summary = json!({
        "n": n,
        "model": a.graph.model_name(),
        "threads": a.threads,
        "scans_per_n_squared": total.total_scans() as f64 / (n as f64 * n as f64),
        "total_stats": total,
        "checked": a.check,
        "check_ok": outcome == Outcome::Success,
        "preprocess_time_ns": result.preprocess_time.as_nanos() as u64,
        "total_time_ns": result.total_time.as_nanos() as u64,
        "aggregates": aggregate(&rows)?,
    });
    emit(Report::new("apsp", config_echo(&a)?, summary).with_rows(&rows)?, &a.out)?;
    Ok(outcome)
}

#[derive(Serialize)]
struct SampleRow {
    schema: u32,
    trial: usize,
    seed: u64,
    n: usize,
    median: f64,
    max_distance: f64,
    lambda_in: f64,
    lambda_out: f64,
    lambda_in_per_n: f64,
    lambda_in_from_increments: f64,
    out_spt: Option<u64>,
    in_spt: Option<u64>,
    out_non_spt: Option<u64>,
    in_non_spt: Option<u64>,
    pertinent_total: Option<u64>,
    pertinent_per_n: Option<f64>,
    wall_time_ns: u64,
}

fn sample(a: SampleArgs) -> Result<Outcome> {
    ensure!(a.n >= 1, "--n must be at least 1");
    a.trials.validate()?;
    if let Some(m) = a.tail_multiple {
        ensure!(m.is_finite() && m >= 0.0, "--tail-multiple must be a nonnegative number");
    }
    let counts = a.counts || a.tail_multiple.is_some();
    ensure!(!a.undirected || counts, "--undirected only affects --counts and --tail-multiple");
    let threshold = a.tail_multiple.map(|m| (m * a.n as f64).ceil() as u64);
    let mut hits = 0usize;
    let mut rows = Vec::with_capacity(a.trials.trials);
    for trial in 0..a.trials.trials {
        let seed = derive_seed(a.trials.seed, trial as u64);
        let start = Instant::now();
        let s = sample_spt(a.n, seed)?;
        let rates = pertinence_rates(&s);
        let c: Option<PertinenceCounts> =
            counts.then(|| sampled_pertinence(&s, !a.undirected, &mut pertinence_rng(seed), u64::MAX));
        let wall = start.elapsed().as_nanos() as u64;
        if let (Some(t), Some(c)) = (threshold, c) {
            hits += usize::from(c.total >= t);
        }
        rows.push(SampleRow {
            schema: CSV_SCHEMA,
            trial,
            seed,
            n: a.n,
            median: rates.median,
            max_distance: s.dist[a.n - 1],
            lambda_in: rates.lambda_in,
            lambda_out: rates.lambda_out,
            lambda_in_per_n: rates.lambda_in / a.n as f64,
            lambda_in_from_increments: lambda_in_from_increments(&s),
            out_spt: c.map(|c| c.out_spt),
            in_spt: c.map(|c| c.in_spt),
            out_non_spt: c.map(|c| c.out_non_spt),
            in_non_spt: c.map(|c| c.in_non_spt),
            pertinent_total: c.map(|c| c.total),
            pertinent_per_n: c.map(|c| c.total as f64 / a.n as f64),
            wall_time_ns: wall,
        });
    }
    let mut summary = json!({
        "n": a.n,
        "trials": rows.len(),
        "directed": !a.undirected,
        "aggregates": aggregate(&rows)?,
    });
    if let Some(t) = threshold {
        summary["tail_threshold"] = json!(t);
        summary["tail_hits"] = json!(hits);
        summary["tail_fraction"] = json!(hits as f64 / rows.len() as f64);
    }
    emit(Report::new("sample", config_echo(&a)?, summary).with_rows(&rows)?, &a.out)?;
    Ok(Outcome::Success)
}

fn validate_sizes(ns: &[usize]) -> Result<()> {
    ensure!(!ns.is_empty(), "--n needs at least one size");
    ensure!(ns.iter().all(|&n| n >= 2), "bench sizes must be at least 2");
    Ok(())
}

/// One summary entry per size, aggregating that size's rows.
fn per_size_table<R: Serialize>(ns: &[usize], rows: &[R], size_of: impl Fn(&R) -> usize) -> Result<Vec<Value>> {
    ns.iter()
        .map(|&n| {
            let subset: Vec<&R> = rows.iter().filter(|r| size_of(r) == n).collect();
            Ok(json!({ "n": n, "trials": subset.len(), "aggregates": aggregate(&subset)? }))
        })
        .collect()
}

#[derive(Serialize)]
struct ScalingRow {
    schema: u32,
    n: usize,
    trial: usize,
    seed: u64,
    algo: &'static str,
    pq: &'static str,
    forward_scans: u64,
    backward_scans: u64,
    total_scans: u64,
    scans_per_n: f64,
    scans_per_n_ln_n: f64,
    total_inserts: u64,
    inserts_per_n: f64,
    wall_time_ns: u64,
}

fn scan_scaling(a: ScanScalingArgs) -> Result<Outcome> {
    validate_sizes(&a.n)?;
    a.model.kind()?;
    a.queue.validate(a.algo)?;
    a.trials.validate()?;
    let mut rows = Vec::new();
    for &n in &a.n {
        for trial in 0..a.trials.trials {
            let seed = derive_seed(a.trials.seed, trial as u64);
            let g = a.model.generate(n, seed)?;
            let (_, st, wall) = run_algo(&g, 0, a.algo, &a.queue)?;
            rows.push(ScalingRow {
                schema: CSV_SCHEMA,
                n,
                trial,
                seed,
                algo: a.algo.name(),
                pq: a.queue.name(a.algo),
                forward_scans: st.forward_scans,
                backward_scans: st.backward_scans,
                total_scans: st.total_scans(),
                scans_per_n: st.total_scans() as f64 / n as f64,
                scans_per_n_ln_n: st.total_scans() as f64 / n_ln_n(n),
                total_inserts: st.total_inserts(),
                inserts_per_n: st.total_inserts() as f64 / n as f64,
                wall_time_ns: wall,
            });
        }
    }
    let summary = json!({
        "algo": a.algo.name(),
        "pq": a.queue.name(a.algo),
        "table": per_size_table(&a.n, &rows, |r| r.n)?,
    });
    emit(Report::new("bench-scan-scaling", config_echo(&a)?, summary).with_rows(&rows)?, &a.out)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct VerifyCompareRow {
    schema: u32,
    n: usize,
    trial: usize,
    seed: u64,
    forward_examined: u64,
    fb_examined: u64,
    forward_per_n_ln_n: f64,
    fb_per_n: f64,
    forward_over_fb: f64,
    forward_time_ns: u64,
    fb_time_ns: u64,
    wall_time_ns: u64,
}

fn verify_compare(a: VerifyCompareArgs) -> Result<Outcome> {
    validate_sizes(&a.n)?;
    a.model.kind()?;
    a.trials.validate()?;
    let mut outcome = Outcome::Success;
    let mut rows = Vec::new();
    for &n in &a.n {
        for trial in 0..a.trials.trials {
            let seed = derive_seed(a.trials.seed, trial as u64);
            let g = a.model.generate(n, seed)?;
            let (tree, _) = fb_sssp(&g, 0, &FbConfig::bucket(n));
            let start = Instant::now();
            let fwd = verify_forward_only(&g, &tree)?;
            let forward_time = start.elapsed().as_nanos() as u64;
            let start = Instant::now();
            let fb = verify_fb(&g, &tree)?;
            let fb_time = start.elapsed().as_nanos() as u64;
            if !(fwd.accepted && fb.accepted) {
                eprintln!("n = {n}, trial {trial}: a verifier rejected a shortest path tree");
                outcome = Outcome::Violation;
            }
            rows.push(VerifyCompareRow {
                schema: CSV_SCHEMA,
                n,
                trial,
                seed,
                forward_examined: fwd.edges_examined,
                fb_examined: fb.edges_examined,
                forward_per_n_ln_n: fwd.edges_examined as f64 / n_ln_n(n),
                fb_per_n: fb.edges_examined as f64 / n as f64,
                forward_over_fb: fwd.edges_examined as f64 / fb.edges_examined as f64,
                forward_time_ns: forward_time,
                fb_time_ns: fb_time,
                wall_time_ns: forward_time + fb_time,
            });
        }
    }
    let summary = json!({
        "table": per_size_table(&a.n, &rows, |r| r.n)?,
        "all_accepted": outcome == Outcome::Success,
    });
    emit(Report::new("bench-verify-compare", config_echo(&a)?, summary).with_rows(&rows)?, &a.out)?;
    Ok(outcome)
}
