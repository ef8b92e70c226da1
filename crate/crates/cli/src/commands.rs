use std::time::Instant;

use anyhow::{bail, Result};
use hkpr_core::gen::GenParams;
use hkpr_core::hkpr::{hkpr_approx_seed, hkpr_exact_seed, HkprParams, VertexValues, DEFAULT_TOLERANCE};
use hkpr_core::metrics::error_report;
use hkpr_core::sweep::{
    cluster_hkpr_with, compare_clusters, ClusterOptions, ClusterParams, Cut, SweepMode, Verdict,
};
use hkpr_core::Graph;
use rayon::prelude::*;

use crate::args::{
    CompareArgs, ClusterArgs, GenArgs, HkprArgs, RankArgs, RunArgs, SamplingArgs, SweepModeArg,
    TargetArgs,
};
use crate::report::{emit, num, Header, Table};
use crate::source::{describe_seed, model, seed_vertex, GraphSource, TrialSeeds};

/// Trials that returned an error, by index.
#[derive(Debug, Default)]
pub struct Failures(pub Vec<(usize, String)>);

type Rows = Vec<Vec<String>>;

/// Runs trials in parallel and returns their rows in trial order.
fn run_trials<F>(trials: usize, timing: bool, trial: F) -> (Vec<(usize, Rows)>, Failures)
where
    F: Fn(usize) -> Result<Rows> + Sync,
{
    let results: Vec<(usize, Result<Rows>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let start = Instant::now();
            let rows = trial(i).map(|rows| {
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                rows.into_iter()
                    .map(|mut row| {
                        if timing {
                            row.push(format!("{elapsed:.3}"));
                        }
                        row
                    })
                    .collect()
            });
            (i, rows)
        })
        .collect();
    let mut done = Vec::new();
    let mut failures = Failures::default();
    for (i, result) in results {
        match result {
            Ok(rows) => done.push((i, rows)),
            Err(e) => failures.0.push((i, format!("{e:#}"))),
        }
    }
    (done, failures)
}

fn columns<'a>(base: &[&'a str], timing: bool) -> Vec<&'a str> {
    let mut cols = base.to_vec();
    if timing {
        cols.push("wall_clock_ms");
    }
    cols
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    Ok(())
}

fn describe_run(run: &RunArgs, header: &mut Header) {
    header.push("rng_seed", run.rng_seed);
    header.push("timing", run.timing);
}

fn describe_sampling(sampling: &SamplingArgs, header: &mut Header) {
    header.push("eps", sampling.eps);
    header.push_opt("K", sampling.k);
    header.push_opt("r", sampling.r);
}

fn hkpr_params(graph: &Graph, t: f64, sampling: &SamplingArgs, seed: u64) -> Result<HkprParams> {
    let mut params = HkprParams::new(graph.n(), t, sampling.eps, seed)?;
    if let Some(r) = sampling.r {
        params = params.with_samples(r);
    }
    if let Some(k) = sampling.k {
        params = params.with_walk_cap(k);
    }
    Ok(params)
}

pub fn hkpr(args: &HkprArgs) -> Result<Failures> {
    let source = GraphSource::open(&args.graph)?;
    let seeds = TrialSeeds::new(args.run.rng_seed, 0);
    let graph = source.graph(seeds.graph)?;
    let u = seed_vertex(&graph, &args.seed, seeds.vertex)?;

    let mut header = Header::new("hkpr");
    source.describe(&args.graph, &mut header);
    describe_seed(&args.seed, &mut header);
    describe_run(&args.run, &mut header);
    header.push("seed", graph.label(u));
    header.push("t", args.t);

    let start = Instant::now();
    let values: Vec<(usize, f64)> = if args.exact {
        header.push("mode", "exact");
        header.push("tol", args.tol);
        let rho = hkpr_exact_seed(&graph, u, args.t, args.tol)?;
        rho.values().iter().copied().enumerate().filter(|&(_, x)| x > 0.0).collect()
    } else {
        let params = hkpr_params(&graph, args.t, &args.sampling, seeds.sampling)?;
        header.push("mode", "approx");
        header.push("eps", params.eps);
        header.push("r", params.samples);
        header.push("K", params.walk_cap);
        let approx = hkpr_approx_seed(&graph, u, &params)?;
        approx.support().into_iter().map(|v| (v, approx.value(v))).collect()
    };
    if args.run.timing {
        header.push("wall_clock_ms", format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
    }

    let mut table = Table::new(&["vertex", "value"]);
    table.extend(values.into_iter().map(|(v, x)| vec![graph.label(v).to_string(), num(x)]));
    table.write(&header, args.run.out.as_deref())?;
    Ok(Failures::default())
}

/// `count` log-spaced caps from 1 to `⌈t⌉`.
fn default_caps(t: f64) -> Vec<u64> {
    let top = t.ceil().max(1.0);
    let count = 12;
    let mut caps: Vec<u64> = (0..count)
        .map(|i| top.powf(i as f64 / (count - 1) as f64).round() as u64)
        .collect();
    caps.dedup();
    caps
}

pub fn rank_experiment(args: &RankArgs) -> Result<Failures> {
    check_trials(args.trials)?;
    let source = GraphSource::open(&args.graph)?;
    let caps = if args.k.is_empty() {
        default_caps(args.t)
    } else {
        args.k.clone()
    };

    let mut header = Header::new("rank-experiment");
    source.describe(&args.graph, &mut header);
    describe_seed(&args.seed, &mut header);
    describe_run(&args.run, &mut header);
    header.push("t", args.t);
    header.push("eps", args.eps);
    header.push_opt("r", args.r);
    header.push(
        "K",
        caps.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "),
    );
    header.push("trials", args.trials);
    header.push("top_k", args.top_k);
    header.push("exact_tol", DEFAULT_TOLERANCE);

    let dist_k = format!("dist_{}", args.top_k);
    let base = ["trial", "seed", "K", "r", "avg_l1", "eps_error", "dist", dist_k.as_str()];

    let (done, failures) = run_trials(args.trials, args.run.timing, |trial| {
        let seeds = TrialSeeds::new(args.run.rng_seed, trial);
        let graph = source.graph(seeds.graph)?;
        let u = seed_vertex(&graph, &args.seed, seeds.vertex)?;
        let exact = hkpr_exact_seed(&graph, u, args.t, DEFAULT_TOLERANCE)?;
        let label = graph.label(u).to_string();
        let mut rows = Vec::new();
        if args.control {
            let report = error_report(&graph, &exact, &exact, args.eps, args.top_k)?;
            rows.push((None, report));
        }
        for &k in &caps {
            let mut params = HkprParams::new(graph.n(), args.t, args.eps, seeds.sampling)?.with_walk_cap(k);
            if let Some(r) = args.r {
                params = params.with_samples(r);
            }
            let approx = hkpr_approx_seed(&graph, u, &params)?;
            let report = error_report(&graph, &exact, &approx, args.eps, args.top_k)?;
            rows.push((Some((k, params.samples)), report));
        }
        Ok(rows
            .into_iter()
            .map(|(cap, report)| {
                let (k, r) = match cap {
                    Some((k, r)) => (k.to_string(), r.to_string()),
                    None => ("exact".to_string(), String::new()),
                };
                vec![
                    trial.to_string(),
                    label.clone(),
                    k,
                    r,
                    num(report.avg_l1),
                    num(report.eps_error),
                    num(report.intersection_difference),
                    num(report.topk_difference),
                ]
            })
            .collect())
    });

    let mut table = Table::new(&columns(&base, args.run.timing));
    // Means over completed trials, one per cap, in the same column layout.
    let mut sums: Vec<(String, String, [f64; 4], usize)> = Vec::new();
    for (_, rows) in &done {
        for row in rows {
            let metrics = [4, 5, 6, 7].map(|c| row[c].parse::<f64>().unwrap_or(f64::NAN));
            match sums.iter_mut().find(|(k, _, _, _)| *k == row[2]) {
                Some(entry) => {
                    for (acc, x) in entry.2.iter_mut().zip(metrics) {
                        *acc += x;
                    }
                    entry.3 += 1;
                }
                None => sums.push((row[2].clone(), row[3].clone(), metrics, 1)),
            }
        }
        table.extend(rows.iter().cloned());
    }
    for (k, r, totals, count) in sums {
        let mut row = vec!["mean".to_string(), String::new(), k, r];
        row.extend(totals.iter().map(|x| num(x / count as f64)));
        if args.run.timing {
            row.push(String::new());
        }
        table.push(row);
    }
    table.write(&header, args.run.out.as_deref())?;
    Ok(failures)
}

fn cluster_params(target: &TargetArgs, eps: f64) -> ClusterParams {
    ClusterParams {
        target_size: target.target_size,
        target_volume: target.target_volume,
        target_ratio: target.phi,
        eps,
    }
}

fn describe_target(target: &TargetArgs, header: &mut Header) {
    header.push("phi", target.phi);
    header.push("target_size", target.target_size);
    header.push("target_volume", target.target_volume);
    header.push("trials", target.trials);
}

fn cut_labels(graph: &Graph, cut: &Cut) -> String {
    cut.members
        .iter()
        .map(|&v| graph.label(v))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cluster(args: &ClusterArgs) -> Result<Failures> {
    check_trials(args.target.trials)?;
    let source = GraphSource::open(&args.graph)?;
    let params = cluster_params(&args.target, args.sampling.eps);
    let mode = match args.sweep_mode {
        SweepModeArg::Window => SweepMode::Window,
        SweepModeArg::Half => SweepMode::Half,
    };

    let mut header = Header::new("cluster");
    source.describe(&args.graph, &mut header);
    describe_seed(&args.seed, &mut header);
    describe_run(&args.run, &mut header);
    describe_sampling(&args.sampling, &mut header);
    describe_target(&args.target, &mut header);
    header.push("sweep_mode", format!("{mode:?}").to_lowercase());

    let base = ["trial", "seed", "t", "r", "K", "verdict", "ratio", "volume", "size", "cut"];
    let (done, failures) = run_trials(args.target.trials, args.run.timing, |trial| {
        let seeds = TrialSeeds::new(args.run.rng_seed, trial);
        let graph = source.graph(seeds.graph)?;
        let u = seed_vertex(&graph, &args.seed, seeds.vertex)?;
        let options = ClusterOptions {
            seed: seeds.sampling,
            samples: args.sampling.r,
            walk_cap: args.sampling.k,
            mode,
        };
        let result = cluster_hkpr_with(&graph, u, &params, &options)?;
        let verdict = match result.verdict {
            Verdict::Found => "FOUND",
            Verdict::NoCutFound => "NO_CUT_FOUND",
        };
        let mut row = vec![
            trial.to_string(),
            graph.label(u).to_string(),
            num(result.hkpr.t),
            result.hkpr.samples.to_string(),
            result.hkpr.walk_cap.to_string(),
            verdict.to_string(),
        ];
        match &result.cut {
            Some(cut) => row.extend([
                num(cut.point.ratio),
                cut.point.volume.to_string(),
                cut.point.size.to_string(),
                cut_labels(&graph, cut),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 4)),
        }
        Ok(vec![row])
    });

    let mut table = Table::new(&columns(&base, args.run.timing));
    table.extend(done.into_iter().flat_map(|(_, rows)| rows));
    table.write(&header, args.run.out.as_deref())?;
    Ok(failures)
}

pub fn compare(args: &CompareArgs) -> Result<Failures> {
    check_trials(args.target.trials)?;
    let source = GraphSource::open(&args.graph)?;
    let params = cluster_params(&args.target, args.sampling.eps);

    let mut header = Header::new("compare");
    source.describe(&args.graph, &mut header);
    describe_seed(&args.seed, &mut header);
    describe_run(&args.run, &mut header);
    describe_sampling(&args.sampling, &mut header);
    describe_target(&args.target, &mut header);

    let base = ["trial", "seed", "algorithm", "parameter", "ratio", "volume", "size", "cut"];
    let (done, failures) = run_trials(args.target.trials, args.run.timing, |trial| {
        let seeds = TrialSeeds::new(args.run.rng_seed, trial);
        let graph = source.graph(seeds.graph)?;
        let u = seed_vertex(&graph, &args.seed, seeds.vertex)?;
        let options = ClusterOptions {
            seed: seeds.sampling,
            samples: args.sampling.r,
            walk_cap: args.sampling.k,
            mode: SweepMode::Half,
        };
        let comparison = compare_clusters(&graph, u, &params, &options)?;
        Ok(comparison
            .cuts
            .iter()
            .map(|entry| {
                vec![
                    trial.to_string(),
                    graph.label(u).to_string(),
                    entry.algorithm.name().to_string(),
                    num(entry.parameter),
                    num(entry.cut.point.ratio),
                    entry.cut.point.volume.to_string(),
                    entry.cut.point.size.to_string(),
                    cut_labels(&graph, &entry.cut),
                ]
            })
            .collect())
    });

    let mut table = Table::new(&columns(&base, args.run.timing));
    table.extend(done.into_iter().flat_map(|(_, rows)| rows));
    table.write(&header, args.run.out.as_deref())?;
    Ok(failures)
}

pub fn gen(args: &GenArgs) -> Result<Failures> {
    let params = GenParams::new(args.n, args.d, args.p, args.rng_seed)?;
    let graph = model(args.model).generate(&params)?;
    let mut header = Header::new("gen");
    header.push("model", args.model.name());
    header.push("n", args.n);
    header.push("d", args.d);
    header.push("p", args.p);
    header.push("rng_seed", args.rng_seed);
    header.push("m", graph.m());
    let mut head = header.to_string();
    head.push('\n');
    emit(args.out.as_deref(), head.as_bytes(), graph.to_edge_list().as_bytes())?;
    Ok(Failures::default())
}
