//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any fail.
//!
//! Run with `cargo test -p mbdiff --test acceptance` (add `-- 4 7` to run selected criteria).

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use mbdiff::config::ExperimentConfig;
use mbdiff::experiment::{run_experiment, ExperimentResult};
use mbdiff::stats::{compare, Summary};
use mbdiff_core::behavior::sample_resources;
use mbdiff_core::bounds::{full_utilization_points, max_utilization};
use mbdiff_core::eia::{different_branches, matched_intervals, OneStepContext};
use mbdiff_core::knapsack::{select_adoption_set, Item};
use mbdiff_core::live_edge::run_live_edge;
use mbdiff_core::rng::{stream_rng, StreamRng};
use mbdiff_core::{
    run_diffusion, AdoptionMode, BehaviorMask, BehaviorSet, Graph, ModelParams, SeedAssignment, ThresholdMode,
    Thresholds,
};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn experiment(toml: &str) -> ExperimentResult {
    let exp = ExperimentConfig::from_toml(toml).unwrap().resolve().unwrap();
    run_experiment(&exp).unwrap()
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// `a < b` significantly at level `p`.
fn less(a: &[f64], b: &[f64], p: f64) -> bool {
    let c = compare(a, b).unwrap();
    c.difference < 0.0 && c.p_value < p
}

/// `a <= b`: `a` is not significantly above `b` at level `p`.
fn at_most(a: &[f64], b: &[f64], p: f64) -> bool {
    let c = compare(a, b).unwrap();
    c.difference <= 0.0 || c.p_value >= p
}

fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn criterion_1() -> Outcome {
    let a = max_utilization(&full_utilization_points(&[0.2, 0.5, 0.7]));
    let b = max_utilization(&full_utilization_points(&[0.25, 0.5]));
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        let points: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        worst = worst.max((max_utilization(&points) - n as f64 / (n + 1) as f64).abs());
    }
    check(
        (a - 0.78).abs() < 1e-12 && (b - 0.75).abs() < 1e-12 && worst < 1e-12,
        format!("(0.2,0.5,0.7) -> {a:.15}, (0.25,0.5) -> {b:.15}, max n/(n+1) error {worst:.1e}"),
    )
}

/// A node `v` seeded with A, with 8 neighbors: 2 hold B, 3 hold C, 3 hold nothing.
fn criterion_2() -> Outcome {
    let signals = [0.0, 0.25, 0.375];
    let ctx = OneStepContext {
        budget: 1.0,
        seeded: BehaviorMask::single(0),
        signals: &signals,
    };
    let set = |xs: &[usize]| xs.iter().copied().collect::<BehaviorMask>();
    let prob_of = |parts: &[(f64, BehaviorMask)], m: BehaviorMask| {
        parts.iter().filter(|x| x.1 == m).map(|x| x.0).sum::<f64>()
    };
    let matched = matched_intervals(&ctx);
    let different = different_branches(&ctx, 20).unwrap();
    let mut exact_err: f64 = 0.0;
    for (m, p) in [(set(&[0, 1, 2]), 0.25), (set(&[0, 2]), 0.125), (set(&[0]), 0.625)] {
        exact_err = exact_err.max((prob_of(&matched, m) - p).abs());
    }
    for (m, p) in [
        (set(&[0, 1, 2]), 0.09375),
        (set(&[0, 1]), 0.15625),
        (set(&[0, 2]), 0.28125),
        (set(&[0]), 0.46875),
    ] {
        exact_err = exact_err.max((prob_of(&different, m) - p).abs());
    }

    // Costs 0.2/0.5/0.7, u = c, w = 0.5, r(v) = 1. Payoffs: A 0.1, B 0.375, C 0.5375.
    // Considering {A,B,C} or {A,C} the best affordable set is {A,C}; {A,B} gives {A,B}.
    // Matched: {A,C} w.p. 0.25 + 0.125, {A} w.p. 0.625.
    // Different: {A,C} w.p. 0.09375 + 0.28125, {A,B} w.p. 0.15625, {A} w.p. 0.46875.
    let edges: Vec<(usize, usize)> = (1..=8).map(|u| (0, u)).collect();
    let g = Graph::from_edges(9, edges).unwrap();
    let b = BehaviorSet::cost_valued(vec![0.2, 0.5, 0.7]).unwrap();
    let r = vec![1.0; 9];
    let seeds = SeedAssignment::from_sets(vec![vec![0], vec![1, 2], vec![3, 4, 5]]);
    let runs = 1_000_000u64;
    let mut details = vec![format!("exact error {exact_err:.1e}")];
    let mut ok = exact_err < 1e-12;
    let expected = [
        (ThresholdMode::Matched, vec![(set(&[0, 2]), 0.375), (set(&[0]), 0.625)]),
        (
            ThresholdMode::Different,
            vec![(set(&[0, 2]), 0.375), (set(&[0, 1]), 0.15625), (set(&[0]), 0.46875)],
        ),
    ];
    for (mode, dist) in expected {
        let params = ModelParams {
            adoption: AdoptionMode::Reevaluate,
            thresholds: mode,
            max_epochs: Some(1),
            ..ModelParams::default()
        };
        let mut counts = vec![0u64; dist.len()];
        let mut other = 0u64;
        for j in 0..runs {
            let t = Thresholds::sample(9, 3, mode, &mut stream_rng(2, j));
            let out = run_diffusion(&g, &b, &r, &t, &seeds, &params).unwrap();
            match dist.iter().position(|d| d.0 == out.adopted[0]) {
                Some(i) => counts[i] += 1,
                None => other += 1,
            }
        }
        let mut worst_z: f64 = 0.0;
        for (c, (_, p)) in counts.iter().zip(&dist) {
            let se = (p * (1.0 - p) / runs as f64).sqrt();
            worst_z = worst_z.max((*c as f64 / runs as f64 - p).abs() / se);
        }
        ok &= worst_z <= 3.0 && other == 0;
        details.push(format!("{mode:?} MC max |z| {worst_z:.2}"));
    }
    check(ok, details.join(", "))
}

fn criterion_3() -> Outcome {
    // v = 0 with neighbors a (holds all three), b (recycling and the second), c (recycling).
    let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let b = BehaviorSet::cost_valued(vec![0.2, 0.5, 0.7]).unwrap();
    let p0 = b.payoff(0.5, 0, 1.0);
    let p1 = b.payoff(0.5, 1, 2.0 / 3.0);
    let mut t = vec![0.99; 12];
    t[..3].copy_from_slice(&[0.1, 0.4, 0.6]);
    let t = Thresholds::from_values(3, t).unwrap();
    let seeds = SeedAssignment::from_sets(vec![vec![1, 2, 3], vec![1, 2], vec![1]]);
    let out = run_diffusion(&g, &b, &[0.6, 1.4, 1.0, 1.0], &t, &seeds, &ModelParams::default()).unwrap();
    let epoch1 = out.state_at(1)[0];
    check(
        (p0 - 0.6).abs() < 1e-12 && (p1 - 0.58).abs() < 0.005 && epoch1 == BehaviorMask::single(0),
        format!("payoffs {p0:.4} / {p1:.4}, epoch-1 set {epoch1:?}"),
    )
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for (gen, target, tol) in [("pa", 0.71, 0.02), ("sw", 0.72, 0.02), ("sc", 0.73, 0.04)] {
        let base = format!(
            "generator = \"{gen}\"\nheuristic = \"all\"\nadoption_mode = \"reevaluate\"\n\
             redraw_resources = true\nruns = 1000\nseed = 21\n"
        );
        let ta = experiment(&format!("{base}mode = \"ta\"\n"));
        let na = experiment(&format!("{base}mode = \"na\"\n"));
        let (st, sn) = (Summary::of(&ta.utilization()), Summary::of(&na.utilization()));
        let pass = (st.mean - target).abs() <= tol && st.overlaps(&sn);
        ok &= pass;
        details.push(format!(
            "{gen} TA {:.4} [{:.4},{:.4}] NA {:.4} [{:.4},{:.4}]",
            st.mean, st.ci_low, st.ci_high, sn.mean, sn.ci_low, sn.ci_high
        ));
    }
    check(ok, details.join("; "))
}

fn criterion_5() -> Outcome {
    let names = ["random", "degree-nt", "degree-t", "degree-resource", "ciw-rank", "ciw-margin"];
    let u: Vec<Vec<f64>> = names
        .iter()
        .map(|h| experiment(&format!("generator = \"pa\"\nheuristic = \"{h}\"\nruns = 500\nseed = 5\n")).utilization())
        .collect();
    let means: Vec<f64> = u.iter().map(|x| mean(x)).collect();
    let ordered = less(&u[0], &u[1], 0.05)
        && less(&u[1], &u[2], 0.05)
        && at_most(&u[2], &u[3], 0.05)
        && at_most(&u[3], &u[4], 0.05)
        && at_most(&u[3], &u[5], 0.05);
    let p_rank = compare(&u[4], &u[0]).unwrap().p_value;
    let p_margin = compare(&u[5], &u[0]).unwrap().p_value;
    let significant = means[4] > means[0] && means[5] > means[0] && p_rank < 0.01 && p_margin < 0.01;
    let endpoints = (means[0] - 0.12).abs() <= 0.05 && (means[4] - 0.37).abs() <= 0.05 && (means[5] - 0.37).abs() <= 0.05;
    let listing: Vec<String> = names.iter().zip(&means).map(|(n, m)| format!("{n} {m:.4}")).collect();
    check(
        ordered && significant && endpoints,
        format!(
            "{}; ordering {ordered}, CIW vs random p {p_rank:.1e}/{p_margin:.1e}, endpoints {endpoints}",
            listing.join(", ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut totals = [0.0; 3];
    let mut details = Vec::new();
    let mut slowest: f64 = 0.0;
    for seed in 1..=3 {
        let mut row = Vec::new();
        for (j, h) in ["kkt", "ciw-rank", "eia"].iter().enumerate() {
            let start = Instant::now();
            let r = experiment(&format!(
                "generator = \"pa\"\nn = 100\nb = 9\nheuristic = \"{h}\"\nkkt_runs = 1000\nruns = 1000\nseed = {seed}\n"
            ));
            if j == 0 {
                slowest = slowest.max(start.elapsed().as_secs_f64());
            }
            let m = mean(&r.participation());
            totals[j] += m;
            row.push(format!("{h} {m:.2}"));
        }
        details.push(format!("net {seed}: {}", row.join(" ")));
    }
    let (rank, eia) = (totals[1] / totals[0], totals[2] / totals[0]);
    check(
        rank >= 0.9 && eia >= 0.9 && slowest < 3600.0,
        format!(
            "{}; ciw-rank/kkt {rank:.3}, eia/kkt {eia:.3}, slowest kkt network {slowest:.0}s",
            details.join("; ")
        ),
    )
}

fn criterion_7() -> Outcome {
    let runs = 100_000u64;
    let params = ModelParams::default();
    let mut worst_z: f64 = 0.0;
    for inst in 0..50u64 {
        let mut rng = stream_rng(7000 + inst, 0);
        let g = random_graph(6, 0.5, &mut rng);
        let c0 = rng.gen_range(0.1..0.5);
        let b = BehaviorSet::new(vec![c0, c0 + rng.gen_range(0.05..0.5)], vec![rng.gen(), rng.gen()]).unwrap();
        let mut r = sample_resources(6, &mut rng);
        let mut sets = vec![Vec::new(); 2];
        let mut nodes: Vec<usize> = (0..6).collect();
        nodes.shuffle(&mut rng);
        for (j, &v) in nodes[..2].iter().enumerate() {
            sets[j].push(v);
            r[v] = r[v].max(b.cost(j));
        }
        let seeds = SeedAssignment::from_sets(sets);
        let (mut s1, mut q1, mut s2, mut q2) = (0.0, 0.0, 0.0, 0.0);
        for j in 0..runs {
            let t = Thresholds::sample(6, 2, ThresholdMode::Different, &mut stream_rng(inst, j));
            let x = run_diffusion(&g, &b, &r, &t, &seeds, &params).unwrap().metrics.participation as f64;
            let y = run_live_edge(&g, &b, &r, &seeds, &params, &mut stream_rng(inst + 1000, j))
                .unwrap()
                .outcome
                .metrics
                .participation as f64;
            s1 += x;
            q1 += x * x;
            s2 += y;
            q2 += y * y;
        }
        let n = runs as f64;
        let (m1, m2) = (s1 / n, s2 / n);
        let var = (q1 / n - m1 * m1) / n + (q2 / n - m2 * m2) / n;
        if var > 0.0 {
            worst_z = worst_z.max((m1 - m2).abs() / var.sqrt());
        } else if m1 != m2 {
            worst_z = f64::INFINITY;
        }
    }
    check(worst_z <= 3.0, format!("50 instances, max |z| {worst_z:.2}"))
}

/// Mean and squared standard error of participation over `runs` threshold draws.
fn sigma(g: &Graph, b: &BehaviorSet, r: &[f64], pairs: &[(usize, usize)], runs: u64, master: u64) -> (f64, f64) {
    let mut sets = vec![Vec::new(); b.k()];
    let mut r = r.to_vec();
    for &(v, i) in pairs {
        sets[i].push(v);
    }
    let seeds = SeedAssignment::from_sets(sets);
    for (v, m) in seeds.masks(g.node_count()).into_iter().enumerate() {
        r[v] = r[v].max(b.mask_cost(m));
    }
    let params = ModelParams::default();
    let (mut s, mut q) = (0.0, 0.0);
    for j in 0..runs {
        let t = Thresholds::sample(g.node_count(), b.k(), ThresholdMode::Different, &mut stream_rng(master, j));
        let x = run_diffusion(g, b, &r, &t, &seeds, &params).unwrap().metrics.participation as f64;
        s += x;
        q += x * x;
    }
    let n = runs as f64;
    let m = s / n;
    (m, (q / n - m * m) / n)
}

fn criterion_8() -> Outcome {
    let runs = 100_000;
    let (mut worst_mono, mut worst_dr): (f64, f64) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for inst in 0..20u64 {
        let mut rng = stream_rng(8000 + inst, 0);
        let g = random_graph(8, 0.35, &mut rng);
        let b = BehaviorSet::new(vec![0.2, 0.5], vec![rng.gen(), rng.gen()]).unwrap();
        let r = sample_resources(8, &mut rng);
        let mut nodes: Vec<usize> = (0..8).collect();
        nodes.shuffle(&mut rng);
        let pair = |v: usize, rng: &mut StreamRng| (v, rng.gen_range(0..2));
        let a = vec![pair(nodes[0], &mut rng)];
        let mut bigger = a.clone();
        bigger.push(pair(nodes[1], &mut rng));
        bigger.push(pair(nodes[2], &mut rng));
        let x = pair(nodes[3], &mut rng);
        let with = |s: &[(usize, usize)]| {
            let mut s = s.to_vec();
            s.push(x);
            s
        };
        let m = 100 * inst;
        let sa = sigma(&g, &b, &r, &a, runs, m);
        let sb = sigma(&g, &b, &r, &bigger, runs, m + 1);
        let sax = sigma(&g, &b, &r, &with(&a), runs, m + 2);
        let sbx = sigma(&g, &b, &r, &with(&bigger), runs, m + 3);
        // Normalized violations: positive beyond 3 means a failure.
        let z = |diff: f64, var: f64| if var > 0.0 { diff / var.sqrt() } else if diff > 1e-12 { f64::INFINITY } else { 0.0 };
        worst_mono = worst_mono.max(z(sa.0 - sb.0, sa.1 + sb.1)).max(z(sa.0 - sax.0, sa.1 + sax.1));
        let dr = (sbx.0 - sb.0) - (sax.0 - sa.0);
        worst_dr = worst_dr.max(z(dr, sa.1 + sb.1 + sax.1 + sbx.1));
    }
    check(
        worst_mono <= 3.0 && worst_dr <= 3.0,
        format!("20 instances, worst monotonicity violation {worst_mono:.2}σ, worst diminishing-gain violation {worst_dr:.2}σ"),
    )
}

fn criterion_9() -> Outcome {
    let strategies = ["low", "inverse", "uniform", "proportional", "high"];
    let results: Vec<ExperimentResult> = strategies
        .iter()
        .map(|s| {
            experiment(&format!(
                "generator = \"pa\"\nheuristic = \"ciw-margin\"\nstrategy = \"{s}\"\nb = 51\nruns = 500\nseed = 9\n"
            ))
        })
        .collect();
    let u: Vec<Vec<f64>> = results.iter().map(|r| r.utilization()).collect();
    let p: Vec<Vec<f64>> = results.iter().map(|r| r.participation()).collect();
    let util_ok = less(&u[0], &u[1], 0.05) && less(&u[1], &u[2], 0.05) && at_most(&u[2], &u[3], 0.05) && at_most(&u[3], &u[4], 0.05);
    let part_ok = less(&p[1], &p[0], 0.05) && less(&p[2], &p[1], 0.05) && at_most(&p[3], &p[2], 0.05) && at_most(&p[4], &p[3], 0.05);
    let single_ok = [&results[0], &results[4]]
        .iter()
        .all(|r| r.runs.iter().all(|x| x.metrics.participation == x.metrics.adoption));
    let listing: Vec<String> = strategies
        .iter()
        .enumerate()
        .map(|(j, s)| format!("{s} {:.4}/{:.1}", mean(&u[j]), mean(&p[j])))
        .collect();
    check(
        util_ok && part_ok && single_ok,
        format!(
            "utilization/participation {}; utilization order {util_ok}, participation order {part_ok}, low/high participation = adoption {single_ok}",
            listing.join(", ")
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for gen in ["pa", "sw", "sc"] {
        for h in ["kkt", "eia"] {
            let run = |topup: &str| {
                experiment(&format!(
                    "generator = \"{gen}\"\nn = 100\nb = 9\nheuristic = \"{h}\"\ntopup = \"{topup}\"\nkkt_runs = 1000\nruns = 1000\nseed = 10\n"
                ))
                .participation()
            };
            let (t, nt) = (run("t"), run("nt"));
            let c = compare(&t, &nt).unwrap();
            let pass = c.difference > 0.0 && c.p_value < 0.05;
            ok &= pass;
            details.push(format!("{gen}/{h} T {:.2} NT {:.2} p {:.1e}", mean(&t), mean(&nt), c.p_value));
        }
    }

    // Exhaustive: one seed per behavior on 8-node graphs, both variants topped up.
    let mut worst_gap: f64 = f64::INFINITY;
    for inst in 0..5u64 {
        let mut rng = stream_rng(10_000 + inst, 0);
        let g = random_graph(8, 0.35, &mut rng);
        let b = BehaviorSet::cost_valued(vec![0.2, 0.5]).unwrap();
        let r = sample_resources(8, &mut rng);
        let (mut best_s, mut best_m) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for u in 0..8 {
            for v in 0..8 {
                let s = sigma(&g, &b, &r, &[(u, 0), (v, 1)], 2000, 500 + inst).0;
                best_m = best_m.max(s);
                if u != v {
                    best_s = best_s.max(s);
                }
            }
        }
        worst_gap = worst_gap.min(best_m - best_s);
    }
    ok &= worst_gap >= 0.0;
    details.push(format!("exhaustive min(best M - best S) {worst_gap:.3}"));
    check(ok, details.join("; "))
}

/// Independent reference: recursive enumeration, optimal value first, then the
/// lexicographically smallest ascending index list among optima.
fn knapsack_reference(items: &[Item], budget: f64) -> (f64, Vec<usize>) {
    fn go(items: &[Item], j: usize, budget: f64, cost: f64, value: f64, chosen: &mut Vec<usize>, best: &mut Option<(f64, Vec<usize>)>) {
        if cost > budget + 1e-12 {
            return;
        }
        if j == items.len() {
            let better = match best {
                None => true,
                Some((bv, bs)) => value > *bv || (value == *bv && chosen.as_slice() < bs.as_slice()),
            };
            if better {
                *best = Some((value, chosen.clone()));
            }
            return;
        }
        chosen.push(items[j].index);
        go(items, j + 1, budget, cost + items[j].cost, value + items[j].value, chosen, best);
        chosen.pop();
        go(items, j + 1, budget, cost, value, chosen, best);
    }
    let mut best = None;
    go(items, 0, budget, 0.0, 0.0, &mut Vec::new(), &mut best);
    best.unwrap()
}

fn criterion_11() -> Outcome {
    let mut rng = stream_rng(11, 0);
    let mut mismatches = 0;
    for inst in 0..1000 {
        let k = rng.gen_range(1..=10);
        let mut indices: Vec<usize> = (0..12).collect();
        indices.shuffle(&mut rng);
        indices.truncate(k);
        indices.sort_unstable();
        // Even instances use dyadic values so that ties are exact and frequent.
        let items: Vec<Item> = indices
            .iter()
            .map(|&index| {
                if inst % 2 == 0 {
                    Item {
                        index,
                        value: f64::from(rng.gen_range(0..8u8)) / 8.0,
                        cost: f64::from(rng.gen_range(1..16u8)) / 16.0,
                    }
                } else {
                    Item {
                        index,
                        value: rng.gen(),
                        cost: rng.gen_range(0.01..1.0),
                    }
                }
            })
            .collect();
        let budget = if inst % 2 == 0 { f64::from(rng.gen_range(0..32u8)) / 16.0 } else { rng.gen_range(0.0..2.5) };
        let (_, want) = knapsack_reference(&items, budget);
        let got: Vec<usize> = select_adoption_set(&items, budget).iter().collect();
        if got != want {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("1000 instances, {mismatches} mismatches"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_mbdiff")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_12() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let read = |path: &str| std::fs::read(path).unwrap();
    let mut failures = Vec::new();
    let mut invocations = 0;
    let mut twice = |label: &str, make: &dyn Fn(&str) -> Vec<String>, file: bool| {
        let mut outputs = Vec::new();
        for copy in ["a", "b"] {
            let out = p(&format!("{label}-{copy}"));
            let args = make(&out);
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let (code, stdout) = cli(&args);
            outputs.push((code, if file { read(&out) } else { stdout }));
        }
        invocations += 1;
        if outputs[0] != outputs[1] || outputs[0].1.is_empty() {
            failures.push(label.to_string());
        }
    };
    let graph = p("graph.txt");
    cli(&["generate", "sc", "--n", "120", "--seed", "3", "--out", &graph]);
    for gen in ["pa", "sw", "sc"] {
        twice(
            &format!("generate-{gen}"),
            &|out| ["generate", gen, "--n", "200", "--seed", "7", "--out", out].map(String::from).to_vec(),
            true,
        );
    }
    for h in ["random", "ciw-margin", "eia", "kkt"] {
        let graph = graph.clone();
        twice(
            &format!("seeds-{h}"),
            &move |out| {
                ["seeds", "--graph", &graph, "--heuristic", h, "--alpha", "0.05", "--seed", "5", "--out", out]
                    .map(String::from)
                    .to_vec()
            },
            true,
        );
    }
    for (h, mode) in [("random", "ta"), ("ciw-rank", "na"), ("degree-t", "ta")] {
        twice(
            &format!("experiment-{h}-{mode}"),
            &move |out| {
                ["experiment", "--generator", "sw", "--n", "150", "--heuristic", h, "--mode", mode, "--runs", "4", "--seed", "5", "--out", out]
                    .map(String::from)
                    .to_vec()
            },
            true,
        );
    }
    twice("bound", &|_| ["bound", "--costs", "0.2,0.5,0.7"].map(String::from).to_vec(), false);
    let bound = cli(&["bound", "--costs", "0.2,0.5,0.7"]).1;
    if String::from_utf8_lossy(&bound).trim() != "0.780000" {
        failures.push("bound value".to_string());
    }
    check(
        failures.is_empty() && Path::new(&graph).exists(),
        format!("{invocations} invocation pairs, differing: {failures:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("analytic utilization bound", criterion_1),
        ("one-step adoption probabilities", criterion_2),
        ("four-node worked example", criterion_3),
        ("all-seeded utilization, TA and NA", criterion_4),
        ("heuristic utilization ordering on PA", criterion_5),
        ("greedy comparison at 100 nodes", criterion_6),
        ("live-edge equivalence", criterion_7),
        ("monotone diminishing spread", criterion_8),
        ("behavior distribution ordering", criterion_9),
        ("top-up and multiplicity dominance", criterion_10),
        ("knapsack against enumeration", criterion_11),
        ("CLI determinism", criterion_12),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (j, (name, f)) in criteria.iter().enumerate() {
        let id = j + 1;
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {id:>2} {name} ({:.1}s): {detail}", start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
