//! End-to-end acceptance checks. Each test prints one PASS/FAIL line to the
//! real stderr (bypassing the harness capture) and then asserts.

use std::io::Write;
use std::time::{Duration, Instant};

use contraction_kernel::graph::{is_k_connected, is_two_edge_connected};
use contraction_kernel::oracle::HARD_LIMIT;
use contraction_kernel::par;
use contraction_kernel::witness::validate_witness;
use contraction_kernel::workbench::enumerate::{connected_graphs, connected_graphs_up_to, labelled_connected_graphs, relabel};
use contraction_kernel::workbench::generate::{blown_cycle, Family};
use contraction_kernel::workbench::run::{decided_by_kernel, kernelize, replay_matches, Kernelized};
use contraction_kernel::{
    CycleInstance, Execution, Graph, Instance, Oracle, PathInstance, PcfeInstance, Reduced, Rule, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: &str, title: &str, pass: bool, detail: &str) {
    let line = format!("{} {id} {title}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

/// Outcome of checking one instance against the oracle.
#[derive(Default)]
struct Tally {
    instances: usize,
    kernels: usize,
    disagreements: usize,
    bound_violations: usize,
    replay_failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.instances += other.instances;
        self.kernels += other.kernels;
        self.disagreements += other.disagreements;
        self.bound_violations += other.bound_violations;
        self.replay_failures += other.replay_failures;
        self.examples.extend(other.examples);
        self.examples.truncate(5);
    }

    fn clean(&self) -> bool {
        self.disagreements == 0 && self.bound_violations == 0 && self.replay_failures == 0
    }

    fn detail(&self) -> String {
        format!(
            "{} instances, {} kernels, {} disagreements, {} bound violations, {} replay failures",
            self.instances, self.kernels, self.disagreements, self.bound_violations, self.replay_failures
        )
    }
}

fn check_against_oracle(inst: &Instance, oracle: &Oracle) -> Tally {
    let mut t = Tally {
        instances: 1,
        ..Tally::default()
    };
    let k = kernelize(inst, Execution::Sequential).expect("kernelize");
    let truth = oracle.decide(inst).expect("oracle");
    let got = decided_by_kernel(oracle, &k).expect("oracle on kernel");
    if matches!(k.result, Reduced::Kernel(_)) {
        t.kernels = 1;
    }
    if got != truth {
        t.disagreements = 1;
        t.examples.push(format!(
            "k={} truth={truth} edges={:?}",
            inst.budget(),
            inst.graph().edges().collect::<Vec<_>>()
        ));
    }
    if !k.within_bound() {
        t.bound_violations = 1;
    }
    if !replay_matches(inst, &k).expect("replay") {
        t.replay_failures = 1;
    }
    t
}

/// Iso-class representatives up to 7 vertices, two random relabellings of
/// each, and every labelled connected graph up to 5 vertices.
fn small_graph_grid() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = Vec::new();
    for g in connected_graphs_up_to(7) {
        let a = relabel(&g, &mut rng);
        let b = relabel(&g, &mut rng);
        graphs.extend([g, a, b]);
    }
    for n in 1..=5 {
        graphs.extend(labelled_connected_graphs(n));
    }
    graphs
}

fn grid_tally(graphs: &[Graph], make: impl Fn(&Graph, usize) -> Instance + Sync, ks: std::ops::RangeInclusive<usize>) -> Tally {
    let oracle = Oracle::new(HARD_LIMIT);
    let per_graph = par::map(Execution::default(), graphs, |g| {
        let mut t = Tally::default();
        for k in ks.clone() {
            t.add(check_against_oracle(&make(g, k), &oracle));
        }
        t
    });
    let mut total = Tally::default();
    for t in per_graph {
        total.add(t);
    }
    total
}

#[test]
fn c1_cycle_kernel_matches_oracle_on_small_graphs() {
    let graphs = small_graph_grid();
    let t = grid_tally(&graphs, |g, k| Instance::Cycle(CycleInstance::new(g.clone(), k as i64)), 0..=4);
    let pass = t.clean() && t.instances == graphs.len() * 5;
    report("C1", "cycle kernel vs oracle, connected graphs <= 7, k 0..4", pass, &t.detail());
    assert!(pass, "{} {:?}", t.detail(), t.examples);
}

#[test]
fn c2_path_kernel_matches_oracle_on_small_graphs() {
    let graphs = small_graph_grid();
    let t = grid_tally(&graphs, |g, k| Instance::Path(PathInstance::new(g.clone(), k)), 0..=4);
    let pass = t.clean() && t.instances == graphs.len() * 5;
    report("C2", "path kernel vs oracle, connected graphs <= 7, k 0..4", pass, &t.detail());
    assert!(pass, "{} {:?}", t.detail(), t.examples);
}

#[test]
fn c3_pcfe_kernel_matches_oracle_with_anchors_kept() {
    let oracle = Oracle::new(HARD_LIMIT);
    let graphs = connected_graphs_up_to(6);
    let per_graph = par::map(Execution::default(), &graphs, |g| {
        let mut t = Tally::default();
        let mut anchors_lost = 0usize;
        let vs: Vec<Vertex> = g.vertices().collect();
        for &u in &vs {
            for &v in vs.iter().filter(|&&v| v != u) {
                for k in 0..=3 {
                    let inst = Instance::Pcfe(PcfeInstance::new(g.clone(), u, v, k));
                    t.add(check_against_oracle(&inst, &oracle));
                    let out = kernelize(&inst, Execution::Sequential).unwrap();
                    if let Reduced::Kernel(Instance::Pcfe(kern)) = &out.result {
                        if !kern.g.contains(kern.u) || !kern.g.contains(kern.v) || kern.u == kern.v {
                            anchors_lost += 1;
                        }
                        if kern.g.order() > 3 * k + 4 {
                            t.bound_violations += 1;
                        }
                    }
                }
            }
        }
        (t, anchors_lost)
    });
    let mut total = Tally::default();
    let mut lost = 0;
    for (t, l) in per_graph {
        total.add(t);
        lost += l;
    }
    let pass = total.clean() && lost == 0 && total.instances > 0;
    let detail = format!("{}, {} kernels missing an anchor", total.detail(), lost);
    report("C3", "pcfe kernel vs oracle, connected graphs <= 6, all anchor pairs, k 0..3", pass, &detail);
    assert!(pass, "{detail} {:?}", total.examples);
}

#[test]
fn c4_two_edge_connected_graphs_need_a_third_of_their_order() {
    let oracle = Oracle::new(HARD_LIMIT);
    let graphs: Vec<Graph> = (1..=8)
        .flat_map(connected_graphs)
        .filter(|g| g.order() >= 2 && is_two_edge_connected(g))
        .collect();
    let results = par::map(Execution::default(), &graphs, |g| {
        let q = oracle.min_to_path(g).unwrap().optimum.expect("every connected graph contracts to a path");
        (g.order(), q)
    });
    let violations = results.iter().filter(|&&(n, q)| 3 * q < n - 1).count();
    let tight = results.iter().filter(|&&(n, q)| 3 * q == n - 1).count();
    let pass = violations == 0 && !graphs.is_empty();
    let detail = format!(
        "{} graphs, {} violations, {} attain equality",
        graphs.len(),
        violations,
        tight
    );
    report("C4", "min path contractions >= (n-1)/3 on 2-edge-connected graphs <= 8", pass, &detail);
    assert!(pass, "{detail}");
}

#[derive(Default)]
struct ScaleTally {
    cycle_runs: usize,
    cycle_kernels: usize,
    rule4_kernels: usize,
    large_k_kernels: usize,
    small_k_rule4_kernels: usize,
    path_runs: usize,
    path_kernels: usize,
    violations: Vec<String>,
    replay_failures: usize,
    max_ratio: f64,
}

fn scale_instances() -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    let sizes = [100usize, 250, 500, 1000, 2000];
    for i in 0..150u64 {
        let n = sizes[i as usize % sizes.len()];
        let extra = rng.gen_range(0..=n / 50 + 3);
        let fam = Family::Random2Connected { n, m: n + extra };
        out.push((format!("{fam} seed {i}"), fam.generate(i).unwrap()));
    }
    for i in 0..50u64 {
        let n = sizes[i as usize % sizes.len()];
        let fam = Family::Random2Connected { n, m: 2 * n };
        out.push((format!("{fam} seed {i}"), fam.generate(i).unwrap()));
    }
    for i in 0..150u64 {
        let cells = rng.gen_range(20..=400);
        let sizes: Vec<usize> = (0..cells)
            .map(|_| if rng.gen_bool(0.9) { 1 } else { rng.gen_range(2..=5) })
            .collect();
        let fam = Family::BlownCycle(sizes);
        out.push((format!("blown-cycle seed {i}"), fam.generate(i).unwrap()));
    }
    for i in 0..100u64 {
        let core = sizes[i as usize % 4];
        let fam = Family::Decorated {
            core,
            core_m: core + rng.gen_range(0..=4),
            extra: rng.gen_range(1..=core.min(2000 - core)),
        };
        out.push((format!("{fam} seed {i}"), fam.generate(i).unwrap()));
    }
    for i in 0..50u64 {
        let fam = Family::Tree(sizes[i as usize % sizes.len()]);
        out.push((format!("{fam} seed {i}"), fam.generate(i).unwrap()));
    }
    out
}

fn scale_check(label: &str, g: &Graph, seed: usize) -> ScaleTally {
    let mut t = ScaleTally::default();
    // Three cycle budgets per graph: two large, one small.
    let ks = [12 + seed % 7, 19 + seed % 6, 2 + seed % 10];
    for &k in &ks {
        let inst = Instance::Cycle(CycleInstance::new(g.clone(), k as i64));
        let out: Kernelized = kernelize(&inst, Execution::Sequential).unwrap();
        t.cycle_runs += 1;
        if !replay_matches(&inst, &out).unwrap() {
            t.replay_failures += 1;
        }
        if let Reduced::Kernel(kern) = &out.result {
            t.cycle_kernels += 1;
            let order = kern.graph().order();
            let rule4 = out.trace.records.iter().any(|r| r.rule == Rule::Rule4);
            if rule4 {
                t.rule4_kernels += 1;
                if k < 12 {
                    t.small_k_rule4_kernels += 1;
                }
            }
            if k >= 12 {
                t.large_k_kernels += 1;
            }
            let limit = if k >= 12 {
                Some(5 * k + 4)
            } else if rule4 {
                Some(3 * (k / 2) + 3 * k + 10)
            } else {
                None
            };
            if let Some(limit) = limit {
                t.max_ratio = t.max_ratio.max(order as f64 / limit as f64);
                if order > limit {
                    t.violations.push(format!("{label} cycle k={k}: {order} > {limit}"));
                }
            }
            if !out.within_bound() {
                t.violations.push(format!("{label} cycle k={k}: {order} exceeds {}", out.bound));
            }
        }
    }
    for &k in &ks {
        let inst = Instance::Path(PathInstance::new(g.clone(), k));
        let out = kernelize(&inst, Execution::Sequential).unwrap();
        t.path_runs += 1;
        if !replay_matches(&inst, &out).unwrap() {
            t.replay_failures += 1;
        }
        if let Reduced::Kernel(kern) = &out.result {
            t.path_kernels += 1;
            if kern.graph().order() > 3 * k + 4 {
                t.violations.push(format!("{label} path k={k}: {} > {}", kern.graph().order(), 3 * k + 4));
            }
        }
    }
    t
}

#[test]
fn c5_kernel_sizes_at_scale() {
    let instances = scale_instances();
    let indexed: Vec<(usize, &(String, Graph))> = instances.iter().enumerate().collect();
    let tallies = par::map(Execution::default(), &indexed, |(i, (label, g))| scale_check(label, g, *i));
    let mut total = ScaleTally::default();
    for t in tallies {
        total.cycle_runs += t.cycle_runs;
        total.cycle_kernels += t.cycle_kernels;
        total.rule4_kernels += t.rule4_kernels;
        total.large_k_kernels += t.large_k_kernels;
        total.small_k_rule4_kernels += t.small_k_rule4_kernels;
        total.path_runs += t.path_runs;
        total.path_kernels += t.path_kernels;
        total.replay_failures += t.replay_failures;
        total.max_ratio = total.max_ratio.max(t.max_ratio);
        total.violations.extend(t.violations);
    }
    let max_n = instances.iter().map(|(_, g)| g.order()).max().unwrap_or(0);
    let pass = instances.len() >= 500 && total.violations.is_empty() && total.replay_failures == 0 && total.small_k_rule4_kernels > 0;
    let detail = format!(
        "{} graphs (n <= {max_n}), {} cycle runs / {} kernels ({} at k >= 12, {} via rule 4, {} of those at k < 12), {} path runs / {} kernels, {} violations, {} replay failures, max size/limit {:.2}",
        instances.len(),
        total.cycle_runs,
        total.cycle_kernels,
        total.large_k_kernels,
        total.rule4_kernels,
        total.small_k_rule4_kernels,
        total.path_runs,
        total.path_kernels,
        total.violations.len(),
        total.replay_failures,
        total.max_ratio
    );
    report("C5", "kernel size bounds on generated instances", pass, &detail);
    assert!(pass, "{detail} {:?}", &total.violations[..total.violations.len().min(5)]);
}

/// Degree-2 pairs whose removal leaves exactly two components, each with at
/// least `min_side` vertices.
fn split_pairs(g: &Graph, min_side: usize) -> Vec<(Vertex, Vertex)> {
    let deg2: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    let mut pairs = Vec::new();
    for (i, &x) in deg2.iter().enumerate() {
        for &y in &deg2[i + 1..] {
            let comps = g.without(&[x, y]).components();
            if comps.len() == 2 && comps.iter().all(|c| c.len() >= min_side) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

#[test]
fn c6_split_pairs_are_singletons_in_every_optimal_witness() {
    let oracle = Oracle::new(HARD_LIMIT);
    let mut graphs: Vec<Graph> = connected_graphs_up_to(8)
        .into_iter()
        .filter(|g| g.order() >= 3 && is_k_connected(g, 2))
        .collect();
    let exhaustive = graphs.len();
    for seed in 0..300u64 {
        let n = 9 + (seed % 2) as usize;
        let m = n + (seed % 4) as usize;
        graphs.push(Family::Random2Connected { n, m }.generate(seed).unwrap());
    }
    let results = par::map(Execution::default(), &graphs, |g| {
        // The weakest side condition comes from the smallest YES budget.
        let k = oracle.min_to_cycle(g).unwrap().optimum.expect("2-connected graphs contract to a cycle");
        let pairs = split_pairs(g, k + 1);
        if pairs.is_empty() {
            return (0, 0, 0, None);
        }
        let witnesses = oracle.enumerate_optimal_cycle_witnesses(g).unwrap();
        let mut bad = None;
        for &(x, y) in &pairs {
            for w in &witnesses {
                let single = |v: Vertex| w.sets.iter().any(|s| s.len() == 1 && s[0] == v);
                if !(single(x) && single(y)) && bad.is_none() {
                    bad = Some(format!("k={k} pair=({x},{y}) edges={:?} sets={:?}", g.edges().collect::<Vec<_>>(), w.sets));
                }
            }
        }
        (1, pairs.len(), witnesses.len() * pairs.len(), bad)
    });
    let probed: usize = results.iter().map(|r| r.0).sum();
    let pairs: usize = results.iter().map(|r| r.1).sum();
    let checks: usize = results.iter().map(|r| r.2).sum();
    let violations: Vec<&String> = results.iter().filter_map(|r| r.3.as_ref()).collect();
    let pass = violations.is_empty() && probed > 0;
    let detail = format!(
        "{} 2-connected graphs ({} exhaustive), {} with qualifying pairs, {} pairs, {} witness checks, {} violating graphs",
        graphs.len(),
        exhaustive,
        probed,
        pairs,
        checks,
        violations.len()
    );
    report("C6", "degree-2 split pairs are singleton witness sets", pass, &detail);
    assert!(pass, "{detail} {:?}", &violations[..violations.len().min(3)]);
}

#[test]
fn c7_large_instance_is_fast_and_replays_exactly() {
    let g = Family::Random2Connected { n: 10_000, m: 20_000 }.generate(1).unwrap();
    let inst = Instance::Cycle(CycleInstance::new(g, 20));
    let start = Instant::now();
    let out = kernelize(&inst, Execution::default()).unwrap();
    let elapsed = start.elapsed();
    let replay = replay_matches(&inst, &out).unwrap();
    let pass = elapsed < Duration::from_secs(60) && replay;
    let detail = format!(
        "n=10000 m=20000 k=20 -> {:?} ({}) in {:.2?}, replay {}",
        out.decision(),
        out.bound,
        elapsed,
        if replay { "exact" } else { "MISMATCH" }
    );
    report("C7", "random 2-connected graph, 10000 vertices", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn c8_planted_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let oracle = Oracle::new(HARD_LIMIT);
    let mut cases = Vec::new();
    for i in 0..100 {
        // Half small enough for the oracle to settle, half certificate-only.
        let cells = if i < 50 { rng.gen_range(3..=8) } else { rng.gen_range(8..=60) };
        let mut sizes: Vec<usize> = (0..cells)
            .map(|_| if rng.gen_bool(0.7) { 1 } else { rng.gen_range(2..=4) })
            .collect();
        if sizes.iter().all(|&s| s == 1) {
            sizes[0] = 2;
        }
        cases.push((sizes, rng.gen::<u64>()));
    }
    let mut problems = Vec::new();
    let (mut yes_direct, mut yes_oracle, mut yes_cert, mut no_checked, mut plain_cycles) = (0, 0, 0, 0, 0);
    for (sizes, seed) in &cases {
        let (g, witness) = blown_cycle(sizes, &mut ChaCha8Rng::seed_from_u64(*seed));
        let b = witness.contractions();
        if !validate_witness(&g, &witness) {
            problems.push(format!("{sizes:?}: planted witness invalid"));
            continue;
        }
        let inst = Instance::Cycle(CycleInstance::new(g.clone(), b as i64));
        let out = kernelize(&inst, Execution::default()).unwrap();
        if !replay_matches(&inst, &out).unwrap() {
            problems.push(format!("{sizes:?}: replay mismatch at k=b"));
        }
        match &out.result {
            Reduced::No => problems.push(format!("{sizes:?}: NO at the planted budget {b}")),
            Reduced::Yes => yes_direct += 1,
            Reduced::Kernel(kern) => {
                let order = kern.graph().order();
                if order <= 12 || (order <= HARD_LIMIT && kern.budget() <= 5) {
                    if decided_by_kernel(&oracle, &out).unwrap() {
                        yes_oracle += 1;
                    } else {
                        problems.push(format!("{sizes:?}: kernel at k=b decided NO by the oracle"));
                    }
                } else {
                    // The planted witness certifies YES; a kernel is the
                    // only answer left to check, and it is not NO.
                    yes_cert += 1;
                }
            }
        }
        if g.is_cycle() {
            plain_cycles += 1;
            continue;
        }
        let zero = Instance::Cycle(CycleInstance::new(g.clone(), 0));
        let out = kernelize(&zero, Execution::default()).unwrap();
        let truth = if g.order() <= HARD_LIMIT { oracle.decide(&zero).unwrap() } else { false };
        if truth {
            problems.push(format!("{sizes:?}: oracle says a non-cycle is YES at k=0"));
        }
        if !matches!(out.result, Reduced::No) {
            problems.push(format!("{sizes:?}: not NO at k=0"));
        }
        no_checked += 1;
    }
    let pass = problems.is_empty();
    let detail = format!(
        "100 instances: k=b YES directly {yes_direct}, kernel YES by oracle {yes_oracle}, kernel backed by certificate {yes_cert}; k=0 NO on {no_checked} non-cycles ({plain_cycles} already cycles); {} problems",
        problems.len()
    );
    report("C8", "planted blown-cycle instances", pass, &detail);
    assert!(pass, "{detail} {:?}", &problems[..problems.len().min(5)]);
}
