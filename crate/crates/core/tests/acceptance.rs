//! Prints one PASS/FAIL line per acceptance criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{bounding_stream, edge_predicate, incremental_stream};
use divtopk::cut::compress;
use divtopk::fixtures::{self, CaterpillarParams};
use divtopk::framework::{GeneratorMode, VecGenerator};
use divtopk::textsearch::{Corpus, SearchEngine};
use divtopk::{
    brute_force, div_astar, div_astar_in, div_cut, div_dp, div_search, greedy, oplus, solve, Algorithm, Budget,
    DiversityGraph, DivSolver, Error, SearchContext, SearchOptions, SearchOutcome, Solution, SolutionTable,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut graphs = 0;
    let mut tables = 0;
    for n in 4..=18usize {
        for p in [0.1, 0.3, 0.6] {
            for rep in 0..12u64 {
                let seed = (n as u64) * 1000 + (p * 10.0) as u64 * 100 + rep;
                let g = fixtures::random_graph::<u32>(n, p, seed);
                graphs += 1;
                let mut ks = vec![1, n / 2, n];
                ks.dedup();
                for k in ks {
                    let want = brute_force(&g, k).map_err(|e| e.to_string())?.scores();
                    for (name, t) in [("astar", div_astar(&g, k)), ("dp", div_dp(&g, k)), ("cut", div_cut(&g, k))] {
                        tables += 1;
                        ensure(t.scores() == want, || {
                            format!("{name} differs from brute_force on n={n} p={p} seed={seed} k={k}")
                        })?;
                        t.validate(&g).map_err(|e| format!("{name} n={n} seed={seed}: {e}"))?;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{graphs} graphs, {tables} tables in {:.1} s", elapsed.as_secs_f64()))
}

fn labels(g: &DiversityGraph<u32>, nodes: &[divtopk::NodeId]) -> Vec<String> {
    let mut l: Vec<String> = nodes.iter().map(|&id| g.label_of(id).to_string()).collect();
    l.sort();
    l
}

fn f1_trace() -> Check {
    let g = fixtures::fig1::<u32>();
    for algo in Algorithm::ALL {
        let t = solve(&g, 3, algo, &mut SearchContext::default()).map_err(|e| e.to_string())?;
        ensure(t.score(2) == Some(18) && t.score(3) == Some(20), || format!("{algo} gives {:?}", t.scores()))?;
    }
    let t = brute_force(&g, 3).map_err(|e| e.to_string())?;
    ensure(t.score(2) == Some(18) && t.score(3) == Some(20), || "brute_force disagrees".into())?;

    let mut ctx = SearchContext::traced();
    div_astar_in(&g, 3, &mut ctx).map_err(|e| e.to_string())?;
    let trace = ctx.trace.unwrap_or_default();
    let phase = |kp: usize| -> Vec<(Vec<String>, u32)> {
        trace
            .iter()
            .filter(|p| p.kprime == kp)
            .map(|p| (labels(&g, &p.solution), p.bound))
            .collect()
    };
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();

    let p3 = phase(3);
    let want3 = [s(&[]), s(&["v3"]), s(&["v3", "v4"]), s(&["v3", "v4", "v5"])];
    ensure(p3.len() == 4, || format!("phase 3 pops {p3:?}"))?;
    for (i, (sol, bound)) in p3.iter().enumerate() {
        ensure(*sol == want3[i], || format!("phase 3 pop {i} is {sol:?}"))?;
        ensure(i == 0 || *bound == 20, || format!("phase 3 pop {i} has bound {bound}"))?;
    }

    let p2 = phase(2);
    let want2 = [(s(&["v1"]), 18), (s(&["v1", "v2"]), 18)];
    let found = p2.windows(2).any(|w| w[0] == want2[0] && w[1] == want2[1]);
    ensure(found, || format!("phase 2 pops {p2:?}"))?;
    Ok(format!("phase 3 {} pops, phase 2 {} pops", p3.len(), p2.len()))
}

fn fig7_oplus() -> Check {
    let g = fixtures::fig6::<u32>();
    let id = |l: &str| g.id_of(l).unwrap();
    let sol = |ls: &[&str]| {
        let nodes: Vec<_> = ls.iter().map(|l| id(l)).collect();
        let score = g.total_score(&nodes);
        (nodes.len(), Solution::new(nodes, score))
    };
    let d1 = SolutionTable::from_entries(5, vec![sol(&["v1"]), sol(&["v1", "v2"]), sol(&["v3", "v4", "v5"])])
        .map_err(|e| e.to_string())?;
    let d2 = SolutionTable::from_entries(5, vec![sol(&["u1"]), sol(&["u1", "u3"]), sol(&["u2", "u4", "u5"])])
        .map_err(|e| e.to_string())?;
    ensure(d1.scores() == [Some(0), Some(10), Some(18), Some(20), None, None], || format!("D1 {:?}", d1.scores()))?;
    ensure(d2.scores() == [Some(0), Some(10), Some(18), Some(22), None, None], || format!("D2 {:?}", d2.scores()))?;

    // The tables are the ones the solver computes for each component.
    for comp in g.connected_components() {
        let t = div_astar(&comp, 5);
        let want = if comp.contains(id("v1")) { &d1 } else { &d2 };
        ensure(t.scores() == want.scores(), || format!("component table {:?}", t.scores()))?;
    }

    let d = oplus(&d1, &d2).map_err(|e| e.to_string())?;
    let want = [Some(0), Some(10), Some(20), Some(28), Some(36), Some(40)];
    ensure(d.scores() == want, || format!("scores {:?}", d.scores()))?;
    let s5 = labels(&g, &d.get(5).unwrap().nodes);
    ensure(s5 == ["u2", "u4", "u5", "v1", "v2"], || format!("solution_5 {s5:?}"))?;
    Ok("scores (0,10,20,28,36,40), solution_5 {v1,v2,u2,u4,u5}".into())
}

fn greedy_gap() -> Check {
    let start = Instant::now();
    let g = fixtures::fig2::<u32>();
    ensure(g.len() == 201, || format!("{} nodes", g.len()))?;
    let gr = greedy(&g, 100).score;
    let cut = div_cut(&g, 100).best().score;
    let elapsed = start.elapsed();
    ensure(gr == 199, || format!("greedy {gr}"))?;
    ensure(cut == 9900, || format!("div_cut {cut}"))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("greedy 199, div_cut 9900 in {} ms", elapsed.as_millis()))
}

fn compression_safety() -> Check {
    let mut graphs = 0;
    let mut removed = 0;
    for n in 4..=15usize {
        for p in [0.1, 0.3, 0.6] {
            for rep in 0..6u64 {
                let seed = 50_000 + (n as u64) * 100 + (p * 10.0) as u64 * 10 + rep;
                let g = fixtures::random_graph::<u32>(n, p, seed);
                let c = compress(&g);
                graphs += 1;
                removed += g.len() - c.len();
                let before = brute_force(&g, n).map_err(|e| e.to_string())?.scores();
                let after = brute_force(&c, n).map_err(|e| e.to_string())?.scores();
                ensure(before == after, || format!("n={n} p={p} seed={seed}: {before:?} vs {after:?}"))?;
            }
        }
    }
    Ok(format!("{graphs} graphs, {removed} nodes removed in total"))
}

fn stream_properties(g: &DiversityGraph<u32>, gen: &mut VecGenerator<u32>, k: usize, algo: Algorithm) -> Result<(), String> {
    let run = |gen: &mut VecGenerator<u32>, always_solve: bool| -> Result<SearchOutcome<u32>, String> {
        let options = SearchOptions {
            always_solve,
            ..SearchOptions::default()
        };
        div_search(gen, DivSolver::Exact(algo), edge_predicate(g), k, options).map_err(|e| e.to_string())
    };
    let mut eager_gen = gen.clone();
    let lazy = run(gen, false)?;
    let eager = run(&mut eager_gen, true)?;
    let full = solve(g, k, algo, &mut SearchContext::default()).map_err(|e| e.to_string())?;

    for out in [&lazy, &eager] {
        for w in out.iterations.windows(2) {
            ensure(w[1].achieved >= w[0].achieved, || format!("achieved drops: {:?}", out.iterations))?;
            if let (Some(a), Some(b)) = (w[0].upper, w[1].upper) {
                ensure(b <= a, || format!("upper bound rises: {:?}", out.iterations))?;
            }
        }
    }
    let want = full.best().score;
    ensure(lazy.best().score == want, || format!("final {} vs full {want}", lazy.best().score))?;
    ensure(eager.best().score == want, || format!("always-solve final {} vs {want}", eager.best().score))?;
    ensure(eager.solver_calls >= lazy.solver_calls, || {
        format!("always-solve made {} calls, default {}", eager.solver_calls, lazy.solver_calls)
    })
}

fn stop_conditions() -> Check {
    let f1 = fixtures::fig1::<u32>();
    let mut instances = 0;
    for k in 1..=3 {
        for algo in Algorithm::ALL {
            stream_properties(&f1, &mut incremental_stream(&f1), k, algo).map_err(|e| format!("F1 incremental k={k}: {e}"))?;
            stream_properties(&f1, &mut bounding_stream(&f1, k as u64), k, algo).map_err(|e| format!("F1 bounding k={k}: {e}"))?;
        }
    }
    for seed in 0..120u64 {
        let n = 6 + (seed % 11) as usize;
        let p = [0.1, 0.3, 0.6][(seed % 3) as usize];
        let g = fixtures::random_graph::<u32>(n, p, 70_000 + seed);
        let k = 1 + (seed as usize % n.min(6));
        let algo = Algorithm::ALL[(seed % 3) as usize];
        stream_properties(&g, &mut incremental_stream(&g), k, algo).map_err(|e| format!("seed {seed} incremental: {e}"))?;
        stream_properties(&g, &mut bounding_stream(&g, seed), k, algo).map_err(|e| format!("seed {seed} bounding: {e}"))?;
        instances += 1;
    }
    Ok(format!("F1 plus {instances} random instances, both modes"))
}

struct Timed {
    result: Result<u32, Error>,
    elapsed: Duration,
    peak: usize,
}

fn timed(g: &DiversityGraph<u32>, k: usize, algo: Algorithm, budget: Budget) -> Timed {
    let mut ctx = SearchContext::new(budget);
    let start = Instant::now();
    let result = solve(g, k, algo, &mut ctx).map(|t| t.best().score);
    Timed {
        result,
        elapsed: start.elapsed(),
        peak: ctx.stats.peak_entries(),
    }
}

fn scaling_order() -> Check {
    let g = fixtures::caterpillar::<u32>(CaterpillarParams {
        blocks: 40,
        block_size: 6,
        chain: 4,
        chord_p: 0.7,
        seed: 1,
    });
    let k = 50;
    let five = Duration::from_secs(5);
    let dp = timed(&g, k, Algorithm::Dp, Budget::unlimited().with_timeout(five));
    let cut = timed(&g, k, Algorithm::Cut, Budget::unlimited().with_timeout(five));
    let dp_score = dp.result.as_ref().map_err(|e| format!("dp: {e}"))?;
    let cut_score = cut.result.as_ref().map_err(|e| format!("cut: {e}"))?;
    ensure(dp_score == cut_score, || format!("dp {dp_score} vs cut {cut_score}"))?;
    ensure(dp.elapsed < five && cut.elapsed < five, || format!("dp {:?}, cut {:?}", dp.elapsed, cut.elapsed))?;
    ensure(cut.peak <= dp.peak, || format!("cut peak {} > dp peak {}", cut.peak, dp.peak))?;

    // The heap cap only keeps the process inside the sandbox memory.
    let astar = timed(
        &g,
        k,
        Algorithm::AStar,
        Budget::unlimited().with_timeout(Duration::from_secs(60)).with_max_heap(260_000_000),
    );
    let astar_note = format!("astar {:?} after {} ms, peak {}", astar.result, astar.elapsed.as_millis(), astar.peak);
    ensure(matches!(astar.result, Err(Error::Timeout)), || astar_note.clone())?;
    Ok(format!(
        "{} nodes; dp {} ms peak {}; cut {} ms peak {}; {astar_note}",
        g.len(),
        dp.elapsed.as_millis(),
        dp.peak,
        cut.elapsed.as_millis(),
        cut.peak
    ))
}

fn text_pipeline() -> Check {
    let engine = SearchEngine::new(Corpus::toy());
    let queries = ["apple", "jaguar speed", "python", "bank river", "mars mission", "java coffee"];
    let mut cases = 0;
    for q in queries {
        let ranked = engine.ranked(q);
        for k in [1, 3, 5, 10] {
            for mode in [GeneratorMode::Incremental, GeneratorMode::Bounding] {
                let search = |tau: f64| {
                    engine
                        .search(q, k, tau, DivSolver::Exact(Algorithm::Cut), mode, SearchOptions::default())
                        .map_err(|e| e.to_string())
                };
                let plain: f64 = ranked.iter().take(k).map(|r| r.score).sum();
                let top = search(1.0)?;
                let got = top.best().score;
                ensure((got - plain).abs() <= 1e-9 * plain.max(1.0), || {
                    format!("{q} k={k}: tau 1.0 gives {got}, plain top-k {plain}")
                })?;
                let mut prev = f64::INFINITY;
                for step in (2..=9).rev() {
                    let tau = step as f64 / 10.0;
                    let s = search(tau)?.best().score;
                    ensure(s <= prev + 1e-9, || format!("{q} k={k}: score rises to {s} at tau {tau}"))?;
                    prev = s;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} query/k/mode cases over tau 0.9 down to 0.2"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("F1 scores and A* trace", f1_trace),
        ("oplus example", fig7_oplus),
        ("greedy gap on G201", greedy_gap),
        ("compression safety", compression_safety),
        ("stop-condition properties", stop_conditions),
        ("scaling order on a caterpillar", scaling_order),
        ("text pipeline", text_pipeline),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
