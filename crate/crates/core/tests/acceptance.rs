//! Acceptance suite. Every criterion is an exact integer check; the binary
//! prints one PASS/FAIL line per criterion and exits non-zero if any fail.

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rubbling::engine::{
    effect, execute, order_executable, reachability_oracle, untangle, Reacher, TransitionDigraph,
};
use rubbling::reductions::{available_rolls, enumerate_squished, Compositions};
use rubbling::solver::{
    odd_cycle_bounds, odd_cycle_extremal_pair, optimal_rubbling_number, rubbling_number,
    SolveOptions, Witness,
};
use rubbling::{
    is_reachable, Distribution, Family, Graph, MoveMultiset, MoveSet, PebbleFunction, RubblingMove,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn graph(spec: &str) -> Graph {
    spec.parse::<Family>()
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
        .build()
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn rho(spec: &str) -> Result<u64, String> {
    rubbling_number(&graph(spec), &SolveOptions::default())
        .map(|r| r.value)
        .map_err(|e| format!("{spec}: {e}"))
}

fn rho_opt(spec: &str) -> Result<u64, String> {
    optimal_rubbling_number(&graph(spec), &SolveOptions::default())
        .map(|r| r.value)
        .map_err(|e| format!("{spec}: {e}"))
}

fn expect_all(cases: &[(String, u64)], solve: fn(&str) -> Result<u64, String>) -> Outcome {
    let mut bad = Vec::new();
    for (spec, want) in cases {
        let got = solve(spec)?;
        if got != *want {
            bad.push(format!("{spec}: got {got}, want {want}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} instances", cases.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn criterion_1() -> Outcome {
    let cases: Vec<_> = (1..=5)
        .map(|n| (format!("path:{n}"), 1u64 << (n - 1)))
        .collect();
    expect_all(&cases, rho)
}

fn criterion_2() -> Outcome {
    let want = [2, 4, 5, 8, 9];
    let cases: Vec<_> = (3..=7)
        .zip(want)
        .map(|(n, v)| (format!("cycle:{n}"), v))
        .collect();
    expect_all(&cases, rho)
}

fn criterion_3() -> Outcome {
    let mut cases = Vec::new();
    for n in 2..=5 {
        cases.push((format!("complete:{n}"), 2));
    }
    for n in 4..=6 {
        cases.push((format!("wheel:{n}"), 4));
    }
    for m in 2..=4 {
        for n in 2..=4 {
            cases.push((format!("kbipartite:{m},{n}"), 4));
        }
    }
    cases.push(("hypercube:2".into(), 4));
    cases.push(("hypercube:3".into(), 8));
    // one spine vertex with three legs: 2^(1+1)
    cases.push(("caterpillar:3".into(), 4));
    expect_all(&cases, rho)
}

fn criterion_4() -> Outcome {
    let g = graph("petersen");
    let res = rubbling_number(&g, &SolveOptions::default()).map_err(|e| e.to_string())?;
    if res.value != 5 {
        return Err(format!("rho(petersen) = {}", res.value));
    }
    let Some(Witness::Unreachable {
        target,
        distribution,
    }) = res.witness
    else {
        return Err("no failing witness".into());
    };
    if distribution.size() != 4 {
        return Err(format!(
            "witness {distribution} has size {}",
            distribution.size()
        ));
    }
    let r =
        is_reachable(&g, &distribution, target, MoveSet::Rubbling).map_err(|e| e.to_string())?;
    if r.reachable {
        return Err(format!("witness {distribution} reaches {target}"));
    }
    Ok(format!("witness {distribution} misses vertex {target}"))
}

fn criterion_5() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=8u64 {
        cases.push((format!("path:{n}"), ceil_div(n + 1, 2)));
    }
    for n in 3..=8u64 {
        cases.push((format!("cycle:{n}"), ceil_div(n, 2)));
    }
    for n in 2..=5 {
        cases.push((format!("complete:{n}"), 2));
    }
    for n in 4..=6 {
        cases.push((format!("wheel:{n}"), 2));
    }
    cases.push(("kbipartite:3,3".into(), 3));
    cases.push(("petersen".into(), 4));
    for (n, v) in [(2, 2), (3, 3), (4, 4)] {
        cases.push((format!("hypercube:{n}"), v));
    }
    expect_all(&cases, rho_opt)
}

fn criteria_1_to_4_corpus() -> Vec<String> {
    let mut corpus: Vec<String> = (1..=5).map(|n| format!("path:{n}")).collect();
    corpus.extend((3..=7).map(|n| format!("cycle:{n}")));
    corpus.extend((2..=5).map(|n| format!("complete:{n}")));
    corpus.extend((4..=6).map(|n| format!("wheel:{n}")));
    for m in 2..=4 {
        corpus.extend((2..=4).map(|n| format!("kbipartite:{m},{n}")));
    }
    corpus.extend(["hypercube:2", "hypercube:3", "caterpillar:3", "petersen"].map(String::from));
    corpus
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5 {
        let spec = format!("path:{n}");
        let pi = rubbling_number(&graph(&spec), &SolveOptions::pebbling())
            .map_err(|e| format!("{spec}: {e}"))?
            .value;
        if pi != 1 << (n - 1) {
            bad.push(format!("pi({spec}) = {pi}"));
        }
    }
    let corpus = criteria_1_to_4_corpus();
    for spec in &corpus {
        let g = graph(spec);
        let lower = 1u64 << g.diameter();
        let r = rho(spec)?;
        let opts = SolveOptions {
            cap: Some(4 * lower + 8),
            ..SolveOptions::pebbling()
        };
        let pi = rubbling_number(&g, &opts)
            .map_err(|e| format!("{spec}: {e}"))?
            .value;
        if r > pi || r < lower {
            bad.push(format!("{spec}: lower {lower}, rho {r}, pi {pi}"));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "pi(P_n) exact for n=1..5; sandwich holds on {} graphs",
            corpus.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

/// Every connected labeled graph on `n` vertices, from edge subsets.
fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            Graph::new(n, &edges).ok()
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut checks = 0u64;
    let mut graphs = 0;
    for n in 1..=5 {
        for g in connected_graphs(n) {
            graphs += 1;
            for target in 0..n {
                let mut reacher = Reacher::new(&g, target, MoveSet::Rubbling);
                for size in 0..=4 {
                    for p in Compositions::new(n, size) {
                        let fast = reacher.reachable(&p).map_err(|e| e.to_string())?;
                        let slow = reachability_oracle(&g, &p, target, MoveSet::Rubbling)
                            .map_err(|e| e.to_string())?;
                        if fast != slow {
                            return Err(format!(
                                "edges {:?}, p={p}, target {target}: search {fast}, oracle {slow}",
                                g.edges()
                            ));
                        }
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} agreements on {graphs} graphs"))
}

fn random_connected_graph(rng: &mut StdRng) -> Graph {
    let n = rng.gen_range(2..=6);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(0.3) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("tree plus extra edges is connected")
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut ordered = 0;
    for case in 0..1000 {
        let g = random_connected_graph(&mut rng);
        let n = g.vertex_count();
        let all = RubblingMove::all(&g);
        let k = rng.gen_range(0..=10);
        let s: MoveMultiset = (0..k).map(|_| all[rng.gen_range(0..all.len())]).collect();
        let u = untangle(&s);
        let fail = |what: &str| {
            Err(format!(
                "case {case}: {what}; edges {:?}, moves {:?}",
                g.edges(),
                s.to_sequence()
            ))
        };
        if !TransitionDigraph::new(n, &u).is_acyclic() {
            return fail("untangled multiset is cyclic");
        }
        if !u.is_submultiset_of(&s) {
            return fail("untangled multiset is not a sub-multiset");
        }
        let zero = PebbleFunction(vec![0; n]);
        let before = effect(&zero, &s).map_err(|e| e.to_string())?;
        let after = effect(&zero, &u).map_err(|e| e.to_string())?;
        if !after.dominates(&before) {
            return fail("effect decreased");
        }
        // the least distribution balanced with the untangled multiset,
        // plus some random surplus
        let p = Distribution(
            after
                .0
                .iter()
                .map(|&x| (-x).max(0) as u64 + rng.gen_range(0..=1))
                .collect(),
        );
        let order = match order_executable(&p, &u) {
            Ok(order) => order,
            Err(e) => return fail(&format!("not orderable: {e}")),
        };
        let run = execute(&p, &order).map_err(|e| e.to_string())?;
        if !run.executable || order.len() as u64 != u.len() {
            return fail("ordering is not executable");
        }
        ordered += 1;
    }
    Ok(format!(
        "1000 multisets untangled, {ordered} balanced acyclic cases ordered"
    ))
}

fn criterion_9() -> Outcome {
    let mut specs: Vec<String> = (1..=6).map(|n| format!("path:{n}")).collect();
    specs.extend((3..=7).map(|n| format!("cycle:{n}")));
    let mut rolls = 0u64;
    for spec in &specs {
        let g = graph(spec);
        let n = g.vertex_count();
        let mut reachers: Vec<Reacher> = (0..n)
            .map(|t| Reacher::new(&g, t, MoveSet::Rubbling))
            .collect();
        for size in 0..=6 {
            for p in Compositions::new(n, size) {
                for roll in available_rolls(&g, &p) {
                    let q = roll.apply(&g, &p).map_err(|e| format!("{spec}: {e}"))?;
                    if q.size() != p.size() {
                        return Err(format!("{spec}: roll {roll:?} on {p} changed the size"));
                    }
                    for r in reachers.iter_mut() {
                        let from_p = r.reachable(&p).map_err(|e| e.to_string())?;
                        let from_q = r.reachable(&q).map_err(|e| e.to_string())?;
                        if from_p && !from_q {
                            return Err(format!(
                                "{spec}: {p} reaches {} but rolled {q} does not",
                                r.target()
                            ));
                        }
                    }
                    rolls += 1;
                }
            }
        }
    }
    Ok(format!("{rolls} rolls checked on {} graphs", specs.len()))
}

fn criterion_10() -> Outcome {
    let mut summary = Vec::new();
    for spec in ["cycle:5", "cycle:7", "path:5"] {
        let g = graph(spec);
        let n = g.vertex_count();
        let r = rho(spec)?;
        let mut reachers: Vec<Reacher> = (0..n)
            .map(|t| Reacher::new(&g, t, MoveSet::Rubbling))
            .collect();
        let mut largest = None;
        for size in 0..=r + 1 {
            let mut full = false;
            let mut squished = false;
            for reacher in reachers.iter_mut() {
                let t = reacher.target();
                for p in Compositions::new(n, size) {
                    if !reacher.reachable(&p).map_err(|e| e.to_string())? {
                        full = true;
                        break;
                    }
                }
                for p in enumerate_squished(&g, t, size) {
                    if !reacher.reachable(&p).map_err(|e| e.to_string())? {
                        squished = true;
                        break;
                    }
                }
            }
            if full != squished {
                return Err(format!(
                    "{spec}, size {size}: full {full}, squished {squished}"
                ));
            }
            if full {
                largest = Some(size);
            }
        }
        let Some(a) = largest else {
            return Err(format!("{spec}: no witness at any size"));
        };
        if a + 1 != r {
            return Err(format!("{spec}: largest failing size {a}, rho {r}"));
        }
        summary.push(format!("{spec} {a}"));
    }
    Ok(format!(
        "largest failing sizes agree: {}",
        summary.join(", ")
    ))
}

fn criterion_11() -> Outcome {
    let mut lines = Vec::new();
    for k in 1..=4u32 {
        let (a, b) = odd_cycle_extremal_pair(k);
        let (a_ref, b_ref) = ((1u64 << k) / 3, (5 * (1u64 << (k - 1))) / 3);
        if (a, b) != (a_ref, b_ref) {
            return Err(format!("k={k}: pair ({a},{b}), expected ({a_ref},{b_ref})"));
        }
        let check = odd_cycle_bounds(k, a, b).map_err(|e| e.to_string())?;
        if !check.first_doubled || !check.second_doubled {
            return Err(format!("k={k}: {check:?}"));
        }
        let formula = (7 * (1u64 << (k - 1)) - 2) / 3;
        if a + b != formula {
            return Err(format!("k={k}: a+b = {}, formula {formula}", a + b));
        }
        // the pair on the two vertices opposite the target leaves it unreachable
        let n = 2 * k as usize + 1;
        let g = graph(&format!("cycle:{n}"));
        let mut p = Distribution::zeros(n);
        p.0[k as usize] = a;
        p.0[k as usize + 1] = b;
        if is_reachable(&g, &p, 0, MoveSet::Rubbling)
            .map_err(|e| e.to_string())?
            .reachable
        {
            return Err(format!("k={k}: {p} reaches vertex 0 on C_{n}"));
        }
        lines.push(format!("k={k} ({a},{b})"));
    }
    Ok(lines.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rho of paths", criterion_1),
        ("rho of cycles", criterion_2),
        (
            "rho of complete, wheel, bipartite, hypercube, star",
            criterion_3,
        ),
        ("rho of the Petersen graph", criterion_4),
        ("optimal rubbling numbers", criterion_5),
        ("pebbling mode and rho <= pi", criterion_6),
        ("search agrees with the multiset oracle", criterion_7),
        ("untangling and ordering", criterion_8),
        ("rolling preserves reachability", criterion_9),
        ("squished enumeration is complete", criterion_10),
        ("odd cycle bounds", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
