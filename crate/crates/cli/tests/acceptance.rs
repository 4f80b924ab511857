//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines always reach stdout; exits non-zero on any failure.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lpa_flow::classify::{decide, Level, Reason};
use lpa_flow::exactla::{det, group_iso, smith_normal_form, Answer};
use lpa_flow::flowsearch::{find_sequence, SearchLimits};
use lpa_flow::graph::{is_isomorphic, MultiGraph, MAX_ISO_VERTICES};
use lpa_flow::invariants::{equiv_det_pair, equiv_unitary_pair, franks_triple, FranksTriple};
use lpa_flow::moves::{
    contract, contractible_pairs, eliminate_source, expand, in_amalgamate, in_split, minus, minus1, out_amalgamate,
    out_split, Partition, Side,
};
use lpa_flow::random;
use lpa_flow::{Int, IntMatrix};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn graph(rows: &[&[i64]]) -> MultiGraph {
    MultiGraph::from_rows(rows).unwrap()
}

fn int(x: i64) -> Int {
    Int::from(x)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lpaflow"))
}

fn write_graph(name: &str, g: &MultiGraph) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lpaflow-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, g.to_text()).unwrap();
    path
}

/// Runs `lpaflow classify a b --json`; returns (level, reason).
fn cli_classify(a: &MultiGraph, b: &MultiGraph, tag: &str) -> Result<(String, String), String> {
    let out = bin()
        .args(["classify", "--json"])
        .arg(write_graph(&format!("{tag}-a.graph"), a))
        .arg(write_graph(&format!("{tag}-b.graph"), b))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("classify exited with {}", out.status))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["schema"] == 1, || "missing schema version".into())?;
    Ok((v["level"].as_str().unwrap_or("").into(), v["reason"].as_str().unwrap_or("").into()))
}

fn triple_is(t: &FranksTriple, torsion: &[i64], unit: &[i64], d: i64) -> Result<(), String> {
    let want: Vec<Int> = torsion.iter().map(|&x| int(x)).collect();
    let unit_want: Vec<Int> = unit.iter().map(|&x| int(x)).collect();
    ensure(
        t.group().torsion() == want.as_slice()
            && t.group().free_rank() == 0
            && t.unit() == unit_want.as_slice()
            && *t.determinant() == int(d),
        || format!("got {} det {}", t.pointed(), t.determinant()),
    )
}

fn c1_worked_example() -> Outcome {
    let start = Instant::now();
    let (e, f) = (graph(&[&[4]]), graph(&[&[1, 1], &[3, 2]]));
    triple_is(&franks_triple(&e), &[3], &[1], -3)?;
    triple_is(&franks_triple(&f), &[3], &[1], -3)?;
    let v = decide(&e, &f);
    ensure(v.level == Level::Isomorphic, || v.to_string())?;
    let out = bin().arg("invariants").arg(write_graph("r4.graph", &e)).output().map_err(|e| e.to_string())?;
    let json: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(
        json["group"]["torsion"] == serde_json::json!([3])
            && json["unit"] == serde_json::json!([1])
            && json["det"] == -3,
        || format!("invariants printed {json}"),
    )?;
    let (level, _) = cli_classify(&e, &f, "c1")?;
    ensure(level == "Isomorphic", || format!("classify printed {level}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("(Z/3, 1, -3) on both sides; Isomorphic".into())
}

fn c2_gap_pair() -> Outcome {
    let start = Instant::now();
    let two = graph(&[&[1, 1], &[1, 1]]);
    let two_minus = graph(&[&[1, 1, 0, 0], &[1, 1, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 1]]);
    ensure(minus(&two).unwrap().same_matrix(&two_minus), || "gadget does not reproduce 2-".into())?;
    let (a, b) = (franks_triple(&two), franks_triple(&two_minus));
    triple_is(&a, &[], &[], -1)?;
    triple_is(&b, &[], &[], 1)?;
    let v = decide(&two, &two_minus);
    ensure(v.level == Level::Unknown && v.reason == Reason::DeterminantSignGap, || v.to_string())?;
    let (level, reason) = cli_classify(&two, &two_minus, "c2")?;
    ensure(level == "Unknown" && reason == "determinant-sign-gap", || format!("classify printed {level}/{reason}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("(0, 0, -1) vs (0, 0, +1); Unknown / determinant-sign-gap".into())
}

fn c3_transpose_example() -> Outcome {
    let start = Instant::now();
    let e = graph(&[&[1, 1, 1], &[0, 0, 1], &[1, 0, 0]]);
    let t = e.transpose();
    triple_is(&franks_triple(&e), &[2], &[1], franks_triple(&e).determinant().try_into().unwrap())?;
    triple_is(&franks_triple(&t), &[2], &[0], franks_triple(&t).determinant().try_into().unwrap())?;
    let v = decide(&e, &t);
    ensure(v.level == Level::MoritaEquivalentNotIsomorphic, || v.to_string())?;
    ensure((v.morita_equivalent, v.isomorphic) == (Answer::Yes, Answer::No), || v.to_string())?;
    let (level, reason) = cli_classify(&e, &t, "c3")?;
    ensure(level == "MoritaEquivalent+NotIsomorphic", || format!("classify printed {level}/{reason}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("Z/2 with units [1] vs [0]; MoritaEquivalent + NotIsomorphic".into())
}

fn preserved(before: &MultiGraph, after: &MultiGraph) -> bool {
    equiv_det_pair(&franks_triple(before), &franks_triple(after))
}

fn c4_flow_invariance() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(random::DEFAULT_SEED ^ 4);
    const RUNS: usize = 200;
    let kinds = ["expand", "contract", "in-split", "out-split", "in-amalgamate", "out-amalgamate", "eliminate-source"];
    for kind in kinds {
        for run in 0..RUNS {
            let g = random::pis_no_source(&mut rng, 6, 2);
            let n = g.vertex_count();
            let (before, after) = match kind {
                "expand" => (g.clone(), expand(&g, rng.gen_range(0..n)).unwrap()),
                "contract" => {
                    let base =
                        if contractible_pairs(&g).is_empty() { expand(&g, rng.gen_range(0..n)).unwrap() } else { g };
                    let pairs = contractible_pairs(&base);
                    let (v, s) = pairs[rng.gen_range(0..pairs.len())];
                    let after = contract(&base, v, s).unwrap();
                    (base, after)
                }
                "in-split" => {
                    let p = random::partition(&mut rng, &g, Side::In);
                    let h = in_split(&g, &p).unwrap().0;
                    (g, h)
                }
                "out-split" => {
                    let p = random::partition(&mut rng, &g, Side::Out);
                    let h = out_split(&g, &p).unwrap().0;
                    (g, h)
                }
                "in-amalgamate" => {
                    let p = random::partition(&mut rng, &g, Side::In);
                    let h = in_split(&g, &p).unwrap().0;
                    let back = in_amalgamate(&h, &split_blocks(&p, n)).unwrap();
                    (h, back)
                }
                "out-amalgamate" => {
                    let p = random::partition(&mut rng, &g, Side::Out);
                    let h = out_split(&g, &p).unwrap().0;
                    let back = out_amalgamate(&h, &split_blocks(&p, n)).unwrap();
                    (h, back)
                }
                _ => {
                    // attach a fresh source feeding random vertices, then remove it
                    let mut rows: Vec<Vec<i64>> = g.incidence_matrix().entries().chunks(n).map(to_i64).collect();
                    rows.iter_mut().for_each(|r| r.push(0));
                    let mut source: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..=2)).collect();
                    source[n] = 0;
                    source[rng.gen_range(0..n)] += 1;
                    rows.push(source);
                    let with_source = MultiGraph::from_rows(&rows).unwrap();
                    let after = eliminate_source(&with_source, n).unwrap();
                    (with_source, after)
                }
            };
            ensure(preserved(&before, &after), || {
                format!("{kind} run {run} changed\n{}into\n{}", before.to_text(), after.to_text())
            })?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} applications, {:.1?}", RUNS * kinds.len(), start.elapsed()))
}

fn to_i64(row: &[Int]) -> Vec<i64> {
    row.iter().map(|x| x.try_into().unwrap()).collect()
}

/// Blocks grouping the split copies of each original vertex.
fn split_blocks(p: &Partition, n: usize) -> Vec<Vec<usize>> {
    let mut next = 0;
    (0..n)
        .map(|v| {
            let m = p.class_count(v).max(1);
            let block = (next..next + m).collect();
            next += m;
            block
        })
        .collect()
}

fn c5_gadgets() -> Outcome {
    let mut rng = random::rng(random::DEFAULT_SEED ^ 5);
    for run in 0..50 {
        let g = random::graph_where(&mut rng, 5, 2, |g| lpa_flow::graph::classify_graph(g).purely_infinite_simple);
        let e = franks_triple(&g);
        let m = franks_triple(&minus(&g).unwrap());
        let m1 = franks_triple(&minus1(&g).unwrap());
        ensure(group_iso(e.group(), m.group()), || format!("run {run}: minus changed the group of\n{}", g.to_text()))?;
        ensure(*m.determinant() == -e.determinant(), || format!("run {run}: minus kept the sign"))?;
        ensure(*m1.determinant() == -e.determinant(), || format!("run {run}: minus1 kept the sign"))?;
        ensure(equiv_unitary_pair(&e, &m1) == Answer::Yes, || format!("run {run}: minus1 moved the unit class"))?;
    }
    Ok("50 graphs".into())
}

fn c6_smith() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(random::DEFAULT_SEED ^ 6);
    for run in 0..500 {
        let n = rng.gen_range(1..=6);
        let a = random::int_matrix(&mut rng, n, n, -9, 9);
        let d = smith_normal_form(&a);
        ensure(&(&d.u * &a) * &d.v == d.s, || format!("run {run}: U A V != S"))?;
        ensure(det(&d.u).unwrap().abs().is_one() && det(&d.v).unwrap().abs().is_one(), || {
            format!("run {run}: not unimodular")
        })?;
        let diag = d.diagonal();
        let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        ensure(chain && diag.iter().all(|x| !x.is_negative()) && d.s.is_diagonal(), || format!("run {run}: {diag:?}"))?;
        let prod: Int = diag.iter().product();
        let da = det(&a).unwrap();
        ensure(prod == da.abs(), || format!("run {run}: product {prod} vs det {da}"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("500 matrices, {:.1?}", start.elapsed()))
}

fn c7_factorization() -> Outcome {
    let mut rng = random::rng(random::DEFAULT_SEED ^ 7);
    for run in 0..100 {
        let n = rng.gen_range(1..=5);
        let g = random::graph(&mut rng, n, 3);
        let p = random::partition(&mut rng, &g, Side::In);
        let (h, f, _) = in_split(&g, &p).unwrap();
        let rs: IntMatrix = &f.r * &f.s;
        let sr: IntMatrix = &f.s * &f.r;
        ensure(rs == g.incidence_matrix(), || format!("run {run}: RS != A"))?;
        ensure(sr == h.incidence_matrix(), || format!("run {run}: SR != A'"))?;
    }
    Ok("100 in-splits".into())
}

fn c8_duality() -> Outcome {
    let mut rng = random::rng(random::DEFAULT_SEED ^ 8);
    for run in 0..50 {
        let g = random::graph_where(&mut rng, 4, 2, |g| g.edge_count() > 0);
        let p = random::partition(&mut rng, &g, Side::Out);
        let (h, _) = out_split(&g, &p).unwrap();
        let t = g.transpose();
        let q = Partition::new(&t, Side::In, (0..g.vertex_count()).map(|v| p.classes(v).to_vec()).collect()).unwrap();
        let k = in_split(&t, &q).unwrap().0.transpose();
        let same =
            if h.vertex_count() <= MAX_ISO_VERTICES { is_isomorphic(&h, &k).unwrap() } else { h.same_matrix(&k) };
        ensure(same, || format!("run {run}: out-split and transposed in-split differ on\n{}", g.to_text()))?;
    }
    Ok("50 instances".into())
}

fn c9_search() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(random::DEFAULT_SEED ^ 9);
    let limits = SearchLimits { max_depth: 6, ..SearchLimits::default() };
    let mut longest = 0;
    for run in 0..25 {
        let g = random::pis_no_source(&mut rng, 3, 2);
        let (moves, h) = random::scramble(&mut rng, &g, 3, limits.max_vertices);
        ensure(moves.len() == 3, || format!("run {run}: only {} moves applied", moves.len()))?;
        let seq = find_sequence(&h, &g, &limits).map_err(|e| format!("run {run}: {e}"))?;
        ensure(seq.reaches(&g), || format!("run {run}: sequence does not replay"))?;
        ensure(seq.steps.len() <= 6 && seq.steps.iter().all(|s| s.mv.is_standard()), || {
            format!("run {run}: bad moves")
        })?;
        let base = franks_triple(&h);
        for s in &seq.steps {
            ensure(equiv_det_pair(&base, &franks_triple(&s.graph)), || format!("run {run}: invariants drift"))?;
        }
        longest = longest.max(seq.steps.len());
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("25 recoveries, longest {longest} moves, {:.1?}", start.elapsed()))
}

fn c10_selftest() -> Outcome {
    let out = bin().arg("selftest").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    ensure(out.status.success(), || format!("exit {}:\n{text}", out.status))?;
    Ok(text.lines().last().unwrap_or("").to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("worked example R4 vs F", c1_worked_example),
        ("determinant-sign gap pair", c2_gap_pair),
        ("transpose example", c3_transpose_example),
        ("flow invariance of standard moves", c4_flow_invariance),
        ("sign-changing gadgets", c5_gadgets),
        ("Smith normal form contract", c6_smith),
        ("R/S factorization of in-splits", c7_factorization),
        ("transpose duality of splits", c8_duality),
        ("search recovers scrambled graphs", c9_search),
        ("selftest", c10_selftest),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
