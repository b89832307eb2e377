//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use grouplab::catalog::{fixture_216_153, load_catalog, shipped_catalog_dir};
use grouplab::classes::{
    is_nilpotent, is_p_nilpotent, is_p_solvable, is_p_supersolvable, is_solvable, is_supersolvable,
};
use grouplab::embeddings::{is_h_subgroup, is_pronormal, is_s_semipermutable};
use grouplab::group::Limits;
use grouplab::lattice::all_subgroups;
use grouplab::scan::{scan, NamedGroup};
use grouplab::structure::{
    frattini, nilpotency_class, o_p_prime, sylow_conjugates, sylow_subgroup,
};
use grouplab::subgroup::{is_normal, normalizer, subgroup_generated};
use grouplab::theorems::{
    find_witness_main, find_witness_xu_li, CheckId, LemmaId, PrimeContext, Verdict,
};
use grouplab::{arith, Group, Permutation};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog() -> Vec<NamedGroup> {
    load_catalog(&shipped_catalog_dir(), Limits::default()).expect("shipped catalog loads")
}

fn find<'a>(cat: &'a [NamedGroup], name: &str) -> &'a Group {
    &cat.iter()
        .find(|e| e.name == name)
        .expect("catalog entry")
        .group
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = fixture_216_153().map_err(|e| e.to_string())?;
    ensure(g.order() == 216, || format!("order {}", g.order()))?;
    ensure(is_solvable(&g).holds, || "not solvable".into())?;
    let p = sylow_subgroup(&g, 3).map_err(|e| e.to_string())?;
    let class = nilpotency_class(&p.to_group());
    ensure(p.order() == 27 && class == Some(2), || {
        format!("Sylow order {} class {class:?}", p.order())
    })?;
    let h = g.trivial_subgroup();
    ensure(is_s_semipermutable(&h, &g).unwrap().holds, || {
        "H = 1 not s-semipermutable".into()
    })?;
    let n = normalizer(&g, &p).unwrap().to_group();
    ensure(is_p_supersolvable(&n, 3).unwrap().holds, || {
        "N_G(P) not 3-supersolvable".into()
    })?;
    ensure(!is_p_supersolvable(&g, 3).unwrap().holds, || {
        "G is 3-supersolvable".into()
    })?;
    // the same facts through the witness searches
    let xu = find_witness_xu_li(&g, 3).unwrap();
    ensure(xu.as_ref().is_some_and(|h| h.is_trivial()), || {
        format!("central-quotient witness {xu:?}")
    })?;
    ensure(find_witness_main(&g, 3).unwrap().is_none(), || {
        "derived-to-Frattini witness exists".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "order 216, solvable, Sylow-3 class 2, H=1 s-semipermutable, N_G(P) 3-supersolvable, G not 3-supersolvable ({:.2?})",
        elapsed
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cat = catalog();
    ensure(cat.len() >= 40, || format!("only {} groups", cat.len()))?;
    ensure(
        cat.iter()
            .any(|e| e.group.order() == 216 && e.name == "sg216_153"),
        || "fixture missing".into(),
    )?;
    ensure(
        cat.iter()
            .filter(|e| e.name.starts_with("direct_product"))
            .all(|e| e.group.order() <= 216),
        || "direct product above 216".into(),
    )?;
    ensure(
        cat.iter()
            .filter(|e| !e.name.starts_with("direct_product") && e.name != "sg216_153")
            .all(|e| e.group.order() <= 120),
        || "builtin above 120".into(),
    )?;
    let mut checks = CheckId::all_theorems();
    checks.extend(
        [
            LemmaId::SpermSupersolvable,
            LemmaId::CsuppHypercentre,
            LemmaId::CsuppNilpotent,
        ]
        .map(CheckId::Lemma),
    );
    let outcome = scan(&cat, &checks, None, 1);
    let s = outcome.summary();
    ensure(s.errors == 0, || format!("errors: {:?}", outcome.errors))?;
    let bad: Vec<String> = outcome
        .reports
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::Violation | Verdict::Undecided))
        .map(|r| format!("{} p={} {} {}", r.group, r.prime, r.check, r.verdict))
        .collect();
    ensure(bad.is_empty(), || format!("bad verdicts: {bad:?}"))?;
    for r in &outcome.reports {
        let g = find(&cat, &r.group);
        ensure(r.revalidate(g).unwrap(), || {
            format!("witness of {} p={} {} fails", r.group, r.prime, r.check)
        })?;
    }
    let pairs: usize = cat.iter().map(|e| e.group.prime_divisors().len()).sum();
    ensure(outcome.reports.len() == pairs * checks.len(), || {
        "missing reports".into()
    })?;
    Ok(format!(
        "{} groups, {} reports: {} confirmed, {} vacuous, 0 VIOLATION, 0 undecided ({:.2?})",
        cat.len(),
        outcome.reports.len(),
        s.confirmed,
        s.vacuous,
        start.elapsed()
    ))
}

/// Closure of a set of raw permutations under composition.
fn raw_closure(gens: &[&Permutation], degree: usize) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<Permutation> = seen.into_iter().collect();
    v.sort();
    v
}

fn brute_force_subgroup_count(g: &Group) -> usize {
    let els = g.elements();
    let mut found: HashSet<Vec<Permutation>> = HashSet::new();
    for x in els {
        for y in els {
            for z in els {
                found.insert(raw_closure(&[x, y, z], g.degree()));
            }
        }
    }
    found.len()
}

fn power(x: &Permutation, n: u64) -> Permutation {
    (0..n).fold(Permutation::identity(x.degree()), |acc, _| acc.compose(x))
}

fn criterion_3() -> Outcome {
    let cat = catalog();
    // Frattini of p-groups: maximal-subgroup intersection against P'<x^p>.
    let mut p_groups: Vec<Group> = Vec::new();
    for e in &cat {
        for p in e.group.prime_divisors() {
            p_groups.push(sylow_subgroup(&e.group, p).unwrap().to_group());
        }
    }
    let mut frattini_checked = 0;
    for pg in &p_groups {
        let Some(&p) = pg.prime_divisors().first() else {
            continue;
        };
        let els = pg.elements();
        let mut gens: Vec<Permutation> = els.iter().map(|x| power(x, p)).collect();
        for a in els {
            for b in els {
                gens.push(a.inverse().compose(&b.inverse()).compose(a).compose(b));
            }
        }
        let oracle = subgroup_generated(pg, &gens).unwrap();
        let phi = frattini(pg).unwrap();
        ensure(phi == oracle, || {
            format!("Frattini mismatch on p-group of order {}", pg.order())
        })?;
        frattini_checked += 1;
    }

    let mut op_checked = 0;
    for e in cat.iter().filter(|e| e.group.order() <= 60) {
        let g = &e.group;
        let subs = all_subgroups(g).unwrap();
        for p in [2u64, 3, 5, 7] {
            let best = subs
                .iter()
                .filter(|s| !(s.order() as u64).is_multiple_of(p) && is_normal(s, g).unwrap())
                .max_by_key(|s| s.order())
                .unwrap();
            let ours = o_p_prime(g, p).unwrap();
            ensure(&ours == best, || {
                format!("O_p' mismatch on {} p={p}", e.name)
            })?;
            op_checked += 1;
        }
    }

    let mut sylow_checked = 0;
    for e in &cat {
        for p in e.group.prime_divisors() {
            let s = sylow_subgroup(&e.group, p).unwrap();
            let want = arith::p_part(e.group.order() as u64, p) as usize;
            ensure(s.order() == want && s.is_p_group(p), || {
                format!("Sylow {p} of {}", e.name)
            })?;
            sylow_checked += 1;
        }
    }

    let expected = [
        ("symmetric3", 6),
        ("alternating4", 10),
        ("quaternion8", 6),
        ("symmetric4", 30),
    ];
    for (name, count) in expected {
        let g = find(&cat, name);
        let oracle = brute_force_subgroup_count(g);
        let ours = all_subgroups(g).unwrap().len();
        ensure(oracle == count && ours == count, || {
            format!("{name}: oracle {oracle}, enumeration {ours}, expected {count}")
        })?;
    }
    Ok(format!(
        "Frattini {frattini_checked} p-groups, O_p' {op_checked} pairs, Sylow {sylow_checked} pairs, subgroup counts S3/A4/Q8/S4 = 6/10/6/30"
    ))
}

fn criterion_4() -> Outcome {
    let cat = catalog();
    let mut checked = 0;
    for e in &cat {
        let g = &e.group;
        for p in g.prime_divisors() {
            for sylow in sylow_conjugates(g, p).unwrap() {
                let n = normalizer(g, &sylow).unwrap().to_group();
                let pn = sylow.transport(&n).unwrap();
                for h in all_subgroups(&pn.to_group()).unwrap() {
                    let h = h.transport(&n).unwrap();
                    let normal = is_normal(&h, &n).unwrap();
                    let pron = is_pronormal(&h, &n).unwrap().holds;
                    let hsub = is_h_subgroup(&h, &n).unwrap().holds;
                    ensure(pron == normal && hsub == normal, || {
                        format!(
                            "{} p={p}: {h} normal {normal} pronormal {pron} h-subgroup {hsub}",
                            e.name
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} (Sylow P, H <= P) pairs, zero discrepancies"
    ))
}

fn criterion_5() -> Outcome {
    let cat: Vec<NamedGroup> = catalog()
        .into_iter()
        .filter(|e| e.group.order() <= 120)
        .collect();
    let checks: Vec<CheckId> = LemmaId::ALL
        .into_iter()
        .filter(|l| l.is_semiperm_property())
        .map(CheckId::Lemma)
        .collect();
    let outcome = scan(&cat, &checks, None, 1);
    ensure(outcome.errors.is_empty(), || {
        format!("errors {:?}", outcome.errors)
    })?;
    for r in &outcome.reports {
        ensure(r.verdict == Verdict::Confirmed, || {
            format!(
                "{} p={} {}: {} {:?}",
                r.group, r.prime, r.check, r.verdict, r.conclusion.witness
            )
        })?;
    }
    let subgroups: usize = cat
        .iter()
        .flat_map(|e| e.group.prime_divisors().into_iter().map(move |p| (e, p)))
        .map(|(e, p)| {
            let ctx = PrimeContext::new(&e.group, p).unwrap();
            all_subgroups(ctx.group())
                .unwrap()
                .iter()
                .filter(|h| h.is_p_group(p) && is_s_semipermutable(h, ctx.group()).unwrap().holds)
                .count()
        })
        .sum();
    Ok(format!(
        "{} groups, {} reports, {subgroups} s-semipermutable p-subgroups, zero counterexamples",
        cat.len(),
        outcome.reports.len()
    ))
}

fn criterion_6() -> Outcome {
    let cat = catalog();
    for e in &cat {
        let g = &e.group;
        let primes = g.prime_divisors();
        for &p in primes.iter().chain(&[2, 3, 5, 7]) {
            let nil = is_p_nilpotent(g, p).unwrap().holds;
            let sup = is_p_supersolvable(g, p).unwrap().holds;
            let sol = is_p_solvable(g, p).unwrap().holds;
            ensure((!nil || sup) && (!sup || sol), || {
                format!("{} p={p}: {nil} {sup} {sol}", e.name)
            })?;
        }
        let all_sol = primes.iter().all(|&p| is_p_solvable(g, p).unwrap().holds);
        let all_nil = primes.iter().all(|&p| is_p_nilpotent(g, p).unwrap().holds);
        ensure(is_solvable(g).holds == all_sol, || {
            format!("{} solvability", e.name)
        })?;
        ensure(is_nilpotent(g).holds == all_nil, || {
            format!("{} nilpotence", e.name)
        })?;
        ensure(!is_supersolvable(g).holds || is_solvable(g).holds, || {
            format!("{} supersolvable", e.name)
        })?;
    }
    // (p-solvable, p-nilpotent, p-supersolvable) for p = 2, 3, 5 and the
    // absolute (solvable, nilpotent, supersolvable)
    let table: [(&str, [[bool; 3]; 3], [bool; 3]); 5] = [
        (
            "symmetric3",
            [[true, true, true], [true, false, true], [true, true, true]],
            [true, false, true],
        ),
        (
            "symmetric4",
            [
                [true, false, false],
                [true, false, true],
                [true, true, true],
            ],
            [true, false, false],
        ),
        (
            "alternating4",
            [[true, false, false], [true, true, true], [true, true, true]],
            [true, false, false],
        ),
        (
            "alternating5",
            [
                [false, false, false],
                [false, false, false],
                [false, false, false],
            ],
            [false, false, false],
        ),
        (
            "quaternion8",
            [[true, true, true], [true, true, true], [true, true, true]],
            [true, true, true],
        ),
    ];
    for (name, rows, abs) in table {
        let g = find(&cat, name);
        for (row, p) in rows.iter().zip([2u64, 3, 5]) {
            let got = [
                is_p_solvable(g, p).unwrap().holds,
                is_p_nilpotent(g, p).unwrap().holds,
                is_p_supersolvable(g, p).unwrap().holds,
            ];
            ensure(&got == row, || format!("{name} p={p}: {got:?} != {row:?}"))?;
        }
        let got = [
            is_solvable(g).holds,
            is_nilpotent(g).holds,
            is_supersolvable(g).holds,
        ];
        ensure(got == abs, || format!("{name}: {got:?} != {abs:?}"))?;
    }
    Ok(format!(
        "{} groups, hierarchy holds; verdict table for S3, S4, A4, A5, Q8 x {{2,3,5}} matches",
        cat.len()
    ))
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(format!("report-{jobs}.txt"));
        let status = Command::new(env!("CARGO_BIN_EXE_grouplab"))
            .args(["scan", "--catalog"])
            .arg(shipped_catalog_dir())
            .args([
                "--theorems",
                "all",
                "--lemmas",
                "all",
                "--jobs",
                jobs,
                "--report",
            ])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.code() == Some(0), || {
            format!("--jobs {jobs} exit {:?}", status.status.code())
        })?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure(one == eight, || "reports differ".into())?;
    Ok(format!(
        "--jobs 1 and --jobs 8 reports byte-identical ({} bytes)",
        one.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("order-216 example facts", criterion_1),
        ("zero-violation catalog scan", criterion_2),
        ("oracle equivalences", criterion_3),
        ("normalizer embedding equivalences", criterion_4),
        ("s-semipermutable closure properties", criterion_5),
        ("class hierarchy and verdict table", criterion_6),
        ("scan determinism across --jobs", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
