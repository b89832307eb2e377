use proptest::prelude::*;

use grouplab::catalog::{
    catalog_entries, fixture_216_153, load_catalog, parse_group_file, shipped_catalog_dir,
    write_group_file, Source,
};
use grouplab::classes::is_p_nilpotent;
use grouplab::embeddings::{
    is_c_supplemented, is_h_subgroup, is_pronormal, is_s_permutable, is_s_semipermutable,
    is_weakly_h_subgroup,
};
use grouplab::group::Limits;
use grouplab::report::{render, ReportOptions};
use grouplab::scan::{scan, NamedGroup, ScanOutcome};
use grouplab::structure::derived_subgroup;
use grouplab::subgroup::{is_normal, subgroup_generated};
use grouplab::theorems::{
    evaluate, find_witness_main, find_witness_xu_li, CheckId, PrimeContext, Status, TheoremId,
    Verdict,
};
use grouplab::Group;

fn catalog() -> Vec<NamedGroup> {
    load_catalog(&shipped_catalog_dir(), Limits::default()).unwrap()
}

#[test]
fn builtins_survive_write_then_parse() {
    for entry in catalog_entries(&shipped_catalog_dir()).unwrap() {
        if !matches!(entry.source, Source::Builtin(_)) {
            continue;
        }
        let g = entry.load(Limits::default()).unwrap().group;
        let text = write_group_file("g", &g);
        let back = parse_group_file(&text)
            .unwrap()
            .to_group(Limits::default())
            .unwrap();
        assert!(g.same_elements(&back), "{}", entry.name);
    }
}

#[test]
fn fixture_checks_hold_on_repeated_loads() {
    for _ in 0..3 {
        assert_eq!(fixture_216_153().unwrap().order(), 216);
    }
}

#[test]
fn special_case_is_consistent_with_main() {
    for e in catalog() {
        for p in e.group.prime_divisors() {
            let main = evaluate(CheckId::Theorem(TheoremId::Main), &e.name, &e.group, p).unwrap();
            let special = evaluate(
                CheckId::Theorem(TheoremId::SpecialNilp),
                &e.name,
                &e.group,
                p,
            )
            .unwrap();
            if main.verdict == Verdict::Confirmed
                && special.hypotheses.iter().all(|c| c.status == Status::Holds)
            {
                assert!(
                    is_p_nilpotent(&e.group, p).unwrap().holds,
                    "{} p={p}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn central_quotient_witness_gives_main_witness_for_two() {
    let mut seen = 0;
    for e in catalog() {
        if e.group.order() % 2 != 0 {
            continue;
        }
        let Some(h) = find_witness_xu_li(&e.group, 2).unwrap() else {
            continue;
        };
        let ctx = PrimeContext::new(&e.group, 2).unwrap();
        let derived = derived_subgroup(&ctx.sylow().to_group())
            .transport(&e.group)
            .unwrap();
        if derived.is_subgroup_of(&h) {
            seen += 1;
            assert!(
                find_witness_main(&e.group, 2).unwrap().is_some(),
                "{}",
                e.name
            );
        }
    }
    assert!(seen > 0);
}

#[test]
fn lemma_report_witnesses_revalidate() {
    let cat = catalog();
    let out = scan(&cat, &CheckId::all_lemmas(), None, 2);
    assert!(out.errors.is_empty());
    for r in &out.reports {
        let g = &cat.iter().find(|e| e.name == r.group).unwrap().group;
        assert!(
            r.revalidate(g).unwrap(),
            "{} p={} {}",
            r.group,
            r.prime,
            r.check
        );
    }
}

#[test]
fn evaluation_is_repeatable() {
    let cat: Vec<NamedGroup> = catalog()
        .into_iter()
        .filter(|e| e.group.order() <= 48)
        .collect();
    let checks = CheckId::all_theorems();
    let text = |o: &ScanOutcome| render(o, ReportOptions::default());
    let a = text(&scan(&cat, &checks, None, 1));
    let b = text(&scan(&cat, &checks, None, 3));
    let c = text(&scan(&cat, &checks, None, 1));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

fn small_groups() -> Vec<Group> {
    catalog()
        .into_iter()
        .filter(|e| e.group.order() <= 48)
        .map(|e| e.group)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn embedding_chain_and_witnesses(gi in 0usize..64, a in 0usize..256, b in 0usize..256) {
        let groups = small_groups();
        let g = &groups[gi % groups.len()];
        let els = g.elements();
        let h = subgroup_generated(g, &[els[a % els.len()].clone(), els[b % els.len()].clone()]).unwrap();

        let normal = is_normal(&h, g).unwrap();
        let sperm = is_s_permutable(&h, g).unwrap();
        let ssemi = is_s_semipermutable(&h, g).unwrap();
        prop_assert!(!normal || sperm.holds);
        prop_assert!(!sperm.holds || ssemi.holds);

        let verdicts = [
            sperm,
            ssemi,
            is_pronormal(&h, g).unwrap(),
            is_c_supplemented(&h, g).unwrap(),
            is_h_subgroup(&h, g).unwrap(),
            is_weakly_h_subgroup(&h, g).unwrap(),
        ];
        for v in &verdicts {
            prop_assert!(v.revalidate(&h, g).unwrap(), "{} on {}", v.predicate, h);
        }
        if normal {
            prop_assert!(verdicts.iter().all(|v| v.holds));
        }
    }
}
