use std::collections::BTreeSet;

use qalg_core::verify::{resolve_ids, COVERAGE, RANDOM_SUITE, STATEMENTS};
use qalg_core::{build_algebra, family, verify_statements, BuildOptions, Cutoffs, Entry};

#[test]
fn ids_are_unique_and_covered() {
    let ids: BTreeSet<&str> = STATEMENTS.iter().map(|s| s.id).collect();
    assert_eq!(ids.len(), STATEMENTS.len());
    let mut reached = BTreeSet::new();
    for (topic, list) in COVERAGE {
        assert!(!list.is_empty(), "{topic} has no statements");
        for id in *list {
            assert!(ids.contains(id), "{topic} names unknown id {id}");
            reached.insert(*id);
        }
    }
    assert_eq!(reached, ids, "statements outside every topic");
    assert!(RANDOM_SUITE.iter().all(|id| ids.contains(id)));
}

#[test]
fn aliases_resolve_in_registry_order() {
    let names = |s: &str| resolve_ids(s).unwrap().iter().map(|s| s.id).collect::<Vec<_>>();
    assert_eq!(names("all").len(), STATEMENTS.len());
    assert_eq!(names("main"), ["main-theorem"]);
    assert_eq!(names("bounds"), ["injdim-bounds"]);
    assert_eq!(names("random").len(), RANDOM_SUITE.len());
    assert_eq!(names("bounds, main,main"), ["main-theorem", "injdim-bounds"]);
    assert!(resolve_ids("main,bogus").is_err());
    assert!(resolve_ids(" , ").is_err());
}

#[test]
fn reports_are_deterministic() {
    let strip = |es: Vec<Entry>| es.into_iter().map(|e| Entry { ms: 0, ..e }).collect::<Vec<_>>();
    let ids = resolve_ids("all").unwrap();
    for name in ["cyc3", "schur"] {
        let run = || {
            let a = build_algebra(&family(name, None).unwrap(), BuildOptions::default()).unwrap();
            strip(verify_statements(&a, &ids, Cutoffs::default()).entries)
        };
        assert_eq!(run(), run(), "{name}");
    }
}

#[test]
fn named_families_pass_every_statement() {
    let ids = resolve_ids("all").unwrap();
    for name in ["field", "a2", "lin4", "cyc3", "schur", "loop"] {
        let a = build_algebra(&family(name, None).unwrap(), BuildOptions::default()).unwrap();
        let r = verify_statements(&a, &ids, Cutoffs::default());
        let bad: Vec<_> = r.entries.iter().filter(|e| e.status != qalg_core::Status::Pass).collect();
        assert!(bad.is_empty(), "{name}: {bad:#?}");
    }
}
