use qalg_core::invariants::{algebra_domdim, fky_positive_domdim, is_gendo_symmetric, self_injective};
use qalg_core::{build_algebra, family, parse_presentation, Algebra, BuildOptions, InvariantBound};

fn fixture(name: &str) -> Algebra {
    let path = format!("{}/../../fixtures/{name}.qalg", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    build_algebra(&parse_presentation(name, &text).unwrap(), BuildOptions::default()).unwrap()
}

#[test]
fn fixtures_match_the_families() {
    for (file, fam, m, dim) in [
        ("cyc3", "cyc3", None, 7),
        ("lin4", "lin4", None, 9),
        ("a2", "a2", None, 3),
        ("schur2", "schur", Some(2), 5),
        ("schur3", "schur", Some(3), 9),
        ("loop3", "loop", Some(3), 3),
    ] {
        let a = fixture(file);
        let b = build_algebra(&family(fam, m).unwrap(), BuildOptions::default()).unwrap();
        assert_eq!((a.dim(), a.grid()), (dim, b.grid()), "{file}");
    }
}

#[test]
fn domdim_zero_fixture_has_no_faithful_map() {
    let a = fixture("domdim0");
    assert_eq!(algebra_domdim(&a, 10).unwrap(), InvariantBound::Exact(0));
    assert!(!fky_positive_domdim(&a).unwrap());
    for name in ["cyc3", "schur2"] {
        assert!(fky_positive_domdim(&fixture(name)).unwrap(), "{name}");
    }
}

#[test]
fn self_injective_and_gendo_flags() {
    assert!(self_injective(&fixture("loop3")).unwrap());
    assert!(!self_injective(&fixture("lin4")).unwrap());
    assert!(is_gendo_symmetric(&fixture("schur2")).unwrap().is_iso());
    assert!(!is_gendo_symmetric(&fixture("lin4")).unwrap().is_iso());
}
