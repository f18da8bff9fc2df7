//! Benchmark fixtures shared by the criterion benches.

use qalg_core::{build_algebra, family, Algebra, BuildOptions};

/// A fresh algebra from a built-in family. Resolutions are cached per
/// algebra, so benches build a new one for every iteration.
pub fn fresh(name: &str, m: Option<usize>) -> Algebra {
    build_algebra(&family(name, m).expect("known family"), BuildOptions::default()).expect("family builds")
}
