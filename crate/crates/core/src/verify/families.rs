//! Named fixture families and seeded random monomial presentations.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Path, Presentation, Quiver, Relation};

/// Family names accepted by [`family`].
pub const FAMILIES: &[&str] = &["field", "a2", "lin4", "cyc3", "schur", "loop"];

/// Largest `m` accepted for the parametrised families.
pub const MAX_FAMILY_PARAMETER: usize = 12;

/// A named presentation. `m` is the vertex count for `schur` (default 2) and
/// the nilpotency index for `loop` (default 3); the other families take none.
///
/// Relation words are left to right: `c*a` walks `c` first.
pub fn family(name: &str, m: Option<usize>) -> Result<Presentation> {
    let bad = |msg: String| Err(Error::Precondition(msg));
    match (name, m) {
        ("schur", m) => {
            let m = m.unwrap_or(2);
            if m == 0 || m > MAX_FAMILY_PARAMETER {
                return bad(format!("schur needs 1 ≤ m ≤ {MAX_FAMILY_PARAMETER}"));
            }
            Ok(schur(m))
        }
        ("loop", m) => {
            let m = m.unwrap_or(3);
            if !(2..=MAX_FAMILY_PARAMETER).contains(&m) {
                return bad(format!("loop needs 2 ≤ m ≤ {MAX_FAMILY_PARAMETER}"));
            }
            let mut q = Quiver::new(1);
            q.add_arrow("x", 0, 0);
            let mut p = Presentation::new(&format!("loop({m})"), Field::Rational, q);
            p.add_relation(&[(1, &vec!["x"; m])]);
            Ok(p)
        }
        (_, Some(_)) if FAMILIES.contains(&name) => bad(format!("family `{name}` takes no parameter")),
        ("field", None) => Ok(Presentation::new("field", Field::Rational, Quiver::new(1))),
        ("a2", None) => {
            let mut q = Quiver::new(2);
            q.add_arrow("a", 0, 1);
            Ok(Presentation::new("a2", Field::Rational, q))
        }
        ("lin4", None) => {
            let mut q = Quiver::new(4);
            q.add_arrow("a", 0, 1);
            q.add_arrow("b", 1, 2);
            q.add_arrow("c", 2, 3);
            let mut p = Presentation::new("lin4", Field::Rational, q);
            p.add_relation(&[(1, &["a", "b", "c"])]);
            Ok(p)
        }
        ("cyc3", None) => {
            // a: 1 → 3, b: 3 → 2, c: 2 → 1; the zero relations are the two
            // composable length-2 words through vertex 1 and vertex 2
            let mut q = Quiver::new(3);
            q.add_arrow("a", 0, 2);
            q.add_arrow("b", 2, 1);
            q.add_arrow("c", 1, 0);
            let mut p = Presentation::new("cyc3", Field::Rational, q);
            p.add_relation(&[(1, &["c", "a"])]);
            p.add_relation(&[(1, &["b", "c"])]);
            Ok(p)
        }
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

/// Double quiver `1 ⇄ 2 ⇄ … ⇄ m` with `a_i: i → i+1`, `b_i: i+1 → i`.
fn schur(m: usize) -> Presentation {
    let mut q = Quiver::new(m);
    for i in 1..m {
        q.add_arrow(&format!("a{i}"), i - 1, i);
        q.add_arrow(&format!("b{i}"), i, i - 1);
    }
    let mut p = Presentation::new(&format!("schur({m})"), Field::Rational, q);
    let a = |i: usize| format!("a{i}");
    let b = |i: usize| format!("b{i}");
    if m >= 2 {
        p.add_relation(&[(1, &[b(m - 1).as_str(), a(m - 1).as_str()])]);
    }
    for i in 2..m {
        p.add_relation(&[
            (1, &[b(i - 1).as_str(), a(i - 1).as_str()]),
            (-1, &[a(i).as_str(), b(i).as_str()]),
        ]);
        p.add_relation(&[(1, &[a(i - 1).as_str(), a(i).as_str()])]);
        p.add_relation(&[(1, &[b(i).as_str(), b(i - 1).as_str()])]);
    }
    p
}

/// Parameters for [`random_presentation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub vertices: RangeInclusive<usize>,
    pub arrows: RangeInclusive<usize>,
    /// Number of random monomial relations of length 2 or 3.
    pub relations: RangeInclusive<usize>,
    pub dim_cap: usize,
    pub field: Field,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            seed: 42,
            vertices: 1..=3,
            arrows: 0..=4,
            relations: 0..=3,
            dim_cap: 8,
            field: Field::Rational,
        }
    }
}

/// Every path of length 5 is killed, so longer paths vanish too.
const KILL_LENGTH: usize = 5;
const MAX_ATTEMPTS: usize = 100_000;

fn contains_word(p: &[usize], w: &[usize]) -> bool {
    p.windows(w.len()).any(|x| x == w)
}

fn extend(q: &Quiver, layer: &[Path]) -> Vec<Path> {
    let mut next = Vec::new();
    for p in layer {
        let t = p.target(q);
        for (a, arrow) in q.arrows.iter().enumerate() {
            if arrow.source == t {
                let mut w = p.arrows.clone();
                w.push(a);
                next.push(Path { source: p.source, arrows: w });
            }
        }
    }
    next
}

/// One candidate; `None` when the algebra would exceed the cap.
fn attempt(spec: &RandomSpec, rng: &mut ChaCha8Rng, index: usize) -> Option<Presentation> {
    let n = rng.gen_range(spec.vertices.clone()).max(1);
    let mut q = Quiver::new(n);
    for i in 0..rng.gen_range(spec.arrows.clone()) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        q.add_arrow(&format!("x{}", i + 1), s, t);
    }
    let mut words: Vec<Vec<usize>> = Vec::new();
    let trivial: Vec<Path> = (0..n).map(Path::trivial).collect();
    let two = extend(&q, &extend(&q, &trivial));
    let three = extend(&q, &two);
    for _ in 0..rng.gen_range(spec.relations.clone()) {
        let pool = if rng.gen_bool(0.5) && !three.is_empty() { &three } else { &two };
        if let Some(p) = pool.choose(rng) {
            if !words.iter().any(|w| contains_word(&p.arrows, w)) {
                words.push(p.arrows.clone());
            }
        }
    }
    // count surviving paths by length; kill every survivor of length 5
    let mut dim = 0;
    let mut layer = trivial;
    for len in 0..KILL_LENGTH {
        dim += layer.len();
        if dim > spec.dim_cap {
            return None;
        }
        if len + 1 < KILL_LENGTH {
            layer = extend(&q, &layer)
                .into_iter()
                .filter(|p| !words.iter().any(|w| contains_word(&p.arrows, w)))
                .collect();
        }
    }
    let killed: Vec<Path> = extend(&q, &layer)
        .into_iter()
        .filter(|p| !words.iter().any(|w| contains_word(&p.arrows, w)))
        .collect();
    let mut p = Presentation::new(&format!("random({},{index})", spec.seed), spec.field, q);
    for w in words {
        let source = p.quiver.arrows[w[0]].source;
        p.relations.push(Relation {
            terms: vec![(spec.field.one(), Path { source, arrows: w })],
        });
    }
    for path in killed {
        p.relations.push(Relation {
            terms: vec![(spec.field.one(), path)],
        });
    }
    Some(p)
}

/// `count` presentations drawn from one seeded stream.
///
/// Quivers may have loops and multiple arrows. Candidates whose algebra has
/// dimension above `dim_cap` are redrawn.
pub fn random_batch(spec: &RandomSpec, count: usize) -> Result<Vec<Presentation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        if let Some(p) = attempt(spec, &mut rng, out.len()) {
            out.push(p);
        }
        tries += 1;
        if tries > MAX_ATTEMPTS {
            return Err(Error::ResourceCap(format!(
                "no presentation within dimension {} after {MAX_ATTEMPTS} draws",
                spec.dim_cap
            )));
        }
    }
    Ok(out)
}

pub fn random_presentation(spec: &RandomSpec) -> Result<Presentation> {
    Ok(random_batch(spec, 1)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_algebra, parse_presentation, BuildOptions};

    fn dim(p: &Presentation) -> usize {
        build_algebra(p, BuildOptions::default()).unwrap().dim()
    }

    #[test]
    fn family_dimensions() {
        assert_eq!(dim(&family("cyc3", None).unwrap()), 7);
        assert_eq!(dim(&family("lin4", None).unwrap()), 9);
        assert_eq!(dim(&family("a2", None).unwrap()), 3);
        assert_eq!(dim(&family("schur", Some(2)).unwrap()), 5);
        assert_eq!(dim(&family("schur", Some(3)).unwrap()), 9);
        assert_eq!(dim(&family("loop", Some(3)).unwrap()), 3);
        assert_eq!(dim(&family("field", None).unwrap()), 1);
        assert!(matches!(family("nope", None), Err(Error::UnknownFamily(_))));
        assert!(family("lin4", Some(3)).is_err());
    }

    #[test]
    fn families_round_trip_through_text() {
        for name in FAMILIES {
            let p = family(name, None).unwrap();
            let back = parse_presentation(&p.name, &p.to_text()).unwrap();
            assert_eq!(dim(&back), dim(&p), "{name}");
        }
    }

    #[test]
    fn random_is_reproducible_and_capped() {
        let spec = RandomSpec::default();
        let a = random_batch(&spec, 30).unwrap();
        let b = random_batch(&spec, 30).unwrap();
        assert_eq!(a, b);
        for p in &a {
            let d = dim(p);
            assert!(d <= spec.dim_cap, "{} has dimension {d}", p.name);
        }
    }

    /// Monomial algebras: the basis is the set of paths avoiding every
    /// relation word, counted here by brute force.
    #[test]
    fn random_dimension_matches_subword_count() {
        let spec = RandomSpec {
            seed: 7,
            ..RandomSpec::default()
        };
        for p in random_batch(&spec, 40).unwrap() {
            let words: Vec<Vec<usize>> = p.relations.iter().map(|r| r.terms[0].1.arrows.clone()).collect();
            let mut count = 0;
            let mut layer: Vec<Path> = (0..p.quiver.vertex_count).map(Path::trivial).collect();
            while !layer.is_empty() {
                layer.retain(|x| !words.iter().any(|w| contains_word(&x.arrows, w)));
                count += layer.len();
                layer = extend(&p.quiver, &layer);
            }
            assert_eq!(dim(&p), count, "{}", p.to_text());
        }
    }
}
