//! Quivers, paths, presentations `KQ/I`, the text input format, and the
//! normal-form basis construction.
//!
//! Paths compose left to right: `p*q` walks `p` and then `q`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{BasisElement, FDAlgebra, Provenance};
use crate::error::{Error, ParseError, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize) -> Quiver {
        Quiver {
            vertex_count,
            arrows: Vec::new(),
        }
    }

    /// Adds an arrow (0-based endpoints) and returns its index.
    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> usize {
        assert!(source < self.vertex_count && target < self.vertex_count);
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrows.len() - 1
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: opposite_name(&a.name),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

pub(crate) fn opposite_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(s) => s.to_string(),
        None => format!("{name}^op"),
    }
}

/// A path: source vertex plus arrow word (empty word = trivial path).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    /// Checks left-to-right composability.
    pub fn is_valid(&self, q: &Quiver) -> bool {
        let mut at = self.source;
        for &a in &self.arrows {
            if q.arrows[a].source != at {
                return false;
            }
            at = q.arrows[a].target;
        }
        true
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source + 1)
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A relation: linear combination of parallel paths of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(name: &str, field: Field, quiver: Quiver) -> Presentation {
        Presentation {
            name: name.to_string(),
            field,
            quiver,
            relations: Vec::new(),
        }
    }

    /// Adds a relation from `(coefficient, arrow names)` terms.
    ///
    /// Panics on malformed input; use the parser for untrusted text.
    pub fn add_relation(&mut self, terms: &[(i64, &[&str])]) {
        let terms = terms
            .iter()
            .map(|(c, names)| {
                let arrows: Vec<usize> = names
                    .iter()
                    .map(|n| self.quiver.arrow_index(n).expect("unknown arrow"))
                    .collect();
                let source = self.quiver.arrows[arrows[0]].source;
                (self.field.from_i64(*c), Path { source, arrows })
            })
            .collect();
        let rel = Relation { terms };
        validate_relation(&self.quiver, &rel, 0).expect("malformed relation");
        self.relations.push(rel);
    }

    /// Serializes to the text input format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self.field {
            Field::Rational => s.push_str("field rational\n"),
            Field::Prime(p) => writeln!(s, "field prime {p}").unwrap(),
        }
        writeln!(s, "vertices {}", self.quiver.vertex_count).unwrap();
        for a in &self.quiver.arrows {
            writeln!(s, "arrow {} {} {}", a.name, a.source + 1, a.target + 1).unwrap();
        }
        for r in &self.relations {
            s.push_str("relation ");
            for (i, (c, p)) in r.terms.iter().enumerate() {
                let neg = c.is_negative();
                let mag = if neg { c.neg() } else { c.clone() };
                if i > 0 {
                    s.push_str(if neg { " - " } else { " + " });
                } else if neg {
                    s.push('-');
                }
                if !mag.is_one() {
                    write!(s, "{mag}*").unwrap();
                }
                s.push_str(&p.label(&self.quiver));
            }
            s.push('\n');
        }
        s
    }
}

fn validate_relation(q: &Quiver, r: &Relation, line: usize) -> std::result::Result<(), ParseError> {
    let mut ends = None;
    for (_, p) in &r.terms {
        if p.len() < 2 {
            return Err(ParseError::ShortPath { line, len: p.len() });
        }
        if !p.is_valid(q) {
            return Err(ParseError::NotComposable {
                line,
                name: p.label(q),
            });
        }
        let e = (p.source, p.target(q));
        match ends {
            None => ends = Some(e),
            Some(f) if f != e => return Err(ParseError::NonParallel { line }),
            _ => {}
        }
    }
    Ok(())
}

/// Parses the line-oriented presentation format.
///
/// Edge cases:
/// - `field` defaults to the rationals when absent;
/// - coefficients of repeated paths within one relation are summed;
/// - a relation whose coefficients all vanish is dropped.
pub fn parse_presentation(name: &str, text: &str) -> std::result::Result<Presentation, ParseError> {
    let mut field = Field::Rational;
    let mut quiver: Option<Quiver> = None;
    let mut relations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |msg: &str| ParseError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let mut words = content.split_whitespace();
        let kw = words.next().unwrap();
        match kw {
            "field" => {
                if quiver.is_some() {
                    return Err(syntax("`field` must precede `vertices`"));
                }
                let rest: Vec<&str> = words.collect();
                field = match rest.as_slice() {
                    ["rational"] => Field::Rational,
                    ["prime", p] => {
                        let p: u32 = p.parse().map_err(|_| syntax("bad prime"))?;
                        Field::prime(p).map_err(|e| syntax(&e.to_string()))?
                    }
                    _ => return Err(syntax("expected `field rational` or `field prime <p>`")),
                };
            }
            "vertices" => {
                if quiver.is_some() {
                    return Err(syntax("duplicate `vertices`"));
                }
                let rest: Vec<&str> = words.collect();
                let n: usize = match rest.as_slice() {
                    [n] => n.parse().map_err(|_| syntax("bad vertex count"))?,
                    _ => return Err(syntax("expected `vertices <n>`")),
                };
                if n == 0 || n >= 64 {
                    return Err(syntax("vertex count must be in 1..64"));
                }
                quiver = Some(Quiver::new(n));
            }
            "arrow" => {
                let q = quiver.as_mut().ok_or(ParseError::MissingVertices)?;
                let rest: Vec<&str> = words.collect();
                let [name, s, t] = rest.as_slice() else {
                    return Err(syntax("expected `arrow <name> <source> <target>`"));
                };
                if !is_identifier(name) {
                    return Err(syntax("bad arrow name"));
                }
                if q.arrow_index(name).is_some() {
                    return Err(syntax("duplicate arrow name"));
                }
                let s: usize = s.parse().map_err(|_| syntax("bad source"))?;
                let t: usize = t.parse().map_err(|_| syntax("bad target"))?;
                let n = q.vertex_count;
                if s == 0 || t == 0 || s > n || t > n {
                    return Err(syntax("arrow endpoint out of range"));
                }
                q.add_arrow(name, s - 1, t - 1);
            }
            "relation" => {
                let q = quiver.as_ref().ok_or(ParseError::MissingVertices)?;
                let body: String = content["relation".len()..]
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .collect();
                let rel = parse_relation(q, field, &body, line)?;
                if !rel.terms.is_empty() {
                    relations.push(rel);
                }
            }
            _ => return Err(syntax(&format!("unknown keyword `{kw}`"))),
        }
    }
    let quiver = quiver.ok_or(ParseError::MissingVertices)?;
    Ok(Presentation {
        name: name.to_string(),
        field,
        quiver,
        relations,
    })
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_relation(
    q: &Quiver,
    field: Field,
    body: &str,
    line: usize,
) -> std::result::Result<Relation, ParseError> {
    let syntax = |msg: &str| ParseError::Syntax {
        line,
        msg: msg.to_string(),
    };
    if body.is_empty() {
        return Err(syntax("empty relation"));
    }
    // split into signed terms
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in body.chars() {
        if ch == '+' || ch == '-' {
            if cur.is_empty() {
                if !pieces.is_empty() {
                    return Err(syntax("dangling sign"));
                }
                neg ^= ch == '-';
                continue;
            }
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(syntax("dangling sign"));
    }
    pieces.push((neg, cur));

    let mut acc: BTreeMap<Path, Scalar> = BTreeMap::new();
    for (neg, piece) in pieces {
        let mut factors: Vec<&str> = piece.split('*').collect();
        if factors.iter().any(|f| f.is_empty()) {
            return Err(syntax("empty factor"));
        }
        let mut coef = field.one();
        if let Some(c) = parse_coefficient(field, factors[0], line)? {
            coef = c;
            factors.remove(0);
        }
        if neg {
            coef = coef.neg();
        }
        let mut arrows = Vec::new();
        for f in &factors {
            match q.arrow_index(f) {
                Some(a) => arrows.push(a),
                None => {
                    return Err(ParseError::UnknownArrow {
                        line,
                        name: f.to_string(),
                    })
                }
            }
        }
        if arrows.len() < 2 {
            return Err(ParseError::ShortPath {
                line,
                len: arrows.len(),
            });
        }
        let path = Path {
            source: q.arrows[arrows[0]].source,
            arrows,
        };
        let e = acc.entry(path).or_insert_with(|| field.zero());
        *e = e.add(&coef);
    }
    let rel = Relation {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect(),
    };
    validate_relation(q, &rel, line)?;
    Ok(rel)
}

fn parse_coefficient(
    field: Field,
    s: &str,
    line: usize,
) -> std::result::Result<Option<Scalar>, ParseError> {
    if !s.starts_with(|c: char| c.is_ascii_digit()) {
        return Ok(None);
    }
    let bad = || ParseError::Syntax {
        line,
        msg: format!("bad coefficient `{s}`"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    field.from_fraction(n, d).map(Some).map_err(|_| bad())
}

/// Options for [`build_algebra`].
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub max_nilpotency: usize,
    /// Refuse to enumerate more than this many paths.
    pub max_paths: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_nilpotency: 30,
            max_paths: 200_000,
        }
    }
}

/// All paths of length at most `n`, in path order (length, then lexicographic
/// by arrow index; trivial paths by vertex).
fn paths_up_to(q: &Quiver, n: usize, cap: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..q.vertex_count).map(Path::trivial).collect();
    let mut layer: Vec<Path> = out.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &layer {
            let t = p.target(q);
            for (a, arr) in q.arrows.iter().enumerate() {
                if arr.source == t {
                    let mut w = p.arrows.clone();
                    w.push(a);
                    next.push(Path {
                        source: p.source,
                        arrows: w,
                    });
                }
            }
        }
        next.sort_by(|x, y| x.arrows.cmp(&y.arrows).then(x.source.cmp(&y.source)));
        out.extend(next.iter().cloned());
        if out.len() > cap {
            return Err(Error::ResourceCap(format!("more than {cap} paths")));
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(out)
}

type Sparse = BTreeMap<usize, Scalar>;

/// Linear span kept reduced by leading (largest) path index.
struct Reducer {
    field: Field,
    rows: HashMap<usize, Sparse>,
}

impl Reducer {
    fn reduce(&self, mut v: Sparse) -> Sparse {
        let mut done = Sparse::new();
        while let Some((&k, c)) = v.iter().next_back() {
            let c = c.clone();
            match self.rows.get(&k) {
                Some(row) => {
                    for (j, x) in row {
                        let e = v.entry(*j).or_insert_with(|| self.field.zero());
                        *e = e.sub(&c.mul(x));
                        if e.is_zero() {
                            v.remove(j);
                        }
                    }
                }
                None => {
                    v.remove(&k);
                    done.insert(k, c);
                }
            }
        }
        done
    }

    /// Inserts `v` (monic on its leading term); returns the inserted row.
    fn insert(&mut self, v: Sparse) -> Option<Sparse> {
        let v = self.reduce(v);
        let (&lead, c) = v.iter().next_back()?;
        let inv = c.inv();
        let v: Sparse = v.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
        self.rows.insert(lead, v.clone());
        Some(v)
    }
}

/// Builds the finite-dimensional algebra `KQ/I`.
///
/// Works in `KQ / J^{N+1}` for growing `N`: the ideal is closed under arrow
/// multiplication there, reduced with the largest path as leading term, and the
/// loop stops at the first `N` where every path of length `N` reduces to zero.
/// The surviving (non-leading) paths form the normal-form basis.
pub fn build_algebra(p: &Presentation, opts: BuildOptions) -> Result<Arc<FDAlgebra>> {
    let q = &p.quiver;
    let field = p.field;
    for (i, r) in p.relations.iter().enumerate() {
        validate_relation(q, r, i + 1).map_err(Error::Parse)?;
        if r.terms.iter().any(|(c, _)| !field.contains(c)) {
            return Err(Error::Linalg(crate::error::LinalgError::FieldMismatch(
                field,
                r.terms[0].0.field(),
            )));
        }
    }
    for n in 1..=opts.max_nilpotency {
        let paths = paths_up_to(q, n, opts.max_paths)?;
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut red = Reducer {
            field,
            rows: HashMap::new(),
        };
        let mut queue: VecDeque<Sparse> = VecDeque::new();
        for r in &p.relations {
            let mut v = Sparse::new();
            for (c, path) in &r.terms {
                if let Some(&i) = index.get(path) {
                    v.insert(i, c.clone());
                }
            }
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            let Some(row) = red.insert(v) else { continue };
            for a in 0..q.arrows.len() {
                for left in [true, false] {
                    let mut w = Sparse::new();
                    for (&k, c) in &row {
                        let path = &paths[k];
                        let np = if left {
                            if q.arrows[a].target != path.source {
                                continue;
                            }
                            let mut arrows = vec![a];
                            arrows.extend(&path.arrows);
                            Path {
                                source: q.arrows[a].source,
                                arrows,
                            }
                        } else {
                            if path.target(q) != q.arrows[a].source {
                                continue;
                            }
                            let mut arrows = path.arrows.clone();
                            arrows.push(a);
                            Path {
                                source: path.source,
                                arrows,
                            }
                        };
                        if let Some(&i) = index.get(&np) {
                            w.insert(i, c.clone());
                        }
                    }
                    if !w.is_empty() {
                        queue.push_back(w);
                    }
                }
            }
        }
        // every length-n path must reduce to zero
        let top_zero = paths.iter().enumerate().filter(|(_, p)| p.len() == n).all(|(i, _)| {
            let mut v = Sparse::new();
            v.insert(i, field.one());
            red.reduce(v).is_empty()
        });
        if !top_zero {
            continue;
        }
        let normal: Vec<usize> = (0..paths.len())
            .filter(|i| paths[*i].len() < n && !red.rows.contains_key(i))
            .collect();
        let pos: HashMap<usize, usize> = normal.iter().enumerate().map(|(b, &i)| (i, b)).collect();
        let basis: Vec<BasisElement> = normal
            .iter()
            .map(|&i| {
                let path = &paths[i];
                BasisElement {
                    source: path.source,
                    target: path.target(q),
                    word: path.arrows.clone(),
                    label: path.label(q),
                }
            })
            .collect();
        let dim = basis.len();
        let mut products = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if basis[i].target != basis[j].source {
                    continue;
                }
                let mut arrows = basis[i].word.clone();
                arrows.extend(&basis[j].word);
                if arrows.len() >= n {
                    continue;
                }
                let path = Path {
                    source: basis[i].source,
                    arrows,
                };
                let mut v = Sparse::new();
                v.insert(index[&path], field.one());
                products[i * dim + j] = red
                    .reduce(v)
                    .into_iter()
                    .map(|(k, c)| (pos[&k], c))
                    .collect();
            }
        }
        return FDAlgebra::from_parts(
            &p.name,
            field,
            q.clone(),
            basis,
            products,
            Provenance::Presentation,
        );
    }
    Err(Error::NonNilpotent(opts.max_nilpotency))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYC3: &str = "field rational\nvertices 3\narrow a 1 3\narrow b 3 2\narrow c 2 1\nrelation c*a\nrelation b*c\n";

    #[test]
    fn parses_cyc3() {
        let p = parse_presentation("cyc3", CYC3).unwrap();
        assert_eq!(p.quiver.vertex_count, 3);
        assert_eq!(p.quiver.arrows.len(), 3);
        assert_eq!(p.relations.len(), 2);
        let again = parse_presentation("cyc3", &p.to_text()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn parse_errors() {
        let base = "vertices 2\narrow a 1 2\narrow b 2 1\n";
        let e = parse_presentation("x", &format!("{base}relation a*z\n")).unwrap_err();
        assert_eq!(
            e,
            ParseError::UnknownArrow {
                line: 4,
                name: "z".into()
            }
        );
        let e = parse_presentation("x", &format!("{base}relation a\n")).unwrap_err();
        assert_eq!(e, ParseError::ShortPath { line: 4, len: 1 });
        let e = parse_presentation("x", &format!("{base}relation a*b - b*a\n")).unwrap_err();
        assert_eq!(e, ParseError::NonParallel { line: 4 });
        let e = parse_presentation("x", &format!("{base}relation a*a\n")).unwrap_err();
        assert!(matches!(e, ParseError::NotComposable { line: 4, .. }));
        let e = parse_presentation("x", "vertices 2\narrow a 1 3\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 2, .. }));
        let e = parse_presentation("x", "arrow a 1 2\n").unwrap_err();
        assert_eq!(e, ParseError::MissingVertices);
    }

    #[test]
    fn parses_coefficients_and_whitespace() {
        let t = "field prime 7\nvertices 2\narrow a 1 2\narrow b 2 1\narrow c 1 2\narrow d 2 1\n\
                 relation 3/2 * a * b - c*d  +a*b # comment\n";
        let p = parse_presentation("x", t).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.terms.len(), 2);
        let f = Field::Prime(7);
        let ab = r.terms.iter().find(|(_, p)| p.arrows == vec![0, 1]).unwrap();
        assert_eq!(ab.0, f.from_fraction(5, 2).unwrap());
    }

    #[test]
    fn field_only() {
        let p = parse_presentation("k", "vertices 1\n").unwrap();
        let a = build_algebra(&p, BuildOptions::default()).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn fixture_dimensions() {
        let p = parse_presentation("cyc3", CYC3).unwrap();
        assert_eq!(build_algebra(&p, BuildOptions::default()).unwrap().dim(), 7);
        let lin4 = "vertices 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a*b*c\n";
        let p = parse_presentation("lin4", lin4).unwrap();
        assert_eq!(build_algebra(&p, BuildOptions::default()).unwrap().dim(), 9);
        let loop3 = "vertices 1\narrow x 1 1\nrelation x*x*x\n";
        let p = parse_presentation("loop", loop3).unwrap();
        assert_eq!(build_algebra(&p, BuildOptions::default()).unwrap().dim(), 3);
        let s2 = "vertices 2\narrow a1 1 2\narrow b1 2 1\nrelation a1*b1\n";
        let p = parse_presentation("schur2", s2).unwrap();
        assert_eq!(build_algebra(&p, BuildOptions::default()).unwrap().dim(), 5);
    }

    #[test]
    fn non_admissible_is_rejected() {
        let p = parse_presentation("free", "vertices 1\narrow x 1 1\n").unwrap();
        let opts = BuildOptions {
            max_nilpotency: 6,
            ..Default::default()
        };
        assert_eq!(build_algebra(&p, opts).unwrap_err(), Error::NonNilpotent(6));
    }

    #[test]
    fn commutativity_relation() {
        // square with a*b = c*d
        let t = "vertices 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation a*b - c*d\n";
        let p = parse_presentation("sq", t).unwrap();
        let a = build_algebra(&p, BuildOptions::default()).unwrap();
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn mixed_length_relation() {
        // x*x = x*x*x on a loop together with x^4 = 0 gives x^2 = 0
        let t = "vertices 1\narrow x 1 1\nrelation x*x - x*x*x\nrelation x*x*x*x\n";
        let p = parse_presentation("m", t).unwrap();
        assert_eq!(build_algebra(&p, BuildOptions::default()).unwrap().dim(), 2);
    }
}
