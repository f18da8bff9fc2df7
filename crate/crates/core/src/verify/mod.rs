//! Statement-level verification: runs registered identities on an algebra
//! and records pass, fail or inconclusive with witness values.

mod families;
mod statements;

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::invariants::{algebra_domdim, canonical_bimodule, InvariantBound, DEFAULT_CUTOFF, DEFAULT_ENVELOPING_CUTOFF};
use crate::module::{regular_bimodule, FDModule};

pub use families::{family, random_batch, random_presentation, RandomSpec, FAMILIES, MAX_FAMILY_PARAMETER};
pub use statements::{Scope, Statement, COVERAGE, STATEMENTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: BTreeMap<String, String>,
    pub cutoff: usize,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub dim: usize,
    pub field: String,
}

impl AlgebraInfo {
    pub fn of(alg: &Algebra) -> AlgebraInfo {
        AlgebraInfo {
            name: alg.name().to_string(),
            dim: alg.dim(),
            field: alg.field().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub algebra: AlgebraInfo,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    /// Worst status over all entries; `Pass` when empty.
    pub fn status(&self) -> Status {
        self.entries.iter().map(|e| e.status).max().unwrap_or(Status::Pass)
    }

    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }
}

/// Cutoffs and size limits for a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cutoffs {
    /// Homological degree cutoff over `A`.
    pub algebra: usize,
    /// Homological degree cutoff over `A^e`.
    pub enveloping: usize,
    /// Statements touching `A^e` are skipped (inconclusive) above this `dim A`.
    pub max_dim_enveloping: usize,
    /// One-sided statements are skipped above this `dim A`.
    pub max_dim: usize,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Cutoffs {
            algebra: DEFAULT_CUTOFF,
            enveloping: DEFAULT_ENVELOPING_CUTOFF,
            max_dim_enveloping: 16,
            max_dim: 40,
        }
    }
}

/// Ids of the random property suite.
pub const RANDOM_SUITE: &[&str] = &[
    "main-theorem",
    "domdim-op-symmetry",
    "relative-domdim-cosyzygy",
    "grade-condition",
    "hom-canonical-degree-zero",
    "cograde-vanishing",
    "two-torsion-free-definitions",
    "ext-balance",
    "tor-two-ways",
    "restriction-identity",
    "idim-lower-bound",
    "grade-cograde",
];

/// Expands a comma-separated id list with the aliases `all`, `main`,
/// `bounds` and `random`. Order follows the registry; duplicates collapse.
pub fn resolve_ids(spec: &str) -> Result<Vec<&'static Statement>> {
    let mut wanted: Vec<&str> = Vec::new();
    for raw in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match raw {
            "all" => wanted.extend(STATEMENTS.iter().map(|s| s.id)),
            "main" => wanted.push("main-theorem"),
            "bounds" => wanted.push("injdim-bounds"),
            "random" => wanted.extend(RANDOM_SUITE),
            id if STATEMENTS.iter().any(|s| s.id == id) => wanted.push(id),
            other => return Err(Error::Precondition(format!("unknown statement `{other}`"))),
        }
    }
    if wanted.is_empty() {
        return Err(Error::Precondition("no statements selected".into()));
    }
    Ok(STATEMENTS.iter().filter(|s| wanted.contains(&s.id)).collect())
}

/// Result of a single check before timing and bookkeeping.
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    status: Option<Status>,
    witness: BTreeMap<String, String>,
}

impl Outcome {
    fn status(&self) -> Status {
        self.status.unwrap_or(Status::Pass)
    }

    fn raise(&mut self, s: Status) {
        self.status = Some(self.status().max(s));
    }

    pub(crate) fn put(&mut self, key: &str, v: impl Display) {
        self.witness.insert(key.to_string(), v.to_string());
    }

    /// Records the first failure reason; later ones are kept under numbered keys.
    pub(crate) fn fail(&mut self, why: impl Display) {
        self.note("failure", why);
        self.raise(Status::Fail);
    }

    pub(crate) fn unsure(&mut self, why: impl Display) {
        self.note("undecided", why);
        self.raise(Status::Inconclusive);
    }

    fn note(&mut self, key: &str, why: impl Display) {
        let mut k = key.to_string();
        let mut i = 1;
        while self.witness.contains_key(&k) {
            i += 1;
            k = format!("{key}.{i}");
        }
        self.witness.insert(k, why.to_string());
    }

    pub(crate) fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if !ok {
            self.fail(why());
        }
    }

    /// Vacuous truth: the hypothesis does not hold on this algebra.
    pub(crate) fn vacuous(why: impl Display) -> Outcome {
        let mut o = Outcome::default();
        o.put("precondition", format!("not met: {why}"));
        o
    }

    /// Bound comparison: fail on certain contradiction, inconclusive when the
    /// cutoff hides the answer.
    pub(crate) fn agree(&mut self, what: &str, a: InvariantBound, b: InvariantBound) {
        if !a.consistent_with(b) {
            self.fail(format!("{what}: {a} vs {b}"));
        } else if a.exact().is_some() != b.exact().is_some() {
            self.unsure(format!("{what}: {a} vs {b}"));
        }
    }
}

/// Lazily computed data shared by the statements of one algebra.
pub(crate) struct Ctx {
    pub alg: Algebra,
    pub cut: Cutoffs,
    domdim: OnceCell<InvariantBound>,
    x: OnceCell<FDModule>,
    v: OnceCell<FDModule>,
}

impl Ctx {
    fn new(alg: &Algebra, cut: Cutoffs) -> Ctx {
        Ctx {
            alg: alg.clone(),
            cut,
            domdim: OnceCell::new(),
            x: OnceCell::new(),
            v: OnceCell::new(),
        }
    }

    /// `domdim A` at the enveloping cutoff, the one every bimodule statement
    /// shares.
    pub fn domdim(&self) -> Result<InvariantBound> {
        if let Some(d) = self.domdim.get() {
            return Ok(*d);
        }
        let d = algebra_domdim(&self.alg, self.cut.enveloping)?;
        Ok(*self.domdim.get_or_init(|| d))
    }

    /// The regular bimodule as a right `A^e`-module.
    pub fn x(&self) -> Result<FDModule> {
        if let Some(x) = self.x.get() {
            return Ok(x.clone());
        }
        let x = regular_bimodule(&self.alg)?;
        Ok(self.x.get_or_init(|| x).clone())
    }

    /// The canonical bimodule as a right `A^e`-module.
    pub fn v(&self) -> Result<FDModule> {
        if let Some(v) = self.v.get() {
            return Ok(v.clone());
        }
        let v = canonical_bimodule(&self.alg)?;
        Ok(self.v.get_or_init(|| v).clone())
    }
}

fn run_one(stmt: &Statement, ctx: &Ctx) -> (Outcome, usize) {
    let limit = match stmt.scope {
        Scope::Algebra => ctx.cut.max_dim,
        Scope::Enveloping => ctx.cut.max_dim_enveloping,
    };
    let cutoff = match stmt.scope {
        Scope::Algebra => ctx.cut.algebra,
        Scope::Enveloping => ctx.cut.enveloping,
    };
    if ctx.alg.dim() > limit {
        let mut o = Outcome::default();
        o.unsure(format!("dim A = {} exceeds the limit {limit}", ctx.alg.dim()));
        return (o, cutoff);
    }
    let o = match (stmt.check)(ctx) {
        Ok(o) => o,
        Err(Error::ResourceCap(why)) => {
            let mut o = Outcome::default();
            o.unsure(format!("resource cap: {why}"));
            o
        }
        Err(e) => {
            let mut o = Outcome::default();
            o.fail(format!("error: {e}"));
            o
        }
    };
    (o, cutoff)
}

/// Runs the selected statements. Statements marked two-sided also run on
/// `A^op`; those witness keys carry an `op.` prefix and the worse status wins.
pub fn verify_statements(alg: &Algebra, statements: &[&Statement], cutoffs: Cutoffs) -> VerificationReport {
    let ctx = Ctx::new(alg, cutoffs);
    let op_ctx = Ctx::new(&alg.opposite(), cutoffs);
    let mut entries = Vec::with_capacity(statements.len());
    for stmt in statements {
        let start = Instant::now();
        let (mut o, cutoff) = run_one(stmt, &ctx);
        if stmt.two_sided {
            let (p, _) = run_one(stmt, &op_ctx);
            o.raise(p.status());
            for (k, v) in p.witness {
                o.witness.insert(format!("op.{k}"), v);
            }
        }
        entries.push(Entry {
            id: stmt.id.to_string(),
            anchor: stmt.anchor.to_string(),
            status: o.status(),
            witness: o.witness,
            cutoff,
            ms: start.elapsed().as_millis() as u64,
        });
    }
    VerificationReport {
        algebra: AlgebraInfo::of(alg),
        entries,
    }
}
