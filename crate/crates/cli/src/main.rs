use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qalg_core::invariants::{self, HochschildMode, InvariantBound};
use qalg_core::module::{regular_bimodule, regular_module};
use qalg_core::verify::{resolve_ids, Statement};
use qalg_core::{
    build_algebra, family, parse_presentation, verify_statements, Algebra, BuildOptions, Cutoffs, Error, Field,
    Presentation, RandomSpec, Status, VerificationReport,
};

/// Exact homological invariants of bound quiver algebras.
#[derive(Parser, Debug)]
#[command(name = "qalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Homological degree cutoff over A.
    #[arg(long, global = true, default_value_t = invariants::DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Homological degree cutoff over the enveloping algebra.
    #[arg(long, global = true, default_value_t = invariants::DEFAULT_ENVELOPING_CUTOFF)]
    enveloping_cutoff: usize,
    /// Largest dim A for which the enveloping algebra is built.
    #[arg(long, global = true, default_value_t = 30)]
    enveloping_cap: usize,
    /// Replace the field of the input: `rational` or `prime:P`.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    /// Write JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Presentation file.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    path: Option<PathBuf>,
    /// Built-in family, `name` or `name:m` (field, a2, lin4, cyc3, schur, loop).
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, basis and the grid of dim e_i A e_j.
    Info(Input),
    /// Dominant dimension of A.
    Domdim {
        #[command(flatten)]
        input: Input,
        /// Also report the dominant dimension and torsion-free degree of A over A^e.
        #[arg(long)]
        bimodule: bool,
    },
    /// Single-algebra invariants.
    Invariants(Input),
    /// Hochschild homology and cohomology.
    Hochschild {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Via::Classical)]
        via: Via,
    },
    /// Check statements on one algebra.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated statement ids, or `all`, `main`, `bounds`, `random`.
        #[arg(long, default_value = "all")]
        statements: String,
    },
    /// Check statements on a batch of random monomial algebras.
    Random {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "random")]
        statements: String,
        /// Reject draws with dim A above this.
        #[arg(long, default_value_t = 8)]
        dim_cap: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// List statement ids.
    Statements,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Via {
    Classical,
    Translate,
    Both,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    match s.split_once(':') {
        None if s == "rational" => Ok(Field::Rational),
        Some(("prime", p)) => {
            let p: u32 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
        _ => Err(format!("expected `rational` or `prime:P`, got `{s}`")),
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let cap = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::ResourceCap(_))));
            ExitCode::from(if cap { EXIT_CAP } else { EXIT_INPUT })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let o = cli.opts;
    let mut out = Output::new(o.json);
    let code = match cli.command {
        Command::Info(input) => info(&load(&input, &o)?, &mut out)?,
        Command::Domdim { input, bimodule } => domdim(&load(&input, &o)?, bimodule, &o, &mut out)?,
        Command::Invariants(input) => invariants_cmd(&load(&input, &o)?, &o, &mut out)?,
        Command::Hochschild { input, max_degree, via } => hochschild(&load(&input, &o)?, max_degree, via, &o, &mut out)?,
        Command::Verify { input, statements } => {
            let ids = resolve_ids(&statements)?;
            let report = verify_statements(&load(&input, &o)?, &ids, cutoffs(&o));
            let code = report_code(std::slice::from_ref(&report));
            out.report(&report);
            out.set_json(&report)?;
            code
        }
        Command::Random { seed, count, statements, dim_cap, jobs } => {
            let ids = resolve_ids(&statements)?;
            let spec = RandomSpec { seed, dim_cap, field: o.field.unwrap_or(Field::Rational), ..RandomSpec::default() };
            let reports = random(&spec, count, &ids, &o, jobs)?;
            for r in &reports {
                out.report(r);
            }
            let code = report_code(&reports);
            let fails: usize = reports.iter().map(|r| r.count(Status::Fail)).sum();
            let unsure: usize = reports.iter().map(|r| r.count(Status::Inconclusive)).sum();
            out.line(format!("{} algebras, {fails} failed checks, {unsure} inconclusive", reports.len()));
            out.set_json(&reports)?;
            code
        }
        Command::Statements => {
            for s in qalg_core::verify::STATEMENTS {
                let side = if s.two_sided { " (both sides)" } else { "" };
                out.line(format!("{:<30} {:?}{side}  {}", s.id, s.scope, s.anchor));
            }
            let list: Vec<_> = qalg_core::verify::STATEMENTS
                .iter()
                .map(|s| serde_json::json!({"id": s.id, "anchor": s.anchor, "two_sided": s.two_sided}))
                .collect();
            out.set_json(&list)?;
            0
        }
    };
    out.finish(o.output.as_ref())?;
    Ok(code)
}

fn cutoffs(o: &GlobalOpts) -> Cutoffs {
    Cutoffs { algebra: o.cutoff, enveloping: o.enveloping_cutoff, ..Cutoffs::default() }
}

fn report_code(reports: &[VerificationReport]) -> u8 {
    match reports.iter().map(VerificationReport::status).max() {
        Some(Status::Fail) => EXIT_FAIL,
        Some(Status::Inconclusive) => EXIT_CAP,
        _ => 0,
    }
}

fn load(input: &Input, o: &GlobalOpts) -> Result<Algebra> {
    let mut p = match (&input.path, &input.family) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let name = path.file_stem().map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
            parse_presentation(&name, &text)?
        }
        (None, Some(spec)) => {
            let (name, m) = match spec.split_once(':') {
                Some((n, m)) => (n, Some(m.parse().with_context(|| format!("bad family parameter `{m}`"))?)),
                None => (spec.as_str(), None),
            };
            family(name, m)?
        }
        _ => bail!("give exactly one of a presentation file or --family"),
    };
    if let Some(f) = o.field {
        p = with_field(&p, f)?;
    }
    let alg = build_algebra(&p, BuildOptions::default())?;
    if o.enveloping_cap != 30 && alg.dim() <= o.enveloping_cap {
        alg.enveloping_with_cap(o.enveloping_cap)?;
    }
    Ok(alg)
}

/// Re-reads the presentation over another field, so coefficients are reduced by the parser.
fn with_field(p: &Presentation, f: Field) -> Result<Presentation> {
    let text = p.to_text();
    let body = text.split_once('\n').map_or("", |(_, rest)| rest);
    let head = match f {
        Field::Rational => "field rational".to_string(),
        Field::Prime(q) => format!("field prime {q}"),
    };
    Ok(parse_presentation(&p.name, &format!("{head}\n{body}"))?)
}

fn info(alg: &Algebra, out: &mut Output) -> Result<u8> {
    #[derive(Serialize)]
    struct Info {
        name: String,
        field: String,
        dim: usize,
        vertices: usize,
        arrows: usize,
        basis: Vec<String>,
        grid: Vec<Vec<usize>>,
    }
    let i = Info {
        name: alg.name().to_string(),
        field: alg.field().to_string(),
        dim: alg.dim(),
        vertices: alg.vertex_count(),
        arrows: alg.arrow_count(),
        basis: alg.basis().iter().map(|b| b.label.clone()).collect(),
        grid: alg.grid(),
    };
    out.line(format!("{} over {}", i.name, i.field));
    out.line(format!("dim {}, {} vertices, {} arrows", i.dim, i.vertices, i.arrows));
    out.line(format!("basis: {}", i.basis.join(" ")));
    out.line("dim e_i A e_j:".to_string());
    for row in &i.grid {
        out.line(format!("  {}", row.iter().map(|d| format!("{d:>3}")).collect::<String>()));
    }
    out.set_json(&i)?;
    Ok(0)
}

fn domdim(alg: &Algebra, bimodule: bool, o: &GlobalOpts, out: &mut Output) -> Result<u8> {
    let d = invariants::algebra_domdim(alg, o.cutoff)?;
    let mut values = BTreeMap::from([("domdim".to_string(), d.to_string())]);
    if !bimodule {
        out.line(d.to_string());
    } else {
        let x = regular_bimodule(alg)?;
        let de = invariants::dominant_dimension(&x, o.enveloping_cutoff)?;
        let tf = invariants::torsion_free_degree(&x, o.enveloping_cutoff)?;
        out.line(format!("domdim A          {d}"));
        out.line(format!("domdim A over A^e {de}"));
        out.line(format!("tfdeg A over A^e  {}", tf.degree));
        values.insert("domdim_bimodule".into(), de.to_string());
        values.insert("tfdeg_bimodule".into(), tf.degree.to_string());
    }
    out.set_json(&values)?;
    Ok(0)
}

fn invariants_cmd(alg: &Algebra, o: &GlobalOpts, out: &mut Output) -> Result<u8> {
    let (c, ce) = (o.cutoff, o.enveloping_cutoff);
    let reg = regular_module(alg);
    let op = alg.opposite();
    let show = |b: InvariantBound| b.to_string();
    type Row<'a> = (&'static str, Box<dyn Fn() -> qalg_core::Result<String> + 'a>);
    let rows: Vec<Row> = vec![
        ("dim", Box::new(|| Ok(alg.dim().to_string()))),
        ("gldim", Box::new(|| invariants::gldim(alg, c).map(show))),
        ("domdim", Box::new(|| invariants::algebra_domdim(alg, c).map(show))),
        ("domdim_op", Box::new(|| invariants::algebra_domdim(&op, c).map(show))),
        ("idim_right", Box::new(|| invariants::idim(&reg, c).map(show))),
        ("idim_left", Box::new(|| invariants::idim(&regular_module(&op), c).map(show))),
        ("pdim_dual_right", Box::new(|| invariants::pdim(&invariants::dual_regular(alg)?, c).map(show))),
        ("idim_bimodule", Box::new(|| invariants::idim(&regular_bimodule(alg)?, ce).map(show))),
        ("pdim_dual_bimodule", Box::new(|| invariants::pdim(&invariants::dual_bimodule(alg)?, ce).map(show))),
        ("self_injective", Box::new(|| invariants::self_injective(alg).map(|b| b.to_string()))),
        ("gendo_symmetric", Box::new(|| invariants::is_gendo_symmetric(alg).map(|v| format!("{v:?}")))),
        ("dim_canonical_bimodule", Box::new(|| invariants::canonical_bimodule(alg).map(|v| v.dim().to_string()))),
    ];
    let mut values = BTreeMap::new();
    let mut code = 0;
    for (key, f) in rows {
        let v = match f() {
            Ok(v) => v,
            Err(e @ Error::ResourceCap(_)) => {
                code = EXIT_CAP;
                e.to_string()
            }
            Err(e) => format!("error: {e}"),
        };
        out.line(format!("{key:<24} {v}"));
        values.insert(key.to_string(), v);
    }
    out.set_json(&values)?;
    Ok(code)
}

fn hochschild(alg: &Algebra, max_degree: usize, via: Via, o: &GlobalOpts, out: &mut Output) -> Result<u8> {
    #[derive(Serialize)]
    struct Row {
        degree: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        cohomology: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        homology: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cohomology_translate: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        homology_translate: Option<usize>,
    }
    let classical = via != Via::Translate;
    let translate = via != Via::Classical;
    let mut rows = Vec::new();
    let mut code = 0;
    for l in 0..=max_degree {
        let mut r = Row { degree: l, cohomology: None, homology: None, cohomology_translate: None, homology_translate: None };
        if classical {
            r.cohomology = Some(invariants::hochschild_cohomology(alg, l)?);
            r.homology = Some(invariants::hochschild_homology(alg, l)?);
        }
        if translate && l >= 1 {
            let t = |m| invariants::hochschild_via_translate(alg, l, m, o.cutoff);
            r.cohomology_translate = Some(t(HochschildMode::Cohomology)?);
            r.homology_translate = Some(t(HochschildMode::Homology)?);
        }
        let disagree = classical
            && (r.cohomology_translate.is_some_and(|t| Some(t) != r.cohomology)
                || r.homology_translate.is_some_and(|t| Some(t) != r.homology));
        if disagree {
            code = EXIT_FAIL;
        }
        let cell = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        out.line(match via {
            Via::Both => format!(
                "{l:>3}  HH^{l} = {} (translate {})  HH_{l} = {} (translate {}){}",
                cell(r.cohomology),
                cell(r.cohomology_translate),
                cell(r.homology),
                cell(r.homology_translate),
                if disagree { "  MISMATCH" } else { "" }
            ),
            Via::Classical => format!("{l:>3}  HH^{l} = {}  HH_{l} = {}", cell(r.cohomology), cell(r.homology)),
            Via::Translate => {
                format!("{l:>3}  HH^{l} = {}  HH_{l} = {}", cell(r.cohomology_translate), cell(r.homology_translate))
            }
        });
        rows.push(r);
    }
    out.set_json(&rows)?;
    Ok(code)
}

fn random(spec: &RandomSpec, count: usize, ids: &[&Statement], o: &GlobalOpts, jobs: usize) -> Result<Vec<VerificationReport>> {
    let batch = qalg_core::verify::random_batch(spec, count)?;
    let jobs = match jobs {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        j => j,
    }
    .min(batch.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<VerificationReport>>>> = Mutex::new((0..batch.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(p) = batch.get(i) else { break };
                let r = build_algebra(p, BuildOptions::default())
                    .map(|alg| verify_statements(&alg, ids, cutoffs(o)))
                    .map_err(anyhow::Error::from);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("every slot is filled")).collect()
}

/// Collects table lines, or a JSON value when `--json` is set.
struct Output {
    lines: Vec<String>,
    json: Option<Option<String>>,
}

impl Output {
    fn new(json: bool) -> Output {
        Output { lines: Vec::new(), json: json.then_some(None) }
    }

    fn set_json<T: Serialize + ?Sized>(&mut self, v: &T) -> Result<()> {
        if let Some(slot) = &mut self.json {
            *slot = Some(serde_json::to_string_pretty(v)? + "\n");
        }
        Ok(())
    }

    fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    fn report(&mut self, r: &VerificationReport) {
        self.line(format!("{} (dim {}, {}): {}", r.algebra.name, r.algebra.dim, r.algebra.field, r.status().as_str()));
        for e in &r.entries {
            let w: Vec<String> = e.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            self.line(format!("  {:<12} {:<30} {:>6} ms  {}", e.status.as_str(), e.id, e.ms, w.join(" ")));
        }
    }

    fn finish(self, path: Option<&PathBuf>) -> Result<()> {
        let text = match self.json {
            Some(v) => v.unwrap_or_default(),
            None => self.lines.iter().map(|l| format!("{l}\n")).collect(),
        };
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
