use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gchar_core::catalog::{self, ENTRIES};
use gchar_core::gdim::{self, Candidate, Properness};
use gchar_core::module::GradedModule;
use gchar_core::rank::{Component, RankResult};
use gchar_core::resolution::{self, Pdim};
use gchar_core::ring::GradedRing;
use gchar_core::series::{self, CIShape};
use gchar_core::suites::{self, SUITES};
use gchar_core::text::{self, RingSpec};
use gchar_core::{Bounds, Error, Fp, PrimeField};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gchar", version, about = "G-Euler characteristics and relative Betti numbers over complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Ring definition file.
    #[arg(long, global = true)]
    ring: Option<PathBuf>,
    /// Module definition file.
    #[arg(long, global = true)]
    module: Option<PathBuf>,
    /// Second module, for `chig-pair`.
    #[arg(long, global = true)]
    module2: Option<PathBuf>,
    /// Index of `chi_i` and `chi^G_i`.
    #[arg(long = "i", global = true, default_value_t = 0)]
    index: usize,
    /// Highest homological degree.
    #[arg(long, global = true, default_value_t = 8)]
    hmax: usize,
    /// Highest internal degree of any linear algebra.
    #[arg(long, global = true, default_value_t = 40, allow_negative_numbers = true)]
    dmax: i32,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Totally reflexive module files, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    witnesses: Vec<PathBuf>,
    /// A ring element, for `quotient-regular`.
    #[arg(long, global = true)]
    element: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of a minimal free resolution.
    Betti,
    /// Projective dimension.
    Pdim,
    /// Depth, from the first nonvanishing `Ext^i(k, M)`.
    Depth,
    /// Classical `chi_i` of a module of finite projective dimension.
    Chi,
    /// Rank, using the ring file's `component` lines when pdim is infinite.
    Rank,
    /// Largest rank of a free direct summand.
    Frank,
    /// Gorenstein dimension.
    Gdim,
    /// Relative Betti numbers.
    Gbetti,
    /// `chi^G_i`.
    Chig,
    /// A minimal G-approximation `0 -> K -> G -> M -> 0`.
    Gapprox,
    /// A strict G-resolution assembled from the G-approximation.
    Strictres,
    /// Properness of the strict G-resolution, tested against witnesses.
    Proper,
    /// `chi^G(M, N)` from the lengths of relative Tor.
    ChigPair,
    /// `chi^G(M/sM) = chi^G(M) - f-rank(M)` for a regular element `s`.
    QuotientRegular,
    /// `epsilon_i` and `tau_i` over a candidate set.
    EpsilonTau {
        /// Catalog entry supplying the candidates (otherwise `--witnesses`).
        #[arg(long)]
        catalog: Option<String>,
        /// Catalog parameters as key=value.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, default_value_t = 3)]
        imax: usize,
    },
    /// Closed forms over a complete intersection of given shape.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(long)]
        embdim: usize,
        #[arg(long)]
        codim: usize,
    },
    /// Built-in rings and modules.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a reproduction suite.
    Reproduce {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    /// `chi^G_i(k)`.
    ChigK,
    /// `beta_0..beta_hmax` of the residue field.
    BettiK,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Write the ring and its modules as definition files.
    Build {
        name: String,
        /// Parameters as key=value.
        params: Vec<String>,
        #[arg(long, default_value_t = 13)]
        field: u32,
        /// Output directory; without it the definitions are printed.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize, Clone, Copy)]
struct BoundsRecord {
    hmax: usize,
    dmax: i32,
}

#[derive(Serialize)]
struct Record {
    invariant: String,
    module: String,
    value: Value,
    status: String,
    bounds: BoundsRecord,
}

enum Failure {
    Input(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Records plus whether every verdict among them passed.
struct Report {
    records: Vec<Record>,
    ok: bool,
    footer: Option<String>,
}

impl Report {
    fn of(records: Vec<Record>) -> Self {
        Report {
            records,
            ok: true,
            footer: None,
        }
    }
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Outcome<&'a Path> {
    p.as_deref().ok_or_else(|| Failure::Input(format!("--{flag} is required")))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { .. } => Failure::Input(format!("{}: {e}", path.display())),
        other => other.into(),
    }
}

/// Everything a computation over a fixed field needs.
struct Ctx<'a, F: PrimeField> {
    opts: &'a Opts,
    ring: Arc<GradedRing<F>>,
    components: Option<Vec<Component<F>>>,
    bounds: BoundsRecord,
}

impl<F: PrimeField> Ctx<'_, F> {
    fn load(&self, path: &Path) -> Outcome<GradedModule<F>> {
        text::parse_module(&self.ring, &read(path)?).map_err(|e| in_file(path, e))
    }

    fn module(&self) -> Outcome<(String, GradedModule<F>)> {
        let p = required(&self.opts.module, "module")?;
        Ok((p.display().to_string(), self.load(p)?))
    }

    fn witnesses(&self) -> Outcome<Vec<GradedModule<F>>> {
        self.opts.witnesses.iter().map(|p| self.load(p)).collect()
    }

    fn record(&self, invariant: &str, module: &str, value: Value, status: &str) -> Record {
        Record {
            invariant: invariant.to_string(),
            module: module.to_string(),
            value,
            status: status.to_string(),
            bounds: self.bounds,
        }
    }
}

fn pdim_value(p: Pdim) -> Value {
    match p {
        Pdim::Finite(n) => json!(n),
        Pdim::Infinite => json!("infinite"),
    }
}

fn run_module_command<F: PrimeField>(cmd: &Command, opts: &Opts, spec: &RingSpec) -> Outcome<Report> {
    let ring_path = required(&opts.ring, "ring")?;
    let ring = spec.build::<F>().map_err(|e| in_file(ring_path, e))?;
    let components = spec.build_components(&ring).map_err(|e| in_file(ring_path, e))?;
    let ctx = Ctx {
        opts,
        ring,
        components,
        bounds: BoundsRecord {
            hmax: opts.hmax,
            dmax: opts.dmax,
        },
    };
    let dmax = opts.dmax;
    let i = opts.index;
    let exact = "exact";
    let mut out = Vec::new();
    match cmd {
        Command::Betti => {
            let (name, m) = ctx.module()?;
            let s = resolution::summarize(
                &m,
                &Bounds {
                    hmax: opts.hmax,
                    dmax,
                },
            )?;
            let status = if s.betti.is_complete() { exact } else { "truncated at hmax" };
            out.push(ctx.record("betti", &name, json!(s.betti.totals()), status));
            if let Some(p) = s.pdim {
                out.push(ctx.record("pdim", &name, pdim_value(p), exact));
            }
        }
        Command::Pdim => {
            let (name, m) = ctx.module()?;
            let (p, _) = resolution::pdim(&m, dmax)?;
            out.push(ctx.record("pdim", &name, pdim_value(p), exact));
        }
        Command::Depth => {
            let (name, m) = ctx.module()?;
            out.push(ctx.record("depth", &name, json!(resolution::depth(&m, dmax)?), exact));
        }
        Command::Chi => {
            let (name, m) = ctx.module()?;
            let v = resolution::chi_classical(&m, i, dmax)?;
            out.push(ctx.record(&format!("chi_{i}"), &name, json!(v), exact));
        }
        Command::Rank => {
            let (name, m) = ctx.module()?;
            match gchar_core::rank::rank(&m, ctx.components.as_deref(), dmax)? {
                RankResult::Rank(r, method) => {
                    out.push(ctx.record("rank", &name, json!(r), &format!("exact ({method})")))
                }
                RankResult::Undefined(why) => out.push(ctx.record("rank", &name, json!("undefined"), &why)),
            }
        }
        Command::Frank => {
            let (name, m) = ctx.module()?;
            let (t, _) = resolution::f_rank(&m, dmax)?;
            out.push(ctx.record("f_rank", &name, json!(t), exact));
        }
        Command::Gdim => {
            let (name, m) = ctx.module()?;
            out.push(ctx.record("gdim", &name, json!(gdim::gdim(&m, dmax)?), exact));
        }
        Command::Gbetti => {
            let (name, m) = ctx.module()?;
            let g = gdim::g_betti(&m, dmax)?;
            out.push(ctx.record("g_betti", &name, json!(g.values), exact));
        }
        Command::Chig => {
            let (name, m) = ctx.module()?;
            let g = gdim::g_betti(&m, dmax)?;
            let label = if i == 0 { "chi_g".to_string() } else { format!("chi_g_{i}") };
            out.push(ctx.record(&label, &name, json!(g.chi(i)), exact));
        }
        Command::Gapprox => {
            let (name, m) = ctx.module()?;
            let a = gdim::g_approximation(&m, dmax)?;
            let res_k = resolution::Resolution::compute(&a.k, a.gdim + 1, dmax)?;
            let k_betti: Vec<usize> = match res_k.pdim() {
                _ if a.k.is_zero_module() => Vec::new(),
                Some(p) => (0..=p).map(|n| res_k.betti(n).unwrap_or(0)).collect(),
                None => Vec::new(),
            };
            out.push(ctx.record("gdim", &name, json!(a.gdim), exact));
            out.push(ctx.record("beta_0(G)", &name, json!(a.beta0_g()), exact));
            out.push(ctx.record("betti(K)", &name, json!(k_betti), exact));
            out.push(ctx.record("residual_rank", &name, json!(a.residual_rank()?), exact));
        }
        Command::Strictres => {
            let (name, m) = ctx.module()?;
            let a = gdim::g_approximation(&m, dmax)?;
            let s = gdim::strict_resolution(&a, dmax)?;
            let ranks: Vec<usize> = (0..=s.complex.high()).map(|n| s.complex.module(n).beta0()).collect();
            out.push(ctx.record("beta_0(G_n)", &name, json!(ranks), exact));
            out.push(ctx.record("alternating_beta_0", &name, json!(s.alternating_beta0()), exact));
            out.push(ctx.record(
                "hom_to_residue",
                &name,
                json!(gdim::hom_to_residue_dims(&s.complex)?),
                exact,
            ));
        }
        Command::Proper => {
            let (name, m) = ctx.module()?;
            let witnesses = ctx.witnesses()?;
            let a = gdim::g_approximation(&m, dmax)?;
            let s = gdim::strict_resolution(&a, dmax)?;
            let verdict = gdim::properness_test(&s.complex, &s.module, &s.augmentation, &witnesses, dmax)?;
            let status = match verdict {
                Properness::ProperForWitnesses { .. } => "witness-only",
                _ => exact,
            };
            out.push(ctx.record("proper", &name, json!(verdict.to_string()), status));
        }
        Command::ChigPair => {
            let (name, m) = ctx.module()?;
            let p2 = required(&opts.module2, "module2")?;
            let n = ctx.load(p2)?;
            let v = gdim::chi_g_pair(&m, &n, dmax)?;
            out.push(ctx.record("chi_g_pair", &format!("{name}, {}", p2.display()), json!(v), exact));
        }
        Command::QuotientRegular => {
            let (name, m) = ctx.module()?;
            let text = opts
                .element
                .as_deref()
                .ok_or_else(|| Failure::Input("--element is required".into()))?;
            let s = ctx.ring.poly(text).map_err(|e| Failure::Input(format!("--element: {e}")))?;
            let q = gdim::quotient_by_regular(&m, &s, dmax)?;
            out.push(ctx.record("chi_g(M)", &name, json!(q.chi_before), exact));
            out.push(ctx.record("f_rank(M)", &name, json!(q.f_rank), exact));
            out.push(ctx.record("chi_g(M/sM)", &name, json!(q.chi_after), exact));
            out.push(ctx.record("chi_g(M/sM) via cone", &name, json!(q.chi_after_cone), exact));
            out.push(ctx.record("formula_holds", &name, json!(q.holds()), exact));
        }
        Command::EpsilonTau { imax, .. } => {
            let candidates: Vec<Candidate<F>> = opts
                .witnesses
                .iter()
                .map(|p| {
                    Ok(Candidate {
                        name: p.display().to_string(),
                        module: ctx.load(p)?,
                    })
                })
                .collect::<Outcome<_>>()?;
            let table = gdim::epsilon_tau(&candidates, ctx.components.as_deref(), *imax, dmax)?;
            epsilon_tau_records(&mut out, &table, ctx.bounds, "candidates");
        }
        _ => unreachable!("handled before the field is fixed"),
    }
    Ok(Report::of(out))
}

fn epsilon_tau_records(out: &mut Vec<Record>, table: &[gdim::EpsilonTau], bounds: BoundsRecord, source: &str) {
    for row in table {
        for (label, v) in [("epsilon", &row.epsilon), ("tau", &row.tau)] {
            let (value, module) = match v {
                Some((x, name)) => (json!(x), name.clone()),
                None => (json!("none"), source.to_string()),
            };
            out.push(Record {
                invariant: format!("{label}_{}", row.i),
                module,
                value,
                status: "catalog-restricted".into(),
                bounds,
            });
        }
    }
}

fn catalog_epsilon_tau<F: PrimeField>(name: &str, params: &[String], imax: usize, opts: &Opts) -> Outcome<Report> {
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    let e = catalog::build::<F>(name, &params)?;
    let table = e.epsilon_tau(imax, opts.dmax)?;
    let bounds = BoundsRecord {
        hmax: opts.hmax,
        dmax: opts.dmax,
    };
    let mut out = Vec::new();
    epsilon_tau_records(&mut out, &table, bounds, name);
    let mut report = Report::of(out);
    if let Some(c) = &e.classification {
        report.footer = Some(format!("classification complete: {c}"));
    }
    Ok(report)
}

/// A file name for a module name: `R/m^2` becomes `R_m2`, `m+R` becomes `mpR`.
fn file_stem(name: &str) -> String {
    let mut s = String::new();
    for c in name.chars() {
        match c {
            '+' => s.push('p'),
            '^' => {}
            c if c.is_ascii_alphanumeric() || c == '-' => s.push(c),
            _ => {
                if !s.ends_with('_') {
                    s.push('_');
                }
            }
        }
    }
    s.trim_matches('_').to_string()
}

fn catalog_build<F: PrimeField>(name: &str, params: &[String], out_dir: Option<&Path>, opts: &Opts) -> Outcome<Report> {
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    let e = catalog::build::<F>(name, &params)?;
    let mut ring_text = format!("# {}\n", e.summary);
    ring_text.push_str(&text::ring_to_text(&e.ring));
    if let Some(c) = e.components() {
        ring_text.push_str(&text::components_to_text(&e.ring, c));
    }
    let modules = e.modules(opts.dmax)?;
    let bounds = BoundsRecord {
        hmax: opts.hmax,
        dmax: opts.dmax,
    };
    let mut records = Vec::new();
    match out_dir {
        Some(dir) => {
            let write = |file: &str, body: &str| -> Outcome<()> {
                fs::write(dir.join(file), body).map_err(|e| Failure::Input(format!("{}: {e}", dir.join(file).display())))
            };
            fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            write("ring.gr", &ring_text)?;
            let mut used = std::collections::BTreeSet::new();
            for m in &modules {
                let stem = file_stem(&m.name);
                let mut file = format!("{stem}.gm");
                let mut n = 2;
                while !used.insert(file.clone()) {
                    file = format!("{stem}-{n}.gm");
                    n += 1;
                }
                write(&file, &format!("# {}\n{}", m.name, text::module_to_text(&m.module)))?;
                records.push(Record {
                    invariant: "module".into(),
                    module: m.name.clone(),
                    value: json!(dir.join(&file).display().to_string()),
                    status: "written".into(),
                    bounds,
                });
            }
        }
        None => {
            let mut body = ring_text;
            for m in &modules {
                let _ = write!(body, "\n# module {}\n{}", m.name, text::module_to_text(&m.module));
            }
            emit(&body);
            return Ok(Report {
                records: Vec::new(),
                ok: true,
                footer: None,
            });
        }
    }
    Ok(Report::of(records))
}

macro_rules! with_field {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p {
            2 => $f::<Fp<2>>($($arg),*),
            3 => $f::<Fp<3>>($($arg),*),
            5 => $f::<Fp<5>>($($arg),*),
            7 => $f::<Fp<7>>($($arg),*),
            11 => $f::<Fp<11>>($($arg),*),
            13 => $f::<Fp<13>>($($arg),*),
            17 => $f::<Fp<17>>($($arg),*),
            29 => $f::<Fp<29>>($($arg),*),
            37 => $f::<Fp<37>>($($arg),*),
            41 => $f::<Fp<41>>($($arg),*),
            101 => $f::<Fp<101>>($($arg),*),
            32003 => $f::<Fp<32003>>($($arg),*),
            p => Err(Failure::Input(format!(
                "GF({p}) is not supported; available: 2, 3, 5, 7, 11, 13, 17, 29, 37, 41, 101, 32003"
            ))),
        }
    };
}

fn series_report(kind: SeriesKind, embdim: usize, codim: usize, opts: &Opts) -> Outcome<Report> {
    let shape = CIShape::new(embdim, codim)?;
    let bounds = BoundsRecord {
        hmax: opts.hmax,
        dmax: opts.dmax,
    };
    let module = format!("k over e={embdim}, c={codim}");
    let mut out = Vec::new();
    match kind {
        SeriesKind::ChigK => {
            let i = opts.index;
            let v = series::chi_g_of_k(shape, i)?;
            let label = if i == 0 { "chi_g".to_string() } else { format!("chi_g_{i}") };
            let b: Vec<String> = series::g_betti_of_k(shape)?.iter().map(ToString::to_string).collect();
            out.push(Record {
                invariant: "g_betti".into(),
                module: module.clone(),
                value: json!(b),
                status: "exact".into(),
                bounds,
            });
            out.push(Record {
                invariant: label,
                module,
                value: json!(v.to_string()),
                status: "exact".into(),
                bounds,
            });
        }
        SeriesKind::BettiK => {
            let p = series::poincare_series(shape, opts.hmax);
            let b: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
            out.push(Record {
                invariant: "betti".into(),
                module,
                value: json!(b),
                status: "exact".into(),
                bounds,
            });
        }
    }
    Ok(Report::of(out))
}

fn reproduce(name: &str, opts: &Opts) -> Outcome<Report> {
    let r = suites::run(
        name,
        &Bounds {
            hmax: opts.hmax,
            dmax: opts.dmax,
        },
        opts.seed,
    )?;
    let bounds = BoundsRecord {
        hmax: opts.hmax,
        dmax: opts.dmax,
    };
    let records = r
        .checks
        .iter()
        .map(|c| Record {
            invariant: c.label.clone(),
            module: r.suite.clone(),
            value: json!({
                "expected": c.expected,
                "actual": c.actual,
                "verdict": if c.pass { "PASS" } else { "FAIL" },
            }),
            status: c.provenance.to_string(),
            bounds,
        })
        .collect();
    let passed = r.checks.iter().filter(|c| c.pass).count();
    Ok(Report {
        records,
        ok: r.passed(),
        footer: Some(format!(
            "{}: {passed}/{} checks passed ({})",
            r.suite,
            r.checks.len(),
            r.title
        )),
    })
}

fn catalog_list(opts: &Opts) -> Report {
    let bounds = BoundsRecord {
        hmax: opts.hmax,
        dmax: opts.dmax,
    };
    Report::of(
        ENTRIES
            .iter()
            .map(|(name, params, summary)| Record {
                invariant: name.to_string(),
                module: "catalog".into(),
                value: json!({ "params": params, "summary": summary }),
                status: "exact".into(),
                bounds,
            })
            .collect(),
    )
}

fn run(cli: &Cli) -> Outcome<Report> {
    let opts = &cli.opts;
    if opts.hmax == 0 || opts.dmax <= 0 {
        return Err(Failure::Input("--hmax and --dmax must be positive".into()));
    }
    match &cli.command {
        Command::Series { kind, embdim, codim } => series_report(*kind, *embdim, *codim, opts),
        Command::Reproduce { suite } => {
            if !SUITES.iter().any(|s| s.0 == suite) {
                let names: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
                return Err(Failure::Input(format!("unknown suite '{suite}' (one of {})", names.join(", "))));
            }
            reproduce(suite, opts)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(catalog_list(opts)),
            CatalogAction::Build {
                name,
                params,
                field,
                out,
            } => with_field!(*field, catalog_build(name, params, out.as_deref(), opts)),
        },
        Command::EpsilonTau {
            catalog: Some(name),
            params,
            imax,
        } => {
            let field = match &opts.ring {
                Some(p) => RingSpec::parse(&read(p)?).map_err(|e| in_file(p, e))?.field,
                None => 13,
            };
            with_field!(field, catalog_epsilon_tau(name, params, *imax, opts))
        }
        cmd => {
            let path = required(&opts.ring, "ring")?;
            let spec = RingSpec::parse(&read(path)?).map_err(|e| in_file(path, e))?;
            with_field!(spec.field, run_module_command(cmd, opts, &spec))
        }
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "none".into(),
        Value::Array(items) => items.iter().map(render_value).collect::<Vec<_>>().join(","),
        Value::Object(map) if map.contains_key("verdict") => format!(
            "{} (expected {}, got {})",
            render_value(&map["verdict"]),
            render_value(&map["expected"]),
            render_value(&map["actual"])
        ),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {}", render_value(v)))
            .collect::<Vec<_>>()
            .join("; "),
        other => other.to_string(),
    }
}

fn render_table(report: &Report) -> String {
    let width = report.records.iter().map(|r| r.invariant.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in &report.records {
        let _ = writeln!(s, "{:<width$} = {} ({})", r.invariant, render_value(&r.value), r.status);
    }
    if let Some(f) = &report.footer {
        let _ = writeln!(s, "{f}");
    }
    s
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(body: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(body.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.opts.format {
                Format::Table => render_table(&report),
                Format::Json => {
                    serde_json::to_string_pretty(&report.records).expect("records serialize") + "\n"
                }
            };
            emit(&body);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
