//! `ncbell`: generate, render and cross-check Bell polynomials and the Hopf
//! algebras built on them.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncbell::bell::{bell, bell_partial, bell_scaled, bell_scaled_total, qbell, QNumerator};
use ncbell::format::{self, Format, Symbol};
use ncbell::hopf::{HopfAlgebra, Side};
use ncbell::mobius::MobiusAlgebra;
use ncbell::quasidet::{
    bell_matrix, hessenberg_quasidet, numeric_quasidet, pretty, quasidet_ratio, Matrix, MatrixDoc,
};
use ncbell::rational::format_rational;
use ncbell::series::fields::{bell_apply, flow_pullback_taylor, random_instance, FieldDoc};
use ncbell::series::{FormalSeries, SeriesDoc};
use ncbell::trees::tree_bell;
use ncbell::verify::{self, random_series, Suite, VerifyConfig};
use ncbell::{CMonomial, Monomial, Polynomial, Rational, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "ncbell",
    version,
    about = "Exact Bell polynomials, quasideterminants and Faa di Bruno Hopf algebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Latex,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Latex => Format::Latex,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct Commutativity {
    /// Noncommuting letters (default).
    #[arg(long)]
    nc: bool,
    /// Commuting letters.
    #[arg(long)]
    c: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bell polynomial B_n, or its k-letter part B_{n,k}.
    Bell {
        #[command(flatten)]
        alg: Commutativity,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(0..=16))]
        n: u32,
        #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(0..=16))]
        k: Option<u32>,
        /// Q_n = B_n(1!d1, 2!d2, ...)/n!.
        #[arg(long)]
        scaled: bool,
        /// q-analog (commutative, needs -k).
        #[arg(long, conflicts_with = "scaled")]
        q: bool,
    },
    /// Partial Bell polynomial B_{n,k}.
    Partial {
        #[command(flatten)]
        alg: Commutativity,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(0..=16))]
        n: u32,
        #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(0..=16))]
        k: u32,
    },
    /// q-Bell polynomial with polynomial-in-q coefficients.
    Qbell {
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..=12))]
        n: u32,
        #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(1..=12))]
        k: u32,
        /// Plain integer numerators (may not divide; then an error is reported).
        #[arg(long)]
        plain: bool,
    },
    /// Tree-valued Bell polynomial.
    #[command(group(ArgGroup::new("shape").args(["planar", "nonplanar"])))]
    Trees {
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(0..=9))]
        n: u32,
        #[arg(long)]
        planar: bool,
        #[arg(long)]
        nonplanar: bool,
    },
    /// Hessenberg or numeric quasideterminants.
    #[command(group(ArgGroup::new("source").required(true).args(["bell_matrix", "file"])))]
    Quasidet {
        /// The Bell matrix whose quasideterminant is B_n.
        #[arg(long)]
        bell_matrix: bool,
        #[arg(short = 'n', requires = "bell_matrix", value_parser = clap::value_parser!(u32).range(1..=10))]
        n: Option<u32>,
        #[command(flatten)]
        alg: Commutativity,
        /// JSON matrix file: {"algebra": "nc"|"c"|"q", "rows": [[...]]}.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Entry (p, q) for numeric matrices; default (1, n).
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        entry: Option<Vec<usize>>,
    },
    /// Coproducts and antipodes of the Faa di Bruno Hopf algebras.
    #[command(group(ArgGroup::new("what").required(true).args(["coproduct", "antipode"])))]
    Hopf {
        /// Commutative Faa di Bruno algebra (default).
        #[arg(long, conflicts_with = "dfdb")]
        fdb: bool,
        /// Noncommutative Dynkin variant.
        #[arg(long)]
        dfdb: bool,
        #[arg(long)]
        coproduct: bool,
        #[arg(long)]
        antipode: bool,
        #[arg(long, value_enum, default_value_t = Method::Rec, requires = "antipode")]
        method: Method,
        /// Which recursion `--method rec` uses.
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(0..=9))]
        n: u32,
    },
    /// Moebius inversion of Bell polynomials and the antipode of the d-algebra.
    #[command(group(ArgGroup::new("what").required(true).args(["invert", "antipode", "coproduct"])))]
    Mobius {
        #[arg(long)]
        nc: bool,
        #[arg(long)]
        invert: bool,
        #[arg(long)]
        antipode: bool,
        #[arg(long)]
        coproduct: bool,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..=9))]
        n: u32,
    },
    /// Composition, reversion and flow checks on truncated series.
    #[command(group(ArgGroup::new("op").required(true).args(["compose", "reversion", "flow_check"])))]
    Series {
        #[arg(long)]
        compose: bool,
        #[arg(long)]
        reversion: bool,
        #[arg(long)]
        flow_check: bool,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=30))]
        order: u32,
        /// JSON input; random instances from --seed otherwise.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run cross-checking suites and print a pass/fail table.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=8))]
        max_degree: u32,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Recursive formula.
    Rec,
    /// Hessenberg quasideterminant of rank polynomials.
    Qdet,
    /// Determinant (commutative only).
    Det,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    /// m(S ⊗ id)Δ = ηε.
    Left,
    /// m(id ⊗ S)Δ = ηε.
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::LeftLeg,
            SideArg::Right => Side::RightLeg,
        }
    }
}

/// What a command produced: rendered output and whether its checks passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, passed: true }
    }
}

fn poly<M: Monomial>(p: &Polynomial<M>, sym: Symbol, fmt: Format) -> String {
    format::render(p, sym, fmt)
}

fn run(cli: Cli) -> Result<Outcome> {
    let fmt: Format = cli.format.into();
    match cli.command {
        Command::Bell {
            alg,
            n,
            k,
            scaled,
            q,
        } => {
            if q {
                let k = k.context("--q needs -k")?;
                return qbell_cmd(n, k, QNumerator::Bracketed, fmt);
            }
            bell_cmd(alg, n, k, scaled, fmt)
        }
        Command::Partial { alg, n, k } => bell_cmd(alg, n, Some(k), false, fmt),
        Command::Qbell { n, k, plain } => qbell_cmd(
            n,
            k,
            if plain {
                QNumerator::Plain
            } else {
                QNumerator::Bracketed
            },
            fmt,
        ),
        Command::Trees { n, nonplanar, .. } => trees_cmd(n, !nonplanar, fmt),
        Command::Quasidet {
            n,
            alg,
            file,
            entry,
            ..
        } => match file {
            Some(path) => quasidet_file(&path, entry, fmt),
            None => {
                let n = n.context("--bell-matrix needs -n")? as usize;
                if alg.c {
                    Ok(bell_matrix_cmd::<CMonomial>(n, fmt))
                } else {
                    Ok(bell_matrix_cmd::<Word>(n, fmt))
                }
            }
        },
        Command::Hopf {
            dfdb,
            coproduct,
            method,
            side,
            n,
            ..
        } => {
            if dfdb {
                hopf_cmd(
                    &HopfAlgebra::<Word>::new(),
                    coproduct,
                    method,
                    side.into(),
                    n,
                    fmt,
                )
            } else {
                hopf_cmd(
                    &HopfAlgebra::<CMonomial>::new(),
                    coproduct,
                    method,
                    side.into(),
                    n,
                    fmt,
                )
            }
        }
        Command::Mobius {
            nc,
            invert,
            coproduct,
            side,
            n,
            ..
        } => {
            let what = if invert {
                MobiusOp::Invert
            } else if coproduct {
                MobiusOp::Coproduct
            } else {
                MobiusOp::Antipode(side.into())
            };
            if nc {
                mobius_cmd(&MobiusAlgebra::<Word>::new(), what, n, fmt)
            } else {
                mobius_cmd(&MobiusAlgebra::<CMonomial>::new(), what, n, fmt)
            }
        }
        Command::Series {
            compose,
            reversion,
            order,
            file,
            seed,
            ..
        } => {
            let order = order as usize;
            if compose {
                compose_cmd(order, file, seed, fmt)
            } else if reversion {
                reversion_cmd(order, file, seed, fmt)
            } else {
                flow_cmd(order, file, seed, fmt)
            }
        }
        Command::Verify {
            suite,
            max_degree,
            seed,
            samples,
        } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            verify_cmd(
                &suites,
                VerifyConfig {
                    max_degree,
                    seed,
                    samples,
                },
                fmt,
            )
        }
    }
}

fn bell_cmd(
    alg: Commutativity,
    n: u32,
    k: Option<u32>,
    scaled: bool,
    fmt: Format,
) -> Result<Outcome> {
    if let Some(k) = k {
        if k > n {
            bail!("-k {k} exceeds -n {n}");
        }
    }
    let nc = match (scaled, k) {
        (true, Some(k)) => bell_scaled(n, k),
        (true, None) => bell_scaled_total(n),
        (false, Some(k)) => bell_partial::<Word>(n, k),
        (false, None) => bell::<Word>(n),
    };
    // n = 0 with scaling: Q_0 = 1 by convention.
    let nc = if scaled && n == 0 && k.unwrap_or(0) == 0 {
        Polynomial::one()
    } else {
        nc
    };
    Ok(Outcome::ok(if alg.c {
        poly(&nc.abelianize(), Symbol::D, fmt)
    } else {
        poly(&nc, Symbol::D, fmt)
    }))
}

fn qbell_cmd(n: u32, k: u32, num: QNumerator, fmt: Format) -> Result<Outcome> {
    let q = qbell(n, k, num)?;
    Ok(Outcome::ok(match fmt {
        Format::Json => {
            let terms: Vec<_> = q
                .terms
                .iter()
                .map(|(m, c)| {
                    json!({
                        "monomial": m.letters().iter().map(|l| l.code()).collect::<Vec<_>>(),
                        "coeff": c.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "n": n, "k": k, "terms": terms }))?
        }
        _ => q.to_text(),
    }))
}

fn trees_cmd(n: u32, planar: bool, fmt: Format) -> Result<Outcome> {
    let t = tree_bell(n, planar);
    Ok(Outcome::ok(match fmt {
        Format::Json => {
            let terms: Vec<_> = t
                .terms()
                .map(|(tree, c)| json!({ "coeff": format_rational(c), "tree": tree.paren() }))
                .collect();
            serde_json::to_string_pretty(&json!({ "n": n, "planar": planar, "terms": terms }))?
        }
        _ => t.to_text(),
    }))
}

fn bell_matrix_cmd<M: Monomial>(n: usize, fmt: Format) -> Outcome {
    let a = bell_matrix::<M>(n);
    let q = hessenberg_quasidet(&a).expect("Bell matrices are Hessenberg");
    let passed = q == bell::<M>(n as u32);
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(&json!({
            "matrix": MatrixDoc::from_polynomial_matrix(&a),
            "quasideterminant": format::to_doc(&q, Symbol::D),
            "equals_bell": passed,
        }))
        .expect("serializable"),
        _ => format!(
            "{}|A|_(1,{n}) = {}\nequals B_{n}: {}",
            pretty(&a, 1, n, |p| format::to_text(p, Symbol::D)),
            poly(&q, Symbol::D, fmt),
            if passed { "yes" } else { "no" }
        ),
    };
    Outcome { text, passed }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let raw =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))
}

fn quasidet_file(path: &PathBuf, entry: Option<Vec<usize>>, fmt: Format) -> Result<Outcome> {
    let doc: MatrixDoc = read_json(path)?;
    match doc.algebra.as_str() {
        "q" => {
            let a = doc.rational_matrix()?;
            let (p, q) = match entry.as_deref() {
                Some([p, q]) => (*p, *q),
                _ => (1, a.n()),
            };
            let value = numeric_quasidet(&a, p, q)?;
            let ratio = quasidet_ratio(&a, p, q)?;
            let passed = value == ratio;
            let text = match fmt {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "entry": [p, q],
                    "quasideterminant": format_rational(&value),
                    "determinant_ratio": format_rational(&ratio),
                    "agree": passed,
                }))?,
                _ => format!(
                    "{}|A|_({p},{q}) = {}\n(-1)^(p+q) det A / det A^({p},{q}) = {}",
                    pretty(&a, p, q, format_rational),
                    format_rational(&value),
                    format_rational(&ratio)
                ),
            };
            Ok(Outcome { text, passed })
        }
        "nc" => symbolic_quasidet::<Word>(&doc, entry, fmt),
        "c" => symbolic_quasidet::<CMonomial>(&doc, entry, fmt),
        other => bail!("unknown matrix algebra '{other}' (expected nc, c or q)"),
    }
}

fn symbolic_quasidet<M: Monomial>(
    doc: &MatrixDoc,
    entry: Option<Vec<usize>>,
    fmt: Format,
) -> Result<Outcome> {
    let a: Matrix<Polynomial<M>> = doc.polynomial_matrix()?;
    if let Some(e) = entry {
        if e != [1, a.n()] {
            bail!("symbolic matrices support only the Hessenberg entry (1, n)");
        }
    }
    let q = hessenberg_quasidet(&a)?;
    Ok(Outcome::ok(match fmt {
        Format::Text => format!(
            "{}|A|_(1,{}) = {}",
            pretty(&a, 1, a.n(), |p| format::to_text(p, Symbol::D)),
            a.n(),
            poly(&q, Symbol::D, fmt)
        ),
        _ => poly(&q, Symbol::D, fmt),
    }))
}

fn hopf_cmd<M: Monomial>(
    h: &HopfAlgebra<M>,
    coproduct: bool,
    method: Method,
    side: Side,
    n: u32,
    fmt: Format,
) -> Result<Outcome> {
    if coproduct {
        return Ok(Outcome::ok(h.coproduct_generator(n).render(Symbol::X, fmt)));
    }
    if n == 0 {
        return Ok(Outcome::ok(poly(&Polynomial::<M>::one(), Symbol::X, fmt)));
    }
    let s = match method {
        Method::Rec => h.antipode_recursive(n, side),
        Method::Qdet => h.antipode_quasidet(n)?,
        Method::Det => {
            if !M::COMMUTATIVE {
                bail!("--method det needs commuting generators (--fdb)");
            }
            let c = HopfAlgebra::<CMonomial>::new().antipode_det(n)?;
            return Ok(Outcome::ok(poly(&c, Symbol::X, fmt)));
        }
    };
    Ok(Outcome::ok(poly(&s, Symbol::X, fmt)))
}

enum MobiusOp {
    Invert,
    Coproduct,
    Antipode(Side),
}

fn mobius_cmd<M: Monomial>(
    m: &MobiusAlgebra<M>,
    op: MobiusOp,
    n: u32,
    fmt: Format,
) -> Result<Outcome> {
    Ok(Outcome::ok(match op {
        MobiusOp::Invert => poly(&m.mobius_invert(n)?, Symbol::B, fmt),
        MobiusOp::Coproduct => m.coproduct_m(n)?.render(Symbol::D, fmt),
        MobiusOp::Antipode(side) => poly(&m.antipode_m(n, side)?, Symbol::D, fmt),
    }))
}

fn series_out(s: &FormalSeries<Rational>, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => serde_json::to_string_pretty(&s.to_doc())?,
        _ => s.to_text(),
    })
}

#[derive(serde::Deserialize)]
struct ComposeDoc {
    f: SeriesDoc,
    g: SeriesDoc,
}

fn compose_cmd(order: usize, file: Option<PathBuf>, seed: u64, fmt: Format) -> Result<Outcome> {
    let (f, g) = match file {
        Some(p) => {
            let d: ComposeDoc = read_json(&p)?;
            (
                FormalSeries::from_doc(&d.f)?.truncate(order),
                FormalSeries::from_doc(&d.g)?.truncate(order),
            )
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (
                random_series(&mut rng, order),
                random_series(&mut rng, order),
            )
        }
    };
    let h = f.compose(&g)?;
    let passed = h == f.compose_via_bell(&g)?;
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(&json!({
            "f": f.to_doc(), "g": g.to_doc(), "composition": h.to_doc(), "matches_bell_formula": passed,
        }))?,
        _ => format!(
            "f      = {}\ng      = {}\nf(g)   = {}\nBell-polynomial formula agrees: {}",
            f.to_text(),
            g.to_text(),
            h.to_text(),
            if passed { "yes" } else { "no" }
        ),
    };
    Ok(Outcome { text, passed })
}

fn reversion_cmd(order: usize, file: Option<PathBuf>, seed: u64, fmt: Format) -> Result<Outcome> {
    let g = match file {
        Some(p) => FormalSeries::from_doc(&read_json::<SeriesDoc>(&p)?)?.truncate(order),
        None => ncbell::hopf::random_unit_series(&mut ChaCha8Rng::seed_from_u64(seed), order),
    };
    let h = g.reversion()?;
    let t = FormalSeries::identity(order);
    let passed = g.compose(&h)? == t && h.compose(&g)? == t;
    let text = match fmt {
        Format::Json => series_out(&h, fmt)?,
        _ => format!(
            "g      = {}\ng^(-1) = {}\nround trip: {}",
            g.to_text(),
            series_out(&h, fmt)?,
            if passed { "ok" } else { "FAILED" }
        ),
    };
    Ok(Outcome { text, passed })
}

fn flow_cmd(order: usize, file: Option<PathBuf>, seed: u64, fmt: Format) -> Result<Outcome> {
    let instances = match file {
        Some(p) => vec![read_json::<FieldDoc>(&p)?.parse()?],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|i| random_instance(&mut rng, 1 + i % 3, order))
                .collect()
        }
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for (i, (f, psi)) in instances.iter().enumerate() {
        let taylor = flow_pullback_taylor(f, psi, order)?;
        let mut ok = true;
        for (n, t) in taylor.iter().enumerate().skip(1) {
            ok &= *t == bell_apply(&f.coeffs()[..n.min(f.coeffs().len())], psi, n as u32)?;
        }
        passed &= ok;
        rows.push((i, f.dim(), ok, taylor));
    }
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(&json!(rows
            .iter()
            .map(|(i, m, ok, taylor)| json!({
                "instance": i,
                "dim": m,
                "agrees": ok,
                "taylor": taylor.iter().map(|t| t.to_docs()).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>()))?,
        _ => {
            let mut s = String::new();
            for (i, m, ok, taylor) in &rows {
                s.push_str(&format!(
                    "instance {i:>2} (m = {m}): {}\n",
                    if *ok { "PASS" } else { "FAIL" }
                ));
                if rows.len() == 1 {
                    for (n, t) in taylor.iter().enumerate() {
                        s.push_str(&format!("  n = {n}: {}\n", t.to_text()));
                    }
                }
            }
            s.push_str(&format!(
                "pullback = Bell operators through order {order}: {}",
                if passed { "yes" } else { "no" }
            ));
            s
        }
    };
    Ok(Outcome { text, passed })
}

fn verify_cmd(suites: &[Suite], cfg: VerifyConfig, fmt: Format) -> Result<Outcome> {
    let reports = verify::run(suites, &cfg);
    let passed = reports.iter().all(|r| r.passed());
    let text = match fmt {
        Format::Json => serde_json::to_string_pretty(&json!(reports
            .iter()
            .map(|r| json!({
                "suite": r.suite.name(),
                "passed": r.passed(),
                "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>()))?,
        _ => verify::render_table(&reports).trim_end().to_string(),
    };
    Ok(Outcome { text, passed })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
