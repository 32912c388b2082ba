use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superw_core::arith::{PrimeField, Rationals};
use superw_core::dynkin::{
    kw_bound, nilpotent_element, nilpotent_frame, JordanType, NilpotentFrame,
};
use superw_core::lie::{
    build_catalog, build_q, from_json, to_json, verify_axioms, AlgebraKind, LoadedAlgebra,
    SuperAlgebraData,
};
use superw_core::modrep::{claim_at_most_one_odd, min_dim_search, refined_bound, standard_levis};
use superw_core::suite::{
    acceptance, run_suite, Format, Nilpotents, Report, SuiteConfig, SuiteName,
};
use superw_core::wfinite::{one_dim_variety, ReducedWAlgebra};

/// Exact computations with restricted Lie superalgebras and reduced W-superalgebras.
#[derive(Parser)]
#[command(name = "superw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants of a catalog algebra (or a JSON file, re-emitted after verification).
    Catalog(CatalogArgs),
    /// Dimensions of the Dynkin grading of a nilpotent.
    Grade(NilArgs),
    /// Invariants of the frame attached to a nilpotent.
    Frame(FrameArgs),
    /// The bound p^{d0/2} 2^{ceil(d1/2)} as CSV over a list of primes.
    Bound(BoundArgs),
    /// Run check suites, or the acceptance criteria.
    Verify(VerifyArgs),
    /// Dimension of the reduced W-superalgebra.
    Wdim(PrimeArgs),
    /// Generators of the reduced W-superalgebra and the odd-case identities.
    Theta(PrimeArgs),
    /// Composition factors of every restricted baby Verma module.
    Split(SplitArgs),
    /// Standard Levi subalgebras with their dimension accounting.
    Levi(LeviArgs),
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Catalog spec such as `gl(2|1)`, or a path to a JSON algebra.
    #[arg(long)]
    alg: String,
    /// Reduce modulo this prime.
    #[arg(long)]
    p: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct NilArgs {
    #[arg(long)]
    alg: String,
    /// Jordan type of the even and odd blocks, e.g. `jordan:2,1|1`.
    #[arg(long)]
    nilpotent: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FrameArgs {
    #[command(flatten)]
    nil: NilArgs,
    /// Also check the frame after reduction mod p and report the bound there.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    nil: NilArgs,
    #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
    p: Vec<u64>,
}

#[derive(Args)]
struct PrimeArgs {
    #[command(flatten)]
    nil: NilArgs,
    #[arg(long)]
    p: u64,
}

#[derive(Args)]
struct SplitArgs {
    #[command(flatten)]
    prime: PrimeArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest baby Verma module to build.
    #[arg(long, default_value_t = 5000)]
    cap_dim: usize,
}

#[derive(Args)]
struct LeviArgs {
    #[arg(long)]
    alg: String,
    /// Primes for the refined-bound bookkeeping.
    #[arg(long, value_delimiter = ',', default_values_t = [3, 5])]
    p: Vec<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML configuration; flags given on the command line override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `all` or a comma-separated list of suites.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, value_delimiter = ';')]
    alg: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    /// `enumerate`, or Jordan types separated by `;`.
    #[arg(long, value_delimiter = ';')]
    nilpotent: Vec<String>,
    #[arg(long)]
    cap_degree: Option<usize>,
    #[arg(long)]
    cap_dim: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Run the ten acceptance criteria instead of the suites.
    #[arg(long)]
    acceptance: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[command(flatten)]
    output: Output,
}

/// A failure that is reported with exit status 2.
struct ConfigError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.into())
    }
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn algebra(spec: &str) -> Result<(AlgebraKind, SuperAlgebraData<Rationals>)> {
    let kind: AlgebraKind = spec.parse()?;
    let g = build_q(&kind)?;
    Ok((kind, g))
}

fn frame(args: &NilArgs) -> Result<(SuperAlgebraData<Rationals>, NilpotentFrame<Rationals>)> {
    let (_, g) = algebra(&args.alg)?;
    let jt: JordanType = args.nilpotent.parse()?;
    let e = nilpotent_element(&g, &jt)?;
    let fr = nilpotent_frame(&g, &e)?;
    Ok((g, fr))
}

fn reduced(
    args: &NilArgs,
    p: u64,
) -> Result<(SuperAlgebraData<PrimeField>, NilpotentFrame<PrimeField>)> {
    let (_, fr) = frame(args)?;
    let gp = build_catalog(&args.alg.parse()?, p)?;
    let frp = fr.reduce_mod_p(&gp)?;
    Ok((gp, frp))
}

fn catalog(a: &CatalogArgs) -> Result<()> {
    let text = if a.alg.ends_with(".json") {
        let src = fs::read_to_string(&a.alg).with_context(|| format!("reading {}", a.alg))?;
        let (json, report) = match from_json(&src)? {
            LoadedAlgebra::Q(g) => (to_json(&g), verify_axioms(&g)),
            LoadedAlgebra::Fp(g) => (to_json(&g), verify_axioms(&g)),
        };
        if !report.all_pass() {
            let failing: Vec<_> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name)
                .collect();
            bail!("{} fails {failing:?}", a.alg);
        }
        json
    } else {
        let kind: AlgebraKind = a.alg.parse()?;
        match a.p {
            None => to_json(&build_q(&kind)?),
            Some(p) => to_json(&build_catalog(&kind, p)?),
        }
    };
    emit(&a.output, &(text + "\n"))
}

fn grade(a: &NilArgs) -> Result<()> {
    let (_, fr) = frame(a)?;
    let degrees: Vec<_> = fr
        .grading
        .pieces
        .keys()
        .map(|&i| {
            let (even, odd) = fr.grading.dims(i);
            json!({"degree": i, "even": even, "odd": odd})
        })
        .collect();
    emit(
        &a.output,
        &pretty(&json!({"alg": a.alg, "nilpotent": a.nilpotent, "degrees": degrees}))?,
    )
}

fn frame_cmd(a: &FrameArgs) -> Result<()> {
    let (g, fr) = frame(&a.nil)?;
    let mut out = serde_json::to_value(fr.invariants)?;
    out["m_dims"] = json!(fr.invariants.m_dims());
    out["m_prime_dims"] = json!(fr.invariants.m_prime_dims());
    out["gram_holds"] = json!(fr.gram_holds(&g));
    if let Some(p) = a.p {
        let (gp, frp) = reduced(&a.nil, p)?;
        out["p"] = json!(p);
        out["gram_holds_mod_p"] = json!(frp.gram_holds(&gp));
        out["bound"] = json!(kw_bound(&fr.invariants, p).to_string());
    }
    emit(&a.nil.output, &pretty(&out)?)
}

fn bound(a: &BoundArgs) -> Result<()> {
    let (_, fr) = frame(&a.nil)?;
    let d = fr.invariants;
    let mut text = String::from("p,d0,d1,bound\n");
    for &p in &a.p {
        superw_core::arith::check_odd_prime(p)?;
        text += &format!("{p},{},{},{}\n", d.d0, d.d1, kw_bound(&d, p));
    }
    emit(&a.nil.output, &text)
}

fn wdim(a: &PrimeArgs) -> Result<()> {
    let (gp, frp) = reduced(&a.nil, a.p)?;
    let w = ReducedWAlgebra::new(&gp, &frp, &frp.chi)?;
    let inv = frp.invariants;
    let predicted = (a.p as u128).pow(inv.l as u32) << inv.q_prime;
    let out = json!({
        "alg": a.nil.alg, "nilpotent": a.nil.nilpotent, "p": a.p,
        "dim": w.dim(), "sdim": w.sdim(), "predicted": predicted.to_string(), "l": inv.l, "q_prime": inv.q_prime,
        "matches": w.dim() as u128 == predicted,
    });
    emit(&a.nil.output, &pretty(&out)?)
}

fn theta(a: &PrimeArgs) -> Result<()> {
    let (gp, frp) = reduced(&a.nil, a.p)?;
    let w = ReducedWAlgebra::new(&gp, &frp, &frp.chi)?;
    let th = w.extract_theta()?;
    let mut out =
        json!({"alg": a.nil.alg, "nilpotent": a.nil.nilpotent, "p": a.p, "generators": th});
    if frp.invariants.r % 2 == 1 {
        out["odd_case"] = serde_json::to_value(w.odd_case_identities(&th)?)?;
        out["one_dimensional_variety"] =
            serde_json::to_value(one_dim_variety(&w, &th)?.feasibility)?;
    }
    emit(&a.nil.output, &pretty(&out)?)
}

fn split_cmd(a: &SplitArgs) -> Result<()> {
    let (g, fr) = frame(&a.prime.nil)?;
    let r = min_dim_search(&g, &fr, a.prime.p, a.seed, a.cap_dim)?;
    emit(&a.prime.nil.output, &pretty(&r)?)
}

fn levi(a: &LeviArgs) -> Result<()> {
    let (_, g) = algebra(&a.alg)?;
    let levis = standard_levis(&g)?;
    let bounds: Vec<_> = a
        .p
        .iter()
        .map(|&p| json!({"p": p, "bounds": levis.iter().flat_map(|l| l.data.iter().map(move |d| refined_bound(d, p))).collect::<Vec<_>>()}))
        .collect();
    let out = json!({"alg": a.alg, "levis": levis, "odd_summands": claim_at_most_one_odd(&g)?, "refined_bounds": bounds});
    emit(&a.output, &pretty(&out)?)
}

fn suite_config(a: &VerifyArgs) -> Result<SuiteConfig> {
    let mut c = match &a.config {
        Some(path) => SuiteConfig::from_toml(
            &fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        )?,
        None => SuiteConfig::default(),
    };
    if !a.suite.is_empty() && a.suite != ["all"] {
        c.suites = a
            .suite
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<SuiteName>, _>>()?;
    } else if a.suite == ["all"] {
        c.suites = SuiteName::ALL.to_vec();
    }
    if !a.alg.is_empty() {
        c.algebras = a.alg.clone();
    }
    if !a.p.is_empty() {
        c.primes = a.p.clone();
    }
    if !a.nilpotent.is_empty() {
        c.nilpotents = if a.nilpotent == ["enumerate"] {
            Nilpotents::default()
        } else {
            Nilpotents::List(a.nilpotent.clone())
        };
    }
    c.cap_degree = a.cap_degree.unwrap_or(c.cap_degree);
    c.cap_dim = a.cap_dim.unwrap_or(c.cap_dim);
    c.seed = a.seed.unwrap_or(c.seed);
    c.validate()?;
    Ok(c)
}

/// Returns whether every check passed.
fn verify(a: &VerifyArgs) -> Result<bool, ConfigError> {
    let report = if a.acceptance {
        Report::new(acceptance::all(a.seed.unwrap_or(0)), Vec::new())
    } else {
        run_suite(&suite_config(a)?)?
    };
    emit(&a.output, &report.render(a.format.into())?)?;
    Ok(report.all_pass())
}

fn run(cli: Cli) -> Result<bool, ConfigError> {
    match &cli.command {
        Command::Catalog(a) => catalog(a)?,
        Command::Grade(a) => grade(a)?,
        Command::Frame(a) => frame_cmd(a)?,
        Command::Bound(a) => bound(a)?,
        Command::Verify(a) => return verify(a),
        Command::Wdim(a) => wdim(a)?,
        Command::Theta(a) => theta(a)?,
        Command::Split(a) => split_cmd(a)?,
        Command::Levi(a) => levi(a)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("SUPERW_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        superw_core::par::init_threads(n);
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(ConfigError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
