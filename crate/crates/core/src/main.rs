use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use formcalc::calculus::{
    codifferential, dolbeault_del, dolbeault_delbar, exterior_d, harmonic_check, laplacian,
};
use formcalc::dsl::{parse_form, parse_polynomial};
use formcalc::io::{load_metric, load_transform};
use formcalc::obstruction::{obstruction, obstruction_symbolic, render_symbolic, transform_form, Direction};
use formcalc::oracle::oracle_compare;
use formcalc::scenario::{self, ScenarioId, ScenarioOptions};
use formcalc::{hodge_star, Error, Form, HermitianMetric, StarConvention};

#[derive(Parser)]
#[command(
    name = "formcalc",
    version,
    about = "Exact exterior calculus for complex (p,q)-forms"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Complex dimension.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Hermitian metric JSON file (identity when omitted).
    #[arg(long, global = true, value_name = "FILE")]
    metric: Option<PathBuf>,
    /// Star convention; scenarios run both unless one is given.
    #[arg(long, global = true, value_enum)]
    convention: Option<Convention>,
    /// Real direction, e.g. "1,0,-1/2,0".
    #[arg(long, global = true, allow_hyphen_values = true)]
    v: Option<String>,
    /// Orthogonal transform JSON file; repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    transform: Vec<PathBuf>,
    /// Coefficient polynomial for lemma31 / lemma33.
    #[arg(long, global = true)]
    f: Option<String>,
    /// Holomorphic factors for k3.
    #[arg(long, global = true)]
    f1: Option<String>,
    #[arg(long, global = true)]
    f2: Option<String>,
    #[arg(long, global = true)]
    json: bool,
    /// Exit 3 when a scenario reports any mismatch.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Default,
    Literal,
}

impl Convention {
    fn star(self) -> StarConvention {
        match self {
            Convention::Default => StarConvention::DEFAULT,
            Convention::Literal => StarConvention::LITERAL,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hodge star.
    Star { expr: String },
    /// Exterior derivative.
    D { expr: String },
    /// Holomorphic Dolbeault operator.
    Del { expr: String },
    /// Antiholomorphic Dolbeault operator.
    Delbar { expr: String },
    /// Codifferential.
    Delta { expr: String },
    /// Laplacian d delta + delta d.
    Laplacian { expr: String },
    /// Wedge product of two forms.
    Wedge { left: String, right: String },
    /// Pointwise inner product of two forms of one bidegree.
    Inner { left: String, right: String },
    /// d = 0 and delta = 0 on the flat model.
    Harmonic { expr: String },
    /// Pr+ - Pr- along --v, or symbolically in c1..cn.
    Obstruction { expr: String },
    /// Star compared with the real-coordinate oracle.
    OracleStar { expr: String },
    /// Built-in lemma checks.
    Scenario {
        #[arg(value_parser = clap::value_parser!(ScenarioIdArg))]
        id: ScenarioIdArg,
    },
}

#[derive(Clone, Copy)]
struct ScenarioIdArg(ScenarioId);

impl std::str::FromStr for ScenarioIdArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(ScenarioIdArg)
    }
}

enum Failure {
    Invalid(Error),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<String, Failure>;

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    fn n(&self) -> Result<usize, Failure> {
        match (self.g.n, &self.g.metric) {
            (Some(n), _) => Ok(n),
            (None, Some(_)) => Ok(self.metric(None)?.n()),
            (None, None) => Err(Failure::Usage("--n is required".into())),
        }
    }

    fn metric(&self, n: Option<usize>) -> Result<HermitianMetric, Failure> {
        let m = match &self.g.metric {
            Some(path) => load_metric(path)?,
            None => HermitianMetric::identity(n.unwrap_or(1)),
        };
        if let Some(n) = n {
            if m.n() != n {
                return Err(Error::DimensionMismatch {
                    left: m.n(),
                    right: n,
                }
                .into());
            }
        }
        Ok(m)
    }

    fn form(&self, src: &str) -> Result<Form, Failure> {
        Ok(parse_form(src, self.n()?)?)
    }

    fn conv(&self) -> StarConvention {
        self.g.convention.unwrap_or(Convention::Default).star()
    }

    fn emit(&self, command: &str, result: String) -> String {
        if self.g.json {
            let v = json!({ "command": command, "convention": self.conv().label(), "result": result });
            serde_json::to_string_pretty(&v).expect("json")
        } else {
            result
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx { g: &cli.global };
    let conv = ctx.conv();
    match &cli.command {
        Command::Star { expr } => {
            let a = ctx.form(expr)?;
            let m = ctx.metric(Some(a.ambient_n()))?;
            Ok(ctx.emit("star", hodge_star(&a, &m, conv)?.to_string()))
        }
        Command::D { expr } => Ok(ctx.emit("d", exterior_d(&ctx.form(expr)?).to_string())),
        Command::Del { expr } => Ok(ctx.emit("del", dolbeault_del(&ctx.form(expr)?).to_string())),
        Command::Delbar { expr } => Ok(ctx.emit("delbar", dolbeault_delbar(&ctx.form(expr)?).to_string())),
        Command::Delta { expr } => {
            let a = ctx.form(expr)?;
            let m = ctx.metric(Some(a.ambient_n()))?;
            Ok(ctx.emit("delta", codifferential(&a, &m, conv)?.to_string()))
        }
        Command::Laplacian { expr } => {
            let a = ctx.form(expr)?;
            let m = ctx.metric(Some(a.ambient_n()))?;
            Ok(ctx.emit("laplacian", laplacian(&a, &m, conv)?.to_string()))
        }
        Command::Wedge { left, right } => {
            let w = ctx.form(left)?.wedge(&ctx.form(right)?)?;
            Ok(ctx.emit("wedge", w.to_string()))
        }
        Command::Inner { left, right } => {
            let (a, b) = (ctx.form(left)?, ctx.form(right)?);
            let m = ctx.metric(Some(a.ambient_n()))?;
            Ok(ctx.emit("inner", m.pointwise_inner(&a, &b)?.to_string()))
        }
        Command::Harmonic { expr } => {
            let a = ctx.form(expr)?;
            let m = ctx.metric(Some(a.ambient_n()))?;
            let s = harmonic_check(&a, &m, conv)?.summary();
            if ctx.g.json {
                return Ok(serde_json::to_string_pretty(&s).expect("json"));
            }
            Ok(format!(
                "d=0: {}\ndelta=0: {}\nharmonic: {}\nd: {}\ndelta: {}\nnote: {}",
                s.d_vanishes, s.delta_vanishes, s.harmonic, s.d_residual, s.delta_residual, s.note
            ))
        }
        Command::Obstruction { expr } => obstruction_cmd(&ctx, expr),
        Command::OracleStar { expr } => {
            let a = ctx.form(expr)?;
            if ctx.g.metric.is_some() {
                return Err(Failure::Usage("oracle-star uses the identity metric only".into()));
            }
            let r = oracle_compare(&a, conv)?;
            if ctx.g.json {
                let v = json!({
                    "convention": conv.label(),
                    "engine": r.engine.to_string(),
                    "oracle": r.oracle.to_string(),
                    "proportional": r.proportional(),
                    "ratios": r.ratios,
                });
                return Ok(serde_json::to_string_pretty(&v).expect("json"));
            }
            let mut out = format!("engine: {}\noracle: {}", r.engine, r.oracle);
            for b in &r.ratios {
                let ratio = match (&b.ratio, b.proportional) {
                    (Some(v), _) => v.to_string(),
                    (None, true) => "both zero".into(),
                    (None, false) => "not proportional".into(),
                };
                out.push_str(&format!("\nratio ({},{}): {ratio}", b.p, b.q));
            }
            Ok(out)
        }
        Command::Scenario { id } => scenario_cmd(&ctx, id.0),
    }
}

fn obstruction_cmd(ctx: &Ctx<'_>, expr: &str) -> Outcome {
    let mut a = ctx.form(expr)?;
    let mut v = match &ctx.g.v {
        Some(src) => Some(Direction::parse(src)?),
        None => None,
    };
    for path in &ctx.g.transform {
        let m = load_transform(path)?;
        a = transform_form(&a, &m)?;
        if let Some(d) = &v {
            v = Some(d.in_frame(&m)?);
        }
    }
    let result = match &v {
        Some(d) => obstruction(&a, d)?.to_string(),
        None => render_symbolic(&obstruction_symbolic(&a)),
    };
    Ok(ctx.emit("obstruction", result))
}

fn scenario_cmd(ctx: &Ctx<'_>, id: ScenarioId) -> Outcome {
    let poly = |s: &Option<String>| -> Result<_, Failure> {
        s.as_deref()
            .map(|src| parse_polynomial(src, 4))
            .transpose()
            .map_err(Failure::from)
    };
    let mut opts = ScenarioOptions {
        f: poly(&ctx.g.f)?,
        f1: poly(&ctx.g.f1)?,
        f2: poly(&ctx.g.f2)?,
        only: ctx.g.convention.map(Convention::star),
        ..Default::default()
    };
    for path in &ctx.g.transform {
        opts.transforms.push(load_transform(path)?);
    }
    if let Some(src) = &ctx.g.v {
        opts.directions.push(Direction::parse(src)?);
    }
    let report = scenario::run(id, &opts)?;
    let out = if ctx.g.json {
        report.to_json()
    } else {
        report.to_text().trim_end().to_string()
    };
    let bad = report.mismatches();
    if ctx.g.strict && !bad.is_empty() {
        let ids: Vec<String> = bad
            .iter()
            .map(|c| format!("{} ({})", c.id, c.convention))
            .collect();
        return Err(Failure::Mismatch(format!(
            "{out}\nmismatched checks: {}",
            ids.join(", ")
        )));
    }
    Ok(out)
}

fn print_out(out: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print_out(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(out)) => {
            print_out(&out);
            ExitCode::from(3)
        }
    }
}
