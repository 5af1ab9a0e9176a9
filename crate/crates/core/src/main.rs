use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use exel_sgpd::action::{
    exhaustive_family, lemma1_characterize, partial_action_consequences, partial_to_sg, sg_to_partial,
    validate_partial_action, validate_sg_action, ActionSpec, GroupoidPartialAction,
};
use exel_sgpd::algebra::AlgPartialAction;
use exel_sgpd::certify::{certify_inverse, check_epsilon_identities, check_order_lemma};
use exel_sgpd::crossed::{iso_roundtrip, CrossedError, CrossedProduct, SamplingPlan};
use exel_sgpd::groupoid::{FiniteGroupoid, GroupoidError, GroupoidSpec};
use exel_sgpd::oracle::{compare_with_normalizer, congruence_classes};
use exel_sgpd::projection::build_cp_star_algebra;
use exel_sgpd::report::Report;
use exel_sgpd::representation::{check_partial_rep, regular_partial_rep, triangle, PartialRep, RepError, RepSpec, TAU};
use exel_sgpd::semigroupoid::ExelSemigroupoid;

#[derive(Parser)]
#[command(name = "exel-sgpd", version, about = "Checks for Exel semigroupoids of finite groupoids")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms of a spec.
    Validate { groupoid: PathBuf },
    /// List the standard forms of S(G).
    EnumerateSg(EnumerateArgs),
    /// Check a partial action, or every map into I(X) with --family.
    Actions(ActionsArgs),
    /// Crossed product checks for a function-algebra context or C_p*(G).
    Crossed(CrossedArgs),
    /// Representation checks.
    Reps(RepsArgs),
    /// Multiplication table of S(G).
    ExportTable(TableArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    groupoid: PathBuf,
    /// Also compare with the congruence oracle on words up to this length.
    #[arg(long)]
    oracle_maxlen: Option<usize>,
    /// Refuse groupoids with more elements.
    #[arg(long, default_value_t = 8)]
    max_elements: usize,
    /// Run the inverse-semigroupoid, ε-identity and order certifications.
    #[arg(long)]
    certify: bool,
}

#[derive(Args)]
struct ActionsArgs {
    groupoid: PathBuf,
    /// Action spec to validate.
    #[arg(long, required_unless_present = "family", conflicts_with = "family")]
    action: Option<PathBuf>,
    /// Run G → S(G) → G and S(G) → G → S(G) round trips.
    #[arg(long)]
    roundtrip: bool,
    /// Enumerate every map into I(X) with |X| = N instead.
    #[arg(long, value_name = "N")]
    family: Option<usize>,
}

#[derive(Args)]
struct CrossedArgs {
    groupoid: PathBuf,
    /// Action spec; the algebra is functions on its set.
    #[arg(long, required_unless_present = "projection", conflicts_with = "projection")]
    action: Option<PathBuf>,
    /// Use C_p*(G), the projection algebra with the translation action.
    #[arg(long)]
    projection: bool,
    /// Random associativity trials instead of all basis triples.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RepsArgs {
    groupoid: PathBuf,
    /// Representation spec.
    #[arg(long, required_unless_present = "action", conflicts_with = "action")]
    rep: Option<PathBuf>,
    /// Use the regular model of this partial action.
    #[arg(long)]
    action: Option<PathBuf>,
    /// Run the three-way correspondence and its round trips.
    #[arg(long)]
    triangle: bool,
    #[arg(long, default_value_t = TAU)]
    tau: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    groupoid: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long, default_value_t = 8)]
    max_elements: usize,
}

/// Outcome of a subcommand: the rendered output and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn json(value: Value, ok: bool) -> Self {
        let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
        text.push('\n');
        Outcome { text, ok }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_groupoid(path: &Path) -> Result<FiniteGroupoid> {
    let spec: GroupoidSpec = read_json(path)?;
    FiniteGroupoid::build(&spec).with_context(|| format!("building {}", path.display()))
}

fn load_action(g: &FiniteGroupoid, path: &Path) -> Result<GroupoidPartialAction> {
    let spec: ActionSpec = read_json(path)?;
    GroupoidPartialAction::from_spec(g, &spec).with_context(|| format!("reading action {}", path.display()))
}

fn check_budget(g: &FiniteGroupoid, max: usize) -> Result<()> {
    if g.len() > max {
        bail!("budget exceeded: |G| = {} > {max} (raise --max-elements)", g.len());
    }
    Ok(())
}

fn report_json(reports: &[&Report]) -> Value {
    json!(reports)
}

fn all_ok(reports: &[&Report]) -> bool {
    reports.iter().all(|r| r.is_ok())
}

fn validate(path: &Path) -> Result<Outcome> {
    let spec: GroupoidSpec = read_json(path)?;
    match FiniteGroupoid::build(&spec) {
        Ok(g) => {
            let units = g.labels_of(g.units());
            Ok(Outcome::json(json!({"passed": true, "elements": g.len(), "units": units}), true))
        }
        Err(GroupoidError::AxiomViolation(w)) => Ok(Outcome::json(json!({"passed": false, "violation": w}), false)),
        Err(e) => Err(e.into()),
    }
}

fn enumerate_sg(args: &EnumerateArgs) -> Result<Outcome> {
    let g = load_groupoid(&args.groupoid)?;
    check_budget(&g, args.max_elements)?;
    let sg = ExelSemigroupoid::new(g);
    let elems = sg.enumerate();
    let rows: Vec<Value> = elems
        .iter()
        .map(|a| json!({"form": sg.display(a).to_string(), "eps": sg.repr(a).eps, "anchor": sg.repr(a).anchor}))
        .collect();
    let mut out = json!({"size": elems.len(), "elements": rows});
    let mut ok = true;
    if let Some(n) = args.oracle_maxlen {
        let part = congruence_classes(sg.groupoid(), n).map_err(|e| anyhow!("oracle: {e}"))?;
        let agreement = compare_with_normalizer(&sg, &part);
        ok &= agreement.agrees;
        out["oracle"] = json!(agreement);
    }
    if args.certify {
        let reports = [certify_inverse(&sg), check_epsilon_identities(&sg), check_order_lemma(&sg)];
        let refs: Vec<&Report> = reports.iter().collect();
        ok &= all_ok(&refs);
        out["certification"] = report_json(&refs);
    }
    Ok(Outcome::json(out, ok))
}

fn actions(args: &ActionsArgs) -> Result<Outcome> {
    let g = load_groupoid(&args.groupoid)?;
    if let Some(n) = args.family {
        let family = exhaustive_family(&g, n).map_err(|e| anyhow!("{e}"))?;
        let ok = family.report.is_ok();
        return Ok(Outcome::json(json!(family), ok));
    }
    let path = args.action.as_deref().expect("clap requires --action without --family");
    let a = load_action(&g, path)?;
    let mut reports = vec![validate_partial_action(&a)];
    if reports[0].is_ok() {
        reports.push(partial_action_consequences(&a));
    }
    let lemma = lemma1_characterize(&g, a.points(), a.maps())?;
    reports.push(lemma.report);
    if args.roundtrip && reports[0].is_ok() {
        let mut rt = Report::new("round trip");
        let b = partial_to_sg(&a)?;
        let sg_report = validate_sg_action(&b);
        rt.record("induced S(G)-action valid", sg_report.is_ok(), || sg_report.failing().join(", "));
        let back = sg_to_partial(&b);
        rt.record("α → β → α", back.as_ref().ok() == Some(&a), || format!("{:?}", back.as_ref().err()));
        if let Ok(back) = back {
            let b2 = partial_to_sg(&back)?;
            rt.record("β → α → β", b2 == b, || "β".into());
        }
        reports.push(sg_report);
        reports.push(rt);
    }
    let refs: Vec<&Report> = reports.iter().collect();
    Ok(Outcome::json(report_json(&refs), all_ok(&refs)))
}

fn crossed(args: &CrossedArgs) -> Result<Outcome> {
    let g = load_groupoid(&args.groupoid)?;
    let plan = match args.trials {
        Some(trials) => SamplingPlan::Random { trials, seed: args.seed },
        None => SamplingPlan::Exhaustive,
    };
    if args.projection {
        let c = build_cp_star_algebra(&g);
        let mut all = c.check_all();
        if let SamplingPlan::Random { .. } = plan {
            all.absorb("sampled ", c.crossed_product().check_associativity(plan));
        }
        let unit = c.find_unit();
        all.record("unit = Σ_e P_{e}δ_e", unit.as_ref() == Some(&c.expected_unit()), || "unit".into());
        let iso = iso_roundtrip(c.crossed_product().context())?;
        let ok = all.is_ok() && iso.report.is_ok();
        let out = json!({
            "dim": c.dim(),
            "independent_dim": c.independent_dim(),
            "basis": (0..c.dim()).map(|i| c.basis_label(i)).collect::<Vec<_>>(),
            "report": all,
            "isomorphism": iso,
        });
        return Ok(Outcome::json(out, ok));
    }
    let path = args.action.as_deref().expect("clap requires --action without --projection");
    let a = load_action(&g, path)?;
    let ctx = AlgPartialAction::functions(&a);
    let context = ctx.validate();
    if !context.is_ok() {
        return Ok(Outcome::json(json!({"context": context}), false));
    }
    let assoc = CrossedProduct::new(ctx.clone()).check_associativity(plan);
    let iso = match iso_roundtrip(&ctx) {
        Ok(iso) => iso,
        Err(CrossedError::Action(e)) => bail!("{e}"),
        Err(e) => return Err(e.into()),
    };
    let ok = context.is_ok() && assoc.is_ok() && iso.report.is_ok();
    Ok(Outcome::json(json!({"context": context, "associativity": assoc, "isomorphism": iso}), ok))
}

fn reps(args: &RepsArgs) -> Result<Outcome> {
    let g = load_groupoid(&args.groupoid)?;
    let p = match (&args.rep, &args.action) {
        (Some(path), _) => {
            let spec: RepSpec = read_json(path)?;
            PartialRep::from_spec(&g, &spec)?
        }
        (None, Some(path)) => {
            let a = load_action(&g, path)?;
            match regular_partial_rep(&a) {
                Ok(p) => p,
                Err(RepError::InvalidInput(w)) => {
                    return Ok(Outcome::json(json!({"passed": false, "action": w}), false));
                }
                Err(e) => return Err(e.into()),
            }
        }
        (None, None) => unreachable!("clap requires --rep or --action"),
    };
    let check = check_partial_rep(&p, args.tau);
    let mut out = json!({"dim": p.dim(), "partial_representation": check});
    let mut ok = check.is_ok();
    if args.triangle {
        match triangle(&p, args.tau) {
            Ok(rep) => {
                ok &= rep.is_ok();
                out["triangle"] = json!(rep);
            }
            Err(e @ (RepError::InvalidInput(_) | RepError::Correspondence(_))) => {
                ok = false;
                out["triangle"] = json!({"passed": false, "error": e.to_string()});
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::json(out, ok))
}

fn export_table(args: &TableArgs) -> Result<Outcome> {
    let g = load_groupoid(&args.groupoid)?;
    check_budget(&g, args.max_elements)?;
    let sg = ExelSemigroupoid::new(g);
    let elems = sg.enumerate();
    let names: Vec<String> = elems.iter().map(|a| sg.display(a).to_string()).collect();
    let cell =
        |a, b| -> Result<String> { Ok(sg.multiply(a, b)?.map(|ab| sg.display(&ab).to_string()).unwrap_or_default()) };
    match args.format {
        TableFormat::Csv => {
            let mut text = String::new();
            let header: Vec<String> =
                std::iter::once(String::new()).chain(names.iter().map(|n| csv_field(n))).collect();
            text.push_str(&header.join(","));
            text.push('\n');
            for (a, name) in elems.iter().zip(&names) {
                let mut row = vec![csv_field(name)];
                for b in &elems {
                    row.push(csv_field(&cell(a, b)?));
                }
                text.push_str(&row.join(","));
                text.push('\n');
            }
            Ok(Outcome { text, ok: true })
        }
        TableFormat::Json => {
            let mut rows = Vec::new();
            for a in &elems {
                let row: Vec<Value> = elems
                    .iter()
                    .map(|b| cell(a, b).map(|c| if c.is_empty() { Value::Null } else { Value::String(c) }))
                    .collect::<Result<_>>()?;
                rows.push(row);
            }
            Ok(Outcome::json(json!({"elements": names, "table": rows}), true))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("EXEL_SGPD_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("EXEL_SGPD_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    init_threads()?;
    match &cli.command {
        Command::Validate { groupoid } => validate(groupoid),
        Command::EnumerateSg(args) => enumerate_sg(args),
        Command::Actions(args) => actions(args),
        Command::Crossed(args) => crossed(args),
        Command::Reps(args) => reps(args),
        Command::ExportTable(args) => export_table(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(outcome.text.as_bytes()).context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
