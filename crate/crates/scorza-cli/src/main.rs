//! JSON-lines front end for the scorza toolkit.
//!
//! Every operation reads one JSON payload document per stdin line and
//! writes one report per line; `run` accepts full request objects with
//! embedded command/field/seed, and `verify` executes the seeded check
//! suites. Reports are byte-identical for identical (request, seed)
//! pairs; pass `--timing` to add wall-clock milliseconds.
//!
//! Exit status: 0 on success, 2 when a precondition or indeterminacy
//! error was signalled, 1 on malformed input.

use std::io::{BufRead, Write};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use scorza_core::codec;
use scorza_core::error::Error;
use scorza_core::jordan::LinForm;
use scorza_core::pencils;
use scorza_core::scalar::FieldSpec;
use scorza_core::scorza;
use scorza_core::spinor;
use scorza_core::verify;

#[derive(Parser)]
#[command(
    name = "scorza",
    about = "Exact-arithmetic toolkit for composition algebras, Jordan matrix algebras and flop geometry",
    version
)]
struct Cli {
    /// Coefficient field: Q or Fp:<p> (odd prime p)
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Master seed for every generic choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write each report to <dir>/report-<k>.json
    #[arg(long, global = true)]
    report_dir: Option<std::path::PathBuf>,

    /// Include wall-clock milliseconds in the reports
    #[arg(long, global = true, default_value_t = false)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read full request objects ({"command","field","seed","payload"}) from stdin
    Run,
    /// Run a named verification suite
    Verify {
        /// compalg | jordan | scorza | spinor | pencils | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Multiply two composition-algebra elements
    AlgMul,
    /// Rank-one matrix of a coordinate tuple
    Nu2,
    /// Determinant of a Hermitian matrix (n <= 3)
    Det3,
    /// Hessian-of-determinant functional sigma_A(B)
    Sigma,
    /// Tangent space to the rank-one cone at a point
    TangentCone,
    /// Tangency map on a tangent vector
    NuPlus,
    /// Tangency map on a cotangent vector
    NuMinus,
    /// First-kind flop at (x, f)
    FlopE61,
    /// Line subspaces (intersection, span, quotient ranks)
    LineSpaces,
    /// Tangent image along a line in the normal quotient
    TY,
    /// Maximal linear subspace attached to a null tangent direction
    FanoImage,
    /// Fiber of the dual tangency map through a cotangent vector
    BlowupFiber,
    /// Purity test for a spinor
    SpinPure,
    /// Fiber and entry-locus quadric of a non-pure spinor
    LFiber,
    /// Relative position of two spinor fibers
    Trichotomy,
    /// Entry-locus involution point map
    Psi,
    /// Product in the fiber composition algebra
    FiberProduct,
    /// Orbit label and dimension of a pencil of skew forms
    ClassifyPencil,
    /// Codiagonalize a pencil to the split normal forms
    Codiag,
    /// Common isotropic 3-space of a generic pencil
    USpace,
    /// Second-kind flop base map
    FlopE62,
}

impl Command {
    fn wire_name(&self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::Verify { .. } => "verify",
            Command::AlgMul => "alg-mul",
            Command::Nu2 => "nu2",
            Command::Det3 => "det3",
            Command::Sigma => "sigma",
            Command::TangentCone => "tangent-cone",
            Command::NuPlus => "nu-plus",
            Command::NuMinus => "nu-minus",
            Command::FlopE61 => "flop-e61",
            Command::LineSpaces => "line-spaces",
            Command::TY => "t-y",
            Command::FanoImage => "fano-image",
            Command::BlowupFiber => "blowup-fiber",
            Command::SpinPure => "spin-pure",
            Command::LFiber => "l-fiber",
            Command::Trichotomy => "trichotomy",
            Command::Psi => "psi",
            Command::FiberProduct => "fiber-product",
            Command::ClassifyPencil => "classify-pencil",
            Command::Codiag => "codiag",
            Command::USpace => "u-space",
            Command::FlopE62 => "flop-e62",
        }
    }
}

fn field_arg(payload: &Value, key: &str) -> Result<Value, Error> {
    payload
        .get(key)
        .cloned()
        .ok_or_else(|| Error::Parse(format!("payload needs {key:?}")))
}

fn linform_arg(field: FieldSpec, payload: &Value, key: &str) -> Result<LinForm, Error> {
    Ok(LinForm::from_rep(codec::herm_from_value(
        field,
        &field_arg(payload, key)?,
    )?))
}

/// Evaluates one operation; precondition and parse failures surface as
/// typed errors for the exit-status split.
fn dispatch(command: &str, field: FieldSpec, seed: u64, payload: &Value) -> Result<Value, Error> {
    match command {
        "alg-mul" => {
            let x = codec::alg_from_value(field, &field_arg(payload, "x")?)?;
            let y = codec::alg_from_value(field, &field_arg(payload, "y")?)?;
            Ok(json!({ "product": codec::alg_to_value(&scorza_core::compalg::alg_mul(&x, &y)?) }))
        }
        "nu2" => {
            let z = field_arg(payload, "z")?;
            let tuple: Vec<_> = z
                .as_array()
                .ok_or_else(|| Error::Parse("\"z\" must be an array of elements".into()))?
                .iter()
                .map(|v| codec::alg_from_value(field, v))
                .collect::<Result<_, _>>()?;
            Ok(json!({ "matrix": codec::herm_to_value(&scorza_core::jordan::nu2(&tuple)?) }))
        }
        "det3" => {
            let m = codec::herm_from_value(field, &field_arg(payload, "m")?)?;
            Ok(json!({ "det": codec::scalar_to_value(&scorza_core::jordan::det3(&m)?) }))
        }
        "sigma" => {
            let a = codec::herm_from_value(field, &field_arg(payload, "a_mat")?)?;
            let b = codec::herm_from_value(field, &field_arg(payload, "b_mat")?)?;
            let s = scorza_core::jordan::sigma(&a, &b)?;
            Ok(json!({ "rep": codec::herm_to_value(s.rep()) }))
        }
        "tangent-cone" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "point")?)?;
            let t = scorza::tangent_cone(&x)?;
            Ok(json!({ "dim": t.dim(), "basis": codec::subspace_to_value(&t) }))
        }
        "nu-plus" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "point")?)?;
            let t = codec::herm_from_value(field, &field_arg(payload, "t")?)?;
            let a_form = match payload.get("a_form") {
                Some(v) => LinForm::from_rep(codec::herm_from_value(field, v)?),
                None => x.space().identity_form(),
            };
            let (class, chart) = scorza::nu_plus(&x, &t, &a_form)?;
            Ok(json!({
                "class": codec::vec_to_value(&class),
                "chart": codec::chart_to_value(&chart),
            }))
        }
        "nu-minus" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "point")?)?;
            let f = scorza::CotangentRep::new(x.clone(), linform_arg(field, payload, "f")?)?;
            let h = scorza::nu_minus(&x, &f)?;
            Ok(json!({ "rep": codec::herm_to_value(h.rep()) }))
        }
        "flop-e61" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "point")?)?;
            let f = scorza::CotangentRep::new(x.clone(), linform_arg(field, payload, "f")?)?;
            let flop = scorza::flop_e61(&x, &f, seed)?;
            Ok(json!({
                "h": codec::herm_to_value(flop.h.rep()),
                "pivot": codec::herm_to_value(&flop.pivot),
                "mu": codec::mat_to_value(&flop.mu),
                "quotient_dim": flop.domain.dim(),
            }))
        }
        "line-spaces" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "x")?)?;
            let y = codec::cone_point_from_value(field, &field_arg(payload, "y")?)?;
            let ls = scorza::severi_line_spaces(&x, &y)?;
            Ok(json!({
                "line": codec::subspace_to_value(&ls.line),
                "intersection": codec::subspace_to_value(&ls.intersection),
                "span": codec::subspace_to_value(&ls.span),
                "ranks": [ls.rank_a, ls.rank_b, ls.rank_c],
            }))
        }
        "t-y" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "x")?)?;
            let y = codec::cone_point_from_value(field, &field_arg(payload, "y")?)?;
            let (img, chart) = scorza::t_y_space(&x, &y)?;
            Ok(json!({
                "dim": img.dim(),
                "basis": codec::subspace_to_value(&img),
                "chart": codec::chart_to_value(&chart),
            }))
        }
        "fano-image" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "x")?)?;
            let t = codec::herm_from_value(field, &field_arg(payload, "t")?)?;
            let side = match payload.get("side").and_then(Value::as_str) {
                Some("+") => spinor::Side::Plus,
                Some("-") => spinor::Side::Minus,
                _ => return Err(Error::Parse("\"side\" must be \"+\" or \"-\"".into())),
            };
            let aux = match payload.get("a_form") {
                Some(v) => Some(LinForm::from_rep(codec::herm_from_value(field, v)?)),
                None => None,
            };
            let img = scorza::fano_image(&x, &t, side, aux.as_ref())?;
            Ok(json!({ "dim": img.dim(), "basis": codec::subspace_to_value(&img) }))
        }
        "blowup-fiber" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "x")?)?;
            let f = scorza::CotangentRep::new(x.clone(), linform_arg(field, payload, "f")?)?;
            let (fiber, chart) = scorza::blowup_fiber(&x, &f)?;
            Ok(json!({
                "dim": fiber.dim(),
                "basis": codec::subspace_to_value(&fiber),
                "chart_dim": chart.dim(),
            }))
        }
        "spin-pure" => {
            let s = codec::spinor_from_value(field, &field_arg(payload, "s")?)?;
            Ok(json!({ "pure": spinor::is_pure(&s)? }))
        }
        "l-fiber" => {
            let s = codec::spinor_from_value(field, &field_arg(payload, "s")?)?;
            let (fiber, gram) = spinor::entry_quadric(&s)?;
            Ok(json!({
                "dim": fiber.dim(),
                "basis": codec::subspace_to_value(&fiber),
                "quadric": codec::mat_to_value(&gram),
            }))
        }
        "trichotomy" => {
            let s = codec::spinor_from_value(field, &field_arg(payload, "s")?)?;
            let t = codec::spinor_from_value(field, &field_arg(payload, "t")?)?;
            let (kind, dim) = spinor::trichotomy(&s, &t)?;
            Ok(json!({ "kind": kind.as_str(), "dim": dim }))
        }
        "psi" => {
            let s = codec::spinor_from_value(field, &field_arg(payload, "s")?)?;
            let t = codec::spinor_from_value(field, &field_arg(payload, "t")?)?;
            let x = codec::spinor_from_value(field, &field_arg(payload, "x")?)?;
            Ok(json!({ "image": codec::spinor_to_value(&spinor::psi_iso(&s, &t, &x)?) }))
        }
        "fiber-product" => {
            let s = codec::spinor_from_value(field, &field_arg(payload, "s")?)?;
            let t = codec::spinor_from_value(field, &field_arg(payload, "t")?)?;
            let u = codec::spinor_from_value(field, &field_arg(payload, "u")?)?;
            let v = codec::spinor_from_value(field, &field_arg(payload, "v")?)?;
            Ok(json!({
                "product": codec::spinor_to_value(&spinor::fiber_product(&s, &t, &u, &v)?)
            }))
        }
        "classify-pencil" => {
            let w1 = codec::twoform_from_value(field, &field_arg(payload, "omega1")?)?;
            let w2 = codec::twoform_from_value(field, &field_arg(payload, "omega2")?)?;
            let label = pencils::classify(&pencils::PencilMap::new(w1, w2)?);
            Ok(json!({ "label": label.label(), "dim": label.dim() }))
        }
        "codiag" => {
            let w1 = codec::twoform_from_value(field, &field_arg(payload, "omega1")?)?;
            let w2 = codec::twoform_from_value(field, &field_arg(payload, "omega2")?)?;
            Ok(json!({ "basis": codec::mat_to_value(&pencils::codiagonalize(&w1, &w2)?) }))
        }
        "u-space" => {
            let w1 = codec::twoform_from_value(field, &field_arg(payload, "omega1")?)?;
            let w2 = codec::twoform_from_value(field, &field_arg(payload, "omega2")?)?;
            let u = pencils::u_space(&pencils::PencilMap::new(w1, w2)?)?;
            Ok(json!({ "dim": u.dim(), "basis": codec::subspace_to_value(&u) }))
        }
        "flop-e62" => {
            let x = codec::cone_point_from_value(field, &field_arg(payload, "x")?)?;
            let y = codec::cone_point_from_value(field, &field_arg(payload, "y")?)?;
            let w1 = codec::twoform_from_value(field, &field_arg(payload, "phi1")?)?;
            let w2 = codec::twoform_from_value(field, &field_arg(payload, "phi2")?)?;
            let flop = pencils::flop_e62_base(&x, &y, &w1, &w2)?;
            Ok(json!({
                "base": codec::subspace_to_value(&flop.base),
                "cell": codec::subspace_to_value(&flop.cell),
                "codim": x.space().dim() - flop.base.dim(),
            }))
        }
        "verify" => {
            let suite = payload
                .get("suite")
                .and_then(Value::as_str)
                .unwrap_or("all");
            let checks = verify::run_suite(suite, seed)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            Ok(json!({
                "suite": suite,
                "total": checks.len(),
                "failed": failed,
                "checks": checks
                    .iter()
                    .map(|c| json!({
                        "name": c.name,
                        "pass": c.pass,
                        "witness": c.witness,
                    }))
                    .collect::<Vec<_>>(),
            }))
        }
        other => Err(Error::Parse(format!("unknown command {other:?}"))),
    }
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Outcome {
    Ok,
    Precondition,
    Malformed,
}

fn classify_error(e: &Error) -> Outcome {
    match e {
        Error::Precondition(_) | Error::Indeterminate(_) => Outcome::Precondition,
        _ => Outcome::Malformed,
    }
}

fn report(
    command: &str,
    field: &str,
    seed: u64,
    result: Result<Value, Error>,
    timing: Option<u128>,
) -> (Value, Outcome) {
    let mut doc = json!({
        "command": command,
        "field": field,
        "seed": seed,
    });
    let outcome = match result {
        Ok(outputs) => {
            doc["ok"] = Value::Bool(true);
            doc["outputs"] = outputs;
            Outcome::Ok
        }
        Err(e) => {
            doc["ok"] = Value::Bool(false);
            doc["error"] = Value::String(e.to_string());
            classify_error(&e)
        }
    };
    if let Some(ms) = timing {
        doc["elapsed_ms"] = json!(ms);
    }
    (doc, outcome)
}

fn merge_worst(worst: &mut Outcome, outcome: Outcome) {
    if outcome == Outcome::Malformed
        || (outcome == Outcome::Precondition && *worst == Outcome::Ok)
    {
        *worst = outcome;
    }
}

fn main() {
    let cli = Cli::parse();
    let mut worst = Outcome::Ok;
    let mut reports: Vec<Value> = Vec::new();
    let default_field = cli.field.clone();

    match &cli.command {
        Command::Verify { suite } => {
            let start = Instant::now();
            let result = default_field
                .parse::<FieldSpec>()
                .and_then(|_| dispatch("verify", FieldSpec::Rationals, cli.seed, &json!({ "suite": suite })));
            let failed_checks =
                matches!(&result, Ok(v) if v["failed"].as_u64().unwrap_or(0) > 0);
            let (doc, mut outcome) = report(
                "verify",
                &default_field,
                cli.seed,
                result,
                cli.timing.then(|| start.elapsed().as_millis()),
            );
            if failed_checks {
                outcome = Outcome::Precondition;
            }
            println!("{doc}");
            reports.push(doc);
            merge_worst(&mut worst, outcome);
        }
        command => {
            let stdin = std::io::stdin();
            for line in stdin.lock().lines() {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => {
                        let (doc, outcome) = report(
                            command.wire_name(),
                            &default_field,
                            cli.seed,
                            Err(Error::Parse(format!("stdin: {e}"))),
                            None,
                        );
                        println!("{doc}");
                        reports.push(doc);
                        merge_worst(&mut worst, outcome);
                        break;
                    }
                };
                if line.trim().is_empty() {
                    continue;
                }
                let start = Instant::now();
                let parsed: Result<Value, _> = serde_json::from_str(&line);
                let (cmd_name, field_str, seed, payload) = match (&command, parsed) {
                    (_, Err(e)) => {
                        let (doc, outcome) = report(
                            command.wire_name(),
                            &default_field,
                            cli.seed,
                            Err(Error::Parse(format!("bad JSON: {e}"))),
                            cli.timing.then(|| start.elapsed().as_millis()),
                        );
                        println!("{doc}");
                        reports.push(doc);
                        merge_worst(&mut worst, outcome);
                        continue;
                    }
                    (Command::Run, Ok(v)) => {
                        let cmd = v
                            .get("command")
                            .and_then(Value::as_str)
                            .unwrap_or("")
                            .to_string();
                        let field = v
                            .get("field")
                            .and_then(Value::as_str)
                            .unwrap_or(&default_field)
                            .to_string();
                        let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(cli.seed);
                        let payload = v.get("payload").cloned().unwrap_or(json!({}));
                        (cmd, field, seed, payload)
                    }
                    (_, Ok(v)) => (
                        command.wire_name().to_string(),
                        default_field.clone(),
                        cli.seed,
                        v,
                    ),
                };
                let result = field_str
                    .parse::<FieldSpec>()
                    .and_then(|f| dispatch(&cmd_name, f, seed, &payload));
                let failed_checks = matches!(&result, Ok(v) if v.get("failed").and_then(Value::as_u64).unwrap_or(0) > 0);
                let (doc, mut outcome) = report(
                    &cmd_name,
                    &field_str,
                    seed,
                    result,
                    cli.timing.then(|| start.elapsed().as_millis()),
                );
                if failed_checks {
                    outcome = Outcome::Precondition;
                }
                println!("{doc}");
                reports.push(doc);
                merge_worst(&mut worst, outcome);
            }
        }
    }

    if let Some(dir) = &cli.report_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("cannot create report directory: {e}");
            std::process::exit(1);
        }
        for (k, doc) in reports.iter().enumerate() {
            let path = dir.join(format!("report-{k:04}.json"));
            if let Err(e) =
                std::fs::File::create(&path).and_then(|mut f| writeln!(f, "{doc}"))
            {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(1);
            }
        }
    }

    std::process::exit(match worst {
        Outcome::Ok => 0,
        Outcome::Precondition => 2,
        Outcome::Malformed => 1,
    });
}
