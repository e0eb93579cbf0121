//! Command-line front end. Exit codes: 0 on success, 1 on a negative
//! mathematical answer, 2 on usage or parse errors.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::realize::{self, SeifertData};
use crate::signature::{assess, format_rational, rational_parts, Admissibility, BaseSurface, OrbifoldSignature};
use crate::verify::{self, DEFAULT_COSET_BOUND};

pub const COSET_BOUND_VAR: &str = "ORBISEIF_COSET_BOUND";

#[derive(Debug, Parser)]
#[command(name = "orbiseif", version, about = "Seifert fibred bases of knot manifolds")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a signature and print its canonical form
    Parse { signature: String },
    /// Admissibility, Euler characteristic and classification
    Check { signature: String },
    /// Construct and certify Seifert exponent data
    Realize { signature: String },
    /// Certify user-supplied exponent data
    Verify {
        signature: String,
        /// Exponent object, e.g. '{"a":"2","b":"1","c":"-7"}'
        #[arg(long)]
        exponents: String,
    },
    /// Orbifold Euler characteristic
    Euler { signature: String },
    /// JSON-lines atlas of all signatures within the bounds
    Enumerate {
        #[arg(long)]
        base: Option<BaseSurface>,
        #[arg(long)]
        max_order: u64,
        #[arg(long)]
        max_points: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `argv` (including the program name), reading the
/// coset bound from the environment.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let bound = std::env::var(COSET_BOUND_VAR).ok();
    run_with_bound_var(argv, bound.as_deref(), out, err)
}

/// As [`run`], with the coset-bound variable passed explicitly.
pub fn run_with_bound_var<I, T>(argv: I, bound_var: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = coset_bound(bound_var).and_then(|bound| dispatch(&cli, bound, out));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "orbiseif: {}", f.message);
            f.code
        }
    }
}

fn coset_bound(var: Option<&str>) -> Result<usize, Failure> {
    match var {
        None => Ok(DEFAULT_COSET_BOUND),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(usage(format!("{COSET_BOUND_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

fn parse_sig(text: &str) -> Result<OrbifoldSignature, Failure> {
    text.parse().map_err(|e| usage(format!("cannot parse signature {text:?}: {e}")))
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("write failed: {e}") }
}

fn emit(out: &mut dyn Write, json: bool, value: &Value, human: &str) -> Result<(), Failure> {
    if json {
        writeln!(out, "{value}").map_err(io)
    } else {
        writeln!(out, "{human}").map_err(io)
    }
}

fn chi_json(sig: &OrbifoldSignature) -> Value {
    let (num, den) = rational_parts(&sig.euler_characteristic());
    json!({"num": num, "den": den})
}

fn dispatch(cli: &Cli, bound: usize, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Parse { signature } => {
            let sig = parse_sig(signature)?;
            let strs = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>();
            let value = json!({
                "sig": sig.to_string(),
                "canonical": sig.sorted().to_string(),
                "base": sig.base().tag(),
                "cones": strs(sig.cone_orders()),
                "corners": strs(sig.reflector_orders()),
            });
            emit(out, cli.json, &value, &sig.to_string())?;
            Ok(0)
        }
        Command::Euler { signature } => {
            let sig = parse_sig(signature)?;
            let chi = sig.euler_characteristic();
            let value = json!({"sig": sig.to_string(), "chi": chi_json(&sig), "value": format_rational(&chi)});
            emit(out, cli.json, &value, &format_rational(&chi))?;
            Ok(0)
        }
        Command::Check { signature } => {
            let sig = parse_sig(signature)?;
            let a = assess(&sig, bound);
            let chi = format_rational(&sig.euler_characteristic());
            let (admissible, case, reason) = match a.admissibility {
                Admissibility::Accept(c) => (true, Some(c.number().to_string()), None),
                Admissibility::Reject(r) => (false, None, Some(r.code())),
            };
            let value = json!({
                "sig": sig.to_string(),
                "admissible": admissible,
                "case": case,
                "reason": reason,
                "chi": chi,
                "class": a.classification.tag(),
                "detail": a.classification.detail(),
            });
            let head = match (&case, reason) {
                (Some(c), _) => format!("{sig}: admissible (case {c}), chi = {chi}"),
                (None, Some(r)) => format!("{sig}: not admissible ({r}), chi = {chi}"),
                (None, None) => unreachable!(),
            };
            let human = format!("{head}\nclass: {} ({})", a.classification.tag(), a.classification.detail());
            emit(out, cli.json, &value, &human)?;
            Ok(if admissible { 0 } else { 1 })
        }
        Command::Realize { signature } => {
            let sig = parse_sig(signature)?;
            match realize::realize_with_bound(&sig, bound) {
                Ok(r) => {
                    let value = flatten_exponents(r.to_json());
                    let human = format!("{}\nwitness: {}", r.data, r.certificate.witness);
                    emit(out, cli.json, &value, &human)?;
                    Ok(0)
                }
                Err(e) => {
                    let value = json!({
                        "sig": sig.to_string(),
                        "realizable": false,
                        "reason": format!("not realizable by the constructive method: {e}"),
                    });
                    emit(out, cli.json, &value, &format!("{sig}: not realizable by the constructive method: {e}"))?;
                    Ok(1)
                }
            }
        }
        Command::Verify { signature, exponents } => {
            let sig = parse_sig(signature)?;
            let raw: Value =
                serde_json::from_str(exponents).map_err(|e| usage(format!("--exponents is not valid JSON: {e}")))?;
            let data = SeifertData::from_json(&sig, &raw).map_err(|e| usage(format!("bad exponent data: {e}")))?;
            let cert = verify::certify_weight(&data, bound);
            let mut value = cert.to_json();
            let obj = value.as_object_mut().expect("object");
            obj.insert("sig".into(), Value::String(sig.to_string()));
            obj.insert("verdict".into(), Value::String(cert.verdict().into()));
            let human = format!(
                "{data}\ntorsion free: {}\nH1 = Z: {}\nwitness {}: abelian order {}, cosets {}\nverdict: {}",
                cert.torsion_free,
                cert.h1_infinite_cyclic,
                cert.witness,
                cert.collapsed_abelian_order,
                cert.coset_result,
                cert.verdict()
            );
            emit(out, cli.json, &value, &human)?;
            Ok(if cert.certified() { 0 } else { 1 })
        }
        Command::Enumerate { base, max_order, max_points } => {
            if *max_order < 2 {
                return Err(usage("--max-order must be at least 2"));
            }
            if *base == Some(BaseSurface::Sphere) && *max_points < 3 {
                return Err(usage("--max-points must be at least 3 for sphere bases"));
            }
            crate::enumerate::enumerate(*base, *max_order, *max_points, bound, |row| {
                if cli.json {
                    writeln!(out, "{}", row.to_json()).map_err(io)
                } else {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}",
                        row.signature,
                        format_rational(&row.signature.euler_characteristic()),
                        row.classification.tag(),
                        row.classification.detail()
                    )
                    .map_err(io)
                }
            })?;
            Ok(0)
        }
    }
}

/// Lifts the exponent fields to the top level next to the family name.
fn flatten_exponents(mut v: Value) -> Value {
    let obj = v.as_object_mut().expect("object");
    if let Some(Value::Object(exps)) = obj.get("exponents").cloned() {
        let mut flat = Map::new();
        for (k, x) in exps {
            flat.insert(k, x);
        }
        for (k, x) in std::mem::take(obj) {
            flat.entry(k).or_insert(x);
        }
        *obj = flat;
    }
    v
}
