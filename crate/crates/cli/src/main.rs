//! `cycbent`: verify, sweep, convert and compare cyclotomic bent functions.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cycbent::polyform::{add_to_poly, kasami0_closed_form, mult_to_poly, poly_to_cyclotomic};
use cycbent::search::{kloosterman_zeros, DEFAULT_CAP};
use cycbent::{
    kloosterman_table, make_field, run_search, BooleanFunction, Construction, ConstructionId, CycSpec, Elem, FieldSpec,
    KasamiVariant, SearchMode, SearchOptions, TracePolynomial,
};
use serde_json::{json, Value};

use cycbent::params::{self, Params};
use cycbent::MultCycSpec;

#[derive(Parser)]
#[command(name = "cycbent", version, about = "Bent functions from cyclotomic mappings over GF(2^n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Field override, `gf2:e=N[,mod=0x..]`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Cross-check with brute-force Walsh transforms.
    #[arg(long, global = true)]
    oracle: bool,
    /// Search: brute-force K random passers and K random failers.
    #[arg(long, global = true, value_name = "K", default_value_t = 0)]
    oracle_sample: usize,
    /// Largest search space or polynomial expansion allowed.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Drop the timing block so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one construction and check its predicate.
    Verify {
        id: String,
        /// Parameters as key=value.
        params: Vec<String>,
    },
    /// Sweep the free parameters of a construction.
    Search {
        id: String,
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "count")]
        mode: Mode,
        /// Seed for `--oracle-sample`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Switch between cyclotomic and polynomial forms.
    Convert {
        /// A spec file, or a construction ID followed by key=value parameters.
        input: Vec<String>,
        #[arg(long, value_enum)]
        direction: Option<Direction>,
        /// Also expand additive specs into a univariate polynomial.
        #[arg(long)]
        expand: bool,
    },
    /// Kloosterman sums over GF(2^m).
    Kloosterman {
        m: u32,
        #[arg(long)]
        zeros_only: bool,
    },
    /// EA-invariant records, one per input.
    Invariants {
        /// Spec files, or quoted `"<id> key=value ..."` strings.
        inputs: Vec<String>,
        /// Add pairwise verdicts.
        #[arg(long)]
        compare: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Count,
    List,
    VerifyAll,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Direction {
    Cyc2poly,
    Poly2cyc,
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Fail {
    Usage(String),
    Cap(String),
}

impl From<cycbent::Error> for Fail {
    fn from(e: cycbent::Error) -> Fail {
        match e {
            cycbent::Error::ExpansionCap(_) => Fail::Cap(e.to_string()),
            e => Fail::Usage(e.to_string()),
        }
    }
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Usage(_) => 1,
            Fail::Cap(_) => 3,
        }
    }
}

/// A finished command: the result record and whether every check passed.
struct Done {
    result: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let (name, outcome) = match &cli.cmd {
        Cmd::Verify { id, params } => ("verify", verify(&cli, id, params)),
        Cmd::Search { id, params, mode, seed } => ("search", search(&cli, id, params, *mode, *seed)),
        Cmd::Convert { input, direction, expand } => ("convert", convert(&cli, input, *direction, *expand)),
        Cmd::Kloosterman { m, zeros_only } => ("kloosterman", kloosterman(&cli, *m, *zeros_only)),
        Cmd::Invariants { inputs, compare } => ("invariants", invariants(&cli, inputs, *compare)),
    };
    match outcome {
        Ok(done) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            if cli.json {
                let mut doc = json!({ "schema": 1, "command": name, "result": done.result });
                if !cli.no_timing {
                    doc["timing"] = json!({ "wall_ms": (ms * 1e3).round() / 1e3 });
                }
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print!("{}", report::text(&done.result));
                if !cli.no_timing {
                    println!("wall time: {ms:.1} ms");
                }
            }
            if done.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification mismatch");
                ExitCode::from(2)
            }
        }
        Err(f) => {
            let (Fail::Usage(msg) | Fail::Cap(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn read(path: &str) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{path}: {e}")))
}

/// Like [`params::construction`], plus `mixed.wf spec=<file>`.
fn construction(cli: &Cli, id: ConstructionId, p: &Params) -> Result<Construction, Fail> {
    if id == ConstructionId::MixedWf {
        if let Some(path) = p.get("spec") {
            let spec = MultCycSpec::from_json(&read(path)?)?;
            p.finish()?;
            return Ok(Construction::Mixed(spec));
        }
    }
    Ok(params::construction(id, cli.field.as_ref(), p)?)
}

fn verify(cli: &Cli, id: &str, tokens: &[String]) -> Result<Done, Fail> {
    let id = params::parse_id(id)?;
    let p = Params::parse(tokens)?;
    let c = construction(cli, id, &p)?;
    let field = c.field().ctx().spec();
    let predicate = c.predicate();
    let mut result = json!({
        "construction": id.as_str(),
        "field": field.to_string(),
        "params": p.echo(),
        "predicate": predicate.as_ref().ok(),
    });
    if let Err(e) = &predicate {
        result["predicate_error"] = e.to_string().into();
    }
    let mut ok = true;
    if cli.oracle {
        let f = c.function();
        let spectrum = f.walsh();
        let bent = spectrum.is_bent();
        let walsh_match = walsh_agrees(&c, &spectrum);
        let dual_match = match (bent, c.dual()) {
            (true, Ok(d)) => Some(spectrum.dual().map(|t| t == d).unwrap_or(false)),
            _ => None,
        };
        ok = predicate.as_ref().map_or(true, |p| *p == bent) && walsh_match != Some(false) && dual_match != Some(false);
        let inv = f.ea_invariants();
        result["oracle"] = json!({
            "bent": bent,
            "walsh_match": walsh_match,
            "dual_match": dual_match,
            "degree": inv.degree,
            "walsh_histogram": histogram(&inv.walsh_histogram),
        });
        if bent {
            result["oracle"]["dual_hex"] = spectrum.dual().expect("bent").to_hex().into();
        }
        result["consistent"] = ok.into();
    }
    Ok(Done { result, ok })
}

/// `Some(true)` when the predicted Walsh value matches at every point,
/// `None` when the construction has no predictor for these parameters.
fn walsh_agrees(c: &Construction, spectrum: &cycbent::WalshSpectrum) -> Option<bool> {
    for b in c.field().ctx().elements() {
        match c.walsh_predicted(b) {
            Ok(w) if w != spectrum.at(b) => return Some(false),
            Ok(_) => {}
            Err(_) => return None,
        }
    }
    Some(true)
}

fn histogram(h: &std::collections::BTreeMap<u64, u64>) -> Value {
    Value::Object(h.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect())
}

fn search(cli: &Cli, id: &str, tokens: &[String], mode: Mode, seed: u64) -> Result<Done, Fail> {
    let id = params::parse_id(id)?;
    let p = Params::parse(tokens)?;
    let space = params::search_space(id, cli.field.as_ref(), &p)?;
    let size = space.size();
    if size > cli.cap {
        return Err(Fail::Cap(format!("search space has {size} candidates, cap is {}", cli.cap)));
    }
    let mode = match (mode, cli.oracle) {
        (_, true) | (Mode::VerifyAll, _) => SearchMode::VerifyAll,
        (Mode::List, _) => SearchMode::List,
        (Mode::Count, _) => SearchMode::Count,
    };
    let opts = SearchOptions { mode, oracle_sample: cli.oracle_sample, seed, cap: cli.cap };
    let out = run_search(&space, &opts)?;
    let records = |rs: &[cycbent::search::CandidateRecord]| -> Value {
        rs.iter()
            .map(|r| {
                let mut o = json!({ "index": r.index });
                for (k, v) in &r.params {
                    o[k] = v.clone().into();
                }
                o["predicate"] = r.predicate.into();
                if let Some(b) = r.oracle {
                    o["oracle"] = b.into();
                }
                o
            })
            .collect()
    };
    let mut result = json!({
        "construction": out.construction,
        "field": space.field.ctx().spec().to_string(),
        "fixed": p.echo(),
        "total": out.total,
        "predicate_pass": out.predicate_pass,
        "oracle_checked": out.oracle_checked,
        "oracle_pass": out.oracle_pass,
        "mismatch_count": out.mismatches.len(),
    });
    if id == ConstructionId::DillonMuR {
        let zeros = kloosterman_zeros(&space.field)?;
        let r = p.u64_or("r", 3)?;
        result["kloosterman_zeros"] = zeros.len().into();
        result["predicted_pass"] = ((r - 1) * (space.field.q() + 1) * zeros.len() as u64).into();
    }
    if !out.mismatches.is_empty() {
        result["mismatches"] = records(&out.mismatches);
    }
    if !out.records.is_empty() {
        result["records"] = records(&out.records);
    }
    Ok(Done { result, ok: out.mismatches.is_empty() })
}

/// A spec file or an inline construction, read as one of the three forms.
enum Input {
    Spec(CycSpec, Option<Construction>),
    Poly(TracePolynomial),
    /// `{"kind":"table","field":"gf2:e=..","hex":".."}`.
    Table(BooleanFunction),
}

fn load(cli: &Cli, tokens: &[String]) -> Result<Input, Fail> {
    let first = tokens.first().ok_or_else(|| Fail::Usage("missing input".into()))?;
    if let Ok(id) = first.parse::<ConstructionId>() {
        let p = Params::parse(&tokens[1..])?;
        let c = construction(cli, id, &p)?;
        let spec = match &c {
            Construction::Dillon(d) => CycSpec::Mult(d.build()),
            Construction::Niho(n) => CycSpec::Mult(n.build()),
            Construction::Kasami(k) => CycSpec::Add(k.build()),
            Construction::Mixed(s) => CycSpec::Mult(s.clone()),
        };
        return Ok(Input::Spec(spec, Some(c)));
    }
    if tokens.len() > 1 {
        return Err(Fail::Usage(format!("unexpected arguments after `{first}`")));
    }
    let text = read(first)?;
    let kind: Value = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{first}: {e}")))?;
    match kind.get("kind").and_then(Value::as_str) {
        Some("trace_poly") => Ok(Input::Poly(TracePolynomial::from_json(&text)?)),
        Some("table") => {
            let field = kind.get("field").and_then(Value::as_str).unwrap_or_default();
            let hex = kind.get("hex").and_then(Value::as_str).unwrap_or_default();
            let ctx = cycbent::FieldCtx::new(field.parse()?)?;
            Ok(Input::Table(BooleanFunction::from_hex(&ctx, hex)?))
        }
        _ => Ok(Input::Spec(CycSpec::from_json(&text)?, None)),
    }
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).expect("library emits valid JSON")
}

fn convert(cli: &Cli, tokens: &[String], direction: Option<Direction>, expand: bool) -> Result<Done, Fail> {
    let input = load(cli, tokens)?;
    let want = |d: Direction| match direction {
        Some(x) if x != d => Err(Fail::Usage("input is already in the requested form".into())),
        _ => Ok(()),
    };
    let mut result;
    let mut ok;
    match input {
        Input::Table(_) => return Err(Fail::Usage("a truth table has no cyclotomic or polynomial form".into())),
        Input::Poly(p) => {
            want(Direction::Poly2cyc)?;
            let ctx = p.materialize().ctx().clone();
            let e = ctx.degree();
            if e % 2 == 1 {
                return Err(Fail::Usage(format!("degree {e} is odd")));
            }
            let qf = params::quad_field(Some(&ctx.spec()), Some(e / 2))?;
            let spec = poly_to_cyclotomic(&qf, &p)?;
            ok = spec.materialize() == p.materialize();
            result = json!({ "direction": "poly2cyc", "spec": json_of(&spec.to_json()), "equality": ok });
        }
        Input::Spec(CycSpec::Mult(spec), _) => {
            want(Direction::Cyc2poly)?;
            let poly = mult_to_poly(&spec)?;
            let f = spec.materialize();
            ok = f == poly.trace_form().materialize();
            result = json!({
                "direction": "cyc2poly",
                "polynomial": json_of(&poly.to_json()),
                "form": "Tr(P(x))",
                "terms": poly.len(),
                "equality": ok,
            });
        }
        Input::Spec(CycSpec::Add(spec), c) => {
            want(Direction::Cyc2poly)?;
            let ctx = spec.field.ctx().clone();
            let form = add_to_poly(&spec);
            let f = spec.materialize();
            ok = form.materialize() == f;
            result = json!({
                "direction": "cyc2poly",
                "expression": form.expr.display(&ctx).to_string(),
                "equality": ok,
            });
            if let Some(Construction::Kasami(k)) = &c {
                if let KasamiVariant::ZeroBranch { c } = k.variant {
                    if k.xi == k.field.xi() {
                        let closed = kasami0_closed_form(&k.field, c);
                        let eq = BooleanFunction::from_closure(&ctx, |x| closed.eval(&ctx, x) == Elem::ONE) == f;
                        ok &= eq;
                        result["closed_form"] = closed.display(&ctx).to_string().into();
                        result["closed_form_equality"] = eq.into();
                    }
                }
            }
            if expand {
                let poly = form.expand(cli.cap as usize)?;
                let eq = BooleanFunction::from_closure(&ctx, |x| poly.eval(x) == Elem::ONE) == f;
                ok &= eq;
                result["polynomial"] = json_of(&poly.to_json());
                result["form"] = "P(x)".into();
                result["expanded_equality"] = eq.into();
            }
        }
    }
    Ok(Done { result, ok })
}

fn kloosterman(cli: &Cli, m: u32, zeros_only: bool) -> Result<Done, Fail> {
    if !(1..=16).contains(&m) {
        return Err(Fail::Usage(format!("m = {m} out of range 1..=16")));
    }
    let ctx = match cli.field {
        Some(f) if f.degree != m => return Err(Fail::Usage(format!("--field has degree {} but m={m}", f.degree))),
        Some(f) => cycbent::FieldCtx::new(f)?,
        None => make_field(m, None)?,
    };
    let table = kloosterman_table(&ctx);
    let rows = ctx.elements().map(|a| (a, table[a.0 as usize]));
    let result = if zeros_only {
        let zeros: Vec<Value> =
            rows.filter(|&(a, k)| k == 0 && a != Elem::ZERO).map(|(a, _)| ctx.format_elem(a).into()).collect();
        json!({ "m": m, "field": ctx.spec().to_string(), "count": zeros.len(), "zeros": zeros })
    } else {
        let values: Vec<Value> = rows.map(|(a, k)| json!({ "a": ctx.format_elem(a), "k": k })).collect();
        json!({ "m": m, "field": ctx.spec().to_string(), "values": values })
    };
    Ok(Done { result, ok: true })
}

fn invariants(cli: &Cli, inputs: &[String], compare: bool) -> Result<Done, Fail> {
    if inputs.is_empty() {
        return Err(Fail::Usage("no inputs".into()));
    }
    let mut field: Option<FieldSpec> = None;
    let mut invs = Vec::new();
    let mut records = Vec::new();
    for raw in inputs {
        let tokens: Vec<String> = raw.split_whitespace().map(str::to_string).collect();
        let f = match load(cli, &tokens)? {
            Input::Spec(s, _) => s.materialize(),
            Input::Poly(p) => p.materialize(),
            Input::Table(f) => f,
        };
        let spec = f.ctx().spec();
        match field {
            Some(prev) if prev != spec => {
                return Err(Fail::Usage(format!("inputs over different fields: {prev} and {spec}")));
            }
            _ => field = Some(spec),
        }
        let inv = f.ea_invariants();
        records.push(json!({
            "input": raw,
            "bent": f.is_bent(),
            "degree": inv.degree,
            "walsh_histogram": histogram(&inv.walsh_histogram),
            "autocorrelation_histogram": histogram(&inv.autocorrelation_histogram),
        }));
        invs.push(inv);
    }
    let mut result = json!({ "field": field.expect("nonempty").to_string(), "functions": records });
    if compare {
        let mut pairs = Vec::new();
        for i in 0..invs.len() {
            for j in i + 1..invs.len() {
                pairs.push(json!({ "i": i, "j": j, "verdict": invs[i].compare(&invs[j]).as_str() }));
            }
        }
        result["comparisons"] = pairs.into();
    }
    Ok(Done { result, ok: true })
}
