//! The `regloc` command line.
//!
//! Every command prints one JSON report (or a flat text rendering of it) on
//! stdout. Errors go to stderr as JSON. Exit codes are listed on
//! [`exit_code`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::certcheck::json::{from_json_str, to_json};
use crate::certcheck::{certificate_stats, check_certificate, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::genesis::{build_generator, certify_module, PrimeHints};
use crate::groebner::Ideal;
use crate::homalg::text::{format_module, parse_definitions, Definition};
use crate::homalg::{ext_annihilator, ext_module, PresentedModule, QuotientRing};
use crate::loci::{is_j0, nagata_check, nonperf_locus, perf_locus_complex, singular_locus, ComplexInput, ClosedLocus};
use crate::polyring::parse::{parse_ideal_list, parse_order, parse_poly, parse_ring_with_limits};
use crate::polyring::{Limits, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Regular loci, perfect loci and certified generators for affine algebras.
#[derive(Debug, Parser)]
#[command(name = "regloc", version)]
pub struct Cli {
    #[command(flatten)]
    pub session: SessionArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct SessionArgs {
    /// JSON file with any of: order, max_degree, max_pairs,
    /// max_resolution_length, format. Flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Monomial order for `gb` and `nf`: grevlex, lex or elim:a,b,...
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Largest S-pair degree before a cutoff.
    #[arg(long, global = true)]
    pub max_degree: Option<u64>,
    /// Largest number of S-pairs per basis before a cutoff.
    #[arg(long, global = true)]
    pub max_pairs: Option<usize>,
    /// Longest free resolution before a cutoff.
    #[arg(long, global = true)]
    pub max_resolution_length: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of I + (polys) in the ambient ring.
    Gb {
        #[arg(long)]
        ring: String,
        /// Extra generators, comma separated.
        #[arg(long, default_value = "")]
        polys: String,
    },
    /// Normal form of a polynomial modulo I + (polys).
    Nf {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "")]
        polys: String,
        #[arg(long)]
        poly: String,
    },
    /// Free resolution of a module up to a given length.
    Resolve {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Ext^n(M, N) and its annihilator.
    Ext {
        #[command(flatten)]
        input: ModuleInput,
        /// Name of N in the input file.
        #[arg(long)]
        target: String,
        #[arg(short, long)]
        n: usize,
    },
    /// Sing R as V(J).
    SingLocus {
        #[arg(long)]
        ring: String,
    },
    /// Spec R minus perf of a module or complex.
    PerfLocus {
        #[arg(long)]
        input: PathBuf,
        /// Module or complex name; defaults to the first definition.
        #[arg(long)]
        name: Option<String>,
    },
    /// J-0 for R, with a witness when R is declared a domain.
    J0 {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        domain: bool,
    },
    /// J-0 for every R/p over the given primes, and Reg R.
    Nagata {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        primes: String,
    },
    /// A generator of mod R with its construction trace.
    Gen {
        #[arg(long)]
        ring: String,
        /// Minimal primes of R, e.g. "(x);(y)".
        #[arg(long)]
        primes: Option<String>,
    },
    /// Certificate that a module lies in the thick closure of the generator.
    Certify {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Re-verifies a certificate file. Exit code 1 when it fails.
    Check { certificate: PathBuf },
}

#[derive(Debug, Args)]
pub struct ModuleInput {
    /// File of `module ...` / `complex ...` definitions.
    #[arg(long)]
    pub input: PathBuf,
    /// Module name; defaults to the first module in the file.
    #[arg(long)]
    pub module: Option<String>,
}

/// Resolved configuration, echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub order: String,
    pub max_degree: u64,
    pub max_pairs: usize,
    pub max_resolution_length: usize,
    pub format: Format,
}

impl Default for SessionConfig {
    fn default() -> Self {
        let l = Limits::default();
        SessionConfig {
            order: "grevlex".into(),
            max_degree: l.max_degree,
            max_pairs: l.max_pairs,
            max_resolution_length: l.max_resolution_length,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    order: Option<String>,
    max_degree: Option<u64>,
    max_pairs: Option<usize>,
    max_resolution_length: Option<usize>,
    format: Option<Format>,
}

impl SessionConfig {
    pub fn resolve(args: &SessionArgs) -> Result<Self> {
        let file: ConfigFile = match &args.config {
            None => ConfigFile::default(),
            Some(p) => {
                let src = read(p)?;
                serde_json::from_str(&src).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?
            }
        };
        let d = SessionConfig::default();
        let cfg = SessionConfig {
            order: args.order.clone().or(file.order).unwrap_or(d.order),
            max_degree: args.max_degree.or(file.max_degree).unwrap_or(d.max_degree),
            max_pairs: args.max_pairs.or(file.max_pairs).unwrap_or(d.max_pairs),
            max_resolution_length: args
                .max_resolution_length
                .or(file.max_resolution_length)
                .unwrap_or(d.max_resolution_length),
            format: args.format.or(file.format).unwrap_or(d.format),
        };
        if cfg.max_degree == 0 || cfg.max_pairs == 0 || cfg.max_resolution_length == 0 {
            return Err(Error::Invalid("cutoffs must be positive".into()));
        }
        parse_order(&cfg.order)?;
        Ok(cfg)
    }

    pub fn limits(&self) -> Limits {
        Limits {
            max_degree: self.max_degree,
            max_pairs: self.max_pairs,
            max_resolution_length: self.max_resolution_length,
        }
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))
}

/// 0 success, 1 verification failure, 2 input error, 3 resource cutoff.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Cutoff(_) => 3,
        Error::Verification(_) => 1,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::RingMismatch(_) => "ring_mismatch",
        Error::UnknownVariable(_) => "unknown_variable",
        Error::Parse { .. } => "parse",
        Error::Invalid(_) => "invalid",
        Error::Cutoff(_) => "cutoff",
        Error::Precondition(_) => "precondition",
        Error::Unsupported(_) => "unsupported",
        Error::Verification(_) => "verification",
    }
}

/// The JSON printed on stderr for a failed command.
pub fn error_report(e: &Error) -> Value {
    let mut err = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        err["line"] = json!(line);
        err["column"] = json!(column);
    }
    json!({ "schema_version": SCHEMA_VERSION, "error": err })
}

fn quotient_ring(s: &str, cfg: &SessionConfig) -> Result<Arc<QuotientRing>> {
    QuotientRing::parse_with_limits(s, cfg.limits())
}

fn poly_list(ring: &Arc<crate::polyring::PolyRing>, s: &str) -> Result<Vec<Poly>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut p = crate::polyring::parse::Parser::new(s);
    let mut out = vec![p.poly(ring)?];
    while p.eat(',') {
        out.push(p.poly(ring)?);
    }
    p.expect_end()?;
    Ok(out)
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn locus_json(l: &ClosedLocus) -> Value {
    json!({ "defining_ideal": l.defining_strings() })
}

fn definitions(path: &Path, cfg: &SessionConfig) -> Result<Vec<Definition>> {
    parse_definitions(&read(path)?, cfg.limits())
}

fn find_module(defs: &[Definition], name: Option<&str>) -> Result<(String, PresentedModule)> {
    defs.iter()
        .find_map(|d| match d {
            Definition::Module(n, m) if name.is_none_or(|w| w == n) => Some((n.clone(), m.clone())),
            _ => None,
        })
        .ok_or_else(|| match name {
            Some(n) => Error::Invalid(format!("no module named `{n}` in the input")),
            None => Error::Invalid("the input defines no module".into()),
        })
}

fn hints(ring: &Arc<QuotientRing>, primes: Option<&str>) -> Result<PrimeHints> {
    Ok(match primes {
        None => PrimeHints::new(),
        Some(s) => PrimeHints::new().with(ring, parse_ideal_list(ring.ambient(), s)?),
    })
}

fn module_json(name: &str, m: &PresentedModule) -> Value {
    json!({ "name": name, "ring": m.ring().to_string(), "text": format_module(name, m) })
}

/// Runs one command; `Ok((report, verdict_failed))`.
pub fn run(cmd: &Command, cfg: &SessionConfig) -> Result<(Value, bool)> {
    let limits = cfg.limits();
    let report = match cmd {
        Command::Gb { ring, polys } => {
            let (s, mut gens) = parse_ring_with_limits(ring, parse_order(&cfg.order)?, limits)?;
            gens.extend(poly_list(&s, polys)?);
            let ideal = Ideal::new(&s, gens)?;
            json!({ "ring": s.to_string(), "ideal": strings(ideal.gens()), "basis": strings(ideal.groebner_basis()?) })
        }
        Command::Nf { ring, polys, poly } => {
            let (s, mut gens) = parse_ring_with_limits(ring, parse_order(&cfg.order)?, limits)?;
            gens.extend(poly_list(&s, polys)?);
            let f = parse_poly(&s, poly)?;
            let ideal = Ideal::new(&s, gens)?;
            json!({
                "ring": s.to_string(),
                "ideal": strings(ideal.gens()),
                "poly": f.to_string(),
                "normal_form": ideal.normal_form(&f)?.to_string(),
            })
        }
        Command::Resolve { input, length } => {
            let (name, m) = find_module(&definitions(&input.input, cfg)?, input.module.as_deref())?;
            let res = m.resolution();
            let s = m.ambient();
            let mut ranks = vec![res.rank(0)?];
            let mut maps = Vec::new();
            for j in 1..=*length {
                let d = res.differential(j)?;
                let rows = ranks[j - 1];
                ranks.push(d.len());
                let m: Vec<Vec<String>> = (0..rows)
                    .map(|r| d.iter().map(|c| c.component(s, r).to_string()).collect())
                    .collect();
                maps.push(m);
                if d.is_empty() {
                    break;
                }
            }
            json!({ "module": module_json(&name, &m), "ranks": ranks, "differentials": maps })
        }
        Command::Ext { input, target, n } => {
            let defs = definitions(&input.input, cfg)?;
            let (name, m) = find_module(&defs, input.module.as_deref())?;
            let (tname, t) = find_module(&defs, Some(target))?;
            let e = ext_module(*n, &m, &t)?;
            let ann = ext_annihilator(*n, &m, &t)?;
            json!({
                "module": module_json(&name, &m),
                "target": module_json(&tname, &t),
                "n": n,
                "ext": format_module("E", &e),
                "is_zero": e.is_zero()?,
                "annihilator": strings(ann.gens()),
            })
        }
        Command::SingLocus { ring } => {
            let r = quotient_ring(ring, cfg)?;
            let l = singular_locus(&r)?;
            let mut v = locus_json(&l);
            v["ring"] = json!(r.to_string());
            v["empty"] = json!(l.is_empty()?);
            v
        }
        Command::PerfLocus { input, name } => {
            let defs = definitions(input, cfg)?;
            let def = defs
                .iter()
                .find(|d| match (d, name) {
                    (_, None) => true,
                    (Definition::Module(n, _) | Definition::Complex(n, _), Some(w)) => n == w,
                })
                .ok_or_else(|| Error::Invalid("no matching definition in the input".into()))?;
            let (label, ring, open) = match def {
                Definition::Module(n, m) => (n, m.ring().clone(), nonperf_locus(m)?.complement()),
                Definition::Complex(n, x) => (n, x.ring().clone(), perf_locus_complex(&ComplexInput::Free(x.clone()))?),
            };
            json!({
                "name": label,
                "ring": ring.to_string(),
                "nonperf_locus": locus_json(&open.complement),
                "perfect_everywhere": open.is_everything()?,
            })
        }
        Command::J0 { ring, domain } => {
            let r = quotient_ring(ring, cfg)?;
            let rep = is_j0(&r, *domain)?;
            json!({ "ring": r.to_string(), "domain_attested": domain, "j0": rep.holds, "witness": rep.witness })
        }
        Command::Nagata { ring, primes } => {
            let r = quotient_ring(ring, cfg)?;
            let ps = parse_ideal_list(r.ambient(), primes)?;
            let rep = nagata_check(&r, &ps)?;
            json!({ "ring": r.to_string(), "primes": rep.primes, "singular_locus": locus_json(&rep.regular_locus.complement) })
        }
        Command::Gen { ring, primes } => {
            let r = quotient_ring(ring, cfg)?;
            let g = build_generator(&r, &hints(&r, primes.as_deref())?)?;
            json!({
                "ring": r.to_string(),
                "generator": g.summands().iter().map(|m| format_module("G", m)).collect::<Vec<_>>(),
                "depth": g.depth,
                "triangle_count": g.triangle_count,
                "attestations": g.attestations(),
                "trace": g.tree.trace(),
            })
        }
        Command::Certify { input, primes } => {
            let (_, m) = find_module(&definitions(&input.input, cfg)?, input.module.as_deref())?;
            let g = build_generator(m.ring(), &hints(m.ring(), primes.as_deref())?)?;
            let c = certify_module(&m, &g)?;
            let v = check_certificate(&c)?;
            if !v.ok {
                return Err(Error::Verification(format!("generated certificate fails: {v:?}")));
            }
            return Ok((serde_json::to_value(to_json(&c)).expect("serializable"), false));
        }
        Command::Check { certificate } => {
            let c = from_json_str(&read(certificate)?, limits)?;
            let v = check_certificate(&c)?;
            let failed = !v.ok;
            let mut out = serde_json::to_value(&v).expect("serializable");
            out["stats"] = serde_json::to_value(certificate_stats(&c)).expect("serializable");
            return Ok((out, failed));
        }
    };
    Ok((report, false))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gb { .. } => "gb",
        Command::Nf { .. } => "nf",
        Command::Resolve { .. } => "resolve",
        Command::Ext { .. } => "ext",
        Command::SingLocus { .. } => "sing-locus",
        Command::PerfLocus { .. } => "perf-locus",
        Command::J0 { .. } => "j0",
        Command::Nagata { .. } => "nagata",
        Command::Gen { .. } => "gen",
        Command::Certify { .. } => "certify",
        Command::Check { .. } => "check",
    }
}

/// Wraps a result with the schema version, command name and configuration.
/// Certificates are printed bare so they can be fed to `check`.
pub fn envelope(cmd: &Command, cfg: &SessionConfig, result: Value) -> Value {
    if matches!(cmd, Command::Certify { .. }) {
        return result;
    }
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(command_name(cmd)));
    out.insert("config".into(), serde_json::to_value(cfg).expect("serializable"));
    if let Value::Object(fields) = result {
        out.extend(fields);
    }
    Value::Object(out)
}

/// One `key: value` line per top-level field.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, val) in m {
            let shown = match val {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    } else {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = SessionConfig::resolve(&cli.session).and_then(|cfg| run(&cli.command, &cfg).map(|r| (cfg, r)));
    match outcome {
        Ok((cfg, (report, failed))) => {
            let full = envelope(&cli.command, &cfg, report);
            let text = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&full).expect("serializable") + "\n",
                Format::Text => render_text(&full),
            };
            // A closed pipe is not worth a panic.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            i32::from(failed)
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&error_report(&e)).expect("serializable"));
            exit_code(&e)
        }
    }
}
