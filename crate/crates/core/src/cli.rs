//! Command-line front end. [`run`] returns the exit code and both output
//! streams so the binary and the tests share one code path.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chabauty::{self, CertifyOutcome, ChabautyError, Diagnosis};
use crate::numfield::{self, FieldElement, FieldError, NumberField, Splitting};
use crate::padic::{PadicInt, DEFAULT_PRECISION};
use crate::polyint::{newton_polygon, IntPoly, PolyError};
use crate::search::{self, CycleBound, CycleOutcome, NoBoundReason, SearchError, SearchReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "exunit",
    version,
    about = "Exceptional units and 3-adic splitting"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Report wall time (search only).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PolyArg {
    /// Ascending coefficient list, e.g. `1,-42,39,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify that Q[x]/(g) has no exceptional units.
    Certify(PolyArg),
    /// Census of exceptional-unit minimal polynomials split at p.
    Search {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        height: u32,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Series diagnostics for a unit given in the power basis.
    Analyze {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        unit: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// p-adic roots of g, and optionally the images of a unit.
    Embed {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        unit: Option<String>,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        /// Defaults to max(8, v_p(disc) + 2).
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Norm of an element of Q[x]/(g).
    Norm {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        unit: String,
    },
    /// Newton polygon of g at p.
    Newton {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 3)]
        prime: u32,
    },
    /// Orbit of a polynomial map on Z[a] and the cycle-length bound.
    Dynamics {
        /// Defining polynomial of the field; `0,1` is Q.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        poly: String,
        /// Map coefficients, ascending, separated by `;`; each is a power-basis csv.
        #[arg(long, allow_hyphen_values = true)]
        map: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        seed: String,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
    },
}

/// Exit code plus captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
    position: Option<usize>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: "usage",
            message: message.into(),
            position: None,
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        let position = match &e {
            PolyError::Parse { position, .. } => Some(*position),
            _ => None,
        };
        Failure {
            kind: if position.is_some() {
                "parse"
            } else {
                "polynomial"
            },
            message: e.to_string(),
            position,
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Poly(p) => p.into(),
            FieldError::Parse { position, .. } => Failure {
                kind: "parse",
                message: e.to_string(),
                position: Some(position),
            },
            other => Failure {
                kind: "field",
                message: other.to_string(),
                position: None,
            },
        }
    }
}

impl From<ChabautyError> for Failure {
    fn from(e: ChabautyError) -> Self {
        match e {
            ChabautyError::Field(f) => f.into(),
            other => Failure {
                kind: "analysis",
                message: other.to_string(),
                position: None,
            },
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Field(f) => f.into(),
            SearchError::Chabauty(c) => c.into(),
            other => Failure {
                kind: "search",
                message: other.to_string(),
                position: None,
            },
        }
    }
}

/// Parses the ascending coefficient-list form.
pub fn parse_poly(text: &str) -> Result<IntPoly, PolyError> {
    IntPoly::from_str(text)
}

struct Report {
    code: i32,
    text: String,
    json: Vec<Value>,
}

impl Report {
    fn single(code: i32, text: String, json: Value) -> Self {
        Report {
            code,
            text,
            json: vec![json],
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: rendered,
                },
                _ => {
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    let message = first.trim_start_matches("error: ").to_string();
                    failure_outcome(Format::Text, &Failure::usage(message))
                }
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok(report) => {
            let stdout = match format {
                Format::Text => report.text,
                Format::Json => report
                    .json
                    .iter()
                    .map(|v| serde_json::to_string(v).expect("json values serialize") + "\n")
                    .collect(),
            };
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => failure_outcome(format, &f),
    }
}

fn failure_outcome(format: Format, f: &Failure) -> Outcome {
    let stderr = match format {
        Format::Text => match f.position {
            Some(p) => format!("error[{}] at {}: {}\n", f.kind, p, f.message),
            None => format!("error[{}]: {}\n", f.kind, f.message),
        },
        Format::Json => {
            let v = json!({
                "kind": "error",
                "error": f.kind,
                "message": f.message,
                "position": f.position,
            });
            serde_json::to_string(&v).expect("json values serialize") + "\n"
        }
    };
    Outcome {
        code: EXIT_ERROR,
        stdout: String::new(),
        stderr,
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Certify(p) => certify(&parse_poly(&p.poly)?),
        Command::Search {
            degree,
            height,
            prime,
            jobs,
        } => census(*degree, *height, *prime, *jobs, cli.timing),
        Command::Analyze {
            poly,
            unit,
            precision,
        } => analyze(&parse_poly(&poly.poly)?, unit, *precision),
        Command::Embed {
            poly,
            unit,
            prime,
            precision,
        } => embed(
            &parse_poly(&poly.poly)?,
            unit.as_deref(),
            *prime,
            *precision,
        ),
        Command::Norm { poly, unit } => norm(&parse_poly(&poly.poly)?, unit),
        Command::Newton { poly, prime } => newton(&parse_poly(&poly.poly)?, *prime),
        Command::Dynamics {
            poly,
            map,
            seed,
            max_iter,
        } => dynamics(&parse_poly(poly)?, map.as_deref(), seed, *max_iter),
    }
}

fn padic_strings(xs: &[PadicInt]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn certify(g: &IntPoly) -> Result<Report, Failure> {
    let d = g.degree().unwrap_or(0);
    let a0 = if d > 0 {
        Some(chabauty::a0_valuation(d))
    } else {
        None
    };
    let outcome = chabauty::certify_no_exceptional_units(g)?;
    let poly_line = format!("poly: {} [{}]\n", g, g.to_csv());
    Ok(match outcome {
        CertifyOutcome::Certificate(c) => {
            let mut text = String::from("certificate\n");
            text += &poly_line;
            let _ = writeln!(text, "degree: {}", c.degree);
            let _ = writeln!(text, "roots in Z_3 (precision {}):", c.precision);
            for r in &c.roots {
                let _ = writeln!(text, "  {r}");
            }
            let _ = writeln!(text, "v3(2^d - (-1)^d) = {}", c.key_valuation);
            text += "proof:\n";
            for (i, step) in c.proof.iter().enumerate() {
                let _ = writeln!(text, "  {}. {}", i + 1, step);
            }
            let _ = writeln!(text, "conclusion: {}", c.conclusion);
            let json = json!({
                "kind": "certificate",
                "poly": c.poly.to_csv(),
                "degree": c.degree,
                "roots": padic_strings(&c.roots),
                "valuations": { "v3(2^d - (-1)^d)": c.key_valuation },
                "precision": c.precision,
                "proof": c.proof,
                "conclusion": c.conclusion,
            });
            Report::single(EXIT_OK, text, json)
        }
        CertifyOutcome::HypothesisFail(reason) => {
            let mut text = String::from("hypothesis-fail\n");
            text += &poly_line;
            let _ = writeln!(text, "degree: {d}");
            let _ = writeln!(text, "reason: {}", reason.as_str());
            if let Some(v) = a0 {
                let _ = writeln!(text, "v3(2^d - (-1)^d) = {v}");
            }
            let _ = writeln!(text, "conclusion: no certificate");
            let json = json!({
                "kind": "hypothesis-fail",
                "reason": reason.as_str(),
                "poly": g.to_csv(),
                "degree": d,
                "roots": Value::Null,
                "valuations": { "v3(2^d - (-1)^d)": a0 },
                "conclusion": "no certificate",
            });
            Report::single(EXIT_OK, text, json)
        }
        CertifyOutcome::Inconclusive { required } => inconclusive(g, d, required),
    })
}

fn inconclusive(g: &IntPoly, d: usize, required: u32) -> Report {
    let text = format!(
        "inconclusive\npoly: {} [{}]\nrequired precision: {} (cap {})\n",
        g,
        g.to_csv(),
        required,
        numfield::PRECISION_CAP
    );
    let json = json!({
        "kind": "inconclusive",
        "poly": g.to_csv(),
        "degree": d,
        "roots": Value::Null,
        "valuations": Value::Null,
        "required_precision": required,
        "conclusion": "undecided",
    });
    Report::single(EXIT_INCONCLUSIVE, text, json)
}

fn census(d: usize, h: u32, p: u32, jobs: usize, timing: bool) -> Result<Report, Failure> {
    let start = Instant::now();
    let report: SearchReport = search::search_split_exceptional(d, h, p, jobs)?;
    let elapsed = start.elapsed();
    let mut text = String::new();
    let mut json = Vec::new();
    for hit in &report.hits {
        let (n0, n1) = hit.witness_norms();
        let _ = writeln!(
            text,
            "hit: {} [{}] norms {} {}",
            hit.poly,
            hit.poly.to_csv(),
            n0,
            n1
        );
        json.push(json!({
            "kind": "hit",
            "poly": hit.poly.to_csv(),
            "d": hit.degree,
            "H": i64::try_from(&hit.height).ok(),
            "prime": p,
            "splits_at_3": p == 3,
            "exceptional_witness_norms": [n0, n1],
        }));
    }
    for g in &report.inconclusive {
        let _ = writeln!(text, "inconclusive: {} [{}]", g, g.to_csv());
    }
    let _ = writeln!(
        text,
        "degree: {} height: {} prime: {} scanned: {} candidates: {}",
        report.degree, report.height, report.prime, report.scanned, report.candidates
    );
    let _ = writeln!(text, "hits: {}", report.hits.len());
    if !report.inconclusive.is_empty() {
        let _ = writeln!(text, "inconclusive: {}", report.inconclusive.len());
    }
    let mut summary = json!({
        "kind": "summary",
        "degree": report.degree,
        "height": report.height,
        "prime": report.prime,
        "scanned": report.scanned,
        "candidates": report.candidates,
        "hits": report.hits.len(),
        "inconclusive": report.inconclusive.iter().map(IntPoly::to_csv).collect::<Vec<_>>(),
        "conclusion": if report.hits.is_empty() { "no hits" } else { "hits found" },
    });
    if timing {
        let ms = elapsed.as_secs_f64() * 1000.0;
        let _ = writeln!(text, "wall time: {ms:.1} ms");
        summary["wall_time_ms"] = json!(ms);
    }
    json.push(summary);
    let code = if report.inconclusive.is_empty() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok(Report { code, text, json })
}

fn analyze(g: &IntPoly, unit: &str, precision: u32) -> Result<Report, Failure> {
    let field = NumberField::new(g.clone())?;
    let u = field.parse_element(unit)?;
    let diag: Diagnosis = match chabauty::analyze_unit(g, &u, precision) {
        Ok(d) => d,
        Err(ChabautyError::Inconclusive { required }) => {
            return Ok(inconclusive(g, field.degree(), required))
        }
        Err(e) => return Err(e.into()),
    };
    let reduced = diag.reduced_display();
    let valuations: Vec<String> = diag
        .ledger
        .valuations
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut text = String::from("diagnosis\n");
    let _ = writeln!(text, "poly: {} [{}]", g, g.to_csv());
    let _ = writeln!(text, "degree: {}", diag.degree);
    let _ = writeln!(
        text,
        "unit: {} (normalization: {:?})",
        diag.unit, diag.normalization
    );
    text += "logs:\n";
    for l in &diag.logs {
        let _ = writeln!(text, "  {l}");
    }
    let _ = writeln!(text, "v3(sum log^2) = {}", diag.log_square_sum_valuation);
    for (j, v) in valuations.iter().enumerate() {
        let _ = writeln!(text, "v3(a_{j}) = {v}");
    }
    let _ = writeln!(text, "tail bound: {}", diag.ledger.tail_bound);
    let _ = writeln!(text, "odd terms vanish: {}", diag.ledger.odd_terms_vanish);
    let _ = writeln!(text, "v3(a_2) >= 2: {}", diag.ledger.quadratic_at_least_2);
    let _ = writeln!(
        text,
        "v3(a_j) >= 3 for j >= 4: {}",
        diag.ledger.higher_at_least_3
    );
    let _ = writeln!(text, "reduced: {reduced} (mod 3)");
    let _ = writeln!(text, "strassmann bound: {}", diag.strassmann.bound);
    let _ = writeln!(
        text,
        "hensel simple roots: {}",
        diag.strassmann.hensel_simple_roots
    );
    let conclusion = if diag.ledger.rules_out_zero_at_one {
        "f(1) != 0"
    } else {
        "f(1) = 0 not excluded"
    };
    let _ = writeln!(text, "conclusion: {conclusion}");
    let json = json!({
        "kind": "diagnosis",
        "poly": g.to_csv(),
        "degree": diag.degree,
        "unit": diag.unit.to_string(),
        "normalization": diag.normalization,
        "roots": padic_strings(&diag.roots),
        "logs": padic_strings(&diag.logs),
        "valuations": {
            "coefficients": valuations,
            "tail": diag.ledger.tail_bound,
            "sum_log_squares": diag.log_square_sum_valuation.to_string(),
        },
        "ledger": diag.ledger,
        "reduced": reduced,
        "strassmann_bound": diag.strassmann.bound,
        "hensel_simple_roots": diag.strassmann.hensel_simple_roots,
        "exact": diag.strassmann.exact,
        "conclusion": conclusion,
    });
    Ok(Report::single(EXIT_OK, text, json))
}

fn embed(
    g: &IntPoly,
    unit: Option<&str>,
    p: u32,
    precision: Option<u32>,
) -> Result<Report, Failure> {
    let field = NumberField::new(g.clone())?;
    let u = unit.map(|s| field.parse_element(s)).transpose()?;
    let split = match precision {
        Some(n) => numfield::padic_roots(g, p, n)?,
        None => numfield::splitting(g, p)?,
    };
    let d = field.degree();
    let set = match split {
        Splitting::Split(set) => set,
        Splitting::NotSplit { roots_found } => {
            let text = format!(
                "not-split\npoly: {} [{}]\nprime: {p}\nroots found: {roots_found} of {d}\n",
                g,
                g.to_csv()
            );
            let json = json!({
                "kind": "not-split",
                "poly": g.to_csv(),
                "degree": d,
                "prime": p,
                "roots": Value::Null,
                "roots_found": roots_found,
                "valuations": Value::Null,
                "conclusion": format!("{p} does not split completely"),
            });
            return Ok(Report::single(EXIT_OK, text, json));
        }
        Splitting::Inconclusive { required } => return Ok(inconclusive(g, d, required)),
    };
    let images = match &u {
        Some(u) => Some(numfield::embed(&field, u, &set)?),
        None => None,
    };
    let mut text = String::from("split\n");
    let _ = writeln!(text, "poly: {} [{}]", g, g.to_csv());
    let _ = writeln!(text, "prime: {p} precision: {}", set.precision);
    let _ = writeln!(text, "v{p}(disc) = {}", set.disc_valuation);
    for (r, m) in set.roots.iter().zip(&set.margins) {
        let _ = writeln!(
            text,
            "root: {r}  (level {}, v(g') = {})",
            m.level, m.derivative_valuation
        );
    }
    if let Some(imgs) = &images {
        for x in imgs {
            let _ = writeln!(text, "image: {x}");
        }
    }
    let json = json!({
        "kind": "split",
        "poly": g.to_csv(),
        "degree": d,
        "prime": p,
        "precision": set.precision,
        "roots": padic_strings(&set.roots),
        "margins": set.margins,
        "images": images.as_deref().map(padic_strings),
        "valuations": {
            "disc": set.disc_valuation,
            "separation": set.separation,
        },
        "conclusion": format!("{p} splits completely"),
    });
    Ok(Report::single(EXIT_OK, text, json))
}

fn norm(g: &IntPoly, unit: &str) -> Result<Report, Failure> {
    let field = NumberField::new(g.clone())?;
    let u = field.parse_element(unit)?;
    let n = field.norm(&u);
    let n1 = field.norm(&field.sub(&field.one(), &u));
    let is_unit = field.is_unit(&u);
    let exceptional = field.is_exceptional_unit(&u);
    let conclusion = if exceptional {
        "exceptional unit"
    } else if is_unit {
        "unit"
    } else {
        "not a unit"
    };
    let text = format!(
        "norm\npoly: {} [{}]\nelement: {}\nNm(x) = {}\nNm(1 - x) = {}\nconclusion: {}\n",
        g,
        g.to_csv(),
        u,
        n,
        n1,
        conclusion
    );
    let json = json!({
        "kind": "norm",
        "poly": g.to_csv(),
        "degree": field.degree(),
        "element": u.to_string(),
        "norm": n.to_string(),
        "norm_one_minus": n1.to_string(),
        "roots": Value::Null,
        "valuations": Value::Null,
        "unit": is_unit,
        "exceptional": exceptional,
        "conclusion": conclusion,
    });
    Ok(Report::single(EXIT_OK, text, json))
}

fn newton(g: &IntPoly, p: u32) -> Result<Report, Failure> {
    if !crate::padic::is_prime(p) {
        return Err(Failure::usage(format!("{p} is not a prime")));
    }
    let np = newton_polygon(g, p)?;
    let mut slopes: Vec<String> = vec!["inf".to_string(); np.zero_roots];
    for s in &np.segments {
        slopes.extend(std::iter::repeat_n(s.slope.to_string(), s.length));
    }
    let mut text = String::from("newton polygon\n");
    let _ = writeln!(text, "poly: {} [{}]", g, g.to_csv());
    let _ = writeln!(text, "prime: {p}");
    if np.zero_roots > 0 {
        let _ = writeln!(text, "zero roots: {}", np.zero_roots);
    }
    for s in &np.segments {
        let _ = writeln!(text, "slope {} length {}", s.slope, s.length);
    }
    let _ = writeln!(text, "root valuations: {}", slopes.join(" "));
    let json = json!({
        "kind": "newton",
        "poly": g.to_csv(),
        "degree": g.degree(),
        "prime": p,
        "segments": np.segments,
        "zero_roots": np.zero_roots,
        "roots": Value::Null,
        "valuations": slopes,
        "conclusion": format!("{} segment(s)", np.segments.len()),
    });
    Ok(Report::single(EXIT_OK, text, json))
}

fn dynamics(
    g: &IntPoly,
    map: Option<&str>,
    seed: &str,
    max_iter: usize,
) -> Result<Report, Failure> {
    let field = NumberField::new(g.clone())?;
    let bound = search::cycle_bound(g)?;
    let mut text = String::from("dynamics\n");
    let _ = writeln!(text, "field: {} [{}]", g, g.to_csv());
    let (bound_text, bound_json) = match &bound {
        CycleBound::Lengths { lengths, certified } => {
            let list: Vec<String> = lengths.iter().map(u32::to_string).collect();
            (
                format!(
                    "cycle lengths in {{{}}}{}",
                    list.join(","),
                    if *certified {
                        " (certified: no exceptional units)"
                    } else {
                        ""
                    }
                ),
                json!(lengths),
            )
        }
        CycleBound::NoBound(NoBoundReason::NoEmbedding) => (
            "no bound: 3 does not split completely".to_string(),
            Value::Null,
        ),
        CycleBound::NoBound(NoBoundReason::Inconclusive { required }) => (
            format!("no bound: splitting needs precision {required}"),
            Value::Null,
        ),
    };
    let _ = writeln!(text, "{bound_text}");
    let mut json = json!({
        "kind": "dynamics",
        "poly": g.to_csv(),
        "degree": field.degree(),
        "roots": Value::Null,
        "valuations": Value::Null,
        "cycle_bound": bound_json,
        "conclusion": bound_text,
    });
    let mut code = match bound {
        CycleBound::NoBound(NoBoundReason::Inconclusive { .. }) => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    };
    if let Some(map) = map {
        let coeffs = map
            .split(';')
            .map(|c| field.parse_element(c))
            .collect::<Result<Vec<FieldElement>, _>>()?;
        let seed = field.parse_element(seed)?;
        let outcome = search::detect_cycle(
            &field,
            &coeffs,
            &seed,
            max_iter,
            search::DEFAULT_HEIGHT_DIGITS,
        )?;
        match &outcome {
            CycleOutcome::Cycle(orbit) => {
                let pts: Vec<String> = orbit.points.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "cycle length: {}", orbit.length);
                let _ = writeln!(text, "cycle: {}", pts.join(" -> "));
                json["orbit"] = json!(pts);
                json["cycle_length"] = json!(orbit.length);
                if orbit.length == 3 {
                    let units = search::units_from_3cycle(
                        &field,
                        &orbit.points[0],
                        &orbit.points[1],
                        &orbit.points[2],
                    )?;
                    let _ = writeln!(text, "e1 = {} e2 = {}", units.e1, units.e2);
                    json["units"] = json!([units.e1.to_string(), units.e2.to_string()]);
                }
            }
            CycleOutcome::Escaped { reason, iterations } => {
                let _ = writeln!(text, "escaped: {reason:?} after {iterations} steps");
                json["escaped"] = json!({ "reason": reason, "iterations": iterations });
                code = EXIT_INCONCLUSIVE;
            }
        }
    }
    Ok(Report::single(code, text, json))
}
