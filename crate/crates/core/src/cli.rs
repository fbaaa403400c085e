//! Command-line front end. [`run`] takes the argument list and output sinks
//! and returns the process exit code, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 failed check, 2 parse or usage error, 3 violated
//! mathematical precondition.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use crate::error::Error;
use crate::poly::TracePoly;
use crate::sl2::{complex_normal, format_complex, stream, y_t, Mat2};
use crate::trace::{dickson_d, dickson_e, phi, singular_sets, trace_polynomial};
use crate::variety::{
    parametrize_commutator_n1, parametrize_power_word, sample_surface, solve_word_equation,
    SurfacePoint, SurfaceSpec,
};
use crate::verify::{self, Suite};
use crate::word::{FreeWord, Generator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

pub const MAX_COUNT: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "wordmap", version, about = "Trace polynomials and word equations in SL(2, C)")]
struct Cli {
    /// Root seed for all random draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance, in (0, 1e-2].
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol: f64,
    /// Emit JSON (one record per line).
    #[arg(long, global = true)]
    json: bool,
    /// Number of items for batch commands.
    #[arg(long, global = true, default_value_t = 1)]
    count: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DicksonKind {
    D,
    E,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the trace polynomial P_w(s, t, u).
    TracePoly { word: String },
    /// Print the Dickson polynomial D_k(s, 1) or E_k(s, 1).
    Dickson {
        #[arg(long, value_enum, ignore_case = true)]
        kind: DicksonKind,
        #[arg(long)]
        k: u32,
    },
    /// Print phi_k(s) = E_{k-1}(s, 1).
    Phi {
        #[arg(long)]
        k: u32,
    },
    /// Singular sets A_n, A_m, B_{n,m} as JSON.
    Singular {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Sample points of the surface P_w = alpha.
    Sample(SurfaceArgs),
    /// Solve w(x, y) = g at sampled surface points.
    Solve {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Target as [[[re,im],[re,im]],[[re,im],[re,im]]] or [[a,b],[c,d]], or "y_alpha".
        #[arg(long, default_value = "y_alpha")]
        g: String,
    },
    /// Points of P_w = alpha from rational parameters: (s, t) for x^n y^m,
    /// (r, s) for [x^n, y]. Omitted parameters are drawn at random.
    Parametrize {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Run property suites: trace, bundle, solver or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[arg(long)]
    word: String,
    /// Complex number such as 3, -1, 2+i, 0.5-2i.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code(),
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            msg: format!("write failed: {e}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

/// Parses `a+bi`, `a`, `bi`, `i`, `-i`, with optional exponents.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number {text:?}");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return match s.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        p => p.parse::<f64>().map_err(|_| bad())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// `"y_alpha"` or a matrix in either JSON layout.
pub fn parse_target(text: &str, alpha: Complex64) -> Result<Mat2, String> {
    if text.trim() == "y_alpha" {
        return Ok(y_t(alpha));
    }
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Layout {
        Complex(Mat2),
        Real([[f64; 2]; 2]),
    }
    match serde_json::from_str::<Layout>(text) {
        Ok(Layout::Complex(m)) => Ok(m),
        Ok(Layout::Real(r)) => Ok(Mat2::real(r[0][0], r[0][1], r[1][0], r[1][1])),
        Err(_) => Err(format!("invalid matrix {text:?}: expected y_alpha or a 2x2 JSON matrix")),
    }
}

fn parse_word(text: &str) -> Result<FreeWord, Failure> {
    FreeWord::parse(text).map_err(Failure::from)
}

fn complex_arg(text: &str) -> Result<Complex64, Failure> {
    parse_complex(text).map_err(usage)
}

fn poly_record(out: &mut dyn Write, json: bool, label: serde_json::Value, p: &TracePoly) -> Result<(), Failure> {
    if json {
        let mut rec = label;
        rec["poly"] = json!(p.to_string());
        rec["terms"] = serde_json::to_value(p.to_json_terms()).expect("terms serialize");
        writeln!(out, "{rec}")?;
    } else {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

/// Fixed-point decimal with `digits` places; rounded zeros print unsigned.
fn fixed(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn root_list(roots: &[Complex64]) -> String {
    let items: Vec<String> = roots
        .iter()
        .map(|z| format!("[{},{}]", fixed(z.re, 12), fixed(z.im, 12)))
        .collect();
    format!("[{}]", items.join(","))
}

fn point_text(p: &SurfacePoint) -> String {
    format!(
        "s={} t={} u={} residual={:.3e}",
        format_complex(p.pt.s),
        format_complex(p.pt.t),
        format_complex(p.pt.u),
        p.residual
    )
}

/// `Some((n, m))` when `w = x^n y^m` with `n, m != 0`.
fn as_power_pair(w: &FreeWord) -> Option<(i64, i64)> {
    match w.syllables() {
        [a, b] if a.generator == Generator::X && b.generator == Generator::Y => Some((a.exponent, b.exponent)),
        _ => None,
    }
}

/// `Some(n)` when `w = [x^n, y]` with `n >= 1`.
fn as_commutator_n1(w: &FreeWord) -> Option<u32> {
    let first = w.syllables().first()?;
    if first.generator != Generator::X || first.exponent <= 0 {
        return None;
    }
    let n = first.exponent;
    (FreeWord::power_commutator(n, 1) == *w).then_some(n as u32)
}

struct Ctx {
    seed: u64,
    tol: f64,
    json: bool,
    count: usize,
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(cli.tol > 0.0 && cli.tol <= 1e-2) {
        return Err(usage(format!("--tol must lie in (0, 1e-2], got {}", cli.tol)));
    }
    if cli.count == 0 || cli.count > MAX_COUNT {
        return Err(usage(format!("--count must lie in [1, {MAX_COUNT}], got {}", cli.count)));
    }
    let ctx = Ctx {
        seed: cli.seed,
        tol: cli.tol,
        json: cli.json,
        count: cli.count,
    };
    match cli.command {
        Command::TracePoly { word } => {
            let w = parse_word(&word)?;
            poly_record(out, ctx.json, json!({"word": w.to_string()}), &trace_polynomial(&w))?;
            Ok(EXIT_OK)
        }
        Command::Dickson { kind, k } => {
            let (name, p) = match kind {
                DicksonKind::D => ("D", dickson_d(k)),
                DicksonKind::E => ("E", dickson_e(k)),
            };
            poly_record(out, ctx.json, json!({"kind": name, "k": k}), &p)?;
            Ok(EXIT_OK)
        }
        Command::Phi { k } => {
            poly_record(out, ctx.json, json!({"k": k}), &phi(k))?;
            Ok(EXIT_OK)
        }
        Command::Singular { n, m } => {
            if n == 0 || m == 0 {
                return Err(Failure {
                    code: EXIT_PRECONDITION,
                    msg: "n and m must be at least 1".into(),
                });
            }
            let d = singular_sets(n, m)?;
            writeln!(
                out,
                "{{\"n\":{n},\"m\":{m},\"A_n\":{},\"A_m\":{},\"B_nm\":{}}}",
                root_list(&d.a_n),
                root_list(&d.a_m),
                root_list(&d.b_nm)
            )?;
            Ok(EXIT_OK)
        }
        Command::Sample(args) => cmd_sample(&ctx, &args, out),
        Command::Solve { surface, g } => cmd_solve(&ctx, &surface, &g, out),
        Command::Parametrize { surface, r, s, t } => cmd_parametrize(&ctx, &surface, [r, s, t], out),
        Command::Verify { suite } => {
            let suite = Suite::parse(&suite)
                .ok_or_else(|| usage(format!("unknown suite {suite:?}: expected trace, bundle, solver or all")))?;
            let report = verify::run(suite, ctx.seed, ctx.tol);
            let text = if ctx.json { report.to_json_lines() } else { report.to_text() };
            out.write_all(text.as_bytes())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn cmd_sample(ctx: &Ctx, args: &SurfaceArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let w = parse_word(&args.word)?;
    let alpha = complex_arg(&args.alpha)?;
    let spec = SurfaceSpec::new(w, alpha)?;
    let pts = sample_surface(&spec, ctx.count, ctx.seed)?;
    let mut ok = true;
    for p in &pts {
        ok &= p.residual < ctx.tol;
        if ctx.json {
            writeln!(out, "{}", serde_json::to_string(p).expect("point serializes"))?;
        } else {
            writeln!(out, "{}", point_text(p))?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_solve(ctx: &Ctx, args: &SurfaceArgs, g: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let w = parse_word(&args.word)?;
    let alpha = complex_arg(&args.alpha)?;
    let spec = SurfaceSpec::for_solver(w, alpha)?;
    let g = parse_target(g, alpha).map_err(usage)?;
    let pts = sample_surface(&spec, ctx.count, ctx.seed)?;
    let mut ok = true;
    for p in &pts {
        let sol = solve_word_equation(&spec, &g, p)?;
        ok &= sol.residual < ctx.tol;
        if ctx.json {
            writeln!(out, "{}", serde_json::to_string(&sol).expect("solution serializes"))?;
        } else {
            writeln!(
                out,
                "{} x={} y={} residual={:.3e}",
                point_text(p),
                sol.x,
                sol.y,
                sol.residual
            )?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_parametrize(ctx: &Ctx, args: &SurfaceArgs, params: [Option<String>; 3], out: &mut dyn Write) -> Result<i32, Failure> {
    let w = parse_word(&args.word)?;
    let alpha = complex_arg(&args.alpha)?;
    let [r, s, t] = params.map(|p| p.as_deref().map(complex_arg).transpose());
    let (r, s, t) = (r?, s?, t?);
    let fixed_params = r.is_some() || s.is_some() || t.is_some();
    let count = if fixed_params { 1 } else { ctx.count };
    let mut ok = true;
    for i in 0..count {
        let mut rng = stream(ctx.seed, i as u64);
        let mut draw = |v: Option<Complex64>| v.unwrap_or_else(|| complex_normal(&mut rng));
        if let Some((n, m)) = as_power_pair(&w) {
            if r.is_some() {
                return Err(usage("--r applies to [x^n,y] only"));
            }
            let (s, t) = (draw(s), draw(t));
            let p = parametrize_power_word(n, m, alpha, s, t)?;
            ok &= p.residual < ctx.tol;
            if ctx.json {
                writeln!(out, "{}", serde_json::to_string(&p).expect("point serializes"))?;
            } else {
                writeln!(out, "{}", point_text(&p))?;
            }
        } else if let Some(n) = as_commutator_n1(&w) {
            if t.is_some() {
                return Err(usage("--t is determined by (r, s) for [x^n,y]"));
            }
            let (r, s) = (draw(r), draw(s));
            let p = parametrize_commutator_n1(n, alpha, r, s)?;
            ok &= p.point.residual < ctx.tol;
            if ctx.json {
                writeln!(out, "{}", serde_json::to_string(&p).expect("point serializes"))?;
            } else {
                writeln!(out, "{} form={:?}", point_text(&p.point), p.form)?;
            }
        } else {
            return Err(Failure {
                code: EXIT_PRECONDITION,
                msg: format!("no rational parametrization for {w}: expected x^n y^m or [x^n,y]"),
            });
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
