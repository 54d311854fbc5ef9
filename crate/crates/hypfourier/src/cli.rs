//! Thin command-line front end over the library. One subcommand per
//! subsystem, machine-readable output (JSON carries a schema_version field,
//! CSV carries a header row), exit code 0 on success, 1 on usage errors,
//! 2 on numerical failures.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::biortho::{BiorthoEvaluator, Family};
use crate::cfrac::{self, CellKind};
use crate::config::{EvalConfig, QuadConfig};
use crate::error::Error;
use crate::faber::FaberBasis;
use crate::genfun;
use crate::hfs::{self, Support, TestFunction};
use crate::hypergeom;
use crate::kleingordon::{KGSamples, KgEvaluator, QuadrantPoint};
use crate::theta::{self, C64};
use crate::transfer;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "hypfourier", version, about = "hyperbolic Fourier series toolkit")]
struct Cli {
    /// Absolute tolerance knob mapped into every quadrature/series config.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// theta_k(q) from the nome series, or Theta_k(z) with --z.
    Theta {
        #[arg(long)]
        kind: u8,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// The elliptic modular function lambda(z) (or its derivative).
    Lambda {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = false)]
        prime: bool,
    },
    /// The Schwarz triangle map tau(z), or the boundary ratio with --x.
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// evaluate Delta(x) = F(1/(1+x))/F(x/(1+x)) instead
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
    },
    /// Exact coefficients of the n-th Schwarz triangle polynomial.
    Spoly {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Even continued-fraction word of an even rational p/q.
    Cfrac {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Even-rational partition cell of a half-plane point.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Generating function Phi^delta(x; z) on the strip.
    Genfun {
        #[arg(long)]
        delta: u8,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// contour choice: strip (default), inf, or pi
        #[arg(long, default_value = "strip")]
        contour: String,
    },
    /// Biorthogonal family on a grid, CSV with error estimates.
    Biortho {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Hyperbolic Fourier analysis of sampled data.
    Hfs {
        #[command(subcommand)]
        sub: HfsCmd,
    },
    /// Klein-Gordon reconstruction from lattice samples.
    Kg {
        #[command(subcommand)]
        sub: KgCmd,
    },
    /// Transfer-operator iterates on the grid.
    Transfer {
        #[arg(long)]
        iterate: usize,
    },
    /// Run the built-in verification suite.
    Selftest {
        #[arg(long, default_value = "quick")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum HfsCmd {
    Analyze {
        /// CSV with header t,re,im
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Subcommand)]
enum KgCmd {
    Reconstruct {
        /// JSON {"n_max":N,"ux":[{"n":..,"re":..,"im":..}],"uy":[...]}
        #[arg(long)]
        samples: PathBuf,
        /// X0:X1:NX,Y0:Y1:NY
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
}

/// Parse the complex literal grammar `<float>[+|-]<float>i` (no whitespace);
/// a bare float is accepted as purely real.
pub fn parse_complex(s: &str) -> Result<C64, Error> {
    let bad = || Error::InvalidInput(format!("malformed complex literal {s:?}"));
    if let Some(body) = s.strip_suffix('i') {
        // split at the last +/- that is not an exponent sign and not leading
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        let i = split.ok_or_else(bad)?;
        let re: f64 = body[..i].parse().map_err(|_| bad())?;
        let sign = if bytes[i] as char == '-' { -1.0 } else { 1.0 };
        let imtxt = &body[i + 1..];
        let im: f64 = if imtxt.is_empty() {
            1.0
        } else {
            imtxt.parse().map_err(|_| bad())?
        };
        Ok(C64::new(re, sign * im))
    } else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        Ok(C64::new(re, 0.0))
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!("grid {s:?} is not A:B:STEP")));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad grid start {s:?}")))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad grid stop {s:?}")))?;
    let step: f64 = parts[2]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad grid step {s:?}")))?;
    if !(step > 0.0) || b < a {
        return Err(Error::InvalidInput(format!("degenerate grid {s:?}")));
    }
    let mut out = Vec::new();
    let mut x = a;
    let mut k = 0u64;
    while x <= b + 1e-12 {
        out.push(x);
        k += 1;
        x = a + step * k as f64;
    }
    Ok(out)
}

fn complex_json(v: C64) -> serde_json::Value {
    json!({"re": v.re, "im": v.im})
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SampleRow {
    n: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct KgSamplesFile {
    n_max: usize,
    ux: Vec<SampleRow>,
    uy: Vec<SampleRow>,
}

fn run_cmd(cli: Cli) -> Result<(), Error> {
    let tol = cli.tol;
    let quad = QuadConfig::with_tol(tol);
    let ecfg = EvalConfig {
        abs_tol: tol.min(1e-12),
        ..EvalConfig::default()
    };
    match cli.cmd {
        Cmd::Theta { kind, q, z } => {
            let v = match (q, z) {
                (Some(q), None) => theta::theta(kind, parse_complex(&q)?, &ecfg)?,
                (None, Some(z)) => theta::big_theta(kind, parse_complex(&z)?, &ecfg)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --q or --z".into(),
                    ))
                }
            };
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "kind": kind,
                "value": complex_json(v),
                "error_estimate": ecfg.series_tail_bound,
            });
            emit(&cli.out, &doc.to_string())
        }
        Cmd::Lambda { z, prime } => {
            let zz = parse_complex(&z)?;
            let v = if prime {
                theta::lambda_prime(zz, &ecfg)?
            } else {
                theta::lambda(zz, &ecfg)?
            };
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "z": complex_json(zz),
                "prime": prime,
                "re": v.re,
                "im": v.im,
                "error_estimate": ecfg.series_tail_bound,
            });
            emit(&cli.out, &doc.to_string())
        }
        Cmd::Tau { z, x } => {
            let doc = match (z, x) {
                (Some(z), None) => {
                    let v = hypergeom::schwarz_tau(parse_complex(&z)?)?;
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "value": complex_json(v),
                    })
                }
                (None, Some(x)) => {
                    let v = hypergeom::delta_ratio(x)?;
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "delta": v,
                    })
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --z or --x".into(),
                    ))
                }
            };
            emit(&cli.out, &doc.to_string())
        }
        Cmd::Spoly { n, format } => {
            let basis = FaberBasis::new(n.max(1))?;
            let poly = basis.schwarz_poly(n)?;
            match format.as_str() {
                "json" => {
                    let coeffs: Vec<serde_json::Value> = (1..=n)
                        .map(|k| {
                            let c = poly.coeff(k);
                            json!({"k": k, "value": format!("{}/{}", c.numer(), c.denom())})
                        })
                        .collect();
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "n": n,
                        "coefficients": coeffs,
                    });
                    emit(&cli.out, &doc.to_string())
                }
                "csv" => {
                    let mut s = String::from("k,numerator,denominator\n");
                    for k in 1..=n {
                        let c = poly.coeff(k);
                        s.push_str(&format!("{k},{},{}\n", c.numer(), c.denom()));
                    }
                    emit(&cli.out, s.trim_end())
                }
                other => Err(Error::InvalidInput(format!("unknown format {other}"))),
            }
        }
        Cmd::Cfrac { p, q } => {
            let w = cfrac::even_rational_decompose(p, q)?;
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "p": p,
                "q": q,
                "word": w.entries,
            });
            emit(&cli.out, &doc.to_string())
        }
        Cmd::Classify { z } => {
            let cell = cfrac::classify_point(parse_complex(&z)?, 1e-9)?;
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "kind": match cell.kind { CellKind::EInf => "E_INF", CellKind::EWord => "E_WORD" },
                "shift": cell.shift,
                "word": cell.word.entries,
                "height": cell.height,
            });
            emit(&cli.out, &doc.to_string())
        }
        Cmd::Genfun {
            delta,
            x,
            z,
            contour,
        } => {
            let zz = parse_complex(&z)?;
            let v = match contour.as_str() {
                "strip" => genfun::phi_strip(delta, x, zz, &quad)?,
                "inf" => genfun::phi_inf(delta, x, zz, &quad)?,
                "pi" => genfun::phi_pi(delta, x, zz, &quad)?,
                other => return Err(Error::InvalidInput(format!("unknown contour {other}"))),
            };
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "delta": delta,
                "x": x,
                "z": complex_json(zz),
                "contour": contour,
                "value": complex_json(v),
                "error_estimate": quad.abs_tol,
            });
            emit(&cli.out, &doc.to_string())
        }
        Cmd::Biortho { which, n, grid } => {
            let fam = match which.as_str() {
                "h0" => Family::H0,
                "h" => Family::H,
                "m" => Family::M,
                other => return Err(Error::InvalidInput(format!("unknown family {other}"))),
            };
            let cap = if fam == Family::H0 { 4 } else { n.unsigned_abs() as usize };
            let ev = BiorthoEvaluator::new(Arc::new(FaberBasis::new(cap.max(4))?));
            let xs = parse_grid(&grid)?;
            let rows: Vec<_> = {
                use rayon::prelude::*;
                xs.par_iter()
                    .map(|&x| ev.eval(fam, n, x).map(|v| (x, v)))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let mut s = String::from("x,re,im,error_estimate\n");
            for (x, v) in rows {
                s.push_str(&format!("{x},{},{},{}\n", v.re, v.im, ev.quad.abs_tol));
            }
            emit(&cli.out, s.trim_end())
        }
        Cmd::Hfs { sub } => match sub {
            HfsCmd::Analyze { input, nmax } => {
                let raw = fs::read_to_string(&input)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {input:?}: {e}")))?;
                let mut ts = Vec::new();
                let mut vs = Vec::new();
                for (i, line) in raw.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || (i == 0 && line.starts_with('t')) {
                        continue;
                    }
                    let cols: Vec<&str> = line.split(',').collect();
                    if cols.len() != 3 {
                        return Err(Error::InvalidInput(format!("bad csv row: {line}")));
                    }
                    let t: f64 = cols[0].trim().parse().map_err(|_| {
                        Error::InvalidInput(format!("bad t in row: {line}"))
                    })?;
                    let re: f64 = cols[1].trim().parse().map_err(|_| {
                        Error::InvalidInput(format!("bad re in row: {line}"))
                    })?;
                    let im: f64 = cols[2].trim().parse().map_err(|_| {
                        Error::InvalidInput(format!("bad im in row: {line}"))
                    })?;
                    ts.push(t);
                    vs.push(C64::new(re, im));
                }
                if ts.len() < 2 {
                    return Err(Error::InvalidInput("need at least two samples".into()));
                }
                let a = ts[0];
                let b = *ts.last().unwrap();
                let f = move |x: f64| -> C64 {
                    // piecewise-linear interpolation of the samples
                    if x <= ts[0] || x >= *ts.last().unwrap() {
                        return C64::new(0.0, 0.0);
                    }
                    let i = ts.partition_point(|&t| t < x).max(1);
                    let (t0, t1) = (ts[i - 1], ts[i]);
                    let w = (x - t0) / (t1 - t0);
                    vs[i - 1] * (1.0 - w) + vs[i] * w
                };
                let tf = TestFunction::new(f, Support::Interval(a, b), 1.0);
                let ev = BiorthoEvaluator::new(Arc::new(FaberBasis::new(nmax.max(4))?));
                let coeffs = hfs::analyze(&ev, &tf, nmax)?;
                let h: Vec<serde_json::Value> = (-(nmax as i64)..=nmax as i64)
                    .map(|n| json!({"n": n, "re": coeffs.h(n).re, "im": coeffs.h(n).im}))
                    .collect();
                let m: Vec<serde_json::Value> = (-(nmax as i64)..=nmax as i64)
                    .filter(|&n| n != 0)
                    .map(|n| json!({"n": n, "re": coeffs.m(n).re, "im": coeffs.m(n).im}))
                    .collect();
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "N": nmax,
                    "h": h,
                    "m": m,
                });
                emit(&cli.out, &doc.to_string())
            }
        },
        Cmd::Kg { sub } => match sub {
            KgCmd::Reconstruct { samples, grid } => {
                let raw = fs::read_to_string(&samples).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {samples:?}: {e}"))
                })?;
                let file: KgSamplesFile = serde_json::from_str(&raw)
                    .map_err(|e| Error::InvalidInput(format!("bad samples json: {e}")))?;
                let mut s = KGSamples::zero(file.n_max);
                for row in &file.ux {
                    s.set_ux(row.n, C64::new(row.re, row.im));
                }
                for row in &file.uy {
                    if row.n != 0 {
                        s.set_uy(row.n, C64::new(row.re, row.im));
                    }
                }
                let parts: Vec<&str> = grid.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::InvalidInput(
                        "grid must be X0:X1:NX,Y0:Y1:NY".into(),
                    ));
                }
                let parse_axis = |p: &str| -> Result<Vec<f64>, Error> {
                    let c: Vec<&str> = p.split(':').collect();
                    if c.len() != 3 {
                        return Err(Error::InvalidInput(format!("bad axis {p:?}")));
                    }
                    let a: f64 = c[0].parse().map_err(|_| {
                        Error::InvalidInput(format!("bad axis start {p:?}"))
                    })?;
                    let b: f64 = c[1].parse().map_err(|_| {
                        Error::InvalidInput(format!("bad axis stop {p:?}"))
                    })?;
                    let n: usize = c[2].parse().map_err(|_| {
                        Error::InvalidInput(format!("bad axis count {p:?}"))
                    })?;
                    if n < 1 {
                        return Err(Error::InvalidInput("axis count must be >= 1".into()));
                    }
                    Ok((0..n)
                        .map(|k| {
                            if n == 1 {
                                a
                            } else {
                                a + (b - a) * k as f64 / (n - 1) as f64
                            }
                        })
                        .collect())
                };
                let xs = parse_axis(parts[0])?;
                let ys = parse_axis(parts[1])?;
                let kg = KgEvaluator::new(Arc::new(FaberBasis::new(file.n_max.max(4))?));
                let mut out = String::from("x,y,re,im,error_estimate\n");
                for &x in &xs {
                    for &y in &ys {
                        let p = QuadrantPoint::new(x, y)?;
                        let (v, err) = kg.reconstruct(&s, p)?;
                        out.push_str(&format!("{x},{y},{},{},{err}\n", v.re, v.im));
                    }
                }
                emit(&cli.out, out.trim_end())
            }
        },
        Cmd::Transfer { iterate } => {
            let g = transfer::transfer_iterate_one(iterate, transfer::DEFAULT_NODES, 300)?;
            let mut s = String::from("x,re,im\n");
            for (x, v) in g.nodes.iter().zip(g.values.iter()) {
                s.push_str(&format!("{x},{},{}\n", v.re, v.im));
            }
            emit(&cli.out, s.trim_end())
        }
        Cmd::Selftest { suite } => {
            let report = selftest(&suite)?;
            emit(&cli.out, &report)
        }
    }
}

fn selftest(suite: &str) -> Result<String, Error> {
    let quick = match suite {
        "quick" => true,
        "full" => false,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite {other}; use quick or full"
            )))
        }
    };
    let mut lines = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        lines.push(format!(
            "{} {name} ({detail})",
            if pass { "PASS" } else { "FAIL" }
        ));
    };
    let ecfg = EvalConfig::default();

    let li = theta::lambda(C64::new(0.0, 1.0), &ecfg)?;
    check("lambda(i) = 1/2", (li - 0.5).norm() < 1e-12, format!("{li}"));

    let l2 = theta::lambda(C64::new(0.0, 2.0), &ecfg)?;
    let want = 17.0 - 12.0 * 2.0_f64.sqrt();
    check(
        "lambda(2i) = 17 - 12 sqrt 2",
        (l2.re - want).abs() < 1e-12,
        format!("{}", l2.re),
    );

    let tq = theta::theta(3, C64::new((-std::f64::consts::PI / 2.0).exp(), 0.0), &ecfg)?
        .powu(4);
    let gamma34 = 1.225_416_702_465_177_6_f64;
    let closed = std::f64::consts::PI * (1.0 + 2.0f64.sqrt()).powi(2) / (2.0 * gamma34.powi(4));
    check(
        "theta3(e^{-pi/2})^4 = pi (1+sqrt2)^2 / (2 Gamma(3/4)^4)",
        (tq.re - closed).abs() < 1e-12,
        format!("{}", tq.re),
    );

    let tau = hypergeom::schwarz_tau(C64::new(0.5, 0.0))?;
    check(
        "tau(1/2) = i",
        (tau - C64::new(0.0, 1.0)).norm() < 1e-13,
        format!("{tau}"),
    );

    let basis = FaberBasis::new(8)?;
    let s2 = basis.schwarz_poly(2)?;
    check(
        "S_2 = 256 z^2 - 256 z",
        s2.coeff(2) == num_rational::BigRational::from_integer(256.into())
            && s2.coeff(1) == num_rational::BigRational::from_integer((-256).into()),
        "exact".into(),
    );

    let w = cfrac::even_rational_decompose(3, 8)?;
    check(
        "cfrac(3/8) = (1,-1,-1)",
        w.entries == vec![1, -1, -1],
        format!("{:?}", w.entries),
    );

    let g = transfer::transfer_iterate_one(1, 65, 60)?;
    check(
        "T_1[1](0) = pi^2/12",
        (g.value_at_zero.re - std::f64::consts::PI.powi(2) / 12.0).abs() < 1e-10,
        format!("{}", g.value_at_zero.re),
    );

    if !quick {
        let ev = BiorthoEvaluator::new(Arc::new(basis));
        let (p, _) = ev.periodize(Family::H0, 0, 0.3, 1e-5)?;
        check(
            "2 sum H_0(x+2k) = 1",
            (2.0 * p.re - 1.0).abs() < 1e-5,
            format!("{}", 2.0 * p.re),
        );
        let d = ev.pairing(2, Family::H, 2, 1e-5)?;
        check("pairing (2,2) = 1", (d - 1.0).norm() < 1e-5, format!("{d}"));
    }

    if !ok {
        return Err(Error::ToleranceUnreachable(format!(
            "selftest failures:\n{}",
            lines.join("\n")
        )));
    }
    Ok(lines.join("\n"))
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success status
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cmd(cli) {
        Ok(()) => 0,
        Err(Error::InvalidInput(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(e) => {
            eprintln!("numerical failure: {e}");
            2
        }
    }
}
