//! Command-line surface: deterministic, machine-readable reports over a
//! configured zero table.
//!
//! Configuration precedence: flags, then a `key=value` config file, then
//! the SZETA_ZEROS environment variable.

use crate::acceptance;
use crate::error::{Error, Result};
use crate::g_function::GEvaluator;
use crate::laurent;
use crate::moments::{dyadic_d, s_tilde, second_moment, DyadicMethod};
use crate::numeric::{fmt_g17, parse_complex};
use crate::smooth_terms::find_zeros;
use crate::specfun::hurwitz_zeta;
use crate::superzeta::{
    e_alpha_contour, m_alpha_direct, zeta_alpha_explicit, ContourSpec, SuperZetaParams,
};
use crate::zero_data::{parse_zero_file, ZeroFileFormat, ZeroTable};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "szeta",
    version,
    about = "Numerics for the secondary zeta function over Riemann zero ordinates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TableArgs {
    /// Path to the zero-ordinate table (overrides config and SZETA_ZEROS).
    #[arg(long, global = true)]
    table: Option<String>,
    /// Config file with key=value lines (zero_table, out_format, quad_min_nodes).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a zero table and report its metadata.
    Ingest(TableArgs),
    /// Evaluate G(s) at a complex point, e.g. --s "2+0i".
    Eval {
        #[command(flatten)]
        common: TableArgs,
        #[arg(long)]
        s: String,
    },
    /// Series data of G at s = 1 up to order J.
    Laurent {
        #[command(flatten)]
        common: TableArgs,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
    },
    /// Second moment of |G(1/2+it)| over [1, T] for each listed T.
    Moment {
        #[command(flatten)]
        common: TableArgs,
        /// Comma-separated list of upper limits T.
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long, default_value_t = 32)]
        grid_density: u32,
    },
    /// Dyadic block mean square D(x) over [1, T].
    Dyadic {
        #[command(flatten)]
        common: TableArgs,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        t: f64,
        /// quadrature, pair_count, weighted_pairs, or all.
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Iterated integrals of the argument function with their constants.
    Stilde {
        #[command(flatten)]
        common: TableArgs,
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
    },
    /// The shifted zero-sum zeta functions at a complex point.
    Super {
        #[command(flatten)]
        common: TableArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        s: String,
        /// direct, explicit, contour, or all.
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// Find critical-line zeros in a window by Riemann-Siegel scanning.
    Zeros {
        #[command(flatten)]
        common: TableArgs,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the acceptance suite, one pass/fail line per criterion.
    Check {
        #[command(flatten)]
        common: TableArgs,
        /// Comma-separated criterion ids (default: all 14).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutFormat {
    Csv,
    Json,
}

struct RunConfig {
    table_path: String,
    format: OutFormat,
    quad_min_nodes: u32,
}

fn read_config_file(path: &str) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)?;
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("{path}:{}: expected key=value, got {line:?}", i + 1))
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

fn resolve_config(common: &TableArgs, default_format: OutFormat) -> Result<RunConfig> {
    let mut table_path = std::env::var("SZETA_ZEROS").ok();
    let mut format = None;
    let mut quad_min_nodes = 32u32;
    if let Some(path) = &common.config {
        for (k, v) in read_config_file(path)? {
            match k.as_str() {
                "zero_table" => table_path = Some(v),
                "out_format" => format = Some(v),
                "quad_min_nodes" => {
                    quad_min_nodes = v
                        .parse()
                        .map_err(|_| Error::Config(format!("bad quad_min_nodes: {v:?}")))?
                }
                other => return Err(Error::Config(format!("unknown config key {other:?}"))),
            }
        }
    }
    if let Some(p) = &common.table {
        table_path = Some(p.clone());
    }
    if let Some(f) = &common.format {
        format = Some(f.clone());
    }
    let format = match format.as_deref() {
        None => default_format,
        Some("csv") => OutFormat::Csv,
        Some("json") => OutFormat::Json,
        Some(other) => return Err(Error::Config(format!("unknown output format {other:?}"))),
    };
    let table_path = table_path.ok_or_else(|| {
        Error::Config("no zero table: pass --table, set zero_table in the config, or SZETA_ZEROS".into())
    })?;
    Ok(RunConfig {
        table_path,
        format,
        quad_min_nodes,
    })
}

fn load_table(cfg: &RunConfig) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(&cfg.table_path)?;
    // detect the labeled two-column layout from the first data line
    let format = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            if l.split_whitespace().count() >= 2 {
                ZeroFileFormat::Labeled
            } else {
                ZeroFileFormat::PlainAscending
            }
        })
        .unwrap_or(ZeroFileFormat::PlainAscending);
    parse_zero_file(&text, format)
}

fn csv_header(table: &ZeroTable) {
    println!(
        "# table={} H={} version=szeta-{VERSION}",
        table.source(),
        fmt_g17(table.ceiling())
    );
}

fn json_meta(table: &ZeroTable) -> String {
    format!(
        "\"table_source\":\"{}\",\"height_ceiling\":{},\"version\":\"szeta-{VERSION}\"",
        table.source().replace('"', "'"),
        fmt_g17(table.ceiling())
    )
}

fn parse_s(s: &str) -> Result<Complex64> {
    parse_complex(s).ok_or_else(|| Error::Config(format!("cannot parse complex number {s:?}")))
}

fn run_command(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest(common) => {
            let cfg = resolve_config(&common, OutFormat::Json)?;
            let table = load_table(&cfg)?;
            match cfg.format {
                OutFormat::Json => println!(
                    "{{{},\"count\":{},\"first\":{},\"last\":{},\"precision_digits\":{}}}",
                    json_meta(&table),
                    table.len(),
                    fmt_g17(table.ordinates()[0]),
                    fmt_g17(*table.ordinates().last().expect("nonempty")),
                    table.precision_digits()
                ),
                OutFormat::Csv => {
                    csv_header(&table);
                    println!("count,first,last,precision_digits");
                    println!(
                        "{},{},{},{}",
                        table.len(),
                        fmt_g17(table.ordinates()[0]),
                        fmt_g17(*table.ordinates().last().expect("nonempty")),
                        table.precision_digits()
                    );
                }
            }
        }
        Command::Eval { common, s } => {
            let cfg = resolve_config(&common, OutFormat::Json)?;
            let table = load_table(&cfg)?;
            let ev = GEvaluator::new(&table);
            let s = parse_s(&s)?;
            let r = ev.g_eval(s)?;
            match cfg.format {
                OutFormat::Json => println!(
                    "{{{},\"value_re\":{},\"value_im\":{},\"abs_error\":{},\"method\":\"{}\"}}",
                    json_meta(&table),
                    fmt_g17(r.value.re),
                    fmt_g17(r.value.im),
                    fmt_g17(r.abs_error),
                    r.method.tag()
                ),
                OutFormat::Csv => {
                    csv_header(&table);
                    println!("value_re,value_im,abs_error,method");
                    println!(
                        "{},{},{},{}",
                        fmt_g17(r.value.re),
                        fmt_g17(r.value.im),
                        fmt_g17(r.abs_error),
                        r.method.tag()
                    );
                }
            }
        }
        Command::Laurent { common, jmax } => {
            let cfg = resolve_config(&common, OutFormat::Csv)?;
            let table = load_table(&cfg)?;
            let ev = GEvaluator::new(&table);
            let lc = laurent::laurent_expansion(&ev, jmax)?;
            csv_header(&table);
            println!("# principal: {},{}", fmt_g17(lc.principal.0), fmt_g17(lc.principal.1));
            println!("# C1: {},{}", fmt_g17(lc.c1.value), fmt_g17(lc.c1.error));
            println!("j,c_j,c_err,b_j,b_err");
            for j in 0..lc.c.len() {
                println!(
                    "{j},{},{},{},{}",
                    fmt_g17(lc.c[j].value),
                    fmt_g17(lc.c[j].error),
                    fmt_g17(lc.b[j].value),
                    fmt_g17(lc.b[j].error)
                );
            }
        }
        Command::Moment {
            common,
            t,
            grid_density,
        } => {
            let cfg = resolve_config(&common, OutFormat::Csv)?;
            let table = load_table(&cfg)?;
            let ev = GEvaluator::new(&table);
            csv_header(&table);
            println!("T,value,method,band_ratio");
            for t in t {
                let r = second_moment(&ev, t, grid_density.max(cfg.quad_min_nodes))?;
                println!(
                    "{},{},{},{}",
                    fmt_g17(r.t),
                    fmt_g17(r.value),
                    r.method,
                    fmt_g17(r.band_ratio)
                );
            }
        }
        Command::Dyadic {
            common,
            x,
            t,
            method,
        } => {
            let cfg = resolve_config(&common, OutFormat::Csv)?;
            let table = load_table(&cfg)?;
            let methods: Vec<DyadicMethod> = match method.as_str() {
                "quadrature" => vec![DyadicMethod::Quadrature],
                "pair_count" => vec![DyadicMethod::PairCount],
                "weighted_pairs" => vec![DyadicMethod::WeightedPairs],
                "all" => vec![
                    DyadicMethod::Quadrature,
                    DyadicMethod::PairCount,
                    DyadicMethod::WeightedPairs,
                ],
                other => return Err(Error::Config(format!("unknown dyadic method {other:?}"))),
            };
            csv_header(&table);
            println!("x,value,method,band_ratio");
            for m in methods {
                let r = dyadic_d(&table, x, t, m)?;
                println!(
                    "{},{},{},{}",
                    fmt_g17(x),
                    fmt_g17(r.value),
                    r.method,
                    fmt_g17(r.band_ratio)
                );
            }
        }
        Command::Stilde { common, m, t } => {
            let cfg = resolve_config(&common, OutFormat::Csv)?;
            let table = load_table(&cfg)?;
            let ev = GEvaluator::new(&table);
            csv_header(&table);
            println!("T,value,method,band_ratio");
            for t in t {
                let v = s_tilde(&ev.sint, m, t)?;
                let lt = t.ln();
                println!(
                    "{},{},s_tilde_{m},{}",
                    fmt_g17(t),
                    fmt_g17(v),
                    fmt_g17(v.abs() / lt.max(1e-300))
                );
            }
        }
        Command::Super {
            common,
            alpha,
            s,
            route,
        } => {
            let cfg = resolve_config(&common, OutFormat::Json)?;
            let table = load_table(&cfg)?;
            let s = parse_s(&s)?;
            let params = SuperZetaParams::new(alpha)?;
            let mut fields = vec![json_meta(&table)];
            let want = |name: &str| route == "all" || route == name;
            if !["all", "direct", "explicit", "contour"].contains(&route.as_str()) {
                return Err(Error::Config(format!("unknown route {route:?}")));
            }
            if want("direct") {
                let r = m_alpha_direct(&table, s, &params)?;
                fields.push(format!(
                    "\"direct_re\":{},\"direct_im\":{},\"direct_err\":{}",
                    fmt_g17(r.value.re),
                    fmt_g17(r.value.im),
                    fmt_g17(r.abs_error)
                ));
                if let Some(w) = r.warning {
                    fields.push(format!("\"direct_warning\":\"{}\"", w.replace('"', "'")));
                }
            }
            if want("explicit") {
                let r = zeta_alpha_explicit(s, alpha, 1_000_000)?;
                fields.push(format!(
                    "\"explicit_re\":{},\"explicit_im\":{},\"explicit_err\":{}",
                    fmt_g17(r.value.re),
                    fmt_g17(r.value.im),
                    fmt_g17(r.abs_error)
                ));
            }
            if want("contour") {
                let e = e_alpha_contour(s, &params, &ContourSpec::default())?;
                let hur = hurwitz_zeta(s, alpha / 2.0 + 1.0)?;
                let v = e.value - (-s * 2.0_f64.ln()).exp() * hur;
                fields.push(format!(
                    "\"contour_re\":{},\"contour_im\":{},\"contour_err\":{}",
                    fmt_g17(v.re),
                    fmt_g17(v.im),
                    fmt_g17(e.abs_error)
                ));
            }
            println!("{{{}}}", fields.join(","));
        }
        Command::Zeros {
            common: _,
            from,
            to,
            tol,
        } => {
            let scan = find_zeros(from, to, tol)?;
            for z in &scan.zeros {
                println!("{z:.8}");
            }
            if let Some(w) = &scan.warning {
                eprintln!("{w}");
            }
        }
        Command::Check { common, criteria } => {
            let cfg = resolve_config(&common, OutFormat::Csv)?;
            let table = load_table(&cfg)?;
            let ev = GEvaluator::new(&table);
            let ids: Vec<u32> = if criteria.is_empty() {
                (1..=14).collect()
            } else {
                criteria
            };
            let results = acceptance::run_selected(&ev, &ids);
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.line());
                all_ok &= r.passed;
            }
            if !all_ok {
                return Err(Error::Inconsistency("one or more criteria failed".into()));
            }
        }
    }
    Ok(())
}

/// Parse argv and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message; usage problems exit 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.name());
            1
        }
    }
}
