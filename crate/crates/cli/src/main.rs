//! `tauforge` command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 enumeration
//! budget exceeded.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use tauforge::crosscheck::{oracle_vs_formula, CountFamily};
use tauforge::hierarchy::{
    deformed_kp1_residual, dispersionless_residual, equation_by_id, h1_linear_residual, hirota_q3, kp_residuals, toda_residual, ResidualReport,
};
use tauforge::maps::{bg_table, hurwitz_asymptotic_check, painleve_check, triangulation_table, triangulation_trend, TrendReport};
use tauforge::schur::schur;
use tauforge::symmetric_group::{bms_oracle, double_hurwitz_oracle, generalized_oracle, hurwitz_oracle, ko_multiply, monotonic_oracle, Budget, KoElement};
use tauforge::tau::{genus_expansion, genus_part, named_params, orlov_shcherbin_tau, Family, TauParams, TodaFamily};
use tauforge::{Aux, Error, Partition, Series, Truncation};

#[derive(Parser, Debug)]
#[command(name = "tauforge", version, about = "Exact combinatorial tau-functions, hierarchy checks and enumeration oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation weight (joint p/q weight).
    #[arg(long, global = true)]
    weight: Option<i64>,
    /// Degree bound for the family's auxiliary parameters (defaults to the weight).
    #[arg(long, global = true)]
    aux_degree: Option<i64>,
    /// hurwitz, monotonic, n-function, generalized(m), bms(m); `oracle` also takes double.
    #[arg(long, global = true)]
    family: Option<String>,
    /// Partition as `[3,1,1]` or `3 1^2`. Repeat for two-argument commands.
    #[arg(long, global = true)]
    partition: Vec<String>,
    #[arg(long, global = true)]
    n: Option<i64>,
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true)]
    g: Option<u32>,
    #[arg(long, global = true)]
    nmax: Option<u64>,
    #[arg(long, global = true)]
    gmax: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Enumeration budget for the oracles.
    #[arg(long, global = true, env = "TAUFORGE_BUDGET")]
    budget: Option<u128>,
    /// Equation id: kp.4, kp.5a, kp.6a, kp.6b, kp (all), kp.deformed, kp.dispersionless, kp.h1, hirota.q3, toda.p1q1, painleve.1.
    #[arg(long, global = true)]
    equation: Option<String>,
    /// Content weights as φ coefficients `d0,d1,...` (rationals), instead of --family.
    #[arg(long, global = true)]
    phi: Option<String>,
    /// Connected counts / log of the tau-function.
    #[arg(long, global = true)]
    connected: bool,
    /// Tau-function to check, as written by `tau --format json`, instead of --family/--phi.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orlov–Shcherbin tau-function (or its log with --connected).
    Tau,
    /// Evaluate a hierarchy equation; exit 1 unless the residual vanishes.
    Check,
    /// Brute-force factorization counts in S_n.
    Oracle,
    /// Compare oracle counts with tau-function coefficients; exit 1 on any difference.
    OracleVsFormula,
    /// Rooted triangulation counts t(n,g) and T(n,g).
    Triangulations,
    /// The constants b_g.
    Bg,
    /// Formal Painlevé I check of the b_g.
    Painleve,
    /// Exact vs. leading-order asymptotics (--family triangulations|hurwitz).
    Asymptotics,
    /// Schur polynomial in the power sums.
    Schur,
    /// Product of two Kerov–Olshanski basis elements.
    KoMultiply,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

/// A computed result in all three renderings.
struct Artifact {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    plain: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Budget(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Parse { .. } | Error::NonPositivePart(_) | Error::InvalidArgument(_) | Error::InsufficientTruncation(_) | Error::UnboundedAux(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<Artifact, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn require<T: Clone>(v: &Option<T>, flag: &str, cmd: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| usage(format!("{cmd} requires --{flag}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match result {
        Ok(art) => match emit(&cli, &art) {
            Ok(()) => ExitCode::from(if art.ok { 0 } else { 1 }),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, art: &Artifact) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&art.json).expect("json values serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&art.header)?;
            for r in &art.rows {
                w.write_record(r)?;
            }
            w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?
        }
        Format::Plain => {
            let mut s = art.plain.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s.into_bytes()
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(&text),
    }
}

fn run(cli: &Cli) -> Outcome {
    match cli.command {
        Command::Tau => cmd_tau(cli),
        Command::Check => cmd_check(cli),
        Command::Oracle => cmd_oracle(cli),
        Command::OracleVsFormula => cmd_oracle_vs_formula(cli),
        Command::Triangulations => cmd_triangulations(cli),
        Command::Bg => cmd_bg(cli),
        Command::Painleve => {
            let report = painleve_check(cli.gmax.unwrap_or(6));
            Ok(reports_artifact(vec![report]))
        }
        Command::Asymptotics => cmd_asymptotics(cli),
        Command::Schur => cmd_schur(cli),
        Command::KoMultiply => cmd_ko(cli),
    }
}

fn budget(cli: &Cli) -> Budget {
    cli.budget.map(Budget).unwrap_or_default()
}

fn weight(cli: &Cli, default: i64) -> Result<i64, Failure> {
    let w = cli.weight.unwrap_or(default);
    if w < 0 {
        return Err(usage("--weight must be nonnegative"));
    }
    Ok(w)
}

fn partitions_arg(cli: &Cli) -> Result<Vec<Partition>, Failure> {
    cli.partition.iter().map(|s| s.parse::<Partition>().map_err(Failure::from)).collect()
}

/// Truncation with the family's aux parameters bounded by `aux`.
fn family_truncation(kind: Option<Family>, w: i64, aux: i64) -> Truncation {
    let t = Truncation::new(w);
    match kind {
        Some(Family::Generalized(m)) => (1..=m as u8).fold(t, |t, i| t.with_aux(Aux::Ui(i), aux)),
        _ => t.with_aux(Aux::U, aux),
    }
}

fn parse_phi(text: &str, trunc: &Truncation) -> Result<TauParams, Failure> {
    let d = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<BigRational>()
                .map(|c| Series::constant(c, trunc.clone()))
                .map_err(|_| usage(format!("--phi: {s:?} is not a rational")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TauParams::Phi(d))
}

/// Weights and truncation from --family/--phi, --weight and --aux-degree.
fn params(cli: &Cli, default_weight: i64) -> Result<(TauParams, Truncation, String), Failure> {
    let w = weight(cli, default_weight)?;
    let aux = cli.aux_degree.unwrap_or(w);
    if aux < 0 {
        return Err(usage("--aux-degree must be nonnegative"));
    }
    match (&cli.family, &cli.phi) {
        (Some(_), Some(_)) => Err(usage("give either --family or --phi")),
        (None, Some(phi)) => {
            let t = Truncation::new(w);
            Ok((parse_phi(phi, &t)?, t, "phi".to_string()))
        }
        (Some(f), None) => {
            let kind: Family = f.parse()?;
            let t = family_truncation(Some(kind), w, aux);
            Ok((named_params(kind, &BTreeMap::new(), &t)?, t, kind.to_string()))
        }
        (None, None) => Err(usage("this command requires --family or --phi")),
    }
}

fn series_artifact(label: Value, s: &Series) -> Artifact {
    let rows = s.iter().map(|(m, c)| vec![m.to_string(), c.to_string()]).collect();
    let mut json = label;
    json["series"] = serde_json::to_value(s).expect("series serializes");
    Artifact { json, header: vec!["monomial", "coeff"], rows, plain: s.to_string(), ok: true }
}

fn cmd_tau(cli: &Cli) -> Outcome {
    let (y, trunc, name) = params(cli, 4)?;
    let tau = orlov_shcherbin_tau(&y, &trunc)?;
    let s = if cli.connected { tau.log()? } else { tau };
    Ok(series_artifact(json!({ "family": name, "connected": cli.connected }), &s))
}

fn reports_artifact(reports: Vec<ResidualReport>) -> Artifact {
    let ok = reports.iter().all(|r| r.pass);
    let rows = reports
        .iter()
        .map(|r| vec![r.id.clone(), if r.pass { "pass" } else { "fail" }.to_string(), r.max_weight.to_string(), r.residual.len().to_string()])
        .collect();
    let plain = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Artifact {
        json: json!({ "pass": ok, "reports": reports }),
        header: vec!["id", "status", "exact_through_weight", "residual_terms"],
        rows,
        plain,
        ok,
    }
}

/// The tau-function from --input, or built from --family/--phi.
fn tau_arg(cli: &Cli, default_weight: i64) -> Result<Series, Failure> {
    let Some(path) = &cli.input else {
        let (y, trunc, _) = params(cli, default_weight)?;
        return Ok(orlov_shcherbin_tau(&y, &trunc)?);
    };
    if cli.family.is_some() || cli.phi.is_some() {
        return Err(usage("give either --input or --family/--phi"));
    }
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("--input {}: {e}", path.display())))?;
    let mut v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("--input {}: {e}", path.display())))?;
    if let Some(inner) = v.get_mut("series") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| usage(format!("--input {}: not a series: {e}", path.display())))
}

fn cmd_check(cli: &Cli) -> Outcome {
    let id = require(&cli.equation, "equation", "check")?;
    let reports = match id.as_str() {
        "painleve.1" => vec![painleve_check(cli.gmax.unwrap_or(6))],
        "toda.p1q1" => {
            let w = weight(cli, 5)?;
            let aux = cli.aux_degree.unwrap_or(w);
            let (y, trunc) = match (&cli.family, &cli.phi) {
                (None, None) => {
                    let t = Truncation::new(w).with_aux(Aux::U, aux);
                    (named_params(Family::Hurwitz, &BTreeMap::new(), &t)?, t)
                }
                _ => {
                    let (y, t, _) = params(cli, 5)?;
                    (y, t)
                }
            };
            let fam = TodaFamily::new(y, trunc);
            vec![toda_residual(&fam, cli.n.unwrap_or(0))?]
        }
        "hirota.q3" => vec![hirota_q3(&tau_arg(cli, 6)?)?],
        "kp.deformed" | "kp.dispersionless" | "kp.h1" => {
            let (y, trunc, _) = params(cli, 6)?;
            let genus = cli.g.unwrap_or(1);
            let exp = genus_expansion(&y, &trunc.with_aux(Aux::Hbar, 2 * genus as i64))?;
            match id.as_str() {
                "kp.deformed" => vec![deformed_kp1_residual(&exp)?],
                "kp.dispersionless" => vec![dispersionless_residual(&genus_part(&exp, 0))?],
                _ => vec![h1_linear_residual(&genus_part(&exp, 0), &genus_part(&exp, 1))?],
            }
        }
        "kp" => {
            let f = tau_arg(cli, 8)?.log()?;
            let upto = (f.truncation().weight() - 2).min(6);
            kp_residuals(&f, upto)?
        }
        other => {
            let eq = equation_by_id(other).ok_or_else(|| usage(format!("unknown --equation {other:?}")))?;
            let f = tau_arg(cli, eq.weight() + 2)?.log()?;
            if f.truncation().weight() < eq.weight() + 2 {
                return Err(usage(format!("{other} needs --weight at least {}", eq.weight() + 2)));
            }
            vec![eq.residual(&[&f])?]
        }
    };
    Ok(reports_artifact(reports))
}

fn size_arg(flag: &str, v: Option<i64>) -> Result<usize, Failure> {
    let v = v.ok_or_else(|| usage(format!("this command requires --{flag}")))?;
    usize::try_from(v).map_err(|_| usage(format!("--{flag} must be nonnegative")))
}

fn count_rows(entries: Vec<(String, BigRational)>) -> (Vec<Vec<String>>, Value, String) {
    let rows: Vec<Vec<String>> = entries.iter().map(|(k, c)| vec![k.clone(), c.to_string()]).collect();
    let json = Value::Array(entries.iter().map(|(k, c)| json!({ "key": k, "count": c.to_string() })).collect());
    let plain = entries.iter().map(|(k, c)| format!("{k}\t{c}")).collect::<Vec<_>>().join("\n");
    (rows, json, plain)
}

fn cmd_oracle(cli: &Cli) -> Outcome {
    let n = size_arg("n", cli.n)?;
    let fam = require(&cli.family, "family", "oracle")?;
    let b = budget(cli);
    let c = cli.connected;
    let entries: Vec<(String, BigRational)> = if fam.starts_with("generalized") {
        let ks = partitions_arg(cli)?;
        let ks = ks.first().ok_or_else(|| usage("generalized oracle takes the degeneracies as --partition"))?;
        generalized_oracle(n, ks.parts(), c, b)?.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    } else {
        let m = require(&cli.m, "m", "oracle")?;
        match fam.parse::<CountFamily>()? {
            CountFamily::Hurwitz => hurwitz_oracle(n, m, c, b)?.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            CountFamily::Monotonic => monotonic_oracle(n, m, c, b)?.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            CountFamily::Bms(f) => {
                if f as usize != m {
                    return Err(usage(format!("bms({f}) needs --m {f}")));
                }
                bms_oracle(n, m, c, b)?.into_iter().map(|((k, mu), v)| (format!("k={k} {mu}"), v)).collect()
            }
            CountFamily::Double => double_hurwitz_oracle(n, m, c, b)?.into_iter().map(|((mu, nu), v)| (format!("{mu} {nu}"), v)).collect(),
        }
    };
    let entries: Vec<_> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let (rows, counts, plain) = count_rows(entries);
    Ok(Artifact {
        json: json!({ "family": fam, "n": n, "m": cli.m, "connected": c, "counts": counts }),
        header: vec!["key", "count"],
        rows,
        plain,
        ok: true,
    })
}

fn cmd_oracle_vs_formula(cli: &Cli) -> Outcome {
    let n = size_arg("n", cli.n)?;
    let m = require(&cli.m, "m", "oracle-vs-formula")?;
    let fam: CountFamily = require(&cli.family, "family", "oracle-vs-formula")?.parse()?;
    let cmp = oracle_vs_formula(fam, n, m, cli.connected, budget(cli))?;
    let rows = cmp.rows.iter().map(|r| vec![r.key.clone(), r.oracle.to_string(), r.formula.to_string()]).collect();
    Ok(Artifact {
        json: serde_json::to_value(&cmp).expect("comparison serializes"),
        header: vec!["key", "oracle", "formula"],
        rows,
        plain: cmp.to_string(),
        ok: cmp.identical,
    })
}

fn cmd_triangulations(cli: &Cli) -> Outcome {
    let n_max = require(&cli.nmax, "nmax", "triangulations")? as i64;
    let g_max = cli.gmax.map(i64::from).unwrap_or((n_max + 1) / 2);
    let tab = triangulation_table(n_max, g_max);
    let rows: Vec<Vec<String>> = tab.rows().into_iter().map(|(n, g, t, tt)| vec![n.to_string(), g.to_string(), t.to_string(), tt.to_string()]).collect();
    let json_rows: Vec<Value> = rows.iter().map(|r| json!({ "n": r[0].parse::<i64>().ok(), "g": r[1].parse::<i64>().ok(), "t": r[2], "T": r[3] })).collect();
    let plain = rows.iter().map(|r| r.join("\t")).collect::<Vec<_>>().join("\n");
    Ok(Artifact {
        json: json!({ "n_max": n_max, "g_max": g_max, "rows": json_rows }),
        header: vec!["n", "g", "t", "T"],
        rows,
        plain,
        ok: true,
    })
}

fn cmd_bg(cli: &Cli) -> Outcome {
    let b = bg_table(cli.gmax.unwrap_or(4));
    let rows: Vec<Vec<String>> = b.iter().enumerate().map(|(g, v)| vec![g.to_string(), v.to_string()]).collect();
    let plain = rows.iter().map(|r| r.join("\t")).collect::<Vec<_>>().join("\n");
    Ok(Artifact {
        json: json!({ "b": b.iter().map(|v| v.to_string()).collect::<Vec<_>>() }),
        header: vec!["g", "b"],
        rows,
        plain,
        ok: true,
    })
}

fn cmd_asymptotics(cli: &Cli) -> Outcome {
    let g = cli.g.unwrap_or(0);
    let which = cli.family.as_deref().unwrap_or("triangulations");
    let report: TrendReport = match which {
        "triangulations" => triangulation_trend(cli.nmax.unwrap_or(200), g)?,
        "hurwitz" => hurwitz_asymptotic_check(cli.nmax.unwrap_or(20), g)?,
        other => return Err(usage(format!("asymptotics --family must be triangulations or hurwitz, got {other:?}"))),
    };
    let rows = report.ratios.iter().map(|(n, r)| vec![n.to_string(), format!("{r:.12e}")]).collect();
    Ok(Artifact {
        json: serde_json::to_value(&report).expect("report serializes"),
        header: vec!["n", "ratio"],
        rows,
        plain: report.to_string(),
        ok: report.pass,
    })
}

fn cmd_schur(cli: &Cli) -> Outcome {
    let parts = partitions_arg(cli)?;
    let [mu] = parts.as_slice() else {
        return Err(usage("schur takes exactly one --partition"));
    };
    let trunc = Truncation::new(weight(cli, mu.size() as i64)?);
    Ok(series_artifact(json!({ "partition": mu.to_string() }), &schur(mu, &trunc)))
}

fn cmd_ko(cli: &Cli) -> Outcome {
    let parts = partitions_arg(cli)?;
    let [a, b] = parts.as_slice() else {
        return Err(usage("ko-multiply takes exactly two --partition flags"));
    };
    let prod = ko_multiply(&KoElement::basis(a), &KoElement::basis(b))?;
    let entries: Vec<(String, BigRational)> = prod.coeffs().iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let rows = entries.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect();
    let plain = entries.iter().map(|(k, v)| format!("{v}*C{k}")).collect::<Vec<_>>().join(" + ");
    Ok(Artifact {
        json: json!({ "left": a.to_string(), "right": b.to_string(), "product": entries.iter().map(|(k, v)| json!({ "partition": k, "coeff": v.to_string() })).collect::<Vec<_>>() }),
        header: vec!["partition", "coeff"],
        rows,
        plain,
        ok: true,
    })
}
