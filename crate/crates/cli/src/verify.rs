use clap::ValueEnum;
use pell_core::agm::{gauss_check, invariance_check, lemma_ij_check, prop_ek_check, MeanKind};
use pell_core::pelliptic::{landen_check, legendre_defect, ode_suite, ramanujan_defect, Landen};
use pell_core::{IdentityReport, PExponent, PrecisionContext, Real};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::parse_p;
use crate::{Config, Failure, Outcome, Output};

pub const K_GRID: [&str; 5] = ["0.1", "0.3", "0.5", "0.7", "0.9"];
pub const P_GRID: [&str; 4] = ["2", "2.5", "3", "4"];
pub const X_GRID: [&str; 6] = ["0", "0.1", "0.2", "0.3", "0.4", "0.5"];
const STEPS: [u32; 3] = [0, 1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Legendre,
    LandenI,
    LandenIi,
    LandenIii,
    LandenIv,
    LemmaIj,
    Invariance,
    PropEk,
    Ode,
    Ramanujan,
    GaussP2,
    K3Formula,
    K4Formula,
}

/// One grid point; some produce several reports.
enum Job {
    Legendre(PExponent, Real),
    Landen(Landen, Real),
    LemmaIj(Real, Real, u32),
    Invariance(MeanKind, Real, Real, u32),
    PropEk(Real, Real),
    Ode(PExponent, Real),
    Ramanujan(Real),
    Gauss(MeanKind, Real),
}

impl Job {
    fn run(&self, ctx: &PrecisionContext) -> pell_core::Result<Vec<IdentityReport>> {
        Ok(match self {
            Job::Legendre(p, k) => vec![legendre_defect(p, k, ctx)?],
            Job::Landen(which, k) => vec![landen_check(*which, k, ctx)?],
            Job::LemmaIj(a, b, n) => vec![lemma_ij_check(a, b, *n, ctx)?],
            Job::Invariance(kind, a, b, n) => vec![invariance_check(*kind, a, b, *n, ctx)?],
            Job::PropEk(a, b) => vec![prop_ek_check(a, b, ctx)?],
            Job::Ode(p, k) => ode_suite(p, k, ctx)?,
            Job::Ramanujan(x) => vec![ramanujan_defect(x, ctx)?],
            Job::Gauss(kind, k) => vec![gauss_check(*kind, k, ctx)?],
        })
    }
}

fn parse_all(items: &[&str], ctx: &PrecisionContext) -> Result<Vec<Real>, Failure> {
    items.iter().map(|s| Ok(ctx.parse(s)?)).collect()
}

fn moduli(cfg: &Config) -> Result<Vec<Real>, Failure> {
    match &cfg.k {
        Some(k) => Ok(vec![cfg.ctx.parse(k)?]),
        None => parse_all(&K_GRID, &cfg.ctx),
    }
}

fn exponents(cfg: &Config) -> Result<Vec<PExponent>, Failure> {
    match parse_p(cfg)? {
        Some(p) => Ok(vec![p]),
        None => parse_all(&P_GRID, &cfg.ctx)?.into_iter().map(|p| Ok(PExponent::new(p)?)).collect(),
    }
}

/// `(a, b)` from the flags, or `(1, 2^(-1/4))`, `(1, 1/2)` and `(3/2, 1/2)`.
fn pairs(cfg: &Config) -> Result<Vec<(Real, Real)>, Failure> {
    let ctx = &cfg.ctx;
    match (&cfg.a, &cfg.b) {
        (Some(a), Some(b)) => Ok(vec![(ctx.parse(a)?, ctx.parse(b)?)]),
        (None, None) => {
            let wp = ctx.work_bits();
            let quartic = ctx.frac(1, 2).nth_root(4, wp)?;
            Ok(vec![(ctx.int(1), quartic), (ctx.int(1), ctx.frac(1, 2)), (ctx.frac(3, 2), ctx.frac(1, 2))])
        }
        _ => Err(Failure::Usage("--a and --b go together".into())),
    }
}

/// Rejects `--p` unless it equals the exponent the identity is stated for.
fn fixed_p(cfg: &Config, want: u32) -> Result<(), Failure> {
    match parse_p(cfg)? {
        Some(p) if p.as_int() != Some(want) => Err(Failure::Usage(format!("this identity holds for p = {want} only"))),
        _ => Ok(()),
    }
}

fn kinds(cfg: &Config) -> Result<Vec<MeanKind>, Failure> {
    match parse_p(cfg)? {
        None => Ok(vec![MeanKind::P2, MeanKind::P3, MeanKind::P4]),
        Some(p) => p
            .as_int()
            .and_then(MeanKind::from_p)
            .map(|k| vec![k])
            .ok_or_else(|| Failure::Usage("mean iterations exist for p = 2, 3, 4 only".into())),
    }
}

fn jobs(identity: Identity, cfg: &Config) -> Result<Vec<Job>, Failure> {
    let landen = |which: Landen| -> Result<Vec<Job>, Failure> {
        fixed_p(cfg, 4)?;
        Ok(moduli(cfg)?.into_iter().map(|k| Job::Landen(which, k)).collect())
    };
    let gauss = |kind: MeanKind| -> Result<Vec<Job>, Failure> {
        fixed_p(cfg, kind.p())?;
        Ok(moduli(cfg)?.into_iter().map(|k| Job::Gauss(kind, k)).collect())
    };
    let grid = |make: fn(PExponent, Real) -> Job| -> Result<Vec<Job>, Failure> {
        let ks = moduli(cfg)?;
        Ok(exponents(cfg)?.into_iter().flat_map(|p| ks.iter().map(move |k| make(p.clone(), k.clone()))).collect())
    };
    Ok(match identity {
        Identity::Legendre => grid(Job::Legendre)?,
        Identity::Ode => grid(Job::Ode)?,
        Identity::LandenI => landen(Landen::I)?,
        Identity::LandenIi => landen(Landen::II)?,
        Identity::LandenIii => landen(Landen::III)?,
        Identity::LandenIv => landen(Landen::IV)?,
        Identity::GaussP2 => gauss(MeanKind::P2)?,
        Identity::K3Formula => gauss(MeanKind::P3)?,
        Identity::K4Formula => gauss(MeanKind::P4)?,
        Identity::LemmaIj => {
            fixed_p(cfg, 4)?;
            let ps = pairs(cfg)?;
            ps.iter().flat_map(|(a, b)| STEPS.map(|n| Job::LemmaIj(a.clone(), b.clone(), n))).collect()
        }
        Identity::PropEk => {
            fixed_p(cfg, 4)?;
            pairs(cfg)?.into_iter().map(|(a, b)| Job::PropEk(a, b)).collect()
        }
        Identity::Invariance => {
            let ps = pairs(cfg)?;
            let mut out = Vec::new();
            for kind in kinds(cfg)? {
                for (a, b) in &ps {
                    out.extend(STEPS.map(|n| Job::Invariance(kind, a.clone(), b.clone(), n + 1)));
                }
            }
            out
        }
        Identity::Ramanujan => parse_all(&X_GRID, &cfg.ctx)?.into_iter().map(Job::Ramanujan).collect(),
    })
}

/// Short label for an input value; inputs are grid points, not results.
fn label(v: &Real) -> String {
    v.to_f64().to_string()
}

#[derive(Serialize)]
struct ReportRecord {
    identity: &'static str,
    inputs: serde_json::Map<String, serde_json::Value>,
    lhs: String,
    rhs: String,
    abs_defect: String,
    rel_defect: String,
    tol: String,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyRecord {
    bits: usize,
    pass: bool,
    checks: Vec<ReportRecord>,
}

const DEFECT_DIGITS: usize = 3;

fn record(r: &IdentityReport, digits: usize) -> ReportRecord {
    ReportRecord {
        identity: r.identity.name(),
        inputs: r.inputs.iter().map(|(n, v)| (n.to_string(), serde_json::Value::from(v.to_f64()))).collect(),
        lhs: r.lhs.to_decimal(digits),
        rhs: r.rhs.to_decimal(digits),
        abs_defect: r.abs_defect.to_decimal(DEFECT_DIGITS),
        rel_defect: r.rel_defect.to_decimal(DEFECT_DIGITS),
        tol: r.tol.to_decimal(DEFECT_DIGITS),
        pass: r.pass,
    }
}

fn text_line(r: &IdentityReport) -> String {
    let mut parts = vec![r.identity.name().to_string()];
    parts.extend(r.inputs.iter().map(|(n, v)| format!("{n}={}", label(v))));
    parts.push(format!("defect={}", r.abs_defect.to_decimal(DEFECT_DIGITS)));
    parts.push(format!("tol={}", r.tol.to_decimal(DEFECT_DIGITS)));
    parts.push(if r.pass { "PASS" } else { "FAIL" }.to_string());
    parts.join(" ") + "\n"
}

pub fn run(identity: Identity, cfg: &Config) -> Result<Outcome, Failure> {
    let jobs = jobs(identity, cfg)?;
    // grid points are independent; collect keeps them in grid order
    let reports: Vec<IdentityReport> = jobs
        .par_iter()
        .map(|j| j.run(&cfg.ctx))
        .collect::<pell_core::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    render(&reports, cfg)
}

pub fn render(reports: &[IdentityReport], cfg: &Config) -> Result<Outcome, Failure> {
    let pass = reports.iter().all(|r| r.pass);
    let stdout = match cfg.output {
        Output::Text => reports.iter().map(text_line).collect(),
        Output::Json => {
            let rec = VerifyRecord { bits: cfg.ctx.bits(), pass, checks: reports.iter().map(|r| record(r, cfg.digits)).collect() };
            serde_json::to_string_pretty(&rec)? + "\n"
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["identity", "inputs", "lhs", "rhs", "abs_defect", "rel_defect", "tol", "pass"])?;
            for r in reports {
                let rec = record(r, cfg.digits);
                let inputs: Vec<String> = r.inputs.iter().map(|(n, v)| format!("{n}={}", label(v))).collect();
                w.write_record([
                    rec.identity,
                    &inputs.join(" "),
                    &rec.lhs,
                    &rec.rhs,
                    &rec.abs_defect,
                    &rec.rel_defect,
                    &rec.tol,
                    if rec.pass { "true" } else { "false" },
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Numerical(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Failure::Numerical(e.to_string()))?
        }
    };
    Ok(Outcome { stdout, pass })
}
