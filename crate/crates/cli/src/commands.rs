use pell_core::agm::{self, AgmTrace, MeanKind};
use pell_core::piformulas::{self, DigitsResult, Method};
use pell_core::{ptrig, PExponent, Real};
use serde::Serialize;

use crate::{Config, Failure, Outcome, Output, PiMethod, TraceKind};

/// One computed constant, as printed in JSON and CSV.
#[derive(Serialize)]
struct DigitsRecord<'a> {
    method: &'a str,
    digits: usize,
    value: String,
    iterations: u32,
    bits: usize,
}

fn print_digits(method: &str, value: &Real, iterations: u32, cfg: &Config) -> Result<Outcome, Failure> {
    let rec = DigitsRecord {
        method,
        digits: cfg.digits,
        value: value.to_decimal(cfg.digits),
        iterations,
        bits: cfg.ctx.bits(),
    };
    let stdout = match cfg.output {
        Output::Text => format!("{}\n", rec.value),
        Output::Json => serde_json::to_string_pretty(&rec)? + "\n",
        Output::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&rec)?;
            into_string(w)?
        }
    };
    Ok(Outcome { stdout, pass: true })
}

fn print_result(r: &DigitsResult, cfg: &Config) -> Result<Outcome, Failure> {
    print_digits(r.method.name(), &r.value, r.iterations_used, cfg)
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| Failure::Numerical(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Numerical(e.to_string()))
}

pub fn pi(method: PiMethod, times_sqrt2: bool, cfg: &Config) -> Result<Outcome, Failure> {
    let method = match (method, times_sqrt2) {
        (PiMethod::Pi4, true) => Method::PiViaPi4,
        (_, true) => return Err(Failure::Usage("--times-sqrt2 applies only to --method pi4".into())),
        (PiMethod::Machin, false) => Method::Machin,
        (PiMethod::SalaminBrent, false) => Method::SalaminBrent,
        (PiMethod::Pi4, false) => Method::Pi4,
    };
    print_result(&piformulas::compute(method, &cfg.ctx)?, cfg)
}

pub fn parse_p(cfg: &Config) -> Result<Option<PExponent>, Failure> {
    cfg.p.as_deref().map(|s| Ok(PExponent::new(cfg.ctx.parse(s)?)?)).transpose()
}

pub fn pip(via_agm: bool, cfg: &Config) -> Result<Outcome, Failure> {
    let p = parse_p(cfg)?.ok_or_else(|| Failure::Usage("pip needs --p".into()))?;
    if !via_agm {
        return print_digits("CLOSED_FORM", &ptrig::pi_p(&p, &cfg.ctx)?, 0, cfg);
    }
    let r = match p.as_int() {
        Some(3) => piformulas::pi3_formula(&cfg.ctx)?,
        Some(4) => piformulas::pi4_formula(&cfg.ctx)?,
        _ => return Err(Failure::Usage("--via agm needs p = 3 or p = 4".into())),
    };
    print_result(&r, cfg)
}

#[derive(Serialize)]
struct Row {
    n: u32,
    a: String,
    b: String,
    c: String,
}

#[derive(Serialize)]
struct TraceRecord {
    kind: String,
    rows: Vec<Row>,
    limit: String,
}

fn trace_record(trace: &AgmTrace, digits: usize) -> TraceRecord {
    TraceRecord {
        kind: trace.kind().to_string(),
        rows: trace
            .rows()
            .iter()
            .map(|r| Row { n: r.n, a: r.a.to_decimal(digits), b: r.b.to_decimal(digits), c: r.c.to_decimal(digits) })
            .collect(),
        limit: trace.limit().to_decimal(digits),
    }
}

pub fn trace(kind: TraceKind, a: &str, b: &str, cfg: &Config) -> Result<Outcome, Failure> {
    let kind = match kind {
        TraceKind::P2 => MeanKind::P2,
        TraceKind::P3 => MeanKind::P3,
        TraceKind::P4 => MeanKind::P4,
    };
    let (a, b) = (cfg.ctx.parse(a)?, cfg.ctx.parse(b)?);
    let rec = trace_record(&agm::run(kind, &a, &b, &cfg.ctx)?, cfg.digits);
    let stdout = match cfg.output {
        Output::Json => serde_json::to_string_pretty(&rec)? + "\n",
        Output::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            for row in &rec.rows {
                w.serialize(row)?;
            }
            w.write_record(["limit", rec.limit.as_str()])?;
            into_string(w)?
        }
        Output::Text => {
            let mut s = String::new();
            for r in &rec.rows {
                s += &format!("{} {} {} {}\n", r.n, r.a, r.b, r.c);
            }
            s + &format!("limit {}\n", rec.limit)
        }
    };
    Ok(Outcome { stdout, pass: true })
}
