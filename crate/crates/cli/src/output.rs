//! Rendering of results in the three output formats. All comparable output
//! is sorted by d and timestamp-free so runs are diffable; CSV uses
//! RFC-style quoting with a mandatory header row; jsonl records use the
//! stable keys d, max_omega, witness_x, pass.

use clap::ValueEnum;
use quadscan_core::classgroup::{
    BinaryQuadraticForm, ClassGroupStructure, HalfUnit, PellSolution,
};
use quadscan_core::omega::{FrVariant, OmegaQuery, OmegaReport};
use quadscan_core::scan::ResultRecord;
use quadscan_core::verify::{TheoremSpec, VerificationReport};
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Jsonl,
}

pub fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn opt(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn print_omega(format: Format, query: &OmegaQuery, report: &OmegaReport) {
    match format {
        Format::Human => {
            println!("d = {}", query.d);
            println!("max_omega = {}", report.max_omega);
            match report.witness_x {
                Some(x) => {
                    println!("witness_x = {x}");
                    if let Some(f) = &report.witness_factorization {
                        let parts: Vec<String> = f
                            .factors
                            .iter()
                            .map(|(p, e)| {
                                if *e == 1 { p.to_string() } else { format!("{p}^{e}") }
                            })
                            .collect();
                        println!("witness_value = {} = {}", f.n, parts.join(" * "));
                    }
                }
                None => println!("witness_x = (empty range)"),
            }
            println!("evaluated = {}", report.evaluated_count);
        }
        Format::Csv => {
            println!("d,max_omega,witness_x,evaluated");
            println!(
                "{},{},{},{}",
                query.d,
                report.max_omega,
                opt(report.witness_x),
                report.evaluated_count
            );
        }
        Format::Jsonl => {
            println!(
                "{}",
                json!({
                    "d": query.d,
                    "max_omega": report.max_omega,
                    "witness_x": report.witness_x,
                    "evaluated": report.evaluated_count,
                })
            );
        }
    }
}

pub fn print_classgroup(
    format: Format,
    s: &ClassGroupStructure,
    forms: &[BinaryQuadraticForm],
) {
    match format {
        Format::Human => {
            println!("discriminant = {}", s.discriminant.value());
            println!("h = {}", s.h);
            if s.elementary_divisors.is_empty() {
                println!("structure = trivial");
            } else {
                let parts: Vec<String> =
                    s.elementary_divisors.iter().map(|d| format!("Z/{d}")).collect();
                println!("structure = {}", parts.join(" x "));
            }
            for (g, d) in s.generators.iter().zip(&s.elementary_divisors) {
                println!("generator {g} of order {d}");
            }
            println!("reduced forms:");
            for f in forms {
                println!("  {f}");
            }
        }
        Format::Csv => {
            println!("a,b,c");
            for f in forms {
                println!("{},{},{}", f.a, f.b, f.c);
            }
        }
        Format::Jsonl => {
            println!(
                "{}",
                json!({
                    "discriminant": s.discriminant.value(),
                    "h": s.h,
                    "elementary_divisors": s.elementary_divisors,
                    "generators": s.generators.iter().map(|f| [f.a, f.b, f.c]).collect::<Vec<_>>(),
                    "reduced_forms": forms.iter().map(|f| [f.a, f.b, f.c]).collect::<Vec<_>>(),
                })
            );
        }
    }
}

pub fn print_realclass(format: Format, discriminant: i64, h: u64) {
    match format {
        Format::Human => {
            println!("discriminant = {discriminant}");
            println!("h = {h}");
        }
        Format::Csv => {
            println!("discriminant,h");
            println!("{discriminant},{h}");
        }
        Format::Jsonl => {
            println!("{}", json!({ "discriminant": discriminant, "h": h }));
        }
    }
}

pub fn print_unit(format: Format, pell: &PellSolution, half: Option<&HalfUnit>) {
    match format {
        Format::Human => {
            println!(
                "fundamental unit of Z[sqrt({})]: {} + {}*sqrt({}), norm {}",
                pell.d, pell.t, pell.u, pell.d, pell.norm_sign
            );
            if let Some(h) = half {
                println!(
                    "fundamental unit of the maximal order: ({} + {}*sqrt({}))/2, norm {}",
                    h.t, h.u, h.d, h.norm_sign
                );
            }
        }
        Format::Csv => {
            println!("d,t,u,norm_sign,half_integer");
            match half {
                Some(h) => println!(
                    "{},{},{},{},{}",
                    h.d,
                    h.t,
                    h.u,
                    h.norm_sign,
                    h.u.bit(0) // odd u means a genuine half-integer unit
                ),
                None => println!("{},{},{},{},false", pell.d, pell.t, pell.u, pell.norm_sign),
            }
        }
        Format::Jsonl => {
            let mut obj = json!({
                "d": pell.d,
                "t": pell.t.to_string(),
                "u": pell.u.to_string(),
                "norm_sign": pell.norm_sign,
            });
            if let Some(h) = half {
                obj["half_t"] = json!(h.t.to_string());
                obj["half_u"] = json!(h.u.to_string());
            }
            println!("{obj}");
        }
    }
}

pub fn print_fr(format: Format, d: u64, variant: FrVariant, holds: bool) {
    let name = match variant {
        FrVariant::ImagOdd => "imag-odd",
        FrVariant::ImagEven => "imag-even",
        FrVariant::Real => "real",
    };
    match format {
        Format::Human => println!("fr({d}, {name}) = {holds}"),
        Format::Csv => {
            println!("d,variant,holds");
            println!("{d},{name},{holds}");
        }
        Format::Jsonl => {
            println!("{}", json!({ "d": d, "variant": name, "holds": holds }));
        }
    }
}

pub fn print_records(format: Format, records: &[ResultRecord]) {
    match format {
        Format::Human => {
            println!("{:>12} {:>9} {:>10} {:>5}", "d", "max_omega", "witness_x", "pass");
            for r in records {
                println!(
                    "{:>12} {:>9} {:>10} {:>5}",
                    r.d,
                    r.max_omega,
                    opt(r.witness_x),
                    r.pass
                );
            }
        }
        Format::Csv => {
            println!("d,max_omega,witness_x,pass");
            for r in records {
                println!("{},{},{},{}", r.d, r.max_omega, opt(r.witness_x), r.pass);
            }
        }
        Format::Jsonl => {
            for r in records {
                println!(
                    "{}",
                    json!({
                        "d": r.d,
                        "max_omega": r.max_omega,
                        "witness_x": r.witness_x,
                        "pass": r.pass,
                    })
                );
            }
        }
    }
}

pub fn print_verification(format: Format, report: &VerificationReport) {
    match format {
        Format::Human => {
            println!("{}: bound {}", report.id, report.bound_used);
            println!(
                "computed {} values; expected match: {}",
                report.computed.len(),
                if report.matched { "yes" } else { "NO" }
            );
            if !report.missing.is_empty() {
                println!("missing: {:?}", report.missing);
            }
            if !report.spurious.is_empty() {
                println!("spurious: {:?}", report.spurious);
            }
            println!("computed: {:?}", report.computed);
            if let Some(c) = &report.caveat {
                println!("caveat: {c}");
            }
            println!("elapsed_ms: {}", report.elapsed_ms);
        }
        Format::Csv => {
            // One d per line; the summary goes to stderr to keep the table clean.
            println!("d");
            for d in &report.computed {
                println!("{d}");
            }
            eprintln!(
                "id,bound,matched,computed,missing,spurious,caveat\n{},{},{},{},{},{},{}",
                csv_escape(&report.id),
                report.bound_used,
                report.matched,
                report.computed.len(),
                report.missing.len(),
                report.spurious.len(),
                csv_escape(report.caveat.as_deref().unwrap_or("")),
            );
        }
        Format::Jsonl => {
            for d in &report.computed {
                println!("{}", json!({ "d": d }));
            }
            println!(
                "{}",
                json!({
                    "id": report.id,
                    "bound": report.bound_used,
                    "matched": report.matched,
                    "computed_count": report.computed.len(),
                    "missing": report.missing,
                    "spurious": report.spurious,
                    "caveat": report.caveat,
                })
            );
        }
    }
}

pub fn print_theorem_list(format: Format, specs: &[TheoremSpec]) {
    match format {
        Format::Human => {
            for s in specs {
                println!(
                    "{:8} {:3} values, bound {:>8}  {}",
                    s.id,
                    s.expected.len(),
                    s.default_bound,
                    s.statement
                );
            }
        }
        Format::Csv => {
            println!("id,values,max_value,default_bound,statement");
            for s in specs {
                println!(
                    "{},{},{},{},{}",
                    csv_escape(s.id),
                    s.expected.len(),
                    s.expected.last().unwrap_or(&0),
                    s.default_bound,
                    csv_escape(s.statement)
                );
            }
        }
        Format::Jsonl => {
            for s in specs {
                println!(
                    "{}",
                    json!({
                        "id": s.id,
                        "values": s.expected.len(),
                        "max_value": s.expected.last(),
                        "default_bound": s.default_bound,
                        "statement": s.statement,
                        "caveat": s.caveat,
                    })
                );
            }
        }
    }
}
