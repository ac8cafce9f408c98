//! CSV and plain-text renderings of payloads.

use std::fmt::Write as _;

use hurwitz_core::Partition;
use hurwitz_core::scalar::{decimal_hint, parse_rational};
use hurwitz_core::wire::{
    CertificateJson, DivisorClassJson, HurwitzClassJson, OracleJson, Payload, PairTermJson, RecipeJson, ScanRowJson,
    HURWITZ_CSV_HEADER, SCAN_CSV_HEADER,
};

fn table<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields")
}

fn mu_text(mu: &[u32]) -> String {
    let parts: Vec<String> = mu.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn hinted(value: &str) -> String {
    match parse_rational(value) {
        Ok(r) => format!("{value} ({})", decimal_hint(&r)),
        Err(_) => value.to_string(),
    }
}

fn divisor_rows(c: &DivisorClassJson) -> Vec<[String; 2]> {
    c.coefficients.iter().map(|t| [t.basis.clone(), t.value.clone()]).collect()
}

fn hurwitz_rows(c: &HurwitzClassJson) -> Vec<[String; 5]> {
    c.coefficients
        .iter()
        .map(|t| {
            let m = Partition::new(t.mu.clone()).map(|p| p.lcm().to_string()).unwrap_or_default();
            [t.i.to_string(), mu_text(&t.mu), m, t.value.clone(), t.prime.to_string()]
        })
        .collect()
}

fn pair_rows(terms: &[PairTermJson]) -> Vec<[String; 3]> {
    terms.iter().map(|t| [t.basis[0].clone(), t.basis[1].clone(), t.value.clone()]).collect()
}

fn recipe_rows(r: &RecipeJson) -> Vec<[String; 2]> {
    let mut rows = vec![
        ["name".to_string(), r.name.clone()],
        ["g".to_string(), r.g.to_string()],
        ["slope".to_string(), r.slope.clone()],
    ];
    rows.extend(divisor_rows(&r.class));
    rows
}

fn certificate_rows(c: &CertificateJson) -> Vec<[String; 6]> {
    c.indices
        .iter()
        .map(|m| {
            [
                m.i.to_string(),
                mu_text(&m.mu),
                m.margin.clone(),
                m.sigma_bound.to_string(),
                m.sharp.to_string(),
                m.note.clone().unwrap_or_default(),
            ]
        })
        .collect()
}

fn oracle_row(o: &OracleJson) -> [String; 6] {
    [o.k.to_string(), mu_text(&o.mu), o.i.to_string(), o.count.clone(), o.feasible.to_string(), o.agree.to_string()]
}

pub fn scan_csv(rows: &[ScanRowJson]) -> String {
    table(SCAN_CSV_HEADER, rows.iter().map(ScanRowJson::csv_record))
}

pub fn csv(payload: &Payload) -> String {
    match payload {
        Payload::DivisorClass(c) => table(["basis", "value"], divisor_rows(c)),
        Payload::QuadraticClass(q) => table(["left", "right", "value"], pair_rows(&q.coefficients)),
        Payload::HurwitzClass(c) => table(HURWITZ_CSV_HEADER, hurwitz_rows(c)),
        Payload::DivisorRecipe(r) => table(["field", "value"], recipe_rows(r)),
        Payload::BignessCertificate(c) => {
            table(["i", "mu", "margin", "sigma_bound", "sharp", "note"], certificate_rows(c))
        }
        Payload::ScanTable(rows) => scan_csv(rows),
        Payload::Oracle(o) => table(["k", "mu", "i", "count", "feasible", "agree"], [oracle_row(o)]),
    }
}

pub fn text(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::DivisorClass(c) => {
            let _ = writeln!(out, "class on {}", c.space);
            for t in &c.coefficients {
                let _ = writeln!(out, "  {:<12} {}", t.basis, hinted(&t.value));
            }
        }
        Payload::QuadraticClass(q) => {
            for t in &q.coefficients {
                let _ = writeln!(out, "  {}*{}  {}", t.basis[0], t.basis[1], hinted(&t.value));
            }
        }
        Payload::HurwitzClass(c) => {
            let _ = writeln!(out, "class on H_{}^{}", c.g, c.k);
            for [i, mu, m, value, prime] in hurwitz_rows(c) {
                let tick = if prime == "true" { "'" } else { "" };
                let _ = writeln!(out, "  E{tick}[{i}:{mu}]  m={m}  {}", hinted(&value));
            }
        }
        Payload::DivisorRecipe(r) => {
            let _ = writeln!(out, "{} on M_{}, slope {}", r.name, r.g, hinted(&r.slope));
            for t in &r.class.coefficients {
                let _ = writeln!(out, "  {:<12} {}", t.basis, hinted(&t.value));
            }
            for h in &r.hypotheses {
                let _ = writeln!(out, "  hypothesis: {h}");
            }
        }
        Payload::BignessCertificate(c) => {
            let _ = writeln!(out, "{} certificate for H_{}^{}: {}", c.mode, c.g, c.k, c.verdict);
            let _ = writeln!(out, "  slope {}", hinted(&c.slope));
            if let (Some(name), Some(s)) = (&c.recipe, &c.recipe_slope) {
                let _ = writeln!(out, "  divisor {name}, slope {}", hinted(s));
            }
            let _ = writeln!(out, "  alpha {}", hinted(&c.alpha));
            for m in &c.indices {
                let note = m.note.as_deref().map(|n| format!("  [{n}]")).unwrap_or_default();
                let _ = writeln!(out, "  E[{}:{}]  {}{note}", m.i, mu_text(&m.mu), hinted(&m.margin));
            }
            for h in &c.hypotheses {
                let _ = writeln!(out, "  hypothesis: {h}");
            }
        }
        Payload::ScanTable(rows) => {
            for r in rows {
                let slope = r.slope.as_deref().map(hinted).unwrap_or_else(|| "-".to_string());
                let recipe = r.recipe.as_deref().unwrap_or("-");
                let _ = writeln!(
                    out,
                    "g={:<3} k={:<3} {recipe:<15} {slope:<28} stack={:<10} coarse={}",
                    r.g, r.k, r.stack_verdict, r.coarse_verdict
                );
            }
        }
        Payload::Oracle(o) => {
            let _ = writeln!(
                out,
                "k={} mu={} i={}: count {}, feasible {}, agree {}",
                o.k,
                mu_text(&o.mu),
                o.i,
                o.count,
                o.feasible,
                o.agree
            );
        }
    }
    out
}
