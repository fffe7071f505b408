//! Records and their JSON Lines, CSV and text renderings. Field order is
//! fixed per record kind and shared by all three formats.

use serde_json::Value;
use sclab_core::claims::{CongruenceReport, ProofChain};
use sclab_core::hyperkernel::IdentityTrial;
use sclab_core::qring::QConjectureReport;
use sclab_core::Valuation;

use crate::args::Format;

/// Rows of one record kind under a fixed header.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn witness(v: Valuation) -> Value {
    match v {
        Valuation::Finite(n) => Value::from(n),
        Valuation::Infinite => Value::from("inf"),
    }
}

pub const CONGRUENCE_HEADERS: [&str; 10] = [
    "claim",
    "p",
    "r",
    "modulus_exponent",
    "case_label",
    "lhs_residue",
    "rhs_residue",
    "witness_valuation",
    "pass",
    "elapsed_ms",
];

pub fn congruence_table(reports: &[CongruenceReport], test_mode: bool) -> Table {
    let rows = reports
        .iter()
        .map(|rep| {
            let elapsed = if test_mode { 0 } else { rep.elapsed.as_millis() as u64 };
            vec![
                Value::from(rep.claim.as_str()),
                Value::from(rep.p),
                rep.r.map_or(Value::Null, Value::from),
                Value::from(rep.modulus_exponent),
                Value::from(rep.case_label.clone()),
                Value::from(rep.lhs_residue.to_string()),
                Value::from(rep.rhs_residue.to_string()),
                witness(rep.witness),
                Value::from(rep.pass),
                Value::from(elapsed),
            ]
        })
        .collect();
    Table { headers: CONGRUENCE_HEADERS.to_vec(), rows }
}

pub fn identity_table(trials: &[IdentityTrial]) -> Table {
    let rows = trials
        .iter()
        .map(|t| {
            vec![
                Value::from(t.identity.as_str()),
                Value::from(t.trial),
                Value::from(t.parameters.clone()),
                Value::from(t.resamples),
                Value::from(t.holds),
            ]
        })
        .collect();
    Table { headers: vec!["identity", "trial", "parameters", "resamples", "holds"], rows }
}

pub fn qverify_table(rep: &QConjectureReport) -> Table {
    Table {
        headers: vec!["p", "r", "exponent_shift", "ring_zero", "cleared_divisible", "phi_multiplicity", "verdict"],
        rows: vec![vec![
            Value::from(rep.p),
            Value::from(rep.r),
            Value::from(rep.exponent_shift),
            Value::from(rep.ring_zero),
            Value::from(rep.cleared_divisible),
            Value::from(rep.phi_multiplicity),
            Value::from(rep.verdict.as_str()),
        ]],
    }
}

pub fn chain_table(chain: &ProofChain) -> Table {
    let rows = chain
        .steps
        .iter()
        .map(|s| {
            vec![
                Value::from(chain.claim.as_str()),
                Value::from(chain.p),
                Value::from(chain.r),
                Value::from(s.step),
                s.modulus_exponent.map_or(Value::Null, Value::from),
                witness(s.witness),
                Value::from(s.pass),
                Value::from(s.description.clone()),
            ]
        })
        .collect();
    Table {
        headers: vec!["claim", "p", "r", "step", "modulus_exponent", "witness_valuation", "pass", "description"],
        rows,
    }
}

/// Cell text for CSV and text output: strings unquoted, null empty.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn json_lines(t: &Table) -> String {
    let mut out = String::new();
    for row in &t.rows {
        let fields: Vec<String> = t
            .headers
            .iter()
            .zip(row)
            .map(|(h, v)| format!("{}:{}", Value::from(*h), v))
            .collect();
        out.push('{');
        out.push_str(&fields.join(","));
        out.push_str("}\n");
    }
    out
}

fn csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row.iter().map(plain)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn text(t: &Table) -> String {
    let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
    let widths: Vec<usize> = t
        .headers
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|r| r[i].chars().count()).fold(h.len(), usize::max))
        .collect();
    let line = |fields: Vec<&str>| {
        let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(t.headers.clone());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn render(t: &Table, format: Format) -> String {
    match format {
        Format::Json => json_lines(t),
        Format::Csv => csv(t),
        Format::Text => text(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            headers: vec!["claim", "r", "lhs_residue", "witness_valuation"],
            rows: vec![vec![Value::from("lr3"), Value::Null, Value::from("12"), Value::from("inf")]],
        }
    }

    #[test]
    fn json_keeps_field_order() {
        assert_eq!(
            render(&sample(), Format::Json),
            "{\"claim\":\"lr3\",\"r\":null,\"lhs_residue\":\"12\",\"witness_valuation\":\"inf\"}\n"
        );
    }

    #[test]
    fn csv_and_text() {
        assert_eq!(render(&sample(), Format::Csv), "claim,r,lhs_residue,witness_valuation\nlr3,,12,inf\n");
        assert_eq!(
            render(&sample(), Format::Text),
            "claim  r  lhs_residue  witness_valuation\nlr3       12           inf\n"
        );
    }
}
