use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::checks::OracleLine;
use super::colmez::{colmez_factor, constant, field_colmez_factors, ColmezFactor};
use crate::dirichlet::{AbelianFieldSpec, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::special::evaluation::EvaluationWire;
use crate::special::{BigFloat, Evaluation, Route};

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Character(DirichletCharacter),
    Field(AbelianFieldSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub target: Target,
    pub n: u32,
    /// Opaque rational multiplicity of the factor; 1 when absent.
    pub weight: Option<Rational>,
}

impl ReportEntry {
    pub fn character(chi: DirichletCharacter, n: u32) -> Self {
        ReportEntry { target: Target::Character(chi), n, weight: None }
    }

    pub fn field(field: AbelianFieldSpec, n: u32) -> Self {
        ReportEntry { target: Target::Field(field), n, weight: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowData {
    pub factors: Vec<ColmezFactor>,
    /// Sum of the factor totals.
    pub total: Evaluation,
    /// `-weight * total`, the signed scalar of the conjectural statement.
    pub signed_value: Evaluation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub entry: ReportEntry,
    pub outcome: std::result::Result<RowData, Error>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub entries: Vec<ReportRow>,
    pub oracles: Vec<OracleLine>,
}

fn evaluate(entry: &ReportEntry, prec: usize) -> Result<RowData> {
    let factors = match &entry.target {
        Target::Character(chi) => vec![colmez_factor(chi, entry.n, prec)?],
        Target::Field(field) => field_colmez_factors(field, entry.n, prec)?,
    };
    let mut total = factors[0].total.clone();
    for f in &factors[1..] {
        total = total.add(&f.total, f.total.route);
    }
    let weight = entry.weight.clone().unwrap_or_else(Rational::one);
    let signed_value = total.scale(&BigFloat::from_rational(&-weight, prec + 32));
    Ok(RowData { factors, total, signed_value })
}

/// Colmez factors for each entry, evaluated in parallel and reported in
/// input order. Failing entries carry their error; the others are unaffected.
pub fn conjecture_report(entries: &[ReportEntry], prec: usize) -> Report {
    let rows = entries
        .par_iter()
        .map(|e| ReportRow { entry: e.clone(), outcome: evaluate(e, prec) })
        .collect();
    Report { entries: rows, oracles: Vec::new() }
}

#[derive(Serialize)]
struct TermWire {
    term: String,
    value: EvaluationWire,
}

fn terms_of(f: &ColmezFactor, prec: usize) -> Vec<TermWire> {
    let h = constant(BigFloat::from_rational(&f.harmonic_term, prec + 32), prec).with_route(Route::Exact);
    let h = Evaluation { error_bound: BigFloat::zero(64), ..h };
    vec![
        TermWire { term: format!("L'/L({}, {})", f.chi.label(), 1 - f.n as i64), value: f.logderiv.to_wire() },
        TermWire { term: format!("H_{}/2", f.n - 1), value: h.to_wire() },
        TermWire { term: format!("{} log 2/(1 - 2^-{})", f.c_chi(), f.n), value: f.log2_term.to_wire() },
    ]
}

impl Serialize for ReportRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match &self.entry.target {
            Target::Character(chi) => {
                map.serialize_entry("kind", "character")?;
                map.serialize_entry("chi", chi)?;
            }
            Target::Field(field) => {
                map.serialize_entry("kind", "field")?;
                map.serialize_entry("field", field)?;
            }
        }
        map.serialize_entry("n", &self.entry.n)?;
        map.serialize_entry("weight", &self.entry.weight.clone().unwrap_or_else(Rational::one))?;
        match &self.outcome {
            Ok(data) => {
                let prec = data.total.prec_bits;
                match &self.entry.target {
                    Target::Character(_) => {
                        map.serialize_entry("factor", &data.factors[0])?;
                        map.serialize_entry("decomposition", &terms_of(&data.factors[0], prec))?;
                    }
                    Target::Field(_) => {
                        map.serialize_entry("factor", &FieldFactorWire { total: data.total.to_wire() })?;
                        map.serialize_entry("decomposition", &data.factors)?;
                    }
                }
                map.serialize_entry("signed_value", &data.signed_value.to_wire())?;
                map.serialize_entry("status", "ok")?;
            }
            Err(e) => {
                map.serialize_entry("status", "error")?;
                map.serialize_entry("error", &ErrorWire { code: e.code(), message: e.to_string() })?;
            }
        }
        map.end()
    }
}

#[derive(Serialize)]
struct FieldFactorWire {
    total: EvaluationWire,
}

#[derive(Serialize)]
pub struct ErrorWire {
    pub code: &'static str,
    pub message: String,
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("entries", &self.entries)?;
        map.serialize_entry("oracles", &self.oracles)?;
        map.end()
    }
}

impl Report {
    /// One CSV row per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,target,n,weight,total,error_bound,route,signed_value,status\n");
        for row in &self.entries {
            let (kind, target) = match &row.entry.target {
                Target::Character(chi) => ("character", chi.label()),
                Target::Field(f) => ("field", f.label()),
            };
            let weight = row.entry.weight.clone().unwrap_or_else(Rational::one);
            let (total, bound, route, signed, status) = match &row.outcome {
                Ok(d) => {
                    let w = d.total.to_wire();
                    (w.value.re, w.error_bound, d.total.route.as_str().to_string(), d.signed_value.to_wire().value.re, "ok".into())
                }
                Err(e) => (String::new(), String::new(), String::new(), String::new(), format!("error:{}", e.code())),
            };
            out.push_str(&format!("{kind},{target},{},{weight},{total},{bound},{route},{signed},{status}\n", row.entry.n));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::quadratic_character;

    #[test]
    fn two_rows_and_excluded_row() {
        let entries = vec![
            ReportEntry::character(DirichletCharacter::trivial(1), 2),
            ReportEntry::character(quadratic_character(-4).unwrap(), 1),
            ReportEntry::character(DirichletCharacter::trivial(1), 1),
        ];
        let r = conjecture_report(&entries, 128);
        assert_eq!(r.entries.len(), 3);
        let first = r.entries[0].outcome.as_ref().unwrap();
        let direct = colmez_factor(&DirichletCharacter::trivial(1), 2, 128).unwrap();
        assert_eq!(first.factors[0], direct);
        assert_eq!(first.signed_value.value, direct.total.neg().value);
        assert!(r.entries[1].outcome.is_ok());
        assert_eq!(r.entries[2].outcome, Err(Error::ExcludedCase));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["entries"][2]["error"]["code"], "excluded_case");
        assert_eq!(json["entries"][0]["status"], "ok");
        assert_eq!(r.to_csv().lines().count(), 4);
    }

    #[test]
    fn empty() {
        let r = conjecture_report(&[], 128);
        assert!(r.entries.is_empty());
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"entries":[],"oracles":[]}"#);
    }
}
