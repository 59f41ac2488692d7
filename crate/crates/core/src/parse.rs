//! Text forms of characters and fields accepted on the command line.
//!
//! Characters: `trivial`, `D:<disc>` for the Kronecker symbol of a
//! fundamental discriminant, or `<q>:<e1>,<e2>,...` giving exponents on the
//! canonical generators of `(Z/qZ)^*`. Fields: `D:<disc>`, `<f>:<g1>,...`
//! listing generators of the subgroup `H`, or the JSON object form.

use serde::Deserialize;

use crate::conjecture::{ReportEntry, Target};
use crate::dirichlet::{quadratic_character, AbelianFieldSpec, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::Rational;

fn as_parse(e: Error) -> Error {
    match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    }
}

fn int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| int(p, what)).collect()
}

fn discriminant(text: &str) -> Option<&str> {
    text.strip_prefix("D:").or_else(|| text.strip_prefix("d:"))
}

pub fn parse_chi_spec(text: &str) -> Result<DirichletCharacter> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("trivial") {
        return Ok(DirichletCharacter::trivial(1));
    }
    if let Some(d) = discriminant(t) {
        return quadratic_character(int(d, "discriminant")?).map_err(as_parse);
    }
    let (q, exps) = t.split_once(':').ok_or_else(|| Error::Parse(format!("bad character {text:?}")))?;
    let q: u64 = int(q, "modulus")?;
    DirichletCharacter::new(q, &list::<i64>(exps, "exponent")?).map_err(as_parse)
}

pub fn parse_field_spec(text: &str) -> Result<AbelianFieldSpec> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
    }
    if let Some(d) = discriminant(t) {
        return AbelianFieldSpec::quadratic(int(d, "discriminant")?);
    }
    let (f, gens) = t.split_once(':').ok_or_else(|| Error::Parse(format!("bad field {text:?}")))?;
    AbelianFieldSpec::new(int(f, "conductor")?, list(gens, "generator")?)
}

/// `chi=<spec>;n=<n>[;weight=<r>]` or `field=<spec>;n=<n>[;weight=<r>]`.
pub fn parse_report_entry(text: &str) -> Result<ReportEntry> {
    let mut target = None;
    let mut n = None;
    let mut weight = None;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad entry field {part:?}")))?;
        let slot_taken = match k.trim() {
            "chi" => target.replace(Target::Character(parse_chi_spec(v)?)).is_some(),
            "field" => target.replace(Target::Field(parse_field_spec(v)?)).is_some(),
            "n" => n.replace(int::<u32>(v, "n")?).is_some(),
            "weight" => weight.replace(Rational::parse(v.trim())?).is_some(),
            other => return Err(Error::Parse(format!("unknown entry key {other:?}"))),
        };
        if slot_taken {
            return Err(Error::Parse(format!("repeated key in entry {text:?}")));
        }
    }
    let target = target.ok_or_else(|| Error::Parse(format!("entry {text:?} names no chi or field")))?;
    let n = n.ok_or_else(|| Error::Parse(format!("entry {text:?} has no n")))?;
    Ok(ReportEntry { target, n, weight })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    chi: Option<String>,
    field: Option<String>,
    n: u32,
    weight: Option<String>,
}

/// A JSON array of `{"chi" | "field": <spec>, "n": <n>, "weight"?: <r>}`.
pub fn parse_report_spec(json: &str) -> Result<Vec<ReportEntry>> {
    let raw: Vec<EntryJson> = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    raw.into_iter()
        .map(|e| {
            let target = match (e.chi, e.field) {
                (Some(c), None) => Target::Character(parse_chi_spec(&c)?),
                (None, Some(f)) => Target::Field(parse_field_spec(&f)?),
                _ => return Err(Error::Parse("each entry needs exactly one of chi, field".into())),
            };
            let weight = e.weight.as_deref().map(Rational::parse).transpose()?;
            Ok(ReportEntry { target, n: e.n, weight })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters() {
        assert!(parse_chi_spec("trivial").unwrap().is_trivial());
        let c = parse_chi_spec("D:-4").unwrap();
        assert_eq!(c.label(), "4:1");
        assert_eq!(parse_chi_spec(" 4:1 ").unwrap(), c);
        assert_eq!(parse_chi_spec("5:2").unwrap().order(), 2);
        for bad in ["", "D:9", "D:x", "4", "4:1,1", "0:", "x:1", "4:1,"] {
            assert!(matches!(parse_chi_spec(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field_spec("D:5").unwrap().degree(), 2);
        assert_eq!(parse_field_spec("8:7").unwrap().degree(), 2);
        assert_eq!(parse_field_spec("1:").unwrap().degree(), 1);
        let j = parse_field_spec(r#"{"conductor":5,"subgroup_gens":[4]}"#).unwrap();
        assert_eq!(j, parse_field_spec("D:5").unwrap());
        assert!(parse_field_spec("7:2,x").is_err());
        assert!(parse_field_spec("{").is_err());
    }

    #[test]
    fn entries() {
        let e = parse_report_entry("chi=12:1,1; n=2; weight=1/2").unwrap();
        assert_eq!(e.n, 2);
        assert_eq!(e.weight, Some(Rational::frac(1, 2)));
        assert!(matches!(e.target, Target::Character(_)));
        assert!(matches!(parse_report_entry("field=D:5;n=2").unwrap().target, Target::Field(_)));
        for bad in ["", "n=2", "chi=D:5", "chi=D:5;n=2;n=3", "chi=D:5;field=D:5;n=2", "chi=D:5;n=2;x=1"] {
            assert!(parse_report_entry(bad).is_err(), "{bad}");
        }
        let v = parse_report_spec(r#"[{"chi":"D:-4","n":1},{"field":"D:5","n":2,"weight":"3"}]"#).unwrap();
        assert_eq!(v.len(), 2);
        assert!(parse_report_spec(r#"[{"n":1}]"#).is_err());
        assert!(parse_report_spec(r#"[{"chi":"D:-4","n":1,"extra":0}]"#).is_err());
    }
}
