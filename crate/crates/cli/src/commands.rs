use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use lfactor_core::conjecture::{
    colmez_factor, conjecture_report, prop22_coefficient, prop23_coefficient, run_suite, ColmezFactor,
    DegreeCoefficient, OracleLine, Suite, Target, VerifyReport,
};
use lfactor_core::dirichlet::DirichletCharacter;
use lfactor_core::exact::{CycloElem, Rational};
use lfactor_core::lfunctions::{gen_bernoulli, l_exact_nonpos, l_logderiv_neg, l_pair, LogDerivResult};
use lfactor_core::parse::{parse_chi_spec, parse_field_spec, parse_report_entry, parse_report_spec};
use lfactor_core::special::{BigComplex, BigFloat, Evaluation};
use lfactor_core::Error;

use crate::{Config, Failure, Output, SuiteArg};

type CmdResult = Result<String, Failure>;

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

/// `value ± bound [route, bits]`, with the imaginary part only when nonzero.
fn show(e: &Evaluation) -> String {
    let w = e.to_wire();
    let v = if e.value.im.is_zero() { w.value.re } else { format!("{} + {} i", w.value.re, w.value.im) };
    format!("{v} ± {} [{}, {} bits]", w.error_bound, e.route.as_str(), e.prec_bits)
}

fn csv_eval(label: &str, e: &Evaluation) -> String {
    let w = e.to_wire();
    format!("{label},{},{},{},{},{}\n", w.value.re, w.value.im, w.error_bound, e.route.as_str(), e.prec_bits)
}

const CSV_EVAL_HEADER: &str = "quantity,re,im,error_bound,route,prec_bits\n";

#[derive(Serialize)]
struct LValueOut<'a> {
    chi: &'a DirichletCharacter,
    s: SWire,
    value: Evaluation,
    derivative: Evaluation,
}

#[derive(Serialize)]
struct SWire {
    re: Rational,
    im: Rational,
}

pub fn lvalue(cfg: &Config, chi: &str, s_re: &str, s_im: &str) -> CmdResult {
    let chi = parse_chi_spec(chi)?;
    let (re, im) = (Rational::parse(s_re)?, Rational::parse(s_im)?);
    let wp = cfg.prec() + 32;
    let s = BigComplex::new(BigFloat::from_rational(&re, wp), BigFloat::from_rational(&im, wp));
    let (value, derivative) = l_pair(&s, &chi, cfg.prec())?;
    let label = chi.label();
    Ok(match cfg.output {
        Output::Json => json(&LValueOut { chi: &chi, s: SWire { re, im }, value, derivative }),
        Output::Csv => {
            CSV_EVAL_HEADER.to_string() + &csv_eval("value", &value) + &csv_eval("derivative", &derivative)
        }
        Output::Text => format!("L({label}, s) = {}\nL'({label}, s) = {}\n", show(&value), show(&derivative)),
    })
}

pub fn ldlog(cfg: &Config, chi: &str, n: u32) -> CmdResult {
    let chi = parse_chi_spec(chi)?;
    let r: LogDerivResult = l_logderiv_neg(n, &chi, cfg.prec(), cfg.routes.into())?;
    Ok(match cfg.output {
        Output::Json => json(&r),
        Output::Csv => {
            let mut out = CSV_EVAL_HEADER.to_string() + &csv_eval("value", &r.value);
            if let Some(a) = &r.route_a {
                out += &csv_eval("direct", a);
            }
            if let Some(b) = &r.route_b {
                out += &csv_eval("functional", b);
            }
            out
        }
        Output::Text => {
            let mut out = format!("L'/L({}, {}) = {}\n", r.chi.label(), 1 - n as i64, show(&r.value));
            if let Some(a) = &r.route_a {
                let _ = writeln!(out, "  direct:     {}", show(a));
            }
            if let Some(b) = &r.route_b {
                let _ = writeln!(out, "  functional: {}", show(b));
            }
            if let Some(g) = &r.agreement {
                let _ = writeln!(out, "  agreement:  {}", g.to_decimal(6));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct BernoulliOut<'a> {
    n: u32,
    chi: &'a DirichletCharacter,
    value: String,
    cyclotomic: &'a CycloElem,
    /// `L(chi, 1 - n)`, when defined.
    l_value: Option<String>,
}

pub fn bernoulli(cfg: &Config, chi: &str, n: u32) -> CmdResult {
    let chi = parse_chi_spec(chi)?;
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()).into());
    }
    let b = gen_bernoulli(n, &chi);
    let l = l_exact_nonpos(n, &chi).ok().map(|v| v.to_string());
    let value = b.value.to_string();
    Ok(match cfg.output {
        Output::Json => json(&BernoulliOut { n, chi: &chi, value, cyclotomic: &b.value, l_value: l }),
        Output::Csv => format!("n,chi,value,l_value\n{n},{},{value},{}\n", chi.label(), l.unwrap_or_default()),
        Output::Text => format!("{value}\n"),
    })
}

fn factor_text(f: &ColmezFactor) -> String {
    let mut out = format!("factor({}, n={}) = {}\n", f.chi.label(), f.n, show(&f.total));
    let _ = writeln!(out, "  L'/L({}, {}) = {}", f.chi.label(), 1 - f.n as i64, show(&f.logderiv));
    let _ = writeln!(out, "  H_{}/2 = {} [exact]", f.n - 1, f.harmonic_term);
    let _ = writeln!(out, "  {} log 2/(1 - 2^-{}) = {}", f.c_chi(), f.n, show(&f.log2_term));
    out
}

pub fn factor(cfg: &Config, chi: &str, n: u32) -> CmdResult {
    let chi = parse_chi_spec(chi)?;
    let f = colmez_factor(&chi, n, cfg.prec())?;
    Ok(match cfg.output {
        Output::Json => json(&f),
        Output::Csv => {
            CSV_EVAL_HEADER.to_string()
                + &csv_eval("total", &f.total)
                + &csv_eval("logderiv", &f.logderiv)
                + &format!("harmonic_term,{},0,0,exact,{}\n", f.harmonic_term, f.total.prec_bits)
                + &csv_eval("log2_term", &f.log2_term)
        }
        Output::Text => factor_text(&f),
    })
}

fn coefficient_out(cfg: &Config, c: &DegreeCoefficient) -> String {
    match cfg.output {
        Output::Json => json(c),
        Output::Csv => {
            let mut out = CSV_EVAL_HEADER.to_string() + &csv_eval("coefficient", &c.value);
            out += &csv_eval("zeta_k_term", &c.zeta_k_term);
            for t in &c.decomposition {
                out += &csv_eval(&format!("chi {}", t.chi.label()), &t.value);
            }
            out
        }
        Output::Text => {
            let mut out = format!("coefficient (d = {}) = {}\n", c.d, show(&c.value));
            let _ = writeln!(out, "  zeta_K'/zeta_K(-1) = {}", show(&c.zeta_k_term));
            for t in &c.decomposition {
                let _ = writeln!(out, "    L'/L({}, -1) = {}", t.chi.label(), show(&t.value));
            }
            out
        }
    }
}

pub fn prop22(cfg: &Config, field: &str) -> CmdResult {
    let field = parse_field_spec(field)?;
    Ok(coefficient_out(cfg, &prop22_coefficient(&field, cfg.prec())?))
}

pub fn prop23(cfg: &Config) -> CmdResult {
    Ok(coefficient_out(cfg, &prop23_coefficient(cfg.prec())?))
}

fn suite_of(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::All => Suite::All,
        SuiteArg::Lerch => Suite::Lerch,
        SuiteArg::Factorization => Suite::Factorization,
        SuiteArg::Gross => Suite::Gross,
        SuiteArg::Kernels => Suite::Kernels,
    }
}

fn oracle_csv(lines: &[OracleLine]) -> String {
    let mut out = String::from("name,residual,tolerance,pass\n");
    for l in lines {
        let r = l.residual.as_ref().map(|r| r.to_decimal(6)).unwrap_or_default();
        let _ = writeln!(out, "\"{}\",{r},{},{}", l.name.replace('"', "'"), l.tolerance.to_decimal(6), l.pass);
    }
    out
}

fn oracle_text(lines: &[OracleLine]) -> String {
    let mut out = String::new();
    for l in lines {
        let r = l.residual.as_ref().map(|r| r.to_decimal(6)).unwrap_or_else(|| "-".into());
        let status = if l.pass { "PASS" } else { "FAIL" };
        let _ = write!(out, "{status}  {}  residual {r}  tolerance {}", l.name, l.tolerance.to_decimal(6));
        if let Some(n) = &l.note {
            let _ = write!(out, "  ({n})");
        }
        out.push('\n');
    }
    out
}

pub fn verify(cfg: &Config, suite: SuiteArg) -> CmdResult {
    let report: VerifyReport = run_suite(suite_of(suite), cfg.prec());
    let out = match cfg.output {
        Output::Json => json(&report),
        Output::Csv => oracle_csv(&report.lines),
        Output::Text => oracle_text(&report.lines),
    };
    if report.all_pass() {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}

pub fn report(
    cfg: &Config,
    entries: &[String],
    spec: Option<&Path>,
    chis: &[String],
    fields: &[String],
    n: Option<u32>,
    suite: Option<SuiteArg>,
) -> CmdResult {
    let mut list = Vec::new();
    if let Some(path) = spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        list.extend(parse_report_spec(&text)?);
    }
    for e in entries {
        list.push(parse_report_entry(e)?);
    }
    if !chis.is_empty() || !fields.is_empty() {
        let n = n.ok_or_else(|| Error::Parse("--chi and --field in report need --n".into()))?;
        for c in chis {
            list.push(lfactor_core::conjecture::ReportEntry::character(parse_chi_spec(c)?, n));
        }
        for f in fields {
            list.push(lfactor_core::conjecture::ReportEntry::field(parse_field_spec(f)?, n));
        }
    }
    let mut report = conjecture_report(&list, cfg.prec());
    if let Some(s) = suite {
        report.oracles = run_suite(suite_of(s), cfg.prec()).lines;
    }
    let out = match cfg.output {
        Output::Json => json(&report),
        Output::Csv => {
            let mut out = report.to_csv();
            if !report.oracles.is_empty() {
                out.push('\n');
                out += &oracle_csv(&report.oracles);
            }
            out
        }
        Output::Text => {
            let mut out = String::new();
            for row in &report.entries {
                let target = match &row.entry.target {
                    Target::Character(c) => format!("chi {}", c.label()),
                    Target::Field(f) => format!("field {}", f.label()),
                };
                match &row.outcome {
                    Ok(d) => {
                        let _ = writeln!(out, "{target} n={}: {}", row.entry.n, show(&d.total));
                        let _ = writeln!(out, "  signed: {}", show(&d.signed_value));
                    }
                    Err(e) => {
                        let _ = writeln!(out, "{target} n={}: error {} ({e})", row.entry.n, e.code());
                    }
                }
            }
            out + &oracle_text(&report.oracles)
        }
    };
    if report.oracles.iter().all(|l| l.pass) {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}
