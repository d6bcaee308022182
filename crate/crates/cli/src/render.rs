//! Output formatting for the three `--format` modes.

use std::fmt::Write as _;

use serde::Serialize;

use mulambda::families::{rows_to_csv, CrossCheck, FamilyRow};
use mulambda::property::ClassReport;

use crate::Format;

#[derive(Clone, Debug, Serialize)]
pub struct ClassJson {
    pub class: usize,
    pub rep_order: usize,
    pub class_size: usize,
    pub normalizer_order: usize,
    pub mu: i64,
    pub lambda: i64,
    pub t: u64,
    pub maxint: bool,
    pub pass: bool,
}

impl From<&ClassReport> for ClassJson {
    fn from(c: &ClassReport) -> Self {
        ClassJson {
            class: c.class,
            rep_order: c.rep_order,
            class_size: c.class_size,
            normalizer_order: c.normalizer_order,
            mu: c.mu,
            lambda: c.lambda,
            t: c.t,
            maxint: c.maxint,
            pass: c.pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupJson {
    pub spec: String,
    pub order: usize,
    pub solvable: bool,
    pub derived_order: usize,
    pub frattini_order: usize,
    pub subgroup_count: usize,
    pub class_count: usize,
    pub classes: Vec<ClassJson>,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyJson {
    pub family: String,
    pub q: u64,
    pub rows: Vec<FamilyRow>,
    pub self_check: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconsistent_row: Option<FamilyRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub spec: String,
    pub order: Option<usize>,
    pub verdict: Option<String>,
    pub expected: Option<String>,
    pub met: bool,
    pub failing_orders: Vec<usize>,
    pub error: Option<String>,
}

impl SuiteRow {
    pub fn finished(spec: &str, report: &GroupJson, expect: Option<bool>) -> SuiteRow {
        let pass = report.verdict == "pass";
        let mut failing_orders: Vec<usize> = report
            .classes
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.rep_order)
            .collect();
        failing_orders.dedup();
        SuiteRow {
            spec: spec.to_string(),
            order: Some(report.order),
            verdict: Some(report.verdict.clone()),
            expected: expect.map(|e| if e { "pass" } else { "fail" }.to_string()),
            met: expect.is_none_or(|e| e == pass),
            failing_orders,
            error: None,
        }
    }

    pub fn error(spec: &str, msg: String) -> SuiteRow {
        SuiteRow {
            spec: spec.to_string(),
            order: None,
            verdict: None,
            expected: None,
            met: false,
            failing_orders: Vec::new(),
            error: Some(msg),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn group(r: &GroupJson, format: Format, verify: bool) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = String::from(
                "class,rep_order,class_size,normalizer_order,mu,lambda,t,maxint,pass\n",
            );
            for c in &r.classes {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    c.class,
                    c.rep_order,
                    c.class_size,
                    c.normalizer_order,
                    c.mu,
                    c.lambda,
                    c.t,
                    c.maxint,
                    c.pass
                );
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "group      {}", r.spec);
            let _ = writeln!(s, "order      {}", r.order);
            let _ = writeln!(s, "subgroups  {}", r.subgroup_count);
            let _ = writeln!(s, "classes    {}", r.class_count);
            let _ = writeln!(s, "|Phi|      {}", r.frattini_order);
            let _ = writeln!(s, "|G'|       {}", r.derived_order);
            let _ = writeln!(s, "solvable   {}", yes_no(r.solvable));
            s.push('\n');
            let _ = writeln!(
                s,
                "{:>6} {:>8} {:>6} {:>8} {:>12} {:>6} {:>8} {:>6} {:>5}",
                "class", "|H|", "size", "|N(H)|", "mu", "lambda", "t", "maxint", "ok"
            );
            for c in &r.classes {
                let _ = writeln!(
                    s,
                    "{:>6} {:>8} {:>6} {:>8} {:>12} {:>6} {:>8} {:>6} {:>5}",
                    c.class,
                    c.rep_order,
                    c.class_size,
                    c.normalizer_order,
                    c.mu,
                    c.lambda,
                    c.t,
                    yes_no(c.maxint),
                    yes_no(c.pass)
                );
            }
            s.push('\n');
            if verify {
                let failing: Vec<String> = r
                    .classes
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{} (|H| = {})", c.class, c.rep_order))
                    .collect();
                if !failing.is_empty() {
                    let _ = writeln!(s, "failing classes: {}", failing.join(", "));
                }
            }
            let _ = writeln!(s, "verdict    {}", r.verdict);
            s
        }
    }
}

fn key_list(keys: &[(i128, i128, i128, i128)]) -> String {
    keys.iter()
        .map(|(o, m, l, n)| format!("(|H|={o}, mu={m}, lambda={l}, |N|={n})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn family(f: &FamilyJson, format: Format) -> String {
    match format {
        Format::Json => json(f),
        Format::Csv => rows_to_csv(&f.rows),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "family {} at q = {}: {} rows",
                f.family,
                f.q,
                f.rows.len()
            );
            let _ = writeln!(
                s,
                "{:<14} {:>4} {:>16} {:>20} {:>16} {:>12}  condition",
                "row", "h", "|H|", "mu", "|N(H)|", "lambda"
            );
            for r in &f.rows {
                let h = r.h.map(|h| h.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:<14} {:>4} {:>16} {:>20} {:>16} {:>12}  {}",
                    r.label, h, r.order, r.mu, r.normalizer_order, r.lambda, r.condition
                );
            }
            match &f.inconsistent_row {
                None => s.push_str("self-check: pass\n"),
                Some(r) => {
                    let _ = writeln!(s, "self-check: fail at row {}", r.label);
                }
            }
            if let Some(c) = &f.cross_check {
                if c.matched {
                    s.push_str("cross-check: match\n");
                } else {
                    s.push_str("cross-check: mismatch\n");
                    if !c.only_in_group.is_empty() {
                        let _ = writeln!(s, "  only in group: {}", key_list(&c.only_in_group));
                    }
                    if !c.only_in_rows.is_empty() {
                        let _ = writeln!(s, "  only in rows: {}", key_list(&c.only_in_rows));
                    }
                }
            }
            s
        }
    }
}

pub fn suite(rows: &[SuiteRow], format: Format) -> String {
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("spec,order,verdict,expected,met,error\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    csv_field(&r.spec),
                    r.order.map(|o| o.to_string()).unwrap_or_default(),
                    r.verdict.as_deref().unwrap_or(""),
                    r.expected.as_deref().unwrap_or(""),
                    r.met,
                    csv_field(r.error.as_deref().unwrap_or(""))
                );
            }
            s
        }
        Format::Human => {
            let width = rows
                .iter()
                .map(|r| r.spec.chars().count())
                .max()
                .unwrap_or(4)
                .max(4);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:<width$}  {:>8}  {:<7}  {:<8}  result",
                "spec", "order", "verdict", "expected"
            );
            for r in rows {
                let result = match (&r.error, r.met) {
                    (Some(e), _) => format!("error: {e}"),
                    (None, true) => "ok".to_string(),
                    (None, false) => format!("UNEXPECTED (failing |H|: {:?})", r.failing_orders),
                };
                let _ = writeln!(
                    s,
                    "{:<width$}  {:>8}  {:<7}  {:<8}  {}",
                    r.spec,
                    r.order.map(|o| o.to_string()).unwrap_or_else(|| "-".into()),
                    r.verdict.as_deref().unwrap_or("-"),
                    r.expected.as_deref().unwrap_or("-"),
                    result
                );
            }
            let met = rows.iter().filter(|r| r.met).count();
            let errors = rows.iter().filter(|r| r.error.is_some()).count();
            let _ = writeln!(
                s,
                "{} groups, {met} as expected, {errors} errors",
                rows.len()
            );
            s
        }
    }
}
