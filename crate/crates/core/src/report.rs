//! Versioned structured-text reports.
//!
//! ```text
//! # nonherm-report v1
//! # command=growth
//! record=radius n=1 ball=4 sphere=4 power=4 literal_difference=4 ball_root=4.000000000 sphere_root=4.000000000
//! record=summary group="free group of rank 2" fekete_upper=3.178232412
//! ```
//!
//! The first line is the version header; further lines starting with `#`
//! are metadata. Every other non-empty line is one record: space-separated
//! `key=value` pairs, the first of which is `record=KIND`. Keys match
//! `[a-z0-9_]+`. A value is either a bare token (no spaces, quotes, `=` or
//! backslashes) or a double-quoted string in which `\"` and `\\` are the
//! only escapes. Floats are printed with nine decimals and exact values as
//! reduced fractions `a/b`; enclosures use `[lo,hi]`. Reports carry no
//! timestamps, so identical inputs give byte-identical output.
//!
//! Record kinds and their keys:
//!
//! | kind | keys |
//! |------|------|
//! | `group` | `label`, `generators`, `set_size`, `symmetric`, `identity_in_set` |
//! | `radius` | `n`, `ball`, `sphere`, `power`, `literal_difference`, `ball_root`, `sphere_root`, `power_root` |
//! | `estimate` | `radius_max`, `fekete_upper`, `fekete_radius`, `ratio_estimate`, `last_ball_root`, `last_sphere_root`, `provenance` |
//! | `exact_growth` | `omega`, `sigma`, `provenance`, `method` |
//! | `theta` | `value`, `outside_unit_interval` |
//! | `agreement` | `radius`, `ball_root`, `sphere_root`, `difference`, `tolerance`, `within_tolerance` |
//! | `submultiplicativity` | `radius_max`, `inequalities_checked`, `status` |
//! | `sphere_mass` | `n`, `mass`, `root` |
//! | `lp_upper` | `n`, `optimum`, `root`, `pivots` |
//! | `spectral_upper` | `power`, `value` |
//! | `capacity_lower_limit` | `value`, `provenance`, `source` |
//! | `certificate` | `verdict`, `witness`, `capacity_lower`, `spectral_upper`, `half_spectral_upper`, `margin`, `provenance`, `conditional`, `source`, `theorem` |
//! | `criterion` | `criterion`, `verdict`, `omega_lower`, `threshold`, `margin`, `provenance`, `conditional`, `notes` |
//! | `tree` | `tree`, `mu`, `growth_lower`, `degree_condition`, `two_thirds_holds`, `two_thirds_equality` |
//! | `hecke` | `n`, `p`, `lambda`, `normalized`, `mu` |
//! | `padic` | `n`, `p`, `mu`, `omega_lower`, `inequality`, `inequality_sign` |
//! | `scan` | `n`, `p`, `value`, `sign_numerator`, `certified` |
//! | `property` | `name`, `cases`, `status`, `detail` |
//! | `warning` | `message` |

use std::fmt::Write as _;

use num_rational::BigRational;
use thiserror::Error;

use crate::exact::{fmt_rational, Enclosure};

/// First line of every report.
pub const HEADER: &str = "# nonherm-report v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("line 1: missing header '{HEADER}'")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// One `key=value` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    kind: String,
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        assert!(valid_key(kind), "record kind '{kind}' is not a valid key");
        Record {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        assert!(valid_key(key) && key != "record", "invalid record key '{key}'");
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn float(self, key: &str, value: f64) -> Self {
        self.field(key, fmt_float(value))
    }

    pub fn rational(self, key: &str, value: &BigRational) -> Self {
        self.field(key, fmt_rational(value))
    }

    pub fn enclosure(self, key: &str, value: &Enclosure) -> Self {
        self.field(key, fmt_enclosure(value))
    }

    fn to_line(&self) -> String {
        let mut line = format!("record={}", self.kind);
        for (k, v) in &self.fields {
            let _ = write!(line, " {k}={}", quote(v));
        }
        line
    }
}

/// A whole report: a command name, metadata and records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            meta: vec![("command".into(), command.into())],
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn records_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.kind == kind)
    }

    /// The record format described in the module documentation.
    pub fn to_records(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={}", quote(v));
        }
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }

    /// Aligned human-readable tables, one per run of records of one kind.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "{k}: {v}");
        }
        let mut i = 0;
        while i < self.records.len() {
            let kind = &self.records[i].kind;
            let mut j = i;
            while j < self.records.len() && &self.records[j].kind == kind {
                j += 1;
            }
            let group = &self.records[i..j];
            let mut keys: Vec<&str> = Vec::new();
            for r in group {
                for (k, _) in &r.fields {
                    if !keys.contains(&k.as_str()) {
                        keys.push(k);
                    }
                }
            }
            out.push('\n');
            let _ = writeln!(out, "[{kind}]");
            if group.len() == 1 {
                let width = keys.iter().map(|k| k.len()).max().unwrap_or(0);
                for (k, v) in &group[0].fields {
                    let _ = writeln!(out, "  {k:<width$}  {v}");
                }
            } else {
                let cells: Vec<Vec<&str>> = group
                    .iter()
                    .map(|r| keys.iter().map(|k| r.get(k).unwrap_or("-")).collect())
                    .collect();
                let widths: Vec<usize> = keys
                    .iter()
                    .enumerate()
                    .map(|(c, k)| cells.iter().map(|row| row[c].len()).max().unwrap_or(0).max(k.len()))
                    .collect();
                let fmt_row = |row: &[&str]| {
                    let parts: Vec<String> =
                        row.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
                    format!("  {}", parts.join("  "))
                };
                let _ = writeln!(out, "{}", fmt_row(&keys));
                for row in &cells {
                    let _ = writeln!(out, "{}", fmt_row(row));
                }
            }
            i = j;
        }
        out
    }

    /// Parses the record format.
    pub fn parse(text: &str) -> Result<Report, ReportError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_end() == HEADER => {}
            _ => return Err(ReportError::MissingHeader),
        }
        let mut report = Report::default();
        for (i, raw) in lines {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let pairs = parse_pairs(meta.trim(), line_no)?;
                report.meta.extend(pairs);
                continue;
            }
            let mut pairs = parse_pairs(line, line_no)?.into_iter();
            let kind = match pairs.next() {
                Some((k, v)) if k == "record" && valid_key(&v) => v,
                _ => {
                    return Err(ReportError::Syntax {
                        line: line_no,
                        message: "expected 'record=KIND' first".into(),
                    })
                }
            };
            report.records.push(Record {
                kind,
                fields: pairs.collect(),
            });
        }
        Ok(report)
    }
}

/// Nine decimals; non-finite values print as `nan`, `inf`, `-inf`.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.9}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// `v` for exact enclosures, `[lo,hi]` otherwise.
pub fn fmt_enclosure(e: &Enclosure) -> String {
    if e.is_exact() {
        fmt_rational(e.lo())
    } else {
        format!("[{},{}]", fmt_rational(e.lo()), fmt_rational(e.hi()))
    }
}

fn valid_key(k: &str) -> bool {
    !k.is_empty() && k.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

fn is_bare(v: &str) -> bool {
    !v.is_empty() && !v.chars().any(|c| c.is_whitespace() || matches!(c, '"' | '\\' | '='))
}

fn quote(v: &str) -> String {
    if is_bare(v) {
        return v.to_string();
    }
    let mut out = String::with_capacity(v.len() + 2);
    out.push('"');
    for c in v.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push(' '),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn parse_pairs(line: &str, line_no: usize) -> Result<Vec<(String, String)>, ReportError> {
    let err = |message: String| ReportError::Syntax { line: line_no, message };
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        if chars.peek().is_none() {
            return Ok(out);
        }
        let mut key = String::new();
        while let Some(&c) = chars.peek() {
            if c == '=' {
                break;
            }
            key.push(c);
            chars.next();
        }
        if chars.next() != Some('=') || !valid_key(&key) {
            return Err(err(format!("bad key '{key}'")));
        }
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some(c @ ('"' | '\\')) => value.push(c),
                        _ => return Err(err(format!("bad escape in value of '{key}'"))),
                    },
                    Some(c) => value.push(c),
                    None => return Err(err(format!("unterminated quote in value of '{key}'"))),
                }
            }
            if chars.peek().is_some_and(|c| !c.is_whitespace()) {
                return Err(err(format!("junk after quoted value of '{key}'")));
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                if matches!(c, '"' | '\\' | '=') {
                    return Err(err(format!("unexpected '{c}' in value of '{key}'")));
                }
                value.push(c);
                chars.next();
            }
            if value.is_empty() {
                return Err(err(format!("empty value for '{key}'")));
            }
        }
        out.push((key, value));
    }
}
