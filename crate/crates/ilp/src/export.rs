//! LP and MPS text for external solvers, and a reader for the LP dialect
//! written here.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::IlpError;
use crate::model::{family_counts, Family, IlpModel, Sense, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Lp,
    Mps,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Lp => "lp",
            ExportFormat::Mps => "mps",
        }
    }
}

pub fn export_model(m: &IlpModel, format: ExportFormat) -> String {
    match format {
        ExportFormat::Lp => export_lp(m),
        ExportFormat::Mps => export_mps(m),
    }
}

const TERMS_PER_LINE: usize = 8;

fn header(m: &IlpModel) -> String {
    let mut h = format!(
        "v={} k'={} lambda'={} mu'={} e'={} s={} fixed={}",
        m.v,
        m.k,
        m.lambda,
        m.mu,
        m.e,
        m.s,
        m.fixed_edges.len()
    );
    if let Some(b) = m.branch {
        let _ = write!(h, " branch={}-{} {}", b.pair.0 + 1, b.pair.1 + 1, b.sense);
    }
    h
}

fn write_terms(out: &mut String, terms: &[(Var, i64)]) {
    for (i, &(var, c)) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0 {
            "-"
        } else if i > 0 {
            "+"
        } else {
            ""
        };
        let mag = c.unsigned_abs();
        if !sign.is_empty() {
            out.push(' ');
            out.push_str(sign);
        }
        out.push(' ');
        if mag != 1 {
            let _ = write!(out, "{mag} ");
        }
        out.push_str(&var.name());
    }
}

fn export_lp(m: &IlpModel) -> String {
    let vars = m.variables();
    let mut out = String::new();
    let _ = writeln!(out, "\\ {}", header(m));
    out.push_str("Minimize\n obj: 0 ");
    out.push_str(&vars[0].name());
    out.push_str("\nSubject To\n");
    for c in m.constraints() {
        let _ = write!(out, " {}:", c.name);
        write_terms(&mut out, &c.terms);
        let _ = writeln!(out, " {} {}", c.sense.symbol(), c.rhs);
    }
    out.push_str("Bounds\n");
    for v in &vars {
        let _ = writeln!(out, " 0 <= {} <= 1", v.name());
    }
    out.push_str("Binaries\n");
    for v in &vars {
        let _ = writeln!(out, " {}", v.name());
    }
    out.push_str("End\n");
    out
}

/// MPS in the fixed section layout; names are longer than eight characters,
/// so readers must accept free-format fields.
fn export_mps(m: &IlpModel) -> String {
    let cons = m.constraints();
    let mut columns: HashMap<Var, Vec<(usize, i64)>> = HashMap::new();
    for (r, c) in cons.iter().enumerate() {
        for &(v, coef) in &c.terms {
            columns.entry(v).or_default().push((r, coef));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "* {}", header(m));
    out.push_str("NAME          NEUMAIER\nROWS\n N  obj\n");
    for c in &cons {
        let t = match c.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        let _ = writeln!(out, " {t}  {}", c.name);
    }
    out.push_str("COLUMNS\n    MARKER                 'MARKER'                 'INTORG'\n");
    for v in m.variables() {
        let name = v.name();
        match columns.get(&v) {
            Some(entries) => {
                for &(r, coef) in entries {
                    let _ = writeln!(out, "    {:<12}  {:<16}  {}", name, cons[r].name, coef);
                }
            }
            None => {
                let _ = writeln!(out, "    {:<12}  {:<16}  0", name, "obj");
            }
        }
    }
    out.push_str("    MARKER                 'MARKER'                 'INTEND'\nRHS\n");
    for c in cons.iter().filter(|c| c.rhs != 0) {
        let _ = writeln!(out, "    RHS           {:<16}  {}", c.name, c.rhs);
    }
    out.push_str("BOUNDS\n");
    for v in m.variables() {
        let _ = writeln!(out, " UP BND           {:<12}  1", v.name());
    }
    out.push_str("ENDATA\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedRow {
    pub name: String,
    pub terms: Vec<(String, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedLp {
    pub comment: Option<String>,
    pub objective: Vec<(String, i64)>,
    pub rows: Vec<ParsedRow>,
    pub bounds: Vec<(String, i64, i64)>,
    pub binaries: Vec<String>,
}

impl ParsedLp {
    /// Rows per family, read from the row-name prefixes.
    pub fn family_counts(&self) -> Result<BTreeMap<Family, usize>, IlpError> {
        let mut m: BTreeMap<Family, usize> = Family::ALL.iter().map(|&f| (f, 0)).collect();
        for r in &self.rows {
            let prefix = r.name.split('_').next().unwrap_or("");
            let f = Family::from_prefix(prefix)
                .ok_or_else(|| IlpError::Parse(format!("unknown row {}", r.name)))?;
            *m.get_mut(&f).expect("all families present") += 1;
        }
        Ok(m)
    }

    /// Whether the 0/1 assignment `value` satisfies every row and bound.
    pub fn is_satisfied_by(&self, value: impl Fn(&str) -> i64) -> bool {
        self.rows.iter().all(|r| {
            let lhs: i64 = r.terms.iter().map(|(n, c)| c * value(n)).sum();
            match r.sense {
                Sense::Le => lhs <= r.rhs,
                Sense::Ge => lhs >= r.rhs,
                Sense::Eq => lhs == r.rhs,
            }
        }) && self
            .bounds
            .iter()
            .all(|(n, lo, hi)| (*lo..=*hi).contains(&value(n)))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objective,
    Constraints,
    Bounds,
    Binaries,
}

fn parse_expression(tokens: &[&str]) -> Result<Vec<(String, i64)>, IlpError> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut coef: Option<i64> = None;
    for &t in tokens {
        match t {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                if let Ok(c) = t.parse::<i64>() {
                    coef = Some(c);
                } else {
                    out.push((t.to_string(), sign * coef.unwrap_or(1)));
                    sign = 1;
                    coef = None;
                }
            }
        }
    }
    Ok(out)
}

/// Reads the LP dialect produced by [`export_model`].
pub fn parse_lp(text: &str) -> Result<ParsedLp, IlpError> {
    let mut lp = ParsedLp::default();
    let mut section = Section::None;
    let mut pending = String::new();
    let flush_row = |pending: &mut String, lp: &mut ParsedLp| -> Result<(), IlpError> {
        if pending.trim().is_empty() {
            return Ok(());
        }
        let (name, body) = pending
            .split_once(':')
            .ok_or_else(|| IlpError::Parse(format!("row without a name: {pending}")))?;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let at = tokens
            .iter()
            .position(|t| matches!(*t, "<=" | ">=" | "="))
            .ok_or_else(|| IlpError::Parse(format!("row {name} has no sense")))?;
        let sense = match tokens[at] {
            "<=" => Sense::Le,
            ">=" => Sense::Ge,
            _ => Sense::Eq,
        };
        let rhs = tokens
            .get(at + 1)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| IlpError::Parse(format!("row {name} has no integer right-hand side")))?;
        lp.rows.push(ParsedRow {
            name: name.trim().to_string(),
            terms: parse_expression(&tokens[..at])?,
            sense,
            rhs,
        });
        pending.clear();
        Ok(())
    };
    for line in text.lines() {
        if let Some(c) = line.strip_prefix('\\') {
            lp.comment.get_or_insert_with(|| c.trim().to_string());
            continue;
        }
        let trimmed = line.trim();
        let keyword = match trimmed.to_ascii_lowercase().as_str() {
            "minimize" | "maximize" => Some(Section::Objective),
            "subject to" => Some(Section::Constraints),
            "bounds" => Some(Section::Bounds),
            "binaries" | "binary" => Some(Section::Binaries),
            "end" => Some(Section::None),
            _ => None,
        };
        if let Some(next) = keyword {
            if section == Section::Constraints {
                flush_row(&mut pending, &mut lp)?;
            }
            section = next;
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        match section {
            Section::None => {
                return Err(IlpError::Parse(format!(
                    "text outside a section: {trimmed}"
                )))
            }
            Section::Objective => {
                let body = trimmed.split_once(':').map_or(trimmed, |(_, b)| b);
                let tokens: Vec<&str> = body.split_whitespace().collect();
                lp.objective.extend(parse_expression(&tokens)?);
            }
            Section::Constraints => {
                if trimmed.contains(':') {
                    flush_row(&mut pending, &mut lp)?;
                }
                pending.push(' ');
                pending.push_str(trimmed);
            }
            Section::Bounds => {
                let t: Vec<&str> = trimmed.split_whitespace().collect();
                match t[..] {
                    [lo, "<=", name, "<=", hi] => {
                        let lo = lo
                            .parse()
                            .map_err(|_| IlpError::Parse(trimmed.to_string()))?;
                        let hi = hi
                            .parse()
                            .map_err(|_| IlpError::Parse(trimmed.to_string()))?;
                        lp.bounds.push((name.to_string(), lo, hi));
                    }
                    _ => return Err(IlpError::Parse(format!("unsupported bound: {trimmed}"))),
                }
            }
            Section::Binaries => lp
                .binaries
                .extend(trimmed.split_whitespace().map(String::from)),
        }
    }
    Ok(lp)
}

/// Family counts straight from the model rows, for comparison with a parse.
pub fn model_family_counts(m: &IlpModel) -> BTreeMap<Family, usize> {
    family_counts(&m.constraints())
}

#[cfg(test)]
fn rows_equal(a: &crate::model::Constraint, b: &ParsedRow) -> bool {
    a.name == b.name
        && a.sense == b.sense
        && a.rhs == b.rhs
        && a.terms
            .iter()
            .map(|(v, c)| (v.name(), *c))
            .eq(b.terms.iter().cloned())
}
