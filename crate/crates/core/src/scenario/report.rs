use std::fmt::Write as _;
use std::str::FromStr;

use crate::tolerance::Tolerances;
use crate::ENGINE_VERSION;

/// Result block of one query.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    /// 1-based position in the scenario.
    pub index: usize,
    pub kind: String,
    /// Compact JSON of the query as parsed.
    pub echo: String,
    pub outputs: Vec<(String, f64)>,
    pub flags: Vec<(String, bool)>,
}

impl QueryResult {
    pub fn output(&self, name: &str) -> Option<f64> {
        self.outputs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub engine_version: String,
    pub context: String,
    pub dimension: usize,
    pub seed: u64,
    pub tolerances: Vec<(&'static str, f64)>,
    pub results: Vec<QueryResult>,
}

impl Report {
    pub fn new(context: impl Into<String>, dimension: usize, seed: u64) -> Self {
        Self {
            engine_version: ENGINE_VERSION.to_string(),
            context: context.into(),
            dimension,
            seed,
            tolerances: Tolerances::default().entries(),
            results: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Structured,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            "structured" | "json" => Ok(Self::Structured),
            other => Err(format!("unknown format {other:?} (text, csv, structured)")),
        }
    }
}

/// Twelve significant digits, trailing zeros kept: fixed notation for
/// exponents in `[-4, 12)`, otherwise `d.ddddddddddde±XX`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders a report; output depends only on the report contents.
pub fn emit_report(rep: &Report, format: Format) -> String {
    match format {
        Format::Text => emit_text(rep),
        Format::Csv => emit_csv(rep),
        Format::Structured => emit_structured(rep),
    }
}

fn emit_text(rep: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "engine     {}", rep.engine_version);
    let _ = writeln!(out, "context    {}", rep.context);
    let _ = writeln!(out, "dimension  {}", rep.dimension);
    let _ = writeln!(out, "seed       {}", rep.seed);
    let tol_width = rep
        .tolerances
        .iter()
        .map(|(n, _)| n.len())
        .max()
        .unwrap_or(0);
    out.push_str("tolerances\n");
    for (name, value) in &rep.tolerances {
        let _ = writeln!(out, "  {name:<tol_width$}  {}", format_float(*value));
    }

    let width = rep
        .results
        .iter()
        .flat_map(|r| {
            r.outputs
                .iter()
                .map(|(n, _)| n.len())
                .chain(r.flags.iter().map(|(n, _)| n.len()))
        })
        .chain(std::iter::once("name".len()))
        .max()
        .unwrap_or(4);
    let _ = writeln!(out, "\n{:<5}  {:<width$}  value", "query", "name");
    for r in &rep.results {
        let _ = writeln!(out, "# {} {} {}", r.index, r.kind, r.echo);
        for (name, value) in &r.outputs {
            let _ = writeln!(
                out,
                "{:<5}  {name:<width$}  {:>18}",
                r.index,
                format_float(*value)
            );
        }
        for (name, flag) in &r.flags {
            let _ = writeln!(out, "{:<5}  {name:<width$}  {flag:>18}", r.index);
        }
    }
    out
}

fn emit_csv(rep: &Report) -> String {
    let mut out = String::from("query_index,name,value\n");
    for r in &rep.results {
        for (name, value) in &r.outputs {
            let _ = writeln!(
                out,
                "{},{},{}",
                r.index,
                csv_field(name),
                format_float(*value)
            );
        }
        for (name, flag) in &r.flags {
            let _ = writeln!(out, "{},{},{flag}", r.index, csv_field(name));
        }
    }
    out
}

fn emit_structured(rep: &Report) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"engine_version\": {},",
        json_string(&rep.engine_version)
    );
    let _ = writeln!(out, "  \"context\": {},", json_string(&rep.context));
    let _ = writeln!(out, "  \"dimension\": {},", rep.dimension);
    let _ = writeln!(out, "  \"seed\": {},", rep.seed);
    let tolerances: Vec<String> = rep
        .tolerances
        .iter()
        .map(|(n, v)| format!("    {}: {}", json_string(n), format_float(*v)))
        .collect();
    let _ = writeln!(
        out,
        "  \"tolerances\": {{\n{}\n  }},",
        tolerances.join(",\n")
    );
    if rep.results.is_empty() {
        out.push_str("  \"results\": []\n}\n");
        return out;
    }
    out.push_str("  \"results\": [\n");
    let blocks: Vec<String> = rep
        .results
        .iter()
        .map(|r| {
            let outputs: Vec<String> = r
                .outputs
                .iter()
                .map(|(n, v)| format!("{}: {}", json_string(n), format_float(*v)))
                .collect();
            let flags: Vec<String> = r
                .flags
                .iter()
                .map(|(n, v)| format!("{}: {v}", json_string(n)))
                .collect();
            format!(
                "    {{\n      \"index\": {},\n      \"kind\": {},\n      \"query\": {},\n      \"outputs\": {{{}}},\n      \"flags\": {{{}}}\n    }}",
                r.index,
                json_string(&r.kind),
                r.echo,
                outputs.join(", "),
                flags.join(", ")
            )
        })
        .collect();
    out.push_str(&blocks.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}
