//! Rendering for the tabular outputs. Every float goes through one
//! formatter with 17 significant digits so reruns of the same config are
//! byte-identical, in CSV and JSON alike.

pub fn format_float(v: f64) -> String {
    format!("{:.16e}", v)
}

pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// rendered after the data, prefixed with `#` in CSV
    pub trailers: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            trailers: Vec::new(),
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for line in &self.trailers {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("{\n  \"columns\": [");
        let names: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("\"{}\"", c))
            .collect();
        out.push_str(&names.join(", "));
        out.push_str("],\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Cell::json).collect();
            out.push_str("    [");
            out.push_str(&cells.join(", "));
            out.push(']');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ],\n  \"comments\": [");
        let trailers: Vec<String> = self
            .trailers
            .iter()
            .map(|t| format!("\"{}\"", t.replace('\\', "\\\\").replace('"', "\\\"")))
            .collect();
        out.push_str(&trailers.join(", "));
        out.push_str("]\n}\n");
        out
    }
}
