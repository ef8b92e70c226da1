use std::fmt::{self, Display};
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// `# key=value` lines echoing the full configuration.
#[derive(Debug, Default)]
pub struct Header {
    lines: Vec<String>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        let mut header = Self::default();
        header.push("command", command);
        header
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("# {key}={value}"));
    }

    pub fn push_opt(&mut self, key: &str, value: Option<impl Display>) {
        match value {
            Some(v) => self.push(key, v),
            None => self.push(key, "default"),
        }
    }
}

impl Display for Header {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lines.join("\n"))
    }
}

/// A CSV table written after its header comment.
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<String>>) {
        for row in rows {
            self.push(row);
        }
    }

    pub fn write(&self, header: &Header, out: Option<&Path>) -> Result<()> {
        let mut body = csv::Writer::from_writer(Vec::new());
        body.write_record(&self.columns)?;
        for row in &self.rows {
            body.write_record(row)?;
        }
        let body = body.into_inner().context("flushing CSV")?;
        let mut text = header.to_string();
        text.push('\n');
        emit(out, text.as_bytes(), &body)
    }
}

pub fn emit(out: Option<&Path>, head: &[u8], body: &[u8]) -> Result<()> {
    match out {
        Some(path) => {
            let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            file.write_all(head)?;
            file.write_all(body)?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(head)?;
            stdout.write_all(body)?;
        }
    }
    Ok(())
}

/// Shortest text that parses back to the same float.
pub fn num(x: f64) -> String {
    format!("{x}")
}
