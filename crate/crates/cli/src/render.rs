//! Aligned text and CSV renderings of reports.

use std::fmt::Display;

/// A table: either key/value pairs or rows under a header.
#[derive(Default)]
pub struct Rows {
    header: Option<Vec<String>>,
    rows: Vec<Vec<String>>,
}

impl Rows {
    pub fn with_header(names: &[&str]) -> Self {
        Rows {
            header: Some(names.iter().map(|s| s.to_string()).collect()),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Display, value: impl Display) {
        self.rows.push(vec![key.to_string(), value.to_string()]);
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn all(&self) -> Vec<&Vec<String>> {
        self.header.iter().chain(&self.rows).collect()
    }

    pub fn text(&self) -> String {
        let all = self.all();
        let cols = all.iter().map(|r| r.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| all.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in all {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::new();
        if self.header.is_none() {
            out.push_str("key,value\n");
        }
        for r in self.all() {
            let cells: Vec<String> = r.iter().map(|s| quote(s)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub trait Render {
    fn rows(&self) -> Rows;
}
