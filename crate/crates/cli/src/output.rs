//! Rendering of reports as aligned text, CSV or JSON.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A flat table plus the structured value it was projected from.
pub struct Report<T: Serialize> {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub value: T,
    /// Extra lines shown after the table in text mode.
    pub notes: Vec<String>,
}

impl<T: Serialize> Report<T> {
    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.value)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Text => {
                let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(&self.header))?;
                for r in &self.rows {
                    writeln!(out, "{}", line(r))?;
                }
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn strings<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report<Vec<u32>> {
        Report {
            header: strings(["group", "dim"]),
            rows: vec![strings(["C2", "1"]), strings(["C4xC2", "8"])],
            value: vec![1, 8],
            notes: vec!["done".into()],
        }
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(render(Format::Csv), "group,dim\nC2,1\nC4xC2,8\n");
        assert_eq!(render(Format::Text), "group  dim\nC2     1\nC4xC2  8\ndone\n");
        assert_eq!(render(Format::Json), "[\n  1,\n  8\n]\n");
    }
}
