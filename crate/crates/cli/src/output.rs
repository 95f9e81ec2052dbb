//! Serialization of command results.
//!
//! Floats are written in scientific notation with 17 significant digits in
//! both formats, so a given result always produces the same bytes.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Output format selected with `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Formats a float with 17 significant digits. Negative zero prints as zero.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        let x = if x == 0.0 { 0.0 } else { x };
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Compact JSON with every float written through [`float`].
struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json<S: Serialize>(value: &S) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser).map_err(io::Error::other)?;
    buf.push(b'\n');
    Ok(buf)
}

/// A CSV table of pre-formatted cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer
            .into_inner()
            .map_err(|e| io::Error::other(e.to_string()))
    }
}

/// Writes `bytes` to `path`, or to stdout when no path is given.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        margin: f64,
        count: u64,
        flag: bool,
    }

    #[test]
    fn floats_carry_seventeen_digits() {
        assert_eq!(float(0.25), "2.5000000000000000e-1");
        assert_eq!(float(-3.0), "-3.0000000000000000e0");
        assert_eq!(float(-0.0), float(0.0));
        let json = to_json(&Sample {
            margin: 0.1,
            count: 3,
            flag: true,
        })
        .unwrap();
        assert_eq!(
            String::from_utf8(json).unwrap(),
            "{\"margin\":1.0000000000000001e-1,\"count\":3,\"flag\":true}\n"
        );
    }

    #[test]
    fn json_numbers_round_trip() {
        let x = std::f64::consts::PI / 7.0;
        let json = to_json(&Sample {
            margin: x,
            count: 0,
            flag: false,
        })
        .unwrap();
        let back: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(back["margin"].as_f64().unwrap(), x);
    }

    #[test]
    fn csv_has_header_first() {
        let mut t = Table::new(&["p_over_M", "delta_w"]);
        t.push(vec![float(0.001), float(1e-7)]);
        let text = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(
            text,
            "p_over_M,delta_w\n1.0000000000000000e-3,9.9999999999999995e-8\n"
        );
    }
}
