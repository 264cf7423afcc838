//! CSV output and read-back. Floats use Rust's shortest round-trip formatting.

use std::io::{Read, Write};

use crate::error::ParseError;
use crate::scan::{ScanRecord, SCAN_HEADER};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn csv_err(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

pub fn write_scan_csv<W: Write>(records: &[ScanRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            fmt_f64(r.a),
            fmt_f64(r.b),
            r.cp_valid.to_string(),
            r.dtilde_psd.to_string(),
            fmt_f64(r.canonical_derivative),
            r.creates_canonical.to_string(),
            r.creates_any_frame.to_string(),
            r.search_budget_used.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
}

/// Column names for the evolution table.
pub fn evolve_header() -> Vec<String> {
    let mut h = vec!["t".to_string()];
    for r in 0..4 {
        for c in 0..4 {
            h.push(format!("rho_{r}{c}_re"));
            h.push(format!("rho_{r}{c}_im"));
        }
    }
    h.extend(["trace", "purity", "ppt_min_eigenvalue", "negativity"].map(String::from));
    h
}

pub fn write_numeric_csv<W: Write>(header: &[String], rows: &[Vec<f64>], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| fmt_f64(x))).map_err(csv_err)?;
    }
    w.flush()
}

fn record_position(record: &csv::StringRecord, field: usize) -> (usize, usize) {
    let line = record.position().map_or(0, |p| p.line() as usize);
    (line, field + 1)
}

fn read_rows<R: Read>(input: R) -> Result<(Vec<String>, Vec<csv::StringRecord>), ParseError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader
        .headers()
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?
        .iter()
        .map(String::from)
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            ParseError::new(line, 1, e.to_string())
        })?;
        rows.push(rec);
    }
    Ok((header, rows))
}

/// Reads a table of floats with a header row.
pub fn read_numeric_csv<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>), ParseError> {
    let (header, records) = read_rows(input)?;
    let mut rows = Vec::with_capacity(records.len());
    for rec in &records {
        let mut row = Vec::with_capacity(rec.len());
        for (k, field) in rec.iter().enumerate() {
            let x = field.parse::<f64>().map_err(|_| {
                let (line, col) = record_position(rec, k);
                ParseError::new(line, col, format!("expected a number, found '{field}'"))
            })?;
            row.push(x);
        }
        rows.push(row);
    }
    Ok((header, rows))
}

pub fn read_scan_csv<R: Read>(input: R) -> Result<Vec<ScanRecord>, ParseError> {
    let (header, records) = read_rows(input)?;
    if header != SCAN_HEADER {
        return Err(ParseError::new(1, 1, format!("unexpected header {header:?}")));
    }
    let mut out = Vec::with_capacity(records.len());
    for rec in &records {
        let float = |k: usize| {
            rec[k].parse::<f64>().map_err(|_| {
                let (line, col) = record_position(rec, k);
                ParseError::new(line, col, format!("expected a number, found '{}'", &rec[k]))
            })
        };
        let flag = |k: usize| match &rec[k] {
            "true" => Ok(true),
            "false" => Ok(false),
            other => {
                let (line, col) = record_position(rec, k);
                Err(ParseError::new(line, col, format!("expected true or false, found '{other}'")))
            }
        };
        let count = rec[7].parse::<usize>().map_err(|_| {
            let (line, col) = record_position(rec, 7);
            ParseError::new(line, col, format!("expected a count, found '{}'", &rec[7]))
        })?;
        out.push(ScanRecord {
            a: float(0)?,
            b: float(1)?,
            cp_valid: flag(2)?,
            dtilde_psd: flag(3)?,
            canonical_derivative: float(4)?,
            creates_canonical: flag(5)?,
            creates_any_frame: flag(6)?,
            search_budget_used: count,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_round_trip() {
        let records = vec![ScanRecord {
            a: 0.1 + 0.2,
            b: -1e-300,
            cp_valid: true,
            dtilde_psd: false,
            canonical_derivative: 1.0 / 3.0,
            creates_canonical: false,
            creates_any_frame: true,
            search_budget_used: 417,
        }];
        let mut buf = Vec::new();
        write_scan_csv(&records, &mut buf).unwrap();
        assert_eq!(read_scan_csv(buf.as_slice()).unwrap(), records);
    }

    #[test]
    fn numeric_round_trip() {
        let header = vec!["x".to_string(), "y".to_string()];
        let rows = vec![vec![std::f64::consts::PI, -0.0], vec![1e22, 5e-324]];
        let mut buf = Vec::new();
        write_numeric_csv(&header, &rows, &mut buf).unwrap();
        let (h, r) = read_numeric_csv(buf.as_slice()).unwrap();
        assert_eq!(h, header);
        assert_eq!(r[0][0].to_bits(), rows[0][0].to_bits());
        assert_eq!(r[1][1].to_bits(), rows[1][1].to_bits());
    }

    #[test]
    fn bad_field_position() {
        let err = read_scan_csv("a,b,cp_valid,dtilde_psd,canonical_derivative,creates_canonical,creates_any_frame,search_budget_used\n0,0,yes,true,0,false,false,0\n".as_bytes()).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert_eq!(evolve_header().len(), 37);
    }
}
