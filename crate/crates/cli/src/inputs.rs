//! One-line specifications for initial states and time grids.
//!
//! States: `bloch:x1,y1,z1;x2,y2,z2` for a product of two Bloch vectors, or
//! `matrix:` followed by 32 comma-separated numbers giving the 16 entries of
//! `ρ₀` row by row, real and imaginary parts interleaved.
//!
//! Times: `t1,t2,...` or `linspace:start:end:n`.

use bathent::{ComplexMatrix, DensityMatrix, C64};

use crate::error::ParseError;

/// Comma-separated numbers starting at 1-based column `offset`.
fn numbers(text: &str, offset: usize, sep: char) -> Result<Vec<f64>, ParseError> {
    let mut out = Vec::new();
    let mut column = offset;
    for piece in text.split(sep) {
        let trimmed = piece.trim();
        let lead = piece.chars().count() - piece.trim_start().chars().count();
        match trimmed.parse::<f64>() {
            Ok(x) if x.is_finite() => out.push(x),
            _ => {
                let what = if trimmed.is_empty() { "empty value".to_string() } else { format!("'{trimmed}'") };
                return Err(ParseError::new(1, column + lead, format!("expected a finite number, found {what}")));
            }
        }
        column += piece.chars().count() + 1;
    }
    Ok(out)
}

/// Unvalidated matrix from a state spec.
pub fn parse_state_matrix(spec: &str) -> Result<ComplexMatrix, ParseError> {
    let spec = spec.trim_end();
    if let Some(rest) = spec.strip_prefix("bloch:") {
        let Some((first, second)) = rest.split_once(';') else {
            return Err(ParseError::new(1, spec.chars().count() + 1, "expected ';' between the two Bloch vectors"));
        };
        let r1 = numbers(first, 7, ',')?;
        let offset2 = 7 + first.chars().count() + 1;
        let r2 = numbers(second, offset2, ',')?;
        for (r, col) in [(&r1, 7), (&r2, offset2)] {
            if r.len() != 3 {
                return Err(ParseError::new(1, col, format!("Bloch vector needs 3 components, found {}", r.len())));
            }
        }
        let r1 = [r1[0], r1[1], r1[2]];
        let r2 = [r2[0], r2[1], r2[2]];
        let s1 = bathent::qubit::bloch_state(r1).map_err(|e| ParseError::new(1, 7, e.to_string()))?;
        let s2 = bathent::qubit::bloch_state(r2).map_err(|e| ParseError::new(1, offset2, e.to_string()))?;
        Ok(bathent::matrix::kron(&s1, &s2))
    } else if let Some(rest) = spec.strip_prefix("matrix:") {
        let v = numbers(rest, 8, ',')?;
        if v.len() != 32 {
            return Err(ParseError::new(1, 8, format!("expected 32 numbers, found {}", v.len())));
        }
        let entries = v.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
        Ok(ComplexMatrix::from_row_major(entries).expect("16 entries"))
    } else {
        Err(ParseError::new(1, 1, "state must start with 'bloch:' or 'matrix:'"))
    }
}

/// A validated initial state.
pub fn parse_state(spec: &str, tol: f64) -> Result<DensityMatrix, ParseError> {
    let m = parse_state_matrix(spec)?;
    DensityMatrix::with_tolerance(m, tol, tol, tol).map_err(|e| ParseError::new(1, 1, format!("not a density matrix: {e}")))
}

/// Upper bound on grid length, to keep hostile inputs from allocating freely.
pub const MAX_TIMES: usize = 1_000_000;

pub fn parse_times(spec: &str) -> Result<Vec<f64>, ParseError> {
    let spec = spec.trim_end();
    let times = if let Some(rest) = spec.strip_prefix("linspace:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(ParseError::new(1, 10, "expected linspace:start:end:n"));
        }
        let start = numbers(parts[0], 10, ':')?[0];
        let end_col = 10 + parts[0].chars().count() + 1;
        let end = numbers(parts[1], end_col, ':')?[0];
        let n_col = end_col + parts[1].chars().count() + 1;
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| ParseError::new(1, n_col, format!("expected a point count, found '{}'", parts[2])))?;
        if n == 0 || n > MAX_TIMES {
            return Err(ParseError::new(1, n_col, format!("point count must be in 1..={MAX_TIMES}")));
        }
        if end < start {
            return Err(ParseError::new(1, end_col, "end must not precede start"));
        }
        if n == 1 {
            vec![start]
        } else {
            let step = (end - start) / (n - 1) as f64;
            (0..n).map(|k| if k == n - 1 { end } else { start + step * k as f64 }).collect()
        }
    } else {
        numbers(spec, 1, ',')?
    };
    if times.len() > MAX_TIMES {
        return Err(ParseError::new(1, 1, format!("at most {MAX_TIMES} times")));
    }
    if let Some(k) = times.iter().position(|&t| t < 0.0) {
        return Err(ParseError::new(1, 1, format!("time {} at position {} is negative", times[k], k + 1)));
    }
    Ok(times)
}
