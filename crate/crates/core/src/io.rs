//! File formats: curve CSV, distance/mass CSV, function JSON.
//!
//! CSV inputs have no header row; `#` starts a comment line and blank lines
//! are ignored. Rationals are written `num/den`, integers and decimals are
//! accepted on input.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, parse_rational, Rational};
use crate::exactnum::SurdValue;
use crate::pwl::{FunctionFile, PeriodicPiecewiseLinear};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

pub const CURVE_HEADER: [&str; 5] = ["x", "value_p", "value_q", "value_s", "value_float"];

pub fn write_curve_csv<W: Write>(out: W, rows: &[(Rational, SurdValue)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CURVE_HEADER).map_err(csv_error)?;
    for (x, v) in rows {
        w.write_record([
            format_rational(x),
            format_rational(v.p()),
            format_rational(v.q()),
            format_rational(v.s()),
            format_float(v.to_f64()),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a table with a header row; cells are written verbatim.
pub fn write_table_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

/// Rows of rationals with their 1-based line numbers.
pub fn read_rational_rows<R: Read>(input: R, what: &str) -> Result<Vec<(u64, Vec<Rational>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::Parse(format!("{what}: line {line}: {e}"))
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                parse_rational(cell).map_err(|e| {
                    Error::Parse(format!("{what}: line {line}, column {}: {e}", col + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((line, row));
    }
    Ok(rows)
}

/// Square distance matrix, one row per line.
pub fn read_distance_matrix<R: Read>(input: R) -> Result<Vec<Vec<Rational>>> {
    let rows = read_rational_rows(input, "distance matrix")?;
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("distance matrix: no rows".into()));
    }
    for (line, row) in &rows {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "distance matrix: line {line}: expected {n} entries, found {}",
                row.len()
            )));
        }
    }
    Ok(rows.into_iter().map(|(_, row)| row).collect())
}

/// Mass or value vector, either one entry per line or a single row.
pub fn read_vector<R: Read>(input: R, what: &str) -> Result<Vec<Rational>> {
    let rows = read_rational_rows(input, what)?;
    if rows.len() == 1 {
        return Ok(rows.into_iter().next().map(|(_, r)| r).unwrap_or_default());
    }
    let mut out = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        if row.len() != 1 {
            return Err(Error::Parse(format!(
                "{what}: line {line}: expected one entry per line, found {}",
                row.len()
            )));
        }
        out.extend(row);
    }
    Ok(out)
}

pub fn read_function_json(text: &str) -> Result<PeriodicPiecewiseLinear> {
    let file: FunctionFile = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("function JSON: line {}, column {}: {e}", e.line(), e.column()))
    })?;
    PeriodicPiecewiseLinear::from_json(&file)
}

pub fn read_function_file(path: &Path) -> Result<PeriodicPiecewiseLinear> {
    let text = std::fs::read_to_string(path)?;
    read_function_json(&text)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn curve_csv_layout() {
        let rows = vec![
            (int(0), SurdValue::new(int(2), int(-1), int(2)).unwrap()),
            (int(1), SurdValue::rational(int(1))),
        ];
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,value_p,value_q,value_s,value_float");
        assert_eq!(lines[1], "0/1,2/1,-1/1,2/1,5.8578643762690497e-1");
        assert_eq!(lines[2], "1/1,1/1,0/1,0/1,1.0000000000000000e0");
    }

    #[test]
    fn float_round_trips() {
        for v in [0.1, 1.0 / 3.0, 2.0 - 2f64.sqrt(), 1e-300] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn matrix_parsing() {
        let text = "# three points\n0, 1, 2\n1, 0, 1\n\n2, 1/1, 0\n";
        let d = read_distance_matrix(text.as_bytes()).unwrap();
        assert_eq!(d[2][1], int(1));
        let bad = "0,1\n1,x\n";
        let err = read_distance_matrix(bad.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let ragged = "0,1\n1\n";
        let err = read_distance_matrix(ragged.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn vector_parsing() {
        assert_eq!(read_vector("1,2,1/2\n".as_bytes(), "masses").unwrap(), vec![int(1), int(2), rat(1, 2)]);
        assert_eq!(read_vector("1\n0.5\n".as_bytes(), "masses").unwrap(), vec![int(1), rat(1, 2)]);
        assert!(read_vector("1\n2,3\n".as_bytes(), "masses").is_err());
    }

    #[test]
    fn function_json_errors_carry_position() {
        let err = read_function_json("{\"period\": \"2/1\",\n \"points\": [}").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let f = read_function_json(r#"{"period":"2/1","points":[["-1/1","1/1"],["0/1","0/1"]]}"#).unwrap();
        assert_eq!(f, PeriodicPiecewiseLinear::hat());
    }
}
