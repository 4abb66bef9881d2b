//! Impedance sweep files.
//!
//! ```text
//! # n = 2
//! # spacing = 0.25
//! # unit = relative
//! f_rel,re_z11,im_z11,re_z12,im_z12
//! 0.85,73.1,-35.2,40.7,-28.9
//! ```
//!
//! One row per frequency, holding the `N/2 + 1` independent first-row
//! entries of the circulant impedance matrix in ohms.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::array_model::{independent_entries, ArraySweep};
use crate::error::{Error, Result};
use crate::netalg::FrequencyGrid;

fn column_header(n: usize) -> String {
    let mut s = String::from("f_rel");
    for k in 1..=independent_entries(n) {
        write!(s, ",re_z1{k},im_z1{k}").unwrap();
    }
    s
}

/// Serialize with shortest round-trip float formatting.
pub fn write_impedance(sweep: &ArraySweep) -> String {
    let mut out = String::new();
    writeln!(out, "# n = {}", sweep.n()).unwrap();
    writeln!(out, "# spacing = {}", sweep.spacing()).unwrap();
    writeln!(out, "# unit = relative").unwrap();
    writeln!(out, "{}", column_header(sweep.n())).unwrap();
    for (f, row) in sweep.grid().samples().iter().zip(sweep.first_row()) {
        out.push_str(&f.to_string());
        for z in row {
            write!(out, ",{},{}", z.re, z.im).unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(field: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("{what}: '{}' is not a number", field.trim())))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("{what}: {v} is not finite")));
    }
    Ok(v)
}

/// Parse file contents. `band` defaults to the full frequency range.
pub fn parse_impedance_str(text: &str, band: Option<(f64, f64)>) -> Result<ArraySweep> {
    let (mut n, mut spacing, mut unit) = (None, None, None);
    let mut header_seen = false;
    let mut freqs = Vec::new();
    let mut rows = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(meta) = trimmed.strip_prefix('#') {
            if header_seen {
                return Err(parse_err(line, "metadata after column header"));
            }
            let (key, value) = meta
                .split_once('=')
                .ok_or_else(|| parse_err(line, "expected '# key = value'"))?;
            let value = value.trim();
            match key.trim() {
                "n" => {
                    let v: usize = value
                        .parse()
                        .map_err(|_| parse_err(line, format!("n: '{value}' is not a positive integer")))?;
                    if v == 0 {
                        return Err(parse_err(line, "n must be at least 1"));
                    }
                    n = Some(v);
                }
                "spacing" => spacing = Some(parse_f64(value, line, "spacing")?),
                "unit" => {
                    if value != "relative" {
                        return Err(parse_err(line, format!("unsupported frequency unit '{value}' (expected 'relative')")));
                    }
                    unit = Some(());
                }
                other => return Err(parse_err(line, format!("unknown header key '{other}'"))),
            }
            continue;
        }
        let n = n.ok_or_else(|| parse_err(line, "missing '# n = ...' header"))?;
        if !header_seen {
            if spacing.is_none() {
                return Err(parse_err(line, "missing '# spacing = ...' header"));
            }
            if unit.is_none() {
                return Err(parse_err(line, "missing '# unit = ...' header"));
            }
            let want = column_header(n);
            let got: String = trimmed.split(',').map(str::trim).collect::<Vec<_>>().join(",");
            if got != want {
                return Err(parse_err(line, format!("column header '{got}', expected '{want}'")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        let m = independent_entries(n);
        if fields.len() != 1 + 2 * m {
            return Err(parse_err(line, format!("{} columns, expected {}", fields.len(), 1 + 2 * m)));
        }
        let f = parse_f64(fields[0], line, "f_rel")?;
        if !(f > 0.0) {
            return Err(parse_err(line, format!("frequency {f} must be positive")));
        }
        if let Some(&prev) = freqs.last() {
            if !(f > prev) {
                return Err(parse_err(line, format!("frequency {f} does not increase (previous {prev})")));
            }
        }
        let row = (0..m)
            .map(|k| {
                Ok(Complex64::new(
                    parse_f64(fields[1 + 2 * k], line, "real part")?,
                    parse_f64(fields[2 + 2 * k], line, "imaginary part")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        freqs.push(f);
        rows.push(row);
    }
    let n = n.ok_or_else(|| parse_err(last_line.max(1), "missing '# n = ...' header"))?;
    if freqs.is_empty() {
        return Err(parse_err(last_line.max(1), "no data rows"));
    }
    let band = band.unwrap_or((freqs[0], freqs[freqs.len() - 1]));
    let grid = FrequencyGrid::new(freqs, band)?;
    ArraySweep::new(n, spacing.unwrap_or(0.0), grid, rows)
}

pub fn parse_impedance(path: &Path, band: Option<(f64, f64)>) -> Result<ArraySweep> {
    let text = std::fs::read_to_string(path)?;
    parse_impedance_str(&text, band)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array_model::{fit_modes, synthesize_sweep, EigenModeSet};

    const SMALL: &str = "# n = 2\n# spacing = 0.25\n# unit = relative\nf_rel,re_z11,im_z11,re_z12,im_z12\n0.9,70,-20,40,-28\n1.0,73,0,41,-28\n1.1,75,20,42,-27\n";

    #[test]
    fn three_rows() {
        let s = parse_impedance_str(SMALL, None).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.grid().len(), 3);
        assert_eq!(s.spacing(), 0.25);
        assert_eq!(s.first_row()[1][1], Complex64::new(41.0, -28.0));
    }

    #[test]
    fn shuffled_rows_name_first_bad_line() {
        let text = SMALL.replace("1.0,73,0,41,-28\n1.1,75,20,42,-27\n", "1.1,75,20,42,-27\n1.0,73,0,41,-28\n");
        match parse_impedance_str(&text, None) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 7);
                assert!(message.contains("does not increase"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs_are_line_numbered() {
        let cases = [
            (SMALL.replace("1.0,73,0,41,-28", "1.0,73,0,41"), 6),
            (SMALL.replace("1.0,73,0,41,-28", "1.0,73,x,41,-28"), 6),
            (SMALL.replace("# unit = relative", "# unit = hz"), 3),
            (SMALL.replace("# spacing = 0.25", "# spacing = 0.25\n# colour = red"), 3),
            (SMALL.replace("f_rel,re_z11", "freq,re_z11"), 4),
            (SMALL.replace("0.9,70", "-0.9,70"), 5),
            (SMALL.replace("0.9,70", "NaN,70"), 5),
        ];
        for (text, want) in cases {
            match parse_impedance_str(&text, None) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("unexpected {other:?} for\n{text}"),
            }
        }
        assert!(matches!(parse_impedance_str("", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn write_parse_fit_round_trip() {
        let grid = FrequencyGrid::uniform(0.85, 1.15, 601, (0.85, 1.15)).unwrap();
        let set = EigenModeSet::from_parameters(2, &[(118.76, 3.75, 1.0425), (28.31, 16.0, 0.9675)], (0.85, 1.15)).unwrap();
        let sweep = synthesize_sweep(0.25, grid, &set).unwrap();
        let text = write_impedance(&sweep);
        let back = parse_impedance_str(&text, Some((0.85, 1.15))).unwrap();
        assert_eq!(back, sweep);
        assert_eq!(write_impedance(&back), text);
        let fit = fit_modes(&back, (0.85, 1.15)).unwrap();
        for (got, want) in fit.modes.iter().zip(&set.modes) {
            for (a, b) in [(got.r, want.r), (got.q, want.q), (got.f0, want.f0)] {
                assert!((a - b).abs() / b < 1e-6);
            }
        }
    }
}
