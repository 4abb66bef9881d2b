//! Result tables (CSV) and reproducibility documents (JSON).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::array_model::{usable_bandwidth, vswr, EigenModeSet};
use crate::capacity::{OutageCurve, SimConfig};
use crate::error::Result;
use crate::fano::{fano_integral_check, MatchSpec};
use crate::io::config::config_hash;

/// Capacity unit of emitted results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Nats,
    Bits,
}

impl Unit {
    pub fn name(self) -> &'static str {
        match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        }
    }

    pub fn convert(self, nats: f64) -> f64 {
        match self {
            Unit::Nats => nats,
            Unit::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

fn csv_text(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// `spacing,c0_<unit>,ci_half_width,m,seed,config_hash,status`.
pub fn curve_table(curve: &OutageCurve, unit: Unit) -> String {
    let hash = config_hash(&curve.config);
    let mut out = format!("spacing,c0_{},ci_half_width,m,seed,config_hash,status\n", unit.name());
    for p in &curve.points {
        match &p.result {
            Ok(o) => writeln!(
                out,
                "{},{},{},{},{},{hash},ok",
                p.spacing,
                unit.convert(o.c0),
                unit.convert(o.half_width),
                p.realizations,
                curve.config.seed
            ),
            Err(e) => writeln!(
                out,
                "{},,,{},{},{hash},{}",
                p.spacing,
                p.realizations,
                curve.config.seed,
                csv_text(&format!("error: {e}"))
            ),
        }
        .unwrap();
    }
    out
}

pub fn curve_document(curve: &OutageCurve, unit: Unit) -> Value {
    let points: Vec<Value> = curve
        .points
        .iter()
        .map(|p| match &p.result {
            Ok(o) => json!({
                "spacing": p.spacing,
                "c0": unit.convert(o.c0),
                "ci_lower": unit.convert(o.lower),
                "ci_upper": unit.convert(o.upper),
                "ci_half_width": unit.convert(o.half_width),
                "mean": p.mean.map(|m| unit.convert(m)),
                "realizations": p.realizations,
            }),
            Err(e) => json!({
                "spacing": p.spacing,
                "error": e,
                "realizations": p.realizations,
            }),
        })
        .collect();
    json!({
        "unit": format!("{}/s/Hz", unit.name()),
        "outage_level": curve.config.outage_level,
        "config_hash": config_hash(&curve.config),
        "config": curve.config,
        "points": points,
    })
}

fn mode_rows(set: &EigenModeSet) -> Vec<Value> {
    set.modes
        .iter()
        .zip(&set.residuals)
        .map(|(m, res)| {
            let (lo, hi) = usable_bandwidth(m);
            json!({
                "dft_index": m.dft_index,
                "multiplicity": m.multiplicity,
                "r_ohm": m.r,
                "q": m.q,
                "f0": m.f0,
                "l_times_fc": m.inductance_fc(),
                "c_times_fc": m.capacitance_fc(),
                "usable_lo": lo,
                "usable_hi": hi,
                "usable_width": hi - lo,
                "fit_residual_ohm": res,
            })
        })
        .collect()
}

const MODE_COLUMNS: [&str; 11] = [
    "dft_index",
    "multiplicity",
    "r_ohm",
    "q",
    "f0",
    "l_times_fc",
    "c_times_fc",
    "usable_lo",
    "usable_hi",
    "usable_width",
    "fit_residual_ohm",
];

fn table(columns: &[&str], rows: &[Value]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = columns
            .iter()
            .map(|c| match &row[*c] {
                Value::Null => String::new(),
                Value::String(s) => csv_text(s),
                v => v.to_string(),
            })
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn mode_table(set: &EigenModeSet) -> String {
    table(&MODE_COLUMNS, &mode_rows(set))
}

pub fn mode_document(set: &EigenModeSet, source: &str, config: Option<&SimConfig>) -> Value {
    json!({
        "source": source,
        "n": set.n,
        "fit_band": [set.band.0, set.band.1],
        "modes": mode_rows(set),
        "config_hash": config.map(config_hash),
        "config": config,
    })
}

fn match_rows(set: &EigenModeSet, specs: &[MatchSpec]) -> Vec<Value> {
    set.modes
        .iter()
        .zip(specs)
        .map(|(m, s)| {
            let check = fano_integral_check(s, m);
            json!({
                "dft_index": m.dft_index,
                "multiplicity": m.multiplicity,
                "q": m.q,
                "f0": m.f0,
                "w": s.w,
                "gamma0": s.gamma0,
                "gamma0_sq_lower": s.gamma0_sq_lower,
                "gamma0_sq_upper": s.gamma0_sq_upper,
                "rhp_alpha": s.rhp_zero.re,
                "vswr": vswr(s.gamma0),
                "usable": s.usable,
                "residual_a": check.residual_a,
                "residual_b": check.residual_b,
                "bound_b": check.bound_b,
            })
        })
        .collect()
}

const MATCH_COLUMNS: [&str; 14] = [
    "dft_index",
    "multiplicity",
    "q",
    "f0",
    "w",
    "gamma0",
    "gamma0_sq_lower",
    "gamma0_sq_upper",
    "rhp_alpha",
    "vswr",
    "usable",
    "residual_a",
    "residual_b",
    "bound_b",
];

pub fn match_table(set: &EigenModeSet, specs: &[MatchSpec]) -> String {
    table(&MATCH_COLUMNS, &match_rows(set, specs))
}

pub fn match_document(set: &EigenModeSet, specs: &[MatchSpec], source: &str, config: Option<&SimConfig>) -> Value {
    json!({
        "source": source,
        "n": set.n,
        "matches": match_rows(set, specs),
        "config_hash": config.map(config_hash),
        "config": config,
    })
}

/// Write `<stem>.csv` and `<stem>.json` into `dir`, creating it if needed.
pub fn write_pair(dir: &Path, stem: &str, csv: &str, doc: &Value) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{stem}.csv"));
    let json_path = dir.join(format!("{stem}.json"));
    std::fs::write(&csv_path, csv)?;
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    std::fs::write(&json_path, text)?;
    Ok(vec![csv_path, json_path])
}
