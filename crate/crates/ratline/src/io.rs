//! Grid specifications, CSV tables and the JSON envelope.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use ratline_core::osc::OscPart;
use ratline_core::{MobiusMap, OscillatoryFunction};

use crate::error::HarnessError;

/// Longest grid a range may expand to.
pub const MAX_RANGE_LEN: usize = 10_000_000;

fn bad(input: &str, reason: impl Into<String>) -> HarnessError {
    HarnessError::BadRange {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_f64(input: &str, s: &str) -> Result<f64, HarnessError> {
    let v: f64 = s.trim().parse().map_err(|_| bad(input, format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(bad(input, "values must be finite"));
    }
    Ok(v)
}

/// Parse `start:stop:step`, `start:stop:dyadic` or a comma separated list.
///
/// Stepped ranges include `stop` when it is hit up to rounding; dyadic
/// ranges double from `start` while not exceeding `stop`.
pub fn parse_range(input: &str) -> Result<Vec<f64>, HarnessError> {
    let fields: Vec<&str> = input.split(':').collect();
    match fields.as_slice() {
        [list] => {
            let vals = list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_f64(input, s))
                .collect::<Result<Vec<_>, _>>()?;
            if vals.is_empty() {
                return Err(bad(input, "empty list"));
            }
            Ok(vals)
        }
        [a, b, step] => {
            let a = parse_f64(input, a)?;
            let b = parse_f64(input, b)?;
            if b < a {
                return Err(bad(input, "stop is below start"));
            }
            if step.trim() == "dyadic" {
                if a <= 0.0 {
                    return Err(bad(input, "dyadic ranges need a positive start"));
                }
                let mut out = Vec::new();
                let mut v = a;
                while v <= b * (1.0 + 1e-12) {
                    out.push(v);
                    v *= 2.0;
                }
                return Ok(out);
            }
            let h = parse_f64(input, step)?;
            if h <= 0.0 {
                return Err(bad(input, "step must be positive"));
            }
            let count = ((b - a) / h + 1e-9).floor();
            if count >= MAX_RANGE_LEN as f64 {
                return Err(bad(input, "range is too long"));
            }
            Ok((0..=count as usize).map(|i| a + h * i as f64).collect())
        }
        _ => Err(bad(input, "expected `start:stop:step`, `start:stop:dyadic` or `a,b,c`")),
    }
}

/// [`parse_range`] restricted to non-negative integers.
pub fn parse_int_range(input: &str) -> Result<Vec<usize>, HarnessError> {
    parse_range(input)?
        .into_iter()
        .map(|v| {
            let r = v.round();
            if (v - r).abs() > 1e-9 || r < 0.0 {
                Err(bad(input, format!("{v} is not a non-negative integer")))
            } else {
                Ok(r as usize)
            }
        })
        .collect()
}

/// Open `path` for writing, or stdout when absent or `-`.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, HarnessError> {
    match path {
        Some(p) if p != Path::new("-") => {
            let f = File::create(p).map_err(|source| HarnessError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        _ => Ok(Box::new(io::stdout().lock())),
    }
}

/// Write a header and numeric rows.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<f64>]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v:?}")))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Read a table written by [`write_csv`].
pub fn read_csv<R: io::Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>), HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| HarnessError::Invalid(format!("non-numeric CSV field `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub beta: f64,
    pub n: Option<usize>,
    pub function: String,
}

/// `{meta: {beta, n, function}, data: ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub meta: Meta,
    pub data: T,
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &Envelope<T>) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).and_then(|_| out.flush()).map_err(|source| HarnessError::Io {
        path: "<output>".into(),
        source,
    })?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<Envelope<T>, HarnessError> {
    let f = File::open(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_reader(io::BufReader::new(f))?)
}

/// The parts of an oscillatory function as stored in an envelope.
pub fn to_parts(g: &OscillatoryFunction) -> Vec<OscPart> {
    g.parts().to_vec()
}

/// Rebuild an oscillatory function; every part must use `beta`.
pub fn from_parts(beta: f64, parts: Vec<OscPart>) -> Result<OscillatoryFunction, HarnessError> {
    let map = MobiusMap::new(beta)?;
    let mut g = OscillatoryFunction::zero(map);
    for p in parts {
        if p.expansion.map() != map {
            return Err(HarnessError::Invalid(format!(
                "part at wavenumber {} uses beta {} but the file declares {beta}",
                p.wavenumber,
                p.expansion.map().beta()
            )));
        }
        g.add_part(p.wavenumber, &p.expansion);
    }
    Ok(g)
}
