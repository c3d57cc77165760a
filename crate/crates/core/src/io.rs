//! JSON and CSV formats for functions, operators, states, Gelfand grids and zero sets.
//!
//! Coordinates `x`, `xi` are position indices in `0..d` (the coordinate
//! itself when `n = 1`). Floats are written in shortest round-trip form, so
//! reading back reproduces the values bit for bit.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::gelfand::DoubledFunction;
use crate::algebra::ideal::ZeroSet;
use crate::error::{QhaError, Result};
use crate::function::PhaseFunction;
use crate::model::ModelParams;
use crate::operator::Operator;
use crate::scalar::{c, Real, C};
use crate::state::StateVector;

type Pair = [f64; 2];

fn pair<T: Real>(v: C<T>) -> Pair {
    [v.re.as_f64(), v.im.as_f64()]
}

fn complex<T: Real>(v: Pair, idx: usize) -> Result<C<T>> {
    if !(v[0].is_finite() && v[1].is_finite()) {
        return Err(QhaError::NonFinite(idx));
    }
    Ok(c(T::lit(v[0]), T::lit(v[1])))
}

fn json_error(e: serde_json::Error) -> QhaError {
    if e.is_io() {
        return QhaError::Io(e.into());
    }
    let text = e.to_string();
    let message = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m).to_string();
    QhaError::Parse { location: format!("line {}, column {}", e.line(), e.column()), message }
}

fn header_params(n: u32, modulus: u32, expected: Option<ModelParams>) -> Result<ModelParams> {
    let p = ModelParams::new(n, modulus)?;
    if let Some(e) = expected {
        e.ensure_same(&p)?;
    }
    Ok(p)
}

#[derive(Serialize, Deserialize)]
struct FunctionJson {
    n: u32,
    #[serde(rename = "N")]
    modulus: u32,
    values: Vec<Pair>,
}

pub fn function_to_json<T: Real>(f: &PhaseFunction<T>) -> String {
    let p = f.params();
    let doc = FunctionJson { n: p.n(), modulus: p.modulus(), values: f.values().iter().map(|&v| pair(v)).collect() };
    serde_json::to_string(&doc).expect("plain data")
}

/// Parses a function; `expected` rejects files written for another model.
pub fn function_from_json<T: Real>(text: &str, expected: Option<ModelParams>) -> Result<PhaseFunction<T>> {
    let doc: FunctionJson = serde_json::from_str(text).map_err(json_error)?;
    let p = header_params(doc.n, doc.modulus, expected)?;
    let values = doc.values.into_iter().enumerate().map(|(i, v)| complex(v, i)).collect::<Result<_>>()?;
    PhaseFunction::new(p, values)
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    n: u32,
    #[serde(rename = "N")]
    modulus: u32,
    matrix: Vec<Vec<Pair>>,
}

pub fn operator_to_json<T: Real>(a: &Operator<T>) -> String {
    let p = a.params();
    let d = p.dim();
    let matrix = (0..d).map(|s| (0..d).map(|t| pair(a.at(s, t))).collect()).collect();
    serde_json::to_string(&OperatorJson { n: p.n(), modulus: p.modulus(), matrix }).expect("plain data")
}

pub fn operator_from_json<T: Real>(text: &str, expected: Option<ModelParams>) -> Result<Operator<T>> {
    let doc: OperatorJson = serde_json::from_str(text).map_err(json_error)?;
    let p = header_params(doc.n, doc.modulus, expected)?;
    let d = p.dim();
    if doc.matrix.len() != d {
        return Err(QhaError::DimensionMismatch { expected: d, got: doc.matrix.len() });
    }
    let mut m = nalgebra::DMatrix::from_element(d, d, c(T::zero(), T::zero()));
    for (s, row) in doc.matrix.iter().enumerate() {
        if row.len() != d {
            return Err(QhaError::Parse {
                location: format!("matrix row {s}"),
                message: format!("expected {d} entries, got {}", row.len()),
            });
        }
        for (t, &v) in row.iter().enumerate() {
            m[(s, t)] = complex(v, s * d + t)?;
        }
    }
    Operator::new(p, m)
}

/// A state as a bare JSON array of `[re, im]`.
pub fn state_to_json<T: Real>(v: &StateVector<T>) -> String {
    let vals: Vec<Pair> = v.values().iter().map(|&x| pair(x)).collect();
    serde_json::to_string(&vals).expect("plain data")
}

pub fn state_from_json<T: Real>(text: &str, p: ModelParams) -> Result<StateVector<T>> {
    let vals: Vec<Pair> = serde_json::from_str(text).map_err(json_error)?;
    let values = vals.into_iter().enumerate().map(|(i, v)| complex(v, i)).collect::<Result<_>>()?;
    StateVector::new(p, values)
}

fn csv_error(e: csv::Error) -> QhaError {
    let location = match e.position() {
        Some(pos) => format!("line {}", pos.line()),
        None => "csv".into(),
    };
    QhaError::Parse { location, message: e.to_string() }
}

fn write_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Reads rows of `width` fields with the given header. Yields `(line, fields)`.
fn read_csv(text: &str, header: &[&str]) -> Result<Vec<(u64, Vec<String>)>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let got: Vec<String> = r.headers().map_err(csv_error)?.iter().map(str::to_owned).collect();
    if got != header {
        return Err(QhaError::Parse {
            location: "line 1".into(),
            message: format!("expected header {}, got {}", header.join(","), got.join(",")),
        });
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        out.push((line, rec.iter().map(str::to_owned).collect()));
    }
    Ok(out)
}

fn field<V: std::str::FromStr>(line: u64, fields: &[String], i: usize, name: &str) -> Result<V> {
    fields[i].parse().map_err(|_| QhaError::Parse {
        location: format!("line {line}, column {}", i + 1),
        message: format!("invalid {name} `{}`", fields[i]),
    })
}

fn index_in(line: u64, v: usize, bound: usize, name: &str) -> Result<usize> {
    if v < bound {
        Ok(v)
    } else {
        Err(QhaError::Parse {
            location: format!("line {line}"),
            message: format!("{name} = {v} out of range 0..{bound}"),
        })
    }
}

/// Places each row's value exactly once into a grid of `len` slots.
fn fill_grid<T: Real>(len: usize, rows: impl Iterator<Item = Result<(u64, usize, C<T>)>>) -> Result<Vec<C<T>>> {
    let mut values = vec![None; len];
    for r in rows {
        let (line, k, v) = r?;
        if values[k].replace(v).is_some() {
            return Err(QhaError::Parse { location: format!("line {line}"), message: "duplicate entry".into() });
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| QhaError::Parse { location: "csv".into(), message: format!("missing entry for index {k}") })
        })
        .collect()
}

fn num<T: Real>(v: T) -> String {
    v.as_f64().to_string()
}

pub fn function_to_csv<T: Real>(f: &PhaseFunction<T>) -> String {
    let p = *f.params();
    write_csv(
        &["x", "xi", "re", "im"],
        (0..p.phase_len()).map(|z| {
            let (x, k) = p.split(z);
            vec![x.to_string(), k.to_string(), num(f.at(z).re), num(f.at(z).im)]
        }),
    )
}

pub fn function_from_csv<T: Real>(text: &str, p: ModelParams) -> Result<PhaseFunction<T>> {
    let d = p.dim();
    let rows = read_csv(text, &["x", "xi", "re", "im"])?;
    let values = fill_grid(
        p.phase_len(),
        rows.iter().map(|(line, f)| {
            let x = index_in(*line, field(*line, f, 0, "x")?, d, "x")?;
            let k = index_in(*line, field(*line, f, 1, "xi")?, d, "xi")?;
            let v = c(T::lit(field(*line, f, 2, "re")?), T::lit(field(*line, f, 3, "im")?));
            Ok((*line, p.join(x, k), v))
        }),
    )?;
    PhaseFunction::new(p, values)
}

pub fn operator_to_csv<T: Real>(a: &Operator<T>) -> String {
    let d = a.params().dim();
    write_csv(
        &["row", "col", "re", "im"],
        (0..d * d).map(|k| {
            let v = a.at(k / d, k % d);
            vec![(k / d).to_string(), (k % d).to_string(), num(v.re), num(v.im)]
        }),
    )
}

pub fn operator_from_csv<T: Real>(text: &str, p: ModelParams) -> Result<Operator<T>> {
    let d = p.dim();
    let rows = read_csv(text, &["row", "col", "re", "im"])?;
    let values = fill_grid(
        d * d,
        rows.iter().map(|(line, f)| {
            let s = index_in(*line, field(*line, f, 0, "row")?, d, "row")?;
            let t = index_in(*line, field(*line, f, 1, "col")?, d, "col")?;
            let v = c(T::lit(field(*line, f, 2, "re")?), T::lit(field(*line, f, 3, "im")?));
            Ok((*line, s * d + t, v))
        }),
    )?;
    Ok(Operator::from_fn(p, |s, t| values[s * d + t]))
}

/// The Gelfand grid as `(x, xi, j, re, im)` rows, sheet-major.
pub fn doubled_to_csv<T: Real>(g: &DoubledFunction<T>) -> String {
    let p = *g.params();
    let n = p.phase_len();
    write_csv(
        &["x", "xi", "j", "re", "im"],
        (0..2 * n).map(|k| {
            let (x, xi) = p.split(k % n);
            let v = g.values()[k];
            vec![x.to_string(), xi.to_string(), (k / n).to_string(), num(v.re), num(v.im)]
        }),
    )
}

pub fn doubled_from_csv<T: Real>(text: &str, p: ModelParams) -> Result<DoubledFunction<T>> {
    let d = p.dim();
    let n = p.phase_len();
    let rows = read_csv(text, &["x", "xi", "j", "re", "im"])?;
    let values = fill_grid(
        2 * n,
        rows.iter().map(|(line, f)| {
            let x = index_in(*line, field(*line, f, 0, "x")?, d, "x")?;
            let k = index_in(*line, field(*line, f, 1, "xi")?, d, "xi")?;
            let j = index_in(*line, field(*line, f, 2, "j")?, 2, "j")?;
            let v = c(T::lit(field(*line, f, 3, "re")?), T::lit(field(*line, f, 4, "im")?));
            Ok((*line, j * n + p.join(x, k), v))
        }),
    )?;
    DoubledFunction::new(p, values)
}

/// A zero set as a JSON list of `[x, xi, j]`.
pub fn zero_set_to_json(p: &ModelParams, s: &ZeroSet) -> String {
    let n = p.phase_len();
    let triples: Vec<[usize; 3]> = s
        .iter()
        .map(|&k| {
            let (x, xi) = p.split(k % n);
            [x, xi, k / n]
        })
        .collect();
    serde_json::to_string(&triples).expect("plain data")
}

pub fn zero_set_from_json(text: &str, p: &ModelParams) -> Result<ZeroSet> {
    let triples: Vec<[usize; 3]> = serde_json::from_str(text).map_err(json_error)?;
    let d = p.dim();
    let mut out = BTreeSet::new();
    for (i, [x, xi, j]) in triples.into_iter().enumerate() {
        if x >= d || xi >= d || j > 1 {
            return Err(QhaError::Parse {
                location: format!("entry {i}"),
                message: format!("[{x}, {xi}, {j}] is outside the doubled spectrum"),
            });
        }
        out.insert(j * p.phase_len() + p.join(x, xi));
    }
    Ok(out)
}
