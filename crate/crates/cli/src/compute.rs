//! `compute`: transforms, quantization, norms, Gelfand grids and ideals on files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use qha_core::algebra::gelfand::gelfand_transform;
use qha_core::algebra::ideal::{ideal_from_zero_set, is_j_symmetric};
use qha_core::fixtures::discrete_gaussian_operator;
use qha_core::io;
use qha_core::norms::feichtinger_op::{feichtinger_op_values, FEICHTINGER_OP_NORMS};
use qha_core::norms::{registry, NormKind};
use qha_core::transform::{fourier_weyl, weyl_quantize, weyl_symbol};
use qha_core::{ModelParams, Operator, PhaseFunction, QhaPair};
use serde::Serialize;

use crate::output::{emit, Format};

pub const DEFAULT_IDEAL_TOL: f64 = 1e-10;
const CLOSURE_SAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Symplectic Fourier of a function, Fourier–Weyl of an operator.
    Transform,
    /// Weyl quantization of a function.
    Quantize,
    /// Weyl symbol of an operator.
    Symbol,
    /// All registered norms of the input (pair) as a JSON map.
    Norms,
    /// Gelfand transform of the input pair as an (x, xi, j, re, im) grid.
    Gelfand,
    /// Dimension and closure data of the ideal vanishing on a zero set.
    Ideal,
}

pub struct ComputeArgs<'a> {
    pub mode: Mode,
    pub inputs: &'a [PathBuf],
    pub zero_set: Option<&'a Path>,
    pub out: Option<&'a Path>,
    /// Parameters given by flag or config; these win over file headers.
    pub explicit: Option<ModelParams>,
    pub seed: u64,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug)]
pub enum Input {
    Function(PhaseFunction<f64>),
    Operator(Operator<f64>),
}

impl Input {
    fn params(&self) -> ModelParams {
        match self {
            Input::Function(f) => *f.params(),
            Input::Operator(a) => *a.params(),
        }
    }
}

/// Detects the kind of a file from its JSON keys or CSV header.
pub fn load_input(path: &Path, explicit: Option<ModelParams>) -> Result<Input> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ctx = || format!("in {}", path.display());
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let Ok(probe) = serde_json::from_str::<serde_json::Value>(&text) else {
            // Malformed JSON: let the function parser report the position.
            return Ok(Input::Function(io::function_from_json(&text, explicit).with_context(ctx)?));
        };
        if probe.get("values").is_some() {
            return Ok(Input::Function(io::function_from_json(&text, explicit).with_context(ctx)?));
        }
        if probe.get("matrix").is_some() {
            return Ok(Input::Operator(io::operator_from_json(&text, explicit).with_context(ctx)?));
        }
        bail!("{}: JSON input needs a \"values\" (function) or \"matrix\" (operator) key", path.display());
    }
    if trimmed.starts_with('[') {
        bail!("{}: state vectors are not accepted here; use a function or operator file", path.display());
    }
    let p = explicit.unwrap_or(ModelParams::new(crate::config::DEFAULT_N, crate::config::DEFAULT_MODULUS)?);
    let header = trimmed.lines().next().unwrap_or("").replace(' ', "");
    if header.starts_with("x,xi,") {
        return Ok(Input::Function(io::function_from_csv(&text, p).with_context(ctx)?));
    }
    if header.starts_with("row,col,") {
        return Ok(Input::Operator(io::operator_from_csv(&text, p).with_context(ctx)?));
    }
    bail!("{}: unrecognized input; expected JSON or a CSV with an x,xi or row,col header", path.display())
}

fn load_all(paths: &[PathBuf], explicit: Option<ModelParams>) -> Result<Vec<Input>> {
    let inputs = paths.iter().map(|p| load_input(p, explicit)).collect::<Result<Vec<_>>>()?;
    if let Some(first) = inputs.first() {
        for (path, x) in paths.iter().zip(&inputs).skip(1) {
            first.params().ensure_same(&x.params()).with_context(|| format!("in {}", path.display()))?;
        }
    }
    Ok(inputs)
}

fn single(inputs: Vec<Input>, mode: Mode) -> Result<Input> {
    match <[Input; 1]>::try_from(inputs) {
        Ok([x]) => Ok(x),
        Err(v) => bail!("{mode:?} mode takes exactly one --in file, got {}", v.len()),
    }
}

/// At most one function and one operator, combined into a pair.
fn as_pair(inputs: Vec<Input>) -> Result<QhaPair<f64>> {
    let (mut f, mut a) = (None, None);
    for x in inputs {
        match x {
            Input::Function(g) if f.is_none() => f = Some(g),
            Input::Operator(b) if a.is_none() => a = Some(b),
            _ => bail!("a pair takes at most one function and one operator"),
        }
    }
    Ok(match (f, a) {
        (Some(f), Some(a)) => QhaPair::new(f, a)?,
        (Some(f), None) => QhaPair::from_function(f),
        (None, Some(a)) => QhaPair::from_operator(a),
        (None, None) => bail!("no --in file given"),
    })
}

fn function_out(f: &PhaseFunction<f64>, fmt: Format) -> String {
    match fmt {
        Format::Json => io::function_to_json(f),
        Format::Csv => io::function_to_csv(f),
    }
}

fn operator_out(a: &Operator<f64>, fmt: Format) -> String {
    match fmt {
        Format::Json => io::operator_to_json(a),
        Format::Csv => io::operator_to_csv(a),
    }
}

#[derive(Debug, Serialize)]
pub struct IdealSummary {
    pub dim: usize,
    pub zero_set_size: usize,
    pub product_closure_defect: f64,
    pub graded: bool,
    pub j_symmetric: bool,
}

pub fn norm_values(pair: &QhaPair<f64>, function_only: bool) -> Result<BTreeMap<String, f64>> {
    let p = *pair.params();
    let mut out = BTreeMap::new();
    for norm in registry::<f64>(p) {
        match norm.kind() {
            NormKind::Function if function_only => {
                out.insert(norm.name().to_string(), norm.eval_function(&pair.f)?);
            }
            NormKind::Function => {}
            NormKind::Pair => {
                out.insert(format!("pair/{}", norm.name()), norm.eval_pair(pair)?);
            }
        }
    }
    if !function_only {
        let a = &pair.a;
        out.insert("trace_norm".into(), a.schatten_norm(1.0)?);
        out.insert("hilbert_schmidt".into(), a.schatten_norm(2.0)?);
        out.insert("operator_norm".into(), a.schatten_norm(f64::INFINITY)?);
        let window = discrete_gaussian_operator::<f64>(p);
        for (name, v) in FEICHTINGER_OP_NORMS.iter().zip(feichtinger_op_values(a, &window)?) {
            out.insert(format!("feichtinger_op/{name}"), v);
        }
    }
    Ok(out)
}

pub fn run(args: ComputeArgs<'_>) -> Result<()> {
    let fmt = Format::of(args.out);
    let text = match args.mode {
        Mode::Transform => match single(load_all(args.inputs, args.explicit)?, args.mode)? {
            Input::Function(f) => function_out(&f.symplectic_fourier(), fmt),
            Input::Operator(a) => function_out(&fourier_weyl(&a), fmt),
        },
        Mode::Quantize => match single(load_all(args.inputs, args.explicit)?, args.mode)? {
            Input::Function(f) => operator_out(&weyl_quantize(&f), fmt),
            Input::Operator(_) => bail!("quantize mode takes a function file"),
        },
        Mode::Symbol => match single(load_all(args.inputs, args.explicit)?, args.mode)? {
            Input::Operator(a) => function_out(&weyl_symbol(&a), fmt),
            Input::Function(_) => bail!("symbol mode takes an operator file"),
        },
        Mode::Norms => {
            let inputs = load_all(args.inputs, args.explicit)?;
            let function_only = inputs.iter().all(|x| matches!(x, Input::Function(_)));
            let values = norm_values(&as_pair(inputs)?, function_only)?;
            serde_json::to_string_pretty(&values)?
        }
        Mode::Gelfand => {
            let pair = as_pair(load_all(args.inputs, args.explicit)?)?;
            io::doubled_to_csv(&gelfand_transform(&pair))
        }
        Mode::Ideal => {
            if !args.inputs.is_empty() {
                bail!("ideal mode reads only --zero-set");
            }
            let path = args.zero_set.ok_or_else(|| anyhow!("ideal mode needs --zero-set"))?;
            let p = match args.explicit {
                Some(p) => p,
                None => ModelParams::new(crate::config::DEFAULT_N, crate::config::DEFAULT_MODULUS)?,
            };
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let s = io::zero_set_from_json(&text, &p).with_context(|| format!("in {}", path.display()))?;
            let ideal = ideal_from_zero_set::<f64>(p, &s);
            let tol = args.tol.unwrap_or(DEFAULT_IDEAL_TOL);
            let summary = IdealSummary {
                dim: ideal.dim(),
                zero_set_size: s.len(),
                product_closure_defect: ideal.product_closure_defect(CLOSURE_SAMPLES, args.seed)?,
                graded: ideal.is_graded(tol),
                j_symmetric: is_j_symmetric(&p, &s),
            };
            serde_json::to_string_pretty(&summary)?
        }
    };
    emit(args.out, &text)
}
