//! Plain-text model documents.
//!
//! ```text
//! # unit sphere
//! name = sphere
//! dim = 2
//! box x1 = 0.3 .. 2.8
//! box x2 = 0.0 .. 6.28
//! g 1 1 = 1
//! g 2 2 = sin(x1)^2
//! field rot 2 = 1
//! oneform w 2 = sin(x1)^2
//! tensor11 C 1 2 = 1
//! ```
//!
//! Indices are 1-based. `g` and `a` are symmetric: an entry `g i j` also
//! sets `g j i`, and giving both is a duplicate. Omitted components are 0.
//! `tensor11 C i k` sets `C_iᵏ` (row = lower index).

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use super::expr::{parse_expr, Expr, ParseError};
use crate::geometry::{GeometryError, ManifoldModel};
use crate::jet::ScalarFn;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelErrorKind {
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expression error: {0}")]
    Expr(#[from] ParseError),
    #[error("duplicate entry `{0}`")]
    Duplicate(String),
    #[error("{0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ModelError {
    /// 1-based; 0 when the error is not tied to one line.
    pub line: usize,
    pub kind: ModelErrorKind,
}

impl ModelError {
    fn at(line: usize, kind: ModelErrorKind) -> Self {
        Self { line, kind }
    }
}

/// A validated model document.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDocument {
    pub name: String,
    pub dim: usize,
    pub chart: Vec<(f64, f64)>,
    /// Row-major `n × n`, symmetric.
    pub g: Vec<Expr>,
    pub a: Vec<Expr>,
    pub fields: BTreeMap<String, Vec<Expr>>,
    pub oneforms: BTreeMap<String, Vec<Expr>>,
    pub tensors11: BTreeMap<String, Vec<Expr>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Target {
    G,
    A,
    Field,
    OneForm,
    Tensor11,
}

struct Entry {
    line: usize,
    target: Target,
    name: String,
    index: Vec<usize>,
    expr: Expr,
}

fn parse_index(tok: &str, line: usize) -> Result<usize, ModelError> {
    match tok.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i),
        _ => Err(ModelError::at(
            line,
            ModelErrorKind::Syntax(format!("bad index `{tok}` (indices are 1-based integers)")),
        )),
    }
}

fn parse_box(rhs: &str, line: usize) -> Result<(f64, f64), ModelError> {
    let bad = || ModelError::at(line, ModelErrorKind::Syntax(format!("bad box `{rhs}`, expected `lo .. hi`")));
    let (lo, hi) = rhs.split_once("..").ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Parse and validate a model document.
pub fn parse_model(text: &str) -> Result<ModelDocument, ModelError> {
    let mut name: Option<String> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut boxes: BTreeMap<usize, (usize, (f64, f64))> = BTreeMap::new();
    let mut entries: Vec<Entry> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = trimmed.split_once('=').ok_or_else(|| {
            ModelError::at(line, ModelErrorKind::Syntax("expected `key = value`".into()))
        })?;
        let keys: Vec<&str> = lhs.split_whitespace().collect();
        let rhs = rhs.trim();
        let expr = |line: usize| {
            parse_expr(rhs).map_err(|e| ModelError::at(line, ModelErrorKind::Expr(e)))
        };
        let arity = |want: usize| -> Result<(), ModelError> {
            if keys.len() != want {
                Err(ModelError::at(
                    line,
                    ModelErrorKind::Syntax(format!("`{}` expects {} key tokens, got {}", keys[0], want, keys.len())),
                ))
            } else {
                Ok(())
            }
        };
        match keys.first().copied() {
            Some("name") => {
                arity(1)?;
                if name.replace(rhs.to_string()).is_some() {
                    return Err(ModelError::at(line, ModelErrorKind::Duplicate("name".into())));
                }
            }
            Some("dim") => {
                arity(1)?;
                let n: usize = rhs.parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
                    ModelError::at(line, ModelErrorKind::Syntax(format!("bad dim `{rhs}`")))
                })?;
                if dim.replace((n, line)).is_some() {
                    return Err(ModelError::at(line, ModelErrorKind::Duplicate("dim".into())));
                }
            }
            Some("box") => {
                arity(2)?;
                let k = keys[1]
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| {
                        ModelError::at(line, ModelErrorKind::Syntax(format!("bad coordinate `{}`", keys[1])))
                    })?;
                let b = parse_box(rhs, line)?;
                if boxes.insert(k, (line, b)).is_some() {
                    return Err(ModelError::at(line, ModelErrorKind::Duplicate(format!("box x{k}"))));
                }
            }
            Some(key @ ("g" | "a")) => {
                arity(3)?;
                let (j, i) = (parse_index(keys[1], line)?, parse_index(keys[2], line)?);
                let (j, i) = (j.min(i), j.max(i));
                entries.push(Entry {
                    line,
                    target: if key == "g" { Target::G } else { Target::A },
                    name: key.to_string(),
                    index: vec![j, i],
                    expr: expr(line)?,
                });
            }
            Some(key @ ("field" | "oneform")) => {
                arity(3)?;
                entries.push(Entry {
                    line,
                    target: if key == "field" { Target::Field } else { Target::OneForm },
                    name: keys[1].to_string(),
                    index: vec![parse_index(keys[2], line)?],
                    expr: expr(line)?,
                });
            }
            Some("tensor11") => {
                arity(4)?;
                entries.push(Entry {
                    line,
                    target: Target::Tensor11,
                    name: keys[1].to_string(),
                    index: vec![parse_index(keys[2], line)?, parse_index(keys[3], line)?],
                    expr: expr(line)?,
                });
            }
            Some(other) => {
                return Err(ModelError::at(
                    line,
                    ModelErrorKind::Syntax(format!("unknown key `{other}`")),
                ))
            }
            None => {
                return Err(ModelError::at(line, ModelErrorKind::Syntax("empty key".into())));
            }
        }
    }

    let name = name.ok_or_else(|| ModelError::at(0, ModelErrorKind::MissingKey("name".into())))?;
    let (n, _) = dim.ok_or_else(|| ModelError::at(0, ModelErrorKind::MissingKey("dim".into())))?;
    if let Some((&k, &(line, _))) = boxes.iter().find(|(&k, _)| k > n) {
        return Err(ModelError::at(
            line,
            ModelErrorKind::DimensionMismatch(format!("box x{k} with dim = {n}")),
        ));
    }
    let chart = (1..=n)
        .map(|k| {
            boxes
                .get(&k)
                .map(|&(_, b)| b)
                .ok_or_else(|| ModelError::at(0, ModelErrorKind::MissingKey(format!("box x{k}"))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !entries.iter().any(|e| e.target == Target::G) {
        return Err(ModelError::at(0, ModelErrorKind::MissingKey("g".into())));
    }

    let zero = || vec![Expr::Num(0.0); n * n];
    let mut doc = ModelDocument {
        name,
        dim: n,
        chart,
        g: zero(),
        a: zero(),
        fields: BTreeMap::new(),
        oneforms: BTreeMap::new(),
        tensors11: BTreeMap::new(),
    };
    let mut seen: HashSet<(Target, String, Vec<usize>)> = HashSet::new();
    for e in entries {
        let label = format!(
            "{} {}",
            e.name,
            e.index.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        );
        if let Some(&bad) = e.index.iter().find(|&&i| i > n) {
            return Err(ModelError::at(
                e.line,
                ModelErrorKind::DimensionMismatch(format!("index {bad} in `{label}` with dim = {n}")),
            ));
        }
        if e.expr.max_var() > n {
            return Err(ModelError::at(
                e.line,
                ModelErrorKind::DimensionMismatch(format!(
                    "`{label}` uses x{} with dim = {n}",
                    e.expr.max_var()
                )),
            ));
        }
        if !seen.insert((e.target, e.name.clone(), e.index.clone())) {
            return Err(ModelError::at(e.line, ModelErrorKind::Duplicate(label)));
        }
        let zero_vec = |len| vec![Expr::Num(0.0); len];
        match e.target {
            Target::G | Target::A => {
                let m = if e.target == Target::G { &mut doc.g } else { &mut doc.a };
                let (j, i) = (e.index[0] - 1, e.index[1] - 1);
                m[j * n + i] = e.expr.clone();
                m[i * n + j] = e.expr;
            }
            Target::Field => {
                doc.fields.entry(e.name).or_insert_with(|| zero_vec(n))[e.index[0] - 1] = e.expr;
            }
            Target::OneForm => {
                doc.oneforms.entry(e.name).or_insert_with(|| zero_vec(n))[e.index[0] - 1] = e.expr;
            }
            Target::Tensor11 => {
                let (i, k) = (e.index[0] - 1, e.index[1] - 1);
                doc.tensors11.entry(e.name).or_insert_with(|| zero_vec(n * n))[i * n + k] = e.expr;
            }
        }
    }
    Ok(doc)
}

fn to_fns(exprs: &[Expr]) -> Vec<ScalarFn> {
    exprs
        .iter()
        .map(|e| match e {
            Expr::Num(v) => ScalarFn::Const(*v),
            other => ScalarFn::Expr(other.clone()),
        })
        .collect()
}

impl ModelDocument {
    pub fn to_model(&self) -> Result<ManifoldModel, GeometryError> {
        let mut m = ManifoldModel::new(self.name.clone(), self.chart.clone(), to_fns(&self.g))?
            .with_a(to_fns(&self.a))?;
        for (name, comps) in &self.fields {
            m = m.with_vector_field(name, to_fns(comps))?;
        }
        for (name, comps) in &self.oneforms {
            m = m.with_one_form(name, to_fns(comps))?;
        }
        for (name, comps) in &self.tensors11 {
            m = m.with_tensor11(name, to_fns(comps))?;
        }
        Ok(m)
    }
}
