//! Built-in manifolds with their fields, and the expected verdicts of the
//! bundled verification suite.
//!
//! Component functions here are written directly against [`Jet2`] so that
//! they are independent of the expression DSL.

use std::f64::consts::TAU;

use crate::geometry::ManifoldModel;
use crate::jet::{Jet2, ScalarFn};

fn c(v: f64) -> ScalarFn {
    ScalarFn::Const(v)
}

fn f(func: impl Fn(&[Jet2]) -> Jet2 + Send + Sync + 'static) -> ScalarFn {
    ScalarFn::native(func)
}

fn x1() -> ScalarFn {
    f(|v| v[0].clone())
}

fn x2() -> ScalarFn {
    f(|v| v[1].clone())
}

fn tensors(m: ManifoldModel, with_upper: bool) -> ManifoldModel {
    let m = m
        .with_tensor11("zero", vec![c(0.0), c(0.0), c(0.0), c(0.0)])
        .and_then(|m| m.with_tensor11("identity", vec![c(1.0), c(0.0), c(0.0), c(1.0)]))
        .and_then(|m| m.with_tensor11("nilpotent", vec![c(0.0), c(1.0), c(0.0), c(0.0)]))
        .expect("static catalog");
    if with_upper {
        m.with_tensor11("upper", vec![c(1.0), c(2.0), c(0.0), c(1.0)])
            .expect("static catalog")
    } else {
        m
    }
}

fn euclid_base(name: &str, a: Vec<ScalarFn>) -> ManifoldModel {
    let m = ManifoldModel::new(
        name,
        vec![(-3.0, 3.0), (-3.0, 3.0)],
        vec![c(1.0), c(0.0), c(0.0), c(1.0)],
    )
    .and_then(|m| m.with_a(a))
    .and_then(|m| m.with_vector_field("translation", vec![c(1.0), c(0.0)]))
    .and_then(|m| m.with_vector_field("rotation", vec![f(|v| -&v[1]), x1()]))
    .and_then(|m| m.with_vector_field("dilation", vec![x1(), x2()]))
    // X_i = ∂_i(x1² + x2²)
    .and_then(|m| m.with_vector_field("gradient", vec![f(|v| &v[0] * 2.0), f(|v| &v[1] * 2.0)]))
    .and_then(|m| m.with_one_form("dx1", vec![c(1.0), c(0.0)]))
    .and_then(|m| m.with_one_form("x2dx1", vec![x2(), c(0.0)]))
    .expect("static catalog")
    .with_christoffel_oracle(|_| vec![0.0; 8]);
    tensors(m, true)
}

/// Flat plane, `a = 0`.
pub fn euclid2() -> ManifoldModel {
    euclid_base("euclid2", vec![c(0.0); 4])
}

/// Flat plane, `a = I`.
pub fn euclid2_a_identity() -> ManifoldModel {
    euclid_base("euclid2-a-identity", vec![c(1.0), c(0.0), c(0.0), c(1.0)])
}

/// Flat plane, `a = diag(x1², 0)`.
pub fn euclid2_a_x1sq() -> ManifoldModel {
    euclid_base(
        "euclid2-a-x1sq",
        vec![f(|v| v[0].powi(2)), c(0.0), c(0.0), c(0.0)],
    )
}

/// Flat plane, `a = diag(1, 0)`.
pub fn euclid2_a_diag10() -> ManifoldModel {
    euclid_base("euclid2-a-diag10", vec![c(1.0), c(0.0), c(0.0), c(0.0)])
}

fn sphere_christoffel(x: &[f64]) -> Vec<f64> {
    let (s, co) = x[0].sin_cos();
    // [k][j][i]
    vec![0.0, 0.0, 0.0, -s * co, 0.0, co / s, co / s, 0.0]
}

/// Unit sphere in (θ, φ) = (x1, x2), `a = 0`.
pub fn sphere() -> ManifoldModel {
    let m = ManifoldModel::new(
        "sphere",
        vec![(0.3, 2.8), (0.0, TAU)],
        vec![c(1.0), c(0.0), c(0.0), f(|v| v[0].sin().powi(2))],
    )
    .and_then(|m| m.with_vector_field("phi-rotation", vec![c(0.0), c(1.0)]))
    .and_then(|m| m.with_vector_field("theta", vec![c(1.0), c(0.0)]))
    // sin φ ∂θ + cot θ cos φ ∂φ
    .and_then(|m| {
        m.with_vector_field(
            "killing2",
            vec![
                f(|v| v[1].sin()),
                f(|v| &(&v[0].cos() * &v[0].sin().recip()) * &v[1].cos()),
            ],
        )
    })
    .and_then(|m| m.with_one_form("w", vec![c(0.0), f(|v| v[0].sin().powi(2))]))
    .expect("static catalog")
    .with_christoffel_oracle(sphere_christoffel);
    tensors(m, false)
}

fn poincare_christoffel(x: &[f64]) -> Vec<f64> {
    let r = 1.0 / x[1];
    vec![0.0, -r, -r, 0.0, r, 0.0, 0.0, -r]
}

fn poincare_base(name: &str, a_scale: f64) -> ManifoldModel {
    let inv_sq = move |scale: f64| f(move |v: &[Jet2]| &v[1].powi(-2) * scale);
    let m = ManifoldModel::new(
        name,
        vec![(-2.0, 2.0), (0.5, 5.0)],
        vec![inv_sq(1.0), c(0.0), c(0.0), inv_sq(1.0)],
    )
    .and_then(|m| {
        if a_scale == 0.0 {
            Ok(m)
        } else {
            m.with_a(vec![inv_sq(a_scale), c(0.0), c(0.0), inv_sq(a_scale)])
        }
    })
    .and_then(|m| m.with_vector_field("translation", vec![c(1.0), c(0.0)]))
    .and_then(|m| m.with_vector_field("dilation", vec![x1(), x2()]))
    .and_then(|m| {
        m.with_vector_field(
            "inversion",
            vec![
                f(|v| &v[0].powi(2) - &v[1].powi(2)),
                f(|v| &(&v[0] * &v[1]) * 2.0),
            ],
        )
    })
    .and_then(|m| m.with_vector_field("vertical", vec![c(0.0), c(1.0)]))
    .expect("static catalog")
    .with_christoffel_oracle(poincare_christoffel);
    tensors(m, false)
}

/// Upper half-plane `g = (dx1² + dx2²)/x2²`, `a = 0`.
pub fn poincare() -> ManifoldModel {
    poincare_base("poincare", 0.0)
}

/// Upper half-plane with `a = g/2`.
pub fn poincare_a_half_g() -> ManifoldModel {
    poincare_base("poincare-a-halfg", 0.5)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "euclid2",
    "euclid2-a-identity",
    "euclid2-a-x1sq",
    "euclid2-a-diag10",
    "sphere",
    "poincare",
    "poincare-a-halfg",
];

pub fn builtin(name: &str) -> Option<ManifoldModel> {
    Some(match name {
        "euclid2" => euclid2(),
        "euclid2-a-identity" => euclid2_a_identity(),
        "euclid2-a-x1sq" => euclid2_a_x1sq(),
        "euclid2-a-diag10" => euclid2_a_diag10(),
        "sphere" => sphere(),
        "poincare" => poincare(),
        "poincare-a-halfg" => poincare_a_half_g(),
        _ => return None,
    })
}

pub const MODEL_LEVEL: &[&str] = &[
    "inverse",
    "metric-compat-lc",
    "metric-compat-mc",
    "remark-decomposition",
    "lie-block-decomp",
    "associated-covector",
    "block-forms",
];

// (check, field, expected pass)
type Row = (&'static str, &'static str, bool);

const EUCLID_LEMMA: &[Row] = &[
    ("lemma-iota", "zero", true),
    ("lemma-iota", "identity", false),
    ("lemma-iota", "nilpotent", false),
    ("lemma-iota", "upper", false),
];

const EUCLID_COMMON: &[Row] = &[
    ("killing-vertical", "translation", true),
    ("killing-vertical", "rotation", true),
    ("killing-vertical", "dilation", false),
    ("killing-vertical", "gradient", false),
    ("harmonic-vertical", "translation", true),
    ("harmonic-vertical", "rotation", false),
    ("harmonic-vertical", "dilation", true),
    ("harmonic-vertical", "gradient", true),
    ("parallel-v", "translation", true),
    ("parallel-v", "rotation", false),
    ("parallel-v", "dilation", false),
    ("parallel-v", "gradient", false),
    ("parallel-c", "rotation", false),
    ("parallel-c", "dilation", false),
    ("parallel-c", "gradient", false),
    ("parallel-h", "rotation", false),
    ("parallel-h", "dilation", false),
    ("parallel-h", "gradient", false),
    ("concurrent", "rotation", false),
    ("harmonic-complete", "rotation", false),
    ("harmonic-complete", "dilation", false),
    ("harmonic-complete", "gradient", false),
    ("killing-complete", "dilation", false),
    ("killing-complete", "gradient", false),
];

// Flat models whose `a` is parallel (H = 0).
const EUCLID_PARALLEL_A: &[Row] = &[
    ("killing-complete", "translation", true),
    ("harmonic-complete", "translation", true),
    ("parallel-c", "translation", true),
    ("parallel-h", "translation", true),
    ("concurrent", "translation", true),
    ("concurrent", "dilation", true),
    ("concurrent", "gradient", true),
];

const EUCLID_ROTATION_KILLS_A: &[Row] = &[("killing-complete", "rotation", true)];

const EUCLID_X1SQ: &[Row] = &[
    ("killing-complete", "translation", false),
    ("killing-complete", "rotation", false),
    ("harmonic-complete", "translation", true),
    ("parallel-c", "translation", false),
    ("parallel-h", "translation", false),
    ("concurrent", "translation", false),
    ("concurrent", "dilation", false),
    ("concurrent", "gradient", false),
];

const EUCLID_DIAG10: &[Row] = &[("killing-complete", "rotation", false)];

const SPHERE: &[Row] = &[
    ("killing-vertical", "phi-rotation", true),
    ("killing-vertical", "killing2", true),
    ("killing-vertical", "theta", false),
    ("killing-complete", "phi-rotation", true),
    ("killing-complete", "killing2", true),
    ("killing-complete", "theta", false),
    ("harmonic-vertical", "phi-rotation", false),
    ("harmonic-vertical", "killing2", false),
    ("harmonic-vertical", "theta", true),
    ("harmonic-complete", "phi-rotation", false),
    ("harmonic-complete", "killing2", false),
    ("harmonic-complete", "theta", false),
    ("parallel-v", "phi-rotation", false),
    ("parallel-v", "killing2", false),
    ("parallel-v", "theta", false),
    ("parallel-c", "phi-rotation", false),
    ("parallel-c", "killing2", false),
    ("parallel-c", "theta", false),
    ("parallel-h", "phi-rotation", false),
    ("parallel-h", "killing2", false),
    ("parallel-h", "theta", false),
    ("concurrent", "phi-rotation", false),
    ("concurrent", "killing2", false),
    ("concurrent", "theta", false),
    ("lemma-iota", "zero", true),
    ("lemma-iota", "identity", false),
    ("lemma-iota", "nilpotent", false),
];

const POINCARE: &[Row] = &[
    ("killing-vertical", "translation", true),
    ("killing-vertical", "dilation", true),
    ("killing-vertical", "inversion", true),
    ("killing-vertical", "vertical", false),
    ("killing-complete", "translation", true),
    ("killing-complete", "dilation", true),
    ("killing-complete", "inversion", true),
    ("killing-complete", "vertical", false),
    ("harmonic-vertical", "translation", false),
    ("harmonic-vertical", "dilation", false),
    ("harmonic-vertical", "inversion", false),
    ("harmonic-vertical", "vertical", true),
    ("harmonic-complete", "translation", false),
    ("harmonic-complete", "dilation", false),
    ("harmonic-complete", "inversion", false),
    ("harmonic-complete", "vertical", false),
    ("parallel-v", "translation", false),
    ("parallel-v", "dilation", false),
    ("parallel-v", "inversion", false),
    ("parallel-v", "vertical", false),
    ("parallel-c", "translation", false),
    ("parallel-c", "dilation", false),
    ("parallel-c", "inversion", false),
    ("parallel-c", "vertical", false),
    ("parallel-h", "translation", false),
    ("parallel-h", "dilation", false),
    ("parallel-h", "inversion", false),
    ("parallel-h", "vertical", false),
    ("concurrent", "translation", false),
    ("concurrent", "dilation", false),
    ("concurrent", "inversion", false),
    ("concurrent", "vertical", false),
    ("lemma-iota", "zero", true),
    ("lemma-iota", "identity", false),
    ("lemma-iota", "nilpotent", false),
];

fn tables(model: &str) -> &'static [&'static [Row]] {
    match model {
        "euclid2" => &[EUCLID_COMMON, EUCLID_LEMMA, EUCLID_PARALLEL_A, EUCLID_ROTATION_KILLS_A],
        "euclid2-a-identity" => &[EUCLID_COMMON, EUCLID_LEMMA, EUCLID_PARALLEL_A, EUCLID_ROTATION_KILLS_A],
        "euclid2-a-x1sq" => &[EUCLID_COMMON, EUCLID_LEMMA, EUCLID_X1SQ],
        "euclid2-a-diag10" => &[EUCLID_COMMON, EUCLID_LEMMA, EUCLID_PARALLEL_A, EUCLID_DIAG10],
        "sphere" => &[SPHERE],
        "poincare" | "poincare-a-halfg" => &[POINCARE],
        _ => &[],
    }
}

/// Declared verdict for a (check, field) pair on a built-in model:
/// `Some(true)` expects pass, `Some(false)` expects fail, `None` is undeclared.
pub fn expectation(model: &str, check: &str, field: &str) -> Option<bool> {
    if BUILTIN_NAMES.contains(&model) && MODEL_LEVEL.contains(&check) {
        return Some(true);
    }
    tables(model)
        .iter()
        .flat_map(|t| t.iter())
        .find(|(c, f, _)| *c == check && *f == field)
        .map(|&(_, _, pass)| pass)
}
