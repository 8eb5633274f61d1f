//! Lift theorems as executable checks.
//!
//! Each check evaluates a bundle-level residual (is the lift Killing,
//! harmonic, parallel, ...) over a [`SampleSet`] and records the base-level
//! conditions and closed-form agreements next to it as sub-residuals. The
//! verdict only looks at the bundle-level residual; the rest is data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bundle::{
    bundle_nabla_covector, bundle_nabla_vector, closed, lie_derivative, metric_compatibility, BundleFrame,
    BundleVectorField, LiftKind, TangentPoint,
};
use crate::geometry::{GeometryError, LocalGeometry, ManifoldModel};
use crate::jet::{Jet1, Jet2};
use crate::sampling::SampleSet;
use crate::tensor::{nan_max, MultiIndexArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    /// Pass iff `residual ≤ tolerance`; NaN never passes.
    pub fn from_residual(residual: f64, tolerance: f64) -> Self {
        if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Field name used for checks that are about the model rather than a field.
pub const MODEL_FIELD: &str = "-";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub manifold: String,
    pub field: String,
    pub seed: u64,
    pub samples: usize,
    pub rejected_samples: usize,
    pub max_condition: f64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub sub_residuals: BTreeMap<String, f64>,
}

impl CheckReport {
    /// True if any number in the report is NaN or infinite.
    pub fn has_non_finite(&self) -> bool {
        !self.max_residual.is_finite()
            || !self.max_condition.is_finite()
            || self.sub_residuals.values().any(|v| !v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    KillingVertical,
    KillingComplete,
    HarmonicVertical,
    HarmonicComplete,
    ParallelV,
    ParallelC,
    ParallelH,
    Concurrent,
    LemmaIota,
    Inverse,
    MetricCompatLc,
    MetricCompatMc,
    RemarkDecomposition,
    LieBlockDecomp,
    AssociatedCovector,
    BlockForms,
}

/// What a check is parameterized by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    VectorField,
    Tensor11,
    Model,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::KillingVertical,
        Check::KillingComplete,
        Check::HarmonicVertical,
        Check::HarmonicComplete,
        Check::ParallelV,
        Check::ParallelC,
        Check::ParallelH,
        Check::Concurrent,
        Check::LemmaIota,
        Check::Inverse,
        Check::MetricCompatLc,
        Check::MetricCompatMc,
        Check::RemarkDecomposition,
        Check::LieBlockDecomp,
        Check::AssociatedCovector,
        Check::BlockForms,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::KillingVertical => "killing-vertical",
            Check::KillingComplete => "killing-complete",
            Check::HarmonicVertical => "harmonic-vertical",
            Check::HarmonicComplete => "harmonic-complete",
            Check::ParallelV => "parallel-v",
            Check::ParallelC => "parallel-c",
            Check::ParallelH => "parallel-h",
            Check::Concurrent => "concurrent",
            Check::LemmaIota => "lemma-iota",
            Check::Inverse => "inverse",
            Check::MetricCompatLc => "metric-compat-lc",
            Check::MetricCompatMc => "metric-compat-mc",
            Check::RemarkDecomposition => "remark-decomposition",
            Check::LieBlockDecomp => "lie-block-decomp",
            Check::AssociatedCovector => "associated-covector",
            Check::BlockForms => "block-forms",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn target(self) -> Target {
        match self {
            Check::KillingVertical
            | Check::KillingComplete
            | Check::HarmonicVertical
            | Check::HarmonicComplete
            | Check::ParallelV
            | Check::ParallelC
            | Check::ParallelH
            | Check::Concurrent => Target::VectorField,
            Check::LemmaIota => Target::Tensor11,
            _ => Target::Model,
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Check::Inverse | Check::LieBlockDecomp | Check::AssociatedCovector | Check::BlockForms => 1e-10,
            Check::RemarkDecomposition => 1e-12,
            _ => 1e-8,
        }
    }
}

/// Running maxima of the main residual and named sub-residuals.
#[derive(Debug, Default)]
struct Acc {
    main: f64,
    subs: BTreeMap<String, f64>,
}

impl Acc {
    fn main(&mut self, v: f64) {
        self.main = nan_max(self.main, v);
    }

    fn sub(&mut self, key: &str, v: f64) {
        let e = self.subs.entry(key.to_string()).or_insert(0.0);
        *e = nan_max(*e, v);
    }

    fn finish(
        self,
        check: Check,
        model: &ManifoldModel,
        field: &str,
        set: &SampleSet,
        seed: u64,
        tol: Option<f64>,
    ) -> CheckReport {
        let tolerance = tol.unwrap_or(check.default_tolerance());
        CheckReport {
            id: check.id().to_string(),
            manifold: model.name.clone(),
            field: field.to_string(),
            seed,
            samples: set.len(),
            rejected_samples: set.rejected,
            max_condition: set.max_condition,
            max_residual: self.main,
            tolerance,
            verdict: Verdict::from_residual(self.main, tolerance),
            sub_residuals: self.subs,
        }
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| nan_max(m, x.abs()))
}

fn require_block_lift(kind: LiftKind) -> Result<(), GeometryError> {
    match kind {
        LiftKind::Horizontal => Err(GeometryError::UnsupportedLift(kind.name())),
        _ => Ok(()),
    }
}

/// `ˢ∇_B X_A` for a lift under the Levi-Civita connection of `ˢg`.
fn nabla_lift(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> MultiIndexArray {
    let lift = frame.lift_vector_jets(up, kind);
    bundle_nabla_covector(&frame.associated_covector(&lift), &frame.levi_civita())
}

fn sym_at(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> MultiIndexArray {
    nabla_lift(frame, up, kind).sym_pair(0, 1, false).expect("square")
}

fn antisym_at(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> MultiIndexArray {
    nabla_lift(frame, up, kind).antisym_pair(0, 1, false).expect("square")
}

fn divergence_at(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> f64 {
    let nabla = nabla_lift(frame, up, kind);
    let inv = frame.metric_inverse();
    inv.data().iter().zip(nabla.data()).map(|(a, b)| a * b).sum()
}

fn field_at(
    model: &ManifoldModel,
    field: &str,
    p: &TangentPoint,
) -> Result<(BundleFrame, Vec<Jet2>), GeometryError> {
    let frame = BundleFrame::new(model, p)?;
    let up = frame.geo.vector_jets(model.vector_field(field)?)?;
    Ok((frame, up))
}

/// `ˢ∇_B X_A + ˢ∇_A X_B` for the vertical or complete lift of `field`.
pub fn sym_bundle_derivative(
    model: &ManifoldModel,
    field: &str,
    kind: LiftKind,
    p: &TangentPoint,
) -> Result<MultiIndexArray, GeometryError> {
    require_block_lift(kind)?;
    let (frame, up) = field_at(model, field, p)?;
    Ok(sym_at(&frame, &up, kind))
}

/// `ˢ∇_B X_A − ˢ∇_A X_B` for the vertical or complete lift of `field`.
pub fn antisym_bundle_derivative(
    model: &ManifoldModel,
    field: &str,
    kind: LiftKind,
    p: &TangentPoint,
) -> Result<MultiIndexArray, GeometryError> {
    require_block_lift(kind)?;
    let (frame, up) = field_at(model, field, p)?;
    Ok(antisym_at(&frame, &up, kind))
}

/// `ˢg^BA ˢ∇_B X_A` for the vertical or complete lift of `field`.
pub fn divergence_lift(
    model: &ManifoldModel,
    field: &str,
    kind: LiftKind,
    p: &TangentPoint,
) -> Result<f64, GeometryError> {
    require_block_lift(kind)?;
    let (frame, up) = field_at(model, field, p)?;
    Ok(divergence_at(&frame, &up, kind))
}

/// `£_X̃ ˢg` for an arbitrary bundle field evaluated at `p`.
pub fn lie_derivative_synectic(
    v: &BundleVectorField,
    model: &ManifoldModel,
    p: &TangentPoint,
) -> Result<MultiIndexArray, GeometryError> {
    let frame = BundleFrame::new(model, p)?;
    Ok(lie_derivative(&frame.metric_jets(), v))
}

/// `∇_j X_i − ∇_i X_j` and `∇_j X_i + ∇_i X_j` at the base point.
fn base_antisym_sym(geo: &LocalGeometry, up: &[Jet2]) -> (Vec<f64>, Vec<f64>) {
    let n = geo.n;
    let nabla = geo.nabla_covector(&geo.lower_jets(up));
    let mut anti = vec![0.0; n * n];
    let mut sym = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            anti[j * n + i] = nabla[j * n + i] - nabla[i * n + j];
            sym[j * n + i] = nabla[j * n + i] + nabla[i * n + j];
        }
    }
    (anti, sym)
}

fn base_divergence(geo: &LocalGeometry, up: &[Jet2]) -> f64 {
    let n = geo.n;
    let nabla = geo.nabla_vector(up);
    (0..n).map(|j| nabla[j * n + j]).sum()
}

fn field_jets(frame: &BundleFrame, model: &ManifoldModel, field: &str) -> Result<Vec<Jet2>, GeometryError> {
    frame.geo.vector_jets(model.vector_field(field)?)
}

/// The complete (or vertical) lift of `field` is Killing for `ˢg`.
pub fn check_killing_lift(
    model: &ManifoldModel,
    field: &str,
    kind: LiftKind,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    require_block_lift(kind)?;
    let check = match kind {
        LiftKind::Vertical => Check::KillingVertical,
        _ => Check::KillingComplete,
    };
    let mut acc = Acc::default();
    for s in &set.samples {
        let f = &s.frame;
        let up = field_jets(f, model, field)?;
        let lie = lie_derivative(&f.metric_jets(), &f.lift_vector_jets(&up, kind));
        acc.main(lie.max_abs());

        let (_, base_sym) = base_antisym_sym(&f.geo, &up);
        acc.sub("killing_deviation", max_abs(&base_sym));
        if kind == LiftKind::Complete {
            acc.sub("nabla_x", max_abs(&f.geo.nabla_vector(&up)));
            acc.sub("nabla_a", max_abs(&f.geo.nabla_a));
        }
        let sym = sym_at(f, &up, kind);
        let closed = closed::sym_lift_covector(f, &up, kind).expect("block lift");
        acc.sub("closed_form_agreement", closed.max_abs_diff(&lie));
        acc.sub("levi_civita_identity", sym.max_abs_diff(&lie));
    }
    Ok(acc.finish(check, model, field, set, seed, tol))
}

/// The lift of `field` is harmonic: `ˢ∇_B X_A − ˢ∇_A X_B = 0` and
/// `ˢg^BA ˢ∇_B X_A = 0`.
pub fn check_harmonic_lift(
    model: &ManifoldModel,
    field: &str,
    kind: LiftKind,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    require_block_lift(kind)?;
    let check = match kind {
        LiftKind::Vertical => Check::HarmonicVertical,
        _ => Check::HarmonicComplete,
    };
    let mut acc = Acc::default();
    for s in &set.samples {
        let f = &s.frame;
        let up = field_jets(f, model, field)?;
        let anti = antisym_at(f, &up, kind);
        let div = divergence_at(f, &up, kind);
        acc.main(nan_max(anti.max_abs(), div.abs()));
        acc.sub("antisym", anti.max_abs());
        acc.sub("divergence", div.abs());

        let (base_anti, _) = base_antisym_sym(&f.geo, &up);
        acc.sub("closedness", max_abs(&base_anti));
        if kind == LiftKind::Complete {
            acc.sub("base_divergence", base_divergence(&f.geo, &up).abs());
            acc.sub("nabla_a", max_abs(&f.geo.nabla_a));
        }
        let closed_anti = closed::antisym_lift_covector(f, &up, kind).expect("block lift");
        let closed_div = closed::divergence_lift(f, &up, kind).expect("block lift");
        acc.sub(
            "closed_form_agreement",
            nan_max(closed_anti.max_abs_diff(&anti), (closed_div - div).abs()),
        );
    }
    Ok(acc.finish(check, model, field, set, seed, tol))
}

/// The lift of `field` is parallel for the metric connection: `∇̃_B X̃ᴬ = 0`.
pub fn check_parallel_lift(
    model: &ManifoldModel,
    field: &str,
    kind: LiftKind,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    let check = match kind {
        LiftKind::Vertical => Check::ParallelV,
        LiftKind::Complete => Check::ParallelC,
        LiftKind::Horizontal => Check::ParallelH,
    };
    let mut acc = Acc::default();
    for s in &set.samples {
        let f = &s.frame;
        let up = field_jets(f, model, field)?;
        let nabla = bundle_nabla_vector(&f.lift_vector_jets(&up, kind), &f.metric_connection());
        acc.main(nabla.max_abs());
        acc.sub("nabla_x", max_abs(&f.geo.nabla_vector(&up)));
        if kind != LiftKind::Vertical {
            acc.sub("nabla_a", max_abs(&f.geo.nabla_a));
        }
        acc.sub(
            "closed_form_agreement",
            closed::nabla_lift_vector(f, &up, kind).max_abs_diff(&nabla),
        );
    }
    Ok(acc.finish(check, model, field, set, seed, tol))
}

/// The complete lift of `field` is concurrent: `∇̃_B ᶜXᴬ = t δ_Bᴬ` for one
/// constant `t`, fitted by least squares over all samples.
pub fn check_concurrent_lift(
    model: &ManifoldModel,
    field: &str,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    let n = model.dim;
    let mut base = Vec::with_capacity(set.len());
    let mut trace = 0.0;
    for s in &set.samples {
        let up = field_jets(&s.frame, model, field)?;
        let nabla = s.frame.geo.nabla_vector(&up);
        trace += (0..n).map(|j| nabla[j * n + j]).sum::<f64>();
        base.push((up, nabla));
    }
    // argmin_t Σ |∇_jXʰ − tδ_jʰ|² over all samples and components.
    let t = if set.is_empty() { 0.0 } else { trace / (n * set.len()) as f64 };

    let mut acc = Acc::default();
    for (s, (up, nabla)) in set.samples.iter().zip(&base) {
        let f = &s.frame;
        let fit = (0..n * n)
            .map(|jh| nabla[jh] - if jh / n == jh % n { t } else { 0.0 })
            .fold(0.0, |m, v| nan_max(m, v.abs()));
        let lifted = bundle_nabla_vector(&f.lift_vector_jets(up, LiftKind::Complete), &f.metric_connection());
        let bundle = lifted.max_abs_diff(&MultiIndexArray::identity(2 * n).scale(t));
        acc.main(nan_max(fit, bundle));
        acc.sub("fit_residual", fit);
        acc.sub("bundle_residual", bundle);
        acc.sub("nabla_a", max_abs(&f.geo.nabla_a));
    }
    acc.subs.insert("fitted_t".into(), t);
    Ok(acc.finish(Check::Concurrent, model, field, set, seed, tol))
}

/// `ιC` is Killing for `ˢg`; the `(j̄, i)` block of `£_{ιC} ˢg` reduces to
/// `g_ki C_jᵏ`.
pub fn check_lemma_iota(
    model: &ManifoldModel,
    tensor: &str,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    let n = model.dim;
    let comps = model.tensor11(tensor)?;
    let mut acc = Acc::default();
    for s in &set.samples {
        let f = &s.frame;
        let c = f.geo.vector_jets(comps)?;
        let v = f.iota_jets(&c);
        let lie = lie_derivative(&f.metric_jets(), &v);
        acc.main(lie.max_abs());

        let mut reduction: f64 = 0.0;
        let mut gc: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let expect: f64 = (0..n).map(|k| f.geo.g(k, i) * c[j * n + k].value).sum();
                reduction = nan_max(reduction, (lie.get(&[n + j, i]) - expect).abs());
                gc = nan_max(gc, expect.abs());
            }
        }
        acc.sub("reduction", reduction);
        acc.sub("g_c", gc);
        acc.sub("closed_form_agreement", closed::lie_derivative_blocks(f, &v).max_abs_diff(&lie));
    }
    Ok(acc.finish(Check::LemmaIota, model, tensor, set, seed, tol))
}

/// A fixed quadratic polynomial field in `(x, y)`, exercising every term of
/// the Lie-derivative block expansion.
pub fn polynomial_field(frame: &BundleFrame) -> BundleVectorField {
    let n = frame.n();
    let m = 2 * n;
    let z: Vec<Jet1> = frame
        .geo
        .x
        .iter()
        .chain(&frame.y)
        .enumerate()
        .map(|(i, &v)| Jet1::variable(v, i, m))
        .collect();
    let coeff = |a: usize, b: usize, c: usize| ((a * 7 + b * 3 + c * 5) % 9) as f64 / 4.0 - 1.0;
    let comps = (0..m)
        .map(|a| {
            let mut acc = Jet1::constant(coeff(a, m, m), m);
            for b in 0..m {
                acc.add_assign_scaled(coeff(a, b, m), &z[b]);
                for c in b..m {
                    acc.add_assign_scaled(coeff(a, b, c), &(&z[b] * &z[c]));
                }
            }
            acc
        })
        .collect();
    BundleVectorField { comps }
}

/// Model-level consistency checks; these carry no field.
pub fn check_model(
    check: Check,
    model: &ManifoldModel,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    let mut acc = Acc::default();
    for s in &set.samples {
        let f = &s.frame;
        let n = f.n();
        match check {
            Check::Inverse => {
                let prod = f.metric().contract(&f.metric_inverse(), 1, 0).expect("square");
                acc.main(prod.max_abs_diff(&MultiIndexArray::identity(2 * n)));
            }
            Check::MetricCompatLc => {
                acc.main(metric_compatibility(&f.metric_jets(), &f.levi_civita()).max_abs());
                acc.sub("torsion", f.levi_civita().torsion().max_abs());
            }
            Check::MetricCompatMc => {
                let conn = f.metric_connection();
                acc.main(metric_compatibility(&f.metric_jets(), &conn).max_abs());
                let t = conn.torsion();
                acc.sub("torsion_antisymmetry", t.sym_pair(1, 2, false).expect("square").max_abs());
                acc.sub("torsion_unbarred", conn.block((false, false, false)).max_abs());
            }
            Check::RemarkDecomposition => {
                let full = f.metric_connection().to_array();
                let bare = f.metric_connection_without_h().to_array();
                let mut r: f64 = 0.0;
                for a in 0..2 * n {
                    for b in 0..2 * n {
                        for c in 0..2 * n {
                            let h = if a >= n && b < n && c < n { f.geo.h(a - n, b, c) } else { 0.0 };
                            r = nan_max(r, (full.get(&[a, b, c]) - bare.get(&[a, b, c]) - h).abs());
                        }
                    }
                }
                acc.main(r);
            }
            Check::LieBlockDecomp => {
                let g = f.metric_jets();
                let mut fields = vec![polynomial_field(f)];
                for comps in model.vector_fields.values() {
                    let up = f.geo.vector_jets(comps)?;
                    fields.extend(LiftKind::ALL.map(|k| f.lift_vector_jets(&up, k)));
                }
                for comps in model.tensors11.values() {
                    fields.push(f.iota_jets(&f.geo.vector_jets(comps)?));
                }
                for v in &fields {
                    let lie = lie_derivative(&g, v);
                    acc.main(closed::lie_derivative_blocks(f, v).max_abs_diff(&lie));
                    acc.sub("symmetry", lie.antisym_pair(0, 1, false).expect("square").max_abs());
                }
            }
            Check::AssociatedCovector => {
                for comps in model.vector_fields.values() {
                    let up = f.geo.vector_jets(comps)?;
                    for kind in LiftKind::ALL {
                        let generic = f.associated_covector(&f.lift_vector_jets(&up, kind)).values();
                        let closed = closed::associated_covector(f, &up, kind);
                        let r = generic
                            .iter()
                            .zip(&closed)
                            .fold(0.0, |m, (a, b)| nan_max(m, (a - b).abs()));
                        acc.main(r);
                        acc.sub(kind.name(), r);
                    }
                }
            }
            Check::BlockForms => {
                let mc = f.metric_connection();
                for comps in model.vector_fields.values() {
                    let up = f.geo.vector_jets(comps)?;
                    for kind in [LiftKind::Vertical, LiftKind::Complete] {
                        let nabla = nabla_lift(f, &up, kind);
                        let sym = nabla.sym_pair(0, 1, false).expect("square");
                        let anti = nabla.antisym_pair(0, 1, false).expect("square");
                        let div = divergence_at(f, &up, kind);
                        let parts = [
                            ("nabla_covector", closed::nabla_lift_covector(f, &up, kind).expect("block lift").max_abs_diff(&nabla)),
                            ("sym", closed::sym_lift_covector(f, &up, kind).expect("block lift").max_abs_diff(&sym)),
                            ("antisym", closed::antisym_lift_covector(f, &up, kind).expect("block lift").max_abs_diff(&anti)),
                            ("divergence", (closed::divergence_lift(f, &up, kind).expect("block lift") - div).abs()),
                        ];
                        for (key, r) in parts {
                            acc.main(r);
                            acc.sub(key, r);
                        }
                    }
                    for kind in LiftKind::ALL {
                        let generic = bundle_nabla_vector(&f.lift_vector_jets(&up, kind), &mc);
                        let r = closed::nabla_lift_vector(f, &up, kind).max_abs_diff(&generic);
                        acc.main(r);
                        acc.sub("nabla_vector", r);
                    }
                }
            }
            _ => unreachable!("{} is not a model-level check", check.id()),
        }
    }
    Ok(acc.finish(check, model, MODEL_FIELD, set, seed, tol))
}

/// Runs any check. `target` names the field or tensor and is ignored for
/// model-level checks.
pub fn run_check(
    check: Check,
    model: &ManifoldModel,
    target: &str,
    set: &SampleSet,
    seed: u64,
    tol: Option<f64>,
) -> Result<CheckReport, GeometryError> {
    use LiftKind::*;
    match check {
        Check::KillingVertical => check_killing_lift(model, target, Vertical, set, seed, tol),
        Check::KillingComplete => check_killing_lift(model, target, Complete, set, seed, tol),
        Check::HarmonicVertical => check_harmonic_lift(model, target, Vertical, set, seed, tol),
        Check::HarmonicComplete => check_harmonic_lift(model, target, Complete, set, seed, tol),
        Check::ParallelV => check_parallel_lift(model, target, Vertical, set, seed, tol),
        Check::ParallelC => check_parallel_lift(model, target, Complete, set, seed, tol),
        Check::ParallelH => check_parallel_lift(model, target, Horizontal, set, seed, tol),
        Check::Concurrent => check_concurrent_lift(model, target, set, seed, tol),
        Check::LemmaIota => check_lemma_iota(model, target, set, seed, tol),
        _ => check_model(check, model, set, seed, tol),
    }
}
