//! Acceptance suite: fifteen criteria over the built-in catalog at 100
//! seeded samples per model. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use synectic::bundle::{bundle_nabla_vector, BundleFrame, BundleVectorField, LiftKind, TangentPoint};
use synectic::catalog;
use synectic::geometry::{LocalGeometry, ManifoldModel};
use synectic::jet::{jet2_eval, ScalarFn};
use synectic::sampling::{job_seed, SampleSet};
use synectic::theorems::{
    check_concurrent_lift, check_harmonic_lift, check_killing_lift, check_lemma_iota, check_model,
    check_parallel_lift, divergence_lift, Check, CheckReport,
};

const SAMPLES: usize = 100;
const SEED: u64 = 42;
const FD_STEP: f64 = 1e-4;
const FD_REL_TOL: f64 = 1e-5;

type Outcome = Result<String, String>;

struct Suite {
    models: Vec<(ManifoldModel, SampleSet)>,
}

impl Suite {
    fn new() -> Self {
        let models = catalog::BUILTIN_NAMES
            .iter()
            .map(|name| {
                let m = catalog::builtin(name).expect("built-in");
                let set = SampleSet::draw(&m, SAMPLES, job_seed(SEED, name)).expect("samples");
                (m, set)
            })
            .collect();
        Self { models }
    }

    fn get(&self, name: &str) -> (&ManifoldModel, &SampleSet) {
        let (m, s) = self.models.iter().find(|(m, _)| m.name == name).expect("model");
        (m, s)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Largest residual of one model-level check over all models.
fn model_check_max(suite: &Suite, check: Check, limit: f64) -> Outcome {
    let mut worst: f64 = 0.0;
    for (m, set) in &suite.models {
        let r = check_model(check, m, set, SEED, Some(limit)).map_err(|e| e.to_string())?;
        ensure(r.max_residual <= limit, || format!("{}: residual {:.3e}", m.name, r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    Ok(format!("max residual {worst:.2e} ≤ {limit:.0e}"))
}

fn field_report(
    suite: &Suite,
    model: &str,
    field: &str,
    run: impl Fn(&ManifoldModel, &str, &SampleSet) -> Result<CheckReport, synectic::geometry::GeometryError>,
) -> Result<CheckReport, String> {
    let (m, set) = suite.get(model);
    run(m, field, set).map_err(|e| format!("{model} {field}: {e}"))
}

fn c1_inverse(s: &Suite) -> Outcome {
    model_check_max(s, Check::Inverse, 1e-10)
}

fn c2_levi_civita(s: &Suite) -> Outcome {
    model_check_max(s, Check::MetricCompatLc, 1e-8)
}

fn c3_metric_connection(s: &Suite) -> Outcome {
    let compat = model_check_max(s, Check::MetricCompatMc, 1e-8)?;
    let mut antisym: f64 = 0.0;
    let mut off_block: f64 = 0.0;
    let mut on_block: f64 = 0.0;
    for (m, set) in &s.models {
        let n = m.dim;
        for smp in &set.samples {
            let t = smp.frame.metric_connection().torsion();
            for a in 0..2 * n {
                for c in 0..2 * n {
                    for b in 0..2 * n {
                        let v = t.get(&[a, c, b]);
                        antisym = antisym.max((v + t.get(&[a, b, c])).abs());
                        if a >= n && c < n && b < n {
                            on_block = on_block.max(v.abs());
                        } else {
                            off_block = off_block.max(v.abs());
                        }
                    }
                }
            }
        }
    }
    ensure(antisym <= 1e-12, || format!("torsion not antisymmetric: {antisym:.3e}"))?;
    ensure(off_block <= 1e-12, || format!("torsion outside the barred block: {off_block:.3e}"))?;
    ensure(on_block > 0.0, || "torsion vanishes everywhere".into())?;
    Ok(format!("{compat}; torsion antisymmetry {antisym:.1e}, outside barred block {off_block:.1e}"))
}

fn c4_remark(s: &Suite) -> Outcome {
    model_check_max(s, Check::RemarkDecomposition, 1e-12)
}

fn c5_associated(s: &Suite) -> Outcome {
    model_check_max(s, Check::AssociatedCovector, 1e-10)
}

fn c6_block_forms(s: &Suite) -> Outcome {
    model_check_max(s, Check::BlockForms, 1e-10)
}

fn c7_levi_civita_identity(s: &Suite) -> Outcome {
    let mut worst: f64 = 0.0;
    for (m, set) in &s.models {
        for field in m.vector_fields.keys() {
            for kind in [LiftKind::Vertical, LiftKind::Complete] {
                let r = check_killing_lift(m, field, kind, set, SEED, None).map_err(|e| e.to_string())?;
                let v = r.sub_residuals["levi_civita_identity"];
                ensure(v <= 1e-8, || format!("{} {field} {kind:?}: {v:.3e}", m.name))?;
                worst = worst.max(v);
            }
        }
    }
    Ok(format!("max |sym − £| {worst:.2e} ≤ 1e-8"))
}

fn c8_theorem1a(s: &Suite) -> Outcome {
    let vertical = |m: &ManifoldModel, f: &str, set: &SampleSet| check_killing_lift(m, f, LiftKind::Vertical, set, SEED, None);
    let rot = field_report(s, "euclid2", "rotation", vertical)?;
    let phi = field_report(s, "sphere", "phi-rotation", vertical)?;
    let dil = field_report(s, "euclid2", "dilation", vertical)?;
    ensure(rot.verdict.passed() && rot.max_residual <= 1e-8, || format!("rotation {:.3e}", rot.max_residual))?;
    ensure(phi.verdict.passed() && phi.max_residual <= 1e-8, || format!("phi-rotation {:.3e}", phi.max_residual))?;
    ensure(!dil.verdict.passed() && dil.max_residual >= 1.0, || format!("dilation {:.3e}", dil.max_residual))?;
    Ok(format!(
        "rotation {:.1e}, phi-rotation {:.1e}, dilation fails with {:.3}",
        rot.max_residual, phi.max_residual, dil.max_residual
    ))
}

fn c9_theorem1b(s: &Suite) -> Outcome {
    let complete = |m: &ManifoldModel, f: &str, set: &SampleSet| check_killing_lift(m, f, LiftKind::Complete, set, SEED, None);
    let t = field_report(s, "euclid2-a-identity", "translation", complete)?;
    let (nx, na) = (t.sub_residuals["nabla_x"], t.sub_residuals["nabla_a"]);
    ensure(t.max_residual <= 1e-10 && nx <= 1e-10 && na <= 1e-10, || {
        format!("translation: £ {:.3e}, ∇X {nx:.3e}, ∇a {na:.3e}", t.max_residual)
    })?;
    let r = field_report(s, "euclid2-a-diag10", "rotation", complete)?;
    ensure(r.max_residual >= 0.5, || format!("rotation with a = diag(1,0): {:.3e}", r.max_residual))?;
    Ok(format!(
        "translation (a = I): £ {:.1e}, ∇X {nx:.1e}, ∇a {na:.1e}; rotation (a = diag(1,0)): £ {:.3}",
        t.max_residual, r.max_residual
    ))
}

fn c10_theorem2(s: &Suite) -> Outcome {
    let vertical = |m: &ManifoldModel, f: &str, set: &SampleSet| check_harmonic_lift(m, f, LiftKind::Vertical, set, SEED, None);
    let grad = field_report(s, "euclid2", "gradient", vertical)?;
    ensure(grad.verdict.passed(), || format!("gradient {:.3e}", grad.max_residual))?;
    let rot = field_report(s, "euclid2", "rotation", vertical)?;
    let anti = rot.sub_residuals["antisym"];
    ensure(!rot.verdict.passed() && (anti - 2.0).abs() <= 1e-10, || format!("rotation antisym {anti}"))?;
    let mut worst: f64 = 0.0;
    for (m, set) in &s.models {
        for field in m.vector_fields.keys() {
            for smp in &set.samples {
                let d = divergence_lift(m, field, LiftKind::Vertical, &smp.point).map_err(|e| e.to_string())?;
                worst = worst.max(d.abs());
            }
        }
    }
    ensure(worst <= 1e-12, || format!("vertical divergence {worst:.3e}"))?;
    Ok(format!("gradient passes; rotation antisym {anti}; max vertical divergence {worst:.1e}"))
}

fn c11_theorem3(s: &Suite) -> Outcome {
    let mut worst: f64 = 0.0;
    for (m, set) in &s.models {
        for (field, comps) in &m.vector_fields {
            for smp in &set.samples {
                let d = divergence_lift(m, field, LiftKind::Complete, &smp.point).map_err(|e| e.to_string())?;
                // Independent oracle: 2 gʲⁱ∇_jX_i = 2 ∇_jXʲ from the base geometry alone.
                let geo = LocalGeometry::at(m, &smp.point.x).map_err(|e| e.to_string())?;
                let up = geo.vector_jets(comps).map_err(|e| e.to_string())?;
                let nabla = geo.nabla_vector(&up);
                let oracle: f64 = 2.0 * (0..m.dim).map(|j| nabla[j * m.dim + j]).sum::<f64>();
                worst = worst.max((d - oracle).abs());
            }
        }
    }
    ensure(worst <= 1e-10, || format!("complete divergence mismatch {worst:.3e}"))?;
    let (e, set) = s.get("euclid2");
    let d = divergence_lift(e, "dilation", LiftKind::Complete, &set.samples[0].point).map_err(|e| e.to_string())?;
    ensure(d == 4.0, || format!("dilation divergence {d}"))?;
    Ok(format!("max |div − 2gʲⁱ∇_jX_i| {worst:.1e}; dilation gives {d}"))
}

fn c12_parallel_concurrent(s: &Suite) -> Outcome {
    for model in ["euclid2", "euclid2-a-identity"] {
        for kind in LiftKind::ALL {
            let r = field_report(s, model, "translation", |m, f, set| check_parallel_lift(m, f, kind, set, SEED, None))?;
            ensure(r.verdict.passed(), || format!("{model} parallel {kind:?}: {:.3e}", r.max_residual))?;
        }
    }
    let (m, set) = s.get("euclid2-a-x1sq");
    for kind in [LiftKind::Complete, LiftKind::Horizontal] {
        let r = check_parallel_lift(m, "translation", kind, set, SEED, None).map_err(|e| e.to_string())?;
        ensure(!r.verdict.passed(), || format!("x1sq {kind:?} unexpectedly passes"))?;
        let up = m.vector_field("translation").map_err(|e| e.to_string())?;
        for smp in &set.samples {
            let f = &smp.frame;
            let jets = f.geo.vector_jets(up).map_err(|e| e.to_string())?;
            let nabla = bundle_nabla_vector(&f.lift_vector_jets(&jets, kind), &f.metric_connection());
            let x1 = smp.point.x[0].abs();
            ensure((nabla.max_abs() - x1).abs() <= 1e-12, || {
                format!("x1sq {kind:?}: residual {} vs |x1| {x1}", nabla.max_abs())
            })?;
        }
    }
    let (e, set) = s.get("euclid2");
    let c = check_concurrent_lift(e, "dilation", set, SEED, None).map_err(|e| e.to_string())?;
    let t = c.sub_residuals["fitted_t"];
    ensure(c.verdict.passed() && (t - 1.0).abs() <= 1e-10, || format!("concurrent t = {t}"))?;
    Ok(format!("translation parallel for a const; x1sq residual = |x1| per sample; fitted t = {t}"))
}

fn c13_lemma(s: &Suite) -> Outcome {
    for model in ["euclid2", "sphere"] {
        let r = field_report(s, model, "zero", |m, f, set| check_lemma_iota(m, f, set, SEED, None))?;
        ensure(r.verdict.passed() && r.max_residual == 0.0, || format!("{model} C = 0: {:.3e}", r.max_residual))?;
    }
    let id = field_report(s, "euclid2", "identity", |m, f, set| check_lemma_iota(m, f, set, SEED, None))?;
    ensure(!id.verdict.passed() && (id.max_residual - 1.0).abs() <= 1e-10, || {
        format!("C = I residual {}", id.max_residual)
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(job_seed(SEED, "random-c"));
    let mut worst: f64 = 0.0;
    for k in 0..5 {
        let comps: Vec<ScalarFn> = (0..4).map(|_| ScalarFn::Const(rng.random_range(-2.0..2.0))).collect();
        let name = format!("random{k}");
        let m = catalog::sphere().with_tensor11(&name, comps).map_err(|e| e.to_string())?;
        let set = SampleSet::draw(&m, SAMPLES, job_seed(SEED, &name)).map_err(|e| e.to_string())?;
        let r = check_lemma_iota(&m, &name, &set, SEED, None).map_err(|e| e.to_string())?;
        let red = r.sub_residuals["reduction"];
        ensure(red <= 1e-10 && !r.verdict.passed(), || format!("{name}: reduction {red:.3e}"))?;
        worst = worst.max(red);
    }
    Ok(format!("C = 0 passes; C = I residual {}; random C block reduction {worst:.1e}", id.max_residual))
}

fn rel_err(ad: f64, fd: f64) -> f64 {
    (ad - fd).abs() / fd.abs().max(1.0)
}

/// Bundle-level jets (metric, lifts, ιC) against central differences of
/// their values in all `2n` coordinates.
fn bundle_fd(m: &ManifoldModel, p: &TangentPoint) -> Result<f64, String> {
    let n = m.dim;
    let collect = |q: &TangentPoint| -> Result<Vec<synectic::jet::Jet1>, String> {
        let f = BundleFrame::new(m, q).map_err(|e| e.to_string())?;
        let mut out = f.metric_jets();
        let mut push = |v: BundleVectorField| out.extend(v.comps);
        for comps in m.vector_fields.values() {
            let up = f.geo.vector_jets(comps).map_err(|e| e.to_string())?;
            for kind in LiftKind::ALL {
                push(f.lift_vector_jets(&up, kind));
            }
        }
        for comps in m.tensors11.values() {
            push(f.iota_jets(&f.geo.vector_jets(comps).map_err(|e| e.to_string())?));
        }
        for comps in m.one_forms.values() {
            let w = f.geo.vector_jets(comps).map_err(|e| e.to_string())?;
            for kind in LiftKind::ALL {
                out.extend(f.lift_oneform_jets(&w, kind).comps);
            }
        }
        Ok(out)
    };
    let base = collect(p)?;
    let mut worst: f64 = 0.0;
    for v in 0..2 * n {
        let shifted = |h: f64| {
            let mut q = p.clone();
            if v < n {
                q.x[v] += h;
            } else {
                q.y[v - n] += h;
            }
            collect(&q)
        };
        let (plus, minus) = (shifted(FD_STEP)?, shifted(-FD_STEP)?);
        for ((jet, a), b) in base.iter().zip(&plus).zip(&minus) {
            let fd = (a.value - b.value) / (2.0 * FD_STEP);
            worst = worst.max(rel_err(jet.grad[v], fd));
        }
    }
    Ok(worst)
}

fn c14_fd_oracle(s: &Suite) -> Outcome {
    let h = FD_STEP;
    let mut worst_grad: f64 = 0.0;
    let mut worst_hess: f64 = 0.0;
    let mut worst_gamma: f64 = 0.0;
    let mut worst_bundle: f64 = 0.0;
    let mut count = 0usize;
    for (m, set) in &s.models {
        let n = m.dim;
        let fns = m.component_functions();
        for smp in &set.samples {
            let x = &smp.point.x;
            let at = |dx: &[(usize, f64)]| {
                let mut y = x.clone();
                for &(i, d) in dx {
                    y[i] += d;
                }
                y
            };
            for (label, f) in &fns {
                let jet = jet2_eval(f, x).map_err(|e| format!("{}: {label}: {e}", m.name))?;
                let val = |y: Vec<f64>| f.value(&y).map_err(|e| format!("{label}: {e}"));
                for i in 0..n {
                    let fd = (val(at(&[(i, h)]))? - val(at(&[(i, -h)]))?) / (2.0 * h);
                    worst_grad = worst_grad.max(rel_err(jet.grad[i], fd));
                    for j in 0..n {
                        let fd = (val(at(&[(i, h), (j, h)]))? - val(at(&[(i, h), (j, -h)]))?
                            - val(at(&[(i, -h), (j, h)]))?
                            + val(at(&[(i, -h), (j, -h)]))?)
                            / (4.0 * h * h);
                        worst_hess = worst_hess.max(rel_err(jet.hess_at(i, j), fd));
                    }
                }
                count += 1;
            }
            // ∂Γ from jets against differences of Γ.
            let geo = &smp.frame.geo;
            for t in 0..n {
                let plus = LocalGeometry::at(m, &at(&[(t, h)])).map_err(|e| e.to_string())?;
                let minus = LocalGeometry::at(m, &at(&[(t, -h)])).map_err(|e| e.to_string())?;
                for kji in 0..n * n * n {
                    let fd = (plus.gamma[kji] - minus.gamma[kji]) / (2.0 * h);
                    worst_gamma = worst_gamma.max(rel_err(geo.dgamma[t * n * n * n + kji], fd));
                }
            }
            worst_bundle = worst_bundle.max(bundle_fd(m, &smp.point)?);
        }
    }
    let worst = worst_grad.max(worst_hess).max(worst_gamma).max(worst_bundle);
    ensure(worst <= FD_REL_TOL, || {
        format!("grad {worst_grad:.2e}, hess {worst_hess:.2e}, ∂Γ {worst_gamma:.2e}, bundle {worst_bundle:.2e}")
    })?;
    Ok(format!(
        "{count} component evaluations; rel. error grad {worst_grad:.1e}, hess {worst_hess:.1e}, ∂Γ {worst_gamma:.1e}, bundle {worst_bundle:.1e}"
    ))
}

fn c15_determinism(_: &Suite) -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_synectic"))
            .args(["verify", "--manifold", "sphere", "--all", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        format!("exit status {:?} / {:?}", a.status.code(), b.status.code())
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

type Criterion = (&'static str, fn(&Suite) -> Outcome);

fn main() -> ExitCode {
    let start = Instant::now();
    let suite = Suite::new();
    let criteria: [Criterion; 15] = [
        ("synectic metric inverse", c1_inverse),
        ("Levi-Civita connection is metric", c2_levi_civita),
        ("metric connection is metric, torsion shape", c3_metric_connection),
        ("metric connection decomposes with the H block", c4_remark),
        ("associated covectors of lifts", c5_associated),
        ("block closed forms vs generic formulas", c6_block_forms),
        ("symmetrized derivative equals Lie derivative", c7_levi_civita_identity),
        ("vertical lifts of Killing fields", c8_theorem1a),
        ("complete lifts and parallel a", c9_theorem1b),
        ("harmonic vertical lifts", c10_theorem2),
        ("divergence of complete lifts", c11_theorem3),
        ("parallel and concurrent lifts", c12_parallel_concurrent),
        ("iota of a (1,1) tensor is not Killing", c13_lemma),
        ("jets agree with finite differences", c14_fd_oracle),
        ("byte-identical JSON reports", c15_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&suite) {
            Ok(detail) => println!("PASS criterion {:>2}: {name} — {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} — {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
