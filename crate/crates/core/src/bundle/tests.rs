use std::f64::consts::FRAC_PI_4;

use super::*;
use crate::catalog;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn pt(x: [f64; 2], y: [f64; 2]) -> TangentPoint {
    TangentPoint::new(x.to_vec(), y.to_vec())
}

/// A handful of interior points per model, fiber values in `[−2, 2]`.
fn points(model: &ManifoldModel) -> Vec<TangentPoint> {
    let fracs = [(0.21, 0.37), (0.5, 0.5), (0.83, 0.12), (0.34, 0.91)];
    let ys = [[1.3, -0.7], [-2.0, 0.4], [0.25, 1.9], [-1.1, -1.6]];
    fracs
        .iter()
        .zip(ys)
        .map(|(&(u, v), y)| {
            let (a, b) = model.chart[0];
            let (c, d) = model.chart[1];
            pt([a + u * (b - a), c + v * (d - c)], y)
        })
        .collect()
}

fn all_models() -> Vec<ManifoldModel> {
    catalog::BUILTIN_NAMES
        .iter()
        .map(|n| catalog::builtin(n).unwrap())
        .collect()
}

#[test]
fn lift_vector_examples() {
    let e = catalog::euclid2();
    let p = pt([0.7, -1.2], [0.3, 0.9]);
    let v = |name, kind| lift_vector(&e, name, kind, &p).unwrap().values();
    assert_eq!(v("translation", LiftKind::Vertical), [0.0, 0.0, 1.0, 0.0]);
    assert_eq!(v("translation", LiftKind::Complete), [1.0, 0.0, 0.0, 0.0]);
    assert_eq!(v("translation", LiftKind::Horizontal), [1.0, 0.0, 0.0, 0.0]);
    assert!(close(&v("rotation", LiftKind::Complete), &[1.2, 0.7, -0.9, 0.3], 1e-15));

    let s = catalog::sphere();
    let h = lift_vector(&s, "phi-rotation", LiftKind::Horizontal, &pt([FRAC_PI_4, 0.4], [1.0, 1.0])).unwrap();
    assert!(close(&h.values(), &[0.0, 1.0, 0.5, -1.0], 1e-12));
}

#[test]
fn lift_oneform_examples() {
    let e = catalog::euclid2();
    let p = pt([0.7, -1.2], [0.3, 0.9]);
    let w = |name, kind| lift_oneform(&e, name, kind, &p).unwrap().values();
    assert_eq!(w("dx1", LiftKind::Vertical), [1.0, 0.0, 0.0, 0.0]);
    assert_eq!(w("dx1", LiftKind::Complete), [0.0, 0.0, 1.0, 0.0]);
    assert!(close(&w("x2dx1", LiftKind::Complete), &[0.9, 0.0, -1.2, 0.0], 1e-15));

    // ω = (0, sin²x₁), y = (1, 0): first block −y¹Γᵏ₁ᵢω_k = (0, −cot·½) = (0, −½).
    let s = catalog::sphere();
    let h = lift_oneform(&s, "w", LiftKind::Horizontal, &pt([FRAC_PI_4, 1.0], [1.0, 0.0])).unwrap();
    assert!(close(&h.values(), &[0.0, -0.5, 0.0, 0.5], 1e-12));
}

#[test]
fn associated_covector_examples() {
    let e = catalog::euclid2();
    let p = pt([0.7, -1.2], [0.3, 0.9]);
    let f = BundleFrame::new(&e, &p).unwrap();
    let v = f.lift_vector(&e, "translation", LiftKind::Vertical).unwrap();
    assert_eq!(f.associated_covector(&v).values(), [1.0, 0.0, 0.0, 0.0]);
    let c = f.lift_vector(&e, "rotation", LiftKind::Complete).unwrap();
    assert!(close(&f.associated_covector(&c).values(), &[-0.9, 0.3, 1.2, 0.7], 1e-15));

    // X_h = (0, ½); Γ₁ʰX_h = y²Γ²₂₁·½ = ½, Γ₂ʰX_h = y¹Γ²₁₂·½ = ½.
    let s = catalog::sphere();
    let f = BundleFrame::new(&s, &pt([FRAC_PI_4, 0.2], [1.0, 1.0])).unwrap();
    let h = f.lift_vector(&s, "phi-rotation", LiftKind::Horizontal).unwrap();
    let generic = f.associated_covector(&h).values();
    let up = f.geo.vector_jets(s.vector_field("phi-rotation").unwrap()).unwrap();
    let closed = closed::associated_covector(&f, &up, LiftKind::Horizontal);
    assert!(close(&generic, &[0.5, 0.5, 0.0, 0.5], 1e-12));
    assert!(close(&generic, &closed, 1e-12));
}

#[test]
fn associated_covector_two_routes() {
    for model in all_models() {
        for p in points(&model) {
            let f = BundleFrame::new(&model, &p).unwrap();
            for (name, comps) in &model.vector_fields {
                let up = f.geo.vector_jets(comps).unwrap();
                for kind in LiftKind::ALL {
                    let generic = f.associated_covector(&f.lift_vector_jets(&up, kind)).values();
                    let closed = closed::associated_covector(&f, &up, kind);
                    assert!(
                        close(&generic, &closed, 1e-10),
                        "{} {name} {kind:?}: {generic:?} vs {closed:?}",
                        model.name
                    );
                }
            }
        }
    }
}

#[test]
fn metric_times_inverse_is_identity() {
    for model in all_models() {
        for p in points(&model) {
            let f = BundleFrame::new(&model, &p).unwrap();
            let prod = f.metric().contract(&f.metric_inverse(), 1, 0).unwrap();
            let id = MultiIndexArray::identity(4);
            assert!(prod.max_abs_diff(&id) < 1e-10, "{}", model.name);
        }
    }
}

#[test]
fn metric_jets_match_values() {
    let m = catalog::euclid2_a_x1sq();
    let f = BundleFrame::new(&m, &pt([0.6, 0.1], [1.0, -0.5])).unwrap();
    let vals: Vec<f64> = f.metric_jets().iter().map(|j| j.value).collect();
    assert_eq!(vals, f.metric().data());
}

#[test]
fn both_connections_are_metric() {
    for model in all_models() {
        for p in points(&model) {
            let f = BundleFrame::new(&model, &p).unwrap();
            let g = f.metric_jets();
            for conn in [f.levi_civita(), f.metric_connection()] {
                let r = metric_compatibility(&g, &conn).max_abs();
                assert!(r < 1e-8, "{} {:?}: {r}", model.name, conn.kind);
            }
        }
    }
}

#[test]
fn levi_civita_is_torsion_free_and_metric_connection_is_not() {
    let s = catalog::sphere();
    let f = BundleFrame::new(&s, &pt([1.0, 0.5], [0.8, -1.1])).unwrap();
    assert_eq!(f.levi_civita().torsion().max_abs(), 0.0);
    let t = f.metric_connection().torsion();
    assert!(t.max_abs() > 0.1);
    let n = 2;
    for a in 0..2 * n {
        for c in 0..2 * n {
            for b in 0..2 * n {
                assert_eq!(t.get(&[a, c, b]), -t.get(&[a, b, c]));
            }
        }
    }
    // Only the barred-upper, unbarred-lower block can be non-zero.
    for a in 0..n {
        for c in 0..2 * n {
            for b in 0..2 * n {
                assert_eq!(t.get(&[a, c, b]), 0.0);
            }
        }
    }
}

#[test]
fn connections_differ_by_curvature_term() {
    let s = catalog::sphere();
    let p = pt([FRAC_PI_4, 0.0], [1.0, 0.0]);
    let f = BundleFrame::new(&s, &p).unwrap();
    let (lc, mc) = (f.levi_civita(), f.metric_connection());
    for h in 0..2 {
        for j in 0..2 {
            for i in 0..2 {
                let diff = mc.coeff(2 + h, j, i) - lc.coeff(2 + h, j, i);
                assert!((diff + f.geo.riemann(0, j, i, h)).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn flat_constant_a_connections_vanish() {
    let m = catalog::euclid2_a_identity();
    let f = BundleFrame::new(&m, &pt([0.3, -0.4], [1.0, 2.0])).unwrap();
    assert_eq!(f.levi_civita().to_array().max_abs(), 0.0);
    assert_eq!(f.metric_connection().to_array().max_abs(), 0.0);
}

#[test]
fn remark_decomposition_is_the_h_block() {
    let m = catalog::euclid2_a_x1sq();
    let f = BundleFrame::new(&m, &pt([1.5, 0.2], [-1.0, 0.5])).unwrap();
    let full = f.metric_connection().to_array();
    let bare = f.metric_connection_without_h().to_array();
    let n = 2;
    for a in 0..2 * n {
        for b in 0..2 * n {
            for c in 0..2 * n {
                let expect = if a >= n && b < n && c < n { f.geo.h(a - n, b, c) } else { 0.0 };
                assert!((full.get(&[a, b, c]) - bare.get(&[a, b, c]) - expect).abs() < 1e-15);
            }
        }
    }
    assert!((f.geo.h(0, 0, 0) - 1.5).abs() < 1e-15);
}

#[test]
fn nabla_covector_examples() {
    let e = catalog::euclid2();
    let p = pt([0.4, 1.1], [-0.3, 0.6]);
    let f = BundleFrame::new(&e, &p).unwrap();
    let lc = f.levi_civita();
    let nab = |name, kind| {
        let l = f.lift_vector(&e, name, kind).unwrap();
        bundle_nabla_covector(&f.associated_covector(&l), &lc)
    };
    let rot = nab("rotation", LiftKind::Vertical);
    let mut expect = [0.0; 16];
    expect[1] = 1.0;
    expect[4] = -1.0;
    assert_eq!(rot.data(), &expect[..]);

    let dil = nab("dilation", LiftKind::Vertical);
    let mut expect = [0.0; 16];
    expect[0] = 1.0;
    expect[5] = 1.0;
    assert_eq!(dil.data(), &expect[..]);

    let m = catalog::euclid2_a_identity();
    let f = BundleFrame::new(&m, &p).unwrap();
    let l = f.lift_vector(&m, "translation", LiftKind::Complete).unwrap();
    assert_eq!(bundle_nabla_covector(&f.associated_covector(&l), &f.levi_civita()).max_abs(), 0.0);
}

#[test]
fn nabla_covector_two_routes() {
    for model in all_models() {
        for p in points(&model) {
            let f = BundleFrame::new(&model, &p).unwrap();
            let lc = f.levi_civita();
            for (name, comps) in &model.vector_fields {
                let up = f.geo.vector_jets(comps).unwrap();
                for kind in [LiftKind::Vertical, LiftKind::Complete] {
                    let generic = bundle_nabla_covector(&f.associated_covector(&f.lift_vector_jets(&up, kind)), &lc);
                    let closed = closed::nabla_lift_covector(&f, &up, kind).unwrap();
                    let r = generic.max_abs_diff(&closed);
                    assert!(r < 1e-10, "{} {name} {kind:?}: {r}", model.name);
                }
            }
        }
    }
}

#[test]
fn nabla_vector_examples() {
    let e = catalog::euclid2();
    let f = BundleFrame::new(&e, &pt([0.4, 1.1], [-0.3, 0.6])).unwrap();
    let mc = f.metric_connection();
    let l = f.lift_vector(&e, "translation", LiftKind::Vertical).unwrap();
    assert_eq!(bundle_nabla_vector(&l, &mc).max_abs(), 0.0);
    let l = f.lift_vector(&e, "dilation", LiftKind::Complete).unwrap();
    let r = bundle_nabla_vector(&l, &mc);
    assert!(r.max_abs_diff(&MultiIndexArray::identity(4)) < 1e-15);
}

#[test]
fn nabla_vector_two_routes() {
    for model in all_models() {
        for p in points(&model) {
            let f = BundleFrame::new(&model, &p).unwrap();
            let mc = f.metric_connection();
            for (name, comps) in &model.vector_fields {
                let up = f.geo.vector_jets(comps).unwrap();
                for kind in LiftKind::ALL {
                    let generic = bundle_nabla_vector(&f.lift_vector_jets(&up, kind), &mc);
                    let closed = closed::nabla_lift_vector(&f, &up, kind);
                    let r = generic.max_abs_diff(&closed);
                    assert!(r < 1e-10, "{} {name} {kind:?}: {r}", model.name);
                }
            }
        }
    }
}

#[test]
fn iota_examples() {
    let e = catalog::euclid2();
    let p = pt([0.1, 0.2], [2.0, 3.0]);
    assert_eq!(iota_lift(&e, "zero", &p).unwrap().values(), [0.0; 4]);
    assert_eq!(iota_lift(&e, "identity", &p).unwrap().values(), [0.0, 0.0, 2.0, 3.0]);
    let p = pt([0.1, 0.2], [1.0, 1.0]);
    assert_eq!(iota_lift(&e, "upper", &p).unwrap().values(), [0.0, 0.0, 1.0, 3.0]);
}

#[test]
fn lie_derivative_of_iota_identity() {
    let e = catalog::euclid2();
    let f = BundleFrame::new(&e, &pt([0.5, -0.5], [1.0, 0.3])).unwrap();
    let l = lie_derivative(&f.metric_jets(), &f.iota(&e, "identity").unwrap());
    let mut expect = [0.0; 16];
    for (r, c) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
        expect[r * 4 + c] = 1.0;
    }
    assert!(close(l.data(), &expect, 1e-15));
}

#[test]
fn lie_derivative_blocks_two_routes() {
    for model in all_models() {
        for p in points(&model) {
            let f = BundleFrame::new(&model, &p).unwrap();
            let g = f.metric_jets();
            let mut fields: Vec<BundleVectorField> = Vec::new();
            for comps in model.vector_fields.values() {
                let up = f.geo.vector_jets(comps).unwrap();
                fields.extend(LiftKind::ALL.map(|k| f.lift_vector_jets(&up, k)));
            }
            for name in model.tensors11.keys() {
                fields.push(f.iota(&model, name).unwrap());
            }
            for v in fields {
                let generic = lie_derivative(&g, &v);
                let blocks = closed::lie_derivative_blocks(&f, &v);
                let r = generic.max_abs_diff(&blocks);
                assert!(r < 1e-10, "{}: {r}", model.name);
                let asym = generic.antisym_pair(0, 1, false).unwrap().max_abs();
                assert!(asym < 1e-12);
            }
        }
    }
}

#[test]
fn rejects_wrong_fiber_dimension() {
    let e = catalog::euclid2();
    let p = TangentPoint { x: vec![0.0, 0.0], y: vec![1.0] };
    assert!(matches!(
        BundleFrame::new(&e, &p),
        Err(GeometryError::PointDimension { got: 1, dim: 2 })
    ));
}
