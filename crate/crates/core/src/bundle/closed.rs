//! Block closed forms for lifted fields, evaluated from base data only.
//!
//! These are the second route in every two-route comparison: nothing here
//! touches the `2n`-dimensional metric or connection arrays. All matrices
//! use the same `[B][A]` layout as the generic routes in the parent module.

use crate::jet::{Jet1, Jet2};
use crate::tensor::{MultiIndexArray, Variance};

use super::{BundleFrame, BundleVectorField, LiftKind};

use Variance::{Lower, Upper};

/// Base data shared by the closed forms for one vector field.
struct FieldData {
    n: usize,
    /// `X_i`
    down: Vec<Jet2>,
    /// `∇_j X_i`, `[j][i]`
    nabla_down: Vec<f64>,
    /// `yˢ ∂_s(∇_j X_i)`, `[j][i]`
    d_nabla_down: Vec<f64>,
    /// `∇_j(a_il Xˡ)`, `[j][i]`
    nabla_ax: Vec<f64>,
    /// `a_ij Xʲ`
    ax: Vec<f64>,
}

impl FieldData {
    fn new(frame: &BundleFrame, up: &[Jet2]) -> Self {
        let geo = &frame.geo;
        let n = geo.n;
        let down = geo.lower_jets(up);
        let nabla_down = geo.nabla_covector(&down);
        let partials = geo.nabla_covector_partials(&down);
        let d_nabla_down = (0..n * n)
            .map(|ji| (0..n).map(|s| frame.y[s] * partials[s * n * n + ji]).sum())
            .collect();
        let ax_jets: Vec<Jet2> = (0..n)
            .map(|i| {
                let mut acc = Jet2::constant(0.0, n);
                for l in 0..n {
                    acc = acc + &geo.a_jets[i * n + l] * &up[l];
                }
                acc
            })
            .collect();
        let nabla_ax = geo.nabla_covector(&ax_jets);
        let ax = ax_jets.iter().map(|j| j.value).collect();
        Self {
            n,
            down,
            nabla_down,
            d_nabla_down,
            nabla_ax,
            ax,
        }
    }

    /// `Hᵐ_ji X_m`
    fn hx(&self, frame: &BundleFrame, j: usize, i: usize) -> f64 {
        (0..self.n).map(|m| frame.geo.h(m, j, i) * self.down[m].value).sum()
    }
}

fn square(n: usize, variance: [Variance; 2]) -> MultiIndexArray {
    MultiIndexArray::zeros(vec![2 * n, 2 * n], variance.to_vec())
}

/// `Γᵢʰ = yˢ Γʰ_si`
fn gamma_y(frame: &BundleFrame, h: usize, i: usize) -> f64 {
    (0..frame.n()).map(|s| frame.y[s] * frame.geo.gamma(h, s, i)).sum()
}

/// Associated covector of a lift:
/// `(X_i, 0)`, `(∂X_i + a_ij Xʲ, X_i)`, `(Γᵢʰ X_h + a_ij Xʲ, X_i)`.
pub fn associated_covector(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> Vec<f64> {
    let geo = &frame.geo;
    let n = geo.n;
    let data = FieldData::new(frame, up);
    let mut out = vec![0.0; 2 * n];
    for i in 0..n {
        let xi = data.down[i].value;
        match kind {
            LiftKind::Vertical => out[i] = xi,
            LiftKind::Complete => {
                let dx: f64 = (0..n).map(|s| frame.y[s] * data.down[i].grad[s]).sum();
                out[i] = dx + data.ax[i];
                out[n + i] = xi;
            }
            LiftKind::Horizontal => {
                let gx: f64 = (0..n).map(|h| gamma_y(frame, h, i) * data.down[h].value).sum();
                out[i] = gx + data.ax[i];
                out[n + i] = xi;
            }
        }
    }
    out
}

/// `ˢ∇_B X_A` under the Levi-Civita connection, for vertical and complete
/// lifts. Returns `None` for the horizontal lift, which has no block form.
pub fn nabla_lift_covector(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> Option<MultiIndexArray> {
    let n = frame.n();
    let data = FieldData::new(frame, up);
    let mut out = square(n, [Lower, Lower]);
    for j in 0..n {
        for i in 0..n {
            let nx = data.nabla_down[j * n + i];
            match kind {
                LiftKind::Vertical => out.set(&[j, i], nx),
                LiftKind::Complete => {
                    let ji = j * n + i;
                    out.set(
                        &[j, i],
                        data.d_nabla_down[ji] + data.nabla_ax[ji] - data.hx(frame, j, i),
                    );
                    out.set(&[j, n + i], nx);
                    out.set(&[n + j, i], nx);
                }
                LiftKind::Horizontal => return None,
            }
        }
    }
    Some(out)
}

/// `ˢ∇_B X_A + ˢ∇_A X_B` from the displayed block formulas.
pub fn sym_lift_covector(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> Option<MultiIndexArray> {
    let n = frame.n();
    let data = FieldData::new(frame, up);
    let mut out = square(n, [Lower, Lower]);
    for j in 0..n {
        for i in 0..n {
            let (ji, ij) = (j * n + i, i * n + j);
            let s = data.nabla_down[ji] + data.nabla_down[ij];
            match kind {
                LiftKind::Vertical => out.set(&[j, i], s),
                LiftKind::Complete => {
                    out.set(
                        &[j, i],
                        data.d_nabla_down[ji] + data.d_nabla_down[ij] + data.nabla_ax[ji] + data.nabla_ax[ij]
                            - data.hx(frame, j, i)
                            - data.hx(frame, i, j),
                    );
                    out.set(&[j, n + i], s);
                    out.set(&[n + j, i], s);
                }
                LiftKind::Horizontal => return None,
            }
        }
    }
    Some(out)
}

/// `ˢ∇_B X_A − ˢ∇_A X_B`, the literal antisymmetrization of the block form
/// of `ˢ∇_B X_A`.
pub fn antisym_lift_covector(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> Option<MultiIndexArray> {
    let nabla = nabla_lift_covector(frame, up, kind)?;
    Some(nabla.antisym_pair(0, 1, false).expect("square matrix"))
}

/// `ˢg^BA ˢ∇_B X_A`: `0` for the vertical lift, `2gʲⁱ∇_jX_i` for the
/// complete lift.
pub fn divergence_lift(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> Option<f64> {
    let geo = &frame.geo;
    let n = geo.n;
    match kind {
        LiftKind::Vertical => Some(0.0),
        LiftKind::Complete => {
            let nabla = geo.nabla_covector(&geo.lower_jets(up));
            let mut tr = 0.0;
            for j in 0..n {
                for i in 0..n {
                    tr += geo.ginv(j, i) * nabla[j * n + i];
                }
            }
            Some(2.0 * tr)
        }
        LiftKind::Horizontal => None,
    }
}

/// `∇̃_B X̃ᴬ` under the metric connection, block form for all three lifts.
pub fn nabla_lift_vector(frame: &BundleFrame, up: &[Jet2], kind: LiftKind) -> MultiIndexArray {
    let geo = &frame.geo;
    let n = geo.n;
    let nabla = geo.nabla_vector(up);
    let partials = geo.nabla_vector_partials(up);
    let mut out = square(n, [Lower, Upper]);
    for j in 0..n {
        for h in 0..n {
            let nx = nabla[j * n + h];
            // Hʰ_jm Xᵐ
            let hx: f64 = (0..n).map(|m| geo.h(h, j, m) * up[m].value).sum();
            match kind {
                LiftKind::Vertical => out.set(&[j, n + h], nx),
                LiftKind::Complete => {
                    let d_nabla: f64 = (0..n).map(|s| frame.y[s] * partials[(s * n + j) * n + h]).sum();
                    let mut rx = 0.0;
                    for k in 0..n {
                        for m in 0..n {
                            rx += frame.y[k] * geo.riemann(k, j, m, h) * up[m].value;
                        }
                    }
                    out.set(&[j, h], nx);
                    out.set(&[j, n + h], d_nabla + hx - rx);
                    out.set(&[n + j, n + h], nx);
                }
                LiftKind::Horizontal => {
                    let gx: f64 = (0..n).map(|i| gamma_y(frame, h, i) * nabla[j * n + i]).sum();
                    out.set(&[j, h], nx);
                    out.set(&[j, n + h], hx - gx);
                }
            }
        }
    }
    out
}

/// The four blocks of `£_X̃ ˢg`, each expanded in base quantities, for an
/// arbitrary bundle field given by its jets. Layout `[B][A]`; block
/// `(j, i)`, `(j̄, i)`, `(j, ī)`, `(j̄, ī)` in that order.
pub fn lie_derivative_blocks(frame: &BundleFrame, v: &BundleVectorField) -> MultiIndexArray {
    let geo = &frame.geo;
    let n = geo.n;
    let y = &frame.y;
    let x = |h: usize| &v.comps[h];
    let xb = |h: usize| &v.comps[n + h];
    let d = |f: &Jet1, b: usize| f.grad[b];
    let dg = |j: usize, i: usize| -> f64 { (0..n).map(|s| y[s] * geo.dg(s, j, i)).sum() };
    let d_dg = |h: usize, j: usize, i: usize| -> f64 { (0..n).map(|s| y[s] * geo.ddg(h, s, j, i)).sum() };

    let mut out = square(n, [Lower, Lower]);
    for j in 0..n {
        for i in 0..n {
            let (mut b12, mut b13, mut b14, mut b15) = (0.0, 0.0, 0.0, 0.0);
            for h in 0..n {
                let (xh, xbh) = (x(h), xb(h));
                b12 += xh.value * d_dg(h, j, i)
                    + xbh.value * geo.dg(h, j, i)
                    + dg(j, h) * d(xh, i)
                    + geo.g(j, h) * d(xbh, i)
                    + dg(h, i) * d(xh, j)
                    + geo.g(h, i) * d(xbh, j)
                    + xh.value * geo.da(h, j, i)
                    + geo.a(j, h) * d(xh, i)
                    + geo.a(h, i) * d(xh, j);
                b13 += xh.value * geo.dg(h, j, i)
                    + geo.g(j, h) * d(xh, i)
                    + dg(h, i) * d(xh, n + j)
                    + geo.g(h, i) * d(xbh, n + j)
                    + geo.a(h, i) * d(xh, n + j);
                b14 += xh.value * geo.dg(h, j, i)
                    + geo.g(h, i) * d(xh, j)
                    + dg(j, h) * d(xh, n + i)
                    + geo.g(j, h) * d(xbh, n + i)
                    + geo.a(j, h) * d(xh, n + i);
                b15 += geo.g(j, h) * d(xh, n + i) + geo.g(h, i) * d(xh, n + j);
            }
            out.set(&[j, i], b12);
            out.set(&[n + j, i], b13);
            out.set(&[j, n + i], b14);
            out.set(&[n + j, n + i], b15);
        }
    }
    out
}
