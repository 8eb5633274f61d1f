//! Objects on the tangent bundle in induced coordinates `(xʰ, yʰ)`.
//!
//! A bundle index `A` runs over `0..2n`: `A < n` is an unbarred (base)
//! direction, `A = n + h` is the barred (fiber) direction `h̄`. The fiber
//! coordinate written `x^h̄` elsewhere is stored as `y[h]`.
//!
//! `∂f` for a base object `f` always means `yˢ ∂_s f`.
//!
//! Field values are carried as [`Jet1`]s over all `2n` coordinates, so the
//! generic index formulas (`∂_B X̃ᴬ + Γᴬ_BE X̃ᴱ`, Lie derivatives, metric
//! compatibility) are plain loops. The block closed forms live in
//! [`closed`].

pub mod closed;

use serde::{Deserialize, Serialize};

use crate::geometry::{GeometryError, LocalGeometry, ManifoldModel};
use crate::jet::{Jet1, Jet2, ScalarFn};
use crate::tensor::{MultiIndexArray, Variance};

use Variance::{Lower, Upper};

/// A point of `T(M)`: base coordinates and fiber coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl TangentPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len(), "base and fiber dimensions differ");
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LiftKind {
    Vertical,
    Complete,
    Horizontal,
}

impl LiftKind {
    pub const ALL: [LiftKind; 3] = [LiftKind::Vertical, LiftKind::Complete, LiftKind::Horizontal];

    pub fn name(self) -> &'static str {
        match self {
            LiftKind::Vertical => "vertical",
            LiftKind::Complete => "complete",
            LiftKind::Horizontal => "horizontal",
        }
    }
}

/// Components `X̃ᴬ` with first partials in `(x, y)`, evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleVectorField {
    pub comps: Vec<Jet1>,
}

/// Components `ω̃_A` with first partials in `(x, y)`, evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleCovectorField {
    pub comps: Vec<Jet1>,
}

impl BundleVectorField {
    pub fn values(&self) -> Vec<f64> {
        self.comps.iter().map(|c| c.value).collect()
    }
}

impl BundleCovectorField {
    pub fn values(&self) -> Vec<f64> {
        self.comps.iter().map(|c| c.value).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConnectionKind {
    /// Torsion-free Levi-Civita connection of `ˢg`.
    LeviCivita,
    /// Metric connection with torsion, carrying the `−yᵏR_kjiʰ` term.
    MetricWithTorsion,
    /// The metric connection with `H` dropped from its vertical block.
    MetricWithoutH,
}

/// Coefficients `Γᴬ_BC` at one point, stored densely as `[A][B][C]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleConnection {
    pub kind: ConnectionKind,
    pub n: usize,
    coeffs: Vec<f64>,
}

impl BundleConnection {
    fn zeros(kind: ConnectionKind, n: usize) -> Self {
        let m = 2 * n;
        Self {
            kind,
            n,
            coeffs: vec![0.0; m * m * m],
        }
    }

    #[inline]
    pub fn coeff(&self, a: usize, b: usize, c: usize) -> f64 {
        let m = 2 * self.n;
        self.coeffs[(a * m + b) * m + c]
    }

    #[inline]
    fn set(&mut self, a: usize, b: usize, c: usize, v: f64) {
        let m = 2 * self.n;
        self.coeffs[(a * m + b) * m + c] = v;
    }

    /// One `n³` block; `barred = (A, B, C)` selects barred index ranges.
    pub fn block(&self, barred: (bool, bool, bool)) -> MultiIndexArray {
        let n = self.n;
        let off = |b: bool| if b { n } else { 0 };
        let mut out = MultiIndexArray::zeros(vec![n; 3], vec![Upper, Lower, Lower]);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.set(
                        &[a, b, c],
                        self.coeff(a + off(barred.0), b + off(barred.1), c + off(barred.2)),
                    );
                }
            }
        }
        out
    }

    pub fn to_array(&self) -> MultiIndexArray {
        let m = 2 * self.n;
        MultiIndexArray::new(vec![m; 3], vec![Upper, Lower, Lower], self.coeffs.clone())
            .expect("consistent shape")
    }

    /// `Tᴬ_CB = Γᴬ_CB − Γᴬ_BC`, slots `[A][C][B]`.
    pub fn torsion(&self) -> MultiIndexArray {
        let m = 2 * self.n;
        let mut out = MultiIndexArray::zeros(vec![m; 3], vec![Upper, Lower, Lower]);
        for a in 0..m {
            for c in 0..m {
                for b in 0..m {
                    out.set(&[a, c, b], self.coeff(a, c, b) - self.coeff(a, b, c));
                }
            }
        }
        out
    }
}

/// Base geometry at `x` together with the fiber coordinates `y`.
#[derive(Debug, Clone)]
pub struct BundleFrame {
    pub geo: LocalGeometry,
    pub y: Vec<f64>,
}

impl BundleFrame {
    pub fn new(model: &ManifoldModel, p: &TangentPoint) -> Result<Self, GeometryError> {
        if p.y.len() != model.dim {
            return Err(GeometryError::PointDimension {
                got: p.y.len(),
                dim: model.dim,
            });
        }
        Ok(Self {
            geo: LocalGeometry::at(model, &p.x)?,
            y: p.y.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.geo.n
    }

    fn m(&self) -> usize {
        2 * self.geo.n
    }

    /// The fiber coordinate `yˢ` as a jet.
    pub fn y_jet(&self, s: usize) -> Jet1 {
        Jet1::variable(self.y[s], self.n() + s, self.m())
    }

    /// A base scalar seen as a function on the bundle.
    pub fn lift0(&self, f: &Jet2) -> Jet1 {
        f.first_order().embed(self.m())
    }

    /// `∂f = yˢ∂_s f` as a bundle jet: its `x`-partials use the Hessian of
    /// `f`, its `y`-partials are `∂_s f`.
    pub fn lift_d(&self, f: &Jet2) -> Jet1 {
        let n = self.n();
        let mut out = Jet1::zero(self.m());
        for s in 0..n {
            out.value += self.y[s] * f.grad[s];
            for t in 0..n {
                out.grad[t] += self.y[s] * f.hess_at(t, s);
            }
            out.grad[n + s] = f.grad[s];
        }
        out
    }

    /// `Γᵏ_ji` as a bundle jet (partials from `∂_tΓᵏ_ji`).
    fn gamma_jet(&self, k: usize, j: usize, i: usize) -> Jet1 {
        let n = self.n();
        let mut out = Jet1::constant(self.geo.gamma(k, j, i), self.m());
        for t in 0..n {
            out.grad[t] = self.geo.dgamma(t, k, j, i);
        }
        out
    }

    /// `ˢg_CB` (Eq. 2 block form), plain values.
    pub fn metric(&self) -> MultiIndexArray {
        let n = self.n();
        let m = self.m();
        let mut out = MultiIndexArray::zeros(vec![m, m], vec![Lower, Lower]);
        for j in 0..n {
            for i in 0..n {
                let dg: f64 = (0..n).map(|s| self.y[s] * self.geo.dg(s, j, i)).sum();
                out.set(&[j, i], self.geo.a(j, i) + dg);
                out.set(&[j, n + i], self.geo.g(j, i));
                out.set(&[n + j, i], self.geo.g(j, i));
            }
        }
        out
    }

    /// `ˢg^CB`: `[[0, gʲⁱ], [gʲⁱ, yˢ∂_s gʲⁱ − aʲⁱ]]` with `aʲⁱ = gʲᵗ a_ts gˢⁱ`.
    pub fn metric_inverse(&self) -> MultiIndexArray {
        let n = self.n();
        let m = self.m();
        let geo = &self.geo;
        let mut out = MultiIndexArray::zeros(vec![m, m], vec![Upper, Upper]);
        for j in 0..n {
            for i in 0..n {
                let mut a_up = 0.0;
                for t in 0..n {
                    for s in 0..n {
                        a_up += geo.ginv(j, t) * geo.a(t, s) * geo.ginv(s, i);
                    }
                }
                let d_inv: f64 = (0..n)
                    .map(|s| self.y[s] * geo.dginv[(s * n + j) * n + i])
                    .sum();
                out.set(&[j, n + i], geo.ginv(j, i));
                out.set(&[n + j, i], geo.ginv(j, i));
                out.set(&[n + j, n + i], d_inv - a_up);
            }
        }
        out
    }

    /// `ˢg_CB` as jets over `(x, y)`, row-major `2n × 2n`.
    pub fn metric_jets(&self) -> Vec<Jet1> {
        let n = self.n();
        let m = self.m();
        let mut out = vec![Jet1::zero(m); m * m];
        for j in 0..n {
            for i in 0..n {
                let gji = &self.geo.g_jets[j * n + i];
                out[j * m + i] = &self.lift0(&self.geo.a_jets[j * n + i]) + &self.lift_d(gji);
                out[j * m + n + i] = self.lift0(gji);
                out[(n + j) * m + i] = self.lift0(gji);
            }
        }
        out
    }

    fn connection(&self, kind: ConnectionKind) -> BundleConnection {
        let n = self.n();
        let geo = &self.geo;
        let mut conn = BundleConnection::zeros(kind, n);
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let gam = geo.gamma(k, j, i);
                    conn.set(k, j, i, gam);
                    conn.set(n + k, n + j, i, gam);
                    conn.set(n + k, j, n + i, gam);
                    let mut y_dgamma = 0.0;
                    let mut y_r = 0.0;
                    for t in 0..n {
                        y_dgamma += self.y[t] * geo.dgamma(t, k, j, i);
                        y_r += self.y[t] * geo.riemann(t, j, i, k);
                    }
                    let vertical = match kind {
                        ConnectionKind::LeviCivita => y_dgamma + geo.h(k, j, i),
                        ConnectionKind::MetricWithTorsion => y_dgamma + geo.h(k, j, i) - y_r,
                        ConnectionKind::MetricWithoutH => y_dgamma - y_r,
                    };
                    conn.set(n + k, j, i, vertical);
                }
            }
        }
        conn
    }

    pub fn levi_civita(&self) -> BundleConnection {
        self.connection(ConnectionKind::LeviCivita)
    }

    pub fn metric_connection(&self) -> BundleConnection {
        self.connection(ConnectionKind::MetricWithTorsion)
    }

    /// The metric connection with the `H` term removed.
    pub fn metric_connection_without_h(&self) -> BundleConnection {
        self.connection(ConnectionKind::MetricWithoutH)
    }

    /// `ᵛX = (0, Xʰ)`, `ᶜX = (Xʰ, ∂Xʰ)`, `ᴴX = (Xʰ, −yˢΓʰ_si Xⁱ)`.
    pub fn lift_vector_jets(&self, up: &[Jet2], kind: LiftKind) -> BundleVectorField {
        let n = self.n();
        let m = self.m();
        let mut comps = vec![Jet1::zero(m); m];
        for h in 0..n {
            match kind {
                LiftKind::Vertical => comps[n + h] = self.lift0(&up[h]),
                LiftKind::Complete => {
                    comps[h] = self.lift0(&up[h]);
                    comps[n + h] = self.lift_d(&up[h]);
                }
                LiftKind::Horizontal => {
                    comps[h] = self.lift0(&up[h]);
                    let mut acc = Jet1::zero(m);
                    for s in 0..n {
                        let ys = self.y_jet(s);
                        for i in 0..n {
                            let term = &(&ys * &self.gamma_jet(h, s, i)) * &self.lift0(&up[i]);
                            acc.add_assign_scaled(-1.0, &term);
                        }
                    }
                    comps[n + h] = acc;
                }
            }
        }
        BundleVectorField { comps }
    }

    /// `ᵛω = (ω_i, 0)`, `ᶜω = (∂ω_i, ω_i)`, `ᴴω = (−yˢΓᵏ_si ω_k, ω_i)`.
    pub fn lift_oneform_jets(&self, w: &[Jet2], kind: LiftKind) -> BundleCovectorField {
        let n = self.n();
        let m = self.m();
        let mut comps = vec![Jet1::zero(m); m];
        for i in 0..n {
            match kind {
                LiftKind::Vertical => comps[i] = self.lift0(&w[i]),
                LiftKind::Complete => {
                    comps[i] = self.lift_d(&w[i]);
                    comps[n + i] = self.lift0(&w[i]);
                }
                LiftKind::Horizontal => {
                    let mut acc = Jet1::zero(m);
                    for s in 0..n {
                        let ys = self.y_jet(s);
                        for k in 0..n {
                            let term = &(&ys * &self.gamma_jet(k, s, i)) * &self.lift0(&w[k]);
                            acc.add_assign_scaled(-1.0, &term);
                        }
                    }
                    comps[i] = acc;
                    comps[n + i] = self.lift0(&w[i]);
                }
            }
        }
        BundleCovectorField { comps }
    }

    /// `ιC = (0, yⁱ C_iᵏ)`.
    pub fn iota_jets(&self, c: &[Jet2]) -> BundleVectorField {
        let n = self.n();
        let m = self.m();
        let mut comps = vec![Jet1::zero(m); m];
        for k in 0..n {
            let mut acc = Jet1::zero(m);
            for i in 0..n {
                acc.add_assign_product(&self.y_jet(i), &self.lift0(&c[i * n + k]));
            }
            comps[n + k] = acc;
        }
        BundleVectorField { comps }
    }

    /// `X̃_C = ˢg_CA X̃ᴬ`, with partials by the product rule.
    pub fn associated_covector(&self, v: &BundleVectorField) -> BundleCovectorField {
        let m = self.m();
        let g = self.metric_jets();
        let comps = (0..m)
            .map(|c| {
                let mut acc = Jet1::zero(m);
                for a in 0..m {
                    acc.add_assign_product(&g[c * m + a], &v.comps[a]);
                }
                acc
            })
            .collect();
        BundleCovectorField { comps }
    }

    pub fn lift_vector(
        &self,
        model: &ManifoldModel,
        name: &str,
        kind: LiftKind,
    ) -> Result<BundleVectorField, GeometryError> {
        let up = self.geo.vector_jets(model.vector_field(name)?)?;
        Ok(self.lift_vector_jets(&up, kind))
    }

    pub fn lift_oneform(
        &self,
        model: &ManifoldModel,
        name: &str,
        kind: LiftKind,
    ) -> Result<BundleCovectorField, GeometryError> {
        let w = self.geo.vector_jets(model.one_form(name)?)?;
        Ok(self.lift_oneform_jets(&w, kind))
    }

    pub fn iota(&self, model: &ManifoldModel, name: &str) -> Result<BundleVectorField, GeometryError> {
        let c = self.geo.vector_jets(model.tensor11(name)?)?;
        Ok(self.iota_jets(&c))
    }
}

/// `∇_B ω̃_A = ∂_B ω̃_A − Γᴱ_BA ω̃_E`, slots `[B][A]`.
pub fn bundle_nabla_covector(w: &BundleCovectorField, conn: &BundleConnection) -> MultiIndexArray {
    let m = 2 * conn.n;
    let mut out = MultiIndexArray::zeros(vec![m, m], vec![Lower, Lower]);
    for b in 0..m {
        for a in 0..m {
            let mut v = w.comps[a].grad[b];
            for e in 0..m {
                v -= conn.coeff(e, b, a) * w.comps[e].value;
            }
            out.set(&[b, a], v);
        }
    }
    out
}

/// `∇_B X̃ᴬ = ∂_B X̃ᴬ + Γᴬ_BE X̃ᴱ`, slots `[B][A]`.
pub fn bundle_nabla_vector(v: &BundleVectorField, conn: &BundleConnection) -> MultiIndexArray {
    let m = 2 * conn.n;
    let mut out = MultiIndexArray::zeros(vec![m, m], vec![Lower, Upper]);
    for b in 0..m {
        for a in 0..m {
            let mut val = v.comps[a].grad[b];
            for e in 0..m {
                val += conn.coeff(a, b, e) * v.comps[e].value;
            }
            out.set(&[b, a], val);
        }
    }
    out
}

/// `∂_C G_BA − Γᴱ_CB G_EA − Γᴱ_CA G_BE`, slots `[C][B][A]`.
pub fn metric_compatibility(metric: &[Jet1], conn: &BundleConnection) -> MultiIndexArray {
    let m = 2 * conn.n;
    let g = |b: usize, a: usize| &metric[b * m + a];
    let mut out = MultiIndexArray::zeros(vec![m; 3], vec![Lower; 3]);
    for c in 0..m {
        for b in 0..m {
            for a in 0..m {
                let mut v = g(b, a).grad[c];
                for e in 0..m {
                    v -= conn.coeff(e, c, b) * g(e, a).value + conn.coeff(e, c, a) * g(b, e).value;
                }
                out.set(&[c, b, a], v);
            }
        }
    }
    out
}

/// `£_X̃ G_BA = X̃ᶜ ∂_C G_BA + G_CA ∂_B X̃ᶜ + G_BC ∂_A X̃ᶜ`, slots `[B][A]`.
pub fn lie_derivative(metric: &[Jet1], v: &BundleVectorField) -> MultiIndexArray {
    let m = v.comps.len();
    let g = |b: usize, a: usize| &metric[b * m + a];
    let mut out = MultiIndexArray::zeros(vec![m, m], vec![Lower, Lower]);
    for b in 0..m {
        for a in 0..m {
            let mut val = 0.0;
            for c in 0..m {
                let x = &v.comps[c];
                val += x.value * g(b, a).grad[c] + g(c, a).value * x.grad[b] + g(b, c).value * x.grad[a];
            }
            out.set(&[b, a], val);
        }
    }
    out
}

pub fn synectic_metric(model: &ManifoldModel, p: &TangentPoint) -> Result<MultiIndexArray, GeometryError> {
    Ok(BundleFrame::new(model, p)?.metric())
}

pub fn synectic_metric_inverse(
    model: &ManifoldModel,
    p: &TangentPoint,
) -> Result<MultiIndexArray, GeometryError> {
    Ok(BundleFrame::new(model, p)?.metric_inverse())
}

pub fn levi_civita_synectic(
    model: &ManifoldModel,
    p: &TangentPoint,
) -> Result<BundleConnection, GeometryError> {
    Ok(BundleFrame::new(model, p)?.levi_civita())
}

pub fn metric_connection_synectic(
    model: &ManifoldModel,
    p: &TangentPoint,
) -> Result<BundleConnection, GeometryError> {
    Ok(BundleFrame::new(model, p)?.metric_connection())
}

pub fn lift_vector(
    model: &ManifoldModel,
    name: &str,
    kind: LiftKind,
    p: &TangentPoint,
) -> Result<BundleVectorField, GeometryError> {
    BundleFrame::new(model, p)?.lift_vector(model, name, kind)
}

pub fn lift_oneform(
    model: &ManifoldModel,
    name: &str,
    kind: LiftKind,
    p: &TangentPoint,
) -> Result<BundleCovectorField, GeometryError> {
    BundleFrame::new(model, p)?.lift_oneform(model, name, kind)
}

pub fn associated_covector(
    v: &BundleVectorField,
    model: &ManifoldModel,
    p: &TangentPoint,
) -> Result<BundleCovectorField, GeometryError> {
    Ok(BundleFrame::new(model, p)?.associated_covector(v))
}

pub fn iota_lift(model: &ManifoldModel, name: &str, p: &TangentPoint) -> Result<BundleVectorField, GeometryError> {
    BundleFrame::new(model, p)?.iota(model, name)
}

/// Constant (1,1) tensor, handy for building `ιC` inputs directly.
pub fn constant_tensor11(values: &[f64]) -> Vec<ScalarFn> {
    values.iter().map(|&v| ScalarFn::Const(v)).collect()
}

#[cfg(test)]
mod tests;
