//! Classical objects on the base manifold: Christoffel symbols and their
//! partials, curvature, the `∇a` and `H` tensors, covariant derivatives of
//! catalog fields, and the Killing deviation.
//!
//! Index layout of the flat arrays in [`LocalGeometry`] (all row-major):
//!
//! | array     | slots             | meaning                       |
//! |-----------|-------------------|-------------------------------|
//! | `g`       | `[j][i]`          | `g_ji`                        |
//! | `dg`      | `[s][j][i]`       | `∂_s g_ji`                    |
//! | `ddg`     | `[t][s][j][i]`    | `∂_t ∂_s g_ji`                |
//! | `gamma`   | `[k][j][i]`       | `Γᵏ_ji`                       |
//! | `dgamma`  | `[t][k][j][i]`    | `∂_t Γᵏ_ji`                   |
//! | `nabla_a` | `[s][j][i]`       | `∇_s a_ji`                    |
//! | `h`       | `[k][j][i]`       | `Hᵏ_ji`                       |
//! | `riemann` | `[k][j][i][h]`    | `R_kjiʰ`                      |

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::jet::{jet2_eval, EvalError, Jet2, ScalarFn};
use crate::tensor::{MultiIndexArray, Variance};

use Variance::{Lower, Upper};

/// Below this `|det g|` a point is treated as singular.
pub const SINGULAR_DET: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("singular metric at x = {at:?} (det = {det:e})")]
    SingularMetric { det: f64, at: Vec<f64> },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("unknown {kind} `{name}`")]
    UnknownField { kind: &'static str, name: String },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("point has {got} coordinates, model dimension is {dim}")]
    PointDimension { got: usize, dim: usize },
    #[error("the {0} lift is not supported by this operation")]
    UnsupportedLift(&'static str),
}

/// Closed-form Christoffel symbols `[k][j][i]` used as an oracle in tests.
pub type ChristoffelOracle = fn(&[f64]) -> Vec<f64>;

/// The geometric input: metric `g`, symmetric tensor `a`, and named fields.
#[derive(Debug, Clone)]
pub struct ManifoldModel {
    pub name: String,
    pub dim: usize,
    /// Sampling box per coordinate.
    pub chart: Vec<(f64, f64)>,
    metric: Vec<ScalarFn>,
    a: Vec<ScalarFn>,
    pub vector_fields: BTreeMap<String, Vec<ScalarFn>>,
    pub one_forms: BTreeMap<String, Vec<ScalarFn>>,
    /// `C[i*n + k] = C_iᵏ`.
    pub tensors11: BTreeMap<String, Vec<ScalarFn>>,
    pub christoffel_oracle: Option<ChristoffelOracle>,
}

impl ManifoldModel {
    /// `metric` is row-major `n × n`; only the upper triangle is read and
    /// mirrored, so the stored metric is symmetric by construction.
    pub fn new(
        name: impl Into<String>,
        chart: Vec<(f64, f64)>,
        metric: Vec<ScalarFn>,
    ) -> Result<Self, GeometryError> {
        let dim = chart.len();
        if dim == 0 {
            return Err(GeometryError::InvalidModel("dimension must be positive".into()));
        }
        let metric = symmetrize(dim, metric, "g")?;
        Ok(Self {
            name: name.into(),
            dim,
            chart,
            metric,
            a: vec![ScalarFn::zero(); dim * dim],
            vector_fields: BTreeMap::new(),
            one_forms: BTreeMap::new(),
            tensors11: BTreeMap::new(),
            christoffel_oracle: None,
        })
    }

    pub fn with_a(mut self, a: Vec<ScalarFn>) -> Result<Self, GeometryError> {
        self.a = symmetrize(self.dim, a, "a")?;
        Ok(self)
    }

    pub fn with_vector_field(
        mut self,
        name: &str,
        comps: Vec<ScalarFn>,
    ) -> Result<Self, GeometryError> {
        self.check_len(name, comps.len(), self.dim)?;
        self.vector_fields.insert(name.to_string(), comps);
        Ok(self)
    }

    pub fn with_one_form(mut self, name: &str, comps: Vec<ScalarFn>) -> Result<Self, GeometryError> {
        self.check_len(name, comps.len(), self.dim)?;
        self.one_forms.insert(name.to_string(), comps);
        Ok(self)
    }

    pub fn with_tensor11(mut self, name: &str, comps: Vec<ScalarFn>) -> Result<Self, GeometryError> {
        self.check_len(name, comps.len(), self.dim * self.dim)?;
        self.tensors11.insert(name.to_string(), comps);
        Ok(self)
    }

    pub fn with_christoffel_oracle(mut self, oracle: ChristoffelOracle) -> Self {
        self.christoffel_oracle = Some(oracle);
        self
    }

    fn check_len(&self, name: &str, got: usize, want: usize) -> Result<(), GeometryError> {
        if got != want {
            return Err(GeometryError::InvalidModel(format!(
                "`{name}` has {got} components, expected {want}"
            )));
        }
        Ok(())
    }

    pub fn metric_fn(&self, j: usize, i: usize) -> &ScalarFn {
        &self.metric[j * self.dim + i]
    }

    pub fn a_fn(&self, j: usize, i: usize) -> &ScalarFn {
        &self.a[j * self.dim + i]
    }

    pub fn a_is_zero(&self) -> bool {
        self.a.iter().all(ScalarFn::is_zero)
    }

    pub fn vector_field(&self, name: &str) -> Result<&[ScalarFn], GeometryError> {
        self.vector_fields
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| unknown("vector field", name))
    }

    pub fn one_form(&self, name: &str) -> Result<&[ScalarFn], GeometryError> {
        self.one_forms
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| unknown("1-form", name))
    }

    pub fn tensor11(&self, name: &str) -> Result<&[ScalarFn], GeometryError> {
        self.tensors11
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| unknown("(1,1) tensor", name))
    }

    /// Every component function in the model, labelled. Used by the
    /// finite-difference checks.
    pub fn component_functions(&self) -> Vec<(String, &ScalarFn)> {
        let n = self.dim;
        let mut out = Vec::new();
        for j in 0..n {
            for i in j..n {
                out.push((format!("g{}{}", j + 1, i + 1), self.metric_fn(j, i)));
                out.push((format!("a{}{}", j + 1, i + 1), self.a_fn(j, i)));
            }
        }
        let groups = [
            ("field", &self.vector_fields),
            ("oneform", &self.one_forms),
            ("tensor11", &self.tensors11),
        ];
        for (kind, map) in groups {
            for (name, comps) in map {
                for (c, f) in comps.iter().enumerate() {
                    out.push((format!("{kind} {name}[{c}]"), f));
                }
            }
        }
        out
    }
}

fn unknown(kind: &'static str, name: &str) -> GeometryError {
    GeometryError::UnknownField {
        kind,
        name: name.to_string(),
    }
}

fn symmetrize(n: usize, comps: Vec<ScalarFn>, what: &str) -> Result<Vec<ScalarFn>, GeometryError> {
    if comps.len() != n * n {
        return Err(GeometryError::InvalidModel(format!(
            "`{what}` has {} components, expected {}",
            comps.len(),
            n * n
        )));
    }
    let mut out = comps;
    for j in 0..n {
        for i in 0..j {
            out[j * n + i] = out[i * n + j].clone();
        }
    }
    Ok(out)
}

fn sym_jets(n: usize, x: &[f64], fns: &[ScalarFn]) -> Result<Vec<Jet2>, GeometryError> {
    let mut out = vec![Jet2::constant(0.0, n); n * n];
    for j in 0..n {
        for i in j..n {
            let jet = jet2_eval(&fns[j * n + i], x)?;
            out[i * n + j] = jet.clone();
            out[j * n + i] = jet;
        }
    }
    Ok(out)
}

/// Everything the bundle layer needs about the base at one point.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub n: usize,
    pub x: Vec<f64>,
    pub det: f64,
    pub g_jets: Vec<Jet2>,
    pub a_jets: Vec<Jet2>,
    pub g: Vec<f64>,
    pub dg: Vec<f64>,
    pub ddg: Vec<f64>,
    pub ginv: Vec<f64>,
    /// `∂_t gᵏˡ`, slots `[t][k][l]`.
    pub dginv: Vec<f64>,
    pub a: Vec<f64>,
    pub da: Vec<f64>,
    pub gamma: Vec<f64>,
    pub dgamma: Vec<f64>,
    pub nabla_a: Vec<f64>,
    pub h: Vec<f64>,
    pub riemann: Vec<f64>,
}

impl LocalGeometry {
    pub fn at(model: &ManifoldModel, x: &[f64]) -> Result<Self, GeometryError> {
        let n = model.dim;
        if x.len() != n {
            return Err(GeometryError::PointDimension { got: x.len(), dim: n });
        }
        let g_jets = sym_jets(n, x, &model.metric)?;
        let a_jets = sym_jets(n, x, &model.a)?;

        let g: Vec<f64> = g_jets.iter().map(|j| j.value).collect();
        let a: Vec<f64> = a_jets.iter().map(|j| j.value).collect();
        let (n2, n3) = (n * n, n * n * n);
        let mut dg = vec![0.0; n3];
        let mut da = vec![0.0; n3];
        let mut ddg = vec![0.0; n3 * n];
        for ji in 0..n2 {
            for s in 0..n {
                dg[s * n2 + ji] = g_jets[ji].grad[s];
                da[s * n2 + ji] = a_jets[ji].grad[s];
                for t in 0..n {
                    ddg[(t * n + s) * n2 + ji] = g_jets[ji].hess_at(t, s);
                }
            }
        }

        let gm = DMatrix::from_row_slice(n, n, &g);
        let det = gm.determinant();
        if !det.is_finite() || det.abs() < SINGULAR_DET {
            return Err(GeometryError::SingularMetric { det, at: x.to_vec() });
        }
        let inv = gm.try_inverse().ok_or_else(|| GeometryError::SingularMetric {
            det,
            at: x.to_vec(),
        })?;
        let mut ginv = vec![0.0; n2];
        for k in 0..n {
            for l in 0..n {
                // average the two triangles so the inverse is exactly symmetric
                ginv[k * n + l] = 0.5 * (inv[(k, l)] + inv[(l, k)]);
            }
        }

        let mut dginv = vec![0.0; n3];
        for t in 0..n {
            for k in 0..n {
                for l in k..n {
                    let mut acc = 0.0;
                    for p in 0..n {
                        for q in 0..n {
                            acc -= ginv[k * n + p] * dg[t * n2 + p * n + q] * ginv[q * n + l];
                        }
                    }
                    dginv[t * n2 + k * n + l] = acc;
                    dginv[t * n2 + l * n + k] = acc;
                }
            }
        }

        // Christoffel symbols of the first kind, Γ_{s,ji}, and their partials.
        let mut gamma1 = vec![0.0; n3];
        let mut dgamma1 = vec![0.0; n3 * n];
        for s in 0..n {
            for j in 0..n {
                for i in j..n {
                    let v = 0.5 * (dg[(j * n + s) * n + i] + dg[(i * n + j) * n + s] - dg[(s * n + j) * n + i]);
                    gamma1[(s * n + j) * n + i] = v;
                    gamma1[(s * n + i) * n + j] = v;
                    for t in 0..n {
                        let d = 0.5
                            * (ddg[t * n3 + (j * n + s) * n + i] + ddg[t * n3 + (i * n + j) * n + s]
                                - ddg[t * n3 + (s * n + j) * n + i]);
                        dgamma1[t * n3 + (s * n + j) * n + i] = d;
                        dgamma1[t * n3 + (s * n + i) * n + j] = d;
                    }
                }
            }
        }

        let mut gamma = vec![0.0; n3];
        let mut dgamma = vec![0.0; n3 * n];
        for k in 0..n {
            for j in 0..n {
                for i in j..n {
                    let mut v = 0.0;
                    for s in 0..n {
                        v += ginv[k * n + s] * gamma1[(s * n + j) * n + i];
                    }
                    gamma[(k * n + j) * n + i] = v;
                    gamma[(k * n + i) * n + j] = v;
                    for t in 0..n {
                        let mut d = 0.0;
                        for s in 0..n {
                            d += dginv[t * n2 + k * n + s] * gamma1[(s * n + j) * n + i]
                                + ginv[k * n + s] * dgamma1[t * n3 + (s * n + j) * n + i];
                        }
                        dgamma[t * n3 + (k * n + j) * n + i] = d;
                        dgamma[t * n3 + (k * n + i) * n + j] = d;
                    }
                }
            }
        }

        let gam = |k: usize, j: usize, i: usize| gamma[(k * n + j) * n + i];

        // ∇_s a_ji = ∂_s a_ji − Γˡ_sj a_li − Γˡ_si a_jl
        let mut nabla_a = vec![0.0; n3];
        for s in 0..n {
            for j in 0..n {
                for i in j..n {
                    let mut v = da[s * n2 + j * n + i];
                    for l in 0..n {
                        v -= gam(l, s, j) * a[l * n + i] + gam(l, s, i) * a[j * n + l];
                    }
                    nabla_a[(s * n + j) * n + i] = v;
                    nabla_a[(s * n + i) * n + j] = v;
                }
            }
        }

        // Hᵏ_ji = ½ gᵏˢ (∇_j a_si + ∇_i a_js − ∇_s a_ji)
        let mut h = vec![0.0; n3];
        for k in 0..n {
            for j in 0..n {
                for i in j..n {
                    let mut v = 0.0;
                    for s in 0..n {
                        v += ginv[k * n + s]
                            * (nabla_a[(j * n + s) * n + i] + nabla_a[(i * n + j) * n + s]
                                - nabla_a[(s * n + j) * n + i]);
                    }
                    h[(k * n + j) * n + i] = 0.5 * v;
                    h[(k * n + i) * n + j] = 0.5 * v;
                }
            }
        }

        // R_kjiʰ = ∂_kΓʰ_ji − ∂_jΓʰ_ki + Γʰ_ks Γˢ_ji − Γʰ_js Γˢ_ki
        let dgam = |t: usize, k: usize, j: usize, i: usize| dgamma[t * n3 + (k * n + j) * n + i];
        let mut riemann = vec![0.0; n3 * n];
        for k in 0..n {
            for j in (k + 1)..n {
                for i in 0..n {
                    for hh in 0..n {
                        let mut v = dgam(k, hh, j, i) - dgam(j, hh, k, i);
                        for s in 0..n {
                            v += gam(hh, k, s) * gam(s, j, i) - gam(hh, j, s) * gam(s, k, i);
                        }
                        riemann[((k * n + j) * n + i) * n + hh] = v;
                        riemann[((j * n + k) * n + i) * n + hh] = -v;
                    }
                }
            }
        }

        Ok(Self {
            n,
            x: x.to_vec(),
            det,
            g_jets,
            a_jets,
            g,
            dg,
            ddg,
            ginv,
            dginv,
            a,
            da,
            gamma,
            dgamma,
            nabla_a,
            h,
            riemann,
        })
    }

    #[inline]
    pub fn g(&self, j: usize, i: usize) -> f64 {
        self.g[j * self.n + i]
    }

    #[inline]
    pub fn ginv(&self, j: usize, i: usize) -> f64 {
        self.ginv[j * self.n + i]
    }

    #[inline]
    pub fn a(&self, j: usize, i: usize) -> f64 {
        self.a[j * self.n + i]
    }

    /// `∂_s g_ji`
    #[inline]
    pub fn dg(&self, s: usize, j: usize, i: usize) -> f64 {
        self.dg[(s * self.n + j) * self.n + i]
    }

    /// `∂_t ∂_s g_ji`
    #[inline]
    pub fn ddg(&self, t: usize, s: usize, j: usize, i: usize) -> f64 {
        let n = self.n;
        self.ddg[((t * n + s) * n + j) * n + i]
    }

    /// `∂_s a_ji`
    #[inline]
    pub fn da(&self, s: usize, j: usize, i: usize) -> f64 {
        self.da[(s * self.n + j) * self.n + i]
    }

    /// `Γᵏ_ji`
    #[inline]
    pub fn gamma(&self, k: usize, j: usize, i: usize) -> f64 {
        self.gamma[(k * self.n + j) * self.n + i]
    }

    /// `∂_t Γᵏ_ji`
    #[inline]
    pub fn dgamma(&self, t: usize, k: usize, j: usize, i: usize) -> f64 {
        let n = self.n;
        self.dgamma[((t * n + k) * n + j) * n + i]
    }

    /// `∇_s a_ji`
    #[inline]
    pub fn nabla_a(&self, s: usize, j: usize, i: usize) -> f64 {
        self.nabla_a[(s * self.n + j) * self.n + i]
    }

    /// `Hᵏ_ji`
    #[inline]
    pub fn h(&self, k: usize, j: usize, i: usize) -> f64 {
        self.h[(k * self.n + j) * self.n + i]
    }

    /// `R_kjiʰ`
    #[inline]
    pub fn riemann(&self, k: usize, j: usize, i: usize, h: usize) -> f64 {
        let n = self.n;
        self.riemann[((k * n + j) * n + i) * n + h]
    }

    /// Ratio of extreme absolute eigenvalues of `g`.
    pub fn condition_number(&self) -> f64 {
        let eig = SymmetricEigen::new(DMatrix::from_row_slice(self.n, self.n, &self.g));
        let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
        for v in eig.eigenvalues.iter() {
            lo = lo.min(v.abs());
            hi = hi.max(v.abs());
        }
        hi / lo
    }

    /// `Ric_ji = R_hjiʰ` contracted with `gʲⁱ`.
    pub fn scalar_curvature(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for j in 0..n {
            for i in 0..n {
                let mut ric = 0.0;
                for h in 0..n {
                    ric += self.riemann(h, j, i, h);
                }
                s += self.ginv(j, i) * ric;
            }
        }
        s
    }

    /// Jets of `Xʰ` for a catalog vector field.
    pub fn vector_jets(&self, comps: &[ScalarFn]) -> Result<Vec<Jet2>, GeometryError> {
        comps
            .iter()
            .map(|f| jet2_eval(f, &self.x).map_err(GeometryError::from))
            .collect()
    }

    /// `X_i = g_ih Xʰ` as jets (products of jets, so second partials are exact).
    pub fn lower_jets(&self, up: &[Jet2]) -> Vec<Jet2> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = Jet2::constant(0.0, n);
                for h in 0..n {
                    acc = acc + &self.g_jets[i * n + h] * &up[h];
                }
                acc
            })
            .collect()
    }

    /// `∇_j Xʰ`, slots `[j][h]`.
    pub fn nabla_vector(&self, up: &[Jet2]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for j in 0..n {
            for h in 0..n {
                let mut v = up[h].grad[j];
                for k in 0..n {
                    v += self.gamma(h, j, k) * up[k].value;
                }
                out[j * n + h] = v;
            }
        }
        out
    }

    /// `∇_j ω_i`, slots `[j][i]`.
    pub fn nabla_covector(&self, down: &[Jet2]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                let mut v = down[i].grad[j];
                for k in 0..n {
                    v -= self.gamma(k, j, i) * down[k].value;
                }
                out[j * n + i] = v;
            }
        }
        out
    }

    /// `∂_s(∇_j Xʰ)`, slots `[s][j][h]`.
    pub fn nabla_vector_partials(&self, up: &[Jet2]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n * n];
        for s in 0..n {
            for j in 0..n {
                for h in 0..n {
                    let mut v = up[h].hess_at(s, j);
                    for k in 0..n {
                        v += self.dgamma(s, h, j, k) * up[k].value + self.gamma(h, j, k) * up[k].grad[s];
                    }
                    out[(s * n + j) * n + h] = v;
                }
            }
        }
        out
    }

    /// `∂_s(∇_j ω_i)`, slots `[s][j][i]`.
    pub fn nabla_covector_partials(&self, down: &[Jet2]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n * n];
        for s in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let mut v = down[i].hess_at(s, j);
                    for k in 0..n {
                        v -= self.dgamma(s, k, j, i) * down[k].value + self.gamma(k, j, i) * down[k].grad[s];
                    }
                    out[(s * n + j) * n + i] = v;
                }
            }
        }
        out
    }

    /// `∇_j C_iᵏ = ∂_j C_iᵏ − Γˡ_ji C_lᵏ + Γᵏ_jl C_iˡ`, slots `[j][i][k]`.
    pub fn nabla_tensor11(&self, c: &[Jet2]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n * n];
        for j in 0..n {
            for i in 0..n {
                for k in 0..n {
                    let mut v = c[i * n + k].grad[j];
                    for l in 0..n {
                        v += -self.gamma(l, j, i) * c[l * n + k].value
                            + self.gamma(k, j, l) * c[i * n + l].value;
                    }
                    out[(j * n + i) * n + k] = v;
                }
            }
        }
        out
    }

    /// `∇_s g_ji`, which vanishes for the Levi-Civita connection.
    pub fn nabla_metric(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n * n];
        for s in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let mut v = self.dg(s, j, i);
                    for l in 0..n {
                        v -= self.gamma(l, s, j) * self.g(l, i) + self.gamma(l, s, i) * self.g(j, l);
                    }
                    out[(s * n + j) * n + i] = v;
                }
            }
        }
        out
    }
}

fn array(dims: usize, n: usize, variance: Vec<Variance>, data: Vec<f64>) -> MultiIndexArray {
    debug_assert_eq!(variance.len(), dims);
    MultiIndexArray::new(vec![n; dims], variance, data).expect("consistent shape")
}

/// `Γᵏ_ji`, slots (k upper, j lower, i lower).
pub fn christoffel(model: &ManifoldModel, x: &[f64]) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(array(3, geo.n, vec![Upper, Lower, Lower], geo.gamma))
}

/// `∂_t Γᵏ_ji`, slots (t, k, j, i).
pub fn christoffel_partials(
    model: &ManifoldModel,
    x: &[f64],
) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(array(4, geo.n, vec![Lower, Upper, Lower, Lower], geo.dgamma))
}

/// `∇_s a_ji`, slots (s, j, i).
pub fn nabla_a(model: &ManifoldModel, x: &[f64]) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(array(3, geo.n, vec![Lower; 3], geo.nabla_a))
}

/// `Hᵏ_ji`, slots (k, j, i).
pub fn h_tensor(model: &ManifoldModel, x: &[f64]) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(array(3, geo.n, vec![Upper, Lower, Lower], geo.h))
}

/// `R_kjiʰ`, slots (k, j, i, h).
pub fn riemann(model: &ManifoldModel, x: &[f64]) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(array(4, geo.n, vec![Lower, Lower, Lower, Upper], geo.riemann))
}

/// Which catalog object a covariant derivative is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRef<'a> {
    /// `Xʰ` → `∇_j Xʰ`
    Vector(&'a str),
    /// `X_i = g_ih Xʰ` → `∇_j X_i`
    LoweredVector(&'a str),
    /// `ω_i` → `∇_j ω_i`
    OneForm(&'a str),
    /// `C_iᵏ` → `∇_j C_iᵏ`
    Tensor11(&'a str),
}

pub fn covariant_derivative(
    field: FieldRef<'_>,
    model: &ManifoldModel,
    x: &[f64],
) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    let n = geo.n;
    Ok(match field {
        FieldRef::Vector(name) => {
            let up = geo.vector_jets(model.vector_field(name)?)?;
            array(2, n, vec![Lower, Upper], geo.nabla_vector(&up))
        }
        FieldRef::LoweredVector(name) => {
            let up = geo.vector_jets(model.vector_field(name)?)?;
            array(2, n, vec![Lower, Lower], geo.nabla_covector(&geo.lower_jets(&up)))
        }
        FieldRef::OneForm(name) => {
            let w = geo.vector_jets(model.one_form(name)?)?;
            array(2, n, vec![Lower, Lower], geo.nabla_covector(&w))
        }
        FieldRef::Tensor11(name) => {
            let c = geo.vector_jets(model.tensor11(name)?)?;
            array(3, n, vec![Lower, Lower, Upper], geo.nabla_tensor11(&c))
        }
    })
}

/// `∇_j X_i + ∇_i X_j`, zero exactly when `X` is Killing.
pub fn killing_deviation(
    name: &str,
    model: &ManifoldModel,
    x: &[f64],
) -> Result<MultiIndexArray, GeometryError> {
    covariant_derivative(FieldRef::LoweredVector(name), model, x)?
        .sym_pair(0, 1, false)
        .map_err(|e| GeometryError::InvalidModel(e.to_string()))
}

/// Component Lie derivative `Xᵅ∂_α g_ji + g_αi ∂_j Xᵅ + g_jα ∂_i Xᵅ`.
pub fn lie_derivative_metric(
    name: &str,
    model: &ManifoldModel,
    x: &[f64],
) -> Result<MultiIndexArray, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    let up = geo.vector_jets(model.vector_field(name)?)?;
    let n = geo.n;
    let mut out = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            let mut v = 0.0;
            for al in 0..n {
                v += up[al].value * geo.dg(al, j, i)
                    + geo.g(al, i) * up[al].grad[j]
                    + geo.g(j, al) * up[al].grad[i];
            }
            out[j * n + i] = v;
        }
    }
    Ok(array(2, n, vec![Lower, Lower], out))
}

/// `X_j = g_ji Xⁱ`.
pub fn lower(model: &ManifoldModel, x: &[f64], v: &[f64]) -> Result<Vec<f64>, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(contract_matrix(geo.n, &geo.g, v))
}

/// `Xʲ = gʲⁱ X_i`.
pub fn raise(model: &ManifoldModel, x: &[f64], v: &[f64]) -> Result<Vec<f64>, GeometryError> {
    let geo = LocalGeometry::at(model, x)?;
    Ok(contract_matrix(geo.n, &geo.ginv, v))
}

fn contract_matrix(n: usize, m: &[f64], v: &[f64]) -> Vec<f64> {
    (0..n)
        .map(|j| (0..n).map(|i| m[j * n + i] * v[i]).sum())
        .collect()
}
