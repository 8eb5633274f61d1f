//! Forward-mode jets.
//!
//! [`Jet2`] carries value, gradient and Hessian of a scalar with respect to
//! `m` active coordinates; every arithmetic operation propagates all three
//! exactly (no truncation error). [`Jet1`] is the first-order counterpart
//! used for objects on the tangent bundle, where only `∂_B` is ever needed.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::dsl::Expr;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error in `{expr}` at x = {at:?}: {reason}")]
    Domain {
        expr: String,
        reason: String,
        at: Vec<f64>,
    },
    #[error("expression uses x{index} but only {dim} coordinates were supplied")]
    MissingCoordinate { index: usize, dim: usize },
}

/// Value, gradient and Hessian of a scalar at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: Vec<f64>,
    /// Row-major `m × m`.
    pub hess: Vec<f64>,
}

impl Jet2 {
    pub fn constant(value: f64, m: usize) -> Self {
        Self {
            value,
            grad: vec![0.0; m],
            hess: vec![0.0; m * m],
        }
    }

    /// The coordinate function `x_i` evaluated at `value`.
    pub fn variable(value: f64, i: usize, m: usize) -> Self {
        let mut out = Self::constant(value, m);
        out.grad[i] = 1.0;
        out
    }

    /// Seeds one variable jet per coordinate of `x`.
    pub fn seed(x: &[f64]) -> Vec<Self> {
        let m = x.len();
        x.iter()
            .enumerate()
            .map(|(i, &v)| Self::variable(v, i, m))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn hess_at(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.dim() + j]
    }

    /// Compose with a scalar function given its value and first two derivatives
    /// at `self.value`.
    pub fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let m = self.dim();
        let grad = self.grad.iter().map(|g| f1 * g).collect();
        let mut hess = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                hess[i * m + j] = f1 * self.hess[i * m + j] + f2 * self.grad[i] * self.grad[j];
            }
        }
        Self {
            value: f0,
            grad,
            hess,
        }
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(&self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(&self) -> Self {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn sqrt(&self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.value))
    }

    pub fn recip(&self) -> Self {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self * &rhs.recip()
    }

    /// Integer power by repeated squaring, so that `x^2` has exactly the
    /// derivatives of `x*x`.
    pub fn powi(&self, exp: i32) -> Self {
        if exp < 0 {
            return self.powi(-exp).recip();
        }
        let mut result = Self::constant(1.0, self.dim());
        let mut base = self.clone();
        let mut e = exp as u32;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { &result * &base };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Real power with constant exponent; the base must be positive.
    pub fn powf(&self, exp: f64) -> Self {
        let v = self.value;
        self.chain(
            v.powf(exp),
            exp * v.powf(exp - 1.0),
            exp * (exp - 1.0) * v.powf(exp - 2.0),
        )
    }

    /// Embed into a larger coordinate system; new coordinates are appended
    /// with zero derivatives.
    pub fn embed(&self, m_total: usize) -> Self {
        let m = self.dim();
        assert!(m_total >= m);
        let mut grad = self.grad.clone();
        grad.resize(m_total, 0.0);
        let mut hess = vec![0.0; m_total * m_total];
        for i in 0..m {
            hess[i * m_total..i * m_total + m].copy_from_slice(&self.hess[i * m..(i + 1) * m]);
        }
        Self {
            value: self.value,
            grad,
            hess,
        }
    }

    /// Drops the Hessian.
    pub fn first_order(&self) -> Jet1 {
        Jet1 {
            value: self.value,
            grad: self.grad.clone(),
        }
    }

    /// `∂_s f` as a first-order jet: value `grad[s]`, gradient row `s` of the Hessian.
    pub fn partial(&self, s: usize) -> Jet1 {
        let m = self.dim();
        Jet1 {
            value: self.grad[s],
            grad: self.hess[s * m..(s + 1) * m].to_vec(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|v| v.is_finite())
            && self.hess.iter().all(|v| v.is_finite())
    }
}

impl Add for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        Jet2 {
            value: self.value + rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a + b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        Jet2 {
            value: self.value - rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a - b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        let m = self.dim();
        let (u, v) = (self.value, rhs.value);
        let grad = (0..m).map(|i| self.grad[i] * v + u * rhs.grad[i]).collect();
        let mut hess = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let k = i * m + j;
                hess[k] = self.hess[k] * v
                    + u * rhs.hess[k]
                    + self.grad[i] * rhs.grad[j]
                    + rhs.grad[i] * self.grad[j];
            }
        }
        Jet2 {
            value: u * v,
            grad,
            hess,
        }
    }
}

impl Mul<f64> for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        Jet2 {
            value: self.value * rhs,
            grad: self.grad.iter().map(|g| g * rhs).collect(),
            hess: self.hess.iter().map(|h| h * rhs).collect(),
        }
    }
}

impl Neg for &Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self * -1.0
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $method:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    )*
    impl Mul<f64> for $ty {
        type Output = $ty;
        fn mul(self, rhs: f64) -> $ty {
            (&self) * rhs
        }
    }
    impl Neg for $ty {
        type Output = $ty;
        fn neg(self) -> $ty {
            -(&self)
        }
    }
    };
}

forward_owned!(Jet2, Add add, Sub sub, Mul mul);

/// Value and first partials of a scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    pub value: f64,
    pub grad: Vec<f64>,
}

impl Jet1 {
    pub fn constant(value: f64, m: usize) -> Self {
        Self {
            value,
            grad: vec![0.0; m],
        }
    }

    pub fn variable(value: f64, i: usize, m: usize) -> Self {
        let mut out = Self::constant(value, m);
        out.grad[i] = 1.0;
        out
    }

    pub fn zero(m: usize) -> Self {
        Self::constant(0.0, m)
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn embed(&self, m_total: usize) -> Self {
        let mut grad = self.grad.clone();
        grad.resize(m_total, 0.0);
        Self {
            value: self.value,
            grad,
        }
    }

    pub fn add_assign_scaled(&mut self, factor: f64, other: &Self) {
        self.value += factor * other.value;
        for (g, o) in self.grad.iter_mut().zip(&other.grad) {
            *g += factor * o;
        }
    }

    /// `self += a * b` with the product rule.
    pub fn add_assign_product(&mut self, a: &Self, b: &Self) {
        self.value += a.value * b.value;
        for ((g, ga), gb) in self.grad.iter_mut().zip(&a.grad).zip(&b.grad) {
            *g += ga * b.value + a.value * gb;
        }
    }
}

impl Add for &Jet1 {
    type Output = Jet1;
    fn add(self, rhs: &Jet1) -> Jet1 {
        Jet1 {
            value: self.value + rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: &Jet1) -> Jet1 {
        Jet1 {
            value: self.value - rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet1 {
    type Output = Jet1;
    // Product rule: the gradient mixes values and gradients of both factors.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Jet1) -> Jet1 {
        Jet1 {
            value: self.value * rhs.value,
            grad: self
                .grad
                .iter()
                .zip(&rhs.grad)
                .map(|(a, b)| a * rhs.value + self.value * b)
                .collect(),
        }
    }
}

impl Mul<f64> for &Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: f64) -> Jet1 {
        Jet1 {
            value: self.value * rhs,
            grad: self.grad.iter().map(|g| g * rhs).collect(),
        }
    }
}

impl Neg for &Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        self * -1.0
    }
}

forward_owned!(Jet1, Add add, Sub sub, Mul mul);

/// Built-in component function written directly against jets.
pub type NativeFn = Arc<dyn Fn(&[Jet2]) -> Jet2 + Send + Sync>;

/// A scalar component function of the base coordinates.
#[derive(Clone)]
pub enum ScalarFn {
    Const(f64),
    Expr(Expr),
    Native(NativeFn),
}

impl std::fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarFn::Const(c) => write!(f, "Const({c})"),
            ScalarFn::Expr(e) => write!(f, "Expr({e})"),
            ScalarFn::Native(_) => f.write_str("Native(..)"),
        }
    }
}

impl ScalarFn {
    pub fn zero() -> Self {
        ScalarFn::Const(0.0)
    }

    pub fn native(f: impl Fn(&[Jet2]) -> Jet2 + Send + Sync + 'static) -> Self {
        ScalarFn::Native(Arc::new(f))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ScalarFn::Const(c) if *c == 0.0)
    }

    /// Plain value, used by finite-difference oracles.
    pub fn value(&self, x: &[f64]) -> Result<f64, EvalError> {
        jet2_eval(self, x).map(|j| j.value)
    }
}

/// Evaluate `f` at `x` with exact first and second partials.
pub fn jet2_eval(f: &ScalarFn, x: &[f64]) -> Result<Jet2, EvalError> {
    match f {
        ScalarFn::Const(c) => Ok(Jet2::constant(*c, x.len())),
        ScalarFn::Expr(e) => e.eval_jet2(x),
        ScalarFn::Native(func) => {
            let out = func(&Jet2::seed(x));
            if out.is_finite() {
                Ok(out)
            } else {
                Err(EvalError::Domain {
                    expr: "<built-in>".into(),
                    reason: "non-finite result".into(),
                    at: x.to_vec(),
                })
            }
        }
    }
}
