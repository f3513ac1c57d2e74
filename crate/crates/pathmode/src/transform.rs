//! Exponential-weight reduction of the first-derivative term.
//!
//! With `V(t) = ½∫₀ᵗ f(s) ds`, the problem `y'' + f y' + g y + h = 0`
//! reduces to `ŷ'' + ĝ ŷ + ĥ = 0` where `ĝ = -V̈ + V̇² - f V̇ + g` and
//! `ĥ = e^V h`; the original solution is `y = e^{-V} ŷ`. For systems the
//! reduction requires `e^{-V}` to commute with `f` and `g`, which is checked
//! on the grid and enforced as a hard error.

use crate::expr::{build, EvalError, Expr};
use crate::interp::HermiteTable;
use crate::pathspace::SampledPath;
use crate::problem::{CoeffMatrix, CoeffVector, Grid, Problem};
use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// Default tolerance for the commutativity check on systems.
pub const COMMUTE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("coefficient evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error(
        "e^(-V) does not commute with f and g (max commutator {max_commutator:.3e} > {tol:.1e}); \
         the weighting transform does not apply to this system"
    )]
    NotCommuting { max_commutator: f64, tol: f64 },
    #[error(
        "internal consistency failure: raw and reduced forms of the transformed \
         coefficient disagree by {0:.3e}"
    )]
    ReductionMismatch(f64),
    #[error("paths live on different grids: {0} vs {1} steps")]
    GridMismatch(usize, usize),
}

/// Matrix exponential by scaling and squaring with a degree-6 Taylor core.
///
/// The argument is scaled by `2^-s` until its 1-norm is below 1/64, where the
/// degree-6 Taylor polynomial is accurate to machine precision, then squared
/// back up.
pub fn matrix_exp(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "matrix_exp requires a square matrix");
    // 1-norm: max column sum of absolute values.
    let norm = (0..n)
        .map(|j| (0..n).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let theta = 1.0 / 64.0;
    let s = if norm > theta {
        (norm / theta).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m / 2f64.powi(s as i32);
    let eye = DMatrix::<f64>::identity(n, n);
    // Horner form of I + X + X²/2 + ... + X⁶/720.
    let mut acc = &eye + &scaled / 6.0;
    acc = &eye + (&scaled * acc) / 5.0;
    acc = &eye + (&scaled * acc) / 4.0;
    acc = &eye + (&scaled * acc) / 3.0;
    acc = &eye + (&scaled * acc) / 2.0;
    acc = &eye + &scaled * acc;
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

/// The cumulative weight `V(t) = ½∫₀ᵗ f(s) ds` sampled on a grid.
///
/// Node values come from composite Simpson (one midpoint per interval, exact
/// for cubic `f` between nodes); node derivatives are `f(t_i)/2` exactly, so
/// Hermite interpolation keeps fourth-order accuracy off the nodes.
pub type SampledWeight = HermiteTable<DMatrix<f64>>;

/// Integrate the weight `V` for a matrix of coefficient functions.
pub fn weight_v(f: &CoeffMatrix, grid: &Grid) -> Result<SampledWeight, TransformError> {
    let n = f.dim();
    let m = grid.steps();
    let dt = grid.dt();
    let mut values = Vec::with_capacity(m + 1);
    let mut derivs = Vec::with_capacity(m + 1);
    values.push(DMatrix::zeros(n, n));
    derivs.push(f.eval(0.0)? / 2.0);
    for i in 0..m {
        let t0 = grid.node(i);
        let t1 = grid.node(i + 1);
        let fmid = f.eval(0.5 * (t0 + t1))?;
        let f0 = derivs[i].clone() * 2.0;
        let f1 = f.eval(t1)?;
        let increment = (f0 + fmid * 4.0 + &f1) * (dt / 6.0) / 2.0;
        values.push(&values[i] + increment);
        derivs.push(f1 / 2.0);
    }
    Ok(HermiteTable::new(*grid, values, derivs))
}

/// Coefficients of the reduced problem `ŷ'' + ĝ ŷ + ĥ = 0`.
#[derive(Debug, Clone)]
pub struct WeightedCoefficients {
    n: usize,
    grid: Grid,
    v: SampledWeight,
    f: CoeffMatrix,
    g: CoeffMatrix,
    h: CoeffVector,
    g_hat_expr: Option<Expr>,
    commutes: bool,
    weightless: bool,
}

impl WeightedCoefficients {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn commutes(&self) -> bool {
        self.commutes
    }

    /// True when `f ≡ 0`, i.e. the transform is the identity.
    pub fn is_weightless(&self) -> bool {
        self.weightless
    }

    pub fn weight(&self) -> &SampledWeight {
        &self.v
    }

    /// `ĝ(t) = g - f'/2 - f²/4` (the reduced form; equal to the raw
    /// `-V̈ + V̇² - f V̇ + g` since `V̇ = f/2`, `V̈ = f'/2`).
    pub fn g_hat(&self, t: f64) -> Result<DMatrix<f64>, EvalError> {
        let f = self.f.eval(t)?;
        let fp = self.f.deriv(t)?;
        let g = self.g.eval(t)?;
        Ok(g - fp / 2.0 - (&f * &f) / 4.0)
    }

    /// The transformed coefficient assembled literally from `V̇` and `V̈`,
    /// kept as a separate arithmetic route to guard the reduction.
    pub fn g_hat_raw(&self, t: f64) -> Result<DMatrix<f64>, EvalError> {
        let f = self.f.eval(t)?;
        let v_dot = &f / 2.0;
        let v_ddot = self.f.deriv(t)? / 2.0;
        let g = self.g.eval(t)?;
        Ok(-v_ddot + &v_dot * &v_dot - f * v_dot + g)
    }

    /// `ĥ(t) = e^{V(t)} h(t)`.
    pub fn h_hat(&self, t: f64) -> Result<DVector<f64>, EvalError> {
        let h = self.h.eval(t)?;
        if self.weightless {
            return Ok(h);
        }
        Ok(matrix_exp(&self.v.at(t)) * h)
    }

    /// Symbolic `ĝ` when every scalar coefficient is an expression; used to
    /// detect the constant-coefficient fast path.
    pub fn g_hat_expr(&self) -> Option<&Expr> {
        self.g_hat_expr.as_ref()
    }

    /// Terminal value for the reduced problem: `â = e^{V(T)} a`, so that
    /// unweighting restores `y(T) = a`.
    pub fn terminal_hat(&self, a: &DVector<f64>) -> DVector<f64> {
        if self.weightless {
            return a.clone();
        }
        matrix_exp(self.v.value(self.grid.steps())) * a
    }

    pub fn exp_neg_v(&self, t: f64) -> DMatrix<f64> {
        matrix_exp(&(-self.v.at(t)))
    }
}

/// Maximum commutator norm `max(‖e^{-V}f - fe^{-V}‖, ‖e^{-V}g - ge^{-V}‖)`
/// over grid nodes; the norm is the largest absolute entry.
pub fn max_commutator(p: &Problem, grid: &Grid) -> Result<f64, EvalError> {
    let v = weight_v(p.f(), grid).map_err(|e| match e {
        TransformError::Eval(inner) => inner,
        _ => unreachable!("weight integration only fails on evaluation"),
    })?;
    let mut worst = 0.0f64;
    for (i, t) in grid.nodes().enumerate() {
        let e = matrix_exp(&(-v.value(i)));
        let f = p.f().eval(t)?;
        let g = p.g().eval(t)?;
        let cf = &e * &f - &f * &e;
        let cg = &e * &g - &g * &e;
        worst = worst.max(cf.amax()).max(cg.amax());
    }
    Ok(worst)
}

/// True iff `e^{-V(t)}` commutes with `f(t)` and `g(t)` on the grid to
/// within `tol`. Scalar problems pass vacuously.
pub fn commutativity_check(p: &Problem, grid: &Grid, tol: f64) -> Result<bool, EvalError> {
    if p.is_scalar() {
        return Ok(true);
    }
    Ok(max_commutator(p, grid)? <= tol)
}

/// Build the reduced coefficients for a problem on a grid.
///
/// For systems the commutativity hypothesis is checked and failure is a hard
/// error. For scalar problems the raw and reduced forms of `ĝ` are compared
/// at every node as a guard against sign slips in the formula.
pub fn transform_coeffs(p: &Problem, grid: &Grid) -> Result<WeightedCoefficients, TransformError> {
    if !p.is_scalar() {
        let worst = max_commutator(p, grid)?;
        if worst > COMMUTE_TOL {
            return Err(TransformError::NotCommuting {
                max_commutator: worst,
                tol: COMMUTE_TOL,
            });
        }
    }
    let v = weight_v(p.f(), grid)?;
    let g_hat_expr = if p.is_scalar() {
        match (p.f().entry(0, 0).as_expr(), p.g().entry(0, 0).as_expr()) {
            (Some(f), Some(g)) => {
                let fp = f.differentiate();
                let f2 = build::mul(f.clone(), f.clone());
                Some(build::sub(
                    build::sub(g.clone(), build::div(fp, Expr::constant(2.0))),
                    build::div(f2, Expr::constant(4.0)),
                ))
            }
            _ => None,
        }
    } else {
        None
    };
    let wc = WeightedCoefficients {
        n: p.dim(),
        grid: *grid,
        v,
        f: p.f().clone(),
        g: p.g().clone(),
        h: p.h().clone(),
        g_hat_expr,
        commutes: true,
        weightless: p.f().is_zero(),
    };
    if p.is_scalar() {
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for t in grid.nodes() {
            let raw = wc.g_hat_raw(t)?[(0, 0)];
            let reduced = wc.g_hat(t)?[(0, 0)];
            worst = worst.max((raw - reduced).abs());
            scale = scale.max(raw.abs());
        }
        if worst > 1e-10 * scale {
            return Err(TransformError::ReductionMismatch(worst));
        }
    }
    Ok(wc)
}

/// Recover the original solution: `y(t_i) = e^{-V(t_i)} ŷ(t_i)` per node.
pub fn unweight(path: &SampledPath, v: &SampledWeight) -> Result<SampledPath, TransformError> {
    let grid = path.grid();
    if grid.steps() != v.grid().steps() || grid.t_end() != v.grid().t_end() {
        return Err(TransformError::GridMismatch(
            grid.steps(),
            v.grid().steps(),
        ));
    }
    let values = (0..grid.len())
        .map(|i| matrix_exp(&(-v.value(i))) * path.at(i))
        .collect();
    Ok(SampledPath::new(*grid, values))
}
