//! Problem definitions: coefficient matrices, uniform grids, and the
//! line-oriented config format.
//!
//! A problem is the boundary value problem
//! `y'' + f(t) y' + g(t) y + h(t) = 0`, `y(0) = 0`, `y(T) = a`,
//! with `f`, `g` square matrices of coefficient functions and `h` a vector.

use crate::expr::{self, EvalError, Expr, ParseError};
use nalgebra::{DMatrix, DVector};
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// Uniform grid `t_i = T·i/m`, `i = 0..=m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    t_end: f64,
    steps: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("grid horizon must be positive, got {0}")]
    NonPositiveHorizon(f64),
}

impl Grid {
    pub fn new(t_end: f64, steps: usize) -> Result<Grid, GridError> {
        if steps < 2 {
            return Err(GridError::TooFewSteps(steps));
        }
        if !(t_end > 0.0) {
            return Err(GridError::NonPositiveHorizon(t_end));
        }
        Ok(Grid { t_end, steps })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Number of intervals `m`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Number of nodes, `m + 1`.
    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        self.t_end / self.steps as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i <= self.steps);
        self.t_end * i as f64 / self.steps as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(move |i| self.node(i))
    }

    /// Interval index containing `t`, clamped to `[0, m-1]`.
    pub fn interval_of(&self, t: f64) -> usize {
        let raw = (t / self.dt()).floor();
        if raw < 0.0 {
            0
        } else {
            (raw as usize).min(self.steps - 1)
        }
    }
}

/// Uniformly tabulated coefficient samples, evaluated by cubic Hermite
/// interpolation with central-difference node slopes. This is the escape
/// hatch for coefficients that exist only as data.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Tabulated {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Tabulated {
        assert!(values.len() >= 2, "a table needs at least two samples");
        assert!(dt > 0.0);
        let n = values.len();
        let mut slopes = vec![0.0; n];
        slopes[0] = (values[1] - values[0]) / dt;
        slopes[n - 1] = (values[n - 1] - values[n - 2]) / dt;
        for i in 1..n - 1 {
            slopes[i] = (values[i + 1] - values[i - 1]) / (2.0 * dt);
        }
        Tabulated {
            t0,
            dt,
            values,
            slopes,
        }
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let raw = ((t - self.t0) / self.dt).floor();
        let i = if raw < 0.0 {
            0
        } else {
            (raw as usize).min(self.values.len() - 2)
        };
        let s = (t - (self.t0 + i as f64 * self.dt)) / self.dt;
        (i, s)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (i, s) = self.locate(t);
        let (p0, p1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * self.dt, self.slopes[i + 1] * self.dt);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * p0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * p1
            + (s3 - s2) * m1
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        let (i, s) = self.locate(t);
        let (p0, p1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * self.dt, self.slopes[i + 1] * self.dt);
        let s2 = s * s;
        let d = (6.0 * s2 - 6.0 * s) * p0
            + (3.0 * s2 - 4.0 * s + 1.0) * m0
            + (-6.0 * s2 + 6.0 * s) * p1
            + (3.0 * s2 - 2.0 * s) * m1;
        d / self.dt
    }
}

/// A scalar coefficient function of `t`: a symbolic expression (with exact
/// derivative) or tabulated samples (finite-difference derivative).
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Expression { ast: Expr, derivative: Expr },
    Table(Tabulated),
}

impl Coefficient {
    pub fn from_expr(ast: Expr) -> Coefficient {
        let derivative = ast.differentiate();
        Coefficient::Expression { ast, derivative }
    }

    pub fn parse(text: &str) -> Result<Coefficient, ParseError> {
        Ok(Coefficient::from_expr(expr::parse_expression(text)?))
    }

    pub fn zero() -> Coefficient {
        Coefficient::from_expr(Expr::zero())
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            Coefficient::Expression { ast, .. } => ast.eval(t),
            Coefficient::Table(table) => Ok(table.eval(t)),
        }
    }

    pub fn deriv(&self, t: f64) -> Result<f64, EvalError> {
        match self {
            Coefficient::Expression { derivative, .. } => derivative.eval(t),
            Coefficient::Table(table) => Ok(table.eval_derivative(t)),
        }
    }

    pub fn as_expr(&self) -> Option<&Expr> {
        match self {
            Coefficient::Expression { ast, .. } => Some(ast),
            Coefficient::Table(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Expression { ast, .. } if ast.is_zero())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Expression { ast, .. } => write!(f, "{ast}"),
            Coefficient::Table(t) => write!(f, "<table of {} samples>", t.values.len()),
        }
    }
}

/// Square matrix of coefficient functions, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    n: usize,
    entries: Vec<Coefficient>,
}

impl CoeffMatrix {
    pub fn zeros(n: usize) -> CoeffMatrix {
        CoeffMatrix {
            n,
            entries: (0..n * n).map(|_| Coefficient::zero()).collect(),
        }
    }

    pub fn scalar(c: Coefficient) -> CoeffMatrix {
        CoeffMatrix { n: 1, entries: vec![c] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coefficient) {
        self.entries[i * self.n + j] = c;
    }

    pub fn entry(&self, i: usize, j: usize) -> &Coefficient {
        &self.entries[i * self.n + j]
    }

    pub fn eval(&self, t: f64) -> Result<DMatrix<f64>, EvalError> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.entry(i, j).eval(t)?;
            }
        }
        Ok(m)
    }

    pub fn deriv(&self, t: f64) -> Result<DMatrix<f64>, EvalError> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.entry(i, j).deriv(t)?;
            }
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coefficient::is_zero)
    }
}

/// Vector of coefficient functions.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    entries: Vec<Coefficient>,
}

impl CoeffVector {
    pub fn zeros(n: usize) -> CoeffVector {
        CoeffVector {
            entries: (0..n).map(|_| Coefficient::zero()).collect(),
        }
    }

    pub fn scalar(c: Coefficient) -> CoeffVector {
        CoeffVector { entries: vec![c] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, i: usize, c: Coefficient) {
        self.entries[i] = c;
    }

    pub fn entry(&self, i: usize) -> &Coefficient {
        &self.entries[i]
    }

    pub fn eval(&self, t: f64) -> Result<DVector<f64>, EvalError> {
        let mut v = DVector::zeros(self.entries.len());
        for (i, c) in self.entries.iter().enumerate() {
            v[i] = c.eval(t)?;
        }
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coefficient::is_zero)
    }
}

/// The boundary value problem `y'' + f y' + g y + h = 0`, `y(0)=0`, `y(T)=a`.
#[derive(Debug, Clone)]
pub struct Problem {
    n: usize,
    t_end: f64,
    terminal: DVector<f64>,
    f: CoeffMatrix,
    g: CoeffMatrix,
    h: CoeffVector,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {message}")]
    InvalidValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: cannot parse expression for `{key}`: {source}")]
    Expression {
        line: usize,
        key: String,
        source: ParseError,
    },
    #[error("line {line}: index out of range in `{key}` for dimension {n}")]
    IndexOutOfRange { line: usize, key: String, n: usize },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("dimension mismatch: n = {n} but `a` has {found} components")]
    TerminalDimension { n: usize, found: usize },
    #[error("horizon must be positive, got T = {0}")]
    NonPositiveHorizon(f64),
    #[error("dimension must be at least 1, got n = {0}")]
    ZeroDimension(usize),
    #[error("coefficient `{key}` does not evaluate on [0, {t_end}]: {source}")]
    NotEvaluable {
        key: String,
        t_end: f64,
        source: EvalError,
    },
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
}

impl Problem {
    pub fn new(
        t_end: f64,
        terminal: DVector<f64>,
        f: CoeffMatrix,
        g: CoeffMatrix,
        h: CoeffVector,
    ) -> Result<Problem, ConfigError> {
        let n = f.dim();
        if n == 0 {
            return Err(ConfigError::ZeroDimension(0));
        }
        if !(t_end > 0.0) {
            return Err(ConfigError::NonPositiveHorizon(t_end));
        }
        if terminal.len() != n {
            return Err(ConfigError::TerminalDimension {
                n,
                found: terminal.len(),
            });
        }
        assert_eq!(g.dim(), n);
        assert_eq!(h.dim(), n);
        let p = Problem {
            n,
            t_end,
            terminal,
            f,
            g,
            h,
        };
        p.check_evaluable()?;
        Ok(p)
    }

    /// Convenience constructor for scalar problems from expression text.
    pub fn scalar(
        f: &str,
        g: &str,
        h: &str,
        t_end: f64,
        a: f64,
    ) -> Result<Problem, ConfigError> {
        let parse = |key: &'static str, text: &str| {
            Coefficient::parse(text).map_err(|source| ConfigError::Expression {
                line: 0,
                key: key.into(),
                source,
            })
        };
        Problem::new(
            t_end,
            DVector::from_element(1, a),
            CoeffMatrix::scalar(parse("f", f)?),
            CoeffMatrix::scalar(parse("g", g)?),
            CoeffVector::scalar(parse("h", h)?),
        )
    }

    fn check_evaluable(&self) -> Result<(), ConfigError> {
        // Probe a modest set of points; runtime evaluation still propagates
        // domain errors, this just front-loads the obvious ones.
        let probes = 17;
        for k in 0..=probes {
            let t = self.t_end * k as f64 / probes as f64;
            for i in 0..self.n {
                for j in 0..self.n {
                    self.f.entry(i, j).eval(t).map_err(|source| {
                        ConfigError::NotEvaluable {
                            key: format!("f[{i}][{j}]"),
                            t_end: self.t_end,
                            source,
                        }
                    })?;
                    self.g.entry(i, j).eval(t).map_err(|source| {
                        ConfigError::NotEvaluable {
                            key: format!("g[{i}][{j}]"),
                            t_end: self.t_end,
                            source,
                        }
                    })?;
                }
                self.h.entry(i).eval(t).map_err(|source| ConfigError::NotEvaluable {
                    key: format!("h[{i}]"),
                    t_end: self.t_end,
                    source,
                })?;
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_scalar(&self) -> bool {
        self.n == 1
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn terminal(&self) -> &DVector<f64> {
        &self.terminal
    }

    pub fn f(&self) -> &CoeffMatrix {
        &self.f
    }

    pub fn g(&self) -> &CoeffMatrix {
        &self.g
    }

    pub fn h(&self) -> &CoeffVector {
        &self.h
    }

    pub fn grid(&self, steps: usize) -> Result<Grid, GridError> {
        Grid::new(self.t_end, steps)
    }
}

/// Parse `key` of the form `name`, `name[i]`, or `name[i][j]`.
fn split_key(key: &str) -> Option<(&str, Option<usize>, Option<usize>)> {
    match key.find('[') {
        None => Some((key, None, None)),
        Some(b) => {
            let name = &key[..b];
            let rest = &key[b..];
            let mut indices = Vec::new();
            let mut cur = rest;
            while !cur.is_empty() {
                if !cur.starts_with('[') {
                    return None;
                }
                let close = cur.find(']')?;
                let idx: usize = cur[1..close].trim().parse().ok()?;
                indices.push(idx);
                cur = &cur[close + 1..];
            }
            match indices.len() {
                1 => Some((name, Some(indices[0]), None)),
                2 => Some((name, Some(indices[0]), Some(indices[1]))),
                _ => None,
            }
        }
    }
}

/// Load a problem from the line-oriented `key = value` config format.
///
/// Keys: `n`, `T`, `a` (comma-separated vector), `f[i][j]`, `g[i][j]`,
/// `h[i]`; indices may be omitted when n = 1. `#` starts a comment and
/// missing coefficient entries default to the zero expression.
pub fn load_problem(config: &str) -> Result<Problem, ConfigError> {
    struct RawEntry {
        line: usize,
        key: String,
        name: &'static str,
        i: Option<usize>,
        j: Option<usize>,
        value: String,
    }

    let mut n: Option<(usize, usize)> = None; // (value, line)
    let mut t_end: Option<f64> = None;
    let mut terminal: Option<Vec<f64>> = None;
    let mut entries: Vec<RawEntry> = Vec::new();

    for (lineno, raw) in config.lines().enumerate() {
        let line = lineno + 1;
        let text = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        let (key, value) = match text.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => {
                return Err(ConfigError::MalformedLine {
                    line,
                    text: text.into(),
                })
            }
        };
        match key {
            "n" => {
                if n.is_some() {
                    return Err(ConfigError::DuplicateKey { line, key: "n".into() });
                }
                let v: usize = value.parse().map_err(|_| ConfigError::InvalidValue {
                    line,
                    key: "n".into(),
                    message: format!("`{value}` is not a positive integer"),
                })?;
                n = Some((v, line));
            }
            "T" => {
                if t_end.is_some() {
                    return Err(ConfigError::DuplicateKey { line, key: "T".into() });
                }
                let v: f64 = value.parse().map_err(|_| ConfigError::InvalidValue {
                    line,
                    key: "T".into(),
                    message: format!("`{value}` is not a number"),
                })?;
                t_end = Some(v);
            }
            "a" => {
                if terminal.is_some() {
                    return Err(ConfigError::DuplicateKey { line, key: "a".into() });
                }
                let mut parts = Vec::new();
                for piece in value.split(',') {
                    let v: f64 = piece.trim().parse().map_err(|_| ConfigError::InvalidValue {
                        line,
                        key: "a".into(),
                        message: format!("`{}` is not a number", piece.trim()),
                    })?;
                    parts.push(v);
                }
                terminal = Some(parts);
            }
            other => {
                let (name, i, j) = split_key(other).ok_or_else(|| ConfigError::UnknownKey {
                    line,
                    key: other.into(),
                })?;
                let name: &'static str = match name {
                    "f" => "f",
                    "g" => "g",
                    "h" => "h",
                    _ => {
                        return Err(ConfigError::UnknownKey {
                            line,
                            key: other.into(),
                        })
                    }
                };
                if name == "h" && j.is_some() {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: other.into(),
                    });
                }
                entries.push(RawEntry {
                    line,
                    key: other.into(),
                    name,
                    i,
                    j,
                    value: value.into(),
                });
            }
        }
    }

    let n = n.map(|(v, _)| v).unwrap_or(1);
    if n == 0 {
        return Err(ConfigError::ZeroDimension(0));
    }
    let t_end = t_end.ok_or(ConfigError::MissingKey("T"))?;
    if !(t_end > 0.0) {
        return Err(ConfigError::NonPositiveHorizon(t_end));
    }
    let terminal = terminal.ok_or(ConfigError::MissingKey("a"))?;
    if terminal.len() != n {
        return Err(ConfigError::TerminalDimension {
            n,
            found: terminal.len(),
        });
    }

    let mut f = CoeffMatrix::zeros(n);
    let mut g = CoeffMatrix::zeros(n);
    let mut h = CoeffVector::zeros(n);
    let mut seen: Vec<String> = Vec::new();

    for e in entries {
        let (i, j) = match (e.i, e.j) {
            (None, None) => (0, 0),
            (Some(i), None) => (i, 0),
            (Some(i), Some(j)) => (i, j),
            (None, Some(_)) => unreachable!(),
        };
        let needs_two = e.name != "h";
        if i >= n || (needs_two && j >= n) {
            return Err(ConfigError::IndexOutOfRange {
                line: e.line,
                key: e.key,
                n,
            });
        }
        if n > 1 && e.i.is_none() {
            return Err(ConfigError::InvalidValue {
                line: e.line,
                key: e.key,
                message: format!("indices are required when n = {n}"),
            });
        }
        let canonical = format!("{}[{}][{}]", e.name, i, j);
        if seen.contains(&canonical) {
            return Err(ConfigError::DuplicateKey {
                line: e.line,
                key: e.key,
            });
        }
        seen.push(canonical);
        let coeff = Coefficient::parse(&e.value).map_err(|source| ConfigError::Expression {
            line: e.line,
            key: e.key.clone(),
            source,
        })?;
        match e.name {
            "f" => f.set(i, j, coeff),
            "g" => g.set(i, j, coeff),
            _ => h.set(i, coeff),
        }
    }

    Problem::new(t_end, DVector::from_vec(terminal), f, g, h)
}

/// Load a problem config from a file path.
pub fn load_problem_file(path: &Path) -> Result<Problem, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    load_problem(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_nodes_are_uniform_and_hit_the_horizon() {
        let grid = Grid::new(2.0, 8).unwrap();
        assert_eq!(grid.node(0), 0.0);
        assert_eq!(grid.node(8), 2.0);
        assert_relative_eq!(grid.dt() * grid.steps() as f64, 2.0, epsilon = 1e-15);
        let nodes: Vec<f64> = grid.nodes().collect();
        assert!(nodes.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn grid_rejects_degenerate_input() {
        assert!(Grid::new(1.0, 1).is_err());
        assert!(Grid::new(0.0, 16).is_err());
        assert!(Grid::new(-1.0, 16).is_err());
    }

    #[test]
    fn loads_the_scalar_sinh_problem() {
        let p = load_problem("n = 1\nf = 0\ng = -1\nh = 0\nT = 1\na = 1\n").unwrap();
        assert!(p.is_scalar());
        assert_eq!(p.t_end(), 1.0);
        assert_eq!(p.terminal()[0], 1.0);
        assert_eq!(p.g().eval(0.3).unwrap()[(0, 0)], -1.0);
        assert!(p.f().is_zero());
        assert!(p.h().is_zero());
    }

    #[test]
    fn loads_the_airy_problem_with_defaults() {
        // f and h are omitted and default to zero; comments are ignored.
        let p = load_problem("# Airy\nn = 1\ng = -t\nT = 1\na = 2  # terminal\n").unwrap();
        assert!(p.f().is_zero());
        assert_relative_eq!(p.g().eval(0.5).unwrap()[(0, 0)], -0.5);
        assert_eq!(p.terminal()[0], 2.0);
    }

    #[test]
    fn loads_a_diagonal_system() {
        let text = "n = 2\nT = 1\na = 1, 2\ng[0][0] = -1\ng[1][1] = -4\n";
        let p = load_problem(text).unwrap();
        assert_eq!(p.dim(), 2);
        let g = p.g().eval(0.0).unwrap();
        assert_eq!(g[(0, 0)], -1.0);
        assert_eq!(g[(1, 1)], -4.0);
        assert_eq!(g[(0, 1)], 0.0);
        assert_eq!(p.terminal()[1], 2.0);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let err = load_problem("n = 2\nT = 1\na = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::TerminalDimension { n: 2, found: 1 }));
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let err = load_problem("n = 2\nT = 1\na = 1, 1\ng[2][0] = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::IndexOutOfRange { .. }));
    }

    #[test]
    fn rejects_nonpositive_horizon() {
        let err = load_problem("n = 1\nT = 0\na = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::NonPositiveHorizon(_)));
        let err = load_problem("n = 1\nT = -2\na = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::NonPositiveHorizon(_)));
    }

    #[test]
    fn rejects_bad_expressions_and_unknown_keys() {
        let err = load_problem("T = 1\na = 1\ng = 1 +\n").unwrap_err();
        assert!(matches!(err, ConfigError::Expression { .. }));
        let err = load_problem("T = 1\na = 1\nq = 3\n").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownKey { .. }));
    }

    #[test]
    fn rejects_coefficients_that_do_not_evaluate() {
        let err = load_problem("T = 1\na = 1\ng = sqrt(t - 2)\n").unwrap_err();
        assert!(matches!(err, ConfigError::NotEvaluable { .. }));
    }

    #[test]
    fn tabulated_coefficient_tracks_a_smooth_function() {
        let m = 200;
        let dt = 1.0 / m as f64;
        let values: Vec<f64> = (0..=m).map(|i| (i as f64 * dt).sin()).collect();
        let table = Tabulated::new(0.0, dt, values);
        let c = Coefficient::Table(table);
        for k in 0..50 {
            let t = 0.013 + 0.97 * k as f64 / 50.0;
            assert_relative_eq!(c.eval(t).unwrap(), t.sin(), epsilon = 1e-7);
            assert_relative_eq!(c.deriv(t).unwrap(), t.cos(), epsilon = 1e-4);
        }
    }

    #[test]
    fn scalar_aliases_match_indexed_keys() {
        let a = load_problem("T = 1\na = 1\ng = -t\n").unwrap();
        let b = load_problem("T = 1\na = 1\ng[0][0] = -t\n").unwrap();
        assert_eq!(
            a.g().eval(0.7).unwrap()[(0, 0)],
            b.g().eval(0.7).unwrap()[(0, 0)]
        );
    }
}
