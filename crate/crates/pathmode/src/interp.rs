//! Cubic Hermite tables for quantities sampled on a grid with known node
//! derivatives. Quadrature nodes fall between grid nodes, so every sampled
//! field (weights, drifts) carries its derivative samples and interpolates
//! with piecewise-cubic Hermite segments.

use crate::problem::Grid;
use nalgebra::{DMatrix, DVector};

/// Linear combination of four samples; implemented per stored type.
pub trait Blend: Clone {
    fn blend(c: [f64; 4], parts: [&Self; 4]) -> Self;
}

impl Blend for f64 {
    fn blend(c: [f64; 4], p: [&Self; 4]) -> f64 {
        c[0] * p[0] + c[1] * p[1] + c[2] * p[2] + c[3] * p[3]
    }
}

impl Blend for DVector<f64> {
    fn blend(c: [f64; 4], p: [&Self; 4]) -> DVector<f64> {
        let mut out = p[0] * c[0];
        out += p[1] * c[1];
        out += p[2] * c[2];
        out += p[3] * c[3];
        out
    }
}

impl Blend for DMatrix<f64> {
    fn blend(c: [f64; 4], p: [&Self; 4]) -> DMatrix<f64> {
        let mut out = p[0] * c[0];
        out += p[1] * c[1];
        out += p[2] * c[2];
        out += p[3] * c[3];
        out
    }
}

/// Samples plus derivatives on a [`Grid`], evaluated anywhere in `[0, T]`.
#[derive(Debug, Clone)]
pub struct HermiteTable<T> {
    grid: Grid,
    values: Vec<T>,
    derivs: Vec<T>,
}

impl<T: Blend> HermiteTable<T> {
    pub fn new(grid: Grid, values: Vec<T>, derivs: Vec<T>) -> HermiteTable<T> {
        assert_eq!(values.len(), grid.len());
        assert_eq!(derivs.len(), grid.len());
        HermiteTable {
            grid,
            values,
            derivs,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn value(&self, i: usize) -> &T {
        &self.values[i]
    }

    pub fn deriv(&self, i: usize) -> &T {
        &self.derivs[i]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn at(&self, t: f64) -> T {
        let i = self.grid.interval_of(t);
        let dt = self.grid.dt();
        let s = ((t - self.grid.node(i)) / dt).clamp(0.0, 1.0);
        let s2 = s * s;
        let s3 = s2 * s;
        let c = [
            2.0 * s3 - 3.0 * s2 + 1.0,
            (s3 - 2.0 * s2 + s) * dt,
            -2.0 * s3 + 3.0 * s2,
            (s3 - s2) * dt,
        ];
        T::blend(
            c,
            [
                &self.values[i],
                &self.derivs[i],
                &self.values[i + 1],
                &self.derivs[i + 1],
            ],
        )
    }

    /// Derivative of the interpolant; matches the stored derivative at nodes.
    pub fn deriv_at(&self, t: f64) -> T {
        let i = self.grid.interval_of(t);
        let dt = self.grid.dt();
        let s = ((t - self.grid.node(i)) / dt).clamp(0.0, 1.0);
        let s2 = s * s;
        let c = [
            (6.0 * s2 - 6.0 * s) / dt,
            3.0 * s2 - 4.0 * s + 1.0,
            (-6.0 * s2 + 6.0 * s) / dt,
            3.0 * s2 - 2.0 * s,
        ];
        T::blend(
            c,
            [
                &self.values[i],
                &self.derivs[i],
                &self.values[i + 1],
                &self.derivs[i + 1],
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_cubics_exactly() {
        let grid = Grid::new(2.0, 5).unwrap();
        let f = |t: f64| t * t * t - 2.0 * t + 1.0;
        let df = |t: f64| 3.0 * t * t - 2.0;
        let table = HermiteTable::new(
            grid,
            grid.nodes().map(f).collect(),
            grid.nodes().map(df).collect(),
        );
        for k in 0..100 {
            let t = 2.0 * k as f64 / 99.0;
            assert_relative_eq!(table.at(t), f(t), epsilon = 1e-12);
            assert_relative_eq!(table.deriv_at(t), df(t), epsilon = 1e-11);
        }
    }

    #[test]
    fn smooth_function_error_is_fourth_order() {
        let coarse = Grid::new(1.0, 32).unwrap();
        let fine = Grid::new(1.0, 64).unwrap();
        let build = |g: Grid| {
            HermiteTable::new(
                g,
                g.nodes().map(f64::sin).collect(),
                g.nodes().map(f64::cos).collect(),
            )
        };
        let (tc, tf) = (build(coarse), build(fine));
        let err = |table: &HermiteTable<f64>| {
            (0..1000)
                .map(|k| {
                    let t = k as f64 / 999.0;
                    (table.at(t) - t.sin()).abs()
                })
                .fold(0.0, f64::max)
        };
        let ratio = err(&tc) / err(&tf);
        assert!(ratio > 12.0, "expected ~16x error reduction, got {ratio}");
    }

    #[test]
    fn interpolates_vectors_and_matrices() {
        let grid = Grid::new(1.0, 4).unwrap();
        let values: Vec<DVector<f64>> = grid
            .nodes()
            .map(|t| DVector::from_vec(vec![t, t * t]))
            .collect();
        let derivs: Vec<DVector<f64>> = grid
            .nodes()
            .map(|t| DVector::from_vec(vec![1.0, 2.0 * t]))
            .collect();
        let table = HermiteTable::new(grid, values, derivs);
        let v = table.at(0.37);
        assert_relative_eq!(v[0], 0.37, epsilon = 1e-14);
        assert_relative_eq!(v[1], 0.37 * 0.37, epsilon = 1e-14);
    }
}
