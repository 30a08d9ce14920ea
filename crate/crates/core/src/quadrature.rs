//! Composite Simpson quadrature on a fixed, uniform grid.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Boundary mass above this is logged as a warning.
pub const BOUNDARY_MASS_WARN: f64 = 1e-8;

/// Fraction of the grid at each end counted as "near the boundary".
const BOUNDARY_FRACTION: f64 = 0.01;

/// Uniform grid of an odd number of nodes spanning `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl Grid {
    /// `[−12, 12]` with 8193 nodes.
    pub const STANDARD: Grid = Grid {
        lo: -12.0,
        hi: 12.0,
        points: 8193,
    };

    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid("grid", format!("[{lo}, {hi}] is not a finite interval")));
        }
        if points < 3 || points % 2 == 0 {
            return Err(Error::invalid("grid", format!("{points} nodes; Simpson needs an odd count >= 3")));
        }
        Ok(Self { lo, hi, points })
    }

    /// The standard grid widened (same node count) to cover every `(lo, hi)` range given.
    pub fn covering(ranges: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut g = Self::STANDARD;
        for (lo, hi) in ranges {
            if lo.is_finite() {
                g.lo = g.lo.min(lo);
            }
            if hi.is_finite() {
                g.hi = g.hi.max(hi);
            }
        }
        g
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.hi
        } else {
            self.lo + i as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.node(i))
    }

    /// Simpson weight of node `i` (without the `step/3` factor).
    #[inline]
    fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.points {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    }

    /// Simpson sum of `values` sampled at the nodes.
    pub fn simpson(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.points);
        let s: f64 = values
            .iter()
            .enumerate()
            .map(|(i, v)| self.weight(i) * v)
            .sum();
        s * self.step() / 3.0
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let values: Vec<f64> = self.nodes().map(f).collect();
        self.simpson(&values)
    }

    /// Mass carried by the outermost 1% of the grid on each side.
    pub fn boundary_mass(&self, values: &[f64]) -> f64 {
        let k = ((self.points as f64 * BOUNDARY_FRACTION) as usize).max(1);
        let dx = self.step();
        let edge = |vs: &mut dyn Iterator<Item = &f64>| -> f64 { vs.map(|v| v.abs()).sum::<f64>() * dx };
        edge(&mut values[..k].iter()) + edge(&mut values[values.len() - k..].iter())
    }
}

/// Composite trapezoid over arbitrary abscissae.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Grid metadata attached to a quadrature result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureInfo {
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub points: usize,
    pub boundary_mass: f64,
}

impl QuadratureInfo {
    /// Exact (closed-form) values carry no grid.
    pub fn exact() -> Self {
        Self {
            grid_lo: f64::NEG_INFINITY,
            grid_hi: f64::INFINITY,
            points: 0,
            boundary_mass: 0.0,
        }
    }

    pub(crate) fn from_grid(grid: &Grid, values: &[f64]) -> Self {
        let boundary_mass = grid.boundary_mass(values);
        if boundary_mass > BOUNDARY_MASS_WARN {
            log::warn!(
                "integrand mass {boundary_mass:.3e} near the edges of [{}, {}]; the grid may truncate it",
                grid.lo,
                grid.hi
            );
        }
        Self {
            grid_lo: grid.lo,
            grid_hi: grid.hi,
            points: grid.points,
            boundary_mass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let g = Grid::new(-1.0, 2.0, 5).unwrap();
        let v = g.integrate(|x| x * x * x - 2.0 * x + 1.0);
        // [x^4/4 - x^2 + x] from -1 to 2
        assert_abs_diff_eq!(v, (4.0 - 4.0 + 2.0) - (0.25 - 1.0 - 1.0), epsilon = 1e-13);
    }

    #[test]
    fn standard_grid_integrates_normal_density() {
        let g = Grid::STANDARD;
        let v = g.integrate(|x| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt());
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-13);
        assert_eq!(g.node(g.points - 1), 12.0);
        assert_eq!(g.node(4096), 0.0);
    }

    #[test]
    fn rejects_even_or_degenerate_grids() {
        assert!(Grid::new(0.0, 1.0, 4).is_err());
        assert!(Grid::new(1.0, 1.0, 5).is_err());
        assert!(Grid::new(0.0, f64::INFINITY, 5).is_err());
    }

    #[test]
    fn covering_only_widens() {
        let g = Grid::covering([(-3.0, 3.0), (-20.0, 5.0)]);
        assert_eq!((g.lo, g.hi, g.points), (-20.0, 12.0, 8193));
    }

    #[test]
    fn trapezoid_on_line() {
        let xs = [0.0, 0.5, 2.0];
        let ys = [1.0, 2.0, 5.0];
        assert_abs_diff_eq!(trapezoid(&xs, &ys), 0.75 + 5.25, epsilon = 1e-15);
    }

    #[test]
    fn boundary_mass_detects_truncation() {
        let g = Grid::new(-3.0, 3.0, 1001).unwrap();
        let v: Vec<f64> = g.nodes().map(|x| (-0.5 * x * x).exp()).collect();
        assert!(g.boundary_mass(&v) > BOUNDARY_MASS_WARN);
        let tight: Vec<f64> = Grid::STANDARD.nodes().map(|x| (-0.5 * x * x).exp()).collect();
        assert!(Grid::STANDARD.boundary_mass(&tight) < BOUNDARY_MASS_WARN);
    }
}
