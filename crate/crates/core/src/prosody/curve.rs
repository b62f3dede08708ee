use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    Quintic,
    Sinusoidal,
    #[default]
    Linear,
}

/// Control points sorted by x with an interpolation kind. Outside the
/// points the curve holds its end values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    #[serde(default)]
    pub kind: Interpolation,
    pub points: Vec<(f64, f64)>,
}

impl Curve {
    pub fn constant(y: f64) -> Self {
        Curve {
            kind: Interpolation::Linear,
            points: vec![(0.0, y)],
        }
    }

    pub fn new(kind: Interpolation, points: Vec<(f64, f64)>) -> Result<Self> {
        let c = Curve { kind, points };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Data("curve has no points".into()));
        }
        if self.points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::Data("curve point is not finite".into()));
        }
        if self.points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::Data("curve points must have increasing x".into()));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.sampler().eval(x)
    }

    /// Evaluator with the spline solved once.
    pub fn sampler(&self) -> Sampler<'_> {
        let coeffs = match self.kind {
            Interpolation::Quintic if self.points.len() >= 3 => quintic_coefficients(&self.points),
            _ => Vec::new(),
        };
        Sampler { curve: self, coeffs }
    }
}

pub struct Sampler<'a> {
    curve: &'a Curve,
    /// Per segment, polynomial coefficients in `t = x - x_i`, lowest first.
    coeffs: Vec<[f64; 6]>,
}

impl Sampler<'_> {
    pub fn eval(&self, x: f64) -> f64 {
        let pts = &self.curve.points;
        let n = pts.len();
        if n == 1 || x <= pts[0].0 {
            return pts[0].1;
        }
        if x >= pts[n - 1].0 {
            return pts[n - 1].1;
        }
        let i = pts.partition_point(|p| p.0 <= x) - 1;
        let ((x0, y0), (x1, y1)) = (pts[i], pts[i + 1]);
        let u = (x - x0) / (x1 - x0);
        match self.curve.kind {
            Interpolation::Linear => y0 + (y1 - y0) * u,
            Interpolation::Sinusoidal => y0 + (y1 - y0) * (0.5 - 0.5 * (std::f64::consts::PI * u).cos()),
            Interpolation::Quintic if self.coeffs.is_empty() => y0 + (y1 - y0) * u,
            Interpolation::Quintic => {
                let t = x - x0;
                self.coeffs[i].iter().rev().fold(0.0, |acc, c| acc * t + c)
            }
        }
    }
}

/// k-th derivative row of the monomial basis at `t`.
fn derivative_row(t: f64, k: usize) -> [f64; 6] {
    let mut row = [0.0; 6];
    for (p, r) in row.iter_mut().enumerate().skip(k) {
        let falling: f64 = (p - k + 1..=p).map(|v| v as f64).product();
        *r = falling * t.powi((p - k) as i32);
    }
    row
}

/// Interpolating quintic spline with continuous derivatives up to the
/// fourth at interior knots and vanishing third and fourth derivatives at
/// both ends. Needs at least three points.
fn quintic_coefficients(pts: &[(f64, f64)]) -> Vec<[f64; 6]> {
    let segs = pts.len() - 1;
    let size = 6 * segs;
    let mut a = DMatrix::<f64>::zeros(size, size);
    let mut b = DVector::<f64>::zeros(size);
    let mut row = 0;
    let put = |a: &mut DMatrix<f64>, row: usize, seg: usize, vals: [f64; 6], sign: f64| {
        for (j, v) in vals.iter().enumerate() {
            a[(row, 6 * seg + j)] += sign * v;
        }
    };
    for s in 0..segs {
        let h = pts[s + 1].0 - pts[s].0;
        put(&mut a, row, s, derivative_row(0.0, 0), 1.0);
        b[row] = pts[s].1;
        row += 1;
        put(&mut a, row, s, derivative_row(h, 0), 1.0);
        b[row] = pts[s + 1].1;
        row += 1;
        if s + 1 < segs {
            for k in 1..=4 {
                put(&mut a, row, s, derivative_row(h, k), 1.0);
                put(&mut a, row, s + 1, derivative_row(0.0, k), -1.0);
                row += 1;
            }
        }
    }
    let h_last = pts[segs].0 - pts[segs - 1].0;
    for k in 3..=4 {
        put(&mut a, row, 0, derivative_row(0.0, k), 1.0);
        row += 1;
        put(&mut a, row, segs - 1, derivative_row(h_last, k), 1.0);
        row += 1;
    }
    debug_assert_eq!(row, size);
    let x = a.lu().solve(&b).expect("quintic spline system is nonsingular");
    (0..segs)
        .map(|s| std::array::from_fn(|j| x[6 * s + j]))
        .collect()
}
