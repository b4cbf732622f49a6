//! Dense symmetric eigensolvers.
//!
//! [`spectral_radius`] runs shifted power iteration and is what every
//! experiment uses. [`full_spectrum`] is a cyclic Jacobi diagonalisation
//! that shares no code with it and serves as the cross-check.

use thiserror::Error;

/// Iteration cap of the power method.
pub const MAX_POWER_ITERATIONS: usize = 100_000;
/// Successive Rayleigh quotients must differ by less than this.
pub const RAYLEIGH_STEP_TOL: f64 = 1e-13;
/// Required `‖Mx − ρx‖₂` at convergence.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Jacobi stops once the off-diagonal Frobenius norm is below this times `‖M‖_F`.
pub const JACOBI_RELATIVE_TOL: f64 = 1e-13;
/// Largest dimension accepted by [`full_spectrum`].
pub const MAX_DENSE_DIM: usize = 2000;
const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is empty")]
    Empty,
    #[error("entry ({i}, {j}) differs from ({j}, {i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("entry ({i}, {j}) = {value} is negative")]
    Negative { i: usize, j: usize, value: f64 },
    #[error("entry ({i}, {j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("dimension {n} exceeds the dense limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("row {row} has length {len}, expected {n}")]
    Ragged { row: usize, len: usize, n: usize },
    #[error("power iteration did not converge in {} iterations (residual {})", best.iterations, best.residual)]
    NoConvergence { best: Box<SpectralResult> },
    #[error("Jacobi rotations did not converge in {sweeps} sweeps")]
    JacobiNoConvergence { sweeps: usize },
}

/// Dense symmetric matrix; writes go to both triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    /// Builds from full rows, checking that they are square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<SymMatrix, SpectralError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SpectralError::Ragged { row, len: r.len(), n });
            }
            data.extend_from_slice(r);
        }
        for i in 0..n {
            for j in i + 1..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Row sums, each summed by ascending column.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_vec_into(x, &mut y);
        y
    }

    fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// `xᵀMx`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }

    fn validate_nonnegative(&self) -> Result<(), SpectralError> {
        if self.n == 0 {
            return Err(SpectralError::Empty);
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if !v.is_finite() {
                    return Err(SpectralError::NonFinite { i, j });
                }
                if v < 0.0 {
                    return Err(SpectralError::Negative { i, j, value: v });
                }
                if j > i && v != self.get(j, i) {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        Ok(())
    }
}

/// Largest eigenvalue and its Perron vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub radius: f64,
    /// Unit 2-norm, largest-magnitude entry positive.
    pub perron: Vec<f64>,
    pub iterations: usize,
    /// `‖M·perron − radius·perron‖₂`.
    pub residual: f64,
}

/// Perron root of a nonnegative symmetric matrix.
///
/// Iterates on `M + sI` with `s` the largest row sum, so `-ρ` (present for
/// bipartite supports) cannot compete with `ρ`; the shift is removed by
/// reporting the Rayleigh quotient of `M` itself. The start vector is the
/// normalised all-ones vector.
pub fn spectral_radius(m: &SymMatrix) -> Result<SpectralResult, SpectralError> {
    m.validate_nonnegative()?;
    let n = m.dim();
    let shift = m.row_sums().into_iter().fold(0.0, f64::max);
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut mx = vec![0.0; n];
    if shift == 0.0 {
        return Ok(SpectralResult { radius: 0.0, perron: x, iterations: 0, residual: 0.0 });
    }

    let mut prev_rq = f64::NAN;
    let mut best: Option<SpectralResult> = None;
    for it in 1..=MAX_POWER_ITERATIONS {
        m.mul_vec_into(&x, &mut mx);
        let rq = dot(&x, &mx);
        let residual = residual_norm(&mx, &x, rq);
        if (rq - prev_rq).abs() < RAYLEIGH_STEP_TOL && residual < RESIDUAL_TOL {
            return Ok(finish(m, x, it));
        }
        if best.as_ref().is_none_or(|b| residual < b.residual) {
            best = Some(SpectralResult { radius: rq, perron: x.clone(), iterations: it, residual });
        }
        prev_rq = rq;
        for (xi, yi) in x.iter_mut().zip(&mx) {
            *xi = yi + shift * *xi;
        }
        normalize(&mut x);
    }
    let mut best = best.expect("at least one iteration ran");
    best.iterations = MAX_POWER_ITERATIONS;
    Err(SpectralError::NoConvergence { best: Box::new(best) })
}

fn finish(m: &SymMatrix, mut x: Vec<f64>, iterations: usize) -> SpectralResult {
    normalize(&mut x);
    let pivot = x
        .iter()
        .copied()
        .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
    if pivot < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let mx = m.mul_vec(&x);
    let radius = dot(&x, &mx);
    let residual = residual_norm(&mx, &x, radius);
    SpectralResult { radius, perron: x, iterations, residual }
}

/// All eigenvalues in descending order, by cyclic Jacobi rotations.
pub fn full_spectrum(m: &SymMatrix) -> Result<Vec<f64>, SpectralError> {
    let n = m.dim();
    if n > MAX_DENSE_DIM {
        return Err(SpectralError::TooLarge { n, max: MAX_DENSE_DIM });
    }
    for i in 0..n {
        for j in i..n {
            if !m.get(i, j).is_finite() {
                return Err(SpectralError::NonFinite { i, j });
            }
            if m.get(i, j) != m.get(j, i) {
                return Err(SpectralError::NotSymmetric { i, j });
            }
        }
    }
    let mut a = m.data.clone();
    let target = JACOBI_RELATIVE_TOL * m.frobenius_norm();
    let off = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(SpectralError::JacobiNoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let norm = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

fn residual_norm(mx: &[f64], x: &[f64], lambda: f64) -> f64 {
    mx.iter().zip(x).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt()
}
