//! Uniform grids, the three-point discretization of `−d²/dx² + U`, a
//! symmetric tridiagonal eigensolver, grid calculus, and Rayleigh–Ritz
//! projection.
//!
//! The eigensolver counts eigenvalues below a probe from the signs of the
//! LDLᵀ pivots (Sturm sequence), isolates each requested eigenvalue by
//! bisection and recovers its eigenvector by inverse iteration with a
//! pivoted tridiagonal factorization.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("potential is not finite at x = {x}")]
    NonFinitePotential { x: f64 },
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("Gram matrix is ill-conditioned (condition number {condition:e})")]
    IllConditionedGram { condition: f64 },
    #[error("projected operator has a complex eigenvalue pair (imaginary part {imag:e})")]
    ComplexRitzValue { imag: f64 },
}

/// Uniform grid `start, start + h, …, end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealGrid {
    start: f64,
    end: f64,
    count: usize,
    spacing: f64,
}

impl RealGrid {
    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.end
        } else {
            self.start + i as f64 * self.spacing
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    /// Same grid up to rounding in the stored spacing.
    pub fn matches(&self, other: &RealGrid) -> bool {
        self.count == other.count
            && (self.start - other.start).abs() <= 1e-12 * (1.0 + self.start.abs())
            && (self.end - other.end).abs() <= 1e-12 * (1.0 + self.end.abs())
    }
}

/// Uniform grid with `count` points from `start` to `end` inclusive.
///
/// Half-line problems with a singular endpoint at 0 pass `start = h`; the
/// Dirichlet ghost point then sits on the singularity.
pub fn make_grid(start: f64, end: f64, count: usize) -> Result<RealGrid, NumericsError> {
    if !(start.is_finite() && end.is_finite()) {
        return Err(NumericsError::InvalidArgument("grid ends must be finite"));
    }
    if start >= end {
        return Err(NumericsError::InvalidArgument("grid start must be below end"));
    }
    if count < 3 {
        return Err(NumericsError::InvalidArgument("grid needs at least 3 points"));
    }
    Ok(RealGrid {
        start,
        end,
        count,
        spacing: (end - start) / (count - 1) as f64,
    })
}

/// Values sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: RealGrid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: RealGrid, values: Vec<f64>) -> Result<Self, NumericsError> {
        if values.len() != grid.count {
            return Err(NumericsError::InvalidArgument("value count does not match grid"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::InvalidArgument("grid function values must be finite"));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every grid point.
    pub fn sample<F: Fn(f64) -> f64>(grid: &RealGrid, f: F) -> Result<Self, NumericsError> {
        Self::new(*grid, grid.points().map(f).collect())
    }

    pub fn zeros(grid: &RealGrid) -> Self {
        Self {
            grid: *grid,
            values: vec![0.0; grid.count],
        }
    }

    pub fn grid(&self) -> &RealGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise map, keeping the grid.
    pub fn map<F: Fn(f64, f64) -> f64>(&self, f: F) -> Result<Self, NumericsError> {
        let values = self
            .grid
            .points()
            .zip(&self.values)
            .map(|(x, &v)| f(x, v))
            .collect();
        Self::new(self.grid, values)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &GridFunction, b: f64) -> Result<Self, NumericsError> {
        if !self.grid.matches(&other.grid) {
            return Err(NumericsError::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    /// Trapezoidal inner product.
    pub fn inner(&self, other: &GridFunction) -> Result<f64, NumericsError> {
        if !self.grid.matches(&other.grid) {
            return Err(NumericsError::GridMismatch);
        }
        Ok(trapezoid_dot(&self.values, &other.values, self.grid.spacing))
    }

    /// Trapezoidal L² norm.
    pub fn norm(&self) -> f64 {
        trapezoid_dot(&self.values, &self.values, self.grid.spacing).sqrt()
    }
}

fn trapezoid_dot(a: &[f64], b: &[f64], h: f64) -> f64 {
    let n = a.len();
    let interior: f64 = (1..n - 1).map(|i| a[i] * b[i]).sum();
    h * (interior + 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]))
}

/// Symmetric tridiagonal matrix representing `−d²/dx² + U` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
    grid: RealGrid,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>, grid: RealGrid) -> Result<Self, NumericsError> {
        if diagonal.len() != grid.count || off_diagonal.len() + 1 != diagonal.len() {
            return Err(NumericsError::InvalidArgument("inconsistent tridiagonal dimensions"));
        }
        Ok(Self {
            diagonal,
            off_diagonal,
            grid,
        })
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    pub fn grid(&self) -> &RealGrid {
        &self.grid
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        sturm_count(&self.diagonal, &self.off_diagonal, lambda)
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.diagonal.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        lo.abs().max(hi.abs()).max(1.0)
    }
}

/// Three-point discretization with Dirichlet ghosts one spacing outside
/// both ends: diagonal `2/h² + U(xᵢ)`, off-diagonal `−1/h²`.
pub fn discretize<U: Fn(f64) -> f64>(potential: U, grid: &RealGrid) -> Result<TridiagonalOperator, NumericsError> {
    let h2 = grid.spacing * grid.spacing;
    let mut diagonal = Vec::with_capacity(grid.count);
    for x in grid.points() {
        let u = potential(x);
        if !u.is_finite() {
            return Err(NumericsError::NonFinitePotential { x });
        }
        diagonal.push(2.0 / h2 + u);
    }
    let off_diagonal = vec![-1.0 / h2; grid.count - 1];
    TridiagonalOperator::new(diagonal, off_diagonal, *grid)
}

/// Number of negative pivots of `T − λ` (eigenvalues below `λ`).
pub fn sturm_count(diagonal: &[f64], off_diagonal: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut pivot = 0.0;
    for i in 0..diagonal.len() {
        pivot = if i == 0 {
            diagonal[0] - lambda
        } else {
            let e = off_diagonal[i - 1];
            let guarded = if pivot == 0.0 { f64::EPSILON * e.abs().max(f64::MIN_POSITIVE) } else { pivot };
            diagonal[i] - lambda - e * e / guarded
        };
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit trapezoidal norm, positive at their largest-magnitude entry.
    pub eigenvectors: Option<Vec<GridFunction>>,
    /// `‖Tv − λv‖∞` for each normalized eigenvector.
    pub residual_norms: Vec<f64>,
    /// Whether inverse iteration settled for each pair.
    pub converged: Vec<bool>,
}

/// The `k` lowest eigenpairs of `op`, eigenvalues to absolute tolerance `tol`.
pub fn eigen_lowest(op: &TridiagonalOperator, k: usize, tol: f64) -> Result<EigenResult, NumericsError> {
    let eigenvalues = eigenvalues_lowest(op, k, tol)?;
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut residual_norms = Vec::with_capacity(k);
    let mut converged = Vec::with_capacity(k);
    let scale = op.scale();
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        // neighbours closer than this are treated as a cluster and the new
        // vector is orthogonalized against them
        let cluster: Vec<usize> = (0..j)
            .filter(|&i| (eigenvalues[i] - lambda).abs() < 1e-3 * scale)
            .collect();
        let (v, ok) = inverse_iteration(op, lambda, scale, j, &cluster, &vectors);
        let mut v = v;
        normalize_trapezoid(&mut v, op.grid.spacing);
        residual_norms.push(residual_inf(op, &v, lambda));
        converged.push(ok);
        vectors.push(v);
    }
    let grid = op.grid;
    let eigenvectors = vectors
        .into_iter()
        .map(|v| GridFunction { grid, values: v })
        .collect();
    Ok(EigenResult {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
        residual_norms,
        converged,
    })
}

/// The `k` lowest eigenvalues by Sturm bisection only.
pub fn eigenvalues_lowest(op: &TridiagonalOperator, k: usize, tol: f64) -> Result<Vec<f64>, NumericsError> {
    if k == 0 || k > op.dimension() {
        return Err(NumericsError::InvalidArgument("k must lie in 1..=dimension"));
    }
    if !(tol > 0.0) {
        return Err(NumericsError::InvalidArgument("tolerance must be positive"));
    }
    let (glo, ghi) = op.gershgorin_bounds();
    let pad = 1e-12 * op.scale();
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut out = Vec::with_capacity(k);
    let mut lower = glo;
    for index in 0..k {
        // smallest λ with count_below(λ) > index
        let mut lo = lower;
        let mut hi = ghi;
        while hi - lo > tol && hi - lo > 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            let mid = 0.5 * (lo + hi);
            if op.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let lambda = 0.5 * (lo + hi);
        out.push(lambda);
        lower = lo;
    }
    Ok(out)
}

fn residual_inf(op: &TridiagonalOperator, v: &[f64], lambda: f64) -> f64 {
    let tv = tridiag_matvec(&op.diagonal, &op.off_diagonal, v);
    tv.iter()
        .zip(v)
        .fold(0.0, |m, (a, b)| m.max((a - lambda * b).abs()))
}

fn normalize_trapezoid(v: &mut [f64], h: f64) {
    let norm = trapezoid_dot(v, v, h).sqrt();
    let pivot = v.iter().fold(0.0f64, |m, &x| if x.abs() > m.abs() { x } else { m });
    let s = if pivot < 0.0 { -1.0 / norm } else { 1.0 / norm };
    for x in v.iter_mut() {
        *x *= s;
    }
}

fn tridiag_matvec(d: &[f64], e: &[f64], v: &[f64]) -> Vec<f64> {
    let n = d.len();
    (0..n)
        .map(|i| {
            let mut s = d[i] * v[i];
            if i > 0 {
                s += e[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += e[i] * v[i + 1];
            }
            s
        })
        .collect()
}

/// LU factorization of a tridiagonal matrix with partial pivoting
/// (second super-diagonal fill-in), as in LAPACK `dgttrf`.
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(mut dl: Vec<f64>, mut d: Vec<f64>, mut du: Vec<f64>, tiny: f64) -> Self {
        let n = d.len();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * b[i + 2];
            }
            b[i] = s / self.d[i];
        }
    }
}

fn inverse_iteration(
    op: &TridiagonalOperator,
    lambda: f64,
    scale: f64,
    seed: usize,
    cluster: &[usize],
    previous: &[Vec<f64>],
) -> (Vec<f64>, bool) {
    let n = op.dimension();
    let shift = lambda + 1e-10 * lambda.abs().max(scale * 1e-6);
    let d: Vec<f64> = op.diagonal.iter().map(|x| x - shift).collect();
    let lu = TridiagLu::factor(
        op.off_diagonal.clone(),
        d,
        op.off_diagonal.clone(),
        f64::EPSILON * scale,
    );
    // deterministic start vector with components in every mode
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * libm::sin(0.7 * (i + seed) as f64 + 0.3 * seed as f64))
        .collect();
    let mut converged = false;
    for _ in 0..12 {
        let mut w = v.clone();
        lu.solve(&mut w);
        for &c in cluster {
            let p = &previous[c];
            let dot: f64 = w.iter().zip(p).map(|(a, b)| a * b).sum();
            let pp: f64 = p.iter().map(|x| x * x).sum();
            for (wi, pi) in w.iter_mut().zip(p) {
                *wi -= dot / pp * pi;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in w.iter_mut() {
            *x /= norm;
        }
        let align: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        if align < 0.0 {
            for x in w.iter_mut() {
                *x = -*x;
            }
        }
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let change = w
            .iter()
            .zip(&v)
            .fold(0.0f64, |m, (a, b)| m.max((a - b / vnorm).abs()));
        v = w;
        if change < 1e-10 {
            converged = true;
            break;
        }
    }
    (v, converged)
}

/// `T·f` with zero Dirichlet ghosts beyond both ends.
pub fn apply_operator(op: &TridiagonalOperator, f: &GridFunction) -> Result<GridFunction, NumericsError> {
    if !op.grid.matches(&f.grid) {
        return Err(NumericsError::GridMismatch);
    }
    GridFunction::new(f.grid, tridiag_matvec(&op.diagonal, &op.off_diagonal, &f.values))
}

/// Central differences inside, second-order one-sided differences at the ends.
pub fn derivative(f: &GridFunction) -> GridFunction {
    let v = &f.values;
    let n = v.len();
    let h = f.grid.spacing;
    let mut out = Vec::with_capacity(n);
    out.push((-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h));
    for i in 1..n - 1 {
        out.push((v[i + 1] - v[i - 1]) / (2.0 * h));
    }
    out.push((3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h));
    GridFunction {
        grid: f.grid,
        values: out,
    }
}

/// Second difference on interior points; the end values repeat their
/// neighbours' (callers only read the interior).
pub fn second_difference(f: &GridFunction) -> GridFunction {
    let v = &f.values;
    let n = v.len();
    let h2 = f.grid.spacing * f.grid.spacing;
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    GridFunction {
        grid: f.grid,
        values: out,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RitzResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// 2-norm condition number of the Gram matrix.
    pub gram_condition: f64,
}

const MAX_GRAM_CONDITION: f64 = 1e12;

/// Eigenvalues of `−d²/dx² + U` projected onto `span(basis)`.
///
/// Matrix elements are `⟨bᵢ, H bⱼ⟩` with trapezoidal inner products, and the
/// Ritz values solve `H c = λ S c` with `S` the Gram matrix. When
/// `second_derivatives` is given it supplies `bⱼ″` on the grid (e.g. from
/// analytic jets); otherwise `H bⱼ` comes from the three-point operator.
/// The projected matrix need not be symmetric when the basis functions have
/// different boundary behaviour at a singular endpoint, so the general
/// eigenproblem of `S⁻¹H` is solved and a complex pair is an error.
pub fn rayleigh_ritz<U: Fn(f64) -> f64>(
    potential: U,
    basis: &[GridFunction],
    second_derivatives: Option<&[GridFunction]>,
) -> Result<RitzResult, NumericsError> {
    let k = basis.len();
    if k == 0 {
        return Err(NumericsError::InvalidArgument("empty basis"));
    }
    let grid = *basis[0].grid();
    if basis.iter().any(|b| !b.grid.matches(&grid)) {
        return Err(NumericsError::GridMismatch);
    }
    let applied: Vec<GridFunction> = match second_derivatives {
        Some(d2) => {
            if d2.len() != k {
                return Err(NumericsError::InvalidArgument("one second derivative per basis function"));
            }
            let mut out = Vec::with_capacity(k);
            for (b, dd) in basis.iter().zip(d2) {
                if !dd.grid.matches(&grid) {
                    return Err(NumericsError::GridMismatch);
                }
                let values = grid
                    .points()
                    .zip(b.values.iter().zip(&dd.values))
                    .map(|(x, (&f, &f2))| -f2 + potential(x) * f)
                    .collect();
                out.push(GridFunction::new(grid, values)?);
            }
            out
        }
        None => {
            let op = discretize(&potential, &grid)?;
            basis
                .iter()
                .map(|b| apply_operator(&op, b))
                .collect::<Result<_, _>>()?
        }
    };
    let mut gram = DMatrix::<f64>::zeros(k, k);
    let mut ham = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = basis[i].inner(&basis[j])?;
            ham[(i, j)] = basis[i].inner(&applied[j])?;
        }
    }
    let gram_eigs = gram.clone().symmetric_eigenvalues();
    let (gmin, gmax) = gram_eigs
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x.abs())));
    let gram_condition = if gmin > 0.0 { gmax / gmin } else { f64::INFINITY };
    if gram_condition > MAX_GRAM_CONDITION {
        return Err(NumericsError::IllConditionedGram {
            condition: gram_condition,
        });
    }
    let reduced = gram
        .lu()
        .solve(&ham)
        .ok_or(NumericsError::IllConditionedGram {
            condition: f64::INFINITY,
        })?;
    let scale = reduced.amax().max(1.0);
    let mut eigenvalues = Vec::with_capacity(k);
    for z in reduced.complex_eigenvalues().iter() {
        if z.im.abs() > 1e-9 * scale {
            return Err(NumericsError::ComplexRitzValue { imag: z.im });
        }
        eigenvalues.push(z.re);
    }
    eigenvalues.sort_by(f64::total_cmp);
    Ok(RitzResult {
        eigenvalues,
        gram_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    fn box_grid(n: usize) -> RealGrid {
        let h = PI / (n + 1) as f64;
        make_grid(h, PI - h, n).unwrap()
    }

    #[test]
    fn grid_examples() {
        let g = make_grid(0.001, 40.0, 40000).unwrap();
        assert_abs_diff_eq!(g.spacing(), 0.001, epsilon = 1e-7);
        let g = make_grid(-12.0, 12.0, 4801).unwrap();
        assert_abs_diff_eq!(g.spacing(), 0.005, epsilon = 1e-15);
        assert_eq!(g.point(4800), 12.0);
        assert!(matches!(make_grid(1.0, 0.0, 10), Err(NumericsError::InvalidArgument(_))));
        assert!(make_grid(0.0, 1.0, 2).is_err());
    }

    #[test]
    fn discretize_reports_non_finite_potential() {
        let g = make_grid(-1.0, 1.0, 5).unwrap();
        let err = discretize(|x: f64| 1.0 / x, &g).unwrap_err();
        assert_eq!(err, NumericsError::NonFinitePotential { x: 0.0 });
    }

    #[test]
    fn box_spectrum() {
        let op = discretize(|_| 0.0, &box_grid(2000)).unwrap();
        let res = eigen_lowest(&op, 3, 1e-12).unwrap();
        for (got, want) in res.eigenvalues.iter().zip([1.0, 4.0, 9.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-4);
        }
        assert!(res.converged.iter().all(|&c| c));
        assert!(res.residual_norms.iter().all(|&r| r < 1e-6));
    }

    #[test]
    fn eigen_lowest_rejects_bad_k() {
        let op = discretize(|_| 0.0, &box_grid(10)).unwrap();
        assert!(eigen_lowest(&op, 0, 1e-8).is_err());
        assert!(eigen_lowest(&op, 11, 1e-8).is_err());
        assert!(eigen_lowest(&op, 2, 0.0).is_err());
    }

    #[test]
    fn small_matrix_eigenvalues_match_dense_solver() {
        let g = make_grid(0.0, 1.0, 6).unwrap();
        let op = TridiagonalOperator::new(
            vec![2.0, -1.0, 3.0, 0.5, 4.0, 1.0],
            vec![1.0, 0.3, -2.0, 0.7, 1.5],
            g,
        )
        .unwrap();
        let mut dense = DMatrix::<f64>::zeros(6, 6);
        for i in 0..6 {
            dense[(i, i)] = op.diagonal()[i];
            if i < 5 {
                dense[(i, i + 1)] = op.off_diagonal()[i];
                dense[(i + 1, i)] = op.off_diagonal()[i];
            }
        }
        let mut want: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
        want.sort_by(f64::total_cmp);
        let got = eigen_lowest(&op, 6, 1e-13).unwrap();
        for (a, b) in got.eigenvalues.iter().zip(&want) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-11);
        }
        assert!(got.residual_norms.iter().all(|&r| r < 1e-9));
    }

    #[test]
    fn apply_operator_examples() {
        let g = box_grid(1000);
        let op = discretize(|_| 0.0, &g).unwrap();
        let f = GridFunction::sample(&g, |x| x.sin()).unwrap();
        let tf = apply_operator(&op, &f).unwrap();
        for (a, b) in tf.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-5);
        }
        let zero = GridFunction::zeros(&g);
        assert_eq!(apply_operator(&op, &zero).unwrap().max_abs(), 0.0);
        let other = GridFunction::zeros(&make_grid(0.0, 1.0, 1000).unwrap());
        assert_eq!(apply_operator(&op, &other), Err(NumericsError::GridMismatch));
    }

    #[test]
    fn derivative_examples() {
        let g = make_grid(0.0, 2.0, 401).unwrap();
        let lin = derivative(&GridFunction::sample(&g, |x| x).unwrap());
        assert!(lin.values().iter().all(|d| (d - 1.0).abs() < 1e-12));
        let quad = derivative(&GridFunction::sample(&g, |x| x * x).unwrap());
        for (x, d) in g.points().zip(quad.values()) {
            assert_abs_diff_eq!(*d, 2.0 * x, epsilon = 1e-10);
        }
        let k = 2.0 * core::f64::consts::SQRT_2;
        let f = GridFunction::sample(&g, |x| (-k * x).exp()).unwrap();
        let df = derivative(&f);
        for (d, v) in df.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(*d, -k * v, epsilon = 1e-3);
        }
    }

    #[test]
    fn ritz_examples() {
        let g = box_grid(2000);
        let basis: Vec<GridFunction> = (1..=3)
            .map(|m| GridFunction::sample(&g, |x| (m as f64 * x).sin()).unwrap())
            .collect();
        let r = rayleigh_ritz(|_| 0.0, &basis, None).unwrap();
        for (got, want) in r.eigenvalues.iter().zip([1.0, 4.0, 9.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-4);
        }
        assert!(r.gram_condition < 1.01);

        // analytic second derivatives give the exact values
        let d2: Vec<GridFunction> = (1..=3)
            .map(|m| {
                let m = m as f64;
                GridFunction::sample(&g, |x| -m * m * (m * x).sin()).unwrap()
            })
            .collect();
        let r = rayleigh_ritz(|_| 0.0, &basis, Some(&d2)).unwrap();
        for (got, want) in r.eigenvalues.iter().zip([1.0, 4.0, 9.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn ritz_single_function_is_rayleigh_quotient() {
        let g = box_grid(500);
        let f = GridFunction::sample(&g, |x| x * (PI - x)).unwrap();
        let u = |x: f64| 1.0 + x;
        let op = discretize(u, &g).unwrap();
        let tf = apply_operator(&op, &f).unwrap();
        let quotient = f.inner(&tf).unwrap() / f.inner(&f).unwrap();
        let r = rayleigh_ritz(u, core::slice::from_ref(&f), None).unwrap();
        assert_abs_diff_eq!(r.eigenvalues[0], quotient, epsilon = 1e-12);
    }

    #[test]
    fn ritz_rejects_dependent_basis() {
        let g = box_grid(200);
        let f = GridFunction::sample(&g, |x| x.sin()).unwrap();
        let twice = f.map(|_, v| 2.0 * v).unwrap();
        let err = rayleigh_ritz(|_| 0.0, &[f, twice], None).unwrap_err();
        assert!(matches!(err, NumericsError::IllConditionedGram { .. }));
    }
}
