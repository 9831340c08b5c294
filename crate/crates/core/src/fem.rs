//! P1 finite elements for `-Δu + δ²u = 0` with unit Neumann data, the
//! rigidity `T = ∫_∂Ω u`, and the first modified Steklov eigenvalue.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::TriMesh;

/// Relative residual targeted by the torsion solve.
pub const CG_TOLERANCE: f64 = 1e-12;
/// Residual the torsion solve must reach to count as converged.
pub const RESIDUAL_CONTRACT: f64 = 1e-10;
/// Dense factorisation is used as a fallback up to this many unknowns.
pub const DENSE_LIMIT: usize = 200;
/// Warm restarts of CG before giving up.
const CG_RESTARTS: usize = 3;
/// Relative change of successive Rayleigh quotients that stops the
/// Steklov inverse iteration.
pub const STEKLOV_TOLERANCE: f64 = 1e-10;
const STEKLOV_MAX_ITERATIONS: usize = 1000;

/// Symmetric matrix in compressed-row form, both triangles stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetricMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymmetricMatrix {
    /// Sums duplicate `(i, j, v)` entries. The caller supplies both
    /// `(i, j)` and `(j, i)`.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last = None;
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(j);
                vals.push(v);
                row_ptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        match row.binary_search(&j) {
            Ok(k) => self.vals[self.row_ptr[i] + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut s = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.vals[k] * x[self.cols[k]];
            }
            y[i] = s;
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.vals[self.row_ptr[i]..self.row_ptr[i + 1]].iter().sum())
            .collect()
    }

    /// `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.matvec(x))
    }

    /// `self + alpha · other`.
    pub fn add_scaled(&self, other: &Self, alpha: f64) -> Self {
        assert_eq!(self.n, other.n);
        let mut triplets = Vec::with_capacity(self.nnz() + other.nnz());
        for (m, s) in [(self, 1.0), (other, alpha)] {
            for i in 0..m.n {
                for k in m.row_ptr[i]..m.row_ptr[i + 1] {
                    triplets.push((i, m.cols[k], s * m.vals[k]));
                }
            }
        }
        Self::from_triplets(self.n, triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                d[i][self.cols[k]] = self.vals[k];
            }
        }
        d
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| {
            (self.row_ptr[i]..self.row_ptr[i + 1])
                .all(|k| self.get(self.cols[k], i) == self.vals[k])
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Element matrices of a P1 discretisation, independent of δ.
#[derive(Debug, Clone)]
pub struct FemParts {
    pub stiffness: SparseSymmetricMatrix,
    pub mass: SparseSymmetricMatrix,
    pub boundary_mass: SparseSymmetricMatrix,
    /// `load_i = ∫_∂Ω φ_i`.
    pub load: Vec<f64>,
}

impl FemParts {
    pub fn new(mesh: &TriMesh) -> Self {
        let n = mesh.node_count();
        let mut k_trip = Vec::with_capacity(9 * mesh.triangles.len());
        let mut m_trip = Vec::with_capacity(9 * mesh.triangles.len());
        for (t, tri) in mesh.triangles.iter().enumerate() {
            let area = mesh.triangle_area(t);
            let p = tri.map(|v| mesh.nodes[v]);
            // ∇φ_i = (b_i, c_i) / (2 area)
            let b = [p[1].y - p[2].y, p[2].y - p[0].y, p[0].y - p[1].y];
            let c = [p[2].x - p[1].x, p[0].x - p[2].x, p[1].x - p[0].x];
            for i in 0..3 {
                for j in 0..3 {
                    let kij = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
                    let mij = if i == j { area / 6.0 } else { area / 12.0 };
                    k_trip.push((tri[i], tri[j], kij));
                    m_trip.push((tri[i], tri[j], mij));
                }
            }
        }
        let mut b_trip = Vec::with_capacity(4 * mesh.boundary_edges.len());
        let mut load = vec![0.0; n];
        for e in &mesh.boundary_edges {
            let [p, q] = e.nodes;
            let l = e.length;
            b_trip.extend([
                (p, p, l / 3.0),
                (q, q, l / 3.0),
                (p, q, l / 6.0),
                (q, p, l / 6.0),
            ]);
            load[p] += l / 2.0;
            load[q] += l / 2.0;
        }
        Self {
            stiffness: SparseSymmetricMatrix::from_triplets(n, k_trip),
            mass: SparseSymmetricMatrix::from_triplets(n, m_trip),
            boundary_mass: SparseSymmetricMatrix::from_triplets(n, b_trip),
            load,
        }
    }

    /// `K + δ² M`.
    pub fn operator(&self, delta: f64) -> SparseSymmetricMatrix {
        self.stiffness.add_scaled(&self.mass, delta * delta)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    Ok(())
}

/// `(A, B, load)` with `A = K + δ²M` and `B` the boundary mass matrix.
pub fn assemble(
    mesh: &TriMesh,
    delta: f64,
) -> Result<(SparseSymmetricMatrix, SparseSymmetricMatrix, Vec<f64>)> {
    check_delta(delta)?;
    mesh.check_quality()?;
    let parts = FemParts::new(mesh);
    let a = parts.operator(delta);
    Ok((a, parts.boundary_mass, parts.load))
}

#[derive(Debug, Clone)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// True relative residual `‖b - Ax‖ / ‖b‖`.
    pub residual: f64,
    pub converged: bool,
}

/// Jacobi-preconditioned conjugate gradients. Never fails; inspect
/// `converged`.
pub fn conjugate_gradient(
    a: &SparseSymmetricMatrix,
    b: &[f64],
    x0: Option<&[f64]>,
    tolerance: f64,
    max_iterations: usize,
) -> CgOutcome {
    let n = a.dim();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return CgOutcome {
            x: vec![0.0; n],
            iterations: 0,
            residual: 0.0,
            converged: true,
        };
    }
    let inv_diag: Vec<f64> = a.diagonal().iter().map(|d| 1.0 / d).collect();
    let mut x = x0.map_or_else(|| vec![0.0; n], <[f64]>::to_vec);
    let mut ax = vec![0.0; n];
    a.matvec_into(&x, &mut ax);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut iterations = 0;
    while iterations < max_iterations && norm(&r) > tolerance * b_norm {
        a.matvec_into(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        iterations += 1;
    }
    a.matvec_into(&x, &mut ax);
    let true_residual = norm(
        &b.iter()
            .zip(&ax)
            .map(|(bi, ai)| bi - ai)
            .collect::<Vec<_>>(),
    ) / b_norm;
    CgOutcome {
        x,
        iterations,
        residual: true_residual,
        converged: true_residual <= tolerance.max(RESIDUAL_CONTRACT),
    }
}

/// Solves `A x = b` by a dense Cholesky factorisation.
pub fn dense_cholesky_solve(a: &SparseSymmetricMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.dim();
    let mut l = a.to_dense();
    for j in 0..n {
        let mut d = l[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if !(d > 0.0) {
            return Err(Error::Domain("matrix is not positive definite".into()));
        }
        let d = d.sqrt();
        l[j][j] = d;
        for i in j + 1..n {
            let mut s = l[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / d;
        }
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i][k] * y[k];
        }
        y[i] /= l[i][i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            y[i] -= l[k][i] * y[k];
        }
        y[i] /= l[i][i];
    }
    Ok(y)
}

/// CG with the dense fallback for small systems.
fn solve_spd(a: &SparseSymmetricMatrix, b: &[f64], x0: Option<&[f64]>) -> Result<CgOutcome> {
    let n = a.dim();
    let mut out = conjugate_gradient(a, b, x0, CG_TOLERANCE, 50 * n.max(1));
    // restarts resynchronise the recursive residual with the true one
    for _ in 0..CG_RESTARTS {
        if out.converged {
            return Ok(out);
        }
        let spent = out.iterations;
        out = conjugate_gradient(a, b, Some(&out.x), CG_TOLERANCE, 50 * n.max(1));
        out.iterations += spent;
    }
    if out.converged {
        return Ok(out);
    }
    if n <= DENSE_LIMIT {
        let x = dense_cholesky_solve(a, b)?;
        let ax = a.matvec(&x);
        let residual = norm(
            &b.iter()
                .zip(&ax)
                .map(|(bi, ai)| bi - ai)
                .collect::<Vec<_>>(),
        ) / norm(b);
        return Ok(CgOutcome {
            x,
            iterations: out.iterations,
            residual,
            converged: residual <= RESIDUAL_CONTRACT,
        });
    }
    Err(Error::NonConvergence {
        iterations: out.iterations,
        residual: out.residual,
    })
}

/// Discrete torsion function on a mesh.
#[derive(Debug, Clone)]
pub struct TorsionSolution<'m> {
    pub mesh: &'m TriMesh,
    pub delta: f64,
    pub nodal_values: Vec<f64>,
    /// `loadᵀ u`.
    pub rigidity: f64,
    pub solver_residual: f64,
    pub iterations: usize,
    pub boundary_load: Vec<f64>,
    /// `δ² 1ᵀ M u`, the discrete `δ² ∫ u`.
    pub mass_integral: f64,
}

/// Serialisable digest of a [`TorsionSolution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionSummary {
    pub delta: f64,
    pub rigidity: f64,
    pub solver_residual: f64,
    pub iterations: usize,
    pub nodes: usize,
    pub triangles: usize,
    pub mesh_area: f64,
    pub mesh_perimeter: f64,
    pub l1_identity_residual: f64,
    pub min_value: f64,
    pub max_interior: f64,
    pub max_boundary: f64,
    pub dual_gap: f64,
}

impl TorsionSolution<'_> {
    /// `|δ² ∫u - |∂Ω|| / |∂Ω|`.
    pub fn l1_identity_residual(&self) -> f64 {
        let p = self.mesh.perimeter();
        (self.mass_integral - p).abs() / p
    }

    pub fn min_value(&self) -> f64 {
        self.nodal_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// `(max over interior nodes, max over boundary nodes)`.
    pub fn interior_and_boundary_max(&self) -> (f64, f64) {
        let mask = self.mesh.boundary_mask();
        let mut inner = f64::NEG_INFINITY;
        let mut outer = f64::NEG_INFINITY;
        for (&u, &b) in self.nodal_values.iter().zip(&mask) {
            if b {
                outer = outer.max(u);
            } else {
                inner = inner.max(u);
            }
        }
        (inner, outer)
    }

    pub fn summary(&self) -> Result<TorsionSummary> {
        let (max_interior, max_boundary) = self.interior_and_boundary_max();
        Ok(TorsionSummary {
            delta: self.delta,
            rigidity: self.rigidity,
            solver_residual: self.solver_residual,
            iterations: self.iterations,
            nodes: self.mesh.node_count(),
            triangles: self.mesh.triangles.len(),
            mesh_area: self.mesh.area(),
            mesh_perimeter: self.mesh.perimeter(),
            l1_identity_residual: self.l1_identity_residual(),
            min_value: self.min_value(),
            max_interior,
            max_boundary,
            dual_gap: dual_gap(self.mesh, self.delta, self)?,
        })
    }
}

/// Solves `(K + δ²M) u = load` and evaluates `T = loadᵀu`.
pub fn solve_torsion(mesh: &TriMesh, delta: f64) -> Result<TorsionSolution<'_>> {
    check_delta(delta)?;
    mesh.check_quality()?;
    let parts = FemParts::new(mesh);
    solve_torsion_with(mesh, &parts, delta)
}

/// As [`solve_torsion`], reusing assembled element matrices.
pub fn solve_torsion_with<'m>(
    mesh: &'m TriMesh,
    parts: &FemParts,
    delta: f64,
) -> Result<TorsionSolution<'m>> {
    check_delta(delta)?;
    let a = parts.operator(delta);
    // solve for u - c; the constant c carries the O(1/δ²) bulk of u
    let c = constant_part(parts, delta);
    let rhs: Vec<f64> = parts
        .load
        .iter()
        .zip(parts.mass.row_sums())
        .map(|(l, m)| l - c * delta * delta * m)
        .collect();
    let mut out = solve_spd(&a, &rhs, None)?;
    for x in &mut out.x {
        *x += c;
    }
    out.residual = norm(&torsion_residual(parts, &a, delta, &out.x)) / norm(&parts.load);
    Ok(finish_solution(mesh, parts, delta, out))
}

/// `|∂Ω| / (δ²|Ω|)`, the constant the torsion function tends to as δ → 0.
fn constant_part(parts: &FemParts, delta: f64) -> f64 {
    let perimeter: f64 = parts.load.iter().sum();
    let area: f64 = parts.mass.row_sums().iter().sum();
    perimeter / (delta * delta * area)
}

/// `load - A u`, evaluated as `(load - cδ²M1) - A(u - c)` using `K1 = 0`, so
/// the large constant mode of `u` does not cancel in floating point.
fn torsion_residual(
    parts: &FemParts,
    a: &SparseSymmetricMatrix,
    delta: f64,
    u: &[f64],
) -> Vec<f64> {
    let c = constant_part(parts, delta);
    let shifted: Vec<f64> = u.iter().map(|x| x - c).collect();
    let aw = a.matvec(&shifted);
    parts
        .load
        .iter()
        .zip(parts.mass.row_sums())
        .zip(aw)
        .map(|((l, m), y)| l - c * delta * delta * m - y)
        .collect()
}

/// Runs plain CG for at most `max_iterations` without the convergence
/// check; for diagnostics of unconverged iterates.
pub fn solve_torsion_truncated(
    mesh: &TriMesh,
    delta: f64,
    max_iterations: usize,
) -> Result<TorsionSolution<'_>> {
    check_delta(delta)?;
    let parts = FemParts::new(mesh);
    let a = parts.operator(delta);
    let out = conjugate_gradient(&a, &parts.load, None, CG_TOLERANCE, max_iterations);
    Ok(finish_solution(mesh, &parts, delta, out))
}

fn finish_solution<'m>(
    mesh: &'m TriMesh,
    parts: &FemParts,
    delta: f64,
    out: CgOutcome,
) -> TorsionSolution<'m> {
    let rigidity = dot(&parts.load, &out.x);
    let mass_integral = delta * delta * dot(&parts.mass.row_sums(), &out.x);
    TorsionSolution {
        mesh,
        delta,
        nodal_values: out.x,
        rigidity,
        solver_residual: out.residual,
        iterations: out.iterations,
        boundary_load: parts.load.clone(),
        mass_integral,
    }
}

/// Relative primal–dual gap of a discrete torsion iterate.
///
/// With `r = load - A u`, the pair `(∇u, v)` with `v = u + M⁻¹r / δ²`
/// satisfies the discrete flux constraint `K u + δ² M v = load` exactly, so
/// `D = ‖∇u‖² + δ²‖v‖²` bounds `T_h` from above while
/// `P = 2 loadᵀu - uᵀAu` bounds it from below. Returns `(D - P) / P`,
/// which equals `rᵀM⁻¹r / (δ² P)`.
pub fn dual_gap(mesh: &TriMesh, delta: f64, solution: &TorsionSolution) -> Result<f64> {
    check_delta(delta)?;
    let parts = FemParts::new(mesh);
    let a = parts.operator(delta);
    let u = &solution.nodal_values;
    let r = torsion_residual(&parts, &a, delta, u);
    let w = conjugate_gradient(&parts.mass, &r, None, 1e-14, 10 * mesh.node_count().max(10)).x;
    // P = 2 loadᵀu - uᵀAu = loadᵀu + rᵀu, and D - P = rᵀM⁻¹r / δ²
    let primal = dot(&parts.load, u) + dot(&r, u);
    if !(primal > 0.0) {
        return Ok(f64::INFINITY);
    }
    Ok((dot(&r, &w) / (delta * delta * primal)).max(0.0))
}

/// `(∫_∂Ω φ)² / (‖∇φ‖² + δ²‖φ‖²)` for a nodal trial field.
pub fn rayleigh_t(mesh: &TriMesh, delta: f64, trial: &[f64]) -> Result<f64> {
    check_delta(delta)?;
    if trial.len() != mesh.node_count() {
        return Err(Error::Domain(format!(
            "trial has {} values, mesh has {} nodes",
            trial.len(),
            mesh.node_count()
        )));
    }
    let parts = FemParts::new(mesh);
    let flux = dot(&parts.load, trial);
    if flux == 0.0 {
        return Err(Error::Domain("trial has zero boundary integral".into()));
    }
    Ok(flux * flux / parts.operator(delta).quadratic_form(trial))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteklovResult {
    pub sigma1: f64,
    #[serde(skip)]
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
    /// `‖A x - σ B x‖ / ‖A x‖`.
    pub rayleigh_residual: f64,
}

/// Smallest eigenvalue of `A x = σ B x` by inverse iteration with
/// warm-started CG and `B`-seminorm normalisation.
pub fn steklov_sigma1(mesh: &TriMesh, delta: f64) -> Result<SteklovResult> {
    check_delta(delta)?;
    mesh.check_quality()?;
    let parts = FemParts::new(mesh);
    let a = parts.operator(delta);
    let b = &parts.boundary_mass;
    let n = mesh.node_count();
    let mut x = vec![1.0; n];
    let bnorm = b.quadratic_form(&x).sqrt();
    if !(bnorm > 0.0) {
        return Err(Error::Domain("boundary mass vanishes".into()));
    }
    x.iter_mut().for_each(|v| *v /= bnorm);
    let mut sigma = a.quadratic_form(&x);
    for it in 1..=STEKLOV_MAX_ITERATIONS {
        let rhs = b.matvec(&x);
        let guess: Vec<f64> = x.iter().map(|v| v / sigma).collect();
        let out = solve_spd(&a, &rhs, Some(&guess))?;
        let mut y = out.x;
        let yb = b.quadratic_form(&y).sqrt();
        if !(yb > 0.0) {
            return Err(Error::Domain("iterate lost its boundary trace".into()));
        }
        y.iter_mut().for_each(|v| *v /= yb);
        let ay = a.matvec(&y);
        let next = dot(&y, &ay);
        let change = (next - sigma).abs() / next;
        x = y;
        sigma = next;
        if change <= STEKLOV_TOLERANCE {
            let bx = b.matvec(&x);
            let res: Vec<f64> = ay.iter().zip(&bx).map(|(p, q)| p - sigma * q).collect();
            return Ok(SteklovResult {
                sigma1: sigma,
                rayleigh_residual: norm(&res) / norm(&ay),
                eigenvector: x,
                iterations: it,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: STEKLOV_MAX_ITERATIONS,
        residual: f64::NAN,
    })
}
