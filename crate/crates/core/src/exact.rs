//! Closed-form boundary torsion functions and rigidities for balls,
//! spherical shells and boxes in any dimension `N ≥ 2`, plus the
//! one-dimensional slab profile.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_i_scaled, bessel_k_scaled, gamma_half, unit_ball_volume, BesselOrder};

fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    if n > 64 {
        return Err(Error::InvalidSpec(format!(
            "dimension {n} is unreasonably large"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InvalidSpec(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

/// `|∂B_1| = N ω_N`.
pub fn unit_sphere_area(dimension: u32) -> f64 {
    dimension as f64 * unit_ball_volume(dimension)
}

/// Order `N/2 - 1` of the radial solutions.
fn radial_order(dimension: u32) -> BesselOrder {
    BesselOrder::from_twice(dimension as i32 - 2).expect("N ≥ 2")
}

/// `ρ^{-ν} I_ν(δρ) e^{-δa}` with `ν = N/2 - 1` and anchor `a ≥ ρ`, including
/// the limit at `ρ = 0`. The anchor keeps large δ finite.
fn radial_i(dimension: u32, delta: f64, rho: f64, anchor: f64) -> Result<f64> {
    let nu = radial_order(dimension);
    if rho == 0.0 {
        let v = nu.value();
        return Ok((0.5 * delta).powf(v) / gamma_half(dimension as i32)? * (-delta * anchor).exp());
    }
    Ok(rho.powf(-nu.value()) * bessel_i_scaled(nu, delta * rho)? * (delta * (rho - anchor)).exp())
}

/// `d/dρ [ρ^{-ν} I_ν(δρ)] e^{-δa} = δ ρ^{-ν} I_{ν+1}(δρ) e^{-δa}`.
fn radial_i_derivative(dimension: u32, delta: f64, rho: f64, anchor: f64) -> Result<f64> {
    let nu = radial_order(dimension);
    if rho == 0.0 {
        return Ok(0.0);
    }
    Ok(delta
        * rho.powf(-nu.value())
        * bessel_i_scaled(nu.succ(), delta * rho)?
        * (delta * (rho - anchor)).exp())
}

/// `ρ^{-ν} K_ν(δρ) e^{δa}` with anchor `a ≤ ρ`.
fn radial_k(dimension: u32, delta: f64, rho: f64, anchor: f64) -> Result<f64> {
    let nu = radial_order(dimension);
    Ok(rho.powf(-nu.value()) * bessel_k_scaled(nu, delta * rho)? * (delta * (anchor - rho)).exp())
}

/// `d/dρ [ρ^{-ν} K_ν(δρ)] e^{δa} = -δ ρ^{-ν} K_{ν+1}(δρ) e^{δa}`.
fn radial_k_derivative(dimension: u32, delta: f64, rho: f64, anchor: f64) -> Result<f64> {
    let nu = radial_order(dimension);
    Ok(-delta
        * rho.powf(-nu.value())
        * bessel_k_scaled(nu.succ(), delta * rho)?
        * (delta * (anchor - rho)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub dimension: u32,
    pub radius: f64,
    pub delta: f64,
}

impl BallSpec {
    pub fn new(dimension: u32, radius: f64, delta: f64) -> Result<Self> {
        let spec = Self {
            dimension,
            radius,
            delta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_dimension(self.dimension)?;
        check_positive("radius", self.radius)?;
        check_positive("delta", self.delta)
    }
}

/// Radial torsion function of the ball at distance `rho` from the center.
pub fn ball_torsion_function(spec: &BallSpec, rho: f64) -> Result<f64> {
    spec.validate()?;
    if !(0.0..=spec.radius).contains(&rho) {
        return Err(Error::Domain(format!(
            "radius {rho} outside [0, {}]",
            spec.radius
        )));
    }
    let (n, d, r) = (spec.dimension, spec.delta, spec.radius);
    Ok(radial_i(n, d, rho, r)? / radial_i_derivative(n, d, r, r)?)
}

/// Radial derivative `u'(ρ)`; equals 1 on the boundary.
pub fn ball_torsion_derivative(spec: &BallSpec, rho: f64) -> Result<f64> {
    spec.validate()?;
    let (n, d, r) = (spec.dimension, spec.delta, spec.radius);
    Ok(radial_i_derivative(n, d, rho, r)? / radial_i_derivative(n, d, r, r)?)
}

pub fn ball_rigidity(spec: &BallSpec) -> Result<f64> {
    let n = spec.dimension;
    let boundary = unit_sphere_area(n) * spec.radius.powi(n as i32 - 1);
    Ok(boundary * ball_torsion_function(spec, spec.radius)?)
}

/// First modified Steklov eigenvalue of the ball, from the radial mode:
/// `δ I_{N/2}(δR) / I_{N/2-1}(δR)`.
pub fn ball_steklov_sigma1(spec: &BallSpec) -> Result<f64> {
    spec.validate()?;
    let nu = radial_order(spec.dimension);
    let z = spec.delta * spec.radius;
    Ok(spec.delta * bessel_i_scaled(nu.succ(), z)? / bessel_i_scaled(nu, z)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellSpec {
    pub dimension: u32,
    pub inner: f64,
    pub outer: f64,
    pub delta: f64,
}

impl ShellSpec {
    pub fn new(dimension: u32, inner: f64, outer: f64, delta: f64) -> Result<Self> {
        let spec = Self {
            dimension,
            inner,
            outer,
            delta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_dimension(self.dimension)?;
        check_positive("inner radius", self.inner)?;
        check_positive("delta", self.delta)?;
        if !(self.outer > self.inner) || !self.outer.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "shell needs inner < outer, got {} and {}",
                self.inner, self.outer
            )));
        }
        Ok(())
    }

    /// Coefficients `(C, D)` of
    /// `V = C ρ^{-ν} I_ν(δρ) e^{-δR} + D ρ^{-ν} K_ν(δρ) e^{δr}`
    /// fixed by `V'(r) = -1`, `V'(R) = 1`. The exponential weights keep
    /// both columns of the system bounded for large δ.
    pub fn coefficients(&self) -> Result<(f64, f64)> {
        self.validate()?;
        let (n, d) = (self.dimension, self.delta);
        let (r, big_r) = (self.inner, self.outer);
        let a11 = radial_i_derivative(n, d, r, big_r)?;
        let a12 = radial_k_derivative(n, d, r, r)?;
        let a21 = radial_i_derivative(n, d, big_r, big_r)?;
        let a22 = radial_k_derivative(n, d, big_r, r)?;
        let det = a11 * a22 - a12 * a21;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Domain("singular shell system".into()));
        }
        let c = (-a22 - a12) / det;
        let dd = (a11 + a21) / det;
        Ok((c, dd))
    }
}

pub fn shell_torsion_function(spec: &ShellSpec, rho: f64) -> Result<f64> {
    check_shell_radius(spec, rho)?;
    let (c, d) = spec.coefficients()?;
    let (n, delta) = (spec.dimension, spec.delta);
    Ok(c * radial_i(n, delta, rho, spec.outer)? + d * radial_k(n, delta, rho, spec.inner)?)
}

pub fn shell_torsion_derivative(spec: &ShellSpec, rho: f64) -> Result<f64> {
    check_shell_radius(spec, rho)?;
    let (c, d) = spec.coefficients()?;
    let (n, delta) = (spec.dimension, spec.delta);
    Ok(c * radial_i_derivative(n, delta, rho, spec.outer)?
        + d * radial_k_derivative(n, delta, rho, spec.inner)?)
}

fn check_shell_radius(spec: &ShellSpec, rho: f64) -> Result<()> {
    if !(spec.inner..=spec.outer).contains(&rho) {
        return Err(Error::Domain(format!(
            "radius {rho} outside [{}, {}]",
            spec.inner, spec.outer
        )));
    }
    Ok(())
}

pub fn shell_rigidity(spec: &ShellSpec) -> Result<f64> {
    let n = spec.dimension as i32;
    let inner = spec.inner.powi(n - 1) * shell_torsion_function(spec, spec.inner)?;
    let outer = spec.outer.powi(n - 1) * shell_torsion_function(spec, spec.outer)?;
    Ok(unit_sphere_area(spec.dimension) * (inner + outer))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub half_lengths: Vec<f64>,
    pub delta: f64,
}

impl BoxSpec {
    pub fn new(half_lengths: Vec<f64>, delta: f64) -> Result<Self> {
        let spec = Self {
            half_lengths,
            delta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_dimension(self.half_lengths.len() as u32)?;
        for &l in &self.half_lengths {
            check_positive("half length", l)?;
        }
        check_positive("delta", self.delta)
    }

    pub fn dimension(&self) -> usize {
        self.half_lengths.len()
    }

    /// `Π_{j ∉ skip} 2ℓ_j`.
    fn side_product(&self, skip: &[usize]) -> f64 {
        self.half_lengths
            .iter()
            .enumerate()
            .filter(|(j, _)| !skip.contains(j))
            .map(|(_, &l)| 2.0 * l)
            .product()
    }
}

pub fn box_torsion_function(spec: &BoxSpec, x: &[f64]) -> Result<f64> {
    spec.validate()?;
    if x.len() != spec.dimension() {
        return Err(Error::Domain(format!(
            "point has {} coordinates, box has dimension {}",
            x.len(),
            spec.dimension()
        )));
    }
    let d = spec.delta;
    let mut u = 0.0;
    for (&xi, &l) in x.iter().zip(&spec.half_lengths) {
        if xi.abs() > l * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "coordinate {xi} outside [-{l}, {l}]"
            )));
        }
        u += (d * xi).cosh() / (d * (d * l).sinh());
    }
    Ok(u)
}

/// Face term plus edge term for every axis:
/// `Σ_k [ |Σ_k| / (δ tanh δℓ_k) + Σ_{i≠k} |Σ_{k,i}| / δ² ]`.
pub fn box_rigidity(spec: &BoxSpec) -> Result<f64> {
    spec.validate()?;
    let d = spec.delta;
    let n = spec.dimension();
    let mut t = 0.0;
    for k in 0..n {
        let faces = 2.0 * spec.side_product(&[k]);
        t += faces / (d * (d * spec.half_lengths[k]).tanh());
        for i in (0..n).filter(|&i| i != k) {
            t += 4.0 * spec.side_product(&[i, k]) / (d * d);
        }
    }
    Ok(t)
}

/// `α(δ) = 1 / (δ tanh δ)`, the optimal constant of the slab profile.
pub fn slab_alpha(delta: f64) -> Result<f64> {
    check_positive("delta", delta)?;
    Ok(1.0 / (delta * delta.tanh()))
}

/// Maximiser `u_I(t) = (cosh(δt)/tanh δ - sinh(δt)) / δ` on `[0, 1]`;
/// `u_I(0) = α(δ)` and `u_I'(1) = 0`.
pub fn slab_profile(delta: f64, t: f64) -> Result<f64> {
    check_positive("delta", delta)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("slab coordinate {t} outside [0, 1]")));
    }
    Ok(((delta * t).cosh() / delta.tanh() - (delta * t).sinh()) / delta)
}

/// A δ-independent closed-form geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum ExactDomain {
    Ball {
        dimension: u32,
        radius: f64,
    },
    Shell {
        dimension: u32,
        inner_radius: f64,
        outer_radius: f64,
    },
    Box {
        half_lengths: Vec<f64>,
    },
}

impl ExactDomain {
    pub fn dimension(&self) -> u32 {
        match self {
            ExactDomain::Ball { dimension, .. } | ExactDomain::Shell { dimension, .. } => {
                *dimension
            }
            ExactDomain::Box { half_lengths } => half_lengths.len() as u32,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ExactDomain::Ball { dimension, radius } => {
                BallSpec::new(*dimension, *radius, 1.0).map(|_| ())
            }
            ExactDomain::Shell {
                dimension,
                inner_radius,
                outer_radius,
            } => ShellSpec::new(*dimension, *inner_radius, *outer_radius, 1.0).map(|_| ()),
            ExactDomain::Box { half_lengths } => {
                BoxSpec::new(half_lengths.clone(), 1.0).map(|_| ())
            }
        }
    }

    pub fn rigidity(&self, delta: f64) -> Result<f64> {
        match self {
            ExactDomain::Ball { dimension, radius } => {
                ball_rigidity(&BallSpec::new(*dimension, *radius, delta)?)
            }
            ExactDomain::Shell {
                dimension,
                inner_radius,
                outer_radius,
            } => shell_rigidity(&ShellSpec::new(
                *dimension,
                *inner_radius,
                *outer_radius,
                delta,
            )?),
            ExactDomain::Box { half_lengths } => {
                box_rigidity(&BoxSpec::new(half_lengths.clone(), delta)?)
            }
        }
    }

    /// Lebesgue measure `|Ω|`.
    pub fn volume(&self) -> f64 {
        match self {
            ExactDomain::Ball { dimension, radius } => {
                unit_ball_volume(*dimension) * radius.powi(*dimension as i32)
            }
            ExactDomain::Shell {
                dimension,
                inner_radius,
                outer_radius,
            } => {
                let n = *dimension as i32;
                unit_ball_volume(*dimension) * (outer_radius.powi(n) - inner_radius.powi(n))
            }
            ExactDomain::Box { half_lengths } => half_lengths.iter().map(|l| 2.0 * l).product(),
        }
    }

    /// Boundary measure `H^{N-1}(∂Ω)`.
    pub fn surface(&self) -> f64 {
        match self {
            ExactDomain::Ball { dimension, radius } => {
                unit_sphere_area(*dimension) * radius.powi(*dimension as i32 - 1)
            }
            ExactDomain::Shell {
                dimension,
                inner_radius,
                outer_radius,
            } => {
                let n = *dimension as i32;
                unit_sphere_area(*dimension) * (outer_radius.powi(n - 1) + inner_radius.powi(n - 1))
            }
            ExactDomain::Box { half_lengths } => {
                let spec = BoxSpec {
                    half_lengths: half_lengths.clone(),
                    delta: 1.0,
                };
                (0..half_lengths.len())
                    .map(|k| 2.0 * spec.side_product(&[k]))
                    .sum()
            }
        }
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self, ExactDomain::Shell { .. })
    }

    /// Radius of the largest inscribed ball.
    pub fn inradius(&self) -> f64 {
        match self {
            ExactDomain::Ball { radius, .. } => *radius,
            ExactDomain::Shell {
                inner_radius,
                outer_radius,
                ..
            } => 0.5 * (outer_radius - inner_radius),
            ExactDomain::Box { half_lengths } => {
                half_lengths.iter().cloned().fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Scaled copy `tΩ`.
    pub fn scaled(&self, t: f64) -> Self {
        match self {
            ExactDomain::Ball { dimension, radius } => ExactDomain::Ball {
                dimension: *dimension,
                radius: radius * t,
            },
            ExactDomain::Shell {
                dimension,
                inner_radius,
                outer_radius,
            } => ExactDomain::Shell {
                dimension: *dimension,
                inner_radius: inner_radius * t,
                outer_radius: outer_radius * t,
            },
            ExactDomain::Box { half_lengths } => ExactDomain::Box {
                half_lengths: half_lengths.iter().map(|l| l * t).collect(),
            },
        }
    }
}
