//! Modified Bessel functions `I_α`, `K_α` for integer and half-integer
//! orders, and the Gamma function at positive integers and half-integers.
//!
//! Orders are stored as twice their value so that integer and
//! half-integer orders compare exactly.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument `I_α` is summed from the ascending series.
pub const SERIES_CROSSOVER: f64 = 15.0;

/// Above this argument `K_0`, `K_1` switch from the logarithmic series to
/// Steed's continued fraction.
const K_SERIES_LIMIT: f64 = 2.0;

/// Order of a modified Bessel function, stored as `2α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BesselOrder {
    twice: i32,
}

impl BesselOrder {
    /// Smallest admissible `2α`; more negative orders are rejected.
    pub const MIN_TWICE: i32 = -2;

    pub fn from_twice(twice: i32) -> Result<Self> {
        if twice < Self::MIN_TWICE {
            return Err(Error::UnsupportedOrder(twice as f64 / 2.0));
        }
        Ok(Self { twice })
    }

    pub fn integer(n: i32) -> Result<Self> {
        Self::from_twice(2 * n)
    }

    /// Order `N/2`, as used by the radial closed forms in dimension `N`.
    pub fn half(n: i32) -> Result<Self> {
        Self::from_twice(n)
    }

    /// Accepts any real that is an exact multiple of one half.
    pub fn from_f64(alpha: f64) -> Result<Self> {
        let twice = 2.0 * alpha;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 1e6 {
            return Err(Error::UnsupportedOrder(alpha));
        }
        Self::from_twice(twice as i32)
    }

    pub fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// `α + 1`.
    pub fn succ(self) -> Self {
        Self {
            twice: self.twice + 2,
        }
    }

    fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }
}

/// `Γ(x)` for `x = twice_arg / 2 > 0`, by recursion from `Γ(1) = 1` and
/// `Γ(1/2) = √π`.
pub fn gamma_half(twice_arg: i32) -> Result<f64> {
    if twice_arg <= 0 {
        return Err(Error::Domain(format!(
            "gamma is only provided at positive integers and half-integers, got {}",
            twice_arg as f64 / 2.0
        )));
    }
    let (mut x, mut g) = if twice_arg % 2 == 0 {
        (1.0, 1.0)
    } else {
        (0.5, PI.sqrt())
    };
    let target = twice_arg as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    Ok(g)
}

fn check_argument(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel functions need a finite positive argument, got {z}"
        )));
    }
    Ok(())
}

/// Modified Bessel function of the first kind `I_α(z)`, `z > 0`.
///
/// Negative integer orders are reflected (`I_{-n} = I_n`); the order `-1/2`
/// is evaluated directly since the series is valid there.
pub fn bessel_i(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    let order = if order.twice < 0 && order.is_integer() {
        order.abs()
    } else {
        order
    };
    let alpha = order.value();
    if z <= SERIES_CROSSOVER.max(alpha * alpha) {
        bessel_i_series(order, z)
    } else {
        Ok(bessel_i_asymptotic(alpha, z) * z.exp())
    }
}

/// `e^{-z} I_α(z)`, finite for arguments where `I_α` overflows.
pub fn bessel_i_scaled(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    let order = if order.twice < 0 && order.is_integer() {
        order.abs()
    } else {
        order
    };
    let alpha = order.value();
    if z <= SERIES_CROSSOVER.max(alpha * alpha) {
        Ok(bessel_i_series(order, z)? * (-z).exp())
    } else {
        Ok(bessel_i_asymptotic(alpha, z))
    }
}

/// Ascending series `Σ (z/2)^{2k+α} / (k! Γ(k+α+1))`.
pub(crate) fn bessel_i_series(order: BesselOrder, z: f64) -> Result<f64> {
    let alpha = order.value();
    let half = 0.5 * z;
    let mut term = half.powf(alpha) / gamma_half(order.twice + 2)?;
    let q = half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + alpha));
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    Ok(sum)
}

/// Hankel large-argument expansion
/// `e^{-z} I_α(z) ~ 1 / √(2πz) Σ (-1)^k a_k(α) z^{-k}`, truncated at the
/// smallest term.
pub(crate) fn bessel_i_asymptotic(alpha: f64, z: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * z);
        if term == 0.0 {
            break;
        }
        if term.abs() >= last {
            break;
        }
        sum += term;
        last = term.abs();
        if last < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * z).sqrt()
}

/// Integer-order `I_n(z)` by Miller's backward recurrence normalised with
/// `e^z = I_0 + 2 Σ_{k≥1} I_k`. Independent of the series and asymptotic
/// paths; used to cross-check them.
pub fn bessel_i_miller(n: u32, z: f64) -> Result<f64> {
    check_argument(z)?;
    if z > 700.0 {
        return Err(Error::Domain(format!(
            "Miller recurrence overflows at z = {z}"
        )));
    }
    let start = 2 * ((n as usize).max(z.ceil() as usize) + 40 + (6.0 * z.sqrt()) as usize);
    let mut above = 0.0_f64;
    let mut current = 1e-300_f64;
    let mut norm = 0.0_f64;
    let mut wanted = 0.0_f64;
    for k in (1..=start).rev() {
        // current = I_k, above = I_{k+1} (unnormalised)
        let below = above + (2.0 * k as f64 / z) * current;
        above = current;
        current = below;
        if k - 1 == n as usize {
            wanted = current;
        }
        norm += 2.0 * above;
        if current > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    norm += current;
    if n == 0 {
        wanted = current;
    }
    Ok(wanted / norm * z.exp())
}

/// Modified Bessel function of the second kind `K_α(z)`, `z > 0`.
///
/// Half-integer orders use the terminating elementary forms; `K_0`, `K_1`
/// the logarithmic series (small `z`) or Steed's continued fraction; integer
/// orders `n ≥ 2` the forward recurrence `K_{n+1} = K_{n-1} + (2n/z) K_n`.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<f64> {
    Ok(bessel_k_scaled(order, z)? * (-z).exp())
}

/// `e^{z} K_α(z)`, nonzero for arguments where `K_α` underflows.
pub fn bessel_k_scaled(order: BesselOrder, z: f64) -> Result<f64> {
    check_argument(z)?;
    let order = order.abs();
    if !order.is_integer() {
        return Ok(bessel_k_half_integer((order.twice - 1) / 2, z));
    }
    let (k0, k1) = bessel_k01_scaled(z);
    let n = order.twice / 2;
    match n {
        0 => Ok(k0),
        1 => Ok(k1),
        _ => {
            let (mut prev, mut cur) = (k0, k1);
            for j in 1..n {
                let next = prev + (2.0 * j as f64 / z) * cur;
                prev = cur;
                cur = next;
            }
            Ok(cur)
        }
    }
}

/// `e^z K_{m+1/2}(z) = √(π/2z) Σ_{k=0}^{m} (m+k)! / (k! (m-k)! (2z)^k)`.
fn bessel_k_half_integer(m: i32, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // (m+k)! / (k! (m-k)!) / (2z)^k
    for k in 0..=m {
        if k > 0 {
            let kf = k as f64;
            coeff *= (m as f64 + kf) * (m as f64 - kf + 1.0) / (kf * 2.0 * z);
        }
        sum += coeff;
    }
    (PI / (2.0 * z)).sqrt() * sum
}

/// `(e^z K_0(z), e^z K_1(z))`.
fn bessel_k01_scaled(z: f64) -> (f64, f64) {
    if z <= K_SERIES_LIMIT {
        let (k0, k1) = bessel_k01_series(z);
        (k0 * z.exp(), k1 * z.exp())
    } else {
        bessel_k01_steed(z)
    }
}

fn bessel_k01_series(z: f64) -> (f64, f64) {
    let q = 0.25 * z * z;
    let log_half = (0.5 * z).ln();
    let i0 = bessel_i_series(BesselOrder { twice: 0 }, z).unwrap_or(f64::NAN);
    let i1 = bessel_i_series(BesselOrder { twice: 2 }, z).unwrap_or(f64::NAN);

    // K_0 = -(ln(z/2) + γ) I_0 + Σ_{k≥1} H_k q^k / (k!)^2
    let mut s0 = 0.0;
    // K_1 = 1/z + ln(z/2) I_1 - (z/4) Σ_{k≥0} (ψ(k+1) + ψ(k+2)) q^k / (k! (k+1)!)
    let mut s1 = 0.0;
    let mut harmonic = 0.0; // H_k
    let mut t0 = 1.0; // q^k / (k!)^2
    let mut t1 = 1.0; // q^k / (k! (k+1)!)
    for k in 0..200 {
        let kf = k as f64;
        if k > 0 {
            harmonic += 1.0 / kf;
            t0 *= q / (kf * kf);
            t1 *= q / (kf * (kf + 1.0));
        }
        let psi_sum = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (kf + 1.0);
        let d0 = harmonic * t0;
        let d1 = psi_sum * t1;
        s0 += d0;
        s1 += d1;
        if k > 2 && d0.abs() < 1e-18 * s0.abs() && d1.abs() < 1e-18 * s1.abs() {
            break;
        }
    }
    let k0 = -(log_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / z + log_half * i1 - 0.25 * z * s1;
    (k0, k1)
}

/// Steed's continued fraction (Temme's CF2) for `e^z K_0`, `e^z K_1` at `z > 2`.
fn bessel_k01_steed(z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * z)).sqrt() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// Residual of `d/dρ (ρ^{-α} I_α(ρ)) = ρ^{-α} I_{α+1}(ρ)` at `z`, with the
/// derivative taken by a central difference of step `1e-5`.
pub fn bessel_i_derivative_identity_check(order: BesselOrder, z: f64) -> Result<f64> {
    const STEP: f64 = 1e-5;
    check_argument(z)?;
    if z <= STEP {
        return Err(Error::Domain(format!(
            "argument {z} too small for the difference step"
        )));
    }
    let alpha = order.value();
    let g = |rho: f64| -> Result<f64> { Ok(rho.powf(-alpha) * bessel_i(order, rho)?) };
    let derivative = (g(z + STEP)? - g(z - STEP)?) / (2.0 * STEP);
    let rhs = z.powf(-alpha) * bessel_i(order.succ(), z)?;
    Ok((derivative - rhs).abs())
}

/// Volume of the unit ball in `R^N`, `ω_N = π^{N/2} / Γ(N/2 + 1)`.
pub fn unit_ball_volume(dimension: u32) -> f64 {
    let g = gamma_half(dimension as i32 + 2).expect("positive argument");
    PI.powf(dimension as f64 / 2.0) / g
}
