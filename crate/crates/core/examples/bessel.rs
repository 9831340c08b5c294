//! Modified Bessel functions at integer and half-integer orders, with the
//! derivative identity `(ρ^{-ν} I_ν)' = ρ^{-ν} I_{ν+1}` as a self-check.

use btl::specfun::{
    bessel_i, bessel_i_derivative_identity_check, bessel_k, gamma_half, BesselOrder,
};

fn main() -> btl::Result<()> {
    println!(
        "{:>5} {:>8} {:>24} {:>24} {:>10}",
        "nu", "z", "I_nu(z)", "K_nu(z)", "abs resid"
    );
    for twice in [0, 1, 2, 3, 5] {
        let nu = BesselOrder::from_twice(twice)?;
        for z in [0.1, 1.0, 5.0, 10.0] {
            println!(
                "{:>5} {:>8} {:>24.16e} {:>24.16e} {:>10.1e}",
                nu.value(),
                z,
                bessel_i(nu, z)?,
                bessel_k(nu, z)?,
                bessel_i_derivative_identity_check(nu, z)?
            );
        }
    }
    println!();
    for twice in 1..=7 {
        println!("Gamma({}/2) = {:.16}", twice, gamma_half(twice)?);
    }
    Ok(())
}
