//! Semirelativistic closed-form spectra: power laws, the ultrarelativistic
//! limit, square-root, funnel and Yukawa potentials, scaling laws and the
//! unequal-mass Coulomb case.

mod funnel;
mod powerlaw;
mod scaling;
mod sqrt;
mod types;
mod ultra;
mod unequal;
mod yukawa;

pub use funnel::{sr_funnel_energy, FunnelMode};
pub use powerlaw::{
    coulomb_critical_factor, coulomb_n_for_factor, critical_coupling_powerlaw, sr_powerlaw_energy,
    COULOMB_CRITICAL_GROUND_FACTOR,
};
pub use scaling::{scaling_reduce, scaling_reduce_powerlaw, ScalingFrame};
pub use sqrt::{sqrt_potential_nr_energy, sqrt_potential_ur_energy};
pub use types::{AfmResult, Internals, Kinematics, PotentialSpec};
pub use ultra::{
    nr_dual_of_ur, ur_harmonic_exact, ur_harmonic_wkb, ur_powerlaw_checked, ur_powerlaw_energy,
};
pub use unequal::{two_body_average_lower_bound, unequal_coulomb_massless_energy};
pub use yukawa::{
    critical_height_ratio, critical_height_ratio_inverse, yukawa_critical_height, yukawa_energy,
    yukawa_energy_largemass, yukawa_energy_reduced, yukawa_ground_state_exists, YukawaReduced,
};

use crate::afm::PrincipalNumber;
use crate::error::{domain, Result};

/// AFM energy for any potential family with semirelativistic kinematics.
/// The square-root potential has a closed form only for m = 0.
pub fn afm_energy(pot: &PotentialSpec, kin: Kinematics, n: PrincipalNumber) -> Result<AfmResult> {
    match *pot {
        PotentialSpec::PowerLaw { a, lambda } => sr_powerlaw_energy(a, lambda, kin, n),
        PotentialSpec::Funnel { a, b } => sr_funnel_energy(a, b, kin, n, FunnelMode::Auto),
        PotentialSpec::SquareRoot { a, b } => {
            if kin.mass != 0.0 {
                return Err(domain("mass (square-root potential needs m = 0)", kin.mass));
            }
            sqrt_potential_ur_energy(a, b, kin.sigma, n)
        }
        PotentialSpec::Yukawa { alpha, beta } => yukawa_energy(alpha, beta, kin, n),
    }
}
