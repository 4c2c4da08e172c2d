//! Nonrelativistic AFM formulas, principal-number models and the auxiliary-field
//! lift from `p²/ν + V` to `σ√(p² + m²) + V`.

mod lift;
mod nmodel;
mod nonrel;

pub use lift::{
    afm_extremize, afm_extremize_with_derivative, default_bracket, lowmass_shift,
    lowmass_shift_from_p2, semirelativistic_lift, LiftResult, NuCharacter, NuSpectrum,
};
pub use nmodel::{NModel, PrincipalNumber, Provenance, QuantumNumbers};
pub use nonrel::{nr_funnel_energy, nr_funnel_energy_alt, nr_powerlaw_energy};

/// Bound character of a semirelativistic AFM energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Upper,
    Unknown,
}
