//! Root machinery: the F± cubic and G± quartic roots, the W₋₁ Lambert branch,
//! Airy zeros and a bracketed scalar solver.

mod airy;
mod bracket;
mod poly;
mod lambert;

pub use airy::{airy_ai, airy_zero, airy_zero_tol, airy_zero_wkb};
pub use bracket::{bracketed_root, RootBracket};
pub use lambert::{lambert_w_m1, lambert_w_m1_offset, lambert_w_m1_offset_plus_one};
pub use poly::{cubic_f, quartic_g, Sign};
