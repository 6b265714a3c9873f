//! Two-variable hypergroups: direct products (Koornwinder class V) and disc
//! polynomials on ℕ₀².

mod decay;
mod disc;
mod product;

pub use decay::{decay_probe_pairs, decay_report, running_max, DecayReport, DECAY_SLOPE, DECAY_TAIL_MAX};
pub use disc::{
    disc_character, disc_linearize, jacobi_normalized, DiscCharacter, DiscQuadrature, DiscTable, DISC_FILTER,
    DISC_NEGATIVITY,
};
pub use product::{koornwinder_region, koornwinder_to_pair, pair_to_koornwinder, ProductCharacter, ProductTable};
