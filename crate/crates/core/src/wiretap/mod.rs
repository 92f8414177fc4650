//! Coset coding over Construction A packings: the decomposition A = B ⊕ C,
//! the eavesdropper's correct-decision bound and a Monte Carlo check of it.

mod scheme;
mod sim;

pub use scheme::{
    check_unique_decomposition, find_linear_b, load_scheme, CosetScheme, DecompositionCheck, DecompositionFailure,
    SchemeFile,
};
pub use sim::{eve_bound, simulate_wiretap, wilson_interval, SimOptions, WiretapResult, MAX_SIM_N, MIN_TRIALS};
