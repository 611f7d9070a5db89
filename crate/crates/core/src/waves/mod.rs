//! Sylvester waves `W_k(N,n)`, the residues they are built from, and their exact forms.

mod apostol;
mod denumerant;
mod exact;
mod poly;
mod precision;
mod residue;
mod routes;

pub use apostol::{apostol_beta, apostol_beta_roots, apostol_beta_stirling};
pub use denumerant::{wave_denumerant, Denumerant};
pub use exact::{closed_small, glaisher_w1_exact, prime_closed, wave_exact_w1};
pub use poly::{interpolate, poly_eval, rationalize, wave_poly, wave_poly_closed, WavePolySet};
pub use precision::{extra_bits, log10_coeff_exp_majorant, MAJORANT_BITS};
pub use residue::{
    class_power_sums, exp_series_coeff, exp_two_pi_i_sigma, q_eval, q_residue, roots_of_unity, simple_pole_residue,
    two_pi_i, QResidue, ResidueMethod,
};
pub use routes::{apostol_series, wave, wave_verified, waves_sum, WaveRoute};
