//! Saddle-point expansions: partial Bell polynomials, the coefficients `α_s`,
//! the auxiliary function families, and the coefficient families of the
//! first wave and the Farey-class sums.

mod aux;
mod bell;
mod expansion;
mod local;
mod saddle;

pub use aux::{aux_eval, aux_series, AuxArgs, AuxFamily};
pub use bell::{alpha, bell_partial, bell_table, gamma_half, SeriesPair};
pub use expansion::{
    closed_a0, closed_a1, expansion_coeffs, expansion_eval, sine_wave_form, ExpansionCoeffs, Family, Scale,
};
pub use saddle::{amplitude_series, f_e_series, phase_series, Amplitude, Phase};
