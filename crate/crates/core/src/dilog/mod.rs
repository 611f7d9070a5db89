//! Dilogarithm, Clausen's integral, zeros of the continued dilogarithm and saddle points.

mod li2;
mod zeros;

pub(crate) use li2::li2_bits;
pub use li2::{clausen, clausen_cont, exp_two_pi_i, li2, pd};
pub use zeros::{dilog_zero, reduce_angle, saddle_point, wave_constants, DilogZero, SaddlePoint, WaveConstants};
