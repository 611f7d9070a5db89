//! Multiprecision real/complex scalars and truncated power series.

mod complex;
mod context;
mod format;
mod series;

pub use complex::BigComplex;
pub use context::{digits_to_bits, log10_abs, pi, pow10, PrecisionContext};
pub use format::{format_real, format_sci, real_parse, scalar_format, scalar_parse};
pub use series::{mul_coeffs, SeriesOp, TruncatedSeries};
