//! Precision handling shared by every command: significant figures and the doubling rerun.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use sylwave::numerics::{format_real, format_sci, pow10, scalar_format};
use sylwave::{BigComplex, Error, PrecisionContext, Result};

use crate::output::Cell;

/// Settings resolved from the global flags.
#[derive(Clone, Debug)]
pub struct Opts {
    pub ctx: PrecisionContext,
    pub verify: bool,
    pub slow: bool,
    pub sig: Option<usize>,
}

/// Wave cells with `N` at or above this are computed only with `--slow`.
pub const SLOW_N: u64 = 1500;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Plain decimals for moderate exponents, scientific otherwise.
    Auto,
    /// Always scientific, trailing zeros kept.
    Sci,
}

impl Opts {
    /// Largest number of significant figures the working precision supports.
    pub fn max_sig(&self) -> usize {
        (self.ctx.decimal_digits() as usize).saturating_sub(10).max(1)
    }

    /// Requested figures, defaulting to `default` and capped by the precision.
    pub fn sig_or(&self, default: usize) -> usize {
        self.sig.unwrap_or(default).min(self.max_sig())
    }

    /// `f` at working precision; with `--verify` also at doubled precision, failing
    /// when the two disagree beyond `digits − 10` figures.
    pub fn real<F>(&self, style: Style, default_sig: usize, f: F) -> Result<Cell>
    where
        F: Fn(&PrecisionContext) -> Result<Float>,
    {
        let v = f(&self.ctx)?;
        if self.verify {
            let w = f(&self.ctx.doubled())?;
            self.check(&v, &w)?;
        }
        Ok(Cell::float(fmt_real(&v, style, self.sig_or(default_sig)), self.verify))
    }

    /// As `real` for several values computed together.
    pub fn reals<F>(&self, style: Style, default_sig: usize, f: F) -> Result<Vec<Cell>>
    where
        F: Fn(&PrecisionContext) -> Result<Vec<Float>>,
    {
        let v = f(&self.ctx)?;
        if self.verify {
            let w = f(&self.ctx.doubled())?;
            for (a, b) in v.iter().zip(&w) {
                self.check(a, b)?;
            }
        }
        let sig = self.sig_or(default_sig);
        Ok(v.iter().map(|x| Cell::float(fmt_real(x, style, sig), self.verify)).collect())
    }

    pub fn complex<F>(&self, default_sig: usize, f: F) -> Result<Cell>
    where
        F: Fn(&PrecisionContext) -> Result<BigComplex>,
    {
        let v = f(&self.ctx)?;
        if self.verify {
            let w = f(&self.ctx.doubled())?;
            self.check(&v.re, &w.re)?;
            self.check(&v.im, &w.im)?;
        }
        Ok(Cell::float(scalar_format(&v, self.sig_or(default_sig)), self.verify))
    }

    /// As `complex` for several values computed together.
    pub fn complexes<F>(&self, default_sig: usize, f: F) -> Result<Vec<Cell>>
    where
        F: Fn(&PrecisionContext) -> Result<Vec<BigComplex>>,
    {
        let v = f(&self.ctx)?;
        if self.verify {
            let w = f(&self.ctx.doubled())?;
            for (a, b) in v.iter().zip(&w) {
                self.check(&a.re, &b.re)?;
                self.check(&a.im, &b.im)?;
            }
        }
        let sig = self.sig_or(default_sig);
        Ok(v.iter().map(|x| Cell::float(scalar_format(x, sig), self.verify)).collect())
    }

    fn check(&self, a: &Float, b: &Float) -> Result<()> {
        let bits = b.prec();
        let diff = Float::with_val(bits, a - b).abs();
        let scale = Float::with_val(bits, b.abs_ref());
        let tol = pow10(bits, -(self.max_sig() as i64));
        let bound = if scale.is_zero() { tol } else { tol * scale };
        if diff > bound {
            return Err(Error::Precision(format!(
                "value changed by {:e} when the precision was doubled; rerun with --digits {}",
                diff.to_f64(),
                2 * self.ctx.decimal_digits()
            )));
        }
        Ok(())
    }
}

pub fn fmt_real(v: &Float, style: Style, sig: usize) -> String {
    match style {
        Style::Auto => format_real(v, sig),
        Style::Sci => format_sci(v, sig),
    }
}

/// Exact integer, in full or rounded to `sig` figures.
pub fn integer_cell(v: &Integer, sig: Option<usize>) -> Cell {
    match sig {
        None => Cell::exact(v.to_string()),
        Some(s) => {
            let bits = (v.significant_bits() + 64).max(64);
            Cell::exact(format_sci(&Float::with_val(bits, v), s))
        }
    }
}

/// Exact rational as `num/den`.
pub fn rational_cell(v: &Rational) -> Cell {
    Cell::exact(v.to_string())
}

/// Usage error for malformed arguments.
pub fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// `p`, `-p/q` or a decimal such as `0.5`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Ok(q) = t.parse::<Rational>() {
        return Ok(q);
    }
    let neg = t.starts_with('-');
    let body = t.trim_start_matches(['-', '+']);
    if let Some((int, frac)) = body.split_once('.') {
        let digits = format!("{int}{frac}");
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            let num: Integer = digits.parse().map_err(|_| usage(format!("bad rational {s:?}")))?;
            let den = Integer::from(10).pow(frac.len() as u32);
            let q = Rational::from((num, den));
            return Ok(if neg { -q } else { q });
        }
    }
    Err(usage(format!("bad rational {s:?}; expected p, p/q or a decimal")))
}

/// Comma-separated integers and inclusive ranges `a..b` or `a..b:step`.
pub fn parse_list(s: &str) -> Result<Vec<i64>> {
    let bad = || usage(format!("bad list {s:?}; expected items like 1,5,10..20 or 250..700:10"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((a, rest)) = item.split_once("..") {
            let (b, step) = match rest.split_once(':') {
                Some((b, st)) => (b, st.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let a: i64 = a.parse().map_err(|_| bad())?;
            let b: i64 = b.parse().map_err(|_| bad())?;
            if step <= 0 || b < a {
                return Err(bad());
            }
            let mut x = a;
            while x <= b {
                out.push(x);
                x += step;
            }
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Comma-separated rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(parse_rational).collect()
}
