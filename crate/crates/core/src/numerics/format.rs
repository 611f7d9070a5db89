//! Decimal parsing and printing of multiprecision scalars.

use rug::Float;

use super::complex::BigComplex;
use super::context::PrecisionContext;
use crate::error::{Error, Result};

fn parse_real(text: &str, bits: u32) -> Result<Float> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let ok = t
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'));
    if !ok {
        return Err(Error::Parse(format!("malformed number {t:?}")));
    }
    let parsed = Float::parse(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
    let v = Float::with_val(bits, parsed);
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite number {t:?}")));
    }
    Ok(v)
}

/// Parse a real decimal string at the context's precision.
pub fn real_parse(text: &str, ctx: &PrecisionContext) -> Result<Float> {
    parse_real(text, ctx.bits())
}

/// Parse `a`, `a+bi`, `a-bi`, `bi` or `i` forms with optional exponents.
pub fn scalar_parse(text: &str, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits();
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(BigComplex::from_real(parse_real(&t, bits)?));
    };
    // locate the sign that separates real and imaginary parts
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx];
        if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let imag_of = |s: &str| -> Result<Float> {
        match s {
            "" | "+" => Ok(Float::with_val(bits, 1)),
            "-" => Ok(Float::with_val(bits, -1)),
            _ => parse_real(s, bits),
        }
    };
    match split {
        Some(idx) => {
            let re = parse_real(&body[..idx], bits)?;
            let im = imag_of(&body[idx..])?;
            Ok(BigComplex::new(re, im))
        }
        None => Ok(BigComplex::new(Float::new(bits), imag_of(body)?)),
    }
}

/// Scientific or plain decimal with `sig` significant digits.
pub fn format_real(x: &Float, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, digits, exp) = x.to_sign_string_exp(10, Some(sig));
    let exp = exp.unwrap_or(0) as i64; // value = 0.digits × 10^exp
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if neg { "-" } else { "" };
    let sci_exp = exp - 1;
    if (-4..=21).contains(&sci_exp) {
        let mut s = String::new();
        if exp <= 0 {
            s.push_str("0.");
            for _ in 0..(-exp) {
                s.push('0');
            }
            s.push_str(digits);
        } else {
            let e = exp as usize;
            if digits.len() <= e {
                s.push_str(digits);
                for _ in digits.len()..e {
                    s.push('0');
                }
            } else {
                s.push_str(&digits[..e]);
                s.push('.');
                s.push_str(&digits[e..]);
            }
        }
        format!("{sign}{s}")
    } else {
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{sci_exp}")
        } else {
            format!("{sign}{head}.{tail}e{sci_exp}")
        }
    }
}

/// Always-scientific form `d.ddd×10^e` printed as `d.ddde<e>`.
pub fn format_sci(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let (neg, digits, exp) = x.to_sign_string_exp(10, Some(sig.max(1)));
    let sci_exp = exp.unwrap_or(0) as i64 - 1;
    let sign = if neg { "-" } else { "" };
    let (head, tail) = digits.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{sci_exp}")
    } else {
        format!("{sign}{head}.{tail}e{sci_exp}")
    }
}

/// `re±imi` with `sig` significant digits per component.
pub fn scalar_format(z: &BigComplex, sig: usize) -> String {
    let re = format_real(&z.re, sig);
    if z.im.is_zero() {
        return re;
    }
    let im = format_real(&z.im, sig);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}
