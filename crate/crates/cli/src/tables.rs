//! Reproduction of the published tables and the plotted ratio dataset.

use std::str::FromStr;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use sylwave::asymptotics::{expansion_coeffs, expansion_eval, ExpansionCoeffs, Family};
use sylwave::combinatorics::partition_p;
use sylwave::waves::{wave, wave_exact_w1, WaveRoute};
use sylwave::wavesums::{sum_a1, sum_c, sum_d1, sum_e1};
use sylwave::{Error, PrecisionContext, Result};

use crate::eval::{integer_cell, Opts, Style, SLOW_N};
use crate::output::{Cell, Report};

/// Figures printed in table cells unless `--sig` asks otherwise.
pub const TABLE_SIG: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    FirstWaveSizes,
    PnVsW1,
    W1Approx,
    A1Approx,
    C2Approx,
    C2StarApprox,
    D1Approx,
    E1Approx,
    Pn2n,
    W2Conjecture,
    W1Ratio,
}

impl TableId {
    pub const ALL: [TableId; 11] = [
        Self::FirstWaveSizes,
        Self::PnVsW1,
        Self::W1Approx,
        Self::A1Approx,
        Self::C2Approx,
        Self::C2StarApprox,
        Self::D1Approx,
        Self::E1Approx,
        Self::Pn2n,
        Self::W2Conjecture,
        Self::W1Ratio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::FirstWaveSizes => "first_wave_sizes",
            Self::PnVsW1 => "pn_vs_w1",
            Self::W1Approx => "w1_approx",
            Self::A1Approx => "a1_approx",
            Self::C2Approx => "c2_approx",
            Self::C2StarApprox => "c2star_approx",
            Self::D1Approx => "d1_approx",
            Self::E1Approx => "e1_approx",
            Self::Pn2n => "pn2n",
            Self::W2Conjecture => "w2_conjecture",
            Self::W1Ratio => "w1_ratio",
        }
    }

    pub fn caption(self) -> &'static str {
        match self {
            Self::FirstWaveSizes => "Relative sizes of the first waves",
            Self::PnVsW1 => "Comparing p(n), W_1(n,n) and the asymptotics",
            Self::W1Approx => "Expansions of W_1(N, lambda N) with m terms",
            Self::A1Approx => "Expansions of A_1(N, -lambda N) with m terms, and the direct sum",
            Self::C2Approx => "Expansions of C_2(N, -lambda N) with m terms, and the direct sum",
            Self::C2StarApprox => "Expansions of C*_2(N, -lambda N) with m terms, and the direct sum",
            Self::D1Approx => "Expansions of D_1(N, -lambda N) with m terms, and the direct residue sum",
            Self::E1Approx => "Expansions of E_1(N, -lambda N) with m terms, and the direct sum",
            Self::Pn2n => "Comparing p_N(2N), W_1(N,2N) and the asymptotics",
            Self::W2Conjecture => "(-1)^(N+1) times the D_1 expansion against W_2(N, lambda N)",
            Self::W1Ratio => "The function 1 - W_1(n,n)/p(n), scaled by 10^10",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|t| t.name()).collect();
                Error::Usage(format!("unknown table {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Which table, and optional overrides of its rows, lambda values and m columns.
#[derive(Clone, Debug)]
pub struct TableSpec {
    pub id: TableId,
    pub rows: Option<Vec<i64>>,
    pub lambdas: Option<Vec<Rational>>,
    pub ms: Option<Vec<usize>>,
    /// w1_ratio only: take W_1 from the exact rational formula.
    pub exact: bool,
}

impl TableSpec {
    pub fn new(id: TableId) -> Self {
        Self { id, rows: None, lambdas: None, ms: None, exact: false }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn lambda_label(l: &Rational) -> String {
    l.to_string()
}

fn positive(rows: &[i64], what: &str) -> Result<Vec<u64>> {
    rows.iter()
        .map(|&r| u64::try_from(r).ok().filter(|&v| v >= 1).ok_or_else(|| Error::Usage(format!("{what} must be positive, got {r}"))))
        .collect()
}

/// `λN` as an integer, or a usage error when it is not one.
fn lambda_times(l: &Rational, big_n: u64) -> Result<i64> {
    let v = Rational::from(l * Integer::from(big_n));
    if *v.denom() != 1 {
        return Err(Error::Usage(format!("lambda*N must be an integer, got {l}*{big_n}")));
    }
    v.numer().to_i64().ok_or_else(|| Error::Usage("lambda*N out of range".into()))
}

pub fn run_table(spec: &TableSpec, opts: &Opts) -> Result<Report> {
    let mut report = match spec.id {
        TableId::FirstWaveSizes => first_wave_sizes(spec, opts)?,
        TableId::PnVsW1 => pn_vs_w1(spec, opts)?,
        TableId::W1Approx => expansion_table(spec, opts, Kind::W1)?,
        TableId::A1Approx => expansion_table(spec, opts, Kind::A1)?,
        TableId::C2Approx => expansion_table(spec, opts, Kind::C2)?,
        TableId::C2StarApprox => expansion_table(spec, opts, Kind::C2Star)?,
        TableId::D1Approx => expansion_table(spec, opts, Kind::D1)?,
        TableId::E1Approx => expansion_table(spec, opts, Kind::E1)?,
        TableId::Pn2n => pn2n(spec, opts)?,
        TableId::W2Conjecture => expansion_table(spec, opts, Kind::W2)?,
        TableId::W1Ratio => w1_ratio(spec, opts)?,
    };
    report.caption = Some(spec.id.caption().to_string());
    Ok(report)
}

fn wave_cell(opts: &Opts, k: u64, big_n: u64, n: i64) -> Result<Cell> {
    if big_n >= SLOW_N && !opts.slow {
        return Ok(Cell::skipped());
    }
    opts.real(Style::Sci, TABLE_SIG, |c| wave(k, big_n, n, c, WaveRoute::Auto))
}

fn first_wave_sizes(spec: &TableSpec, opts: &Opts) -> Result<Report> {
    let rows = positive(spec.rows.as_deref().unwrap_or(&[1000, 1500, 2000]), "n")?;
    let mut r = Report::new(&["n"], &["W_1(n,n)", "W_2(n,n)", "W_3(n,n)", "W_4(n,n)"]);
    let cells: Vec<Result<Vec<Cell>>> = rows
        .par_iter()
        .map(|&n| (1..=4u64).map(|k| wave_cell(opts, k, n, n as i64)).collect())
        .collect();
    for (n, c) in rows.iter().zip(cells) {
        r.push(vec![n.to_string()], c?);
    }
    Ok(r)
}

/// `Re[a_0(λ) w_0^{−N}/N²]`, the one-term expansion of the first wave.
fn leading_cell(opts: &Opts, lambda: &Rational, big_n: u64) -> Result<Cell> {
    opts.real(Style::Sci, TABLE_SIG, |c| {
        let ec = expansion_coeffs(Family::A, lambda, 1, c)?;
        expansion_eval(&ec, big_n, c)
    })
}

fn pn_vs_w1(spec: &TableSpec, opts: &Opts) -> Result<Report> {
    let default: Vec<i64> = (1200..=1800).step_by(100).collect();
    let rows = positive(spec.rows.as_deref().unwrap_or(&default), "n")?;
    let mut r = Report::new(&["n"], &["p(n)", "W_1(n,n)", "asymptotic"]);
    let sig = opts.sig_or(3);
    let one = q(1, 1);
    let cells: Vec<Result<Vec<Cell>>> = rows
        .par_iter()
        .map(|&n| {
            Ok(vec![
                integer_cell(&partition_p(n), Some(sig)),
                wave_cell(opts, 1, n, n as i64)?,
                leading_cell(opts, &one, n)?,
            ])
        })
        .collect();
    for (n, c) in rows.iter().zip(cells) {
        r.push(vec![n.to_string()], c?);
    }
    Ok(r)
}

/// `p_N(2N) = p(2N) − Σ_{m<N} p(m)`.
pub fn pn_of_2n(big_n: u64) -> Integer {
    let mut v = partition_p(2 * big_n);
    for m in 0..big_n {
        v -= partition_p(m);
    }
    v
}

fn pn2n(spec: &TableSpec, opts: &Opts) -> Result<Report> {
    let default: Vec<i64> = (2700..=3300).step_by(100).collect();
    let rows = positive(spec.rows.as_deref().unwrap_or(&default), "N")?;
    let mut r = Report::new(&["N"], &["p_N(2N)", "W_1(N,2N)", "asymptotic"]);
    let sig = opts.sig_or(3);
    let two = q(2, 1);
    let cells: Vec<Result<Vec<Cell>>> = rows
        .par_iter()
        .map(|&big_n| {
            Ok(vec![
                integer_cell(&pn_of_2n(big_n), Some(sig)),
                wave_cell(opts, 1, big_n, 2 * big_n as i64)?,
                leading_cell(opts, &two, big_n)?,
            ])
        })
        .collect();
    for (n, c) in rows.iter().zip(cells) {
        r.push(vec![n.to_string()], c?);
    }
    Ok(r)
}

fn w1_ratio(spec: &TableSpec, opts: &Opts) -> Result<Report> {
    let default: Vec<i64> = (275..=700).collect();
    let rows = positive(spec.rows.as_deref().unwrap_or(&default), "n")?;
    let mut r = Report::new(&["n"], &["1-W_1(n,n)/p(n) x 1e10"]);
    let sig = opts.sig_or(TABLE_SIG);
    let cells: Vec<Result<Cell>> = rows
        .par_iter()
        .map(|&n| {
            if spec.exact {
                let bits = opts.ctx.bits();
                let ratio = wave_exact_w1(n, n as i64) / partition_p(n);
                let v = (Float::with_val(bits, 1) - Float::with_val(bits, &ratio)) * 1e10f64;
                Ok(Cell::exact(crate::eval::fmt_real(&v, Style::Sci, sig)))
            } else {
                opts.real(Style::Sci, TABLE_SIG, |c| w1_ratio_value(n, c))
            }
        })
        .collect();
    for (n, c) in rows.iter().zip(cells) {
        r.push(vec![n.to_string()], vec![c?]);
    }
    Ok(r)
}

/// `(1 − W_1(n,n)/p(n))·10¹⁰` with `W_1` by the default wave route.
pub fn w1_ratio_value(n: u64, c: &PrecisionContext) -> Result<Float> {
    let w = wave(1, n, n as i64, c, WaveRoute::Auto)?;
    let p = Float::with_val(c.bits(), &partition_p(n));
    Ok((Float::with_val(c.bits(), 1) - w / p) * 1e10f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    W1,
    A1,
    C2,
    C2Star,
    D1,
    E1,
    W2,
}

impl Kind {
    fn family(self, big_n: u64) -> Family {
        match self {
            Self::W1 | Self::A1 => Family::A,
            Self::C2 => Family::C,
            Self::C2Star => Family::CStar,
            Self::D1 | Self::W2 => Family::d_for(big_n),
            Self::E1 => Family::E,
        }
    }

    fn defaults(self) -> (Vec<i64>, Vec<Rational>) {
        match self {
            Self::W1 => (vec![3300], vec![q(1, 3), q(1, 1), q(2, 1)]),
            Self::D1 => (vec![1200, 1203], vec![q(1, 3), q(1, 1), q(2, 1)]),
            Self::W2 => (vec![3000], vec![q(1, 3), q(1, 1), q(5, 3)]),
            _ => (vec![1200], vec![q(1, 3), q(1, 1), q(2, 1)]),
        }
    }

    fn last_column(self) -> &'static str {
        match self {
            Self::W1 => "W_1(N,lambda N)",
            Self::A1 => "A_1(N,-lambda N)",
            Self::C2 => "C_2(N,-lambda N)",
            Self::C2Star => "C*_2(N,-lambda N)",
            Self::D1 => "D_1(N,-lambda N)",
            Self::E1 => "E_1(N,-lambda N)",
            Self::W2 => "W_2(N,lambda N)",
        }
    }

    /// The directly computed quantity that the expansion approximates.
    fn direct(self, opts: &Opts, big_n: u64, n: i64) -> Result<Cell> {
        let sigma = -n;
        let sum = |f: fn(u64, i64, &PrecisionContext) -> Result<Float>| {
            opts.real(Style::Sci, TABLE_SIG, move |c| f(big_n, sigma, c))
        };
        match self {
            Self::W1 => wave_cell(opts, 1, big_n, n),
            Self::W2 => wave_cell(opts, 2, big_n, n),
            Self::A1 => sum(|b, s, c| Ok(sum_a1(b, s, c)?.value)),
            Self::C2 => sum(|b, s, c| Ok(sum_c(b, s, c)?.0.value)),
            Self::C2Star => sum(|b, s, c| Ok(sum_c(b, s, c)?.1.value)),
            Self::D1 => sum(|b, s, c| Ok(sum_d1(b, s, c)?.value)),
            Self::E1 => sum(|b, s, c| Ok(sum_e1(b, s, c)?.value)),
        }
    }
}

fn truncated(ec: &ExpansionCoeffs, m: usize) -> ExpansionCoeffs {
    let mut t = ec.clone();
    t.coeffs.truncate(m);
    t
}

fn expansion_table(spec: &TableSpec, opts: &Opts, kind: Kind) -> Result<Report> {
    let (dn, dl) = kind.defaults();
    let ns = positive(spec.rows.as_deref().unwrap_or(&dn), "N")?;
    let lambdas = spec.lambdas.clone().unwrap_or(dl);
    let ms = spec.ms.clone().unwrap_or_else(|| vec![1, 2, 3, 5]);
    if ms.contains(&0) {
        return Err(Error::Usage("m must be at least 1".into()));
    }
    let mmax = *ms.iter().max().expect("non-empty m list");
    let mut names: Vec<String> = ms.iter().map(|m| format!("m={m}")).collect();
    names.push(kind.last_column().to_string());
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut r = Report::new(&["N", "lambda"], &name_refs);
    let mut jobs = Vec::new();
    for &big_n in &ns {
        for l in &lambdas {
            jobs.push((big_n, l.clone(), lambda_times(l, big_n)?));
        }
    }
    let cells: Vec<Result<Vec<Cell>>> = jobs
        .par_iter()
        .map(|(big_n, l, n)| {
            let family = kind.family(*big_n);
            let sign = if kind == Kind::W2 && big_n % 2 == 0 { -1 } else { 1 };
            let mut row = opts.reals(Style::Sci, TABLE_SIG, |c| {
                let ec = expansion_coeffs(family, l, mmax, c)?;
                ms.iter().map(|&m| Ok(expansion_eval(&truncated(&ec, m), *big_n, c)? * sign)).collect()
            })?;
            row.push(kind.direct(opts, *big_n, *n)?);
            Ok(row)
        })
        .collect();
    for ((big_n, l, _), c) in jobs.iter().zip(cells) {
        r.push(vec![big_n.to_string(), lambda_label(l)], c?);
    }
    Ok(r)
}
