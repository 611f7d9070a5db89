//! One function per subcommand, each producing a `Report`.

use rug::{Float, Integer};
use sylwave::asymptotics::{expansion_coeffs, expansion_eval, Family};
use sylwave::combinatorics::{p_restricted, partition_p, partition_p_hrr};
use sylwave::dilog::{dilog_zero, saddle_point, wave_constants};
use sylwave::numerics::{format_sci, pi};
use sylwave::waves::{wave, wave_poly, wave_poly_closed, waves_sum, WavePolySet, WaveRoute};
use sylwave::wavesums::{first_waves, key_identity_report, sum_a1, sum_b, sum_c, sum_d1, sum_e1, ClassId};
use sylwave::{Error, PrecisionContext, Result};

use crate::eval::{integer_cell, parse_list, parse_rational, parse_rational_list, usage, Opts, Style};
use crate::output::{Cell, Report};
use crate::tables::{run_table, TableId, TableSpec};
use crate::{
    AsymArgs, ClassSumArgs, CoeffsArgs, Command, ConstantsArgs, DilogZeroArgs, NnArgs, PnArgs, SaddleArgs, TableArgs,
    WaveArgs, WavesSumArgs,
};

/// A failed command, keeping any report that should still be printed.
pub struct Failed {
    pub report: Option<Box<Report>>,
    pub error: Error,
}

impl From<Error> for Failed {
    fn from(error: Error) -> Self {
        Self { report: None, error }
    }
}

pub fn dispatch(cmd: &Command, opts: &Opts) -> std::result::Result<Report, Failed> {
    Ok(match cmd {
        Command::Wave(a) => wave_cmd(a, opts)?,
        Command::WavesSum(a) => waves_sum_cmd(a, opts)?,
        Command::Pn(a) => pn_cmd(a, opts)?,
        Command::Prestricted(a) => {
            if a.big_n == 0 {
                return Err(usage("need N >= 1").into());
            }
            Report::single("p_N(n)", integer_cell(&p_restricted(a.big_n, a.n), None))
        }
        Command::DilogZero(a) => dilog_zero_cmd(a, opts)?,
        Command::Saddle(a) => saddle_cmd(a, opts)?,
        Command::Constants(a) => constants_cmd(a, opts)?,
        Command::Coeffs(a) => coeffs_cmd(a, opts)?,
        Command::Asym(a) => asym_cmd(a, opts)?,
        Command::Classsum(a) => classsum_cmd(a, opts)?,
        Command::Identity(a) => return identity_cmd(a, opts),
        Command::Table(a) => table_cmd(a, opts)?,
    })
}

fn wave_cmd(a: &WaveArgs, opts: &Opts) -> Result<Report> {
    if a.k == 0 || a.k > a.big_n {
        return Err(usage(format!("need 1 <= k <= N, got k={}, N={}", a.k, a.big_n)));
    }
    if a.poly {
        let set = if a.big_n - a.k <= 2 { wave_poly_closed(a.k, a.big_n)? } else { wave_poly(a.k, a.big_n, &opts.ctx)? };
        return Ok(Report::single("polynomials", Cell::exact(format_poly_set(&set))));
    }
    let n = a.n.ok_or_else(|| usage("wave needs --n unless --poly is given"))?;
    let route = WaveRoute::parse(&a.route)?;
    let cell = opts.real(Style::Auto, opts.max_sig(), |c| wave(a.k, a.big_n, n, c, route))?;
    Ok(Report::single("W_k(N,n)", cell))
}

/// `[p_0, p_1, …]/D`: the polynomial for each `n mod k` over a common denominator.
pub fn format_poly_set(set: &WavePolySet) -> String {
    let mut den = Integer::from(1);
    for p in &set.polys {
        for c in p {
            den.lcm_mut(c.denom());
        }
    }
    let polys: Vec<String> = set
        .polys
        .iter()
        .map(|p| {
            let ints: Vec<Integer> = p.iter().map(|c| c.numer() * Integer::from(&den / c.denom())).collect();
            format_int_poly(&ints)
        })
        .collect();
    let body = format!("[{}]", polys.join(", "));
    if den == 1 {
        body
    } else {
        format!("{body}/{den}")
    }
}

/// Descending powers of `n`, e.g. `3n^2-n+15`.
fn format_int_poly(c: &[Integer]) -> String {
    let mut out = String::new();
    for (d, a) in c.iter().enumerate().rev() {
        if *a == 0 {
            continue;
        }
        let neg = *a < 0;
        let mag = Integer::from(a.abs_ref());
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if d == 0 || mag != 1 {
            out.push_str(&mag.to_string());
        }
        match d {
            0 => {}
            1 => out.push('n'),
            _ => out.push_str(&format!("n^{d}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn waves_sum_cmd(a: &WavesSumArgs, opts: &Opts) -> Result<Report> {
    if a.kmax == 0 || a.kmax > a.big_n {
        return Err(usage(format!("need 1 <= K <= N, got K={}, N={}", a.kmax, a.big_n)));
    }
    let cell = opts.real(Style::Auto, opts.max_sig(), |c| waves_sum(a.big_n, a.n, a.kmax, c))?;
    Ok(Report::single("sum W_k(N,n)", cell))
}

fn pn_cmd(a: &PnArgs, opts: &Opts) -> Result<Report> {
    let exact = integer_cell(&partition_p(a.n), None);
    let Some(terms) = a.hrr else {
        return Ok(Report::single("p(n)", exact));
    };
    let hrr = opts.real(Style::Auto, opts.max_sig(), |c| partition_p_hrr(a.n, terms, c))?;
    let mut r = Report::new(&[], &["p(n)", "hrr"]);
    r.push(Vec::new(), vec![exact, hrr]);
    Ok(r)
}

fn dilog_zero_cmd(a: &DilogZeroArgs, opts: &Opts) -> Result<Report> {
    let cell = opts.complex(opts.max_sig(), |c| Ok(dilog_zero(a.a, a.b, c)?.w))?;
    Ok(Report::single("w", cell))
}

fn saddle_cmd(a: &SaddleArgs, opts: &Opts) -> Result<Report> {
    let cells = opts.complexes(opts.max_sig(), |c| {
        let s = saddle_point(a.m, a.d, c)?;
        Ok(vec![s.z_star, s.p_value])
    })?;
    let mut r = Report::new(&[], &["z", "p(z)"]);
    r.push(Vec::new(), cells);
    Ok(r)
}

fn constants_cmd(a: &ConstantsArgs, opts: &Opts) -> Result<Report> {
    let lambda = parse_rational(&a.lambda)?;
    let names = ["U", "V", "psi_lambda", "tau_lambda", "2pi/V", "e^U", "U_C", "U*_C"];
    let cells = opts.reals(Style::Auto, opts.max_sig(), |c| {
        let k = wave_constants(&lambda, c)?;
        let bits = c.bits();
        let period = Float::with_val(bits, pi(bits) * 2u32) / &k.v;
        let growth = Float::with_val(bits, k.u.exp_ref());
        let uc = -Float::with_val(bits, dilog_zero(0, -2, c)?.w.abs().ln());
        let ucs = -Float::with_val(bits, dilog_zero(1, -3, c)?.w.abs().ln());
        Ok(vec![k.u, k.v, k.psi_lambda, k.tau_lambda, period, growth, uc, ucs])
    })?;
    let mut r = Report::new(&[], &names);
    r.push(Vec::new(), cells);
    Ok(r)
}

fn coeffs_cmd(a: &CoeffsArgs, opts: &Opts) -> Result<Report> {
    let family: Family = a.family.parse()?;
    let lambda = parse_rational(&a.lambda)?;
    let cells = opts.complexes(opts.max_sig(), |c| Ok(expansion_coeffs(family, &lambda, a.m, c)?.coeffs))?;
    let mut r = Report::new(&["t"], &["coefficient"]);
    for (t, cell) in cells.into_iter().enumerate() {
        r.push(vec![t.to_string()], vec![cell]);
    }
    Ok(r)
}

fn asym_family(name: &str, big_n: u64) -> Result<Family> {
    match name {
        "d" | "D" => Ok(Family::d_for(big_n)),
        _ => name.parse(),
    }
}

fn asym_cmd(a: &AsymArgs, opts: &Opts) -> Result<Report> {
    let family = asym_family(&a.family, a.big_n)?;
    let lambda = parse_rational(&a.lambda)?;
    let cell = opts.real(Style::Auto, opts.max_sig(), |c| {
        let ec = expansion_coeffs(family, &lambda, a.m, c)?;
        expansion_eval(&ec, a.big_n, c)
    })?;
    Ok(Report::single("expansion", cell))
}

fn class_value(class: ClassId, big_n: u64, sigma: i64, kmax: u64, c: &PrecisionContext) -> Result<(Float, u64)> {
    Ok(match class {
        ClassId::A => {
            let s = sum_a1(big_n, sigma, c)?;
            (s.value, s.term_count)
        }
        ClassId::B => {
            let s = sum_b(big_n, sigma, c)?;
            (s.value, s.term_count)
        }
        ClassId::C | ClassId::C2 | ClassId::C2Star => {
            let (c2, cs, c1) = sum_c(big_n, sigma, c)?;
            let s = match class {
                ClassId::C2 => c2,
                ClassId::C2Star => cs,
                _ => c1,
            };
            (s.value, s.term_count)
        }
        ClassId::D => {
            let s = sum_d1(big_n, sigma, c)?;
            (s.value, s.term_count)
        }
        ClassId::E => {
            let s = sum_e1(big_n, sigma, c)?;
            (s.value, s.term_count)
        }
        ClassId::FirstWaves => {
            if kmax == 0 || kmax > big_n {
                return Err(usage(format!("need 1 <= K <= N, got K={kmax}, N={big_n}")));
            }
            (first_waves(big_n, -sigma, kmax, c)?, 0)
        }
    })
}

fn classsum_cmd(a: &ClassSumArgs, opts: &Opts) -> Result<Report> {
    let class: ClassId = a.class.parse()?;
    let sigma = match (a.sigma, a.n) {
        (Some(s), _) => s,
        (None, Some(n)) => -n,
        (None, None) => return Err(usage("classsum needs --sigma or --n")),
    };
    let count = std::cell::Cell::new(0u64);
    let cell = opts.real(Style::Sci, opts.max_sig(), |c| {
        let (v, n) = class_value(class, a.big_n, sigma, a.kmax, c)?;
        count.set(n);
        Ok(v)
    })?;
    let mut r = Report::new(&[], &["value", "terms"]);
    r.push(Vec::new(), vec![cell, Cell::exact(count.get().to_string())]);
    Ok(r)
}

fn identity_cmd(a: &NnArgs, opts: &Opts) -> std::result::Result<Report, Failed> {
    let rep = key_identity_report(a.big_n, a.n, &opts.ctx)?;
    let sig = opts.sig_or(12);
    let sci = |x: &Float| format_sci(x, sig);
    let verdict = if rep.passed() { "PASS" } else { "FAIL" };
    let residual = format_sci(&rep.residual, 3);
    let names = [
        "status", "residual", "tolerance", "first_waves", "p_N(n)", "A1", "C1", "D1", "E1", "B", "terms", "farey_count",
    ];
    let mut r = Report::new(&[], &names);
    r.headline = Some(format!("{verdict} residual={residual}"));
    let exact = |s: String| Cell::exact(s);
    r.push(
        Vec::new(),
        vec![
            exact(verdict.to_string()),
            exact(residual),
            exact(format_sci(&rep.tolerance, 3)),
            Cell::float(sci(&rep.first_waves), false),
            integer_cell(&rep.p_restricted, None),
            Cell::float(sci(&rep.a1), false),
            Cell::float(sci(&rep.c1), false),
            Cell::float(sci(&rep.d1), false),
            Cell::float(sci(&rep.e1), false),
            Cell::float(sci(&rep.b), false),
            exact(rep.term_count.to_string()),
            exact(rep.farey_count.to_string()),
        ],
    );
    if rep.passed() && rep.term_count == rep.farey_count {
        return Ok(r);
    }
    let error = Error::IdentityFailure(format!(
        "N={}, n={}: residual {} against tolerance {}, {} of {} fractions covered",
        a.big_n,
        a.n,
        format_sci(&rep.residual, 3),
        format_sci(&rep.tolerance, 3),
        rep.term_count,
        rep.farey_count
    ));
    Err(Failed { report: Some(Box::new(r)), error })
}

fn table_cmd(a: &TableArgs, opts: &Opts) -> Result<Report> {
    let id: TableId = a.id.parse()?;
    let mut spec = TableSpec::new(id);
    spec.rows = a.rows.as_deref().map(parse_list).transpose()?;
    spec.lambdas = a.lambdas.as_deref().map(parse_rational_list).transpose()?;
    spec.ms = a
        .m
        .as_deref()
        .map(|s| parse_list(s).map(|v| v.into_iter().map(|m| m.max(0) as usize).collect()))
        .transpose()?;
    spec.exact = a.exact;
    run_table(&spec, opts)
}
