//! Row producers behind the `bernstein`, `interp`, `asymptotics` and `audit`
//! subcommands.

use modelspace_core::bernstein::{
    asymptotic_ratio_sweep, bergman_envelope, bernstein_constant_with_basis,
    default_alternation_length, envelope, estimate_sup_constant, expansion_check, gap_shrinks,
    last_element_derivative_audit, alternating_coordinates, RatioRow,
};
use modelspace_core::blaschke::malmquist_basis;
use modelspace_core::interp::{interp_exact_with_basis, interpolation_envelopes, one_point_lower_bounds};
use modelspace_core::{Complex64, MalmquistBasis, NormKind, PoleConfiguration};

use crate::error::{usage, LabError};
use crate::rows::{format_number, Quantity, SweepRow};
use crate::sigma::{KeyedSigma, SigmaSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TruncChoice {
    #[default]
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for TruncChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(TruncChoice::Auto);
        }
        s.parse()
            .map(TruncChoice::Fixed)
            .map_err(|_| format!("expected a count or `auto`, found `{s}`"))
    }
}

fn basis_for(sigma: &PoleConfiguration, trunc: TruncChoice) -> Result<MalmquistBasis, LabError> {
    Ok(match trunc {
        TruncChoice::Auto => MalmquistBasis::with_policy(sigma)?,
        TruncChoice::Fixed(n) => malmquist_basis(sigma, n)?,
    })
}

pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, LabError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| usage(format!("bad {what} entry `{}`", s.trim())))
        })
        .collect()
}

fn target_quantity(target: NormKind) -> Result<Quantity, LabError> {
    match target {
        NormKind::Bergman => Ok(Quantity::BernsteinBergman),
        NormKind::Hardy => Ok(Quantity::BernsteinHardy),
        NormKind::Dirichlet => Err(usage("target must be bergman or hardy")),
    }
}

fn bernstein_row(ks: &KeyedSigma, target: NormKind, trunc: TruncChoice) -> Result<SweepRow, LabError> {
    let quantity = target_quantity(target)?;
    let basis = basis_for(&ks.sigma, trunc)?;
    let res = bernstein_constant_with_basis(&basis, target)?;
    let env = envelope(ks.sigma.len(), ks.sigma.radius(), target)?;
    Ok(SweepRow {
        n: ks.sigma.len(),
        r: ks.sigma.radius(),
        sigma: ks.key.clone(),
        quantity,
        value: res.constant,
        lower: env.lower,
        upper: env.upper,
        trunc: res.trunc_len,
        residual: res.residual,
    })
}

/// One row per configuration with the envelope for `(n, radius)` attached.
/// Random specs add a final row with the refined supremum estimate.
pub fn bernstein_rows(spec: &SigmaSpec, target: NormKind, trunc: TruncChoice) -> Result<Vec<SweepRow>, LabError> {
    let quantity = target_quantity(target)?;
    let mut rows = spec
        .configurations()?
        .iter()
        .map(|ks| bernstein_row(ks, target, trunc))
        .collect::<Result<Vec<_>, _>>()?;
    if let SigmaSpec::Random { n, r, count, seed } = *spec {
        let est = estimate_sup_constant(n, r, target, count, seed)?;
        let env = envelope(n, r, target)?;
        rows.push(SweepRow {
            n,
            r,
            sigma: format!("sup-estimate:n={n},r={r},count={count},seed={seed}"),
            quantity,
            value: est.constant,
            lower: env.lower,
            upper: env.upper,
            trunc: est.sigma.policy_truncation()? + 1,
            residual: 0.0,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterpOptions {
    pub exact: bool,
    pub bounds: bool,
    pub trunc: TruncChoice,
}

/// Exact constant (lower: closed-form one-point bound, upper: projection
/// bound), plus the projection bound against the finite-`n` envelope and the
/// one-point lower bound when `bounds` is set.
pub fn interp_rows(spec: &SigmaSpec, opts: InterpOptions) -> Result<Vec<SweepRow>, LabError> {
    let configs = spec.configurations()?;
    if opts.bounds && spec.n() == 1 {
        if let SigmaSpec::OnePoint { .. } = spec {
            return Err(usage(
                "the one-point lower bound needs n >= 2 (its bracket is negative at n = 1)",
            ));
        }
    }
    let mut rows = Vec::new();
    for ks in &configs {
        let n = ks.sigma.len();
        let r = ks.sigma.radius();
        let basis = basis_for(&ks.sigma, opts.trunc)?;
        let res = interp_exact_with_basis(&basis)?;
        let lower = res.lower_one_point;
        if opts.exact {
            rows.push(SweepRow {
                n,
                r,
                sigma: ks.key.clone(),
                quantity: Quantity::InterpExact,
                value: res.exact,
                lower: lower.map(|l| l.stated),
                upper: Some(res.upper_projection),
                trunc: res.trunc_len,
                residual: res.residual,
            });
        }
        if opts.bounds {
            let env = interpolation_envelopes(n, r);
            rows.push(SweepRow {
                n,
                r,
                sigma: ks.key.clone(),
                quantity: Quantity::InterpUpper,
                value: res.upper_projection,
                lower: None,
                upper: env.finite.upper,
                trunc: res.trunc_len,
                residual: res.residual,
            });
            if let Some(point) = ks.sigma.single_point() {
                let l = one_point_lower_bounds(n, point)?;
                rows.push(SweepRow {
                    n,
                    r,
                    sigma: ks.key.clone(),
                    quantity: Quantity::InterpLowerEq9,
                    value: l.stated,
                    lower: None,
                    upper: Some(l.partial_sum),
                    trunc: res.trunc_len,
                    residual: 0.0,
                });
            }
        }
    }
    Ok(rows)
}

/// Ratio rows (`upper` carries the limit) and whether the gap to the limit
/// is positive and shrinking along `n_list`.
pub fn asymptotic_rows(r: f64, n_list: &[usize], target: NormKind) -> Result<(Vec<SweepRow>, bool, Vec<RatioRow>), LabError> {
    if !(0.0..1.0).contains(&r) {
        return Err(usage(format!("r = {r} must lie in [0, 1)")));
    }
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(usage("n list must contain positive counts"));
    }
    target_quantity(target)?;
    let ratios = asymptotic_ratio_sweep(r, n_list, target).map_err(|e| match e {
        modelspace_core::Error::InvalidArgument(m) => usage(m),
        other => LabError::Core(other),
    })?;
    let rows = ratios
        .iter()
        .map(|row| SweepRow {
            n: row.n,
            r,
            sigma: format!("one-point:n={},r={r}", row.n),
            quantity: Quantity::Ratio,
            value: row.ratio,
            lower: None,
            upper: Some(row.limit),
            trunc: row.trunc_len,
            residual: row.residual,
        })
        .collect();
    Ok((rows, gap_shrinks(&ratios), ratios))
}

/// Human-readable trend summary for an asymptotic sweep.
pub fn trend_summary(ratios: &[RatioRow], shrinks: bool) -> String {
    let mut s = String::new();
    for row in ratios {
        s.push_str(&format!(
            "n={} ratio={} limit={} gap={}\n",
            row.n,
            format_number(row.ratio),
            format_number(row.limit),
            format_number(row.gap())
        ));
    }
    s.push_str(if shrinks {
        "trend: gap to limit is positive and shrinking\n"
    } else {
        "trend: gap to limit does NOT shrink monotonically\n"
    });
    s
}

/// Audit rows and the list of closed-form disagreements found.
pub fn audit_rows(n_list: &[usize], r_list: &[f64]) -> Result<(Vec<SweepRow>, Vec<String>), LabError> {
    let mut rows = Vec::new();
    let mut findings = Vec::new();
    for &r in r_list {
        if !(0.0..1.0).contains(&r) {
            return Err(usage(format!("r = {r} must lie in [0, 1)")));
        }
        for &n in n_list {
            if n == 0 {
                return Err(usage("n must be at least 1"));
            }
            let key = format!("one-point:n={n},r={r}");
            let a = last_element_derivative_audit(n, r)?;
            let sigma = PoleConfiguration::one_point(n, Complex64::new(r, 0.0))?;
            let basis = MalmquistBasis::with_policy(&sigma)?;
            let trunc = basis.trunc_len();
            let mk = |label: &str, value: f64, lower: Option<f64>, upper: Option<f64>| SweepRow {
                n,
                r,
                sigma: format!("{key}/{label}"),
                quantity: Quantity::Audit,
                value,
                lower,
                upper,
                trunc,
                residual: 0.0,
            };
            rows.push(mk("en-prime-numeric", a.numeric, None, None));
            rows.push(mk("en-prime-closed-form", a.closed_form, None, None));
            rows.push(mk("en-prime-discrepancy", a.discrepancy, None, None));
            if a.discrepancy.abs() > 1e-8 * a.closed_form.abs().max(1.0) {
                findings.push(format!(
                    "en-prime n={n} r={r}: numeric {} vs closed form {} (discrepancy {})",
                    format_number(a.numeric),
                    format_number(a.closed_form),
                    format_number(a.discrepancy)
                ));
            }

            let c = bernstein_constant_with_basis(&basis, NormKind::Bergman)?;
            let env = bergman_envelope(n, r);
            rows.push(mk("bergman-lower-bracket", c.constant, env.lower, env.upper));
            if let Some(l) = env.lower {
                if c.constant < l - 1e-9 {
                    findings.push(format!(
                        "bergman-lower-bracket n={n} r={r}: one-point constant {} below closed-form lower bound {}",
                        format_number(c.constant),
                        format_number(l)
                    ));
                }
            }

            let s = default_alternation_length(n);
            if s + 2 < n {
                let coords = alternating_coordinates(n, s)?;
                let rep = expansion_check(&basis, &coords)?;
                rows.push(mk("expansion", rep.q_norm_sqr, None, None));
                rows.push(mk("expansion-closed-form", rep.q_expansion, None, None));
                rows.push(mk("expansion-as-printed", rep.q_expansion_as_printed, None, None));
                let gap = (rep.q_expansion_as_printed - rep.q_norm_sqr).abs();
                if gap > 1e-9 * rep.q_norm_sqr.max(1.0) {
                    findings.push(format!(
                        "expansion-as-printed n={n} r={r} s={s}: {} vs direct {}",
                        format_number(rep.q_expansion_as_printed),
                        format_number(rep.q_norm_sqr)
                    ));
                }
            }
        }
    }
    Ok((rows, findings))
}
