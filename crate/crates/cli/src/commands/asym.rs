use clap::Subcommand;
use mahler_core::verifiers::{
    check_sum_inequality, companion_nilpotent, divergence_probe, equispaced, group_search, product_growth, Dd,
    GroupInstance, RootOfUnity,
};
use mahler_core::{Field, Rationals};
use serde_json::json;

use crate::formats::{parse_poly, FieldSpec};
use crate::{CliError, Outcome, EXIT_NO, EXIT_YES};

#[derive(Subcommand, Debug)]
pub enum AsymCmd {
    /// |∏ P((tα)^{kʲ})|⁻¹ at each t.
    Product {
        /// P with P(0) = 1, coefficients from degree 0.
        #[arg(long, allow_hyphen_values = true, default_value = "1 -1")]
        poly: String,
        #[arg(long)]
        base: u64,
        /// Evaluation points in (0, 1), decimal or a/b; repeatable.
        #[arg(long, required = true, num_args = 1..)]
        t: Vec<String>,
        /// α = e^{2πi·num/den}, given as num/den.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Least t = 1 − 2^{−j} with (1 − t)^A·∏(1 − t^{kʲ})⁻¹ above a threshold.
    Probe {
        #[arg(long)]
        base: u64,
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 1000.0)]
        threshold: f64,
        #[arg(long, default_value_t = 60)]
        jmax: u32,
    },
    /// −ln(1 − t) ≥ (1 − 1/k)·Σ t^{kⁱ} at t = i/(N+1).
    SumCheck {
        #[arg(long)]
        base: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Nilpotency of the companion-shaped matrix with a given first row.
    Nilpotent {
        #[arg(long, allow_hyphen_values = true)]
        row: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Element of the span of h₁..h_m with no zero coordinate.
    GroupSearch {
        /// d₁ … d_m
        #[arg(long)]
        moduli: String,
        /// h₁;h₂;… with coordinates space separated.
        #[arg(long)]
        generators: String,
    },
}

fn parse_t(s: &str) -> Result<Dd, CliError> {
    let r = Rationals.parse_elem(s).ok();
    match r {
        Some(r) => Ok(Dd::from_rational(&r)),
        None => s.parse::<f64>().map(Dd::new).map_err(|_| CliError::input(format!("bad t `{s}`"))),
    }
}

fn parse_alpha(s: &str) -> Result<RootOfUnity, CliError> {
    let bad = || CliError::input(format!("bad root of unity `{s}`, expected num/den"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let num = n.trim().parse().map_err(|_| bad())?;
    let den: u64 = d.trim().parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(RootOfUnity { num, den })
}

fn dd_str(x: Dd) -> String {
    format!("{:.17e}", x.to_f64())
}

fn parse_u64s(s: &str) -> Result<Vec<u64>, CliError> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| CliError::input(format!("bad integer `{t}`"))))
        .collect()
}

fn nilpotent<F: Field>(f: F, row: &str, dim: usize) -> Result<Outcome, CliError> {
    let r = row
        .split_whitespace()
        .map(|t| f.parse_elem(t))
        .collect::<mahler_core::Result<Vec<_>>>()?;
    let c = companion_nilpotent(&f, &r, dim)?;
    Ok(Outcome::new(
        if c.nilpotent { EXIT_YES } else { EXIT_NO },
        format!("nilpotent: {} (first-row test and exact power agree)", c.nilpotent),
        json!({ "nilpotent": c.nilpotent, "first_row_zero": c.first_row_zero, "power_zero": c.power_zero }),
    ))
}

pub fn run(c: &AsymCmd) -> Result<Outcome, CliError> {
    match c {
        AsymCmd::Product { poly, base, t, alpha } => {
            let p = parse_poly(&Rationals, poly)?;
            let alpha = alpha.as_deref().map(parse_alpha).transpose()?;
            let mut rows = vec![vec!["t".to_string(), "value".to_string()]];
            let mut text = String::new();
            let mut values = Vec::new();
            for s in t {
                let tv = parse_t(s)?;
                let g = product_growth(&p, *base, tv, alpha)?;
                text.push_str(&format!("t = {s}: {} ({} factors)\n", dd_str(g.value), g.factors));
                rows.push(vec![s.clone(), dd_str(g.value)]);
                values.push(json!({
                    "t": s,
                    "value": g.value.to_f64(),
                    "value_hi": g.value.hi,
                    "value_lo": g.value.lo,
                    "factors": g.factors,
                }));
            }
            Ok(Outcome::yes(text, json!({ "values": values })).with_csv(rows))
        }
        AsymCmd::Probe { base, a, threshold, jmax } => {
            let probe = divergence_probe(*base, *a, *threshold, *jmax)?;
            let (rows_src, found) = match &probe {
                Some(p) => (p.samples.clone(), Some(p)),
                None => (Vec::new(), None),
            };
            let mut rows = vec![vec!["j".into(), "t".into(), "scaled".into()]];
            rows.extend(rows_src.iter().map(|(j, t, v)| vec![j.to_string(), dd_str(*t), dd_str(*v)]));
            Ok(match found {
                Some(p) => Outcome::yes(
                    format!("j = {}: t = 1 - 2^-{}, scaled value {}", p.j, p.j, dd_str(p.scaled)),
                    json!({ "found": true, "j": p.j, "t": p.t.to_f64(), "scaled": p.scaled.to_f64() }),
                ),
                None => Outcome::new(EXIT_NO, format!("no j <= {jmax} exceeds {threshold}"), json!({ "found": false })),
            }
            .with_csv(rows))
        }
        AsymCmd::SumCheck { base, samples } => {
            let r = check_sum_inequality(*base, &equispaced(*samples))?;
            let mut rows = vec![vec!["t".into(), "lhs".into(), "rhs".into(), "margin".into()]];
            rows.extend(r.samples.iter().map(|s| vec![dd_str(s.t), dd_str(s.lhs), dd_str(s.rhs), dd_str(s.margin)]));
            let min = r.min_margin.map(|m| m.to_f64());
            Ok(Outcome::new(
                if r.violations.is_empty() { EXIT_YES } else { EXIT_NO },
                format!(
                    "samples: {}\nviolations: {}\nmin margin: {}",
                    r.samples.len(),
                    r.violations.len(),
                    min.map_or("none".into(), |m| format!("{m:.6e}"))
                ),
                json!({ "samples": r.samples.len(), "violations": r.violations, "min_margin": min }),
            )
            .with_csv(rows))
        }
        AsymCmd::Nilpotent { row, dim, field } => match FieldSpec::parse(field)? {
            FieldSpec::Q => nilpotent(Rationals, row, *dim),
            FieldSpec::Fp(f) => nilpotent(f, row, *dim),
        },
        AsymCmd::GroupSearch { moduli, generators } => {
            let moduli = parse_u64s(moduli)?;
            let generators =
                generators.split(';').map(parse_u64s).collect::<Result<Vec<_>, _>>()?;
            let inst = GroupInstance { moduli, generators };
            let s = group_search(&inst)?;
            let mut text = format!("coordinate orders: {:?}\nhypothesis met: {}\n", s.coordinate_orders, s.hypothesis_met);
            if !s.hypothesis_met {
                text.push_str("warning: sum of 1/r_i >= 1, existence is not guaranteed\n");
            }
            Ok(match &s.witness {
                Some((x, h)) => {
                    text.push_str(&format!("coefficients: {x:?}\nwitness: {h:?}"));
                    Outcome::yes(
                        text,
                        json!({ "hypothesis_met": s.hypothesis_met, "coordinate_orders": s.coordinate_orders, "coefficients": x, "witness": h }),
                    )
                }
                None => {
                    text.push_str("witness: none");
                    Outcome::new(
                        EXIT_NO,
                        text,
                        json!({ "hypothesis_met": s.hypothesis_met, "coordinate_orders": s.coordinate_orders, "witness": null }),
                    )
                }
            })
        }
    }
}
