use std::path::PathBuf;

use clap::Subcommand;
use mahler_core::rationality::{cyclotomic_split, fixed_root_check, hankel_rationality, FixedRootCheck};
use mahler_core::Rationals;
use serde_json::json;

use crate::formats::{parse_poly, parse_series, AnySeries};
use crate::{CliError, Ctx, Outcome, EXIT_NO};

#[derive(Subcommand, Debug)]
pub enum RatCmd {
    /// A/B with deg A, deg B ≤ d matching the series, if any.
    Hankel {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        deg: usize,
    },
    /// P = S₀·S₁ with S₀ the root-of-unity part.
    Split {
        /// Coefficients from degree 0, space separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Whether a root of unity of P is fixed by some α ↦ α^{kʲ}.
    FixedCheck {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        base: u64,
    },
}

fn indices_json(ix: &[(u64, u32)]) -> serde_json::Value {
    ix.iter().map(|(n, m)| json!({ "index": n, "multiplicity": m })).collect()
}

pub fn run(c: &RatCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match c {
        RatCmd::Hankel { series, deg } => {
            let AnySeries::Q(s) = parse_series(&ctx.read(series)?)? else {
                return Err(CliError::input("hankel needs a series over Q"));
            };
            Ok(match hankel_rationality(&s, *deg)? {
                Some(h) => {
                    let (a, b) = (h.fraction.numerator(), h.fraction.denominator());
                    Outcome::yes(
                        format!(
                            "A: {a}\nB: {b}\nrank: {}\nwindow_columns: {}\ncertified_to: {}",
                            h.rank, h.window_columns, h.certified_to
                        ),
                        json!({
                            "rational": true,
                            "numerator": a.to_inline(),
                            "denominator": b.to_inline(),
                            "rank": h.rank,
                            "window_columns": h.window_columns,
                            "certified_to": h.certified_to,
                        }),
                    )
                }
                None => Outcome::new(EXIT_NO, format!("none with degree <= {deg}"), json!({ "rational": false })),
            })
        }
        RatCmd::Split { poly } => {
            let p = parse_poly(&Rationals, poly)?;
            let s = cyclotomic_split(&p)?;
            let idx: Vec<String> = s.indices.iter().map(|(n, m)| format!("{n}^{m}")).collect();
            Ok(Outcome::yes(
                format!(
                    "S0: {}\nS1: {}\nindices: {}\ngcd_cross_checked: {}",
                    s.unit_part,
                    s.free_part,
                    if idx.is_empty() { "none".into() } else { idx.join(" ") },
                    s.gcd_cross_checked
                ),
                json!({
                    "unit_part": s.unit_part.to_inline(),
                    "free_part": s.free_part.to_inline(),
                    "indices": indices_json(&s.indices),
                    "gcd_cross_checked": s.gcd_cross_checked,
                }),
            ))
        }
        RatCmd::FixedCheck { poly, base } => {
            if *base < 2 {
                return Err(CliError::input("base must be at least 2"));
            }
            let p = parse_poly(&Rationals, poly)?;
            let s = cyclotomic_split(&p)?;
            Ok(match fixed_root_check(&s.indices, *base) {
                FixedRootCheck::Ok => Outcome::yes("ok", json!({ "ok": true, "indices": indices_json(&s.indices) })),
                FixedRootCheck::Violation(n) => Outcome::new(
                    EXIT_NO,
                    format!("violation({n})"),
                    json!({ "ok": false, "violation": n, "indices": indices_json(&s.indices) }),
                ),
            })
        }
    }
}
