use std::path::PathBuf;

use clap::Subcommand;
use mahler_core::modp::reduce_series;
use mahler_core::{Field, PrimeField, Series};
use serde_json::json;

use super::preview;
use crate::formats::{parse_series, write_series, AnySeries};
use crate::{CliError, Ctx, Outcome};

#[derive(Subcommand, Debug)]
pub enum SeriesCmd {
    /// Field, precision, order and leading coefficients.
    Info {
        #[arg(long)]
        series: PathBuf,
    },
    /// Multiplicative inverse.
    Invert {
        #[arg(long)]
        series: PathBuf,
    },
    /// Λ_b F = Σ f(kn + b) xⁿ.
    Cartier {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        base: usize,
        #[arg(long)]
        digit: usize,
    },
    /// F(x^e).
    Substitute {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        power: usize,
    },
    /// Product of two series over the same field.
    Mul {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Reduction of a series over ℚ modulo a prime.
    Reduce {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        prime: u64,
    },
}

fn info<F: Field>(s: &Series<F>) -> Outcome {
    let f = s.field();
    let coeffs: Vec<String> = s.coeffs().iter().map(|c| f.format_elem(c)).collect();
    let text = format!(
        "field: {}\nprecision: {}\nord: {}\nterms: {}",
        f.describe(),
        s.precision(),
        s.ord().map_or("none".into(), |o| o.to_string()),
        preview(coeffs.iter(), 12)
    );
    Outcome::yes(text, json!({ "field": f.describe(), "precision": s.precision(), "ord": s.ord() }))
}

fn produced<F: Field>(what: &str, s: &Series<F>) -> Outcome {
    Outcome::yes(
        format!("{what}: precision {}", s.precision()),
        json!({ "operation": what, "precision": s.precision() }),
    )
    .with_artifact(write_series(s))
}

macro_rules! on_series {
    ($s:expr, |$v:ident| $body:expr) => {
        match $s {
            AnySeries::Q($v) => $body,
            AnySeries::Fp($v) => $body,
        }
    };
}

pub fn run(c: &SeriesCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match c {
        SeriesCmd::Info { series } => {
            let s = parse_series(&ctx.read(series)?)?;
            Ok(on_series!(&s, |v| info(v)))
        }
        SeriesCmd::Invert { series } => {
            let s = parse_series(&ctx.read(series)?)?;
            on_series!(&s, |v| Ok(produced("invert", &v.invert()?)))
        }
        SeriesCmd::Cartier { series, base, digit } => {
            if *base < 2 || digit >= base {
                return Err(CliError::input("need base >= 2 and 0 <= digit < base"));
            }
            let s = parse_series(&ctx.read(series)?)?;
            Ok(on_series!(&s, |v| produced("cartier", &v.cartier_section(*base, *digit))))
        }
        SeriesCmd::Substitute { series, power } => {
            if *power == 0 {
                return Err(CliError::input("power must be positive"));
            }
            let s = parse_series(&ctx.read(series)?)?;
            Ok(on_series!(&s, |v| produced("substitute", &v.substitute_power(*power))))
        }
        SeriesCmd::Mul { series, other } => {
            let a = parse_series(&ctx.read(series)?)?;
            let b = parse_series(&ctx.read(other)?)?;
            match (&a, &b) {
                (AnySeries::Q(x), AnySeries::Q(y)) => Ok(produced("mul", &x.mul(y))),
                (AnySeries::Fp(x), AnySeries::Fp(y)) if x.field() == y.field() => Ok(produced("mul", &x.mul(y))),
                _ => Err(CliError::core(mahler_core::Error::FieldMismatch)),
            }
        }
        SeriesCmd::Reduce { series, prime } => {
            let AnySeries::Q(s) = parse_series(&ctx.read(series)?)? else {
                return Err(CliError::input("reduction needs a series over Q"));
            };
            let f = PrimeField::new(*prime)?;
            Ok(produced("reduce", &reduce_series(f, &s)?))
        }
    }
}
