use std::path::PathBuf;

use clap::Subcommand;
use mahler_core::mahler::{
    base_pair, becker_decompose, find_equation, multiplicatively_independent, normalize, shift_decompose, solve_series,
    FindBounds, MahlerEquation, Verification,
};
use mahler_core::{Field, Series};
use serde_json::json;

use crate::formats::{parse_equation, parse_series, write_equation, write_series, AnyEquation, AnySeries};
use crate::{CliError, Ctx, Outcome, EXIT_NO};

#[derive(Subcommand, Debug)]
pub enum EqCmd {
    /// Check an equation against a truncated series.
    Verify {
        #[arg(long)]
        eq: PathBuf,
        #[arg(long)]
        series: PathBuf,
    },
    /// Extend initial terms by the coefficient recursion.
    Solve {
        #[arg(long)]
        eq: PathBuf,
        /// Initial coefficients, space separated.
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long)]
        terms: usize,
    },
    /// Search for an equation of bounded order and degree.
    Find {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        base: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        degree: usize,
        /// Allow a polynomial term A(x).
        #[arg(long)]
        inhomogeneous: bool,
    },
    /// Homogeneous equation with P₀ ≠ 0 and coprime coefficients.
    Normalize {
        #[arg(long)]
        eq: PathBuf,
    },
    /// F = head + x^a·G with G solving an equation whose P₀(0) = 1.
    Shift {
        #[arg(long)]
        eq: PathBuf,
        #[arg(long)]
        series: PathBuf,
    },
    /// F = (∏ P₀(x^{kⁱ}))⁻¹·G with G in Becker form.
    Becker {
        #[arg(long)]
        eq: PathBuf,
        #[arg(long)]
        series: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum BaseCmd {
    /// Bases k', ℓ' with a prime dividing exactly one of them.
    Pair {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
    },
}

fn load(ctx: &mut Ctx, eq: &PathBuf, series: &PathBuf) -> Result<(AnyEquation, AnySeries), CliError> {
    let e = parse_equation(&ctx.read(eq)?)?;
    let s = parse_series(&ctx.read(series)?)?;
    Ok((e, s))
}

macro_rules! on_pair {
    ($e:expr, $s:expr, |$eq:ident, $se:ident| $body:expr) => {
        match ($e, $s) {
            (AnyEquation::Q($eq), AnySeries::Q($se)) => $body,
            (AnyEquation::Fp($eq), AnySeries::Fp($se)) if $eq.field() == $se.field() => $body,
            _ => Err(CliError::core(mahler_core::Error::FieldMismatch)),
        }
    };
}

macro_rules! on_eq {
    ($e:expr, |$eq:ident| $body:expr) => {
        match $e {
            AnyEquation::Q($eq) => $body,
            AnyEquation::Fp($eq) => $body,
        }
    };
}

fn verify<F: Field>(eq: &MahlerEquation<F>, s: &Series<F>) -> Result<Outcome, CliError> {
    Ok(match eq.verify(s)? {
        Verification::HoldsTo(n) => Outcome::yes(format!("holds_to: {n}"), json!({ "holds": true, "holds_to": n })),
        Verification::FailsAt(i) => Outcome::new(
            EXIT_NO,
            format!("fails_at: {i}"),
            json!({ "holds": false, "fails_at": i }),
        ),
    })
}

fn solve<F: Field>(eq: &MahlerEquation<F>, init: &str, terms: usize) -> Result<Outcome, CliError> {
    let f = eq.field();
    let init = init
        .split_whitespace()
        .map(|t| f.parse_elem(t))
        .collect::<mahler_core::Result<Vec<_>>>()?;
    let s = solve_series(eq, &init, terms)?;
    Ok(Outcome::yes(format!("solved to precision {}", s.precision()), json!({ "precision": s.precision() }))
        .with_artifact(write_series(&s)))
}

fn find<F: Field>(s: &Series<F>, base: usize, bounds: FindBounds) -> Result<Outcome, CliError> {
    Ok(match find_equation(s, base, bounds)? {
        Some(found) => {
            let e = &found.equation;
            Outcome::yes(
                format!(
                    "found order {} degree {} (heuristic, certified_to {})",
                    e.order(),
                    e.max_degree(),
                    found.certified_to
                ),
                json!({
                    "found": true,
                    "order": e.order(),
                    "max_degree": e.max_degree(),
                    "certified_to": found.certified_to,
                    "heuristic": true,
                }),
            )
            .with_artifact(write_equation(e))
        }
        None => Outcome::new(EXIT_NO, "no equation within bounds", json!({ "found": false })),
    })
}

fn normalized<F: Field>(eq: &MahlerEquation<F>) -> Result<Outcome, CliError> {
    let n = normalize(eq)?;
    Ok(Outcome::yes(
        format!("order {} max degree {}, homogeneous {}", n.order(), n.max_degree(), n.is_homogeneous()),
        json!({ "order": n.order(), "max_degree": n.max_degree(), "homogeneous": n.is_homogeneous(), "normalized": n.is_normalized() }),
    )
    .with_artifact(write_equation(&n)))
}

fn shift<F: Field>(eq: &MahlerEquation<F>, s: &Series<F>) -> Result<Outcome, CliError> {
    let eq = if eq.is_homogeneous() { eq.clone() } else { normalize(eq)? };
    let d = shift_decompose(&eq, s)?;
    Ok(Outcome::yes(
        format!("a: {}\nhead: {}\ncertified_to: {}", d.a, d.head.to_inline(), d.certified_to),
        json!({ "a": d.a, "head": d.head.to_inline(), "certified_to": d.certified_to }),
    )
    .with_artifact(write_equation(&d.tail_equation)))
}

fn becker<F: Field>(eq: &MahlerEquation<F>, s: &Series<F>) -> Result<Outcome, CliError> {
    let d = becker_decompose(eq, s)?;
    let n = d.certified_to;
    let identity = d.product_inverse.mul(&d.becker_part).first_difference(&s.truncate(n)).is_none();
    let residual = d.becker_equation.verify(&d.becker_part)?;
    let ok = identity && residual.holds();
    Ok(Outcome::new(
        if ok { crate::EXIT_YES } else { EXIT_NO },
        format!("certified_to: {n}\nproduct_identity: {identity}\nbecker_residual: {residual:?}"),
        json!({ "certified_to": n, "product_identity": identity, "becker_residual_zero": residual.holds() }),
    )
    .with_artifact(write_equation(&d.becker_equation)))
}

pub fn run(c: &EqCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match c {
        EqCmd::Verify { eq, series } => {
            let (e, s) = load(ctx, eq, series)?;
            on_pair!(&e, &s, |a, b| verify(a, b))
        }
        EqCmd::Solve { eq, init, terms } => {
            let e = parse_equation(&ctx.read(eq)?)?;
            on_eq!(&e, |a| solve(a, init, *terms))
        }
        EqCmd::Find { series, base, order, degree, inhomogeneous } => {
            let s = parse_series(&ctx.read(series)?)?;
            let mut b = FindBounds::new(*order, *degree);
            b.inhomogeneous = *inhomogeneous;
            match &s {
                AnySeries::Q(v) => find(v, *base, b),
                AnySeries::Fp(v) => find(v, *base, b),
            }
        }
        EqCmd::Normalize { eq } => {
            let e = parse_equation(&ctx.read(eq)?)?;
            on_eq!(&e, |a| normalized(a))
        }
        EqCmd::Shift { eq, series } => {
            let (e, s) = load(ctx, eq, series)?;
            on_pair!(&e, &s, |a, b| shift(a, b))
        }
        EqCmd::Becker { eq, series } => {
            let (e, s) = load(ctx, eq, series)?;
            on_pair!(&e, &s, |a, b| becker(a, b))
        }
    }
}

pub fn run_base(c: &BaseCmd) -> Result<Outcome, CliError> {
    let BaseCmd::Pair { k, l } = c;
    if !multiplicatively_independent(*k, *l) {
        return Ok(Outcome::new(
            EXIT_NO,
            format!("{k} and {l} are multiplicatively dependent"),
            json!({ "independent": false }),
        ));
    }
    let b = base_pair(*k, *l)?;
    Ok(Outcome::yes(
        format!(
            "k' = {} = {k}^{}·{l}^{}\nl' = {} = {k}^{}·{l}^{}\np = {} divides k' only\nq = {} divides l' only",
            b.k_prime, b.k_exponents.0, b.k_exponents.1, b.l_prime, b.l_exponents.0, b.l_exponents.1, b.p, b.q
        ),
        json!({
            "independent": true,
            "k_prime": b.k_prime.to_string(),
            "l_prime": b.l_prime.to_string(),
            "k_exponents": [b.k_exponents.0, b.k_exponents.1],
            "l_exponents": [b.l_exponents.0, b.l_exponents.1],
            "p": b.p,
            "q": b.q,
        }),
    ))
}
