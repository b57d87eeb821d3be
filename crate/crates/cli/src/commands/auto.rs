use std::path::PathBuf;

use clap::Subcommand;
use mahler_core::automatic::{
    becker_automatize_mod_p, eventual_periodicity, kernel_closure, representation_product, unit_product_automatize,
    BeckerAutomaton, Dfao, PeriodicityVerdict,
};
use mahler_core::{Field, PrimeField};
use serde_json::{json, Value};

use super::preview;
use crate::formats::{parse_dfao, parse_equation, parse_linrep, write_dfao, write_linrep, AnyEquation};
use crate::{CliError, Ctx, Outcome, EXIT_NO};

#[derive(Subcommand, Debug)]
pub enum AutoCmd {
    /// Output of an automaton at n, or its first terms.
    Eval {
        #[arg(long)]
        dfao: PathBuf,
        #[arg(long, conflicts_with = "terms")]
        n: Option<u64>,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Automaton from a linear representation over a prime field.
    Closure {
        #[arg(long)]
        linrep: PathBuf,
    },
    /// Automaton of the solution of a Becker-form equation over 𝔽_p.
    FromBecker {
        #[arg(long)]
        eq: PathBuf,
        /// Initial coefficients of the solution, space separated.
        #[arg(long, allow_hyphen_values = true)]
        init: String,
    },
    /// ∏(1 − a·x^{kʲ})⁻¹ over 𝔽_p: Q, S and the automaton.
    UnitProduct {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        base: usize,
    },
    /// Linear representation of the Cauchy product.
    Product {
        #[arg(long)]
        linrep: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Eventual periodicity, proved on the automaton.
    Periodic {
        #[arg(long)]
        dfao: PathBuf,
        #[arg(long, default_value_t = 1024)]
        max_period: u64,
        #[arg(long, default_value_t = 1024)]
        max_preperiod: u64,
    },
}

pub(crate) fn verdict_json(v: &PeriodicityVerdict) -> Value {
    match v {
        PeriodicityVerdict::Periodic { preperiod, period } => {
            json!({ "periodic": true, "preperiod": preperiod, "period": period })
        }
        PeriodicityVerdict::AperiodicUpTo { max_period, max_preperiod } => {
            json!({ "periodic": false, "max_period": max_period, "max_preperiod": max_preperiod })
        }
    }
}

pub(crate) fn verdict_text(v: &PeriodicityVerdict) -> String {
    match v {
        PeriodicityVerdict::Periodic { preperiod, period } => format!("periodic(preperiod {preperiod}, period {period})"),
        PeriodicityVerdict::AperiodicUpTo { max_period, max_preperiod } => {
            format!("aperiodic-up-to(period {max_period}, preperiod {max_preperiod})")
        }
    }
}

fn automaton_outcome(what: &str, a: &BeckerAutomaton, extra: Value) -> Outcome {
    let d = &a.dfao;
    let mut j = json!({
        "operation": what,
        "states": d.states(),
        "representation_dim": a.representation.dim(),
        "degree_bound": a.degree_bound,
        "kernel_size": a.kernel_size,
        "validated_to": a.validated_to,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    Outcome::yes(
        format!(
            "states: {}\nrepresentation dim: {}\nvalidated_to: {}\nterms: {}",
            d.states(),
            a.representation.dim(),
            a.validated_to,
            preview(d.terms(16), 16)
        ),
        j,
    )
    .with_artifact(write_dfao(d))
}

fn dfao_summary(d: &Dfao) -> Value {
    json!({ "base": d.base(), "states": d.states() })
}

pub fn run(c: &AutoCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    match c {
        AutoCmd::Eval { dfao, n, terms } => {
            let d = parse_dfao(&ctx.read(dfao)?)?;
            match (n, terms) {
                (Some(n), _) => {
                    let v = d.eval(*n);
                    Ok(Outcome::yes(v.to_string(), json!({ "n": n, "value": v })))
                }
                (None, Some(t)) => {
                    let v = d.terms(*t);
                    let text = v.iter().map(u64::to_string).collect::<Vec<_>>().join("\n");
                    let rows = std::iter::once(vec!["n".to_string(), "value".to_string()])
                        .chain(v.iter().enumerate().map(|(i, x)| vec![i.to_string(), x.to_string()]))
                        .collect();
                    Ok(Outcome::yes(text, json!({ "terms": v })).with_csv(rows))
                }
                (None, None) => Err(CliError::input("give --n or --terms")),
            }
        }
        AutoCmd::Closure { linrep } => {
            let r = parse_linrep(&ctx.read(linrep)?)?;
            let d = kernel_closure(&r);
            Ok(Outcome::yes(format!("states: {}", d.states()), dfao_summary(&d)).with_artifact(write_dfao(&d)))
        }
        AutoCmd::FromBecker { eq, init } => {
            let AnyEquation::Fp(e) = parse_equation(&ctx.read(eq)?)? else {
                return Err(CliError::input("from-becker needs an equation over a prime field"));
            };
            let f = *e.field();
            let init = init
                .split_whitespace()
                .map(|t| f.parse_elem(t))
                .collect::<mahler_core::Result<Vec<u64>>>()?;
            let a = becker_automatize_mod_p(&e, &init)?;
            Ok(automaton_outcome("from-becker", &a, json!({})))
        }
        AutoCmd::UnitProduct { prime, a, base } => {
            let f = PrimeField::new(*prime)?;
            if *base < 2 {
                return Err(CliError::input("base must be at least 2"));
            }
            let (u, aut) = match unit_product_automatize(f, *a, *base) {
                Ok(r) => r,
                Err(mahler_core::Error::PurelyPeriodicOrbit) => {
                    return Ok(Outcome::new(
                        EXIT_NO,
                        "orbit of a under x -> x^k is purely periodic",
                        json!({ "purely_periodic": true }),
                    ))
                }
                Err(e) => return Err(e.into()),
            };
            let mut o = automaton_outcome(
                "unit-product",
                &aut,
                json!({ "N": u.stabilization_index, "Q": u.q.to_inline(), "S": u.s.to_inline() }),
            );
            o.text = format!("N: {}\nQ: {}\nS: {}\n{}", u.stabilization_index, u.q, u.s, o.text);
            Ok(o)
        }
        AutoCmd::Product { linrep, other } => {
            let a = parse_linrep(&ctx.read(linrep)?)?;
            let b = parse_linrep(&ctx.read(other)?)?;
            let r = representation_product(&a, &b)?.minimize();
            Ok(Outcome::yes(format!("dim: {}", r.dim()), json!({ "dim": r.dim() })).with_artifact(write_linrep(&r)))
        }
        AutoCmd::Periodic { dfao, max_period, max_preperiod } => {
            let d = parse_dfao(&ctx.read(dfao)?)?;
            let v = eventual_periodicity(&d, *max_period, *max_preperiod);
            let code = if matches!(v, PeriodicityVerdict::Periodic { .. }) { crate::EXIT_YES } else { EXIT_NO };
            Ok(Outcome::new(code, verdict_text(&v), verdict_json(&v)))
        }
    }
}
