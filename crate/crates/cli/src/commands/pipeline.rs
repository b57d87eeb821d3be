use std::path::PathBuf;

use clap::Subcommand;
use mahler_core::mahler::MahlerEquation;
use mahler_core::modp::{pipeline_rationality, PipelineParams, PipelineReport, StageStatus, Verdict};
use mahler_core::Rationals;
use serde_json::{json, Value};

use super::auto::{verdict_json, verdict_text};
use crate::formats::{parse_equation, parse_series, AnyEquation, AnySeries};
use crate::{CliError, Ctx, Outcome, EXIT_NO, EXIT_YES};

#[derive(Subcommand, Debug)]
pub enum PipelineCmd {
    /// Decide rationality from a k- and an ℓ-Mahler equation.
    Run {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        eqk: PathBuf,
        #[arg(long)]
        eql: Option<PathBuf>,
        #[arg(long, default_value_t = 500)]
        pmax: u64,
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        #[arg(long, default_value_t = 3)]
        min_primes: usize,
    },
}

fn rational_eq(ctx: &mut Ctx, p: &PathBuf) -> Result<MahlerEquation<Rationals>, CliError> {
    match parse_equation(&ctx.read(p)?)? {
        AnyEquation::Q(e) => Ok(e),
        AnyEquation::Fp(_) => Err(CliError::input(format!("{}: pipeline equations must be over Q", p.display()))),
    }
}

fn status(s: StageStatus) -> &'static str {
    match s {
        StageStatus::Passed => "passed",
        StageStatus::Failed => "failed",
        StageStatus::Skipped => "skipped",
    }
}

pub fn report_json(r: &PipelineReport) -> Value {
    let verdict = match &r.verdict {
        Verdict::Rational(f) => json!({
            "kind": "rational",
            "numerator": f.numerator().to_inline(),
            "denominator": f.denominator().to_inline(),
        }),
        Verdict::Inconclusive(why) => json!({ "kind": "inconclusive", "reason": why }),
        Verdict::HypothesisViolated(why) => json!({ "kind": "hypothesis-violated", "detail": why }),
    };
    json!({
        "verdict": verdict,
        "stages": r.stages.iter().map(|s| json!({
            "name": s.name,
            "status": status(s.status),
            "detail": s.detail,
            "certified_to": s.certified_to,
            "exact": s.exact,
        })).collect::<Vec<_>>(),
        "primes": r.primes.iter().map(|p| json!({
            "p": p.p,
            "splits": p.splits,
            "passed": p.passed,
            "k_witnesses": p.k_witnesses.iter().map(|w| json!({ "a": w.a, "n": w.witness })).collect::<Vec<_>>(),
            "l_witnesses": p.l_witnesses.iter().map(|w| json!({ "a": w.a, "n": w.witness })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "certificates": r.certificates.iter().map(|c| json!({
            "p": c.p,
            "k_states": c.k_states,
            "l_states": c.l_states,
            "k_verdict": verdict_json(&c.k_verdict),
            "l_verdict": verdict_json(&c.l_verdict),
            "consistent_to": c.consistent_to,
        })).collect::<Vec<_>>(),
    })
}

pub fn report_text(r: &PipelineReport) -> String {
    let mut out = String::new();
    for s in &r.stages {
        let cert = match (s.exact, s.certified_to) {
            (true, _) => " [exact]".to_string(),
            (false, Some(n)) => format!(" [to {n}]"),
            (false, None) => String::new(),
        };
        out.push_str(&format!("{:<16} {:<8} {}{}\n", s.name, status(s.status), s.detail, cert));
    }
    for c in &r.certificates {
        out.push_str(&format!(
            "p = {:<4} k: {} states, {}; l: {} states, {}\n",
            c.p,
            c.k_states,
            verdict_text(&c.k_verdict),
            c.l_states,
            verdict_text(&c.l_verdict)
        ));
    }
    out.push_str(&match &r.verdict {
        Verdict::Rational(f) => format!("verdict: rational(({}) / ({}))\n", f.numerator(), f.denominator()),
        Verdict::Inconclusive(why) => format!("verdict: inconclusive({why})\n"),
        Verdict::HypothesisViolated(why) => format!("verdict: hypothesis-violated({why})\n"),
    });
    out
}

pub fn run(c: &PipelineCmd, ctx: &mut Ctx) -> Result<Outcome, CliError> {
    let PipelineCmd::Run { series, eqk, eql, pmax, nmax, min_primes } = c;
    let AnySeries::Q(f) = parse_series(&ctx.read(series)?)? else {
        return Err(CliError::input("pipeline needs a series over Q"));
    };
    let ek = rational_eq(ctx, eqk)?;
    let el = match eql {
        Some(p) => Some(rational_eq(ctx, p)?),
        None => None,
    };
    let params = PipelineParams { p_max: *pmax, n_max: *nmax, min_primes: *min_primes, ..PipelineParams::default() };
    let r = pipeline_rationality(&f, &ek, el.as_ref(), &params);
    let code = if matches!(r.verdict, Verdict::Rational(_)) { EXIT_YES } else { EXIT_NO };
    Ok(Outcome::new(code, report_text(&r), report_json(&r)))
}
