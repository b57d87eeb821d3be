use clap::{Subcommand, ValueEnum};
use mahler_core::corpus::{
    standard_series, thue_morse_dfao, zagier_identity_check, zagier_system_check, IdentityReport, ZagierConvention,
};
use mahler_core::mahler::Verification;
use serde_json::{json, Value};

use crate::formats::{write_dfao, write_series};
use crate::{CliError, Outcome, EXIT_NO, EXIT_YES};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    /// Pick the convention under which the identity holds.
    Auto,
    N,
    #[value(name = "n-1")]
    NMinus1,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    /// The ν₃ identity for the central-binomial partial sums.
    Zagier {
        #[arg(long, default_value_t = 5000)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Auto)]
        convention: ConventionArg,
    },
    /// The 3×3 system and the order-4 scalar relation, under both conventions.
    System {
        #[arg(long, default_value_t = 300)]
        precision: usize,
    },
    /// power-indicator, geometric or nu-p-central-binomial-squared.
    Series {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        #[arg(long)]
        terms: usize,
    },
    /// The two-state Thue–Morse automaton.
    ThueMorse,
}

fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "convention": r.convention.name(),
        "n_max": r.n_max,
        "holds": r.holds(),
        "mismatch_count": r.mismatch_count,
        "first_mismatches": r.mismatches.iter().map(|(n, l, rh)| json!({ "n": n, "lhs": l, "rhs": rh })).collect::<Vec<_>>(),
    })
}

fn identity_text(r: &IdentityReport) -> String {
    let mut s = format!(
        "convention {}: {} for 1 <= n <= {}",
        r.convention.name(),
        if r.holds() { "holds" } else { "fails" },
        r.n_max
    );
    if let Some((n, l, rh)) = r.mismatches.first() {
        s.push_str(&format!(" ({} mismatches; first at n = {n}: lhs {l}, rhs {rh})", r.mismatch_count));
    }
    s
}

fn ver(v: &Verification) -> Value {
    match v {
        Verification::HoldsTo(n) => json!({ "holds": true, "holds_to": n }),
        Verification::FailsAt(i) => json!({ "holds": false, "fails_at": i }),
    }
}

fn ver_text(v: &Verification) -> String {
    match v {
        Verification::HoldsTo(n) => format!("holds to {n}"),
        Verification::FailsAt(i) => format!("fails at {i}"),
    }
}

pub fn run(c: &CorpusCmd) -> Result<Outcome, CliError> {
    match c {
        CorpusCmd::Zagier { terms, convention } => {
            if *terms < 1 {
                return Err(CliError::input("--terms must be at least 1"));
            }
            let convs: Vec<ZagierConvention> = match convention {
                ConventionArg::Auto => ZagierConvention::ALL.to_vec(),
                ConventionArg::N => vec![ZagierConvention::SumToN],
                ConventionArg::NMinus1 => vec![ZagierConvention::SumToNMinus1],
            };
            let reports: Vec<IdentityReport> = convs.iter().map(|&c| zagier_identity_check(*terms, c)).collect();
            let validated = reports.iter().find(|r| r.holds()).map(|r| r.convention);
            let mut text: Vec<String> = reports.iter().map(identity_text).collect();
            text.push(format!("validated convention: {}", validated.map_or("none", |c| c.name())));
            Ok(Outcome::new(
                if validated.is_some() { EXIT_YES } else { EXIT_NO },
                text.join("\n"),
                json!({
                    "reports": reports.iter().map(identity_json).collect::<Vec<_>>(),
                    "validated_convention": validated.map(|c| c.name()),
                }),
            ))
        }
        CorpusCmd::System { precision } => {
            let r = zagier_system_check(*precision)?;
            let mut text = Vec::new();
            let mut convs = Vec::new();
            for c in &r.conventions {
                text.push(format!(
                    "convention {}: scalar relation {}; rows {}, {}, {}; row 2 with z^3(1+z): {}",
                    c.convention.name(),
                    ver_text(&c.scalar),
                    ver_text(&c.system.printed[0]),
                    ver_text(&c.system.printed[1]),
                    ver_text(&c.system.printed[2]),
                    ver_text(&c.system.row2_corrected)
                ));
                convs.push(json!({
                    "convention": c.convention.name(),
                    "scalar": ver(&c.scalar),
                    "rows_printed": c.system.printed.iter().map(ver).collect::<Vec<_>>(),
                    "row2_corrected": ver(&c.system.row2_corrected),
                }));
            }
            if let Some(v) = &r.corrupted_a4 {
                text.push(format!("control with a4 = z^21 - z^47: {}", ver_text(v)));
            }
            Ok(Outcome::new(
                if r.scalar_convention.is_some() { EXIT_YES } else { EXIT_NO },
                text.join("\n"),
                json!({
                    "precision": r.precision,
                    "conventions": convs,
                    "scalar_convention": r.scalar_convention.map(|c| c.name()),
                    "corrupted_a4": r.corrupted_a4.as_ref().map(ver),
                }),
            ))
        }
        CorpusCmd::Series { name, param, terms } => {
            let s = standard_series(name, param, *terms)?;
            Ok(Outcome::yes(format!("{name}({param}): {terms} terms"), json!({ "name": name, "param": param, "terms": terms }))
                .with_artifact(write_series(&s)))
        }
        CorpusCmd::ThueMorse => {
            let d = thue_morse_dfao();
            let members: Vec<u64> = (0..14).filter(|&n| d.eval(n) == 1).collect();
            Ok(Outcome::yes(
                format!("members below 14: {members:?}"),
                json!({ "states": d.states(), "members_below_14": members }),
            )
            .with_artifact(write_dfao(&d)))
        }
    }
}
