use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::primes::{prime_search, PrimeReport};
use super::reduce::{reduce_equation, reduce_poly, reduce_series};
use crate::automatic::{
    becker_representation, eventual_periodicity, kernel_closure, representation_product,
    unit_product_representation, unit_product_root_of_unity, PeriodicityVerdict,
};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::mahler::{
    becker_decompose, extend_series, find_equation, multiplicatively_independent, normalize, shift_decompose_at,
    BeckerDecomposition, FindBounds, MahlerEquation, Verification,
};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::rationality::{
    cyclotomic_split, fixed_root_check, hankel_rationality, hankel_required_precision, CyclotomicSplit,
    FixedRootCheck,
};
use crate::series::Series;

/// Terms of F mod p every per-prime automaton is compared with.
const CONSISTENCY_TERMS: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineParams {
    pub p_max: u64,
    pub n_max: u32,
    pub min_primes: usize,
    pub max_period: u64,
    pub max_preperiod: u64,
    /// Base searched for a second equation when none is supplied.
    pub fallback_base: usize,
    pub find_max_order: usize,
    pub find_max_degree: usize,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            p_max: 500,
            n_max: 8,
            min_primes: 3,
            max_period: 1024,
            max_preperiod: 1024,
            fallback_base: 3,
            find_max_order: 3,
            find_max_degree: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub name: &'static str,
    pub status: StageStatus,
    pub detail: String,
    /// Number of coefficients the stage was checked on, if truncated.
    pub certified_to: Option<usize>,
    /// Whether the stage's claim is an exact proof rather than a truncation.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCertificate {
    pub p: u64,
    pub k_states: usize,
    pub l_states: usize,
    pub k_verdict: PeriodicityVerdict,
    pub l_verdict: PeriodicityVerdict,
    pub consistent_to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational(RationalFunction<Rationals>),
    Inconclusive(String),
    HypothesisViolated(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineReport {
    pub stages: Vec<StageRecord>,
    pub primes: Vec<PrimeReport>,
    pub certificates: Vec<PrimeCertificate>,
    pub verdict: Verdict,
}

struct Run {
    stages: Vec<StageRecord>,
    primes: Vec<PrimeReport>,
    certificates: Vec<PrimeCertificate>,
}

impl Run {
    fn stage(&mut self, name: &'static str, status: StageStatus, detail: String, certified_to: Option<usize>, exact: bool) {
        self.stages.push(StageRecord { name, status, detail, certified_to, exact });
    }

    fn pass(&mut self, name: &'static str, detail: String, certified_to: Option<usize>, exact: bool) {
        self.stage(name, StageStatus::Passed, detail, certified_to, exact);
    }

    fn fail(&mut self, name: &'static str, detail: String) {
        self.stage(name, StageStatus::Failed, detail, None, false);
    }

    fn finish(self, verdict: Verdict) -> PipelineReport {
        PipelineReport { stages: self.stages, primes: self.primes, certificates: self.certificates, verdict }
    }
}

/// One side of the argument: the tail equation in one base with its split
/// and Becker decomposition.
struct Side {
    equation: MahlerEquation<Rationals>,
    split: CyclotomicSplit,
    becker: Option<BeckerDecomposition<Rationals>>,
}

fn inconclusive(reason: impl Into<String>) -> Verdict {
    Verdict::Inconclusive(reason.into())
}

/// Decides rationality of F from a k- and an ℓ-Mahler equation. Every
/// stage is recorded; a rational verdict is issued only after the candidate
/// is substituted into both equations exactly.
pub fn pipeline_rationality(
    f: &Series<Rationals>,
    eq_k: &MahlerEquation<Rationals>,
    eq_l: Option<&MahlerEquation<Rationals>>,
    params: &PipelineParams,
) -> PipelineReport {
    let mut run = Run { stages: Vec::new(), primes: Vec::new(), certificates: Vec::new() };
    let verdict = drive(&mut run, f, eq_k, eq_l, params);
    run.finish(verdict)
}

fn drive(
    run: &mut Run,
    f: &Series<Rationals>,
    eq_k: &MahlerEquation<Rationals>,
    eq_l: Option<&MahlerEquation<Rationals>>,
    params: &PipelineParams,
) -> Verdict {
    let k = eq_k.base();
    let l = eq_l.map_or(params.fallback_base, |e| e.base());
    if !multiplicatively_independent(k as u64, l as u64) {
        run.fail("independence", format!("bases {k} and {l} are multiplicatively dependent"));
        return Verdict::HypothesisViolated(format!("independence: bases {k} and {l}"));
    }
    run.pass("independence", format!("bases {k} and {l}"), None, true);

    // normalize
    let mut normalized = Vec::new();
    for (name, eq) in [("k", Some(eq_k)), ("l", eq_l)] {
        let Some(eq) = eq else { continue };
        match eq.verify(f) {
            Ok(Verification::HoldsTo(_)) => {}
            Ok(Verification::FailsAt(i)) => {
                run.fail("normalize", format!("{name}-equation fails on the series at index {i}"));
                return Verdict::HypothesisViolated(format!("normalize: {name}-equation fails at index {i}"));
            }
            Err(e) => {
                run.fail("normalize", e.to_string());
                return inconclusive(format!("normalize: {e}"));
            }
        }
        match normalize(eq) {
            Ok(n) if n.verify(f).map(|v| v.holds()).unwrap_or(false) => normalized.push(n),
            Ok(_) => {
                run.fail("normalize", format!("normalized {name}-equation fails on the series"));
                return inconclusive("normalize: normalized equation fails");
            }
            Err(e) => {
                run.fail("normalize", e.to_string());
                return inconclusive(format!("normalize: {e}"));
            }
        }
    }
    run.pass("normalize", format!("{} equation(s) homogeneous, coprime coefficients", normalized.len()), Some(f.precision()), false);

    // shift so that every P₀(0) = 1
    let v_max = normalized.iter().map(|e| e.coeff(0).ord().unwrap_or(0)).max().unwrap_or(0);
    let (shift, head, tail, tails) = if v_max == 0 {
        run.pass("shift", "not needed: P0(0) = 1".into(), None, true);
        (0, Poly::zero(Rationals), f.clone(), normalized)
    } else {
        let Some(a) = (v_max + 1..f.precision()).find(|&i| !Rationals.is_zero(f.coeff(i))) else {
            run.fail("shift", "series is a polynomial within precision".into());
            return inconclusive("shift: polynomial input");
        };
        let mut tails = Vec::new();
        let mut head = Poly::zero(Rationals);
        let mut tail = f.clone();
        for eq in &normalized {
            match shift_decompose_at(eq, f, a) {
                Ok(sd) => {
                    head = sd.head;
                    tail = sd.tail_series;
                    tails.push(sd.tail_equation);
                }
                Err(e) => {
                    run.fail("shift", e.to_string());
                    return inconclusive(format!("shift: {e}"));
                }
            }
        }
        run.pass("shift", format!("a = {a}"), Some(tail.precision()), false);
        (a, head, tail, tails)
    };

    let mut sides: Vec<Side> = Vec::new();
    for eq in tails {
        match split_side(run, eq) {
            Ok(side) => sides.push(side),
            Err(v) => return v,
        }
    }

    // second equation
    if eq_l.is_none() {
        let bounds = FindBounds::new(params.find_max_order, params.find_max_degree);
        let found = match find_equation(&tail, l, bounds) {
            Ok(found) => found,
            Err(e) => {
                run.fail("l-equation", e.to_string());
                return inconclusive(format!("missing l-equation: {e}"));
            }
        };
        let Some(found) = found else {
            run.fail(
                "l-equation",
                format!("no base-{l} equation of order <= {} and degree <= {}", bounds.max_order, bounds.max_degree),
            );
            return inconclusive("missing l-equation");
        };
        let eq = match normalize(&found.equation) {
            Ok(e) if e.coeff(0).coeff(0) == Rationals.one() => e,
            _ => {
                run.fail("l-equation", "found equation has P0(0) = 0 after normalization".into());
                return inconclusive("l-equation: P0(0) = 0");
            }
        };
        run.pass("l-equation", format!("found base-{l} equation of order {}", eq.order()), Some(found.certified_to), false);
        match split_side(run, eq) {
            Ok(side) => sides.push(side),
            Err(v) => return v,
        }
    }

    // Becker decompositions
    for side in sides.iter_mut() {
        match becker_decompose(&side.equation, &tail) {
            Ok(bd) => side.becker = Some(bd),
            Err(e) => {
                run.fail("becker", e.to_string());
                return inconclusive(format!("becker: {e}"));
            }
        }
    }
    run.pass("becker", "F = H^-1 * G on both sides".into(), Some(tail.precision()), false);

    // primes
    let (sk, sl) = (&sides[0], &sides[1]);
    let reports = prime_search(&sk.split.free_part, &sl.split.free_part, k as u64, l as u64, params.p_max, params.n_max);
    let passing: Vec<u64> = reports.iter().filter(|r| r.passed).map(|r| r.p).collect();
    run.primes = reports;
    if passing.len() < params.min_primes {
        run.fail("primes", format!("{} prime(s) passed, {} required", passing.len(), params.min_primes));
        return inconclusive(format!("primes: only {} passed", passing.len()));
    }
    run.pass("primes", format!("{} prime(s) <= {} passed", passing.len(), params.p_max), None, true);

    // per-prime automata
    let mut skipped = Vec::new();
    for &p in &passing {
        let report = run.primes.iter().find(|r| r.p == p).expect("report").clone();
        match certify_prime(p, &report, sk, sl, &tail, params) {
            Ok(cert) => run.certificates.push(cert),
            Err(Error::BadPrime { .. }) => skipped.push(p),
            Err(e) => {
                run.fail("automatization", format!("p = {p}: {e}"));
                return inconclusive(format!("automatization at p = {p}: {e}"));
            }
        }
    }
    let detail = if skipped.is_empty() {
        format!("{} prime(s) automatized, consistent to {CONSISTENCY_TERMS} terms", run.certificates.len())
    } else {
        format!("{} prime(s) automatized; skipped for bad reduction: {skipped:?}", run.certificates.len())
    };
    if run.certificates.len() < params.min_primes {
        run.fail("automatization", detail);
        return inconclusive("automatization: too few primes");
    }
    run.pass("automatization", detail, Some(CONSISTENCY_TERMS), false);
    let aperiodic: Vec<u64> = run
        .certificates
        .iter()
        .filter(|c| !matches!(c.k_verdict, PeriodicityVerdict::Periodic { .. }) || !matches!(c.l_verdict, PeriodicityVerdict::Periodic { .. }))
        .map(|c| c.p)
        .collect();
    if !aperiodic.is_empty() {
        run.fail("periodicity", format!("not certified periodic within bounds at p in {aperiodic:?}"));
        return inconclusive("periodicity: bounds exhausted");
    }
    run.pass("periodicity", "every prime eventually periodic".into(), None, true);

    // Hankel on the tail
    let d = sides.iter().map(|s| s.equation.max_degree()).min().unwrap_or(0);
    let need = hankel_required_precision(d).max(tail.precision());
    let tail_ext = match extend_series(&sides[0].equation, &tail.coeffs()[..1], need) {
        Ok(t) if t.truncate(tail.precision()) == tail => t,
        _ => {
            run.fail("hankel", "could not extend the tail series".into());
            return inconclusive("hankel: extension failed");
        }
    };
    let rec = match hankel_rationality(&tail_ext, d) {
        Ok(Some(r)) => r,
        Ok(None) => {
            run.fail("hankel", format!("no fraction of degree <= {d}"));
            return inconclusive("hankel: no reconstruction");
        }
        Err(e) => {
            run.fail("hankel", e.to_string());
            return inconclusive(format!("hankel: {e}"));
        }
    };
    run.pass("hankel", format!("degree bound {d}, window rank {}", rec.rank), Some(rec.certified_to), false);

    // undo the shift: F = T_a + x^a·A/B
    let tail_fraction = rec.fraction.clone();
    let candidate = if shift == 0 {
        tail_fraction.clone()
    } else {
        let b = tail_fraction.denominator();
        let num = head.mul(b).add(&tail_fraction.numerator().shift_up(shift));
        RationalFunction::new(num, b.clone()).expect("nonzero denominator")
    };

    // exact substitution
    let mut checks: Vec<(&str, bool)> = vec![("k", substitutes_to_zero(eq_k, &candidate))];
    match eq_l {
        Some(e) => checks.push(("l", substitutes_to_zero(e, &candidate))),
        None => checks.push(("l (tail)", substitutes_to_zero(&sides[1].equation, &tail_fraction))),
    }
    if let Some((name, _)) = checks.iter().find(|c| !c.1) {
        run.fail("verification", format!("candidate does not satisfy the {name}-equation"));
        return inconclusive("verification failed");
    }
    run.pass("verification", "candidate satisfies both equations exactly".into(), None, true);
    Verdict::Rational(candidate)
}

fn split_side(run: &mut Run, eq: MahlerEquation<Rationals>) -> core::result::Result<Side, Verdict> {
    let k = eq.base();
    let split = match cyclotomic_split(eq.coeff(0)) {
        Ok(s) => s,
        Err(e) => {
            run.fail("split", e.to_string());
            return Err(inconclusive(format!("split: {e}")));
        }
    };
    run.pass(
        "split",
        format!("base {k}: cyclotomic indices {:?}, free part degree {}", split.indices, split.free_part.degree_or_zero()),
        None,
        true,
    );
    if let FixedRootCheck::Violation(n) = fixed_root_check(&split.indices, k as u64) {
        run.fail("fixed-check", format!("base {k}: index {n}"));
        return Err(Verdict::HypothesisViolated(format!("fixed_root_check: index {n}")));
    }
    run.pass("fixed-check", format!("base {k}: no root of unity fixed by x -> x^{k}"), None, true);
    Ok(Side { equation: eq, split, becker: None })
}

/// Automaton for F mod p in the side's base, compared with the reduced
/// series, and its periodicity verdict.
fn side_automaton(
    fp: PrimeField,
    side: &Side,
    roots: &[u64],
    tail_mod_p: &Series<PrimeField>,
    params: &PipelineParams,
) -> Result<(usize, PeriodicityVerdict)> {
    let k = side.equation.base();
    let bd = side.becker.as_ref().expect("decomposed");
    let eq_b = reduce_equation(fp, &bd.becker_equation)?;
    let g0 = reduce_series(fp, &bd.becker_part.truncate(1))?;
    let (mut product, _) = becker_representation(&eq_b, g0.coeffs(), &Poly::one(fp))?;
    for &a in roots {
        let unit = unit_product_representation(fp, a, k)?;
        product = representation_product(&product, &unit)?.minimize();
    }
    if !side.split.indices.is_empty() {
        let mut q = Poly::one(fp);
        let mut s = Poly::one(fp);
        for &(n, mult) in &side.split.indices {
            let up = unit_product_root_of_unity(n, k)?;
            q = q.mul(&reduce_poly(fp, &up.q)?.pow(mult as usize));
            s = s.mul(&reduce_poly(fp, &up.s)?.pow(mult as usize));
        }
        let eq_s = MahlerEquation::homogeneous(k, vec![Poly::one(fp), s.neg()])?;
        let (cyclo, _) = becker_representation(&eq_s, &[1], &q)?;
        product = representation_product(&product, &cyclo)?.minimize();
    }
    let dfao = kernel_closure(&product).minimize();
    for n in 0..CONSISTENCY_TERMS {
        if dfao.eval(n as u64) != *tail_mod_p.coeff(n) {
            return Err(Error::VerificationFailed { index: n });
        }
    }
    Ok((dfao.states(), eventual_periodicity(&dfao, params.max_period, params.max_preperiod)))
}

fn certify_prime(
    p: u64,
    report: &PrimeReport,
    sk: &Side,
    sl: &Side,
    tail: &Series<Rationals>,
    params: &PipelineParams,
) -> Result<PrimeCertificate> {
    let fp = PrimeField::new(p)?;
    let eq = reduce_equation(fp, &sk.equation)?;
    let init = reduce_series(fp, &tail.truncate(1))?;
    let tail_mod_p = extend_series(&eq, init.coeffs(), CONSISTENCY_TERMS)?;
    if let Some(i) = reduce_series(fp, tail)?.first_difference(&tail_mod_p.truncate(tail.precision())) {
        return Err(Error::VerificationFailed { index: i });
    }
    let k_roots: Vec<u64> = report.k_witnesses.iter().map(|w| w.a).collect();
    let l_roots: Vec<u64> = report.l_witnesses.iter().map(|w| w.a).collect();
    let (k_states, k_verdict) = side_automaton(fp, sk, &k_roots, &tail_mod_p, params)?;
    let (l_states, l_verdict) = side_automaton(fp, sl, &l_roots, &tail_mod_p, params)?;
    Ok(PrimeCertificate { p, k_states, l_states, k_verdict, l_verdict, consistent_to: CONSISTENCY_TERMS })
}

/// A·∏ D(x^{kʲ}) + Σᵢ Pᵢ·N(x^{kⁱ})·∏_{j≠i} D(x^{kʲ}) = 0 for R = N/D.
fn substitutes_to_zero(eq: &MahlerEquation<Rationals>, r: &RationalFunction<Rationals>) -> bool {
    let k = eq.base();
    let n = eq.order();
    let Some(pows) = (0..=n).map(|i| k.checked_pow(i as u32)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let dens: Vec<Poly<Rationals>> = pows.iter().map(|&s| r.denominator().substitute_power(s)).collect();
    let all = dens.iter().fold(Poly::one(Rationals), |acc, d| acc.mul(d));
    let mut total = eq.inhomogeneous().mul(&all);
    for i in 0..=n {
        let others = dens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::one(Rationals), |acc, (_, d)| acc.mul(d));
        let term = eq.coeff(i).mul(&r.numerator().substitute_power(pows[i])).mul(&others);
        total = total.add(&term);
    }
    total.is_zero()
}
