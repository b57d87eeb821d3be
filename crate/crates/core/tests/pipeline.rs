use mahler_core::mahler::MahlerEquation;
use mahler_core::modp::{pipeline_rationality, PipelineParams, StageStatus, Verdict};
use mahler_core::{Field, Poly, Rationals, Series};

fn q(c: &[i64]) -> Poly<Rationals> {
    Poly::from_i64s(Rationals, c)
}

fn geometric(n: usize) -> Series<Rationals> {
    Series::from_fraction(&q(&[1]), &q(&[1, -3]), n).unwrap()
}

#[test]
fn geometric_series_is_rational() {
    let f = geometric(600);
    let eq2 = MahlerEquation::homogeneous(2, vec![q(&[1, -3]), q(&[-1, 0, 3])]).unwrap();
    let eq3 = MahlerEquation::homogeneous(3, vec![q(&[1, -3]), q(&[-1, 0, 0, 3])]).unwrap();
    let start = std::time::Instant::now();
    let report = pipeline_rationality(&f, &eq2, Some(&eq3), &PipelineParams::default());
    let elapsed = start.elapsed();
    for s in &report.stages {
        println!("{:<16} {:?} {}", s.name, s.status, s.detail);
    }
    println!("elapsed {elapsed:?}");
    let Verdict::Rational(r) = &report.verdict else { panic!("{:?}", report.verdict) };
    assert_eq!(r.numerator(), &q(&[1]));
    assert_eq!(r.denominator(), &q(&[1, -3]));
    let passed: Vec<u64> = report.primes.iter().filter(|p| p.passed).map(|p| p.p).collect();
    assert!(passed.contains(&7));
    assert!(passed.len() >= 3);
    assert_eq!(report.certificates.len(), passed.len());
    assert!(report.stages.iter().all(|s| s.status == StageStatus::Passed));
}

#[test]
fn lacunary_series_without_second_equation() {
    let mut c = vec![0i64; 600];
    let mut e = 1;
    while e < 600 {
        c[e] = 1;
        e *= 2;
    }
    let f = Series::from_i64s(Rationals, &c);
    // F(x²) = F(x) − x
    let eq = MahlerEquation::new(2, vec![q(&[1]), q(&[-1])], q(&[0, -1])).unwrap();
    assert!(eq.verify(&f).unwrap().holds());
    let report = pipeline_rationality(&f, &eq, None, &PipelineParams::default());
    assert_eq!(report.verdict, Verdict::Inconclusive("missing l-equation".into()));
}

#[test]
fn index_one_cyclotomic_factor_violates_hypothesis() {
    // F(x) = F(x²)/((1 − x)(1 − 3x))
    let p0 = q(&[1, -1]).mul(&q(&[1, -3]));
    let eq = MahlerEquation::homogeneous(2, vec![p0.clone(), q(&[-1])]).unwrap();
    let f = mahler_core::mahler::extend_series(&eq, &[Rationals.one()], 600).unwrap();
    let report = pipeline_rationality(&f, &eq, None, &PipelineParams::default());
    assert_eq!(report.verdict, Verdict::HypothesisViolated("fixed_root_check: index 1".into()));
}

#[test]
fn reports_are_deterministic() {
    let f = geometric(200);
    let eq2 = MahlerEquation::homogeneous(2, vec![q(&[1, -3]), q(&[-1, 0, 3])]).unwrap();
    let eq3 = MahlerEquation::homogeneous(3, vec![q(&[1, -3]), q(&[-1, 0, 0, 3])]).unwrap();
    let params = PipelineParams { p_max: 100, ..PipelineParams::default() };
    let a = pipeline_rationality(&f, &eq2, Some(&eq3), &params);
    let b = pipeline_rationality(&f, &eq2, Some(&eq3), &params);
    assert_eq!(a, b);
}
