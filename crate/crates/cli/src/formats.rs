//! Text file formats for series, equations, automata and linear
//! representations.

use std::fmt::Write as _;

use mahler_core::automatic::{Dfao, LinearRepresentation};
use mahler_core::mahler::MahlerEquation;
use mahler_core::{Field, Poly, PrimeField, Rationals, Series};

use crate::CliError;

/// A field named in a file header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(PrimeField),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        let p = s
            .strip_prefix('F')
            .map(str::trim)
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| CliError::input(format!("bad field `{s}`, expected `Q` or `F <p>`")))?;
        Ok(FieldSpec::Fp(PrimeField::new(p).map_err(CliError::core)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySeries {
    Q(Series<Rationals>),
    Fp(Series<PrimeField>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyEquation {
    Q(MahlerEquation<Rationals>),
    Fp(MahlerEquation<PrimeField>),
}

/// Non-empty, non-comment lines, trimmed.
struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    what: &'static str,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, what: &'static str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        Lines { inner: Box::new(inner), what }
    }

    fn next_line(&mut self) -> Result<(usize, &'a str), CliError> {
        self.inner
            .next()
            .ok_or_else(|| CliError::input(format!("{} file ends early", self.what)))
    }

    fn magic(&mut self, word: &str) -> Result<(), CliError> {
        let (n, l) = self.next_line()?;
        if l != word {
            return Err(CliError::input(format!("line {n}: expected `{word}`")));
        }
        Ok(())
    }

    fn key(&mut self, key: &str) -> Result<&'a str, CliError> {
        let (n, l) = self.next_line()?;
        l.strip_prefix(key)
            .and_then(|r| r.trim_start().strip_prefix(':'))
            .map(str::trim)
            .ok_or_else(|| CliError::input(format!("line {n}: expected `{key}: ...`")))
    }

    fn key_num<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, CliError> {
        let v = self.key(key)?;
        v.parse().map_err(|_| CliError::input(format!("bad value `{v}` for `{key}`")))
    }

    fn end(&mut self) -> Result<(), CliError> {
        match self.inner.next() {
            None => Ok(()),
            Some((n, _)) => Err(CliError::input(format!("line {n}: unexpected trailing content"))),
        }
    }
}

fn parse_elems<F: Field>(f: &F, s: &str) -> Result<Vec<F::Elem>, CliError> {
    s.split_whitespace().map(|t| f.parse_elem(t).map_err(CliError::core)).collect()
}

pub fn parse_series(text: &str) -> Result<AnySeries, CliError> {
    let mut l = Lines::new(text, "SERIES");
    l.magic("SERIES")?;
    let field = FieldSpec::parse(l.key("field")?)?;
    let n: usize = l.key_num("precision")?;
    let mut raw = Vec::with_capacity(n);
    for _ in 0..n {
        raw.push(l.next_line()?);
    }
    l.end()?;
    fn build<F: Field>(f: F, raw: &[(usize, &str)]) -> Result<Series<F>, CliError> {
        let c = raw
            .iter()
            .map(|(n, s)| f.parse_elem(s).map_err(|e| CliError::input(format!("line {n}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Series::new(f, c))
    }
    Ok(match field {
        FieldSpec::Q => AnySeries::Q(build(Rationals, &raw)?),
        FieldSpec::Fp(f) => AnySeries::Fp(build(f, &raw)?),
    })
}

pub fn write_series<F: Field>(s: &Series<F>) -> String {
    let mut out = String::new();
    let f = s.field();
    writeln!(out, "SERIES\nfield: {}\nprecision: {}", f.describe(), s.precision()).unwrap();
    for c in s.coeffs() {
        writeln!(out, "{}", f.format_elem(c)).unwrap();
    }
    out
}

pub fn parse_poly<F: Field>(f: &F, s: &str) -> Result<Poly<F>, CliError> {
    if s.trim().is_empty() {
        return Err(CliError::input("empty polynomial"));
    }
    Poly::parse_inline(f.clone(), s).map_err(CliError::core)
}

pub fn parse_equation(text: &str) -> Result<AnyEquation, CliError> {
    let mut l = Lines::new(text, "MAHLER");
    l.magic("MAHLER")?;
    let field = FieldSpec::parse(l.key("field")?)?;
    let base: usize = l.key_num("base")?;
    let order: usize = l.key_num("order")?;
    let a = l.key("A")?;
    let mut ps = Vec::with_capacity(order + 1);
    for i in 0..=order {
        ps.push(l.key(&format!("P{i}"))?);
    }
    l.end()?;
    fn build<F: Field>(f: F, base: usize, a: &str, ps: &[&str]) -> Result<MahlerEquation<F>, CliError> {
        let a = parse_poly(&f, a)?;
        let coeffs = ps.iter().map(|p| parse_poly(&f, p)).collect::<Result<Vec<_>, _>>()?;
        MahlerEquation::new(base, coeffs, a).map_err(CliError::core)
    }
    Ok(match field {
        FieldSpec::Q => AnyEquation::Q(build(Rationals, base, a, &ps)?),
        FieldSpec::Fp(f) => AnyEquation::Fp(build(f, base, a, &ps)?),
    })
}

pub fn write_equation<F: Field>(eq: &MahlerEquation<F>) -> String {
    let mut out = String::new();
    writeln!(out, "MAHLER\nfield: {}\nbase: {}\norder: {}", eq.field().describe(), eq.base(), eq.order()).unwrap();
    writeln!(out, "A: {}", eq.inhomogeneous().to_inline()).unwrap();
    for (i, p) in eq.coeffs().iter().enumerate() {
        writeln!(out, "P{i}: {}", p.to_inline()).unwrap();
    }
    out
}

fn parse_usizes(s: &str) -> Result<Vec<usize>, CliError> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| CliError::input(format!("bad integer `{t}`"))))
        .collect()
}

pub fn parse_dfao(text: &str) -> Result<Dfao, CliError> {
    let mut l = Lines::new(text, "DFAO");
    l.magic("DFAO")?;
    let base: usize = l.key_num("base")?;
    let states: usize = l.key_num("states")?;
    let initial: usize = l.key_num("initial")?;
    let outputs: Vec<u64> = parse_usizes(l.key("outputs")?)?.into_iter().map(|v| v as u64).collect();
    if outputs.len() != states {
        return Err(CliError::input(format!("{} outputs for {states} states", outputs.len())));
    }
    let mut transitions = Vec::with_capacity(states);
    for _ in 0..states {
        let (n, line) = l.next_line()?;
        let row = parse_usizes(line)?;
        if row.len() != base {
            return Err(CliError::input(format!("line {n}: expected {base} transition targets")));
        }
        transitions.push(row);
    }
    l.end()?;
    Dfao::new(base, initial, transitions, outputs).map_err(CliError::core)
}

pub fn write_dfao(d: &Dfao) -> String {
    let mut out = String::new();
    let outs: Vec<String> = d.outputs().iter().map(u64::to_string).collect();
    writeln!(out, "DFAO\nbase: {}\nstates: {}\ninitial: {}\noutputs: {}", d.base(), d.states(), d.initial(), outs.join(" "))
        .unwrap();
    for row in d.transitions() {
        let r: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", r.join(" ")).unwrap();
    }
    out
}

/// `LINREP`, `field:`, `base:`, `dim:`, `row:`, `column:`, then for each
/// digit b a line `M<b>:` followed by dim rows.
pub fn parse_linrep(text: &str) -> Result<LinearRepresentation<PrimeField>, CliError> {
    let mut l = Lines::new(text, "LINREP");
    l.magic("LINREP")?;
    let f = match FieldSpec::parse(l.key("field")?)? {
        FieldSpec::Fp(f) => f,
        FieldSpec::Q => return Err(CliError::input("linear representations must be over a prime field")),
    };
    let base: usize = l.key_num("base")?;
    let dim: usize = l.key_num("dim")?;
    let row = parse_elems(&f, l.key("row")?)?;
    let column = parse_elems(&f, l.key("column")?)?;
    let mut matrices = Vec::with_capacity(base);
    for b in 0..base {
        let (n, head) = l.next_line()?;
        if head != format!("M{b}:") {
            return Err(CliError::input(format!("line {n}: expected `M{b}:`")));
        }
        let mut m = Vec::with_capacity(dim);
        for _ in 0..dim {
            m.push(parse_elems(&f, l.next_line()?.1)?);
        }
        matrices.push(m);
    }
    l.end()?;
    LinearRepresentation::new(f, base, row, matrices, column).map_err(CliError::core)
}

pub fn write_linrep<F: Field>(r: &LinearRepresentation<F>) -> String {
    let f = r.field();
    let join = |v: &[F::Elem]| v.iter().map(|c| f.format_elem(c)).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "LINREP\nfield: {}\nbase: {}\ndim: {}", f.describe(), r.base(), r.dim()).unwrap();
    writeln!(out, "row: {}\ncolumn: {}", join(r.row()), join(r.column())).unwrap();
    for (b, m) in r.matrices().iter().enumerate() {
        writeln!(out, "M{b}:").unwrap();
        for row in m {
            writeln!(out, "{}", join(row)).unwrap();
        }
    }
    out
}
