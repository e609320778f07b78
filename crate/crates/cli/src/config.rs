use std::path::{Path, PathBuf};
use std::sync::Arc;

use ffwb_core::algebra::{Gf, PolyA, PrimeData};
use ffwb_core::series::{SeriesContext, MIN_PREC};
use ffwb_core::tate::DEFAULT_NT;
use ffwb_core::verify::{Setup, Suite};
use ffwb_core::{Error, Result};
use serde::Deserialize;

pub const DEFAULT_PREC: i64 = 240;
pub const DEFAULT_THRESHOLD: i64 = 120;
pub const DEFAULT_LATTICE_BOUND: usize = 6;
pub const DEFAULT_LVALUE_N: usize = 6;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    q: Option<u32>,
    m: Option<u32>,
    prec: Option<i64>,
    nt: Option<usize>,
    lattice_bound: Option<usize>,
    threshold: Option<i64>,
    lvalue_n: Option<usize>,
    #[serde(default)]
    primes: Vec<Vec<u32>>,
    #[serde(default)]
    suites: Vec<String>,
    #[serde(default)]
    output: Output,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Output {
    report: Option<PathBuf>,
    plot: Option<PathBuf>,
}

/// Values given on the command line; they win over the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub prec: Option<i64>,
    pub nt: Option<usize>,
    pub threshold: Option<i64>,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

#[derive(Debug)]
pub struct RunConfig {
    pub setup: Setup,
    pub lvalue_n: usize,
    pub suites: Vec<Suite>,
    pub report: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

pub fn load(path: &Path, over: &Overrides) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse(&text, over)
}

pub fn parse(text: &str, over: &Overrides) -> Result<RunConfig> {
    let file: FileConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    build(file, over)
}

fn build(file: FileConfig, over: &Overrides) -> Result<RunConfig> {
    let q = file.q.ok_or_else(|| Error::Config("missing field q".into()))?;
    let fq = Arc::new(Gf::fq(q).ok_or_else(|| Error::Config(format!("q = {q} is not a prime power")))?);
    let prec = over.prec.or(file.prec).unwrap_or(DEFAULT_PREC);
    if prec < MIN_PREC {
        return Err(Error::Config(format!("prec = {prec} is below the minimum {MIN_PREC}")));
    }
    let nt = over.nt.or(file.nt).unwrap_or(DEFAULT_NT);
    if nt == 0 {
        return Err(Error::Config("nt must be positive".into()));
    }
    let threshold = over.threshold.or(file.threshold).unwrap_or(DEFAULT_THRESHOLD);
    if threshold <= 0 {
        return Err(Error::Config("threshold must be positive".into()));
    }
    let mut primes = Vec::new();
    for codes in &file.primes {
        let poly = PolyA::from_codes(&fq, codes).map_err(|e| Error::Config(format!("prime {codes:?}: {e}")))?;
        let p = PrimeData::new(&poly).map_err(|e| Error::Config(format!("prime {codes:?}: {e}")))?;
        primes.push(Arc::new(p));
    }
    let needed = primes.iter().fold(1, |acc, p| lcm(acc, p.degree() as u32));
    let m = file.m.unwrap_or(needed);
    if m == 0 {
        return Err(Error::Config("m must be positive".into()));
    }
    if let Some(p) = primes.iter().find(|p| m % p.degree() as u32 != 0) {
        return Err(Error::Config(format!(
            "m = {m} is not divisible by the degree {} of the prime {}",
            p.degree(),
            p.poly()
        )));
    }
    let ctx = SeriesContext::new(q, m, prec)?;
    let mut suites = Vec::new();
    for s in &file.suites {
        for x in Suite::parse_list(s)? {
            if !suites.contains(&x) {
                suites.push(x);
            }
        }
    }
    Ok(RunConfig {
        setup: Setup {
            ctx,
            nt,
            lattice_bound: file.lattice_bound.unwrap_or(DEFAULT_LATTICE_BOUND),
            threshold,
            primes,
        },
        lvalue_n: file.lvalue_n.unwrap_or(DEFAULT_LVALUE_N),
        suites,
        report: over.out.clone().or(file.output.report),
        plot: over.plot.clone().or(file.output.plot),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = parse("q = 3\nprimes = [[1, 0, 1], [2, 1]]", &Overrides::default()).unwrap();
        assert_eq!(c.setup.ctx.m(), 2);
        assert_eq!(c.setup.ctx.prec(), 240);
        assert_eq!(c.setup.nt, 16);
        assert_eq!(c.setup.threshold, 120);
    }

    #[test]
    fn rejections() {
        let o = Overrides::default();
        let msg = |t: &str| parse(t, &o).unwrap_err().to_string();
        assert!(msg("q = 6").contains("prime power"));
        assert!(msg("q = 3\nprec = 16").contains("minimum"));
        assert!(msg("q = 3\nprimes = [[2, 0, 1]]").contains("reducible"));
        assert!(msg("q = 3\nm = 1\nprimes = [[1, 0, 1]]").contains("divisible"));
        assert!(msg("q = 3\nsuites = [\"nope\"]").contains("unknown suite"));
        assert!(msg("q = 3\nbogus = 1").contains("unknown field"));
    }

    #[test]
    fn overrides_win() {
        let o = Overrides { prec: Some(64), ..Default::default() };
        assert_eq!(parse("q = 2\nprec = 300", &o).unwrap().setup.ctx.prec(), 64);
    }
}
