//! Verification suites: each check becomes a report row with a residual, a
//! threshold and a status.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{formal_derivative, polys_below, roots_in_ext, Fe, PolyA, PrimeData};
use crate::anderson::{
    carlitz, carlitz_period, lattice_to_drinfeld, tensor_power, torsion_char, vec_residual, Lattice,
};
use crate::error::{Error, Result};
use crate::gauss::{
    enumerate_characters, eigen_residual, eta_projection, fourier_inversion_check, frobenius_orbit_residual,
    gauss_space_dim, gauss_sum, values_diagram, MultChar,
};
use crate::lseries::{goss_gauss_residual, goss_value, pellarin_partial, pellarin_trace, TraceRow};
use crate::par;
use crate::series::{ContextExt, Laurent, Residual, SeriesContext, INF};
use crate::special::{
    a_expansion_identity, agf, carlitz_omega, delta_u, different_element, judge, motive_system_residual,
    shtuka_residual, special_residual, tensor_power_period,
};
use crate::tensor::TensorVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Carlitz,
    Different,
    Gauss,
    Diagram,
    Lseries,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Carlitz, Suite::Different, Suite::Gauss, Suite::Diagram, Suite::Lseries];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Carlitz => "carlitz",
            Suite::Different => "different",
            Suite::Gauss => "gauss",
            Suite::Diagram => "diagram",
            Suite::Lseries => "lseries",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub suite: &'static str,
    pub name: String,
    pub anchor: &'static str,
    /// Valuation of the residual; `None` when it vanishes to precision or
    /// the check is not numerical.
    pub residual: Option<i64>,
    /// Precision of the residual; `None` when exact.
    pub known_to: Option<i64>,
    pub threshold: Option<i64>,
    pub status: Status,
    pub detail: String,
}

impl Row {
    fn new(suite: Suite, name: impl Into<String>, anchor: &'static str) -> Row {
        Row {
            suite: suite.name(),
            name: name.into(),
            anchor,
            residual: None,
            known_to: None,
            threshold: None,
            status: Status::Pass,
            detail: String::new(),
        }
    }

    fn error(mut self, e: &Error) -> Row {
        self.status = if e.is_precision() { Status::Error } else { Status::Fail };
        self.detail = e.to_string();
        self
    }

    fn residual(mut self, r: Result<Residual>, threshold: i64) -> Row {
        self.threshold = Some(threshold);
        let r = match r {
            Ok(r) => r,
            Err(e) => return self.error(&e),
        };
        self.residual = r.valuation;
        self.known_to = (r.known_to < INF).then_some(r.known_to);
        match judge(r, threshold) {
            Ok(true) => self,
            Ok(false) => {
                self.status = Status::Fail;
                self
            }
            Err(e) => self.error(&e),
        }
    }

    fn exact(mut self, ok: Result<bool>, detail: impl Into<String>) -> Row {
        match ok {
            Ok(ok) => {
                self.status = if ok { Status::Pass } else { Status::Fail };
                self.detail = detail.into();
                self
            }
            Err(e) => self.error(&e),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Everything a suite needs.
#[derive(Clone, Debug)]
pub struct Setup {
    pub ctx: Arc<SeriesContext>,
    pub nt: usize,
    pub lattice_bound: usize,
    pub threshold: i64,
    pub primes: Vec<Arc<PrimeData>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub q: u32,
    pub m: u32,
    pub prec: i64,
    pub nt: usize,
    pub threshold: i64,
    pub primes: Vec<String>,
    pub rows: Vec<Row>,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    #[serde(skip)]
    pub trace: Vec<TraceRow>,
}

impl Report {
    /// `0` all pass, `1` failures, `3` precision-indeterminate rows.
    pub fn exit_code(&self) -> i32 {
        if self.errors > 0 {
            3
        } else if self.failed > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tname\tanchor\tresidual\tknown_to\tthreshold\tstatus\n");
        let show = |v: Option<i64>| v.map_or("inf".to_string(), |x| x.to_string());
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.suite,
                r.name,
                r.anchor,
                show(r.residual),
                show(r.known_to),
                r.threshold.map_or("-".to_string(), |x| x.to_string()),
                r.status
            ));
        }
        out
    }
}

pub fn run(setup: &Setup, suites: &[Suite]) -> Report {
    let results = par::map(suites, |&s| run_suite(setup, s));
    let mut rows = Vec::new();
    let mut trace = Vec::new();
    for (r, t) in results {
        rows.extend(r);
        trace.extend(t);
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    Report {
        q: setup.ctx.q(),
        m: setup.ctx.m(),
        prec: setup.ctx.prec(),
        nt: setup.nt,
        threshold: setup.threshold,
        primes: setup.primes.iter().map(|p| p.poly().to_string()).collect(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        errors: count(Status::Error),
        rows,
        trace,
    }
}

fn run_suite(setup: &Setup, suite: Suite) -> (Vec<Row>, Vec<TraceRow>) {
    match suite {
        Suite::Carlitz => (carlitz_suite(setup), Vec::new()),
        Suite::Different => (different_suite(setup), Vec::new()),
        Suite::Gauss => (gauss_suite(setup), Vec::new()),
        Suite::Diagram => (diagram_suite(setup), Vec::new()),
        Suite::Lseries => lseries_suite(setup),
    }
}

fn poly(ctx: &Arc<SeriesContext>, codes: &[u32]) -> PolyA {
    PolyA::from_codes(ctx.fq(), codes).expect("codes below q")
}

fn carlitz_suite(s: &Setup) -> Vec<Row> {
    let c = &s.ctx;
    let t = s.threshold;
    let m = carlitz(c);
    let pi = carlitz_period(c);
    let suite = Suite::Carlitz;
    let mut rows = Vec::new();
    rows.push(
        Row::new(suite, "exp(pi) = 0", "carlitz-period-kernel")
            .residual(m.exp_eval(std::slice::from_ref(&pi)).map(|k| Residual::of(&k[0])), t),
    );
    let nt = s.nt.min(12);
    let w = carlitz_omega(c, s.nt);
    let a = agf(&m, std::slice::from_ref(&pi), s.nt);
    rows.push(Row::new(suite, format!("omega product = agf(pi), n < {nt}"), "omega-two-ways").residual(
        a.as_ref().map(|a| a.value[0].truncate_t(nt).residual(&w.truncate_t(nt))).map_err(Clone::clone),
        t,
    ));
    rows.push(Row::new(suite, "omega twist = (t - theta) omega", "shtuka-equation").residual(Ok(shtuka_residual(&w)), t));
    rows.push(
        Row::new(suite, "agf(pi) is special", "special-functions")
            .residual(a.as_ref().map(|a| special_residual(&m, &a.value)).map_err(Clone::clone), t),
    );
    let x = pi.div(&c.theta_pow(3)).expect("theta is a unit");
    rows.push(
        Row::new(suite, "exp functional equation", "exp-functional-equation")
            .residual(m.functional_equation_residual(std::slice::from_ref(&x)), t),
    );
    let a2 = poly(c, &[1, 0, 1]);
    let b2 = poly(c, &[1, 1]);
    let lhs = m.phi(&a2.mul(&b2));
    let rhs = m.phi(&a2).compose(&m.phi(&b2));
    let sum = m.phi(&a2.add(&b2)).residual(&m.phi(&a2).add(&m.phi(&b2)));
    rows.push(Row::new(suite, "phi is a ring morphism", "phi-ring-morphism").exact(
        Ok(lhs.residual(&rhs).is_zero() && sum.is_zero()),
        "phi_(ab) = phi_a phi_b, phi_(a+b) = phi_a + phi_b",
    ));
    let m2 = tensor_power(c, 2);
    let lam = tensor_power_period(c, 2);
    rows.push(Row::new(suite, "tensor square: exp(lambda) = 0", "tensor-power-period").residual(
        lam.as_ref()
            .map_err(Clone::clone)
            .and_then(|l| m2.exp_eval(l))
            .map(|k| vec_residual(&k, &[c.zero(), c.zero()])),
        t,
    ));
    let y = [c.theta_pow(-1), pi.clone()];
    rows.push(
        Row::new(suite, "tensor square: exp functional equation", "exp-functional-equation")
            .residual(m2.functional_equation_residual(&y), t),
    );
    rows
}

fn different_suite(s: &Setup) -> Vec<Row> {
    let c = &s.ctx;
    let fq = c.fq();
    let suite = Suite::Different;
    let mut rows = Vec::new();
    for k in 0..=5 {
        let a = PolyA::monomial(fq, Fe::ONE, k);
        rows.push(
            Row::new(suite, format!("expansion of t^{k} along the shtuka"), "a-expansion")
                .exact(Ok(a_expansion_identity(&a)), "exact"),
        );
    }
    let mut count = 0;
    let mut bad = Vec::new();
    for u in polys_below(fq, 5) {
        if formal_derivative(&u).is_zero() {
            continue;
        }
        count += 1;
        let ok = different_element(&u).map(|d| d.check_derivative() && d.check_division() && d.check_kernel());
        if ok != Ok(true) {
            bad.push(u.to_string());
        }
    }
    rows.push(Row::new(suite, "different elements, deg u <= 4", "different-element").exact(
        Ok(bad.is_empty()),
        if bad.is_empty() { format!("{count} polynomials") } else { format!("failed: {}", bad.join(", ")) },
    ));
    let m = carlitz(c);
    let pi = carlitz_period(c);
    let reference = agf(&m, std::slice::from_ref(&pi), s.nt);
    for codes in [&[0u32, 1][..], &[0, 1, 1], &[0, 0, 1, 1]] {
        let u = poly(c, codes);
        let r = different_element(&u).and_then(|d| {
            let x = d.act_on(&m, std::slice::from_ref(&pi));
            let f = delta_u(&m, &u, &x, s.nt)?;
            Ok(f.residual(reference.as_ref().map_err(Clone::clone)?))
        });
        rows.push(Row::new(suite, format!("delta_u(D_u pi) = agf(pi), u = {u}"), "delta-independence").residual(r, s.threshold - 20));
    }
    rows
}

fn first_coprime(p: &PrimeData) -> PolyA {
    let fq = p.fq();
    (1..fq.order())
        .map(|c| PolyA::from_codes(fq, &[c, 1]).unwrap())
        .find(|a| !p.reduce(a).is_zero())
        .unwrap()
}

fn gauss_suite(s: &Setup) -> Vec<Row> {
    let c = &s.ctx;
    let t = s.threshold;
    let suite = Suite::Gauss;
    let m = carlitz(c);
    let pi = carlitz_period(c);
    let mut rows = Vec::new();
    for p in &s.primes {
        let tag = p.poly().to_string();
        let chars = enumerate_characters(p);
        let ev: Vec<&MultChar> = chars.iter().filter(|x| x.evaluative).collect();
        rows.push(Row::new(suite, format!("{tag} characters"), "multiplicative-characters").exact(
            Ok(chars.len() == p.size() as usize - 1 && ev.len() == p.degree()),
            format!("{} characters, {} evaluative", chars.len(), ev.len()),
        ));
        let psi = match torsion_char(&m, std::slice::from_ref(&pi), p) {
            Ok(x) => x,
            Err(e) => {
                rows.push(Row::new(suite, format!("{tag} torsion character"), "torsion-character").error(&e));
                continue;
            }
        };
        let a = first_coprime(p);
        let samples = [psi.clone(), psi.twisted_by(&a)];
        let worst = chars
            .iter()
            .filter(|x| !x.evaluative)
            .flat_map(|x| samples.iter().map(move |s| gauss_sum(x, s).norm_residual()))
            .fold(Residual::zero(INF), Residual::min);
        rows.push(Row::new(suite, format!("{tag} non-evaluative sums vanish"), "gauss-sum-vanishing").residual(Ok(worst), t));
        for x in &ev {
            let g = gauss_sum(x, &psi);
            let v = g.min_valuation();
            rows.push(
                Row::new(suite, format!("{tag} evaluative sum nonzero, k = {}", x.exponent), "gauss-sum-nonzero")
                    .exact(Ok(v.is_some_and(|v| v < t / 2)), format!("min valuation {v:?}")),
            );
            rows.push(
                Row::new(suite, format!("{tag} eigen-equation, k = {}", x.exponent), "gauss-eigen-equation")
                    .residual(Ok(eigen_residual(&m, x, &g)), t),
            );
        }
        rows.push(Row::new(suite, format!("{tag} Fourier inversion"), "fourier-inversion").residual(
            fourier_inversion_check(&psi, t).map(|x| x.1),
            t,
        ));
        rows.push(
            Row::new(suite, format!("{tag} Frobenius orbit of evaluative sums"), "frobenius-orbit")
                .residual(Ok(frobenius_orbit_residual(&psi)), t),
        );
        let chi = MultChar::reduction(p);
        let g = gauss_sum(&chi, &psi);
        let twisted = gauss_sum(&chi, &psi.twisted_by(&a)).residual(&g.mul_scalar(p.reduce(&a)));
        rows.push(Row::new(suite, format!("{tag} twisting law, a = {a}"), "gauss-twisting").residual(Ok(twisted), t));
        let e = TensorVec::pure(p, c, Fe::ONE, psi.value(Fe::ONE));
        let eta = eta_projection(&m, &chi, &e).residual(&g);
        rows.push(Row::new(suite, format!("{tag} eta(1 x psi(1)) = g"), "eta-projection").residual(Ok(eta), t));
        let dim = gauss_space_dim(&m, &chi, &[vec![pi.clone()]]).map(|x| x.0);
        rows.push(
            Row::new(suite, format!("{tag} Carlitz Gauss space dimension"), "gauss-space-dimension")
                .exact(dim.clone().map(|d| d == 1), format!("{dim:?}")),
        );
    }
    rows.extend(rank_two_rows(s));
    rows.extend(tensor_square_rows(s));
    rows
}

/// The rank-2 module of the lattice `A π̃ + A u^{-1} π̃`; needs `q > 2`,
/// since `u^{-1} = θ` when `q = 2`.
fn rank_two_rows(s: &Setup) -> Vec<Row> {
    let c = &s.ctx;
    let suite = Suite::Gauss;
    if c.q() == 2 {
        return Vec::new();
    }
    let pi = carlitz_period(c);
    let lattice = Lattice { basis: vec![pi.clone(), &pi * &c.u_inv()], deg_bound: s.lattice_bound };
    let lm = match lattice_to_drinfeld(c, &lattice, s.threshold) {
        Ok(x) => x,
        Err(e) => return vec![Row::new(suite, "rank-2 lattice module", "lattice-module").error(&e)],
    };
    let floor = lm.noise_floor;
    let m = &lm.module;
    let mut rows = vec![Row::new(suite, "rank-2 lattice module", "lattice-module")
        .exact(Ok(true), format!("noise floor {floor}"))];
    for (i, lam) in lattice.basis.iter().enumerate() {
        let f = agf(m, std::slice::from_ref(lam), s.nt);
        rows.push(
            Row::new(suite, format!("rank-2 agf(lambda_{}) is special", i + 1), "special-functions")
                .residual(f.as_ref().map(|f| special_residual(m, &f.value)).map_err(Clone::clone), floor),
        );
        rows.push(
            Row::new(suite, format!("rank-2 agf(lambda_{}) motive system", i + 1), "tau-difference-system").residual(
                f.as_ref().map_err(Clone::clone).and_then(|f| motive_system_residual(m, &f.value[0])),
                floor,
            ),
        );
    }
    let p = match PrimeData::new(&poly(c, &[c.fq().order() - 1, 1])) {
        Ok(p) => Arc::new(p),
        Err(e) => return vec![Row::new(suite, "prime t - 1", "gauss-space-dimension").error(&e)],
    };
    let periods: Vec<Vec<Laurent>> = lattice.basis.iter().map(|l| vec![l.clone()]).collect();
    let dim = gauss_space_dim(m, &MultChar::reduction(&p), &periods).map(|x| x.0);
    rows.push(
        Row::new(suite, "rank-2 Gauss space dimension at t - 1", "gauss-space-dimension")
            .exact(dim.clone().map(|d| d == 2), format!("{dim:?}")),
    );
    rows
}

fn tensor_square_rows(s: &Setup) -> Vec<Row> {
    let c = &s.ctx;
    let suite = Suite::Gauss;
    let m = tensor_power(c, 2);
    let p = Arc::new(PrimeData::new(&poly(c, &[c.fq().order() - 1, 1])).expect("t - 1 is prime"));
    let r = tensor_power_period(c, 2).and_then(|lam| {
        let psi = torsion_char(&m, &lam, &p)?;
        let chi = MultChar::reduction(&p);
        Ok(eigen_residual(&m, &chi, &gauss_sum(&chi, &psi)))
    });
    vec![Row::new(suite, "tensor square eigen-equation at t - 1", "gauss-eigen-equation").residual(r, s.threshold)]
}

fn diagram_suite(s: &Setup) -> Vec<Row> {
    let c = &s.ctx;
    let t = s.threshold - 20;
    let suite = Suite::Diagram;
    let m = carlitz(c);
    let pi = carlitz_period(c);
    let mut rows = Vec::new();
    for p in &s.primes {
        let tag = p.poly().to_string();
        let d = match values_diagram(&m, std::slice::from_ref(&pi), p) {
            Ok(d) => d,
            Err(e) => {
                rows.push(Row::new(suite, format!("{tag} values diagram"), "values-diagram").error(&e));
                continue;
            }
        };
        let mut row = Row::new(suite, format!("{tag} values diagram"), "values-diagram").residual(Ok(d.residual()), t);
        row.detail = format!("Nt = {}", d.nt);
        rows.push(row);
        for (i, z) in roots_in_ext(p.poly(), c.fqm()).into_iter().enumerate() {
            rows.push(
                Row::new(suite, format!("{tag} omega(zeta_{i}) = p'(zeta_{i}) g"), "values-diagram")
                    .residual(d.tensorless_residual(z), t),
            );
        }
    }
    rows
}

/// Pellarin convergence rows; `N` runs to 6.
pub const PELLARIN_N: usize = 6;

fn lseries_suite(s: &Setup) -> (Vec<Row>, Vec<TraceRow>) {
    let c = &s.ctx;
    let t = s.threshold;
    let suite = Suite::Lseries;
    let mut rows = Vec::new();
    let trace = match pellarin_trace(c, PELLARIN_N, s.nt) {
        Ok(x) => x,
        Err(e) => return (vec![Row::new(suite, "Pellarin trace", "pellarin-identity").error(&e)], Vec::new()),
    };
    let live: Vec<&TraceRow> = trace.iter().filter(|r| !r.residual.is_zero()).collect();
    let increasing = live.windows(2).all(|w| w[0].residual.bound() < w[1].residual.bound());
    rows.push(Row::new(suite, "Pellarin residuals increase with N", "pellarin-identity").exact(
        Ok(increasing && !live.is_empty()),
        live.iter().map(|r| r.residual.bound().to_string()).collect::<Vec<_>>().join(" "),
    ));
    for r in &trace {
        let mut row = Row::new(suite, format!("Pellarin N = {} explained by omitted stratum", r.n), "pellarin-identity");
        row.residual = r.residual.valuation;
        row.known_to = Some(r.residual.known_to);
        row.threshold = (r.predicted < INF).then_some(r.predicted);
        let predicted = if r.predicted < INF { r.predicted.to_string() } else { "beyond precision".into() };
        row = row.exact(Ok(r.explained()), format!("predicted {predicted}"));
        rows.push(row);
    }
    let twist = pellarin_partial(c, 3, 1, s.nt).and_then(|l1| {
        let lq = pellarin_partial(c, 3, c.q() as u64, s.nt)?;
        Ok(l1.value.twist(1).residual(&lq.value))
    });
    rows.push(Row::new(suite, "L(A,1) twist = L(A,q), N = 3", "pellarin-twist").residual(twist, t));
    for p in &s.primes {
        let tag = p.poly().to_string();
        for (i, z) in roots_in_ext(p.poly(), c.fqm()).into_iter().enumerate() {
            let cross = goss_value(c, p, z, 1, 3).and_then(|g| {
                let l = pellarin_partial(c, 3, 1, s.nt)?;
                let via = l.value.twist(1).eval_at_prime(p).tensorless(z)?.remove(0);
                Ok(via.residual(&g))
            });
            rows.push(Row::new(suite, format!("{tag} Goss value via twist, zeta_{i}"), "goss-value").residual(cross, t));
            rows.push(
                Row::new(suite, format!("{tag} Goss value and Gauss sum, zeta_{i}, N = 6"), "goss-gauss")
                    .residual(goss_gauss_residual(c, p, z, 6), t),
            );
        }
    }
    (rows, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::residue_field;

    fn setup(q: u32, m: u32, prec: i64, primes: &[&[u32]]) -> Setup {
        let ctx = SeriesContext::new(q, m, prec).unwrap();
        let primes = primes
            .iter()
            .map(|c| Arc::new(residue_field(&PolyA::from_codes(ctx.fq(), c).unwrap()).unwrap()))
            .collect();
        Setup { ctx, nt: 16, lattice_bound: 6, threshold: 120, primes }
    }

    #[test]
    fn carlitz_and_different_pass() {
        let s = setup(2, 1, 240, &[]);
        let r = run(&s, &[Suite::Carlitz, Suite::Different]);
        assert_eq!(r.exit_code(), 0, "{}", r.to_tsv());
    }

    #[test]
    fn low_precision_is_an_error() {
        let s = setup(3, 1, 32, &[&[2, 1]]);
        let r = run(&s, &[Suite::Carlitz]);
        assert!(r.errors > 0, "{}", r.to_tsv());
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn diagram_row() {
        let s = setup(3, 2, 240, &[&[1, 0, 1]]);
        let r = run(&s, &[Suite::Diagram]);
        assert!(r.rows.iter().any(|x| x.name.contains("values diagram") && x.passed()), "{}", r.to_tsv());
        assert_eq!(r.exit_code(), 0, "{}", r.to_tsv());
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 5);
        assert!(Suite::parse_list("nope").is_err());
    }
}
