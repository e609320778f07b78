//! Special functions: Anderson generating functions, the `δ_u` maps, the
//! Carlitz `ω`, membership and `τ`-difference checks, the exact expansion of
//! `a ⊗ 1` along the Carlitz shtuka, and different elements.

use std::sync::Arc;

use crate::algebra::{formal_derivative, BiPoly, Fe, PolyA};
use crate::anderson::{AndersonModule, Matrix};
use crate::error::{Error, Result};
use crate::par;
use crate::series::{ContextExt, Laurent, Residual, SeriesContext, INF};
use crate::tate::{vec_residual, TateElem};

/// A point of `E(T)` with a note on where it came from.
#[derive(Clone, Debug)]
pub struct SpecialFunction {
    pub value: Vec<TateElem>,
    pub provenance: String,
}

impl SpecialFunction {
    pub fn nt(&self) -> usize {
        self.value[0].nt()
    }

    pub fn residual(&self, other: &SpecialFunction) -> Residual {
        vec_residual(&self.value, &other.value)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "provenance": self.provenance,
            "components": self.value.iter().map(TateElem::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Decides `residual >= threshold`, refusing when the residual vanishes only
/// to a precision below the threshold.
pub fn judge(r: Residual, threshold: i64) -> Result<bool> {
    if r.is_zero() && r.known_to < threshold {
        return Err(Error::InsufficientPrecision { threshold, known_to: r.known_to });
    }
    Ok(r.bound() >= threshold)
}

/// Assembles Tate components from per-`t`-power vectors.
fn transpose(ctx: &Arc<SeriesContext>, coeffs: Vec<Vec<Laurent>>, dim: usize) -> Vec<TateElem> {
    (0..dim)
        .map(|k| TateElem::new(ctx, coeffs.iter().map(|c| c[k].clone()).collect()))
        .collect()
}

/// `Σ_{n<nt} t^n ⊗ exp_E((∂t)^{-n-1} λ)`.
pub fn agf(m: &AndersonModule, lambda: &[Laurent], nt: usize) -> Result<SpecialFunction> {
    let inv = m.dphi_t_inv_pow(1)?;
    let mut args = Vec::with_capacity(nt);
    let mut x = lambda.to_vec();
    for _ in 0..nt {
        x = inv.apply(&x);
        args.push(x.clone());
    }
    let coeffs = par::map(&args, |a| m.exp_eval(a)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SpecialFunction { value: transpose(m.ctx(), coeffs, m.dim()), provenance: "agf".into() })
}

/// Upper limit on the `t`-truncation used when a special function is
/// evaluated at a prime.
pub const MAX_NT: usize = 512;

/// [`agf`] with the truncation doubled from `nt` until the extrapolated tail
/// reaches the relative precision of the first coefficient, or `MAX_NT`.
pub fn agf_converged(m: &AndersonModule, lambda: &[Laurent], nt: usize) -> Result<SpecialFunction> {
    let mut nt = nt.max(4);
    loop {
        let f = agf(m, lambda, nt)?;
        let target = f.value.iter().map(|c| c.coeff(0).val_bound()).min().unwrap().saturating_add(m.ctx().prec());
        let tail = f.value.iter().map(TateElem::tail_estimate).min().unwrap();
        if tail >= target || nt >= MAX_NT {
            return Ok(f);
        }
        nt = (2 * nt).min(MAX_NT);
    }
}

/// Number of factors `(1 - t θ^{-q^j})` that matter for `nt` coefficients.
fn omega_factors(ctx: &Arc<SeriesContext>, nt: usize) -> u32 {
    let q = ctx.q() as i64;
    let mut j = 0;
    let mut qj = 1i64;
    while ctx.e() * qj < ctx.prec() + ctx.e() * nt as i64 {
        j += 1;
        qj *= q;
    }
    j
}

/// `ω = u^{-1} Π_{j≥0} (1 - t θ^{-q^j})^{-1}`.
pub fn carlitz_omega(ctx: &Arc<SeriesContext>, nt: usize) -> TateElem {
    let mut c: Vec<Laurent> = (0..nt).map(|n| if n == 0 { ctx.u_inv() } else { ctx.zero() }).collect();
    let q = ctx.q() as i64;
    for j in 0..omega_factors(ctx, nt) {
        let b = ctx.theta_pow(-q.pow(j));
        for n in 1..nt {
            c[n] = &c[n] + &(&b * &c[n - 1]);
        }
    }
    let c = c.into_iter().map(|x| {
        let cap = x.val_bound() + ctx.prec();
        x.truncate(cap)
    });
    TateElem::new(ctx, c.collect())
}

/// `ω^{-1} = u Π_{j≥0} (1 - t θ^{-q^j})`.
pub fn carlitz_omega_inv(ctx: &Arc<SeriesContext>, nt: usize) -> TateElem {
    let mut c: Vec<Laurent> = (0..nt).map(|n| if n == 0 { ctx.u() } else { ctx.zero() }).collect();
    let q = ctx.q() as i64;
    for j in 0..omega_factors(ctx, nt) {
        let b = ctx.theta_pow(-q.pow(j));
        for n in (1..nt).rev() {
            c[n] = &c[n] - &(&b * &c[n - 1]);
        }
    }
    TateElem::new(ctx, c)
}

/// `(1 ⊗ φ_t)(ω) = Σ A_i ω^{(i)}` on a point of `E(T)`.
pub fn phi_t_on_tate(m: &AndersonModule, w: &[TateElem]) -> Vec<TateElem> {
    let nt = w[0].nt();
    let d = m.dim();
    let per_n: Vec<Vec<Laurent>> = par::map_range(nt, |n| {
        let x: Vec<Laurent> = w.iter().map(|f| f.coeff(n).clone()).collect();
        m.phi_t_apply(&x)
    });
    transpose(m.ctx(), per_n, d)
}

/// `(a(t) ⊗ 1)` on a point of `E(T)`.
pub fn mul_poly_vec(w: &[TateElem], a: &PolyA) -> Vec<TateElem> {
    w.iter().map(|f| f.mul_poly(a)).collect()
}

/// Worst residual of `(t ⊗ 1)ω - (1 ⊗ φ_t)(ω)`.
pub fn special_residual(m: &AndersonModule, w: &[TateElem]) -> Residual {
    let t = PolyA::t(m.ctx().fq());
    vec_residual(&mul_poly_vec(w, &t), &phi_t_on_tate(m, w))
}

pub fn is_special(m: &AndersonModule, w: &[TateElem], threshold: i64) -> Result<(bool, Residual)> {
    let r = special_residual(m, w);
    Ok((judge(r, threshold)?, r))
}

/// Worst residual of `ω^{(1)} - (t - θ)ω`.
pub fn shtuka_residual(w: &TateElem) -> Residual {
    let ctx = w.ctx();
    let lhs = w.twist(1);
    let rhs = w.mul_poly(&PolyA::t(ctx.fq())).sub(&w.scale(&ctx.theta()));
    lhs.residual(&rhs)
}

pub fn shtuka_check(w: &TateElem, threshold: i64) -> Result<(bool, Residual)> {
    let r = shtuka_residual(w);
    Ok((judge(r, threshold)?, r))
}

/// For a rank-`r` Drinfeld module, the system `v^{(1)} = Φ v` on
/// `v = (ω, ω^{(1)}, …, ω^{(r-1)})`. Only the last row is nontrivial:
/// `ω^{(r)} = A_r^{-1} ((t - A_0) ω - Σ_{0<i<r} A_i ω^{(i)})`. The residual
/// of this row is shifted by `val(A_r)`, which puts it on the scale of
/// [`special_residual`].
pub fn motive_system_residual(m: &AndersonModule, w: &TateElem) -> Result<Residual> {
    if m.dim() != 1 {
        return Err(Error::Invalid("τ-difference systems are formed for dimension 1".into()));
    }
    let a: Vec<Laurent> = m.phi_t().iter().map(|x| x.get(0, 0).clone()).collect();
    let r = a.len() - 1;
    let ar_inv = a[r].inv().map_err(|_| Error::DegenerateLeading)?;
    let ctx = m.ctx();
    let twists: Vec<TateElem> = (0..=r).map(|i| w.twist(i as u32)).collect();
    let mut rhs = w.mul_poly(&PolyA::t(ctx.fq())).sub(&w.scale(&a[0]));
    for i in 1..r {
        rhs = rhs.sub(&twists[i].scale(&a[i]));
    }
    let rhs = rhs.scale(&ar_inv);
    let raw = twists[r].residual(&rhs);
    let shift = a[r].val_bound();
    Ok(Residual { valuation: raw.valuation.map(|v| v + shift), known_to: raw.known_to.saturating_add(shift) })
}

pub fn motive_system_check(m: &AndersonModule, w: &TateElem, threshold: i64) -> Result<(bool, Residual)> {
    let r = motive_system_residual(m, w)?;
    Ok((judge(r, threshold)?, r))
}

/// `(1 ⊗ ∂u - u ⊗ 1)^{-1}` applied to `Σ a_j ⊗ λ_j`, followed by `exp_E`
/// coefficientwise.
pub fn delta_u(
    m: &AndersonModule,
    u: &PolyA,
    x: &[(PolyA, Vec<Laurent>)],
    nt: usize,
) -> Result<SpecialFunction> {
    if formal_derivative(u).is_zero() {
        return Err(Error::NotSeparating);
    }
    let ctx = m.ctx();
    let d = m.dim();
    let w = m.dphi(u).inverse()?;
    let mut args = vec![vec![ctx.zero(); d]; nt];
    let low = u.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    for (a, lam) in x {
        if a.is_zero() {
            continue;
        }
        let mut wl = w.apply(lam);
        let v0 = wl.iter().map(Laurent::val_bound).min().unwrap();
        let cutoff = v0.saturating_add(ctx.prec());
        let alow = a.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        let mut ua = a.truncate_degree(nt);
        let mut i = 0;
        while alow + low * i < nt && wl.iter().map(Laurent::val_bound).min().unwrap() < cutoff {
            for (n, &c) in ua.coeffs().iter().enumerate() {
                if c.is_zero() || n >= nt {
                    continue;
                }
                let c = ctx.embed(c);
                for k in 0..d {
                    args[n][k] = &args[n][k] + &wl[k].scale(c);
                }
            }
            ua = ua.mul(u).truncate_degree(nt);
            wl = w.apply(&wl);
            i += 1;
        }
        if alow + low * i < nt {
            for arg in args.iter_mut() {
                for y in arg.iter_mut() {
                    *y = y.truncate(cutoff);
                }
            }
        }
    }
    let coeffs = par::map(&args, |a| m.exp_eval(a)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SpecialFunction { value: transpose(ctx, coeffs, d), provenance: format!("delta_u u={u}") })
}

/// `D_u = (u(X) - u(Y))/(X - Y)` with `Y = t ⊗ 1` and `X = 1 ⊗ t`.
#[derive(Clone, Debug)]
pub struct DifferentElement {
    pub u: PolyA,
    pub tensor_rep: BiPoly,
}

impl DifferentElement {
    /// The multiplication map `X, Y ↦ t`.
    pub fn multiply(&self) -> PolyA {
        self.tensor_rep.diagonal()
    }

    /// `m(D_u) = u'(t)`.
    pub fn check_derivative(&self) -> bool {
        self.multiply() == formal_derivative(&self.u)
    }

    /// `(X - Y) D_u = u(X) - u(Y)`.
    pub fn check_division(&self) -> bool {
        let fq = self.u.field();
        let xy = BiPoly::monomial(fq, Fe::ONE, 1, 0).sub(&BiPoly::monomial(fq, Fe::ONE, 0, 1));
        xy.mul(&self.tensor_rep) == self.u_difference()
    }

    /// `(1 ⊗ t - t ⊗ 1) D_u ≡ 0` modulo `u(X) - u(Y)`.
    pub fn check_kernel(&self) -> bool {
        let fq = self.u.field();
        let xy = BiPoly::monomial(fq, Fe::ONE, 1, 0).sub(&BiPoly::monomial(fq, Fe::ONE, 0, 1));
        xy.mul(&self.tensor_rep).rem_in_x(&self.monic_difference()).is_zero()
    }

    fn u_difference(&self) -> BiPoly {
        BiPoly::in_x(&self.u).sub(&BiPoly::in_y(&self.u))
    }

    fn monic_difference(&self) -> BiPoly {
        let m = self.u.make_monic();
        BiPoly::in_x(&m).sub(&BiPoly::in_y(&m))
    }

    /// `D_u (1 ⊗ λ) = Σ d_ij t^j ⊗ ∂t^i λ` as a formal sum.
    pub fn act_on(&self, m: &AndersonModule, lambda: &[Laurent]) -> Vec<(PolyA, Vec<Laurent>)> {
        let fq = self.u.field();
        let dt = m.dphi_t();
        let xdeg = self.tensor_rep.degree_x().unwrap_or(0);
        let mut powers = vec![lambda.to_vec()];
        for i in 1..=xdeg {
            powers.push(dt.apply(&powers[i - 1]));
        }
        (0..=xdeg)
            .map(|i| {
                let mut coeffs = Vec::new();
                for ((x, y), c) in self.tensor_rep.terms() {
                    if x == i {
                        if coeffs.len() <= y {
                            coeffs.resize(y + 1, Fe::ZERO);
                        }
                        coeffs[y] = c;
                    }
                }
                (PolyA::new(fq.clone(), coeffs), powers[i].clone())
            })
            .collect()
    }
}

pub fn different_element(u: &PolyA) -> Result<DifferentElement> {
    if formal_derivative(u).is_zero() {
        return Err(Error::NotSeparating);
    }
    let fq = u.field();
    let mut d = BiPoly::zero(fq);
    for (k, &c) in u.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        for i in 0..k {
            d.add_term(i, k - 1 - i, c);
        }
    }
    Ok(DifferentElement { u: u.clone(), tensor_rep: d })
}

/// Twisted polynomials over `F_q[θ]` (coefficients stored as polynomials in
/// `θ`), with `g^{(i)}(θ) = g(θ^{q^i})`.
fn twisted_compose(q: u64, f: &[PolyA], g: &[PolyA]) -> Vec<PolyA> {
    let fq = f[0].field();
    let mut out = vec![PolyA::zero(fq); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(&b.compose_power(q.pow(i as u32))));
        }
    }
    out
}

/// The `τ`-coefficients `(a)_n ∈ F_q[θ]` of the Carlitz `φ_a`.
pub fn carlitz_phi_coeffs(a: &PolyA) -> Vec<PolyA> {
    let fq = a.field();
    let q = fq.order() as u64;
    let phi_t = vec![PolyA::t(fq), PolyA::one(fq)];
    let mut acc = vec![PolyA::zero(fq)];
    for &c in a.coeffs().iter().rev() {
        acc = twisted_compose(q, &phi_t, &acc);
        acc[0] = acc[0].add(&PolyA::constant(fq, c));
    }
    while acc.len() > 1 && acc.last().unwrap().is_zero() {
        acc.pop();
    }
    acc
}

/// Exact check of `a(t) = Σ_n (a)_n (t - θ^{q^{n-1}}) ⋯ (t - θ^q)(t - θ)` in
/// `F_q[t, θ]` (`X = t`, `Y = θ`).
pub fn a_expansion_identity(a: &PolyA) -> bool {
    let fq = a.field();
    let q = fq.order() as u64;
    let coeffs = carlitz_phi_coeffs(a);
    let mut rhs = BiPoly::zero(fq);
    let mut shtuka = BiPoly::monomial(fq, Fe::ONE, 0, 0);
    for (n, c) in coeffs.iter().enumerate() {
        rhs = rhs.add(&BiPoly::in_y(c).mul(&shtuka));
        let factor = BiPoly::monomial(fq, Fe::ONE, 1, 0)
            .sub(&BiPoly::monomial(fq, Fe::ONE, 0, q.pow(n as u32) as usize));
        shtuka = shtuka.mul(&factor);
    }
    rhs == BiPoly::in_x(a)
}

/// A period of `C^{⊗n}` read off from the poles of
/// `(ω^n, (t-θ)ω^n, …, (t-θ)^{n-1}ω^n)` at `t = θ`:
/// `λ_k = -u^{-qn} [s^{n-1-k}] G(θ + s)^n` with
/// `G(t) = Π_{j≥1} (1 - t θ^{-q^j})^{-1}`.
pub fn tensor_power_period(ctx: &Arc<SeriesContext>, n: usize) -> Result<Vec<Laurent>> {
    let q = ctx.q() as i64;
    let mut g: Vec<Laurent> = (0..n).map(|k| if k == 0 { ctx.one() } else { ctx.zero() }).collect();
    let mut qj = q;
    while ctx.e() * (qj - 1) < ctx.prec() {
        let a = &ctx.one() - &ctx.theta_pow(1 - qj);
        let ainv = a.inv()?;
        let ratio = &ctx.theta_pow(-qj) * &ainv;
        let mut factor = vec![ainv];
        for k in 1..n {
            factor.push(&factor[k - 1] * &ratio);
        }
        g = series_mul(ctx, &g, &factor);
        qj *= q;
    }
    let mut gn: Vec<Laurent> = (0..n).map(|k| if k == 0 { ctx.one() } else { ctx.zero() }).collect();
    for _ in 0..n {
        gn = series_mul(ctx, &gn, &g);
    }
    let lead = ctx.monomial(ctx.fqm().neg(Fe::ONE), -q * n as i64);
    Ok((0..n).map(|k| &lead * &gn[n - 1 - k]).collect())
}

fn series_mul(ctx: &Arc<SeriesContext>, a: &[Laurent], b: &[Laurent]) -> Vec<Laurent> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut acc = ctx.zero();
            for i in 0..=k {
                acc = &acc + &(&a[i] * &b[k - i]);
            }
            acc
        })
        .collect()
}

/// `(ω^n, (t-θ)ω^n, …, (t-θ)^{n-1}ω^n)`, the special function of `C^{⊗n}`
/// matching [`tensor_power_period`].
pub fn tensor_power_omega(ctx: &Arc<SeriesContext>, n: usize, nt: usize) -> Vec<TateElem> {
    let w = carlitz_omega(ctx, nt);
    let mut wn = TateElem::one(ctx, nt);
    for _ in 0..n {
        wn = wn.mul(&w);
    }
    let shtuka = PolyA::t(ctx.fq());
    let mut out = vec![wn];
    for i in 1..n {
        let prev = &out[i - 1];
        out.push(prev.mul_poly(&shtuka).sub(&prev.scale(&ctx.theta())));
    }
    out
}

/// `f · ω^{-1}`; for special functions of the Carlitz module the result lies
/// in `A ⊗ 1`.
pub fn divide_by_omega(f: &TateElem) -> TateElem {
    f.mul(&carlitz_omega_inv(f.ctx(), f.nt()))
}

/// Whether every coefficient of `f` is an element of `F_q` up to a residual
/// of at least `threshold`; returns the polynomial and the worst residual.
pub fn as_polynomial(f: &TateElem, threshold: i64) -> (Option<PolyA>, Residual) {
    let ctx = f.ctx();
    let fq = ctx.fq();
    let mut coeffs = Vec::new();
    let mut worst = Residual::zero(INF);
    for c in f.coeffs() {
        let k = c.coeff(0);
        let code = ctx.fqm().code(k);
        let r = c.residual(&ctx.constant(k));
        worst = worst.min(r);
        if code >= fq.order() {
            return (None, worst);
        }
        coeffs.push(fq.from_code(code));
    }
    if worst.bound() < threshold {
        return (None, worst);
    }
    (Some(PolyA::new(fq.clone(), coeffs)), worst)
}

/// Applies a matrix to every `t`-coefficient of a point of `E(T)`.
pub fn matrix_on_tate(m: &Matrix, w: &[TateElem]) -> Vec<TateElem> {
    let nt = w[0].nt();
    let ctx = w[0].ctx().clone();
    let per_n: Vec<Vec<Laurent>> = (0..nt)
        .map(|n| {
            let x: Vec<Laurent> = w.iter().map(|f| f.coeff(n).clone()).collect();
            m.apply(&x)
        })
        .collect();
    transpose(&ctx, per_n, m.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anderson::{carlitz, carlitz_period, tensor_power};

    fn ctx(q: u32) -> Arc<SeriesContext> {
        SeriesContext::new(q, 1, 240).unwrap()
    }

    #[test]
    fn omega_two_ways() {
        let c = ctx(3);
        let m = carlitz(&c);
        let pi = carlitz_period(&c);
        let a = agf(&m, &[pi.clone()], 8).unwrap();
        let w = carlitz_omega(&c, 8);
        assert!(a.value[0].residual(&w).bound() >= 200);
        let e = m.exp_eval(&[pi.div(&c.theta()).unwrap()]).unwrap();
        assert!(a.value[0].coeff(0).residual(&e[0]).is_zero());
        assert_eq!(w.coeff(0).valuation(), Some(-1));
    }

    #[test]
    fn omega_shtuka_and_inverse() {
        let c = ctx(3);
        let w = carlitz_omega(&c, 10);
        assert!(shtuka_residual(&w).bound() >= 200);
        let one = w.mul(&carlitz_omega_inv(&c, 10));
        assert!(one.residual(&TateElem::one(&c, 10)).bound() >= 200);
        let (ok, _) = shtuka_check(&TateElem::one(&c, 10), 100).unwrap();
        assert!(!ok);
        let a = PolyA::from_codes(c.fq(), &[2, 1, 1]).unwrap();
        assert!(shtuka_residual(&w.mul_poly(&a)).bound() >= 200);
    }

    #[test]
    fn special_membership() {
        let c = ctx(3);
        let m = carlitz(&c);
        let a = agf(&m, &[carlitz_period(&c)], 8).unwrap();
        assert!(is_special(&m, &a.value, 150).unwrap().0);
        let bumped = a.value[0].add(&TateElem::constant(&c.theta_pow(-3), 8));
        assert!(!is_special(&m, &[bumped], 150).unwrap().0);
        assert!(is_special(&m, &[TateElem::zero(&c, 8)], 150).unwrap().0);
        let r1 = special_residual(&m, &a.value);
        let r2 = motive_system_residual(&m, &a.value[0]).unwrap();
        assert!((r1.bound() - r2.bound()).abs() <= 2);
    }

    #[test]
    fn expansion_identity_examples() {
        for q in [2u32, 3, 4] {
            let fq = Arc::new(crate::algebra::Gf::fq(q).unwrap());
            for k in 0..=5 {
                assert!(a_expansion_identity(&PolyA::monomial(&fq, Fe::ONE, k)), "q={q} k={k}");
            }
        }
        let fq = Arc::new(crate::algebra::Gf::fq(3).unwrap());
        let t2 = carlitz_phi_coeffs(&PolyA::monomial(&fq, Fe::ONE, 2));
        assert_eq!(t2[0], PolyA::monomial(&fq, Fe::ONE, 2));
        assert_eq!(t2[1], PolyA::from_codes(&fq, &[0, 1, 0, 1]).unwrap());
        assert_eq!(t2[2], PolyA::one(&fq));
    }

    #[test]
    fn different_examples() {
        let fq = Arc::new(crate::algebra::Gf::fq(3).unwrap());
        let d = different_element(&PolyA::t(&fq)).unwrap();
        assert_eq!(d.tensor_rep, BiPoly::monomial(&fq, Fe::ONE, 0, 0));
        let d = different_element(&PolyA::from_codes(&fq, &[1, 0, 1]).unwrap()).unwrap();
        let xy = BiPoly::monomial(&fq, Fe::ONE, 1, 0).add(&BiPoly::monomial(&fq, Fe::ONE, 0, 1));
        assert_eq!(d.tensor_rep, xy);
        assert_eq!(d.multiply(), PolyA::from_codes(&fq, &[0, 2]).unwrap());
        assert!(d.check_derivative() && d.check_division() && d.check_kernel());
        assert_eq!(
            different_element(&PolyA::monomial(&fq, Fe::ONE, 3)).unwrap_err(),
            Error::NotSeparating
        );
    }

    #[test]
    fn delta_for_t_is_agf() {
        let c = ctx(3);
        let m = carlitz(&c);
        let pi = carlitz_period(&c);
        let t = PolyA::t(c.fq());
        let d = delta_u(&m, &t, &[(PolyA::one(c.fq()), vec![pi.clone()])], 8).unwrap();
        let a = agf(&m, &[pi], 8).unwrap();
        assert!(d.residual(&a).bound() >= 200);
        let z = delta_u(&m, &t, &[], 8).unwrap();
        assert!(z.value[0].norm_val().is_none());
    }

    #[test]
    fn delta_independent_of_u() {
        let c = ctx(3);
        let m = carlitz(&c);
        let pi = carlitz_period(&c);
        let u = PolyA::from_codes(c.fq(), &[0, 1, 1]).unwrap();
        let du = different_element(&u).unwrap();
        let x = du.act_on(&m, &[pi.clone()]);
        let d = delta_u(&m, &u, &x, 8).unwrap();
        let a = agf(&m, &[pi], 8).unwrap();
        assert!(d.residual(&a).bound() >= 100, "{}", d.residual(&a));
    }

    #[test]
    fn tensor_square_period() {
        let c = ctx(3);
        let m = tensor_power(&c, 2);
        let lam = tensor_power_period(&c, 2).unwrap();
        let k = m.exp_eval(&lam).unwrap();
        let r = crate::anderson::vec_residual(&k, &[c.zero(), c.zero()]);
        assert!(r.bound() >= 150, "{r}");
        let one = tensor_power_period(&c, 1).unwrap();
        assert!(one[0].residual(&carlitz_period(&c)).bound() >= 200);
        let h = tensor_power_omega(&c, 2, 6);
        let a = agf(&m, &lam, 6).unwrap();
        assert!(vec_residual(&h, &a.value).bound() >= 150);
    }
}
