//! Anderson `t`-modules over `C_∞`: `φ_t = Σ A_i τ^i` with `d × d` matrices,
//! exponential coefficients, the Carlitz module and its tensor powers,
//! Drinfeld modules from lattices and torsion characters.

use std::sync::{Arc, RwLock};

use crate::algebra::{Fe, PolyA, PrimeData};
use crate::error::{Error, Result};
use crate::par;
use crate::series::{ContextExt, Laurent, Residual, SeriesContext, INF};

/// Hard cap on the number of exponential coefficients.
pub const MAX_EXP_DEPTH: usize = 40;

/// Square matrix over the series context, row-major.
#[derive(Clone, Debug)]
pub struct Matrix {
    d: usize,
    a: Vec<Laurent>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Laurent>>) -> Matrix {
        let d = rows.len();
        assert!(rows.iter().all(|r| r.len() == d), "matrix must be square");
        Matrix { d, a: rows.into_iter().flatten().collect() }
    }

    pub fn zero(ctx: &Arc<SeriesContext>, d: usize) -> Matrix {
        Matrix { d, a: vec![ctx.zero(); d * d] }
    }

    pub fn scalar(c: &Laurent, d: usize) -> Matrix {
        let mut m = Matrix::zero(c.ctx(), d);
        for i in 0..d {
            m.a[i * d + i] = c.clone();
        }
        m
    }

    pub fn identity(ctx: &Arc<SeriesContext>, d: usize) -> Matrix {
        Matrix::scalar(&ctx.one(), d)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.a[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Laurent) {
        self.a[i * self.d + j] = x;
    }

    pub fn entries(&self) -> &[Laurent] {
        &self.a
    }

    fn ctx(&self) -> &Arc<SeriesContext> {
        self.a[0].ctx()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix { d: self.d, a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix { d: self.d, a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, c: &Laurent) -> Matrix {
        Matrix { d: self.d, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.d;
        let mut out = Matrix::zero(self.ctx(), d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = self.ctx().zero();
                for k in 0..d {
                    let (x, y) = (self.get(i, k), other.get(k, j));
                    if !(x.is_zero() && x.is_exact()) && !(y.is_zero() && y.is_exact()) {
                        acc = &acc + &(x * y);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn apply(&self, x: &[Laurent]) -> Vec<Laurent> {
        (0..self.d)
            .map(|i| {
                let mut acc = self.ctx().zero();
                for (k, xk) in x.iter().enumerate() {
                    let m = self.get(i, k);
                    if !(m.is_zero() && m.is_exact()) {
                        acc = &acc + &(m * xk);
                    }
                }
                acc
            })
            .collect()
    }

    /// Entrywise `q^k`-power.
    pub fn frobenius_pow(&self, k: u32) -> Matrix {
        Matrix { d: self.d, a: self.a.iter().map(|x| x.frobenius_pow(k)).collect() }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let d = self.d;
        let rows: Vec<Vec<Laurent>> = (0..d).map(|i| self.a[i * d..(i + 1) * d].to_vec()).collect();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut e = vec![self.ctx().zero(); d];
            e[j] = self.ctx().one();
            cols.push(solve(rows.clone(), e)?);
        }
        let mut out = Matrix::zero(self.ctx(), d);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    /// `a(M)` for `a ∈ F_q[t]` by Horner's rule.
    pub fn poly_eval(&self, a: &PolyA) -> Matrix {
        let ctx = self.ctx().clone();
        let mut acc = Matrix::zero(&ctx, self.d);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::scalar(&ctx.constant(ctx.embed(c)), self.d));
        }
        acc
    }

    pub fn residual(&self, other: &Matrix) -> Residual {
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| x.residual(y))
            .reduce(Residual::min)
            .unwrap_or(Residual::zero(INF))
    }

    pub fn is_exact(&self) -> bool {
        self.a.iter().all(Laurent::is_exact)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.d;
        serde_json::Value::Array(
            (0..d)
                .map(|i| serde_json::Value::Array((0..d).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }
}

/// Solves `M x = b` by Gaussian elimination, pivoting on the entry of least
/// valuation. A column that vanishes to precision is reported as singular.
pub fn solve(mut m: Vec<Vec<Laurent>>, mut b: Vec<Laurent>) -> Result<Vec<Laurent>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .filter_map(|r| m[r][col].valuation().map(|v| (v, r)))
            .min()
            .map(|(_, r)| r)
            .ok_or(Error::SingularSystem)?;
        m.swap(col, piv);
        b.swap(col, piv);
        let inv = m[col][col].inv()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for k in col..n {
                let sub = &f * &m[col][k];
                m[r][k] = &m[r][k] - &sub;
            }
            let sub = &f * &b[col];
            b[r] = &b[r] - &sub;
        }
    }
    let mut x = vec![b[0].ctx().zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for k in r + 1..n {
            acc = &acc - &(&m[r][k] * &x[k]);
        }
        x[r] = acc.div(&m[r][r])?;
    }
    Ok(x)
}

/// A twisted polynomial `Σ M_i τ^i` with matrix coefficients.
#[derive(Clone, Debug)]
pub struct TwistedPoly {
    pub coeffs: Vec<Matrix>,
}

impl TwistedPoly {
    pub fn constant(m: Matrix) -> TwistedPoly {
        TwistedPoly { coeffs: vec![m] }
    }

    pub fn add(&self, other: &TwistedPoly) -> TwistedPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let ctx = self.coeffs[0].ctx().clone();
        let d = self.coeffs[0].dim();
        let z = Matrix::zero(&ctx, d);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        TwistedPoly { coeffs }
    }

    /// `(Σ A_i τ^i)(Σ B_j τ^j) = Σ A_i B_j^{(i)} τ^{i+j}`.
    pub fn compose(&self, other: &TwistedPoly) -> TwistedPoly {
        let ctx = self.coeffs[0].ctx().clone();
        let d = self.coeffs[0].dim();
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Matrix::zero(&ctx, d); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(&b.frobenius_pow(i as u32)));
            }
        }
        TwistedPoly { coeffs }
    }

    /// `Σ M_i x^{(i)}`.
    pub fn apply(&self, x: &[Laurent]) -> Vec<Laurent> {
        let mut acc = vec![x[0].ctx().zero(); x.len()];
        let mut xi = x.to_vec();
        for (i, m) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = xi.iter().map(Laurent::frobenius).collect();
            }
            let y = m.apply(&xi);
            acc = acc.iter().zip(&y).map(|(a, b)| a + b).collect();
        }
        acc
    }

    pub fn residual(&self, other: &TwistedPoly) -> Residual {
        let n = self.coeffs.len().max(other.coeffs.len());
        let ctx = self.coeffs[0].ctx().clone();
        let z = Matrix::zero(&ctx, self.coeffs[0].dim());
        (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).residual(other.coeffs.get(i).unwrap_or(&z)))
            .reduce(Residual::min)
            .unwrap()
    }
}

pub struct AndersonModule {
    ctx: Arc<SeriesContext>,
    dim: usize,
    rank: usize,
    phi_t: Vec<Matrix>,
    exp_cache: RwLock<Vec<Matrix>>,
}

impl Clone for AndersonModule {
    fn clone(&self) -> Self {
        AndersonModule {
            ctx: self.ctx.clone(),
            dim: self.dim,
            rank: self.rank,
            phi_t: self.phi_t.clone(),
            exp_cache: RwLock::new(self.exp_cache.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for AndersonModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AndersonModule")
            .field("dim", &self.dim)
            .field("rank", &self.rank)
            .field("phi_t", &self.phi_t)
            .finish()
    }
}

impl AndersonModule {
    /// A module from `φ_t = Σ A_i τ^i`. Fails unless `A_0 - θ` is
    /// nilpotent.
    pub fn new(ctx: &Arc<SeriesContext>, phi_t: Vec<Matrix>, rank: usize) -> Result<AndersonModule> {
        let dim = phi_t.first().ok_or_else(|| Error::Invalid("empty φ_t".into()))?.dim();
        let m = AndersonModule {
            ctx: ctx.clone(),
            dim,
            rank,
            phi_t,
            exp_cache: RwLock::new(vec![Matrix::identity(ctx, dim)]),
        };
        let r = m.nilpotency_residual();
        if r.bound() < ctx.prec() / 2 {
            return Err(Error::Invalid(format!("∂φ_t - θ is not nilpotent (residual {r})")));
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn phi_t(&self) -> &[Matrix] {
        &self.phi_t
    }

    /// `∂φ_t = A_0`.
    pub fn dphi_t(&self) -> &Matrix {
        &self.phi_t[0]
    }

    /// Residual of `(A_0 - θ)^d` against zero.
    pub fn nilpotency_residual(&self) -> Residual {
        let n = self.dphi_t().sub(&Matrix::scalar(&self.ctx.theta(), self.dim));
        let mut p = Matrix::identity(&self.ctx, self.dim);
        for _ in 0..self.dim {
            p = p.mul(&n);
        }
        p.residual(&Matrix::zero(&self.ctx, self.dim))
    }

    pub fn phi_t_poly(&self) -> TwistedPoly {
        TwistedPoly { coeffs: self.phi_t.clone() }
    }

    /// `φ_a` as a twisted polynomial.
    pub fn phi(&self, a: &PolyA) -> TwistedPoly {
        let t = self.phi_t_poly();
        let mut acc = TwistedPoly::constant(Matrix::zero(&self.ctx, self.dim));
        for &c in a.coeffs().iter().rev() {
            let cst = Matrix::scalar(&self.ctx.constant(self.ctx.embed(c)), self.dim);
            acc = t.compose(&acc).add(&TwistedPoly::constant(cst));
        }
        acc
    }

    /// `φ_t(x)`.
    pub fn phi_t_apply(&self, x: &[Laurent]) -> Vec<Laurent> {
        self.phi_t_poly().apply(x)
    }

    pub fn phi_apply(&self, a: &PolyA, x: &[Laurent]) -> Vec<Laurent> {
        self.phi(a).apply(x)
    }

    /// `∂φ_a = a(A_0)`.
    pub fn dphi(&self, a: &PolyA) -> Matrix {
        self.dphi_t().poly_eval(a)
    }

    /// `∂(a/b) = a(A_0) b(A_0)^{-1}`.
    pub fn dphi_frac(&self, a: &PolyA, b: &PolyA) -> Result<Matrix> {
        Ok(self.dphi(a).mul(&self.dphi(b).inverse()?))
    }

    /// `∂t^{-k}`.
    pub fn dphi_t_inv_pow(&self, k: usize) -> Result<Matrix> {
        let inv = self.dphi_t().inverse()?;
        let mut acc = Matrix::identity(&self.ctx, self.dim);
        for _ in 0..k {
            acc = acc.mul(&inv);
        }
        Ok(acc)
    }

    /// Replaces the leading cached exponential coefficients.
    fn seed_exp(&self, seeds: Vec<Matrix>) {
        *self.exp_cache.write().unwrap() = seeds;
    }

    /// Extends the cache through `e_upto`.
    fn ensure_exp(&self, upto: usize) -> Result<()> {
        if self.exp_cache.read().unwrap().len() > upto {
            return Ok(());
        }
        let mut cache = self.exp_cache.write().unwrap();
        while cache.len() <= upto {
            let n = cache.len();
            let mut rhs = Matrix::zero(&self.ctx, self.dim);
            for i in 1..self.phi_t.len().min(n + 1) {
                rhs = rhs.add(&self.phi_t[i].mul(&cache[n - i].frobenius_pow(i as u32)));
            }
            let b = self.dphi_t().frobenius_pow(n as u32);
            let e = solve_sylvester(self.dphi_t(), &b, &rhs)?;
            cache.push(e);
        }
        Ok(())
    }

    /// `e_0, …, e_upto`.
    pub fn exp_coeffs(&self, upto: usize) -> Result<Vec<Matrix>> {
        self.ensure_exp(upto)?;
        Ok(self.exp_cache.read().unwrap()[..=upto].to_vec())
    }

    /// `exp_E(x) = Σ e_n x^{(n)}`, summed until the terms have started to
    /// shrink and fall below the precision already reached.
    pub fn exp_eval(&self, x: &[Laurent]) -> Result<Vec<Laurent>> {
        Ok(self.exp_eval_traced(x)?.value)
    }

    pub fn exp_eval_traced(&self, x: &[Laurent]) -> Result<ExpEval> {
        assert_eq!(x.len(), self.dim);
        let mut acc = vec![self.ctx.zero(); self.dim];
        let mut xn = x.to_vec();
        let mut prev: Option<i64> = None;
        for n in 0..MAX_EXP_DEPTH {
            if n > 0 {
                xn = xn.iter().map(Laurent::frobenius).collect();
            }
            self.ensure_exp(n)?;
            let en = self.exp_cache.read().unwrap()[n].clone();
            let term = en.apply(&xn);
            let tv = term.iter().map(Laurent::val_bound).min().unwrap();
            acc = acc.iter().zip(&term).map(|(a, b)| a + b).collect();
            let reach = acc.iter().map(Laurent::known_to).min().unwrap();
            let shrinking = prev.is_some_and(|p| tv > p || tv >= INF);
            if n > 0 && shrinking && tv >= reach {
                return Ok(ExpEval { value: acc, depth: n, tail: tv });
            }
            prev = Some(tv);
        }
        Err(Error::ExpNoDecay { depth: MAX_EXP_DEPTH })
    }

    /// Worst residual of `exp(∂φ_t x) - φ_t(exp x)`.
    pub fn functional_equation_residual(&self, x: &[Laurent]) -> Result<Residual> {
        let lhs = self.exp_eval(&self.dphi_t().apply(x))?;
        let rhs = self.phi_t_apply(&self.exp_eval(x)?);
        Ok(vec_residual(&lhs, &rhs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.ctx.q(),
            "d": self.dim,
            "r": self.rank,
            "phi_t": self.phi_t.iter().map(Matrix::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Result of an exponential evaluation with its truncation data.
#[derive(Clone, Debug)]
pub struct ExpEval {
    pub value: Vec<Laurent>,
    /// Index of the last term summed.
    pub depth: usize,
    /// Valuation of the last term summed.
    pub tail: i64,
}

pub fn vec_residual(a: &[Laurent], b: &[Laurent]) -> Residual {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.residual(y))
        .reduce(Residual::min)
        .unwrap_or(Residual::zero(INF))
}

/// Solves `X B - A X = C`.
fn solve_sylvester(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
    let d = a.dim();
    let ctx = a.ctx().clone();
    if d == 1 {
        let x = c.get(0, 0).div(&(b.get(0, 0) - a.get(0, 0))).map_err(|_| Error::SingularSystem)?;
        return Ok(Matrix { d, a: vec![x] });
    }
    let n = d * d;
    let mut m = vec![vec![ctx.zero(); n]; n];
    for i in 0..d {
        for j in 0..d {
            let row = i * d + j;
            for k in 0..d {
                m[row][i * d + k] = &m[row][i * d + k] + b.get(k, j);
                m[row][k * d + j] = &m[row][k * d + j] - a.get(i, k);
            }
        }
    }
    let x = solve(m, c.entries().to_vec())?;
    Ok(Matrix { d, a: x })
}

/// The Carlitz module `φ_t = θ + τ`.
pub fn carlitz(ctx: &Arc<SeriesContext>) -> AndersonModule {
    tensor_power(ctx, 1)
}

/// `C^{⊗n}`: `φ_t = θ I + N + E τ` with `N` the upper shift and `E` the
/// matrix unit in the lower-left corner.
pub fn tensor_power(ctx: &Arc<SeriesContext>, n: usize) -> AndersonModule {
    assert!(n >= 1);
    let mut a0 = Matrix::scalar(&ctx.theta(), n);
    for i in 0..n - 1 {
        a0.set(i, i + 1, ctx.one());
    }
    let mut a1 = Matrix::zero(ctx, n);
    a1.set(n - 1, 0, ctx.one());
    AndersonModule::new(ctx, vec![a0, a1], 1).expect("tensor powers are Anderson modules")
}

/// `π̃ = u^{-1} θ Π_{j≥1} (1 - θ^{1-q^j})^{-1}`, with factors included while
/// they differ from 1 within the working precision.
pub fn carlitz_period(ctx: &Arc<SeriesContext>) -> Laurent {
    let q = ctx.q() as i64;
    let mut prod = ctx.one();
    let mut qj = q;
    while ctx.e() * (qj - 1) < ctx.prec() {
        let f = &ctx.one() - &ctx.theta_pow(1 - qj);
        prod = &prod * &f;
        qj *= q;
    }
    let inv = prod.inv().expect("product is a unit");
    let lead = &ctx.u_inv() * &ctx.theta();
    (&lead * &inv).truncate(lead.val_bound() + ctx.prec())
}

/// An `A`-lattice `Σ A λ_i` in `C_∞`, enumerated through degree `B`.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub basis: Vec<Laurent>,
    pub deg_bound: usize,
}

impl Lattice {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": self.basis.iter().map(Laurent::to_json).collect::<Vec<_>>(),
            "B": self.deg_bound,
        })
    }
}

/// A Drinfeld module built from a lattice, with the data of its
/// construction.
#[derive(Clone, Debug)]
pub struct LatticeModule {
    pub module: AndersonModule,
    /// Coefficients `α_i` of the truncated lattice exponential.
    pub exp_coeffs: Vec<Laurent>,
    /// Residuals below this valuation are explained by the construction.
    pub noise_floor: i64,
}

/// Drinfeld module attached to a lattice. The lattice exponential
/// `z Π (1 - z/λ)` over all points of degree `<= B` is built one basis
/// vector `v` at a time by `e_{W+Fv}(z) = e_W(z) - e_W(z)^q / e_W(v)^{q-1}`,
/// which keeps it `F_q`-linear. `φ_t` is then read off from
/// `e(θz) = φ_t(e(z))`.
///
/// The noise floor is the least of: the precision of the degree-`r+1`
/// consistency equation, the change caused by the last degree layer, and
/// the kernel residuals `exp(λ_i)`; minus a margin of 10. The construction
/// aborts when it is below `threshold + 20`.
pub fn lattice_to_drinfeld(ctx: &Arc<SeriesContext>, lattice: &Lattice, threshold: i64) -> Result<LatticeModule> {
    let r = lattice.basis.len();
    if r == 0 {
        return Err(Error::Invalid("empty lattice basis".into()));
    }
    let q = ctx.q();
    let b = lattice.deg_bound;
    let mut alpha: Vec<Laurent> = vec![ctx.one()];
    let mut last_layer_change = INF;
    for j in 0..=b {
        let before = alpha.clone();
        for lam in &lattice.basis {
            let v = &ctx.theta_pow(j as i64) * lam;
            let mut ev = ctx.zero();
            let mut vp = v.clone();
            for a in &alpha {
                ev = &ev + &(a * &vp);
                vp = vp.frobenius();
            }
            if ev.is_zero() {
                return Err(Error::Invalid(format!(
                    "lattice points are not distinct at degree {j} (lattice not discrete at this precision)"
                )));
            }
            let w = ev.pow(q as i64 - 1)?.inv()?;
            let mut next = Vec::with_capacity(alpha.len() + 1);
            for i in 0..=alpha.len() {
                let keep = alpha.get(i).cloned().unwrap_or_else(|| ctx.zero());
                let shifted = if i > 0 { &alpha[i - 1].frobenius() * &w } else { ctx.zero() };
                next.push(&keep - &shifted);
            }
            alpha = next;
        }
        if j == b {
            for k in 1..=r.min(before.len() - 1) {
                let rel = alpha[k].residual(&before[k]).bound() - alpha[k].val_bound();
                last_layer_change = last_layer_change.min(rel);
            }
        }
    }
    // A_k from θ^{q^k} α_k = Σ_{i+j=k} A_i α_j^{q^i}
    let mut a: Vec<Laurent> = vec![ctx.theta()];
    for k in 1..=r {
        let mut s = &ctx.theta().frobenius_pow(k as u32) * &alpha[k];
        for (i, ai) in a.iter().enumerate() {
            s = &s - &(ai * &alpha[k - i].frobenius_pow(i as u32));
        }
        a.push(s);
    }
    if a[r].is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let mut consistency = INF;
    if alpha.len() > r + 1 {
        let k = r + 1;
        let mut s = &ctx.theta().frobenius_pow(k as u32) * &alpha[k];
        for (i, ai) in a.iter().enumerate() {
            s = &s - &(ai * &alpha[k - i].frobenius_pow(i as u32));
        }
        let scale = (&ctx.theta().frobenius_pow(k as u32) * &alpha[k]).val_bound();
        consistency = Residual::of(&s).bound() - scale;
    }
    let phi = a.iter().map(|x| Matrix::scalar(x, 1)).collect();
    let module = AndersonModule::new(ctx, phi, r)?;
    module.seed_exp(alpha[..=r].iter().map(|x| Matrix::scalar(x, 1)).collect());
    let min_val = lattice.basis.iter().map(Laurent::val_bound).min().unwrap();
    let mut floor = min_val.saturating_add(consistency.min(last_layer_change));
    for lam in &lattice.basis {
        let k = module.exp_eval(std::slice::from_ref(lam))?;
        floor = floor.min(Residual::of(&k[0]).bound());
    }
    let floor = floor.min(ctx.prec() + min_val) - 10;
    if floor < threshold + 20 {
        return Err(Error::NoiseFloor { floor, threshold });
    }
    Ok(LatticeModule { module, exp_coeffs: alpha, noise_floor: floor })
}

/// `ψ_λ: A/𝔭 → E[𝔭]`, `a ↦ exp_E(∂(a/𝔭) λ)`, tabulated on all residues in
/// code order.
#[derive(Clone, Debug)]
pub struct TorsionChar {
    pub prime: Arc<PrimeData>,
    pub period: Vec<Laurent>,
    values: Vec<Vec<Laurent>>,
}

impl TorsionChar {
    pub fn value(&self, a: Fe) -> &[Laurent] {
        &self.values[self.prime.field().code(a) as usize]
    }

    pub fn values(&self) -> &[Vec<Laurent>] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.period.len()
    }

    /// `ψ_{∂a λ}` from the table of `ψ_λ`: `ψ_{∂a λ}(x) = ψ_λ(a x)`.
    pub fn twisted_by(&self, a: &PolyA) -> TorsionChar {
        let f = self.prime.field();
        let ar = self.prime.reduce(a);
        let values = self.prime.residues().map(|x| self.value(f.mul(ar, x)).to_vec()).collect();
        TorsionChar { prime: self.prime.clone(), period: self.period.clone(), values }
    }
}

pub fn torsion_char(m: &AndersonModule, period: &[Laurent], p: &Arc<PrimeData>) -> Result<TorsionChar> {
    let pinv = m.dphi(p.poly()).inverse()?;
    let base = pinv.apply(period);
    let residues: Vec<Fe> = p.residues().collect();
    let values = par::map(&residues, |&x| {
        if x.is_zero() {
            return Ok(vec![m.ctx().zero(); m.dim()]);
        }
        m.exp_eval(&m.dphi(&p.lift(x)).apply(&base))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(TorsionChar { prime: p.clone(), period: period.to_vec(), values })
}
