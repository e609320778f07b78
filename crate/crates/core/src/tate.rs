//! Truncated Tate algebra `T = A ⊗̂ C_∞`: power series `Σ t^n ⊗ c_n` with
//! Laurent coefficients, kept to `t`-precision `Nt`.

use std::sync::Arc;

use crate::algebra::{Fe, PolyA, PrimeData};
use crate::error::{Error, Result};
use crate::par;
use crate::series::{ContextExt, Laurent, Residual, SeriesContext};
use crate::tensor::TensorVec;

pub const DEFAULT_NT: usize = 16;

#[derive(Clone, Debug)]
pub struct TateElem {
    ctx: Arc<SeriesContext>,
    coeffs: Vec<Laurent>,
}

impl TateElem {
    pub fn new(ctx: &Arc<SeriesContext>, coeffs: Vec<Laurent>) -> TateElem {
        TateElem { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Arc<SeriesContext>, nt: usize) -> TateElem {
        TateElem::new(ctx, vec![ctx.zero(); nt])
    }

    /// `1 ⊗ c`.
    pub fn constant(c: &Laurent, nt: usize) -> TateElem {
        let mut f = TateElem::zero(c.ctx(), nt);
        if nt > 0 {
            f.coeffs[0] = c.clone();
        }
        f
    }

    pub fn one(ctx: &Arc<SeriesContext>, nt: usize) -> TateElem {
        TateElem::constant(&ctx.one(), nt)
    }

    /// `a(t) ⊗ 1`.
    pub fn from_poly(ctx: &Arc<SeriesContext>, a: &PolyA, nt: usize) -> TateElem {
        let coeffs = (0..nt).map(|n| ctx.constant(ctx.embed(a.coeff(n)))).collect();
        TateElem::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn nt(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Laurent] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Laurent {
        &self.coeffs[n]
    }

    pub fn truncate_t(&self, nt: usize) -> TateElem {
        TateElem::new(&self.ctx, self.coeffs[..nt.min(self.nt())].to_vec())
    }

    fn check(&self, other: &TateElem) -> Result<usize> {
        if !(Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.nt().min(other.nt()))
    }

    pub fn try_add(&self, other: &TateElem) -> Result<TateElem> {
        let nt = self.check(other)?;
        Ok(TateElem::new(&self.ctx, (0..nt).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect()))
    }

    pub fn try_mul(&self, other: &TateElem) -> Result<TateElem> {
        let nt = self.check(other)?;
        let coeffs = par::map_range(nt, |n| {
            let mut acc = self.ctx.zero();
            for i in 0..=n {
                let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                if !(a.is_zero() && a.is_exact()) && !(b.is_zero() && b.is_exact()) {
                    acc = &acc + &(a * b);
                }
            }
            acc
        });
        Ok(TateElem::new(&self.ctx, coeffs))
    }

    pub fn add(&self, other: &TateElem) -> TateElem {
        self.try_add(other).expect("context mismatch")
    }

    pub fn sub(&self, other: &TateElem) -> TateElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TateElem) -> TateElem {
        self.try_mul(other).expect("context mismatch")
    }

    pub fn neg(&self) -> TateElem {
        TateElem::new(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    /// Multiplication by `1 ⊗ c`.
    pub fn scale(&self, c: &Laurent) -> TateElem {
        TateElem::new(&self.ctx, par::map(&self.coeffs, |x| x * c))
    }

    /// Multiplication by `a(t) ⊗ 1`.
    pub fn mul_poly(&self, a: &PolyA) -> TateElem {
        let nt = self.nt();
        let coeffs = (0..nt)
            .map(|n| {
                let mut acc = self.ctx.zero();
                for (i, &c) in a.coeffs().iter().enumerate().take(n + 1) {
                    if !c.is_zero() {
                        acc = &acc + &self.coeffs[n - i].scale(self.ctx.embed(c));
                    }
                }
                acc
            })
            .collect();
        TateElem::new(&self.ctx, coeffs)
    }

    /// Valuation of the Gauss norm: `‖f‖ = q^{-v/e}` with `v` the least
    /// coefficient valuation. `None` when every coefficient is zero to
    /// precision.
    pub fn norm_val(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(Laurent::valuation).min()
    }

    /// The `A`-linear Frobenius twist `f^{(k)}`.
    pub fn twist(&self, k: u32) -> TateElem {
        TateElem::new(&self.ctx, par::map(&self.coeffs, |c| c.frobenius_pow(k)))
    }

    /// Least precision among the coefficients.
    pub fn known_to(&self) -> i64 {
        self.coeffs.iter().map(Laurent::known_to).min().unwrap_or(crate::series::INF)
    }

    /// Worst coefficientwise residual of `self - other`.
    pub fn residual(&self, other: &TateElem) -> Residual {
        let nt = self.nt().min(other.nt());
        (0..nt)
            .map(|n| self.coeffs[n].residual(&other.coeffs[n]))
            .reduce(Residual::min)
            .unwrap_or(Residual::zero(crate::series::INF))
    }

    /// Per-coefficient residuals of `self - other`.
    pub fn residuals(&self, other: &TateElem) -> Vec<Residual> {
        let nt = self.nt().min(other.nt());
        (0..nt).map(|n| self.coeffs[n].residual(&other.coeffs[n])).collect()
    }

    /// `f(𝔓)`: the image in `F_𝔭 ⊗ C_∞` in the power basis of `F_𝔭`, with
    /// the truncation tail folded into the precision of every slot.
    pub fn eval_at_prime(&self, p: &Arc<PrimeData>) -> TensorVec {
        let fq = p.fq();
        let d = p.degree();
        let tail = self.tail_estimate();
        let mut slots = vec![self.ctx.zero(); d];
        let mut tn = PolyA::one(fq);
        let t = PolyA::t(fq);
        for c in &self.coeffs {
            let digits = p.coords(p.reduce(&tn));
            for (j, &dj) in digits.iter().enumerate() {
                if dj != 0 {
                    let s = c.scale(self.ctx.embed(fq.from_code(dj)));
                    slots[j] = &slots[j] + &s;
                }
            }
            tn = tn.mul(&t).rem(p.poly());
        }
        let slots = slots.into_iter().map(|s| vec![s.truncate(tail)]).collect();
        TensorVec::from_slots(p, &self.ctx, slots)
    }

    /// Estimated valuation of the first omitted coefficient, extrapolated
    /// linearly from the last three stored ones using the smallest observed
    /// increment. Trailing exact zeros mark a polynomial, with no tail.
    pub fn tail_estimate(&self) -> i64 {
        let n = self.nt();
        if n < 3 {
            return self.coeffs.last().map(Laurent::val_bound).unwrap_or(crate::series::INF);
        }
        let last = &self.coeffs[n - 3..];
        if last[1..].iter().all(|c| c.is_zero() && c.is_exact()) {
            return crate::series::INF;
        }
        let v: Vec<i64> = last.iter().map(Laurent::val_bound).collect();
        let step = (v[1] - v[0]).min(v[2] - v[1]);
        if step <= 0 {
            v[2].min(v[1]).min(v[0])
        } else {
            v[2] + step
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nt": self.nt(),
            "norm_valuation": self.norm_val(),
            "known_to": self.known_to(),
            "coeffs": self.coeffs.iter().map(Laurent::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `(1 ⊗ u(θ) - u(t) ⊗ 1)^{-1} = Σ_i u(t)^i ⊗ u(θ)^{-i-1}`, truncated at
/// `t^nt`. Terms are summed until their valuation reaches the relative
/// precision of the leading term; that cutoff becomes the coefficient
/// precision.
pub fn invert_linear(ctx: &Arc<SeriesContext>, u: &PolyA, nt: usize) -> Result<TateElem> {
    let deg = u.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let w = ctx.poly_at_theta(u).inv()?;
    let v0 = w.val_bound();
    let cutoff = v0 + ctx.prec();
    let low = u.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let mut out = TateElem::zero(ctx, nt);
    let mut upow = PolyA::one(u.field());
    let mut wpow = w.clone();
    let mut i = 0usize;
    while wpow.val_bound() < cutoff && low * i < nt {
        for n in 0..nt.min(upow.degree().unwrap() + 1) {
            let c = upow.coeff(n);
            if !c.is_zero() {
                out.coeffs[n] = &out.coeffs[n] + &wpow.scale(ctx.embed(c));
            }
        }
        upow = upow.mul(u).truncate_degree(nt);
        wpow = &wpow * &w;
        i += 1;
    }
    if low * i < nt {
        for c in &mut out.coeffs {
            *c = c.truncate(cutoff);
        }
    }
    Ok(out)
}

/// Multiplication in `C_∞^d` by a matrix polynomial is handled elsewhere;
/// here a point of `E(T)` is a vector of Tate elements.
pub type TateVec = Vec<TateElem>;

/// Worst residual between two points of `E(T)`.
pub fn vec_residual(a: &[TateElem], b: &[TateElem]) -> Residual {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.residual(y))
        .reduce(Residual::min)
        .unwrap_or(Residual::zero(crate::series::INF))
}

/// Applies an `F_{q^m}` scalar to a Tate element.
pub fn scale_const(f: &TateElem, c: Fe) -> TateElem {
    TateElem::new(f.ctx(), f.coeffs().iter().map(|x| x.scale(c)).collect())
}
