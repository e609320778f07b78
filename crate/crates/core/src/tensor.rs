//! Elements of `F_𝔭 ⊗ C_∞^d`, stored in the power basis
//! `1, t̄, …, t̄^(d_𝔭-1)` of `F_𝔭 = F_q[t]/𝔭`.

use std::sync::Arc;

use crate::algebra::{Fe, PrimeData};
use crate::error::{Error, Result};
use crate::series::{ContextExt, Laurent, Residual, SeriesContext, INF};

#[derive(Clone, Debug)]
pub struct TensorVec {
    prime: Arc<PrimeData>,
    ctx: Arc<SeriesContext>,
    slots: Vec<Vec<Laurent>>,
}

impl TensorVec {
    pub fn from_slots(prime: &Arc<PrimeData>, ctx: &Arc<SeriesContext>, slots: Vec<Vec<Laurent>>) -> TensorVec {
        assert_eq!(slots.len(), prime.degree());
        TensorVec { prime: prime.clone(), ctx: ctx.clone(), slots }
    }

    pub fn zero(prime: &Arc<PrimeData>, ctx: &Arc<SeriesContext>, dim: usize) -> TensorVec {
        TensorVec::from_slots(prime, ctx, vec![vec![ctx.zero(); dim]; prime.degree()])
    }

    /// `α ⊗ x`.
    pub fn pure(prime: &Arc<PrimeData>, ctx: &Arc<SeriesContext>, alpha: Fe, x: &[Laurent]) -> TensorVec {
        let fq = prime.fq();
        let slots = prime
            .coords(alpha)
            .into_iter()
            .map(|d| x.iter().map(|c| c.scale(ctx.embed(fq.from_code(d)))).collect())
            .collect();
        TensorVec::from_slots(prime, ctx, slots)
    }

    pub fn prime(&self) -> &Arc<PrimeData> {
        &self.prime
    }

    pub fn ctx(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.slots[0].len()
    }

    pub fn slots(&self) -> &[Vec<Laurent>] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> &[Laurent] {
        &self.slots[i]
    }

    fn zip(&self, other: &TensorVec, f: impl Fn(&Laurent, &Laurent) -> Laurent) -> TensorVec {
        assert!(self.prime == other.prime, "tensors over different primes");
        let slots = self
            .slots
            .iter()
            .zip(&other.slots)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        TensorVec::from_slots(&self.prime, &self.ctx, slots)
    }

    pub fn add(&self, other: &TensorVec) -> TensorVec {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &TensorVec) -> TensorVec {
        self.zip(other, |x, y| x - y)
    }

    pub fn neg(&self) -> TensorVec {
        self.map_payload(|x| x.iter().map(Laurent::neg).collect())
    }

    /// `(1 ⊗ f)` for an `F_q`-linear map `f` of `C_∞^d`.
    pub fn map_payload(&self, f: impl Fn(&[Laurent]) -> Vec<Laurent>) -> TensorVec {
        let slots = self.slots.iter().map(|s| f(s)).collect();
        TensorVec::from_slots(&self.prime, &self.ctx, slots)
    }

    /// `(1 ⊗ c)` for a scalar `c ∈ C_∞`.
    pub fn scale(&self, c: &Laurent) -> TensorVec {
        self.map_payload(|x| x.iter().map(|y| y * c).collect())
    }

    /// `(α ⊗ 1)` for `α ∈ F_𝔭`.
    pub fn mul_scalar(&self, alpha: Fe) -> TensorVec {
        let field = self.prime.field().clone();
        let tbar = self.prime.t_bar();
        let images: Vec<Fe> = (0..self.slots.len())
            .map(|i| field.mul(alpha, field.pow(tbar, i as u64)))
            .collect();
        self.apply_linear(&images)
    }

    /// `(σ^k ⊗ 1)` with `σ` the `q`-power Frobenius of `F_𝔭`.
    pub fn frobenius_slots(&self, k: u32) -> TensorVec {
        let field = self.prime.field().clone();
        let tbar = self.prime.t_bar();
        let images: Vec<Fe> = (0..self.slots.len())
            .map(|i| field.frobenius(field.pow(tbar, i as u64), k))
            .collect();
        self.apply_linear(&images)
    }

    /// Applies the `F_q`-linear map of `F_𝔭` sending `t̄^i` to `images[i]`.
    fn apply_linear(&self, images: &[Fe]) -> TensorVec {
        let fq = self.prime.fq();
        let d = self.slots.len();
        let dim = self.dim();
        let mut out = vec![vec![self.ctx.zero(); dim]; d];
        for (i, img) in images.iter().enumerate() {
            for (j, code) in self.prime.coords(*img).into_iter().enumerate() {
                if code == 0 {
                    continue;
                }
                let c = self.ctx.embed(fq.from_code(code));
                for k in 0..dim {
                    out[j][k] = &out[j][k] + &self.slots[i][k].scale(c);
                }
            }
        }
        TensorVec::from_slots(&self.prime, &self.ctx, out)
    }

    /// Product in `F_𝔭 ⊗ C_∞` of two tensors with scalar payloads.
    pub fn mul(&self, other: &TensorVec) -> TensorVec {
        assert!(self.dim() == 1 && other.dim() == 1);
        let d = self.slots.len();
        let mut acc = TensorVec::zero(&self.prime, &self.ctx, 1);
        let field = self.prime.field().clone();
        let tbar = self.prime.t_bar();
        for i in 0..d {
            for j in 0..d {
                let prod = &self.slots[i][0] * &other.slots[j][0];
                let basis = field.pow(tbar, (i + j) as u64);
                acc = acc.add(&TensorVec::pure(&self.prime, &self.ctx, basis, &[prod]));
            }
        }
        acc
    }

    /// The multiplication map `F_𝔭 ⊗ C_∞ → C_∞` for the embedding
    /// `t̄ ↦ ζ`, with `ζ ∈ F_{q^m}` a root of `𝔭`.
    pub fn tensorless(&self, zeta: Fe) -> Result<Vec<Laurent>> {
        let fqm = self.ctx.fqm();
        if !self.prime.poly().eval_ext(fqm, zeta).is_zero() {
            return Err(Error::NotARoot);
        }
        let dim = self.dim();
        let mut out = vec![self.ctx.zero(); dim];
        for (i, slot) in self.slots.iter().enumerate() {
            let z = fqm.pow(zeta, i as u64);
            for k in 0..dim {
                out[k] = &out[k] + &slot[k].scale(z);
            }
        }
        Ok(out)
    }

    /// Worst slotwise residual of `self - other`.
    pub fn residual(&self, other: &TensorVec) -> Residual {
        self.sub(other).norm_residual()
    }

    /// Residual of `self` against zero.
    pub fn norm_residual(&self) -> Residual {
        self.slots
            .iter()
            .flatten()
            .map(Residual::of)
            .reduce(Residual::min)
            .unwrap_or(Residual::zero(INF))
    }

    /// Least valuation over all slot entries; `None` when zero to precision.
    pub fn min_valuation(&self) -> Option<i64> {
        self.slots.iter().flatten().filter_map(Laurent::valuation).min()
    }

    pub fn known_to(&self) -> i64 {
        self.slots.iter().flatten().map(Laurent::known_to).min().unwrap_or(INF)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "prime": self.prime.poly().to_string(),
            "slots": self
                .slots
                .iter()
                .map(|s| s.iter().map(Laurent::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{residue_field, roots_in_ext, PolyA};

    fn setup() -> (Arc<SeriesContext>, Arc<PrimeData>) {
        let c = SeriesContext::new(3, 2, 64).unwrap();
        let p = Arc::new(residue_field(&PolyA::from_codes(c.fq(), &[1, 0, 1]).unwrap()).unwrap());
        (c, p)
    }

    #[test]
    fn tensorless_examples() {
        let (c, p) = setup();
        let x = Laurent::from_codes(&c, 1, &[1, 4], 40).unwrap();
        let v = TensorVec::pure(&p, &c, Fe::ONE, std::slice::from_ref(&x));
        let roots = roots_in_ext(p.poly(), c.fqm());
        assert_eq!(roots.len(), 2);
        assert!(v.tensorless(roots[0]).unwrap()[0].residual(&x).is_zero());
        let tb = TensorVec::pure(&p, &c, p.t_bar(), &[c.one()]);
        assert!(tb.tensorless(roots[1]).unwrap()[0].residual(&c.constant(roots[1])).is_zero());
        assert_eq!(tb.tensorless(Fe::ONE).unwrap_err(), Error::NotARoot);
    }

    #[test]
    fn scalar_action_is_field_multiplication() {
        let (c, p) = setup();
        let x = c.theta();
        let f = p.field().clone();
        for a in p.residues() {
            for b in p.residues() {
                let lhs = TensorVec::pure(&p, &c, b, std::slice::from_ref(&x)).mul_scalar(a);
                let rhs = TensorVec::pure(&p, &c, f.mul(a, b), std::slice::from_ref(&x));
                assert!(lhs.residual(&rhs).is_zero());
            }
        }
    }

    #[test]
    fn tensorless_is_ring_map() {
        let (c, p) = setup();
        let a = TensorVec::from_slots(&p, &c, vec![vec![c.theta()], vec![c.u()]]);
        let b = TensorVec::from_slots(&p, &c, vec![vec![c.one()], vec![c.theta_pow(-1)]]);
        let z = roots_in_ext(p.poly(), c.fqm())[0];
        let lhs = a.mul(&b).tensorless(z).unwrap();
        let rhs = &a.tensorless(z).unwrap()[0] * &b.tensorless(z).unwrap()[0];
        assert!(lhs[0].residual(&rhs).is_zero());
    }
}
