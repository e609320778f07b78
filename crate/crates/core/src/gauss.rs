//! Multiplicative characters of `(A/𝔭)^×`, Gauss–Thakur sums in
//! `F_𝔭 ⊗ E(C_∞)`, the projector `η_χ`, Fourier inversion, ranks of
//! Gauss-sum families and the comparison of special functions at `𝔭` with
//! Gauss sums.

use std::sync::Arc;

use crate::algebra::{formal_derivative, Fe, PolyA, PrimeData};
use crate::anderson::{torsion_char, AndersonModule, TorsionChar};
use crate::error::{Error, Result};
use crate::par;
use crate::series::{Laurent, Residual, INF};
use crate::special::{agf_converged, judge};
use crate::tensor::TensorVec;

/// `χ(x) = x^k` on `F_𝔭^×`, extended by `χ(0) = 0`. Evaluative means the
/// extension is an `F_q`-algebra map `A/𝔭 → F_𝔭`.
#[derive(Clone, Debug)]
pub struct MultChar {
    pub prime: Arc<PrimeData>,
    pub exponent: u64,
    pub evaluative: bool,
    /// `χ(t̄)` when the lift is a ring map.
    pub zeta: Option<Fe>,
}

impl MultChar {
    pub fn new(prime: &Arc<PrimeData>, exponent: u64) -> MultChar {
        let f = prime.field();
        let order = (prime.size() - 1) as u64;
        let exponent = exponent % order;
        let chi = |x: Fe| if x.is_zero() { Fe::ZERO } else { f.pow(x, exponent) };
        let residues: Vec<Fe> = prime.residues().collect();
        let fq = prime.fq();
        let fixes_constants = fq.elements().all(|c| {
            let c = prime.reduce(&PolyA::constant(fq, c));
            chi(c) == c
        });
        let evaluative = fixes_constants
            && residues
                .iter()
                .all(|&a| residues.iter().all(|&b| chi(f.add(a, b)) == f.add(chi(a), chi(b))));
        let zeta = evaluative.then(|| chi(prime.t_bar()));
        MultChar { prime: prime.clone(), exponent, evaluative, zeta }
    }

    /// The character `x ↦ x`, i.e. reduction modulo `𝔭`.
    pub fn reduction(prime: &Arc<PrimeData>) -> MultChar {
        MultChar::new(prime, 1)
    }

    pub fn value(&self, x: Fe) -> Fe {
        if x.is_zero() {
            Fe::ZERO
        } else {
            self.prime.field().pow(x, self.exponent)
        }
    }

    pub fn inverse_value(&self, x: Fe) -> Fe {
        let f = self.prime.field();
        f.inv(self.value(x)).expect("character of a unit")
    }
}

pub fn enumerate_characters(p: &Arc<PrimeData>) -> Vec<MultChar> {
    let n = (p.size() - 1) as usize;
    par::map_range(n, |k| MultChar::new(p, k as u64))
}

/// `g(χ, ψ) = -Σ_{x ∈ (A/𝔭)^×} χ(x)^{-1} ⊗ ψ(x)`.
pub fn gauss_sum(chi: &MultChar, psi: &TorsionChar) -> TensorVec {
    assert!(chi.prime == psi.prime, "character and torsion point over different primes");
    let p = &chi.prime;
    let ctx = psi.period[0].ctx();
    let mut acc = TensorVec::zero(p, ctx, psi.dim());
    for x in p.units() {
        acc = acc.add(&TensorVec::pure(p, ctx, chi.inverse_value(x), psi.value(x)));
    }
    acc.neg()
}

/// `η_χ(h) = -Σ_x (χ(x)^{-1} ⊗ φ_x)(h)`.
pub fn eta_projection(m: &AndersonModule, chi: &MultChar, h: &TensorVec) -> TensorVec {
    let p = &chi.prime;
    let units: Vec<Fe> = p.units().collect();
    let terms = par::map(&units, |&x| {
        let a = p.lift(x);
        h.map_payload(|v| m.phi_apply(&a, v)).mul_scalar(chi.inverse_value(x))
    });
    terms.iter().fold(TensorVec::zero(p, h.ctx(), h.dim()), |acc, t| acc.add(t)).neg()
}

/// Worst residual of `(χ(a) ⊗ 1) g - (1 ⊗ φ_a) g` over all `a ∈ A/𝔭`.
pub fn eigen_residual(m: &AndersonModule, chi: &MultChar, g: &TensorVec) -> Residual {
    let p = &chi.prime;
    let residues: Vec<Fe> = p.residues().collect();
    par::map(&residues, |&a| {
        let lhs = g.mul_scalar(chi.value(a));
        let lift = p.lift(a);
        let rhs = g.map_payload(|v| m.phi_apply(&lift, v));
        lhs.residual(&rhs)
    })
    .into_iter()
    .fold(Residual::zero(INF), Residual::min)
}

/// `1 ⊗ ψ(y) = Σ_χ (χ(y) ⊗ 1) g(χ, ψ)` for every `y ∈ A/𝔭`; the factor
/// `-(q^{d_𝔭} - 1)` equals `1` in characteristic `p`.
pub fn fourier_inversion_residuals(psi: &TorsionChar) -> Vec<Residual> {
    let p = &psi.prime;
    let ctx = psi.period[0].ctx();
    let chars = enumerate_characters(p);
    let sums: Vec<TensorVec> = par::map(&chars, |c| gauss_sum(c, psi));
    p.residues()
        .map(|y| {
            let lhs = TensorVec::pure(p, ctx, Fe::ONE, psi.value(y));
            let rhs = chars
                .iter()
                .zip(&sums)
                .fold(TensorVec::zero(p, ctx, psi.dim()), |acc, (c, g)| acc.add(&g.mul_scalar(c.value(y))));
            lhs.residual(&rhs)
        })
        .collect()
}

pub fn fourier_inversion_check(psi: &TorsionChar, threshold: i64) -> Result<(bool, Residual)> {
    let worst = fourier_inversion_residuals(psi).into_iter().fold(Residual::zero(INF), Residual::min);
    Ok((judge(worst, threshold)?, worst))
}

/// Digit vector over `F_p` of the `u`-coefficients of `v` in `[lo, hi)`.
fn digit_vector(v: &TensorVec, lo: i64, hi: i64) -> Vec<u32> {
    let fqm = v.ctx().fqm();
    let mut out = Vec::new();
    for x in v.slots().iter().flatten() {
        for k in lo..hi {
            out.extend(fqm.digits(x.coeff(k)));
        }
    }
    out
}

fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&i| i * rows[rank][c] % p == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + (p - f) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `F_𝔭`-rank of a family in `F_𝔭 ⊗ C_∞^d`. Each element is expanded over an
/// `F_p`-basis of `F_𝔭` and read off in `u`-exponents `[lo, lo + prec/2)`,
/// `lo` the least valuation in the family.
pub fn tensor_rank(family: &[TensorVec]) -> Result<usize> {
    let Some(first) = family.first() else { return Ok(0) };
    let lo = match family.iter().filter_map(TensorVec::min_valuation).min() {
        Some(v) => v,
        None => return Ok(0),
    };
    let hi = lo + first.ctx().prec() / 2;
    if family.iter().any(|g| g.known_to() < hi) {
        return Err(Error::RankIndeterminate);
    }
    let field = first.prime().field();
    let p = field.characteristic();
    let digits = field.digits(field.generator()).len();
    let basis: Vec<Fe> = (0..digits as u32).map(|j| field.from_code(p.pow(j))).collect();
    let rows: Vec<Vec<u32>> = family
        .iter()
        .flat_map(|g| basis.iter().map(move |&b| digit_vector(&g.mul_scalar(b), lo, hi)))
        .collect();
    Ok(rank_mod_p(rows, p) / digits)
}

/// Dimension of the span of `g(χ, ψ_λ)` for the given periods, with the sums.
pub fn gauss_space_dim(
    m: &AndersonModule,
    chi: &MultChar,
    periods: &[Vec<Laurent>],
) -> Result<(usize, Vec<TensorVec>)> {
    if !chi.evaluative {
        return Ok((0, Vec::new()));
    }
    let sums = periods
        .iter()
        .map(|l| torsion_char(m, l, &chi.prime).map(|psi| gauss_sum(chi, &psi)))
        .collect::<Result<Vec<_>>>()?;
    Ok((tensor_rank(&sums)?, sums))
}

/// Both sides of `f_λ(𝔓) = (χ_𝔓(𝔭') ⊗ 1) g(χ_𝔓, ψ_λ)` with `f_λ` the AGF of `λ`.
pub struct ValuesDiagram {
    pub lhs: TensorVec,
    pub rhs: TensorVec,
    pub nt: usize,
}

impl ValuesDiagram {
    pub fn residual(&self) -> Residual {
        self.lhs.residual(&self.rhs)
    }

    /// Residual after `t̄ ↦ ζ`.
    pub fn tensorless_residual(&self, zeta: Fe) -> Result<Residual> {
        let a = self.lhs.tensorless(zeta)?;
        let b = self.rhs.tensorless(zeta)?;
        Ok(crate::anderson::vec_residual(&a, &b))
    }
}

pub fn values_diagram(m: &AndersonModule, lambda: &[Laurent], p: &Arc<PrimeData>) -> Result<ValuesDiagram> {
    let f = agf_converged(m, lambda, crate::tate::DEFAULT_NT)?;
    let nt = f.nt();
    let evals: Vec<TensorVec> = f.value.iter().map(|c| c.eval_at_prime(p)).collect();
    let slots = (0..p.degree())
        .map(|j| evals.iter().map(|e| e.slot(j)[0].clone()).collect())
        .collect();
    let lhs = TensorVec::from_slots(p, m.ctx(), slots);
    let chi = MultChar::reduction(p);
    let psi = torsion_char(m, lambda, p)?;
    let dp = p.reduce(&formal_derivative(p.poly()));
    let rhs = gauss_sum(&chi, &psi).mul_scalar(dp);
    Ok(ValuesDiagram { lhs, rhs, nt })
}

pub fn values_diagram_check(
    m: &AndersonModule,
    lambda: &[Laurent],
    p: &Arc<PrimeData>,
    threshold: i64,
) -> Result<(bool, Residual)> {
    let r = values_diagram(m, lambda, p)?.residual();
    Ok((judge(r, threshold)?, r))
}

/// `g(χ_{q^i}, ψ) = (σ^i ⊗ 1) g(χ_1, ψ)` over the evaluative characters,
/// with `σ` the `q`-power Frobenius of `F_𝔭`. Returns the worst residual.
pub fn frobenius_orbit_residual(psi: &TorsionChar) -> Residual {
    let p = &psi.prime;
    let q = p.fq().order() as u64;
    let base = gauss_sum(&MultChar::reduction(p), psi);
    (0..p.degree() as u32)
        .map(|i| {
            let chi = MultChar::new(p, q.pow(i));
            gauss_sum(&chi, psi).residual(&base.frobenius_slots(i))
        })
        .fold(Residual::zero(INF), Residual::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{residue_field, roots_in_ext};
    use crate::anderson::{carlitz, carlitz_period};
    use crate::series::{ContextExt, SeriesContext};

    fn prime(q: u32, codes: &[u32]) -> Arc<PrimeData> {
        let fq = Arc::new(crate::algebra::Gf::fq(q).unwrap());
        Arc::new(residue_field(&PolyA::from_codes(&fq, codes).unwrap()).unwrap())
    }

    #[test]
    fn character_counts() {
        let p = prime(3, &[1, 0, 1]);
        let chars = enumerate_characters(&p);
        assert_eq!(chars.len(), 8);
        let ev: Vec<u64> = chars.iter().filter(|c| c.evaluative).map(|c| c.exponent).collect();
        assert_eq!(ev, vec![1, 3]);
        let p = prime(3, &[0, 1]);
        let chars = enumerate_characters(&p);
        assert_eq!(chars.len(), 2);
        assert_eq!(chars.iter().filter(|c| c.evaluative).count(), 1);
        let p4 = prime(4, &[1, 1]);
        let ev: Vec<u64> = enumerate_characters(&p4).iter().filter(|c| c.evaluative).map(|c| c.exponent).collect();
        assert_eq!(ev, vec![1]);
        let f = p.field().clone();
        for c in &chars {
            for x in p.units() {
                for y in p.units() {
                    assert_eq!(c.value(f.mul(x, y)), f.mul(c.value(x), c.value(y)));
                }
            }
        }
    }

    fn carlitz_setup(q: u32, m: u32, codes: &[u32]) -> (AndersonModule, Arc<PrimeData>, TorsionChar) {
        let ctx = SeriesContext::new(q, m, 240).unwrap();
        let p = prime(q, codes);
        let md = carlitz(&ctx);
        let psi = torsion_char(&md, &[carlitz_period(&ctx)], &p).unwrap();
        (md, p, psi)
    }

    #[test]
    fn dichotomy_and_eigen() {
        let (m, p, psi) = carlitz_setup(3, 2, &[1, 0, 1]);
        for chi in enumerate_characters(&p) {
            let g = gauss_sum(&chi, &psi);
            if chi.evaluative {
                assert!(g.min_valuation().unwrap() < 60);
                assert!(eigen_residual(&m, &chi, &g).bound() >= 120);
            } else {
                assert!(g.norm_residual().bound() >= 120, "{}", g.norm_residual());
            }
        }
    }

    #[test]
    fn fourier_and_eta() {
        let (m, p, psi) = carlitz_setup(3, 2, &[1, 0, 1]);
        let (ok, r) = fourier_inversion_check(&psi, 120).unwrap();
        assert!(ok, "{r}");
        let chi = MultChar::reduction(&p);
        let e = TensorVec::pure(&p, psi.period[0].ctx(), Fe::ONE, psi.value(Fe::ONE));
        let h = eta_projection(&m, &chi, &e);
        assert!(h.residual(&gauss_sum(&chi, &psi)).bound() >= 120);
        let y = p.reduce(&PolyA::from_codes(p.fq(), &[2, 1]).unwrap());
        let mixed = TensorVec::pure(&p, h.ctx(), p.t_bar(), psi.value(y)).add(&e);
        let once = eta_projection(&m, &chi, &mixed);
        assert!(eta_projection(&m, &chi, &once).residual(&once).bound() >= 120);
    }

    #[test]
    fn twisting_and_orbit() {
        let (_, p, psi) = carlitz_setup(3, 2, &[1, 0, 1]);
        let chi = MultChar::reduction(&p);
        let a = PolyA::from_codes(p.fq(), &[1, 1]).unwrap();
        let lhs = gauss_sum(&chi, &psi.twisted_by(&a));
        let rhs = gauss_sum(&chi, &psi).mul_scalar(p.reduce(&a));
        assert!(lhs.residual(&rhs).bound() >= 200);
        assert!(frobenius_orbit_residual(&psi).bound() >= 200);
    }

    #[test]
    fn carlitz_rank_one() {
        let (m, p, _) = carlitz_setup(3, 2, &[1, 0, 1]);
        let pi = carlitz_period(m.ctx());
        let chi = MultChar::reduction(&p);
        assert_eq!(gauss_space_dim(&m, &chi, &[vec![pi.clone()]]).unwrap().0, 1);
        let twice = vec![vec![pi.clone()], vec![&pi * &m.ctx().theta()]];
        assert_eq!(gauss_space_dim(&m, &chi, &twice).unwrap().0, 1);
        assert_eq!(gauss_space_dim(&m, &MultChar::new(&p, 2), &twice).unwrap().0, 0);
    }

    #[test]
    fn values_examples() {
        let (m, p, _) = carlitz_setup(3, 2, &[1, 0, 1]);
        let pi = carlitz_period(m.ctx());
        let d = values_diagram(&m, &[pi], &p).unwrap();
        assert!(d.residual().bound() >= 100, "{}", d.residual());
        for z in roots_in_ext(p.poly(), m.ctx().fqm()) {
            assert!(d.tensorless_residual(z).unwrap().bound() >= 100);
        }
        let (m, p, _) = carlitz_setup(3, 1, &[2, 1]);
        let (ok, r) = values_diagram_check(&m, &[carlitz_period(m.ctx())], &p, 100).unwrap();
        assert!(ok, "{r}");
    }
}
