//! Sparse bivariate polynomials over `F_q`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::field::{Fe, Gf};
use super::poly::PolyA;

/// `Σ c_ij X^i Y^j` with nonzero coefficients only.
#[derive(Clone, Debug)]
pub struct BiPoly {
    fq: Arc<Gf>,
    terms: BTreeMap<(usize, usize), Fe>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl BiPoly {
    pub fn zero(fq: &Arc<Gf>) -> BiPoly {
        BiPoly { fq: fq.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(fq: &Arc<Gf>, c: Fe, i: usize, j: usize) -> BiPoly {
        let mut p = BiPoly::zero(fq);
        p.add_term(i, j, c);
        p
    }

    /// `a(X)`.
    pub fn in_x(a: &PolyA) -> BiPoly {
        let mut p = BiPoly::zero(a.field());
        for (i, &c) in a.coeffs().iter().enumerate() {
            p.add_term(i, 0, c);
        }
        p
    }

    /// `a(Y)`.
    pub fn in_y(a: &PolyA) -> BiPoly {
        let mut p = BiPoly::zero(a.field());
        for (j, &c) in a.coeffs().iter().enumerate() {
            p.add_term(0, j, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.fq
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), Fe)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coeff(&self, i: usize, j: usize) -> Fe {
        self.terms.get(&(i, j)).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Fe) {
        let s = self.fq.add(self.coeff(i, j), c);
        if s.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), s);
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        let mut out = BiPoly::zero(&self.fq);
        for (&(i, j), &c) in &self.terms {
            out.terms.insert((i, j), self.fq.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(&self.fq);
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &other.terms {
                out.add_term(i + k, j + l, self.fq.mul(a, b));
            }
        }
        out
    }

    /// Degree in `X`; `None` for zero.
    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Substitutes `X = Y = t`.
    pub fn diagonal(&self) -> PolyA {
        let deg = self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0);
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        for (&(i, j), &c) in &self.terms {
            coeffs[i + j] = self.fq.add(coeffs[i + j], c);
        }
        PolyA::new(self.fq.clone(), coeffs)
    }

    /// Remainder on division by `m`, viewed as polynomials in `X` over
    /// `F_q[Y]`. The leading `X`-coefficient of `m` must be a nonzero
    /// constant.
    pub fn rem_in_x(&self, m: &BiPoly) -> BiPoly {
        let dm = m.degree_x().expect("division by zero");
        let lead: Vec<(usize, Fe)> = m
            .terms
            .iter()
            .filter(|(&(i, _), _)| i == dm)
            .map(|(&(_, j), &c)| (j, c))
            .collect();
        assert!(lead.len() == 1 && lead[0].0 == 0, "leading X-coefficient must be constant");
        let lead_inv = self.fq.inv(lead[0].1).unwrap();
        let mut r = self.clone();
        while let Some(d) = r.degree_x().filter(|&d| d >= dm) {
            let top: Vec<(usize, Fe)> = r
                .terms
                .iter()
                .filter(|(&(i, _), _)| i == d)
                .map(|(&(_, j), &c)| (j, c))
                .collect();
            for (j, c) in top {
                let f = self.fq.mul(c, lead_inv);
                let shift = BiPoly::monomial(&self.fq, f, d - dm, j);
                r = r.sub(&shift.mul(m));
            }
        }
        r
    }
}
