//! Truncated Laurent series over `F_{q^m}` in a uniformizer `u` of `C_∞`,
//! normalized by `θ = -u^(-e)` with `e = q - 1`.
//!
//! An element stores its lowest nonzero exponent, the known coefficients and
//! the absolute precision `known_to`: coefficients at exponents `>= known_to`
//! are unknown. Exact elements (finite expansions such as `θ` or `a(θ)`)
//! carry `known_to = INF`. The relative precision `known_to - lead` never
//! exceeds the context's `prec`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{prime_power, Fe, Gf, PolyA};
use crate::error::{Error, Result};

/// Precision marker of exact elements.
pub const INF: i64 = i64::MAX / 8;

#[inline]
fn sat(n: i64) -> i64 {
    if n >= INF / 2 {
        INF
    } else {
        n
    }
}

#[derive(Debug)]
pub struct SeriesContext {
    q: u32,
    m: u32,
    e: i64,
    prec: i64,
    fq: Arc<Gf>,
    fqm: Arc<Gf>,
}

impl PartialEq for SeriesContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.m == other.m && self.prec == other.prec
    }
}

/// Smallest relative precision a context accepts.
pub const MIN_PREC: i64 = 32;

impl SeriesContext {
    pub fn new(q: u32, m: u32, prec: i64) -> Result<Arc<SeriesContext>> {
        if prime_power(q).is_none() {
            return Err(Error::Config(format!("q = {q} is not a prime power")));
        }
        if m == 0 {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if prec < MIN_PREC {
            return Err(Error::Config(format!("prec = {prec} is below the floor {MIN_PREC}")));
        }
        let fq = Arc::new(Gf::fq(q).unwrap());
        let fqm = Arc::new(fq.extension(m));
        Ok(Arc::new(SeriesContext { q, m, e: q as i64 - 1, prec, fq, fqm }))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Ramification index: `val(θ) = -e`.
    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn fq(&self) -> &Arc<Gf> {
        &self.fq
    }

    pub fn fqm(&self) -> &Arc<Gf> {
        &self.fqm
    }

    /// `F_q ⊂ F_{q^m}` on elements.
    pub fn embed(&self, c: Fe) -> Fe {
        self.fqm.from_code(self.fq.code(c))
    }
}

/// `SeriesContext` constructors for the basic elements.
pub trait ContextExt {
    fn zero(&self) -> Laurent;
    fn one(&self) -> Laurent;
    fn constant(&self, c: Fe) -> Laurent;
    fn monomial(&self, c: Fe, k: i64) -> Laurent;
    fn u(&self) -> Laurent;
    fn u_inv(&self) -> Laurent;
    fn theta(&self) -> Laurent;
    fn theta_pow(&self, n: i64) -> Laurent;
    fn poly_at_theta(&self, a: &PolyA) -> Laurent;
}

impl ContextExt for Arc<SeriesContext> {
    fn zero(&self) -> Laurent {
        Laurent { ctx: self.clone(), lead: INF, coeffs: Vec::new(), known_to: INF }
    }

    fn one(&self) -> Laurent {
        self.monomial(Fe::ONE, 0)
    }

    /// A constant of `F_{q^m}`.
    fn constant(&self, c: Fe) -> Laurent {
        self.monomial(c, 0)
    }

    fn monomial(&self, c: Fe, k: i64) -> Laurent {
        Laurent::from_parts(self.clone(), k, vec![c], INF)
    }

    fn u(&self) -> Laurent {
        self.monomial(Fe::ONE, 1)
    }

    /// `u^{-1}`, the chosen root `(-θ)^{1/(q-1)}`.
    fn u_inv(&self) -> Laurent {
        self.monomial(Fe::ONE, -1)
    }

    fn theta(&self) -> Laurent {
        self.theta_pow(1)
    }

    /// `θ^n = (-1)^n u^{-en}`, exact for every integer `n`.
    fn theta_pow(&self, n: i64) -> Laurent {
        let sign = if n.rem_euclid(2) == 0 { Fe::ONE } else { self.fqm.neg(Fe::ONE) };
        self.monomial(sign, -self.e * n)
    }

    /// `a(θ)` for `a ∈ F_q[t]`.
    fn poly_at_theta(&self, a: &PolyA) -> Laurent {
        let mut acc = self.zero();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.theta_pow(i as i64).scale(self.embed(c));
            }
        }
        acc
    }
}

#[derive(Clone)]
pub struct Laurent {
    ctx: Arc<SeriesContext>,
    lead: i64,
    coeffs: Vec<Fe>,
    known_to: i64,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent {
    /// `u^v * [c_v, c_{v+1}, ...] (known_to=N)` with coefficient codes of
    /// `F_{q^m}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.lead >= INF { 0 } else { self.lead };
        let codes: Vec<String> = self.coeffs.iter().map(|&c| self.ctx.fqm.code(c).to_string()).collect();
        let n = if self.known_to >= INF { "inf".to_string() } else { self.known_to.to_string() };
        write!(f, "u^{v} * [{}] (known_to={n})", codes.join(", "))
    }
}

/// Outcome of a comparison: the valuation of the difference, or `None` when
/// the difference vanishes to `known_to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub valuation: Option<i64>,
    pub known_to: i64,
}

impl Residual {
    pub fn of(x: &Laurent) -> Residual {
        Residual { valuation: x.valuation(), known_to: x.known_to }
    }

    /// Vanishing to the given precision.
    pub fn zero(known_to: i64) -> Residual {
        Residual { valuation: None, known_to }
    }

    /// The certified lower bound on the valuation of the difference.
    pub fn bound(&self) -> i64 {
        self.valuation.unwrap_or(self.known_to)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// The smaller of two residuals.
    pub fn min(self, other: Residual) -> Residual {
        if other.bound() < self.bound() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            Some(v) => write!(f, "{v}"),
            None if self.known_to >= INF => write!(f, "inf"),
            None => write!(f, ">={}", self.known_to),
        }
    }
}

impl Laurent {
    /// Builds and normalizes `Σ coeffs[i] u^(lead+i) + O(u^known_to)`.
    pub fn from_parts(ctx: Arc<SeriesContext>, lead: i64, coeffs: Vec<Fe>, known_to: i64) -> Laurent {
        let mut x = Laurent { ctx, lead, coeffs, known_to: sat(known_to) };
        x.normalize();
        x
    }

    /// Coefficients given as `F_{q^m}` codes.
    pub fn from_codes(ctx: &Arc<SeriesContext>, lead: i64, codes: &[u32], known_to: i64) -> Result<Laurent> {
        let fqm = ctx.fqm();
        let coeffs = codes
            .iter()
            .map(|&c| {
                if c < fqm.order() {
                    Ok(fqm.from_code(c))
                } else {
                    Err(Error::Invalid(format!("code {c} out of range for F_{}", fqm.order())))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Laurent::from_parts(ctx.clone(), lead, coeffs, known_to))
    }

    /// Parses the [`Display`](fmt::Display) format.
    pub fn parse(ctx: &Arc<SeriesContext>, text: &str) -> Result<Laurent> {
        let bad = || Error::Invalid(format!("malformed series {text:?}"));
        let rest = text.trim().strip_prefix("u^").ok_or_else(bad)?;
        let (v, rest) = rest.split_once('*').ok_or_else(bad)?;
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        let rest = rest.trim().strip_prefix('[').ok_or_else(bad)?;
        let (body, rest) = rest.split_once(']').ok_or_else(bad)?;
        let codes = body
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let n = rest
            .trim()
            .strip_prefix("(known_to=")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let known_to = if n == "inf" { INF } else { n.parse().map_err(|_| bad())? };
        Laurent::from_codes(ctx, v, &codes, known_to)
    }

    fn normalize(&mut self) {
        let prec = self.ctx.prec;
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip == self.coeffs.len() {
            self.coeffs.clear();
            self.lead = self.known_to;
            return;
        }
        self.coeffs.drain(..skip);
        self.lead += skip as i64;
        let exact_fits = self.known_to >= INF && self.coeffs.len() as i64 <= prec;
        if !exact_fits && self.known_to > self.lead + prec {
            self.known_to = self.lead + prec;
        }
        let keep = (self.known_to - self.lead).min(self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    /// Lowest exponent with a nonzero coefficient; `None` when zero to
    /// precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lead)
    }

    /// `valuation()`, or `known_to` for elements zero to precision.
    pub fn val_bound(&self) -> i64 {
        self.lead
    }

    pub fn known_to(&self) -> i64 {
        self.known_to
    }

    pub fn is_exact(&self) -> bool {
        self.known_to >= INF
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^k` (zero outside the stored range).
    pub fn coeff(&self, k: i64) -> Fe {
        if k < self.lead {
            return Fe::ZERO;
        }
        self.coeffs.get((k - self.lead) as usize).copied().unwrap_or(Fe::ZERO)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.first().copied()
    }

    /// Stored coefficients from the valuation on.
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|&c| self.ctx.fqm.code(c)).collect()
    }

    /// The same element with absolute precision lowered to `n`.
    pub fn truncate(&self, n: i64) -> Laurent {
        if n >= self.known_to {
            return self.clone();
        }
        Laurent::from_parts(self.ctx.clone(), self.lead, self.coeffs.clone(), n)
    }

    fn check_ctx(&self, other: &Laurent) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx,
            "series from different contexts"
        );
    }

    pub fn try_add(&self, other: &Laurent) -> Result<Laurent> {
        if !(Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.add_impl(other, false))
    }

    fn add_impl(&self, other: &Laurent, negate: bool) -> Laurent {
        self.check_ctx(other);
        let f = &self.ctx.fqm;
        let mut known_to = self.known_to.min(other.known_to);
        let lo = self.lead.min(other.lead).min(known_to);
        let end = |x: &Laurent| if x.is_zero() { lo } else { x.lead + x.coeffs.len() as i64 };
        let mut top = end(self).max(end(other)).min(known_to).max(lo);
        if top > sat(lo + self.ctx.prec) {
            top = lo + self.ctx.prec;
            known_to = top;
        }
        let mut coeffs = vec![Fe::ZERO; (top - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.lead + i as i64;
            if k < top {
                coeffs[(k - lo) as usize] = c;
            }
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let k = other.lead + i as i64;
            if k < top {
                let slot = &mut coeffs[(k - lo) as usize];
                *slot = if negate { f.sub(*slot, c) } else { f.add(*slot, c) };
            }
        }
        Laurent::from_parts(self.ctx.clone(), lo, coeffs, known_to)
    }

    pub fn neg(&self) -> Laurent {
        let f = &self.ctx.fqm;
        Laurent {
            ctx: self.ctx.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            known_to: self.known_to,
        }
    }

    /// Multiplication by a constant of `F_{q^m}`.
    pub fn scale(&self, c: Fe) -> Laurent {
        if c.is_zero() {
            return self.ctx.zero();
        }
        let f = &self.ctx.fqm;
        Laurent {
            ctx: self.ctx.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
            known_to: self.known_to,
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            ctx: self.ctx.clone(),
            lead: sat(self.lead + k),
            coeffs: self.coeffs.clone(),
            known_to: sat(self.known_to + k),
        }
    }

    fn mul_impl(&self, other: &Laurent) -> Laurent {
        self.check_ctx(other);
        let f = &self.ctx.fqm;
        let known_to = sat(self.lead + other.known_to).min(sat(other.lead + self.known_to));
        if self.is_zero() || other.is_zero() {
            return Laurent::from_parts(self.ctx.clone(), known_to, Vec::new(), known_to);
        }
        let lead = self.lead + other.lead;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = ((known_to - lead).min(self.ctx.prec).max(0) as usize).min(full);
        let known_to = if len < full { known_to.min(lead + len as i64) } else { known_to };
        let mut coeffs = vec![Fe::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            let end = (len - i).min(other.coeffs.len());
            for (j, &b) in other.coeffs[..end].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
                }
            }
        }
        Laurent::from_parts(self.ctx.clone(), lead, coeffs, known_to)
    }

    /// Multiplicative inverse. Fails when the element is zero to precision.
    pub fn inv(&self) -> Result<Laurent> {
        let f = &self.ctx.fqm;
        let Some(c0) = self.leading() else {
            return Err(Error::IndeterminateDivisor);
        };
        let c0inv = f.inv(c0).unwrap();
        if self.coeffs.len() == 1 && self.is_exact() {
            return Ok(Laurent::from_parts(self.ctx.clone(), -self.lead, vec![c0inv], INF));
        }
        let rel = (self.known_to - self.lead).min(self.ctx.prec);
        let n = rel as usize;
        // long division of 1 by c0 (1 + w)
        let mut out = vec![Fe::ZERO; n];
        for k in 0..n {
            let mut s = if k == 0 { Fe::ONE } else { Fe::ZERO };
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = self.coeffs[j];
                if !a.is_zero() && !out[k - j].is_zero() {
                    s = f.sub(s, f.mul(a, out[k - j]));
                }
            }
            out[k] = f.mul(s, c0inv);
        }
        Ok(Laurent::from_parts(self.ctx.clone(), -self.lead, out, -self.lead + rel))
    }

    pub fn div(&self, other: &Laurent) -> Result<Laurent> {
        Ok(self.mul_impl(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Laurent> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `x^q`. Absolute precision multiplies by `q`.
    pub fn frobenius(&self) -> Laurent {
        self.frobenius_pow(1)
    }

    /// `x^(q^k)`.
    pub fn frobenius_pow(&self, k: u32) -> Laurent {
        if k == 0 {
            return self.clone();
        }
        let f = &self.ctx.fqm;
        let qk = (self.ctx.q as i64).pow(k);
        let known_to = if self.known_to >= INF { INF } else { self.known_to.saturating_mul(qk) };
        if self.is_zero() {
            return Laurent::from_parts(self.ctx.clone(), known_to, Vec::new(), known_to);
        }
        let lead = self.lead * qk;
        let span = (known_to.min(sat(lead + self.ctx.prec)) - lead) as usize;
        let full = (self.coeffs.len() - 1) * qk as usize + 1;
        let len = full.min(span);
        let known_to = if len < full { known_to.min(lead + len as i64) } else { known_to };
        let mut coeffs = vec![Fe::ZERO; len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let pos = i * qk as usize;
            if pos >= len {
                break;
            }
            coeffs[pos] = f.frobenius(c, k);
        }
        Laurent::from_parts(self.ctx.clone(), lead, coeffs, known_to)
    }

    /// Valuation of `self - other`.
    pub fn residual(&self, other: &Laurent) -> Residual {
        Residual::of(&(self - other))
    }

    /// Whether `val(self - other) >= threshold`, with the achieved residual.
    /// Errors when the threshold is beyond the known precision of either
    /// side.
    pub fn eq_to_precision(&self, other: &Laurent, threshold: i64) -> Result<(bool, Residual)> {
        let known_to = self.known_to.min(other.known_to);
        if threshold > known_to {
            return Err(Error::InsufficientPrecision { threshold, known_to });
        }
        let r = self.residual(other);
        Ok((r.bound() >= threshold, r))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "valuation": self.valuation(),
            "known_to": if self.is_exact() { None } else { Some(self.known_to) },
            "coeffs": self.codes(),
            "text": self.to_string(),
        })
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.add_impl(rhs, true)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.mul_impl(rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent::neg(self)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl std::iter::Sum for Laurent {
    fn sum<I: Iterator<Item = Laurent>>(mut iter: I) -> Laurent {
        let first = iter.next().expect("sum of an empty iterator needs a context");
        iter.fold(first, |acc, x| &acc + &x)
    }
}
