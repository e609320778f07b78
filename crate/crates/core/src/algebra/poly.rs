//! The polynomial ring `A = F_q[t]`.

use std::fmt;
use std::sync::Arc;

use super::field::{Fe, Gf};
use crate::error::{Error, Result};

/// A polynomial over `F_q` with the leading coefficient stored last and
/// nonzero (the zero polynomial has no coefficients).
#[derive(Clone)]
pub struct PolyA {
    fq: Arc<Gf>,
    coeffs: Vec<Fe>,
}

impl PartialEq for PolyA {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for PolyA {}

impl std::hash::Hash for PolyA {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyA{}", self)
    }
}

/// Canonical text form: coefficient codes, constant term first.
impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.codes().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl PolyA {
    pub fn new(fq: Arc<Gf>, mut coeffs: Vec<Fe>) -> PolyA {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyA { fq, coeffs }
    }

    /// From coefficient codes, constant term first.
    pub fn from_codes(fq: &Arc<Gf>, codes: &[u32]) -> Result<PolyA> {
        let coeffs = codes
            .iter()
            .map(|&c| {
                if c < fq.order() {
                    Ok(fq.from_code(c))
                } else {
                    Err(Error::Invalid(format!("coefficient {c} is not an element of F_{}", fq.order())))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyA::new(fq.clone(), coeffs))
    }

    /// Parses `[c0,c1,...]`.
    pub fn parse(fq: &Arc<Gf>, text: &str) -> Result<PolyA> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Invalid(format!("expected [c0,c1,...], got {text:?}")))?;
        let codes = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|e| Error::Invalid(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        PolyA::from_codes(fq, &codes)
    }

    pub fn zero(fq: &Arc<Gf>) -> PolyA {
        PolyA { fq: fq.clone(), coeffs: Vec::new() }
    }

    pub fn one(fq: &Arc<Gf>) -> PolyA {
        PolyA::constant(fq, Fe::ONE)
    }

    pub fn constant(fq: &Arc<Gf>, c: Fe) -> PolyA {
        PolyA::new(fq.clone(), vec![c])
    }

    /// `c t^k`.
    pub fn monomial(fq: &Arc<Gf>, c: Fe, k: usize) -> PolyA {
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        PolyA::new(fq.clone(), coeffs)
    }

    pub fn t(fq: &Arc<Gf>) -> PolyA {
        PolyA::monomial(fq, Fe::ONE, 1)
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.fq
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|&c| self.fq.code(c)).collect()
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.coeffs.get(k).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    pub fn add(&self, other: &PolyA) -> PolyA {
        let n = self.coeffs.len().max(other.coeffs.len());
        let f = &self.fq;
        PolyA::new(f.clone(), (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> PolyA {
        let f = &self.fq;
        PolyA::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &PolyA) -> PolyA {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> PolyA {
        let f = &self.fq;
        PolyA::new(f.clone(), self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &PolyA) -> PolyA {
        if self.is_zero() || other.is_zero() {
            return PolyA::zero(&self.fq);
        }
        let f = &self.fq;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        PolyA::new(f.clone(), out)
    }

    pub fn pow(&self, mut k: u64) -> PolyA {
        let mut base = self.clone();
        let mut acc = PolyA::one(&self.fq);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &PolyA) -> (PolyA, PolyA) {
        let f = &self.fq;
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyA::zero(f), self.clone());
        }
        let mut quo = vec![Fe::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[top - dd] = c;
            for (k, &dk) in d.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(c, dk));
            }
        }
        rem.truncate(dd);
        (PolyA::new(f.clone(), quo), PolyA::new(f.clone(), rem))
    }

    pub fn rem(&self, d: &PolyA) -> PolyA {
        self.divrem(d).1
    }

    pub fn make_monic(&self) -> PolyA {
        match self.fq.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &PolyA) -> PolyA {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &PolyA) -> PolyA {
        let mut base = self.rem(m);
        let mut acc = PolyA::one(&self.fq).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluates at a point of an extension field whose codes restrict to
    /// those of `F_q`.
    pub fn eval_ext(&self, ext: &Gf, x: Fe) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| {
            ext.add(ext.mul(acc, x), ext.from_code(self.fq.code(c)))
        })
    }

    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> PolyA {
        PolyA::new(self.fq.clone(), self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `a mod t^n`.
    pub fn truncate_degree(&self, n: usize) -> PolyA {
        PolyA::new(self.fq.clone(), self.coeffs.iter().take(n).copied().collect())
    }

    /// `a(t^k)`.
    pub fn compose_power(&self, k: u64) -> PolyA {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        let mut out = vec![Fe::ZERO; d * k as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k as usize] = c;
        }
        PolyA::new(self.fq.clone(), out)
    }
}

/// Formal derivative in characteristic `p`.
pub fn formal_derivative(a: &PolyA) -> PolyA {
    let f = a.field();
    let coeffs = a
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
        .collect();
    PolyA::new(f.clone(), coeffs)
}

/// Distinct-degree irreducibility test. On a reducible input the error
/// carries the nontrivial gcd that exposed it.
pub fn check_irreducible(a: &PolyA) -> Result<()> {
    let Some(d) = a.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if d == 0 {
        return Err(Error::Reducible { poly: a.to_string(), factor: None });
    }
    let fq = a.field();
    let q = fq.order() as u64;
    let t = PolyA::t(fq);
    let mut frob = t.clone();
    for _ in 1..=d / 2 {
        frob = frob.powmod(q, a);
        let g = a.gcd(&frob.sub(&t));
        if g.degree() != Some(0) {
            return Err(Error::Reducible { poly: a.to_string(), factor: Some(g.to_string()) });
        }
    }
    Ok(())
}

/// True iff `a` is irreducible over `F_q`.
pub fn is_irreducible(a: &PolyA) -> Result<bool> {
    match check_irreducible(a) {
        Ok(()) => Ok(true),
        Err(Error::Reducible { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// All distinct roots of `a` in the extension `ext` of `F_q`, ordered by code.
pub fn roots_in_ext(a: &PolyA, ext: &Gf) -> Vec<Fe> {
    if a.is_zero() {
        return Vec::new();
    }
    ext.elements().filter(|&x| a.eval_ext(ext, x).is_zero()).collect()
}

/// Enumerates the monic polynomials of exact degree `d`.
pub fn monic_of_degree(fq: &Arc<Gf>, d: usize) -> impl Iterator<Item = PolyA> + '_ {
    let q = fq.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(fq.from_code((code % q) as u32));
            code /= q;
        }
        coeffs.push(Fe::ONE);
        PolyA::new(fq.clone(), coeffs)
    })
}

/// Enumerates all polynomials of degree `< d` (including zero).
pub fn polys_below(fq: &Arc<Gf>, d: usize) -> impl Iterator<Item = PolyA> + '_ {
    let q = fq.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(fq.from_code((code % q) as u32));
            code /= q;
        }
        PolyA::new(fq.clone(), coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Arc<Gf> {
        Arc::new(Gf::fq(q).unwrap())
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = f(3);
        assert!(is_irreducible(&PolyA::from_codes(&f3, &[0, 1]).unwrap()).unwrap());
        assert!(is_irreducible(&PolyA::from_codes(&f3, &[1, 0, 1]).unwrap()).unwrap());
        assert!(!is_irreducible(&PolyA::from_codes(&f3, &[1, 2, 1]).unwrap()).unwrap());
        assert!(matches!(is_irreducible(&PolyA::zero(&f3)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn reducible_witness_is_a_factor() {
        let f3 = f(3);
        let a = PolyA::from_codes(&f3, &[0, 1, 1]).unwrap();
        let Err(Error::Reducible { factor: Some(w), .. }) = check_irreducible(&a) else {
            panic!("expected a witness");
        };
        let w = PolyA::parse(&f3, &w).unwrap();
        assert!(a.rem(&w).is_zero());
        assert!(w.degree().unwrap() >= 1);
    }

    #[test]
    fn derivative_examples() {
        let f3 = f(3);
        let d = formal_derivative(&PolyA::from_codes(&f3, &[1, 0, 1]).unwrap());
        assert_eq!(d.codes(), vec![0, 2]);
        let d = formal_derivative(&PolyA::from_codes(&f3, &[0, 1, 0, 1]).unwrap());
        assert_eq!(d.codes(), vec![1]);
        for q in [2, 3, 4, 5] {
            let fq = f(q);
            let tq = PolyA::monomial(&fq, Fe::ONE, q as usize);
            assert!(formal_derivative(&tq).is_zero());
        }
    }

    #[test]
    fn roots_examples() {
        let f3 = f(3);
        let f9 = f3.extension(2);
        let a = PolyA::from_codes(&f3, &[1, 0, 1]).unwrap();
        let roots = roots_in_ext(&a, &f9);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(f9.code(f9.mul(*r, *r)), 2);
        }
        assert_eq!(f9.add(roots[0], roots[1]), Fe::ZERO);
        assert!(roots_in_ext(&a, &f3.extension(1)).is_empty());
        let t = PolyA::t(&f3);
        for m in 1..4 {
            assert_eq!(roots_in_ext(&t, &f3.extension(m)), vec![Fe::ZERO]);
        }
    }

    #[test]
    fn parse_round_trip() {
        let f4 = f(4);
        let a = PolyA::parse(&f4, "[1, 3,0,2]").unwrap();
        assert_eq!(a.to_string(), "[1,3,0,2]");
        assert!(PolyA::parse(&f4, "[4]").is_err());
        assert!(PolyA::parse(&f4, "1,2").is_err());
    }

    #[test]
    fn enumeration_counts() {
        let f3 = f(3);
        assert_eq!(monic_of_degree(&f3, 2).count(), 9);
        assert_eq!(polys_below(&f3, 2).count(), 9);
        assert!(monic_of_degree(&f3, 3).all(|a| a.is_monic() && a.degree() == Some(3)));
    }
}
