//! Primes of `A = F_q[t]` and their residue fields.

use std::sync::Arc;

use super::field::{Fe, Gf};
use super::poly::{check_irreducible, PolyA};
use crate::error::{Error, Result};

/// A monic irreducible `p(t)` together with the residue field `A/p`.
///
/// Residues are elements of [`PrimeData::field`]; their codes are the
/// coordinates in the power basis `1, t̄, …, t̄^(d-1)` (base-`q` digits). The
/// field's log table is the discrete logarithm with respect to
/// [`PrimeData::unit_group_gen`].
#[derive(Clone, Debug)]
pub struct PrimeData {
    poly: PolyA,
    field: Arc<Gf>,
}

impl PartialEq for PrimeData {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

/// Validates `p` and builds its residue field with generator and dlog table.
pub fn residue_field(p: &PolyA) -> Result<PrimeData> {
    PrimeData::new(p)
}

impl PrimeData {
    pub fn new(p: &PolyA) -> Result<PrimeData> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_monic() {
            return Err(Error::Invalid(format!("prime {p} is not monic")));
        }
        check_irreducible(p)?;
        let field = p
            .field()
            .quotient(&p.codes())
            .ok_or_else(|| Error::Internal(format!("no generator found for F_q[t]/{p}")))?;
        Ok(PrimeData { poly: p.clone(), field: Arc::new(field) })
    }

    pub fn poly(&self) -> &PolyA {
        &self.poly
    }

    /// `d_p = deg p`.
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    /// `F_q`.
    pub fn fq(&self) -> &Arc<Gf> {
        self.poly.field()
    }

    /// The residue field `A/p`.
    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    /// Number of residues, `q^(d_p)`.
    pub fn size(&self) -> u32 {
        self.field.order()
    }

    pub fn unit_group_gen(&self) -> Fe {
        self.field.generator()
    }

    /// Exponent `k` with `gen^k = x`; `None` for zero.
    pub fn dlog(&self, x: Fe) -> Option<u32> {
        x.log()
    }

    pub fn reduce(&self, a: &PolyA) -> Fe {
        let r = a.rem(&self.poly);
        let mut digits = r.codes();
        digits.resize(self.degree(), 0);
        self.field.from_digits(&digits)
    }

    /// The representative of degree `< d_p`.
    pub fn lift(&self, x: Fe) -> PolyA {
        let digits = self.field.digits(x);
        PolyA::from_codes(self.fq(), &digits).expect("digits are F_q codes")
    }

    /// The class of `t`.
    pub fn t_bar(&self) -> Fe {
        self.reduce(&PolyA::t(self.fq()))
    }

    /// Power-basis coordinates (codes in `F_q`) of a residue.
    pub fn coords(&self, x: Fe) -> Vec<u32> {
        self.field.digits(x)
    }

    /// All residues in code order (zero first).
    pub fn residues(&self) -> impl Iterator<Item = Fe> + '_ {
        self.field.elements()
    }

    pub fn units(&self) -> impl Iterator<Item = Fe> + '_ {
        self.field.elements().skip(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<Gf> {
        Arc::new(Gf::fq(3).unwrap())
    }

    #[test]
    fn quadratic_prime() {
        let f = f3();
        let p = residue_field(&PolyA::from_codes(&f, &[1, 0, 1]).unwrap()).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.units().count(), 8);
        assert_eq!(p.field().element_order(p.unit_group_gen()), Some(8));
    }

    #[test]
    fn linear_prime() {
        let f = f3();
        let p = residue_field(&PolyA::t(&f)).unwrap();
        assert_eq!(p.degree(), 1);
        let units: Vec<u32> = p.units().map(|x| p.field().code(x)).collect();
        assert_eq!(units, vec![1, 2]);
    }

    #[test]
    fn reducible_prime_rejected() {
        let f = f3();
        let err = residue_field(&PolyA::from_codes(&f, &[0, 1, 1]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Reducible { .. }));
        assert!(err.to_string().contains("reducible"));
    }

    #[test]
    fn dlog_is_consistent() {
        for (q, codes) in [(2u32, vec![1u32, 1, 0, 1]), (3, vec![1, 0, 1]), (3, vec![2, 2, 0, 1]), (4, vec![2, 1, 1])] {
            let f = Arc::new(Gf::fq(q).unwrap());
            let p = residue_field(&PolyA::from_codes(&f, &codes).unwrap()).unwrap();
            let g = p.unit_group_gen();
            for x in p.units() {
                let k = p.dlog(x).unwrap();
                assert_eq!(p.field().pow(g, k as u64), x);
            }
        }
    }

    #[test]
    fn reduce_and_lift() {
        let f = f3();
        let p = residue_field(&PolyA::from_codes(&f, &[1, 0, 1]).unwrap()).unwrap();
        let t2 = PolyA::monomial(&f, Fe::ONE, 2);
        assert_eq!(p.coords(p.reduce(&t2)), vec![2, 0]);
        assert_eq!(p.coords(p.t_bar()), vec![0, 1]);
        for x in p.residues() {
            assert_eq!(p.reduce(&p.lift(x)), x);
        }
    }
}
