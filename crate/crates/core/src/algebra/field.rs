//! Table-driven finite fields.
//!
//! A [`Gf`] is built as a simple extension `B[y]/(M(y))` of a smaller field `B`
//! (the prime field, or a previously built `Gf`). Elements have two
//! encodings:
//!
//! * the *code*: the coefficient vector of the polynomial representative,
//!   packed base-`|B|` with the constant coefficient least significant. Since
//!   the codes of `B` are themselves packed base-`p`, a code is always a
//!   base-`p` digit string, and a code `c < |B|` is the embedded element `c`
//!   of `B`;
//! * the *log* (the [`Fe`] value): the discrete logarithm with respect to a
//!   fixed generator of the multiplicative group, with a sentinel for zero.
//!
//! Arithmetic runs on logs with Zech's logarithm for addition, so every field
//! operation is a couple of table lookups.

use std::fmt;

const ZERO_RAW: u32 = u32::MAX;

/// A field element in log representation. Only meaningful together with the
/// [`Gf`] that produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(ZERO_RAW);
    pub const ONE: Fe = Fe(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == ZERO_RAW
    }

    /// Discrete log with respect to the field generator; `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "Fe(0)")
        } else {
            write!(f, "Fe(g^{})", self.0)
        }
    }
}

/// Code-level arithmetic of a field used as the coefficient field while a
/// [`Gf`] is being constructed.
pub(crate) trait CodeArith {
    fn size(&self) -> u32;
    fn add_code(&self, a: u32, b: u32) -> u32;
    fn mul_code(&self, a: u32, b: u32) -> u32;
    fn neg_code(&self, a: u32) -> u32;
}

/// The prime field `F_p` on plain residues.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeArith(pub u32);

impl CodeArith for PrimeArith {
    fn size(&self) -> u32 {
        self.0
    }
    fn add_code(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn mul_code(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn neg_code(&self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }
}

impl CodeArith for Gf {
    fn size(&self) -> u32 {
        self.order
    }
    fn add_code(&self, a: u32, b: u32) -> u32 {
        self.code(self.add(self.from_code(a), self.from_code(b)))
    }
    fn mul_code(&self, a: u32, b: u32) -> u32 {
        self.code(self.mul(self.from_code(a), self.from_code(b)))
    }
    fn neg_code(&self, a: u32) -> u32 {
        self.code(self.neg(self.from_code(a)))
    }
}

/// A finite field with precomputed exp/log/Zech tables.
#[derive(Clone)]
pub struct Gf {
    p: u32,
    base_size: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    half: u32,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf")
            .field("p", &self.p)
            .field("base_size", &self.base_size)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.base_size == other.base_size
            && self.modulus == other.modulus
            && self.generator == other.generator
    }
}

impl Eq for Gf {}

/// Decomposes `q` as `p^k`; `None` unless `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits_of(mut code: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % base);
        code /= base;
    }
    out
}

fn code_of(digits: &[u32], base: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// `a * b mod modulus` on digit vectors (modulus monic of length `m + 1`).
fn mulmod<B: CodeArith + ?Sized>(base: &B, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = base.add_code(prod[i + j], base.mul_code(x, y));
            }
        }
    }
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for k in 0..m {
            if modulus[k] != 0 {
                let sub = base.mul_code(c, modulus[k]);
                prod[top - m + k] = base.add_code(prod[top - m + k], base.neg_code(sub));
            }
        }
    }
    prod.truncate(m);
    prod
}

/// Powers of `g` until they return to one. Returns the power table when `g`
/// generates the full multiplicative group.
fn cyclic_table<B: CodeArith + ?Sized>(base: &B, g: &[u32], modulus: &[u32]) -> Option<Vec<u32>> {
    let m = modulus.len() - 1;
    let bs = base.size();
    let order = bs.checked_pow(m as u32)?;
    let mut one = vec![0u32; m];
    one[0] = 1;
    let mut table = Vec::with_capacity(order as usize - 1);
    let mut cur = one.clone();
    for _ in 0..order - 1 {
        let code = code_of(&cur, bs);
        if code == 0 || (code == 1 && !table.is_empty()) {
            return None;
        }
        table.push(code);
        cur = mulmod(base, &cur, g, modulus);
    }
    (cur == one).then_some(table)
}

impl Gf {
    fn from_table<B: CodeArith + ?Sized>(
        base: &B,
        p: u32,
        modulus: Vec<u32>,
        exp: Vec<u32>,
    ) -> Gf {
        let base_size = base.size();
        let degree = (modulus.len() - 1) as u32;
        let order = exp.len() as u32 + 1;
        let mut log = vec![ZERO_RAW; order as usize];
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }
        // 1 + g^n only touches the constant digit.
        let zech = exp
            .iter()
            .map(|&c| {
                let d0 = c % base_size;
                let new = c - d0 + base.add_code(d0, 1);
                log[new as usize]
            })
            .collect();
        let half = if p == 2 { 0 } else { (order - 1) / 2 };
        Gf {
            p,
            base_size,
            degree,
            order,
            generator: exp.get(1).copied().unwrap_or(1),
            modulus,
            exp,
            log,
            zech,
            half,
        }
    }

    /// The least primitive monic modulus of degree `m` over `base`, encoded
    /// by its lower coefficients as a base-`|B|` integer.
    fn least_primitive<B: CodeArith + ?Sized>(base: &B, p: u32, m: u32) -> Gf {
        let bs = base.size();
        let count = bs.pow(m);
        for low in 0..count {
            let mut modulus = digits_of(low, bs, m as usize);
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            // class of y modulo M
            let y = if m >= 2 {
                let mut y = vec![0u32; m as usize];
                y[1] = 1;
                y
            } else {
                vec![base.neg_code(modulus[0])]
            };
            if let Some(exp) = cyclic_table(base, &y, &modulus) {
                return Gf::from_table(base, p, modulus, exp);
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Gf {
        assert!(prime_power(p) == Some((p, 1)), "{p} is not prime");
        Gf::least_primitive(&PrimeArith(p), p, 1)
    }

    /// `F_q` for a prime power `q`, as an extension of its prime field.
    pub fn fq(q: u32) -> Option<Gf> {
        let (p, k) = prime_power(q)?;
        Some(Gf::least_primitive(&PrimeArith(p), p, k))
    }

    /// Degree-`m` extension of `self` with the lexicographically least
    /// primitive modulus. Codes of `self` embed as codes `< |self|`.
    pub fn extension(&self, m: u32) -> Gf {
        assert!(m >= 1);
        Gf::least_primitive(self, self.p, m)
    }

    /// `self[y]/(modulus)` for a monic modulus given by its coefficient codes
    /// (constant term first). The generator is the least code of full order.
    /// Returns `None` when the quotient is not a field.
    pub fn quotient(&self, modulus: &[u32]) -> Option<Gf> {
        let m = modulus.len().checked_sub(1)?;
        if m == 0 || *modulus.last()? != 1 {
            return None;
        }
        let order = self.order.checked_pow(m as u32)?;
        for g in 1..order {
            let digits = digits_of(g, self.order, m);
            if let Some(exp) = cyclic_table(self, &digits, modulus) {
                return Some(Gf::from_table(self, self.p, modulus.to_vec(), exp));
            }
        }
        None
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Size of the subfield whose digits make up a code.
    pub fn base_size(&self) -> u32 {
        self.base_size
    }

    /// Degree over the base subfield.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus coefficients (codes over the base), constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Code of the multiplicative generator.
    pub fn generator_code(&self) -> u32 {
        self.generator
    }

    pub fn generator(&self) -> Fe {
        if self.order == 2 {
            Fe::ONE
        } else {
            Fe(1)
        }
    }

    #[inline]
    pub fn from_code(&self, code: u32) -> Fe {
        Fe(self.log[code as usize])
    }

    #[inline]
    pub fn code(&self, x: Fe) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.exp[x.0 as usize]
        }
    }

    /// Coefficients over the base subfield, constant term first.
    pub fn digits(&self, x: Fe) -> Vec<u32> {
        digits_of(self.code(x), self.base_size, self.degree as usize)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        self.from_code(code_of(digits, self.base_size))
    }

    /// Embeds the integer `n` via the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        self.from_code(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.order - 1;
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + n - a.0 };
        let z = self.zech[d as usize];
        if z == ZERO_RAW {
            Fe::ZERO
        } else {
            let s = a.0 + z;
            Fe(if s >= n { s - n } else { s })
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.is_zero() || self.half == 0 {
            a
        } else {
            let s = a.0 + self.half;
            let n = self.order - 1;
            Fe(if s >= n { s - n } else { s })
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let s = a.0 + b.0;
        let n = self.order - 1;
        Fe(if s >= n { s - n } else { s })
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            None
        } else if a.0 == 0 {
            Some(a)
        } else {
            Some(Fe(self.order - 1 - a.0))
        }
    }

    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let n = (self.order - 1) as u64;
        Fe(((a.0 as u64 * (k % n)) % n) as u32)
    }

    /// `a^(|B|^i)`: the `i`-th power of the Frobenius of the base subfield.
    #[inline]
    pub fn frobenius(&self, a: Fe, i: u32) -> Fe {
        if a.is_zero() || i == 0 {
            return a;
        }
        let n = (self.order - 1) as u64;
        let mut e = a.0 as u64;
        for _ in 0..i % self.degree.max(1) {
            e = e * self.base_size as u64 % n;
        }
        Fe(e as u32)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Option<u32> {
        let l = a.log()?;
        let n = self.order - 1;
        Some(n / gcd(n, l))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order).map(|c| self.from_code(c))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
