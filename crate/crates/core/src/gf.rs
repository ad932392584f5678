//! Arithmetic in a prime field GF(q) and its extension GF(q^m).
//!
//! Elements are dense coefficient vectors in the polynomial basis
//! `1, x, ..., x^(m-1)`, packed into a single integer as base-q digits with
//! the constant term least significant. The packed order is the canonical
//! element order: `0, 1, x, x+1, ...` for GF(4).
//!
//! The prime field is simply a [`Field`] with `m = 1`, so base-field
//! elements share the packed representation and embedding is the identity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 31;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// A field element in packed form. Only meaningful relative to a [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Position of the element in the canonical order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(index: u32) -> Elem {
        Elem(index)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldInner {
    q: u32,
    m: usize,
    modulus: Vec<u32>,
    order: u32,
}

/// GF(q^m) = GF(q)[x]/(modulus) with q prime.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

type Digits = [u32; MAX_DEGREE];

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(q).
fn poly_rem(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let sub = (lead as u64 * bc as u64 % q as u64) as u32;
                r[shift + i] = (r[shift + i] + q - sub) % q;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=m/2.
fn is_irreducible(modulus: &[u32], q: u32) -> bool {
    let m = modulus.len() - 1;
    for deg in 1..=m / 2 {
        let count = (q as u64).pow(deg as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut rest = idx;
            for _ in 0..deg {
                g.push((rest % q as u64) as u32);
                rest /= q as u64;
            }
            g.push(1);
            if poly_rem(modulus, &g, q).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(q^m) from an explicit modulus given constant term first.
    pub fn new(q: u32, m: usize, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!("degree {m} unsupported")));
        }
        let order = (q as u64)
            .checked_pow(m as u32)
            .filter(|&o| o <= i32::MAX as u64)
            .ok_or(Error::FieldTooLarge { q, m })? as u32;
        if modulus.len() != m + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidModulus(format!(
                "coefficient {c} not below {q}"
            )));
        }
        if modulus[m] != 1 {
            return Err(Error::InvalidModulus("not monic".into()));
        }
        if !is_irreducible(&modulus, q) {
            return Err(Error::InvalidModulus(format!(
                "{modulus:?} is reducible over GF({q})"
            )));
        }
        Ok(Field {
            inner: Arc::new(FieldInner {
                q,
                m,
                modulus,
                order,
            }),
        })
    }

    /// The prime field GF(q), modulus `x`.
    pub fn prime(q: u32) -> Result<Field> {
        Field::new(q, 1, vec![0, 1])
    }

    /// Pinned moduli: GF(4) x^2+x+1, GF(8) x^3+x+1, GF(9) x^2+1, GF(16) x^4+x+1.
    pub fn with_default_modulus(q: u32, m: usize) -> Result<Field> {
        let modulus = match (q, m) {
            (_, 1) => vec![0, 1],
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (3, 2) => vec![1, 0, 1],
            (2, 4) => vec![1, 1, 0, 0, 1],
            _ => return Err(Error::NoDefaultModulus { q, m }),
        };
        Field::new(q, m, modulus)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.q
    }

    pub fn degree(&self) -> usize {
        self.inner.m
    }

    /// Number of elements, q^m.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    /// GF(q) as a field of its own.
    pub fn base_field(&self) -> Field {
        if self.is_prime_field() {
            return self.clone();
        }
        Field::prime(self.inner.q).expect("characteristic is prime")
    }

    /// True when `self` is the prime subfield of `ext` (or equal to it).
    pub fn is_subfield_of(&self, ext: &Field) -> bool {
        self == ext || (self.is_prime_field() && self.inner.q == ext.inner.q)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.inner.order
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                value: a.0,
                order: self.inner.order,
            })
        }
    }

    fn unpack(&self, a: Elem) -> Digits {
        let mut d = [0u32; MAX_DEGREE];
        let q = self.inner.q;
        let mut rest = a.0;
        for slot in d.iter_mut().take(self.inner.m) {
            *slot = rest % q;
            rest /= q;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> Elem {
        let q = self.inner.q;
        let mut v = 0u32;
        for &c in d[..self.inner.m].iter().rev() {
            v = v * q + c;
        }
        Elem(v)
    }

    /// Coefficients `c_0, ..., c_{m-1}`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        self.unpack(a)[..self.inner.m].to_vec()
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, a: Elem, i: usize) -> u32 {
        (a.0 / (self.inner.q.pow(i as u32))) % self.inner.q
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.inner.m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.inner.m,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.inner.q) {
            return Err(Error::ElementOutOfRange {
                value: c,
                order: self.inner.q,
            });
        }
        Ok(self.pack(coeffs))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let q = self.inner.q;
        if q == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.inner.m {
            out += ((x % q + y % q) % q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let q = self.inner.q;
        if q == 2 {
            return a;
        }
        let mut d = self.unpack(a);
        for c in d.iter_mut().take(self.inner.m) {
            *c = (q - *c) % q;
        }
        self.pack(&d)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Schoolbook product followed by reduction modulo the monic modulus.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let q = self.inner.q as u64;
        let m = self.inner.m;
        if m == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % q) as u32);
        }
        let da = self.unpack(a);
        let db = self.unpack(b);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % q;
            }
        }
        let modulus = &self.inner.modulus;
        for top in (m..2 * m - 1).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            prod[top] = 0;
            // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
            for i in 0..m {
                let sub = lead * modulus[i] as u64 % q;
                prod[top - m + i] = (prod[top - m + i] + q - sub) % q;
            }
        }
        let mut d = [0u32; MAX_DEGREE];
        for i in 0..m {
            d[i] = prod[i] as u32;
        }
        self.pack(&d)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.inner.order as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Tr(a) = a + a^q + ... + a^(q^(m-1)), an element of GF(q).
    pub fn trace(&self, a: Elem) -> Elem {
        let q = self.inner.q as u64;
        let mut conj = a;
        let mut acc = a;
        for _ in 1..self.inner.m {
            conj = self.pow(conj, q);
            acc = self.add(acc, conj);
        }
        debug_assert!(self.is_in_base(acc));
        acc
    }

    /// Scales every coefficient of `a` by the base-field scalar `s`.
    pub fn base_scalar_mul(&self, a: Elem, s: Elem) -> Elem {
        let q = self.inner.q;
        debug_assert!(s.0 < q);
        match s.0 {
            0 => return Elem::ZERO,
            1 => return a,
            _ => {}
        }
        let mut d = self.unpack(a);
        for c in d.iter_mut().take(self.inner.m) {
            *c = (*c * s.0) % q;
        }
        self.pack(&d)
    }

    /// Inclusion GF(q) -> GF(q^m).
    pub fn embed(&self, s: Elem) -> Elem {
        debug_assert!(s.0 < self.inner.q);
        s
    }

    pub fn is_in_base(&self, a: Elem) -> bool {
        a.0 < self.inner.q
    }

    /// All q^m elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.inner.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.inner.order).map(Elem)
    }

    /// The basis element `x^i`.
    pub fn basis_element(&self, i: usize) -> Elem {
        Elem(self.inner.q.pow(i as u32))
    }

    /// Little-endian digit string, e.g. `x^2 + 1` in GF(8) is `"101"`.
    pub fn format(&self, a: Elem) -> String {
        let d = self.unpack(a);
        d[..self.inner.m]
            .iter()
            .map(|&c| DIGITS[c as usize] as char)
            .collect()
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let bad = || Error::ParseElement(s.to_string());
        if s.chars().count() != self.inner.m {
            return Err(bad());
        }
        let mut d = [0u32; MAX_DEGREE];
        for (slot, ch) in d.iter_mut().zip(s.chars()) {
            let v = ch.to_digit(36).ok_or_else(bad)?;
            if v >= self.inner.q {
                return Err(bad());
            }
            *slot = v;
        }
        Ok(self.pack(&d))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.q == other.inner.q && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            return write!(f, "GF({})", self.inner.q);
        }
        write!(f, "GF({}^{})[x]/(", self.inner.q, self.inner.m)?;
        let mut first = true;
        for (i, &c) in self.inner.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        write!(f, ")")
    }
}
