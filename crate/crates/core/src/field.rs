//! Finite fields GF(p) and GF(p^e).
//!
//! Elements are polynomials over GF(p) of degree < e reduced modulo a monic
//! irreducible polynomial. The dense linear algebra layer works with the
//! integer encoding `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of an element
//! ([`Scalar`]); for proper extensions the field precomputes addition and
//! multiplication tables from the polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Integer encoding of a field element, see the module docs.
pub type Scalar = u16;

/// Largest field order for which extension-field tables are built.
pub const MAX_EXTENSION_ORDER: u32 = 4096;

/// Conway polynomials for the small fields in everyday use, low degree first.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
];

/// A field element as little-endian polynomial coefficients over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coeffs: Vec<u32>,
}

struct Tables {
    add: Vec<Scalar>,
    mul: Vec<Scalar>,
    neg: Vec<Scalar>,
    inv: Vec<Scalar>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, length `e + 1`; empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A validated finite field descriptor. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            let cs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "GF({}^{}; {})", self.inner.p, self.inner.e, cs.join(","))
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in modulus for GF(p^e), if one is tabulated.
pub fn builtin_modulus(p: u32, e: u32) -> Option<&'static [u32]> {
    BUILTIN_MODULI
        .iter()
        .find(|(bp, be, _)| *bp == p && *be == e)
        .map(|(_, _, m)| *m)
}

/// Construct GF(p^e). For `e > 1` without an explicit modulus the built-in
/// table is consulted.
pub fn make_field(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > u64::from(u16::MAX) {
        return Err(Error::FieldTooLarge { p: p.min(u64::from(u32::MAX)) as u32, e });
    }
    let p = p as u32;
    if e == 0 {
        return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
    }
    if e == 1 {
        if let Some(m) = modulus {
            if m.len() != 2 || m[1] != 1 || m[0] >= p {
                return Err(Error::InvalidModulus(format!(
                    "expected a monic linear polynomial over GF({p})"
                )));
            }
        }
        return Ok(FiniteField {
            inner: Arc::new(Inner { p, e: 1, q: p, modulus: Vec::new(), tables: None }),
        });
    }
    let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if q > u64::from(MAX_EXTENSION_ORDER) {
        return Err(Error::FieldTooLarge { p, e });
    }
    let q = q as u32;
    let modulus: Vec<u32> = match modulus {
        Some(m) => m.to_vec(),
        None => builtin_modulus(p, e).ok_or(Error::NoBuiltinModulus { p, e })?.to_vec(),
    };
    if modulus.len() != e as usize + 1 {
        return Err(Error::InvalidModulus(format!(
            "expected {} coefficients, got {}",
            e + 1,
            modulus.len()
        )));
    }
    if modulus[e as usize] != 1 {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
    }
    if !modulus_is_irreducible(p, &modulus) {
        return Err(Error::ReducibleModulus { p });
    }
    let mut inner = Inner { p, e, q, modulus, tables: None };
    inner.tables = Some(build_tables(&inner));
    Ok(FiniteField { inner: Arc::new(inner) })
}

/// Parse `GF(p)` or `GF(p^e; c0,c1,...,ce)`. `GF(p^e)` uses the built-in modulus.
pub fn parse_field(text: &str) -> Result<FiniteField> {
    let t = text.trim();
    let body = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("field literal `{t}` must look like GF(p) or GF(p^e; c0,...,ce)")))?;
    let (head, coeffs) = match body.split_once(';') {
        Some((h, c)) => (h.trim(), Some(c)),
        None => (body.trim(), None),
    };
    let num = |s: &str| -> Result<u64> {
        s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad integer `{}` in field literal", s.trim())))
    };
    let (p, e) = match head.split_once('^') {
        Some((p, e)) => (num(p)?, num(e)? as u32),
        None => (num(head)?, 1),
    };
    let modulus = match coeffs {
        Some(c) => Some(c.split(',').map(|x| num(x).map(|v| v as u32)).collect::<Result<Vec<u32>>>()?),
        None => None,
    };
    make_field(p, e, modulus.as_deref())
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over GF(p) on plain coefficient vectors. This is the
// reference arithmetic for extension fields; tables are derived from it.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % u64::from(p);
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    trim(&mut v);
    v
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn prem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (u64::from(lead) * u64::from(c)) % u64::from(p);
            r[shift + i] = ((u64::from(r[shift + i]) + u64::from(p) - sub) % u64::from(p)) as u32;
        }
        trim(&mut r);
    }
    r
}

fn psub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut v: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut v);
    v
}

fn pgcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(b[b.len() - 1], p);
        let monic: Vec<u32> = b.iter().map(|&c| ((u64::from(c) * u64::from(inv)) % u64::from(p)) as u32).collect();
        let r = prem(p, &a, &monic);
        a = monic;
        b = r;
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut k: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (u64::from(a) % u64::from(p), 1u64);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        k >>= 1;
    }
    acc as u32
}

/// `X^(p^k) mod m`, by repeated p-th powering.
fn frobenius_power_of_x(p: u32, k: u32, m: &[u32]) -> Vec<u32> {
    let mut x = prem(p, &[0, 1], m);
    for _ in 0..k {
        // x <- x^p mod m
        let mut acc = vec![1u32];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = prem(p, &pmul(p, &acc, &base), m);
            }
            base = prem(p, &pmul(p, &base, &base), m);
            e >>= 1;
        }
        x = acc;
    }
    x
}

/// Irreducibility of a monic polynomial over GF(p).
///
/// Degree <= 3: irreducible iff rootless. In general (Rabin): `m` divides
/// `X^(p^e) - X` and shares no factor with `X^(p^d) - X` for each maximal
/// proper divisor `d` of `e`.
pub(crate) fn modulus_is_irreducible(p: u32, m: &[u32]) -> bool {
    let e = (m.len() - 1) as u32;
    let eval = |x: u32| {
        m.iter().rev().fold(0u64, |acc, &c| (acc * u64::from(x) + u64::from(c)) % u64::from(p))
    };
    let rootless = (0..p).all(|x| eval(x) != 0);
    if !rootless {
        return false;
    }
    let xq = frobenius_power_of_x(p, e, m);
    if !psub(p, &xq, &[0, 1]).is_empty() {
        return false;
    }
    for r in 2..=e {
        if e.is_multiple_of(r) && is_prime(u64::from(r)) {
            let xd = frobenius_power_of_x(p, e / r, m);
            let g = pgcd(p, m, &psub(p, &xd, &[0, 1]));
            if g.len() > 1 {
                return false;
            }
        }
    }
    true
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as usize;
    let decode = |c: usize| -> Vec<u32> {
        let mut v = Vec::with_capacity(inner.e as usize);
        let mut c = c as u32;
        for _ in 0..inner.e {
            v.push(c % inner.p);
            c /= inner.p;
        }
        v
    };
    let encode = |v: &[u32]| -> Scalar {
        v.iter().rev().fold(0u32, |acc, &c| acc * inner.p + c) as Scalar
    };
    let polys: Vec<Vec<u32>> = (0..q).map(decode).collect();
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in a..q {
            let s: Vec<u32> = (0..inner.e as usize).map(|i| (polys[a][i] + polys[b][i]) % inner.p).collect();
            let sc = encode(&s);
            add[a * q + b] = sc;
            add[b * q + a] = sc;
            let mut pr = prem(inner.p, &pmul(inner.p, &polys[a], &polys[b]), &inner.modulus);
            pr.resize(inner.e as usize, 0);
            let pc = encode(&pr);
            mul[a * q + b] = pc;
            mul[b * q + a] = pc;
        }
    }
    let mut neg = vec![0; q];
    let mut inv = vec![0; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as Scalar;
            }
            if mul[a * q + b] == 1 {
                inv[a] = b as Scalar;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

/// How the linear algebra kernels should do arithmetic.
pub(crate) enum Arith<'a> {
    Prime(u32),
    Table { q: usize, add: &'a [Scalar], mul: &'a [Scalar] },
}

impl FiniteField {
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        if self.inner.e == 1 {
            None
        } else {
            Some(&self.inner.modulus)
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    pub(crate) fn arith(&self) -> Arith<'_> {
        match &self.inner.tables {
            None => Arith::Prime(self.inner.p),
            Some(t) => Arith::Table { q: self.inner.q as usize, add: &t.add, mul: &t.mul },
        }
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        match &self.inner.tables {
            None => ((u32::from(a) + u32::from(b)) % self.inner.p) as Scalar,
            Some(t) => t.add[a as usize * self.inner.q as usize + b as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        match &self.inner.tables {
            None => {
                if a == 0 {
                    0
                } else {
                    (self.inner.p - u32::from(a)) as Scalar
                }
            }
            Some(t) => t.neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match &self.inner.tables {
            None => ((u32::from(a) * u32::from(b)) % self.inner.p) as Scalar,
            Some(t) => t.mul[a as usize * self.inner.q as usize + b as usize],
        }
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.tables {
            None => inv_mod(u32::from(a), self.inner.p) as Scalar,
            Some(t) => t.inv[a as usize],
        })
    }

    pub fn pow(&self, a: Scalar, mut k: u64) -> Scalar {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Scalar {
        n.rem_euclid(i64::from(self.inner.p)) as Scalar
    }

    /// All elements in encoding order (0 first, 1 second).
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        0..self.inner.q as Scalar
    }

    pub fn element(&self, code: Scalar) -> FieldElement {
        let mut coeffs = Vec::with_capacity(self.inner.e as usize);
        let mut c = u32::from(code);
        for _ in 0..self.inner.e {
            coeffs.push(c % self.inner.p);
            c /= self.inner.p;
        }
        FieldElement { coeffs }
    }

    pub fn code(&self, x: &FieldElement) -> Result<Scalar> {
        if x.coeffs.len() != self.inner.e as usize || x.coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(x.coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.inner.p + c) as Scalar)
    }

    // Polynomial-representation arithmetic on FieldElement values.

    pub fn add_elements(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect() }
    }

    pub fn neg_element(&self, a: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        FieldElement { coeffs: a.coeffs.iter().map(|x| (p - x) % p).collect() }
    }

    pub fn sub_elements(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add_elements(a, &self.neg_element(b))
    }

    pub fn mul_elements(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        let e = self.inner.e as usize;
        let mut prod = pmul(p, &a.coeffs, &b.coeffs);
        if e > 1 {
            prod = prem(p, &prod, &self.inner.modulus);
        }
        prod.resize(e, 0);
        FieldElement { coeffs: prod }
    }

    pub fn inv_element(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) by square-and-multiply in the polynomial representation.
        let mut k = u64::from(self.inner.q) - 2;
        let mut base = a.clone();
        let mut acc = self.element(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_elements(&acc, &base);
            }
            base = self.mul_elements(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Render an element: integers for prime fields, `[c0,c1,...]` otherwise.
    pub fn format(&self, a: Scalar) -> String {
        if self.is_prime_field() {
            a.to_string()
        } else {
            let cs: Vec<String> = self.element(a).coeffs.iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
    }
}
