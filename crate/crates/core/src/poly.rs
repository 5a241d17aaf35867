//! Univariate polynomials over a finite field and the factorisation needed by
//! the MeatAxe: square-free decomposition, distinct-degree splitting and
//! Cantor-Zassenhaus equal-degree splitting.

use rand::Rng;

use crate::field::{FiniteField, Scalar};

/// Little-endian coefficients, no trailing zeros. The zero polynomial is empty.
pub type Poly = Vec<Scalar>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn add(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n).map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect();
    trim(&mut out);
    out
}

pub fn sub(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n).map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect();
    trim(&mut out);
    out
}

pub fn mul(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = f.mul(r[r.len() - 1], lead_inv);
        q[shift] = c;
        for (i, &y) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FiniteField, a: &[Scalar]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("nonzero");
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Poly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative(f: &FiniteField, a: &[Scalar]) -> Poly {
    let mut out: Poly = a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect();
    trim(&mut out);
    out
}

/// `base^k mod m`.
pub fn powmod(f: &FiniteField, base: &[Scalar], mut k: u64, m: &[Scalar]) -> Poly {
    let mut acc: Poly = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while k > 0 {
        if k & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        k >>= 1;
    }
    acc
}

pub fn is_one(a: &[Scalar]) -> bool {
    a.len() == 1 && a[0] == 1
}

/// Evaluate at a field element.
pub fn eval(f: &FiniteField, a: &[Scalar], x: Scalar) -> Scalar {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `g` with `g(X)^p = a(X)`; `a` must be a polynomial in `X^p`.
fn pth_root(f: &FiniteField, a: &[Scalar]) -> Poly {
    let p = f.characteristic() as usize;
    // In GF(p^e) the p-th root of c is c^(p^(e-1)).
    let root_exp = u64::from(f.characteristic()).pow(f.degree() - 1);
    let mut out: Poly = a.iter().step_by(p).map(|&c| f.pow(c, root_exp)).collect();
    trim(&mut out);
    out
}

/// Square-free factors (without multiplicities) whose product is the radical of `a`.
fn squarefree_parts(f: &FiniteField, a: &[Scalar], out: &mut Vec<Poly>) {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return;
    }
    let d = derivative(f, &a);
    if d.is_empty() {
        squarefree_parts(f, &pth_root(f, &a), out);
        return;
    }
    let mut c = gcd(f, &a, &d);
    let mut w = divrem(f, &a, &c).0;
    while !is_one(&w) {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if degree(&fac).unwrap_or(0) > 0 {
            out.push(monic(f, &fac));
        }
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        squarefree_parts(f, &pth_root(f, &c), out);
    }
}

/// Distinct-degree splitting of a square-free monic polynomial. Factors of
/// degree above `max_degree` are dropped.
fn distinct_degree(f: &FiniteField, g: &[Scalar], max_degree: usize) -> Vec<(Poly, usize)> {
    let q = u64::from(f.order());
    let mut out = Vec::new();
    let mut g = g.to_vec();
    let x: Poly = vec![0, 1];
    let mut h = rem(f, &x, &g);
    let mut d = 0;
    while let Some(dg) = degree(&g) {
        if dg == 0 {
            break;
        }
        d += 1;
        if 2 * d > dg {
            if dg <= max_degree {
                out.push((g.clone(), dg));
            }
            break;
        }
        if d > max_degree {
            break;
        }
        h = powmod(f, &h, q, &g);
        let fac = gcd(f, &g, &sub(f, &h, &x));
        if !is_one(&fac) {
            g = divrem(f, &g, &fac).0;
            h = rem(f, &h, &g);
            out.push((fac, d));
        }
    }
    out
}

/// Split a product of distinct irreducibles of degree `d` (Cantor-Zassenhaus).
fn equal_degree<R: Rng>(f: &FiniteField, g: &[Scalar], d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let n = degree(g).unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(monic(f, g));
        return;
    }
    let q = u64::from(f.order());
    loop {
        let a: Poly = {
            let mut v: Poly = (0..n).map(|_| rng.gen_range(0..f.order()) as Scalar).collect();
            trim(&mut v);
            v
        };
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // absolute trace a + a^2 + ... + a^(2^(e d - 1))
            let mut cur = a.clone();
            let mut t = a.clone();
            for _ in 1..(f.degree() as usize * d) {
                cur = rem(f, &mul(f, &cur, &cur), g);
                t = add(f, &t, &cur);
            }
            t
        } else {
            // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
            let mut cur = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                cur = powmod(f, &cur, q, g);
                norm = rem(f, &mul(f, &norm, &cur), g);
            }
            sub(f, &powmod(f, &norm, (q - 1) / 2, g), &[1])
        };
        let h = gcd(f, g, &b);
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            equal_degree(f, &h, d, rng, out);
            equal_degree(f, &divrem(f, g, &h).0, d, rng, out);
            return;
        }
    }
}

/// Distinct monic irreducible factors of `a` of degree at most `max_degree`,
/// sorted by degree then coefficients.
pub fn irreducible_factors<R: Rng>(f: &FiniteField, a: &[Scalar], max_degree: usize, rng: &mut R) -> Vec<Poly> {
    let mut parts = Vec::new();
    squarefree_parts(f, a, &mut parts);
    let mut out = Vec::new();
    for part in parts {
        for (g, d) in distinct_degree(f, &part, max_degree) {
            equal_degree(f, &g, d, rng, &mut out);
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().rev().cmp(y.iter().rev())));
    out.dedup();
    out
}
