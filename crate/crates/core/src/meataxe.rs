//! The MeatAxe: splitting modules by kernels of random algebra elements
//! (with Norton's dual test for irreducibility) and chopping a module into
//! composition factors.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};
use crate::linalg::{axpy, Echelon, Matrix};
use crate::modules::{hom_space, spin, Module};
use crate::poly::{self, Poly};

/// Random elements tried before giving up on a module.
pub const MAX_ATTEMPTS: usize = 200;

/// Beyond this dimension only low-degree factors of the characteristic
/// polynomial are used.
const FULL_FACTOR_DIM: usize = 64;
const LARGE_FACTOR_DEGREE: usize = 12;
const POOL_EXTRA: usize = 6;

/// Random elements of the algebra generated by a module's action matrices:
/// random combinations of a pool seeded by the generators and grown by products.
struct RandomElements {
    pool: Vec<Matrix>,
    base: usize,
}

impl RandomElements {
    fn new(gens: &[Matrix]) -> Self {
        RandomElements { pool: gens.to_vec(), base: gens.len() }
    }

    fn next<R: Rng>(&mut self, field: &FiniteField, n: usize, rng: &mut R) -> Matrix {
        if !self.pool.is_empty() {
            let i = rng.gen_range(0..self.pool.len());
            let j = rng.gen_range(0..self.pool.len());
            let prod = self.pool[i].mul(&self.pool[j]).expect("square matrices");
            if self.pool.len() < self.base + POOL_EXTRA {
                self.pool.push(prod);
            } else {
                let slot = self.base + rng.gen_range(0..POOL_EXTRA);
                self.pool[slot] = prod;
            }
        }
        let q = field.order();
        let mut theta = Matrix::zero(field, n, n);
        for m in &self.pool {
            let c = rng.gen_range(0..q) as Scalar;
            if c != 0 {
                theta.add_scaled(c, m);
            }
        }
        theta
    }
}

/// Characteristic polynomial by a cyclic (Krylov) decomposition.
pub fn charpoly(theta: &Matrix) -> Poly {
    let f = theta.field().clone();
    let n = theta.rows();
    let mut ech = Echelon::new(&f, n);
    let mut result: Poly = vec![1];
    let mut e = vec![0; n];
    for start in 0..n {
        if ech.rank() == n {
            break;
        }
        e[start] = 1;
        let fresh = !ech.contains(&e);
        if !fresh {
            e[start] = 0;
            continue;
        }
        // coefficient vectors (in powers of theta) of the rows added for this piece
        let first_row = ech.rank();
        let mut coeffs: Vec<Vec<Scalar>> = Vec::new();
        let mut current = e.clone();
        e[start] = 0;
        let mut k = 0;
        loop {
            let mut w = current.clone();
            let mut t = vec![0; k + 1];
            t[k] = 1;
            for (i, (row, piv)) in ech.rows().iter().zip(pivots_of(&ech)).enumerate() {
                let x = w[piv];
                if x != 0 {
                    let nx = f.neg(x);
                    axpy(&f, &mut w, nx, row);
                    if i >= first_row {
                        axpy(&f, &mut t[..coeffs[i - first_row].len()], nx, &coeffs[i - first_row]);
                    }
                }
            }
            if w.iter().all(|&x| x == 0) {
                result = poly::mul(&f, &result, &t);
                break;
            }
            let p = w.iter().position(|&x| x != 0).unwrap();
            let inv = f.inv(w[p]).unwrap();
            let t: Vec<Scalar> = t.iter().map(|&c| f.mul(c, inv)).collect();
            ech.push_reduced(w);
            coeffs.push(t);
            current = theta.vec_mul(&current);
            k += 1;
        }
    }
    result
}

fn pivots_of(ech: &Echelon) -> impl Iterator<Item = usize> + '_ {
    ech.rows().iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
}

/// `f(theta)` by Horner's rule.
fn eval_matrix(f: &FiniteField, p: &[Scalar], theta: &Matrix) -> Matrix {
    let n = theta.rows();
    let mut acc = Matrix::zero(f, n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(theta).expect("square");
        for i in 0..n {
            let x = acc.get(i, i);
            acc.set(i, i, f.add(x, c));
        }
    }
    acc
}

/// Outcome of one splitting attempt.
#[derive(Clone, Debug)]
pub enum Split {
    Irreducible,
    /// Reduced echelon basis of a proper nonzero submodule.
    Reducible(Matrix),
}

/// Find a proper submodule of `m` or prove it irreducible.
pub fn split<R: Rng>(m: &Module, rng: &mut R) -> Result<Split> {
    let n = m.dim();
    if n <= 1 {
        return Ok(Split::Irreducible);
    }
    let f = m.field().clone();
    let gens = m.gens();
    let gens_t: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    let max_degree = if n <= FULL_FACTOR_DIM { n } else { LARGE_FACTOR_DEGREE };
    let mut source = RandomElements::new(gens);
    for _ in 0..MAX_ATTEMPTS {
        let theta = source.next(&f, n, rng);
        let cp = charpoly(&theta);
        for fac in poly::irreducible_factors(&f, &cp, max_degree, rng) {
            let deg = fac.len() - 1;
            let ft = eval_matrix(&f, &fac, &theta);
            let kernel = ft.left_nullspace();
            let tries = if kernel.len() > deg { 3 } else { 1 };
            for v in kernel.iter().take(tries) {
                let s = spin(&f, n, gens, std::slice::from_ref(v));
                if s.dim() < n {
                    return Ok(Split::Reducible(s.basis_matrix().row_space()));
                }
            }
            let dual_kernel = ft.nullspace();
            for w in dual_kernel.iter().take(tries) {
                let s = spin(&f, n, &gens_t, std::slice::from_ref(w));
                if s.dim() < n {
                    // annihilator of the invariant subspace of the dual
                    let ann = s.basis_matrix().nullspace();
                    let basis = Matrix::from_rows(&f, n, &ann)?.row_space();
                    return Ok(Split::Reducible(basis));
                }
            }
            if kernel.len() == deg {
                return Ok(Split::Irreducible);
            }
        }
    }
    Err(Error::MeatAxeExhausted { dim: n, attempts: MAX_ATTEMPTS })
}

pub fn is_irreducible<R: Rng>(m: &Module, rng: &mut R) -> Result<bool> {
    Ok(m.dim() > 0 && matches!(split(m, rng)?, Split::Irreducible))
}

/// Irreducible composition factors of `m` in the order they are found
/// (submodule before quotient), with repetitions.
pub fn composition_series<R: Rng>(m: &Module, rng: &mut R) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match split(&x, rng)? {
            Split::Irreducible => out.push(x),
            Split::Reducible(w) => {
                let quo = x.quotient(&w)?;
                let sub = x.submodule(&w)?;
                stack.push(quo);
                stack.push(sub);
            }
        }
    }
    Ok(out)
}

/// An isomorphism class of composition factors.
#[derive(Clone, Debug)]
pub struct CompositionFactor {
    pub module: Module,
    pub multiplicity: usize,
}

/// Composition factors grouped up to isomorphism, in first-found order.
/// Fails with [`Error::FieldNotSplitting`] when a factor has endomorphism
/// ring larger than the field.
pub fn chop<R: Rng>(m: &Module, rng: &mut R) -> Result<Vec<CompositionFactor>> {
    let mut classes: Vec<CompositionFactor> = Vec::new();
    for x in composition_series(m, rng)? {
        let mut found = false;
        for c in classes.iter_mut() {
            if c.module.dim() == x.dim() && hom_space(&x, &c.module)?.dim() > 0 {
                c.multiplicity += 1;
                found = true;
                break;
            }
        }
        if !found {
            let end = hom_space(&x, &x)?.dim();
            if end > 1 {
                return Err(Error::FieldNotSplitting { dim: x.dim(), degree: end });
            }
            classes.push(CompositionFactor { module: x, multiplicity: 1 });
        }
    }
    Ok(classes)
}
