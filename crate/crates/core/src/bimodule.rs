//! `(A, B)`-bimodules and the functors between module categories they induce:
//! duals, `- ⊗_A M`, restriction and induction along subgroups.
//!
//! A left action is stored like a right one, as matrices acting on row
//! vectors: `a · m = m L_a`, so `L_{ab} = L_b L_a`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, BasisWord};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::right_transversal;
use crate::linalg::{Echelon, Matrix};
use crate::modules::{projective_cover_dim, Module};

/// Dimension product up to which every tensor relation is checked for stability.
const FULL_STABILITY_CHECK: usize = 512;
/// Relations checked beyond that bound.
const STABILITY_SAMPLE: usize = 64;

#[derive(Clone)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_gens: Vec<Matrix>,
    right_gens: Vec<Matrix>,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule(dim {}, {} - {})", self.dim, self.left.label(), self.right.label())
    }
}

impl Bimodule {
    /// A validated bimodule from generator actions of both algebras.
    pub fn new(left: &Arc<Algebra>, right: &Arc<Algebra>, left_gens: Vec<Matrix>, right_gens: Vec<Matrix>) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch);
        }
        let dim = left_gens.first().or(right_gens.first()).map_or(0, Matrix::rows);
        let b = Self::unchecked(left, right, dim, left_gens, right_gens)?;
        b.right_module().validate().map_err(|e| Error::InvalidBimodule(format!("right action: {e}")))?;
        b.left_as_right_module()?.validate().map_err(|e| Error::InvalidBimodule(format!("left action: {e}")))?;
        for (i, l) in b.left_gens.iter().enumerate() {
            for (j, r) in b.right_gens.iter().enumerate() {
                if l.mul(r)? != r.mul(l)? {
                    return Err(Error::InvalidBimodule(format!("left generator {i} and right generator {j} do not commute")));
                }
            }
        }
        Ok(b)
    }

    /// Shape checks only.
    pub fn unchecked(
        left: &Arc<Algebra>,
        right: &Arc<Algebra>,
        dim: usize,
        left_gens: Vec<Matrix>,
        right_gens: Vec<Matrix>,
    ) -> Result<Self> {
        if left_gens.len() != left.generators().len() || right_gens.len() != right.generators().len() {
            return Err(Error::InvalidBimodule("wrong number of action matrices".into()));
        }
        for m in left_gens.iter().chain(&right_gens) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidBimodule(format!("action matrix is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
            if m.field() != left.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Bimodule { left: left.clone(), right: right.clone(), dim, left_gens, right_gens })
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Self {
        let f = a.field();
        let d = a.dim();
        let right_gens = a.regular_module().gens().to_vec();
        let left_gens = a
            .generators()
            .iter()
            .map(|&g| {
                let rows: Vec<Scalar> = (0..d).flat_map(|x| a.basis_product(g, x)).collect();
                Matrix::from_raw(f, d, d, rows)
            })
            .collect();
        Bimodule { left: a.clone(), right: a.clone(), dim: d, left_gens, right_gens }
    }

    /// `kG` as a `(kG, kH)`-bimodule for a subgroup `H ≤ G`.
    pub fn restriction(kg: &Arc<Algebra>, kh: &Arc<Algebra>) -> Result<Self> {
        let (g, h) = match (kg.group(), kh.group()) {
            (Some(g), Some(h)) => (g, h),
            _ => return Err(Error::InvalidBimodule("restriction needs two group algebras".into())),
        };
        if kg.field() != kh.field() {
            return Err(Error::FieldMismatch);
        }
        if !g.has_subgroup(h) {
            return Err(Error::NotSubgroup);
        }
        let f = kg.field();
        let d = kg.dim();
        let left_gens = kg
            .generators()
            .iter()
            .map(|&x| Matrix::permutation(f, &(0..d).map(|y| g.mul(x, y)).collect::<Vec<_>>()))
            .collect();
        let right_gens = h
            .generators()
            .iter()
            .map(|p| {
                let x = g.index_of(p).expect("subgroup element");
                Matrix::permutation(f, &(0..d).map(|y| g.mul(y, x)).collect::<Vec<_>>())
            })
            .collect();
        Ok(Bimodule { left: kg.clone(), right: kh.clone(), dim: d, left_gens, right_gens })
    }

    /// `X* ⊗_k Y` for a right `A`-module `X` and a right `B`-module `Y`.
    pub fn outer(x: &Module, y: &Module) -> Result<Self> {
        if x.field() != y.field() {
            return Err(Error::FieldMismatch);
        }
        let f = x.field();
        let (ix, iy) = (Matrix::identity(f, x.dim()), Matrix::identity(f, y.dim()));
        let left_gens = x.gens().iter().map(|g| g.transpose().kronecker(&iy)).collect::<Result<_>>()?;
        let right_gens = y.gens().iter().map(|g| ix.kronecker(g)).collect::<Result<_>>()?;
        Ok(Bimodule { left: x.algebra().clone(), right: y.algebra().clone(), dim: x.dim() * y.dim(), left_gens, right_gens })
    }

    pub fn direct_sum(parts: &[&Bimodule]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidBimodule("empty direct sum".into()))?;
        for p in parts {
            if !Arc::ptr_eq(&p.left, &first.left) || !Arc::ptr_eq(&p.right, &first.right) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let f = first.left.field();
        let sum = |pick: &dyn Fn(&Bimodule) -> &[Matrix], count: usize| -> Vec<Matrix> {
            (0..count)
                .map(|j| Matrix::block_diag(f, &parts.iter().map(|p| &pick(p)[j]).collect::<Vec<_>>()))
                .collect()
        };
        Ok(Bimodule {
            left: first.left.clone(),
            right: first.right.clone(),
            dim: parts.iter().map(|p| p.dim).sum(),
            left_gens: sum(&|p| &p.left_gens, first.left_gens.len()),
            right_gens: sum(&|p| &p.right_gens, first.right_gens.len()),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_gens(&self) -> &[Matrix] {
        &self.left_gens
    }

    pub fn right_gens(&self) -> &[Matrix] {
        &self.right_gens
    }

    /// `M* = Hom_k(M, k)` as a `(B, A)`-bimodule: `b` acts by `R_b^T`, `a` by `L_a^T`.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            left: self.right.clone(),
            right: self.left.clone(),
            dim: self.dim,
            left_gens: self.right_gens.iter().map(Matrix::transpose).collect(),
            right_gens: self.left_gens.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `M_B`.
    pub fn right_module(&self) -> Module {
        Module::from_parts(&self.right, self.dim, self.right_gens.clone())
    }

    /// `_A M` as a right module: over `A` itself through `g ↦ g^-1` for group
    /// algebras, over `A^op` otherwise.
    pub fn left_as_right_module(&self) -> Result<Module> {
        if self.left.group().is_some() {
            let gens = self
                .left_gens
                .iter()
                .map(|l| l.inverse().ok_or_else(|| Error::InvalidBimodule("group element acts singularly".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(Module::from_parts(&self.left, self.dim, gens))
        } else {
            let op = self.left.opposite()?;
            Ok(Module::from_parts(&op, self.dim, self.left_gens.clone()))
        }
    }

    pub fn is_projective_right(&self) -> Result<bool> {
        Ok(projective_cover_dim(&self.right_module())? == self.dim)
    }

    pub fn is_projective_left(&self) -> Result<bool> {
        let m = self.left_as_right_module()?;
        Ok(projective_cover_dim(&m)? == self.dim)
    }

    /// Left action of basis element `k` of `A`.
    pub fn left_basis_action(&self, k: usize) -> Matrix {
        match self.left.words()[k] {
            BasisWord::Unit => Matrix::identity(self.left.field(), self.dim),
            BasisWord::Generator(j) => self.left_gens[j].clone(),
            BasisWord::Product { parent, generator } => {
                self.left_gens[generator].mul(&self.left_basis_action(parent)).expect("square")
            }
        }
    }
}

/// `S ⊗_A M` as a right `B`-module, for a right `A`-module `S` and an
/// `(A, B)`-bimodule `M`.
///
/// The relations `s a ⊗ m - s ⊗ a m` are taken over the generators of `A`;
/// the quotient basis consists of the standard tensors at the non-pivot
/// columns of the relation space.
pub fn tensor_over(s: &Module, m: &Bimodule) -> Result<Module> {
    if !Arc::ptr_eq(s.algebra(), &m.left) {
        return Err(Error::AlgebraMismatch);
    }
    let f = s.field().clone();
    let (ds, dm) = (s.dim(), m.dim);
    let n = ds * dm;
    let mut rel = Echelon::new(&f, n);
    let neg1 = f.neg(1);
    'gens: for (rho, l) in s.gens().iter().zip(&m.left_gens) {
        for i in 0..ds {
            for j in 0..dm {
                let mut v = vec![0; n];
                for (k, &c) in rho.row(i).iter().enumerate() {
                    if c != 0 {
                        v[k * dm + j] = f.add(v[k * dm + j], c);
                    }
                }
                for (x, &c) in l.row(j).iter().enumerate() {
                    if c != 0 {
                        v[i * dm + x] = f.add(v[i * dm + x], f.mul(neg1, c));
                    }
                }
                rel.insert(v);
                if rel.rank() == n {
                    break 'gens;
                }
            }
        }
    }
    let mut is_pivot = vec![false; n];
    for row in rel.rows() {
        is_pivot[row.iter().position(|&x| x != 0).expect("nonzero")] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let apply = |v: &[Scalar], r: &Matrix| -> Vec<Scalar> {
        // v (I ⊗ R)
        let mut out = Vec::with_capacity(n);
        for i in 0..ds {
            out.extend(r.vec_mul(&v[i * dm..(i + 1) * dm]));
        }
        out
    };
    let checked = if n <= FULL_STABILITY_CHECK { rel.rank() } else { STABILITY_SAMPLE.min(rel.rank()) };
    for r in &m.right_gens {
        for row in &rel.rows()[..checked] {
            if rel.reduce(&mut apply(row, r)) {
                return Err(Error::RelationNotStable);
            }
        }
    }
    let k = free.len();
    let gens = m
        .right_gens
        .iter()
        .map(|r| {
            let mut data = Vec::with_capacity(k * k);
            for &c in &free {
                let (i, j) = (c / dm, c % dm);
                let mut v = vec![0; n];
                v[i * dm..(i + 1) * dm].copy_from_slice(r.row(j));
                rel.reduce(&mut v);
                data.extend(free.iter().map(|&x| v[x]));
            }
            Matrix::from_raw(&f, k, k, data)
        })
        .collect();
    Ok(Module::from_parts(&m.right, k, gens))
}

/// The restriction of a `kG`-module to `kH`.
pub fn restrict(x: &Module, kh: &Arc<Algebra>) -> Result<Module> {
    let g = x.algebra().group().ok_or_else(|| Error::InvalidModule("restriction needs a group algebra".into()))?;
    let h = kh.group().ok_or_else(|| Error::InvalidModule("restriction needs a group algebra".into()))?;
    if x.field() != kh.field() {
        return Err(Error::FieldMismatch);
    }
    if !g.has_subgroup(h) {
        return Err(Error::NotSubgroup);
    }
    let gens = h.generators().iter().map(|p| x.basis_action(g.index_of(p).expect("subgroup element"))).collect();
    Ok(Module::from_parts(kh, x.dim(), gens))
}

/// `Y ⊗_{kH} kG` for a `kH`-module `Y`, on the basis `y_i ⊗ r_j` ordered by
/// transversal element first (`index = j dim Y + i`).
pub fn induce(y: &Module, kg: &Arc<Algebra>) -> Result<Module> {
    let h = y.algebra().group().ok_or_else(|| Error::InvalidModule("induction needs a group algebra".into()))?;
    let g = kg.group().ok_or_else(|| Error::InvalidModule("induction needs a group algebra".into()))?;
    if y.field() != kg.field() {
        return Err(Error::FieldMismatch);
    }
    let t = right_transversal(g, h)?;
    let (m, dy) = (t.index(), y.dim());
    let f = kg.field();
    let gens = kg
        .generators()
        .iter()
        .map(|&gen| {
            let mut out = Matrix::zero(f, m * dy, m * dy);
            for (j, &r) in t.reps.iter().enumerate() {
                let prod = g.mul(r, gen);
                let j2 = t.coset_of[prod];
                let hx = g.mul(prod, g.inverse(t.reps[j2]));
                let hi = h.index_of(g.element(hx)).expect("coset representative algebra");
                let block = y.basis_action(hi);
                for a in 0..dy {
                    out.row_mut(j * dy + a)[j2 * dy..(j2 + 1) * dy].copy_from_slice(block.row(a));
                }
            }
            out
        })
        .collect();
    Ok(Module::from_parts(kg, m * dy, gens))
}

/// Both sides of the tensor-Hom adjunction for `M` projective on the right:
/// `(dim Hom_A(S, T ⊗_B M*), dim Hom_B(S ⊗_A M, T))`.
pub fn tensor_adjunction_check(s: &Module, t: &Module, m: &Bimodule) -> Result<(usize, usize)> {
    let lhs = crate::modules::hom_space(s, &tensor_over(t, &m.dual())?)?.dim();
    let rhs = crate::modules::hom_space(&tensor_over(s, m)?, t)?.dim();
    Ok((lhs, rhs))
}
