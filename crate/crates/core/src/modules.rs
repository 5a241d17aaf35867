//! Right modules over an [`Algebra`] and the functor toolkit built on them:
//! Hom-spaces, tops, projective covers, maps factoring through projectives,
//! stable Hom dimensions and projective summand multiplicities.
//!
//! A module stores one action matrix per algebra *generator*; the action of
//! any basis element is recovered from the algebra's basis words. Vectors are
//! rows and act on the right, so `ρ(ab) = ρ(a) ρ(b)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::algebra::{Algebra, BasisWord};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};
use crate::linalg::{axpy, Echelon, Matrix, SolvedBasis};

/// How a vector of a [`Spin`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinNode {
    /// The `i`-th seed vector that was actually used.
    Seed(usize),
    /// `vectors[parent] * gens[generator]`.
    Child { parent: usize, generator: usize },
}

/// The closure of a set of seed vectors under a set of matrices, recorded as
/// a basis together with how each basis vector was obtained.
#[derive(Clone, Debug)]
pub struct Spin {
    pub vectors: Vec<Vec<Scalar>>,
    pub nodes: Vec<SpinNode>,
    echelon: Echelon,
}

impl Spin {
    pub fn new(field: &FiniteField, n: usize) -> Self {
        Spin { vectors: Vec::new(), nodes: Vec::new(), echelon: Echelon::new(field, n) }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn basis_matrix(&self) -> Matrix {
        let n = self.echelon.cols();
        Matrix::from_raw(self.echelon.to_matrix().field(), self.vectors.len(), n, self.vectors.concat())
    }

    /// Add `seed` (if it is new) and close under `gens`.
    pub fn extend(&mut self, seed: &[Scalar], gens: &[Matrix]) {
        let mut w = seed.to_vec();
        if !self.echelon.reduce(&mut w) {
            return;
        }
        let seed_no = self.nodes.iter().filter(|n| matches!(n, SpinNode::Seed(_))).count();
        self.echelon.push_reduced(w);
        self.vectors.push(seed.to_vec());
        self.nodes.push(SpinNode::Seed(seed_no));
        let mut k = self.vectors.len() - 1;
        while k < self.vectors.len() {
            for (gi, g) in gens.iter().enumerate() {
                let img = g.vec_mul(&self.vectors[k]);
                let mut w = img.clone();
                if self.echelon.reduce(&mut w) {
                    self.echelon.push_reduced(w);
                    self.vectors.push(img);
                    self.nodes.push(SpinNode::Child { parent: k, generator: gi });
                }
            }
            k += 1;
        }
    }
}

/// Spin `seeds` under `gens` in `F^n`.
pub fn spin(field: &FiniteField, n: usize, gens: &[Matrix], seeds: &[Vec<Scalar>]) -> Spin {
    let mut s = Spin::new(field, n);
    for seed in seeds {
        if s.dim() == n {
            break;
        }
        s.extend(seed, gens);
    }
    s
}

/// Spin standard basis vectors, in order, until the whole space is reached.
fn spin_everything(field: &FiniteField, n: usize, gens: &[Matrix]) -> Spin {
    let mut s = Spin::new(field, n);
    let mut e = vec![0; n];
    for i in 0..n {
        if s.dim() == n {
            break;
        }
        e[i] = 1;
        s.extend(&e, gens);
        e[i] = 0;
    }
    s
}

/// A finite-dimensional right module.
#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    gens: Vec<Matrix>,
    full: Arc<OnceLock<Vec<Matrix>>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over {})", self.dim, self.algebra.label())
    }
}

impl Module {
    /// A validated module from the action matrices of the algebra's generators.
    pub fn new(algebra: &Arc<Algebra>, gens: Vec<Matrix>) -> Result<Self> {
        let dim = gens.first().map_or(0, |g| g.rows());
        let m = Self::from_generators_unchecked(algebra, dim, gens)?;
        m.validate()?;
        Ok(m)
    }

    /// A module from generator actions, checking shapes only.
    pub fn from_generators_unchecked(algebra: &Arc<Algebra>, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        if gens.len() != algebra.generators().len() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for {} algebra generators",
                gens.len(),
                algebra.generators().len()
            )));
        }
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::InvalidModule(format!("action matrix is {}x{}, expected {dim}x{dim}", g.rows(), g.cols())));
            }
            if g.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Module { algebra: algebra.clone(), dim, gens, full: Arc::new(OnceLock::new()) })
    }

    pub(crate) fn from_parts(algebra: &Arc<Algebra>, dim: usize, gens: Vec<Matrix>) -> Self {
        Module { algebra: algebra.clone(), dim, gens, full: Arc::new(OnceLock::new()) }
    }

    /// The zero module.
    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let gens = algebra.generators().iter().map(|_| Matrix::zero(algebra.field(), 0, 0)).collect();
        Self::from_parts(algebra, 0, gens)
    }

    /// Check that the actions respect the algebra's multiplication and unit.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        let full = self.full_actions();
        let mut unit = Matrix::zero(f, self.dim, self.dim);
        for (k, &u) in a.unit().iter().enumerate() {
            if u != 0 {
                unit.add_scaled(u, &full[k]);
            }
        }
        if !unit.is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        match a.group() {
            Some(_) => {
                // ρ(x) ρ(g) = ρ(x g) for every basis element x and generator g
                for x in 0..a.dim() {
                    for (j, &g) in a.generators().iter().enumerate() {
                        let lhs = full[x].mul(&self.gens[j])?;
                        if lhs != full[a.basis_product_index(x, g)] {
                            return Err(Error::InvalidModule(format!("relation fails for basis pair ({x}, {g})")));
                        }
                    }
                }
            }
            None => {
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        let lhs = full[i].mul(&full[j])?;
                        let mut rhs = Matrix::zero(f, self.dim, self.dim);
                        for (k, &c) in a.basis_product(i, j).iter().enumerate() {
                            if c != 0 {
                                rhs.add_scaled(c, &full[k]);
                            }
                        }
                        if lhs != rhs {
                            return Err(Error::InvalidModule(format!("relation fails for basis pair ({i}, {j})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> &FiniteField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrices of the algebra generators.
    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub(crate) fn same_algebra(&self, other: &Module) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Action of basis element `k`, evaluated along its word without caching.
    pub fn basis_action(&self, k: usize) -> Matrix {
        if let Some(full) = self.full.get() {
            return full[k].clone();
        }
        match self.algebra.words()[k] {
            BasisWord::Unit => Matrix::identity(self.field(), self.dim),
            BasisWord::Generator(j) => self.gens[j].clone(),
            BasisWord::Product { parent, generator } => {
                self.basis_action(parent).mul(&self.gens[generator]).expect("square matrices")
            }
        }
    }

    /// Actions of every basis element (computed once, then cached).
    pub fn full_actions(&self) -> &[Matrix] {
        self.full.get_or_init(|| {
            let words = self.algebra.words();
            let mut out: Vec<Matrix> = Vec::with_capacity(words.len());
            for w in words {
                let m = match *w {
                    BasisWord::Unit => Matrix::identity(self.field(), self.dim),
                    BasisWord::Generator(j) => self.gens[j].clone(),
                    BasisWord::Product { parent, generator } => {
                        out[parent].mul(&self.gens[generator]).expect("square matrices")
                    }
                };
                out.push(m);
            }
            out
        })
    }

    /// Action of an arbitrary algebra element given by its coordinates.
    pub fn element_action(&self, x: &[Scalar]) -> Matrix {
        let full = self.full_actions();
        let mut out = Matrix::zero(self.field(), self.dim, self.dim);
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                out.add_scaled(c, &full[k]);
            }
        }
        out
    }

    pub fn spin(&self, seeds: &[Vec<Scalar>]) -> Spin {
        spin(self.field(), self.dim, &self.gens, seeds)
    }

    /// The submodule spanned by the rows of `basis` (independent, invariant).
    pub fn submodule(&self, basis: &Matrix) -> Result<Module> {
        let sb = SolvedBasis::new(basis.clone())?;
        let k = basis.rows();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut data = Vec::with_capacity(k * k);
            for i in 0..k {
                let img = g.vec_mul(basis.row(i));
                data.extend(sb.coords(&img).ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?);
            }
            gens.push(Matrix::from_raw(self.field(), k, k, data));
        }
        Ok(Module::from_parts(&self.algebra, k, gens))
    }

    /// The submodule spanned by a spin, in the spin's own basis.
    pub fn submodule_on_spin(&self, s: &Spin) -> Module {
        self.submodule(&s.basis_matrix()).expect("a spin is an invariant subspace")
    }

    /// Quotient by the submodule spanned by the rows of `basis`. The quotient
    /// basis is the images of the standard vectors at the non-pivot columns of
    /// the subspace's reduced echelon form.
    pub fn quotient(&self, basis: &Matrix) -> Result<Module> {
        let f = self.field().clone();
        let mut ech = Echelon::new(&f, self.dim);
        for i in 0..basis.rows() {
            ech.insert(basis.row(i).to_vec());
        }
        let mut is_pivot = vec![false; self.dim];
        for row in ech.rows() {
            is_pivot[row.iter().position(|&x| x != 0).expect("nonzero row")] = true;
        }
        let free: Vec<usize> = (0..self.dim).filter(|&j| !is_pivot[j]).collect();
        let k = free.len();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            // every row of the submodule must map into it
            for row in ech.rows() {
                if ech.reduce(&mut g.vec_mul(row)) {
                    return Err(Error::InvalidModule("subspace is not a submodule".into()));
                }
            }
            let mut data = Vec::with_capacity(k * k);
            for &c in &free {
                let mut y = g.row(c).to_vec();
                ech.reduce(&mut y);
                data.extend(free.iter().map(|&j| y[j]));
            }
            gens.push(Matrix::from_raw(&f, k, k, data));
        }
        Ok(Module::from_parts(&self.algebra, k, gens))
    }

    /// The submodule `U·E` for an endomorphism `E` of `U`.
    pub fn image_submodule(&self, endo: &Matrix) -> Result<Module> {
        self.submodule(&endo.row_space())
    }

    pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[&Module]) -> Result<Module> {
        for p in parts {
            if !Arc::ptr_eq(p.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let dim = parts.iter().map(|p| p.dim).sum();
        let gens = (0..algebra.generators().len())
            .map(|j| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.gens[j]).collect();
                Matrix::block_diag(algebra.field(), &blocks)
            })
            .collect();
        Ok(Module::from_parts(algebra, dim, gens))
    }

    /// `v · x` for an algebra element `x`, walking the basis words so that no
    /// per-basis action matrices are formed.
    pub fn vec_element(&self, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![0; self.dim];
        if let Some(full) = self.full.get() {
            for (k, &c) in x.iter().enumerate() {
                if c != 0 {
                    axpy(f, &mut out, c, &full[k].vec_mul(v));
                }
            }
            return out;
        }
        let mut imgs: Vec<Vec<Scalar>> = Vec::with_capacity(x.len());
        for (k, w) in self.algebra.words().iter().enumerate() {
            let img = match *w {
                BasisWord::Unit => v.to_vec(),
                BasisWord::Generator(j) => self.gens[j].vec_mul(v),
                BasisWord::Product { parent, generator } => self.gens[generator].vec_mul(&imgs[parent]),
            };
            if x[k] != 0 {
                axpy(f, &mut out, x[k], &img);
            }
            imgs.push(img);
        }
        out
    }

    /// Seeds generating the module: standard basis vectors not in the span of
    /// the previous ones' spins.
    pub fn generating_vectors(&self) -> Vec<Vec<Scalar>> {
        let s = spin_everything(self.field(), self.dim, &self.gens);
        s.nodes
            .iter()
            .zip(&s.vectors)
            .filter(|(n, _)| matches!(n, SpinNode::Seed(_)))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// `U·rad(A)`, as a semi-echelon basis. Spun from `u x` for module
    /// generators `u` and right-ideal generators `x` of the radical.
    pub fn radical_submodule(&self) -> Result<Echelon> {
        let rad = self.algebra.radical()?;
        let mut seeds = Vec::new();
        for u in self.generating_vectors() {
            for x in &rad.right_ideal_generators {
                seeds.push(self.vec_element(&u, x));
            }
        }
        let s = self.spin(&seeds);
        Ok(s.echelon)
    }
}

/// A basis of `Hom_A(U, V)`. Each map is a `dim U x dim V` matrix `F` with
/// `ρ_U(a) F = F ρ_V(a)`, acting on row vectors as `u ↦ u F`. The basis is
/// the reduced echelon basis of the flattened maps.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Canonical (RREF) basis of the span of a list of equally-shaped matrices.
pub(crate) fn canonical_span(field: &FiniteField, rows: usize, cols: usize, maps: &[Matrix]) -> Vec<Matrix> {
    if maps.is_empty() || rows * cols == 0 {
        return Vec::new();
    }
    let flat = Matrix::from_raw(field, maps.len(), rows * cols, maps.iter().flat_map(|m| m.as_slice().to_vec()).collect());
    let r = flat.rref();
    (0..r.rank).map(|i| Matrix::from_raw(field, rows, cols, r.matrix.row(i).to_vec())).collect()
}

/// `Hom_A(U, V)`.
///
/// `U` is spun from standard basis vectors; a homomorphism is determined by
/// the images `x_s` of the seeds, and each non-tree edge of the spin yields
/// linear conditions on them.
pub fn hom_space(u: &Module, v: &Module) -> Result<HomSpace> {
    u.same_algebra(v)?;
    let f = u.field().clone();
    let (nu, nv) = (u.dim, v.dim);
    let empty = HomSpace { source_dim: nu, target_dim: nv, basis: Vec::new() };
    if nu == 0 || nv == 0 {
        return Ok(empty);
    }
    let sp = spin_everything(&f, nu, &u.gens);
    let r = sp.nodes.iter().filter(|n| matches!(n, SpinNode::Seed(_))).count();
    let unknowns = r * nv;

    // W_j = ρ_V(word_j); seed_of[j] = seed block of node j.
    let mut w: Vec<Matrix> = Vec::with_capacity(nu);
    let mut seed_of = Vec::with_capacity(nu);
    for node in &sp.nodes {
        match *node {
            SpinNode::Seed(s) => {
                w.push(Matrix::identity(&f, nv));
                seed_of.push(s);
            }
            SpinNode::Child { parent, generator } => {
                w.push(w[parent].mul(&v.gens[generator])?);
                seed_of.push(seed_of[parent]);
            }
        }
    }
    let mut is_tree_edge = vec![false; nu * u.gens.len()];
    for node in &sp.nodes {
        if let SpinNode::Child { parent, generator } = *node {
            is_tree_edge[parent * u.gens.len() + generator] = true;
        }
    }
    let basis = SolvedBasis::new(sp.basis_matrix())?;
    let mut eqs = Echelon::new(&f, unknowns);
    let neg1 = f.neg(1);
    'outer: for k in 0..nu {
        for (gi, g) in u.gens.iter().enumerate() {
            if is_tree_edge[k * u.gens.len() + gi] {
                continue;
            }
            let img = g.vec_mul(&sp.vectors[k]);
            let c = basis.coords(&img).expect("spin spans U");
            // C = block_{s(k)} W_k ρ_V(g) - sum_j c_j block_{s(j)} W_j, shape (r nv) x nv
            let mut cmat = Matrix::zero(&f, unknowns, nv);
            let lhs = w[k].mul(&v.gens[gi])?;
            add_block(&mut cmat, seed_of[k] * nv, &lhs, 1);
            for (j, &cj) in c.iter().enumerate() {
                if cj != 0 {
                    add_block(&mut cmat, seed_of[j] * nv, &w[j], f.mul(neg1, cj));
                }
            }
            let ct = cmat.transpose();
            for row in 0..nv {
                eqs.insert(ct.row(row).to_vec());
                if eqs.rank() == unknowns {
                    break 'outer;
                }
            }
        }
    }
    if eqs.rank() == unknowns {
        return Ok(empty);
    }
    let solutions = eqs.to_matrix().nullspace();
    let binv = sp.basis_matrix().inverse().expect("spin basis is a basis");
    let mut maps = Vec::with_capacity(solutions.len());
    for x in solutions {
        let mut img = Vec::with_capacity(nu * nv);
        for j in 0..nu {
            let s = seed_of[j];
            img.extend(w[j].vec_mul(&x[s * nv..(s + 1) * nv]));
        }
        let img = Matrix::from_raw(&f, nu, nv, img);
        maps.push(binv.mul(&img)?);
    }
    Ok(HomSpace { source_dim: nu, target_dim: nv, basis: canonical_span(&f, nu, nv, &maps) })
}

fn add_block(dst: &mut Matrix, row0: usize, block: &Matrix, c: Scalar) {
    let f = dst.field().clone();
    for i in 0..block.rows() {
        axpy(&f, dst.row_mut(row0 + i), c, block.row(i));
    }
}

/// Whether `U ≅ V`: equal dimension and an invertible element in `Hom(U, V)`,
/// searched by seeded random combinations of the Hom basis.
pub fn is_isomorphic<R: Rng>(u: &Module, v: &Module, rng: &mut R) -> Result<bool> {
    u.same_algebra(v)?;
    if u.dim != v.dim {
        return Ok(false);
    }
    if u.dim == 0 {
        return Ok(true);
    }
    let h = hom_space(u, v)?;
    if h.dim() == 0 {
        return Ok(false);
    }
    let f = u.field();
    for b in &h.basis {
        if b.rank() == u.dim {
            return Ok(true);
        }
    }
    for _ in 0..64 {
        let mut m = Matrix::zero(f, u.dim, u.dim);
        for b in &h.basis {
            m.add_scaled(rng.gen_range(0..f.order()) as Scalar, b);
        }
        if m.rank() == u.dim {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Top multiplicities `[top U : S]` for each simple `S`, by chopping `U/U·rad A`.
pub fn top(u: &Module) -> Result<Vec<usize>> {
    let a = u.algebra().clone();
    let rad = u.radical_submodule()?;
    let q = u.quotient(&rad.to_matrix())?;
    a.composition_multiplicities(&q)
}

/// The cover `P(U) = ⊕ P(S)^{[top U : S]}` with its surjection onto `U`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: Module,
    /// `dim P x dim U`, a module map `P → U`.
    pub pi: Matrix,
    /// Simple index of each indecomposable summand, in block order.
    pub summands: Vec<usize>,
}

/// `dim P(U)`, from the top multiplicities `dim Hom(U, S)` (split simples).
pub fn projective_cover_dim(u: &Module) -> Result<usize> {
    let a = u.algebra().clone();
    let simples = a.simples()?;
    let pims = a.pims()?;
    let mut total = 0;
    for (i, s) in simples.simples.iter().enumerate() {
        let t = hom_space(u, s)?.dim();
        total += t * pims.pims[i].module.dim();
    }
    Ok(total)
}

pub fn projective_cover(u: &Module) -> Result<ProjectiveCover> {
    let a = u.algebra().clone();
    let f = u.field().clone();
    let pims = a.pims()?;
    let tops = top(u)?;
    let rad = u.radical_submodule()?;
    let mut chosen = rad.clone();
    let mut parts: Vec<&Module> = Vec::new();
    let mut summands = Vec::new();
    let mut pi_rows: Vec<Scalar> = Vec::new();
    for (i, &t) in tops.iter().enumerate() {
        if t == 0 {
            continue;
        }
        let pim = &pims.pims[i];
        let mut picked = 0;
        let mut e_r = vec![0; u.dim];
        for row in 0..u.dim {
            if picked == t {
                break;
            }
            e_r[row] = 1;
            let cand = u.vec_element(&e_r, &pim.idempotent);
            e_r[row] = 0;
            let mut red = cand.clone();
            if chosen.reduce(&mut red) {
                chosen.push_reduced(red);
                picked += 1;
                // images of the spin basis of P(S) = eA under e·a ↦ cand·a
                let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(pim.module.dim());
                for node in &pim.nodes {
                    let img = match *node {
                        SpinNode::Seed(_) => cand.clone(),
                        SpinNode::Child { parent, generator } => u.gens[generator].vec_mul(&images[parent]),
                    };
                    images.push(img);
                }
                pi_rows.extend(images.concat());
                parts.push(&pim.module);
                summands.push(i);
            }
        }
        if picked < t {
            return Err(Error::LiftFailed(format!("found {picked} of {t} top generators for simple {i}")));
        }
    }
    let module = Module::direct_sum(&a, &parts)?;
    let pi = Matrix::from_raw(&f, module.dim, u.dim, pi_rows);
    if pi.rank() != u.dim {
        return Err(Error::LiftFailed("cover map is not surjective".into()));
    }
    Ok(ProjectiveCover { module, pi, summands })
}

/// Canonical basis of `Hom^pr(U, V)`: the maps `g π` with `g ∈ Hom(U, P(V))`.
pub fn hom_pr(u: &Module, v: &Module) -> Result<Vec<Matrix>> {
    u.same_algebra(v)?;
    if u.dim == 0 || v.dim == 0 {
        return Ok(Vec::new());
    }
    let cover = projective_cover(v)?;
    let g = hom_space(u, &cover.module)?;
    let maps: Vec<Matrix> = g.basis.iter().map(|m| m.mul(&cover.pi)).collect::<Result<_>>()?;
    Ok(canonical_span(u.field(), u.dim, v.dim, &maps))
}

/// `dim Hom(U, V) - dim Hom^pr(U, V)`.
pub fn stable_hom_dim(u: &Module, v: &Module) -> Result<usize> {
    let h = hom_space(u, v)?.dim();
    let p = hom_pr(u, v)?.len();
    Ok(h - p)
}

/// Projective summand multiplicities `[P(S) | U]` and the dimension of the
/// projective-free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub mult: Vec<usize>,
    pub omega0_dim: usize,
}

/// For non-projective simple `S`: `[P(S)|U] = dim Hom(S,U) - dim stableHom(S,U)`;
/// for projective simple `S`: `dim Hom(S,U)`. Valid over symmetric algebras.
pub fn decompose_projectives(u: &Module) -> Result<DecompositionReport> {
    let a = u.algebra().clone();
    let simples = a.simples()?;
    let pims = a.pims()?;
    let mut mult = Vec::with_capacity(simples.len());
    let mut covered = 0usize;
    for (i, s) in simples.simples.iter().enumerate() {
        let hom = hom_space(s, u)?.dim();
        let m = if pims.pims[i].module.dim() == s.dim() { hom } else { hom - stable_hom_dim(s, u)? };
        covered += m * pims.pims[i].module.dim();
        mult.push(m);
    }
    if covered > u.dim {
        return Err(Error::NegativeMultiplicity(format!(
            "projective summands account for {covered} dimensions of a {}-dimensional module",
            u.dim
        )));
    }
    Ok(DecompositionReport { mult, omega0_dim: u.dim - covered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::make_field;
    use crate::group::{Perm, PermGroup, DEFAULT_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ks3() -> Arc<Algebra> {
        let g = Arc::new(PermGroup::from_cycles(3, &["(0 1)", "(0 1 2)"], DEFAULT_CAP).unwrap());
        Arc::new(Algebra::group_algebra(g, &make_field(3, 1, None).unwrap()))
    }

    fn kc3() -> Arc<Algebra> {
        let g = Arc::new(PermGroup::from_cycles(3, &["(0 1 2)"], DEFAULT_CAP).unwrap());
        Arc::new(Algebra::group_algebra(g, &make_field(3, 1, None).unwrap()))
    }

    /// One-dimensional module on which each generator acts by the given scalar.
    fn linear(a: &Arc<Algebra>, vals: &[i64]) -> Module {
        let f = a.field().clone();
        Module::new(a, vals.iter().map(|&x| Matrix::from_ints(&f, &[&[x]])).collect()).unwrap()
    }

    /// Brute-force Hom dimension: all n_U x n_V matrices over GF(3).
    fn brute_hom_dim(u: &Module, v: &Module) -> usize {
        let f = u.field();
        let cells = u.dim() * v.dim();
        let q = f.order() as usize;
        let mut count = 0usize;
        for code in 0..q.pow(cells as u32) {
            let mut c = code;
            let data: Vec<Scalar> = (0..cells)
                .map(|_| {
                    let x = (c % q) as Scalar;
                    c /= q;
                    x
                })
                .collect();
            let m = Matrix::from_raw(f, u.dim(), v.dim(), data);
            if u.gens().iter().zip(v.gens()).all(|(gu, gv)| gu.mul(&m).unwrap() == m.mul(gv).unwrap()) {
                count += 1;
            }
        }
        // count = q^dim
        (0..).find(|&d| q.pow(d) == count).unwrap() as usize
    }

    #[test]
    fn hom_examples() {
        let a = ks3();
        // generators: (0 1) and (0 1 2)
        let triv = linear(&a, &[1, 1]);
        let sign = linear(&a, &[2, 1]);
        assert_eq!(hom_space(&triv, &triv).unwrap().dim(), 1);
        assert_eq!(hom_space(&triv, &sign).unwrap().dim(), 0);
        assert_eq!(brute_hom_dim(&triv, &sign), 0);
        let c = kc3();
        let reg = c.regular_module();
        let t = linear(&c, &[1]);
        assert_eq!(brute_hom_dim(&reg, &t), 1);
        assert_eq!(hom_space(&reg, &t).unwrap().dim(), 1);
    }

    #[test]
    fn hom_matches_brute_force_on_small_modules() {
        let c = kc3();
        let reg = c.regular_module();
        let rad = reg.radical_submodule().unwrap();
        let r2 = reg.submodule(&rad.to_matrix()).unwrap();
        for (x, y) in [(&reg, &r2), (&r2, &reg), (&r2, &r2)] {
            let h = hom_space(x, y).unwrap();
            assert_eq!(h.dim(), brute_hom_dim(x, y));
            for m in &h.basis {
                for (gx, gy) in x.gens().iter().zip(y.gens()) {
                    assert_eq!(gx.mul(m).unwrap(), m.mul(gy).unwrap());
                }
            }
        }
    }

    #[test]
    fn hom_is_additive_in_the_source() {
        let a = ks3();
        let reg = a.regular_module();
        let triv = linear(&a, &[1, 1]);
        let sum = Module::direct_sum(&a, &[&reg, &triv]).unwrap();
        for w in [&reg, &triv] {
            assert_eq!(
                hom_space(&sum, w).unwrap().dim(),
                hom_space(&reg, w).unwrap().dim() + hom_space(&triv, w).unwrap().dim()
            );
        }
    }

    #[test]
    fn tops_and_covers() {
        let c = kc3();
        let reg = c.regular_module();
        assert_eq!(top(&reg).unwrap(), vec![1]);
        let a = ks3();
        let triv = linear(&a, &[1, 1]);
        let cover = projective_cover(&triv).unwrap();
        assert_eq!(cover.module.dim(), 3);
        assert_eq!(projective_cover_dim(&triv).unwrap(), 3);
        let zero = Module::zero(&a);
        assert_eq!(projective_cover(&zero).unwrap().module.dim(), 0);
        let regs3 = a.regular_module();
        let cover = projective_cover(&regs3).unwrap();
        assert_eq!(cover.module.dim(), 6);
        assert_eq!(cover.pi.rank(), 6);
        // pi is a module map
        for (gp, gu) in cover.module.gens().iter().zip(regs3.gens()) {
            assert_eq!(gp.mul(&cover.pi).unwrap(), cover.pi.mul(gu).unwrap());
        }
    }

    #[test]
    fn stable_hom_on_trivial_ks3_module() {
        let a = ks3();
        let triv = linear(&a, &[1, 1]);
        assert_eq!(hom_pr(&triv, &triv).unwrap().len(), 0);
        assert_eq!(stable_hom_dim(&triv, &triv).unwrap(), 1);
        let p = projective_cover(&triv).unwrap().module;
        assert_eq!(stable_hom_dim(&triv, &p).unwrap(), 0);
        assert_eq!(hom_pr(&p, &p).unwrap().len(), hom_space(&p, &p).unwrap().dim());
        // projective summands do not change stable Homs
        let sum = Module::direct_sum(&a, &[&triv, &p]).unwrap();
        assert_eq!(stable_hom_dim(&triv, &sum).unwrap(), 1);
        assert_eq!(stable_hom_dim(&sum, &triv).unwrap(), 1);
        assert_eq!(hom_pr(&triv, &Module::zero(&a)).unwrap().len(), 0);
    }

    #[test]
    fn decomposition_examples() {
        let a = ks3();
        let triv = linear(&a, &[1, 1]);
        let d = decompose_projectives(&triv).unwrap();
        assert_eq!(d, DecompositionReport { mult: vec![0, 0], omega0_dim: 1 });
        let d = decompose_projectives(&a.regular_module()).unwrap();
        assert_eq!(d, DecompositionReport { mult: vec![1, 1], omega0_dim: 0 });
        let pims = a.pims().unwrap();
        for (i, p) in pims.pims.iter().enumerate() {
            let d = decompose_projectives(&p.module).unwrap();
            let mut want = vec![0, 0];
            want[i] = 1;
            assert_eq!(d, DecompositionReport { mult: want, omega0_dim: 0 });
        }
    }

    #[test]
    fn isomorphism_search() {
        let a = ks3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let triv = linear(&a, &[1, 1]);
        let sign = linear(&a, &[2, 1]);
        assert!(is_isomorphic(&triv, &triv, &mut rng).unwrap());
        assert!(!is_isomorphic(&triv, &sign, &mut rng).unwrap());
        let _ = Perm::identity(1);
    }

    #[test]
    fn validation_rejects_bad_actions() {
        let a = ks3();
        let f = a.field().clone();
        // (0 1) acting by 2 and (0 1 2) acting by 2 violates (0 1 2)^3 = 1? 2^3 = 8 = 2 mod 3
        let bad = Module::new(&a, vec![Matrix::from_ints(&f, &[&[1]]), Matrix::from_ints(&f, &[&[2]])]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
    }
}
