//! Finite-dimensional algebras over a finite field: group algebras of
//! permutation groups and algebras given by structure constants.
//!
//! Simples, the radical and the principal indecomposable projectives are
//! computed once per algebra and cached.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};
use crate::group::PermGroup;
use crate::linalg::{Echelon, Matrix};
use crate::meataxe;
use crate::modules::{hom_space, spin, Module, SpinNode};

/// Default seed for the randomised algorithms.
pub const DEFAULT_SEED: u64 = 1;

/// Largest group order for which a full multiplication table is stored.
const TABLE_LIMIT: usize = 1500;

/// How a basis element is expressed through the algebra generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisWord {
    /// The basis element is the unit.
    Unit,
    /// The basis element is generator `j` itself.
    Generator(usize),
    /// `b_k = b_parent * generator`.
    Product { parent: usize, generator: usize },
}

#[derive(Clone)]
enum Product {
    Group { group: Arc<PermGroup>, table: Option<Vec<u32>> },
    /// `c[(i d + j) d + k]` is the coefficient of `b_k` in `b_i b_j`.
    Constants(Vec<Scalar>),
}

/// The simple modules, ordered by dimension then by discovery, with their
/// multiplicities as composition factors of the regular module.
#[derive(Clone, Debug)]
pub struct SimpleSet {
    pub simples: Vec<Module>,
    pub regular_multiplicity: Vec<usize>,
}

impl SimpleSet {
    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(Module::dim).collect()
    }
}

/// The Jacobson radical.
#[derive(Clone, Debug)]
pub struct Radical {
    /// Reduced echelon basis (rows are algebra elements).
    pub basis: Matrix,
    /// Elements generating the radical as a right ideal.
    pub right_ideal_generators: Vec<Vec<Scalar>>,
}

/// A principal indecomposable `P(S) = eA`.
#[derive(Clone, Debug)]
pub struct Pim {
    pub module: Module,
    pub idempotent: Vec<Scalar>,
    /// How the module basis was spun from `e`.
    pub nodes: Vec<SpinNode>,
}

#[derive(Clone, Debug)]
pub struct ProjectiveSet {
    /// One per simple, in the order of [`SimpleSet`].
    pub pims: Vec<Pim>,
    /// A full set of orthogonal primitive idempotents with their simple index;
    /// they sum to the unit.
    pub idempotents: Vec<(usize, Vec<Scalar>)>,
}

/// Outcome of the search for a symmetrizing form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizingForm {
    /// Values of the form on the basis.
    pub coefficients: Vec<Scalar>,
}

#[derive(Default)]
struct Cache {
    simples: OnceLock<Result<Arc<SimpleSet>>>,
    radical: OnceLock<Result<Arc<Radical>>>,
    pims: OnceLock<Result<Arc<ProjectiveSet>>>,
    form: OnceLock<Result<SymmetrizingForm>>,
    opposite: OnceLock<Arc<Algebra>>,
}

/// A finite-dimensional associative unital algebra with a fixed basis.
pub struct Algebra {
    label: String,
    field: FiniteField,
    dim: usize,
    product: Product,
    unit: Vec<Scalar>,
    generators: Vec<usize>,
    words: Vec<BasisWord>,
    seed: u64,
    cache: Cache,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {} over {})", self.label, self.dim, self.field)
    }
}

impl Algebra {
    /// The group algebra `kG`, with basis the elements of `G` in canonical order.
    pub fn group_algebra(group: Arc<PermGroup>, field: &FiniteField) -> Self {
        let d = group.order();
        let table = (d <= TABLE_LIMIT).then(|| group.multiplication_table());
        let generators = group.generator_indices();
        let mut words = vec![BasisWord::Unit];
        for k in 1..d {
            let (parent, generator) = group.word(k).expect("non-identity element has a word");
            words.push(BasisWord::Product { parent, generator });
        }
        let mut unit = vec![0; d];
        unit[0] = 1;
        Algebra {
            label: format!("{field}[G of order {d}]"),
            field: field.clone(),
            dim: d,
            product: Product::Group { group, table },
            unit,
            generators,
            words,
            seed: DEFAULT_SEED,
            cache: Cache::default(),
        }
    }

    /// `kG`, refusing groups larger than `cap`.
    pub fn group_algebra_capped(group: Arc<PermGroup>, field: &FiniteField, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::OrderExceedsCap { reached: group.order(), cap });
        }
        Ok(Self::group_algebra(group, field))
    }

    /// An algebra from structure constants: `mult[i][j]` holds the coordinates
    /// of `b_i b_j`. Associativity and the unit are checked.
    pub fn from_structure_constants(
        label: &str,
        field: &FiniteField,
        unit: Vec<Scalar>,
        mult: &[Vec<Vec<Scalar>>],
    ) -> Result<Self> {
        let d = mult.len();
        if d == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != d {
            return Err(Error::InvalidAlgebra(format!("unit has length {} not {d}", unit.len())));
        }
        let mut c = Vec::with_capacity(d * d * d);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidAlgebra(format!("row {i} has {} products, expected {d}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != d {
                    return Err(Error::InvalidAlgebra(format!("product ({i}, {j}) has length {}", v.len())));
                }
                if v.iter().chain(&unit).any(|&x| u32::from(x) >= field.order()) {
                    return Err(Error::InvalidAlgebra(format!("product ({i}, {j}) has an entry outside the field")));
                }
                c.extend_from_slice(v);
            }
        }
        let a = Algebra {
            label: label.to_string(),
            field: field.clone(),
            dim: d,
            product: Product::Constants(c),
            unit,
            generators: (0..d).collect(),
            words: (0..d).map(BasisWord::Generator).collect(),
            seed: DEFAULT_SEED,
            cache: Cache::default(),
        };
        a.check_axioms()?;
        Ok(a)
    }

    /// The full matrix algebra `M_n(k)` on matrix units `E_ij` (index `i n + j`).
    pub fn matrix_algebra(field: &FiniteField, n: usize) -> Self {
        let d = n * n;
        let mut mult = vec![vec![vec![0; d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    mult[i * n + j][j * n + l][i * n + l] = 1;
                }
            }
        }
        let mut unit = vec![0; d];
        for i in 0..n {
            unit[i * n + i] = 1;
        }
        Self::from_structure_constants(&format!("M_{n}({field})"), field, unit, &mult).expect("matrix algebra")
    }

    /// Upper triangular `n x n` matrices, on the units `E_ij` with `i <= j` in
    /// row-major order. Not symmetric for `n >= 2`.
    pub fn upper_triangular(field: &FiniteField, n: usize) -> Self {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let pos = |i: usize, j: usize| units.iter().position(|&u| u == (i, j)).unwrap();
        let d = units.len();
        let mut mult = vec![vec![vec![0; d]; d]; d];
        for (a, &(i, j)) in units.iter().enumerate() {
            for (b, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    mult[a][b][pos(i, l)] = 1;
                }
            }
        }
        let mut unit = vec![0; d];
        for i in 0..n {
            unit[pos(i, i)] = 1;
        }
        Self::from_structure_constants(&format!("T_{n}({field})"), field, unit, &mult).expect("triangular algebra")
    }

    /// Replace the seed used by the randomised algorithms.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Basis indices of the algebra generators. Modules store one action
    /// matrix per generator.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn words(&self) -> &[BasisWord] {
        &self.words
    }

    pub fn group(&self) -> Option<&Arc<PermGroup>> {
        match &self.product {
            Product::Group { group, .. } => Some(group),
            Product::Constants(_) => None,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// For group algebras: the basis index of the product of basis elements.
    pub(crate) fn basis_product_index(&self, i: usize, j: usize) -> usize {
        match &self.product {
            Product::Group { group, table } => match table {
                Some(t) => t[i * self.dim + j] as usize,
                None => group.mul(i, j),
            },
            Product::Constants(_) => panic!("basis products are not basis elements"),
        }
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        match &self.product {
            Product::Group { .. } => {
                let mut v = vec![0; self.dim];
                v[self.basis_product_index(i, j)] = 1;
                v
            }
            Product::Constants(c) => {
                let d = self.dim;
                c[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
            }
        }
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                match &self.product {
                    Product::Group { .. } => {
                        let k = self.basis_product_index(i, j);
                        out[k] = f.add(out[k], ab);
                    }
                    Product::Constants(c) => {
                        crate::linalg::axpy(f, &mut out, ab, &c[(i * d + j) * d..(i * d + j + 1) * d]);
                    }
                }
            }
        }
        out
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let e = basis_vector(d, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("the unit does not fix basis element {i}")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let lhs = self.mul(&ij, &basis_vector(d, k));
                    let rhs = self.mul(&basis_vector(d, i), &self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!("associativity fails for ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The regular right module `A_A` on the algebra basis.
    pub fn regular_module(self: &Arc<Self>) -> Module {
        let f = &self.field;
        let d = self.dim;
        let gens = self
            .generators
            .iter()
            .map(|&g| match &self.product {
                Product::Group { .. } => {
                    let images: Vec<usize> = (0..d).map(|x| self.basis_product_index(x, g)).collect();
                    Matrix::permutation(f, &images)
                }
                Product::Constants(_) => {
                    let rows: Vec<Scalar> = (0..d).flat_map(|i| self.basis_product(i, g)).collect();
                    Matrix::from_raw(f, d, d, rows)
                }
            })
            .collect();
        Module::from_parts(self, d, gens)
    }

    /// The opposite algebra (structure-constant algebras only; group algebras
    /// are self-opposite through `g ↦ g^-1`).
    pub fn opposite(self: &Arc<Self>) -> Result<Arc<Algebra>> {
        if self.group().is_some() {
            return Err(Error::InvalidAlgebra("use the antipode for group algebras".into()));
        }
        Ok(self
            .cache
            .opposite
            .get_or_init(|| {
                let d = self.dim;
                let mult: Vec<Vec<Vec<Scalar>>> =
                    (0..d).map(|i| (0..d).map(|j| self.basis_product(j, i)).collect()).collect();
                let a = Algebra::from_structure_constants(&format!("{}^op", self.label), &self.field, self.unit.clone(), &mult)
                    .expect("opposite of a valid algebra")
                    .with_seed(self.seed);
                Arc::new(a)
            })
            .clone())
    }

    /// A symmetrizing form: a linear `λ` with `λ(xy) = λ(yx)` whose bilinear
    /// form `(x, y) ↦ λ(xy)` is nondegenerate. Fails with
    /// [`Error::NotSymmetric`]; `certified` is true when every candidate in
    /// the (small) space of trace forms was examined.
    pub fn symmetrizing_form(&self) -> Result<SymmetrizingForm> {
        self.cache.form.get_or_init(|| self.find_symmetrizing_form()).clone()
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        match self.symmetrizing_form() {
            Ok(_) => Ok(true),
            Err(Error::NotSymmetric { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Gram matrix `λ(b_i b_j)`.
    pub fn form_gram(&self, lambda: &[Scalar]) -> Matrix {
        let f = &self.field;
        let d = self.dim;
        let mut g = Matrix::zero(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let v = match &self.product {
                    Product::Group { .. } => lambda[self.basis_product_index(i, j)],
                    Product::Constants(_) => {
                        self.basis_product(i, j).iter().zip(lambda).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                    }
                };
                g.set(i, j, v);
            }
        }
        g
    }

    fn find_symmetrizing_form(&self) -> Result<SymmetrizingForm> {
        let f = &self.field;
        let d = self.dim;
        // trace condition λ(b_i g - g b_i) = 0 for every basis element and generator
        let mut eqs = Echelon::new(f, d);
        for i in 0..d {
            for &g in &self.generators {
                let mut v = self.basis_product(i, g);
                crate::linalg::axpy(f, &mut v, f.neg(1), &self.basis_product(g, i));
                eqs.insert(v);
            }
        }
        let traces = eqs.to_matrix().nullspace();
        let nondegenerate = |lambda: &[Scalar]| self.form_gram(lambda).rank() == d;
        for t in &traces {
            if nondegenerate(t) {
                return Ok(SymmetrizingForm { coefficients: t.clone() });
            }
        }
        if traces.is_empty() {
            return Err(Error::NotSymmetric { certified: true });
        }
        let combine = |coeffs: &[Scalar]| {
            let mut v = vec![0; d];
            for (c, t) in coeffs.iter().zip(&traces) {
                crate::linalg::axpy(f, &mut v, *c, t);
            }
            v
        };
        let sum = combine(&vec![1; traces.len()]);
        if nondegenerate(&sum) {
            return Ok(SymmetrizingForm { coefficients: sum });
        }
        let q = f.order() as usize;
        let k = traces.len();
        let exhaustive = q.checked_pow(k as u32).is_some_and(|n| n <= 1 << 12) && d <= 64;
        if exhaustive {
            let mut coeffs = vec![0 as Scalar; k];
            for code in 1..q.pow(k as u32) {
                let mut c = code;
                for x in coeffs.iter_mut() {
                    *x = (c % q) as Scalar;
                    c /= q;
                }
                let v = combine(&coeffs);
                if nondegenerate(&v) {
                    return Ok(SymmetrizingForm { coefficients: v });
                }
            }
            return Err(Error::NotSymmetric { certified: true });
        }
        let mut rng = self.rng();
        for _ in 0..64 {
            let coeffs: Vec<Scalar> = (0..k).map(|_| rng.gen_range(0..q) as Scalar).collect();
            let v = combine(&coeffs);
            if nondegenerate(&v) {
                return Ok(SymmetrizingForm { coefficients: v });
            }
        }
        Err(Error::NotSymmetric { certified: false })
    }

    /// The simple modules. Fails with [`Error::FieldNotSplitting`] when the
    /// field is not a splitting field.
    pub fn simples(self: &Arc<Self>) -> Result<Arc<SimpleSet>> {
        self.cache
            .simples
            .get_or_init(|| {
                let mut rng = self.rng();
                let mut classes = meataxe::chop(&self.regular_module(), &mut rng)?;
                classes.sort_by_key(|c| c.module.dim());
                Ok(Arc::new(SimpleSet {
                    regular_multiplicity: classes.iter().map(|c| c.multiplicity).collect(),
                    simples: classes.into_iter().map(|c| c.module).collect(),
                }))
            })
            .clone()
    }

    /// Index of the simple isomorphic to the irreducible module `m`.
    pub fn identify_simple(self: &Arc<Self>, m: &Module) -> Result<Option<usize>> {
        let simples = self.simples()?;
        for (i, s) in simples.simples.iter().enumerate() {
            if s.dim() == m.dim() && hom_space(m, s)?.dim() > 0 {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Composition multiplicities `[U : S]`, indexed like [`Algebra::simples`].
    pub fn composition_multiplicities(self: &Arc<Self>, u: &Module) -> Result<Vec<usize>> {
        let simples = self.simples()?;
        let mut out = vec![0; simples.len()];
        let mut rng = self.rng();
        for c in meataxe::chop(u, &mut rng)? {
            let i = self
                .identify_simple(&c.module)?
                .ok_or_else(|| Error::InvalidModule("composition factor matches no simple module".into()))?;
            out[i] += c.multiplicity;
        }
        Ok(out)
    }

    /// Rows: the action matrices of each basis element on all simples, flattened.
    fn simple_action_matrix(self: &Arc<Self>) -> Result<Matrix> {
        let simples = self.simples()?;
        let width: usize = simples.simples.iter().map(|s| s.dim() * s.dim()).sum();
        let mut data = Vec::with_capacity(self.dim * width);
        let full: Vec<&[Matrix]> = simples.simples.iter().map(|s| s.full_actions()).collect();
        for k in 0..self.dim {
            for acts in &full {
                data.extend_from_slice(acts[k].as_slice());
            }
        }
        Ok(Matrix::from_raw(&self.field, self.dim, width, data))
    }

    /// The Jacobson radical: the elements acting as zero on every simple.
    pub fn radical(self: &Arc<Self>) -> Result<Arc<Radical>> {
        self.cache
            .radical
            .get_or_init(|| {
                let phi = self.simple_action_matrix()?;
                let null = phi.left_nullspace();
                let basis = if null.is_empty() {
                    Matrix::zero(&self.field, 0, self.dim)
                } else {
                    Matrix::from_rows(&self.field, self.dim, &null)?.row_space()
                };
                let simples = self.simples()?;
                let semisimple: usize = simples.simples.iter().map(|s| s.dim() * s.dim()).sum();
                if basis.rows() + semisimple != self.dim {
                    return Err(Error::InvalidAlgebra("semisimple quotient is not split".into()));
                }
                let reg = self.regular_module();
                let mut span = crate::modules::Spin::new(&self.field, self.dim);
                let mut gens = Vec::new();
                for r in basis.row_vectors() {
                    if span.dim() == basis.rows() {
                        break;
                    }
                    if !span.echelon().contains(&r) {
                        span.extend(&r, reg.gens());
                        gens.push(r);
                    }
                }
                Ok(Arc::new(Radical { basis, right_ideal_generators: gens }))
            })
            .clone()
    }

    /// Principal indecomposable projectives, by lifting the diagonal matrix
    /// units of the semisimple quotient to orthogonal idempotents.
    pub fn pims(self: &Arc<Self>) -> Result<Arc<ProjectiveSet>> {
        self.cache.pims.get_or_init(|| self.compute_pims()).clone()
    }

    fn compute_pims(self: &Arc<Self>) -> Result<Arc<ProjectiveSet>> {
        let f = self.field.clone();
        let d = self.dim;
        let simples = self.simples()?;
        let phi_t = self.simple_action_matrix()?.transpose();
        let width = phi_t.rows();
        let mut acc = vec![0; d];
        let mut idempotents = Vec::new();
        let mut offset = 0;
        for (i, s) in simples.simples.iter().enumerate() {
            let n = s.dim();
            for j in 0..n {
                let mut target = vec![0; width];
                target[offset + j * n + j] = 1;
                let a = phi_t
                    .solve(&target)?
                    .ok_or_else(|| Error::LiftFailed("matrix unit has no preimage".into()))?;
                let mut comp = self.unit.clone();
                crate::linalg::axpy(&f, &mut comp, f.neg(1), &acc);
                let a = self.mul(&self.mul(&comp, &a), &comp);
                let e = self.lift_idempotent(a)?;
                if self.mul(&e, &acc).iter().any(|&x| x != 0) || self.mul(&acc, &e).iter().any(|&x| x != 0) {
                    return Err(Error::LiftFailed("lifted idempotents are not orthogonal".into()));
                }
                crate::linalg::axpy(&f, &mut acc, 1, &e);
                idempotents.push((i, e));
            }
            offset += n * n;
        }
        if acc != self.unit {
            return Err(Error::LiftFailed("idempotents do not sum to the unit".into()));
        }
        let reg = self.regular_module();
        let mut pims = Vec::with_capacity(simples.len());
        for i in 0..simples.len() {
            let e = idempotents.iter().find(|(s, _)| *s == i).expect("one idempotent per simple").1.clone();
            let sp = spin(&f, d, reg.gens(), std::slice::from_ref(&e));
            let module = reg.submodule_on_spin(&sp);
            pims.push(Pim { module, idempotent: e, nodes: sp.nodes.clone() });
        }
        // the top of P(S_i) is S_i
        for (i, p) in pims.iter().enumerate() {
            for (j, s) in simples.simples.iter().enumerate() {
                let h = hom_space(&p.module, s)?.dim();
                if h != usize::from(i == j) {
                    return Err(Error::LiftFailed(format!("dim Hom(P{i}, S{j}) = {h}")));
                }
            }
        }
        Ok(Arc::new(ProjectiveSet { pims, idempotents }))
    }

    fn lift_idempotent(&self, mut e: Vec<Scalar>) -> Result<Vec<Scalar>> {
        const MAX_STEPS: usize = 64;
        let f = &self.field;
        let (three, minus_two) = (f.from_int(3), f.from_int(-2));
        for _ in 0..MAX_STEPS {
            let e2 = self.mul(&e, &e);
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.mul(&e2, &e);
            let mut next = vec![0; self.dim];
            crate::linalg::axpy(f, &mut next, three, &e2);
            crate::linalg::axpy(f, &mut next, minus_two, &e3);
            e = next;
        }
        Err(Error::LiftDiverged(MAX_STEPS))
    }

    /// `C[i][j] = [P(S_i) : S_j]`.
    pub fn cartan_matrix(self: &Arc<Self>) -> Result<Vec<Vec<usize>>> {
        let pims = self.pims()?;
        pims.pims.iter().map(|p| self.composition_multiplicities(&p.module)).collect()
    }
}

fn basis_vector(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::group::DEFAULT_CAP;

    fn gf(p: u64) -> FiniteField {
        make_field(p, 1, None).unwrap()
    }

    fn kg(degree: usize, gens: &[&str], p: u64) -> Arc<Algebra> {
        let g = Arc::new(PermGroup::from_cycles(degree, gens, DEFAULT_CAP).unwrap());
        Arc::new(Algebra::group_algebra(g, &gf(p)))
    }

    #[test]
    fn ks3_mod_3() {
        let a = kg(3, &["(0 1)", "(0 1 2)"], 3);
        assert_eq!(a.simples().unwrap().dims(), vec![1, 1]);
        assert_eq!(a.radical().unwrap().basis.rows(), 4);
        assert_eq!(a.cartan_matrix().unwrap(), vec![vec![2, 1], vec![1, 2]]);
        let pims = a.pims().unwrap();
        assert!(pims.pims.iter().all(|p| p.module.dim() == 3));
        assert!(a.is_symmetric().unwrap());
    }

    #[test]
    fn semisimple_cases_have_zero_radical() {
        let a = kg(3, &["(0 1)", "(0 1 2)"], 5);
        assert_eq!(a.radical().unwrap().basis.rows(), 0);
        assert_eq!(a.simples().unwrap().dims(), vec![1, 1, 2]);
        let m = Arc::new(Algebra::matrix_algebra(&gf(3), 2));
        assert_eq!(m.simples().unwrap().dims(), vec![2]);
        assert_eq!(m.cartan_matrix().unwrap(), vec![vec![1]]);
        assert!(m.is_symmetric().unwrap());
    }

    #[test]
    fn upper_triangular_is_certified_not_symmetric() {
        let t = Arc::new(Algebra::upper_triangular(&gf(3), 2));
        assert_eq!(t.symmetrizing_form(), Err(Error::NotSymmetric { certified: true }));
        assert_eq!(t.simples().unwrap().dims(), vec![1, 1]);
        assert_eq!(t.radical().unwrap().basis.rows(), 1);
    }

    #[test]
    fn idempotents_are_a_complete_orthogonal_set() {
        let a = kg(4, &["(0 1 2 3)", "(0 1)"], 3);
        let pims = a.pims().unwrap();
        let mut sum = vec![0; a.dim()];
        for (_, e) in &pims.idempotents {
            assert_eq!(&a.mul(e, e), e);
            crate::linalg::axpy(a.field(), &mut sum, 1, e);
        }
        assert_eq!(sum, a.unit());
        let total: usize = pims
            .pims
            .iter()
            .zip(a.simples().unwrap().simples.iter())
            .map(|(p, s)| p.module.dim() * s.dim())
            .sum();
        assert_eq!(total, a.dim());
    }

    #[test]
    fn rejects_bad_structure_constants() {
        let f = gf(2);
        // b0 b0 = b1, b1 anything = 0, unit b0: unit law fails
        let mult = vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]];
        assert!(matches!(
            Algebra::from_structure_constants("bad", &f, vec![1, 0], &mult),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            Algebra::group_algebra_capped(
                Arc::new(PermGroup::from_cycles(4, &["(0 1 2 3)", "(0 1)"], DEFAULT_CAP).unwrap()),
                &f,
                10
            ),
            Err(Error::OrderExceedsCap { .. })
        ));
    }
}
