//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symrec_core::algebra::Algebra;
use symrec_core::bimodule::Bimodule;
use symrec_core::field::{make_field, FiniteField, Scalar};
use symrec_core::group::{PermGroup, DEFAULT_CAP};
use symrec_core::linalg::{Matrix, SolvedBasis};
use symrec_core::modules::{hom_space, is_isomorphic, Module};

/// A subgroup pair `H ≤ G` over `GF(p^e)`.
#[derive(Clone, Copy, Debug)]
pub struct GroupFixture {
    pub name: &'static str,
    pub degree: usize,
    pub g: &'static [&'static str],
    pub h: &'static [&'static str],
    pub p: u64,
    pub e: u32,
}

const S3: &[&str] = &["(0 1)", "(0 1 2)"];
const S4: &[&str] = &["(0 1 2 3)", "(0 1)"];
const A4: &[&str] = &["(0 1 2)", "(0 1)(2 3)"];
const D8: &[&str] = &["(0 1 2 3)", "(0 2)"];

pub const GROUP_FIXTURES: &[GroupFixture] = &[
    GroupFixture { name: "S3>C3 p3", degree: 3, g: S3, h: &["(0 1 2)"], p: 3, e: 1 },
    GroupFixture { name: "S3>C2 p3", degree: 3, g: S3, h: &["(0 1)"], p: 3, e: 1 },
    GroupFixture { name: "C3>1 p3", degree: 3, g: &["(0 1 2)"], h: &[], p: 3, e: 1 },
    GroupFixture { name: "D8>C4 p2", degree: 4, g: D8, h: &["(0 1 2 3)"], p: 2, e: 1 },
    GroupFixture { name: "D8>C2 p2", degree: 4, g: D8, h: &["(0 2)"], p: 2, e: 1 },
    GroupFixture { name: "A4>V4 GF(4)", degree: 4, g: A4, h: &["(0 1)(2 3)", "(0 2)(1 3)"], p: 2, e: 2 },
    GroupFixture { name: "S4>S3 p2", degree: 4, g: S4, h: &["(0 1 2)", "(0 1)"], p: 2, e: 1 },
    GroupFixture { name: "S4>A4 p3", degree: 4, g: S4, h: A4, p: 3, e: 1 },
];

/// `(C3 x C3) : GL2(3)` on the nine points of the affine plane, and a Sylow 3-subgroup.
pub const SYLOW_FIXTURE: GroupFixture = GroupFixture {
    name: "N>P p3",
    degree: 9,
    g: &["(0 1 4 5 8 6)(2 7 3)", "(1 4 5 6 2 8 7 3)"],
    h: &["(1 4 7)(2 8 5)", "(0 1 2)(3 4 5)(6 7 8)"],
    p: 3,
    e: 1,
};

pub struct Built {
    pub field: FiniteField,
    pub kg: Arc<Algebra>,
    pub kh: Arc<Algebra>,
}

impl GroupFixture {
    pub fn build(&self) -> Built {
        let field = make_field(self.p, self.e, None).unwrap();
        let g = Arc::new(PermGroup::from_cycles(self.degree, self.g, DEFAULT_CAP).unwrap());
        let h = Arc::new(PermGroup::from_cycles(self.degree, self.h, DEFAULT_CAP).unwrap());
        let kg = Arc::new(Algebra::group_algebra(g, &field));
        let kh = Arc::new(Algebra::group_algebra(h, &field));
        Built { field, kg, kh }
    }
}

/// `⊕ P(S)* ⊗_k P(T)` over the listed pairs, a bimodule projective on both sides.
pub fn projective_atoms(a: &Arc<Algebra>, b: &Arc<Algebra>, pairs: &[(usize, usize)]) -> Bimodule {
    let pa = a.pims().unwrap();
    let pb = b.pims().unwrap();
    let atoms: Vec<Bimodule> =
        pairs.iter().map(|&(s, t)| Bimodule::outer(&pa.pims[s].module, &pb.pims[t].module).unwrap()).collect();
    Bimodule::direct_sum(&atoms.iter().collect::<Vec<_>>()).unwrap()
}

/// Projective summand multiplicities by the Fitting decomposition: split `U`
/// along a complete set of primitive orthogonal idempotents of `End(U)` and
/// identify each projective summand up to isomorphism with a PIM.
pub fn fitting_multiplicities(u: &Module) -> (Vec<usize>, usize) {
    let a = u.algebra().clone();
    let pims = a.pims().unwrap();
    let mut mult = vec![0; pims.pims.len()];
    let n = u.dim();
    if n == 0 {
        return (mult, 0);
    }
    let f = u.field().clone();
    let end = hom_space(u, u).unwrap().basis;
    let k = end.len();
    let flat = Matrix::from_rows(&f, n * n, &end.iter().map(|m| m.as_slice().to_vec()).collect::<Vec<_>>()).unwrap();
    let sb = SolvedBasis::new(flat).unwrap();
    let coords = |m: &Matrix| sb.coords(m.as_slice()).expect("closed under composition");
    let table: Vec<Vec<Vec<Scalar>>> =
        (0..k).map(|i| (0..k).map(|j| coords(&end[i].mul(&end[j]).unwrap())).collect()).collect();
    let unit = coords(&Matrix::identity(&f, n));
    let e_alg = Arc::new(Algebra::from_structure_constants("End(U)", &f, unit, &table).unwrap());
    let idempotents = e_alg.pims().unwrap().idempotents.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut projective_dim = 0;
    for (_, e) in &idempotents {
        let mut eps = Matrix::zero(&f, n, n);
        for (c, m) in e.iter().zip(&end) {
            eps.add_scaled(*c, m);
        }
        let w = u.image_submodule(&eps).unwrap();
        for (i, p) in pims.pims.iter().enumerate() {
            if p.module.dim() == w.dim() && is_isomorphic(&w, &p.module, &mut rng).unwrap() {
                mult[i] += 1;
                projective_dim += w.dim();
                break;
            }
        }
    }
    (mult, n - projective_dim)
}

/// Cartan matrix from the radical layers of each PIM: every layer is
/// semisimple, so `[layer : S] = dim Hom(layer, S)` over a splitting field.
pub fn cartan_by_radical_layers(a: &Arc<Algebra>) -> Vec<Vec<usize>> {
    let simples = a.simples().unwrap();
    let pims = a.pims().unwrap();
    pims.pims
        .iter()
        .map(|p| {
            let mut row = vec![0; simples.len()];
            let mut m = p.module.clone();
            while m.dim() > 0 {
                let j = m.radical_submodule().unwrap().to_matrix();
                let layer = m.quotient(&j).unwrap();
                for (t, s) in simples.simples.iter().enumerate() {
                    row[t] += hom_space(&layer, s).unwrap().dim();
                }
                m = m.submodule(&j).unwrap();
            }
            row
        })
        .collect()
}
