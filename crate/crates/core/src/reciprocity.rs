//! Reciprocity between projective summands over two symmetric algebras.
//!
//! For an `(A, B)`-bimodule `M`, projective on both sides, the multiplicity of
//! `P(T)` in `S ⊗_A M` should equal that of `P(S)` in `T ⊗_B M*`, for every
//! pair of simples `S` of `A` and `T` of `B`. The checks here compute both
//! matrices and the four dimension identities that connect them.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::bimodule::{induce, restrict, tensor_over, Bimodule};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::group::PermGroup;
use crate::modules::{decompose_projectives, hom_space, stable_hom_dim, Module};

/// Dimensions entering the identities for one pair `(S, T)`:
/// `X = S ⊗_A M` over `B` and `Y = T ⊗_B M*` over `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerRow {
    pub s: usize,
    pub t: usize,
    /// `dim Hom_A(S, Y)`.
    pub hom_a: usize,
    /// Stable part of `Hom_A(S, Y)`.
    pub stable_a: usize,
    /// `[P(S) | Y]`.
    pub m_s: usize,
    /// `dim Hom_B(X, T)`.
    pub hom_b: usize,
    pub stable_b: usize,
    /// `[P(T) | X]`.
    pub n_t: usize,
    /// `hom_a = stable_a + m_s`.
    pub identity_1: bool,
    /// `hom_b = stable_b + n_t`.
    pub identity_2: bool,
    /// `stable_a = stable_b`.
    pub identity_3: bool,
    /// `hom_a = hom_b`.
    pub identity_4: bool,
}

impl LedgerRow {
    pub fn holds(&self) -> bool {
        self.identity_1 && self.identity_2 && self.identity_3 && self.identity_4
    }

    /// The first failing identity as an error.
    pub fn first_violation(&self) -> Option<Error> {
        let v = |which: &str, lhs: usize, rhs: usize| Error::IdentityViolated {
            which: format!("{which} at (S{}, T{})", self.s, self.t),
            lhs: lhs as i64,
            rhs: rhs as i64,
        };
        if !self.identity_1 {
            Some(v("hom_A = stable_A + m_S", self.hom_a, self.stable_a + self.m_s))
        } else if !self.identity_2 {
            Some(v("hom_B = stable_B + n_T", self.hom_b, self.stable_b + self.n_t))
        } else if !self.identity_3 {
            Some(v("stable_A = stable_B", self.stable_a, self.stable_b))
        } else if !self.identity_4 {
            Some(v("hom_A = hom_B", self.hom_a, self.hom_b))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { s: Option<usize>, t: Option<usize>, reason: String },
    NotApplicable { reason: String },
}

impl Verdict {
    /// Process exit code: 0 pass, 1 violated, 2 hypotheses not met.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail { .. } => 1,
            Verdict::NotApplicable { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub a_symmetric: bool,
    /// A form was found, or every candidate form was ruled out.
    pub a_symmetric_certified: bool,
    pub b_symmetric: bool,
    pub b_symmetric_certified: bool,
    pub left_projective: bool,
    pub right_projective: bool,
    /// Both fields split the simples (always true in a finished report).
    pub splitting_ok: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.a_symmetric && self.b_symmetric && self.left_projective && self.right_projective
    }

    fn failures(&self) -> String {
        let mut out = Vec::new();
        if !self.a_symmetric {
            out.push("A is not symmetric");
        }
        if !self.b_symmetric {
            out.push("B is not symmetric");
        }
        if !self.left_projective {
            out.push("M is not projective as a left A-module");
        }
        if !self.right_projective {
            out.push("M is not projective as a right B-module");
        }
        out.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub label: String,
    pub dim: usize,
    pub simple_dims: Vec<usize>,
    pub pim_dims: Vec<usize>,
}

/// Multiplicities computed directly through restriction and induction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteCheck {
    /// `[P(T) | Res S]`.
    pub restriction: Vec<Vec<usize>>,
    /// `[P(S) | Ind T]`.
    pub induction: Vec<Vec<usize>>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReciprocityReport {
    pub seed: u64,
    pub field: String,
    pub algebra_a: AlgebraSummary,
    pub algebra_b: AlgebraSummary,
    pub bimodule_dim: usize,
    pub hypotheses: Hypotheses,
    /// `l[s][t] = [P(T_t) | S_s ⊗_A M]`.
    pub l: Vec<Vec<usize>>,
    /// `r[s][t] = [P(S_s) | T_t ⊗_B M*]`.
    pub r: Vec<Vec<usize>>,
    pub ledger: Vec<LedgerRow>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes: Option<RouteCheck>,
}

/// `(symmetric, certified)`.
fn symmetric(a: &Algebra) -> Result<(bool, bool)> {
    match a.symmetrizing_form() {
        Ok(_) => Ok((true, true)),
        Err(Error::NotSymmetric { certified }) => Ok((false, certified)),
        Err(e) => Err(e),
    }
}

fn summary(a: &Arc<Algebra>) -> Result<AlgebraSummary> {
    Ok(AlgebraSummary {
        label: a.label().to_string(),
        dim: a.dim(),
        simple_dims: a.simples()?.dims(),
        pim_dims: a.pims()?.pims.iter().map(|p| p.module.dim()).collect(),
    })
}

/// The ledger row for one pair, given the two tensor products and the
/// multiplicities read off the decompositions.
fn ledger_row(si: usize, ti: usize, s: &Module, t: &Module, x: &Module, y: &Module, m_s: usize, n_t: usize) -> Result<LedgerRow> {
    let hom_a = hom_space(s, y)?.dim();
    let stable_a = stable_hom_dim(s, y)?;
    let hom_b = hom_space(x, t)?.dim();
    let stable_b = stable_hom_dim(x, t)?;
    Ok(LedgerRow {
        s: si,
        t: ti,
        hom_a,
        stable_a,
        m_s,
        hom_b,
        stable_b,
        n_t,
        identity_1: hom_a == stable_a + m_s,
        identity_2: hom_b == stable_b + n_t,
        identity_3: stable_a == stable_b,
        identity_4: hom_a == hom_b,
    })
}

/// The four identities for a single pair of simples `S` (over `A`) and `T`
/// (over `B`). Fails with [`Error::IdentityViolated`] on the first one that
/// does not hold.
pub fn proof_chain(s: &Module, t: &Module, m: &Bimodule) -> Result<LedgerRow> {
    let a = m.left_algebra().clone();
    let b = m.right_algebra().clone();
    let si = a.identify_simple(s)?.ok_or_else(|| Error::InvalidModule("S is not a simple A-module".into()))?;
    let ti = b.identify_simple(t)?.ok_or_else(|| Error::InvalidModule("T is not a simple B-module".into()))?;
    let x = tensor_over(s, m)?;
    let y = tensor_over(t, &m.dual())?;
    let n_t = decompose_projectives(&x)?.mult[ti];
    let m_s = decompose_projectives(&y)?.mult[si];
    let row = ledger_row(si, ti, s, t, &x, &y, m_s, n_t)?;
    match row.first_violation() {
        Some(e) => Err(e),
        None => Ok(row),
    }
}

/// Compute both multiplicity matrices and the full ledger for `M`.
///
/// Hypothesis failures give a `NotApplicable` verdict; errors during the
/// computation are recorded in the notes. Only a non-split field aborts.
pub fn check_theorem(m: &Bimodule) -> Result<ReciprocityReport> {
    let a = m.left_algebra().clone();
    let b = m.right_algebra().clone();
    let sa = a.simples()?;
    let sb = b.simples()?;
    let mut notes = Vec::new();
    let (a_symmetric, a_symmetric_certified) = symmetric(&a)?;
    let (b_symmetric, b_symmetric_certified) = symmetric(&b)?;
    let hypotheses = Hypotheses {
        a_symmetric,
        a_symmetric_certified,
        b_symmetric,
        b_symmetric_certified,
        left_projective: record(m.is_projective_left(), "left projectivity", &mut notes).unwrap_or(false),
        right_projective: record(m.is_projective_right(), "right projectivity", &mut notes).unwrap_or(false),
        splitting_ok: true,
    };
    let summaries = (record(summary(&a), "algebra A", &mut notes), record(summary(&b), "algebra B", &mut notes));
    let empty = |x: &Arc<Algebra>| AlgebraSummary {
        label: x.label().to_string(),
        dim: x.dim(),
        simple_dims: Vec::new(),
        pim_dims: Vec::new(),
    };
    let (algebra_a, algebra_b) = (summaries.0.unwrap_or_else(|| empty(&a)), summaries.1.unwrap_or_else(|| empty(&b)));

    let (ns, nt) = (sa.len(), sb.len());
    let mut l = vec![vec![0; nt]; ns];
    let mut r = vec![vec![0; nt]; ns];
    let mut errors = false;
    if m.dim() == 0 {
        notes.push("M is zero: every multiplicity is 0".into());
    }
    let dual = m.dual();
    let mut xs = Vec::with_capacity(ns);
    for (i, s) in sa.simples.iter().enumerate() {
        let x = record(tensor_over(s, m), &format!("S{i} ⊗ M"), &mut notes);
        if let Some(x) = &x {
            if x.dim() == 0 && m.dim() > 0 {
                notes.push(format!("S{i} ⊗_A M is zero"));
            }
            match record(decompose_projectives(x), &format!("decomposing S{i} ⊗ M"), &mut notes) {
                Some(d) => l[i] = d.mult,
                None => errors = true,
            }
        } else {
            errors = true;
        }
        xs.push(x);
    }
    let mut ys = Vec::with_capacity(nt);
    for (t, tm) in sb.simples.iter().enumerate() {
        let y = record(tensor_over(tm, &dual), &format!("T{t} ⊗ M*"), &mut notes);
        if let Some(y) = &y {
            if y.dim() == 0 && m.dim() > 0 {
                notes.push(format!("T{t} ⊗_B M* is zero"));
            }
            match record(decompose_projectives(y), &format!("decomposing T{t} ⊗ M*"), &mut notes) {
                Some(d) => {
                    for (i, row) in r.iter_mut().enumerate() {
                        row[t] = d.mult[i];
                    }
                }
                None => errors = true,
            }
        } else {
            errors = true;
        }
        ys.push(y);
    }
    for (i, row) in l.iter().enumerate() {
        if m.dim() > 0 && row.iter().all(|&x| x == 0) && r[i].iter().all(|&x| x == 0) {
            notes.push(format!("no projective summands involve S{i}"));
        }
    }

    let mut ledger = Vec::new();
    for (i, s) in sa.simples.iter().enumerate() {
        for (t, tm) in sb.simples.iter().enumerate() {
            let (Some(x), Some(y)) = (&xs[i], &ys[t]) else { continue };
            match record(ledger_row(i, t, s, tm, x, y, r[i][t], l[i][t]), &format!("ledger (S{i}, T{t})"), &mut notes) {
                Some(row) => ledger.push(row),
                None => errors = true,
            }
        }
    }

    let verdict = if !hypotheses.all() {
        Verdict::NotApplicable { reason: hypotheses.failures() }
    } else if errors {
        Verdict::Fail { s: None, t: None, reason: "computation failed; see notes".into() }
    } else if let Some(row) = ledger.iter().find(|row| !row.holds()) {
        Verdict::Fail { s: Some(row.s), t: Some(row.t), reason: row.first_violation().expect("violation").to_string() }
    } else if let Some((i, t)) = (0..ns).flat_map(|i| (0..nt).map(move |t| (i, t))).find(|&(i, t)| l[i][t] != r[i][t]) {
        Verdict::Fail { s: Some(i), t: Some(t), reason: format!("L = {} but R = {}", l[i][t], r[i][t]) }
    } else {
        Verdict::Pass
    };

    Ok(ReciprocityReport {
        seed: a.seed(),
        field: a.field().to_string(),
        algebra_a,
        algebra_b,
        bimodule_dim: m.dim(),
        hypotheses,
        l,
        r,
        ledger,
        verdict,
        notes,
        routes: None,
    })
}

fn record<T>(r: Result<T>, what: &str, notes: &mut Vec<String>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            None
        }
    }
}

/// The group case: `M = kG` as a `(kG, kH)`-bimodule, with the multiplicities
/// also computed through restriction and induction.
pub fn check_robinson_algebras(kg: &Arc<Algebra>, kh: &Arc<Algebra>) -> Result<ReciprocityReport> {
    let m = Bimodule::restriction(kg, kh)?;
    let mut report = check_theorem(&m)?;
    let sg = kg.simples()?;
    let sh = kh.simples()?;
    let mut res = vec![vec![0; sh.len()]; sg.len()];
    let mut ind = vec![vec![0; sh.len()]; sg.len()];
    for (i, s) in sg.simples.iter().enumerate() {
        res[i] = decompose_projectives(&restrict(s, kh)?)?.mult;
    }
    for (t, tm) in sh.simples.iter().enumerate() {
        let d = decompose_projectives(&induce(tm, kg)?)?;
        for (i, row) in ind.iter_mut().enumerate() {
            row[t] = d.mult[i];
        }
    }
    let agree = res == ind && res == report.l && ind == report.r;
    if !agree && report.verdict == Verdict::Pass {
        report.verdict = Verdict::Fail {
            s: None,
            t: None,
            reason: "restriction/induction multiplicities disagree with the tensor computation".into(),
        };
    }
    report.routes = Some(RouteCheck { restriction: res, induction: ind, agree });
    Ok(report)
}

/// [`check_robinson_algebras`] for `H ≤ G` over `field`.
pub fn check_robinson(g: Arc<PermGroup>, h: Arc<PermGroup>, field: &FiniteField, seed: u64) -> Result<ReciprocityReport> {
    if !g.has_subgroup(&h) {
        return Err(Error::NotSubgroup);
    }
    let kg = Arc::new(Algebra::group_algebra(g, field).with_seed(seed));
    let kh = Arc::new(Algebra::group_algebra(h, field).with_seed(seed));
    check_robinson_algebras(&kg, &kh)
}
