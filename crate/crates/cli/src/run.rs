//! Executing one command against the objects of a job.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use symrec_core::algebra::{Algebra, DEFAULT_SEED};
use symrec_core::bimodule::Bimodule;
use symrec_core::field::FiniteField;
use symrec_core::group::{Perm, PermGroup, DEFAULT_CAP};
use symrec_core::reciprocity::{check_robinson_algebras, check_theorem, proof_chain, LedgerRow, ReciprocityReport, Verdict};
use symrec_core::{Error, Matrix, Scalar};

use crate::jobspec::{AlgebraSpec, BimoduleSpec, CommandArgs, GroupSpec, JobSpec, MatrixSpec};
use crate::table::{matrix_table, Table};

/// Why a command produced no report.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Core(Error),
    NotApplicable(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 3,
            Failure::NotApplicable(_) => 2,
            Failure::Core(e) => match e {
                Error::NotSymmetric { .. } => 2,
                Error::IdentityViolated { .. }
                | Error::LiftDiverged(_)
                | Error::LiftFailed(_)
                | Error::MeatAxeExhausted { .. }
                | Error::NegativeMultiplicity(_)
                | Error::RelationNotStable => 1,
                _ => 3,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::NotApplicable(m) => write!(f, "hypotheses not met: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// A finished report: JSON document, human table and exit code.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub table: String,
    pub code: i32,
}

/// Settings resolved from flags and the job file.
#[derive(Clone, Debug)]
pub struct Settings {
    pub field: Option<FiniteField>,
    pub seed: u64,
    pub cap: usize,
}

impl Settings {
    pub fn new(field: Option<FiniteField>, seed: Option<u64>, cap: Option<usize>) -> Self {
        Settings { field, seed: seed.unwrap_or(DEFAULT_SEED), cap: cap.unwrap_or(DEFAULT_CAP) }
    }
}

/// Lazily built objects of one job.
struct Context<'a> {
    job: &'a JobSpec,
    settings: &'a Settings,
    groups: BTreeMap<String, Arc<PermGroup>>,
    algebras: BTreeMap<String, Arc<Algebra>>,
}

impl<'a> Context<'a> {
    fn field(&self) -> Result<&'a FiniteField, Failure> {
        self.settings
            .field
            .as_ref()
            .ok_or_else(|| Failure::Input("no field given: set `field` in the job or pass --field / --p".into()))
    }

    fn group(&mut self, label: &str) -> Result<Arc<PermGroup>, Failure> {
        self.group_inner(label, &mut Vec::new())
    }

    fn group_inner(&mut self, label: &str, visiting: &mut Vec<String>) -> Result<Arc<PermGroup>, Failure> {
        if let Some(g) = self.groups.get(label) {
            return Ok(g.clone());
        }
        let spec: &GroupSpec = self.job.groups.get(label).ok_or_else(|| Failure::Input(format!("unknown group `{label}`")))?;
        if visiting.iter().any(|v| v == label) {
            return Err(Failure::Input(format!("cyclic subgroup_of chain through `{label}`")));
        }
        visiting.push(label.to_string());
        let gens = spec
            .generators
            .iter()
            .map(|g| Perm::parse_cycles(spec.degree, g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Input(format!("group `{label}`: {e}")))?;
        let group = match &spec.subgroup_of {
            Some(parent) => {
                let p = self.group_inner(parent, visiting)?;
                p.subgroup(gens).map_err(|e| Failure::Input(format!("group `{label}`: {e}")))?
            }
            None => PermGroup::enumerate(spec.degree, gens, self.settings.cap).map_err(|e| Failure::Input(format!("group `{label}`: {e}")))?,
        };
        let g = Arc::new(group);
        self.groups.insert(label.to_string(), g.clone());
        Ok(g)
    }

    fn group_algebra(&mut self, group_label: &str, label: &str) -> Result<Arc<Algebra>, Failure> {
        let g = self.group(group_label)?;
        let field = self.field()?;
        let a = Algebra::group_algebra_capped(g, field, self.settings.cap)?.with_label(label).with_seed(self.settings.seed);
        Ok(Arc::new(a))
    }

    fn algebra(&mut self, label: &str) -> Result<Arc<Algebra>, Failure> {
        if let Some(a) = self.algebras.get(label) {
            return Ok(a.clone());
        }
        let spec = self.job.algebras.get(label).ok_or_else(|| Failure::Input(format!("unknown algebra `{label}`")))?;
        let field = self.field()?;
        let a = match spec {
            AlgebraSpec::Group { group } => self.group_algebra(group, label)?,
            AlgebraSpec::Matrix { n } => Arc::new(Algebra::matrix_algebra(field, *n).with_label(label).with_seed(self.settings.seed)),
            AlgebraSpec::UpperTriangular { n } => {
                Arc::new(Algebra::upper_triangular(field, *n).with_label(label).with_seed(self.settings.seed))
            }
            AlgebraSpec::Constants { unit, products } => {
                let path = format!("algebra `{label}`");
                let unit = codes(field, unit, &format!("{path} unit"))?;
                let mult = products
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, v)| codes(field, v, &format!("{path} product ({i}, {j})")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let a = Algebra::from_structure_constants(label, field, unit, &mult)
                    .map_err(|e| Failure::Input(format!("{path}: {e}")))?
                    .with_seed(self.settings.seed);
                Arc::new(a)
            }
        };
        self.algebras.insert(label.to_string(), a.clone());
        Ok(a)
    }

    fn bimodule(&mut self, label: &str) -> Result<Bimodule, Failure> {
        let spec = self.job.bimodules.get(label).ok_or_else(|| Failure::Input(format!("unknown bimodule `{label}`")))?;
        let input = |e: Error| Failure::Input(format!("bimodule `{label}`: {e}"));
        match spec {
            BimoduleSpec::Restriction { group, subgroup } => {
                let kg = self.algebra_for_group(group)?;
                let kh = self.algebra_for_group(subgroup)?;
                Bimodule::restriction(&kg, &kh).map_err(input)
            }
            BimoduleSpec::Regular { algebra } => Ok(Bimodule::regular(&self.algebra(algebra)?)),
            BimoduleSpec::Explicit { alg_a, alg_b, dim, left_action, right_action } => {
                let a = self.algebra(alg_a)?;
                let b = self.algebra(alg_b)?;
                let field = self.field()?;
                let mats = |specs: &[MatrixSpec], side: &str| -> Result<Vec<Matrix>, Failure> {
                    specs
                        .iter()
                        .enumerate()
                        .map(|(i, m)| matrix(field, m, *dim, &format!("bimodule `{label}` {side}[{i}]")))
                        .collect()
                };
                let left = mats(left_action, "left_action")?;
                let right = mats(right_action, "right_action")?;
                Bimodule::new(&a, &b, left, right).map_err(input)
            }
            BimoduleSpec::ProjectiveAtoms { alg_a, alg_b, pairs } => {
                let a = self.algebra(alg_a)?;
                let b = self.algebra(alg_b)?;
                if pairs.is_empty() {
                    return Err(Failure::Input(format!("bimodule `{label}`: projective_atoms needs at least one pair")));
                }
                let pa = a.pims()?;
                let pb = b.pims()?;
                let mut atoms = Vec::with_capacity(pairs.len());
                for &(s, t) in pairs {
                    let (Some(ps), Some(pt)) = (pa.pims.get(s), pb.pims.get(t)) else {
                        return Err(Failure::Input(format!(
                            "bimodule `{label}`: pair ({s}, {t}) out of range ({} x {} simples)",
                            pa.pims.len(),
                            pb.pims.len()
                        )));
                    };
                    atoms.push(Bimodule::outer(&ps.module, &pt.module)?);
                }
                Ok(Bimodule::direct_sum(&atoms.iter().collect::<Vec<_>>())?)
            }
        }
    }

    /// The algebra named after a group: a declared algebra over it if there
    /// is exactly one, else a fresh group algebra labelled by the group.
    fn algebra_for_group(&mut self, group: &str) -> Result<Arc<Algebra>, Failure> {
        let declared: Vec<&String> = self
            .job
            .algebras
            .iter()
            .filter(|(_, a)| matches!(a, AlgebraSpec::Group { group: g } if g == group))
            .map(|(l, _)| l)
            .collect();
        match declared.as_slice() {
            [one] => self.algebra(one),
            _ => {
                let key = format!("k[{group}]");
                if let Some(a) = self.algebras.get(&key) {
                    return Ok(a.clone());
                }
                let a = self.group_algebra(group, group)?;
                self.algebras.insert(key, a.clone());
                Ok(a)
            }
        }
    }
}

fn codes(field: &FiniteField, v: &[i64], what: &str) -> Result<Vec<Scalar>, Failure> {
    v.iter()
        .map(|&x| {
            if x < 0 || x >= i64::from(field.order()) {
                Err(Failure::Input(format!("{what}: {x} is not an element code of {field}")))
            } else {
                Ok(x as Scalar)
            }
        })
        .collect()
}

fn matrix(field: &FiniteField, spec: &MatrixSpec, dim: usize, what: &str) -> Result<Matrix, Failure> {
    let m = match spec {
        MatrixSpec::Literal(s) => Matrix::parse_literal(field, s).map_err(|e| Failure::Input(format!("{what}: {e}")))?,
        MatrixSpec::Rows(rows) => {
            let rows = rows.iter().map(|r| codes(field, r, what)).collect::<Result<Vec<_>, _>>()?;
            let cols = rows.first().map_or(0, Vec::len);
            Matrix::from_rows(field, cols, &rows).map_err(|e| Failure::Input(format!("{what}: {e}")))?
        }
    };
    if m.rows() != dim || m.cols() != dim {
        return Err(Failure::Input(format!("{what}: expected {dim}x{dim}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

fn need<'b>(v: &'b Option<String>, flag: &str, command: &str) -> Result<&'b str, Failure> {
    v.as_deref().ok_or_else(|| Failure::Input(format!("`{command}` needs --{flag}")))
}

#[derive(Serialize)]
struct SimpleRow {
    index: usize,
    dim: usize,
    regular_multiplicity: usize,
}

#[derive(Serialize)]
struct SimplesReport {
    command: &'static str,
    seed: u64,
    field: String,
    algebra: String,
    dim: usize,
    simples: Vec<SimpleRow>,
}

#[derive(Serialize)]
struct PimRow {
    index: usize,
    simple_dim: usize,
    dim: usize,
}

#[derive(Serialize)]
struct PimsReport {
    command: &'static str,
    seed: u64,
    field: String,
    algebra: String,
    dim: usize,
    pims: Vec<PimRow>,
}

#[derive(Serialize)]
struct CartanReport {
    command: &'static str,
    seed: u64,
    field: String,
    algebra: String,
    simple_dims: Vec<usize>,
    cartan: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct FormReport {
    command: &'static str,
    seed: u64,
    field: String,
    algebra: String,
    symmetric: bool,
    certified: bool,
    coefficients: Option<Vec<Scalar>>,
}

#[derive(Serialize)]
struct ProofChainReport {
    command: &'static str,
    seed: u64,
    field: String,
    bimodule: String,
    ledger: Vec<LedgerRow>,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn header(table: &mut String, command: &str, field: &FiniteField, seed: u64) {
    table.push_str(&format!("{command} over {field}, seed {seed}\n"));
}

/// Run `command` with `args` against `job`.
pub fn run(job: &JobSpec, command: &str, args: &CommandArgs, settings: &Settings) -> Result<Output, Failure> {
    let mut cx = Context { job, settings, groups: BTreeMap::new(), algebras: BTreeMap::new() };
    let seed = settings.seed;
    match command {
        "simples" | "pims" | "cartan" | "symmetric-form" => {
            let a = match (&args.algebra, &args.group) {
                (Some(l), _) => cx.algebra(l)?,
                (None, Some(g)) => cx.algebra_for_group(g)?,
                (None, None) => return Err(Failure::Input(format!("`{command}` needs --algebra or --group"))),
            };
            let field = a.field().clone();
            let mut table = String::new();
            header(&mut table, command, &field, seed);
            table.push_str(&format!("algebra {} of dimension {}\n", a.label(), a.dim()));
            let json = match command {
                "simples" => {
                    let s = a.simples()?;
                    let rows: Vec<SimpleRow> = s
                        .simples
                        .iter()
                        .enumerate()
                        .map(|(i, m)| SimpleRow { index: i, dim: m.dim(), regular_multiplicity: s.regular_multiplicity[i] })
                        .collect();
                    let mut t = Table::new(&["simple", "dim", "multiplicity in A"]);
                    for r in &rows {
                        t.row(vec![format!("S{}", r.index), r.dim.to_string(), r.regular_multiplicity.to_string()]);
                    }
                    table.push_str(&t.render());
                    json(&SimplesReport {
                        command: "simples",
                        seed,
                        field: field.to_string(),
                        algebra: a.label().into(),
                        dim: a.dim(),
                        simples: rows,
                    })
                }
                "pims" => {
                    let s = a.simples()?;
                    let p = a.pims()?;
                    let rows: Vec<PimRow> = p
                        .pims
                        .iter()
                        .enumerate()
                        .map(|(i, pim)| PimRow { index: i, simple_dim: s.simples[i].dim(), dim: pim.module.dim() })
                        .collect();
                    let mut t = Table::new(&["simple", "dim S", "dim P(S)"]);
                    for r in &rows {
                        t.row(vec![format!("S{}", r.index), r.simple_dim.to_string(), r.dim.to_string()]);
                    }
                    table.push_str(&t.render());
                    json(&PimsReport {
                        command: "pims",
                        seed,
                        field: field.to_string(),
                        algebra: a.label().into(),
                        dim: a.dim(),
                        pims: rows,
                    })
                }
                "cartan" => {
                    let c = a.cartan_matrix()?;
                    table.push_str("Cartan matrix [P(S_i) : S_j]\n");
                    table.push_str(&matrix_table("S", "S", &c));
                    json(&CartanReport {
                        command: "cartan",
                        seed,
                        field: field.to_string(),
                        algebra: a.label().into(),
                        simple_dims: a.simples()?.dims(),
                        cartan: c,
                    })
                }
                _ => {
                    let (symmetric, certified, coefficients) = match a.symmetrizing_form() {
                        Ok(f) => (true, true, Some(f.coefficients)),
                        Err(Error::NotSymmetric { certified }) => (false, certified, None),
                        Err(e) => return Err(e.into()),
                    };
                    let verdict = match (symmetric, certified) {
                        (true, _) => "symmetric",
                        (false, true) => "not symmetric (every candidate form ruled out)",
                        (false, false) => "no symmetrizing form found (search not exhaustive)",
                    };
                    table.push_str(&format!("{verdict}\n"));
                    if let Some(c) = &coefficients {
                        let vals: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        table.push_str(&format!("form on the basis: [{}]\n", vals.join(", ")));
                    }
                    let out = json(&FormReport {
                        command: "symmetric-form",
                        seed,
                        field: field.to_string(),
                        algebra: a.label().into(),
                        symmetric,
                        certified,
                        coefficients,
                    });
                    return Ok(Output { json: out, table, code: if symmetric { 0 } else { 2 } });
                }
            };
            Ok(Output { json, table, code: 0 })
        }
        "reciprocity" => {
            let label = need(&args.bimodule, "bimodule", command)?;
            let m = cx.bimodule(label)?;
            Ok(reciprocity_output(check_theorem(&m)?, command))
        }
        "robinson" => {
            let g = need(&args.group, "group", command)?;
            let h = need(&args.subgroup, "subgroup", command)?;
            let kg = cx.algebra_for_group(g)?;
            let kh = cx.algebra_for_group(h)?;
            let (gg, hh) = (cx.group(g)?, cx.group(h)?);
            if !gg.has_subgroup(&hh) {
                return Err(Failure::Input(format!("`{h}` is not a subgroup of `{g}`")));
            }
            Ok(reciprocity_output(check_robinson_algebras(&kg, &kh)?, command))
        }
        "proof-chain" => {
            let label = need(&args.bimodule, "bimodule", command)?;
            let m = cx.bimodule(label)?;
            proof_chain_output(&m, label, args, seed)
        }
        other => Err(Failure::Input(format!("unknown command `{other}`"))),
    }
}

fn proof_chain_output(m: &Bimodule, label: &str, args: &CommandArgs, seed: u64) -> Result<Output, Failure> {
    let a = m.left_algebra();
    let b = m.right_algebra();
    let mut unmet = Vec::new();
    if !a.is_symmetric()? {
        unmet.push("A is not symmetric");
    }
    if !b.is_symmetric()? {
        unmet.push("B is not symmetric");
    }
    if !m.is_projective_left()? {
        unmet.push("M is not projective as a left A-module");
    }
    if !m.is_projective_right()? {
        unmet.push("M is not projective as a right B-module");
    }
    if !unmet.is_empty() {
        return Err(Failure::NotApplicable(unmet.join("; ")));
    }
    let sa = a.simples()?;
    let sb = b.simples()?;
    let pick = |v: Option<usize>, n: usize, name: &str| -> Result<Vec<usize>, Failure> {
        match v {
            Some(i) if i < n => Ok(vec![i]),
            Some(i) => Err(Failure::Input(format!("--{name} {i} out of range: there are {n} simples"))),
            None => Ok((0..n).collect()),
        }
    };
    let ss = pick(args.s, sa.len(), "s")?;
    let ts = pick(args.t, sb.len(), "t")?;
    let mut ledger = Vec::new();
    for &s in &ss {
        for &t in &ts {
            ledger.push(proof_chain(&sa.simples[s], &sb.simples[t], m)?);
        }
    }
    let field = a.field().clone();
    let mut table = String::new();
    header(&mut table, "proof-chain", &field, seed);
    table.push_str(&format!("bimodule {label}: A = {}, B = {}, dim M = {}\n", a.label(), b.label(), m.dim()));
    table.push_str(&ledger_table(&ledger));
    table.push_str("all four identities hold\n");
    let json = json(&ProofChainReport { command: "proof-chain", seed, field: field.to_string(), bimodule: label.into(), ledger });
    Ok(Output { json, table, code: 0 })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ledger_table(ledger: &[LedgerRow]) -> String {
    let mut t = Table::new(&["S", "T", "hom_A", "stable_A", "m_S", "hom_B", "stable_B", "n_T", "holds"]);
    for r in ledger {
        t.row(vec![
            r.s.to_string(),
            r.t.to_string(),
            r.hom_a.to_string(),
            r.stable_a.to_string(),
            r.m_s.to_string(),
            r.hom_b.to_string(),
            r.stable_b.to_string(),
            r.n_t.to_string(),
            yes(r.holds()).into(),
        ]);
    }
    t.render()
}

#[derive(Serialize)]
struct Tagged<'a> {
    command: &'a str,
    #[serde(flatten)]
    report: &'a ReciprocityReport,
}

fn reciprocity_output(report: ReciprocityReport, command: &str) -> Output {
    let mut table = String::new();
    table.push_str(&format!("{command} over {}, seed {}\n", report.field, report.seed));
    for (name, s) in [("A", &report.algebra_a), ("B", &report.algebra_b)] {
        table.push_str(&format!(
            "{name} = {} (dim {}): simple dims {:?}, PIM dims {:?}\n",
            s.label, s.dim, s.simple_dims, s.pim_dims
        ));
    }
    table.push_str(&format!("dim M = {}\n", report.bimodule_dim));
    let h = &report.hypotheses;
    table.push_str(&format!(
        "A symmetric: {}, B symmetric: {}, M left projective: {}, M right projective: {}\n",
        yes(h.a_symmetric),
        yes(h.b_symmetric),
        yes(h.left_projective),
        yes(h.right_projective)
    ));
    table.push_str("\nL[S][T] = [P(T) | S (x)_A M]\n");
    table.push_str(&matrix_table("S", "T", &report.l));
    table.push_str("\nR[S][T] = [P(S) | T (x)_B M*]\n");
    table.push_str(&matrix_table("S", "T", &report.r));
    if let Some(routes) = &report.routes {
        table.push_str(&format!("\nrestriction/induction route agrees: {}\n", yes(routes.agree)));
    }
    if !report.ledger.is_empty() {
        table.push('\n');
        table.push_str(&ledger_table(&report.ledger));
    }
    for n in &report.notes {
        table.push_str(&format!("note: {n}\n"));
    }
    let verdict = match &report.verdict {
        Verdict::Pass => "pass".to_string(),
        Verdict::Fail { s, t, reason } => match (s, t) {
            (Some(s), Some(t)) => format!("FAIL at (S{s}, T{t}): {reason}"),
            _ => format!("FAIL: {reason}"),
        },
        Verdict::NotApplicable { reason } => format!("not applicable: {reason}"),
    };
    table.push_str(&format!("\nverdict: {verdict}\n"));
    let code = report.verdict.exit_code();
    Output { json: json(&Tagged { command, report: &report }), table, code }
}
